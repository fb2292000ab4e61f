//! Deterministic SVG rendering of shock scenes.
//!
//! Conventions follow the cluster figures: shock edges are solid lines,
//! particle velocities are arrows, stable clusters are white-filled disks,
//! growing clusters black-filled disks. Coordinates are scaled by
//! `units_per_velocity` SVG user units per velocity unit with the origin at
//! the center of the viewport (documented in the output header comment).

use super::classify::{ClusterFate, NodeClass};
use super::diagram::{EdgeGeometry, ShockComplex};

#[derive(Debug, Clone)]
pub struct SvgStyle {
    /// SVG user units per velocity unit.
    pub units_per_velocity: f64,
    /// Half-width of the rendered window, in velocity units.
    pub half_extent: f64,
    pub stroke_width: f64,
    pub cluster_radius: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            units_per_velocity: 100.0,
            half_extent: 3.0,
            stroke_width: 2.0,
            cluster_radius: 0.08,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SceneParticle {
    pub position: [f64; 2],
    pub velocity: [f64; 2],
}

#[derive(Debug, Clone, Copy)]
pub struct SceneCluster {
    pub position: [f64; 2],
    pub fate: ClusterFate,
}

#[derive(Debug, Clone)]
pub struct Scene<'a> {
    pub complex: &'a ShockComplex,
    pub particles: Vec<SceneParticle>,
    pub clusters: Vec<SceneCluster>,
}

impl<'a> Scene<'a> {
    /// A scene with no extra matter drawn on it.
    pub fn bare(complex: &'a ShockComplex) -> Self {
        Self {
            complex,
            particles: Vec::new(),
            clusters: Vec::new(),
        }
    }

    /// Marks every trapping (acute-triangle) node with a growing cluster.
    pub fn with_node_clusters(mut self) -> Self {
        for node in &self.complex.nodes {
            if node.classification.class == NodeClass::Acute {
                self.clusters.push(SceneCluster {
                    position: node.position,
                    fate: ClusterFate::Growing,
                });
            }
        }
        self
    }
}

/// Renders the scene as an SVG 1.1 document. Deterministic: equal scenes
/// and styles produce byte-identical text.
pub fn render_svg(scene: &Scene, style: &SvgStyle) -> String {
    let s = style.units_per_velocity;
    let half = style.half_extent * s;
    let size = 2.0 * half;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{size:.0}\" height=\"{size:.0}\" \
         viewBox=\"{:.0} {:.0} {size:.0} {size:.0}\">\n",
        -half, -half
    ));
    out.push_str(&format!(
        "<!-- scale: {s:.0} user units per velocity unit; origin centered; y grows downward -->\n"
    ));
    out.push_str(&format!(
        "<rect x=\"{:.0}\" y=\"{:.0}\" width=\"{size:.0}\" height=\"{size:.0}\" fill=\"white\"/>\n",
        -half, -half
    ));

    // Shock edges: solid lines clipped to a padded window.
    let clip = style.half_extent * 1.5;
    for e in &scene.complex.edges {
        if let Some(((x1, y1), (x2, y2))) = clip_edge(&e.geometry, clip) {
            out.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
                 stroke=\"black\" stroke-width=\"{:.2}\"/>\n",
                x1 * s,
                -y1 * s,
                x2 * s,
                -y2 * s,
                style.stroke_width
            ));
        }
    }

    // Particle velocities as arrows.
    for p in &scene.particles {
        let tip = [
            p.position[0] + p.velocity[0] * 0.35,
            p.position[1] + p.velocity[1] * 0.35,
        ];
        let len = p.velocity[0].hypot(p.velocity[1]);
        if len == 0.0 {
            continue;
        }
        let d = [p.velocity[0] / len, p.velocity[1] / len];
        let head = 0.08;
        let left = [
            tip[0] - head * (d[0] - 0.6 * d[1]),
            tip[1] - head * (d[1] + 0.6 * d[0]),
        ];
        let right = [
            tip[0] - head * (d[0] + 0.6 * d[1]),
            tip[1] - head * (d[1] - 0.6 * d[0]),
        ];
        out.push_str(&format!(
            "<path d=\"M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}\" \
             stroke=\"black\" stroke-width=\"{:.2}\" fill=\"none\"/>\n",
            p.position[0] * s,
            -p.position[1] * s,
            tip[0] * s,
            -tip[1] * s,
            tip[0] * s,
            -tip[1] * s,
            left[0] * s,
            -left[1] * s,
            tip[0] * s,
            -tip[1] * s,
            right[0] * s,
            -right[1] * s,
            style.stroke_width * 0.75
        ));
    }

    // Clusters: white disks for stable, black for growing.
    for c in &scene.clusters {
        let fill = match c.fate {
            ClusterFate::Growing => "black",
            ClusterFate::Stable => "white",
            ClusterFate::None => continue,
        };
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"{fill}\" \
             stroke=\"black\" stroke-width=\"{:.2}\"/>\n",
            c.position[0] * s,
            -c.position[1] * s,
            style.cluster_radius * s,
            style.stroke_width * 0.75
        ));
    }

    out.push_str("</svg>\n");
    out
}

/// Clips an edge to the square |x|,|y| ≤ `half`, returning endpoints in
/// velocity coordinates, or None when the edge misses the window.
fn clip_edge(g: &EdgeGeometry, half: f64) -> Option<((f64, f64), (f64, f64))> {
    let (anchor, dir, mut lo, mut hi) = match *g {
        EdgeGeometry::Line { point, direction } => {
            (point, direction, f64::NEG_INFINITY, f64::INFINITY)
        }
        EdgeGeometry::Ray { origin, direction } => (origin, direction, 0.0, f64::INFINITY),
        EdgeGeometry::Segment { a, b } => {
            let d = [b[0] - a[0], b[1] - a[1]];
            let len = d[0].hypot(d[1]);
            if len == 0.0 {
                return None;
            }
            (a, [d[0] / len, d[1] / len], 0.0, len)
        }
    };
    // Clip the parameter interval against the four window sides.
    for axis in 0..2 {
        let (p0, d0) = (anchor[axis], dir[axis]);
        if d0.abs() < 1e-15 {
            if p0.abs() > half {
                return None;
            }
            continue;
        }
        let (s1, s2) = ((-half - p0) / d0, (half - p0) / d0);
        let (smin, smax) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
        lo = lo.max(smin);
        hi = hi.min(smax);
    }
    if lo >= hi {
        return None;
    }
    Some((
        (anchor[0] + lo * dir[0], anchor[1] + lo * dir[1]),
        (anchor[0] + hi * dir[0], anchor[1] + hi * dir[1]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::MomentumSet;
    use crate::potential::LocalLinearModel;
    use crate::shock::diagram::shock_diagram;

    fn model(rows: &[[f64; 2]]) -> LocalLinearModel {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        LocalLinearModel::new(MomentumSet::from_rows(&rows).unwrap(), 0.0).unwrap()
    }

    #[test]
    fn two_site_diagram_renders_a_single_line() {
        let m = model(&[[1.0, 0.0], [-1.0, 0.5]]);
        let c = shock_diagram(&m, 1.0).unwrap();
        let svg = render_svg(&Scene::bare(&c), &SvgStyle::default());
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 0);
        assert!(svg.starts_with("<svg xmlns"));
        assert!(svg.contains("100 user units per velocity unit"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn trapping_node_scene_shows_a_black_disk_at_the_node() {
        let angles = [0.4f64, 2.5, 4.3];
        let rows: Vec<[f64; 2]> = angles.iter().map(|a| [a.cos(), a.sin()]).collect();
        let m = model(&rows);
        let c = shock_diagram(&m, 1.0).unwrap();
        let scene = Scene::bare(&c).with_node_clusters();
        let svg = render_svg(&scene, &SvgStyle::default());
        // Equal-norm momenta put the node at the origin.
        assert!(svg.contains("<circle cx=\"0.00\" cy=\"-0.00\""), "{svg}");
        assert!(svg.contains("fill=\"black\""));
    }

    #[test]
    fn exiting_particle_scene_shows_a_white_disk_off_the_node() {
        // Obtuse triangle: no trapping node; a stable cluster sits on the
        // outflow edge, offset from the node along the exit direction.
        let m = model(&[[0.0, 0.0], [4.0, 0.0], [1.0, 1.0]]);
        let c = shock_diagram(&m, 1.0).unwrap();
        let node = c.nodes[0].position;
        let exit_velocity = [2.0, 0.0];
        let mut scene = Scene::bare(&c);
        scene.clusters.push(SceneCluster {
            position: [node[0] + 0.4, node[1]],
            fate: ClusterFate::Stable,
        });
        scene.particles.push(SceneParticle {
            position: [node[0] + 0.4, node[1]],
            velocity: exit_velocity,
        });
        let svg = render_svg(&scene, &SvgStyle::default());
        assert!(svg.contains("fill=\"white\" \n             stroke") || svg.contains("fill=\"white\""));
        assert_eq!(svg.matches("<path").count(), 1, "one velocity arrow");
    }

    #[test]
    fn rendering_is_deterministic() {
        let m = model(&[[0.3, -0.2], [1.1, 0.4], [-0.5, 0.9]]);
        let c = shock_diagram(&m, 1.0).unwrap();
        let scene = Scene::bare(&c).with_node_clusters();
        let a = render_svg(&scene, &SvgStyle::default());
        let b = render_svg(&scene, &SvgStyle::default());
        assert_eq!(a, b);
    }

    #[test]
    fn edges_outside_the_window_are_dropped() {
        let g = EdgeGeometry::Segment {
            a: [10.0, 10.0],
            b: [11.0, 10.0],
        };
        assert!(clip_edge(&g, 4.5).is_none());
        let g = EdgeGeometry::Line {
            point: [0.0, 1.0],
            direction: [1.0, 0.0],
        };
        let ((x1, _), (x2, _)) = clip_edge(&g, 4.5).unwrap();
        assert_eq!(x1, -4.5);
        assert_eq!(x2, 4.5);
    }
}
