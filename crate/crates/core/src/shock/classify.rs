//! Taxonomy of planar shock nodes and four-momentum configurations.

use crate::convex::{min_enclosing_ball_with_support, MomentumSet};
use crate::potential::local::check_planar_genericity;
use crate::{Error, Result};

/// |cos| of a triangle angle below which the node counts as right-angled.
/// These are the measure-zero transition instants; callers treat them as
/// events, not as states.
pub const RIGHT_ANGLE_BAND: f64 = 1e-9;

/// Class of the momentum triangle governing a triple node.
///
/// An acute triangle has its circumcenter inside, so the node velocity
/// (circumcenter) agrees with the particle velocity (minimal-ball center):
/// matter arriving at the node is trapped and the node carries a growing
/// cluster. An obtuse triangle puts the circumcenter outside; the ball
/// center falls on the longest side's midpoint instead, the two velocities
/// differ, and the particle leaves the node along a shock edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeClass {
    Acute,
    Obtuse,
    RightDegenerate,
}

#[derive(Debug, Clone)]
pub struct NodeClassification {
    pub class: NodeClass,
    /// Velocity of the node itself: the circumcenter of the three momenta.
    pub node_velocity: Vec<f64>,
    /// Velocity of the matter at the node: the minimal-ball center.
    pub particle_velocity: Vec<f64>,
}

impl NodeClassification {
    /// Matter stays at the node exactly when the two velocities agree.
    pub fn is_trapping(&self) -> bool {
        self.class == NodeClass::Acute
    }
}

/// Classifies the triple node governed by three planar momenta.
pub fn classify_node(p1: &[f64], p2: &[f64], p3: &[f64]) -> Result<NodeClassification> {
    for p in [p1, p2, p3] {
        if p.len() != 2 || p.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidModel(
                "node classification needs three finite planar momenta".into(),
            ));
        }
    }
    let node_velocity = circumcenter(p1, p2, p3)?;
    let set = MomentumSet::from_rows(&[p1.to_vec(), p2.to_vec(), p3.to_vec()])?;
    let (ball, _) = min_enclosing_ball_with_support(&set)?;

    let mut min_cos = f64::INFINITY;
    let mut near_right = false;
    for (v, a, b) in [(p1, p2, p3), (p2, p1, p3), (p3, p1, p2)] {
        let c = vertex_cos(v, a, b);
        near_right = near_right || c.abs() <= RIGHT_ANGLE_BAND;
        min_cos = min_cos.min(c);
    }
    let class = if near_right {
        NodeClass::RightDegenerate
    } else if min_cos > 0.0 {
        NodeClass::Acute
    } else {
        NodeClass::Obtuse
    };
    Ok(NodeClassification {
        class,
        node_velocity,
        particle_velocity: ball.center,
    })
}

/// Circumcenter of a non-degenerate planar triangle.
pub fn circumcenter(p1: &[f64], p2: &[f64], p3: &[f64]) -> Result<Vec<f64>> {
    // 2(p2−p1)·c = |p2|²−|p1|², 2(p3−p1)·c = |p3|²−|p1|².
    let a11 = 2.0 * (p2[0] - p1[0]);
    let a12 = 2.0 * (p2[1] - p1[1]);
    let a21 = 2.0 * (p3[0] - p1[0]);
    let a22 = 2.0 * (p3[1] - p1[1]);
    let b1 = (p2[0] * p2[0] + p2[1] * p2[1]) - (p1[0] * p1[0] + p1[1] * p1[1]);
    let b2 = (p3[0] * p3[0] + p3[1] * p3[1]) - (p1[0] * p1[0] + p1[1] * p1[1]);
    let det = a11 * a22 - a12 * a21;
    let scale = a11.hypot(a12) * a21.hypot(a22);
    if scale == 0.0 || det.abs() <= 1e-12 * scale {
        return Err(Error::Degenerate(
            "circumcenter of collinear momenta".into(),
        ));
    }
    Ok(vec![
        (b1 * a22 - b2 * a12) / det,
        (a11 * b2 - a21 * b1) / det,
    ])
}

/// cos of the triangle angle at vertex `v` spanned toward `a` and `b`.
pub(crate) fn vertex_cos(v: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let u = [a[0] - v[0], a[1] - v[1]];
    let w = [b[0] - v[0], b[1] - v[1]];
    (u[0] * w[0] + u[1] * w[1]) / (u[0].hypot(u[1]) * w[0].hypot(w[1]))
}

/// Smallest vertex cosine of the triangle spanned by three indexed momenta:
/// positive exactly when the triangle is acute.
pub(crate) fn min_vertex_cos_of(set: &MomentumSet, triple: &[usize; 3]) -> f64 {
    let p = |i: usize| set.get(i).as_slice().to_vec();
    let (a, b, c) = (p(triple[0]), p(triple[1]), p(triple[2]));
    let mut min = f64::INFINITY;
    for (v, x, y) in [(&a, &b, &c), (&b, &a, &c), (&c, &a, &b)] {
        min = min.min(vertex_cos(v, x, y));
    }
    min
}

/// Connected-component class of a generic planar 4-momentum configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigClass {
    /// All four subtriangles obtuse: no cluster forms at all.
    TotallyObtuse,
    /// Minimal-disk boundary passes through exactly two momenta.
    Narrow,
    /// Minimal-disk boundary passes through three momenta.
    Wide,
}

/// Which of the two cluster-carrying shock transitions the configuration
/// drives, decided by the convex hull of the four momenta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    /// Hull is a triangle (one momentum interior).
    Fifth,
    /// Hull is a quadrangle.
    Sixth,
}

/// Behavior of the cluster emitted after the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterFate {
    None,
    Stable,
    Growing,
}

#[derive(Debug, Clone)]
pub struct ConfigClassification {
    pub class: ConfigClass,
    pub transition: Transition,
    pub cluster: ClusterFate,
    /// Number of momenta on the minimal-disk boundary (2 or 3).
    pub ball_support: usize,
    /// Velocity of the post-transition cluster: the minimal-disk center.
    pub cluster_velocity: Vec<f64>,
}

/// Classifies a generic 4-momentum configuration.
///
/// The class decides the post-transition cluster: none for totally obtuse
/// configurations, a stable traveling cluster for narrow ones, a growing
/// pinned cluster for wide ones. Every totally obtuse configuration has a
/// two-point disk support, which the narrow criterion would also accept;
/// this containment is asserted.
pub fn classify_configuration(set: &MomentumSet) -> Result<ConfigClassification> {
    if set.dim() != 2 || set.len() != 4 {
        return Err(Error::InvalidModel(format!(
            "configuration classification needs four planar momenta, got {} of dimension {}",
            set.len(),
            set.dim()
        )));
    }
    check_planar_genericity(set)?;
    let p = |i: usize| set.get(i).as_slice().to_vec();

    let mut all_obtuse = true;
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                let mut min_cos = f64::INFINITY;
                for (v, a, b) in [(i, j, k), (j, i, k), (k, i, j)] {
                    min_cos = min_cos.min(vertex_cos(&p(v), &p(a), &p(b)));
                }
                if min_cos > 0.0 {
                    all_obtuse = false;
                }
            }
        }
    }

    let (ball, support) = min_enclosing_ball_with_support(set)?;
    let ball_support = support.len();
    if !(2..=3).contains(&ball_support) {
        return Err(Error::Degenerate(format!(
            "minimal disk of a generic 4-configuration must rest on 2 or 3 momenta, got {ball_support}"
        )));
    }

    let class = if all_obtuse {
        debug_assert_eq!(
            ball_support, 2,
            "a totally obtuse configuration must be narrow"
        );
        ConfigClass::TotallyObtuse
    } else if ball_support == 2 {
        ConfigClass::Narrow
    } else {
        ConfigClass::Wide
    };
    let cluster = match class {
        ConfigClass::TotallyObtuse => ClusterFate::None,
        ConfigClass::Narrow => ClusterFate::Stable,
        ConfigClass::Wide => ClusterFate::Growing,
    };

    // Hull shape: a momentum strictly inside the triangle of the other
    // three makes the hull a triangle.
    let mut interior = 0;
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        if point_in_triangle(&p(i), &p(others[0]), &p(others[1]), &p(others[2])) {
            interior += 1;
        }
    }
    let transition = match interior {
        0 => Transition::Sixth,
        1 => Transition::Fifth,
        _ => {
            return Err(Error::Degenerate(format!(
                "{interior} momenta inside the hull of the other three"
            )))
        }
    };

    Ok(ConfigClassification {
        class,
        transition,
        cluster,
        ball_support,
        cluster_velocity: ball.center,
    })
}

pub(crate) fn point_in_triangle(q: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> bool {
    let sign = |p: &[f64], u: &[f64], v: &[f64]| {
        (u[0] - p[0]) * (v[1] - p[1]) - (u[1] - p[1]) * (v[0] - p[0])
    };
    let d1 = sign(q, a, b);
    let d2 = sign(q, b, c);
    let d3 = sign(q, c, a);
    let has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(has_neg && has_pos)
}
