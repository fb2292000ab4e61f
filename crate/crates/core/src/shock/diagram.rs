//! Planar shock complexes of the local linear model at a fixed time offset.
//!
//! At offset τ the active branch at q minimizes p_i·q − τ|p_i|²/2, which
//! equals (|q|² − |q − τp_i|²)/(2τ). For τ < 0 the minimum goes to the
//! *nearest* site τp_i, for τ > 0 to the *farthest*; the shock is the set
//! where the optimum is shared, a nearest-point Voronoi diagram before the
//! meeting time and a farthest-point diagram after it.

use super::classify::{classify_node, NodeClassification};
use crate::convex::min_enclosing_ball;
use crate::potential::{LocalLinearModel, PotentialModel};
use crate::{Error, Result};

/// Parameter slack below which a pair's tie interval counts as empty.
const INTERVAL_TOL: f64 = 1e-12;
/// Positions closer than this (relative to the site scale) are one node.
const NODE_MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeGeometry {
    /// Full bisector line (k = 2 only).
    Line { point: [f64; 2], direction: [f64; 2] },
    /// Unbounded on one side.
    Ray { origin: [f64; 2], direction: [f64; 2] },
    Segment { a: [f64; 2], b: [f64; 2] },
}

impl EdgeGeometry {
    /// Euclidean distance from `q` to the edge.
    pub fn distance_to(&self, q: [f64; 2]) -> f64 {
        match *self {
            EdgeGeometry::Line { point, direction } => {
                let s = project(q, point, direction);
                dist(q, at(point, direction, s))
            }
            EdgeGeometry::Ray { origin, direction } => {
                let s = project(q, origin, direction).max(0.0);
                dist(q, at(origin, direction, s))
            }
            EdgeGeometry::Segment { a, b } => {
                let d = [b[0] - a[0], b[1] - a[1]];
                let len = d[0].hypot(d[1]);
                if len == 0.0 {
                    return dist(q, a);
                }
                let dir = [d[0] / len, d[1] / len];
                let s = project(q, a, dir).clamp(0.0, len);
                dist(q, at(a, dir, s))
            }
        }
    }

    /// Evenly spaced points on the edge, unbounded parts truncated to
    /// `span` on each open side.
    pub fn sample(&self, span: f64, count: usize) -> Vec<[f64; 2]> {
        let count = count.max(2);
        let (anchor, dir, lo, hi) = match *self {
            EdgeGeometry::Line { point, direction } => (point, direction, -span, span),
            EdgeGeometry::Ray { origin, direction } => (origin, direction, 0.0, span),
            EdgeGeometry::Segment { a, b } => {
                let d = [b[0] - a[0], b[1] - a[1]];
                let len = d[0].hypot(d[1]);
                let dir = if len == 0.0 {
                    [1.0, 0.0]
                } else {
                    [d[0] / len, d[1] / len]
                };
                (a, dir, 0.0, len)
            }
        };
        (0..count)
            .map(|i| {
                let s = lo + (hi - lo) * i as f64 / (count - 1) as f64;
                at(anchor, dir, s)
            })
            .collect()
    }
}

fn at(anchor: [f64; 2], dir: [f64; 2], s: f64) -> [f64; 2] {
    [anchor[0] + s * dir[0], anchor[1] + s * dir[1]]
}

fn project(q: [f64; 2], anchor: [f64; 2], dir: [f64; 2]) -> f64 {
    (q[0] - anchor[0]) * dir[0] + (q[1] - anchor[1]) * dir[1]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// A maximal two-way tie locus.
#[derive(Debug, Clone)]
pub struct ShockEdge {
    /// Indices of the two momenta sharing the optimum on this edge.
    pub momenta: (usize, usize),
    pub geometry: EdgeGeometry,
    /// Matter on the edge moves with the midpoint of the two momenta.
    pub velocity: [f64; 2],
}

/// A three-way tie point.
#[derive(Debug, Clone)]
pub struct ShockNode {
    pub position: [f64; 2],
    pub momenta: [usize; 3],
    pub classification: NodeClassification,
}

/// One inequality 'normal·q ≤ offset' of a cell.
#[derive(Debug, Clone, Copy)]
pub struct Halfplane {
    pub normal: [f64; 2],
    pub offset: f64,
    /// Index of the momentum this constraint defends against.
    pub other: usize,
}

/// The region where one momentum owns the optimum.
#[derive(Debug, Clone)]
pub struct ShockCell {
    pub momentum: usize,
    pub halfplanes: Vec<Halfplane>,
    /// Farthest-point cells of sites interior to the hull are empty.
    pub nonempty: bool,
}

#[derive(Debug, Clone)]
pub struct ShockComplex {
    pub tau: f64,
    pub cells: Vec<ShockCell>,
    pub edges: Vec<ShockEdge>,
    pub nodes: Vec<ShockNode>,
    /// For τ > 0, the shock point through which the matter trajectory from
    /// the model's origin passes: τ times the minimal-ball center.
    pub special_point: Option<[f64; 2]>,
}

impl ShockComplex {
    /// Distance from `q` to the nearest edge (nodes lie on edge closures).
    pub fn distance_to_shock(&self, q: [f64; 2]) -> f64 {
        self.edges
            .iter()
            .map(|e| e.geometry.distance_to(q))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Brute-force oracle for the diagram geometry: marks grid points adjacent
/// to an ownership change of the best site (nearest site, or farthest when
/// `farthest` is set). Every marked point is within one cell of the true
/// tie locus, and every tie crossing the grid marks the points around it.
/// Returns the marked points and the cell size.
pub fn brute_force_tie_points(
    sites: &[[f64; 2]],
    farthest: bool,
    lo: [f64; 2],
    hi: [f64; 2],
    n: usize,
) -> (Vec<[f64; 2]>, f64) {
    let h = ((hi[0] - lo[0]) / n as f64).max((hi[1] - lo[1]) / n as f64);
    let point = |ix: usize, iy: usize| {
        [
            lo[0] + (hi[0] - lo[0]) * ix as f64 / n as f64,
            lo[1] + (hi[1] - lo[1]) * iy as f64 / n as f64,
        ]
    };
    let owner = |q: [f64; 2]| {
        let mut best = 0;
        let mut best_d = f64::NAN;
        for (i, s) in sites.iter().enumerate() {
            let d = (q[0] - s[0]).powi(2) + (q[1] - s[1]).powi(2);
            if i == 0 || (farthest && d > best_d) || (!farthest && d < best_d) {
                best = i;
                best_d = d;
            }
        }
        best
    };
    let owners: Vec<Vec<usize>> = (0..=n)
        .map(|iy| (0..=n).map(|ix| owner(point(ix, iy))).collect())
        .collect();
    let mut marked = vec![vec![false; n + 1]; n + 1];
    for iy in 0..=n {
        for ix in 0..n {
            if owners[iy][ix] != owners[iy][ix + 1] {
                marked[iy][ix] = true;
                marked[iy][ix + 1] = true;
            }
        }
    }
    for iy in 0..n {
        for ix in 0..=n {
            if owners[iy][ix] != owners[iy + 1][ix] {
                marked[iy][ix] = true;
                marked[iy + 1][ix] = true;
            }
        }
    }
    let mut out = Vec::new();
    for iy in 0..=n {
        for ix in 0..=n {
            if marked[iy][ix] {
                out.push(point(ix, iy));
            }
        }
    }
    (out, h)
}

/// Builds the shock complex of the local model at offset time `tau` by
/// direct bisector-interval enumeration (k ≤ 8, O(k³)).
pub fn shock_diagram(model: &LocalLinearModel, tau: f64) -> Result<ShockComplex> {
    if model.space_dim() != 2 {
        return Err(Error::UnsupportedDimension {
            dim: model.space_dim(),
            max: 2,
        });
    }
    if tau == 0.0 || !tau.is_finite() {
        return Err(Error::Degenerate(
            "the shock diagram needs a nonzero finite time offset".into(),
        ));
    }
    let set = model.momenta();
    let k = set.len();
    if k < 2 {
        return Err(Error::Degenerate(
            "a shock diagram needs at least two momenta".into(),
        ));
    }
    if k > 8 {
        return Err(Error::UnsupportedDimension { dim: k, max: 8 });
    }
    let momentum = |i: usize| -> [f64; 2] {
        let s = set.get(i).as_slice();
        [s[0], s[1]]
    };
    let sites: Vec<[f64; 2]> = (0..k).map(|i| [momentum(i)[0] * tau, momentum(i)[1] * tau]).collect();
    // farthest = true after the meeting time: the optimum is the largest
    // distance, so every dominance inequality flips.
    let farthest = tau > 0.0;
    let scale = sites
        .iter()
        .map(|s| s[0].hypot(s[1]))
        .fold(1.0f64, f64::max);

    let norm2 = |s: [f64; 2]| s[0] * s[0] + s[1] * s[1];

    // Cells: dominance halfplanes of each momentum.
    let mut cells = Vec::with_capacity(k);
    for i in 0..k {
        let mut halfplanes = Vec::with_capacity(k - 1);
        for j in 0..k {
            if j == i {
                continue;
            }
            // Nearest: |q−s_i|² ≤ |q−s_j|² ⟺ 2q·(s_j−s_i) ≤ |s_j|²−|s_i|².
            let mut normal = [
                2.0 * (sites[j][0] - sites[i][0]),
                2.0 * (sites[j][1] - sites[i][1]),
            ];
            let mut offset = norm2(sites[j]) - norm2(sites[i]);
            if farthest {
                normal = [-normal[0], -normal[1]];
                offset = -offset;
            }
            halfplanes.push(Halfplane {
                normal,
                offset,
                other: j,
            });
        }
        let nonempty = if farthest {
            hull_vertex(&sites, i)
        } else {
            true
        };
        cells.push(ShockCell {
            momentum: i,
            halfplanes,
            nonempty,
        });
    }

    // Edges: intersect each pair's bisector with the dominance constraints
    // of the remaining sites.
    let mut edges = Vec::new();
    let mut node_candidates: Vec<([usize; 3], [f64; 2])> = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let mid = [
                0.5 * (sites[i][0] + sites[j][0]),
                0.5 * (sites[i][1] + sites[j][1]),
            ];
            let diff = [sites[j][0] - sites[i][0], sites[j][1] - sites[i][1]];
            let len = diff[0].hypot(diff[1]);
            if len <= INTERVAL_TOL * scale {
                return Err(Error::Degenerate(format!(
                    "momenta {i} and {j} coincide at this time offset"
                )));
            }
            let dir = [-diff[1] / len, diff[0] / len];

            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            let mut lo_by = usize::MAX;
            let mut hi_by = usize::MAX;
            let mut dead = false;
            for l in 0..k {
                if l == i || l == j {
                    continue;
                }
                // Tie beats l: |q−s_i|² ≤ |q−s_l|² on q = mid + s·dir
                // (≥ for the farthest diagram).
                let n = [
                    2.0 * (sites[l][0] - sites[i][0]),
                    2.0 * (sites[l][1] - sites[i][1]),
                ];
                let c = norm2(sites[l]) - norm2(sites[i]);
                let coef = n[0] * dir[0] + n[1] * dir[1];
                let rhs = c - (n[0] * mid[0] + n[1] * mid[1]);
                // Genericity: coef = 0 would need s_l collinear with s_i,s_j.
                let (coef, rhs) = if farthest { (-coef, -rhs) } else { (coef, rhs) };
                if coef.abs() <= INTERVAL_TOL * scale {
                    if rhs < 0.0 {
                        dead = true;
                        break;
                    }
                    continue;
                }
                let bound = rhs / coef;
                if coef > 0.0 {
                    if bound < hi {
                        hi = bound;
                        hi_by = l;
                    }
                } else if bound > lo {
                    lo = bound;
                    lo_by = l;
                }
            }
            if dead || lo >= hi - INTERVAL_TOL * scale.max(1.0) {
                continue;
            }
            let geometry = match (lo.is_finite(), hi.is_finite()) {
                (false, false) => EdgeGeometry::Line {
                    point: mid,
                    direction: dir,
                },
                (true, false) => EdgeGeometry::Ray {
                    origin: at(mid, dir, lo),
                    direction: dir,
                },
                (false, true) => EdgeGeometry::Ray {
                    origin: at(mid, dir, hi),
                    direction: [-dir[0], -dir[1]],
                },
                (true, true) => EdgeGeometry::Segment {
                    a: at(mid, dir, lo),
                    b: at(mid, dir, hi),
                },
            };
            let pi = momentum(i);
            let pj = momentum(j);
            edges.push(ShockEdge {
                momenta: (i, j),
                geometry,
                velocity: [0.5 * (pi[0] + pj[0]), 0.5 * (pi[1] + pj[1])],
            });
            if lo.is_finite() {
                let mut t = [i, j, lo_by];
                t.sort_unstable();
                node_candidates.push((t, at(mid, dir, lo)));
            }
            if hi.is_finite() {
                let mut t = [i, j, hi_by];
                t.sort_unstable();
                node_candidates.push((t, at(mid, dir, hi)));
            }
        }
    }

    // Nodes: dedupe endpoint candidates by their momentum triple.
    node_candidates.sort_by(|a, b| a.0.cmp(&b.0));
    let mut nodes = Vec::new();
    for (triple, pos) in node_candidates {
        if let Some(last) = nodes.last() {
            let last: &ShockNode = last;
            if last.momenta == triple {
                debug_assert!(
                    dist(last.position, pos) <= NODE_MERGE_TOL * scale.max(1.0) * 1e3,
                    "same triple found at two positions"
                );
                continue;
            }
        }
        let (a, b, c) = (momentum(triple[0]), momentum(triple[1]), momentum(triple[2]));
        let classification = classify_node(&a, &b, &c)?;
        nodes.push(ShockNode {
            position: pos,
            momenta: triple,
            classification,
        });
    }

    let special_point = if farthest {
        let ball = min_enclosing_ball(set)?;
        Some([ball.center[0] * tau, ball.center[1] * tau])
    } else {
        None
    };

    Ok(ShockComplex {
        tau,
        cells,
        edges,
        nodes,
        special_point,
    })
}

/// Whether site `i` is a vertex of the convex hull of all sites.
fn hull_vertex(sites: &[[f64; 2]], i: usize) -> bool {
    // A vertex admits a direction in which it is strictly extreme. Try the
    // outward normals of all chords through i and the directions away from
    // every other site.
    let n = sites.len();
    if n <= 2 {
        return true;
    }
    let mut dirs = Vec::new();
    for j in 0..n {
        if j == i {
            continue;
        }
        let d = [sites[i][0] - sites[j][0], sites[i][1] - sites[j][1]];
        dirs.push(d);
        for l in 0..n {
            if l == i || l == j {
                continue;
            }
            let chord = [sites[l][0] - sites[j][0], sites[l][1] - sites[j][1]];
            dirs.push([-chord[1], chord[0]]);
            dirs.push([chord[1], -chord[0]]);
        }
    }
    'outer: for d in dirs {
        let len = d[0].hypot(d[1]);
        if len == 0.0 {
            continue;
        }
        let vi = sites[i][0] * d[0] + sites[i][1] * d[1];
        for (j, s) in sites.iter().enumerate() {
            if j != i && s[0] * d[0] + s[1] * d[1] >= vi - 1e-12 * len {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::MomentumSet;
    use crate::shock::classify::NodeClass;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn model(rows: &[[f64; 2]]) -> LocalLinearModel {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        LocalLinearModel::new(MomentumSet::from_rows(&rows).unwrap(), 0.0).unwrap()
    }

    fn random_model(rng: &mut ChaCha8Rng, k: usize) -> LocalLinearModel {
        loop {
            let rows: Vec<Vec<f64>> = (0..k)
                .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
                .collect();
            let set = MomentumSet::from_rows(&rows).unwrap();
            if let Ok(m) = LocalLinearModel::new(set, 0.0) {
                return m;
            }
        }
    }


    #[test]
    fn two_momenta_give_the_perpendicular_bisector_line() {
        let m = model(&[[1.0, 0.0], [-1.0, 0.5]]);
        let c = shock_diagram(&m, 1.0).unwrap();
        assert_eq!(c.edges.len(), 1);
        assert!(c.nodes.is_empty());
        assert!(c.cells.iter().all(|cell| cell.nonempty));
        let EdgeGeometry::Line { point, direction } = c.edges[0].geometry else {
            panic!("expected a full line, got {:?}", c.edges[0].geometry);
        };
        // The line is perpendicular to the site difference and passes
        // through the site midpoint.
        let diff = [-2.0, 0.5];
        assert_abs_diff_eq!(
            direction[0] * diff[0] + direction[1] * diff[1],
            0.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(point[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(point[1], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(c.edges[0].velocity[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.edges[0].velocity[1], 0.25, epsilon = 1e-12);
        // The special point (τ·ball center) lies on the shock.
        let sp = c.special_point.unwrap();
        assert!(c.distance_to_shock(sp) <= 1e-10);
    }

    #[test]
    fn equal_norm_triple_after_the_meeting_time_has_its_node_at_the_origin() {
        // Equal-norm momenta lie on a circle around the origin, so the
        // circumcenter of the scaled sites is the origin at every τ.
        let angles = [0.4f64, 2.1, 4.4];
        let rows: Vec<[f64; 2]> = angles.iter().map(|a| [a.cos(), a.sin()]).collect();
        let m = model(&rows);
        let c = shock_diagram(&m, 1.0).unwrap();
        assert_eq!(c.nodes.len(), 1);
        assert_eq!(c.edges.len(), 3);
        assert_abs_diff_eq!(c.nodes[0].position[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.nodes[0].position[1], 0.0, epsilon = 1e-12);
        // All three edges are rays starting at the node.
        for e in &c.edges {
            let EdgeGeometry::Ray { origin, .. } = e.geometry else {
                panic!("three-site farthest diagram must be three rays");
            };
            assert_abs_diff_eq!(origin[0], 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(origin[1], 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn before_the_meeting_time_every_momentum_owns_a_cell() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let m = random_model(&mut rng, 4);
            let c = shock_diagram(&m, -1.0).unwrap();
            assert!(c.cells.iter().all(|cell| cell.nonempty));
            assert!(c.special_point.is_none());
            // Every site is closest to itself: probe each site point.
            for (i, cell) in c.cells.iter().enumerate() {
                let p = m.momenta().get(i).as_slice().to_vec();
                let q = [-p[0], -p[1]];
                for hp in &cell.halfplanes {
                    assert!(
                        hp.normal[0] * q[0] + hp.normal[1] * q[1] <= hp.offset + 1e-12,
                        "site {i} violates its own cell"
                    );
                }
            }
        }
    }

    #[test]
    fn after_the_meeting_time_only_hull_momenta_own_cells() {
        // Three spread momenta and one strictly inside their triangle: the
        // interior momentum has an empty farthest-point cell and no edges.
        let m = model(&[[0.0, 0.0], [2.0, 0.1], [0.9, 1.9], [1.0, 0.63]]);
        let c = shock_diagram(&m, 1.0).unwrap();
        assert!(c.cells[0].nonempty);
        assert!(c.cells[1].nonempty);
        assert!(c.cells[2].nonempty);
        assert!(!c.cells[3].nonempty, "interior momentum must own no cell");
        assert!(c
            .edges
            .iter()
            .all(|e| e.momenta.0 != 3 && e.momenta.1 != 3));
        // And before the meeting time the same momentum does own a cell.
        let before = shock_diagram(&m, -1.0).unwrap();
        assert!(before.cells[3].nonempty);
        assert!(before
            .edges
            .iter()
            .any(|e| e.momenta.0 == 3 || e.momenta.1 == 3));
    }

    #[test]
    fn edges_match_the_grid_tie_oracle_on_both_time_sides() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for trial in 0..12 {
            let k = 3 + (trial % 3);
            let m = random_model(&mut rng, k);
            for tau in [-1.0, 0.7] {
                let c = shock_diagram(&m, tau).unwrap();
                let sites: Vec<[f64; 2]> = (0..k)
                    .map(|i| {
                        let p = m.momenta().get(i).as_slice();
                        [p[0] * tau, p[1] * tau]
                    })
                    .collect();
                let (ties, h) =
                    brute_force_tie_points(&sites, tau > 0.0, [-2.5, -2.5], [2.5, 2.5], 160);
                assert!(!ties.is_empty(), "oracle found no shock at all");
                // Every oracle tie point lies within 2 cells of an edge.
                for q in &ties {
                    let d = c.distance_to_shock(*q);
                    assert!(
                        d <= 2.0 * h,
                        "trial {trial} τ={tau}: tie point {q:?} is {d} from the diagram"
                    );
                }
                // Every edge point inside the window has a nearby tie point.
                for e in &c.edges {
                    for q in e.geometry.sample(2.0, 40) {
                        if q[0].abs() > 2.2 || q[1].abs() > 2.2 {
                            continue;
                        }
                        let near = ties
                            .iter()
                            .map(|t| dist(*t, q))
                            .fold(f64::INFINITY, f64::min);
                        assert!(
                            near <= 2.0 * h,
                            "trial {trial} τ={tau}: edge point {q:?} unsupported by oracle"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn nodes_are_equidistant_triples_and_inherit_the_triangle_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut acute_seen = false;
        let mut obtuse_seen = false;
        for _ in 0..40 {
            let m = random_model(&mut rng, 3);
            let c = shock_diagram(&m, 1.0).unwrap();
            assert_eq!(c.nodes.len(), 1, "three hull sites give one node");
            let node = &c.nodes[0];
            let d: Vec<f64> = (0..3)
                .map(|i| {
                    let p = m.momenta().get(i).as_slice();
                    dist(node.position, [p[0], p[1]])
                })
                .collect();
            assert_abs_diff_eq!(d[0], d[1], epsilon = 1e-9);
            assert_abs_diff_eq!(d[0], d[2], epsilon = 1e-9);
            match node.classification.class {
                NodeClass::Acute => acute_seen = true,
                NodeClass::Obtuse => obtuse_seen = true,
                NodeClass::RightDegenerate => {}
            }
        }
        assert!(acute_seen && obtuse_seen);
    }

    #[test]
    fn matter_flows_into_the_node_exactly_when_the_triangle_is_acute() {
        // Trapping criterion: in the node's co-moving frame the matter on
        // each incident edge approaches the node iff the momentum triangle
        // is acute.
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..60 {
            let m = random_model(&mut rng, 3);
            let c = shock_diagram(&m, 1.0).unwrap();
            let node = &c.nodes[0];
            let nv = &node.classification.node_velocity;
            let mut all_inward = true;
            assert_eq!(c.edges.len(), 3);
            for e in &c.edges {
                let EdgeGeometry::Ray { origin, direction } = e.geometry else {
                    panic!("expected rays at a triple node");
                };
                assert_abs_diff_eq!(dist(origin, node.position), 0.0, epsilon = 1e-9);
                // Relative velocity of edge matter, projected on the
                // outward edge direction.
                let rel = [e.velocity[0] - nv[0], e.velocity[1] - nv[1]];
                if rel[0] * direction[0] + rel[1] * direction[1] > 0.0 {
                    all_inward = false;
                }
            }
            assert_eq!(
                all_inward,
                node.classification.class == NodeClass::Acute,
                "trapping test disagrees with the triangle class"
            );
        }
    }

    #[test]
    fn special_point_lies_on_the_shock_for_positive_offsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..30 {
            let k = 3 + (rng.random_range(0..3usize));
            let m = random_model(&mut rng, k);
            for tau in [0.3, 1.0, 2.5] {
                let c = shock_diagram(&m, tau).unwrap();
                let sp = c.special_point.unwrap();
                assert!(
                    c.distance_to_shock(sp) <= 1e-9 * (1.0 + tau),
                    "special point off the shock at τ={tau}"
                );
            }
        }
    }

    #[test]
    fn zero_offset_is_rejected() {
        let m = model(&[[1.0, 0.0], [-1.0, 0.5]]);
        assert!(matches!(
            shock_diagram(&m, 0.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn diagram_scales_linearly_with_the_offset() {
        let m = model(&[[0.3, -0.2], [1.1, 0.4], [-0.5, 0.9]]);
        let c1 = shock_diagram(&m, 1.0).unwrap();
        let c2 = shock_diagram(&m, 2.0).unwrap();
        assert_abs_diff_eq!(
            c2.nodes[0].position[0],
            2.0 * c1.nodes[0].position[0],
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            c2.nodes[0].position[1],
            2.0 * c1.nodes[0].position[1],
            epsilon = 1e-12
        );
    }
}
