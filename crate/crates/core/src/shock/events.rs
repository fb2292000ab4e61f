//! Cluster life-cycle events along time-parametrized momentum paths.
//!
//! A node traps matter exactly while its momentum triangle is acute, so
//! births and releases of clusters happen when the smallest vertex cosine
//! of a governing triangle crosses zero. Stable clusters travel along shock
//! edges and either pass through non-trapping nodes or merge into the
//! growing cluster pinned at a trapping node.

use super::classify::{
    classify_node, min_vertex_cos_of, point_in_triangle, ClusterFate, NodeClass, Transition,
};
use super::diagram::{shock_diagram, EdgeGeometry, ShockComplex};
use crate::convex::{min_enclosing_ball_with_support, MomentumSet};
use crate::potential::LocalLinearModel;
use crate::{Error, Result};

/// |χ| below which two consecutive samples mean a non-generic interval
/// rather than an isolated crossing.
const NON_GENERIC_BAND: f64 = 1e-12;
/// Coordinate drift below which a sampled path counts as static.
const STATIC_TOL: f64 = 1e-13;

/// A time-parametrized family of momenta with a fixed count.
pub trait MomentaPath {
    fn count(&self) -> usize;
    fn momenta_at(&self, t: f64) -> Result<MomentumSet>;
}

impl MomentaPath for MomentumSet {
    fn count(&self) -> usize {
        self.len()
    }

    fn momenta_at(&self, _t: f64) -> Result<MomentumSet> {
        Ok(self.clone())
    }
}

/// Fixed momenta plus one extra momentum moving on a circle.
#[derive(Debug, Clone)]
pub struct OrbitingMomentum {
    pub fixed: MomentumSet,
    pub center: [f64; 2],
    pub radius: f64,
    pub angular_velocity: f64,
    pub phase: f64,
}

impl MomentaPath for OrbitingMomentum {
    fn count(&self) -> usize {
        self.fixed.len() + 1
    }

    fn momenta_at(&self, t: f64) -> Result<MomentumSet> {
        let mut rows: Vec<Vec<f64>> = self
            .fixed
            .iter()
            .map(|p| p.as_slice().to_vec())
            .collect();
        let a = self.phase + self.angular_velocity * t;
        rows.push(vec![
            self.center[0] + self.radius * a.cos(),
            self.center[1] + self.radius * a.sin(),
        ]);
        MomentumSet::from_rows(&rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// A triangle turned acute: its node starts trapping matter.
    Birth,
    /// A triangle turned obtuse: the grown cluster detaches and travels.
    Release,
    /// A traveling stable cluster crossed a non-trapping node.
    PassThrough,
    /// A traveling stable cluster was absorbed at a trapping node.
    Merge,
}

#[derive(Debug, Clone)]
pub struct ClusterEvent {
    pub kind: EventKind,
    pub time: f64,
    /// Node position in the model chart at the event time.
    pub location: [f64; 2],
    /// The governing momenta (the crossing triple, or the node triple).
    pub configuration: MomentumSet,
    /// Hull type of a 4-momentum configuration at the event, when defined.
    pub transition: Option<Transition>,
}

/// A cluster alive at the end of the scanned interval.
#[derive(Debug, Clone)]
pub struct PersistentCluster {
    pub fate: ClusterFate,
    pub velocity: [f64; 2],
    /// Time from which the cluster has existed in its current state.
    pub since: f64,
    pub position_at_end: [f64; 2],
}

#[derive(Debug, Clone)]
pub struct ClusterScan {
    /// Events sorted by time.
    pub events: Vec<ClusterEvent>,
    pub persistent: Vec<PersistentCluster>,
}

/// A stable cluster inserted on the shock to be traced forward.
#[derive(Debug, Clone, Copy)]
pub struct SeedCluster {
    pub position: [f64; 2],
    pub time: f64,
}

/// Scans `[t_lo, t_hi]` for cluster events with sampling step `dt`.
///
/// Birth/Release crossings are localized by bisection to `dt·1e-3`. For a
/// static configuration the scan also reports the cluster emitted by the
/// origin (all momenta meet there at offset 0): none when every subtriangle
/// is obtuse, stable when the minimal disk rests on two momenta, growing
/// when on three.
pub fn detect_cluster_events<P: MomentaPath + ?Sized>(
    path: &P,
    t_lo: f64,
    t_hi: f64,
    dt: f64,
) -> Result<ClusterScan> {
    detect_cluster_events_with_seeds(path, t_lo, t_hi, dt, &[])
}

/// As [`detect_cluster_events`], additionally tracing seeded stable
/// clusters along the shock (static configurations only): each seed is
/// projected onto the nearest edge and followed until it merges, leaves
/// the scan window, or keeps traveling (then reported as persistent).
pub fn detect_cluster_events_with_seeds<P: MomentaPath + ?Sized>(
    path: &P,
    t_lo: f64,
    t_hi: f64,
    dt: f64,
    seeds: &[SeedCluster],
) -> Result<ClusterScan> {
    if !(dt > 0.0) || !dt.is_finite() || !(t_lo < t_hi) {
        return Err(Error::Domain(format!(
            "need t_lo < t_hi and dt > 0, got [{t_lo}, {t_hi}] with dt = {dt}"
        )));
    }
    let k = path.count();
    if k < 3 {
        return Err(Error::InvalidModel(
            "cluster events need at least three momenta".into(),
        ));
    }
    let static_path = path_is_static(path, t_lo, t_hi)?;

    let mut events = Vec::new();
    let mut persistent = Vec::new();

    // Birth/Release: sign crossings of the minimum vertex cosine of every
    // momentum triple.
    let steps = ((t_hi - t_lo) / dt).ceil() as usize;
    let mut triples = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            for l in (j + 1)..k {
                triples.push([i, j, l]);
            }
        }
    }
    for triple in &triples {
        let chi = |t: f64| -> Result<f64> {
            let set = path.momenta_at(t)?;
            Ok(min_vertex_cos_of(&set, triple))
        };
        let mut prev_t = t_lo;
        let mut prev_chi = chi(t_lo)?;
        for n in 1..=steps {
            let t = (t_lo + n as f64 * dt).min(t_hi);
            let c = chi(t)?;
            if prev_chi.abs() < NON_GENERIC_BAND && c.abs() < NON_GENERIC_BAND {
                return Err(Error::NonGenericInterval {
                    t_lo: prev_t,
                    t_hi: t,
                    what: format!(
                        "triangle {triple:?} stays right-angled over a whole sample step"
                    ),
                });
            }
            if prev_chi.signum() != c.signum() && prev_chi != 0.0 && c != 0.0 {
                let (mut a, mut b, mut fa) = (prev_t, t, prev_chi);
                while b - a > dt * 1e-3 {
                    let m = 0.5 * (a + b);
                    let fm = chi(m)?;
                    if fm.signum() == fa.signum() {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                let t_e = 0.5 * (a + b);
                let kind = if c > 0.0 {
                    EventKind::Birth
                } else {
                    EventKind::Release
                };
                let set = path.momenta_at(t_e)?;
                let rows: Vec<Vec<f64>> = triple
                    .iter()
                    .map(|&i| set.get(i).as_slice().to_vec())
                    .collect();
                let configuration = MomentumSet::from_rows(&rows)?;
                let node = classify_node(&rows[0], &rows[1], &rows[2])?;
                let location = [
                    t_e * node.node_velocity[0],
                    t_e * node.node_velocity[1],
                ];
                let transition = if k == 4 {
                    Some(hull_transition(&set)?)
                } else {
                    None
                };
                events.push(ClusterEvent {
                    kind,
                    time: t_e,
                    location,
                    configuration,
                    transition,
                });
            }
            prev_t = t;
            prev_chi = c;
        }
    }

    // Origin cluster of a static configuration.
    if static_path && t_hi > 0.0 {
        let set = path.momenta_at(t_lo)?;
        let any_acute = triples
            .iter()
            .any(|tr| min_vertex_cos_of(&set, tr) > 0.0);
        if any_acute {
            let (ball, support) = min_enclosing_ball_with_support(&set)?;
            let velocity = [ball.center[0], ball.center[1]];
            let fate = if support.len() == 2 {
                ClusterFate::Stable
            } else {
                ClusterFate::Growing
            };
            persistent.push(PersistentCluster {
                fate,
                velocity,
                since: 0.0,
                position_at_end: [velocity[0] * t_hi, velocity[1] * t_hi],
            });
        }
    }

    // Seeded stable clusters.
    if !seeds.is_empty() {
        if !static_path {
            return Err(Error::Domain(
                "cluster tracing is only defined for static momenta".into(),
            ));
        }
        let set = path.momenta_at(t_lo)?;
        let model = LocalLinearModel::new(set, 0.0)?;
        let unit = shock_diagram(&model, 1.0)?;
        for seed in seeds {
            trace_stable_cluster(&model, &unit, *seed, t_hi, &mut events, &mut persistent)?;
        }
    }

    events.sort_by(|a, b| a.time.total_cmp(&b.time));
    Ok(ClusterScan { events, persistent })
}

fn path_is_static<P: MomentaPath + ?Sized>(path: &P, t_lo: f64, t_hi: f64) -> Result<bool> {
    let base = path.momenta_at(t_lo)?;
    let scale = base.max_norm().max(1.0);
    for n in 1..=3 {
        let t = t_lo + (t_hi - t_lo) * n as f64 / 3.0;
        let other = path.momenta_at(t)?;
        for (p, q) in base.iter().zip(other.iter()) {
            for (a, b) in p.as_slice().iter().zip(q.as_slice()) {
                if (a - b).abs() > STATIC_TOL * scale {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Hull type of four planar momenta: triangle (one interior point) or
/// quadrangle. Unlike the full configuration classifier this tolerates
/// right subtriangles, which occur exactly at Birth/Release instants.
pub(crate) fn hull_transition(set: &MomentumSet) -> Result<Transition> {
    if set.len() != 4 || set.dim() != 2 {
        return Err(Error::InvalidModel(
            "hull transition needs four planar momenta".into(),
        ));
    }
    let p = |i: usize| set.get(i).as_slice().to_vec();
    let mut interior = 0;
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        if point_in_triangle(&p(i), &p(others[0]), &p(others[1]), &p(others[2])) {
            interior += 1;
        }
    }
    match interior {
        0 => Ok(Transition::Sixth),
        1 => Ok(Transition::Fifth),
        n => Err(Error::Degenerate(format!(
            "{n} momenta inside the hull of the others"
        ))),
    }
}

/// Follows one stable cluster along the scaled static diagram.
///
/// All node positions and the cluster path are linear in t, so arrival
/// times solve linear equations exactly. At an obtuse node the cluster
/// continues along the node's outflow edge (the minimal-ball support pair
/// of its triangle); at an acute node it merges into the growing cluster.
fn trace_stable_cluster(
    model: &LocalLinearModel,
    unit: &ShockComplex,
    seed: SeedCluster,
    t_hi: f64,
    events: &mut Vec<ClusterEvent>,
    persistent: &mut Vec<PersistentCluster>,
) -> Result<()> {
    if !(seed.time > 0.0) {
        return Err(Error::Domain(
            "seed clusters must start at a positive time offset".into(),
        ));
    }
    let momentum = |i: usize| -> [f64; 2] {
        let s = model.momenta().get(i).as_slice();
        [s[0], s[1]]
    };

    // Attach to the nearest edge of the diagram at the seed time (the
    // complex scales linearly, so use the unit diagram scaled by time).
    let q1 = [seed.position[0] / seed.time, seed.position[1] / seed.time];
    let (mut edge_idx, _) = unit
        .edges
        .iter()
        .enumerate()
        .map(|(n, e)| (n, e.geometry.distance_to(q1)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Degenerate("the diagram has no edges to ride".into()))?;

    let mut t = seed.time;
    // Project the seed onto the edge's bisector line, scaled back.
    let mut x = {
        let e = &unit.edges[edge_idx];
        let (anchor, d) = edge_frame(&e.geometry);
        let s = (q1[0] - anchor[0]) * d[0] + (q1[1] - anchor[1]) * d[1];
        [
            (anchor[0] + s * d[0]) * seed.time,
            (anchor[1] + s * d[1]) * seed.time,
        ]
    };
    let mut since = seed.time;

    for _ in 0..100 {
        let e = &unit.edges[edge_idx];
        let (i, j) = e.momenta;
        let m = e.velocity;
        let (_, d) = edge_frame(&e.geometry);

        // Earliest node arrival: (x + (s−t)·m − s·n)·d = 0, linear in s.
        let mut best: Option<(f64, usize)> = None;
        for (n_idx, node) in unit.nodes.iter().enumerate() {
            if !node.momenta.contains(&i) || !node.momenta.contains(&j) {
                continue;
            }
            let n1 = node.position;
            let c0 = (x[0] - t * m[0] - 0.0) * d[0] + (x[1] - t * m[1]) * d[1];
            let c1 = (m[0] - n1[0]) * d[0] + (m[1] - n1[1]) * d[1];
            if c1.abs() < 1e-15 {
                continue;
            }
            let s_hit = -c0 / c1;
            if s_hit > t + 1e-12 && best.is_none_or(|(b, _)| s_hit < b) {
                best = Some((s_hit, n_idx));
            }
        }

        let Some((t_hit, n_idx)) = best.filter(|&(s, _)| s <= t_hi) else {
            // No node reached inside the window: still traveling at t_hi.
            let pos = [x[0] + (t_hi - t) * m[0], x[1] + (t_hi - t) * m[1]];
            persistent.push(PersistentCluster {
                fate: ClusterFate::Stable,
                velocity: m,
                since,
                position_at_end: pos,
            });
            return Ok(());
        };

        let node = &unit.nodes[n_idx];
        let location = [node.position[0] * t_hit, node.position[1] * t_hit];
        let rows: Vec<Vec<f64>> = node
            .momenta
            .iter()
            .map(|&idx| momentum(idx).to_vec())
            .collect();
        let configuration = MomentumSet::from_rows(&rows)?;
        match node.classification.class {
            NodeClass::Acute => {
                events.push(ClusterEvent {
                    kind: EventKind::Merge,
                    time: t_hit,
                    location,
                    configuration,
                    transition: None,
                });
                return Ok(());
            }
            NodeClass::Obtuse => {
                events.push(ClusterEvent {
                    kind: EventKind::PassThrough,
                    time: t_hit,
                    location,
                    configuration: configuration.clone(),
                    transition: None,
                });
                // Continue on the outflow edge: the support pair of the
                // node triangle (its longest side).
                let (a, b) = longest_side(&node.momenta, &momentum);
                let next = unit
                    .edges
                    .iter()
                    .position(|e| e.momenta == (a.min(b), a.max(b)))
                    .ok_or_else(|| {
                        Error::Degenerate(
                            "outflow edge of an obtuse node is missing".into(),
                        )
                    })?;
                edge_idx = next;
                t = t_hit;
                x = location;
                since = t_hit;
            }
            NodeClass::RightDegenerate => {
                return Err(Error::Degenerate(
                    "cluster arrived at a right-degenerate node".into(),
                ));
            }
        }
    }
    Err(Error::Domain(
        "cluster tracing did not terminate after 100 node crossings".into(),
    ))
}

fn edge_frame(g: &EdgeGeometry) -> ([f64; 2], [f64; 2]) {
    match *g {
        EdgeGeometry::Line { point, direction } => (point, direction),
        EdgeGeometry::Ray { origin, direction } => (origin, direction),
        EdgeGeometry::Segment { a, b } => {
            let d = [b[0] - a[0], b[1] - a[1]];
            let len = d[0].hypot(d[1]).max(1e-300);
            (a, [d[0] / len, d[1] / len])
        }
    }
}

fn longest_side(triple: &[usize; 3], momentum: &impl Fn(usize) -> [f64; 2]) -> (usize, usize) {
    let mut best = (triple[0], triple[1]);
    let mut len = -1.0;
    for (a, b) in [
        (triple[0], triple[1]),
        (triple[0], triple[2]),
        (triple[1], triple[2]),
    ] {
        let (pa, pb) = (momentum(a), momentum(b));
        let d = (pa[0] - pb[0]).hypot(pa[1] - pb[1]);
        if d > len {
            len = d;
            best = (a, b);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn set(rows: &[[f64; 2]]) -> MomentumSet {
        MomentumSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rotating_momentum_alternates_births_and_releases_at_predicted_angles() {
        // Fixed momenta (±1, 0), third on the circle of radius 3/2. The
        // vertex angles at (±1,0) turn right exactly when the rotating
        // x-coordinate crosses ±1, i.e. at cos θ = ±2/3; the angle at the
        // rotating vertex stays acute since |p₃|² − 1 > 0. One cycle hence
        // carries two births and two releases, alternating.
        let path = OrbitingMomentum {
            fixed: set(&[[1.0, 0.0], [-1.0, 0.0]]),
            center: [0.0, 0.0],
            radius: 1.5,
            angular_velocity: 1.0,
            phase: 0.0,
        };
        let t0 = 0.05;
        let t1 = 0.05 + std::f64::consts::TAU;
        let dt = 1e-3;
        let scan = detect_cluster_events(&path, t0, t1, dt).unwrap();
        assert_eq!(scan.events.len(), 4, "events: {:?}", scan.events);

        let theta_c = (2.0f64 / 3.0).acos();
        let expected = [
            (EventKind::Birth, theta_c),
            (EventKind::Release, std::f64::consts::PI - theta_c),
            (EventKind::Birth, std::f64::consts::PI + theta_c),
            (EventKind::Release, std::f64::consts::TAU - theta_c),
        ];
        for (ev, (kind, time)) in scan.events.iter().zip(expected) {
            assert_eq!(ev.kind, kind);
            assert_abs_diff_eq!(ev.time, time, epsilon = 2.0 * dt);
            assert!(ev.transition.is_none());
            assert_eq!(ev.configuration.len(), 3);
        }
    }

    #[test]
    fn static_acute_triangle_has_no_events_and_one_growing_cluster() {
        let angles = [0.4f64, 2.5, 4.3];
        let rows: Vec<[f64; 2]> = angles.iter().map(|a| [a.cos(), a.sin()]).collect();
        let scan = detect_cluster_events(&set(&rows), -1.0, 2.0, 0.05).unwrap();
        assert!(scan.events.is_empty());
        assert_eq!(scan.persistent.len(), 1);
        let c = &scan.persistent[0];
        assert_eq!(c.fate, ClusterFate::Growing);
        // Equal-norm momenta: ball center and circumcenter both at 0.
        assert_abs_diff_eq!(c.velocity[0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c.velocity[1], 0.0, epsilon = 1e-9);
    }

    #[test]
    fn static_obtuse_triangle_forms_no_cluster() {
        let scan =
            detect_cluster_events(&set(&[[0.0, 0.0], [4.0, 0.0], [1.0, 1.0]]), -1.0, 2.0, 0.05)
                .unwrap();
        assert!(scan.events.is_empty());
        assert!(scan.persistent.is_empty());
    }

    #[test]
    fn narrow_four_configuration_emits_a_stable_cluster_from_the_origin() {
        // Clustered triple with an acute subtriangle plus one outlier:
        // narrow (disk support 2), quadrangle hull.
        let rows = [[0.0, 0.0], [0.1, 0.23], [-0.17, 0.11], [3.0, 0.4]];
        let m = set(&rows);
        let scan = detect_cluster_events(&m, -0.5, 2.0, 0.05).unwrap();
        assert!(scan.events.is_empty());
        assert_eq!(scan.persistent.len(), 1);
        let c = &scan.persistent[0];
        assert_eq!(c.fate, ClusterFate::Stable);
        assert_eq!(hull_transition(&m).unwrap(), Transition::Sixth);

        // Its trajectory comes from the origin and stays on the shock.
        let model = LocalLinearModel::new(m, 0.0).unwrap();
        for tau in [0.5, 1.0, 2.0] {
            let complex = shock_diagram(&model, tau).unwrap();
            let pos = [c.velocity[0] * tau, c.velocity[1] * tau];
            assert!(complex.distance_to_shock(pos) <= 1e-9 * (1.0 + tau));
        }
        assert_abs_diff_eq!(c.position_at_end[0], 2.0 * c.velocity[0], epsilon = 1e-12);
    }

    #[test]
    fn totally_obtuse_chain_has_no_cluster_at_all() {
        let rows = [[0.0, 0.0], [1.0, 0.04], [2.0, -0.06], [3.0, 0.03]];
        let scan = detect_cluster_events(&set(&rows), -0.5, 2.0, 0.05).unwrap();
        assert!(scan.events.is_empty());
        assert!(scan.persistent.is_empty());
    }

    #[test]
    fn seeded_cluster_passes_through_an_obtuse_node_and_exits_on_the_long_side() {
        // Obtuse triangle: node velocity (2,−1), outflow pair (0,1) with
        // midpoint velocity (2,0). Seed a cluster on an inflow edge.
        let rows = [[0.0, 0.0], [4.0, 0.0], [1.0, 1.0]];
        let m = set(&rows);
        let model = LocalLinearModel::new(m.clone(), 0.0).unwrap();
        let t0 = 0.5;
        let unit = shock_diagram(&model, 1.0).unwrap();
        // Take the inflow edge between momenta 0 and 2 and seed half a unit
        // away from the node along it.
        let e = unit
            .edges
            .iter()
            .find(|e| e.momenta == (0, 2))
            .expect("edge (0,2) must exist");
        let EdgeGeometry::Ray { origin, direction } = e.geometry else {
            panic!("expected a ray");
        };
        let seed = SeedCluster {
            position: [
                (origin[0] + 0.5 * direction[0]) * t0,
                (origin[1] + 0.5 * direction[1]) * t0,
            ],
            time: t0,
        };
        let scan = detect_cluster_events_with_seeds(&m, 0.1, 6.0, 0.05, &[seed]).unwrap();
        let passes: Vec<_> = scan
            .events
            .iter()
            .filter(|e| e.kind == EventKind::PassThrough)
            .collect();
        assert_eq!(passes.len(), 1, "events: {:?}", scan.events);
        let ev = passes[0];
        // The event happens on the moving node ray t·(2,−1).
        assert_abs_diff_eq!(ev.location[0], 2.0 * ev.time, epsilon = 1e-9);
        assert_abs_diff_eq!(ev.location[1], -ev.time, epsilon = 1e-9);
        assert!(ev.time > t0 && ev.time < 6.0);
        // Afterwards the cluster rides the long-side edge with velocity (2,0).
        assert_eq!(scan.persistent.len(), 1);
        let c = &scan.persistent[0];
        assert_eq!(c.fate, ClusterFate::Stable);
        assert_abs_diff_eq!(c.velocity[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.velocity[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.since, ev.time, epsilon = 1e-12);
    }

    #[test]
    fn seeded_cluster_merges_at_a_trapping_node() {
        // Near-equilateral triangle: every edge flows into the node, so a
        // seeded cluster must merge with the growing cluster there.
        let angles = [0.4f64, 2.5, 4.3];
        let rows: Vec<[f64; 2]> = angles.iter().map(|a| [a.cos(), a.sin()]).collect();
        let m = set(&rows);
        let model = LocalLinearModel::new(m.clone(), 0.0).unwrap();
        let t0 = 1.0;
        let unit = shock_diagram(&model, 1.0).unwrap();
        let EdgeGeometry::Ray { origin, direction } = unit.edges[0].geometry else {
            panic!("expected a ray");
        };
        let seed = SeedCluster {
            position: [
                (origin[0] + 0.8 * direction[0]) * t0,
                (origin[1] + 0.8 * direction[1]) * t0,
            ],
            time: t0,
        };
        let scan = detect_cluster_events_with_seeds(&m, 0.5, 50.0, 0.5, &[seed]).unwrap();
        assert_eq!(scan.events.len(), 1);
        assert_eq!(scan.events[0].kind, EventKind::Merge);
        // Absorbed: the seeded cluster is gone, only the origin's growing
        // cluster remains.
        assert_eq!(scan.persistent.len(), 1);
        assert_eq!(scan.persistent[0].fate, ClusterFate::Growing);
    }

    #[test]
    fn exactly_right_static_triangle_is_a_non_generic_interval() {
        let err = detect_cluster_events(
            &set(&[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]),
            0.0,
            1.0,
            0.1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonGenericInterval { .. }));
    }

    #[test]
    fn bad_windows_are_rejected() {
        let m = set(&[[0.0, 0.0], [4.0, 0.0], [1.0, 1.0]]);
        assert!(detect_cluster_events(&m, 1.0, 0.0, 0.1).is_err());
        assert!(detect_cluster_events(&m, 0.0, 1.0, 0.0).is_err());
    }
}
