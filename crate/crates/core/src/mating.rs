//! Combinatorics of the formal mating: joined external rays, ray-equivalence
//! classes as bipartite landing graphs, loop (obstruction) detection, and the
//! T-graph of the semi-conjugacy construction with its complementary regions.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::lamination::{sorted_class, Class, LaminationSet};
use crate::pcf::{HubbardTree, PcfMode, PcfSpec, VertexKind};
use crate::rotation::{critical_angle_pair, RotationSetDigits};
use crate::theta::Theta;

/// Cap on the breadth-first ray closure; the finiteness lemma guarantees
/// small classes, so exceeding this signals a combinatorial bug.
const RAY_CAP: usize = 64;

/// The two laminations of a mating, at a fixed Siegel angle resolution.
#[derive(Clone, Debug)]
pub struct MatingPair {
    pub theta: Theta,
    pub pcf: PcfSpec,
    pub resolution_bits: u32,
    pub rotation: RotationSetDigits,
    pub siegel_lam: LaminationSet,
    pub pcf_lam: LaminationSet,
}

impl MatingPair {
    pub fn new(theta: Theta, pcf: PcfSpec, resolution_bits: u32) -> Result<MatingPair> {
        let rotation = critical_angle_pair(&theta, resolution_bits)?;
        let siegel_lam =
            LaminationSet::siegel(&rotation.t_plus, &rotation.t_minus, resolution_bits)?;
        let pcf_lam = pcf.lamination()?;
        Ok(MatingPair {
            theta,
            pcf,
            resolution_bits,
            rotation,
            siegel_lam,
            pcf_lam,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClassPeriodicity {
    Periodic { period: usize },
    Preperiodic { preperiod: usize, period: usize },
}

/// A ray-equivalence class of the formal mating, stored as a bipartite
/// landing graph: rays are edges between a Siegel-side landing class and a
/// P_c-side landing class.
#[derive(Clone, Debug, Serialize)]
pub struct RayClass {
    pub seed: Angle,
    /// Siegel-side angles of the joined rays, sorted. The c-side angle of a
    /// joined ray is the conjugate 1 - t.
    pub rays: Vec<Angle>,
    pub theta_nodes: Vec<Class>,
    pub c_nodes: Vec<Class>,
    /// (ray index, theta node index, c node index).
    pub edges: Vec<(usize, usize, usize)>,
    /// Maximum number of c-side rays landing at a node of this class.
    pub m: usize,
    pub periodicity: ClassPeriodicity,
    pub resolution_bits: u32,
}

/// Breadth-first ray-equivalence closure of the joined ray at angle t.
pub fn ray_class(pair: &MatingPair, t: &Angle) -> Result<RayClass> {
    let mut rays: BTreeSet<Angle> = BTreeSet::new();
    let mut frontier = vec![t.clone()];
    rays.insert(t.clone());
    let mut theta_nodes: Vec<Class> = Vec::new();
    let mut c_nodes: Vec<Class> = Vec::new();
    while let Some(w) = frontier.pop() {
        let theta_class = pair.siegel_lam.class_of(&w)?;
        if !theta_nodes.contains(&theta_class) {
            theta_nodes.push(theta_class.clone());
        }
        let c_class = pair.pcf_lam.class_of(&w.conjugate())?;
        if !c_nodes.contains(&c_class) {
            c_nodes.push(c_class.clone());
        }
        let mut neighbors: Vec<Angle> = theta_class;
        neighbors.extend(c_class.iter().map(Angle::conjugate));
        for v in neighbors {
            if rays.insert(v.clone()) {
                if rays.len() > RAY_CAP {
                    return Err(Error::combinatorial(format!(
                        "ray class of {t} exceeded {RAY_CAP} rays; lamination inconsistency"
                    )));
                }
                frontier.push(v);
            }
        }
    }
    let rays: Vec<Angle> = rays.into_iter().collect();
    theta_nodes.sort();
    c_nodes.sort();
    let mut edges = Vec::with_capacity(rays.len());
    for (ri, ray) in rays.iter().enumerate() {
        let tn = theta_nodes
            .iter()
            .position(|c| c.binary_search(ray).is_ok())
            .ok_or_else(|| Error::combinatorial("ray lost its theta-side node"))?;
        let cn = c_nodes
            .iter()
            .position(|c| c.binary_search(&ray.conjugate()).is_ok())
            .ok_or_else(|| Error::combinatorial("ray lost its c-side node"))?;
        edges.push((ri, tn, cn));
    }
    let m = c_nodes.iter().map(Class::len).max().unwrap_or(1);
    if rays.len() > 2 * m {
        return Err(Error::combinatorial(format!(
            "class of {t} has {} rays, above the 2m bound with m = {m}",
            rays.len()
        )));
    }
    let periodicity = class_periodicity(&rays);
    Ok(RayClass {
        seed: t.clone(),
        rays,
        theta_nodes,
        c_nodes,
        edges,
        m,
        periodicity,
        resolution_bits: pair.resolution_bits,
    })
}

fn class_periodicity(rays: &[Angle]) -> ClassPeriodicity {
    let start: Class = sorted_class(rays.to_vec());
    let mut seen = vec![start.clone()];
    let mut cur = start;
    loop {
        cur = sorted_class(cur.iter().map(Angle::double).collect());
        if let Some(pos) = seen.iter().position(|s| *s == cur) {
            let period = seen.len() - pos;
            return if pos == 0 {
                ClassPeriodicity::Periodic { period }
            } else {
                ClassPeriodicity::Preperiodic {
                    preperiod: pos,
                    period,
                }
            };
        }
        seen.push(cur.clone());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopReport {
    pub is_tree: bool,
    pub nodes: usize,
    pub rays: usize,
    /// Angles witnessing a cycle, when one exists.
    pub cycle_witness: Option<Vec<Angle>>,
}

/// Confirms the bipartite landing graph is a tree; a cycle is a potential
/// Levy-type obstruction witness and is reported with its angles.
pub fn detect_loops(class: &RayClass) -> LoopReport {
    let nodes = class.theta_nodes.len() + class.c_nodes.len();
    let edges = class.edges.len();
    // connected by construction: tree iff edges = nodes - 1
    let is_tree = edges + 1 == nodes;
    let cycle_witness = if is_tree {
        None
    } else {
        Some(find_cycle(class))
    };
    LoopReport {
        is_tree,
        nodes,
        rays: class.rays.len(),
        cycle_witness,
    }
}

fn find_cycle(class: &RayClass) -> Vec<Angle> {
    // DFS over the bipartite graph; nodes: theta 0..T, c T..T+C
    let t_count = class.theta_nodes.len();
    let node_count = t_count + class.c_nodes.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_count];
    for &(ri, tn, cn) in &class.edges {
        adj[tn].push((t_count + cn, ri));
        adj[t_count + cn].push((tn, ri));
    }
    let mut state = vec![0u8; node_count];
    let mut stack: Vec<(usize, Option<usize>, Vec<usize>)> = vec![(0, None, Vec::new())];
    while let Some((v, via, path)) = stack.pop() {
        if state[v] == 1 {
            // found a revisit: the path's rays witness the cycle
            let mut angles: Vec<Angle> =
                path.iter().map(|&r| class.rays[r].clone()).collect();
            angles.sort();
            angles.dedup();
            return angles;
        }
        state[v] = 1;
        for &(w, ray) in &adj[v] {
            if Some(ray) != via {
                let mut p = path.clone();
                p.push(ray);
                stack.push((w, Some(ray), p));
            }
        }
    }
    Vec::new()
}

#[derive(Clone, Debug, Serialize)]
pub struct X1Report {
    /// Number of theta-side nodes of the class that are preimages of the
    /// Siegel critical point (carry two rays at this resolution).
    pub x1_nodes: usize,
    pub ok: bool,
    pub x1_classes: Vec<Class>,
}

/// At most one theta-side node of a class may lie in X1; more signals an
/// inconsistent lamination.
pub fn class_of_x1_guard(class: &RayClass) -> X1Report {
    let x1_classes: Vec<Class> = class
        .theta_nodes
        .iter()
        .filter(|c| c.len() >= 2)
        .cloned()
        .collect();
    X1Report {
        x1_nodes: x1_classes.len(),
        ok: x1_classes.len() <= 1,
        x1_classes,
    }
}

/// One spoke of the T-graph: a joined external ray kept in T, with its
/// c-side landing data.
#[derive(Clone, Debug, Serialize)]
pub struct Spoke {
    pub theta_angle: Angle,
    pub c_angle: Angle,
    /// Index of the landing point record.
    pub landing: usize,
}

/// Segment from a landing point into the holomorphic disk of a vertex; the
/// side records which sector of the two rays at the point it occupies.
#[derive(Clone, Debug, Serialize)]
pub struct TSegment {
    pub disk_vertex: usize,
    pub root_id: usize,
    /// True when the disk sits inside the 0-free arc of the two ray angles.
    pub inside_arc: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TLandingPoint {
    pub id: usize,
    /// Hubbard-tree vertices whose component this point roots.
    pub vertices: Vec<usize>,
    pub c_angles: Vec<Angle>,
    /// Segments into holomorphic disks (superattracting mode).
    pub segments: Vec<TSegment>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// Wake region of a nu=1 vertex, wrapping its disk and segment.
    Wake,
    /// Region bounded by two roots of a nu=2 vertex across its disk.
    DiskPass,
    /// Jordan region between consecutive constructions.
    Outer,
}

#[derive(Clone, Debug, Serialize)]
pub struct TRegion {
    pub label: String,
    pub kind: RegionKind,
    /// Boundary spokes in circular order of theta-angle.
    pub spokes: Vec<Angle>,
    /// True when part of the Siegel disk boundary bounds the region.
    pub touches_siegel: bool,
    /// Disks on the boundary (vertex ids).
    pub disks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TGraph {
    pub mode: PcfMode,
    pub resolution_bits: u32,
    pub spokes: Vec<Spoke>,
    pub landing_points: Vec<TLandingPoint>,
    /// Vertices of the Hubbard tree carrying holomorphic disks.
    pub disks: Vec<usize>,
    pub regions: Vec<TRegion>,
}

/// Builds the T-graph: the Siegel disk, one or two joined rays with their
/// drop chains per tree vertex, and (in the superattracting case) the
/// holomorphic disks and segments; the complementary regions come from the
/// cyclic order of the spokes and the landing identifications.
pub fn build_t_graph(pair: &MatingPair, tree: &HubbardTree) -> Result<TGraph> {
    let mut landing_points: Vec<TLandingPoint> = Vec::new();
    let mut spokes: Vec<Spoke> = Vec::new();
    let mut disks: Vec<usize> = Vec::new();
    match pair.pcf.mode {
        PcfMode::Superattracting { .. } => {
            for v in &tree.vertices {
                if v.kind == VertexKind::Branch {
                    continue;
                }
                disks.push(v.id);
                let roots = tree.root_points(v.id)?;
                if roots.is_empty() {
                    return Err(Error::combinatorial(format!(
                        "cycle vertex {} has no root points",
                        v.id
                    )));
                }
                for root in roots {
                    if root.class.len() != 2 {
                        return Err(Error::combinatorial(format!(
                            "root point of vertex {} carries {} rays; the T construction \
                             needs exactly two",
                            v.id,
                            root.class.len()
                        )));
                    }
                    // landing points are shared between vertices whose
                    // components touch at the same root (e.g. the basilica)
                    let seg = TSegment {
                        disk_vertex: v.id,
                        root_id: root.id,
                        inside_arc: root.gap_inside,
                    };
                    if let Some(lp) = landing_points
                        .iter_mut()
                        .find(|lp| lp.c_angles == root.class)
                    {
                        lp.vertices.push(v.id);
                        lp.segments.push(seg);
                        continue;
                    }
                    let lp = landing_points.len();
                    landing_points.push(TLandingPoint {
                        id: lp,
                        vertices: vec![v.id],
                        c_angles: root.class.clone(),
                        segments: vec![seg],
                    });
                    for c_angle in [root.pair.0.clone(), root.pair.1.clone()] {
                        spokes.push(Spoke {
                            theta_angle: c_angle.conjugate(),
                            c_angle,
                            landing: lp,
                        });
                    }
                }
            }
        }
        PcfMode::Misiurewicz { .. } => {
            for v in &tree.vertices {
                let class = v.external_angles.clone();
                let canonical = class
                    .first()
                    .ok_or_else(|| Error::combinatorial("vertex with empty angle class"))?
                    .clone();
                let lp = landing_points.len();
                landing_points.push(TLandingPoint {
                    id: lp,
                    vertices: vec![v.id],
                    c_angles: class,
                    segments: Vec::new(),
                });
                spokes.push(Spoke {
                    theta_angle: canonical.conjugate(),
                    c_angle: canonical,
                    landing: lp,
                });
            }
        }
    }
    spokes.sort_by(|x, y| x.theta_angle.cmp(&y.theta_angle));
    let regions = compute_regions(&spokes, &landing_points)?;
    Ok(TGraph {
        mode: pair.pcf.mode.clone(),
        resolution_bits: pair.resolution_bits,
        spokes,
        landing_points,
        disks,
        regions,
    })
}

/// Union-find region walk over the gaps between circularly consecutive
/// spokes. Each landing point merges the gaps flanking its rays across every
/// sector not occupied by a disk segment; disks decorate but never merge.
fn compute_regions(spokes: &[Spoke], landing_points: &[TLandingPoint]) -> Result<Vec<TRegion>> {
    let n = spokes.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    // gap i spans (spoke i, spoke i+1 mod n)
    let gap_start = |i: usize| i;
    let gap_end = |i: usize| (i + n - 1) % n;
    for lp in landing_points {
        let incident: Vec<usize> = (0..n).filter(|&i| spokes[i].landing == lp.id).collect();
        match incident.len() {
            1 => {
                // free ray end: the two flanking gaps meet around the tip
                let i = incident[0];
                union(&mut parent, gap_end(i), gap_start(i));
            }
            2 => {
                let (i, j) = (incident[0], incident[1]); // ascending theta angle
                let seg_inside = lp.segments.iter().any(|s| s.inside_arc);
                let seg_wrap = lp.segments.iter().any(|s| !s.inside_arc);
                if !seg_inside {
                    // the sector through the (t_i, t_j) arc is free
                    union(&mut parent, gap_start(i), gap_end(j));
                }
                if !seg_wrap {
                    // the sector through the wrap arc is free
                    union(&mut parent, gap_end(i), gap_start(j));
                }
            }
            k => {
                return Err(Error::combinatorial(format!(
                    "landing point {} carries {k} spokes; T supports 1 or 2",
                    lp.id
                )));
            }
        }
    }
    // assemble regions
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in 0..n {
        let r = find(&mut parent, g);
        groups[r].push(g);
    }
    let mut regions = Vec::new();
    let mut outer_count = 0usize;
    for gaps in groups.iter().filter(|g| !g.is_empty()) {
        let mut boundary: Vec<Angle> = Vec::new();
        let mut disks_touched: Vec<usize> = Vec::new();
        let mut kind = RegionKind::Outer;
        let mut disk_pass_root: Option<(usize, usize)> = None;
        for &g in gaps {
            let s0 = &spokes[g];
            let s1 = &spokes[(g + 1) % n];
            for s in [s0, s1] {
                if !boundary.contains(&s.theta_angle) {
                    boundary.push(s.theta_angle.clone());
                }
            }
            let lp0 = &landing_points[s0.landing];
            let lp1 = &landing_points[s1.landing];
            if s0.landing == s1.landing {
                // a wake: the gap's own sector at the shared point holds a
                // disk; the non-wrap gap is the inside-arc sector
                let gap_is_inside_arc = s0.theta_angle < s1.theta_angle;
                if let Some(seg) = lp0
                    .segments
                    .iter()
                    .find(|s| s.inside_arc == gap_is_inside_arc)
                {
                    kind = RegionKind::Wake;
                    disks_touched.push(seg.disk_vertex);
                }
            } else {
                let shared: Vec<usize> = lp0
                    .vertices
                    .iter()
                    .filter(|v| lp1.vertices.contains(v))
                    .copied()
                    .collect();
                if let Some(&v) = shared.first() {
                    if !lp0.segments.is_empty() {
                        kind = RegionKind::DiskPass;
                        disks_touched.push(v);
                        let rid = lp0
                            .segments
                            .iter()
                            .chain(lp1.segments.iter())
                            .filter(|s| s.disk_vertex == v)
                            .map(|s| s.root_id)
                            .min()
                            .unwrap_or(0);
                        disk_pass_root = Some((v, rid));
                    }
                }
            }
        }
        boundary.sort();
        disks_touched.sort_unstable();
        disks_touched.dedup();
        let label = match kind {
            RegionKind::Wake => format!("U^{}", disks_touched[0]),
            RegionKind::DiskPass => {
                let (v, _) = disk_pass_root.unwrap();
                // anchor: the sub-label 1 goes to the region whose boundary
                // contains the vertex's smallest root angle
                let smallest = landing_points
                    .iter()
                    .filter(|lp| lp.vertices.contains(&v))
                    .flat_map(|lp| lp.c_angles.iter())
                    .min()
                    .cloned();
                let sub = match smallest {
                    Some(s) if boundary.contains(&s.conjugate()) => 1,
                    _ => 2,
                };
                format!("U^{v}.{sub}")
            }
            RegionKind::Outer => {
                outer_count += 1;
                format!("U~{outer_count}")
            }
        };
        regions.push(TRegion {
            label,
            kind,
            spokes: boundary,
            touches_siegel: true,
            disks: disks_touched,
        });
    }
    regions.sort_by(|x, y| x.label.cmp(&y.label));
    Ok(regions)
}

/// DOT rendering of the T-graph component structure.
pub fn t_graph_dot(t: &TGraph) -> String {
    let mut out = String::from("graph T {\n  siegel [shape=doublecircle];\n");
    for lp in &t.landing_points {
        let vs: Vec<String> = lp.vertices.iter().map(|v| format!("x{v}")).collect();
        out.push_str(&format!(
            "  land{} [label=\"{}\"];\n",
            lp.id,
            vs.join(",")
        ));
    }
    for d in &t.disks {
        out.push_str(&format!("  disk{d} [shape=circle, label=\"D_{d}\"];\n"));
    }
    for s in &t.spokes {
        out.push_str(&format!(
            "  siegel -- land{} [label=\"R_{}\"];\n",
            s.landing, s.theta_angle
        ));
    }
    for lp in &t.landing_points {
        for seg in &lp.segments {
            out.push_str(&format!(
                "  land{} -- disk{} [style=dashed];\n",
                lp.id, seg.disk_vertex
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcf::build_hubbard_tree;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn pair(theta: Theta, pcf: &str) -> MatingPair {
        MatingPair::new(theta, PcfSpec::named(pcf).unwrap(), 64).unwrap()
    }

    #[test]
    fn basilica_alpha_class() {
        let p = pair(Theta::golden(), "basilica");
        let class = ray_class(&p, &a("1/3")).unwrap();
        assert_eq!(class.rays, vec![a("1/3"), a("2/3")]);
        assert_eq!(class.m, 2);
        assert_eq!(class.c_nodes.len(), 1);
        assert_eq!(class.periodicity, ClassPeriodicity::Periodic { period: 1 });
        let lr = detect_loops(&class);
        assert!(lr.is_tree);
        let xr = class_of_x1_guard(&class);
        assert!(xr.ok && xr.x1_nodes == 0);
    }

    #[test]
    fn angle_zero_singleton_class() {
        let p = pair(Theta::golden(), "basilica");
        let class = ray_class(&p, &Angle::zero()).unwrap();
        assert_eq!(class.rays, vec![Angle::zero()]);
        assert_eq!(class.periodicity, ClassPeriodicity::Periodic { period: 1 });
        assert!(detect_loops(&class).is_tree);
    }

    #[test]
    fn paper_example_four_ray_class() {
        // theta = cbrt(1/4), c = -2: the critical pair joins through the
        // interval Julia set into exactly four rays
        let p = pair(Theta::cbrt_quarter(), "chebyshev");
        let t_plus = p.rotation.t_plus.clone();
        let class = ray_class(&p, &t_plus).unwrap();
        assert_eq!(class.rays.len(), 4, "rays: {:?}", class.rays);
        assert_eq!(class.m, 2);
        let xr = class_of_x1_guard(&class);
        assert!(xr.ok);
        assert_eq!(xr.x1_nodes, 1);
        // pattern: one X1 theta-node with both critical rays, two c-nodes
        // with two rays each, two lone theta-nodes
        assert_eq!(class.theta_nodes.len(), 3);
        assert_eq!(class.c_nodes.len(), 2);
        assert!(class.c_nodes.iter().all(|c| c.len() == 2));
        assert!(detect_loops(&class).is_tree);
    }

    #[test]
    fn synthetic_duplicated_edge_reports_loop() {
        let class = RayClass {
            seed: a("1/3"),
            rays: vec![a("1/3"), a("2/3")],
            theta_nodes: vec![vec![a("1/3"), a("2/3")]],
            c_nodes: vec![vec![a("1/3"), a("2/3")]],
            edges: vec![(0, 0, 0), (1, 0, 0)],
            m: 2,
            periodicity: ClassPeriodicity::Periodic { period: 1 },
            resolution_bits: 64,
        };
        let lr = detect_loops(&class);
        assert!(!lr.is_tree);
        assert!(lr.cycle_witness.is_some());
    }

    #[test]
    fn class_closure_is_idempotent() {
        let p = pair(Theta::golden(), "airplane");
        for seed in ["3/7", "1/3", "1/5", "5/14"] {
            let class = ray_class(&p, &a(seed)).unwrap();
            for member in &class.rays {
                let again = ray_class(&p, member).unwrap();
                assert_eq!(again.rays, class.rays, "reseeded at {member}");
            }
        }
    }

    #[test]
    fn image_class_is_valid_and_periodic_classes_return() {
        let p = pair(Theta::golden(), "basilica");
        let class = ray_class(&p, &a("1/3")).unwrap();
        if let ClassPeriodicity::Periodic { period } = class.periodicity {
            let mut angles = class.rays.clone();
            for _ in 0..period {
                angles = angles.iter().map(Angle::double).collect();
            }
            let back = ray_class(&p, &angles[0]).unwrap();
            assert_eq!(back.rays, class.rays);
        } else {
            panic!("alpha class should be periodic");
        }
    }

    #[test]
    fn airplane_t_graph_regions() {
        let p = pair(Theta::golden(), "airplane");
        let tree = build_hubbard_tree(&p.pcf).unwrap();
        let t = build_t_graph(&p, &tree).unwrap();
        assert_eq!(t.spokes.len(), 8);
        assert_eq!(t.regions.len(), 6, "regions: {:?}", t.regions);
        let wakes = t.regions.iter().filter(|r| r.kind == RegionKind::Wake).count();
        let passes = t
            .regions
            .iter()
            .filter(|r| r.kind == RegionKind::DiskPass)
            .count();
        let outer = t.regions.iter().filter(|r| r.kind == RegionKind::Outer).count();
        assert_eq!((wakes, passes, outer), (2, 2, 2));
    }

    #[test]
    fn chebyshev_t_graph_single_region() {
        let p = pair(Theta::golden(), "chebyshev");
        let tree = build_hubbard_tree(&p.pcf).unwrap();
        let t = build_t_graph(&p, &tree).unwrap();
        assert_eq!(t.spokes.len(), 2);
        // the fixed point beta carries the single angle 0
        let beta_lp = t
            .landing_points
            .iter()
            .find(|lp| lp.c_angles == vec![Angle::zero()])
            .expect("beta landing point");
        let beta_spokes = t
            .spokes
            .iter()
            .filter(|s| s.landing == beta_lp.id)
            .count();
        assert_eq!(beta_spokes, 1);
        assert_eq!(t.regions.len(), 1);
        assert_eq!(t.regions[0].kind, RegionKind::Outer);
    }

    #[test]
    fn basilica_t_graph_two_wakes() {
        let p = pair(Theta::golden(), "basilica");
        let tree = build_hubbard_tree(&p.pcf).unwrap();
        let t = build_t_graph(&p, &tree).unwrap();
        // both vertices share the alpha root: two spokes, two segments
        assert_eq!(t.spokes.len(), 2);
        assert_eq!(t.regions.len(), 2, "regions: {:?}", t.regions);
    }

    #[test]
    fn dendrite_t_graph_single_region() {
        let p = pair(Theta::golden(), "dendrite154");
        let tree = build_hubbard_tree(&p.pcf).unwrap();
        let t = build_t_graph(&p, &tree).unwrap();
        assert_eq!(t.spokes.len(), 3);
        assert_eq!(t.regions.len(), 1);
    }
}
