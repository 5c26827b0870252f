//! Combinatorics of the postcritically finite quadratic P_c: kneading
//! sequences, characteristic-angle pairing, and the abstract Hubbard tree
//! with its root-point external angles.

use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::laminar::{Node, RegionTree};
use crate::lamination::{hull_leaves, sorted_class, Class, LaminationSet, Leaf, SectorRule};

/// Itinerary symbol relative to the partition by {t/2, (t+1)/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Symbol {
    A,
    B,
    Star,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::A => 'A',
            Symbol::B => 'B',
            Symbol::Star => '*',
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KneadingSequence {
    pub symbols: Vec<Symbol>,
    pub preperiod: usize,
    pub period: usize,
}

impl KneadingSequence {
    pub fn to_string_compact(&self) -> String {
        self.symbols.iter().map(|s| s.as_char()).collect()
    }
}

/// Itinerary of the doubling orbit of t relative to {t/2, (t+1)/2}; the
/// symbol A marks the arc containing t itself.
pub fn kneading(t: &Angle) -> Result<KneadingSequence> {
    if t.is_zero() {
        return Err(Error::validation("kneading sequence of angle 0 is undefined"));
    }
    let sector = SectorRule::from_anchor(t)?;
    let (lo, hi) = sector.diameter();
    let info = t.orbit_info();
    let symbols = info
        .orbit
        .iter()
        .map(|x| {
            if *x == lo || *x == hi {
                Symbol::Star
            } else if sector.in_s1(x) {
                Symbol::A
            } else {
                Symbol::B
            }
        })
        .collect();
    Ok(KneadingSequence {
        symbols,
        preperiod: info.preperiod,
        period: info.period,
    })
}

/// The characteristic partner of a periodic angle: the unique angle paired
/// with t in the quadratic parameter lamination, found by drawing the
/// period-k pairings (k ascending) with the crossing-free stack rule.
pub fn characteristic_partner(t: &Angle) -> Result<Angle> {
    let info = t.orbit_info();
    if info.preperiod != 0 || t.is_zero() {
        return Err(Error::validation(format!(
            "{t} is not a nonzero periodic angle"
        )));
    }
    let p = info.period;
    let mut drawn: Vec<Leaf> = Vec::new();
    let mut partner: Option<Angle> = None;
    for k in 1..=p {
        let modulus = (num_bigint::BigUint::from(1u32) << k) - 1u32;
        let mut angles: Vec<Angle> = Vec::new();
        let mut num = num_bigint::BigUint::from(1u32);
        while num < modulus {
            let a = Angle::new(num.clone(), modulus.clone());
            if a.orbit_info().period == k {
                angles.push(a);
            }
            num += 1u32;
        }
        angles.sort();
        angles.dedup();
        let mut stack: Vec<Angle> = Vec::new();
        for x in angles {
            let mut paired = false;
            if let Some(top) = stack.last() {
                let candidate = Leaf::new(top.clone(), x.clone())?;
                if !drawn.iter().any(|l| l.crosses(&candidate)) {
                    let top = stack.pop().unwrap();
                    if &top == t {
                        partner = Some(x.clone());
                    } else if &x == t {
                        partner = Some(top.clone());
                    }
                    drawn.push(candidate);
                    paired = true;
                }
            }
            if !paired {
                stack.push(x);
            }
        }
        if !stack.is_empty() {
            return Err(Error::combinatorial(format!(
                "parameter pairing left {} unmatched angles at period {k}",
                stack.len()
            )));
        }
    }
    partner.ok_or_else(|| Error::combinatorial(format!("no partner found for {t}")))
}

/// Mode of a postcritically finite quadratic.
///
/// Misiurewicz preperiod/period follow the critical-value orbit: the value
/// c has preperiod l >= 1 and lands on a cycle of period k, so the critical
/// point itself has preperiod l + 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode")]
pub enum PcfMode {
    Superattracting { period: usize },
    Misiurewicz { preperiod: usize, period: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct PcfSpec {
    pub mode: PcfMode,
    pub characteristic_angle: Angle,
    /// Display name for reports.
    pub name: String,
}

impl PcfSpec {
    pub fn superattracting(angle: Angle) -> Result<PcfSpec> {
        let info = angle.orbit_info();
        if angle.is_zero() || info.preperiod != 0 {
            return Err(Error::validation(format!(
                "superattracting characteristic angle must be periodic, got {angle}"
            )));
        }
        if info.period < 2 {
            return Err(Error::validation(
                "superattracting period 1 (the trivial case) is not supported",
            ));
        }
        Ok(PcfSpec {
            name: format!("super(p={}, t={})", info.period, angle),
            mode: PcfMode::Superattracting { period: info.period },
            characteristic_angle: angle,
        })
    }

    /// Misiurewicz spec; the point period is derived from the class cycle.
    pub fn misiurewicz(angle: Angle) -> Result<PcfSpec> {
        let info = angle.orbit_info();
        if info.preperiod == 0 {
            return Err(Error::validation(format!(
                "Misiurewicz characteristic angle must be strictly preperiodic, got {angle}"
            )));
        }
        let preperiod = info.preperiod;
        // point period: least k with sigma^k fixing the landing class of the
        // first periodic orbit point
        let prelim = LaminationSet::misiurewicz(std::slice::from_ref(&angle))?;
        let first_periodic = info.orbit[preperiod].clone();
        let cycle_class = prelim.class_of(&first_periodic)?;
        let mut k = 1;
        let mut img = sorted_class(cycle_class.iter().map(Angle::double).collect());
        while img != cycle_class {
            img = sorted_class(img.iter().map(Angle::double).collect());
            k += 1;
            if k > info.period {
                return Err(Error::combinatorial(
                    "landing-class cycle longer than the angle period",
                ));
            }
        }
        Ok(PcfSpec {
            name: format!("mis(l={preperiod}, k={k}, t={angle})"),
            mode: PcfMode::Misiurewicz { preperiod, period: k },
            characteristic_angle: angle,
        })
    }

    /// Named desk fixtures.
    pub fn named(name: &str) -> Result<PcfSpec> {
        let mut spec = match name {
            "basilica" => PcfSpec::superattracting("1/3".parse()?),
            "airplane" => PcfSpec::superattracting("3/7".parse()?),
            "rabbit" => PcfSpec::superattracting("1/7".parse()?),
            "chebyshev" => PcfSpec::misiurewicz("1/2".parse()?),
            // c = -1.54368...: P_c^3(0) is fixed; rays 5/12, 7/12 land at c
            "dendrite154" => PcfSpec::misiurewicz("5/12".parse()?),
            other => Err(Error::validation(format!(
                "unknown pcf fixture `{other}` (known: basilica, airplane, rabbit, chebyshev, dendrite154)"
            ))),
        }?;
        spec.name = name.to_string();
        Ok(spec)
    }

    /// The full class of rays landing at the critical value.
    pub fn value_class(&self) -> Result<Class> {
        match self.mode {
            PcfMode::Superattracting { .. } => {
                let partner = characteristic_partner(&self.characteristic_angle)?;
                Ok(sorted_class(vec![
                    self.characteristic_angle.clone(),
                    partner,
                ]))
            }
            PcfMode::Misiurewicz { .. } => {
                let prelim =
                    LaminationSet::misiurewicz(std::slice::from_ref(&self.characteristic_angle))?;
                prelim.class_of(&self.characteristic_angle)
            }
        }
    }

    /// The lamination modelling the landing relation of this polynomial.
    pub fn lamination(&self) -> Result<LaminationSet> {
        let value = self.value_class()?;
        match self.mode {
            PcfMode::Superattracting { .. } => {
                LaminationSet::superattracting(&value[0], &value[1])
            }
            PcfMode::Misiurewicz { .. } => LaminationSet::misiurewicz(&value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Critical,
    Postcritical,
    Branch,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeVertex {
    pub id: usize,
    pub kind: VertexKind,
    pub external_angles: Vec<Angle>,
    pub nu: usize,
}

/// A root point of a bounded Fatou component: the landing class of the
/// boundary leaf facing a tree neighbour.
#[derive(Clone, Debug, Serialize)]
pub struct RootPoint {
    pub id: usize,
    pub pair: (Angle, Angle),
    pub class: Class,
    pub angle_period: usize,
    /// True when the component gap lies inside the 0-free arc of the pair.
    pub gap_inside: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HubbardTree {
    pub spec_name: String,
    pub mode: PcfMode,
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<(usize, usize)>,
    /// dynamics[v] = image vertex of v.
    pub dynamics: Vec<usize>,
    /// Superattracting only: per-vertex root points ordered by smallest angle.
    pub roots: Vec<Vec<RootPoint>>,
}

impl HubbardTree {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Root points with their two external angles (superattracting mode).
    pub fn root_angles(&self, vertex: usize) -> Result<Vec<(usize, (Angle, Angle))>> {
        Ok(self
            .root_points(vertex)?
            .iter()
            .map(|r| (r.id, r.pair.clone()))
            .collect())
    }

    /// Full root records of a cycle vertex (superattracting mode).
    pub fn root_points(&self, vertex: usize) -> Result<&[RootPoint]> {
        if !matches!(self.mode, PcfMode::Superattracting { .. }) {
            return Err(Error::validation(
                "root points apply to superattracting trees; use misiurewicz_angles",
            ));
        }
        self.roots
            .get(vertex)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::validation(format!("no vertex {vertex}")))
    }

    /// Angles landing at a Misiurewicz tree vertex, smallest (canonical) first.
    pub fn misiurewicz_angles(&self, vertex: usize) -> Result<Vec<Angle>> {
        if !matches!(self.mode, PcfMode::Misiurewicz { .. }) {
            return Err(Error::validation(
                "misiurewicz_angles applies to dendrite trees; use root_angles",
            ));
        }
        let v = self
            .vertices
            .get(vertex)
            .ok_or_else(|| Error::validation(format!("no vertex {vertex}")))?;
        Ok(v.external_angles.clone())
    }
}

struct VertexSeed {
    kind: VertexKind,
    /// Landing class for Julia vertices, cycle root leaf for Fatou vertices.
    class: Class,
    /// Fatou gap marker: the root leaf and which side the gap is on.
    gap: Option<(Leaf, bool)>, // (root leaf, inner side?)
}

/// Build the abstract Hubbard tree of a PCF quadratic from its lamination.
pub fn build_hubbard_tree(spec: &PcfSpec) -> Result<HubbardTree> {
    let mut lam = spec.lamination()?;
    let depth = match spec.mode {
        PcfMode::Superattracting { period } => period + 2,
        PcfMode::Misiurewicz { preperiod, period } => preperiod + period + 2,
    };
    lam.pullback(depth)?;

    let mut seeds: Vec<VertexSeed> = Vec::new();
    match spec.mode {
        PcfMode::Superattracting { period } => {
            let value = spec.value_class()?;
            let (mut x, mut y) = (value[0].clone(), value[1].clone());
            for i in 0..period {
                let leaf = Leaf::new(x.clone(), y.clone())?;
                let inner = x < y;
                seeds.push(VertexSeed {
                    kind: if i + 1 == period {
                        VertexKind::Critical
                    } else {
                        VertexKind::Postcritical
                    },
                    class: lam.class_of(&x)?,
                    gap: Some((leaf, inner)),
                });
                x = x.double();
                y = y.double();
            }
        }
        PcfMode::Misiurewicz { preperiod, period } => {
            let mut x = spec.characteristic_angle.clone();
            for _ in 0..preperiod + period {
                seeds.push(VertexSeed {
                    kind: VertexKind::Postcritical,
                    class: lam.class_of(&x)?,
                    gap: None,
                });
                x = x.double();
            }
        }
    }

    // Iterate: position vertices, build betweenness graph, insert branch
    // vertices at unmarked medians, close branch orbits, until stable.
    let mut guard = 0;
    loop {
        guard += 1;
        if guard > 16 {
            return Err(Error::combinatorial(
                "Hubbard tree construction did not stabilize",
            ));
        }
        let region_tree = RegionTree::build(&lam.leaves())?;
        let positions: Vec<Node> = seeds
            .iter()
            .map(|s| position_of(&region_tree, s))
            .collect::<Result<_>>()?;
        for (i, pi) in positions.iter().enumerate() {
            for (j, pj) in positions.iter().enumerate().skip(i + 1) {
                if pi == pj {
                    return Err(Error::combinatorial(format!(
                        "tree vertices {i} and {j} collapse to the same position"
                    )));
                }
            }
        }
        let n = seeds.len();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let blocked = (0..n).any(|k| {
                    k != i
                        && k != j
                        && region_tree.strictly_between(positions[k], positions[i], positions[j])
                });
                if !blocked {
                    edges.push((i, j));
                }
            }
        }
        if edges.len() == n - 1 {
            return finish_tree(spec, &lam, &region_tree, seeds, positions, edges);
        }
        // too many adjacencies: find a triangle and insert its median branch
        let has_edge = |x: usize, y: usize| edges.contains(&(x.min(y), x.max(y)));
        let mut inserted = false;
        'outer: for i in 0..n {
            for j in (i + 1)..n {
                if !has_edge(i, j) {
                    continue;
                }
                for k in (j + 1)..n {
                    if !has_edge(j, k) || !has_edge(i, k) {
                        continue;
                    }
                    let med = region_tree.median(positions[i], positions[j], positions[k]);
                    if positions.contains(&med) {
                        continue;
                    }
                    let class = branch_class_at(&lam, &region_tree, med)?;
                    seeds.push(VertexSeed {
                        kind: VertexKind::Branch,
                        class,
                        gap: None,
                    });
                    inserted = true;
                    break 'outer;
                }
            }
        }
        if !inserted {
            return Err(Error::combinatorial(
                "betweenness graph is not a tree and no branch median was found",
            ));
        }
        // close the forward orbit of branch classes
        loop {
            let mut added = false;
            let existing: Vec<Class> = seeds.iter().map(|s| s.class.clone()).collect();
            for s in seeds.iter() {
                if s.kind != VertexKind::Branch {
                    continue;
                }
                let img = sorted_class(s.class.iter().map(Angle::double).collect());
                if img.len() >= 2 && !existing.contains(&img) {
                    seeds.push(VertexSeed {
                        kind: VertexKind::Branch,
                        class: img,
                        gap: None,
                    });
                    added = true;
                    break;
                }
            }
            if !added {
                break;
            }
        }
    }
}

fn position_of(rt: &RegionTree, seed: &VertexSeed) -> Result<Node> {
    if let Some((leaf, inner)) = &seed.gap {
        let chord = rt.chord_of_leaf(leaf).ok_or_else(|| {
            Error::combinatorial(format!("root leaf {leaf:?} not materialized"))
        })?;
        return Ok(if *inner {
            rt.inner_region(chord)
        } else {
            rt.outer_region(chord)
        });
    }
    match seed.class.len() {
        0 => Err(Error::combinatorial("empty vertex class")),
        1 => Ok(rt.deepest_region_containing(&seed.class[0])),
        2 => {
            let leaf = Leaf::new(seed.class[0].clone(), seed.class[1].clone())?;
            let chord = rt.chord_of_leaf(&leaf).ok_or_else(|| {
                Error::combinatorial(format!("vertex leaf {leaf:?} not materialized"))
            })?;
            Ok(Node::Chord(chord))
        }
        n => {
            // polygon face: inner region of the wrap chord
            let wrap = Leaf::new(seed.class[0].clone(), seed.class[n - 1].clone())?;
            let chord = rt.chord_of_leaf(&wrap).ok_or_else(|| {
                Error::combinatorial(format!("polygon chord {wrap:?} not materialized"))
            })?;
            Ok(rt.inner_region(chord))
        }
    }
}

fn branch_class_at(lam: &LaminationSet, rt: &RegionTree, med: Node) -> Result<Class> {
    let chords = rt.boundary_chords(med);
    if chords.is_empty() {
        return Err(Error::combinatorial("median region has no boundary"));
    }
    let sample = rt.leaf_of_chord(chords[0]);
    let class = lam.class_of(sample.a())?;
    for &c in &chords {
        let l = rt.leaf_of_chord(c);
        if class.binary_search(l.a()).is_err() || class.binary_search(l.b()).is_err() {
            return Err(Error::combinatorial(
                "median region of a vertex triple is not a single landing class; unsupported tree topology",
            ));
        }
    }
    Ok(class)
}

fn finish_tree(
    spec: &PcfSpec,
    lam: &LaminationSet,
    rt: &RegionTree,
    seeds: Vec<VertexSeed>,
    positions: Vec<Node>,
    edges: Vec<(usize, usize)>,
) -> Result<HubbardTree> {
    let n = seeds.len();
    // connectivity check
    {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            for &(a, b) in &edges {
                if a == v && !seen[b] {
                    stack.push(b);
                }
                if b == v && !seen[a] {
                    stack.push(a);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::combinatorial("Hubbard tree graph is disconnected"));
        }
    }
    let degree = |v: usize| {
        edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    };

    // dynamics: the first vertices form the marked orbit chain; branch
    // vertices map by landing class
    let mut dynamics = vec![usize::MAX; n];
    let chain = match spec.mode {
        PcfMode::Superattracting { period } => {
            for i in 0..period {
                dynamics[i] = (i + 1) % period;
            }
            period
        }
        PcfMode::Misiurewicz { preperiod, period } => {
            let m = preperiod + period;
            for i in 0..m {
                dynamics[i] = if i + 1 < m { i + 1 } else { preperiod };
            }
            m
        }
    };
    for (i, s) in seeds.iter().enumerate().skip(chain) {
        let img = sorted_class(s.class.iter().map(Angle::double).collect());
        let target = seeds
            .iter()
            .position(|t| t.gap.is_none() && t.class == img);
        match target {
            Some(t) => dynamics[i] = t,
            None => {
                return Err(Error::combinatorial(format!(
                    "vertex {i} has no image vertex (class {img:?})"
                )))
            }
        }
    }

    // superattracting: root points per vertex, from the boundary leaf of the
    // gap facing each neighbour
    let mut roots: Vec<Vec<RootPoint>> = vec![Vec::new(); n];
    if matches!(spec.mode, PcfMode::Superattracting { .. }) {
        for (v, s) in seeds.iter().enumerate() {
            if s.gap.is_none() {
                continue;
            }
            let mut leaves: Vec<Leaf> = Vec::new();
            for w in 0..n {
                if w == v
                    || !edges.contains(&(v.min(w), v.max(w)))
                {
                    continue;
                }
                let path = rt.path(positions[v], positions[w]);
                let first_chord = path.iter().find_map(|node| match node {
                    Node::Chord(c) => Some(*c),
                    _ => None,
                });
                if let Some(c) = first_chord {
                    let leaf = rt.leaf_of_chord(c);
                    if !leaves.contains(&leaf) {
                        leaves.push(leaf);
                    }
                }
            }
            leaves.sort_by(|x, y| x.a().cmp(y.a()));
            for (rid, leaf) in leaves.iter().enumerate() {
                let class = lam.class_of(leaf.a())?;
                // cycle roots are periodic; co-roots of the critical gap are
                // strictly preperiodic rational angles
                let period = leaf.a().orbit_info().period;
                let chord = rt.chord_of_leaf(leaf).ok_or_else(|| {
                    Error::combinatorial(format!("root leaf {leaf:?} lost its chord"))
                })?;
                let gap_inside = positions[v] == rt.inner_region(chord);
                roots[v].push(RootPoint {
                    id: rid,
                    pair: (leaf.a().clone(), leaf.b().clone()),
                    class,
                    angle_period: period,
                    gap_inside,
                });
            }
        }
        // nu-pattern along the cycle x_1..x_p: ones then twos, with r >= 2
        if let PcfMode::Superattracting { period } = spec.mode {
            let nus: Vec<usize> = (0..period).map(degree).collect();
            let r = nus.iter().take_while(|&&d| d == 1).count();
            let pattern_ok = r >= 2 && nus[r..].iter().all(|&d| d == 2);
            if !pattern_ok {
                return Err(Error::combinatorial(format!(
                    "cycle branch counts {nus:?} violate the nu-pattern"
                )));
            }
        }
    }

    let vertices = seeds
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let external_angles = if s.gap.is_some() {
                sorted_class(cycle_root_angles(&roots[i]))
            } else {
                s.class.clone()
            };
            TreeVertex {
                id: i,
                kind: s.kind,
                external_angles,
                nu: degree(i),
            }
        })
        .collect();

    Ok(HubbardTree {
        spec_name: spec.name.clone(),
        mode: spec.mode.clone(),
        vertices,
        edges,
        dynamics,
        roots,
    })
}

fn cycle_root_angles(roots: &[RootPoint]) -> Vec<Angle> {
    roots
        .iter()
        .flat_map(|r| [r.pair.0.clone(), r.pair.1.clone()])
        .collect()
}

/// All hull leaves of a class (exposed for the T-graph builder).
pub fn class_leaves(class: &Class) -> Vec<Leaf> {
    hull_leaves(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn kneading_examples() {
        let k = kneading(&a("1/3")).unwrap();
        assert_eq!(k.to_string_compact(), "A*");
        assert_eq!((k.preperiod, k.period), (0, 2));

        let k = kneading(&a("1/2")).unwrap();
        assert_eq!(k.to_string_compact(), "AB");
        assert_eq!((k.preperiod, k.period), (1, 1));

        let k = kneading(&a("1/6")).unwrap();
        assert_eq!((k.preperiod, k.period), (1, 2));
        assert_eq!(k.to_string_compact(), "AAB");

        assert!(kneading(&Angle::zero()).is_err());
    }

    #[test]
    fn lavaurs_partners() {
        assert_eq!(characteristic_partner(&a("1/3")).unwrap(), a("2/3"));
        assert_eq!(characteristic_partner(&a("1/7")).unwrap(), a("2/7"));
        assert_eq!(characteristic_partner(&a("3/7")).unwrap(), a("4/7"));
        assert_eq!(characteristic_partner(&a("5/7")).unwrap(), a("6/7"));
        assert_eq!(characteristic_partner(&a("1/15")).unwrap(), a("2/15"));
        assert_eq!(characteristic_partner(&a("3/15")).unwrap(), a("4/15"));
        // the 2/5-3/5 pair bounds the wake of the basilica's period-doubling
        assert_eq!(characteristic_partner(&a("2/5")).unwrap(), a("3/5"));
        assert_eq!(characteristic_partner(&a("7/15")).unwrap(), a("8/15"));
    }

    #[test]
    fn basilica_tree() {
        let spec = PcfSpec::named("basilica").unwrap();
        let tree = build_hubbard_tree(&spec).unwrap();
        assert_eq!(tree.vertices.len(), 2);
        assert_eq!(tree.edges, vec![(0, 1)]);
        assert_eq!(tree.dynamics, vec![1, 0]);
        assert!(tree.vertices.iter().all(|v| v.nu == 1));
        // both vertices share the fixed alpha root {1/3, 2/3}
        let r0 = tree.root_angles(0).unwrap();
        let r1 = tree.root_angles(1).unwrap();
        assert_eq!(r0.len(), 1);
        assert_eq!(r1.len(), 1);
        assert_eq!(r0[0].1, (a("1/3"), a("2/3")));
        assert_eq!(r1[0].1, (a("1/3"), a("2/3")));
    }

    #[test]
    fn airplane_tree() {
        let spec = PcfSpec::named("airplane").unwrap();
        let tree = build_hubbard_tree(&spec).unwrap();
        assert_eq!(tree.vertices.len(), 3);
        // path x1 - x0 - x2: vertex 2 is the critical one (x_p = x_0)
        let nus: Vec<usize> = tree.vertices.iter().map(|v| v.nu).collect();
        assert_eq!(nus, vec![1, 1, 2]);
        assert_eq!(tree.vertices[2].kind, VertexKind::Critical);
        let r = tree.root_angles(2).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].1, (a("3/14"), a("11/14")));
        assert_eq!(r[1].1, (a("2/7"), a("5/7")));
        let r1 = tree.root_angles(0).unwrap();
        assert_eq!(r1.len(), 1);
        assert_eq!(r1[0].1, (a("3/7"), a("4/7")));
    }

    #[test]
    fn rabbit_tree_has_branch_point() {
        let spec = PcfSpec::named("rabbit").unwrap();
        let tree = build_hubbard_tree(&spec).unwrap();
        assert_eq!(tree.vertices.len(), 4);
        let branch = tree
            .vertices
            .iter()
            .find(|v| v.kind == VertexKind::Branch)
            .expect("alpha branch vertex");
        assert_eq!(branch.nu, 3);
        assert_eq!(
            branch.external_angles,
            vec![a("1/7"), a("2/7"), a("4/7")]
        );
        // the three cycle vertices all have nu = 1 and attach to the branch
        let cycle_nus: Vec<usize> = tree.vertices.iter().filter(|v| v.kind != VertexKind::Branch).map(|v| v.nu).collect();
        assert_eq!(cycle_nus, vec![1, 1, 1]);
        // branch point is fixed
        assert_eq!(tree.dynamics[branch.id], branch.id);
    }

    #[test]
    fn chebyshev_tree() {
        let spec = PcfSpec::named("chebyshev").unwrap();
        assert_eq!(
            spec.mode,
            PcfMode::Misiurewicz { preperiod: 1, period: 1 }
        );
        let tree = build_hubbard_tree(&spec).unwrap();
        assert_eq!(tree.vertices.len(), 2);
        assert_eq!(tree.edges, vec![(0, 1)]);
        // x2 = beta is fixed with the single angle 0
        assert_eq!(tree.dynamics, vec![1, 1]);
        assert_eq!(tree.misiurewicz_angles(1).unwrap(), vec![Angle::zero()]);
        assert_eq!(tree.misiurewicz_angles(0).unwrap(), vec![a("1/2")]);
    }

    #[test]
    fn dendrite154_tree() {
        let spec = PcfSpec::named("dendrite154").unwrap();
        assert_eq!(
            spec.mode,
            PcfMode::Misiurewicz { preperiod: 2, period: 1 }
        );
        let tree = build_hubbard_tree(&spec).unwrap();
        assert_eq!(tree.vertices.len(), 3);
        // path x1 - x3 - x2 with the fixed point interior
        let nus: Vec<usize> = tree.vertices.iter().map(|v| v.nu).collect();
        assert_eq!(nus, vec![1, 1, 2]);
        assert_eq!(tree.dynamics, vec![1, 2, 2]);
        assert_eq!(
            tree.misiurewicz_angles(0).unwrap(),
            vec![a("5/12"), a("7/12")]
        );
        assert_eq!(
            tree.misiurewicz_angles(2).unwrap(),
            vec![a("1/3"), a("2/3")]
        );
    }
}
