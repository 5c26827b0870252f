//! Invariant-lamination engine for degree-2 dynamics.
//!
//! A lamination here is a forward-invariant family of *landing classes*:
//! finite sets of angles whose external rays land at a common point. Classes
//! are stored with their convex-hull chords as leaves. Pullback distributes
//! the halves of a class between the two sectors cut out by the critical
//! diameter; the half-open boundary convention is fixed so that the pullback
//! of the characteristic leaf reproduces the known root/co-root structure.
//!
//! Co-landing queries never enumerate the exponential pullback tree. An
//! angle whose orbit meets a known class is resolved by walking the orbit
//! backwards through sector splits; any other angle is resolved by solving
//! for all angles with the same itinerary relative to the partition cut out
//! by the critical class.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::angle::{chords_cross, cyclic_between, Angle, OrbitInfo};
use crate::error::{Error, Result};

/// An unordered pair of distinct nonzero angles, stored with a < b.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Leaf {
    a: Angle,
    b: Angle,
}

impl Leaf {
    pub fn new(x: Angle, y: Angle) -> Result<Leaf> {
        if x == y {
            return Err(Error::combinatorial(format!("degenerate leaf {{{x}, {y}}}")));
        }
        if x.is_zero() || y.is_zero() {
            return Err(Error::combinatorial(
                "leaves with the fixed endpoint 0 are not allowed",
            ));
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        Ok(Leaf { a, b })
    }

    pub fn a(&self) -> &Angle {
        &self.a
    }

    pub fn b(&self) -> &Angle {
        &self.b
    }

    /// Image under doubling, or None if the chord collapses to a point.
    pub fn image(&self) -> Option<Leaf> {
        let (da, db) = (self.a.double(), self.b.double());
        if da == db {
            None
        } else {
            Some(Leaf::new(da, db).expect("image endpoints nonzero"))
        }
    }

    pub fn crosses(&self, other: &Leaf) -> bool {
        chords_cross(&self.a, &self.b, &other.a, &other.b)
    }

    pub fn contains_endpoint(&self, t: &Angle) -> bool {
        &self.a == t || &self.b == t
    }

    /// True iff both endpoints of `other` lie weakly on one side of `self`.
    pub fn separates(&self, x: &Angle, y: &Angle) -> bool {
        if self.contains_endpoint(x) || self.contains_endpoint(y) {
            return false;
        }
        cyclic_between(&self.a, &self.b, x) != cyclic_between(&self.a, &self.b, y)
    }
}

impl fmt::Debug for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl Serialize for Leaf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.a)?;
        seq.serialize_element(&self.b)?;
        seq.end()
    }
}

/// A landing class: the sorted angles of rays sharing a landing point.
pub type Class = Vec<Angle>;

pub fn sorted_class(mut angles: Vec<Angle>) -> Class {
    angles.sort();
    angles.dedup();
    angles
}

/// Convex-hull chords of a class (consecutive pairs plus the wrap chord).
pub fn hull_leaves(class: &Class) -> Vec<Leaf> {
    match class.len() {
        0 | 1 => Vec::new(),
        2 => vec![Leaf::new(class[0].clone(), class[1].clone()).unwrap()],
        n => (0..n)
            .map(|i| Leaf::new(class[i].clone(), class[(i + 1) % n].clone()).unwrap())
            .collect(),
    }
}

/// The two half-open sectors cut out by a critical diameter {lo, hi}.
///
/// S1 = (lo, hi] is the sector containing the characteristic angles, S2 the
/// complement. The boundary convention (hi in S1, lo in S2) makes the
/// pullback of a leaf through the anchor angle reproduce the dynamically
/// correct root pairing.
#[derive(Clone, Debug)]
pub struct SectorRule {
    lo: Angle,
    hi: Angle,
}

impl SectorRule {
    /// Diameter through the halves of `anchor`.
    pub fn from_anchor(anchor: &Angle) -> Result<SectorRule> {
        if anchor.is_zero() {
            return Err(Error::combinatorial("sector anchor must be nonzero"));
        }
        let (lo, hi) = anchor.halves();
        Ok(SectorRule { lo, hi })
    }

    pub fn diameter(&self) -> (Angle, Angle) {
        (self.lo.clone(), self.hi.clone())
    }

    /// True iff x is in S1 = (lo, hi].
    pub fn in_s1(&self, x: &Angle) -> bool {
        if x == &self.hi {
            return true;
        }
        if x == &self.lo {
            return false;
        }
        cyclic_between(&self.lo, &self.hi, x)
    }

    /// The halves of t: (half in S1, half in S2).
    pub fn split(&self, t: &Angle) -> (Angle, Angle) {
        let (h0, h1) = t.halves();
        if self.in_s1(&h0) {
            (h0, h1)
        } else {
            (h1, h0)
        }
    }
}

/// What the lamination models; fixes the special cases of the pullback.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LamKind {
    /// Characteristic leaf of a superattracting cycle.
    Superattracting,
    /// Critical-value class of a strictly preperiodic (dendrite) map.
    Misiurewicz,
    /// Truncated critical pair of the Siegel polynomial at 2^-bits resolution.
    Siegel { bits: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Collision {
    pub level: usize,
    pub class: Class,
}

/// A finite-depth invariant lamination plus exact landing-relation queries.
#[derive(Clone, Debug)]
pub struct LaminationSet {
    kind: LamKind,
    sector: SectorRule,
    /// levels[k] = classes first appearing at pullback level k.
    levels: Vec<Vec<Class>>,
    /// The class whose preimage is the full critical class.
    value_class: Class,
    /// All halves of the value class; co-lands at the critical point.
    critical_class: Class,
    collisions: Vec<Collision>,
    /// Cap on the orbit length a co-landing query may resolve through.
    depth_limit: Option<usize>,
}

impl LaminationSet {
    /// Generic seed-leaf entry point: a diameter seed co-lands at the
    /// critical point (dendrite model); any other seed is a characteristic
    /// (root) leaf of a superattracting cycle.
    pub fn from_seed_leaf(seed: &Leaf) -> Result<LaminationSet> {
        if *seed.b() == seed.a().antipode() {
            LaminationSet::misiurewicz(&[seed.a().double()])
        } else {
            LaminationSet::superattracting(seed.a(), seed.b())
        }
    }

    /// Lamination of a superattracting quadratic with characteristic pair
    /// {t, partner}.
    pub fn superattracting(t: &Angle, partner: &Angle) -> Result<LaminationSet> {
        let seed = Leaf::new(t.clone(), partner.clone())?;
        if !t.is_periodic() || !partner.is_periodic() {
            return Err(Error::validation(
                "characteristic angles must be periodic (odd denominator)",
            ));
        }
        let sector = SectorRule::from_anchor(seed.a())?;
        let value = sorted_class(vec![t.clone(), partner.clone()]);
        let cuts = sorted_class(
            value
                .iter()
                .flat_map(|x| {
                    let (h0, h1) = x.halves();
                    [h0, h1]
                })
                .collect(),
        );
        let lam = LaminationSet {
            kind: LamKind::Superattracting,
            sector,
            levels: vec![forward_classes(&value)],
            value_class: value,
            critical_class: cuts,
            collisions: Vec::new(),
            depth_limit: None,
        };
        lam.validate_unlinked()?;
        Ok(lam)
    }

    /// Lamination of a Misiurewicz quadratic from the class of rays landing
    /// at the critical value.
    pub fn misiurewicz(value_class: &[Angle]) -> Result<LaminationSet> {
        let value = sorted_class(value_class.to_vec());
        if value.is_empty() {
            return Err(Error::validation("empty critical-value class"));
        }
        if value.iter().any(Angle::is_zero) {
            return Err(Error::combinatorial(
                "critical value angle 0 is not allowed (degenerate seed)",
            ));
        }
        let sector = SectorRule::from_anchor(&value[0])?;
        let critical = sorted_class(
            value
                .iter()
                .flat_map(|x| {
                    let (h0, h1) = x.halves();
                    [h0, h1]
                })
                .collect(),
        );
        let mut level0 = vec![critical.clone()];
        level0.extend(forward_classes(&value));
        let lam = LaminationSet {
            kind: LamKind::Misiurewicz,
            sector,
            levels: vec![level0],
            value_class: value,
            critical_class: critical,
            collisions: Vec::new(),
            depth_limit: None,
        };
        lam.validate_unlinked()?;
        Ok(lam)
    }

    /// Siegel-side lamination seeded by the truncated critical angle pair.
    pub fn siegel(t_plus: &Angle, t_minus: &Angle, bits: u32) -> Result<LaminationSet> {
        let seed = sorted_class(vec![t_plus.clone(), t_minus.clone()]);
        if seed.len() != 2 || seed.iter().any(Angle::is_zero) {
            return Err(Error::combinatorial("degenerate Siegel critical pair"));
        }
        let sector = SectorRule {
            lo: seed[0].clone(),
            hi: seed[1].clone(),
        };
        let value = sorted_class(vec![seed[0].double()]);
        let lam = LaminationSet {
            kind: LamKind::Siegel { bits },
            sector,
            levels: vec![vec![seed.clone()]],
            value_class: value,
            critical_class: seed,
            collisions: Vec::new(),
            depth_limit: None,
        };
        lam.validate_unlinked()?;
        Ok(lam)
    }

    pub fn kind(&self) -> &LamKind {
        &self.kind
    }

    pub fn sector(&self) -> &SectorRule {
        &self.sector
    }

    pub fn set_depth_limit(&mut self, limit: Option<usize>) {
        self.depth_limit = limit;
    }

    /// Pullback depth materialized so far.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn seed_class(&self) -> &Class {
        &self.levels[0][0]
    }

    pub fn value_class(&self) -> &Class {
        &self.value_class
    }

    pub fn critical_class(&self) -> &Class {
        &self.critical_class
    }

    pub fn collisions(&self) -> &[Collision] {
        &self.collisions
    }

    pub fn classes(&self) -> impl Iterator<Item = &Class> {
        self.levels.iter().flatten()
    }

    pub fn classes_at_level(&self, k: usize) -> &[Class] {
        &self.levels[k]
    }

    /// All hull leaves of all materialized classes, sorted.
    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out: BTreeSet<Leaf> = BTreeSet::new();
        for class in self.classes() {
            out.extend(hull_leaves(class));
        }
        out.into_iter().collect()
    }

    fn known_class_of(&self, t: &Angle) -> Option<&Class> {
        self.classes().find(|c| c.binary_search(t).is_ok())
    }

    /// Preimage classes of `class`, in (S1, S2) order. When the critical
    /// point itself lies on the Julia set (dendrite and Siegel models), the
    /// critical-value class pulls back to the single critical class.
    pub fn preimage_classes(&self, class: &Class) -> Vec<Class> {
        if self.kind != LamKind::Superattracting && *class == self.value_class {
            return vec![self.critical_class.clone()];
        }
        let mut c1 = Vec::with_capacity(class.len());
        let mut c2 = Vec::with_capacity(class.len());
        for x in class {
            let (s1, s2) = self.sector.split(x);
            c1.push(s1);
            c2.push(s2);
        }
        vec![sorted_class(c1), sorted_class(c2)]
    }

    /// Materialize `levels` further pullback generations.
    pub fn pullback(&mut self, levels: usize) -> Result<()> {
        for _ in 0..levels {
            let top = self.levels.last().unwrap().clone();
            let mut fresh: Vec<Class> = Vec::new();
            let level = self.levels.len();
            for class in &top {
                for pre in self.preimage_classes(class) {
                    if pre.len() < 2 {
                        return Err(Error::combinatorial(
                            "pullback produced a degenerate class (invalid seed)",
                        ));
                    }
                    if self.classes().any(|c| *c == pre) || fresh.contains(&pre) {
                        self.collisions.push(Collision { level, class: pre });
                    } else {
                        fresh.push(pre);
                    }
                }
            }
            self.levels.push(fresh);
            self.validate_unlinked()?;
        }
        Ok(())
    }

    /// Unlinkedness and angle-disjointness across all materialized classes.
    pub fn validate_unlinked(&self) -> Result<()> {
        let classes: Vec<&Class> = self.classes().collect();
        for (i, ci) in classes.iter().enumerate() {
            for cj in classes.iter().skip(i + 1) {
                for x in ci.iter() {
                    if cj.binary_search(x).is_ok() {
                        return Err(Error::combinatorial(format!(
                            "classes {ci:?} and {cj:?} share the angle {x}"
                        )));
                    }
                }
                for li in hull_leaves(ci) {
                    for lj in hull_leaves(cj) {
                        if li.crosses(&lj) {
                            return Err(Error::combinatorial(format!(
                                "leaves {li:?} and {lj:?} cross (invalid seed)"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Partition cut points: the angles of the critical class.
    pub fn cuts(&self) -> &Class {
        &self.critical_class
    }

    /// Index of the open arc (cuts[i], cuts[i+1]) containing x; the last arc
    /// wraps through 0. Errors if x is a cut point.
    fn arc_index(&self, x: &Angle) -> Result<usize> {
        let cuts = self.cuts();
        match cuts.binary_search(x) {
            Ok(_) => Err(Error::combinatorial(format!(
                "angle {x} lies on a partition cut point"
            ))),
            Err(pos) => Ok(if pos == 0 { cuts.len() - 1 } else { pos - 1 }),
        }
    }

    /// The full landing class of `t` (including `t`).
    pub fn class_of(&self, t: &Angle) -> Result<Class> {
        if t.is_zero() {
            return Ok(vec![Angle::zero()]);
        }
        let info = t.orbit_info();
        if let Some(limit) = self.depth_limit {
            let required = info.preperiod + 1;
            if required > limit {
                return Err(Error::DepthInsufficient {
                    required,
                    available: limit,
                });
            }
        }
        // Path 1: the orbit meets a known class (or the fixed angle 0); walk
        // the class backwards. Singleton materialized classes carry no
        // pairing information and are left to the itinerary path.
        for (k, x) in info.orbit.iter().enumerate() {
            if x.is_zero() {
                return self.walk_back(vec![Angle::zero()], &info.orbit[..k]);
            }
            if let Some(class) = self.known_class_of(x) {
                if class.len() >= 2 {
                    return self.walk_back(class.clone(), &info.orbit[..k]);
                }
            }
        }
        // Path 2: itinerary resolution.
        match self.kind {
            LamKind::Siegel { .. } => Ok(vec![t.clone()]),
            _ => self.itinerary_class(t, &info),
        }
    }

    /// Co-landing partners of t (excluding t itself).
    pub fn colanding_partner(&self, t: &Angle) -> Result<Vec<Angle>> {
        Ok(self.class_of(t)?.into_iter().filter(|x| x != t).collect())
    }

    /// Pull the class at the end of `prefix` back along it.
    fn walk_back(&self, class_at_end: Class, prefix: &[Angle]) -> Result<Class> {
        let mut class = class_at_end;
        for x in prefix.iter().rev() {
            class = self
                .preimage_classes(&class)
                .into_iter()
                .find(|c| c.binary_search(x).is_ok())
                .ok_or_else(|| {
                    Error::combinatorial(format!(
                        "angle {x} missing from the preimage classes of its image class"
                    ))
                })?;
        }
        Ok(class)
    }

    /// Landing class via itinerary matching; t's orbit avoids all cuts.
    fn itinerary_class(&self, t: &Angle, info: &OrbitInfo) -> Result<Class> {
        let tail_symbols: Vec<usize> = info.orbit[info.preperiod..]
            .iter()
            .map(|x| self.arc_index(x))
            .collect::<Result<_>>()?;
        let tail_class = self.solve_periodic_itinerary(&tail_symbols)?;
        let mut class = tail_class;
        for x in info.orbit[..info.preperiod].iter().rev() {
            class = self
                .preimage_classes(&class)
                .into_iter()
                .find(|c| c.binary_search(x).is_ok())
                .ok_or_else(|| {
                    Error::combinatorial(format!(
                        "orbit angle {x} not found among preimage classes during lift"
                    ))
                })?;
        }
        if class.binary_search(t).is_err() {
            return Err(Error::combinatorial(format!(
                "itinerary resolution lost the queried angle {t}"
            )));
        }
        Ok(class)
    }

    /// All angles of exact period symbols.len() whose arc itinerary equals
    /// `symbols`, found by interval refinement over exact rationals.
    fn solve_periodic_itinerary(&self, symbols: &[usize]) -> Result<Class> {
        let period = symbols.len();
        let cuts = self.cuts();
        let n = cuts.len();
        let mut common = BigUint::one();
        for c in cuts {
            common = common.lcm(c.denom());
        }
        let common = BigInt::from(common);
        let scale = |a: &Angle| -> BigInt {
            let num = BigInt::from(a.numer().clone());
            let den = BigInt::from(a.denom().clone());
            num * &common / den
        };
        // arc for symbol s as (lo, hi) numerators over `common`, hi possibly
        // extended past `common` for the wrap arc
        let arc_bounds = |s: usize| -> (BigInt, BigInt) {
            let lo = scale(&cuts[s]);
            let hi = if s + 1 == n {
                scale(&cuts[0]) + &common
            } else {
                scale(&cuts[s + 1])
            };
            (lo, hi)
        };
        // feasible open intervals for x over denominator den = common * 2^k
        let (lo0, hi0) = arc_bounds(symbols[0]);
        let mut den = common.clone();
        let mut intervals: Vec<(BigInt, BigInt)> = split_mod(lo0, hi0, &den);
        for &sym in symbols.iter().skip(1) {
            den *= 2;
            let (alo, ahi) = arc_bounds(sym);
            let mut next: Vec<(BigInt, BigInt)> = Vec::new();
            for (l, h) in &intervals {
                let (l2, h2): (BigInt, BigInt) = (l * 2, h * 2);
                // translates ((alo + j*common), (ahi + j*common)) intersected
                // with (l2, h2); also test the wrap copy shifted by -den
                let j_min: BigInt = {
                    let d: BigInt = &l2 - &ahi;
                    if d.is_positive() {
                        d / &common
                    } else {
                        BigInt::from(-2)
                    }
                };
                let mut j = j_min;
                let mut guard = 0;
                loop {
                    let t_lo = &alo + &common * &j;
                    if t_lo >= h2 {
                        break;
                    }
                    let t_hi = &ahi + &common * &j;
                    for shift in [BigInt::zero(), -den.clone()] {
                        let lo_new = (&t_lo + &shift).max(l2.clone());
                        let hi_new = (&t_hi + &shift).min(h2.clone());
                        if lo_new < hi_new {
                            next.push((lo_new, hi_new));
                        }
                    }
                    j += 1;
                    guard += 1;
                    if guard > 64 {
                        return Err(Error::combinatorial(
                            "itinerary interval refinement did not converge",
                        ));
                    }
                }
            }
            intervals = next;
            if intervals.is_empty() {
                return Err(Error::combinatorial(
                    "itinerary constraint system became infeasible",
                ));
            }
            if intervals.len() > 512 {
                return Err(Error::combinatorial(
                    "itinerary constraint system exploded; unsupported configuration",
                ));
            }
        }
        // periodic closure: x = K / (2^period - 1)
        let modulus = BigInt::from((BigUint::one() << period) - BigUint::one());
        let mut found: BTreeSet<Angle> = BTreeSet::new();
        for (l, h) in &intervals {
            let k_lo = (l * &modulus).div_floor(&den);
            let k_hi = (h * &modulus).div_floor(&den) + 1;
            let mut k = k_lo;
            while k <= k_hi {
                if !k.is_negative() && k < modulus {
                    let cand = Angle::new(
                        k.to_biguint().unwrap(),
                        modulus.to_biguint().unwrap(),
                    );
                    if self.verify_periodic_candidate(&cand, symbols) {
                        found.insert(cand);
                    }
                }
                k += 1;
            }
        }
        if found.is_empty() {
            return Err(Error::combinatorial(
                "no angle satisfies its own itinerary; inconsistent partition",
            ));
        }
        Ok(found.into_iter().collect())
    }

    fn verify_periodic_candidate(&self, cand: &Angle, symbols: &[usize]) -> bool {
        if cand.is_zero() {
            return false;
        }
        let info = cand.orbit_info();
        if info.preperiod != 0 || info.period != symbols.len() {
            return false;
        }
        info.orbit
            .iter()
            .zip(symbols)
            .all(|(x, &sym)| matches!(self.arc_index(x), Ok(i) if i == sym))
    }
}

/// Split the interval (lo, hi) (hi possibly past den) into pieces within [0, den).
fn split_mod(lo: BigInt, hi: BigInt, den: &BigInt) -> Vec<(BigInt, BigInt)> {
    if hi <= *den {
        vec![(lo, hi)]
    } else {
        vec![(lo, den.clone()), (BigInt::zero(), hi - den)]
    }
}

/// Forward orbit of the seed class, with classes sharing an angle merged
/// (satellite combinatorics revisit the same landing point).
fn forward_classes(seed: &[Angle]) -> Vec<Class> {
    let mut out: Vec<Class> = vec![sorted_class(seed.to_vec())];
    loop {
        let mut changed = false;
        let mut fresh: Vec<Class> = Vec::new();
        for c in &out {
            let img = sorted_class(c.iter().map(Angle::double).collect());
            if img.len() >= 2 && !out.contains(&img) && !fresh.contains(&img) {
                fresh.push(img);
            }
        }
        if !fresh.is_empty() {
            changed = true;
            out.extend(fresh);
        }
        'merge: loop {
            for i in 0..out.len() {
                for j in (i + 1)..out.len() {
                    if out[i].iter().any(|x| out[j].binary_search(x).is_ok()) {
                        let union: Vec<Angle> =
                            out[i].iter().chain(out[j].iter()).cloned().collect();
                        out.remove(j);
                        out[i] = sorted_class(union);
                        changed = true;
                        continue 'merge;
                    }
                }
            }
            break;
        }
        if !changed {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn class(v: &[&str]) -> Class {
        sorted_class(v.iter().map(|s| a(s)).collect())
    }

    #[test]
    fn basilica_level1_pullback() {
        let mut lam = LaminationSet::superattracting(&a("1/3"), &a("2/3")).unwrap();
        lam.pullback(1).unwrap();
        // seed reproduces itself (collision) plus the co-root {1/6, 5/6}
        assert_eq!(lam.classes_at_level(1), &[class(&["1/6", "5/6"])]);
        assert_eq!(lam.collisions().len(), 1);
    }

    #[test]
    fn basilica_level2_pullback() {
        let mut lam = LaminationSet::superattracting(&a("1/3"), &a("2/3")).unwrap();
        lam.pullback(2).unwrap();
        let lvl2 = lam.classes_at_level(2);
        assert!(lvl2.contains(&class(&["5/12", "7/12"])));
        assert!(lvl2.contains(&class(&["1/12", "11/12"])));
    }

    #[test]
    fn airplane_root_structure() {
        let mut lam = LaminationSet::superattracting(&a("3/7"), &a("4/7")).unwrap();
        lam.pullback(1).unwrap();
        // the cycle root {2/7, 5/7} is already a forward class; the fresh
        // level-1 class is the co-root of the critical gap
        let all: Vec<Class> = lam.classes().cloned().collect();
        assert!(all.contains(&class(&["2/7", "5/7"])));
        assert!(lam.classes_at_level(1).contains(&class(&["3/14", "11/14"])));
        // each cycle root leaf is itself a preimage of the next one
        assert_eq!(lam.collisions().len(), 3);
    }

    #[test]
    fn rabbit_alpha_triangle_via_closure() {
        let lam = LaminationSet::superattracting(&a("1/7"), &a("2/7")).unwrap();
        assert_eq!(lam.class_of(&a("1/7")).unwrap(), class(&["1/7", "2/7", "4/7"]));
        assert_eq!(lam.class_of(&a("4/7")).unwrap(), class(&["1/7", "2/7", "4/7"]));
    }

    #[test]
    fn chebyshev_partner_is_conjugate() {
        let lam = LaminationSet::misiurewicz(&[a("1/2")]).unwrap();
        for t in ["1/3", "1/7", "3/7", "5/31", "11/24"] {
            let t = a(t);
            let partners = lam.colanding_partner(&t).unwrap();
            assert_eq!(partners, vec![t.conjugate()], "partner of {t}");
        }
        assert!(lam.colanding_partner(&Angle::zero()).unwrap().is_empty());
        assert!(lam.colanding_partner(&a("1/2")).unwrap().is_empty());
    }

    #[test]
    fn basilica_partners() {
        let lam = LaminationSet::superattracting(&a("1/3"), &a("2/3")).unwrap();
        assert_eq!(lam.colanding_partner(&a("1/3")).unwrap(), vec![a("2/3")]);
        assert_eq!(lam.colanding_partner(&a("1/6")).unwrap(), vec![a("5/6")]);
        assert_eq!(lam.colanding_partner(&a("5/12")).unwrap(), vec![a("7/12")]);
        // period-4 angles land alone on the basilica
        assert!(lam.colanding_partner(&a("1/5")).unwrap().is_empty());
        assert!(lam.colanding_partner(&a("2/5")).unwrap().is_empty());
    }

    #[test]
    fn airplane_extra_periodic_leaves_found_by_itinerary() {
        let lam = LaminationSet::superattracting(&a("3/7"), &a("4/7")).unwrap();
        assert_eq!(lam.colanding_partner(&a("1/3")).unwrap(), vec![a("2/3")]);
        // the airplane has a real period-2 repelling cycle
        assert_eq!(lam.colanding_partner(&a("1/5")).unwrap(), vec![a("4/5")]);
        assert_eq!(lam.colanding_partner(&a("2/5")).unwrap(), vec![a("3/5")]);
    }

    #[test]
    fn misiurewicz_fixture_classes() {
        // c = -1.54368...: critical value class {5/12, 7/12}
        let lam = LaminationSet::misiurewicz(&[a("5/12"), a("7/12")]).unwrap();
        assert_eq!(lam.class_of(&a("1/6")).unwrap(), class(&["1/6", "5/6"]));
        assert_eq!(lam.class_of(&a("1/3")).unwrap(), class(&["1/3", "2/3"]));
        assert_eq!(
            lam.class_of(&a("5/24")).unwrap(),
            class(&["5/24", "7/24", "17/24", "19/24"])
        );
    }

    #[test]
    fn siegel_rational_model_partners() {
        // rotation number 1/3 model: critical pair {1/7, 4/7}
        let lam = LaminationSet::siegel(&a("1/7"), &a("4/7"), 3).unwrap();
        assert_eq!(lam.colanding_partner(&a("1/7")).unwrap(), vec![a("4/7")]);
        assert!(lam.colanding_partner(&a("1/5")).unwrap().is_empty());
    }

    #[test]
    fn pullback_counts_and_unlinkedness() {
        // a genuine diameter pair at 16-bit resolution (golden-mean prefix)
        let t_plus = a("25169/65536"); // 0.0110001001001...b truncation of the golden digits
        let t_minus = t_plus.antipode();
        let mut lam = LaminationSet::siegel(&t_plus, &t_minus, 16).unwrap();
        lam.pullback(4).unwrap();
        for k in 0..=4usize {
            assert_eq!(lam.classes_at_level(k).len(), 1 << k, "level {k}");
        }
        let leaves = lam.leaves();
        for (i, li) in leaves.iter().enumerate() {
            for lj in leaves.iter().skip(i + 1) {
                assert!(!li.crosses(lj), "{li:?} x {lj:?}");
            }
        }
    }

    #[test]
    fn degenerate_seeds_rejected() {
        assert!(Leaf::new(Angle::zero(), a("1/2")).is_err());
        assert!(Leaf::new(a("1/3"), a("1/3")).is_err());
        assert!(LaminationSet::misiurewicz(&[Angle::zero()]).is_err());
    }

    #[test]
    fn depth_limit_raises_depth_insufficient() {
        let mut lam = LaminationSet::superattracting(&a("1/3"), &a("2/3")).unwrap();
        lam.set_depth_limit(Some(1));
        // 1/24 has preperiod 3: requires depth 4
        let err = lam.colanding_partner(&a("1/24")).unwrap_err();
        assert!(matches!(err, Error::DepthInsufficient { .. }));
    }

    #[test]
    fn forward_invariance_of_materialized_classes() {
        let mut lam = LaminationSet::superattracting(&a("3/7"), &a("4/7")).unwrap();
        lam.pullback(3).unwrap();
        let all: Vec<Class> = lam.classes().cloned().collect();
        for class in &all {
            let img = sorted_class(class.iter().map(Angle::double).collect());
            if img.len() >= 2 {
                assert!(all.contains(&img), "image {img:?} of {class:?} missing");
            }
        }
    }

    #[test]
    fn class_query_consistent_with_materialized_levels() {
        let mut lam = LaminationSet::misiurewicz(&[a("5/12"), a("7/12")]).unwrap();
        lam.pullback(3).unwrap();
        for class in lam.classes() {
            for x in class {
                assert_eq!(&lam.class_of(x).unwrap(), class, "query at {x}");
            }
        }
    }
}
