//! Exact arithmetic on angles in R/Z and the doubling map m2(t) = 2t mod 1.
//!
//! Angles are stored as reduced fractions with arbitrary-precision integers;
//! every combinatorial module in the crate works with these, never with
//! floating approximations. The angle 0 is represented as 0/1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An angle in R/Z as an exact reduced fraction num/den with 0 <= num < den.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

impl Angle {
    /// Reduce `num/den` mod 1. Panics if `den` is zero.
    pub fn new<N: Into<BigUint>, D: Into<BigUint>>(num: N, den: D) -> Self {
        let num = num.into();
        let den = den.into();
        assert!(!den.is_zero(), "angle denominator must be positive");
        let num = num % &den;
        let g = num.gcd(&den);
        Angle {
            num: &num / &g,
            den: &den / &g,
        }
    }

    pub fn zero() -> Self {
        Angle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    /// 2t mod 1.
    pub fn double(&self) -> Angle {
        Angle::new(&self.num * 2u32, self.den.clone())
    }

    /// 2^k t mod 1.
    pub fn double_n(&self, k: usize) -> Angle {
        Angle::new(&self.num << k, self.den.clone())
    }

    /// The two preimages under doubling: (t/2, (t+1)/2), in that order.
    pub fn halves(&self) -> (Angle, Angle) {
        let d2 = &self.den * 2u32;
        (
            Angle::new(self.num.clone(), d2.clone()),
            Angle::new(&self.num + &self.den, d2),
        )
    }

    /// 1 - t mod 1; the involution identifying the two glued spheres.
    pub fn conjugate(&self) -> Angle {
        if self.num.is_zero() {
            Angle::zero()
        } else {
            Angle {
                num: &self.den - &self.num,
                den: self.den.clone(),
            }
        }
    }

    /// True iff t is periodic under doubling (odd denominator).
    pub fn is_periodic(&self) -> bool {
        self.den.is_odd()
    }

    /// The dyadic angle 0.b0 b1 b2 ... (binary), reduced.
    pub fn from_bits(bits: &[bool]) -> Angle {
        let mut num = BigUint::zero();
        for &b in bits {
            num <<= 1;
            if b {
                num += 1u32;
            }
        }
        Angle::new(num, BigUint::one() << bits.len())
    }

    /// t + 1/2 mod 1.
    pub fn antipode(&self) -> Angle {
        Angle::new(&self.num * 2u32 + &self.den, &self.den * 2u32)
    }

    pub fn to_f64(&self) -> f64 {
        // lossy; used only by the numeric lane
        let scaled: BigUint = (&self.num << 64u32) / &self.den;
        scaled.to_f64().unwrap_or(0.0) / 2f64.powi(64)
    }

    /// Orbit of t under doubling until the first repetition.
    pub fn orbit_info(&self) -> OrbitInfo {
        let mut seen: HashMap<Angle, usize> = HashMap::new();
        let mut orbit = Vec::new();
        let mut cur = self.clone();
        loop {
            if let Some(&idx) = seen.get(&cur) {
                let preperiod = idx;
                let period = orbit.len() - idx;
                orbit.truncate(preperiod + period);
                return OrbitInfo {
                    preperiod,
                    period,
                    orbit,
                };
            }
            seen.insert(cur.clone(), orbit.len());
            orbit.push(cur.clone());
            cur = cur.double();
        }
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let parse =
            |txt: &str| -> Result<BigUint, Error> {
                txt.trim().parse::<BigUint>().map_err(|_| {
                    Error::validation(format!("malformed angle `{s}`: expected num/den"))
                })
            };
        match s.split_once('/') {
            Some((n, d)) => {
                let den = parse(d)?;
                if den.is_zero() {
                    return Err(Error::validation(format!("angle `{s}` has zero denominator")));
                }
                Ok(Angle::new(parse(n)?, den))
            }
            None => Ok(Angle::new(parse(s)?, BigUint::one())),
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Eventually-periodic structure of a doubling orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInfo {
    pub preperiod: usize,
    pub period: usize,
    /// The first preperiod + period angles; orbit[preperiod..] is the cycle.
    pub orbit: Vec<Angle>,
}

/// True iff x lies in the open counterclockwise arc from a to b.
///
/// Panics when a == b: the predicate is meaningless on a degenerate arc.
pub fn cyclic_between(a: &Angle, b: &Angle, x: &Angle) -> bool {
    assert!(a != b, "cyclic_between requires a != b");
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// True iff the chords {a1,b1} and {a2,b2} strictly cross inside the disk.
///
/// Chords sharing an endpoint do not cross.
pub fn chords_cross(a1: &Angle, b1: &Angle, a2: &Angle, b2: &Angle) -> bool {
    if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
        return false;
    }
    let in1 = cyclic_between(a1, b1, a2);
    let in2 = cyclic_between(a1, b1, b2);
    in1 != in2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(a("1/3").double(), a("2/3"));
        assert_eq!(Angle::zero().double(), Angle::zero());
        assert_eq!(a("5/7").double(), a("3/7"));
    }

    #[test]
    fn halves_examples() {
        assert_eq!(Angle::zero().halves(), (a("0/1"), a("1/2")));
        assert_eq!(a("1/3").halves(), (a("1/6"), a("2/3")));
        assert_eq!(a("1/2").halves(), (a("1/4"), a("3/4")));
    }

    #[test]
    fn orbit_info_examples() {
        let o = a("1/3").orbit_info();
        assert_eq!((o.preperiod, o.period), (0, 2));
        let o = a("1/6").orbit_info();
        assert_eq!((o.preperiod, o.period), (1, 2));
        let o = a("1/7").orbit_info();
        assert_eq!((o.preperiod, o.period), (0, 3));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(a("1/3").conjugate(), a("2/3"));
        assert_eq!(Angle::zero().conjugate(), Angle::zero());
        assert_eq!(a("1/7").conjugate(), a("6/7"));
    }

    #[test]
    fn cyclic_between_examples() {
        assert!(cyclic_between(&a("0"), &a("1/2"), &a("1/4")));
        assert!(!cyclic_between(&a("1/2"), &a("0"), &a("1/4")));
        assert!(cyclic_between(&a("3/4"), &a("1/4"), &a("0")));
    }

    #[test]
    #[should_panic(expected = "cyclic_between requires a != b")]
    fn cyclic_between_rejects_degenerate_arc() {
        cyclic_between(&a("1/3"), &a("1/3"), &a("0"));
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(a("2/6"), a("1/3"));
        assert_eq!(Angle::zero().to_string(), "0/1");
        assert_eq!(a("7/3"), a("1/3"));
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x/3".parse::<Angle>().is_err());
    }

    #[test]
    fn crossing_tests() {
        // {0,1/2} and {1/4,3/4} cross; {1/6,1/3} and {1/3,2/3} share an endpoint
        assert!(chords_cross(&a("0"), &a("1/2"), &a("1/4"), &a("3/4")));
        assert!(!chords_cross(&a("1/6"), &a("1/3"), &a("1/3"), &a("2/3")));
        assert!(!chords_cross(&a("1/12"), &a("11/12"), &a("5/12"), &a("7/12")));
    }
}
