//! Rotation numbers carried exactly: either a rational p/q or an irrational
//! held as a certified fixed-point approximation num/2^PREC_BITS.
//!
//! Every downstream digit decision is guarded by an interval check against
//! the accumulated approximation error, so a silent wrong digit cannot occur.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Working precision for irrational rotation numbers, in bits.
pub const PREC_BITS: u32 = 256;

/// Certification margin: a digit decision must clear the partition boundary
/// by more than 2^-CERT_BITS or a precision error is raised.
pub const CERT_BITS: u32 = 100;

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Rational { p: BigUint, q: BigUint },
    /// floor(theta * 2^PREC_BITS); absolute error < 2^-(PREC_BITS-1).
    Fixed { scaled: BigUint },
}

/// A rotation number theta in (0,1).
#[derive(Clone, PartialEq, Eq)]
pub struct Theta {
    repr: Repr,
    name: String,
}

impl Theta {
    /// Golden mean (sqrt(5)-1)/2; continued fraction [1,1,1,...].
    pub fn golden() -> Theta {
        let two_p = BigUint::one() << (2 * PREC_BITS + 2);
        let root = (&two_p * 5u32).sqrt(); // floor(sqrt(5) * 2^(P+1))
        let scaled = (root - (BigUint::one() << (PREC_BITS + 1))) >> 2;
        Theta {
            repr: Repr::Fixed { scaled },
            name: "golden".into(),
        }
    }

    /// Silver mean sqrt(2)-1; continued fraction [2,2,2,...].
    pub fn silver() -> Theta {
        let two_p = BigUint::one() << (2 * PREC_BITS);
        let root = (&two_p * 2u32).sqrt();
        let scaled = root - (BigUint::one() << PREC_BITS);
        Theta {
            repr: Repr::Fixed { scaled },
            name: "silver".into(),
        }
    }

    /// Cube root of 1/4, the rotation number of the paper's worked example.
    pub fn cbrt_quarter() -> Theta {
        // (2^(3P) / 4)^(1/3) = 2^(P - 2/3): compute via cbrt(2^(3P-2))
        let scaled = (BigUint::one() << (3 * PREC_BITS - 2)).cbrt();
        Theta {
            repr: Repr::Fixed { scaled },
            name: "cbrt(1/4)".into(),
        }
    }

    pub fn rational(p: u64, q: u64) -> Result<Theta> {
        if p == 0 || q == 0 || p >= q {
            return Err(Error::validation(format!(
                "rational rotation number {p}/{q} not in (0,1)"
            )));
        }
        let g = p.gcd(&q);
        Ok(Theta {
            repr: Repr::Rational {
                p: BigUint::from(p / g),
                q: BigUint::from(q / g),
            },
            name: format!("{}/{}", p / g, q / g),
        })
    }

    /// Parse a named constant or a decimal string like "0.61803398875".
    pub fn parse(s: &str) -> Result<Theta> {
        match s.trim() {
            "golden" => return Ok(Theta::golden()),
            "silver" => return Ok(Theta::silver()),
            "cbrt(1/4)" | "cbrt14" => return Ok(Theta::cbrt_quarter()),
            _ => {}
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::validation(format!("bad rotation number `{s}`")))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| Error::validation(format!("bad rotation number `{s}`")))?;
            return Theta::rational(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int != "0" || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::validation(format!(
                "bad rotation number `{s}`: expected golden, silver, cbrt(1/4), p/q, or 0.ddd"
            )));
        }
        // scaled = floor(0.frac * 2^P) via integer arithmetic
        let digits: BigUint = frac.parse().unwrap();
        let pow10 = BigUint::from(10u32).pow(frac.len() as u32);
        let scaled = (digits << PREC_BITS) / pow10;
        if scaled.is_zero() {
            return Err(Error::validation("rotation number must be positive"));
        }
        Ok(Theta {
            repr: Repr::Fixed { scaled },
            name: s.trim().to_string(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.repr, Repr::Rational { .. })
    }

    /// Denominator q for rational theta = p/q.
    pub fn rational_period(&self) -> Option<u64> {
        match &self.repr {
            Repr::Rational { q, .. } => q.to_u64(),
            Repr::Fixed { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::Rational { p, q } => p.to_f64().unwrap() / q.to_f64().unwrap(),
            Repr::Fixed { scaled } => {
                let hi = (scaled >> (PREC_BITS - 64)).to_u64().unwrap();
                hi as f64 / 2f64.powi(64)
            }
        }
    }

    /// Monotone ordering key for frac(k * theta): equal keys mean equal
    /// values to working precision.
    pub fn frac_ordering_key(&self, k: u64) -> BigUint {
        match &self.repr {
            Repr::Rational { p, q } => ((p * k) % q << PREC_BITS) / q,
            Repr::Fixed { scaled } => (scaled * k) % (BigUint::one() << PREC_BITS),
        }
    }

    /// frac(k * theta) as an exact rational (rational case) or a fixed-point
    /// value with error below k * 2^-(PREC_BITS-1) (irrational case).
    fn frac_multiple(&self, k: u64) -> FracValue {
        match &self.repr {
            Repr::Rational { p, q } => {
                let num = (p * k) % q;
                FracValue::Exact { num, den: q.clone() }
            }
            Repr::Fixed { scaled } => {
                let modulus = BigUint::one() << PREC_BITS;
                FracValue::Approx {
                    scaled: (scaled * k) % &modulus,
                    err_ulps: BigUint::from(k.max(1)),
                }
            }
        }
    }

    /// Digit of the rotation-set construction at index k.
    ///
    /// `upper` selects the boundary convention: upper means frac(k theta) is
    /// tested against [1-theta, 1) with frac in [0,1); lower means (1-theta, 1]
    /// with frac in (0,1].
    pub fn rotation_digit(&self, k: u64, upper: bool) -> Result<bool> {
        if k == 0 {
            // frac(0) is exactly the boundary point 0 ~ 1; the two
            // conventions resolve it to opposite digits
            return Ok(!upper);
        }
        let boundary = match &self.repr {
            Repr::Rational { p, q } => FracValue::Exact {
                num: q - p,
                den: q.clone(),
            },
            Repr::Fixed { scaled } => FracValue::Approx {
                scaled: (BigUint::one() << PREC_BITS) - scaled,
                err_ulps: BigUint::one(),
            },
        };
        let x = self.frac_multiple(k);
        match (x, boundary) {
            (FracValue::Exact { num, den }, FracValue::Exact { num: b, den: bd }) => {
                debug_assert_eq!(den, bd);
                // frac in [0,1) hits 0 exactly where the lower convention reads 1
                if upper {
                    Ok(num >= b)
                } else {
                    Ok(num > b || num.is_zero())
                }
            }
            (FracValue::Approx { scaled, err_ulps }, FracValue::Approx { scaled: b, err_ulps: be }) => {
                // certify: |x - b| and |x - 0/1| must exceed the error budget
                let margin = (err_ups_sum(&err_ulps, &be) << 1) + (BigUint::one() << (PREC_BITS - CERT_BITS));
                let dist_b = if scaled > b { &scaled - &b } else { &b - &scaled };
                let modulus = BigUint::one() << PREC_BITS;
                let dist_0 = scaled.clone().min(&modulus - &scaled);
                if dist_b <= margin || dist_0 <= margin {
                    return Err(Error::PrecisionInsufficient(format!(
                        "rotation digit {k} of theta={} is within the certification margin",
                        self.name
                    )));
                }
                Ok(scaled >= b)
            }
            _ => unreachable!("mixed representations"),
        }
    }

    /// First `terms` continued-fraction coefficients, with a bounded-type flag.
    ///
    /// For irrational theta the expansion is certified: it stops with an error
    /// if a tail could be perturbed by the approximation error.
    pub fn continued_fraction(&self, terms: usize, bound: u64) -> Result<ContinuedFraction> {
        let (mut num, mut den) = match &self.repr {
            Repr::Rational { p, q } => (p.clone(), q.clone()),
            Repr::Fixed { scaled } => (scaled.clone(), BigUint::one() << PREC_BITS),
        };
        let irrational = !self.is_rational();
        let mut coeffs: Vec<u64> = Vec::new();
        let mut q_prev = BigUint::zero();
        let mut q_cur = BigUint::one();
        // reciprocal-and-floor loop on theta in (0,1): a_k = floor(den/num)
        while coeffs.len() < terms {
            if num.is_zero() {
                if irrational {
                    return Err(Error::PrecisionInsufficient(format!(
                        "continued fraction of {} exhausted the working precision after {} terms",
                        self.name,
                        coeffs.len()
                    )));
                }
                break; // rational theta terminates
            }
            let a = &den / &num;
            let r = &den % &num;
            den = num;
            num = r;
            let a_u64 = a.to_u64().ok_or_else(|| {
                Error::PrecisionInsufficient(format!(
                    "continued-fraction coefficient of {} overflows; theta is rational to working precision",
                    self.name
                ))
            })?;
            let q_next = &a * &q_cur + &q_prev;
            q_prev = std::mem::replace(&mut q_cur, q_next);
            // guard: convergent denominators must stay far below the precision
            if irrational && q_cur.bits() * 2 + 40 > PREC_BITS as u64 {
                return Err(Error::PrecisionInsufficient(format!(
                    "continued fraction of {} not certified past {} terms (convergent denominator too large)",
                    self.name,
                    coeffs.len()
                )));
            }
            coeffs.push(a_u64);
        }
        let max_seen = coeffs.iter().copied().max().unwrap_or(0);
        let status = if self.is_rational() {
            BoundedType::Rational
        } else if max_seen > bound {
            BoundedType::ViolatesBound { first_excess: max_seen }
        } else {
            BoundedType::UnknownBeyondDepth { depth: coeffs.len() }
        };
        Ok(ContinuedFraction {
            theta: self.name.clone(),
            coefficients: coeffs,
            bound: max_seen,
            status,
        })
    }
}

fn err_ups_sum(a: &BigUint, b: &BigUint) -> BigUint {
    a + b
}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Theta({})", self.name)
    }
}

enum FracValue {
    Exact { num: BigUint, den: BigUint },
    Approx { scaled: BigUint, err_ulps: BigUint },
}

/// Truncated continued-fraction expansion with a bounded-type report.
#[derive(Clone, Debug, Serialize)]
pub struct ContinuedFraction {
    pub theta: String,
    pub coefficients: Vec<u64>,
    /// Maximum coefficient seen so far.
    pub bound: u64,
    pub status: BoundedType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BoundedType {
    Rational,
    ViolatesBound { first_excess: u64 },
    /// Coefficients so far respect the bound; deeper behaviour is unknown.
    UnknownBeyondDepth { depth: usize },
}

/// Convergents p_k/q_k of a coefficient list.
pub fn convergents(coeffs: &[u64]) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(coeffs.len());
    let (mut p0, mut p1) = (BigUint::one(), BigUint::zero());
    let (mut q0, mut q1) = (BigUint::zero(), BigUint::one());
    for &a in coeffs {
        let p = &p1 * a + &p0;
        let q = &q1 * a + &q0;
        p0 = std::mem::replace(&mut p1, p);
        q0 = std::mem::replace(&mut q1, q);
        out.push((p1.clone(), q1.clone()));
    }
    out
}

/// Exact angle of the truncated orbit point: 0.d_k d_{k+1} ... d_{k+bits-1}
/// where d_i is the upper rotation digit at index i.
pub fn truncated_orbit_angle(theta: &Theta, k: u64, bits: u32) -> Result<Angle> {
    let mut digs = Vec::with_capacity(bits as usize);
    for i in 0..bits as u64 {
        digs.push(theta.rotation_digit(k + i, true)?);
    }
    Ok(Angle::from_bits(&digs))
}

/// For rational theta = p/q the digit stream has period q; this returns the
/// exact repeating-binary value (denominator 2^q - 1).
pub fn exact_rational_rotation_angle(theta: &Theta, upper: bool) -> Result<Angle> {
    let q = theta.rational_period().ok_or_else(|| {
        Error::validation("exact rotation angle is only defined for rational theta")
    })?;
    let mut num = BigUint::zero();
    for k in 0..q {
        num <<= 1;
        if theta.rotation_digit(k, upper)? {
            num += 1u32;
        }
    }
    Ok(Angle::new(num, (BigUint::one() << q) - BigUint::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_continued_fraction_is_all_ones() {
        let cf = Theta::golden().continued_fraction(40, 10).unwrap();
        assert_eq!(cf.coefficients, vec![1u64; 40]);
        assert_eq!(cf.status, BoundedType::UnknownBeyondDepth { depth: 40 });
    }

    #[test]
    fn silver_continued_fraction_is_all_twos() {
        let cf = Theta::silver().continued_fraction(40, 10).unwrap();
        assert_eq!(cf.coefficients, vec![2u64; 40]);
    }

    #[test]
    fn cbrt_quarter_value_and_leading_terms() {
        let t = Theta::cbrt_quarter();
        assert!((t.to_f64() - 0.25f64.powf(1.0 / 3.0)).abs() < 1e-15);
        let cf = t.continued_fraction(30, 10).unwrap();
        // 0.62996... = [0; 1, 1, 1, 2, 2, ...]; verify against direct division
        assert_eq!(cf.coefficients[0], 1);
        let convs = convergents(&cf.coefficients);
        let (p, q) = convs.last().unwrap();
        let approx = p.to_f64().unwrap() / q.to_f64().unwrap();
        assert!((approx - t.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn rational_theta_digit_conventions_differ_on_boundary() {
        // theta = 1/3: boundary 2/3 is hit at k = 2 (upper) and the lower
        // convention reads frac(3 * 1/3) = 1 as inside (1-theta, 1].
        let t = Theta::rational(1, 3).unwrap();
        assert!(t.rotation_digit(2, true).unwrap());
        assert!(!t.rotation_digit(2, false).unwrap());
        assert!(!t.rotation_digit(0, true).unwrap());
        assert!(t.rotation_digit(0, false).unwrap());
    }

    #[test]
    fn rational_rotation_set_angles() {
        // rho = 1/3: t_plus = 0.001001... = 1/7, t_minus = 0.100100... = 4/7
        let t = Theta::rational(1, 3).unwrap();
        assert_eq!(
            exact_rational_rotation_angle(&t, true).unwrap(),
            "1/7".parse().unwrap()
        );
        assert_eq!(
            exact_rational_rotation_angle(&t, false).unwrap(),
            "4/7".parse().unwrap()
        );
        // rho = 1/2: pair {1/3, 2/3}
        let h = Theta::rational(1, 2).unwrap();
        assert_eq!(
            exact_rational_rotation_angle(&h, true).unwrap(),
            "1/3".parse().unwrap()
        );
        assert_eq!(
            exact_rational_rotation_angle(&h, false).unwrap(),
            "2/3".parse().unwrap()
        );
    }

    #[test]
    fn golden_digits_certified_to_128_bits() {
        let t = Theta::golden();
        for k in 0..128 {
            t.rotation_digit(k, true).unwrap();
        }
    }

    #[test]
    fn parse_decimal_and_names() {
        assert!(Theta::parse("golden").is_ok());
        assert!(Theta::parse("0.5477").is_ok());
        assert!(Theta::parse("1.5").is_err());
        assert!(Theta::parse("2/3").unwrap().is_rational());
    }
}
