//! Rotation sets of the doubling map: the critical angle pair bounding the
//! major gap, truncated orbit samples, and the circular-order checks that
//! certify the construction.

use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::theta::{exact_rational_rotation_angle, truncated_orbit_angle, Theta};

#[derive(Clone, Debug, Serialize)]
pub struct RotationSetDigits {
    pub theta: String,
    pub bits: u32,
    pub digits_plus: Vec<u8>,
    pub digits_minus: Vec<u8>,
    /// Lower endpoint of the major gap (the digit stream with the right-limit
    /// convention at the boundary).
    pub t_plus: Angle,
    /// Upper endpoint; for irrational theta this is exactly t_plus + 1/2.
    pub t_minus: Angle,
}

/// The pair of angles whose rays land at the Siegel critical point, at the
/// given binary resolution. For rational rotation numbers the exact periodic
/// pair of the minimal rotation set is returned instead.
pub fn critical_angle_pair(theta: &Theta, bits: u32) -> Result<RotationSetDigits> {
    let mut digits_plus = Vec::with_capacity(bits as usize);
    let mut digits_minus = Vec::with_capacity(bits as usize);
    for k in 0..bits as u64 {
        digits_plus.push(theta.rotation_digit(k, true)? as u8);
        digits_minus.push(theta.rotation_digit(k, false)? as u8);
    }
    let (t_plus, t_minus) = if theta.is_rational() {
        (
            exact_rational_rotation_angle(theta, true)?,
            exact_rational_rotation_angle(theta, false)?,
        )
    } else {
        let plus: Vec<bool> = digits_plus.iter().map(|&d| d == 1).collect();
        let minus: Vec<bool> = digits_minus.iter().map(|&d| d == 1).collect();
        let t_plus = Angle::from_bits(&plus);
        let t_minus = Angle::from_bits(&minus);
        if t_minus != t_plus.antipode() {
            return Err(Error::combinatorial(format!(
                "truncated critical pair is not a diameter: {t_plus} vs {t_minus}"
            )));
        }
        (t_plus, t_minus)
    };
    if t_minus <= t_plus {
        return Err(Error::combinatorial(
            "critical pair is out of order: t_minus must exceed t_plus",
        ));
    }
    Ok(RotationSetDigits {
        theta: theta.name().to_string(),
        bits,
        digits_plus,
        digits_minus,
        t_plus,
        t_minus,
    })
}

/// Truncated rotation-set orbit sample: the angle of the point with rotation
/// coordinate k*theta, for k = 0..count.
pub fn rotation_orbit_sample(theta: &Theta, count: usize, bits: u32) -> Result<Vec<Angle>> {
    (0..count as u64)
        .map(|k| truncated_orbit_angle(theta, k, bits))
        .collect()
}

/// The minimal rotation set of a rational rotation number: the doubling
/// orbit of the exact gap endpoint.
pub fn minimal_rotation_set_rational(theta: &Theta) -> Result<Vec<Angle>> {
    let t = exact_rational_rotation_angle(theta, true)?;
    let info = t.orbit_info();
    let mut orbit = info.orbit;
    orbit.sort();
    Ok(orbit)
}

/// Checks that doubling on the sampled rotation set is order-isomorphic to
/// rotation by theta: no strict angle inequality inverts the circular order
/// of the rotation coordinates. Points that collide at resolution N are
/// compression ties, not violations.
pub fn check_order_isomorphic(theta: &Theta, count: usize, bits: u32) -> Result<bool> {
    let sample = rotation_orbit_sample(theta, count, bits)?;
    let keys: Vec<_> = (0..count as u64)
        .map(|k| theta.frac_ordering_key(k))
        .collect();
    for i in 0..count {
        for j in 0..count {
            if sample[i] < sample[j] && keys[i] > keys[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct GapCheck {
    pub gap_length: String,
    pub is_longest_gap: bool,
}

/// Verifies that the computed gap between t_plus and t_minus is the longest
/// complementary arc of the sampled rotation set.
pub fn major_gap_check(pair: &RotationSetDigits, sample: &[Angle]) -> GapCheck {
    let mut pts: Vec<Angle> = sample.to_vec();
    pts.push(pair.t_plus.clone());
    pts.push(pair.t_minus.clone());
    pts.sort();
    pts.dedup();
    let gap_of = |a: &Angle, b: &Angle| {
        // ccw arc length from a to b as a float (report only)
        let x = a.to_f64();
        let y = b.to_f64();
        if y >= x {
            y - x
        } else {
            y + 1.0 - x
        }
    };
    // the empty side between t_plus and t_minus
    let empty_side_len = {
        let interior: Vec<&Angle> = sample
            .iter()
            .filter(|x| **x > pair.t_plus && **x < pair.t_minus)
            .collect();
        if interior.is_empty() {
            gap_of(&pair.t_plus, &pair.t_minus)
        } else {
            gap_of(&pair.t_minus, &pair.t_plus)
        }
    };
    let mut longest = 0.0f64;
    for i in 0..pts.len() {
        let j = (i + 1) % pts.len();
        longest = longest.max(gap_of(&pts[i], &pts[j]));
    }
    GapCheck {
        gap_length: format!("{empty_side_len:.12}"),
        is_longest_gap: empty_side_len >= longest - 1e-12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_minimal_sets() {
        let t = Theta::rational(1, 2).unwrap();
        let set = minimal_rotation_set_rational(&t).unwrap();
        let expect: Vec<Angle> = ["1/3", "2/3"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(set, expect);

        let t = Theta::rational(1, 3).unwrap();
        let set = minimal_rotation_set_rational(&t).unwrap();
        let expect: Vec<Angle> = ["1/7", "2/7", "4/7"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(set, expect);
        let pair = critical_angle_pair(&t, 12).unwrap();
        assert_eq!(pair.t_plus, "1/7".parse().unwrap());
        assert_eq!(pair.t_minus, "4/7".parse().unwrap());
    }

    #[test]
    fn golden_pair_is_a_diameter_at_64_bits() {
        let theta = Theta::golden();
        let pair = critical_angle_pair(&theta, 64).unwrap();
        assert_eq!(pair.t_minus, pair.t_plus.antipode());
        assert!(pair.t_plus < pair.t_minus);
        // leading golden digits: frac(k*phi) in [1-phi, 1) for k = 1, 3, 4, 6, 8...
        assert_eq!(&pair.digits_plus[..8], &[0, 1, 0, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn golden_and_silver_order_isomorphic_at_64_bits() {
        for theta in [Theta::golden(), Theta::silver()] {
            assert!(check_order_isomorphic(&theta, 128, 64).unwrap());
        }
    }

    #[test]
    fn major_gap_is_longest_for_golden_and_rational() {
        let theta = Theta::golden();
        let pair = critical_angle_pair(&theta, 64).unwrap();
        let sample = rotation_orbit_sample(&theta, 128, 64).unwrap();
        let check = major_gap_check(&pair, &sample);
        assert!(check.is_longest_gap);

        let t = Theta::rational(1, 3).unwrap();
        let pair = critical_angle_pair(&t, 12).unwrap();
        let sample = minimal_rotation_set_rational(&t).unwrap();
        let check = major_gap_check(&pair, &sample);
        assert!(check.is_longest_gap, "{check:?}");
    }

    #[test]
    fn doubling_approximates_the_shifted_sample() {
        let theta = Theta::golden();
        let sample = rotation_orbit_sample(&theta, 32, 64).unwrap();
        for k in 0..31 {
            let doubled = sample[k].double();
            let next = &sample[k + 1];
            let diff = (doubled.to_f64() - next.to_f64()).abs();
            let wrapped = diff.min(1.0 - diff);
            assert!(wrapped < 2.0 / 2f64.powi(63), "k = {k}: {wrapped:.3e}");
        }
    }
}
