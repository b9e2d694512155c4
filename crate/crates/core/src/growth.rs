//! Exponential growth rates of full m-Dyck path counts under a descent cap
//! (`alpha`), under a height cap (`beta`), and with no cap (`gamma`).

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::binomial;
use crate::poly::{bisect_sign_change, IntPoly, RootFinder};
use crate::Rational;

const ROOT_TOLERANCE: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthKind {
    Alpha { m: usize, d: usize },
    Beta { m: usize, h: usize },
    Gamma { m: usize },
}

/// A growth rate together with the root it was derived from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthConstant {
    pub value: f64,
    pub kind: GrowthKind,
    /// `tau` for alpha, the smallest positive polynomial root for beta.
    pub certificate: Option<f64>,
}

/// `(m + 1)(1 + 1/m)^m`, the growth rate of unconstrained full m-Dyck paths.
pub fn gamma(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let m = m as f64;
    Ok((m + 1.0) * (1.0 + 1.0 / m).powf(m))
}

/// `phi(x) = sum_{i=0}^{d} x^{mi}` as an integer polynomial.
pub fn descent_series(m: usize, d: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::from(0); m * d + 1];
    for i in 0..=d {
        coeffs[m * i] = BigInt::from(1);
    }
    IntPoly::new(coeffs)
}

/// `phi(x) - x phi'(x) = sum_i (1 - mi) x^{mi}`; its positive root is `tau`.
pub fn tau_equation(m: usize, d: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::from(0); m * d + 1];
    for i in 0..=d {
        coeffs[m * i] = BigInt::from(1) - BigInt::from(m * i);
    }
    IntPoly::new(coeffs)
}

/// Growth rate of full m-Dyck paths with maximum descent at most `d`:
/// `phi'(tau)^m` where `tau > 0` solves `phi(tau) = tau phi'(tau)`.
pub fn alpha(m: usize, d: usize) -> Result<GrowthConstant> {
    if m == 0 || d == 0 || m.max(d) < 2 {
        return Err(Error::Precondition(format!(
            "alpha needs m, d >= 1 and max(m, d) >= 2, got m={m}, d={d}"
        )));
    }
    // coefficients are 1, then zeros and negatives: exactly one positive root
    let eq = tau_equation(m, d);
    let root = bisect_sign_change(&eq, Rational::zero(), eq.cauchy_bound(), ROOT_TOLERANCE)
        .ok_or_else(|| Error::NoRoot(format!("tau equation {eq}")))?;
    let tau = root.midpoint();
    let dphi = descent_series(m, d).derivative().eval_f64(tau);
    Ok(GrowthConstant {
        value: dphi.powi(m as i32),
        kind: GrowthKind::Alpha { m, d },
        certificate: Some(tau),
    })
}

/// `sum_{i=0}^{floor((h+1)/(m+1))} (-x)^i C(h - mi + 1, i)`.
pub fn beta_polynomial(m: usize, h: usize) -> Result<IntPoly> {
    if m == 0 || h == 0 {
        return Err(Error::Precondition("m and h must be at least 1".into()));
    }
    let top = (h + 1) / (m + 1);
    let coeffs = (0..=top)
        .map(|i| {
            let c = BigInt::from(binomial((h - m * i + 1) as u64, i as u64));
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok(IntPoly::new(coeffs))
}

/// Growth rate of full m-Dyck paths of height at most `h`: the reciprocal of
/// the smallest positive root of [`beta_polynomial`].
pub fn beta(m: usize, h: usize) -> Result<GrowthConstant> {
    let p = beta_polynomial(m, h)?;
    let root = RootFinder::new(&p)
        .smallest_positive(&p, ROOT_TOLERANCE)
        .ok_or_else(|| Error::NoRoot(format!("height polynomial {p} (m={m}, h={h})")))?;
    let r = root.midpoint();
    Ok(GrowthConstant {
        value: 1.0 / r,
        kind: GrowthKind::Beta { m, h },
        certificate: Some(r),
    })
}

/// `4 cos^2(pi / (h + 2))`, the height-capped growth rate for ordinary Dyck paths.
pub fn beta_closed_form_m1(h: usize) -> Result<f64> {
    if h == 0 {
        return Err(Error::Precondition("h must be at least 1".into()));
    }
    let c = (PI / (h as f64 + 2.0)).cos();
    Ok(4.0 * c * c)
}

/// Relative residual of a growth constant's defining equation at its certificate.
pub fn residual(g: &GrowthConstant) -> f64 {
    match (g.kind, g.certificate) {
        (GrowthKind::Alpha { m, d }, Some(tau)) => {
            let phi = descent_series(m, d);
            let lhs = phi.eval_f64(tau);
            let rhs = tau * phi.derivative().eval_f64(tau);
            (lhs - rhs).abs() / lhs.abs().max(1.0)
        }
        (GrowthKind::Beta { m, h }, Some(r)) => {
            let p = beta_polynomial(m, h).expect("valid parameters");
            let scale: f64 = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| c.to_f64().unwrap_or(f64::NAN).abs() * r.powi(i as i32))
                .sum();
            p.eval_f64(r).abs() / scale.max(1.0)
        }
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(1).unwrap(), 4.0);
        assert!((gamma(2).unwrap() - 6.75).abs() < 1e-12);
        assert!((gamma(3).unwrap() - 4.0 * (4.0f64 / 3.0).powi(3)).abs() < 1e-12);
        assert!(gamma(0).is_err());
    }

    #[test]
    fn alpha_hand_solved() {
        let a = alpha(2, 1).unwrap();
        assert!((a.certificate.unwrap() - 1.0).abs() < 1e-14);
        assert!((a.value - 4.0).abs() < 1e-12);
        let a = alpha(1, 2).unwrap();
        assert!((a.certificate.unwrap() - 1.0).abs() < 1e-14);
        assert!((a.value - 3.0).abs() < 1e-12);
        assert!(alpha(1, 1).is_err());
        assert!(alpha(0, 3).is_err());
    }

    #[test]
    fn alpha_increases_toward_gamma() {
        let mut prev = 0.0;
        for d in 2..=30 {
            let a = alpha(1, d).unwrap();
            assert!(a.value >= prev - 1e-12);
            assert!(a.value <= 4.0 + 1e-9);
            assert!(residual(&a) < 1e-12);
            prev = a.value;
        }
        assert!(prev > 3.9);
    }

    #[test]
    fn beta_polynomials() {
        assert_eq!(beta_polynomial(1, 1).unwrap(), IntPoly::from_i64(&[1, -1]));
        assert_eq!(
            beta_polynomial(1, 3).unwrap(),
            IntPoly::from_i64(&[1, -3, 1])
        );
        assert_eq!(beta_polynomial(2, 2).unwrap(), IntPoly::from_i64(&[1, -1]));
    }

    #[test]
    fn beta_values() {
        assert!((beta(1, 1).unwrap().value - 1.0).abs() < 1e-12);
        let b = beta(1, 3).unwrap();
        assert!((b.value - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((b.value - 2.618_033_988_7).abs() < 1e-10);
        assert!((beta(2, 2).unwrap().value - 1.0).abs() < 1e-12);
        assert!(residual(&b) < 1e-12);
        // h < m: the polynomial is the constant 1
        assert!(matches!(beta(3, 2), Err(Error::NoRoot(_))));
    }

    #[test]
    fn closed_form_m1() {
        assert!((beta_closed_form_m1(1).unwrap() - 1.0).abs() < 1e-12);
        assert!((beta_closed_form_m1(2).unwrap() - 2.0).abs() < 1e-12);
        assert!((beta_closed_form_m1(10_000).unwrap() - 4.0).abs() < 1e-6);
    }
}
