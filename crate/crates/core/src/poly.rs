//! Integer polynomials with exact real-root isolation.
//!
//! Roots are bracketed with Sturm sequences evaluated in exact rational
//! arithmetic and then narrowed by bisection on the same exact root counts,
//! so no floating-point polynomial evaluation is involved until the final
//! conversion of the bracket to `f64`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// Polynomial with integer coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    ///
    /// Evaluates `den^deg * p(num/den)` in integers, which has the same sign.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let Some(deg) = self.degree() else {
            return 0;
        };
        let (num, den) = (x.numer(), x.denom());
        let mut den_pow = BigInt::one();
        let mut acc = self.coeffs[deg].clone();
        for c in self.coeffs[..deg].iter().rev() {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn primitive(mut self) -> IntPoly {
        let content = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in &mut self.coeffs {
                *c /= &content;
            }
        }
        self
    }

    /// Remainder of `self` by `divisor`, scaled by a positive constant so
    /// that it stays integral.
    fn positive_pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.lead().clone();
        let mut rem = self.coeffs.clone();
        let scale_sign_flip = lead.is_negative();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.last().expect("nonempty").clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dd;
            // rem <- |lead| * rem - sign(lead) * top * x^shift * divisor
            let abs_lead = lead.abs();
            for c in rem.iter_mut() {
                *c *= &abs_lead;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let term = &top * d;
                if scale_sign_flip {
                    rem[shift + i] += term;
                } else {
                    rem[shift + i] -= term;
                }
            }
            debug_assert!(rem.last().expect("nonempty").is_zero());
            rem.pop();
        }
        IntPoly::new(rem).primitive()
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...` with positive rescalings.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(IntPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Exact quotient `self / divisor` rescaled to a primitive integer polynomial.
    pub fn quotient_primitive(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = Rational::from_integer(divisor.lead().clone());
        let mut rem: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let qlen = rem.len().saturating_sub(dd);
        let mut quot = vec![Rational::zero(); qlen];
        for shift in (0..qlen).rev() {
            let q = &rem[shift + dd] / &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * Rational::from_integer(d.clone());
            }
            quot[shift] = q;
        }
        let denom = quot.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        IntPoly::new(
            quot.into_iter()
                .map(|q| (q * Rational::from_integer(denom.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Upper bound on the absolute value of every real root.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = Rational::from_integer(self.lead().abs());
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| Rational::from_integer(c.abs()))
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max / lead
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

fn sign_changes(chain: &[IntPoly], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| p.sign_at(x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// A real root of an integer polynomial, bracketed by rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootBracket {
    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / Rational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Bisection on exact signs inside `(lo, hi)`, where `p` changes sign.
pub fn bisect_sign_change(
    p: &IntPoly,
    mut lo: Rational,
    mut hi: Rational,
    rel_tol: f64,
) -> Option<RootBracket> {
    let s_lo = p.sign_at(&lo);
    let s_hi = p.sign_at(&hi);
    if s_lo == 0 {
        return Some(RootBracket { hi: lo.clone(), lo });
    }
    if s_hi == 0 {
        return Some(RootBracket { lo: hi.clone(), hi });
    }
    if s_lo == s_hi {
        return None;
    }
    let tol = Rational::from_float(rel_tol).expect("finite tolerance");
    let two = Rational::from_integer(2.into());
    loop {
        let scale = if hi.abs() > Rational::one() {
            hi.abs()
        } else {
            Rational::one()
        };
        if &hi - &lo <= &tol * &scale {
            return Some(RootBracket { lo, hi });
        }
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            0 => {
                return Some(RootBracket {
                    lo: mid.clone(),
                    hi: mid,
                })
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
}

/// Root isolation for a fixed polynomial.
pub struct RootFinder {
    chain: Vec<IntPoly>,
}

impl RootFinder {
    pub fn new(p: &IntPoly) -> Self {
        let chain = p.sturm_chain();
        let gcd = chain.last().expect("nonempty chain");
        if gcd.degree().unwrap_or(0) == 0 {
            return RootFinder { chain };
        }
        // repeated roots: work with the squarefree part
        let squarefree = p.quotient_primitive(gcd);
        RootFinder {
            chain: squarefree.sturm_chain(),
        }
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        sign_changes(&self.chain, a).saturating_sub(sign_changes(&self.chain, b))
    }

    /// Narrows `(lo, hi]`, known to hold at least `target`-th root counted from
    /// the left, until its width is at most `rel_tol * |hi|` (or `rel_tol` near
    /// zero). `target` is 1-based.
    fn narrow(
        &self,
        mut lo: Rational,
        mut hi: Rational,
        target: usize,
        rel_tol: f64,
    ) -> RootBracket {
        let tol = Rational::from_float(rel_tol).expect("finite tolerance");
        let two = Rational::from_integer(2.into());
        let mut left_count = 0usize;
        loop {
            let scale = if hi.abs() > Rational::one() {
                hi.abs()
            } else {
                Rational::one()
            };
            if &hi - &lo <= &tol * &scale {
                return RootBracket { lo, hi };
            }
            let mid = (&lo + &hi) / &two;
            let in_left = self.count_in(&lo, &mid);
            if left_count + in_left >= target {
                hi = mid;
            } else {
                left_count += in_left;
                lo = mid;
            }
        }
    }

    /// The smallest root in `(0, ∞)`, if any.
    pub fn smallest_positive(&self, p: &IntPoly, rel_tol: f64) -> Option<RootBracket> {
        let bound = p.cauchy_bound();
        let zero = Rational::zero();
        if self.count_in(&zero, &bound) == 0 {
            return None;
        }
        Some(self.narrow(zero, bound, 1, rel_tol))
    }

    /// The largest real root, if any.
    pub fn largest(&self, p: &IntPoly, rel_tol: f64) -> Option<RootBracket> {
        let bound = p.cauchy_bound();
        let low = -bound.clone() - Rational::one();
        let total = self.count_in(&low, &bound);
        if total == 0 {
            return None;
        }
        Some(self.narrow(low, bound, total, rel_tol))
    }
}
