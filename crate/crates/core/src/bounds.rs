//! Bounds on the critical edge density `d_crit(H)`: the smallest `d` such
//! that every blow-up of `H` with all edge densities above `d` contains a
//! transversal copy of `H`.

use num_traits::{One, ToPrimitive};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::growth::{alpha, beta, beta_closed_form_m1};
use crate::hypergraph::{binomial, Hypergraph};
use crate::matching::largest_root;
use crate::Rational;

/// Slack allowed when comparing floating bounds.
pub const BOUND_TOLERANCE: f64 = 1e-9;

const ROOT_TOLERANCE: f64 = 1e-15;

/// A bound with its numeric value, exact form when rational, and origin.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub exact: Option<Rational>,
    pub source: String,
}

impl BoundValue {
    fn real(value: f64, source: &str) -> Self {
        BoundValue {
            value,
            exact: None,
            source: source.into(),
        }
    }

    fn rational(exact: Rational, source: &str) -> Self {
        BoundValue {
            value: exact.to_f64().unwrap_or(f64::NAN),
            exact: Some(exact),
            source: source.into(),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if self.exact.is_some() { 3 } else { 2 };
        let mut st = serializer.serialize_struct("BoundValue", fields)?;
        st.serialize_field("value", &self.value.to_string())?;
        if let Some(q) = &self.exact {
            st.serialize_field("exact", &format!("{}/{}", q.numer(), q.denom()))?;
        }
        st.serialize_field("source", &self.source)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub h: usize,
    pub max_degree: usize,
    pub max_disjoint_degree: usize,
    pub is_regular: bool,
    pub lower: BoundValue,
    pub upper_alpha: Option<BoundValue>,
    pub upper_beta: Option<BoundValue>,
    pub upper_complete: Option<BoundValue>,
    pub baseline_matching: Option<BoundValue>,
    pub known_exact: Option<BoundValue>,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn uppers(&self) -> impl Iterator<Item = &BoundValue> {
        [
            &self.upper_alpha,
            &self.upper_beta,
            &self.upper_complete,
            &self.baseline_matching,
        ]
        .into_iter()
        .flatten()
    }

    pub fn best_upper(&self) -> Option<f64> {
        self.uppers().map(|b| b.value).reduce(f64::min)
    }
}

fn require_edges(hg: &Hypergraph) -> Result<()> {
    if hg.edges().is_empty() {
        return Err(Error::Precondition("hypergraph has no edges".into()));
    }
    Ok(())
}

/// `1 - 1/Δ`.
pub fn lower_bound(hg: &Hypergraph) -> Result<Rational> {
    require_edges(hg)?;
    let delta = Rational::from_integer(hg.max_degree().into());
    Ok(Rational::one() - delta.recip())
}

/// `k (k/(k-1))^(k-1)`, the unconstrained growth rate of full (k-1)-Dyck paths,
/// which caps both `alpha(k-1, .)` and `beta(k-1, .)`.
pub fn growth_cap(k: usize) -> f64 {
    let k = k as f64;
    k * (k / (k - 1.0)).powf(k - 1.0)
}

/// `1 - 1/(alpha(k-1, Δ_disj) Δ)`.
pub fn upper_alpha(hg: &Hypergraph) -> Result<f64> {
    require_edges(hg)?;
    hg.require_connected()?;
    let a = alpha(hg.k() - 1, hg.max_disjoint_degree())?.value;
    if a > growth_cap(hg.k()) + BOUND_TOLERANCE {
        return Err(Error::InconsistentBounds(format!(
            "alpha = {a} exceeds the cap {}",
            growth_cap(hg.k())
        )));
    }
    Ok(1.0 - 1.0 / (a * hg.max_degree() as f64))
}

/// `1 - 1/(beta(k-1, h-1)(Δ-1))`, absent when `H` is regular.
pub fn upper_beta(hg: &Hypergraph) -> Result<Option<f64>> {
    require_edges(hg)?;
    hg.require_connected()?;
    if hg.is_regular() {
        return Ok(None);
    }
    let b = beta(hg.k() - 1, hg.h() - 1)?.value;
    if b > growth_cap(hg.k()) + BOUND_TOLERANCE {
        return Err(Error::InconsistentBounds(format!(
            "beta = {b} exceeds the cap {}",
            growth_cap(hg.k())
        )));
    }
    if hg.k() == 2 {
        let closed = beta_closed_form_m1(hg.h() - 1)?;
        if b > closed + BOUND_TOLERANCE {
            return Err(Error::InconsistentBounds(format!(
                "beta = {b} exceeds 4cos^2(pi/(h+1)) = {closed}"
            )));
        }
    }
    Ok(Some(1.0 - 1.0 / (b * (hg.max_degree() - 1) as f64)))
}

/// Bounds for the complete k-graph on `k + l` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteBounds {
    pub degree: u128,
    /// `1 - 1/((l+1)Δ)`
    pub upper: Rational,
    /// `1 - 1/Δ`
    pub lower: Rational,
}

/// Bounds for `K_{k+l}^{(k)}` with `1 <= l < k`, where `Δ = C(k+l-1, k-1)`.
pub fn upper_complete(k: usize, l: usize) -> Result<CompleteBounds> {
    if l == 0 || l >= k {
        return Err(Error::Precondition(format!(
            "need 1 <= l < k, got k={k}, l={l}"
        )));
    }
    let degree = binomial((k + l - 1) as u64, (k - 1) as u64);
    let delta = Rational::from_integer(degree.into());
    let lplus = Rational::from_integer((l + 1).into());
    Ok(CompleteBounds {
        degree,
        upper: Rational::one() - (lplus * &delta).recip(),
        lower: Rational::one() - delta.recip(),
    })
}

/// `1 - 1/t^2` with `t` the largest root of the matching polynomial.
pub fn matching_baseline(hg: &Hypergraph) -> Result<f64> {
    require_edges(hg)?;
    let t = largest_root(hg, ROOT_TOLERANCE)?.midpoint();
    Ok(1.0 - 1.0 / (t * t))
}

/// Known critical densities: the golden ratio conjugate for `K_3`, and
/// `k/(k+1)` for `K_{k+1}^{(k)}` with `k >= 3`.
pub fn known_exact(hg: &Hypergraph) -> Option<BoundValue> {
    if !hg.is_complete() {
        return None;
    }
    match (hg.k(), hg.h()) {
        (2, 3) => Some(BoundValue::real(
            (5f64.sqrt() - 1.0) / 2.0,
            "Bondy et al. (2006): golden ratio for the triangle",
        )),
        (k, h) if k >= 3 && h == k + 1 => Some(BoundValue::rational(
            Rational::new(k.into(), (k + 1).into()),
            "Markström-Thomassen (2019): k/(k+1) for K_{k+1}^(k)",
        )),
        _ => None,
    }
}

/// Every applicable bound for a connected `H`, with consistency checks.
pub fn report(hg: &Hypergraph) -> Result<BoundsReport> {
    require_edges(hg)?;
    hg.require_connected()?;
    let (k, h) = (hg.k(), hg.h());
    let delta_disj = hg.max_disjoint_degree();
    let mut notes = vec![format!(
        "upper_alpha evaluates alpha at m = k-1 = {}, d = max disjoint degree = {delta_disj}: \
         each failed search step removes k-1 picks net, so run records are (k-1)-Dyck paths",
        k - 1
    )];
    if let Ok(a) = alpha(k, delta_disj) {
        notes.push(format!(
            "the alternative reading alpha(k, d) = {} would give {}",
            a.value,
            1.0 - 1.0 / (a.value * hg.max_degree() as f64)
        ));
    }

    let lower = BoundValue::rational(lower_bound(hg)?, "max-degree lower bound 1 - 1/Δ");
    let upper_alpha = match upper_alpha(hg) {
        Ok(v) => Some(BoundValue::real(
            v,
            "entropy compression, descent-capped records: 1 - 1/(alpha(k-1, Δ_disj) Δ)",
        )),
        Err(Error::Precondition(reason)) => {
            notes.push(format!("upper_alpha not applicable: {reason}"));
            None
        }
        Err(e) => return Err(e),
    };
    let upper_beta = upper_beta(hg)?.map(|v| {
        BoundValue::real(
            v,
            "entropy compression along a skeleton tree, height-capped records: \
             1 - 1/(beta(k-1, h-1)(Δ-1))",
        )
    });
    if upper_beta.is_none() {
        notes.push("upper_beta not applicable: H is regular".into());
    }
    let upper_complete = if hg.is_complete() && h > k && h - k < k {
        let c = upper_complete(k, h - k)?;
        Some(BoundValue::rational(
            c.upper,
            "entropy compression on complete k-graphs: 1 - 1/((l+1)Δ)",
        ))
    } else {
        None
    };
    let baseline_matching = if k == 2 {
        Some(BoundValue::real(
            matching_baseline(hg)?,
            "Csikvári-Nagy (2012): 1 - 1/t(H)^2, t the largest matching polynomial root",
        ))
    } else {
        None
    };
    let known_exact = known_exact(hg);

    let report = BoundsReport {
        k,
        h,
        max_degree: hg.max_degree(),
        max_disjoint_degree: delta_disj,
        is_regular: hg.is_regular(),
        lower,
        upper_alpha,
        upper_beta,
        upper_complete,
        baseline_matching,
        known_exact,
        notes,
    };
    check_order(&report)?;
    Ok(report)
}

fn check_order(r: &BoundsReport) -> Result<()> {
    for u in r.uppers() {
        if r.lower.value > u.value + BOUND_TOLERANCE {
            return Err(Error::InconsistentBounds(format!(
                "lower bound {} exceeds {} ({})",
                r.lower.value, u.value, u.source
            )));
        }
    }
    if let Some(x) = &r.known_exact {
        if r.lower.value > x.value + BOUND_TOLERANCE {
            return Err(Error::InconsistentBounds(format!(
                "lower bound {} exceeds the known value {}",
                r.lower.value, x.value
            )));
        }
        if let Some(best) = r.best_upper() {
            if x.value > best + BOUND_TOLERANCE {
                return Err(Error::InconsistentBounds(format!(
                    "known value {} exceeds the upper bound {best}",
                    x.value
                )));
            }
        }
    }
    Ok(())
}
