//! Partial m-Dyck paths: lattice paths in the upper half-plane made of
//! rises `(1, 1)` and m-falls `(1, -m)`.
//!
//! Paths are written as strings over `U` (rise) and `F` (fall).

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Rise,
    Fall,
}

/// An optional cap on height or maximum descent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    AtMost(usize),
}

impl Bound {
    pub fn allows(self, value: usize) -> bool {
        match self {
            Bound::Unbounded => true,
            Bound::AtMost(b) => value <= b,
        }
    }
}

impl From<Option<usize>> for Bound {
    fn from(v: Option<usize>) -> Self {
        v.map_or(Bound::Unbounded, Bound::AtMost)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckPath {
    m: usize,
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates that the path never drops below level 0.
    pub fn new(m: usize, steps: Vec<Step>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("fall size must be at least 1".into()));
        }
        let mut level = 0usize;
        for (i, s) in steps.iter().enumerate() {
            level = match s {
                Step::Rise => level + 1,
                Step::Fall => level.checked_sub(m).ok_or_else(|| {
                    Error::Precondition(format!("step {} drops below level 0", i + 1))
                })?,
            };
        }
        Ok(DyckPath { m, steps })
    }

    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::Rise),
                'F' => Ok(Step::Fall),
                other => Err(Error::Precondition(format!("unknown step {other:?}"))),
            })
            .collect::<Result<_>>()?;
        DyckPath::new(m, steps)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Level after each step.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = 0;
        self.steps
            .iter()
            .map(|s| {
                level = match s {
                    Step::Rise => level + 1,
                    Step::Fall => level - self.m,
                };
                level
            })
            .collect()
    }

    pub fn end_level(&self) -> usize {
        self.levels().last().copied().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    /// Longest run of consecutive falls.
    pub fn max_descent(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for s in &self.steps {
            if *s == Step::Fall {
                run += 1;
                best = best.max(run);
            } else {
                run = 0;
            }
        }
        best
    }

    /// Length of the trailing run of falls.
    pub fn trailing_falls(&self) -> usize {
        self.steps
            .iter()
            .rev()
            .take_while(|&&s| s == Step::Fall)
            .count()
    }

    pub fn falls(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::Fall).count()
    }

    pub fn is_full(&self) -> bool {
        self.end_level() == 0
    }

    /// Membership in `D_m(s, l, h, d)` for this path's own length `s`.
    pub fn satisfies(&self, end: usize, height: Bound, descent: Bound) -> bool {
        self.end_level() == end
            && height.allows(self.height())
            && descent.allows(self.max_descent())
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Rise => "U",
                Step::Fall => "F",
            })?;
        }
        Ok(())
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Precondition("fall size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `|D_m(s, l, h, d)|`: partial m-Dyck paths of length `s` ending at level
/// `end`, with height at most `height` and maximum descent at most `descent`.
///
/// Dynamic programme over (level, length of the current fall run); the run
/// length is only tracked when the descent is capped.
pub fn count_paths(
    m: usize,
    len: usize,
    end: usize,
    height: Bound,
    descent: Bound,
) -> Result<BigUint> {
    check_m(m)?;
    let top = match height {
        Bound::Unbounded => len,
        Bound::AtMost(h) => h.min(len),
    };
    let runs = match descent {
        Bound::Unbounded => 1,
        Bound::AtMost(d) => d + 1,
    };
    let idx = |level: usize, run: usize| level * runs + run;
    let mut cur = vec![BigUint::zero(); (top + 1) * runs];
    cur[0] = BigUint::from(1u32);
    for _ in 0..len {
        let mut next = vec![BigUint::zero(); (top + 1) * runs];
        for level in 0..=top {
            for run in 0..runs {
                let c = &cur[idx(level, run)];
                if c.is_zero() {
                    continue;
                }
                if level < top {
                    next[idx(level + 1, 0)] += c;
                }
                if level >= m {
                    let next_run = match descent {
                        Bound::Unbounded => Some(0),
                        Bound::AtMost(d) => (run < d).then_some(run + 1),
                    };
                    if let Some(r) = next_run {
                        next[idx(level - m, r)] += c;
                    }
                }
            }
        }
        cur = next;
    }
    if end > top {
        return Ok(BigUint::zero());
    }
    Ok((0..runs).map(|r| &cur[idx(end, r)]).sum())
}

/// Every path of `D_m(s, l, h, d)` in lexicographic order with rises first.
///
/// Fails when the set has more than `guard` members.
pub fn enumerate_paths(
    m: usize,
    len: usize,
    end: usize,
    height: Bound,
    descent: Bound,
    guard: u64,
) -> Result<Vec<DyckPath>> {
    let total = count_paths(m, len, end, height, descent)?;
    if total > BigUint::from(guard) {
        return Err(Error::GuardExceeded {
            needed: total.to_string(),
            guard,
        });
    }
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut steps = Vec::with_capacity(len);
    let search = Enumeration {
        m,
        len,
        end,
        height,
        descent,
    };
    search.walk(&mut steps, 0, 0, &mut out);
    Ok(out)
}

struct Enumeration {
    m: usize,
    len: usize,
    end: usize,
    height: Bound,
    descent: Bound,
}

impl Enumeration {
    fn walk(&self, steps: &mut Vec<Step>, level: usize, run: usize, out: &mut Vec<DyckPath>) {
        let left = self.len - steps.len();
        if left == 0 {
            if level == self.end {
                out.push(DyckPath {
                    m: self.m,
                    steps: steps.clone(),
                });
            }
            return;
        }
        // the end level must stay reachable
        if level + left < self.end || level > self.end + self.m * left {
            return;
        }
        if self.height.allows(level + 1) {
            steps.push(Step::Rise);
            self.walk(steps, level + 1, 0, out);
            steps.pop();
        }
        if level >= self.m && self.descent.allows(run + 1) {
            steps.push(Step::Fall);
            self.walk(steps, level - self.m, run + 1, out);
            steps.pop();
        }
    }
}

/// Number of full m-Dyck paths with `t` falls under the given caps.
pub fn count_full(m: usize, t: usize, height: Bound, descent: Bound) -> Result<BigUint> {
    count_paths(m, t * (m + 1), 0, height, descent)
}

/// The fixed suffix appended by [`extend_to_full`] to every path of
/// `D_m(s, l, h, d)`. It depends on `(m, l, h, d)` only.
pub fn completion_suffix(m: usize, end: usize, height: usize, descent: usize) -> Result<Vec<Step>> {
    check_m(m)?;
    if height < m {
        return Err(Error::Precondition(format!(
            "height {height} < fall size {m}"
        )));
    }
    if end < 1 || descent < 1 {
        return Err(Error::Precondition(
            "end level and descent cap must be at least 1".into(),
        ));
    }
    if m.max(descent) < 2 {
        return Err(Error::Precondition("need max(d, m) >= 2".into()));
    }
    if end > height {
        return Err(Error::Precondition(format!(
            "end level {end} above height {height}"
        )));
    }

    let greedy = |from: usize| -> Vec<Step> {
        let mut out = Vec::new();
        let mut level = from;
        if m >= 2 {
            while level >= m {
                out.push(Step::Fall);
                level -= m;
                if level > 0 {
                    out.push(Step::Rise);
                    level += 1;
                }
            }
            if level > 0 {
                out.extend(std::iter::repeat_n(Step::Rise, m - level));
                out.push(Step::Fall);
            }
        } else {
            while level >= 2 {
                out.extend([Step::Fall, Step::Fall]);
                level -= 2;
                if level > 0 {
                    out.push(Step::Rise);
                    level += 1;
                }
            }
            if level == 1 {
                out.push(Step::Fall);
            }
        }
        out
    };

    let plain = greedy(end);
    let leading_falls = plain.iter().take_while(|&&s| s == Step::Fall).count();
    // A path ending at `end` can finish with at most (height - end) / m falls.
    let worst_trailing = (height - end) / m;
    if worst_trailing + leading_falls <= descent {
        return Ok(plain);
    }
    // end < height here: a path at the height cap ends with a rise.
    let mut suffix = vec![Step::Rise];
    suffix.extend(greedy(end + 1));
    Ok(suffix)
}

/// Completes a path of `D_m(s, l, h, d)` to a full path of height at most `h`
/// and maximum descent at most `d`, appending at most `4h` steps.
///
/// The appended suffix depends only on `(m, l, h, d)`, so the map is
/// injective on each `D_m(s, l, h, d)`.
pub fn extend_to_full(path: &DyckPath, height: usize, descent: usize) -> Result<DyckPath> {
    if path.is_empty() {
        return Err(Error::Precondition(
            "path must have at least one step".into(),
        ));
    }
    if !path.satisfies(
        path.end_level(),
        Bound::AtMost(height),
        Bound::AtMost(descent),
    ) {
        return Err(Error::Precondition(format!(
            "path {path} exceeds height {height} or descent {descent}"
        )));
    }
    let suffix = completion_suffix(path.m(), path.end_level(), height, descent)?;
    let mut steps = path.steps().to_vec();
    steps.extend(suffix);
    DyckPath::new(path.m(), steps)
}

/// `(l + 1)^t`: the number of partial (k-1)-Dyck paths of length
/// `tk + k - 1` and height at most `k + l - 1`.
pub fn complete_record_count(k: usize, l: usize, t: usize) -> Result<BigUint> {
    if k < 2 || l < 1 || l >= k {
        return Err(Error::Precondition(format!(
            "need 1 <= l < k, got k={k}, l={l}"
        )));
    }
    Ok(BigUint::from(l + 1).pow(t as u32))
}

/// Dynamic-programming count for [`complete_record_count`], summed over all
/// end levels.
pub fn complete_record_count_dp(k: usize, l: usize, t: usize) -> Result<BigUint> {
    complete_record_count(k, l, t)?;
    let len = t * k + k - 1;
    let cap = k + l - 1;
    let mut total = BigUint::zero();
    for end in 0..=cap {
        total += count_paths(k - 1, len, end, Bound::AtMost(cap), Bound::Unbounded)?;
    }
    Ok(total)
}

/// [`complete_record_count`] with the dynamic-programming cross-check.
pub fn complete_record_count_checked(k: usize, l: usize, t: usize) -> Result<BigUint> {
    let closed = complete_record_count(k, l, t)?;
    let dp = complete_record_count_dp(k, l, t)?;
    if closed != dp {
        return Err(Error::Precondition(format!(
            "closed form {closed} disagrees with path count {dp} at k={k}, l={l}, t={t}"
        )));
    }
    Ok(closed)
}

/// Constraint for [`growth_ratio`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    Height(usize),
    Descent(usize),
}

/// `N_t / N_{t-1}` for `t = 1..=t_max`, where `N_t` counts full m-Dyck paths
/// with `t` falls under the constraint. Entry `t - 1` holds the ratio at `t`;
/// it is NaN when `N_{t-1} = 0`.
pub fn growth_ratio(m: usize, mode: GrowthMode, t_max: usize) -> Result<Vec<f64>> {
    if t_max < 3 {
        return Err(Error::Precondition("t_max must be at least 3".into()));
    }
    let (height, descent) = match mode {
        GrowthMode::Height(h) => (Bound::AtMost(h), Bound::Unbounded),
        GrowthMode::Descent(d) => (Bound::Unbounded, Bound::AtMost(d)),
    };
    let counts = (0..=t_max)
        .map(|t| count_full(m, t, height, descent))
        .collect::<Result<Vec<_>>>()?;
    Ok(counts.windows(2).map(|w| ratio(&w[1], &w[0])).collect())
}

fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return f64::NAN;
    }
    // keep 64 significant bits of each before dividing
    let shift = a.bits().max(b.bits()).saturating_sub(64);
    let a = (a >> shift).to_f64().unwrap_or(f64::NAN);
    let b = (b >> shift).to_f64().unwrap_or(f64::NAN);
    a / b
}
