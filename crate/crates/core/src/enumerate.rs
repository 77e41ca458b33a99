//! Exhaustive enumeration of magic borders with prescribed upper corners.
//!
//! Once `v` and `w` are fixed, every other diagram row contributes exactly
//! one value, either to the top row (a `b`) or to the left column (a `c`).
//! The search runs in two stages: first it picks the `n` rows that feed the
//! top row together with their sides, so that `Σb = S - v - w`; then it picks
//! a side for each remaining row so that `Σc = S - v - w̄`. Both stages prune
//! with interval bounds on the sums still reachable from the undecided rows.
//!
//! Each assignment yields a distinct border, so emission needs no dedup.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numbers::{InnerOrder, Side};
use crate::plan::CanonicalBorder;

/// `Ω^n_{v,w}`: borders of inner order `n` with upper corners `v` and `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaKey {
    pub n: InnerOrder,
    pub v: i64,
    pub w: i64,
}

impl OmegaKey {
    pub fn new(n: InnerOrder, v: i64, w: i64) -> Result<Self> {
        n.check(v)?;
        n.check(w)?;
        if v == w {
            return Err(Error::InvalidCorners {
                v,
                w,
                reason: "corners must differ".into(),
            });
        }
        if v + w == n.complement_base() {
            return Err(Error::InvalidCorners {
                v,
                w,
                reason: "corners must not be complementary".into(),
            });
        }
        Ok(Self { n, v, w })
    }
}

/// Limits on a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: Option<u64>,
    pub solutions: Option<usize>,
    pub time: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_solutions(mut self, limit: usize) -> Self {
        self.solutions = Some(limit.max(1));
        self
    }

    pub fn with_nodes(mut self, limit: u64) -> Self {
        self.nodes = Some(limit.max(1));
        self
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.time = Some(limit);
        self
    }
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The whole space was explored.
    Complete,
    /// Stopped after reaching the solution limit (or at the caller's request).
    Stopped,
    /// The node or time limit ran out first; results are partial.
    Exhausted { nodes: u64 },
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub borders: Vec<CanonicalBorder>,
    pub outcome: Outcome,
    pub nodes: u64,
}

/// Per-line search state for the rows still to be decided. `rows` is sorted
/// ascending; `prefix[i]` is the sum of `rows[..i]`.
struct Rows {
    rows: Vec<usize>,
    prefix: Vec<i64>,
}

impl Rows {
    fn new(rows: Vec<usize>) -> Self {
        let mut prefix = Vec::with_capacity(rows.len() + 1);
        prefix.push(0);
        for &r in &rows {
            prefix.push(prefix.last().unwrap() + r as i64);
        }
        Self { rows, prefix }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Sum of the `k` smallest rows at positions `from..`.
    #[inline]
    fn small(&self, from: usize, k: usize) -> i64 {
        self.prefix[from + k] - self.prefix[from]
    }

    /// Sum of the `k` largest rows at positions `from..`.
    #[inline]
    fn large(&self, k: usize) -> i64 {
        let len = self.len();
        self.prefix[len] - self.prefix[len - k]
    }

    /// Whether `target` can be the sum of `k` values taken from distinct rows
    /// at positions `from..`, each row giving `i` or `cb - i`. Relaxed: rows
    /// used as left and as right values may overlap in the estimate.
    fn reachable(&self, from: usize, k: usize, target: i64, cb: i64) -> bool {
        let avail = self.len() - from;
        if k > avail {
            return false;
        }
        (0..=k).any(|r| {
            let lo = r as i64 * cb - self.large(r) + self.small(from, k - r);
            let hi = r as i64 * cb - self.small(from, r) + self.large(k - r);
            lo <= target && target <= hi
        })
    }
}

struct Search<'a, F> {
    key: OmegaKey,
    cb: i64,
    free: Rows,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    found: usize,
    exhausted: bool,
    stopped: bool,
    // stage 1 state
    b_rows: Vec<(usize, Side)>,
    c_rows: Vec<usize>,
    // stage 2 state
    c_sides: Vec<Side>,
    visit: &'a mut F,
}

impl<F> Search<'_, F>
where
    F: FnMut(CanonicalBorder) -> ControlFlow<()>,
{
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(limit) = self.budget.nodes {
            if self.nodes > limit {
                self.exhausted = true;
            }
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(t) = self.budget.time {
                if self.started.elapsed() > t {
                    self.exhausted = true;
                }
            }
        }
        !self.exhausted && !self.stopped
    }

    fn top(&mut self, pos: usize, need: usize, rest: i64) {
        if !self.tick() {
            return;
        }
        let n = self.key.n.get();
        if pos == self.free.len() {
            if need == 0 && rest == 0 {
                self.left_stage();
            }
            return;
        }
        if !self.free.reachable(pos, need, rest, self.cb) {
            return;
        }
        let row = self.free.rows[pos];
        if need > 0 {
            for side in [Side::Left, Side::Right] {
                let x = self.key.n.value(row, side);
                self.b_rows.push((row, side));
                self.top(pos + 1, need - 1, rest - x);
                self.b_rows.pop();
                if self.exhausted || self.stopped {
                    return;
                }
            }
        }
        if self.c_rows.len() < n {
            self.c_rows.push(row);
            self.top(pos + 1, need, rest);
            self.c_rows.pop();
        }
    }

    fn left_stage(&mut self) {
        let n = self.key.n;
        let s = n.outer_constant();
        let w_bar = self.cb - self.key.w;
        let target = s - self.key.v - w_bar;
        let rows = Rows::new(self.c_rows.clone());
        self.left(&rows, 0, target);
    }

    fn left(&mut self, rows: &Rows, pos: usize, rest: i64) {
        if !self.tick() {
            return;
        }
        let k = rows.len() - pos;
        if k == 0 {
            if rest == 0 {
                self.emit(rows);
            }
            return;
        }
        if !rows.reachable(pos, k, rest, self.cb) {
            return;
        }
        let row = rows.rows[pos];
        for side in [Side::Left, Side::Right] {
            let x = self.key.n.value(row, side);
            self.c_sides.push(side);
            self.left(rows, pos + 1, rest - x);
            self.c_sides.pop();
            if self.exhausted || self.stopped {
                return;
            }
        }
    }

    fn emit(&mut self, rows: &Rows) {
        let n = self.key.n;
        let border = CanonicalBorder {
            n,
            v: self.key.v,
            w: self.key.w,
            b: self.b_rows.iter().map(|&(r, s)| n.value(r, s)).collect(),
            c: rows
                .rows
                .iter()
                .zip(&self.c_sides)
                .map(|(&r, &s)| n.value(r, s))
                .collect(),
        };
        self.found += 1;
        if (self.visit)(border).is_break() {
            self.stopped = true;
        }
        if let Some(limit) = self.budget.solutions {
            if self.found >= limit {
                self.stopped = true;
            }
        }
    }
}

/// Streams every border in `Ω^n_{v,w}` to `visit`, in a deterministic order.
/// Returning `Break` from `visit` stops the search.
pub fn for_each_border<F>(key: OmegaKey, budget: SearchBudget, mut visit: F) -> (Outcome, u64)
where
    F: FnMut(CanonicalBorder) -> ControlFlow<()>,
{
    let n = key.n;
    let (rv, _) = n.locate(key.v).expect("key corners are pool values");
    let (rw, _) = n.locate(key.w).expect("key corners are pool values");
    let free: Vec<usize> = (1..=n.rows()).filter(|&r| r != rv && r != rw).collect();
    let mut search = Search {
        key,
        cb: n.complement_base(),
        free: Rows::new(free),
        budget,
        started: Instant::now(),
        nodes: 0,
        found: 0,
        exhausted: false,
        stopped: false,
        b_rows: Vec::with_capacity(n.get()),
        c_rows: Vec::with_capacity(n.get()),
        c_sides: Vec::with_capacity(n.get()),
        visit: &mut visit,
    };
    let target = n.outer_constant() - key.v - key.w;
    search.top(0, n.get(), target);
    let outcome = if search.exhausted {
        Outcome::Exhausted {
            nodes: search.nodes,
        }
    } else if search.stopped {
        Outcome::Stopped
    } else {
        Outcome::Complete
    };
    (outcome, search.nodes)
}

/// Collects `Ω^n_{v,w}` (or its first `budget.solutions` members).
pub fn enumerate_omega(key: OmegaKey, budget: SearchBudget) -> Enumeration {
    let mut borders = Vec::new();
    let (outcome, nodes) = for_each_border(key, budget, |b| {
        borders.push(b);
        ControlFlow::Continue(())
    });
    Enumeration {
        borders,
        outcome,
        nodes,
    }
}

/// Which corner pairs [`count_omega`] covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CornerScope {
    /// `v, w ∈ 1..=2n+2`.
    #[default]
    Small,
    /// Every pair of distinct, non-complementary pool values.
    Full,
}

/// Exact number of borders per corner pair, at the level of
/// [`CanonicalBorder`]s. Multiply by `(n!)²` for ordered borders.
pub fn count_omega(
    n: InnerOrder,
    scope: CornerScope,
    budget: SearchBudget,
) -> Result<BTreeMap<(i64, i64), u64>> {
    let values: Vec<i64> = match scope {
        CornerScope::Small => (1..=n.rows() as i64).collect(),
        CornerScope::Full => crate::numbers::border_pool(n),
    };
    let keys: Vec<OmegaKey> = values
        .iter()
        .flat_map(|&v| values.iter().map(move |&w| (v, w)))
        .filter_map(|(v, w)| OmegaKey::new(n, v, w).ok())
        .collect();
    let counted: Vec<Result<((i64, i64), u64)>> = keys
        .par_iter()
        .map(|&key| {
            let mut count = 0u64;
            let (outcome, _) = for_each_border(key, budget, |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            match outcome {
                Outcome::Exhausted { nodes } => Err(Error::BudgetExhausted { nodes }),
                _ => Ok(((key.v, key.w), count)),
            }
        })
        .collect();
    counted.into_iter().collect()
}

/// First border of `Ω^n_{v,w}` in search order.
///
/// At even `n`, corners whose reductions to `1..=2n+2` share a parity are
/// rejected up front; an empty search for feasible corners is reported as
/// [`Error::NoSolution`], which would contradict the parity criterion.
pub fn search_first(key: OmegaKey) -> Result<CanonicalBorder> {
    if key.n.is_even() {
        crate::corners::check_feasible(key.n, key.v, key.w)?;
    }
    let mut first = None;
    let (outcome, _) = for_each_border(key, SearchBudget::unlimited().with_solutions(1), |b| {
        first = Some(b);
        ControlFlow::Break(())
    });
    match (first, outcome) {
        (Some(b), _) => Ok(b),
        (None, Outcome::Exhausted { nodes }) => Err(Error::BudgetExhausted { nodes }),
        (None, _) => Err(Error::NoSolution {
            n: key.n.get(),
            v: key.v,
            w: key.w,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_border;
    use std::collections::BTreeSet;

    fn key(n: usize, v: i64, w: i64) -> OmegaKey {
        OmegaKey::new(InnerOrder::new(n).unwrap(), v, w).unwrap()
    }

    /// Plain enumeration over all side/tag assignments, no pruning.
    fn brute_force(key: OmegaKey) -> BTreeSet<CanonicalBorder> {
        let n = key.n;
        let (rv, _) = n.locate(key.v).unwrap();
        let (rw, _) = n.locate(key.w).unwrap();
        let free: Vec<usize> = (1..=n.rows()).filter(|&r| r != rv && r != rw).collect();
        let mut out = BTreeSet::new();
        let total = 4u64.pow(free.len() as u32);
        for code in 0..total {
            let (mut b, mut c) = (BTreeSet::new(), BTreeSet::new());
            let mut k = code;
            for &r in &free {
                let side = if k & 1 == 0 { Side::Left } else { Side::Right };
                let x = n.value(r, side);
                if k & 2 == 0 {
                    b.insert(x)
                } else {
                    c.insert(x)
                };
                k >>= 2;
            }
            let cand = CanonicalBorder {
                n,
                v: key.v,
                w: key.w,
                b,
                c,
            };
            if verify_border(&cand.to_plan()).valid {
                out.insert(cand);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_at_order_three() {
        for (v, w) in [(1, 2), (1, 3), (2, 7), (5, 20), (8, 19)] {
            let k = key(3, v, w);
            let fast: BTreeSet<_> = enumerate_omega(k, SearchBudget::unlimited())
                .borders
                .into_iter()
                .collect();
            assert_eq!(fast, brute_force(k), "corners ({v}, {w})");
        }
    }

    #[test]
    fn matches_brute_force_at_order_four() {
        for (v, w) in [(1, 2), (1, 3), (9, 10), (36, 4)] {
            let k = key(4, v, w);
            let e = enumerate_omega(k, SearchBudget::unlimited());
            assert_eq!(e.outcome, Outcome::Complete);
            let fast: BTreeSet<_> = e.borders.iter().cloned().collect();
            assert_eq!(fast.len(), e.borders.len(), "duplicate emission");
            assert_eq!(fast, brute_force(k), "corners ({v}, {w})");
        }
    }

    #[test]
    fn same_parity_is_empty() {
        let e = enumerate_omega(key(4, 1, 3), SearchBudget::unlimited());
        assert_eq!(e.outcome, Outcome::Complete);
        assert!(e.borders.is_empty());
    }

    #[test]
    fn table_members_are_found() {
        let e = enumerate_omega(key(4, 1, 2), SearchBudget::unlimited());
        let want = crate::plan::BorderPlan::new(
            InnerOrder::new(4).unwrap(),
            1,
            2,
            vec![34, 33, 32, 9],
            vec![6, 30, 29, 10],
        )
        .canonical();
        assert!(e.borders.contains(&want));
        let e = enumerate_omega(key(4, 9, 10), SearchBudget::unlimited());
        let want = crate::plan::BorderPlan::new(
            InnerOrder::new(4).unwrap(),
            9,
            10,
            vec![1, 32, 30, 29],
            vec![2, 34, 33, 6],
        )
        .canonical();
        assert!(e.borders.contains(&want));
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let e = enumerate_omega(key(6, 1, 2), SearchBudget::unlimited().with_nodes(10));
        assert!(matches!(e.outcome, Outcome::Exhausted { .. }));
        let e = enumerate_omega(key(4, 1, 2), SearchBudget::unlimited().with_solutions(1));
        assert_eq!(e.outcome, Outcome::Stopped);
        assert_eq!(e.borders.len(), 1);
    }

    #[test]
    fn deterministic_order() {
        let a = enumerate_omega(key(4, 5, 6), SearchBudget::unlimited()).borders;
        let b = enumerate_omega(key(4, 5, 6), SearchBudget::unlimited()).borders;
        assert_eq!(a, b);
    }

    #[test]
    fn search_first_cases() {
        let b = search_first(key(6, 1, 2)).unwrap();
        assert!(verify_border(&b.to_plan()).valid);
        let b = search_first(key(4, 5, 6)).unwrap();
        assert!(verify_border(&b.to_plan()).valid);
        assert!(matches!(
            search_first(key(4, 2, 4)),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn key_validation() {
        let n = InnerOrder::new(4).unwrap();
        assert!(OmegaKey::new(n, 1, 1).is_err());
        assert!(OmegaKey::new(n, 1, 36).is_err());
        assert!(OmegaKey::new(n, 1, 11).is_err());
    }
}
