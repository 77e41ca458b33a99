//! Magic conditions for borders, squares and bordered squares.
//!
//! Every check collects all violations instead of stopping at the first one.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::construct::{PairLine, PairingScheme};
use crate::error::{Error, Result};
use crate::plan::{BorderFrame, BorderPlan, MagicSquare};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// A line of the border plan has the wrong number of entries.
    LineLength,
    /// A value lies outside the border pool.
    OutOfPool,
    /// A value appears more than once.
    Duplicate,
    /// A value and its complement are both selected.
    ComplementClash,
    RowSum,
    ColumnSum,
    DiagonalSum,
    /// Paired deviations of the top row do not balance.
    TopBalance,
    /// Paired deviations of the left column do not balance.
    LeftBalance,
    /// A square is not a permutation of `1..=N²`.
    NotPermutation,
    /// Cells opposite each other in a frame are not complementary.
    OppositeCells,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::LineLength => "line_length",
            Condition::OutOfPool => "out_of_pool",
            Condition::Duplicate => "duplicate",
            Condition::ComplementClash => "complement_clash",
            Condition::RowSum => "row_sum",
            Condition::ColumnSum => "column_sum",
            Condition::DiagonalSum => "diagonal_sum",
            Condition::TopBalance => "top_balance",
            Condition::LeftBalance => "left_balance",
            Condition::NotPermutation => "not_permutation",
            Condition::OppositeCells => "opposite_cells",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "at")]
pub enum Location {
    /// Top row of a border: `v, b…, w`.
    TopRow,
    /// Left column of a border: `v, c…, w̄`.
    LeftColumn,
    /// Entries of the named line list (`"b"` or `"c"`).
    Line(&'static str),
    Value(i64),
    Row(usize),
    Column(usize),
    MainDiagonal,
    AntiDiagonal,
    Cell(usize, usize),
    Square,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::TopRow => write!(f, "top row"),
            Location::LeftColumn => write!(f, "left column"),
            Location::Line(name) => write!(f, "{name} list"),
            Location::Value(x) => write!(f, "value {x}"),
            Location::Row(r) => write!(f, "row {r}"),
            Location::Column(c) => write!(f, "column {c}"),
            Location::MainDiagonal => write!(f, "main diagonal"),
            Location::AntiDiagonal => write!(f, "anti-diagonal"),
            Location::Cell(r, c) => write!(f, "cell ({r}, {c})"),
            Location::Square => write!(f, "square"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub location: Location,
    /// Order of the concentric subsquare, for layered checks.
    pub layer: Option<usize>,
    pub expected: Option<i64>,
    pub actual: Option<i64>,
}

impl Violation {
    fn new(condition: Condition, location: Location) -> Self {
        Self {
            condition,
            location,
            layer: None,
            expected: None,
            actual: None,
        }
    }

    fn sum(condition: Condition, location: Location, expected: i64, actual: i64) -> Self {
        Self {
            expected: Some(expected),
            actual: Some(actual),
            ..Self::new(condition, location)
        }
    }

    fn in_layer(mut self, m: usize) -> Self {
        self.layer = Some(m);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition.id())?;
        if let Some(m) = self.layer {
            write!(f, " [layer {m}]")?;
        }
        write!(f, " at {}", self.location)?;
        match (self.expected, self.actual) {
            (Some(e), Some(a)) => write!(f, ": expected {e}, got {a}"),
            (None, Some(a)) => write!(f, ": got {a}"),
            _ => Ok(()),
        }
    }
}

/// Outcome of a check. `valid` holds exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        write!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn structural(plan: &BorderPlan, out: &mut Vec<Violation>) {
    let n = plan.n;
    for (name, line) in [("b", &plan.b), ("c", &plan.c)] {
        if line.len() != n.get() {
            out.push(Violation::sum(
                Condition::LineLength,
                Location::Line(name),
                n.get() as i64,
                line.len() as i64,
            ));
        }
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for x in plan.selected() {
        *counts.entry(x).or_default() += 1;
    }
    for &x in counts.keys() {
        if !n.contains(x) {
            out.push(Violation::new(Condition::OutOfPool, Location::Value(x)));
        }
    }
    for (&x, &k) in &counts {
        if k > 1 {
            let mut v = Violation::new(Condition::Duplicate, Location::Value(x));
            v.actual = Some(k as i64);
            out.push(v);
        }
    }
    let c = n.complement_base();
    for &x in counts.keys() {
        if 2 * x < c && counts.contains_key(&(c - x)) {
            let mut v = Violation::new(Condition::ComplementClash, Location::Value(x));
            v.actual = Some(c - x);
            out.push(v);
        }
    }
}

/// Checks that a plan is a magic border: the right number of distinct pool
/// values, no two complementary, and both the top row and the left column
/// summing to the magic constant of order `n + 2`. The bottom row and right
/// column follow by complementation.
pub fn verify_border(plan: &BorderPlan) -> CheckReport {
    let mut out = Vec::new();
    structural(plan, &mut out);
    let target = plan.n.outer_constant();
    let top = plan.top_sum();
    if top != target {
        out.push(Violation::sum(
            Condition::RowSum,
            Location::TopRow,
            target,
            top,
        ));
    }
    let left = plan.left_sum();
    if left != target {
        out.push(Violation::sum(
            Condition::ColumnSum,
            Location::LeftColumn,
            target,
            left,
        ));
    }
    CheckReport::from_violations(out)
}

/// Checks a frame as laid out: the plan read from its top row and left
/// column must be a magic border, and every bottom and right cell must hold
/// the complement of the cell opposite it.
pub fn verify_frame(frame: &BorderFrame) -> CheckReport {
    let mut out = verify_border(&frame.to_plan()).violations;
    let m = frame.size();
    let total = frame.n.complement_base();
    let last = m - 1;
    let pairs = [((0, 0), (last, last)), ((0, last), (last, 0))]
        .into_iter()
        .chain((1..last).map(|c| ((0, c), (last, c))))
        .chain((1..last).map(|r| ((r, 0), (r, last))));
    for ((r, c), (or, oc)) in pairs {
        if let (Some(x), Some(y)) = (frame.get(r, c), frame.get(or, oc)) {
            if x + y != total {
                out.push(Violation::sum(
                    Condition::OppositeCells,
                    Location::Cell(or, oc),
                    total,
                    x + y,
                ));
            }
        }
    }
    CheckReport::from_violations(out)
}

fn sorted(mut xs: Vec<i64>) -> Vec<i64> {
    xs.sort_unstable();
    xs
}

/// Checks the paired-deviation form of the magic conditions.
///
/// Even `n`: the top pairs cover `b ∪ {v, w}` and must sum to 0; the left
/// pairs cover `c` and must sum to `-d(v, w̄)`. Odd `n`: the top pairs cover
/// `b ∪ {w}`, the left pairs cover `c ∪ {w̄}`, and both must sum to
/// `C/2 - v`. Fails only when the pairing does not cover those sets.
pub fn verify_balance(plan: &BorderPlan, pairing: &PairingScheme) -> Result<CheckReport> {
    let n = plan.n;
    let cb = n.complement_base();
    let w_bar = cb - plan.w;

    let (mut top_need, mut left_need) = (plan.b.clone(), plan.c.clone());
    if n.is_even() {
        top_need.extend([plan.v, plan.w]);
    } else {
        top_need.push(plan.w);
        left_need.push(w_bar);
    }

    let members = |line: PairLine| -> Vec<i64> {
        pairing
            .pairs
            .iter()
            .filter(|p| p.line == line)
            .flat_map(|p| [p.first, p.second])
            .collect()
    };
    let (top_have, left_have) = (members(PairLine::Top), members(PairLine::Left));
    if sorted(top_have) != sorted(top_need) {
        return Err(Error::InvalidPairing(
            "top pairs do not cover the top-row set".into(),
        ));
    }
    if sorted(left_have) != sorted(left_need) {
        return Err(Error::InvalidPairing(
            "left pairs do not cover the left-column set".into(),
        ));
    }

    let mut out = Vec::new();
    structural(plan, &mut out);

    let dsum = |line: PairLine| -> i64 {
        pairing
            .pairs
            .iter()
            .filter(|p| p.line == line)
            .map(|p| p.first + p.second - cb)
            .sum()
    };
    let (top_target, left_target) = if n.is_even() {
        (0, -(plan.v + w_bar - cb))
    } else {
        // -d_corner(v); C is even at odd n
        (cb / 2 - plan.v, cb / 2 - plan.v)
    };
    let top = dsum(PairLine::Top);
    if top != top_target {
        out.push(Violation::sum(
            Condition::TopBalance,
            Location::TopRow,
            top_target,
            top,
        ));
    }
    let left = dsum(PairLine::Left);
    if left != left_target {
        out.push(Violation::sum(
            Condition::LeftBalance,
            Location::LeftColumn,
            left_target,
            left,
        ));
    }
    Ok(CheckReport::from_violations(out))
}

fn permutation_violations(sq: &MagicSquare, out: &mut Vec<Violation>) {
    let nn = (sq.order() * sq.order()) as i64;
    let mut seen = vec![0usize; nn as usize + 1];
    for (idx, &x) in sq.cells().iter().enumerate() {
        if (1..=nn).contains(&x) {
            seen[x as usize] += 1;
        } else {
            let (r, c) = (idx / sq.order(), idx % sq.order());
            let mut v = Violation::new(Condition::NotPermutation, Location::Cell(r, c));
            v.actual = Some(x);
            out.push(v);
        }
    }
    for (x, &k) in seen.iter().enumerate().skip(1) {
        if k > 1 {
            let mut v = Violation::new(Condition::Duplicate, Location::Value(x as i64));
            v.actual = Some(k as i64);
            out.push(v);
        }
    }
}

/// Line-sum violations of the `m × m` subsquare at offset `k`.
fn line_violations(sq: &MagicSquare, k: usize, m: usize, target: i64, out: &mut Vec<Violation>) {
    let at = |r: usize, c: usize| sq.get(k + r, k + c);
    for r in 0..m {
        let s: i64 = (0..m).map(|c| at(r, c)).sum();
        if s != target {
            out.push(Violation::sum(
                Condition::RowSum,
                Location::Row(k + r),
                target,
                s,
            ));
        }
    }
    for c in 0..m {
        let s: i64 = (0..m).map(|r| at(r, c)).sum();
        if s != target {
            out.push(Violation::sum(
                Condition::ColumnSum,
                Location::Column(k + c),
                target,
                s,
            ));
        }
    }
    let main: i64 = (0..m).map(|i| at(i, i)).sum();
    if main != target {
        out.push(Violation::sum(
            Condition::DiagonalSum,
            Location::MainDiagonal,
            target,
            main,
        ));
    }
    let anti: i64 = (0..m).map(|i| at(i, m - 1 - i)).sum();
    if anti != target {
        out.push(Violation::sum(
            Condition::DiagonalSum,
            Location::AntiDiagonal,
            target,
            anti,
        ));
    }
}

/// Checks that `sq` is a normal magic square.
pub fn verify_square(sq: &MagicSquare) -> CheckReport {
    let mut out = Vec::new();
    permutation_violations(sq, &mut out);
    let n = sq.order() as i64;
    line_violations(sq, 0, sq.order(), n * (n * n + 1) / 2, &mut out);
    CheckReport::from_violations(out)
}

/// Checks the concentric property: for `m = N, N-2, …` down to 3 or 4, the
/// centred `m × m` subsquare has all lines summing to `m(N²+1)/2`, and every
/// peeled frame (`m ≥ 5`) has complementary opposite cells: each corner with
/// the diagonally opposite corner, each edge cell with the cell straight
/// across.
pub fn verify_bordered(sq: &MagicSquare) -> CheckReport {
    let mut out = Vec::new();
    permutation_violations(sq, &mut out);
    let big = sq.order();
    let total = (big * big) as i64 + 1;
    let mut m = big;
    loop {
        let k = (big - m) / 2;
        if (m as i64 * total) % 2 == 0 {
            let mut layer = Vec::new();
            line_violations(sq, k, m, m as i64 * total / 2, &mut layer);
            out.extend(layer.into_iter().map(|v| v.in_layer(m)));
        }
        if m >= 5 {
            let last = k + m - 1;
            let cells = (k..=last)
                .map(|c| (k, c))
                .chain((k + 1..last).map(|r| (r, k)));
            for (r, c) in cells {
                // corners face diagonally, edge cells straight across
                let far = 2 * k + m - 1;
                let (or, oc) = if r == k && (c == k || c == last) {
                    (far - r, far - c)
                } else if r == k {
                    (far - r, c)
                } else {
                    (r, far - c)
                };
                let s = sq.get(r, c) + sq.get(or, oc);
                if s != total {
                    out.push(
                        Violation::sum(Condition::OppositeCells, Location::Cell(r, c), total, s)
                            .in_layer(m),
                    );
                }
            }
        }
        if m < 5 {
            break;
        }
        m -= 2;
    }
    CheckReport::from_violations(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::InnerOrder;

    fn plan(n: usize, v: i64, w: i64, b: &[i64], c: &[i64]) -> BorderPlan {
        BorderPlan::new(InnerOrder::new(n).unwrap(), v, w, b.to_vec(), c.to_vec())
    }

    #[test]
    fn table_entry_is_valid() {
        let r = verify_border(&plan(4, 1, 2, &[34, 33, 32, 9], &[6, 30, 29, 10]));
        assert!(r.valid, "{r}");
    }

    #[test]
    fn example_border_is_valid() {
        let p = plan(
            8,
            99,
            96,
            &[1, 3, 97, 7, 11, 89, 14, 88],
            &[6, 93, 9, 91, 15, 85, 84, 18],
        );
        assert!(verify_border(&p).valid);
    }

    #[test]
    fn perturbed_row_sum() {
        let r = verify_border(&plan(4, 1, 2, &[34, 33, 32, 8], &[6, 30, 29, 10]));
        assert!(!r.valid);
        let row = r
            .violations
            .iter()
            .find(|v| v.condition == Condition::RowSum)
            .unwrap();
        assert_eq!((row.expected, row.actual), (Some(111), Some(110)));
    }

    #[test]
    fn collects_every_violation() {
        // 2 is used twice, 35 clashes with 2, 11 is outside the pool, c is short
        let r = verify_border(&plan(4, 1, 2, &[2, 35, 11, 9], &[6, 30, 29]));
        for cond in [
            Condition::LineLength,
            Condition::OutOfPool,
            Condition::Duplicate,
            Condition::ComplementClash,
            Condition::RowSum,
            Condition::ColumnSum,
        ] {
            assert!(r.has(cond), "missing {cond:?} in {r}");
        }
    }

    #[test]
    fn lo_shu() {
        let sq = MagicSquare::from_rows(&[[2, 7, 6], [9, 5, 1], [4, 3, 8]]).unwrap();
        assert!(verify_square(&sq).valid);
        assert!(verify_bordered(&sq).valid);
        let swapped = MagicSquare::from_rows(&[[7, 2, 6], [9, 5, 1], [4, 3, 8]]).unwrap();
        assert!(!verify_square(&swapped).valid);
    }

    #[test]
    fn durer_single_layer() {
        let sq = MagicSquare::from_rows(&[
            [16, 3, 2, 13],
            [5, 10, 11, 8],
            [9, 6, 7, 12],
            [4, 15, 14, 1],
        ])
        .unwrap();
        assert!(verify_bordered(&sq).valid);
    }

    #[test]
    fn frame_bottom_row_is_checked() {
        let p = plan(4, 1, 2, &[34, 33, 32, 9], &[6, 30, 29, 10]);
        let frame = BorderFrame::from_plan(&p);
        assert!(verify_frame(&frame).valid);
        let mut cells = frame.cells().to_vec();
        cells.swap(31, 32);
        let bad = BorderFrame::from_grid(6, cells).unwrap();
        let r = verify_frame(&bad);
        assert!(r.has(Condition::OppositeCells));
        assert!(!r.has(Condition::RowSum));
    }

    #[test]
    fn centre_reflection_is_not_enough() {
        // rotating the bottom row keeps central symmetry checks happy but
        // breaks straight-across complementarity
        let sq = crate::assemble::build_square(6).unwrap();
        let mut rows: Vec<Vec<i64>> = sq.rows().map(|r| r.to_vec()).collect();
        rows[5][1..5].reverse();
        let bent = MagicSquare::from_rows(&rows).unwrap();
        assert!(verify_bordered(&bent).has(Condition::OppositeCells));
    }

    #[test]
    fn non_permutation() {
        let sq = MagicSquare::from_rows(&[[5, 5, 5], [5, 5, 5], [5, 5, 5]]).unwrap();
        let r = verify_square(&sq);
        assert!(r.has(Condition::Duplicate));
        assert!(!r.has(Condition::RowSum));
    }
}
