//! Borders with prescribed upper corners at even inner orders.
//!
//! At even `n`, corners `v, w ∈ 1..=2n+2` admit a magic border exactly when
//! they have opposite parity. Borders for every feasible pair are obtained
//! from the order-4 seed table by repeated +4 extensions, each of which adds
//! eight diagram rows and may shift both corners by 0, 2, 4, 6 or 8. The
//! twenty pairs per order that no extension reaches come from parameterized
//! seeds (verified, repaired when they fail) or from search.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::enumerate::{search_first, OmegaKey};
use crate::error::{Error, Result};
use crate::numbers::{InnerOrder, Side};
use crate::plan::BorderPlan;
use crate::tables::{seed_tables, ParamEntry};
use crate::transform::{apply_symmetry, reduce_corners, BorderSymmetry};
use crate::verify::verify_border;

/// Parity test for corners in `1..=2n+2` at even `n`.
pub fn corners_feasible(n: InnerOrder, v: i64, w: i64) -> Result<bool> {
    if !n.is_even() {
        return Err(Error::NotEven(n.get()));
    }
    let small = 1..=n.rows() as i64;
    if !small.contains(&v) || !small.contains(&w) {
        return Err(Error::InvalidCorners {
            v,
            w,
            reason: format!("corners must lie in 1..={}", n.rows()),
        });
    }
    if v == w {
        return Err(Error::InvalidCorners {
            v,
            w,
            reason: "corners must differ".into(),
        });
    }
    Ok((v - w) % 2 != 0)
}

/// Accepts any pool corners at even `n`, reducing them to `1..=2n+2` first.
pub fn check_feasible(n: InnerOrder, v: i64, w: i64) -> Result<()> {
    OmegaKey::new(n, v, w)?;
    let ((rv, rw), _) = reduce_corners(n, v, w);
    if corners_feasible(n, rv, rw)? {
        Ok(())
    } else {
        Err(Error::Infeasible {
            n: n.get(),
            v,
            w,
            rv,
            rw,
        })
    }
}

/// The order-4 table entry for `(v, w)`, `v` odd and `w` even in `1..=10`.
pub fn seed_order4(v: i64, w: i64) -> Result<BorderPlan> {
    seed_tables()
        .order4_entry(v, w)
        .map(|e| e.plan())
        .ok_or_else(|| Error::MissingSeed(format!("no order-4 entry for corners ({v}, {w})")))
}

/// The twenty corner pairs `(v, w)`, `v < w`, that no +4 extension from
/// order `m - 4` reaches.
pub fn missing_pairs(m: usize) -> Vec<(i64, i64)> {
    let m = m as i64;
    let mut out = Vec::with_capacity(20);
    let rows: [(i64, &[i64]); 8] = [
        (1, &[-4, -2, 0, 2]),
        (2, &[-5, -3, -1, 1]),
        (3, &[-2, 0, 2]),
        (4, &[-3, -1, 1]),
        (5, &[0, 2]),
        (6, &[-1, 1]),
        (7, &[2]),
        (8, &[1]),
    ];
    for (v, offsets) in rows {
        out.extend(offsets.iter().map(|&k| (v, 2 * m + k)));
    }
    out
}

/// Shift that carries corners of order `n - 4` to `(v, w)` at order `n`.
fn extension_shift(n: usize, v: i64, w: i64) -> Option<usize> {
    let prev_rows = 2 * (n as i64 - 4) + 2;
    (0..=8usize).step_by(2).find(|&j| {
        let j = j as i64;
        v - j >= 1 && w - j >= 1 && v - j <= prev_rows && w - j <= prev_rows
    })
}

/// Extends a border of inner order `n` to one of order `n + 4`.
///
/// Eight new diagram rows carry two top-row pairs and two left-column pairs,
/// each line's deviations summing to zero. The first `shift` of them go
/// above the old rows, the rest below, so every old value moves `shift` rows
/// down its side of the new diagram and small corners grow by `shift`.
pub fn extend_border(plan: &BorderPlan, shift: usize) -> Result<BorderPlan> {
    if shift > 8 || shift % 2 == 1 {
        return Err(Error::InvalidShift(shift));
    }
    let report = verify_border(plan);
    if !report.valid {
        return Err(Error::InvalidPlan(report.to_string()));
    }
    let n = plan.n;
    let small = n.rows() as i64;
    if plan.v > small || plan.w > small {
        return Err(Error::InvalidCorners {
            v: plan.v,
            w: plan.w,
            reason: "extension needs corners in the left column".into(),
        });
    }
    let next = InnerOrder::new(n.get() + 4)?;
    let moved = |x: i64| -> (usize, Side) {
        let (row, side) = n.locate(x).expect("verified plans use pool values");
        (row + shift, side)
    };
    let value = |(row, side): (usize, Side)| next.value(row, side);
    // block rows 1..=8 in order; the first `shift` sit on top
    let block_row = |k: usize| if k <= shift { k } else { n.rows() + k };
    let at = |k: usize, side| next.value(block_row(k), side);

    let mut b: Vec<i64> = plan.b.iter().map(|&x| value(moved(x))).collect();
    let mut c: Vec<i64> = plan.c.iter().map(|&x| value(moved(x))).collect();
    // (L1, R2) and (L4, R3) on top; (L6, R5) and (L7, R8) on the left
    b.extend([
        at(1, Side::Left),
        at(2, Side::Right),
        at(3, Side::Right),
        at(4, Side::Left),
    ]);
    c.extend([
        at(5, Side::Right),
        at(6, Side::Left),
        at(7, Side::Left),
        at(8, Side::Right),
    ]);

    let out = BorderPlan::new(next, value(moved(plan.v)), value(moved(plan.w)), b, c);
    let report = verify_border(&out);
    if !report.valid {
        // only unbalanced inputs can get here
        return Err(Error::InvalidPlan(format!(
            "extension is not magic: {report}"
        )));
    }
    Ok(out)
}

/// How a parameterized seed was turned into a verified border.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedStatus {
    /// The entry verifies as written.
    Valid,
    /// The entry's own values are sound but the block sets collide with
    /// them; the block windows were moved onto the rows the entry leaves free.
    Reseated,
    /// The entry's own values needed the listed `(old, new)` substitutions,
    /// with the block windows reseated when `reseated` is set.
    Repaired {
        subs: Vec<(i64, i64)>,
        reseated: bool,
    },
    /// No repair of up to three values exists; the plan comes from search.
    Searched,
    /// The table has no entry for this pair; the plan comes from search.
    Absent,
}

impl SeedStatus {
    pub fn label(&self) -> String {
        match self {
            SeedStatus::Valid => "valid".into(),
            SeedStatus::Reseated => "block sets collide; reseated on free rows".into(),
            SeedStatus::Repaired { subs, reseated } => {
                let subs: Vec<String> = subs.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                let tail = if *reseated { "; blocks reseated" } else { "" };
                format!("repaired ({}){tail}", subs.join(", "))
            }
            SeedStatus::Searched => "invalid, not repairable; searched".into(),
            SeedStatus::Absent => "absent from table; searched".into(),
        }
    }

    /// Whether the plan comes from the table entry, possibly mended.
    pub fn from_table(&self) -> bool {
        !matches!(self, SeedStatus::Searched | SeedStatus::Absent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedResult {
    pub v: i64,
    pub w: i64,
    pub entry: Option<String>,
    /// Verification of the entry as written, if the table has one.
    pub raw: Option<crate::verify::CheckReport>,
    pub status: SeedStatus,
    pub plan: BorderPlan,
}

/// An entry's own values at one order, before the block sets are added.
#[derive(Debug, Clone, PartialEq, Eq)]
struct EntryValues {
    n: InnerOrder,
    v: i64,
    w: i64,
    b: Vec<i64>,
    c: Vec<i64>,
}

impl EntryValues {
    fn new(entry: &ParamEntry, m: usize) -> Result<Self> {
        let mi = m as i64;
        let (v, w) = entry.corners(mi);
        Ok(Self {
            n: InnerOrder::new(m)?,
            v,
            w,
            b: entry.b.iter().map(|t| t.expr.eval(mi)).collect(),
            c: entry.c.iter().map(|t| t.expr.eval(mi)).collect(),
        })
    }

    fn slots(&self) -> usize {
        self.b.len() + self.c.len()
    }

    fn get(&self, pos: usize) -> i64 {
        if pos < self.b.len() {
            self.b[pos]
        } else {
            self.c[pos - self.b.len()]
        }
    }

    fn set(&mut self, pos: usize, x: i64) {
        if pos < self.b.len() {
            self.b[pos] = x
        } else {
            let k = pos - self.b.len();
            self.c[k] = x
        }
    }

    /// Completed with the printed block sets.
    fn printed(&self) -> BorderPlan {
        let (bb, bc) = crate::tables::block_sets(self.n.get());
        let b = self.b.iter().copied().chain(bb).collect();
        let c = self.c.iter().copied().chain(bc).collect();
        BorderPlan::new(self.n, self.v, self.w, b, c)
    }

    /// Completed with block windows on the free rows, if they fit.
    fn reseated(&self) -> Option<BorderPlan> {
        let n = self.n;
        let mut used = vec![false; n.rows() + 2];
        for x in [self.v, self.w].iter().chain(&self.b).chain(&self.c) {
            let (row, _) = n.locate(*x)?;
            if std::mem::replace(&mut used[row], true) {
                return None;
            }
        }
        used[n.rows() + 1] = true;
        let (mut b, mut c) = (self.b.clone(), self.c.clone());
        let mut row = 1;
        while row <= n.rows() {
            if used[row] {
                row += 1;
                continue;
            }
            if (row..row + 8).any(|r| used[r.min(n.rows() + 1)]) {
                return None;
            }
            let (wb, wc) = block_window(n, row);
            b.extend(wb);
            c.extend(wc);
            row += 8;
        }
        Some(BorderPlan::new(n, self.v, self.w, b, c))
    }
}

/// One block window on diagram rows `a..a+8`, in the printed block shape:
/// the top-row part balances and the left-column part carries `+8`, which
/// the entries' left columns compensate.
fn block_window(n: InnerOrder, a: usize) -> ([i64; 4], [i64; 4]) {
    let (l, r) = (
        |k| n.value(a + k, Side::Left),
        |k| n.value(a + k, Side::Right),
    );
    ([l(2), l(7), r(6), r(3)], [l(4), l(5), r(1), r(0)])
}

fn magic(plan: Option<BorderPlan>) -> Option<BorderPlan> {
    plan.filter(|p| verify_border(p).valid)
}

/// Most values a repair may replace.
const MAX_SUBSTITUTIONS: usize = 3;

/// Smallest change to an entry's own values, at most [`MAX_SUBSTITUTIONS`]
/// of them, after which `complete` yields a magic border. Replacement values
/// come from diagram rows no kept value occupies, in pool order; positions
/// run over `b` then `c`.
/// `reserved` values (printed blocks) are kept off-limits.
fn repair_with<F>(
    entry: &EntryValues,
    reserved: &[i64],
    complete: F,
) -> Option<(BorderPlan, Vec<(i64, i64)>)>
where
    F: Fn(&EntryValues) -> Option<BorderPlan>,
{
    let n = entry.n;
    let pool = crate::numbers::border_pool(n);
    let row = |x: i64| n.locate(x).map(|(r, _)| r);
    // block windows add fixed sums wherever they sit, so the entry's own
    // sums must move by exactly these amounts
    let base = entry.printed();
    let target = n.outer_constant();
    let (need_top, need_left) = (target - base.top_sum(), target - base.left_sum());
    // rows held by the kept values, or None if two of them share a row
    let kept_rows = |skip: &[usize]| -> Option<Vec<bool>> {
        let mut used = vec![false; n.rows() + 1];
        let kept = [entry.v, entry.w]
            .into_iter()
            .chain(
                (0..entry.slots())
                    .filter(|p| !skip.contains(p))
                    .map(|p| entry.get(p)),
            )
            .chain(reserved.iter().copied());
        for x in kept {
            if std::mem::replace(&mut used[row(x)?], true) {
                return None;
            }
        }
        Some(used)
    };
    for k in 1..=MAX_SUBSTITUTIONS {
        for positions in combinations(entry.slots(), k) {
            let Some(used) = kept_rows(&positions) else {
                continue;
            };
            let options: Vec<i64> = pool
                .iter()
                .copied()
                .filter(|&x| row(x).is_some_and(|r| !used[r]))
                .collect();
            let mut picks = Vec::with_capacity(k);
            let found = pick(&options, k, &row, &mut picks, &mut |picks| {
                let (mut top, mut left) = (0, 0);
                for (&p, &x) in positions.iter().zip(picks) {
                    let delta = x - entry.get(p);
                    if p < entry.b.len() {
                        top += delta
                    } else {
                        left += delta
                    }
                }
                if (top, left) != (need_top, need_left) {
                    return None;
                }
                let mut cand = entry.clone();
                for (&p, &x) in positions.iter().zip(picks) {
                    cand.set(p, x);
                }
                magic(complete(&cand))
            });
            if let Some(plan) = found {
                let subs = positions
                    .iter()
                    .zip(&picks)
                    .map(|(&p, &x)| (entry.get(p), x))
                    .collect();
                return Some((plan, subs));
            }
        }
    }
    None
}

fn printed_blocks(m: usize) -> Vec<i64> {
    let (b, c) = crate::tables::block_sets(m);
    b.into_iter().chain(c).collect()
}

/// All `k`-subsets of `0..len`, in lexicographic order.
fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Tries every sequence of `k` options on distinct rows; leaves the winning
/// sequence in `picks`.
fn pick<R, T>(
    options: &[i64],
    k: usize,
    row: &R,
    picks: &mut Vec<i64>,
    test: &mut dyn FnMut(&[i64]) -> Option<T>,
) -> Option<T>
where
    R: Fn(i64) -> Option<usize>,
{
    if picks.len() == k {
        return test(picks);
    }
    for &x in options {
        if picks.iter().any(|&y| row(y) == row(x)) {
            continue;
        }
        picks.push(x);
        if let Some(t) = pick(options, k, row, picks, test) {
            return Some(t);
        }
        picks.pop();
    }
    None
}

fn search_plan(n: InnerOrder, v: i64, w: i64) -> Result<BorderPlan> {
    Ok(search_first(OmegaKey::new(n, v, w)?)?.to_plan())
}

/// Classifies one entry: as printed, with reseated blocks, repaired, or
/// replaced by search, in that order of preference.
fn resolve_entry(m: usize, v: i64, w: i64, entry: Option<&ParamEntry>) -> Result<SeedResult> {
    let n = InnerOrder::new(m)?;
    let Some(entry) = entry else {
        return Ok(SeedResult {
            v,
            w,
            entry: None,
            raw: None,
            status: SeedStatus::Absent,
            plan: search_plan(n, v, w)?,
        });
    };
    let values = EntryValues::new(entry, m)?;
    let raw_plan = values.printed();
    let raw = verify_border(&raw_plan);
    let (status, plan) = if raw.valid {
        (SeedStatus::Valid, raw_plan)
    } else if let Some(plan) = magic(values.reseated()) {
        (SeedStatus::Reseated, plan)
    } else if let Some((plan, subs)) =
        repair_with(&values, &printed_blocks(m), |e| Some(e.printed()))
    {
        (
            SeedStatus::Repaired {
                subs,
                reseated: false,
            },
            plan,
        )
    } else if let Some((plan, subs)) = repair_with(&values, &[], EntryValues::reseated) {
        (
            SeedStatus::Repaired {
                subs,
                reseated: true,
            },
            plan,
        )
    } else {
        (SeedStatus::Searched, search_plan(n, v, w)?)
    };
    Ok(SeedResult {
        v,
        w,
        entry: Some(entry.label()),
        raw: Some(raw),
        status,
        plan,
    })
}

/// Parameterized seed for one of the [`missing_pairs`] at order `m`.
/// Always returns a verified plan or an error.
pub fn seed_order_m(m: usize, v: i64, w: i64) -> Result<SeedResult> {
    if m < 8 || !m.is_multiple_of(4) {
        return Err(Error::Order(
            m as i64,
            "parameterized seeds need m ≡ 0 mod 4, m ≥ 8",
        ));
    }
    if !missing_pairs(m).contains(&(v, w)) {
        return Err(Error::MissingSeed(format!(
            "({v}, {w}) is reachable by extension at order {m}"
        )));
    }
    let result = resolve_entry(m, v, w, seed_tables().param_entry(m, v, w))?;
    debug_assert!(verify_border(&result.plan).valid);
    Ok(result)
}

/// Classification of every missing pair at order `m`.
pub fn audit_order_m(m: usize) -> Result<Vec<SeedResult>> {
    missing_pairs(m)
        .into_iter()
        .map(|(v, w)| seed_order_m(m, v, w))
        .collect()
}

/// Where a corner-prescribed border came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Order4Table,
    Extension { shift: usize },
    OrderMTable(SeedStatus),
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub plan: BorderPlan,
    pub source: Source,
    /// Symmetry applied to the reduced corners' border.
    pub symmetry: BorderSymmetry,
}

type Memo = Mutex<HashMap<(usize, i64, i64), (BorderPlan, Source)>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Border for small corners `v, w ∈ 1..=2n+2` of opposite parity.
fn small_corners(n: InnerOrder, v: i64, w: i64) -> Result<(BorderPlan, Source)> {
    let key = (n.get(), v, w);
    if let Some(hit) = memo().lock().expect("memo lock").get(&key) {
        return Ok(hit.clone());
    }
    let k = n.get();
    let built = if k == 4 {
        if v % 2 == 1 {
            (seed_order4(v, w)?, Source::Order4Table)
        } else {
            let seed = seed_order4(w, v)?;
            (
                apply_symmetry(&seed, BorderSymmetry::ReflectVertical),
                Source::Order4Table,
            )
        }
    } else if let Some(shift) = extension_shift(k, v, w).filter(|_| k >= 8) {
        let prev = InnerOrder::new(k - 4)?;
        let (seed, _) = small_corners(prev, v - shift as i64, w - shift as i64)?;
        (extend_border(&seed, shift)?, Source::Extension { shift })
    } else if k.is_multiple_of(4) {
        let (lo, hi) = (v.min(w), v.max(w));
        let seed = seed_order_m(k, lo, hi)?;
        let plan = if v < w {
            seed.plan
        } else {
            apply_symmetry(&seed.plan, BorderSymmetry::ReflectVertical)
        };
        (plan, Source::OrderMTable(seed.status))
    } else {
        (search_plan(n, v, w)?, Source::Search)
    };
    memo().lock().expect("memo lock").insert(key, built.clone());
    Ok(built)
}

/// A verified border of even inner order `n` with upper corners `(v, w)`,
/// which may be any non-complementary pool values; corners outside
/// `1..=2n+2` are reduced by a symmetry of the square and mapped back.
pub fn construct_with_corners(n: usize, v: i64, w: i64) -> Result<Construction> {
    let order = InnerOrder::new(n)?;
    if !order.is_even() {
        return Err(Error::NotEven(n));
    }
    check_feasible(order, v, w)?;
    let ((rv, rw), symmetry) = reduce_corners(order, v, w);
    let (base, source) = small_corners(order, rv, rw)?;
    let plan = apply_symmetry(&base, symmetry);
    let report = verify_border(&plan);
    if !report.valid || plan.corners() != (v, w) {
        return Err(Error::InvalidPlan(format!(
            "construction for ({v}, {w}) failed: {report}"
        )));
    }
    Ok(Construction {
        plan,
        source,
        symmetry,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize) -> InnerOrder {
        InnerOrder::new(k).unwrap()
    }

    #[test]
    fn feasibility() {
        assert!(corners_feasible(n(4), 1, 2).unwrap());
        assert!(!corners_feasible(n(4), 1, 3).unwrap());
        assert!(corners_feasible(n(8), 2, 9).unwrap());
        assert!(corners_feasible(n(5), 1, 2).is_err());
        assert!(corners_feasible(n(4), 1, 1).is_err());
        assert!(corners_feasible(n(4), 1, 11).is_err());
    }

    #[test]
    fn order4_seeds() {
        let p = seed_order4(1, 2).unwrap();
        assert_eq!(
            (p.b.clone(), p.c.clone()),
            (vec![34, 33, 32, 9], vec![6, 30, 29, 10])
        );
        let p = seed_order4(9, 10).unwrap();
        assert_eq!(
            (p.b.clone(), p.c.clone()),
            (vec![1, 32, 30, 29], vec![2, 34, 33, 6])
        );
        assert!(seed_order4(2, 1).is_err());
    }

    #[test]
    fn extensions_from_first_seed() {
        for (seed, shift, corners) in [
            ((1, 2), 0, (1, 2)),
            ((1, 2), 2, (3, 4)),
            ((9, 10), 8, (17, 18)),
        ] {
            let plan = seed_order4(seed.0, seed.1).unwrap();
            let ext = extend_border(&plan, shift).unwrap();
            assert_eq!(ext.n.get(), 8);
            assert_eq!(ext.corners(), corners);
            assert!(verify_border(&ext).valid);
        }
        let plan = seed_order4(1, 2).unwrap();
        assert!(matches!(
            extend_border(&plan, 3),
            Err(Error::InvalidShift(3))
        ));
        let flipped = apply_symmetry(&plan, BorderSymmetry::Rotate180);
        assert!(extend_border(&flipped, 0).is_err());
    }

    #[test]
    fn missing_pair_list() {
        let pairs = missing_pairs(8);
        assert_eq!(pairs.len(), 20);
        assert_eq!(pairs[0], (1, 12));
        assert!(pairs.contains(&(8, 17)));
        // exactly the opposite-parity pairs no shift reaches
        let mut unreachable = Vec::new();
        for v in 1..=18i64 {
            for w in v + 1..=18 {
                if (v + w) % 2 == 1 && extension_shift(8, v, w).is_none() {
                    unreachable.push((v, w));
                }
            }
        }
        unreachable.sort();
        let mut expected = pairs.clone();
        expected.sort();
        assert_eq!(unreachable, expected);
    }

    #[test]
    fn known_bad_entry_is_repaired() {
        let r = seed_order_m(8, 1, 18).unwrap();
        let raw = r.raw.as_ref().unwrap();
        assert!(!raw.valid);
        let row = raw
            .violations
            .iter()
            .find(|v| v.condition == crate::verify::Condition::RowSum)
            .unwrap();
        assert_eq!((row.expected, row.actual), (Some(505), Some(504)));
        assert_eq!(
            r.status,
            SeedStatus::Repaired {
                subs: vec![(85, 86)],
                reseated: false
            }
        );
        assert_eq!(r.plan.corners(), (1, 18));
        assert!(verify_border(&r.plan).valid);
    }

    #[test]
    fn printed_blocks_are_windows() {
        let n = InnerOrder::new(12).unwrap();
        let (b, c) = crate::tables::block_sets(12);
        let (wb, wc) = block_window(n, 17);
        assert_eq!((b, c), (wb.to_vec(), wc.to_vec()));
    }

    #[test]
    fn colliding_blocks_are_reseated() {
        // the entry uses rows 1..=8 and 17..=26; rows 9..=16 are free
        let r = seed_order_m(12, 1, 20).unwrap();
        assert!(!r.raw.as_ref().unwrap().valid);
        assert_eq!(r.status, SeedStatus::Reseated);
        assert!(verify_border(&r.plan).valid);
    }

    #[test]
    fn worst_entry_needs_three_values() {
        let r = seed_order_m(8, 5, 16).unwrap();
        assert_eq!(
            r.status,
            SeedStatus::Repaired {
                subs: vec![(88, 92), (89, 93), (99, 97)],
                reseated: false
            }
        );
        assert!(verify_border(&r.plan).valid);
    }

    #[test]
    fn every_pair_served_from_table() {
        for m in [8, 12, 16] {
            for r in audit_order_m(m).unwrap() {
                assert!(
                    r.status.from_table(),
                    "m={m} ({}, {}): {}",
                    r.v,
                    r.w,
                    r.status.label()
                );
                assert!(verify_border(&r.plan).valid);
            }
        }
    }

    #[test]
    fn repair_carries_over_to_larger_orders() {
        // 121 is outside the order-8 pool; 85 fits, and at order 12 the
        // blocks must move as well
        let r = seed_order_m(8, 6, 15).unwrap();
        assert_eq!(
            r.status,
            SeedStatus::Repaired {
                subs: vec![(121, 85)],
                reseated: false
            }
        );
        let r = seed_order_m(12, 6, 23).unwrap();
        assert!(
            matches!(r.status, SeedStatus::Repaired { reseated: true, .. }),
            "{:?}",
            r.status
        );
        assert!(verify_border(&r.plan).valid);
    }

    #[test]
    fn construct_examples() {
        let c = construct_with_corners(4, 1, 4).unwrap();
        assert_eq!(c.plan, seed_order4(1, 4).unwrap());
        let c = construct_with_corners(8, 11, 12).unwrap();
        assert_eq!(c.source, Source::Extension { shift: 2 });
        assert_eq!(
            c.plan,
            extend_border(&seed_order4(9, 10).unwrap(), 2).unwrap()
        );
        let c = construct_with_corners(6, 1, 2).unwrap();
        assert!(verify_border(&c.plan).valid);
        assert!(matches!(
            construct_with_corners(4, 1, 3),
            Err(Error::Infeasible { .. })
        ));
        assert!(matches!(
            construct_with_corners(5, 1, 2),
            Err(Error::NotEven(5))
        ));
    }

    #[test]
    fn large_corners() {
        // 99 = C - 2 and 96 = C - 5 reduce to (2, 5)
        let c = construct_with_corners(8, 99, 96).unwrap();
        assert_eq!(c.plan.corners(), (99, 96));
        assert!(matches!(
            construct_with_corners(8, 99, 97),
            Err(Error::Infeasible { .. })
        ));
    }
}
