//! Constructive recipes producing a magic border for every inner order
//! `n ≥ 3`, expressed as matchings on the two-column diagram.
//!
//! A recipe selects one side of every diagram row, tags each selected value
//! as a corner (`v`, `w`), a top-row entry (`b`) or a left-column entry
//! (`c`), and pairs the values of each line so that the deviations
//! `x + y - C` balance:
//!
//! * even `n`: top pairs over `b ∪ {v, w}` sum to 0, left pairs over `c`
//!   sum to `-d(v, w̄)`;
//! * odd `n`: top pairs over `b ∪ {w}` and left pairs over `c ∪ {w̄}` both
//!   sum to `C/2 - v`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numbers::{InnerOrder, Side};
use crate::plan::BorderPlan;

/// Role of a selected value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    V,
    W,
    B,
    C,
}

/// A diagram row together with the side picked from it and the role of the
/// picked value. For `w`, the picked value is `w` itself; `w̄` sits on the
/// other side of the same row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub row: usize,
    pub side: Side,
    pub tag: Tag,
}

/// Line whose balance a pair contributes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairLine {
    Top,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair {
    pub first: i64,
    pub second: i64,
    pub line: PairLine,
}

impl Pair {
    pub fn d(&self, n: InnerOrder) -> i64 {
        self.first + self.second - n.complement_base()
    }
}

/// A matching on the diagram that defines one border.
///
/// `selections` lists every row once, in the order the line entries are
/// placed: the `b`-tagged selections in order form the top row interior, the
/// `c`-tagged ones the left column interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingScheme {
    pub n: InnerOrder,
    pub selections: Vec<Selection>,
    pub pairs: Vec<Pair>,
}

impl PairingScheme {
    fn value(&self, s: &Selection) -> i64 {
        self.n.value(s.row, s.side)
    }

    fn tagged(&self, tag: Tag) -> impl Iterator<Item = i64> + '_ {
        self.selections
            .iter()
            .filter(move |s| s.tag == tag)
            .map(|s| self.value(s))
    }

    pub fn to_plan(&self) -> BorderPlan {
        let v = self.tagged(Tag::V).next().expect("scheme has a v");
        let w = self.tagged(Tag::W).next().expect("scheme has a w");
        BorderPlan::new(
            self.n,
            v,
            w,
            self.tagged(Tag::B).collect(),
            self.tagged(Tag::C).collect(),
        )
    }

    /// Sum of pair deviations on one line.
    pub fn balance(&self, line: PairLine) -> i64 {
        self.pairs
            .iter()
            .filter(|p| p.line == line)
            .map(|p| p.d(self.n))
            .sum()
    }

    /// Checks the structural invariants: one selection per row, one `v`, one
    /// `w`, `n` of each line tag, and every paired value selected on its line.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let mut seen = vec![false; n.rows() + 1];
        for s in &self.selections {
            if s.row == 0 || s.row > n.rows() || std::mem::replace(&mut seen[s.row], true) {
                return Err(Error::InvalidPairing(format!(
                    "row {} selected twice or out of range",
                    s.row
                )));
            }
        }
        if seen.iter().skip(1).any(|&x| !x) {
            return Err(Error::InvalidPairing(
                "some diagram row is unselected".into(),
            ));
        }
        let count = |t: Tag| self.selections.iter().filter(|s| s.tag == t).count();
        if count(Tag::V) != 1
            || count(Tag::W) != 1
            || count(Tag::B) != n.get()
            || count(Tag::C) != n.get()
        {
            return Err(Error::InvalidPairing("wrong number of v/w/b/c tags".into()));
        }
        let plan = self.to_plan();
        let w_bar = plan.complement(plan.w);
        for p in &self.pairs {
            for x in [p.first, p.second] {
                let ok = match p.line {
                    PairLine::Top => {
                        plan.b.contains(&x) || x == plan.w || (n.is_even() && x == plan.v)
                    }
                    PairLine::Left => plan.c.contains(&x) || (!n.is_even() && x == w_bar),
                };
                if !ok {
                    return Err(Error::InvalidPairing(format!(
                        "{x} is not a member of its line"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Scheme for an arbitrary plan, pairing each line's members in order.
    /// By matching independence any pairing balances iff the plan is magic.
    pub fn from_plan(plan: &BorderPlan) -> Result<Self> {
        let n = plan.n;
        let mut selections = Vec::with_capacity(n.rows());
        let mut add = |x: i64, tag: Tag| -> Result<()> {
            let (row, side) = n.locate(x).ok_or(Error::NotInPool {
                value: x,
                n: n.get(),
            })?;
            selections.push(Selection { row, side, tag });
            Ok(())
        };
        add(plan.v, Tag::V)?;
        add(plan.w, Tag::W)?;
        for &x in &plan.b {
            add(x, Tag::B)?;
        }
        for &x in &plan.c {
            add(x, Tag::C)?;
        }
        let w_bar = plan.complement(plan.w);
        let (mut top, mut left) = (plan.b.clone(), plan.c.clone());
        if n.is_even() {
            top.extend([plan.v, plan.w]);
        } else {
            top.push(plan.w);
            left.push(w_bar);
        }
        if top.len() % 2 == 1 || left.len() % 2 == 1 {
            return Err(Error::InvalidPairing(
                "line sizes must be even to pair".into(),
            ));
        }
        let pair_up = |xs: &[i64], line| {
            xs.chunks(2)
                .map(|p| Pair {
                    first: p[0],
                    second: p[1],
                    line,
                })
                .collect::<Vec<_>>()
        };
        let mut pairs = pair_up(&top, PairLine::Top);
        pairs.extend(pair_up(&left, PairLine::Left));
        Ok(Self {
            n,
            selections,
            pairs,
        })
    }
}

/// Which recipe applies to an inner order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecipeCase {
    /// `n = 4k`, `k ≥ 2`.
    Even4k,
    /// `n = 4k + 2`, `k ≥ 1`.
    Even4kPlus2,
    /// Odd `n ≥ 5`.
    OddGeneral,
    /// `n = 3`, found by search.
    N3Special,
    /// `n = 4`: the first part of the `4k` recipe alone.
    N4Direct,
}

impl RecipeCase {
    pub fn for_order(n: InnerOrder) -> Self {
        match n.get() {
            3 => RecipeCase::N3Special,
            4 => RecipeCase::N4Direct,
            k if k % 4 == 0 => RecipeCase::Even4k,
            k if k % 4 == 2 => RecipeCase::Even4kPlus2,
            _ => RecipeCase::OddGeneral,
        }
    }
}

/// Accumulates selections and pairs in diagram coordinates.
struct Builder {
    n: InnerOrder,
    selections: Vec<Selection>,
    pairs: Vec<Pair>,
}

type Cell = (usize, Side);

const fn l(row: usize) -> Cell {
    (row, Side::Left)
}

const fn r(row: usize) -> Cell {
    (row, Side::Right)
}

impl Builder {
    fn new(n: InnerOrder) -> Self {
        Self {
            n,
            selections: Vec::with_capacity(n.rows()),
            pairs: Vec::new(),
        }
    }

    fn select(&mut self, tag: Tag, cells: &[Cell]) {
        self.selections.extend(
            cells
                .iter()
                .map(|&(row, side)| Selection { row, side, tag }),
        );
    }

    fn pair(&mut self, line: PairLine, a: Cell, b: Cell) {
        let n = self.n;
        self.pairs.push(Pair {
            first: n.value(a.0, a.1),
            second: n.value(b.0, b.1),
            line,
        });
    }

    /// Four consecutive rows from `a`, matched `(L_a, R_{a+1})` and
    /// `(L_{a+3}, R_{a+2})`: deviations −1 and +1.
    fn block(&mut self, a: usize, tag: Tag) {
        let line = if tag == Tag::B {
            PairLine::Top
        } else {
            PairLine::Left
        };
        self.select(tag, &[l(a), r(a + 1), r(a + 2), l(a + 3)]);
        self.pair(line, l(a), r(a + 1));
        self.pair(line, l(a + 3), r(a + 2));
    }

    /// Fills rows `from..=2n+2` with blocks, alternating top and left.
    fn blocks_from(&mut self, from: usize) {
        let mut tag = Tag::B;
        let mut a = from;
        while a + 3 <= self.n.rows() {
            self.block(a, tag);
            tag = if tag == Tag::B { Tag::C } else { Tag::B };
            a += 4;
        }
    }

    fn finish(self) -> PairingScheme {
        let scheme = PairingScheme {
            n: self.n,
            selections: self.selections,
            pairs: self.pairs,
        };
        debug_assert!(scheme.validate().is_ok(), "{:?}", scheme.validate());
        scheme
    }
}

/// Recipe for `n = 4k`.
///
/// Rows 1–10: `v = R2`, `w = R5` (so `w̄ = 5`), `b = 1, 3, R4, 7`,
/// `c = 6, R8, 9, R10`, matched as `(v, b₁)`, `(b₂, b₃)`, `(b₄, w)` with
/// deviations −1, −1, +2 and `(c₁, c₂)`, `(c₃, c₄)` with −2, −1 against
/// `d(v, w̄) = 3`. The remaining `8(k−1)` rows are four-row blocks.
pub fn recipe_even_4k(k: usize) -> Result<PairingScheme> {
    if k < 1 {
        return Err(Error::Order(4 * k as i64, "the 4k recipe needs k ≥ 1"));
    }
    let mut s = Builder::new(InnerOrder::new(4 * k)?);
    s.select(Tag::V, &[r(2)]);
    s.select(Tag::W, &[r(5)]);
    s.select(Tag::B, &[l(1), l(3), r(4), l(7)]);
    s.select(Tag::C, &[l(6), r(8), l(9), r(10)]);
    s.pair(PairLine::Top, r(2), l(1));
    s.pair(PairLine::Top, l(3), r(4));
    s.pair(PairLine::Top, l(7), r(5));
    s.pair(PairLine::Left, l(6), r(8));
    s.pair(PairLine::Left, l(9), r(10));
    s.blocks_from(11);
    Ok(s.finish())
}

/// Recipe for `n = 4k + 2`.
///
/// Rows 1–14: `v = 1`, `w = 4` (so `w̄ = R4`), `b = R2, R3, 5, R6, R7, 8`
/// matched into four pairs summing to 0, `c = R9, 10, R11, 12, R13, 14`
/// matched into three pairs of +1 against `d(v, w̄) = −3`. The remaining
/// `8(k−1)` rows are four-row blocks.
pub fn recipe_even_4k_plus_2(k: usize) -> Result<PairingScheme> {
    if k < 1 {
        return Err(Error::Order(
            4 * k as i64 + 2,
            "the 4k+2 recipe needs k ≥ 1",
        ));
    }
    let mut s = Builder::new(InnerOrder::new(4 * k + 2)?);
    s.select(Tag::V, &[l(1)]);
    s.select(Tag::W, &[l(4)]);
    s.select(Tag::B, &[r(2), r(3), l(5), r(6), r(7), l(8)]);
    s.select(Tag::C, &[r(9), l(10), r(11), l(12), r(13), l(14)]);
    s.pair(PairLine::Top, l(1), r(2));
    s.pair(PairLine::Top, l(4), r(3));
    s.pair(PairLine::Top, l(5), r(6));
    s.pair(PairLine::Top, l(8), r(7));
    s.pair(PairLine::Left, l(10), r(9));
    s.pair(PairLine::Left, l(12), r(11));
    s.pair(PairLine::Left, l(14), r(13));
    s.blocks_from(15);
    Ok(s.finish())
}

/// Recipe for odd `n ≥ 5`.
///
/// The diagram splits into rows `1..=n−3`, a middle band `n−2..=n+4` and rows
/// `n+5..=2n+2`. The corner is `v = n + 7`. The pairs `(L(n+5), R1)` (top)
/// and `(L(n+6), R2)` (left) deviate by `n + 4`; the pairs
/// `(L(n+7+t), R(2+t))` for `t = 1..=n−5` deviate by `n + 5` and go to the
/// top for even `t`, to the left for odd `t`. In the middle band, `w = n+1`
/// and four pairs of deviation +2 close both lines at `C/2 − v`.
pub fn recipe_odd(n: usize) -> Result<PairingScheme> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::Order(n as i64, "the odd recipe needs odd n ≥ 5"));
    }
    let mut s = Builder::new(InnerOrder::new(n)?);
    let t_max = n - 5;
    let (mut b_hi, mut c_hi, mut b_lo, mut c_lo) =
        (vec![r(1)], vec![r(2)], vec![l(n + 5)], vec![l(n + 6)]);
    for t in 1..=t_max {
        if t % 2 == 0 {
            b_hi.push(r(2 + t));
            b_lo.push(l(n + 7 + t));
        } else {
            c_hi.push(r(2 + t));
            c_lo.push(l(n + 7 + t));
        }
    }
    s.select(Tag::V, &[l(n + 7)]);
    s.select(Tag::W, &[l(n + 1)]);
    s.select(Tag::B, &b_hi);
    s.select(Tag::B, &b_lo);
    s.select(Tag::B, &[r(n - 1), r(n + 2), l(n + 4)]);
    s.select(Tag::C, &c_hi);
    s.select(Tag::C, &c_lo);
    s.select(Tag::C, &[r(n - 2), l(n), l(n + 3)]);

    s.pair(PairLine::Top, l(n + 5), r(1));
    s.pair(PairLine::Left, l(n + 6), r(2));
    for t in 1..=t_max {
        let line = if t % 2 == 0 {
            PairLine::Top
        } else {
            PairLine::Left
        };
        s.pair(line, l(n + 7 + t), r(2 + t));
    }
    s.pair(PairLine::Top, l(n + 1), r(n - 1));
    s.pair(PairLine::Top, l(n + 4), r(n + 2));
    s.pair(PairLine::Left, l(n), r(n - 2));
    s.pair(PairLine::Left, l(n + 3), r(n + 1));
    Ok(s.finish())
}

/// An order-3 border found by exhaustive search: the first hit scanning
/// corner pairs in increasing order. Computed once.
pub fn recipe_n3() -> PairingScheme {
    static N3: OnceLock<PairingScheme> = OnceLock::new();
    N3.get_or_init(|| {
        use crate::enumerate::{search_first, OmegaKey};
        let n = InnerOrder::new(3).expect("3 is a valid inner order");
        let pool = crate::numbers::border_pool(n);
        let plan = pool
            .iter()
            .flat_map(|&v| pool.iter().map(move |&w| (v, w)))
            .filter_map(|(v, w)| OmegaKey::new(n, v, w).ok())
            .find_map(|key| search_first(key).ok())
            .expect("order-3 magic borders exist")
            .to_plan();
        PairingScheme::from_plan(&plan).expect("search output is a pool plan")
    })
    .clone()
}

/// The recipe scheme for inner order `n`.
pub fn border_scheme(n: usize) -> Result<PairingScheme> {
    let order = InnerOrder::new(n)?;
    match RecipeCase::for_order(order) {
        RecipeCase::N3Special => Ok(recipe_n3()),
        RecipeCase::N4Direct | RecipeCase::Even4k => recipe_even_4k(n / 4),
        RecipeCase::Even4kPlus2 => recipe_even_4k_plus_2((n - 2) / 4),
        RecipeCase::OddGeneral => recipe_odd(n),
    }
}

/// A magic border of inner order `n`; deterministic in `n`.
pub fn build_border(n: usize) -> Result<BorderPlan> {
    border_scheme(n).map(|s| s.to_plan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{d_corner, d_value};
    use crate::verify::{verify_balance, verify_border};
    use std::collections::BTreeSet;

    fn set(xs: &[i64]) -> BTreeSet<i64> {
        xs.iter().copied().collect()
    }

    fn assert_plan(p: &BorderPlan, v: i64, w: i64, b: &[i64], c: &[i64]) {
        assert_eq!((p.v, p.w), (v, w));
        assert_eq!(set(&p.b), set(b));
        assert_eq!(set(&p.c), set(c));
    }

    #[test]
    fn first_part_alone_at_four() {
        let p = recipe_even_4k(1).unwrap().to_plan();
        assert_plan(&p, 35, 32, &[1, 3, 33, 7], &[6, 29, 9, 27]);
        assert_eq!(p.top_sum(), 111);
        assert!(verify_border(&p).valid);
    }

    #[test]
    fn first_part_alone_at_six() {
        let p = recipe_even_4k_plus_2(1).unwrap().to_plan();
        assert_plan(&p, 1, 4, &[63, 62, 5, 59, 58, 8], &[10, 56, 54, 12, 52, 14]);
        assert_eq!(p.top_sum(), 260);
        assert!(verify_border(&p).valid);
    }

    #[test]
    fn order_ten_left_balance() {
        let s = recipe_even_4k_plus_2(2).unwrap();
        let n = s.n;
        assert_eq!(d_value(1, 141, n).unwrap(), -3);
        // first-part left pairs: rows 9..=14
        let first: i64 = s
            .pairs
            .iter()
            .filter(|p| p.line == PairLine::Left)
            .take(3)
            .map(|p| p.d(n))
            .sum();
        assert_eq!(first, 3);
    }

    #[test]
    fn block_deviations() {
        let s = recipe_even_4k(2).unwrap();
        let n = s.n;
        let block: Vec<i64> = s
            .pairs
            .iter()
            .filter(|p| (11..=14).contains(&p.first.min(n.complement_base() - p.first)))
            .map(|p| p.d(n))
            .collect();
        assert_eq!(block, vec![-1, 1]);
    }

    #[test]
    fn odd_sum_identity() {
        for n in (5..60).step_by(2) {
            let n = n as i64;
            assert_eq!((n + 4) + (n - 5) * (n + 5) / 2 + 4, (n * n + 2 * n - 9) / 2);
        }
        let s = recipe_odd(7).unwrap();
        assert_eq!(s.balance(PairLine::Top), 27);
        assert_eq!(s.balance(PairLine::Left), 27);
        assert_eq!(d_corner(14, s.n).unwrap(), -27);
    }

    #[test]
    fn order_nine() {
        let p = build_border(9).unwrap();
        assert_eq!((p.v, p.w), (16, 10));
        assert!(verify_border(&p).valid);
    }

    #[test]
    fn order_three() {
        let s = recipe_n3();
        let p = s.to_plan();
        assert_eq!(p.top_sum(), 65);
        assert!(verify_border(&p).valid);
        assert!(verify_balance(&p, &s).unwrap().valid);
        for x in p.selected() {
            assert!((1..=8).contains(&x) || (18..=25).contains(&x));
        }
    }

    #[test]
    fn schemes_validate_and_balance() {
        for n in 3..=50 {
            let s = border_scheme(n).unwrap();
            s.validate().unwrap();
            let p = s.to_plan();
            let report = verify_balance(&p, &s).unwrap();
            assert!(report.valid, "n = {n}: {report}");
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(recipe_even_4k(0).is_err());
        assert!(recipe_even_4k_plus_2(0).is_err());
        assert!(recipe_odd(6).is_err());
        assert!(recipe_odd(3).is_err());
        assert!(build_border(2).is_err());
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_border(23).unwrap(), build_border(23).unwrap());
    }
}
