//! Border plans, frames and squares.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::InnerOrder;

/// A candidate magic border in `(v, w, b, c)` form.
///
/// `v` and `w` are the upper-left and upper-right corners, `b` the interior
/// of the top row (left to right) and `c` the interior of the left column
/// (top to bottom). The bottom row and right column hold the complements.
/// Nothing is checked on construction; see [`crate::verify::verify_border`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BorderPlan {
    pub n: InnerOrder,
    pub v: i64,
    pub w: i64,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl BorderPlan {
    pub fn new(n: InnerOrder, v: i64, w: i64, b: Vec<i64>, c: Vec<i64>) -> Self {
        Self { n, v, w, b, c }
    }

    /// Builds the plan and rejects it unless it is a magic border.
    pub fn validated(n: InnerOrder, v: i64, w: i64, b: Vec<i64>, c: Vec<i64>) -> Result<Self> {
        let plan = Self::new(n, v, w, b, c);
        let report = crate::verify::verify_border(&plan);
        if report.valid {
            Ok(plan)
        } else {
            Err(Error::InvalidPlan(report.to_string()))
        }
    }

    #[inline]
    pub fn complement(&self, x: i64) -> i64 {
        self.n.complement_base() - x
    }

    /// `v + Σb + w`.
    pub fn top_sum(&self) -> i64 {
        self.v + self.b.iter().sum::<i64>() + self.w
    }

    /// `v + Σc + w̄`.
    pub fn left_sum(&self) -> i64 {
        self.v + self.c.iter().sum::<i64>() + self.complement(self.w)
    }

    /// The set `A = {v, w} ∪ b ∪ c` in plan order.
    pub fn selected(&self) -> impl Iterator<Item = i64> + '_ {
        [self.v, self.w]
            .into_iter()
            .chain(self.b.iter().copied())
            .chain(self.c.iter().copied())
    }

    pub fn canonical(&self) -> CanonicalBorder {
        CanonicalBorder {
            n: self.n,
            v: self.v,
            w: self.w,
            b: self.b.iter().copied().collect(),
            c: self.c.iter().copied().collect(),
        }
    }

    pub fn corners(&self) -> (i64, i64) {
        (self.v, self.w)
    }
}

/// A border up to reordering of its top-row and left-column interiors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalBorder {
    pub n: InnerOrder,
    pub v: i64,
    pub w: i64,
    pub b: BTreeSet<i64>,
    pub c: BTreeSet<i64>,
}

impl CanonicalBorder {
    /// Plan with the line interiors in increasing order.
    pub fn to_plan(&self) -> BorderPlan {
        BorderPlan::new(
            self.n,
            self.v,
            self.w,
            self.b.iter().copied().collect(),
            self.c.iter().copied().collect(),
        )
    }
}

impl From<&BorderPlan> for CanonicalBorder {
    fn from(p: &BorderPlan) -> Self {
        p.canonical()
    }
}

/// `(n+2) × (n+2)` grid holding a border, with the `n × n` interior empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderFrame {
    pub n: InnerOrder,
    cells: Vec<Option<i64>>,
}

impl BorderFrame {
    pub fn size(&self) -> usize {
        self.n.outer()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<i64> {
        self.cells[row * self.size() + col]
    }

    pub fn cells(&self) -> &[Option<i64>] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Option<i64>]> {
        self.cells.chunks(self.size())
    }

    pub(crate) fn from_plan(plan: &BorderPlan) -> Self {
        let m = plan.n.outer();
        let mut cells = vec![None; m * m];
        let comp = |x: i64| plan.complement(x);
        let mut put = |r: usize, c: usize, x: i64| cells[r * m + c] = Some(x);
        put(0, 0, plan.v);
        put(0, m - 1, plan.w);
        put(m - 1, 0, comp(plan.w));
        put(m - 1, m - 1, comp(plan.v));
        for (i, &x) in plan.b.iter().enumerate() {
            put(0, i + 1, x);
            put(m - 1, i + 1, comp(x));
        }
        for (i, &x) in plan.c.iter().enumerate() {
            put(i + 1, 0, x);
            put(i + 1, m - 1, comp(x));
        }
        Self { n: plan.n, cells }
    }

    /// Reads a frame back from a grid whose interior is empty. The bottom row
    /// and right column are taken as given, so callers can detect frames
    /// whose opposite cells are not complementary.
    pub fn from_grid(size: usize, cells: Vec<Option<i64>>) -> Result<Self> {
        let n = InnerOrder::new(size.saturating_sub(2))?;
        if cells.len() != size * size {
            return Err(Error::InvalidPlan(format!(
                "frame of size {size} needs {} cells, got {}",
                size * size,
                cells.len()
            )));
        }
        for r in 0..size {
            for c in 0..size {
                let edge = r == 0 || c == 0 || r == size - 1 || c == size - 1;
                match (edge, cells[r * size + c]) {
                    (true, None) => {
                        return Err(Error::InvalidPlan(format!(
                            "frame cell ({r}, {c}) is empty"
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(Error::InvalidPlan(format!(
                            "frame interior cell ({r}, {c}) is filled"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { n, cells })
    }

    /// Plan read from the top row and left column.
    pub fn to_plan(&self) -> BorderPlan {
        let m = self.size();
        let at = |r, c| self.get(r, c).expect("frame edge cells are filled");
        BorderPlan::new(
            self.n,
            at(0, 0),
            at(0, m - 1),
            (1..m - 1).map(|i| at(0, i)).collect(),
            (1..m - 1).map(|i| at(i, 0)).collect(),
        )
    }
}

/// Square grid of integers in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicSquare {
    order: usize,
    cells: Vec<i64>,
}

impl MagicSquare {
    pub fn new(order: usize, cells: Vec<i64>) -> Result<Self> {
        if order == 0 || cells.len() != order * order {
            return Err(Error::Order(
                order as i64,
                "square needs a positive order and order² cells",
            ));
        }
        Ok(Self { order, cells })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for r in rows {
            let r = r.as_ref();
            if r.len() != order {
                return Err(Error::Order(
                    order as i64,
                    "rows must all have length order",
                ));
            }
            cells.extend_from_slice(r);
        }
        Self::new(order, cells)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cells[row * self.order + col]
    }

    pub fn cells(&self) -> &[i64] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.cells.chunks(self.order)
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, x: i64) {
        self.cells[row * self.order + col] = x;
    }
}

impl fmt::Display for MagicSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .cells
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
