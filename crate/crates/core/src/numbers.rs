//! Arithmetic of magic borders: magic constants, complements, the border
//! number pool and the two-column diagram.
//!
//! A border around an `n × n` core uses the `2n + 2` smallest and `2n + 2`
//! largest numbers of `1..=(n+2)²`. Writing the small numbers `1..=2n+2` in a
//! left column and each one's complement in a right column gives the
//! *diagram*: row `i` holds `i` on the left and `C - i` on the right, where
//! `C = (n+2)² + 1`. Every magic border picks exactly one value per row.

use std::fmt;

use crate::error::{Error, Result};

/// Order of the square a border surrounds. The border itself is
/// `(n+2) × (n+2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InnerOrder(usize);

impl InnerOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Order(n as i64, "inner order must be at least 3"));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Order of the framed square, `n + 2`.
    #[inline]
    pub fn outer(self) -> usize {
        self.0 + 2
    }

    /// `C = (n+2)² + 1`, the sum of two complementary border values.
    #[inline]
    pub fn complement_base(self) -> i64 {
        let m = self.outer() as i64;
        m * m + 1
    }

    /// Number of diagram rows, `2n + 2`.
    #[inline]
    pub fn rows(self) -> usize {
        2 * self.0 + 2
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Magic constant of the framed square.
    #[inline]
    pub fn outer_constant(self) -> i64 {
        constant(self.outer() as i64)
    }

    pub fn contains(self, x: i64) -> bool {
        self.locate(x).is_some()
    }

    /// Diagram row and side holding `x`, if `x` is in the pool.
    pub fn locate(self, x: i64) -> Option<(usize, Side)> {
        let rows = self.rows() as i64;
        let c = self.complement_base();
        if (1..=rows).contains(&x) {
            Some((x as usize, Side::Left))
        } else if (c - rows..c).contains(&x) {
            Some(((c - x) as usize, Side::Right))
        } else {
            None
        }
    }

    /// Value stored at `row` (1-based) on `side`.
    #[inline]
    pub fn value(self, row: usize, side: Side) -> i64 {
        debug_assert!((1..=self.rows()).contains(&row));
        match side {
            Side::Left => row as i64,
            Side::Right => self.complement_base() - row as i64,
        }
    }

    pub fn diagram(self) -> impl Iterator<Item = DiagramRow> {
        let c = self.complement_base();
        (1..=self.rows()).map(move |i| DiagramRow {
            index: i,
            left: i as i64,
            right: c - i as i64,
        })
    }

    pub(crate) fn check(self, x: i64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInPool {
                value: x,
                n: self.0,
            })
        }
    }
}

impl fmt::Display for InnerOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<usize> for InnerOrder {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

/// Column of the two-column diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One row of the diagram: `left + right = C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramRow {
    pub index: usize,
    pub left: i64,
    pub right: i64,
}

#[inline]
fn constant(order: i64) -> i64 {
    order * (order * order + 1) / 2
}

/// Common line sum `N(N²+1)/2` of a normal magic square of order `N`.
pub fn magic_constant(order: usize) -> Result<i64> {
    if order == 0 {
        return Err(Error::Order(0, "magic constant needs a positive order"));
    }
    Ok(constant(order as i64))
}

/// `C - x`, the value opposite `x` in the border.
pub fn complement(x: i64, n: InnerOrder) -> Result<i64> {
    n.check(x)?;
    Ok(n.complement_base() - x)
}

/// `{1..2n+2} ∪ {n²+2n+3..(n+2)²}` in increasing order.
pub fn border_pool(n: InnerOrder) -> Vec<i64> {
    let rows = n.rows() as i64;
    let c = n.complement_base();
    (1..=rows).chain(c - rows..c).collect()
}

/// Deviation `x + y - C` of a matched pair from a complementary pair.
pub fn d_value(x: i64, y: i64, n: InnerOrder) -> Result<i64> {
    n.check(x)?;
    n.check(y)?;
    Ok(x + y - n.complement_base())
}

/// Half-pair deviation `v - C/2` of a corner at odd orders. Total on the
/// integers; callers check pool membership.
pub fn d_corner(v: i64, n: InnerOrder) -> Result<i64> {
    if n.is_even() {
        return Err(Error::NotOdd(n.get()));
    }
    Ok(v - n.complement_base() / 2)
}
