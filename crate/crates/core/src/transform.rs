//! Symmetries of the square acting on border plans, and reordering of the
//! line interiors. Both preserve magic borders.

use crate::error::{Error, Result};
use crate::plan::BorderPlan;

/// The eight symmetries of the square. Rotations are clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BorderSymmetry {
    Identity,
    /// Mirror through the vertical axis (left ↔ right).
    ReflectVertical,
    /// Mirror through the horizontal axis (top ↔ bottom).
    ReflectHorizontal,
    Rotate180,
    /// Mirror through the main diagonal.
    Transpose,
    /// Mirror through the anti-diagonal.
    AntiTranspose,
    Rotate90,
    Rotate270,
}

impl BorderSymmetry {
    pub const ALL: [BorderSymmetry; 8] = [
        BorderSymmetry::Identity,
        BorderSymmetry::ReflectVertical,
        BorderSymmetry::ReflectHorizontal,
        BorderSymmetry::Rotate180,
        BorderSymmetry::Transpose,
        BorderSymmetry::AntiTranspose,
        BorderSymmetry::Rotate90,
        BorderSymmetry::Rotate270,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BorderSymmetry::Identity => "identity",
            BorderSymmetry::ReflectVertical => "reflect_vertical",
            BorderSymmetry::ReflectHorizontal => "reflect_horizontal",
            BorderSymmetry::Rotate180 => "rotate_180",
            BorderSymmetry::Transpose => "transpose",
            BorderSymmetry::AntiTranspose => "anti_transpose",
            BorderSymmetry::Rotate90 => "rotate_90",
            BorderSymmetry::Rotate270 => "rotate_270",
        }
    }

    /// Action on centred coordinates `(x, y)` (x to the right, y down), as a
    /// signed permutation matrix `[[a, b], [c, d]]`.
    fn matrix(self) -> [[i8; 2]; 2] {
        match self {
            BorderSymmetry::Identity => [[1, 0], [0, 1]],
            BorderSymmetry::ReflectVertical => [[-1, 0], [0, 1]],
            BorderSymmetry::ReflectHorizontal => [[1, 0], [0, -1]],
            BorderSymmetry::Rotate180 => [[-1, 0], [0, -1]],
            BorderSymmetry::Transpose => [[0, 1], [1, 0]],
            BorderSymmetry::AntiTranspose => [[0, -1], [-1, 0]],
            BorderSymmetry::Rotate90 => [[0, -1], [1, 0]],
            BorderSymmetry::Rotate270 => [[0, 1], [-1, 0]],
        }
    }

    fn from_matrix(m: [[i8; 2]; 2]) -> Self {
        Self::ALL
            .into_iter()
            .find(|s| s.matrix() == m)
            .expect("dihedral group is closed")
    }

    /// The symmetry equal to applying `self` and then `next`.
    pub fn then(self, next: BorderSymmetry) -> BorderSymmetry {
        let (a, b) = (next.matrix(), self.matrix());
        let mut m = [[0i8; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::from_matrix(m)
    }

    pub fn inverse(self) -> BorderSymmetry {
        Self::ALL
            .into_iter()
            .find(|&s| self.then(s) == BorderSymmetry::Identity)
            .expect("every symmetry has an inverse")
    }

    /// Maps cell `(row, col)` of an `m × m` grid to its image.
    pub fn map_cell(self, m: usize, row: usize, col: usize) -> (usize, usize) {
        let [[a, b], [c, d]] = self.matrix();
        let (x, y) = (
            2 * col as i64 - (m as i64 - 1),
            2 * row as i64 - (m as i64 - 1),
        );
        let (nx, ny) = (a as i64 * x + b as i64 * y, c as i64 * x + d as i64 * y);
        (
            ((ny + m as i64 - 1) / 2) as usize,
            ((nx + m as i64 - 1) / 2) as usize,
        )
    }
}

fn rev(xs: &[i64]) -> Vec<i64> {
    xs.iter().rev().copied().collect()
}

/// Image of a plan under a symmetry of the square.
pub fn apply_symmetry(plan: &BorderPlan, s: BorderSymmetry) -> BorderPlan {
    let bar = |x: i64| plan.complement(x);
    let bars = |xs: &[i64]| xs.iter().map(|&x| bar(x)).collect::<Vec<_>>();
    let (v, w, b, c) = (plan.v, plan.w, &plan.b, &plan.c);
    let (nv, nw, nb, nc) = match s {
        BorderSymmetry::Identity => (v, w, b.clone(), c.clone()),
        BorderSymmetry::ReflectVertical => (w, v, rev(b), bars(c)),
        BorderSymmetry::ReflectHorizontal => (bar(w), bar(v), bars(b), rev(c)),
        BorderSymmetry::Rotate180 => (bar(v), bar(w), rev(&bars(b)), rev(&bars(c))),
        BorderSymmetry::Transpose => (v, bar(w), c.clone(), b.clone()),
        BorderSymmetry::AntiTranspose => (bar(v), w, rev(&bars(c)), rev(&bars(b))),
        BorderSymmetry::Rotate90 => (bar(w), v, rev(c), bars(b)),
        BorderSymmetry::Rotate270 => (w, bar(v), bars(c), rev(b)),
    };
    BorderPlan::new(plan.n, nv, nw, nb, nc)
}

/// All eight images, in [`BorderSymmetry::ALL`] order.
pub fn orbit(plan: &BorderPlan) -> Vec<(BorderSymmetry, BorderPlan)> {
    BorderSymmetry::ALL
        .into_iter()
        .map(|s| (s, apply_symmetry(plan, s)))
        .collect()
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::NotPermutation {
            len,
            detail: format!("has {} entries", perm.len()),
        });
    }
    let mut seen = vec![false; len];
    for &i in perm {
        if i >= len || std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotPermutation {
                len,
                detail: format!("bad or repeated index {i}"),
            });
        }
    }
    Ok(())
}

/// Reorders the top-row and left-column interiors: entry `i` of the new `b`
/// is `b[perm_b[i]]`, likewise for `c`. Complements follow their values.
pub fn permute_lines(plan: &BorderPlan, perm_b: &[usize], perm_c: &[usize]) -> Result<BorderPlan> {
    check_permutation(perm_b, plan.b.len())?;
    check_permutation(perm_c, plan.c.len())?;
    Ok(BorderPlan::new(
        plan.n,
        plan.v,
        plan.w,
        perm_b.iter().map(|&i| plan.b[i]).collect(),
        perm_c.iter().map(|&i| plan.c[i]).collect(),
    ))
}

/// Maps corners to the representative with both values in `1..=2n+2`,
/// returning the symmetry that carries a border with the representative
/// corners back to one with the requested corners.
///
/// Complementing `v` alone, `w` alone, or both, and swapping them, are all
/// realised by symmetries of the square.
pub fn reduce_corners(
    plan_n: crate::numbers::InnerOrder,
    v: i64,
    w: i64,
) -> ((i64, i64), BorderSymmetry) {
    let small = plan_n.rows() as i64;
    let cb = plan_n.complement_base();
    let (v_big, w_big) = (v > small, w > small);
    let rep = (
        if v_big { cb - v } else { v },
        if w_big { cb - w } else { w },
    );
    // each of these sends corners (v, w) to the listed pair
    let back = match (v_big, w_big) {
        (false, false) => BorderSymmetry::Identity,
        // (v, w) -> (v, w̄)
        (false, true) => BorderSymmetry::Transpose,
        // (v, w) -> (v̄, w)
        (true, false) => BorderSymmetry::AntiTranspose,
        // (v, w) -> (v̄, w̄)
        (true, true) => BorderSymmetry::Rotate180,
    };
    (rep, back)
}
