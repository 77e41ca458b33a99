//! Bordered magic squares of any order, built by wrapping borders around a
//! classical order-3 or order-4 core.

use crate::construct::build_border;
use crate::error::{Error, Result};
use crate::plan::{BorderFrame, BorderPlan, MagicSquare};
use crate::verify::verify_border;

/// The fixed core squares: Lo Shu at 3 and Dürer's square at 4.
pub fn base_square(order: usize) -> Result<MagicSquare> {
    match order {
        3 => MagicSquare::from_rows(&[[2, 7, 6], [9, 5, 1], [4, 3, 8]]),
        4 => MagicSquare::from_rows(&[
            [16, 3, 2, 13],
            [5, 10, 11, 8],
            [9, 6, 7, 12],
            [4, 15, 14, 1],
        ]),
        _ => Err(Error::Order(
            order as i64,
            "base squares exist for orders 3 and 4",
        )),
    }
}

/// Lays a magic border out on its `(n+2) × (n+2)` frame.
pub fn render_frame(plan: &BorderPlan) -> Result<BorderFrame> {
    let report = verify_border(plan);
    if !report.valid {
        return Err(Error::InvalidPlan(report.to_string()));
    }
    Ok(BorderFrame::from_plan(plan))
}

/// Wraps `inner` (order `n`) in `plan`, shifting inner entries by `2n+2`.
pub fn wrap(inner: &MagicSquare, plan: &BorderPlan) -> Result<MagicSquare> {
    let n = inner.order();
    if plan.n.get() != n {
        return Err(Error::InvalidPlan(format!(
            "border of inner order {} cannot wrap a square of order {n}",
            plan.n
        )));
    }
    let frame = render_frame(plan)?;
    let m = n + 2;
    let shift = 2 * n as i64 + 2;
    let mut out = MagicSquare::new(m, vec![0; m * m])?;
    for r in 0..m {
        for c in 0..m {
            let x = match frame.get(r, c) {
                Some(x) => x,
                None => inner.get(r - 1, c - 1) + shift,
            };
            out.set(r, c, x);
        }
    }
    Ok(out)
}

/// A core square and the borders wrapped around it, innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStack {
    pub base: MagicSquare,
    pub layers: Vec<BorderPlan>,
}

impl LayerStack {
    /// The recipe layers for a square of order `order`.
    pub fn for_order(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::Order(
                order as i64,
                "bordered squares need order at least 3 (orders 1 and 2 are not supported)",
            ));
        }
        let core = if order % 2 == 1 { 3 } else { 4 };
        let layers = (core..order)
            .step_by(2)
            .map(build_border)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base: base_square(core)?,
            layers,
        })
    }

    pub fn order(&self) -> usize {
        self.base.order() + 2 * self.layers.len()
    }

    /// Assembles the square, checking that each layer fits the previous one.
    pub fn assemble(&self) -> Result<MagicSquare> {
        self.layers
            .iter()
            .try_fold(self.base.clone(), |sq, plan| wrap(&sq, plan))
    }
}

/// A bordered magic square of order `order ≥ 3`.
pub fn build_square(order: usize) -> Result<MagicSquare> {
    LayerStack::for_order(order)?.assemble()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::InnerOrder;
    use crate::verify::{verify_bordered, verify_square};

    #[test]
    fn base_squares() {
        for k in [3, 4] {
            assert!(verify_square(&base_square(k).unwrap()).valid);
        }
        assert!(base_square(5).is_err());
    }

    #[test]
    fn small_orders_rejected() {
        for k in [0, 1, 2] {
            assert!(build_square(k).is_err());
        }
    }

    #[test]
    fn squares_are_bordered() {
        for k in 3..=16 {
            let sq = build_square(k).unwrap();
            assert_eq!(sq.order(), k);
            let r = verify_bordered(&sq);
            assert!(r.valid, "order {k}: {r}");
        }
    }

    #[test]
    fn nine_wraps_seven() {
        let nine = build_square(9).unwrap();
        let seven = build_square(7).unwrap();
        for r in 0..7 {
            for c in 0..7 {
                assert_eq!(nine.get(r + 1, c + 1), seven.get(r, c) + 16);
            }
        }
        let border = build_border(7).unwrap();
        assert_eq!(nine.get(0, 0), border.v);
        assert_eq!(nine.get(0, 8), border.w);
    }

    #[test]
    fn frame_corners_complement() {
        let plan = build_border(8).unwrap();
        let f = render_frame(&plan).unwrap();
        assert_eq!(f.get(0, 0).unwrap() + f.get(9, 9).unwrap(), 101);
        assert_eq!(f.get(0, 9).unwrap() + f.get(9, 0).unwrap(), 101);
        let bad = BorderPlan::new(
            InnerOrder::new(4).unwrap(),
            1,
            2,
            vec![34, 33, 32, 8],
            vec![6, 30, 29, 10],
        );
        assert!(render_frame(&bad).is_err());
    }
}
