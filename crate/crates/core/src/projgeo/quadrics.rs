//! The invariant quadrics through the twisted cubic, and the quadric of invariant lines.

use super::mpoly::{mvar, MPoly};

fn x(i: usize) -> MPoly {
    mvar(&format!("x{i}"))
}

fn xx(i: usize, j: usize) -> MPoly {
    &x(i) * &x(j)
}

/// `x0 x3 - x1 x2`
pub fn q1() -> MPoly {
    &xx(0, 3) - &xx(1, 2)
}

/// `x1^2 + x2^2 - x0 x2 - x1 x3`
pub fn q2() -> MPoly {
    &(&(&xx(1, 1) + &xx(2, 2)) - &xx(0, 2)) - &xx(1, 3)
}

/// `x1^2 - x2^2 - x0 x2 + x1 x3`
pub fn q3() -> MPoly {
    &(&(&xx(1, 1) - &xx(2, 2)) - &xx(0, 2)) + &xx(1, 3)
}

/// `x0 x1 - x2 x3`, the union of the invariant lines.
pub fn q4() -> MPoly {
    &xx(0, 1) - &xx(2, 3)
}
