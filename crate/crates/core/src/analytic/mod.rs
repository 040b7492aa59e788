//! Error-bounded real and complex arithmetic, modified Bessel functions and
//! the explicit bound expressions built from them.

mod ball;
mod bessel;
mod bounds;
mod complex;

pub use ball::{digits_to_bits, Ball, Verdict, RAD_PREC};
pub use bessel::{bessel_i, bessel_i_fixed_terms, MAX_ORDER};
pub use bounds::{
    asymptotic_scale, check_bessel_bounds, e_i2_ball, e_i2_rational, tail_majorant,
    BesselBoundReport,
};
pub use complex::ComplexBall;
