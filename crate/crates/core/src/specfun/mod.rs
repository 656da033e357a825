//! Bessel functions of integer order, their derivatives and zeros.

mod bessel;
mod zeros;

pub use bessel::{
    bessel_deriv, bessel_j, bessel_j_scaled, bessel_y, bessel_y_scaled, cylinder_pairs, j_pair, y_pair, BesselKind,
    BesselPair, CylinderPairs, Scaled,
};
pub use zeros::{bessel_j_zero, bessel_j_zero_value, BesselZero};
