//! First-order perturbative results for the quartic oscillator.
//!
//! [`closed`] holds the published scalar witnesses as printed, one function
//! per bracket term. [`first_order`] builds the interaction-picture operator
//! `a_I(t)` to first order in `lambda` and, independently, the first-order
//! moment series over a coherent input; both feed [`crate::criteria`].

pub mod closed;
pub mod first_order;

pub use closed::{
    delta_y1_squared, hoa_witness_d, hoa_witness_d_half_pi, mean_photon_number,
    squeezing_witness_f, squeezing_witness_f_special, ClosedFormInputs,
};
pub use first_order::{a_interaction_first_order, first_order_matrix_moments, first_order_moments};
