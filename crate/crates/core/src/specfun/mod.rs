//! Special functions: log-gamma, Pochhammer symbols and `₂F₁`.

mod gamma;
mod hyp2f1;
pub mod quad;

pub use gamma::{gamma_ratio, ln_gamma, pochhammer};
pub use hyp2f1::{
    gauss_value, hyp2f1, hyp2f1_complement, hyp2f1_integral_oracle, hyp2f1_real,
    lemma_error_constant, Hyp2F1Method, Hyp2F1Query,
};
