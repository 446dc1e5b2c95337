//! Chebyshev permutation polynomials over `Z/2^k` and `Z/3^k`.
//!
//! Fast modular evaluation, closed-form least periods, predicted cycle
//! spectra of the functional graph `x -> T_n(x)`, and brute-force oracles
//! for all of them.
//!
//! ```
//! use chebycycle::{predicted_spectrum, CycleSpectrum, Degree, Prime};
//!
//! let n = Degree::new(19).unwrap();
//! let s = predicted_spectrum(n, Prime::Two, 5).unwrap();
//! assert_eq!(s, CycleSpectrum::from([(1, 20), (2, 2), (4, 2)]));
//! ```

pub mod chebyshev;
pub mod error;
pub mod export;
pub mod graph;
pub mod padic;
pub mod period;
pub mod ring;

pub use chebyshev::{eval, eval_with_stats, is_permutation, iterate, EvalStats, Sign};
pub use error::{Error, Result};
pub use graph::{
    build_graph, build_graph_modulus, compose_spectra, cycle_states_p2, observed_spectrum,
    predicted_class_spectrum, predicted_spectrum, selfloops_p3, verify, BuildOptions, CycleSpectrum,
    GraphDecomposition, Mismatch, Parity, ResidueClass, VerifyReport, DEFAULT_MAX_STATES,
};
pub use padic::Valuation;
pub use period::{period_closed, period_oracle, PeriodAux, PeriodRecord};
pub use ring::{Degree, Prime, RingSpec};
