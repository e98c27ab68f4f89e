//! Exact computation of the holomorphic-Morse intersection polynomial on
//! Green–Griffiths jet spaces of smooth degree-`d` hypersurfaces
//! `X ⊂ P^{n+1}`, the effective degree bounds that follow from it, and
//! brute-force checks of every identity used along the way.
//!
//! * [`arith`]: rationals, polynomials in `d`, truncated series in `h`.
//! * [`coeffs`]: the combinatorial coefficients `B_γ`, `C_α`, `Λ_{α,β}`.
//! * [`morse`]: Segre series of the weighted jet bundle and `P(n, d, ε)`.
//! * [`bounds`]: majorants, bounding lemmas, Fujiwara bound, thresholds.
//! * [`annex`]: the numerical weighted Whitney formula and its lattice
//!   and simplex identities.
//! * [`verify`]: suites combining the above into pass/fail reports.
//!
//! ```
//! use ggmorse_core::{morse_polynomial, positivity_threshold, JetParams};
//!
//! let params = JetParams::headline(2).unwrap(); // k = n = 2, ε = 13
//! let p = morse_polynomial(&params).unwrap();
//! assert_eq!(p.q.last().unwrap().to_string(), "1/2");
//! assert!(positivity_threshold(&p).unwrap() <= 1225);
//! ```

pub mod annex;
pub mod arith;
pub mod bounds;
pub mod coeffs;
mod error;
pub mod morse;
pub mod verify;

pub use arith::{parse_rational, HSeries, PolyD, Rational};
pub use bounds::{
    bounds_report, check_lemma_chain, d_epsilon, fujiwara_positive, majorants,
    positivity_threshold, theorem_bounds, BoundsReport, FujiwaraCertificate, LemmaVerdicts,
    MajorantTable, TheoremBounds,
};
pub use coeffs::{compute_b, compute_b_bruteforce, compute_c, CoeffTable};
pub use error::{Error, Result};
pub use morse::{morse_polynomial, JetParams, MorsePolynomial};
