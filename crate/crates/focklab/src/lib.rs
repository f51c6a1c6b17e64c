//! Exact computations in fermionic and bosonic Fock space.
//!
//! The basis of the fermionic space is indexed three equivalent ways: by
//! charged partitions `(λ, h)`, by Maya diagrams (a two-coloring of the
//! half-integer line, cofinitely black to the left of 0), and by
//! normally-ordered semi-infinite wedges. The canonical index used
//! throughout is [`ChargedPartition`]; Maya diagrams and wedge index lists
//! are views.
//!
//! On top of the basis combinatorics the crate implements, all with exact
//! rational (or Laurent-polynomial) coefficients:
//!
//! * the Clifford generators `psi(m)`, `psi_star(m)` acting on wedges,
//! * the Heisenberg generators `alpha(k)` (bead moves / ribbon operators),
//!   the charge operator and the shift operator,
//! * Schur functions, power-sum expansions, character polynomials and the
//!   isomorphism onto the polynomial side,
//! * truncated vertex-operator series and the boson-fermion dictionary,
//! * the infinite matrix algebra with its corrected central bracket,
//!   affine sl/gl with Chevalley generators, and
//! * the q-deformed box add/remove action over Laurent polynomials in q.
//!
//! The [`verify`] module packages the identity sweeps used by the CLI and
//! the acceptance tests.
//!
//! ```
//! use focklab::boson::alpha_apply;
//! use focklab::{ChargedPartition, Rat};
//!
//! // Move one bead two places toward the tail, every possible way.
//! let state = ChargedPartition::from_parts(&[4, 3, 3, 1, 1], -1).unwrap();
//! assert_eq!(
//!     alpha_apply::<Rat>(2, &state).to_string(),
//!     "-|(4,2,2,1,1);-1> + |(4,3,1,1,1);-1> - |(4,3,3);-1>"
//! );
//!
//! // The same ket as a finite Maya window, and back.
//! use focklab::maya::{maya_of, maya_to_partition};
//! let window = maya_of(&state);
//! assert_eq!(window.window_lo().twice(), -11);
//! assert_eq!(maya_to_partition(&window).unwrap(), state);
//! ```

pub mod boson;
pub mod clifford;
pub mod error;
pub mod fock;
pub mod halfint;
pub mod matalg;
pub mod maya;
pub mod partition;
pub mod qfock;
pub mod scalar;
pub mod symfunc;
pub mod verify;
pub mod vertex;

pub use error::Error;
pub use fock::{FockVector, LinOp};
pub use halfint::HalfInt;
pub use partition::{BoxCoord, ChargedPartition, Color, Partition};
pub use scalar::{LaurentQ, Rat, Scalar};
