//! Exact, desk-scale simulation of the quantum algorithms behind number-theoretic
//! problems, together with the classical algebra they rest on.
//!
//! Everything here runs on a classical machine with full state vectors, so sizes are
//! capped at what a laptop handles comfortably (state dimension up to about 2^20,
//! groups up to a few thousand elements). Within those caps the simulations are exact:
//! measurement distributions come from the actual amplitudes, not from asymptotic
//! formulas, which makes the library useful for checking the formulas themselves.
//!
//! The crate is organized in layers:
//!
//! * [`numtheory`]: arbitrary-precision integer utilities (extended gcd, continued
//!   fractions, Pell solver, CRT, primality, Jacobi symbols).
//! * [`finitefield`]: arithmetic in GF(p^r), traces, characters, classical Gauss sums.
//! * [`ecgroup`]: elliptic curve groups over prime fields at enumerable sizes.
//! * [`grouprep`]: finite groups (abelian, dihedral, Heisenberg), their irreducible
//!   representations, characters, and nonabelian Fourier matrices.
//! * [`quantumsim`]: sparse pure states over arbitrary label types, dense QFTs, the
//!   gate-level QFT circuit, phase estimation, the Hadamard test, and hidden subgroup
//!   coset states.
//! * [`abelian_hsp`]: period finding over Z_N and Z, order finding, factoring,
//!   discrete logarithms, and the generic abelian hidden subgroup solver.
//! * [`nonabelian_hsp`]: weak Fourier sampling for normal subgroups, the dihedral
//!   coset-state sieve, and the Heisenberg two-sample solver.
//! * [`hiddenshift`]: shifted multiplicative character problems (Legendre symbol and
//!   its extension-field version), Gauss sum estimation, and shifted-subset problems
//!   over Z_p^n.
//!
//! Randomized routines take an explicit RNG so every run is reproducible from a seed.

pub mod error;
pub mod numtheory;
pub mod finitefield;
pub mod ecgroup;
pub(crate) mod linalg;
pub mod grouprep;
pub mod quantumsim;
pub mod abelian_hsp;
pub mod nonabelian_hsp;
pub mod hiddenshift;

pub use error::{Error, Result};
pub use numtheory::{CFExpansion, Factorization};
pub use finitefield::{FieldElem, FieldSpec};
pub use ecgroup::{CurveSpec, ECPoint};
pub use grouprep::{FiniteGroup, GroupElem, GroupKind, Irrep, Subgroup};
