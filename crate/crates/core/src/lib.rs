//! Exact nef-cone computations for Hilbert schemes of points on surfaces in
//! projective 3-space.
//!
//! The crate is `no_std` (it needs `alloc`) and has no IO. It provides:
//!
//! - [`algebra`]: exact rationals and sparse multivariate polynomials, with a
//!   small expression parser, Sylvester/Bareiss resultants and discriminants,
//!   and univariate squarefree machinery.
//! - [`ns`]: the rank-two slice spanned by `H^[n]` and `B^[n]`, intersection
//!   pairings with curve classes, and cone slices stored as exact data.
//! - [`curves`]: the catalog of test curves, with intersection numbers derived
//!   from genus and Riemann–Hurwitz counts.
//! - [`residuation`]: the residuation pullback `N^1(X^[d-2]) -> N^1(X^[2])` and
//!   the pullback classes of the hyperplane and Schubert divisors.
//! - [`engine`]: the case dispatcher assembling the best-known cone slice.
//! - [`flex`]: tangent planes, plane sections, multiplicities and surface
//!   r-flex verdicts, the explicit `X_{d,r}` and `Y_d` families, and the
//!   incidence-correspondence dimension count.
//! - [`oracle`]: an independent branch-point count by pencil discriminants.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod curves;
pub mod engine;
pub mod flex;
pub mod ns;
pub mod oracle;
pub mod residuation;

pub use algebra::{parse_poly, MultiPoly, Rational};
pub use curves::{CurveKind, GenusProfile};
pub use engine::{compute_cone, explain, ConeQuery, FlexData, FlexStatus, SurfaceKind};
pub use ns::{ConeSlice, ConeStatus, CurveClass, NsClass};
