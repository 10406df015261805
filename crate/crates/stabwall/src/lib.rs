//! Exact-arithmetic engine for stability walls and chambers of one-dimensional
//! classes on projective 3-space.
//!
//! The engine works entirely over arbitrary-precision rationals: K-classes are
//! four exact rationals, Hilbert polynomials are cubics with rational
//! coefficients, wall curves are rational functions `u^2(t) = 2 P(t)/Q(t)`,
//! and every root is certified by a Sturm-sequence isolating interval.
//! Floating point appears only in reporting layers.
//!
//! Modules:
//! - [`kclass`]: Chern-character arithmetic, Hilbert polynomials, Euler
//!   pairing, derived duals.
//! - [`poly`] / [`roots`]: univariate rational polynomials and certified real
//!   root isolation.
//! - [`charge`]: central charges, slopes, quadratic forms, the quiver region
//!   and the support-cone margin.
//! - [`wall`]: numerical wall curves in the `(t, u)`-plane, their
//!   classification, intersections and boundedness formulas.
//! - [`quiver`] / [`subcomplex`]: dimension-vector calculus for the hearts
//!   `A_n`, wall scans, stable ranges, and coordinate subcomplex enumeration.
//! - [`multipoly`] / [`kronecker`]: matrices of homogeneous forms, exactness
//!   of resolutions, and King stability for the (2,3) Kronecker quiver.
//! - [`fixtures`]: the canonical matrices and chains used throughout.

#![forbid(unsafe_code)]

pub mod charge;
pub mod fixtures;
pub mod kclass;
pub mod kronecker;
pub mod multipoly;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod roots;
pub mod subcomplex;
pub mod wall;

pub use kclass::KClass;
pub use poly::RatPoly;
pub use quiver::DimVector;
pub use roots::{CertifiedReal, IsolatedRoot};
pub use wall::WallCurve;
