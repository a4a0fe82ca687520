//! Exact machinery for second and third Hankel determinant bounds on the
//! class of analytic functions subordinate to `1 + 4z/3 + 2z²/3`.
//!
//! The building blocks are truncated power series over exact rationals
//! ([`series`]), the coefficient maps and Hankel functionals
//! ([`functionals`]), parametrizations of Carathéodory and Schwarz
//! coefficients ([`params`]), the closed-form maximum of
//! `|A + Bz + Cz²| + 1 − |z|²` ([`ykc`]), and Bernstein subdivision
//! certificates for bivariate polynomials ([`bernstein`]). The
//! [`pipelines`] module assembles them into end-to-end verifications.

pub mod bernstein;
pub mod error;
pub mod functionals;
pub mod json;
pub mod params;
pub mod phi;
pub mod pipelines;
pub mod scalar;
pub mod series;
pub mod ykc;
