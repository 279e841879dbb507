//! Exact arithmetic for supercommutative polynomials, free associative
//! algebras and matrices over them, together with degree-bounded T-ideal
//! linear algebra.

pub mod exactlin;
pub mod algebras;
pub mod catalog;
pub mod freealg;
pub mod supercomm;
pub mod tideal;
pub mod report;
pub mod suites;
pub mod expr;
