//! Computer algebra for nonsymmetric operads and weight graded associative
//! algebras: enveloping operads, Gröbner bases for tree monomials and words,
//! quadratic duals, bar homology and Poincaré series.

pub mod bar;
pub mod catalog;
pub mod envelope;
pub mod linalg;
pub mod rewriting;
pub mod series;
pub mod tree;
