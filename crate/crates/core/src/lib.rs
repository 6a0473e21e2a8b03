//! Generalized biserial quiver algebras: presentations, an exact algebra
//! engine over rationals and prime fields, an independent Gröbner-basis
//! dimension oracle, and import from bisected quivers with a function `h`.

pub mod algebra;
pub mod cbvf;
pub mod cli;
pub mod diagnostics;
pub mod field;
pub mod presentation;
pub mod quiver;
