//! Fixture forms shared by the benchmarks.

use pform_core::catalog;
use pform_core::{PeriodicForm, Pqf, Rational};

pub fn e8() -> Pqf {
    catalog::e_gram(8)
}

pub fn fluid_diamond_quarter() -> PeriodicForm {
    catalog::fluid_diamond(&pform_core::rational::rat(1, 4))
}

pub fn diag12() -> PeriodicForm {
    PeriodicForm::lattice(Pqf::from_i64_rows(&[vec![1, 0], vec![0, 2]]).expect("positive definite"))
}

/// Target for closest vector searches: the deep hole direction of D_9 + t.
pub fn half_vector(d: usize) -> Vec<Rational> {
    vec![pform_core::rational::rat(1, 2); d]
}
