//! Coalgebras given by structure constants, their morphisms, subcoalgebras,
//! coideals, quotients and dual algebras.

mod dual;
mod families;
mod structure;

pub use dual::DualAlgebra;
pub use families::{
    direct_sum, divided_power, family, family_names, grouplike, matrix_coalgebra,
    CoalgebraFamily, DividedPower, Grouplike, MatrixCoalgebra,
};
pub use structure::{
    is_coideal, is_subcoalgebra, quotient_coalgebra, restrict_coalgebra, AxiomViolation,
    Coalgebra, CoalgebraMorphism, Law,
};
