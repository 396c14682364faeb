//! Finite models: groups, modules over `ℤ/m`, the extended map on
//! `(G × V)²`, and exhaustive verification.

mod eval;
mod group;
pub mod io;
mod module;
pub mod presets;
mod solution;
mod sybe;

pub use eval::{apply_ring, eval_word, ring_matrix, CompiledElement, EvalError};
pub use group::{validate_group, FiniteGroup, GroupError};
pub use module::{validate_module, GModule, Matrix, ModuleError};
pub use solution::{
    base_solution, base_solution_unchecked, extended_solution, extended_solution_unchecked,
    Carrier, ColoredPoint, ExtendedSolution, SolutionError, SquareMap, MAX_CARRIER,
};
pub use sybe::{
    braid_sides, check_bijective, check_sybe, check_sybe_verbose, Bijectivity, CheckError,
    DecompositionReport, SecondFactors, SybeVerdict, SybeWitness, VerboseVerdict,
    DEFAULT_TRIPLE_BUDGET,
};

/// The closed-form second components `A, B, C` and `A′, B′, C′` for one
/// triple `((x,a), (y,b), (z,c))`.
pub fn second_factors(sol: &ExtendedSolution, points: [&ColoredPoint; 3]) -> SecondFactors {
    let tables = sol.tables();
    sybe::second_factors(
        &tables,
        &sol.module,
        (points[0].g, points[1].g, points[2].g),
        (&points[0].vec, &points[1].vec, &points[2].vec),
    )
}
