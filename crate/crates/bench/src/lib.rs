//! Shared fixtures for the busgrid benchmarks.

use busgrid::{Cnf, Lit};

/// A fixed NAE-satisfiable formula over 5 variables with 8 clauses. Every
/// clause evaluates to at least one true and one false literal under
/// `(T, F, T, F, T)`, so satisfiability never depends on search luck. Its
/// reduction graph (545 buses, 437 connectors, 1644 incidences) is the
/// standard input for the benchmarks.
pub fn bench_formula() -> Cnf {
    let p = Lit::pos;
    let n = Lit::neg;
    Cnf::new(
        5,
        vec![
            [p(0), p(1), p(2)],
            [n(0), p(1), n(3)],
            [p(0), n(2), p(4)],
            [p(1), n(3), n(4)],
            [n(1), p(2), p(3)],
            [p(0), p(3), p(4)],
            [n(0), n(1), p(3)],
            [p(2), n(3), n(4)],
        ],
    )
    .expect("literals are in range")
}
