// Comultiplication, sigma-counit and the antipode-like map on the
// enveloping algebra of a Lie algebra.
//
// Run with `cargo run --example hopf_sixth`.

use invk::coalgebra::{self, Bialgebra, HopfVariant, SSource};
use invk::scalar::int;
use invk::{build_reducer, BracketKind, StructureConstants, Variant};

pub fn run_example() -> invk::Result<()> {
    // two-dimensional non-abelian Lie algebra, [x1, x2] = x1
    let na2 = StructureConstants::from_table(
        2,
        BracketKind::Lie,
        &[(1, 2, vec![int(1), int(0)]), (2, 1, vec![int(-1), int(0)])],
    )?;
    let r = build_reducer(&na2, &int(2), Variant::Sixth, 3)?;
    let b = Bialgebra::attach(&r)?;

    let x1 = r.gen(1);
    let d = b.delta(&x1)?;
    println!("Delta(x1) = {d}");
    println!("(eps # id) Delta(x1) = {}", d.counit_left());
    println!("sigma(x1)            = {}", coalgebra::sigma(&r, &x1)?);

    let report = coalgebra::verify_bialgebra(&b, 2)?;
    for diagram in &report.diagrams {
        println!("  {:<50} {} cases, passed = {}", diagram.name, diagram.checked, diagram.passed());
    }

    let hopf = coalgebra::verify_hopflike(&r, HopfVariant::Sixth, 2, SSource::GeneratorAntihom)?;
    println!("antipode diagram on all monomials up to degree 2: {}", hopf.all_commute);
    println!("S(x1) = {}", coalgebra::extend_antipode_antihom(&r, &x1)?);

    let sol = coalgebra::solve_antipode(&r, HopfVariant::Sixth, 1)?;
    println!(
        "antipode system up to degree 1: {} unknowns, solution space of dimension {}, generator values consistent = {}",
        sol.summary.unknowns, sol.summary.solution_dim, sol.summary.consistent_with_generators
    );
    assert!(report.passed() && hopf.all_commute && sol.summary.residuals_zero);
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
