// The two antipode-like diagrams on the enveloping algebra of a Leibniz
// algebra: the first only holds for k = 1, the second for every k != 0.
//
// Run with `cargo run --example hopf_fourth`.

use invk::coalgebra::{verify_hopflike, HopfVariant, SSource};
use invk::scalar::{frac, int};
use invk::{build_reducer, BracketKind, StructureConstants, Variant};

pub fn run_example() -> invk::Result<()> {
    let trivial = StructureConstants::zero(1, BracketKind::Leibniz);
    for k in [int(1), int(2), frac(-1, 3)] {
        let r = build_reducer(&trivial, &k, Variant::Fourth, 3)?;
        for which in [HopfVariant::Fourth1, HopfVariant::Fourth2] {
            let h = verify_hopflike(&r, which, 2, SSource::GeneratorAntihom)?;
            let failing: Vec<&str> = h
                .monomials
                .iter()
                .filter(|m| !m.commutes)
                .map(|m| m.monomial.as_str())
                .collect();
            println!(
                "k = {k:>4}, {which}: counit ok = {}, diagram commutes = {}, exploratory = {}, failing = {failing:?}",
                h.preamble_passed(),
                h.all_commute,
                h.exploratory
            );
            if which == HopfVariant::Fourth2 || k == int(1) {
                assert!(h.all_commute);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
