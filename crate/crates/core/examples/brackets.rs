// The Lie bracket `[x,y]_{6,k}` and the Leibniz bracket `<x,y>_{4,k}` on
// the free invariant algebra.
//
// Run with `cargo run --example brackets`.

use invk::parser::{default_labels, parse_expr};
use invk::scalar::{frac, int};
use invk::structures::{bracket4, bracket6, certify_bracket_identity};
use invk::{FreeContext, FreeElem, Variant};

pub fn run_example() -> invk::Result<()> {
    let (x, y) = (FreeElem::gen(1), FreeElem::gen(2));
    let k = int(2);
    println!("[x1, x2]_6 = {}", bracket6(&FreeContext, &x, &y, &k)?);
    println!("<x1, x2>_4 = {}", bracket4(&FreeContext, &x, &y, &k)?);

    // the 4th bracket is not antisymmetric: <x, x> is a non-zero element
    let xx = bracket4(&FreeContext, &x, &x, &k)?;
    let expected = parse_expr("3*x1*q*x1 - x1*x1*q - 2*q*x1*x1", &default_labels(1))?;
    println!("<x1, x1>_4 = {xx}");
    assert_eq!(xx, expected);

    // both identities are polynomial of degree <= 2 in k, so five exact
    // samples settle them for every k
    let samples = [int(0), int(1), int(-1), int(2), frac(1, 2)];
    for variant in [Variant::Sixth, Variant::Fourth] {
        let report = certify_bracket_identity(variant, &samples)?;
        println!("{variant} bracket identity on three generators: certified = {}", report.certified);
        assert!(report.certified);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
