// Words, canonical forms and evaluation in a matrix model.
//
// Run with `cargo run --example free_algebra`.

use invk::matrix::{Matrix, MatrixContext};
use invk::parser::{default_labels, parse_expr};
use invk::words::basis_words;
use invk::{FreeContext, InvariantContext, Word};

pub fn run_example() -> invk::Result<()> {
    let labels = default_labels(2);

    // q q = q and q a q = q a, so every canonical word carries at most one q
    let w = Word::from_codes(&[0, 1, 0, 2, 0]);
    println!("q*x1*q*x2*q canonicalizes to {}", w.canonicalize());

    // (m + 2) n^m canonical words of X-degree m for m >= 1
    for m in 0..=3 {
        let count = basis_words(2, m).iter().filter(|w| w.x_degree() == m).count();
        println!("n = 2, X-degree {m}: {count} canonical words");
    }

    let a = parse_expr("x1 + 1/2*q*x2", &labels)?;
    let b = parse_expr("x2*q - x1", &labels)?;
    let ab = FreeContext.mul(&a, &b)?;
    println!("({a}) * ({b}) = {ab}");

    // evaluate in (End(V), q) with V = k^2, W = span{e1}, q = diag(0, 1)
    let ctx = MatrixContext::new(Matrix::from_ints(&[&[0, 0], &[0, 1]]))?;
    let images = [Matrix::from_ints(&[&[0, 1], &[0, 0]]), Matrix::from_ints(&[&[1, 0], &[0, 2]])];
    let lhs = ab.evaluate(&images, &ctx)?;
    let rhs = a.evaluate(&images, &ctx)?.mul(&b.evaluate(&images, &ctx)?)?;
    println!("evaluation is multiplicative: {}", lhs == rhs);
    assert_eq!(lhs, rhs);
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
