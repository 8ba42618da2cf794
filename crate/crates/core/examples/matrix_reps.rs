// Matrix models `End_W(V)`, representations into them, their extension to
// the envelope, and the left-regular embedding.
//
// Run with `cargo run --example matrix_reps`.

use invk::linrep::{check_rep, extend_to_envelope, regular_embedding, LinearInvariantAlgebra, MatRep, MatrixAlgebra};
use invk::matrix::Matrix;
use invk::scalar::int;
use invk::{build_reducer, BracketKind, StructureConstants, Variant};

pub fn run_example() -> invk::Result<()> {
    // V = k^2, W = span{e1}, q = diag(0, 1)
    let q = Matrix::from_ints(&[&[0, 0], &[0, 1]]);
    let end_w = LinearInvariantAlgebra::new(2, vec![vec![int(1), int(0)]], q.clone())?;
    println!("[[1,2],[0,3]] preserves W: {}", end_w.in_end_w(&Matrix::from_ints(&[&[1, 2], &[0, 3]]))?);
    println!("[[1,0],[1,1]] preserves W: {}", end_w.in_end_w(&Matrix::from_ints(&[&[1, 0], &[1, 1]]))?);

    let ab1 = StructureConstants::zero(1, BracketKind::Lie);
    let rep = MatRep::new(vec![Matrix::from_ints(&[&[0, 1], &[0, 0]])], end_w, int(1))?;
    let rr = check_rep(&ab1, &rep, Variant::Sixth)?;
    println!("x -> [[0,1],[0,0]] is a representation: {}", rr.passed());

    let r = build_reducer(&ab1, &int(1), Variant::Sixth, 3)?;
    let ext = extend_to_envelope(&r, &rep)?;
    println!(
        "extension to the envelope: {} monomials, {} products checked, homomorphism = {}",
        ext.monomials,
        ext.pairs_checked,
        ext.passed()
    );

    let upper = MatrixAlgebra::new(
        vec![
            Matrix::from_ints(&[&[1, 0], &[0, 0]]),
            Matrix::from_ints(&[&[0, 1], &[0, 0]]),
            Matrix::from_ints(&[&[0, 0], &[0, 1]]),
        ],
        q,
    )?;
    let emb = regular_embedding(&upper)?;
    println!(
        "upper triangular 2x2: dim A = {}, dim ann = {}, embedding passes = {}",
        emb.dim_a,
        emb.dim_ann,
        emb.passed()
    );
    assert!(rr.passed() && ext.passed() && emb.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
