// Bounded-degree envelopes and their basis certificates.
//
// Run with `cargo run --example pbw_certificate`.

use invk::parser::parse_expr;
use invk::scalar::int;
use invk::{build_reducer, build_uncertified_quotient, BracketKind, Error, StructureConstants, Variant};

fn sl2() -> invk::Result<StructureConstants> {
    StructureConstants::from_table(
        3,
        BracketKind::Lie,
        &[
            (1, 2, vec![int(0), int(2), int(0)]),
            (2, 1, vec![int(0), int(-2), int(0)]),
            (1, 3, vec![int(0), int(0), int(-2)]),
            (3, 1, vec![int(0), int(0), int(2)]),
            (2, 3, vec![int(1), int(0), int(0)]),
            (3, 2, vec![int(-1), int(0), int(0)]),
        ],
    )
}

pub fn run_example() -> invk::Result<()> {
    let labels: Vec<String> = ["h", "e", "f"].map(String::from).to_vec();
    let r = build_reducer(&sl2()?, &int(1), Variant::Sixth, 3)?;
    let c = r.certificate();
    println!(
        "sl2, 6th, k = 1, D = 3: {} words = {} normal + {} relation rank, stable = {}",
        c.basis_count, c.normal_count, c.span_rank, c.stable
    );

    for text in ["f*e", "e*q*f - f*q*e", "q*h*e*q"] {
        let nf = r.reduce(&parse_expr(text, &labels)?)?;
        println!("  {text}  ->  {}", nf.as_free().display_with(&labels));
    }

    // a Leibniz algebra with <x1, x1> = x2: q <a, a> vanishes in every
    // invariant algebra, so q x2 = 0 and the normal monomials are dependent
    let lz2 = StructureConstants::from_table(2, BracketKind::Leibniz, &[(1, 1, vec![int(0), int(1)])])?;
    match build_reducer(&lz2, &int(1), Variant::Fourth, 3) {
        Err(Error::PbwDefect { reason, witness }) => println!("<x1,x1> = x2: {reason}; witness {witness}"),
        other => panic!("expected a PBW defect, got {other:?}"),
    }
    let q = build_uncertified_quotient(&lz2, &int(1), Variant::Fourth, 3)?;
    let qx2 = q.reduce(&parse_expr("q*x2", &["x1".into(), "x2".into()])?)?;
    println!("in the quotient itself q*x2 reduces to {qx2}");
    assert!(qx2.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() -> invk::Result<()> {
    run_example()
}
