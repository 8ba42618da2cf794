//! Acceptance criteria A1-A8, one line per criterion.
//!
//! Runs as a plain binary (no libtest harness) so the verdict lines are
//! always printed. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use invk::coalgebra::{self, Bialgebra, HopfVariant, SSource};
use invk::envelope::check_embedding;
use invk::file::AlgebraFile;
use invk::linalg::{self, SparseRow};
use invk::linrep::{regular_embedding, MatrixAlgebra};
use invk::matrix::Matrix;
use invk::parser::{default_labels, parse_expr};
use invk::scalar::{frac, int};
use invk::structures::{bracket4, certify_bracket_identity, validate_structure, ViolationKind};
use invk::words::basis_words;
use invk::{
    build_reducer, build_uncertified_quotient, coalgebra::antipode_gen, BracketKind, Error, FreeContext,
    FreeElem, Letter, Reducer, Scalar, StructureConstants, Variant,
};

type Outcome = std::result::Result<String, String>;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load(name: &str) -> StructureConstants {
    AlgebraFile::load(data(name))
        .and_then(|f| f.definition())
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .structure
}

fn k_set() -> Vec<Scalar> {
    vec![int(1), int(2), int(-1), frac(1, 2)]
}

/// Collects failures instead of stopping at the first one.
#[derive(Default)]
struct Ledger {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Ledger {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        let mut detail = summary;
        for n in &self.notes {
            detail.push_str("\n      note: ");
            detail.push_str(n);
        }
        if self.failures.is_empty() {
            Ok(detail)
        } else {
            let mut msg = detail;
            for f in &self.failures {
                msg.push_str("\n      failed: ");
                msg.push_str(f);
            }
            Err(msg)
        }
    }
}

// ---------------------------------------------------------------------------
// A1: canonical words of the free invariant algebra

/// Union-find over words of the tensor algebra on `q, x_1..x_n` with at
/// most two q's, glued by single applications of `qq = q` and `q a q = q a`.
/// The relations are binomial, so the quotient of the truncated span has
/// one basis vector per class.
struct WordClasses {
    parent: Vec<usize>,
}

impl WordClasses {
    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// All words over `0..=n` (0 = q) with exactly `m` letters from `1..=n` and
/// at most two 0s.
fn tensor_words(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        let xs = w.iter().filter(|&&c| c != 0).count();
        let qs = w.len() - xs;
        if xs == m {
            out.push(w.clone());
        }
        if xs < m {
            for c in 1..=n {
                let mut v = w.clone();
                v.push(c);
                stack.push(v);
            }
        }
        if qs < 2 {
            let mut v = w;
            v.push(0);
            stack.push(v);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Number of classes and the rank of the binomial relation span.
fn free_quotient_dimension(n: usize, m: usize) -> (usize, usize, usize) {
    let words = tensor_words(n, m);
    let index: BTreeMap<&[usize], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut uf = WordClasses {
        parent: (0..words.len()).collect(),
    };
    let mut rows: Vec<SparseRow> = Vec::new();
    for (i, w) in words.iter().enumerate() {
        let qs: Vec<usize> = (0..w.len()).filter(|&p| w[p] == 0).collect();
        if let [_, b] = qs[..] {
            // q q = q when adjacent, q u q = q u otherwise; both delete the second q
            let mut v = w.clone();
            v.remove(b);
            let j = index[v.as_slice()];
            uf.union(i, j);
            let mut row = SparseRow::new();
            row.insert(i, int(1));
            row.insert(j, int(-1));
            rows.push(row);
        }
    }
    let classes = (0..words.len()).filter(|&i| uf.find(i) == i).count();
    let rank = linalg::rank(rows);
    (words.len(), classes, rank)
}

fn a1() -> Outcome {
    let mut l = Ledger::default();
    let mut checked = 0;
    for n in 1..=3usize {
        for m in 0..=5usize {
            let expected = if m == 0 { 2 } else { (m + 2) * n.pow(m as u32) };
            let enumerated = basis_words(n, m).iter().filter(|w| w.x_degree() == m).count();
            l.require(enumerated == expected, || format!("n={n} m={m}: {enumerated} canonical words, expected {expected}"));
            let (total, classes, rank) = free_quotient_dimension(n, m);
            l.require(classes == expected, || format!("n={n} m={m}: {classes} word classes, expected {expected}"));
            l.require(total - rank == expected, || {
                format!("n={n} m={m}: quotient dimension {} = {total} - {rank}, expected {expected}", total - rank)
            });
            checked += 1;
        }
    }
    l.finish(format!("count law and independence for {checked} (n, m) pairs, n <= 3, m <= 5"))
}

// ---------------------------------------------------------------------------
// A2: bracket identities on three free generators

fn a2() -> Outcome {
    let samples = [int(0), int(1), int(-1), int(2), frac(1, 2)];
    let mut l = Ledger::default();
    for variant in [Variant::Sixth, Variant::Fourth] {
        let report = certify_bracket_identity(variant, &samples).map_err(|e| e.to_string())?;
        l.require(report.certified && report.samples.len() == 5, || {
            format!("{variant}: {} defect not identically zero", report.identity)
        });
    }
    l.finish("Jacobi (6th) and right Leibniz (4th) defects are exactly 0 at k = 0, 1, -1, 2, 1/2".into())
}

// ---------------------------------------------------------------------------
// A3 / A4: P-B-W certificates

fn certify_all(
    l: &mut Ledger,
    algebras: &[(&str, StructureConstants, usize)],
    variant: Variant,
) -> Vec<(String, Reducer)> {
    let mut built = Vec::new();
    for (name, sc, degree) in algebras {
        for k in k_set() {
            match build_reducer(sc, &k, variant, *degree) {
                Ok(r) => {
                    let c = r.certificate();
                    l.require(c.passed() && c.normal_count + c.span_rank == c.basis_count, || {
                        format!("{name} k={k} D={degree}: certificate {c:?}")
                    });
                    match check_embedding(&r) {
                        Ok(e) => l.require(e.passed(), || format!("{name} k={k}: embedding defects {:?}", e.defects)),
                        Err(e) => l.require(false, || format!("{name} k={k}: {e}")),
                    }
                    built.push((format!("{name} k={k}"), r));
                }
                Err(e) => l.require(false, || format!("{name} k={k} D={degree}: {e}")),
            }
        }
    }
    built
}

fn a3() -> Outcome {
    let mut l = Ledger::default();
    let algebras = [
        ("abelian1", load("abelian1.json"), 4),
        ("abelian2", load("abelian2.json"), 4),
        ("nonabelian2", load("nonabelian2.json"), 4),
        ("heisenberg", load("heisenberg.json"), 3),
        ("sl2", load("sl2.json"), 3),
    ];
    let built = certify_all(&mut l, &algebras, Variant::Sixth);

    let anchor = build_reducer(&load("abelian2.json"), &int(1), Variant::Sixth, 2).map_err(|e| e.to_string())?;
    let c = anchor.certificate();
    l.require((c.basis_count, c.span_rank, c.normal_count) == (24, 3, 21), || {
        format!("abelian2 D=2: {} = {} + {}", c.basis_count, c.span_rank, c.normal_count)
    });
    for k in k_set() {
        for degree in 2..=5 {
            let r = build_reducer(&load("abelian1.json"), &k, Variant::Sixth, degree).map_err(|e| e.to_string())?;
            l.require(r.certificate().span_rank == 0, || format!("abelian1 k={k} D={degree}: non-zero rank"));
        }
    }
    l.finish(format!(
        "{} certified reducers (5 Lie algebras x 4 values of k); anchors 24 = 3 + 21 and rank 0 for abelian1",
        built.len()
    ))
}

fn a4() -> Outcome {
    let mut l = Ledger::default();
    let algebras = [
        ("leibniz-trivial1", load("leibniz-trivial1.json"), 3),
        ("leibniz2", load("leibniz2.json"), 3),
        ("sl2-as-leibniz", load("sl2.json").with_kind(BracketKind::Leibniz), 3),
    ];
    let built = certify_all(&mut l, &algebras, Variant::Fourth);

    let anchor = build_reducer(&load("leibniz-trivial1.json"), &int(1), Variant::Fourth, 2).map_err(|e| e.to_string())?;
    let c = anchor.certificate();
    l.require((c.basis_count, c.span_rank, c.normal_count) == (9, 1, 8), || {
        format!("leibniz-trivial1 D=2: {} = {} + {}", c.basis_count, c.span_rank, c.normal_count)
    });

    // q <a, a>_4 = 0 in every invariant algebra, so a non-zero <a, a> forces
    // the normal monomial q*<a, a> into the relation ideal
    let lz2 = load("leibniz2.json");
    let labels = default_labels(2);
    for k in k_set() {
        let q = build_uncertified_quotient(&lz2, &k, Variant::Fourth, 3).map_err(|e| e.to_string())?;
        let qx2 = q.reduce(&parse_expr("q*x2", &labels).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if qx2.is_zero() {
            l.notes.push(format!("leibniz2 k={k}: the normal monomial q*x2 is 0 in the quotient"));
        }
    }
    l.finish(format!(
        "{} of 12 reducers certified (3 Leibniz algebras x 4 values of k); anchor 9 = 1 + 8",
        built.len()
    ))
}

// ---------------------------------------------------------------------------
// A5 / A6: Hopf-like structures

fn check_degree(r: &Reducer) -> usize {
    if r.dim() <= 2 {
        3
    } else {
        2
    }
}

fn hopf_case(l: &mut Ledger, name: &str, r: &Reducer, which: HopfVariant) -> std::result::Result<(), String> {
    let e = |e: Error| format!("{name}: {e}");
    let deg = check_degree(r);
    let b = match Bialgebra::attach(r) {
        Ok(b) => b,
        Err(err) => {
            l.require(false, || format!("{name}: {err}"));
            return Ok(());
        }
    };
    let bialgebra = coalgebra::verify_bialgebra(&b, deg).map_err(e)?;
    for d in &bialgebra.diagrams {
        l.require(d.passed(), || format!("{name} {which}: {} fails on {:?}", d.name, d.failures));
    }
    let hopf = coalgebra::verify_hopflike(r, which, deg, SSource::GeneratorAntihom).map_err(e)?;
    for p in &hopf.preamble {
        l.require(p.passed(), || format!("{name} {which}: {} fails on {:?}", p.name, p.failures));
    }
    l.require(hopf.generators_commute, || format!("{name} {which}: antipode diagram fails on 1, q or a generator"));
    if !hopf.all_commute {
        let bad: Vec<&str> = hopf.monomials.iter().filter(|m| !m.commutes).map(|m| m.monomial.as_str()).collect();
        l.notes.push(format!("{name} {which}: anti-multiplicative S fails on {bad:?}"));
    }
    let sol = coalgebra::solve_antipode(r, which, 2.min(r.degree() - 1)).map_err(e)?;
    let s = &sol.summary;
    let definitive = (s.solvable && sol.solution.is_some()) || (!s.solvable && s.witness.is_some());
    l.require(definitive && s.residuals_zero, || format!("{name} {which}: solver summary {s:?}"));
    Ok(())
}

fn a5() -> Outcome {
    let mut l = Ledger::default();
    let mut cases = 0;
    for (name, file) in [
        ("abelian1", "abelian1.json"),
        ("abelian2", "abelian2.json"),
        ("nonabelian2", "nonabelian2.json"),
        ("heisenberg", "heisenberg.json"),
        ("sl2", "sl2.json"),
    ] {
        let sc = load(file);
        for k in [int(1), int(2)] {
            let degree = if sc.dim() <= 2 { 4 } else { 3 };
            let r = build_reducer(&sc, &k, Variant::Sixth, degree).map_err(|e| format!("{name}: {e}"))?;
            hopf_case(&mut l, &format!("{name} k={k}"), &r, HopfVariant::Sixth)?;
            cases += 1;
        }
    }
    l.finish(format!(
        "{cases} cases: Delta well defined, 8 bialgebra diagrams, antipode diagram on 1, q, i(x), solver residuals 0"
    ))
}

fn a6() -> Outcome {
    let mut l = Ledger::default();
    let mut cases = 0;
    let algebras = [
        ("leibniz-trivial1", load("leibniz-trivial1.json")),
        ("leibniz2", load("leibniz2.json")),
        ("sl2-as-leibniz", load("sl2.json").with_kind(BracketKind::Leibniz)),
    ];
    for (name, sc) in &algebras {
        let degree = if sc.dim() <= 2 { 4 } else { 3 };
        let runs = [(HopfVariant::Fourth1, int(1)), (HopfVariant::Fourth2, int(1)), (HopfVariant::Fourth2, int(2))];
        for (which, k) in runs {
            let r = match build_reducer(sc, &k, Variant::Fourth, degree) {
                Ok(r) => r,
                Err(Error::PbwDefect { .. }) => {
                    // the basis claim fails here (see A4); the coalgebra claims
                    // are checked in the standard-monomial basis instead
                    l.notes.push(format!("{name} k={k} {which}: checked in the uncertified standard-monomial basis"));
                    build_uncertified_quotient(sc, &k, Variant::Fourth, degree).map_err(|e| e.to_string())?
                }
                Err(e) => return Err(format!("{name}: {e}")),
            };
            hopf_case(&mut l, &format!("{name} k={k}"), &r, which)?;
            cases += 1;
        }
    }
    l.finish(format!(
        "{cases} cases: ordinary counit, <4th>_1 at k = 1, <4th>_2 at k = 1, 2 with sigma a homomorphism"
    ))
}

// ---------------------------------------------------------------------------
// A7: regular embedding

fn a7() -> Outcome {
    let mut l = Ledger::default();
    let q = Matrix::from_ints(&[&[0, 0], &[0, 1]]);
    let cases = [
        (
            "upper triangular 2x2",
            vec![
                Matrix::from_ints(&[&[1, 0], &[0, 0]]),
                Matrix::from_ints(&[&[0, 1], &[0, 0]]),
                Matrix::from_ints(&[&[0, 0], &[0, 1]]),
            ],
            q.clone(),
            (3, 2),
        ),
        ("scalars", vec![Matrix::identity(1)], Matrix::zeros(1, 1), (1, 1)),
        ("span{1, q}", vec![Matrix::identity(2), q.clone()], q, (2, 1)),
    ];
    for (name, basis, q, dims) in cases {
        let alg = MatrixAlgebra::new(basis, q).map_err(|e| format!("{name}: {e}"))?;
        let r = regular_embedding(&alg).map_err(|e| format!("{name}: {e}"))?;
        l.require(
            r.passed() && r.injective && r.multiplicative && r.q_preserved && r.ann_idempotent,
            || format!("{name}: {:?}", r.failures),
        );
        l.require((r.dim_a, r.dim_ann) == dims, || format!("{name}: dims {:?}", (r.dim_a, r.dim_ann)));
    }
    l.finish("upper triangular (dim 3, ann 2), scalars, span{1, q}: all embedding conditions exact".into())
}

// ---------------------------------------------------------------------------
// A8: negative controls

fn a8() -> Outcome {
    let mut l = Ledger::default();
    let bad = validate_structure(&load("bad-antisym.json"));
    l.require(
        !bad.valid
            && bad
                .violations
                .iter()
                .any(|v| v.kind == ViolationKind::Antisymmetry && v.indices == vec![1, 2]),
        || "bad-antisym accepted".into(),
    );

    let x = FreeElem::gen(1);
    let labels = default_labels(1);
    for k in [int(0), int(1), int(-1), int(2), frac(1, 2)] {
        let xx = bracket4(&FreeContext, &x, &x, &k).map_err(|e| e.to_string())?;
        let one_plus_k = &int(1) + &k;
        let expected = parse_expr(&format!("({one_plus_k})*x1*q*x1 - x1*x1*q - ({k})*q*x1*x1"), &labels)
            .map_err(|e| e.to_string())?;
        l.require(!xx.is_zero() && xx == expected, || format!("k={k}: <x,x>_4 = {xx}"));
    }

    let sl2 = load("sl2.json");
    l.require(
        matches!(build_reducer(&sl2, &int(0), Variant::Sixth, 3), Err(Error::ZeroK)),
        || "k = 0 accepted by the envelope".into(),
    );
    l.require(
        matches!(antipode_gen(Variant::Sixth, &int(0), Letter::Gen(1)), Err(Error::ZeroK)),
        || "k = 0 accepted by the antipode".into(),
    );
    l.require(Error::ZeroK.to_string().contains("non-zero"), || "k = 0 message does not name the assumption".into());
    l.finish("antisymmetry violation (1, 2) rejected; <x,x>_4 != 0 for 5 values of k; k = 0 rejected".into())
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("A1", Duration::from_secs(10), a1),
        ("A2", Duration::from_secs(30), a2),
        ("A3", Duration::from_secs(300), a3),
        ("A4", Duration::from_secs(180), a4),
        ("A5", Duration::from_secs(300), a5),
        ("A6", Duration::from_secs(300), a6),
        ("A7", Duration::from_secs(1), a7),
        ("A8", Duration::from_secs(1), a8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (id, budget, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > budget => Err(format!("{d}\n      failed: over the {budget:?} budget")),
            other => other,
        };
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{id} {verdict} ({:.2}s of {}s): {detail}", elapsed.as_secs_f64(), budget.as_secs());
        if outcome.is_err() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria pass");
    } else {
        println!("acceptance: {} failing: {}", failed.len(), failed.join(", "));
        std::process::exit(1);
    }
}
