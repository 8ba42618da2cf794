//! Matrix models: `End_W(V)` with a `W`-idempotent, representations of Lie
//! and Leibniz algebras into it, the left-regular embedding of a finite
//! dimensional invariant algebra, and the extension of a representation to
//! the envelope.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::context::InvariantContext;
use crate::envelope::Reducer;
use crate::error::{Error, Result};
use crate::linalg::{self, dense_to_sparse, Echelon, Solution};
use crate::matrix::{Matrix, MatrixContext};
use crate::scalar::Scalar;
use crate::structures::{bracket, StructureConstants, Variant};
use crate::words::{FreeElem, Word};

/// Outcome of checking that `q` is a `W`-idempotent: `q(W) = 0` and
/// `q(v) - v` lies in `W` for every `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentReport {
    pub valid: bool,
    /// One line per violated condition, naming the offending vector.
    pub violations: Vec<String>,
}

fn echelon_of(vectors: &[Vec<Scalar>]) -> Echelon {
    let mut ech = Echelon::new();
    for v in vectors {
        ech.insert(dense_to_sparse(v));
    }
    ech
}

fn in_span(ech: &Echelon, v: &[Scalar]) -> bool {
    ech.reduce(&dense_to_sparse(v)).is_empty()
}

fn check_subspace(dim_v: usize, w_basis: &[Vec<Scalar>]) -> Result<Echelon> {
    if dim_v == 0 {
        return Err(Error::Dimension("V must have positive dimension".into()));
    }
    if w_basis.is_empty() {
        return Err(Error::Dimension("W must be a non-zero subspace".into()));
    }
    if let Some(v) = w_basis.iter().find(|v| v.len() != dim_v) {
        return Err(Error::Dimension(format!(
            "W vector of length {} in a space of dimension {dim_v}",
            v.len()
        )));
    }
    let ech = echelon_of(w_basis);
    if ech.rank() != w_basis.len() {
        return Err(Error::Dimension("W basis vectors are linearly dependent".into()));
    }
    Ok(ech)
}

pub fn validate_idempotent(dim_v: usize, w_basis: &[Vec<Scalar>], q: &Matrix) -> Result<IdempotentReport> {
    let w = check_subspace(dim_v, w_basis)?;
    if q.nrows() != dim_v || q.ncols() != dim_v {
        return Err(Error::Dimension(format!(
            "q is {}x{}, expected {dim_v}x{dim_v}",
            q.nrows(),
            q.ncols()
        )));
    }
    let mut violations = Vec::new();
    for (i, v) in w_basis.iter().enumerate() {
        if q.apply(v)?.iter().any(|c| !c.is_zero()) {
            violations.push(format!("q does not annihilate W basis vector #{}", i + 1));
        }
    }
    for j in 0..dim_v {
        let mut image = q.column(j);
        image[j] -= Scalar::one();
        if !in_span(&w, &image) {
            violations.push(format!("q(e{0}) - e{0} is not in W", j + 1));
        }
    }
    Ok(IdempotentReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// `(End_W(V), q)`: endomorphisms of `V` preserving a non-zero subspace `W`,
/// with a `W`-idempotent `q`.
#[derive(Debug, Clone)]
pub struct LinearInvariantAlgebra {
    dim_v: usize,
    w_basis: Vec<Vec<Scalar>>,
    w: Echelon,
    q: Matrix,
}

impl LinearInvariantAlgebra {
    /// Fails with [`Error::NotInvariant`] naming the first violated
    /// condition when `q` is not a `W`-idempotent.
    pub fn new(dim_v: usize, w_basis: Vec<Vec<Scalar>>, q: Matrix) -> Result<Self> {
        let report = validate_idempotent(dim_v, &w_basis, &q)?;
        if let Some(first) = report.violations.first() {
            return Err(Error::NotInvariant(first.clone()));
        }
        let w = echelon_of(&w_basis);
        Ok(Self { dim_v, w_basis, w, q })
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn w_basis(&self) -> &[Vec<Scalar>] {
        &self.w_basis
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn context(&self) -> MatrixContext {
        MatrixContext { q: self.q.clone() }
    }

    /// Whether `f(W)` is contained in `W`. The answer is cross-checked
    /// against the equivalent condition `q f q = q f`.
    pub fn in_end_w(&self, f: &Matrix) -> Result<bool> {
        if f.nrows() != self.dim_v || f.ncols() != self.dim_v {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on a space of dimension {}",
                f.nrows(),
                f.ncols(),
                self.dim_v
            )));
        }
        let mut preserves = true;
        for v in &self.w_basis {
            if !in_span(&self.w, &f.apply(v)?) {
                preserves = false;
                break;
            }
        }
        let qf = self.q.mul(f)?;
        assert_eq!(
            preserves,
            qf.mul(&self.q)? == qf,
            "f(W) in W and q f q = q f disagree"
        );
        Ok(preserves)
    }
}

/// Images of the basis `x_1..x_n` of a Lie or Leibniz algebra in
/// `End_W(V)`.
#[derive(Debug, Clone)]
pub struct MatRep {
    rho: Vec<Matrix>,
    target: LinearInvariantAlgebra,
    k: Scalar,
}

impl MatRep {
    /// Every image must preserve `W`.
    pub fn new(rho: Vec<Matrix>, target: LinearInvariantAlgebra, k: Scalar) -> Result<Self> {
        for (i, m) in rho.iter().enumerate() {
            if !target.in_end_w(m)? {
                return Err(Error::NotInvariant(format!("rho(x{}) does not preserve W", i + 1)));
            }
        }
        Ok(Self { rho, target, k })
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn target(&self) -> &LinearInvariantAlgebra {
        &self.target
    }

    pub fn k(&self) -> &Scalar {
        &self.k
    }

    /// `rho` extended linearly to a coordinate vector.
    pub fn image(&self, coeffs: &[Scalar]) -> Matrix {
        let n = self.target.dim_v;
        coeffs
            .iter()
            .zip(&self.rho)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(n, n), |acc, (c, m)| {
                acc.add(&m.scale(c)).expect("images share the dimension of V")
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepDefect {
    /// 1-based basis indices.
    pub pair: (usize, usize),
    /// `rho([x_i, x_j]) - bracket(rho(x_i), rho(x_j))`.
    pub defect: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepReport {
    pub pairs_checked: usize,
    pub defects: Vec<RepDefect>,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Checks `rho([x_i, x_j]) = bracket(rho(x_i), rho(x_j))` on every ordered
/// basis pair, with the matrix bracket of the given variant.
pub fn check_rep(sc: &StructureConstants, rep: &MatRep, variant: Variant) -> Result<RepReport> {
    let n = sc.dim();
    if rep.rho.len() != n {
        return Err(Error::Dimension(format!(
            "{} images for a {n}-dimensional algebra",
            rep.rho.len()
        )));
    }
    let ctx = rep.target.context();
    let mut defects = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let lhs = rep.image(sc.bracket_coeffs(i, j));
            let rhs = bracket(&ctx, variant, &rep.rho[i - 1], &rep.rho[j - 1], &rep.k)?;
            let diff = lhs.sub(&rhs)?;
            if !diff.is_zero() {
                defects.push(RepDefect {
                    pair: (i, j),
                    defect: diff.to_string(),
                });
            }
        }
    }
    Ok(RepReport {
        pairs_checked: n * n,
        defects,
    })
}

/// A finite dimensional invariant algebra given by a basis of square
/// matrices whose span contains the identity and `q`.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    basis: Vec<Matrix>,
    q: Matrix,
}

impl MatrixAlgebra {
    pub fn new(basis: Vec<Matrix>, q: Matrix) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::Dimension("the algebra needs at least one basis matrix".into()));
        };
        let n = first.nrows();
        if basis.iter().any(|m| m.nrows() != n || m.ncols() != n) || q.nrows() != n || q.ncols() != n {
            return Err(Error::Dimension(format!("all matrices must be {n}x{n}")));
        }
        if linalg::rank(basis.iter().map(|m| dense_to_sparse(m.flatten()))) != basis.len() {
            return Err(Error::Dimension("basis matrices are linearly dependent".into()));
        }
        let alg = Self { basis, q };
        if alg.coords(&Matrix::identity(n)).is_none() {
            return Err(Error::NotClosed("the span does not contain the identity".into()));
        }
        if alg.coords(&alg.q).is_none() {
            return Err(Error::NotClosed("the span does not contain q".into()));
        }
        for (i, a) in alg.basis.iter().enumerate() {
            for (j, b) in alg.basis.iter().enumerate() {
                if alg.coords(&a.mul(b)?).is_none() {
                    return Err(Error::NotClosed(format!(
                        "product of basis elements #{} and #{} leaves the span",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        MatrixContext::new(alg.q.clone())?.check_invariant(&alg.basis)?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let equations: Vec<_> = (0..m.flatten().len())
            .map(|e| {
                let row = self
                    .basis
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !b.flatten()[e].is_zero())
                    .map(|(i, b)| (i, b.flatten()[e].clone()))
                    .collect();
                (row, m.flatten()[e].clone())
            })
            .collect();
        match linalg::solve(self.dim(), &equations) {
            Solution::Solvable { x, .. } => Some(x),
            Solution::Inconsistent { .. } => None,
        }
    }

    /// Matrix of `b -> a b` on the basis coordinates.
    pub fn left_mult(&self, a: &Matrix) -> Result<Matrix> {
        let m = self.dim();
        let mut out = Matrix::zeros(m, m);
        for (j, b) in self.basis.iter().enumerate() {
            let c = self
                .coords(&a.mul(b)?)
                .ok_or_else(|| Error::NotClosed("left multiplication leaves the span".into()))?;
            for (i, v) in c.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularEmbeddingReport {
    pub dim_a: usize,
    /// Dimension of `ann = {q x - x}`.
    pub dim_ann: usize,
    pub injective: bool,
    pub multiplicative: bool,
    pub unit: bool,
    pub q_preserved: bool,
    /// `q_L` is an `ann`-idempotent on `A`.
    pub ann_idempotent: bool,
    /// Every `a_L` preserves `ann`.
    pub image_in_end_ann: bool,
    pub failures: Vec<String>,
}

impl RegularEmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Embeds `(A, q)` into `(End_ann(A), q_L)` by left multiplication,
/// `a -> a_L`, and checks that this is an injective invariant homomorphism.
pub fn regular_embedding(alg: &MatrixAlgebra) -> Result<RegularEmbeddingReport> {
    let m = alg.dim();
    let n = alg.q.nrows();
    let mut failures = Vec::new();
    let images: Vec<Matrix> = alg.basis.iter().map(|b| alg.left_mult(b)).collect::<Result<_>>()?;

    let injective = linalg::rank(images.iter().map(|l| dense_to_sparse(l.flatten()))) == m;
    if !injective {
        failures.push("left multiplication is not injective".into());
    }

    let phi = |a: &Matrix| -> Result<Matrix> {
        let c = alg.coords(a).ok_or_else(|| Error::NotClosed("element outside the span".into()))?;
        Ok(c.iter()
            .zip(&images)
            .fold(Matrix::zeros(m, m), |acc, (x, l)| acc.add(&l.scale(x)).expect("square images")))
    };

    let mut multiplicative = true;
    for (i, a) in alg.basis.iter().enumerate() {
        for (j, b) in alg.basis.iter().enumerate() {
            if phi(&a.mul(b)?)? != images[i].mul(&images[j])? {
                multiplicative = false;
                failures.push(format!("phi(b{0} b{1}) != phi(b{0}) phi(b{1})", i + 1, j + 1));
            }
        }
    }

    let unit = phi(&Matrix::identity(n))? == Matrix::identity(m);
    if !unit {
        failures.push("phi(1) is not the identity".into());
    }
    let q_l = phi(&alg.q)?;
    let q_preserved = q_l == alg.left_mult(&alg.q)?;
    if !q_preserved {
        failures.push("phi(q) differs from left multiplication by q".into());
    }

    // ann = span{q b - b} in basis coordinates
    let ann: Vec<Vec<Scalar>> = {
        let mut ech = Echelon::new();
        let mut out = Vec::new();
        for b in &alg.basis {
            let v = alg
                .coords(&alg.q.mul(b)?.sub(b)?)
                .ok_or_else(|| Error::NotClosed("q b - b leaves the span".into()))?;
            if ech.insert(dense_to_sparse(&v)).is_some() {
                out.push(v);
            }
        }
        out
    };
    let dim_ann = ann.len();

    let (ann_idempotent, image_in_end_ann) = if ann.is_empty() {
        failures.push("ann is zero, so q = 1 and there is no non-zero W".into());
        (false, false)
    } else {
        let report = validate_idempotent(m, &ann, &q_l)?;
        failures.extend(report.violations.iter().map(|v| format!("q_L on ann: {v}")));
        let mut preserved = true;
        if report.valid {
            let target = LinearInvariantAlgebra::new(m, ann.clone(), q_l.clone())?;
            for (i, l) in images.iter().enumerate() {
                if !target.in_end_w(l)? {
                    preserved = false;
                    failures.push(format!("phi(b{}) does not preserve ann", i + 1));
                }
            }
        }
        (report.valid, report.valid && preserved)
    };

    Ok(RegularEmbeddingReport {
        dim_a: m,
        dim_ann,
        injective,
        multiplicative,
        unit,
        q_preserved,
        ann_idempotent,
        image_in_end_ann,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub monomials: usize,
    pub pairs_checked: usize,
    /// One line per failing check, with the offending monomials.
    pub defects: Vec<String>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Extends `rho` to `f'` on the envelope by evaluating basis monomials
/// letter by letter (`q` goes to the `q` matrix), then checks
/// `f'(a b) = f'(a) f'(b)` on all pairs of basis monomials within the degree
/// cap, `f'(1) = 1`, `f'(q) = q` and `f'(i(x_j)) = rho(x_j)`.
///
/// When `rho` is not a representation the multiplicativity check is where
/// this shows up.
pub fn extend_to_envelope(r: &Reducer, rep: &MatRep) -> Result<ExtensionReport> {
    if r.k() != rep.k() {
        return Err(Error::Usage(format!(
            "representation uses k = {} but the envelope uses k = {}",
            rep.k(),
            r.k()
        )));
    }
    if rep.rho.len() != r.dim() {
        return Err(Error::Dimension(format!(
            "{} images for a {}-dimensional algebra",
            rep.rho.len(),
            r.dim()
        )));
    }
    let ctx = rep.target.context();
    let f = |e: &FreeElem| e.evaluate(&rep.rho, &ctx);
    let words: Vec<&Word> = r.normal_index().iter().collect();
    let values: Vec<Matrix> = words
        .iter()
        .map(|w| f(&FreeElem::monomial((*w).clone())))
        .collect::<Result<_>>()?;
    let f_env = |e: &FreeElem| -> Result<Matrix> {
        let n = rep.target.dim_v;
        let mut acc = Matrix::zeros(n, n);
        for (w, c) in e.terms() {
            let idx = words
                .binary_search(&w)
                .map_err(|_| Error::Usage(format!("{w} is not a basis monomial")))?;
            acc = acc.add(&values[idx].scale(c))?;
        }
        Ok(acc)
    };

    let mut defects = Vec::new();
    if f_env(r.one().as_free())? != ctx.one() {
        defects.push("f'(1) is not the identity".into());
    }
    if f_env(r.q().as_free())? != ctx.q() {
        defects.push("f'(q) is not q".into());
    }
    for j in 1..=r.dim() {
        if f_env(r.gen(j).as_free())? != rep.rho[j - 1] {
            defects.push(format!("f'(x{j}) != rho(x{j})"));
        }
    }
    let mut pairs = 0;
    for (ia, a) in words.iter().enumerate() {
        for (ib, b) in words.iter().enumerate() {
            if a.x_degree() + b.x_degree() > r.degree() {
                continue;
            }
            pairs += 1;
            let ab = r.reduce(&FreeElem::monomial(a.mul(b)))?;
            if f_env(ab.as_free())? != values[ia].mul(&values[ib])? {
                defects.push(format!("f'({a} * {b}) != f'({a}) f'({b})"));
            }
        }
    }
    Ok(ExtensionReport {
        monomials: words.len(),
        pairs_checked: pairs,
        defects,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::build_reducer;
    use crate::scalar::int;
    use crate::structures::BracketKind;

    fn e1() -> Vec<Vec<Scalar>> {
        vec![vec![int(1), int(0)]]
    }

    fn diag01() -> Matrix {
        Matrix::from_ints(&[&[0, 0], &[0, 1]])
    }

    #[test]
    fn idempotent_conditions() {
        assert!(validate_idempotent(2, &e1(), &diag01()).unwrap().valid);
        let bad = validate_idempotent(2, &e1(), &Matrix::zeros(2, 2)).unwrap();
        assert_eq!(bad.violations, vec!["q(e2) - e2 is not in W".to_string()]);
        let whole = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert!(validate_idempotent(2, &whole, &Matrix::zeros(2, 2)).unwrap().valid);
        assert!(matches!(validate_idempotent(2, &[], &diag01()), Err(Error::Dimension(_))));
    }

    #[test]
    fn membership() {
        let alg = LinearInvariantAlgebra::new(2, e1(), diag01()).unwrap();
        assert!(alg.in_end_w(&Matrix::from_ints(&[&[1, 2], &[0, 3]])).unwrap());
        assert!(!alg.in_end_w(&Matrix::from_ints(&[&[1, 0], &[1, 1]])).unwrap());
        assert!(alg.in_end_w(&diag01()).unwrap());
    }

    #[test]
    fn scalar_representations() {
        let scalars = LinearInvariantAlgebra::new(1, vec![vec![int(1)]], Matrix::zeros(1, 1)).unwrap();
        let ab1 = StructureConstants::zero(1, BracketKind::Lie);
        let rep = MatRep::new(vec![Matrix::from_ints(&[&[5]])], scalars.clone(), int(1)).unwrap();
        assert!(check_rep(&ab1, &rep, Variant::Sixth).unwrap().passed());

        let na2 = StructureConstants::from_table(
            2,
            BracketKind::Lie,
            &[(1, 2, vec![int(1), int(0)]), (2, 1, vec![int(-1), int(0)])],
        )
        .unwrap();
        let rep = MatRep::new(
            vec![Matrix::from_ints(&[&[1]]), Matrix::from_ints(&[&[0]])],
            scalars,
            int(1),
        )
        .unwrap();
        let report = check_rep(&na2, &rep, Variant::Sixth).unwrap();
        assert_eq!(report.defects.len(), 2);
        assert_eq!(report.defects[0].pair, (1, 2));
        assert_eq!(report.defects[0].defect, "[[1]]");
    }

    #[test]
    fn nilpotent_rep_extends() {
        let target = LinearInvariantAlgebra::new(2, e1(), diag01()).unwrap();
        let rho = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let rep = MatRep::new(vec![rho], target, int(1)).unwrap();
        let ab1 = StructureConstants::zero(1, BracketKind::Lie);
        assert!(check_rep(&ab1, &rep, Variant::Sixth).unwrap().passed());
        let r = build_reducer(&ab1, &int(1), Variant::Sixth, 3).unwrap();
        let report = extend_to_envelope(&r, &rep).unwrap();
        assert!(report.passed(), "{:?}", report.defects);
        let xqx = FreeElem::monomial(Word::from_codes(&[1, 0, 1]));
        assert!(xqx.evaluate(rep.rho(), &rep.target().context()).unwrap().is_zero());
    }

    #[test]
    fn rho_must_preserve_w() {
        let target = LinearInvariantAlgebra::new(2, e1(), diag01()).unwrap();
        let rho = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert!(matches!(MatRep::new(vec![rho], target, int(1)), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn upper_triangular_embedding() {
        let basis = vec![
            Matrix::from_ints(&[&[1, 0], &[0, 0]]),
            Matrix::from_ints(&[&[0, 1], &[0, 0]]),
            Matrix::from_ints(&[&[0, 0], &[0, 1]]),
        ];
        let alg = MatrixAlgebra::new(basis, diag01()).unwrap();
        let report = regular_embedding(&alg).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!((report.dim_a, report.dim_ann), (3, 2));
    }

    #[test]
    fn small_embeddings() {
        let k = MatrixAlgebra::new(vec![Matrix::identity(1)], Matrix::zeros(1, 1)).unwrap();
        let report = regular_embedding(&k).unwrap();
        assert!(report.passed());
        assert_eq!((report.dim_a, report.dim_ann), (1, 1));

        let kq = MatrixAlgebra::new(vec![Matrix::identity(2), diag01()], diag01()).unwrap();
        let report = regular_embedding(&kq).unwrap();
        assert!(report.passed());
        assert_eq!((report.dim_a, report.dim_ann), (2, 1));
    }

    #[test]
    fn embedding_rejects_open_spans() {
        let closed = vec![Matrix::identity(2), diag01(), Matrix::from_ints(&[&[0, 1], &[0, 0]])];
        assert!(MatrixAlgebra::new(closed, diag01()).is_ok());
        let open = vec![Matrix::identity(2), diag01(), Matrix::from_ints(&[&[0, 1], &[1, 0]])];
        assert!(matches!(MatrixAlgebra::new(open, diag01()), Err(Error::NotClosed(_))));
        let no_q = vec![Matrix::identity(2)];
        assert!(matches!(MatrixAlgebra::new(no_q, diag01()), Err(Error::NotClosed(_))));
    }
}
