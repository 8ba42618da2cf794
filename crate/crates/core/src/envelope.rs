//! Bounded-degree presentations of the 6th enveloping algebra of a Lie
//! algebra and the 4th enveloping algebra of a Leibniz algebra.
//!
//! `U` is the free invariant algebra modulo the two-sided ideal generated by
//! `[x_i,x_j]^ - bracket(x_i, x_j)`. Everything up to X-degree `D` is
//! realized as exact linear algebra: the relation multiples `u r v` are
//! row-reduced with the columns of non-normal words first, so a certified
//! reducer expresses every non-normal word as a combination of normal ones.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::context::{FreeContext, InvariantContext};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::scalar::Scalar;
use crate::structures::{bracket, validate_structure, BracketKind, StructureConstants, Variant};
use crate::words::{basis_words, FreeElem, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    /// 1-based basis pair `(i, j)`.
    pub pair: (usize, usize),
    pub elem: FreeElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub variant: Variant,
    pub k: Scalar,
    pub generators: Vec<Relation>,
}

fn check_inputs(sc: &StructureConstants, k: &Scalar, variant: Variant) -> Result<()> {
    if k.is_zero() {
        return Err(Error::ZeroK);
    }
    let as_kind = match variant {
        Variant::Sixth => {
            if sc.kind() == BracketKind::Leibniz {
                return Err(Error::InvalidStructure(
                    "the 6th envelope needs a Lie algebra, got a Leibniz table".into(),
                ));
            }
            sc.clone()
        }
        // any Lie algebra is also a Leibniz algebra
        Variant::Fourth => sc.with_kind(BracketKind::Leibniz),
    };
    let report = validate_structure(&as_kind);
    if !report.valid {
        let v = &report.violations[0];
        return Err(Error::InvalidStructure(format!(
            "{:?} fails at {:?}: {}",
            v.kind, v.indices, v.defect
        )));
    }
    Ok(())
}

/// One generator per basis pair: `i < j` for the 6th variant, every
/// `(i, j)` for the 4th. Each is `bracket^(x_i, x_j) - bracket_{k}(x_i, x_j)`
/// computed in the free invariant algebra. Identically zero generators are
/// dropped.
pub fn relation_generators(sc: &StructureConstants, k: &Scalar, variant: Variant) -> Result<RelationSet> {
    check_inputs(sc, k, variant)?;
    let n = sc.dim();
    let ctx = FreeContext;
    let mut generators = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if variant == Variant::Sixth && i >= j {
                continue;
            }
            let br = bracket(&ctx, variant, &FreeElem::gen(i), &FreeElem::gen(j), k)?;
            let elem = sc.bracket_elem(i, j).sub(&br);
            if !elem.is_zero() {
                generators.push(Relation { pair: (i, j), elem });
            }
        }
    }
    Ok(RelationSet {
        variant,
        k: k.clone(),
        generators,
    })
}

fn nondecreasing(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] <= w[1])
}

/// Membership in the normal-monomial families.
///
/// Both variants accept sorted pure words and `q` followed by a sorted word.
/// The 6th variant also accepts `x_{i_1}..x_{i_t} x_{j_0} q x_{j_1}..x_{j_m}`
/// with `i_1 <= .. <= i_t` and `j_0 <= j_1 <= .. <= j_m`; the 4th variant
/// accepts `x_j q x_{j_1}..x_{j_m}` with a single unconstrained letter
/// before `q` and `j_1 <= .. <= j_m`.
pub fn is_normal(w: &Word, variant: Variant) -> Result<bool> {
    if !w.is_canonical() {
        return Err(Error::NotCanonical(w.to_string()));
    }
    let letters = w.letters();
    let Some(p) = w.q_position() else {
        return Ok(nondecreasing(letters));
    };
    let (pre, post) = (&letters[..p], &letters[p + 1..]);
    if pre.is_empty() {
        return Ok(nondecreasing(post));
    }
    Ok(match variant {
        Variant::Sixth => {
            let (head, j0) = pre.split_at(pre.len() - 1);
            nondecreasing(head) && post.first().is_none_or(|first| j0[0] <= *first) && nondecreasing(post)
        }
        Variant::Fourth => pre.len() == 1 && nondecreasing(post),
    })
}

/// Nondecreasing sequences of length `len` over `lo..=n`.
fn sorted_sequences(n: usize, len: usize, lo: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=n {
        for mut rest in sorted_sequences(n, len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn gens(seq: &[usize]) -> impl Iterator<Item = Letter> + '_ {
    seq.iter().map(|&i| Letter::Gen(i))
}

/// Normal monomials of X-degree at most `max_degree`, built family by
/// family and returned in term order.
pub fn normal_monomials(n: usize, max_degree: usize, variant: Variant) -> Vec<Word> {
    let mut out = Vec::new();
    for m in 0..=max_degree {
        for s in sorted_sequences(n, m, 1) {
            out.push(Word::from_letters(gens(&s).collect()));
            out.push(Word::from_letters(std::iter::once(Letter::Q).chain(gens(&s)).collect()));
        }
        if m == 0 {
            continue;
        }
        match variant {
            Variant::Sixth => {
                for t in 0..m {
                    for head in sorted_sequences(n, t, 1) {
                        for tail in sorted_sequences(n, m - t, 1) {
                            let letters = gens(&head)
                                .chain(gens(&tail[..1]))
                                .chain(std::iter::once(Letter::Q))
                                .chain(gens(&tail[1..]))
                                .collect();
                            out.push(Word::from_letters(letters));
                        }
                    }
                }
            }
            Variant::Fourth => {
                for j in 1..=n {
                    for tail in sorted_sequences(n, m - 1, 1) {
                        let letters = std::iter::once(Letter::Gen(j))
                            .chain(std::iter::once(Letter::Q))
                            .chain(gens(&tail))
                            .collect();
                        out.push(Word::from_letters(letters));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// The computational form of the P-B-W statements at one degree cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwCertificate {
    pub degree: usize,
    pub basis_count: usize,
    pub normal_count: usize,
    pub span_rank: usize,
    pub relation_multiples: usize,
    /// `span_rank + normal_count == basis_count` and the stacked matrix of
    /// span rows and normal unit rows has full rank.
    pub complementary: bool,
    pub stacked_rank: usize,
    /// The reducer at `degree` agrees with the one at `degree - 1` on every
    /// canonical word of X-degree at most `degree - 1`.
    pub stable: bool,
}

impl PbwCertificate {
    pub fn passed(&self) -> bool {
        self.complementary && self.stable
    }
}

/// Row-reduced relation span at one degree cap, before certification.
#[derive(Debug, Clone)]
struct Span {
    degree: usize,
    basis: Vec<Word>,
    normal: Vec<Word>,
    columns: HashMap<Word, usize>,
    col_words: Vec<Word>,
    normal_cols: usize,
    echelon: Echelon,
    multiples: usize,
}

impl Span {
    fn build(n: usize, relations: &RelationSet, degree: usize) -> Result<Self> {
        let basis = basis_words(n, degree);
        let normal = normal_monomials(n, degree, relations.variant);
        let mut col_words = Vec::with_capacity(basis.len());
        for w in &basis {
            if !is_normal(w, relations.variant)? {
                col_words.push(w.clone());
            }
        }
        let normal_cols = col_words.len();
        col_words.extend(normal.iter().cloned());
        let columns: HashMap<Word, usize> = col_words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

        let mut echelon = Echelon::new();
        let mut multiples = 0;
        if degree >= 2 {
            let sides = basis_words(n, degree - 2);
            for rel in &relations.generators {
                let top = rel.elem.x_degree();
                for u in &sides {
                    for v in &sides {
                        if u.x_degree() + v.x_degree() + top > degree {
                            continue;
                        }
                        let prod = FreeElem::monomial(u.clone())
                            .mul(&rel.elem)
                            .mul(&FreeElem::monomial(v.clone()));
                        let row: SparseRow = prod.terms().map(|(w, c)| (columns[w], c.clone())).collect();
                        multiples += 1;
                        echelon.insert(row);
                    }
                }
            }
        }
        Ok(Self {
            degree,
            basis,
            normal,
            columns,
            col_words,
            normal_cols,
            echelon,
            multiples,
        })
    }

    fn row_elem(&self, row: &SparseRow) -> FreeElem {
        FreeElem::from_terms(row.iter().map(|(c, v)| (self.col_words[*c].clone(), v.clone())))
    }

    /// Checks complementarity; on failure returns the reason and a witness.
    fn complement_defect(&self) -> Option<(String, FreeElem)> {
        // non-normal columns come first, so a pivot on a normal column means
        // the whole row lives in the normal span
        if let Some((_, row)) = self.echelon.rows().find(|(p, _)| *p >= self.normal_cols) {
            return Some((
                "a non-trivial combination of normal monomials lies in the relation ideal".into(),
                self.row_elem(row),
            ));
        }
        (0..self.normal_cols).find(|c| !self.echelon.is_pivot(*c)).map(|c| {
            (
                "a canonical word is not congruent to any combination of normal monomials".into(),
                FreeElem::monomial(self.col_words[c].clone()),
            )
        })
    }

    /// Columns without a pivot, in term order. For a certified span these
    /// are exactly the normal monomials.
    fn standard_monomials(&self) -> Vec<Word> {
        let mut out: Vec<Word> = (0..self.col_words.len())
            .filter(|c| !self.echelon.is_pivot(*c))
            .map(|c| self.col_words[c].clone())
            .collect();
        out.sort();
        out
    }

    fn stacked_rank(&self) -> usize {
        let mut stacked = self.echelon.clone();
        for c in self.normal_cols..self.col_words.len() {
            stacked.insert(SparseRow::from([(c, Scalar::one())]));
        }
        stacked.rank()
    }

    fn reduce_unchecked(&self, e: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero();
        for (w, c) in e.terms() {
            let col = self.columns[w];
            let Some(row) = self.echelon.row(col) else {
                out.add_term(w.clone(), c.clone());
                continue;
            };
            for (other, v) in row.iter().filter(|(o, _)| **o != col) {
                out.add_term(self.col_words[*other].clone(), -(c * v));
            }
        }
        out
    }
}

/// An element of a certified envelope, written in normal monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnvElem(FreeElem);

impl EnvElem {
    /// Caller guarantees every word of `e` is normal.
    pub(crate) fn from_normal(e: FreeElem) -> Self {
        EnvElem(e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.0.terms()
    }

    pub fn as_free(&self) -> &FreeElem {
        &self.0
    }

    pub fn into_free(self) -> FreeElem {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn x_degree(&self) -> usize {
        self.0.x_degree()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.0.coeff(w)
    }

    pub fn add(&self, other: &Self) -> Self {
        EnvElem(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        EnvElem(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        EnvElem(self.0.scale(c))
    }
}

impl std::fmt::Display for EnvElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A frozen, certified bounded-degree quotient.
#[derive(Debug, Clone)]
pub struct Reducer {
    sc: StructureConstants,
    variant: Variant,
    k: Scalar,
    relations: RelationSet,
    span: Span,
    /// Normal monomials for a certified reducer, standard monomials of the
    /// elimination otherwise.
    basis: Vec<Word>,
    certificate: PbwCertificate,
}

/// Builds the degree-`degree` quotient and certifies it. Fails with
/// [`Error::PbwDefect`] when the normal monomials are not a complement of
/// the relation span or the construction is not stable under lowering the
/// cap.
pub fn build_reducer(sc: &StructureConstants, k: &Scalar, variant: Variant, degree: usize) -> Result<Reducer> {
    if degree < 2 {
        return Err(Error::Usage(format!("degree cap must be at least 2, got {degree}")));
    }
    let relations = relation_generators(sc, k, variant)?;
    let n = sc.dim();
    let span = Span::build(n, &relations, degree)?;
    let stacked_rank = span.stacked_rank();
    let mut certificate = PbwCertificate {
        degree,
        basis_count: span.basis.len(),
        normal_count: span.normal.len(),
        span_rank: span.echelon.rank(),
        relation_multiples: span.multiples,
        complementary: false,
        stacked_rank,
        stable: false,
    };
    let counts_match = certificate.span_rank + certificate.normal_count == certificate.basis_count;
    let full_rank = stacked_rank == certificate.basis_count;
    if let Some((reason, witness)) = span.complement_defect() {
        return Err(Error::PbwDefect {
            reason: format!(
                "{reason} (D={degree}: basis {}, normal {}, span rank {})",
                certificate.basis_count, certificate.normal_count, certificate.span_rank
            ),
            witness: witness.to_string(),
        });
    }
    debug_assert!(counts_match && full_rank);
    certificate.complementary = counts_match && full_rank;

    let lower = Span::build(n, &relations, degree - 1)?;
    if let Some((reason, witness)) = lower.complement_defect() {
        return Err(Error::PbwDefect {
            reason: format!("{reason} (at D={})", degree - 1),
            witness: witness.to_string(),
        });
    }
    for w in lower.basis.iter() {
        let e = FreeElem::monomial(w.clone());
        if span.reduce_unchecked(&e) != lower.reduce_unchecked(&e) {
            return Err(Error::PbwDefect {
                reason: format!("reducers at D={} and D={} disagree", degree, degree - 1),
                witness: w.to_string(),
            });
        }
    }
    certificate.stable = true;

    Ok(Reducer {
        sc: sc.clone(),
        variant,
        k: k.clone(),
        relations,
        basis: span.normal.clone(),
        span,
        certificate,
    })
}

/// Builds the degree-`degree` quotient without requiring the normal
/// monomials to be a basis. Elements are written in the standard monomials
/// of the elimination (the columns without a pivot), which always span a
/// complement of the relation span. The returned certificate records
/// whether the normal-monomial certificate would have passed.
///
/// This is the tool for examining an algebra on which [`build_reducer`]
/// reports a PBW defect; [`Reducer::is_certified`] tells the two apart.
pub fn build_uncertified_quotient(
    sc: &StructureConstants,
    k: &Scalar,
    variant: Variant,
    degree: usize,
) -> Result<Reducer> {
    if degree < 2 {
        return Err(Error::Usage(format!("degree cap must be at least 2, got {degree}")));
    }
    let relations = relation_generators(sc, k, variant)?;
    let span = Span::build(sc.dim(), &relations, degree)?;
    let certificate = PbwCertificate {
        degree,
        basis_count: span.basis.len(),
        normal_count: span.normal.len(),
        span_rank: span.echelon.rank(),
        relation_multiples: span.multiples,
        complementary: span.complement_defect().is_none(),
        stacked_rank: span.stacked_rank(),
        stable: false,
    };
    Ok(Reducer {
        sc: sc.clone(),
        variant,
        k: k.clone(),
        relations,
        basis: span.standard_monomials(),
        span,
        certificate,
    })
}

impl Reducer {
    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn k(&self) -> &Scalar {
        &self.k
    }

    pub fn degree(&self) -> usize {
        self.span.degree
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn certificate(&self) -> &PbwCertificate {
        &self.certificate
    }

    /// Whether elements are expressed in the certified normal monomials.
    pub fn is_certified(&self) -> bool {
        self.certificate.passed()
    }

    /// Basis words of the quotient up to the degree cap, in term order:
    /// the normal monomials of a certified reducer.
    pub fn normal_index(&self) -> &[Word] {
        &self.basis
    }

    pub fn normal_up_to(&self, degree: usize) -> impl Iterator<Item = &Word> {
        self.basis.iter().filter(move |w| w.x_degree() <= degree)
    }

    /// The unique combination of normal monomials congruent to `e`.
    pub fn reduce(&self, e: &FreeElem) -> Result<EnvElem> {
        let got = e.x_degree();
        if got > self.degree() {
            return Err(Error::DegreeCap { got, cap: self.degree() });
        }
        if e.max_generator() > self.dim() {
            return Err(Error::Dimension(format!(
                "generator x{} in a {}-dimensional algebra",
                e.max_generator(),
                self.dim()
            )));
        }
        Ok(EnvElem(self.span.reduce_unchecked(e)))
    }

    pub fn reduce_word(&self, w: &Word) -> Result<EnvElem> {
        self.reduce(&FreeElem::monomial(w.canonicalize()))
    }

    /// Wraps an element already written in the basis words.
    pub fn normal(&self, e: FreeElem) -> Result<EnvElem> {
        for (w, _) in e.terms() {
            if self.basis.binary_search(w).is_err() {
                return Err(Error::Usage(format!("{w} is not a basis monomial of the quotient")));
            }
        }
        Ok(EnvElem(e))
    }

    pub fn mul(&self, a: &EnvElem, b: &EnvElem) -> Result<EnvElem> {
        self.reduce(&a.0.mul(&b.0))
    }

    pub fn one(&self) -> EnvElem {
        EnvElem(FreeElem::one())
    }

    pub fn q(&self) -> EnvElem {
        EnvElem(self.span.reduce_unchecked(&FreeElem::q()))
    }

    /// `i(x)` for `x = sum_l coeffs[l] x_{l+1}`.
    pub fn embed(&self, coeffs: &[Scalar]) -> EnvElem {
        EnvElem(self.span.reduce_unchecked(&FreeElem::linear(coeffs)))
    }

    pub fn gen(&self, i: usize) -> EnvElem {
        EnvElem(self.span.reduce_unchecked(&FreeElem::gen(i)))
    }

    pub fn context(&self) -> EnvContext<'_> {
        EnvContext { reducer: self }
    }
}

/// The envelope viewed as an invariant algebra.
#[derive(Debug, Clone, Copy)]
pub struct EnvContext<'a> {
    pub reducer: &'a Reducer,
}

impl InvariantContext for EnvContext<'_> {
    type Elem = EnvElem;

    fn zero(&self) -> EnvElem {
        EnvElem::default()
    }

    fn one(&self) -> EnvElem {
        self.reducer.one()
    }

    fn q(&self) -> EnvElem {
        self.reducer.q()
    }

    fn add(&self, a: &EnvElem, b: &EnvElem) -> EnvElem {
        a.add(b)
    }

    fn scale(&self, c: &Scalar, a: &EnvElem) -> EnvElem {
        a.scale(c)
    }

    fn mul(&self, a: &EnvElem, b: &EnvElem) -> Result<EnvElem> {
        self.reducer.mul(a, b)
    }

    fn is_zero(&self, a: &EnvElem) -> bool {
        a.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDefect {
    pub pair: (usize, usize),
    pub image_of_bracket: String,
    pub bracket_of_images: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub pairs_checked: usize,
    pub defects: Vec<EmbeddingDefect>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Verifies `i(bracket(x_i, x_j)) = bracket_k(i(x_i), i(x_j))` in the
/// envelope for every ordered basis pair.
pub fn check_embedding(r: &Reducer) -> Result<EmbeddingReport> {
    if r.degree() < 3 {
        return Err(Error::Usage(format!(
            "embedding check needs a degree cap of at least 3, got {}",
            r.degree()
        )));
    }
    let ctx = r.context();
    let n = r.dim();
    let mut defects = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let lhs = r.reduce(&r.sc.bracket_elem(i, j))?;
            let rhs = bracket(&ctx, r.variant, &r.gen(i), &r.gen(j), &r.k)?;
            if lhs != rhs {
                defects.push(EmbeddingDefect {
                    pair: (i, j),
                    image_of_bracket: lhs.to_string(),
                    bracket_of_images: rhs.to_string(),
                });
            }
        }
    }
    Ok(EmbeddingReport {
        pairs_checked: n * n,
        defects,
    })
}
