//! Words and elements of the free invariant algebra.
//!
//! The free invariant algebra on generators `x_1..x_n` is the tensor algebra
//! on `{q, x_1, .., x_n}` modulo `qq = q` and `q a q = q a`. Both relations
//! are absorbed by one rule: every `q` after the first one is deleted. A
//! canonical word therefore carries at most one `q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::context::InvariantContext;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A letter of the alphabet `{q, x_1, .., x_n}`. Generator indices are
/// 1-based. The derived order puts `Q` before every generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Q,
    Gen(usize),
}

/// A finite sequence of letters, ordered by X-degree, then length, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn q() -> Self {
        Word(vec![Letter::Q])
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![Letter::Gen(i)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Shorthand used throughout tests: `0` is `q`, `i >= 1` is `x_i`.
    pub fn from_codes(codes: &[usize]) -> Self {
        Word(
            codes
                .iter()
                .map(|&c| if c == 0 { Letter::Q } else { Letter::Gen(c) })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generator letters.
    pub fn x_degree(&self) -> usize {
        self.0.iter().filter(|l| matches!(l, Letter::Gen(_))).count()
    }

    pub fn q_position(&self) -> Option<usize> {
        self.0.iter().position(|l| *l == Letter::Q)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().filter(|l| **l == Letter::Q).count() <= 1
    }

    /// Keeps the first `q` and drops every later one.
    pub fn canonicalize(&self) -> Word {
        let mut seen_q = false;
        let letters = self
            .0
            .iter()
            .copied()
            .filter(|l| match l {
                Letter::Q if seen_q => false,
                Letter::Q => {
                    seen_q = true;
                    true
                }
                Letter::Gen(_) => true,
            })
            .collect();
        Word(letters)
    }

    /// Canonical form of the concatenation `self * other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        let has_q = self.q_position().is_some();
        letters.extend(
            other
                .0
                .iter()
                .copied()
                .filter(|l| !(has_q && *l == Letter::Q)),
        );
        Word(letters).canonicalize()
    }

    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Q => 0,
                Letter::Gen(i) => *i,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> LabeledWord<'a> {
        LabeledWord { word: self, labels }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x_degree()
            .cmp(&other.x_degree())
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct LabeledWord<'a> {
    word: &'a Word,
    labels: &'a [String],
}

impl fmt::Display for LabeledWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (pos, letter) in self.word.0.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            match letter {
                Letter::Q => write!(f, "q")?,
                Letter::Gen(i) => match self.labels.get(i - 1) {
                    Some(label) => write!(f, "{label}")?,
                    None => write!(f, "x{i}")?,
                },
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// All canonical words over `n` generators with X-degree at most `max_degree`,
/// in term order.
pub fn basis_words(n: usize, max_degree: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(), Word::q()];
    let mut pure = vec![Word::empty()];
    for _ in 1..=max_degree {
        pure = pure
            .iter()
            .flat_map(|w| {
                (1..=n).map(move |i| {
                    let mut letters = w.0.clone();
                    letters.push(Letter::Gen(i));
                    Word(letters)
                })
            })
            .collect();
        for w in &pure {
            out.push(w.clone());
            for t in 0..=w.len() {
                let mut letters = w.0.clone();
                letters.insert(t, Letter::Q);
                out.push(Word(letters));
            }
        }
    }
    out.sort();
    out
}

/// An element of the free invariant algebra: a finitely supported map from
/// canonical words to non-zero scalars.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeElem {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty())
    }

    pub fn q() -> Self {
        Self::monomial(Word::q())
    }

    pub fn gen(i: usize) -> Self {
        Self::monomial(Word::gen(i))
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    /// Linear combination of the basis generators, `sum_i coeffs[i] x_{i+1}`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let mut e = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(Word::gen(i + 1), c.clone());
        }
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    /// Adds `c * w`, canonicalizing `w` first.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let w = w.canonicalize();
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest X-degree of a term, 0 for the zero element.
    pub fn x_degree(&self) -> usize {
        self.terms.keys().map(Word::x_degree).max().unwrap_or(0)
    }

    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(Word::max_generator).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Product in the free invariant algebra: bilinear extension of
    /// concatenate-then-canonicalize.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.mul(wb), ca * cb);
            }
        }
        out
    }

    /// Image under the invariant homomorphism sending `x_i` to `images[i-1]`
    /// and `q` to the context's idempotent.
    pub fn evaluate<C: InvariantContext>(&self, images: &[C::Elem], ctx: &C) -> Result<C::Elem> {
        ctx.check_invariant(images)?;
        let mut total = ctx.zero();
        for (w, c) in &self.terms {
            let mut acc = ctx.one();
            for letter in w.letters() {
                let img = match letter {
                    Letter::Q => ctx.q(),
                    Letter::Gen(i) => images
                        .get(i - 1)
                        .cloned()
                        .ok_or_else(|| Error::Dimension(format!("no image for generator x{i}")))?,
                };
                acc = ctx.mul(&acc, &img)?;
            }
            total = ctx.add(&total, &ctx.scale(c, &acc));
        }
        Ok(total)
    }

    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> LabeledElem<'a> {
        LabeledElem { elem: self, labels }
    }
}

pub struct LabeledElem<'a> {
    elem: &'a FreeElem,
    labels: &'a [String],
}

/// Writes `sum c_w * w` in the expression grammar so that the output parses
/// back to the same element.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, labels: &[String]) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Word, &'a Scalar)>,
{
    let mut first = true;
    for (w, c) in terms {
        let negative = *c < Scalar::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if w.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", w.display_with(labels))?;
        } else {
            write!(f, "{abs}*{}", w.display_with(labels))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LabeledElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.elem.terms.iter(), self.labels)
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
