//! Comultiplication, counit, `sigma` and antipode-like maps on the
//! envelopes, and the diagrams relating them.
//!
//! Both envelope variants carry
//!
//! ```text
//! Delta(q) = q (x) q
//! Delta(x) = X (x) 1 + 1 (x) X + Y (x) q' + q'' (x) Y'
//! eps(q) = 1, eps(x) = 0
//! sigma(a) = a + q a - a q
//! ```
//!
//! with `X = x + k qx - xq`. For the 6th variant the mixed part is
//! `(1-k) qx (x) q + (1-k) q (x) qx`; for the 4th variant it is
//! `(-k qx + xq) (x) q + q (x) (-k qx + xq)`. `Delta` and `eps` are extended
//! multiplicatively over words. Tensor legs are always kept in normal form.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::envelope::{EnvElem, Reducer};
use crate::error::{Error, Result};
use crate::linalg::{self, Solution, SparseRow};
use crate::scalar::Scalar;
use crate::structures::Variant;
use crate::words::{FreeElem, Letter, Word};

/// Which antipode-like diagram is being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HopfVariant {
    /// Bialgebra with sigma-counit, middle row `u . eps . S`.
    Sixth,
    /// Ordinary bialgebra, same diagram shape; claimed for `k = 1` only.
    Fourth1,
    /// Ordinary bialgebra, top row post-composed with `sigma`.
    Fourth2,
}

impl HopfVariant {
    pub fn envelope(self) -> Variant {
        match self {
            HopfVariant::Sixth => Variant::Sixth,
            HopfVariant::Fourth1 | HopfVariant::Fourth2 => Variant::Fourth,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            HopfVariant::Sixth => "6th",
            HopfVariant::Fourth1 => "4th1",
            HopfVariant::Fourth2 => "4th2",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            HopfVariant::Sixth => "Hopf-like 6th (antipode 6th-like diagram)",
            HopfVariant::Fourth1 => "Hopf-like <4th>_1 (antipode <4th>_1-like diagram)",
            HopfVariant::Fourth2 => "Hopf-like <4th>_2 (antipode <4th>_2-like diagram)",
        }
    }
}

impl fmt::Display for HopfVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for HopfVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "6th" | "sixth" => Ok(HopfVariant::Sixth),
            "4th1" | "fourth1" => Ok(HopfVariant::Fourth1),
            "4th2" | "fourth2" => Ok(HopfVariant::Fourth2),
            other => Err(Error::Usage(format!(
                "unknown Hopf variant `{other}` (expected 6th, 4th1 or 4th2)"
            ))),
        }
    }
}

/// Where the antipode-like map comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SSource {
    /// Generator values extended anti-multiplicatively.
    GeneratorAntihom,
    /// The particular solution found by [`solve_antipode`].
    Solver,
}

impl FromStr for SSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-gen-antihom" | "antihom" => Ok(SSource::GeneratorAntihom),
            "solver" => Ok(SSource::Solver),
            other => Err(Error::Usage(format!(
                "unknown S source `{other}` (expected paper-gen-antihom or solver)"
            ))),
        }
    }
}

impl fmt::Display for SSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SSource::GeneratorAntihom => "paper-gen-antihom",
            SSource::Solver => "solver",
        })
    }
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Element of `U (x) U`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor2 {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(a: &EnvElem, b: &EnvElem) -> Self {
        let mut t = Self::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                t.add_term(wa.clone(), wb.clone(), ca * cb);
            }
        }
        t
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Scalar) {
        add_to(&mut self.terms, (a, b), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    /// The twist `a (x) b -> b (x) a`.
    pub fn twist(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }

    /// `(a (x) b)(c (x) d) = ac (x) bd`, i.e. `(m (x) m) . (id (x) tau (x) id)`
    /// applied to the four-fold tensor, with both legs reduced.
    pub fn mul(&self, other: &Self, r: &Reducer) -> Result<Self> {
        let mut out = Self::zero();
        let mut left_cache: HashMap<(&Word, &Word), EnvElem> = HashMap::new();
        let mut right_cache: HashMap<(&Word, &Word), EnvElem> = HashMap::new();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                let l = match left_cache.get(&(a1, b1)) {
                    Some(v) => v.clone(),
                    None => {
                        let v = r.reduce(&FreeElem::monomial(a1.mul(b1)))?;
                        left_cache.insert((a1, b1), v.clone());
                        v
                    }
                };
                let rr = match right_cache.get(&(a2, b2)) {
                    Some(v) => v.clone(),
                    None => {
                        let v = r.reduce(&FreeElem::monomial(a2.mul(b2)))?;
                        right_cache.insert((a2, b2), v.clone());
                        v
                    }
                };
                let coef = ca * cb;
                for (wl, cl) in l.terms() {
                    for (wr, cr) in rr.terms() {
                        out.add_term(wl.clone(), wr.clone(), &coef * cl * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(eps (x) id)`, identifying `k (x) U` with `U`.
    pub fn counit_left(&self) -> EnvElem {
        let mut out = FreeElem::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), c * epsilon_word(a));
        }
        EnvElem::from_normal(out)
    }

    /// `(id (x) eps)`.
    pub fn counit_right(&self) -> EnvElem {
        let mut out = FreeElem::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), c * epsilon_word(b));
        }
        EnvElem::from_normal(out)
    }

    pub fn display_with<'a>(&'a self, labels: &'a [String]) -> LabeledTensor2<'a> {
        LabeledTensor2 { t: self, labels }
    }
}

pub struct LabeledTensor2<'a> {
    t: &'a Tensor2,
    labels: &'a [String],
}

impl fmt::Display for LabeledTensor2<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            return write!(f, "0");
        }
        for (pos, ((a, b), c)) in self.t.terms.iter().enumerate() {
            let negative = *c < Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (pos == 0, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "({} # {})", a.display_with(self.labels), b.display_with(self.labels))?;
        }
        Ok(())
    }
}

impl fmt::Display for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// Element of `U (x) U (x) U`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl Tensor3 {
    pub fn add_term(&mut self, a: Word, b: Word, c: Word, v: Scalar) {
        add_to(&mut self.terms, (a, b, c), v);
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
}

fn epsilon_word(w: &Word) -> Scalar {
    if w.x_degree() == 0 {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Counit: the algebra map with `eps(q) = 1`, `eps(x) = 0`. On an element
/// this is `coeff(1) + coeff(q)`.
pub fn epsilon(e: &EnvElem) -> Scalar {
    e.coeff(&Word::empty()) + e.coeff(&Word::q())
}

/// `sigma(a) = a + q a - a q`.
pub fn sigma(r: &Reducer, e: &EnvElem) -> Result<EnvElem> {
    let q = FreeElem::q();
    let a = e.as_free();
    r.reduce(&a.add(&q.mul(a)).sub(&a.mul(&q)))
}

/// Generator values of the antipode-like map.
///
/// `S(q) = 1 - q` in every variant; `S(x) = -x/k - k qx + xq/k` for the 6th
/// variant and `S(x) = -x/k + (1/k - k) xq` for the 4th.
pub fn antipode_gen(variant: Variant, k: &Scalar, g: Letter) -> Result<EnvElem> {
    if k.is_zero() {
        return Err(Error::ZeroK);
    }
    let inv = Scalar::one() / k;
    let e = match g {
        Letter::Q => FreeElem::from_terms([(Word::empty(), Scalar::one()), (Word::q(), -Scalar::one())]),
        Letter::Gen(i) => {
            let x = Word::gen(i);
            let qx = Word::from_letters(vec![Letter::Q, Letter::Gen(i)]);
            let xq = Word::from_letters(vec![Letter::Gen(i), Letter::Q]);
            match variant {
                Variant::Sixth => FreeElem::from_terms([(x, -inv.clone()), (qx, -k.clone()), (xq, inv)]),
                Variant::Fourth => FreeElem::from_terms([(x, -inv.clone()), (xq, inv - k)]),
            }
        }
    };
    Ok(EnvElem::from_normal(e))
}

/// Extends the generator values anti-multiplicatively:
/// `S(w_1 w_2) = S(w_2) S(w_1)`, `S(1) = 1`.
pub fn extend_antipode_antihom(r: &Reducer, e: &EnvElem) -> Result<EnvElem> {
    let mut total = EnvElem::default();
    for (w, c) in e.terms() {
        let mut acc = r.one();
        for letter in w.letters() {
            let s = antipode_gen(r.variant(), r.k(), *letter)?;
            acc = r.mul(&s, &acc)?;
        }
        total = total.add(&acc.scale(c));
    }
    Ok(total)
}

/// An envelope quotient together with its comultiplication. Construction
/// verifies that `Delta` annihilates every relation generator, which makes
/// the word-wise definition descend to the quotient.
#[derive(Debug)]
pub struct Bialgebra<'a> {
    r: &'a Reducer,
    /// Index 0 holds `Delta(q)`, index `i` holds `Delta(x_i)`.
    gens: Vec<Tensor2>,
}

impl<'a> Bialgebra<'a> {
    pub fn attach(r: &'a Reducer) -> Result<Self> {
        let b = Self::attach_unchecked(r)?;
        for rel in &r.relations().generators {
            let image = b.delta_free(&rel.elem)?;
            if !image.is_zero() {
                return Err(Error::IllDefinedDelta {
                    relation: rel.elem.to_string(),
                    image: image.to_string(),
                });
            }
        }
        Ok(b)
    }

    /// Same as [`Bialgebra::attach`] without the well-definedness check.
    pub fn attach_unchecked(r: &'a Reducer) -> Result<Self> {
        if r.k().is_zero() {
            return Err(Error::ZeroK);
        }
        let k = r.k().clone();
        let one = r.one();
        let qe = r.q();
        let word = |letters: Vec<Letter>| FreeElem::monomial(Word::from_letters(letters));
        let mut gens = Vec::with_capacity(r.dim() + 1);
        gens.push(Tensor2::pure(&qe, &qe));
        for i in 1..=r.dim() {
            let x = word(vec![Letter::Gen(i)]);
            let qx = word(vec![Letter::Q, Letter::Gen(i)]);
            let xq = word(vec![Letter::Gen(i), Letter::Q]);
            let big_x = r.reduce(&x.add(&qx.scale(&k)).sub(&xq))?;
            // sixth: (1-k) qx (x) q + q (x) (1-k) qx
            // fourth: (-k qx + xq) (x) q + q (x) (-k qx + xq)
            let y = match r.variant() {
                Variant::Sixth => r.reduce(&qx.scale(&(Scalar::one() - &k)))?,
                Variant::Fourth => r.reduce(&xq.sub(&qx.scale(&k)))?,
            };
            let t = Tensor2::pure(&big_x, &one)
                .add(&Tensor2::pure(&one, &big_x))
                .add(&Tensor2::pure(&y, &qe))
                .add(&Tensor2::pure(&qe, &y));
            gens.push(t);
        }
        Ok(Self { r, gens })
    }

    pub fn reducer(&self) -> &Reducer {
        self.r
    }

    fn delta_letter(&self, l: Letter) -> &Tensor2 {
        match l {
            Letter::Q => &self.gens[0],
            Letter::Gen(i) => &self.gens[i],
        }
    }

    pub fn delta_word(&self, w: &Word) -> Result<Tensor2> {
        let mut acc = Tensor2::zero();
        acc.add_term(Word::empty(), Word::empty(), Scalar::one());
        for l in w.letters() {
            acc = acc.mul(self.delta_letter(*l), self.r)?;
        }
        Ok(acc)
    }

    /// `Delta` on an element of the free invariant algebra, computed word by
    /// word before any reduction of the argument.
    pub fn delta_free(&self, e: &FreeElem) -> Result<Tensor2> {
        let mut out = Tensor2::zero();
        for (w, c) in e.terms() {
            out = out.add(&self.delta_word(w)?.scale(c));
        }
        Ok(out)
    }

    pub fn delta(&self, e: &EnvElem) -> Result<Tensor2> {
        self.delta_free(e.as_free())
    }

    /// `(Delta (x) id) Delta(e)`.
    pub fn coassoc_left(&self, e: &EnvElem) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for ((a, b), c) in self.delta(e)?.terms() {
            for ((a1, a2), c1) in self.delta_word(a)?.terms() {
                out.add_term(a1.clone(), a2.clone(), b.clone(), c * c1);
            }
        }
        Ok(out)
    }

    /// `(id (x) Delta) Delta(e)`.
    pub fn coassoc_right(&self, e: &EnvElem) -> Result<Tensor3> {
        let mut out = Tensor3::default();
        for ((a, b), c) in self.delta(e)?.terms() {
            for ((b1, b2), c1) in self.delta_word(b)?.terms() {
                out.add_term(a.clone(), b1.clone(), b2.clone(), c * c1);
            }
        }
        Ok(out)
    }
}

/// A linear map given by its values on normal monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearMap {
    values: BTreeMap<Word, EnvElem>,
}

impl LinearMap {
    pub fn get(&self, w: &Word) -> Option<&EnvElem> {
        self.values.get(w)
    }

    pub fn insert(&mut self, w: Word, v: EnvElem) {
        self.values.insert(w, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &EnvElem)> {
        self.values.iter()
    }

    pub fn apply(&self, e: &EnvElem) -> Result<EnvElem> {
        let mut out = EnvElem::default();
        for (w, c) in e.terms() {
            let v = self
                .values
                .get(w)
                .ok_or_else(|| Error::Usage(format!("antipode not defined on {w}")))?;
            out = out.add(&v.scale(c));
        }
        Ok(out)
    }

    pub fn apply_word(&self, w: &Word) -> Result<EnvElem> {
        self.values
            .get(w)
            .cloned()
            .ok_or_else(|| Error::Usage(format!("antipode not defined on {w}")))
    }
}

/// The anti-multiplicative extension tabulated on normal monomials of
/// X-degree at most `max_degree`.
pub fn antihom_table(r: &Reducer, max_degree: usize) -> Result<LinearMap> {
    let mut map = LinearMap::default();
    for w in r.normal_up_to(max_degree) {
        let e = EnvElem::from_normal(FreeElem::monomial(w.clone()));
        map.insert(w.clone(), extend_antipode_antihom(r, &e)?);
    }
    Ok(map)
}

/// The three rows of an antipode-like diagram evaluated at one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramRows {
    pub top: EnvElem,
    pub middle: EnvElem,
    pub bottom: EnvElem,
}

impl DiagramRows {
    pub fn commutes(&self) -> bool {
        self.top == self.middle && self.middle == self.bottom
    }
}

/// Evaluates `m(S (x) id) Delta(a)` (post-composed with `sigma` for the
/// `<4th>_2` diagram), `u(eps(S(a)))` and `m(id (x) S) Delta(a)`.
pub fn diagram_rows(b: &Bialgebra<'_>, which: HopfVariant, s: &LinearMap, a: &EnvElem) -> Result<DiagramRows> {
    let r = b.reducer();
    let delta = b.delta(a)?;
    let mut top = EnvElem::default();
    let mut bottom = EnvElem::default();
    for ((a1, a2), c) in delta.terms() {
        let s1 = s.apply_word(a1)?;
        let s2 = s.apply_word(a2)?;
        let w1 = EnvElem::from_normal(FreeElem::monomial(a1.clone()));
        let w2 = EnvElem::from_normal(FreeElem::monomial(a2.clone()));
        top = top.add(&r.mul(&s1, &w2)?.scale(c));
        bottom = bottom.add(&r.mul(&w1, &s2)?.scale(c));
    }
    if which == HopfVariant::Fourth2 {
        top = sigma(r, &top)?;
    }
    let middle = r.one().scale(&epsilon(&s.apply(a)?));
    Ok(DiagramRows { top, middle, bottom })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramCheck {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DiagramCheck {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraReport {
    pub variant: String,
    pub counit: String,
    pub degree_checked: usize,
    pub diagrams: Vec<DiagramCheck>,
}

impl BialgebraReport {
    pub fn passed(&self) -> bool {
        self.diagrams.iter().all(DiagramCheck::passed)
    }
}

fn monomial(w: &Word) -> EnvElem {
    EnvElem::from_normal(FreeElem::monomial(w.clone()))
}

/// Checks the bialgebra diagrams on every normal monomial (and every pair
/// or triple of them within the degree budget) of X-degree at most
/// `max_degree`. The counit law is the sigma-counit law for the 6th
/// variant and the ordinary counit law for the 4th.
pub fn verify_bialgebra(b: &Bialgebra<'_>, max_degree: usize) -> Result<BialgebraReport> {
    let r = b.reducer();
    if max_degree + 1 > r.degree() {
        return Err(Error::Usage(format!(
            "diagram degree {max_degree} needs a reducer of degree at least {}",
            max_degree + 1
        )));
    }
    let words: Vec<&Word> = r.normal_up_to(max_degree).collect();
    let show = |w: &Word| w.to_string();

    let mut assoc = DiagramCheck::new("associativity");
    for a in &words {
        for bb in &words {
            for c in &words {
                if a.x_degree() + bb.x_degree() + c.x_degree() > max_degree {
                    continue;
                }
                let (ea, eb, ec) = (monomial(a), monomial(bb), monomial(c));
                let left = r.mul(&r.mul(&ea, &eb)?, &ec)?;
                let right = r.mul(&ea, &r.mul(&eb, &ec)?)?;
                assoc.record(left == right, || format!("({a})({bb})({c})"));
            }
        }
    }

    let mut unit = DiagramCheck::new("unit");
    for a in &words {
        let ea = monomial(a);
        unit.record(
            r.mul(&r.one(), &ea)? == ea && r.mul(&ea, &r.one())? == ea,
            || show(a),
        );
    }

    let mut coassoc = DiagramCheck::new("coassociativity");
    for a in &words {
        let ea = monomial(a);
        coassoc.record(b.coassoc_left(&ea)? == b.coassoc_right(&ea)?, || show(a));
    }

    let (counit_name, counit_law) = match r.variant() {
        Variant::Sixth => ("sigma-counit", "(eps # id) Delta = sigma = (id # eps) Delta"),
        Variant::Fourth => ("counit", "(eps # id) Delta = id = (id # eps) Delta"),
    };
    let mut counit = DiagramCheck::new(counit_name);
    for a in &words {
        let ea = monomial(a);
        let target = match r.variant() {
            Variant::Sixth => sigma(r, &ea)?,
            Variant::Fourth => ea.clone(),
        };
        let d = b.delta(&ea)?;
        let (l, rr) = (d.counit_left(), d.counit_right());
        counit.record(l == target && rr == target, || {
            format!("{a}: (eps#id)={l}, (id#eps)={rr}, expected {target}")
        });
    }

    let mut delta_mult = DiagramCheck::new("delta multiplicative (m#m)(id#tau#id)(Delta#Delta)");
    let mut eps_mult = DiagramCheck::new("epsilon multiplicative");
    for a in &words {
        for bb in &words {
            if a.x_degree() + bb.x_degree() > max_degree {
                continue;
            }
            let (ea, eb) = (monomial(a), monomial(bb));
            let prod = r.mul(&ea, &eb)?;
            let lhs = b.delta(&prod)?;
            let rhs = b.delta(&ea)?.mul(&b.delta(&eb)?, r)?;
            delta_mult.record(lhs == rhs, || format!("({a})({bb})"));
            eps_mult.record(epsilon(&prod) == epsilon(&ea) * epsilon(&eb), || format!("({a})({bb})"));
        }
    }

    let mut delta_unit = DiagramCheck::new("delta unit");
    let d1 = b.delta(&r.one())?;
    delta_unit.record(d1 == Tensor2::pure(&r.one(), &r.one()), || d1.to_string());

    let mut eps_unit = DiagramCheck::new("epsilon unit");
    eps_unit.record(epsilon(&r.one()).is_one(), || "eps(1) != 1".into());

    Ok(BialgebraReport {
        variant: r.variant().tag().to_string(),
        counit: counit_law.to_string(),
        degree_checked: max_degree,
        diagrams: vec![assoc, unit, coassoc, counit, delta_mult, delta_unit, eps_mult, eps_unit],
    })
}

/// Bialgebra-with-sigma-counit check for the 6th envelope.
pub fn verify_sigma_counit_bialgebra(r: &Reducer, max_degree: usize) -> Result<BialgebraReport> {
    if r.variant() != Variant::Sixth {
        return Err(Error::Usage("the sigma-counit diagrams apply to the 6th envelope".into()));
    }
    let b = Bialgebra::attach(r)?;
    verify_bialgebra(&b, max_degree)
}

/// Checks `sigma(ab) = sigma(a) sigma(b)` and `sigma(1) = 1` on normal
/// monomials within the degree budget.
pub fn verify_sigma_homomorphism(r: &Reducer, max_degree: usize) -> Result<DiagramCheck> {
    let mut check = DiagramCheck::new("sigma algebra homomorphism");
    check.record(sigma(r, &r.one())? == r.one(), || "sigma(1) != 1".into());
    let words: Vec<&Word> = r.normal_up_to(max_degree).collect();
    for a in &words {
        for b in &words {
            if a.x_degree() + b.x_degree() > max_degree {
                continue;
            }
            let (ea, eb) = (monomial(a), monomial(b));
            let lhs = sigma(r, &r.mul(&ea, &eb)?)?;
            let rhs = r.mul(&sigma(r, &ea)?, &sigma(r, &eb)?)?;
            check.record(lhs == rhs, || format!("({a})({b})"));
        }
    }
    Ok(check)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRows {
    pub monomial: String,
    pub x_degree: usize,
    pub top: String,
    pub middle: String,
    pub bottom: String,
    pub commutes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfReport {
    pub which: HopfVariant,
    pub k: String,
    pub s_source: SSource,
    pub degree_checked: usize,
    /// Set when the configuration lies outside the stated claim (`<4th>_1`
    /// with `k != 1`).
    pub exploratory: bool,
    pub preamble: Vec<DiagramCheck>,
    pub monomials: Vec<MonomialRows>,
    /// The diagram commutes on `1`, `q` and every `i(x_j)`.
    pub generators_commute: bool,
    /// The diagram commutes on every checked monomial.
    pub all_commute: bool,
}

impl HopfReport {
    pub fn preamble_passed(&self) -> bool {
        self.preamble.iter().all(DiagramCheck::passed)
    }
}

/// Verifies the antipode-like diagram of `which` on all normal monomials of
/// X-degree at most `max_degree`, with `S` taken from `source`.
pub fn verify_hopflike(r: &Reducer, which: HopfVariant, max_degree: usize, source: SSource) -> Result<HopfReport> {
    if which.envelope() != r.variant() {
        return Err(Error::Usage(format!(
            "{} diagram needs the {} envelope, reducer is {}",
            which,
            which.envelope(),
            r.variant()
        )));
    }
    if max_degree > r.degree() {
        return Err(Error::DegreeCap { got: max_degree, cap: r.degree() });
    }
    let b = Bialgebra::attach(r)?;
    let mut preamble = Vec::new();
    if r.variant() == Variant::Fourth {
        // (U, Delta, eps) must be an ordinary bialgebra
        let mut counit = DiagramCheck::new("counit");
        for w in r.normal_up_to(max_degree) {
            let e = monomial(w);
            let d = b.delta(&e)?;
            counit.record(d.counit_left() == e && d.counit_right() == e, || w.to_string());
        }
        preamble.push(counit);
        if which == HopfVariant::Fourth2 {
            preamble.push(verify_sigma_homomorphism(r, max_degree)?);
        }
    }
    let s = match source {
        SSource::GeneratorAntihom => antihom_table(r, max_degree)?,
        SSource::Solver => match solve_antipode(r, which, max_degree)?.solution {
            Some(s) => s,
            None => {
                return Err(Error::Usage(
                    "the antipode system is inconsistent; no solver S to verify".into(),
                ))
            }
        },
    };
    let mut monomials = Vec::new();
    let mut generators_commute = true;
    for w in r.normal_up_to(max_degree) {
        let rows = diagram_rows(&b, which, &s, &monomial(w))?;
        let ok = rows.commutes();
        if w.len() <= 1 && !ok {
            generators_commute = false;
        }
        monomials.push(MonomialRows {
            monomial: w.to_string(),
            x_degree: w.x_degree(),
            top: rows.top.to_string(),
            middle: rows.middle.to_string(),
            bottom: rows.bottom.to_string(),
            commutes: ok,
        });
    }
    Ok(HopfReport {
        which,
        k: r.k().to_string(),
        s_source: source,
        degree_checked: max_degree,
        exploratory: which == HopfVariant::Fourth1 && !r.k().is_one(),
        preamble,
        all_commute: monomials.iter().all(|m| m.commutes),
        generators_commute,
        monomials,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub unknowns: usize,
    pub equations: usize,
    pub solvable: bool,
    /// Dimension of the space of all solutions (the system is homogeneous,
    /// so `S = 0` is always one of them).
    pub solution_dim: usize,
    /// The system stays solvable when `S(q)` and every `S(x_j)` are pinned
    /// to their generator values.
    pub consistent_with_generators: bool,
    /// The anti-multiplicative extension is itself a solution.
    pub antihom_is_solution: bool,
    /// Exhibited solution agrees with the anti-multiplicative extension.
    pub agrees_with_antihom: bool,
    /// Witness when pinning the generator values makes the system
    /// inconsistent.
    pub witness: Option<String>,
    /// Residuals of the exhibited solution, recomputed through
    /// [`diagram_rows`]; all zero for a correct solve.
    pub residuals_zero: bool,
}

#[derive(Debug, Clone)]
pub struct AntipodeSolution {
    pub summary: SolverSummary,
    /// The exhibited `S`: the generator-pinned solution when it exists,
    /// otherwise the free particular solution.
    pub solution: Option<LinearMap>,
}

struct AntipodeSystem<'a> {
    words: Vec<&'a Word>,
    /// (monomial index, value word) -> unknown index
    unknowns: BTreeMap<(usize, Word), usize>,
    index: HashMap<&'a Word, usize>,
}

impl<'a> AntipodeSystem<'a> {
    fn new(r: &'a Reducer, max_degree: usize) -> Self {
        let words: Vec<&Word> = r.normal_up_to(max_degree).collect();
        let index = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut unknowns = BTreeMap::new();
        for (i, w) in words.iter().enumerate() {
            for v in r.normal_up_to(w.x_degree()) {
                let next = unknowns.len();
                unknowns.insert((i, v.clone()), next);
            }
        }
        Self { words, unknowns, index }
    }

    fn values_of(&self, monomial: usize) -> impl Iterator<Item = (&Word, usize)> {
        self.unknowns
            .range((monomial, Word::empty())..)
            .take_while(move |((m, _), _)| *m == monomial)
            .map(|((_, v), idx)| (v, *idx))
    }

    fn decode(&self, x: &[Scalar]) -> LinearMap {
        let mut map = LinearMap::default();
        for (i, w) in self.words.iter().enumerate() {
            let e = FreeElem::from_terms(self.values_of(i).map(|(v, idx)| (v.clone(), x[idx].clone())));
            map.insert((*w).clone(), EnvElem::from_normal(e));
        }
        map
    }
}

/// Treats `S(w)` for every normal monomial `w` of X-degree at most
/// `max_degree` as an unknown combination of normal monomials of X-degree at
/// most `deg(w)`, and imposes both equalities of the diagram as exact linear
/// equations.
pub fn solve_antipode(r: &Reducer, which: HopfVariant, max_degree: usize) -> Result<AntipodeSolution> {
    if which.envelope() != r.variant() {
        return Err(Error::Usage(format!("{which} diagram on a {} envelope", r.variant())));
    }
    if max_degree > r.degree() {
        return Err(Error::DegreeCap { got: max_degree, cap: r.degree() });
    }
    let b = Bialgebra::attach(r)?;
    let sys = AntipodeSystem::new(r, max_degree);
    let nvars = sys.unknowns.len();
    let mut product_cache: HashMap<(Word, Word), EnvElem> = HashMap::new();
    let mut product = |u: &Word, v: &Word| -> Result<EnvElem> {
        if let Some(p) = product_cache.get(&(u.clone(), v.clone())) {
            return Ok(p.clone());
        }
        let p = r.reduce(&FreeElem::monomial(u.mul(v)))?;
        product_cache.insert((u.clone(), v.clone()), p.clone());
        Ok(p)
    };

    let mut equations: Vec<(SparseRow, Scalar)> = Vec::new();
    for (mi, w) in sys.words.iter().enumerate() {
        let delta = b.delta_word(w)?;
        // coordinates of top - middle and bottom - middle, keyed by output word
        let mut top: BTreeMap<Word, SparseRow> = BTreeMap::new();
        let mut bottom: BTreeMap<Word, SparseRow> = BTreeMap::new();
        let push = |rows: &mut BTreeMap<Word, SparseRow>, out: &Word, var: usize, c: Scalar| {
            let row = rows.entry(out.clone()).or_default();
            let e = row.entry(var).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                row.remove(&var);
            }
        };
        for ((a1, a2), c) in delta.terms() {
            let i1 = sys.index[a1];
            for (v, var) in sys.values_of(i1) {
                let mut p = product(v, a2)?;
                if which == HopfVariant::Fourth2 {
                    p = sigma(r, &p)?;
                }
                for (out, cc) in p.terms() {
                    push(&mut top, out, var, c * cc);
                }
            }
            let i2 = sys.index[a2];
            for (v, var) in sys.values_of(i2) {
                let p = product(a1, v)?;
                for (out, cc) in p.terms() {
                    push(&mut bottom, out, var, c * cc);
                }
            }
        }
        // middle row: eps(S(w)) * 1 = sum over v in {1, q} of S(w)[v]
        for (v, var) in sys.values_of(mi) {
            if v.x_degree() == 0 {
                push(&mut top, &Word::empty(), var, -Scalar::one());
                push(&mut bottom, &Word::empty(), var, -Scalar::one());
            }
        }
        for row in top.into_values().chain(bottom.into_values()) {
            if !row.is_empty() {
                equations.push((row, Scalar::zero()));
            }
        }
    }
    let free = linalg::solve(nvars, &equations);
    let (solvable, solution_dim, free_x) = match &free {
        Solution::Solvable { x, nullity } => (true, *nullity, Some(x.clone())),
        Solution::Inconsistent { .. } => (false, 0, None),
    };

    // pin S(q) and S(x_j) to their generator values
    let mut pinned = equations.clone();
    for (i, w) in sys.words.iter().enumerate() {
        let letter = match w.letters() {
            [l] => *l,
            _ => continue,
        };
        let target = r.reduce(antipode_gen(r.variant(), r.k(), letter)?.as_free())?;
        for (v, var) in sys.values_of(i) {
            pinned.push((SparseRow::from([(var, Scalar::one())]), target.coeff(v)));
        }
    }
    let base_rows = equations.len();
    let pinned_solution = linalg::solve(nvars, &pinned);
    let (consistent_with_generators, witness, pinned_x) = match pinned_solution {
        Solution::Solvable { x, .. } => (true, None, Some(x)),
        Solution::Inconsistent { equation } => {
            let what = if equation < base_rows {
                format!("diagram equation #{equation}")
            } else {
                format!("generator pin #{}", equation - base_rows)
            };
            (false, Some(what), None)
        }
    };

    let antihom = antihom_table(r, max_degree)?;
    let mut antihom_is_solution = true;
    for w in &sys.words {
        if !diagram_rows(&b, which, &antihom, &monomial(w))?.commutes() {
            antihom_is_solution = false;
            break;
        }
    }

    let solution = pinned_x.or(free_x).map(|x| sys.decode(&x));
    let mut residuals_zero = solution.is_some();
    if let Some(s) = &solution {
        for w in &sys.words {
            if !diagram_rows(&b, which, s, &monomial(w))?.commutes() {
                residuals_zero = false;
                break;
            }
        }
    }
    let agrees_with_antihom = solution.as_ref() == Some(&antihom);

    Ok(AntipodeSolution {
        summary: SolverSummary {
            unknowns: nvars,
            equations: equations.len(),
            solvable,
            solution_dim,
            consistent_with_generators,
            antihom_is_solution,
            agrees_with_antihom,
            witness,
            residuals_zero,
        },
        solution,
    })
}

/// Words of X-degree at most `max_degree` on which two maps differ.
pub fn disagreements(a: &LinearMap, b: &LinearMap) -> BTreeSet<Word> {
    a.iter()
        .filter(|(w, v)| b.get(w) != Some(v))
        .map(|(w, _)| w.clone())
        .collect()
}
