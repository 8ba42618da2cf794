//! Lie and Leibniz algebras given by structure constants, and the two
//! brackets that turn an invariant algebra into a Lie algebra
//! (`[x,y]_{6,k}`) or a right Leibniz algebra (`<x,y>_{4,k}`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::context::{FreeContext, InvariantContext};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::FreeElem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Lie,
    Leibniz,
}

impl fmt::Display for BracketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketKind::Lie => "lie",
            BracketKind::Leibniz => "leibniz",
        })
    }
}

/// Which invariant-algebra bracket is in play: the 6-th square bracket
/// (Lie) or the 4-th angle bracket (Leibniz).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Sixth,
    Fourth,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Sixth => "6th",
            Variant::Fourth => "4th",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "6th" | "sixth" | "6" => Ok(Variant::Sixth),
            "4th" | "fourth" | "4" => Ok(Variant::Fourth),
            other => Err(Error::Usage(format!("unknown variant `{other}` (expected 6th or 4th)"))),
        }
    }
}

/// A bracket together with its scalar parameter `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketVariant {
    pub variant: Variant,
    pub k: Scalar,
}

/// `xy - yx - xyq + yxq + k xqy - k yqx`
pub fn bracket6<C: InvariantContext>(ctx: &C, a: &C::Elem, b: &C::Elem, k: &Scalar) -> Result<C::Elem> {
    let q = ctx.q();
    let ab = ctx.mul(a, b)?;
    let ba = ctx.mul(b, a)?;
    let terms = [
        (Scalar::from_integer(1.into()), ab.clone()),
        (Scalar::from_integer((-1).into()), ba.clone()),
        (Scalar::from_integer((-1).into()), ctx.mul(&ab, &q)?),
        (Scalar::from_integer(1.into()), ctx.mul(&ba, &q)?),
        (k.clone(), ctx.mul3(a, &q, b)?),
        (-k.clone(), ctx.mul3(b, &q, a)?),
    ];
    Ok(combine(ctx, &terms))
}

/// `xy - yx + yqx - xyq + k xqy - k qyx`
pub fn bracket4<C: InvariantContext>(ctx: &C, a: &C::Elem, b: &C::Elem, k: &Scalar) -> Result<C::Elem> {
    let q = ctx.q();
    let ab = ctx.mul(a, b)?;
    let terms = [
        (Scalar::from_integer(1.into()), ab.clone()),
        (Scalar::from_integer((-1).into()), ctx.mul(b, a)?),
        (Scalar::from_integer(1.into()), ctx.mul3(b, &q, a)?),
        (Scalar::from_integer((-1).into()), ctx.mul(&ab, &q)?),
        (k.clone(), ctx.mul3(a, &q, b)?),
        (-k.clone(), ctx.mul3(&q, b, a)?),
    ];
    Ok(combine(ctx, &terms))
}

pub fn bracket<C: InvariantContext>(
    ctx: &C,
    variant: Variant,
    a: &C::Elem,
    b: &C::Elem,
    k: &Scalar,
) -> Result<C::Elem> {
    match variant {
        Variant::Sixth => bracket6(ctx, a, b, k),
        Variant::Fourth => bracket4(ctx, a, b, k),
    }
}

fn combine<C: InvariantContext>(ctx: &C, terms: &[(Scalar, C::Elem)]) -> C::Elem {
    terms
        .iter()
        .fold(ctx.zero(), |acc, (c, e)| ctx.add(&acc, &ctx.scale(c, e)))
}

/// Structure constants of an `n`-dimensional Lie or Leibniz algebra:
/// `[x_i, x_j] = sum_l c[i][j][l] x_l` (indices 0-based in storage, 1-based
/// in every public accessor and report).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    kind: BracketKind,
    c: Vec<Vec<Vec<Scalar>>>,
}

impl StructureConstants {
    pub fn zero(n: usize, kind: BracketKind) -> Self {
        Self {
            n,
            kind,
            c: vec![vec![vec![Scalar::zero(); n]; n]; n],
        }
    }

    /// Sets `[x_i, x_j]` (1-based indices).
    pub fn set(&mut self, i: usize, j: usize, coeffs: Vec<Scalar>) -> Result<()> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::InvalidStructure(format!("index ({i},{j}) out of range 1..={}", self.n)));
        }
        if coeffs.len() != self.n {
            return Err(Error::InvalidStructure(format!(
                "bracket ({i},{j}) has {} coefficients, expected {}",
                coeffs.len(),
                self.n
            )));
        }
        self.c[i - 1][j - 1] = coeffs;
        Ok(())
    }

    /// Builder used by tests and examples: `entries` are `(i, j, coeffs)`.
    pub fn from_table(n: usize, kind: BracketKind, entries: &[(usize, usize, Vec<Scalar>)]) -> Result<Self> {
        let mut sc = Self::zero(n, kind);
        for (i, j, coeffs) in entries {
            sc.set(*i, *j, coeffs.clone())?;
        }
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> BracketKind {
        self.kind
    }

    /// Same table read as the other kind (a Lie algebra is a Leibniz algebra).
    pub fn with_kind(&self, kind: BracketKind) -> Self {
        Self {
            kind,
            ..self.clone()
        }
    }

    /// Coefficients of `[x_i, x_j]`, 1-based.
    pub fn bracket_coeffs(&self, i: usize, j: usize) -> &[Scalar] {
        &self.c[i - 1][j - 1]
    }

    /// `[x_i, x_j]` as a degree-one element of the free invariant algebra.
    pub fn bracket_elem(&self, i: usize, j: usize) -> FreeElem {
        FreeElem::linear(self.bracket_coeffs(i, j))
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Bilinear extension of the table to coordinate vectors.
    pub fn bracket_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let coef = ui * vj;
                for (l, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[l] += &coef * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.n];
        v[i - 1] = Scalar::from_integer(1.into());
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Antisymmetry,
    Jacobi,
    RightLeibniz,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// 1-based basis indices of the witness pair or triple.
    pub indices: Vec<usize>,
    /// The non-zero defect vector, rendered with basis labels `x1..xn`.
    pub defect: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub kind: BracketKind,
    pub dim: usize,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks antisymmetry and Jacobi (Lie) or the right Leibniz identity
/// (Leibniz) on every basis pair and triple.
pub fn validate_structure(sc: &StructureConstants) -> StructureReport {
    let n = sc.n;
    let mut violations = Vec::new();
    let render = |v: &[Scalar]| FreeElem::linear(v).to_string();
    match sc.kind {
        BracketKind::Lie => {
            for i in 1..=n {
                for j in i..=n {
                    let sum: Vec<Scalar> = sc
                        .bracket_coeffs(i, j)
                        .iter()
                        .zip(sc.bracket_coeffs(j, i))
                        .map(|(a, b)| a + b)
                        .collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        violations.push(Violation {
                            kind: ViolationKind::Antisymmetry,
                            indices: vec![i, j],
                            defect: render(&sum),
                        });
                    }
                }
            }
            for i in 1..=n {
                for j in 1..=n {
                    for l in 1..=n {
                        let (a, b, c) = (sc.unit(i), sc.unit(j), sc.unit(l));
                        let t1 = sc.bracket_vec(&sc.bracket_vec(&a, &b), &c);
                        let t2 = sc.bracket_vec(&sc.bracket_vec(&b, &c), &a);
                        let t3 = sc.bracket_vec(&sc.bracket_vec(&c, &a), &b);
                        let sum: Vec<Scalar> = (0..n).map(|p| &t1[p] + &t2[p] + &t3[p]).collect();
                        if sum.iter().any(|x| !x.is_zero()) {
                            violations.push(Violation {
                                kind: ViolationKind::Jacobi,
                                indices: vec![i, j, l],
                                defect: render(&sum),
                            });
                        }
                    }
                }
            }
        }
        BracketKind::Leibniz => {
            for i in 1..=n {
                for j in 1..=n {
                    for l in 1..=n {
                        let (a, b, c) = (sc.unit(i), sc.unit(j), sc.unit(l));
                        let lhs = sc.bracket_vec(&sc.bracket_vec(&a, &b), &c);
                        let r1 = sc.bracket_vec(&a, &sc.bracket_vec(&b, &c));
                        let r2 = sc.bracket_vec(&sc.bracket_vec(&a, &c), &b);
                        let diff: Vec<Scalar> = (0..n).map(|p| &lhs[p] - &r1[p] - &r2[p]).collect();
                        if diff.iter().any(|x| !x.is_zero()) {
                            violations.push(Violation {
                                kind: ViolationKind::RightLeibniz,
                                indices: vec![i, j, l],
                                defect: render(&diff),
                            });
                        }
                    }
                }
            }
        }
    }
    StructureReport {
        kind: sc.kind,
        dim: n,
        valid: violations.is_empty(),
        violations,
    }
}

/// Jacobi defect `[[a,b],c] + [[b,c],a] + [[c,a],b]` of the 6-th bracket.
pub fn jacobi_defect<C: InvariantContext>(
    ctx: &C,
    a: &C::Elem,
    b: &C::Elem,
    c: &C::Elem,
    k: &Scalar,
) -> Result<C::Elem> {
    let t1 = bracket6(ctx, &bracket6(ctx, a, b, k)?, c, k)?;
    let t2 = bracket6(ctx, &bracket6(ctx, b, c, k)?, a, k)?;
    let t3 = bracket6(ctx, &bracket6(ctx, c, a, k)?, b, k)?;
    Ok(ctx.add(&ctx.add(&t1, &t2), &t3))
}

/// Right Leibniz defect `<<a,b>,c> - <a,<b,c>> - <<a,c>,b>` of the 4-th
/// bracket.
pub fn leibniz_defect<C: InvariantContext>(
    ctx: &C,
    a: &C::Elem,
    b: &C::Elem,
    c: &C::Elem,
    k: &Scalar,
) -> Result<C::Elem> {
    let lhs = bracket4(ctx, &bracket4(ctx, a, b, k)?, c, k)?;
    let r1 = bracket4(ctx, a, &bracket4(ctx, b, c, k)?, k)?;
    let r2 = bracket4(ctx, &bracket4(ctx, a, c, k)?, b, k)?;
    Ok(ctx.sub(&ctx.sub(&lhs, &r1), &r2))
}

/// The identity defect that matters for `variant`: Jacobi for the 6-th
/// bracket, right Leibniz for the 4-th.
pub fn identity_defect<C: InvariantContext>(
    ctx: &C,
    variant: Variant,
    a: &C::Elem,
    b: &C::Elem,
    c: &C::Elem,
    k: &Scalar,
) -> Result<C::Elem> {
    match variant {
        Variant::Sixth => jacobi_defect(ctx, a, b, c, k),
        Variant::Fourth => leibniz_defect(ctx, a, b, c, k),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDefect {
    pub k: String,
    pub defect: String,
    pub zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub variant: String,
    pub identity: String,
    pub samples: Vec<SampleDefect>,
    pub certified: bool,
}

/// Minimum number of distinct `k` values accepted by
/// [`certify_bracket_identity`]. Defect coefficients are polynomials of
/// degree at most 2 in `k`.
pub const MIN_SAMPLES: usize = 3;

/// Evaluates the Jacobi (6th) or right Leibniz (4th) defect on three free
/// generators for each sampled `k`. All-zero defects over at least three
/// distinct samples certify the identity as a polynomial identity in `k`.
pub fn certify_bracket_identity(variant: Variant, k_samples: &[Scalar]) -> Result<IdentityReport> {
    let distinct: BTreeSet<&Scalar> = k_samples.iter().collect();
    if distinct.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples {
            need: MIN_SAMPLES,
            got: distinct.len(),
        });
    }
    let ctx = FreeContext;
    let (x1, x2, x3) = (FreeElem::gen(1), FreeElem::gen(2), FreeElem::gen(3));
    let mut samples = Vec::new();
    for k in distinct {
        let defect = identity_defect(&ctx, variant, &x1, &x2, &x3, k)?;
        samples.push(SampleDefect {
            k: k.to_string(),
            zero: defect.is_zero(),
            defect: defect.to_string(),
        });
    }
    Ok(IdentityReport {
        variant: variant.tag().to_string(),
        identity: match variant {
            Variant::Sixth => "jacobi".into(),
            Variant::Fourth => "right_leibniz".into(),
        },
        certified: samples.iter().all(|s| s.zero),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{default_labels, parse_expr};
    use crate::scalar::{frac, int};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    pub(crate) fn sl2() -> StructureConstants {
        // h, e, f
        StructureConstants::from_table(
            3,
            BracketKind::Lie,
            &[
                (1, 2, ints(&[0, 2, 0])),
                (2, 1, ints(&[0, -2, 0])),
                (1, 3, ints(&[0, 0, -2])),
                (3, 1, ints(&[0, 0, 2])),
                (2, 3, ints(&[1, 0, 0])),
                (3, 2, ints(&[-1, 0, 0])),
            ],
        )
        .unwrap()
    }

    fn p(s: &str) -> FreeElem {
        parse_expr(s, &default_labels(3)).unwrap()
    }

    #[test]
    fn sl2_is_valid() {
        assert!(validate_structure(&sl2()).valid);
        assert!(validate_structure(&sl2().with_kind(BracketKind::Leibniz)).valid);
    }

    #[test]
    fn antisymmetry_witness() {
        let sc = StructureConstants::from_table(
            2,
            BracketKind::Lie,
            &[(1, 2, ints(&[1, 0])), (2, 1, ints(&[1, 0]))],
        )
        .unwrap();
        let report = validate_structure(&sc);
        assert!(!report.valid);
        assert_eq!(report.violations[0].kind, ViolationKind::Antisymmetry);
        assert_eq!(report.violations[0].indices, vec![1, 2]);
    }

    #[test]
    fn leibniz_square_zero_valid() {
        let sc = StructureConstants::from_table(2, BracketKind::Leibniz, &[(1, 1, ints(&[0, 1]))]).unwrap();
        assert!(validate_structure(&sc).valid);
        // not a Lie algebra: [x1,x1] != 0
        assert!(!validate_structure(&sc.with_kind(BracketKind::Lie)).valid);
    }

    #[test]
    fn leibniz_violation_detected() {
        // <x1,x2> = x1, <x2,x1> = x1 .. check against brute force
        let sc = StructureConstants::from_table(
            2,
            BracketKind::Leibniz,
            &[(2, 2, ints(&[1, 0])), (1, 2, ints(&[0, 1]))],
        )
        .unwrap();
        let r = validate_structure(&sc);
        assert!(!r.valid);
        assert!(r.violations.iter().all(|v| v.kind == ViolationKind::RightLeibniz));
    }

    #[test]
    fn bracket_examples() {
        let ctx = FreeContext;
        let k = int(3);
        let a = p("x1 + 2*q*x2");
        assert!(bracket6(&ctx, &a, &a, &k).unwrap().is_zero());
        assert!(bracket6(&ctx, &FreeElem::q(), &FreeElem::q(), &k).unwrap().is_zero());
        assert!(bracket4(&ctx, &FreeElem::q(), &FreeElem::q(), &k).unwrap().is_zero());
        assert_eq!(
            bracket6(&ctx, &p("x1"), &p("x2"), &int(1)).unwrap(),
            p("x1*x2 - x2*x1 - x1*x2*q + x2*x1*q + x1*q*x2 - x2*q*x1")
        );
        assert_eq!(
            bracket4(&ctx, &p("x1"), &p("x1"), &k).unwrap(),
            p("(1+3)*x1*q*x1 - x1*x1*q - 3*q*x1*x1")
        );
        assert_eq!(
            bracket4(&ctx, &p("x1"), &p("x2"), &int(0)).unwrap(),
            p("x1*x2 - x2*x1 + x2*q*x1 - x1*x2*q")
        );
    }

    #[test]
    fn identities_certified() {
        let ks = vec![int(0), int(1), int(-1), int(2), frac(1, 2)];
        assert!(certify_bracket_identity(Variant::Sixth, &ks).unwrap().certified);
        assert!(certify_bracket_identity(Variant::Fourth, &ks).unwrap().certified);
        assert_eq!(
            certify_bracket_identity(Variant::Sixth, &[int(1), int(1), int(2)]),
            Err(Error::InsufficientSamples { need: 3, got: 2 })
        );
    }
}
