//! The operations an invariant algebra has to supply so that brackets,
//! evaluation and the universal-property checks can run against free,
//! envelope and matrix models through one code path.

use std::fmt::Debug;

use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::FreeElem;

pub trait InvariantContext {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// The distinguished idempotent.
    fn q(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    /// Fails only when the model cannot hold the product (degree caps).
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-Scalar::one(), b))
    }

    fn mul3(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Result<Self::Elem> {
        self.mul(&self.mul(a, b)?, c)
    }

    /// Checks that `q` is idempotent and that `q x q = q x` for each of the
    /// given elements.
    fn check_invariant(&self, elems: &[Self::Elem]) -> Result<()> {
        let q = self.q();
        if self.mul(&q, &q)? != q {
            return Err(Error::NotInvariant("q is not idempotent".into()));
        }
        for (pos, x) in elems.iter().enumerate() {
            let qx = self.mul(&q, x)?;
            if self.mul(&qx, &q)? != qx {
                return Err(Error::NotInvariant(format!(
                    "element #{} violates q x q = q x",
                    pos + 1
                )));
            }
        }
        Ok(())
    }
}

/// The free invariant algebra.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeContext;

impl InvariantContext for FreeContext {
    type Elem = FreeElem;

    fn zero(&self) -> FreeElem {
        FreeElem::zero()
    }

    fn one(&self) -> FreeElem {
        FreeElem::one()
    }

    fn q(&self) -> FreeElem {
        FreeElem::q()
    }

    fn add(&self, a: &FreeElem, b: &FreeElem) -> FreeElem {
        a.add(b)
    }

    fn scale(&self, c: &Scalar, a: &FreeElem) -> FreeElem {
        a.scale(c)
    }

    fn mul(&self, a: &FreeElem, b: &FreeElem) -> Result<FreeElem> {
        Ok(a.mul(b))
    }

    fn is_zero(&self, a: &FreeElem) -> bool {
        a.is_zero()
    }
}
