//! Sparse integer chains over a named graded basis.
//!
//! A [`ChainVector`] is an element of the free abelian group on the basis
//! elements of one degree. Coefficients are arbitrary-precision integers and
//! the representation is canonical: no zero coefficient is ever stored and
//! iteration runs in basis-id order, so structural equality and hashing agree
//! with mathematical equality.
//!
//! Each degree is ordered coordinatewise (`x <= y` iff `y - x` has no negative
//! coefficient), which makes it a lattice; [`ChainVector::meet`] and
//! [`ChainVector::join`] are the componentwise min and max.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Stable identifier of a basis element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisId(Arc<str>);

impl BasisId {
    pub fn new(id: impl Into<Arc<str>>) -> Self {
        BasisId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BasisId {
    fn from(s: &str) -> Self {
        BasisId::new(s)
    }
}

impl From<String> for BasisId {
    fn from(s: String) -> Self {
        BasisId::new(s)
    }
}

impl AsRef<str> for BasisId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A basis element together with its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub id: BasisId,
    pub degree: usize,
}

impl BasisElement {
    pub fn new(id: impl Into<BasisId>, degree: usize) -> Self {
        BasisElement { id: id.into(), degree }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

/// Sign selecting the source (`Minus`) or target (`Plus`) side of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// `self` if `k` is even, the opposite sign if `k` is odd.
    pub fn alternate(self, k: usize) -> Sign {
        if k.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Finite integer linear combination of basis elements of a single degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainVector {
    degree: usize,
    coeffs: BTreeMap<BasisId, BigInt>,
}

impl ChainVector {
    pub fn zero(degree: usize) -> Self {
        ChainVector {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The vector consisting of the single basis element `id`.
    pub fn basis(degree: usize, id: impl Into<BasisId>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(id.into(), BigInt::one());
        ChainVector { degree, coeffs }
    }

    /// Sums the given terms; repeated ids accumulate and zeros are dropped.
    pub fn from_terms<I, K, C>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (K, C)>,
        K: Into<BasisId>,
        C: Into<BigInt>,
    {
        let mut v = ChainVector::zero(degree);
        for (id, c) in terms {
            v.add_term(id.into(), &c.into());
        }
        v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of basis elements with a nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, id: &BasisId) -> BigInt {
        self.coeffs.get(id).cloned().unwrap_or_default()
    }

    pub fn get(&self, id: &BasisId) -> Option<&BigInt> {
        self.coeffs.get(id)
    }

    pub fn contains(&self, id: &BasisId) -> bool {
        self.coeffs.contains_key(id)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, BasisId, BigInt> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisId> {
        self.coeffs.keys()
    }

    /// Adds `c * id` in place, keeping the canonical form.
    pub fn add_term(&mut self, id: BasisId, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(id) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += m * other`. Panics on degree mismatch.
    pub fn add_scaled(&mut self, m: &BigInt, other: &ChainVector) {
        assert_eq!(self.degree, other.degree, "chain degree mismatch");
        if m.is_zero() {
            return;
        }
        for (id, c) in &other.coeffs {
            self.add_term(id.clone(), &(m * c));
        }
    }

    fn check_degree(&self, other: &ChainVector) -> Result<(), ChainError> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(ChainError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            })
        }
    }

    pub fn checked_add(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        self.check_degree(other)?;
        let mut out = self.clone();
        out.add_scaled(&BigInt::one(), other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        self.check_degree(other)?;
        let mut out = self.clone();
        out.add_scaled(&-BigInt::one(), other);
        Ok(out)
    }

    pub fn scale(&self, m: &BigInt) -> ChainVector {
        if m.is_zero() {
            return ChainVector::zero(self.degree);
        }
        ChainVector {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), m * c)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Coordinatewise order: every coefficient of `other - self` is nonnegative.
    pub fn leq(&self, other: &ChainVector) -> Result<bool, ChainError> {
        self.check_degree(other)?;
        Ok(self.checked_sub(other)?.coeffs.values().all(|c| !c.is_positive()))
    }

    /// Componentwise minimum (absent keys read as zero).
    pub fn meet(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        self.combine(other, |a, b| a.min(b).clone())
    }

    /// Componentwise maximum (absent keys read as zero).
    pub fn join(&self, other: &ChainVector) -> Result<ChainVector, ChainError> {
        self.combine(other, |a, b| a.max(b).clone())
    }

    /// True iff `meet(self, other)` is nonzero; both sides assumed in the cone.
    pub(crate) fn overlaps(&self, other: &ChainVector) -> bool {
        self.coeffs
            .iter()
            .any(|(id, a)| a.is_positive() && other.coeffs.get(id).is_some_and(|b| b.is_positive()))
    }

    fn combine(&self, other: &ChainVector, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<ChainVector, ChainError> {
        self.check_degree(other)?;
        let zero = BigInt::zero();
        let mut out = ChainVector::zero(self.degree);
        for id in self.coeffs.keys().chain(other.coeffs.keys()) {
            if out.coeffs.contains_key(id) {
                continue;
            }
            let a = self.coeffs.get(id).unwrap_or(&zero);
            let b = other.coeffs.get(id).unwrap_or(&zero);
            let c = f(a, b);
            if !c.is_zero() {
                out.coeffs.insert(id.clone(), c);
            }
        }
        Ok(out)
    }

    /// Splits `self` as `pos - neg` with `neg, pos >= 0` and `neg ∧ pos = 0`.
    pub fn split_parts(&self) -> (ChainVector, ChainVector) {
        let mut neg = ChainVector::zero(self.degree);
        let mut pos = ChainVector::zero(self.degree);
        for (id, c) in &self.coeffs {
            if c.is_negative() {
                neg.coeffs.insert(id.clone(), -c);
            } else {
                pos.coeffs.insert(id.clone(), c.clone());
            }
        }
        (neg, pos)
    }

    /// Largest coefficient in absolute value, zero for the zero vector.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (id, c)) in self.coeffs.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "({id})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.degree, self)
    }
}

// Operator forms panic on degree mismatch; use the `checked_*` methods when
// degrees are not known to agree.

impl Add for &ChainVector {
    type Output = ChainVector;
    fn add(self, rhs: &ChainVector) -> ChainVector {
        self.checked_add(rhs).expect("chain degree mismatch")
    }
}

impl Sub for &ChainVector {
    type Output = ChainVector;
    fn sub(self, rhs: &ChainVector) -> ChainVector {
        self.checked_sub(rhs).expect("chain degree mismatch")
    }
}

impl Neg for &ChainVector {
    type Output = ChainVector;
    fn neg(self) -> ChainVector {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(terms: &[(&str, i64)]) -> ChainVector {
        ChainVector::from_terms(1, terms.iter().map(|&(k, c)| (k, c)))
    }

    #[test]
    fn arithmetic() {
        let a = v(&[("01", 1)]);
        let b = v(&[("12", 1)]);
        assert_eq!(&a + &b, v(&[("01", 1), ("12", 1)]));
        assert!((&a + &-&a).is_zero());
        assert_eq!((&a + &b).scale(&BigInt::from(2)), v(&[("01", 2), ("12", 2)]));
        assert_eq!(
            a.checked_add(&ChainVector::zero(0)),
            Err(ChainError::DegreeMismatch { left: 1, right: 0 })
        );
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let x = v(&[("01", 2), ("01", -2), ("12", 0)]);
        assert!(x.is_zero());
        assert_eq!(x, ChainVector::zero(1));
    }

    #[test]
    fn order_and_lattice() {
        let e01 = v(&[("01", 1)]);
        let e02 = v(&[("02", 1)]);
        let path = v(&[("01", 1), ("12", 1)]);
        assert!(ChainVector::zero(1).leq(&path).unwrap());
        assert!(e01.leq(&path).unwrap());
        assert!(!e01.leq(&e02).unwrap());
        assert!(path.meet(&e02).unwrap().is_zero());
        assert_eq!(path.meet(&path).unwrap(), path);
        assert_eq!(
            v(&[("01", 1), ("12", 2)]).meet(&v(&[("12", 1)])).unwrap(),
            v(&[("12", 1)])
        );
        assert!(e01.leq(&ChainVector::zero(0)).is_err());
    }

    #[test]
    fn split_of_triangle_boundary() {
        let d = v(&[("01", 1), ("02", -1), ("12", 1)]);
        let (neg, pos) = d.split_parts();
        assert_eq!(neg, v(&[("02", 1)]));
        assert_eq!(pos, v(&[("01", 1), ("12", 1)]));
        let (n0, p0) = ChainVector::zero(1).split_parts();
        assert!(n0.is_zero() && p0.is_zero());
        let (n1, p1) = path().split_parts();
        assert!(n1.is_zero());
        assert_eq!(p1, path());
    }

    fn path() -> ChainVector {
        v(&[("01", 1), ("12", 3)])
    }

    #[test]
    fn display() {
        assert_eq!(v(&[("01", 1), ("02", -1), ("12", 2)]).to_string(), "(01)-(02)+2(12)");
        assert_eq!(ChainVector::zero(3).to_string(), "0");
    }

    fn arb_vector() -> impl Strategy<Value = ChainVector> {
        prop::collection::btree_map(0u8..6, -4i64..5, 0..6)
            .prop_map(|m| ChainVector::from_terms(2, m.into_iter().map(|(k, c)| (format!("b{k}"), c))))
    }

    proptest! {
        #[test]
        fn split_parts_reconstructs(x in arb_vector()) {
            let (neg, pos) = x.split_parts();
            prop_assert_eq!(&pos - &neg, x.clone());
            prop_assert!(neg.is_nonnegative() && pos.is_nonnegative());
            prop_assert!(neg.meet(&pos).unwrap().is_zero());
        }

        #[test]
        fn lattice_laws(x in arb_vector(), y in arb_vector(), z in arb_vector()) {
            prop_assert_eq!(x.meet(&y).unwrap(), y.meet(&x).unwrap());
            prop_assert_eq!(x.join(&y).unwrap(), y.join(&x).unwrap());
            prop_assert_eq!(
                x.meet(&y).unwrap().meet(&z).unwrap(),
                x.meet(&y.meet(&z).unwrap()).unwrap()
            );
            prop_assert_eq!(
                x.join(&y).unwrap().join(&z).unwrap(),
                x.join(&y.join(&z).unwrap()).unwrap()
            );
            prop_assert_eq!(x.meet(&x.join(&y).unwrap()).unwrap(), x.clone());
            prop_assert_eq!(x.join(&x.meet(&y).unwrap()).unwrap(), x.clone());
            prop_assert!(x.meet(&y).unwrap().leq(&x).unwrap());
            prop_assert!(x.leq(&x.join(&y).unwrap()).unwrap());
        }

        #[test]
        fn leq_is_partial_order(x in arb_vector(), y in arb_vector(), z in arb_vector()) {
            prop_assert!(x.leq(&x).unwrap());
            if x.leq(&y).unwrap() && y.leq(&x).unwrap() {
                prop_assert_eq!(&x, &y);
            }
            if x.leq(&y).unwrap() && y.leq(&z).unwrap() {
                prop_assert!(x.leq(&z).unwrap());
            }
        }
    }
}
