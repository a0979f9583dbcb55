//! Augmented directed complexes with bases.
//!
//! An [`AugmentedComplex`] stores a graded basis, the boundary of every basis
//! element and the augmentation of every degree-0 element. The distinguished
//! submonoid in each degree is normally the cone spanned by the basis; complexes
//! of graded maps use a [`MembershipPredicate`] instead.
//!
//! For based complexes this module computes the atom table and decides the
//! three basis properties used downstream: unitality, loop-freeness and strong
//! loop-freeness. Loop-freeness asks for partial orders containing a forced
//! strict relation, which exist exactly when that relation has no directed
//! cycle, so both properties are decided by a topological sort that returns
//! either a linear witness or a cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::{BasisElement, BasisId, ChainError, ChainVector, Sign};
use crate::digraph::{topological_sort, Acyclicity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdcError {
    #[error("duplicate basis element {0}")]
    DuplicateBasis(BasisId),
    #[error("unknown basis element {0}")]
    UnknownBasis(BasisId),
    #[error("basis element {id} has degree {found}, expected {expected}")]
    WrongDegree { id: BasisId, expected: usize, found: usize },
    #[error("boundary given for 0-dimensional element {0}")]
    BoundaryOnVertex(BasisId),
    #[error("augmentation given for positive-dimensional element {0}")]
    AugmentationOnPositive(BasisId),
    #[error("operation needs a complex whose submonoids are spanned by the basis")]
    NotBased,
    #[error("no boundary on degree 0; use the augmentation")]
    BoundaryOfVertex,
    #[error("augmentation is only defined in degree 0, got degree {0}")]
    AugmentationDegree(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Membership test for a distinguished submonoid that is not a basis cone.
pub trait MembershipPredicate: Send + Sync + fmt::Debug {
    /// Whether `v` lies in the chain group itself (the ambient coordinates may
    /// be larger than the group, as for chain maps in degree 0).
    fn in_group(&self, v: &ChainVector) -> bool;
    /// Whether `v` lies in the distinguished submonoid.
    fn in_submonoid(&self, v: &ChainVector) -> bool;
}

#[derive(Clone, Debug, Default)]
pub enum Submonoid {
    #[default]
    BasisCone,
    Predicate(Arc<dyn MembershipPredicate>),
}

impl PartialEq for Submonoid {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Submonoid::BasisCone, Submonoid::BasisCone) => true,
            (Submonoid::Predicate(a), Submonoid::Predicate(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

/// A single failed chain-complex identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `∂∂b` is nonzero.
    BoundarySquared { element: BasisId, residue: ChainVector },
    /// `ε∂b` is nonzero.
    AugmentedBoundary { element: BasisId, value: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundarySquared { element, residue } => {
                write!(f, "∂∂({element}) = {residue} ≠ 0")
            }
            Violation::AugmentedBoundary { element, value } => {
                write!(f, "ε∂({element}) = {value} ≠ 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid complex: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

/// The atom `⟨b⟩` of a basis element, stored degreewise up to `|b|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub element: BasisElement,
    minus: Vec<ChainVector>,
    plus: Vec<ChainVector>,
}

impl Atom {
    pub fn degree(&self) -> usize {
        self.element.degree
    }

    /// `⟨b⟩ᵅₙ`, zero for `n > |b|`.
    pub fn part(&self, sign: Sign, n: usize) -> ChainVector {
        let side = match sign {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        };
        side.get(n).cloned().unwrap_or_else(|| ChainVector::zero(n))
    }

    pub fn part_ref(&self, sign: Sign, n: usize) -> Option<&ChainVector> {
        match sign {
            Sign::Minus => self.minus.get(n),
            Sign::Plus => self.plus.get(n),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomTable {
    atoms: BTreeMap<BasisId, Atom>,
}

impl AtomTable {
    pub fn get(&self, id: &BasisId) -> Option<&Atom> {
        self.atoms.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.values()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Result of the loop-freeness decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopFreeness {
    /// `orders[n]` linearly extends the level-`n` relation on the elements of
    /// dimension greater than `n`.
    LoopFree {
        orders: Vec<Vec<BasisId>>,
    },
    Loop {
        level: usize,
        cycle: Vec<BasisId>,
    },
}

impl LoopFreeness {
    pub fn holds(&self) -> bool {
        matches!(self, LoopFreeness::LoopFree { .. })
    }
}

/// Result of the strong loop-freeness decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongLoopFreeness {
    Ordered(Vec<BasisId>),
    Cycle(Vec<BasisId>),
}

impl StrongLoopFreeness {
    pub fn holds(&self) -> bool {
        matches!(self, StrongLoopFreeness::Ordered(_))
    }
}

#[derive(Clone)]
pub struct AugmentedComplex {
    basis: Vec<Vec<BasisId>>,
    degree_of: BTreeMap<BasisId, usize>,
    boundary: BTreeMap<BasisId, ChainVector>,
    augmentation: BTreeMap<BasisId, BigInt>,
    submonoid: Submonoid,
    atoms: OnceLock<AtomTable>,
}

impl PartialEq for AugmentedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.boundary == other.boundary
            && self.augmentation == other.augmentation
            && self.submonoid == other.submonoid
    }
}

impl Eq for AugmentedComplex {}

impl fmt::Debug for AugmentedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AugmentedComplex")
            .field("basis", &self.basis)
            .field("boundary", &self.boundary)
            .field("augmentation", &self.augmentation)
            .field("submonoid", &self.submonoid)
            .finish()
    }
}

impl AugmentedComplex {
    /// Builds a complex from its basis, boundaries and augmentation.
    ///
    /// Missing boundaries and augmentations are zero. Structural problems
    /// (unknown ids, degree mismatches) are errors; chain-complex identities
    /// are checked separately by [`AugmentedComplex::validate`].
    pub fn new(
        basis: impl IntoIterator<Item = BasisElement>,
        boundary: BTreeMap<BasisId, ChainVector>,
        augmentation: BTreeMap<BasisId, BigInt>,
    ) -> Result<Self, AdcError> {
        let mut degree_of = BTreeMap::new();
        let mut by_degree: Vec<BTreeSet<BasisId>> = Vec::new();
        for b in basis {
            if degree_of.insert(b.id.clone(), b.degree).is_some() {
                return Err(AdcError::DuplicateBasis(b.id));
            }
            if by_degree.len() <= b.degree {
                by_degree.resize_with(b.degree + 1, BTreeSet::new);
            }
            by_degree[b.degree].insert(b.id);
        }
        let basis: Vec<Vec<BasisId>> = by_degree.into_iter().map(|s| s.into_iter().collect()).collect();

        let check = |id: &BasisId, expected: usize| -> Result<(), AdcError> {
            match degree_of.get(id) {
                None => Err(AdcError::UnknownBasis(id.clone())),
                Some(&d) if d != expected => Err(AdcError::WrongDegree {
                    id: id.clone(),
                    expected,
                    found: d,
                }),
                Some(_) => Ok(()),
            }
        };

        let mut full_boundary = BTreeMap::new();
        for (id, v) in boundary {
            let d = *degree_of.get(&id).ok_or_else(|| AdcError::UnknownBasis(id.clone()))?;
            if d == 0 {
                if v.is_zero() {
                    continue;
                }
                return Err(AdcError::BoundaryOnVertex(id));
            }
            if v.degree() != d - 1 {
                return Err(AdcError::Chain(ChainError::DegreeMismatch {
                    left: d - 1,
                    right: v.degree(),
                }));
            }
            for k in v.support() {
                check(k, d - 1)?;
            }
            full_boundary.insert(id, v);
        }
        for (id, &d) in &degree_of {
            if d > 0 && !full_boundary.contains_key(id) {
                full_boundary.insert(id.clone(), ChainVector::zero(d - 1));
            }
        }

        let mut full_aug = BTreeMap::new();
        for (id, e) in augmentation {
            let d = *degree_of.get(&id).ok_or_else(|| AdcError::UnknownBasis(id.clone()))?;
            if d != 0 {
                if e.is_zero() {
                    continue;
                }
                return Err(AdcError::AugmentationOnPositive(id));
            }
            full_aug.insert(id, e);
        }
        for (id, &d) in &degree_of {
            if d == 0 {
                full_aug.entry(id.clone()).or_insert_with(BigInt::zero);
            }
        }

        Ok(AugmentedComplex {
            basis,
            degree_of,
            boundary: full_boundary,
            augmentation: full_aug,
            submonoid: Submonoid::BasisCone,
            atoms: OnceLock::new(),
        })
    }

    pub fn with_submonoid(mut self, submonoid: Submonoid) -> Self {
        self.submonoid = submonoid;
        self.atoms = OnceLock::new();
        self
    }

    pub fn submonoid(&self) -> &Submonoid {
        &self.submonoid
    }

    pub fn is_based(&self) -> bool {
        matches!(self.submonoid, Submonoid::BasisCone)
    }

    fn require_based(&self) -> Result<(), AdcError> {
        if self.is_based() {
            Ok(())
        } else {
            Err(AdcError::NotBased)
        }
    }

    /// Highest degree with a nonempty basis; `None` for the empty complex.
    pub fn max_degree(&self) -> Option<usize> {
        self.basis.len().checked_sub(1)
    }

    /// Basis ids of degree `n`, sorted.
    pub fn basis_in(&self, n: usize) -> &[BasisId] {
        self.basis.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All basis elements ordered by `(degree, id)`.
    pub fn elements(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.basis
            .iter()
            .enumerate()
            .flat_map(|(d, ids)| ids.iter().map(move |id| BasisElement::new(id.clone(), d)))
    }

    pub fn len(&self) -> usize {
        self.degree_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree_of.is_empty()
    }

    pub fn degree_of(&self, id: &BasisId) -> Option<usize> {
        self.degree_of.get(id).copied()
    }

    pub fn contains(&self, id: &BasisId) -> bool {
        self.degree_of.contains_key(id)
    }

    /// Boundary of a basis element; `None` for unknown or 0-dimensional ids.
    pub fn boundary(&self, id: &BasisId) -> Option<&ChainVector> {
        self.boundary.get(id)
    }

    pub fn augmentation(&self, id: &BasisId) -> Option<&BigInt> {
        self.augmentation.get(id)
    }

    /// Checks that every id in `v` is a basis element of `v`'s degree.
    pub fn check_vector(&self, v: &ChainVector) -> Result<(), AdcError> {
        for id in v.support() {
            match self.degree_of.get(id) {
                None => return Err(AdcError::UnknownBasis(id.clone())),
                Some(&d) if d != v.degree() => {
                    return Err(AdcError::WrongDegree {
                        id: id.clone(),
                        expected: v.degree(),
                        found: d,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Linear extension of the boundary to a chain of positive degree.
    pub fn boundary_of(&self, v: &ChainVector) -> Result<ChainVector, AdcError> {
        if v.degree() == 0 {
            return Err(AdcError::BoundaryOfVertex);
        }
        let mut out = ChainVector::zero(v.degree() - 1);
        for (id, c) in v.iter() {
            let b = self
                .boundary
                .get(id)
                .filter(|_| self.degree_of.get(id) == Some(&v.degree()))
                .ok_or_else(|| AdcError::UnknownBasis(id.clone()))?;
            out.add_scaled(c, b);
        }
        Ok(out)
    }

    /// Linear extension of the augmentation to a degree-0 chain.
    pub fn augment(&self, v: &ChainVector) -> Result<BigInt, AdcError> {
        if v.degree() != 0 {
            return Err(AdcError::AugmentationDegree(v.degree()));
        }
        let mut total = BigInt::zero();
        for (id, c) in v.iter() {
            let e = self
                .augmentation
                .get(id)
                .ok_or_else(|| AdcError::UnknownBasis(id.clone()))?;
            total += c * e;
        }
        Ok(total)
    }

    /// Whether `v` lies in the chain group of its degree.
    pub fn in_group(&self, v: &ChainVector) -> bool {
        match &self.submonoid {
            Submonoid::BasisCone => true,
            Submonoid::Predicate(p) => p.in_group(v),
        }
    }

    /// Whether `v` lies in the distinguished submonoid of its degree.
    pub fn in_submonoid(&self, v: &ChainVector) -> bool {
        match &self.submonoid {
            Submonoid::BasisCone => v.is_nonnegative(),
            Submonoid::Predicate(p) => p.in_submonoid(v),
        }
    }

    /// Checks `∂∂ = 0` and `ε∂ = 0` on every basis element.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        for el in self.elements() {
            let Some(b) = self.boundary.get(&el.id) else {
                continue;
            };
            if el.degree >= 2 {
                let residue = self.boundary_of(b).expect("structurally checked");
                if !residue.is_zero() {
                    violations.push(Violation::BoundarySquared {
                        element: el.id.clone(),
                        residue,
                    });
                }
            } else if el.degree == 1 {
                let value = self.augment(b).expect("structurally checked");
                if !value.is_zero() {
                    violations.push(Violation::AugmentedBoundary {
                        element: el.id.clone(),
                        value,
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Atom table, computed once per complex.
    pub fn atoms(&self) -> Result<&AtomTable, AdcError> {
        self.require_based()?;
        Ok(self.atoms.get_or_init(|| self.compute_atoms()))
    }

    fn compute_atoms(&self) -> AtomTable {
        let mut atoms = BTreeMap::new();
        for el in self.elements() {
            let top = ChainVector::basis(el.degree, el.id.clone());
            let mut minus = vec![top.clone()];
            let mut plus = vec![top];
            for _ in 0..el.degree {
                let lower_minus = self
                    .boundary_of(minus.last().unwrap())
                    .expect("valid basis")
                    .split_parts()
                    .0;
                let lower_plus = self
                    .boundary_of(plus.last().unwrap())
                    .expect("valid basis")
                    .split_parts()
                    .1;
                debug_assert!(lower_minus.is_nonnegative() && lower_plus.is_nonnegative());
                minus.push(lower_minus);
                plus.push(lower_plus);
            }
            minus.reverse();
            plus.reverse();
            atoms.insert(
                el.id.clone(),
                Atom {
                    element: el,
                    minus,
                    plus,
                },
            );
        }
        AtomTable { atoms }
    }

    /// Both 0-dimensional endpoints of every atom have augmentation 1.
    pub fn is_unital(&self) -> Result<bool, AdcError> {
        let atoms = self.atoms()?;
        for atom in atoms.iter() {
            for sign in Sign::BOTH {
                if !self.augment(&atom.part(sign, 0))?.is_one() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn node_index(&self) -> (Vec<BasisElement>, BTreeMap<BasisId, usize>) {
        let nodes: Vec<BasisElement> = self.elements().collect();
        let index = nodes.iter().enumerate().map(|(i, b)| (b.id.clone(), i)).collect();
        (nodes, index)
    }

    /// Forced pairs `(a, b)` with `a ≤ ∂⁻b` or `∂⁺a ≥ b`.
    pub fn strong_relation(&self) -> Result<Vec<(BasisId, BasisId)>, AdcError> {
        self.require_based()?;
        let mut edges = Vec::new();
        for el in self.elements() {
            let Some(b) = self.boundary.get(&el.id) else {
                continue;
            };
            for (face, c) in b.iter() {
                // negative coefficient: face ≤ ∂⁻el; positive: ∂⁺el ≥ face
                if c < &BigInt::zero() {
                    edges.push((face.clone(), el.id.clone()));
                } else {
                    edges.push((el.id.clone(), face.clone()));
                }
            }
        }
        Ok(edges)
    }

    pub fn strong_loop_freeness(&self) -> Result<StrongLoopFreeness, AdcError> {
        let (nodes, index) = self.node_index();
        let edges: Vec<(usize, usize)> = self
            .strong_relation()?
            .iter()
            .map(|(a, b)| (index[a], index[b]))
            .collect();
        let ids = |v: Vec<usize>| v.into_iter().map(|i| nodes[i].id.clone()).collect();
        Ok(match topological_sort(nodes.len(), &edges) {
            Acyclicity::Order(o) => StrongLoopFreeness::Ordered(ids(o)),
            Acyclicity::Cycle(c) => StrongLoopFreeness::Cycle(ids(c)),
        })
    }

    pub fn is_strongly_loop_free(&self) -> Result<bool, AdcError> {
        Ok(self.strong_loop_freeness()?.holds())
    }

    /// Forced pairs `(a, b)` with `|a|, |b| > n` and `⟨a⟩⁺ₙ ∧ ⟨b⟩⁻ₙ ≠ 0`.
    pub fn level_relation(&self, n: usize) -> Result<Vec<(BasisId, BasisId)>, AdcError> {
        let atoms = self.atoms()?;
        let high: Vec<&Atom> = atoms.iter().filter(|a| a.degree() > n).collect();
        let mut edges = Vec::new();
        for a in &high {
            let a_plus = a.part_ref(Sign::Plus, n).expect("n < |a|");
            for b in &high {
                if a.element.id == b.element.id {
                    continue;
                }
                let b_minus = b.part_ref(Sign::Minus, n).expect("n < |b|");
                if a_plus.overlaps(b_minus) {
                    edges.push((a.element.id.clone(), b.element.id.clone()));
                }
            }
        }
        Ok(edges)
    }

    /// Linear extension of the level-`n` relation on elements of dimension > n,
    /// ties broken by `(dimension, id)`; `Err` carries a cycle.
    pub fn level_order(&self, n: usize) -> Result<Result<Vec<BasisId>, Vec<BasisId>>, AdcError> {
        let nodes: Vec<BasisElement> = self.elements().filter(|b| b.degree > n).collect();
        let index: BTreeMap<&BasisId, usize> = nodes.iter().enumerate().map(|(i, b)| (&b.id, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .level_relation(n)?
            .iter()
            .map(|(a, b)| (index[a], index[b]))
            .collect();
        let ids = |v: Vec<usize>| v.into_iter().map(|i| nodes[i].id.clone()).collect();
        Ok(match topological_sort(nodes.len(), &edges) {
            Acyclicity::Order(o) => Ok(ids(o)),
            Acyclicity::Cycle(c) => Err(ids(c)),
        })
    }

    pub fn loop_freeness(&self) -> Result<LoopFreeness, AdcError> {
        let top = self.max_degree().unwrap_or(0);
        let mut orders = Vec::with_capacity(top);
        for n in 0..top {
            match self.level_order(n)? {
                Ok(o) => orders.push(o),
                Err(cycle) => return Ok(LoopFreeness::Loop { level: n, cycle }),
            }
        }
        Ok(LoopFreeness::LoopFree { orders })
    }

    pub fn is_loop_free(&self) -> Result<bool, AdcError> {
        Ok(self.loop_freeness()?.holds())
    }
}

/// Incremental construction of a complex from string ids and small integers.
#[derive(Default, Debug, Clone)]
pub struct ComplexBuilder {
    basis: Vec<BasisElement>,
    boundary: BTreeMap<BasisId, ChainVector>,
    augmentation: BTreeMap<BasisId, BigInt>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn element(&mut self, id: impl Into<BasisId>, degree: usize) -> &mut Self {
        self.basis.push(BasisElement::new(id, degree));
        self
    }

    /// Sets the boundary of a positive-dimensional element.
    pub fn boundary<K: Into<BasisId>, C: Into<BigInt>>(
        &mut self,
        id: impl Into<BasisId>,
        degree: usize,
        terms: impl IntoIterator<Item = (K, C)>,
    ) -> &mut Self {
        self.boundary
            .insert(id.into(), ChainVector::from_terms(degree.saturating_sub(1), terms));
        self
    }

    pub fn augmentation(&mut self, id: impl Into<BasisId>, value: impl Into<BigInt>) -> &mut Self {
        self.augmentation.insert(id.into(), value.into());
        self
    }

    pub fn build(&self) -> Result<AugmentedComplex, AdcError> {
        AugmentedComplex::new(
            self.basis.iter().cloned(),
            self.boundary.clone(),
            self.augmentation.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplex;

    fn id(s: &str) -> BasisId {
        BasisId::from(s)
    }

    pub(crate) fn directed_circle() -> AugmentedComplex {
        ComplexBuilder::new()
            .element("p", 0)
            .element("q", 0)
            .element("e", 1)
            .element("f", 1)
            .boundary("e", 1, [("q", 1), ("p", -1)])
            .boundary("f", 1, [("p", 1), ("q", -1)])
            .augmentation("p", 1)
            .augmentation("q", 1)
            .build()
            .unwrap()
    }

    #[test]
    fn validate_reports_nonzero_boundary_squared() {
        let k = ComplexBuilder::new()
            .element("p", 0)
            .element("e", 1)
            .element("f", 2)
            .boundary("e", 1, [("p", 1)])
            .boundary("f", 2, [("e", 1)])
            .augmentation("p", 1)
            .build()
            .unwrap();
        let report = k.validate().unwrap_err();
        assert!(report.violations.contains(&Violation::BoundarySquared {
            element: id("f"),
            residue: ChainVector::basis(0, "p"),
        }));
        // ∂e = p also violates ε∂ = 0
        assert!(report.violations.contains(&Violation::AugmentedBoundary {
            element: id("e"),
            value: BigInt::one(),
        }));
    }

    #[test]
    fn validate_reports_augmentation_failure() {
        let k = ComplexBuilder::new()
            .element("p", 0)
            .element("q", 0)
            .element("e", 1)
            .boundary("e", 1, [("q", 1), ("p", -1)])
            .augmentation("p", 1)
            .augmentation("q", 2)
            .build()
            .unwrap();
        let report = k.validate().unwrap_err();
        assert_eq!(
            report.violations,
            vec![Violation::AugmentedBoundary {
                element: id("e"),
                value: BigInt::one()
            }]
        );
        assert!(report.to_string().contains("ε∂(e) = 1"));
    }

    #[test]
    fn structural_errors() {
        let err = ComplexBuilder::new()
            .element("p", 0)
            .element("e", 1)
            .boundary("e", 1, [("x", 1)])
            .build()
            .unwrap_err();
        assert_eq!(err, AdcError::UnknownBasis(id("x")));
        let err = ComplexBuilder::new()
            .element("p", 0)
            .element("p", 1)
            .build()
            .unwrap_err();
        assert_eq!(err, AdcError::DuplicateBasis(id("p")));
        let err = ComplexBuilder::new()
            .element("p", 0)
            .element("e", 1)
            .element("f", 2)
            .boundary("f", 2, [("p", 1)])
            .build()
            .unwrap_err();
        assert!(matches!(err, AdcError::WrongDegree { .. }));
    }

    #[test]
    fn triangle_atoms() {
        let k = simplex(2);
        let atoms = k.atoms().unwrap();
        let t = atoms.get(&id("012")).unwrap();
        assert_eq!(t.part(Sign::Minus, 1), ChainVector::basis(1, "02"));
        assert_eq!(
            t.part(Sign::Plus, 1),
            ChainVector::from_terms(1, [("01", 1), ("12", 1)])
        );
        assert_eq!(t.part(Sign::Minus, 0), ChainVector::basis(0, "0"));
        assert_eq!(t.part(Sign::Plus, 0), ChainVector::basis(0, "2"));
        assert!(t.part(Sign::Plus, 3).is_zero());
        let v = atoms.get(&id("1")).unwrap();
        assert_eq!(v.part(Sign::Minus, 0), ChainVector::basis(0, "1"));
        assert_eq!(v.part(Sign::Plus, 0), ChainVector::basis(0, "1"));
    }

    #[test]
    fn unitality() {
        assert!(simplex(3).is_unital().unwrap());
        let k = ComplexBuilder::new()
            .element("b", 0)
            .augmentation("b", 2)
            .build()
            .unwrap();
        assert!(!k.is_unital().unwrap());
    }

    #[test]
    fn directed_circle_has_loops() {
        let k = directed_circle();
        k.validate().unwrap();
        match k.strong_loop_freeness().unwrap() {
            StrongLoopFreeness::Cycle(c) => {
                assert_eq!(c, vec![id("p"), id("e"), id("q"), id("f")]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            k.loop_freeness().unwrap(),
            LoopFreeness::Loop {
                level: 0,
                cycle: vec![id("e"), id("f")]
            }
        );
    }

    #[test]
    fn degenerate_complexes() {
        let empty = ComplexBuilder::new().build().unwrap();
        empty.validate().unwrap();
        assert!(empty.is_unital().unwrap());
        assert!(empty.is_loop_free().unwrap());
        assert!(empty.is_strongly_loop_free().unwrap());
        assert_eq!(empty.max_degree(), None);

        let point = ComplexBuilder::new()
            .element("b", 0)
            .augmentation("b", 1)
            .build()
            .unwrap();
        assert!(point.is_loop_free().unwrap());
    }

    #[test]
    fn simplex_is_strongly_loop_free_with_valid_witness() {
        for p in 0..=4 {
            let k = simplex(p);
            let StrongLoopFreeness::Ordered(order) = k.strong_loop_freeness().unwrap() else {
                panic!("simplex({p}) should be strongly loop-free");
            };
            let pos: BTreeMap<_, _> = order.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
            for (a, b) in k.strong_relation().unwrap() {
                assert!(pos[&a] < pos[&b]);
            }
            assert!(k.is_loop_free().unwrap());
        }
    }

    #[test]
    fn atom_recursion_is_consistent() {
        let k = simplex(4);
        for atom in k.atoms().unwrap().iter() {
            for n in 0..atom.degree() {
                let lhs = k.boundary_of(&atom.part(Sign::Minus, n + 1)).unwrap();
                let lhs2 = k.boundary_of(&atom.part(Sign::Plus, n + 1)).unwrap();
                let rhs = &atom.part(Sign::Plus, n) - &atom.part(Sign::Minus, n);
                assert_eq!(lhs, rhs);
                assert_eq!(lhs2, rhs);
                assert!(atom
                    .part(Sign::Minus, n)
                    .meet(&atom.part(Sign::Plus, n))
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn predicate_complexes_have_no_atoms() {
        #[derive(Debug)]
        struct Everything;
        impl MembershipPredicate for Everything {
            fn in_group(&self, _: &ChainVector) -> bool {
                true
            }
            fn in_submonoid(&self, _: &ChainVector) -> bool {
                true
            }
        }
        let k = simplex(1).with_submonoid(Submonoid::Predicate(Arc::new(Everything)));
        assert_eq!(k.atoms().unwrap_err(), AdcError::NotBased);
        assert!(k.in_submonoid(&-&ChainVector::basis(0, "0")));
    }
}
