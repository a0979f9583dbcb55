//! Internal hom complexes `HOM(K, L)` and `HOM′(K, L)`, and morphism search.
//!
//! Degree `n` of the ambient complex has one coordinate `[a→c]` for each pair of
//! basis elements with `|c| = |a| + n`, so an element is a family of integer
//! matrices `fₘ: Kₘ → Lₘ₊ₙ`; degree 0 has one extra coordinate `ε` holding the
//! integer `εf`. Only chain maps compatible with the augmentation belong to the
//! degree-0 group, and the distinguished submonoid consists of the elements
//! with nonnegative matrices. Both conditions are checked by a
//! [`MembershipPredicate`], so these complexes carry no basis in the sense used
//! by atoms and decomposition.
//!
//! Boundaries, for `f` of degree `n`:
//!
//! * `HOM`:  `(∂f)ₘ = ∂∘fₘ − (−1)ⁿ fₘ₋₁∘∂` for `m > 0`, `(∂f)₀ = ∂∘f₀`;
//! * `HOM′`: `(∂f)ₘ = (−1)ᵐ (∂∘fₘ − fₘ₋₁∘∂)` for `m > 0`, `(∂f)₀ = ∂∘f₀`;
//!
//! and `ε(∂f) = 0` when `n = 1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cell::Cell;
use crate::chain::{BasisElement, BasisId, ChainVector, Sign};
use crate::complex::{AdcError, AugmentedComplex, MembershipPredicate, Submonoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("hom complexes need based source and target")]
    NotBased,
    #[error("element has degree {found}, expected {expected}")]
    Degree { expected: usize, found: usize },
    #[error("unknown coordinate {0}")]
    UnknownCoordinate(BasisId),
    #[error("cell is not a 0-cell")]
    NotZeroCell,
    #[error(transparent)]
    Adc(#[from] AdcError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomVariant {
    Hom,
    HomPrime,
}

/// Id of the augmentation coordinate in degree 0.
pub const EPS_ID: &str = "ε";

pub fn coordinate_id(a: &BasisId, c: &BasisId) -> BasisId {
    BasisId::from(format!("[{a}→{c}]"))
}

/// A graded map of degree `n` with its components `fₘ`, plus `εf` in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomElement {
    pub degree: usize,
    /// `components[a] = f(a)` for source basis elements `a`; absent means 0.
    pub components: BTreeMap<BasisId, ChainVector>,
    pub eps: Option<BigInt>,
}

impl HomElement {
    /// Image of a chain of `K` under `f`.
    pub fn apply(&self, x: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(x.degree() + self.degree);
        for (a, c) in x.iter() {
            if let Some(img) = self.components.get(a) {
                out.add_scaled(c, img);
            }
        }
        out
    }
}

#[derive(Debug)]
struct Layout {
    source: AugmentedComplex,
    target: AugmentedComplex,
    coords: BTreeMap<BasisId, (BasisId, BasisId)>,
}

impl Layout {
    fn element(&self, v: &ChainVector) -> HomElement {
        let mut components: BTreeMap<BasisId, ChainVector> = BTreeMap::new();
        let mut eps = if v.degree() == 0 { Some(BigInt::zero()) } else { None };
        for (id, coeff) in v.iter() {
            if id.as_str() == EPS_ID {
                eps = Some(coeff.clone());
                continue;
            }
            let (a, c) = &self.coords[id];
            let deg = self.target.degree_of(c).unwrap();
            components
                .entry(a.clone())
                .or_insert_with(|| ChainVector::zero(deg))
                .add_term(c.clone(), coeff);
        }
        components.retain(|_, img| !img.is_zero());
        HomElement {
            degree: v.degree(),
            components,
            eps,
        }
    }

    fn is_augmented_chain_map(&self, f: &HomElement) -> bool {
        let eps = f.eps.clone().unwrap_or_default();
        for a in self.source.elements() {
            let x = ChainVector::basis(a.degree, a.id.clone());
            let fx = f.apply(&x);
            if a.degree == 0 {
                let lhs = self.target.augment(&fx).expect("image lies in the target");
                let rhs = &eps * self.source.augmentation(&a.id).unwrap();
                if lhs != rhs {
                    return false;
                }
            } else {
                let d_fx = if fx.degree() == 0 {
                    ChainVector::zero(0)
                } else {
                    self.target.boundary_of(&fx).expect("image lies in the target")
                };
                let f_dx = f.apply(self.source.boundary(&a.id).unwrap());
                if d_fx != f_dx {
                    return false;
                }
            }
        }
        true
    }
}

impl MembershipPredicate for Layout {
    fn in_group(&self, v: &ChainVector) -> bool {
        v.degree() != 0 || self.is_augmented_chain_map(&self.element(v))
    }

    fn in_submonoid(&self, v: &ChainVector) -> bool {
        v.iter().all(|(id, c)| id.as_str() == EPS_ID || !c.is_negative()) && self.in_group(v)
    }
}

/// An internal hom complex together with its coordinate layout.
#[derive(Clone, Debug)]
pub struct HomComplex {
    complex: AugmentedComplex,
    layout: Arc<Layout>,
    variant: HomVariant,
}

fn sign(negative: bool) -> BigInt {
    if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

impl HomVariant {
    /// Sign on `∂∘fₘ` in `(∂f)ₘ`.
    fn outer_sign(self, m: usize) -> BigInt {
        match self {
            HomVariant::Hom => BigInt::one(),
            HomVariant::HomPrime => sign(m % 2 == 1),
        }
    }

    /// Sign on `fₘ₋₁∘∂` in `(∂f)ₘ`, `m > 0`, for `f` of degree `n`.
    fn inner_sign(self, m: usize, n: usize) -> BigInt {
        match self {
            HomVariant::Hom => sign(n % 2 == 1),
            HomVariant::HomPrime => sign(m % 2 == 1),
        }
    }
}

/// Builds `HOM(k, l)` or `HOM′(k, l)`.
pub fn hom_complex(k: &AugmentedComplex, l: &AugmentedComplex, variant: HomVariant) -> Result<HomComplex, HomError> {
    if !k.is_based() || !l.is_based() {
        return Err(HomError::NotBased);
    }
    let max_k = k.max_degree();
    let max_l = l.max_degree();
    let mut basis = Vec::new();
    let mut coords = BTreeMap::new();
    let mut boundary = BTreeMap::new();
    let mut augmentation = BTreeMap::new();

    if let (Some(_), Some(top)) = (max_k, max_l) {
        for n in 0..=top {
            for a in k.elements() {
                for c in l.basis_in(a.degree + n) {
                    let id = coordinate_id(&a.id, c);
                    basis.push(BasisElement::new(id.clone(), n));
                    coords.insert(id.clone(), (a.id.clone(), c.clone()));
                    if n == 0 {
                        augmentation.insert(id, BigInt::zero());
                        continue;
                    }
                    let m = a.degree;
                    let mut d = ChainVector::zero(n - 1);
                    let outer = variant.outer_sign(m);
                    for (c2, x) in l.boundary(c).unwrap().iter() {
                        d.add_term(coordinate_id(&a.id, c2), &(&outer * x));
                    }
                    // (∂f)ₘ₊₁(a′) picks up −inner · fₘ(∂a′) for every a′ with a in ∂a′
                    let inner = variant.inner_sign(m + 1, n);
                    for a2 in k.basis_in(m + 1) {
                        let x = k.boundary(a2).unwrap().coeff(&a.id);
                        if !x.is_zero() {
                            d.add_term(coordinate_id(a2, c), &(-&inner * &x));
                        }
                    }
                    boundary.insert(id, d);
                }
            }
        }
    }
    basis.push(BasisElement::new(EPS_ID, 0));
    augmentation.insert(BasisId::from(EPS_ID), BigInt::one());

    let layout = Arc::new(Layout {
        source: k.clone(),
        target: l.clone(),
        coords,
    });
    let complex =
        AugmentedComplex::new(basis, boundary, augmentation)?.with_submonoid(Submonoid::Predicate(layout.clone()));
    Ok(HomComplex {
        complex,
        layout,
        variant,
    })
}

pub fn hom(k: &AugmentedComplex, l: &AugmentedComplex) -> Result<HomComplex, HomError> {
    hom_complex(k, l, HomVariant::Hom)
}

pub fn hom_prime(k: &AugmentedComplex, l: &AugmentedComplex) -> Result<HomComplex, HomError> {
    hom_complex(k, l, HomVariant::HomPrime)
}

impl HomComplex {
    pub fn complex(&self) -> &AugmentedComplex {
        &self.complex
    }

    pub fn variant(&self) -> HomVariant {
        self.variant
    }

    pub fn source(&self) -> &AugmentedComplex {
        &self.layout.source
    }

    pub fn target(&self) -> &AugmentedComplex {
        &self.layout.target
    }

    /// Coordinates of `f` in the ambient complex.
    pub fn to_vector(&self, f: &HomElement) -> Result<ChainVector, HomError> {
        let mut v = ChainVector::zero(f.degree);
        for (a, img) in &f.components {
            for (c, x) in img.iter() {
                let id = coordinate_id(a, c);
                match self.complex.degree_of(&id) {
                    Some(d) if d == f.degree => v.add_term(id, x),
                    Some(d) => {
                        return Err(HomError::Degree {
                            expected: f.degree,
                            found: d,
                        })
                    }
                    None => return Err(HomError::UnknownCoordinate(id)),
                }
            }
        }
        if f.degree == 0 {
            if let Some(e) = &f.eps {
                v.add_term(EPS_ID.into(), e);
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &ChainVector) -> Result<HomElement, HomError> {
        self.complex.check_vector(v)?;
        Ok(self.layout.element(v))
    }

    /// Boundary computed directly from the composition formula.
    pub fn boundary_element(&self, f: &HomElement) -> Result<HomElement, HomError> {
        let n = f.degree;
        if n == 0 {
            return Err(HomError::Adc(AdcError::BoundaryOfVertex));
        }
        let (k, l) = (&self.layout.source, &self.layout.target);
        let mut components = BTreeMap::new();
        for a in k.elements() {
            let m = a.degree;
            let x = ChainVector::basis(m, a.id.clone());
            let fx = f.apply(&x);
            let mut out = if fx.is_zero() {
                ChainVector::zero(m + n - 1)
            } else {
                l.boundary_of(&fx)?.scale(&self.variant.outer_sign(m))
            };
            if m > 0 {
                let f_dx = f.apply(k.boundary(&a.id).unwrap());
                out.add_scaled(&-self.variant.inner_sign(m, n), &f_dx);
            }
            if !out.is_zero() {
                components.insert(a.id, out);
            }
        }
        Ok(HomElement {
            degree: n - 1,
            components,
            eps: (n == 1).then(BigInt::zero),
        })
    }

    /// Whether a degree-0 element is an augmentation-compatible chain map.
    pub fn is_chain_map(&self, f: &HomElement) -> bool {
        f.degree == 0 && self.layout.is_augmented_chain_map(f)
    }

    /// Reads a 0-cell of `ν HOM(K, L)` as the morphism it encodes.
    pub fn morphism_of(&self, cell: &Cell) -> Result<Morphism, HomError> {
        if cell.dimension() != 0 {
            return Err(HomError::NotZeroCell);
        }
        let f = self.from_vector(&cell.entry(Sign::Minus, 0))?;
        let images = self
            .layout
            .source
            .elements()
            .map(|a| {
                let img = f
                    .components
                    .get(&a.id)
                    .cloned()
                    .unwrap_or_else(|| ChainVector::zero(a.degree));
                (a.id, img)
            })
            .collect();
        Ok(Morphism { images })
    }
}

/// A morphism of augmented directed complexes, given on basis elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub images: BTreeMap<BasisId, ChainVector>,
}

impl Morphism {
    pub fn apply(&self, x: &ChainVector) -> ChainVector {
        let mut out = ChainVector::zero(x.degree());
        for (a, c) in x.iter() {
            if let Some(img) = self.images.get(a) {
                out.add_scaled(c, img);
            }
        }
        out
    }

    pub fn identity(k: &AugmentedComplex) -> Morphism {
        Morphism {
            images: k
                .elements()
                .map(|b| (b.id.clone(), ChainVector::basis(b.degree, b.id)))
                .collect(),
        }
    }
}

/// Every vector of degree `d` in `l` with coefficients in `0..=bound`.
fn bounded_vectors(l: &AugmentedComplex, d: usize, bound: u32) -> Vec<ChainVector> {
    let ids = l.basis_in(d);
    let mut digits = vec![0u32; ids.len()];
    let mut out = Vec::new();
    loop {
        out.push(ChainVector::from_terms(
            d,
            ids.iter().zip(&digits).map(|(id, &c)| (id.clone(), BigInt::from(c))),
        ));
        let Some(i) = digits.iter().position(|&c| c < bound) else {
            return out;
        };
        digits[i] += 1;
        for c in &mut digits[..i] {
            *c = 0;
        }
    }
}

/// All morphisms `k → l` whose images have coefficients at most `bound`.
///
/// Images are chosen per basis element in order of increasing dimension and
/// filtered by `∂f(b) = f(∂b)` and `εf(b) = εb`. Completeness is relative to
/// `bound`.
pub fn enumerate_morphisms(k: &AugmentedComplex, l: &AugmentedComplex, bound: u32) -> Vec<Morphism> {
    let order: Vec<BasisElement> = k.elements().collect();
    let mut found = Vec::new();
    let mut images = BTreeMap::new();
    let mut candidates: BTreeMap<usize, Vec<ChainVector>> = BTreeMap::new();
    for b in &order {
        candidates
            .entry(b.degree)
            .or_insert_with(|| bounded_vectors(l, b.degree, bound));
    }
    fn go(
        i: usize,
        order: &[BasisElement],
        k: &AugmentedComplex,
        l: &AugmentedComplex,
        candidates: &BTreeMap<usize, Vec<ChainVector>>,
        images: &mut BTreeMap<BasisId, ChainVector>,
        found: &mut Vec<Morphism>,
    ) {
        let Some(b) = order.get(i) else {
            found.push(Morphism { images: images.clone() });
            return;
        };
        for w in &candidates[&b.degree] {
            let ok = if b.degree == 0 {
                l.augment(w).ok().as_ref() == k.augmentation(&b.id)
            } else {
                let partial = Morphism { images: images.clone() };
                let fdb = partial.apply(k.boundary(&b.id).unwrap());
                let dw = if w.is_zero() {
                    ChainVector::zero(b.degree - 1)
                } else {
                    l.boundary_of(w).expect("candidate from target basis")
                };
                dw == fdb
            };
            if ok {
                images.insert(b.id.clone(), w.clone());
                go(i + 1, order, k, l, candidates, images, found);
                images.remove(&b.id);
            }
        }
    }
    go(0, &order, k, l, &candidates, &mut images, &mut found);
    found.sort();
    found
}
