//! Generators for the standard example families and the tensor product.
//!
//! * [`simplex`]: chains on the standard simplex, basis elements are strictly
//!   increasing vertex tuples written as digit strings (`"012"`).
//! * [`from_dimension_sequence`]: a totally ordered basis where each element's
//!   boundary is the first following minus the last preceding element one
//!   dimension down. Globes and their composable-tuple variants are built this
//!   way; ids are zero-padded positions.
//! * [`tensor`] and [`cube`]: products of based complexes, ids `"a⊗b"`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::chain::{BasisElement, BasisId, ChainVector};
use crate::complex::{AdcError, AugmentedComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid dimension sequence {seq:?}: {reason}")]
    InvalidSequence { seq: Vec<usize>, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("tensor factors must be based complexes")]
    NotBased,
    #[error("not a strong loop-freeness witness: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Adc(#[from] AdcError),
}

fn vertex_label(v: usize, p: usize) -> String {
    if p < 10 {
        v.to_string()
    } else {
        format!("{v},")
    }
}

fn tuple_id(vs: &[usize], p: usize) -> BasisId {
    let s: String = vs.iter().map(|&v| vertex_label(v, p)).collect();
    BasisId::from(s.trim_end_matches(',').to_string())
}

/// The chain complex of the standard `p`-simplex.
pub fn simplex(p: usize) -> AugmentedComplex {
    let mut basis = Vec::new();
    let mut boundary = BTreeMap::new();
    let mut augmentation = BTreeMap::new();
    for mask in 1u64..(1u64 << (p + 1)) {
        let vs: Vec<usize> = (0..=p).filter(|i| mask & (1 << i) != 0).collect();
        let id = tuple_id(&vs, p);
        let n = vs.len() - 1;
        basis.push(BasisElement::new(id.clone(), n));
        if n == 0 {
            augmentation.insert(id, BigInt::from(1));
        } else {
            let faces = (0..=n).map(|i| {
                let mut face = vs.clone();
                face.remove(i);
                (tuple_id(&face, p), if i % 2 == 0 { 1 } else { -1 })
            });
            boundary.insert(id, ChainVector::from_terms(n - 1, faces));
        }
    }
    AugmentedComplex::new(basis, boundary, augmentation).expect("simplex is well formed")
}

/// Dimensions of a totally ordered basis: starts and ends at 0, steps by 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSequence(Vec<usize>);

impl DimensionSequence {
    pub fn new(dims: Vec<usize>) -> Result<Self, ConstructionError> {
        let fail = |reason: &str| ConstructionError::InvalidSequence {
            seq: dims.clone(),
            reason: reason.to_string(),
        };
        if dims.is_empty() {
            return Err(fail("empty"));
        }
        if dims[0] != 0 || *dims.last().unwrap() != 0 {
            return Err(fail("first and last entries must be 0"));
        }
        if dims.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(fail("adjacent entries must differ by exactly 1"));
        }
        Ok(DimensionSequence(dims))
    }

    /// Walks from 0 through each target in turn, one dimension per step.
    pub fn through(targets: &[usize]) -> Result<Self, ConstructionError> {
        let mut dims = vec![0];
        for &t in targets {
            let mut cur = *dims.last().unwrap();
            while cur != t {
                cur = if cur < t { cur + 1 } else { cur - 1 };
                dims.push(cur);
            }
        }
        DimensionSequence::new(dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }
}

/// Complex whose basis is the positions of `seq`, with `∂b = δ⁺b − δ⁻b`.
pub fn from_dimension_sequence(seq: &DimensionSequence) -> AugmentedComplex {
    let dims = seq.dims();
    let width = (dims.len() - 1).to_string().len();
    let id = |i: usize| BasisId::from(format!("{i:0width$}"));
    let mut basis = Vec::new();
    let mut boundary = BTreeMap::new();
    let mut augmentation = BTreeMap::new();
    for (i, &d) in dims.iter().enumerate() {
        basis.push(BasisElement::new(id(i), d));
        if d == 0 {
            augmentation.insert(id(i), BigInt::from(1));
            continue;
        }
        let before = (0..i).rev().find(|&j| dims[j] == d - 1).expect("sequence starts at 0");
        let after = (i + 1..dims.len())
            .find(|&j| dims[j] == d - 1)
            .expect("sequence ends at 0");
        boundary.insert(
            id(i),
            ChainVector::from_terms(d - 1, [(id(after), 1), (id(before), -1)]),
        );
    }
    AugmentedComplex::new(basis, boundary, augmentation).expect("dimension sequence is well formed")
}

/// The `p`-dimensional globe `G[p]`.
pub fn globe(p: usize) -> AugmentedComplex {
    from_dimension_sequence(&DimensionSequence::through(&[p, 0]).expect("valid profile"))
}

/// `G[p;n]`: a `#ₙ`-composable pair of `p`-cells.
pub fn composable_pair(p: usize, n: usize) -> AugmentedComplex {
    let k = p.min(n);
    from_dimension_sequence(&DimensionSequence::through(&[p, k, p, 0]).expect("valid profile"))
}

/// `G[p;n,n]`: a `#ₙ`-composable triple of `p`-cells.
pub fn composable_triple(p: usize, n: usize) -> AugmentedComplex {
    let k = p.min(n);
    from_dimension_sequence(&DimensionSequence::through(&[p, k, p, k, p, 0]).expect("valid profile"))
}

/// `G[p;n,m,n]` for `m < n`: the configuration `(x #ₙ y) #ₘ (x′ #ₙ y′)`.
pub fn interchange_quad(p: usize, n: usize, m: usize) -> Result<AugmentedComplex, ConstructionError> {
    if m >= n {
        return Err(ConstructionError::InvalidParameters(format!(
            "interchange_quad needs m < n, got m = {m}, n = {n}"
        )));
    }
    let (kn, km) = (p.min(n), p.min(m));
    let seq = DimensionSequence::through(&[p, kn, p, km, p, kn, p, 0])?;
    Ok(from_dimension_sequence(&seq))
}

pub fn tensor_id(a: &BasisId, b: &BasisId) -> BasisId {
    BasisId::from(format!("{a}⊗{b}"))
}

/// Tensor product with `∂(a⊗b) = ∂a⊗b + (−1)^|a| a⊗∂b`.
pub fn tensor(k: &AugmentedComplex, l: &AugmentedComplex) -> Result<AugmentedComplex, ConstructionError> {
    if !k.is_based() || !l.is_based() {
        return Err(ConstructionError::NotBased);
    }
    let mut basis = Vec::new();
    let mut boundary = BTreeMap::new();
    let mut augmentation = BTreeMap::new();
    for a in k.elements() {
        for b in l.elements() {
            let id = tensor_id(&a.id, &b.id);
            let n = a.degree + b.degree;
            basis.push(BasisElement::new(id.clone(), n));
            if n == 0 {
                let e = k.augmentation(&a.id).unwrap() * l.augmentation(&b.id).unwrap();
                augmentation.insert(id, e);
                continue;
            }
            let mut d = ChainVector::zero(n - 1);
            if let Some(da) = k.boundary(&a.id) {
                for (c, coeff) in da.iter() {
                    d.add_term(tensor_id(c, &b.id), coeff);
                }
            }
            if let Some(db) = l.boundary(&b.id) {
                let sign = BigInt::from(if a.degree % 2 == 0 { 1 } else { -1 });
                for (c, coeff) in db.iter() {
                    d.add_term(tensor_id(&a.id, c), &(&sign * coeff));
                }
            }
            boundary.insert(id, d);
        }
    }
    Ok(AugmentedComplex::new(basis, boundary, augmentation)?)
}

/// The `p`-cube, the `p`-fold tensor power of `G[1]`.
pub fn cube(p: usize) -> AugmentedComplex {
    let g1 = globe(1);
    let mut acc = if p == 0 { globe(0) } else { g1.clone() };
    for _ in 1..p {
        acc = tensor(&acc, &g1).expect("globes are based");
    }
    acc
}

fn check_witness(k: &AugmentedComplex, order: &[BasisId]) -> Result<BTreeMap<BasisId, usize>, ConstructionError> {
    let pos: BTreeMap<BasisId, usize> = order.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    if pos.len() != order.len() || pos.len() != k.len() || order.iter().any(|b| !k.contains(b)) {
        return Err(ConstructionError::InvalidWitness(
            "order is not a permutation of the basis".into(),
        ));
    }
    for (a, b) in k.strong_relation()? {
        if pos[&a] >= pos[&b] {
            return Err(ConstructionError::InvalidWitness(format!(
                "forced pair {a} < {b} is violated"
            )));
        }
    }
    Ok(pos)
}

/// Combines strong loop-freeness witnesses of `k` and `l` into one for
/// `tensor(k, l)`: compare first factors, then second factors, reversed when
/// the shared first factor has odd dimension.
pub fn tensor_order_witness(
    k: &AugmentedComplex,
    l: &AugmentedComplex,
    order_k: &[BasisId],
    order_l: &[BasisId],
) -> Result<Vec<BasisId>, ConstructionError> {
    let pos_k = check_witness(k, order_k)?;
    let pos_l = check_witness(l, order_l)?;
    let mut pairs: Vec<(BasisElement, BasisId)> = Vec::new();
    for a in k.elements() {
        for b in l.elements() {
            pairs.push((a.clone(), b.id));
        }
    }
    pairs.sort_by(|(a, b), (a2, b2)| match pos_k[&a.id].cmp(&pos_k[&a2.id]) {
        Ordering::Equal if a.degree % 2 == 0 => pos_l[b].cmp(&pos_l[b2]),
        Ordering::Equal => pos_l[b2].cmp(&pos_l[b]),
        other => other,
    });
    let order: Vec<BasisId> = pairs.iter().map(|(a, b)| tensor_id(&a.id, b)).collect();
    check_witness(&tensor(k, l)?, &order)?;
    Ok(order)
}
