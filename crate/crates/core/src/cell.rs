//! Cells as double sequences of chains, with the ω-category operations.
//!
//! A [`Cell`] stores `(x⁻₀, x⁺₀, x⁻₁, x⁺₁, …)` with trailing zero pairs
//! trimmed. Every cell satisfies `x⁺ₙ − x⁻ₙ = ∂x⁻ₙ₊₁ = ∂x⁺ₙ₊₁`; cells whose
//! entries all lie in the distinguished submonoids and whose degree-0 entries
//! have augmentation 1 additionally carry the `nu` flag. Source/target and
//! composition only touch the sequences, so they do not need the complex.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use thiserror::Error;

use crate::chain::{BasisId, ChainVector, Sign};
use crate::complex::{AdcError, AugmentedComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("minus and plus sequences have lengths {minus} and {plus}")]
    LengthMismatch { minus: usize, plus: usize },
    #[error("entry x{sign}{index} has degree {found}")]
    EntryDegree { sign: Sign, index: usize, found: usize },
    #[error("boundary identity fails at degree {degree}: ∂x{sign}{} ≠ x+{degree} − x-{degree}", degree + 1)]
    Boundary { degree: usize, sign: Sign },
    #[error("top entries differ at degree {0}: x-{0} ≠ x+{0}")]
    TopMismatch(usize),
    #[error("entry x{sign}{degree} is not in the distinguished submonoid")]
    NotInSubmonoid { degree: usize, sign: Sign },
    #[error("entry x{sign}{degree} is not in the chain group")]
    NotInGroup { degree: usize, sign: Sign },
    #[error("augmentation of x{sign}0 is {value}, expected 1")]
    Augmentation { sign: Sign, value: String },
    #[error("not composable at level {level}: d+ of the left and d- of the right differ at degree {degree}")]
    NotComposable { level: usize, degree: usize },
    #[error("cell of dimension {dimension} has no class in degree {n}")]
    DimensionTooLarge { dimension: usize, n: usize },
    #[error("unknown basis element {0}")]
    UnknownBasis(BasisId),
    #[error(transparent)]
    Adc(#[from] AdcError),
}

/// Element of the ω-category of double sequences on a chain complex.
#[derive(Clone)]
pub struct Cell {
    minus: Vec<ChainVector>,
    plus: Vec<ChainVector>,
    nu: bool,
}

// Identity is the sequence pair; the flag is derived data.
impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.minus == other.minus && self.plus == other.plus
    }
}

impl Eq for Cell {}

impl Hash for Cell {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.minus.hash(state);
        self.plus.hash(state);
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.minus
            .len()
            .cmp(&other.minus.len())
            .then_with(|| self.minus.cmp(&other.minus))
            .then_with(|| self.plus.cmp(&other.plus))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if !self.nu {
            f.write_str("μ")?;
        }
        Ok(())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (m, p)) in self.minus.iter().zip(&self.plus).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}, {p}")?;
        }
        f.write_str(")")
    }
}

impl Cell {
    /// Zero cell of the μ-construction.
    pub fn zero() -> Self {
        Cell {
            minus: Vec::new(),
            plus: Vec::new(),
            nu: false,
        }
    }

    /// Builds a cell without checking the boundary identities.
    ///
    /// Entries must carry their index as degree. Use [`validate_cell`] for
    /// untrusted input.
    pub(crate) fn from_parts(minus: Vec<ChainVector>, plus: Vec<ChainVector>, nu: bool) -> Self {
        let mut c = Cell { minus, plus, nu };
        c.trim();
        c
    }

    fn trim(&mut self) {
        let len = self.minus.len().max(self.plus.len());
        for (side, n) in [(&mut self.minus, len), (&mut self.plus, len)] {
            while side.len() < n {
                let d = side.len();
                side.push(ChainVector::zero(d));
            }
        }
        while self.minus.last().is_some_and(ChainVector::is_zero) && self.plus.last().is_some_and(ChainVector::is_zero)
        {
            self.minus.pop();
            self.plus.pop();
        }
    }

    /// True when the cell is known to lie in the ν-construction.
    pub fn is_nu(&self) -> bool {
        self.nu
    }

    /// Number of stored degrees (one past the top nonzero degree).
    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.is_empty()
    }

    /// `xᵅₙ`, zero beyond the stored range.
    pub fn entry(&self, sign: Sign, n: usize) -> ChainVector {
        self.entry_ref(sign, n).cloned().unwrap_or_else(|| ChainVector::zero(n))
    }

    pub fn entry_ref(&self, sign: Sign, n: usize) -> Option<&ChainVector> {
        match sign {
            Sign::Minus => self.minus.get(n),
            Sign::Plus => self.plus.get(n),
        }
    }

    pub fn minus(&self) -> &[ChainVector] {
        &self.minus
    }

    pub fn plus(&self) -> &[ChainVector] {
        &self.plus
    }

    /// Least `n` with all entries above `n` zero.
    pub fn dimension(&self) -> usize {
        self.minus.len().saturating_sub(1)
    }

    /// `dᵅₙx`: keeps degrees below `n`, repeats `xᵅₙ` at `n`, drops the rest.
    pub fn d(&self, sign: Sign, n: usize) -> Cell {
        if n >= self.len() {
            return self.clone();
        }
        let mut minus = self.minus[..n].to_vec();
        let mut plus = self.plus[..n].to_vec();
        let top = self.entry(sign, n);
        minus.push(top.clone());
        plus.push(top);
        Cell::from_parts(minus, plus, self.nu)
    }

    /// `x #ₙ y = x − z + y` where `z = d⁺ₙx = d⁻ₙy`.
    pub fn compose(&self, n: usize, other: &Cell) -> Result<Cell, CellError> {
        let z = self.d(Sign::Plus, n);
        let w = other.d(Sign::Minus, n);
        if z != w {
            let len = z.len().max(w.len());
            let degree = (0..len)
                .find(|&i| {
                    z.entry_ref(Sign::Minus, i) != w.entry_ref(Sign::Minus, i)
                        || z.entry_ref(Sign::Plus, i) != w.entry_ref(Sign::Plus, i)
                })
                .unwrap_or(0);
            return Err(CellError::NotComposable { level: n, degree });
        }
        let mut out = &(self - &z) + other;
        out.nu = self.nu && other.nu;
        Ok(out)
    }

    /// Composes a nonempty list of cells at level `n`, left to right.
    pub fn compose_all<'a>(n: usize, cells: impl IntoIterator<Item = &'a Cell>) -> Result<Cell, CellError> {
        let mut it = cells.into_iter();
        let first = it.next().expect("compose_all needs at least one cell").clone();
        it.try_fold(first, |acc, c| acc.compose(n, c))
    }

    /// The class of `x` in degree `n`: the common value `x⁻ₙ = x⁺ₙ`.
    pub fn pi_class(&self, n: usize) -> Result<ChainVector, CellError> {
        if self.dimension() > n {
            return Err(CellError::DimensionTooLarge {
                dimension: self.dimension(),
                n,
            });
        }
        let v = self.entry(Sign::Minus, n);
        debug_assert_eq!(v, self.entry(Sign::Plus, n));
        Ok(v)
    }

    /// Rebuilds the cell from the classes of its iterated sources and targets.
    pub fn eta(&self) -> Result<Cell, CellError> {
        let mut minus = Vec::with_capacity(self.len());
        let mut plus = Vec::with_capacity(self.len());
        for n in 0..self.len() {
            minus.push(self.d(Sign::Minus, n).pi_class(n)?);
            plus.push(self.d(Sign::Plus, n).pi_class(n)?);
        }
        Ok(Cell::from_parts(minus, plus, self.nu))
    }

    fn zip_with(&self, other: &Cell, f: impl Fn(&ChainVector, &ChainVector) -> ChainVector) -> Cell {
        let len = self.len().max(other.len());
        let side = |s: Sign| {
            (0..len)
                .map(|n| f(&self.entry(s, n), &other.entry(s, n)))
                .collect::<Vec<_>>()
        };
        Cell::from_parts(side(Sign::Minus), side(Sign::Plus), false)
    }
}

impl Add for &Cell {
    type Output = Cell;
    fn add(self, rhs: &Cell) -> Cell {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Cell {
    type Output = Cell;
    fn sub(self, rhs: &Cell) -> Cell {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Cell {
    type Output = Cell;
    fn neg(self) -> Cell {
        Cell::from_parts(
            self.minus.iter().map(|v| -v).collect(),
            self.plus.iter().map(|v| -v).collect(),
            false,
        )
    }
}

/// Checks the chain identities of a double sequence and decides ν-membership.
///
/// With `require_nu`, failing positivity or augmentation is an error;
/// otherwise the returned cell simply has its flag off.
pub fn validate_cell(
    k: &AugmentedComplex,
    minus: Vec<ChainVector>,
    plus: Vec<ChainVector>,
    require_nu: bool,
) -> Result<Cell, CellError> {
    if minus.len() != plus.len() {
        return Err(CellError::LengthMismatch {
            minus: minus.len(),
            plus: plus.len(),
        });
    }
    for (sign, side) in [(Sign::Minus, &minus), (Sign::Plus, &plus)] {
        for (i, v) in side.iter().enumerate() {
            if v.degree() != i {
                return Err(CellError::EntryDegree {
                    sign,
                    index: i,
                    found: v.degree(),
                });
            }
            k.check_vector(v)?;
            if !k.in_group(v) {
                return Err(CellError::NotInGroup { degree: i, sign });
            }
        }
    }
    let cell = Cell::from_parts(minus, plus, false);
    for n in 0..cell.len() {
        let diff = &cell.entry(Sign::Plus, n) - &cell.entry(Sign::Minus, n);
        for sign in Sign::BOTH {
            let above = cell.entry(sign, n + 1);
            let b = if above.is_zero() {
                ChainVector::zero(n)
            } else {
                k.boundary_of(&above)?
            };
            if b != diff {
                if n + 1 == cell.len() {
                    return Err(CellError::TopMismatch(n));
                }
                return Err(CellError::Boundary { degree: n, sign });
            }
        }
    }
    match nu_failure(k, &cell)? {
        None => Ok(Cell { nu: true, ..cell }),
        Some(e) if require_nu => Err(e),
        Some(_) => Ok(cell),
    }
}

fn nu_failure(k: &AugmentedComplex, cell: &Cell) -> Result<Option<CellError>, CellError> {
    for n in 0..cell.len() {
        for sign in Sign::BOTH {
            if !k.in_submonoid(&cell.entry(sign, n)) {
                return Ok(Some(CellError::NotInSubmonoid { degree: n, sign }));
            }
        }
    }
    for sign in Sign::BOTH {
        let value = k.augment(&cell.entry(sign, 0))?;
        if !value.is_one() {
            return Ok(Some(CellError::Augmentation {
                sign,
                value: value.to_string(),
            }));
        }
    }
    Ok(None)
}

/// Whether `cell` lies in the ν-construction of `k` (recomputed, ignoring the flag).
pub fn is_nu_cell(k: &AugmentedComplex, cell: &Cell) -> bool {
    validate_cell(k, cell.minus.clone(), cell.plus.clone(), true).is_ok()
}

/// The atom `⟨b⟩` as a cell; the ν flag reflects its augmented endpoints.
pub fn atom_cell(k: &AugmentedComplex, b: &BasisId) -> Result<Cell, CellError> {
    let atom = k.atoms()?.get(b).ok_or_else(|| CellError::UnknownBasis(b.clone()))?;
    let n = atom.degree();
    let minus = (0..=n).map(|i| atom.part(Sign::Minus, i)).collect();
    let plus = (0..=n).map(|i| atom.part(Sign::Plus, i)).collect();
    let mut cell = Cell::from_parts(minus, plus, false);
    cell.nu = nu_failure(k, &cell)?.is_none();
    Ok(cell)
}

/// Splitting of `x ↦ xᵅₙ`: `(w, w)` in degree 0, else `(0, …, 0, ∂w, w, w)`.
pub fn mu_section(k: &AugmentedComplex, w: &ChainVector) -> Result<Cell, CellError> {
    k.check_vector(w)?;
    let n = w.degree();
    if n == 0 {
        return Ok(Cell::from_parts(vec![w.clone()], vec![w.clone()], false));
    }
    let mut minus: Vec<ChainVector> = (0..n).map(ChainVector::zero).collect();
    let mut plus = minus.clone();
    plus[n - 1] = k.boundary_of(w)?;
    minus.push(w.clone());
    plus.push(w.clone());
    Ok(Cell::from_parts(minus, plus, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{globe, simplex};
    use num_bigint::BigInt;

    fn v(n: usize, terms: &[(&str, i64)]) -> ChainVector {
        ChainVector::from_terms(n, terms.iter().map(|&(k, c)| (k, c)))
    }

    fn atom(k: &AugmentedComplex, id: &str) -> Cell {
        atom_cell(k, &BasisId::from(id)).unwrap()
    }

    #[test]
    fn triangle_atom_cell() {
        let k = simplex(2);
        let t = atom(&k, "012");
        assert!(t.is_nu());
        assert_eq!(t.minus(), &[v(0, &[("0", 1)]), v(1, &[("02", 1)]), v(2, &[("012", 1)])]);
        assert_eq!(
            t.plus(),
            &[v(0, &[("2", 1)]), v(1, &[("01", 1), ("12", 1)]), v(2, &[("012", 1)])]
        );
        assert_eq!(t.dimension(), 2);
        let p = atom(&k, "1");
        assert_eq!(p.minus(), p.plus());
        assert_eq!(p.dimension(), 0);
    }

    #[test]
    fn non_unital_vertex_atom_is_mu_only() {
        let k = crate::complex::ComplexBuilder::new()
            .element("b", 0)
            .augmentation("b", 2)
            .build()
            .unwrap();
        assert!(!atom(&k, "b").is_nu());
        assert!(matches!(atom_cell(&k, &"zz".into()), Err(CellError::UnknownBasis(_))));
    }

    #[test]
    fn sources_and_targets() {
        let k = simplex(2);
        let t = atom(&k, "012");
        assert_eq!(t.d(Sign::Minus, 1), atom(&k, "02"));
        let target = t.d(Sign::Plus, 1);
        assert_eq!(target.minus(), &[v(0, &[("0", 1)]), v(1, &[("01", 1), ("12", 1)])]);
        assert_eq!(target.plus(), &[v(0, &[("2", 1)]), v(1, &[("01", 1), ("12", 1)])]);
        for n in 2..5 {
            assert_eq!(t.d(Sign::Plus, n), t);
        }
    }

    #[test]
    fn composition() {
        let k = simplex(2);
        let (a, b) = (atom(&k, "01"), atom(&k, "12"));
        let ab = a.compose(0, &b).unwrap();
        assert_eq!(ab, atom(&k, "012").d(Sign::Plus, 1));
        assert!(ab.is_nu());
        assert_eq!(a.d(Sign::Minus, 0).compose(0, &a).unwrap(), a);
        assert_eq!(a.compose(0, &a.d(Sign::Plus, 0)).unwrap(), a);
        assert_eq!(a.compose(0, &a), Err(CellError::NotComposable { level: 0, degree: 0 }));
    }

    #[test]
    fn validation_reports() {
        let k = simplex(2);
        let bad = validate_cell(
            &k,
            vec![v(0, &[("0", 1)]), v(1, &[("01", 1)])],
            vec![v(0, &[("2", 1)]), v(1, &[("01", 1)])],
            false,
        );
        assert!(matches!(bad, Err(CellError::Boundary { degree: 0, .. })));

        let doubled = validate_cell(&k, vec![v(0, &[("0", 2)])], vec![v(0, &[("0", 2)])], false).unwrap();
        assert!(!doubled.is_nu());
        let err = validate_cell(&k, vec![v(0, &[("0", 2)])], vec![v(0, &[("0", 2)])], true).unwrap_err();
        assert_eq!(
            err,
            CellError::Augmentation {
                sign: Sign::Minus,
                value: "2".into()
            }
        );

        let t = atom(&k, "012");
        let ok = validate_cell(&k, t.minus().to_vec(), t.plus().to_vec(), true).unwrap();
        assert!(ok.is_nu());
        assert_eq!(ok, t);

        let top = validate_cell(
            &k,
            vec![v(0, &[("0", 1)]), v(1, &[("01", 1)])],
            vec![v(0, &[("1", 1)]), v(1, &[("01", 1), ("12", 1)])],
            false,
        );
        assert!(top.is_err());
    }

    #[test]
    fn classes_and_unit() {
        let k = simplex(2);
        let t = atom(&k, "012");
        assert_eq!(t.pi_class(2).unwrap(), v(2, &[("012", 1)]));
        assert!(t.pi_class(1).is_err());
        assert_eq!(t.d(Sign::Plus, 1).pi_class(1).unwrap(), v(1, &[("01", 1), ("12", 1)]));
        assert_eq!(t.eta().unwrap(), t);
        let ab = atom(&k, "01").compose(0, &atom(&k, "12")).unwrap();
        assert_eq!(ab.eta().unwrap(), ab);
    }

    #[test]
    fn section_formula() {
        let k = simplex(1);
        let w0 = v(0, &[("0", 1)]);
        let s0 = mu_section(&k, &w0).unwrap();
        assert_eq!((s0.minus(), s0.plus()), (&[w0.clone()][..], &[w0][..]));

        let w = v(1, &[("01", 1)]);
        let s = mu_section(&k, &w).unwrap();
        assert_eq!(s.entry(Sign::Minus, 0), ChainVector::zero(0));
        assert_eq!(s.entry(Sign::Plus, 0), v(0, &[("1", 1), ("0", -1)]));
        assert_eq!(s.entry(Sign::Minus, 1), w);
        assert_eq!(s.entry(Sign::Plus, 1), w);
        validate_cell(&k, s.minus().to_vec(), s.plus().to_vec(), false).unwrap();

        let g = globe(2);
        let w2 = ChainVector::from_terms(2, [("2", BigInt::from(-3))]);
        let s2 = mu_section(&g, &w2).unwrap();
        assert_eq!(s2.pi_class(2).unwrap(), w2);
    }

    #[test]
    fn cell_arithmetic_roundtrip() {
        let k = simplex(2);
        let t = atom(&k, "012");
        let a = atom(&k, "01");
        assert_eq!(&(&t + &a) - &a, t);
        assert_eq!(&t + &-&t, Cell::zero());
    }
}
