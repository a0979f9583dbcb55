//! Factorization of ν-cells into composites of atoms.
//!
//! A cell `x` of dimension `d` is congruent modulo `(μK)ᵣ` to a sum of atoms;
//! [`atom_list_mod`] recovers that list top-down. The decomposition index is
//! the least `r ≥ −1` at which the list modulo `(μK)ᵣ₊₁` has at most one
//! entry. With a loop-free basis, [`decompose_step`] orders the level-`r`
//! list along the level-`r` witness order and splits `x` into an `#ᵣ`
//! composite with one factor per atom; [`decompose_full`] recurses until every
//! factor is an atom.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::cell::{atom_cell, validate_cell, Cell, CellError};
use crate::chain::{BasisId, Sign};
use crate::complex::{AdcError, AugmentedComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("remainder at degree {degree} has a negative coefficient: cell is not in ν of a based complex")]
    NegativeRemainder { degree: usize },
    #[error("minus and plus remainders disagree at degree {degree}")]
    RemainderMismatch { degree: usize },
    #[error("cell is an atom or identity (decomposition index -1)")]
    Indecomposable,
    #[error("basis is not loop-free: level {level} has the cycle {cycle:?}")]
    NotLoopFree { level: usize, cycle: Vec<BasisId> },
    #[error("factor {index} is not a ν-cell: {source}")]
    InvalidFactor { index: usize, source: CellError },
    #[error("malformed composition word at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Adc(#[from] AdcError),
}

/// A pasting expression whose leaves are atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CompositionTree {
    Leaf(BasisId),
    Node {
        level: usize,
        children: Vec<CompositionTree>,
    },
}

impl CompositionTree {
    pub fn evaluate(&self, k: &AugmentedComplex) -> Result<Cell, CellError> {
        match self {
            CompositionTree::Leaf(b) => atom_cell(k, b),
            CompositionTree::Node { level, children } => {
                let cells = children.iter().map(|c| c.evaluate(k)).collect::<Result<Vec<_>, _>>()?;
                Cell::compose_all(*level, &cells)
            }
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<BasisId> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<BasisId>) {
        match self {
            CompositionTree::Leaf(b) => out.push(b.clone()),
            CompositionTree::Node { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Parses the rendering produced by `Display`: `⟨id⟩` leaves, `#r` infix,
    /// parentheses for nested composites. `<id>` is accepted for `⟨id⟩`.
    pub fn parse(text: &str) -> Result<CompositionTree, DecomposeError> {
        let mut p = WordParser { s: text, pos: 0 };
        let tree = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.err("trailing input"));
        }
        Ok(tree)
    }
}

impl fmt::Display for CompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionTree::Leaf(b) => write!(f, "⟨{b}⟩"),
            CompositionTree::Node { level, children } => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " #{level} ")?;
                    }
                    match c {
                        CompositionTree::Leaf(_) => write!(f, "{c}")?,
                        CompositionTree::Node { .. } => write!(f, "({c})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

struct WordParser<'a> {
    s: &'a str,
    pos: usize,
}

impl WordParser<'_> {
    fn err(&self, reason: &str) -> DecomposeError {
        DecomposeError::Parse {
            pos: self.pos,
            reason: reason.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.s.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CompositionTree, DecomposeError> {
        let first = self.term()?;
        let mut children = vec![first];
        let mut level = None;
        while self.eat("#") {
            let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
            if digits.is_empty() {
                return Err(self.err("expected a level after '#'"));
            }
            let r: usize = digits.parse().map_err(|_| self.err("level out of range"))?;
            self.pos += digits.len();
            if level.is_some_and(|l| l != r) {
                return Err(self.err("mixed levels need parentheses"));
            }
            level = Some(r);
            children.push(self.term()?);
        }
        Ok(match level {
            None => children.pop().unwrap(),
            Some(level) => CompositionTree::Node { level, children },
        })
    }

    fn term(&mut self) -> Result<CompositionTree, DecomposeError> {
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(inner);
        }
        for (open, close) in [("⟨", '⟩'), ("<", '>')] {
            if self.eat(open) {
                let end = self.rest().find(close).ok_or_else(|| self.err("unterminated atom"))?;
                let id = &self.rest()[..end];
                if id.is_empty() {
                    return Err(self.err("empty atom id"));
                }
                let leaf = CompositionTree::Leaf(BasisId::from(id));
                self.pos += end + close.len_utf8();
                return Ok(leaf);
            }
        }
        Err(self.err("expected an atom or '('"))
    }
}

/// Multiset `L` of basis elements with `x ≡ Σ_{b∈L} ⟨b⟩ mod (μK)ᵣ`, for `r ≥ −1`.
///
/// Elements are listed top-down by degree, repeated by multiplicity.
pub fn atom_list_mod(k: &AugmentedComplex, x: &Cell, r: isize) -> Result<Vec<BasisId>, DecomposeError> {
    let atoms = k.atoms()?;
    let mut list: Vec<BasisId> = Vec::new();
    let dim = x.dimension();
    let lowest = (r + 1).max(0) as usize;
    if x.is_empty() || (dim as isize) <= r {
        return Ok(list);
    }
    for m in (lowest..=dim).rev() {
        let mut rem_minus = x.entry(Sign::Minus, m);
        let mut rem_plus = x.entry(Sign::Plus, m);
        for b in &list {
            let atom = atoms.get(b).expect("listed ids are basis elements");
            rem_minus.add_scaled(&-BigInt::one(), &atom.part(Sign::Minus, m));
            rem_plus.add_scaled(&-BigInt::one(), &atom.part(Sign::Plus, m));
        }
        if rem_minus != rem_plus {
            return Err(DecomposeError::RemainderMismatch { degree: m });
        }
        if !rem_minus.is_nonnegative() {
            return Err(DecomposeError::NegativeRemainder { degree: m });
        }
        for (id, c) in rem_minus.iter() {
            let times = c.to_usize().expect("multiplicity fits in memory");
            list.extend(std::iter::repeat_n(id.clone(), times));
        }
    }
    Ok(list)
}

/// Least `r ≥ −1` with `x` congruent to zero or a single atom mod `(μK)ᵣ₊₁`.
///
/// Lists grow as the level drops, so the scan runs down from the dimension and
/// stops at the first level with two or more atoms.
pub fn decomposition_index(k: &AugmentedComplex, x: &Cell) -> Result<isize, DecomposeError> {
    for s in (0..=x.dimension() as isize).rev() {
        if atom_list_mod(k, x, s)?.len() > 1 {
            return Ok(s);
        }
    }
    Ok(-1)
}

fn sum_atoms<'a>(k: &AugmentedComplex, ids: impl IntoIterator<Item = &'a BasisId>) -> Result<Cell, DecomposeError> {
    let mut acc = Cell::zero();
    for b in ids {
        acc = &acc + &atom_cell(k, b)?;
    }
    Ok(acc)
}

/// One `#ᵣ` splitting at the decomposition index `r ≥ 0`.
///
/// Returns the factors with the atom each is congruent to modulo `(μK)ᵣ`,
/// ordered along the level-`r` witness order of the basis.
pub fn decompose_step(k: &AugmentedComplex, x: &Cell) -> Result<Vec<(Cell, BasisId)>, DecomposeError> {
    let r = decomposition_index(k, x)?;
    if r < 0 {
        return Err(DecomposeError::Indecomposable);
    }
    let level = r as usize;
    let order = match k.level_order(level)? {
        Ok(o) => o,
        Err(cycle) => return Err(DecomposeError::NotLoopFree { level, cycle }),
    };
    let pos: BTreeMap<&BasisId, usize> = order.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut list = atom_list_mod(k, x, r)?;
    list.sort_by_key(|b| pos[b]);
    let factors = decompose_along(k, x, level, &list)?;
    Ok(factors.into_iter().zip(list).collect())
}

/// Factors `x = x₁ #ᵣ … #ᵣ xₖ` with `xᵢ ≡ ⟨bᵢ⟩ mod (μK)ᵣ` for a given
/// arrangement `b₁, …, bₖ` of the atom list of `x` modulo `(μK)ᵣ`.
///
/// `xᵢ = d⁺ᵣ(⟨b₁⟩ + … + ⟨bᵢ₋₁⟩) + ⟨bᵢ⟩ + d⁻ᵣ(⟨bᵢ₊₁⟩ + … + ⟨bₖ⟩) + z` where
/// `z = x − Σ⟨bⱼ⟩`. Fails when a factor is not a ν-cell, which happens when
/// the arrangement puts some `bⱼ` before a `bᵢ` that must precede it.
pub fn decompose_along(
    k: &AugmentedComplex,
    x: &Cell,
    r: usize,
    order: &[BasisId],
) -> Result<Vec<Cell>, DecomposeError> {
    let total = sum_atoms(k, order)?;
    let z = x - &total;
    let mut factors = Vec::with_capacity(order.len());
    for (i, b) in order.iter().enumerate() {
        let before = sum_atoms(k, &order[..i])?.d(Sign::Plus, r);
        let after = sum_atoms(k, &order[i + 1..])?.d(Sign::Minus, r);
        let raw = &(&(&before + &atom_cell(k, b)?) + &after) + &z;
        let factor = validate_cell(k, raw.minus().to_vec(), raw.plus().to_vec(), true)
            .map_err(|source| DecomposeError::InvalidFactor { index: i, source })?;
        factors.push(factor);
    }
    Ok(factors)
}

/// Full factorization into a tree of atoms.
pub fn decompose_full(k: &AugmentedComplex, x: &Cell) -> Result<CompositionTree, DecomposeError> {
    let r = decomposition_index(k, x)?;
    if r < 0 {
        let list = atom_list_mod(k, x, -1)?;
        return match list.as_slice() {
            [b] => Ok(CompositionTree::Leaf(b.clone())),
            _ => Err(DecomposeError::Indecomposable),
        };
    }
    let children = decompose_step(k, x)?
        .iter()
        .map(|(f, _)| decompose_full(k, f))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CompositionTree::Node {
        level: r as usize,
        children,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{globe, simplex};

    fn atom(k: &AugmentedComplex, id: &str) -> Cell {
        atom_cell(k, &BasisId::from(id)).unwrap()
    }

    fn ids(xs: &[&str]) -> Vec<BasisId> {
        xs.iter().map(|s| BasisId::from(*s)).collect()
    }

    #[test]
    fn atom_lists() {
        let k = simplex(2);
        let t = atom(&k, "012");
        for r in -1..2 {
            assert_eq!(atom_list_mod(&k, &t, r).unwrap(), ids(&["012"]));
        }
        assert!(atom_list_mod(&k, &t, 2).unwrap().is_empty());
        let path = t.d(Sign::Plus, 1);
        assert_eq!(atom_list_mod(&k, &path, 0).unwrap(), ids(&["01", "12"]));
        assert_eq!(
            atom_list_mod(&k, &path, -1),
            Err(DecomposeError::NegativeRemainder { degree: 0 })
        );
    }

    #[test]
    fn indices() {
        let k = simplex(2);
        let t = atom(&k, "012");
        assert_eq!(decomposition_index(&k, &t).unwrap(), -1);
        assert_eq!(decomposition_index(&k, &t.d(Sign::Plus, 1)).unwrap(), 0);
        assert_eq!(decomposition_index(&k, &atom(&k, "1")).unwrap(), -1);
    }

    #[test]
    fn step_on_path() {
        let k = simplex(2);
        let path = atom(&k, "012").d(Sign::Plus, 1);
        let f = decompose_step(&k, &path).unwrap();
        assert_eq!(f, vec![(atom(&k, "01"), "01".into()), (atom(&k, "12"), "12".into())]);
        assert_eq!(
            decompose_step(&k, &atom(&k, "012")),
            Err(DecomposeError::Indecomposable)
        );
    }

    #[test]
    fn step_on_tetrahedron_source() {
        let k = simplex(3);
        let src = atom(&k, "0123").d(Sign::Minus, 2);
        let factors = decompose_step(&k, &src).unwrap();
        let atoms: Vec<BasisId> = factors.iter().map(|(_, b)| b.clone()).collect();
        assert_eq!(atoms.len(), 2);
        let mut sorted = atoms.clone();
        sorted.sort();
        assert_eq!(sorted, ids(&["012", "023"]));
        let cells: Vec<Cell> = factors.into_iter().map(|(c, _)| c).collect();
        assert_eq!(Cell::compose_all(1, &cells).unwrap(), src);
    }

    #[test]
    fn full_decomposition() {
        let k = simplex(2);
        let path = atom(&k, "012").d(Sign::Plus, 1);
        let tree = decompose_full(&k, &path).unwrap();
        assert_eq!(
            tree,
            CompositionTree::Node {
                level: 0,
                children: vec![CompositionTree::Leaf("01".into()), CompositionTree::Leaf("12".into())]
            }
        );
        assert_eq!(tree.to_string(), "⟨01⟩ #0 ⟨12⟩");
        assert_eq!(
            decompose_full(&k, &atom(&k, "012")).unwrap(),
            CompositionTree::Leaf("012".into())
        );
    }

    #[test]
    fn word_parser() {
        let t = CompositionTree::parse("(⟨a⟩ #1 ⟨b⟩) #0 <c>").unwrap();
        assert_eq!(t.to_string(), "(⟨a⟩ #1 ⟨b⟩) #0 ⟨c⟩");
        assert_eq!(CompositionTree::parse(&t.to_string()).unwrap(), t);
        assert!(CompositionTree::parse("⟨a⟩ #1 ⟨b⟩ #0 ⟨c⟩").is_err());
        assert!(CompositionTree::parse("⟨a⟩ #").is_err());
        assert!(CompositionTree::parse("(⟨a⟩").is_err());
        let g = globe(1);
        assert_eq!(
            CompositionTree::parse("⟨1⟩").unwrap().evaluate(&g).unwrap(),
            atom(&g, "1")
        );
    }
}
