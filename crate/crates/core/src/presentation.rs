//! Presentations of `νK` by atoms and boundary words.
//!
//! Generators are the basis elements. Every atom is its own top-dimensional
//! source and target, and each positive-dimensional atom has source and target
//! one dimension down written as a composite of lower atoms, obtained from
//! [`decompose_full`].

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cell::atom_cell;
use crate::chain::{BasisElement, BasisId, Sign};
use crate::complex::{AdcError, AugmentedComplex};
use crate::decompose::{decompose_full, CompositionTree, DecomposeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("basis is not unital")]
    NotUnital,
    #[error("basis is not loop-free")]
    NotLoopFree,
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Adc(#[from] AdcError),
}

/// `dᵅ_level ⟨generator⟩ = word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub generator: BasisId,
    pub sign: Sign,
    pub level: usize,
    pub word: CompositionTree,
}

impl Relation {
    /// True for the relations `dᵅ_{|b|}⟨b⟩ = ⟨b⟩`.
    pub fn is_top(&self) -> bool {
        self.word == CompositionTree::Leaf(self.generator.clone())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}{}⟨{}⟩ = {}", self.sign, self.level, self.generator, self.word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<BasisElement>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn relations_for<'a>(&'a self, b: &'a BasisId) -> impl Iterator<Item = &'a Relation> + 'a {
        self.relations.iter().filter(move |r| &r.generator == b)
    }

    pub fn word(&self, b: &BasisId, sign: Sign) -> Option<&CompositionTree> {
        self.relations
            .iter()
            .find(|r| &r.generator == b && r.sign == sign && !r.is_top())
            .map(|r| &r.word)
    }

    /// Generators that are not the whole boundary word of another generator.
    ///
    /// The remaining relations define the other generators as boundaries, so
    /// these alone generate; for a globe this is the single top cell.
    pub fn free_generators(&self) -> Vec<BasisId> {
        let defined: BTreeSet<&BasisId> = self
            .relations
            .iter()
            .filter(|r| !r.is_top())
            .filter_map(|r| match &r.word {
                CompositionTree::Leaf(c) => Some(c),
                CompositionTree::Node { .. } => None,
            })
            .collect();
        self.generators
            .iter()
            .map(|g| &g.id)
            .filter(|g| !defined.contains(g))
            .cloned()
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("⟨{}⟩", g.id)).collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Generators and relations for `νK` on a loop-free unital basis.
pub fn presentation(k: &AugmentedComplex) -> Result<Presentation, PresentationError> {
    if !k.is_unital()? {
        return Err(PresentationError::NotUnital);
    }
    if !k.is_loop_free()? {
        return Err(PresentationError::NotLoopFree);
    }
    let generators: Vec<BasisElement> = k.elements().collect();
    let mut relations = Vec::new();
    for g in &generators {
        for sign in Sign::BOTH {
            relations.push(Relation {
                generator: g.id.clone(),
                sign,
                level: g.degree,
                word: CompositionTree::Leaf(g.id.clone()),
            });
        }
        if g.degree == 0 {
            continue;
        }
        let atom = atom_cell(k, &g.id).map_err(DecomposeError::from)?;
        for sign in Sign::BOTH {
            let face = atom.d(sign, g.degree - 1);
            relations.push(Relation {
                generator: g.id.clone(),
                sign,
                level: g.degree - 1,
                word: decompose_full(k, &face)?,
            });
        }
    }
    Ok(Presentation { generators, relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{composable_pair, globe, simplex};

    #[test]
    fn triangle_words() {
        let p = presentation(&simplex(2)).unwrap();
        let t = BasisId::from("012");
        assert_eq!(p.word(&t, Sign::Minus).unwrap().to_string(), "⟨02⟩");
        assert_eq!(p.word(&t, Sign::Plus).unwrap().to_string(), "⟨01⟩ #0 ⟨12⟩");
    }

    #[test]
    fn interval() {
        let p = presentation(&simplex(1)).unwrap();
        let e = BasisId::from("01");
        assert_eq!(p.word(&e, Sign::Minus), Some(&CompositionTree::Leaf("0".into())));
        assert_eq!(p.word(&e, Sign::Plus), Some(&CompositionTree::Leaf("1".into())));
        assert_eq!(p.free_generators(), vec![e]);
    }

    #[test]
    fn globes_have_one_free_generator() {
        for n in 0..=3 {
            let p = presentation(&globe(n)).unwrap();
            assert_eq!(p.free_generators().len(), 1);
        }
        assert_eq!(presentation(&composable_pair(2, 0)).unwrap().free_generators().len(), 2);
    }

    #[test]
    fn display() {
        let text = presentation(&simplex(1)).unwrap().to_string();
        assert!(text.contains("d-0⟨01⟩ = ⟨0⟩"), "{text}");
        assert!(text.contains("d+1⟨01⟩ = ⟨01⟩"), "{text}");
    }
}
