//! Finitely presented groups: words, presentations, coset enumeration and
//! the passage to permutation groups.

mod coset;
mod parse;
mod presentation;
mod word;

use thiserror::Error;

pub use coset::{coset_enumerate, CosetTable};
pub use parse::parse_presentation;
pub use presentation::{coxeter_string, coxeter_string_presentation, default_names, CoxeterLabel, Presentation};
pub use word::{Letter, Word};

use crate::permgroup::{Permutation, PermutationGroup};

/// Coset limit used when the caller does not choose one.
pub const DEFAULT_MAX_COSETS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator { name: String, line: usize, column: usize },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("relator {index} is trivial after free reduction")]
    EmptyRelator { index: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("a string diagram needs rank at least 2, got {rank}")]
    RankTooSmall { rank: usize },
    #[error("branch label {label} at position {position} is below 2")]
    InvalidLabel { position: usize, label: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("coset enumeration did not close within {max_cosets} cosets")]
    Exhausted { max_cosets: usize },
    #[error("coset limit must be at least 1")]
    ZeroLimit,
    #[error("subgroup word uses generator {index}, but the presentation has {count}")]
    GeneratorOutOfRange { index: usize, count: usize },
}

/// The action of the group on its own elements (cosets of the trivial
/// subgroup). Generator `i` of the result is the image of generator `i` of
/// the presentation, so distinguished generators keep their positions.
pub fn regular_representation(p: &Presentation, max_cosets: usize) -> Result<PermutationGroup, EnumerationError> {
    let table = coset_enumerate(p, &[], max_cosets)?;
    let gens = (0..table.generator_count())
        .map(|g| Permutation::from_images_unchecked(table.generator_action(g).to_vec()))
        .collect();
    Ok(PermutationGroup::regular_unchecked(table.coset_count(), gens))
}

/// Permutation group generated by the generator columns of a coset table.
pub fn permutation_action(table: &CosetTable) -> PermutationGroup {
    let degree = table.coset_count();
    let gens = (0..table.generator_count())
        .map(|g| Permutation::from_images_unchecked(table.generator_action(g).to_vec()))
        .collect();
    PermutationGroup::new(degree, gens).expect("coset table columns act on the cosets")
}

/// Evaluates `word` with generator `i` sent to `images[i]`.
pub fn evaluate(word: &Word, images: &[Permutation], degree: usize) -> Permutation {
    let mut out = Permutation::identity(degree);
    for l in word.letters() {
        let g = &images[l.generator];
        out = if l.inverse { out.compose(&g.inverse()) } else { out.compose(g) };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_rep_of_square_group() {
        let p = coxeter_string(&[4]).unwrap();
        let g = regular_representation(&p, 100).unwrap();
        assert_eq!(g.degree(), 8);
        assert_eq!(g.order(), 8);
        assert_eq!(g.schreier_sims_order(), 8);
        assert_eq!(g.generators().len(), 2);
    }

    #[test]
    fn relators_evaluate_to_identity() {
        let p = coxeter_string(&[4, 3]).unwrap();
        let g = regular_representation(&p, 1000).unwrap();
        for r in p.relators() {
            assert!(evaluate(r, g.generators(), g.degree()).is_identity());
        }
    }

    #[test]
    fn exhaustion_propagates() {
        let p = coxeter_string(&[4, 4]).unwrap();
        assert!(matches!(regular_representation(&p, 100), Err(EnumerationError::Exhausted { .. })));
    }
}
