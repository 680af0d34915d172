use std::fmt;

use serde::{Deserialize, Serialize};

use super::parse;
use super::word::Word;
use super::PresentationError;

/// A finite presentation `⟨generators | relators⟩`.
///
/// A generator is an involution exactly when `g^2` occurs among the
/// relators. Those relators are kept verbatim; all other relators are
/// stored freely reduced, with equal adjacent involution letters cancelled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
    involutions: Vec<bool>,
}

/// Edge label of a string Coxeter diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxeterLabel {
    Finite(u32),
    Infinite,
}

impl From<u32> for CoxeterLabel {
    fn from(p: u32) -> Self {
        CoxeterLabel::Finite(p)
    }
}

pub fn default_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("r{i}")).collect()
}

fn involution_of(raw: &Word) -> Option<usize> {
    match raw.reduced(&[]).letters() {
        [a, b] if a == b => Some(a.generator),
        _ => None,
    }
}

impl Presentation {
    /// Builds a presentation, detecting involutions and normalizing relators.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let count = names.len();
        if count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        for w in &relators {
            if let Some(g) = w.max_generator().filter(|&g| g >= count) {
                return Err(PresentationError::GeneratorOutOfRange { index: g, count });
            }
        }
        let mut involutions = vec![false; count];
        for w in &relators {
            if let Some(g) = involution_of(w) {
                involutions[g] = true;
            }
        }
        let mut normalized = Vec::with_capacity(relators.len());
        for (index, w) in relators.iter().enumerate() {
            let r = match involution_of(w) {
                Some(g) => Word::gens(&[g, g]),
                None => w.reduced(&involutions),
            };
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator { index });
            }
            normalized.push(r);
        }
        Ok(Presentation { names, relators: normalized, involutions })
    }

    pub fn with_default_names(count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        Presentation::new(default_names(count), relators)
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        parse::parse_presentation(text)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn involutions(&self) -> &[bool] {
        &self.involutions
    }

    pub fn is_involution(&self, generator: usize) -> bool {
        self.involutions[generator]
    }

    /// Reduces an arbitrary word using this presentation's involutions.
    pub fn reduce(&self, word: &Word) -> Word {
        word.reduced(&self.involutions)
    }

    /// Serializes to the presentation file format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel {}", r.display_with(&self.names))?;
        }
        Ok(())
    }
}

/// `⟨ρ_0..ρ_{d-1} | ρ_i², (ρ_{i-1}ρ_i)^{p_i}, (ρ_iρ_j)² for |i-j| ≥ 2⟩`.
///
/// Relators come in that order: involutions, the labelled edges, then the
/// commuting pairs in lexicographic order. Infinite labels contribute no relator.
pub fn coxeter_string_presentation(labels: &[CoxeterLabel]) -> Result<Presentation, PresentationError> {
    if labels.is_empty() {
        return Err(PresentationError::RankTooSmall { rank: labels.len() + 1 });
    }
    let d = labels.len() + 1;
    let mut relators: Vec<Word> = (0..d).map(|i| Word::gens(&[i, i])).collect();
    for (i, label) in labels.iter().enumerate() {
        match *label {
            CoxeterLabel::Finite(p) if p < 2 => {
                return Err(PresentationError::InvalidLabel { position: i + 1, label: p });
            }
            CoxeterLabel::Finite(p) => relators.push(Word::gens(&[i, i + 1]).pow(p as i64)),
            CoxeterLabel::Infinite => {}
        }
    }
    for i in 0..d {
        for j in i + 2..d {
            relators.push(Word::gens(&[i, j]).pow(2));
        }
    }
    Presentation::with_default_names(d, relators)
}

/// Convenience wrapper for all-finite labels.
pub fn coxeter_string(labels: &[u32]) -> Result<Presentation, PresentationError> {
    let labels: Vec<CoxeterLabel> = labels.iter().map(|&p| CoxeterLabel::Finite(p)).collect();
    coxeter_string_presentation(&labels)
}

impl Presentation {
    /// Returns a copy with additional relators appended.
    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self, PresentationError> {
        let mut relators = self.relators.clone();
        relators.extend(extra);
        Presentation::new(self.names.clone(), relators)
    }
}
