use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator index together with an exponent sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word in the generators of a presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Word made of positive letters, e.g. `Word::gens(&[0, 1])` is `r0 r1`.
    pub fn gens(indices: &[usize]) -> Self {
        Word { letters: indices.iter().map(|&g| Letter::new(g)).collect() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// `self^k`; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Free reduction. Letters of generators flagged in `involutions` are
    /// first made positive, and equal adjacent involution letters cancel.
    pub fn reduced(&self, involutions: &[bool]) -> Word {
        let is_inv = |g: usize| involutions.get(g).copied().unwrap_or(false);
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let l = if is_inv(l.generator) { Letter::new(l.generator) } else { l };
            match out.last() {
                Some(&top)
                    if top.generator == l.generator
                        && (top.inverse != l.inverse || is_inv(l.generator)) =>
                {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self, involutions: &[bool]) -> bool {
        self.reduced(involutions) == *self
    }

    /// Smallest `(u, k)` with `self = u^k`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.letters.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (p..n).all(|i| self.letters[i] == self.letters[i - p]) {
                return (Word { letters: self.letters[..p].to_vec() }, n / p);
            }
        }
        (self.clone(), 1)
    }

    /// Render with generator names; powers of a primitive word are folded to `(u)^k`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl WordDisplay<'_> {
    fn write_plain(&self, f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.names[l.generator])?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (root, k) = self.word.primitive_root();
        if k == 1 {
            return self.write_plain(f, self.word.letters());
        }
        match root.letters() {
            [l] => {
                f.write_str(&self.names[l.generator])?;
                if l.inverse {
                    write!(f, "^-{k}")
                } else {
                    write!(f, "^{k}")
                }
            }
            letters => {
                f.write_str("(")?;
                self.write_plain(f, letters)?;
                write!(f, ")^{k}")
            }
        }
    }
}
