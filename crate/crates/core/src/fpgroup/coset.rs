//! HLT coset enumeration with a deduction stack and table compression.

use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::EnumerationError;

const UNDEF: u32 = u32::MAX;
const MAX_DEDUCTIONS: usize = 1 << 16;

/// A closed coset table: the right action of each generator on the cosets
/// of a subgroup, numbered in breadth-first discovery order from coset 0
/// (the subgroup itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    coset_count: usize,
    /// `forward[g][c]` is the coset `c·g`.
    forward: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Coset reached from `coset` by right multiplication with `generator`.
    pub fn image(&self, coset: usize, generator: usize) -> usize {
        self.forward[generator][coset] as usize
    }

    /// The permutation of cosets induced by `generator`.
    pub fn generator_action(&self, generator: usize) -> &[u32] {
        &self.forward[generator]
    }

    pub fn apply_letter(&self, coset: usize, letter: Letter) -> usize {
        if letter.inverse {
            // inverse image: search is linear, only used in checks
            self.forward[letter.generator].iter().position(|&c| c as usize == coset).expect("bijective column")
        } else {
            self.image(coset, letter.generator)
        }
    }

    /// Traces `word` from `coset`.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.apply_letter(c, l))
    }

    /// Whether every generator column is a bijection of the cosets.
    pub fn columns_are_bijections(&self) -> bool {
        self.forward.iter().all(|col| {
            let mut seen = vec![false; self.coset_count];
            col.iter().all(|&c| {
                let c = c as usize;
                c < self.coset_count && !std::mem::replace(&mut seen[c], true)
            })
        })
    }

    /// Whether every relator closes up from every coset.
    pub fn relators_close(&self, p: &Presentation) -> bool {
        p.relators().iter().all(|r| (0..self.coset_count).all(|c| self.trace(c, r) == c))
    }
}

/// Working state of one enumeration.
struct Enumerator {
    ncols: usize,
    /// column used for each (generator, inverse) pair
    col_of: Vec<[usize; 2]>,
    inv_col: Vec<usize>,
    relators: Vec<Vec<usize>>,
    /// cyclic conjugates of relators and their inverses, indexed by first column
    conjugates: Vec<Vec<Vec<usize>>>,
    table: Vec<u32>,
    forward: Vec<u32>,
    alive: usize,
    limit: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, usize)>,
}

#[derive(Debug)]
struct Exhausted;

impl Enumerator {
    fn new(p: &Presentation, limit: usize) -> Self {
        let mut col_of = Vec::with_capacity(p.generator_count());
        let mut inv_col = Vec::new();
        for g in 0..p.generator_count() {
            let c = inv_col.len();
            if p.is_involution(g) {
                inv_col.push(c);
                col_of.push([c, c]);
            } else {
                inv_col.push(c + 1);
                inv_col.push(c);
                col_of.push([c, c + 1]);
            }
        }
        let ncols = inv_col.len();
        let to_cols = |w: &Word| -> Vec<usize> {
            w.letters().iter().map(|l| col_of[l.generator][l.inverse as usize]).collect()
        };
        let relators: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
        let mut conjugates: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ncols];
        for r in &relators {
            let inverse: Vec<usize> = r.iter().rev().map(|&c| inv_col[c]).collect();
            for w in [r, &inverse] {
                for s in 0..w.len() {
                    let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).copied().collect();
                    if !conjugates[rot[0]].contains(&rot) {
                        conjugates[rot[0]].push(rot);
                    }
                }
            }
        }
        Enumerator {
            ncols,
            col_of,
            inv_col,
            relators,
            conjugates,
            table: vec![UNDEF; ncols],
            forward: vec![0],
            alive: 1,
            limit,
            queue: Vec::new(),
            deductions: Vec::new(),
        }
    }

    fn allocated(&self) -> usize {
        self.forward.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        let mut cur = c;
        while self.forward[cur as usize] != root {
            let next = self.forward[cur as usize];
            self.forward[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() < MAX_DEDUCTIONS {
            self.deductions.push((c, x));
        }
    }

    fn assign(&mut self, a: u32, x: usize, b: u32) {
        self.set(a, x, b);
        self.set(b, self.inv_col[x], a);
        self.push_deduction(a, x);
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Exhausted> {
        if self.alive >= self.limit {
            return Err(Exhausted);
        }
        let d = self.allocated() as u32;
        self.forward.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.alive += 1;
        self.assign(c, x, d);
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.forward[drop as usize] = keep;
        self.alive -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let g = self.queue[head];
            head += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                let xi = self.inv_col[x];
                self.set(d, xi, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.get(mu, x) != UNDEF {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, xi) != UNDEF {
                    let t = self.get(nu, xi);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, xi, mu);
                    self.push_deduction(mu, x);
                }
            }
        }
    }

    /// Scans `word` at coset `a`. With `fill`, gaps are closed by defining
    /// new cosets; without, only deductions and coincidences are recorded.
    fn scan(&mut self, a: u32, word: &[usize], fill: bool) -> Result<(), Exhausted> {
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        let mut f = a;
        let mut b = a;
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, self.inv_col[word[j as usize]]) != UNDEF {
                b = self.get(b, self.inv_col[word[j as usize]]);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // a single missing entry is forced
                self.assign(f, word[i as usize], b);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.conjugates[x].len() {
                let w = std::mem::take(&mut self.conjugates[x][k]);
                let _ = self.scan(c, &w, false);
                self.conjugates[x][k] = w;
                if !self.is_live(c) {
                    break;
                }
            }
        }
    }

    /// Renumbers live cosets contiguously; returns the new index of `keep`.
    fn compress(&mut self, keep: u32) -> u32 {
        let n = self.allocated();
        let mut new_index = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.forward[c] == c as u32 {
                new_index[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if new_index[c] == UNDEF {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.table[c * self.ncols + x];
                table.push(if v == UNDEF { UNDEF } else { new_index[v as usize] });
            }
        }
        self.table = table;
        self.forward = (0..next).collect();
        self.deductions.clear();
        // the next coset to process is the first live one at or after `keep`
        (keep as usize..n).map(|c| new_index[c]).find(|&v| v != UNDEF).unwrap_or(next)
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<(), Exhausted> {
        for w in subgroup {
            self.scan(0, w, true)?;
            self.process_deductions();
        }
        let mut a: u32 = 0;
        while (a as usize) < self.allocated() {
            if self.is_live(a) {
                for r in 0..self.relators.len() {
                    let w = std::mem::take(&mut self.relators[r]);
                    let res = self.scan(a, &w, true);
                    self.relators[r] = w;
                    res?;
                    self.process_deductions();
                    if !self.is_live(a) {
                        break;
                    }
                }
                if self.is_live(a) {
                    for x in 0..self.ncols {
                        if self.get(a, x) == UNDEF {
                            self.define(a, x)?;
                            self.process_deductions();
                        }
                        if !self.is_live(a) {
                            break;
                        }
                    }
                }
            }
            a += 1;
            if self.allocated() > 2 * self.alive + 1024 {
                a = self.compress(a);
            }
        }
        Ok(())
    }

    fn into_table(mut self, generator_count: usize) -> CosetTable {
        self.compress(0);
        let n = self.allocated();
        // standardize: breadth-first renumbering from coset 0
        let mut order = vec![UNDEF; n];
        let mut seq: Vec<u32> = vec![0];
        order[0] = 0;
        let mut head = 0;
        while head < seq.len() {
            let c = seq[head];
            head += 1;
            for x in 0..self.ncols {
                let d = self.get(c, x);
                if order[d as usize] == UNDEF {
                    order[d as usize] = seq.len() as u32;
                    seq.push(d);
                }
            }
        }
        debug_assert_eq!(seq.len(), n);
        let forward = (0..generator_count)
            .map(|g| {
                let x = self.col_of[g][0];
                let mut col = vec![0u32; n];
                for old in 0..n as u32 {
                    col[order[old as usize] as usize] = order[self.get(old, x) as usize];
                }
                col
            })
            .collect();
        CosetTable { generator_count, coset_count: n, forward }
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
///
/// Fails with [`EnumerationError::Exhausted`] when more than `max_cosets`
/// cosets would be live at once; that happens for infinite index and for
/// bounds too small for the enumeration to close.
pub fn coset_enumerate(p: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable, EnumerationError> {
    if max_cosets == 0 {
        return Err(EnumerationError::ZeroLimit);
    }
    for w in subgroup {
        if let Some(g) = w.max_generator().filter(|&g| g >= p.generator_count()) {
            return Err(EnumerationError::GeneratorOutOfRange { index: g, count: p.generator_count() });
        }
    }
    let mut e = Enumerator::new(p, max_cosets);
    let sub: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| p.reduce(w).letters().iter().map(|l| e.col_of[l.generator][l.inverse as usize]).collect())
        .collect();
    e.run(&sub).map_err(|_| EnumerationError::Exhausted { max_cosets })?;
    Ok(e.into_table(p.generator_count()))
}
