//! Stabilizer chains (base and strong generating set) with Schreier vectors.

use super::perm::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// One level of a stabilizer chain: the orbit of `base` under the strong
/// generators fixing all earlier base points, stored as a Schreier tree.
#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub base: u32,
    pub gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    /// orbit points in breadth-first order, `orbit[0] == base`
    pub orbit: Vec<u32>,
    parent: Vec<u32>,
    label: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: u32, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            base,
            gens_inv: gens.iter().map(Permutation::inverse).collect(),
            gens,
            orbit: Vec::new(),
            parent: vec![NONE; degree],
            label: vec![NONE; degree],
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        self.parent.fill(NONE);
        self.label.fill(NONE);
        self.orbit.clear();
        self.orbit.push(self.base);
        self.parent[self.base as usize] = ROOT;
        self.label[self.base as usize] = ROOT;
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for (s, g) in self.gens.iter().enumerate() {
                let c = g.apply(b);
                if self.parent[c as usize] == NONE {
                    self.parent[c as usize] = b;
                    self.label[c as usize] = s as u32;
                    self.orbit.push(c);
                }
            }
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        self.rebuild_orbit();
    }

    #[inline]
    pub fn in_orbit(&self, x: u32) -> bool {
        self.parent[x as usize] != NONE
    }

    /// Generator indices along the tree path from the base to `b`.
    pub fn path_to(&self, mut b: u32) -> Vec<usize> {
        let mut path = Vec::new();
        while b != self.base {
            path.push(self.label[b as usize] as usize);
            b = self.parent[b as usize];
        }
        path.reverse();
        path
    }

    /// Image of `x` under the transversal element for orbit point `b`.
    pub fn apply_path(&self, path: &[usize], mut x: u32) -> u32 {
        for &s in path {
            x = self.gens[s].apply(x);
        }
        x
    }

    /// The transversal element mapping the base to `b`.
    pub fn transversal(&self, b: u32) -> Permutation {
        let mut u = Permutation::identity(self.parent.len());
        for s in self.path_to(b) {
            u.compose_in_place(&self.gens[s]);
        }
        u
    }

    /// Replaces `g` by `g·u_b⁻¹` where `b` is the image of the base.
    /// Returns false when that image is outside the orbit.
    fn strip(&self, g: &mut Permutation) -> bool {
        let mut b = g.apply(self.base);
        if !self.in_orbit(b) {
            return false;
        }
        while b != self.base {
            g.compose_in_place(&self.gens_inv[self.label[b as usize] as usize]);
            b = self.parent[b as usize];
        }
        true
    }

    /// Explicit transversal rows in orbit order, `rows[k*n + x] = x^{u_{orbit[k]}}`.
    fn transversal_table(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.parent.len();
        let mut index = vec![NONE; n];
        let mut rows = vec![0u32; self.orbit.len() * n];
        for (k, &b) in self.orbit.iter().enumerate() {
            index[b as usize] = k as u32;
            if k == 0 {
                for (x, r) in rows[..n].iter_mut().enumerate() {
                    *r = x as u32;
                }
                continue;
            }
            let p = index[self.parent[b as usize] as usize] as usize;
            let s = &self.gens[self.label[b as usize] as usize];
            let (before, after) = rows.split_at_mut(k * n);
            let src = &before[p * n..(p + 1) * n];
            for (dst, &y) in after[..n].iter_mut().zip(src) {
                *dst = s.apply(y);
            }
        }
        (rows, index)
    }
}

/// A stabilizer chain for a permutation group.
#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Chain with one level at `point`, for groups known to act
    /// semiregularly there. No stabilizer verification is done. Level
    /// generator `i` is `gens[i]`, identities included.
    pub fn single_level(degree: usize, gens: &[Permutation], point: u32) -> Self {
        StabChain { degree, levels: vec![Level::new(degree, point, gens.to_vec())] }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it passed every level).
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            if !level.strip(&mut g) {
                return (g, l);
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (res, l) = self.sift(g.clone(), 0);
        l == self.levels.len() && res.is_identity()
    }

    /// All elements `u_{k-1} ⋯ u_1 u_0`, with the level-0 choice varying slowest.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<Permutation> = level.orbit.iter().map(|&b| level.transversal(b)).collect();
            let mut next = Vec::with_capacity(out.len() * reps.len());
            for u in &reps {
                for h in &out {
                    next.push(h.compose(u));
                }
            }
            out = next;
        }
        out
    }

    /// Deterministic Schreier–Sims. Base points are chosen as the smallest
    /// point moved by the element that needs a new level.
    pub fn schreier_sims(degree: usize, gens: &[Permutation]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut chain = StabChain { degree, levels: Vec::new() };
        if strong.is_empty() {
            return chain;
        }
        // initial base: no generator fixes every base point
        let mut base: Vec<u32> = Vec::new();
        for g in &strong {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().expect("non-identity"));
            }
        }
        for (i, &b) in base.iter().enumerate() {
            let level_gens = strong
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(degree, b, level_gens));
        }

        let mut cursor: Vec<(usize, usize)> = vec![(0, 0); chain.levels.len()];
        let mut table: Option<(usize, Vec<u32>, Vec<u32>)> = None;
        let n = degree;
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lv = i as usize;
            if table.as_ref().is_none_or(|t| t.0 != lv) {
                let (rows, index) = chain.levels[lv].transversal_table();
                table = Some((lv, rows, index));
            }
            let mut descended = None;
            loop {
                let level = &chain.levels[lv];
                let (k, s) = cursor[lv];
                if k >= level.orbit.len() {
                    break;
                }
                if s >= level.gens.len() {
                    cursor[lv] = (k + 1, 0);
                    continue;
                }
                cursor[lv] = (k, s + 1);
                let b = level.orbit[k];
                let gen = &level.gens[s];
                let c = gen.apply(b);
                if level.parent[c as usize] == b && level.label[c as usize] == s as u32 {
                    continue;
                }
                let (_, rows, index) = table.as_ref().expect("table for current level");
                let row_b = &rows[index[b as usize] as usize * n..][..n];
                let row_c = &rows[index[c as usize] as usize * n..][..n];
                let bottom = lv + 1 == chain.levels.len();
                if bottom && row_b.iter().zip(row_c).all(|(&y, &z)| gen.apply(y) == z) {
                    continue;
                }
                // h = u_b · s · u_c⁻¹
                let mut inv_c = vec![0u32; n];
                for (x, &y) in row_c.iter().enumerate() {
                    inv_c[y as usize] = x as u32;
                }
                let h = Permutation::from_images_unchecked(
                    row_b.iter().map(|&y| inv_c[gen.apply(y) as usize]).collect(),
                );
                let (res, j) = chain.sift(h, lv + 1);
                if j == chain.levels.len() && res.is_identity() {
                    continue;
                }
                if j == chain.levels.len() {
                    let point = res.first_moved().expect("non-identity residue");
                    chain.levels.push(Level::new(degree, point, Vec::new()));
                    cursor.push((0, 0));
                }
                for l in lv + 1..=j {
                    chain.levels[l].add_generator(res.clone());
                    cursor[l] = (0, 0);
                }
                if table.as_ref().is_some_and(|t| t.0 > lv) {
                    table = None;
                }
                descended = Some(j);
                break;
            }
            match descended {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        chain
    }
}
