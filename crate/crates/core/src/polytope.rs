//! The regular polytope of a string C-group: flags are group elements,
//! `i`-adjacency is right multiplication by `ρ_i`, and the `i`-faces are the
//! cosets of `⟨ρ_j : j ≠ i⟩`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::permgroup::{GroupError, Permutation};
use crate::string_cgroup::StringCGroup;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group of order {order} exceeds the element cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("rank {rank} is too small; at least {needed} is required")]
    RankTooSmall { rank: usize, needed: usize },
    #[error("ranks ({k}, {l}) must satisfy 0 <= k < l <= {max}")]
    RankOutOfRange { k: usize, l: usize, max: usize },
    #[error("flag {index} lists {found} faces, expected {expected}")]
    MalformedFlag { index: usize, found: usize, expected: usize },
}

/// A ranked poset given by its flags. Faces of rank `r` are numbered
/// `0..face_counts[r]`; the improper faces are implicit.
#[derive(Debug, Clone)]
pub struct Polytope {
    rank: usize,
    /// `faces[r][f]`: the rank-`r` face of flag `f`, for proper ranks `r`
    faces: Vec<Vec<u32>>,
    counts: Vec<usize>,
    /// `adjacent[i][f]`: the unique flag differing from `f` only at rank `i`,
    /// or `NONE` when there is no unique such flag
    adjacent: Vec<Vec<u32>>,
    /// `classes[i][f]`: flags with equal faces away from rank `i` share a class
    classes: Vec<Vec<u32>>,
}

fn components(flags: usize, edges: &[&[u32]]) -> (Vec<u32>, usize) {
    let mut label = vec![NONE; flags];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..flags {
        if label[start] != NONE {
            continue;
        }
        label[start] = count;
        stack.push(start as u32);
        while let Some(f) = stack.pop() {
            for adj in edges {
                let g = adj[f as usize];
                if g != NONE && label[g as usize] == NONE {
                    label[g as usize] = count;
                    stack.push(g);
                }
            }
        }
        count += 1;
    }
    (label, count as usize)
}

/// Builds the polytope of `s`. Flag 0 is the identity (the base flag).
pub fn build_polytope(s: &StringCGroup, cap: usize) -> Result<Polytope, PolytopeError> {
    let order = s.order();
    if order > cap as u128 {
        return Err(PolytopeError::CapExceeded { order, cap });
    }
    let d = s.rank();
    let g = s.group();
    let adjacent: Vec<Vec<u32>> = match g.frame_level() {
        Some((_, level)) => {
            let mut index = vec![NONE; g.degree()];
            for (k, &x) in level.orbit.iter().enumerate() {
                index[x as usize] = k as u32;
            }
            s.rho().iter().map(|r| level.orbit.iter().map(|&x| index[r.apply(x) as usize]).collect()).collect()
        }
        None => {
            let elements = g.elements(cap)?;
            let index: HashMap<&Permutation, u32> =
                elements.iter().enumerate().map(|(k, x)| (x, k as u32)).collect();
            s.rho().iter().map(|r| elements.iter().map(|x| index[&x.compose(r)]).collect()).collect()
        }
    };
    let flags = order as usize;
    let mut faces = Vec::with_capacity(d);
    let mut counts = Vec::with_capacity(d);
    for i in 0..d {
        let others: Vec<&[u32]> = (0..d).filter(|&j| j != i).map(|j| adjacent[j].as_slice()).collect();
        let (label, count) = components(flags, &others);
        faces.push(label);
        counts.push(count);
    }
    let classes = adjacent.iter().map(|adj| (0..flags as u32).map(|f| f.min(adj[f as usize])).collect()).collect();
    Ok(Polytope { rank: d, faces, counts, adjacent, classes })
}

impl Polytope {
    /// A poset from an explicit flag list; `flags[f][r]` names the rank-`r`
    /// face of flag `f`. Used for fixtures that need not come from a group.
    pub fn from_flags(rank: usize, flags: &[Vec<u32>]) -> Result<Polytope, PolytopeError> {
        for (index, f) in flags.iter().enumerate() {
            if f.len() != rank {
                return Err(PolytopeError::MalformedFlag { index, found: f.len(), expected: rank });
            }
        }
        let mut faces = Vec::with_capacity(rank);
        let mut counts = Vec::with_capacity(rank);
        for r in 0..rank {
            let mut names: HashMap<u32, u32> = HashMap::new();
            let column: Vec<u32> = flags
                .iter()
                .map(|f| {
                    let next = names.len() as u32;
                    *names.entry(f[r]).or_insert(next)
                })
                .collect();
            counts.push(names.len());
            faces.push(column);
        }
        let mut adjacent = Vec::with_capacity(rank);
        let mut classes = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut groups: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for (f, flag) in flags.iter().enumerate() {
                let mut key = flag.clone();
                key[i] = NONE;
                groups.entry(key).or_default().push(f as u32);
            }
            let mut adj = vec![NONE; flags.len()];
            let mut class = vec![NONE; flags.len()];
            for members in groups.values() {
                let rep = *members.iter().min().expect("nonempty");
                for &f in members {
                    class[f as usize] = rep;
                }
                if let [a, b] = members[..] {
                    adj[a as usize] = b;
                    adj[b as usize] = a;
                }
            }
            adjacent.push(adj);
            classes.push(class);
        }
        Ok(Polytope { rank, faces, counts, adjacent, classes })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flag_count(&self) -> usize {
        self.faces.first().map_or(0, Vec::len)
    }

    /// Rank-`r` face of flag `f`.
    pub fn face_of(&self, flag: usize, r: usize) -> u32 {
        self.faces[r][flag]
    }

    /// The `i`-adjacent flag, when unique.
    pub fn adjacent(&self, flag: usize, i: usize) -> Option<usize> {
        let g = self.adjacent[i][flag];
        (g != NONE).then_some(g as usize)
    }

    /// Incident pairs `(k-face, l-face)` for proper ranks `k < l`.
    fn incidences(&self, k: usize, l: usize) -> HashSet<(u32, u32)> {
        self.faces[k].iter().zip(&self.faces[l]).map(|(&a, &b)| (a, b)).collect()
    }

    /// Faces per extended rank `−1..=d` (index 0 is rank −1) and the face of
    /// each flag at that extended rank.
    fn extended(&self, r: usize) -> (usize, Vec<u32>) {
        if r == 0 || r == self.rank + 1 {
            (1, vec![0; self.flag_count()])
        } else {
            (self.counts[r - 1], self.faces[r - 1].clone())
        }
    }
}

/// Number of proper faces of each rank `0..d`.
pub fn face_counts(p: &Polytope) -> Vec<usize> {
    p.counts.clone()
}

/// Between every incident `(j−1)`-face and `(j+1)`-face lie exactly two
/// `j`-faces, for `j = 0..d−1` (the improper faces included).
pub fn check_diamond(p: &Polytope) -> bool {
    for j in 1..=p.rank {
        let (_, below) = p.extended(j - 1);
        let (_, middle) = p.extended(j);
        let (_, above) = p.extended(j + 1);
        let lower: HashSet<(u32, u32)> = below.iter().zip(&middle).map(|(&a, &b)| (a, b)).collect();
        let upper: HashSet<(u32, u32)> = middle.iter().zip(&above).map(|(&a, &b)| (a, b)).collect();
        let outer: HashSet<(u32, u32)> = below.iter().zip(&above).map(|(&a, &b)| (a, b)).collect();
        let mut down: HashMap<u32, Vec<u32>> = HashMap::new();
        for &(f, h) in &lower {
            down.entry(h).or_default().push(f);
        }
        let mut between: HashMap<(u32, u32), usize> = HashMap::new();
        for &(h, g) in &upper {
            for &f in down.get(&h).map(Vec::as_slice).unwrap_or(&[]) {
                *between.entry((f, g)).or_default() += 1;
            }
        }
        if outer.iter().any(|pair| between.get(pair).copied().unwrap_or(0) != 2) {
            return false;
        }
        if between.keys().any(|pair| !outer.contains(pair)) {
            return false;
        }
    }
    true
}

/// For every set `T` of proper ranks, flags agreeing on their `T`-faces are
/// joined by a path that only changes faces outside `T`.
pub fn check_strong_flag_connected(p: &Polytope) -> bool {
    let flags = p.flag_count();
    let d = p.rank;
    for t in 0..1usize << d {
        let mut parent: Vec<u32> = (0..flags as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut components = flags;
        for i in (0..d).filter(|i| t >> i & 1 == 0) {
            for f in 0..flags {
                let a = find(&mut parent, f as u32);
                let b = find(&mut parent, p.classes[i][f]);
                if a != b {
                    parent[a as usize] = b;
                    components -= 1;
                }
            }
        }
        let fixed: Vec<usize> = (0..d).filter(|i| t >> i & 1 == 1).collect();
        let classes: HashSet<Vec<u32>> =
            (0..flags).map(|f| fixed.iter().map(|&r| p.faces[r][f]).collect()).collect();
        if components != classes.len() {
            return false;
        }
    }
    true
}

/// For each `j = 2..d−1`, the number of flags of the rank-3 section around
/// the base flag spanned by ranks `j−2, j−1, j`; this is the order of
/// `⟨ρ_{j−2}, ρ_{j−1}, ρ_j⟩`.
pub fn section_type_rank3(p: &Polytope) -> Result<Vec<usize>, PolytopeError> {
    if p.rank < 3 {
        return Err(PolytopeError::RankTooSmall { rank: p.rank, needed: 3 });
    }
    let flags = p.flag_count();
    Ok((2..p.rank)
        .map(|j| {
            let edges: Vec<&[u32]> = (j - 2..=j).map(|i| p.adjacent[i].as_slice()).collect();
            let (label, _) = components(flags, &edges);
            label.iter().filter(|&&l| l == label[0]).count()
        })
        .collect())
}

/// Every `k`-face is incident with every `l`-face.
pub fn is_flat(p: &Polytope, k: usize, l: usize) -> Result<bool, PolytopeError> {
    if k >= l || l >= p.rank {
        return Err(PolytopeError::RankOutOfRange { k, l, max: p.rank.saturating_sub(1) });
    }
    Ok(p.incidences(k, l).len() == p.counts[k] * p.counts[l])
}

/// DOT text: one node per flag and one edge per `i`-adjacent pair, labelled `i`.
pub fn export_flag_graph(p: &Polytope) -> String {
    let mut out = String::from("graph flags {\n");
    for f in 0..p.flag_count() {
        let _ = writeln!(out, "  {f};");
    }
    for (i, adj) in p.adjacent.iter().enumerate() {
        for (f, &g) in adj.iter().enumerate() {
            if g != NONE && (f as u32) < g {
                let _ = writeln!(out, "  {f} -- {g} [label={i}];");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The map on flags sending the base flag to the base flag and
/// `i`-adjacent flags to `i`-adjacent flags, if one exists.
pub fn flag_map(p: &Polytope, q: &Polytope) -> Option<Vec<u32>> {
    if p.rank != q.rank || p.flag_count() == 0 || q.flag_count() == 0 {
        return None;
    }
    let mut map = vec![NONE; p.flag_count()];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut k = 0;
    while k < queue.len() {
        let f = queue[k] as usize;
        k += 1;
        for i in 0..p.rank {
            let g = p.adjacent[i][f];
            let h = q.adjacent[i][map[f] as usize];
            if g == NONE || h == NONE {
                return None;
            }
            if map[g as usize] == NONE {
                map[g as usize] = h;
                queue.push(g);
            } else if map[g as usize] != h {
                return None;
            }
        }
    }
    map.iter().all(|&m| m != NONE).then_some(map)
}
