//! Automorphisms and isomorphisms of small finite groups by backtracking
//! over generator images.

use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::group::PermGroup;
use super::perm::Perm;

/// Default cap on `|G|` for automorphism computations.
pub const DEFAULT_AUT_CAP: usize = 1000;

/// Multiplication table of a materialized group; element `i` is
/// `group.elements()[i]`.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    orders: Vec<u32>,
    class_of: Vec<u32>,
    class_sizes: Vec<u32>,
}

impl CayleyTable {
    pub fn new(g: &PermGroup) -> Self {
        let els = g.elements();
        let n = els.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                mul[i * n + j] = g.index_of(&a.compose(b)).expect("closed") as u32;
            }
        }
        let identity = g.index_of(&g.identity()).unwrap();
        let mut inv = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] as usize == identity {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        let mut orders = vec![0u32; n];
        for i in 0..n {
            let mut k = 1;
            let mut x = i;
            while x != identity {
                x = mul[x * n + i] as usize;
                k += 1;
            }
            orders[i] = k;
        }
        let mut t = CayleyTable {
            n,
            mul,
            inv,
            identity,
            orders,
            class_of: vec![u32::MAX; n],
            class_sizes: Vec::new(),
        };
        t.compute_classes();
        t
    }

    fn compute_classes(&mut self) {
        let n = self.n;
        for x in 0..n {
            if self.class_of[x] != u32::MAX {
                continue;
            }
            let c = self.class_sizes.len() as u32;
            let mut size = 0;
            for g in 0..n {
                let y = self.conj(g, x);
                if self.class_of[y] == u32::MAX {
                    self.class_of[y] = c;
                    size += 1;
                }
            }
            self.class_sizes.push(size);
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn order_of(&self, a: usize) -> u32 {
        self.orders[a]
    }
    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }
    fn class_size(&self, x: usize) -> u32 {
        self.class_sizes[self.class_of[x] as usize]
    }

    fn span_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut q = VecDeque::from([self.identity]);
        let mut count = 1;
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    q.push_back(y);
                }
            }
        }
        count
    }

    /// A short generating sequence, preferring two generators from small
    /// conjugacy classes so that the backtracking has few candidates.
    pub fn generating_sequence(&self) -> Vec<usize> {
        if self.n == 1 {
            return Vec::new();
        }
        let mut by_class: Vec<usize> = (0..self.n).filter(|&x| x != self.identity).collect();
        by_class.sort_by_key(|&x| (self.class_size(x), std::cmp::Reverse(self.orders[x]), x));
        // Cyclic?
        if let Some(&g) = by_class.iter().find(|&&x| self.orders[x] as usize == self.n) {
            return vec![g];
        }
        // One representative per class for the first generator.
        let mut reps = Vec::new();
        let mut seen_class = vec![false; self.class_sizes.len()];
        for &x in &by_class {
            let c = self.class_of[x] as usize;
            if !seen_class[c] {
                seen_class[c] = true;
                reps.push(x);
            }
        }
        let mut best: Option<(u64, [usize; 2])> = None;
        for &x in &reps {
            for &y in &by_class {
                let cost = self.class_size(x) as u64 * self.class_size(y) as u64;
                if best.is_some_and(|(b, _)| cost >= b) {
                    continue;
                }
                if self.span_size(&[x, y]) == self.n {
                    best = Some((cost, [x, y]));
                }
            }
        }
        if let Some((_, pair)) = best {
            return pair.to_vec();
        }
        let mut gens = Vec::new();
        let mut size = 1;
        for &x in &by_class {
            if size == self.n {
                break;
            }
            gens.push(x);
            let s = self.span_size(&gens);
            if s == size {
                gens.pop();
            } else {
                size = s;
            }
        }
        gens
    }

    /// Spanning tree of the Cayley graph: `(parent, generator slot)` for every
    /// element other than the identity, in breadth-first order.
    fn word_tree(&self, gens: &[usize]) -> Vec<(usize, usize, usize)> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut q = VecDeque::from([self.identity]);
        let mut out = Vec::with_capacity(self.n);
        while let Some(x) = q.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push((y, x, k));
                    q.push_back(y);
                }
            }
        }
        out
    }
}

/// Enumerate every isomorphism `src -> dst` determined by images of the
/// generating sequence; stop after `limit` maps. Maps are index arrays.
fn enumerate_homs(
    src: &CayleyTable,
    dst: &CayleyTable,
    limit: usize,
    node_budget: u64,
) -> Result<Vec<Vec<u32>>> {
    if src.n != dst.n {
        return Ok(Vec::new());
    }
    let gens = src.generating_sequence();
    let tree = src.word_tree(&gens);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            (0..dst.n)
                .filter(|&y| {
                    dst.orders[y] == src.orders[g] && dst.class_size(y) == src.class_size(g)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    let mut nodes: u64 = 0;
    let mut map = vec![u32::MAX; src.n];
    // Odometer over candidate tuples.
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        nodes += 1;
        if nodes > node_budget {
            return Err(Error::BudgetExceeded(format!(
                "isomorphism search exceeded {node_budget} candidates"
            )));
        }
        let imgs: Vec<usize> = choice.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        if let Some(m) = try_extend(src, dst, &gens, &imgs, &tree, &mut map) {
            out.push(m);
            if out.len() >= limit {
                return Ok(out);
            }
        }
        // advance
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < cands[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn try_extend(
    src: &CayleyTable,
    dst: &CayleyTable,
    gens: &[usize],
    imgs: &[usize],
    tree: &[(usize, usize, usize)],
    map: &mut [u32],
) -> Option<Vec<u32>> {
    map.fill(u32::MAX);
    map[src.identity] = dst.identity as u32;
    let mut used = vec![false; dst.n];
    used[dst.identity] = true;
    for &(y, parent, k) in tree {
        let img = dst.mul(map[parent] as usize, imgs[k]);
        if used[img] {
            return None;
        }
        used[img] = true;
        map[y] = img as u32;
    }
    // Homomorphism check on every Cayley-graph edge.
    for x in 0..src.n {
        for (k, &g) in gens.iter().enumerate() {
            if map[src.mul(x, g)] as usize != dst.mul(map[x] as usize, imgs[k]) {
                return None;
            }
        }
    }
    Some(map.to_vec())
}

/// `Aut(G)` as a permutation group on the element indices of `G`, together
/// with the inner embedding `g -> (x -> g x g^-1)`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub table: CayleyTable,
    pub aut: PermGroup,
    /// `inner[i]` is conjugation by element `i` of `G`.
    pub inner: Vec<Perm>,
}

impl AutGroup {
    pub fn inner_group(&self) -> PermGroup {
        PermGroup::from_trusted(self.table.len(), dedup(self.inner.clone()))
    }
    /// Aut = Inn
    pub fn is_complete(&self) -> bool {
        self.inner_group().order() == self.aut.order()
    }
}

fn dedup(mut v: Vec<Perm>) -> Vec<Perm> {
    v.sort();
    v.dedup();
    v
}

pub fn aut_group(g: &PermGroup, cap: usize) -> Result<AutGroup> {
    if g.order() > cap {
        return Err(Error::BudgetExceeded(format!(
            "|G| = {} exceeds the automorphism cap {cap}",
            g.order()
        )));
    }
    let table = CayleyTable::new(g);
    let maps = enumerate_homs(&table, &table, usize::MAX, 50_000_000)?;
    let auts: Vec<Perm> = maps
        .into_iter()
        .map(|m| Perm::from_images(m).expect("bijective"))
        .collect();
    let inner: Vec<Perm> = (0..table.len())
        .map(|a| {
            Perm::from_images((0..table.len()).map(|x| table.conj(a, x) as u32).collect())
                .unwrap()
        })
        .collect();
    let aut = PermGroup::from_trusted(table.len(), auts);
    Ok(AutGroup { table, aut, inner })
}

/// An explicit isomorphism between two groups, as a map between their
/// element lists, if one exists.
pub fn find_isomorphism(a: &PermGroup, b: &PermGroup) -> Result<Option<Vec<u32>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let ta = CayleyTable::new(a);
    let tb = CayleyTable::new(b);
    Ok(enumerate_homs(&ta, &tb, 1, 50_000_000)?.pop())
}

/// Check that `map` (indices of `a` to indices of `b`) is an isomorphism.
pub fn is_isomorphism(a: &PermGroup, b: &PermGroup, map: &[u32]) -> bool {
    if a.order() != b.order() || map.len() != a.order() {
        return false;
    }
    let mut hit = vec![false; b.order()];
    for &m in map {
        if m as usize >= hit.len() || std::mem::replace(&mut hit[m as usize], true) {
            return false;
        }
    }
    let ea = a.elements();
    let eb = b.elements();
    ea.iter().enumerate().all(|(i, x)| {
        ea.iter().enumerate().all(|(j, y)| {
            let xy = a.index_of(&x.compose(y)).unwrap();
            eb[map[xy] as usize] == eb[map[i] as usize].compose(&eb[map[j] as usize])
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aut_of_small_groups() {
        assert_eq!(aut_group(&PermGroup::cyclic(5), 100).unwrap().aut.order(), 4);
        let s3 = aut_group(&PermGroup::symmetric(3), 100).unwrap();
        assert_eq!(s3.aut.order(), 6);
        assert!(s3.is_complete());
        let a5 = aut_group(&PermGroup::alternating(5), 100).unwrap();
        assert_eq!(a5.aut.order(), 120);
        assert!(!a5.is_complete());
        // Klein four-group: Aut = S3
        let v4 = PermGroup::alternating(4)
            .subgroup(&[
                Perm::parse_cycles(4, "(0 1)(2 3)").unwrap(),
                Perm::parse_cycles(4, "(0 2)(1 3)").unwrap(),
            ])
            .unwrap();
        assert_eq!(aut_group(&v4, 100).unwrap().aut.order(), 6);
    }

    #[test]
    fn aut_cap() {
        assert!(matches!(
            aut_group(&PermGroup::symmetric(5), 100),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn isomorphism_search() {
        let s3 = PermGroup::symmetric(3);
        // S3 acting on 6 points via the regular-ish embedding (0 1)(2 3)(4 5)...
        let d3 = crate::groups::group::closure(
            6,
            &[
                Perm::parse_cycles(6, "(0 1 2)(3 4 5)").unwrap(),
                Perm::parse_cycles(6, "(0 3)(1 5)(2 4)").unwrap(),
            ],
            100,
        )
        .unwrap();
        let m = find_isomorphism(&s3, &d3).unwrap().unwrap();
        assert!(is_isomorphism(&s3, &d3, &m));
        assert!(find_isomorphism(&s3, &PermGroup::cyclic(6)).unwrap().is_none());
    }
}
