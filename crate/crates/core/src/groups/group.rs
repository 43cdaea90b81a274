use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

use super::perm::Perm;

/// Default element cap for `closure`.
pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// A finite permutation group with all of its elements materialized.
///
/// Elements are kept sorted so that two groups are equal exactly when their
/// element sets are equal.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for PermGroup {}

/// Breadth-first closure of `gens` under composition, failing beyond `cap`.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::Parse(format!(
            "generator {g:?} has degree {} but group degree is {degree}",
            g.degree()
        )));
    }
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::BudgetExceeded(format!(
                        "closure exceeded {cap} elements"
                    )));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(PermGroup::from_set(degree, gens, seen.into_iter().collect()))
}

impl PermGroup {
    fn from_set(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    /// Wrap an element list already known to be closed (e.g. the full set of
    /// automorphisms found by an exhaustive search).
    pub(crate) fn from_trusted(degree: usize, elements: Vec<Perm>) -> Self {
        Self::with_generating_set(degree, elements)
    }

    /// Trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::from_set(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    /// Wrap an element list that is already known to be a group; closure is
    /// checked against the supplied generators.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let g = Self::from_set(degree, Vec::new(), elements);
        if !g.contains(&Perm::identity(degree)) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in &g.elements {
            if !g.contains(&a.inverse()) {
                return Err(Error::NotSubgroup(format!("{a:?} has no inverse")));
            }
            for b in &g.elements {
                if !g.contains(&a.compose(b)) {
                    return Err(Error::NotSubgroup("not closed under products".into()));
                }
            }
        }
        let gens = g.small_generating_set();
        Ok(Self { generators: gens, ..g })
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
        }
        closure(n, &gens, usize::MAX).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Perm> = (2..n)
            .map(|k| Perm::from_cycles(n, &[vec![0, 1, k as u32]]).unwrap())
            .collect();
        closure(n, &gens, usize::MAX).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        closure(n.max(1), &gens, usize::MAX).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }
    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Generators to use for membership-style tests (conjugation etc.).
    fn test_generators(&self) -> Vec<Perm> {
        if self.generators.is_empty() && self.order() > 1 {
            self.small_generating_set()
        } else {
            self.generators.clone()
        }
    }

    /// Greedy generating set: add elements until the closure is everything.
    pub fn small_generating_set(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = HashSet::from([self.identity()]);
        // Prefer high-order elements; they tend to cut the search short.
        let mut cands: Vec<&Perm> = self.elements.iter().collect();
        cands.sort_by_key(|p| std::cmp::Reverse(p.order()));
        for c in cands {
            if span.len() == self.order() {
                break;
            }
            if span.contains(c) {
                continue;
            }
            gens.push(c.clone());
            span = closure(self.degree, &gens, usize::MAX)
                .unwrap()
                .elements
                .into_iter()
                .collect();
        }
        gens
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.test_generators();
        gens.iter()
            .all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        let hg = self.test_generators();
        g.test_generators()
            .iter()
            .all(|x| hg.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    /// Subgroup generated by `gens` (must lie in the same degree).
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        let h = closure(self.degree, gens, self.order().max(1))?;
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("generators leave the ambient group".into()));
        }
        Ok(h)
    }

    /// `{ g in G : g S g^-1 = S }` for a subgroup `S` of `self`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup(format!(
                "subgroup of order {} is not contained in the ambient group",
                h.order()
            )));
        }
        let hg = h.test_generators();
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| hg.iter().all(|x| h.contains(&x.conjugate_by(g))))
            .cloned()
            .collect();
        Ok(Self::with_generating_set(self.degree, elems))
    }

    /// Elements of `self` commuting with every element of `s`.
    pub fn centralizer(&self, s: &[Perm]) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|g| s.iter().all(|x| g.compose(x) == x.compose(g)))
            .cloned()
            .collect();
        Self::with_generating_set(self.degree, elems)
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer(&self.test_generators())
    }

    pub fn is_centerless(&self) -> bool {
        self.center().order() == 1
    }

    fn with_generating_set(degree: usize, elems: Vec<Perm>) -> PermGroup {
        let g = Self::from_set(degree, Vec::new(), elems);
        let gens = g.small_generating_set();
        Self { generators: gens, ..g }
    }

    /// Conjugacy classes, each sorted, in order of their first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Perm>> {
        let gens = self.test_generators();
        let mut seen: HashSet<&Perm> = HashSet::new();
        let mut classes = Vec::new();
        for x in &self.elements {
            if seen.contains(x) {
                continue;
            }
            let mut class = vec![x.clone()];
            let mut local: HashSet<Perm> = HashSet::from([x.clone()]);
            let mut i = 0;
            while i < class.len() {
                for g in &gens {
                    let y = class[i].conjugate_by(g);
                    if local.insert(y.clone()) {
                        class.push(y);
                    }
                }
                i += 1;
            }
            for y in &class {
                seen.insert(&self.elements[self.index[y]]);
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    /// Smallest normal subgroup containing `x`.
    pub fn normal_closure(&self, x: &Perm) -> PermGroup {
        let gens = self.test_generators();
        let mut conj = vec![x.clone()];
        let mut local: HashSet<Perm> = HashSet::from([x.clone()]);
        let mut i = 0;
        while i < conj.len() {
            for g in &gens {
                let y = conj[i].conjugate_by(g);
                if local.insert(y.clone()) {
                    conj.push(y);
                }
            }
            i += 1;
        }
        closure(self.degree, &conj, usize::MAX).unwrap()
    }

    /// Simple iff every nontrivial conjugacy class normally generates the
    /// whole group (and the group is nontrivial).
    pub fn is_simple(&self) -> bool {
        if self.order() == 1 {
            return false;
        }
        self.conjugacy_classes()
            .iter()
            .filter(|c| !c[0].is_identity())
            .all(|c| self.normal_closure(&c[0]).order() == self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(closure(2, &[p(2, "(0 1)")], 100).unwrap().order(), 2);
        let s3 = closure(3, &[p(3, "(0 1)"), p(3, "(0 1 2)")], 100).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(matches!(
            closure(6, &[p(6, "(0 1)"), p(6, "(0 1 2 3 4 5)")], 100),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn normalizers() {
        let s3 = PermGroup::symmetric(3);
        let h = s3.subgroup(&[p(3, "(0 1)")]).unwrap();
        assert_eq!(s3.normalizer(&h).unwrap().order(), 2);

        let s4 = PermGroup::symmetric(4);
        let h = s4.subgroup(&[p(4, "(0 1)")]).unwrap();
        let n = s4.normalizer(&h).unwrap();
        assert_eq!(n, s4.subgroup(&[p(4, "(0 1)"), p(4, "(2 3)")]).unwrap());

        let c6 = PermGroup::cyclic(6);
        let h = c6.subgroup(&[c6.generators()[0].pow(2)]).unwrap();
        assert_eq!(c6.normalizer(&h).unwrap(), c6);

        let a4 = PermGroup::alternating(4);
        assert!(matches!(
            a4.normalizer(&s4.subgroup(&[p(4, "(0 1)")]).unwrap()),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn centers_and_simplicity() {
        assert_eq!(PermGroup::symmetric(3).center().order(), 1);
        assert_eq!(PermGroup::cyclic(5).center().order(), 5);
        assert!(PermGroup::alternating(5).is_simple());
        assert!(!PermGroup::alternating(4).is_simple());
        assert!(!PermGroup::symmetric(5).is_simple());
        assert!(PermGroup::cyclic(7).is_simple());
        assert_eq!(PermGroup::alternating(5).conjugacy_classes().len(), 5);
    }

    #[test]
    fn from_elements_checks_closure() {
        let s3 = PermGroup::symmetric(3);
        let g = PermGroup::from_elements(3, s3.elements().to_vec()).unwrap();
        assert_eq!(g, s3);
        assert!(PermGroup::from_elements(3, vec![Perm::identity(3), p(3, "(0 1 2)")]).is_err());
    }
}
