//! Dense binary relations over `0..n`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            r.insert(a, a);
        }
        r
    }

    pub fn total(n: usize) -> Self {
        Relation {
            n,
            bits: vec![true; n * n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    /// The equivalence whose classes are `blocks`. Elements in no block are
    /// only related to themselves.
    pub fn from_blocks<'a>(n: usize, blocks: impl IntoIterator<Item = &'a [usize]>) -> Self {
        let mut r = Self::identity(n);
        for block in blocks {
            for &a in block {
                for &b in block {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.successors(a).map(move |b| (a, b)))
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.contains(a, b))
    }

    pub fn out_degree(&self, a: usize) -> usize {
        self.successors(a).count()
    }

    pub fn in_degree(&self, b: usize) -> usize {
        (0..self.n).filter(|&a| self.contains(a, b)).count()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// First element lacking a loop.
    pub fn reflexivity_failure(&self) -> Option<usize> {
        (0..self.n).find(|&a| !self.contains(a, a))
    }

    /// First `(a, b, c)` with `a R b`, `b R c` but not `a R c`.
    pub fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.pairs() {
            for c in self.successors(b) {
                if !self.contains(a, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn symmetry_failure(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !self.contains(b, a))
    }

    pub fn is_preorder(&self) -> bool {
        self.reflexivity_failure().is_none() && self.transitivity_failure().is_none()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.symmetry_failure().is_none()
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn closure(&self) -> Relation {
        let mut r = self.clone();
        for a in 0..self.n {
            r.insert(a, a);
        }
        for k in 0..self.n {
            for a in 0..self.n {
                if r.contains(a, k) {
                    for b in 0..self.n {
                        if r.contains(k, b) {
                            r.insert(a, b);
                        }
                    }
                }
            }
        }
        r
    }

    /// Smallest equivalence containing this relation.
    pub fn equivalence_closure(&self) -> Relation {
        let mut sym = self.clone();
        for (a, b) in self.pairs() {
            sym.insert(b, a);
        }
        sym.closure()
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(a, b)| (b, a)))
    }

    /// Classes of an equivalence, in order of their least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (a..self.n)
                .filter(|&b| self.contains(a, b) && self.contains(b, a))
                .collect();
            for &b in &class {
                seen[b] = true;
            }
            out.push(class);
        }
        out
    }

    /// `a` strictly below `b`.
    pub fn strict(&self, a: usize, b: usize) -> bool {
        self.contains(a, b) && !self.contains(b, a)
    }

    pub fn equiv(&self, a: usize, b: usize) -> bool {
        self.contains(a, b) && self.contains(b, a)
    }
}
