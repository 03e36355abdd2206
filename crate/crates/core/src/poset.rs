//! Generation of small partial orders up to isomorphism.
//!
//! Used by the algebra enumerator (posets of join-irreducibles, whose downset
//! lattices are exactly the finite distributive = finite Heyting algebras)
//! and by the frame enumerator (a rooted frame is a bottom element below an
//! arbitrary poset).

use std::collections::BTreeSet;

/// A partial order on `0..n`, `leq[i * n + j]` meaning `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poset {
    pub n: usize,
    pub leq: Vec<bool>,
}

impl Poset {
    pub fn empty() -> Poset {
        Poset { n: 0, leq: Vec::new() }
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    /// All down-closed subsets as bitmasks, ascending.
    pub fn downsets(&self) -> Vec<u64> {
        let mut out = Vec::new();
        'mask: for mask in 0..(1u64 << self.n) {
            for i in 0..self.n {
                if mask & (1 << i) != 0 {
                    for j in 0..self.n {
                        if self.le(j, i) && mask & (1 << j) == 0 {
                            continue 'mask;
                        }
                    }
                }
            }
            out.push(mask);
        }
        out
    }

    /// Extends with a new maximal element lying strictly above exactly the
    /// members of `below` (which must be a downset).
    pub fn extend_above(&self, below: u64) -> Poset {
        let n = self.n + 1;
        let mut leq = vec![false; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                leq[i * n + j] = self.le(i, j);
            }
        }
        for i in 0..self.n {
            if below & (1 << i) != 0 {
                leq[i * n + self.n] = true;
            }
        }
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Poset { n, leq }
    }

    fn relabel(&self, perm: &[usize]) -> Poset {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if self.le(i, j) {
                    leq[perm[i] * n + perm[j]] = true;
                }
            }
        }
        Poset { n, leq }
    }

    fn encode(&self) -> u64 {
        debug_assert!(self.n * self.n <= 64);
        let mut bits = 0u64;
        for (idx, &b) in self.leq.iter().enumerate() {
            if b {
                bits |= 1 << idx;
            }
        }
        bits
    }

    /// Lexicographically minimal matrix encoding over all relabelings.
    pub fn canonical(&self) -> Poset {
        let mut best: Option<(u64, Poset)> = None;
        for perm in permutations(self.n) {
            let candidate = self.relabel(&perm);
            let key = candidate.encode();
            if best.as_ref().map_or(true, |(k, _)| key < *k) {
                best = Some((key, candidate));
            }
        }
        best.map(|(_, p)| p).unwrap_or_else(Poset::empty)
    }
}

/// All permutations of `0..n`, in a fixed order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute_rec(&mut items, 0, &mut out);
    out
}

fn permute_rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_rec(items, k + 1, out);
        items.swap(k, i);
    }
}

/// All posets on `n` elements up to isomorphism, as canonical representatives
/// in ascending encoding order.
///
/// Built by repeatedly attaching a new maximal element above a downset; every
/// finite poset arises this way from the removal of a maximal element.
pub(crate) fn all_posets(n: usize) -> Vec<Poset> {
    assert!(n * n <= 64, "poset generation supports at most 8 elements");
    let mut current = vec![Poset::empty()];
    for _ in 0..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in &current {
            for below in p.downsets() {
                let grown = p.extend_above(below).canonical();
                if seen.insert(grown.encode()) {
                    next.push(grown);
                }
            }
        }
        next.sort_by_key(Poset::encode);
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_oeis() {
        // Number of posets on n unlabeled elements: 1, 1, 2, 5, 16, 63.
        assert_eq!(all_posets(0).len(), 1);
        assert_eq!(all_posets(1).len(), 1);
        assert_eq!(all_posets(2).len(), 2);
        assert_eq!(all_posets(3).len(), 5);
        assert_eq!(all_posets(4).len(), 16);
        assert_eq!(all_posets(5).len(), 63);
    }

    #[test]
    fn downsets_of_two_chain() {
        let chain2 = Poset::empty().extend_above(0).extend_above(1);
        assert!(chain2.le(0, 1));
        assert_eq!(chain2.downsets(), vec![0b00, 0b01, 0b11]);
    }

    #[test]
    fn downset_counts_distinguish_chain_and_antichain() {
        let chain2 = Poset::empty().extend_above(0).extend_above(0b1);
        let anti2 = Poset::empty().extend_above(0).extend_above(0);
        assert_eq!(chain2.downsets().len(), 3);
        assert_eq!(anti2.downsets().len(), 4);
    }
}
