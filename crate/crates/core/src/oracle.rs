//! Brute-force X-motif enumeration for small graphs.
//!
//! For every cited pair `{i, i'}` each pair of papers citing both forms an
//! X-motif. A motif is redundant when its two citers are already connected
//! through other motifs on the same cited pair, so only spanning-forest
//! edges of the per-pair motif graph are counted.

use crate::error::{Error, Result};
use crate::graph::CitationGraph;

pub const DEFAULT_CAP: usize = 1000;

/// Union-find over `0..len` with path compression and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Joins the sets of `a` and `b`. Returns false if they were already one set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Counts non-redundant X-motifs on the focal paper `focal` by enumeration.
///
/// Cost is O(|papers| * s^2); refuses graphs larger than `cap` papers.
pub fn enumerate_q(g: &CitationGraph, focal: &str, cap: usize) -> Result<u64> {
    if g.len() > cap {
        return Err(Error::EnumerationCap {
            papers: g.len(),
            cap,
        });
    }
    let focal = g.require(focal)?;
    // citer indices follow id order, so pairs are visited lexicographically
    let citers = g.citers_of(focal);
    let cites = |j: u32, target: usize| g.references_of(j as usize).contains(&(target as u32));

    let mut total = 0u64;
    for other in (0..g.len()).filter(|&p| p != focal) {
        let mut forest = DisjointSets::new(citers.len());
        for a in 0..citers.len() {
            for b in a + 1..citers.len() {
                let motif = cites(citers[a], other) && cites(citers[b], other);
                if motif && forest.union(a, b) {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

/// Raw X-motif count on `focal`, redundant ones included.
pub fn enumerate_all_motifs(g: &CitationGraph, focal: &str, cap: usize) -> Result<u64> {
    if g.len() > cap {
        return Err(Error::EnumerationCap {
            papers: g.len(),
            cap,
        });
    }
    let focal = g.require(focal)?;
    let citers = g.citers_of(focal);
    let mut total = 0;
    for other in (0..g.len()).filter(|&p| p != focal) {
        let hits = citers
            .iter()
            .filter(|&&j| g.references_of(j as usize).contains(&(other as u32)))
            .count() as u64;
        total += hits * hits.saturating_sub(1) / 2;
    }
    Ok(total)
}
