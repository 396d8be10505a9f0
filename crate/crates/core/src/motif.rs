//! Per-focal co-citation counts: citers `s`, co-reference mass `D`,
//! distinct co-cited papers `k` and non-redundant X-motifs `q`.
//!
//! For a focal paper `i` and a co-cited paper `i'` with `m` common citers,
//! every pair of those citers closes an X-motif on `{i, i'}`. Redundant
//! motifs collapse the complete set on `m` citers to `m - 1`, so
//! `q = sum over i' of (m(i, i') - 1)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{CitationGraph, PaperId, RefMode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FocalStats {
    pub focal: PaperId,
    /// Number of citers.
    pub s: u64,
    /// Sum over citers of (r_j - 1).
    #[serde(rename = "D")]
    pub d: u64,
    /// Distinct co-cited papers.
    pub k: u64,
    /// Non-redundant X-motifs.
    pub q: u64,
}

/// Focal counts together with the co-citer multiplicity map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FocalProfile {
    pub stats: FocalStats,
    pub multiplicities: BTreeMap<PaperId, u64>,
}

/// Dense counter reused across focal papers on one thread.
#[derive(Debug)]
pub(crate) struct Scratch {
    counts: Vec<u32>,
    touched: Vec<u32>,
}

impl Scratch {
    pub(crate) fn new(papers: usize) -> Self {
        Scratch {
            counts: vec![0; papers],
            touched: Vec::new(),
        }
    }

    fn clear(&mut self) {
        for &ix in &self.touched {
            self.counts[ix as usize] = 0;
        }
        self.touched.clear();
    }
}

struct Raw {
    s: u64,
    mass: u64,
    k: u64,
    q: u64,
}

/// Scans every citer's reference list once. Leaves the multiplicities of the
/// touched papers in `scratch`; the caller clears it.
fn scan(g: &CitationGraph, focal: usize, scratch: &mut Scratch) -> Raw {
    let citers = g.citers_of(focal);
    let mut mass = 0u64;
    for &j in citers {
        let refs = g.references_of(j as usize);
        mass += refs.len() as u64 - 1;
        for &other in refs {
            if other as usize == focal {
                continue;
            }
            let slot = &mut scratch.counts[other as usize];
            if *slot == 0 {
                scratch.touched.push(other);
            }
            *slot += 1;
        }
    }
    let k = scratch.touched.len() as u64;
    let q: u64 = scratch
        .touched
        .iter()
        .map(|&ix| u64::from(scratch.counts[ix as usize]) - 1)
        .sum();
    assert_eq!(k + q, mass, "k = D - q violated for focal {}", g.id(focal));
    Raw {
        s: citers.len() as u64,
        mass,
        k,
        q,
    }
}

fn declared_mass(g: &CitationGraph, focal: usize) -> Result<u64> {
    g.citers_of(focal)
        .iter()
        .map(|&j| g.ref_count_at(j as usize, RefMode::Declared).map(|r| r - 1))
        .sum()
}

pub(crate) fn stats_at(
    g: &CitationGraph,
    focal: usize,
    mode: RefMode,
    scratch: &mut Scratch,
) -> Result<FocalStats> {
    let raw = scan(g, focal, scratch);
    scratch.clear();
    let d = match mode {
        RefMode::Dataset => raw.mass,
        RefMode::Declared => declared_mass(g, focal)?,
    };
    Ok(FocalStats {
        focal: g.id(focal).clone(),
        s: raw.s,
        d,
        k: raw.k,
        q: raw.q,
    })
}

/// Number of common citers between `focal` and every paper co-cited with
/// it. Papers with no common citer are absent.
pub fn co_citer_multiplicities(g: &CitationGraph, focal: &str) -> Result<BTreeMap<PaperId, u64>> {
    let ix = g.require(focal)?;
    let mut scratch = Scratch::new(g.len());
    scan(g, ix, &mut scratch);
    let out = scratch
        .touched
        .iter()
        .map(|&p| {
            (
                g.id(p as usize).clone(),
                u64::from(scratch.counts[p as usize]),
            )
        })
        .collect();
    Ok(out)
}

pub fn focal_stats(g: &CitationGraph, focal: &str, mode: RefMode) -> Result<FocalStats> {
    let ix = g.require(focal)?;
    stats_at(g, ix, mode, &mut Scratch::new(g.len()))
}

pub fn focal_profile(g: &CitationGraph, focal: &str, mode: RefMode) -> Result<FocalProfile> {
    Ok(FocalProfile {
        stats: focal_stats(g, focal, mode)?,
        multiplicities: co_citer_multiplicities(g, focal)?,
    })
}

/// Stats for every paper, in id order. Runs in parallel; each worker keeps
/// its own scratch counter.
pub fn all_focal_stats(g: &CitationGraph, mode: RefMode) -> Result<Vec<FocalStats>> {
    (0..g.len())
        .into_par_iter()
        .map_init(
            || Scratch::new(g.len()),
            |scratch, ix| stats_at(g, ix, mode, scratch),
        )
        .collect()
}
