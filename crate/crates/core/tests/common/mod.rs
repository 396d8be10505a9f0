#![allow(dead_code)]

use std::path::PathBuf;

use idri_core::{CitationGraph, PaperId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> CitationGraph {
    let file = std::fs::File::open(fixture(name)).unwrap();
    idri_core::ingest_edges_csv(file).unwrap().0
}

/// Random citation graph with 2..=50 papers and a per-graph edge density.
pub fn random_graph(seed: u64) -> CitationGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=50usize);
    let density = rng.random_range(0.03..0.35);
    let ids: Vec<PaperId> = (0..n)
        .map(|k| PaperId::new(format!("n{k:02}")).unwrap())
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(density) {
                edges.push((ids[a].clone(), ids[b].clone()));
            }
        }
    }
    if edges.is_empty() {
        edges.push((ids[0].clone(), ids[1].clone()));
    }
    CitationGraph::from_edges(edges).unwrap().0
}

/// The fuzz corpus shared by the property and acceptance suites.
pub fn corpus(size: u64) -> Vec<CitationGraph> {
    (0..size)
        .map(|seed| random_graph(0x1d21_0000 + seed))
        .collect()
}
