//! Preferential-attachment citation network generator and the decay check
//! on the relative X-motif count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::correlation::spearman;
use crate::error::{Error, Result};
use crate::graph::{CitationGraph, GraphBuilder, PaperId, RefMode};
use crate::motif::all_focal_stats;

/// Minimum number of qualifying papers for [`decay_trend`].
pub const MIN_QUALIFYING: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SynthConfig {
    pub num_papers: usize,
    /// Length of every arriving paper's reference list.
    pub refs_per_paper: usize,
    /// Probability that a reference target is drawn uniformly instead of by
    /// in-degree preference.
    pub uniform_mix: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_papers == 0 {
            return Err(Error::InvalidConfig("num_papers must be positive".into()));
        }
        if self.refs_per_paper == 0 {
            return Err(Error::InvalidConfig(
                "refs_per_paper must be positive".into(),
            ));
        }
        if self.refs_per_paper >= self.num_papers {
            return Err(Error::InvalidConfig(format!(
                "refs_per_paper ({}) must be below num_papers ({})",
                self.refs_per_paper, self.num_papers
            )));
        }
        if !(0.0..=1.0).contains(&self.uniform_mix) {
            return Err(Error::InvalidConfig(format!(
                "uniform_mix must lie in [0, 1], got {}",
                self.uniform_mix
            )));
        }
        Ok(())
    }

    /// Number of edges `generate` produces.
    pub fn expected_edges(&self) -> usize {
        (self.num_papers - self.refs_per_paper) * self.refs_per_paper
    }
}

/// Zero-padded ids so that lexicographic order equals arrival order.
pub fn paper_name(index: usize, num_papers: usize) -> String {
    let width = (num_papers.saturating_sub(1)).to_string().len();
    format!("p{index:0width$}")
}

/// Citation targets of every paper in arrival order.
///
/// Paper `t` for `t >= refs_per_paper` cites `refs_per_paper` distinct
/// earlier papers. Each target is uniform over `0..t` with probability
/// `uniform_mix`, otherwise drawn with weight (in-degree + 1). In-degrees
/// are those seen before `t` arrives.
pub fn generate_reference_lists(config: &SynthConfig) -> Result<Vec<Vec<u32>>> {
    config.validate()?;
    let SynthConfig {
        num_papers,
        refs_per_paper,
        uniform_mix,
        seed,
    } = *config;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // one entry per paper plus one per citation received: sampling an entry
    // uniformly picks a paper with weight in-degree + 1
    let mut urn: Vec<u32> = Vec::with_capacity(num_papers * (refs_per_paper + 1));
    let mut lists = Vec::with_capacity(num_papers);
    for t in 0..num_papers {
        let mut chosen: Vec<u32> = Vec::new();
        if t >= refs_per_paper {
            chosen.reserve(refs_per_paper);
            while chosen.len() < refs_per_paper {
                let target = if rng.random_bool(uniform_mix) {
                    rng.random_range(0..t as u32)
                } else {
                    urn[rng.random_range(0..urn.len())]
                };
                if !chosen.contains(&target) {
                    chosen.push(target);
                }
            }
            urn.extend_from_slice(&chosen);
        }
        urn.push(t as u32);
        lists.push(chosen);
    }
    Ok(lists)
}

pub fn generate(config: &SynthConfig) -> Result<CitationGraph> {
    let lists = generate_reference_lists(config)?;
    let names: Vec<PaperId> = (0..config.num_papers)
        .map(|t| PaperId::new(paper_name(t, config.num_papers)))
        .collect::<Result<_>>()?;
    let mut builder = GraphBuilder::default();
    for name in &names {
        builder.add_paper(name.clone());
    }
    for (t, refs) in lists.iter().enumerate() {
        for &target in refs {
            builder.push(names[t].clone(), names[target as usize].clone());
        }
    }
    Ok(builder.finish()?.0)
}

/// Spearman correlation between citer count `s` and `q / D` over papers with
/// `s >= min_s` and `D >= 1`.
pub fn decay_trend(g: &CitationGraph, min_s: u64) -> Result<f64> {
    let stats = all_focal_stats(g, RefMode::Dataset)?;
    let (citers, ratios): (Vec<f64>, Vec<f64>) = stats
        .iter()
        .filter(|st| st.s >= min_s.max(1) && st.d > 0)
        .map(|st| (st.s as f64, st.q as f64 / st.d as f64))
        .unzip();
    if citers.len() < MIN_QUALIFYING {
        return Err(Error::TooFewQualifying {
            found: citers.len(),
            required: MIN_QUALIFYING,
        });
    }
    spearman(&citers, &ratios)
}
