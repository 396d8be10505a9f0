//! Citation graph model and ingestion of edge and metadata files.
//!
//! Node indices follow the lexicographic order of paper ids, so two graphs
//! built from the same set of records compare equal regardless of record
//! order. Reference and citer lists are kept sorted by index.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Opaque, case-sensitive paper identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PaperId(String);

impl PaperId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.contains([',', '\n', '\r']) {
            return Err(Error::InvalidId(id));
        }
        Ok(PaperId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PaperId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for PaperId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PaperId::new(s)
    }
}

impl std::borrow::Borrow<str> for PaperId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Where the reference-list length r_j of a citer comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RefMode {
    /// Out-degree in the ingested edge list.
    #[default]
    Dataset,
    /// Externally supplied full reference-list length.
    Declared,
}

impl FromStr for RefMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dataset" => Ok(RefMode::Dataset),
            "declared" => Ok(RefMode::Declared),
            other => Err(format!(
                "unknown mode {other:?} (expected dataset or declared)"
            )),
        }
    }
}

impl fmt::Display for RefMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RefMode::Dataset => "dataset",
            RefMode::Declared => "declared",
        })
    }
}

/// Counters reported after edge ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IngestSummary {
    pub edges_accepted: u64,
    pub duplicates_dropped: u64,
    pub self_loops_dropped: u64,
    pub papers: u64,
}

/// Directed citation graph: an edge `citing -> cited` means `citing` lists
/// `cited` among its references.
///
/// Immutable after construction apart from attaching declared reference
/// counts, so it can be shared across worker threads freely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationGraph {
    ids: Vec<PaperId>,
    lookup: HashMap<PaperId, u32>,
    references: Vec<Vec<u32>>,
    citers: Vec<Vec<u32>>,
    declared: Vec<Option<u64>>,
}

impl CitationGraph {
    /// Builds a graph from (citing, cited) records. Duplicate records are
    /// collapsed and self-citations dropped; both are counted in the summary.
    pub fn from_edges<I>(records: I) -> Result<(Self, IngestSummary)>
    where
        I: IntoIterator<Item = (PaperId, PaperId)>,
    {
        let mut builder = GraphBuilder::default();
        for (citing, cited) in records {
            builder.push(citing, cited);
        }
        builder.finish()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.references.iter().map(Vec::len).sum()
    }

    /// Paper ids in index order (sorted).
    pub fn ids(&self) -> &[PaperId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> &PaperId {
        &self.ids[index]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).map(|&ix| ix as usize)
    }

    pub(crate) fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownPaper(id.to_owned()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.lookup.contains_key(id)
    }

    /// Indices of the papers that `index` cites.
    pub fn references_of(&self, index: usize) -> &[u32] {
        &self.references[index]
    }

    /// Indices of the papers citing `index`.
    pub fn citers_of(&self, index: usize) -> &[u32] {
        &self.citers[index]
    }

    pub fn references(&self, id: &str) -> Result<impl Iterator<Item = &PaperId> + '_> {
        let ix = self.require(id)?;
        Ok(self.references[ix].iter().map(|&j| &self.ids[j as usize]))
    }

    pub fn citers(&self, id: &str) -> Result<impl Iterator<Item = &PaperId> + '_> {
        let ix = self.require(id)?;
        Ok(self.citers[ix].iter().map(|&j| &self.ids[j as usize]))
    }

    pub fn declared_ref_count(&self, index: usize) -> Option<u64> {
        self.declared[index]
    }

    /// Number of references r_j of paper `id` under `mode`.
    pub fn ref_count(&self, id: &str, mode: RefMode) -> Result<u64> {
        let ix = self.require(id)?;
        self.ref_count_at(ix, mode)
    }

    pub(crate) fn ref_count_at(&self, index: usize, mode: RefMode) -> Result<u64> {
        match mode {
            RefMode::Dataset => Ok(self.references[index].len() as u64),
            RefMode::Declared => self.declared[index]
                .ok_or_else(|| Error::MissingDeclaredCount(self.ids[index].to_string())),
        }
    }

    /// Attaches a declared reference count, checked against the dataset
    /// out-degree.
    pub fn set_declared_ref_count(&mut self, id: &str, count: u64) -> Result<()> {
        let ix = self.require(id)?;
        let out_degree = self.references[ix].len() as u64;
        if count == 0 || count < out_degree {
            return Err(Error::DeclaredBelowOutDegree {
                paper: id.to_owned(),
                declared: count,
                out_degree,
            });
        }
        self.declared[ix] = Some(count);
        Ok(())
    }

    /// Rebuilds the citer index from the reference lists.
    pub fn rebuild_citers(&self) -> Vec<Vec<u32>> {
        invert(&self.references)
    }

    /// All edges as (citing, cited) index pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.references
            .iter()
            .enumerate()
            .flat_map(|(j, refs)| refs.iter().map(move |&i| (j, i as usize)))
    }
}

fn invert(references: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut citers = vec![Vec::new(); references.len()];
    // citing indices are visited in increasing order, so each list comes out sorted
    for (j, refs) in references.iter().enumerate() {
        for &i in refs {
            citers[i as usize].push(j as u32);
        }
    }
    citers
}

/// Incremental edge collector. Ids are interned on arrival and renumbered
/// into sorted order by [`GraphBuilder::finish`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<PaperId>,
    intern: HashMap<PaperId, u32>,
    edges: Vec<(u32, u32)>,
    records: u64,
    self_loops: u64,
}

impl GraphBuilder {
    fn intern(&mut self, id: PaperId) -> u32 {
        if let Some(&ix) = self.intern.get(&id) {
            return ix;
        }
        let ix = self.names.len() as u32;
        self.names.push(id.clone());
        self.intern.insert(id, ix);
        ix
    }

    /// Registers a paper that may have no edges.
    pub fn add_paper(&mut self, id: PaperId) {
        self.intern(id);
    }

    pub fn push(&mut self, citing: PaperId, cited: PaperId) {
        self.records += 1;
        let a = self.intern(citing);
        let b = self.intern(cited);
        if a == b {
            self.self_loops += 1;
        } else {
            self.edges.push((a, b));
        }
    }

    pub fn finish(self) -> Result<(CitationGraph, IngestSummary)> {
        if self.records == 0 && self.names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let GraphBuilder {
            names,
            mut edges,
            self_loops,
            ..
        } = self;

        let mut order: Vec<u32> = (0..names.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| names[a as usize].cmp(&names[b as usize]));
        let mut rank = vec![0u32; names.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let mut slots: Vec<Option<PaperId>> = names.into_iter().map(Some).collect();
        let ids: Vec<PaperId> = order
            .iter()
            .map(|&old| slots[old as usize].take().expect("each id taken once"))
            .collect();

        for e in &mut edges {
            *e = (rank[e.0 as usize], rank[e.1 as usize]);
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        let duplicates = (before - edges.len()) as u64;

        let mut references = vec![Vec::new(); ids.len()];
        for &(a, b) in &edges {
            references[a as usize].push(b);
        }
        let citers = invert(&references);
        let lookup = ids
            .iter()
            .enumerate()
            .map(|(ix, id)| (id.clone(), ix as u32))
            .collect();

        let summary = IngestSummary {
            edges_accepted: edges.len() as u64,
            duplicates_dropped: duplicates,
            self_loops_dropped: self_loops,
            papers: ids.len() as u64,
        };
        let graph = CitationGraph {
            declared: vec![None; ids.len()],
            ids,
            lookup,
            references,
            citers,
        };
        Ok((graph, summary))
    }
}

pub const EDGE_HEADER: [&str; 2] = ["citing_id", "cited_id"];
pub const METADATA_HEADER: [&str; 3] = ["paper_id", "group", "ref_count"];

fn csv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(input)
}

fn check_header<R: Read>(reader: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = reader.headers()?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Malformed {
            line: 1,
            reason: format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord, fallback: u64) -> u64 {
    record.position().map_or(fallback, |p| p.line())
}

fn field_id(value: &str, line: u64, column: &str) -> Result<PaperId> {
    PaperId::new(value).map_err(|_| Error::Malformed {
        line,
        reason: format!("empty or invalid {column}"),
    })
}

/// Reads an edge CSV (`citing_id,cited_id`) into (citing, cited) pairs.
pub fn read_edges_csv<R: Read>(input: R) -> Result<Vec<(PaperId, PaperId)>> {
    let mut reader = csv_reader(input);
    check_header(&mut reader, &EDGE_HEADER)?;
    let mut out = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record?;
        let line = record_line(&record, n as u64 + 2);
        if record.len() != 2 {
            return Err(Error::Malformed {
                line,
                reason: format!("expected 2 fields, found {}", record.len()),
            });
        }
        out.push((
            field_id(&record[0], line, "citing_id")?,
            field_id(&record[1], line, "cited_id")?,
        ));
    }
    Ok(out)
}

/// Reads and ingests an edge CSV in one step.
pub fn ingest_edges_csv<R: Read>(input: R) -> Result<(CitationGraph, IngestSummary)> {
    CitationGraph::from_edges(read_edges_csv(input)?)
}

/// Writes edges in the standard CSV format, sorted by (citing, cited).
pub fn write_edges_csv<W: std::io::Write>(graph: &CitationGraph, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(EDGE_HEADER)?;
    for (j, i) in graph.edges() {
        writer.write_record([graph.id(j).as_str(), graph.id(i).as_str()])?;
    }
    writer.flush().map_err(|e| Error::io("<edge output>", e))?;
    Ok(())
}

/// One row of the metadata file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetadataRecord {
    pub paper: PaperId,
    pub group: Option<String>,
    pub ref_count: Option<u64>,
}

/// Reads a metadata CSV (`paper_id,group,ref_count`).
pub fn read_metadata_csv<R: Read>(input: R) -> Result<Vec<MetadataRecord>> {
    let mut reader = csv_reader(input);
    check_header(&mut reader, &METADATA_HEADER)?;
    let mut out = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record?;
        let line = record_line(&record, n as u64 + 2);
        if record.len() != 3 {
            return Err(Error::Malformed {
                line,
                reason: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let paper = field_id(&record[0], line, "paper_id")?;
        let group = Some(record[1].to_owned()).filter(|g| !g.is_empty());
        let ref_count = match &record[2] {
            "" => None,
            raw => match raw.parse::<u64>() {
                Ok(n) if n > 0 => Some(n),
                _ => {
                    return Err(Error::Malformed {
                        line,
                        reason: format!("ref_count must be a positive integer, found {raw:?}"),
                    })
                }
            },
        };
        out.push(MetadataRecord {
            paper,
            group,
            ref_count,
        });
    }
    Ok(out)
}

/// Paper to group assignment (e.g. journal).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupingTable {
    assignments: BTreeMap<PaperId, String>,
}

impl GroupingTable {
    pub fn group_of(&self, paper: &str) -> Option<&str> {
        self.assignments.get(paper).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PaperId, &str)> {
        self.assignments.iter().map(|(p, g)| (p, g.as_str()))
    }

    /// Members per group, both levels sorted.
    pub fn groups(&self) -> BTreeMap<&str, Vec<&PaperId>> {
        let mut out: BTreeMap<&str, Vec<&PaperId>> = BTreeMap::new();
        for (paper, group) in &self.assignments {
            out.entry(group.as_str()).or_default().push(paper);
        }
        out
    }
}

/// Outcome of metadata ingestion.
#[derive(Debug, Clone, Default)]
pub struct Metadata {
    pub grouping: GroupingTable,
    pub declared: BTreeMap<PaperId, u64>,
    pub warnings: Vec<String>,
}

/// Applies metadata rows to `graph`: group labels go into the grouping table,
/// declared reference counts are attached to the graph. Papers missing from
/// the graph produce warnings.
pub fn ingest_metadata<I>(graph: &mut CitationGraph, records: I) -> Result<Metadata>
where
    I: IntoIterator<Item = MetadataRecord>,
{
    let mut seen: HashMap<PaperId, MetadataRecord> = HashMap::new();
    let mut meta = Metadata::default();
    for record in records {
        if let Some(prev) = seen.get(&record.paper) {
            if *prev != record {
                return Err(Error::ConflictingMetadata(record.paper.to_string()));
            }
            continue;
        }
        seen.insert(record.paper.clone(), record.clone());

        if !graph.contains(record.paper.as_str()) {
            meta.warnings.push(format!(
                "paper {:?} in metadata is absent from the graph",
                record.paper.as_str()
            ));
            continue;
        }
        if let Some(count) = record.ref_count {
            graph.set_declared_ref_count(record.paper.as_str(), count)?;
            meta.declared.insert(record.paper.clone(), count);
        }
        if let Some(group) = record.group {
            meta.grouping.assignments.insert(record.paper, group);
        }
    }
    Ok(meta)
}
