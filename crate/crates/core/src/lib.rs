//! Exact combinatorics of the 63 three-qubit Pauli observables: the
//! symplectic polar space they span, its signed lines, contexts, and Fano
//! planes, the exhaustive catalog of Mermin pentagrams, and the 45-type
//! classification with its Klein-quadric restriction.
//!
//! The crate is pure integer arithmetic end to end — observables are GF(2)
//! vectors packed into bytes, signs come from a single-letter multiplication
//! table, and point sets are 64-bit masks. The `parallel` feature (on by
//! default) distributes the pentagram search and signature pass over a
//! rayon pool; disabling it leaves a dependency-light sequential build that
//! produces bit-identical results.

pub mod cache;
pub mod classifier;
pub mod enumerator;
pub mod pauli;
pub mod polar_space;
pub mod records;
pub mod verify;

use std::path::Path;

use thiserror::Error;

use cache::{CacheError, CacheOutcome};
use classifier::{
    build_atlas, klein_census, Classification, ClassifiedContexts, ClassifyError, GoldenTable,
    TableError,
};
use enumerator::{enumerate_pentagrams, ContextCatalog, ContextGraph, Pentagram, PentagramError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Enumeration(#[from] PentagramError),
    #[error(transparent)]
    Classification(#[from] ClassifyError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Everything the front end needs, computed once: the context catalog, the
/// per-context profiles, the full pentagram enumeration, and the typed
/// atlas with Klein counts.
pub struct Pipeline {
    catalog: ContextCatalog,
    classified: ClassifiedContexts,
    golden: GoldenTable,
    pentagrams: Vec<Pentagram>,
    classification: Classification,
    cache_outcome: Option<CacheOutcome>,
}

impl Pipeline {
    /// Runs the whole pipeline in memory with the embedded reference table.
    pub fn build() -> Result<Pipeline, PipelineError> {
        Pipeline::assemble(None, GoldenTable::embedded())
    }

    /// As [`Pipeline::build`], but persisting/reusing the pentagram cache.
    pub fn load_or_build(cache_dir: &Path) -> Result<Pipeline, PipelineError> {
        Pipeline::assemble(Some(cache_dir), GoldenTable::embedded())
    }

    /// As [`Pipeline::load_or_build`] with a caller-supplied reference table.
    pub fn load_or_build_with_table(
        cache_dir: Option<&Path>,
        golden: GoldenTable,
    ) -> Result<Pipeline, PipelineError> {
        Pipeline::assemble(cache_dir, golden)
    }

    fn assemble(
        cache_dir: Option<&Path>,
        golden: GoldenTable,
    ) -> Result<Pipeline, PipelineError> {
        let catalog = ContextCatalog::enumerate();
        let graph = ContextGraph::build(&catalog);
        let (pentagrams, cache_outcome) = match cache_dir {
            Some(dir) => {
                let (pentagrams, outcome) = cache::load_or_build(dir, &catalog, &graph)?;
                (pentagrams, Some(outcome))
            }
            None => (enumerate_pentagrams(&graph)?, None),
        };
        let classified = ClassifiedContexts::build(&catalog);
        let mut classification = build_atlas(&pentagrams, &classified, &golden)?;
        klein_census(&mut classification, &pentagrams);
        Ok(Pipeline {
            catalog,
            classified,
            golden,
            pentagrams,
            classification,
            cache_outcome,
        })
    }

    pub fn catalog(&self) -> &ContextCatalog {
        &self.catalog
    }

    pub fn classified(&self) -> &ClassifiedContexts {
        &self.classified
    }

    pub fn golden(&self) -> &GoldenTable {
        &self.golden
    }

    pub fn pentagrams(&self) -> &[Pentagram] {
        &self.pentagrams
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    /// How the pentagram list was obtained, when a cache directory was used.
    pub fn cache_outcome(&self) -> Option<&CacheOutcome> {
        self.cache_outcome.as_ref()
    }
}

/// Runs `f` inside a rayon pool of the given size; 0 means the default
/// (all cores). Without the `parallel` feature the closure just runs on
/// the calling thread.
#[cfg(feature = "parallel")]
pub fn with_thread_count<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("rayon pool construction only fails on resource exhaustion");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_thread_count<T>(threads: usize, f: impl FnOnce() -> T) -> T {
    let _ = threads;
    f()
}
