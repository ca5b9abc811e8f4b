//! Degree-parallel driver for the classifier.

use rayon::prelude::*;
use twistroot_core::bounds::search_cap;
use twistroot_core::classify::{classify_at_degree, DataSetCache, Layout, RootClassRecord};
use twistroot_core::spec::SpecError;
use twistroot_core::{Mode, MulticurveSpec};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid multicurve: {0}")]
    Spec(#[from] SpecError),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Classifies every degree up to the cap, one task per degree. The result
/// is in degree order and does not depend on the number of workers.
pub fn classify(spec: &MulticurveSpec, mode: Mode, jobs: Option<usize>) -> Result<Vec<RootClassRecord>, RunError> {
    let layout = Layout::of(spec)?;
    classify_layout(&layout, search_cap(spec), mode, jobs)
}

pub fn classify_layout(
    layout: &Layout,
    cap: u64,
    mode: Mode,
    jobs: Option<usize>,
) -> Result<Vec<RootClassRecord>, RunError> {
    let work = || {
        (2..=cap)
            .into_par_iter()
            .map(|n| classify_at_degree(layout, n, mode, &mut DataSetCache::new()))
            .collect::<Vec<_>>()
            .concat()
    };
    match jobs {
        Some(j) => Ok(rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build()?.install(work)),
        None => Ok(work()),
    }
}
