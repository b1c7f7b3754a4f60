//! Parallel parameter sweeps over the constructions.
//!
//! Work is spread with rayon. `RICHDIST_THREADS` overrides the worker count.

use std::ops::Range;

use rayon::prelude::*;
use richdist_core::constructions::verify_spectrum;
use richdist_core::oracle::{cross_check, CrossCheck, DEFAULT_TOLERANCE};
use richdist_core::spectrum::{diameter_class, partial_spectrum, SpectrumOptions};
use richdist_core::{build_theorem1, build_theorem2, ConstructionPlan, DistanceSpectrum, PointSet, Theorem};

use crate::points_file;
use crate::Error;

pub const THREADS_VAR: &str = "RICHDIST_THREADS";

/// A pool sized by `RICHDIST_THREADS`, or rayon's default when unset or invalid.
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Row ranges with roughly equal pair counts.
pub fn balanced_rows(n: usize, parts: usize) -> Vec<Range<usize>> {
    let total = n * n.saturating_sub(1) / 2;
    let parts = parts.max(1);
    let mut out = Vec::with_capacity(parts);
    let (mut start, mut acc) = (0, 0);
    for i in 0..n {
        acc += n - 1 - i;
        if acc * parts >= total * (out.len() + 1) && out.len() + 1 < parts {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out.push(start..n);
    out
}

/// Same result as `distance_spectrum_with`, computed over row blocks in parallel.
pub fn parallel_spectrum(ps: &PointSet, options: SpectrumOptions) -> DistanceSpectrum {
    let parts = (rayon::current_num_threads() * 4).min(ps.len().max(1));
    let blocks: Vec<DistanceSpectrum> =
        balanced_rows(ps.len(), parts).into_par_iter().map(|rows| partial_spectrum(ps, rows, options)).collect();
    DistanceSpectrum::merge(blocks, options)
}

/// Everything checked about one generated configuration.
#[derive(Clone, Debug)]
pub struct SweepRecord {
    pub plan: ConstructionPlan,
    pub points: usize,
    pub required_classes: usize,
    pub required_multiplicity: usize,
    pub achieved_classes: usize,
    pub point_identity_holds: bool,
    pub diameter_multiplicity: usize,
    pub oracle: Result<CrossCheck, richdist_core::Error>,
    pub round_trip: bool,
}

impl SweepRecord {
    pub fn claim_holds(&self) -> bool {
        self.points == self.plan.n && self.achieved_classes >= self.required_classes && self.point_identity_holds
    }

    pub fn label(&self) -> String {
        match self.plan.theorem {
            Theorem::RichDistance => format!("n={}", self.plan.n),
            Theorem::Generalized => format!("n={} m={}", self.plan.n, self.plan.m),
        }
    }
}

fn point_identity(plan: &ConstructionPlan) -> bool {
    match (plan.theorem, plan.k, plan.r) {
        (Theorem::Generalized, Some(k), Some(r)) => {
            let m = plan.m;
            r >= 2 && r <= m + 2 && (k + 2) + (r - 2) * (k + 1) + (m + 2 - r) * k == plan.n
        }
        (Theorem::RichDistance, _, _) => {
            let sides = plan.base_sides as usize;
            if plan.n % 2 == 1 { 2 * sides - 1 == plan.n } else { 2 * sides - 2 == plan.n }
        }
        _ => false,
    }
}

/// Checks a built configuration against its plan.
pub fn examine(ps: &PointSet, plan: ConstructionPlan) -> SweepRecord {
    let spec = parallel_spectrum(ps, SpectrumOptions { witness_cap: Some(1) });
    let verdict = verify_spectrum(&spec, plan.required_classes(), plan.required_multiplicity());
    let diameter = diameter_class(&spec).map_or(0, |k| spec.classes()[k].multiplicity);
    let round_trip = points_file::parse(&points_file::serialize(ps)).is_ok_and(|back| &back == ps);
    SweepRecord {
        points: ps.len(),
        required_classes: plan.required_classes(),
        required_multiplicity: plan.required_multiplicity(),
        achieved_classes: verdict.achieved_classes,
        point_identity_holds: point_identity(&plan),
        diameter_multiplicity: diameter,
        oracle: cross_check(ps, DEFAULT_TOLERANCE),
        round_trip,
        plan,
    }
}

pub fn sweep_theorem1(ns: Range<usize>) -> Vec<Result<SweepRecord, Error>> {
    thread_pool().install(|| {
        ns.into_par_iter()
            .map(|n| {
                let (ps, plan) = build_theorem1(n)?;
                Ok(examine(&ps, plan))
            })
            .collect()
    })
}

/// Every `(n, m)` with `m` in `ms` and `m + 3 ≤ n < n_end`.
pub fn sweep_theorem2(ms: Range<usize>, n_end: usize) -> Vec<Result<SweepRecord, Error>> {
    let jobs: Vec<(usize, usize)> = ms.flat_map(|m| (m + 3..n_end).map(move |n| (n, m))).collect();
    thread_pool().install(|| {
        jobs.into_par_iter()
            .map(|(n, m)| {
                let (ps, plan) = build_theorem2(n, m)?;
                Ok(examine(&ps, plan))
            })
            .collect()
    })
}
