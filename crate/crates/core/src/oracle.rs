//! Floating-point cross-check of the exact spectrum.
//!
//! Coordinates are rounded to `f64`, squared distances are recomputed in
//! floating point, sorted, and clustered by a gap tolerance. When the exact
//! classes are certifiably farther apart than three tolerances, the two
//! engines must agree class for class; any disagreement is an error.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cyclo::{compare_real, FieldEmbedding, Interval};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::spectrum::{distance_spectrum_with, SpectrumOptions};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Separation, in tolerances, that exact classes need before the comparison is decisive.
pub const SEPARATION_MARGIN: f64 = 3.0;

const CERTIFY_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxPointSet {
    pub coords: Vec<(f64, f64)>,
    pub source_precision_bits: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxCluster {
    /// Smallest squared distance in the cluster.
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CrossCheck {
    Match { classes: usize },
    /// Exact classes closer than the margin allows; nothing was asserted.
    Inconclusive { min_gap: f64 },
}

/// Midpoints of certified enclosures of every point.
pub fn approx_points(ps: &PointSet, precision_bits: u32) -> ApproxPointSet {
    let emb = FieldEmbedding::new(ps.field(), precision_bits);
    let coords = ps.points().iter().map(|p| emb.eval(p).expect("point in set field").mid_f64()).collect();
    ApproxPointSet { coords, source_precision_bits: emb.precision_bits() }
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance > 0.0 && tolerance.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")))
    }
}

/// Sorted floating squared distances grouped wherever consecutive gaps are below `tolerance`.
pub fn approx_spectrum(aps: &ApproxPointSet, tolerance: f64) -> Result<Vec<ApproxCluster>> {
    check_tolerance(tolerance)?;
    let n = aps.coords.len();
    let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (i, &(xi, yi)) in aps.coords.iter().enumerate() {
        for &(xj, yj) in &aps.coords[i + 1..] {
            let (dx, dy) = (xi - xj, yi - yj);
            values.push(dx * dx + dy * dy);
        }
    }
    values.sort_by(f64::total_cmp);
    Ok(cluster_sorted(&values, tolerance))
}

pub(crate) fn cluster_sorted(values: &[f64], tolerance: f64) -> Vec<ApproxCluster> {
    let mut clusters: Vec<ApproxCluster> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &v in values {
        match clusters.last_mut() {
            Some(c) if v - prev < tolerance => c.multiplicity += 1,
            _ => clusters.push(ApproxCluster { value: v, multiplicity: 1 }),
        }
        prev = v;
    }
    clusters
}

/// Compares the exact spectrum against the floating-point one.
pub fn cross_check(ps: &PointSet, tolerance: f64) -> Result<CrossCheck> {
    check_tolerance(tolerance)?;
    let spec = distance_spectrum_with(ps, SpectrumOptions { witness_cap: Some(1) });
    let classes = spec.classes();
    let emb = FieldEmbedding::new(ps.field(), CERTIFY_BITS);
    let boxes: Vec<Interval> = classes
        .iter()
        .map(|c| emb.eval_re(&c.representative))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        boxes[a].separation(&boxes[b]).unwrap_or_else(|| {
            compare_real(&classes[a].representative, &classes[b].representative).unwrap_or(Ordering::Equal)
        })
    });

    let threshold = SEPARATION_MARGIN * tolerance;
    let mut min_gap = f64::INFINITY;
    let mut decisive = true;
    for w in order.windows(2) {
        let gap = boxes[w[1]].sub(&boxes[w[0]]);
        min_gap = min_gap.min(gap.mid_f64());
        if !gap.lower_exceeds(threshold) {
            decisive = false;
        }
    }
    if !decisive {
        return Ok(CrossCheck::Inconclusive { min_gap });
    }

    let approx = approx_spectrum(&approx_points(ps, 64), tolerance)?;
    let exact: Vec<(f64, usize)> = order.iter().map(|&k| (boxes[k].mid_f64(), classes[k].multiplicity)).collect();
    if approx.len() != exact.len() {
        return Err(Error::OracleMismatch(format!(
            "{} exact classes but {} floating clusters",
            exact.len(),
            approx.len()
        )));
    }
    for (a, &(value, mult)) in approx.iter().zip(&exact) {
        if a.multiplicity != mult || (a.value - value).abs() > threshold {
            return Err(Error::OracleMismatch(format!(
                "exact class {value:.12} x{mult} vs floating cluster {:.12} x{}",
                a.value, a.multiplicity
            )));
        }
    }
    Ok(CrossCheck::Match { classes: exact.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_theorem1;

    #[test]
    fn square_points() {
        let aps = approx_points(&PointSet::regular_ngon(4).unwrap(), 64);
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (got, want) in aps.coords.iter().zip(expect) {
            assert!((got.0 - want.0).abs() < 1e-12 && (got.1 - want.1).abs() < 1e-12);
        }
    }

    #[test]
    fn pentagon_vertex() {
        let aps = approx_points(&PointSet::regular_ngon(5).unwrap(), 64);
        let (x, y) = aps.coords[1];
        assert!((x - 0.309_016_994_374_947_4).abs() < 1e-15);
        assert!((y - 0.951_056_516_295_153_5).abs() < 1e-15);
    }

    #[test]
    fn empty_set() {
        let f = crate::cyclo::CycloField::new(3).unwrap();
        let ps = PointSet::from_points(&f, Vec::new()).unwrap();
        assert!(approx_points(&ps, 64).coords.is_empty());
        assert_eq!(cross_check(&ps, 1e-9).unwrap(), CrossCheck::Match { classes: 0 });
    }

    fn summary(c: &[ApproxCluster]) -> Vec<(i64, usize)> {
        c.iter().map(|c| ((c.value * 1e6).round() as i64, c.multiplicity)).collect()
    }

    #[test]
    fn clustered_spectra() {
        let sq = approx_spectrum(&approx_points(&PointSet::regular_ngon(4).unwrap(), 64), 1e-9).unwrap();
        assert_eq!(summary(&sq), [(2_000_000, 4), (4_000_000, 2)]);
        let hex = approx_spectrum(&approx_points(&PointSet::regular_ngon(6).unwrap(), 64), 1e-9).unwrap();
        assert_eq!(summary(&hex), [(1_000_000, 6), (3_000_000, 6), (4_000_000, 3)]);
    }

    #[test]
    fn near_values_merge() {
        let c = cluster_sorted(&[1.0, 1.0 + 1e-12, 2.0], 1e-9);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].multiplicity, 2);
        assert!(approx_spectrum(&ApproxPointSet { coords: Vec::new(), source_precision_bits: 64 }, 0.0).is_err());
    }

    #[test]
    fn cross_checks() {
        let sq = PointSet::regular_ngon(4).unwrap();
        assert_eq!(cross_check(&sq, 1e-9).unwrap(), CrossCheck::Match { classes: 2 });
        let (fig1, _) = build_theorem1(9).unwrap();
        assert!(matches!(cross_check(&fig1, 1e-9).unwrap(), CrossCheck::Match { .. }));
        // gaps in the square spectrum are 2; a tolerance of 1 cannot certify them
        assert!(matches!(cross_check(&sq, 1.0).unwrap(), CrossCheck::Inconclusive { .. }));
    }
}
