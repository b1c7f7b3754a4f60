//! Exact distance spectra: squared pairwise distances grouped into equality
//! classes by hashing their canonical forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use hashbrown::HashMap;

use crate::cyclo::{compare_real, CycloNum, FieldEmbedding, START_PRECISION};
use crate::error::{Error, Result};
use crate::geometry::PointSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceClass {
    /// The common squared distance.
    pub representative: CycloNum,
    pub multiplicity: usize,
    /// Lexicographically first pair `(i, j)`, `i < j`, realizing the class.
    pub first_witness: (usize, usize),
    /// Witness pairs in lexicographic order, possibly capped.
    pub witnesses: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectrumOptions {
    /// Keep at most this many witnesses per class; `None` keeps all of them.
    pub witness_cap: Option<usize>,
}

/// Squared-distance classes of a point set, ordered by first witness pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceSpectrum {
    classes: Vec<DistanceClass>,
    total_pairs: usize,
    point_count: usize,
}

impl DistanceSpectrum {
    pub fn classes(&self) -> &[DistanceClass] {
        &self.classes
    }

    pub fn total_pairs(&self) -> usize {
        self.total_pairs
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// Number of classes occurring at least `q` times.
    pub fn rich_classes(&self, q: usize) -> usize {
        self.classes.iter().filter(|c| c.multiplicity >= q).count()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.classes.iter().map(|c| c.multiplicity).max().unwrap_or(0)
    }

    /// Merges spectra of disjoint row ranges given in increasing row order.
    /// The result does not depend on how the rows were partitioned.
    pub fn merge(parts: impl IntoIterator<Item = DistanceSpectrum>, options: SpectrumOptions) -> DistanceSpectrum {
        let mut classes: Vec<DistanceClass> = Vec::new();
        let mut index: HashMap<CycloNum, usize> = HashMap::new();
        let mut total_pairs = 0;
        let mut point_count = 0;
        for part in parts {
            total_pairs += part.total_pairs;
            point_count = point_count.max(part.point_count);
            for class in part.classes {
                match index.get(&class.representative) {
                    Some(&k) => {
                        let target = &mut classes[k];
                        target.multiplicity += class.multiplicity;
                        target.witnesses.extend(class.witnesses);
                        if let Some(cap) = options.witness_cap {
                            target.witnesses.truncate(cap);
                        }
                    }
                    None => {
                        index.insert(class.representative.clone(), classes.len());
                        classes.push(class);
                    }
                }
            }
        }
        DistanceSpectrum { classes, total_pairs, point_count }
    }
}

/// The full spectrum with every witness pair kept.
pub fn distance_spectrum(ps: &PointSet) -> DistanceSpectrum {
    partial_spectrum(ps, 0..ps.len(), SpectrumOptions::default())
}

pub fn distance_spectrum_with(ps: &PointSet, options: SpectrumOptions) -> DistanceSpectrum {
    partial_spectrum(ps, 0..ps.len(), options)
}

/// Spectrum of the pairs `(i, j)` with `i` in `rows` and `j > i`.
pub fn partial_spectrum(ps: &PointSet, rows: Range<usize>, options: SpectrumOptions) -> DistanceSpectrum {
    let n = ps.len();
    let mut classes: Vec<DistanceClass> = Vec::new();
    let mut index: HashMap<CycloNum, usize> = HashMap::new();
    let mut total_pairs = 0;
    let cap = options.witness_cap.unwrap_or(usize::MAX);
    for i in rows.start..rows.end.min(n) {
        for j in i + 1..n {
            total_pairs += 1;
            let d = ps.squared_distance(i, j);
            match index.get(&d) {
                Some(&k) => {
                    let class = &mut classes[k];
                    class.multiplicity += 1;
                    if class.witnesses.len() < cap {
                        class.witnesses.push((i, j));
                    }
                }
                None => {
                    index.insert(d.clone(), classes.len());
                    classes.push(DistanceClass {
                        representative: d,
                        multiplicity: 1,
                        first_witness: (i, j),
                        witnesses: if cap > 0 { alloc::vec![(i, j)] } else { Vec::new() },
                    });
                }
            }
        }
    }
    DistanceSpectrum { classes, total_pairs, point_count: n }
}

pub fn rich_classes(spec: &DistanceSpectrum, q: usize) -> usize {
    spec.rich_classes(q)
}

/// Checks that the regular `m`-gon has exactly `⌊(m-1)/2⌋` classes of
/// multiplicity `m` (plus, for even `m`, one diameter class of multiplicity
/// `m/2`) and returns that count.
pub fn regular_polygon_class_count(m: u32) -> Result<usize> {
    let ps = PointSet::regular_ngon(m)?;
    let spec = distance_spectrum(&ps);
    let full = spec.classes.iter().filter(|c| c.multiplicity == m as usize).count();
    let expected = ((m - 1) / 2) as usize;
    if full != expected {
        return Err(Error::ClaimViolation(alloc::format!(
            "regular {m}-gon has {full} classes of multiplicity {m}, expected {expected}"
        )));
    }
    let rest: Vec<usize> = spec.classes.iter().map(|c| c.multiplicity).filter(|&k| k != m as usize).collect();
    let expected_rest: &[usize] = if m.is_multiple_of(2) { &[(m / 2) as usize] } else { &[] };
    if rest != expected_rest {
        return Err(Error::ClaimViolation(alloc::format!(
            "regular {m}-gon has leftover multiplicities {rest:?}, expected {expected_rest:?}"
        )));
    }
    Ok(full)
}

/// Index of the largest class representative, certified.
pub fn diameter_class(spec: &DistanceSpectrum) -> Option<usize> {
    let first = spec.classes.first()?;
    let emb = FieldEmbedding::new(first.representative.field(), START_PRECISION);
    let boxes: Vec<_> = spec
        .classes
        .iter()
        .map(|c| emb.eval_re(&c.representative).expect("representatives share the point field"))
        .collect();
    // anything whose upper end is below the best lower end cannot be the maximum
    let best_lo = (0..boxes.len())
        .max_by(|&a, &b| {
            let (la, _, s) = boxes[a].raw();
            let (lb, _, _) = boxes[b].raw();
            debug_assert_eq!(s, boxes[b].raw().2);
            la.cmp(lb)
        })
        .unwrap();
    let (floor, _, _) = boxes[best_lo].raw();
    let mut winner = best_lo;
    for (k, b) in boxes.iter().enumerate() {
        if k == winner || b.raw().1 < floor {
            continue;
        }
        let ord = compare_real(&spec.classes[k].representative, &spec.classes[winner].representative)
            .expect("squared distances are real");
        if ord == Ordering::Greater {
            winner = k;
        }
    }
    Some(winner)
}

/// The largest squared distance and how often it occurs.
pub fn diameter_multiplicity(ps: &PointSet) -> Result<(CycloNum, usize)> {
    if ps.len() < 2 {
        return Err(Error::TooFewPoints { need: 2, got: ps.len() });
    }
    let spec = distance_spectrum_with(ps, SpectrumOptions { witness_cap: Some(1) });
    let k = diameter_class(&spec).expect("at least one pair");
    let c = &spec.classes[k];
    Ok((c.representative.clone(), c.multiplicity))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumStats {
    pub points: usize,
    pub total_pairs: usize,
    pub distinct: usize,
    pub max_multiplicity: usize,
    /// multiplicity → number of classes with that multiplicity
    pub histogram: BTreeMap<usize, usize>,
    /// Classes occurring at least once but at most `n` times (informational).
    pub at_most_n: usize,
}

pub fn spectrum_stats(spec: &DistanceSpectrum) -> SpectrumStats {
    let mut histogram = BTreeMap::new();
    for c in &spec.classes {
        *histogram.entry(c.multiplicity).or_insert(0) += 1;
    }
    SpectrumStats {
        points: spec.point_count,
        total_pairs: spec.total_pairs,
        distinct: spec.classes.len(),
        max_multiplicity: spec.max_multiplicity(),
        histogram,
        at_most_n: spec.classes.iter().filter(|c| c.multiplicity <= spec.point_count).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Rational;

    fn int(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    fn summary(spec: &DistanceSpectrum) -> Vec<(Rational, usize)> {
        spec.classes().iter().map(|c| (c.representative.as_rational().unwrap(), c.multiplicity)).collect()
    }

    #[test]
    fn square_spectrum() {
        let spec = distance_spectrum(&PointSet::regular_ngon(4).unwrap());
        assert_eq!(summary(&spec), [(int(2), 4), (int(4), 2)]);
        assert_eq!(spec.total_pairs(), 6);
        assert_eq!(spec.classes()[1].witnesses, [(0, 2), (1, 3)]);
        assert_eq!(rich_classes(&spec, 4), 1);
        assert_eq!(rich_classes(&spec, 1), 2);
        assert_eq!(rich_classes(&spec, 7), 0);
    }

    #[test]
    fn hexagon_spectrum() {
        let spec = distance_spectrum(&PointSet::regular_ngon(6).unwrap());
        assert_eq!(summary(&spec), [(int(1), 6), (int(3), 6), (int(4), 3)]);
    }

    #[test]
    fn single_point_is_empty() {
        let sq = PointSet::regular_ngon(4).unwrap();
        let one = PointSet::from_points(sq.field(), alloc::vec![sq.points()[0].clone()]).unwrap();
        let spec = distance_spectrum(&one);
        assert!(spec.classes().is_empty());
        assert_eq!(spec.total_pairs(), 0);
        assert_eq!(spectrum_stats(&spec).distinct, 0);
        assert_eq!(diameter_multiplicity(&one).unwrap_err(), Error::TooFewPoints { need: 2, got: 1 });
    }

    #[test]
    fn claim_counts() {
        assert_eq!(regular_polygon_class_count(5).unwrap(), 2);
        assert_eq!(regular_polygon_class_count(4).unwrap(), 1);
        assert_eq!(regular_polygon_class_count(6).unwrap(), 2);
        assert_eq!(regular_polygon_class_count(3).unwrap(), 1);
    }

    #[test]
    fn diameters() {
        let (d, k) = diameter_multiplicity(&PointSet::regular_ngon(4).unwrap()).unwrap();
        assert_eq!((d.as_rational().unwrap(), k), (int(4), 2));
        let (d, k) = diameter_multiplicity(&PointSet::regular_ngon(6).unwrap()).unwrap();
        assert_eq!((d.as_rational().unwrap(), k), (int(4), 3));
        let sq = PointSet::regular_ngon(4).unwrap();
        let two = PointSet::from_points(sq.field(), sq.points()[..2].to_vec()).unwrap();
        let (d, k) = diameter_multiplicity(&two).unwrap();
        assert_eq!((d.as_rational().unwrap(), k), (int(2), 1));
        // odd polygon: the longest diagonal class
        let (d, k) = diameter_multiplicity(&PointSet::regular_ngon(7).unwrap()).unwrap();
        assert_eq!(k, 7);
        assert!((crate::cyclo::eval_interval(&d, 64).re.mid_f64() - 3.801_937_735_804_838).abs() < 1e-12);
    }

    #[test]
    fn stats() {
        let s = spectrum_stats(&distance_spectrum(&PointSet::regular_ngon(4).unwrap()));
        assert_eq!((s.distinct, s.max_multiplicity), (2, 4));
        let s = spectrum_stats(&distance_spectrum(&PointSet::regular_ngon(7).unwrap()));
        assert_eq!((s.distinct, s.max_multiplicity), (3, 7));
        assert_eq!(s.histogram.get(&7), Some(&3));
        assert_eq!(s.at_most_n, 3);
    }

    #[test]
    fn partition_independence() {
        let ps = PointSet::regular_ngon(9).unwrap().add_rotated_copy(0, 0, crate::geometry::Turn::HALF).unwrap().0;
        let whole = distance_spectrum(&ps);
        for split in [1, 3, 8, 16] {
            let parts = [0..split.min(ps.len()), split.min(ps.len())..ps.len()];
            let merged = DistanceSpectrum::merge(
                parts.iter().map(|r| partial_spectrum(&ps, r.clone(), SpectrumOptions::default())),
                SpectrumOptions::default(),
            );
            assert_eq!(merged, whole);
        }
    }

    #[test]
    fn witness_cap() {
        let ps = PointSet::regular_ngon(8).unwrap();
        let spec = distance_spectrum_with(&ps, SpectrumOptions { witness_cap: Some(2) });
        assert!(spec.classes().iter().all(|c| c.witnesses.len() <= 2));
        assert_eq!(spec.classes()[0].multiplicity, 8);
    }
}
