//! Builders for the rich-distance configurations.
//!
//! * Odd `n = 2m + 1`: a regular `(m+1)`-gon and its rotation about a vertex.
//! * Even `n = 2m`: a regular `(m+1)`-gon and its mirror image across an edge.
//! * Generalized, `n = (m+1)k + r` with `2 ≤ r ≤ m+2`: a regular `(k+2)`-gon,
//!   `r - 2` rotated copies about one vertex, then `m + 2 - r` mirrored copies
//!   each glued to the union along one edge.
//!
//! Every build is checked exactly: point counts, how many points each new
//! copy shares with the union, and the distance claim itself.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{PointSet, Turn};
use crate::spectrum::{distance_spectrum, DistanceClass, DistanceSpectrum, SpectrumOptions};

/// Rotation turns tried, in [`Turn::pool`] order.
pub const TURN_POOL_SIZE: usize = 24;

/// Upper bound on search nodes for the generalized builder.
pub const SEARCH_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    /// `⌊n/4⌋` distances occurring at least `n + 1` times.
    RichDistance,
    /// `⌊n/(2(m+1))⌋` distances occurring at least `n + m` times.
    Generalized,
}

/// A reflection step: mirror polygon `copy` across the line through points `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeChoice {
    pub copy: usize,
    pub edge: (usize, usize),
}

/// Everything needed to rebuild a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub theorem: Theorem,
    pub n: usize,
    /// Richness surplus; 0 for [`Theorem::RichDistance`].
    pub m: usize,
    pub k: Option<usize>,
    pub r: Option<usize>,
    pub base_sides: u32,
    /// Rotations of the base polygon about its vertex 0.
    pub turns: Vec<Turn>,
    pub edges: Vec<EdgeChoice>,
}

impl ConstructionPlan {
    pub fn required_classes(&self) -> usize {
        match self.theorem {
            Theorem::RichDistance => self.n / 4,
            Theorem::Generalized => self.n / (2 * (self.m + 1)),
        }
    }

    pub fn required_multiplicity(&self) -> usize {
        match self.theorem {
            Theorem::RichDistance => self.n + 1,
            Theorem::Generalized => self.n + self.m,
        }
    }

    /// Rebuilds the point set, re-checking the sharing pattern of every copy.
    pub fn replay(&self) -> Result<PointSet> {
        let mut ps = PointSet::regular_ngon(self.base_sides)?;
        for &turn in &self.turns {
            let (next, shared) = ps.add_rotated_copy(0, 0, turn)?;
            expect_shared(shared, 1)?;
            ps = next;
        }
        for choice in &self.edges {
            let (next, shared) = ps.add_reflected_copy(choice.copy, choice.edge)?;
            expect_shared(shared, 2)?;
            ps = next;
        }
        if ps.len() != self.n {
            return Err(Error::ClaimViolation(format!("replay produced {} points, expected {}", ps.len(), self.n)));
        }
        Ok(ps)
    }
}

fn expect_shared(shared: usize, expected: usize) -> Result<()> {
    if shared == expected {
        Ok(())
    } else {
        Err(Error::Degenerate { shared, expected })
    }
}

/// Outcome of checking "at least `classes` distances occur at least `multiplicity` times".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub classes_required: usize,
    pub multiplicity_required: usize,
    /// Classes reaching the multiplicity, in spectrum order.
    pub witnesses: Vec<DistanceClass>,
    /// Number of classes reaching the required multiplicity.
    pub achieved_classes: usize,
    pub max_multiplicity: usize,
}

pub fn verify_spectrum(spec: &DistanceSpectrum, classes: usize, multiplicity: usize) -> Verdict {
    let witnesses: Vec<DistanceClass> =
        spec.classes().iter().filter(|c| c.multiplicity >= multiplicity).cloned().collect();
    Verdict {
        passed: witnesses.len() >= classes,
        classes_required: classes,
        multiplicity_required: multiplicity,
        achieved_classes: witnesses.len(),
        max_multiplicity: spec.max_multiplicity(),
        witnesses,
    }
}

pub fn verify_claim(ps: &PointSet, classes: usize, multiplicity: usize) -> Verdict {
    if classes == 0 {
        return Verdict {
            passed: true,
            classes_required: 0,
            multiplicity_required: multiplicity,
            witnesses: Vec::new(),
            achieved_classes: 0,
            max_multiplicity: 0,
        };
    }
    verify_spectrum(&distance_spectrum(ps), classes, multiplicity)
}

/// `n = (m+1)k + r` with `k = ⌊(n-2)/(m+1)⌋`, so `2 ≤ r ≤ m+2` and `k ≥ 1`.
pub fn decompose(n: usize, m: usize) -> Result<(usize, usize)> {
    if m < 1 {
        return Err(Error::InvalidParameter(format!("m must be at least 1, got {m}")));
    }
    if n < m + 3 {
        return Err(Error::BelowThreshold { n, min: m + 3 });
    }
    let k = (n - 2) / (m + 1);
    let r = n - (m + 1) * k;
    debug_assert!(k >= 1 && (2..=m + 2).contains(&r));
    Ok((k, r))
}

fn check_claim(ps: &PointSet, plan: &ConstructionPlan) -> Result<()> {
    if ps.len() != plan.n {
        return Err(Error::ClaimViolation(format!("built {} points, expected {}", ps.len(), plan.n)));
    }
    let v = verify_claim(ps, plan.required_classes(), plan.required_multiplicity());
    if !v.passed {
        return Err(Error::ClaimViolation(format!(
            "{} classes reach multiplicity {}, need {}",
            v.achieved_classes, v.multiplicity_required, v.classes_required
        )));
    }
    Ok(())
}

/// `⌊n/4⌋` squared distances each occurring at least `n + 1` times, `n ≥ 4`.
pub fn build_theorem1(n: usize) -> Result<(PointSet, ConstructionPlan)> {
    if n < 4 {
        return Err(Error::BelowThreshold { n, min: 4 });
    }
    let m = n / 2;
    let sides = u32::try_from(m + 1).map_err(|_| Error::InvalidParameter(format!("n = {n} is too large")))?;
    let base = PointSet::regular_ngon(sides)?;
    let mut plan = ConstructionPlan {
        theorem: Theorem::RichDistance,
        n,
        m: 0,
        k: None,
        r: None,
        base_sides: sides,
        turns: Vec::new(),
        edges: Vec::new(),
    };
    if n % 2 == 1 {
        if 2 * (m + 1) - 1 != n {
            return Err(Error::ClaimViolation(format!("odd point count identity fails for n = {n}")));
        }
        let mut last = Error::Degenerate { shared: 0, expected: 1 };
        for turn in Turn::pool().take(TURN_POOL_SIZE) {
            let (ps, shared) = base.add_rotated_copy(0, 0, turn)?;
            if shared != 1 {
                last = Error::Degenerate { shared, expected: 1 };
                continue;
            }
            plan.turns = alloc::vec![turn];
            match check_claim(&ps, &plan) {
                Ok(()) => return Ok((ps, plan)),
                Err(e) => last = e,
            }
        }
        Err(last)
    } else {
        if 2 * (m + 1) - 2 != n {
            return Err(Error::ClaimViolation(format!("even point count identity fails for n = {n}")));
        }
        let choice = EdgeChoice { copy: 0, edge: (0, 1) };
        let (ps, shared) = base.add_reflected_copy(choice.copy, choice.edge)?;
        expect_shared(shared, 2)?;
        plan.edges.push(choice);
        check_claim(&ps, &plan)?;
        Ok((ps, plan))
    }
}

/// Where a copy is attached to the rest: a single vertex or an edge, by cycle position.
#[derive(Clone, Copy, Debug)]
enum Anchor {
    Vertex(usize),
    Edge(usize),
}

struct Search {
    plan: ConstructionPlan,
    sides: usize,
    rotations: usize,
    reflections: usize,
    nodes: usize,
    pool: Vec<Turn>,
}

impl Search {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return Err(Error::ExhaustedSearch { n: self.plan.n, m: self.plan.m });
        }
        Ok(())
    }

    fn rotate(&mut self, ps: &PointSet, anchors: &mut Vec<Anchor>, from: usize) -> Result<Option<PointSet>> {
        if self.plan.turns.len() == self.rotations {
            return self.reflect(ps, anchors);
        }
        for idx in from..self.pool.len() {
            self.tick()?;
            let turn = self.pool[idx];
            let (next, shared) = ps.add_rotated_copy(0, 0, turn)?;
            if shared != 1 {
                continue;
            }
            self.plan.turns.push(turn);
            anchors.push(Anchor::Vertex(0));
            if let Some(done) = self.rotate(&next, anchors, idx + 1)? {
                return Ok(Some(done));
            }
            anchors.pop();
            self.plan.turns.pop();
        }
        Ok(None)
    }

    /// Reflection candidates: the newest copy first, preferring the edge
    /// opposite its anchor, then older copies.
    fn candidates(&self, ps: &PointSet, anchors: &[Anchor]) -> Vec<(usize, usize)> {
        let s = self.sides;
        let mut out = Vec::new();
        for copy in (0..ps.copies().len()).rev() {
            let start = match anchors[copy] {
                Anchor::Vertex(v) => v + s / 2,
                Anchor::Edge(p) => p + s.div_ceil(2),
            };
            for off in 0..s {
                out.push((copy, (start + off) % s));
            }
        }
        out
    }

    fn reflect(&mut self, ps: &PointSet, anchors: &mut Vec<Anchor>) -> Result<Option<PointSet>> {
        if self.plan.edges.len() == self.reflections {
            self.tick()?;
            return Ok(check_claim(ps, &self.plan).ok().map(|()| ps.clone()));
        }
        for (copy, pos) in self.candidates(ps, anchors) {
            self.tick()?;
            let cycle = &ps.copies()[copy];
            let edge = (cycle[pos], cycle[(pos + 1) % self.sides]);
            let (next, shared) = ps.add_reflected_copy(copy, edge)?;
            if shared != 2 {
                continue;
            }
            self.plan.edges.push(EdgeChoice { copy, edge });
            anchors.push(Anchor::Edge(pos));
            if let Some(done) = self.reflect(&next, anchors)? {
                return Ok(Some(done));
            }
            anchors.pop();
            self.plan.edges.pop();
        }
        Ok(None)
    }
}

/// `⌊n/(2(m+1))⌋` squared distances each occurring at least `n + m` times, `n ≥ m + 3`.
pub fn build_theorem2(n: usize, m: usize) -> Result<(PointSet, ConstructionPlan)> {
    let (k, r) = decompose(n, m)?;
    let sides = k + 2;
    let rotations = r - 2;
    let reflections = m + 2 - r;
    if (k + 2) + rotations * (k + 1) + reflections * k != n {
        return Err(Error::ClaimViolation(format!("point count identity fails for n = {n}, m = {m}")));
    }
    let base_sides = u32::try_from(sides).map_err(|_| Error::InvalidParameter(format!("n = {n} is too large")))?;
    let base = PointSet::regular_ngon(base_sides)?;
    let mut search = Search {
        plan: ConstructionPlan {
            theorem: Theorem::Generalized,
            n,
            m,
            k: Some(k),
            r: Some(r),
            base_sides,
            turns: Vec::new(),
            edges: Vec::new(),
        },
        sides,
        rotations,
        reflections,
        nodes: 0,
        pool: Turn::pool().take(TURN_POOL_SIZE).collect(),
    };
    let mut anchors = alloc::vec![Anchor::Vertex(0)];
    match search.rotate(&base, &mut anchors, 0)? {
        Some(ps) => Ok((ps, search.plan)),
        None => Err(Error::ExhaustedSearch { n, m }),
    }
}

/// Cross-copy pairs whose distance coincides with a distance realized inside some copy.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoincidenceReport {
    /// Pairs not inside any single copy that fall into a class with an in-copy pair.
    pub accidental_pairs: usize,
    /// Classes receiving such pairs.
    pub affected_classes: usize,
}

/// Diagnostic only; coincidences add to multiplicities and never hurt a claim.
pub fn coincidence_report(ps: &PointSet) -> CoincidenceReport {
    let mut structural = BTreeSet::new();
    for cycle in ps.copies() {
        for (a, &i) in cycle.iter().enumerate() {
            for &j in &cycle[a + 1..] {
                structural.insert((i.min(j), i.max(j)));
            }
        }
    }
    let spec = crate::spectrum::distance_spectrum_with(ps, SpectrumOptions { witness_cap: None });
    let mut report = CoincidenceReport::default();
    for class in spec.classes() {
        let inside = class.witnesses.iter().filter(|w| structural.contains(*w)).count();
        if inside > 0 && inside < class.witnesses.len() {
            report.accidental_pairs += class.witnesses.len() - inside;
            report.affected_classes += 1;
        }
    }
    report
}
