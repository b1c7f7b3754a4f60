//! The four reference configurations: build, verify exactly, render.

use std::fmt::Write as _;
use std::path::Path;

use richdist_core::constructions::verify_spectrum;
use richdist_core::{build_theorem1, build_theorem2, distance_spectrum, PointSet};

use crate::svg::{render_svg, SvgOptions};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub name: &'static str,
    /// `None` selects the rotation/reflection builder, `Some(m)` the generalized one.
    pub m: Option<usize>,
    pub n: usize,
    pub classes: usize,
    pub multiplicity: usize,
}

pub const FIGURES: [FigureSpec; 4] = [
    FigureSpec { name: "rotated-pentagons", m: None, n: 9, classes: 2, multiplicity: 10 },
    FigureSpec { name: "rotated-hexagons", m: None, n: 11, classes: 2, multiplicity: 12 },
    FigureSpec { name: "reflected-hexagons", m: None, n: 10, classes: 2, multiplicity: 11 },
    FigureSpec { name: "triangles-m3", m: Some(3), n: 8, classes: 1, multiplicity: 11 },
];

#[derive(Clone, Debug)]
pub struct FigureResult {
    pub spec: FigureSpec,
    pub points: usize,
    pub achieved_classes: usize,
    pub max_multiplicity: usize,
    pub passed: bool,
    pub svg: String,
}

impl FigureSpec {
    pub fn build(&self) -> Result<PointSet, Error> {
        let (ps, _) = match self.m {
            None => build_theorem1(self.n)?,
            Some(m) => build_theorem2(self.n, m)?,
        };
        Ok(ps)
    }

    pub fn check(&self) -> Result<FigureResult, Error> {
        let ps = self.build()?;
        let verdict = verify_spectrum(&distance_spectrum(&ps), self.classes, self.multiplicity);
        let svg = render_svg(&ps, &SvgOptions { highlight: self.classes, ..SvgOptions::default() })?;
        Ok(FigureResult {
            spec: *self,
            points: ps.len(),
            achieved_classes: verdict.achieved_classes,
            max_multiplicity: verdict.max_multiplicity,
            passed: verdict.passed && ps.len() == self.n,
            svg,
        })
    }
}

/// Checks every figure and, with `outdir`, writes `<name>.svg` files there.
pub fn reproduce(outdir: Option<&Path>) -> Result<Vec<FigureResult>, Error> {
    let results = FIGURES.iter().map(FigureSpec::check).collect::<Result<Vec<_>, _>>()?;
    if let Some(dir) = outdir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for r in &results {
            let path = dir.join(format!("{}.svg", r.spec.name));
            std::fs::write(&path, &r.svg).map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(results)
}

pub fn table(results: &[FigureResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<20} {:>6} {:>8} {:>8} {:>8} {:>8}  result", "figure", "points", "classes", "need", "mult>=", "max");
    for r in results {
        let _ = writeln!(
            out,
            "{:<20} {:>6} {:>8} {:>8} {:>8} {:>8}  {}",
            r.spec.name,
            r.points,
            r.achieved_classes,
            r.spec.classes,
            r.spec.multiplicity,
            r.max_multiplicity,
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_figures_pass() {
        let results = reproduce(None).unwrap();
        assert!(results.iter().all(|r| r.passed), "{}", table(&results));
        let points: Vec<_> = results.iter().map(|r| r.points).collect();
        assert_eq!(points, [9, 11, 10, 8]);
    }
}
