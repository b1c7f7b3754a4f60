//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use richdist::figures::{self, FIGURES};
use richdist::points_file;
use richdist::sweep::{self, SweepRecord};
use richdist_core::oracle::{cross_check, CrossCheck, DEFAULT_TOLERANCE};
use richdist_core::spectrum::regular_polygon_class_count;
use richdist_core::{
    build_theorem1, build_theorem2, distance_spectrum, squared_distance, CycloField, CycloNum, DistanceSpectrum,
    PointSet, Rational, Turn,
};

struct Outcome {
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    Outcome { passed, detail, elapsed: start.elapsed() }
}

/// Failures as short labels, at most a handful.
fn summarize(failures: &[String]) -> String {
    let mut s = failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
    if failures.len() > 5 {
        s.push_str(&format!("; ... {} more", failures.len() - 5));
    }
    s
}

fn unwrap_records(results: Vec<Result<SweepRecord, richdist::Error>>, failures: &mut Vec<String>) -> Vec<SweepRecord> {
    results
        .into_iter()
        .filter_map(|r| r.map_err(|e| failures.push(format!("build error: {e}"))).ok())
        .collect()
}

// ---- criterion 7 helpers -------------------------------------------------

fn random_element(rng: &mut ChaCha8Rng, field: &Arc<CycloField>) -> CycloNum {
    let n = field.order() as i64;
    let mut acc = CycloNum::zero(field);
    for _ in 0..rng.random_range(0..5) {
        let q = Rational::new(rng.random_range(-4i64..=4).into(), rng.random_range(1i64..=3).into());
        let term = &CycloNum::from_rational(field, &q) * &CycloNum::zeta_pow(field, rng.random_range(0..n));
        acc = &acc + &term;
    }
    acc
}

/// Checks the field laws on `a`, `b`, `c`; returns a description of the first violation.
fn field_laws(a: &CycloNum, b: &CycloNum, c: &CycloNum, bigger: &Arc<CycloField>) -> Option<&'static str> {
    let f = a.field();
    let one = CycloNum::one(f);
    let checks: [(&str, bool); 14] = [
        ("add assoc", &(a + b) + c == a + &(b + c)),
        ("mul assoc", &(a * b) * c == a * &(b * c)),
        ("add comm", a + b == b + a),
        ("mul comm", a * b == b * a),
        ("distrib", a * &(b + c) == &(a * b) + &(a * c)),
        ("identities", (a + &CycloNum::zero(f)) == *a && (a * &one) == *a),
        ("negation", (a + &(-a)).is_zero()),
        ("conj involution", a.conj().conj() == *a),
        ("conj mul", (a * b).conj() == &a.conj() * &b.conj()),
        ("norm real", a.norm_sq().is_real()),
        ("inverse", a.is_zero() || a * &a.inv().unwrap() == one),
        ("inverse conj", a.is_zero() || a.conj().inv().unwrap() == a.inv().unwrap().conj()),
        ("embed hom", {
            let (ea, eb) = (a.embed(bigger).unwrap(), b.embed(bigger).unwrap());
            (a * b).embed(bigger).unwrap() == &ea * &eb
                && (a + b).embed(bigger).unwrap() == &ea + &eb
                && a.conj().embed(bigger).unwrap() == ea.conj()
        }),
        ("embed injective", (a == b) == (a.embed(bigger).unwrap() == b.embed(bigger).unwrap())),
    ];
    checks.iter().find(|(_, ok)| !ok).map(|(name, _)| *name)
}

fn pairwise_grouping_agrees(ps: &PointSet, spec: &DistanceSpectrum) -> bool {
    let mut classes: Vec<(CycloNum, Vec<(usize, usize)>)> = Vec::new();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let d = squared_distance(&ps.points()[i], &ps.points()[j]).unwrap();
            match classes.iter_mut().find(|(r, _)| (r - &d).is_zero()) {
                Some((_, w)) => w.push((i, j)),
                None => classes.push((d, vec![(i, j)])),
            }
        }
    }
    spec.classes().len() == classes.len()
        && spec.classes().iter().zip(&classes).all(|(c, (r, w))| &c.representative == r && &c.witnesses == w)
}

fn random_transform(rng: &mut ChaCha8Rng, ps: &PointSet) -> PointSet {
    let n = ps.len();
    let turn = Turn::pool().nth(rng.random_range(0..10)).unwrap();
    if rng.random_bool(0.5) {
        ps.rotate_about(&ps.points()[rng.random_range(0..n)].clone(), turn).unwrap()
    } else {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        ps.reflect_line(&ps.points()[a].clone(), &ps.points()[b].clone()).unwrap()
    }
}

fn same_spectrum(a: &DistanceSpectrum, b: &DistanceSpectrum) -> bool {
    a.classes().len() == b.classes().len()
        && a.classes().iter().zip(b.classes()).all(|(x, y)| {
            let f = CycloField::join(x.representative.field(), y.representative.field());
            x.representative.embed(&f).unwrap() == y.representative.embed(&f).unwrap()
                && x.multiplicity == y.multiplicity
                && x.witnesses == y.witnesses
        })
}

fn main() {
    let threads = std::env::var(sweep::THREADS_VAR).unwrap_or_else(|_| "default".into());
    println!("acceptance run (worker threads: {threads})");
    let mut outcomes: Vec<(&str, Outcome)> = Vec::new();
    // configurations with at most 12 points, for the pairwise-grouping oracle
    let mut small_sets: Vec<PointSet> = Vec::new();
    let mut oracle_failures: Vec<String> = Vec::new();
    let mut round_trip_failures: Vec<String> = Vec::new();
    let check_oracle = |label: String, ps: &PointSet, failures: &mut Vec<String>| match cross_check(ps, DEFAULT_TOLERANCE) {
        Ok(CrossCheck::Match { .. }) => {}
        Ok(CrossCheck::Inconclusive { min_gap }) => failures.push(format!("{label}: inconclusive, gap {min_gap:e}")),
        Err(e) => failures.push(format!("{label}: {e}")),
    };

    // 1. figures
    let out = timed(|| match figures::reproduce(None) {
        Ok(results) => {
            let ok = results.iter().all(|r| r.passed);
            let detail = results
                .iter()
                .map(|r| format!("{} pts {}x>={}", r.points, r.achieved_classes, r.spec.multiplicity))
                .collect::<Vec<_>>()
                .join(", ");
            (ok, detail)
        }
        Err(e) => (false, e.to_string()),
    });
    outcomes.push(("1 figure reproduction", out));
    for f in FIGURES {
        let ps = f.build().unwrap();
        check_oracle(format!("figure {}", f.name), &ps, &mut oracle_failures);
        if points_file::parse(&points_file::serialize(&ps)).ok().as_ref() != Some(&ps) {
            round_trip_failures.push(format!("figure {}", f.name));
        }
        small_sets.push(ps);
    }

    // 2. and 3. sweeps
    let mut sweep_failures = Vec::new();
    let start = Instant::now();
    let records1 = unwrap_records(sweep::sweep_theorem1(4..129), &mut sweep_failures);
    let t1 = start.elapsed();
    let mut failures1 = sweep_failures.clone();
    failures1.extend(records1.iter().filter(|r| !r.claim_holds()).map(SweepRecord::label));
    let ok1 = failures1.is_empty() && records1.len() == 125;
    outcomes.push((
        "2 rotation/reflection sweep n=4..128",
        Outcome {
            passed: ok1,
            detail: if ok1 { format!("{} configurations", records1.len()) } else { summarize(&failures1) },
            elapsed: t1,
        },
    ));

    let mut sweep_failures = Vec::new();
    let start = Instant::now();
    let records2 = unwrap_records(sweep::sweep_theorem2(1..6, 81), &mut sweep_failures);
    let t2 = start.elapsed();
    let expected2: usize = (1..6).map(|m| 80 - (m + 3) + 1).sum();
    let mut failures2 = sweep_failures.clone();
    failures2.extend(records2.iter().filter(|r| !r.claim_holds()).map(SweepRecord::label));
    let ok2 = failures2.is_empty() && records2.len() == expected2;
    outcomes.push((
        "3 generalized sweep m=1..5 n=m+3..80",
        Outcome {
            passed: ok2,
            detail: if ok2 { format!("{} configurations, point-count identity checked", records2.len()) } else { summarize(&failures2) },
            elapsed: t2,
        },
    ));

    // 4. regular polygons
    let polygons: Vec<PointSet> = (3..=100).map(|m| PointSet::regular_ngon(m).unwrap()).collect();
    let out = timed(|| {
        let failures: Vec<String> = (3..=100u32)
            .into_par_iter()
            .filter_map(|m| match regular_polygon_class_count(m) {
                Ok(k) if k == ((m - 1) / 2) as usize => None,
                Ok(k) => Some(format!("m={m}: {k} classes")),
                Err(e) => Some(format!("m={m}: {e}")),
            })
            .collect();
        (failures.is_empty(), if failures.is_empty() { "m=3..100".to_string() } else { summarize(&failures) })
    });
    outcomes.push(("4 regular polygon classes", out));

    // 5. diameter multiplicity
    let out = timed(|| {
        let failures: Vec<String> = records1
            .iter()
            .chain(&records2)
            .filter(|r| r.diameter_multiplicity == 0 || r.diameter_multiplicity > r.points)
            .map(|r| format!("{}: diameter x{}", r.label(), r.diameter_multiplicity))
            .collect();
        let worst = records1.iter().chain(&records2).map(|r| r.diameter_multiplicity as f64 / r.points as f64).fold(0.0, f64::max);
        let detail = if failures.is_empty() {
            format!("{} configurations, max diameter multiplicity / n = {worst:.3}", records1.len() + records2.len())
        } else {
            summarize(&failures)
        };
        (failures.is_empty(), detail)
    });
    outcomes.push(("5 diameter multiplicity <= n", out));

    // 6. oracle agreement
    let out = timed(|| {
        for r in records1.iter().chain(&records2) {
            match &r.oracle {
                Ok(CrossCheck::Match { .. }) => {}
                Ok(CrossCheck::Inconclusive { min_gap }) => {
                    oracle_failures.push(format!("{}: inconclusive, gap {min_gap:e}", r.label()))
                }
                Err(e) => oracle_failures.push(format!("{}: {e}", r.label())),
            }
        }
        let poly_failures: Vec<String> = polygons
            .par_iter()
            .filter_map(|ps| match cross_check(ps, DEFAULT_TOLERANCE) {
                Ok(CrossCheck::Match { .. }) => None,
                other => Some(format!("{}-gon: {other:?}", ps.len())),
            })
            .collect();
        oracle_failures.extend(poly_failures);
        let total = FIGURES.len() + records1.len() + records2.len() + polygons.len();
        let ok = oracle_failures.is_empty();
        (ok, if ok { format!("{total} configurations match at tol 1e-9") } else { summarize(&oracle_failures) })
    });
    outcomes.push(("6 oracle agreement", out));

    // 7. property suites
    let out = timed(|| {
        let mut failures: Vec<String> = Vec::new();

        let fields: Vec<Arc<CycloField>> = (1..=180).map(|n| CycloField::new(n).unwrap()).collect();
        const TRIALS: usize = 3400;
        let law_failures: Vec<String> = (0..TRIALS)
            .into_par_iter()
            .filter_map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + t as u64);
                let n = rng.random_range(1..=60usize);
                let f = &fields[n - 1];
                let bigger = &fields[n * rng.random_range(1..=3) - 1];
                let (a, b, c) = (random_element(&mut rng, f), random_element(&mut rng, f), random_element(&mut rng, f));
                field_laws(&a, &b, &c, bigger).map(|law| format!("N={n} trial {t}: {law}"))
            })
            .collect();
        failures.extend(law_failures);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..400 {
            let sides = rng.random_range(3..=12u32);
            let mut ps = PointSet::regular_ngon(sides).unwrap();
            if rng.random_bool(0.5) {
                let cycle = ps.copies()[0].clone();
                let e = rng.random_range(0..cycle.len());
                let (next, _) = ps.add_reflected_copy(0, (cycle[e], cycle[(e + 1) % cycle.len()])).unwrap();
                if next.len() <= 12 {
                    ps = next;
                }
            }
            let spec = distance_spectrum(&ps);
            let n = ps.len();
            if spec.classes().iter().map(|c| c.multiplicity).sum::<usize>() != n * (n - 1) / 2 {
                failures.push(format!("trial {trial}: multiplicities do not sum to n(n-1)/2"));
            }
            let moved = random_transform(&mut rng, &ps);
            if !same_spectrum(&spec, &distance_spectrum(&moved)) {
                failures.push(format!("trial {trial}: spectrum changed under an isometry"));
            }
            small_sets.push(ps);
            small_sets.push(moved);
        }

        small_sets.extend(polygons.iter().filter(|p| p.len() <= 12).cloned());
        small_sets.extend((4..=12).map(|n| build_theorem1(n).unwrap().0));
        small_sets.extend((1..6).flat_map(|m| (m + 3..=12).map(move |n| build_theorem2(n, m).unwrap().0)));
        let grouped = small_sets.len();
        for ps in small_sets.iter().filter(|ps| ps.len() <= 12) {
            if !pairwise_grouping_agrees(ps, &distance_spectrum(ps)) {
                failures.push(format!("{}-point set: hash grouping differs from pairwise grouping", ps.len()));
            }
        }

        for r in records1.iter().chain(&records2) {
            if !r.round_trip {
                round_trip_failures.push(r.label());
            }
        }
        for ps in &polygons {
            if points_file::parse(&points_file::serialize(ps)).ok().as_ref() != Some(ps) {
                round_trip_failures.push(format!("{}-gon", ps.len()));
            }
        }
        failures.extend(round_trip_failures.iter().map(|l| format!("round trip {l}")));

        let ok = failures.is_empty();
        let detail = if ok {
            format!(
                "{} random elements, 400 isometry trials, {grouped} sets grouped pairwise, {} files round-tripped",
                3 * TRIALS,
                FIGURES.len() + records1.len() + records2.len() + polygons.len()
            )
        } else {
            summarize(&failures)
        };
        (ok, detail)
    });
    outcomes.push(("7 property suites", out));

    let mut all = true;
    for (name, o) in &outcomes {
        all &= o.passed;
        println!(
            "{} criterion {name} ({:.2}s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
