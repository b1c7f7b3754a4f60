//! Plain-text and `key=value` spectrum reports.

use std::fmt::Write as _;

use richdist_core::spectrum::{diameter_class, spectrum_stats};
use richdist_core::{DistanceSpectrum, FieldEmbedding, PointSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    KeyValue,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub format: Format,
    pub histogram: bool,
}

struct Row {
    multiplicity: usize,
    approx: f64,
    exact: String,
    first: (usize, usize),
}

/// Deterministic report of `spec`, computed from `ps`.
pub fn render(ps: &PointSet, spec: &DistanceSpectrum, options: ReportOptions) -> String {
    let stats = spectrum_stats(spec);
    let emb = FieldEmbedding::new(ps.field(), 64);
    let rows: Vec<Row> = spec
        .classes()
        .iter()
        .map(|c| Row {
            multiplicity: c.multiplicity,
            approx: emb.eval_re(&c.representative).expect("same field").mid_f64(),
            exact: c.representative.to_string(),
            first: c.first_witness,
        })
        .collect();
    let diameter = diameter_class(spec);

    let mut out = String::new();
    match options.format {
        Format::Text => {
            let _ = writeln!(out, "points {} in cyclo {}", stats.points, ps.field().order());
            let _ = writeln!(out, "pairs {}", stats.total_pairs);
            let _ = writeln!(out, "distinct squared distances {}", stats.distinct);
            let _ = writeln!(out, "max multiplicity {}", stats.max_multiplicity);
            if let Some(d) = diameter {
                let _ = writeln!(out, "diameter class {} multiplicity {}", d, rows[d].multiplicity);
            }
            let _ = writeln!(out, "classes occurring at most n times {}", stats.at_most_n);
            let _ = writeln!(out, "{:>6} {:>6} {:>18} {:>12}  exact", "class", "mult", "approx", "first pair");
            for (k, r) in rows.iter().enumerate() {
                let pair = format!("({},{})", r.first.0, r.first.1);
                let _ = writeln!(out, "{:>6} {:>6} {:>18.12} {:>12}  {}", k, r.multiplicity, r.approx, pair, r.exact);
            }
            if options.histogram {
                let _ = writeln!(out, "histogram (multiplicity: classes)");
                for (m, count) in &stats.histogram {
                    let _ = writeln!(out, "{m:>6}: {count}");
                }
            }
        }
        Format::KeyValue => {
            let _ = writeln!(out, "points={}", stats.points);
            let _ = writeln!(out, "field_order={}", ps.field().order());
            let _ = writeln!(out, "pairs={}", stats.total_pairs);
            let _ = writeln!(out, "distinct={}", stats.distinct);
            let _ = writeln!(out, "max_multiplicity={}", stats.max_multiplicity);
            if let Some(d) = diameter {
                let _ = writeln!(out, "diameter_class={d}");
                let _ = writeln!(out, "diameter_multiplicity={}", rows[d].multiplicity);
            }
            let _ = writeln!(out, "at_most_n={}", stats.at_most_n);
            for (k, r) in rows.iter().enumerate() {
                let _ = writeln!(out, "class.{k}.multiplicity={}", r.multiplicity);
                let _ = writeln!(out, "class.{k}.approx={:.12}", r.approx);
                let _ = writeln!(out, "class.{k}.first_pair={},{}", r.first.0, r.first.1);
                let _ = writeln!(out, "class.{k}.exact={}", r.exact);
            }
            if options.histogram {
                for (m, count) in &stats.histogram {
                    let _ = writeln!(out, "histogram.{m}={count}");
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use richdist_core::distance_spectrum;

    #[test]
    fn square_key_values() {
        let sq = PointSet::regular_ngon(4).unwrap();
        let spec = distance_spectrum(&sq);
        let kv = render(&sq, &spec, ReportOptions { format: Format::KeyValue, histogram: true });
        let expected = "points=4\nfield_order=4\npairs=6\ndistinct=2\nmax_multiplicity=4\n\
            diameter_class=1\ndiameter_multiplicity=2\nat_most_n=2\n\
            class.0.multiplicity=4\nclass.0.approx=2.000000000000\nclass.0.first_pair=0,1\nclass.0.exact=2\n\
            class.1.multiplicity=2\nclass.1.approx=4.000000000000\nclass.1.first_pair=0,2\nclass.1.exact=4\n\
            histogram.2=1\nhistogram.4=1\n";
        assert_eq!(kv, expected);
    }

    #[test]
    fn text_is_deterministic() {
        let ps = PointSet::regular_ngon(7).unwrap();
        let opts = ReportOptions { format: Format::Text, histogram: true };
        let a = render(&ps, &distance_spectrum(&ps), opts);
        let b = render(&ps.clone(), &distance_spectrum(&ps), opts);
        assert_eq!(a, b);
        assert!(a.contains("distinct squared distances 3\n"));
        assert!(a.contains("max multiplicity 7\n"));
        assert!(a.contains("     7: 3\n"));
    }
}
