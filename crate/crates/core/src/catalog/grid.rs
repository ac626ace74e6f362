use super::{EntrySpec, Params};
use crate::{q, qi, Rational};

/// Values tried for each free real parameter.
pub const GRID: [(i64, i64); 6] = [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1)];

fn unit_points() -> Vec<(Rational, Rational)> {
    vec![(qi(1), qi(0)), (q(3, 5), q(4, 5)), (qi(0), qi(1))]
}

/// Parameter assignments for the sampled campaign of one entry: the grid
/// product over free parameters, rational points on the unit circle for a
/// constrained pair, and every discrete value. Fixed values are left to
/// [`super::get_entry`].
pub fn parameter_samples(spec: &EntrySpec) -> Vec<Params> {
    let mut out = vec![Params::new()];
    let circle: Vec<&String> = spec.unit_circle.iter().flatten().collect();
    for p in spec.params.iter().filter(|p| !circle.contains(p)) {
        out = out
            .into_iter()
            .flat_map(|base| {
                GRID.iter().map(move |&(n, d)| {
                    let mut m = base.clone();
                    m.insert(p.clone(), q(n, d));
                    m
                })
            })
            .collect();
    }
    if let Some([a, b]) = &spec.unit_circle {
        let pts: Vec<_> = unit_points()
            .into_iter()
            .filter(|(x, y)| {
                !(spec.nonzero.contains(a) && x == &qi(0) || spec.nonzero.contains(b) && y == &qi(0))
            })
            .collect();
        out = out
            .into_iter()
            .flat_map(|base| {
                pts.iter().map(move |(x, y)| {
                    let mut m = base.clone();
                    m.insert(a.clone(), x.clone());
                    m.insert(b.clone(), y.clone());
                    m
                })
            })
            .collect();
    }
    for (k, vals) in &spec.discrete {
        out = out
            .into_iter()
            .flat_map(|base| {
                vals.iter().map(move |v| {
                    let mut m = base.clone();
                    m.insert(k.clone(), qi(*v));
                    m
                })
            })
            .collect();
    }
    out
}
