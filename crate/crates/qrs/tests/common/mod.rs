#![allow(dead_code)]

use std::path::Path;

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
pub fn golden_section_minimize<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    assert!(lo < hi && tol > 0.0);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Least squares slope of ln(y) against ln(x).
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// A parsed CSV: header names plus rows of optional numbers (empty cells
/// become None).
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Csv {
    pub fn read(path: &Path) -> Self {
        let text = std::fs::read_to_string(path)
            .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Self {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .expect("csv has a header")
            .split(',')
            .map(str::to_string)
            .collect();
        let rows = lines
            .map(|line| {
                line.split(',')
                    .map(|cell| {
                        if cell.is_empty() {
                            None
                        } else {
                            Some(cell.parse().unwrap_or_else(|_| panic!("bad cell {cell:?}")))
                        }
                    })
                    .collect()
            })
            .collect();
        Self { header, rows }
    }

    pub fn column(&self, name: &str) -> Vec<Option<f64>> {
        let idx = self
            .header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name:?} in {:?}", self.header));
        self.rows.iter().map(|r| r[idx]).collect()
    }

    /// Values of a column that must have no empty cells.
    pub fn dense_column(&self, name: &str) -> Vec<f64> {
        self.column(name)
            .into_iter()
            .map(|v| v.expect("cell should not be empty"))
            .collect()
    }
}

/// First index i where values[i] <= 1 < values[i+1], i.e. the row pair
/// bracketing an upward crossing of one.
pub fn upward_crossing_of_one(values: &[f64]) -> Option<usize> {
    values
        .windows(2)
        .position(|w| w[0] <= 1.0 && w[1] > 1.0)
}
