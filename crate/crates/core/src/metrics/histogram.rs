use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binned counts over half-open bins `[lo, hi)`; the last bin is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub metric: String,
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Bins {
    /// Fixed-width bins aligned to multiples of the width.
    Width(f64),
    Edges(Vec<f64>),
}

fn width_edges(min: f64, max: f64, width: f64) -> Vec<f64> {
    let first = (min / width).floor();
    let mut edges = vec![first * width];
    let mut k = first + 1.0;
    loop {
        let edge = k * width;
        edges.push(edge);
        if edge >= max {
            break;
        }
        k += 1.0;
    }
    edges
}

impl Histogram {
    pub fn new(metric: impl Into<String>, values: &[f64], bins: &Bins) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Histogram("no values".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Histogram("non-finite value".into()));
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let edges = match bins {
            Bins::Width(w) if *w > 0.0 && w.is_finite() => width_edges(min, max, *w),
            Bins::Width(w) => return Err(Error::Histogram(format!("bad bin width {w}"))),
            Bins::Edges(e) => {
                if e.len() < 2 || e.windows(2).any(|p| p[0].partial_cmp(&p[1]) != Some(std::cmp::Ordering::Less)) {
                    return Err(Error::Histogram("bin edges must be strictly ascending".into()));
                }
                if min < e[0] || max > e[e.len() - 1] {
                    return Err(Error::Histogram(format!(
                        "values span [{min}, {max}] outside the bin edges"
                    )));
                }
                e.clone()
            }
        };
        let last = edges.len() - 2;
        let mut counts = vec![0; edges.len() - 1];
        for &v in values {
            // first edge strictly greater than v, minus one
            let bin = edges.partition_point(|&e| e <= v).saturating_sub(1).min(last);
            counts[bin] += 1;
        }
        Ok(Histogram {
            metric: metric.into(),
            edges,
            counts,
        })
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `bin_lo,bin_hi,count` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count\n");
        for (k, count) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", self.edges[k], self.edges[k + 1], count);
        }
        out
    }
}
