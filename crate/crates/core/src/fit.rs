//! Power-law exponent fitting on log-log scales.
//!
//! All growth decisions in the crate's oracles reduce to the exponent `p` in
//! `f(n) ~ C n^p`; these helpers estimate it by ordinary least squares.

/// Default left edge of the `[N, 4N]` tail window.
pub const TAIL_WINDOW: usize = 512;

/// Least-squares slope of `ln y` against `ln x`. Non-positive samples are skipped.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    slope(&logs)
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Geometric sample of integers in `[lo, hi]`, deduplicated.
pub fn geometric_grid(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let (l, h) = ((lo.max(1)) as f64, hi as f64);
    let mut out: Vec<usize> = (0..count)
        .map(|i| (l * (h / l).powf(i as f64 / (count - 1).max(1) as f64)).round() as usize)
        .collect();
    out.dedup();
    out
}

/// Exponent of `f` over the window `[n, 4n]`.
pub fn tail_exponent(f: impl Fn(usize) -> f64, n: usize) -> f64 {
    range_exponent(f, n, 4 * n)
}

pub fn range_exponent(f: impl Fn(usize) -> f64, lo: usize, hi: usize) -> f64 {
    let pts: Vec<(f64, f64)> = geometric_grid(lo, hi, 64)
        .into_iter()
        .map(|n| (n as f64, f(n)))
        .collect();
    loglog_slope(&pts)
}

/// Exponent of an oscillating sequence from its block maxima. `values[i]`
/// is the sample at index `start + i`; blocks of width `block` begin at
/// index `from`.
pub fn envelope_exponent(values: &[f64], start: usize, from: usize, block: usize) -> f64 {
    let mut pts = Vec::new();
    let mut lo = from;
    while lo + block <= start + values.len() {
        let window = &values[lo - start..lo + block - start];
        let (arg, max) = window
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        pts.push(((lo + arg) as f64, max));
        lo += block;
    }
    loglog_slope(&pts)
}

/// Exponent of a log-periodic sequence from the maxima over geometric
/// blocks `[lo ρ^j, lo ρ^{j+1})`; `values[n]` is the sample at `n`.
pub fn geometric_envelope_exponent(values: &[f64], lo: usize, ratio: f64) -> f64 {
    let mut pts = Vec::new();
    let mut start = lo.max(1) as f64;
    while (start * ratio).ceil() as usize <= values.len() {
        let (a, b) = (start.ceil() as usize, (start * ratio).ceil() as usize);
        let (arg, max) = (a..b).fold((a, f64::MIN), |acc, n| if values[n] > acc.1 { (n, values[n]) } else { acc });
        pts.push((arg as f64, max));
        start *= ratio;
    }
    loglog_slope(&pts)
}

/// Sums of `term(n)` over the dyadic blocks `[2^j, 2^{j+1})` for
/// `j in first..last`.
pub fn dyadic_block_sums(term: impl Fn(usize) -> f64, first: u32, last: u32) -> Vec<(usize, f64)> {
    (first..last)
        .map(|j| {
            let lo = 1usize << j;
            ((lo), (lo..2 * lo).map(&term).sum())
        })
        .collect()
}
