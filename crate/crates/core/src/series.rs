//! Time series, z-normalization, the padded subsequence matrix and the
//! squared Euclidean distance kernel.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::parallel::Team;
use crate::simd::F64x8;

/// Standard deviations below this are treated as constant subsequences.
pub const EPSILON_SIGMA: f64 = 1e-12;

/// Default row alignment unit: eight doubles fill one 512-bit register.
pub const DEFAULT_VEC_WIDTH: usize = 8;

/// An owned, validated sequence of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    /// Validates that the series is non-empty and every value is finite.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("time series is empty"));
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite value {} at index {idx}",
                values[idx]
            )));
        }
        Ok(TimeSeries { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Number of samples `m`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest and largest sample.
    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

impl Deref for TimeSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

/// Z-normalizes a whole series. Constant series map to all zeros.
pub fn z_normalize(series: &TimeSeries) -> TimeSeries {
    let mut out = vec![0.0; series.len()];
    z_normalize_into(series.values(), &mut out);
    TimeSeries { values: out }
}

/// Writes the z-normalization of `src` into `dst` (same length).
///
/// Mean and deviation are computed in two passes. A slice whose values are
/// all identical, or whose deviation is below [`EPSILON_SIGMA`], becomes zeros.
pub fn z_normalize_into(src: &[f64], dst: &mut [f64]) {
    debug_assert_eq!(src.len(), dst.len());
    let len = src.len() as f64;
    let mean = src.iter().sum::<f64>() / len;
    let var = src.iter().map(|&v| (v - mean) * (v - mean)).sum::<f64>() / len;
    let sigma = var.sqrt();
    let constant = src.iter().all(|&v| v == src[0]);
    if constant || sigma < EPSILON_SIGMA {
        dst.fill(0.0);
        return;
    }
    let inv = 1.0 / sigma;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = (s - mean) * inv;
    }
}

/// Number of zeros appended to a length-`n` row so its stride is a multiple of `vec_width`.
pub fn padding(n: usize, vec_width: usize) -> usize {
    (vec_width - n % vec_width) % vec_width
}

#[derive(Clone, Copy)]
#[repr(C, align(64))]
struct Block([f64; 8]);

/// Row-major matrix of z-normalized subsequences, each zero-padded to a
/// multiple of `vec_width` and stored in cache-line aligned memory.
#[derive(Clone)]
pub struct SubsequenceMatrix {
    blocks: Vec<Block>,
    rows: usize,
    n: usize,
    pad: usize,
    vec_width: usize,
}

impl std::fmt::Debug for SubsequenceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubsequenceMatrix")
            .field("rows", &self.rows)
            .field("n", &self.n)
            .field("pad", &self.pad)
            .field("vec_width", &self.vec_width)
            .finish()
    }
}

impl SubsequenceMatrix {
    /// Builds the matrix for windows of length `n`, normalizing every row independently.
    pub fn build(series: &TimeSeries, n: usize, vec_width: usize) -> Result<Self> {
        Self::build_in(series, n, vec_width, &Team::single())
    }

    /// Same as [`SubsequenceMatrix::build`], with rows filled by `team`.
    pub fn build_in(series: &TimeSeries, n: usize, vec_width: usize, team: &Team) -> Result<Self> {
        let m = series.len();
        if n == 0 {
            return Err(Error::param("subsequence length n must be at least 1"));
        }
        if n > m {
            return Err(Error::param(format!(
                "subsequence length n={n} exceeds series length m={m}"
            )));
        }
        if vec_width == 0 {
            return Err(Error::param("vec_width must be at least 1"));
        }
        let pad = padding(n, vec_width);
        let stride = n + pad;
        let rows = m - n + 1;
        let total = rows
            .checked_mul(stride)
            .ok_or_else(|| Error::param("subsequence matrix size overflows"))?;
        let mut matrix = SubsequenceMatrix {
            blocks: vec![Block([0.0; 8]); total.div_ceil(8)],
            rows,
            n,
            pad,
            vec_width,
        };
        let src = series.values();
        let data = &mut matrix.as_mut_slice()[..total];
        team.static_chunks_mut(data, stride, |i, row| {
            z_normalize_into(&src[i..i + n], &mut row[..n]);
        });
        Ok(matrix)
    }

    fn as_slice(&self) -> &[f64] {
        // SAFETY: Block is repr(C) over [f64; 8] with no padding bytes.
        unsafe { std::slice::from_raw_parts(self.blocks.as_ptr().cast::<f64>(), self.blocks.len() * 8) }
    }

    fn as_mut_slice(&mut self) -> &mut [f64] {
        // SAFETY: as above; the borrow of `self.blocks` is unique.
        unsafe {
            std::slice::from_raw_parts_mut(self.blocks.as_mut_ptr().cast::<f64>(), self.blocks.len() * 8)
        }
    }

    /// Row `i` including its trailing padding.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let stride = self.stride();
        &self.as_slice()[i * stride..(i + 1) * stride]
    }

    /// Row `i` without padding.
    #[inline]
    pub fn subsequence(&self, i: usize) -> &[f64] {
        &self.row(i)[..self.n]
    }

    /// Number of subsequences `N = m - n + 1`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    pub fn stride(&self) -> usize {
        self.n + self.pad
    }

    pub fn vec_width(&self) -> usize {
        self.vec_width
    }

    /// Whether any other subsequence lies at least `n` positions away from `i`.
    #[inline]
    pub fn has_non_self_match(&self, i: usize) -> bool {
        i >= self.n || i + self.n < self.rows
    }

    /// Whether at least one subsequence has a non-self match (`N > n`).
    pub fn is_feasible(&self) -> bool {
        self.rows > self.n
    }
}

/// Per-worker distance instrumentation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DistanceBudget {
    /// Distance evaluations started, abandoned ones included.
    pub calls: u64,
    /// Evaluations cut short by the abandon threshold.
    pub abandoned: u64,
}

impl DistanceBudget {
    pub fn merge(&mut self, other: DistanceBudget) {
        self.calls += other.calls;
        self.abandoned += other.abandoned;
    }
}

const LANES: usize = 8;
const CHECK_EVERY: usize = 4 * LANES;

/// Squared Euclidean distance over two equally long rows, padding included.
#[inline]
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    match kernel(a, b, f64::INFINITY) {
        Some(d) => d,
        None => unreachable!("infinite threshold never abandons"),
    }
}

/// Squared Euclidean distance that gives up once the running sum exceeds `threshold`.
///
/// Returns `None` when abandoned; the true squared distance is then strictly
/// greater than `threshold`. Every call is counted in `budget`.
#[inline]
pub fn squared_distance_early_abandon(
    a: &[f64],
    b: &[f64],
    threshold: f64,
    budget: &mut DistanceBudget,
) -> Option<f64> {
    budget.calls += 1;
    let d = kernel(a, b, threshold);
    if d.is_none() {
        budget.abandoned += 1;
    }
    d
}

#[inline(always)]
fn lanes(s: &[f64], k: usize) -> F64x8 {
    F64x8::load(s[k..k + LANES].try_into().unwrap())
}

#[inline(always)]
fn kernel(a: &[f64], b: &[f64], threshold: f64) -> Option<f64> {
    assert_eq!(a.len(), b.len());
    let body = a.len() - a.len() % LANES;
    let mut acc = F64x8::zero();
    let mut k = 0;
    while k < body {
        let stop = (k + CHECK_EVERY).min(body);
        while k < stop {
            acc = acc.add_sq_diff(lanes(a, k), lanes(b, k));
            k += LANES;
        }
        if threshold < f64::INFINITY && lane_sum(&acc.to_array()) > threshold {
            return None;
        }
    }
    let mut total = lane_sum(&acc.to_array());
    for (x, y) in a[body..].iter().zip(&b[body..]) {
        let d = x - y;
        total += d * d;
    }
    if total > threshold {
        return None;
    }
    Some(total)
}

/// `R` squared distances against one shared row, each summed in exactly the
/// order [`squared_distance`] uses, so results are bit-identical. The `R`
/// independent accumulators hide the add latency that a single pair would
/// wait on.
#[inline(always)]
pub(crate) fn squared_distances<const R: usize>(a: &[&[f64]; R], b: &[f64]) -> [f64; R] {
    let len = b.len();
    for r in a {
        assert_eq!(r.len(), len);
    }
    let body = len - len % LANES;
    let ptrs: [*const f64; R] = std::array::from_fn(|r| a[r].as_ptr());
    let mut acc = [F64x8::zero(); R];
    let mut k = 0;
    while k < body {
        // SAFETY: every row has `len` elements and `k + LANES <= body <= len`.
        unsafe {
            let y = F64x8::load_ptr(b.as_ptr().add(k));
            for r in 0..R {
                acc[r] = acc[r].add_sq_diff(F64x8::load_ptr(ptrs[r].add(k)), y);
            }
        }
        k += LANES;
    }
    let mut out = [0.0; R];
    for r in 0..R {
        let mut total = lane_sum(&acc[r].to_array());
        for (x, y) in a[r][body..].iter().zip(&b[body..]) {
            let d = x - y;
            total += d * d;
        }
        out[r] = total;
    }
    out
}

#[inline(always)]
fn lane_sum(acc: &[f64; LANES]) -> f64 {
    ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7]))
}
