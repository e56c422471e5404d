//! Summation, quadrature and limit machinery shared by all evaluators.
//!
//! | routine              | use                                               |
//! |----------------------|---------------------------------------------------|
//! | [`sum_series`]       | power series with geometric or faster decay       |
//! | [`sum_slow_series`]  | series whose terms decay only algebraically       |
//! | [`integrate`]        | adaptive Gauss-Kronrod 7/15 on a finite interval  |
//! | [`extrapolate_eps`]  | removable singularities, by symmetric averaging   |

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::Complex;

/// Outcome of a series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex,
    pub terms_used: usize,
    /// Estimated error relative to `1 + |value|`.
    pub err_estimate: f64,
    pub converged: bool,
}

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Neumaier-compensated running sum of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex,
    comp: Complex,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex::new(re, im);
        self.comp += Complex::new(cre, cim);
    }

    pub fn value(&self) -> Complex {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let c = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, c)
}

/// Number of consecutive small terms required before a series is declared converged.
const SMALL_RUN: usize = 3;

/// Sums `term(0) + term(1) + ...` with compensated accumulation.
///
/// `term` is called with k = 0, 1, 2, ... in order, so it may carry state
/// (a running product, say). Summation stops once three consecutive terms
/// satisfy `|t| <= tol * (1 + |S|)`.
pub fn sum_series<F: FnMut(usize) -> Complex>(term: F, tol: f64, max_terms: usize) -> SeriesResult {
    sum_series_from(term, tol, max_terms, 0)
}

/// As [`sum_series`], but the stopping rule is ignored for the first `min_terms` terms.
///
/// Needed when early terms vanish or dip for structural reasons (a numerator
/// parameter close to a nonpositive integer, for instance).
pub fn sum_series_from<F: FnMut(usize) -> Complex>(
    mut term: F,
    tol: f64,
    max_terms: usize,
    min_terms: usize,
) -> SeriesResult {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_terms >= 8, "max_terms must be at least 8");
    let mut acc = KahanSum::new();
    let mut run = 0usize;
    let mut recent = [0.0f64; SMALL_RUN];
    for k in 0..max_terms {
        let t = term(k);
        acc.add(t);
        let s = acc.value();
        if !s.re.is_finite() || !s.im.is_finite() {
            return SeriesResult { value: s, terms_used: k + 1, err_estimate: f64::INFINITY, converged: false };
        }
        recent[k % SMALL_RUN] = t.norm();
        let scale = 1.0 + s.norm();
        if t.norm() <= tol * scale {
            run += 1;
        } else {
            run = 0;
        }
        if run >= SMALL_RUN && k + 1 >= min_terms {
            let err = recent.iter().cloned().fold(0.0, f64::max) / scale;
            return SeriesResult { value: s, terms_used: k + 1, err_estimate: err, converged: true };
        }
    }
    let s = acc.value();
    let err = recent.iter().cloned().fold(0.0, f64::max) / (1.0 + s.norm());
    SeriesResult { value: s, terms_used: max_terms, err_estimate: err, converged: false }
}

/// First checkpoint of [`sum_slow_series`]; later checkpoints double.
const SLOW_FIRST_CHECKPOINT: usize = 16;

/// Sums a series with algebraically decaying terms.
///
/// Partial sums are recorded at N = 16, 32, 64, ... up to `max_terms` and
/// the limit is extrapolated with Wynn's epsilon algorithm. If the terms die
/// out quickly the ordinary stopping rule applies and no extrapolation is done.
pub fn sum_slow_series<F: FnMut(usize) -> Complex>(mut term: F, tol: f64, max_terms: usize) -> SeriesResult {
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(max_terms >= 8, "max_terms must be at least 8");
    let mut acc = KahanSum::new();
    let mut partials = Vec::new();
    let mut next_checkpoint = SLOW_FIRST_CHECKPOINT;
    let mut run = 0usize;
    for k in 0..max_terms {
        let t = term(k);
        acc.add(t);
        let s = acc.value();
        if t.norm() <= f64::EPSILON * 0.25 * (1.0 + s.norm()) {
            run += 1;
            if run >= SMALL_RUN {
                return SeriesResult { value: s, terms_used: k + 1, err_estimate: t.norm(), converged: true };
            }
        } else {
            run = 0;
        }
        if k + 1 == next_checkpoint {
            partials.push(s);
            next_checkpoint *= 2;
        }
    }
    if partials.len() < 3 {
        let s = acc.value();
        return SeriesResult { value: s, terms_used: max_terms, err_estimate: f64::INFINITY, converged: false };
    }
    let (value, err) = wynn_epsilon(&partials);
    let rel = err / (1.0 + value.norm());
    SeriesResult { value, terms_used: max_terms, err_estimate: rel, converged: rel <= tol }
}

/// Wynn's epsilon algorithm on a sequence of partial sums.
///
/// Returns the even-column entry whose neighbours agree best, together with
/// that disagreement as an absolute error estimate.
pub fn wynn_epsilon(s: &[Complex]) -> (Complex, f64) {
    let n = s.len();
    assert!(n >= 2, "need at least two partial sums");
    let mut best = s[n - 1];
    let mut best_err = (s[n - 1] - s[n - 2]).norm();
    let mut prev = vec![Complex::new(0.0, 0.0); n + 1];
    let mut cur = s.to_vec();
    let mut k = 0usize;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d.norm() == 0.0 {
                // An estimate column that has converged exactly; auxiliary columns give nothing.
                return if k % 2 == 0 { (cur[i + 1], 0.0) } else { (best, best_err) };
            }
            next.push(prev[i + 1] + d.inv());
        }
        k += 1;
        if k % 2 == 0 && next.len() >= 2 {
            let m = next.len();
            let mut err = (next[m - 1] - next[m - 2]).norm();
            if m >= 3 {
                err = err.max((next[m - 2] - next[m - 3]).norm());
            }
            if err < best_err {
                best_err = err;
                best = next[m - 1];
            }
        }
        prev = cur;
        cur = next;
    }
    (best, best_err)
}

// Gauss-Kronrod 7/15 nodes and weights; the Gauss nodes are the odd-indexed Kronrod nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Default tolerance and recursion limit for [`integrate`].
pub const QUAD_TOL: f64 = 1e-10;
pub const QUAD_MAX_DEPTH: u32 = 60;
const QUAD_MAX_INTERVALS: usize = 5000;

struct Panel {
    a: f64,
    b: f64,
    value: Complex,
    err: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod15<F: FnMut(f64) -> Complex>(f: &mut F, a: f64, b: f64) -> (Complex, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv = [(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)); 7];
    for (j, slot) in fv.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        resk += (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
        *slot = (f1, f2);
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        resasc += WGK[j] * ((f1 - mean).norm() + (f2 - mean).norm());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

/// Adaptive Gauss-Kronrod 7/15 quadrature of `f` over the finite interval `[a, b]`.
///
/// The rule never samples the endpoints, so integrable endpoint
/// singularities such as `ln t` at 0 are handled by bisection alone. `tol`
/// is an absolute tolerance. When the subdivision limit is reached the error
/// carries the best estimate.
pub fn integrate<F: FnMut(f64) -> Complex>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("integration limits must be finite".into()));
    }
    assert!(tol > 0.0, "tolerance must be positive");
    if a == b {
        return Ok(QuadratureResult { value: Complex::new(0.0, 0.0), err_estimate: 0.0, evaluations: 0 });
    }
    let (value, err) = kronrod15(&mut f, a, b);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel> = Vec::new();
    heap.push(Panel { a, b, value, err, depth: 0 });
    let mut total_err = err;
    loop {
        if total_err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= QUAD_MAX_DEPTH || heap.len() + done.len() >= QUAD_MAX_INTERVALS {
            done.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = kronrod15(&mut f, worst.a, mid);
        let (v2, e2) = kronrod15(&mut f, mid, worst.b);
        evaluations += 30;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1, depth: worst.depth + 1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2, depth: worst.depth + 1 });
    }
    let mut acc = KahanSum::new();
    let mut err_sum = 0.0;
    for p in heap.iter().chain(done.iter()) {
        acc.add(p.value);
        err_sum += p.err;
    }
    let value = acc.value();
    if err_sum > tol {
        // Accept results limited only by rounding in the rule itself.
        let floor = 100.0 * f64::EPSILON * (1.0 + value.norm());
        if err_sum > floor {
            return Err(Error::Quadrature { estimate: value.re, err_estimate: err_sum });
        }
    }
    Ok(QuadratureResult { value, err_estimate: err_sum, evaluations })
}

/// `[f(eps) + f(-eps)] / 2`, which cancels every odd power of `eps`.
pub fn symmetric_average<F: FnMut(f64) -> Result<Complex>>(f: &mut F, eps: f64) -> Result<Complex> {
    Ok((f(eps)? + f(-eps)?) * 0.5)
}

/// Limit of `f` at 0 for a function with a removable singularity there.
///
/// Uses the symmetric average at `eps0` and `eps0 / 2` and one Richardson
/// step, so the residual is O(eps0^4).
pub fn extrapolate_eps<F: FnMut(f64) -> Result<Complex>>(f: F, eps0: f64) -> Result<Complex> {
    extrapolate_eps_levels(f, eps0, 2)
}

/// As [`extrapolate_eps`] with `levels` halvings of `eps0` folded into a Richardson table.
pub fn extrapolate_eps_levels<F: FnMut(f64) -> Result<Complex>>(mut f: F, eps0: f64, levels: usize) -> Result<Complex> {
    if !(1e-4..=1e-2).contains(&eps0) {
        return Err(Error::InvalidInput(format!("eps0 = {eps0} outside [1e-4, 1e-2]")));
    }
    let levels = levels.max(1);
    let mut table = Vec::with_capacity(levels);
    let mut eps = eps0;
    for _ in 0..levels {
        table.push(symmetric_average(&mut f, eps)?);
        eps *= 0.5;
    }
    // Error expansion is in powers of eps^2, so the factors are 4, 16, 64, ...
    let mut factor = 4.0;
    for col in 1..levels {
        for i in (col..levels).rev() {
            table[i] = (table[i] * factor - table[i - 1]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    Ok(table[levels - 1])
}
