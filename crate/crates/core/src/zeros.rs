//! Zero counting by the argument principle and zero localization by recursive
//! subdivision with Newton polishing.
//!
//! Disks use the trapezoid rule on a uniform angular grid, which converges
//! geometrically for the periodic integrand `z f'(z)/f(z)`. Rectangles use
//! adaptive Gauss–Kronrod quadrature on each side.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expoly::{expand, ExpandOptions, ExpoPolynomial};
use crate::geometry::{Configuration, StrengthTuple};

/// A function holomorphic on the region of interest, evaluated together with
/// its derivative.
pub trait Holomorphic: Sync {
    /// Returns `(f(z)·e^{−s}, f'(z)·e^{−s}, s)` for some real `s` chosen so the
    /// scaled values stay representable.
    fn eval_scaled(&self, z: Complex64) -> (Complex64, Complex64, f64);

    /// Rate at which `arg f` turns per unit length along large contours; used
    /// to size the initial quadrature grid.
    fn frequency_scale(&self) -> f64 {
        0.0
    }

    fn log_derivative(&self, z: Complex64) -> Complex64 {
        let (f, df, _) = self.eval_scaled(z);
        df / f
    }

    fn value(&self, z: Complex64) -> Complex64 {
        let (f, _, s) = self.eval_scaled(z);
        f * s.exp()
    }
}

/// An exponential polynomial paired with its derivative.
#[derive(Debug, Clone)]
pub struct ExpoFunction {
    function: ExpoPolynomial,
    derivative: ExpoPolynomial,
}

impl ExpoFunction {
    pub fn new(function: ExpoPolynomial) -> Self {
        let derivative = function.derivative();
        ExpoFunction {
            function,
            derivative,
        }
    }

    pub fn function(&self) -> &ExpoPolynomial {
        &self.function
    }
}

impl Holomorphic for ExpoFunction {
    fn eval_scaled(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        // The derivative's frequencies are a subset of the function's.
        let s = self.function.log_scale(z);
        (
            self.function.sum_scaled(z, s),
            self.derivative.sum_scaled(z, s),
            s,
        )
    }

    fn frequency_scale(&self) -> f64 {
        self.function.max_frequency()
    }
}

/// A holomorphic function given by closures for the value and the derivative.
pub struct AnalyticFn<F, G> {
    f: F,
    df: G,
    frequency: f64,
}

impl<F, G> AnalyticFn<F, G>
where
    F: Fn(Complex64) -> Complex64 + Sync,
    G: Fn(Complex64) -> Complex64 + Sync,
{
    pub fn new(f: F, df: G) -> Self {
        AnalyticFn {
            f,
            df,
            frequency: 0.0,
        }
    }

    pub fn with_frequency_scale(mut self, frequency: f64) -> Self {
        self.frequency = frequency;
        self
    }
}

impl<F, G> Holomorphic for AnalyticFn<F, G>
where
    F: Fn(Complex64) -> Complex64 + Sync,
    G: Fn(Complex64) -> Complex64 + Sync,
{
    fn eval_scaled(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        ((self.f)(z), (self.df)(z), 0.0)
    }

    fn frequency_scale(&self) -> f64 {
        self.frequency
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Accept a winding integral only within this distance of an integer.
    pub residual_tol: f64,
    pub min_points: usize,
    pub max_points: usize,
    /// Nudged radii `R(1 + 10⁻⁶ · 4^{k−1})` are tried for `k = 1..=nudges`.
    pub nudges: usize,
    /// A sample with `|f| < zero_ratio · median |f|` means the contour hits a zero.
    pub zero_ratio: f64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            residual_tol: 1e-3,
            min_points: 256,
            max_points: 1 << 22,
            nudges: 5,
            zero_ratio: 1e-12,
        }
    }
}

/// Argument-principle count of zeros inside a disk `|z| < radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    /// Radius of the contour actually integrated (after nudging).
    pub radius: f64,
    pub requested_radius: f64,
    pub count: usize,
    /// Distance of the raw winding integral from the nearest integer.
    pub winding_residual: f64,
    pub quadrature_points: usize,
}

/// Counts zeros of `f` in the open disk `|z| < radius`, with multiplicity.
pub fn count_zeros_disk<H: Holomorphic + ?Sized>(
    f: &H,
    radius: f64,
    opts: &CountOptions,
) -> Result<ZeroCount> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let mut last_err = Error::ContourThroughZero { radius };
    for k in 0..=opts.nudges {
        let r = radius * (1.0 + nudge_fraction(k));
        match winding_on_circle(f, r, opts) {
            Ok((count, winding_residual, quadrature_points)) => {
                return Ok(ZeroCount {
                    radius: r,
                    requested_radius: radius,
                    count,
                    winding_residual,
                    quadrature_points,
                })
            }
            Err(e @ (Error::ContourThroughZero { .. } | Error::QuadratureDivergence { .. })) => {
                last_err = e
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

fn nudge_fraction(k: usize) -> f64 {
    match k {
        0 => 0.0,
        _ => 1e-6 * 4f64.powi(k as i32 - 1),
    }
}

fn winding_on_circle<H: Holomorphic + ?Sized>(
    f: &H,
    r: f64,
    opts: &CountOptions,
) -> Result<(usize, f64, usize)> {
    let start = (8.0 * r * f.frequency_scale()).ceil() as usize;
    let mut n = opts.min_points.max(start).max(8);
    let sample = |k: usize, n: usize| -> Result<(Complex64, f64)> {
        let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64);
        let (val, der, _) = f.eval_scaled(z);
        if !val.is_finite() || !der.is_finite() || val.norm() == 0.0 {
            return Err(Error::ContourThroughZero { radius: r });
        }
        Ok((z * der / val, val.norm()))
    };

    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitudes = Vec::with_capacity(n);
    for k in 0..n {
        let (g, m) = sample(k, n)?;
        sum += g;
        magnitudes.push(m);
    }
    magnitudes.sort_by(f64::total_cmp);
    let median = magnitudes[magnitudes.len() / 2];
    let floor = opts.zero_ratio * median;
    if magnitudes[0] < floor {
        return Err(Error::ContourThroughZero { radius: r });
    }

    let mut previous = sum / n as f64;
    loop {
        if 2 * n > opts.max_points {
            let residual = (previous - previous.re.round()).norm();
            return Err(Error::QuadratureDivergence {
                radius: r,
                residual,
                points: n,
            });
        }
        // Refine: the new nodes sit halfway between the old ones.
        let fresh: Result<Vec<(Complex64, f64)>> = (0..n)
            .into_par_iter()
            .map(|k| sample(2 * k + 1, 2 * n))
            .collect();
        let fresh = fresh?;
        if fresh.iter().any(|&(_, m)| m < floor) {
            return Err(Error::ContourThroughZero { radius: r });
        }
        sum += fresh.iter().map(|&(g, _)| g).sum::<Complex64>();
        n *= 2;
        let current = sum / n as f64;
        let rounded = current.re.round();
        let residual = (current - rounded).norm();
        if residual <= opts.residual_tol
            && (current - previous).norm() <= opts.residual_tol
            && rounded >= 0.0
        {
            return Ok((rounded as usize, residual, n));
        }
        previous = current;
    }
}

/// Axis-aligned closed rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Rect {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.width() > 0.0 && self.height() > 0.0)
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }

    fn expanded(&self, margin: f64) -> Rect {
        Rect::new(
            self.re_min - margin,
            self.re_max + margin,
            self.im_min - margin,
            self.im_max + margin,
        )
    }

    fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    /// Four children meeting at `(re_min + fx·width, im_min + fy·height)`.
    fn split(&self, fx: f64, fy: f64) -> [Rect; 4] {
        let x = self.re_min + fx * self.width();
        let y = self.im_min + fy * self.height();
        [
            Rect::new(self.re_min, x, self.im_min, y),
            Rect::new(x, self.re_max, self.im_min, y),
            Rect::new(self.re_min, x, y, self.im_max),
            Rect::new(x, self.re_max, y, self.im_max),
        ]
    }
}

// 15-point Kronrod nodes on [0, 1] (symmetric) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
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

/// `∫ f'/f dz` along the segment `a → b`: (Kronrod estimate, |Kronrod − Gauss|).
fn gauss_kronrod<H: Holomorphic + ?Sized>(
    f: &H,
    a: Complex64,
    b: Complex64,
) -> Option<(Complex64, f64)> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let g = |t: f64| -> Option<Complex64> {
        let (val, der, _) = f.eval_scaled(mid + half * t);
        let q = der / val;
        (q.is_finite() && val.norm() > 0.0).then_some(q)
    };
    let centre = g(0.0)?;
    let mut kronrod = centre * WGK[7];
    let mut gauss = centre * WG[3];
    for k in 0..7 {
        let pair = g(XGK[k])? + g(-XGK[k])?;
        kronrod += pair * WGK[k];
        if k % 2 == 1 {
            gauss += pair * WG[k / 2];
        }
    }
    Some((kronrod * half, ((kronrod - gauss) * half).norm()))
}

fn integrate_segment<H: Holomorphic + ?Sized>(
    f: &H,
    a: Complex64,
    b: Complex64,
    tol: f64,
    min_len: f64,
    evaluations: &mut usize,
) -> Result<Complex64> {
    *evaluations += 15;
    let through_zero = || Error::ContourThroughZero {
        radius: a.norm().max(b.norm()),
    };
    let (value, err) = gauss_kronrod(f, a, b).ok_or_else(through_zero)?;
    if err <= tol {
        return Ok(value);
    }
    if (b - a).norm() < min_len {
        return Err(through_zero());
    }
    let m = 0.5 * (a + b);
    Ok(integrate_segment(f, a, m, 0.5 * tol, min_len, evaluations)?
        + integrate_segment(f, m, b, 0.5 * tol, min_len, evaluations)?)
}

/// Argument-principle count for a rectangle boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectCount {
    pub count: usize,
    pub winding_residual: f64,
    pub evaluations: usize,
}

/// Counts zeros of `f` inside `rect`, with multiplicity.
pub fn count_zeros_rect<H: Holomorphic + ?Sized>(
    f: &H,
    rect: &Rect,
    opts: &CountOptions,
) -> Result<RectCount> {
    if rect.is_degenerate() {
        return Ok(RectCount {
            count: 0,
            winding_residual: 0.0,
            evaluations: 0,
        });
    }
    let corners = rect.corners();
    let perimeter = 2.0 * (rect.width() + rect.height());
    let min_len = 1e-10 * perimeter;
    let mut evaluations = 0;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        let tol = 2.0 * PI * 1e-2 * opts.residual_tol * (b - a).norm() / perimeter;
        total += integrate_segment(f, a, b, tol, min_len, &mut evaluations)?;
    }
    let winding = total / Complex64::new(0.0, 2.0 * PI);
    let rounded = winding.re.round();
    let winding_residual = (winding - rounded).norm();
    if winding_residual > opts.residual_tol || rounded < 0.0 {
        return Err(Error::QuadratureDivergence {
            radius: rect.diameter() * 0.5,
            residual: winding_residual,
            points: evaluations,
        });
    }
    Ok(RectCount {
        count: rounded as usize,
        winding_residual,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    pub location: Complex64,
    pub multiplicity: usize,
    /// `|f(location)|`.
    pub residual: f64,
    /// True when the zeros in a box could not be separated or polished before
    /// the depth limit; `location` is then the box center.
    pub cluster: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceSearch {
    /// Sorted by real part, then imaginary part.
    pub resonances: Vec<Resonance>,
    pub region_count: usize,
    /// Some box hit the depth limit with unresolved zeros.
    pub depth_exhausted: bool,
}

impl ResonanceSearch {
    pub fn total_multiplicity(&self) -> usize {
        self.resonances.iter().map(|r| r.multiplicity).sum()
    }
}

const NEWTON_MAX_ITERATIONS: usize = 50;

/// Newton iteration `z ← z − m f/f'`; `None` unless it converges inside `fence`.
fn newton<H: Holomorphic + ?Sized>(
    f: &H,
    start: Complex64,
    multiplicity: usize,
    fence: &Rect,
) -> Option<Complex64> {
    let m = multiplicity as f64;
    let mut z = start;
    for _ in 0..NEWTON_MAX_ITERATIONS {
        let (val, der, _) = f.eval_scaled(z);
        if val.norm() == 0.0 {
            return Some(z);
        }
        let step = m * val / der;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if !fence.contains(z) {
            return None;
        }
        if step.norm() <= 1e-12 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

fn split_fractions() -> impl Iterator<Item = (f64, f64)> {
    // Off-center splits keep symmetric zeros off the new edges.
    [
        (0.5 + 0.0123, 0.5 - 0.0177),
        (0.5 - 0.0311, 0.5 + 0.0239),
        (0.5 + 0.0457, 0.5 + 0.0391),
        (0.5 - 0.0613, 0.5 - 0.0529),
    ]
    .into_iter()
}

struct Search<'a, H: ?Sized> {
    f: &'a H,
    opts: CountOptions,
    max_depth: usize,
    found: Vec<Resonance>,
    depth_exhausted: bool,
}

impl<H: Holomorphic + ?Sized> Search<'_, H> {
    fn residual(&self, z: Complex64) -> f64 {
        self.f.value(z).norm()
    }

    fn polish(&self, rect: &Rect, count: usize) -> Option<Complex64> {
        let margin = 1e-9 * rect.diameter().max(1e-300);
        let fence = rect.expanded(margin);
        let starts: Vec<Complex64> = if count == 1 {
            vec![rect.center()]
        } else {
            let mut s = rect.corners().to_vec();
            s.push(rect.center());
            s
        };
        let mut limit: Option<Complex64> = None;
        for z0 in starts {
            let z = newton(self.f, z0, count, &fence)?;
            match limit {
                None => limit = Some(z),
                Some(w) if (z - w).norm() <= 1e-8 * (1.0 + w.norm()) => {}
                Some(_) => return None,
            }
        }
        limit
    }

    fn cluster(&mut self, rect: &Rect, count: usize) {
        let z = rect.center();
        self.depth_exhausted = true;
        self.found.push(Resonance {
            location: z,
            multiplicity: count,
            residual: self.residual(z),
            cluster: true,
        });
    }

    fn visit(&mut self, rect: Rect, count: usize, depth: usize) {
        if count == 0 {
            return;
        }
        if let Some(z) = self.polish(&rect, count) {
            self.found.push(Resonance {
                location: z,
                multiplicity: count,
                residual: self.residual(z),
                cluster: false,
            });
            return;
        }
        if depth >= self.max_depth {
            self.cluster(&rect, count);
            return;
        }
        for (fx, fy) in split_fractions() {
            let children = rect.split(fx, fy);
            let counts: Result<Vec<usize>> = children
                .par_iter()
                .map(|child| count_zeros_rect(self.f, child, &self.opts).map(|c| c.count))
                .collect();
            match counts {
                Ok(counts) if counts.iter().sum::<usize>() == count => {
                    for (child, c) in children.into_iter().zip(counts) {
                        self.visit(child, c, depth + 1);
                    }
                    return;
                }
                _ => continue,
            }
        }
        self.cluster(&rect, count);
    }
}

/// Locates the zeros of `f` inside `region`.
///
/// Boxes holding a single zero are polished by Newton's method from the box
/// center. Boxes holding `m > 1` zeros are accepted as one zero of multiplicity
/// `m` when the iteration `z ← z − m f/f'` converges to the same point from
/// every corner and the center; otherwise they are quadrisected. Boxes still
/// unresolved at `max_depth` are reported as clusters.
pub fn find_resonances<H: Holomorphic + ?Sized>(
    f: &H,
    region: &Rect,
    max_depth: usize,
    opts: &CountOptions,
) -> Result<ResonanceSearch> {
    if region.is_degenerate() {
        return Ok(ResonanceSearch {
            resonances: Vec::new(),
            region_count: 0,
            depth_exhausted: false,
        });
    }
    let mut region_used = *region;
    let mut total = None;
    for k in 0..=opts.nudges {
        let margin = 1e-7 * k as f64 * region.diameter();
        region_used = region.expanded(margin);
        match count_zeros_rect(f, &region_used, opts) {
            Ok(c) => {
                total = Some(c.count);
                break;
            }
            Err(Error::ContourThroughZero { .. }) | Err(Error::QuadratureDivergence { .. }) => {
                continue
            }
            Err(e) => return Err(e),
        }
    }
    let total = total.ok_or(Error::ContourThroughZero {
        radius: region.diameter() * 0.5,
    })?;
    let mut search = Search {
        f,
        opts: *opts,
        max_depth,
        found: Vec::new(),
        depth_exhausted: false,
    };
    search.visit(region_used, total, 0);
    let mut resonances = search.found;
    resonances.sort_by(|a, b| {
        a.location
            .re
            .total_cmp(&b.location.re)
            .then(a.location.im.total_cmp(&b.location.im))
    });
    Ok(ResonanceSearch {
        resonances,
        region_count: total,
        depth_exhausted: search.depth_exhausted,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CountingOptions {
    pub expand: ExpandOptions,
    pub count: CountOptions,
}

/// N(R) for each radius: zeros of the characteristic determinant in `|z| < R`.
pub fn counting_function(
    a: &StrengthTuple,
    cfg: &Configuration,
    radii: &[f64],
    opts: &CountingOptions,
) -> Result<Vec<ZeroCount>> {
    let (e, _) = expand(a, cfg, &opts.expand)?;
    counting_function_for(&ExpoFunction::new(e), radii, &opts.count)
}

/// Disk counts of `f` at increasing radii, computed in parallel.
pub fn counting_function_for<H: Holomorphic + ?Sized>(
    f: &H,
    radii: &[f64],
    opts: &CountOptions,
) -> Result<Vec<ZeroCount>> {
    if radii.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("radii must be increasing".into()));
    }
    radii
        .par_iter()
        .map(|&r| count_zeros_disk(f, r, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expoly::p0_only;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn minus_z2() -> AnalyticFn<impl Fn(Complex64) -> Complex64 + Sync, impl Fn(Complex64) -> Complex64 + Sync>
    {
        AnalyticFn::new(|z: Complex64| -z * z, |z: Complex64| -2.0 * z)
    }

    #[test]
    fn double_zero_in_unit_disk() {
        let r = count_zeros_disk(&minus_z2(), 1.0, &CountOptions::default()).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.winding_residual < 1e-10);
        assert_eq!(r.radius, 1.0);
    }

    #[test]
    fn linear_factors_counted() {
        let a = StrengthTuple::new(vec![c(0.1, -0.2), c(-0.3, 0.05), c(0.0, 0.4)]).unwrap();
        let f = ExpoFunction::new(p0_only(&a));
        let r = count_zeros_disk(&f, 10.0, &CountOptions::default()).unwrap();
        assert_eq!(r.count, 3);
        // The zeros have moduli 4π|a_j|: 2.81, 3.80, 5.03.
        assert_eq!(count_zeros_disk(&f, 3.0, &CountOptions::default()).unwrap().count, 1);
    }

    #[test]
    fn nudges_off_a_zero() {
        // Zero exactly on |z| = 1.
        let f = AnalyticFn::new(|z: Complex64| z - 1.0, |_| c(1.0, 0.0));
        let r = count_zeros_disk(&f, 1.0, &CountOptions::default()).unwrap();
        assert!(r.radius > 1.0);
        assert_eq!(r.count, 1);
    }

    #[test]
    fn rectangle_counts() {
        let f = minus_z2();
        let opts = CountOptions::default();
        assert_eq!(count_zeros_rect(&f, &Rect::new(-1.0, 1.0, -1.0, 1.0), &opts).unwrap().count, 2);
        assert_eq!(count_zeros_rect(&f, &Rect::new(0.5, 1.0, -1.0, 1.0), &opts).unwrap().count, 0);
        assert!(count_zeros_rect(&f, &Rect::new(0.0, 1.0, -1.0, 1.0), &opts).is_err());
    }

    #[test]
    fn double_zero_found_once() {
        let s = find_resonances(&minus_z2(), &Rect::new(-1.0, 1.0, -1.0, 1.0), 12, &CountOptions::default())
            .unwrap();
        assert_eq!(s.resonances.len(), 1);
        assert_eq!(s.resonances[0].multiplicity, 2);
        assert!(s.resonances[0].location.norm() < 1e-10);
        assert!(!s.resonances[0].cluster);
    }

    #[test]
    fn linear_factor_zeros_polished() {
        let a = StrengthTuple::new(vec![c(0.1, -0.2), c(-0.3, 0.05), c(0.0, 0.4)]).unwrap();
        let f = ExpoFunction::new(p0_only(&a));
        let s = find_resonances(&f, &Rect::new(-10.0, 10.0, -10.0, 10.0), 20, &CountOptions::default()).unwrap();
        assert_eq!(s.region_count, 3);
        assert_eq!(s.resonances.len(), 3);
        for r in &s.resonances {
            assert!(r.residual <= 1e-10);
            let nearest = a
                .values()
                .iter()
                .map(|&aj| (r.location - c(0.0, -4.0 * PI) * aj).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-12);
        }
    }

    #[test]
    fn empty_region() {
        let s = find_resonances(&minus_z2(), &Rect::new(1.0, 1.0, 0.0, 2.0), 10, &CountOptions::default())
            .unwrap();
        assert!(s.resonances.is_empty());
        assert_eq!(s.region_count, 0);
    }

    #[test]
    fn radii_must_increase() {
        let f = minus_z2();
        assert!(counting_function_for(&f, &[2.0, 1.0], &CountOptions::default()).is_err());
    }
}
