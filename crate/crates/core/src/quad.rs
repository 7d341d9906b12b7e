//! Quadrature for finite and improper integrals.
//!
//! Two schemes are provided. [`integrate_finite`] is a globally adaptive
//! Gauss–Kronrod (7, 15) rule for smooth integrands on a bounded interval.
//! [`integrate_unit`] is a tanh-sinh rule on (0, 1) whose nodes carry both
//! `x` and `1 - x` to full relative precision, which makes it suitable for
//! integrable endpoint singularities and for the maps onto half-lines used
//! by [`integrate_half_line`] and [`integrate_real_line`].

use std::cell::Cell;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Values that can be integrated: real or complex.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Tolerances and limits for improper integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Where a half-line integral is split into inner and outer pieces.
    pub split_point: f64,
    /// Nodes beyond this radius are dropped from half-line integrals.
    pub truncation_radius: f64,
    /// Interval budget for Gauss–Kronrod, level budget for tanh-sinh is fixed.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 1e-14,
            split_point: 1.0,
            truncation_radius: 1e100,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_split_point(mut self, split_point: f64) -> Self {
        self.split_point = split_point;
        self
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate<V> {
    pub value: V,
    pub abs_error: f64,
    pub converged: bool,
}

impl<V: QuadValue> QuadEstimate<V> {
    pub fn zero() -> Self {
        Self { value: V::default(), abs_error: 0.0, converged: true }
    }

    /// Sum of two estimates; converged only when both are.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error: self.abs_error * factor.abs(),
            converged: self.converged,
        }
    }

    pub fn map<W: QuadValue>(self, f: impl FnOnce(V) -> W, error_factor: f64) -> QuadEstimate<W> {
        QuadEstimate {
            value: f(self.value),
            abs_error: self.abs_error * error_factor,
            converged: self.converged,
        }
    }
}

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15<V: QuadValue>(f: &impl Fn(f64) -> V, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * KRONROD_WEIGHTS[7];
    let mut g = fc * GAUSS_WEIGHTS[3];
    for i in 0..7 {
        let dx = h * KRONROD_NODES[i];
        let pair = f(c - dx) + f(c + dx);
        k = k + pair * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            g = g + pair * GAUSS_WEIGHTS[i / 2];
        }
    }
    ((k * h), ((k - g) * h).magnitude())
}

struct Panel<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive Gauss–Kronrod quadrature of `f` over `[a, b]`.
pub fn integrate_finite<V: QuadValue>(f: impl Fn(f64) -> V, a: f64, b: f64, spec: &QuadratureSpec) -> QuadEstimate<V> {
    if a == b {
        return QuadEstimate::zero();
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_error = error;
    let mut panels = 1;
    while total_error > spec.target(total.magnitude()) && panels < spec.max_subdivisions.max(1) {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (lv, le) = kronrod15(&f, worst.a, mid);
        let (rv, re) = kronrod15(&f, mid, worst.b);
        total = total - worst.value + lv + rv;
        total_error += le + re - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re });
        panels += 1;
    }
    // recompute from the panels to shed accumulated cancellation
    let mut value = V::default();
    let mut error = 0.0;
    for p in heap.iter() {
        value = value + p.value;
        error += p.error;
    }
    QuadEstimate {
        value,
        abs_error: error,
        converged: error <= spec.target(value.magnitude()) && value.is_finite_value(),
    }
}

const TANH_SINH_T_MAX: f64 = 6.0;
const TANH_SINH_MAX_LEVEL: u32 = 11;

/// Tanh-sinh quadrature over (0, 1). The integrand receives `(x, 1 - x)`,
/// both accurate to full relative precision. Nodes where either coordinate
/// underflows to zero are skipped; a non-finite integrand value marks the
/// estimate as not converged.
pub fn integrate_unit<V: QuadValue>(f: impl Fn(f64, f64) -> V, spec: &QuadratureSpec) -> QuadEstimate<V> {
    let nonfinite = Cell::new(false);
    let eval = |t: f64| -> V {
        let e = (-PI * t.sinh()).exp();
        let x = 1.0 / (1.0 + e);
        let xc = e / (1.0 + e);
        if x == 0.0 || xc == 0.0 || !e.is_finite() {
            return V::default();
        }
        let w = PI * t.cosh() * x * xc;
        let v = f(x, xc);
        if v.is_finite_value() {
            v * w
        } else {
            nonfinite.set(true);
            V::default()
        }
    };
    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= TANH_SINH_T_MAX {
        let t = k as f64 * h;
        sum = sum + eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for _ in 0..TANH_SINH_MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= TANH_SINH_T_MAX {
            let t = k as f64 * h;
            sum = sum + eval(t) + eval(-t);
            k += 2;
        }
        let next = sum * h;
        error = (next - estimate).magnitude();
        estimate = next;
        // the rule converges quadratically once resolved, so the last
        // difference overstates the remaining error
        if error <= spec.target(estimate.magnitude()) {
            break;
        }
    }
    QuadEstimate {
        value: estimate,
        abs_error: error,
        converged: error <= spec.target(estimate.magnitude()) && estimate.is_finite_value() && !nonfinite.get(),
    }
}

/// ∫_a^∞ f(t) dt via t = a + x/(1 - x) mapped onto (0, 1); `a` may be any
/// real number. Nodes beyond the truncation radius are dropped.
pub fn integrate_half_line<V: QuadValue>(f: impl Fn(f64) -> V, a: f64, spec: &QuadratureSpec) -> QuadEstimate<V> {
    integrate_unit(
        |x, xc| {
            let t = a + x / xc;
            if t > spec.truncation_radius {
                return V::default();
            }
            f(t) * (1.0 / (xc * xc))
        },
        spec,
    )
}

/// ∫ over the whole real line via t = ln(x/(1 - x)).
pub fn integrate_real_line<V: QuadValue>(f: impl Fn(f64) -> V, spec: &QuadratureSpec) -> QuadEstimate<V> {
    integrate_unit(
        |x, xc| {
            let t = (x / xc).ln();
            f(t) * (1.0 / (x * xc))
        },
        spec,
    )
}

/// ∫_0^∞ f(u) du split at `spec.split_point = a`: the inner piece uses
/// u = a x and the outer piece u = a / v, both on (0, 1). The integrand
/// receives u; the outer piece drops u beyond the truncation radius.
pub fn integrate_positive_axis<V: QuadValue>(f: impl Fn(f64) -> V, spec: &QuadratureSpec) -> QuadEstimate<V> {
    let a = spec.split_point;
    let inner = integrate_unit(|x, _| f(a * x), spec).scale(a);
    let outer = integrate_unit(
        |v, _| {
            let u = a / v;
            if u > spec.truncation_radius {
                return V::default();
            }
            f(u) * (1.0 / (v * v))
        },
        spec,
    )
    .scale(a);
    inner.combine(outer)
}
