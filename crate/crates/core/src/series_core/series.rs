use std::f64::consts::PI;

use num_complex::Complex64;

use super::majorant::Majorant;
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Singular threshold on `|a_0|` for [`TruncatedSeries::reciprocal`].
pub const RECIPROCAL_THRESHOLD: f64 = 1e-12;

/// Degree-`N` truncation of a power series centred at 0.
///
/// The optional [`Majorant`] bounds the discarded coefficients. Arithmetic
/// propagates it where a sound bound follows from the operands and drops it
/// otherwise, so tail bounds are never fabricated.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    majorant: Option<Majorant>,
}

/// Samples of a series on the circle `|z| = r`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSamples {
    pub radius: f64,
    pub values: Vec<Complex64>,
    /// Bound on the modulus of the discarded tail anywhere on the circle.
    pub tail_bound: f64,
    /// Bound on how far the stored polynomial can exceed the sample maximum
    /// between neighbouring samples.
    pub grid_bound: f64,
}

impl CircleSamples {
    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn min_modulus(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(f64::INFINITY, f64::min)
    }
}

impl TruncatedSeries {
    /// Series with no registered majorant.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self {
            coeffs,
            majorant: None,
        }
    }

    /// A polynomial: the coefficients beyond the stored order are zero.
    pub fn exact(coeffs: Vec<Complex64>) -> Self {
        Self::new(coeffs).with_majorant(Majorant::Exact)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn exact_real(coeffs: &[f64]) -> Self {
        Self::from_real(coeffs).with_majorant(Majorant::Exact)
    }

    /// Builds an order-`order` series from a coefficient generator.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Complex64) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::exact(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// Attaches a majorant, widened so that it also covers the stored prefix.
    pub fn with_majorant(mut self, m: Majorant) -> Self {
        self.majorant = Some(m.covering(&self.coeffs));
        self
    }

    pub fn without_majorant(mut self) -> Self {
        self.majorant = None;
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn majorant(&self) -> Option<Majorant> {
        self.majorant
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.majorant, Some(Majorant::Exact))
    }

    /// Index of the last nonzero stored coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .unwrap_or(0)
    }

    /// Lowers the order. An exact series whose dropped coefficients are not
    /// all zero keeps a geometric bound covering them.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        let majorant = match self.majorant {
            Some(Majorant::Exact) if self.degree() > order => {
                Some(Majorant::of_polynomial(&self.coeffs, 1.0))
            }
            m => m,
        };
        let mut s = Self::new(self.coeffs[..=order].to_vec());
        if let Some(m) = majorant {
            s = s.with_majorant(m);
        }
        s
    }

    /// Raises the order of an exact series by appending zeros.
    pub fn padded(&self, order: usize) -> Result<Self> {
        if order <= self.order() {
            return Ok(self.truncate(order));
        }
        if !self.is_exact() {
            return Err(Error::TailBoundUnavailable);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Ok(Self::exact(coeffs))
    }

    /// Majorant valid beyond this series' order, as a geometric bound with
    /// the given ratio when the series is exact.
    fn geometric_view(&self, ratio: f64) -> Option<Majorant> {
        match self.majorant? {
            Majorant::Exact => Some(Majorant::of_polynomial(&self.coeffs, ratio)),
            m => Some(m),
        }
    }

    fn ratio_of(m: Option<Majorant>) -> Option<f64> {
        match m {
            Some(Majorant::Geometric { ratio, .. }) => Some(ratio),
            _ => None,
        }
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        let s = Self::new(self.coeffs.iter().map(|c| alpha * c).collect());
        match self.majorant {
            Some(m) => s.with_majorant(m.weighted(alpha.norm(), 0.0)),
            None => s,
        }
    }

    /// Coefficientwise product with a weight sequence satisfying
    /// `|w(n)| <= factor * (n+1)^extra_power`.
    pub fn weighted(&self, w: impl Fn(usize) -> f64, factor: f64, extra_power: f64) -> Self {
        let s = Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * w(n))
                .collect(),
        );
        match self.majorant {
            Some(m) => s.with_majorant(m.weighted(factor, extra_power)),
            None => s,
        }
    }

    /// `d_n = c_{n+k}`, order reduced by `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        let coeffs = if k > self.order() {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            self.coeffs[k..].to_vec()
        };
        let s = Self::new(coeffs);
        match self.majorant {
            Some(m) => s.with_majorant(m.shifted_down(k)),
            None => s,
        }
    }

    /// `d_n = c_{n-k}`, order raised by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k];
        coeffs.extend_from_slice(&self.coeffs);
        let s = Self::new(coeffs);
        match self.majorant {
            Some(m) => s.with_majorant(m.shifted_up(k)),
            None => s,
        }
    }

    /// Coefficients `c_n r^n`: the series of `z -> a(rz)`.
    pub fn dilate(&self, r: f64) -> Self {
        let mut p = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * p;
                p *= r;
                v
            })
            .collect();
        let s = Self::new(coeffs);
        match self.majorant {
            Some(m) => s.with_majorant(m.dilated(r)),
            None => s,
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .map(|i| self.coeffs[i] * other.coeffs[n - i])
                    .sum::<Complex64>()
            })
            .collect();
        let s = Self::new(coeffs);
        let majorant = match (self.majorant, other.majorant) {
            (Some(Majorant::Exact), Some(Majorant::Exact)) => {
                let (da, db) = (self.degree(), other.degree());
                if da + db <= order {
                    Some(Majorant::Exact)
                } else {
                    // Full product is a known polynomial of degree da + db.
                    let full: Vec<Complex64> = (0..=da + db)
                        .map(|n| {
                            (n.saturating_sub(db)..=n.min(da))
                                .map(|i| self.coeffs[i] * other.coeffs[n - i])
                                .sum()
                        })
                        .collect();
                    Some(Majorant::of_polynomial(&full, 1.0))
                }
            }
            (Some(_), Some(_)) => {
                let ratio = Self::ratio_of(self.majorant)
                    .into_iter()
                    .chain(Self::ratio_of(other.majorant))
                    .fold(0.0, f64::max);
                let a = self.geometric_view(ratio).expect("majorant present");
                let b = other.geometric_view(ratio).expect("majorant present");
                Some(Majorant::convolved(a, b))
            }
            _ => None,
        };
        match majorant {
            Some(m) => s.with_majorant(m),
            None => s,
        }
    }

    /// Series `r` with `a * r = 1` through the truncation order, by forward
    /// substitution. The result carries no majorant.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() <= RECIPROCAL_THRESHOLD {
            return Err(Error::NearZeroConstantTerm { modulus: a0.norm() });
        }
        let n = self.order();
        let inv0 = 1.0 / a0;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = inv0;
        let deg = self.degree();
        for k in 1..=n {
            let s: Complex64 = (1..=k.min(deg)).map(|i| self.coeffs[i] * out[k - i]).sum();
            out[k] = -s * inv0;
        }
        Ok(Self::new(out))
    }

    /// Termwise derivative; order drops by one (a constant stays order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            let s = Self::zero(0);
            return match self.majorant {
                Some(Majorant::Exact) => s,
                Some(m) => Self::new(s.coeffs).with_majorant(Self::derivative_majorant(m)),
                None => Self::new(s.coeffs),
            };
        }
        let coeffs = (1..=self.order())
            .map(|n| self.coeffs[n] * n as f64)
            .collect();
        let s = Self::new(coeffs);
        match self.majorant {
            Some(m) => s.with_majorant(Self::derivative_majorant(m)),
            None => s,
        }
    }

    fn derivative_majorant(m: Majorant) -> Majorant {
        match m {
            Majorant::Exact => Majorant::Exact,
            // (n+1) c_{n+1}: shift down by one, then weight n+1.
            g => g.shifted_down(1).weighted(1.0, 1.0),
        }
    }

    /// Horner evaluation of the stored polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let deg = self.degree();
        self.coeffs[..=deg]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `sum |c_n| r^n` over the stored coefficients.
    pub fn abs_sum(&self, r: f64) -> f64 {
        let mut p = 1.0;
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc += c.norm() * p;
            p *= r;
        }
        acc
    }

    /// Bound on the discarded tail at radius `r`.
    pub fn tail_bound(&self, r: f64) -> Result<f64> {
        self.majorant
            .map(|m| m.tail_sum(self.order(), r))
            .ok_or(Error::TailBoundUnavailable)
    }

    /// Samples on `|z| = r` at `samples` uniform angles `2 pi k / samples`.
    pub fn eval_on_circle(&self, r: f64, samples: usize) -> Result<CircleSamples> {
        self.eval_on_circle_with(r, samples, Execution::default())
    }

    pub fn eval_on_circle_with(
        &self,
        r: f64,
        samples: usize,
        exec: Execution,
    ) -> Result<CircleSamples> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::ArgumentOutOfRange {
                value: r,
                range: "(0,1)",
            });
        }
        if samples < 8 {
            return Err(Error::ArgumentOutOfRange {
                value: samples as f64,
                range: "samples >= 8",
            });
        }
        let tail_bound = self.tail_bound(r)?;
        let step = 2.0 * PI / samples as f64;
        let values = exec.map_indexed(samples, |k| {
            self.eval(Complex64::from_polar(r, step * k as f64))
        });
        // |d/dtheta p(r e^{i theta})| <= sum n |c_n| r^n; the nearest sample is
        // at most step/2 away.
        let lipschitz: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm() * r.powi(n as i32))
            .sum();
        Ok(CircleSamples {
            radius: r,
            values,
            tail_bound,
            grid_bound: lipschitz * step / 2.0,
        })
    }
}

/// Coefficientwise `alpha a + beta b` at the smaller order.
pub fn linear_combine(
    alpha: Complex64,
    a: &TruncatedSeries,
    beta: Complex64,
    b: &TruncatedSeries,
) -> TruncatedSeries {
    let order = a.order().min(b.order());
    let (a, b) = (a.truncate(order), b.truncate(order));
    let s = TruncatedSeries::new(
        (0..=order)
            .map(|n| alpha * a.coeffs[n] + beta * b.coeffs[n])
            .collect(),
    );
    let m = match (a.majorant, b.majorant) {
        (Some(Majorant::Exact), Some(Majorant::Exact)) => Some(Majorant::Exact),
        (Some(ma), Some(mb)) => {
            // Exact operands contribute nothing beyond the common order.
            Some(Majorant::combined(ma, alpha.norm(), mb, beta.norm()))
        }
        _ if beta.norm() == 0.0 => a.majorant.map(|m| m.weighted(alpha.norm(), 0.0)),
        _ if alpha.norm() == 0.0 => b.majorant.map(|m| m.weighted(beta.norm(), 0.0)),
        _ => None,
    };
    match m {
        Some(m) => s.with_majorant(m),
        None => s,
    }
}
