use num_complex::Complex64;

use super::majorant::Majorant;
use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// A normalized function `f(z) = z + a_2 z^2 + ...` held through both
/// `f(z)/z = sum a_{n+1} z^n` and `z/f(z) = 1 + sum b_n z^n`.
///
/// Both series are stored at the same order `N`, so the `a`-side reaches
/// `a_{N+1}`. Constructors derive one side from the other by series
/// reciprocal, hence the two agree through degree `N` up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionRep {
    f_over_z: TruncatedSeries,
    z_over_f: TruncatedSeries,
}

const NORMALIZATION_TOL: f64 = 1e-12;

fn check_unit_constant(s: &TruncatedSeries, what: &str) -> Result<()> {
    let c0 = s.coeff(0);
    if !((c0 - 1.0).norm() <= NORMALIZATION_TOL) {
        return Err(Error::DegenerateTransform(format!(
            "{what} has constant term {c0}, expected 1"
        )));
    }
    if s.coeffs()
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(Error::DegenerateTransform(format!(
            "{what} has non-finite coefficients"
        )));
    }
    Ok(())
}

impl FunctionRep {
    /// From the coefficients `1, b_1, b_2, ...` of `z/f`.
    pub fn from_z_over_f(z_over_f: TruncatedSeries) -> Result<Self> {
        check_unit_constant(&z_over_f, "z/f")?;
        let f_over_z = z_over_f.reciprocal()?;
        check_unit_constant(&f_over_z, "f/z")?;
        Ok(Self { f_over_z, z_over_f })
    }

    /// From the coefficients `1, a_2, a_3, ...` of `f/z`.
    pub fn from_f_over_z(f_over_z: TruncatedSeries) -> Result<Self> {
        check_unit_constant(&f_over_z, "f/z")?;
        let z_over_f = f_over_z.reciprocal()?;
        check_unit_constant(&z_over_f, "z/f")?;
        Ok(Self { f_over_z, z_over_f })
    }

    /// From Taylor coefficients `a_0 = 0, a_1 = 1, a_2, ...` of `f`.
    pub fn from_f_coeffs(f: TruncatedSeries) -> Result<Self> {
        if f.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::DegenerateTransform("f(0) != 0".into()));
        }
        Self::from_f_over_z(f.shift_down(1))
    }

    /// Both sides supplied by the caller, which guarantees they are mutually
    /// reciprocal.
    pub(crate) fn from_parts(f_over_z: TruncatedSeries, z_over_f: TruncatedSeries) -> Self {
        debug_assert_eq!(f_over_z.order(), z_over_f.order());
        Self { f_over_z, z_over_f }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_parts(TruncatedSeries::one(order), TruncatedSeries::one(order))
    }

    /// Registers coefficient majorants for either side (absent ones are kept).
    pub fn with_majorants(mut self, a_side: Option<Majorant>, b_side: Option<Majorant>) -> Self {
        if let Some(m) = a_side {
            self.f_over_z = self.f_over_z.with_majorant(m);
        }
        if let Some(m) = b_side {
            self.z_over_f = self.z_over_f.with_majorant(m);
        }
        self
    }

    pub fn order(&self) -> usize {
        self.z_over_f.order()
    }

    pub fn z_over_f(&self) -> &TruncatedSeries {
        &self.z_over_f
    }

    pub fn f_over_z(&self) -> &TruncatedSeries {
        &self.f_over_z
    }

    /// Taylor coefficients `a_0 .. a_N` of `f` (order `N`).
    pub fn f_coeffs(&self) -> TruncatedSeries {
        self.f_over_z.shift_up(1).truncate(self.order())
    }

    /// `a_n`, the n-th Taylor coefficient of `f`.
    pub fn a(&self, n: usize) -> Complex64 {
        if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.f_over_z.coeff(n - 1)
        }
    }

    /// `b_n`, the n-th coefficient of `z/f`.
    pub fn b(&self, n: usize) -> Complex64 {
        self.z_over_f.coeff(n)
    }

    /// `f''(0)/2`, which equals `-b_1`.
    pub fn second_coefficient(&self) -> Complex64 {
        self.a(2)
    }

    /// Largest coefficient deviation of `(f/z)(z/f)` from 1 through degree
    /// `N`, relative to the size of the terms being summed.
    pub fn consistency_defect(&self) -> f64 {
        let n = self.order();
        let (c, b) = (self.f_over_z.coeffs(), self.z_over_f.coeffs());
        (0..=n)
            .map(|k| {
                let mut s = Complex64::new(if k == 0 { -1.0 } else { 0.0 }, 0.0);
                let mut mag = 1.0f64;
                for i in 0..=k {
                    let t = c[i] * b[k - i];
                    s += t;
                    mag = mag.max(t.norm());
                }
                s.norm() / mag
            })
            .fold(0.0, f64::max)
    }

    /// `f(z)` with an error bound from whichever stored side has the
    /// smaller certified truncation error at `|z|`.
    pub fn eval_f(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let r = z.norm();
        let direct = self.f_over_z.tail_bound(r).ok().map(|tail| {
            let v = z * self.f_over_z.eval(z);
            (v, r * tail)
        });
        let via_reciprocal = self.z_over_f.tail_bound(r).ok().map(|tail| {
            let q = self.z_over_f.eval(z);
            let qn = q.norm();
            let err = if qn > tail {
                r * tail / (qn * (qn - tail))
            } else {
                f64::INFINITY
            };
            (z / q, err)
        });
        match (direct, via_reciprocal) {
            (Some(a), Some(b)) => Ok(if a.1 <= b.1 { a } else { b }),
            (Some(a), None) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(Error::TailBoundUnavailable),
        }
    }

    /// Same function at a different truncation order. Raising the order is
    /// only possible when a side is exact.
    pub fn reordered(&self, order: usize) -> Result<Self> {
        if order <= self.order() {
            return Ok(Self::from_parts(
                self.f_over_z.truncate(order),
                self.z_over_f.truncate(order),
            ));
        }
        if self.z_over_f.is_exact() {
            let b = self.z_over_f.padded(order)?;
            let rep = Self::from_z_over_f(b)?;
            let a_major = self.f_over_z.majorant().filter(|m| !m.is_exact());
            return Ok(rep.with_majorants(a_major, None));
        }
        if self.f_over_z.is_exact() {
            let c = self.f_over_z.padded(order)?;
            let rep = Self::from_f_over_z(c)?;
            let b_major = self.z_over_f.majorant().filter(|m| !m.is_exact());
            return Ok(rep.with_majorants(None, b_major));
        }
        Err(Error::TailBoundUnavailable)
    }
}

/// Representation of `f(rz)/r`: both `a_{n+1}` and `b_n` pick up `r^n`.
pub fn dilate(rep: &FunctionRep, r: f64) -> Result<FunctionRep> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ArgumentOutOfRange {
            value: r,
            range: "(0,1)",
        });
    }
    Ok(FunctionRep::from_parts(
        rep.f_over_z().dilate(r),
        rep.z_over_f().dilate(r),
    ))
}

/// Taylor coefficients of `int_0^z t/f(t) dt = z + sum b_n z^{n+1}/(n+1)`,
/// truncated at the representation's order.
pub fn integrate_t_over_f(rep: &FunctionRep) -> TruncatedSeries {
    let n = rep.order();
    let b = rep.z_over_f();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 1..=n {
        coeffs[k] = b.coeff(k - 1) / k as f64;
    }
    let s = TruncatedSeries::new(coeffs);
    match b.majorant() {
        Some(Majorant::Exact) if b.degree() < n => s.with_majorant(Majorant::Exact),
        Some(Majorant::Exact) => s.with_majorant(
            Majorant::of_polynomial(
                &b.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c / (k + 1) as f64)
                    .collect::<Vec<_>>(),
                1.0,
            )
            .shifted_up(1),
        ),
        Some(m) => s.with_majorant(m.weighted(1.0, -1.0).shifted_up(1)),
        None => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn koebe(order: usize) -> FunctionRep {
        let mut b = vec![0.0; order + 1];
        b[0] = 1.0;
        b[1] = -2.0;
        b[2] = 1.0;
        FunctionRep::from_z_over_f(TruncatedSeries::exact_real(&b)).unwrap()
    }

    #[test]
    fn koebe_a_coefficients_are_n() {
        let k = koebe(40);
        for n in 1..=41 {
            assert!((k.a(n).re - n as f64).abs() < 1e-10);
        }
        assert!(k.consistency_defect() < 1e-14);
        assert!((k.second_coefficient().re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn f_coeffs_has_order_plus_one_entries() {
        let k = koebe(16);
        let f = k.f_coeffs();
        assert_eq!(f.coeffs().len(), 17);
        assert_eq!(f.coeff(0), Complex64::new(0.0, 0.0));
        assert_eq!(f.coeff(1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn integrate_examples() {
        let id = FunctionRep::identity(6);
        let s = integrate_t_over_f(&id);
        assert_eq!(s.coeff(1), Complex64::new(1.0, 0.0));
        assert!(s.coeffs().iter().skip(2).all(|c| c.norm() == 0.0));

        let k = integrate_t_over_f(&koebe(6));
        let expect = [0.0, 1.0, -1.0, 1.0 / 3.0, 0.0, 0.0, 0.0];
        for (n, e) in expect.iter().enumerate() {
            assert!((k.coeff(n).re - e).abs() < 1e-15);
        }
        assert!(k.is_exact());

        let hp = FunctionRep::from_z_over_f(TruncatedSeries::exact_real(&[1.0, -1.0, 0.0, 0.0]))
            .unwrap();
        let s = integrate_t_over_f(&hp);
        let expect = [0.0, 1.0, -0.5, 0.0];
        for (n, e) in expect.iter().enumerate() {
            assert!((s.coeff(n).re - e).abs() < 1e-15);
        }
    }

    #[test]
    fn dilate_examples() {
        let id = dilate(&FunctionRep::identity(5), 0.3).unwrap();
        assert_eq!(id, FunctionRep::identity(5));

        let k = dilate(&koebe(5), 0.5).unwrap();
        let expect = [1.0, -1.0, 0.25];
        for (n, e) in expect.iter().enumerate() {
            assert!((k.b(n).re - e).abs() < 1e-15);
        }

        let f1 =
            FunctionRep::from_f_coeffs(TruncatedSeries::exact_real(&[0.0, 1.0, 0.5, 0.0, 0.0]))
                .unwrap();
        let d = dilate(&f1, 0.5).unwrap();
        assert!((d.a(1).re - 1.0).abs() < 1e-15);
        assert!((d.a(2).re - 0.25).abs() < 1e-15);
        assert!(d.a(3).norm() < 1e-15);
        assert!(dilate(&f1, 1.0).is_err());
    }

    #[test]
    fn dilation_semigroup() {
        let k = koebe(30);
        let a = dilate(&dilate(&k, 0.8).unwrap(), 0.6).unwrap();
        let b = dilate(&k, 0.48).unwrap();
        for n in 0..=30 {
            assert!((a.b(n) - b.b(n)).norm() < 1e-12);
            assert!((a.a(n + 1) - b.a(n + 1)).norm() < 1e-12);
        }
    }

    #[test]
    fn eval_f_prefers_exact_side() {
        let k = koebe(64);
        let z = Complex64::new(-0.999, 0.0);
        let (v, err) = k.eval_f(z).unwrap();
        let expect = z / ((1.0 - z) * (1.0 - z));
        assert!((v - expect).norm() < 1e-14);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn reorder_exact_side() {
        let k = koebe(8).reordered(32).unwrap();
        assert_eq!(k.order(), 32);
        assert!((k.a(33).re - 33.0).abs() < 1e-9);
    }
}
