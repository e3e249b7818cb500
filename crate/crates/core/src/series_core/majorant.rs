use num_complex::Complex64;

/// Upper bound on the coefficient moduli of a power series, used to bound
/// the part of the series discarded by truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Majorant {
    /// Every coefficient beyond the stored order is zero.
    Exact,
    /// `|c_n| <= scale * (n+1)^power * ratio^n` for every `n >= 0`.
    Geometric { scale: f64, power: f64, ratio: f64 },
}

fn pos(x: f64) -> f64 {
    x.max(0.0)
}

impl Majorant {
    pub fn geometric(scale: f64, power: f64, ratio: f64) -> Self {
        assert!(scale >= 0.0 && ratio > 0.0, "invalid majorant");
        Majorant::Geometric {
            scale,
            power,
            ratio,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Majorant::Exact)
    }

    /// Value of the bound at index `n` (zero for exact series).
    pub fn bound_at(&self, n: usize) -> f64 {
        match *self {
            Majorant::Exact => 0.0,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => scale * ((n + 1) as f64).powf(power) * ratio.powi(n as i32),
        }
    }

    /// Enlarges the scale so the bound also holds on the stored prefix.
    pub fn covering(self, coeffs: &[Complex64]) -> Self {
        match self {
            Majorant::Exact => Majorant::Exact,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => {
                let mut s = scale;
                for (n, c) in coeffs.iter().enumerate() {
                    let unit = ((n + 1) as f64).powf(power) * ratio.powi(n as i32);
                    if unit > 0.0 && unit.is_finite() {
                        s = s.max(c.norm() / unit);
                    }
                }
                Majorant::Geometric {
                    scale: s,
                    power,
                    ratio,
                }
            }
        }
    }

    /// Geometric majorant with the given ratio for a finitely supported
    /// sequence.
    pub fn of_polynomial(coeffs: &[Complex64], ratio: f64) -> Self {
        Majorant::geometric(0.0, 0.0, ratio).covering(coeffs)
    }

    /// Bound for `|w(n) c_n|` given `|w(n)| <= factor * (n+1)^extra_power`.
    pub fn weighted(self, factor: f64, extra_power: f64) -> Self {
        match self {
            Majorant::Exact => Majorant::Exact,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => Majorant::Geometric {
                scale: scale * factor,
                power: power + extra_power,
                ratio,
            },
        }
    }

    /// Bound for `c_n r^n`.
    pub fn dilated(self, r: f64) -> Self {
        match self {
            Majorant::Exact => Majorant::Exact,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => Majorant::Geometric {
                scale,
                power,
                ratio: ratio * r,
            },
        }
    }

    /// Bound for the sequence `d_n = c_{n+k}`.
    pub fn shifted_down(self, k: usize) -> Self {
        match self {
            Majorant::Exact => Majorant::Exact,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => Majorant::Geometric {
                scale: scale * ((k + 1) as f64).powf(pos(power)) * ratio.powi(k as i32),
                power,
                ratio,
            },
        }
    }

    /// Bound for the sequence `d_n = c_{n-k}` (zero for `n < k`).
    pub fn shifted_up(self, k: usize) -> Self {
        match self {
            Majorant::Exact => Majorant::Exact,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => Majorant::Geometric {
                scale: scale * ((k + 1) as f64).powf(pos(-power)) / ratio.powi(k as i32),
                power,
                ratio,
            },
        }
    }

    /// Bound for `alpha a_n + beta b_n` from geometric bounds on both.
    pub fn combined(a: Self, alpha: f64, b: Self, beta: f64) -> Self {
        match (a, b) {
            (Majorant::Exact, Majorant::Exact) => Majorant::Exact,
            (
                Majorant::Exact,
                Majorant::Geometric {
                    scale,
                    power,
                    ratio,
                },
            ) => Majorant::Geometric {
                scale: beta * scale,
                power,
                ratio,
            },
            (
                Majorant::Geometric {
                    scale,
                    power,
                    ratio,
                },
                Majorant::Exact,
            ) => Majorant::Geometric {
                scale: alpha * scale,
                power,
                ratio,
            },
            (
                Majorant::Geometric {
                    scale: s1,
                    power: p1,
                    ratio: r1,
                },
                Majorant::Geometric {
                    scale: s2,
                    power: p2,
                    ratio: r2,
                },
            ) => Majorant::Geometric {
                scale: alpha * s1 + beta * s2,
                power: p1.max(p2),
                ratio: r1.max(r2),
            },
        }
    }

    /// Bound for the Cauchy product of two geometric majorants.
    pub fn convolved(a: Self, b: Self) -> Self {
        match (a, b) {
            (
                Majorant::Geometric {
                    scale: s1,
                    power: p1,
                    ratio: r1,
                },
                Majorant::Geometric {
                    scale: s2,
                    power: p2,
                    ratio: r2,
                },
            ) => Majorant::Geometric {
                scale: s1 * s2,
                power: pos(p1) + pos(p2) + 1.0,
                ratio: r1.max(r2),
            },
            _ => panic!("convolved expects geometric majorants"),
        }
    }

    /// Bound on `sum_{n > order} |c_n| r^n`. Infinite when the majorant does
    /// not decay at radius `r`.
    pub fn tail_sum(&self, order: usize, r: f64) -> f64 {
        let (scale, power, ratio) = match *self {
            Majorant::Exact => return 0.0,
            Majorant::Geometric {
                scale,
                power,
                ratio,
            } => (scale, power, ratio),
        };
        let q = ratio * r;
        if scale == 0.0 || q == 0.0 {
            return 0.0;
        }
        if q >= 1.0 {
            return f64::INFINITY;
        }
        let ln_q = q.ln();
        let term = |n: usize| scale * (power * ((n + 1) as f64).ln() + n as f64 * ln_q).exp();
        let mut acc = 0.0;
        let mut n = order + 1;
        // t_{n+1}/t_n = ((n+2)/(n+1))^power * q, nonincreasing in n for power > 0
        // and bounded by q otherwise.
        for _ in 0..50_000_000usize {
            let t = term(n);
            let kappa = if power <= 0.0 {
                q
            } else {
                ((n + 2) as f64 / (n + 1) as f64).powf(power) * q
            };
            // Sum explicitly until the geometric remainder is small next to
            // the running total, so the bound stays tight.
            if kappa < 1.0 {
                let rest = t / (1.0 - kappa);
                if rest <= 1e-3 * acc || rest < 1e-300 || n - order > 10_000_000 {
                    return acc + rest;
                }
            }
            acc += t;
            n += 1;
        }
        f64::INFINITY
    }
}
