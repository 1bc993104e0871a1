//! High-precision floating helpers: precision bookkeeping, symmetric
//! eigenvalues via Jacobi rotations, and polynomial root finding.
//!
//! These exist for the handful of places where exact rational arithmetic is
//! impossible: square roots of weights, logarithms, Schur powers with
//! fractional exponents, and recovering atom locations from a moment kernel.

use rug::ops::Pow;
use rug::Float;

use crate::Rat;

/// Working precision in decimal digits, converted to MPFR bits with guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub digits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Precision { digits }
    }

    /// MPFR precision in bits: digits·log2(10) plus guard bits.
    pub fn bits(self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: 50 }
    }
}

pub fn float_of(r: &Rat, prec: u32) -> Float {
    Float::with_val(prec, r)
}

/// 10^(-exp) as a Float, for tolerance thresholds.
pub fn pow10_neg(exp: u32, prec: u32) -> Float {
    Float::with_val(prec, 10).pow(-(exp as i32))
}

/// Eigenvalues of a symmetric matrix (row-major, n×n) by cyclic Jacobi
/// rotations. Plenty for the small Hankel matrices used here.
pub fn symmetric_eigenvalues(entries: &[Float], n: usize, prec: u32) -> Vec<Float> {
    assert_eq!(entries.len(), n * n, "matrix must be square");
    let mut a: Vec<Float> = entries.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let sweeps = 30 + 4 * n;
    let tiny = Float::with_val(prec, 2).pow(-(prec as i32) + 8);
    for _ in 0..sweeps {
        let mut off = Float::with_val(prec, 0);
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[idx(i, j)].clone().square();
            }
        }
        if off < tiny {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)].clone();
                if apq == 0 {
                    continue;
                }
                let app = a[idx(p, p)].clone();
                let aqq = a[idx(q, q)].clone();
                let theta = (aqq.clone() - &app) / (Float::with_val(prec, 2) * &apq);
                // t = sign(theta)/(|theta| + sqrt(theta^2+1))
                let t = {
                    let root = theta.clone().square() + Float::with_val(prec, 1);
                    let root = root.sqrt();
                    let denom = theta.clone().abs() + root;
                    let mag = Float::with_val(prec, 1) / denom;
                    if theta < 0 {
                        -mag
                    } else {
                        mag
                    }
                };
                let c = (t.clone().square() + Float::with_val(prec, 1))
                    .sqrt()
                    .recip();
                let s = t.clone() * &c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[idx(k, p)].clone();
                    let akq = a[idx(k, q)].clone();
                    let new_kp = c.clone() * &akp - s.clone() * &akq;
                    let new_kq = s.clone() * &akp + c.clone() * &akq;
                    a[idx(k, p)] = new_kp.clone();
                    a[idx(p, k)] = new_kp;
                    a[idx(k, q)] = new_kq.clone();
                    a[idx(q, k)] = new_kq;
                }
                let app_new = app.clone() - t.clone() * &apq;
                let aqq_new = aqq.clone() + t.clone() * &apq;
                a[idx(p, p)] = app_new;
                a[idx(q, q)] = aqq_new;
                a[idx(p, q)] = Float::with_val(prec, 0);
                a[idx(q, p)] = Float::with_val(prec, 0);
            }
        }
    }
    (0..n).map(|i| a[idx(i, i)].clone()).collect()
}

/// Complex number on MPFR floats, just enough for Durand–Kerner.
#[derive(Clone, Debug)]
pub struct CF {
    pub re: Float,
    pub im: Float,
}

impl CF {
    pub fn new(re: Float, im: Float) -> Self {
        CF { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        CF::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn add(&self, o: &CF) -> CF {
        CF::new(self.re.clone() + &o.re, self.im.clone() + &o.im)
    }

    pub fn sub(&self, o: &CF) -> CF {
        CF::new(self.re.clone() - &o.re, self.im.clone() - &o.im)
    }

    pub fn mul(&self, o: &CF) -> CF {
        CF::new(
            self.re.clone() * &o.re - self.im.clone() * &o.im,
            self.re.clone() * &o.im + self.im.clone() * &o.re,
        )
    }

    pub fn div(&self, o: &CF) -> CF {
        let d = o.re.clone().square() + o.im.clone().square();
        CF::new(
            (self.re.clone() * &o.re + self.im.clone() * &o.im) / &d,
            (self.im.clone() * &o.re - self.re.clone() * &o.im) / &d,
        )
    }

    pub fn norm(&self) -> Float {
        (self.re.clone().square() + self.im.clone().square()).sqrt()
    }
}

/// Roots of the monic polynomial x^r + c_{r-1}·x^{r-1} + … + c_0 with exact
/// rational coefficients, by Durand–Kerner iteration at `prec` bits.
///
/// `coefs[i]` is the coefficient of x^i, length r. Returns r roots.
pub fn monic_roots(coefs: &[Rat], prec: u32) -> Vec<CF> {
    let r = coefs.len();
    if r == 0 {
        return Vec::new();
    }
    let cf: Vec<CF> = coefs
        .iter()
        .map(|c| CF::new(Float::with_val(prec, c), Float::with_val(prec, 0)))
        .collect();
    let eval = |z: &CF| -> CF {
        // Horner with leading coefficient 1.
        let mut acc = CF::from_f64(1.0, 0.0, prec);
        for i in (0..r).rev() {
            acc = acc.mul(z).add(&cf[i]);
        }
        acc
    };
    // Standard non-real starting points spread on a circle.
    let radius: Float = {
        let mut m = Float::with_val(prec, 0);
        for c in coefs {
            let a = Float::with_val(prec, c).abs();
            if a > m {
                m = a;
            }
        }
        m + 1
    };
    let mut roots: Vec<CF> = (0..r)
        .map(|i| {
            let angle = 0.4 + 2.0 * std::f64::consts::PI * (i as f64) / (r as f64);
            let re = radius.clone() * Float::with_val(prec, angle.cos());
            let im = radius.clone() * Float::with_val(prec, angle.sin());
            CF::new(re, im)
        })
        .collect();
    let tol = Float::with_val(prec, 2).pow(-(prec as i32) + 24);
    for _ in 0..400 {
        let mut max_step = Float::with_val(prec, 0);
        for i in 0..r {
            let zi = roots[i].clone();
            let mut denom = CF::from_f64(1.0, 0.0, prec);
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    denom = denom.mul(&zi.sub(zj));
                }
            }
            let step = eval(&zi).div(&denom);
            let ns = step.norm();
            if ns > max_step {
                max_step = ns.clone();
            }
            roots[i] = zi.sub(&step);
        }
        if max_step < tol {
            break;
        }
    }
    roots
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// by continued fractions.
pub fn snap_to_rational(x: &Float, max_den: u32) -> Rat {
    let prec = x.prec();
    // Continued fraction expansion of x.
    let mut a = x.clone();
    let mut h_prev = Rat::from(1);
    let mut h = {
        let fl = a.clone().floor();
        Rat::from(fl.to_integer().unwrap_or_default())
    };
    let mut k_prev = Rat::from(0);
    let mut k = Rat::from(1);
    let mut approx = h.clone() / k.clone();
    for _ in 0..64 {
        let fl = a.clone().floor();
        let frac = a.clone() - &fl;
        if frac == 0 {
            break;
        }
        a = Float::with_val(prec, 1) / frac;
        let digit = {
            let f = a.clone().floor();
            Rat::from(f.to_integer().unwrap_or_default())
        };
        let h_next = digit.clone() * &h + &h_prev;
        let k_next = digit * &k + &k_prev;
        if k_next.numer().clone() > rug::Integer::from(max_den) {
            break;
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        approx = h.clone() / k.clone();
    }
    approx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn jacobi_eigenvalues_of_2x2() {
        let prec = Precision::new(40).bits();
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let m = vec![
            Float::with_val(prec, 2),
            Float::with_val(prec, 1),
            Float::with_val(prec, 1),
            Float::with_val(prec, 2),
        ];
        let mut ev = symmetric_eigenvalues(&m, 2, prec);
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0].clone() - 1u32).abs() < Float::with_val(64, 1e-30));
        assert!((ev[1].clone() - 3u32).abs() < Float::with_val(64, 1e-30));
    }

    #[test]
    fn durand_kerner_finds_rational_roots() {
        let prec = Precision::new(50).bits();
        // x^2 - (3/2)x + 1/2 = (x - 1)(x - 1/2)
        let roots = monic_roots(&[rat(1, 2), rat(-3, 2)], prec);
        let mut reals: Vec<Float> = roots.iter().map(|z| z.re.clone()).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((reals[0].clone() - 0.5f64).abs() < Float::with_val(64, 1e-40));
        assert!((reals[1].clone() - 1f64).abs() < Float::with_val(64, 1e-40));
        for z in roots {
            assert!(z.im.abs() < Float::with_val(64, 1e-40));
        }
    }

    #[test]
    fn snap_finds_small_denominators() {
        let prec = Precision::new(50).bits();
        let x = Float::with_val(prec, Rat::from((1, 3))) + Float::with_val(prec, 1e-30);
        assert_eq!(snap_to_rational(&x, 64), rat(1, 3));
        let y = Float::with_val(prec, Rat::from((5, 8)));
        assert_eq!(snap_to_rational(&y, 64), rat(5, 8));
    }
}
