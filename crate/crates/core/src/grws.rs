//! Geometrically regular and homographic weight generators, parameter-plane
//! sector location, and finitely atomic representing measures.
//!
//! A geometrically regular weighted shift (GRWS) has weights
//! sqrt((p^k + n)/(p^k + d)) with p > 1 and n, d > −1. The open parameter
//! square −1 < n, d < 1 splits into sectors with known operator-theoretic
//! behaviour; three families of parameters outside the square keep their
//! in-square behaviour (the region above sector III, the rays d = p^k·n,
//! and the bands between consecutive rays), and every other exterior point
//! is reported as unclassified with no claims attached.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::precise::{self, Precision};
use crate::seq::{MomentSeq, SqWeightSeq};
use crate::Rat;

/// Parameters (p, n, d) of a geometrically regular weighted shift.
#[derive(Clone, Debug, PartialEq)]
pub struct GrwsParams {
    pub p: Rat,
    pub n: Rat,
    pub d: Rat,
}

impl GrwsParams {
    /// Requires p > 1 and n, d > −1, which keeps every weight positive.
    pub fn new(p: Rat, n: Rat, d: Rat) -> Result<Self> {
        if p <= 1i32 {
            return Err(Error::InvalidParams(format!("grws ratio must satisfy p > 1, got {p}")));
        }
        if n <= -1i32 || d <= -1i32 {
            return Err(Error::InvalidParams(format!(
                "grws offsets must exceed -1, got n = {n}, d = {d}"
            )));
        }
        Ok(GrwsParams { p, n, d })
    }

    /// Weight squared at index k: (p^k + n)/(p^k + d), exact.
    pub fn weight_sq(&self, k: u64) -> Rat {
        let pk = self.p.clone().pow(u32::try_from(k).expect("index fits in u32"));
        (pk.clone() + &self.n) / (pk + &self.d)
    }

    pub fn seq(&self) -> SqWeightSeq {
        SqWeightSeq::grws(self.p.clone(), self.n.clone(), self.d.clone())
            .expect("validated parameters")
    }
}

/// Parameters of a homographic shift with weights sqrt((a·k + b)/(c·k + d)).
#[derive(Clone, Debug, PartialEq)]
pub struct HomographicParams {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl HomographicParams {
    /// All four parameters must be positive.
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        if a <= 0i32 || b <= 0i32 || c <= 0i32 || d <= 0i32 {
            return Err(Error::InvalidParams(format!(
                "homographic parameters must be positive, got ({a}, {b}, {c}, {d})"
            )));
        }
        Ok(HomographicParams { a, b, c, d })
    }

    /// Weight squared at index k: (a·k + b)/(c·k + d), exact.
    pub fn weight_sq(&self, k: u64) -> Rat {
        let kk = Rat::from(k);
        (self.a.clone() * &kk + &self.b) / (self.c.clone() * &kk + &self.d)
    }

    /// a·d − b·c > 0 certifies moment infinite divisibility.
    pub fn mid_certified(&self) -> bool {
        self.a.clone() * &self.d - self.b.clone() * &self.c > 0i32
    }

    pub fn seq(&self) -> SqWeightSeq {
        SqWeightSeq::homographic(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        )
        .expect("validated parameters")
    }
}

/// Sector of the (n, d) parameter plane for a fixed ratio p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectorTag {
    /// n = d: the unweighted shift.
    Diagonal,
    I,
    II,
    III,
    /// d = p^k·n with n > 0, inside the unit square.
    SpecialLine { k: u32 },
    /// p^(k−1)·n < d < p^k·n with n > 0, inside the unit square.
    Band { k: u32 },
    V,
    VI,
    VII,
    VIII,
    /// p·n < d < n < 0: the wedge below the diagonal where complete
    /// hyperexpansivity holds.
    VIIIA,
    /// d ≥ 1 and −1 < n ≤ 0: keeps the sector-III representing measure.
    AboveIII,
    /// d = p^k·n with n > 0, outside the unit square.
    ExtendedSpecialLine { k: u32 },
    /// Between consecutive rays with n > 0, outside the unit square.
    ExtendedBand { k: u32 },
    /// Exterior parameters with no stated extension.
    Unclassified,
}

impl std::fmt::Display for SectorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SectorTag::Diagonal => write!(f, "Diagonal"),
            SectorTag::I => write!(f, "I"),
            SectorTag::II => write!(f, "II"),
            SectorTag::III => write!(f, "III"),
            SectorTag::SpecialLine { k } => write!(f, "IV_SpecialLine({k})"),
            SectorTag::Band { k } => write!(f, "IV_Band({k})"),
            SectorTag::V => write!(f, "V"),
            SectorTag::VI => write!(f, "VI"),
            SectorTag::VII => write!(f, "VII"),
            SectorTag::VIII => write!(f, "VIII"),
            SectorTag::VIIIA => write!(f, "VIIIA"),
            SectorTag::AboveIII => write!(f, "AboveIII"),
            SectorTag::ExtendedSpecialLine { k } => write!(f, "ExtendedSpecialLine({k})"),
            SectorTag::ExtendedBand { k } => write!(f, "ExtendedBand({k})"),
            SectorTag::Unclassified => write!(f, "Unclassified"),
        }
    }
}

/// A property the sector location predicts for the shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Unweighted,
    /// `bernstein_weights`: the weight-squared sequence is interpolated by a
    /// Bernstein function (sector I), not merely log-Bernstein (sector II).
    Mid { bernstein_weights: bool },
    /// `atoms`: number of atoms of the representing measure, when finite.
    Subnormal { atoms: Option<u32> },
    NotMid,
    /// k-hyponormal but not (k+1)-hyponormal.
    ExactlyKHyponormal { k: u32 },
    CompletelyHyperexpansive,
}

impl Claim {
    pub fn describe(&self) -> String {
        match self {
            Claim::Unweighted => "unweighted shift (all weights 1)".into(),
            Claim::Mid {
                bernstein_weights: true,
            } => "moment infinitely divisible; weights squared Bernstein-interpolated".into(),
            Claim::Mid { .. } => "moment infinitely divisible".into(),
            Claim::Subnormal { atoms: Some(r) } => {
                format!("subnormal with a finitely atomic representing measure ({r} atoms)")
            }
            Claim::Subnormal { atoms: None } => "subnormal".into(),
            Claim::NotMid => "not moment infinitely divisible".into(),
            Claim::ExactlyKHyponormal { k } => {
                format!("{k}-hyponormal but not {}-hyponormal", k + 1)
            }
            Claim::CompletelyHyperexpansive => "completely hyperexpansive".into(),
        }
    }
}

/// Sector tag plus the properties it predicts.
#[derive(Clone, Debug, PartialEq)]
pub struct Sector {
    pub tag: SectorTag,
    pub claims: Vec<Claim>,
}

/// Locate (p, n, d) in the parameter plane.
///
/// Boundary conventions: the diagonal beats the k = 0 ray (same line);
/// rays beat bands; the anti-diagonal d = −n goes with sector II above the
/// axis and sector VII below; the half-axes go with III (d > 0 = n),
/// V (d = 0 < n) and VII (n = 0 > d).
pub fn locate_sector(params: &GrwsParams) -> Sector {
    let GrwsParams { p, n, d } = params;
    let one = Rat::from(1);

    if n == d {
        return Sector {
            tag: SectorTag::Diagonal,
            claims: vec![
                Claim::Unweighted,
                Claim::Mid {
                    bernstein_weights: false,
                },
                Claim::CompletelyHyperexpansive,
            ],
        };
    }

    // Upper wedge d > n > 0: rays d = p^k·n and the bands between them.
    if *n > 0i32 && d > n {
        let ratio = d.clone() / n;
        let mut k = 1u32;
        let mut pk = p.clone();
        while pk < ratio {
            k += 1;
            pk *= p;
        }
        let on_ray = pk == ratio;
        let inside = *n < one && *d < one;
        let tag = match (on_ray, inside) {
            (true, true) => SectorTag::SpecialLine { k },
            (true, false) => SectorTag::ExtendedSpecialLine { k },
            (false, true) => SectorTag::Band { k },
            (false, false) => SectorTag::ExtendedBand { k },
        };
        let claims = if on_ray {
            vec![Claim::Subnormal { atoms: Some(k + 1) }, Claim::NotMid]
        } else {
            vec![Claim::ExactlyKHyponormal { k }]
        };
        return Sector { tag, claims };
    }

    // Region over the anti-diagonal with n ≤ 0: sector III and its upward
    // extension, both subnormal. Includes the positive d half-axis.
    if *n <= 0i32 && d.clone() + n > 0i32 {
        let tag = if *d >= one {
            SectorTag::AboveIII
        } else {
            SectorTag::III
        };
        return Sector {
            tag,
            claims: vec![Claim::Subnormal { atoms: None }],
        };
    }

    // Left wedge n < d ≤ −n (n < 0): sectors I and II.
    if *n < 0i32 && n < d && d.clone() + n <= 0i32 {
        return if *d <= 0i32 {
            Sector {
                tag: SectorTag::I,
                claims: vec![Claim::Mid {
                    bernstein_weights: true,
                }],
            }
        } else {
            Sector {
                tag: SectorTag::II,
                claims: vec![Claim::Mid {
                    bernstein_weights: false,
                }],
            }
        };
    }

    // Lower wedge below the diagonal with n < 0: VIIIA next to the
    // diagonal (p·n < d < n), VIII below it.
    if *n < 0i32 && d < n {
        let pn = p.clone() * n;
        return if *d > pn {
            Sector {
                tag: SectorTag::VIIIA,
                claims: vec![Claim::CompletelyHyperexpansive],
            }
        } else {
            Sector {
                tag: SectorTag::VIII,
                claims: vec![],
            }
        };
    }

    // Remaining cases have n > 0, d < n (or n = 0, d < 0): sectors V-VII
    // inside the square, unclassified outside.
    if *n >= one {
        return Sector {
            tag: SectorTag::Unclassified,
            claims: vec![],
        };
    }
    let tag = if *n > 0i32 && *d >= 0i32 {
        SectorTag::V
    } else if *n > 0i32 && d.clone() + n > 0i32 {
        SectorTag::VI
    } else {
        SectorTag::VII
    };
    Sector { tag, claims: vec![] }
}

/// Exact rational or high-precision scalar, for atoms, masses and residuals.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Rat),
    Approx(Float),
}

impl Scalar {
    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Scalar::Exact(r) => Float::with_val(prec, r),
            Scalar::Approx(f) => Float::with_val(prec, f),
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(x) => write!(f, "{}", x.to_f64()),
        }
    }
}

/// Finitely atomic candidate representing measure: (location, mass) pairs
/// with positive masses summing to one.
#[derive(Clone, Debug)]
pub struct AtomicMeasure {
    pub atoms: Vec<(Scalar, Scalar)>,
}

impl AtomicMeasure {
    /// All-exact constructor; checks positivity and total mass one.
    pub fn exact(atoms: Vec<(Rat, Rat)>) -> Result<Self> {
        let mut total = Rat::new();
        for (_, m) in &atoms {
            if *m <= 0i32 {
                return Err(Error::InvalidParams(format!("atom mass must be positive, got {m}")));
            }
            total += m;
        }
        if total != 1i32 {
            return Err(Error::InvalidParams(format!("masses must sum to 1, got {total}")));
        }
        Ok(AtomicMeasure {
            atoms: atoms
                .into_iter()
                .map(|(t, m)| (Scalar::Exact(t), Scalar::Exact(m)))
                .collect(),
        })
    }

    pub fn all_exact(&self) -> bool {
        self.atoms
            .iter()
            .all(|(t, m)| t.exact().is_some() && m.exact().is_some())
    }
}

/// Result of a moment-kernel fit.
#[derive(Clone, Debug)]
pub struct BergerFit {
    pub measure: AtomicMeasure,
    /// Max |γ_n − Σ w_i·t_i^n| over all provided moments.
    pub residual: Scalar,
    /// Whether the atoms were snapped to small rationals.
    pub snapped: bool,
}

/// Default denominator bound for rational snapping of recovered atoms.
pub const DEFAULT_SNAP_DEN: u32 = 64;
/// Default acceptance threshold exponent for the fit residual.
pub const DEFAULT_FIT_TOL_EXP: u32 = 9;

/// Recover an r-atomic measure from moments by the Hankel-kernel method:
/// solve Σ_{i<r} c_i·γ_{m+i} = −γ_{m+r} exactly, take the roots of the
/// monic polynomial with coefficients c as atom locations, solve the
/// Vandermonde system for masses, and snap atoms to nearby small rationals
/// when that does not increase the residual.
///
/// Fails when the kernel system is singular, when roots are complex,
/// repeated or nonpositive, when masses are nonpositive, or when the best
/// residual exceeds 10^(−fit_tol_exp).
pub fn berger_fit(
    gamma: &MomentSeq,
    r: usize,
    precision: Precision,
    snap_den: u32,
    fit_tol_exp: u32,
) -> Result<BergerFit> {
    if r == 0 {
        return Err(Error::InvalidParams("atom count must be at least 1".into()));
    }
    if gamma.len() < 2 * r {
        return Err(Error::InsufficientMoments {
            have: gamma.len(),
            need: 2 * r,
        });
    }
    let prec = precision.bits();

    // Exact kernel solve.
    let mut aug: Vec<Vec<Rat>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rat> = (0..r).map(|j| gamma.gamma(i + j).clone()).collect();
            row.push(-gamma.gamma(i + r).clone());
            row
        })
        .collect();
    let coefs = solve_exact(&mut aug).ok_or_else(|| Error::NoAtomicRepresentation {
        r,
        reason: "moment kernel system is singular (fewer independent modes than requested atoms)"
            .into(),
    })?;

    // Atom locations.
    let roots = precise::monic_roots(&coefs, prec);
    let tol = precise::pow10_neg(precision.digits.saturating_sub(10), prec);
    let mut locations: Vec<Float> = Vec::with_capacity(r);
    for z in &roots {
        if z.im.clone().abs() > tol {
            return Err(Error::NoAtomicRepresentation {
                r,
                reason: "kernel polynomial has complex roots".into(),
            });
        }
        locations.push(z.re.clone());
    }
    locations.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for pair in locations.windows(2) {
        if (pair[1].clone() - &pair[0]).abs() < tol {
            return Err(Error::NoAtomicRepresentation {
                r,
                reason: "kernel polynomial has a repeated root".into(),
            });
        }
    }
    if locations[0] <= tol {
        return Err(Error::NoAtomicRepresentation {
            r,
            reason: "recovered atom location is not strictly positive".into(),
        });
    }

    // Masses from the Vandermonde system.
    let masses = vandermonde_masses_float(&locations, gamma, prec).ok_or(
        Error::NoAtomicRepresentation {
            r,
            reason: "Vandermonde system for masses is singular".into(),
        },
    )?;
    for m in &masses {
        if *m <= tol.clone() {
            return Err(Error::NoAtomicRepresentation {
                r,
                reason: "recovered mass is not positive".into(),
            });
        }
    }
    let residual_raw = residual_float(&locations, &masses, gamma, prec);

    // Rational snapping: adopt when it does not worsen the residual.
    let snapped_atoms: Vec<Rat> = locations
        .iter()
        .map(|t| precise::snap_to_rational(t, snap_den))
        .collect();
    let mut best: Option<BergerFit> = None;
    let distinct = snapped_atoms.windows(2).all(|w| w[0] != w[1]);
    if distinct && snapped_atoms.iter().all(|t| *t > 0i32) {
        if let Some(exact_masses) = vandermonde_masses_exact(&snapped_atoms, gamma) {
            if exact_masses.iter().all(|m| *m > 0i32) {
                let exact_res = residual_exact(&snapped_atoms, &exact_masses, gamma);
                let res_f = Float::with_val(prec, &exact_res);
                if res_f <= residual_raw {
                    best = Some(BergerFit {
                        measure: AtomicMeasure {
                            atoms: snapped_atoms
                                .into_iter()
                                .zip(exact_masses)
                                .map(|(t, m)| (Scalar::Exact(t), Scalar::Exact(m)))
                                .collect(),
                        },
                        residual: Scalar::Exact(exact_res),
                        snapped: true,
                    });
                }
            }
        }
    }
    let fit = best.unwrap_or_else(|| BergerFit {
        measure: AtomicMeasure {
            atoms: locations
                .into_iter()
                .zip(masses)
                .map(|(t, m)| (Scalar::Approx(t), Scalar::Approx(m)))
                .collect(),
        },
        residual: Scalar::Approx(residual_raw),
        snapped: false,
    });

    let threshold = precise::pow10_neg(fit_tol_exp, prec);
    if fit.residual.to_float(prec) > threshold {
        return Err(Error::NoAtomicRepresentation {
            r,
            reason: format!(
                "best fit residual {} exceeds tolerance 1e-{}",
                fit.residual, fit_tol_exp
            ),
        });
    }
    Ok(fit)
}

/// Max_{n ≤ n_max} |γ_n − Σ w_i·t_i^n|: exact when the measure is exact,
/// otherwise evaluated at `precision`.
pub fn berger_verify(
    measure: &AtomicMeasure,
    gamma: &MomentSeq,
    n_max: usize,
    precision: Precision,
) -> Scalar {
    let n_hi = n_max.min(gamma.len().saturating_sub(1));
    if measure.all_exact() {
        let mut worst = Rat::new();
        for n in 0..=n_hi {
            let mut acc = Rat::new();
            for (t, m) in &measure.atoms {
                acc += t.exact().unwrap().clone().pow(n as u32) * m.exact().unwrap();
            }
            let diff = (gamma.gamma(n).clone() - acc).abs();
            if diff > worst {
                worst = diff;
            }
        }
        Scalar::Exact(worst)
    } else {
        let prec = precision.bits();
        let mut worst = Float::with_val(prec, 0);
        for n in 0..=n_hi {
            let mut acc = Float::with_val(prec, 0);
            for (t, m) in &measure.atoms {
                let tf = t.to_float(prec);
                acc += tf.pow(n as u32) * m.to_float(prec);
            }
            let diff = (Float::with_val(prec, gamma.gamma(n)) - acc).abs();
            if diff > worst {
                worst = diff;
            }
        }
        Scalar::Approx(worst)
    }
}

/// Gaussian elimination on an augmented r×(r+1) system, exact. Returns the
/// solution or None when singular.
fn solve_exact(aug: &mut [Vec<Rat>]) -> Option<Vec<Rat>> {
    let r = aug.len();
    for col in 0..r {
        let pivot = (col..r).find(|&row| aug[row][col] != 0i32)?;
        aug.swap(col, pivot);
        let pv = aug[col][col].clone();
        for j in col..=r {
            let v = aug[col][j].clone() / &pv;
            aug[col][j] = v;
        }
        for row in 0..r {
            if row == col {
                continue;
            }
            let factor = aug[row][col].clone();
            if factor == 0i32 {
                continue;
            }
            for j in col..=r {
                let sub = factor.clone() * &aug[col][j];
                aug[row][j] -= sub;
            }
        }
    }
    Some((0..r).map(|i| aug[i][r].clone()).collect())
}

fn vandermonde_masses_float(atoms: &[Float], gamma: &MomentSeq, prec: u32) -> Option<Vec<Float>> {
    let r = atoms.len();
    let mut aug: Vec<Vec<Float>> = (0..r)
        .map(|i| {
            let mut row: Vec<Float> = atoms
                .iter()
                .map(|t| Float::with_val(prec, t).pow(i as u32))
                .collect();
            row.push(Float::with_val(prec, gamma.gamma(i)));
            row
        })
        .collect();
    for col in 0..r {
        let mut best = col;
        for row in (col + 1)..r {
            if aug[row][col].clone().abs() > aug[best][col].clone().abs() {
                best = row;
            }
        }
        if aug[best][col] == 0 {
            return None;
        }
        aug.swap(col, best);
        let pv = aug[col][col].clone();
        for j in col..=r {
            let v = aug[col][j].clone() / &pv;
            aug[col][j] = v;
        }
        for row in 0..r {
            if row == col {
                continue;
            }
            let factor = aug[row][col].clone();
            for j in col..=r {
                let sub = factor.clone() * &aug[col][j];
                aug[row][j] -= sub;
            }
        }
    }
    Some((0..r).map(|i| aug[i][r].clone()).collect())
}

fn vandermonde_masses_exact(atoms: &[Rat], gamma: &MomentSeq) -> Option<Vec<Rat>> {
    let r = atoms.len();
    let mut aug: Vec<Vec<Rat>> = (0..r)
        .map(|i| {
            let mut row: Vec<Rat> = atoms.iter().map(|t| t.clone().pow(i as u32)).collect();
            row.push(gamma.gamma(i).clone());
            row
        })
        .collect();
    solve_exact(&mut aug)
}

fn residual_float(atoms: &[Float], masses: &[Float], gamma: &MomentSeq, prec: u32) -> Float {
    let mut worst = Float::with_val(prec, 0);
    for n in 0..gamma.len() {
        let mut acc = Float::with_val(prec, 0);
        for (t, m) in atoms.iter().zip(masses.iter()) {
            acc += Float::with_val(prec, t).pow(n as u32) * m;
        }
        let diff = (Float::with_val(prec, gamma.gamma(n)) - acc).abs();
        if diff > worst {
            worst = diff;
        }
    }
    worst
}

fn residual_exact(atoms: &[Rat], masses: &[Rat], gamma: &MomentSeq) -> Rat {
    let mut worst = Rat::new();
    for n in 0..gamma.len() {
        let mut acc = Rat::new();
        for (t, m) in atoms.iter().zip(masses.iter()) {
            acc += t.clone().pow(n as u32) * m;
        }
        let diff = (gamma.gamma(n).clone() - acc).abs();
        if diff > worst {
            worst = diff;
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::moments;
    use crate::{rat, rat_int};

    fn sector_of(p: i64, n: (i64, i64), d: (i64, i64)) -> Sector {
        locate_sector(&GrwsParams::new(rat_int(p), Rat::from(n), Rat::from(d)).unwrap())
    }

    #[test]
    fn grws_weight_values() {
        let diag = GrwsParams::new(rat_int(2), rat(1, 4), rat(1, 4)).unwrap();
        for k in 0..10 {
            assert_eq!(diag.weight_sq(k), rat_int(1));
        }
        let founder3 = GrwsParams::new(rat_int(2), rat_int(2), rat_int(4)).unwrap();
        assert_eq!(founder3.weight_sq(0), rat(3, 5));
        let mixed = GrwsParams::new(rat_int(2), rat(-1, 3), rat(2, 3)).unwrap();
        assert_eq!(mixed.weight_sq(1), rat(5, 8));
    }

    #[test]
    fn homographic_values_and_mid_certificate() {
        let bergman =
            HomographicParams::new(rat_int(1), rat_int(1), rat_int(1), rat_int(2)).unwrap();
        for k in 0..20 {
            assert_eq!(bergman.weight_sq(k), rat(k as i64 + 1, k as i64 + 2));
        }
        assert!(bergman.mid_certified());

        let flat = HomographicParams::new(rat_int(1), rat_int(1), rat_int(1), rat_int(1)).unwrap();
        for k in 0..20 {
            assert_eq!(flat.weight_sq(k), rat_int(1));
        }

        let not_mid =
            HomographicParams::new(rat_int(1), rat_int(2), rat_int(1), rat_int(1)).unwrap();
        assert!(!not_mid.mid_certified());
    }

    #[test]
    fn sector_examples_from_the_parameter_square() {
        assert_eq!(sector_of(2, (1, 3), (2, 3)).tag, SectorTag::SpecialLine { k: 1 });
        assert_eq!(sector_of(2, (1, 3), (1, 2)).tag, SectorTag::Band { k: 1 });
        assert_eq!(sector_of(2, (1, 4), (1, 4)).tag, SectorTag::Diagonal);
        assert_eq!(sector_of(2, (1, 5), (3, 5)).tag, SectorTag::Band { k: 2 });
        assert_eq!(sector_of(2, (-3, 4), (-1, 4)).tag, SectorTag::I);
        assert_eq!(sector_of(2, (-1, 2), (1, 4)).tag, SectorTag::II);
        assert_eq!(sector_of(2, (-1, 4), (1, 2)).tag, SectorTag::III);
        assert_eq!(sector_of(2, (3, 4), (1, 4)).tag, SectorTag::V);
        assert_eq!(sector_of(2, (3, 4), (-1, 4)).tag, SectorTag::VI);
        assert_eq!(sector_of(2, (1, 4), (-1, 2)).tag, SectorTag::VII);
        assert_eq!(sector_of(2, (-1, 4), (-3, 4)).tag, SectorTag::VIII);
        assert_eq!(sector_of(2, (-3, 4), (-7, 8)).tag, SectorTag::VIIIA);
    }

    #[test]
    fn sector_extensions_outside_the_square() {
        assert_eq!(
            sector_of(2, (2, 1), (4, 1)).tag,
            SectorTag::ExtendedSpecialLine { k: 1 }
        );
        assert_eq!(sector_of(2, (3, 1), (4, 1)).tag, SectorTag::ExtendedBand { k: 1 });
        assert_eq!(sector_of(2, (-1, 2), (3, 2)).tag, SectorTag::AboveIII);
        assert_eq!(sector_of(2, (0, 1), (3, 2)).tag, SectorTag::AboveIII);
        // Exterior with no stated extension: unclassified, no claims.
        let s = sector_of(2, (2, 1), (1, 2));
        assert_eq!(s.tag, SectorTag::Unclassified);
        assert!(s.claims.is_empty());
        // Diagonal outside the square is still the unweighted shift.
        assert_eq!(sector_of(2, (3, 1), (3, 1)).tag, SectorTag::Diagonal);
    }

    #[test]
    fn special_line_claims_include_atom_count() {
        let s = sector_of(2, (1, 3), (2, 3));
        assert!(s.claims.contains(&Claim::Subnormal { atoms: Some(2) }));
        assert!(s.claims.contains(&Claim::NotMid));
        let b = sector_of(2, (1, 5), (3, 5));
        assert_eq!(b.claims, vec![Claim::ExactlyKHyponormal { k: 2 }]);
    }

    #[test]
    fn berger_fit_recovers_the_two_atom_measure() {
        let w = GrwsParams::new(rat_int(2), rat_int(2), rat_int(4)).unwrap().seq();
        let gamma = moments(&w, 30);
        let fit = berger_fit(
            &gamma,
            2,
            Precision::default(),
            DEFAULT_SNAP_DEN,
            DEFAULT_FIT_TOL_EXP,
        )
        .unwrap();
        assert!(fit.snapped);
        let atoms: Vec<(Rat, Rat)> = fit
            .measure
            .atoms
            .iter()
            .map(|(t, m)| (t.exact().unwrap().clone(), m.exact().unwrap().clone()))
            .collect();
        assert_eq!(atoms, vec![(rat(1, 2), rat(4, 5)), (rat_int(1), rat(1, 5))]);
        assert_eq!(fit.residual.exact(), Some(&rat_int(0)));
    }

    #[test]
    fn berger_fit_dirac_for_unweighted() {
        let gamma = moments(&SqWeightSeq::ones(), 10);
        let fit = berger_fit(&gamma, 1, Precision::default(), 64, 9).unwrap();
        let (t, m) = &fit.measure.atoms[0];
        assert_eq!(t.exact(), Some(&rat_int(1)));
        assert_eq!(m.exact(), Some(&rat_int(1)));
    }

    #[test]
    fn berger_fit_fails_for_lebesgue_type_moments() {
        // Bergman moments 1/(n+1) come from Lebesgue measure on [0,1]:
        // no 1-atomic representation.
        let w = HomographicParams::new(rat_int(1), rat_int(1), rat_int(1), rat_int(2))
            .unwrap()
            .seq();
        let gamma = moments(&w, 12);
        match berger_fit(&gamma, 1, Precision::default(), 64, 9) {
            Err(Error::NoAtomicRepresentation { r: 1, .. }) => {}
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn berger_verify_exact_zero_and_mismatch() {
        let w = GrwsParams::new(rat_int(2), rat_int(2), rat_int(4)).unwrap().seq();
        let gamma = moments(&w, 30);
        let measure =
            AtomicMeasure::exact(vec![(rat(1, 2), rat(4, 5)), (rat_int(1), rat(1, 5))]).unwrap();
        let res = berger_verify(&measure, &gamma, 30, Precision::default());
        assert_eq!(res.exact(), Some(&rat_int(0)));

        let dirac = AtomicMeasure::exact(vec![(rat_int(1), rat_int(1))]).unwrap();
        let ones = moments(&SqWeightSeq::ones(), 10);
        assert_eq!(
            berger_verify(&dirac, &ones, 10, Precision::default()).exact(),
            Some(&rat_int(0))
        );
        let bergman = HomographicParams::new(rat_int(1), rat_int(1), rat_int(1), rat_int(2))
            .unwrap()
            .seq();
        let bg = moments(&bergman, 5);
        let res = berger_verify(&dirac, &bg, 1, Precision::default());
        assert_eq!(res.exact(), Some(&rat(1, 2)));
    }

    #[test]
    fn grws_monotonicity_and_bounds() {
        // increasing iff n < d, decreasing iff n > d; values stay between
        // (1+n)/(1+d) and 1 and tend to 1.
        let cases = [
            ((1i64, 3i64), (2i64, 3i64)),
            ((2, 1), (4, 1)),
            ((4, 1), (2, 1)),
            ((-1, 2), (1, 4)),
        ];
        for (n, d) in cases {
            let params = GrwsParams::new(rat_int(2), Rat::from(n), Rat::from(d)).unwrap();
            let first = (Rat::from(1) + &params.n) / (Rat::from(1) + &params.d);
            let lo = first.clone().min(rat_int(1));
            let hi = first.max(rat_int(1));
            let mut prev = params.weight_sq(0);
            for k in 1..=1000u64 {
                let v = params.weight_sq(k);
                assert!(v >= lo && v <= hi);
                match params.n.cmp(&params.d) {
                    std::cmp::Ordering::Less => assert!(v > prev),
                    std::cmp::Ordering::Equal => assert_eq!(v, prev),
                    std::cmp::Ordering::Greater => assert!(v < prev),
                }
                prev = v;
            }
        }
    }
}
