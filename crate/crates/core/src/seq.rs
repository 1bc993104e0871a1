//! Weight-squared sequences and their exact algebra.
//!
//! A unilateral weighted shift maps e_j to α_j·e_{j+1} for a positive weight
//! sequence α. Everything this crate computes about such a shift factors
//! through the squares α_j², which are rational for every closed form we
//! handle, so [`SqWeightSeq`] stores weights squared and stays exact. Square
//! roots appear only in [`combine_shifts`] and [`schur_power`], which are the
//! two documented high-precision (rather than exact) operations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::precise::{self, Precision};
use crate::{Int, Rat};

/// Closed-form descriptor for a weight-squared sequence.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqKind {
    /// (p^k + n) / (p^k + d) at index k: a geometrically regular form.
    Grws { p: Rat, n: Rat, d: Rat },
    /// (a·k + b) / (c·k + d): a homographic form.
    Homographic { a: Rat, b: Rat, c: Rat, d: Rat },
    /// (a·p^k + b) / (c·p^k + d): ratio of affine functions of p^k.
    RatioAffinePow { p: Rat, a: Rat, b: Rat, c: Rat, d: Rat },
    /// ∏_u (step·k + u) / ∏_v (step·k + v): a ratio of Gamma-function
    /// quotients expanded into affine factors.
    GammaRatio {
        step: Rat,
        num_offsets: Vec<Rat>,
        den_offsets: Vec<Rat>,
    },
    /// Entrywise product of the factors.
    SchurProduct(Vec<SqWeightSeq>),
    /// Entrywise integer power of the base sequence.
    PowerScaled { base: Box<SqWeightSeq>, exp: u32 },
    /// Finite explicit list; evaluation past the end panics.
    Explicit(Vec<Rat>),
}

/// Strict monotonicity classification of a sequence, derived from its
/// descriptor rather than from sampling whenever possible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Constant,
    Increasing,
    Decreasing,
    Unknown,
}

impl Trend {
    fn combine(self, other: Trend) -> Trend {
        use Trend::*;
        match (self, other) {
            (Constant, t) | (t, Constant) => t,
            (Increasing, Increasing) => Increasing,
            (Decreasing, Decreasing) => Decreasing,
            _ => Unknown,
        }
    }
}

/// A bound that is either exact (from a monotone closed form) or only a
/// scanned estimate over a finite index range.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(Rat),
    Scanned { best: Rat, n_checked: u64 },
}

impl BoundValue {
    pub fn value(&self) -> &Rat {
        match self {
            BoundValue::Exact(v) => v,
            BoundValue::Scanned { best, .. } => best,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BoundValue::Exact(_))
    }
}

/// Lazily evaluated sequence k ↦ weight squared, exact and memoized.
///
/// Invariants: every value is a strictly positive rational, and repeated
/// queries at the same index return identical values. Clones share the memo
/// cache, so cloning is cheap and concurrent readers see one cache.
#[derive(Clone)]
pub struct SqWeightSeq {
    kind: SeqKind,
    cache: Arc<Mutex<HashMap<u64, Rat>>>,
}

impl fmt::Debug for SqWeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SqWeightSeq").field(&self.kind).finish()
    }
}

impl PartialEq for SqWeightSeq {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl SqWeightSeq {
    fn from_kind(kind: SeqKind) -> Self {
        SqWeightSeq {
            kind,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// Geometrically regular form (p^k + n)/(p^k + d).
    ///
    /// Requires p ≥ 1 and n, d > −1 so that every value is positive.
    pub fn grws(p: Rat, n: Rat, d: Rat) -> Result<Self> {
        if p < 1i32 {
            return Err(Error::InvalidParams(format!("grws ratio p must be >= 1, got {p}")));
        }
        if n <= -1i32 || d <= -1i32 {
            return Err(Error::InvalidParams(format!(
                "grws offsets must exceed -1, got n = {n}, d = {d}"
            )));
        }
        Ok(Self::from_kind(SeqKind::Grws { p, n, d }))
    }

    /// Homographic form (a·k + b)/(c·k + d) with nonnegative slopes and
    /// positive intercepts.
    pub fn homographic(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        if a < 0i32 || c < 0i32 || b <= 0i32 || d <= 0i32 {
            return Err(Error::InvalidParams(format!(
                "homographic form needs a, c >= 0 and b, d > 0, got ({a}, {b}, {c}, {d})"
            )));
        }
        Ok(Self::from_kind(SeqKind::Homographic { a, b, c, d }))
    }

    /// Ratio of affine functions of p^k.
    pub fn ratio_affine_pow(p: Rat, a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        if p < 1i32 {
            return Err(Error::InvalidParams(format!("ratio-affine ratio p must be >= 1, got {p}")));
        }
        // Positivity for all k >= 0: check at k = 0 and in the limit.
        let at0_num = a.clone() + &b;
        let at0_den = c.clone() + &d;
        if at0_num <= 0i32 || at0_den <= 0i32 || a < 0i32 || c < 0i32 {
            return Err(Error::InvalidParams(
                "ratio-affine form must stay positive for all k >= 0".into(),
            ));
        }
        Ok(Self::from_kind(SeqKind::RatioAffinePow { p, a, b, c, d }))
    }

    /// Finite product of affine ratios sharing one step.
    pub fn gamma_ratio(step: Rat, num_offsets: Vec<Rat>, den_offsets: Vec<Rat>) -> Result<Self> {
        if step < 0i32 {
            return Err(Error::InvalidParams("gamma-ratio step must be nonnegative".into()));
        }
        for o in num_offsets.iter().chain(den_offsets.iter()) {
            if *o <= 0i32 {
                return Err(Error::InvalidParams(format!(
                    "gamma-ratio offsets must be positive, got {o}"
                )));
            }
        }
        Ok(Self::from_kind(SeqKind::GammaRatio {
            step,
            num_offsets,
            den_offsets,
        }))
    }

    /// Explicit finite list of positive rationals.
    pub fn explicit(values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput("explicit sequence"));
        }
        for v in &values {
            if *v <= 0i32 {
                return Err(Error::InvalidParams(format!("explicit value must be positive, got {v}")));
            }
        }
        Ok(Self::from_kind(SeqKind::Explicit(values)))
    }

    /// The constant all-ones sequence (unweighted shift).
    pub fn ones() -> Self {
        Self::from_kind(SeqKind::Homographic {
            a: Rat::new(),
            b: Rat::from(1),
            c: Rat::new(),
            d: Rat::from(1),
        })
    }

    /// Entrywise integer power.
    pub fn power(base: SqWeightSeq, exp: u32) -> Self {
        Self::from_kind(SeqKind::PowerScaled {
            base: Box::new(base),
            exp,
        })
    }

    pub fn kind(&self) -> &SeqKind {
        &self.kind
    }

    /// Weight squared at index k; exact, strictly positive, memoized.
    pub fn value_sq(&self, k: u64) -> Rat {
        if let Some(v) = self.cache.lock().unwrap().get(&k) {
            return v.clone();
        }
        let v = self.eval(k);
        debug_assert!(v > 0i32, "weight squared must be positive at {k}");
        self.cache.lock().unwrap().insert(k, v.clone());
        v
    }

    fn eval(&self, k: u64) -> Rat {
        match &self.kind {
            SeqKind::Grws { p, n, d } => {
                let pk = pow_rat(p, k);
                (pk.clone() + n) / (pk + d)
            }
            SeqKind::Homographic { a, b, c, d } => {
                let kk = Rat::from(k);
                (a.clone() * &kk + b) / (c.clone() * &kk + d)
            }
            SeqKind::RatioAffinePow { p, a, b, c, d } => {
                let pk = pow_rat(p, k);
                (a.clone() * &pk + b) / (c.clone() * &pk + d)
            }
            SeqKind::GammaRatio {
                step,
                num_offsets,
                den_offsets,
            } => {
                let x = step.clone() * Rat::from(k);
                let mut num = Rat::from(1);
                for u in num_offsets {
                    num *= x.clone() + u;
                }
                let mut den = Rat::from(1);
                for v in den_offsets {
                    den *= x.clone() + v;
                }
                num / den
            }
            SeqKind::SchurProduct(factors) => {
                let mut out = Rat::from(1);
                for f in factors {
                    out *= f.value_sq(k);
                }
                out
            }
            SeqKind::PowerScaled { base, exp } => base.value_sq(k).pow(*exp),
            SeqKind::Explicit(values) => {
                assert!(
                    (k as usize) < values.len(),
                    "explicit sequence queried at {k}, length {}",
                    values.len()
                );
                values[k as usize].clone()
            }
        }
    }

    /// Positive square root of the weight squared, at `prec` bits.
    pub fn weight_float(&self, k: u64, prec: u32) -> Float {
        Float::with_val(prec, &self.value_sq(k)).sqrt()
    }

    /// Monotonicity derived from the descriptor (strict where stated).
    pub fn trend(&self) -> Trend {
        match &self.kind {
            SeqKind::Grws { n, d, p } => {
                if n == d || *p == 1i32 {
                    Trend::Constant
                } else if n < d {
                    Trend::Increasing
                } else {
                    Trend::Decreasing
                }
            }
            SeqKind::Homographic { a, b, c, d } => {
                // derivative sign = a·d − b·c
                let det = a.clone() * d - b.clone() * c;
                if det == 0i32 {
                    Trend::Constant
                } else if det > 0i32 {
                    Trend::Increasing
                } else {
                    Trend::Decreasing
                }
            }
            SeqKind::RatioAffinePow { p, a, b, c, d } => {
                let det = a.clone() * d - b.clone() * c;
                if det == 0i32 || *p == 1i32 {
                    Trend::Constant
                } else if det > 0i32 {
                    Trend::Increasing
                } else {
                    Trend::Decreasing
                }
            }
            SeqKind::GammaRatio {
                num_offsets,
                den_offsets,
                step,
            } => {
                if *step == 0i32 || num_offsets.is_empty() && den_offsets.is_empty() {
                    return Trend::Constant;
                }
                // Pair factors greedily: the product of same-direction
                // monotone factors keeps that direction. With unequal
                // counts leave the general case unresolved.
                if num_offsets.len() != den_offsets.len() {
                    return Trend::Unknown;
                }
                let mut nums: Vec<&Rat> = num_offsets.iter().collect();
                let mut dens: Vec<&Rat> = den_offsets.iter().collect();
                nums.sort();
                dens.sort();
                let mut t = Trend::Constant;
                for (u, v) in nums.iter().zip(dens.iter()) {
                    let f = match u.cmp(v) {
                        std::cmp::Ordering::Less => Trend::Increasing,
                        std::cmp::Ordering::Equal => Trend::Constant,
                        std::cmp::Ordering::Greater => Trend::Decreasing,
                    };
                    t = t.combine(f);
                }
                t
            }
            SeqKind::SchurProduct(factors) => factors
                .iter()
                .map(|f| f.trend())
                .fold(Trend::Constant, Trend::combine),
            SeqKind::PowerScaled { base, exp } => {
                if *exp == 0 {
                    Trend::Constant
                } else {
                    base.trend()
                }
            }
            SeqKind::Explicit(values) => {
                let mut t = Trend::Constant;
                for w in values.windows(2) {
                    let f = match w[0].cmp(&w[1]) {
                        std::cmp::Ordering::Less => Trend::Increasing,
                        std::cmp::Ordering::Equal => Trend::Constant,
                        std::cmp::Ordering::Greater => Trend::Decreasing,
                    };
                    t = t.combine(f);
                    if t == Trend::Unknown {
                        break;
                    }
                }
                t
            }
        }
    }

    /// Limit of the weight-squared sequence, when the descriptor gives one.
    pub fn limit(&self) -> Option<Rat> {
        match &self.kind {
            SeqKind::Grws { p, n, d } => {
                if *p == 1i32 {
                    Some((Rat::from(1) + n) / (Rat::from(1) + d))
                } else {
                    Some(Rat::from(1))
                }
            }
            SeqKind::Homographic { a, c, b, d } => {
                if *a == 0i32 && *c == 0i32 {
                    Some(b.clone() / d)
                } else if *c > 0i32 && *a > 0i32 {
                    Some(a.clone() / c)
                } else {
                    None
                }
            }
            SeqKind::RatioAffinePow { p, a, b, c, d } => {
                if *p == 1i32 {
                    Some((a.clone() + b) / (c.clone() + d))
                } else if *a > 0i32 && *c > 0i32 {
                    Some(a.clone() / c)
                } else {
                    None
                }
            }
            SeqKind::GammaRatio {
                step,
                num_offsets,
                den_offsets,
            } => {
                if *step == 0i32 {
                    return Some(self.value_sq(0));
                }
                if num_offsets.len() == den_offsets.len() {
                    Some(Rat::from(1))
                } else {
                    None
                }
            }
            SeqKind::SchurProduct(factors) => {
                let mut out = Rat::from(1);
                for f in factors {
                    out *= f.limit()?;
                }
                Some(out)
            }
            SeqKind::PowerScaled { base, exp } => Some(base.limit()?.pow(*exp)),
            SeqKind::Explicit(_) => None,
        }
    }

    /// Supremum of weights squared: exact for monotone closed forms
    /// (max of the first value and the limit), otherwise a scan.
    pub fn sup_sq(&self, scan_bound: u64) -> BoundValue {
        let v0 = self.value_sq(0);
        match (self.trend(), self.limit()) {
            (Trend::Constant, _) => BoundValue::Exact(v0),
            (Trend::Increasing, Some(l)) => BoundValue::Exact(l.max(v0)),
            (Trend::Decreasing, _) => BoundValue::Exact(v0),
            _ => {
                let mut best = v0;
                for k in 1..=scan_bound {
                    let v = self.value_sq(k);
                    if v > best {
                        best = v;
                    }
                }
                BoundValue::Scanned {
                    best,
                    n_checked: scan_bound,
                }
            }
        }
    }

    /// Infimum of weights squared, symmetric to [`Self::sup_sq`].
    pub fn inf_sq(&self, scan_bound: u64) -> BoundValue {
        let v0 = self.value_sq(0);
        match (self.trend(), self.limit()) {
            (Trend::Constant, _) => BoundValue::Exact(v0),
            (Trend::Decreasing, Some(l)) => BoundValue::Exact(l.min(v0)),
            (Trend::Increasing, _) => BoundValue::Exact(v0),
            _ => {
                let mut best = v0;
                for k in 1..=scan_bound {
                    let v = self.value_sq(k);
                    if v < best {
                        best = v;
                    }
                }
                BoundValue::Scanned {
                    best,
                    n_checked: scan_bound,
                }
            }
        }
    }
}

fn pow_rat(p: &Rat, k: u64) -> Rat {
    p.clone().pow(u32::try_from(k).expect("index fits in u32"))
}

/// Moments γ of a shift: γ_0 = 1 and γ_{k+1} = γ_k · w²_k, all exact.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSeq {
    source: SqWeightSeq,
    values: Vec<Rat>,
}

impl MomentSeq {
    pub fn gamma(&self, n: usize) -> &Rat {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn source(&self) -> &SqWeightSeq {
        &self.source
    }

    /// Build a moment sequence directly from explicit values (γ_0 = 1).
    /// Intended for measure verification against externally given moments.
    pub fn from_values(values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() || values[0] != 1i32 {
            return Err(Error::InvalidParams("moments must start with gamma_0 = 1".into()));
        }
        let mut weights = Vec::with_capacity(values.len().saturating_sub(1));
        for w in values.windows(2) {
            if w[1] <= 0i32 {
                return Err(Error::InvalidParams("moments must stay positive".into()));
            }
            weights.push(w[1].clone() / &w[0]);
        }
        let source = if weights.is_empty() {
            SqWeightSeq::ones()
        } else {
            SqWeightSeq::explicit(weights)?
        };
        Ok(MomentSeq { source, values })
    }
}

/// γ_0..γ_{n_max} of the shift with weight-squared sequence `w`.
pub fn moments(w: &SqWeightSeq, n_max: usize) -> MomentSeq {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(Rat::from(1));
    for k in 0..n_max {
        let next = values[k].clone() * w.value_sq(k as u64);
        values.push(next);
    }
    MomentSeq {
        source: w.clone(),
        values,
    }
}

/// Entrywise product of two weight-squared sequences.
pub fn schur_product(a: &SqWeightSeq, b: &SqWeightSeq) -> SqWeightSeq {
    SqWeightSeq::from_kind(SeqKind::SchurProduct(vec![a.clone(), b.clone()]))
}

/// Entrywise product of arbitrarily many factors.
pub fn schur_product_all(factors: &[SqWeightSeq]) -> Result<SqWeightSeq> {
    if factors.is_empty() {
        return Err(Error::EmptyInput("schur product factors"));
    }
    Ok(SqWeightSeq::from_kind(SeqKind::SchurProduct(factors.to_vec())))
}

/// Weight-squared sequence of the Schur s-th power shift, i.e. w²(k)^s,
/// evaluated at `precision` decimal digits.
///
/// The result is correctly rounded MPFR arithmetic, so the relative error
/// is below 10^(1−precision).
pub fn schur_power(
    w: &SqWeightSeq,
    s: &Rat,
    n_max: usize,
    precision: Precision,
) -> Result<Vec<Float>> {
    if *s <= 0i32 {
        return Err(Error::NonPositiveExponent(s.to_string()));
    }
    if precision.digits < 15 {
        return Err(Error::PrecisionTooLow {
            got: precision.digits,
            need: 15,
        });
    }
    let prec = precision.bits();
    let s_f = Float::with_val(prec, s);
    let mut out = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max as u64 {
        let base = Float::with_val(prec, &w.value_sq(k));
        out.push(base.pow(&s_f));
    }
    Ok(out)
}

/// Iterated forward differences (∇^m a)_k = Σ_i (−1)^i·C(m,i)·a_{k+i}
/// for k = 0..=window, exact.
pub fn forward_difference(seq: &[Rat], order: usize, window: usize) -> Result<Vec<Rat>> {
    let need = window + order + 1;
    if seq.len() < need {
        return Err(Error::InsufficientMoments {
            have: seq.len(),
            need,
        });
    }
    let coefs = signed_binomials(order);
    let mut out = Vec::with_capacity(window + 1);
    for k in 0..=window {
        let mut acc = Rat::new();
        for (i, c) in coefs.iter().enumerate() {
            acc += seq[k + i].clone() * c;
        }
        out.push(acc);
    }
    Ok(out)
}

/// (−1)^i·C(m,i) for i = 0..=m, exact binomials.
pub fn signed_binomials(m: usize) -> Vec<Int> {
    (0..=m)
        .map(|i| {
            let b = Int::from(m).binomial(i as u32);
            if i % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Complex scalar with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCoef {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexCoef {
    pub fn real(re: Rat) -> Self {
        ComplexCoef { re, im: Rat::new() }
    }

    pub fn new(re: Rat, im: Rat) -> Self {
        ComplexCoef { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0i32 && self.im == 0i32
    }

    pub fn modulus_sq(&self) -> Rat {
        self.re.clone().pow(2) + self.im.clone().pow(2)
    }

    /// Re(self · conj(other)).
    pub fn re_pair(&self, other: &ComplexCoef) -> Rat {
        self.re.clone() * &other.re + self.im.clone() * &other.im
    }
}

impl fmt::Display for ComplexCoef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0i32 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Result of combining shifts linearly: the weight-squared sequence
/// |Σ_i a_i·w_i(k)|² in high precision, plus the pairwise sign flag.
#[derive(Clone, Debug)]
pub struct CombinedWeights {
    /// |Σ_i a_i·w_i(k)|² for k = 0..=n_max.
    pub values_sq: Vec<Float>,
    /// True iff Re(a_i·conj(a_j)) ≥ 0 for every pair. When every summand is
    /// a hyponormal shift this is sufficient for hyponormality of the
    /// combination.
    pub re_pairs_nonneg: bool,
}

/// Weight-squared sequence of a_1·W_1 + … + a_m·W_m, where W_i has
/// weight-squared sequence shifts[i]. Cross terms involve square roots, so
/// this is the one operation evaluated in floating arithmetic; `precision`
/// controls the MPFR working precision.
pub fn combine_shifts(
    coefs: &[ComplexCoef],
    shifts: &[SqWeightSeq],
    n_max: usize,
    precision: Precision,
) -> Result<CombinedWeights> {
    if coefs.is_empty() {
        return Err(Error::EmptyInput("combine_shifts coefficients"));
    }
    if coefs.len() != shifts.len() {
        return Err(Error::LengthMismatch(coefs.len(), shifts.len()));
    }
    if coefs.iter().all(ComplexCoef::is_zero) {
        return Err(Error::AllZeroCoefficients);
    }
    let prec = precision.bits();
    let mut values_sq = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max as u64 {
        let mut re = Float::with_val(prec, 0);
        let mut im = Float::with_val(prec, 0);
        for (a, w) in coefs.iter().zip(shifts.iter()) {
            let wk = w.weight_float(k, prec);
            re += Float::with_val(prec, &a.re) * &wk;
            im += Float::with_val(prec, &a.im) * &wk;
        }
        values_sq.push(re.square() + im.square());
    }
    let mut re_pairs_nonneg = true;
    'outer: for i in 0..coefs.len() {
        for j in (i + 1)..coefs.len() {
            if coefs[i].re_pair(&coefs[j]) < 0i32 {
                re_pairs_nonneg = false;
                break 'outer;
            }
        }
    }
    Ok(CombinedWeights {
        values_sq,
        re_pairs_nonneg,
    })
}

/// Descriptor of a sequence as a JSON value, used in reports.
pub fn descriptor_json(w: &SqWeightSeq) -> serde_json::Value {
    use serde_json::json;
    match w.kind() {
        SeqKind::Grws { p, n, d } => json!({
            "kind": "grws",
            "p": p.to_string(),
            "n": n.to_string(),
            "d": d.to_string(),
        }),
        SeqKind::Homographic { a, b, c, d } => json!({
            "kind": "homographic",
            "a": a.to_string(),
            "b": b.to_string(),
            "c": c.to_string(),
            "d": d.to_string(),
        }),
        SeqKind::RatioAffinePow { p, a, b, c, d } => json!({
            "kind": "ratio-affine-pow",
            "p": p.to_string(),
            "a": a.to_string(),
            "b": b.to_string(),
            "c": c.to_string(),
            "d": d.to_string(),
        }),
        SeqKind::GammaRatio {
            step,
            num_offsets,
            den_offsets,
        } => json!({
            "kind": "gamma-ratio",
            "step": step.to_string(),
            "num_offsets": num_offsets.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "den_offsets": den_offsets.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        }),
        SeqKind::SchurProduct(fs) => json!({
            "kind": "schur-product",
            "factors": fs.iter().map(descriptor_json).collect::<Vec<_>>(),
        }),
        SeqKind::PowerScaled { base, exp } => json!({
            "kind": "power-scaled",
            "base": descriptor_json(base),
            "exp": exp,
        }),
        SeqKind::Explicit(vs) => json!({
            "kind": "explicit",
            "values": vs.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        }),
    }
}

/// Rough upper bound for |ln w²| evaluations: used by tests to pick windows.
pub fn _precision_hint() -> Precision {
    precise::Precision::default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn bergman() -> SqWeightSeq {
        SqWeightSeq::homographic(rat_int(1), rat_int(1), rat_int(1), rat_int(2)).unwrap()
    }

    fn grws_2_2_4() -> SqWeightSeq {
        SqWeightSeq::grws(rat_int(2), rat_int(2), rat_int(4)).unwrap()
    }

    #[test]
    fn moments_of_unweighted_shift_are_flat() {
        let ones = SqWeightSeq::ones();
        let g = moments(&ones, 20);
        for n in 0..=20 {
            assert_eq!(*g.gamma(n), rat_int(1));
        }
    }

    #[test]
    fn moments_of_bergman_shift_telescope() {
        // (n+1)/(n+2) telescopes to gamma_n = 1/(n+1); checked by direct
        // multiplication up to n = 50.
        let g = moments(&bergman(), 50);
        for n in 0..=50 {
            assert_eq!(*g.gamma(n), rat(1, n as i64 + 1));
        }
    }

    #[test]
    fn moments_of_grws_2_2_4_match_atomic_closed_form() {
        let g = moments(&grws_2_2_4(), 30);
        assert_eq!(*g.gamma(1), rat(3, 5));
        assert_eq!(*g.gamma(2), rat(2, 5));
        // gamma_n = (4·(1/2)^n + 1)/5
        for n in 0..=30u32 {
            let expect = (rat_int(4) * rat(1, 2).pow(n) + 1) / rat_int(5);
            assert_eq!(*g.gamma(n as usize), expect);
        }
    }

    #[test]
    fn schur_product_against_ones_is_identity() {
        let a = grws_2_2_4();
        let p = schur_product(&a, &SqWeightSeq::ones());
        for k in 0..50 {
            assert_eq!(p.value_sq(k), a.value_sq(k));
        }
    }

    #[test]
    fn schur_product_of_motivating_factors_at_zero() {
        let a = grws_2_2_4();
        let b = SqWeightSeq::grws(rat_int(2), rat_int(3), rat_int(4)).unwrap();
        let p = schur_product(&a, &b);
        assert_eq!(p.value_sq(0), rat(12, 25));
    }

    #[test]
    fn schur_square_matches_self_product() {
        let a = grws_2_2_4();
        let p = schur_product(&a, &a);
        for k in 0..30 {
            assert_eq!(p.value_sq(k), a.value_sq(k).pow(2));
        }
    }

    #[test]
    fn schur_power_identity_and_square_are_consistent() {
        let w = grws_2_2_4();
        let prec = Precision::new(30);
        let one = schur_power(&w, &rat_int(1), 10, prec).unwrap();
        let two = schur_power(&w, &rat_int(2), 10, prec).unwrap();
        for k in 0..=10u64 {
            let exact = Float::with_val(prec.bits(), &w.value_sq(k));
            let diff = (one[k as usize].clone() - &exact).abs();
            assert!(diff < Float::with_val(64, 1e-25));
            let exact2 = Float::with_val(prec.bits(), &w.value_sq(k).pow(2));
            let diff2 = (two[k as usize].clone() - &exact2).abs();
            assert!(diff2 < Float::with_val(64, 1e-25));
        }
    }

    #[test]
    fn schur_power_half_of_three_fifths() {
        let w = grws_2_2_4();
        let vals = schur_power(&w, &rat(1, 2), 0, Precision::new(50)).unwrap();
        // sqrt(3/5) = 0.7745966692414834...
        let expect = Float::with_val(200, Rat::from((3, 5))).sqrt();
        let diff = (vals[0].clone() - expect).abs();
        assert!(diff < Float::with_val(64, 1e-45));
    }

    #[test]
    fn schur_power_rejects_nonpositive_exponent() {
        let w = grws_2_2_4();
        assert!(schur_power(&w, &rat_int(0), 5, Precision::new(30)).is_err());
        assert!(schur_power(&w, &rat(-1, 2), 5, Precision::new(30)).is_err());
    }

    #[test]
    fn forward_difference_kills_constants_and_affine() {
        let constant: Vec<Rat> = (0..20).map(|_| rat_int(7)).collect();
        for v in forward_difference(&constant, 1, 10).unwrap() {
            assert_eq!(v, rat_int(0));
        }
        let affine: Vec<Rat> = (0..20).map(rat_int).collect();
        for v in forward_difference(&affine, 2, 10).unwrap() {
            assert_eq!(v, rat_int(0));
        }
    }

    #[test]
    fn forward_difference_first_order_of_harmonic() {
        let seq: Vec<Rat> = (0..10).map(|j| rat(1, j + 1)).collect();
        let d = forward_difference(&seq, 1, 5).unwrap();
        assert_eq!(d[0], rat(1, 2));
    }

    #[test]
    fn forward_difference_requires_enough_values() {
        let seq: Vec<Rat> = (0..5).map(rat_int).collect();
        assert!(forward_difference(&seq, 3, 4).is_err());
    }

    #[test]
    fn combine_single_unit_coefficient_recovers_weights() {
        let w = bergman();
        let out = combine_shifts(
            &[ComplexCoef::real(rat_int(1))],
            &[w.clone()],
            10,
            Precision::new(40),
        )
        .unwrap();
        for k in 0..=10u64 {
            let exact = Float::with_val(200, &w.value_sq(k));
            let diff = (out.values_sq[k as usize].clone() - exact).abs();
            assert!(diff < Float::with_val(64, 1e-35));
        }
        assert!(out.re_pairs_nonneg);
    }

    #[test]
    fn combine_two_unweighted_shifts() {
        let ones = SqWeightSeq::ones();
        let out = combine_shifts(
            &[ComplexCoef::real(rat_int(1)), ComplexCoef::real(rat_int(1))],
            &[ones.clone(), ones.clone()],
            5,
            Precision::new(40),
        )
        .unwrap();
        for v in &out.values_sq {
            let diff = (v.clone() - Float::with_val(64, 4)).abs();
            assert!(diff < Float::with_val(64, 1e-30));
        }
    }

    #[test]
    fn combine_one_and_i_gives_modulus_two() {
        let ones = SqWeightSeq::ones();
        let out = combine_shifts(
            &[
                ComplexCoef::real(rat_int(1)),
                ComplexCoef::new(rat_int(0), rat_int(1)),
            ],
            &[ones.clone(), ones.clone()],
            5,
            Precision::new(40),
        )
        .unwrap();
        for v in &out.values_sq {
            let diff = (v.clone() - Float::with_val(64, 2)).abs();
            assert!(diff < Float::with_val(64, 1e-30));
        }
        // Re(1·conj(i)) = 0, still nonnegative
        assert!(out.re_pairs_nonneg);
    }

    #[test]
    fn combine_rejects_degenerate_inputs() {
        let ones = SqWeightSeq::ones();
        assert!(matches!(
            combine_shifts(&[], &[], 3, Precision::new(30)),
            Err(Error::EmptyInput(_))
        ));
        assert!(matches!(
            combine_shifts(&[ComplexCoef::real(rat_int(1))], &[], 3, Precision::new(30)),
            Err(Error::LengthMismatch(..))
        ));
        assert!(matches!(
            combine_shifts(
                &[ComplexCoef::real(rat_int(0))],
                &[ones],
                3,
                Precision::new(30)
            ),
            Err(Error::AllZeroCoefficients)
        ));
    }

    #[test]
    fn unit_modulus_rotation_preserves_weight_moduli() {
        // (3/5, 4/5) lies on the unit circle.
        let w = grws_2_2_4();
        let out = combine_shifts(
            &[ComplexCoef::new(rat(3, 5), rat(4, 5))],
            &[w.clone()],
            20,
            Precision::new(40),
        )
        .unwrap();
        for k in 0..=20u64 {
            let exact = Float::with_val(200, &w.value_sq(k));
            let diff = (out.values_sq[k as usize].clone() - exact).abs();
            assert!(diff < Float::with_val(64, 1e-30));
        }
    }

    #[test]
    fn grws_trend_and_limit() {
        let inc = grws_2_2_4();
        assert_eq!(inc.trend(), Trend::Increasing);
        assert_eq!(inc.limit(), Some(rat_int(1)));
        let dec = SqWeightSeq::grws(rat_int(2), rat_int(4), rat_int(2)).unwrap();
        assert_eq!(dec.trend(), Trend::Decreasing);
        let diag = SqWeightSeq::grws(rat_int(2), rat(1, 3), rat(1, 3)).unwrap();
        assert_eq!(diag.trend(), Trend::Constant);
        for k in 0..10 {
            assert_eq!(diag.value_sq(k), rat_int(1));
        }
    }

    #[test]
    fn requery_returns_identical_values() {
        let w = grws_2_2_4();
        let first = w.value_sq(123);
        assert_eq!(w.value_sq(123), first);
        let clone = w.clone();
        assert_eq!(clone.value_sq(123), first);
    }

    #[test]
    fn large_index_evaluation_is_positive() {
        let w = grws_2_2_4();
        assert!(w.value_sq(10_000) > 0i32);
        let h = bergman();
        assert!(h.value_sq(10_000) > 0i32);
    }
}
