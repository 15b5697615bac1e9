//! The closed-form semisimplicity criterion: the shifted Fourier transform of
//! the loop parameters, the exceptional integer sets (closed form and
//! combinatorial), the polynomials g_{lambda,mu} and g_mu, and the decision
//! procedure in its three variants.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{admissible_set, multipartitions, partitions, Multipartition};
use crate::scalar::{DeltaPolynomial, Field, FieldElem, Ring, Scalar};

/// The characteristic parameter `e`: infinity in characteristic zero,
/// otherwise the characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharParam {
    Infinity,
    Prime(u64),
}

impl CharParam {
    pub fn of(field: &Field) -> Self {
        match field.characteristic() {
            0 => CharParam::Infinity,
            p => CharParam::Prime(p),
        }
    }

    /// Whether `e` divides `m * n!`.
    pub fn divides_m_n_factorial(self, m: u64, n: u64) -> bool {
        match self {
            CharParam::Infinity => false,
            CharParam::Prime(p) => m.is_multiple_of(p) || p <= n,
        }
    }

    pub fn divides(self, k: u64) -> bool {
        match self {
            CharParam::Infinity => false,
            CharParam::Prime(p) => k.is_multiple_of(p),
        }
    }
}

impl fmt::Display for CharParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharParam::Infinity => write!(f, "+inf"),
            CharParam::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// `bar_delta[i] = sum_{j=1}^m delta_j xi^{j i}` with `delta_m = delta_0`.
pub fn bar_delta(delta: &[Scalar]) -> Result<Vec<Scalar>> {
    let m = delta.len();
    let field = delta.first().ok_or_else(|| Error::Mismatch("empty parameter vector".into()))?.field().clone();
    let xi = field.primitive_root(m as u64)?;
    Ok(bar_transform(&xi, m, delta))
}

/// The same transform applied to the variables delta_0..delta_{m-1}.
pub fn bar_delta_symbolic(field: &Field, m: usize) -> Result<Vec<DeltaPolynomial>> {
    let xi = field.primitive_root(m as u64)?;
    let vars: Vec<DeltaPolynomial> = (0..m).map(|i| DeltaPolynomial::var(field, m, i)).collect();
    let xi_poly = DeltaPolynomial::constant(xi, m);
    Ok(bar_transform(&xi_poly, m, &vars))
}

fn bar_transform<C: Ring>(xi: &C, m: usize, x: &[C]) -> Vec<C> {
    (0..m)
        .map(|i| {
            let mut acc = x[0].zero_like();
            for j in 1..=m {
                acc = acc.plus(&x[j % m].times(&xi.pow((j * i) as u64)));
            }
            acc
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetVariant {
    Printed,
    Combinatorial,
}

/// The closed-form set for m = 1 and m = 2.
fn printed_z_one(n: i64) -> BTreeSet<i64> {
    let mut out: BTreeSet<i64> = (3 - n..=n - 3).collect();
    out.extend((3..=n).map(|k| 2 * k - 3));
    out
}

/// The exceptional set, before scaling by `m`.
pub fn z_tilde(m: usize, n: usize, variant: SetVariant) -> Result<BTreeSet<i64>> {
    if n < 2 || m == 0 {
        return Err(Error::OutOfRange(format!("exceptional sets need m >= 1 and n >= 2, got ({m}, {n})")));
    }
    Ok(match variant {
        SetVariant::Printed => {
            let n = n as i64;
            let mut out = printed_z_one(n);
            if m >= 3 {
                out.insert(2 - n);
                out.insert(n - 2);
            }
            out
        }
        SetVariant::Combinatorial if m == 1 => {
            let mut out = BTreeSet::new();
            for k in 2..=n {
                for mu in partitions(k - 2) {
                    let mu = Multipartition::new(vec![mu]).expect("one component");
                    for pair in admissible_set(&mu) {
                        out.insert(pair.content_sum);
                    }
                }
            }
            out
        }
        SetVariant::Combinatorial => {
            let mut out = BTreeSet::new();
            for mu in multipartitions(m, n - 2) {
                for pair in admissible_set(&mu) {
                    out.insert(pair.content_sum);
                }
            }
            out
        }
    })
}

/// The scaled set `{m a : a in z_tilde}`.
pub fn z_set(m: usize, n: usize, variant: SetVariant) -> Result<BTreeSet<i64>> {
    Ok(z_tilde(m, n, variant)?.into_iter().map(|a| m as i64 * a).collect())
}

/// The classical exceptional set for Brauer algebras B_n(delta), delta != 0.
pub fn brauer_z(n: usize) -> Result<BTreeSet<i64>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("brauer_z needs n >= 2, got {n}")));
    }
    let n = n as i64;
    Ok((4 - 2 * n..=n - 2).filter(|&i| !(i > 4 - 2 * n && i <= 3 - n && i % 2 != 0)).collect())
}

/// `(bar_0 - m + m c) * prod_{i>=1} (bar_i + m c)` for a content sum `c`.
pub fn g_from_bars<C: Ring>(bars: &[C], content_sum: i64) -> C {
    let m = bars.len() as i64;
    let shift = bars[0].int_like(m * content_sum);
    let mut acc = bars[0].minus(&bars[0].int_like(m)).plus(&shift);
    for b in &bars[1..] {
        acc = acc.times(&b.plus(&shift));
    }
    acc
}

fn admissible_content(lambda: &Multipartition, mu: &Multipartition) -> Result<i64> {
    admissible_set(mu)
        .into_iter()
        .find(|p| &p.lambda == lambda)
        .map(|p| p.content_sum)
        .ok_or_else(|| Error::Mismatch(format!("{lambda} is not admissible for {mu}")))
}

pub fn g_lambda_mu<C: Ring>(lambda: &Multipartition, mu: &Multipartition, bars: &[C]) -> Result<C> {
    check_m(mu, bars.len())?;
    Ok(g_from_bars(bars, admissible_content(lambda, mu)?))
}

/// Product of g_{lambda,mu} over all mu-admissible lambda.
pub fn g_mu<C: Ring>(mu: &Multipartition, bars: &[C]) -> Result<C> {
    check_m(mu, bars.len())?;
    let mut acc = bars[0].one_like();
    for pair in admissible_set(mu) {
        acc = acc.times(&g_from_bars(bars, pair.content_sum));
    }
    Ok(acc)
}

fn check_m(mu: &Multipartition, m: usize) -> Result<()> {
    if mu.m() != m || m == 0 {
        return Err(Error::Mismatch(format!("{}-multipartition with {} parameters", mu.m(), m)));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionVariant {
    #[serde(rename = "printed-Z")]
    PrintedZ,
    CombinatorialRho,
    GmuRoute,
}

impl CriterionVariant {
    pub const ALL: [CriterionVariant; 3] =
        [CriterionVariant::PrintedZ, CriterionVariant::CombinatorialRho, CriterionVariant::GmuRoute];

    pub fn name(self) -> &'static str {
        match self {
            CriterionVariant::PrintedZ => "printed-Z",
            CriterionVariant::CombinatorialRho => "combinatorial-rho",
            CriterionVariant::GmuRoute => "gmu-route",
        }
    }
}

impl fmt::Display for CriterionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CriterionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed-Z" | "printed-z" | "printed" => Ok(CriterionVariant::PrintedZ),
            "combinatorial-rho" | "combinatorial" | "rho" => Ok(CriterionVariant::CombinatorialRho),
            "gmu-route" | "gmu" => Ok(CriterionVariant::GmuRoute),
            _ => Err(Error::Parse(format!("unknown criterion variant {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    #[serde(rename = "semisimple")]
    Semisimple,
    #[serde(rename = "not")]
    NotSemisimple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reason {
    /// `e` divides `m * n!` (or `m` when `n = 1`).
    Char,
    /// All loop parameters vanish.
    DeltaZero,
    /// `eps_{i,0} m - bar_delta_i` equals the integer `k` of the scaled set.
    Hyperplane { i: usize, k: i64 },
    /// For m = 1: delta lies in the classical exceptional set.
    BrauerSet { k: i64 },
    /// g_mu vanishes at the given parameters.
    GmuZero { mu: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub reasons: Vec<Reason>,
    pub variant: CriterionVariant,
    pub m: usize,
    pub n: usize,
    pub e: String,
}

impl Verdict {
    pub fn is_semisimple(&self) -> bool {
        self.decision == Decision::Semisimple
    }
}

/// Decides semisimplicity of B_{m,n}(delta) over the field of `delta`.
///
/// For m = 1 the printed variant uses the classical set of the Brauer
/// algebra and the combinatorial variant the one-component content sums;
/// the gmu route is unavailable. With all parameters zero and m = 1 the
/// classical answer (semisimple exactly for n in {1, 3, 5}, e not dividing
/// n!) is used.
pub fn decide(n: usize, delta: &[Scalar], variant: CriterionVariant) -> Result<Verdict> {
    let m = delta.len();
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("decide needs m >= 1 and n >= 1".into()));
    }
    let field = delta[0].field().clone();
    if delta.iter().any(|d| d.field() != &field) {
        return Err(Error::Mismatch("loop parameters live in different fields".into()));
    }
    let e = CharParam::of(&field);
    let mut reasons = Vec::new();
    let finish = |reasons: Vec<Reason>| Verdict {
        decision: if reasons.is_empty() { Decision::Semisimple } else { Decision::NotSemisimple },
        reasons,
        variant,
        m,
        n,
        e: e.to_string(),
    };
    if n == 1 {
        if e.divides(m as u64) {
            reasons.push(Reason::Char);
        }
        return Ok(finish(reasons));
    }
    if e.divides_m_n_factorial(m as u64, n as u64) {
        reasons.push(Reason::Char);
    }
    let all_zero = delta.iter().all(Scalar::is_zero);
    if m == 1 {
        if variant == CriterionVariant::GmuRoute {
            return Err(Error::Unsupported("the gmu route needs m >= 2".into()));
        }
        if all_zero {
            if ![3, 5].contains(&n) {
                reasons.push(Reason::DeltaZero);
            }
            return Ok(finish(reasons));
        }
        if variant == CriterionVariant::PrintedZ {
            for k in brauer_z(n)? {
                if delta[0] == field.int(k) {
                    reasons.push(Reason::BrauerSet { k });
                }
            }
            return Ok(finish(reasons));
        }
    } else if all_zero {
        reasons.push(Reason::DeltaZero);
        return Ok(finish(reasons));
    }
    // Without an order-m root the transform is undefined; when e divides m
    // the characteristic condition already settles the answer.
    let bars = match bar_delta(delta) {
        Ok(bars) => bars,
        Err(_) if !reasons.is_empty() => return Ok(finish(reasons)),
        Err(err) => return Err(err),
    };
    if variant == CriterionVariant::GmuRoute {
        for mu in multipartitions(m, n - 2) {
            if g_mu(&mu, &bars)?.is_zero() {
                reasons.push(Reason::GmuZero { mu: mu.to_string() });
            }
        }
        return Ok(finish(reasons));
    }
    let set_variant =
        if variant == CriterionVariant::PrintedZ { SetVariant::Printed } else { SetVariant::Combinatorial };
    let ks = z_set(m, n, set_variant)?;
    for (i, bar) in bars.iter().enumerate() {
        let eps = if i == 0 { field.int(m as i64) } else { field.zero() };
        let value = eps.minus(bar);
        for &k in &ks {
            if value == field.int(k) {
                reasons.push(Reason::Hyperplane { i, k });
            }
        }
    }
    Ok(finish(reasons))
}

/// Solves for delta given target values of bar_delta (inverse transform).
pub fn delta_from_bars(field: &Field, bars: &[Scalar]) -> Result<Vec<Scalar>> {
    let m = bars.len();
    let xi = field.primitive_root(m as u64)?;
    let xi_inv = xi.inverse().ok_or(Error::DivisionByZero)?;
    let m_inv = field.int(m as i64).inverse().ok_or(Error::DivisionByZero)?;
    // delta_j = (1/m) sum_i bar_i xi^{-ij}
    Ok((0..m)
        .map(|j| {
            let mut acc = field.zero();
            for (i, b) in bars.iter().enumerate() {
                acc = acc.plus(&b.times(&xi_inv.pow((i * j) as u64)));
            }
            acc.times(&m_inv)
        })
        .collect())
}
