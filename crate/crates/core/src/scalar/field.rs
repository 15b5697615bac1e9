use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly_fp;
use super::ring::{FieldElem, Ring};
use crate::error::{Error, Result};

/// Which exact field to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    /// The cyclotomic field Q(zeta_m); `m = 1` (and `m = 2`) is plain Q.
    RationalCyclotomic {
        m: u64,
    },
    PrimeField {
        p: u64,
    },
    PrimeExtension {
        p: u64,
        k: u32,
    },
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::RationalCyclotomic { m: 1 }
    }

    /// Smallest extension of F_p containing an element of order `m`.
    pub fn prime_splitting(p: u64, m: u64) -> Result<Self> {
        if !poly_fp::is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 || m.is_multiple_of(p) {
            return Err(Error::NoRootOfUnity { m, field: format!("any extension of F_{p}") });
        }
        let mut k = 1u32;
        let mut acc = p % m;
        while acc != 1 % m {
            acc = poly_fp::mul_mod(acc, p, m);
            k += 1;
        }
        Ok(if k == 1 { FieldSpec::PrimeField { p } } else { FieldSpec::PrimeExtension { p, k } })
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::RationalCyclotomic { .. } => 0,
            FieldSpec::PrimeField { p } | FieldSpec::PrimeExtension { p, .. } => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::RationalCyclotomic { m: 1 } => write!(f, "Q"),
            FieldSpec::RationalCyclotomic { m } => write!(f, "Q(zeta_{m})"),
            FieldSpec::PrimeField { p } => write!(f, "F_{p}"),
            FieldSpec::PrimeExtension { p, k } => write!(f, "F_{p}^{k}"),
        }
    }
}

#[derive(Debug)]
enum Kind {
    Cyclotomic { m: u64, modulus: Vec<BigInt> },
    Galois { p: u64, modulus: Vec<u64> },
}

#[derive(Debug)]
struct FieldInner {
    spec: FieldSpec,
    kind: Kind,
    degree: usize,
}

/// Handle to an exact field. Cheap to clone; all scalars keep one.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

/// The m-th cyclotomic polynomial, integer coefficients low degree first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    // x^m - 1 = prod_{d | m} Phi_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = r.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

pub fn euler_phi(m: u64) -> u64 {
    poly_fp::prime_factors(m).iter().fold(m, |acc, &q| acc / q * (q - 1))
}

/// Builds a field from its specification.
pub fn make_field(spec: FieldSpec) -> Result<Field> {
    Field::new(spec)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let (kind, degree) = match spec {
            FieldSpec::RationalCyclotomic { m } => {
                if m == 0 {
                    return Err(Error::InvalidField("cyclotomic order must be positive".into()));
                }
                let modulus = cyclotomic_polynomial(m);
                let degree = modulus.len() - 1;
                (Kind::Cyclotomic { m, modulus }, degree)
            }
            FieldSpec::PrimeField { p } => {
                if !poly_fp::is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                (Kind::Galois { p, modulus: vec![0, 1] }, 1)
            }
            FieldSpec::PrimeExtension { p, k } => {
                if !poly_fp::is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if k == 0 {
                    return Err(Error::InvalidField("extension degree must be positive".into()));
                }
                if (p as u128).checked_pow(k).is_none_or(|q| q > u64::MAX as u128) {
                    return Err(Error::InvalidField(format!("F_{p}^{k} is too large")));
                }
                let modulus = poly_fp::smallest_irreducible(p, k as usize);
                (Kind::Galois { p, modulus }, k as usize)
            }
        };
        Ok(Field(Arc::new(FieldInner { spec, kind, degree })))
    }

    pub fn rationals() -> Self {
        Field::new(FieldSpec::rationals()).expect("Q is always constructible")
    }

    pub fn cyclotomic(m: u64) -> Result<Self> {
        Field::new(FieldSpec::RationalCyclotomic { m })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.spec.characteristic()
    }

    /// Dimension over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match &self.0.kind {
            Kind::Cyclotomic { .. } => None,
            Kind::Galois { p, .. } => Some((*p as u128).pow(self.0.degree as u32)),
        }
    }

    /// The modulus defining the power basis, as text (for reports).
    pub fn modulus_string(&self) -> String {
        match &self.0.kind {
            Kind::Cyclotomic { modulus, .. } => format!("{modulus:?}"),
            Kind::Galois { modulus, .. } => format!("{modulus:?}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        let coeffs = match &self.0.kind {
            Kind::Cyclotomic { .. } => Coeffs::Rat(vec![BigRational::zero(); self.0.degree]),
            Kind::Galois { .. } => Coeffs::Mod(vec![0; self.0.degree]),
        };
        Scalar { field: self.clone(), coeffs }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> Scalar {
        self.bigint(&BigInt::from(k))
    }

    pub fn bigint(&self, k: &BigInt) -> Scalar {
        self.rational(&BigRational::from_integer(k.clone())).expect("integers embed in every field")
    }

    /// Embeds a rational number; fails in characteristic p when the
    /// denominator is divisible by p.
    pub fn rational(&self, q: &BigRational) -> Result<Scalar> {
        let mut s = self.zero();
        match (&mut s.coeffs, &self.0.kind) {
            (Coeffs::Rat(v), _) => v[0] = q.clone(),
            (Coeffs::Mod(v), Kind::Galois { p, .. }) => {
                let pb = BigInt::from(*p);
                let num = residue(q.numer(), &pb);
                let den = residue(q.denom(), &pb);
                let den_inv = poly_fp::inv_mod(den, *p).ok_or(Error::DivisionByZero)?;
                v[0] = poly_fp::mul_mod(num, den_inv, *p);
            }
            _ => unreachable!(),
        }
        Ok(s)
    }

    /// The element whose power-basis coordinates are `coeffs` (padded with zeros).
    pub fn from_rational_coeffs(&self, coeffs: &[BigRational]) -> Result<Scalar> {
        if coeffs.len() > self.0.degree {
            return Err(Error::Parse(format!(
                "{} coefficients given, {} has degree {}",
                coeffs.len(),
                self.0.spec,
                self.0.degree
            )));
        }
        let gen = self.generator();
        let mut acc = self.zero();
        let mut power = self.one();
        for c in coeffs {
            acc = &acc + &(&power * &self.rational(c)?);
            power = &power * &gen;
        }
        Ok(acc)
    }

    /// The power-basis generator: zeta_m for cyclotomic fields, the class of x
    /// for F_p^k (for k = 1 this is 0).
    pub fn generator(&self) -> Scalar {
        let mut s = self.zero();
        if self.0.degree == 1 {
            return match &self.0.kind {
                // zeta_1 = 1, zeta_2 = -1
                Kind::Cyclotomic { modulus, .. } => self.bigint(&-modulus[0].clone()),
                Kind::Galois { .. } => s,
            };
        }
        match &mut s.coeffs {
            Coeffs::Rat(v) => v[1] = BigRational::one(),
            Coeffs::Mod(v) => v[1] = 1,
        }
        s
    }

    /// Canonical primitive `order`-th root of unity.
    ///
    /// In Q(zeta_m) this is a power of zeta_m (or of -zeta_m when m is odd);
    /// in a finite field it is g^((q-1)/order) for the smallest generator g of
    /// the multiplicative group.
    pub fn primitive_root(&self, order: u64) -> Result<Scalar> {
        let no_root = || Error::NoRootOfUnity { m: order, field: self.0.spec.to_string() };
        if order == 0 {
            return Err(no_root());
        }
        match &self.0.kind {
            Kind::Cyclotomic { m, .. } => {
                let (big, g) = if m % 2 == 0 { (*m, self.generator()) } else { (2 * m, -&self.generator()) };
                if big % order != 0 {
                    return Err(no_root());
                }
                Ok(g.pow(big / order))
            }
            Kind::Galois { .. } => {
                let q = self.order().unwrap() as u64;
                if !(q - 1).is_multiple_of(order) {
                    return Err(no_root());
                }
                let g = self.smallest_generator();
                Ok(g.pow((q - 1) / order))
            }
        }
    }

    /// Elements of a finite field in the order of their integer encoding
    /// sum c_i p^i.
    pub fn element_by_index(&self, mut idx: u128) -> Scalar {
        let mut s = self.zero();
        if let (Coeffs::Mod(v), Kind::Galois { p, .. }) = (&mut s.coeffs, &self.0.kind) {
            for c in v.iter_mut() {
                *c = (idx % *p as u128) as u64;
                idx /= *p as u128;
            }
        } else {
            panic!("element_by_index on a characteristic-zero field");
        }
        s
    }

    fn smallest_generator(&self) -> Scalar {
        let q = self.order().unwrap() as u64;
        let factors = poly_fp::prime_factors(q - 1);
        for idx in 1..q as u128 {
            let g = self.element_by_index(idx);
            if factors.iter().all(|r| !g.pow((q - 1) / r).is_one()) {
                return g;
            }
        }
        unreachable!("finite multiplicative groups are cyclic")
    }

    /// Parses an element: "a/b" for rationals, "c0,c1,..." for power-basis
    /// coordinates, decimal residues in characteristic p.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let coeffs = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
        self.from_rational_coeffs(&coeffs)
    }
}

fn residue(a: &BigInt, p: &BigInt) -> u64 {
    let r = ((a % p) + p) % p;
    u64::try_from(r).expect("residue below a u64 prime")
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Coeffs {
    Rat(Vec<BigRational>),
    Mod(Vec<u64>),
}

/// An element of a [`Field`], stored by its coordinates in the power basis of
/// the field generator. Coordinates are always fully reduced, so equality is
/// structural.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    coeffs: Coeffs,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Rational coordinates, if in characteristic zero.
    pub fn rational_coeffs(&self) -> Option<&[BigRational]> {
        match &self.coeffs {
            Coeffs::Rat(v) => Some(v),
            Coeffs::Mod(_) => None,
        }
    }

    pub fn residue_coeffs(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Mod(v) => Some(v),
            Coeffs::Rat(_) => None,
        }
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.coeffs {
            Coeffs::Rat(v) if v[1..].iter().all(Zero::is_zero) => Some(v[0].clone()),
            _ => None,
        }
    }

    /// Applies the field automorphism zeta -> zeta^j (cyclotomic fields only).
    pub fn galois_conjugate(&self, j: u64) -> Result<Scalar> {
        let Kind::Cyclotomic { m, .. } = &self.field.0.kind else {
            return Err(Error::Unsupported("Galois action outside cyclotomic fields".into()));
        };
        if num_integer::gcd(j, *m) != 1 {
            return Err(Error::InvalidField(format!("{j} is not a unit mod {m}")));
        }
        let image = self.field.generator().pow(j);
        let mut acc = self.field.zero();
        let mut power = self.field.one();
        for c in self.rational_coeffs().unwrap() {
            acc = &acc + &(&power * &self.field.rational(c)?);
            power = &power * &image;
        }
        Ok(acc)
    }

    fn check(&self, other: &Scalar) {
        assert!(self.field == other.field, "mixing scalars from {} and {}", self.field.spec(), other.field.spec());
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        self.check(other);
        let coeffs = match (&self.coeffs, &other.coeffs, &self.field.0.kind) {
            (Coeffs::Rat(a), Coeffs::Rat(b), Kind::Cyclotomic { modulus, .. }) => {
                let d = a.len();
                let mut prod = vec![BigRational::zero(); 2 * d - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                // reduce by the monic modulus
                for top in (d..prod.len()).rev() {
                    let c = std::mem::take(&mut prod[top]);
                    if c.is_zero() {
                        continue;
                    }
                    for (j, mj) in modulus.iter().enumerate().take(d) {
                        if !mj.is_zero() {
                            prod[top - d + j] -= &c * BigRational::from_integer(mj.clone());
                        }
                    }
                }
                prod.truncate(d);
                Coeffs::Rat(prod)
            }
            (Coeffs::Mod(a), Coeffs::Mod(b), Kind::Galois { p, modulus }) => {
                let mut r = poly_fp::rem(&poly_fp::mul(a, b, *p), modulus, *p);
                r.resize(a.len(), 0);
                Coeffs::Mod(r)
            }
            _ => unreachable!(),
        };
        Scalar { field: self.field.clone(), coeffs }
    }

    fn inverse_impl(&self) -> Option<Scalar> {
        if Ring::is_zero(self) {
            return None;
        }
        match &self.field.0.kind {
            Kind::Galois { .. } => {
                let q = self.field.order().unwrap() as u64;
                Some(self.pow(q - 2))
            }
            Kind::Cyclotomic { modulus, .. } => {
                let a = match &self.coeffs {
                    Coeffs::Rat(v) => v.clone(),
                    _ => unreachable!(),
                };
                let m: Vec<BigRational> = modulus.iter().map(|c| BigRational::from_integer(c.clone())).collect();
                let inv = qpoly::inverse_mod(&a, &m)?;
                let mut v = inv;
                v.resize(self.field.0.degree, BigRational::zero());
                Some(Scalar { field: self.field.clone(), coeffs: Coeffs::Rat(v) })
            }
        }
    }
}

/// Polynomial helpers over Q for inversion modulo the cyclotomic polynomial.
mod qpoly {
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn trim(a: &mut Vec<BigRational>) {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        let lead = b[db].clone();
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() / &lead;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &c * bj;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    fn sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = a.to_vec();
        let len = if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 };
        if out.len() < len {
            out.resize(len, BigRational::zero());
        }
        for (i, x) in q.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
    pub(super) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        Some(s0.into_iter().map(|x| x / &c).collect())
    }
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn int_like(&self, k: i64) -> Self {
        self.field.int(k)
    }
    fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Rat(v) => v.iter().all(Zero::is_zero),
            Coeffs::Mod(v) => v.iter().all(|&c| c == 0),
        }
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let coeffs = match (&self.coeffs, &rhs.coeffs, &self.field.0.kind) {
            (Coeffs::Rat(a), Coeffs::Rat(b), _) => Coeffs::Rat(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Coeffs::Mod(a), Coeffs::Mod(b), Kind::Galois { p, .. }) => {
                Coeffs::Mod(a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            }
            _ => unreachable!(),
        };
        Scalar { field: self.field.clone(), coeffs }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
    fn negated(&self) -> Self {
        let coeffs = match (&self.coeffs, &self.field.0.kind) {
            (Coeffs::Rat(a), _) => Coeffs::Rat(a.iter().map(|x| -x).collect()),
            (Coeffs::Mod(a), Kind::Galois { p, .. }) => Coeffs::Mod(a.iter().map(|x| (p - x) % p).collect()),
            _ => unreachable!(),
        };
        Scalar { field: self.field.clone(), coeffs }
    }
}

impl FieldElem for Scalar {
    fn inverse(&self) -> Option<Self> {
        self.inverse_impl()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match &self.coeffs {
            Coeffs::Rat(v) => v.iter().map(format_rational).collect(),
            Coeffs::Mod(v) => v.iter().map(u64::to_string).collect(),
        };
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Ring::$call(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Ring::$call(&self, &rhs)
            }
        }
    };
}
forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.divide(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

/// prod_{i=1}^{m-1} (1 - zeta_m^i) in Q(zeta_m).
pub fn prod_one_minus_roots(m: u64) -> Result<Scalar> {
    let field = Field::cyclotomic(m)?;
    let zeta = field.primitive_root(m)?;
    let one = field.one();
    Ok((1..m).fold(field.one(), |acc, i| &acc * &(&one - &zeta.pow(i))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| cyclotomic_polynomial(m).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for m in 1..=30 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn zeta3_minimal_relation() {
        let f = Field::cyclotomic(3).unwrap();
        let z = f.primitive_root(3).unwrap();
        assert!((&(&f.one() + &z) + &z.pow(2)).is_zero());
    }

    #[test]
    fn zeta4_difference_of_squares() {
        let f = Field::cyclotomic(4).unwrap();
        let z = f.primitive_root(4).unwrap();
        let one = f.one();
        assert_eq!(&(&one + &z) * &(&one - &z), f.int(2));
    }

    #[test]
    fn f7_cube_root_matches_exhaustive_search() {
        let f = Field::new(FieldSpec::PrimeField { p: 7 }).unwrap();
        let root = f.primitive_root(3).unwrap();
        // exhaustive: elements x != 1 with x^3 = 1 in F_7
        let found: Vec<u64> = (2..7u64).filter(|x| x * x * x % 7 == 1).collect();
        assert_eq!(found, vec![2, 4]);
        assert_eq!(root, f.int(2));
    }

    #[test]
    fn no_root_when_char_divides_order() {
        let f = Field::new(FieldSpec::PrimeField { p: 3 }).unwrap();
        assert!(matches!(f.primitive_root(3), Err(Error::NoRootOfUnity { .. })));
        let f5 = Field::new(FieldSpec::PrimeField { p: 5 }).unwrap();
        assert!(f5.primitive_root(3).is_err());
        assert!(FieldSpec::prime_splitting(3, 6).is_err());
    }

    #[test]
    fn splitting_extension_has_the_root() {
        let spec = FieldSpec::prime_splitting(5, 3).unwrap();
        assert_eq!(spec, FieldSpec::PrimeExtension { p: 5, k: 2 });
        let f = Field::new(spec).unwrap();
        let z = f.primitive_root(3).unwrap();
        assert!(!z.is_one());
        assert!(z.pow(3).is_one());
        assert_eq!(f.modulus_string(), "[2, 0, 1]"); // x^2 + 2, smallest irreducible over F_5
    }

    #[test]
    fn prod_one_minus_roots_small() {
        assert_eq!(prod_one_minus_roots(1).unwrap(), Field::cyclotomic(1).unwrap().int(1));
        assert_eq!(prod_one_minus_roots(2).unwrap(), Field::cyclotomic(2).unwrap().int(2));
        assert_eq!(prod_one_minus_roots(3).unwrap(), Field::cyclotomic(3).unwrap().int(3));
        for m in 1..=12 {
            assert_eq!(prod_one_minus_roots(m).unwrap(), Field::cyclotomic(m).unwrap().int(m as i64));
        }
    }

    #[test]
    fn parse_and_display() {
        let f = Field::cyclotomic(5).unwrap();
        let x = f.parse("1/2,0,-3,4").unwrap();
        assert_eq!(x.to_string(), "1/2,0,-3,4");
        assert_eq!(f.parse("7").unwrap(), f.int(7));
        assert!(f.parse("1,2,3,4,5").is_err());
        let fp = Field::new(FieldSpec::PrimeField { p: 7 }).unwrap();
        assert_eq!(fp.parse("-1").unwrap(), fp.int(6));
        assert_eq!(fp.parse("1/2").unwrap(), fp.int(4));
        assert_eq!(Field::rationals().parse("6/4").unwrap().to_string(), "3/2");
        let _ = q(1, 2);
    }

    #[test]
    fn inverse_in_cyclotomic() {
        let f = Field::cyclotomic(7).unwrap();
        let x = f.parse("1,2,0,-1,3,1/5").unwrap();
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert!(f.zero().inverse().is_none());
    }

    #[test]
    fn galois_conjugation_is_automorphism() {
        let f = Field::cyclotomic(5).unwrap();
        let x = f.parse("1,2,0,-1").unwrap();
        let y = f.parse("0,1/3,1,1").unwrap();
        let s = |v: &Scalar| v.galois_conjugate(2).unwrap();
        assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        assert_eq!(s(&f.generator()), f.generator().pow(2));
    }
}
