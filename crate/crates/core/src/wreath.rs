//! The complex reflection group W_{m,n} = G(m,1,n) = Z/m wr S_n.
//!
//! An element is a permutation together with one color per strand. It is
//! read as a dotted diagram whose top point `i` is joined to bottom point
//! `perm[i]` by a strand carrying `colors[i]` dots (counted top to bottom).
//! The product `g.compose(h)` stacks `g` above `h`, matching the product in
//! the diagram algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    m: u32,
    perm: Vec<usize>,
    colors: Vec<u32>,
}

impl WreathElement {
    pub fn new(m: u32, perm: Vec<usize>, colors: Vec<u32>) -> Result<Self> {
        let n = perm.len();
        if m == 0 {
            return Err(Error::Mismatch("m must be positive".into()));
        }
        if colors.len() != n {
            return Err(Error::Mismatch(format!("{} colors for {} strands", colors.len(), n)));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Mismatch(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let colors = colors.into_iter().map(|c| c % m).collect();
        Ok(WreathElement { m, perm, colors })
    }

    pub fn identity(m: u32, n: usize) -> Self {
        WreathElement { m, perm: (0..n).collect(), colors: vec![0; n] }
    }

    /// The simple transposition s_i, 1 <= i < n.
    pub fn s(m: u32, n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::OutOfRange(format!("s_{i} in W_{{{m},{n}}}")));
        }
        let mut g = Self::identity(m, n);
        g.perm.swap(i - 1, i);
        Ok(g)
    }

    /// The reflection t_j (one dot on strand j), 1 <= j <= n.
    pub fn t(m: u32, n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::OutOfRange(format!("t_{j} in W_{{{m},{n}}}")));
        }
        let mut g = Self::identity(m, n);
        g.colors[j - 1] = 1 % m;
        Ok(g)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// 0-based images: top point i goes to bottom point perm[i].
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.colors.iter().all(|&c| c == 0)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.m != other.m || self.n() != other.n() {
            return Err(Error::Mismatch(format!("W_{{{},{}}} and W_{{{},{}}}", self.m, self.n(), other.m, other.n())));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let colors = self.perm.iter().zip(&self.colors).map(|(&p, &c)| (c + other.colors[p]) % self.m).collect();
        WreathElement { m: self.m, perm, colors }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut colors = vec![0; n];
        for (i, (&p, &c)) in self.perm.iter().zip(&self.colors).enumerate() {
            perm[p] = i;
            colors[p] = (self.m - c) % self.m;
        }
        WreathElement { m: self.m, perm, colors }
    }

    pub fn pow(&self, k: u64) -> Self {
        (0..k).fold(Self::identity(self.m, self.n()), |acc, _| acc.compose_unchecked(self))
    }

    /// The same element viewed in W_{m,n'} for n' >= n, fixing the extra strands.
    pub fn extend(&self, n_big: usize) -> Self {
        let mut g = self.clone();
        for i in self.n()..n_big {
            g.perm.push(i);
            g.colors.push(0);
        }
        g
    }
}

#[derive(Serialize, Deserialize)]
struct WreathJson {
    perm: Vec<usize>,
    colors: Vec<u32>,
}

impl Serialize for WreathElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WreathJson { perm: self.perm.iter().map(|p| p + 1).collect(), colors: self.colors.clone() }.serialize(s)
    }
}

impl WreathElement {
    /// Parses `{"perm":[1-based images],"colors":[...]}`.
    pub fn from_json(m: u32, text: &str) -> Result<Self> {
        let raw: WreathJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.perm.contains(&0) {
            return Err(Error::Parse("permutation images are 1-based".into()));
        }
        Self::new(m, raw.perm.iter().map(|p| p - 1).collect(), raw.colors)
    }
}

/// Number of elements m^n * n!.
pub fn group_order(m: u32, n: usize) -> u128 {
    (1..=n as u128).product::<u128>() * (m as u128).pow(n as u32)
}

pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;

/// All elements of W_{m,n}, permutations in lexicographic order and colors
/// varying fastest.
pub fn enumerate_group(m: u32, n: usize, cap: u128) -> Result<Vec<WreathElement>> {
    if m == 0 {
        return Err(Error::Mismatch("m must be positive".into()));
    }
    let order = group_order(m, n);
    if order > cap {
        return Err(Error::CapExceeded { what: format!("W_{{{m},{n}}}"), needed: order, cap });
    }
    let mut out = Vec::with_capacity(order as usize);
    for perm in permutations(n) {
        for idx in 0..(m as u64).pow(n as u32) {
            let mut rest = idx;
            let colors = (0..n)
                .map(|_| {
                    let c = (rest % m as u64) as u32;
                    rest /= m as u64;
                    c
                })
                .collect();
            out.push(WreathElement { m, perm: perm.clone(), colors });
        }
    }
    Ok(out)
}

/// Permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Element of the group algebra F W_{m,n}.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    field: Field,
    terms: BTreeMap<WreathElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(field: &Field) -> Self {
        GroupAlgebraElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(field: &Field, g: WreathElement) -> Self {
        Self::term(field.one(), g)
    }

    pub fn term(c: Scalar, g: WreathElement) -> Self {
        let mut x = Self::zero(c.field());
        if !c.is_zero() {
            x.terms.insert(g, c);
        }
        x
    }

    pub fn coefficient(&self, g: &WreathElement) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            let s = out.coefficient(g).plus(c);
            if s.is_zero() {
                out.terms.remove(g);
            } else {
                out.terms.insert(g.clone(), s);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        GroupAlgebraElement {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x.times(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out = out.add(&Self::term(a.times(b), g.compose_unchecked(h)));
            }
        }
        out
    }
}

/// Outcome of checking the explicit decomposition of the induced module
/// Ind_{Z_m wr B_1}^{W_{m,2}} 1 into the pieces indexed by the two-box
/// multipartitions.
#[derive(Clone, Debug, Serialize)]
pub struct PropEtaReport {
    pub m: u32,
    pub rank: usize,
    pub failures: Vec<String>,
}

impl PropEtaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.rank == self.m as usize
    }
}

/// The vectors v_i = prod_{j != i}(t_1 - u_j) prod_{j != m-i}(t_2 - u_j)(1 + s_1),
/// 1 <= i <= m, with u_j = zeta^j.
pub fn eta_vectors(m: u32) -> Result<Vec<GroupAlgebraElement>> {
    let field = Field::cyclotomic(m as u64)?;
    let zeta = field.primitive_root(m as u64)?;
    let u = |j: u32| zeta.pow((j % m) as u64);
    let t1 = WreathElement::t(m, 2, 1)?;
    let t2 = WreathElement::t(m, 2, 2)?;
    let s1 = WreathElement::s(m, 2, 1)?;
    let e = WreathElement::identity(m, 2);
    let linear = |t: &WreathElement, j: u32| {
        GroupAlgebraElement::basis(&field, t.clone()).add(&GroupAlgebraElement::term(u(j).negated(), e.clone()))
    };
    let sym = GroupAlgebraElement::basis(&field, e.clone()).add(&GroupAlgebraElement::basis(&field, s1));
    Ok((1..=m)
        .map(|i| {
            let mut v = GroupAlgebraElement::basis(&field, e.clone());
            for j in 1..=m {
                if j % m != i % m {
                    v = v.mul(&linear(&t1, j));
                }
            }
            for j in 1..=m {
                if j % m != (m - i) % m {
                    v = v.mul(&linear(&t2, j));
                }
            }
            v.mul(&sym)
        })
        .collect())
}

pub fn verify_prop_eta(m: u32) -> Result<PropEtaReport> {
    if m < 2 {
        return Err(Error::Unsupported("the decomposition is stated for m >= 2".into()));
    }
    let field = Field::cyclotomic(m as u64)?;
    let zeta = field.primitive_root(m as u64)?;
    let v = eta_vectors(m)?;
    let group = enumerate_group(m, 2, DEFAULT_GROUP_CAP)?;
    let coeffs = Matrix::from_fn(v.len(), group.len(), |i, j| v[i].coefficient(&group[j]));
    let rank = coeffs.rank();
    let s1 = GroupAlgebraElement::basis(&field, WreathElement::s(m, 2, 1)?);
    let t1 = GroupAlgebraElement::basis(&field, WreathElement::t(m, 2, 1)?);
    let vi = |i: u32| &v[(i - 1) as usize];
    let mut failures = Vec::new();
    if rank != m as usize {
        failures.push(format!("rank {rank}, expected {m}"));
    }
    if s1.mul(vi(m)) != *vi(m) {
        failures.push(format!("s_1 v_{m} != v_{m}"));
    }
    if t1.mul(vi(m)) != *vi(m) {
        failures.push(format!("t_1 v_{m} != v_{m}"));
    }
    for j in 1..=m {
        if t1.mul(vi(j)) != vi(j).scale(&zeta.pow(j as u64)) {
            failures.push(format!("t_1 v_{j} != u_{j} v_{j}"));
        }
    }
    for i in 1..m {
        if 2 * i == m {
            if s1.mul(vi(i)) != *vi(i) {
                failures.push(format!("s_1 v_{i} != v_{i}"));
            }
        } else if s1.mul(vi(i)) != *vi(m - i) {
            failures.push(format!("s_1 v_{i} != v_{}", m - i));
        }
    }
    Ok(PropEtaReport { m, rank, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(m: u32, n: usize) -> (Vec<WreathElement>, Vec<WreathElement>) {
        let s = (1..n).map(|i| WreathElement::s(m, n, i).unwrap()).collect();
        let t = (1..=n).map(|j| WreathElement::t(m, n, j).unwrap()).collect();
        (s, t)
    }

    #[test]
    fn reflection_relations() {
        for m in 1..=4 {
            for n in 1..=4 {
                let (s, t) = gens(m, n);
                let id = WreathElement::identity(m, n);
                let c = |a: &WreathElement, b: &WreathElement| a.compose(b).unwrap();
                for (i, si) in s.iter().enumerate() {
                    assert_eq!(c(si, si), id);
                    assert_eq!(c(si, &t[i]), c(&t[i + 1], si));
                    for (j, sj) in s.iter().enumerate() {
                        if i.abs_diff(j) == 1 {
                            assert_eq!(c(&c(si, sj), si), c(&c(sj, si), sj));
                        } else if i.abs_diff(j) > 1 {
                            assert_eq!(c(si, sj), c(sj, si));
                        }
                    }
                    if i >= 1 {
                        assert_eq!(c(si, &t[0]), c(&t[0], si));
                    }
                }
                if n >= 2 {
                    let lhs = c(&c(&c(&s[0], &t[0]), &s[0]), &t[0]);
                    let rhs = c(&c(&c(&t[0], &s[0]), &t[0]), &s[0]);
                    assert_eq!(lhs, rhs);
                }
                for tj in &t {
                    assert_eq!(tj.pow(m as u64), id);
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_group(2, 2, DEFAULT_GROUP_CAP).unwrap().len(), 8);
        assert_eq!(enumerate_group(1, 3, DEFAULT_GROUP_CAP).unwrap().len(), 6);
        assert_eq!(enumerate_group(3, 2, DEFAULT_GROUP_CAP).unwrap().len(), 18);
        assert!(matches!(enumerate_group(4, 4, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn closure_and_inverses() {
        let g = enumerate_group(2, 3, DEFAULT_GROUP_CAP).unwrap();
        let set: std::collections::HashSet<_> = g.iter().cloned().collect();
        assert_eq!(set.len(), 48);
        for a in &g {
            assert!(a.compose(&a.inverse()).unwrap().is_identity());
            for b in g.iter().step_by(5) {
                assert!(set.contains(&a.compose(b).unwrap()));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = WreathElement::new(3, vec![1, 2, 0], vec![2, 0, 1]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"perm":[2,3,1],"colors":[2,0,1]}"#);
        assert_eq!(WreathElement::from_json(3, &text).unwrap(), g);
        assert!(WreathElement::from_json(3, r#"{"perm":[1,1],"colors":[0,0]}"#).is_err());
    }

    #[test]
    fn mismatched_compose() {
        let a = WreathElement::identity(2, 2);
        let b = WreathElement::identity(3, 2);
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn prop_eta_small() {
        for m in 2..=5 {
            let r = verify_prop_eta(m).unwrap();
            assert!(r.passed(), "m={m}: {:?}", r.failures);
        }
        // m = 2: t_1 v_1 = -v_1
        let v = eta_vectors(2).unwrap();
        let f = Field::cyclotomic(2).unwrap();
        let t1 = GroupAlgebraElement::basis(&f, WreathElement::t(2, 2, 1).unwrap());
        assert_eq!(t1.mul(&v[0]), v[0].scale(&f.int(-1)));
    }
}
