use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Scalar};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Exponent vector over the variables delta_0..delta_{m-1}.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in the loop parameters delta_0..delta_{m-1} with
/// coefficients in a fixed [`Field`]. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaPolynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl DeltaPolynomial {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        DeltaPolynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable delta_i.
    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field.one(), e)
    }

    pub fn monomial(c: Scalar, exps: Exponents) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree in delta_i.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Exponents, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Evaluates at a point (one value per variable).
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Mismatch(format!(
                "polynomial in {} variables evaluated at {} values",
                self.nvars,
                point.len()
            )));
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.times(&x.pow(k as u64));
                }
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    /// Substitutes a polynomial for each variable.
    pub fn compose(&self, images: &[DeltaPolynomial]) -> DeltaPolynomial {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map_or(self.nvars, |p| p.nvars);
        let mut acc = DeltaPolynomial::zero(&self.field, target_vars);
        for (e, c) in &self.terms {
            let mut t = DeltaPolynomial::constant(c.clone(), target_vars);
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = t.times(&img.pow(k as u64));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

impl Ring for DeltaPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field, self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.field.one(), self.nvars)
    }
    fn int_like(&self, k: i64) -> Self {
        Self::constant(self.field.int(k), self.nvars)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.times(c2));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        DeltaPolynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negated())).collect(),
        }
    }
}

impl fmt::Display for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("d{i}") } else { format!("d{i}^{k}") })
                    .collect();
                let coeff = c.to_string();
                let coeff = if coeff.contains(',') { format!("({coeff})") } else { coeff };
                match (mono.is_empty(), coeff.as_str()) {
                    (true, _) => coeff,
                    (false, "1") => mono.join("*"),
                    (false, "-1") => format!("-{}", mono.join("*")),
                    (false, _) => format!("{coeff}*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for DeltaPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_eval() {
        let f = Field::rationals();
        let d0 = DeltaPolynomial::var(&f, 2, 0);
        let d1 = DeltaPolynomial::var(&f, 2, 1);
        let p = d0.times(&d0).minus(&d1.times(&d1));
        let q = d0.plus(&d1);
        let pt = [f.int(3), f.int(1)];
        assert_eq!(p.times(&q).eval(&pt).unwrap(), f.int(8 * 4));
        assert_eq!(p.to_string(), "d0^2 + -d1^2");
        assert!(p.minus(&p).is_zero());
    }
}
