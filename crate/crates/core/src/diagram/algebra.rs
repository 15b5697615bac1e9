use std::collections::BTreeMap;

use super::DottedDiagram;
use crate::error::{Error, Result};
use crate::scalar::{DeltaPolynomial, Field, Ring, Scalar};

/// Loop counts per parameter index: entry `c` counts loops weighted by
/// `delta_c`, with `c <= m/2`.
pub type Monomial = Vec<u32>;

/// The parameter index of a loop with holonomy `h`. A loop has no preferred
/// orientation, so `h` and `m - h` give the same index.
pub fn loop_class(m: u32, h: u32) -> usize {
    let h = h % m;
    h.min((m - h) % m) as usize
}

pub fn loop_monomial(m: u32, loops: &[u32]) -> Monomial {
    let mut mono = vec![0; m as usize];
    for &h in loops {
        mono[loop_class(m, h)] += 1;
    }
    mono
}

/// B_{m,n} with loop parameters in a coefficient ring `C`.
#[derive(Clone, Debug)]
pub struct BrauerAlgebra<C: Ring> {
    m: u32,
    n: usize,
    params: Vec<C>,
}

impl<C: Ring> BrauerAlgebra<C> {
    /// `params[a]` is delta_a. The defining relations force
    /// `delta_a = delta_{m-a}`, so asymmetric vectors are rejected.
    pub fn new(m: u32, n: usize, params: Vec<C>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Mismatch("m must be positive".into()));
        }
        if params.len() != m as usize {
            return Err(Error::Mismatch(format!("{} loop parameters for m = {m}", params.len())));
        }
        for a in 1..m as usize {
            if params[a] != params[m as usize - a] {
                return Err(Error::Unsupported(format!(
                    "delta_{a} = {} differs from delta_{} = {}; the relations e t^a e = delta_a e force them equal",
                    params[a],
                    m as usize - a,
                    params[m as usize - a]
                )));
            }
        }
        Ok(BrauerAlgebra { m, n, params })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[C] {
        &self.params
    }

    pub fn param(&self, a: i64) -> &C {
        &self.params[a.rem_euclid(self.m as i64) as usize]
    }

    pub fn one_coeff(&self) -> C {
        self.params[0].one_like()
    }

    pub fn zero(&self) -> AlgebraElement<C> {
        AlgebraElement::zero()
    }

    pub fn one(&self) -> AlgebraElement<C> {
        self.basis(DottedDiagram::identity(self.m, self.n))
    }

    pub fn basis(&self, d: DottedDiagram) -> AlgebraElement<C> {
        AlgebraElement::term(d, self.one_coeff())
    }

    pub fn s(&self, i: usize) -> Result<AlgebraElement<C>> {
        Ok(self.basis(DottedDiagram::s(self.m, self.n, i)?))
    }

    pub fn e(&self, i: usize) -> Result<AlgebraElement<C>> {
        Ok(self.basis(DottedDiagram::e(self.m, self.n, i)?))
    }

    pub fn t(&self, j: usize) -> Result<AlgebraElement<C>> {
        Ok(self.basis(DottedDiagram::t(self.m, self.n, j)?))
    }

    pub fn scalar(&self, c: C) -> AlgebraElement<C> {
        self.one().scale(&c)
    }

    pub fn loop_weight(&self, loops: &[u32]) -> C {
        let mut w = self.one_coeff();
        for &h in loops {
            w = w.times(&self.params[loop_class(self.m, h)]);
        }
        w
    }

    /// Product of two basis diagrams: the reduced diagram and its loop weight.
    pub fn mul_basis(&self, x: &DottedDiagram, y: &DottedDiagram) -> Result<(DottedDiagram, C)> {
        self.check(x)?;
        self.check(y)?;
        let (d, loops) = x.compose_unchecked(y);
        Ok((d, self.loop_weight(&loops)))
    }

    pub fn mul(&self, x: &AlgebraElement<C>, y: &AlgebraElement<C>) -> Result<AlgebraElement<C>> {
        let mut out = AlgebraElement::zero();
        for (dx, cx) in &x.terms {
            self.check(dx)?;
            for (dy, cy) in &y.terms {
                self.check(dy)?;
                let (d, loops) = dx.compose_unchecked(dy);
                let c = cx.times(cy).times(&self.loop_weight(&loops));
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, factors: &[AlgebraElement<C>]) -> Result<AlgebraElement<C>> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &AlgebraElement<C>, k: u32) -> Result<AlgebraElement<C>> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    fn check(&self, d: &DottedDiagram) -> Result<()> {
        if d.m() != self.m || d.n() != self.n {
            return Err(Error::Mismatch(format!(
                "diagram in B_{{{},{}}} used in B_{{{},{}}}",
                d.m(),
                d.n(),
                self.m,
                self.n
            )));
        }
        Ok(())
    }
}

impl BrauerAlgebra<DeltaPolynomial> {
    /// Generic parameters: delta_c is the variable `c` for `c <= m/2`.
    pub fn symbolic(field: &Field, m: u32, n: usize) -> Result<Self> {
        let nv = m as usize;
        let params = (0..nv).map(|a| DeltaPolynomial::var(field, nv, loop_class(m, a as u32))).collect();
        Self::new(m, n, params)
    }
}

impl BrauerAlgebra<Scalar> {
    pub fn numeric(m: u32, n: usize, delta: Vec<Scalar>) -> Result<Self> {
        if let Some(first) = delta.first() {
            if delta.iter().any(|d| d.field() != first.field()) {
                return Err(Error::Mismatch("loop parameters live in different fields".into()));
            }
        }
        Self::new(m, n, delta)
    }
}

/// A finite linear combination of basis diagrams. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<C: Ring> {
    terms: BTreeMap<DottedDiagram, C>,
}

impl<C: Ring> AlgebraElement<C> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn term(d: DottedDiagram, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(d, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DottedDiagram, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &DottedDiagram) -> Option<&C> {
        self.terms.get(d)
    }

    pub fn add_term(&mut self, d: DottedDiagram, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(old) => {
                let sum = old.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.negated());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.times(k));
        }
        out
    }

    pub fn star(&self) -> Self {
        self.map_diagrams(DottedDiagram::star)
    }

    pub fn iota(&self) -> Self {
        self.map_diagrams(DottedDiagram::iota)
    }

    fn map_diagrams(&self, f: impl Fn(&DottedDiagram) -> DottedDiagram) -> Self {
        let mut out = Self::zero();
        for (d, c) in &self.terms {
            out.add_term(f(d), c.clone());
        }
        out
    }
}
