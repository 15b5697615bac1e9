//! Gram matrices: the iota-form on the one-arc module V, its equivariance,
//! cellular Gram matrices of the cells (1, mu') for n <= 3, and the
//! single-box block matrix at n = 3.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{AlgebraElement, BrauerAlgebra, Decomposition, DottedDiagram};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::partition::Multipartition;
use crate::scalar::{prod_one_minus_roots, DeltaPolynomial, Field, Ring, Scalar};
use crate::wreath::{enumerate_group, group_order, WreathElement};

/// `alpha (x) w (x) alpha_0`: one top arc with a label, a group element on
/// the remaining strands, and the bottom arc `{n-1, n}` without dots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct VBasisIndex {
    pub arc: (usize, usize),
    pub label: u32,
    pub w: WreathElement,
}

impl VBasisIndex {
    pub fn diagram(&self, n: usize) -> Result<DottedDiagram> {
        let parts = Decomposition {
            top: vec![(self.arc.0, self.arc.1, self.label)],
            through: self.w.clone(),
            bottom: vec![(n - 1, n, 0)],
        };
        DottedDiagram::assemble(self.w.m(), n, &parts)
    }
}

impl fmt::Display for VBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = serde_json::to_string(&self.w).map_err(|_| fmt::Error)?;
        write!(f, "{{{},{}}}:{} {}", self.arc.0, self.arc.1, self.label, w)
    }
}

pub const DEFAULT_GRAM_CAP: u128 = 5_000;

pub fn v_dimension(m: u32, n: usize) -> u128 {
    if n < 2 {
        return 0;
    }
    let arcs = (n * (n - 1) / 2) as u128;
    m as u128 * arcs * group_order(m, n - 2)
}

/// Basis of V, arcs in lexicographic order, then labels, then group elements.
pub fn v_basis(m: u32, n: usize, cap: u128) -> Result<Vec<VBasisIndex>> {
    if n < 2 || m == 0 {
        return Err(Error::OutOfRange(format!("V needs m >= 1 and n >= 2, got ({m}, {n})")));
    }
    let f = v_dimension(m, n);
    if f > cap {
        return Err(Error::CapExceeded { what: format!("dim V for ({m}, {n})"), needed: f, cap });
    }
    let group = enumerate_group(m, n - 2, cap)?;
    let mut out = Vec::with_capacity(f as usize);
    for i in 1..n {
        for j in i + 1..=n {
            for label in 0..m {
                for w in &group {
                    out.push(VBasisIndex { arc: (i, j), label, w: w.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// The pairing: coefficient of `e_{n-1}` in `iota(x) y`.
pub fn pairing<C: Ring>(alg: &BrauerAlgebra<C>, x: &VBasisIndex, y: &VBasisIndex) -> Result<C> {
    let n = alg.n();
    let (d, c) = alg.mul_basis(&x.diagram(n)?.iota(), &y.diagram(n)?)?;
    if d == DottedDiagram::e(alg.m(), n, n - 1)? {
        Ok(c)
    } else {
        Ok(alg.one_coeff().zero_like())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GramKind {
    IotaForm,
    CellularForm,
}

#[derive(Clone, Debug)]
pub struct GramMatrix<C> {
    pub kind: GramKind,
    pub basis: Vec<String>,
    pub matrix: Matrix<C>,
    pub det: Option<C>,
}

impl<C: Ring> GramMatrix<C> {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Fills in the determinant by division-free expansion.
    pub fn with_det(mut self) -> Self {
        if self.size() > 0 {
            let one = self.matrix[(0, 0)].one_like();
            self.det = Some(self.matrix.det_division_free(&one));
        }
        self
    }
}

impl GramMatrix<Scalar> {
    /// Fills in the determinant by fraction-free elimination.
    pub fn with_exact_det(mut self) -> Self {
        if self.size() > 0 {
            self.det = Some(self.matrix.det());
        }
        self
    }
}

impl<C: Ring> Serialize for GramMatrix<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GramMatrix", 5)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("basis", &self.basis)?;
        let entries: Vec<Vec<String>> =
            (0..self.size()).map(|i| self.matrix.row(i).iter().map(ToString::to_string).collect()).collect();
        st.serialize_field("entries", &entries)?;
        st.serialize_field("det", &self.det.as_ref().map(ToString::to_string))?;
        st.end()
    }
}

/// The f x f matrix of the pairing on V.
pub fn gram_big<C: Ring>(alg: &BrauerAlgebra<C>, cap: u128) -> Result<GramMatrix<C>> {
    let n = alg.n();
    let basis = v_basis(alg.m(), n, cap)?;
    let diagrams: Vec<DottedDiagram> = basis.iter().map(|b| b.diagram(n)).collect::<Result<_>>()?;
    let iotas: Vec<DottedDiagram> = diagrams.iter().map(DottedDiagram::iota).collect();
    let target = DottedDiagram::e(alg.m(), n, n - 1)?;
    let zero = alg.one_coeff().zero_like();
    let mut rows = Vec::with_capacity(basis.len());
    for x in &iotas {
        let mut row = Vec::with_capacity(basis.len());
        for y in &diagrams {
            let (d, c) = alg.mul_basis(x, y)?;
            row.push(if d == target { c } else { zero.clone() });
        }
        rows.push(row);
    }
    Ok(GramMatrix {
        kind: GramKind::IotaForm,
        basis: basis.iter().map(ToString::to_string).collect(),
        matrix: Matrix::from_rows(rows),
        det: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub side: &'static str,
    pub generator: String,
    pub commutes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub m: u32,
    pub n: usize,
    pub delta: Vec<String>,
    pub checks: Vec<GeneratorCheck>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.commutes)
    }
}

/// Random rational loop parameters with `delta_a = delta_{m-a}`.
pub fn random_symmetric_delta(field: &Field, m: u32, seed: u64) -> Vec<Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![field.zero(); m as usize];
    for a in 0..=(m as usize) / 2 {
        let v = field.int(rng.gen_range(-50..=50));
        out[a] = v.clone();
        out[(m as usize - a) % m as usize] = v;
    }
    out
}

/// Checks that the Gram endomorphism commutes with the left action of the
/// generators of W_{m,n} and the right action of those of W_{m,n-2}.
pub fn equivariance_check(alg: &BrauerAlgebra<Scalar>, cap: u128) -> Result<EquivarianceReport> {
    let (m, n) = (alg.m(), alg.n());
    let basis = v_basis(m, n, cap)?;
    let diagrams: Vec<DottedDiagram> = basis.iter().map(|b| b.diagram(n)).collect::<Result<_>>()?;
    let index: HashMap<&DottedDiagram, usize> = diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let gram = gram_big(alg, cap)?.matrix;
    // the endomorphism sends b_j to sum_i <b_i, b_j> b_i
    let op = gram.clone();
    let field = alg.params()[0].field().clone();
    let perm_matrix = |images: &[usize]| {
        Matrix::from_fn(images.len(), images.len(), |i, j| if images[j] == i { field.one() } else { field.zero() })
    };
    let mut checks = Vec::new();
    let mut record = |side: &'static str, name: String, images: Vec<usize>| {
        let p = perm_matrix(&images);
        checks.push(GeneratorCheck { side, generator: name, commutes: op.mul(&p) == p.mul(&op) });
    };
    let mut left: Vec<(String, WreathElement)> = vec![("1".into(), WreathElement::identity(m, n))];
    left.extend((1..n).map(|i| (format!("s{i}"), WreathElement::s(m, n, i).expect("in range"))));
    left.extend((1..=n).map(|j| (format!("t{j}"), WreathElement::t(m, n, j).expect("in range"))));
    for (name, g) in left {
        let gd = DottedDiagram::from_wreath(&g);
        let images = diagrams
            .iter()
            .map(|d| {
                let (p, loops) = gd.compose_unchecked(d);
                debug_assert!(loops.is_empty());
                index.get(&p).copied().ok_or_else(|| Error::Internal(format!("{name} moved a basis vector out of V")))
            })
            .collect::<Result<Vec<_>>>()?;
        record("left", name, images);
    }
    let k = n - 2;
    let mut right: Vec<(String, WreathElement)> = Vec::new();
    right.extend((1..k).map(|i| (format!("s{i}"), WreathElement::s(m, k, i).expect("in range"))));
    right.extend((1..=k).map(|j| (format!("t{j}"), WreathElement::t(m, k, j).expect("in range"))));
    for (name, y) in right {
        let yd = DottedDiagram::from_wreath(&y.extend(n));
        let images = diagrams
            .iter()
            .map(|d| {
                let (p, _) = d.compose_unchecked(&yd);
                index.get(&p).copied().ok_or_else(|| Error::Internal(format!("{name} moved a basis vector out of V")))
            })
            .collect::<Result<Vec<_>>>()?;
        record("right", name, images);
    }
    Ok(EquivarianceReport { m, n, delta: alg.params().iter().map(ToString::to_string).collect(), checks })
}

/// The component of the single box of `mu`, or `None` for the empty multipartition.
fn box_component(mu: &Multipartition) -> Option<usize> {
    mu.components().iter().position(|p| !p.is_empty()).map(|k| k + 1)
}

/// `prod_{l != k} (t - xi^l)` as coefficients of `1, t, ..., t^{m-1}`.
fn specht_polynomial<C: Ring>(xi: &C, m: u32, k: usize) -> Vec<C> {
    let mut poly = vec![xi.one_like()];
    for l in 1..=m as usize {
        if l == k {
            continue;
        }
        let root = xi.pow(l as u64);
        let mut next = vec![xi.zero_like(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].plus(c);
            next[i] = next[i].minus(&c.times(&root));
        }
        poly = next;
    }
    poly
}

/// Gram matrix of the cellular form on the cell (1, mu') for `n` in {2, 3}.
/// `xi` is the primitive m-th root of unity in the coefficient ring.
pub fn cell_gram<C: Ring>(alg: &BrauerAlgebra<C>, mu: &Multipartition, xi: &C) -> Result<GramMatrix<C>> {
    let (m, n) = (alg.m(), alg.n());
    if mu.m() != m as usize || mu.size() + 2 != n {
        return Err(Error::Mismatch(format!("{mu} is not an {m}-multipartition of {}", n as i64 - 2)));
    }
    if n > 3 {
        return Err(Error::Unsupported(format!("cell Gram matrices are built only for n <= 3, got {n}")));
    }
    let g: Vec<C> = match box_component(mu) {
        None => vec![alg.one_coeff()],
        Some(k) => specht_polynomial(xi, m, k),
    };
    let arcs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    for &(i, j) in &arcs {
        for s in 0..m {
            let mut x = AlgebraElement::zero();
            for (c, coeff) in g.iter().enumerate() {
                let w = if n == 3 { WreathElement::t(m, 1, 1)?.pow(c as u64) } else { WreathElement::identity(m, 0) };
                let idx = VBasisIndex { arc: (i, j), label: s, w };
                x.add_term(idx.diagram(n)?, coeff.clone());
            }
            labels.push(format!("{{{i},{j}}}:{s}"));
            vectors.push(x);
        }
    }
    let lead = g.len() - 1;
    let reference: Vec<DottedDiagram> = (0..g.len())
        .map(|c| {
            let w = if n == 3 { WreathElement::t(m, 1, 1)?.pow(c as u64) } else { WreathElement::identity(m, 0) };
            VBasisIndex { arc: (n - 1, n), label: 0, w }.diagram(n)
        })
        .collect::<Result<_>>()?;
    let zero = alg.one_coeff().zero_like();
    let mut rows = Vec::with_capacity(vectors.len());
    for x in &vectors {
        let xs = x.star();
        let mut row = Vec::with_capacity(vectors.len());
        for y in &vectors {
            let prod = alg.mul(&xs, y)?;
            // prod = r * (alpha_0 (x) g (x) alpha_0); g is monic
            let coeff = |d: &DottedDiagram| prod.coefficient(d).cloned().unwrap_or_else(|| zero.clone());
            let r = coeff(&reference[lead]);
            for (c, d) in reference.iter().enumerate() {
                if coeff(d) != r.times(&g[c]) {
                    return Err(Error::Internal(format!(
                        "cell product is not a multiple of the cell generator at {c}"
                    )));
                }
            }
            if prod.len() > reference.iter().filter(|d| prod.coefficient(d).is_some()).count() {
                return Err(Error::Internal("cell product leaves the top cell".into()));
            }
            row.push(r);
        }
        rows.push(row);
    }
    Ok(GramMatrix { kind: GramKind::CellularForm, basis: labels, matrix: Matrix::from_rows(rows), det: None })
}

pub fn cell_gram_numeric(n: usize, mu: &Multipartition, delta: &[Scalar]) -> Result<GramMatrix<Scalar>> {
    let m = delta.len() as u32;
    let alg = BrauerAlgebra::numeric(m, n, delta.to_vec())?;
    let xi = delta[0].field().primitive_root(m as u64)?;
    Ok(cell_gram(&alg, mu, &xi)?.with_exact_det())
}

pub fn cell_gram_symbolic(field: &Field, m: u32, n: usize, mu: &Multipartition) -> Result<GramMatrix<DeltaPolynomial>> {
    let alg = BrauerAlgebra::symbolic(field, m, n)?;
    let xi = DeltaPolynomial::constant(field.primitive_root(m as u64)?, m as usize);
    Ok(cell_gram(&alg, mu, &xi)?.with_det())
}

/// The cell (1, lambda) with lambda = ((1), (), ..., ()) at n = 3, compared
/// with the 3 x 3 block form whose diagonal blocks vanish and whose
/// off-diagonal blocks are the all-`a` matrix, `a = prod (1 - xi^i) = m`.
#[derive(Clone, Debug, Serialize)]
pub struct SingleBoxReport {
    pub m: u32,
    pub gram: GramMatrix<DeltaPolynomial>,
    pub a: String,
    pub printed_holds_identically: bool,
    pub printed_holds_at_zero: bool,
    pub mismatches: Vec<(usize, usize, String, String)>,
    pub det_at_zero: String,
    pub rank_at_zero: usize,
}

pub fn single_box_gram(m: u32) -> Result<SingleBoxReport> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("single-box Gram matrix needs m >= 2, got {m}")));
    }
    let field = Field::cyclotomic(m as u64)?;
    let mut mu = Multipartition::empty(m as usize);
    mu = mu.with_box(m as usize, 1);
    let alg = BrauerAlgebra::symbolic(&field, m, 3)?;
    let xi = DeltaPolynomial::constant(field.primitive_root(m as u64)?, m as usize);
    let gram = cell_gram(&alg, &mu, &xi)?;
    let a = prod_one_minus_roots(m as u64)?;
    let size = 3 * m as usize;
    let block = |i: usize, j: usize| i / m as usize == j / m as usize;
    let printed = Matrix::from_fn(size, size, |i, j| if block(i, j) { field.zero() } else { a.clone() });
    let zeros = vec![field.zero(); m as usize];
    let at_zero = gram.matrix.try_map(|p| p.eval(&zeros))?;
    let mut mismatches = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let expected = DeltaPolynomial::constant(printed[(i, j)].clone(), m as usize);
            if gram.matrix[(i, j)] != expected {
                mismatches.push((i, j, gram.matrix[(i, j)].to_string(), printed[(i, j)].to_string()));
            }
        }
    }
    Ok(SingleBoxReport {
        m,
        a: a.to_string(),
        printed_holds_identically: mismatches.is_empty(),
        printed_holds_at_zero: at_zero == printed,
        mismatches,
        det_at_zero: at_zero.det().to_string(),
        rank_at_zero: at_zero.rank(),
        gram,
    })
}
