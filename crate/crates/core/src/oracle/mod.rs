//! Ground truth for semisimplicity in characteristic zero: the radical of
//! the trace form of the regular representation, computed from a
//! structure-constant table of the diagram basis.

mod concord;

pub use concord::{
    concordance_sweep, hyperplane_points, ConcordancePoint, ConcordanceReport, GridSpec, PointKind,
    CONCORDANCE_SCHEMA_VERSION,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::diagram::{enumerate_basis, loop_monomial, BrauerAlgebra, DottedDiagram, Monomial};
use crate::error::{Error, Result};
use crate::gram::cell_gram_numeric;
use crate::linalg::{rank_integer, rank_mod_p, Matrix};
use crate::partition::multipartitions;
use crate::scalar::{Ring, Scalar};
use crate::wreath::enumerate_group;

pub const DEFAULT_TABLE_CAP: u128 = 500;

/// Products of basis diagrams: `b_i b_j = delta^{e} b_k`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    m: u32,
    n: usize,
    basis: Vec<DottedDiagram>,
    products: Vec<(u32, Monomial)>,
}

impl StructureTable {
    pub fn build(m: u32, n: usize, cap: u128) -> Result<Self> {
        Self::from_basis(m, n, enumerate_basis(m, n, cap)?)
    }

    /// The dot-free through-strand subalgebra, i.e. the group algebra of W_{m,n}.
    pub fn group_algebra(m: u32, n: usize, cap: u128) -> Result<Self> {
        let basis = enumerate_group(m, n, cap)?.iter().map(DottedDiagram::from_wreath).collect();
        Self::from_basis(m, n, basis)
    }

    /// Tabulates products over a basis that must be closed under multiplication.
    fn from_basis(m: u32, n: usize, basis: Vec<DottedDiagram>) -> Result<Self> {
        let index: std::collections::HashMap<&DottedDiagram, u32> =
            basis.iter().enumerate().map(|(i, d)| (d, i as u32)).collect();
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                let (d, loops) = x.compose_unchecked(y);
                let k = *index
                    .get(&d)
                    .ok_or_else(|| Error::Internal(format!("product {x} * {y} = {d} is not a basis diagram")))?;
                products.push((k, loop_monomial(m, &loops)));
            }
        }
        Ok(StructureTable { m, n, basis, products })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[DottedDiagram] {
        &self.basis
    }

    pub fn product(&self, i: usize, j: usize) -> (usize, &Monomial) {
        let (k, mono) = &self.products[i * self.basis.len() + j];
        (*k as usize, mono)
    }

    /// The same table with the basis reordered: new index `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.basis.len();
        if perm.len() != n {
            return Err(Error::Mismatch("permutation length differs from the basis size".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        if inverse.contains(&usize::MAX) {
            return Err(Error::Mismatch("not a permutation".into()));
        }
        let basis = perm.iter().map(|&i| self.basis[i].clone()).collect();
        let mut products = Vec::with_capacity(n * n);
        for &i in perm {
            for &j in perm {
                let (k, mono) = self.product(i, j);
                products.push((inverse[k] as u32, mono.clone()));
            }
        }
        Ok(StructureTable { m: self.m, n: self.n, basis, products })
    }

    /// The trace-form matrix `T_ij = tr(L_{b_i b_j})` at the given parameters.
    pub fn trace_form(&self, delta: &[Scalar]) -> Result<Matrix<Scalar>> {
        BrauerAlgebra::numeric(self.m, self.n, delta.to_vec())?;
        let n = self.basis.len();
        let weight = |mono: &Monomial| {
            let mut w = delta[0].one_like();
            for (c, &e) in mono.iter().enumerate() {
                if e > 0 {
                    w = w.times(&delta[c].pow(e as u64));
                }
            }
            w
        };
        // tr(L_{b_k}) = sum of coefficients of b_l in b_k b_l
        let mut trace = vec![delta[0].zero_like(); n];
        for (k, tr) in trace.iter_mut().enumerate() {
            for l in 0..n {
                let (p, mono) = self.product(k, l);
                if p == l {
                    *tr = tr.plus(&weight(mono));
                }
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| {
            let (k, mono) = self.product(i, j);
            if trace[k].is_zero() {
                trace[k].clone()
            } else {
                weight(mono).times(&trace[k])
            }
        }))
    }
}

const PREPASS_PRIMES: [u64; 3] = [2_147_483_647, 2_305_843_009_213_693_951, 1_000_000_007];

/// Exact rank over a characteristic-zero field. A full rank modulo a prime
/// settles the question; otherwise the rank is computed exactly.
pub fn certified_rank(a: &Matrix<Scalar>) -> usize {
    let rows = a.rows();
    let rational: Option<Vec<Vec<BigInt>>> = (0..rows)
        .map(|i| {
            let row: Option<Vec<_>> = a.row(i).iter().map(Scalar::as_rational).collect();
            let row = row?;
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            Some(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
        })
        .collect();
    let Some(ints) = rational else {
        return a.rank();
    };
    let full = rows.min(a.cols());
    for p in PREPASS_PRIMES {
        let pb = BigInt::from(p);
        let reduced: Vec<Vec<u64>> = ints
            .iter()
            .map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p")).collect())
            .collect();
        if rank_mod_p(&reduced, p) == full {
            return full;
        }
    }
    rank_integer(ints)
}

/// `N - rank` of the trace form; zero exactly when the algebra is semisimple
/// (characteristic zero only).
pub fn radical_dimension(table: &StructureTable, delta: &[Scalar]) -> Result<usize> {
    check_char_zero(delta)?;
    let t = table.trace_form(delta)?;
    Ok(table.len() - certified_rank(&t))
}

fn check_char_zero(delta: &[Scalar]) -> Result<()> {
    let first = delta.first().ok_or_else(|| Error::Mismatch("empty parameter vector".into()))?;
    if first.field().characteristic() != 0 {
        return Err(Error::Unsupported("the trace-form oracle is valid only in characteristic zero".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleDecision {
    Semisimple,
    NotSemisimple,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellCheck {
    pub mu: String,
    pub det: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleVerdict {
    pub decision: OracleDecision,
    pub dimension: usize,
    pub radical_dimension: usize,
    /// Determinants of the cells (1, mu') when n <= 3.
    pub cells: Option<Vec<CellCheck>>,
    /// Whether "all cell determinants nonzero" matches the decision.
    pub cells_agree: Option<bool>,
}

impl OracleVerdict {
    pub fn is_semisimple(&self) -> bool {
        self.decision == OracleDecision::Semisimple
    }
}

/// Determinants of the cellular Gram matrices with one horizontal arc.
pub fn k1_cell_determinants(n: usize, delta: &[Scalar]) -> Result<Vec<CellCheck>> {
    let m = delta.len();
    multipartitions(m, n - 2)
        .into_iter()
        .map(|mu| {
            let g = cell_gram_numeric(n, &mu, delta)?;
            Ok(CellCheck { mu: mu.to_string(), det: g.det.expect("square").to_string() })
        })
        .collect()
}

pub fn semisimple_verdict(table: &StructureTable, delta: &[Scalar]) -> Result<OracleVerdict> {
    let radical = radical_dimension(table, delta)?;
    let decision = if radical == 0 { OracleDecision::Semisimple } else { OracleDecision::NotSemisimple };
    let n = table.n();
    let (cells, cells_agree) = if (2..=3).contains(&n) {
        let cells = k1_cell_determinants(n, delta)?;
        let zero = delta[0].zero_like().to_string();
        let all_nonzero = cells.iter().all(|c| c.det != zero);
        (Some(cells), Some(all_nonzero == (radical == 0)))
    } else {
        (None, None)
    };
    Ok(OracleVerdict { decision, dimension: table.len(), radical_dimension: radical, cells, cells_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn q(xs: &[i64]) -> Vec<Scalar> {
        let f = Field::rationals();
        xs.iter().map(|&x| f.int(x)).collect()
    }

    #[test]
    fn table_shape() {
        let t = StructureTable::build(2, 2, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t.len(), 12);
        let e = DottedDiagram::e(2, 2, 1).unwrap();
        let i = t.basis().iter().position(|d| *d == e).unwrap();
        let (k, mono) = t.product(i, i);
        assert_eq!(k, i);
        assert_eq!(mono, &vec![1, 0]);
        let id = t.basis().iter().position(|d| *d == DottedDiagram::identity(2, 2)).unwrap();
        for j in 0..t.len() {
            assert_eq!(t.product(id, j), (j, &vec![0, 0]));
        }
        assert!(StructureTable::build(4, 4, DEFAULT_TABLE_CAP).is_err());
    }

    #[test]
    fn verdicts_at_two_two() {
        let t = StructureTable::build(2, 2, DEFAULT_TABLE_CAP).unwrap();
        for (delta, semisimple) in [([1, -1], false), ([1, 1], false), ([3, 1], true), ([0, 2], true), ([0, 0], false)]
        {
            let v = semisimple_verdict(&t, &q(&delta)).unwrap();
            assert_eq!(v.is_semisimple(), semisimple, "{delta:?}");
            assert_eq!(v.cells_agree, Some(true));
        }
        let tf = t.trace_form(&q(&[3, 1])).unwrap();
        assert!(tf.is_symmetric());
    }

    #[test]
    fn permutation_invariance() {
        let t = StructureTable::build(2, 2, DEFAULT_TABLE_CAP).unwrap();
        let perm: Vec<usize> = (0..t.len()).rev().collect();
        let p = t.permuted(&perm).unwrap();
        for delta in [[1, -1], [2, 5], [0, 0]] {
            assert_eq!(radical_dimension(&t, &q(&delta)).unwrap(), radical_dimension(&p, &q(&delta)).unwrap());
        }
    }

    #[test]
    fn char_p_refused() {
        let t = StructureTable::build(2, 2, DEFAULT_TABLE_CAP).unwrap();
        let f = Field::new(crate::scalar::FieldSpec::PrimeField { p: 5 }).unwrap();
        assert!(radical_dimension(&t, &[f.int(1), f.int(2)]).is_err());
    }

    #[test]
    fn galois_relabelling_is_stable() {
        // t -> t^j induces delta_a -> delta_{ja}
        let t = StructureTable::build(5, 2, DEFAULT_TABLE_CAP).unwrap();
        let f = Field::rationals();
        let base = [4i64, 1, -3, -3, 1];
        for j in [2usize, 3] {
            let relabelled: Vec<Scalar> = (0..5).map(|a| f.int(base[(j * a) % 5])).collect();
            assert_eq!(radical_dimension(&t, &q(&base)).unwrap(), radical_dimension(&t, &relabelled).unwrap());
        }
    }

    #[test]
    fn brauer_zero_parameter() {
        for n in 2..=4 {
            let t = StructureTable::build(1, n, DEFAULT_TABLE_CAP).unwrap();
            let semisimple = radical_dimension(&t, &q(&[0])).unwrap() == 0;
            assert_eq!(semisimple, n == 3, "n = {n}");
        }
    }

    #[test]
    fn group_algebra_is_semisimple() {
        let t = StructureTable::group_algebra(2, 2, 100).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(radical_dimension(&t, &q(&[0, 0])).unwrap(), 0);
    }
}
