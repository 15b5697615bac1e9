use serde::Serialize;

use super::algebra::{AlgebraElement, BrauerAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{DeltaPolynomial, Field};

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: u8,
    pub instance: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub m: u32,
    pub n: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Number of checked instances of each relation, indexed 1..=17.
    pub fn counts(&self) -> [usize; 18] {
        let mut out = [0; 18];
        for c in &self.checks {
            out[c.relation as usize] += 1;
        }
        out
    }
}

/// Evaluates every instance of the seventeen defining relations of
/// B_{m,n} with generic loop parameters over Q.
pub fn verify_relations(m: u32, n: usize) -> Result<RelationReport> {
    if m < 1 || n < 2 {
        return Err(Error::OutOfRange(format!("relations need m >= 1 and n >= 2, got ({m}, {n})")));
    }
    let alg = BrauerAlgebra::symbolic(&Field::rationals(), m, n)?;
    let s = |i: usize| alg.s(i).expect("index in range");
    let e = |i: usize| alg.e(i).expect("index in range");
    let t = |j: usize| alg.t(j).expect("index in range");
    let prod = |xs: &[AlgebraElement<DeltaPolynomial>]| alg.product(xs).expect("same algebra");
    let one = alg.one();
    let mut checks = Vec::new();
    let mut check = |relation: u8, instance: String, lhs: AlgebraElement<_>, rhs: AlgebraElement<_>| {
        checks.push(RelationCheck { relation, instance, passed: lhs == rhs });
    };

    for i in 1..n {
        check(1, format!("s{i}^2 = 1"), prod(&[s(i), s(i)]), one.clone());
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                check(2, format!("s{i} s{j} = s{j} s{i}"), prod(&[s(i), s(j)]), prod(&[s(j), s(i)]));
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        check(
            3,
            format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1),
            prod(&[s(i), s(i + 1), s(i)]),
            prod(&[s(i + 1), s(i), s(i + 1)]),
        );
    }
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            check(4, format!("s{i} t{j} = t{j} s{i}"), prod(&[s(i), t(j)]), prod(&[t(j), s(i)]));
        }
    }
    for i in 1..n {
        check(5, format!("e{i}^2 = delta0 e{i}"), prod(&[e(i), e(i)]), e(i).scale(alg.param(0)));
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                check(6, format!("s{i} e{j} = e{j} s{i}"), prod(&[s(i), e(j)]), prod(&[e(j), s(i)]));
                check(7, format!("e{i} e{j} = e{j} e{i}"), prod(&[e(i), e(j)]), prod(&[e(j), e(i)]));
            }
        }
    }
    for i in 1..n {
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            check(8, format!("e{i} t{j} = t{j} e{i}"), prod(&[e(i), t(j)]), prod(&[t(j), e(i)]));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            check(9, format!("t{i} t{j} = t{j} t{i}"), prod(&[t(i), t(j)]), prod(&[t(j), t(i)]));
        }
    }
    for i in 1..n {
        check(10, format!("s{i} t{i} = t{} s{i}", i + 1), prod(&[s(i), t(i)]), prod(&[t(i + 1), s(i)]));
    }
    for i in 1..n {
        check(11, format!("e{i} s{i} = e{i}"), prod(&[e(i), s(i)]), e(i));
        check(11, format!("s{i} e{i} = e{i}"), prod(&[s(i), e(i)]), e(i));
    }
    for i in 1..n.saturating_sub(1) {
        check(
            12,
            format!("s{i} e{} e{i} = s{} e{i}", i + 1, i + 1),
            prod(&[s(i), e(i + 1), e(i)]),
            prod(&[s(i + 1), e(i)]),
        );
        check(
            13,
            format!("e{} e{i} s{} = e{} s{i}", i + 1, i + 1, i + 1),
            prod(&[e(i + 1), e(i), s(i + 1)]),
            prod(&[e(i + 1), s(i)]),
        );
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) == 1 {
                check(14, format!("e{i} e{j} e{i} = e{i}"), prod(&[e(i), e(j), e(i)]), e(i));
            }
        }
    }
    for i in 1..n {
        check(15, format!("e{i} t{i} t{} = e{i}", i + 1), prod(&[e(i), t(i), t(i + 1)]), e(i));
        check(15, format!("t{i} t{} e{i} = e{i}", i + 1), prod(&[t(i), t(i + 1), e(i)]), e(i));
    }
    for i in 1..n {
        for a in 1..m {
            let ta = alg.pow(&t(i), a).expect("same algebra");
            check(
                16,
                format!("e{i} t{i}^{a} e{i} = delta{a} e{i}"),
                prod(&[e(i), ta, e(i)]),
                e(i).scale(alg.param(a as i64)),
            );
        }
    }
    for j in 1..=n {
        check(17, format!("t{j}^{m} = 1"), alg.pow(&t(j), m).expect("same algebra"), one.clone());
    }
    Ok(RelationReport { m, n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_relations_small() {
        for (m, n) in [(2, 2), (3, 3), (4, 3), (2, 4)] {
            let r = verify_relations(m, n).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
            let c = r.counts();
            for k in [1, 5, 9, 10, 11, 15, 16, 17] {
                assert!(c[k] > 0, "relation {k} unchecked at ({m}, {n})");
            }
            if n >= 3 {
                assert!([3, 4, 8, 12, 13, 14].iter().all(|&k| c[k] > 0));
            }
        }
    }

    #[test]
    fn small_n_rejected() {
        assert!(verify_relations(2, 1).is_err());
    }
}
