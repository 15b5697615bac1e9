//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Expected values are recomputed here from
//! first principles wherever that is cheap.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cbrauer_core::criterion::{z_tilde, CriterionVariant, SetVariant};
use cbrauer_core::diagram::{
    enumerate_basis, loop_class, verify_relations, BrauerAlgebra, DottedDiagram, DEFAULT_BASIS_CAP,
};
use cbrauer_core::gram::{
    cell_gram_symbolic, equivariance_check, gram_big, random_symmetric_delta, single_box_gram, DEFAULT_GRAM_CAP,
};
use cbrauer_core::linalg::Matrix;
use cbrauer_core::oracle::{
    concordance_sweep, radical_dimension, ConcordanceReport, GridSpec, PointKind, StructureTable,
    CONCORDANCE_SCHEMA_VERSION, DEFAULT_TABLE_CAP,
};
use cbrauer_core::partition::{t_set, Multipartition};
use cbrauer_core::scalar::{DeltaPolynomial, Field, Ring, Scalar};
use cbrauer_core::wreath::{enumerate_group, verify_prop_eta, DEFAULT_GROUP_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid() -> Vec<(u32, usize)> {
    let mut g: Vec<(u32, usize)> = [2, 3, 4].iter().flat_map(|&m| [(m, 2), (m, 3)]).collect();
    g.push((2, 4));
    g
}

fn relation_suite() -> Check {
    let start = Instant::now();
    let mut checks = 0;
    for (m, n) in grid() {
        let report = verify_relations(m, n).map_err(|e| e.to_string())?;
        checks += report.checks.len();
        let first = report.failures().next().map(|f| format!("({m},{n}) fails: {f:?}"));
        if let Some(msg) = first {
            return Err(msg);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} instances over 7 pairs in {:.1}s", elapsed.as_secs_f64()))
}

fn dimension_counts() -> Check {
    for (m, n) in grid() {
        // m^n (2n-1)!!
        let expected = (m as u128).pow(n as u32) * (1..=n as u128).map(|k| 2 * k - 1).product::<u128>();
        let basis = enumerate_basis(m, n, DEFAULT_BASIS_CAP).map_err(|e| e.to_string())?;
        let distinct: HashSet<&DottedDiagram> = basis.iter().collect();
        ensure(basis.len() as u128 == expected && distinct.len() == basis.len(), || {
            format!("B({m},{n}): {} diagrams ({} distinct), expected {expected}", basis.len(), distinct.len())
        })?;
    }
    for m in 1..=4u32 {
        for n in 1..=4usize {
            let expected = (m as u128).pow(n as u32) * (1..=n as u128).product::<u128>();
            let group = enumerate_group(m, n, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
            let distinct: HashSet<_> = group.iter().collect();
            ensure(group.len() as u128 == expected && distinct.len() == group.len(), || {
                format!("W({m},{n}): {} elements, expected {expected}", group.len())
            })?;
        }
    }
    Ok("7 basis sizes and 16 group orders match".into())
}

fn associativity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, n, samples) in [(2u32, 3usize, 1000), (3, 3, 200)] {
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let alg = BrauerAlgebra::symbolic(&field, m, n).map_err(|e| e.to_string())?;
        let basis = enumerate_basis(m, n, DEFAULT_BASIS_CAP).map_err(|e| e.to_string())?;
        let mut pick = || alg.basis(basis[rng.gen_range(0..basis.len())].clone());
        for _ in 0..samples {
            let (a, b, c) = (pick(), pick(), pick());
            let left = alg.mul(&alg.mul(&a, &b).map_err(|e| e.to_string())?, &c).map_err(|e| e.to_string())?;
            let right = alg.mul(&a, &alg.mul(&b, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(left == right, || format!("({m},{n}): (ab)c != a(bc)"))?;
        }
    }
    for (m, n) in [(2u32, 2usize), (3, 2)] {
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let alg = BrauerAlgebra::symbolic(&field, m, n).map_err(|e| e.to_string())?;
        let basis = enumerate_basis(m, n, DEFAULT_BASIS_CAP).map_err(|e| e.to_string())?;
        let members: HashSet<&DottedDiagram> = basis.iter().collect();
        for x in &basis {
            for y in &basis {
                let (d, c) = alg.mul_basis(x, y).map_err(|e| e.to_string())?;
                let monomial = c.num_terms() == 1 && c.terms().all(|(_, k)| k.is_one());
                ensure(members.contains(&d) && monomial, || format!("({m},{n}): {x} * {y} = ({c}) {d}"))?;
            }
        }
    }
    Ok("1200 seeded triples associate; closure exhaustive at (2,2),(3,2)".into())
}

fn involutions() -> Check {
    let (m, n) = (3u32, 3usize);
    let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
    let alg = BrauerAlgebra::symbolic(&field, m, n).map_err(|e| e.to_string())?;
    let basis = enumerate_basis(m, n, DEFAULT_BASIS_CAP).map_err(|e| e.to_string())?;
    let group = enumerate_group(m, n, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
    let mut generators = Vec::new();
    for i in 1..n {
        generators.push(alg.s(i).map_err(|e| e.to_string())?);
        generators.push(alg.e(i).map_err(|e| e.to_string())?);
    }
    for j in 1..=n {
        generators.push(alg.t(j).map_err(|e| e.to_string())?);
    }
    for g in &generators {
        ensure(g.star() == *g, || "a generator is not fixed by star".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let x = alg.basis(basis[rng.gen_range(0..basis.len())].clone());
        let y = alg.basis(basis[rng.gen_range(0..basis.len())].clone());
        let xy = alg.mul(&x, &y).map_err(|e| e.to_string())?;
        let anti = alg.mul(&y.star(), &x.star()).map_err(|e| e.to_string())?;
        ensure(x.star().star() == x && xy.star() == anti, || "star is not an anti-involution".into())?;
    }
    for _ in 0..500 {
        let w = &group[rng.gen_range(0..group.len())];
        let x = &basis[rng.gen_range(0..basis.len())];
        let wd = DottedDiagram::from_wreath(w);
        let (wx, loops) = wd.compose(x).map_err(|e| e.to_string())?;
        let (rhs, more) = x.iota().compose(&DottedDiagram::from_wreath(&w.inverse())).map_err(|e| e.to_string())?;
        ensure(loops.is_empty() && more.is_empty() && wx.iota() == rhs, || {
            format!("iota(w x) != iota(x) w^-1 for x = {x}")
        })?;
    }
    Ok(format!("{} generators fixed; 500 star and 500 iota samples at (3,3)", generators.len()))
}

fn eta_splitting() -> Check {
    let mut ranks = Vec::new();
    for m in 2..=5 {
        let report = verify_prop_eta(m).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("m = {m}: rank {}, failures {:?}", report.rank, report.failures))?;
        ranks.push(report.rank);
    }
    Ok(format!("ranks {ranks:?} for m = 2..5"))
}

/// Diagonal exactly delta_0; off-diagonal zero, one, or a single delta_c.
fn lemma_shape(g: &Matrix<DeltaPolynomial>, m: usize) -> bool {
    let field = g[(0, 0)].field().clone();
    let vars: Vec<DeltaPolynomial> = (0..m).map(|c| DeltaPolynomial::var(&field, m, c)).collect();
    let zero = DeltaPolynomial::zero(&field, m);
    let one = DeltaPolynomial::constant(field.one(), m);
    (0..g.rows()).all(|i| {
        (0..g.cols()).all(|j| {
            let e = &g[(i, j)];
            if i == j {
                *e == vars[0]
            } else {
                *e == zero || *e == one || vars[1..].contains(e)
            }
        })
    })
}

fn gram_shape_and_equivariance() -> Check {
    let mut sizes = Vec::new();
    for (m, n) in [(2u32, 2usize), (3, 2), (2, 3), (3, 3)] {
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let alg = BrauerAlgebra::symbolic(&field, m, n).map_err(|e| e.to_string())?;
        let g = gram_big(&alg, DEFAULT_GRAM_CAP).map_err(|e| e.to_string())?;
        ensure(lemma_shape(&g.matrix, m as usize), || format!("({m},{n}): entry shape violated"))?;
        for seed in 0..3 {
            let delta = random_symmetric_delta(&field, m, 100 + seed);
            let numeric = BrauerAlgebra::numeric(m, n, delta).map_err(|e| e.to_string())?;
            let report = equivariance_check(&numeric, DEFAULT_GRAM_CAP).map_err(|e| e.to_string())?;
            ensure(report.passed(), || {
                format!("({m},{n}) seed {seed}: {:?}", report.checks.iter().find(|c| !c.commutes))
            })?;
        }
        sizes.push(g.size());
    }
    Ok(format!("shape exhaustive on Gram matrices of sizes {sizes:?}; equivariant at 3 points each"))
}

/// Partitions of `a` by a direct recursion, largest part first.
fn partitions_of(a: u32, max: u32) -> Vec<Vec<u32>> {
    if a == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=a.min(max)).rev() {
        for mut rest in partitions_of(a - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn t_sets() -> Check {
    for a in 0..=12u32 {
        let mut brute = BTreeSet::new();
        for p in partitions_of(a, a) {
            // a box can go at the end of row r when r is the first row or the row above is longer
            for r in 0..=p.len() {
                let len = p.get(r).copied().unwrap_or(0);
                if r == 0 || p[r - 1] > len {
                    brute.insert(len as i64 - r as i64);
                }
            }
        }
        let ai = a as i64;
        let closed: BTreeSet<i64> = match a {
            0 => [0].into(),
            1 | 2 => (-ai..=ai).filter(|&x| x != 0).collect(),
            _ => (-ai..=ai).collect(),
        };
        let lib = t_set(a as usize, 12).map_err(|e| e.to_string())?;
        ensure(lib.brute_force == brute && lib.closed_form == closed && lib.equal && brute == closed, || {
            format!("a = {a}: brute {brute:?}, closed {closed:?}, library {:?}", lib.brute_force)
        })?;
    }
    Ok("exact equality for a = 0..12".into())
}

fn printed_set(m: usize, n: usize) -> BTreeSet<i64> {
    let n = n as i64;
    let mut s: BTreeSet<i64> = (3 - n..=n - 3).collect();
    s.extend((3..=n).map(|k| 2 * k - 3));
    if m >= 3 {
        s.extend([2 - n, n - 2]);
    }
    s
}

fn set_equality() -> Check {
    for m in 1..=5 {
        for n in 4..=8 {
            let printed = z_tilde(m, n, SetVariant::Printed).map_err(|e| e.to_string())?;
            let comb = z_tilde(m, n, SetVariant::Combinatorial).map_err(|e| e.to_string())?;
            ensure(printed == printed_set(m, n) && printed == comb, || {
                format!("(m,n) = ({m},{n}): printed {printed:?}, combinatorial {comb:?}")
            })?;
        }
    }
    let mut notes = Vec::new();
    for m in 1..=5 {
        for n in [2, 3] {
            let printed = z_tilde(m, n, SetVariant::Printed).map_err(|e| e.to_string())?;
            let comb = z_tilde(m, n, SetVariant::Combinatorial).map_err(|e| e.to_string())?;
            let diff: BTreeSet<i64> = printed.symmetric_difference(&comb).copied().collect();
            notes.push(format!("({m},{n}):{diff:?}"));
        }
    }
    Ok(format!("equal for 4<=n<=8, m<=5; small-n symmetric differences {}", notes.join(" ")))
}

fn single_box() -> Check {
    let mut identically = Vec::new();
    for m in 2..=5u32 {
        let report = single_box_gram(m).map_err(|e| e.to_string())?;
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let mm = m as usize;
        let printed =
            Matrix::from_fn(3 * mm, 3 * mm, |i, j| if i / mm == j / mm { field.zero() } else { field.int(m as i64) });
        let zeros = vec![field.zero(); mm];
        let at_zero = report.gram.matrix.try_map(|p| p.eval(&zeros)).map_err(|e| e.to_string())?;
        ensure(report.a == field.int(m as i64).to_string(), || format!("m = {m}: a = {}", report.a))?;
        ensure(at_zero == printed && at_zero.det().is_zero() && report.rank_at_zero <= 3, || {
            format!("m = {m}: block form fails at delta = 0 ({} mismatches overall)", report.mismatches.len())
        })?;
        identically.push(report.printed_holds_identically);
    }
    Ok(format!("block form with a = m and det 0 at delta = 0 for m = 2..5; identically in delta: {identically:?}"))
}

fn two_strand_cell_det() -> Check {
    for m in 1..=4u32 {
        let mm = m as usize;
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let g = cell_gram_symbolic(&field, m, 2, &Multipartition::empty(mm)).map_err(|e| e.to_string())?.with_det();
        let det = g.det.clone().ok_or("no determinant")?;
        let xi = field.primitive_root(m as u64).map_err(|e| e.to_string())?;
        // bar_i = sum_j delta_j xi^{ij}, with delta_a identified with delta_{m-a}
        let var = |a: usize| DeltaPolynomial::var(&field, mm, loop_class(m, a as u32));
        let mut product = DeltaPolynomial::constant(field.one(), mm);
        for i in 0..mm {
            let mut bar = DeltaPolynomial::zero(&field, mm);
            for j in 0..mm {
                bar = bar.plus(&var(j).times(&DeltaPolynomial::constant(xi.pow((i * j) as u64), mm)));
            }
            product = product.times(&bar);
        }
        ensure(det == product || det == product.negated(), || format!("m = {m}: det {det} vs {product}"))?;
    }
    Ok("det = +-prod bar_delta_i for m = 1..4".into())
}

fn rational_delta(field: &Field, values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| field.int(v)).collect()
}

fn oracle_sanity() -> Check {
    let mut notes = Vec::new();
    for m in 1..=4u32 {
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let table = StructureTable::group_algebra(m, 2, DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
        let r = radical_dimension(&table, &rational_delta(&field, &vec![1; m as usize])).map_err(|e| e.to_string())?;
        ensure(r == 0, || format!("QW({m},2) has radical dimension {r}"))?;
    }
    for (m, n, limit) in [(2u32, 2usize, 60u64), (3, 2, 60), (2, 3, 60), (3, 3, 600)] {
        let start = Instant::now();
        let field = Field::cyclotomic(m as u64).map_err(|e| e.to_string())?;
        let table = StructureTable::build(m, n, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
        let r = radical_dimension(&table, &vec![field.zero(); m as usize]).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(r > 0 && elapsed < Duration::from_secs(limit), || {
            format!("({m},{n}) at delta = 0: radical {r} in {elapsed:?}")
        })?;
        notes.push(format!("({m},{n}):{r} in {:.1}s", elapsed.as_secs_f64()));
    }
    Ok(format!("group algebras W(m,2), m<=4, radical 0; at delta = 0 radical {}", notes.join(", ")))
}

fn cell_consistency(report: &ConcordanceReport) -> Check {
    let mut checked = 0;
    for (i, p) in report.points.iter().enumerate() {
        if p.n > 3 {
            continue;
        }
        let oracle = p.oracle.as_ref().ok_or_else(|| format!("point {i} has no oracle verdict"))?;
        ensure(oracle.cells_agree == Some(true), || {
            format!("point {i} ({},{}) delta {:?}: cells disagree", p.m, p.n, p.delta)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} points, all agree"))
}

fn concordance(report: &ConcordanceReport, elapsed: Duration) -> Check {
    ensure(elapsed < Duration::from_secs(1800), || format!("sweep took {elapsed:?}"))?;
    ensure(report.schema_version == CONCORDANCE_SCHEMA_VERSION, || "schema version".into())?;
    let json = serde_json::to_value(report).map_err(|e| e.to_string())?;
    ensure(json["schema_version"] == CONCORDANCE_SCHEMA_VERSION, || "schema version missing from JSON".into())?;
    for &(m, n) in &report.grid.pairs {
        let of = |k: &dyn Fn(&PointKind) -> bool| {
            report.points.iter().filter(|p| p.m == m && p.n == n && k(&p.kind)).count()
        };
        ensure(of(&|k| *k == PointKind::Zero) == 1, || format!("({m},{n}) zero point"))?;
        ensure(of(&|k| *k == PointKind::Generic) == 10, || format!("({m},{n}) generic points"))?;
        ensure(of(&|k| matches!(k, PointKind::Hyperplane { .. })) > 0, || format!("({m},{n}) hyperplane points"))?;
    }
    let generic: Vec<_> = report.points.iter().filter(|p| p.kind == PointKind::Generic).collect();
    for p in &generic {
        for v in CriterionVariant::ALL {
            let agrees = p.variant(v).and_then(|o| o.agrees_with_oracle);
            ensure(agrees == Some(true), || format!("generic ({},{}) {:?}: {v} disagrees", p.m, p.n, p.delta))?;
        }
    }
    let c1 = report.summary.fixtures.iter().find(|f| f.name == "C1").ok_or("C1 missing")?;
    ensure(c1.oracle_semisimple == Some(false), || "C1 oracle is not NotSemisimple".into())?;
    let printed = c1.printed_semisimple.ok_or("C1 printed verdict missing")?;
    ensure(c1.printed_disagrees == printed, || "C1 disagreement flag inconsistent".into())?;
    Ok(format!(
        "{} points in {:.1}s; {} generic points agree; C1 printed verdict {} ({}); {} points with some disagreement",
        report.points.len(),
        elapsed.as_secs_f64(),
        generic.len(),
        if printed { "semisimple" } else { "not" },
        if c1.printed_disagrees { "DISAGREES with oracle" } else { "agrees" },
        report.summary.disagreements.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = concordance_sweep(&GridSpec::standard(20240229), 4).map(|r| (r, start.elapsed()));
    let from_sweep = |f: &dyn Fn(&ConcordanceReport, Duration) -> Check| match &sweep {
        Ok((r, t)) => f(r, *t),
        Err(e) => Err(e.to_string()),
    };
    let results: Vec<(&str, Check)> = vec![
        ("relation suite", relation_suite()),
        ("dimension counts", dimension_counts()),
        ("associativity and closure", associativity()),
        ("star and iota identities", involutions()),
        ("two-box induced module", eta_splitting()),
        ("Gram shape and equivariance", gram_shape_and_equivariance()),
        ("single-box content sets", t_sets()),
        ("exceptional set equality", set_equality()),
        ("single-box cell Gram matrix", single_box()),
        ("two-strand cell determinant", two_strand_cell_det()),
        ("oracle sanity", oracle_sanity()),
        ("oracle vs cell determinants", from_sweep(&|r, _| cell_consistency(r))),
        ("concordance report", from_sweep(&concordance)),
    ];
    let mut failed = 0;
    for (i, (name, result)) in results.iter().enumerate() {
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
