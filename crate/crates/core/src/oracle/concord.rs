use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{semisimple_verdict, StructureTable, DEFAULT_TABLE_CAP};
use crate::criterion::{bar_delta, decide, delta_from_bars, g_mu, z_set, CriterionVariant, SetVariant};
use crate::error::{Error, Result};
use crate::partition::{multipartitions, CONTENT_CONVENTION};
use crate::scalar::{Field, Ring, Scalar};

pub const CONCORDANCE_SCHEMA_VERSION: u32 = 1;

fn default_generic() -> usize {
    10
}

fn default_numerator() -> i64 {
    5
}

fn default_true() -> bool {
    true
}

fn default_table_cap() -> u128 {
    DEFAULT_TABLE_CAP
}

/// A named parameter point added to the grid verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixturePoint {
    pub name: String,
    pub m: u32,
    pub n: usize,
    /// Loop parameters as text in Q(zeta_m) (comma-separated coordinates or a rational).
    pub delta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub pairs: Vec<(u32, usize)>,
    #[serde(default = "default_generic")]
    pub generic_points: usize,
    #[serde(default = "default_numerator")]
    pub max_numerator: i64,
    #[serde(default = "default_true")]
    pub include_zero: bool,
    #[serde(default = "default_true")]
    pub include_hyperplanes: bool,
    #[serde(default)]
    pub fixtures: Vec<FixturePoint>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_table_cap")]
    pub table_cap: u128,
}

impl GridSpec {
    /// The grid {(2,2), (3,2), (2,3)} with all three strata and the
    /// fixture C1 = ((2,2), delta = (1,-1)).
    pub fn standard(seed: u64) -> Self {
        GridSpec {
            pairs: vec![(2, 2), (3, 2), (2, 3)],
            generic_points: default_generic(),
            max_numerator: default_numerator(),
            include_zero: true,
            include_hyperplanes: true,
            fixtures: vec![FixturePoint { name: "C1".into(), m: 2, n: 2, delta: vec!["1".into(), "-1".into()] }],
            seed,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

/// (variant, i, k) of a hyperplane a point was placed on.
pub type HyperplaneHit = (String, usize, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "stratum", rename_all = "kebab-case")]
pub enum PointKind {
    Zero,
    Generic,
    /// On `eps_{i,0} m - bar_delta_i = k` for the listed variants.
    Hyperplane {
        hits: Vec<HyperplaneHit>,
    },
    Fixture {
        name: String,
    },
}

impl PointKind {
    pub fn label(&self) -> String {
        match self {
            PointKind::Zero => "zero".into(),
            PointKind::Generic => "generic".into(),
            PointKind::Hyperplane { hits } => {
                let parts: Vec<String> = hits.iter().map(|(v, i, k)| format!("{v}:i={i}:k={k}")).collect();
                format!("hyperplane[{}]", parts.join(" "))
            }
            PointKind::Fixture { name } => format!("fixture:{name}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VariantOutcome {
    pub variant: CriterionVariant,
    pub semisimple: Option<bool>,
    pub reasons: Vec<crate::criterion::Reason>,
    pub error: Option<String>,
    pub agrees_with_oracle: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcordancePoint {
    pub m: u32,
    pub n: usize,
    pub kind: PointKind,
    pub delta: Vec<String>,
    pub bar_delta: Vec<String>,
    pub variants: Vec<VariantOutcome>,
    /// g_mu for every mu of size n - 2.
    pub gmu: Vec<(String, String)>,
    pub oracle: Option<super::OracleVerdict>,
    pub oracle_error: Option<String>,
}

impl ConcordancePoint {
    pub fn oracle_semisimple(&self) -> Option<bool> {
        self.oracle.as_ref().map(|o| o.is_semisimple())
    }

    pub fn variant(&self, v: CriterionVariant) -> Option<&VariantOutcome> {
        self.variants.iter().find(|o| o.variant == v)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VariantSummary {
    pub agree: usize,
    pub disagree: usize,
    pub undecided: usize,
    pub generic_disagree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcordanceSummary {
    pub points: usize,
    pub oracle_missing: usize,
    pub by_variant: BTreeMap<String, VariantSummary>,
    /// Indices of points where some variant disagrees with the oracle.
    pub disagreements: Vec<usize>,
    /// Points where the oracle and the one-arc cell determinants disagree.
    pub cell_inconsistencies: Vec<usize>,
    pub generic_all_agree: bool,
    pub fixtures: Vec<FixtureSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureSummary {
    pub name: String,
    pub index: usize,
    pub oracle_semisimple: Option<bool>,
    pub printed_semisimple: Option<bool>,
    pub printed_disagrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcordanceReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub seed: u64,
    pub table_cap: u128,
    pub content_convention: String,
    pub parameter_note: String,
    pub grid: GridSpec,
    pub points: Vec<ConcordancePoint>,
    pub summary: ConcordanceSummary,
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Symmetric parameter vectors (delta_a = delta_{m-a}) lying on the
/// hyperplanes predicted by the printed and combinatorial sets. The other
/// transform coordinates are small seeded integers.
pub fn hyperplane_points(
    m: u32,
    n: usize,
    max_numerator: i64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(Vec<Scalar>, PointKind)>> {
    let field = Field::cyclotomic(m as u64)?;
    let mm = m as usize;
    let mut found: Vec<(Vec<Scalar>, Vec<HyperplaneHit>)> = Vec::new();
    for (variant, set) in [
        (CriterionVariant::PrintedZ, SetVariant::Printed),
        (CriterionVariant::CombinatorialRho, SetVariant::Combinatorial),
    ] {
        for k in z_set(mm, n, set)? {
            for i in 0..mm {
                let target = if i == 0 { m as i64 - k } else { -k };
                let mut bars = vec![field.zero(); mm];
                for j in 0..=mm / 2 {
                    let v = if j == i || j == (mm - i) % mm { target } else { rng.gen_range(1..=max_numerator.max(1)) };
                    bars[j] = field.int(v);
                    bars[(mm - j) % mm] = field.int(v);
                }
                let delta = delta_from_bars(&field, &bars)?;
                if delta.iter().all(Scalar::is_zero) {
                    continue;
                }
                let tag = (variant.name().to_string(), i, k);
                match found.iter_mut().find(|(d, _)| *d == delta) {
                    Some((_, tags)) => tags.push(tag),
                    None => found.push((delta, vec![tag])),
                }
            }
        }
    }
    Ok(found.into_iter().map(|(d, hits)| (d, PointKind::Hyperplane { hits })).collect())
}

/// Random symmetric rational parameters on which no variant predicts failure.
fn generic_point(m: u32, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Scalar>> {
    let field = Field::cyclotomic(m as u64)?;
    let mm = m as usize;
    for _ in 0..1000 {
        let mut delta = vec![field.zero(); mm];
        for a in 0..=mm / 2 {
            let v = field.rational(&rational(rng.gen_range(-1000..=1000), rng.gen_range(1..=1000)))?;
            delta[a] = v.clone();
            delta[(mm - a) % mm] = v;
        }
        let flagged = CriterionVariant::ALL
            .iter()
            .filter(|v| m > 1 || **v != CriterionVariant::GmuRoute)
            .any(|v| decide(n, &delta, *v).map(|d| !d.is_semisimple()).unwrap_or(true));
        if !flagged {
            return Ok(delta);
        }
    }
    Err(Error::Internal("could not sample a generic parameter point".into()))
}

fn evaluate_point(table: &StructureTable, delta: Vec<Scalar>, kind: PointKind) -> ConcordancePoint {
    let (m, n) = (table.m(), table.n());
    let (oracle, oracle_error) = match semisimple_verdict(table, &delta) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let oracle_ss = oracle.as_ref().map(|o| o.is_semisimple());
    let variants = CriterionVariant::ALL
        .iter()
        .map(|&variant| match decide(n, &delta, variant) {
            Ok(v) => VariantOutcome {
                variant,
                semisimple: Some(v.is_semisimple()),
                agrees_with_oracle: oracle_ss.map(|o| o == v.is_semisimple()),
                reasons: v.reasons,
                error: None,
            },
            Err(e) => VariantOutcome {
                variant,
                semisimple: None,
                reasons: Vec::new(),
                error: Some(e.to_string()),
                agrees_with_oracle: None,
            },
        })
        .collect();
    let bars = bar_delta(&delta).ok();
    let gmu = match &bars {
        Some(b) if n >= 2 => multipartitions(m as usize, n - 2)
            .into_iter()
            .filter_map(|mu| g_mu(&mu, b).ok().map(|g| (mu.to_string(), g.to_string())))
            .collect(),
        _ => Vec::new(),
    };
    ConcordancePoint {
        m,
        n,
        kind,
        delta: delta.iter().map(ToString::to_string).collect(),
        bar_delta: bars.map(|b| b.iter().map(ToString::to_string).collect()).unwrap_or_default(),
        variants,
        gmu,
        oracle,
        oracle_error,
    }
}

/// Runs every criterion variant and the oracle over the grid, using `jobs`
/// worker threads. Output is independent of `jobs`.
pub fn concordance_sweep(grid: &GridSpec, jobs: usize) -> Result<ConcordanceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let mut tables: HashMap<(u32, usize), StructureTable> = HashMap::new();
    let mut tasks: Vec<((u32, usize), Vec<Scalar>, PointKind)> = Vec::new();
    let mut pairs = grid.pairs.clone();
    for f in &grid.fixtures {
        if !pairs.contains(&(f.m, f.n)) {
            pairs.push((f.m, f.n));
        }
    }
    for &(m, n) in &pairs {
        if n < 2 {
            return Err(Error::OutOfRange(format!("concordance points need n >= 2, got ({m}, {n})")));
        }
        tables.insert((m, n), StructureTable::build(m, n, grid.table_cap)?);
    }
    for &(m, n) in &grid.pairs {
        let field = Field::cyclotomic(m as u64)?;
        if grid.include_zero {
            tasks.push(((m, n), vec![field.zero(); m as usize], PointKind::Zero));
        }
        for _ in 0..grid.generic_points {
            tasks.push(((m, n), generic_point(m, n, &mut rng)?, PointKind::Generic));
        }
        if grid.include_hyperplanes {
            for (delta, kind) in hyperplane_points(m, n, grid.max_numerator, &mut rng)? {
                tasks.push(((m, n), delta, kind));
            }
        }
    }
    for f in &grid.fixtures {
        let field = Field::cyclotomic(f.m as u64)?;
        let delta = f.delta.iter().map(|t| field.parse(t)).collect::<Result<Vec<_>>>()?;
        if delta.len() != f.m as usize {
            return Err(Error::Mismatch(format!("fixture {} has {} parameters for m = {}", f.name, delta.len(), f.m)));
        }
        tasks.push(((f.m, f.n), delta, PointKind::Fixture { name: f.name.clone() }));
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| Error::Internal(e.to_string()))?;
    let points: Vec<ConcordancePoint> = pool.install(|| {
        tasks.into_par_iter().map(|(key, delta, kind)| evaluate_point(&tables[&key], delta, kind)).collect()
    });
    let summary = summarize(&points);
    Ok(ConcordanceReport {
        schema_version: CONCORDANCE_SCHEMA_VERSION,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: grid.seed,
        table_cap: grid.table_cap,
        content_convention: CONTENT_CONVENTION.to_string(),
        parameter_note: "loop parameters satisfy delta_a = delta_{m-a}; loops are weighted by delta_{min(a, m-a)}"
            .into(),
        grid: grid.clone(),
        points,
        summary,
    })
}

fn summarize(points: &[ConcordancePoint]) -> ConcordanceSummary {
    let mut by_variant: BTreeMap<String, VariantSummary> = BTreeMap::new();
    let mut disagreements = Vec::new();
    let mut cell_inconsistencies = Vec::new();
    let mut fixtures = Vec::new();
    let mut oracle_missing = 0;
    let mut generic_all_agree = true;
    for (idx, p) in points.iter().enumerate() {
        if p.oracle.is_none() {
            oracle_missing += 1;
        }
        if p.oracle.as_ref().and_then(|o| o.cells_agree) == Some(false) {
            cell_inconsistencies.push(idx);
        }
        let mut any_disagree = false;
        for o in &p.variants {
            let s = by_variant.entry(o.variant.name().to_string()).or_default();
            match o.agrees_with_oracle {
                Some(true) => s.agree += 1,
                Some(false) => {
                    s.disagree += 1;
                    any_disagree = true;
                    if p.kind == PointKind::Generic {
                        s.generic_disagree += 1;
                    }
                }
                None => s.undecided += 1,
            }
            if p.kind == PointKind::Generic && o.agrees_with_oracle != Some(true) {
                generic_all_agree = false;
            }
        }
        if any_disagree {
            disagreements.push(idx);
        }
        if let PointKind::Fixture { name } = &p.kind {
            let printed = p.variant(CriterionVariant::PrintedZ).and_then(|o| o.semisimple);
            let oracle = p.oracle_semisimple();
            fixtures.push(FixtureSummary {
                name: name.clone(),
                index: idx,
                oracle_semisimple: oracle,
                printed_semisimple: printed,
                printed_disagrees: matches!((printed, oracle), (Some(a), Some(b)) if a != b),
            });
        }
    }
    ConcordanceSummary {
        points: points.len(),
        oracle_missing,
        by_variant,
        disagreements,
        cell_inconsistencies,
        generic_all_agree,
        fixtures,
    }
}

impl ConcordanceReport {
    /// One row per point.
    pub fn to_csv(&self) -> String {
        let names: Vec<&str> = CriterionVariant::ALL.iter().map(|v| v.name()).collect();
        let mut out = format!(
            "index,m,n,stratum,delta,oracle,radical_dimension,cells_agree,{},{}\n",
            names.join(","),
            names.iter().map(|n| format!("agree_{n}")).collect::<Vec<_>>().join(",")
        );
        let show = |b: Option<bool>, yes: &str, no: &str| match b {
            Some(true) => yes.to_string(),
            Some(false) => no.to_string(),
            None => "NA".to_string(),
        };
        for (i, p) in self.points.iter().enumerate() {
            let verdicts: Vec<String> = CriterionVariant::ALL
                .iter()
                .map(|v| show(p.variant(*v).and_then(|o| o.semisimple), "semisimple", "not"))
                .collect();
            let agree: Vec<String> = CriterionVariant::ALL
                .iter()
                .map(|v| show(p.variant(*v).and_then(|o| o.agrees_with_oracle), "yes", "no"))
                .collect();
            out.push_str(&format!(
                "{i},{},{},\"{}\",\"{}\",{},{},{},{},{}\n",
                p.m,
                p.n,
                p.kind.label(),
                p.delta.join(";"),
                show(p.oracle_semisimple(), "semisimple", "not"),
                p.oracle.as_ref().map_or("NA".into(), |o| o.radical_dimension.to_string()),
                show(p.oracle.as_ref().and_then(|o| o.cells_agree), "yes", "no"),
                verdicts.join(","),
                agree.join(","),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_is_deterministic_and_parallel_safe() {
        let grid = GridSpec {
            pairs: vec![(2, 2)],
            generic_points: 3,
            max_numerator: 5,
            include_zero: true,
            include_hyperplanes: true,
            fixtures: vec![FixturePoint { name: "C1".into(), m: 2, n: 2, delta: vec!["1".into(), "-1".into()] }],
            seed: 7,
            table_cap: DEFAULT_TABLE_CAP,
        };
        let a = concordance_sweep(&grid, 1).unwrap();
        let b = concordance_sweep(&grid, 3).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.summary.generic_all_agree);
        assert!(a.summary.cell_inconsistencies.is_empty());
        let c1 = &a.summary.fixtures[0];
        assert_eq!(c1.oracle_semisimple, Some(false));
        assert_eq!(c1.printed_semisimple, Some(true));
        assert!(c1.printed_disagrees);
        assert!(a.to_csv().lines().count() == a.points.len() + 1);
    }

    #[test]
    fn hyperplane_points_lie_on_their_hyperplanes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (m, n) in [(2, 2), (3, 2), (2, 3), (4, 3)] {
            let field = Field::cyclotomic(m as u64).unwrap();
            for (delta, kind) in hyperplane_points(m, n, 5, &mut rng).unwrap() {
                let bars = bar_delta(&delta).unwrap();
                let PointKind::Hyperplane { hits } = kind else { panic!() };
                for (_, i, k) in hits {
                    let eps = if i == 0 { m as i64 } else { 0 };
                    assert_eq!(field.int(eps).minus(&bars[i]), field.int(k));
                }
                for a in 1..m as usize {
                    assert_eq!(delta[a], delta[m as usize - a]);
                }
            }
        }
    }

    #[test]
    fn unknown_grid_keys_rejected() {
        assert!(serde_json::from_str::<GridSpec>(r#"{"pairs":[[2,2]],"bogus":1}"#).is_err());
        let g: GridSpec = serde_json::from_str(r#"{"pairs":[[2,2]]}"#).unwrap();
        assert_eq!(g.generic_points, 10);
    }
}
