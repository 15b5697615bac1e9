//! Partitions, m-multipartitions, box contents, the set of two-box shapes
//! appearing in the induced trivial module, admissible two-box extensions and
//! the one-box content sets.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row `i` length (1-based rows; 0 beyond the last row).
    pub fn row(&self, i: usize) -> u32 {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols).map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32).collect();
        Partition { parts }
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.parts.len() <= self.parts.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Boxes `(row, column)` of `self / inner`, 1-based.
    pub fn skew_cells(&self, inner: &Self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &len) in self.parts.iter().enumerate() {
            for j in inner.row(i + 1) + 1..=len {
                out.push((i + 1, j as usize));
            }
        }
        out
    }

    /// Cells where a box can be added, top to bottom.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.parts.len() + 1 {
            let len = self.row(i);
            if i == 1 || self.row(i - 1) > len {
                out.push((i, len as usize + 1));
            }
        }
        out
    }

    pub fn with_box(&self, row: usize) -> Self {
        let mut parts = self.parts.clone();
        if row > parts.len() {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Content of the box in row `i`, column `j`.
pub fn content(i: usize, j: usize) -> i64 {
    j as i64 - i as i64
}

/// The convention used by [`content`], reported alongside sweep results.
pub const CONTENT_CONVENTION: &str = "c(i,j) = j - i, independent of the component";

/// Partitions of `d` in reverse lexicographic order, `(d)` first.
pub fn partitions(d: usize) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d as u32, d as u32, &mut Vec::new(), &mut out);
    out
}

/// An m-multipartition; component `k` (1-based) is `components[k - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("a multipartition needs at least one component".into()));
        }
        Ok(Multipartition { components })
    }

    pub fn empty(m: usize) -> Self {
        Multipartition { components: vec![Partition::empty(); m] }
    }

    /// Parses JSON (`[[2,1],[],[1]]`) or the bar form `2,1||1`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('[') {
            let comps: Vec<Partition> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::new(comps);
        }
        let comps = text
            .split('|')
            .map(|c| {
                let parts = c
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u32>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                Partition::new(parts)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Partition {
        &self.components[k - 1]
    }

    /// Reverses the components and conjugates each one.
    pub fn dual(&self) -> Self {
        Multipartition { components: self.components.iter().rev().map(Partition::conjugate).collect() }
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.m() == other.m() && self.components.iter().zip(&other.components).all(|(a, b)| a.contains(b))
    }

    /// Added boxes as `(component, row, column)`, all 1-based.
    pub fn skew_cells(&self, inner: &Self) -> Result<Vec<(usize, usize, usize)>> {
        if !self.contains(inner) {
            return Err(Error::Mismatch(format!("{inner} is not contained in {self}")));
        }
        let mut out = Vec::new();
        for (k, (a, b)) in self.components.iter().zip(&inner.components).enumerate() {
            out.extend(a.skew_cells(b).into_iter().map(|(i, j)| (k + 1, i, j)));
        }
        Ok(out)
    }

    pub fn with_box(&self, component: usize, row: usize) -> Self {
        let mut out = self.clone();
        out.components[component - 1] = out.components[component - 1].with_box(row);
        out
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.components.iter().map(Partition::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Sum of the contents of the boxes of `lambda / mu`.
pub fn content_sum(lambda: &Multipartition, mu: &Multipartition) -> Result<i64> {
    Ok(lambda.skew_cells(mu)?.into_iter().map(|(_, i, j)| content(i, j)).sum())
}

/// All m-multipartitions of `d`, larger early components first.
pub fn multipartitions(m: usize, d: usize) -> Vec<Multipartition> {
    fn go(m: usize, d: usize, cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        if cur.len() + 1 == m {
            for p in partitions(d) {
                cur.push(p);
                out.push(Multipartition { components: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in (0..=d).rev() {
            for p in partitions(k) {
                cur.push(p);
                go(m, d - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(m, d, &mut Vec::new(), &mut out);
    }
    out
}

/// An element eta_i of the set of two-box shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaVector {
    pub index: usize,
    pub shape: Multipartition,
}

/// The shapes eta_i, i from ceil(m/2) to m, in increasing `i`.
pub fn wp_set(m: usize) -> Vec<EtaVector> {
    let mut out = Vec::new();
    for i in m.div_ceil(2)..=m {
        let mut shape = Multipartition::empty(m);
        if i == m || 2 * i == m {
            shape.components[i - 1] = Partition { parts: vec![2] };
        } else {
            shape.components[m - i - 1] = Partition { parts: vec![1] };
            shape.components[i - 1] = Partition { parts: vec![1] };
        }
        out.push(EtaVector { index: i, shape });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub mu: Multipartition,
    pub lambda: Multipartition,
    /// Which of the four admissibility conditions holds (1..=4).
    pub condition: u8,
    pub content_sum: i64,
}

/// Which admissibility condition `lambda / mu` satisfies, if any.
pub fn admissibility_condition(lambda: &Multipartition, mu: &Multipartition) -> Option<u8> {
    let m = mu.m();
    let cells = lambda.skew_cells(mu).ok()?;
    if cells.len() != 2 {
        return None;
    }
    let (a, b) = (cells[0], cells[1]);
    if a.0 == b.0 {
        if a.2 == b.2 {
            return None;
        }
        if a.0 == m {
            return Some(1);
        }
        if m.is_multiple_of(2) && a.0 == m / 2 {
            return Some(4);
        }
        return None;
    }
    let i = a.0.max(b.0);
    if a.0.min(b.0) != m - i || i >= m {
        return None;
    }
    if m % 2 == 1 && i >= m.div_ceil(2) {
        Some(2)
    } else if m.is_multiple_of(2) && i > m / 2 {
        Some(3)
    } else {
        None
    }
}

/// All mu-admissible multipartitions, in the order of [`multipartitions`].
pub fn admissible_set(mu: &Multipartition) -> Vec<AdmissiblePair> {
    let m = mu.m();
    let mut candidates = BTreeSet::new();
    for k1 in 1..=m {
        for (r1, _) in mu.component(k1).addable_cells() {
            let once = mu.with_box(k1, r1);
            for k2 in 1..=m {
                for (r2, _) in once.component(k2).addable_cells() {
                    candidates.insert(once.with_box(k2, r2));
                }
            }
        }
    }
    let mut out: Vec<AdmissiblePair> = candidates
        .into_iter()
        .filter_map(|lambda| {
            let condition = admissibility_condition(&lambda, mu)?;
            let content_sum = content_sum(&lambda, mu).expect("lambda contains mu");
            Some(AdmissiblePair { mu: mu.clone(), lambda, condition, content_sum })
        })
        .collect();
    out.sort_by_cached_key(|p| enumeration_key(&p.lambda));
    out
}

/// Sort key reproducing the order of [`multipartitions`]: component by
/// component, larger sizes first, then partitions in reverse-lex order.
fn enumeration_key(lambda: &Multipartition) -> Vec<(Reverse<usize>, Reverse<Vec<u32>>)> {
    lambda.components.iter().map(|p| (Reverse(p.size()), Reverse(p.parts.clone()))).collect()
}

/// Contents of single boxes added to partitions of `a`, by brute force,
/// together with the closed form and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TSet {
    pub a: usize,
    pub brute_force: BTreeSet<i64>,
    pub closed_form: BTreeSet<i64>,
    pub equal: bool,
}

pub const DEFAULT_TSET_CAP: usize = 12;

pub fn t_set(a: usize, cap: usize) -> Result<TSet> {
    if a > cap {
        return Err(Error::CapExceeded { what: "t_set size".into(), needed: a as u128, cap: cap as u128 });
    }
    let mut brute_force = BTreeSet::new();
    for mu in partitions(a) {
        for (i, j) in mu.addable_cells() {
            brute_force.insert(content(i, j));
        }
    }
    let a_i = a as i64;
    let closed_form: BTreeSet<i64> = match a {
        0 => [0].into(),
        1 | 2 => (-a_i..=a_i).filter(|&x| x != 0).collect(),
        _ => (-a_i..=a_i).collect(),
    };
    let equal = brute_force == closed_form;
    Ok(TSet { a, brute_force, closed_form, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(text: &str) -> Multipartition {
        Multipartition::parse(text).unwrap()
    }

    #[test]
    fn enumeration_counts_and_order() {
        let two = multipartitions(2, 2);
        let shown: Vec<String> = two.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["((2),())", "((1,1),())", "((1),(1))", "((),(2))", "((),(1,1))"]);
        assert_eq!(multipartitions(1, 4).len(), 5);
        assert_eq!(multipartitions(3, 0).len(), 1);
        // generating function check: sum over compositions of products of p(k)
        assert_eq!(multipartitions(3, 4).len(), 51);
    }

    #[test]
    fn duals() {
        assert_eq!(mp("2|1").dual(), mp("1|1,1"));
        assert_eq!(mp("1,1||").dual(), mp("||2"));
        for m in 1..=4 {
            for d in 0..=6 {
                for l in multipartitions(m, d) {
                    assert_eq!(l.dual().dual(), l);
                }
            }
        }
    }

    #[test]
    fn contents() {
        assert_eq!(content_sum(&mp("2|"), &mp("|")).unwrap(), 1);
        assert_eq!(content_sum(&mp("1|1|"), &mp("||")).unwrap(), 0);
        assert_eq!(content_sum(&mp("2,1|"), &mp("2,1|")).unwrap(), 0);
        assert!(content_sum(&mp("|1"), &mp("1|")).is_err());
    }

    #[test]
    fn wp_sets() {
        let show = |m| wp_set(m).iter().map(|e| (e.index, e.shape.to_string())).collect::<Vec<_>>();
        assert_eq!(show(2), [(1, "((2),())".into()), (2, "((),(2))".into())]);
        assert_eq!(show(3), [(2, "((1),(1),())".into()), (3, "((),(),(2))".into())]);
        assert_eq!(
            show(4),
            [(2, "((),(2),(),())".into()), (3, "((1),(),(1),())".into()), (4, "((),(),(),(2))".into())]
        );
        for m in 1..=9 {
            assert_eq!(wp_set(m).len(), if m % 2 == 0 { m / 2 + 1 } else { m.div_ceil(2) });
        }
    }

    #[test]
    fn admissible_examples() {
        let show =
            |mu: &str| admissible_set(&mp(mu)).iter().map(|p| (p.lambda.to_string(), p.condition)).collect::<Vec<_>>();
        assert_eq!(show("|"), [("((2),())".into(), 4), ("((),(2))".into(), 1)]);
        assert_eq!(show("||"), [("((1),(1),())".into(), 2), ("((),(),(2))".into(), 1)]);
        assert_eq!(admissibility_condition(&mp("1|1"), &mp("|")), None);
    }

    #[test]
    fn admissible_invariants() {
        for m in 1..=4 {
            for d in 0..=3 {
                for mu in multipartitions(m, d) {
                    let set = admissible_set(&mu);
                    assert!(!set.is_empty());
                    for p in set {
                        let cells = p.lambda.skew_cells(&mu).unwrap();
                        assert_eq!(cells.len(), 2);
                        match p.condition {
                            1 => assert!(cells.iter().all(|c| c.0 == m)),
                            4 => assert!(cells.iter().all(|c| 2 * c.0 == m)),
                            _ => assert_eq!(cells[0].0 + cells[1].0, m),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn t_sets_match_closed_form() {
        assert_eq!(t_set(0, 12).unwrap().brute_force, [0].into());
        assert_eq!(t_set(2, 12).unwrap().brute_force, [-2, -1, 1, 2].into());
        for a in 0..=12 {
            assert!(t_set(a, 12).unwrap().equal, "a = {a}");
        }
        assert!(t_set(13, 12).is_err());
    }

    #[test]
    fn enumeration_key_matches_order() {
        for (m, d) in [(1, 6), (2, 4), (3, 4), (4, 3)] {
            let all = multipartitions(m, d);
            let mut sorted = all.clone();
            sorted.sort_by_key(enumeration_key);
            assert_eq!(all, sorted);
        }
    }
}
