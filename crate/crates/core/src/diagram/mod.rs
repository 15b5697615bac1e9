//! Dotted Brauer diagrams and the cyclotomic Brauer algebra B_{m,n}(delta).
//!
//! A diagram is a perfect matching on `2n` points (top row `T1..Tn`, bottom
//! row `B1..Bn`) with a `Z/m` label on every arc. Internally each arc stores
//! its holonomy in both directions: `hol[p]` is the number of dots met when
//! walking from `p` to its mate, so `hol[mate[p]] = -hol[p] (mod m)`.
//!
//! Labels are read in a fixed direction:
//! * vertical arcs from the top endpoint to the bottom endpoint,
//! * top arcs `{Tp, Tq}`, `p < q`, from `Tp` to `Tq`,
//! * bottom arcs `{Bp, Bq}`, `p < q`, from `Bq` to `Bp`.
//!
//! With this reading a horizontal label counts the dots next to the left
//! endpoint, `t_j` is the identity matching with label 1 on strand `j`, and
//! composite strands add their holonomies. That is enough to realise
//! `e_i t_i t_{i+1} = e_i` and `e_i t_i^a e_i = delta_a e_i`.

mod algebra;
mod relations;

pub use algebra::{loop_class, loop_monomial, AlgebraElement, BrauerAlgebra, Monomial};
pub use relations::{verify_relations, RelationCheck, RelationReport};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wreath::WreathElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Row {
    #[serde(rename = "T")]
    Top,
    #[serde(rename = "B")]
    Bot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub row: Row,
    /// 1-based position in the row.
    pub index: usize,
}

impl Point {
    pub fn top(index: usize) -> Self {
        Point { row: Row::Top, index }
    }

    pub fn bot(index: usize) -> Self {
        Point { row: Row::Bot, index }
    }

    fn slot(self, n: usize) -> usize {
        match self.row {
            Row::Top => self.index - 1,
            Row::Bot => n + self.index - 1,
        }
    }

    fn from_slot(slot: usize, n: usize) -> Self {
        if slot < n {
            Point::top(slot + 1)
        } else {
            Point::bot(slot - n + 1)
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.row, self.index).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (row, index) = <(Row, usize)>::deserialize(d)?;
        Ok(Point { row, index })
    }
}

/// An arc with its label in the reading direction described in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arc {
    pub a: Point,
    pub b: Point,
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DottedDiagram {
    m: u32,
    n: usize,
    mate: Vec<usize>,
    hol: Vec<u32>,
}

/// Closed loops produced by a composition, each recorded by its holonomy
/// read downward through its leftmost point on the middle row.
pub type Loops = Vec<u32>;

impl DottedDiagram {
    /// Builds a diagram from arcs whose labels follow the module convention.
    pub fn from_arcs(m: u32, n: usize, arcs: &[(Point, Point, u32)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Mismatch("m must be positive".into()));
        }
        if arcs.len() != n {
            return Err(Error::Mismatch(format!("{} arcs for n = {n}", arcs.len())));
        }
        let mut mate = vec![usize::MAX; 2 * n];
        let mut hol = vec![0; 2 * n];
        for &(a, b, label) in arcs {
            for p in [a, b] {
                if p.index == 0 || p.index > n {
                    return Err(Error::OutOfRange(format!("point {p:?} with n = {n}")));
                }
            }
            let (sa, sb) = (a.slot(n), b.slot(n));
            if sa == sb || mate[sa] != usize::MAX || mate[sb] != usize::MAX {
                return Err(Error::Mismatch("arcs do not form a perfect matching".into()));
            }
            mate[sa] = sb;
            mate[sb] = sa;
            let start = reading_start(sa, sb, n);
            let other = if start == sa { sb } else { sa };
            hol[start] = label % m;
            hol[other] = (m - label % m) % m;
        }
        Ok(DottedDiagram { m, n, mate, hol })
    }

    pub fn identity(m: u32, n: usize) -> Self {
        Self::from_wreath(&WreathElement::identity(m, n))
    }

    pub fn from_wreath(w: &WreathElement) -> Self {
        let n = w.n();
        let arcs: Vec<_> = (0..n).map(|i| (Point::top(i + 1), Point::bot(w.perm()[i] + 1), w.colors()[i])).collect();
        Self::from_arcs(w.m(), n, &arcs).expect("group elements are valid diagrams")
    }

    pub fn s(m: u32, n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_wreath(&WreathElement::s(m, n, i)?))
    }

    pub fn t(m: u32, n: usize, j: usize) -> Result<Self> {
        Ok(Self::from_wreath(&WreathElement::t(m, n, j)?))
    }

    pub fn e(m: u32, n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::OutOfRange(format!("e_{i} in B_{{{m},{n}}}")));
        }
        let mut arcs = vec![(Point::top(i), Point::top(i + 1), 0), (Point::bot(i), Point::bot(i + 1), 0)];
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            arcs.push((Point::top(j), Point::bot(j), 0));
        }
        Self::from_arcs(m, n, &arcs)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs sorted by their smaller endpoint (T1 < ... < Tn < B1 < ... < Bn).
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::with_capacity(self.n);
        for s in 0..2 * self.n {
            let t = self.mate[s];
            if s < t {
                let start = reading_start(s, t, self.n);
                out.push(Arc {
                    a: Point::from_slot(s, self.n),
                    b: Point::from_slot(t, self.n),
                    label: self.hol[start],
                });
            }
        }
        out
    }

    pub fn mate_of(&self, p: Point) -> Point {
        Point::from_slot(self.mate[p.slot(self.n)], self.n)
    }

    /// Number of horizontal arcs in the top row (equal to the bottom row).
    pub fn horizontal_count(&self) -> usize {
        (0..self.n).filter(|&s| self.mate[s] < self.n).count() / 2
    }

    pub fn is_identity_matching(&self) -> bool {
        (0..self.n).all(|s| self.mate[s] == s + self.n)
    }

    /// Stacks `self` above `other`. Returns the reduced diagram and the
    /// closed loops that were removed.
    pub fn compose(&self, other: &Self) -> Result<(Self, Loops)> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::Mismatch(format!("B_{{{},{}}} and B_{{{},{}}}", self.m, self.n, other.m, other.n)));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> (Self, Loops) {
        let (n, m) = (self.n, self.m);
        let mut mate = vec![usize::MAX; 2 * n];
        let mut hol = vec![0u32; 2 * n];
        let mut seen_mid = vec![false; n];
        // Walk from every outer endpoint. `upper` says which diagram we are in.
        for start in 0..2 * n {
            if mate[start] != usize::MAX {
                continue;
            }
            let (mut upper, mut p) = if start < n { (true, start) } else { (false, start) };
            let mut h = 0u32;
            let end = loop {
                let d = if upper { self } else { other };
                let q = d.mate[p];
                h = (h + d.hol[p]) % m;
                if upper {
                    if q < n {
                        break q;
                    }
                    seen_mid[q - n] = true;
                    upper = false;
                    p = q - n;
                } else {
                    if q >= n {
                        break q;
                    }
                    seen_mid[q] = true;
                    upper = true;
                    p = q + n;
                }
            };
            mate[start] = end;
            mate[end] = start;
            hol[start] = h;
            hol[end] = (m - h) % m;
        }
        let mut loops = Vec::new();
        for j in 0..n {
            if seen_mid[j] {
                continue;
            }
            // enter the lower diagram downward at middle point j
            let mut h = 0u32;
            let (mut upper, mut p) = (false, j);
            loop {
                let d = if upper { self } else { other };
                let q = d.mate[p];
                h = (h + d.hol[p]) % m;
                if upper {
                    let mid = q - n;
                    seen_mid[mid] = true;
                    if mid == j {
                        break;
                    }
                    upper = false;
                    p = mid;
                } else {
                    seen_mid[q] = true;
                    upper = true;
                    p = q + n;
                }
            }
            loops.push(h);
        }
        (DottedDiagram { m, n, mate, hol }, loops)
    }

    /// Mirror in the horizontal axis, keeping every arc's label.
    pub fn star(&self) -> Self {
        let flip = |p: Point| Point { row: if p.row == Row::Top { Row::Bot } else { Row::Top }, index: p.index };
        let arcs: Vec<_> = self
            .arcs()
            .into_iter()
            .map(|arc| {
                let (a, b) = (flip(arc.a), flip(arc.b));
                // vertical arcs are read top to bottom on both sides
                let (a, b) = if a.row == Row::Bot && b.row == Row::Top { (b, a) } else { (a, b) };
                (a, b, arc.label)
            })
            .collect();
        Self::from_arcs(self.m, self.n, &arcs).expect("mirror of a matching is a matching")
    }

    /// Replaces every label `a` by `m - a`.
    pub fn negate_labels(&self) -> Self {
        DottedDiagram {
            m: self.m,
            n: self.n,
            mate: self.mate.clone(),
            hol: self.hol.iter().map(|&h| (self.m - h) % self.m).collect(),
        }
    }

    /// The linear map sending alpha (x) w (x) beta to beta~ (x) w^{-1} (x) alpha~.
    pub fn iota(&self) -> Self {
        self.star().negate_labels()
    }

    /// Splits the diagram as (top row, through-strand group element, bottom row).
    pub fn decompose(&self) -> Decomposition {
        let n = self.n;
        let mut top_arcs = Vec::new();
        let mut bottom_arcs = Vec::new();
        let mut top_free = Vec::new();
        let mut bottom_free = Vec::new();
        for arc in self.arcs() {
            match (arc.a.row, arc.b.row) {
                (Row::Top, Row::Top) => top_arcs.push((arc.a.index, arc.b.index, arc.label)),
                (Row::Bot, Row::Bot) => bottom_arcs.push((arc.a.index, arc.b.index, arc.label)),
                _ => top_free.push(arc.a.index),
            }
        }
        for j in 1..=n {
            if self.mate_of(Point::bot(j)).row == Row::Top {
                bottom_free.push(j);
            }
        }
        let perm: Vec<usize> = top_free
            .iter()
            .map(|&i| {
                let b = self.mate_of(Point::top(i)).index;
                bottom_free.iter().position(|&g| g == b).unwrap()
            })
            .collect();
        let colors = top_free.iter().map(|&i| self.hol[Point::top(i).slot(n)]).collect();
        Decomposition {
            top: top_arcs,
            through: WreathElement::new(self.m, perm, colors).expect("through strands form a permutation"),
            bottom: bottom_arcs,
        }
    }

    /// Inverse of [`DottedDiagram::decompose`].
    pub fn assemble(m: u32, n: usize, parts: &Decomposition) -> Result<Self> {
        let mut arcs = Vec::with_capacity(n);
        let mut used_top = vec![false; n + 1];
        let mut used_bot = vec![false; n + 1];
        for &(p, q, l) in &parts.top {
            arcs.push((Point::top(p.min(q)), Point::top(p.max(q)), l));
            used_top[p] = true;
            used_top[q] = true;
        }
        for &(p, q, l) in &parts.bottom {
            arcs.push((Point::bot(p.min(q)), Point::bot(p.max(q)), l));
            used_bot[p] = true;
            used_bot[q] = true;
        }
        let top_free: Vec<usize> = (1..=n).filter(|&i| !used_top[i]).collect();
        let bot_free: Vec<usize> = (1..=n).filter(|&i| !used_bot[i]).collect();
        let w = &parts.through;
        if w.n() != top_free.len() || w.n() != bot_free.len() || w.m() != m {
            return Err(Error::Mismatch("through-strand element does not fit the rows".into()));
        }
        for (a, &i) in top_free.iter().enumerate() {
            arcs.push((Point::top(i), Point::bot(bot_free[w.perm()[a]]), w.colors()[a]));
        }
        Self::from_arcs(m, n, &arcs)
    }

    pub fn to_json(&self) -> DiagramJson {
        let arcs = self.arcs();
        DiagramJson {
            m: self.m,
            n: self.n,
            labels: arcs.iter().map(|a| a.label).collect(),
            arcs: arcs.into_iter().map(|a| [a.a, a.b]).collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        if json.arcs.len() != json.labels.len() {
            return Err(Error::Parse("arcs and labels differ in length".into()));
        }
        let arcs: Vec<_> = json
            .arcs
            .iter()
            .zip(&json.labels)
            .map(|(&[a, b], &l)| {
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                (a, b, l)
            })
            .collect();
        Self::from_arcs(json.m, json.n, &arcs)
    }
}

/// Which endpoint an arc's label is read from.
fn reading_start(a: usize, b: usize, n: usize) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    match (lo < n, hi < n) {
        (true, true) => lo,   // top arc: left endpoint
        (false, false) => hi, // bottom arc: right endpoint, walking left
        _ => lo,              // vertical: top endpoint
    }
}

/// A diagram written as alpha (x) w (x) beta. Arcs are 1-based
/// `(left, right, label)` triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub top: Vec<(usize, usize, u32)>,
    pub through: WreathElement,
    pub bottom: Vec<(usize, usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub m: u32,
    pub n: usize,
    pub arcs: Vec<[Point; 2]>,
    pub labels: Vec<u32>,
}

impl Serialize for DottedDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for DottedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: Point| format!("{}{}", if p.row == Row::Top { "T" } else { "B" }, p.index);
        let parts: Vec<String> = self
            .arcs()
            .iter()
            .map(|a| {
                if a.label == 0 {
                    format!("{}-{}", show(a.a), show(a.b))
                } else {
                    format!("{}-{}:{}", show(a.a), show(a.b), a.label)
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// (2n-1)!!, the number of perfect matchings on 2n points.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

pub fn basis_size(m: u32, n: usize) -> u128 {
    (m as u128).pow(n as u32) * double_factorial_odd(n)
}

pub const DEFAULT_BASIS_CAP: u128 = 100_000;

/// All perfect matchings of `0..2n`, as mate arrays.
fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(mate: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = mate.iter().position(|&x| x == usize::MAX) else {
            out.push(mate.clone());
            return;
        };
        for other in first + 1..mate.len() {
            if mate[other] == usize::MAX {
                mate[first] = other;
                mate[other] = first;
                go(mate, out);
                mate[first] = usize::MAX;
                mate[other] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; 2 * n], &mut out);
    out
}

/// Every basis diagram of B_{m,n}, each exactly once.
pub fn enumerate_basis(m: u32, n: usize, cap: u128) -> Result<Vec<DottedDiagram>> {
    if m == 0 {
        return Err(Error::Mismatch("m must be positive".into()));
    }
    let size = basis_size(m, n);
    if size > cap {
        return Err(Error::CapExceeded { what: format!("basis of B_{{{m},{n}}}"), needed: size, cap });
    }
    let mut out = Vec::with_capacity(size as usize);
    for mate in matchings(n) {
        let arcs: Vec<(usize, usize)> = (0..2 * n).filter(|&s| s < mate[s]).map(|s| (s, mate[s])).collect();
        for idx in 0..(m as u64).pow(n as u32) {
            let mut rest = idx;
            let mut hol = vec![0u32; 2 * n];
            for &(a, b) in &arcs {
                let label = (rest % m as u64) as u32;
                rest /= m as u64;
                let start = reading_start(a, b, n);
                let other = if start == a { b } else { a };
                hol[start] = label;
                hol[other] = (m - label) % m;
            }
            out.push(DottedDiagram { m, n, mate: mate.clone(), hol });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_basis(2, 2, DEFAULT_BASIS_CAP).unwrap().len(), 12);
        assert_eq!(enumerate_basis(1, 3, DEFAULT_BASIS_CAP).unwrap().len(), 15);
        let b = enumerate_basis(3, 3, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(b.len(), 405);
        let set: std::collections::HashSet<_> = b.iter().collect();
        assert_eq!(set.len(), 405);
        assert!(enumerate_basis(4, 6, 1000).is_err());
    }

    #[test]
    fn generator_shapes() {
        let e = DottedDiagram::e(2, 2, 1).unwrap();
        let arcs = e.arcs();
        assert_eq!(arcs.len(), 2);
        assert_eq!((arcs[0].a, arcs[0].b, arcs[0].label), (Point::top(1), Point::top(2), 0));
        assert_eq!((arcs[1].a, arcs[1].b, arcs[1].label), (Point::bot(1), Point::bot(2), 0));
        assert!(DottedDiagram::e(2, 2, 2).is_err());
        assert!(DottedDiagram::t(2, 2, 3).is_err());
        assert!(DottedDiagram::s(2, 2, 0).is_err());
    }

    #[test]
    fn star_fixes_generators() {
        for (m, n) in [(2, 3), (3, 3), (4, 2)] {
            for i in 1..n {
                let s = DottedDiagram::s(m, n, i).unwrap();
                let e = DottedDiagram::e(m, n, i).unwrap();
                assert_eq!(s.star(), s);
                assert_eq!(e.star(), e);
            }
            for j in 1..=n {
                let t = DottedDiagram::t(m, n, j).unwrap();
                assert_eq!(t.star(), t);
            }
        }
    }

    #[test]
    fn decomposition_round_trip_and_iota() {
        for d in enumerate_basis(3, 3, DEFAULT_BASIS_CAP).unwrap() {
            let parts = d.decompose();
            assert_eq!(DottedDiagram::assemble(3, 3, &parts).unwrap(), d);
            // iota through the decomposition: beta~ (x) w^-1 (x) alpha~
            let tilde = |arcs: &[(usize, usize, u32)]| arcs.iter().map(|&(p, q, l)| (p, q, (3 - l) % 3)).collect();
            let swapped = Decomposition {
                top: tilde(&parts.bottom),
                through: parts.through.inverse(),
                bottom: tilde(&parts.top),
            };
            assert_eq!(DottedDiagram::assemble(3, 3, &swapped).unwrap(), d.iota());
            assert_eq!(d.star().star(), d);
        }
    }

    #[test]
    fn json_shape() {
        let d = DottedDiagram::e(2, 2, 1).unwrap().compose(&DottedDiagram::t(2, 2, 1).unwrap()).unwrap().0;
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"m":2,"n":2,"arcs":[[["T",1],["T",2]],[["B",1],["B",2]]],"labels":[0,1]}"#);
        let back: DiagramJson = serde_json::from_str(&text).unwrap();
        assert_eq!(DottedDiagram::from_json(&back).unwrap(), d);
    }

    #[test]
    fn raw_loop_orientation_is_ambiguous_without_parameter_symmetry() {
        // e (s t_1^a e) and (e s t_1^a) e are the same product, but the loop
        // is read with opposite orientations: the relations force
        // delta_a = delta_{m-a}.
        let (m, n, a) = (3, 2, 1);
        let e = DottedDiagram::e(m, n, 1).unwrap();
        let s = DottedDiagram::s(m, n, 1).unwrap();
        let t = DottedDiagram::t(m, n, 1).unwrap();
        let st = s.compose(&t).unwrap().0;
        let right = st.compose(&e).unwrap().0;
        let left = e.compose(&st).unwrap().0;
        let (d1, l1) = e.compose(&right).unwrap();
        let (d2, l2) = left.compose(&e).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(l1, vec![m - a]);
        assert_eq!(l2, vec![a]);
    }
}
