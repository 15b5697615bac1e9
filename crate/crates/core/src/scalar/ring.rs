use std::fmt;

/// Commutative ring operations shared by exact scalars and polynomials in the
/// loop parameters.
///
/// Elements carry their parent structure, so constants are produced from an
/// existing element (`zero_like`, `one_like`, `int_like`).
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            exp >>= 1;
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait FieldElem: Ring {
    fn inverse(&self) -> Option<Self>;

    fn divide(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }
}
