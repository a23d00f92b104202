use std::fmt::Debug;
use std::hash::Hash;

use crate::error::Result;

/// A coefficient field, used as a context object: elements are plain values
/// and every operation goes through the field handle.
///
/// Handles are cheap to clone and compare; two handles compare equal exactly
/// when their element sets coincide.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// `Ord` is a fixed total order used only for canonical sorting.
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; `Error::DivisionByZero` on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Number of elements, `None` when infinite.
    fn cardinality(&self) -> Option<u64>;

    /// The unique `b` with `b^p = a` in a perfect field of characteristic `p`.
    /// Identity in characteristic zero.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;

    /// Canonical text form of an element; `parse_elem` accepts it back.
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// Whether the canonical text form starts with a minus sign. Polynomial
    /// printers use this to join terms with ` - `.
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// Short name, e.g. `GF(5)` or `QQ`.
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }
}
