//! Weighted polynomial rings, monomials and monomial orders.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

/// Upper bound on the number of ring variables (dense exponent storage).
pub const MAX_VARS: usize = 16;

/// A monomial with dense exponents and its cached weighted degree.
///
/// Only a [`GradedRing`] (or arithmetic on existing monomials) constructs
/// monomials, so the cached degree always equals `sum w_i e_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: i32,
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], degree: 0 }
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    /// Cached weighted degree.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    /// Bit `i` is set when variable `i` occurs.
    pub fn support_mask(&self) -> u16 {
        let mut mask = 0u16;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, or [`AlgebraError::DivisionNotExact`].
    pub fn div(&self, other: &Monomial) -> Result<Monomial> {
        if !other.divides(self) {
            return Err(AlgebraError::DivisionNotExact);
        }
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e -= *o;
        }
        Ok(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support_mask() & other.support_mask() == 0
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0i32;
        for (i, w) in weights.iter().enumerate() {
            exps[i] = self.exps[i].max(other.exps[i]);
            degree += i32::from(exps[i]) * *w as i32;
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0i32;
        for (i, w) in weights.iter().enumerate() {
            exps[i] = self.exps[i].min(other.exps[i]);
            degree += i32::from(exps[i]) * *w as i32;
        }
        Monomial { exps, degree }
    }

    /// Drops the variables in `mask`, keeping the remaining exponents in place.
    pub fn without_vars(&self, mask: u16, weights: &[u32]) -> Monomial {
        let mut exps = self.exps;
        let mut degree = self.degree;
        for (i, w) in weights.iter().enumerate() {
            if mask & (1 << i) != 0 {
                degree -= i32::from(exps[i]) * *w as i32;
                exps[i] = 0;
            }
        }
        Monomial { exps, degree }
    }

    /// Restriction to the variables in `mask`.
    pub fn only_vars(&self, mask: u16, weights: &[u32]) -> Monomial {
        self.without_vars(!mask, weights)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Monomial order tag. Weights always come from the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    /// Standard-degree reverse lexicographic order.
    GrevLex,
    /// Weighted degree first, ties broken reverse lexicographically.
    WeightedGrevLex,
    /// Block order: variables in the mask dominate (weighted grevlex on each block).
    Elimination { eliminated: u16 },
}

impl MonomialOrder {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "weighted-grevlex" | "wgrevlex" => Ok(MonomialOrder::WeightedGrevLex),
            other => Err(AlgebraError::InvalidRing(alloc::format!("unknown monomial order `{other}`"))),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::WeightedGrevLex => "weighted-grevlex",
            MonomialOrder::Elimination { .. } => "elimination",
        }
    }
}

/// A weighted polynomial ring `k[x_1..x_n]` with `deg x_i = w_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedRing {
    names: Vec<String>,
    weights: Vec<u32>,
    field: Field,
    order: MonomialOrder,
}

impl GradedRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>, field: Field, order: MonomialOrder) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(AlgebraError::InvalidRing("one weight per variable is required".to_string()));
        }
        if names.len() > MAX_VARS {
            return Err(AlgebraError::InvalidRing(alloc::format!("at most {MAX_VARS} variables are supported")));
        }
        if weights.contains(&0) {
            return Err(AlgebraError::InvalidRing("weights must be positive".to_string()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(AlgebraError::InvalidRing(alloc::format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::InvalidRing(alloc::format!("duplicate variable `{n}`")));
            }
        }
        if field.characteristic() == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        Ok(GradedRing { names, weights, field, order })
    }

    /// Standard-graded ring with weighted grevlex.
    pub fn standard(names: &[&str], field: Field) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let weights = alloc::vec![1; names.len()];
        Self::new(names, weights, field, MonomialOrder::WeightedGrevLex)
    }

    pub fn weighted(names: &[&str], weights: &[u32], field: Field) -> Result<Self> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
            field,
            MonomialOrder::WeightedGrevLex,
        )
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field with a different order.
    pub fn with_order(&self, order: MonomialOrder) -> GradedRing {
        GradedRing { order, ..self.clone() }
    }

    pub fn with_field(&self, field: Field) -> Result<GradedRing> {
        if field.characteristic() == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        Ok(GradedRing { field, ..self.clone() })
    }

    pub fn monomial(&self, exps: &[u16]) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(AlgebraError::IncompatibleModule(alloc::format!(
                "exponent vector of length {} in a ring with {} variables",
                exps.len(),
                self.nvars()
            )));
        }
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = self.weighted_degree_of(&m.exps);
        Ok(m)
    }

    pub fn var(&self, index: usize) -> Monomial {
        let mut m = Monomial::one();
        m.exps[index] = 1;
        m.degree = self.weights[index] as i32;
        m
    }

    fn weighted_degree_of(&self, exps: &[u16; MAX_VARS]) -> i32 {
        self.weights
            .iter()
            .zip(exps.iter())
            .map(|(w, e)| *w as i32 * i32::from(*e))
            .sum()
    }

    /// `sum w_i e_i`, recomputed from the exponents.
    pub fn weighted_degree(&self, m: &Monomial) -> i32 {
        self.weighted_degree_of(&m.exps)
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.lcm(b, &self.weights)
    }

    pub fn gcd(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.gcd(b, &self.weights)
    }

    /// Compares two monomials in the ring order.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.nvars();
        match self.order {
            MonomialOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            MonomialOrder::GrevLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| revlex(&a.exps[..n], &b.exps[..n])),
            MonomialOrder::WeightedGrevLex => a
                .degree
                .cmp(&b.degree)
                .then_with(|| revlex(&a.exps[..n], &b.exps[..n])),
            MonomialOrder::Elimination { eliminated } => {
                let w = &self.weights;
                let (ae, be) = (a.only_vars(eliminated, w), b.only_vars(eliminated, w));
                ae.degree
                    .cmp(&be.degree)
                    .then_with(|| revlex(&ae.exps[..n], &be.exps[..n]))
                    .then_with(|| {
                        let (ar, br) = (a.without_vars(eliminated, w), b.without_vars(eliminated, w));
                        ar.degree.cmp(&br.degree).then_with(|| revlex(&ar.exps[..n], &br.exps[..n]))
                    })
            }
        }
    }

    /// All monomials of the given weighted degree, in descending ring order.
    pub fn monomials_of_degree(&self, degree: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let mut exps = [0u16; MAX_VARS];
        self.enumerate(0, degree, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    fn enumerate(&self, var: usize, remaining: i32, exps: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if var == self.nvars() {
            if remaining == 0 {
                let mut m = Monomial::one();
                m.exps = *exps;
                m.degree = self.weighted_degree_of(exps);
                out.push(m);
            }
            return;
        }
        let w = self.weights[var] as i32;
        let mut e = 0;
        while e * w <= remaining {
            exps[var] = e as u16;
            self.enumerate(var + 1, remaining - e * w, exps, out);
            e += 1;
        }
        exps[var] = 0;
    }
}

/// Reverse lexicographic tie-break: the last differing exponent decides and the smaller one wins.
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn godeaux() -> GradedRing {
        GradedRing::weighted(&["x0", "x1", "y0", "y1", "y2", "y3"], &[2, 2, 3, 3, 3, 3], Field::default()).unwrap()
    }

    #[test]
    fn weighted_degree_in_godeaux_ring() {
        let r = godeaux();
        let m = r.monomial(&[1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(r.weighted_degree(&m), 5);
        assert_eq!(m.degree(), 5);
        assert_eq!(Monomial::one().degree(), 0);
        assert_eq!(r.monomial(&[2, 0, 0, 0, 0, 0]).unwrap().degree(), 4);
    }

    #[test]
    fn lex_and_equal_comparisons() {
        let r = GradedRing::standard(&["x", "y"], Field::default()).unwrap().with_order(MonomialOrder::Lex);
        let x2 = r.monomial(&[2, 0]).unwrap();
        let xy = r.monomial(&[1, 1]).unwrap();
        assert_eq!(r.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(r.cmp(&xy, &xy), Ordering::Equal);
    }

    #[test]
    fn grevlex_prefers_y_squared_below_xz() {
        let r = GradedRing::standard(&["x", "y", "z"], Field::default()).unwrap();
        let xz = r.monomial(&[1, 0, 1]).unwrap();
        let y2 = r.monomial(&[0, 2, 0]).unwrap();
        assert_eq!(r.cmp(&xz, &y2), Ordering::Less);
        assert_eq!(r.with_order(MonomialOrder::GrevLex).cmp(&xz, &y2), Ordering::Less);
    }

    #[test]
    fn ring_validation() {
        assert!(GradedRing::weighted(&["x", "x"], &[1, 1], Field::default()).is_err());
        assert!(GradedRing::weighted(&["x"], &[0], Field::default()).is_err());
        assert!(GradedRing::weighted(&["1x"], &[1], Field::default()).is_err());
        assert_eq!(
            GradedRing::weighted(&["x"], &[1], Field::Prime(2)),
            Err(AlgebraError::CharacteristicTwo)
        );
    }

    #[test]
    fn enumerates_weighted_monomials() {
        let r = godeaux();
        // degree 6: x^3 (4 monomials in x0,x1) + y_i y_j (10)
        assert_eq!(r.monomials_of_degree(6).len(), 14);
        assert_eq!(r.monomials_of_degree(1).len(), 0);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let r = GradedRing::standard(&["y", "x"], Field::default())
            .unwrap()
            .with_order(MonomialOrder::Elimination { eliminated: 0b01 });
        let y = r.monomial(&[1, 0]).unwrap();
        let x3 = r.monomial(&[0, 3]).unwrap();
        assert_eq!(r.cmp(&y, &x3), Ordering::Greater);
    }
}
