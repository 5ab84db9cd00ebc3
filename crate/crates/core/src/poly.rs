//! Sparse polynomials over a [`GradedRing`].

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Result;
use crate::field::Scalar;
use crate::ring::{GradedRing, Monomial};

/// A polynomial as a list of `(monomial, coefficient)` pairs, strictly
/// decreasing in the ring's monomial order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<GradedRing>,
    terms: Vec<(Monomial, Scalar)>,
}

pub(crate) fn same_ring(a: &Arc<GradedRing>, b: &Arc<GradedRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<GradedRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<GradedRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<GradedRing>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: &Arc<GradedRing>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn term(ring: &Arc<GradedRing>, m: Monomial, c: Scalar) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<GradedRing>, index: usize) -> Self {
        Self::term(ring, ring.var(index), ring.field().one())
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms(ring: &Arc<GradedRing>, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` is already sorted, merged and zero free.
    pub(crate) fn from_sorted_terms(ring: &Arc<GradedRing>, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The coefficient if the polynomial is a (possibly zero) constant.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, _)] if m.is_one())
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Weighted degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<i32> {
        if self.is_zero() || !self.is_homogeneous() {
            return None;
        }
        Some(self.terms[0].0.degree())
    }

    /// Largest weighted degree of a term.
    pub fn max_degree(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    /// Component of the given weighted degree.
    pub fn homogeneous_part(&self, degree: i32) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.0.degree() == degree).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(same_ring(&self.ring, &other.ring), "polynomials from different rings");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let ring = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplication by `c * m`; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Exact division by a monomial; every term must be divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| t.div(m).map(|q| (q, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead coefficient")),
        }
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]` (or dropping terms that use an unmapped variable
    /// when `var_map[i]` is `None`).
    pub fn map_to_ring(&self, target: &Arc<GradedRing>, var_map: &[Option<usize>]) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        'outer: for (m, c) in &self.terms {
            let mut exps = alloc::vec![0u16; target.nvars()];
            for (i, &e) in m.exponents()[..self.ring.nvars()].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => exps[j] += e,
                    None => continue 'outer,
                }
            }
            terms.push((target.monomial(&exps)?, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Same polynomial re-sorted for a ring that differs only in its order.
    pub fn reorder(&self, target: &Arc<GradedRing>) -> Polynomial {
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Substitutes polynomials (in a common ring) for the variables.
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<GradedRing>) -> Polynomial {
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(&img.pow(u32::from(e)));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
