//! Hilbert series of monomial quotients, as Laurent numerators over `prod (1 - T^w)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complexes::GradedFreeModule;
use crate::ring::{GradedRing, Monomial};

/// `N(T) / prod_i (1 - T^{w_i})` with `N` a Laurent polynomial over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    numerator: BTreeMap<i32, i64>,
    weights: Vec<u32>,
}

impl HilbertData {
    pub fn new(numerator: impl IntoIterator<Item = (i32, i64)>, weights: Vec<u32>) -> Self {
        let mut n = BTreeMap::new();
        for (e, c) in numerator {
            *n.entry(e).or_insert(0) += c;
        }
        n.retain(|_, c| *c != 0);
        HilbertData { numerator: n, weights }
    }

    /// Nonzero numerator coefficients by ascending exponent.
    pub fn numerator(&self) -> Vec<(i32, i64)> {
        self.numerator.iter().map(|(e, c)| (*e, *c)).collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Graded dimensions in degrees `from..=to`.
    pub fn coefficients(&self, from: i32, to: i32) -> Vec<i64> {
        if to < from {
            return Vec::new();
        }
        let low = self.numerator.keys().next().copied().unwrap_or(0).min(from);
        let span = (to - low) as usize;
        // Power series of 1 / prod (1 - T^w) up to T^span.
        let mut denom = alloc::vec![0i64; span + 1];
        denom[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for k in w..=span {
                denom[k] += denom[k - w];
            }
        }
        (from..=to)
            .map(|d| {
                self.numerator
                    .iter()
                    .filter(|(e, _)| **e <= d)
                    .map(|(e, c)| c * denom[(d - e) as usize])
                    .sum()
            })
            .collect()
    }

    /// Multiplicity of the root `T = 1` of the numerator.
    fn order_at_one(&self) -> (usize, BTreeMap<i32, i64>) {
        let mut n = self.numerator.clone();
        let mut k = 0;
        while !n.is_empty() && n.values().sum::<i64>() == 0 {
            n = divide_by_one_minus_t(&n);
            k += 1;
        }
        (k, n)
    }

    /// Krull dimension: the pole order at `T = 1`, or `-1` for the zero series.
    pub fn dimension(&self) -> i32 {
        if self.is_zero() {
            return -1;
        }
        self.weights.len() as i32 - self.order_at_one().0 as i32
    }

    /// `(N / (1 - T)^k)(1)` for the largest such `k`: the multiplicity scaled by
    /// the product of the weights. Comparable between modules over one ring.
    pub fn multiplicity(&self) -> i64 {
        let (_, n) = self.order_at_one();
        n.values().sum()
    }

    /// Equality as rational functions, allowing different denominators.
    pub fn same_series(&self, other: &HilbertData) -> bool {
        let times = |n: &BTreeMap<i32, i64>, weights: &[u32]| {
            weights.iter().fold(n.clone(), |acc, &w| {
                let mut out = acc.clone();
                for (e, c) in &acc {
                    *out.entry(e + w as i32).or_insert(0) -= c;
                }
                out.retain(|_, c| *c != 0);
                out
            })
        };
        times(&self.numerator, &other.weights) == times(&other.numerator, &self.weights)
    }
}

fn divide_by_one_minus_t(n: &BTreeMap<i32, i64>) -> BTreeMap<i32, i64> {
    let (&low, _) = n.iter().next().expect("nonzero numerator");
    let (&high, _) = n.iter().next_back().expect("nonzero numerator");
    let mut out = BTreeMap::new();
    let mut acc = 0;
    for e in low..high {
        acc += n.get(&e).copied().unwrap_or(0);
        if acc != 0 {
            out.insert(e, acc);
        }
    }
    out
}

/// Hilbert series of `F / M` where `M` has the given lead terms.
pub(crate) fn quotient_series(ring: &GradedRing, module: &GradedFreeModule, leads: &[(usize, Monomial)]) -> HilbertData {
    let mut total: BTreeMap<i32, i64> = BTreeMap::new();
    for p in 0..module.rank() {
        let gens: Vec<Monomial> = leads.iter().filter(|(q, _)| *q == p).map(|(_, m)| *m).collect();
        for (e, c) in monomial_numerator(ring, minimalize(gens)) {
            *total.entry(e + module.degree(p)).or_insert(0) += c;
        }
    }
    HilbertData::new(total, ring.weights().to_vec())
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn mul_series(a: &BTreeMap<i32, i64>, b: &BTreeMap<i32, i64>) -> BTreeMap<i32, i64> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Numerator of `S / J` for a minimal monomial generating set of `J`, by
/// pivoting on a variable: `N(J) = N(J + (x)) + T^{deg x} N(J : x)`.
fn monomial_numerator(ring: &GradedRing, gens: Vec<Monomial>) -> BTreeMap<i32, i64> {
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = BTreeMap::from([(0, 1i64)]);
        for m in &gens {
            let mut factor = BTreeMap::from([(0, 1i64)]);
            *factor.entry(m.degree()).or_insert(0) -= 1;
            acc = mul_series(&acc, &factor);
        }
        return acc;
    }
    let n = ring.nvars();
    let pivot = (0..n)
        .max_by_key(|&v| (gens.iter().filter(|m| m.exponent(v) > 0).count(), core::cmp::Reverse(v)))
        .expect("some variable");
    let x = ring.var(pivot);
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exponent(pivot) == 0).copied().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens.iter().map(|m| m.div(&x).unwrap_or(*m)).collect();
    let mut out = monomial_numerator(ring, minimalize(plus));
    for (e, c) in monomial_numerator(ring, minimalize(colon)) {
        *out.entry(e + x.degree()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn polynomial_ring_series() {
        let h = HilbertData::new([(0, 1)], alloc::vec![1, 1]);
        assert_eq!(h.coefficients(0, 4), alloc::vec![1, 2, 3, 4, 5]);
        assert_eq!(h.dimension(), 2);
        assert_eq!(h.multiplicity(), 1);
    }

    #[test]
    fn monomial_ideal_counts() {
        let r = GradedRing::standard(&["x", "y", "z"], Field::default()).unwrap();
        let gens = alloc::vec![r.monomial(&[1, 1, 0]).unwrap(), r.monomial(&[0, 1, 1]).unwrap(), r.monomial(&[2, 0, 0]).unwrap()];
        let h = quotient_series(&r, &GradedFreeModule::new(alloc::vec![0]), &gens.iter().map(|m| (0, *m)).collect::<Vec<_>>());
        // Brute force count of standard monomials.
        for d in 0..8 {
            let count = r.monomials_of_degree(d).iter().filter(|m| !gens.iter().any(|g| g.divides(m))).count() as i64;
            assert_eq!(h.coefficients(d, d)[0], count, "degree {d}");
        }
    }
}
