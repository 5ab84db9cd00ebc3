use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{GradedFreeModule, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::groebner::HilbertData;
use crate::ring::GradedRing;

/// `F_0 <- F_1 <- ... <- F_l` with `d_i: F_i -> F_{i-1}` and `d_i d_{i+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<GradedRing>,
    modules: Vec<GradedFreeModule>,
    maps: Vec<ModuleMap>,
}

impl FreeComplex {
    /// Builds a complex from `d_1, ..., d_l`; checks that consecutive maps compose and vanish.
    pub fn new(ring: &Arc<GradedRing>, f0: GradedFreeModule, maps: Vec<ModuleMap>) -> Result<Self> {
        let c = Self::sequence(ring, f0, maps)?;
        for k in 1..c.maps.len() {
            if !c.maps[k - 1].compose(&c.maps[k])?.is_zero() {
                return Err(AlgebraError::IncompatibleModule(alloc::format!("d_{} d_{} is not zero", k, k + 1)));
            }
        }
        Ok(c)
    }

    /// A chain of composable maps that need not square to zero; see [`FreeComplex::is_complex`].
    pub fn sequence(ring: &Arc<GradedRing>, f0: GradedFreeModule, maps: Vec<ModuleMap>) -> Result<Self> {
        let mut modules = alloc::vec![f0];
        for (k, d) in maps.iter().enumerate() {
            if d.target() != &modules[k] {
                return Err(AlgebraError::IncompatibleModule(alloc::format!("d_{} has the wrong target", k + 1)));
            }
            modules.push(d.source().clone());
        }
        Ok(FreeComplex { ring: ring.clone(), modules, maps })
    }

    pub(crate) fn from_parts_unchecked(ring: &Arc<GradedRing>, modules: Vec<GradedFreeModule>, maps: Vec<ModuleMap>) -> Self {
        FreeComplex { ring: ring.clone(), modules, maps }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_i`; the zero module outside `0..=length`.
    pub fn module(&self, i: usize) -> GradedFreeModule {
        self.modules.get(i).cloned().unwrap_or_default()
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// `d_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &ModuleMap {
        &self.maps[i - 1]
    }

    /// `d_i`, or a zero map when `i` is outside `1..=length`.
    pub fn differential_or_zero(&self, i: usize) -> ModuleMap {
        if i >= 1 && i <= self.length() {
            self.maps[i - 1].clone()
        } else {
            let target = if i == 0 { GradedFreeModule::zero() } else { self.module(i - 1) };
            ModuleMap::zero(&self.ring, self.module(i), target)
        }
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GradedFreeModule::rank).collect()
    }

    /// No differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(ModuleMap::is_minimal)
    }

    /// `d_i d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }
}

/// A family `f_i: F_i -> G_i` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub maps: Vec<ModuleMap>,
}

impl ChainMap {
    pub fn component(&self, i: usize) -> ModuleMap {
        self.maps.get(i).cloned().unwrap_or_else(|| {
            ModuleMap::zero(self.source.ring(), self.source.module(i), self.target.module(i))
        })
    }

    /// `f_{i-1} d_i = d'_i f_i` for every `i`.
    pub fn commutes(&self) -> bool {
        (1..=self.source.length().max(self.target.length())).all(|i| {
            let left = self.component(i - 1).compose(&self.source.differential_or_zero(i));
            let right = self.target.differential_or_zero(i).compose(&self.component(i));
            match (left, right) {
                (Ok(l), Ok(r)) => l.same_matrix(&r),
                _ => false,
            }
        })
    }

    /// `f - g` componentwise.
    pub fn difference(&self, other: &ChainMap) -> Result<ChainMap> {
        let n = self.maps.len().max(other.maps.len());
        let maps = (0..n).map(|i| self.component(i).sub(&other.component(i))).collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), maps })
    }
}

/// Maps `h_i: F_i -> G_{i+1}` certifying `f = d' h + h d` for a chain map `f`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub maps: Vec<ModuleMap>,
}

impl Homotopy {
    fn component(&self, f: &ChainMap, i: isize) -> ModuleMap {
        if i < 0 {
            return ModuleMap::zero(f.source.ring(), GradedFreeModule::zero(), f.target.module(0));
        }
        let i = i as usize;
        self.maps
            .get(i)
            .cloned()
            .unwrap_or_else(|| ModuleMap::zero(f.source.ring(), f.source.module(i), f.target.module(i + 1)))
    }

    /// Checks `f_i = d'_{i+1} h_i + h_{i-1} d_i` for every `i`.
    pub fn verifies(&self, f: &ChainMap) -> bool {
        (0..=f.source.length()).all(|i| {
            let outer = f.target.differential_or_zero(i + 1).compose(&self.component(f, i as isize));
            let inner = if i == 0 {
                Ok(ModuleMap::zero(f.source.ring(), f.source.module(0), f.target.module(0)))
            } else {
                self.component(f, i as isize - 1).compose(&f.source.differential_or_zero(i))
            };
            match (outer, inner) {
                (Ok(o), Ok(n)) => o.add(&n).map(|s| s.same_matrix(&f.component(i))).unwrap_or(false),
                _ => false,
            }
        })
    }
}

/// Ranks of the summands `S(-j)` in homological degree `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, i32), usize)>) -> Self {
        let mut table = BettiTable::default();
        for (k, v) in entries {
            if v > 0 {
                *table.entries.entry(k).or_insert(0) += v;
            }
        }
        table
    }

    /// Table of `F_i = ⊕_j S(-j)^{β_ij}` given by generator degree lists.
    pub fn from_degrees(degrees: &[&[i32]]) -> Self {
        Self::from_entries(degrees.iter().enumerate().flat_map(|(i, ds)| ds.iter().map(move |&j| ((i, j), 1))))
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i32), usize)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Homological degrees present, with their `j -> rank` maps.
    pub fn columns(&self) -> BTreeMap<usize, BTreeMap<i32, usize>> {
        let mut out: BTreeMap<usize, BTreeMap<i32, usize>> = BTreeMap::new();
        for ((i, j), r) in &self.entries {
            out.entry(*i).or_default().insert(*j, *r);
        }
        out
    }

    pub fn rank(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, r)| r).sum()
    }

    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// `β(i, j) = β(c - i, -t - j)` for all entries.
    pub fn is_palindromic(&self, c: usize, t: i32) -> bool {
        self.entries.iter().all(|((i, j), r)| *i <= c && self.get(c - i, -t - j) == *r)
    }
}

pub fn betti(c: &FreeComplex) -> BettiTable {
    let degrees: Vec<&[i32]> = c.modules().iter().map(GradedFreeModule::degrees).collect();
    BettiTable::from_degrees(&degrees)
}

/// `sum_i (-1)^i sum_j β_ij T^j` over `prod (1 - T^{w})`.
pub fn hilbert_from_betti(b: &BettiTable, ring: &GradedRing) -> HilbertData {
    HilbertData::new(
        b.entries().map(|((i, j), r)| (j, if i % 2 == 0 { r as i64 } else { -(r as i64) })),
        ring.weights().to_vec(),
    )
}
