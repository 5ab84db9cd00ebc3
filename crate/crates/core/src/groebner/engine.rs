//! Buchberger's algorithm on sparse module vectors.
//!
//! Pairs are selected by sugar; Gebauer–Möller criteria prune them. For
//! homogeneous input the inputs are fed in degree by degree, which also
//! tells us which inputs are minimal generators of the submodule.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::field::Scalar;
use crate::ring::{GradedRing, Monomial};

/// How positions interact with the ring order in a module monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PositionOrder {
    /// Position first (lower index is larger), then the ring order.
    Pot,
    /// Ring order first, then position (lower index is larger).
    Top,
    /// Positions below `split` dominate all others; `Top` inside each block.
    Block { split: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

pub(crate) struct Ctx<'a> {
    pub ring: &'a GradedRing,
    pub kind: PositionOrder,
    pub shifts: &'a [i32],
}

impl Ctx<'_> {
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp_parts(a.pos, &a.mono, b.pos, &b.mono)
    }

    pub fn cmp_parts(&self, pa: usize, ma: &Monomial, pb: usize, mb: &Monomial) -> Ordering {
        let by_pos = pb.cmp(&pa);
        match self.kind {
            PositionOrder::Pot => by_pos.then_with(|| self.ring.cmp(ma, mb)),
            PositionOrder::Top => self.ring.cmp(ma, mb).then(by_pos),
            PositionOrder::Block { split } => (pb >= split)
                .cmp(&(pa >= split))
                .then_with(|| self.ring.cmp(ma, mb))
                .then(by_pos),
        }
    }

    pub fn degree(&self, t: &Term) -> i32 {
        t.mono.degree() + self.shifts[t.pos]
    }

    pub fn sort(&self, terms: &mut Vec<Term>) {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mono == t.mono => last.coeff = last.coeff.add(&t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        *terms = out;
    }

    /// `v - c * m * g` where both inputs are sorted.
    pub fn sub_mul(&self, v: &[Term], c: &Scalar, m: &Monomial, g: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(v.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while j < g.len() {
            let gt = Term { pos: g[j].pos, mono: g[j].mono.mul(m), coeff: g[j].coeff.mul(c).neg() };
            if i < v.len() {
                match self.cmp(&v[i], &gt) {
                    Ordering::Greater => {
                        out.push(v[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let s = v[i].coeff.add(&gt.coeff);
                        if !s.is_zero() {
                            out.push(Term { coeff: s, ..gt });
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    Ordering::Less => {}
                }
            }
            out.push(gt);
            j += 1;
        }
        out.extend_from_slice(&v[i..]);
        out
    }

    pub fn scale_mul(&self, g: &[Term], c: &Scalar, m: &Monomial) -> Vec<Term> {
        g.iter().map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: t.coeff.mul(c) }).collect()
    }

    pub fn monic(&self, mut v: Vec<Term>) -> Vec<Term> {
        if let Some(lead) = v.first() {
            if !lead.coeff.is_one() {
                let inv = lead.coeff.inv().expect("nonzero lead");
                for t in &mut v {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
        v
    }

    /// Reduces `v` by `basis`. With `full` every term is reduced, otherwise only the head.
    pub fn reduce(&self, mut v: Vec<Term>, basis: &[Vec<Term>], full: bool) -> Vec<Term> {
        let mut done: Vec<Term> = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let head = &v[start];
            let reducer = basis.iter().find(|g| {
                let l = &g[0];
                l.pos == head.pos && l.mono.divides(&head.mono)
            });
            match reducer {
                Some(g) => {
                    let q = head.mono.div(&g[0].mono).expect("divisible");
                    let c = head.coeff.div(&g[0].coeff).expect("nonzero lead");
                    v = self.sub_mul(&v[start..], &c, &q, g);
                    start = 0;
                }
                None if full => {
                    done.push(v[start].clone());
                    start += 1;
                }
                None => break,
            }
        }
        if full {
            done
        } else {
            v.drain(..start);
            v
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: usize,
    sugar: i32,
}

pub(crate) struct Outcome {
    pub basis: Vec<Vec<Term>>,
    /// Input indices that survived as minimal generators (homogeneous runs only).
    pub kept: Vec<usize>,
}

struct Engine<'a, 'b> {
    ctx: &'a Ctx<'b>,
    rank_one: bool,
    elems: Vec<Vec<Term>>,
    sugar: Vec<i32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine<'_, '_> {
    fn sugar_of(&self, v: &[Term]) -> i32 {
        v.iter().map(|t| self.ctx.degree(t)).max().unwrap_or(0)
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (gi, gj) = (&self.elems[p.i], &self.elems[p.j]);
        let qi = p.lcm.div(&gi[0].mono).expect("lcm");
        let qj = p.lcm.div(&gj[0].mono).expect("lcm");
        let ci = gi[0].coeff.inv().expect("nonzero lead");
        let cj = gj[0].coeff.inv().expect("nonzero lead");
        let a = self.ctx.scale_mul(gi, &ci, &qi);
        self.ctx.sub_mul(&a, &cj, &qj, gj)
    }

    fn add(&mut self, v: Vec<Term>, sugar: i32) {
        let ctx = self.ctx;
        let ring = ctx.ring;
        let k = self.elems.len();
        let lead = v[0].clone();
        // Candidate pairs with the new element.
        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for i in 0..k {
            if !self.active[i] || self.elems[i][0].pos != lead.pos {
                continue;
            }
            let li = &self.elems[i][0].mono;
            let lcm = ring.lcm(li, &lead.mono);
            let coprime = self.rank_one && li.is_coprime(&lead.mono);
            let s = (self.sugar[i] + lcm.degree() - li.degree()).max(sugar + lcm.degree() - lead.mono.degree());
            fresh.push((Pair { i, j: k, lcm, pos: lead.pos, sugar: s }, coprime));
        }
        // Old pairs whose lcm is divisible by the new lead, with both partner lcms different.
        self.pairs.retain(|p| {
            if p.pos != lead.pos || !lead.mono.divides(&p.lcm) {
                return true;
            }
            let li = ring.lcm(&self.elems[p.i][0].mono, &lead.mono);
            let lj = ring.lcm(&self.elems[p.j][0].mono, &lead.mono);
            li == p.lcm || lj == p.lcm
        });
        // Drop new pairs whose lcm is a proper multiple of another new lcm.
        let lcms: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm).collect();
        fresh.retain(|(p, _)| !lcms.iter().any(|l| *l != p.lcm && l.divides(&p.lcm)));
        // Among equal lcms keep one, unless one of them is coprime.
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, coprime) in fresh {
            match kept.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
                Some(entry) => entry.1 |= coprime,
                None => kept.push((p, coprime)),
            }
        }
        self.pairs.extend(kept.into_iter().filter(|(_, coprime)| !coprime).map(|(p, _)| p));
        for i in 0..k {
            if self.active[i] && self.elems[i][0].pos == lead.pos && lead.mono.divides(&self.elems[i][0].mono) {
                self.active[i] = false;
            }
        }
        self.elems.push(v);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ctx = self.ctx;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar.cmp(&q.sugar).then_with(|| ctx.cmp_parts(p.pos, &p.lcm, q.pos, &q.lcm))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn reduce_new(&self, v: Vec<Term>) -> Vec<Term> {
        let v = self.ctx.reduce(v, &self.elems, false);
        if v.is_empty() {
            return v;
        }
        let head = v[0].clone();
        let mut tail = self.ctx.reduce(v[1..].to_vec(), &self.elems, true);
        tail.insert(0, head);
        self.ctx.monic(tail)
    }
}

/// Runs Buchberger on sorted input vectors. Returns the reduced basis sorted ascending.
pub(crate) fn run(ctx: &Ctx<'_>, inputs: Vec<Vec<Term>>, rank_one: bool) -> Outcome {
    let mut engine = Engine { ctx, rank_one, elems: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut queue: Vec<(i32, usize, Vec<Term>)> = inputs
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty())
        .map(|(i, v)| (engine.sugar_of(&v), i, v))
        .collect();
    // Stable by degree, then input order.
    queue.sort_by_key(|(s, i, _)| (*s, *i));
    queue.reverse();
    let mut kept = Vec::new();
    loop {
        let pair_sugar = engine.pairs.iter().map(|p| p.sugar).min();
        let input_sugar = queue.last().map(|q| q.0);
        let take_pair = match (pair_sugar, input_sugar) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(p), Some(i)) => p <= i,
        };
        if take_pair {
            let pair = engine.next_pair().expect("pair available");
            let s = engine.spoly(&pair);
            let h = engine.reduce_new(s);
            if !h.is_empty() {
                engine.add(h, pair.sugar);
            }
        } else {
            let (s, idx, v) = queue.pop().expect("input available");
            let h = engine.reduce_new(v);
            if !h.is_empty() {
                kept.push(idx);
                engine.add(h, s);
            }
        }
    }
    let basis = interreduce(ctx, engine.elems);
    kept.sort_unstable();
    Outcome { basis, kept }
}

/// Minimal, fully reduced, monic basis sorted ascending by lead term.
pub(crate) fn interreduce(ctx: &Ctx<'_>, elems: Vec<Vec<Term>>) -> Vec<Vec<Term>> {
    let mut elems: Vec<Vec<Term>> = elems.into_iter().filter(|v| !v.is_empty()).collect();
    elems.sort_by(|a, b| ctx.cmp(&a[0], &b[0]));
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for v in elems {
        let l = &v[0];
        if !minimal.iter().any(|g| g[0].pos == l.pos && g[0].mono.divides(&l.mono)) {
            minimal.push(v);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let head = minimal[k][0].clone();
        let others: Vec<Vec<Term>> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
        let mut tail = ctx.reduce(minimal[k][1..].to_vec(), &others, true);
        tail.insert(0, head);
        out.push(ctx.monic(tail));
    }
    out
}
