use alloc::vec::Vec;

use super::{ChainMap, FreeComplex, GradedFreeModule, Homotopy, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::groebner::{minimal_generators, Lifter};
use crate::poly::Polynomial;

/// A minimal free resolution of `coker(presentation)`.
#[derive(Clone, Debug)]
pub struct Resolution {
    complex: FreeComplex,
    presentation: ModuleMap,
    augmentation: ModuleMap,
}

impl Resolution {
    /// Wraps an explicitly given complex resolving `coker d_1`.
    pub fn from_complex(complex: FreeComplex) -> Self {
        let f0 = complex.module(0);
        let presentation = complex.differential_or_zero(1);
        let augmentation = ModuleMap::identity(complex.ring(), &f0);
        Resolution { complex, presentation, augmentation }
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn into_complex(self) -> FreeComplex {
        self.complex
    }

    /// The presentation that was resolved, as given.
    pub fn presentation(&self) -> &ModuleMap {
        &self.presentation
    }

    /// Sends the presentation's generators to their classes expressed in the
    /// resolution's `F_0` (identity unless generators were cancelled).
    pub fn augmentation(&self) -> &ModuleMap {
        &self.augmentation
    }

    pub fn is_minimal(&self) -> bool {
        self.complex.is_minimal()
    }

    pub fn length(&self) -> usize {
        self.complex.length()
    }
}

/// Minimal free resolution of `coker(presentation)` by iterated syzygies,
/// with the scalar entries of the first differential cancelled at the end.
pub fn resolve(presentation: &ModuleMap, max_length: usize) -> Result<Resolution> {
    let ring = presentation.ring();
    let f0 = presentation.target().clone();
    let mut maps = Vec::new();
    let first = minimal_generators(presentation);
    if first.cols() > 0 {
        if max_length == 0 {
            return Err(AlgebraError::LengthExceeded { max_length });
        }
        maps.push(first);
        loop {
            let next = Lifter::new(maps.last().expect("nonempty")).kernel();
            if next.cols() == 0 {
                break;
            }
            if maps.len() == max_length {
                return Err(AlgebraError::LengthExceeded { max_length });
            }
            maps.push(next);
        }
    }
    let complex = FreeComplex::new(ring, f0.clone(), maps)?;
    let (complex, augmentation) = minimalize_with_base_change(&complex);
    Ok(Resolution { complex, presentation: presentation.clone(), augmentation })
}

/// Cancels unit entries until no differential has a scalar entry.
pub fn minimalize(c: &FreeComplex) -> FreeComplex {
    minimalize_with_base_change(c).0
}

/// Also returns the induced map from the old `F_0` to the new one (modulo the image of `d_1`).
pub(crate) fn minimalize_with_base_change(c: &FreeComplex) -> (FreeComplex, ModuleMap) {
    let ring = c.ring().clone();
    let mut modules: Vec<GradedFreeModule> = c.modules().to_vec();
    let mut maps: Vec<ModuleMap> = c.differentials().to_vec();
    let mut augmentation = ModuleMap::identity(&ring, &modules[0]);
    while let Some((i, (r, col))) = maps.iter().enumerate().find_map(|(k, d)| d.unit_entry().map(|e| (k + 1, e))) {
        let d = &maps[i - 1];
        let u_inv = d.entry(r, col).constant_value().expect("unit").inv().expect("unit");
        let keep_rows: Vec<usize> = (0..d.rows()).filter(|&k| k != r).collect();
        let keep_cols: Vec<usize> = (0..d.cols()).filter(|&k| k != col).collect();
        // D - a u^{-1} b
        let mut reduced = d.submatrix(&keep_rows, &keep_cols);
        for (ri, &a_row) in keep_rows.iter().enumerate() {
            let a = d.entry(a_row, col);
            if a.is_zero() {
                continue;
            }
            let a = a.scale(&u_inv);
            for (ci, &b_col) in keep_cols.iter().enumerate() {
                let b = d.entry(r, b_col);
                if !b.is_zero() {
                    let v = reduced.entry(ri, ci).sub(&a.mul(b));
                    reduced.set_entry(ri, ci, v);
                }
            }
        }
        if i == 1 {
            // The removed generator is -u^{-1} sum_a d[a][col] e_a modulo the image.
            let mut change = ModuleMap::zero(&ring, modules[0].clone(), modules[0].without(r));
            for (ri, &k) in keep_rows.iter().enumerate() {
                change.set_entry(ri, k, Polynomial::one(&ring));
                change.set_entry(ri, r, d.entry(k, col).scale(&u_inv).neg());
            }
            augmentation = change.after(&augmentation);
        }
        if i >= 2 {
            let prev = &maps[i - 2];
            let rows: Vec<usize> = (0..prev.rows()).collect();
            maps[i - 2] = prev.submatrix(&rows, &keep_rows);
        }
        if i < maps.len() {
            let next = &maps[i];
            let cols: Vec<usize> = (0..next.cols()).collect();
            maps[i] = next.submatrix(&keep_cols, &cols);
        }
        maps[i - 1] = reduced;
        modules[i - 1] = modules[i - 1].without(r);
        modules[i] = modules[i].without(col);
    }
    while maps.last().is_some_and(|d| d.cols() == 0) {
        maps.pop();
        modules.pop();
    }
    (FreeComplex::from_parts_unchecked(&ring, modules, maps), augmentation)
}

/// `Hom(F_{l-i}, S)(t)` in position `i` with transposed differentials.
pub fn dualize(c: &FreeComplex, twist: i32) -> FreeComplex {
    let l = c.length();
    let modules: Vec<GradedFreeModule> = (0..=l).map(|i| c.module(l - i).dual(twist)).collect();
    let maps: Vec<ModuleMap> = (1..=l).map(|i| c.differential(l - i + 1).transpose(twist)).collect();
    FreeComplex::from_parts_unchecked(c.ring(), modules, maps)
}

/// `ker d_i ⊆ im d_{i+1}` (with `d_0 = 0` and `d_{l+1} = 0`).
pub fn homology_is_zero(c: &FreeComplex, i: usize) -> bool {
    let ring = c.ring();
    let kernel = if i == 0 {
        ModuleMap::identity(ring, &c.module(0))
    } else {
        Lifter::new(c.differential(i)).kernel()
    };
    if kernel.cols() == 0 {
        return true;
    }
    if i >= c.length() {
        return false;
    }
    Lifter::new(c.differential(i + 1)).lift(&kernel).is_ok()
}

/// Extends `f0: F_0 -> G_0` to a chain map between the complexes.
pub fn lift_map(f0: &ModuleMap, source: &FreeComplex, target: &FreeComplex) -> Result<ChainMap> {
    let mut maps = alloc::vec![f0.clone()];
    for i in 1..=source.length() {
        let rhs = maps[i - 1].compose(source.differential(i))?;
        let next = if i <= target.length() {
            Lifter::new(target.differential(i)).lift(&rhs)?
        } else if rhs.is_zero() {
            ModuleMap::zero(source.ring(), source.module(i), GradedFreeModule::zero())
        } else {
            return Err(AlgebraError::NotInImage { column: 0 });
        };
        maps.push(next);
    }
    Ok(ChainMap { source: source.clone(), target: target.clone(), maps })
}

/// `h` with `f = d' h + h d`, for a chain map inducing zero on `H_0`.
pub fn null_homotopy(f: &ChainMap) -> Result<Homotopy> {
    let (src, tgt) = (&f.source, &f.target);
    let ring = src.ring();
    let mut maps: Vec<ModuleMap> = Vec::new();
    for i in 0..=src.length() {
        let mut rhs = f.component(i);
        if i > 0 {
            rhs = rhs.sub(&maps[i - 1].compose(src.differential(i))?)?;
        }
        let h = if i < tgt.length() {
            match Lifter::new(tgt.differential(i + 1)).lift(&rhs) {
                Ok(h) => h,
                Err(e) if i == 0 && e.is_lift_failure() => return Err(AlgebraError::NotNullHomotopic),
                Err(AlgebraError::NotInImage { column }) => {
                    return Err(AlgebraError::LiftFailed(alloc::format!("homotopy at degree {i}, column {column}")))
                }
                Err(e) => return Err(e),
            }
        } else if rhs.is_zero() {
            ModuleMap::zero(ring, src.module(i), GradedFreeModule::zero())
        } else if i == 0 {
            return Err(AlgebraError::NotNullHomotopic);
        } else {
            return Err(AlgebraError::LiftFailed(alloc::format!("homotopy at degree {i}")));
        };
        maps.push(h);
    }
    Ok(Homotopy { maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{betti, BettiTable};
    use crate::field::Field;
    use crate::parse::parse_poly;
    use crate::ring::GradedRing;
    use alloc::sync::Arc;

    fn ring() -> Arc<GradedRing> {
        GradedRing::standard(&["x", "y", "z"], Field::default()).unwrap().into_arc()
    }

    fn row(r: &Arc<GradedRing>, gens: &[&str]) -> ModuleMap {
        let entries: Vec<Polynomial> = gens.iter().map(|s| parse_poly(s, r).unwrap()).collect();
        let degrees = entries.iter().map(|p| p.degree().unwrap()).collect();
        ModuleMap::new(r, GradedFreeModule::new(degrees), GradedFreeModule::new(alloc::vec![0]), alloc::vec![entries]).unwrap()
    }

    #[test]
    fn koszul_resolution() {
        let r = ring();
        let res = resolve(&row(&r, &["x", "y", "z"]), 10).unwrap();
        assert_eq!(res.complex().ranks(), alloc::vec![1, 3, 3, 1]);
        assert_eq!(betti(res.complex()), BettiTable::from_degrees(&[&[0], &[1, 1, 1], &[2, 2, 2], &[3]]));
        assert!(res.is_minimal());
        for i in 1..3 {
            assert!(homology_is_zero(res.complex(), i));
        }
        let dual = dualize(res.complex(), -3);
        assert_eq!(betti(&dual), betti(res.complex()));
        assert_eq!(dualize(&dual, -3), *res.complex());
    }

    #[test]
    fn length_limit() {
        let r = ring();
        assert_eq!(resolve(&row(&r, &["x", "y", "z"]), 2).unwrap_err(), AlgebraError::LengthExceeded { max_length: 2 });
    }

    #[test]
    fn redundant_generator_is_cancelled() {
        let r = ring();
        // coker of [[x, 1], [0, y]] is S/(xy) on the second generator, with e_0 = -y e_1.
        let f0 = GradedFreeModule::new(alloc::vec![0, -1]);
        let f1 = GradedFreeModule::new(alloc::vec![1, 0]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = ModuleMap::new(&r, f1, f0, alloc::vec![alloc::vec![p("x"), p("1")], alloc::vec![p("0"), p("y")]]).unwrap();
        let res = resolve(&m, 5).unwrap();
        assert_eq!(res.complex().ranks(), alloc::vec![1, 1]);
        assert_eq!(res.complex().differential(1).entry(0, 0), &p("-x*y"));
        assert_eq!(res.augmentation().entry(0, 0), &p("-y"));
    }

    #[test]
    fn chain_maps_and_homotopies() {
        let r = ring();
        let res = resolve(&row(&r, &["x^2", "y"]), 5).unwrap();
        let c = res.complex();
        let x = ModuleMap::new(&r, c.module(0).shifted(1), c.module(0), alloc::vec![alloc::vec![parse_poly("x", &r).unwrap()]]).unwrap();
        let shifted = FreeComplex::new(&r, c.module(0).shifted(1), c.differentials().iter().map(|d| {
            let (s, t) = (d.source().shifted(1), d.target().shifted(1));
            d.with_modules(s, t).unwrap()
        }).collect()).unwrap();
        let f = lift_map(&x, &shifted, c).unwrap();
        assert!(f.commutes());
        let zero = ChainMap { source: c.clone(), target: c.clone(), maps: Vec::new() };
        assert!(null_homotopy(&zero).unwrap().verifies(&zero));
        let id = lift_map(&ModuleMap::identity(&r, &c.module(0)), c, c).unwrap();
        assert!(id.maps.iter().all(ModuleMap::is_invertible));
        assert_eq!(null_homotopy(&id).unwrap_err(), AlgebraError::NotNullHomotopic);
    }
}
