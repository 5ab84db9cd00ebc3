use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::complexes::{FreeModuleElement, GradedFreeModule, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// The algebra as a quotient `T / I` of a ring containing the base ring's variables.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub ring: Arc<GradedRing>,
    pub ideal: Vec<Polynomial>,
    /// Index in the ambient ring of each base ring variable.
    pub base_vars: Vec<usize>,
    /// Ambient monomials (in the non-base variables) whose classes form the module generators.
    pub basis: Vec<Polynomial>,
}

/// A finite graded algebra `R` over `S`, given as `coker(F_1 -> F_0)` with
/// the class of `1` at generator 0 (degree 0).
#[derive(Clone, Debug)]
pub struct AlgebraOverS {
    base: Arc<GradedRing>,
    presentation: ModuleMap,
    products: Option<Vec<Vec<FreeModuleElement>>>,
    ambient: Option<Ambient>,
    generator_names: Vec<String>,
}

impl AlgebraOverS {
    /// A module with a distinguished unit generator; the product is derived later.
    pub fn from_presentation(presentation: ModuleMap) -> Result<Self> {
        let f0 = presentation.target();
        if f0.rank() == 0 || f0.degree(0) != 0 {
            return Err(AlgebraError::ShapeMismatch("F_0 needs a degree-0 unit generator in slot 0".into()));
        }
        let names = (0..f0.rank()).map(|i| if i == 0 { String::from("1") } else { alloc::format!("x{}", i - 1) }).collect();
        Ok(AlgebraOverS {
            base: presentation.ring().clone(),
            presentation,
            products: None,
            ambient: None,
            generator_names: names,
        })
    }

    /// `R = S`.
    pub fn base_ring(base: &Arc<GradedRing>) -> Self {
        let f0 = GradedFreeModule::new(alloc::vec![0]);
        let presentation = ModuleMap::zero(base, GradedFreeModule::zero(), f0);
        let products = alloc::vec![alloc::vec![FreeModuleElement::basis(base, 1, 0)]];
        AlgebraOverS {
            base: base.clone(),
            presentation,
            products: Some(products),
            ambient: None,
            generator_names: alloc::vec![String::from("1")],
        }
    }

    /// Attaches the products `e_a e_b` expressed in `F_0`.
    pub fn with_products(mut self, products: Vec<Vec<FreeModuleElement>>) -> Result<Self> {
        let r = self.presentation.target().rank();
        if products.len() != r || products.iter().any(|row| row.len() != r || row.iter().any(|v| v.rank() != r)) {
            return Err(AlgebraError::ShapeMismatch("product table must be r x r vectors of length r".into()));
        }
        self.products = Some(products);
        Ok(self)
    }

    pub(crate) fn with_ambient(mut self, ambient: Ambient, names: Vec<String>) -> Self {
        self.ambient = Some(ambient);
        self.generator_names = names;
        self
    }

    pub fn base(&self) -> &Arc<GradedRing> {
        &self.base
    }

    pub fn presentation(&self) -> &ModuleMap {
        &self.presentation
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.presentation.target()
    }

    pub fn products(&self) -> Option<&Vec<Vec<FreeModuleElement>>> {
        self.products.as_ref()
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }
}
