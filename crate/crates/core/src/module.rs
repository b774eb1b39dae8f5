//! Finitely presented graded modules and their degreewise pieces.

use std::collections::HashMap;

use crate::coeff::CoefficientRing;
use crate::error::AlgebraError;
use crate::linalg::{cokernel, GroupDescriptor, Matrix};
use crate::poly::{FreeMap, FreeModule, FreeVector, Monomial, Poly};
use crate::ring::GradedRing;

/// `M = F / span(relations)` with `F` free on named, graded generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: GradedRing,
    pub name: String,
    pub gen_names: Vec<String>,
    pub generators: FreeModule,
    pub relations: Vec<FreeVector>,
}

impl ModulePresentation {
    pub fn new(
        ring: GradedRing,
        name: impl Into<String>,
        gens: Vec<(String, i64)>,
        relations: Vec<FreeVector>,
    ) -> Result<Self, AlgebraError> {
        ring.ensure_computable()?;
        let (gen_names, degrees): (Vec<String>, Vec<i64>) = gens.into_iter().unzip();
        let generators = FreeModule::new(degrees);
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            r.homogeneous_degree(&generators)?;
            if !r.is_zero() {
                rels.push(r);
            }
        }
        Ok(ModulePresentation { ring, name: name.into(), gen_names, generators, relations: rels })
    }

    /// The free module `A` itself.
    pub fn free(ring: &GradedRing, degrees: Vec<i64>) -> Result<Self, AlgebraError> {
        let gens = degrees.iter().enumerate().map(|(i, &d)| (format!("e{i}"), d)).collect();
        ModulePresentation::new(ring.clone(), "free", gens, Vec::new())
    }

    /// `A / I` for a list of homogeneous ring elements, given as vectors in rank 1.
    pub fn cyclic(ring: &GradedRing, relations: Vec<FreeVector>) -> Result<Self, AlgebraError> {
        ModulePresentation::new(ring.clone(), "cyclic", vec![("m".into(), 0)], relations)
    }

    /// The residue field `k = A / m`: kill every variable, and `p` over `Z_(p)`.
    pub fn residue_field(ring: &GradedRing) -> Result<Self, AlgebraError> {
        let n = ring.nvars();
        let coeff = ring.coeff;
        let mut rels = Vec::new();
        if !coeff.is_field() {
            rels.push(FreeVector::basis(0, n).scale(&coeff, &coeff.from_int(coeff.p() as i64), &Monomial::one(n)));
        }
        let w = ring.weights();
        for i in 0..n {
            rels.push(FreeVector::basis(0, n).scale(&coeff, &coeff.one(), &Monomial::var(i, 1, &w)));
        }
        let mut m = ModulePresentation::cyclic(ring, rels)?;
        m.name = "k".into();
        Ok(m)
    }

    pub fn coeff(&self) -> CoefficientRing {
        self.ring.coeff
    }

    pub fn relation_degrees(&self) -> Vec<i64> {
        self.relations
            .iter()
            .map(|r| r.homogeneous_degree(&self.generators).ok().flatten().unwrap_or(0))
            .collect()
    }

    /// The presentation map `⊕ Σ^{deg r} A -> F`.
    pub fn presentation_map(&self) -> FreeMap {
        FreeMap {
            source: FreeModule::new(self.relation_degrees()),
            target: self.generators.clone(),
            images: self.relations.clone(),
        }
    }

    /// Largest degree among generators and relations.
    pub fn max_degree(&self) -> i64 {
        self.generators.degrees.iter().chain(self.relation_degrees().iter()).copied().max().unwrap_or(0)
    }

    pub fn min_generator_degree(&self) -> Option<i64> {
        self.generators.degrees.iter().copied().min()
    }
}

/// Coefficient matrix of a free map in degree `d`: columns indexed by the
/// monomial basis of the source, rows by that of the target.
pub fn degree_matrix(ring: &GradedRing, map: &FreeMap, d: i64) -> Matrix {
    let w = ring.weights();
    let src = map.source.basis_in_degree(&w, d);
    let tgt = map.target.basis_in_degree(&w, d);
    matrix_between(ring, map, &src, &tgt)
}

pub fn matrix_between(ring: &GradedRing, map: &FreeMap, src: &[(usize, Monomial)], tgt: &[(usize, Monomial)]) -> Matrix {
    let coeff = ring.coeff;
    let index: HashMap<(usize, Monomial), usize> = FreeModule::basis_index(tgt);
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (j, (g, mono)) in src.iter().enumerate() {
        for t in &map.images[*g].terms {
            let key = (t.pos, t.mono.mul(mono));
            let i = *index.get(&key).expect("homogeneous image lands in target basis");
            let v = coeff.add(m.get(i, j), &t.coeff);
            m.set(i, j, v);
        }
    }
    m
}

/// Multiplication by a monomial on a free module, from degree `d` to
/// `d + deg(m)`, in monomial bases.
pub fn monomial_action_matrix(ring: &GradedRing, module: &FreeModule, m: &Monomial, d: i64) -> Matrix {
    let w = ring.weights();
    let src = module.basis_in_degree(&w, d);
    let tgt = module.basis_in_degree(&w, d + m.degree());
    let index = FreeModule::basis_index(&tgt);
    let mut out = Matrix::zeros(tgt.len(), src.len());
    for (j, (g, mono)) in src.iter().enumerate() {
        let i = index[&(*g, mono.mul(m))];
        out.set(i, j, ring.coeff.one());
    }
    out
}

/// Multiplication by a homogeneous polynomial on a free module, from degree
/// `d` to `d + deg(f)`.
pub fn poly_action_matrix(ring: &GradedRing, module: &FreeModule, f: &Poly, d: i64) -> Matrix {
    let w = ring.weights();
    let e = f.homogeneous_degree().ok().flatten().unwrap_or(0);
    let src = module.basis_in_degree(&w, d);
    let tgt = module.basis_in_degree(&w, d + e);
    let index = FreeModule::basis_index(&tgt);
    let mut out = Matrix::zeros(tgt.len(), src.len());
    for (j, (g, mono)) in src.iter().enumerate() {
        for (m, c) in &f.terms {
            let i = index[&(*g, mono.mul(m))];
            let v = ring.coeff.add(out.get(i, j), c);
            out.set(i, j, v);
        }
    }
    out
}

/// Isomorphism type of `M_d` for each `d` in the window.
pub fn degree_pieces(m: &ModulePresentation, window: (i64, i64)) -> Vec<(i64, GroupDescriptor)> {
    let pres = m.presentation_map();
    (window.0..=window.1).map(|d| (d, cokernel(&m.coeff(), &degree_matrix(&m.ring, &pres, d)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn residue_field_over_local_ring() {
        let r = make_ring(CoefficientRing::PLocalIntegers(2), &[("v1", 2)], &[]).unwrap();
        let k = ModulePresentation::residue_field(&r).unwrap();
        assert_eq!(k.relations.len(), 2);
        assert_eq!(k.relation_degrees(), vec![0, 2]);
        let m0 = degree_matrix(&r, &k.presentation_map(), 0);
        assert_eq!(cokernel(&r.coeff, &m0), GroupDescriptor::torsion(vec![1]));
        let m2 = degree_matrix(&r, &k.presentation_map(), 2);
        assert!(cokernel(&r.coeff, &m2).is_zero());
    }

    #[test]
    fn rejects_inhomogeneous_relations() {
        let r = make_ring(CoefficientRing::PrimeField(2), &[("x", 1)], &[]).unwrap();
        let w = r.weights();
        let c = r.coeff;
        let bad = FreeVector::basis(0, 1).scale(&c, &c.one(), &Monomial::var(0, 1, &w)).add(&c, &FreeVector::basis(1, 1));
        let err = ModulePresentation::new(r, "M", vec![("m".into(), 0), ("n".into(), 0)], vec![bad]);
        assert!(matches!(err, Err(AlgebraError::NonHomogeneousInput(_))));
    }
}
