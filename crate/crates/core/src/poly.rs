//! Monomials, polynomials and elements of free graded modules.
//!
//! Terms are kept sorted in decreasing term order: weighted graded reverse
//! lexicographic on monomials, refined position-over-term on free modules
//! (lower generator index is larger).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{CoefficientRing, Scalar};
use crate::error::AlgebraError;
use crate::ring::GradedRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: i64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn from_exponents(exps: Vec<u32>, weights: &[i64]) -> Self {
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
        Monomial { exps, degree }
    }

    pub fn var(i: usize, power: u32, weights: &[i64]) -> Self {
        let mut exps = vec![0; weights.len()];
        exps[i] = power;
        Monomial { exps, degree: power as i64 * weights[i] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[i64]) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exponents(exps, weights)
    }

    /// If this is a pure power `x_i^e` (e > 0), returns `(i, e)`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Weighted graded reverse lexicographic order.
pub fn cmp_monomials(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| {
        for (x, y) in a.exps.iter().zip(&b.exps).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Position-over-term comparison of module terms.
pub fn cmp_module_terms(pa: usize, a: &Monomial, pb: usize, b: &Monomial) -> Ordering {
    pb.cmp(&pa).then_with(|| cmp_monomials(a, b))
}

/// All monomials of weighted degree `d`, in decreasing term order.
pub fn monomials_of_degree(weights: &[i64], d: i64) -> Vec<Monomial> {
    fn rec(weights: &[i64], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let mut e = 0u32;
        while e as i64 * w <= left {
            cur.push(e);
            rec(weights, i + 1, left - e as i64 * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    if d < 0 {
        return Vec::new();
    }
    debug_assert!(weights.iter().all(|&w| w > 0));
    let mut raw = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut raw);
    let mut monos: Vec<Monomial> = raw.into_iter().map(|e| Monomial::from_exponents(e, weights)).collect();
    monos.sort_by(|a, b| cmp_monomials(b, a));
    monos
}

/// Homogeneous or not, a polynomial is a sorted list of nonzero terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(ring: &GradedRing, c: Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(m, c)] }
    }

    pub fn var(ring: &GradedRing, i: usize) -> Self {
        Poly::monomial(Monomial::var(i, 1, &ring.weights()), Scalar::one())
    }

    pub fn from_terms(coeff: &CoefficientRing, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = coeff.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous (None for zero).
    pub fn homogeneous_degree(&self) -> Result<Option<i64>, AlgebraError> {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(AlgebraError::NonHomogeneousInput("polynomial has terms of different degrees".into()))
        }
    }

    pub fn add(&self, coeff: &CoefficientRing, other: &Poly) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match cmp_monomials(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = coeff.add(&a.1, &b.1);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { terms: out }
    }

    pub fn scale(&self, coeff: &CoefficientRing, c: &Scalar, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let v = coeff.mul(cc, c);
                (!v.is_zero()).then(|| (mm.mul(m), v))
            })
            .collect();
        Poly { terms }
    }

    pub fn neg(&self, coeff: &CoefficientRing) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), coeff.neg(c))).collect() }
    }

    pub fn mul(&self, coeff: &CoefficientRing, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &other.terms {
            acc = acc.add(coeff, &self.scale(coeff, c, m));
        }
        acc
    }

    pub fn pow(&self, coeff: &CoefficientRing, nvars: usize, e: u32) -> Poly {
        let mut acc = Poly { terms: vec![(Monomial::one(nvars), Scalar::one())] };
        for _ in 0..e {
            acc = acc.mul(coeff, self);
        }
        acc
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if c.is_one() {
                    m.format(names)
                } else {
                    format!("{}*{}", c, m.format(names))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A free graded module `⊕ Σ^{d_i} A`, described by its generator degrees.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeModule {
    pub degrees: Vec<i64>,
}

impl FreeModule {
    pub fn new(degrees: Vec<i64>) -> Self {
        FreeModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }

    /// Monomial basis of the degree-`d` piece: `(generator, monomial)` pairs.
    pub fn basis_in_degree(&self, weights: &[i64], d: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, &g) in self.degrees.iter().enumerate() {
            for m in monomials_of_degree(weights, d - g) {
                out.push((i, m));
            }
        }
        out
    }

    pub fn basis_index(basis: &[(usize, Monomial)]) -> HashMap<(usize, Monomial), usize> {
        basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
    }

    pub fn dim_in_degree(&self, weights: &[i64], d: i64) -> usize {
        self.degrees.iter().map(|&g| monomials_of_degree(weights, d - g).len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// An element of a free module, terms sorted decreasingly (position over term).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeVector {
    pub terms: Vec<ModuleTerm>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: Vec::new() }
    }

    pub fn basis(pos: usize, nvars: usize) -> Self {
        FreeVector { terms: vec![ModuleTerm { pos, mono: Monomial::one(nvars), coeff: Scalar::one() }] }
    }

    pub fn from_terms(coeff: &CoefficientRing, mut terms: Vec<ModuleTerm>) -> Self {
        terms.sort_by(|a, b| cmp_module_terms(b.pos, &b.mono, a.pos, &a.mono));
        let mut out: Vec<ModuleTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mono == t.mono => {
                    last.coeff = coeff.add(&last.coeff, &t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        FreeVector { terms: out }
    }

    /// `Σ_i p_i e_i` from a list of polynomials.
    pub fn from_polys(polys: &[Poly]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in polys.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push(ModuleTerm { pos, mono: m.clone(), coeff: c.clone() });
            }
        }
        // already sorted: positions ascending, monomials descending within each
        FreeVector { terms }
    }

    pub fn component(&self, pos: usize) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|t| t.pos == pos).map(|t| (t.mono.clone(), t.coeff.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&ModuleTerm> {
        self.terms.first()
    }

    pub fn max_pos(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos).max()
    }

    /// Total degree inside `module`, checking homogeneity.
    pub fn homogeneous_degree(&self, module: &FreeModule) -> Result<Option<i64>, AlgebraError> {
        let mut d = None;
        for t in &self.terms {
            let g = *module.degrees.get(t.pos).ok_or(AlgebraError::AmbientMismatch {
                expected: module.rank(),
                found: t.pos + 1,
            })?;
            let e = g + t.mono.degree();
            match d {
                None => d = Some(e),
                Some(x) if x != e => {
                    return Err(AlgebraError::NonHomogeneousInput(format!(
                        "vector has terms in degrees {x} and {e}"
                    )))
                }
                _ => {}
            }
        }
        Ok(d)
    }

    pub fn add(&self, coeff: &CoefficientRing, other: &FreeVector) -> FreeVector {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match cmp_module_terms(a.pos, &a.mono, b.pos, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = coeff.add(&a.coeff, &b.coeff);
                    if !c.is_zero() {
                        out.push(ModuleTerm { pos: a.pos, mono: a.mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        FreeVector { terms: out }
    }

    pub fn sub(&self, coeff: &CoefficientRing, other: &FreeVector) -> FreeVector {
        self.add(coeff, &other.neg(coeff))
    }

    pub fn neg(&self, coeff: &CoefficientRing) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| ModuleTerm { pos: t.pos, mono: t.mono.clone(), coeff: coeff.neg(&t.coeff) })
                .collect(),
        }
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn scale(&self, coeff: &CoefficientRing, c: &Scalar, m: &Monomial) -> FreeVector {
        if c.is_zero() {
            return FreeVector::zero();
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let v = coeff.mul(&t.coeff, c);
                (!v.is_zero()).then(|| ModuleTerm { pos: t.pos, mono: t.mono.mul(m), coeff: v })
            })
            .collect();
        FreeVector { terms }
    }

    pub fn mul_poly(&self, coeff: &CoefficientRing, p: &Poly) -> FreeVector {
        let mut acc = FreeVector::zero();
        for (m, c) in &p.terms {
            acc = acc.add(coeff, &self.scale(coeff, c, m));
        }
        acc
    }

    /// Relabels positions through `map` (old position -> new position).
    pub fn reindex(&self, coeff: &CoefficientRing, map: impl Fn(usize) -> usize) -> FreeVector {
        FreeVector::from_terms(
            coeff,
            self.terms
                .iter()
                .map(|t| ModuleTerm { pos: map(t.pos), mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        )
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let max = self.max_pos().unwrap_or(0);
        let parts: Vec<String> = (0..=max)
            .map(|i| self.component(i))
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("({})e{}", p.format(names), i))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// A homogeneous degree-0 map of free modules, stored as the images of the
/// source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub images: Vec<FreeVector>,
}

impl FreeMap {
    pub fn new(source: FreeModule, target: FreeModule, images: Vec<FreeVector>) -> Result<Self, AlgebraError> {
        if images.len() != source.rank() {
            return Err(AlgebraError::AmbientMismatch { expected: source.rank(), found: images.len() });
        }
        for (j, v) in images.iter().enumerate() {
            if let Some(d) = v.homogeneous_degree(&target)? {
                if d != source.degrees[j] {
                    return Err(AlgebraError::NonHomogeneousInput(format!(
                        "image of generator {j} has degree {d}, expected {}",
                        source.degrees[j]
                    )));
                }
            }
        }
        Ok(FreeMap { source, target, images })
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let images = vec![FreeVector::zero(); source.rank()];
        FreeMap { source, target, images }
    }

    pub fn entry(&self, row: usize, col: usize) -> Poly {
        self.images[col].component(row)
    }

    pub fn apply(&self, coeff: &CoefficientRing, v: &FreeVector) -> FreeVector {
        let mut acc = FreeVector::zero();
        for t in &v.terms {
            acc = acc.add(coeff, &self.images[t.pos].scale(coeff, &t.coeff, &t.mono));
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, coeff: &CoefficientRing, inner: &FreeMap) -> FreeMap {
        FreeMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            images: inner.images.iter().map(|v| self.apply(coeff, v)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(FreeVector::is_zero)
    }

    /// The dual map `Hom(target, A) -> Hom(source, A)`; generator degrees negate.
    pub fn transpose(&self, coeff: &CoefficientRing) -> FreeMap {
        let source = FreeModule::new(self.target.degrees.iter().map(|d| -d).collect());
        let target = FreeModule::new(self.source.degrees.iter().map(|d| -d).collect());
        let mut cols: Vec<Vec<ModuleTerm>> = vec![Vec::new(); self.target.rank()];
        for (j, v) in self.images.iter().enumerate() {
            for t in &v.terms {
                cols[t.pos].push(ModuleTerm { pos: j, mono: t.mono.clone(), coeff: t.coeff.clone() });
            }
        }
        let images = cols.into_iter().map(|ts| FreeVector::from_terms(coeff, ts)).collect();
        FreeMap { source, target, images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;

    #[test]
    fn grevlex_on_equal_degree() {
        let w = [1, 1, 1];
        let xy = Monomial::from_exponents(vec![1, 1, 0], &w);
        let xz = Monomial::from_exponents(vec![1, 0, 1], &w);
        let y2 = Monomial::from_exponents(vec![0, 2, 0], &w);
        assert_eq!(cmp_monomials(&xy, &xz), Ordering::Greater);
        assert_eq!(cmp_monomials(&y2, &xz), Ordering::Greater);
    }

    #[test]
    fn enumerates_weighted_monomials() {
        assert_eq!(monomials_of_degree(&[1], 3).len(), 1);
        assert_eq!(monomials_of_degree(&[1, 1], 3).len(), 4);
        assert_eq!(monomials_of_degree(&[2, 4], 8).len(), 3);
        assert_eq!(monomials_of_degree(&[2], 3).len(), 0);
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
        assert!(monomials_of_degree(&[1], -1).is_empty());
    }

    #[test]
    fn vector_arithmetic_cancels() {
        let c = CoefficientRing::PrimeField(3);
        let w = [1];
        let x = Monomial::var(0, 1, &w);
        let v = FreeVector::from_terms(
            &c,
            vec![ModuleTerm { pos: 0, mono: x.clone(), coeff: c.from_int(1) }, ModuleTerm {
                pos: 1,
                mono: Monomial::one(1),
                coeff: c.from_int(2),
            }],
        );
        assert!(v.sub(&c, &v).is_zero());
        let w2 = v.add(&c, &v).add(&c, &v);
        assert!(w2.is_zero());
    }

    #[test]
    fn transpose_negates_degrees() {
        let c = CoefficientRing::PrimeField(2);
        let w = [1];
        let x = Monomial::var(0, 1, &w);
        let src = FreeModule::new(vec![1]);
        let tgt = FreeModule::new(vec![0]);
        let img = FreeVector { terms: vec![ModuleTerm { pos: 0, mono: x, coeff: c.one() }] };
        let f = FreeMap::new(src, tgt, vec![img]).unwrap();
        let t = f.transpose(&c);
        assert_eq!(t.source.degrees, vec![0]);
        assert_eq!(t.target.degrees, vec![-1]);
        assert_eq!(t.transpose(&c), f);
    }
}
