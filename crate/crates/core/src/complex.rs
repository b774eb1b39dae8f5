//! Complexes of free graded modules: Koszul complexes, free resolutions,
//! duals into the ring, homology, and Ext.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::graded::BigradedModule;
use crate::groebner::{buchberger, syzygies, TermOrder};
use crate::linalg::{kernel, subquotient, GroupDescriptor, Matrix};
use crate::module::{degree_matrix, monomial_action_matrix, ModulePresentation};
use crate::poly::{FreeMap, FreeModule, FreeVector, ModuleTerm, Monomial, Poly};
use crate::ring::GradedRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Indexing {
    /// differentials lower the position
    Homological,
    /// differentials raise the position
    Cohomological,
}

/// Free modules at positions `0..=length` and the maps between neighbours.
/// `maps[i]` goes `F_{i+1} -> F_i` (homological) or `F_i -> F_{i+1}`
/// (cohomological); all maps have internal degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ring: GradedRing,
    pub indexing: Indexing,
    pub modules: Vec<FreeModule>,
    pub maps: Vec<FreeMap>,
}

impl ChainComplex {
    pub fn new(
        ring: GradedRing,
        indexing: Indexing,
        modules: Vec<FreeModule>,
        maps: Vec<FreeMap>,
    ) -> Result<Self, AlgebraError> {
        if maps.len() + 1 != modules.len().max(1) {
            return Err(AlgebraError::AmbientMismatch { expected: modules.len().saturating_sub(1), found: maps.len() });
        }
        for (i, m) in maps.iter().enumerate() {
            let (src, tgt) = match indexing {
                Indexing::Homological => (&modules[i + 1], &modules[i]),
                Indexing::Cohomological => (&modules[i], &modules[i + 1]),
            };
            if &m.source != src || &m.target != tgt {
                return Err(AlgebraError::AmbientMismatch { expected: src.rank(), found: m.source.rank() });
            }
            FreeMap::new(m.source.clone(), m.target.clone(), m.images.clone())?;
        }
        Ok(ChainComplex { ring, indexing, modules, maps })
    }

    /// Highest position.
    pub fn length(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    pub fn outgoing(&self, i: usize) -> Option<&FreeMap> {
        match self.indexing {
            Indexing::Homological => i.checked_sub(1).and_then(|k| self.maps.get(k)),
            Indexing::Cohomological => self.maps.get(i),
        }
    }

    pub fn incoming(&self, i: usize) -> Option<&FreeMap> {
        match self.indexing {
            Indexing::Homological => self.maps.get(i),
            Indexing::Cohomological => i.checked_sub(1).and_then(|k| self.maps.get(k)),
        }
    }

    /// Whether every composite of consecutive differentials vanishes exactly.
    pub fn is_complex(&self) -> bool {
        let c = self.ring.coeff;
        self.maps.windows(2).all(|w| match self.indexing {
            Indexing::Homological => w[0].compose(&c, &w[1]).is_zero(),
            Indexing::Cohomological => w[1].compose(&c, &w[0]).is_zero(),
        })
    }
}

fn subsets(s: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..s {
            cur.push(j);
            go(j + 1, s, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, s, k, &mut Vec::new(), &mut out);
    out
}

/// Homological Koszul complex on `elems`: basis `e_{j1} ∧ … ∧ e_{ji}` with
/// `j1 < … < ji`, `d(e_S) = Σ_k (-1)^k y_{j_k} e_{S \ j_k}`.
pub fn koszul_complex(ring: &GradedRing, elems: &[Poly]) -> Result<ChainComplex, AlgebraError> {
    ring.ensure_computable()?;
    let coeff = ring.coeff;
    let mut degs = Vec::with_capacity(elems.len());
    for e in elems {
        let d = e.homogeneous_degree()?.ok_or_else(|| AlgebraError::NonHomogeneousInput("zero Koszul element".into()))?;
        degs.push(d);
    }
    let s = elems.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=s).map(|k| subsets(s, k)).collect();
    let modules: Vec<FreeModule> = bases
        .iter()
        .map(|b| FreeModule::new(b.iter().map(|set| set.iter().map(|&j| degs[j]).sum()).collect()))
        .collect();
    let mut maps = Vec::with_capacity(s);
    for k in 1..=s {
        let images = bases[k]
            .iter()
            .map(|set| {
                let mut v = FreeVector::zero();
                for (pos, &j) in set.iter().enumerate() {
                    let mut rest = set.clone();
                    rest.remove(pos);
                    let target = bases[k - 1].iter().position(|b| *b == rest).expect("face is a subset");
                    let sign = if pos % 2 == 0 { coeff.one() } else { coeff.neg(&coeff.one()) };
                    let term = FreeVector::basis(target, ring.nvars()).mul_poly(&coeff, &elems[j]);
                    v = v.add(&coeff, &term.scale(&coeff, &sign, &Monomial::one(ring.nvars())));
                }
                v
            })
            .collect();
        maps.push(FreeMap { source: modules[k].clone(), target: modules[k - 1].clone(), images });
    }
    Ok(ChainComplex { ring: ring.clone(), indexing: Indexing::Homological, modules, maps })
}

/// Resolution `F_len -> … -> F_0 -> M` by iterated Gröbner syzygies. Stops
/// early once a syzygy module vanishes, so `length()` may be shorter.
pub fn free_resolution(m: &ModulePresentation, length: usize) -> Result<ChainComplex, AlgebraError> {
    let ring = &m.ring;
    ring.ensure_computable()?;
    let mut modules = vec![m.generators.clone()];
    let mut maps = Vec::new();
    let mut ambient = m.generators.clone();
    let mut gens = m.relations.clone();
    for step in 0..length {
        let gb = buchberger(ring, &ambient, &gens, TermOrder::default())?;
        if gb.elements.is_empty() {
            break;
        }
        let src = FreeModule::new(gb.element_degrees());
        maps.push(FreeMap { source: src.clone(), target: ambient.clone(), images: gb.elements.clone() });
        modules.push(src.clone());
        if step + 1 == length {
            break;
        }
        let syz = syzygies(&gb);
        ambient = src;
        gens = syz.relations;
    }
    Ok(ChainComplex { ring: ring.clone(), indexing: Indexing::Homological, modules, maps })
}

fn drop_position(v: &FreeVector, r: usize) -> FreeVector {
    FreeVector {
        terms: v
            .terms
            .iter()
            .filter(|t| t.pos != r)
            .map(|t| ModuleTerm { pos: if t.pos > r { t.pos - 1 } else { t.pos }, ..t.clone() })
            .collect(),
    }
}

fn find_unit_entry(c: &ChainComplex, map: &FreeMap) -> Option<(usize, usize)> {
    let coeff = c.ring.coeff;
    map.images.iter().enumerate().find_map(|(col, v)| {
        v.terms.iter().find(|t| t.mono.is_one() && coeff.is_unit(&t.coeff)).map(|t| (t.pos, col))
    })
}

/// Splits off every trivial summand `A --unit--> A` of a homological complex.
/// The result is homotopy equivalent to the input.
pub fn minimize(c: &ChainComplex) -> ChainComplex {
    assert_eq!(c.indexing, Indexing::Homological, "minimization runs on homological complexes");
    let coeff = c.ring.coeff;
    let nv = c.ring.nvars();
    let mut out = c.clone();
    let mut k = 0;
    while k < out.maps.len() {
        let Some((r, col)) = find_unit_entry(&out, &out.maps[k]) else {
            k += 1;
            continue;
        };
        let d = &out.maps[k];
        let pivot_col = d.images[col].clone();
        let u = pivot_col.terms.iter().find(|t| t.pos == r && t.mono.is_one()).unwrap().coeff.clone();
        let uinv = coeff.div_exact(&coeff.one(), &u);
        let mut images = Vec::with_capacity(d.images.len() - 1);
        for (j, v) in d.images.iter().enumerate() {
            if j == col {
                continue;
            }
            let f = v.component(r).scale(&coeff, &uinv, &Monomial::one(nv));
            let reduced = if f.is_zero() { v.clone() } else { v.sub(&coeff, &pivot_col.mul_poly(&coeff, &f)) };
            images.push(drop_position(&reduced, r));
        }
        let mut src = d.source.degrees.clone();
        src.remove(col);
        let mut tgt = d.target.degrees.clone();
        tgt.remove(r);
        let (src, tgt) = (FreeModule::new(src), FreeModule::new(tgt));
        out.maps[k] = FreeMap { source: src.clone(), target: tgt.clone(), images };
        if let Some(up) = out.maps.get_mut(k + 1) {
            up.images = up.images.iter().map(|v| drop_position(v, col)).collect();
            up.target = src.clone();
        }
        if k > 0 {
            let down = &mut out.maps[k - 1];
            down.images.remove(r);
            down.source = tgt.clone();
        }
        out.modules[k + 1] = src;
        out.modules[k] = tgt;
    }
    while out.modules.len() > 1 && out.modules.last().is_some_and(|m| m.rank() == 0) {
        out.modules.pop();
        out.maps.pop();
    }
    out
}

/// `Hom(C, A)`: transposed maps, negated generator degrees, opposite indexing.
pub fn hom_complex_into_ring(c: &ChainComplex) -> ChainComplex {
    let coeff = c.ring.coeff;
    ChainComplex {
        ring: c.ring.clone(),
        indexing: match c.indexing {
            Indexing::Homological => Indexing::Cohomological,
            Indexing::Cohomological => Indexing::Homological,
        },
        modules: c.modules.iter().map(|m| FreeModule::new(m.degrees.iter().map(|d| -d).collect())).collect(),
        maps: c.maps.iter().map(|m| m.transpose(&coeff)).collect(),
    }
}

/// Homology at every position, degreewise on `window`.
pub fn homology_of_complex(c: &ChainComplex, window: (i64, i64)) -> BigradedModule {
    let coeff = c.ring.coeff;
    let w = c.ring.weights();
    let mut out = BigradedModule::new(coeff, c.length(), window);
    for (i, module) in c.modules.iter().enumerate() {
        for t in window.0..=window.1 {
            let n = module.dim_in_degree(&w, t);
            if n == 0 {
                continue;
            }
            let numer = match c.outgoing(i) {
                Some(m) => kernel(&coeff, &degree_matrix(&c.ring, m, t)),
                None => Matrix::identity(n),
            };
            let denom = match c.incoming(i) {
                Some(m) => degree_matrix(&c.ring, m, t),
                None => Matrix::zeros(n, 0),
            };
            let h = subquotient(&coeff, &numer, &denom).expect("boundaries lie in cycles");
            out.set(i, t, h);
        }
    }
    out
}

/// Image of multiplication by `mono` from `H_i` in degree `t` to degree
/// `t + deg(mono)`.
pub fn homology_action_image(c: &ChainComplex, i: usize, mono: &Monomial, t: i64) -> GroupDescriptor {
    let coeff = c.ring.coeff;
    let w = c.ring.weights();
    let module = &c.modules[i];
    let (n, n2) = (module.dim_in_degree(&w, t), module.dim_in_degree(&w, t + mono.degree()));
    if n == 0 || n2 == 0 {
        return GroupDescriptor::zero();
    }
    let cycles = match c.outgoing(i) {
        Some(m) => kernel(&coeff, &degree_matrix(&c.ring, m, t)),
        None => Matrix::identity(n),
    };
    let boundaries = match c.incoming(i) {
        Some(m) => degree_matrix(&c.ring, m, t + mono.degree()),
        None => Matrix::zeros(n2, 0),
    };
    let x = monomial_action_matrix(&c.ring, module, mono, t);
    subquotient(&coeff, &x.mul(&coeff, &cycles).hconcat(&boundaries), &boundaries).expect("boundaries lie in the span")
}

/// `Hom(F, A)` for a minimized resolution `F` of `M` of length `max_i + 1`;
/// its cohomology in positions `0..=max_i` is `Ext^*_A(M, A)`.
pub fn ext_complex(m: &ModulePresentation, max_i: usize) -> Result<ChainComplex, AlgebraError> {
    let res = minimize(&free_resolution(m, max_i + 1)?);
    Ok(hom_complex_into_ring(&res))
}

/// `Ext^i_A(M, A)_t` for `i ≤ max_i` and `t` in the window.
pub fn ext_into_ring(m: &ModulePresentation, max_i: usize, window: (i64, i64)) -> Result<BigradedModule, AlgebraError> {
    if window.0 > window.1 {
        return Err(AlgebraError::InvalidWindow(window.0, window.1));
    }
    let mut h = homology_of_complex(&ext_complex(m, max_i)?, window);
    h.entries.retain(|&(i, _), _| i <= max_i);
    h.max_position = max_i;
    Ok(h)
}

/// Degreewise pieces of `H_0` of a homological complex, as the cokernel of
/// the first differential.
pub fn zeroth_homology_presentation(c: &ChainComplex) -> Option<ModulePresentation> {
    let gens = c.modules.first()?.degrees.iter().enumerate().map(|(i, &d)| (format!("e{i}"), d)).collect();
    let rels = c.maps.first().map(|m| m.images.clone()).unwrap_or_default();
    ModulePresentation::new(c.ring.clone(), "H0", gens, rels).ok()
}
