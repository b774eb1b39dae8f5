//! Gröbner bases of submodules of free graded modules over `F_p[x]` and `Z_(p)[x]`.
//!
//! Over `Z_(p)` the bases are strong: every leading term of the submodule is
//! divisible, coefficient included, by a leading term of the basis. Since the
//! coefficients form a valuation ring, the S-polynomial of a pair uses the
//! larger of the two leading valuations, and the G-polynomial of a pair is a
//! monomial multiple of the element with the smaller leading valuation.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::coeff::CoefficientRing;
use crate::error::AlgebraError;
use crate::module::ModulePresentation;
use crate::poly::{FreeModule, FreeVector, ModuleTerm, Monomial};
use crate::ring::GradedRing;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TermOrder {
    /// weighted graded reverse lexicographic, position over term
    #[default]
    GrevlexPositionOverTerm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strength {
    Field,
    StrongDvr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ring: GradedRing,
    pub ambient: FreeModule,
    pub elements: Vec<FreeVector>,
    pub order: TermOrder,
    pub strength: Strength,
}

/// The multiplier `c * m` turning one leading term into a common multiple.
type Multiplier = (crate::coeff::Scalar, Monomial);

fn check_input(ring: &GradedRing, ambient: &FreeModule, gens: &[FreeVector]) -> Result<(), AlgebraError> {
    ring.ensure_computable()?;
    for g in gens {
        g.homogeneous_degree(ambient)?;
    }
    Ok(())
}

/// Scales `v` so that its leading coefficient is `p^k` (1 over a field).
fn normalize_leading(coeff: &CoefficientRing, v: FreeVector) -> FreeVector {
    let Some(lt) = v.leading() else { return v };
    let norm = coeff.normalize(&lt.coeff).expect("nonzero leading coefficient");
    let inv = coeff.div_exact(&coeff.one(), &norm.unit);
    v.scale(coeff, &inv, &Monomial::one(lt.mono.exponents().len()))
}

/// Multipliers `(a_i, a_j)` with `a_i lt(f) = a_j lt(g)`, using the larger
/// leading valuation. `None` when positions differ.
fn s_multipliers(ring: &GradedRing, f: &FreeVector, g: &FreeVector) -> Option<(Multiplier, Multiplier)> {
    let coeff = ring.coeff;
    let (a, b) = (f.leading()?, g.leading()?);
    if a.pos != b.pos {
        return None;
    }
    let lcm = a.mono.lcm(&b.mono, &ring.weights());
    let (va, vb) = (coeff.valuation(&a.coeff)?, coeff.valuation(&b.coeff)?);
    let top = coeff.p_power(va.max(vb));
    let top = if coeff.is_field() { coeff.one() } else { top };
    let ca = coeff.div_exact(&top, &a.coeff);
    let cb = coeff.div_exact(&top, &b.coeff);
    Some(((ca, a.mono.quotient_of(&lcm)), (cb, b.mono.quotient_of(&lcm))))
}

impl GroebnerBasis {
    pub fn coeff(&self) -> CoefficientRing {
        self.ring.coeff
    }

    fn find_divisor(&self, t: &ModuleTerm) -> Option<usize> {
        let coeff = self.coeff();
        self.elements.iter().position(|g| {
            let lt = g.leading().expect("basis elements are nonzero");
            lt.pos == t.pos && lt.mono.divides(&t.mono) && coeff.divides(&lt.coeff, &t.coeff)
        })
    }

    /// Basis element whose leading monomial divides `t` with the least leading
    /// valuation, for coefficient reduction of a term no element divides.
    fn find_partial_divisor(&self, t: &ModuleTerm) -> Option<usize> {
        let coeff = self.coeff();
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, g)| {
                let lt = g.leading().expect("nonzero");
                lt.pos == t.pos && lt.mono.divides(&t.mono)
            })
            .min_by_key(|(i, g)| (coeff.valuation(&g.leading().unwrap().coeff), *i))
            .map(|(i, _)| i)
    }

    /// Full reduction; `quotients` (if given) accumulates `Σ q_k e_k` with
    /// `v = Σ q_k g_k + remainder`.
    pub fn reduce_tracking(&self, v: &FreeVector, mut quotients: Option<&mut FreeVector>) -> FreeVector {
        let coeff = self.coeff();
        let mut cur = v.clone();
        let mut rem: Vec<ModuleTerm> = Vec::new();
        while let Some(lt) = cur.leading().cloned() {
            if let Some(k) = self.find_divisor(&lt) {
                let g = &self.elements[k];
                let glt = g.leading().unwrap();
                let f = coeff.div_exact(&lt.coeff, &glt.coeff);
                let m = glt.mono.quotient_of(&lt.mono);
                cur = cur.sub(&coeff, &g.scale(&coeff, &f, &m));
                if let Some(q) = quotients.as_deref_mut() {
                    *q = q.add(&coeff, &FreeVector { terms: vec![ModuleTerm { pos: k, mono: m, coeff: f }] });
                }
                continue;
            }
            if let Some(k) = self.find_partial_divisor(&lt) {
                // reduce the coefficient to its canonical residue mod p^v(lc)
                let g = &self.elements[k];
                let glt = g.leading().unwrap();
                let kv = coeff.valuation(&glt.coeff).unwrap();
                let residue = coeff.from_bigint(coeff.residue_mod_pk(&lt.coeff, kv));
                let diff = coeff.sub(&lt.coeff, &residue);
                if !diff.is_zero() {
                    let f = coeff.div_exact(&diff, &glt.coeff);
                    let m = glt.mono.quotient_of(&lt.mono);
                    cur = cur.sub(&coeff, &g.scale(&coeff, &f, &m));
                    if let Some(q) = quotients.as_deref_mut() {
                        *q = q.add(&coeff, &FreeVector { terms: vec![ModuleTerm { pos: k, mono: m, coeff: f }] });
                    }
                }
                // the leading term now carries the residue
                if let Some(first) = cur.terms.first() {
                    if first.pos == lt.pos && first.mono == lt.mono {
                        rem.push(cur.terms.remove(0));
                    }
                }
                continue;
            }
            rem.push(cur.terms.remove(0));
        }
        FreeVector { terms: rem }
    }

    pub fn s_polynomial(&self, i: usize, j: usize) -> Option<FreeVector> {
        let coeff = self.coeff();
        let (f, g) = (&self.elements[i], &self.elements[j]);
        let ((ca, ma), (cb, mb)) = s_multipliers(&self.ring, f, g)?;
        Some(f.scale(&coeff, &ca, &ma).sub(&coeff, &g.scale(&coeff, &cb, &mb)))
    }

    /// G-polynomial: combination whose leading coefficient is the gcd of the
    /// two leading coefficients (DVR mode only).
    pub fn g_polynomial(&self, i: usize, j: usize) -> Option<FreeVector> {
        if self.strength == Strength::Field {
            return None;
        }
        let coeff = self.coeff();
        let (f, g) = (&self.elements[i], &self.elements[j]);
        let (a, b) = (f.leading()?, g.leading()?);
        if a.pos != b.pos {
            return None;
        }
        let lcm = a.mono.lcm(&b.mono, &self.ring.weights());
        let pick = if coeff.valuation(&a.coeff) <= coeff.valuation(&b.coeff) { (f, a) } else { (g, b) };
        Some(pick.0.scale(&coeff, &coeff.one(), &pick.1.mono.quotient_of(&lcm)))
    }

    /// Whether every S-pair (and G-pair in DVR mode) reduces to zero.
    pub fn is_complete(&self) -> bool {
        let n = self.elements.len();
        for j in 0..n {
            for i in 0..j {
                for p in [self.s_polynomial(i, j), self.g_polynomial(i, j)].into_iter().flatten() {
                    if !self.reduce_tracking(&p, None).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Leading terms `(position, monomial, valuation)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial, u32)> {
        let coeff = self.coeff();
        self.elements
            .iter()
            .map(|g| {
                let lt = g.leading().unwrap();
                (lt.pos, lt.mono.clone(), coeff.valuation(&lt.coeff).unwrap())
            })
            .collect()
    }

    pub fn element_degrees(&self) -> Vec<i64> {
        self.elements
            .iter()
            .map(|g| g.homogeneous_degree(&self.ambient).ok().flatten().expect("nonzero homogeneous element"))
            .collect()
    }
}

pub fn buchberger(
    ring: &GradedRing,
    ambient: &FreeModule,
    gens: &[FreeVector],
    order: TermOrder,
) -> Result<GroebnerBasis, AlgebraError> {
    check_input(ring, ambient, gens)?;
    let coeff = ring.coeff;
    let strength = if coeff.is_field() { Strength::Field } else { Strength::StrongDvr };
    let mut gb = GroebnerBasis { ring: ring.clone(), ambient: ambient.clone(), elements: Vec::new(), order, strength };
    // (degree of the pair's lcm, j, i): normal strategy, ties by insertion index
    let mut pairs: BTreeSet<(i64, usize, usize)> = BTreeSet::new();

    let push = |gb: &mut GroebnerBasis, pairs: &mut BTreeSet<(i64, usize, usize)>, v: FreeVector| {
        let v = normalize_leading(&coeff, v);
        let k = gb.elements.len();
        let vlt = v.leading().unwrap().clone();
        let pos_deg = ambient.degrees[vlt.pos];
        for (i, g) in gb.elements.iter().enumerate() {
            let glt = g.leading().unwrap();
            if glt.pos == vlt.pos {
                let lcm = glt.mono.lcm(&vlt.mono, &ring.weights());
                pairs.insert((lcm.degree() + pos_deg, k, i));
            }
        }
        gb.elements.push(v);
    };

    for g in gens {
        let r = gb.reduce_tracking(g, None);
        if !r.is_zero() {
            push(&mut gb, &mut pairs, r);
        }
    }
    while let Some(&(d, j, i)) = pairs.iter().next() {
        pairs.remove(&(d, j, i));
        let Some(s) = gb.s_polynomial(i, j) else { continue };
        let r = gb.reduce_tracking(&s, None);
        if !r.is_zero() {
            push(&mut gb, &mut pairs, r);
        }
    }
    autoreduce(&mut gb);
    Ok(gb)
}

/// Drops elements whose leading term is divisible by another's and
/// tail-reduces the rest. Result is still a basis of the same submodule.
fn autoreduce(gb: &mut GroebnerBasis) {
    let coeff = gb.coeff();
    let n = gb.elements.len();
    let lts: Vec<ModuleTerm> = gb.elements.iter().map(|g| g.leading().unwrap().clone()).collect();
    let divides = |a: &ModuleTerm, b: &ModuleTerm| {
        a.pos == b.pos && a.mono.divides(&b.mono) && coeff.divides(&a.coeff, &b.coeff)
    };
    let keep: Vec<usize> = (0..n)
        .filter(|&i| {
            !(0..n).any(|j| j != i && divides(&lts[j], &lts[i]) && (!divides(&lts[i], &lts[j]) || j < i))
        })
        .collect();
    gb.elements = keep.iter().map(|&i| gb.elements[i].clone()).collect();
    for i in 0..gb.elements.len() {
        let g = gb.elements[i].clone();
        let head = FreeVector { terms: vec![g.terms[0].clone()] };
        let tail = FreeVector { terms: g.terms[1..].to_vec() };
        let others = GroebnerBasis {
            elements: gb.elements.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| e.clone()).collect(),
            ..gb.clone()
        };
        gb.elements[i] = head.add(&coeff, &others.reduce_tracking(&tail, None));
    }
}

pub fn normal_form(v: &FreeVector, gb: &GroebnerBasis) -> Result<FreeVector, AlgebraError> {
    if let Some(p) = v.max_pos() {
        if p >= gb.ambient.rank() {
            return Err(AlgebraError::AmbientMismatch { expected: gb.ambient.rank(), found: p + 1 });
        }
    }
    v.homogeneous_degree(&gb.ambient)?;
    Ok(gb.reduce_tracking(v, None))
}

/// Generators of the syzygy module of the basis elements, from the
/// reductions of all S-pairs to zero.
pub fn syzygies(gb: &GroebnerBasis) -> ModulePresentation {
    let coeff = gb.coeff();
    let n = gb.elements.len();
    let nv = gb.ring.nvars();
    let degrees = gb.element_degrees();
    let mut syz = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let Some(((ca, ma), (cb, mb))) = s_multipliers(&gb.ring, &gb.elements[i], &gb.elements[j]) else {
                continue;
            };
            let s = gb.elements[i].scale(&coeff, &ca, &ma).sub(&coeff, &gb.elements[j].scale(&coeff, &cb, &mb));
            let mut q = FreeVector::zero();
            let rem = gb.reduce_tracking(&s, Some(&mut q));
            debug_assert!(rem.is_zero(), "syzygies require a completed basis");
            let v = FreeVector::basis(i, nv)
                .scale(&coeff, &ca, &ma)
                .sub(&coeff, &FreeVector::basis(j, nv).scale(&coeff, &cb, &mb))
                .sub(&coeff, &q);
            if !v.is_zero() {
                syz.push(v);
            }
        }
    }
    let gens = degrees.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d)).collect();
    ModulePresentation::new(gb.ring.clone(), "syz", gens, syz).expect("syzygies are homogeneous")
}
