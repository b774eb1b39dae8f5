//! Degreewise finite torsion modules: explicit groups in each degree and
//! explicit action matrices for the ring generators.
//!
//! Each nonzero degree `d` carries `⊕_i Z/p^{e_i}` (over `F_p` every `e_i`
//! is 1). An action matrix from degree `d` to `d + |x|` has one row per
//! target summand and one column per source summand; entry `(i, j)` is the
//! image of the generator of summand `j`, reduced modulo `p^{e_i}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeff::CoefficientRing;
use crate::error::AlgebraError;
use crate::linalg::{smith_normal_form, subquotient, GroupDescriptor, Matrix, Transforms};
use crate::module::{degree_matrix, monomial_action_matrix, ModulePresentation};
use crate::poly::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreewiseModule {
    pub coeff: CoefficientRing,
    /// acting ring generators `(name, degree)`
    pub generators: Vec<(String, i64)>,
    pub window: (i64, i64),
    /// cyclic exponents per nonzero degree, decreasing
    pub groups: BTreeMap<i64, Vec<u32>>,
    /// `(generator, source degree)`; absent means zero
    #[serde(serialize_with = "crate::graded::entry_list")]
    pub actions: BTreeMap<(usize, i64), Vec<Vec<u64>>>,
    /// the module is known to vanish below the window
    pub complete_below: bool,
    /// the module is known to vanish above the window
    pub complete_above: bool,
}

fn modulus(p: u64, e: u32) -> u64 {
    p.pow(e)
}

fn valuation_u64(p: u64, mut x: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Some(v)
}

impl DegreewiseModule {
    /// Validates shapes, well-definedness and commutativity of the actions.
    pub fn new(
        coeff: CoefficientRing,
        generators: Vec<(String, i64)>,
        window: (i64, i64),
        groups: BTreeMap<i64, Vec<u32>>,
        actions: BTreeMap<(usize, i64), Vec<Vec<u64>>>,
        complete_below: bool,
        complete_above: bool,
    ) -> Result<Self, AlgebraError> {
        if window.0 > window.1 {
            return Err(AlgebraError::InvalidWindow(window.0, window.1));
        }
        let mut groups = groups;
        groups.retain(|_, g| !g.is_empty());
        let m = DegreewiseModule { coeff, generators, window, groups, actions, complete_below, complete_above };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let p = self.coeff.p();
        let bad = |degree: i64, reason: String| Err(AlgebraError::InvalidDegreewise { degree, reason });
        for (&d, g) in &self.groups {
            if !(self.window.0..=self.window.1).contains(&d) {
                return bad(d, "group outside the window".into());
            }
            if g.windows(2).any(|w| w[0] < w[1]) || g.contains(&0) {
                return bad(d, "exponents must be positive and decreasing".into());
            }
            if self.coeff.is_field() && g.iter().any(|&e| e != 1) {
                return bad(d, "vector spaces have exponent 1".into());
            }
        }
        for (&(x, d), a) in &self.actions {
            let Some((_, e)) = self.generators.get(x) else {
                return bad(d, format!("unknown generator index {x}"));
            };
            let src = self.exponents(d);
            let tgt = self.exponents(d + e);
            if a.len() != tgt.len() || a.iter().any(|row| row.len() != src.len()) {
                return bad(d, format!("action of {} has the wrong shape", self.generators[x].0));
            }
            for (i, row) in a.iter().enumerate() {
                for (j, &f) in row.iter().enumerate() {
                    if f >= modulus(p, tgt[i]) {
                        return bad(d, "action entry not reduced".into());
                    }
                    // Z/p^b -> Z/p^a, 1 -> f needs b + v(f) >= a
                    if let Some(v) = valuation_u64(p, f) {
                        if src[j] + v < tgt[i] {
                            return bad(d, format!("action of {} is not well defined", self.generators[x].0));
                        }
                    }
                }
            }
        }
        for x in 0..self.generators.len() {
            for y in x + 1..self.generators.len() {
                let (ex, ey) = (self.generators[x].1, self.generators[y].1);
                for &d in self.groups.keys() {
                    let t = d + ex + ey;
                    if self.exponents(t).is_empty() {
                        continue;
                    }
                    let xy = self.compose(self.action(y, d + ex), self.action(x, d), &self.exponents(t));
                    let yx = self.compose(self.action(x, d + ey), self.action(y, d), &self.exponents(t));
                    if xy != yx {
                        return bad(d, format!("actions of {} and {} do not commute", self.generators[x].0, self.generators[y].0));
                    }
                }
            }
        }
        Ok(())
    }

    /// `outer * inner`, rows reduced modulo the target orders.
    fn compose(&self, outer: Vec<Vec<u64>>, inner: Vec<Vec<u64>>, target: &[u32]) -> Vec<Vec<u64>> {
        let p = self.coeff.p();
        let cols = inner.first().map_or(0, Vec::len);
        (0..outer.len())
            .map(|i| {
                let m = modulus(p, target[i]) as u128;
                (0..cols)
                    .map(|j| {
                        let s: u128 = (0..inner.len()).map(|k| outer[i][k] as u128 * inner[k][j] as u128 % m).sum();
                        (s % m) as u64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn exponents(&self, d: i64) -> Vec<u32> {
        self.groups.get(&d).cloned().unwrap_or_default()
    }

    pub fn group(&self, d: i64) -> GroupDescriptor {
        GroupDescriptor::from_cyclic_exponents(&self.coeff, &self.exponents(d))
    }

    /// Action matrix of generator `x` out of degree `d` (zero when not stored).
    pub fn action(&self, x: usize, d: i64) -> Vec<Vec<u64>> {
        let e = self.generators[x].1;
        self.actions.get(&(x, d)).cloned().unwrap_or_else(|| {
            vec![vec![0; self.exponents(d).len()]; self.exponents(d + e).len()]
        })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }

    /// Isomorphism type of the image of `x: M_d -> M_{d+|x|}`.
    pub fn action_image(&self, x: usize, d: i64) -> GroupDescriptor {
        let e = self.generators[x].1;
        let tgt = self.exponents(d + e);
        if tgt.is_empty() || self.exponents(d).is_empty() {
            return GroupDescriptor::zero();
        }
        let c = self.coeff;
        let a = self.action(x, d);
        let rows: Vec<Vec<_>> = a.iter().map(|r| r.iter().map(|&f| c.from_int(f as i64)).collect()).collect();
        let a = Matrix::from_rows(rows, self.exponents(d).len());
        let mut dm = Matrix::zeros(tgt.len(), tgt.len());
        for (i, &k) in tgt.iter().enumerate() {
            dm.set(i, i, c.p_power(k));
        }
        subquotient(&c, &a.hconcat(&dm), &dm).expect("relations lie in the image")
    }

    /// Total length (sum of exponents) over the window.
    pub fn length(&self) -> u32 {
        self.groups.values().flatten().sum()
    }

    /// `Σ^s M`: everything moves up by `s`.
    pub fn shift(&self, s: i64) -> DegreewiseModule {
        DegreewiseModule {
            coeff: self.coeff,
            generators: self.generators.clone(),
            window: (self.window.0 + s, self.window.1 + s),
            groups: self.groups.iter().map(|(&d, g)| (d + s, g.clone())).collect(),
            actions: self.actions.iter().map(|(&(x, d), a)| ((x, d + s), a.clone())).collect(),
            complete_below: self.complete_below,
            complete_above: self.complete_above,
        }
    }

    /// Whether the whole of `M_d` is known (inside the window, or known zero).
    pub fn knows(&self, d: i64) -> bool {
        (d >= self.window.0 || self.complete_below) && (d <= self.window.1 || self.complete_above)
    }
}

/// Degreewise dual `Hom(-, Z/p^∞)` (or the vector-space dual): degree `d`
/// carries the dual of `M_{-d}` and actions are transposed.
pub fn matlis_dual(m: &DegreewiseModule) -> DegreewiseModule {
    let p = m.coeff.p();
    let groups = m.groups.iter().map(|(&d, g)| (-d, g.clone())).collect();
    let mut actions = BTreeMap::new();
    for (&(x, d), a) in &m.actions {
        let e = m.generators[x].1;
        let src = m.exponents(d);
        let tgt = m.exponents(d + e);
        // dual map M_{d+e}^∨ -> M_d^∨ from -(d+e) to -d; a functional on
        // Z/p^a sending 1 to 1/p^a pulls back along f to f p^{b-a} / p^b
        let dual: Vec<Vec<u64>> = (0..src.len())
            .map(|j| {
                (0..tgt.len())
                    .map(|i| {
                        let (a_exp, b_exp) = (tgt[i], src[j]);
                        let f = a[i][j];
                        let v = if b_exp >= a_exp {
                            f as u128 * modulus(p, b_exp - a_exp) as u128
                        } else {
                            (f / modulus(p, a_exp - b_exp)) as u128
                        };
                        (v % modulus(p, b_exp) as u128) as u64
                    })
                    .collect()
            })
            .collect();
        actions.insert((x, -(d + e)), dual);
    }
    DegreewiseModule {
        coeff: m.coeff,
        generators: m.generators.clone(),
        window: (-m.window.1, -m.window.0),
        groups,
        actions,
        complete_below: m.complete_above,
        complete_above: m.complete_below,
    }
}

/// Generators of `M_d` in the monomial basis of `F_d`, with their exponents:
/// `(P, P^{-1} columns kept, exponents)`.
struct Piece {
    left: Matrix,
    kept: Vec<usize>,
    basis: Matrix,
    exps: Vec<u32>,
}

fn piece(m: &ModulePresentation, d: i64) -> Result<Piece, AlgebraError> {
    let coeff = m.coeff();
    let r = degree_matrix(&m.ring, &m.presentation_map(), d);
    let s = smith_normal_form(&coeff, &r, Transforms::LEFT);
    let mut kept = Vec::new();
    let mut exps = Vec::new();
    for (i, dv) in s.diag.iter().enumerate() {
        let v = coeff.valuation(dv).expect("nonzero pivot");
        if v > 0 {
            kept.push(i);
            exps.push(v);
        }
    }
    if s.rank() < r.rows() {
        if !coeff.is_field() {
            return Err(AlgebraError::NotTorsionOnWindow(d));
        }
        for i in s.rank()..r.rows() {
            kept.push(i);
            exps.push(1);
        }
    }
    // order summands by decreasing exponent, stably
    let mut order: Vec<usize> = (0..kept.len()).collect();
    order.sort_by(|&a, &b| exps[b].cmp(&exps[a]));
    let kept: Vec<usize> = order.iter().map(|&k| kept[k]).collect();
    let exps: Vec<u32> = order.iter().map(|&k| exps[k]).collect();
    let basis = s.left_inv.select_columns(kept.iter().copied());
    Ok(Piece { left: s.left, kept, basis, exps })
}

/// Degreewise groups and generator actions of a finitely presented module.
pub fn expand_degreewise(m: &ModulePresentation, window: (i64, i64)) -> Result<DegreewiseModule, AlgebraError> {
    if window.0 > window.1 {
        return Err(AlgebraError::InvalidWindow(window.0, window.1));
    }
    let coeff = m.coeff();
    let w = m.ring.weights();
    let mut pieces = BTreeMap::new();
    for d in window.0..=window.1 {
        pieces.insert(d, piece(m, d)?);
    }
    let mut groups = BTreeMap::new();
    for (&d, pc) in &pieces {
        groups.insert(d, pc.exps.clone());
    }
    let mut actions = BTreeMap::new();
    for x in 0..m.ring.nvars() {
        let e = w[x];
        let mono = Monomial::var(x, 1, &w);
        for d in window.0..=window.1 - e {
            let (src, tgt) = (&pieces[&d], &pieces[&(d + e)]);
            if src.exps.is_empty() || tgt.exps.is_empty() {
                continue;
            }
            let xm = monomial_action_matrix(&m.ring, &m.generators, &mono, d);
            let img = tgt.left.mul(&coeff, &xm.mul(&coeff, &src.basis));
            let a: Vec<Vec<u64>> = tgt
                .kept
                .iter()
                .zip(&tgt.exps)
                .map(|(&row, &k)| (0..img.cols()).map(|j| coeff.residue_u64(img.get(row, j), k)).collect())
                .collect();
            if a.iter().flatten().any(|&f| f != 0) {
                actions.insert((x, d), a);
            }
        }
    }
    let cert = is_torsion(m);
    let complete_below = m.min_generator_degree().is_none_or(|g| window.0 <= g);
    let complete_above = cert.top_degree.is_some_and(|top| window.1 >= top);
    let generators = m.ring.polynomial.iter().map(|g| (g.name.clone(), g.degree)).collect();
    DegreewiseModule::new(coeff, generators, window, groups, actions, complete_below, complete_above)
}

/// Evidence that a module is (or is not) killed by a power of the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub torsion: bool,
    /// per module generator: the killing power of each variable (and of `p`,
    /// listed under the prime's name) found among the leading terms
    pub killing_powers: Vec<(String, Vec<(String, u32)>)>,
    /// generators lacking a killing power, with what is missing
    pub missing: Vec<(String, String)>,
    /// above this degree the module vanishes (when torsion)
    pub top_degree: Option<i64>,
}

/// Leading-term test; `include_p` additionally asks for a power of `p`.
pub fn torsion_certificate(m: &ModulePresentation, include_p: bool) -> TorsionCertificate {
    let coeff = m.coeff();
    let gb = crate::groebner::buchberger(&m.ring, &m.generators, &m.relations, Default::default())
        .expect("presentation is homogeneous");
    let lts = gb.leading_terms();
    let mut killing = Vec::new();
    let mut missing = Vec::new();
    let mut top: Option<i64> = None;
    for (g, name) in m.gen_names.iter().enumerate() {
        let mut powers = Vec::new();
        let mut span = 0;
        for (x, var) in m.ring.polynomial.iter().enumerate() {
            let k = lts
                .iter()
                .filter(|(pos, _, v)| *pos == g && *v == 0)
                .filter_map(|(_, mono, _)| {
                    if mono.is_one() {
                        Some(0)
                    } else {
                        mono.as_pure_power().filter(|&(j, _)| j == x).map(|(_, k)| k)
                    }
                })
                .min();
            match k {
                Some(k) => {
                    powers.push((var.name.clone(), k));
                    span += (k.max(1) as i64 - 1) * var.degree;
                }
                None => missing.push((name.clone(), var.name.clone())),
            }
        }
        if include_p && !coeff.is_field() {
            let k = lts.iter().filter(|(pos, mono, _)| *pos == g && mono.is_one()).map(|(_, _, v)| *v).min();
            match k {
                Some(k) => powers.push((coeff.p().to_string(), k)),
                None => missing.push((name.clone(), coeff.p().to_string())),
            }
        }
        let reach = m.generators.degrees[g] + span;
        top = Some(top.map_or(reach, |t| t.max(reach)));
        killing.push((name.clone(), powers));
    }
    let torsion = missing.is_empty();
    TorsionCertificate {
        torsion,
        killing_powers: killing,
        missing,
        top_degree: if torsion { top } else { None },
    }
}

/// m-power torsion test, with `p` included over `Z_(p)`.
pub fn is_torsion(m: &ModulePresentation) -> TorsionCertificate {
    torsion_certificate(m, true)
}
