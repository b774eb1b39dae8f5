//! Local cohomology `H^i_I(M)` as the colimit over `t` of the cohomology of
//! `K^•(y_1^t, …, y_s^t) ⊗ M`, computed one internal degree at a time.
//!
//! In degree `d` the term at position `i` is `⊕_{|S|=i} M_{d + t·deg(y_S)}`,
//! and the comparison map from level `t` to `t+1` multiplies the summand of
//! `S` by `Π_{j∈S} y_j`.

use std::collections::HashMap;

use crate::error::AlgebraError;
use crate::graded::BigradedModule;
use crate::groebner::{buchberger, TermOrder};
use crate::linalg::{kernel, subquotient, GroupDescriptor, Matrix};
use crate::module::{degree_matrix, poly_action_matrix, ModulePresentation};
use crate::poly::{FreeModule, FreeVector, Poly};

pub const DEFAULT_T_MAX: u32 = 16;

/// Consecutive isomorphic comparison maps required before a value is accepted.
const STABLE_STEPS: u32 = 2;

/// Checks that `(ideal)` is primary to the maximal ideal: a pure power of
/// every variable, and of `p` over `Z_(p)`, among the leading terms.
pub fn check_m_primary(m: &ModulePresentation, ideal: &[Poly]) -> Result<(), AlgebraError> {
    let ring = &m.ring;
    let coeff = ring.coeff;
    let gens: Vec<FreeVector> = ideal.iter().map(|p| FreeVector::from_polys(std::slice::from_ref(p))).collect();
    let gb = buchberger(ring, &FreeModule::new(vec![0]), &gens, TermOrder::default())?;
    let lts = gb.leading_terms();
    if !coeff.is_field() && !lts.iter().any(|(_, mono, _)| mono.is_one()) {
        return Err(AlgebraError::NotPrimaryIdeal(coeff.p().to_string()));
    }
    for (i, g) in ring.polynomial.iter().enumerate() {
        let hit = lts.iter().any(|(_, mono, v)| *v == 0 && mono.as_pure_power().is_some_and(|(j, _)| j == i));
        if !hit {
            return Err(AlgebraError::NotPrimaryIdeal(g.name.clone()));
        }
    }
    Ok(())
}

/// Per position, in the free lift of the level-`t` term: the cycles modulo
/// relations and the boundaries together with the relations.
struct Level {
    cycles: Vec<Matrix>,
    boundaries: Vec<Matrix>,
}

struct Setup<'a> {
    m: &'a ModulePresentation,
    ideal: &'a [Poly],
    degs: Vec<i64>,
    subsets: Vec<Vec<Vec<usize>>>,
}

impl Setup<'_> {
    fn s(&self) -> usize {
        self.ideal.len()
    }

    fn block_degree(&self, d: i64, t: u32, set: &[usize]) -> i64 {
        d + t as i64 * set.iter().map(|&j| self.degs[j]).sum::<i64>()
    }

    fn block_dim(&self, e: i64) -> usize {
        self.m.generators.dim_in_degree(&self.m.ring.weights(), e)
    }

    /// Block matrix assembled from per-subset blocks.
    fn assemble(
        &self,
        rows: &[(usize, i64)],
        cols: &[(usize, i64)],
        mut block: impl FnMut(usize, usize) -> Option<Matrix>,
    ) -> Matrix {
        let coeff = self.m.coeff();
        let nr: usize = rows.iter().map(|r| self.block_dim(r.1)).sum();
        let nc: usize = cols.iter().map(|c| self.block_dim(c.1)).sum();
        let mut out = Matrix::zeros(nr, nc);
        let mut r0 = 0;
        for (ri, r) in rows.iter().enumerate() {
            let mut c0 = 0;
            for (ci, c) in cols.iter().enumerate() {
                if let Some(b) = block(ri, ci) {
                    for i in 0..b.rows() {
                        for j in 0..b.cols() {
                            let v = coeff.add(out.get(r0 + i, c0 + j), b.get(i, j));
                            out.set(r0 + i, c0 + j, v);
                        }
                    }
                }
                c0 += self.block_dim(c.1);
            }
            r0 += self.block_dim(r.1);
        }
        out
    }

    fn blocks(&self, d: i64, t: u32, i: usize) -> Vec<(usize, i64)> {
        self.subsets[i].iter().enumerate().map(|(k, set)| (k, self.block_degree(d, t, set))).collect()
    }

    /// Koszul cochain differential lifted to free modules, position `i -> i+1`.
    fn delta(&self, d: i64, t: u32, i: usize) -> Matrix {
        let coeff = self.m.coeff();
        let nv = self.m.ring.nvars();
        let rows = self.blocks(d, t, i + 1);
        let cols = self.blocks(d, t, i);
        self.assemble(&rows, &cols, |ri, ci| {
            let big = &self.subsets[i + 1][ri];
            let small = &self.subsets[i][ci];
            let pos = big.iter().position(|j| !small.contains(j))?;
            let j = big[pos];
            if big.len() != small.len() + 1 || !small.iter().all(|x| big.contains(x)) {
                return None;
            }
            let mut f = self.ideal[j].pow(&coeff, nv, t);
            if pos % 2 == 1 {
                f = f.neg(&coeff);
            }
            Some(poly_action_matrix(&self.m.ring, &self.m.generators, &f, cols[ci].1))
        })
    }

    fn relations(&self, d: i64, t: u32, i: usize) -> Matrix {
        let pres = self.m.presentation_map();
        let blocks = self.blocks(d, t, i);
        let mats: Vec<Matrix> = blocks.iter().map(|b| degree_matrix(&self.m.ring, &pres, b.1)).collect();
        let nr: usize = mats.iter().map(Matrix::rows).sum();
        let mut cols = Vec::new();
        let mut r0 = 0;
        for mat in &mats {
            for c in mat.columns() {
                let mut col = vec![self.m.coeff().zero(); nr];
                col[r0..r0 + mat.rows()].clone_from_slice(&c);
                cols.push(col);
            }
            r0 += mat.rows();
        }
        Matrix::from_columns(nr, &cols)
    }

    /// Comparison map at position `i` from level `t` to level `u ≥ t`.
    fn comparison(&self, d: i64, t: u32, u: u32, i: usize) -> Matrix {
        let coeff = self.m.coeff();
        let nv = self.m.ring.nvars();
        let rows = self.blocks(d, u, i);
        let cols = self.blocks(d, t, i);
        self.assemble(&rows, &cols, |ri, ci| {
            (ri == ci).then(|| {
                let mut f = Poly::constant(&self.m.ring, coeff.one());
                for &j in &self.subsets[i][ci] {
                    f = f.mul(&coeff, &self.ideal[j].pow(&coeff, nv, u - t));
                }
                poly_action_matrix(&self.m.ring, &self.m.generators, &f, cols[ci].1)
            })
        })
    }

    fn level(&self, d: i64, t: u32) -> Level {
        let coeff = self.m.coeff();
        let s = self.s();
        let deltas: Vec<Matrix> = (0..s).map(|i| self.delta(d, t, i)).collect();
        let rels: Vec<Matrix> = (0..=s).map(|i| self.relations(d, t, i)).collect();
        let mut level = Level { cycles: Vec::new(), boundaries: Vec::new() };
        for i in 0..=s {
            let n = rels[i].rows();
            // x with δx ∈ span(R_{i+1}): first block of ker [δ | R_{i+1}]
            let cycles = if i < s {
                let k = kernel(&coeff, &deltas[i].hconcat(&rels[i + 1]));
                k.select_rows(0..n)
            } else {
                Matrix::identity(n)
            };
            let mut boundaries = rels[i].clone();
            if i > 0 {
                boundaries = boundaries.hconcat(&deltas[i - 1]);
            }
            level.cycles.push(cycles);
            level.boundaries.push(boundaries);
        }
        level
    }
}

struct Levels<'a> {
    setup: Setup<'a>,
    d: i64,
    cache: HashMap<u32, Level>,
}

impl Levels<'_> {
    fn get(&mut self, t: u32) -> &Level {
        let (setup, d) = (&self.setup, self.d);
        self.cache.entry(t).or_insert_with(|| setup.level(d, t))
    }

    /// Cycles of level `t` pushed to level `u`, together with the boundaries of `u`.
    fn image_numerator(&mut self, t: u32, u: u32, i: usize) -> Matrix {
        let coeff = self.setup.m.coeff();
        let c = self.setup.comparison(self.d, t, u, i);
        let z = self.get(t).cycles[i].clone();
        c.mul(&coeff, &z).hconcat(&self.get(u).boundaries[i])
    }

    /// Image of `H^i` at level `t` inside level `u`.
    fn image(&mut self, t: u32, u: u32, i: usize) -> GroupDescriptor {
        let numer = self.image_numerator(t, u, i);
        let denom = self.get(u).boundaries[i].clone();
        subquotient(&self.setup.m.coeff(), &numer, &denom).expect("boundaries lie in the image")
    }

    /// Whether the image of level `t` in level `2t` maps isomorphically onto
    /// the image of level `t+1` in level `2t+2`.
    fn stable_step(&mut self, t: u32, i: usize) -> bool {
        if self.image(t, 2 * t, i) != self.image(t + 1, 2 * t + 2, i) {
            return false;
        }
        let small = self.image_numerator(t, 2 * t + 2, i);
        let big = self.image_numerator(t + 1, 2 * t + 2, i);
        subquotient(&self.setup.m.coeff(), &big, &small).is_ok_and(|q| q.is_zero())
    }
}

/// `H^i_I(M)_d` for `d` in the window, positions `0..=s`.
pub fn local_cohomology(
    m: &ModulePresentation,
    ideal: &[Poly],
    window: (i64, i64),
) -> Result<BigradedModule, AlgebraError> {
    local_cohomology_with_cap(m, ideal, window, DEFAULT_T_MAX)
}

/// As [`local_cohomology`], giving up once the level `t` exceeds `t_max`.
/// The value at level `t` is the image of level `t` in level `2t`, which
/// kills the classes that die further up the colimit.
pub fn local_cohomology_with_cap(
    m: &ModulePresentation,
    ideal: &[Poly],
    window: (i64, i64),
    t_max: u32,
) -> Result<BigradedModule, AlgebraError> {
    if window.0 > window.1 {
        return Err(AlgebraError::InvalidWindow(window.0, window.1));
    }
    let mut degs = Vec::with_capacity(ideal.len());
    for y in ideal {
        let d = y.homogeneous_degree()?.ok_or_else(|| AlgebraError::NonHomogeneousInput("zero ideal generator".into()))?;
        degs.push(d);
    }
    check_m_primary(m, ideal)?;
    let coeff = m.coeff();
    let s = ideal.len();
    let w_min = degs.iter().copied().filter(|&e| e > 0).min().unwrap_or(1);
    let g_max = m.max_degree();
    let mut out = BigradedModule::new(coeff, s, window);
    for d in window.0..=window.1 {
        let setup = Setup { m, ideal, subsets: (0..=s).map(|k| subsets(s, k)).collect(), degs: degs.clone() };
        let mut levels = Levels { setup, d, cache: HashMap::new() };
        // every class m / y^a with deg m ≤ g_max is visible from this level on
        let t_start = (((g_max - d).max(0) + w_min - 1) / w_min + 1) as u32;
        let mut streak = vec![0u32; s + 1];
        let mut t = 1;
        loop {
            if t > t_max {
                let position = (0..=s).find(|&i| streak[i] < STABLE_STEPS).unwrap_or(0);
                return Err(AlgebraError::NoStabilization { t_max, degree: d, position });
            }
            for (i, k) in streak.iter_mut().enumerate() {
                *k = if levels.stable_step(t, i) { *k + 1 } else { 0 };
            }
            t += 1;
            levels.cache.retain(|&k, _| k >= t);
            if t >= t_start && streak.iter().all(|&k| k >= STABLE_STEPS) {
                break;
            }
        }
        for i in 0..=s {
            let g = levels.image(t, 2 * t, i);
            out.set(i, d, g);
        }
    }
    Ok(out)
}

fn subsets(s: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << s) {
        if mask.count_ones() as usize == k {
            out.push((0..s).filter(|j| mask & (1 << j) != 0).collect());
        }
    }
    out.sort();
    out
}
