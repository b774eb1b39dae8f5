//! Verifiers for Gorenstein duality statements.
//!
//! Module comparisons are degreewise: equal invariant factors in every
//! degree and, for every ring generator, isomorphic images of the action
//! maps. This is weaker than an isomorphism of graded modules.

use std::fmt::Write as _;

use serde::Serialize;

use crate::coeff::CoefficientRing;
use crate::complex::{ext_complex, ext_into_ring, homology_action_image, homology_of_complex};
use crate::degreewise::{expand_degreewise, is_torsion, matlis_dual, torsion_certificate};
use crate::error::AlgebraError;
use crate::linalg::{cokernel, GroupDescriptor};
use crate::module::{degree_matrix, ModulePresentation};
use crate::poly::Monomial;
use crate::ring::{gorenstein_shift_symbolic, GradedRing, ShiftResult};

pub const COMPARISON_CONTRACT: &str =
    "degreewise invariant factors and per-generator action images; not a full graded-module isomorphism";

fn check_window(w: (i64, i64)) -> Result<(), AlgebraError> {
    if w.0 > w.1 {
        Err(AlgebraError::InvalidWindow(w.0, w.1))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub ring: String,
    pub coefficients: CoefficientRing,
    pub max_i: usize,
    pub window: (i64, i64),
    /// every nonzero `Ext^i_A(k, A)_t` seen
    pub nonzero: Vec<(usize, i64, GroupDescriptor)>,
    /// `(i, b)` when the only nonzero entry is one copy of `k`
    pub observed: Option<(usize, i64)>,
    /// observed `a = b - i`
    pub observed_a: Option<i64>,
    pub symbolic: ShiftResult,
    pub gorenstein: bool,
    pub matches_symbolic: bool,
}

impl GorensteinReport {
    pub fn passed(&self) -> bool {
        self.gorenstein && self.matches_symbolic
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "check-gorenstein {}", self.ring);
        let _ = writeln!(s, "window [{}, {}]  max_i {}", self.window.0, self.window.1, self.max_i);
        for (i, t, g) in &self.nonzero {
            let _ = writeln!(s, "Ext^{i}_{t} = {}", g.format(&self.coefficients));
        }
        match self.observed {
            Some((n, b)) => {
                let _ = writeln!(s, "observed n={n} b={b} a={}", b - n as i64);
            }
            None => {
                let _ = writeln!(s, "observed: not concentrated in a single copy of k");
            }
        }
        let _ = writeln!(s, "symbolic {}", self.symbolic);
        let _ = writeln!(s, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

/// Computes `Ext_A(k, A)` and checks it is one copy of `k`, at position
/// `krull_dimension` and internal degree `b`.
pub fn gorenstein_check(
    ring: &GradedRing,
    max_i: Option<usize>,
    window: Option<(i64, i64)>,
) -> Result<GorensteinReport, AlgebraError> {
    ring.ensure_computable()?;
    let krull = ring.krull_dimension();
    let max_i = max_i.unwrap_or(krull + 1);
    // a polynomial ring has global dimension equal to its Krull dimension
    if max_i < krull {
        return Err(AlgebraError::InconclusiveBeyond(max_i));
    }
    let w_max = ring.max_var_degree();
    let window = window.unwrap_or((-ring.degree_sum() - w_max - 1, w_max + 1));
    check_window(window)?;
    let k = ModulePresentation::residue_field(ring)?;
    let ext = ext_into_ring(&k, max_i, window)?;
    let residue = GroupDescriptor::from_cyclic_exponents(&ring.coeff, &[1]);
    let nonzero: Vec<_> = ext.entries.iter().map(|(&(i, t), g)| (i, t, g.clone())).collect();
    let observed = match nonzero.as_slice() {
        [(i, t, g)] if *g == residue => Some((*i, *t)),
        _ => None,
    };
    let symbolic = gorenstein_shift_symbolic(ring);
    let observed_a = observed.map(|(i, b)| b - i as i64);
    let matches_symbolic =
        observed.is_some_and(|(i, b)| i == krull && b == symbolic.b) && observed_a == Some(symbolic.a);
    Ok(GorensteinReport {
        ring: ring.to_string(),
        coefficients: ring.coeff,
        max_i,
        window,
        nonzero,
        observed,
        observed_a,
        symbolic,
        gorenstein: observed.is_some(),
        matches_symbolic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctRow {
    pub degree: i64,
    pub ext: GroupDescriptor,
    pub dual: GroupDescriptor,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionRow {
    pub generator: String,
    pub from: i64,
    pub to: i64,
    pub ext_image: GroupDescriptor,
    pub dual_image: GroupDescriptor,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctReport {
    pub module: String,
    pub ring: String,
    pub coefficients: CoefficientRing,
    /// Krull dimension of the ring: the only position where Ext may live
    pub n: usize,
    pub b: i64,
    pub a: i64,
    pub window: (i64, i64),
    pub concentrated: bool,
    /// nonzero Ext entries away from position `n`
    pub stray: Vec<(usize, i64, GroupDescriptor)>,
    pub degrees: Vec<UctRow>,
    pub actions: Vec<ActionRow>,
    pub contract: String,
    pub verdict: bool,
}

impl UctReport {
    pub fn to_text(&self) -> String {
        let coeff = self.coeff();
        let mut s = String::new();
        let _ = writeln!(s, "uct-verify {} over {}", self.module, self.ring);
        let _ = writeln!(s, "shifts n={} b={} a={}  window [{}, {}]", self.n, self.b, self.a, self.window.0, self.window.1);
        let _ = writeln!(s, "Ext concentrated at i={}: {}", self.n, if self.concentrated { "yes" } else { "no" });
        for (i, t, g) in &self.stray {
            let _ = writeln!(s, "  stray Ext^{i}_{t} = {}", g.format(&coeff));
        }
        let _ = writeln!(s, "{:>6} | {:<16} | {:<16} | verdict", "degree", format!("Ext^{}", self.n), "Sigma^b M^v");
        for r in &self.degrees {
            let _ = writeln!(
                s,
                "{:>6} | {:<16} | {:<16} | {}",
                r.degree,
                r.ext.format(&coeff),
                r.dual.format(&coeff),
                if r.ok { "ok" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(s, "{:>6} | {:>9} | {:<16} | {:<16} | verdict", "gen", "degree", "Ext image", "dual image");
        for r in &self.actions {
            let _ = writeln!(
                s,
                "{:>6} | {:>4}->{:<3} | {:<16} | {:<16} | {}",
                r.generator,
                r.from,
                r.to,
                r.ext_image.format(&coeff),
                r.dual_image.format(&coeff),
                if r.ok { "ok" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(s, "contract: {}", self.contract);
        let _ = writeln!(s, "verdict: {}", if self.verdict { "PASS" } else { "FAIL" });
        s
    }

    fn coeff(&self) -> CoefficientRing {
        self.coefficients
    }
}

/// Checks `Ext^i_A(M, A) = 0` for `i ≠ n` and `Ext^n_A(M, A) ≅ Σ^b M^∨`
/// degreewise on the window, together with the generator actions.
pub fn uct_verify(m: &ModulePresentation, window: (i64, i64)) -> Result<UctReport, AlgebraError> {
    check_window(window)?;
    let cert = is_torsion(m);
    if !cert.torsion {
        let missing: Vec<String> = cert.missing.iter().map(|(g, x)| format!("{g} has no power of {x}")).collect();
        return Err(AlgebraError::NotTorsion(missing.join(", ")));
    }
    let ring = &m.ring;
    let coeff = ring.coeff;
    let n = ring.krull_dimension();
    let sym = gorenstein_shift_symbolic(ring);
    let b = sym.b;
    let hom = ext_complex(m, n + 1)?;
    let mut ext = homology_of_complex(&hom, window);
    ext.entries.retain(|&(i, _), _| i <= n + 1);
    let stray: Vec<_> = ext.entries.iter().filter(|(&(i, _), _)| i != n).map(|(&(i, t), g)| (i, t, g.clone())).collect();
    let dual = matlis_dual(&expand_degreewise(m, (b - window.1, b - window.0))?).shift(b);
    let degrees: Vec<UctRow> = (window.0..=window.1)
        .map(|t| {
            let (e, d) = (ext.get(n, t), dual.group(t));
            UctRow { degree: t, ok: e == d, ext: e, dual: d }
        })
        .collect();
    let w = ring.weights();
    let mut actions = Vec::new();
    for (x, g) in ring.polynomial.iter().enumerate() {
        let mono = Monomial::var(x, 1, &w);
        for t in window.0..=window.1 - g.degree {
            let busy = !ext.get(n, t).is_zero() || !dual.group(t).is_zero();
            let busy_target = !ext.get(n, t + g.degree).is_zero() || !dual.group(t + g.degree).is_zero();
            if !(busy && busy_target) {
                continue;
            }
            let e = homology_action_image(&hom, n, &mono, t);
            let d = dual.action_image(x, t);
            actions.push(ActionRow { generator: g.name.clone(), from: t, to: t + g.degree, ok: e == d, ext_image: e, dual_image: d });
        }
    }
    let concentrated = stray.is_empty();
    let verdict = concentrated && degrees.iter().all(|r| r.ok) && actions.iter().all(|r| r.ok);
    Ok(UctReport {
        module: m.name.clone(),
        ring: ring.to_string(),
        coefficients: coeff,
        n,
        b,
        a: sym.a,
        window,
        concentrated,
        stray,
        degrees,
        actions,
        contract: COMPARISON_CONTRACT.into(),
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesRow {
    /// cohomological degree of `R^t`
    pub t: i64,
    /// `Ext_K(M_{t+a}, K)`: the torsion of `M_{t+a}`
    pub ext_part: GroupDescriptor,
    /// `Hom_K(M_{t+a+1}, K)`: free of the rank of `M_{t+a+1}`
    pub hom_part: GroupDescriptor,
    /// composition factors of `R^t`: torsion length and free rank
    pub torsion_length: u32,
    pub free_rank: usize,
    /// `Ext^{n}_A(M, A)` in internal degree `n - t`
    pub engine_top: GroupDescriptor,
    /// `Ext^{n-1}_A(M, A)` in internal degree `n - 1 - t`
    pub engine_next: GroupDescriptor,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub module: String,
    pub ring: String,
    pub coefficients: CoefficientRing,
    pub a: i64,
    pub n: usize,
    pub window: (i64, i64),
    pub p_torsion: bool,
    /// nonzero Ext entries outside positions `n - 1` and `n`
    pub stray: Vec<(usize, i64, GroupDescriptor)>,
    pub rows: Vec<SesRow>,
    pub verdict: bool,
}

impl SesReport {
    pub fn to_text(&self) -> String {
        let coeff = self.coefficients;
        let mut s = String::new();
        let _ = writeln!(s, "ses-k {} over {}", self.module, self.ring);
        let _ = writeln!(s, "a={} n={} window [{}, {}] p-torsion: {}", self.a, self.n, self.window.0, self.window.1, self.p_torsion);
        let _ = writeln!(s, "{:>4} | {:<12} | {:<12} | {:<10} | {:<12} | {:<12} | verdict", "t", "Ext_K part", "Hom_K part", "length+rk", "Ext^n", "Ext^(n-1)");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>4} | {:<12} | {:<12} | {:<10} | {:<12} | {:<12} | {}",
                r.t,
                r.ext_part.format(&coeff),
                r.hom_part.format(&coeff),
                format!("{}+{}", r.torsion_length, r.free_rank),
                r.engine_top.format(&coeff),
                r.engine_next.format(&coeff),
                if r.ok { "ok" } else { "MISMATCH" }
            );
        }
        for (i, t, g) in &self.stray {
            let _ = writeln!(s, "stray Ext^{i}_{t} = {}", g.format(&coeff));
        }
        let _ = writeln!(s, "verdict: {}", if self.verdict { "PASS" } else { "FAIL" });
        s
    }
}

/// Composition factors of `R^t` from the short exact sequence
/// `0 -> Σ^a Ext_K(M, K) -> R^* -> Σ^{a+1} Hom_K(M, K) -> 0` over `K = Z_(p)`,
/// cross-checked against `Ext^{n-1}` and `Ext^n` over the ring.
pub fn k_level_ses(m: &ModulePresentation, window: (i64, i64)) -> Result<SesReport, AlgebraError> {
    check_window(window)?;
    let ring = &m.ring;
    let coeff = ring.coeff;
    if coeff.is_field() {
        return Err(AlgebraError::UnsupportedCoefficients);
    }
    let cert = torsion_certificate(m, false);
    if !cert.torsion {
        let missing: Vec<String> = cert.missing.iter().map(|(g, x)| format!("{g} has no power of {x}")).collect();
        return Err(AlgebraError::NotJTorsion(missing.join(", ")));
    }
    let p_torsion = is_torsion(m).torsion;
    let n = ring.krull_dimension();
    let a = gorenstein_shift_symbolic(ring).a;
    let pres = m.presentation_map();
    let piece = |d: i64| cokernel(&coeff, &degree_matrix(ring, &pres, d));
    let ext = ext_into_ring(m, n, (n as i64 - 1 - window.1, n as i64 - window.0))?;
    let stray: Vec<_> = ext
        .entries
        .iter()
        .filter(|(&(i, _), _)| i + 1 < n || i > n)
        .map(|(&(i, t), g)| (i, t, g.clone()))
        .collect();
    let rows: Vec<SesRow> = (window.0..=window.1)
        .map(|t| {
            let ext_part = GroupDescriptor::torsion(piece(t + a).torsion);
            let hom_part = GroupDescriptor::free(piece(t + a + 1).free_rank);
            let engine_top = ext.get(n, n as i64 - t);
            let engine_next = ext.get(n - 1, n as i64 - 1 - t);
            SesRow {
                t,
                torsion_length: ext_part.torsion.iter().sum(),
                free_rank: hom_part.free_rank,
                ok: engine_top == ext_part && engine_next == hom_part,
                ext_part,
                hom_part,
                engine_top,
                engine_next,
            }
        })
        .collect();
    let verdict = stray.is_empty() && rows.iter().all(|r| r.ok) && (!p_torsion || rows.iter().all(|r| r.free_rank == 0));
    Ok(SesReport {
        module: m.name.clone(),
        ring: ring.to_string(),
        coefficients: coeff,
        a,
        n,
        window,
        p_torsion,
        stray,
        rows,
        verdict,
    })
}
