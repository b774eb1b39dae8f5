//! Graded ring descriptors and the symbolic Gorenstein shift calculus.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::coeff::CoefficientRing;
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// A graded polynomial ring over `F_p` or `Z_(p)`.
///
/// Only `polynomial` generators take part in computation. `laurent` and
/// `formal` generators exist for the shift calculus: formal generators behave
/// like extra polynomial variables (possibly of degree 0, as for power-series
/// variables) and Laurent generators only make the shift periodic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRing {
    pub coeff: CoefficientRing,
    pub polynomial: Vec<Generator>,
    pub laurent: Vec<Generator>,
    pub formal: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftResult {
    /// internal-degree shift, minus the sum of generator degrees
    pub b: i64,
    /// number of polynomial (and formal) generators
    pub n: i64,
    /// shift of the ungraded base
    pub c: i64,
    /// Gorenstein shift `b + c - n`
    pub a: i64,
    /// present when Laurent generators make `a` defined only modulo this
    pub modulus: Option<i64>,
}

impl ShiftResult {
    /// `a` reduced into `0..modulus` when periodic.
    pub fn a_reduced(&self) -> i64 {
        match self.modulus {
            Some(m) => self.a.mod_floor(&m),
            None => self.a,
        }
    }
}

impl fmt::Display for ShiftResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={} n={} c={} a={}", self.b, self.n, self.c, self.a)?;
        if let Some(m) = self.modulus {
            write!(f, " (mod {m})")?;
        }
        Ok(())
    }
}

pub fn make_ring(
    coeff: CoefficientRing,
    gens: &[(&str, i64)],
    laurent: &[(&str, i64)],
) -> Result<GradedRing, AlgebraError> {
    GradedRing::new(
        coeff,
        gens.iter().map(|&(n, d)| Generator::new(n, d)).collect(),
        laurent.iter().map(|&(n, d)| Generator::new(n, d)).collect(),
        Vec::new(),
    )
}

impl GradedRing {
    pub fn new(
        coeff: CoefficientRing,
        polynomial: Vec<Generator>,
        laurent: Vec<Generator>,
        formal: Vec<Generator>,
    ) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for g in polynomial.iter().chain(&laurent).chain(&formal) {
            if !seen.insert(g.name.as_str()) {
                return Err(AlgebraError::DuplicateName(g.name.clone()));
            }
        }
        for g in polynomial.iter().chain(&laurent) {
            if g.degree <= 0 {
                return Err(AlgebraError::NonPositiveDegree { name: g.name.clone(), degree: g.degree });
            }
        }
        Ok(GradedRing { coeff, polynomial, laurent, formal })
    }

    /// A polynomial ring with no symbolic extras.
    pub fn polynomial(coeff: CoefficientRing, gens: &[(&str, i64)]) -> Result<Self, AlgebraError> {
        make_ring(coeff, gens, &[])
    }

    pub fn nvars(&self) -> usize {
        self.polynomial.len()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.polynomial.iter().map(|g| g.degree).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.polynomial.iter().position(|g| g.name == name)
    }

    /// Whether the Gröbner and homological engines can work over this ring.
    pub fn is_computable(&self) -> bool {
        self.laurent.is_empty() && self.formal.is_empty()
    }

    pub fn ensure_computable(&self) -> Result<(), AlgebraError> {
        if self.is_computable() {
            Ok(())
        } else {
            Err(AlgebraError::UnsupportedCoefficients)
        }
    }

    /// Krull dimension: number of variables plus that of the base.
    pub fn krull_dimension(&self) -> usize {
        self.nvars() + self.coeff.krull_dimension()
    }

    pub fn degree_sum(&self) -> i64 {
        self.polynomial.iter().chain(&self.formal).map(|g| g.degree).sum()
    }

    pub fn max_var_degree(&self) -> i64 {
        self.polynomial.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn min_var_degree(&self) -> i64 {
        self.polynomial.iter().map(|g| g.degree).min().unwrap_or(0)
    }

    /// Same ring with one more polynomial generator.
    pub fn adjoin(&self, name: &str, degree: i64) -> Result<Self, AlgebraError> {
        let mut poly = self.polynomial.clone();
        poly.push(Generator::new(name, degree));
        GradedRing::new(self.coeff, poly, self.laurent.clone(), self.formal.clone())
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |gs: &[Generator]| {
            gs.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect::<Vec<_>>().join(", ")
        };
        write!(f, "{}", self.coeff)?;
        if !self.formal.is_empty() {
            write!(f, "[[{}]]", list(&self.formal))?;
        }
        write!(f, "[{}]", list(&self.polynomial))?;
        if !self.laurent.is_empty() {
            write!(f, "[{}; inverted]", list(&self.laurent))?;
        }
        Ok(())
    }
}

pub fn gorenstein_shift_symbolic(ring: &GradedRing) -> ShiftResult {
    let b = -ring.degree_sum();
    let n = (ring.polynomial.len() + ring.formal.len()) as i64;
    let c = ring.coeff.base_shift();
    // several Laurent variables: the shift is defined modulo the gcd of their degrees
    let modulus = ring.laurent.iter().map(|g| g.degree).reduce(|x, y| x.gcd(&y));
    ShiftResult { b, n, c, a: b + c - n, modulus }
}

/// `D = sum_{i=1..n} |v_i|` with `|v_i| = 2(p^i - 1)`, by the closed formula.
pub fn bp_degree_sum(p: u64, n: u32) -> i64 {
    let p = p as i64;
    2 * ((p.pow(n + 1) - 1) / (p - 1) - (n as i64 + 1))
}

/// `|v_i| = 2(p^i - 1)`.
pub fn bp_generator_degree(p: u64, i: u32) -> i64 {
    2 * ((p as i64).pow(i) - 1)
}

/// Coefficient ring `Z_(p)[v_1, ..., v_n]` of `BP<n>`.
pub fn bp_ring(p: u64, n: u32) -> Result<GradedRing, AlgebraError> {
    let coeff = CoefficientRing::p_local(p)?;
    let gens = (1..=n).map(|i| Generator::new(format!("v{i}"), bp_generator_degree(p, i))).collect();
    GradedRing::new(coeff, gens, Vec::new(), Vec::new())
}

/// Coefficient ring of Johnson-Wilson `E(n+1)`: `BP<n>_*` with `v_{n+1}` inverted.
pub fn johnson_wilson_ring(p: u64, n: u32) -> Result<GradedRing, AlgebraError> {
    let mut r = bp_ring(p, n)?;
    r.laurent.push(Generator::new(format!("v{}", n + 1), bp_generator_degree(p, n + 1)));
    GradedRing::new(r.coeff, r.polynomial, r.laurent, r.formal)
}

/// Lubin-Tate coefficients: Witt-vector base (shift -1), `n` power-series
/// variables of degree 0 and a Laurent variable `u` of degree 2.
pub fn lubin_tate_ring(p: u64, n: u32) -> Result<GradedRing, AlgebraError> {
    let coeff = CoefficientRing::p_local(p)?;
    let formal = (1..=n).map(|i| Generator::new(format!("u{i}"), 0)).collect();
    GradedRing::new(coeff, Vec::new(), vec![Generator::new("u", 2)], formal)
}
