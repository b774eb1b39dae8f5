//! Dense matrices over a coefficient ring and Smith normal form.
//!
//! Over a discrete valuation ring an entry of minimal valuation divides every
//! other entry, so elimination never needs gcd steps: pick a pivot of minimal
//! valuation, clear its row and column, repeat. The diagonal comes out with
//! nondecreasing valuations, normalized to powers of `p`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::coeff::{CoefficientRing, Scalar};
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, num_traits::One::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, coeff: &CoefficientRing, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = coeff.add(out.get(i, j), &coeff.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: impl IntoIterator<Item = usize>) -> Matrix {
        let cols: Vec<usize> = cols.into_iter().collect();
        let mut out = Matrix::zeros(self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> Matrix {
        let rows: Vec<usize> = rows.into_iter().collect();
        let mut out = Matrix::zeros(rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= f * row[src]
    fn row_axpy(&mut self, coeff: &CoefficientRing, dst: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = coeff.sub(self.get(dst, j), &coeff.mul(f, s));
            self.set(dst, j, v);
        }
    }

    /// col[dst] -= f * col[src]
    fn col_axpy(&mut self, coeff: &CoefficientRing, dst: usize, src: usize, f: &Scalar) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = coeff.sub(self.get(i, dst), &coeff.mul(f, s));
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, coeff: &CoefficientRing, i: usize, f: &Scalar) {
        for j in 0..self.cols {
            let v = coeff.mul(self.get(i, j), f);
            self.set(i, j, v);
        }
    }

    fn scale_col(&mut self, coeff: &CoefficientRing, j: usize, f: &Scalar) {
        for i in 0..self.rows {
            let v = coeff.mul(self.get(i, j), f);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `left * A * right = diag`, `left_inv = left^{-1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<Scalar>,
    pub left: Matrix,
    pub left_inv: Matrix,
    pub right: Matrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub left: bool,
    pub right: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms { left: false, right: false };
    pub const ALL: Transforms = Transforms { left: true, right: true };
    pub const LEFT: Transforms = Transforms { left: true, right: false };
    pub const RIGHT: Transforms = Transforms { left: false, right: true };
}

pub fn smith_normal_form(coeff: &CoefficientRing, a: &Matrix, want: Transforms) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut a = a.clone();
    let mut left = if want.left { Matrix::identity(m) } else { Matrix::zeros(0, 0) };
    let mut left_inv = if want.left { Matrix::identity(m) } else { Matrix::zeros(0, 0) };
    let mut right = if want.right { Matrix::identity(n) } else { Matrix::zeros(0, 0) };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot of minimal valuation in the trailing block
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..m {
            for j in t..n {
                if let Some(v) = coeff.valuation(a.get(i, j)) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        if want.left {
            left.swap_rows(t, pi);
            left_inv.swap_cols(t, pi);
        }
        a.swap_cols(t, pj);
        if want.right {
            right.swap_cols(t, pj);
        }
        // normalize the pivot to p^k
        let norm = coeff.normalize(a.get(t, t)).expect("nonzero pivot");
        if !norm.unit.is_one_scalar() {
            let inv = coeff.div_exact(&coeff.one(), &norm.unit);
            a.scale_row(coeff, t, &inv);
            if want.left {
                left.scale_row(coeff, t, &inv);
                left_inv.scale_col(coeff, t, &norm.unit);
            }
        }
        let pivot = a.get(t, t).clone();
        for i in t + 1..m {
            if a.get(i, t).is_zero() {
                continue;
            }
            let f = coeff.div_exact(a.get(i, t), &pivot);
            a.row_axpy(coeff, i, t, &f);
            if want.left {
                left.row_axpy(coeff, i, t, &f);
                // inverse of (row_i -= f row_t) is col_t += f col_i on the inverse
                left_inv.col_axpy(coeff, t, i, &coeff.neg(&f));
            }
        }
        for j in t + 1..n {
            if a.get(t, j).is_zero() {
                continue;
            }
            let f = coeff.div_exact(a.get(t, j), &pivot);
            a.col_axpy(coeff, j, t, &f);
            if want.right {
                right.col_axpy(coeff, j, t, &f);
            }
        }
        diag.push(pivot);
        t += 1;
    }
    SmithForm { diag, left, left_inv, right }
}

trait IsOneScalar {
    fn is_one_scalar(&self) -> bool;
}

impl IsOneScalar for Scalar {
    fn is_one_scalar(&self) -> bool {
        num_traits::One::is_one(self)
    }
}

pub fn rank(coeff: &CoefficientRing, a: &Matrix) -> usize {
    smith_normal_form(coeff, a, Transforms::NONE).rank()
}

/// Basis of the kernel, as the columns of the returned matrix.
pub fn kernel(coeff: &CoefficientRing, a: &Matrix) -> Matrix {
    let s = smith_normal_form(coeff, a, Transforms::RIGHT);
    s.right.select_columns(s.rank()..a.cols)
}

/// Basis of the column span of `gens` (a free submodule).
pub fn span_basis(coeff: &CoefficientRing, gens: &Matrix) -> Matrix {
    let s = smith_normal_form(coeff, gens, Transforms::LEFT);
    let mut b = s.left_inv.select_columns(0..s.rank());
    for (j, d) in s.diag.iter().enumerate() {
        b.scale_col(coeff, j, d);
    }
    b
}

/// Isomorphism type of a finitely generated module over `F_p` or `Z_(p)`:
/// `R^free_rank ⊕ ⊕_i R/p^{torsion[i]}`, torsion exponents sorted decreasingly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
}

impl GroupDescriptor {
    pub fn zero() -> Self {
        GroupDescriptor::default()
    }

    pub fn free(rank: usize) -> Self {
        GroupDescriptor { free_rank: rank, torsion: Vec::new() }
    }

    pub fn torsion(mut exps: Vec<u32>) -> Self {
        exps.retain(|&e| e > 0);
        exps.sort_unstable_by(|a, b| b.cmp(a));
        GroupDescriptor { free_rank: 0, torsion: exps }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Exponent of the (finite) order over the given base: `dim` over a
    /// field, sum of torsion exponents over `Z_(p)`; `None` when infinite.
    pub fn order_exponent(&self, coeff: &CoefficientRing) -> Option<u32> {
        if coeff.is_field() {
            Some(self.free_rank as u32)
        } else if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().sum())
        }
    }

    /// Length as a module (dimension, or total exponent of a finite p-group).
    pub fn length(&self, coeff: &CoefficientRing) -> Option<u32> {
        self.order_exponent(coeff)
    }

    /// Cyclic summand exponents for degreewise data (`Z/p^k`, or `k = 1` per
    /// dimension over `F_p`). Fails for free summands over `Z_(p)`.
    pub fn cyclic_exponents(&self, coeff: &CoefficientRing) -> Option<Vec<u32>> {
        if coeff.is_field() {
            Some(vec![1; self.free_rank])
        } else if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.clone())
        }
    }

    pub fn from_cyclic_exponents(coeff: &CoefficientRing, exps: &[u32]) -> Self {
        if coeff.is_field() {
            GroupDescriptor::free(exps.len())
        } else {
            GroupDescriptor::torsion(exps.to_vec())
        }
    }

    pub fn format(&self, coeff: &CoefficientRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let p = coeff.p();
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            let base = if coeff.is_field() { format!("F_{p}") } else { format!("Z_({p})") };
            parts.push(if self.free_rank == 1 { base } else { format!("{base}^{}", self.free_rank) });
        }
        for &k in &self.torsion {
            parts.push(format!("Z/{}", (p as u128).pow(k)));
        }
        parts.join("+")
    }
}

/// Invariants of `span(numer) / span(denom)`; requires `span(denom) ⊆ span(numer)`.
pub fn subquotient(coeff: &CoefficientRing, numer: &Matrix, denom: &Matrix) -> Result<GroupDescriptor, AlgebraError> {
    assert_eq!(numer.rows, denom.rows, "subquotient of lattices in different ambients");
    let s = smith_normal_form(coeff, numer, Transforms::LEFT);
    let r = s.rank();
    if denom.cols == 0 {
        return Ok(GroupDescriptor::free(r));
    }
    let pd = s.left.mul(coeff, denom);
    let mut coords = Matrix::zeros(r, denom.cols);
    for i in 0..pd.rows {
        for j in 0..pd.cols {
            let v = pd.get(i, j);
            if i >= r {
                if !v.is_zero() {
                    return Err(AlgebraError::InvalidDegreewise {
                        degree: 0,
                        reason: "denominator not contained in numerator".into(),
                    });
                }
                continue;
            }
            if !coeff.divides(&s.diag[i], v) {
                return Err(AlgebraError::InvalidDegreewise {
                    degree: 0,
                    reason: "denominator not contained in numerator".into(),
                });
            }
            coords.set(i, j, coeff.div_exact(v, &s.diag[i]));
        }
    }
    let c = smith_normal_form(coeff, &coords, Transforms::NONE);
    let torsion = c.diag.iter().filter_map(|d| coeff.valuation(d)).filter(|&v| v > 0).collect();
    Ok(GroupDescriptor { free_rank: r - c.rank(), ..GroupDescriptor::torsion(torsion) })
}

/// Invariants of the cokernel of `a` (a presentation matrix, columns = relations).
pub fn cokernel(coeff: &CoefficientRing, a: &Matrix) -> GroupDescriptor {
    let s = smith_normal_form(coeff, a, Transforms::NONE);
    let torsion = s.diag.iter().filter_map(|d| coeff.valuation(d)).filter(|&v| v > 0).collect();
    GroupDescriptor { free_rank: a.rows - s.rank(), ..GroupDescriptor::torsion(torsion) }
}
