//! Reference computations that share no code with the engine: graded
//! pieces by monomial enumeration, complexes of graded free modules written
//! out as integer matrices degree by degree, and homology by integer
//! diagonalization (or elimination mod p over a field).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// `F_p[x_1..x_n]` or `Z_(p)[x_1..x_n]` with the given variable weights.
#[derive(Clone, Debug)]
pub struct Ring {
    pub p: u64,
    pub field: bool,
    pub weights: Vec<i64>,
}

impl Ring {
    pub fn new(p: u64, field: bool, weights: &[i64]) -> Self {
        Ring { p, field, weights: weights.to_vec() }
    }

    /// Krull dimension.
    pub fn dim(&self) -> usize {
        self.weights.len() + usize::from(!self.field)
    }

    /// `-sum |x_i|`.
    pub fn b(&self) -> i64 {
        -self.weights.iter().sum::<i64>()
    }

    /// The residue field as a group.
    pub fn k(&self) -> Group {
        if self.field {
            Group { free: 1, torsion: vec![] }
        } else {
            Group { free: 0, torsion: vec![1] }
        }
    }
}

/// Integer coefficient times exponent vector.
pub type Term = (i64, Vec<u32>);
/// A homogeneous ring element.
pub type Elt = Vec<Term>;

pub fn var(ring: &Ring, i: usize, e: u32) -> Elt {
    let mut m = vec![0; ring.weights.len()];
    m[i] = e;
    vec![(1, m)]
}

pub fn int(ring: &Ring, c: i64) -> Elt {
    vec![(c, vec![0; ring.weights.len()])]
}

pub fn neg(f: &Elt) -> Elt {
    f.iter().map(|(c, m)| (-c, m.clone())).collect()
}

pub fn zero() -> Elt {
    Vec::new()
}

/// Exponent vectors of weighted degree `d`.
pub fn monomials(weights: &[i64], d: i64) -> Vec<Vec<u32>> {
    fn go(weights: &[i64], left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * weights[i] <= left {
            cur.push(e);
            go(weights, left - e as i64 * weights[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, d, &mut Vec::new(), &mut out);
    }
    out
}

/// A finitely generated group over the coefficients: free rank plus
/// `p`-power torsion exponents, largest first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Group {
    pub free: usize,
    pub torsion: Vec<u32>,
}

impl Group {
    pub fn zero() -> Self {
        Group::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn dim(n: usize) -> Self {
        Group { free: n, torsion: vec![] }
    }

    pub fn cyclic(exps: &[u32]) -> Self {
        let mut t = exps.to_vec();
        t.sort_unstable_by(|a, b| b.cmp(a));
        Group { free: 0, torsion: t }
    }
}

/// Term `i` in internal degree `t` is `⊕_s A_{t + offsets[i][s]}`; `maps[i]`
/// goes from term `i` to term `i + 1` with entries `maps[i][row][col]`.
pub struct Complex {
    pub offsets: Vec<Vec<i64>>,
    pub maps: Vec<Vec<Vec<Elt>>>,
}

type IntMatrix = Vec<Vec<BigInt>>;

impl Complex {
    fn basis(&self, ring: &Ring, i: usize, t: i64) -> Vec<(usize, Vec<u32>)> {
        let mut out = Vec::new();
        if let Some(offs) = self.offsets.get(i) {
            for (s, &o) in offs.iter().enumerate() {
                out.extend(monomials(&ring.weights, t + o).into_iter().map(|m| (s, m)));
            }
        }
        out
    }

    /// Matrix of `maps[i]` in degree `t`: rows index term `i + 1`.
    pub fn matrix(&self, ring: &Ring, i: usize, t: i64) -> IntMatrix {
        let src = self.basis(ring, i, t);
        let tgt = self.basis(ring, i + 1, t);
        let mut m = vec![vec![BigInt::zero(); src.len()]; tgt.len()];
        for (c, (s, mono)) in src.iter().enumerate() {
            for (r, row) in self.maps[i].iter().enumerate() {
                for (k, u) in &row[*s] {
                    let prod: Vec<u32> = mono.iter().zip(u).map(|(a, b)| a + b).collect();
                    let at = tgt.iter().position(|(rr, mm)| *rr == r && *mm == prod).expect("map is homogeneous");
                    m[at][c] += *k;
                }
            }
        }
        m
    }

    pub fn dim(&self, ring: &Ring, i: usize, t: i64) -> usize {
        self.basis(ring, i, t).len()
    }

    pub fn squares_to_zero(&self, ring: &Ring, t: i64) -> bool {
        (1..self.maps.len()).all(|i| {
            let a = self.matrix(ring, i - 1, t);
            let b = self.matrix(ring, i, t);
            let inner = a.len();
            b.iter().all(|row| {
                (0..a.first().map_or(0, Vec::len)).all(|c| (0..inner).map(|k| &row[k] * &a[k][c]).sum::<BigInt>().is_zero())
            })
        })
    }

    /// Homology at term `i` in degree `t`.
    pub fn homology(&self, ring: &Ring, i: usize, t: i64) -> Group {
        let n = self.dim(ring, i, t);
        let out = if i < self.maps.len() { self.matrix(ring, i, t) } else { Vec::new() };
        let inc = if i > 0 { self.matrix(ring, i - 1, t) } else { Vec::new() };
        if ring.field {
            let p = ring.p as i64;
            return Group::dim(n - rank_mod_p(&out, p) - rank_mod_p(&inc, p));
        }
        let d_out = diagonal(out);
        let d_in = diagonal(inc);
        let mut torsion: Vec<u32> = d_in.iter().map(|d| valuation(d, ring.p)).filter(|&v| v > 0).collect();
        torsion.sort_unstable_by(|a, b| b.cmp(a));
        Group { free: n - d_out.len() - d_in.len(), torsion }
    }
}

fn valuation(x: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

fn rank_mod_p(m: &IntMatrix, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&BigInt::from(p)).to_i64().unwrap()).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = (1..p).find(|k| k * a[r][c] % p == 1).unwrap();
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Nonzero entries of a diagonal form of an integer matrix under row and
/// column operations over `Z`.
fn diagonal(mut a: IntMatrix) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return out };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let piv = a[k][k].clone();
            let mut clean = true;
            for i in k + 1..rows {
                let q = a[i][k].div_floor(&piv);
                if !q.is_zero() {
                    let pivot_row = a[k].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                        *x -= &q * y;
                    }
                }
                clean &= a[i][k].is_zero();
            }
            for j in k + 1..cols {
                let q = a[k][j].div_floor(&piv);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(k) {
                        let v = &q * &row[k];
                        row[j] -= v;
                    }
                }
                clean &= a[k][j].is_zero();
            }
            if clean {
                out.push(piv);
                break;
            }
        }
    }
    out
}

/// A hand-written free resolution: `degrees[i]` are the generator degrees
/// of `F_i` and `diffs[i]` is the matrix of `F_{i+1} -> F_i` with rows
/// indexing `F_i`.
pub struct Resolution {
    pub degrees: Vec<Vec<i64>>,
    pub diffs: Vec<Vec<Vec<Elt>>>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.degrees.len() - 1
    }

    /// `0 -> F_L -> ... -> F_0 -> 0`; `F_i` sits at term `L - i`.
    pub fn chain(&self) -> Complex {
        let l = self.length();
        Complex {
            offsets: (0..=l).map(|j| self.degrees[l - j].iter().map(|g| -g).collect()).collect(),
            maps: (0..l).map(|j| self.diffs[l - j - 1].clone()).collect(),
        }
    }

    /// `Hom_A(F_•, A)`: term `i` is `⊕ A(g)` over the generators of `F_i`.
    pub fn hom(&self) -> Complex {
        Complex {
            offsets: self.degrees.clone(),
            maps: self.diffs.iter().map(|d| transpose(d)).collect(),
        }
    }

    /// `H_i` of the resolution in degree `d`.
    pub fn homology(&self, ring: &Ring, i: usize, d: i64) -> Group {
        self.chain().homology(ring, self.length() - i, d)
    }
}

fn transpose(m: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

/// Koszul resolution of `A / (f_1, ..., f_m)` for a regular sequence of
/// homogeneous elements given with their degrees.
pub fn koszul(elems: &[(Elt, i64)]) -> Resolution {
    let m = elems.len();
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0u32..1 << m)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..m).filter(|j| s & (1 << j) != 0).collect())
            .collect()
    };
    let mut degrees = Vec::new();
    let mut diffs = Vec::new();
    for k in 0..=m {
        degrees.push(subsets(k).iter().map(|s| s.iter().map(|&j| elems[j].1).sum()).collect());
    }
    for k in 1..=m {
        let (rows, cols) = (subsets(k - 1), subsets(k));
        let mut mat = vec![vec![zero(); cols.len()]; rows.len()];
        for (c, s) in cols.iter().enumerate() {
            for (pos, &j) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
                let r = rows.iter().position(|x| *x == rest).unwrap();
                mat[r][c] = if pos % 2 == 0 { elems[j].0.clone() } else { neg(&elems[j].0) };
            }
        }
        diffs.push(mat);
    }
    Resolution { degrees, diffs }
}
