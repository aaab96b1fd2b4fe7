//! Subspaces of `F_q^n` for a prime `q`, kept in reduced row echelon form.

use crate::{Error, Result};

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn inv_mod(a: u8, q: u32) -> u8 {
    // Fermat: a^(q-2)
    let mut result = 1u32;
    let mut base = a as u32 % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result as u8
}

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns.
fn rref(rows: &mut Vec<Vec<u8>>, q: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q) as u32;
        for x in rows[r].iter_mut() {
            *x = (*x as u32 * inv % q) as u8;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c] as u32;
                for k in 0..ncols {
                    let sub = factor * rows[r][k] as u32 % q;
                    rows[i][k] = ((rows[i][k] as u32 + q - sub) % q) as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F_q^n` with its canonical reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    q: u32,
    rows: Vec<Vec<u8>>,
}

impl Subspace {
    /// The span of `vectors`; entries are reduced mod `q`.
    pub fn span(n: usize, q: u32, vectors: &[Vec<u8>]) -> Self {
        let mut rows: Vec<Vec<u8>> = vectors
            .iter()
            .map(|v| {
                debug_assert_eq!(v.len(), n);
                v.iter().map(|&x| (x as u32 % q) as u8).collect()
            })
            .collect();
        rref(&mut rows, q);
        Self { n, q, rows }
    }

    pub fn zero(n: usize, q: u32) -> Self {
        Self { n, q, rows: Vec::new() }
    }

    pub fn full(n: usize, q: u32) -> Self {
        Self {
            n,
            q,
            rows: (0..n).map(|i| unit_vector(n, i)).collect(),
        }
    }

    /// The coordinate line `⟨e_i⟩` (0-based).
    pub fn coordinate_line(n: usize, q: u32, i: usize) -> Self {
        Self::span(n, q, &[unit_vector(n, i)])
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced echelon basis.
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("echelon rows are non-zero"))
            .collect()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::Domain(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.q, self.n, other.q, other.n
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let all: Vec<Vec<u8>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::span(self.n, self.q, &all))
    }

    /// `dim(self ∩ other)` via `dim U + dim V - dim(U + V)`.
    pub fn intersection_dim(&self, other: &Self) -> Result<usize> {
        let s = self.sum(other)?;
        Ok(self.dim() + other.dim() - s.dim())
    }

    /// The annihilator under the standard bilinear form.
    pub fn perp(&self) -> Self {
        let pivots = self.pivots();
        let q = self.q;
        let mut basis = Vec::new();
        for free in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u8; self.n];
            v[free] = 1;
            for (row, &pc) in self.rows.iter().zip(&pivots) {
                v[pc] = ((q - row[free] as u32) % q) as u8;
            }
            basis.push(v);
        }
        Self::span(self.n, q, &basis)
    }

    /// `self ∩ other`, computed as `(U⊥ + V⊥)⊥`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref(&mut rows, self.q);
        rows.len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        Ok(self.sum(other)?.dim() == other.dim())
    }

    /// Image under a linear map.
    pub fn transform(&self, g: &Matrix) -> Result<Self> {
        if g.n != self.n || g.q != self.q {
            return Err(Error::Domain("matrix and subspace live over different spaces".into()));
        }
        let images: Vec<Vec<u8>> = self.rows.iter().map(|r| g.apply(r)).collect();
        Ok(Self::span(self.n, self.q, &images))
    }

    /// All subspaces containing `self` with one more dimension, in
    /// lexicographic order of their complementary direction.
    pub fn one_step_extensions(&self) -> Vec<Self> {
        let pivots = self.pivots();
        let free: Vec<usize> = (0..self.n).filter(|c| !pivots.contains(c)).collect();
        let q = self.q as usize;
        let mut out = Vec::new();
        // normalized vectors supported on free columns: leading entry 1
        let k = free.len();
        let total = q.pow(k as u32);
        for code in 1..total {
            let mut coords = vec![0u8; k];
            let mut c = code;
            for slot in coords.iter_mut().rev() {
                *slot = (c % q) as u8;
                c /= q;
            }
            if coords.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let mut v = vec![0u8; self.n];
            for (&col, &x) in free.iter().zip(&coords) {
                v[col] = x;
            }
            let mut rows = self.rows.clone();
            rows.push(v);
            out.push(Self::span(self.n, self.q, &rows));
        }
        out
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0u8; n];
    v[i] = 1;
    v
}

/// A square matrix over `F_q`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    q: u32,
    entries: Vec<Vec<u8>>,
}

impl Matrix {
    pub fn new(q: u32, entries: Vec<Vec<u8>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix must be square".into()));
        }
        let entries = entries
            .into_iter()
            .map(|r| r.into_iter().map(|x| (x as u32 % q) as u8).collect())
            .collect();
        Ok(Self { n, q, entries })
    }

    pub fn identity(n: usize, q: u32) -> Self {
        Self {
            n,
            q,
            entries: (0..n).map(|i| unit_vector(n, i)).collect(),
        }
    }

    /// Parses `n*n` comma or space separated integers in row-major order.
    pub fn parse(n: usize, q: u32, text: &str) -> Result<Self> {
        let values: Vec<i64> = text
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("matrix entry {s:?} is not an integer")))
            })
            .collect::<Result<_>>()?;
        if values.len() != n * n {
            return Err(Error::Parse(format!(
                "expected {} matrix entries, got {}",
                n * n,
                values.len()
            )));
        }
        let entries = values
            .chunks(n)
            .map(|row| row.iter().map(|&x| x.rem_euclid(q as i64) as u8).collect())
            .collect();
        Self::new(q, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn entries(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        self.entries
            .iter()
            .map(|row| {
                (row.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum::<u32>() % self.q) as u8
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.entries.clone();
        rref(&mut rows, self.q);
        rows.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Every invertible `n×n` matrix over `F_q`, limited to `q^(n²) <= 2^20`.
    pub fn all_invertible(n: usize, q: u32) -> Result<Vec<Self>> {
        let total = (q as u64).checked_pow((n * n) as u32);
        if total.is_none_or(|t| t > 1 << 20) {
            return Err(Error::Size(format!("q^(n^2) too large for n={n}, q={q}")));
        }
        let total = total.unwrap();
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut flat = vec![0u8; n * n];
            for slot in flat.iter_mut().rev() {
                *slot = (c % q as u64) as u8;
                c /= q as u64;
            }
            let m = Self {
                n,
                q,
                entries: flat.chunks(n.max(1)).map(|r| r.to_vec()).collect(),
            };
            if m.is_invertible() {
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Generators of `GL_n(F_q)`: elementary transvections and `diag(a, 1, .., 1)`.
    pub fn gl_generators(n: usize, q: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut m = Self::identity(n, q);
                    m.entries[i][j] = 1;
                    out.push(m);
                }
            }
        }
        if n > 0 {
            for a in 2..q {
                let mut m = Self::identity(n, q);
                m.entries[0][0] = a as u8;
                out.push(m);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..20).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let b = Subspace::span(3, 3, &[vec![1, 0, 1], vec![2, 1, 0]]);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a, b);
        assert_eq!(a.rows(), &[vec![1, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn intersections() {
        let q = 2;
        let xy = Subspace::span(3, q, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let yz = Subspace::span(3, q, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let y = xy.intersection(&yz).unwrap();
        assert_eq!(y, Subspace::coordinate_line(3, q, 1));
        assert_eq!(xy.intersection_dim(&yz).unwrap(), 1);
        // self-orthogonal line over F_2: (1,1,0) is isotropic
        let iso = Subspace::span(3, q, &[vec![1, 1, 0]]);
        assert_eq!(iso.perp().perp(), iso);
        assert_eq!(iso.intersection(&xy).unwrap(), iso);
    }

    #[test]
    fn extension_counts() {
        // lines through the origin of F_q^3: q^2 + q + 1
        for q in [2u32, 3, 5] {
            let lines = Subspace::zero(3, q).one_step_extensions();
            assert_eq!(lines.len() as u32, q * q + q + 1);
            let planes = lines[0].one_step_extensions();
            assert_eq!(planes.len() as u32, q + 1);
            assert!(planes.iter().all(|p| lines[0].is_subspace_of(p).unwrap()));
        }
    }

    #[test]
    fn gl3_f2_has_168_elements() {
        assert_eq!(Matrix::all_invertible(3, 2).unwrap().len(), 168);
        assert_eq!(Matrix::all_invertible(2, 3).unwrap().len(), 48);
    }

    #[test]
    fn matrix_parsing() {
        let m = Matrix::parse(2, 3, "1,2; 0 -1").unwrap();
        assert_eq!(m.entries(), &[vec![1, 2], vec![0, 2]]);
        assert!(matches!(Matrix::parse(2, 3, "1,2,3"), Err(Error::Parse(_))));
        assert!(matches!(Matrix::parse(2, 3, "1,a,3,4"), Err(Error::Parse(_))));
    }
}
