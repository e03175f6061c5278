//! Linear algebra over the two-element field with bit-packed rows.

use std::fmt;

/// A vector over F₂ of length at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vec {
    bits: u64,
    len: u8,
}

impl F2Vec {
    pub const MAX_LEN: usize = 64;

    pub fn zero(len: usize) -> Self {
        assert!(len <= Self::MAX_LEN, "F2Vec holds at most 64 coordinates");
        F2Vec { bits: 0, len: len as u8 }
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= Self::MAX_LEN);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        F2Vec {
            bits: bits & mask,
            len: len as u8,
        }
    }

    pub fn unit(i: usize, len: usize) -> Self {
        assert!(i < len);
        Self::from_bits(1 << i, len)
    }

    /// Reads coordinates from any integer-like slice, reducing mod 2.
    pub fn from_parities<I>(values: I) -> Self
    where
        I: IntoIterator<Item = bool>,
    {
        let mut v = F2Vec::zero(0);
        for b in values {
            assert!((v.len as usize) < Self::MAX_LEN);
            if b {
                v.bits |= 1 << v.len;
            }
            v.len += 1;
        }
        v
    }

    pub fn from_slice(values: &[u8]) -> Self {
        Self::from_parities(values.iter().map(|&b| b & 1 == 1))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len());
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard dot product.
    pub fn dot(&self, other: &Self) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i) as u8).collect()
    }

    /// Sub-vector of coordinates `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self::from_bits(self.bits >> start, len)
    }

    /// Concatenates vectors.
    pub fn concat(parts: &[F2Vec]) -> Self {
        let mut out = F2Vec::zero(0);
        for p in parts {
            assert!(out.len() + p.len() <= Self::MAX_LEN);
            out.bits |= p.bits << out.len;
            out.len += p.len;
        }
        out
    }
}

impl std::ops::Add for F2Vec {
    type Output = F2Vec;
    fn add(self, rhs: F2Vec) -> F2Vec {
        assert_eq!(self.len, rhs.len, "adding F2 vectors of different lengths");
        F2Vec {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl std::ops::AddAssign for F2Vec {
    fn add_assign(&mut self, rhs: F2Vec) {
        *self = *self + rhs;
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[")?;
        for i in 0..self.len() {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// A matrix over F₂ stored as bit rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F2Matrix {
    rows: Vec<F2Vec>,
    cols: usize,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows: vec![F2Vec::zero(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            rows: (0..n).map(|i| F2Vec::unit(i, n)).collect(),
            cols: n,
        }
    }

    pub fn from_rows(rows: Vec<F2Vec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        F2Matrix { rows, cols }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        F2Matrix {
            rows: (0..rows)
                .map(|r| F2Vec::from_parities((0..cols).map(|c| f(r, c))))
                .collect(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> F2Vec {
        self.rows[r]
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.nrows(), |r, c| self.get(c, r))
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &F2Vec) -> F2Vec {
        assert_eq!(x.len(), self.nrows());
        let mut out = F2Vec::zero(self.cols);
        for i in x.ones() {
            out += self.rows[i];
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &F2Vec) -> F2Vec {
        assert_eq!(x.len(), self.cols);
        F2Vec::from_parities(self.rows.iter().map(|r| r.dot(x)))
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.nrows());
        F2Matrix {
            rows: self.rows.iter().map(|r| other.left_apply(r)).collect(),
            cols: other.cols,
        }
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        F2Matrix {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| *a + *b).collect(),
            cols: self.cols,
        }
    }

    /// Bilinear evaluation `x · self · yᵀ`.
    pub fn bilinear(&self, x: &F2Vec, y: &F2Vec) -> bool {
        self.left_apply(x).dot(y)
    }

    /// Reduced row echelon form; returns (matrix, pivot columns).
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && rows[i].get(c) {
                    let pr = rows[r];
                    rows[i] += pr;
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        (
            F2Matrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the row space.
    pub fn row_basis(&self) -> Vec<F2Vec> {
        let (m, piv) = self.rref();
        m.rows[..piv.len()].to_vec()
    }

    /// Solves `self · x = b` for a column vector `x`; `None` when inconsistent.
    pub fn solve(&self, b: &F2Vec) -> Option<F2Vec> {
        assert_eq!(b.len(), self.nrows());
        let n = self.cols;
        assert!(n < F2Vec::MAX_LEN, "augmented system too wide");
        let aug: Vec<F2Vec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| F2Vec::concat(&[*r, F2Vec::from_parities([b.get(i)])]))
            .collect();
        let (m, piv) = F2Matrix::from_rows(aug, n + 1).rref();
        if piv.contains(&n) {
            return None;
        }
        let mut x = F2Vec::zero(n);
        for (r, &c) in piv.iter().enumerate() {
            x.set(c, m.rows[r].get(n));
        }
        Some(x)
    }

    /// Enumerates the row space spanned by `basis` (all 2^dim combinations).
    pub fn span(basis: &[F2Vec], len: usize) -> Vec<F2Vec> {
        assert!(basis.len() < 32, "span too large to enumerate");
        let mut out = Vec::with_capacity(1 << basis.len());
        for mask in 0u64..(1u64 << basis.len()) {
            let mut v = F2Vec::zero(len);
            for (i, b) in basis.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    v += *b;
                }
            }
            out.push(v);
        }
        out
    }
}
