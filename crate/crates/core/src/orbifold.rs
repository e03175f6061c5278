//! The σ-type subring of the fusion algebra of the θ-orbifold
//! `K(sl₂,k)^⟨θ⟩`.
//!
//! Each σ-type module `M^{2j,j}` splits into two eigenspaces
//! `(M^{2j,j})^ε`, `ε ∈ {0,1}`. The products with the two generators
//! `(0,1)` and `(1,0)` are known in closed form; the full table is
//! reconstructed from them by writing every basis element as a polynomial in
//! the generator multiplication matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{fuse, IrrLabel, Rational};
use crate::fusion_vector::FusionVector;
use crate::matrix::Matrix;
use crate::report::Report;

/// The module `(M^{2j,j})^ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbLabel {
    pub j: u32,
    pub eps: u8,
    pub k: u32,
}

impl OrbLabel {
    pub fn new(j: u32, eps: u8, k: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidLevel {
                k: k as i64,
                reason: "the orbifold needs k ≥ 3",
            });
        }
        if j > k / 2 || eps > 1 {
            return Err(Error::InvalidArgument(format!(
                "orbifold label ({j},{eps}) out of range at k={k}"
            )));
        }
        Ok(OrbLabel { j, eps, k })
    }

    pub fn identity(k: u32) -> Self {
        OrbLabel { j: 0, eps: 0, k }
    }

    /// Position in the basis `(0,0), (0,1), (1,0), (1,1), …`.
    pub fn index(&self) -> usize {
        2 * self.j as usize + self.eps as usize
    }

    pub fn from_index(idx: usize, k: u32) -> Self {
        OrbLabel {
            j: (idx / 2) as u32,
            eps: (idx % 2) as u8,
            k,
        }
    }

    /// All basis labels in order.
    pub fn basis(k: u32) -> Vec<OrbLabel> {
        (0..basis_size(k)).map(|i| OrbLabel::from_index(i, k)).collect()
    }

    /// Flips ε: multiplication by `(0,1)`.
    pub fn flipped(&self) -> Self {
        OrbLabel {
            eps: 1 - self.eps,
            ..*self
        }
    }

    /// `(−1)^{j+ε}` encoded as a parity bit.
    pub fn sign_parity(&self) -> u32 {
        (self.j + self.eps as u32) % 2
    }

    /// The σ-type module `M^{2j,j}` this label is half of.
    pub fn parent(&self) -> IrrLabel {
        IrrLabel::sigma(self.j, self.k).expect("j ≤ ⌊k/2⌋")
    }
}

impl fmt::Display for OrbLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.eps)
    }
}

pub fn basis_size(k: u32) -> usize {
    2 * (k as usize / 2 + 1)
}

/// Conformal weight of the top level of `(M^{2j,j})^ε`.
pub fn orbifold_weight(x: &OrbLabel) -> Rational {
    let (j, k) = (x.j as i64, x.k as i64);
    let base = BigRational::new(BigInt::from(j * (j + 1)), BigInt::from(k + 2));
    if x.eps == 0 {
        return base;
    }
    let gap = if j == 0 {
        3
    } else if 2 * j < k {
        1
    } else {
        2
    };
    base + BigRational::from_integer(BigInt::from(gap))
}

/// Product of a generator with an arbitrary basis label.
pub fn generator_fuse(g: &OrbLabel, x: &OrbLabel) -> Result<FusionVector<OrbLabel>> {
    if g.k != x.k {
        return Err(Error::LevelMismatch(g.k, x.k));
    }
    let k = x.k;
    match (g.j, g.eps) {
        (0, 0) => Ok(FusionVector::single(*x)),
        (0, 1) => Ok(FusionVector::single(x.flipped())),
        (1, 0) => {
            if x.eps == 1 {
                let base = generator_fuse(g, &x.flipped())?;
                return Ok(base.map_labels(OrbLabel::flipped));
            }
            let half = k / 2;
            let l = |j: u32, eps: u8| OrbLabel { j, eps, k };
            let mut out = FusionVector::new();
            let j = x.j;
            if j == 0 {
                out.add(l(1, 0), 1);
            } else if j < half {
                out.add(l(j - 1, 0), 1);
                out.add(l(j, 1), 1);
                out.add(l(j + 1, 0), 1);
            } else if k % 2 == 1 {
                out.add(l(j - 1, 0), 1);
                out.add(l(j, 1), 1);
            } else {
                out.add(l(j - 1, 0), 1);
            }
            Ok(out)
        }
        _ => Err(Error::InvalidArgument(format!(
            "{g} is not one of the generators (0,1), (1,0)"
        ))),
    }
}

/// The full multiplication table of the σ-type orbifold subring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbTable {
    k: u32,
    entries: Vec<Vec<FusionVector<OrbLabel>>>,
}

impl OrbTable {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, x: &OrbLabel, y: &OrbLabel) -> &FusionVector<OrbLabel> {
        &self.entries[x.index()][y.index()]
    }

    pub fn get_mut(&mut self, x: &OrbLabel, y: &OrbLabel) -> &mut FusionVector<OrbLabel> {
        &mut self.entries[x.index()][y.index()]
    }

    pub fn basis(&self) -> Vec<OrbLabel> {
        OrbLabel::basis(self.k)
    }

    /// Bilinear extension of the table.
    pub fn multiply(
        &self,
        a: &FusionVector<OrbLabel>,
        b: &FusionVector<OrbLabel>,
    ) -> FusionVector<OrbLabel> {
        a.product(b, |x, y| self.get(x, y).clone())
    }

    /// Symmetry, identity and associativity; the first failing instance is
    /// returned as an error.
    pub fn self_check(&self) -> Result<()> {
        let basis = self.basis();
        let one = OrbLabel::identity(self.k);
        for x in &basis {
            if *self.get(&one, x) != FusionVector::single(*x) {
                return Err(Error::SelfCheck(format!("(0,0) x {x} is not {x}")));
            }
            for y in &basis {
                if self.get(x, y) != self.get(y, x) {
                    return Err(Error::SelfCheck(format!("{x} x {y} is not symmetric")));
                }
            }
        }
        for x in &basis {
            for y in &basis {
                let xy = self.get(x, y);
                for z in &basis {
                    let left = self.multiply(xy, &FusionVector::single(*z));
                    let right = self.multiply(&FusionVector::single(*x), self.get(y, z));
                    if left != right {
                        return Err(Error::SelfCheck(format!(
                            "associativity fails for ({x}, {y}, {z}): {left} vs {right}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn generator_matrix(g: &OrbLabel, k: u32) -> Result<Matrix<i64>> {
    let n = basis_size(k);
    let mut m = Matrix::zeros(n, n);
    for x in OrbLabel::basis(k) {
        for (y, mult) in generator_fuse(g, &x)?.iter() {
            m[(y.index(), x.index())] += mult as i64;
        }
    }
    Ok(m)
}

/// Reconstructs the whole table from the generator products.
pub fn derive_full_table(k: u32) -> Result<OrbTable> {
    let n = basis_size(k);
    let half = k / 2;
    let a1 = generator_matrix(&OrbLabel::new(0, 1, k)?, k)?;
    let a2 = generator_matrix(&OrbLabel::new(1, 0, k)?, k)?;

    // poly[j] is the matrix of multiplication by (j,0).
    let mut poly: Vec<Matrix<i64>> = vec![Matrix::identity(n), a2.clone()];
    for j in 1..half as usize {
        let next = &(&(&a2 * &poly[j]) - &poly[j - 1]) - &(&a1 * &poly[j]);
        poly.push(next);
    }

    let mut entries = vec![vec![FusionVector::new(); n]; n];
    for x in OrbLabel::basis(k) {
        let px = if x.eps == 0 {
            poly[x.j as usize].clone()
        } else {
            &a1 * &poly[x.j as usize]
        };
        for y in OrbLabel::basis(k) {
            let mut v = FusionVector::new();
            for z in OrbLabel::basis(k) {
                let c = px[(z.index(), y.index())];
                if c < 0 {
                    return Err(Error::SelfCheck(format!(
                        "{x} x {y} has coefficient {c} on {z}"
                    )));
                }
                v.add(z, c as u64);
            }
            entries[x.index()][y.index()] = v;
        }
    }
    let table = OrbTable { k, entries };
    table.self_check()?;
    Ok(table)
}

/// Checks that `(j,ε) ↦ (−1)^{j+ε}` is multiplicative on the table at level `k`.
pub fn verify_sigma_grading(k: u32) -> Result<Report> {
    Ok(verify_sigma_grading_table(&derive_full_table(k)?))
}

pub fn verify_sigma_grading_table(table: &OrbTable) -> Report {
    let mut report = Report::new(format!("sign automorphism of the orbifold ring at k={}", table.k));
    for x in table.basis() {
        for y in table.basis() {
            let expected = (x.sign_parity() + y.sign_parity()) % 2;
            for (z, _) in table.get(&x, &y).iter() {
                report.require(z.sign_parity() == expected, || {
                    format!("{x} x {y} contains {z} of the wrong sign")
                });
            }
        }
    }
    report
}

/// Checks that summing over ε recovers twice the σ-type fusion products,
/// each σ-type module counted once in each half.
pub fn verify_collapse(k: u32) -> Result<Report> {
    let table = derive_full_table(k)?;
    let mut report = Report::new(format!("orbifold table collapses onto fusion ring at k={k}"));
    for j1 in 0..=k / 2 {
        for j2 in 0..=k / 2 {
            let mut sum = FusionVector::new();
            for e1 in 0..2 {
                for e2 in 0..2 {
                    sum.add_scaled(table.get(&OrbLabel { j: j1, eps: e1, k }, &OrbLabel { j: j2, eps: e2, k }), 1);
                }
            }
            let product = fuse(&IrrLabel::sigma(j1, k)?, &IrrLabel::sigma(j2, k)?)?;
            for (m, _) in product.iter() {
                report.require(m.is_sigma_type(), || {
                    format!("M[{},{}] x M[{},{}] contains non-σ-type {m}", 2 * j1, j1, 2 * j2, j2)
                });
            }
            for j in 0..=k / 2 {
                let expected = 2 * product.get(&IrrLabel::sigma(j, k)?);
                for eps in 0..2 {
                    let got = sum.get(&OrbLabel { j, eps, k });
                    report.require(got == expected, || {
                        format!("j1={j1}, j2={j2}: ({j},{eps}) has {got}, fusion ring predicts {expected}")
                    });
                }
            }
        }
    }
    Ok(report)
}
