//! Positive-definite lattices given by exact rational Gram matrices.
//!
//! Coordinates are always with respect to the lattice's own basis, as row
//! vectors. A sublattice is a matrix whose rows are coordinates of its basis
//! in the parent. Rescaling by `√2` is Gram doubling, so every quantity stays
//! rational.

mod coxeter;
mod enumerate;
pub mod orders;
mod roots;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{clear_denominators, to_integer, to_rational, Matrix};
use crate::normal_form::{hermite, intersect, left_kernel, smith, solve_in_hermite};
use crate::scalar::{common_denominator, ExactInt, Q};

pub use coxeter::{
    alpha_difference, c_nu_radical, coxeter_matrix, coxeter_nu, glue_lambda, glue_lambda_i,
    permutation_tau, sqrt2_a, weyl_pairing_row, weyl_vector,
};
pub use enumerate::{coset_min_norm, minimum, shell, vectors_up_to, ShortVector};
pub use roots::{
    cartan_matrix, r_cap_p_dual_index, reflection, root_lattice, weyl_group_order, RootFamily,
};

/// Embedding of a lattice's basis into a parent lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T: ExactInt> {
    pub basis: Matrix<Q<T>>,
    pub parent_gram: Matrix<Q<T>>,
}

/// A positive-definite lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice<T: ExactInt = BigInt> {
    gram: Matrix<Q<T>>,
    embedding: Option<Embedding<T>>,
}

/// A sublattice, as rows of coordinates in the parent basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice<T: ExactInt = BigInt> {
    basis: Matrix<Q<T>>,
}

/// A linear map on a lattice: row `i` is the image of basis vector `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry<T: ExactInt = BigInt> {
    matrix: Matrix<Q<T>>,
}

/// A vector of the rational span, e.g. an element of the dual lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlueVector<T: ExactInt = BigInt> {
    pub coords: Vec<Q<T>>,
}

/// `L*/L` with its invariant factors and generators.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantGroup<T: ExactInt = BigInt> {
    /// Nontrivial invariant factors `d₁ | d₂ | …`.
    pub invariant_factors: Vec<T>,
    /// One generator of each cyclic factor, in the lattice's coordinates.
    pub generators: Vec<GlueVector<T>>,
    /// `q(g) = (m/2)⟨g,g⟩ mod m` for each generator, when the exponent `m`
    /// is an odd prime and the lattice is even.
    pub q_values: Option<Vec<T>>,
    pub exponent: T,
}

impl<T: ExactInt> Lattice<T> {
    /// Builds a lattice from a symmetric positive-definite Gram matrix.
    pub fn new(gram: Matrix<Q<T>>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Lattice {
            gram,
            embedding: None,
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(crate::matrix::rational_from_i64(rows))
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<Q<T>> {
        &self.gram
    }

    pub fn embedding(&self) -> Option<&Embedding<T>> {
        self.embedding.as_ref()
    }

    pub fn parent_basis(&self) -> Option<&Matrix<Q<T>>> {
        self.embedding.as_ref().map(|e| &e.basis)
    }

    /// Forgets the parent.
    pub fn detached(&self) -> Self {
        Lattice {
            gram: self.gram.clone(),
            embedding: None,
        }
    }

    pub fn determinant(&self) -> Q<T> {
        self.gram.determinant()
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram[(i, i)].to_integer().is_even())
    }

    pub fn inner(&self, x: &[Q<T>], y: &[Q<T>]) -> Q<T> {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[Q<T>]) -> Q<T> {
        self.inner(x, x)
    }

    pub fn norm_int(&self, x: &[T]) -> Q<T> {
        let xq: Vec<Q<T>> = x.iter().cloned().map(Ratio::from_integer).collect();
        self.norm(&xq)
    }

    /// `⟨x, e_i⟩` for every basis vector.
    pub fn pairings(&self, x: &[Q<T>]) -> Vec<Q<T>> {
        self.gram.left_apply(x)
    }

    /// Gram matrix scaled by `c`.
    pub fn rescale(&self, c: &Q<T>) -> Result<Self> {
        if *c <= Q::zero() {
            return Err(Error::InvalidArgument("rescaling factor must be positive".into()));
        }
        Ok(Lattice {
            gram: self.gram.scale(c),
            embedding: None,
        })
    }

    /// Tensor product; the basis `e_i ⊗ f_j` is ordered with `j` fastest.
    pub fn tensor(&self, other: &Self) -> Self {
        Lattice {
            gram: self.gram.kron(&other.gram),
            embedding: None,
        }
    }

    pub fn direct_sum(parts: &[Self]) -> Self {
        let grams: Vec<Matrix<Q<T>>> = parts.iter().map(|p| p.gram.clone()).collect();
        Lattice {
            gram: Matrix::block_diag(&grams),
            embedding: None,
        }
    }

    /// The dual lattice, embedded in this lattice's rational span.
    pub fn dual(&self) -> Self {
        let inv = self.gram.inverse().expect("positive definite Gram is invertible");
        Lattice {
            gram: inv.clone(),
            embedding: Some(Embedding {
                basis: inv,
                parent_gram: self.gram.clone(),
            }),
        }
    }

    /// The lattice spanned by a sublattice basis, embedded in `self`.
    pub fn restrict(&self, s: &Sublattice<T>) -> Self {
        let b = &s.basis;
        Lattice {
            gram: &(b * &self.gram) * &b.transpose(),
            embedding: Some(Embedding {
                basis: b.clone(),
                parent_gram: self.gram.clone(),
            }),
        }
    }

    /// True when the stored embedding reproduces the Gram matrix exactly.
    pub fn embedding_is_consistent(&self) -> bool {
        match &self.embedding {
            None => true,
            Some(e) => (&(&e.basis * &e.parent_gram) * &e.basis.transpose()) == self.gram,
        }
    }

    /// Membership of a rational vector in the dual lattice.
    pub fn in_dual(&self, x: &[Q<T>]) -> bool {
        self.pairings(x).iter().all(|v| v.is_integer())
    }

    /// Index `[L* : L]`, i.e. `|det G|` for integral lattices.
    pub fn dual_index(&self) -> Result<T> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(self.determinant().to_integer())
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup<T>> {
        let g = to_integer(&self.gram).ok_or(Error::NotIntegral)?;
        let s = smith(&g);
        let v_inv = to_rational(&s.v).inverse()?;
        let g_inv = self.gram.inverse()?;
        let lifted = &v_inv * &g_inv;
        let mut factors = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in s.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            factors.push(d.clone());
            generators.push(GlueVector {
                coords: lifted.row(i).to_vec(),
            });
        }
        let mut order: Vec<usize> = (0..factors.len()).collect();
        order.sort_by(|&a, &b| factors[a].cmp(&factors[b]));
        let factors: Vec<T> = order.iter().map(|&i| factors[i].clone()).collect();
        let generators: Vec<GlueVector<T>> = order.iter().map(|&i| generators[i].clone()).collect();
        let exponent = factors.iter().fold(T::one(), |acc, d| acc.lcm(d));
        let mut group = DiscriminantGroup {
            invariant_factors: factors,
            generators,
            q_values: None,
            exponent,
        };
        if self.is_even() && is_odd_prime(&group.exponent) {
            let q: Option<Vec<T>> = group
                .generators
                .iter()
                .map(|gen| group.q_value(self, &gen.coords))
                .collect();
            group.q_values = q;
        }
        Ok(group)
    }
}

fn is_odd_prime<T: ExactInt>(m: &T) -> bool {
    let Some(m) = m.to_u64() else { return false };
    m >= 3 && m % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

impl<T: ExactInt> DiscriminantGroup<T> {
    pub fn order(&self) -> T {
        self.invariant_factors
            .iter()
            .fold(T::one(), |acc, d| acc * d.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// `q(x) = (m/2)⟨x,x⟩ mod m` for a dual vector `x`, where `m` is the
    /// exponent; `None` if the value is not integral.
    pub fn q_value(&self, lattice: &Lattice<T>, x: &[Q<T>]) -> Option<T> {
        let m = Ratio::from_integer(self.exponent.clone());
        let two = Ratio::from_integer(T::one() + T::one());
        let v = m.clone() / two * lattice.norm(x);
        v.is_integer().then(|| v.to_integer().mod_floor(&self.exponent))
    }

    /// Unreduced value `m⟨x,y⟩` of the discriminant bilinear form.
    pub fn f_value(&self, lattice: &Lattice<T>, x: &[Q<T>], y: &[Q<T>]) -> Q<T> {
        Ratio::from_integer(self.exponent.clone()) * lattice.inner(x, y)
    }
}

impl<T: ExactInt> Sublattice<T> {
    /// Sublattice spanned by the given rows (which may be dependent).
    pub fn new(generators: Matrix<Q<T>>) -> Self {
        if generators.rows() == 0 {
            return Sublattice { basis: generators };
        }
        let (int, d) = clear_denominators(&generators);
        let h = hermite(&int);
        let dq = Ratio::from_integer(d);
        Sublattice {
            basis: to_rational(&h).map(|v| v / dq.clone()),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::new(crate::matrix::rational_from_i64(rows))
    }

    pub fn from_integer(m: &Matrix<T>) -> Self {
        Self::new(to_rational(m))
    }

    /// The zero sublattice of a rank-`n` lattice.
    pub fn zero(n: usize) -> Self {
        Sublattice {
            basis: Matrix::zeros(0, n),
        }
    }

    /// The whole lattice of rank `n`.
    pub fn full(n: usize) -> Self {
        Sublattice {
            basis: Matrix::identity(n),
        }
    }

    pub fn basis(&self) -> &Matrix<Q<T>> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn integer_basis(&self) -> Option<Matrix<T>> {
        to_integer(&self.basis)
    }

    /// Image under a linear map given in the parent's coordinates.
    pub fn image(&self, g: &Isometry<T>) -> Self {
        Self::new(&self.basis * &g.matrix)
    }

    pub fn contains(&self, x: &[Q<T>]) -> bool {
        self.coordinates(x).is_some_and(|c| c.iter().all(|v| v.is_integer()))
    }

    /// Coordinates of `x` in this sublattice's basis, if `x` is in its span.
    pub fn coordinates(&self, x: &[Q<T>]) -> Option<Vec<Q<T>>> {
        if self.rank() == 0 {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        self.basis.solve_left(x)
    }

    pub fn contains_all(&self, other: &Self) -> bool {
        other.basis.iter_rows().all(|r| self.contains(r))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.basis == other.basis
    }

    /// Sum of two sublattices.
    pub fn sum(&self, other: &Self) -> Self {
        Self::new(self.basis.vstack(&other.basis))
    }

    /// Intersection of two sublattices of the same parent.
    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.ambient_rank();
        if self.rank() == 0 || other.rank() == 0 {
            return Self::zero(n);
        }
        let d = common_denominator(self.basis.iter_rows().flatten().cloned().collect::<Vec<_>>().as_slice())
            .lcm(&common_denominator(
                other.basis.iter_rows().flatten().cloned().collect::<Vec<_>>().as_slice(),
            ));
        let dq = Ratio::from_integer(d);
        let a = to_integer(&self.basis.map(|v| v.clone() * dq.clone())).expect("cleared");
        let b = to_integer(&other.basis.map(|v| v.clone() * dq.clone())).expect("cleared");
        let i = intersect(&a, &b);
        if i.rows() == 0 {
            return Self::zero(n);
        }
        Sublattice {
            basis: to_rational(&i).map(|v| v / dq.clone()),
        }
    }

    /// Index `[self : sub]` for sublattices of equal rank.
    pub fn index_of(&self, sub: &Self) -> Result<T> {
        if sub.rank() != self.rank() {
            return Err(Error::NotFullRank);
        }
        let mut rows = Vec::new();
        for r in sub.basis.iter_rows() {
            let c = self.coordinates(r).ok_or(Error::NotInLattice)?;
            rows.push(c);
        }
        let coords = Matrix::from_vecs(rows);
        let c = to_integer(&coords).ok_or(Error::NotInLattice)?;
        let det = to_rational(&c).determinant();
        Ok(det.to_integer().abs())
    }
}

impl<T: ExactInt> Isometry<T> {
    /// Wraps a matrix after checking `M G Mᵀ = G`.
    pub fn new(lattice: &Lattice<T>, matrix: Matrix<Q<T>>) -> Result<Self> {
        let g = lattice.gram();
        if matrix.rows() != g.rows() || !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: g.rows(),
                found: matrix.rows(),
            });
        }
        if &(&matrix * g) * &matrix.transpose() != *g {
            return Err(Error::InvalidArgument("matrix does not preserve the Gram matrix".into()));
        }
        Ok(Isometry { matrix })
    }

    pub fn from_matrix_unchecked(matrix: Matrix<Q<T>>) -> Self {
        Isometry { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Isometry {
            matrix: Matrix::identity(n),
        }
    }

    pub fn negation(n: usize) -> Self {
        Isometry {
            matrix: -&Matrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &Matrix<Q<T>> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn integer_matrix(&self) -> Option<Matrix<T>> {
        to_integer(&self.matrix)
    }

    pub fn is_integral(&self) -> bool {
        self.matrix.is_integral()
    }

    pub fn apply(&self, x: &[Q<T>]) -> Vec<Q<T>> {
        self.matrix.left_apply(x)
    }

    pub fn apply_int(&self, x: &[T]) -> Vec<Q<T>> {
        let xq: Vec<Q<T>> = x.iter().cloned().map(Ratio::from_integer).collect();
        self.apply(&xq)
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        Isometry {
            matrix: &self.matrix * &other.matrix,
        }
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        other.then(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Isometry {
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn pow(&self, n: u64) -> Self {
        Isometry {
            matrix: self.matrix.pow(n),
        }
    }

    /// Signed power; negative exponents use the inverse.
    pub fn pow_signed(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inverse()?.pow(n.unsigned_abs()))
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Smallest `n ≥ 1` with `self^n = 1`, searching up to `cap`.
    pub fn order(&self, cap: usize) -> Result<usize> {
        let mut p = self.matrix.clone();
        for n in 1..=cap {
            if p.is_identity() {
                return Ok(n);
            }
            p = &p * &self.matrix;
        }
        Err(Error::InfiniteOrder(cap))
    }

    /// True when `1 − g` is invertible, i.e. `g` fixes no nonzero vector.
    pub fn is_fixed_point_free(&self) -> bool {
        let n = self.rank();
        !(&Matrix::identity(n) - &self.matrix).determinant().is_zero()
    }

    /// The map `1 − g`.
    pub fn one_minus(&self) -> Matrix<Q<T>> {
        &Matrix::identity(self.rank()) - &self.matrix
    }

    /// Block-diagonal extension acting as `self` on each of `copies` summands.
    pub fn diagonal(&self, copies: usize) -> Self {
        Isometry {
            matrix: Matrix::block_diag(&vec![self.matrix.clone(); copies]),
        }
    }

    /// `self ⊗ other` on a tensor-product lattice.
    pub fn tensor(&self, other: &Self) -> Self {
        Isometry {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// Matrix of this map on a sublattice that it preserves.
    pub fn restricted_to(&self, s: &Sublattice<T>) -> Result<Self> {
        let images = &s.basis * &self.matrix;
        let mut rows = Vec::new();
        for r in images.iter_rows() {
            rows.push(s.coordinates(r).ok_or(Error::NotInLattice)?);
        }
        let m = Matrix::from_vecs(rows);
        if !m.is_integral() {
            return Err(Error::NotInLattice);
        }
        Ok(Isometry { matrix: m })
    }

    /// Minimal polynomial test helper: evaluates `Σ cᵢ gⁱ`.
    pub fn polynomial(&self, coeffs: &[i64]) -> Matrix<Q<T>> {
        let n = self.rank();
        let mut acc = Matrix::zeros(n, n);
        let mut power = Matrix::identity(n);
        for &c in coeffs {
            acc = &acc + &power.scale(&crate::scalar::rat(c));
            power = &power * &self.matrix;
        }
        acc
    }
}

impl<T: ExactInt> GlueVector<T> {
    pub fn new(coords: Vec<Q<T>>) -> Self {
        GlueVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        GlueVector {
            coords: vec![Q::zero(); n],
        }
    }

    pub fn from_fractions(nums: &[i64], den: i64) -> Self {
        GlueVector {
            coords: nums.iter().map(|&n| crate::scalar::ratio(n, den)).collect(),
        }
    }

    pub fn scaled(&self, c: &Q<T>) -> Self {
        GlueVector {
            coords: self.coords.iter().map(|v| v * c).collect(),
        }
    }

    pub fn in_dual_of(&self, lattice: &Lattice<T>) -> bool {
        lattice.in_dual(&self.coords)
    }
}

/// The annihilator `Ann_L(A) = {x ∈ L : ⟨x, A⟩ = 0}`.
pub fn annihilator<T: ExactInt>(lattice: &Lattice<T>, a: &Sublattice<T>) -> Result<Sublattice<T>> {
    let n = lattice.rank();
    check_inside(lattice, a)?;
    if a.rank() == 0 {
        return Ok(Sublattice::full(n));
    }
    let pairing = lattice.gram() * &a.basis.transpose();
    let (int, _) = clear_denominators(&pairing);
    let k = left_kernel(&int);
    if k.rows() == 0 {
        return Ok(Sublattice::zero(n));
    }
    Ok(Sublattice::from_integer(&k))
}

fn check_inside<T: ExactInt>(lattice: &Lattice<T>, a: &Sublattice<T>) -> Result<()> {
    if a.ambient_rank() != lattice.rank() {
        return Err(Error::DimensionMismatch {
            expected: lattice.rank(),
            found: a.ambient_rank(),
        });
    }
    if !a.basis.is_integral() {
        return Err(Error::NotInLattice);
    }
    Ok(())
}

/// RSSD test: `2L ⊂ A + Ann_L(A)`.
pub fn is_rssd<T: ExactInt>(lattice: &Lattice<T>, a: &Sublattice<T>) -> Result<bool> {
    let ann = annihilator(lattice, a)?;
    let sum = a.sum(&ann);
    let h = sum.integer_basis().ok_or(Error::NotInLattice)?;
    let n = lattice.rank();
    let two = T::one() + T::one();
    Ok((0..n).all(|i| {
        let mut x = vec![T::zero(); n];
        x[i] = two.clone();
        solve_in_hermite(&h, &x).is_some()
    }))
}

/// The involution acting as `−1` on `ℚA` and `+1` on `ℚ Ann_L(A)`.
pub fn rssd_involution<T: ExactInt>(lattice: &Lattice<T>, a: &Sublattice<T>) -> Result<Isometry<T>> {
    if !is_rssd(lattice, a)? {
        return Err(Error::NotRssd);
    }
    let ann = annihilator(lattice, a)?;
    let n = lattice.rank();
    let b = a.basis.vstack(&ann.basis);
    let d = Matrix::from_fn(n, n, |r, c| {
        if r != c {
            Q::zero()
        } else if r < a.rank() {
            -Q::one()
        } else {
            Q::one()
        }
    });
    let m = &(&b.inverse()? * &d) * &b;
    if !m.is_integral() {
        return Err(Error::NotRssd);
    }
    let t = Isometry::new(lattice, m)?;
    if !t.pow(2).is_identity() {
        return Err(Error::SelfCheck("RSSD involution does not square to 1".into()));
    }
    Ok(t)
}

/// Smith invariants (including ones) of a full-rank sublattice's coordinate matrix.
pub fn quotient_invariants<T: ExactInt>(lattice: &Lattice<T>, s: &Sublattice<T>) -> Result<Vec<T>> {
    check_inside(lattice, s)?;
    if s.rank() != lattice.rank() {
        return Err(Error::NotFullRank);
    }
    let m = s.integer_basis().ok_or(Error::NotInLattice)?;
    let mut d = smith(&m).diagonal;
    d.sort();
    Ok(d)
}

/// The sublattice `(1 − g)L`.
pub fn one_minus_image<T: ExactInt>(g: &Isometry<T>) -> Sublattice<T> {
    Sublattice::new(g.one_minus())
}

/// The dual of a full-rank sublattice, in the parent's rational coordinates.
pub fn sublattice_dual<T: ExactInt>(lattice: &Lattice<T>, s: &Sublattice<T>) -> Result<Sublattice<T>> {
    let restricted = lattice.restrict(s);
    let inv = restricted.gram().inverse()?;
    Ok(Sublattice::new(&inv * s.basis()))
}

/// `ℤⁿ ∩ S` for a rational sublattice `S`.
pub fn intersect_full<T: ExactInt>(n: usize, s: &Sublattice<T>) -> Sublattice<T> {
    Sublattice::full(n).intersection(s)
}

/// The dual lattice `L*` as a sublattice of `ℚL`.
pub fn dual_sublattice<T: ExactInt>(lattice: &Lattice<T>) -> Sublattice<T> {
    Sublattice::new(lattice.gram().inverse().expect("nondegenerate"))
}
