//! The lattice `√2A_{k−1}` in the basis `βᵢ = αᵢ − αᵢ₊₁`, its Coxeter
//! isometry, Weyl vector, glue vectors and the radical of `c^ν`.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{intersect_full, Isometry, Lattice, Sublattice};
use crate::error::{Error, Result};
use crate::matrix::{clear_denominators, Matrix};
use crate::normal_form::left_kernel;
use crate::scalar::{int, ratio, ExactInt, Q};

use super::roots::{cartan_matrix, RootFamily};

/// `N = √2A_{k−1}`, with Gram twice the Cartan matrix.
pub fn sqrt2_a<T: ExactInt>(k: usize) -> Lattice<T> {
    assert!(k >= 2, "√2A_(k-1) needs k >= 2");
    let g = cartan_matrix::<T>(RootFamily::A, k - 1)
        .expect("A_n exists for n >= 1")
        .scale(&Ratio::from_integer(int(2)));
    Lattice::new(g).expect("rescaled Cartan matrix is positive definite")
}

/// Matrix of `βᵢ ↦ βᵢ₊₁` with `β_k = −(β₁ + ⋯ + β_{k−1})`.
pub fn coxeter_matrix<T: ExactInt>(k: usize) -> Matrix<Q<T>> {
    assert!(k >= 2, "the Coxeter isometry needs k >= 2");
    let n = k - 1;
    Matrix::from_fn(n, n, |r, c| {
        if r + 1 == n {
            -Q::one()
        } else if c == r + 1 {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

/// The cyclic isometry `α₁ ↦ α₂ ↦ ⋯ ↦ α_k ↦ α₁` restricted to `N`.
pub fn coxeter_nu<T: ExactInt>(k: usize) -> Isometry<T> {
    Isometry::from_matrix_unchecked(coxeter_matrix(k))
}

/// `β`-coordinates of `α_a − α_b` for indices in `ℤ_k` (given as `1..=k`).
pub fn alpha_difference<T: ExactInt>(k: usize, a: usize, b: usize) -> Vec<Q<T>> {
    let wrap = |x: usize| (x + k - 1) % k + 1;
    let (a, b) = (wrap(a), wrap(b));
    let mut v = vec![Q::zero(); k - 1];
    if a < b {
        for slot in &mut v[a - 1..b - 1] {
            *slot = Q::one();
        }
    } else if b < a {
        for slot in &mut v[b - 1..a - 1] {
            *slot = -Q::one();
        }
    }
    v
}

/// The permutation `τ_s: αᵢ ↦ α_{si}` on `N`, for `s` a unit mod `k`.
pub fn permutation_tau<T: ExactInt>(k: usize, s: usize) -> Result<Isometry<T>> {
    if k < 2 || s.gcd(&k) != 1 {
        return Err(Error::InvalidArgument(format!("{s} is not a unit modulo {k}")));
    }
    let rows: Vec<Vec<Q<T>>> = (1..k)
        .map(|i| alpha_difference(k, s * i % k, s * (i + 1) % k))
        .collect();
    Isometry::new(&sqrt2_a(k), Matrix::from_vecs(rows))
}

/// `ρ/√2` in `β`-coordinates: the vector pairing to `1` with every `βᵢ`.
pub fn weyl_vector<T: ExactInt>(k: usize) -> Vec<Q<T>> {
    let n = sqrt2_a::<T>(k);
    let inv = n.gram().inverse().expect("nondegenerate");
    inv.left_apply(&vec![Q::one(); k - 1])
}

/// The row `⟨ρ, (1 − ν)βᵢ⟩/√2` for `i = 1, …, k−1`.
pub fn weyl_pairing_row<T: ExactInt>(k: usize) -> Vec<Q<T>> {
    let n = sqrt2_a::<T>(k);
    let rho = weyl_vector::<T>(k);
    let one_minus = coxeter_nu::<T>(k).one_minus();
    one_minus
        .iter_rows()
        .map(|row| n.inner(&rho, row))
        .collect()
}

/// `λᵢ = (1/2k)γ_k − (1/2)αᵢ` in `β`-coordinates, `1 ≤ i ≤ k`.
pub fn glue_lambda_i<T: ExactInt>(k: usize, i: usize) -> Result<Vec<Q<T>>> {
    if !(1..=k).contains(&i) {
        return Err(Error::InvalidArgument(format!("glue index {i} outside 1..={k}")));
    }
    let two_k = 2 * k as i64;
    Ok((1..k)
        .map(|m| {
            let b = ratio::<T>(m as i64, two_k);
            if i <= m {
                b - ratio(1, 2)
            } else {
                b
            }
        })
        .collect())
}

/// `λ = (1/k)(β₁ + 2β₂ + ⋯ + (k−1)β_{k−1})`.
pub fn glue_lambda<T: ExactInt>(k: usize) -> Vec<Q<T>> {
    (1..k).map(|m| ratio(m as i64, k as i64)).collect()
}

/// Radical of `c^ν(x, y) = 2Σᵢ i⟨νⁱx, y⟩ mod 2p`, cross-checked against
/// `N ∩ (1 − ν)N*`.
pub fn c_nu_radical<T: ExactInt>(lattice: &Lattice<T>, nu: &Isometry<T>, p: u64) -> Result<Sublattice<T>> {
    if p < 3 || p % 2 == 0 || !(3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let order = nu.order(p as usize + 1)?;
    if order != p as usize || !nu.is_fixed_point_free() {
        return Err(Error::InvalidArgument(
            "ν must be fixed point free of order p".into(),
        ));
    }
    let n = lattice.rank();
    let mut c = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    for i in 1..p {
        power = &power * nu.matrix();
        c = &c + &power.scale(&Ratio::from_integer(int::<T>(2 * i as i64)));
    }
    let c = &c * lattice.gram();
    let (c_int, d) = clear_denominators(&c);
    if !d.is_one() {
        return Err(Error::NotIntegral);
    }
    let modulus = Matrix::<T>::identity(n).scale(&int::<T>(2 * p as i64));
    let k = left_kernel(&c_int.vstack(&modulus));
    let xs = Matrix::from_fn(k.rows(), n, |r, col| Ratio::from_integer(k[(r, col)].clone()));
    let radical = Sublattice::new(xs);

    let dual_rows = &lattice.gram().inverse()? * &nu.one_minus();
    let expected = intersect_full(n, &Sublattice::new(dual_rows));
    if radical != expected {
        return Err(Error::SelfCheck(
            "radical of c^ν differs from N ∩ (1 − ν)N*".into(),
        ));
    }
    Ok(radical)
}
