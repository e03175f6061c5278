//! Group orders assembled from lattice quotients.
//!
//! Each function computes the lattice-side factors from actual lattices and
//! multiplies in the finite group orders that the structure statements name.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{
    coxeter_matrix, one_minus_image, quotient_invariants, r_cap_p_dual_index, root_lattice,
    sqrt2_a, sublattice_dual, weyl_group_order, Isometry, Lattice, RootFamily, Sublattice,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{convert_int, ExactInt};

fn to_big<T: ExactInt>(v: &T) -> BigInt {
    convert_int(v).expect("BigInt holds every integer")
}

/// `|L/(1−g)L|`, checked against `|((1−g)L)*/L*|`.
pub fn torus_centralizer_order<T: ExactInt>(lattice: &Lattice<T>, g: &Isometry<T>) -> Result<BigInt> {
    if !g.is_fixed_point_free() {
        return Err(Error::InvalidArgument("g must be fixed point free".into()));
    }
    let image = one_minus_image(g);
    let quotient: BigInt = quotient_invariants(lattice, &image)?
        .iter()
        .map(to_big)
        .product();
    let outer = sublattice_dual(lattice, &image)?;
    let inner = Sublattice::new(lattice.gram().inverse()?);
    let dual_quotient = to_big(&outer.index_of(&inner)?);
    if quotient != dual_quotient {
        return Err(Error::SelfCheck(format!(
            "|L/(1-g)L| = {quotient} but |((1-g)L)*/L*| = {dual_quotient}"
        )));
    }
    Ok(quotient)
}

/// Number of units modulo `k`.
pub fn unit_group_order(k: u64) -> u64 {
    (1..=k).filter(|s| s.gcd(&k) == 1).count() as u64
}

/// Orders attached to the Coxeter isometry `ν` of `√2A_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuOrders {
    pub k: u64,
    /// `|⟨ψ⟩| = |N/(1−ν)N|`.
    pub psi: BigInt,
    /// `|⟨ψ⟩ : ⟨θ⟩|`, the dihedral part.
    pub dihedral: BigInt,
    /// `|C(ν̂)| = |⟨ψ⟩| · 2 · |⟨ν̂⟩|`.
    pub centralizer: BigInt,
    /// `|N(⟨ν̂⟩)| = |⟨ψ⟩| · 2 · k · |ℤ_k^×|`.
    pub normalizer: BigInt,
    /// `|N(⟨ν̂⟩)/⟨ν̂⟩|`.
    pub normalizer_quotient: BigInt,
}

pub fn nu_orders(k: usize) -> Result<NuOrders> {
    if k < 3 {
        return Err(Error::InvalidArgument("k must be at least 3".into()));
    }
    let n = sqrt2_a::<BigInt>(k);
    let nu = Isometry::new(&n, coxeter_matrix(k))?;
    let psi = torus_centralizer_order(&n, &nu)?;
    let nu_order = BigInt::from(nu.order(k + 1)?);
    let units = BigInt::from(unit_group_order(k as u64));
    let two = BigInt::from(2);
    Ok(NuOrders {
        k: k as u64,
        dihedral: &psi * &two,
        centralizer: &psi * &two * &nu_order,
        normalizer: &psi * &two * &nu_order * &units,
        normalizer_quotient: &psi * &two * &units,
        psi,
    })
}

/// Order of `p:(2 × (p−1))`, the automorphism group of the `ν̂`-orbifold for
/// an odd prime `p`.
pub fn orbifold_automorphism_order(p: usize) -> Result<BigInt> {
    Ok(nu_orders(p)?.normalizer_quotient)
}

/// The lattice `A_{p−1} ⊗ R` with `ν ⊗ 1`.
pub fn tensor_with_nu(p: usize, family: RootFamily, n: usize) -> Result<(Lattice<BigInt>, Isometry<BigInt>)> {
    let a = root_lattice::<BigInt>(RootFamily::A, p - 1)?;
    let r = root_lattice::<BigInt>(family, n)?;
    let l = a.tensor(&r);
    let nu = coxeter_matrix::<BigInt>(p).kron(&Matrix::identity(n));
    let nu = Isometry::new(&l, nu)?;
    Ok((l, nu))
}

/// Orders behind the group generated by the σ-involutions on `A_{p−1} ⊗ R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorOrders {
    /// `|A_R/(1−ν)A_R|`, expected `pⁿ`.
    pub quotient: BigInt,
    /// `|(R ∩ pR*)/pR|`.
    pub r_cap_index: BigInt,
    /// `pⁿ` or `pⁿ⁻¹`.
    pub torus: BigInt,
    pub weyl: BigInt,
    pub total: BigInt,
}

pub fn tensor_sigma_group_order(p: usize, family: RootFamily, n: usize) -> Result<TensorOrders> {
    let (l, nu) = tensor_with_nu(p, family, n)?;
    let quotient = torus_centralizer_order(&l, &nu)?;
    let r = root_lattice::<BigInt>(family, n)?;
    let r_cap_index = r_cap_p_dual_index(&r, p as u64)?;
    let (torus, rem) = quotient.div_rem(&r_cap_index);
    if rem != BigInt::from(0) {
        return Err(Error::SelfCheck("r-cap index does not divide the quotient".into()));
    }
    let weyl = weyl_group_order(family, n)?;
    Ok(TensorOrders {
        total: &torus * &weyl,
        quotient,
        r_cap_index,
        torus,
        weyl,
    })
}

/// `|(Dih_{2p})^d|`.
pub fn dihedral_power_order(p: u64, d: u32) -> BigInt {
    BigInt::from(2 * p).pow(d)
}

/// `|SL₂(q)| = q(q² − 1)`.
pub fn sl2_order(q: u64) -> BigInt {
    let q = BigInt::from(q);
    &q * (&q * &q - BigInt::one())
}

/// `|torus : ((SL₂(5) ∘ SL₂(5)) : 2)|` with a central product over `ℤ₂`.
pub fn sl2_central_product_extension_order(torus: &BigInt) -> BigInt {
    let s = sl2_order(5);
    torus * (&s * &s / BigInt::from(2)) * BigInt::from(2)
}
