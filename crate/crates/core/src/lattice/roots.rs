//! Simply-laced root lattices, reflections and Weyl group orders.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{Isometry, Lattice, Sublattice};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{int, ExactInt, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootFamily {
    A,
    D,
    E,
}

impl RootFamily {
    pub fn validate(self, n: usize) -> Result<()> {
        let ok = match self {
            RootFamily::A => n >= 1,
            RootFamily::D => n >= 4,
            RootFamily::E => (6..=8).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("no root system of type {self}{n}")))
        }
    }

    /// Parses names such as `"A4"`, `"d5"` or `"E8"`.
    pub fn parse_type(text: &str) -> Result<(RootFamily, usize)> {
        let text = text.trim();
        let bad = || Error::Parse(format!("not a root system name: {text:?}"));
        let mut chars = text.chars();
        let family: RootFamily = chars.next().ok_or_else(bad)?.to_string().parse()?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        family.validate(n)?;
        Ok((family, n))
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootFamily::A => "A",
            RootFamily::D => "D",
            RootFamily::E => "E",
        };
        f.write_str(c)
    }
}

impl FromStr for RootFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(RootFamily::A),
            "D" | "d" => Ok(RootFamily::D),
            "E" | "e" => Ok(RootFamily::E),
            other => Err(Error::Parse(format!("unknown root family {other:?}"))),
        }
    }
}

/// Cartan matrix in Bourbaki numbering.
pub fn cartan_matrix<T: ExactInt>(family: RootFamily, n: usize) -> Result<Matrix<Q<T>>> {
    family.validate(n)?;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        RootFamily::A => edges.extend((1..n).map(|i| (i - 1, i))),
        RootFamily::D => {
            edges.extend((1..n - 1).map(|i| (i - 1, i)));
            edges.push((n - 3, n - 1));
        }
        RootFamily::E => {
            edges.push((0, 2));
            edges.extend((3..n).map(|i| (i - 1, i)));
            edges.push((1, 3));
        }
    }
    let mut m = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            Ratio::from_integer(int::<T>(2))
        } else {
            Q::zero()
        }
    });
    for (a, b) in edges {
        m[(a, b)] = -Q::<T>::one();
        m[(b, a)] = -Q::<T>::one();
    }
    Ok(m)
}

pub fn root_lattice<T: ExactInt>(family: RootFamily, n: usize) -> Result<Lattice<T>> {
    Lattice::new(cartan_matrix(family, n)?)
}

/// The reflection `x ↦ x − ⟨x, β⟩β` in a norm-2 vector `β`.
pub fn reflection<T: ExactInt>(lattice: &Lattice<T>, root: &[T]) -> Result<Isometry<T>> {
    let n = lattice.rank();
    if root.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: root.len(),
        });
    }
    let beta: Vec<Q<T>> = root.iter().cloned().map(Ratio::from_integer).collect();
    if lattice.norm(&beta) != Ratio::from_integer(int(2)) {
        return Err(Error::InvalidArgument("reflection vector must have norm 2".into()));
    }
    let pair = lattice.pairings(&beta);
    let m = Matrix::from_fn(n, n, |i, j| {
        let e = if i == j { Q::one() } else { Q::zero() };
        e - pair[i].clone() * beta[j].clone()
    });
    Isometry::new(lattice, m)
}

/// `|(R ∩ pR*)/pR|`.
pub fn r_cap_p_dual_index<T: ExactInt>(root: &Lattice<T>, p: u64) -> Result<T> {
    if p < 2 {
        return Err(Error::InvalidArgument("p must be at least 2".into()));
    }
    let n = root.rank();
    let pq: Q<T> = Ratio::from_integer(T::from_u64(p).expect("fits"));
    let p_dual = Sublattice::new(root.gram().inverse()?.scale(&pq));
    let cap = Sublattice::full(n).intersection(&p_dual);
    let p_r = Sublattice::new(Matrix::<Q<T>>::identity(n).scale(&pq));
    cap.index_of(&p_r)
}

/// `|W(R)|` for an irreducible simply-laced root system.
pub fn weyl_group_order(family: RootFamily, n: usize) -> Result<BigInt> {
    family.validate(n)?;
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    Ok(match (family, n) {
        (RootFamily::A, n) => fact(n + 1),
        (RootFamily::D, n) => BigInt::from(2).pow(n as u32 - 1) * fact(n),
        (RootFamily::E, 6) => BigInt::from(51_840u64),
        (RootFamily::E, 7) => BigInt::from(2_903_040u64),
        (RootFamily::E, _) => BigInt::from(696_729_600u64),
    })
}
