//! Exact Fincke–Pohst enumeration of short vectors and closest vectors.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{isqrt, ExactInt, Q};

/// A lattice vector in integer coordinates together with its norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShortVector<T: ExactInt> {
    pub coords: Vec<T>,
    pub norm: Q<T>,
}

/// Coefficients of the quadratic form `Σ qᵢᵢ (yᵢ + Σ_{j>i} qᵢⱼ yⱼ)²`.
struct Cholesky<T: ExactInt> {
    q: Matrix<Q<T>>,
}

impl<T: ExactInt> Cholesky<T> {
    fn new(gram: &Matrix<Q<T>>) -> Result<Self> {
        let n = gram.rows();
        let mut q = gram.clone();
        for i in 0..n {
            if !q[(i, i)].is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            for j in i + 1..n {
                let v = q[(i, j)].clone() / q[(i, i)].clone();
                q[(j, i)] = q[(i, j)].clone();
                q[(i, j)] = v;
            }
            for k in i + 1..n {
                for l in k..n {
                    let v = q[(k, l)].clone() - q[(k, i)].clone() * q[(i, l)].clone();
                    q[(k, l)] = v;
                }
            }
        }
        Ok(Cholesky { q })
    }
}

/// Walks every `x ∈ ℤⁿ` with `⟨x+s, x+s⟩ ≤ bound`. The visitor may lower the
/// bound by returning a new value.
struct Search<'a, T: ExactInt> {
    chol: &'a Cholesky<T>,
    shift: &'a [Q<T>],
    bound: Q<T>,
    x: Vec<T>,
}

impl<T: ExactInt> Search<'_, T> {
    fn run(&mut self, visit: &mut dyn FnMut(&[T], &Q<T>) -> Option<Q<T>>) {
        let n = self.x.len();
        if n == 0 {
            if !self.bound.is_negative() {
                visit(&[], &Q::zero());
            }
            return;
        }
        self.level(n - 1, Q::zero(), visit);
    }

    fn level(
        &mut self,
        i: usize,
        partial: Q<T>,
        visit: &mut dyn FnMut(&[T], &Q<T>) -> Option<Q<T>>,
    ) {
        let q = &self.chol.q;
        let n = self.x.len();
        let mut center = -self.shift[i].clone();
        for j in i + 1..n {
            let yj = Ratio::from_integer(self.x[j].clone()) + self.shift[j].clone();
            center = center - q[(i, j)].clone() * yj;
        }
        let qii = q[(i, i)].clone();
        let slack = self.bound.clone() - partial.clone();
        if slack.is_negative() {
            return;
        }
        let radius = isqrt(&(slack / qii.clone()).floor().to_integer()) + T::one();
        let lo = center.floor().to_integer() - radius.clone();
        let hi = center.ceil().to_integer() + radius;
        let mut xi = lo;
        while xi <= hi {
            let d = Ratio::from_integer(xi.clone()) - center.clone();
            let s = partial.clone() + qii.clone() * d.clone() * d;
            if s <= self.bound {
                self.x[i] = xi.clone();
                if i == 0 {
                    if let Some(b) = visit(&self.x, &s) {
                        self.bound = b;
                    }
                } else {
                    self.level(i - 1, s, visit);
                }
            }
            xi = xi + T::one();
        }
        self.x[i] = T::zero();
    }
}

fn search<T: ExactInt>(
    lattice: &Lattice<T>,
    shift: &[Q<T>],
    bound: Q<T>,
    visit: &mut dyn FnMut(&[T], &Q<T>) -> Option<Q<T>>,
) -> Result<()> {
    if shift.len() != lattice.rank() {
        return Err(Error::DimensionMismatch {
            expected: lattice.rank(),
            found: shift.len(),
        });
    }
    let chol = Cholesky::new(lattice.gram())?;
    let mut s = Search {
        chol: &chol,
        shift,
        bound,
        x: vec![T::zero(); lattice.rank()],
    };
    s.run(visit);
    Ok(())
}

/// All vectors of norm at most `bound`, including zero.
pub fn vectors_up_to<T: ExactInt>(lattice: &Lattice<T>, bound: &Q<T>) -> Result<Vec<ShortVector<T>>> {
    let zero = vec![Q::zero(); lattice.rank()];
    let mut out = Vec::new();
    search(lattice, &zero, bound.clone(), &mut |x, norm| {
        out.push(ShortVector {
            coords: x.to_vec(),
            norm: norm.clone(),
        });
        None
    })?;
    Ok(out)
}

/// `L(n)`: all vectors of norm exactly `n`.
pub fn shell<T: ExactInt>(lattice: &Lattice<T>, n: &Q<T>) -> Result<Vec<Vec<T>>> {
    if n.is_negative() {
        return Err(Error::InvalidArgument("shell norm must be non-negative".into()));
    }
    let zero = vec![Q::zero(); lattice.rank()];
    let mut out = Vec::new();
    search(lattice, &zero, n.clone(), &mut |x, norm| {
        if norm == n {
            out.push(x.to_vec());
        }
        None
    })?;
    Ok(out)
}

/// Smallest nonzero norm.
pub fn minimum<T: ExactInt>(lattice: &Lattice<T>) -> Result<Q<T>> {
    let n = lattice.rank();
    if n == 0 {
        return Err(Error::InvalidArgument("rank-zero lattice has no minimum".into()));
    }
    let g = lattice.gram();
    let mut best = (0..n).map(|i| g[(i, i)].clone()).min().expect("rank > 0");
    let zero = vec![Q::zero(); n];
    search(lattice, &zero, best.clone(), &mut |_, norm| {
        if norm.is_zero() || *norm >= best {
            return None;
        }
        best = norm.clone();
        Some(best.clone())
    })?;
    Ok(best)
}

/// `min ⟨x + s, x + s⟩` over `x ∈ L`.
pub fn coset_min_norm<T: ExactInt>(lattice: &Lattice<T>, shift: &[Q<T>]) -> Result<Q<T>> {
    if shift.len() != lattice.rank() {
        return Err(Error::DimensionMismatch {
            expected: lattice.rank(),
            found: shift.len(),
        });
    }
    let start: Vec<Q<T>> = shift.iter().map(|s| s - s.round()).collect();
    let mut best = lattice.norm(&start);
    search(lattice, shift, best.clone(), &mut |_, norm| {
        if *norm < best {
            best = norm.clone();
            Some(best.clone())
        } else {
            None
        }
    })?;
    Ok(best)
}
