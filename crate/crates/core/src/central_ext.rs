//! Forms on `L/2L` and lifts of isometries to the central extension `L̂`.
//!
//! An element `e^α κ^a` of `L̂` is tracked through `(ᾱ, a)`. A lift `ĝ` of
//! `g` acts by `e^α κ^a ↦ e^{gα} κ^{η(ᾱ) + a}` where `η` is a quadratic form
//! whose polarization is `b_g = ε + ε^g`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vec};
use crate::lattice::{Isometry, Lattice};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::scalar::{ExactInt, Q};

const EXHAUSTIVE_RANK: usize = 8;
const SAMPLES: usize = 10_000;

/// A bilinear form on `L/2L` in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2BilinearForm {
    matrix: F2Matrix,
}

impl F2BilinearForm {
    pub fn new(matrix: F2Matrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        Ok(F2BilinearForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        F2BilinearForm {
            matrix: F2Matrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.matrix
    }

    pub fn eval(&self, x: &F2Vec, y: &F2Vec) -> bool {
        self.matrix.bilinear(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix == F2Matrix::zeros(self.dim(), self.dim())
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.dim()).all(|i| !self.matrix.get(i, i))
    }

    /// `(x, y) ↦ B(xM, yM)`.
    pub fn pullback(&self, g: &F2Matrix) -> Self {
        F2BilinearForm {
            matrix: g.mul(&self.matrix).mul(&g.transpose()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        F2BilinearForm {
            matrix: self.matrix.add(&other.matrix),
        }
    }
}

/// A quadratic form on `L/2L`, stored as its polarization and its values on
/// the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2QuadraticForm {
    polarization: F2BilinearForm,
    diagonal: F2Vec,
}

impl F2QuadraticForm {
    pub fn new(polarization: F2BilinearForm, diagonal: F2Vec) -> Result<Self> {
        if diagonal.len() != polarization.dim() {
            return Err(Error::DimensionMismatch {
                expected: polarization.dim(),
                found: diagonal.len(),
            });
        }
        if !polarization.is_alternating() {
            return Err(Error::InvalidArgument(
                "the polarization of a quadratic form must be alternating".into(),
            ));
        }
        Ok(F2QuadraticForm {
            polarization,
            diagonal,
        })
    }

    pub fn zero(n: usize) -> Self {
        F2QuadraticForm {
            polarization: F2BilinearForm::zero(n),
            diagonal: F2Vec::zero(n),
        }
    }

    /// A linear functional viewed as a quadratic form.
    pub fn linear(functional: F2Vec) -> Self {
        F2QuadraticForm {
            polarization: F2BilinearForm::zero(functional.len()),
            diagonal: functional,
        }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn polarization(&self) -> &F2BilinearForm {
        &self.polarization
    }

    pub fn diagonal(&self) -> F2Vec {
        self.diagonal
    }

    pub fn is_linear(&self) -> bool {
        self.polarization.is_zero()
    }

    /// `q(Σ aᵢvᵢ) = Σ aᵢq(vᵢ) + Σ_{i<j} aᵢaⱼ b(vᵢ,vⱼ)`.
    pub fn eval(&self, x: &F2Vec) -> bool {
        let ones: Vec<usize> = x.ones().collect();
        let mut v = self.diagonal.dot(x);
        for (a, &i) in ones.iter().enumerate() {
            for &j in &ones[a + 1..] {
                v ^= self.polarization.matrix.get(i, j);
            }
        }
        v
    }

    /// `x ↦ q(xM)`.
    pub fn pullback(&self, g: &F2Matrix) -> Self {
        let n = self.dim();
        F2QuadraticForm {
            polarization: self.polarization.pullback(g),
            diagonal: F2Vec::from_parities((0..n).map(|i| self.eval(&g.row(i)))),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        F2QuadraticForm {
            polarization: self.polarization.add(&other.polarization),
            diagonal: self.diagonal + other.diagonal,
        }
    }

    /// Checks `q(x+y) + q(x) + q(y) = b(x,y)` on all pairs for small
    /// dimension and on seeded random pairs otherwise.
    pub fn polarization_holds(&self) -> bool {
        for_pairs(self.dim(), |x, y| {
            self.eval(&(*x + *y)) ^ self.eval(x) ^ self.eval(y) == self.polarization.eval(x, y)
        })
    }
}

/// Runs `check` on every pair of classes when `n ≤ 8`, otherwise on
/// seeded random pairs.
fn for_pairs(n: usize, mut check: impl FnMut(&F2Vec, &F2Vec) -> bool) -> bool {
    if n <= EXHAUSTIVE_RANK {
        let all: Vec<F2Vec> = (0..1u64 << n).map(|b| F2Vec::from_bits(b, n)).collect();
        all.iter().all(|x| all.iter().all(|y| check(x, y)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (0..SAMPLES).all(|_| {
            let x = F2Vec::from_bits(rng.gen::<u64>() & mask, n);
            let y = F2Vec::from_bits(rng.gen::<u64>() & mask, n);
            check(&x, &y)
        })
    }
}

/// Reduces an integral matrix modulo 2.
pub fn reduce_mod2<T: ExactInt>(m: &Matrix<Q<T>>) -> Result<F2Matrix> {
    if !m.is_integral() {
        return Err(Error::NotIntegral);
    }
    let two = T::one() + T::one();
    Ok(F2Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        !m[(r, c)].to_integer().mod_floor(&two).is_zero()
    }))
}

/// A class in `L/2L` as an integer vector with entries in `{0, 1}`.
fn lift_class<T: ExactInt>(x: &F2Vec) -> Vec<Q<T>> {
    (0..x.len())
        .map(|i| if x.get(i) { Q::from_integer(T::one()) } else { Q::zero() })
        .collect()
}

/// `½⟨x,x⟩ mod 2`, well defined on `L/2L` for even `L`.
pub fn half_norm_mod2<T: ExactInt>(lattice: &Lattice<T>, x: &F2Vec) -> bool {
    let v = lattice.norm(&lift_class(x)) / Q::from_integer(T::one() + T::one());
    v.to_integer().is_odd()
}

/// `⟨x,y⟩ mod 2`.
pub fn inner_mod2<T: ExactInt>(lattice: &Lattice<T>, x: &F2Vec, y: &F2Vec) -> bool {
    lattice.inner(&lift_class(x), &lift_class(y)).to_integer().is_odd()
}

/// The standard 2-cocycle: `½⟨eᵢ,eᵢ⟩` on the diagonal, `⟨eᵢ,eⱼ⟩` below it.
pub fn standard_epsilon<T: ExactInt>(lattice: &Lattice<T>) -> Result<F2BilinearForm> {
    if !lattice.is_even() {
        return Err(Error::NotEven);
    }
    let n = lattice.rank();
    let g = lattice.gram();
    let two = T::one() + T::one();
    let m = F2Matrix::from_fn(n, n, |i, j| {
        let v = g[(i, j)].to_integer();
        if i == j {
            (v / two.clone()).is_odd()
        } else if i > j {
            v.is_odd()
        } else {
            false
        }
    });
    F2BilinearForm::new(m)
}

/// Checks `ε(x,x) = ½⟨x,x⟩` and `ε(x,y) + ε(y,x) = ⟨x,y⟩` modulo 2.
pub fn verify_epsilon<T: ExactInt>(lattice: &Lattice<T>, eps: &F2BilinearForm) -> Report {
    let mut report = Report::new("epsilon");
    if eps.dim() != lattice.rank() {
        report.fail(format!(
            "ε has dimension {} but the lattice has rank {}",
            eps.dim(),
            lattice.rank()
        ));
        return report;
    }
    let mut bad = None;
    let ok = for_pairs(lattice.rank(), |x, y| {
        let diag = eps.eval(x, x) == half_norm_mod2(lattice, x);
        let comm = eps.eval(x, y) ^ eps.eval(y, x) == inner_mod2(lattice, x, y);
        if !(diag && comm) && bad.is_none() {
            bad = Some((*x, *y));
        }
        diag && comm
    });
    if !ok {
        let (x, y) = bad.expect("recorded");
        report.fail(format!("ε fails its defining identities at x={x}, y={y}"));
    }
    report
}

/// A lift `ĝ` of an isometry `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift<T: ExactInt = BigInt> {
    lattice: Lattice<T>,
    isometry: Isometry<T>,
    g2: F2Matrix,
    g2_inv: F2Matrix,
    eps: F2BilinearForm,
    eta: F2QuadraticForm,
}

/// `b_g = ε + ε^g`.
pub fn b_g(eps: &F2BilinearForm, g2: &F2Matrix) -> F2BilinearForm {
    eps.add(&eps.pullback(g2))
}

/// Builds the lift of `g` whose `η` has the given basis values (default 0).
pub fn lift<T: ExactInt>(
    lattice: &Lattice<T>,
    g: &Isometry<T>,
    eps: &F2BilinearForm,
    diagonal: Option<&F2Vec>,
) -> Result<Lift<T>> {
    let n = lattice.rank();
    let checked = Isometry::new(lattice, g.matrix().clone())?;
    let g2 = reduce_mod2(checked.matrix())?;
    let g2_inv = reduce_mod2(checked.inverse()?.matrix())?;
    if eps.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: eps.dim(),
        });
    }
    let diag = match diagonal {
        Some(d) if d.len() != n => {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.len(),
            })
        }
        Some(d) => *d,
        None => F2Vec::zero(n),
    };
    let eta = F2QuadraticForm::new(b_g(eps, &g2), diag)?;
    Ok(Lift {
        lattice: lattice.clone(),
        isometry: checked,
        g2,
        g2_inv,
        eps: eps.clone(),
        eta,
    })
}

/// `θ(e^α κ^a) = e^{−α} κ^a`.
pub fn theta<T: ExactInt>(lattice: &Lattice<T>, eps: &F2BilinearForm) -> Result<Lift<T>> {
    lift(lattice, &Isometry::negation(lattice.rank()), eps, None)
}

impl<T: ExactInt> Lift<T> {
    pub fn isometry(&self) -> &Isometry<T> {
        &self.isometry
    }

    pub fn eta(&self) -> &F2QuadraticForm {
        &self.eta
    }

    pub fn epsilon(&self) -> &F2BilinearForm {
        &self.eps
    }

    pub fn lattice(&self) -> &Lattice<T> {
        &self.lattice
    }

    pub fn g_mod2(&self) -> &F2Matrix {
        &self.g2
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// True when the polarization of `η` is `ε + ε^g`.
    pub fn is_consistent(&self) -> bool {
        *self.eta.polarization() == b_g(&self.eps, &self.g2) && self.eta.polarization_holds()
    }

    /// Image of `e^α κ^a`, tracked as `(ᾱ, a)`.
    pub fn act(&self, x: &F2Vec, a: bool) -> (F2Vec, bool) {
        (self.g2.left_apply(x), a ^ self.eta.eval(x))
    }

    /// Image under `ĝ⁻¹`.
    pub fn act_inverse(&self, x: &F2Vec, a: bool) -> (F2Vec, bool) {
        let y = self.g2_inv.left_apply(x);
        (y, a ^ self.eta.eval(&y))
    }

    /// The lift `f̂ĝ` for `f̂ = self`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let iso = self.isometry.compose(&other.isometry);
        let eta = other.eta.add(&self.eta.pullback(&other.g2));
        let g2 = other.g2.mul(&self.g2);
        let g2_inv = self.g2_inv.mul(&other.g2_inv);
        if *eta.polarization() != b_g(&self.eps, &g2) {
            return Err(Error::SelfCheck(
                "composed η does not have polarization ε + ε^{fg}".into(),
            ));
        }
        Ok(Lift {
            lattice: self.lattice.clone(),
            isometry: iso,
            g2,
            g2_inv,
            eps: self.eps.clone(),
            eta,
        })
    }

    pub fn inverse(&self) -> Self {
        Lift {
            lattice: self.lattice.clone(),
            isometry: self.isometry.inverse().expect("isometries are invertible"),
            g2: self.g2_inv.clone(),
            g2_inv: self.g2.clone(),
            eps: self.eps.clone(),
            eta: self.eta.pullback(&self.g2_inv),
        }
    }

    pub fn identity_like(&self) -> Self {
        let n = self.rank();
        Lift {
            lattice: self.lattice.clone(),
            isometry: Isometry::identity(n),
            g2: F2Matrix::identity(n),
            g2_inv: F2Matrix::identity(n),
            eps: self.eps.clone(),
            eta: F2QuadraticForm::zero(n),
        }
    }

    pub fn pow(&self, n: u64) -> Result<Self> {
        let mut acc = self.identity_like();
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Multiplies the lift by `λ̂ : e^α κ^a ↦ e^α κ^{λ(ᾱ)+a}` on the right.
    pub fn twisted_by(&self, functional: &F2Vec) -> Self {
        Lift {
            eta: self.eta.add(&F2QuadraticForm::linear(*functional)),
            ..self.clone()
        }
    }

    /// True when both lifts have the same isometry and the same `η`, so
    /// they agree on all of `L̂`.
    pub fn same_action(&self, other: &Self) -> bool {
        self.isometry == other.isometry && self.eta == other.eta
    }

    /// `δ = Σ_{i<n} η(gⁱᾱ)`.
    pub fn power_sign(&self, alpha: &F2Vec, n: u64) -> bool {
        let mut x = *alpha;
        let mut acc = false;
        for _ in 0..n {
            acc ^= self.eta.eval(&x);
            x = self.g2.left_apply(&x);
        }
        acc
    }

    /// Iteration cap for finding the order of the base isometry.
    fn order_cap(&self) -> usize {
        let max_entry = self
            .isometry
            .matrix()
            .iter_rows()
            .flatten()
            .map(|v| v.abs().to_integer().to_usize().unwrap_or(usize::MAX / 4))
            .max()
            .unwrap_or(1);
        (2 * self.rank() * (max_entry + 1)).max(64)
    }

    /// Order of `ĝ`: the order `m` of `g`, or `2m` when `ĝ^m` is `−1` on
    /// some `e^α`.
    pub fn order(&self) -> Result<usize> {
        let m = self.isometry.order(self.order_cap())?;
        let n = self.rank();
        let sign = (0..n).any(|i| self.power_sign(&F2Vec::unit(i, n), m as u64));
        Ok(if sign { 2 * m } else { m })
    }

    /// Compares `δ(eᵢ)` with `η(orbit sum) + [m even]⟨eᵢ, g^{m/2}eᵢ⟩`.
    pub fn order_cross_check(&self) -> Result<Report> {
        let mut report = Report::new("lift-order-cross-check");
        let m = self.isometry.order(self.order_cap())?;
        let n = self.rank();
        let half = self.isometry.pow((m / 2) as u64);
        for i in 0..n {
            let e = F2Vec::unit(i, n);
            let direct = self.power_sign(&e, m as u64);
            let mut orbit = F2Vec::zero(n);
            let mut x = e;
            for _ in 0..m {
                orbit += x;
                x = self.g2.left_apply(&x);
            }
            let mut formula = self.eta.eval(&orbit);
            if m % 2 == 0 {
                let mut ei = vec![Q::zero(); n];
                ei[i] = Q::from_integer(T::one());
                let image = half.apply(&ei);
                formula ^= self.lattice.inner(&ei, &image).to_integer().is_odd();
            }
            report.require(direct == formula, || {
                format!("δ(e_{i}) = {direct} but the orbit formula gives {formula}")
            });
        }
        Ok(report.with_payload(serde_json::json!({ "order_of_g": m })))
    }
}

pub fn lift_power_sign<T: ExactInt>(lf: &Lift<T>, alpha: &F2Vec, n: u64) -> bool {
    lf.power_sign(alpha, n)
}

pub fn lift_order<T: ExactInt>(lf: &Lift<T>) -> Result<usize> {
    lf.order()
}

/// True when `g` fixes no nonzero vector and has odd order.
fn check_odd_fixed_point_free<T: ExactInt>(g: &Isometry<T>, cap: usize) -> Result<usize> {
    let order = g.order(cap)?;
    if order % 2 == 0 || order < 3 || !g.is_fixed_point_free() {
        return Err(Error::InvalidArgument(format!(
            "g must be fixed point free of odd order at least 3 (order {order})"
        )));
    }
    Ok(order)
}

/// The unique `μ` with `μ + μ^g = λ`, where `μ^g(ᾱ) = μ(gᾱ)`.
pub fn mu_plus_mu_g_solve<T: ExactInt>(g: &Isometry<T>, lambda: &F2Vec) -> Result<F2Vec> {
    let n = g.rank();
    if lambda.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    let system = mu_system(g)?;
    if system.rank() < n {
        return Err(Error::Singular);
    }
    check_odd_fixed_point_free(g, 4 * n + 64)?;
    system.solve(lambda).ok_or(Error::Singular)
}

/// Matrix of `μ ↦ μ + μ^g` on column vectors of basis values.
pub fn mu_system<T: ExactInt>(g: &Isometry<T>) -> Result<F2Matrix> {
    let g2 = reduce_mod2(g.matrix())?;
    Ok(F2Matrix::identity(g.rank()).add(&g2))
}

/// The unique lift `φ` of `f` with `φ⁻¹ĝφ = ĝ^m`.
pub fn commuting_lift<T: ExactInt>(f: &Isometry<T>, g_lift: &Lift<T>, m: u64) -> Result<Lift<T>> {
    let g = g_lift.isometry();
    let n = g_lift.rank();
    check_odd_fixed_point_free(g, g_lift.order_cap())?;
    let h = g.pow(m);
    let conj = f.then(g).then(&f.inverse()?);
    if conj != h {
        return Err(Error::InvalidArgument(format!(
            "f⁻¹gf is not g^{m} on the lattice"
        )));
    }
    let xi = lift(g_lift.lattice(), f, g_lift.epsilon(), None)?;
    let zeta = g_lift.pow(m)?;
    let h2 = reduce_mod2(h.matrix())?;
    let lambda = zeta
        .eta()
        .add(&g_lift.eta().pullback(&xi.g2))
        .add(xi.eta())
        .add(&xi.eta().pullback(&h2));
    if !lambda.is_linear() {
        return Err(Error::SelfCheck(
            "ζ + η^f + ξ + ξ^h is not a linear functional".into(),
        ));
    }
    let mu = mu_plus_mu_g_solve(&h, &lambda.diagonal())?;
    let phi = xi.twisted_by(&mu);

    let lhs = phi.inverse().compose(g_lift)?.compose(&phi)?;
    if !lhs.same_action(&zeta) {
        return Err(Error::SelfCheck("φ⁻¹ĝφ differs from ĝ^m".into()));
    }
    let direct = (0..n).all(|i| {
        let e = F2Vec::unit(i, n);
        [false, true].iter().all(|&a| {
            let (x, b) = phi.act(&e, a);
            let (x, b) = g_lift.act(&x, b);
            let (x, b) = phi.act_inverse(&x, b);
            let mut y = (e, a);
            for _ in 0..m {
                y = g_lift.act(&y.0, y.1);
            }
            (x, b) == y
        })
    });
    if !direct {
        return Err(Error::SelfCheck(
            "direct conjugation of generators disagrees with ĝ^m".into(),
        ));
    }
    Ok(phi)
}

/// Counts lifts `φ = f̂λ̂` of `f` with `φ⁻¹ĝφ = ĝ^m` by trying every linear
/// functional `λ`; feasible for rank at most 16.
pub fn count_commuting_lifts<T: ExactInt>(f: &Isometry<T>, g_lift: &Lift<T>, m: u64) -> Result<usize> {
    let n = g_lift.rank();
    if n > 16 {
        return Err(Error::InvalidArgument("exhaustive count needs rank ≤ 16".into()));
    }
    let base = lift(g_lift.lattice(), f, g_lift.epsilon(), None)?;
    let target = g_lift.pow(m)?;
    let mut count = 0;
    for bits in 0..1u64 << n {
        let phi = base.twisted_by(&F2Vec::from_bits(bits, n));
        if phi.inverse().compose(g_lift)?.compose(&phi)?.same_action(&target) {
            count += 1;
        }
    }
    Ok(count)
}
