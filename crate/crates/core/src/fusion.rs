//! The fusion ring of the parafermion algebra `K(sl₂,k)` and the scalar
//! weight formulas that accompany it.
//!
//! Irreducible modules are labelled `M^{i,j}` with `0 ≤ i ≤ k` and `j` taken
//! mod `k`, subject to `M^{i,j} ≅ M^{k−i, j−i}`. Labels are always stored in
//! the canonical form `0 ≤ j < i ≤ k`; the vacuum is `M^{k,0}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion_vector::FusionVector;
use crate::report::Report;

pub type Rational = BigRational;

fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical label of an irreducible `K(sl₂,k)`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrLabel {
    i: u32,
    j: u32,
    k: u32,
}

/// The same module named by `(i, l)` with `l ≡ i − 2j (mod 2k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TildeLabel {
    pub i: u32,
    pub l: u32,
    pub k: u32,
}

fn check_level(k: i64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidLevel {
            k,
            reason: "the level must be at least 2",
        });
    }
    Ok(())
}

/// Canonical representative of `M^{i,j}` at level `k`.
pub fn canonical_label(i: i64, j: i64, k: i64) -> Result<IrrLabel> {
    check_level(k)?;
    if !(0..=k).contains(&i) {
        return Err(Error::InvalidLabel { i, j, k });
    }
    let j = j.rem_euclid(k);
    let (i, j) = if j < i { (i, j) } else { (k - i, (j - i).rem_euclid(k)) };
    debug_assert!(j < i && i <= k);
    Ok(IrrLabel {
        i: i as u32,
        j: j as u32,
        k: k as u32,
    })
}

impl IrrLabel {
    pub fn new(i: i64, j: i64, k: i64) -> Result<Self> {
        canonical_label(i, j, k)
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The vacuum module `M^{k,0}`.
    pub fn identity(k: u32) -> Self {
        IrrLabel { i: k, j: 0, k }
    }

    /// The simple current `M^p = M^{k,p}`.
    pub fn simple_current(p: i64, k: u32) -> Self {
        IrrLabel {
            i: k,
            j: p.rem_euclid(k as i64) as u32,
            k,
        }
    }

    /// The σ-type label `M^{2j,j}`, `0 ≤ j ≤ ⌊k/2⌋`.
    pub fn sigma(j: u32, k: u32) -> Result<Self> {
        if j > k / 2 {
            return Err(Error::InvalidLabel {
                i: 2 * j as i64,
                j: j as i64,
                k: k as i64,
            });
        }
        canonical_label(2 * j as i64, j as i64, k as i64)
    }

    /// Every irreducible label at level `k`, in `(i, j)` order.
    pub fn all(k: u32) -> Vec<IrrLabel> {
        let mut out = Vec::with_capacity((k * (k + 1) / 2) as usize);
        for i in 1..=k {
            for j in 0..i {
                out.push(IrrLabel { i, j, k });
            }
        }
        out
    }

    /// The other presentation `(k−i, j−i mod k)` of the same module, as a raw pair.
    pub fn alternate(&self) -> (u32, u32) {
        let k = self.k as i64;
        (
            self.k - self.i,
            (self.j as i64 - self.i as i64).rem_euclid(k) as u32,
        )
    }

    pub fn to_tilde(&self) -> TildeLabel {
        let k2 = 2 * self.k as i64;
        TildeLabel {
            i: self.i,
            l: (self.i as i64 - 2 * self.j as i64).rem_euclid(k2) as u32,
            k: self.k,
        }
    }

    pub fn from_tilde(t: TildeLabel) -> Result<Self> {
        t.to_label()
    }

    /// `M^{i,j} ∘ θ ≅ M^{i,i−j}`.
    pub fn theta_dual(&self) -> Result<Self> {
        if self.k < 3 {
            return Err(Error::InvalidLevel {
                k: self.k as i64,
                reason: "θ is only defined for k ≥ 3",
            });
        }
        canonical_label(self.i as i64, self.i as i64 - self.j as i64, self.k as i64)
    }

    /// Conformal weight of the top level.
    pub fn conformal_weight(&self) -> Rational {
        let canonical = weight_formula(self.i as i64, self.j as i64, self.k as i64);
        let (ai, aj) = self.alternate();
        if aj <= ai {
            let alt = weight_formula(ai as i64, aj as i64, self.k as i64);
            assert_eq!(
                canonical, alt,
                "weight formula disagrees between presentations of {self}"
            );
        }
        canonical
    }

    pub fn is_sigma_type(&self) -> bool {
        (0..=self.k / 2).any(|j| IrrLabel::sigma(j, self.k).ok() == Some(*self))
    }

    /// The `j` with `self = M^{2j,j}`, if σ-type.
    pub fn sigma_index(&self) -> Option<u32> {
        (0..=self.k / 2).find(|&j| IrrLabel::sigma(j, self.k).ok() == Some(*self))
    }

    pub fn is_simple_current(&self) -> bool {
        self.i == self.k
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.i, self.j)
    }
}

impl TildeLabel {
    pub fn new(i: i64, l: i64, k: i64) -> Result<Self> {
        check_level(k)?;
        if !(0..=k).contains(&i) {
            return Err(Error::InvalidLabel { i, j: l, k });
        }
        if (i - l).rem_euclid(2) != 0 {
            return Err(Error::TildeParity { i, l });
        }
        Ok(TildeLabel {
            i: i as u32,
            l: l.rem_euclid(2 * k) as u32,
            k: k as u32,
        })
    }

    pub fn to_label(&self) -> Result<IrrLabel> {
        let (i, l) = (self.i as i64, self.l as i64);
        if (i - l).rem_euclid(2) != 0 {
            return Err(Error::TildeParity { i, l });
        }
        canonical_label(i, (i - l) / 2, self.k as i64)
    }

    /// The identified presentation `(k−i, k+l)`.
    pub fn alternate(&self) -> TildeLabel {
        TildeLabel {
            i: self.k - self.i,
            l: (self.k + self.l) % (2 * self.k),
            k: self.k,
        }
    }
}

fn weight_formula(i: i64, j: i64, k: i64) -> Rational {
    let m = i - 2 * j;
    let num = k * m - m * m + 2 * k * (i - j + 1) * j;
    q(num, 2 * k * (k + 2))
}

/// Values of `r` in the fusion range `R(i₁,i₂)`.
pub fn fusion_range(i1: u32, i2: u32, k: u32) -> impl Iterator<Item = u32> {
    let lo = i1.abs_diff(i2);
    let hi = (i1 + i2).min(2 * k - i1 - i2);
    (lo..=hi).filter(move |r| (i1 + i2 + r) % 2 == 0)
}

/// Fusion product `a ⊠ b`.
pub fn fuse(a: &IrrLabel, b: &IrrLabel) -> Result<FusionVector<IrrLabel>> {
    if a.k != b.k {
        return Err(Error::LevelMismatch(a.k, b.k));
    }
    Ok(fuse_presented(
        (a.i as i64, a.j as i64),
        (b.i as i64, b.j as i64),
        a.k as i64,
    ))
}

/// Fusion product evaluated on arbitrary presentations `(i, j)` of the two
/// factors; the answer does not depend on the presentation.
pub fn fuse_presented(a: (i64, i64), b: (i64, i64), k: i64) -> FusionVector<IrrLabel> {
    let (i1, j1) = a;
    let (i2, j2) = b;
    let mut out = FusionVector::new();
    for r in fusion_range(i1 as u32, i2 as u32, k as u32) {
        let r = r as i64;
        let twice_j = 2 * j1 - i1 + 2 * j2 - i2 + r;
        debug_assert_eq!(twice_j.rem_euclid(2), 0);
        let label = canonical_label(r, twice_j / 2, k).expect("r lies in [0,k]");
        out.add(label, 1);
    }
    out
}

/// Extends [`fuse`] bilinearly to formal sums.
pub fn fuse_vectors(
    a: &FusionVector<IrrLabel>,
    b: &FusionVector<IrrLabel>,
) -> FusionVector<IrrLabel> {
    a.product(b, |x, y| fuse(x, y).expect("factors share a level"))
}

/// Checks that `l mod k` is additive under fusion for every pair of
/// irreducibles at level `k`.
pub fn verify_zk_grading(k: u32) -> Result<Report> {
    verify_zk_grading_with(k, |a, b| fuse(a, b).expect("same level"))
}

/// [`verify_zk_grading`] against an arbitrary product rule.
pub fn verify_zk_grading_with(
    k: u32,
    product: impl Fn(&IrrLabel, &IrrLabel) -> FusionVector<IrrLabel>,
) -> Result<Report> {
    check_level(k as i64)?;
    let mut report = Report::new(format!("Z_{k} grading of the fusion ring at k={k}"));
    let kk = k as i64;
    let labels = IrrLabel::all(k);
    for x in &labels {
        let t = x.to_tilde();
        let alt = t.alternate();
        report.require(
            (alt.l as i64 - t.l as i64).rem_euclid(kk) == 0,
            || format!("identification changes l mod k for {x}"),
        );
        report.require(alt.to_label().ok() == Some(*x), || {
            format!("tilde identification of {x} does not round-trip")
        });
    }
    let mut terms = 0usize;
    for a in &labels {
        for b in &labels {
            let (la, lb) = (a.to_tilde().l as i64, b.to_tilde().l as i64);
            for (c, _) in product(a, b).iter() {
                terms += 1;
                let lc = c.to_tilde().l as i64;
                report.require((lc - la - lb).rem_euclid(kk) == 0, || {
                    format!("{a} x {b} -> {c}: l = {lc} but l1 + l2 = {}", la + lb)
                });
            }
        }
    }
    report.note(format!("{} pairs, {terms} output terms", labels.len().pow(2)));
    Ok(report)
}

/// Conformal weight `h^m_{r,s}` of the unitary Virasoro minimal model of
/// central charge `1 − 6/((m+2)(m+3))`.
pub fn minimal_model_weight(m: i64, r: i64, s: i64) -> Result<Rational> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("minimal model index m={m} < 1")));
    }
    if !(1..=m + 1).contains(&r) || !(1..=m + 2).contains(&s) {
        return Err(Error::InvalidArgument(format!(
            "(r,s)=({r},{s}) outside 1≤r≤{}, 1≤s≤{}",
            m + 1,
            m + 2
        )));
    }
    let x = r * (m + 3) - s * (m + 2);
    Ok(q(x * x - 1, 4 * (m + 2) * (m + 3)))
}

/// Checks `h^p_{1,3} + Σ_{m=p+1}^{k−1} h^m_{3,3} + h(M^{2,1}) = 1` for every
/// `1 ≤ p ≤ k−1`.
pub fn verify_weight_one_tops(k: u32) -> Result<Report> {
    if k < 3 {
        return Err(Error::InvalidLevel {
            k: k as i64,
            reason: "the weight-one check needs k ≥ 3",
        });
    }
    let mut report = Report::new(format!("weight-one top levels at k={k}"));
    let h21 = IrrLabel::new(2, 1, k as i64)?.conformal_weight();
    report.require(h21 == q(2, k as i64 + 2), || {
        format!("h(M[2,1]) = {h21}, expected 2/(k+2)")
    });
    let kk = k as i64;
    let mut sums = Vec::new();
    for p in 1..kk {
        let mut total = minimal_model_weight(p, 1, 3)?;
        for m in p + 1..kk {
            total += minimal_model_weight(m, 3, 3)?;
        }
        total += h21.clone();
        report.require(total.is_one(), || format!("p={p}: branching sum is {total}"));
        sums.push(total.to_string());
    }
    Ok(report.with_payload(serde_json::json!({ "sums": sums })))
}

/// Lowest weight of the ν-twisted lattice module for an odd prime `p`:
/// `(1/4p²) Σ_{i=1}^{p−1} i(p−i)`.
pub fn twisted_conformal_weight(p: i64) -> Result<Rational> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidArgument(format!("p={p} must be an odd integer ≥ 3")));
    }
    let sum: i64 = (1..p).map(|i| i * (p - i)).sum();
    let w = q(sum, 4 * p * p);
    assert_eq!(w, q((p - 1) * (p + 1), 24 * p), "closed form mismatch");
    assert!(!w.is_integer(), "twisted weight must not be integral");
    Ok(w)
}

/// Weight `j(p−j)/p` of the untwisted coset modules.
pub fn untwisted_coset_weight(j: i64, p: i64) -> Result<Rational> {
    if !(0..p).contains(&j) {
        return Err(Error::InvalidArgument(format!("j={j} outside [0,{})", p)));
    }
    Ok(q(j * (p - j), p))
}

/// Largest multiplicity occurring in any product at level `k`.
pub fn max_fusion_multiplicity(k: u32) -> u64 {
    let labels = IrrLabel::all(k);
    labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (a, b)))
        .map(|(a, b)| fuse(a, b).expect("same level").max_multiplicity())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn m(i: i64, j: i64, k: i64) -> IrrLabel {
        IrrLabel::new(i, j, k).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!((m(0, 4, 5).i(), m(0, 4, 5).j()), (5, 4));
        assert_eq!((m(5, 0, 5).i(), m(5, 0, 5).j()), (5, 0));
        assert_eq!((m(2, 0, 5).i(), m(2, 0, 5).j()), (2, 0));
        assert_eq!(m(0, 0, 5), IrrLabel::identity(5));
        assert!(IrrLabel::new(6, 0, 5).is_err());
        assert!(IrrLabel::new(1, 0, 1).is_err());
    }

    #[test]
    fn label_count() {
        for k in 2..10 {
            assert_eq!(IrrLabel::all(k).len() as u32, k * (k + 1) / 2);
        }
    }

    #[test]
    fn tilde_examples() {
        let t = m(1, 0, 5).to_tilde();
        assert_eq!((t.i, t.l), (1, 1));
        let back = TildeLabel::new(5, 7, 5).unwrap().to_label().unwrap();
        assert_eq!(back, m(5, 4, 5));
        let t = m(5, 0, 5).to_tilde();
        assert_eq!((t.i, t.l), (5, 5));
        assert_eq!(TildeLabel::new(2, 1, 5), Err(Error::TildeParity { i: 2, l: 1 }));
    }

    #[test]
    fn fusion_examples() {
        let id = fuse(&m(5, 0, 5), &m(3, 1, 5)).unwrap();
        assert_eq!(id, FusionVector::single(m(3, 1, 5)));
        let sc = fuse(&m(5, 1, 5), &m(3, 1, 5)).unwrap();
        assert_eq!(sc, FusionVector::single(m(3, 2, 5)));
        let p = fuse(&m(1, 0, 5), &m(1, 0, 5)).unwrap();
        assert_eq!(p.to_string(), "M[5,4] + M[2,0]");
    }

    #[test]
    fn fusion_rejects_mixed_levels() {
        assert_eq!(
            fuse(&m(1, 0, 5), &m(1, 0, 6)),
            Err(Error::LevelMismatch(5, 6))
        );
    }

    #[test]
    fn theta_examples() {
        assert_eq!(m(2, 1, 5).theta_dual().unwrap(), m(2, 1, 5));
        assert_eq!(m(3, 1, 5).theta_dual().unwrap(), m(3, 2, 5));
        assert_eq!(m(5, 1, 5).theta_dual().unwrap(), m(5, 4, 5));
        assert!(m(1, 0, 2).theta_dual().is_err());
    }

    #[test]
    fn weight_examples() {
        assert!(m(0, 0, 7).conformal_weight().is_zero());
        assert_eq!(m(2, 1, 5).conformal_weight(), q(2, 7));
        assert_eq!(m(2, 0, 5).conformal_weight(), q(3, 35));
    }

    #[test]
    fn sigma_examples() {
        assert!(m(2, 1, 5).is_sigma_type());
        assert!(!m(1, 0, 5).is_sigma_type());
        assert!(m(5, 0, 5).is_sigma_type());
        assert_eq!(m(2, 1, 5).sigma_index(), Some(1));
    }

    #[test]
    fn zk_grading_passes_and_detects_mutation() {
        assert!(verify_zk_grading(5).unwrap().passed());
        assert!(verify_zk_grading(8).unwrap().passed());
        let mutated = verify_zk_grading_with(5, |a, b| {
            let v = fuse(a, b).unwrap();
            if (a.i(), a.j(), b.i(), b.j()) == (2, 0, 3, 1) {
                let first = *v.labels().next().unwrap();
                let mut w = FusionVector::new();
                for (c, mult) in v.iter() {
                    let c = if *c == first {
                        IrrLabel::new(c.i() as i64, c.j() as i64 + 1, 5).unwrap()
                    } else {
                        *c
                    };
                    w.add(c, mult);
                }
                w
            } else {
                v
            }
        })
        .unwrap();
        assert!(!mutated.passed());
        assert_eq!(mutated.failures().count(), 1);
        assert!(mutated.failures().next().unwrap().contains("M[2,0] x M[3,1]"));
    }

    #[test]
    fn minimal_model_examples() {
        for mm in 1..10 {
            assert!(minimal_model_weight(mm, 1, 1).unwrap().is_zero());
            assert_eq!(minimal_model_weight(mm, 1, 3).unwrap(), q(mm + 1, mm + 3));
        }
        for mm in 2..10 {
            let expected = q(2, (mm + 2) * (mm + 3));
            assert_eq!(minimal_model_weight(mm, 3, 3).unwrap(), expected);
        }
        assert!(minimal_model_weight(1, 3, 3).is_err());
        assert!(minimal_model_weight(3, 5, 1).is_err());
    }

    #[test]
    fn weight_one_examples() {
        for k in [3, 5, 30] {
            assert!(verify_weight_one_tops(k).unwrap().passed());
        }
    }

    #[test]
    fn twisted_weights() {
        assert_eq!(twisted_conformal_weight(5).unwrap(), q(1, 5));
        assert_eq!(twisted_conformal_weight(3).unwrap(), q(1, 9));
        assert_eq!(twisted_conformal_weight(7).unwrap(), q(2, 7));
        assert!(twisted_conformal_weight(4).is_err());
    }

    #[test]
    fn coset_weights() {
        assert!(untwisted_coset_weight(0, 5).unwrap().is_zero());
        assert_eq!(untwisted_coset_weight(1, 5).unwrap(), q(4, 5));
        assert_eq!(untwisted_coset_weight(2, 5).unwrap(), q(6, 5));
        assert!(untwisted_coset_weight(5, 5).is_err());
    }
}
