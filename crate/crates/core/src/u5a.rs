//! Irreducible modules and fusion rules of `U_{5A} = ⊕ⱼ Mʲ ⊗ M^{2j}`, an
//! extension of `K(sl₂,5) ⊗ K(sl₂,5)` by a `ℤ₅` of simple currents.
//!
//! Modules of `M⁰ ⊗ M⁰` are pairs of level-5 labels. Those on which every
//! `Mᵖ ⊗ M^{2p}` has trivial monodromy induce to `U_{5A}`-modules, and the
//! induced fusion is computed componentwise and read back through induction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fusion::{fuse, IrrLabel, Rational};
use crate::fusion_vector::FusionVector;
use crate::golden::U5aGolden;
use crate::report::Report;
use crate::scalar::format_ratio;

pub const LEVEL: u32 = 5;

/// `[i₁, j₁; i₂, j₂] = M^{i₁,j₁} ⊗ M^{i₂,j₂}` at level 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairLabel {
    pub left: IrrLabel,
    pub right: IrrLabel,
}

impl PairLabel {
    pub fn new(i1: i64, j1: i64, i2: i64, j2: i64) -> Result<Self> {
        Ok(PairLabel {
            left: IrrLabel::new(i1, j1, LEVEL as i64)?,
            right: IrrLabel::new(i2, j2, LEVEL as i64)?,
        })
    }

    pub fn from_labels(left: IrrLabel, right: IrrLabel) -> Result<Self> {
        if left.k() != LEVEL || right.k() != LEVEL {
            return Err(Error::LevelMismatch(left.k(), right.k()));
        }
        Ok(PairLabel { left, right })
    }

    pub fn vacuum() -> Self {
        PairLabel {
            left: IrrLabel::identity(LEVEL),
            right: IrrLabel::identity(LEVEL),
        }
    }

    /// `Mᵖ ⊗ M^{2p}`.
    pub fn current(p: i64) -> Self {
        PairLabel {
            left: IrrLabel::simple_current(p, LEVEL),
            right: IrrLabel::simple_current(2 * p, LEVEL),
        }
    }

    pub fn conformal_weight(&self) -> Rational {
        self.left.conformal_weight() + self.right.conformal_weight()
    }

    /// Every one of the 225 pairs.
    pub fn all() -> Vec<PairLabel> {
        let labels = IrrLabel::all(LEVEL);
        labels
            .iter()
            .flat_map(|&l| labels.iter().map(move |&r| PairLabel { left: l, right: r }))
            .collect()
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}; {}, {}]",
            self.left.i(),
            self.left.j(),
            self.right.i(),
            self.right.j()
        )
    }
}

/// Index of an irreducible `U_{5A}`-module `Uⁱ`, `0 ≤ i ≤ 8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ULabel(pub u8);

impl fmt::Display for ULabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U{}", self.0)
    }
}

fn frac_part(v: BigRational) -> BigRational {
    v.clone() - v.floor()
}

/// `b(Mᵖ ⊗ M^q, x) = (p(i₁ − 2j₁) + q(i₂ − 2j₂))/5 mod 1`, in `[0, 1)`.
pub fn b_pairing(p: i64, q: i64, x: &PairLabel) -> Rational {
    let l = |m: &IrrLabel| m.i() as i64 - 2 * m.j() as i64;
    let num = p * l(&x.left) + q * l(&x.right);
    frac_part(BigRational::new(BigInt::from(num), BigInt::from(LEVEL)))
}

/// Same pairing from conformal weights: `h(A ⊠ X) − h(A) − h(X) mod 1`.
pub fn b_pairing_from_weights(p: i64, q: i64, x: &PairLabel) -> Result<Rational> {
    let a = PairLabel {
        left: IrrLabel::simple_current(p, LEVEL),
        right: IrrLabel::simple_current(q, LEVEL),
    };
    let y = fuse_pair(&a, x)?;
    let (z, mult) = y.iter().next().ok_or_else(|| Error::SelfCheck("empty product".into()))?;
    if y.len() != 1 || mult != 1 {
        return Err(Error::SelfCheck(format!("{a} ⊠ {x} is not simple")));
    }
    Ok(frac_part(z.conformal_weight() - a.conformal_weight() - x.conformal_weight()))
}

/// `X ⊠ Y` computed factorwise.
pub fn fuse_pair(x: &PairLabel, y: &PairLabel) -> Result<FusionVector<PairLabel>> {
    let l = fuse(&x.left, &y.left)?;
    let r = fuse(&x.right, &y.right)?;
    let mut out = FusionVector::new();
    for (a, m) in l.iter() {
        for (b, n) in r.iter() {
            out.add(PairLabel { left: *a, right: *b }, m * n);
        }
    }
    Ok(out)
}

/// The 45 pairs with trivial monodromy against every `Mᵖ ⊗ M^{2p}`.
pub fn irr0_list() -> Vec<PairLabel> {
    PairLabel::all()
        .into_iter()
        .filter(|x| (0..5).all(|p| b_pairing(p, 2 * p, x).is_zero()))
        .collect()
}

/// `{(Mʲ ⊗ M^{2j}) ⊠ x : 0 ≤ j ≤ 4}`, in order of `j`.
pub fn current_orbit(x: &PairLabel) -> Result<Vec<PairLabel>> {
    (0..5)
        .map(|j| {
            let y = fuse_pair(&PairLabel::current(j), x)?;
            let mut it = y.iter();
            match (it.next(), it.next()) {
                (Some((z, 1)), None) => Ok(*z),
                _ => Err(Error::SelfCheck(format!("simple current product with {x} is not simple"))),
            }
        })
        .collect()
}

/// Orbits of the simple currents on `Irr⁰`, each sorted, in order of first appearance.
pub fn computed_orbits() -> Result<Vec<BTreeSet<PairLabel>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in irr0_list() {
        if seen.contains(&x) {
            continue;
        }
        let orbit: BTreeSet<PairLabel> = current_orbit(&x)?.into_iter().collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit);
    }
    Ok(out)
}

/// The nine `U_{5A}`-modules, indexed by the reference decomposition rows.
#[derive(Clone, Debug)]
pub struct U5a {
    rows: Vec<Vec<PairLabel>>,
    index: BTreeMap<PairLabel, ULabel>,
    golden: U5aGolden,
}

impl U5a {
    pub fn new(golden: U5aGolden) -> Result<Self> {
        if golden.level != LEVEL {
            return Err(Error::LevelMismatch(golden.level, LEVEL));
        }
        let mut rows = Vec::new();
        let mut index = BTreeMap::new();
        for (n, row) in golden.rows.iter().enumerate() {
            let labels = row
                .iter()
                .map(|&[a, b, c, d]| PairLabel::new(a, b, c, d))
                .collect::<Result<Vec<_>>>()?;
            for x in &labels {
                if let Some(prev) = index.insert(*x, ULabel(n as u8)) {
                    if prev != ULabel(n as u8) {
                        return Err(Error::Parse(format!("{x} appears in rows {} and {n}", prev.0)));
                    }
                }
            }
            rows.push(labels);
        }
        Ok(U5a { rows, index, golden })
    }

    pub fn builtin() -> Self {
        U5a::new(U5aGolden::builtin()).expect("embedded tables are consistent")
    }

    pub fn golden(&self) -> &U5aGolden {
        &self.golden
    }

    pub fn labels(&self) -> impl Iterator<Item = ULabel> {
        (0..self.rows.len() as u8).map(ULabel)
    }

    /// The summands of `Uⁱ` as listed in the reference rows.
    pub fn row(&self, u: ULabel) -> &[PairLabel] {
        &self.rows[u.0 as usize]
    }

    /// The row listing `x` as a summand, if any.
    pub fn listed_row_of(&self, x: &PairLabel) -> Option<ULabel> {
        self.index.get(x).copied()
    }

    /// `U⁰ ⊠ x`, identified by matching its current orbit against the rows.
    pub fn induce(&self, x: &PairLabel) -> Result<ULabel> {
        let orbit: BTreeSet<PairLabel> = current_orbit(x)?.into_iter().collect();
        let hits: Vec<ULabel> = self
            .labels()
            .filter(|&u| self.row(u).iter().copied().collect::<BTreeSet<_>>() == orbit)
            .collect();
        match hits.as_slice() {
            [u] => Ok(*u),
            [] => Err(Error::SelfCheck(format!("the orbit of {x} matches no listed row"))),
            _ => Err(Error::SelfCheck(format!("the orbit of {x} matches several rows"))),
        }
    }

    /// Top weight and top dimension of `Uⁱ`.
    pub fn weight_dim(&self, u: ULabel) -> (Rational, u32) {
        let weights: Vec<Rational> = self.row(u).iter().map(PairLabel::conformal_weight).collect();
        let min = weights.iter().min().expect("rows are nonempty").clone();
        let dim = weights.iter().filter(|w| **w == min).count() as u32;
        (min, dim)
    }

    /// `Uⁱ ⊠ Uʲ` from chosen representatives.
    pub fn fuse_with(&self, x: &PairLabel, y: &PairLabel) -> Result<FusionVector<ULabel>> {
        let mut out = FusionVector::new();
        for (z, m) in fuse_pair(x, y)?.iter() {
            out.add(self.induce(z)?, m);
        }
        Ok(out)
    }

    /// `Uⁱ ⊠ Uʲ` using the first listed summand of each.
    pub fn fuse(&self, i: ULabel, j: ULabel) -> Result<FusionVector<ULabel>> {
        self.fuse_with(&self.row(i)[0], &self.row(j)[0])
    }

    /// The label `Uʲ` with `U⁰ ∈ Uⁱ ⊠ Uʲ`.
    pub fn contragredient(&self, u: ULabel) -> Result<ULabel> {
        let x = self.row(u)[0];
        let dual = PairLabel {
            left: contragredient_label(&x.left)?,
            right: contragredient_label(&x.right)?,
        };
        self.induce(&dual)
    }
}

/// The unique irreducible `y` with the vacuum in `x ⊠ y`.
pub fn contragredient_label(x: &IrrLabel) -> Result<IrrLabel> {
    let vac = IrrLabel::identity(x.k());
    let hits: Vec<IrrLabel> = IrrLabel::all(x.k())
        .into_iter()
        .filter(|y| fuse(x, y).map(|v| v.get(&vac) > 0).unwrap_or(false))
        .collect();
    match hits.as_slice() {
        [y] => Ok(*y),
        _ => Err(Error::SelfCheck(format!("{x} has {} contragredient candidates", hits.len()))),
    }
}

/// `Uⁱ ⊠ Uʲ` on the reference rows.
pub fn u_fuse(i: ULabel, j: ULabel) -> Result<FusionVector<ULabel>> {
    U5a::builtin().fuse(i, j)
}

/// Top weight and dimension of `Uⁱ`.
pub fn u_weight_dim(i: ULabel) -> (Rational, u32) {
    U5a::builtin().weight_dim(i)
}

pub fn induce(x: &PairLabel) -> Result<ULabel> {
    U5a::builtin().induce(x)
}

fn sorted_indices(v: &FusionVector<ULabel>) -> Vec<usize> {
    let mut out: Vec<usize> = v
        .iter()
        .flat_map(|(u, m)| std::iter::repeat(u.0 as usize).take(m as usize))
        .collect();
    out.sort_unstable();
    out
}

fn format_product(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
}

/// The computed table `(i, j) ↦ sorted product` for `i ≤ j`.
pub fn fusion_table(u: &U5a) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    let mut out = BTreeMap::new();
    for i in u.labels() {
        for j in u.labels().filter(|j| j.0 >= i.0) {
            out.insert((i.0 as usize, j.0 as usize), sorted_indices(&u.fuse(i, j)?));
        }
    }
    Ok(out)
}

/// Rebuilds every table of the appendix and diffs it against the reference data.
pub fn verify_appendix(golden: &U5aGolden) -> Result<Report> {
    let mut report = Report::new("u5a verify");
    let u = U5a::new(golden.clone())?;

    let irr0 = irr0_list();
    report.require(irr0.len() == 45, || format!("|Irr⁰| = {}, expected 45", irr0.len()));
    let irr0_set: BTreeSet<PairLabel> = irr0.iter().copied().collect();
    let orbits = computed_orbits()?;
    let closed = orbits.iter().all(|o| o.is_subset(&irr0_set));
    report.require(closed, || "Irr⁰ is not closed under the currents".into());
    report.require(orbits.len() == 9 && orbits.iter().all(|o| o.len() == 5), || {
        format!("orbit sizes {:?}", orbits.iter().map(BTreeSet::len).collect::<Vec<_>>())
    });
    for x in &irr0 {
        let direct = b_pairing(1, 2, x);
        let from_weights = b_pairing_from_weights(1, 2, x)?;
        report.require(direct == from_weights, || {
            format!("b-pairing of {x}: formula {direct}, weights {from_weights}")
        });
    }

    let rows: Vec<BTreeSet<PairLabel>> = u.labels().map(|l| u.row(l).iter().copied().collect()).collect();
    for (n, row) in rows.iter().enumerate() {
        report.require(row.len() == 5, || format!("row U{n} has repeated summands"));
        report.require(orbits.contains(row), || format!("row U{n} is not a computed orbit"));
    }
    for (n, o) in orbits.iter().enumerate() {
        report.require(rows.contains(o), || format!("computed orbit {n} is not a listed row"));
    }
    for x in &irr0 {
        let got = u.induce(x).ok();
        report.require(got.is_some() && got == u.listed_row_of(x), || {
            format!("{x} induces to {got:?} but is listed under {:?}", u.listed_row_of(x))
        });
    }
    for l in u.labels() {
        let rep = u.row(l)[0];
        let got = u.induce(&rep);
        report.require(got.as_ref().ok() == Some(&l), || format!("{rep} induces to {got:?}, expected {l}"));
    }

    let mut weight_rows = Vec::new();
    for l in u.labels() {
        let (w, d) = u.weight_dim(l);
        let n = l.0 as usize;
        report.require(golden.weights.get(n) == Some(&w), || {
            format!("weight of U{n}: computed {}, listed {:?}", format_ratio(&w), golden.weights.get(n).map(format_ratio))
        });
        report.require(golden.dimensions.get(n) == Some(&d), || {
            format!("dimension of U{n}: computed {d}, listed {:?}", golden.dimensions.get(n))
        });
        weight_rows.push(json!({"label": n, "weight": format_ratio(&w), "dimension": d}));
    }

    let table = fusion_table(&u)?;
    for ((i, j), got) in &table {
        let listed = golden.product(*i, *j);
        report.require(listed == Some(got), || {
            format!(
                "{i} ⊠ {j}: computed {}, listed {}",
                format_product(got),
                listed.map_or("nothing".to_string(), |v| format_product(v))
            )
        });
        let free = got.windows(2).all(|w| w[0] != w[1]);
        report.require(free, || format!("{i} ⊠ {j} = {} has a multiplicity above 1", format_product(got)));
    }

    for i in u.labels() {
        for j in u.labels() {
            let reference = sorted_indices(&u.fuse(i, j)?);
            let swapped = sorted_indices(&u.fuse(j, i)?);
            report.require(reference == swapped, || format!("{i} ⊠ {j} is not commutative"));
            for x in u.row(i) {
                for y in u.row(j) {
                    let alt = sorted_indices(&u.fuse_with(x, y)?);
                    report.require(alt == reference, || {
                        format!("{i} ⊠ {j} changes with representatives {x}, {y}")
                    });
                }
            }
        }
        let id = sorted_indices(&u.fuse(ULabel(0), i)?);
        report.require(id == vec![i.0 as usize], || format!("U0 ⊠ {i} = {}", format_product(&id)));
        let dual = u.contragredient(i)?;
        let with_dual = sorted_indices(&u.fuse(i, dual)?);
        let vacuum_count = with_dual.iter().filter(|&&k| k == 0).count();
        report.require(vacuum_count == 1, || format!("{i} ⊠ {dual} contains U0 {vacuum_count} times"));
    }

    let products: Vec<_> = table
        .iter()
        .map(|((i, j), p)| json!({"i": i, "j": j, "product": p}))
        .collect();
    Ok(report.with_payload(json!({
        "irr0": irr0.len(),
        "top_levels": weight_rows,
        "fusion": products,
    })))
}

/// Text rendering of the 9×9 fusion table.
pub fn render_table(table: &BTreeMap<(usize, usize), Vec<usize>>) -> String {
    let cell = |i: usize, j: usize| {
        table
            .get(&(i.min(j), i.max(j)))
            .map_or_else(|| "?".to_string(), |v| format_product(v))
    };
    let width = (0..9)
        .flat_map(|i| (0..9).map(move |j| (i, j)))
        .map(|(i, j)| cell(i, j).len())
        .max()
        .unwrap_or(1)
        .max(2);
    let mut out = format!("{:>3} |", "⊠");
    for j in 0..9 {
        out.push_str(&format!(" {:>width$}", j));
    }
    out.push('\n');
    out.push_str(&"-".repeat(5 + 9 * (width + 1)));
    out.push('\n');
    for i in 0..9 {
        out.push_str(&format!("{i:>3} |"));
        for j in 0..9 {
            out.push_str(&format!(" {:>width$}", cell(i, j)));
        }
        out.push('\n');
    }
    out
}
