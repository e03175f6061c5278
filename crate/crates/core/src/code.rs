//! Binary codes over the quadratic space `K = ℤ₂^{p−1}` and the lattices
//! `L_C ⊂ (N*)^d` they glue from copies of `N = √2A_{p−1}`.
//!
//! Lattice vectors are written in half-`β` coordinates: the ambient lattice
//! is `(½N)^d` with basis `½βᵢ` in every block, so `N^d` is `2ℤⁿ`, `β(c)` is
//! the 0/1 vector `c` itself and every basis matrix stays integral. The
//! ambient Gram is the Cartan matrix of `A_{p−1}` divided by two.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vec};
use crate::lattice::{
    cartan_matrix, coset_min_norm, coxeter_matrix, dual_sublattice, glue_lambda, minimum,
    rssd_involution, shell, sqrt2_a, sublattice_dual, Isometry, Lattice, RootFamily, Sublattice,
};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::scalar::{int, rat, ratio, ExactInt, Q};

/// `K = ℤ₂^{p−1}` with `ū·v̄ = uAvᵀ mod 2` and `q(ū) = ½uAuᵀ mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSpace {
    p: usize,
    cartan: Vec<Vec<i64>>,
}

impl KSpace {
    pub fn new(p: usize) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::InvalidArgument(format!("p = {p} must be odd and at least 3")));
        }
        let a = cartan_matrix::<i64>(RootFamily::A, p - 1)?;
        let cartan = a
            .iter_rows()
            .map(|r| r.iter().map(|v| v.to_integer()).collect())
            .collect();
        Ok(KSpace { p, cartan })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.p - 1
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    fn check(&self, u: &F2Vec) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        Ok(())
    }

    fn form(&self, u: &F2Vec, v: &F2Vec) -> i64 {
        let n = self.dim();
        let mut s = 0;
        for i in u.ones() {
            for j in v.ones() {
                s += self.cartan[i][j];
            }
        }
        debug_assert!(u.len() == n);
        s
    }

    pub fn inner(&self, u: &F2Vec, v: &F2Vec) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.form(u, v).rem_euclid(2) == 1)
    }

    pub fn quadratic(&self, u: &F2Vec) -> Result<bool> {
        self.check(u)?;
        Ok((self.form(u, u) / 2).rem_euclid(2) == 1)
    }

    /// Image of a block under the Coxeter isometry: `(x₁,…,x_n) ↦ (x_n, x₁+x_n, …, x_{n−1}+x_n)`.
    pub fn nu(&self, u: &F2Vec) -> F2Vec {
        let n = self.dim();
        let last = u.get(n - 1);
        F2Vec::from_parities((0..n).map(|j| if j == 0 { last } else { u.get(j - 1) ^ last }))
    }

    /// The Gram matrix of the inner product over F₂.
    pub fn inner_matrix(&self) -> F2Matrix {
        F2Matrix::from_fn(self.dim(), self.dim(), |i, j| self.cartan[i][j].rem_euclid(2) == 1)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.inner_matrix().rank() == self.dim()
    }
}

/// `ū·v̄` on a single block.
pub fn k_inner(u: &F2Vec, v: &F2Vec, p: usize) -> Result<bool> {
    KSpace::new(p)?.inner(u, v)
}

/// `q(ū)` on a single block.
pub fn k_quadratic(u: &F2Vec, p: usize) -> Result<bool> {
    KSpace::new(p)?.quadratic(u)
}

/// A word of `K^d`, stored as `d` consecutive blocks of length `p − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: F2Vec,
    block_len: u8,
}

impl Codeword {
    pub fn new(bits: F2Vec, block_len: usize) -> Result<Self> {
        if block_len == 0 || bits.len() % block_len != 0 {
            return Err(Error::InvalidArgument(format!(
                "word length {} is not a multiple of the block length {block_len}",
                bits.len()
            )));
        }
        Ok(Codeword {
            bits,
            block_len: block_len as u8,
        })
    }

    pub fn from_blocks(blocks: &[&[u8]]) -> Result<Self> {
        let block_len = blocks.first().map_or(0, |b| b.len());
        if blocks.iter().any(|b| b.len() != block_len) {
            return Err(Error::InvalidArgument("blocks have different lengths".into()));
        }
        let parts: Vec<F2Vec> = blocks.iter().map(|b| F2Vec::from_slice(b)).collect();
        Codeword::new(F2Vec::concat(&parts), block_len)
    }

    pub fn zero(p: usize, d: usize) -> Self {
        Codeword {
            bits: F2Vec::zero((p - 1) * d),
            block_len: (p - 1) as u8,
        }
    }

    pub fn bits(&self) -> F2Vec {
        self.bits
    }

    pub fn block_len(&self) -> usize {
        self.block_len as usize
    }

    pub fn blocks_count(&self) -> usize {
        self.bits.len() / self.block_len()
    }

    pub fn block(&self, l: usize) -> F2Vec {
        self.bits.slice(l * self.block_len(), self.block_len())
    }

    pub fn blocks(&self) -> Vec<F2Vec> {
        (0..self.blocks_count()).map(|l| self.block(l)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// Number of nonzero blocks.
    pub fn block_support(&self) -> usize {
        self.blocks().iter().filter(|b| !b.is_zero()).count()
    }

    fn with_blocks(&self, blocks: &[F2Vec]) -> Self {
        Codeword {
            bits: F2Vec::concat(blocks),
            block_len: self.block_len,
        }
    }

    /// `β(c)` in half-`β` coordinates.
    pub fn half_coordinates<T: ExactInt>(&self) -> Vec<Q<T>> {
        (0..self.bits.len())
            .map(|i| if self.bits.get(i) { Q::one() } else { Q::zero() })
            .collect()
    }
}

impl std::ops::Add for Codeword {
    type Output = Codeword;

    fn add(self, rhs: Codeword) -> Codeword {
        assert_eq!(self.block_len, rhs.block_len);
        Codeword {
            bits: self.bits + rhs.bits,
            block_len: self.block_len,
        }
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let bits: Vec<String> = b.to_vec().iter().map(|x| x.to_string()).collect();
                format!("({})", bits.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A ℤ-submodule of `K^d` given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    space: KSpace,
    d: usize,
    generators: Vec<Codeword>,
    basis: Vec<F2Vec>,
}

const BUILTIN_5B: [[[u8; 4]; 4]; 8] = [
    [[1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]],
    [[0, 1, 0, 0], [0, 1, 0, 0], [0, 1, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 1, 0], [0, 0, 1, 0], [0, 0, 1, 0], [0, 0, 1, 0]],
    [[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 0, 1, 1], [1, 0, 1, 1], [0, 0, 0, 0]],
    [[0, 1, 0, 0], [1, 1, 1, 0], [1, 0, 1, 0], [0, 0, 0, 0]],
    [[0, 0, 1, 0], [0, 1, 1, 1], [0, 1, 0, 1], [0, 0, 0, 0]],
    [[0, 0, 0, 1], [1, 1, 0, 0], [1, 1, 0, 1], [0, 0, 0, 0]],
];

/// Names accepted by [`Code::builtin`].
pub const BUILTIN_CODES: &[&str] = &["5B"];

impl Code {
    pub fn new(p: usize, d: usize, generators: Vec<Codeword>) -> Result<Self> {
        let space = KSpace::new(p)?;
        if d == 0 {
            return Err(Error::InvalidArgument("d must be positive".into()));
        }
        let len = (p - 1) * d;
        if len > F2Vec::MAX_LEN {
            return Err(Error::InvalidArgument(format!(
                "words of length {len} exceed the supported {}",
                F2Vec::MAX_LEN
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.bits.len() != len || g.block_len() != p - 1 {
                return Err(Error::InvalidArgument(format!(
                    "generator {i} has length {}, expected {len}",
                    g.bits.len()
                )));
            }
        }
        let rows: Vec<F2Vec> = generators.iter().map(|g| g.bits).collect();
        let basis = F2Matrix::from_rows(rows, len).row_basis();
        Ok(Code {
            space,
            d,
            generators,
            basis,
        })
    }

    /// Builds a code from 0/1 rows of length `(p − 1)d`.
    pub fn from_rows(p: usize, d: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("p = {p} must be odd and at least 3")));
        }
        let words = rows
            .iter()
            .map(|r| Codeword::new(F2Vec::from_slice(r), p - 1))
            .collect::<Result<Vec<_>>>()?;
        Code::new(p, d, words)
    }

    /// The zero code in `K^d`.
    pub fn zero(p: usize, d: usize) -> Result<Self> {
        Code::new(p, d, Vec::new())
    }

    /// The rank-16 code at `p = 5`, `d = 4` with eight generators.
    pub fn builtin_5b() -> Self {
        let generators = BUILTIN_5B
            .iter()
            .map(|g| {
                let blocks: Vec<&[u8]> = g.iter().map(|b| b.as_slice()).collect();
                Codeword::from_blocks(&blocks).expect("well-formed builtin")
            })
            .collect();
        Code::new(5, 4, generators).expect("well-formed builtin")
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "5B" | "5b" => Ok(Code::builtin_5b()),
            other => Err(Error::InvalidArgument(format!(
                "unknown builtin code {other:?}; known: {}",
                BUILTIN_CODES.join(", ")
            ))),
        }
    }

    pub fn p(&self) -> usize {
        self.space.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn space(&self) -> &KSpace {
        &self.space
    }

    pub fn length(&self) -> usize {
        self.space.dim() * self.d
    }

    pub fn generators(&self) -> &[Codeword] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dim()
    }

    fn word(&self, bits: F2Vec) -> Codeword {
        Codeword {
            bits,
            block_len: self.space.dim() as u8,
        }
    }

    /// Every word of the span.
    pub fn words(&self) -> Vec<Codeword> {
        F2Matrix::span(&self.basis, self.length())
            .into_iter()
            .map(|b| self.word(b))
            .collect()
    }

    pub fn contains(&self, c: &Codeword) -> bool {
        if c.bits.len() != self.length() {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(c.bits);
        F2Matrix::from_rows(rows, self.length()).rank() == self.dim()
    }

    /// `ν` applied in every block.
    pub fn nu(&self, c: &Codeword) -> Codeword {
        let blocks: Vec<F2Vec> = c.blocks().iter().map(|b| self.space.nu(b)).collect();
        c.with_blocks(&blocks)
    }

    /// Inner product on `K^d`.
    pub fn inner(&self, u: &Codeword, v: &Codeword) -> bool {
        u.blocks()
            .iter()
            .zip(v.blocks())
            .fold(false, |acc, (a, b)| acc ^ (self.space.form(a, &b).rem_euclid(2) == 1))
    }

    /// Quadratic form on `K^d`.
    pub fn quadratic(&self, u: &Codeword) -> bool {
        u.blocks()
            .iter()
            .fold(false, |acc, a| acc ^ ((self.space.form(a, a) / 2).rem_euclid(2) == 1))
    }

    pub fn is_nu_invariant(&self) -> bool {
        self.generators.iter().all(|g| self.contains(&self.nu(g)))
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let b = &self.basis;
        (0..b.len()).all(|i| (i..b.len()).all(|j| !self.inner(&self.word(b[i]), &self.word(b[j]))))
    }

    pub fn is_totally_isotropic(&self) -> bool {
        self.words().iter().all(|c| !self.quadratic(c))
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal() && 2 * self.dim() == self.length()
    }

    /// Applies a permutation of the `d` blocks: block `l` moves to `perm[l]`.
    pub fn permute_blocks(&self, c: &Codeword, perm: &[usize]) -> Codeword {
        let old = c.blocks();
        let mut blocks = old.clone();
        for (l, &target) in perm.iter().enumerate() {
            blocks[target] = old[l];
        }
        c.with_blocks(&blocks)
    }
}

/// Coset minima `w(ū)` for every block of `K`, memoized.
#[derive(Clone, Debug)]
pub struct BlockWeights {
    p: usize,
    cache: HashMap<F2Vec, i64>,
}

impl BlockWeights {
    pub fn new(p: usize) -> Result<Self> {
        KSpace::new(p)?;
        Ok(BlockWeights {
            p,
            cache: HashMap::new(),
        })
    }

    /// `min{⟨x,x⟩ : x ∈ N + β_u}`.
    pub fn weight(&mut self, u: &F2Vec) -> Result<i64> {
        if u.len() != self.p - 1 {
            return Err(Error::DimensionMismatch {
                expected: self.p - 1,
                found: u.len(),
            });
        }
        if let Some(&w) = self.cache.get(u) {
            return Ok(w);
        }
        let n = sqrt2_a::<i64>(self.p);
        let shift: Vec<Q<i64>> = (0..u.len())
            .map(|i| if u.get(i) { ratio(1, 2) } else { rat(0) })
            .collect();
        let m = coset_min_norm(&n, &shift)?;
        if !m.is_integer() {
            return Err(Error::SelfCheck(format!("coset minimum {m} is not an integer")));
        }
        let w = m.to_integer();
        self.cache.insert(*u, w);
        Ok(w)
    }

    pub fn block_weights(&mut self, c: &Codeword) -> Result<Vec<i64>> {
        c.blocks().iter().map(|b| self.weight(b)).collect()
    }

    pub fn codeword_weight(&mut self, c: &Codeword) -> Result<i64> {
        Ok(self.block_weights(c)?.iter().sum())
    }
}

/// `w(c) = Σ w(ūᵢ)`.
pub fn codeword_weight(c: &Codeword, p: usize) -> Result<i64> {
    if c.block_len() != p.saturating_sub(1) {
        return Err(Error::DimensionMismatch {
            expected: p.saturating_sub(1),
            found: c.block_len(),
        });
    }
    BlockWeights::new(p)?.codeword_weight(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeProperties {
    pub size: u64,
    pub dim: usize,
    pub self_orthogonal: bool,
    pub totally_isotropic: bool,
    pub self_dual: bool,
    pub nu_invariant: bool,
    pub weight_distribution: BTreeMap<i64, usize>,
    /// `w(c) ≡ Σ q(ūᵢ) (mod 2)` held for every word.
    pub parity_law: bool,
}

impl CodeProperties {
    pub fn to_json(&self) -> serde_json::Value {
        let dist: BTreeMap<String, usize> = self
            .weight_distribution
            .iter()
            .map(|(w, c)| (w.to_string(), *c))
            .collect();
        json!({
            "size": self.size,
            "dim": self.dim,
            "self_orthogonal": self.self_orthogonal,
            "totally_isotropic": self.totally_isotropic,
            "self_dual": self.self_dual,
            "nu_invariant": self.nu_invariant,
            "weight_distribution": dist,
            "parity_law": self.parity_law,
        })
    }
}

pub fn code_properties(code: &Code) -> Result<CodeProperties> {
    let mut weights = BlockWeights::new(code.p())?;
    let mut dist = BTreeMap::new();
    let mut parity_law = true;
    for c in code.words() {
        let w = weights.codeword_weight(&c)?;
        *dist.entry(w).or_insert(0) += 1;
        parity_law &= (w.rem_euclid(2) == 1) == code.quadratic(&c);
    }
    Ok(CodeProperties {
        size: code.size(),
        dim: code.dim(),
        self_orthogonal: code.is_self_orthogonal(),
        totally_isotropic: code.is_totally_isotropic(),
        self_dual: code.is_self_dual(),
        nu_invariant: code.is_nu_invariant(),
        weight_distribution: dist,
        parity_law,
    })
}

/// The four kinds of weight-4 words of the rank-16 code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight4Type {
    I,
    II,
    III,
    IV,
}

impl Weight4Type {
    pub const ALL: [Weight4Type; 4] = [Weight4Type::I, Weight4Type::II, Weight4Type::III, Weight4Type::IV];

    /// The listed representative of each type.
    pub fn representative(self) -> Codeword {
        let blocks: [[u8; 4]; 4] = match self {
            Weight4Type::I => [[1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]],
            Weight4Type::II => [[1, 1, 0, 0], [1, 1, 0, 0], [1, 1, 0, 0], [1, 1, 0, 0]],
            Weight4Type::III => [[1, 0, 0, 0], [0, 0, 1, 1], [1, 0, 1, 1], [0, 0, 0, 0]],
            Weight4Type::IV => [[1, 1, 0, 0], [0, 1, 1, 1], [1, 1, 1, 1], [0, 1, 0, 0]],
        };
        let refs: Vec<&[u8]> = blocks.iter().map(|b| b.as_slice()).collect();
        Codeword::from_blocks(&refs).expect("well-formed representative")
    }

    /// Sorted block weights and `⟨β(c), νβ(c)⟩`.
    pub fn invariant(self) -> (Vec<i64>, i64) {
        match self {
            Weight4Type::I => (vec![1, 1, 1, 1], -2),
            Weight4Type::II => (vec![1, 1, 1, 1], 0),
            Weight4Type::III => (vec![0, 1, 1, 2], -2),
            Weight4Type::IV => (vec![1, 1, 1, 1], -1),
        }
    }
}

impl fmt::Display for Weight4Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Weight4Type::I => "I",
            Weight4Type::II => "II",
            Weight4Type::III => "III",
            Weight4Type::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight4Classification {
    pub by_type: BTreeMap<Weight4Type, Vec<Codeword>>,
    pub unclassified: Vec<Codeword>,
}

impl Weight4Classification {
    pub fn count(&self, t: Weight4Type) -> usize {
        self.by_type.get(&t).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> [usize; 4] {
        Weight4Type::ALL.map(|t| self.count(t))
    }
}

fn require_5b_shape(code: &Code) -> Result<()> {
    if code.p() != 5 || code.d() != 4 {
        return Err(Error::InvalidArgument(format!(
            "weight-4 types are defined for p = 5, d = 4 (got p = {}, d = {})",
            code.p(),
            code.d()
        )));
    }
    Ok(())
}

/// `⟨β(c), νβ(c)⟩` computed in the ambient lattice.
pub fn nu_pairing(code: &Code, c: &Codeword) -> i64 {
    let ambient = ambient_lattice::<i64>(code.p(), code.d());
    let nu = ambient_nu::<i64>(code.p(), code.d());
    let x = c.half_coordinates::<i64>();
    let v = ambient.inner(&x, &nu.apply(&x));
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Sorts the weight-4 words by the pair (sorted block weights, `⟨β(c), νβ(c)⟩`).
pub fn classify_weight4(code: &Code) -> Result<Weight4Classification> {
    require_5b_shape(code)?;
    let mut weights = BlockWeights::new(5)?;
    let table: Vec<(Weight4Type, (Vec<i64>, i64))> =
        Weight4Type::ALL.iter().map(|&t| (t, t.invariant())).collect();
    let mut by_type: BTreeMap<Weight4Type, Vec<Codeword>> = BTreeMap::new();
    let mut unclassified = Vec::new();
    for c in code.words() {
        let mut bw = weights.block_weights(&c)?;
        if bw.iter().sum::<i64>() != 4 {
            continue;
        }
        bw.sort_unstable();
        let key = (bw, nu_pairing(code, &c));
        match table.iter().find(|(_, inv)| *inv == key) {
            Some((t, _)) => by_type.entry(*t).or_default().push(c),
            None => unclassified.push(c),
        }
    }
    Ok(Weight4Classification {
        by_type,
        unclassified,
    })
}

/// The twelve even permutations of four blocks.
pub fn alt4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct: BTreeSet<usize> = p.iter().copied().collect();
                    if distinct.len() < 4 {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Orbit of a word under `⟨ν⟩ × Alt₄`.
pub fn nu_alt4_orbit(code: &Code, c: &Codeword) -> Result<BTreeSet<Codeword>> {
    require_5b_shape(code)?;
    let mut orbit = BTreeSet::new();
    for perm in alt4() {
        let mut w = code.permute_blocks(c, &perm);
        for _ in 0..5 {
            orbit.insert(w);
            w = code.nu(&w);
        }
    }
    Ok(orbit)
}

/// Orbit oracle: the `⟨ν⟩ × Alt₄`-orbit of each listed representative,
/// checked to lie in the code.
pub fn weight4_orbits(code: &Code) -> Result<BTreeMap<Weight4Type, BTreeSet<Codeword>>> {
    require_5b_shape(code)?;
    let mut out = BTreeMap::new();
    for t in Weight4Type::ALL {
        let orbit = nu_alt4_orbit(code, &t.representative())?;
        if let Some(bad) = orbit.iter().find(|w| !code.contains(w)) {
            return Err(Error::SelfCheck(format!("orbit word {bad} of type {t} is not in the code")));
        }
        out.insert(t, orbit);
    }
    Ok(out)
}

/// `(½N)^d` in half-`β` coordinates.
pub fn ambient_lattice<T: ExactInt>(p: usize, d: usize) -> Lattice<T> {
    let block = cartan_matrix::<T>(RootFamily::A, p - 1)
        .expect("p ≥ 3")
        .scale(&ratio(1, 2));
    let blocks = vec![block; d];
    Lattice::new(Matrix::block_diag(&blocks)).expect("positive definite")
}

/// The diagonal Coxeter isometry on `(½N)^d`.
pub fn ambient_nu<T: ExactInt>(p: usize, d: usize) -> Isometry<T> {
    Isometry::from_matrix_unchecked(Matrix::block_diag(&vec![coxeter_matrix::<T>(p); d]))
}

/// `N^d = 2ℤⁿ` in half-`β` coordinates.
pub fn n_power<T: ExactInt>(p: usize, d: usize) -> Sublattice<T> {
    let n = (p - 1) * d;
    Sublattice::new(Matrix::<Q<T>>::identity(n).scale(&rat(2)))
}

/// `L_C` with its ambient data.
#[derive(Clone, Debug)]
pub struct CodeLattice<T: ExactInt> {
    pub p: usize,
    pub d: usize,
    pub ambient: Lattice<T>,
    /// `L_C` inside the ambient lattice.
    pub sublattice: Sublattice<T>,
    /// `L_C` in its own (Hermite) basis.
    pub lattice: Lattice<T>,
    /// `ν` restricted to `L_C`, when the code is `ν`-invariant.
    pub nu: Option<Isometry<T>>,
    pub warnings: Vec<String>,
}

impl<T: ExactInt> CodeLattice<T> {
    /// `|L_C / N^d|`.
    pub fn glue_index(&self) -> Result<T> {
        self.sublattice.index_of(&n_power(self.p, self.d))
    }

    /// Expresses an ambient vector in the basis of `L_C`.
    pub fn coordinates(&self, x: &[Q<T>]) -> Option<Vec<Q<T>>> {
        self.sublattice.coordinates(x)
    }

    /// Re-expresses an ambient sublattice in `L_C` coordinates.
    pub fn pull_back(&self, s: &Sublattice<T>) -> Result<Sublattice<T>> {
        let rows = s
            .basis()
            .iter_rows()
            .map(|r| self.coordinates(r).ok_or(Error::NotInLattice))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Sublattice::zero(self.lattice.rank()));
        }
        Ok(Sublattice::new(Matrix::from_vecs(rows)))
    }
}

/// `L_C = ⋃_{c ∈ C} (N^d + β(c))`.
pub fn build_lattice<T: ExactInt>(code: &Code) -> Result<CodeLattice<T>> {
    let (p, d) = (code.p(), code.d());
    let ambient = ambient_lattice::<T>(p, d);
    let mut gens = n_power::<T>(p, d).basis().clone();
    for g in code.generators() {
        gens.push_row(g.half_coordinates());
    }
    let sublattice = Sublattice::new(gens);
    let lattice = ambient.restrict(&sublattice);
    let mut warnings = Vec::new();
    if !code.is_self_orthogonal() {
        warnings.push("code is not self-orthogonal; L_C is not integral".to_string());
    } else if !code.is_totally_isotropic() {
        warnings.push("code is not totally isotropic; L_C is not even".to_string());
    }
    let nu = if code.is_nu_invariant() {
        let restricted = ambient_nu::<T>(p, d).restricted_to(&sublattice)?;
        Some(Isometry::new(&lattice, restricted.matrix().clone())?)
    } else {
        None
    };
    Ok(CodeLattice {
        p,
        d,
        ambient,
        sublattice,
        lattice,
        nu,
        warnings,
    })
}

fn orbit_vectors<T: ExactInt>(v: &[Q<T>], nu: &Isometry<T>, count: usize) -> Vec<Vec<Q<T>>> {
    let mut out = Vec::with_capacity(count);
    let mut x = v.to_vec();
    for _ in 0..count {
        out.push(x.clone());
        x = nu.apply(&x);
    }
    out
}

/// The lattice spanned by `νⁱv`, `0 ≤ i ≤ p − 2`, with that spanning set as basis.
pub fn nu_orbit_sublattice<T: ExactInt>(lattice: &Lattice<T>, v: &[Q<T>], nu: &Isometry<T>) -> Result<Lattice<T>> {
    let p = nu.order(64)?;
    if p < 2 || !nu.is_fixed_point_free() {
        return Err(Error::InvalidArgument("ν must be fixed point free".into()));
    }
    let rows = orbit_vectors(v, nu, p - 1);
    let b = Matrix::from_vecs(rows);
    let gram = &(&b * lattice.gram()) * &b.transpose();
    Lattice::new(gram)
}

/// Isometry type of a `ν`-orbit lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitShape {
    /// The basis `(ν^s)ⁱv` has Gram `2·Cartan(A_{p−1})`.
    Sqrt2A { s: usize },
    /// Gram with `4` on the diagonal and `−1` off it.
    A4One,
    Other,
}

pub fn orbit_shape<T: ExactInt>(lattice: &Lattice<T>, v: &[Q<T>], nu: &Isometry<T>) -> Result<OrbitShape> {
    let p = nu.order(64)?;
    let target = sqrt2_a::<T>(p);
    for s in 1..p {
        let o = nu_orbit_sublattice(lattice, v, &nu.pow(s as u64))?;
        if o.gram() == target.gram() {
            return Ok(OrbitShape::Sqrt2A { s });
        }
    }
    let o = nu_orbit_sublattice(lattice, v, nu)?;
    let a4_one = Matrix::from_fn(p - 1, p - 1, |i, j| if i == j { rat::<T>(4) } else { rat(-1) });
    if *o.gram() == a4_one {
        return Ok(OrbitShape::A4One);
    }
    Ok(OrbitShape::Other)
}

/// `λ = (1/5)(β₁ + 2β₂ + 3β₃ + 4β₄)` placed in block `l`, in half-`β` coordinates.
pub fn lambda_block<T: ExactInt>(p: usize, d: usize, l: usize) -> Vec<Q<T>> {
    let mut x = vec![Q::zero(); (p - 1) * d];
    for (m, v) in glue_lambda::<T>(p).into_iter().enumerate() {
        x[l * (p - 1) + m] = v * rat(2);
    }
    x
}

/// The `√2E₈` pair `M`, `M′ = ν²(M)` inside `L_C`.
#[derive(Clone, Debug)]
pub struct Ee8Pair<T: ExactInt> {
    pub lc: CodeLattice<T>,
    /// `F = (ℤγ ⊕ ℤδ)⁴`, ambient coordinates.
    pub f: Sublattice<T>,
    pub m: Sublattice<T>,
    pub m_prime: Sublattice<T>,
    /// `M/F` as a binary code of length 8, bits `(γ₁..γ₄, δ₁..δ₄)`.
    pub glue_code: Vec<F2Vec>,
}

fn gamma_half() -> [i64; 4] {
    [1, 0, 0, 0]
}

fn delta_half() -> [i64; 4] {
    [0, 0, 1, 1]
}

fn half_vector<T: ExactInt>(blocks: [[i64; 4]; 4]) -> Vec<Q<T>> {
    blocks.iter().flat_map(|b| b.iter().map(|&v| rat::<T>(v))).collect()
}

/// Coordinates of an ambient vector in the basis `γ_l/2, δ_l/2` of `½F`.
fn half_f_coordinates<T: ExactInt>(x: &[Q<T>]) -> Option<[T; 8]> {
    let mut out: [T; 8] = std::array::from_fn(|_| T::zero());
    for l in 0..4 {
        let b = &x[4 * l..4 * l + 4];
        if !b.iter().all(|v| v.is_integer()) || !b[1].is_zero() || b[2] != b[3] {
            return None;
        }
        out[l] = b[0].to_integer();
        out[4 + l] = b[2].to_integer();
    }
    Some(out)
}

pub fn build_ee8_pair<T: ExactInt>() -> Result<Ee8Pair<T>> {
    let code = Code::builtin_5b();
    let lc = build_lattice::<T>(&code)?;
    let z = [0i64; 4];
    let (g, dl) = (gamma_half(), delta_half());
    let gd: [i64; 4] = std::array::from_fn(|i| g[i] + dl[i]);
    let mut f_rows = Vec::new();
    for l in 0..4 {
        for h in [g, dl] {
            let mut blocks = [z; 4];
            blocks[l] = h.map(|v| 2 * v);
            f_rows.push(half_vector::<T>(blocks));
        }
    }
    let f = Sublattice::new(Matrix::from_vecs(f_rows.clone()));
    let mut m_rows = f_rows;
    m_rows.push(half_vector([g, g, g, g]));
    m_rows.push(half_vector([dl, dl, dl, dl]));
    m_rows.push(half_vector([g, dl, gd, z]));
    m_rows.push(half_vector([dl, gd, g, z]));
    let m = Sublattice::new(Matrix::from_vecs(m_rows));
    let m_prime = m.image(&ambient_nu::<T>(5, 4).pow(2));
    let mut glue = Vec::new();
    for row in m.basis().iter_rows() {
        let c = half_f_coordinates(row)
            .ok_or_else(|| Error::SelfCheck("M is not inside ½F".into()))?;
        glue.push(F2Vec::from_parities(c.iter().map(|v| v.is_odd())));
    }
    let glue_code = F2Matrix::from_rows(glue, 8).row_basis();
    Ok(Ee8Pair {
        lc,
        f,
        m,
        m_prime,
        glue_code,
    })
}

/// The glue generators as listed, bits `(γ₁..γ₄, δ₁..δ₄)`.
pub fn listed_ee8_glue() -> Vec<F2Vec> {
    [
        [1, 1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 1, 1],
        [1, 0, 1, 0, 0, 1, 1, 0],
        [0, 1, 1, 0, 1, 1, 0, 0],
    ]
    .iter()
    .map(|r| F2Vec::from_slice(r))
    .collect()
}

fn weight_enumerator(basis: &[F2Vec], len: usize) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for w in F2Matrix::span(basis, len) {
        *out.entry(w.weight()).or_insert(0) += 1;
    }
    out
}

fn same_f2_span(a: &[F2Vec], b: &[F2Vec], len: usize) -> bool {
    let ra = F2Matrix::from_rows(a.to_vec(), len).rank();
    let rb = F2Matrix::from_rows(b.to_vec(), len).rank();
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let r = F2Matrix::from_rows(both, len).rank();
    ra == r && rb == r
}

fn big(v: i64) -> Q<num_bigint::BigInt> {
    rat(v)
}

fn check_sqrt2_e8(report: &mut Report, name: &str, l: &Lattice<num_bigint::BigInt>) -> Result<()> {
    report.require(l.rank() == 8, || format!("{name} has rank {}", l.rank()));
    report.require(l.is_even(), || format!("{name} is not even"));
    let det = l.determinant();
    report.require(det == big(256), || format!("det {name} = {det}, expected 256"));
    let min = minimum(l)?;
    report.require(min == big(4), || format!("min {name} = {min}, expected 4"));
    let s4 = shell(l, &big(4))?.len();
    report.require(s4 == 240, || format!("|{name}(4)| = {s4}, expected 240"));
    let s6 = shell(l, &big(6))?.len();
    report.require(s6 == 0, || format!("|{name}(6)| = {s6}, expected 0"));
    Ok(())
}

/// Checks every statement about the `√2E₈` pair.
pub fn verify_ee8_pair() -> Result<Report> {
    let mut report = Report::new("ee8-pair");
    let pair = build_ee8_pair::<num_bigint::BigInt>()?;
    let lc = &pair.lc;
    let ambient = &lc.ambient;

    report.require(lc.sublattice.contains_all(&pair.m), || "M is not inside L_C".into());
    report.require(lc.sublattice.contains_all(&pair.m_prime), || "M′ is not inside L_C".into());
    check_sqrt2_e8(&mut report, "M", &ambient.restrict(&pair.m))?;
    check_sqrt2_e8(&mut report, "M′", &ambient.restrict(&pair.m_prime))?;

    let f = ambient.restrict(&pair.f);
    let f_ok = f.gram() == &Matrix::<Q<num_bigint::BigInt>>::identity(8).scale(&big(4));
    report.require(f_ok, || "F is not √2A₁⁸".into());
    let fnu = pair.f.image(&ambient_nu(5, 4).pow(2));
    report.require(pair.f.sum(&fnu).same_as(&n_power(5, 4)), || "F + ν²F ≠ N⁴".into());

    let enumerator = weight_enumerator(&pair.glue_code, 8);
    let hamming: BTreeMap<u32, usize> = [(0, 1), (4, 14), (8, 1)].into_iter().collect();
    report.require(pair.glue_code.len() == 4, || format!("M/F has dimension {}", pair.glue_code.len()));
    report.require(enumerator == hamming, || format!("M/F weight enumerator {enumerator:?}"));
    let self_dual = pair
        .glue_code
        .iter()
        .all(|a| pair.glue_code.iter().all(|b| !a.dot(b)));
    report.require(self_dual, || "M/F is not self-orthogonal".into());
    report.require(same_f2_span(&pair.glue_code, &listed_ee8_glue(), 8), || {
        "M/F differs from the listed glue code".into()
    });

    let sum = pair.m.sum(&pair.m_prime);
    report.require(sum.same_as(&lc.sublattice), || "M + M′ ≠ L_C".into());
    let cap = pair.m.intersection(&pair.m_prime);
    report.require(cap.rank() == 0, || format!("M ∩ M′ has rank {}", cap.rank()));

    let m_in = lc.pull_back(&pair.m)?;
    let mp_in = lc.pull_back(&pair.m_prime)?;
    let t_m = rssd_involution(&lc.lattice, &m_in)?;
    let t_mp = rssd_involution(&lc.lattice, &mp_in)?;
    let nu = lc
        .nu
        .clone()
        .ok_or_else(|| Error::SelfCheck("L_C is not ν-invariant".into()))?;
    let product = t_mp.then(&t_m);
    report.require(product == nu, || "t_M ∘ t_M′ ≠ ν".into());
    let inverts = t_m.then(&nu).then(&t_m) == nu.inverse()?;
    report.require(inverts, || "t_M does not invert ν".into());
    let dihedral = product.order(11)? == 5 && t_m.pow(2).is_identity() && t_mp.pow(2).is_identity();
    report.require(dihedral, || "⟨t_M, t_M′⟩ is not dihedral of order 10".into());
    Ok(report)
}

/// Checks the discriminant form of `L_C` for the rank-16 code.
pub fn verify_lc_discriminant(lc: &CodeLattice<num_bigint::BigInt>) -> Result<Report> {
    type B = num_bigint::BigInt;
    let mut report = Report::new("lc-discriminant");
    let ambient = &lc.ambient;
    let disc = lc.lattice.discriminant_group()?;
    let five = int::<B>(5);
    let expected: Vec<B> = vec![five.clone(); 4];
    report.require(disc.invariant_factors == expected, || {
        format!("L_C*/L_C has invariant factors {:?}", disc.invariant_factors)
    });
    let dual = sublattice_dual(ambient, &lc.sublattice)?;
    let lambdas: Vec<Vec<Q<B>>> = (0..4).map(|l| lambda_block(5, 4, l)).collect();
    for (i, li) in lambdas.iter().enumerate() {
        report.require(dual.contains(li), || format!("λ_{} is not in L_C*", i + 1));
        let q = Ratio::from_integer(five.clone()) / big(2) * ambient.norm(li);
        let q_ok = q.is_integer() && q.to_integer().mod_floor(&five) == int(4);
        report.require(q_ok, || format!("q(λ_{}) = {q}, expected 4 mod 5", i + 1));
        let twice: Vec<Q<B>> = li.iter().map(|v| v * big(2)).collect();
        let q2 = Ratio::from_integer(five.clone()) / big(2) * ambient.norm(&twice);
        let q2_ok = q2.is_integer() && q2.to_integer().mod_floor(&five) == int(1);
        report.require(q2_ok, || format!("q(2λ_{}) = {q2}, expected 1 mod 5", i + 1));
        for (j, lj) in lambdas.iter().enumerate() {
            let f = Ratio::from_integer(five.clone()) * ambient.inner(li, lj);
            let want = if i == j { big(8) } else { big(0) };
            report.require(f == want, || format!("f(λ_{}, λ_{}) = {f}", i + 1, j + 1));
        }
    }
    let mut gens = lc.sublattice.basis().clone();
    for l in &lambdas {
        gens.push_row(l.clone());
    }
    report.require(Sublattice::new(gens).same_as(&dual), || "the λ_i do not generate L_C*/L_C".into());
    let image = Sublattice::new(dual.basis() * &ambient_nu::<B>(5, 4).one_minus());
    report.require(image.same_as(&lc.sublattice), || "(1 − ν)L_C* ≠ L_C".into());
    let check_dual = dual.same_as(&lc.pull_dual());
    report.require(check_dual, || "dual of L_C disagrees between bases".into());
    Ok(report)
}

impl<T: ExactInt> CodeLattice<T> {
    /// `L_C*` in ambient coordinates, computed from the Gram of `L_C`.
    fn pull_dual(&self) -> Sublattice<T> {
        let inv = dual_sublattice(&self.lattice);
        Sublattice::new(inv.basis() * self.sublattice.basis())
    }
}

/// Outcome of the complete rank-16 case study.
#[derive(Clone, Debug)]
pub struct CaseStudy {
    pub properties: CodeProperties,
    pub classification: Weight4Classification,
    /// `|L_C(4)|`, computed by enumeration.
    pub shell4: usize,
    pub report: Report,
}

/// Runs every check on the built-in rank-16 code and its lattice.
pub fn verify_case_study() -> Result<CaseStudy> {
    type B = num_bigint::BigInt;
    let mut report = Report::new("lc-verify 5B");
    let code = Code::builtin_5b();
    report.require(code.generators().len() == 8, || "expected eight generators".into());

    let props = code_properties(&code)?;
    report.require(props.size == 256, || format!("|C| = {}", props.size));
    report.require(props.self_dual, || "C is not self-dual".into());
    report.require(props.totally_isotropic, || "C is not totally isotropic".into());
    report.require(props.nu_invariant, || "C is not ν-invariant".into());
    report.require(props.parity_law, || "w(c) mod 2 ≠ q(c) for some word".into());
    let expected: BTreeMap<i64, usize> = [(0, 1), (4, 130), (6, 120), (8, 5)].into_iter().collect();
    report.require(props.weight_distribution == expected, || {
        format!("weight distribution {:?}", props.weight_distribution)
    });

    let class = classify_weight4(&code)?;
    report.require(class.counts() == [5, 5, 60, 60], || format!("type counts {:?}", class.counts()));
    report.require(class.unclassified.is_empty(), || {
        format!("{} weight-4 words fit no type", class.unclassified.len())
    });
    let orbits = weight4_orbits(&code)?;
    for t in Weight4Type::ALL {
        let oracle = &orbits[&t];
        let classified: BTreeSet<Codeword> = class.by_type.get(&t).cloned().unwrap_or_default().into_iter().collect();
        report.require(*oracle == classified, || {
            format!("type {t}: orbit has {} words, classifier {}", oracle.len(), classified.len())
        });
    }

    let lc = build_lattice::<B>(&code)?;
    let l = &lc.lattice;
    report.require(l.rank() == 16, || format!("rank L_C = {}", l.rank()));
    report.require(l.is_even(), || "L_C is not even".into());
    report.require(l.determinant() == big(625), || format!("det L_C = {}", l.determinant()));
    report.require(lc.glue_index()? == int(256), || "|L_C/N⁴| ≠ |C|".into());
    let s2 = shell(l, &big(2))?.len();
    report.require(s2 == 0, || format!("|L_C(2)| = {s2}"));
    let min = minimum(l)?;
    report.require(min == big(4), || format!("min L_C = {min}"));
    let shell4 = shell(l, &big(4))?.len();
    report.require(shell4 > 0, || "L_C(4) is empty".into());
    match &lc.nu {
        Some(nu) => {
            report.require(nu.order(6)? == 5 && nu.is_fixed_point_free(), || {
                "ν on L_C is not fixed point free of order 5".into()
            });
        }
        None => report.fail("ν does not preserve L_C"),
    }

    if let Some(nu) = &lc.nu {
        for t in Weight4Type::ALL {
            let rep = lc
                .coordinates(&t.representative().half_coordinates())
                .ok_or(Error::NotInLattice)?;
            report.require(l.norm(&rep) == big(4), || format!("β(c) of type {t} does not have norm 4"));
            let shape = orbit_shape(l, &rep, nu)?;
            let ok = match t {
                Weight4Type::IV => shape == OrbitShape::A4One,
                _ => matches!(shape, OrbitShape::Sqrt2A { .. }),
            };
            report.require(ok, || format!("A(β(c)) of type {t} has shape {shape:?}"));
        }
    }

    report.absorb(verify_lc_discriminant(&lc)?);
    report.absorb(verify_ee8_pair()?);
    let report = report.with_payload(json!({
        "code": props.to_json(),
        "type_counts": {
            "I": class.count(Weight4Type::I),
            "II": class.count(Weight4Type::II),
            "III": class.count(Weight4Type::III),
            "IV": class.count(Weight4Type::IV),
        },
        "lattice": {
            "rank": l.rank(),
            "determinant": l.determinant().to_integer().to_string(),
            "minimum": min.to_integer().to_i64(),
            "shell2": s2,
            "shell4": shell4,
        },
    }));
    Ok(CaseStudy {
        properties: props,
        classification: class,
        shell4,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v(bits: &[u8]) -> F2Vec {
        F2Vec::from_slice(bits)
    }

    #[test]
    fn k_forms() {
        assert!(k_quadratic(&v(&[1, 0, 0, 0]), 5).unwrap());
        assert!(!k_quadratic(&v(&[1, 0, 1, 1]), 5).unwrap());
        assert!(k_inner(&v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0]), 5).unwrap());
        assert!(k_inner(&v(&[1, 0]), &v(&[1, 0, 0, 0]), 5).is_err());
        for p in [3, 5, 7, 9] {
            assert!(KSpace::new(p).unwrap().is_nondegenerate());
        }
        assert!(KSpace::new(4).is_err());
    }

    #[test]
    fn k_quadratic_polarizes_to_inner() {
        let k = KSpace::new(5).unwrap();
        for a in 0u64..16 {
            for b in 0u64..16 {
                let (u, w) = (F2Vec::from_bits(a, 4), F2Vec::from_bits(b, 4));
                let lhs = k.quadratic(&(u + w)).unwrap() ^ k.quadratic(&u).unwrap() ^ k.quadratic(&w).unwrap();
                assert_eq!(lhs, k.inner(&u, &w).unwrap());
            }
        }
    }

    #[test]
    fn block_nu_matches_lattice_nu() {
        let k = KSpace::new(5).unwrap();
        let nu = crate::lattice::coxeter_nu::<i64>(5);
        for a in 0u64..16 {
            let u = F2Vec::from_bits(a, 4);
            let x: Vec<Q<i64>> = u.to_vec().iter().map(|&b| rat(b as i64)).collect();
            let image = nu.apply(&x);
            let reduced = F2Vec::from_parities(image.iter().map(|y| y.to_integer().rem_euclid(2) == 1));
            assert_eq!(k.nu(&u), reduced);
        }
    }

    #[test]
    fn codeword_weights() {
        assert_eq!(codeword_weight(&Codeword::zero(5, 4), 5).unwrap(), 0);
        let c1 = Code::builtin_5b().generators()[0];
        assert_eq!(codeword_weight(&c1, 5).unwrap(), 4);
        let t3 = Weight4Type::III.representative();
        assert_eq!(codeword_weight(&t3, 5).unwrap(), 4);
        let mut w = BlockWeights::new(5).unwrap();
        assert_eq!(w.block_weights(&t3).unwrap(), vec![1, 1, 2, 0]);
    }

    #[test]
    fn builtin_code_properties() {
        let code = Code::builtin_5b();
        let props = code_properties(&code).unwrap();
        assert_eq!(props.size, 256);
        assert!(props.self_dual && props.totally_isotropic && props.nu_invariant);
        let expected: BTreeMap<i64, usize> = [(0, 1), (4, 130), (6, 120), (8, 5)].into_iter().collect();
        assert_eq!(props.weight_distribution, expected);
        assert!(props.parity_law);
    }

    #[test]
    fn nu_cycles_generators() {
        let code = Code::builtin_5b();
        let g = code.generators();
        for base in [0, 4] {
            for i in 0..3 {
                assert_eq!(code.nu(&g[base + i]), g[base + i + 1]);
            }
            let sum = g[base] + g[base + 1] + g[base + 2] + g[base + 3];
            assert_eq!(code.nu(&g[base + 3]), sum);
            assert_eq!(code.nu(&sum), g[base]);
        }
    }

    #[test]
    fn small_codes() {
        let zero = Code::zero(5, 4).unwrap();
        let props = code_properties(&zero).unwrap();
        assert_eq!(props.weight_distribution, [(0, 1)].into_iter().collect());
        assert!(props.self_orthogonal);
        let mut row = vec![0u8; 16];
        row[0] = 1;
        let single = Code::from_rows(5, 4, &[row]).unwrap();
        let props = code_properties(&single).unwrap();
        assert!(!props.totally_isotropic);
        assert!(props.self_orthogonal);
        assert!(Code::from_rows(5, 4, &[vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn weight4_types() {
        let code = Code::builtin_5b();
        let class = classify_weight4(&code).unwrap();
        assert_eq!(class.counts(), [5, 5, 60, 60]);
        assert!(class.unclassified.is_empty());
        let c1 = code.generators()[0];
        assert!(class.by_type[&Weight4Type::I].contains(&c1));
        assert!(class.by_type[&Weight4Type::III].contains(&Weight4Type::III.representative()));
    }

    #[test]
    fn orbit_oracle_agrees() {
        let code = Code::builtin_5b();
        assert_eq!(alt4().len(), 12);
        let orbits = weight4_orbits(&code).unwrap();
        let sizes: Vec<usize> = Weight4Type::ALL.iter().map(|t| orbits[t].len()).collect();
        assert_eq!(sizes, vec![5, 5, 60, 60]);
        let class = classify_weight4(&code).unwrap();
        for t in Weight4Type::ALL {
            let set: BTreeSet<Codeword> = class.by_type[&t].iter().copied().collect();
            assert_eq!(set, orbits[&t]);
        }
    }

    #[test]
    fn zero_code_gives_n_power() {
        let lc = build_lattice::<i64>(&Code::zero(5, 2).unwrap()).unwrap();
        let n = sqrt2_a::<i64>(5);
        let expected = Lattice::direct_sum(&[n.clone(), n]);
        assert_eq!(lc.lattice.gram(), expected.gram());
        assert!(lc.warnings.is_empty());
    }

    #[test]
    fn non_isotropic_code_is_flagged() {
        let mut row = vec![0u8; 8];
        row[0] = 1;
        let code = Code::from_rows(5, 2, &[row]).unwrap();
        let lc = build_lattice::<i64>(&code).unwrap();
        assert!(lc.lattice.is_integral());
        assert!(!lc.lattice.is_even());
        assert_eq!(lc.warnings.len(), 1);
        assert_eq!(lc.glue_index().unwrap(), 2);
    }

    #[test]
    fn builtin_lattice_invariants() {
        let lc = build_lattice::<BigInt>(&Code::builtin_5b()).unwrap();
        assert_eq!(lc.lattice.rank(), 16);
        assert!(lc.lattice.is_even());
        assert_eq!(lc.lattice.determinant(), big(625));
        assert_eq!(lc.glue_index().unwrap(), BigInt::from(256));
        assert!(lc.nu.is_some());
        assert!(verify_lc_discriminant(&lc).unwrap().passed());
    }

    #[test]
    fn orbit_lattice_of_a_root() {
        let n = sqrt2_a::<i64>(5);
        let nu = crate::lattice::coxeter_nu::<i64>(5);
        let o = nu_orbit_sublattice(&n, &[rat(1), rat(0), rat(0), rat(0)], &nu).unwrap();
        assert_eq!(o.gram(), n.gram());
        assert_eq!(
            orbit_shape(&n, &[rat(1), rat(0), rat(0), rat(0)], &nu).unwrap(),
            OrbitShape::Sqrt2A { s: 1 }
        );
    }

    #[test]
    fn nu_pairings_by_type() {
        let code = Code::builtin_5b();
        let got: Vec<i64> = Weight4Type::ALL.iter().map(|t| nu_pairing(&code, &t.representative())).collect();
        assert_eq!(got, vec![-2, 0, -2, -1]);
    }

    #[test]
    fn ee8_pair() {
        let r = verify_ee8_pair().unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn case_study_passes() {
        let cs = verify_case_study().unwrap();
        assert!(cs.report.passed(), "{}", cs.report);
        assert!(cs.shell4 > 0);
    }
}
