//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parafermion::central_ext::{lift, mu_plus_mu_g_solve, reduce_mod2, standard_epsilon, theta};
use parafermion::code::{build_lattice, verify_case_study, Code};
use parafermion::f2::F2Vec;
use parafermion::fusion::{canonical_label, fuse, fuse_vectors, verify_weight_one_tops, verify_zk_grading, verify_zk_grading_with};
use parafermion::golden::U5aGolden;
use parafermion::lattice::orders::{
    dihedral_power_order, nu_orders, sl2_central_product_extension_order, sl2_order, tensor_sigma_group_order,
    tensor_with_nu, torus_centralizer_order, unit_group_order,
};
use parafermion::lattice::{
    coxeter_nu, dual_sublattice, minimum, one_minus_image, quotient_invariants, r_cap_p_dual_index, reflection,
    root_lattice, rssd_involution, shell, sqrt2_a, sublattice_dual, Isometry, Lattice, RootFamily, Sublattice,
};
use parafermion::matrix::Matrix;
use parafermion::orbifold::{derive_full_table, generator_fuse, verify_collapse, verify_sigma_grading, OrbLabel};
use parafermion::u5a::verify_appendix;
use parafermion::{FusionVector, IrrLabel, Rational};

/// Outcome of one criterion: the failures found, empty when it passes.
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(message());
        }
    }

    fn report(&mut self, r: &parafermion::Report) {
        for f in r.failures() {
            self.failures.push(format!("{}: {f}", r.check));
        }
        if !r.passed() && r.failures().next().is_none() {
            self.failures.push(format!("{} failed", r.check));
        }
    }

    fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(big(n))
}

// Criterion 1

fn c1_fusion_axioms() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut max_mult = 0;
    for k in 2..=8u32 {
        let labels = IrrLabel::all(k);
        let one = IrrLabel::identity(k);
        for a in &labels {
            out.check(fuse(&one, a).unwrap() == FusionVector::single(*a), || format!("k={k}: 1 ⊠ {a} ≠ {a}"));
            out.check(fuse(a, &one).unwrap() == FusionVector::single(*a), || format!("k={k}: {a} ⊠ 1 ≠ {a}"));
            for b in &labels {
                let ab = fuse(a, b).unwrap();
                max_mult = max_mult.max(ab.max_multiplicity());
                out.check(ab == fuse(b, a).unwrap(), || format!("k={k}: {a} ⊠ {b} is not commutative"));
            }
        }
        let assoc = |x: &IrrLabel, y: &IrrLabel, z: &IrrLabel| {
            let (x, y, z) = (FusionVector::single(*x), FusionVector::single(*y), FusionVector::single(*z));
            fuse_vectors(&fuse_vectors(&x, &y), &z) == fuse_vectors(&x, &fuse_vectors(&y, &z))
        };
        if k <= 6 {
            for a in &labels {
                for b in &labels {
                    for c in &labels {
                        out.check(assoc(a, b, c), || format!("k={k}: ({a},{b},{c}) is not associative"));
                    }
                }
            }
        } else {
            for _ in 0..10_000 {
                let pick = |rng: &mut ChaCha8Rng| labels[rng.gen_range(0..labels.len())];
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                out.check(assoc(&a, &b, &c), || format!("k={k}: ({a},{b},{c}) is not associative"));
            }
        }
    }
    out.note(format!("largest fusion multiplicity for k ≤ 8: {max_mult}"));
    out
}

// Criterion 2

fn c2_zk_grading() -> Outcome {
    let mut out = Outcome::new();
    for k in 2..=12 {
        out.report(&verify_zk_grading(k).unwrap());
    }
    for k in 3..=12u32 {
        let labels = IrrLabel::all(k);
        let target = (labels[1], labels[2]);
        let mutated = verify_zk_grading_with(k, |a, b| {
            let p = fuse(a, b).unwrap();
            if (*a, *b) != target {
                return p;
            }
            let mut flipped = FusionVector::new();
            for (n, (c, m)) in p.iter().enumerate() {
                let c = if n == 0 {
                    canonical_label(c.i() as i64, (c.j() ^ 1) as i64, k as i64).unwrap()
                } else {
                    *c
                };
                flipped.add(c, m);
            }
            flipped
        })
        .unwrap();
        out.check(!mutated.passed(), || format!("k={k}: a one-bit mutation went unnoticed"));
    }
    out
}

// Criterion 3

/// The generator products written out case by case.
fn generator_oracle(g: (u32, u8), x: OrbLabel) -> FusionVector<OrbLabel> {
    let k = x.k;
    let l = |j: u32, eps: u8| OrbLabel { j, eps, k };
    let flip = |v: FusionVector<OrbLabel>| v.map_labels(|y| l(y.j, 1 - y.eps));
    match g {
        (0, 0) => FusionVector::single(x),
        (0, 1) => FusionVector::single(l(x.j, 1 - x.eps)),
        (1, 0) if x.eps == 1 => flip(generator_oracle((1, 0), l(x.j, 0))),
        (1, 0) => {
            let j = x.j;
            let terms: Vec<OrbLabel> = if j == 0 {
                vec![l(1, 0)]
            } else if 2 * j < k - 1 {
                vec![l(j - 1, 0), l(j, 1), l(j + 1, 0)]
            } else if k % 2 == 1 {
                vec![l(j - 1, 0), l(j, 1)]
            } else {
                vec![l(j - 1, 0)]
            };
            terms.into_iter().collect()
        }
        _ => unreachable!(),
    }
}

fn c3_orbifold() -> Outcome {
    let mut out = Outcome::new();
    for k in 3..=12u32 {
        let table = match derive_full_table(k) {
            Ok(t) => t,
            Err(e) => {
                out.failures.push(format!("k={k}: {e}"));
                continue;
            }
        };
        out.check(table.self_check().is_ok(), || format!("k={k}: self-check failed"));
        for x in OrbLabel::basis(k) {
            for g in [(0u32, 1u8), (1, 0)] {
                let gl = OrbLabel { j: g.0, eps: g.1, k };
                let expected = generator_oracle(g, x);
                out.check(*table.get(&gl, &x) == expected, || {
                    format!("k={k}: table row {gl} ⊠ {x} = {} but the relations give {expected}", table.get(&gl, &x))
                });
                out.check(generator_fuse(&gl, &x).unwrap() == expected, || {
                    format!("k={k}: generator_fuse({gl}, {x}) differs from the relations")
                });
            }
        }
        out.report(&verify_sigma_grading(k).unwrap());
        out.report(&verify_collapse(k).unwrap());
    }
    let o = |j, eps, k| OrbLabel { j, eps, k };
    let odd = generator_fuse(&o(1, 0, 3), &o(1, 0, 3)).unwrap();
    out.check(odd == [o(0, 0, 3), o(1, 1, 3)].into_iter().collect(), || format!("k=3 boundary: {odd}"));
    let even = generator_fuse(&o(1, 0, 6), &o(3, 0, 6)).unwrap();
    out.check(even == FusionVector::single(o(2, 0, 6)), || format!("k=6 boundary: {even}"));
    out
}

// Criterion 4

fn c4_weight_one() -> Outcome {
    let mut out = Outcome::new();
    for k in 3..=30 {
        let r = verify_weight_one_tops(k).unwrap();
        out.report(&r);
        let sums = r.payload["sums"].as_array().cloned().unwrap_or_default();
        out.check(sums.len() == k as usize - 1 && sums.iter().all(|s| s == "1"), || {
            format!("k={k}: branching sums {sums:?}")
        });
    }
    out
}

// Criterion 5

fn quotient_order(l: &Lattice, s: &Sublattice) -> BigInt {
    quotient_invariants(l, s).unwrap().iter().product()
}

fn c5_quotients() -> Outcome {
    let mut out = Outcome::new();
    for k in 3..=12usize {
        let n: Lattice = sqrt2_a(k);
        let s = one_minus_image(&coxeter_nu::<BigInt>(k));
        let q = quotient_order(&n, &s);
        out.check(q == big(k as i64), || format!("k={k}: |N/(1−ν)N| = {q}"));
        let outer = sublattice_dual(&n, &s).unwrap();
        let d = outer.index_of(&dual_sublattice(&n)).unwrap();
        out.check(d == big(k as i64), || format!("k={k}: |((1−ν)N)*/N*| = {d}"));
    }
    for (p, family, n) in [(3usize, RootFamily::A, 2usize), (3, RootFamily::E, 6), (5, RootFamily::A, 2)] {
        let (l, nu) = tensor_with_nu(p, family, n).unwrap();
        let q = quotient_order(&l, &one_minus_image(&nu));
        let expected = big(p as i64).pow(n as u32);
        out.check(q == expected, || format!("p={p}, R={family}{n}: quotient {q}, expected {expected}"));
    }
    let cases: [(RootFamily, usize, u64, i64); 8] = [
        (RootFamily::A, 4, 5, 5),
        (RootFamily::A, 2, 3, 3),
        (RootFamily::A, 9, 5, 5),
        (RootFamily::E, 6, 3, 3),
        (RootFamily::E, 8, 5, 1),
        (RootFamily::A, 2, 5, 1),
        (RootFamily::D, 4, 3, 1),
        (RootFamily::E, 7, 3, 1),
    ];
    for (family, n, p, expected) in cases {
        let r: Lattice = root_lattice(family, n).unwrap();
        let idx = r_cap_p_dual_index(&r, p).unwrap();
        let rule = match family {
            RootFamily::A if (n as u64 + 1) % p == 0 => p as i64,
            RootFamily::E if n == 6 && p == 3 => 3,
            _ => 1,
        };
        out.check(rule == expected, || format!("{family}{n}, p={p}: case rule gives {rule}"));
        out.check(idx == big(expected), || format!("{family}{n}, p={p}: |(R∩pR*)/pR| = {idx}, expected {expected}"));
    }
    out
}

// Criterion 6

fn nu_lift(k: usize) -> parafermion::central_ext::Lift {
    let n: Lattice = sqrt2_a(k);
    let eps = standard_epsilon(&n).unwrap();
    lift(&n, &coxeter_nu(k), &eps, None).unwrap()
}

fn c6_lifts() -> Outcome {
    let mut out = Outcome::new();
    for k in 3..=9usize {
        let l = nu_lift(k);
        let order = l.order().unwrap();
        out.check(order == k, || format!("k={k}: |ν̂| = {order}"));
        out.report(&l.order_cross_check().unwrap());
        let n: Lattice = sqrt2_a(k);
        let th = theta(&n, &standard_epsilon(&n).unwrap()).unwrap();
        let t = th.order().unwrap();
        out.check(t == 2, || format!("k={k}: |θ| = {t}"));
    }
    for k in [5usize, 7] {
        let g: Isometry = coxeter_nu(k);
        let g2 = reduce_mod2(g.matrix()).unwrap();
        let n = k - 1;
        let mut solved = 0;
        for bits in 0..(1u64 << n) {
            let lambda = F2Vec::from_bits(bits, n);
            match mu_plus_mu_g_solve(&g, &lambda) {
                Ok(mu) => {
                    let ok = (0..n).all(|i| mu.get(i) ^ mu.dot(&g2.row(i)) == lambda.get(i));
                    out.check(ok, || format!("k={k}: μ for λ={bits:b} does not satisfy μ + μ^ν = λ"));
                    solved += 1;
                }
                Err(e) => out.failures.push(format!("k={k}: λ={bits:b}: {e}")),
            }
        }
        out.note(format!("k={k}: solved all {solved} functionals"));
    }
    out
}

// Criterion 7

/// Coordinates of `a ⊗ r` in the basis `e_i ⊗ f_j`, `j` fastest.
fn kron_vec(a: &[BigInt], r: &[BigInt]) -> Vec<BigInt> {
    a.iter().flat_map(|x| r.iter().map(move |y| x * y)).collect()
}

fn c7_tensor() -> Outcome {
    let mut out = Outcome::new();
    let cases = [(3usize, RootFamily::A, 2usize, Some(18usize)), (3, RootFamily::A, 3, None), (5, RootFamily::A, 2, Some(60))];
    for (p, family, n, listed) in cases {
        let a: Lattice = root_lattice(RootFamily::A, p - 1).unwrap();
        let r: Lattice = root_lattice(family, n).unwrap();
        let l = a.tensor(&r);
        let min = minimum(&l).unwrap();
        out.check(min == rat(4), || format!("p={p}, R={family}{n}: min {min}"));
        let s4: BTreeSet<Vec<BigInt>> = shell(&l, &rat(4)).unwrap().into_iter().collect();
        let ra = shell(&a, &rat(2)).unwrap();
        let rr = shell(&r, &rat(2)).unwrap();
        let decomposables: BTreeSet<Vec<BigInt>> =
            ra.iter().flat_map(|x| rr.iter().map(move |y| kron_vec(x, y))).collect();
        let oracle = ra.len() * rr.len() / 2;
        out.check(decomposables.len() == oracle, || {
            format!("p={p}, R={family}{n}: {} distinct decomposables, expected {oracle}", decomposables.len())
        });
        out.check(s4 == decomposables, || {
            format!("p={p}, R={family}{n}: shell(4) has {} vectors, decomposables {}", s4.len(), decomposables.len())
        });
        if let Some(c) = listed {
            out.check(s4.len() == c, || format!("p={p}, R={family}{n}: |shell(4)| = {}, listed {c}", s4.len()));
        }
        out.note(format!("|A_{}⊗{family}{n}(4)| = {} = {}·{}/2", p - 1, s4.len(), ra.len(), rr.len()));

        let one: Isometry = Isometry::identity(p - 1);
        for b in 0..n {
            let mut beta = vec![BigInt::zero(); n];
            beta[b] = BigInt::one();
            let rows: Vec<Vec<Rational>> = (0..p - 1)
                .map(|s| {
                    let mut e = vec![BigInt::zero(); p - 1];
                    e[s] = BigInt::one();
                    kron_vec(&e, &beta).into_iter().map(Rational::from_integer).collect()
                })
                .collect();
            let a_beta = Sublattice::new(Matrix::from_vecs(rows));
            let t = rssd_involution(&l, &a_beta).unwrap();
            let expected = one.tensor(&reflection(&r, &beta).unwrap());
            out.check(t == expected, || format!("p={p}, R={family}{n}, β=e{b}: t_A_β ≠ 1⊗r_β"));
        }
    }
    out
}

// Criterion 8

fn c8_case_study() -> Outcome {
    let mut out = Outcome::new();
    let study = verify_case_study().unwrap();
    out.report(&study.report);
    out.note(format!("|L_C(4)| = {}", study.shell4));
    out
}

// Criterion 9

fn c9_appendix() -> Outcome {
    let mut out = Outcome::new();
    out.report(&verify_appendix(&U5aGolden::builtin()).unwrap());
    out
}

// Criterion 10

fn c10_orders() -> Outcome {
    let mut out = Outcome::new();
    for k in 3..=12usize {
        let o = nu_orders(k).unwrap();
        let kk = big(k as i64);
        out.check(o.psi == kk, || format!("k={k}: |⟨ψ⟩| = {}", o.psi));
        out.check(o.centralizer == big(2) * &kk * &kk, || format!("k={k}: |C(ν̂)| = {}", o.centralizer));
        let units = big(unit_group_order(k as u64) as i64);
        out.check(o.normalizer_quotient == big(2) * &kk * &units, || {
            format!("k={k}: |N(⟨ν̂⟩)/⟨ν̂⟩| = {}", o.normalizer_quotient)
        });
    }
    for p in [3usize, 5, 7, 11] {
        let o = nu_orders(p).unwrap();
        let expected = big((2 * p * (p - 1)) as i64);
        out.check(o.normalizer_quotient == expected, || format!("p={p}: |p:(2×(p−1))| = {}", o.normalizer_quotient));
    }
    let t = tensor_sigma_group_order(3, RootFamily::A, 2).unwrap();
    out.check(t.quotient == big(9) && t.torus == big(3) && t.total == big(18), || format!("(3,A2): {t:?}"));
    let t = tensor_sigma_group_order(5, RootFamily::A, 2).unwrap();
    out.check(t.quotient == big(25) && t.torus == big(25) && t.total == big(150), || format!("(5,A2): {t:?}"));
    let t = tensor_sigma_group_order(3, RootFamily::E, 6).unwrap();
    out.check(t.quotient == big(729) && t.torus == big(243), || format!("(3,E6): {t:?}"));

    let lc = build_lattice::<BigInt>(&Code::builtin_5b()).unwrap();
    let nu = lc.nu.clone().expect("ν preserves L_C");
    let torus = torus_centralizer_order(&lc.lattice, &nu).unwrap();
    out.check(torus == big(625), || format!("|L_C/(1−ν)L_C| = {torus}"));
    out.check(dihedral_power_order(5, 4) == big(10_000), || "|Dih₁₀⁴| ≠ 10⁴".into());
    out.check(sl2_order(5) == big(120), || "|SL₂(5)| ≠ 120".into());
    let ext = sl2_central_product_extension_order(&torus);
    out.check(ext == big(625 * 120 * 120), || format!("|5⁴.((SL₂(5)∘SL₂(5)):2)| = {ext}"));
    out.note("group identifications are replaced by these order computations");
    out
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 fusion-ring axioms, 2 ≤ k ≤ 8", c1_fusion_axioms),
        ("2 Z_k grading, 2 ≤ k ≤ 12, plus mutation", c2_zk_grading),
        ("3 orbifold table, 3 ≤ k ≤ 12", c3_orbifold),
        ("4 weight-one tops, 3 ≤ k ≤ 30", c4_weight_one),
        ("5 lattice quotients", c5_quotients),
        ("6 lift calculus", c6_lifts),
        ("7 tensor lattices", c7_tensor),
        ("8 rank-16 code case study", c8_case_study),
        ("9 U_5A tables", c9_appendix),
        ("10 order arithmetic", c10_orders),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    for (name, f) in criteria {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        let tag = if out.failures.is_empty() { "PASS" } else { "FAIL" };
        let _ = writeln!(stdout, "{tag} criterion {name} ({secs:.2}s)");
        for n in &out.notes {
            let _ = writeln!(stdout, "    - {n}");
        }
        for f in out.failures.iter().take(10) {
            let _ = writeln!(stdout, "    ! {f}");
        }
        if !out.failures.is_empty() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
