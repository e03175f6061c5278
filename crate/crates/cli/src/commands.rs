use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::One;
use parafermion::central_ext::{lift, standard_epsilon, theta};
use parafermion::code::{build_lattice, code_properties, verify_case_study, Code, CodeProperties};
use parafermion::fusion::{fuse, verify_zk_grading, IrrLabel};
use parafermion::golden::{load_code_5b, U5aGolden};
use parafermion::lattice::{
    coxeter_nu, dual_sublattice, is_rssd, minimum, one_minus_image, quotient_invariants, root_lattice,
    rssd_involution, shell, sqrt2_a, sublattice_dual, Lattice, RootFamily,
};
use parafermion::orbifold::{derive_full_table, orbifold_weight, verify_collapse, verify_sigma_grading};
use parafermion::report::Report;
use parafermion::scalar::format_ratio;
use parafermion::u5a::{fusion_table, render_table, verify_appendix, U5a};
use parafermion::{Error, Rational};
use serde_json::{json, Value};

use crate::args::{LcArgs, U5aArgs, U5aCommand};
use crate::load::{load_code, load_lattice, load_sublattice, LoadError};

/// What a subcommand produced. `passed` is `None` for pure table output.
pub struct Response {
    pub passed: Option<bool>,
    pub text: String,
    pub json: Value,
}

impl Response {
    fn info(text: String, json: Value) -> Self {
        Response {
            passed: None,
            text,
            json,
        }
    }

    fn verdict(passed: bool, text: String, json: Value) -> Self {
        Response {
            passed: Some(passed),
            text,
            json,
        }
    }

    fn report(report: Report) -> Self {
        Response {
            passed: Some(report.passed()),
            text: report.to_string(),
            json: serde_json::to_value(&report).expect("reports serialize"),
        }
    }
}

/// A failure that is the caller's fault: bad arguments or inputs.
#[derive(Debug)]
pub enum UsageError {
    Message(String),
    Load(LoadError),
    Library(Error),
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UsageError::Message(m) => f.write_str(m),
            UsageError::Load(e) => write!(f, "{e}"),
            UsageError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<LoadError> for UsageError {
    fn from(e: LoadError) -> Self {
        UsageError::Load(e)
    }
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError::Library(e)
    }
}

pub type CmdResult = std::result::Result<Response, UsageError>;

fn ratio(v: &Rational) -> String {
    format_ratio(v)
}

fn label_json(l: &IrrLabel) -> Value {
    json!({ "i": l.i(), "j": l.j() })
}

fn parse_label(text: &str, k: u32) -> std::result::Result<IrrLabel, UsageError> {
    let bad = || UsageError::Message(format!("label {text:?} is not of the form \"i,j\""));
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    let i: i64 = i.trim().parse().map_err(|_| bad())?;
    let j: i64 = j.trim().parse().map_err(|_| bad())?;
    Ok(IrrLabel::new(i, j, k as i64)?)
}

pub fn fuse_cmd(k: u32, left: &str, right: &str) -> CmdResult {
    let a = parse_label(left, k)?;
    let b = parse_label(right, k)?;
    let product = fuse(&a, &b)?;
    let terms: Vec<Value> = product
        .iter()
        .map(|(l, m)| json!({ "label": label_json(l), "multiplicity": m }))
        .collect();
    Ok(Response::info(
        product.to_string(),
        json!({ "level": k, "left": label_json(&a), "right": label_json(&b), "product": terms }),
    ))
}

pub fn weights_cmd(k: u32) -> CmdResult {
    if k < 2 {
        return Err(Error::InvalidLevel {
            k: k as i64,
            reason: "the level must be at least 2",
        }
        .into());
    }
    let mut text = format!("{:<10} {:<10} {:>8}  notes\n", "label", "tilde", "weight");
    let mut rows = Vec::new();
    for l in IrrLabel::all(k) {
        let t = l.to_tilde();
        let w = l.conformal_weight();
        let mut notes = Vec::new();
        if l.is_simple_current() {
            notes.push("simple current".to_string());
        }
        if let Some(j) = l.sigma_index() {
            notes.push(format!("σ-type j={j}"));
        }
        let _ = writeln!(
            text,
            "{:<10} {:<10} {:>8}  {}",
            l.to_string(),
            format!("~[{},{}]", t.i, t.l),
            w.to_string(),
            notes.join(", ")
        );
        rows.push(json!({
            "label": label_json(&l),
            "tilde": { "i": t.i, "l": t.l },
            "weight": ratio(&w),
            "simple_current": l.is_simple_current(),
            "sigma_type": l.is_sigma_type(),
        }));
    }
    Ok(Response::info(text.trim_end().to_string(), json!({ "level": k, "modules": rows })))
}

pub fn zk_check_cmd(k: u32) -> CmdResult {
    Ok(Response::report(verify_zk_grading(k)?))
}

pub fn orbifold_table_cmd(k: u32) -> CmdResult {
    let table = derive_full_table(k)?;
    let check = table.self_check();
    let basis = table.basis();
    let mut text = String::from("module   weight\n");
    let mut modules = Vec::new();
    for x in &basis {
        let w = orbifold_weight(x);
        let _ = writeln!(text, "{:<8} {}", x.to_string(), w);
        modules.push(json!({ "j": x.j, "eps": x.eps, "weight": ratio(&w) }));
    }
    text.push('\n');
    let mut products = Vec::new();
    for (n, x) in basis.iter().enumerate() {
        for y in &basis[n..] {
            let p = table.get(x, y);
            let _ = writeln!(text, "{x} × {y} = {p}");
            let terms: Vec<Value> = p
                .iter()
                .map(|(z, m)| json!({ "j": z.j, "eps": z.eps, "multiplicity": m }))
                .collect();
            products.push(json!({
                "left": { "j": x.j, "eps": x.eps },
                "right": { "j": y.j, "eps": y.eps },
                "product": terms,
            }));
        }
    }
    let verdict = match &check {
        Ok(()) => "self-check passed (identity, symmetry, associativity)".to_string(),
        Err(e) => format!("self-check FAILED: {e}"),
    };
    text.push_str(&verdict);
    Ok(Response::verdict(
        check.is_ok(),
        text,
        json!({
            "level": k,
            "modules": modules,
            "products": products,
            "self_check": { "passed": check.is_ok(), "message": verdict },
        }),
    ))
}

pub fn sigma_check_cmd(k: u32) -> CmdResult {
    let mut report = Report::new(format!("sigma-check k={k}"));
    report.absorb(verify_sigma_grading(k)?);
    report.absorb(verify_collapse(k)?);
    if report.passed() {
        report.note("σ sign grading and collapse to the parent ring hold");
    }
    Ok(Response::report(report))
}

fn lattice_summary(l: &Lattice) -> Result<(String, Value), Error> {
    let det = l.determinant();
    let min = minimum(l)?;
    let kissing = shell(l, &min)?.len();
    let disc = if l.is_integral() {
        Some(l.discriminant_group()?.invariant_factors)
    } else {
        None
    };
    let disc_text = match &disc {
        Some(f) if f.is_empty() => "trivial".to_string(),
        Some(f) => f.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" × "),
        None => "n/a (not integral)".to_string(),
    };
    let text = format!(
        "rank: {}\ndeterminant: {}\nintegral: {}\neven: {}\nminimum: {}\n|L(min)|: {}\ndiscriminant group: {}",
        l.rank(),
        det,
        l.is_integral(),
        l.is_even(),
        min,
        kissing,
        disc_text
    );
    let json = json!({
        "rank": l.rank(),
        "determinant": ratio(&det),
        "integral": l.is_integral(),
        "even": l.is_even(),
        "minimum": ratio(&min),
        "minimal_vectors": kissing,
        "discriminant_invariants": disc.map(|f| f.iter().map(BigInt::to_string).collect::<Vec<_>>()),
        "gram": l.gram().to_vecs().iter().map(|r| r.iter().map(ratio).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok((text, json))
}

pub fn lattice_info_cmd(builtin: Option<&str>, path: Option<&Path>) -> CmdResult {
    let lattice = match (builtin, path) {
        (Some(name), _) => {
            let (family, n): (RootFamily, usize) = RootFamily::parse_type(name)?;
            root_lattice(family, n)?
        }
        (None, Some(p)) => load_lattice(p)?,
        (None, None) => {
            return Err(UsageError::Message(
                "lattice-info needs a lattice file or --builtin NAME".into(),
            ))
        }
    };
    let (text, json) = lattice_summary(&lattice)?;
    Ok(Response::info(text, json))
}

fn matrix_strings(m: &parafermion::matrix::Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_vecs().iter().map(|r| r.iter().map(ratio).collect()).collect()
}

fn matrix_text(m: &parafermion::matrix::Matrix<Rational>) -> String {
    m.to_vecs()
        .iter()
        .map(|r| format!("  [{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn rssd_cmd(path: &Path) -> CmdResult {
    let loaded = load_sublattice(path)?;
    let (l, a) = (&loaded.parent, &loaded.sublattice);
    if !is_rssd(l, a)? {
        return Ok(Response::verdict(
            false,
            format!("not RSSD: 2L is not contained in A + Ann_L(A) (rank A = {})", a.rank()),
            json!({ "rssd": false, "rank": a.rank() }),
        ));
    }
    let t = rssd_involution(l, a)?;
    let text = format!(
        "RSSD: yes (rank A = {})\ninvolution t_A (row convention, x ↦ x·T):\n{}",
        a.rank(),
        matrix_text(t.matrix())
    );
    Ok(Response::verdict(
        true,
        text,
        json!({ "rssd": true, "rank": a.rank(), "involution": matrix_strings(t.matrix()) }),
    ))
}

fn nontrivial(factors: Vec<BigInt>) -> Vec<BigInt> {
    factors.into_iter().filter(|d| !d.is_one()).collect()
}

fn order_of(factors: &[BigInt]) -> BigInt {
    factors.iter().product()
}

fn factors_text(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        "trivial".into()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" × ")
    }
}

pub fn quotient_cmd(level: Option<u32>, path: Option<&Path>) -> CmdResult {
    match (level, path) {
        (Some(k), _) => {
            if k < 3 {
                return Err(UsageError::Message(format!("-k must be at least 3, got {k}")));
            }
            let n: Lattice = sqrt2_a(k as usize);
            let s = one_minus_image(&coxeter_nu::<BigInt>(k as usize));
            let factors = nontrivial(quotient_invariants(&n, &s)?);
            let outer = sublattice_dual(&n, &s)?;
            let dual_index = outer.index_of(&dual_sublattice(&n))?;
            let order = order_of(&factors);
            let passed = order == BigInt::from(k) && dual_index == BigInt::from(k);
            let text = format!(
                "N = √2A_{}, ν the Coxeter isometry\nN/(1−ν)N: {} (order {order})\n((1−ν)N)*/N*: order {dual_index}\n{}",
                k - 1,
                factors_text(&factors),
                if passed { "both orders equal k" } else { "MISMATCH: expected both orders to equal k" }
            );
            Ok(Response::verdict(
                passed,
                text,
                json!({
                    "level": k,
                    "invariant_factors": factors.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    "order": order.to_string(),
                    "dual_order": dual_index.to_string(),
                }),
            ))
        }
        (None, Some(p)) => {
            let loaded = load_sublattice(p)?;
            let factors = nontrivial(quotient_invariants(&loaded.parent, &loaded.sublattice)?);
            let order = order_of(&factors);
            Ok(Response::info(
                format!("L/S: {} (order {order})", factors_text(&factors)),
                json!({
                    "invariant_factors": factors.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    "order": order.to_string(),
                }),
            ))
        }
        (None, None) => Err(UsageError::Message("quotient needs -k K or a sublattice file".into())),
    }
}

pub fn lift_order_cmd(k: u32) -> CmdResult {
    if k < 3 {
        return Err(UsageError::Message(format!("-k must be at least 3, got {k}")));
    }
    let n: Lattice = sqrt2_a(k as usize);
    let eps = standard_epsilon(&n)?;
    let nu_hat = lift(&n, &coxeter_nu(k as usize), &eps, None)?;
    let th = theta(&n, &eps)?;
    let mut report = Report::new(format!("lift-order k={k}"));
    let nu_order = nu_hat.order()?;
    let theta_order = th.order()?;
    report.require(nu_order == k as usize, || format!("|ν̂| = {nu_order}, expected {k}"));
    report.require(theta_order == 2, || format!("|θ| = {theta_order}, expected 2"));
    report.absorb(nu_hat.order_cross_check()?);
    report.note(format!("|ν̂| = {nu_order}, |θ| = {theta_order}"));
    Ok(Response::report(report.with_payload(json!({
        "level": k,
        "nu_hat_order": nu_order,
        "theta_order": theta_order,
    }))))
}

fn distribution_text(props: &CodeProperties) -> String {
    let parts: Vec<String> = props
        .weight_distribution
        .iter()
        .map(|(w, n)| format!("{w}:{n}"))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn generic_code_report(code: &Code) -> Result<Report, Error> {
    let mut report = Report::new(format!("lc-verify p={} d={}", code.p(), code.d()));
    let props = code_properties(code)?;
    let lc = build_lattice::<BigInt>(code)?;
    for w in &lc.warnings {
        report.fail(w.clone());
    }
    let l = &lc.lattice;
    let det = l.determinant();
    let min = minimum(l)?;
    report.note(format!("|C| = {}, weight distribution {}", props.size, distribution_text(&props)));
    report.note(format!(
        "L_C: rank {}, det {}, even {}, minimum {}",
        l.rank(),
        det,
        l.is_even(),
        min
    ));
    Ok(report.with_payload(json!({
        "code": props.to_json(),
        "lattice": {
            "rank": l.rank(),
            "determinant": ratio(&det),
            "even": l.is_even(),
            "minimum": ratio(&min),
            "nu_invariant": lc.nu.is_some(),
        },
    })))
}

pub fn lc_verify_cmd(args: &LcArgs) -> CmdResult {
    match (&args.builtin, &args.code) {
        (Some(name), _) => {
            Code::builtin(name)?;
            let study = verify_case_study()?;
            let mut report = study.report;
            if let Some(dir) = &args.golden_dir {
                let shipped = load_code_5b(dir)?;
                let reference = Code::builtin_5b();
                let same = shipped.dim() == reference.dim()
                    && shipped.generators().iter().all(|g| reference.contains(g));
                report.require(same, || format!("{} does not span the built-in code", dir.display()));
            }
            let mut resp = Response::report(report);
            resp.text = format!("weight distribution {}\n{}", distribution_text(&study.properties), resp.text);
            Ok(resp)
        }
        (None, Some(path)) => {
            let code = load_code(path)?;
            let report = generic_code_report(&code)?;
            Ok(Response::report(report))
        }
        (None, None) => Err(UsageError::Message("lc-verify needs --builtin NAME or a code file".into())),
    }
}

fn u5a_golden(dir: Option<&Path>) -> Result<U5aGolden, Error> {
    match dir {
        Some(d) => U5aGolden::load_dir(d),
        None => Ok(U5aGolden::builtin()),
    }
}

pub fn u5a_cmd(args: &U5aArgs) -> CmdResult {
    let golden = u5a_golden(args.golden_dir.as_deref())?;
    match args.command {
        U5aCommand::Verify => Ok(Response::report(verify_appendix(&golden)?)),
        U5aCommand::Table => {
            let u = U5a::new(golden)?;
            let table = fusion_table(&u)?;
            let mut text = String::from("module  weight  dim  summands\n");
            let mut modules = Vec::new();
            for l in u.labels() {
                let (w, d) = u.weight_dim(l);
                let summands: Vec<String> = u.row(l).iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "{:<7} {:>6} {:>4}  {}", l.to_string(), w.to_string(), d, summands.join(" ⊕ "));
                modules.push(json!({
                    "label": l.0,
                    "weight": ratio(&w),
                    "dimension": d,
                    "summands": summands,
                }));
            }
            text.push('\n');
            text.push_str(&render_table(&table));
            let products: Vec<Value> = table
                .iter()
                .map(|(&(i, j), p)| json!({ "i": i, "j": j, "product": p }))
                .collect();
            Ok(Response::info(
                text.trim_end().to_string(),
                json!({ "modules": modules, "fusion": products }),
            ))
        }
    }
}
