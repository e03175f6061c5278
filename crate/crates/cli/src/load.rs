//! JSON loaders for lattices, sublattices and codes.
//!
//! Every schema violation is reported with a JSON pointer to the offending
//! field.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use parafermion::code::Code;
use parafermion::lattice::{Lattice, Sublattice};
use parafermion::matrix::Matrix;
use parafermion::scalar::parse_ratio;
use parafermion::Rational;
use serde_json::Value;

/// A load failure: the source, a JSON pointer and a message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadError {
    pub source: String,
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pointer = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{}: {}: {}", self.source, pointer, self.message)
    }
}

impl std::error::Error for LoadError {}

type Loaded<T> = std::result::Result<T, LoadError>;

struct Ctx<'a> {
    source: &'a str,
}

impl Ctx<'_> {
    fn err(&self, pointer: impl Into<String>, message: impl Into<String>) -> LoadError {
        LoadError {
            source: self.source.to_string(),
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    fn object<'v>(&self, v: &'v Value, ptr: &str) -> Loaded<&'v serde_json::Map<String, Value>> {
        v.as_object().ok_or_else(|| self.err(ptr, "expected an object"))
    }

    fn field<'v>(&self, obj: &'v serde_json::Map<String, Value>, ptr: &str, name: &str) -> Loaded<&'v Value> {
        obj.get(name)
            .ok_or_else(|| self.err(ptr, format!("missing field \"{name}\"")))
    }

    fn array<'v>(&self, v: &'v Value, ptr: &str) -> Loaded<&'v Vec<Value>> {
        v.as_array().ok_or_else(|| self.err(ptr, "expected an array"))
    }

    fn usize(&self, v: &Value, ptr: &str) -> Loaded<usize> {
        v.as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| self.err(ptr, "expected a non-negative integer"))
    }

    fn rational(&self, v: &Value, ptr: &str) -> Loaded<Rational> {
        match v {
            Value::String(s) => parse_ratio(s).map_err(|e| self.err(ptr, e.to_string())),
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_ratio(&n.to_string()).map_err(|e| self.err(ptr, e.to_string()))
            }
            _ => Err(self.err(ptr, "expected an integer or a string \"a/b\"")),
        }
    }

    fn rational_matrix(&self, v: &Value, ptr: &str, cols: usize) -> Loaded<Vec<Vec<Rational>>> {
        let rows = self.array(v, ptr)?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let rptr = format!("{ptr}/{i}");
            let entries = self.array(row, &rptr)?;
            if entries.len() != cols {
                return Err(self.err(
                    &rptr,
                    format!("row has {} entries, expected {cols}", entries.len()),
                ));
            }
            out.push(
                entries
                    .iter()
                    .enumerate()
                    .map(|(j, e)| self.rational(e, &format!("{rptr}/{j}")))
                    .collect::<Loaded<Vec<_>>>()?,
            );
        }
        Ok(out)
    }
}

fn parse_text(source: &str, text: &str) -> Loaded<Value> {
    serde_json::from_str(text).map_err(|e| LoadError {
        source: source.to_string(),
        pointer: String::new(),
        message: format!("malformed JSON: {e}"),
    })
}

fn read(path: &Path) -> Loaded<String> {
    fs::read_to_string(path).map_err(|e| LoadError {
        source: path.display().to_string(),
        pointer: String::new(),
        message: e.to_string(),
    })
}

fn lattice_from_value(ctx: &Ctx, v: &Value, base: &str) -> Loaded<Lattice> {
    let obj = ctx.object(v, base)?;
    let gram_ptr = format!("{base}/gram");
    let rank_ptr = format!("{base}/rank");
    let gram_value = ctx.field(obj, base, "gram")?;
    let rows = ctx.array(gram_value, &gram_ptr)?.len();
    let rank = match obj.get("rank") {
        Some(r) => ctx.usize(r, &rank_ptr)?,
        None => rows,
    };
    if rows != rank {
        return Err(ctx.err(&gram_ptr, format!("gram has {rows} rows but rank is {rank}")));
    }
    if rank == 0 {
        return Err(ctx.err(&rank_ptr, "rank must be positive"));
    }
    let gram = ctx.rational_matrix(gram_value, &gram_ptr, rank)?;
    for i in 0..rank {
        for j in i + 1..rank {
            if gram[i][j] != gram[j][i] {
                return Err(ctx.err(
                    format!("{gram_ptr}/{i}/{j}"),
                    format!(
                        "Gram matrix is not symmetric at cell ({i},{j}): {} vs {}",
                        gram[i][j], gram[j][i]
                    ),
                ));
            }
        }
    }
    Lattice::new(Matrix::from_vecs(gram)).map_err(|e| ctx.err(&gram_ptr, e.to_string()))
}

/// Parses `{"rank", "gram"}`; Gram entries are integers or `"a/b"` strings.
pub fn parse_lattice(source: &str, text: &str) -> Loaded<Lattice> {
    let ctx = Ctx { source };
    lattice_from_value(&ctx, &parse_text(source, text)?, "")
}

pub fn load_lattice(path: &Path) -> Loaded<Lattice> {
    parse_lattice(&path.display().to_string(), &read(path)?)
}

/// A sublattice together with the lattice it lives in.
#[derive(Clone, Debug)]
pub struct LoadedSublattice {
    pub parent: Lattice,
    pub sublattice: Sublattice,
}

/// Parses `{"parent", "basis"}`. The parent is either an inline lattice
/// object or a path, resolved relative to `dir`.
pub fn parse_sublattice(source: &str, text: &str, dir: &Path) -> Loaded<LoadedSublattice> {
    let ctx = Ctx { source };
    let value = parse_text(source, text)?;
    let obj = ctx.object(&value, "")?;
    let parent = match ctx.field(obj, "", "parent")? {
        Value::String(p) => {
            let path: PathBuf = dir.join(p);
            load_lattice(&path)?
        }
        inline @ Value::Object(_) => lattice_from_value(&ctx, inline, "/parent")?,
        _ => return Err(ctx.err("/parent", "expected a path or a lattice object")),
    };
    let n = parent.rank();
    let basis = ctx.rational_matrix(ctx.field(obj, "", "basis")?, "/basis", n)?;
    for (i, row) in basis.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_integer() {
                return Err(ctx.err(
                    format!("/basis/{i}/{j}"),
                    "sublattice vectors must have integer coordinates",
                ));
            }
        }
    }
    let sublattice = if basis.is_empty() {
        Sublattice::zero(n)
    } else {
        Sublattice::new(Matrix::from_vecs(basis))
    };
    Ok(LoadedSublattice { parent, sublattice })
}

pub fn load_sublattice(path: &Path) -> Loaded<LoadedSublattice> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    parse_sublattice(&path.display().to_string(), &read(path)?, dir)
}

/// Parses `{"p", "d", "generators"}` with 0/1 generator rows of length `(p−1)d`.
pub fn parse_code(source: &str, text: &str) -> Loaded<Code> {
    let ctx = Ctx { source };
    let value = parse_text(source, text)?;
    let obj = ctx.object(&value, "")?;
    let p = ctx.usize(ctx.field(obj, "", "p")?, "/p")?;
    if p < 3 || p % 2 == 0 {
        return Err(ctx.err("/p", format!("p = {p} must be odd and at least 3")));
    }
    let d = ctx.usize(ctx.field(obj, "", "d")?, "/d")?;
    if d == 0 {
        return Err(ctx.err("/d", "d must be positive"));
    }
    let len = (p - 1) * d;
    if len > 64 {
        return Err(ctx.err("/d", format!("codes of length {len} exceed the 64-bit limit")));
    }
    let gens = ctx.array(ctx.field(obj, "", "generators")?, "/generators")?;
    let mut rows = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let gptr = format!("/generators/{i}");
        let bits = ctx.array(g, &gptr)?;
        if bits.len() != len {
            return Err(ctx.err(&gptr, format!("generator has length {}, expected {len}", bits.len())));
        }
        let mut row = Vec::with_capacity(len);
        for (j, b) in bits.iter().enumerate() {
            match b.as_u64() {
                Some(x @ (0 | 1)) => row.push(x as u8),
                _ => return Err(ctx.err(format!("{gptr}/{j}"), "expected 0 or 1")),
            }
        }
        rows.push(row);
    }
    Code::from_rows(p, d, &rows).map_err(|e| ctx.err("/generators", e.to_string()))
}

pub fn load_code(path: &Path) -> Loaded<Code> {
    parse_code(&path.display().to_string(), &read(path)?)
}
