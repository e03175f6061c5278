//! Reference tables shipped as JSON under `golden/`.
//!
//! The library embeds the files at build time; callers may load a directory
//! with the same file names instead.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::fusion::Rational;
use crate::scalar::parse_ratio;

pub const DECOMPOSITIONS_FILE: &str = "u5a_decompositions.json";
pub const TOP_LEVELS_FILE: &str = "u5a_top_levels.json";
pub const FUSION_FILE: &str = "u5a_fusion.json";
pub const CODE_5B_FILE: &str = "code_5b.json";

const DECOMPOSITIONS: &str = include_str!("../golden/u5a_decompositions.json");
const TOP_LEVELS: &str = include_str!("../golden/u5a_top_levels.json");
const FUSION: &str = include_str!("../golden/u5a_fusion.json");
const CODE_5B: &str = include_str!("../golden/code_5b.json");

#[derive(Deserialize)]
struct DecompositionsFile {
    level: u32,
    rows: Vec<Vec<[i64; 4]>>,
}

#[derive(Deserialize)]
struct TopLevelsFile {
    weights: Vec<String>,
    dimensions: Vec<u32>,
}

#[derive(Deserialize)]
struct FusionEntry {
    i: usize,
    j: usize,
    product: Vec<usize>,
}

#[derive(Deserialize)]
struct FusionFile {
    products: Vec<FusionEntry>,
}

#[derive(Deserialize)]
struct CodeFile {
    p: usize,
    d: usize,
    generators: Vec<Vec<u8>>,
}

/// The `U_{5A}` reference tables.
#[derive(Clone, Debug, PartialEq)]
pub struct U5aGolden {
    pub level: u32,
    /// Nine rows of five `[i₁, j₁, i₂, j₂]` summands.
    pub rows: Vec<Vec<[i64; 4]>>,
    pub weights: Vec<Rational>,
    pub dimensions: Vec<u32>,
    /// `(i, j) ↦ sorted product`, stored for `i ≤ j`.
    pub fusion: BTreeMap<(usize, usize), Vec<usize>>,
}

fn parse_json<'a, D: Deserialize<'a>>(name: &str, text: &'a str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

impl U5aGolden {
    pub fn from_json(decompositions: &str, top_levels: &str, fusion: &str) -> Result<Self> {
        let dec: DecompositionsFile = parse_json(DECOMPOSITIONS_FILE, decompositions)?;
        let top: TopLevelsFile = parse_json(TOP_LEVELS_FILE, top_levels)?;
        let fus: FusionFile = parse_json(FUSION_FILE, fusion)?;
        if dec.rows.len() != 9 || dec.rows.iter().any(|r| r.len() != 5) {
            return Err(Error::Parse(format!("{DECOMPOSITIONS_FILE}: expected 9 rows of 5 summands")));
        }
        if top.weights.len() != 9 || top.dimensions.len() != 9 {
            return Err(Error::Parse(format!("{TOP_LEVELS_FILE}: expected 9 weights and 9 dimensions")));
        }
        let weights = top
            .weights
            .iter()
            .map(|w| parse_ratio(w))
            .collect::<Result<Vec<_>>>()?;
        let mut table = BTreeMap::new();
        for (n, e) in fus.products.into_iter().enumerate() {
            if e.i > 8 || e.j > 8 || e.product.iter().any(|&k| k > 8) {
                return Err(Error::Parse(format!("{FUSION_FILE}: /products/{n} has a label outside 0..=8")));
            }
            let key = (e.i.min(e.j), e.i.max(e.j));
            let mut product = e.product;
            product.sort_unstable();
            if table.insert(key, product).is_some() {
                return Err(Error::Parse(format!("{FUSION_FILE}: /products/{n} repeats {key:?}")));
            }
        }
        Ok(U5aGolden {
            level: dec.level,
            rows: dec.rows,
            weights,
            dimensions: top.dimensions,
            fusion: table,
        })
    }

    /// The tables compiled into the library.
    pub fn builtin() -> Self {
        U5aGolden::from_json(DECOMPOSITIONS, TOP_LEVELS, FUSION).expect("embedded tables parse")
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            fs::read_to_string(dir.join(name))
                .map_err(|e| Error::Parse(format!("{}: {e}", dir.join(name).display())))
        };
        U5aGolden::from_json(&read(DECOMPOSITIONS_FILE)?, &read(TOP_LEVELS_FILE)?, &read(FUSION_FILE)?)
    }

    pub fn product(&self, i: usize, j: usize) -> Option<&Vec<usize>> {
        self.fusion.get(&(i.min(j), i.max(j)))
    }
}

/// Parses a code file `{"p", "d", "generators"}`.
pub fn parse_code(text: &str) -> Result<Code> {
    let file: CodeFile = parse_json("code", text)?;
    Code::from_rows(file.p, file.d, &file.generators)
}

/// The shipped copy of the rank-16 code.
pub fn code_5b() -> Result<Code> {
    parse_code(CODE_5B)
}

pub fn load_code_5b(dir: &Path) -> Result<Code> {
    let path = dir.join(CODE_5B_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_code(&text)
}
