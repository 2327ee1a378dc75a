//! Parameter tables: the computable stand-ins that instantiate the
//! parametric theories.
//!
//! `f` and `g` are 0/1 sequences stored as finite prefixes, `F` maps
//! indices to a size bound or ℵ₀, and `h` is a 0/1 sequence defaulting
//! to 0 past its prefix. Operations that would need a value beyond a
//! stored prefix fail with a range error instead of extrapolating, so a
//! table can never silently invent data.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::spectra::Card;

/// Finite prefix of a function f: ℕ* → {0,1} subject to f(1)=1 and the
/// balance rule: whenever the prefix covers 2^k (k ≥ 1), exactly half
/// of f(1..2^k) are 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    bits: Vec<bool>,
}

impl FTable {
    pub fn new(bits: Vec<bool>) -> Result<FTable> {
        Self::validate(&bits, "f")?;
        Ok(FTable { bits })
    }

    fn validate(bits: &[bool], sym: &str) -> Result<()> {
        if bits.is_empty() {
            return Err(Error::Param(format!("{sym} prefix must not be empty")));
        }
        if !bits[0] {
            return Err(Error::Param(format!("{sym}(1) must be 1, got 0")));
        }
        let mut p = 2usize;
        while p <= bits.len() {
            let ones = bits[..p].iter().filter(|&&b| b).count();
            if ones != p / 2 {
                return Err(Error::Param(format!(
                    "{sym} violates the balance rule at {p}: {sym}1({p}) = {ones}, expected {}",
                    p / 2
                )));
            }
            p *= 2;
        }
        Ok(())
    }

    pub fn len(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// f(n) for n within the prefix.
    pub fn value(&self, n: u32) -> Result<bool> {
        self.check_range(n)?;
        Ok(self.bits[(n - 1) as usize])
    }

    /// Count of ones among f(1..n).
    pub fn f1(&self, n: u32) -> Result<u32> {
        self.check_range(n)?;
        Ok(self.bits[..n as usize].iter().filter(|&&b| b).count() as u32)
    }

    /// Count of zeros among f(1..n).
    pub fn f0(&self, n: u32) -> Result<u32> {
        Ok(n - self.f1(n)?)
    }

    fn check_range(&self, n: u32) -> Result<()> {
        if n == 0 {
            return Err(Error::Param("table indices start at 1".into()));
        }
        if n > self.len() {
            return Err(Error::ParamRange(format!(
                "index {n} requested but the stored prefix ends at {}",
                self.len()
            )));
        }
        Ok(())
    }
}

/// An `f`-shaped table with the extra seed and pairing rules: g(1)=1,
/// g(2)=0, g(3)=1, g(4)=0, and g(2n+1)=g(2n+2) for n ≥ 2 wherever both
/// members of the pair are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTable {
    table: FTable,
}

impl GTable {
    pub fn new(bits: Vec<bool>) -> Result<GTable> {
        FTable::validate(&bits, "g")?;
        let seeds = [true, false, true, false];
        for (i, want) in seeds.iter().enumerate() {
            if let Some(got) = bits.get(i) {
                if got != want {
                    return Err(Error::Param(format!(
                        "g({}) must be {}, got {}",
                        i + 1,
                        *want as u32,
                        *got as u32
                    )));
                }
            }
        }
        let mut n = 2;
        while 2 * n + 2 <= bits.len() {
            let odd = bits[2 * n];
            let even = bits[2 * n + 1];
            if odd != even {
                return Err(Error::Param(format!(
                    "g pairing violated: g({}) must equal g({})",
                    2 * n + 1,
                    2 * n + 2
                )));
            }
            n += 1;
        }
        Ok(GTable { table: FTable { bits } })
    }

    pub fn len(&self) -> u32 {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn value(&self, n: u32) -> Result<bool> {
        self.table.value(n)
    }

    pub fn g1(&self, n: u32) -> Result<u32> {
        self.table.f1(n)
    }

    /// The same bits viewed as a plain f table (the pairing rule only
    /// strengthens the constraints, so this is always valid).
    pub fn as_ftable(&self) -> &FTable {
        &self.table
    }
}

/// Explicit rows of a function F: ℕ* → ℕ* ∪ {ℵ₀}, supporting the
/// decidable relation "F(m) ≥ n".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRelation {
    rows: BTreeMap<u32, Card>,
}

impl FRelation {
    pub fn new(rows: BTreeMap<u32, Card>) -> Result<FRelation> {
        for (&m, &v) in &rows {
            if m == 0 {
                return Err(Error::Param("F row index must be at least 1, got 0".into()));
            }
            if v == Card::Fin(0) {
                return Err(Error::Param(format!(
                    "F row {m}: bound must be at least 1, got 0"
                )));
            }
        }
        Ok(FRelation { rows })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Card)>) -> Result<FRelation> {
        Self::new(pairs.into_iter().collect())
    }

    /// Whether F(m) ≥ n. True for every m when n ≤ 1 (F maps into ℕ*∪{ℵ₀},
    /// so every value is at least 1); otherwise the row for m must exist.
    pub fn geq(&self, m: u32, n: u32) -> Result<bool> {
        if n <= 1 {
            return Ok(true);
        }
        match self.row(m)? {
            Card::Aleph0 => Ok(true),
            Card::Fin(v) => Ok(v >= n),
        }
    }

    pub fn row(&self, m: u32) -> Result<Card> {
        self.rows.get(&m).copied().ok_or_else(|| {
            Error::ParamRange(format!("F has no row for index {m}"))
        })
    }

    pub fn has_row(&self, m: u32) -> bool {
        self.rows.contains_key(&m)
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }
}

/// Finite prefix of h: ℕ* → {0,1}; everything beyond the prefix is 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HTable {
    bits: Vec<bool>,
}

impl HTable {
    pub fn new(bits: Vec<bool>) -> HTable {
        HTable { bits }
    }

    /// h(n); total, with default 0 past the prefix.
    pub fn value(&self, n: u32) -> bool {
        if n == 0 {
            return false;
        }
        self.bits.get((n - 1) as usize).copied().unwrap_or(false)
    }
}

impl fmt::Display for HTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<&str> = self.bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "{}", cells.join(" "))
    }
}

/// The tables read from one parameter file.
#[derive(Debug, Clone, Default)]
pub struct ParamSet {
    pub f: Option<FTable>,
    pub g: Option<GTable>,
    pub frel: Option<FRelation>,
    pub h: Option<HTable>,
}

impl ParamSet {
    pub fn require_f(&self) -> Result<&FTable> {
        self.f.as_ref().ok_or_else(|| {
            Error::Usage("an f table is required (parameter file line `f: ...`)".into())
        })
    }

    pub fn require_g(&self) -> Result<&GTable> {
        self.g.as_ref().ok_or_else(|| {
            Error::Usage("a g table is required (parameter file line `g: ...`)".into())
        })
    }

    pub fn require_frel(&self) -> Result<&FRelation> {
        self.frel.as_ref().ok_or_else(|| {
            Error::Usage("an F table is required (parameter file line `F: ...`)".into())
        })
    }

    pub fn require_h(&self) -> Result<&HTable> {
        self.h.as_ref().ok_or_else(|| {
            Error::Usage("an h table is required (parameter file line `h: ...`)".into())
        })
    }
}

fn parse_bits(sym: &str, rest: &str) -> Result<Vec<bool>> {
    let mut bits = Vec::new();
    for tok in rest.split_whitespace() {
        match tok {
            "0" => bits.push(false),
            "1" => bits.push(true),
            other => {
                return Err(Error::Param(format!(
                    "{sym} values must be 0 or 1, got '{other}'"
                )))
            }
        }
    }
    Ok(bits)
}

fn parse_frel(rest: &str) -> Result<FRelation> {
    let mut rows = BTreeMap::new();
    for tok in rest.split_whitespace() {
        let (m, v) = tok.split_once('=').ok_or_else(|| {
            Error::Param(format!("F row must look like m=value, got '{tok}'"))
        })?;
        let m: u32 = m
            .parse()
            .map_err(|_| Error::Param(format!("F row index must be an integer, got '{m}'")))?;
        let v = if v == "inf" {
            Card::Aleph0
        } else {
            Card::Fin(v.parse().map_err(|_| {
                Error::Param(format!("F row {m}: value must be an integer or 'inf', got '{v}'"))
            })?)
        };
        if rows.insert(m, v).is_some() {
            return Err(Error::Param(format!("duplicate F row {m}")));
        }
    }
    FRelation::new(rows)
}

/// Parses a parameter file: one table per line, `f:`/`g:`/`F:`/`h:`
/// followed by the entries, `#` starting a comment line. The first
/// violated constraint aborts the load with its description.
pub fn parse_params(text: &str) -> Result<ParamSet> {
    let mut set = ParamSet::default();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| {
            Error::Param(format!("expected `key: entries`, got '{line}'"))
        })?;
        match key.trim() {
            "f" => {
                if set.f.is_some() {
                    return Err(Error::Param("duplicate 'f' line".into()));
                }
                set.f = Some(FTable::new(parse_bits("f", rest)?)?);
            }
            "g" => {
                if set.g.is_some() {
                    return Err(Error::Param("duplicate 'g' line".into()));
                }
                set.g = Some(GTable::new(parse_bits("g", rest)?)?);
            }
            "F" => {
                if set.frel.is_some() {
                    return Err(Error::Param("duplicate 'F' line".into()));
                }
                set.frel = Some(parse_frel(rest)?);
            }
            "h" => {
                if set.h.is_some() {
                    return Err(Error::Param("duplicate 'h' line".into()));
                }
                set.h = Some(HTable::new(parse_bits("h", rest)?));
            }
            other => {
                return Err(Error::Param(format!("unknown parameter key '{other}'")));
            }
        }
    }
    Ok(set)
}

/// Ready-made tables used by the examples and the test suite.
pub mod samples {
    use super::*;

    /// A 16-entry f prefix: 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0 1.
    pub fn f16() -> FTable {
        let bits = (1..=16u32).map(|n| matches!(n % 4, 1 | 0)).collect();
        FTable::new(bits).expect("the sample f table satisfies the balance rule")
    }

    /// A 12-entry g prefix: 1 0 1 0 0 0 1 1 1 1 0 0.
    pub fn g12() -> GTable {
        let bits = vec![
            true, false, true, false, false, false, true, true, true, true, false, false,
        ];
        GTable::new(bits).expect("the sample g table satisfies every rule")
    }

    /// Ten F rows mixing finite bounds and ℵ₀.
    pub fn frel10() -> FRelation {
        FRelation::from_pairs([
            (1, Card::Aleph0),
            (2, Card::Fin(3)),
            (3, Card::Aleph0),
            (4, Card::Fin(1)),
            (5, Card::Fin(2)),
            (6, Card::Aleph0),
            (7, Card::Fin(4)),
            (8, Card::Aleph0),
            (9, Card::Fin(1)),
            (10, Card::Fin(6)),
        ])
        .expect("the sample F table is well-formed")
    }

    pub fn h5() -> HTable {
        HTable::new(vec![false, true, false, false, true])
    }

    /// A full parameter set with all four sample tables.
    pub fn param_set() -> ParamSet {
        ParamSet { f: Some(f16()), g: Some(g12()), frel: Some(frel10()), h: Some(h5()) }
    }

    /// The sample parameter file text corresponding to [`param_set`].
    pub fn param_file() -> String {
        "f: 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0 1\n\
         g: 1 0 1 0 0 0 1 1 1 1 0 0\n\
         F: 1=inf 2=3 3=inf 4=1 5=2 6=inf 7=4 8=inf 9=1 10=6\n\
         h: 0 1 0 0 1\n"
            .to_string()
    }
}
