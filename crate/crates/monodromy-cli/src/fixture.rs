//! Flat key-value fixture files describing one branched cover each.
//!
//! Grammar: a `#` in column 0 makes the whole line a comment; a blank line
//! ends any value in progress; `key = value` starts an entry; a line that
//! begins with whitespace continues the previous entry, joined with a single
//! space. Keys may appear at most once.
//!
//! Required keys: `name`, `group`, `degree`, `almost_simple`, `sym_or_alt`,
//! `x`, `y`, `type_x`, `type_y`, `type_z`, `subdegrees`, and exactly two of
//! `p`, `q`, `r`. Optional keys: `budget_class_size`, `budget_seconds`.
//! Permutations and polynomials stay as raw text here; deciding whether they
//! parse is part of verification, not of loading the file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use monodromy::belyi::SuppliedPair;
use monodromy::CycleType;

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("key `{0}` appears more than once")]
    DuplicateKey(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{key}`: {message}")]
    Value { key: &'static str, message: String },
    #[error("expected exactly two of `p`, `q`, `r`, found {0}")]
    PolynomialCount(usize),
}

/// One verification target: a claimed permutation pair with its cycle types,
/// subdegrees, group metadata, and two of the three map polynomials.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub group_label: String,
    pub degree: usize,
    pub almost_simple: bool,
    pub sym_or_alt: bool,
    /// Raw cycle notation, parsed during verification.
    pub x_text: String,
    pub y_text: String,
    /// Claimed cycle types of x, y, and z where x*y*z = 1.
    pub claimed_types: [CycleType; 3],
    pub claimed_subdegrees: Vec<usize>,
    /// Which two polynomials the file supplies, and their raw factored text
    /// in the pair's letter order.
    pub supplied: SuppliedPair,
    pub first_poly_text: String,
    pub second_poly_text: String,
    pub budget_class_size: Option<u64>,
    pub budget_seconds: Option<u64>,
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {}, {})", self.name, self.degree, self.group_label)
    }
}

const KNOWN_KEYS: &[&str] = &[
    "name",
    "group",
    "degree",
    "almost_simple",
    "sym_or_alt",
    "x",
    "y",
    "type_x",
    "type_y",
    "type_z",
    "subdegrees",
    "p",
    "q",
    "r",
    "budget_class_size",
    "budget_seconds",
];

/// Reads the raw entries without interpreting any values.
fn read_entries(text: &str) -> Result<BTreeMap<String, String>, FixtureError> {
    let mut entries: BTreeMap<String, String> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.starts_with('#') {
            continue;
        }
        if raw.trim().is_empty() {
            current = None;
            continue;
        }
        if raw.starts_with(char::is_whitespace) {
            let key = current.as_ref().ok_or(FixtureError::Syntax {
                line,
                message: "continuation line with no entry to continue".into(),
            })?;
            let entry = entries.get_mut(key).expect("current key is present");
            entry.push(' ');
            entry.push_str(raw.trim());
            continue;
        }
        let (key, value) = raw.split_once('=').ok_or(FixtureError::Syntax {
            line,
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(FixtureError::Syntax {
                line,
                message: "empty key".into(),
            });
        }
        if !KNOWN_KEYS.contains(&key) {
            return Err(FixtureError::UnknownKey(key.to_string()));
        }
        if entries.contains_key(key) {
            return Err(FixtureError::DuplicateKey(key.to_string()));
        }
        entries.insert(key.to_string(), value.trim().to_string());
        current = Some(key.to_string());
    }
    Ok(entries)
}

fn take(
    entries: &mut BTreeMap<String, String>,
    key: &'static str,
) -> Result<String, FixtureError> {
    entries.remove(key).ok_or(FixtureError::MissingKey(key))
}

fn parse_bool(key: &'static str, value: &str) -> Result<bool, FixtureError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(FixtureError::Value {
            key,
            message: format!("expected `true` or `false`, found `{other}`"),
        }),
    }
}

fn parse_cycle_type(key: &'static str, value: &str) -> Result<CycleType, FixtureError> {
    CycleType::parse(value).map_err(|e| FixtureError::Value {
        key,
        message: e.to_string(),
    })
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut entries = read_entries(text)?;

    let name = take(&mut entries, "name")?;
    let group_label = take(&mut entries, "group")?;
    let degree: usize = take(&mut entries, "degree")?
        .parse()
        .map_err(|_| FixtureError::Value {
            key: "degree",
            message: "expected a positive integer".into(),
        })?;
    if degree == 0 {
        return Err(FixtureError::Value {
            key: "degree",
            message: "degree must be at least 1".into(),
        });
    }
    let almost_simple = parse_bool("almost_simple", &take(&mut entries, "almost_simple")?)?;
    let sym_or_alt = parse_bool("sym_or_alt", &take(&mut entries, "sym_or_alt")?)?;
    let x_text = take(&mut entries, "x")?;
    let y_text = take(&mut entries, "y")?;
    let claimed_types = [
        parse_cycle_type("type_x", &take(&mut entries, "type_x")?)?,
        parse_cycle_type("type_y", &take(&mut entries, "type_y")?)?,
        parse_cycle_type("type_z", &take(&mut entries, "type_z")?)?,
    ];
    let subdegrees_text = take(&mut entries, "subdegrees")?;
    let mut claimed_subdegrees = Vec::new();
    for part in subdegrees_text.split(',') {
        let part = part.trim();
        let value: usize = part.parse().map_err(|_| FixtureError::Value {
            key: "subdegrees",
            message: format!("`{part}` is not a positive integer"),
        })?;
        if value == 0 {
            return Err(FixtureError::Value {
                key: "subdegrees",
                message: "subdegrees must be positive".into(),
            });
        }
        claimed_subdegrees.push(value);
    }

    let p = entries.remove("p");
    let q = entries.remove("q");
    let r = entries.remove("r");
    let supplied_count = [&p, &q, &r].iter().filter(|v| v.is_some()).count();
    let (supplied, first_poly_text, second_poly_text) = match (p, q, r) {
        (Some(p), Some(q), None) => (SuppliedPair::PQ, p, q),
        (Some(p), None, Some(r)) => (SuppliedPair::PR, p, r),
        (None, Some(q), Some(r)) => (SuppliedPair::QR, q, r),
        _ => return Err(FixtureError::PolynomialCount(supplied_count)),
    };

    let budget_class_size = match entries.remove("budget_class_size") {
        None => None,
        Some(v) => Some(v.parse().map_err(|_| FixtureError::Value {
            key: "budget_class_size",
            message: "expected a positive integer".into(),
        })?),
    };
    let budget_seconds = match entries.remove("budget_seconds") {
        None => None,
        Some(v) => Some(v.parse().map_err(|_| FixtureError::Value {
            key: "budget_seconds",
            message: "expected a positive integer".into(),
        })?),
    };

    debug_assert!(entries.is_empty(), "all known keys consumed");
    Ok(Fixture {
        name,
        group_label,
        degree,
        almost_simple,
        sym_or_alt,
        x_text,
        y_text,
        claimed_types,
        claimed_subdegrees,
        supplied,
        first_poly_text,
        second_poly_text,
        budget_class_size,
        budget_seconds,
    })
}

pub fn load_fixture(path: &Path) -> Result<Fixture, FixtureError> {
    let text = std::fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_fixture(&text)
}
