//! The `ActionInput` document and its validation.

use std::fmt;

use fqav_core::{
    AbelianVarietyModel, AffineAutomorphism, EllipticFactor, EndoBlockMatrix, Error, TorsionPoint,
    DEFAULT_GROUP_CAP,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cm {
    Zeta4,
    Zeta6,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorInput {
    pub cm: Cm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// One generator `t_a ∘ φ`: `φ` as an `n × n` array of `[c, d]` blocks
/// meaning `c + d·τ`, and `a` as `2n` rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorInput {
    pub holonomy: Vec<Vec<[i64; 2]>>,
    pub translation: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_cap")]
    pub group_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_GROUP_CAP
}

impl Default for Options {
    fn default() -> Self {
        Options {
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionInput {
    pub schema_version: u32,
    pub factors: Vec<FactorInput>,
    pub generators: Vec<GeneratorInput>,
    #[serde(default)]
    pub options: Options,
}

/// Stable machine-readable error codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Io,
    Schema,
    NotAnEndomorphism,
    Translation,
    FiniteOrder,
    GroupCap,
    Field,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Io => "E_IO",
            ErrorCode::Schema => "E_SCHEMA",
            ErrorCode::NotAnEndomorphism => "E_ENDOMORPHISM",
            ErrorCode::Translation => "E_TRANSLATION",
            ErrorCode::FiniteOrder => "E_FINITE_ORDER",
            ErrorCode::GroupCap => "E_GROUP_CAP",
            ErrorCode::Field => "E_FIELD",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A rejected input, located by field path and, for syntax errors, line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub code: ErrorCode,
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn new(code: ErrorCode, path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            code,
            path: path.into(),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]", self.code)?;
        if !self.path.is_empty() {
            write!(f, " at {}", self.path)?;
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " (line {l}, column {c})")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

/// A validated input: the normalized echo plus the objects it describes.
#[derive(Clone, Debug)]
pub struct Action {
    pub input: ActionInput,
    pub variety: AbelianVarietyModel,
    pub generators: Vec<AffineAutomorphism>,
}

pub fn parse_input(text: &str) -> Result<Action, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: ActionInput = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError {
            code: ErrorCode::Schema,
            path: if path == "." { String::new() } else { path },
            line: Some(inner.line()),
            column: Some(inner.column()),
            message: strip_position(&inner.to_string()),
        }
    })?;
    validate(raw)
}

fn validate(mut input: ActionInput) -> Result<Action, InputError> {
    if input.schema_version != SCHEMA_VERSION {
        return Err(InputError::new(
            ErrorCode::Schema,
            "schema_version",
            format!(
                "unsupported schema version {}, expected {SCHEMA_VERSION}",
                input.schema_version
            ),
        ));
    }
    if input.factors.is_empty() {
        return Err(InputError::new(
            ErrorCode::Schema,
            "factors",
            "at least one factor is required",
        ));
    }
    if input.options.group_cap == 0 {
        return Err(InputError::new(
            ErrorCode::Schema,
            "options.group_cap",
            "must be positive",
        ));
    }
    let factors: Vec<EllipticFactor> = input
        .factors
        .iter_mut()
        .enumerate()
        .map(|(j, f)| match f.cm {
            Cm::Zeta4 => EllipticFactor::Zeta4,
            Cm::Zeta6 => EllipticFactor::Zeta6,
            Cm::Generic => {
                let label = f.label.get_or_insert_with(|| format!("E{}", j + 1));
                EllipticFactor::Generic(label.clone())
            }
        })
        .collect();
    let variety = AbelianVarietyModel::new(factors)
        .map_err(|e| InputError::new(ErrorCode::Schema, "factors", e.to_string()))?;
    let n = variety.dim();

    let mut generators = Vec::with_capacity(input.generators.len());
    for (i, g) in input.generators.iter_mut().enumerate() {
        let at = |field: &str| format!("generators[{i}].{field}");
        if g.holonomy.len() != n || g.holonomy.iter().any(|r| r.len() != n) {
            return Err(InputError::new(
                ErrorCode::Schema,
                at("holonomy"),
                format!("expected a {n}×{n} array of [c, d] blocks"),
            ));
        }
        if g.translation.len() != 2 * n {
            return Err(InputError::new(
                ErrorCode::Schema,
                at("translation"),
                format!(
                    "expected {} rationals, found {}",
                    2 * n,
                    g.translation.len()
                ),
            ));
        }
        let blocks = g
            .holonomy
            .iter()
            .flatten()
            .map(|&[c, d]| (BigInt::from(c), BigInt::from(d)))
            .collect();
        let h = EndoBlockMatrix::new(n, blocks);
        let coords = g
            .translation
            .iter()
            .enumerate()
            .map(|(k, s)| {
                parse_rational(s).map_err(|m| {
                    InputError::new(
                        ErrorCode::Translation,
                        format!("{}[{k}]", at("translation")),
                        m,
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let t = TorsionPoint::new(coords);
        let auto = AffineAutomorphism::new(h, t, &variety).map_err(|e| match e {
            Error::NotAnEndomorphism(_) => {
                InputError::new(ErrorCode::NotAnEndomorphism, at("holonomy"), e.to_string())
            }
            Error::InfiniteOrder => {
                InputError::new(ErrorCode::FiniteOrder, at("holonomy"), e.to_string())
            }
            other => InputError::new(
                ErrorCode::Schema,
                format!("generators[{i}]"),
                other.to_string(),
            ),
        })?;
        g.translation = auto
            .translation()
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect();
        generators.push(auto);
    }
    Ok(Action {
        input,
        variety,
        generators,
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// `"p/q"` or `"p"`, reduced; anything else, floats included, is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.split('/').count() <= 2
        && t.split('/').enumerate().all(|(i, part)| {
            let digits = if i == 0 {
                part.strip_prefix('-').unwrap_or(part)
            } else {
                part
            };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        });
    if !ok {
        return Err(format!("{s:?} is not a rational of the form \"p/q\""));
    }
    t.parse::<BigRational>()
        .map_err(|_| format!("{s:?} has a zero denominator"))
}
