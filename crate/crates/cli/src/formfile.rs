//! JSON form tables and profile declarations.
//!
//! ```json
//! {
//!   "profile": { "mode": "commutative", "arity": { "1": 1 } },
//!   "kind": "pairing",
//!   "closure": "symmetric",
//!   "bound": 10,
//!   "pairing": [["phi[1](x1)", "phi[1](x2)", "1"]],
//!   "transform": "exp"
//! }
//! ```
//!
//! `kind` is one of `table` (uses `entries`), `pairing` (uses `pairing`),
//! `moments` (uses `moments`, value by total degree) or
//! `independent-moments` (product over labels of the single-label moments).
//! `transform` optionally applies `exp*` or `log*` to the base form. Keys of
//! `entries` that denote the same monomial are rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use lce_core::forms::{conv_exp, conv_log, Closure, LinearForm};
use lce_core::{parse_rational, ArityProfile, Mode, Monomial, Rational};
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer};

use crate::parse::{parse_monomial, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum FormFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid form file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in entry {key:?}: {source}")]
    Entry { key: String, source: ParseError },
    #[error("duplicate entry: {first:?} and {second:?} denote the same monomial")]
    Duplicate { first: String, second: String },
    #[error("invalid rational {0:?} (expected p/q)")]
    Rational(String),
    #[error("unknown arity key {0:?} (expected a support size)")]
    ArityKey(String),
    #[error("form kind {kind} needs the field {field:?}")]
    MissingField {
        kind: &'static str,
        field: &'static str,
    },
    #[error("pairing entry {0:?} must have the two generators of a degree-2 monomial")]
    Pairing(String),
    #[error(transparent)]
    Core(#[from] lce_core::Error),
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSpec {
    Commutative,
    Noncommutative,
}

impl From<ModeSpec> for Mode {
    fn from(m: ModeSpec) -> Mode {
        match m {
            ModeSpec::Commutative => Mode::Commutative,
            ModeSpec::Noncommutative => Mode::Noncommutative,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub mode: ModeSpec,
    /// Support size `k` (as a string key) to `n_k`.
    pub arity: UniqueMap<u32>,
}

impl ProfileSpec {
    pub fn build(&self) -> Result<ArityProfile, FormFileError> {
        let mut counts = Vec::new();
        for (k, n) in &self.arity.0 {
            let size: usize = k
                .parse()
                .ok()
                .filter(|&s| s > 0)
                .ok_or_else(|| FormFileError::ArityKey(k.clone()))?;
            counts.push((size, *n));
        }
        Ok(ArityProfile::new(self.mode.into(), counts))
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureSpec {
    #[default]
    None,
    Symmetric,
    QuasiSymmetric,
}

impl From<ClosureSpec> for Closure {
    fn from(c: ClosureSpec) -> Closure {
        match c {
            ClosureSpec::None => Closure::None,
            ClosureSpec::Symmetric => Closure::Symmetric,
            ClosureSpec::QuasiSymmetric => Closure::QuasiSymmetric,
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum KindSpec {
    Table,
    Pairing,
    Moments,
    IndependentMoments,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum TransformSpec {
    Exp,
    Log,
}

/// JSON object kept in document order; repeated keys are a hard error.
#[derive(Clone, Debug, Default)]
pub struct UniqueMap<V>(pub Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct UniqueVisitor<V>(std::marker::PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for UniqueVisitor<V> {
            type Value = UniqueMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object without repeated keys")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut seen = BTreeSet::new();
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if !seen.insert(k.clone()) {
                        return Err(de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }

        deserializer.deserialize_map(UniqueVisitor(std::marker::PhantomData))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub profile: ProfileSpec,
    pub kind: KindSpec,
    #[serde(default)]
    pub closure: ClosureSpec,
    pub bound: Option<usize>,
    pub entries: Option<UniqueMap<String>>,
    pub pairing: Option<Vec<(String, String, String)>>,
    pub moments: Option<Vec<String>>,
    pub transform: Option<TransformSpec>,
}

fn rational(text: &str) -> Result<Rational, FormFileError> {
    parse_rational(text).ok_or_else(|| FormFileError::Rational(text.to_string()))
}

fn monomial(text: &str, profile: &ArityProfile) -> Result<Monomial, FormFileError> {
    parse_monomial(text, Some(profile)).map_err(|source| FormFileError::Entry {
        key: text.to_string(),
        source,
    })
}

impl FormSpec {
    pub fn from_json(text: &str) -> Result<Self, FormFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, FormFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| FormFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn build(&self) -> Result<(ArityProfile, LinearForm), FormFileError> {
        let profile = self.profile.build()?;
        let mode = profile.mode();
        let closure: Closure = self.closure.into();
        let base = match self.kind {
            KindSpec::Table => {
                let entries = self.entries.as_ref().ok_or(FormFileError::MissingField {
                    kind: "table",
                    field: "entries",
                })?;
                let mut seen: BTreeMap<Monomial, &str> = BTreeMap::new();
                let mut table = Vec::new();
                for (key, value) in &entries.0 {
                    let m = monomial(key, &profile)?;
                    if let Some(first) = seen.insert(m.clone(), key) {
                        return Err(FormFileError::Duplicate {
                            first: first.to_string(),
                            second: key.clone(),
                        });
                    }
                    table.push((m, rational(value)?));
                }
                LinearForm::table(mode, table, closure)?
            }
            KindSpec::Pairing => {
                let pairs = self.pairing.as_ref().ok_or(FormFileError::MissingField {
                    kind: "pairing",
                    field: "pairing",
                })?;
                let mut seen: BTreeMap<Monomial, String> = BTreeMap::new();
                let mut table = Vec::new();
                for (a, b, value) in pairs {
                    let label = format!("{a}, {b}");
                    let ga = monomial(a, &profile)?;
                    let gb = monomial(b, &profile)?;
                    if ga.degree() != 1 || gb.degree() != 1 {
                        return Err(FormFileError::Pairing(label));
                    }
                    let m = ga.multiply(&gb)?;
                    if let Some(first) = seen.insert(m.clone(), label.clone()) {
                        return Err(FormFileError::Duplicate {
                            first,
                            second: label,
                        });
                    }
                    table.push((m, rational(value)?));
                }
                LinearForm::table(mode, table, closure)?
            }
            KindSpec::Moments | KindSpec::IndependentMoments => {
                let kind = if self.kind == KindSpec::Moments {
                    "moments"
                } else {
                    "independent-moments"
                };
                let values = self.moments.as_ref().ok_or(FormFileError::MissingField {
                    kind,
                    field: "moments",
                })?;
                let values = values
                    .iter()
                    .map(|v| rational(v))
                    .collect::<Result<Vec<_>, _>>()?;
                let form = LinearForm::moments(mode, values);
                if self.kind == KindSpec::IndependentMoments {
                    LinearForm::independent(form)
                } else {
                    form
                }
            }
        };
        let base = match self.bound {
            Some(b) => base.with_bound(b),
            None => base,
        };
        let form = match self.transform {
            None => base,
            Some(TransformSpec::Exp) => conv_exp(&base)?,
            Some(TransformSpec::Log) => conv_log(&base)?,
        };
        Ok((profile, form))
    }
}

/// Standalone `--profile` file: the `profile` object of a form file.
pub fn load_profile(path: &Path) -> Result<ArityProfile, FormFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec: ProfileSpec = serde_json::from_str(&text)?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAUSSIAN: &str = r#"{
        "profile": {"mode": "commutative", "arity": {"1": 1}},
        "kind": "pairing",
        "closure": "symmetric",
        "pairing": [["phi[1](x1)", "phi[1](x1)", "1"], ["phi[1](x1)", "phi[1](x2)", "1"]],
        "transform": "exp"
    }"#;

    #[test]
    fn gaussian_fixture() {
        let (_, rho) = FormSpec::from_json(GAUSSIAN).unwrap().build().unwrap();
        let m = parse_monomial("phi[1](x1)^4", None).unwrap();
        assert_eq!(
            rho.evaluate_monomial(&m).unwrap(),
            Rational::from_integer(3.into())
        );
        let m = parse_monomial("phi[1](x1)*phi[1](x2)*phi[1](x3)*phi[1](x4)", None).unwrap();
        assert_eq!(
            rho.evaluate_monomial(&m).unwrap(),
            Rational::from_integer(3.into())
        );
    }

    #[test]
    fn duplicates_are_rejected() {
        let raw = r#"{"profile": {"mode": "commutative", "arity": {"1": 1}}, "kind": "table",
            "entries": {"phi[1](x1)": "1", "phi[1](x1)": "2"}}"#;
        assert!(matches!(
            FormSpec::from_json(raw),
            Err(FormFileError::Json(_))
        ));
        let reordered = r#"{"profile": {"mode": "commutative", "arity": {"1": 1}}, "kind": "table",
            "entries": {"phi[1](x1)*phi[1](x2)": "1", "phi[1](x2)*phi[1](x1)": "1"}}"#;
        let spec = FormSpec::from_json(reordered).unwrap();
        assert!(matches!(spec.build(), Err(FormFileError::Duplicate { .. })));
    }

    #[test]
    fn bad_values() {
        let raw = r#"{"profile": {"mode": "commutative", "arity": {"1": 1}}, "kind": "table",
            "entries": {"phi[2](x1)": "1"}}"#;
        assert!(matches!(
            FormSpec::from_json(raw).unwrap().build(),
            Err(FormFileError::Entry { .. })
        ));
        let raw = r#"{"profile": {"mode": "commutative", "arity": {"1": 1}}, "kind": "moments",
            "moments": ["1", "1/0"]}"#;
        assert!(matches!(
            FormSpec::from_json(raw).unwrap().build(),
            Err(FormFileError::Rational(_))
        ));
    }
}
