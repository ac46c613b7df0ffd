//! JSON documents for finite spaces.
//!
//! ```json
//! {"name": "P3", "kind": "conv", "carrier": ["a", "b", "c"],
//!  "completion": "pretopology",
//!  "lim": [{"kernel": ["a"], "limit": ["a", "b"]}, ...]}
//! ```
//!
//! Values are strings in the textual form of [`Value`] (`"3"`, `"1/2"`,
//! `"inf"`); plain JSON integers are accepted as well.

use std::collections::BTreeMap;
use std::fmt;

use hyperconv_core::setcalc::nonempty_subsets;
use hyperconv_core::{CapSpace, Carrier, Completion, ConvSpace, Error, Kernel, Value};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Conv,
    Cap,
}

/// How unlisted kernels are filled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompletionRule {
    /// Every nonempty kernel is listed.
    Explicit,
    /// Cap only: singletons listed, `λ(B) = ⋁_{t∈B} λ({t})`.
    Prap,
    /// Conv only: singletons listed, `lim(B) = ⋂_{t∈B} lim({t})`.
    Pretopology,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimEntry {
    pub kernel: Vec<String>,
    pub limit: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaEntry {
    pub kernel: Vec<String>,
    pub values: BTreeMap<String, ValueLiteral>,
}

/// A value as written in a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueLiteral {
    Integer(u64),
    Text(String),
}

impl ValueLiteral {
    fn parse(&self) -> Result<Value, Error> {
        match self {
            ValueLiteral::Integer(n) => n.to_string().parse(),
            ValueLiteral::Text(s) => s.parse(),
        }
    }
}

impl From<Value> for ValueLiteral {
    fn from(v: Value) -> Self {
        ValueLiteral::Text(v.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: Kind,
    pub carrier: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion: Option<CompletionRule>,
    /// Allow points that are not limits of their own principal ultrafilter.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub preconvergence: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lim: Option<Vec<LimEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<LambdaEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Conv(ConvSpace),
    Cap(CapSpace),
}

impl Space {
    /// The space as a convergence approach space (`i` on convergences).
    pub fn as_cap(&self) -> CapSpace {
        match self {
            Space::Conv(c) => CapSpace::from_conv(c),
            Space::Cap(c) => c.clone(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        match self {
            Space::Conv(c) => c.carrier(),
            Space::Cap(c) => c.carrier(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: {axiom} axiom violated: {detail}")]
    Axiom { path: String, axiom: &'static str, detail: String },
}

fn field(path: impl fmt::Display, message: impl fmt::Display) -> FormatError {
    FormatError::Field { path: path.to_string(), message: message.to_string() }
}

pub fn parse_space(text: &str) -> Result<Space, FormatError> {
    let doc: SpaceDocument = serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.to_space()
}

impl SpaceDocument {
    pub fn to_space(&self) -> Result<Space, FormatError> {
        let carrier = Carrier::new(self.carrier.iter().map(String::as_str)).map_err(|e| field("carrier", e))?;
        match self.kind {
            Kind::Conv => self.to_conv(carrier).map(Space::Conv),
            Kind::Cap => self.to_cap(carrier).map(Space::Cap),
        }
    }

    fn to_conv(&self, carrier: Carrier) -> Result<ConvSpace, FormatError> {
        if self.lambda.is_some() {
            return Err(field("lambda", "not allowed for kind \"conv\""));
        }
        let rule = self.completion.unwrap_or(CompletionRule::Explicit);
        if rule == CompletionRule::Prap {
            return Err(field("completion", "\"prap\" applies to kind \"cap\"; use \"pretopology\""));
        }
        let entries = self.lim.as_deref().ok_or_else(|| field("lim", "missing"))?;
        let n = carrier.len();
        let mut table: Vec<Option<Kernel>> = vec![None; 1 << n];
        let mut where_listed = vec![0usize; 1 << n];
        for (i, e) in entries.iter().enumerate() {
            let k = kernel_at(&carrier, &e.kernel, format_args!("lim[{i}].kernel"))?;
            if rule == CompletionRule::Pretopology && k.len() != 1 {
                return Err(field(
                    format_args!("lim[{i}].kernel"),
                    "only singleton kernels may be listed under \"pretopology\"",
                ));
            }
            let limit = carrier
                .set_of(e.limit.iter().map(String::as_str))
                .map_err(|err| field(format_args!("lim[{i}].limit"), err))?;
            if table[k.index()].replace(limit).is_some() {
                return Err(field(format_args!("lim[{i}].kernel"), "kernel listed twice"));
            }
            where_listed[k.index()] = i;
        }
        let space = match rule {
            CompletionRule::Pretopology => {
                let singles: Vec<Kernel> = (0..n)
                    .map(|x| {
                        table[Kernel::singleton(x).index()]
                            .ok_or_else(|| missing("lim", &carrier, Kernel::singleton(x)))
                    })
                    .collect::<Result<_, _>>()?;
                ConvSpace::from_fn(carrier.clone(), |k| {
                    k.points().fold(carrier.full(), |acc, t| acc.intersection(singles[t]))
                })
            }
            _ => {
                let mut lim = vec![Kernel::EMPTY; 1 << n];
                for k in nonempty_subsets(n) {
                    lim[k.index()] = table[k.index()].ok_or_else(|| missing("lim", &carrier, k))?;
                }
                ConvSpace::new(carrier.clone(), lim)
            }
        };
        let space = space.map_err(|e| axiom_error("lim", &carrier, &where_listed, e))?;
        if !self.preconvergence {
            space.require_centered().map_err(|e| axiom_error("lim", &carrier, &where_listed, e))?;
        }
        Ok(space)
    }

    fn to_cap(&self, carrier: Carrier) -> Result<CapSpace, FormatError> {
        if self.lim.is_some() {
            return Err(field("lim", "not allowed for kind \"cap\""));
        }
        let rule = self.completion.unwrap_or(CompletionRule::Explicit);
        if rule == CompletionRule::Pretopology {
            return Err(field("completion", "\"pretopology\" applies to kind \"conv\"; use \"prap\""));
        }
        let entries = self.lambda.as_deref().ok_or_else(|| field("lambda", "missing"))?;
        let n = carrier.len();
        let mut rows: Vec<Option<Vec<Value>>> = vec![None; 1 << n];
        let mut where_listed = vec![0usize; 1 << n];
        for (i, e) in entries.iter().enumerate() {
            let k = kernel_at(&carrier, &e.kernel, format_args!("lambda[{i}].kernel"))?;
            if rule == CompletionRule::Prap && k.len() != 1 {
                return Err(field(
                    format_args!("lambda[{i}].kernel"),
                    "only singleton kernels may be listed under \"prap\"",
                ));
            }
            let mut row = vec![None; n];
            for (label, lit) in &e.values {
                let path = format!("lambda[{i}].values.{label}");
                let x = carrier.index_of(label).ok_or_else(|| field(&path, Error::UnknownPoint(label.clone())))?;
                row[x] = Some(lit.parse().map_err(|err| field(&path, err))?);
            }
            let row: Vec<Value> = row
                .into_iter()
                .enumerate()
                .map(|(x, v)| {
                    v.ok_or_else(|| {
                        field(
                            format_args!("lambda[{i}].values"),
                            format_args!("no value for point {:?}", carrier.label(x)),
                        )
                    })
                })
                .collect::<Result<_, _>>()?;
            if rows[k.index()].replace(row).is_some() {
                return Err(field(format_args!("lambda[{i}].kernel"), "kernel listed twice"));
            }
            where_listed[k.index()] = i;
        }
        let space = match rule {
            CompletionRule::Prap => {
                let d: Vec<Vec<Value>> = (0..n)
                    .map(|t| {
                        rows[Kernel::singleton(t).index()]
                            .clone()
                            .ok_or_else(|| missing("lambda", &carrier, Kernel::singleton(t)))
                    })
                    .collect::<Result<_, _>>()?;
                CapSpace::from_distances(carrier.clone(), &d)
            }
            _ => {
                let mut table = vec![Value::INFINITY; n << n];
                for k in nonempty_subsets(n) {
                    let row = rows[k.index()].as_ref().ok_or_else(|| missing("lambda", &carrier, k))?;
                    table[k.index() * n..(k.index() + 1) * n].copy_from_slice(row);
                }
                CapSpace::new(carrier.clone(), table)
            }
        };
        let space = space.map_err(|e| axiom_error("lambda", &carrier, &where_listed, e))?;
        if !self.preconvergence {
            if let Some(x) = (0..n).find(|&x| !space.d(x, x).is_zero()) {
                return Err(axiom_error("lambda", &carrier, &where_listed, Error::Centered(x)));
            }
        }
        Ok(space)
    }
}

fn kernel_at(carrier: &Carrier, labels: &[String], path: fmt::Arguments<'_>) -> Result<Kernel, FormatError> {
    let k = carrier.set_of(labels.iter().map(String::as_str)).map_err(|e| field(path, e))?;
    if k.is_empty() {
        return Err(field(path, Error::EmptyKernel));
    }
    Ok(k)
}

fn missing(section: &str, carrier: &Carrier, k: Kernel) -> FormatError {
    field(
        section,
        format_args!(
            "no entry for kernel {} (completion \"explicit\" requires every nonempty kernel)",
            carrier.format_set(k)
        ),
    )
}

fn axiom_error(section: &str, carrier: &Carrier, where_listed: &[usize], e: Error) -> FormatError {
    match e {
        Error::Monotone { smaller, larger, point } => FormatError::Axiom {
            path: format!("{section}[{}]", where_listed[larger.index()]),
            axiom: "monotone",
            detail: format!(
                "kernel {} contains {} but is worse at point {:?}",
                carrier.format_set(larger),
                carrier.format_set(smaller),
                carrier.label(point)
            ),
        },
        Error::Centered(x) => FormatError::Axiom {
            path: format!("{section}[{}]", where_listed[Kernel::singleton(x).index()]),
            axiom: "centered",
            detail: format!("point {:?} is not a limit of its own ultrafilter", carrier.label(x)),
        },
        other => field(section, other),
    }
}

impl SpaceDocument {
    /// Every nonempty kernel listed.
    pub fn from_conv(space: &ConvSpace, name: Option<&str>) -> SpaceDocument {
        let c = space.carrier();
        let lim = nonempty_subsets(space.len())
            .map(|k| LimEntry { kernel: labels(c, k), limit: labels(c, space.lim(k)) })
            .collect();
        SpaceDocument {
            name: name.map(str::to_owned),
            kind: Kind::Conv,
            carrier: c.labels().to_vec(),
            completion: Some(CompletionRule::Explicit),
            preconvergence: !space.is_centered(),
            lim: Some(lim),
            lambda: None,
        }
    }

    /// Singleton rows only when the table came from a distance table,
    /// every kernel otherwise.
    pub fn from_cap(space: &CapSpace, name: Option<&str>) -> SpaceDocument {
        let c = space.carrier();
        let n = space.len();
        let prap = space.completion() == Completion::Prap;
        let lambda = nonempty_subsets(n)
            .filter(|k| !prap || k.len() == 1)
            .map(|k| LambdaEntry {
                kernel: labels(c, k),
                values: (0..n).map(|x| (c.label(x).to_owned(), space.eval(k, x).into())).collect(),
            })
            .collect();
        SpaceDocument {
            name: name.map(str::to_owned),
            kind: Kind::Cap,
            carrier: c.labels().to_vec(),
            completion: Some(if prap { CompletionRule::Prap } else { CompletionRule::Explicit }),
            preconvergence: !space.is_centered(),
            lim: None,
            lambda: Some(lambda),
        }
    }

    pub fn from_space(space: &Space, name: Option<&str>) -> SpaceDocument {
        match space {
            Space::Conv(c) => SpaceDocument::from_conv(c, name),
            Space::Cap(c) => SpaceDocument::from_cap(c, name),
        }
    }
}

pub fn labels(carrier: &Carrier, k: Kernel) -> Vec<String> {
    k.points().map(|x| carrier.label(x).to_owned()).collect()
}

/// A hyperspace filter given on the command line: `{"kernel": [["a"], ["a","b"]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterDocument {
    pub kernel: Vec<Vec<String>>,
}

impl FilterDocument {
    pub fn parse(text: &str, carrier: &Carrier) -> Result<Vec<Kernel>, FormatError> {
        let doc: FilterDocument = serde_json::from_str(text).map_err(|e| FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.kernel
            .iter()
            .enumerate()
            .map(|(i, set)| {
                carrier.set_of(set.iter().map(String::as_str)).map_err(|e| field(format_args!("kernel[{i}]"), e))
            })
            .collect()
    }
}
