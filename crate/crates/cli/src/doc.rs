//! On-disk documents and their conversion to library types.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use divrel::{DivRel, GeneratorList, IndexSet, Monomial, RelationSet, VariableSet};

use crate::CliError;

/// Generators as exponent vectors aligned to `variables`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDocument {
    pub variables: Vec<String>,
    pub generators: Vec<Vec<u64>>,
}

/// Relations over `[q]` as `[base, [targets…]]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub q: usize,
    pub relations: Vec<(usize, Vec<usize>)>,
}

impl IdealDocument {
    #[cfg(test)]
    pub fn from_generators(g: &GeneratorList) -> Result<Self, CliError> {
        Self::from_parts(g.variables(), g.gens())
    }

    pub fn from_parts(variables: &VariableSet, gens: &[Monomial]) -> Result<Self, CliError> {
        let n = variables.len();
        let generators = gens
            .iter()
            .map(|m| {
                m.dense(n)
                    .iter()
                    .map(|e| u64::try_from(e).map_err(|_| CliError::Input("exponent exceeds 64 bits".into())))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(IdealDocument {
            variables: variables.names().to_vec(),
            generators,
        })
    }

    pub fn to_generators(&self) -> Result<GeneratorList, CliError> {
        let vars = VariableSet::new(self.variables.iter().cloned())?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (row, exps) in self.generators.iter().enumerate() {
            if exps.len() != vars.len() {
                return Err(CliError::Input(format!(
                    "generator {} has {} exponents, expected {}",
                    row + 1,
                    exps.len(),
                    vars.len()
                )));
            }
            let big: Vec<BigUint> = exps.iter().map(|&e| BigUint::from(e)).collect();
            gens.push(Monomial::from_exponents(&big));
        }
        Ok(GeneratorList::new(vars, gens)?)
    }
}

impl RelationDocument {
    pub fn from_relations(d: &RelationSet) -> Self {
        RelationDocument {
            q: d.q(),
            relations: d.iter().map(|r| (r.base(), r.targets().to_vec())).collect(),
        }
    }

    pub fn to_relations(&self) -> Result<RelationSet, CliError> {
        let mut d = RelationSet::empty(self.q);
        for (k, (b, targets)) in self.relations.iter().enumerate() {
            if targets.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Input(format!(
                    "relation {}: targets must be strictly ascending",
                    k + 1
                )));
            }
            let set: IndexSet = targets.iter().copied().collect();
            if targets.iter().any(|&t| t == 0 || t > self.q) || *b == 0 || *b > self.q {
                return Err(CliError::Input(format!("relation {}: index outside [{}]", k + 1, self.q)));
            }
            d.insert(DivRel::new(*b, set)?)?;
        }
        Ok(d)
    }
}

/// Parses one monomial per line. An optional first line `variables: a b c`
/// fixes the variable order; otherwise variables are taken in order of first
/// appearance. Blank lines and lines starting with `#` are skipped.
pub fn parse_monomial_lines(text: &str) -> Result<GeneratorList, CliError> {
    let mut declared: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("variables:") {
            if declared.is_some() || !rows.is_empty() {
                return Err(CliError::Input(format!(
                    "line {}: the variables line must come first",
                    k + 1
                )));
            }
            declared = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        rows.push((k + 1, line));
    }
    let names = match declared {
        Some(names) => names,
        None => {
            let mut names: Vec<String> = Vec::new();
            for (_, line) in &rows {
                for factor in line.split('*') {
                    let name = factor.split('^').next().unwrap_or("").trim();
                    if !name.is_empty() && name != "1" && !names.iter().any(|n| n == name) {
                        names.push(name.to_string());
                    }
                }
            }
            names
        }
    };
    let vars = VariableSet::new(names)?;
    let mut gens = Vec::with_capacity(rows.len());
    for (line_no, line) in rows {
        let m = vars
            .parse_monomial(line)
            .map_err(|e| CliError::Input(format!("line {line_no}: {e}")))?;
        gens.push(m);
    }
    Ok(GeneratorList::new(vars, gens)?)
}

/// Arrays without objects whose compact form fits in this many bytes stay on
/// one line.
const INLINE_WIDTH: usize = 72;

/// Two-space indented JSON with a trailing newline. Short arrays of scalars
/// and nested scalar arrays are written on one line, so re-serializing a
/// parsed document reproduces it byte for byte.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&" ".repeat(indent + 2));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(val, indent + 2, out);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let inline = inline(v);
            if !has_object(v) && inline.len() <= INLINE_WIDTH {
                out.push_str(&inline);
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&" ".repeat(indent + 2));
                write_value(item, indent + 2, out);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}
