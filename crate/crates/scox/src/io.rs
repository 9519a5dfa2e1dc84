//! Text and JSON formats: system specifications, subsets, words,
//! expressions, cosets, traces and tables.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cosets::DoubleCoset;
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Element, Gen, GenSubset};
use crate::error::{Result, ScoxError};
use crate::expressions::{Expression, MultistepExpression, Sign, Step};
use crate::relations::TableRow;
use crate::rewrite::RewriteTrace;

/// One Coxeter matrix entry on input: an integer, or `null` / `"inf"` /
/// `"∞"` / `0` for an infinite label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    /// A finite label (or `0` for infinity).
    Int(u32),
    /// `"inf"` or `"∞"`.
    Text(String),
    /// JSON `null`.
    Null,
}

impl MatrixEntry {
    fn to_label(&self) -> Result<Option<u32>> {
        match self {
            MatrixEntry::Int(0) | MatrixEntry::Null => Ok(None),
            MatrixEntry::Int(m) => Ok(Some(*m)),
            MatrixEntry::Text(t) if matches!(t.trim(), "inf" | "∞" | "infinity") => Ok(None),
            MatrixEntry::Text(t) => Err(ScoxError::Validation(format!("bad matrix entry '{t}'"))),
        }
    }
}

/// A system specification: `{"type": "E8"}` or `{"matrix": [[1,3],[3,1]], "labels": ["s","t"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    /// A named (product of) finite type(s).
    Named {
        /// Type name such as `E8` or `A2×A1`.
        #[serde(rename = "type")]
        type_name: String,
    },
    /// An explicit Coxeter matrix.
    Matrix {
        /// Rows of the matrix.
        matrix: Vec<Vec<Option<MatrixEntry>>>,
        /// Generator labels (default `s1..sn`).
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

impl SystemSpec {
    /// Builds the system.
    pub fn build(&self) -> Result<CoxeterSystem> {
        match self {
            SystemSpec::Named { type_name } => CoxeterSystem::named(type_name),
            SystemSpec::Matrix { matrix, labels } => {
                let rows = matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                None => Ok(None),
                                Some(e) => e.to_label(),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let m = CoxeterMatrix::new(rows)?;
                let labels = labels.clone().unwrap_or_else(|| (1..=m.rank()).map(|i| format!("s{i}")).collect());
                CoxeterSystem::from_matrix(m, labels)
            }
        }
    }

    /// Parses JSON.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ScoxError::Validation(format!("bad system JSON: {e}")))
    }

    /// Parses TOML.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| ScoxError::Validation(format!("bad system TOML: {e}")))
    }
}

/// Loads a system from a `.toml` or JSON file.
pub fn load_system(path: &Path) -> Result<CoxeterSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ScoxError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let spec = if path.extension().is_some_and(|x| x == "toml") {
        SystemSpec::from_toml(&text)?
    } else {
        SystemSpec::from_json(&text)?
    };
    spec.build()
}

/// Single-letter aliases `s, t, u, …` for the default labels `s1, s2, s3, …`.
const LETTER_ALIASES: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];

/// Splits a token of concatenated labels greedily (longest label first), also
/// accepting 1-based generator indices and, for systems with the default
/// labels `s1..sn` (n ≤ 8), the letters `s, t, u, v, w, x, y, z`.
fn tokenize(sys: &CoxeterSystem, token: &str) -> Result<Vec<Gen>> {
    if let Some(g) = sys.gen_by_label(token) {
        return Ok(vec![g]);
    }
    if let Ok(k) = token.parse::<usize>() {
        if (1..=sys.rank()).contains(&k) {
            return Ok(vec![k - 1]);
        }
    }
    let mut labels: Vec<(usize, &str)> = sys.labels().iter().map(String::as_str).enumerate().collect();
    let default_labels = sys.labels().iter().enumerate().all(|(k, l)| *l == format!("s{}", k + 1));
    if default_labels && sys.rank() <= LETTER_ALIASES.len() {
        labels.extend(LETTER_ALIASES.iter().copied().take(sys.rank()).enumerate());
    }
    labels.sort_by_key(|(_, l)| std::cmp::Reverse(l.len()));
    let mut out = Vec::new();
    let mut rest = token;
    while !rest.is_empty() {
        let (g, l) = labels
            .iter()
            .find(|(_, l)| !l.is_empty() && rest.starts_with(l))
            .ok_or_else(|| ScoxError::Validation(format!("unknown generator in '{token}'")))?;
        out.push(*g);
        rest = &rest[l.len()..];
    }
    Ok(out)
}

fn split_tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == ',' || c == '.' || c.is_whitespace()).filter(|t| !t.is_empty())
}

/// Parses a subset: empty, `∅`, comma-separated labels or indices, or
/// concatenated labels.
pub fn parse_subset(sys: &CoxeterSystem, text: &str) -> Result<GenSubset> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    if t.is_empty() || t == "∅" {
        return Ok(GenSubset::EMPTY);
    }
    let mut j = GenSubset::EMPTY;
    for tok in split_tokens(t) {
        for g in tokenize(sys, tok)? {
            j = j.with(g);
        }
    }
    Ok(j)
}

/// Parses a word: empty or `e` for the identity; labels or indices separated
/// by commas, dots or spaces, or concatenated.
pub fn parse_word(sys: &CoxeterSystem, text: &str) -> Result<Vec<Gen>> {
    let t = text.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in split_tokens(t) {
        out.extend(tokenize(sys, tok)?);
    }
    Ok(out)
}

/// Parses an element from a word.
pub fn parse_element(sys: &CoxeterSystem, text: &str) -> Result<Element> {
    sys.element_from_word(&parse_word(sys, text)?)
}

/// Splits a bracket body on top-level commas (inside `{…}` commas belong to
/// the subset).
fn split_top(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in body.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&body[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out
}

/// Parses an expression in bracket form `[st,s,su,s,st]`, step form
/// `[st] -s +u -s +t`, or multistep form `[[st,stu,tu]]`. Subsets with
/// multi-character labels are written in braces: `[{s1,s2},{s1}]`.
pub fn parse_expression(sys: &CoxeterSystem, text: &str) -> Result<Expression> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")) {
        let chain = split_top(inner).into_iter().map(|p| parse_subset(sys, p)).collect::<Result<Vec<_>>>()?;
        let m = MultistepExpression::from_nested(sys, &chain)?;
        return Ok(sys.multistep_to_singlestep(&m));
    }
    let close = t
        .find(']')
        .filter(|_| t.starts_with('['))
        .ok_or_else(|| ScoxError::Validation(format!("expected an expression in brackets, found '{t}'")))?;
    let body = &t[1..close];
    let tail = t[close + 1..].trim();
    if tail.is_empty() {
        let subsets = split_top(body).into_iter().map(|p| parse_subset(sys, p)).collect::<Result<Vec<_>>>()?;
        return Expression::from_subsets(sys, &subsets);
    }
    let start = parse_subset(sys, body)?;
    let mut steps = Vec::new();
    for tok in tail.split_whitespace() {
        let (sign, rest) = match tok.chars().next() {
            Some('+') => (Sign::Plus, &tok[1..]),
            Some('-') => (Sign::Minus, &tok[1..]),
            Some('−') => (Sign::Minus, &tok['−'.len_utf8()..]),
            _ => return Err(ScoxError::Validation(format!("expected +s or -s, found '{tok}'"))),
        };
        let gens = tokenize(sys, rest)?;
        if gens.len() != 1 {
            return Err(ScoxError::Validation(format!("a step names one generator, found '{tok}'")));
        }
        steps.push(Step { sign, gen: gens[0] });
    }
    Expression::new(sys, start, steps)
}

fn labels_of(sys: &CoxeterSystem, j: GenSubset) -> Vec<String> {
    j.iter().map(|g| sys.label(g).to_string()).collect()
}

fn word_labels(sys: &CoxeterSystem, x: &Element) -> Vec<String> {
    sys.reduced_word(x).into_iter().map(|g| sys.label(g).to_string()).collect()
}

fn subset_from_labels(sys: &CoxeterSystem, v: &[String]) -> Result<GenSubset> {
    let mut j = GenSubset::EMPTY;
    for l in v {
        j = j.with(tokenize(sys, l)?.into_iter().next().ok_or_else(|| ScoxError::Validation("empty label".into()))?);
    }
    Ok(j)
}

/// JSON form of a coset: `{"left":[..],"right":[..],"min":[..]}`, with the
/// maximum, redundancies and lengths when `full`.
pub fn coset_to_json(sys: &CoxeterSystem, p: &DoubleCoset, full: bool) -> Value {
    let mut v = json!({
        "left": labels_of(sys, p.left()),
        "right": labels_of(sys, p.right()),
        "min": word_labels(sys, p.min()),
    });
    if full {
        let l = sys.coset_lengths(p);
        v["max"] = json!(word_labels(sys, p.max()));
        v["left_redundancy"] = json!(labels_of(sys, p.left_redundancy()));
        v["right_redundancy"] = json!(labels_of(sys, p.right_redundancy()));
        v["lengths"] = json!({"plus": l.plus, "minus": l.minus, "total": l.total});
    }
    v
}

/// Reads a coset from its JSON form (`min` may be any element of the coset).
pub fn coset_from_json(sys: &CoxeterSystem, v: &Value) -> Result<DoubleCoset> {
    let get = |k: &str| -> Result<Vec<String>> {
        serde_json::from_value(v.get(k).cloned().unwrap_or(Value::Array(vec![])))
            .map_err(|e| ScoxError::Validation(format!("bad '{k}': {e}")))
    };
    let j = subset_from_labels(sys, &get("left")?)?;
    let i = subset_from_labels(sys, &get("right")?)?;
    let mut word = Vec::new();
    for l in get("min")? {
        word.extend(tokenize(sys, &l)?);
    }
    sys.coset_of(j, &sys.element_from_word(&word)?, i)
}

/// JSON form of an expression: `{"start":[..],"steps":[["-","s"],["+","u"]]}`.
pub fn expression_to_json(sys: &CoxeterSystem, e: &Expression) -> Value {
    json!({
        "start": labels_of(sys, e.start()),
        "steps": e.steps().iter().map(|s| json!([s.sign.symbol().to_string(), sys.label(s.gen)])).collect::<Vec<_>>(),
    })
}

/// Reads an expression from its JSON form.
pub fn expression_from_json(sys: &CoxeterSystem, v: &Value) -> Result<Expression> {
    let start: Vec<String> = serde_json::from_value(v.get("start").cloned().unwrap_or(Value::Array(vec![])))
        .map_err(|e| ScoxError::Validation(format!("bad 'start': {e}")))?;
    let steps: Vec<(String, String)> = serde_json::from_value(v.get("steps").cloned().unwrap_or(Value::Array(vec![])))
        .map_err(|e| ScoxError::Validation(format!("bad 'steps': {e}")))?;
    let start = subset_from_labels(sys, &start)?;
    let mut out = Vec::with_capacity(steps.len());
    for (sign, label) in steps {
        let sign = match sign.as_str() {
            "+" => Sign::Plus,
            "-" | "−" => Sign::Minus,
            other => return Err(ScoxError::Validation(format!("bad sign '{other}'"))),
        };
        let g = match tokenize(sys, &label)?.as_slice() {
            [g] => *g,
            _ => return Err(ScoxError::Validation(format!("expected one generator, found '{label}'"))),
        };
        out.push(Step { sign, gen: g });
    }
    Expression::new(sys, start, out)
}

/// JSON array of trace steps.
pub fn trace_to_json(sys: &CoxeterSystem, tr: &RewriteTrace) -> Value {
    json!({
        "start": expression_to_json(sys, &tr.start),
        "steps": tr.steps.iter().enumerate().map(|(k, s)| json!({
            "step": k + 1,
            "kind": s.relation.kind.name(),
            "position": s.relation.position,
            "direction": s.relation.direction,
            "result": sys.fmt_expression(&s.result),
        })).collect::<Vec<_>>(),
        "final": expression_to_json(sys, &tr.final_expr),
    })
}

/// Aligned text table with columns `a`, `b`, `c` (digits concatenated when
/// the rank is at most 9).
pub fn table_to_text(rank: usize, rows: &[TableRow]) -> String {
    let fmt_c = |c: &[usize]| -> String {
        if rank <= 9 {
            c.iter().map(|x| x.to_string()).collect()
        } else {
            c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
    };
    let cs: Vec<String> = rows.iter().map(|r| fmt_c(&r.c)).collect();
    let w = cs.iter().map(|c| c.chars().count()).max().unwrap_or(1).max(1);
    let mut out = format!("{:>3} {:>3}  {:<w$}\n", "a", "b", "c");
    for (r, c) in rows.iter().zip(&cs) {
        out.push_str(&format!("{:>3} {:>3}  {:<w$}\n", r.a, r.b, c).trim_end().to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bracket_and_step_forms() {
        let sys = CoxeterSystem::from_matrix(
            CoxeterMatrix::new(vec![
                vec![Some(1), Some(3), Some(2)],
                vec![Some(3), Some(1), Some(3)],
                vec![Some(2), Some(3), Some(1)],
            ])
            .unwrap(),
            vec!["s".into(), "t".into(), "u".into()],
        )
        .unwrap();
        let a = parse_expression(&sys, "[st,s,su,s,st]").unwrap();
        let b = parse_expression(&sys, "[st] -t +u -u +t").unwrap();
        assert_eq!(a, b);
        assert_eq!(expression_from_json(&sys, &expression_to_json(&sys, &a)).unwrap(), a);
        let m = parse_expression(&sys, "[[st,stu,tu]]").unwrap();
        assert_eq!(sys.fmt_expression(&m), "[st,stu,tu]");
    }

    #[test]
    fn infinite_labels_in_matrix_specs() {
        let spec = SystemSpec::from_json(r#"{"matrix": [[1, null], ["inf", 1]], "labels": ["s", "t"]}"#).unwrap();
        let sys = spec.build().unwrap();
        assert!(!sys.is_finite());
        let spec = SystemSpec::from_toml("type = \"E8\"").unwrap();
        assert_eq!(spec.build().unwrap().rank(), 8);
    }
}
