//! System files and decomposition documents.
//!
//! Both have a line-oriented text form and a JSON form. The text form is a
//! sequence of `key: value` lines; a key with an empty value opens a section
//! whose following lines are one expression each. `#` starts a comment.
//!
//! ```text
//! name: example1
//! params: u, v, w
//! vars: x, y, z
//! polys:
//! (u*x+1)*z^3 + (v*y+1)*z^2 + w*x*z + 1
//! u*x + 1
//! ```

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grd::GrdResult;
use crate::poly::{parse_polynomial, Context, Polynomial};
use crate::regchain::RegularSystem;
use crate::triset::TriangularSet;

struct Line<'a> {
    number: usize,
    /// Byte offset of the content within the original line.
    indent: usize,
    text: &'a str,
}

enum Item<'a> {
    Key(Line<'a>, &'a str, Line<'a>),
    Bare(Line<'a>),
}

fn items(src: &str) -> Vec<Item<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let text = content.trim();
        if text.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let line = Line {
            number: i + 1,
            indent,
            text,
        };
        match text.split_once(':') {
            Some((key, value)) if is_key(key) => {
                let value_trim = value.trim_start();
                let offset = indent + key.len() + 1 + (value.len() - value_trim.len());
                let v = Line {
                    number: i + 1,
                    indent: offset,
                    text: value_trim.trim_end(),
                };
                out.push(Item::Key(line, key.trim(), v));
            }
            _ => out.push(Item::Bare(line)),
        }
    }
    out
}

fn is_key(k: &str) -> bool {
    let k = k.trim();
    !k.is_empty()
        && k.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == ' ')
}

fn doc_error(line: &Line<'_>, message: impl Into<String>) -> Error {
    Error::Parse {
        line: line.number,
        column: line.indent + 1,
        message: message.into(),
    }
}

fn names(v: &Line<'_>) -> Vec<String> {
    v.text
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// An expression together with where it came from, for error positions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Origin {
    line: usize,
    column: usize,
}

fn parse_at(ctx: &Arc<Context>, src: &str, origin: Option<&Origin>) -> Result<Polynomial> {
    parse_polynomial(ctx, src).map_err(|e| match (e, origin) {
        (
            Error::Parse {
                line,
                column,
                message,
            },
            Some(o),
        ) if o.line > 0 => Error::Parse {
            line: o.line + line - 1,
            column: if line == 1 {
                o.column + column - 1
            } else {
                column
            },
            message,
        },
        (e, _) => e,
    })
}

/// A parametric polynomial system as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub polys: Vec<String>,
    #[serde(skip)]
    origins: Vec<Origin>,
}

impl SystemFile {
    pub fn new(
        name: Option<String>,
        params: Vec<String>,
        vars: Vec<String>,
        polys: Vec<String>,
    ) -> Self {
        SystemFile {
            name,
            params,
            vars,
            polys,
            origins: Vec::new(),
        }
    }

    /// Parse the text form, or JSON if the input starts with `{`.
    pub fn parse(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            return serde_json::from_str(src).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            });
        }
        let mut name = None;
        let mut params = None;
        let mut vars = None;
        let mut polys = Vec::new();
        let mut origins = Vec::new();
        let mut in_polys = false;
        for item in items(src) {
            match item {
                Item::Key(line, key, value) => {
                    in_polys = false;
                    match key {
                        "name" => name = Some(value.text.to_string()),
                        "params" => params = Some(names(&value)),
                        "vars" => vars = Some(names(&value)),
                        "polys" if value.text.is_empty() => in_polys = true,
                        "polys" => {
                            polys.push(value.text.to_string());
                            origins.push(Origin {
                                line: value.number,
                                column: value.indent + 1,
                            });
                            in_polys = true;
                        }
                        _ => return Err(doc_error(&line, format!("unknown key '{key}'"))),
                    }
                }
                Item::Bare(line) if in_polys => {
                    polys.push(line.text.to_string());
                    origins.push(Origin {
                        line: line.number,
                        column: line.indent + 1,
                    });
                }
                Item::Bare(line) => {
                    return Err(doc_error(&line, "expression outside the 'polys:' section"));
                }
            }
        }
        let vars = vars.ok_or_else(|| Error::Document("missing 'vars:' line".into()))?;
        Ok(SystemFile {
            name,
            params: params.unwrap_or_default(),
            vars,
            polys,
            origins,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
        let mut f = Self::parse(&src)?;
        if f.name.is_none() {
            f.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(f)
    }

    /// Variables in the given ascending order; `None` keeps the file order.
    pub fn ordered_vars(&self, order: Option<&[String]>) -> Result<Vec<String>> {
        let Some(order) = order else {
            return Ok(self.vars.clone());
        };
        let mut a = order.to_vec();
        let mut b = self.vars.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::InvalidContext(format!(
                "ordering [{}] is not a permutation of [{}]",
                order.join(", "),
                self.vars.join(", ")
            )));
        }
        Ok(order.to_vec())
    }

    /// Build the context and parse the polynomials.
    pub fn build(&self, order: Option<&[String]>) -> Result<(Arc<Context>, Vec<Polynomial>)> {
        let vars = self.ordered_vars(order)?;
        let params: Vec<&str> = self.params.iter().map(String::as_str).collect();
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        let ctx = Context::new(&params, &vars)?;
        let polys = self
            .polys
            .iter()
            .enumerate()
            .map(|(i, s)| parse_at(&ctx, s, self.origins.get(i)))
            .collect::<Result<Vec<_>>>()?;
        if polys.iter().all(Polynomial::is_zero) {
            return Err(Error::EmptySystem);
        }
        Ok((ctx, polys))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out += &format!("name: {n}\n");
        }
        out += &format!("params: {}\n", self.params.join(", "));
        out += &format!("vars: {}\n", self.vars.join(", "));
        out += "polys:\n";
        for p in &self.polys {
            out += p;
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub chain: Vec<String>,
    pub inequation: String,
}

/// A decomposition in the polynomial grammar: regular systems, the
/// normalized `B`, its unnormalized factors and the guard.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub params: Vec<String>,
    pub vars: Vec<String>,
    pub systems: Vec<SystemDoc>,
    pub rdu: String,
    #[serde(default)]
    pub rdu_raw: Vec<String>,
    #[serde(default = "one")]
    pub guard: String,
}

fn one() -> String {
    "1".into()
}

impl DecompositionDoc {
    pub fn from_result(name: Option<&str>, r: &GrdResult) -> Self {
        let ctx = r.context();
        DecompositionDoc {
            name: name.map(str::to_string),
            params: ctx.params().to_vec(),
            vars: ctx.vars().to_vec(),
            systems: r
                .systems
                .iter()
                .map(|s| SystemDoc {
                    chain: s.chain.polys().iter().map(|p| p.to_string()).collect(),
                    inequation: s.inequation.to_string(),
                })
                .collect(),
            rdu: r.rdu.to_string(),
            rdu_raw: r.raw_factors.iter().map(|p| p.to_string()).collect(),
            guard: r.guard.to_string(),
        }
    }

    /// Parse the text form, or JSON if the input starts with `{`.
    pub fn parse(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            return serde_json::from_str(src).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            });
        }
        let mut doc = DecompositionDoc {
            name: None,
            params: Vec::new(),
            vars: Vec::new(),
            systems: Vec::new(),
            rdu: String::new(),
            rdu_raw: Vec::new(),
            guard: one(),
        };
        let mut have_vars = false;
        let mut section = "";
        for item in items(src) {
            match item {
                Item::Key(line, key, value) => {
                    section = "";
                    match key {
                        "name" => doc.name = Some(value.text.to_string()),
                        "params" => doc.params = names(&value),
                        "vars" => {
                            doc.vars = names(&value);
                            have_vars = true;
                        }
                        "system" => {
                            doc.systems.push(SystemDoc {
                                chain: Vec::new(),
                                inequation: one(),
                            });
                            section = "system";
                        }
                        "inequation" => match doc.systems.last_mut() {
                            Some(s) => {
                                s.inequation = value.text.to_string();
                                section = "system";
                            }
                            None => {
                                return Err(doc_error(&line, "'inequation:' before any 'system:'"))
                            }
                        },
                        "rdu" => doc.rdu = value.text.to_string(),
                        "rdu_raw" if value.text.is_empty() => section = "rdu_raw",
                        "rdu_raw" => doc.rdu_raw.push(value.text.to_string()),
                        "guard" => doc.guard = value.text.to_string(),
                        _ => return Err(doc_error(&line, format!("unknown key '{key}'"))),
                    }
                }
                Item::Bare(line) => match section {
                    "system" => {
                        let s = doc.systems.last_mut().expect("section opened by a system");
                        s.chain.push(line.text.to_string());
                    }
                    "rdu_raw" => doc.rdu_raw.push(line.text.to_string()),
                    _ => return Err(doc_error(&line, "expression outside a section")),
                },
            }
        }
        if !have_vars {
            return Err(Error::Document("missing 'vars:' line".into()));
        }
        if doc.rdu.is_empty() {
            return Err(Error::Document("missing 'rdu:' line".into()));
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out += &format!("name: {n}\n");
        }
        out += &format!("params: {}\n", self.params.join(", "));
        out += &format!("vars: {}\n", self.vars.join(", "));
        for s in &self.systems {
            out += "system:\n";
            for t in &s.chain {
                out += &format!("  {t}\n");
            }
            out += &format!("  inequation: {}\n", s.inequation);
        }
        out += &format!("rdu: {}\n", self.rdu);
        if !self.rdu_raw.is_empty() {
            out += "rdu_raw:\n";
            for f in &self.rdu_raw {
                out += &format!("  {f}\n");
            }
        }
        out += &format!("guard: {}\n", self.guard);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Rebuild the decomposition in `ctx`, which must have the same
    /// parameters and variables in the same order. Regularity is not checked.
    pub fn to_result(&self, ctx: &Arc<Context>) -> Result<GrdResult> {
        if self.params != ctx.params() || self.vars != ctx.vars() {
            return Err(Error::ContextMismatch);
        }
        let mut systems = Vec::with_capacity(self.systems.len());
        for s in &self.systems {
            let chain = s
                .chain
                .iter()
                .map(|e| parse_polynomial(ctx, e))
                .collect::<Result<Vec<_>>>()?;
            let chain = TriangularSet::new(ctx, chain)
                .map_err(|e| Error::Document(format!("system [{}]: {e}", s.chain.join(", "))))?;
            systems.push(RegularSystem::unchecked(
                chain,
                parse_polynomial(ctx, &s.inequation)?,
            ));
        }
        let guard: BigInt =
            self.guard.trim().parse().map_err(|_| {
                Error::Document(format!("guard '{}' is not an integer", self.guard))
            })?;
        Ok(GrdResult {
            systems,
            rdu: parse_polynomial(ctx, &self.rdu)?,
            raw_factors: self
                .rdu_raw
                .iter()
                .map(|e| parse_polynomial(ctx, e))
                .collect::<Result<_>>()?,
            guard,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grd::rdu;

    const EXAMPLE: &str =
        "name: demo\n# a comment\nparams: u\nvars: x, y\npolys:\n  x^2 - u\n  y*x - 1\n";

    #[test]
    fn system_text_and_json() {
        let f = SystemFile::parse(EXAMPLE).unwrap();
        assert_eq!(f.name.as_deref(), Some("demo"));
        assert_eq!(f.params, ["u"]);
        assert_eq!(f.vars, ["x", "y"]);
        assert_eq!(f.polys, ["x^2 - u", "y*x - 1"]);
        let (ctx, ps) = f.build(None).unwrap();
        assert_eq!(ctx.vars(), ["x", "y"]);
        assert_eq!(ps.len(), 2);
        let back = SystemFile::parse(&f.to_json()).unwrap();
        assert_eq!(back.polys, f.polys);
        assert_eq!(SystemFile::parse(&f.to_text()).unwrap().polys, f.polys);
    }

    #[test]
    fn ordering_override() {
        let f = SystemFile::parse(EXAMPLE).unwrap();
        let order = vec!["y".to_string(), "x".to_string()];
        let (ctx, _) = f.build(Some(&order)).unwrap();
        assert_eq!(ctx.vars(), ["y", "x"]);
        let bad = vec!["y".to_string(), "z".to_string()];
        assert!(matches!(f.build(Some(&bad)), Err(Error::InvalidContext(_))));
    }

    #[test]
    fn error_positions() {
        let f = SystemFile::parse("params: u\nvars: x\npolys:\n  x + q\n").unwrap();
        match f.build(None).unwrap_err() {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!((line, column), (4, 7));
                assert!(message.contains("'q'"), "{message}");
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            SystemFile::parse("vars: x\nbogus: 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            SystemFile::parse("polys:\nx\n"),
            Err(Error::Document(_))
        ));
        let empty = SystemFile::parse("vars: x\npolys:\n").unwrap();
        assert_eq!(empty.build(None).unwrap_err(), Error::EmptySystem);
    }

    #[test]
    fn decomposition_round_trip() {
        let f = SystemFile::parse(EXAMPLE).unwrap();
        let (ctx, ps) = f.build(None).unwrap();
        let r = rdu(&ps).unwrap();
        let doc = DecompositionDoc::from_result(Some("demo"), &r);
        for text in [doc.to_text(), doc.to_json()] {
            let back = DecompositionDoc::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_result(&ctx).unwrap(), r);
        }
        let other = Context::new(&["u"], &["y", "x"]).unwrap();
        assert_eq!(doc.to_result(&other).unwrap_err(), Error::ContextMismatch);
    }
}
