//! Definition files: an INI-like format with `[section name]` headers,
//! `key = value` lines, `#` comments and quoted expressions.
//!
//! ```text
//! [algebra]
//! generators = u, v
//! invertible = u, v
//!
//! [bracket kontsevich]
//! u, v = "-v*u (x) 1"
//!
//! [elements]
//! h = "u + v + u^-1 + v^-1 + u^-1*v^-1"
//!
//! [field delta1]
//! u = "1 (x) u"
//!
//! [polyvector P]
//! 1 = delta1, delta2
//!
//! [lax]
//! spectral = lambda
//! L 1 2 = "lambda*v + 1"
//!
//! [coalgebra M2]
//! comatrix = 2
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use super::parse::{parse_element, parse_laurent, parse_tensor};
use crate::dbracket::BracketDef;
use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::integrable::{LaxPair, NCLaurent};
use crate::ncalg::{AlgebraSignature, NCPoly};
use crate::polyvec::{PolyVector, VectorField};
use crate::repalg::{comatrix_coalgebra, Coalgebra, Tensor2};

#[derive(Debug, Clone)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    /// Column where the unquoted value starts.
    col: usize,
}

#[derive(Debug, Clone)]
struct Section {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<Entry>,
}

fn def_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Definition(format!("line {line}: {msg}"))
}

fn split_sections(src: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(h) = trimmed.strip_prefix('[') {
            let h = h
                .strip_suffix(']')
                .ok_or_else(|| def_err(line, "unterminated section header"))?;
            let mut parts = h.split_whitespace();
            let kind = parts.next().ok_or_else(|| def_err(line, "empty section header"))?.to_string();
            let name = parts.next().map(str::to_string);
            if parts.next().is_some() {
                return Err(def_err(line, "section header takes at most a kind and a name"));
            }
            out.push(Section {
                kind,
                name,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| def_err(line, "expected `key = value`"))?;
        let sec = out
            .last_mut()
            .ok_or_else(|| def_err(line, "entry outside of any section"))?;
        let lead = value.len() - value.trim_start().len();
        let mut col = key.chars().count() + 2 + value[..lead].chars().count();
        let mut v = value.trim();
        if let Some(q) = v.strip_prefix('"') {
            v = q
                .strip_suffix('"')
                .ok_or_else(|| def_err(line, "unterminated string"))?;
            col += 1;
        } else if let Some(c) = v.find(" #") {
            v = v[..c].trim_end();
        }
        sec.entries.push(Entry {
            key: key.trim().to_string(),
            value: v.to_string(),
            line,
            col,
        });
    }
    Ok(out)
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Re-anchors expression syntax errors at the file position of the value.
fn at(e: &Entry, r: Error) -> Error {
    match r {
        Error::Syntax { line, column, message } => Error::Syntax {
            line: e.line + line - 1,
            column: if line == 1 { e.col + column - 1 } else { column },
            message,
        },
        other => def_err(e.line, other),
    }
}

/// The contents of a definition file, keyed by section names.
#[derive(Debug, Clone, Default)]
pub struct DefinitionFile {
    pub sig: Option<Arc<AlgebraSignature>>,
    pub brackets: BTreeMap<String, BracketDef>,
    pub elements: BTreeMap<String, NCPoly>,
    pub fields: BTreeMap<String, VectorField>,
    pub polyvectors: BTreeMap<String, PolyVector>,
    pub lax: Option<LaxPair>,
    pub coalgebras: BTreeMap<String, Coalgebra>,
    /// Section names in file order, per kind.
    order: BTreeMap<String, Vec<String>>,
}

impl DefinitionFile {
    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Definition(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn parse(src: &str) -> Result<Self> {
        let sections = split_sections(src)?;
        let mut out = DefinitionFile::default();
        for s in sections.iter().filter(|s| s.kind == "algebra") {
            if out.sig.is_some() {
                return Err(def_err(s.line, "duplicate [algebra] section"));
            }
            out.sig = Some(Arc::new(parse_algebra(s)?));
        }
        for s in sections.iter().filter(|s| s.kind != "algebra") {
            let named = |s: &Section| s.name.clone().ok_or_else(|| def_err(s.line, format!("[{}] needs a name", s.kind)));
            match s.kind.as_str() {
                "bracket" => {
                    let n = named(s)?;
                    let b = parse_bracket(out.need_sig(s)?, s)?;
                    out.insert_named("bracket", n, s.line, |d, n| d.brackets.insert(n, b).is_some())?;
                }
                "elements" => {
                    let sig = out.need_sig(s)?.clone();
                    for e in &s.entries {
                        let p = parse_element(&e.value, &sig).map_err(|r| at(e, r))?;
                        if out.elements.insert(e.key.clone(), p).is_some() {
                            return Err(def_err(e.line, format!("duplicate element `{}`", e.key)));
                        }
                    }
                }
                "field" => {
                    let n = named(s)?;
                    let f = parse_field(out.need_sig(s)?, s)?;
                    out.insert_named("field", n, s.line, |d, n| d.fields.insert(n, f).is_some())?;
                }
                "polyvector" => {
                    let n = named(s)?;
                    let p = out.parse_polyvector(s)?;
                    out.insert_named("polyvector", n, s.line, |d, n| d.polyvectors.insert(n, p).is_some())?;
                }
                "lax" => {
                    if out.lax.is_some() {
                        return Err(def_err(s.line, "duplicate [lax] section"));
                    }
                    out.lax = Some(parse_lax(out.need_sig(s)?, s)?);
                }
                "coalgebra" => {
                    let n = named(s)?;
                    let c = parse_coalgebra(s)?;
                    out.insert_named("coalgebra", n, s.line, |d, n| d.coalgebras.insert(n, c).is_some())?;
                }
                other => return Err(def_err(s.line, format!("unknown section kind `{other}`"))),
            }
        }
        Ok(out)
    }

    fn need_sig(&self, s: &Section) -> Result<&Arc<AlgebraSignature>> {
        self.sig
            .as_ref()
            .ok_or_else(|| def_err(s.line, format!("[{}] requires an [algebra] section", s.kind)))
    }

    fn insert_named<F>(&mut self, kind: &str, name: String, line: usize, f: F) -> Result<()>
    where
        F: FnOnce(&mut Self, String) -> bool,
    {
        if f(self, name.clone()) {
            return Err(def_err(line, format!("duplicate [{kind} {name}]")));
        }
        self.order.entry(kind.to_string()).or_default().push(name);
        Ok(())
    }

    fn parse_polyvector(&self, s: &Section) -> Result<PolyVector> {
        let sig = self.need_sig(s)?;
        let mut p = PolyVector::new(sig);
        for e in &s.entries {
            let c: Rat = e
                .key
                .parse()
                .or_else(|_| e.key.strip_prefix('+').unwrap_or("?").parse())
                .map_err(|_| def_err(e.line, format!("invalid coefficient `{}`", e.key)))?;
            let mut factors = Vec::new();
            for f in list(&e.value) {
                let field = self
                    .fields
                    .get(&f)
                    .ok_or_else(|| def_err(e.line, format!("unknown field `{f}`")))?;
                factors.push(field.clone());
            }
            p = p.add(c, factors).map_err(|r| def_err(e.line, r))?;
        }
        Ok(p)
    }

    /// A bracket by name, or the first one in file order.
    pub fn bracket(&self, name: Option<&str>) -> Result<&BracketDef> {
        let n = match name {
            Some(n) => n.to_string(),
            None => self
                .order
                .get("bracket")
                .and_then(|v| v.first().cloned())
                .ok_or_else(|| Error::Definition("no [bracket] section".into()))?,
        };
        self.brackets
            .get(&n)
            .ok_or_else(|| Error::Definition(format!("no bracket named `{n}`")))
    }

    pub fn element(&self, name: &str) -> Result<&NCPoly> {
        self.elements
            .get(name)
            .ok_or_else(|| Error::Definition(format!("no element named `{name}`")))
    }

    /// A coalgebra by name, or the first one in file order.
    pub fn coalgebra(&self, name: Option<&str>) -> Result<&Coalgebra> {
        let n = match name {
            Some(n) => n.to_string(),
            None => self
                .order
                .get("coalgebra")
                .and_then(|v| v.first().cloned())
                .ok_or_else(|| Error::Definition("no [coalgebra] section".into()))?,
        };
        self.coalgebras
            .get(&n)
            .ok_or_else(|| Error::Definition(format!("no coalgebra named `{n}`")))
    }
}

fn parse_algebra(s: &Section) -> Result<AlgebraSignature> {
    let mut gens = None;
    let mut inv: Option<String> = None;
    for e in &s.entries {
        match e.key.as_str() {
            "generators" => gens = Some(list(&e.value)),
            "invertible" => inv = Some(e.value.clone()),
            other => return Err(def_err(e.line, format!("unknown [algebra] key `{other}`"))),
        }
    }
    let gens = gens.ok_or_else(|| def_err(s.line, "[algebra] needs `generators`"))?;
    let invertible = match inv.as_deref().map(str::trim) {
        None | Some("none") | Some("") => vec![false; gens.len()],
        Some("all") => vec![true; gens.len()],
        Some(v) => {
            let names = list(v);
            for n in &names {
                if !gens.contains(n) {
                    return Err(Error::UnknownIdentifier(n.clone()));
                }
            }
            gens.iter().map(|g| names.contains(g)).collect()
        }
    };
    AlgebraSignature::new(gens, invertible)
}

fn generator(sig: &AlgebraSignature, name: &str, line: usize) -> Result<usize> {
    sig.index_of(name)
        .ok_or_else(|| def_err(line, Error::UnknownIdentifier(name.to_string())))
}

fn parse_bracket(sig: &Arc<AlgebraSignature>, s: &Section) -> Result<BracketDef> {
    let mut table = BTreeMap::new();
    for e in &s.entries {
        let pair = list(&e.key);
        if pair.len() != 2 {
            return Err(def_err(e.line, "bracket keys are `x, y` generator pairs"));
        }
        let x = generator(sig, &pair[0], e.line)?;
        let y = generator(sig, &pair[1], e.line)?;
        let t = parse_tensor(&e.value, sig).map_err(|r| at(e, r))?;
        if table.insert((x, y), t).is_some() {
            return Err(def_err(e.line, format!("duplicate entry for ({}, {})", pair[0], pair[1])));
        }
    }
    BracketDef::new(sig, table).map_err(|r| def_err(s.line, r))
}

fn parse_field(sig: &Arc<AlgebraSignature>, s: &Section) -> Result<VectorField> {
    let mut table = BTreeMap::new();
    for e in &s.entries {
        let g = generator(sig, &e.key, e.line)?;
        let t = parse_tensor(&e.value, sig).map_err(|r| at(e, r))?;
        if table.insert(g, t).is_some() {
            return Err(def_err(e.line, format!("duplicate entry for `{}`", e.key)));
        }
    }
    VectorField::new(sig, table).map_err(|r| def_err(s.line, r))
}

fn parse_lax(sig: &Arc<AlgebraSignature>, s: &Section) -> Result<LaxPair> {
    let spectral = s
        .entries
        .iter()
        .find(|e| e.key == "spectral")
        .map_or("lambda".to_string(), |e| e.value.clone());
    let zero = || NCLaurent::zero(sig);
    let mut l = [[zero(), zero()], [zero(), zero()]];
    let mut m = [[zero(), zero()], [zero(), zero()]];
    for e in s.entries.iter().filter(|e| e.key != "spectral") {
        let parts: Vec<&str> = e.key.split_whitespace().collect();
        let idx = |p: &str| -> Result<usize> {
            match p {
                "1" => Ok(0),
                "2" => Ok(1),
                _ => Err(def_err(e.line, "Lax matrix indices are 1 or 2")),
            }
        };
        if parts.len() != 3 {
            return Err(def_err(e.line, "Lax keys look like `L 1 2`"));
        }
        let (i, j) = (idx(parts[1])?, idx(parts[2])?);
        let target = match parts[0] {
            "L" => &mut l,
            "M" => &mut m,
            other => return Err(def_err(e.line, format!("unknown Lax matrix `{other}`"))),
        };
        target[i][j] = parse_laurent(&e.value, sig, &spectral).map_err(|r| at(e, r))?;
    }
    Ok(LaxPair { l, m })
}

fn parse_coalgebra(s: &Section) -> Result<Coalgebra> {
    if let Some(e) = s.entries.iter().find(|e| e.key == "comatrix") {
        if s.entries.len() != 1 {
            return Err(def_err(e.line, "`comatrix` cannot be combined with explicit data"));
        }
        let n: usize = e
            .value
            .parse()
            .map_err(|_| def_err(e.line, "`comatrix` takes a positive integer"))?;
        return comatrix_coalgebra(n).map_err(|r| def_err(e.line, r));
    }
    let basis_entry = s
        .entries
        .iter()
        .find(|e| e.key == "basis")
        .ok_or_else(|| def_err(s.line, "[coalgebra] needs `basis` or `comatrix`"))?;
    let labels = list(&basis_entry.value);
    let d = labels.len();
    // Basis labels act as free generators when parsing Δ.
    let lsig = Arc::new(AlgebraSignature::new(labels.clone(), vec![false; d]).map_err(|r| def_err(basis_entry.line, r))?);
    let idx = |name: &str, line: usize| generator(&lsig, name, line);
    let mut delta = vec![Tensor2::new(); d];
    let mut eps = vec![Rat::zero(); d];
    let mut tau = vec![Rat::zero(); d];
    let mut nu = vec![vec![Rat::zero(); d]; d];
    let vector = |e: &Entry| -> Result<Vec<Rat>> {
        let vals: Result<Vec<Rat>> = list(&e.value)
            .iter()
            .map(|v| v.parse().map_err(|_| def_err(e.line, format!("invalid rational `{v}`"))))
            .collect();
        let vals = vals?;
        if vals.len() != d {
            return Err(def_err(e.line, format!("expected {d} values")));
        }
        Ok(vals)
    };
    for e in &s.entries {
        let parts: Vec<&str> = e.key.split_whitespace().collect();
        match parts.as_slice() {
            ["basis"] => {}
            ["eps"] => eps = vector(e)?,
            ["tau"] => tau = vector(e)?,
            ["delta", a] => {
                let a = idx(a, e.line)?;
                let t = parse_tensor(&e.value, &lsig).map_err(|r| at(e, r))?;
                for ((l, r), c) in t.terms() {
                    if l.len() != 1 || r.len() != 1 {
                        return Err(def_err(e.line, "coproduct terms must be tensors of basis labels"));
                    }
                    delta[a].insert((l.letters()[0].generator(), r.letters()[0].generator()), c.clone());
                }
            }
            ["nu", a, b] => {
                let (a, b) = (idx(a, e.line)?, idx(b, e.line)?);
                nu[a][b] = e
                    .value
                    .parse()
                    .map_err(|_| def_err(e.line, format!("invalid rational `{}`", e.value)))?;
            }
            _ => return Err(def_err(e.line, format!("unknown [coalgebra] key `{}`", e.key))),
        }
    }
    Coalgebra::new(labels, delta, eps, nu, tau).map_err(|r| def_err(s.line, r))
}
