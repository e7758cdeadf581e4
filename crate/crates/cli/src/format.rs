//! Presentation files (`.ring`), ring-map files (`.map`) and their JSON mirror.
//!
//! Both text formats are line oriented: `key: value`, with `#` comments and
//! blank lines ignored. See `docs/format.md` for the grammar.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use noulrich_core::checker::{SectionRingCertificate, UnitCertificate};
use noulrich_core::{
    parse_polynomial, AlgebraError, CoefficientField, MonomialOrder, PolyRing, Polynomial, RingPresentation,
    VariableTable,
};
use serde::Deserialize;

use crate::error::CliError;

/// Where a value came from, for error messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column (in characters).
    Text { line: usize, column: usize },
    /// JSON pointer-like path into a JSON document.
    Json(String),
}

impl Location {
    fn shifted(&self, chars: usize) -> Location {
        match self {
            Location::Text { line, column } => Location::Text {
                line: *line,
                column: column + chars,
            },
            Location::Json(p) => Location::Json(p.clone()),
        }
    }
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Text { line, column } => write!(f, "line {line}, column {column}"),
            Location::Json(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub text: String,
    pub at: Location,
}

impl Spanned {
    fn json(text: impl Into<String>, path: String) -> Self {
        Spanned {
            text: text.into(),
            at: Location::Json(path),
        }
    }

    /// Location of the byte `offset` inside `text`.
    fn at_offset(&self, offset: usize) -> Location {
        let chars = self.text.get(..offset).map_or(0, |s| s.chars().count());
        self.at.shifted(chars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Grevlex,
    Eliminate(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSpec {
    pub numerator: Spanned,
    pub power: u32,
    pub inverse: Spanned,
    pub inverse_power: u32,
}

/// Syntactic content of a presentation file, before any algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub field: CoefficientField,
    pub vars: Vec<(String, u32)>,
    pub order: OrderSpec,
    pub relations: Vec<Spanned>,
    pub params: Vec<Spanned>,
    pub units: Vec<UnitSpec>,
    pub gens: Vec<Spanned>,
}

/// A presentation together with the optional certificates it carries.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub presentation: RingPresentation,
    pub params: Vec<Polynomial>,
    pub units: Vec<UnitCertificate>,
    pub gens: Vec<Polynomial>,
}

impl Loaded {
    pub fn section_certificate(&self) -> Option<SectionRingCertificate> {
        if self.params.is_empty() || self.units.is_empty() {
            return None;
        }
        Some(SectionRingCertificate {
            params: self.params.clone(),
            unit_certs: self.units.clone(),
        })
    }

    pub fn module_gens(&self) -> Option<Vec<Polynomial>> {
        (!self.gens.is_empty()).then(|| self.gens.clone())
    }

    /// Canonical text form: fixed key order, normalized polynomials.
    pub fn canonical(&self) -> String {
        let ring = self.presentation.ring();
        let mut out = String::new();
        writeln!(out, "field: {}", field_text(ring.field())).unwrap();
        let vars: Vec<String> = ring.vars().iter().map(|v| format!("{}:{}", v.name, v.weight)).collect();
        writeln!(out, "vars: {}", vars.join(", ")).unwrap();
        if let MonomialOrder::Block { eliminated, .. } = ring.order() {
            let names: Vec<&str> = eliminated.iter().map(|&i| ring.vars().name(i)).collect();
            writeln!(out, "order: eliminate {}", names.join(", ")).unwrap();
        }
        for r in self.presentation.relations() {
            writeln!(out, "relation: {r}").unwrap();
        }
        if !self.params.is_empty() {
            writeln!(out, "params: {}", join(&self.params)).unwrap();
        }
        for u in &self.units {
            writeln!(
                out,
                "unit: numerator = {}, power = {}, inverse = {}, inverse_power = {}",
                u.numerator, u.denominator_power, u.inverse_numerator, u.inverse_power
            )
            .unwrap();
        }
        if !self.gens.is_empty() {
            writeln!(out, "gens: {}", join(&self.gens)).unwrap();
        }
        out
    }
}

fn join(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn field_text(f: CoefficientField) -> String {
    match f {
        CoefficientField::Rationals => "QQ".into(),
        CoefficientField::PrimeField(p) => format!("GF({p})"),
    }
}

struct Entry {
    key: String,
    key_at: Location,
    value: Spanned,
}

fn format_err(path: &Path, at: &Location, message: impl Into<String>) -> CliError {
    CliError::Format {
        path: path.display().to_string(),
        at: at.to_string(),
        message: message.into(),
    }
}

fn lex(path: &Path, text: &str, keys: &[&str]) -> Result<Vec<Entry>, CliError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let key_at = Location::Text {
            line,
            column: raw[..indent].chars().count() + 1,
        };
        let Some(colon) = trimmed.find(':') else {
            return Err(format_err(path, &key_at, "expected `key: value`"));
        };
        let key = trimmed[..colon].trim_end();
        if !keys.contains(&key) {
            return Err(format_err(
                path,
                &key_at,
                format!("unknown key `{key}` (expected one of: {})", keys.join(", ")),
            ));
        }
        let after = indent + colon + 1;
        let rest = &raw[after..];
        let lead = rest.len() - rest.trim_start().len();
        let start = after + lead;
        let value = raw[start..].trim_end();
        entries.push(Entry {
            key: key.to_string(),
            key_at,
            value: Spanned {
                text: value.to_string(),
                at: Location::Text {
                    line,
                    column: raw[..start].chars().count() + 1,
                },
            },
        });
    }
    Ok(entries)
}

/// Split a value on commas, keeping each piece's location.
fn split_list(v: &Spanned) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in v.text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let text = piece.trim();
        if !text.is_empty() {
            out.push(Spanned {
                text: text.to_string(),
                at: v.at_offset(offset + lead),
            });
        }
        offset += piece.len() + 1;
    }
    out
}

fn parse_field(path: &Path, v: &Spanned) -> Result<CoefficientField, CliError> {
    let t = v.text.trim();
    if t == "QQ" {
        return Ok(CoefficientField::Rationals);
    }
    let p = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|n| n.trim().parse::<u64>().ok())
        .ok_or_else(|| format_err(path, &v.at, format!("field must be `QQ` or `GF(p)`, got `{t}`")))?;
    CoefficientField::prime(p).map_err(|e| format_err(path, &v.at, e.to_string()))
}

fn parse_vars(path: &Path, v: &Spanned) -> Result<Vec<(String, u32)>, CliError> {
    let mut out = Vec::new();
    for item in split_list(v) {
        let (name, weight) = match item.text.split_once(':') {
            Some((n, w)) => {
                let w = w
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| format_err(path, &item.at, format!("bad weight in `{}`", item.text)))?;
                (n.trim().to_string(), w)
            }
            None => (item.text.clone(), 1),
        };
        out.push((name, weight));
    }
    if out.is_empty() {
        return Err(format_err(path, &v.at, "no variables declared"));
    }
    Ok(out)
}

fn parse_order(path: &Path, v: &Spanned) -> Result<OrderSpec, CliError> {
    let t = v.text.trim();
    if t == "grevlex" {
        return Ok(OrderSpec::Grevlex);
    }
    if let Some(rest) = t.strip_prefix("eliminate") {
        let names: Vec<String> = rest
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        if !names.is_empty() {
            return Ok(OrderSpec::Eliminate(names));
        }
    }
    Err(format_err(path, &v.at, "order must be `grevlex` or `eliminate v1, v2, ...`"))
}

fn parse_unit(path: &Path, v: &Spanned) -> Result<UnitSpec, CliError> {
    let mut fields: BTreeMap<&str, Spanned> = BTreeMap::new();
    for item in split_list(v) {
        let Some((k, val)) = item.text.split_once('=') else {
            return Err(format_err(path, &item.at, "expected `name = value`"));
        };
        let k = k.trim();
        let key = ["numerator", "power", "inverse", "inverse_power"]
            .into_iter()
            .find(|x| *x == k)
            .ok_or_else(|| format_err(path, &item.at, format!("unknown unit field `{k}`")))?;
        let lead = val.len() - val.trim_start().len();
        let spanned = Spanned {
            text: val.trim().to_string(),
            at: item.at_offset(item.text.len() - val.len() + lead),
        };
        if fields.insert(key, spanned).is_some() {
            return Err(format_err(path, &item.at, format!("unit field `{key}` given twice")));
        }
    }
    let mut take = |k: &str| {
        fields
            .remove(k)
            .ok_or_else(|| format_err(path, &v.at, format!("unit is missing `{k}`")))
    };
    let numerator = take("numerator")?;
    let power = take("power")?;
    let inverse = take("inverse")?;
    let inverse_power = take("inverse_power")?;
    let int = |s: &Spanned| {
        s.text
            .parse::<u32>()
            .map_err(|_| format_err(path, &s.at, format!("expected a non-negative integer, got `{}`", s.text)))
    };
    Ok(UnitSpec {
        power: int(&power)?,
        inverse_power: int(&inverse_power)?,
        numerator,
        inverse,
    })
}

const RING_KEYS: [&str; 7] = ["field", "vars", "order", "relation", "params", "unit", "gens"];

pub fn parse_ring_text(path: &Path, text: &str) -> Result<PresentationFile, CliError> {
    let entries = lex(path, text, &RING_KEYS)?;
    let mut seen: BTreeMap<String, Location> = BTreeMap::new();
    let mut file = PresentationFile {
        field: CoefficientField::Rationals,
        vars: Vec::new(),
        order: OrderSpec::Grevlex,
        relations: Vec::new(),
        params: Vec::new(),
        units: Vec::new(),
        gens: Vec::new(),
    };
    for e in entries {
        if !matches!(e.key.as_str(), "relation" | "unit") {
            if let Some(prev) = seen.insert(e.key.clone(), e.key_at.clone()) {
                return Err(format_err(path, &e.key_at, format!("`{}` already given at {prev}", e.key)));
            }
        }
        match e.key.as_str() {
            "field" => file.field = parse_field(path, &e.value)?,
            "vars" => file.vars = parse_vars(path, &e.value)?,
            "order" => file.order = parse_order(path, &e.value)?,
            "relation" => {
                if e.value.text.is_empty() {
                    return Err(format_err(path, &e.value.at, "empty relation"));
                }
                file.relations.push(e.value)
            }
            "params" => file.params = split_list(&e.value),
            "unit" => file.units.push(parse_unit(path, &e.value)?),
            "gens" => file.gens = split_list(&e.value),
            _ => unreachable!(),
        }
    }
    if !seen.contains_key("vars") {
        return Err(format_err(path, &Location::Text { line: 1, column: 1 }, "missing `vars`"));
    }
    Ok(file)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonVar {
    name: String,
    #[serde(default = "one")]
    weight: u32,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonUnit {
    numerator: String,
    power: u32,
    inverse: String,
    inverse_power: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPresentation {
    #[serde(default)]
    field: Option<String>,
    vars: Vec<JsonVar>,
    #[serde(default)]
    order: Option<String>,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    units: Vec<JsonUnit>,
    #[serde(default)]
    gens: Vec<String>,
}

pub fn parse_ring_json(path: &Path, text: &str) -> Result<PresentationFile, CliError> {
    let j: JsonPresentation = serde_json::from_str(text).map_err(|e| {
        format_err(
            path,
            &Location::Text {
                line: e.line(),
                column: e.column(),
            },
            e.to_string(),
        )
    })?;
    let field = match j.field {
        Some(f) => parse_field(path, &Spanned::json(f, "/field".into()))?,
        None => CoefficientField::Rationals,
    };
    let order = match j.order {
        Some(o) => parse_order(path, &Spanned::json(o, "/order".into()))?,
        None => OrderSpec::Grevlex,
    };
    let list = |v: Vec<String>, key: &str| -> Vec<Spanned> {
        v.into_iter()
            .enumerate()
            .map(|(i, t)| Spanned::json(t, format!("/{key}/{i}")))
            .collect()
    };
    if j.vars.is_empty() {
        return Err(format_err(path, &Location::Json("/vars".into()), "no variables declared"));
    }
    Ok(PresentationFile {
        field,
        vars: j.vars.into_iter().map(|v| (v.name, v.weight)).collect(),
        order,
        relations: list(j.relations, "relations"),
        params: list(j.params, "params"),
        units: j
            .units
            .into_iter()
            .enumerate()
            .map(|(i, u)| UnitSpec {
                numerator: Spanned::json(u.numerator, format!("/units/{i}/numerator")),
                power: u.power,
                inverse: Spanned::json(u.inverse, format!("/units/{i}/inverse")),
                inverse_power: u.inverse_power,
            })
            .collect(),
        gens: list(j.gens, "gens"),
    })
}

fn is_json(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{')
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|e| CliError::Format {
        path: path.display().to_string(),
        at: format!("byte {}", e.utf8_error().valid_up_to()),
        message: "file is not valid UTF-8".into(),
    })
}

/// Map an algebra error raised while parsing `s` to a positioned format error.
fn poly_err(path: &Path, s: &Spanned, e: AlgebraError) -> CliError {
    let at = match &e {
        AlgebraError::Parse(p) => s.at_offset(p.offset),
        AlgebraError::UnknownVariable { offset, .. } => s.at_offset(*offset),
        _ => s.at.clone(),
    };
    format_err(path, &at, e.to_string())
}

fn build_ring(path: &Path, file: &PresentationFile) -> Result<Arc<PolyRing>, CliError> {
    let at = Location::Text { line: 1, column: 1 };
    let vars = VariableTable::new(file.vars.iter().cloned()).map_err(|e| format_err(path, &at, e.to_string()))?;
    let order = match &file.order {
        OrderSpec::Grevlex => MonomialOrder::WeightedGrevlex,
        OrderSpec::Eliminate(names) => {
            let mut idx = Vec::new();
            for n in names {
                idx.push(
                    vars.index_of(n)
                        .ok_or_else(|| format_err(path, &at, format!("order names unknown variable `{n}`")))?,
                );
            }
            MonomialOrder::eliminating(idx)
        }
    };
    PolyRing::with_order(vars, file.field, order).map_err(|e| format_err(path, &at, e.to_string()))
}

/// Turn the syntactic file into algebra. Non-homogeneous relations are
/// reported at their own line with the degrees they mix.
pub fn realize(path: &Path, file: &PresentationFile) -> Result<Loaded, CliError> {
    let ring = build_ring(path, file)?;
    let parse = |s: &Spanned| parse_polynomial(&s.text, &ring).map_err(|e| poly_err(path, s, e));
    let mut relations = Vec::new();
    for s in &file.relations {
        let p = parse(s)?;
        if !p.is_homogeneous() {
            return Err(format_err(
                path,
                &s.at,
                format!("relation `{}` is not homogeneous: it mixes degrees {:?}", s.text, p.degrees()),
            ));
        }
        relations.push(p);
    }
    let presentation = RingPresentation::new(&ring, relations).map_err(|e| {
        let at = file.relations.first().map_or(Location::Text { line: 1, column: 1 }, |s| s.at.clone());
        format_err(path, &at, e.to_string())
    })?;
    let params = file.params.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
    let gens = file.gens.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
    let mut units = Vec::new();
    for u in &file.units {
        units.push(UnitCertificate {
            numerator: parse(&u.numerator)?,
            denominator_power: u.power,
            inverse_numerator: parse(&u.inverse)?,
            inverse_power: u.inverse_power,
        });
    }
    Ok(Loaded {
        presentation,
        params,
        units,
        gens,
    })
}

pub fn parse_presentation(path: &Path, text: &str) -> Result<Loaded, CliError> {
    let file = if is_json(path, text) {
        parse_ring_json(path, text)?
    } else {
        parse_ring_text(path, text)?
    };
    realize(path, &file)
}

pub fn load_presentation(path: &Path) -> Result<Loaded, CliError> {
    let text = read_text(path)?;
    parse_presentation(path, &text)
}

/// A ring map `source -> target` with optional expected kernel generators.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: Arc<PolyRing>,
    pub target: Arc<PolyRing>,
    pub images: BTreeMap<String, Polynomial>,
    pub expect: Vec<Polynomial>,
    pub contains: Vec<Polynomial>,
}

const MAP_KEYS: [&str; 6] = ["field", "source", "target", "image", "expect", "contains"];

pub fn parse_map(path: &Path, text: &str) -> Result<RingMap, CliError> {
    let entries = lex(path, text, &MAP_KEYS)?;
    let mut field = CoefficientField::Rationals;
    let mut source = None;
    let mut target = None;
    let mut images = Vec::new();
    let mut expect = Vec::new();
    let mut contains = Vec::new();
    let mut seen: BTreeMap<String, Location> = BTreeMap::new();
    for e in entries {
        if matches!(e.key.as_str(), "field" | "source" | "target") {
            if let Some(prev) = seen.insert(e.key.clone(), e.key_at.clone()) {
                return Err(format_err(path, &e.key_at, format!("`{}` already given at {prev}", e.key)));
            }
        }
        match e.key.as_str() {
            "field" => field = parse_field(path, &e.value)?,
            "source" => source = Some((parse_vars(path, &e.value)?, e.value.at.clone())),
            "target" => target = Some((parse_vars(path, &e.value)?, e.value.at.clone())),
            "image" => images.push(e.value),
            "expect" => expect.push(e.value),
            "contains" => contains.push(e.value),
            _ => unreachable!(),
        }
    }
    let start = Location::Text { line: 1, column: 1 };
    let make = |spec: Option<(Vec<(String, u32)>, Location)>, what: &str| {
        let (vars, at) = spec.ok_or_else(|| format_err(path, &start, format!("missing `{what}`")))?;
        let table = VariableTable::new(vars).map_err(|e| format_err(path, &at, e.to_string()))?;
        PolyRing::new(table, field).map_err(|e| format_err(path, &at, e.to_string()))
    };
    let source = make(source, "source")?;
    let target = make(target, "target")?;
    let mut map = BTreeMap::new();
    for s in images {
        let Some(eq) = s.text.find('=') else {
            return Err(format_err(path, &s.at, "expected `variable = image`"));
        };
        let name = s.text[..eq].trim().to_string();
        if source.vars().index_of(&name).is_none() {
            return Err(format_err(path, &s.at, format!("`{name}` is not a source variable")));
        }
        let rhs = &s.text[eq + 1..];
        let lead = rhs.len() - rhs.trim_start().len();
        let img = Spanned {
            text: rhs.trim().to_string(),
            at: s.at_offset(eq + 1 + lead),
        };
        let p = parse_polynomial(&img.text, &target).map_err(|e| poly_err(path, &img, e))?;
        if map.insert(name.clone(), p).is_some() {
            return Err(format_err(path, &s.at, format!("image of `{name}` given twice")));
        }
    }
    let parse_all = |v: Vec<Spanned>| {
        v.iter()
            .map(|s| parse_polynomial(&s.text, &source).map_err(|e| poly_err(path, s, e)))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(RingMap {
        expect: parse_all(expect)?,
        contains: parse_all(contains)?,
        source,
        target,
        images: map,
    })
}

pub fn load_map(path: &Path) -> Result<RingMap, CliError> {
    let text = read_text(path)?;
    parse_map(path, &text)
}
