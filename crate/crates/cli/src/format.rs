//! JSON file formats. Coefficients are strings `"p/q"` or `"n"`; JSON numbers
//! are rejected so that every value is exact.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use superext::cohomology::Cochain2;
use superext::linalg::Matrix;
use superext::superalg::{GradedLinearMap, LieSuperalgebra, ModuleAction, SuperBasis};
use superext::{Algebra, Extension, Module, Rat};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub parity: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub basis: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub g: String,
    pub m: String,
    pub value: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Value>,
    pub space: Vec<BasisEntry>,
    #[serde(default)]
    pub action: Vec<ActionEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub algebra: Value,
    pub ideal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub domain: String,
    pub codomain: String,
    #[serde(default)]
    pub entries: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesFile {
    #[serde(default)]
    pub a_maps: Vec<MapFile>,
    #[serde(default)]
    pub g_maps: Vec<MapFile>,
}

/// File kinds recognised by `validate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Module,
    Extension,
    Map,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Module => "module",
            Kind::Extension => "extension",
            Kind::Map => "map",
        }
    }
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

/// Parses `"n"`, `"p/q"`, with `-` or U+2212 as the minus sign.
pub fn parse_rational(s: &str) -> Result<Rat, CliError> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || parse_err(format!("bad rational {s:?}"));
    let int = |x: &str| -> Result<BigInt, CliError> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(int(&t)?)),
        Some((n, d)) => {
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(parse_err(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(int(n)?, d))
        }
    }
}

pub fn format_rational(x: &Rat) -> String {
    x.to_string()
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

pub fn detect_kind(v: &Value) -> Result<Kind, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("top level must be an object"))?;
    if obj.contains_key("ideal") {
        Ok(Kind::Extension)
    } else if obj.contains_key("space") {
        Ok(Kind::Module)
    } else if obj.contains_key("entries") || obj.contains_key("domain") {
        Ok(Kind::Map)
    } else if obj.contains_key("basis") {
        Ok(Kind::Algebra)
    } else {
        Err(parse_err("cannot tell what kind of file this is"))
    }
}

pub(crate) fn from_value<T: for<'de> Deserialize<'de>>(
    v: Value,
    what: &str,
) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| parse_err(format!("{what}: {e}")))
}

fn basis_of(entries: &[BasisEntry]) -> Result<SuperBasis, CliError> {
    SuperBasis::new(entries.iter().map(|b| (b.name.clone(), b.parity)))
        .map_err(|e| parse_err(e.to_string()))
}

fn vector(terms: &[Term], basis: &SuperBasis, what: &str) -> Result<Vec<Rat>, CliError> {
    let mut v = vec![Rat::from_integer(0.into()); basis.len()];
    let mut seen = HashSet::new();
    for t in terms {
        let k = basis
            .index_of(&t.basis)
            .ok_or_else(|| parse_err(format!("{what}: unknown basis element {:?}", t.basis)))?;
        if !seen.insert(k) {
            return Err(parse_err(format!("{what}: {:?} listed twice", t.basis)));
        }
        v[k] = parse_rational(&t.coeff)?;
    }
    Ok(v)
}

pub fn algebra_from_file(f: &AlgebraFile) -> Result<Algebra, CliError> {
    let basis = basis_of(&f.basis)?;
    let mut brackets = Vec::with_capacity(f.brackets.len());
    for b in &f.brackets {
        let idx = |n: &str| {
            basis
                .index_of(n)
                .ok_or_else(|| parse_err(format!("bracket: unknown basis element {n:?}")))
        };
        let (i, j) = (idx(&b.left)?, idx(&b.right)?);
        brackets.push((
            i,
            j,
            vector(&b.value, &basis, &format!("[{}, {}]", b.left, b.right))?,
        ));
    }
    LieSuperalgebra::from_brackets(f.name.clone(), basis, &brackets)
        .map_err(|e| parse_err(e.to_string()))
}

/// One orientation per pair (`i < j`, plus `i = j` for odd `i`), nonzero terms only.
pub fn algebra_to_file(g: &Algebra) -> AlgebraFile {
    let b = g.basis();
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in i..g.dim() {
            if i == j && b.parity(i) == 0 {
                continue;
            }
            let value = terms(g.bracket_basis(i, j), b);
            if !value.is_empty() {
                brackets.push(BracketEntry {
                    left: b.name(i).into(),
                    right: b.name(j).into(),
                    value,
                });
            }
        }
    }
    AlgebraFile {
        name: g.name().into(),
        basis: basis_entries(b),
        brackets,
    }
}

pub fn basis_entries(b: &SuperBasis) -> Vec<BasisEntry> {
    (0..b.len())
        .map(|i| BasisEntry {
            name: b.name(i).into(),
            parity: b.parity(i),
        })
        .collect()
}

pub fn terms(v: &[Rat], b: &SuperBasis) -> Vec<Term> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| **x != Rat::from_integer(0.into()))
        .map(|(k, x)| Term {
            basis: b.name(k).into(),
            coeff: format_rational(x),
        })
        .collect()
}

/// Resolves an "inline or path" reference relative to the referencing file.
pub(crate) fn resolve(v: &Value, base: &Path) -> Result<(Value, PathBuf), CliError> {
    match v {
        Value::String(p) => {
            let path = base.join(p);
            Ok((
                read_json(&path)?,
                path.parent().map(Path::to_path_buf).unwrap_or_default(),
            ))
        }
        Value::Object(_) => Ok((v.clone(), base.to_path_buf())),
        _ => Err(parse_err("algebra must be an object or a path")),
    }
}

pub(crate) fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn load_algebra_value(v: Value) -> Result<Algebra, CliError> {
    algebra_from_file(&from_value::<AlgebraFile>(v, "algebra")?)
}

pub fn load_algebra(path: &Path) -> Result<Algebra, CliError> {
    load_algebra_value(read_json(path)?)
}

/// Module over `given` if supplied, otherwise over its own `algebra` field.
pub fn load_module_value(
    v: Value,
    base: &Path,
    given: Option<&Algebra>,
) -> Result<Module, CliError> {
    let f: ModuleFile = from_value(v, "module")?;
    let algebra = match (&f.algebra, given) {
        (Some(a), given) => {
            let (av, _) = resolve(a, base)?;
            let own = load_algebra_value(av)?;
            if let Some(g) = given {
                if g.basis() != own.basis() || g.structure() != own.structure() {
                    return Err(CliError::Semantic("module algebra does not match g".into()));
                }
            }
            own
        }
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(parse_err("module needs an algebra")),
    };
    let space = basis_of(&f.space)?;
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for a in &f.action {
        let i = algebra
            .basis()
            .index_of(&a.g)
            .ok_or_else(|| parse_err(format!("action: unknown algebra element {:?}", a.g)))?;
        let m = space
            .index_of(&a.m)
            .ok_or_else(|| parse_err(format!("action: unknown module element {:?}", a.m)))?;
        if !seen.insert((i, m)) {
            return Err(parse_err(format!("action {}.{} listed twice", a.g, a.m)));
        }
        entries.push((i, m, vector(&a.value, &space, &format!("{}.{}", a.g, a.m))?));
    }
    ModuleAction::from_entries(algebra, space, &entries).map_err(|e| parse_err(e.to_string()))
}

pub fn load_module(path: &Path, given: Option<&Algebra>) -> Result<Module, CliError> {
    load_module_value(read_json(path)?, &dir_of(path), given)
}

pub fn module_to_file(m: &Module) -> ModuleFile {
    let (g, sp) = (m.algebra(), m.space());
    let mut action = Vec::new();
    for i in 0..g.dim() {
        for k in 0..sp.len() {
            let value = terms(m.act_basis(i, k), sp);
            if !value.is_empty() {
                action.push(ActionEntry {
                    g: g.basis().name(i).into(),
                    m: sp.name(k).into(),
                    value,
                });
            }
        }
    }
    ModuleFile {
        algebra: Some(serde_json::to_value(algebra_to_file(g)).expect("serializable")),
        space: basis_entries(sp),
        action,
    }
}

/// Builds the extension, mapping structural failures to semantic errors.
pub fn load_extension_value(v: Value, base: &Path) -> Result<Extension, CliError> {
    let f: ExtensionFile = from_value(v, "extension")?;
    let (av, _) = resolve(&f.algebra, base)?;
    let e = load_algebra_value(av)?;
    let mut ideal = Vec::with_capacity(f.ideal.len());
    for n in &f.ideal {
        let i = e
            .basis()
            .index_of(n)
            .ok_or_else(|| parse_err(format!("ideal: unknown basis element {n:?}")))?;
        if ideal.contains(&i) {
            return Err(parse_err(format!("ideal: {n:?} listed twice")));
        }
        ideal.push(i);
    }
    Extension::build(&e, &ideal).map_err(CliError::from)
}

pub fn load_extension(path: &Path) -> Result<Extension, CliError> {
    load_extension_value(read_json(path)?, &dir_of(path))
}

fn space_named<'a>(ext: &'a Extension, name: &str) -> Result<&'a SuperBasis, CliError> {
    match name {
        "a" => Ok(ext.module().space()),
        "g" => Ok(ext.g().basis()),
        n if n == "e" || n == ext.e().name() => Ok(ext.e().basis()),
        other => Err(parse_err(format!(
            "unknown space {other:?}; expected \"e\", \"a\" or \"g\""
        ))),
    }
}

pub fn map_from_file(f: &MapFile, ext: &Extension) -> Result<GradedLinearMap<Rat>, CliError> {
    let dom = space_named(ext, &f.domain)?.clone();
    let cod = space_named(ext, &f.codomain)?.clone();
    let mut m = Matrix::zeros(cod.len(), dom.len());
    let mut seen = HashSet::new();
    for e in &f.entries {
        let c = dom
            .index_of(&e.from)
            .ok_or_else(|| parse_err(format!("map: {:?} is not in {}", e.from, f.domain)))?;
        let r = cod
            .index_of(&e.to)
            .ok_or_else(|| parse_err(format!("map: {:?} is not in {}", e.to, f.codomain)))?;
        if !seen.insert((r, c)) {
            return Err(parse_err(format!(
                "map entry {} -> {} listed twice",
                e.from, e.to
            )));
        }
        m[(r, c)] = parse_rational(&e.coeff)?;
    }
    GradedLinearMap::new(dom, cod, m).map_err(|e| parse_err(e.to_string()))
}

pub fn load_map(path: &Path, ext: &Extension) -> Result<GradedLinearMap<Rat>, CliError> {
    map_from_file(&from_value(read_json(path)?, "map")?, ext)
}

pub fn map_to_file(m: &GradedLinearMap<Rat>, domain: &str, codomain: &str) -> MapFile {
    let mut entries = Vec::new();
    for c in 0..m.domain().len() {
        for r in 0..m.codomain().len() {
            let x = &m.matrix()[(r, c)];
            if *x != Rat::from_integer(0.into()) {
                entries.push(MapEntry {
                    from: m.domain().name(c).into(),
                    to: m.codomain().name(r).into(),
                    coeff: format_rational(x),
                });
            }
        }
    }
    MapFile {
        domain: domain.into(),
        codomain: codomain.into(),
        entries,
    }
}

pub fn load_samples(
    path: &Path,
    ext: &Extension,
) -> Result<superext::sequences::Samples<Rat>, CliError> {
    let f: SamplesFile = from_value(read_json(path)?, "samples")?;
    Ok(superext::sequences::Samples {
        a_maps: f
            .a_maps
            .iter()
            .map(|m| map_from_file(m, ext))
            .collect::<Result<_, _>>()?,
        g_maps: f
            .g_maps
            .iter()
            .map(|m| map_from_file(m, ext))
            .collect::<Result<_, _>>()?,
    })
}

/// A 2-cochain as bracket-style entries on one orientation per pair.
pub fn cochain_entries(c: &Cochain2<Rat>) -> Vec<BracketEntry> {
    let (src, dst) = (c.layout().src(), c.layout().dst());
    let mut out = Vec::new();
    for i in 0..src.len() {
        for j in i..src.len() {
            if i == j && src.parity(i) == 0 {
                continue;
            }
            let value = terms(&c.get(i, j), dst);
            if !value.is_empty() {
                out.push(BracketEntry {
                    left: src.name(i).into(),
                    right: src.name(j).into(),
                    value,
                });
            }
        }
    }
    out
}
