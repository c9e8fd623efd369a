use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use superext::cohomology::{
    derivation_space, even_layout, h1_even, h2_even, inner_derivations, Cochain2,
};
use superext::linalg::QuotientPresentation;
use superext::sequences::{self, Samples};
use superext::superalg::semidirect_product;
use superext::{Extension, Module, Rat};

use crate::format::{self, Kind};
use crate::{CliError, Outcome};

fn to_json<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("reports are serializable")
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(format::format_rational).collect()
}

/// Checks a file of any kind, detected from its keys.
pub fn validate(path: &Path) -> Result<Outcome, CliError> {
    let v = format::read_json(path)?;
    let kind = format::detect_kind(&v)?;
    let base = format::dir_of(path);
    let violated = |kind: Kind, violation: Value, summary: String| Outcome {
        code: 2,
        report: json!({"kind": kind.name(), "ok": false, "violation": violation}),
        summary,
    };
    match kind {
        Kind::Algebra => {
            let g = format::load_algebra_value(v)?;
            Ok(match g.validate() {
                Ok(()) => Outcome::ok(
                    json!({"kind": "algebra", "ok": true, "name": g.name(), "dim": g.dim()}),
                    format!(
                        "{}: valid Lie superalgebra of dimension {}",
                        g.name(),
                        g.dim()
                    ),
                ),
                Err(x) => violated(kind, to_json(&x), format!("{}: {x}", g.name())),
            })
        }
        Kind::Module => {
            let m = format::load_module_value(v, &base, None)?;
            if let Err(x) = m.algebra().validate() {
                return Ok(violated(kind, to_json(&x), format!("algebra: {x}")));
            }
            Ok(match m.validate() {
                Ok(()) => Outcome::ok(
                    json!({"kind": "module", "ok": true, "algebra": m.algebra().name(), "dim": m.dim()}),
                    format!(
                        "valid module of dimension {} over {}",
                        m.dim(),
                        m.algebra().name()
                    ),
                ),
                Err(x) => violated(kind, to_json(&x), format!("module: {x}")),
            })
        }
        Kind::Extension => {
            let f: format::ExtensionFile = format::from_value(v.clone(), "extension")?;
            let (av, _) = format::resolve(&f.algebra, &base)?;
            let e = format::load_algebra_value(av)?;
            if let Err(x) = e.validate() {
                return Ok(violated(kind, to_json(&x), format!("{}: {x}", e.name())));
            }
            let ext = match format::load_extension_value(v, &base) {
                Ok(ext) => ext,
                Err(CliError::Semantic(m)) => {
                    return Ok(Outcome {
                        code: 2,
                        report: json!({"kind": "extension", "ok": false, "error": m}),
                        summary: m,
                    })
                }
                Err(other) => return Err(other),
            };
            Ok(Outcome::ok(
                json!({
                    "kind": "extension",
                    "ok": true,
                    "dim_e": ext.e().dim(),
                    "dim_a": ext.module().dim(),
                    "dim_g": ext.g().dim(),
                    "split": ext.is_split(),
                    "central": ext.is_central(),
                }),
                format!(
                    "valid abelian extension, dim a = {}, dim g = {}",
                    ext.module().dim(),
                    ext.g().dim()
                ),
            ))
        }
        Kind::Map => {
            let f: format::MapFile = format::from_value(v, "map")?;
            for e in &f.entries {
                format::parse_rational(&e.coeff)?;
            }
            Ok(Outcome::ok(
                json!({"kind": "map", "ok": true, "domain": f.domain, "codomain": f.codomain, "entries": f.entries.len()}),
                format!(
                    "map {} -> {} with {} entries",
                    f.domain,
                    f.codomain,
                    f.entries.len()
                ),
            ))
        }
    }
}

enum Target {
    Ext(Box<Extension>),
    Module(Module),
}

fn load_target(path: &Path) -> Result<Target, CliError> {
    let v = format::read_json(path)?;
    match format::detect_kind(&v)? {
        Kind::Extension => Ok(Target::Ext(Box::new(format::load_extension_value(
            v,
            &format::dir_of(path),
        )?))),
        Kind::Module => {
            let m = format::load_module_value(v, &format::dir_of(path), None)?;
            m.algebra()
                .validate()
                .map_err(superext::Error::InvalidAlgebra)?;
            m.validate().map_err(superext::Error::InvalidModule)?;
            Ok(Target::Module(m))
        }
        k => Err(CliError::Parse(format!(
            "expected an extension or module file, found a {} file",
            k.name()
        ))),
    }
}

fn h2_report(module: &Module, h2: &QuotientPresentation<Rat>) -> Value {
    let layout = even_layout(module);
    let complement: Vec<Value> = h2
        .complement()
        .iter()
        .map(|v| {
            let c = Cochain2::from_coords(layout.clone(), v.clone())
                .expect("complement vectors fit the even layout");
            to_json(&format::cochain_entries(&c))
        })
        .collect();
    json!({
        "degree": 2,
        "z2": h2.ambient().dim(),
        "b2": h2.sub().dim(),
        "h2": h2.dim(),
        "basis": complement,
    })
}

/// Even cohomology `H^1(g, a)_0` or `H^2(g, a)_0` of an extension or module file.
pub fn cohomology(path: &Path, degree: u8) -> Result<Outcome, CliError> {
    let target = load_target(path)?;
    let module = match &target {
        Target::Ext(ext) => ext.module(),
        Target::Module(m) => m,
    };
    match degree {
        1 => {
            let z1 = derivation_space(module)?.dim();
            let inner = inner_derivations(module)?.dim();
            let h1 = h1_even(module)?.dim();
            Ok(Outcome::ok(
                json!({"degree": 1, "z1": z1, "inner": inner, "h1": h1}),
                format!("dim Z1 = {z1}, dim Inn = {inner}, dim H1 = {h1}"),
            ))
        }
        2 => {
            let (mut report, summary) = match &target {
                Target::Ext(ext) => {
                    let h2 = ext.h2();
                    let mut r = h2_report(module, h2);
                    let class = ext.beta_class();
                    r["beta_class"] = json!(strs(class.coords()));
                    r["split"] = json!(class.is_zero());
                    let s = format!(
                        "dim H2 = {}, [beta] = ({})",
                        h2.dim(),
                        strs(class.coords()).join(", ")
                    );
                    (r, s)
                }
                Target::Module(m) => {
                    let h2 = h2_even(m)?;
                    (h2_report(m, &h2), format!("dim H2 = {}", h2.dim()))
                }
            };
            report["ok"] = json!(true);
            Ok(Outcome::ok(report, summary))
        }
        d => Err(CliError::Parse(format!("degree must be 1 or 2, got {d}"))),
    }
}

/// Extends `φ ∈ End_g(a)` to `Ψ(f)` for a derivation `f: e -> a`, or reports
/// the obstruction `d(φ)`.
pub fn extend(ext_path: &Path, map_path: &Path) -> Result<Outcome, CliError> {
    let ext = format::load_extension(ext_path)?;
    let phi = format::load_map(map_path, &ext)?;
    if phi.domain() != ext.module().space() || phi.codomain() != ext.module().space() {
        return Err(CliError::Semantic("expected a map from a to a".into()));
    }
    let flags_ok = ext.is_module_endomorphism(&phi);
    if !flags_ok {
        return Err(CliError::Semantic(
            superext::Error::NotMember {
                set: superext::extension::END_G_OF_A,
                reason: "not an even module endomorphism".into(),
            }
            .to_string(),
        ));
    }
    match ext.extend_endomorphism(&phi)? {
        Some(big) => {
            let f = ext.psi_inverse(&big)?;
            Ok(Outcome::ok(
                json!({
                    "ok": true,
                    "extends": true,
                    "witness": format::map_to_file(&big, "e", "e"),
                    "derivation": format::map_to_file(&f, "e", "a"),
                }),
                "extends: witness written to the report",
            ))
        }
        None => {
            let d = ext.connecting_d(&phi)?;
            Ok(Outcome::ok(
                json!({"ok": true, "extends": false, "obstruction": strs(d.coords())}),
                format!(
                    "does not extend; obstruction d(phi) = ({})",
                    strs(d.coords()).join(", ")
                ),
            ))
        }
    }
}

/// Lifts an action-preserving `ψ: g -> g` to `γ ∈ End^a(e)`, or reports `χ(ψ)`.
pub fn lift(ext_path: &Path, map_path: &Path) -> Result<Outcome, CliError> {
    let ext = format::load_extension(ext_path)?;
    let psi = format::load_map(map_path, &ext)?;
    if psi.domain() != ext.g().basis() || psi.codomain() != ext.g().basis() {
        return Err(CliError::Semantic("expected a map from g to g".into()));
    }
    match ext.lift_endomorphism(&psi)? {
        Some(gamma) => {
            let lambda = ext.lambda_of(&gamma, &psi)?;
            Ok(Outcome::ok(
                json!({
                    "ok": true,
                    "lifts": true,
                    "witness": format::map_to_file(&gamma, "e", "e"),
                    "lambda": format::map_to_file(&lambda, "g", "a"),
                }),
                "lifts: witness written to the report",
            ))
        }
        None => {
            let chi = ext.chi(&psi)?;
            Ok(Outcome::ok(
                json!({"ok": true, "lifts": false, "obstruction": strs(chi.coords())}),
                format!(
                    "does not lift; obstruction chi(psi) = ({})",
                    strs(chi.coords()).join(", ")
                ),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    FiveTerm,
    Thm1,
    Cor1,
    Thm2,
    Thm3,
    Oracle,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::FiveTerm => "five-term",
            Suite::Thm1 => "thm1",
            Suite::Cor1 => "cor1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Oracle => "oracle",
        }
    }
}

pub struct VerifyOptions {
    pub suite: Suite,
    pub samples: Option<PathBuf>,
    pub random: usize,
    pub pairs: usize,
    pub seed: u64,
}

fn verdict<S: Serialize>(suite: Suite, seed: u64, report: &S, pass: bool) -> Outcome {
    let mut v = to_json(report);
    v["suite"] = json!(suite.name());
    v["seed"] = json!(seed);
    let failed: Vec<String> = v["checks"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .filter(|c| c["pass"] == json!(false))
                .filter_map(|c| c["name"].as_str().map(str::to_owned))
                .collect()
        })
        .unwrap_or_default();
    let summary = if pass {
        format!("{}: PASS (seed {seed})", suite.name())
    } else if failed.is_empty() {
        format!("{}: FAIL (seed {seed})", suite.name())
    } else {
        format!(
            "{}: FAIL (seed {seed}): {}",
            suite.name(),
            failed.join(", ")
        )
    };
    Outcome {
        code: if pass { 0 } else { 3 },
        report: v,
        summary,
    }
}

/// Runs one verification suite; exit code 3 when any check fails.
pub fn verify(path: &Path, opts: &VerifyOptions) -> Result<Outcome, CliError> {
    let target = load_target(path)?;
    let ext = match (&target, opts.suite) {
        (_, Suite::Thm3) => {
            let module = match &target {
                Target::Ext(ext) => ext.module().clone(),
                Target::Module(m) => m.clone(),
            };
            let (_, sd) = semidirect_product(&module)?;
            let samples = load_samples_opt(opts, &sd)?;
            let r = sequences::verify_theorem3(&module, &samples, opts.random, opts.seed)?;
            return Ok(verdict(opts.suite, opts.seed, &r, r.pass));
        }
        (Target::Ext(ext), _) => ext,
        (Target::Module(_), s) => {
            return Err(CliError::Parse(format!(
                "suite {} needs an extension file",
                s.name()
            )))
        }
    };
    let samples = load_samples_opt(opts, ext)?;
    let (seed, suite) = (opts.seed, opts.suite);
    Ok(match suite {
        Suite::FiveTerm => {
            let r = sequences::verify_five_term(ext)?;
            verdict(suite, seed, &r, r.pass)
        }
        Suite::Thm1 => {
            let r = sequences::verify_theorem1(ext, opts.pairs, seed)?;
            verdict(suite, seed, &r, r.pass)
        }
        Suite::Cor1 => {
            let r = sequences::verify_corollary1(ext, &samples, opts.random, seed)?;
            verdict(suite, seed, &r, r.pass)
        }
        Suite::Thm2 => {
            let r = sequences::verify_theorem2(ext, &samples, opts.random, seed)?;
            verdict(suite, seed, &r, r.pass)
        }
        Suite::Oracle => {
            let r = sequences::verify_extension_oracle(ext, opts.random, seed)?;
            verdict(suite, seed, &r, r.pass)
        }
        Suite::Thm3 => unreachable!("handled above"),
    })
}

fn load_samples_opt(opts: &VerifyOptions, ext: &Extension) -> Result<Samples<Rat>, CliError> {
    match &opts.samples {
        Some(p) => format::load_samples(p, ext),
        None => Ok(Samples::default()),
    }
}

/// `out` with its extension replaced by `.ext.json`.
pub fn extension_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    out.with_file_name(format!("{stem}.ext.json"))
}

/// Writes `g ⋉ M` to `out` and a matching extension file next to it.
pub fn semidirect(g_path: &Path, module_path: &Path, out: &Path) -> Result<Outcome, CliError> {
    let g = format::load_algebra(g_path)?;
    g.validate().map_err(superext::Error::InvalidAlgebra)?;
    let module = format::load_module(module_path, Some(&g))?;
    let (e, ext) = semidirect_product(&module).map_err(|err| match err {
        superext::Error::Basis(m) => CliError::Semantic(format!("basis names collide: {m}")),
        other => other.into(),
    })?;
    e.validate().map_err(superext::Error::InvalidAlgebra)?;
    let write = |p: &Path, v: &Value| {
        let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
        fs::write(p, text).map_err(|err| CliError::Io(format!("{}: {err}", p.display())))
    };
    write(out, &to_json(&format::algebra_to_file(&e)))?;
    let ext_path = extension_path(out);
    let file_name = out
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or_default()
        .to_owned();
    let ext_file = format::ExtensionFile {
        algebra: json!(file_name),
        ideal: module.space().names().to_vec(),
    };
    write(&ext_path, &to_json(&ext_file))?;
    Ok(Outcome::ok(
        json!({
            "ok": true,
            "algebra": out.display().to_string(),
            "extension": ext_path.display().to_string(),
            "dim": e.dim(),
            "split": ext.is_split(),
        }),
        format!(
            "wrote {} (dimension {}) and {}",
            out.display(),
            e.dim(),
            ext_path.display()
        ),
    ))
}
