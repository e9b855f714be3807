//! Command-line driver: loads a workspace of JSON files, runs one command and
//! returns a canonical JSON report with an exit code (0 success, 1
//! mathematical rejection, 2 input error).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tannaka_core::exactlin::rational::serde_rational;
use tannaka_core::exactlin::{QMatrix, QVector, Rational};
use tannaka_core::io::{self, canonical_string, with_schema};
use tannaka_core::jordan::{additive_jc, classify, multiplicative_jc};
use tannaka_core::liealg::LieAlgebra;
use tannaka_core::nilgrp::{exp_compat_check, BCHGroup};
use tannaka_core::oneparam::{comorphism_check, generate_me, Letter, Param, TorusParam, UnipotentParam};
use tannaka_core::repn::Module;
use tannaka_core::tannaka::{
    build_closure, lie_m_report, lie_membership, m_membership, peter_weyl_check, CategoryClosure, ClosureOptions,
    NatFamily,
};
use tannaka_core::toric::{faces, idempotent_of_face, saturation_check, toric_structure_report, DEFAULT_GENERATOR_CAP};
use tannaka_core::uea::matrix_coefficient;
use tannaka_core::Error;

#[derive(Parser, Debug)]
#[command(name = "tannaka-forge", version, about = "Exact reconstruction computations for Lie algebra representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Lie algebra JSON file.
    #[arg(long, global = true)]
    pub algebra: Option<PathBuf>,
    /// Module JSON files, comma separated or repeated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modules: Vec<PathBuf>,
    /// Tensor depth of the category closure.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// PBW truncation degree.
    #[arg(long, global = true, default_value_t = 4)]
    pub degree: u32,
    /// Seed recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include duals of the generators in the closure.
    #[arg(long, global = true)]
    pub duals: bool,
    /// Object cap for the closure.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_objects: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parse and validate the algebra and modules.
    Validate,
    /// Build the category closure and list its objects.
    Closure,
    /// Solve for Lie(M) on the closure.
    LieM,
    /// Certify a family (JSON keyed by object id).
    Membership {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Group)]
        kind: Kind,
    },
    /// Jordan–Chevalley decomposition of a matrix.
    Jordan {
        #[arg(long)]
        matrix: PathBuf,
        /// Idempotent for the multiplicative decomposition.
        #[arg(long)]
        idempotent: Option<PathBuf>,
    },
    /// Words in exponentials of nilpotent parameters.
    Exp {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        words: Option<PathBuf>,
    },
    /// Torus parameters: eigenvalue monoids, comorphism checks and words.
    Torus {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        words: Option<PathBuf>,
    },
    /// Group law of a nilpotent algebra.
    Bch {
        /// Element as a JSON array or `{basis_name: value}`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Faces, idempotents and structure checks of a weight monoid.
    ToricFaces {
        #[arg(long)]
        monoid: PathBuf,
    },
    /// Coefficient rank of the given irreducible modules against dimension counts.
    PeterWeyl,
    /// Matrix coefficient of the first module, truncated at `--degree`.
    Mc {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        v: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Group,
    Lie,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Closure => "closure",
            Command::LieM => "lie-m",
            Command::Membership { .. } => "membership",
            Command::Jordan { .. } => "jordan",
            Command::Exp { .. } => "exp",
            Command::Torus { .. } => "torus",
            Command::Bch { .. } => "bch",
            Command::ToricFaces { .. } => "toric-faces",
            Command::PeterWeyl => "peter-weyl",
            Command::Mc { .. } => "mc",
        }
    }
}

/// Files and parameters shared by every command.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub algebra: Option<PathBuf>,
    pub modules: Vec<PathBuf>,
    pub closure: ClosureOptions,
    pub degree: u32,
    pub seed: u64,
}

impl Workspace {
    pub fn from_cli(cli: &Cli) -> Self {
        Workspace {
            algebra: cli.algebra.clone(),
            modules: cli.modules.clone(),
            closure: ClosureOptions {
                depth: cli.depth,
                include_duals: cli.duals,
                extract_submodules: true,
                max_objects: cli.max_objects,
            },
            degree: cli.degree,
            seed: cli.seed,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    witness: Option<Value>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, kind: "input", message: message.into(), witness: None }
    }

    fn rejected(message: impl Into<String>, witness: Value) -> Self {
        Failure { code: 1, kind: "rejected", message: message.into(), witness: Some(witness) }
    }

    fn from_error(e: Error, context: Option<&Path>) -> Self {
        let input = matches!(
            e,
            Error::Parse(_)
                | Error::DimensionMismatch { .. }
                | Error::NotSquare { .. }
                | Error::InvalidAlgebra(_)
                | Error::InvalidModule { .. }
                | Error::ParentMismatch
                | Error::Unknown(_)
                | Error::ObjectCap { .. }
                | Error::CapExceeded { .. }
                | Error::FamilyShape { .. }
                | Error::Unsupported(_)
                | Error::EmptySubmodule
        );
        let message = match context {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        if input {
            Failure::input(message)
        } else {
            Failure { code: 1, kind: "rejected", message, witness: None }
        }
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Step<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_algebra(ws: &Workspace) -> Step<Arc<LieAlgebra>> {
    let path = ws.algebra.as_deref().ok_or_else(|| Failure::input("--algebra is required"))?;
    io::parse_algebra(&read(path)?).map(Arc::new).map_err(|e| Failure::from_error(e, Some(path)))
}

fn load_modules(ws: &Workspace, g: &Arc<LieAlgebra>) -> Step<Vec<Module>> {
    ws.modules
        .iter()
        .map(|p| io::parse_module(&read(p)?, g).map_err(|e| Failure::from_error(e, Some(p))))
        .collect()
}

fn load_closure(ws: &Workspace) -> Step<CategoryClosure> {
    let g = load_algebra(ws)?;
    let mods = load_modules(ws, &g)?;
    build_closure(&g, &mods, ws.closure.clone()).map_err(|e| Failure::from_error(e, None))
}

fn parse_json(text: &str, path: &Path) -> Step<Value> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Failure::input(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    match v.get("schema") {
        Some(Value::String(s)) if s != io::SCHEMA => {
            Err(Failure::input(format!("{}: unsupported schema {s:?}", path.display())))
        }
        _ => Ok(v),
    }
}

fn rational_of(v: &Value) -> Step<Rational> {
    serde_rational::value_to_rational(v).map_err(Failure::input)
}

/// A vector given as an array or as `{basis_name: value}` over `names`.
fn parse_vector(v: &Value, names: Option<&[String]>, dim: usize) -> Step<QVector> {
    let out: QVector = match v {
        Value::Array(items) => items.iter().map(rational_of).collect::<Step<_>>()?,
        Value::Object(map) => {
            let names = names.ok_or_else(|| Failure::input("named coordinates need a basis"))?;
            let mut out = vec![Rational::from_integer(0.into()); names.len()];
            for (k, x) in map {
                let i = names.iter().position(|n| n == k).ok_or_else(|| Failure::input(format!("unknown basis element {k:?}")))?;
                out[i] = rational_of(x)?;
            }
            out
        }
        _ => return Err(Failure::input("expected an array or an object")),
    };
    if out.len() != dim {
        return Err(Failure::input(format!("expected {dim} coordinates, found {}", out.len())));
    }
    Ok(out)
}

fn inline_vector(text: &str, names: Option<&[String]>, dim: usize) -> Step<QVector> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::input(format!("inline vector: {e}")))?;
    parse_vector(&v, names, dim)
}

fn strip_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.remove("schema");
    }
    v
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ParamKind {
    Unipotent,
    Torus,
}

struct ParamSet {
    ids: Vec<String>,
    params: Vec<Param>,
}

fn load_params(path: &Path, c: &CategoryClosure, expected: ParamKind) -> Step<ParamSet> {
    let doc = parse_json(&read(path)?, path)?;
    let list = doc.get("params").and_then(Value::as_array).ok_or_else(|| Failure::input(format!("{}: missing \"params\" array", path.display())))?;
    let g = c.algebra();
    let mut ids = Vec::new();
    let mut params = Vec::new();
    for p in list {
        let id = p.get("id").and_then(Value::as_str).ok_or_else(|| Failure::input("parameter without \"id\""))?;
        let kind = match p.get("kind").and_then(Value::as_str) {
            None if expected == ParamKind::Unipotent => ParamKind::Unipotent,
            None => ParamKind::Torus,
            Some("unipotent") => ParamKind::Unipotent,
            Some("torus") => ParamKind::Torus,
            Some(other) => return Err(Failure::input(format!("unknown parameter kind {other:?}"))),
        };
        if kind != expected {
            return Err(Failure::input(format!("parameter {id:?} has the wrong kind for this command")));
        }
        let element = parse_vector(
            p.get("element").ok_or_else(|| Failure::input(format!("parameter {id:?} without \"element\"")))?,
            Some(g.names()),
            g.dim(),
        )?;
        let param = match kind {
            ParamKind::Unipotent => Param::Unipotent(UnipotentParam::new(c, &element).map_err(|e| Failure::from_error(e, None))?),
            ParamKind::Torus => Param::Torus(TorusParam::new(c, &element).map_err(|e| Failure::from_error(e, None))?),
        };
        ids.push(id.to_string());
        params.push(param);
    }
    Ok(ParamSet { ids, params })
}

/// A single word (array of letters) or an array of words.
fn load_words(path: &Path, set: &ParamSet) -> Step<Vec<Vec<Letter>>> {
    let doc = parse_json(&read(path)?, path)?;
    let doc = match doc {
        Value::Object(ref m) if m.contains_key("words") => m["words"].clone(),
        other => other,
    };
    let arr = doc.as_array().ok_or_else(|| Failure::input(format!("{}: expected an array", path.display())))?;
    let single = arr.first().is_some_and(Value::is_object);
    let raw: Vec<&Value> = if single { vec![&doc] } else { arr.iter().collect() };
    raw.into_iter()
        .map(|w| {
            w.as_array()
                .ok_or_else(|| Failure::input("word must be an array"))?
                .iter()
                .map(|l| {
                    let pid = l.get("param_id").and_then(Value::as_str).ok_or_else(|| Failure::input("letter without \"param_id\""))?;
                    let param = set.ids.iter().position(|i| i == pid).ok_or_else(|| Failure::input(format!("unknown parameter {pid:?}")))?;
                    let value = rational_of(l.get("value").ok_or_else(|| Failure::input("letter without \"value\""))?)?;
                    Ok(Letter { param, value })
                })
                .collect()
        })
        .collect()
}

fn words_report(c: &CategoryClosure, set: &ParamSet, words: Option<&PathBuf>) -> Step<(Value, bool)> {
    let Some(path) = words else { return Ok((Value::Array(Vec::new()), true)) };
    let words = load_words(path, set)?;
    let gen = generate_me(c, &set.params, &words).map_err(|e| Failure::from_error(e, None))?;
    let all = gen.iter().all(|g| g.certified);
    let v = gen
        .iter()
        .map(|g| {
            let word: Vec<Value> = g
                .word
                .iter()
                .map(|l| json!({"param_id": set.ids[l.param], "value": tannaka_core::exactlin::rational::format_rational(&l.value)}))
                .collect();
            json!({"word": word, "family": to_value(&g.family), "certified": g.certified})
        })
        .collect();
    Ok((Value::Array(v), all))
}

fn load_family(path: &Path, c: &CategoryClosure) -> Step<NatFamily> {
    let doc = parse_json(&read(path)?, path)?;
    let doc = strip_schema(doc);
    let map: BTreeMap<String, QMatrix> =
        serde_json::from_value(doc).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let entries = c
        .ids()
        .iter()
        .map(|id| map.get(id).cloned().ok_or_else(|| Failure::input(format!("{}: no entry for object {id:?}", path.display()))))
        .collect::<Step<Vec<_>>>()?;
    NatFamily::for_closure(c, entries).map_err(|e| Failure::from_error(e, Some(path)))
}

fn execute(cmd: &Command, ws: &Workspace) -> Step<Value> {
    match cmd {
        Command::Validate => {
            let path = ws.algebra.as_deref().ok_or_else(|| Failure::input("--algebra is required"))?;
            let g = match io::parse_algebra(&read(path)?) {
                Ok(g) => Arc::new(g),
                Err(Error::InvalidAlgebra(v)) => {
                    return Err(Failure::rejected(format!("{}: Lie algebra axioms fail", path.display()), to_value(&v)))
                }
                Err(e) => return Err(Failure::from_error(e, Some(path))),
            };
            let mut mods = Vec::new();
            for p in &ws.modules {
                match io::parse_module(&read(p)?, &g) {
                    Ok(m) => mods.push(json!({
                        "file": p.file_name().map(|f| f.to_string_lossy().into_owned()),
                        "id": m.id(),
                        "dim": m.dim(),
                        "absolutely_irreducible": m.is_absolutely_irreducible(),
                    })),
                    Err(Error::InvalidModule { id, pairs }) => {
                        return Err(Failure::rejected(
                            format!("{}: module {id:?} is not a representation", p.display()),
                            json!({"pairs": pairs}),
                        ))
                    }
                    Err(e) => return Err(Failure::from_error(e, Some(p))),
                }
            }
            Ok(json!({"algebra": {"dim": g.dim(), "basis": g.names(), "valid": true}, "modules": mods}))
        }
        Command::Closure => {
            let c = load_closure(ws)?;
            let objects: Vec<Value> = c
                .objects()
                .iter()
                .map(|o| json!({"id": o.module.id(), "dim": o.module.dim(), "provenance": to_value(&o.provenance)}))
                .collect();
            Ok(json!({"depth": c.depth(), "objects": objects, "morphisms": c.morphisms().len(), "letters": c.letter_indices().len()}))
        }
        Command::LieM => {
            let g = load_algebra(ws)?;
            let mods = load_modules(ws, &g)?;
            let (_, report) = lie_m_report(&g, &mods, ws.closure.clone()).map_err(|e| Failure::from_error(e, None))?;
            Ok(to_value(&report))
        }
        Command::Membership { family, kind } => {
            let c = load_closure(ws)?;
            let fam = load_family(family, &c)?;
            let report = match kind {
                Kind::Group => m_membership(&c, &fam),
                Kind::Lie => lie_membership(&c, &fam),
            };
            if report.certified {
                Ok(to_value(&report))
            } else {
                Err(Failure::rejected("family is not certified", to_value(&report)))
            }
        }
        Command::Jordan { matrix, idempotent } => {
            let x = io::parse_matrix(&read(matrix)?).map_err(|e| Failure::from_error(e, Some(matrix)))?;
            match idempotent {
                None => {
                    let jc = additive_jc(&x).map_err(|e| Failure::from_error(e, None))?;
                    let class = classify(&x).map_err(|e| Failure::from_error(e, None))?;
                    Ok(json!({"s": to_value(&jc.s), "n": to_value(&jc.n), "classification": to_value(&class)}))
                }
                Some(p) => {
                    let e = io::parse_matrix(&read(p)?).map_err(|e| Failure::from_error(e, Some(p)))?;
                    match multiplicative_jc(&x, &e) {
                        Ok(jc) => Ok(to_value(&jc)),
                        Err(Error::NotInvertible { witness }) => Err(Failure::rejected(
                            "not invertible on the image of the idempotent",
                            json!({"kernel_vector": witness}),
                        )),
                        Err(err) => Err(Failure::from_error(err, None)),
                    }
                }
            }
        }
        Command::Exp { params, words } => {
            let c = load_closure(ws)?;
            let set = load_params(params, &c, ParamKind::Unipotent)?;
            let (words, ok) = words_report(&c, &set, words.as_ref())?;
            let ps: Vec<Value> = set
                .ids
                .iter()
                .zip(&set.params)
                .map(|(id, p)| match p {
                    Param::Unipotent(u) => json!({"id": id, "element": io::qvector_json(u.generator())}),
                    Param::Torus(_) => unreachable!("checked on load"),
                })
                .collect();
            let out = json!({"params": ps, "words": words});
            if ok {
                Ok(out)
            } else {
                Err(Failure::rejected("a word is not certified", out))
            }
        }
        Command::Torus { params, words } => {
            let c = load_closure(ws)?;
            let set = load_params(params, &c, ParamKind::Torus)?;
            let mut ps = Vec::new();
            let mut ok = true;
            for (id, p) in set.ids.iter().zip(&set.params) {
                if let Param::Torus(h) = p {
                    let report = comorphism_check(&c, h);
                    ok &= report.contained;
                    ps.push(json!({"id": id, "element": io::qvector_json(h.generator()), "comorphism": to_value(&report)}));
                }
            }
            let (words, words_ok) = words_report(&c, &set, words.as_ref())?;
            let out = json!({"params": ps, "words": words});
            if ok && words_ok {
                Ok(out)
            } else {
                Err(Failure::rejected("a torus check failed", out))
            }
        }
        Command::Bch { x, y } => {
            let g = load_algebra(ws)?;
            let grp = BCHGroup::whole(&g).map_err(|e| Failure::from_error(e, None))?;
            let xv = inline_vector(x, Some(g.names()), g.dim())?;
            let yv = inline_vector(y, Some(g.names()), g.dim())?;
            let z = grp.bch(&xv, &yv).map_err(|e| Failure::from_error(e, None))?;
            let mut out = json!({"class": grp.class(), "z": io::qvector_json(&z)});
            if !ws.modules.is_empty() {
                let mods = load_modules(ws, &g)?;
                let c = build_closure(&g, &mods, ws.closure.clone()).map_err(|e| Failure::from_error(e, None))?;
                let ok = exp_compat_check(&grp, &c, &xv, &yv).map_err(|e| Failure::from_error(e, None))?;
                out["exp_compat"] = json!(ok);
                if !ok {
                    return Err(Failure::rejected("exponentials do not multiply as the series predicts", out));
                }
            }
            Ok(out)
        }
        Command::ToricFaces { monoid } => {
            let a = io::parse_monoid(&read(monoid)?).map_err(|e| Failure::from_error(e, Some(monoid)))?;
            let lat = faces(&a, DEFAULT_GENERATOR_CAP).map_err(|e| Failure::from_error(e, None))?;
            let report = toric_structure_report(&a, &lat).map_err(|e| Failure::from_error(e, None))?;
            let idem: Vec<Value> = (0..lat.len()).map(|f| to_value(&idempotent_of_face(&a, &lat, f))).collect();
            let sat = saturation_check(&a, &lat);
            let mut out = json!({
                "monoid": strip_schema(io::monoid_to_json(&a)),
                "faces": to_value(&lat),
                "idempotents": idem,
                "report": to_value(&report),
            });
            if !sat.saturated {
                out["warning"] = json!("monoid is not saturated");
            }
            Ok(out)
        }
        Command::PeterWeyl => {
            let g = load_algebra(ws)?;
            let mods = load_modules(ws, &g)?;
            let report = peter_weyl_check(&mods, ws.degree).map_err(|e| Failure::from_error(e, None))?;
            if report.success {
                Ok(to_value(&report))
            } else {
                Err(Failure::rejected("coefficient rank below the expected dimension", to_value(&report)))
            }
        }
        Command::Mc { phi, v } => {
            let g = load_algebra(ws)?;
            let mods = load_modules(ws, &g)?;
            let m = mods.first().ok_or_else(|| Failure::input("--modules must name at least one module"))?;
            let phi = inline_vector(phi, None, m.dim())?;
            let v = inline_vector(v, None, m.dim())?;
            let h = matrix_coefficient(m, &phi, &v, ws.degree).map_err(|e| Failure::from_error(e, None))?;
            Ok(json!({"module": m.id(), "coefficient": strip_schema(io::truncated_dual_to_json(&h, g.names()))}))
        }
    }
}

/// Runs one command on a workspace and renders the canonical report.
pub fn run_command(cmd: &Command, ws: &Workspace) -> Outcome {
    let (code, body) = match execute(cmd, ws) {
        Ok(result) => (0, json!({"status": "ok", "result": result})),
        Err(f) => {
            let mut body = json!({"status": f.kind, "error": f.message});
            if let Some(w) = f.witness {
                body["witness"] = w;
            }
            (f.code, body)
        }
    };
    let mut report = with_schema(body);
    report["command"] = json!(cmd.name());
    report["seed"] = json!(ws.seed);
    Outcome { code, report: canonical_string(&report) }
}

/// Parses arguments (including the program name) and runs.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: e.to_string() };
        }
    };
    let ws = Workspace::from_cli(&cli);
    let outcome = run_command(&cli.command, &ws);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.report) {
            return Outcome { code: 2, report: format!("{}: {e}\n", path.display()) };
        }
    }
    outcome
}
