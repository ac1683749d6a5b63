//! Problem files, reports and the `.lmod` module format.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::ce_oracle::{ce_cohomology, irrep_construct, structure_constants};
use crate::error::{Error, Result};
use crate::graded::{GradedModule, GradedMorphism, WeightProfile};
use crate::kostant::{as_multiset, kostant_cohomology, length_distribution, minimal_coset_reps, GradedMultiset};
use crate::lmodule::{build, validate, Construction, LModule, Perversity};
use crate::microsupport::{
    dominant_grid, micro_purity_check, micro_support, vanishing, verify_basic_lemma, RealFormOracle,
};
use crate::parabolics::{enumerate_parabolics, ParabolicIndex};
use crate::root_data::{RootSystem, Weight};
use crate::{Caps, QMatrix, Rat};

pub const FORMAT_VERSION: u32 = 1;
pub const REPORT_SCHEMA: u32 = 1;

fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn rat_from_str(s: &str) -> Result<Rat> {
    let bad = || Error::Format(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotDoc {
    weight: Vec<i64>,
    degree: i64,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectDoc {
    parabolic: String,
    slots: Vec<SlotDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    weight: Vec<i64>,
    degree: i64,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    lower: String,
    upper: String,
    shift: i64,
    blocks: Vec<BlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    format: String,
    version: u32,
    cartan_type: String,
    strata: Vec<String>,
    objects: Vec<ObjectDoc>,
    maps: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sha256: Option<String>,
}

fn module_doc(m: &GradedModule) -> Vec<SlotDoc> {
    m.entries
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|((w, d), labels)| SlotDoc {
            weight: w.0.clone(),
            degree: *d,
            labels: labels.clone(),
        })
        .collect()
}

fn morphism_blocks(g: &GradedMorphism) -> Vec<BlockDoc> {
    g.blocks
        .iter()
        .map(|((w, d), b)| BlockDoc {
            weight: w.0.clone(),
            degree: *d,
            rows: b.rows(),
            cols: b.cols(),
            entries: (0..b.rows())
                .map(|r| (0..b.cols()).map(|c| rat_to_string(b.get(r, c))).collect())
                .collect(),
        })
        .collect()
}

fn checksum(doc: &ModuleDoc) -> Result<String> {
    let mut bare = doc.clone();
    bare.sha256 = None;
    let bytes = serde_json::to_vec(&bare)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Serializes a module as pretty JSON with a content checksum.
pub fn serialize_lmodule(m: &LModule) -> Result<String> {
    let rs = RootSystem::new(m.cartan_type.clone())?;
    let mut doc = ModuleDoc {
        format: "lmod".into(),
        version: FORMAT_VERSION,
        cartan_type: m.cartan_type.to_string(),
        strata: m.strata.iter().map(|p| p.label(&rs)).collect(),
        objects: m
            .e
            .iter()
            .map(|(p, e)| ObjectDoc {
                parabolic: p.label(&rs),
                slots: module_doc(e),
            })
            .collect(),
        maps: m
            .f
            .iter()
            .map(|((p, q), g)| MapDoc {
                lower: p.label(&rs),
                upper: q.label(&rs),
                shift: g.shift,
                blocks: morphism_blocks(g),
            })
            .collect(),
        sha256: None,
    };
    doc.sha256 = Some(checksum(&doc)?);
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Parses a `.lmod` document. A present checksum must match; an absent one
/// is accepted.
pub fn deserialize_lmodule(text: &str) -> Result<LModule> {
    let doc: ModuleDoc = serde_json::from_str(text)?;
    if doc.format != "lmod" {
        return Err(Error::Format(format!("unexpected format tag `{}`", doc.format)));
    }
    if doc.version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported version {} (expected {FORMAT_VERSION})",
            doc.version
        )));
    }
    if let Some(sum) = &doc.sha256 {
        if *sum != checksum(&doc)? {
            return Err(Error::Format("checksum mismatch".into()));
        }
    }
    let rs = RootSystem::from_type_str(&doc.cartan_type)?;
    let par = |s: &str| ParabolicIndex::parse_for(s, &rs);
    let weight = |w: &[i64]| -> Result<Weight> {
        if w.len() != rs.rank() {
            return Err(Error::Format(format!("weight {w:?} has the wrong length")));
        }
        Ok(Weight(w.to_vec()))
    };
    let mut m = LModule::zero(rs.cartan_type().clone(), BTreeSet::new());
    for s in &doc.strata {
        m.strata.insert(par(s)?);
    }
    for o in &doc.objects {
        let mut e = GradedModule::new();
        for slot in &o.slots {
            e.entries.insert((weight(&slot.weight)?, slot.degree), slot.labels.clone());
        }
        m.e.insert(par(&o.parabolic)?, e);
    }
    for md in &doc.maps {
        let mut g = GradedMorphism::zero(md.shift);
        for b in &md.blocks {
            if b.entries.len() != b.rows || b.entries.iter().any(|r| r.len() != b.cols) {
                return Err(Error::Format("block entries do not match its shape".into()));
            }
            let data = b
                .entries
                .iter()
                .flatten()
                .map(|s| rat_from_str(s))
                .collect::<Result<Vec<_>>>()?;
            g.blocks
                .insert((weight(&b.weight)?, b.degree), QMatrix::from_vec(b.rows, b.cols, data));
        }
        m.f.insert((par(&md.lower)?, par(&md.upper)?), g);
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Kostant,
    Microsupport,
    Vanishing,
    VerifyLemma,
    #[serde(alias = "oracle")]
    OracleCompare,
    IcPurity,
    Validate,
    Build,
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "kostant" => Task::Kostant,
            "microsupport" => Task::Microsupport,
            "vanishing" => Task::Vanishing,
            "verify-lemma" => Task::VerifyLemma,
            "oracle-compare" | "oracle" => Task::OracleCompare,
            "ic-purity" => Task::IcPurity,
            "validate" => Task::Validate,
            "build" => Task::Build,
            other => return Err(Error::Input(format!("unknown task `{other}`"))),
        })
    }
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Kostant => "kostant",
            Task::Microsupport => "microsupport",
            Task::Vanishing => "vanishing",
            Task::VerifyLemma => "verify-lemma",
            Task::OracleCompare => "oracle-compare",
            Task::IcPurity => "ic-purity",
            Task::Validate => "validate",
            Task::Build => "build",
        }
    }
}

/// A fully resolved problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemSpec {
    pub group: String,
    pub real_form: String,
    pub lambda: Option<Weight>,
    pub task: Task,
    pub construction: Construction,
    pub parabolic: Option<String>,
    /// Coordinate bound of the dominant grid for the lemma scan.
    pub grid: i64,
    pub caps: Caps,
}

impl ProblemSpec {
    pub fn new(group: &str, task: Task) -> Self {
        ProblemSpec {
            group: group.to_string(),
            real_form: "split".into(),
            lambda: None,
            task,
            construction: Construction::IgStar,
            parabolic: None,
            grid: 3,
            caps: Caps::default(),
        }
    }

    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("spec serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Resolves a construction name and an optional perversity or profile.
pub fn parse_construction(name: &str, variant: Option<&str>) -> Result<Construction> {
    match name.trim() {
        "igstar" => Ok(Construction::IgStar),
        "ic" => Ok(Construction::Ic(variant.map_or(Ok(Perversity::Upper), str::parse)?)),
        "wc" => Ok(Construction::Wc(variant.map_or(Ok(WeightProfile::Upper), str::parse)?)),
        other => Err(Error::Input(format!("unknown construction `{other}`"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSection {
    #[serde(rename = "type")]
    cartan_type: String,
    #[serde(default)]
    real_form: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CoefficientSection {
    lambda: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskSection {
    name: String,
    construction: Option<String>,
    perversity: Option<String>,
    profile: Option<String>,
    parabolic: Option<String>,
    grid: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    group: GroupSection,
    #[serde(default)]
    coefficient: CoefficientSection,
    task: TaskSection,
    #[serde(default)]
    caps: BTreeMap<String, usize>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses a problem file: `[group]`, `[coefficient]`, `[task]` and `[caps]`
/// sections of `key = value` lines. Unknown sections and keys are errors.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let file: ProblemFile = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let task: Task = file.task.name.parse()?;
    let variant = file.task.perversity.as_deref().or(file.task.profile.as_deref());
    let construction = parse_construction(file.task.construction.as_deref().unwrap_or("igstar"), variant)?;
    let mut caps = Caps::from_env()?;
    let overrides: Vec<String> = file.caps.iter().map(|(k, v)| format!("{k}={v}")).collect();
    caps = caps.with_overrides(&overrides.join(","))?;
    let real_form = file.group.real_form.unwrap_or_else(|| "split".into());
    if real_form != "split" {
        return Err(Error::Input(format!("unsupported real form `{real_form}`")));
    }
    Ok(ProblemSpec {
        group: file.group.cartan_type,
        real_form,
        lambda: file.coefficient.lambda.map(Weight),
        task,
        construction,
        parabolic: file.task.parabolic,
        grid: file.task.grid.unwrap_or(3),
        caps,
    })
}

/// A task result with provenance. Contains no timing or other
/// run-dependent data, so equal inputs give byte-identical output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub engine: String,
    pub version: String,
    pub schema: u32,
    pub task: String,
    pub input_sha256: String,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    /// A checked property failed.
    pub findings: bool,
}

fn envelope(task: Task, hash: String, payload: Value) -> Report {
    Report {
        engine: "lmod".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        schema: REPORT_SCHEMA,
        task: task.name().into(),
        input_sha256: hash,
        payload,
    }
}

fn multiset_json(m: &GradedMultiset) -> Value {
    Value::Array(
        m.iter()
            .map(|((w, d), n)| json!({"weight": w, "degree": d, "multiplicity": n}))
            .collect(),
    )
}

fn lambda_or_zero(spec: &ProblemSpec, rs: &RootSystem) -> Result<Weight> {
    let l = spec.lambda.clone().unwrap_or_else(|| Weight::zero(rs.rank()));
    if l.0.len() != rs.rank() {
        return Err(Error::Input(format!(
            "lambda has {} coordinates, rank is {}",
            l.0.len(),
            rs.rank()
        )));
    }
    Ok(l)
}

/// The module a `build` task describes.
pub fn build_module(spec: &ProblemSpec) -> Result<LModule> {
    let rs = RootSystem::from_type_str(&spec.group)?;
    let lambda = lambda_or_zero(spec, &rs)?;
    build(&rs, &lambda, spec.construction, &spec.caps)
}

/// Runs every task except `validate`, which needs a module.
pub fn run(spec: &ProblemSpec) -> Result<Outcome> {
    let rs = RootSystem::from_type_str(&spec.group)?;
    let caps = &spec.caps;
    let oracle = RealFormOracle::Split;
    let lambda = lambda_or_zero(spec, &rs)?;
    let g = ParabolicIndex::full(&rs);
    let parabolic = spec
        .parabolic
        .as_deref()
        .map(|s| ParabolicIndex::parse_for(s, &rs))
        .transpose()?;
    let (payload, findings) = match spec.task {
        Task::Kostant => {
            let p = parabolic.unwrap_or_else(ParabolicIndex::borel);
            let comps = kostant_cohomology(&rs, &p, &g, &lambda, caps)?;
            let reps = minimal_coset_reps(&rs, &p, &g, caps)?;
            let rows: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!({
                        "word": c.word,
                        "weight": c.weight,
                        "degree": c.degree,
                        "dimension": rs.weyl_dimension(&c.weight, p.mask).to_string(),
                    })
                })
                .collect();
            (
                json!({
                    "cartan_type": rs.cartan_type().to_string(),
                    "lower": p.label(&rs),
                    "upper": g.label(&rs),
                    "lambda": lambda,
                    "components": rows,
                    "length_distribution": length_distribution(&reps),
                }),
                false,
            )
        }
        Task::Microsupport => {
            let m = build(&rs, &lambda, spec.construction, caps)?;
            let report = micro_support(&rs, &m, &oracle, caps)?;
            let mut v = serde_json::to_value(&report)?;
            v["construction"] = json!(spec.construction.to_string());
            v["lambda"] = json!(lambda);
            let parity = report.flags.iter().any(|f| f.starts_with("parity"));
            (v, parity)
        }
        Task::Vanishing => {
            let r = vanishing(&rs, &lambda, spec.construction, &oracle, caps)?;
            let w0 = rs.longest_element(g.mask);
            let equal_rank = w0.act(&rs.rho()) == rs.rho().scale(-1);
            let regular = lambda.0.iter().all(|&x| x >= 1);
            let applies = equal_rank && regular && spec.construction == Construction::IgStar;
            let mut v = serde_json::to_value(&r)?;
            v["bound_applies"] = json!(applies);
            (v, applies && !r.below_half_vanishes)
        }
        Task::VerifyLemma => {
            let scan = verify_basic_lemma(&rs, &dominant_grid(rs.rank(), spec.grid), &oracle, caps)?;
            let bad = !scan.violations.is_empty();
            (serde_json::to_value(&scan)?, bad)
        }
        Task::OracleCompare => {
            let sc = structure_constants(&rs, caps)?;
            let mut rows = Vec::new();
            let mut bad = false;
            let parabolics = enumerate_parabolics(&rs, caps)?;
            for q in &parabolics {
                let v = irrep_construct(&rs, &lambda, q.mask, caps)?;
                for p in parabolics.iter().filter(|p| p.is_le(q)) {
                    if parabolic.is_some_and(|x| x != *p) {
                        continue;
                    }
                    let ce = ce_cohomology(&rs, p, q, &v, &sc, caps)?.decomposition;
                    let k = as_multiset(&kostant_cohomology(&rs, p, q, &lambda, caps)?);
                    bad |= ce != k;
                    rows.push(json!({
                        "lower": p.label(&rs),
                        "upper": q.label(&rs),
                        "agree": ce == k,
                        "kostant": multiset_json(&k),
                        "oracle": multiset_json(&ce),
                    }));
                }
            }
            (
                json!({"cartan_type": rs.cartan_type().to_string(), "lambda": lambda, "pairs": rows}),
                bad,
            )
        }
        Task::IcPurity => {
            let construction = match spec.construction {
                Construction::IgStar => Construction::Ic(Perversity::Upper),
                c => c,
            };
            let r = micro_purity_check(&rs, &lambda, construction, &oracle, caps)?;
            let bad = r.hypothesis && r.self_dual && !r.pure;
            (serde_json::to_value(&r)?, bad)
        }
        Task::Build => {
            let m = build_module(spec)?;
            let text = serialize_lmodule(&m)?;
            (serde_json::from_str(&text)?, false)
        }
        Task::Validate => {
            return Err(Error::Input("the validate task needs a module file".into()));
        }
    };
    Ok(Outcome {
        report: envelope(spec.task, spec.hash(), payload),
        findings,
    })
}

/// Validates a loaded module; `hash` identifies the input file.
pub fn run_validate(m: &LModule, caps: &Caps, hash: String) -> Result<Outcome> {
    let rs = RootSystem::new(m.cartan_type.clone())?;
    let residuals = validate(&rs, m, caps)?;
    let payload = json!({
        "cartan_type": m.cartan_type.to_string(),
        "valid": residuals.is_empty(),
        "residuals": residuals,
    });
    Ok(Outcome {
        findings: !residuals.is_empty(),
        report: envelope(Task::Validate, hash, payload),
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn render_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("report serializes") + "\n"
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| x.is_number() || x.is_string()) => Some(format!(
            "({})",
            a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(",")
        )),
        _ => None,
    }
}

fn table_rows(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        table_rows(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{s}\n")),
                    None => {
                        out.push_str(&format!("{pad}#{i}\n"));
                        table_rows(out, x, indent + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Human-readable indented rendering of a report.
pub fn render_table(r: &Report) -> String {
    let mut out = format!(
        "{} {}  task={}  schema={}\ninput {}\n",
        r.engine, r.version, r.task, r.schema, r.input_sha256
    );
    table_rows(&mut out, &r.payload, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmodule::build_ic;

    #[test]
    fn round_trip() {
        let caps = Caps::default();
        let c2 = RootSystem::from_type_str("C2").unwrap();
        let m = build_ic(&c2, &c2.rho(), Perversity::Upper, &caps).unwrap();
        let text = serialize_lmodule(&m).unwrap();
        assert_eq!(deserialize_lmodule(&text).unwrap(), m);
        assert_eq!(serialize_lmodule(&deserialize_lmodule(&text).unwrap()).unwrap(), text);
        let zero = LModule::zero(c2.cartan_type().clone(), BTreeSet::new());
        assert_eq!(deserialize_lmodule(&serialize_lmodule(&zero).unwrap()).unwrap(), zero);
    }

    #[test]
    fn checksum_and_version() {
        let a1 = RootSystem::from_type_str("A1").unwrap();
        let m = build_ic(&a1, &Weight(vec![0]), Perversity::Upper, &Caps::default()).unwrap();
        let text = serialize_lmodule(&m).unwrap();
        let tampered = text.replace("\"1/1\"", "\"-1/1\"");
        assert!(matches!(deserialize_lmodule(&tampered), Err(Error::Format(_))));
        let newer = text.replace("\"version\": 1", "\"version\": 2");
        assert!(deserialize_lmodule(&newer).is_err());
    }

    #[test]
    fn problem_file() {
        let text = "[group]\ntype = \"C2\"\n\n[coefficient]\nlambda = [1, 1]\n\n[task]\nname = \"vanishing\"\nconstruction = \"ic\"\nperversity = \"lower\"\n\n[caps]\nirrep_dim = 500\n";
        let spec = parse_problem(text).unwrap();
        assert_eq!(spec.task, Task::Vanishing);
        assert_eq!(spec.construction, Construction::Ic(Perversity::Lower));
        assert_eq!(spec.lambda, Some(Weight(vec![1, 1])));
        assert_eq!(spec.caps.irrep_dim, 500);
        assert_eq!(spec.hash(), parse_problem(text).unwrap().hash());
    }

    #[test]
    fn problem_file_errors_have_positions() {
        let text = "[group]\ntype = \"C2\"\ncolour = \"red\"\n[task]\nname = \"kostant\"\n";
        match parse_problem(text) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!((line, column), (3, 1));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_problem("[group]\ntype = \"C2\"\n[task]\nname = \"frobnicate\"\n").is_err());
        assert!(parse_problem("[group]\ntype = \"C2\"\n[task]\nname = \"kostant\"\n[caps]\nbogus = 1\n").is_err());
    }

    #[test]
    fn kostant_report() {
        let mut spec = ProblemSpec::new("C2", Task::Kostant);
        spec.parabolic = Some("[1]".into());
        let out = run(&spec).unwrap();
        let comps = out.report.payload["components"].as_array().unwrap();
        let degrees: Vec<u64> = comps.iter().map(|c| c["degree"].as_u64().unwrap()).collect();
        assert_eq!(degrees, vec![0, 1, 2, 3]);
        assert_eq!(render_json(&out.report), render_json(&run(&spec).unwrap().report));
        assert!(render_table(&out.report).contains("components"));
    }
}
