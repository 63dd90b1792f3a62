//! The `homcode` command line. [`run`] executes one invocation in process,
//! so piping commands together and calling them here give the same bytes.

use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homcode::features::{
    boundary_logical_count, build_boundary_patch, density_analysis, favg_analysis,
    hole_logical_count, twist_sites, BoundarySpec, DensityPolicy, FeatureError, PuncturedCode,
    ValenceFamily,
};
use homcode::hsc::{
    build_ktc, build_polygon_code, build_tcc, canonical_label_set, check_code, classify,
    Classification, HscCode, HscError, InadmissibleReason,
};
use homcode::lattices::{export_dot, generate, map_from_value, map_to_value, LatticeError, LatticeSpec};
use homcode::map::{
    cycle_cut_spaces, dual, face_coloring, homology_generators, medial, ColoringError,
    CombinatorialMap,
};
use homcode::stabilizer::Distance;

#[derive(Debug, Parser)]
#[command(name = "homcode", version, about = "Homological stabilizer codes on embedded graphs")]
pub struct Cli {
    /// Read input JSON from this file instead of standard input.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// Suppress the summary on standard error.
    #[arg(long, global = true)]
    pub json_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Dual,
    Medial,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a lattice from `family:key=val,...`.
    Gen { spec: String },
    /// Dual or medial map.
    Transform { kind: TransformKind },
    /// Proper face coloring (2 colors for 4-valent, 3 for 3-valent maps).
    Color {
        #[arg(long)]
        palette: Option<u8>,
    },
    /// Cycle space, cut space and Z2 homology.
    Homology,
    /// Check a code against the admissibility rules.
    Check,
    /// Build a code on a map: `ktc`, `tcc:1`, `tcc:2`, `tcc:3` or `polygon`.
    Build { family: String },
    /// Code parameters.
    Params {
        #[arg(long)]
        distance_cap: Option<usize>,
    },
    /// Remove generators: `--hole F` removes all of face F, `--hole F:S,T`
    /// only slots S and T.
    Punch {
        #[arg(long = "hole", required = true)]
        holes: Vec<String>,
    },
    /// Planar patch with boundaries from a `planar_ktc_patch` or
    /// `planar_tcc_triangle` spec.
    Boundary { spec: String },
    /// Generator density analysis of a map.
    Density {
        /// Uniform generators per face; the default is the largest
        /// admissible count on each face.
        #[arg(long)]
        m: Option<u8>,
    },
    /// Exact average face size of a regular map.
    Favg {
        #[arg(long, value_parser = ["3", "4"])]
        valence: String,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        vertices: usize,
    },
    /// Which code family a map supports.
    Classify,
    /// Graphviz DOT of a map or code.
    ExportDot {
        /// Include a face coloring when one exists.
        #[arg(long)]
        color: bool,
    },
    /// Label-set regularity defects of a code.
    Twist,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Exit 1 with a structured reason.
    Rejected(Value, String),
    /// Exit 2.
    Input(String),
}

type CmdResult = Result<(String, String), Failure>;

fn input_err(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn rejected(rule: impl Into<Value>, witness: impl Into<Value>) -> Failure {
    let rule = rule.into();
    let msg = format!("rejected: {rule}");
    Failure::Rejected(json!({"rejected": rule, "witness": witness.into()}), msg)
}

fn hsc_failure(e: HscError) -> Failure {
    match e {
        HscError::Rejected(r) => {
            let v = serde_json::to_value(&*r).expect("rejections serialize");
            rejected(v["rule"].clone(), v["witness"].clone())
        }
        HscError::Io(_) | HscError::Parse(_) | HscError::Pauli(_) | HscError::GeneratorLength { .. }
        | HscError::FaceListMismatch(..) | HscError::Map(_) => input_err(e),
        HscError::NotColorable(ColoringError::NotColorable(w)) => {
            rejected("not_colorable", serde_json::to_value(w).expect("witnesses serialize"))
        }
        other => rejected("unsupported", other.to_string()),
    }
}

fn feature_failure(e: FeatureError) -> Failure {
    match e {
        FeatureError::Hsc(h) => hsc_failure(h),
        FeatureError::NoSuchGenerator { face, slot } => {
            rejected("no_such_generator", json!({"face": face, "slot": slot}))
        }
        FeatureError::InvalidBoundarySpec(s) => rejected("invalid_boundary_spec", s),
        FeatureError::DegenerateParameters(s) => rejected("degenerate_parameters", s),
        FeatureError::Disconnected(n) => rejected("disconnected", n),
        FeatureError::Stabilizer(s) => rejected("stabilizer", s.to_string()),
    }
}

fn lattice_failure(e: LatticeError) -> Failure {
    match e {
        LatticeError::ConstraintViolation { family, constraint } => {
            rejected("constraint_violation", json!({"family": family, "constraint": constraint}))
        }
        other => input_err(other),
    }
}

/// Compact JSON with sorted keys and a trailing newline.
fn emit(v: impl serde::Serialize) -> String {
    let v = serde_json::to_value(v).expect("reports serialize");
    let mut s = serde_json::to_string(&v).expect("values serialize");
    s.push('\n');
    s
}

struct Input<'a> {
    path: Option<&'a str>,
    stdin: &'a mut dyn Read,
}

impl Input<'_> {
    fn json(&mut self) -> Result<Value, Failure> {
        let text = match self.path {
            Some(p) => fs::read_to_string(p).map_err(|e| input_err(format!("{p}: {e}")))?,
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(input_err)?;
                s
            }
        };
        serde_json::from_str(&text).map_err(|e| input_err(format!("input JSON: {e}")))
    }

    fn map(&mut self) -> Result<CombinatorialMap, Failure> {
        map_from_value(&self.json()?).map_err(input_err)
    }

    fn code(&mut self) -> Result<HscCode, Failure> {
        HscCode::from_json(&self.json()?).map_err(hsc_failure)
    }
}

fn params_value(code: &HscCode, cap: Option<usize>) -> Result<Value, Failure> {
    let g = code.group().map_err(|e| rejected("stabilizer", e.to_string()))?;
    let p = g.params();
    let d = match cap {
        Some(_) if p.k == 0 => Value::Null,
        Some(cap) => match g.min_distance(cap).map_err(|e| rejected("stabilizer", e.to_string()))? {
            Distance::Exact { d, .. } => json!(d),
            Distance::AboveCap { .. } => json!("above cap"),
        },
        None => Value::Null,
    };
    Ok(json!({
        "n": p.n,
        "k": p.k,
        "d": d,
        "s_generators_given": p.s_generators_given,
        "s_independent": p.s_independent,
        "redundancies": p.redundancies,
    }))
}

fn summary_of(p: &Value) -> String {
    let d = match &p["d"] {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => "?".to_string(),
    };
    format!("[[{}, {}, {}]]", p["n"], p["k"], d)
}

fn build_code(map: &CombinatorialMap, family: &str) -> Result<HscCode, Failure> {
    match family {
        "ktc" => build_ktc(map).map_err(hsc_failure),
        "polygon" => build_polygon_code(map).map_err(hsc_failure),
        f => match f.strip_prefix("tcc:").map(str::parse::<u8>) {
            Some(Ok(class)) => build_tcc(map, class).map_err(hsc_failure),
            _ => Err(input_err(format!(
                "unknown family {f:?}; expected ktc, tcc:1, tcc:2, tcc:3 or polygon"
            ))),
        },
    }
}

fn parse_hole(s: &str, code: &HscCode) -> Result<(usize, Vec<usize>), Failure> {
    let bad = || input_err(format!("bad hole {s:?}; expected FACE or FACE:SLOT,SLOT"));
    let (face, slots): (usize, Option<Vec<usize>>) = match s.split_once(':') {
        Some((f, sl)) => (
            f.parse().map_err(|_| bad())?,
            Some(
                sl.split(',')
                    .map(|x| x.parse().map_err(|_| bad()))
                    .collect::<Result<Vec<usize>, _>>()?,
            ),
        ),
        None => (s.parse().map_err(|_| bad())?, None),
    };
    let slots = match slots {
        Some(sl) => sl,
        None => (0..code.faces.get(face).map_or(1, |fg| fg.generators.len().max(1))).collect(),
    };
    Ok((face, slots))
}

fn classify_value(map: &CombinatorialMap) -> CmdResult {
    let c = classify(map).map_err(hsc_failure)?;
    match c {
        Classification::Ktc => {
            let code = build_ktc(map).map_err(hsc_failure)?;
            let p = params_value(&code, None)?;
            let label = canonical_label_set(&code.vertex_label_set(0)).map_err(hsc_failure)?;
            let s = format!("KTC {}", summary_of(&p));
            Ok((emit(json!({"family": "KTC", "label_class": label, "params": p})), s))
        }
        Classification::Tcc { classes } => {
            let mut labels = Vec::new();
            let mut params = Value::Null;
            for &class in &classes {
                let code = build_tcc(map, class).map_err(hsc_failure)?;
                if params.is_null() {
                    params = params_value(&code, None)?;
                }
                labels.push(canonical_label_set(&code.vertex_label_set(0)).map_err(hsc_failure)?);
            }
            let s = format!("TCC classes {classes:?} {}", summary_of(&params));
            Ok((
                emit(json!({"family": "TCC", "classes": classes, "label_classes": labels, "params": params})),
                s,
            ))
        }
        Classification::PolygonCode { n, k, d } => Ok((
            emit(json!({"family": "PolygonCode", "params": {"n": n, "k": k, "d": d}})),
            format!("polygon code [[{n}, {k}, {d}]]"),
        )),
        Classification::Inadmissible(reason) => Err(inadmissible(reason)),
    }
}

fn inadmissible(reason: InadmissibleReason) -> Failure {
    if let InadmissibleReason::Rejected { rejection } = reason {
        return hsc_failure(HscError::Rejected(Box::new(rejection)));
    }
    let mut v = serde_json::to_value(&reason).expect("reasons serialize");
    let obj = v.as_object_mut().expect("reasons are objects");
    let tag = obj.remove("reason").unwrap_or(Value::Null);
    let witness = Value::Object(obj.clone());
    let mut f = rejected(tag, witness);
    if let Failure::Rejected(v, _) = &mut f {
        v["family"] = json!("Inadmissible");
    }
    f
}

fn execute(cli: &Cli, input: &mut Input) -> CmdResult {
    match &cli.command {
        Command::Gen { spec } => {
            let spec: LatticeSpec = spec.parse().map_err(input_err)?;
            let m = generate(&spec).map_err(lattice_failure)?;
            let s = format!("{spec}: V={} E={} F={} genus {}", m.vertex_count(), m.edge_count(), m.face_count(), m.genus());
            Ok((emit(map_to_value(&m)), s))
        }
        Command::Transform { kind } => {
            let m = input.map()?;
            let mut out = match kind {
                TransformKind::Dual => dual(&m),
                TransformKind::Medial => {
                    let md = medial(&m);
                    let types: Vec<&str> = (0..md.map.face_count())
                        .map(|f| if md.is_cycle_type(f) { "cycle" } else { "cut" })
                        .collect();
                    let mut out = md.map;
                    out.meta.insert("face_types".to_string(), json!(types));
                    out
                }
            };
            let name = match kind {
                TransformKind::Dual => "dual",
                TransformKind::Medial => "medial",
            };
            out.meta.insert("transform".to_string(), json!(name));
            let s = format!("{name}: V={} E={} F={}", out.vertex_count(), out.edge_count(), out.face_count());
            Ok((emit(map_to_value(&out)), s))
        }
        Command::Color { palette } => {
            let m = input.map()?;
            let palette = match (palette, m.regular_valence()) {
                (Some(p), _) => *p,
                (None, Some(3)) => 3,
                _ => 2,
            };
            match face_coloring(&m, palette) {
                Ok(c) => {
                    let names: Vec<&str> = c.colors.iter().map(|c| c.name()).collect();
                    Ok((emit(json!({"palette": palette, "colors": names})), format!("{palette}-colorable")))
                }
                Err(ColoringError::NotColorable(w)) => Err(rejected(
                    "not_colorable",
                    serde_json::to_value(w).expect("witnesses serialize"),
                )),
                Err(e) => Err(rejected("wrong_valence", e.to_string())),
            }
        }
        Command::Homology => {
            let m = input.map()?;
            let sp = cycle_cut_spaces(&m).map_err(|e| rejected("disconnected", e.to_string()))?;
            let gens: Vec<Vec<usize>> = homology_generators(&m)
                .map_err(|e| rejected("disconnected", e.to_string()))?
                .iter()
                .map(|v| (0..v.len()).filter(|&i| v.get(i)).collect())
                .collect();
            let (chi, genus) = m.euler_genus().map_err(input_err)?;
            let s = format!("b1 = {} (genus {genus})", sp.b1);
            Ok((
                emit(json!({
                    "V": m.vertex_count(), "E": m.edge_count(), "F": m.face_count(),
                    "euler_characteristic": chi, "genus": genus,
                    "cycle_dimension": sp.cycles.dimension(), "cut_dimension": sp.cuts.dimension(),
                    "facial_rank": sp.facial_rank, "b1": sp.b1, "generators": gens,
                })),
                s,
            ))
        }
        Command::Check => {
            let code = input.code()?;
            check_code(&code).map_err(|r| hsc_failure(HscError::Rejected(Box::new(r))))?;
            let p = params_value(&code, None)?;
            let s = format!("admissible {}", summary_of(&p));
            Ok((emit(json!({"admissible": true, "params": p})), s))
        }
        Command::Build { family } => {
            let m = input.map()?;
            let code = build_code(&m, family)?;
            let s = format!("{} on {} qubits", code.family, code.num_qubits());
            Ok((emit(code.to_json()), s))
        }
        Command::Params { distance_cap } => {
            let code = input.code()?;
            let p = params_value(&code, *distance_cap)?;
            let s = summary_of(&p);
            Ok((emit(p), s))
        }
        Command::Punch { holes } => {
            let code = input.code()?;
            let mut p = PuncturedCode::new(code.clone());
            for h in holes {
                let (face, slots) = parse_hole(h, &code)?;
                p = p.puncture(face, &slots).map_err(feature_failure)?;
            }
            let count = hole_logical_count(&p).map_err(feature_failure)?;
            let s = format!("k: {} -> {} (formula {})", count.base_k, count.rank_k, count.formula_k);
            let mut v = serde_json::to_value(&count).expect("reports serialize");
            v["removed"] = json!(p.removed.iter().collect::<Vec<_>>());
            Ok((emit(v), s))
        }
        Command::Boundary { spec } => {
            let spec: LatticeSpec = spec.parse().map_err(input_err)?;
            let bs = BoundarySpec::try_from(&spec).map_err(feature_failure)?;
            let patch = build_boundary_patch(&bs).map_err(feature_failure)?;
            let count = boundary_logical_count(&patch).map_err(feature_failure)?;
            let mut v = serde_json::to_value(&count).expect("reports serialize");
            v["segments"] = serde_json::to_value(&patch.segments).expect("segments serialize");
            v["digons"] = json!(patch.digons);
            v["n"] = json!(patch.code.num_qubits());
            let s = format!("{} boundaries, k = {}", count.boundaries, count.rank_k);
            Ok((emit(v), s))
        }
        Command::Density { m } => {
            let map = input.map()?;
            let policy = m.map_or(DensityPolicy::MaxAdmissible, DensityPolicy::Uniform);
            let r = density_analysis(&map, policy).map_err(feature_failure)?;
            let s = format!("density {} ({:?})", r.density, r.verdict);
            Ok((emit(r), s))
        }
        Command::Favg {
            valence,
            genus,
            vertices,
        } => {
            let fam = if valence == "3" { ValenceFamily::Three } else { ValenceFamily::Four };
            let r = favg_analysis(fam, *genus, *vertices).map_err(feature_failure)?;
            let s = format!("F_avg = {}", r.f_avg);
            Ok((emit(r), s))
        }
        Command::Classify => {
            let m = input.map()?;
            classify_value(&m)
        }
        Command::ExportDot { color } => {
            let v = input.json()?;
            let m = map_from_value(&v).map_err(input_err)?;
            let coloring = if *color {
                let palette = if m.regular_valence() == Some(3) { 3 } else { 2 };
                face_coloring(&m, palette).ok()
            } else {
                None
            };
            Ok((export_dot(&m, coloring.as_ref()), "DOT written".to_string()))
        }
        Command::Twist => {
            let code = input.code()?;
            let r = twist_sites(&code).map_err(feature_failure)?;
            let s = format!("{} twist sites", r.sites.len());
            Ok((emit(r), s))
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                Outcome { exit_code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut input = Input {
        path: cli.input.as_deref(),
        stdin,
    };
    let (exit_code, out, summary) = match execute(&cli, &mut input) {
        Ok((out, s)) => (0, out, s),
        Err(Failure::Rejected(v, s)) => (1, emit(v), s),
        Err(Failure::Input(s)) => (2, String::new(), format!("error: {s}")),
    };
    let mut stderr = String::new();
    if exit_code == 2 || !cli.json_only {
        stderr = format!("{summary}\n");
    }
    match &cli.output {
        Some(path) if exit_code != 2 => match fs::write(path, &out) {
            Ok(()) => Outcome { exit_code, stdout: String::new(), stderr },
            Err(e) => Outcome { exit_code: 2, stdout: String::new(), stderr: format!("error: {path}: {e}\n") },
        },
        _ => Outcome { exit_code, stdout: out, stderr },
    }
}
