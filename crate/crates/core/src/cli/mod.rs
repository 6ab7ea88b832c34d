//! Command-line front end: argument parsing, task dispatch and reports.
//!
//! Every task writes a JSON report (to `--out`, else stdout) and a short
//! human summary on stderr. Without `--verbose` the report is a pure function
//! of manifest, flags and seed. Exit codes: 0 success, 1 computational failure,
//! 2 input error.

pub mod formats;
pub mod manifest;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::blocks::{block_of, cartan_matrix, central_idempotents, pims};
use crate::chop::{chop, iso_irr, spin, IrrCertificate};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Mat};
use crate::green::{green_correspondent, trivial_source_census, trivial_source_test, vertex};
use crate::perm::small::sylow_small;
use crate::perm::Subgroup;
use crate::prng::Prng;
use crate::rep::{end_space, hom_space, induce, Rep};
use crate::structure::{algebra_radical, end_algebra, indec_decompose, loewy};
use manifest::{Context, Overrides};

#[derive(Parser, Debug)]
#[command(name = "modrep", version, about = "Modular representations of small finite groups over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for all randomized steps (overrides the manifest).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Field as q or p^e (overrides the manifest).
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Size cap for regular modules built from the manifest.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timings to the report and the summary.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Composition factors with multiplicities.
    Chop(Task),
    /// Submodule generated by a vector (--vector).
    Spin(Task),
    /// Socle series.
    Socle(Task),
    /// Radical series.
    Radical(Task),
    /// Indecomposable direct summands.
    Decompose(Task),
    /// Hom space between --module and --other.
    Hom(Task),
    /// Endomorphism ring and its radical.
    End(Task),
    /// Tensor product of --module and --other.
    Tensor(Task),
    /// Dual module.
    Dual(Task),
    /// Restriction to --subgroup.
    Restrict(Task),
    /// Induction from --subgroup (the module lives on that subgroup).
    Induce(Task),
    /// Vertex with respect to the Sylow subgroup --subgroup.
    Vertex(Task),
    /// Green correspondent in --normalizer for vertex --subgroup.
    Green(Task),
    /// Trivial-source test against --subgroup, or a census with --census.
    Trivsrc(Task),
    /// Block idempotents of the group algebra.
    Blocks(Task),
    /// Cartan matrix from the PIMs of a projective module (default: regular).
    Cartan(Task),
    /// Group and subgroup orders.
    Order(Task),
    /// Run the acceptance checks on the shipped fixtures.
    Selftest,
}

#[derive(Args, Debug, Clone)]
pub struct Task {
    /// Manifest file.
    pub manifest: PathBuf,
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub other: Option<String>,
    #[arg(long)]
    pub subgroup: Option<String>,
    #[arg(long)]
    pub normalizer: Option<String>,
    /// Space-separated vector entries (spin).
    #[arg(long)]
    pub vector: Option<String>,
    /// Classify all summands of the permutation modules on task.sources (trivsrc).
    #[arg(long)]
    pub census: bool,
}

/// A finished report.
pub struct Report {
    pub json: Value,
    pub summary: Vec<String>,
    /// Nonzero when the task ran but its checks failed (selftest).
    pub exit_code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

pub fn mat_json(m: &Mat) -> Value {
    Value::Array(m.row_iter().map(|r| json!(r)).collect())
}

fn maps_json(ms: &[Mat]) -> Value {
    Value::Array(ms.iter().map(mat_json).collect())
}

fn cert_json(c: &IrrCertificate) -> Value {
    json!({
        "element": mat_json(&c.element),
        "factor": c.factor.coeffs(),
        "vector": c.vector,
        "dual_vector": c.dual_vector,
    })
}

/// Largest module whose generator matrices are embedded in a report.
pub const EMBED_DIM_LIMIT: usize = 256;

fn module_json(m: &Rep) -> Value {
    let gens = if m.dim() <= EMBED_DIM_LIMIT { maps_json(m.gens()) } else { Value::Null };
    json!({ "label": m.label(), "dim": m.dim(), "generators": gens })
}

/// Label of a simple module among `simples`, if isomorphic to one of them.
fn simple_label(m: &Rep, simples: Option<&[Rep]>) -> Result<Option<String>> {
    for s in simples.unwrap_or(&[]) {
        if s.dim() == m.dim() && iso_irr(s, m)? {
            return Ok(s.label().map(str::to_string));
        }
    }
    Ok(None)
}

struct Run<'a> {
    cli: &'a Cli,
    task: &'a Task,
    ctx: Context,
}

impl Run<'_> {
    fn pick(&self, flag: &Option<String>, key: &str) -> Result<String> {
        flag.clone()
            .or_else(|| self.ctx.task.get(key).cloned())
            .ok_or_else(|| Error::Input(format!("no --{key} given and the manifest has no task.{key}")))
    }
    fn module(&self) -> Result<Rep> {
        self.ctx.module(&self.pick(&self.task.module, "module")?)
    }
    fn other(&self) -> Result<Rep> {
        self.ctx.module(&self.pick(&self.task.other, "other")?)
    }
    fn subgroup(&self) -> Result<Subgroup> {
        self.ctx.subgroup(&self.pick(&self.task.subgroup, "subgroup")?)
    }
    fn normalizer(&self) -> Result<Subgroup> {
        self.ctx.subgroup(&self.pick(&self.task.normalizer, "normalizer")?)
    }
    fn simples(&self) -> Result<&[Rep]> {
        self.ctx.simples.as_deref().ok_or_else(|| Error::Input("this task needs 'simples' in the manifest".into()))
    }
    fn rng(&self) -> Prng {
        Prng::new(self.ctx.seed)
    }
    fn sylow(&self) -> Result<Subgroup> {
        match self.task.subgroup.clone().or_else(|| self.ctx.task.get("subgroup").cloned()) {
            Some(s) => self.ctx.subgroup(&s),
            None => sylow_small(&self.ctx.group, self.ctx.field.p()),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let task = match &cli.command {
        Command::Selftest => return crate::selftest::report(cli.verbose),
        Command::Chop(t)
        | Command::Spin(t)
        | Command::Socle(t)
        | Command::Radical(t)
        | Command::Decompose(t)
        | Command::Hom(t)
        | Command::End(t)
        | Command::Tensor(t)
        | Command::Dual(t)
        | Command::Restrict(t)
        | Command::Induce(t)
        | Command::Vertex(t)
        | Command::Green(t)
        | Command::Trivsrc(t)
        | Command::Blocks(t)
        | Command::Cartan(t)
        | Command::Order(t) => t,
    };
    let start = Instant::now();
    let over = Overrides { field: cli.field.clone(), seed: cli.seed, cap: cli.cap };
    let ctx = Context::load(&task.manifest, &over)?;
    let load_time = start.elapsed();
    let r = Run { cli, task, ctx };
    let name = format!("{:?}", cli.command).split('(').next().unwrap_or("").to_lowercase();
    let mut summary = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    let (inputs, results, certificates) = dispatch(&r, &mut summary, &mut warnings)?;
    let total_time = start.elapsed();
    let mut json = json!({
        "task": name,
        "manifest": task.manifest.display().to_string(),
        "seed": r.ctx.seed,
        "field": r.ctx.field.name(),
        "group": {
            "source": r.ctx.group_name,
            "degree": r.ctx.group.degree(),
            "order": r.ctx.group.order().to_string(),
        },
        "inputs": inputs,
        "results": results,
        "certificates": certificates,
        "warnings": warnings,
    });
    // Wall-clock times break byte-identical reports, so they are opt-in.
    if cli.verbose {
        json["timings"] = json!({
            "manifest_seconds": load_time.as_secs_f64(),
            "total_seconds": total_time.as_secs_f64(),
        });
        summary.push(format!("manifest {load_time:.2?}, total {total_time:.2?}"));
    }
    Ok(Report { json, summary, exit_code: 0 })
}

type Parts = (Value, Value, Value);

fn dispatch(r: &Run, summary: &mut Vec<String>, warnings: &mut Vec<String>) -> Result<Parts> {
    let ctx = &r.ctx;
    match &r.cli.command {
        Command::Chop(_) => {
            let m = r.module()?;
            let res = chop(&m, &mut r.rng())?;
            warnings.extend(res.warnings.iter().cloned());
            let reps: Vec<Rep> = res.factors.iter().map(|f| f.irr.rep.clone()).collect();
            let canon = manifest::canonical_labels(reps.clone());
            let mut factors = Vec::new();
            let mut certs = Vec::new();
            let mut parts = Vec::new();
            for f in &res.factors {
                let label = match simple_label(&f.irr.rep, ctx.simples.as_deref())? {
                    Some(l) => l,
                    None => {
                        let c = canon
                            .iter()
                            .find(|c| c.dim() == f.irr.rep.dim() && iso_irr(c, &f.irr.rep).unwrap_or(false));
                        c.and_then(|c| c.label()).unwrap_or("?").to_string()
                    }
                };
                parts.push(format!("{label}:{}", f.multiplicity));
                factors.push(json!({
                    "label": label,
                    "dim": f.irr.rep.dim(),
                    "multiplicity": f.multiplicity,
                    "splitting": f.irr.is_splitting,
                }));
                certs.push(json!({ "label": label, "irreducibility": cert_json(&f.irr.certificate) }));
            }
            let mut order: Vec<usize> = (0..factors.len()).collect();
            order.sort_by_key(|&i| {
                (res.factors[i].irr.rep.dim(), factors[i]["label"].as_str().unwrap_or("").to_string())
            });
            let factors: Vec<Value> = order.iter().map(|&i| factors[i].clone()).collect();
            let certs: Vec<Value> = order.iter().map(|&i| certs[i].clone()).collect();
            let parts: Vec<String> = order.iter().map(|&i| parts[i].clone()).collect();
            summary.push(format!("{} (dim {}): {{{}}}", m.label().unwrap_or("module"), m.dim(), parts.join(", ")));
            Ok((
                json!({"module": module_json_short(&m)}),
                json!({"factors": factors, "total_dim": res.total_dim()}),
                json!(certs),
            ))
        }
        Command::Spin(t) => {
            let m = r.module()?;
            let text = t.vector.clone().ok_or_else(|| Error::Input("spin needs --vector".into()))?;
            let v = parse_vector(&text, &m)?;
            let s = spin(&m, std::slice::from_ref(&v));
            summary.push(format!("submodule generated by the vector has dimension {}", s.rows()));
            Ok((
                json!({"module": module_json_short(&m), "vector": v}),
                json!({"dim": s.rows(), "basis": mat_json(&s)}),
                Value::Null,
            ))
        }
        Command::Socle(_) | Command::Radical(_) => {
            let m = r.module()?;
            let l = loewy(&m, r.simples()?)?;
            let socle = matches!(r.cli.command, Command::Socle(_));
            let (strings, layers) =
                if socle { (l.socle_strings(), &l.socle_layers) } else { (l.radical_strings(), &l.radical_layers) };
            summary.push(format!("{} series: {}", if socle { "socle" } else { "radical" }, strings.join(" / ")));
            Ok((
                json!({"module": module_json_short(&m), "simples": l.labels}),
                json!({"layers_top_to_bottom": strings, "multiplicities": layers, "loewy_length": layers.len()}),
                Value::Null,
            ))
        }
        Command::Decompose(_) => {
            let m = r.module()?;
            let d = indec_decompose(&m, &mut r.rng())?;
            if !d.verify(&m)? {
                return Err(Error::Theory("decomposition failed verification".into()));
            }
            let mut out = Vec::new();
            for s in &d.summands {
                let label = simple_label(&s.rep, ctx.simples.as_deref())?;
                let layers = match ctx.simples.as_deref() {
                    Some(simples) => loewy(&s.rep, simples).ok().map(|l| l.radical_strings()),
                    None => None,
                };
                out.push(json!({
                    "dim": s.rep.dim(),
                    "multiplicity": s.multiplicity,
                    "label": label,
                    "radical_layers": layers,
                    "end_dim": s.certificate.end_dim,
                    "end_radical_dim": s.certificate.rad_dim,
                }));
            }
            let dims: Vec<String> = d.dims().iter().map(|(a, b)| format!("{a}x{b}")).collect();
            summary.push(format!("{} = sum of indecomposables {}", m.label().unwrap_or("module"), dims.join(" + ")));
            Ok((
                json!({"module": module_json_short(&m)}),
                json!({"summands": out}),
                json!({"change_of_basis": mat_json(&d.basis()?)}),
            ))
        }
        Command::Hom(_) => {
            let (a, b) = (r.module()?, r.other()?);
            let h = hom_space(&a, &b)?;
            summary.push(format!("dim Hom({}, {}) = {}", a.label().unwrap_or("M"), b.label().unwrap_or("N"), h.dim()));
            Ok((
                json!({"source": module_json_short(&a), "target": module_json_short(&b)}),
                json!({"dim": h.dim(), "basis": maps_json(h.maps())}),
                Value::Null,
            ))
        }
        Command::End(_) => {
            let m = r.module()?;
            let a = end_algebra(&m)?;
            let j = algebra_radical(&a)?;
            let top = a.dim() - j.dim();
            let local = j.factor_dims.iter().all(|&d| d == top);
            summary.push(format!("dim End = {}, dim J(End) = {}, local: {}", a.dim(), j.dim(), local));
            let basis = end_space(&m)?;
            Ok((
                json!({"module": module_json_short(&m)}),
                json!({"dim": a.dim(), "radical_dim": j.dim(), "local": local, "regular_factor_dims": j.factor_dims}),
                json!({"basis": maps_json(basis.maps()), "radical_coordinates": mat_json(&j.basis)}),
            ))
        }
        Command::Tensor(_) | Command::Dual(_) | Command::Restrict(_) | Command::Induce(_) => {
            let m = r.module()?;
            let (out, what) = match &r.cli.command {
                Command::Tensor(_) => (m.tensor(&r.other()?)?, "tensor product"),
                Command::Dual(_) => (m.dual()?, "dual"),
                Command::Restrict(_) => (m.restrict(&r.subgroup()?)?, "restriction"),
                _ => {
                    let name = r.pick(&r.task.module, "module")?;
                    let sub = match (&r.task.subgroup, ctx.module_home.get(&name)) {
                        (Some(s), _) => ctx.subgroup(s)?,
                        (None, Some(h)) => ctx.subgroup(h)?,
                        (None, None) => r.subgroup()?,
                    };
                    (induce(&m, &sub)?.rep, "induced module")
                }
            };
            if out.dim() > EMBED_DIM_LIMIT {
                warnings.push(format!(
                    "generators of the {}-dimensional result are not embedded (limit {EMBED_DIM_LIMIT})",
                    out.dim()
                ));
            }
            summary.push(format!("{what} has dimension {}", out.dim()));
            Ok((json!({"module": module_json_short(&m)}), json!({"module": module_json(&out)}), Value::Null))
        }
        Command::Vertex(_) => {
            let m = r.module()?;
            let syl = r.sylow()?;
            let v = vertex(&m, &syl)?;
            let tested: Vec<Value> = v
                .tested
                .iter()
                .map(|t| {
                    json!({
                        "order": t.order,
                        "generators": t.subgroup.group().gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "projective": t.projective,
                    })
                })
                .collect();
            summary.push(format!("vertex orders (minimal relatively projective subgroups): {:?}", v.vertex_orders()));
            Ok((
                json!({"module": module_json_short(&m), "sylow_order": syl.order().to_string()}),
                json!({"tested": tested, "minimal": v.minimal, "vertex_orders": v.vertex_orders(), "monotone": v.is_monotone()}),
                Value::Null,
            ))
        }
        Command::Green(_) => {
            let m = r.module()?;
            let p = r.subgroup()?;
            let n = r.normalizer()?;
            let gr = green_correspondent(&m, &p, &n, &mut r.rng())?;
            let local = ctx.local_simples.as_deref();
            let mut out = Vec::new();
            for (k, s) in gr.summands.iter().enumerate() {
                let label = simple_label(&s.rep, local)?;
                let layers = local.and_then(|l| loewy(&s.rep, l).ok()).map(|l| l.radical_strings());
                if k == gr.correspondent {
                    let name = label
                        .clone()
                        .or_else(|| layers.as_ref().map(|l| l.join("/")))
                        .unwrap_or_else(|| format!("dim {}", s.rep.dim()));
                    summary.push(format!("Green correspondent of {}: {}", m.label().unwrap_or("module"), name));
                }
                out.push(json!({
                    "dim": s.rep.dim(),
                    "multiplicity": s.multiplicity,
                    "vertex_orders": s.vertex_orders,
                    "label": label,
                    "radical_layers": layers,
                }));
            }
            Ok((
                json!({"module": module_json_short(&m), "vertex_order": p.order().to_string(), "normalizer_order": n.order().to_string(),
                       "labels": "H' linear simples: 1d is the one on which (0 1)(6 7) acts trivially"}),
                json!({"summands": out, "correspondent": gr.correspondent}),
                json!({"correspondent": module_json(gr.correspondent())}),
            ))
        }
        Command::Trivsrc(t) => {
            if t.census {
                let syl = r.sylow()?;
                let names = ctx.task.get("sources").ok_or_else(|| Error::Input("census needs task.sources".into()))?;
                let sources = names.split_whitespace().map(|s| ctx.subgroup(s)).collect::<Result<Vec<_>>>()?;
                let census = trivial_source_census(&ctx.group, &ctx.field, &syl, &sources, &mut r.rng())?;
                let mut out = Vec::new();
                for c in &census {
                    let layers =
                        ctx.simples.as_deref().and_then(|s| loewy(&c.rep, s).ok()).map(|l| l.radical_strings());
                    out.push(json!({
                        "dim": c.rep.dim(),
                        "vertex_order": c.vertex.order().to_string(),
                        "trivial_source": c.trivial_source,
                        "radical_layers": layers,
                    }));
                }
                summary.push(format!("{} pairwise non-isomorphic indecomposable summands", census.len()));
                return Ok((json!({"sources": names}), json!({"modules": out, "count": census.len()}), Value::Null));
            }
            let m = r.module()?;
            let q = r.subgroup()?;
            let ok = trivial_source_test(&m, &q)?;
            summary.push(format!("summand of the permutation module on the cosets of the subgroup: {ok}"));
            Ok((
                json!({"module": module_json_short(&m), "subgroup_order": q.order().to_string()}),
                json!({"trivial_source": ok}),
                Value::Null,
            ))
        }
        Command::Blocks(_) => {
            let bd = central_idempotents(&ctx.group, &ctx.field)?;
            let mut simples_out = Vec::new();
            if let Some(s) = ctx.simples.as_deref() {
                for x in s {
                    simples_out.push(json!({"label": x.label(), "dim": x.dim(), "block": block_of(x, &bd)?}));
                }
            }
            let classes: Vec<Value> = bd
                .partition
                .classes
                .iter()
                .map(|c| json!({"representative": c.rep.to_string(), "size": c.size}))
                .collect();
            summary.push(format!("{} blocks; principal block index {}", bd.len(), bd.principal));
            Ok((
                Value::Null,
                json!({"blocks": bd.len(), "principal": bd.principal, "simples": simples_out, "axioms_hold": bd.check_axioms()}),
                json!({"classes": classes, "idempotents": bd.idempotents}),
            ))
        }
        Command::Cartan(_) => {
            let simples = r.simples()?;
            let src = match r.task.module.clone().or_else(|| ctx.task.get("module").cloned()) {
                Some(n) => ctx.module(&n)?,
                None => Rep::regular(&ctx.group, &ctx.field, ctx.cap.unwrap_or(100_000))?,
            };
            let bd = central_idempotents(&ctx.group, &ctx.field)?;
            let block = block_of(&simples[0], &bd)?;
            let ps = pims(&bd, block, &src, simples, &mut r.rng())?.complete()?;
            let c = cartan_matrix(&ps, simples)?;
            let labels: Vec<Option<&str>> = simples.iter().map(|s| s.label()).collect();
            for (row, l) in c.iter().zip(&labels) {
                summary.push(format!("P({}): {:?}", l.unwrap_or("?"), row));
            }
            Ok((
                json!({"source": module_json_short(&src), "simples": labels, "orientation": "row T lists the multiplicities of each simple in P(T)"}),
                json!({"cartan": c, "pim_dims": ps.iter().map(|p| p.dim()).collect::<Vec<_>>()}),
                Value::Null,
            ))
        }
        Command::Order(_) => {
            let subs: Vec<Value> = ctx
                .subgroups
                .iter()
                .map(|(n, s)| json!({"name": n, "order": s.order().to_string(), "index": s.index().to_string()}))
                .collect();
            summary.push(format!("|G| = {}", ctx.group.order()));
            Ok((Value::Null, json!({"order": ctx.group.order().to_string(), "subgroups": subs}), Value::Null))
        }
        Command::Selftest => unreachable!("handled in run"),
    }
}

fn module_json_short(m: &Rep) -> Value {
    json!({ "label": m.label(), "dim": m.dim() })
}

fn parse_vector(text: &str, m: &Rep) -> Result<Vec<Elem>> {
    let v = text
        .split_whitespace()
        .map(|t| t.parse::<u32>().ok().filter(|&x| x < m.field().q()).map(|x| x as Elem))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Input(format!("bad vector '{text}'")))?;
    if v.len() != m.dim() {
        return Err(Error::Input(format!("vector has {} entries, module has dimension {}", v.len(), m.dim())));
    }
    Ok(v)
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match run(&cli) {
        Ok(rep) => {
            let text = serde_json::to_string_pretty(&rep.json).expect("json") + "\n";
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            for l in &rep.summary {
                eprintln!("{l}");
            }
            rep.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
