//! Acceptance checks on the shipped fixtures. Each check recomputes its
//! result from scratch and compares it with the expected values.
//!
//! The optional 2.HS check reads user-supplied data from the directory named
//! by `MODREP_2HS_DIR`:
//! - `gens.perm`: the two standard generators on 704 points
//! - `s4.mtx`: the two generator matrices of the 56-dimensional faithful simple S4
//! - `a8.words`: one word per line in `g1`, `g2` generating the fixed subgroup A8
//!
//! Any format accepted by the file readers works (native or compatibility).

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::blocks::{block_of, cartan_matrix, central_idempotents, pims};
use crate::chop::{chop, iso_irr};
use crate::cli::formats::{parse_matrices, parse_perms};
use crate::cli::Report;
use crate::error::{Error, Result};
use crate::ffield::{Field, Mat};
use crate::fixtures::{a8_fixture, a8_simples, c4h_fixture, c4h_simples, h_fixture, h_simples};
use crate::green::{green_correspondent, has_full_vertex, higman_test, trivial_source_census, vertex};
use crate::perm::small::all_subgroups;
use crate::perm::{Group, Subgroup, Word};
use crate::prng::Prng;
use crate::rep::{hom_space, induce, Rep};
use crate::structure::{end_algebra, indec_decompose, loewy};

pub const DATA_ENV: &str = "MODREP_2HS_DIR";

/// Cartan matrix of kH' over GF(9), rows and columns ordered 1a 1b 1c 1d 2.
pub const CARTAN_H: [[usize; 5]; 5] =
    [[3, 0, 1, 1, 2], [0, 3, 1, 1, 2], [1, 1, 3, 0, 2], [1, 1, 0, 3, 2], [2, 2, 2, 2, 5]];

/// Radical layers of the PIMs of kH' (top first); their socle layers agree.
pub const PIM_LAYERS: [&[&str]; 5] = [
    &["[1a]", "[2]", "[1a 1c 1d]", "[2]", "[1a]"],
    &["[1b]", "[2]", "[1b 1c 1d]", "[2]", "[1b]"],
    &["[1c]", "[2]", "[1a 1b 1c]", "[2]", "[1c]"],
    &["[1d]", "[2]", "[1a 1b 1d]", "[2]", "[1d]"],
    &["[2]", "[1a 1b 1c 1d]", "[2 2 2]", "[1a 1b 1c 1d]", "[2]"],
];

/// Trivial source kH'-modules with a vertex of order 3, as radical layers.
pub const CYCLIC_VERTEX_LAYERS: [[&str; 3]; 8] = [
    ["[1a 1d]", "[2]", "[1a 1d]"],
    ["[1b 1c]", "[2]", "[1b 1c]"],
    ["[2]", "[1a 1d]", "[2]"],
    ["[2]", "[1b 1c]", "[2]"],
    ["[1a 1c]", "[2]", "[1a 1c]"],
    ["[1b 1d]", "[2]", "[1b 1d]"],
    ["[2]", "[1a 1c]", "[2]"],
    ["[2]", "[1b 1d]", "[2]"],
];

/// Green correspondents of the A8 simples 1, 7, 13, 28, 35 over H'.
pub const GREEN_A8: [&[&str]; 5] = [&["[1a]"], &["[1b]"], &["[1c]", "[2]", "[1c]"], &["[1d]"], &["[2]"]];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Duration,
    run: fn() -> Result<Outcome>,
}

/// What a check found, with a one-line detail.
enum Outcome {
    Match(String),
    Mismatch(String),
    Skip(String),
}

pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, run| Criterion { id, name, budget: Duration::from_secs(secs), run };
    vec![
        c(1, "Cartan matrix of kH'", 5, cartan as fn() -> Result<Outcome>),
        c(2, "chop of the regular kH'-module", 5, regular_chop),
        c(3, "Loewy series of the PIMs of kH'", 10, pim_loewy),
        c(4, "trivial source census of H'", 60, census),
        c(5, "simple modules of A8 in characteristic 3", 120, a8_simples_check),
        c(6, "vertices of the A8 and H' simples", 600, vertices),
        c(7, "Green correspondents (A8, P, H')", 300, green),
        c(8, "blocks of k[C4 x H']", 60, c4h_blocks),
        c(9, "property suites", 120, properties),
        c(10, "2.HS restriction to A8 (needs user data)", 600, two_hs),
    ]
}

pub fn run_one(c: &Criterion) -> CheckResult {
    let start = Instant::now();
    let out = (c.run)();
    let elapsed = start.elapsed();
    let (mut status, mut detail) = match out {
        Ok(Outcome::Match(d)) => (Status::Pass, d),
        Ok(Outcome::Mismatch(d)) => (Status::Fail, d),
        Ok(Outcome::Skip(d)) => (Status::Skipped, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    if status == Status::Pass && elapsed > c.budget {
        status = Status::Fail;
        detail = format!("{detail}; took {elapsed:.1?}, target {:?}", c.budget);
    }
    CheckResult { id: c.id, name: c.name, status, detail, elapsed, budget: c.budget }
}

pub fn format_line(r: &CheckResult) -> String {
    format!("[{}] {:>2}. {} ({:.1?}): {}", r.status.as_str(), r.id, r.name, r.elapsed, r.detail)
}

/// Report for the `selftest` subcommand; exit code 1 if any check fails.
pub fn report(verbose: bool) -> Result<Report> {
    let mut results = Vec::new();
    let mut summary = Vec::new();
    for c in criteria() {
        let r = run_one(&c);
        let line = format_line(&r);
        if verbose {
            eprintln!("{line}");
        }
        summary.push(line);
        results.push(r);
    }
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let checks: Vec<Value> = results
        .iter()
        .map(|r| json!({"criterion": r.id, "name": r.name, "status": r.status.as_str(), "detail": r.detail}))
        .collect();
    let json = json!({"task": "selftest", "results": {"checks": checks, "failed": failed}});
    if verbose {
        // already streamed
        summary.clear();
    }
    Ok(Report { json, summary, exit_code: if failed > 0 { 1 } else { 0 } })
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Match(detail)
    } else {
        Outcome::Mismatch(detail)
    }
}

fn gf9() -> Field {
    Field::from_order(9).expect("GF(9)")
}

fn gf3() -> Field {
    Field::prime(3).expect("GF(3)")
}

/// Index of the simple isomorphic to `m`.
fn which_simple(m: &Rep, simples: &[Rep]) -> Result<Option<usize>> {
    for (i, s) in simples.iter().enumerate() {
        if s.dim() == m.dim() && iso_irr(s, m)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// PIMs of kH' keyed by their top, from the regular module.
fn h_pims(f: &Field, simples: &[Rep], seed: u64) -> Result<Vec<Rep>> {
    let hf = h_fixture();
    let reg = Rep::regular(&hf.h, f, 1000)?;
    let dec = indec_decompose(&reg, &mut Prng::new(seed))?;
    let mut out = Vec::new();
    for s in simples {
        let mut found = None;
        for x in &dec.summands {
            if hom_space(&x.rep, s)?.dim() > 0 {
                found = Some(x.rep.clone());
                break;
            }
        }
        out.push(found.ok_or_else(|| Error::Theory(format!("no PIM with top {}", s.label().unwrap_or("?"))))?);
    }
    Ok(out)
}

fn cartan() -> Result<Outcome> {
    let hf = h_fixture();
    let f = gf9();
    let simples = h_simples(&hf, &f)?;
    let bd = central_idempotents(&hf.h, &f)?;
    let reg = Rep::regular(&hf.h, &f, 1000)?;
    let ps = pims(&bd, bd.principal, &reg, &simples, &mut Prng::new(4))?.complete()?;
    let c = cartan_matrix(&ps, &simples)?;
    let want: Vec<Vec<usize>> = CARTAN_H.iter().map(|r| r.to_vec()).collect();
    Ok(verdict(c == want, format!("{c:?}")))
}

fn regular_chop() -> Result<Outcome> {
    let hf = h_fixture();
    let f = gf9();
    let simples = h_simples(&hf, &f)?;
    let reg = Rep::regular(&hf.h, &f, 1000)?;
    let res = chop(&reg, &mut Prng::new(0))?;
    let mut got = BTreeMap::new();
    for x in &res.factors {
        let i =
            which_simple(&x.irr.rep, &simples)?.ok_or_else(|| Error::Theory("factor is not a known simple".into()))?;
        *got.entry(simples[i].label().unwrap_or("?").to_string()).or_insert(0) += x.multiplicity;
    }
    // multiplicity of S in the regular module is sum over T of dim T * c(T,S)
    let mut want = BTreeMap::new();
    for (s, label) in simples.iter().enumerate() {
        let m: usize = simples.iter().enumerate().map(|(t, st)| st.dim() * CARTAN_H[t][s]).sum();
        want.insert(label.label().unwrap_or("?").to_string(), m);
    }
    let total: usize = res.factors.iter().map(|x| x.irr.rep.dim() * x.multiplicity).sum();
    Ok(verdict(got == want && total == 72, format!("{got:?}, total dimension {total}")))
}

fn pim_loewy() -> Result<Outcome> {
    let f = gf9();
    let simples = h_simples(&h_fixture(), &f)?;
    let ps = h_pims(&f, &simples, 7)?;
    let mut bad = Vec::new();
    for (p, want) in ps.iter().zip(PIM_LAYERS) {
        let l = loewy(p, &simples)?;
        if l.radical_strings() != want || l.socle_strings() != want {
            bad.push(format!("P({}): radical {:?}, socle {:?}", want[0], l.radical_strings(), l.socle_strings()));
        }
    }
    Ok(verdict(bad.is_empty(), if bad.is_empty() { "all five PIMs match".into() } else { bad.join("; ") }))
}

fn census() -> Result<Outcome> {
    let hf = h_fixture();
    let f = gf9();
    let triv = Subgroup::from_perms(&hf.h, vec![])?;
    let sources = [hf.p.clone(), hf.q.clone(), hf.r.clone(), triv];
    let found = trivial_source_census(&hf.h, &f, &hf.p, &sources, &mut Prng::new(13))?;
    let count = |o: u128| found.iter().filter(|m| m.vertex.order() == o).count();
    let (n9, n3, n1) = (count(9), count(3), count(1));
    let simples = h_simples(&hf, &f)?;
    let mut got: Vec<Vec<String>> = Vec::new();
    for m in found.iter().filter(|m| m.vertex.order() == 3) {
        got.push(loewy(&m.rep, &simples)?.radical_strings());
    }
    got.sort();
    let mut want: Vec<Vec<String>> =
        CYCLIC_VERTEX_LAYERS.iter().map(|l| l.iter().map(|s| s.to_string()).collect()).collect();
    want.sort();
    let ok = found.len() == 18 && (n1, n9, n3) == (5, 5, 8) && found.iter().all(|m| m.trivial_source) && got == want;
    Ok(verdict(ok, format!("{} modules: {n1} projective, {n9} with vertex P, {n3} with cyclic vertex", found.len())))
}

fn a8_simples_check() -> Result<Outcome> {
    let a = a8_fixture();
    let f = gf3();
    let s = a8_simples(&a.g, &f)?;
    let dims: Vec<usize> = s.iter().map(|x| x.dim()).collect();
    let mut problems = Vec::new();
    for (i, x) in s.iter().enumerate() {
        let c = chop(x, &mut Prng::new(i as u64))?;
        if c.factors.len() != 1 || c.factors[0].multiplicity != 1 {
            problems.push(format!("{} is reducible", x.dim()));
        }
        if end_algebra(x)?.dim() != 1 {
            problems.push(format!("{} is not absolutely irreducible", x.dim()));
        }
        for y in &s[..i] {
            if x.dim() == y.dim() && iso_irr(x, y)? {
                problems.push(format!("{} and {} are isomorphic", x.dim(), y.dim()));
            }
        }
    }
    let bd = central_idempotents(&a.g, &f)?;
    for x in &s {
        if block_of(x, &bd)? != bd.principal {
            problems.push(format!("{} is not in the principal block", x.dim()));
        }
    }
    let ok = dims == [1, 7, 13, 28, 35] && problems.is_empty();
    Ok(verdict(
        ok,
        if problems.is_empty() { format!("dims {dims:?}, all in the principal block") } else { problems.join("; ") },
    ))
}

fn vertices() -> Result<Outcome> {
    let a = a8_fixture();
    let mut bad = Vec::new();
    for x in a8_simples(&a.g, &gf3())? {
        let v = vertex(&x, &a.p)?;
        if v.vertex_orders() != [9] {
            bad.push(format!("A8 {}: vertex orders {:?}", x.dim(), v.vertex_orders()));
        }
    }
    let hf = h_fixture();
    for x in h_simples(&hf, &gf9())? {
        if !has_full_vertex(&x, &hf.p)? {
            bad.push(format!("H' {}: vertex is not P", x.label().unwrap_or("?")));
        }
    }
    Ok(verdict(bad.is_empty(), if bad.is_empty() { "all ten simples have vertex P".into() } else { bad.join("; ") }))
}

fn green() -> Result<Outcome> {
    let a = a8_fixture();
    let f = gf3();
    let hs = h_simples(&h_fixture(), &f)?;
    let mut got = Vec::new();
    let mut ok = true;
    for (x, want) in a8_simples(&a.g, &f)?.iter().zip(GREEN_A8) {
        let gr = green_correspondent(x, &a.p, &a.h, &mut Prng::new(5))?;
        let l = loewy(gr.correspondent(), &hs)?.radical_strings();
        ok &= l == want;
        got.push(format!("{} -> {}", x.label().unwrap_or("?"), l.join("/")));
    }
    Ok(verdict(ok, got.join(", ")))
}

fn c4h_blocks() -> Result<Outcome> {
    let c = c4h_fixture();
    let f = gf9();
    let bd = central_idempotents(&c.g, &f)?;
    let rows = c4h_simples(&c, &h_simples(&h_fixture(), &f)?)?;
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for row in &rows {
        for s in row {
            members.entry(block_of(s, &bd)?).or_default().push(s.dim());
        }
    }
    // rows 1 and 3 are the faithful ones: the C4 generator acts with order 4
    let mut faithful = Vec::new();
    for i in [1, 3] {
        let b = block_of(&rows[i][0], &bd)?;
        let mut d = members[&b].clone();
        d.sort();
        faithful.push(d);
    }
    let ok = bd.len() == 4 && bd.check_axioms() && faithful.iter().all(|d| d == &[1, 1, 1, 1, 2]) && members.len() == 4;
    Ok(verdict(ok, format!("{} blocks; faithful block simple dims {faithful:?}", bd.len())))
}

fn random_mat(f: &Field, rows: usize, cols: usize, rng: &mut Prng) -> Mat {
    let data = (0..rows * cols).map(|_| rng.below(f.q() as u64) as u8).collect();
    Mat::from_vec(f, rows, cols, data).expect("sizes match")
}

fn random_invertible(f: &Field, n: usize, rng: &mut Prng) -> Mat {
    loop {
        let m = random_mat(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn properties() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut rng = Prng::new(0x5eed);

    // rank-nullity
    let fields: Vec<Field> = [2, 3, 4, 5, 9, 25, 27].iter().map(|&q| Field::from_order(q)).collect::<Result<_>>()?;
    for i in 0..1000 {
        let f = &fields[i % fields.len()];
        let (r, c) = (1 + rng.index(12), 1 + rng.index(12));
        let m = random_mat(f, r, c, &mut rng);
        if m.rank() + m.nullspace().rows() != c || m.rank() + m.left_nullspace().rows() != r {
            failures.push(format!("rank-nullity fails for a {r}x{c} matrix over {}", f.name()));
            break;
        }
    }

    // adjunction dim Hom_G(X, V^G) = dim Hom_H(X_H, V)
    let hf = h_fixture();
    let f = gf9();
    let simples = h_simples(&hf, &f)?;
    let subs = [hf.p.clone(), hf.q.clone(), hf.r.clone()];
    for h in &subs {
        let vs = [Rep::trivial(h.group(), &f), simples[4].restrict(h)?];
        for x in &simples {
            for v in &vs {
                let left = hom_space(x, &induce(v, h)?.rep)?.dim();
                let right = hom_space(&x.restrict(h)?, v)?.dim();
                if left != right {
                    failures.push(format!(
                        "adjunction fails for {} and a subgroup of order {}",
                        x.label().unwrap_or("?"),
                        h.order()
                    ));
                }
            }
        }
    }

    // chop is invariant under a change of basis
    let ps = h_pims(&f, &simples, 7)?;
    for p in ps.iter().take(2) {
        let s = random_invertible(&f, p.dim(), &mut rng);
        let a = chop(p, &mut Prng::new(1))?.dims();
        let b = chop(&p.conjugate(&s)?, &mut Prng::new(2))?.dims();
        if a != b {
            failures.push(format!("chop changes under a change of basis: {a:?} vs {b:?}"));
        }
    }

    // radical layers of M* are the duals of the socle layers of M
    let dual_index: Vec<usize> = simples
        .iter()
        .map(|s| {
            which_simple(&s.dual()?, &simples)?.ok_or_else(|| Error::Theory("dual of a simple is not listed".into()))
        })
        .collect::<Result<_>>()?;
    let soc = hom_space(&simples[0], &ps[0])?.maps()[0].clone();
    let mods = [ps[0].quotient(&soc)?, ps[4].clone(), induce(&Rep::trivial(hf.q.group(), &f), &hf.q)?.rep];
    for m in &mods {
        let l = loewy(m, &simples)?;
        let d = loewy(&m.dual()?, &simples)?;
        let mirrored: Vec<Vec<usize>> = l
            .socle_layers
            .iter()
            .map(|layer| {
                let mut out = vec![0; layer.len()];
                for (i, &k) in layer.iter().enumerate() {
                    out[dual_index[i]] += k;
                }
                out
            })
            .collect();
        if d.radical_layers != mirrored {
            failures.push(format!("Loewy duality fails for a {}-dimensional module", m.dim()));
        }
    }

    // Higman monotonicity along the subgroups of P
    let lattice = all_subgroups(hf.p.group(), 1000)?;
    for x in [&ps[0], &simples[4]] {
        let mut verdicts = Vec::new();
        for s in &lattice {
            let g = crate::perm::small::group_from_elements(hf.h.degree(), s)?;
            let sub = Subgroup::from_perms(&hf.h, g.gens().to_vec())?;
            verdicts.push((s, higman_test(x, &sub)?));
        }
        for (a, pa) in &verdicts {
            for (b, pb) in &verdicts {
                if *pa && a.is_subset(b) && !*pb {
                    failures.push("relative projectivity is not inherited by an overgroup".into());
                }
            }
        }
    }

    // block idempotent axioms
    for (g, q) in [(hf.h.clone(), 9), (c4h_fixture().g, 9), (a8_fixture().h.group().clone(), 3)] {
        let bd = central_idempotents(&g, &Field::from_order(q)?)?;
        if !bd.check_axioms() {
            failures.push(format!("idempotent axioms fail for a group of order {}", g.order()));
        }
    }

    Ok(verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "rank-nullity, adjunction, chop invariance, Loewy duality, Higman monotonicity, idempotent axioms".into()
        } else {
            failures.join("; ")
        },
    ))
}

fn two_hs() -> Result<Outcome> {
    let Some(dir) = std::env::var_os(DATA_ENV) else {
        return Ok(Outcome::Skip(format!("{DATA_ENV} is not set")));
    };
    let dir = Path::new(&dir);
    let read = |name: &str| {
        std::fs::read_to_string(dir.join(name)).map_err(|e| Error::Input(format!("cannot read {name}: {e}")))
    };
    let gens = parse_perms(&read("gens.perm")?)?;
    let n = gens.first().map(|g| g.degree()).ok_or_else(|| Error::Input("gens.perm is empty".into()))?;
    let g = Group::new(n, gens)?;
    let order = g.order();
    let mats = parse_matrices(&read("s4.mtx")?, None)?;
    let field = mats.first().map(|m| m.field().clone()).ok_or_else(|| Error::Input("s4.mtx is empty".into()))?;
    let s4 = Rep::new_checked(&g, &field, 56, mats)?;
    let words = read("a8.words")?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(Word::parse)
        .collect::<Result<Vec<_>>>()?;
    let a8 = Subgroup::from_words(&g, words)?;
    let res = s4.restrict(&a8)?;
    let dec = indec_decompose(&res, &mut Prng::new(0))?;
    let dims = dec.dims();
    let ok = order == 88_704_000 && a8.order() == 20160 && dims == [(28, 2)];
    Ok(verdict(ok, format!("|G| = {order}, |A8| = {}, restriction summands {dims:?}", a8.order())))
}
