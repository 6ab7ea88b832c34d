//! Manifest documents: one `key = value` per line, `#` starts a comment.
//!
//! ```text
//! field = 3^2
//! group = builtin h            # or: group = file gens.perm [more.perm ...]
//! seed = 0
//! cap = 100000
//! subgroup P = builtin p       # words <w1>; <w2> | file <f> | sylow <p> | normalizer <S> | trivial | whole
//! module M = regular           # trivial | natural | regular | subsets <k> | files <f>...
//! module K = trivial on P      # any base construction over a subgroup
//! module T = tensor M M        # dual M | sum M N | restrict M P | induce K P | factor M <dim>
//! simples = builtin h          # builtin a8|h|c4h, or chop M, or a list of module names
//! local_simples = builtin h    # simples of the normalizer (green)
//! task.module = M              # defaults for --module/--other/--subgroup/--normalizer
//! ```
//!
//! Relative paths are resolved against the manifest's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::formats::{parse_matrices, parse_perms};
use crate::chop::{chop, fingerprint};
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::fixtures;
use crate::perm::small::{normalizer_small, sylow_small};
use crate::perm::{Group, Subgroup, Word};
use crate::prng::Prng;
use crate::rep::{induce, Rep};

/// One parsed manifest line.
#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key: String,
    value: String,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, 1, msg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Builtin {
    A8,
    H,
    C4H,
}

/// Command-line values that take precedence over the manifest.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<String>,
    pub seed: Option<u64>,
    pub cap: Option<u128>,
}

/// A loaded manifest: field, group, named subgroups, modules and simples.
pub struct Context {
    pub field: Field,
    pub group: Group,
    pub group_name: String,
    pub seed: u64,
    pub cap: Option<u128>,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub modules: BTreeMap<String, Rep>,
    /// Subgroup a module lives on, if not the whole group.
    pub module_home: BTreeMap<String, String>,
    pub simples: Option<Vec<Rep>>,
    pub local_simples: Option<Vec<Rep>>,
    pub task: BTreeMap<String, String>,
    builtin: Option<Builtin>,
    dir: PathBuf,
}

fn parse_lines(text: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| perr(i + 1, format!("expected 'key = value', found '{line}'")))?;
        out.push(Entry { line: i + 1, key: k.trim().to_string(), value: v.trim().to_string() });
    }
    Ok(out)
}

impl Context {
    pub fn load(path: &Path, over: &Overrides) -> Result<Context> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read manifest {}: {e}", path.display())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Context::from_text(&text, &dir, over)
    }

    pub fn from_text(text: &str, dir: &Path, over: &Overrides) -> Result<Context> {
        let entries = parse_lines(text)?;
        let get = |k: &str| entries.iter().find(|e| e.key == k);
        let field = match (over.field.as_deref(), get("field")) {
            (Some(f), _) => Field::parse(f)?,
            (None, Some(e)) => Field::parse(&e.value).map_err(|err| perr(e.line, err.to_string()))?,
            (None, None) => return Err(Error::Input("manifest has no 'field' and --field was not given".into())),
        };
        let ge = get("group").ok_or_else(|| Error::Input("manifest has no 'group'".into()))?;
        let mut ctx = Context {
            field,
            group: Group::trivial(1),
            group_name: ge.value.clone(),
            seed: 0,
            cap: None,
            subgroups: BTreeMap::new(),
            modules: BTreeMap::new(),
            module_home: BTreeMap::new(),
            simples: None,
            local_simples: None,
            task: BTreeMap::new(),
            builtin: None,
            dir: dir.to_path_buf(),
        };
        ctx.load_group(ge)?;
        if let Some(e) = get("seed") {
            ctx.seed = e.value.parse().map_err(|_| perr(e.line, "seed must be an unsigned integer"))?;
        }
        if let Some(s) = over.seed {
            ctx.seed = s;
        }
        if let Some(e) = get("cap") {
            ctx.cap = Some(e.value.parse().map_err(|_| perr(e.line, "cap must be an unsigned integer"))?);
        }
        if over.cap.is_some() {
            ctx.cap = over.cap;
        }
        for e in &entries {
            let (kind, name) = match e.key.split_once(char::is_whitespace) {
                Some((k, n)) => (k, n.trim()),
                None => (e.key.as_str(), ""),
            };
            match kind {
                "field" | "group" | "seed" | "cap" | "simples" | "local_simples" => {}
                "subgroup" => {
                    let s = ctx.subgroup_expr(&e.value).map_err(|err| at_line(e.line, err))?;
                    ctx.subgroups.insert(name.to_string(), s);
                }
                "module" => {
                    let (m, home) = ctx.module_expr(&e.value).map_err(|err| at_line(e.line, err))?;
                    if let Some(h) = home {
                        ctx.module_home.insert(name.to_string(), h);
                    }
                    ctx.modules.insert(name.to_string(), m.with_label(name));
                }
                k if k.starts_with("task.") => {
                    ctx.task.insert(k["task.".len()..].to_string(), e.value.clone());
                }
                _ => return Err(perr(e.line, format!("unknown key '{}'", e.key))),
            }
        }
        if let Some(e) = get("simples") {
            ctx.simples = Some(ctx.simples_expr(&e.value, false).map_err(|err| at_line(e.line, err))?);
        }
        if let Some(e) = get("local_simples") {
            ctx.local_simples = Some(ctx.simples_expr(&e.value, true).map_err(|err| at_line(e.line, err))?);
        }
        Ok(ctx)
    }

    fn path(&self, f: &str) -> PathBuf {
        let p = Path::new(f);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.dir.join(p)
        }
    }

    fn read(&self, f: &str) -> Result<String> {
        let p = self.path(f);
        std::fs::read_to_string(&p).map_err(|e| Error::Input(format!("cannot read {}: {e}", p.display())))
    }

    fn load_group(&mut self, e: &Entry) -> Result<()> {
        let parts: Vec<&str> = e.value.split_whitespace().collect();
        match parts.as_slice() {
            ["builtin", "a8"] => {
                self.group = fixtures::a8();
                self.builtin = Some(Builtin::A8);
            }
            ["builtin", "h"] => {
                self.group = fixtures::h_fixture().h;
                self.builtin = Some(Builtin::H);
            }
            ["builtin", "c4h"] => {
                self.group = fixtures::c4h_fixture().g;
                self.builtin = Some(Builtin::C4H);
            }
            ["file", files @ ..] if !files.is_empty() => {
                let mut gens = Vec::new();
                for f in files {
                    let text = self.read(f)?;
                    gens.extend(parse_perms(&text).map_err(|err| in_file(f, err))?);
                }
                let n = gens.first().map(|g| g.degree()).ok_or_else(|| perr(e.line, "no generators"))?;
                self.group = Group::new(n, gens).map_err(|err| at_line(e.line, err))?;
            }
            _ => {
                return Err(perr(e.line, format!("bad group '{}': use 'builtin a8|h|c4h' or 'file <paths>'", e.value)))
            }
        }
        Ok(())
    }

    fn builtin_words(&self, name: &str) -> Result<Vec<&'static str>> {
        let w: &[&str] = match (self.builtin, name) {
            (Some(Builtin::A8), "p") => &fixtures::P_WORDS,
            (Some(Builtin::A8), "h") => &fixtures::H_WORDS,
            (Some(Builtin::A8), "q") => &fixtures::Q_WORDS,
            (Some(Builtin::A8), "r") => &fixtures::R_WORDS,
            (Some(Builtin::H), "p") => &["g1", "g2"],
            (Some(Builtin::H), "q") => &["g1"],
            (Some(Builtin::H), "r") => &["g1 g2"],
            (Some(Builtin::C4H), "p") => &["g1", "g2"],
            (Some(Builtin::C4H), "h") => &["g1", "g2", "g3", "g4", "g5"],
            (Some(Builtin::C4H), "z") => &["g6"],
            _ => return Err(Error::Input(format!("no builtin subgroup '{name}' for this group"))),
        };
        Ok(w.to_vec())
    }

    fn subgroup_expr(&self, v: &str) -> Result<Subgroup> {
        let (head, rest) = v.split_once(char::is_whitespace).map(|(a, b)| (a, b.trim())).unwrap_or((v, ""));
        match head {
            "builtin" => {
                let ws = self.builtin_words(rest)?;
                Subgroup::from_words(&self.group, ws.iter().map(|w| Word::parse(w)).collect::<Result<_>>()?)
            }
            "words" => {
                let ws = rest.split(';').map(|w| Word::parse(w.trim())).collect::<Result<Vec<_>>>()?;
                Subgroup::from_words(&self.group, ws)
            }
            "file" => {
                let text = self.read(rest)?;
                Subgroup::from_perms(&self.group, parse_perms(&text).map_err(|err| in_file(rest, err))?)
            }
            "sylow" => {
                let p: u32 = rest.parse().map_err(|_| Error::Input(format!("bad prime '{rest}'")))?;
                sylow_small(&self.group, p)
            }
            "normalizer" => {
                let s = self.subgroup(rest)?;
                let n = normalizer_small(&self.group, s.group())?;
                Subgroup::from_perms(&self.group, n.gens().to_vec())
            }
            "trivial" => Subgroup::from_perms(&self.group, vec![]),
            "whole" => Ok(Subgroup::whole(&self.group)),
            _ => Err(Error::Input(format!("bad subgroup expression '{v}'"))),
        }
    }

    pub fn subgroup(&self, name: &str) -> Result<Subgroup> {
        match name {
            "trivial" => Subgroup::from_perms(&self.group, vec![]),
            "whole" => Ok(Subgroup::whole(&self.group)),
            _ => self.subgroups.get(name).cloned().ok_or_else(|| Error::Input(format!("unknown subgroup '{name}'"))),
        }
    }

    pub fn module(&self, name: &str) -> Result<Rep> {
        self.modules.get(name).cloned().ok_or_else(|| Error::Input(format!("unknown module '{name}'")))
    }

    fn regular_cap(&self) -> u128 {
        self.cap.unwrap_or(100_000)
    }

    /// Returns the module and the name of the subgroup it lives on.
    fn module_expr(&self, v: &str) -> Result<(Rep, Option<String>)> {
        let toks: Vec<&str> = v.split_whitespace().collect();
        let (base, home) = match toks.iter().position(|&t| t == "on") {
            Some(i) if i + 2 == toks.len() => (&toks[..i], Some(toks[i + 1].to_string())),
            Some(_) => return Err(Error::Input(format!("'on <subgroup>' must end the expression '{v}'"))),
            None => (&toks[..], None),
        };
        let g = match &home {
            Some(h) => self.subgroup(h)?.group().clone(),
            None => self.group.clone(),
        };
        let f = &self.field;
        let rep = match base {
            ["trivial"] => Rep::trivial(&g, f),
            ["natural"] => Rep::natural(&g, f),
            ["regular"] => Rep::regular(&g, f, self.regular_cap())?,
            ["subsets", k] => {
                Rep::subsets(&g, f, k.parse().map_err(|_| Error::Input(format!("bad subset size '{k}'")))?)?
            }
            ["files", files @ ..] if !files.is_empty() => {
                let mut mats = Vec::new();
                for file in files {
                    mats.extend(parse_matrices(&self.read(file)?, Some(f)).map_err(|err| in_file(file, err))?);
                }
                let dim = mats.first().map(|m| m.rows()).unwrap_or(0);
                Rep::new_checked(&g, f, dim, mats)?
            }
            ["dual", m] if home.is_none() => return Ok((self.module(m)?.dual()?, self.module_home.get(*m).cloned())),
            ["tensor", a, b] if home.is_none() => {
                return Ok((self.module(a)?.tensor(&self.module(b)?)?, self.module_home.get(*a).cloned()))
            }
            ["sum", a, b] if home.is_none() => {
                return Ok((self.module(a)?.direct_sum(&self.module(b)?)?, self.module_home.get(*a).cloned()))
            }
            ["restrict", m, s] if home.is_none() => {
                return Ok((self.module(m)?.restrict(&self.subgroup(s)?)?, Some(s.to_string())))
            }
            ["induce", m, s] if home.is_none() => {
                let sub = self.subgroup(s)?;
                return Ok((induce(&self.module(m)?, &sub)?.rep, None));
            }
            ["factor", m, d] if home.is_none() => {
                let d: usize = d.parse().map_err(|_| Error::Input(format!("bad dimension '{d}'")))?;
                let src = self.module(m)?;
                let res = chop(&src, &mut Prng::new(self.seed))?;
                let rep =
                    res.factors.into_iter().find(|x| x.irr.rep.dim() == d).map(|x| x.irr.rep).ok_or_else(|| {
                        Error::Input(format!("module '{m}' has no composition factor of dimension {d}"))
                    })?;
                return Ok((rep, self.module_home.get(*m).cloned()));
            }
            _ => return Err(Error::Input(format!("bad module expression '{v}'"))),
        };
        Ok((rep, home))
    }

    fn simples_expr(&self, v: &str, local: bool) -> Result<Vec<Rep>> {
        let toks: Vec<&str> = v.split_whitespace().collect();
        let f = &self.field;
        match toks.as_slice() {
            ["builtin", "h"] => {
                let hf = fixtures::h_fixture();
                let want = if local { self.local_group()? } else { self.group.clone() };
                if !want.same(&hf.h) {
                    return Err(Error::Input(
                        "builtin h simples need the group H' (or its embedding as a subgroup)".into(),
                    ));
                }
                fixtures::h_simples(&hf, f)
            }
            ["builtin", "a8"] if !local => {
                if !self.group.same(&fixtures::a8()) {
                    return Err(Error::Input("builtin a8 simples need the builtin A8 group".into()));
                }
                fixtures::a8_simples(&self.group, f)
            }
            ["builtin", "c4h"] if !local => {
                let c = fixtures::c4h_fixture();
                if !self.group.same(&c.g) {
                    return Err(Error::Input("builtin c4h simples need the builtin C4 x H' group".into()));
                }
                Ok(fixtures::c4h_simples(&c, &fixtures::h_simples(&fixtures::h_fixture(), f)?)?.concat())
            }
            ["chop", m] => {
                let res = chop(&self.module(m)?, &mut Prng::new(self.seed))?;
                Ok(canonical_labels(res.factors.into_iter().map(|x| x.irr.rep).collect()))
            }
            names => names.iter().map(|n| self.module(n)).collect(),
        }
    }

    /// Group of the normalizer named by `task.normalizer` (for local simples).
    fn local_group(&self) -> Result<Group> {
        match self.task.get("normalizer") {
            Some(n) => Ok(self.subgroup(n)?.group().clone()),
            None => Ok(self.group.clone()),
        }
    }
}

/// Label simples by dimension, adding letters a, b, … (ordered by
/// fingerprint) when a dimension repeats.
pub fn canonical_labels(mut simples: Vec<Rep>) -> Vec<Rep> {
    let key = |r: &Rep| {
        let fp: Vec<(usize, Vec<u8>, usize)> =
            fingerprint(r).unwrap_or_default().into_iter().map(|(a, p, b)| (a, p.coeffs().to_vec(), b)).collect();
        (r.dim(), fp)
    };
    simples.sort_by_cached_key(key);
    let dims: Vec<usize> = simples.iter().map(|r| r.dim()).collect();
    let mut out = Vec::new();
    let mut k = 0;
    for (i, r) in simples.into_iter().enumerate() {
        let d = dims[i];
        let repeated = dims.iter().filter(|&&x| x == d).count() > 1;
        k = if i > 0 && dims[i - 1] == d { k + 1 } else { 0 };
        let label = if repeated { format!("{d}{}", (b'a' + (k % 26) as u8) as char) } else { d.to_string() };
        out.push(r.with_label(label));
    }
    out
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other if other.is_input_error() => Error::parse(line, 1, other.to_string()),
        other => other,
    }
}

fn in_file(f: &str, e: Error) -> Error {
    match e {
        Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{f}: {msg}") },
        other => other,
    }
}
