//! Relative projectivity: relative traces, Higman's criterion, vertices,
//! Green correspondents and the trivial-source test.

use crate::error::{Error, Result};
use crate::ffield::{Elem, Mat, SemiEchelon};
use crate::perm::small::all_subgroups;
use crate::perm::small::group_from_elements;
use crate::perm::{right_transversal, Subgroup, Transversal};
use crate::prng::Prng;
use crate::rep::{end_space, hom_space, HomBasis, Rep, INDEX_CAP};
use crate::structure::{algebra_radical, end_algebra, indec_decompose, iso_indec, AlgebraData};

/// Linear functionals computing the entries of `Tr_H^G(φ) = Σ_t X(t)⁻¹ φ X(t)`
/// (t over a right transversal) at a fixed list of positions.
struct TraceFunctionals {
    /// One n×n matrix W per position (i, j): `Tr(φ)_ij = Σ_ab W_ab φ_ab`.
    w: Vec<Mat>,
}

impl TraceFunctionals {
    /// Walk the transversal tree depth first, keeping only the matrices of
    /// the current path.
    fn build(x: &Rep, tr: &Transversal, positions: &[(usize, usize)]) -> Result<Self> {
        let f = x.field();
        let n = x.dim();
        let mut w = vec![Mat::zero(f, n, n); positions.len()];
        let ginv = x.gens().iter().map(|g| g.inverse()).collect::<Result<Vec<_>>>()?;
        let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new(); tr.len()];
        for (i, t) in tr.tree.iter().enumerate() {
            if let Some((p, g)) = *t {
                children[p].push((i, g));
            }
        }
        let id = Mat::identity(f, n);
        let mut stack = vec![(0usize, id.clone(), id)];
        while let Some((node, fwd, bwd)) = stack.pop() {
            for (k, &(i, j)) in positions.iter().enumerate() {
                // W_ab += (X(t)⁻¹)_ia X(t)_bj
                let col: Vec<Elem> = fwd.col(j);
                let wk = &mut w[k];
                for (a, &r) in bwd.row(i).iter().enumerate() {
                    if r != 0 {
                        f.axpy(wk.row_mut(a), r, &col);
                    }
                }
            }
            for &(c, g) in &children[node] {
                let cf = fwd.mul(x.gen(g))?;
                let cb = ginv[g].mul(&bwd)?;
                stack.push((c, cf, cb));
            }
        }
        Ok(TraceFunctionals { w })
    }

    fn apply(&self, phi: &Mat) -> Vec<Elem> {
        let f = phi.field();
        self.w
            .iter()
            .map(|w| w.data().iter().zip(phi.data()).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }
}

/// Trace map from End_H(x) to End_G(x) in coordinates.
pub struct RelativeTrace {
    pub end_h: HomBasis,
    pub end_g: AlgebraData,
    /// Row k: coordinates of `Tr(end_h[k])` in the basis of `end_g`.
    pub matrix: Mat,
    functionals: TraceFunctionals,
}

impl RelativeTrace {
    /// Coordinates (in End_G) of the trace of any H-endomorphism.
    pub fn trace_coords(&self, phi: &Mat) -> Vec<Elem> {
        self.functionals.apply(phi)
    }
}

fn pivot_positions(end_g: &AlgebraData) -> Vec<(usize, usize)> {
    let n = end_g.matrix_size();
    let flat = Mat::vstack(
        &end_g
            .basis()
            .iter()
            .map(|b| b.reshape(1, n * n).expect("square"))
            .collect::<Vec<_>>()
            .iter()
            .collect::<Vec<_>>(),
    )
    .expect("same width");
    flat.rref().1.into_iter().map(|p| (p / n, p % n)).collect()
}

fn trace_setup(x: &Rep, h: &Subgroup) -> Result<(Transversal, AlgebraData, TraceFunctionals)> {
    if !h.parent().same(x.group()) {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    let tr = right_transversal(h, INDEX_CAP)?;
    let end_g = end_algebra(x)?;
    let pos = pivot_positions(&end_g);
    let func = TraceFunctionals::build(x, &tr, &pos)?;
    Ok((tr, end_g, func))
}

pub fn relative_trace_matrix(x: &Rep, h: &Subgroup) -> Result<RelativeTrace> {
    let (_, end_g, functionals) = trace_setup(x, h)?;
    let end_h = end_space(&x.restrict(h)?)?;
    let rows: Vec<Vec<Elem>> = end_h.maps().iter().map(|phi| functionals.apply(phi)).collect();
    let matrix = if rows.is_empty() { Mat::zero(x.field(), 0, end_g.dim()) } else { Mat::from_rows(x.field(), &rows)? };
    Ok(RelativeTrace { end_h, end_g, matrix, functionals })
}

/// Higman's criterion: x is H-projective iff id_x is a relative trace.
pub fn higman_test(x: &Rep, h: &Subgroup) -> Result<bool> {
    let rt = relative_trace_matrix(x, h)?;
    let mut ech = SemiEchelon::new(x.field(), rt.end_g.dim());
    for r in rt.matrix.row_iter() {
        ech.insert(r);
    }
    Ok(ech.contains(rt.end_g.unit()))
}

#[derive(Clone, Debug)]
pub struct SubgroupVerdict {
    pub subgroup: Subgroup,
    pub order: usize,
    pub projective: bool,
}

#[derive(Clone, Debug)]
pub struct VertexReport {
    pub tested: Vec<SubgroupVerdict>,
    /// Indices into `tested` of the minimal relatively projective subgroups.
    pub minimal: Vec<usize>,
}

impl VertexReport {
    pub fn vertex_orders(&self) -> Vec<usize> {
        self.minimal.iter().map(|&i| self.tested[i].order).collect()
    }

    /// Relative projectivity is inherited by overgroups.
    pub fn is_monotone(&self) -> bool {
        let sets: Vec<std::collections::BTreeSet<_>> = self
            .tested
            .iter()
            .map(|v| v.subgroup.group().elements(1 << 20).unwrap_or_default().into_iter().collect())
            .collect();
        for (i, a) in self.tested.iter().enumerate() {
            for (j, b) in self.tested.iter().enumerate() {
                if a.projective && sets[i].is_subset(&sets[j]) && !b.projective {
                    return false;
                }
            }
        }
        true
    }
}

/// Vertex of an indecomposable module: every subgroup of the supplied
/// Sylow subgroup is tested, and the minimal relatively projective ones are
/// reported (conjugate duplicates are not merged).
pub fn vertex(x: &Rep, sylow: &Subgroup) -> Result<VertexReport> {
    if crate::structure::local_certificate(x)?.is_none() {
        return Err(Error::NotIndecomposable(format!(
            "{}-dimensional module has a non-local endomorphism ring",
            x.dim()
        )));
    }
    let subs = all_subgroups(sylow.group(), 100_000)?;
    let mut tested = Vec::new();
    for s in &subs {
        let g = group_from_elements(x.group().degree(), s)?;
        let sub = Subgroup::from_perms(x.group(), g.gens().to_vec())?;
        let projective = higman_test(x, &sub)?;
        tested.push(SubgroupVerdict { subgroup: sub, order: s.len(), projective });
    }
    let minimal = (0..subs.len())
        .filter(|&i| {
            tested[i].projective
                && !(0..subs.len()).any(|j| {
                    j != i && tested[j].projective && subs[j].is_subset(&subs[i]) && subs[j].len() < subs[i].len()
                })
        })
        .collect();
    Ok(VertexReport { tested, minimal })
}

/// Has vertex exactly the given subgroup (P-projective, and not projective
/// relative to any proper subgroup of P).
pub fn has_full_vertex(x: &Rep, p: &Subgroup) -> Result<bool> {
    let r = vertex(x, p)?;
    Ok(r.minimal.len() == 1 && r.tested[r.minimal[0]].order as u128 == p.order())
}

#[derive(Clone, Debug)]
pub struct GreenSummand {
    pub rep: Rep,
    pub multiplicity: usize,
    pub vertex_orders: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GreenReport {
    pub summands: Vec<GreenSummand>,
    /// Index of the unique summand with vertex P.
    pub correspondent: usize,
}

impl GreenReport {
    pub fn correspondent(&self) -> &Rep {
        &self.summands[self.correspondent].rep
    }
}

/// Green correspondent of `x` (vertex P) in `n` ⊇ N_G(P): the unique
/// summand of `x↓n` with vertex P. `p` must be a subgroup of `n`'s group.
pub fn green_correspondent(x: &Rep, p: &Subgroup, n: &Subgroup, rng: &mut Prng) -> Result<GreenReport> {
    let res = x.restrict(n)?;
    let dec = indec_decompose(&res, rng)?;
    let p_in_n = p.with_parent(n.group())?;
    let mut summands = Vec::new();
    let mut hits = Vec::new();
    for (k, s) in dec.summands.into_iter().enumerate() {
        let v = vertex(&s.rep, &p_in_n)?;
        let orders = v.vertex_orders();
        if orders.len() == 1 && orders[0] as u128 == p.order() {
            hits.push(k);
        }
        summands.push(GreenSummand { rep: s.rep, multiplicity: s.multiplicity, vertex_orders: orders });
    }
    match hits.as_slice() {
        [k] if summands[*k].multiplicity == 1 => Ok(GreenReport { summands, correspondent: *k }),
        _ => Err(Error::Theory(format!(
            "expected exactly one summand with vertex of order {}, found {} (with multiplicities)",
            p.order(),
            hits.iter().map(|&k| summands[k].multiplicity).sum::<usize>()
        ))),
    }
}

/// Is the indecomposable `x` a direct summand of `k_Q↑G`? Uses both
/// adjunctions: the composites x → k_Q↑ → x are exactly the relative
/// traces `Tr_Q^G(φ ψ)` with φ ∈ Hom_Q(x↓, k), ψ ∈ Hom_Q(k, x↓), and x is a
/// summand iff one of them (for basis pairs) lies outside J(End x).
pub fn trivial_source_test(x: &Rep, q: &Subgroup) -> Result<bool> {
    let (_, end_g, func) = trace_setup(x, q)?;
    let xr = x.restrict(q)?;
    let k = Rep::trivial(q.group(), x.field());
    let to_k = hom_space(&xr, &k)?;
    let from_k = hom_space(&k, &xr)?;
    if to_k.is_empty() || from_k.is_empty() {
        return Ok(false);
    }
    let j = algebra_radical(&end_g)?;
    let mut rad = SemiEchelon::new(x.field(), end_g.dim());
    for r in j.basis.row_iter() {
        rad.insert(r);
    }
    for phi in to_k.maps() {
        for psi in from_k.maps() {
            let c = func.apply(&phi.mul(psi)?);
            if !rad.contains(&c) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Round trip: the correspondent induced back to G has, among its
/// summands, exactly one with vertex P and it is isomorphic to `x`.
pub fn green_round_trip(x: &Rep, correspondent: &Rep, p: &Subgroup, n: &Subgroup, rng: &mut Prng) -> Result<bool> {
    let ind = crate::rep::induce(correspondent, n)?.rep;
    let dec = indec_decompose(&ind, rng)?;
    let mut hits = Vec::new();
    for s in &dec.summands {
        if has_full_vertex(&s.rep, p)? {
            hits.push(s);
        }
    }
    Ok(hits.len() == 1 && hits[0].multiplicity == 1 && iso_indec(&hits[0].rep, x)?)
}

#[derive(Clone, Debug)]
pub struct TrivialSourceModule {
    pub rep: Rep,
    /// Orders of the minimal relatively projective subgroups of the Sylow.
    pub vertex_orders: Vec<usize>,
    pub vertex: Subgroup,
    pub trivial_source: bool,
}

/// Collect the indecomposable summands of `k_Q↑G` for each given subgroup Q
/// (pass the trivial subgroup to include the regular module), identify them
/// up to isomorphism, and classify each by vertex and the trivial-source test.
pub fn trivial_source_census(
    g: &crate::perm::Group,
    field: &crate::ffield::Field,
    sylow: &Subgroup,
    sources: &[Subgroup],
    rng: &mut Prng,
) -> Result<Vec<TrivialSourceModule>> {
    let mut found: Vec<Rep> = Vec::new();
    for q in sources {
        if !q.parent().same(g) {
            return Err(Error::NotSubgroup("census source subgroup of a different group".into()));
        }
        let ind = crate::rep::induce(&Rep::trivial(q.group(), field), q)?.rep;
        for s in indec_decompose(&ind, rng)?.summands {
            let mut new = true;
            for r in &found {
                if r.dim() == s.rep.dim() && iso_indec(r, &s.rep)? {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(s.rep);
            }
        }
    }
    let mut out = Vec::new();
    for rep in found {
        let v = vertex(&rep, sylow)?;
        let min = *v
            .minimal
            .first()
            .ok_or_else(|| Error::Theory("module is not projective relative to the Sylow subgroup".into()))?;
        let vtx = v.tested[min].subgroup.clone();
        let trivial_source = trivial_source_test(&rep, &vtx)?;
        out.push(TrivialSourceModule { rep, vertex_orders: v.vertex_orders(), vertex: vtx, trivial_source });
    }
    out.sort_by_key(|m| (std::cmp::Reverse(m.vertex.order()), m.rep.dim()));
    Ok(out)
}
