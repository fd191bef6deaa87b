//! Level-by-level projection with a designated pivot equational constraint.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::basis::{sort_canonical, squarefree_basis};
use super::ProjError;
use crate::elim::{canonical, cad_resultant, discriminant, macaulay_resultant, ElimError};
use crate::poly::{Polynomial, VarOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Iterated,
    Multires,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "iterated" => Ok(Strategy::Iterated),
            "multires" => Ok(Strategy::Multires),
            _ => Err(format!("unknown strategy `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotKind {
    ExplicitEc,
    IteratedResultant,
    MultivariateResultant,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProvenanceKind {
    Input,
    Resultant,
    Discriminant,
    LeadingCoefficient,
    PassThrough,
    IteratedResultant,
    MultivariateResultant,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Provenance {
    pub kind: ProvenanceKind,
    pub parents: Vec<String>,
}

impl Provenance {
    fn new(kind: ProvenanceKind, parents: &[&Polynomial]) -> Self {
        Provenance {
            kind,
            parents: parents.iter().map(|p| p.to_string()).collect(),
        }
    }
}

/// A projection polynomial produced by one elimination.
#[derive(Clone, Debug)]
pub struct ProjFactor {
    pub poly: Polynomial,
    pub provenance: Provenance,
}

/// An element of the square-free basis a level eliminates from.
#[derive(Clone, Debug)]
pub struct BasisFactor {
    pub poly: Polynomial,
    pub pivot: bool,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug)]
pub struct ProjectionLevel {
    pub index: usize,
    pub var: String,
    pub pivot: Option<Polynomial>,
    pub pivot_kind: PivotKind,
    pub basis: Vec<BasisFactor>,
    pub projection: Vec<ProjFactor>,
    pub warnings: Vec<String>,
}

impl ProjectionLevel {
    /// Distinct projection polynomials, sorted.
    pub fn projection_set(&self) -> Vec<Polynomial> {
        let mut v: Vec<Polynomial> = self.projection.iter().map(|f| f.poly.clone()).collect();
        sort_canonical(&mut v);
        v.dedup();
        v
    }

    pub fn basis_polys(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|b| b.poly.clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ProjectionInput {
    pub polys: Vec<Polynomial>,
    /// The first `ec_count` polynomials are equational constraints.
    pub ec_count: usize,
    pub order: VarOrder,
}

#[derive(Clone, Debug)]
pub struct ProjectionTrace {
    pub input: ProjectionInput,
    pub strategy: Strategy,
    pub levels: Vec<ProjectionLevel>,
    /// Set when a constant pivot stopped the pipeline.
    pub halted: Option<String>,
}

/// Pivot among `candidates`: least total degree, then fewest terms, then
/// least text.
pub fn select_pivot(candidates: &[Polynomial]) -> Result<Polynomial, ProjError> {
    candidates
        .iter()
        .min_by_key(|p| (p.total_degree(), p.nterms(), p.to_string()))
        .cloned()
        .ok_or(ProjError::EmptyCandidates)
}

enum Job {
    Res(usize, usize),
    Disc(usize),
    Lc(usize),
}

fn run_jobs(basis: &[Polynomial], jobs: Vec<Job>, var: &str, v: usize) -> Result<Vec<ProjFactor>, ProjError> {
    let out: Vec<Result<Option<ProjFactor>, ProjError>> = jobs
        .into_par_iter()
        .map(|job| -> Result<Option<ProjFactor>, ProjError> {
            let (poly, prov) = match job {
                Job::Res(i, j) => match cad_resultant(&basis[i], &basis[j], var) {
                    Ok(r) => (r, Provenance::new(ProvenanceKind::Resultant, &[&basis[i], &basis[j]])),
                    Err(ElimError::Degenerate { .. }) => return Ok(None),
                    Err(e) => return Err(e.into()),
                },
                Job::Disc(i) => (
                    discriminant(&basis[i], var)?,
                    Provenance::new(ProvenanceKind::Discriminant, &[&basis[i]]),
                ),
                Job::Lc(i) => (
                    canonical(&basis[i].lc_in(v)),
                    Provenance::new(ProvenanceKind::LeadingCoefficient, &[&basis[i]]),
                ),
            };
            Ok((!poly.is_constant()).then_some(ProjFactor { poly, provenance: prov }))
        })
        .collect();
    let mut v = Vec::new();
    for r in out {
        if let Some(f) = r? {
            v.push(f);
        }
    }
    Ok(v)
}

fn project(
    current: &[Polynomial],
    pivot: Option<&Polynomial>,
    var: &str,
) -> Result<ProjectionLevel, ProjError> {
    let order = current
        .first()
        .or(pivot)
        .map(|p| p.order().clone())
        .ok_or_else(|| ProjError::Invalid("nothing to project".into()))?;
    let v = order.require(var)?;
    let mut all: Vec<Polynomial> = current.to_vec();
    if let Some(p) = pivot {
        if p.degree_in(v) == 0 {
            return Err(ProjError::PivotDegree(var.into()));
        }
        all.push(p.clone());
    }
    let basis = squarefree_basis(&all)?;
    let is_pivot: Vec<bool> = basis
        .iter()
        .map(|b| pivot.is_some_and(|p| p.divides_into(b).is_some()))
        .collect();
    let active: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].degree_in(v) > 0).collect();
    let mut jobs = Vec::new();
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a + 1..] {
            if pivot.is_none() || is_pivot[i] || is_pivot[j] {
                jobs.push(Job::Res(i, j));
            }
        }
    }
    for &i in &active {
        if basis[i].degree_in(v) >= 2 {
            jobs.push(Job::Disc(i));
        }
        jobs.push(Job::Lc(i));
    }
    let mut warnings = Vec::new();
    for &i in &active {
        let lc = basis[i].lc_in(v);
        if !lc.is_constant() {
            warnings.push(format!("leading coefficient of {} in {var} may vanish: {}", basis[i], canonical(&lc)));
        }
    }
    let mut projection = run_jobs(&basis, jobs, var, v)?;
    for b in basis.iter().filter(|b| b.degree_in(v) == 0) {
        projection.push(ProjFactor {
            poly: b.clone(),
            provenance: Provenance::new(ProvenanceKind::PassThrough, &[b]),
        });
    }
    projection.sort_by_cached_key(|f| (f.poly.total_degree(), f.poly.nterms(), f.poly.to_string(), f.provenance.clone()));
    projection.dedup_by(|a, b| a.poly == b.poly && a.provenance == b.provenance);
    Ok(ProjectionLevel {
        index: 0,
        var: var.into(),
        pivot: pivot.cloned(),
        pivot_kind: if pivot.is_some() { PivotKind::ExplicitEc } else { PivotKind::None },
        basis: basis
            .into_iter()
            .zip(is_pivot)
            .map(|(poly, pivot)| BasisFactor {
                poly,
                pivot,
                provenance: Vec::new(),
            })
            .collect(),
        projection,
        warnings,
    })
}

/// One projection step restricted by `pivot`: over the square-free basis of
/// `current` and the pivot, resultants of pivot factors with every other
/// basis element, discriminants and leading coefficients of every basis
/// element, and basis elements free of `var` passed down.
pub fn ec_project_level(current: &[Polynomial], pivot: &Polynomial, var: &str) -> Result<ProjectionLevel, ProjError> {
    project(current, Some(pivot), var)
}

/// Unrestricted step: all pairwise resultants.
pub fn full_project_level(current: &[Polynomial], var: &str) -> Result<ProjectionLevel, ProjError> {
    project(current, None, var)
}

fn attach_provenance(level: &mut ProjectionLevel, sources: &BTreeMap<String, (Polynomial, Vec<Provenance>)>) {
    for b in &mut level.basis {
        let mut prov: Vec<Provenance> = sources
            .values()
            .filter(|(p, _)| p.divides_into(&b.poly).is_some())
            .flat_map(|(_, pr)| pr.iter().cloned())
            .collect();
        prov.sort();
        prov.dedup();
        b.provenance = prov;
    }
}

/// Runs the projection down to one variable. Level `j` eliminates the `j`-th
/// variable of the order. While equational constraints remain, level 1
/// pivots on the first one, level 2 on its resultant with the second, and
/// level `j >= 3` on the iterated resultant chain or, with
/// [`Strategy::Multires`], on the Macaulay resultant of the first `j`
/// constraints; the iterated pivot stays in the basis either way.
pub fn run_pipeline(input: &ProjectionInput, strategy: Strategy) -> Result<ProjectionTrace, ProjError> {
    let order = &input.order;
    let k = input.ec_count;
    if k == 0 || k > input.polys.len() {
        return Err(ProjError::Invalid(format!(
            "equational constraint count {k} out of range 1..={}",
            input.polys.len()
        )));
    }
    let polys: Vec<Polynomial> = input
        .polys
        .iter()
        .map(|p| p.reorder(order))
        .collect::<Result<_, _>>()?;
    let mut trace = ProjectionTrace {
        input: input.clone(),
        strategy,
        levels: Vec::new(),
        halted: None,
    };
    let mut sources: BTreeMap<String, (Polynomial, Vec<Provenance>)> = BTreeMap::new();
    for p in &polys {
        let c = canonical(p);
        sources
            .entry(c.to_string())
            .or_insert_with(|| (c.clone(), Vec::new()))
            .1
            .push(Provenance::new(ProvenanceKind::Input, &[]));
    }
    let mut current: Vec<Polynomial> = polys.iter().filter(|p| !p.is_constant()).map(canonical).collect();
    // chain[i]: constraint i carried down by resultants with earlier pivots.
    let mut chain: Vec<Polynomial> = polys[..k].iter().map(canonical).collect();
    let nlevels = order.len().saturating_sub(1);
    for j in 1..=nlevels {
        let var = order.name(j - 1).to_string();
        let v = j - 1;
        let mut extra = Vec::new();
        let mut kind = PivotKind::None;
        let mut pivot = None;
        let mut note = None;
        if j <= k {
            let iter_pivot = chain[j - 1].clone();
            if iter_pivot.is_constant() {
                trace.halted = Some(format!("pivot for level {j} is the constant {iter_pivot}"));
                break;
            }
            if strategy == Strategy::Multires && j >= 3 {
                let elim: Vec<&str> = (0..j - 1).map(|i| order.name(i)).collect();
                let m = macaulay_resultant(&polys[..j], &elim)?;
                if m.is_constant() {
                    trace.halted = Some(format!("multivariate resultant for level {j} is the constant {m}"));
                    break;
                }
                sources
                    .entry(m.to_string())
                    .or_insert_with(|| (m.clone(), Vec::new()))
                    .1
                    .push(Provenance::new(ProvenanceKind::MultivariateResultant, &polys[..j].iter().collect::<Vec<_>>()));
                extra.push(iter_pivot.clone());
                pivot = Some(m);
                kind = PivotKind::MultivariateResultant;
            } else {
                pivot = Some(iter_pivot.clone());
                kind = if j == 1 { PivotKind::ExplicitEc } else { PivotKind::IteratedResultant };
            }
            if pivot.as_ref().is_some_and(|p| p.degree_in(v) == 0) {
                note = Some(format!("pivot {} is free of {var}; projecting without it", pivot.as_ref().unwrap()));
                extra.push(pivot.take().unwrap());
                kind = PivotKind::None;
            }
            // Carry the remaining constraints down.
            if iter_pivot.degree_in(v) > 0 {
                for i in j..k {
                    let q = &chain[i];
                    if q.degree_in(v) == 0 {
                        continue;
                    }
                    let r = cad_resultant(&iter_pivot, q, &var).map_err(|e| match e {
                        ElimError::Degenerate { reason, .. } => {
                            ProjError::Invalid(format!("constraint {} degenerate at level {j}: {reason}", i + 1))
                        }
                        e => e.into(),
                    })?;
                    sources
                        .entry(r.to_string())
                        .or_insert_with(|| (r.clone(), Vec::new()))
                        .1
                        .push(Provenance::new(ProvenanceKind::IteratedResultant, &[&iter_pivot, q]));
                    chain[i] = r;
                }
            }
        }
        let mut all = current.clone();
        all.extend(extra);
        let mut level = project(&all, pivot.as_ref(), &var)?;
        level.index = j;
        level.pivot_kind = kind;
        if let Some(n) = note {
            level.warnings.insert(0, n);
        }
        attach_provenance(&mut level, &sources);
        for f in &level.projection {
            sources
                .entry(f.poly.to_string())
                .or_insert_with(|| (f.poly.clone(), Vec::new()))
                .1
                .push(f.provenance.clone());
        }
        current = level.projection_set();
        trace.levels.push(level);
        if current.is_empty() {
            break;
        }
    }
    Ok(trace)
}

#[derive(Serialize)]
struct FactorView<'a> {
    factor: String,
    degree: u32,
    terms: usize,
    provenance: &'a [Provenance],
    pivot: bool,
}

#[derive(Serialize)]
struct OutputView<'a> {
    factor: String,
    degree: u32,
    terms: usize,
    provenance: &'a Provenance,
}

#[derive(Serialize)]
struct LevelView<'a> {
    level: usize,
    var: &'a str,
    pivot: Option<String>,
    pivot_kind: PivotKind,
    pivot_degree: Option<u32>,
    pivot_terms: Option<usize>,
    basis: Vec<FactorView<'a>>,
    projection: Vec<OutputView<'a>>,
    warnings: &'a [String],
}

#[derive(Serialize)]
struct TraceView<'a> {
    strategy: Strategy,
    order: &'a [String],
    ec_count: usize,
    input: Vec<String>,
    levels: Vec<LevelView<'a>>,
    halted: &'a Option<String>,
}

impl ProjectionTrace {
    pub fn to_json(&self) -> String {
        let view = TraceView {
            strategy: self.strategy,
            order: self.input.order.vars(),
            ec_count: self.input.ec_count,
            input: self.input.polys.iter().map(|p| p.to_string()).collect(),
            levels: self
                .levels
                .iter()
                .map(|l| LevelView {
                    level: l.index,
                    var: &l.var,
                    pivot: l.pivot.as_ref().map(|p| p.to_string()),
                    pivot_kind: l.pivot_kind,
                    pivot_degree: l.pivot.as_ref().map(|p| p.total_degree()),
                    pivot_terms: l.pivot.as_ref().map(|p| p.nterms()),
                    basis: l
                        .basis
                        .iter()
                        .map(|b| FactorView {
                            factor: b.poly.to_string(),
                            degree: b.poly.total_degree(),
                            terms: b.poly.nterms(),
                            provenance: &b.provenance,
                            pivot: b.pivot,
                        })
                        .collect(),
                    projection: l
                        .projection
                        .iter()
                        .map(|f| OutputView {
                            factor: f.poly.to_string(),
                            degree: f.poly.total_degree(),
                            terms: f.poly.nterms(),
                            provenance: &f.provenance,
                        })
                        .collect(),
                    warnings: &l.warnings,
                })
                .collect(),
            halted: &self.halted,
        };
        serde_json::to_string_pretty(&view).expect("trace serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, o: &VarOrder) -> Polynomial {
        Polynomial::parse(s, o).unwrap()
    }

    #[test]
    fn pivot_selection() {
        let o = VarOrder::new(["x"]).unwrap();
        let c = [p("x^2 + 1", &o), p("x^2", &o)];
        assert_eq!(select_pivot(&c).unwrap().to_string(), "x^2");
        assert!(select_pivot(&[]).is_err());
    }

    #[test]
    fn single_input_level() {
        let o = VarOrder::new(["x", "b", "c"]).unwrap();
        let f = p("b*x^2 + x + c", &o);
        let l = ec_project_level(&[f.clone()], &f, "x").unwrap();
        let t: Vec<String> = l.projection_set().iter().map(|q| q.to_string()).collect();
        assert_eq!(t, ["b", "4*b*c - 1"]);
        assert!(ec_project_level(&[f.clone()], &p("b", &o), "x").is_err());
    }

    #[test]
    fn worked_system_pipeline() {
        let o = VarOrder::new(["z", "y", "x"]).unwrap();
        let input = ProjectionInput {
            polys: vec![
                p("y^2 + z^2 + x + z - 1", &o),
                p("-x^2 + y^2 + z^2 - 1", &o),
                p("x^2 + y + z", &o),
            ],
            ec_count: 3,
            order: o.clone(),
        };
        let a = run_pipeline(&input, Strategy::Iterated).unwrap();
        let b = run_pipeline(&input, Strategy::Multires).unwrap();
        assert_eq!(a.levels.len(), 2);
        for (la, lb) in a.levels.iter().zip(&b.levels) {
            assert_eq!(la.projection_set(), lb.projection_set());
        }
        assert!(a.to_json().contains("\"pivot_kind\": \"explicit-ec\""));
    }
}
