//! Exact residuals of relations on the interior of a truncated space.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;
use serde::Serialize;

use super::expr::{sym, Expr, Relation};
use super::graded::GradedVector;
use super::rep::{merge_degrees, Representation};
use super::space::InteriorSpec;
use super::OpError;
use crate::graph::{MultiGraph, Multiplicity};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationResult {
    pub name: String,
    /// `None` when both sides are formally zero.
    pub degree: Option<i64>,
    pub interior_dim: usize,
    /// Operator norm of `(lhs − rhs)` restricted to the interior.
    pub residual: f64,
    pub pass: bool,
}

/// Evaluates every relation on each interior basis vector `e_i ⊗ z⁰`.
///
/// Arithmetic is exact, so a relation passes iff its residual is exactly
/// zero; the reported norm is a floating-point estimate of the size of a
/// failure.
pub fn check_relations(
    rep: &Representation,
    relations: &[Relation],
    interior: InteriorSpec,
) -> Result<Vec<RelationResult>, OpError> {
    let basis = rep.space().interior(interior);
    relations
        .iter()
        .map(|rel| check_one(rep, rel, &basis))
        .collect()
}

fn check_one(
    rep: &Representation,
    rel: &Relation,
    basis: &[usize],
) -> Result<RelationResult, OpError> {
    let degree = merge_degrees(rep.degree(&rel.lhs)?, rep.degree(&rel.rhs)?, &rel.name)?;
    let diff = rel.difference();
    let mut columns = Vec::new();
    for &i in basis {
        let col = rep.apply(&diff, &GradedVector::basis(0, i))?;
        if !col.is_zero() {
            columns.push(col);
        }
    }
    let residual = if columns.is_empty() {
        0.0
    } else {
        spectral_norm(&columns)
    };
    Ok(RelationResult {
        name: rel.name.clone(),
        degree,
        interior_dim: basis.len(),
        residual,
        pass: columns.is_empty(),
    })
}

/// Largest singular value of the matrix with the given columns, by power
/// iteration on `DᵀD` from a fixed start vector. Zero columns do not change
/// the norm and are left out by the caller.
fn spectral_norm(columns: &[GradedVector]) -> f64 {
    let mut rows: HashMap<(i64, usize), usize> = HashMap::new();
    let cols: Vec<Vec<(usize, f64)>> = columns
        .iter()
        .map(|c| {
            c.entries()
                .map(|(key, v)| {
                    let next = rows.len();
                    let r = *rows.entry(key).or_insert(next);
                    (r, v.to_f64().unwrap_or(f64::NAN))
                })
                .collect()
        })
        .collect();
    let m = cols.len();
    let mut x: Vec<f64> = (0..m)
        .map(|j| 1.0 + (j as f64) / (m as f64 + 1.0))
        .collect();
    let mut estimate = 0.0;
    for _ in 0..200 {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        let mut y = vec![0.0; rows.len()];
        for (j, col) in cols.iter().enumerate() {
            for &(r, v) in col {
                y[r] += v * x[j];
            }
        }
        let next: Vec<f64> = cols
            .iter()
            .map(|col| col.iter().map(|&(r, v)| v * y[r]).sum())
            .collect();
        let lambda = next.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>();
        estimate = lambda.max(0.0).sqrt();
        x = next;
    }
    estimate
}

/// Operators realizing the vertices and edges of a target graph.
///
/// `vertices[v]` names the image of `P_v`; `edges[(s, t)]` names the images
/// of the parallel edges `s → t` (for an infinite multiplicity, the first
/// `n_cap` of them).
#[derive(Debug, Clone)]
pub struct CkFamily {
    pub rep: Representation,
    pub vertices: Vec<String>,
    pub edges: BTreeMap<(usize, usize), Vec<String>>,
}

/// Cuntz–Krieger relations of `target` for the family, on the interior:
/// projections, orthogonality of the `P`s and of the edge ranges,
/// `S_e* S_e = P_{t(e)}`, `S_e S_e* ≤ P_{s(e)}`, and
/// `P_v = Σ S_e S_e*` at regular vertices only.
pub fn check_ck_family(
    family: &CkFamily,
    target: &MultiGraph,
    n_cap: usize,
    interior: InteriorSpec,
) -> Result<Vec<RelationResult>, OpError> {
    check_relations(&family.rep, &ck_relations(family, target, n_cap)?, interior)
}

/// The relation list used by [`check_ck_family`].
pub fn ck_relations(
    family: &CkFamily,
    target: &MultiGraph,
    n_cap: usize,
) -> Result<Vec<Relation>, OpError> {
    let n = target.vertex_count();
    if family.vertices.len() != n {
        return Err(OpError::FamilyMismatch(format!(
            "{} vertex images for {} vertices",
            family.vertices.len(),
            n
        )));
    }
    let names = target.vertices();
    let p = |v: usize| sym(family.vertices[v].clone());
    let mut rels = Vec::new();

    for v in 0..n {
        rels.push(Relation::new(
            format!("P[{}] is a projection", names[v]),
            p(v).adj() * p(v),
            p(v),
        ));
    }
    for v in 0..n {
        for w in v + 1..n {
            rels.push(Relation::new(
                format!("P[{}] P[{}] = 0", names[v], names[w]),
                p(v) * p(w),
                Expr::zero(),
            ));
        }
    }

    let mut instances: Vec<(usize, usize, String)> = Vec::new();
    for e in target.edges() {
        let want = match e.mult {
            Multiplicity::Finite(m) => m as usize,
            Multiplicity::Infinite => n_cap,
        };
        let have = family
            .edges
            .get(&(e.src, e.dst))
            .map_or(&[][..], Vec::as_slice);
        if have.len() < want {
            return Err(OpError::FamilyMismatch(format!(
                "edge {} -> {} needs {} images, family has {}",
                names[e.src],
                names[e.dst],
                want,
                have.len()
            )));
        }
        for s in &have[..want] {
            instances.push((e.src, e.dst, s.clone()));
        }
    }

    for (src, dst, s) in &instances {
        let se = sym(s.clone());
        rels.push(Relation::new(
            format!("CK1 {s}* {s} = P[{}]", names[*dst]),
            se.adj() * se.clone(),
            p(*dst),
        ));
        rels.push(Relation::new(
            format!("CK2 {s} {s}* <= P[{}]", names[*src]),
            p(*src) * se.clone() * se.adj(),
            se.clone() * se.adj(),
        ));
    }
    for (a, (_, _, s)) in instances.iter().enumerate() {
        for (_, _, t) in &instances[a + 1..] {
            rels.push(Relation::new(
                format!("{s}* {t} = 0"),
                sym(s.clone()).adj() * sym(t.clone()),
                Expr::zero(),
            ));
        }
    }
    for v in 0..n {
        if !target.classify_vertex(v).is_regular {
            continue;
        }
        let sum = Expr::sum(
            instances
                .iter()
                .filter(|(src, _, _)| *src == v)
                .map(|(_, _, s)| sym(s.clone()) * sym(s.clone()).adj()),
        );
        rels.push(Relation::new(format!("CK3 at {}", names[v]), p(v), sum));
    }
    Ok(rels)
}

pub fn all_pass(results: &[RelationResult]) -> bool {
    results.iter().all(|r| r.pass)
}
