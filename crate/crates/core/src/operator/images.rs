//! Concrete operator families: the Plücker generators `Z₁..Z₆` on four
//! Toeplitz factors, their five-generator quotient on three factors, the
//! Grassmannian Cuntz–Krieger family `P_i = Z_iZ_i*`, `S_ij = Z_iZ_jZ_j*`,
//! the lens-space map into the path space of `L₃^{r;1,r}`, and the rank-one
//! partial isometries built from words in the `Z_i`.

use std::collections::{BTreeMap, HashMap};

use super::check::CkFamily;
use super::expr::{sym, Expr, Relation};
use super::graded::GradedOperator;
use super::path_space::PathSpace;
use super::rep::Representation;
use super::space::InteriorSpec;
use super::sparse::SparseMatrix;
use super::toeplitz::{product, ToeplitzFactors};
use super::OpError;
use crate::graph::named::{l24, l24_edge, lens_graph, teardrop_graph};
use crate::graph::MultiGraph;

/// A leg operator in a generator word.
#[derive(Debug, Clone, Copy)]
enum Leg {
    T(usize),
    Q(usize),
}

fn leg_product(f: &ToeplitzFactors, legs: &[Leg]) -> SparseMatrix {
    let mats: Vec<SparseMatrix> = legs
        .iter()
        .map(|&l| match l {
            Leg::T(i) => f.t(i),
            Leg::Q(i) => f.q(i),
        })
        .collect();
    product(f.dim(), &mats)
}

fn z_words() -> [Vec<Leg>; 6] {
    use Leg::*;
    [
        vec![T(1)],
        vec![Q(1), T(2), T(3)],
        vec![Q(1), T(2), Q(3)],
        vec![Q(1), Q(2), T(3)],
        vec![Q(1), Q(2), Q(3), T(4)],
        vec![Q(1), Q(2), Q(3), Q(4)],
    ]
}

fn y_words() -> [Vec<Leg>; 5] {
    use Leg::*;
    [
        vec![T(1)],
        vec![Q(1), T(2), T(3)],
        vec![Q(1), T(2), Q(3)],
        vec![Q(1), Q(2), T(3)],
        vec![Q(1), Q(2), Q(3)],
    ]
}

fn require_truncation(n: usize, required: usize) -> Result<(), OpError> {
    if n < required {
        return Err(OpError::TruncationTooSmall { n, required });
    }
    Ok(())
}

fn generator_rep(factors: ToeplitzFactors, prefix: &str, words: &[Vec<Leg>]) -> Representation {
    let mut rep = factors.representation();
    for (k, word) in words.iter().enumerate() {
        rep.insert(
            format!("{prefix}{}", k + 1),
            GradedOperator::homogeneous(1, leg_product(&factors, word)),
        );
    }
    rep
}

/// `Z₁..Z₆` on four factors truncated at `n`, each of degree `+1`:
/// `Z₁ = T₁`, `Z₂ = Q₁T₂T₃`, `Z₃ = Q₁T₂Q₃`, `Z₄ = Q₁Q₂T₃`, `Z₅ = Q₁Q₂Q₃T₄`,
/// `Z₆ = Q₁Q₂Q₃Q₄`. The leg operators `T{i}`, `Q{i}`, `Qperp{i}` are bound
/// as well, in degree 0.
pub fn plucker_rep(n: usize) -> Result<Representation, OpError> {
    require_truncation(n, 2)?;
    Ok(generator_rep(ToeplitzFactors::new(4, n), "Z", &z_words()))
}

/// `Y₁..Y₅` on three factors: the first four as for `Z`, and `Y₅ = Q₁Q₂Q₃`.
pub fn x6_generator_images(n: usize) -> Result<Representation, OpError> {
    require_truncation(n, 2)?;
    Ok(generator_rep(ToeplitzFactors::new(3, n), "Y", &y_words()))
}

/// The defining relations of the algebra generated by `count` elements
/// `{prefix}1..` whose adjacency is `a(i, j)` (1-based):
///
/// - `X_i X_j = 0` when `a(i, j)` fails,
/// - `X_i* X_j = 0` for `i ≠ j`,
/// - `X_i* X_i = Σ_j a(i, j) X_j X_j*`,
/// - `Σ_j X_j X_j* = 1`.
pub fn sphere_relations(
    prefix: &str,
    count: usize,
    a: impl Fn(usize, usize) -> bool,
) -> Vec<Relation> {
    let x = |i: usize| sym(format!("{prefix}{i}"));
    let range = |i: usize| x(i) * x(i).adj();
    let mut rels = Vec::new();
    for i in 1..=count {
        for j in 1..=count {
            if !a(i, j) {
                rels.push(Relation::auto(x(i) * x(j), Expr::zero()));
            }
        }
    }
    for i in 1..=count {
        for j in 1..=count {
            if i != j {
                rels.push(Relation::auto(x(i).adj() * x(j), Expr::zero()));
            }
        }
    }
    for i in 1..=count {
        let rhs = Expr::sum((1..=count).filter(|&j| a(i, j)).map(range));
        rels.push(Relation::auto(x(i).adj() * x(i), rhs));
    }
    rels.push(Relation::auto(
        Expr::sum((1..=count).map(range)),
        Expr::one(),
    ));
    rels
}

/// Relations for `Z₁..Z₆` with the adjacency of `L_{2,4}`.
pub fn plucker_relations() -> Vec<Relation> {
    sphere_relations("Z", 6, l24_edge)
}

/// The same relations with `Z₆ = 0`, on `Y₁..Y₅`.
pub fn x6_relations() -> Vec<Relation> {
    sphere_relations("Y", 5, l24_edge)
}

/// Interior used for the generator relations: words have length at most 3.
pub fn generator_interior() -> InteriorSpec {
    InteriorSpec::uniform(3)
}

/// The Grassmannian family inside the Plücker representation.
#[derive(Debug, Clone)]
pub struct GrassmannCore {
    pub family: CkFamily,
    pub graph: MultiGraph,
}

/// `P_i ↦ Z_iZ_i*` (degree 0) and `S_ij ↦ Z_iZ_jZ_j*` (degree 1) for every
/// edge `i → j` of `L_{2,4}`, bound as `P{i}` and `S{i},{j}` next to the
/// Plücker generators.
pub fn grassmann_core_images(n: usize) -> Result<GrassmannCore, OpError> {
    require_truncation(n, 3)?;
    let mut rep = plucker_rep(n)?;
    let z = |i: usize| sym(format!("Z{i}"));
    let graph = l24();
    let mut edges = BTreeMap::new();
    for i in 1..=6 {
        rep.define(format!("P{i}"), &(z(i) * z(i).adj()))?;
    }
    for i in 1..=6 {
        for j in 1..=6 {
            if l24_edge(i, j) {
                let name = format!("S{i},{j}");
                rep.define(name.clone(), &(z(i) * z(j) * z(j).adj()))?;
                edges.insert((i - 1, j - 1), vec![name]);
            }
        }
    }
    Ok(GrassmannCore {
        family: CkFamily {
            rep,
            vertices: (1..=6).map(|i| format!("P{i}")).collect(),
            edges,
        },
        graph,
    })
}

/// `P_i` against the explicit leg products `Q₁^⊥`, `Q₁Q₂^⊥Q₃^⊥`,
/// `Q₁Q₂^⊥Q₃`, `Q₁Q₂Q₃^⊥`, `Q₁Q₂Q₃Q₄^⊥`, `Q₁Q₂Q₃Q₄`, and their sum against
/// the identity. Meant to be checked on the whole space.
pub fn grassmann_projection_relations() -> Vec<Relation> {
    let q = |i: usize| sym(format!("Q{i}"));
    let qp = |i: usize| sym(format!("Qperp{i}"));
    let expected = [
        qp(1),
        q(1) * qp(2) * qp(3),
        q(1) * qp(2) * q(3),
        q(1) * q(2) * qp(3),
        q(1) * q(2) * q(3) * qp(4),
        q(1) * q(2) * q(3) * q(4),
    ];
    let mut rels: Vec<Relation> = expected
        .into_iter()
        .enumerate()
        .map(|(k, e)| Relation::auto(sym(format!("P{}", k + 1)), e))
        .collect();
    rels.push(Relation::auto(
        Expr::sum((1..=6).map(|i| sym(format!("P{i}")))),
        Expr::one(),
    ));
    rels
}

/// The lens-space map in the path representation of `L₃^{r;1,r}`.
#[derive(Debug, Clone)]
pub struct LensIso {
    pub r: usize,
    pub n_cap: usize,
    pub path: PathSpace,
    /// Family indexed by the vertices and edges of `F₁^{1,r}`.
    pub family: CkFamily,
    pub target: MultiGraph,
}

/// Images `φ(P_j) = P_j` and
/// `φ(S_{e_{i,n}}) = S_{ℓ₀}ⁿ S_{f_i} (S_{ℓ_i}*)ⁿ⁺¹` for `n < n_cap`, inside
/// the path space of `L₃^{r;1,r}` with walks of length `≤ trunc`.
///
/// Path-space symbols are `P{j}`, `Sl{j}` (loop at `j`) and `Sf{i}`
/// (`0 → i`); images are bound as `phiS{i},{n}`.
pub fn lens_iso_images(r: usize, n_cap: usize, trunc: usize) -> Result<LensIso, OpError> {
    if r == 0 {
        return Err(OpError::InvalidArgument(
            "weight r must be at least 1".into(),
        ));
    }
    require_truncation(trunc, n_cap + 2)?;
    let graph = lens_graph(r);
    let path = PathSpace::with_names(&graph, trunc, |s, t, _, _| {
        if s == t {
            format!("l{s}")
        } else {
            format!("f{t}")
        }
    })?;
    let mut rep = path.representation();
    let mut edges = BTreeMap::new();
    for i in 1..=r {
        let mut names = Vec::with_capacity(n_cap);
        for n in 0..n_cap {
            let name = format!("phiS{i},{n}");
            rep.define(name.clone(), &lens_word(i, n as u32))?;
            names.push(name);
        }
        edges.insert((0, i), names);
    }
    Ok(LensIso {
        r,
        n_cap,
        path,
        family: CkFamily {
            rep,
            vertices: (0..=r).map(|j| format!("P{j}")).collect(),
            edges,
        },
        target: teardrop_graph(r),
    })
}

fn lens_word(i: usize, n: u32) -> Expr {
    sym("Sl0").pow(n) * sym(format!("Sf{i}")) * sym(format!("Sl{i}")).adj().pow(n + 1)
}

impl LensIso {
    /// Walks of length in `n_cap ..= trunc − 2`.
    pub fn interior(&self) -> InteriorSpec {
        InteriorSpec {
            lower: self.n_cap,
            upper: 2,
        }
    }

    /// `φ(P₀) − Σ_{n<k} Σ_i φ(S_{e_{i,n}})φ(S_{e_{i,n}})* = S_{ℓ₀}ᵏ(S_{ℓ₀}*)ᵏ`
    /// for `1 ≤ k < n_cap`, plus the degree-0 claim for every image.
    pub fn telescoping_relations(&self) -> Vec<Relation> {
        let mut rels = Vec::new();
        for k in 1..self.n_cap {
            let sum = Expr::sum((0..k).flat_map(|n| {
                (1..=self.r).map(move |i| {
                    let s = sym(format!("phiS{i},{n}"));
                    s.clone() * s.adj()
                })
            }));
            let l0 = sym("Sl0");
            rels.push(Relation::new(
                format!("telescoping k={k}"),
                sym("P0") - sum,
                l0.pow(k as u32) * l0.adj().pow(k as u32),
            ));
        }
        rels
    }
}

/// `V(n₁,…,n₄)`: `Z₁^{n₁}Z₂^{n₂}Z₄^{n₃−n₂}Z₅^{n₄}` if `n₂ ≤ n₃`, otherwise
/// `Z₁^{n₁}Z₂^{n₃}Z₃^{n₂−n₃}Z₅^{n₄}`.
pub fn v_word(n: [usize; 4]) -> Expr {
    let z = |i: usize, k: usize| sym(format!("Z{i}")).pow(k as u32);
    let [n1, n2, n3, n4] = n;
    let middle = if n2 <= n3 {
        z(2, n2) * z(4, n3 - n2)
    } else {
        z(2, n3) * z(3, n2 - n3)
    };
    z(1, n1) * middle * z(5, n4)
}

fn weight(n: [usize; 4]) -> usize {
    n[0] + n[1].max(n[2]) + n[3]
}

/// `V(n) Z₆^{|m|} (Z₆*)^{|n|} V(m)*` with `|n| = n₁ + max(n₂,n₃) + n₄`, or
/// `Z₆Z₆*` when both tuples vanish.
pub fn rank_one_word(n: [usize; 4], m: [usize; 4]) -> Expr {
    let z6 = sym("Z6");
    if n == [0; 4] && m == [0; 4] {
        return z6.clone() * z6.adj();
    }
    v_word(n) * z6.pow(weight(m) as u32) * z6.adj().pow(weight(n) as u32) * v_word(m).adj()
}

/// Evaluates rank-one words in one Plücker representation, caching `V(n)`
/// and the powers of `Z₆`.
pub struct RankOneChecker {
    factors: ToeplitzFactors,
    rep: Representation,
    v_cache: HashMap<[usize; 4], GradedOperator>,
    z6_cache: HashMap<usize, GradedOperator>,
}

impl RankOneChecker {
    pub fn new(trunc: usize) -> Result<Self, OpError> {
        Ok(RankOneChecker {
            factors: ToeplitzFactors::new(4, trunc),
            rep: plucker_rep(trunc)?,
            v_cache: HashMap::new(),
            z6_cache: HashMap::new(),
        })
    }

    fn v(&mut self, n: [usize; 4]) -> Result<GradedOperator, OpError> {
        if let Some(op) = self.v_cache.get(&n) {
            return Ok(op.clone());
        }
        let op = self.rep.eval(&v_word(n))?;
        self.v_cache.insert(n, op.clone());
        Ok(op)
    }

    fn z6_pow(&mut self, k: usize) -> Result<GradedOperator, OpError> {
        if let Some(op) = self.z6_cache.get(&k) {
            return Ok(op.clone());
        }
        let op = self.rep.get("Z6")?.pow(k as u32);
        self.z6_cache.insert(k, op.clone());
        Ok(op)
    }

    /// The operator denoted by [`rank_one_word`].
    pub fn operator(&mut self, n: [usize; 4], m: [usize; 4]) -> Result<GradedOperator, OpError> {
        let limit = self.factors.cutoff();
        if n.iter().chain(&m).any(|&x| x >= limit) {
            let needed = n.iter().chain(&m).max().copied().unwrap_or(0) + 1;
            return Err(OpError::TruncationTooSmall {
                n: limit,
                required: needed,
            });
        }
        if n == [0; 4] && m == [0; 4] {
            return self.rep.eval(&rank_one_word(n, m));
        }
        let left = self.v(n)?.mul(&self.z6_pow(weight(m))?);
        let right = self.z6_pow(weight(n))?.adjoint().mul(&self.v(m)?.adjoint());
        Ok(left.mul(&right))
    }

    /// Whether the word equals `|n⟩⟨m|` in degree 0, exactly.
    pub fn check(&mut self, n: [usize; 4], m: [usize; 4]) -> Result<bool, OpError> {
        let op = self.operator(n, m)?;
        let unit = GradedOperator::homogeneous(0, self.factors.matrix_unit(&n, &m));
        Ok(op == unit)
    }
}

/// One-off form of [`RankOneChecker::check`].
pub fn rank_one_check(n: [usize; 4], m: [usize; 4], trunc: usize) -> Result<bool, OpError> {
    RankOneChecker::new(trunc)?.check(n, m)
}
