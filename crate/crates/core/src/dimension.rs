//! Dimension groups `(K₀, K₀⁺, [1])` of `C*(F_R)` and of the core of `C*(E_R)`.
//!
//! Both groups are `ℤ^V` with basis the vertex projections, unit `(1,…,1)`,
//! and the positive cone
//!
//! ```text
//! K₀⁺ = { x : x_v > 0 for every ⪯-minimal v in Supp(x) }
//! ```
//!
//! where `⪯` is the reflexive closure of `R`. The cone is infinite, so it is
//! kept as a predicate ([`DimensionGroup::contains`]) over the closure
//! matrix; a query costs `O(|V|²)`.
//!
//! [`k0_core`] also produces a [`CoreCertificate`]: the walk-counting matrix
//! identities for `Γ = I + Γ̃` (nilpotency of `Γ̃`, the finite Neumann series
//! for `Γ⁻¹`, and `(Γᵏ)_{v,w} ≥ k` along `R`), each recomputed and checked.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{DagRelation, GraphError};
use crate::matrix::{IntMatrix, MatrixError};

/// Default number of powers checked for `(Γᵏ)_{v,w} ≥ k`.
pub const DEFAULT_K_CHECK: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("element has {got} coefficients, group has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("certificate identity failed: {0}")]
    CertificateFailure(String),
    #[error("power must be at least 1, got {0}")]
    InvalidPower(u32),
    #[error("cannot parse K0 element `{0}`")]
    Parse(String),
}

/// `x = Σ k_v [P_v]`, coefficients in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Element(pub Vec<i64>);

impl K0Element {
    pub fn zero(n: usize) -> Self {
        K0Element(vec![0; n])
    }

    /// The class `[P_v]` of the `v`-th vertex projection.
    pub fn basis(n: usize, v: usize) -> Self {
        let mut x = Self::zero(n);
        x.0[v] = 1;
        x
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        K0Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        K0Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        K0Element(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Display for K0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for K0Element {
    type Err = DimensionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(K0Element(Vec::new()));
        }
        s.split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(K0Element)
            .map_err(|_| DimensionError::Parse(s.to_string()))
    }
}

impl Serialize for K0Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Free abelian group on the vertices with the cone of minimal supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionGroup {
    vertices: Vec<String>,
    /// `closure[v][w]` iff `v ≺ w`.
    closure: Vec<Vec<bool>>,
    unit: Vec<i64>,
}

impl DimensionGroup {
    fn from_closure(vertices: Vec<String>, closure: Vec<Vec<bool>>) -> Self {
        let unit = vec![1; vertices.len()];
        DimensionGroup {
            vertices,
            closure,
            unit,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn closure(&self) -> &[Vec<bool>] {
        &self.closure
    }

    /// `v ≺ w` by index.
    pub fn precedes(&self, v: usize, w: usize) -> bool {
        self.closure[v][w]
    }

    pub fn order_unit(&self) -> K0Element {
        K0Element(self.unit.clone())
    }

    /// Strictly ordered pairs by name.
    pub fn closure_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (v, row) in self.closure.iter().enumerate() {
            for (w, &lt) in row.iter().enumerate() {
                if lt {
                    out.push((self.vertices[v].clone(), self.vertices[w].clone()));
                }
            }
        }
        out
    }

    fn check_len(&self, x: &K0Element) -> Result<(), DimensionError> {
        if x.len() != self.rank() {
            return Err(DimensionError::DimensionMismatch {
                expected: self.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `⪯`-minimal vertices of `Supp(x)`.
    pub fn minimal_support(&self, x: &K0Element) -> Result<Vec<usize>, DimensionError> {
        self.check_len(x)?;
        let support: Vec<usize> = (0..self.rank()).filter(|&v| x.0[v] != 0).collect();
        Ok(support
            .iter()
            .copied()
            .filter(|&v| !support.iter().any(|&u| self.closure[u][v]))
            .collect())
    }

    /// Cone membership. `0` is in the cone (its support is empty).
    pub fn contains(&self, x: &K0Element) -> Result<bool, DimensionError> {
        Ok(self.minimal_support(x)?.into_iter().all(|v| x.0[v] > 0))
    }

    /// `x ≤ y` iff `y − x` is in the cone.
    pub fn leq(&self, x: &K0Element, y: &K0Element) -> Result<bool, DimensionError> {
        self.check_len(x)?;
        self.check_len(y)?;
        self.contains(&y.sub(x))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("dimension group serialization cannot fail")
    }
}

impl Serialize for DimensionGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            vertices: &'a [String],
            closure_pairs: Vec<[String; 2]>,
            unit: &'a [i64],
        }
        Wire {
            vertices: &self.vertices,
            closure_pairs: self
                .closure_pairs()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            unit: &self.unit,
        }
        .serialize(s)
    }
}

/// Cone membership, free-function form.
pub fn cone_contains(dg: &DimensionGroup, x: &K0Element) -> Result<bool, DimensionError> {
    dg.contains(x)
}

pub fn leq(dg: &DimensionGroup, x: &K0Element, y: &K0Element) -> Result<bool, DimensionError> {
    dg.leq(x, y)
}

/// Dimension group of `C*(F_R)`: the closure of `R` found by graph search.
pub fn k0_amplified(r: &DagRelation) -> DimensionGroup {
    DimensionGroup::from_closure(r.vertices().to_vec(), r.reachability())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedInequality {
    pub pair: (String, String),
    pub k: u32,
    /// `(Γᵏ)_{v,w}`.
    pub value: i64,
}

/// Matrix identities behind the core's dimension group, all verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreCertificate {
    pub n: usize,
    pub gamma: IntMatrix,
    /// Smallest `m` with `Γ̃ᵐ = 0`.
    pub gamma_tilde_nilpotency_order: usize,
    pub gamma_inverse: IntMatrix,
    pub checked_inequalities: Vec<CheckedInequality>,
}

/// Dimension group of the core `C*(E_R)^{U(1)}` together with its certificate.
///
/// The order is read off walk counts: `v ≺ w` iff `(Γ^{n−1})_{v,w} > 0` for
/// `v ≠ w`, which is independent of the graph search in [`k0_amplified`].
/// Agreement of the two groups is the computational content of the
/// isomorphism between the core and `C*(F_R)`.
pub fn k0_core(
    r: &DagRelation,
    k_check: u32,
) -> Result<(DimensionGroup, CoreCertificate), DimensionError> {
    let n = r.vertex_count();
    let gamma_tilde = r.adjacency_matrix();
    let identity = IntMatrix::identity(n);
    let gamma = identity.checked_add(&gamma_tilde)?;

    // Nilpotency, collecting the powers of -Γ̃ for the Neumann series.
    let neg_tilde = gamma_tilde.checked_neg()?;
    let mut power = IntMatrix::identity(n);
    let mut inverse = IntMatrix::zeros(n, n);
    let mut order = None;
    for k in 0..=n {
        if power.is_zero() {
            order = Some(k);
            break;
        }
        if k == n {
            break;
        }
        inverse = inverse.checked_add(&power)?;
        power = power.checked_mul(&neg_tilde)?;
    }
    let order = order.ok_or_else(|| {
        DimensionError::CertificateFailure(format!(
            "adjacency of R is not nilpotent of order ≤ {n}"
        ))
    })?;

    if gamma.checked_mul(&inverse)? != identity || inverse.checked_mul(&gamma)? != identity {
        return Err(DimensionError::CertificateFailure(
            "Γ · Σ(−Γ̃)ᵏ ≠ I".to_string(),
        ));
    }

    let mut checked = Vec::new();
    let mut gamma_k = identity.clone();
    for k in 1..=k_check {
        gamma_k = gamma_k.checked_mul(&gamma)?;
        for &(v, w) in r.pairs() {
            let value = gamma_k[(v, w)];
            if value < i64::from(k) {
                return Err(DimensionError::CertificateFailure(format!(
                    "(Γ^{k})[{},{}] = {value} < {k}",
                    r.vertices()[v],
                    r.vertices()[w]
                )));
            }
            checked.push(CheckedInequality {
                pair: (r.vertices()[v].clone(), r.vertices()[w].clone()),
                k,
                value,
            });
        }
    }

    let walks = gamma.checked_pow(n.saturating_sub(1) as u32)?;
    let closure: Vec<Vec<bool>> = (0..n)
        .map(|v| (0..n).map(|w| v != w && walks[(v, w)] > 0).collect())
        .collect();

    let certificate = CoreCertificate {
        n,
        gamma,
        gamma_tilde_nilpotency_order: order,
        gamma_inverse: inverse,
        checked_inequalities: checked,
    };
    Ok((
        DimensionGroup::from_closure(r.vertices().to_vec(), closure),
        certificate,
    ))
}

/// `[Q_{v,k}] = Σ_w (Γ^{−k})_{v,w} [P_w]`, where `Q_{v,k}` is the range
/// projection of the `k`-th power of the loop at `v` in `E_R`.
pub fn q_class(r: &DagRelation, v: &str, k: u32) -> Result<K0Element, DimensionError> {
    if k == 0 {
        return Err(DimensionError::InvalidPower(k));
    }
    let v = r.require(v)?;
    let inv = gamma_inverse(r)?;
    let pow = inv.checked_pow(k)?;
    Ok(K0Element(pow.row(v).to_vec()))
}

/// `Γ⁻¹ = Σ_{k<n} (−Γ̃)ᵏ`.
pub fn gamma_inverse(r: &DagRelation) -> Result<IntMatrix, DimensionError> {
    let n = r.vertex_count();
    let neg_tilde = r.adjacency_matrix().checked_neg()?;
    let mut power = IntMatrix::identity(n);
    let mut sum = IntMatrix::zeros(n, n);
    for _ in 0..n {
        sum = sum.checked_add(&power)?;
        power = power.checked_mul(&neg_tilde)?;
    }
    Ok(sum)
}

/// A vertex bijection `a → b` carrying the closure of `a` exactly onto the
/// closure of `b`, if one exists.
///
/// Since cone membership depends only on the closure, the induced basis
/// permutation is an isomorphism of ordered groups with unit. Candidates are
/// pruned by (elements above, elements below, height) before backtracking.
pub fn find_order_isomorphism(a: &DimensionGroup, b: &DimensionGroup) -> Option<Vec<usize>> {
    let n = a.rank();
    if n != b.rank() {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    // Most constrained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (sig_b.iter().filter(|&&s| s == sig_a[v]).count(), v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sig_a, &sig_b, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

type Signature = (usize, usize, usize);

fn signatures(dg: &DimensionGroup) -> Vec<Signature> {
    let n = dg.rank();
    // Height: longest chain ending at v.
    let mut height = vec![0usize; n];
    let mut by_below: Vec<usize> = (0..n).collect();
    let below: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&u| dg.closure[u][v]).count())
        .collect();
    by_below.sort_by_key(|&v| below[v]);
    for &v in &by_below {
        height[v] = (0..n)
            .filter(|&u| dg.closure[u][v])
            .map(|u| height[u] + 1)
            .max()
            .unwrap_or(0);
    }
    (0..n)
        .map(|v| {
            let above = (0..n).filter(|&w| dg.closure[v][w]).count();
            (above, below[v], height[v])
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &DimensionGroup,
    b: &DimensionGroup,
    sig_a: &[Signature],
    sig_b: &[Signature],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..b.rank() {
        if used[w] || sig_a[v] != sig_b[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let mu = map[u];
            a.closure[u][v] == b.closure[mu][w] && a.closure[v][u] == b.closure[w][mu]
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, sig_a, sig_b, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> K0Element {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let x = el("1, -7,4");
        assert_eq!(x.0, vec![1, -7, 4]);
        assert_eq!(x.to_string(), "1,-7,4");
        assert!(matches!(
            "1,a".parse::<K0Element>(),
            Err(DimensionError::Parse(_))
        ));
    }

    #[test]
    fn amplified_group_shapes() {
        let f3 = DagRelation::total_order(4);
        let dg = k0_amplified(&f3);
        assert_eq!(dg.rank(), 4);
        assert_eq!(dg.closure_pairs().len(), 6);
        assert_eq!(dg.order_unit(), K0Element(vec![1; 4]));

        let point = k0_amplified(&DagRelation::antichain(1));
        assert_eq!(point.rank(), 1);
        assert!(point.closure_pairs().is_empty());
        assert_eq!(point.order_unit(), K0Element(vec![1]));
    }

    #[test]
    fn cone_examples() {
        let dg = k0_amplified(&DagRelation::chain(3));
        assert!(dg.contains(&el("1,-7,4")).unwrap());
        assert!(!dg.contains(&el("0,-1,5")).unwrap());
        assert!(dg.contains(&K0Element::zero(3)).unwrap());

        let anti = k0_amplified(&DagRelation::antichain(2));
        assert!(!anti.contains(&el("1,-1")).unwrap());

        assert_eq!(
            dg.contains(&el("1,2")),
            Err(DimensionError::DimensionMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn leq_examples() {
        let dg = k0_amplified(&DagRelation::chain(2));
        let p1 = K0Element::basis(2, 0);
        let p2 = K0Element::basis(2, 1);
        assert!(dg.leq(&p2.scale(100), &p1).unwrap());
        assert!(dg.leq(&p1, &p1).unwrap());
        assert!(dg.leq(&p2, &p1).unwrap());
        assert!(!dg.leq(&p1, &p2).unwrap());
    }

    #[test]
    fn core_certificate_chain() {
        let (dg, cert) = k0_core(&DagRelation::chain(2), DEFAULT_K_CHECK).unwrap();
        assert_eq!(cert.gamma, IntMatrix::from_rows(&[[1, 1], [0, 1]]));
        assert_eq!(cert.gamma_inverse, IntMatrix::from_rows(&[[1, -1], [0, 1]]));
        assert_eq!(cert.gamma_tilde_nilpotency_order, 2);
        assert_eq!(cert.checked_inequalities.len(), DEFAULT_K_CHECK as usize);
        assert_eq!(dg, k0_amplified(&DagRelation::chain(2)));
    }

    #[test]
    fn core_certificate_l5_inequality() {
        let r = DagRelation::new(["1", "2", "3"], [("1", "2"), ("1", "3"), ("2", "3")]).unwrap();
        let (_, cert) = k0_core(&r, 3).unwrap();
        let hit = cert
            .checked_inequalities
            .iter()
            .find(|c| c.pair == ("1".into(), "3".into()) && c.k == 3)
            .unwrap();
        assert!(hit.value >= 3);
    }

    #[test]
    fn q_class_examples() {
        let r = DagRelation::chain(2);
        assert_eq!(q_class(&r, "1", 1).unwrap(), el("1,-1"));
        for k in 1..6 {
            assert_eq!(q_class(&r, "2", k).unwrap(), K0Element::basis(2, 1));
        }
        assert_eq!(q_class(&r, "1", 0), Err(DimensionError::InvalidPower(0)));
        assert!(matches!(
            q_class(&r, "x", 1),
            Err(DimensionError::Graph(GraphError::UnknownVertex(_)))
        ));
    }

    #[test]
    fn order_isomorphism_examples() {
        let chain = k0_amplified(&DagRelation::chain(3));
        assert_eq!(find_order_isomorphism(&chain, &chain), Some(vec![0, 1, 2]));

        let reversed = DagRelation::new(["1", "2", "3"], [("3", "2"), ("2", "1")]).unwrap();
        let rev = k0_amplified(&reversed);
        assert_eq!(find_order_isomorphism(&chain, &rev), Some(vec![2, 1, 0]));

        let anti = k0_amplified(&DagRelation::antichain(3));
        assert_eq!(find_order_isomorphism(&chain, &anti), None);
    }

    #[test]
    fn json_shape() {
        let dg = k0_amplified(&DagRelation::chain(2));
        assert_eq!(
            serde_json::to_string(&dg).unwrap(),
            r#"{"vertices":["1","2"],"closure_pairs":[["1","2"]],"unit":[1,1]}"#
        );
    }
}
