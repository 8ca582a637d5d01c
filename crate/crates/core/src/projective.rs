//! `K⁰(ℂPⁿ⁻¹) = ℤ[x]/(xⁿ)` with `x = 1 − [L₁]`, line-bundle classes and the
//! positive cone they generate.
//!
//! A non-zero positive class is a non-negative combination of line-bundle
//! classes `[L_k]`, so membership can be proved by exhibiting one
//! ([`cone_certificate_search`]). Failure of the search proves nothing by
//! itself; non-membership is only claimed from the rank condition or from
//! the sign of an `x²` coefficient ([`nonmembership_proof`]).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dimension::{k0_amplified, K0Element};
use crate::graph::DagRelation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("integer overflow")]
    Overflow,
}

/// `a₀ + a₁x + … + a_{n−1}x^{n−1}` in `ℤ[x]/(xⁿ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PolyModX {
    n: usize,
    coeffs: Vec<i64>,
}

impl PolyModX {
    pub fn new(n: usize, coeffs: Vec<i64>) -> Result<Self, ProjectiveError> {
        if n == 0 {
            return Err(ProjectiveError::ZeroOrder);
        }
        if coeffs.len() != n {
            return Err(ProjectiveError::LengthMismatch {
                expected: n,
                got: coeffs.len(),
            });
        }
        Ok(PolyModX { n, coeffs })
    }

    /// Parses comma-separated coefficients `a₀,a₁,…`.
    pub fn parse(n: usize, s: &str) -> Result<Self, ProjectiveError> {
        let coeffs = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ProjectiveError::Parse(s.to_string()))?;
        Self::new(n, coeffs)
    }

    pub fn zero(n: usize) -> Self {
        PolyModX {
            n,
            coeffs: vec![0; n],
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[0] = c;
        p
    }

    /// The Euler class `x`.
    pub fn x(n: usize) -> Self {
        let mut p = Self::zero(n);
        if n > 1 {
            p.coeffs[1] = 1;
        }
        p
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "orders differ");
        PolyModX {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        PolyModX {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// Product reduced mod `xⁿ`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "orders differ");
        let mut out = vec![0i64; self.n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs[..self.n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyModX {
            n: self.n,
            coeffs: out,
        }
    }
}

impl fmt::Display for PolyModX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn binomial(n: i64, k: usize) -> i64 {
    (0..k as i64).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `[L_k] = Σ_i C(k, i)(−x)^i`, with `C(k, i) = (−1)^i C(|k|+i−1, i)` for
/// `k < 0`.
pub fn line_bundle_class(k: i64, n: usize) -> PolyModX {
    let coeffs = (0..n)
        .map(|i| {
            if k >= 0 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * binomial(k, i)
            } else {
                binomial(-k + i as i64 - 1, i)
            }
        })
        .collect();
    PolyModX { n, coeffs }
}

/// The rank condition: `p = 0` or `a₀ ≥ 1`.
pub fn classical_cone_necessary(p: &PolyModX) -> bool {
    p.is_zero() || p.coeff(0) >= 1
}

/// Coefficients `c_k ≥ 0` with `Σ c_k [L_k] = p`.
pub type Certificate = BTreeMap<i64, u64>;

/// Expands a certificate back into a polynomial.
pub fn certificate_value(cert: &Certificate, n: usize) -> PolyModX {
    cert.iter().fold(PolyModX::zero(n), |acc, (&k, &c)| {
        acc.add(&line_bundle_class(k, n).scale(c as i64))
    })
}

/// Searches non-negative combinations of `[L_k]`, `|k| ≤ bound`, equal to
/// `p`. Ranks add, so exactly `a₀` classes are used. Candidates are tried
/// in the order `0, −1, 1, −2, 2, …`, each with as many copies as possible
/// first. For `n ≥ 3` partial sums whose `x²` coefficient already exceeds
/// the target are abandoned, since every `[L_k]` has `x²` coefficient
/// `k(k−1)/2 ≥ 0`.
///
/// `Some` proves membership; `None` only means nothing was found.
pub fn cone_certificate_search(p: &PolyModX, bound: i64) -> Option<Certificate> {
    if p.is_zero() {
        return Some(Certificate::new());
    }
    let a0 = p.coeff(0);
    if a0 < 1 {
        return None;
    }
    let n = p.order();
    let mut candidates = vec![0i64];
    for k in 1..=bound.max(0) {
        candidates.push(-k);
        candidates.push(k);
    }
    let classes: Vec<PolyModX> = candidates
        .iter()
        .map(|&k| line_bundle_class(k, n))
        .collect();
    let mut chosen = vec![0u64; candidates.len()];
    let found = search(p, &classes, 0, a0 as u64, PolyModX::zero(n), &mut chosen);
    found.then(|| {
        candidates
            .iter()
            .zip(&chosen)
            .filter(|(_, &c)| c > 0)
            .map(|(&k, &c)| (k, c))
            .collect()
    })
}

fn search(
    target: &PolyModX,
    classes: &[PolyModX],
    idx: usize,
    remaining: u64,
    acc: PolyModX,
    chosen: &mut [u64],
) -> bool {
    if remaining == 0 {
        return acc == *target;
    }
    if idx == classes.len() {
        return false;
    }
    if target.order() >= 3 && acc.coeff(2) > target.coeff(2) {
        return false;
    }
    for count in (0..=remaining).rev() {
        let next = acc.add(&classes[idx].scale(count as i64));
        chosen[idx] = count;
        if search(target, classes, idx + 1, remaining - count, next, chosen) {
            return true;
        }
    }
    chosen[idx] = 0;
    false
}

/// Why a class is not in the positive cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonMembershipProof {
    /// Non-zero with `a₀ ≤ 0`.
    Rank { constant_term: i64 },
    /// `n ≥ 3` and the `x²` coefficient is negative.
    NegativeX2 { x2_coefficient: i64 },
    /// `[L_k]·p` has negative `x²` coefficient; the cone is closed under
    /// multiplication by the positive class `[L_k]`.
    NegativeX2AfterMultiplying {
        multiplier: i64,
        product: PolyModX,
        x2_coefficient: i64,
    },
}

/// A proof that `p` is not positive, from the rank condition or from `x²`
/// coefficients of `p` and of `[L_k]·p` for `|k| ≤ bound`.
pub fn nonmembership_proof(p: &PolyModX, bound: i64) -> Option<NonMembershipProof> {
    if !classical_cone_necessary(p) {
        return Some(NonMembershipProof::Rank {
            constant_term: p.coeff(0),
        });
    }
    if p.order() < 3 {
        return None;
    }
    if p.coeff(2) < 0 {
        return Some(NonMembershipProof::NegativeX2 {
            x2_coefficient: p.coeff(2),
        });
    }
    let mut ks = vec![];
    for k in 1..=bound.max(0) {
        ks.push(k);
        ks.push(-k);
    }
    ks.into_iter().find_map(|k| {
        let product = line_bundle_class(k, p.order()).mul(p);
        (product.coeff(2) < 0).then(|| NonMembershipProof::NegativeX2AfterMultiplying {
            multiplier: k,
            x2_coefficient: product.coeff(2),
            product,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub necessary: bool,
    pub certificate: Option<Certificate>,
    pub proof_of_nonmembership: Option<NonMembershipProof>,
}

pub fn cone_report(p: &PolyModX, bound: i64) -> ConeReport {
    let certificate = cone_certificate_search(p, bound);
    let proof_of_nonmembership = if certificate.is_some() {
        None
    } else {
        nonmembership_proof(p, bound)
    };
    ConeReport {
        necessary: classical_cone_necessary(p),
        certificate,
        proof_of_nonmembership,
    }
}

/// Status of the constant term `1 − k·a₀` of `f(1 − k[P_n])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantStatus {
    /// `≥ 1`: compatible with a non-zero positive image.
    Ok,
    /// `= 0`: the image would have to be `0`.
    RequiresZero,
    /// `< 0`: no positive class has this constant term.
    Violates,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintRow {
    pub a0: i64,
    pub k: i64,
    pub constant_term: i64,
    pub status: ConstantStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainWitness {
    pub k: i64,
    /// `1 − k[P_n]` in the basis `[P_1],…,[P_n]`.
    pub element: K0Element,
    pub positive: bool,
}

/// Why no unital order-preserving map from the quantum dimension group
/// (`ℤⁿ` with the lexicographic cone) to `K⁰(ℂPⁿ⁻¹)` can be injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub n: usize,
    pub p_n: K0Element,
    pub p_n_positive: bool,
    pub witnesses: Vec<DomainWitness>,
    pub constraints: Vec<ConstraintRow>,
    /// Smallest `k` with `1 − k·a₀ < 0` when `a₀ = 1`.
    pub first_violation_k: Option<i64>,
    pub conclusion: String,
}

pub fn refute_unital_order_embedding(n: usize) -> Refutation {
    assert!(n >= 2, "need at least two vertices");
    let dg = k0_amplified(&DagRelation::total_order(n));
    let p_n = K0Element::basis(n, n - 1);
    let unit = dg.order_unit();
    let positive = |x: &K0Element| dg.contains(x).expect("lengths agree");
    let witnesses = (0..=2)
        .map(|k| {
            let element = unit.sub(&p_n.scale(k));
            DomainWitness {
                k,
                positive: positive(&element),
                element,
            }
        })
        .collect();
    let mut constraints = Vec::new();
    for a0 in 0..=2 {
        for k in 0..=2 {
            let c = 1 - k * a0;
            let status = match c {
                c if c >= 1 => ConstantStatus::Ok,
                0 => ConstantStatus::RequiresZero,
                _ => ConstantStatus::Violates,
            };
            constraints.push(ConstraintRow {
                a0,
                k,
                constant_term: c,
                status,
            });
        }
    }
    let first_violation_k = constraints
        .iter()
        .find(|r| r.a0 == 1 && r.status == ConstantStatus::Violates)
        .map(|r| r.k);
    Refutation {
        n,
        p_n_positive: positive(&p_n),
        p_n,
        witnesses,
        constraints,
        first_violation_k,
        conclusion: "any dimension-group homomorphism kills [P_n]".to_string(),
    }
}
