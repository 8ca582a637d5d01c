//! A named family of graded operators on one index space.

use std::collections::BTreeMap;

use super::expr::Expr;
use super::graded::{GradedOperator, GradedVector};
use super::space::IndexSpace;
use super::{OpError, Q};

#[derive(Debug, Clone)]
pub struct Representation {
    space: IndexSpace,
    ops: BTreeMap<String, (GradedOperator, GradedOperator)>,
}

impl Representation {
    pub fn new(space: IndexSpace) -> Self {
        Representation {
            space,
            ops: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &IndexSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Binds `name`, replacing any previous binding.
    pub fn insert(&mut self, name: impl Into<String>, op: GradedOperator) {
        assert_eq!(op.dim(), self.dim(), "operator lives on another space");
        let adj = op.adjoint();
        self.ops.insert(name.into(), (op, adj));
    }

    /// Evaluates `e` and binds the result to `name`.
    pub fn define(&mut self, name: impl Into<String>, e: &Expr) -> Result<(), OpError> {
        let op = self.eval(e)?;
        self.insert(name, op);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&GradedOperator, OpError> {
        self.ops
            .get(name)
            .map(|(op, _)| op)
            .ok_or_else(|| OpError::UnboundSymbol(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    /// The full operator denoted by `e`.
    pub fn eval(&self, e: &Expr) -> Result<GradedOperator, OpError> {
        let dim = self.dim();
        Ok(match e {
            Expr::Sym(s) => self.get(s)?.clone(),
            Expr::Adj(inner) => self.eval(inner)?.adjoint(),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Scale(c, inner) => self.eval(inner)?.scale(*c),
            Expr::Identity => GradedOperator::identity(dim),
            Expr::Zero => GradedOperator::zero(dim),
        })
    }

    /// `e` applied to `v`, without forming the operator.
    pub fn apply(&self, e: &Expr, v: &GradedVector) -> Result<GradedVector, OpError> {
        Ok(match e {
            Expr::Sym(s) => self.lookup(s)?.0.apply(v),
            Expr::Adj(inner) => self.apply_adjoint(inner, v)?,
            Expr::Mul(a, b) => self.apply(a, &self.apply(b, v)?)?,
            Expr::Add(a, b) => self.apply(a, v)?.add(&self.apply(b, v)?),
            Expr::Scale(c, inner) => self.apply(inner, v)?.scale(*c),
            Expr::Identity => v.clone(),
            Expr::Zero => GradedVector::default(),
        })
    }

    /// `e*` applied to `v`. Scalars are real, so they pass through unchanged.
    pub fn apply_adjoint(&self, e: &Expr, v: &GradedVector) -> Result<GradedVector, OpError> {
        Ok(match e {
            Expr::Sym(s) => self.lookup(s)?.1.apply(v),
            Expr::Adj(inner) => self.apply(inner, v)?,
            Expr::Mul(a, b) => self.apply_adjoint(b, &self.apply_adjoint(a, v)?)?,
            Expr::Add(a, b) => self.apply_adjoint(a, v)?.add(&self.apply_adjoint(b, v)?),
            Expr::Scale(c, inner) => self.apply_adjoint(inner, v)?.scale(*c),
            Expr::Identity => v.clone(),
            Expr::Zero => GradedVector::default(),
        })
    }

    /// Gauge degree of `e`, computed from the degrees of its symbols.
    /// `None` means the expression is identically zero.
    pub fn degree(&self, e: &Expr) -> Result<Option<i64>, OpError> {
        Ok(match e {
            Expr::Sym(s) => {
                let op = &self.lookup(s)?.0;
                if !op.is_homogeneous() {
                    return Err(OpError::Inhomogeneous(s.clone()));
                }
                op.degree()
            }
            Expr::Adj(inner) => self.degree(inner)?.map(|d| -d),
            Expr::Mul(a, b) => match (self.degree(a)?, self.degree(b)?) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            },
            Expr::Add(a, b) => merge_degrees(self.degree(a)?, self.degree(b)?, &e.to_string())?,
            Expr::Scale(c, inner) => {
                if *c == Q::from_integer(0) {
                    None
                } else {
                    self.degree(inner)?
                }
            }
            Expr::Identity => Some(0),
            Expr::Zero => None,
        })
    }

    fn lookup(&self, name: &str) -> Result<&(GradedOperator, GradedOperator), OpError> {
        self.ops
            .get(name)
            .ok_or_else(|| OpError::UnboundSymbol(name.to_string()))
    }
}

pub(crate) fn merge_degrees(
    a: Option<i64>,
    b: Option<i64>,
    context: &str,
) -> Result<Option<i64>, OpError> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(OpError::DegreeMismatch {
            context: context.to_string(),
            left: x,
            right: y,
        }),
        (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::expr::sym;
    use crate::operator::sparse::SparseMatrix;

    fn rep() -> Representation {
        let mut r = Representation::new(IndexSpace::new(vec![usize::MAX; 3], vec![2, 1, 0]));
        let t = SparseMatrix::partial_map(3, |m| (m + 1 < 3).then_some(m + 1));
        r.insert("T", GradedOperator::homogeneous(1, t));
        r
    }

    #[test]
    fn apply_agrees_with_eval() {
        let r = rep();
        let t = sym("T");
        let e = t.adj() * t.clone() * t.clone() + t.clone() * t.adj() * t.clone();
        let full = r.eval(&e).unwrap();
        for i in 0..3 {
            let v = GradedVector::basis(0, i);
            assert_eq!(r.apply(&e, &v).unwrap(), full.apply(&v));
            assert_eq!(r.apply(&e.adj(), &v).unwrap(), full.adjoint().apply(&v));
        }
    }

    #[test]
    fn degrees() {
        let r = rep();
        let t = sym("T");
        assert_eq!(r.degree(&(t.clone() * t.adj())).unwrap(), Some(0));
        assert_eq!(r.degree(&t.pow(3)).unwrap(), Some(3));
        assert!(matches!(
            r.degree(&(t.clone() + Expr::one())),
            Err(OpError::DegreeMismatch {
                left: 1,
                right: 0,
                ..
            })
        ));
        assert_eq!(r.degree(&sym("X")), Err(OpError::UnboundSymbol("X".into())));
    }
}
