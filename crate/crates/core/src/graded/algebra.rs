//! Monoid-graded algebras over a prime field, given by structure constants
//! on a homogeneous basis.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::monoid::Monoid;
use crate::linalg::{FieldSpec, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: FieldSpec,
    monoid: Arc<Monoid>,
    symbols: Vec<String>,
    degrees: Vec<usize>,
    /// `mult[i][j]` holds the coordinates of `s_i s_j`.
    mult: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
}

impl GradedAlgebra {
    /// Validates grading and associativity, and finds the unit in degree 1.
    pub fn new(
        field: FieldSpec,
        monoid: Arc<Monoid>,
        symbols: Vec<String>,
        degrees: Vec<usize>,
        mult: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let n = symbols.len();
        if degrees.len() != n
            || degrees.iter().any(|&g| g >= monoid.order())
            || mult.len() != n
            || mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::Shape("structure constants must be n x n x n".into()));
        }
        let mult = mult
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x % field.p()).collect()).collect())
            .collect();
        let mut alg = GradedAlgebra {
            field,
            monoid,
            symbols,
            degrees,
            mult,
            unit: Vec::new(),
        };
        alg.validate_grading()?;
        alg.validate_associativity()?;
        alg.unit = alg.find_unit()?;
        Ok(alg)
    }

    fn validate_grading(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let deg = self.monoid.mul(self.degrees[i], self.degrees[j]);
                for k in 0..n {
                    if self.mult[i][j][k] != 0 && self.degrees[k] != deg {
                        return Err(Error::Violation(format!(
                            "{}·{} has a component outside degree {}",
                            self.symbols[i],
                            self.symbols[j],
                            self.monoid.name(deg)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_associativity(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_vec(&self.mult[i][j], &self.basis_vec(k));
                    let right = self.mul_vec(&self.basis_vec(i), &self.mult[j][k]);
                    if left != right {
                        return Err(Error::Violation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.symbols[i], self.symbols[j], self.symbols[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Solves `u s_j = s_j u = s_j` for `u` in the span of degree-1 basis elements.
    fn find_unit(&self) -> Result<Vec<u32>> {
        let n = self.dim();
        let cand: Vec<usize> = (0..n).filter(|&i| self.degrees[i] == self.monoid.unit()).collect();
        let rows = 2 * n * n;
        let a = Matrix::from_fn(self.field, rows, cand.len(), |r, c| {
            let (side, rest) = (r / (n * n), r % (n * n));
            let (j, k) = (rest / n, rest % n);
            let i = cand[c];
            if side == 0 {
                self.mult[i][j][k]
            } else {
                self.mult[j][i][k]
            }
        });
        let b = Matrix::from_fn(self.field, rows, 1, |r, _| {
            let rest = r % (n * n);
            u32::from(rest / n == rest % n)
        });
        let x = a
            .solve(&b)
            .map_err(|_| Error::Violation("no unit in degree 1".into()))?;
        let mut unit = vec![0u32; n];
        for (c, &i) in cand.iter().enumerate() {
            unit[i] = x.get(c, 0);
        }
        Ok(unit)
    }

    /// `k[G]` with basis `e_g` in degree `g`.
    pub fn monoid_algebra(field: FieldSpec, monoid: Arc<Monoid>) -> Self {
        let n = monoid.order();
        let symbols = monoid.names().iter().map(|g| format!("e_{g}")).collect();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| unit_vec(n, monoid.mul(i, j))).collect())
            .collect();
        Self::new(field, monoid.clone(), symbols, (0..n).collect(), mult).expect("monoid algebras are valid")
    }

    /// `k[G] / k·z` for a monoid with absorbing element `z ≠ 1`.
    pub fn contracted(field: FieldSpec, monoid: Arc<Monoid>) -> Option<Self> {
        let z = monoid.zero().filter(|&z| z != monoid.unit())?;
        let keep: Vec<usize> = (0..monoid.order()).filter(|&g| g != z).collect();
        let n = keep.len();
        let mult = keep
            .iter()
            .map(|&g| {
                keep.iter()
                    .map(|&h| {
                        let gh = monoid.mul(g, h);
                        match keep.iter().position(|&x| x == gh) {
                            Some(k) => unit_vec(n, k),
                            None => vec![0; n],
                        }
                    })
                    .collect()
            })
            .collect();
        let symbols = keep.iter().map(|&g| format!("e_{}", monoid.name(g))).collect();
        Some(Self::new(field, monoid, symbols, keep, mult).expect("contracted monoid algebras are valid"))
    }

    /// `k[G] ⊗ k[ε]/ε²` with `ε` in degree 1.
    pub fn with_dual_numbers(field: FieldSpec, monoid: Arc<Monoid>) -> Self {
        let g = monoid.order();
        let n = 2 * g;
        // basis index 2*x + e for e_x ε^e
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (x, a) = (i / 2, i % 2);
                        let (y, b) = (j / 2, j % 2);
                        if a + b > 1 {
                            vec![0; n]
                        } else {
                            unit_vec(n, 2 * monoid.mul(x, y) + a + b)
                        }
                    })
                    .collect()
            })
            .collect();
        let symbols = (0..n)
            .map(|i| {
                let base = format!("e_{}", monoid.name(i / 2));
                if i % 2 == 1 {
                    format!("{base}ε")
                } else {
                    base
                }
            })
            .collect();
        let degrees = (0..n).map(|i| i / 2).collect();
        Self::new(field, monoid, symbols, degrees, mult).expect("tensor with dual numbers is valid")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, sym: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == sym)
            .ok_or_else(|| Error::UnknownElement(sym.to_string()))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    /// Coordinates of `s_i s_j`.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        &self.mult[i][j]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u32> {
        unit_vec(self.dim(), i)
    }

    /// Bilinear product of two coordinate vectors.
    pub fn mul_vec(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.dim();
        let mut out = vec![0u32; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = f.mul(x[i], y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    *o = f.add(*o, f.mul(c, self.mult[i][j][k]));
                }
            }
        }
        out
    }
}

pub(crate) fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn group_algebra_of_z2() {
        let alg = GradedAlgebra::monoid_algebra(f(), Arc::new(Monoid::cyclic_group(2)));
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.unit(), &[1, 0]);
        assert_eq!(alg.product(1, 1), &[1, 0]);
    }

    #[test]
    fn contracted_and_dual_algebras() {
        let sat = Arc::new(Monoid::saturating(3));
        let c = GradedAlgebra::contracted(f(), sat.clone()).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.product(1, 1), &[0, 0]);
        assert!(GradedAlgebra::contracted(f(), Arc::new(Monoid::cyclic_group(2))).is_none());
        let d = GradedAlgebra::with_dual_numbers(f(), Arc::new(Monoid::cyclic_group(2)));
        assert_eq!(d.dim(), 4);
        assert_eq!(d.unit(), &[1, 0, 0, 0]);
        assert_eq!(d.product(1, 1), &[0, 0, 0, 0]);
    }

    #[test]
    fn grading_violation_is_reported() {
        let z2 = Arc::new(Monoid::cyclic_group(2));
        // e_g · e_g landing in degree g instead of 1.
        let mult = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]];
        let err = GradedAlgebra::new(f(), z2, vec!["e_1".into(), "e_g".into()], vec![0, 1], mult).unwrap_err();
        assert!(matches!(err, Error::Violation(_)));
    }

    #[test]
    fn non_unital_algebra_is_rejected() {
        let z2 = Arc::new(Monoid::cyclic_group(2));
        let mult = vec![vec![vec![0, 0], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]];
        let err = GradedAlgebra::new(f(), z2, vec!["x".into(), "y".into()], vec![0, 1], mult).unwrap_err();
        assert_eq!(err, Error::Violation("no unit in degree 1".into()));
    }

    #[test]
    fn catalog_algebras_are_valid() {
        for m in Monoid::catalog(3) {
            let m = Arc::new(m);
            GradedAlgebra::monoid_algebra(f(), m.clone());
            GradedAlgebra::with_dual_numbers(f(), m.clone());
            GradedAlgebra::contracted(f(), m);
        }
    }
}
