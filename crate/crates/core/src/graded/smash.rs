//! Smash products `S#A`, local units, and the comparison with the category
//! algebra of the action category.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::act::GAct;
use crate::graded::algebra::{unit_vec, GradedAlgebra};
use crate::graded::monoid::Monoid;
use crate::linalg::FieldSpec;

/// The non-unital algebra with basis `s_i p_a`, indexed `i * |A| + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashAlgebra {
    algebra: Arc<GradedAlgebra>,
    act: Arc<GAct>,
    mult: Vec<Vec<Vec<u32>>>,
}

/// Sparse product of two coordinate vectors under a structure table.
fn mul_sparse(field: FieldSpec, table: &[Vec<Vec<u32>>], x: &[u32], y: &[u32]) -> Vec<u32> {
    let n = x.len();
    let mut out = vec![0u32; n];
    for (i, &xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
        for (j, &yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
            let c = field.mul(xi, yj);
            for (k, &t) in table[i][j].iter().enumerate() {
                if t != 0 {
                    out[k] = field.add(out[k], field.mul(c, t));
                }
            }
        }
    }
    out
}

fn check_associative(field: FieldSpec, table: &[Vec<Vec<u32>>]) -> Result<()> {
    let n = table.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = mul_sparse(field, table, &table[i][j], &unit_vec(n, k));
                let right = mul_sparse(field, table, &unit_vec(n, i), &table[j][k]);
                if left != right {
                    return Err(Error::Violation(format!("associativity fails at basis triple ({i}, {j}, {k})")));
                }
            }
        }
    }
    Ok(())
}

impl SmashAlgebra {
    /// `(s_i p_a)(s_j p_b) = (s_i s_j) p_b` if `deg(s_j)·b = a`, else 0.
    pub fn new(algebra: Arc<GradedAlgebra>, act: Arc<GAct>) -> Result<Self> {
        if algebra.monoid() != act.monoid() {
            return Err(Error::MismatchedBase);
        }
        let (ds, na) = (algebra.dim(), act.len());
        let n = ds * na;
        let mut mult = vec![vec![vec![0u32; n]; n]; n];
        for i in 0..ds {
            for a in 0..na {
                for j in 0..ds {
                    for b in 0..na {
                        if act.apply(algebra.degree(j), b) != a {
                            continue;
                        }
                        let prod = algebra.product(i, j);
                        let cell = &mut mult[i * na + a][j * na + b];
                        for (k, &c) in prod.iter().enumerate() {
                            cell[k * na + b] = c;
                        }
                    }
                }
            }
        }
        check_associative(algebra.field(), &mult)?;
        Ok(SmashAlgebra { algebra, act, mult })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn act(&self) -> &Arc<GAct> {
        &self.act
    }

    pub fn dim(&self) -> usize {
        self.mult.len()
    }

    pub fn index(&self, i: usize, a: usize) -> usize {
        i * self.act.len() + a
    }

    /// `(i, a)` for a basis index.
    pub fn split_index(&self, x: usize) -> (usize, usize) {
        (x / self.act.len(), x % self.act.len())
    }

    pub fn product(&self, x: usize, y: usize) -> &[u32] {
        &self.mult[x][y]
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        mul_sparse(self.algebra.field(), &self.mult, x, y)
    }

    /// `p_a = 1_S p_a`.
    pub fn p(&self, a: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        for (k, &u) in self.algebra.unit().iter().enumerate() {
            v[self.index(k, a)] = u;
        }
        v
    }

    fn sum_of_p(&self, points: &[usize]) -> Vec<u32> {
        let f = self.algebra.field();
        points.iter().fold(vec![0u32; self.dim()], |acc, &a| {
            acc.iter().zip(self.p(a)).map(|(x, y)| f.add(*x, y)).collect()
        })
    }

    /// `w = Σ_{a ∈ B} p_a` with `B` the points and targets of the
    /// homogeneous components of `t`; checks `w² = w` and `w t w = w t = t`.
    pub fn local_unit(&self, t: &[Vec<u32>]) -> Result<LocalUnit> {
        if t.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut points = Vec::new();
        for x in t {
            for (idx, &c) in x.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (i, a) = self.split_index(idx);
                points.push(a);
                points.push(self.act.apply(self.algebra.degree(i), a));
            }
        }
        points.sort_unstable();
        points.dedup();
        let w = self.sum_of_p(&points);
        if self.mul(&w, &w) != w {
            return Err(Error::AssertionFailure("local unit is not idempotent".into()));
        }
        for x in t {
            let wx = self.mul(&w, x);
            if wx != *x || self.mul(&wx, &w) != *x {
                return Err(Error::AssertionFailure("local unit does not fix an element".into()));
            }
        }
        Ok(LocalUnit { points, w })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalUnit {
    pub points: Vec<usize>,
    pub w: Vec<u32>,
}

/// Outcome of comparing `k[G∫A]` with `k[G]#A` under `e_(a,g) ↦ e_g p_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryAlgebraReport {
    pub dim: usize,
    pub bijective: bool,
    pub multiplicative: bool,
    /// `Σ_a p_a` is a two-sided unit.
    pub unital: bool,
}

impl CategoryAlgebraReport {
    pub fn is_isomorphism(&self) -> bool {
        self.bijective && self.multiplicative
    }
}

/// Structure constants of the category algebra of `G∫A`, basis
/// `e_(a,g)` indexed `a * |G| + g`.
pub fn category_algebra(monoid: &Monoid, act: &GAct) -> Vec<Vec<Vec<u32>>> {
    let (ng, na) = (monoid.order(), act.len());
    let n = ng * na;
    let mut mult = vec![vec![vec![0u32; n]; n]; n];
    // e_v e_u with u = (a, g): a -> ga and v = (b, h): b -> hb.
    for b in 0..na {
        for h in 0..ng {
            for a in 0..na {
                for g in 0..ng {
                    if b == act.apply(g, a) {
                        mult[b * ng + h][a * ng + g][a * ng + monoid.mul(h, g)] = 1;
                    }
                }
            }
        }
    }
    mult
}

pub fn category_algebra_iso(field: FieldSpec, act: Arc<GAct>) -> Result<CategoryAlgebraReport> {
    let monoid = act.monoid().clone();
    let alg = Arc::new(GradedAlgebra::monoid_algebra(field, monoid.clone()));
    let smash = SmashAlgebra::new(alg, act.clone())?;
    let cat = category_algebra(&monoid, &act);
    check_associative(field, &cat)?;
    let (ng, na) = (monoid.order(), act.len());
    let n = ng * na;
    let phi: Vec<usize> = (0..n).map(|u| smash.index(u % ng, u / ng)).collect();
    let mut hit = vec![false; n];
    for &x in &phi {
        hit[x] = true;
    }
    let bijective = hit.iter().all(|&h| h) && smash.dim() == n;
    let push = |v: &[u32]| {
        let mut out = vec![0u32; n];
        for (u, &c) in v.iter().enumerate() {
            out[phi[u]] = c;
        }
        out
    };
    let multiplicative = (0..n).all(|v| (0..n).all(|u| push(&cat[v][u]) == *smash.product(phi[v], phi[u])));
    let w = smash.sum_of_p(&(0..na).collect::<Vec<_>>());
    let unital = (0..n).all(|x| {
        let e = unit_vec(n, x);
        smash.mul(&w, &e) == e && smash.mul(&e, &w) == e
    });
    Ok(CategoryAlgebraReport {
        dim: n,
        bijective,
        multiplicative,
        unital,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn z2_regular() -> SmashAlgebra {
        let z2 = Arc::new(Monoid::cyclic_group(2));
        let alg = Arc::new(GradedAlgebra::monoid_algebra(f(), z2.clone()));
        SmashAlgebra::new(alg, Arc::new(GAct::regular(z2))).unwrap()
    }

    #[test]
    fn z2_products() {
        let s = z2_regular();
        let (one, g) = (0, 1);
        // (e_g p_1)(e_g p_g) = e_1 p_g since g·g = 1.
        let lhs = s.product(s.index(g, one), s.index(g, g));
        assert_eq!(lhs, unit_vec(4, s.index(one, g)).as_slice());
        // (e_g p_1)(e_g p_1): g·1 = g ≠ 1.
        assert!(s.product(s.index(g, one), s.index(g, one)).iter().all(|&c| c == 0));
        // Orthogonal idempotents.
        for a in 0..2 {
            for b in 0..2 {
                let expect = if a == b { s.p(b) } else { vec![0; 4] };
                assert_eq!(s.mul(&s.p(a), &s.p(b)), expect);
            }
        }
    }

    #[test]
    fn local_units() {
        let s = z2_regular();
        let t = unit_vec(4, s.index(1, 0));
        let lu = s.local_unit(&[t]).unwrap();
        assert_eq!(lu.points, vec![0, 1]);
        let lu = s.local_unit(&[s.p(1)]).unwrap();
        assert_eq!(lu.w, s.p(1));
        assert_eq!(s.local_unit(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn category_algebra_of_trivial_monoid_is_diagonal() {
        let act = Arc::new(GAct::trivial(Arc::new(Monoid::trivial()), vec!["x".into(), "y".into(), "z".into()]));
        let r = category_algebra_iso(f(), act.clone()).unwrap();
        assert!(r.is_isomorphism() && r.unital);
        assert_eq!(r.dim, 3);
        let cat = category_algebra(act.monoid(), &act);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(cat[v][u], if u == v { unit_vec(3, u) } else { vec![0; 3] });
            }
        }
    }

    #[test]
    fn z2_category_algebra_matches() {
        let z2 = Arc::new(Monoid::cyclic_group(2));
        let r = category_algebra_iso(f(), Arc::new(GAct::regular(z2))).unwrap();
        assert_eq!(r.dim, 4);
        assert!(r.is_isomorphism() && r.unital);
    }

    #[test]
    fn small_catalog_is_isomorphic() {
        for m in Monoid::catalog(3) {
            for act in GAct::catalog(Arc::new(m), 3) {
                let r = category_algebra_iso(f(), Arc::new(act)).unwrap();
                assert!(r.is_isomorphism() && r.unital);
            }
        }
    }
}
