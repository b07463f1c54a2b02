//! Modules in three guises: functors out of the action category, graded
//! modules over `S` with components indexed by `A`, and modules over `S#A`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graded::act::GAct;
use crate::graded::algebra::GradedAlgebra;
use crate::graded::smash::SmashAlgebra;
use crate::linalg::{FieldSpec, Matrix};
use crate::pmod::{random_invertible, random_matrix};

fn offsets(spaces: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(spaces.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &d in spaces {
        acc += d;
        out.push(acc);
    }
    out
}

/// `Σ_k c_k X_k` for a coordinate vector `c`.
fn combine(field: FieldSpec, rows: usize, cols: usize, coeffs: &[u32], mats: impl Fn(usize) -> Matrix) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            out = out.add(&mats(k).scale(c));
        }
    }
    out
}

/// `F(a)` for every point and `F(a, s_i): F(a) -> F(g_i a)` for every
/// basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorModule {
    algebra: Arc<GradedAlgebra>,
    act: Arc<GAct>,
    spaces: Vec<usize>,
    /// `arrows[a][i]`
    arrows: Vec<Vec<Matrix>>,
}

impl FunctorModule {
    pub fn new(algebra: Arc<GradedAlgebra>, act: Arc<GAct>, spaces: Vec<usize>, arrows: Vec<Vec<Matrix>>) -> Result<Self> {
        let f = FunctorModule {
            algebra,
            act,
            spaces,
            arrows,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let (alg, act) = (&self.algebra, &self.act);
        if alg.monoid() != act.monoid() {
            return Err(Error::MismatchedBase);
        }
        let n = alg.dim();
        if self.spaces.len() != act.len() || self.arrows.len() != act.len() {
            return Err(Error::InvalidModule("one space and one row of arrows per point".into()));
        }
        for a in 0..act.len() {
            if self.arrows[a].len() != n {
                return Err(Error::InvalidModule(format!("point {} needs {n} arrows", act.points()[a])));
            }
            for i in 0..n {
                let b = self.target(a, i);
                if self.arrows[a][i].shape() != (self.spaces[b], self.spaces[a]) {
                    return Err(Error::InvalidModule(format!(
                        "arrow ({}, {}) has shape {:?}, expected {:?}",
                        act.points()[a],
                        alg.symbols()[i],
                        self.arrows[a][i].shape(),
                        (self.spaces[b], self.spaces[a])
                    )));
                }
            }
        }
        let field = alg.field();
        for a in 0..act.len() {
            let unit = combine(field, self.spaces[a], self.spaces[a], alg.unit(), |k| self.arrows[a][k].clone());
            if unit != Matrix::identity(field, self.spaces[a]) {
                return Err(Error::InvalidModule(format!("unit does not act as the identity at {}", act.points()[a])));
            }
            for i in 0..n {
                let ga = self.target(a, i);
                for j in 0..n {
                    let lhs = self.arrows[ga][j].mul(&self.arrows[a][i]);
                    let target = self.target(ga, j);
                    let rhs = combine(field, self.spaces[target], self.spaces[a], alg.product(j, i), |k| {
                        self.arrows[a][k].clone()
                    });
                    if lhs != rhs {
                        return Err(Error::InvalidModule(format!(
                            "F({}, {})F({}, {}) differs from F({}, {}·{})",
                            act.points()[ga],
                            alg.symbols()[j],
                            act.points()[a],
                            alg.symbols()[i],
                            act.points()[a],
                            alg.symbols()[j],
                            alg.symbols()[i]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<GradedAlgebra>, act: Arc<GAct>) -> Self {
        let field = algebra.field();
        let arrows = (0..act.len())
            .map(|_| (0..algebra.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect())
            .collect();
        FunctorModule {
            spaces: vec![0; act.len()],
            algebra,
            act,
            arrows,
        }
    }

    /// `g_i · a`
    pub fn target(&self, a: usize, i: usize) -> usize {
        self.act.apply(self.algebra.degree(i), a)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn act(&self) -> &Arc<GAct> {
        &self.act
    }

    pub fn spaces(&self) -> &[usize] {
        &self.spaces
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().sum()
    }

    pub fn arrow(&self, a: usize, i: usize) -> &Matrix {
        &self.arrows[a][i]
    }

    pub fn arrows(&self) -> &[Vec<Matrix>] {
        &self.arrows
    }

    pub fn direct_sum(&self, other: &FunctorModule) -> Result<FunctorModule> {
        if self.algebra != other.algebra || self.act != other.act {
            return Err(Error::MismatchedBase);
        }
        let field = self.algebra.field();
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(x, y)| x + y).collect();
        let arrows = self
            .arrows
            .iter()
            .zip(&other.arrows)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| Matrix::block_diag(field, &[x, y])).collect())
            .collect();
        Ok(FunctorModule {
            algebra: self.algebra.clone(),
            act: self.act.clone(),
            spaces,
            arrows,
        })
    }

    /// Replaces the basis of `F(a)` by the columns of `autos[a]`.
    pub fn change_basis(&self, autos: &[Matrix]) -> Result<FunctorModule> {
        if autos.len() != self.spaces.len() {
            return Err(Error::Shape("one automorphism per point".into()));
        }
        let mut inverses = Vec::with_capacity(autos.len());
        for (a, m) in autos.iter().enumerate() {
            if m.shape() != (self.spaces[a], self.spaces[a]) {
                return Err(Error::Shape(format!("automorphism at point {a} has the wrong size")));
            }
            inverses.push(m.inverse().ok_or_else(|| Error::Shape(format!("matrix at point {a} is singular")))?);
        }
        let arrows = (0..self.spaces.len())
            .map(|a| {
                (0..self.algebra.dim())
                    .map(|i| inverses[self.target(a, i)].mul(&self.arrows[a][i]).mul(&autos[a]))
                    .collect()
            })
            .collect();
        Ok(FunctorModule {
            arrows,
            ..self.clone()
        })
    }

    /// Quotient by the submodule generated by `v ∈ F(b)`.
    pub fn quotient_by_generated(&self, b: usize, v: &Matrix) -> Result<FunctorModule> {
        if v.shape() != (self.spaces[b], 1) {
            return Err(Error::Shape("generator must be a column of F(b)".into()));
        }
        let field = self.algebra.field();
        let n = self.act.len();
        let mut cols: Vec<Vec<Matrix>> = vec![Vec::new(); n];
        for k in 0..self.algebra.dim() {
            cols[self.target(b, k)].push(self.arrows[b][k].mul(v));
        }
        let cokernels: Vec<_> = (0..n)
            .map(|c| {
                let refs: Vec<&Matrix> = cols[c].iter().collect();
                Matrix::hstack(field, self.spaces[c], &refs).cokernel()
            })
            .collect();
        let spaces = cokernels.iter().map(|q| q.dim).collect();
        let arrows = (0..n)
            .map(|a| {
                (0..self.algebra.dim())
                    .map(|i| {
                        cokernels[self.target(a, i)]
                            .projection
                            .mul(&self.arrows[a][i])
                            .mul(&cokernels[a].section)
                    })
                    .collect()
            })
            .collect();
        Ok(FunctorModule {
            algebra: self.algebra.clone(),
            act: self.act.clone(),
            spaces,
            arrows,
        })
    }
}

/// The free module on one generator at `a0`: `F(b)` has a basis indexed by
/// `{s_k : deg(s_k)·a0 = b}`.
pub fn free_functor_module(algebra: Arc<GradedAlgebra>, act: Arc<GAct>, a0: usize) -> FunctorModule {
    let field = algebra.field();
    let n = algebra.dim();
    let home: Vec<usize> = (0..n).map(|k| act.apply(algebra.degree(k), a0)).collect();
    let mut spaces = vec![0usize; act.len()];
    let mut pos = vec![0usize; n];
    for k in 0..n {
        pos[k] = spaces[home[k]];
        spaces[home[k]] += 1;
    }
    let mut arrows: Vec<Vec<Matrix>> = Vec::with_capacity(act.len());
    for b in 0..act.len() {
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let gb = act.apply(algebra.degree(i), b);
            let mut m = Matrix::zeros(field, spaces[gb], spaces[b]);
            for k in (0..n).filter(|&k| home[k] == b) {
                for (l, &c) in algebra.product(i, k).iter().enumerate() {
                    if c != 0 {
                        debug_assert_eq!(home[l], gb);
                        m.set(pos[l], pos[k], c);
                    }
                }
            }
            row.push(m);
        }
        arrows.push(row);
    }
    FunctorModule {
        algebra,
        act,
        spaces,
        arrows,
    }
}

/// A sum of one or two free modules, possibly cut down by a cyclic
/// submodule, in a random basis. The total dimension stays at most
/// `max_total` unless a single free module is already larger.
pub fn random_functor_module(algebra: Arc<GradedAlgebra>, act: Arc<GAct>, max_total: usize, seed: u64) -> FunctorModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = algebra.field();
    let summands = rng.gen_range(1..=2);
    let mut acc: Option<FunctorModule> = None;
    for _ in 0..summands {
        let a0 = rng.gen_range(0..act.len());
        let free = free_functor_module(algebra.clone(), act.clone(), a0);
        acc = match acc {
            None => Some(free),
            Some(m) if m.total_dim() + free.total_dim() <= max_total => Some(m.direct_sum(&free).unwrap()),
            Some(m) => Some(m),
        };
    }
    let mut m = acc.unwrap();
    if rng.gen_bool(0.5) {
        let points: Vec<usize> = (0..act.len()).filter(|&a| m.spaces[a] > 0).collect();
        if !points.is_empty() {
            let b = points[rng.gen_range(0..points.len())];
            let v = random_matrix(&mut rng, field, m.spaces[b], 1);
            m = m.quotient_by_generated(b, &v).unwrap();
        }
    }
    let autos: Vec<Matrix> = m.spaces.iter().map(|&d| random_invertible(&mut rng, field, d)).collect();
    m.change_basis(&autos).unwrap()
}

/// `M = ⊕_a M_a` with `s_i` acting by a block matrix that sends `M_a`
/// into `M_{g_i a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    act: Arc<GAct>,
    components: Vec<usize>,
    action: Vec<Matrix>,
}

impl GradedModule {
    pub fn new(algebra: Arc<GradedAlgebra>, act: Arc<GAct>, components: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let m = GradedModule {
            algebra,
            act,
            components,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let (alg, act) = (&self.algebra, &self.act);
        if alg.monoid() != act.monoid() {
            return Err(Error::MismatchedBase);
        }
        if self.components.len() != act.len() || self.action.len() != alg.dim() {
            return Err(Error::InvalidModule("one component per point and one matrix per basis element".into()));
        }
        let total = self.total_dim();
        if self.action.iter().any(|x| x.shape() != (total, total)) {
            return Err(Error::InvalidModule(format!("action matrices must be {total}x{total}")));
        }
        let off = offsets(&self.components);
        for i in 0..alg.dim() {
            for a in 0..act.len() {
                for b in 0..act.len() {
                    if b == act.apply(alg.degree(i), a) {
                        continue;
                    }
                    let block = self.action[i].block(off[b], off[a], self.components[b], self.components[a]);
                    if !block.is_zero() {
                        return Err(Error::InvalidModule(format!(
                            "{} sends component {} outside component {}",
                            alg.symbols()[i],
                            act.points()[a],
                            act.points()[act.apply(alg.degree(i), a)]
                        )));
                    }
                }
            }
        }
        let field = alg.field();
        if combine(field, total, total, alg.unit(), |k| self.action[k].clone()) != Matrix::identity(field, total) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let rhs = combine(field, total, total, alg.product(i, j), |k| self.action[k].clone());
                if self.action[i].mul(&self.action[j]) != rhs {
                    return Err(Error::InvalidModule(format!(
                        "{}({}·m) differs from ({}{})·m",
                        alg.symbols()[i],
                        alg.symbols()[j],
                        alg.symbols()[i],
                        alg.symbols()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn act(&self) -> &Arc<GAct> {
        &self.act
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().sum()
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }
}

/// A module over the non-unital algebra `S#A`; basis element `x` of the
/// smash product acts by `action[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashModule {
    smash: Arc<SmashAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl SmashModule {
    pub fn new(smash: Arc<SmashAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = SmashModule { smash, dim, action };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.smash.dim();
        if self.action.len() != n || self.action.iter().any(|x| x.shape() != (self.dim, self.dim)) {
            return Err(Error::InvalidModule(format!("need {n} matrices of size {0}x{0}", self.dim)));
        }
        let field = self.smash.algebra().field();
        for x in 0..n {
            for y in 0..n {
                let rhs = combine(field, self.dim, self.dim, self.smash.product(x, y), |z| self.action[z].clone());
                if self.action[x].mul(&self.action[y]) != rhs {
                    let ((i, a), (j, b)) = (self.smash.split_index(x), self.smash.split_index(y));
                    let (syms, pts) = (self.smash.algebra().symbols(), self.smash.act().points());
                    return Err(Error::InvalidModule(format!(
                        "module axiom fails for {} p_{} and {} p_{}",
                        syms[i], pts[a], syms[j], pts[b]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn smash(&self) -> &Arc<SmashAlgebra> {
        &self.smash
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, x: usize) -> &Matrix {
        &self.action[x]
    }

    /// Action of an arbitrary element of `S#A`.
    pub fn act_by(&self, x: &[u32]) -> Matrix {
        let field = self.smash.algebra().field();
        combine(field, self.dim, self.dim, x, |z| self.action[z].clone())
    }

    /// The same module in the basis given by the columns of `r`.
    pub fn conjugate(&self, r: &Matrix) -> Result<SmashModule> {
        let inv = r.inverse().ok_or_else(|| Error::Shape("basis change must be invertible".into()))?;
        if r.rows() != self.dim {
            return Err(Error::Shape("basis change has the wrong size".into()));
        }
        Ok(SmashModule {
            smash: self.smash.clone(),
            dim: self.dim,
            action: self.action.iter().map(|x| inv.mul(x).mul(r)).collect(),
        })
    }

    /// Adds `k` dimensions on which everything acts by zero.
    pub fn with_dead_part(&self, k: usize) -> SmashModule {
        let field = self.smash.algebra().field();
        let zero = Matrix::zeros(field, k, k);
        SmashModule {
            smash: self.smash.clone(),
            dim: self.dim + k,
            action: self.action.iter().map(|x| Matrix::block_diag(field, &[x, &zero])).collect(),
        }
    }

    /// `P_a = Σ_k u_k X_(k,a)` for the unit `Σ u_k s_k` of `S`.
    pub fn idempotent(&self, a: usize) -> Matrix {
        self.act_by(&self.smash.p(a))
    }
}

pub fn phi(f: &FunctorModule) -> GradedModule {
    let field = f.algebra.field();
    let off = offsets(&f.spaces);
    let total = f.total_dim();
    let action = (0..f.algebra.dim())
        .map(|i| {
            let mut x = Matrix::zeros(field, total, total);
            for a in 0..f.act.len() {
                x.set_block(off[f.target(a, i)], off[a], &f.arrows[a][i]);
            }
            x
        })
        .collect();
    GradedModule {
        algebra: f.algebra.clone(),
        act: f.act.clone(),
        components: f.spaces.clone(),
        action,
    }
}

pub fn psi(m: &GradedModule) -> FunctorModule {
    let off = offsets(&m.components);
    let arrows = (0..m.act.len())
        .map(|a| {
            (0..m.algebra.dim())
                .map(|i| {
                    let b = m.act.apply(m.algebra.degree(i), a);
                    m.action[i].block(off[b], off[a], m.components[b], m.components[a])
                })
                .collect()
        })
        .collect();
    FunctorModule {
        algebra: m.algebra.clone(),
        act: m.act.clone(),
        spaces: m.components.clone(),
        arrows,
    }
}

/// `Γ(F) = ⊕_a F(a)` with `s_i p_a` acting as `F(a, s_i)` on the `a` block.
pub fn gamma(f: &FunctorModule) -> Result<SmashModule> {
    let smash = Arc::new(SmashAlgebra::new(f.algebra.clone(), f.act.clone())?);
    Ok(gamma_over(f, smash))
}

/// [`gamma`] with a prebuilt smash algebra over the same algebra and act.
pub fn gamma_over(f: &FunctorModule, smash: Arc<SmashAlgebra>) -> SmashModule {
    let field = f.algebra.field();
    let off = offsets(&f.spaces);
    let total = f.total_dim();
    let action = (0..smash.dim())
        .map(|x| {
            let (i, a) = smash.split_index(x);
            let mut m = Matrix::zeros(field, total, total);
            m.set_block(off[f.target(a, i)], off[a], &f.arrows[a][i]);
            m
        })
        .collect();
    SmashModule {
        smash,
        dim: total,
        action,
    }
}

/// `Q = ⊕_a P_a Q` exactly when the images of the `P_a` have total
/// dimension `dim Q` and the `P_a` are mutually orthogonal.
pub fn is_unital(q: &SmashModule) -> bool {
    let n = q.smash.act().len();
    let ps: Vec<Matrix> = (0..n).map(|a| q.idempotent(a)).collect();
    let orthogonal = (0..n).all(|a| (0..n).all(|b| a == b || ps[a].mul(&ps[b]).is_zero()));
    let rank_sum: usize = ps.iter().map(Matrix::rank).sum();
    orthogonal && rank_sum == q.dim
}

/// `Λ(Q)(a) = P_a Q`, with the basis of each `P_a Q` taken from the pivot
/// columns of `P_a`. Also returns `B = [B_a]`, the change of basis from
/// `Γ(Λ(Q))` to `Q`.
pub fn lambda_functor(q: &SmashModule) -> Result<(FunctorModule, Matrix)> {
    if !is_unital(q) {
        return Err(Error::NotUnital);
    }
    let smash = &q.smash;
    let (alg, act) = (smash.algebra().clone(), smash.act().clone());
    let field = alg.field();
    let bases: Vec<Matrix> = (0..act.len()).map(|a| q.idempotent(a).image_basis().basis).collect();
    let spaces: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut arrows = Vec::with_capacity(act.len());
    for a in 0..act.len() {
        let mut row = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let b = act.apply(alg.degree(i), a);
            let image = q.action[smash.index(i, a)].mul(&bases[a]);
            row.push(bases[b].solve(&image).map_err(|_| Error::Internal("arrow leaves its target summand".into()))?);
        }
        arrows.push(row);
    }
    let refs: Vec<&Matrix> = bases.iter().collect();
    let b = Matrix::hstack(field, q.dim, &refs);
    let f = FunctorModule {
        algebra: alg,
        act,
        spaces,
        arrows,
    };
    Ok((f, b))
}

/// `Q` transported along a seeded random change of basis.
pub fn random_conjugate(q: &SmashModule, seed: u64) -> Result<SmashModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = random_invertible(&mut rng, q.smash.algebra().field(), q.dim());
    q.conjugate(&r)
}

/// Rebuilds `Γ(Λ(Q))` and checks `B · Γ(Λ(Q))_x = Q_x · B` for every
/// basis element `x`, with `B` invertible.
pub fn gamma_lambda_roundtrip(q: &SmashModule) -> Result<bool> {
    let (f, b) = lambda_functor(q)?;
    let back = gamma_over(&f, q.smash.clone());
    Ok(b.is_isomorphism() && (0..q.smash.dim()).all(|x| b.mul(&back.action[x]) == q.action[x].mul(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::monoid::Monoid;
    use proptest::prelude::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn z2_setup() -> (Arc<GradedAlgebra>, Arc<GAct>) {
        let z2 = Arc::new(Monoid::cyclic_group(2));
        (
            Arc::new(GradedAlgebra::monoid_algebra(f(), z2.clone())),
            Arc::new(GAct::regular(z2)),
        )
    }

    #[test]
    fn free_module_dimensions() {
        let (alg, act) = z2_setup();
        let free = free_functor_module(alg.clone(), act.clone(), 0);
        free.validate().unwrap();
        assert_eq!(free.spaces(), &[1, 1]);
        // Over the trivial act every basis element lands on the one point.
        let one = Arc::new(GAct::trivial(alg.monoid().clone(), vec!["e".into()]));
        let free = free_functor_module(alg, one, 0);
        free.validate().unwrap();
        assert_eq!(free.spaces(), &[2]);
    }

    #[test]
    fn free_graded_module_recovers_components() {
        let sat = Arc::new(Monoid::saturating(3));
        let alg = Arc::new(GradedAlgebra::with_dual_numbers(f(), sat.clone()));
        let act = Arc::new(GAct::regular(sat));
        for a0 in 0..3 {
            let free = free_functor_module(alg.clone(), act.clone(), a0);
            let q = phi(&free);
            q.validate().unwrap();
            let expected: Vec<usize> = (0..3)
                .map(|b| (0..alg.dim()).filter(|&k| act.apply(alg.degree(k), a0) == b).count())
                .collect();
            assert_eq!(psi(&q).spaces(), expected.as_slice());
        }
    }

    #[test]
    fn one_point_act_is_plain_module() {
        let (alg, _) = z2_setup();
        let one = Arc::new(GAct::trivial(alg.monoid().clone(), vec!["e".into()]));
        let m = random_functor_module(alg.clone(), one, 6, 3);
        let q = gamma(&m).unwrap();
        for i in 0..alg.dim() {
            assert_eq!(q.action(q.smash().index(i, 0)), m.arrow(0, i));
        }
    }

    #[test]
    fn broken_functor_is_rejected() {
        let (alg, act) = z2_setup();
        let free = free_functor_module(alg.clone(), act.clone(), 0);
        let mut arrows = free.arrows().to_vec();
        arrows[0][1] = arrows[0][1].scale(2);
        let err = FunctorModule::new(alg, act, free.spaces().to_vec(), arrows).unwrap_err();
        assert!(matches!(err, Error::InvalidModule(_)));
    }

    #[test]
    fn non_unital_smash_module() {
        let (alg, act) = z2_setup();
        let q = gamma(&free_functor_module(alg, act, 0)).unwrap().with_dead_part(1);
        q.validate().unwrap();
        assert!(!is_unital(&q));
        assert_eq!(lambda_functor(&q).unwrap_err(), Error::NotUnital);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn phi_psi_round_trip(seed in any::<u64>(), which in 0usize..3) {
            let sat = Arc::new(Monoid::saturating(3));
            let alg = Arc::new(match which {
                0 => GradedAlgebra::monoid_algebra(f(), sat.clone()),
                1 => GradedAlgebra::with_dual_numbers(f(), sat.clone()),
                _ => GradedAlgebra::contracted(f(), sat.clone()).unwrap(),
            });
            let act = Arc::new(GAct::regular(sat));
            let m = random_functor_module(alg, act, 10, seed);
            m.validate().unwrap();
            let q = phi(&m);
            q.validate().unwrap();
            prop_assert_eq!(&psi(&q), &m);
            prop_assert_eq!(phi(&psi(&q)), q);
        }

        #[test]
        fn gamma_lambda_round_trip(seed in any::<u64>()) {
            let z3 = Arc::new(Monoid::cyclic_group(3));
            let alg = Arc::new(GradedAlgebra::with_dual_numbers(f(), z3.clone()));
            let act = Arc::new(GAct::regular(z3));
            let m = random_functor_module(alg, act, 12, seed);
            let q = gamma(&m).unwrap();
            q.validate().unwrap();
            prop_assert!(is_unital(&q));
            let (back, b) = lambda_functor(&q).unwrap();
            prop_assert_eq!(&back, &m);
            prop_assert_eq!(b, Matrix::identity(f(), m.total_dim()));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = random_invertible(&mut rng, f(), q.dim());
            let q2 = q.conjugate(&r).unwrap();
            q2.validate().unwrap();
            prop_assert!(gamma_lambda_roundtrip(&q2).unwrap());
        }
    }
}
