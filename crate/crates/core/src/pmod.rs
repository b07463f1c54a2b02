//! Persistence modules: functors from a finite poset to finite-dimensional
//! vector spaces, stored as one matrix per cover.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Matrix};
use crate::poset::{ElementSet, Poset};

/// A functor from a finite poset to vector spaces over a prime field.
///
/// `maps[k]` is the structure map along `poset.covers()[k]`, with shape
/// `dims[b] x dims[a]` for the cover `(a, b)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PersModule {
    poset: Arc<Poset>,
    field: FieldSpec,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl std::fmt::Debug for PersModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut d = f.debug_struct("PersModule");
        d.field("dims", &self.named_dims());
        for (k, &(a, b)) in self.poset.covers().iter().enumerate() {
            if !self.maps[k].is_zero() {
                d.field(&format!("{}->{}", self.poset.name(a), self.poset.name(b)), &self.maps[k]);
            }
        }
        d.finish()
    }
}

impl PersModule {
    /// Validates shapes and path-independence of all cover composites.
    pub fn new(poset: Arc<Poset>, field: FieldSpec, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != poset.len() {
            return Err(Error::Shape(format!(
                "{} dimensions for {} elements",
                dims.len(),
                poset.len()
            )));
        }
        if maps.len() != poset.covers().len() {
            return Err(Error::Shape(format!(
                "{} maps for {} covers",
                maps.len(),
                poset.covers().len()
            )));
        }
        for (k, &(a, b)) in poset.covers().iter().enumerate() {
            let m = &maps[k];
            if m.shape() != (dims[b], dims[a]) || m.field() != field {
                return Err(Error::Shape(format!(
                    "map {} -> {} is {}x{}, expected {}x{}",
                    poset.name(a),
                    poset.name(b),
                    m.rows(),
                    m.cols(),
                    dims[b],
                    dims[a]
                )));
            }
        }
        let module = PersModule { poset, field, dims, maps };
        module.check_functoriality()?;
        Ok(module)
    }

    /// Builds without validation; callers guarantee functoriality.
    pub(crate) fn new_unchecked(poset: Arc<Poset>, field: FieldSpec, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        let module = PersModule { poset, field, dims, maps };
        debug_assert!(module.check_functoriality().is_ok());
        module
    }

    fn check_functoriality(&self) -> Result<()> {
        let p = &self.poset;
        // A source with a single upper cover inherits path-independence from it.
        for a in 0..p.len() {
            if p.upper_covers(a).len() < 2 {
                continue;
            }
            let mut to: Vec<Option<Matrix>> = vec![None; p.len()];
            to[a] = Some(Matrix::identity(self.field, self.dims[a]));
            for c in a + 1..p.len() {
                if !p.leq(a, c) {
                    continue;
                }
                for &x in p.lower_covers(c) {
                    let Some(base) = &to[x] else { continue };
                    let cand = self.cover_map(x, c).mul(base);
                    match &to[c] {
                        None => to[c] = Some(cand),
                        Some(prev) if *prev != cand => {
                            return Err(Error::Functoriality(p.name(a).to_string(), p.name(c).to_string()))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(poset: Arc<Poset>, field: FieldSpec) -> Self {
        let dims = vec![0; poset.len()];
        let maps = vec![Matrix::zeros(field, 0, 0); poset.covers().len()];
        PersModule { poset, field, dims, maps }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn named_dims(&self) -> Vec<(String, usize)> {
        self.poset
            .names()
            .iter()
            .cloned()
            .zip(self.dims.iter().copied())
            .collect()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Structure map along a cover `a ⋖ b`.
    pub fn cover_map(&self, a: usize, b: usize) -> &Matrix {
        let k = self
            .poset
            .cover_index(a, b)
            .unwrap_or_else(|| panic!("({a}, {b}) is not a cover"));
        &self.maps[k]
    }

    /// `M(a <= b)`, composed along a cover path.
    pub fn eval_map(&self, a: usize, b: usize) -> Result<Matrix> {
        let p = &self.poset;
        if !p.leq(a, b) {
            return Err(Error::NotComparable(p.name(a).to_string(), p.name(b).to_string()));
        }
        let mut acc = Matrix::identity(self.field, self.dims[a]);
        let mut x = a;
        while x != b {
            let y = *p
                .upper_covers(x)
                .iter()
                .find(|&&y| p.leq(y, b))
                .expect("a cover path exists below b");
            acc = self.cover_map(x, y).mul(&acc);
            x = y;
        }
        Ok(acc)
    }

    /// `M(a <= c)` for every `c`, `None` where `a` is not below `c`.
    pub fn maps_from(&self, a: usize) -> Vec<Option<Matrix>> {
        let p = &self.poset;
        let mut to: Vec<Option<Matrix>> = vec![None; p.len()];
        to[a] = Some(Matrix::identity(self.field, self.dims[a]));
        for c in a + 1..p.len() {
            if !p.leq(a, c) {
                continue;
            }
            let x = *p
                .lower_covers(c)
                .iter()
                .find(|&&x| to[x].is_some())
                .expect("some lower cover lies above a");
            to[c] = Some(self.cover_map(x, c).mul(to[x].as_ref().unwrap()));
        }
        to
    }

    pub fn support(&self) -> ElementSet {
        ElementSet::from_indices(self.poset.len(), (0..self.poset.len()).filter(|&c| self.dims[c] > 0))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Same poset (by value) and field.
    pub fn same_base(&self, other: &PersModule) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset)
    }

    /// The module that is `k` on `interval` with identity maps inside it.
    pub fn interval(poset: Arc<Poset>, interval: &ElementSet, field: FieldSpec) -> Result<Self> {
        if !poset.is_interval(interval) {
            return Err(Error::NotAnInterval);
        }
        Ok(Self::indicator(poset, interval, 1, field))
    }

    /// `k^m[Mor(c, -)]`: `k^m` on `↑c` with identity maps.
    pub fn free(poset: Arc<Poset>, c: usize, m: usize, field: FieldSpec) -> Self {
        let up = poset.principal_up(c);
        Self::indicator(poset, &up, m, field)
    }

    /// `k^m` on a convex set with identities; callers guarantee convexity.
    fn indicator(poset: Arc<Poset>, set: &ElementSet, m: usize, field: FieldSpec) -> Self {
        let dims: Vec<usize> = (0..poset.len()).map(|c| if set.contains(c) { m } else { 0 }).collect();
        let maps = poset
            .covers()
            .iter()
            .map(|&(a, b)| {
                if set.contains(a) && set.contains(b) {
                    Matrix::identity(field, m)
                } else {
                    Matrix::zeros(field, dims[b], dims[a])
                }
            })
            .collect();
        Self::new_unchecked(poset, field, dims, maps)
    }

    pub fn direct_sum(&self, other: &PersModule) -> Result<Self> {
        if !self.same_base(other) {
            return Err(Error::MismatchedBase);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(x, y)| Matrix::block_diag(self.field, &[x, y]))
            .collect();
        Ok(Self::new_unchecked(self.poset.clone(), self.field, dims, maps))
    }

    pub fn direct_sum_all(poset: Arc<Poset>, field: FieldSpec, parts: &[PersModule]) -> Result<Self> {
        parts
            .iter()
            .try_fold(Self::zero(poset, field), |acc, m| acc.direct_sum(m))
    }

    /// Conjugates every structure map by the given pointwise automorphisms:
    /// `M'(a⋖b) = P_b M(a⋖b) P_a^{-1}`.
    pub fn change_basis(&self, autos: &[Matrix]) -> Result<Self> {
        let mut inverses = Vec::with_capacity(autos.len());
        for (c, p) in autos.iter().enumerate() {
            if p.shape() != (self.dims[c], self.dims[c]) {
                return Err(Error::Shape(format!("basis change at {}", self.poset.name(c))));
            }
            inverses.push(p.inverse().ok_or_else(|| Error::Shape("singular basis change".into()))?);
        }
        let maps = self
            .poset
            .covers()
            .iter()
            .zip(&self.maps)
            .map(|(&(a, b), m)| autos[b].mul(m).mul(&inverses[a]))
            .collect();
        Ok(Self::new_unchecked(self.poset.clone(), self.field, self.dims.clone(), maps))
    }
}

/// A natural transformation between modules over the same poset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleMorphism {
    source: PersModule,
    target: PersModule,
    components: Vec<Matrix>,
}

impl ModuleMorphism {
    /// Validates shapes and naturality on every cover.
    pub fn new(source: PersModule, target: PersModule, components: Vec<Matrix>) -> Result<Self> {
        if !source.same_base(&target) {
            return Err(Error::MismatchedBase);
        }
        let p = source.poset.clone();
        if components.len() != p.len() {
            return Err(Error::Shape("one component per element required".into()));
        }
        for (c, f) in components.iter().enumerate() {
            if f.shape() != (target.dims[c], source.dims[c]) {
                return Err(Error::Shape(format!("component at {}", p.name(c))));
            }
        }
        for &(a, b) in p.covers() {
            let lhs = target.cover_map(a, b).mul(&components[a]);
            let rhs = components[b].mul(source.cover_map(a, b));
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "naturality fails on {} -> {}",
                    p.name(a),
                    p.name(b)
                )));
            }
        }
        Ok(ModuleMorphism { source, target, components })
    }

    pub(crate) fn new_unchecked(source: PersModule, target: PersModule, components: Vec<Matrix>) -> Self {
        ModuleMorphism { source, target, components }
    }

    pub fn identity(m: &PersModule) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        Self::new_unchecked(m.clone(), m.clone(), comps)
    }

    pub fn zero(source: &PersModule, target: &PersModule) -> Result<Self> {
        if !source.same_base(target) {
            return Err(Error::MismatchedBase);
        }
        let comps = (0..source.poset.len())
            .map(|c| Matrix::zeros(source.field, target.dims[c], source.dims[c]))
            .collect();
        Ok(Self::new_unchecked(source.clone(), target.clone(), comps))
    }

    pub fn source(&self) -> &PersModule {
        &self.source
    }

    pub fn target(&self) -> &PersModule {
        &self.target
    }

    pub fn component(&self, c: usize) -> &Matrix {
        &self.components[c]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMorphism) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::MismatchedBase);
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| g.mul(f))
            .collect();
        Ok(Self::new_unchecked(self.source.clone(), other.target.clone(), comps))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|f| f.rank() == f.rows())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|f| f.rank() == f.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(Matrix::is_isomorphism)
    }

    /// Pointwise kernel with its inclusion into the source.
    pub fn kernel(&self) -> (PersModule, ModuleMorphism) {
        let src = &self.source;
        let field = src.field;
        let bases: Vec<Matrix> = self.components.iter().map(|f| f.kernel_basis().basis).collect();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = src
            .poset
            .covers()
            .iter()
            .map(|&(a, b)| {
                let pushed = src.cover_map(a, b).mul(&bases[a]);
                bases[b]
                    .solve(&pushed)
                    .expect("kernels are preserved by structure maps of a natural transformation")
            })
            .collect();
        let ker = PersModule::new_unchecked(src.poset.clone(), field, dims, maps);
        let incl = ModuleMorphism::new_unchecked(ker.clone(), src.clone(), bases);
        (ker, incl)
    }

    /// Pointwise cokernel with the projection from the target.
    pub fn cokernel(&self) -> (PersModule, ModuleMorphism) {
        let tgt = &self.target;
        let cks: Vec<_> = self.components.iter().map(Matrix::cokernel).collect();
        let dims: Vec<usize> = cks.iter().map(|c| c.dim).collect();
        let maps = tgt
            .poset
            .covers()
            .iter()
            .map(|&(a, b)| cks[b].projection.mul(tgt.cover_map(a, b)).mul(&cks[a].section))
            .collect();
        let coker = PersModule::new_unchecked(tgt.poset.clone(), tgt.field, dims, maps);
        let proj = ModuleMorphism::new_unchecked(tgt.clone(), coker.clone(), cks.into_iter().map(|c| c.projection).collect());
        (coker, proj)
    }
}

/// Dimension of the space of natural transformations `M -> N`, by solving
/// the naturality constraints directly.
pub fn hom_dimension(m: &PersModule, n: &PersModule) -> Result<usize> {
    if !m.same_base(n) {
        return Err(Error::MismatchedBase);
    }
    let p = &m.poset;
    let mut offset = vec![0usize; p.len() + 1];
    for c in 0..p.len() {
        offset[c + 1] = offset[c] + n.dims[c] * m.dims[c];
    }
    let vars = offset[p.len()];
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let f = m.field;
    for &(a, b) in p.covers() {
        let nm = n.cover_map(a, b);
        let mm = m.cover_map(a, b);
        // N(a⋖b) F_a - F_b M(a⋖b) = 0, entry (r, s).
        for r in 0..n.dims[b] {
            for s in 0..m.dims[a] {
                let mut row = vec![0u32; vars];
                for t in 0..n.dims[a] {
                    let v = offset[a] + t * m.dims[a] + s;
                    row[v] = f.add(row[v], nm.get(r, t));
                }
                for t in 0..m.dims[b] {
                    let v = offset[b] + r * m.dims[b] + t;
                    row[v] = f.sub(row[v], mm.get(t, s));
                }
                rows.push(row);
            }
        }
    }
    let sys = Matrix::from_fn(f, rows.len(), vars, |r, c| rows[r][c]);
    Ok(vars - sys.rank())
}

pub(crate) fn random_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..field.p()))
}

pub(crate) fn random_invertible(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_isomorphism() {
            return m;
        }
    }
}

/// A seeded random module built element by element in canonical order: the
/// maps into each new element are sampled from the solution space of the
/// commutativity constraints, so the result is functorial by construction.
/// About a quarter of the elements draw 0/1 coefficients, which produces
/// degenerate maps and hence more births and deaths.
pub fn random_module(poset: Arc<Poset>, max_dim: usize, field: FieldSpec, seed: u64) -> PersModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = poset.len();
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=max_dim)).collect();
    // reach[c][a] = M(a <= c)
    let mut reach: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
    let mut maps: Vec<Option<Matrix>> = vec![None; poset.covers().len()];
    for d in 0..n {
        let lower = poset.lower_covers(d).to_vec();
        let widths: Vec<usize> = lower.iter().map(|&c| dims[c]).collect();
        let total: usize = widths.iter().sum();
        let mut offs = vec![0usize];
        for w in &widths {
            offs.push(offs.last().unwrap() + w);
        }
        // Constraint columns: F_i M(a->c_i) - F_j M(a->c_j) for maximal common lower a.
        let mut blocks: Vec<Matrix> = Vec::new();
        for i in 0..lower.len() {
            for j in i + 1..lower.len() {
                let common = poset
                    .principal_down(lower[i])
                    .intersection(&poset.principal_down(lower[j]));
                for a in poset.maximal_elements(&common).iter() {
                    let mut col = Matrix::zeros(field, total, dims[a]);
                    col.set_block(offs[i], 0, reach[lower[i]][a].as_ref().unwrap());
                    col.set_block(offs[j], 0, &reach[lower[j]][a].as_ref().unwrap().neg());
                    blocks.push(col);
                }
            }
        }
        let cons_cols: usize = blocks.iter().map(Matrix::cols).sum();
        let cons = Matrix::hstack(field, total, &blocks.iter().collect::<Vec<_>>());
        debug_assert_eq!(cons.cols(), cons_cols);
        // Rows of F lie in the left kernel of the constraint matrix.
        let left = cons.transpose().kernel_basis().basis;
        let binary = rng.gen_bool(0.25);
        let f = Matrix::from_fn(field, dims[d], left.cols(), |_, _| {
            if binary {
                rng.gen_range(0..2)
            } else {
                rng.gen_range(0..field.p())
            }
        })
        .mul(&left.transpose());
        reach[d][d] = Some(Matrix::identity(field, dims[d]));
        for (i, &c) in lower.iter().enumerate() {
            let fi = f.block(0, offs[i], dims[d], widths[i]);
            for a in 0..n {
                if reach[d][a].is_none() {
                    if let Some(m) = &reach[c][a] {
                        reach[d][a] = Some(fi.mul(m));
                    }
                }
            }
            maps[poset.cover_index(c, d).unwrap()] = Some(fi);
        }
    }
    let maps = maps.into_iter().map(Option::unwrap).collect();
    PersModule::new_unchecked(poset, field, dims, maps)
}

/// A seeded random direct sum of one to three interval and free summands,
/// disguised by a random pointwise change of basis. Total pointwise
/// dimension is capped at `max_dim` by dropping summands that overflow.
pub fn random_interval_sum(poset: Arc<Poset>, max_dim: usize, field: FieldSpec, seed: u64) -> PersModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = poset.len();
    let mut acc = PersModule::zero(poset.clone(), field);
    if n == 0 {
        return acc;
    }
    let parts = rng.gen_range(1..=3);
    for _ in 0..parts {
        let summand = if rng.gen_bool(0.3) {
            PersModule::free(poset.clone(), rng.gen_range(0..n), 1, field)
        } else {
            PersModule::interval(poset.clone(), &random_interval(&poset, &mut rng), field)
                .expect("convex hulls are intervals")
        };
        let sum = acc.direct_sum(&summand).unwrap();
        if sum.dims.iter().all(|&d| d <= max_dim) {
            acc = sum;
        }
    }
    let autos: Vec<Matrix> = acc.dims.iter().map(|&d| random_invertible(&mut rng, field, d)).collect();
    acc.change_basis(&autos).unwrap()
}

/// Convex hull `↑X ∩ ↓X` of a random nonempty set `X` of at most three elements.
pub fn random_interval(poset: &Poset, rng: &mut impl Rng) -> ElementSet {
    let n = poset.len();
    let k = rng.gen_range(1..=3.min(n));
    let x = ElementSet::from_indices(n, (0..k).map(|_| rng.gen_range(0..n)));
    poset.up_set(&x).intersection(&poset.down_set(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn m1(v: i64) -> Matrix {
        Matrix::from_rows(f(), &[vec![v]]).unwrap()
    }

    fn diamond() -> Arc<Poset> {
        Arc::new(Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap())
    }

    /// Maps for the diamond listed as a->b, a->c, b->d, c->d.
    fn diamond_module(vals: [i64; 4]) -> Result<PersModule> {
        let p = diamond();
        let order = [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")];
        let mut maps = vec![m1(0); 4];
        for (k, (a, b)) in order.iter().enumerate() {
            let idx = p.cover_index(p.index_of(a).unwrap(), p.index_of(b).unwrap()).unwrap();
            maps[idx] = m1(vals[k]);
        }
        PersModule::new(p, f(), vec![1; 4], maps)
    }

    fn random_dag(n: usize, seed: u64) -> Arc<Poset> {
        Arc::new(Poset::random(n, 0.4, seed))
    }

    #[test]
    fn chain_module_is_valid() {
        let p = Arc::new(Poset::chain(2));
        assert!(PersModule::new(p, f(), vec![1, 1], vec![m1(2)]).is_ok());
    }

    #[test]
    fn diamond_mismatch_is_reported_at_bottom_and_top() {
        let err = diamond_module([1, 1, 1, 2]).unwrap_err();
        assert_eq!(err, Error::Functoriality("a".into(), "d".into()));
        assert!(diamond_module([1, 1, 2, 2]).is_ok());
    }

    #[test]
    fn shape_errors() {
        let p = Arc::new(Poset::chain(2));
        let bad = PersModule::new(p, f(), vec![1, 2], vec![m1(1)]);
        assert!(matches!(bad, Err(Error::Shape(_))));
    }

    #[test]
    fn zero_module_is_valid() {
        let z = PersModule::zero(diamond(), f());
        assert!(z.support().is_empty());
        assert!(PersModule::new(diamond(), f(), vec![0; 4], z.maps().to_vec()).is_ok());
    }

    #[test]
    fn eval_map_composes() {
        let p = Arc::new(Poset::chain(3));
        let m = PersModule::new(p, f(), vec![1, 1, 1], vec![m1(2), m1(3)]).unwrap();
        assert_eq!(m.eval_map(0, 2).unwrap(), m1(6));
        assert_eq!(m.eval_map(1, 1).unwrap(), Matrix::identity(f(), 1));
        let d = diamond_module([1, 1, 1, 1]).unwrap();
        assert!(matches!(d.eval_map(1, 2), Err(Error::NotComparable(_, _))));
    }

    #[test]
    fn interval_and_free_supports() {
        let c = Arc::new(Poset::chain(3));
        let i = c.set_from_names(&["1", "2"]).unwrap();
        let m = PersModule::interval(c.clone(), &i, f()).unwrap();
        assert_eq!(m.dims(), &[0, 1, 1]);
        assert_eq!(m.cover_map(1, 2), &m1(1));
        assert_eq!(m.support(), i);

        let p = diamond();
        let bc = p.set_from_names(&["b", "c"]).unwrap();
        assert_eq!(PersModule::interval(p.clone(), &bc, f()).unwrap().support(), bc);
        let ad = p.set_from_names(&["a", "d"]).unwrap();
        assert_eq!(PersModule::interval(p.clone(), &ad, f()).unwrap_err(), Error::NotAnInterval);

        let fr = PersModule::free(p.clone(), 0, 2, f());
        assert_eq!(fr.dims(), &[2, 2, 2, 2]);
        assert!(PersModule::free(p.clone(), 1, 0, f()).is_zero());
        assert_eq!(PersModule::free(p.clone(), 1, 1, f()).support(), p.principal_up(1));
    }

    #[test]
    fn sums_and_determinism() {
        let p = diamond();
        let m = random_module(p.clone(), 3, f(), 11);
        assert_eq!(m, random_module(p.clone(), 3, f(), 11));
        assert_eq!(m.direct_sum(&PersModule::zero(p.clone(), f())).unwrap(), m);
        let i = PersModule::interval(p.clone(), &p.set_from_names(&["b", "d"]).unwrap(), f()).unwrap();
        let j = PersModule::interval(p.clone(), &p.set_from_names(&["a", "b"]).unwrap(), f()).unwrap();
        assert_eq!(i.direct_sum(&j).unwrap().dims(), &[1, 2, 0, 1]);
        let other = Arc::new(Poset::chain(4));
        assert_eq!(m.direct_sum(&PersModule::zero(other, f())).unwrap_err(), Error::MismatchedBase);
    }

    #[test]
    fn kernels_and_cokernels_of_trivial_maps() {
        let m = random_module(diamond(), 2, f(), 5);
        let id = ModuleMorphism::identity(&m);
        assert!(id.kernel().0.is_zero());
        assert!(id.is_epi() && id.is_mono() && id.is_iso());
        let z = ModuleMorphism::zero(&m, &m).unwrap();
        assert_eq!(z.kernel().0.dims(), m.dims());
        assert_eq!(z.cokernel().0.dims(), m.dims());
        if !m.is_zero() {
            assert!(!z.is_epi());
        }
    }

    #[test]
    fn projection_from_sum_is_epi_not_mono() {
        let p = diamond();
        let a = PersModule::free(p.clone(), 0, 1, f());
        let b = PersModule::free(p.clone(), 1, 1, f());
        let sum = a.direct_sum(&b).unwrap();
        let comps = (0..4)
            .map(|c| Matrix::hstack(f(), a.dim(c), &[&Matrix::identity(f(), a.dim(c)), &Matrix::zeros(f(), a.dim(c), b.dim(c))]))
            .collect();
        let proj = ModuleMorphism::new(sum, a, comps).unwrap();
        assert!(proj.is_epi() && !proj.is_mono());
    }

    #[test]
    fn koszul_kernel_lives_on_the_join() {
        let g = Arc::new(Poset::grid(&[3, 3]).unwrap());
        let x = g.index_of("(1,0)").unwrap();
        let y = g.index_of("(0,1)").unwrap();
        let origin = g.index_of("(0,0)").unwrap();
        let mut ideal = g.full_set();
        ideal.remove(origin);
        let target = PersModule::interval(g.clone(), &ideal, f()).unwrap();
        let source = PersModule::free(g.clone(), x, 1, f()).direct_sum(&PersModule::free(g.clone(), y, 1, f())).unwrap();
        let comps = (0..g.len())
            .map(|c| {
                let row: Vec<u32> = [(x, 0), (y, 0)]
                    .iter()
                    .filter(|(s, _)| g.leq(*s, c))
                    .map(|_| 1)
                    .collect();
                Matrix::from_fn(f(), target.dim(c), row.len(), |_, j| row[j])
            })
            .collect();
        let h = ModuleMorphism::new(source, target, comps).unwrap();
        let (ker, _) = h.kernel();
        let join = g.index_of("(1,1)").unwrap();
        assert_eq!(ker.support(), g.principal_up(join));
        assert!(ker.dims().iter().all(|&d| d <= 1));
    }

    #[test]
    fn hom_dimensions() {
        let p = diamond();
        let free_a = PersModule::free(p.clone(), 0, 1, f());
        let m = random_module(p.clone(), 2, f(), 3);
        // Yoneda: Hom(k[Mor(a,-)], M) = M(a).
        assert_eq!(hom_dimension(&free_a, &m).unwrap(), m.dim(0));
        let top = PersModule::free(p.clone(), 3, 1, f());
        assert_eq!(hom_dimension(&top, &free_a).unwrap(), 1);
        assert_eq!(hom_dimension(&free_a, &top).unwrap(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn random_modules_are_functorial(n in 1usize..8, seed in any::<u64>(), interval in any::<bool>()) {
            let p = random_dag(n, seed);
            let m = if interval {
                random_interval_sum(p.clone(), 3, f(), seed)
            } else {
                random_module(p.clone(), 3, f(), seed)
            };
            prop_assert!(PersModule::new(p.clone(), f(), m.dims().to_vec(), m.maps().to_vec()).is_ok());
            for a in 0..n { for b in 0..n { for c in 0..n {
                if p.leq(a, b) && p.leq(b, c) {
                    let lhs = m.eval_map(a, c).unwrap();
                    prop_assert_eq!(lhs, m.eval_map(b, c).unwrap().mul(&m.eval_map(a, b).unwrap()));
                }
            }}}
            let from0 = m.maps_from(0);
            for c in 0..n {
                prop_assert_eq!(from0[c].clone(), m.eval_map(0, c).ok());
            }
        }

        #[test]
        fn kernel_cokernel_exactness(n in 1usize..7, seed in any::<u64>()) {
            let p = random_dag(n, seed);
            let src = random_interval_sum(p.clone(), 2, f(), seed);
            let tgt = random_interval_sum(p.clone(), 2, f(), seed.wrapping_add(1));
            // Any morphism factoring through a free module at a random point
            // is natural; use the identity-sum trick instead: f = (id, 0).
            let sum = src.direct_sum(&tgt).unwrap();
            let comps = (0..n).map(|c| Matrix::hstack(f(), src.dim(c), &[&Matrix::identity(f(), src.dim(c)), &Matrix::zeros(f(), src.dim(c), tgt.dim(c))])).collect();
            let proj = ModuleMorphism::new(sum, src.clone(), comps).unwrap();
            let (ker, incl) = proj.kernel();
            prop_assert!(incl.then(&proj).unwrap().is_zero());
            prop_assert_eq!(ker.dims(), tgt.dims());
            let (_, q) = incl.cokernel();
            prop_assert!(incl.then(&q).unwrap().is_zero());
            for c in 0..n {
                prop_assert_eq!(ker.dim(c) + proj.component(c).rank(), proj.source().dim(c));
            }
            let both = src.direct_sum(&tgt).unwrap();
            prop_assert_eq!(both.support(), src.support().union(&tgt.support()));
        }
    }
}
