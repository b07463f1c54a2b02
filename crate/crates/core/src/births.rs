//! Births and deaths relative to a subset, splitting functors, the
//! generated/presented/determined predicates, projective covers and minimal
//! presentations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kan::{self, Lambda};
use crate::linalg::Matrix;
use crate::pmod::{ModuleMorphism, PersModule};
use crate::poset::{parse_tuple_id, ElementSet, Poset};

/// Births, deaths and splitting dimensions of a module relative to `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirthDeathReport {
    pub s: ElementSet,
    pub births: ElementSet,
    pub deaths: ElementSet,
    /// `(c, dim S_{S,c}M)` for every `c` in births ∪ deaths ∪ S.
    pub split_dims: Vec<(usize, usize)>,
}

impl BirthDeathReport {
    pub fn split_dim(&self, c: usize) -> usize {
        self.split_dims
            .iter()
            .find(|&&(x, _)| x == c)
            .map_or(0, |&(_, d)| d)
    }
}

pub fn lambdas(m: &PersModule, s: &ElementSet) -> Vec<Lambda> {
    (0..m.poset().len()).map(|c| kan::lambda(m, s, c)).collect()
}

pub fn analyze(m: &PersModule, s: &ElementSet) -> BirthDeathReport {
    let n = m.poset().len();
    let mut births = ElementSet::empty(n);
    let mut deaths = ElementSet::empty(n);
    let mut split_dims = Vec::new();
    for (c, l) in lambdas(m, s).into_iter().enumerate() {
        let rank = l.map.rank();
        if rank < m.dim(c) {
            births.insert(c);
        }
        if rank < l.colimit.dim {
            deaths.insert(c);
        }
        if births.contains(c) || deaths.contains(c) || s.contains(c) {
            split_dims.push((c, m.dim(c) - rank));
        }
    }
    BirthDeathReport {
        s: s.clone(),
        births,
        deaths,
        split_dims,
    }
}

/// `B_S(M)`: elements where `λ_{M,c}` is not surjective.
pub fn births(m: &PersModule, s: &ElementSet) -> ElementSet {
    analyze(m, s).births
}

/// `D_S(M)`: elements where `λ_{M,c}` is not injective.
pub fn deaths(m: &PersModule, s: &ElementSet) -> ElementSet {
    analyze(m, s).deaths
}

/// `S_{S,c}M = M(c) / im λ_{M,c}` with projection and a section.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub dim: usize,
    pub projection: Matrix,
    pub section: Matrix,
}

pub fn splitting(m: &PersModule, s: &ElementSet, c: usize) -> Splitting {
    let ck = kan::lambda(m, s, c).map.cokernel();
    Splitting {
        dim: ck.dim,
        projection: ck.projection,
        section: ck.section,
    }
}

/// `S_{S,c}f : S_{S,c}L -> S_{S,c}M`, through the section of the source
/// splitting.
pub fn splitting_morphism(f: &ModuleMorphism, s: &ElementSet, c: usize) -> Matrix {
    let from = splitting(f.source(), s, c);
    let to = splitting(f.target(), s, c);
    to.projection.mul(f.component(c)).mul(&from.section)
}

fn outside(p: &Poset, set: &ElementSet, s: &ElementSet) -> Vec<String> {
    p.names_of(&set.difference(s))
}

/// True iff `B_S(M) ⊆ S`.
pub fn is_generated(m: &PersModule, s: &ElementSet) -> bool {
    let ok = births(m, s).is_subset(s);
    #[cfg(debug_assertions)]
    if m.poset().len() <= 12 {
        debug_assert_eq!(ok, is_generated_via_mu(m, s).unwrap());
    }
    ok
}

/// True iff `B_S(M) ∪ D_S(M) ⊆ S`.
pub fn is_presented(m: &PersModule, s: &ElementSet) -> bool {
    let r = analyze(m, s);
    let ok = r.births.union(&r.deaths).is_subset(s);
    #[cfg(debug_assertions)]
    if m.poset().len() <= 12 {
        debug_assert_eq!(ok, is_presented_via_mu(m, s).unwrap());
    }
    ok
}

/// `μ_M : ind_S res_S M -> M` is an epimorphism.
pub fn is_generated_via_mu(m: &PersModule, s: &ElementSet) -> Result<bool> {
    Ok(kan::canonical_mu(m, s)?.morphism.is_epi())
}

/// `μ_M` is an isomorphism.
pub fn is_presented_via_mu(m: &PersModule, s: &ElementSet) -> Result<bool> {
    Ok(kan::canonical_mu(m, s)?.morphism.is_iso())
}

/// Support inside `↑S`, and `M(c <= d)` invertible whenever
/// `S ∩ ↓c = S ∩ ↓d`. Checking covers suffices: the downsets are monotone
/// along any chain, so equal ends force equality on every cover in between.
pub fn is_determined(m: &PersModule, s: &ElementSet) -> bool {
    let p = m.poset();
    if !m.support().is_subset(&p.up_set(s)) {
        return false;
    }
    let below: Vec<ElementSet> = (0..p.len()).map(|c| p.principal_down(c).intersection(s)).collect();
    p.covers()
        .iter()
        .all(|&(c, d)| below[c] != below[d] || m.cover_map(c, d).is_isomorphism())
}

/// `B_S(M)`, the least `T ⊆ S` generating `M`.
pub fn minimal_generating_degrees(m: &PersModule, s: &ElementSet) -> Result<ElementSet> {
    let b = births(m, s);
    if !b.is_subset(s) {
        return Err(Error::NotGenerated(outside(m.poset(), &b, s)));
    }
    Ok(b)
}

/// `B_S(M) ∪ D_S(M)`, the least `T ⊆ S` presenting `M`.
pub fn minimal_presentation_support(m: &PersModule, s: &ElementSet) -> Result<ElementSet> {
    let r = analyze(m, s);
    let bd = r.births.union(&r.deaths);
    if !bd.is_subset(s) {
        return Err(Error::NotPresented(outside(m.poset(), &bd, s)));
    }
    Ok(bd)
}

/// A finite support of presentation derived from a determining set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FspWitness {
    /// `hat(hat(S))`.
    pub t: ElementSet,
    /// `(c, s)` for every `c ∈ ↑supp(M)`: `s ∈ mub(S ∩ ↓c)`, `s <= c`, and
    /// `S ∩ ↓s = S ∩ ↓c`.
    pub frames: Vec<(usize, usize)>,
}

pub fn fsp_from_determined(m: &PersModule, s: &ElementSet) -> Result<FspWitness> {
    if !is_determined(m, s) {
        return Err(Error::NotDetermined);
    }
    let p = m.poset();
    let t = p.hat(&p.hat(s)?)?;
    if !is_presented(m, &t) {
        return Err(Error::AssertionFailure(format!(
            "module is not presented by the double hat {:?}",
            p.names_of(&t)
        )));
    }
    let mut frames = Vec::new();
    for c in p.up_set(&m.support()).iter() {
        let below = p.principal_down(c).intersection(s);
        let frame = p
            .mub(&below)?
            .iter()
            .find(|&x| p.leq(x, c) && p.principal_down(x).intersection(s) == below);
        match frame {
            Some(x) => frames.push((c, x)),
            None => {
                return Err(Error::AssertionFailure(format!("no frame below `{}`", p.name(c))));
            }
        }
    }
    Ok(FspWitness { t, frames })
}

/// Finite presentability witness over a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpWitness {
    /// Every `M(s)` is finite dimensional, hence finitely presented.
    pub pointwise_ok: bool,
    /// `B_C(M) ∪ D_C(M)`: the least presenting set.
    pub s: ElementSet,
    /// Finite posets are weakly bounded and mub-complete.
    pub property_m: bool,
}

pub fn finitely_presented_witness(m: &PersModule) -> FpWitness {
    let full = m.poset().full_set();
    let s = minimal_presentation_support(m, &full).expect("every module is presented by the whole poset");
    FpWitness {
        pointwise_ok: true,
        s,
        property_m: true,
    }
}

/// A minimal epimorphism from a sum of free modules.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// `(s, multiplicity)` per free summand, in canonical order.
    pub summands: Vec<(usize, usize)>,
    pub map: ModuleMorphism,
}

impl ProjectiveCover {
    pub fn module(&self) -> &PersModule {
        self.map.source()
    }
}

/// `⊕_{s ∈ S} k^{dim S_{S,s}M}[Mor(s, -)] -> M`, built from the pivot-lift
/// sections of the splitting projections.
pub fn projective_cover(m: &PersModule, s: &ElementSet) -> Result<ProjectiveCover> {
    let r = analyze(m, s);
    if !r.births.is_subset(s) {
        return Err(Error::NotGenerated(outside(m.poset(), &r.births, s)));
    }
    let p = m.poset().clone();
    let field = m.field();
    let mut summands = Vec::new();
    let mut sections = Vec::new();
    for x in s.iter() {
        let sp = splitting(m, s, x);
        if sp.dim > 0 {
            summands.push((x, sp.dim));
            sections.push(sp.section);
        }
    }
    let frees: Vec<PersModule> = summands
        .iter()
        .map(|&(x, k)| PersModule::free(p.clone(), x, k, field))
        .collect();
    let cover = PersModule::direct_sum_all(p.clone(), field, &frees)?;
    let comps = (0..p.len())
        .map(|c| {
            let blocks: Vec<Matrix> = summands
                .iter()
                .zip(&sections)
                .filter(|((x, _), _)| p.leq(*x, c))
                .map(|((x, _), e)| m.eval_map(*x, c).unwrap().mul(e))
                .collect();
            Matrix::hstack(field, m.dim(c), &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    let map = ModuleMorphism::new(cover, m.clone(), comps)?;
    if !map.is_epi() {
        return Err(Error::AssertionFailure("projective cover is not surjective".into()));
    }
    Ok(ProjectiveCover { summands, map })
}

/// A two-step free presentation with its generator and relation degrees.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// `ξ₀`: `(c, dim S_{S,c}M)` for `c ∈ B_S(M)`.
    pub gens: Vec<(usize, usize)>,
    /// `ξ₁`: `(c, dim S_{S,c}L)` for `c ∈ B_S(L)`, `L` the kernel of the cover.
    pub rels: Vec<(usize, usize)>,
    pub cover: ProjectiveCover,
    pub kernel: PersModule,
    /// Free relations mapped into the generators.
    pub relation_map: ModuleMorphism,
    /// `B_S(L) = D_S(M)`.
    pub verho: bool,
    /// `⊕rels -> ⊕gens -> M -> 0` is exact at every element.
    pub exact: bool,
}

pub fn minimal_presentation(m: &PersModule, s: &ElementSet) -> Result<Presentation> {
    let p = m.poset();
    let r = analyze(m, s);
    let bd = r.births.union(&r.deaths);
    if !bd.is_subset(s) {
        return Err(Error::NotPresented(outside(p, &bd, s)));
    }
    let cover = projective_cover(m, s)?;
    let (kernel, incl) = cover.map.kernel();
    let lr = analyze(&kernel, s);
    let gens = r.births.iter().map(|c| (c, r.split_dim(c))).collect();
    let rels = lr.births.iter().map(|c| (c, lr.split_dim(c))).collect();
    let verho = lr.births == r.deaths;
    if !verho {
        return Err(Error::AssertionFailure(format!(
            "relation degrees {:?} differ from deaths {:?}",
            p.names_of(&lr.births),
            p.names_of(&r.deaths)
        )));
    }
    let rel_cover = projective_cover(&kernel, s)?;
    let relation_map = rel_cover.map.then(&incl)?;
    let exact = relation_map.then(&cover.map)?.is_zero()
        && (0..p.len()).all(|c| relation_map.component(c).rank() == kernel.dim(c))
        && cover.map.is_epi();
    if !exact {
        return Err(Error::AssertionFailure("presentation is not exact".into()));
    }
    Ok(Presentation {
        gens,
        rels,
        cover,
        kernel,
        relation_map,
        verho,
        exact,
    })
}

/// Both sides of `M/mN ≅ ⊕_c S_{S,c}M` on a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub quotient_dim: usize,
    pub splitting_sum: usize,
    pub equal: bool,
}

/// Checks that the poset is a full product of chains with tuple identifiers.
pub fn grid_shape(p: &Poset) -> Result<Vec<usize>> {
    let coords: Vec<Vec<usize>> = p
        .names()
        .iter()
        .map(|n| parse_tuple_id(n).ok_or_else(|| Error::NotAGrid(format!("`{n}` is not a coordinate tuple"))))
        .collect::<Result<_>>()?;
    let arity = coords.first().map_or(0, Vec::len);
    if arity == 0 || coords.iter().any(|c| c.len() != arity) {
        return Err(Error::NotAGrid("coordinate arities differ".into()));
    }
    let dims: Vec<usize> = (0..arity)
        .map(|i| coords.iter().map(|c| c[i]).max().unwrap() + 1)
        .collect();
    let expected = Poset::grid(&dims).map_err(|e| Error::NotAGrid(e.to_string()))?;
    if expected != *p {
        return Err(Error::NotAGrid("order is not the product order".into()));
    }
    Ok(dims)
}

/// Computes `dim M/mN`, with `N` generated by `M(s)` for `s ∈ S` and `m`
/// acting along grid covers, and compares it with `Σ_c dim S_{S,c}M`.
pub fn verify_split_esim(m: &PersModule, s: &ElementSet) -> Result<SplitReport> {
    let p = m.poset();
    grid_shape(p)?;
    let field = m.field();
    // n[c] spans N_c = Σ_{s ∈ S, s <= c} im M(s <= c).
    let mut n_basis: Vec<Matrix> = Vec::with_capacity(p.len());
    for c in 0..p.len() {
        let parts: Vec<Matrix> = s
            .iter()
            .filter(|&x| p.leq(x, c))
            .map(|x| m.eval_map(x, c).unwrap())
            .collect();
        let span = Matrix::hstack(field, m.dim(c), &parts.iter().collect::<Vec<_>>());
        n_basis.push(span.image_basis().basis);
    }
    let mut quotient_dim = 0;
    let mut splitting_sum = 0;
    for c in 0..p.len() {
        let parts: Vec<Matrix> = p
            .lower_covers(c)
            .iter()
            .map(|&x| m.cover_map(x, c).mul(&n_basis[x]))
            .collect();
        let mn = Matrix::hstack(field, m.dim(c), &parts.iter().collect::<Vec<_>>());
        quotient_dim += m.dim(c) - mn.rank();
        splitting_sum += splitting(m, s, c).dim;
    }
    Ok(SplitReport {
        quotient_dim,
        splitting_sum,
        equal: quotient_dim == splitting_sum,
    })
}

/// The Koszul fixture: the ideal `(x, y)` truncated to a 3x3 grid.
pub fn koszul_fixture(field: crate::linalg::FieldSpec) -> PersModule {
    let g = Arc::new(Poset::grid(&[3, 3]).expect("small grid"));
    let mut ideal = g.full_set();
    ideal.remove(g.index_of("(0,0)").unwrap());
    PersModule::interval(g, &ideal, field).expect("the ideal is convex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FieldSpec;
    use crate::pmod::{random_interval_sum, random_module};
    use proptest::prelude::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn chain3() -> Arc<Poset> {
        Arc::new(Poset::chain(3))
    }

    fn diamond() -> Arc<Poset> {
        Arc::new(Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]).unwrap())
    }

    fn set(p: &Poset, names: &[&str]) -> ElementSet {
        p.set_from_names(names).unwrap()
    }

    fn interval(p: &Arc<Poset>, names: &[&str]) -> PersModule {
        PersModule::interval(p.clone(), &set(p, names), f()).unwrap()
    }

    fn names(p: &Poset, s: &ElementSet) -> Vec<String> {
        p.names_of(s)
    }

    #[test]
    fn interval_births_and_deaths() {
        let c = chain3();
        let m = interval(&c, &["0"]);
        assert_eq!(names(&c, &deaths(&m, &c.full_set())), ["1"]);
        assert_eq!(names(&c, &births(&m, &c.full_set())), ["0"]);

        let d = diamond();
        let m = interval(&d, &["b", "c", "d"]);
        let r = analyze(&m, &d.full_set());
        assert_eq!(names(&d, &r.births), ["b", "c"]);
        assert_eq!(names(&d, &r.deaths), ["d"]);
        assert_eq!(r.split_dim(1), 1);
        assert_eq!(r.split_dim(3), 0);
    }

    #[test]
    fn splitting_of_free_modules() {
        let d = diamond();
        let m = PersModule::free(d.clone(), 1, 3, f());
        let s = d.full_set();
        for c in 0..4 {
            assert_eq!(splitting(&m, &s, c).dim, if c == 1 { 3 } else { 0 });
        }
        let z = PersModule::zero(d.clone(), f());
        assert!((0..4).all(|c| splitting(&z, &s, c).dim == 0));
    }

    #[test]
    fn generated_and_presented_examples() {
        let c = chain3();
        let late = interval(&c, &["1", "2"]);
        assert!(is_generated(&late, &set(&c, &["1"])));
        assert!(is_presented(&late, &set(&c, &["1"])));
        let early = interval(&c, &["0"]);
        assert!(!is_presented(&early, &set(&c, &["0"])));
        assert!(is_presented(&early, &set(&c, &["0", "1"])));
        let m = random_module(diamond(), 3, f(), 1);
        assert!(is_generated(&m, &diamond().full_set()));
        assert!(is_presented(&m, &diamond().full_set()));
    }

    #[test]
    fn determined_examples() {
        let c = chain3();
        let late = interval(&c, &["1", "2"]);
        assert!(is_determined(&late, &set(&c, &["1"])));
        assert!(is_determined(&late, &c.full_set()));
        // The death at 1 breaks determination by {0}.
        assert!(!is_determined(&interval(&c, &["0"]), &set(&c, &["0"])));
    }

    #[test]
    fn minimal_sets() {
        let c = chain3();
        let early = interval(&c, &["0"]);
        assert_eq!(names(&c, &minimal_presentation_support(&early, &c.full_set()).unwrap()), ["0", "1"]);
        assert!(matches!(
            minimal_presentation_support(&early, &set(&c, &["0"])),
            Err(Error::NotPresented(v)) if v == ["1", "2"]
        ));
        let d = diamond();
        let fr = PersModule::free(d.clone(), 1, 1, f());
        assert_eq!(names(&d, &minimal_generating_degrees(&fr, &d.full_set()).unwrap()), ["b"]);
        assert_eq!(names(&d, &minimal_presentation_support(&fr, &d.full_set()).unwrap()), ["b"]);
        let sum = fr.direct_sum(&interval(&d, &["c", "d"])).unwrap();
        assert_eq!(names(&d, &minimal_generating_degrees(&sum, &d.full_set()).unwrap()), ["b", "c"]);
        assert!(matches!(minimal_generating_degrees(&fr, &set(&d, &["c"])), Err(Error::NotGenerated(_))));
    }

    #[test]
    fn koszul_presentation() {
        let m = koszul_fixture(f());
        let g = m.poset().clone();
        let full = g.full_set();
        assert_eq!(
            names(&g, &minimal_presentation_support(&m, &full).unwrap()),
            ["(0,1)", "(1,0)", "(1,1)"]
        );
        let pres = minimal_presentation(&m, &full).unwrap();
        let at = |s: &str| g.index_of(s).unwrap();
        assert_eq!(pres.gens, vec![(at("(0,1)"), 1), (at("(1,0)"), 1)]);
        assert_eq!(pres.rels, vec![(at("(1,1)"), 1)]);
        assert!(pres.verho && pres.exact);
        assert_eq!(pres.cover.summands.len(), 2);
        let s = set(&g, &["(1,0)", "(0,1)"]);
        let split = verify_split_esim(&m, &s).unwrap();
        assert_eq!((split.quotient_dim, split.splitting_sum), (2, 2));
    }

    #[test]
    fn presentations_of_simple_modules() {
        let c = chain3();
        let early = interval(&c, &["0"]);
        let pres = minimal_presentation(&early, &c.full_set()).unwrap();
        assert_eq!(pres.gens, vec![(0, 1)]);
        assert_eq!(pres.rels, vec![(1, 1)]);
        let d = diamond();
        let fr = PersModule::free(d.clone(), 0, 2, f());
        let pres = minimal_presentation(&fr, &d.full_set()).unwrap();
        assert!(pres.rels.is_empty());
        assert!(pres.cover.map.is_iso());
        let m = interval(&d, &["b", "c", "d"]);
        let cover = projective_cover(&m, &d.full_set()).unwrap();
        assert_eq!(cover.summands, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn fsp_examples() {
        let d = diamond();
        let fr = PersModule::free(d.clone(), 1, 1, f());
        let w = fsp_from_determined(&fr, &set(&d, &["b"])).unwrap();
        assert_eq!(names(&d, &w.t), ["b"]);
        let m = interval(&d, &["b", "c", "d"]);
        let w = fsp_from_determined(&m, &set(&d, &["b", "c"])).unwrap();
        assert_eq!(names(&d, &w.t), ["b", "c", "d"]);
        assert!(w.frames.contains(&(3, 3)));
        assert_eq!(fsp_from_determined(&interval(&chain3(), &["0"]), &set(&chain3(), &["0"])), Err(Error::NotDetermined));

        let k = koszul_fixture(f());
        let g = k.poset().clone();
        let w = fsp_from_determined(&k, &set(&g, &["(1,0)", "(0,1)"])).unwrap();
        assert_eq!(names(&g, &w.t), ["(0,1)", "(1,0)", "(1,1)"]);
    }

    #[test]
    fn fp_witness() {
        let d = diamond();
        assert!(finitely_presented_witness(&PersModule::zero(d.clone(), f())).s.is_empty());
        let w = finitely_presented_witness(&interval(&d, &["b", "c", "d"]));
        assert!(w.pointwise_ok && w.property_m);
        assert_eq!(names(&d, &w.s), ["b", "c", "d"]);
    }

    #[test]
    fn split_esim_trivial_cases() {
        let g = Arc::new(Poset::grid(&[3, 2]).unwrap());
        let fr = PersModule::free(g.clone(), 1, 2, f());
        let r = verify_split_esim(&fr, &ElementSet::singleton(g.len(), 1)).unwrap();
        assert_eq!((r.quotient_dim, r.splitting_sum), (2, 2));
        let z = PersModule::zero(g.clone(), f());
        assert!(verify_split_esim(&z, &g.full_set()).unwrap().equal);
        assert!(matches!(verify_split_esim(&interval(&chain3(), &["0"]), &chain3().full_set()), Err(Error::NotAGrid(_))));
    }

    #[test]
    fn empty_subset_makes_every_support_element_a_birth() {
        let d = diamond();
        let m = random_module(d.clone(), 2, f(), 8);
        assert_eq!(births(&m, &d.empty_set()), m.support());
        assert!(deaths(&m, &d.empty_set()).is_empty());
    }

    /// Determination by brute force over all comparable pairs.
    fn determined_all_pairs(m: &PersModule, s: &ElementSet) -> bool {
        let p = m.poset();
        m.support().is_subset(&p.up_set(s))
            && (0..p.len()).all(|c| {
                (0..p.len()).all(|d| {
                    !p.leq(c, d)
                        || p.principal_down(c).intersection(s) != p.principal_down(d).intersection(s)
                        || m.eval_map(c, d).unwrap().is_isomorphism()
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cover_check_matches_pair_check(n in 1usize..7, seed in any::<u64>(), mask in any::<u32>(), kind in any::<bool>()) {
            let p = Arc::new(Poset::random(n, 0.4, seed));
            let m = if kind { random_module(p.clone(), 2, f(), seed) } else { random_interval_sum(p.clone(), 2, f(), seed) };
            let s = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            prop_assert_eq!(is_determined(&m, &s), determined_all_pairs(&m, &s));
        }

        #[test]
        fn births_are_nonzero_splittings(n in 1usize..7, seed in any::<u64>(), mask in any::<u32>()) {
            let p = Arc::new(Poset::random(n, 0.4, seed));
            let m = random_module(p.clone(), 3, f(), seed);
            let s = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            let r = analyze(&m, &s);
            for c in 0..n {
                prop_assert_eq!(r.births.contains(c), splitting(&m, &s, c).dim > 0);
            }
            // Minimal elements of supp(M) ∩ S always split.
            for c in p.minimal_elements(&m.support().intersection(&s)).iter() {
                prop_assert!(r.split_dim(c) > 0);
            }
        }

        #[test]
        fn presented_implies_determined(n in 1usize..7, seed in any::<u64>(), mask in any::<u32>()) {
            let p = Arc::new(Poset::random(n, 0.4, seed));
            let m = random_interval_sum(p.clone(), 3, f(), seed);
            let s = ElementSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            if is_presented(&m, &s) {
                prop_assert!(is_determined(&m, &s));
            }
        }
    }
}
