//! Seeded property suites over random instances.
//!
//! Case `i` of a run with seed `s` uses the seed `s + i` (wrapping) and
//! nothing else, so a failing case replays with `--seed <case seed> --cases 1`.
//! Cases run in parallel; failures are reported sorted by seed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::births::{self, analyze, splitting_morphism};
use crate::error::{Error, Result};
use crate::graded::modules::{
    gamma, gamma_lambda_roundtrip, is_unital, lambda_functor, phi, psi, random_functor_module,
};
use crate::graded::smash::category_algebra_iso;
use crate::graded::{GAct, GradedAlgebra, Monoid};
use crate::kan;
use crate::linalg::{FieldSpec, Matrix};
use crate::pmod::{hom_dimension, random_interval, random_interval_sum, random_invertible, random_module, ModuleMorphism, PersModule};
use crate::poset::{ElementSet, Poset};

pub const SUITES: &[&str] = &[
    "adjunction",
    "esitys-minimi",
    "fsp-apu",
    "fsp-ehdot",
    "gamma-lambda",
    "induktio-apu",
    "interval-ex",
    "monotonicity",
    "phi-psi",
    "sf-lemma",
    "smash-iso",
    "split-esim",
    "syntyma",
    "syntyma-minimi",
    "syntyma-vertailu",
    "tchernev",
    "tuplahattu",
    "verho",
];

pub const MAX_ELEMENTS_LIMIT: usize = 8;
pub const MAX_DIM_LIMIT: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    /// Upper bound on random poset sizes. Minimality suites cap it at 5.
    pub max_elements: usize,
    pub max_dim: usize,
    pub field: FieldSpec,
}

impl VerifyConfig {
    pub fn new(suite: &str, seed: u64, cases: usize) -> Self {
        VerifyConfig {
            suite: suite.to_string(),
            seed,
            cases,
            max_elements: 6,
            max_dim: 3,
            field: FieldSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::UnknownElement(format!("suite {}", self.suite)));
        }
        if self.cases == 0 {
            return Err(Error::Shape("cases must be at least 1".into()));
        }
        if self.max_elements == 0 || self.max_elements > MAX_ELEMENTS_LIMIT {
            return Err(Error::TooLarge {
                what: "max_elements",
                size: self.max_elements,
                limit: MAX_ELEMENTS_LIMIT,
            });
        }
        if self.max_dim > MAX_DIM_LIMIT {
            return Err(Error::TooLarge {
                what: "max_dim",
                size: self.max_dim,
                limit: MAX_DIM_LIMIT,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    /// Seeds of failing cases, ascending.
    pub failures: Vec<u64>,
    /// `(seed, reason)` for every failure, same order.
    pub messages: Vec<(u64, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type CaseResult = std::result::Result<(), String>;

struct Ctx {
    max_elements: usize,
    max_dim: usize,
    field: FieldSpec,
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    let ctx = Ctx {
        max_elements: config.max_elements,
        max_dim: config.max_dim,
        field: config.field,
    };
    let case: fn(&Ctx, u64) -> CaseResult = match config.suite.as_str() {
        "adjunction" => adjunction,
        "esitys-minimi" => esitys_minimi,
        "fsp-apu" => fsp_apu,
        "fsp-ehdot" => fsp_ehdot,
        "gamma-lambda" => gamma_lambda,
        "induktio-apu" => induktio_apu,
        "interval-ex" => interval_ex,
        "monotonicity" => monotonicity,
        "phi-psi" => phi_psi,
        "sf-lemma" => sf_lemma,
        "smash-iso" => smash_iso,
        "split-esim" => split_esim,
        "syntyma" => syntyma,
        "syntyma-minimi" => syntyma_minimi,
        "syntyma-vertailu" => syntyma_vertailu,
        "tchernev" => tchernev,
        "tuplahattu" => tuplahattu,
        "verho" => verho,
        _ => unreachable!("validated above"),
    };
    // The catalog suite is exhaustive: one case per catalog entry.
    let cases = if config.suite == "smash-iso" { smash_entries().len() } else { config.cases };
    let mut messages: Vec<(u64, String)> = (0..cases)
        .into_par_iter()
        .filter_map(|i| {
            let seed = config.seed.wrapping_add(i as u64);
            let outcome = catch_unwind(AssertUnwindSafe(|| case(&ctx, seed)))
                .unwrap_or_else(|p| Err(format!("panic: {}", panic_message(&p))));
            outcome.err().map(|m| (seed, m))
        })
        .collect();
    messages.sort();
    Ok(VerifyReport {
        suite: config.suite.clone(),
        cases,
        failures: messages.iter().map(|(s, _)| *s).collect(),
        messages,
    })
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown".into()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poset(rng: &mut ChaCha8Rng, max_n: usize) -> Arc<Poset> {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.2..0.7);
    Arc::new(Poset::random(n, density, rng.gen()))
}

fn random_pmod(rng: &mut ChaCha8Rng, p: &Arc<Poset>, max_dim: usize, field: FieldSpec) -> PersModule {
    if rng.gen_bool(0.5) {
        random_module(p.clone(), max_dim, field, rng.gen())
    } else {
        random_interval_sum(p.clone(), max_dim.max(1), field, rng.gen())
    }
}

fn random_subset(rng: &mut ChaCha8Rng, universe: &ElementSet) -> ElementSet {
    ElementSet::from_indices(universe.universe(), universe.iter().filter(|_| rng.gen_bool(0.5)))
}

/// Every subset of `s`.
fn subsets_of(s: &ElementSet) -> Vec<ElementSet> {
    let items = s.to_vec();
    (0u32..1 << items.len())
        .map(|mask| {
            ElementSet::from_indices(
                s.universe(),
                items.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &x)| x),
            )
        })
        .collect()
}

fn names(p: &Poset, s: &ElementSet) -> String {
    format!("{:?}", p.names_of(s))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// A module and a set `S ⊇ B_C(M)`, so that `M` is `S`-generated.
fn generated_instance(ctx: &Ctx, rng: &mut ChaCha8Rng, max_n: usize) -> (PersModule, ElementSet) {
    let p = random_poset(rng, max_n);
    let m = random_pmod(rng, &p, ctx.max_dim, ctx.field);
    let s = random_subset(rng, &p.full_set()).union(&births::births(&m, &p.full_set()));
    (m, s)
}

/// A module and a set `S ⊇ B_C(M) ∪ D_C(M)`.
fn presented_instance(ctx: &Ctx, rng: &mut ChaCha8Rng, max_n: usize) -> (PersModule, ElementSet) {
    let p = random_poset(rng, max_n);
    let m = random_pmod(rng, &p, ctx.max_dim, ctx.field);
    let full = p.full_set();
    let r = analyze(&m, &full);
    let s = random_subset(rng, &full).union(&r.births).union(&r.deaths);
    (m, s)
}

/// A module determined by a small nonempty `S`, built as `ind_S res_S M0`
/// or as `ind_Ŝ res_Ŝ M0` when the latter happens to be `S`-determined.
fn determined_instance(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (PersModule, ElementSet) {
    let p = random_poset(rng, ctx.max_elements);
    let m0 = random_pmod(rng, &p, ctx.max_dim, ctx.field);
    let n = p.len();
    let k = rng.gen_range(1..=3.min(n));
    let s = ElementSet::from_indices(n, (0..k).map(|_| rng.gen_range(0..n)));
    let via_hat = rng.gen_bool(0.5);
    if via_hat {
        let h = p.hat(&s).expect("small sets");
        let m = kan::induce(&kan::restrict(&m0, &h), p.clone()).expect("subposet embeds").module;
        if births::is_determined(&m, &s) {
            return (m, s);
        }
    }
    let m = kan::induce(&kan::restrict(&m0, &s), p.clone()).expect("subposet embeds").module;
    (m, s)
}

fn fsp_apu(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let p = random_poset(&mut rng, ctx.max_elements);
    let m = random_pmod(&mut rng, &p, ctx.max_dim, ctx.field);
    let full = p.full_set();
    let sets = if p.len() <= 5 {
        subsets_of(&full)
    } else {
        (0..16).map(|_| random_subset(&mut rng, &full)).collect()
    };
    for s in sets {
        let r = analyze(&m, &s);
        let mu = lift(kan::canonical_mu(&m, &s))?.morphism;
        check(r.births.is_subset(&s) == mu.is_epi(), || format!("generated disagrees for S = {}", names(&p, &s)))?;
        check(r.births.union(&r.deaths).is_subset(&s) == mu.is_iso(), || {
            format!("presented disagrees for S = {}", names(&p, &s))
        })?;
    }
    Ok(())
}

fn syntyma_minimi(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = generated_instance(ctx, &mut rng, ctx.max_elements.min(5));
    let p = m.poset().clone();
    let b = births::births(&m, &s);
    check(lift(births::is_generated_via_mu(&m, &b))?, || format!("not generated by its births {}", names(&p, &b)))?;
    for t in subsets_of(&s) {
        if lift(births::is_generated_via_mu(&m, &t))? {
            check(b.is_subset(&t), || format!("T = {} generates but misses a birth of {}", names(&p, &t), names(&p, &b)))?;
        }
    }
    Ok(())
}

fn esitys_minimi(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = presented_instance(ctx, &mut rng, ctx.max_elements.min(5));
    let p = m.poset().clone();
    let r = analyze(&m, &s);
    let bd = r.births.union(&r.deaths);
    check(lift(births::is_presented_via_mu(&m, &bd))?, || format!("not presented by {}", names(&p, &bd)))?;
    for t in subsets_of(&s) {
        if lift(births::is_presented_via_mu(&m, &t))? {
            check(bd.is_subset(&t), || format!("T = {} presents but misses part of {}", names(&p, &t), names(&p, &bd)))?;
        }
    }
    Ok(())
}

fn koszul_ok(field: FieldSpec) -> CaseResult {
    let k = births::koszul_fixture(field);
    let p = k.poset().clone();
    let pres = lift(births::minimal_presentation(&k, &p.full_set()))?;
    let named = |xs: &[(usize, usize)]| xs.iter().map(|&(c, d)| (p.name(c).to_string(), d)).collect::<Vec<_>>();
    let gens = named(&pres.gens);
    let rels = named(&pres.rels);
    let want_gens = vec![("(0,1)".to_string(), 1), ("(1,0)".to_string(), 1)];
    let want_rels = vec![("(1,1)".to_string(), 1)];
    let mut sorted = gens.clone();
    sorted.sort();
    check(sorted == want_gens && rels == want_rels, || format!("Koszul fixture gave gens {gens:?}, rels {rels:?}"))
}

fn verho(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = presented_instance(ctx, &mut rng, ctx.max_elements);
    let p = m.poset().clone();
    let cover = lift(births::projective_cover(&m, &s))?;
    check(cover.map.is_epi(), || "cover is not onto".into())?;
    let (l, _) = cover.map.kernel();
    let bl = births::births(&l, &s);
    let dm = births::deaths(&m, &s);
    check(bl == dm, || format!("B_S(L) = {} but D_S(M) = {}", names(&p, &bl), names(&p, &dm)))?;
    koszul_ok(ctx.field)
}

fn tuplahattu(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = determined_instance(ctx, &mut rng);
    let p = m.poset().clone();
    check(births::is_determined(&m, &s), || format!("construction is not determined by {}", names(&p, &s)))?;
    let t = lift(p.hat(&lift(p.hat(&s))?))?;
    check(births::is_presented(&m, &t), || format!("not presented by the double hat {}", names(&p, &t)))?;
    lift(births::fsp_from_determined(&m, &s)).map(|_| ())
}

fn syntyma_vertailu(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = generated_instance(ctx, &mut rng, ctx.max_elements);
    let p = m.poset().clone();
    let bc = births::births(&m, &p.full_set());
    let bs = births::births(&m, &s);
    check(bc == bs, || format!("B_C = {} but B_S = {} for S = {}", names(&p, &bc), names(&p, &bs), names(&p, &s)))
}

/// A morphism into `m` from a sum of free modules, one per `(x, V_x)`.
fn morphism_from_frees(m: &PersModule, gens: &[(usize, Matrix)]) -> Result<ModuleMorphism> {
    let p = m.poset().clone();
    let field = m.field();
    let frees: Vec<PersModule> = gens.iter().map(|(x, v)| PersModule::free(p.clone(), *x, v.cols(), field)).collect();
    let source = PersModule::direct_sum_all(p.clone(), field, &frees)?;
    let comps = (0..p.len())
        .map(|c| {
            let blocks: Vec<Matrix> = gens
                .iter()
                .filter(|(x, _)| p.leq(*x, c))
                .map(|(x, v)| m.eval_map(*x, c).unwrap().mul(v))
                .collect();
            Matrix::hstack(field, m.dim(c), &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    ModuleMorphism::new(source, m.clone(), comps)
}

fn random_free_gens(rng: &mut ChaCha8Rng, m: &PersModule, prefer: &ElementSet) -> Vec<(usize, Matrix)> {
    let n = m.poset().len();
    let preferred = prefer.to_vec();
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let x = if !preferred.is_empty() && rng.gen_bool(0.6) {
                preferred[rng.gen_range(0..preferred.len())]
            } else {
                rng.gen_range(0..n)
            };
            let cols = rng.gen_range(1..=m.dim(x).max(1));
            let v = Matrix::from_fn(m.field(), m.dim(x), cols, |_, _| rng.gen_range(0..m.field().p()));
            (x, v)
        })
        .collect()
}

fn tchernev(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = generated_instance(ctx, &mut rng, ctx.max_elements);
    let p = m.poset().clone();
    let bs = births::births(&m, &s);
    let gens = random_free_gens(&mut rng, &m, &bs);
    let f = lift(morphism_from_frees(&m, &gens))?;
    let premise = bs.iter().all(|c| {
        let sf = splitting_morphism(&f, &s, c);
        sf.rank() == sf.rows()
    });
    check(!premise || f.is_epi(), || format!("splittings onto at {} but f is not onto", names(&p, &bs)))
}

fn phi_psi(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (alg, act) = random_graded_setup(&mut rng, ctx.field);
    let m = random_functor_module(alg, act, 12, rng.gen());
    lift(m.validate())?;
    let q = phi(&m);
    lift(q.validate())?;
    check(psi(&q) == m, || "psi(phi(F)) differs from F".into())?;
    check(phi(&psi(&q)) == q, || "phi(psi(Q)) differs from Q".into())
}

fn gamma_lambda(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (alg, act) = random_graded_setup(&mut rng, ctx.field);
    let m = random_functor_module(alg, act, 12, rng.gen());
    let q = lift(gamma(&m))?;
    lift(q.validate())?;
    check(is_unital(&q), || "gamma(F) is not unital".into())?;
    let (back, b) = lift(lambda_functor(&q))?;
    check(back == m, || "lambda(gamma(F)) differs from F".into())?;
    check(b == Matrix::identity(ctx.field, q.dim()), || "gamma(F) is not in block form".into())?;
    let r = random_invertible(&mut rng, ctx.field, q.dim());
    let q2 = lift(q.conjugate(&r))?;
    check(lift(gamma_lambda_roundtrip(&q2))?, || "gamma(lambda(Q)) differs from Q".into())?;
    check(!is_unital(&q.with_dead_part(1)), || "a dead vector went unnoticed".into())
}

type GradedCatalog = Vec<(Arc<Monoid>, Vec<Arc<GAct>>)>;

/// Monoids of order at most 4 with their acts on at most 4 points.
pub fn graded_catalog() -> &'static GradedCatalog {
    static CATALOG: OnceLock<GradedCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        Monoid::catalog(4)
            .into_par_iter()
            .map(|m| {
                let m = Arc::new(m);
                let acts = GAct::catalog(m.clone(), 4).into_iter().map(Arc::new).collect();
                (m, acts)
            })
            .collect()
    })
}

fn smash_entries() -> &'static [(usize, usize)] {
    static ENTRIES: OnceLock<Vec<(usize, usize)>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        graded_catalog()
            .iter()
            .enumerate()
            .flat_map(|(i, (_, acts))| (0..acts.len()).map(move |j| (i, j)))
            .collect()
    })
}

/// A random catalog monoid and act, with one of the algebras built from
/// the monoid whose dimension is at most 6.
fn random_graded_setup(rng: &mut ChaCha8Rng, field: FieldSpec) -> (Arc<GradedAlgebra>, Arc<GAct>) {
    let cat = graded_catalog();
    let (monoid, acts) = &cat[rng.gen_range(0..cat.len())];
    let act = acts[rng.gen_range(0..acts.len())].clone();
    let mut options = vec![GradedAlgebra::monoid_algebra(field, monoid.clone())];
    if 2 * monoid.order() <= 6 {
        options.push(GradedAlgebra::with_dual_numbers(field, monoid.clone()));
    }
    if let Some(c) = GradedAlgebra::contracted(field, monoid.clone()) {
        options.push(c);
    }
    let alg = options.swap_remove(rng.gen_range(0..options.len()));
    (Arc::new(alg), act)
}

fn smash_iso(ctx: &Ctx, seed: u64) -> CaseResult {
    let entries = smash_entries();
    let (i, j) = entries[(seed % entries.len() as u64) as usize];
    let act = graded_catalog()[i].1[j].clone();
    let r = lift(category_algebra_iso(ctx.field, act))?;
    check(r.bijective && r.multiplicative && r.unital, || format!("catalog entry ({i}, {j}): {r:?}"))
}

fn split_esim(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let dims: Vec<usize> = if rng.gen_bool(0.2) {
        vec![2, 2, 2]
    } else {
        vec![rng.gen_range(1..=3), rng.gen_range(1..=3)]
    };
    let p = Arc::new(lift(Poset::grid(&dims))?);
    let m = random_pmod(&mut rng, &p, ctx.max_dim, ctx.field);
    let s = random_subset(&mut rng, &p.full_set());
    let r = lift(births::verify_split_esim(&m, &s))?;
    check(r.equal, || format!("dim M/mN = {} but splittings sum to {}", r.quotient_dim, r.splitting_sum))
}

/// `{c ∈ I : (I ∩ ↓c) ∖ {c}` has at least two components`}`.
pub fn disconnected_downsets(p: &Poset, interval: &ElementSet) -> ElementSet {
    ElementSet::from_indices(
        p.len(),
        interval
            .iter()
            .filter(|&c| p.components(&p.strict_down(c).intersection(interval)).len() >= 2),
    )
}

fn interval_ex(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let p = random_poset(&mut rng, ctx.max_elements);
    let i = random_interval(&p, &mut rng);
    let m = lift(PersModule::interval(p.clone(), &i, ctx.field))?;
    let full = p.full_set();
    let r = analyze(&m, &full);
    let min_i = p.minimal_elements(&i);
    check(r.births == min_i, || format!("births {} but min I = {}", names(&p, &r.births), names(&p, &min_i)))?;
    let s1 = p.up_set(&i).difference(&i);
    let expected = p.minimal_elements(&s1).union(&disconnected_downsets(&p, &i));
    check(r.deaths == expected, || {
        format!(
            "I = {}: deaths {} but closed form gives {}",
            names(&p, &i),
            names(&p, &r.deaths),
            names(&p, &expected)
        )
    })
}

fn induktio_apu(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let p = random_poset(&mut rng, ctx.max_elements);
    let x = rng.gen_range(0..p.len());
    let mult = rng.gen_range(1..=ctx.max_dim.max(1));
    let free = PersModule::free(p.clone(), x, mult, ctx.field);
    let mut s = random_subset(&mut rng, &p.full_set());
    s.insert(x);
    let mu = lift(kan::canonical_mu(&free, &s))?;
    check(mu.induced.module.dims() == free.dims(), || format!("dims differ for S = {}", names(&p, &s)))?;
    check(mu.morphism.is_iso(), || format!("mu is not an isomorphism for S = {}", names(&p, &s)))
}

fn adjunction(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let p = random_poset(&mut rng, ctx.max_elements.min(5));
    let mut s = random_subset(&mut rng, &p.full_set());
    if s.is_empty() {
        s.insert(rng.gen_range(0..p.len()));
    }
    let dim = ctx.max_dim.clamp(1, 2);
    let (sub, _) = p.subposet(&s);
    let n = random_module(Arc::new(sub), dim, ctx.field, rng.gen());
    let m = random_module(p.clone(), dim, ctx.field, rng.gen());
    let ind = lift(kan::induce(&n, p.clone()))?.module;
    let lhs = lift(hom_dimension(&ind, &m))?;
    let rhs = lift(hom_dimension(&n, &kan::restrict(&m, &s)))?;
    check(lhs == rhs, || format!("dim Hom(ind N, M) = {lhs} but dim Hom(N, res M) = {rhs}"))
}

fn sf_lemma(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let p = random_poset(&mut rng, ctx.max_elements);
    let n = random_pmod(&mut rng, &p, ctx.max_dim, ctx.field);
    let s = random_subset(&mut rng, &p.full_set());
    let gens = random_free_gens(&mut rng, &n, &ElementSet::empty(p.len()));
    let g = lift(morphism_from_frees(&n, &gens))?;
    let (_, f) = g.cokernel();
    let (_, j) = f.kernel();
    for c in 0..p.len() {
        let lam = kan::lambda(&n, &s, c).map;
        let ker = f.component(c).kernel_basis().basis;
        let c1 = Matrix::hstack(ctx.field, n.dim(c), &[&lam, &ker]).rank() == lam.rank();
        let c2 = splitting_morphism(&j, &s, c).is_zero();
        let sf = splitting_morphism(&f, &s, c);
        let c3 = sf.rank() == sf.cols();
        let c4 = sf.is_isomorphism();
        check(c1 == c2 && c2 == c3 && c3 == c4, || {
            format!("conditions at `{}` evaluate to {:?}", p.name(c), [c1, c2, c3, c4])
        })?;
    }
    Ok(())
}

fn syntyma(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = determined_instance(ctx, &mut rng);
    let p = m.poset().clone();
    let h = lift(p.hat(&s))?;
    let r = analyze(&m, &h);
    if r.births.is_subset(&s) {
        check(r.deaths.is_subset(&h), || format!("deaths {} escape Ŝ = {}", names(&p, &r.deaths), names(&p, &h)))?;
    }
    Ok(())
}

fn fsp_ehdot(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let (m, s) = if rng.gen_bool(0.5) {
        presented_instance(ctx, &mut rng, ctx.max_elements)
    } else {
        let p = random_poset(&mut rng, ctx.max_elements);
        let m = random_pmod(&mut rng, &p, ctx.max_dim, ctx.field);
        let s = random_subset(&mut rng, &p.full_set());
        (m, s)
    };
    let p = m.poset().clone();
    if births::is_presented(&m, &s) {
        check(births::is_determined(&m, &s), || format!("presented by {} but not determined", names(&p, &s)))?;
    }
    Ok(())
}

fn monotonicity(ctx: &Ctx, seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let p = random_poset(&mut rng, ctx.max_elements);
    let m = random_pmod(&mut rng, &p, ctx.max_dim, ctx.field);
    let s = random_subset(&mut rng, &p.full_set());
    let t = random_subset(&mut rng, &s);
    let bs = births::births(&m, &s);
    let bt = births::births(&m, &t);
    check(bs.is_subset(&bt), || format!("B_S = {} is not inside B_T = {}", names(&p, &bs), names(&p, &bt)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors() {
        assert!(matches!(VerifyConfig::new("nope", 0, 1).validate(), Err(Error::UnknownElement(_))));
        assert!(matches!(VerifyConfig::new("verho", 0, 0).validate(), Err(Error::Shape(_))));
        let mut c = VerifyConfig::new("verho", 0, 1);
        c.max_elements = 99;
        assert!(matches!(c.validate(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn reports_are_reproducible() {
        let c = VerifyConfig::new("monotonicity", 11, 20);
        assert_eq!(run(&c).unwrap(), run(&c).unwrap());
    }

    #[test]
    fn seeds_shift_with_the_base_seed() {
        // Case i of seed s is case i - 1 of seed s + 1.
        let a = run(&VerifyConfig::new("interval-ex", 100, 40)).unwrap();
        let b = run(&VerifyConfig::new("interval-ex", 101, 39)).unwrap();
        let tail: Vec<u64> = a.failures.iter().copied().filter(|&s| s >= 101).collect();
        assert_eq!(tail, b.failures);
    }

    #[test]
    fn closed_form_counterexample() {
        // I = {a, b}, a < x < c, b < c: c dies although x sits below it in (↑I)∖I.
        let p = Poset::new(&["a", "b", "x", "c"], &[("a", "x"), ("x", "c"), ("b", "c")]).unwrap();
        let p = Arc::new(p);
        let i = p.set_from_names(&["a", "b"]).unwrap();
        let m = PersModule::interval(p.clone(), &i, FieldSpec::default()).unwrap();
        let d = births::deaths(&m, &p.full_set());
        assert_eq!(p.names_of(&d), vec!["x", "c"]);
        let s1 = p.up_set(&i).difference(&i);
        let closed = p.minimal_elements(&s1).union(&disconnected_downsets(&p, &i));
        assert_eq!(p.names_of(&closed), vec!["x"]);
    }
}
