//! Turns library results into JSON reports.

use std::sync::Arc;

use gpm_core::births::{self, BirthDeathReport};
use gpm_core::graded::modules::{
    gamma, gamma_lambda_roundtrip, is_unital, lambda_functor, phi, psi, random_conjugate, random_functor_module,
};
use gpm_core::graded::smash::{category_algebra_iso, SmashAlgebra};
use gpm_core::io::{split_set_arg, Workspace};
use gpm_core::kan;
use gpm_core::verify::VerifyReport;
use gpm_core::{ElementSet, Error, Poset};
use serde_json::{json, Map, Value};

use crate::{Failure, GradedQuery, Outcome};

fn ok(value: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { value, ok: true })
}

/// `--set` as an element set; `None` means the whole poset.
fn parse_set(p: &Poset, set: Option<&str>) -> Result<ElementSet, Failure> {
    match set {
        None => Ok(p.full_set()),
        Some(s) => Ok(p.set_from_names(&split_set_arg(s))?),
    }
}

fn required_set(p: &Poset, set: Option<&str>) -> Result<ElementSet, Failure> {
    match set {
        None => Err(Failure("--set is required".into())),
        some => parse_set(p, some),
    }
}

fn names(p: &Poset, s: &ElementSet) -> Value {
    json!(p.names_of(s))
}

fn dims_map(p: &Poset, pairs: impl IntoIterator<Item = (usize, usize)>) -> Value {
    let mut map = Map::new();
    for (c, d) in pairs {
        map.insert(p.name(c).to_string(), json!(d));
    }
    Value::Object(map)
}

pub fn check(ws: &Workspace) -> Outcome {
    let mut posets = Map::new();
    for (id, p) in &ws.posets {
        posets.insert(id.clone(), json!({ "elements": p.len(), "covers": p.covers().len() }));
    }
    let mut modules = Map::new();
    for (id, m) in &ws.modules {
        let md = &m.module;
        modules.insert(
            id.clone(),
            json!({
                "poset": m.poset_id,
                "field": md.field().p(),
                "total_dim": md.total_dim(),
                "support": names(md.poset(), &md.support()),
            }),
        );
    }
    let mut monoids = Map::new();
    for (id, g) in &ws.monoids {
        monoids.insert(id.clone(), json!({ "order": g.order() }));
    }
    let mut acts = Map::new();
    for (id, a) in &ws.acts {
        let props = a.act.properties();
        acts.insert(
            id.clone(),
            json!({
                "monoid": a.monoid_id,
                "points": a.act.len(),
                "free": props.free,
                "faithful": props.faithful,
                "order_preserving": props.order_preserving,
            }),
        );
    }
    let mut algebras = Map::new();
    for (id, a) in &ws.algebras {
        algebras.insert(
            id.clone(),
            json!({ "monoid": a.monoid_id, "field": a.algebra.field().p(), "dim": a.algebra.dim() }),
        );
    }
    Outcome {
        value: json!({
            "posets": posets,
            "modules": modules,
            "monoids": monoids,
            "acts": acts,
            "algebras": algebras,
        }),
        ok: true,
    }
}

fn mult_map(p: &Poset, r: &BirthDeathReport, which: &ElementSet) -> Value {
    dims_map(p, which.iter().map(|c| (c, r.split_dim(c))))
}

pub fn analyze(ws: &Workspace, module: Option<&str>, set: Option<&str>) -> Result<Outcome, Failure> {
    let (id, m) = ws.module(module)?;
    let p = m.poset();
    let s = parse_set(p, set)?;
    let r = births::analyze(m, &s);
    let generated = r.births.is_subset(&s);
    let presented = r.births.union(&r.deaths).is_subset(&s);
    let determined = births::is_determined(m, &s);
    let fsp = if determined {
        p.hat(&s).and_then(|h| p.hat(&h)).map(|t| names(p, &t)).unwrap_or(Value::Null)
    } else {
        Value::Null
    };
    let xi0 = if generated { mult_map(p, &r, &r.births) } else { Value::Null };
    let xi1 = if presented {
        match births::minimal_presentation(m, &s) {
            Ok(pres) => dims_map(p, pres.rels.iter().copied()),
            Err(_) => Value::Null,
        }
    } else {
        Value::Null
    };
    ok(json!({
        "module_id": id,
        "S": names(p, &s),
        "births": names(p, &r.births),
        "deaths": names(p, &r.deaths),
        "split_dims": dims_map(p, r.split_dims.iter().copied()),
        "generated": generated,
        "presented": presented,
        "determined": determined,
        "fsp": fsp,
        "xi0": xi0,
        "xi1": xi1,
    }))
}

pub fn present(ws: &Workspace, module: Option<&str>, set: Option<&str>) -> Result<Outcome, Failure> {
    let (id, m) = ws.module(module)?;
    let p = m.poset();
    let s = parse_set(p, set)?;
    let r = births::analyze(m, &s);
    let missing = r.births.union(&r.deaths).difference(&s);
    if !missing.is_empty() {
        return Err(Error::NotPresented(p.names_of(&missing)).into());
    }
    let pres = births::minimal_presentation(m, &s)?;
    Ok(Outcome {
        ok: pres.verho && pres.exact,
        value: json!({
            "module_id": id,
            "S": names(p, &s),
            "generators": dims_map(p, pres.gens.iter().copied()),
            "relations": dims_map(p, pres.rels.iter().copied()),
            "minimal": pres.verho,
            "exact": pres.exact,
        }),
    })
}

pub fn fsp(ws: &Workspace, module: Option<&str>, set: Option<&str>) -> Result<Outcome, Failure> {
    let (id, m) = ws.module(module)?;
    let p = m.poset();
    if set.is_none() {
        let w = births::finitely_presented_witness(m);
        return ok(json!({
            "module_id": id,
            "pointwise_finite": w.pointwise_ok,
            "property_m": w.property_m,
            "presenting_set": names(p, &w.s),
        }));
    }
    let s = parse_set(p, set)?;
    let w = births::fsp_from_determined(m, &s)?;
    let mut frames = Map::new();
    for (c, x) in &w.frames {
        frames.insert(p.name(*c).to_string(), json!(p.name(*x)));
    }
    ok(json!({
        "module_id": id,
        "S": names(p, &s),
        "fsp": names(p, &w.t),
        "frames": frames,
    }))
}

pub fn colim(ws: &Workspace, module: Option<&str>, set: Option<&str>, at: &str, strict: bool) -> Result<Outcome, Failure> {
    let (id, m) = ws.module(module)?;
    let p = m.poset();
    let s = parse_set(p, set)?;
    let c = p.index_of(at)?;
    let w = kan::window(p, &s, c, strict);
    let res = kan::colim_window(m, &s, c, strict);
    let mut value = json!({
        "module_id": id,
        "S": names(p, &s),
        "at": at,
        "strict": strict,
        "window": names(p, &w),
        "dim": res.dim,
    });
    if strict {
        let l = kan::lambda(m, &s, c);
        value["lambda"] = json!({
            "rank": l.map.rank(),
            "epi": l.is_epi(),
            "mono": l.is_mono(),
        });
    }
    ok(value)
}

pub fn mu(ws: &Workspace, module: Option<&str>, set: Option<&str>) -> Result<Outcome, Failure> {
    let (id, m) = ws.module(module)?;
    let p = m.poset();
    let s = parse_set(p, set)?;
    let cm = kan::canonical_mu(m, &s)?;
    let induced = &cm.induced.module;
    ok(json!({
        "module_id": id,
        "S": names(p, &s),
        "induced_dims": dims_map(p, induced.dims().iter().copied().enumerate()),
        "epi": cm.morphism.is_epi(),
        "iso": cm.morphism.is_iso(),
    }))
}

pub fn mub(p: &Arc<Poset>, set: Option<&str>) -> Result<Outcome, Failure> {
    let s = required_set(p, set)?;
    let r = p.mub(&s)?;
    ok(json!({ "S": names(p, &s), "mub": names(p, &r) }))
}

pub fn hat(p: &Arc<Poset>, set: Option<&str>) -> Result<Outcome, Failure> {
    let s = required_set(p, set)?;
    let h = p.hat(&s)?;
    let hh = p.hat(&h)?;
    ok(json!({ "S": names(p, &s), "hat": names(p, &h), "hat_hat": names(p, &hh) }))
}

pub fn propm(p: &Arc<Poset>, max_size: Option<usize>) -> Outcome {
    let r = p.check_property_m(max_size);
    Outcome {
        ok: r.weakly_bounded && r.mub_complete,
        value: json!({
            "weakly_bounded": r.weakly_bounded,
            "mub_complete": r.mub_complete,
            "subsets_checked": r.subsets_checked,
            "exhaustive": r.exhaustive,
            "max_subset_size": r.max_subset_size,
        }),
    }
}

/// `sym:point` to a basis vector of the smash product.
fn smash_element(smash: &SmashAlgebra, token: &str) -> Result<Vec<u32>, Failure> {
    let (sym, point) = token
        .split_once(':')
        .ok_or_else(|| Failure(format!("expected `sym:point`, got `{token}`")))?;
    let i = smash.algebra().index_of(sym.trim())?;
    let a = smash.act().index_of(point.trim())?;
    let mut v = vec![0u32; smash.dim()];
    v[smash.index(i, a)] = 1;
    Ok(v)
}

pub fn graded(
    ws: &Workspace,
    query: GradedQuery,
    algebra: Option<&str>,
    act: Option<&str>,
    seed: u64,
    set: Option<&str>,
) -> Result<Outcome, Failure> {
    let (alg_id, alg) = ws.algebra(algebra)?;
    let (act_id, a) = ws.act(act)?;
    if alg.monoid() != a.monoid() {
        return Err(Error::MismatchedBase.into());
    }
    let mut value = json!({ "algebra": alg_id, "act": act_id });
    let passed = match query {
        GradedQuery::PhiPsi => {
            let m = random_functor_module(alg.clone(), a.clone(), 12, seed);
            let q = phi(&m);
            q.validate()?;
            let back = psi(&q) == m;
            let forth = phi(&psi(&q)) == q;
            value["seed"] = json!(seed);
            value["spaces"] = json!(m.spaces());
            value["psi_phi"] = json!(back);
            value["phi_psi"] = json!(forth);
            back && forth
        }
        GradedQuery::GammaLambda => {
            let m = random_functor_module(alg.clone(), a.clone(), 12, seed);
            let q = gamma(&m)?;
            q.validate()?;
            let unital = is_unital(&q);
            let (back, _) = lambda_functor(&q)?;
            let conj = random_conjugate(&q, seed)?;
            let round = gamma_lambda_roundtrip(&conj)?;
            value["seed"] = json!(seed);
            value["dim"] = json!(q.dim());
            value["unital"] = json!(unital);
            value["lambda_gamma"] = json!(back == m);
            value["gamma_lambda"] = json!(round);
            unital && back == m && round
        }
        GradedQuery::Smash => {
            let smash = SmashAlgebra::new(alg.clone(), a.clone())?;
            let r = category_algebra_iso(alg.field(), a.clone())?;
            value["smash_dim"] = json!(smash.dim());
            value["associative"] = json!(true);
            value["category_algebra"] = json!({
                "dim": r.dim,
                "bijective": r.bijective,
                "multiplicative": r.multiplicative,
                "unital": r.unital,
            });
            r.is_isomorphism() && r.unital
        }
        GradedQuery::LocalUnit => {
            let smash = SmashAlgebra::new(alg.clone(), a.clone())?;
            let tokens = split_set_arg(set.ok_or_else(|| Failure("--set is required".into()))?);
            let t = tokens
                .iter()
                .map(|tok| smash_element(&smash, tok))
                .collect::<Result<Vec<_>, _>>()?;
            let lu = smash.local_unit(&t)?;
            let mut w = Map::new();
            for (x, &c) in lu.w.iter().enumerate() {
                if c != 0 {
                    let (i, p) = smash.split_index(x);
                    w.insert(format!("{}:{}", alg.symbols()[i], a.points()[p]), json!(c));
                }
            }
            let points: Vec<&str> = lu.points.iter().map(|&p| a.points()[p].as_str()).collect();
            value["points"] = json!(points);
            value["w"] = Value::Object(w);
            true
        }
    };
    Ok(Outcome { value, ok: passed })
}

pub fn verify(r: &VerifyReport) -> Value {
    json!({
        "suite": r.suite,
        "cases": r.cases,
        "failures": r.failures,
    })
}
