//! Interval modules: births, deaths and presentations against direct
//! order-theoretic computations.

use std::sync::Arc;

use gpm_core::births::{self, koszul_fixture, minimal_presentation};
use gpm_core::pmod::random_interval;
use gpm_core::verify::disconnected_downsets;
use gpm_core::{ElementSet, FieldSpec, PersModule, Poset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> FieldSpec {
    FieldSpec::default()
}

fn minimal(p: &Poset, s: &ElementSet) -> ElementSet {
    p.minimal_elements(s)
}

/// `c ∉ I` above `I` is a death iff some component of the part of `I`
/// strictly below `c` is not already killed below `c`.
fn deaths_outside(p: &Poset, interval: &ElementSet) -> ElementSet {
    let n = p.len();
    let above = p.up_set(interval).difference(interval);
    ElementSet::from_indices(
        n,
        above.iter().filter(|&c| {
            let below = p.strict_down(c).intersection(interval);
            let killers: Vec<usize> = above.iter().filter(|&e| p.leq(e, c) && e != c).collect();
            p.components(&below)
                .iter()
                .any(|comp| comp.iter().all(|x| killers.iter().all(|&e| !p.leq(x, e))))
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn births_are_minimal_elements(n in 1usize..7, density in 0.1f64..0.7, seed in any::<u64>()) {
        let p = Arc::new(Poset::random(n, density, seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_interval(&p, &mut rng);
        let m = PersModule::interval(p.clone(), &i, field()).unwrap();
        let full = p.full_set();
        prop_assert_eq!(births::births(&m, &full), minimal(&p, &i));
        prop_assert_eq!(births::births(&m, &i), minimal(&p, &i));
    }

    #[test]
    fn deaths_inside_and_above(n in 1usize..7, density in 0.1f64..0.7, seed in any::<u64>()) {
        let p = Arc::new(Poset::random(n, density, seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_interval(&p, &mut rng);
        let m = PersModule::interval(p.clone(), &i, field()).unwrap();
        let d = births::deaths(&m, &p.full_set());
        prop_assert_eq!(d.intersection(&i), disconnected_downsets(&p, &i));
        prop_assert_eq!(d.difference(&i), deaths_outside(&p, &i));
    }
}

#[test]
fn a_non_minimal_death_above_the_interval() {
    // a < x < c and b < c with I = {a, b}: the copy from b survives to c.
    let p = Arc::new(Poset::new(&["a", "b", "x", "c"], &[("a", "x"), ("x", "c"), ("b", "c")]).unwrap());
    let i = p.set_from_names(&["a", "b"]).unwrap();
    let m = PersModule::interval(p.clone(), &i, field()).unwrap();
    let d = births::deaths(&m, &p.full_set());
    assert_eq!(p.names_of(&d), vec!["x", "c"]);
    let above = p.up_set(&i).difference(&i);
    assert_eq!(p.names_of(&minimal(&p, &above)), vec!["x"]);
}

#[test]
fn koszul_presentation() {
    let m = koszul_fixture(field());
    let p = m.poset().clone();
    let pres = minimal_presentation(&m, &p.full_set()).unwrap();
    let named = |v: &[(usize, usize)]| v.iter().map(|&(c, k)| (p.name(c).to_string(), k)).collect::<Vec<_>>();
    let mut gens = named(&pres.gens);
    gens.sort();
    assert_eq!(gens, vec![("(0,1)".to_string(), 1), ("(1,0)".to_string(), 1)]);
    assert_eq!(named(&pres.rels), vec![("(1,1)".to_string(), 1)]);
    assert!(pres.verho && pres.exact);
}

#[test]
fn chain_interval_presentation() {
    let p = Arc::new(Poset::chain(3));
    let i = p.set_from_names(&["0"]).unwrap();
    let m = PersModule::interval(p.clone(), &i, field()).unwrap();
    let pres = minimal_presentation(&m, &p.full_set()).unwrap();
    assert_eq!(pres.gens, vec![(p.index_of("0").unwrap(), 1)]);
    assert_eq!(pres.rels, vec![(p.index_of("1").unwrap(), 1)]);
}
