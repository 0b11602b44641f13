use std::collections::BTreeSet;

use bcm_core::logic::ltlx::{
    chain_model, evict_x, rcp_x, sat_x, sat_x_base, universal_model, ModelInput, PointedKripke, XFormula,
};
use bcm_core::logic::prop::Signature;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 1000;

fn sig() -> Signature {
    Signature::parse("p,q,r").unwrap()
}

fn random_formula(rng: &mut ChaCha8Rng) -> XFormula {
    XFormula::new(rng.gen_range(0..5), rng.gen_range(0..3))
}

fn random_base(rng: &mut ChaCha8Rng) -> Vec<XFormula> {
    let mut base: Vec<XFormula> = (0..rng.gen_range(0..6)).map(|_| random_formula(rng)).collect();
    base.sort();
    base.dedup();
    base
}

fn random_model(rng: &mut ChaCha8Rng) -> PointedKripke {
    let n = rng.gen_range(1..5);
    let states = (0..n).map(|i| format!("s{i}")).collect();
    let mut edges = Vec::new();
    for s in 0..n {
        edges.push((s, rng.gen_range(0..n)));
        if rng.gen_bool(0.4) {
            edges.push((s, rng.gen_range(0..n)));
        }
    }
    let labels = (0..n)
        .map(|_| (0..3).filter(|_| rng.gen_bool(0.6)).collect::<BTreeSet<usize>>())
        .collect();
    PointedKripke::new(states, &edges, labels, rng.gen_range(0..n)).unwrap()
}

/// Depth-first satisfaction over explicit paths, independent of layering.
fn sat_by_paths(m: &PointedKripke, f: &XFormula) -> bool {
    fn go(m: &PointedKripke, s: usize, left: u32, atom: usize) -> bool {
        if left == 0 {
            return m.labels[s].contains(&atom);
        }
        m.succ[s].iter().all(|&t| go(m, t, left - 1, atom))
    }
    go(m, m.init, f.depth, f.atom)
}

#[test]
fn layered_satisfaction_matches_path_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..CASES {
        let m = random_model(&mut rng);
        for depth in 0..8 {
            for atom in 0..3 {
                let f = XFormula::new(depth, atom);
                assert_eq!(sat_x(&m, &f), sat_by_paths(&m, &f));
            }
        }
    }
}

#[test]
fn chain_model_separates() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut cases = 0;
    while cases < CASES {
        let base = random_base(&mut rng);
        let phi = random_formula(&mut rng);
        if base.contains(&phi) {
            continue;
        }
        let m = chain_model(&base, &phi).unwrap();
        assert!(sat_x_base(&m, &base));
        assert!(!sat_x(&m, &phi));
        assert!(!sat_by_paths(&m, &phi));
        cases += 1;
    }
}

#[test]
fn universal_model_satisfies_every_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let u = universal_model(&sig());
    for _ in 0..CASES {
        assert!(sat_x_base(&u, &random_base(&mut rng)));
    }
}

#[test]
fn reception_postulates_hold_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..CASES {
        let base = random_base(&mut rng);
        let models: Vec<PointedKripke> = (0..rng.gen_range(1..4)).map(|_| random_model(&mut rng)).collect();
        let input = ModelInput::explicit(models.clone());
        let result = rcp_x(&base, &input);
        // success
        assert!(models.iter().all(|m| sat_x_base(m, &result)));
        // persistence: a sub-base keeps every model of the base
        assert!(result.iter().all(|f| base.contains(f)));
        // vacuity
        if models.iter().all(|m| sat_x_base(m, &base)) {
            assert_eq!(result, base);
        }

        let other = random_base(&mut rng);
        let result = rcp_x(&base, &ModelInput::ModOf(other.clone()));
        assert!(result.iter().all(|f| base.contains(f) && other.contains(f)));
        for f in &base {
            if !other.contains(f) {
                // a model of `other` that refutes `f` forces `f` out
                let m = chain_model(&other, f).unwrap();
                assert!(!sat_x(&m, f));
                assert!(!result.contains(f));
            }
        }
        assert!(sat_x_base(&universal_model(&sig()), &result));
    }
}

#[test]
fn eviction_removes_listed_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let sig = sig();
    let mut done = 0;
    while done < CASES {
        let base = random_base(&mut rng);
        let models: Vec<PointedKripke> = (0..rng.gen_range(1..4)).map(|_| random_model(&mut rng)).collect();
        let input = ModelInput::explicit(models.clone());
        match evict_x(&sig, &base, &input) {
            Ok(out) => {
                assert!(models.iter().all(|m| !sat_x_base(m, &out.result)));
                assert!(base.iter().all(|f| out.result.contains(f)));
                done += 1;
            }
            Err(_) => assert!(models
                .iter()
                .any(|m| sat_x_base(m, &base) && m.satisfies_everything(&sig))),
        }
    }
}
