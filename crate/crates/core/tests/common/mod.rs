#![allow(dead_code)]

use bcm_core::logic::prop::Formula;
use rand::Rng;

pub fn random_formula<R: Rng>(rng: &mut R, atoms: usize, depth: u32, constants: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        if constants && rng.gen_bool(0.1) {
            return if rng.gen_bool(0.5) {
                Formula::Top
            } else {
                Formula::Bottom
            };
        }
        return Formula::Atom(rng.gen_range(0..atoms));
    }
    let op = rng.gen_range(0..4);
    let a = random_formula(rng, atoms, depth - 1, constants);
    if op == 0 {
        return Formula::not(a);
    }
    let b = random_formula(rng, atoms, depth - 1, constants);
    match op {
        1 => Formula::and(a, b),
        2 => Formula::or(a, b),
        _ => Formula::implies(a, b),
    }
}

/// Standard Gödel semantics on `[0,1]`.
pub fn goedel_numeric(v: &[f64], f: &Formula) -> f64 {
    match f {
        Formula::Atom(a) => v[*a],
        Formula::Top => 1.0,
        Formula::Bottom => 0.0,
        Formula::Not(x) => {
            if goedel_numeric(v, x) == 0.0 {
                1.0
            } else {
                0.0
            }
        }
        Formula::And(a, b) => goedel_numeric(v, a).min(goedel_numeric(v, b)),
        Formula::Or(a, b) => goedel_numeric(v, a).max(goedel_numeric(v, b)),
        Formula::Implies(a, b) => {
            let (x, y) = (goedel_numeric(v, a), goedel_numeric(v, b));
            if x <= y {
                1.0
            } else {
                y
            }
        }
    }
}
