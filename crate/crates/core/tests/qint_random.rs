use bcm_core::logic::qint::{
    frsubs_q, frsups_q, improve_subset, improve_superset, improvement_chain, parse_target, Bound, Component,
    IntervalTarget, QRepr, RatInterval, Real,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn iv(text: &str) -> RatInterval {
    bcm_core::logic::qint::parse_interval(text).unwrap()
}

#[test]
fn subset_chain_on_half_open_unit() {
    let target = parse_target("[0,1)").unwrap();
    let chain = improvement_chain(&iv("[0,0]"), 10, |c| improve_subset(c, &target)).unwrap();
    assert_eq!(chain.len(), 11);
    for w in chain.windows(2) {
        assert!(w[0].is_strict_subset(&w[1]));
        assert!(w[1].hi > w[0].hi && w[1].hi < q(1, 1));
        assert!(target.is_subset(&w[1].target()) || w[1].target().is_subset(&target));
    }
    assert_eq!(chain[10].hi, q(1023, 1024));
}

#[test]
fn superset_chain_on_half_open_unit() {
    let target = parse_target("(0,1]").unwrap();
    let chain = improvement_chain(&iv("[-1,1]"), 10, |c| improve_superset(c, &target)).unwrap();
    for w in chain.windows(2) {
        assert!(w[1].is_strict_subset(&w[0]));
        assert!(w[1].lo > w[0].lo && w[1].lo < q(0, 1));
        assert!(target.is_subset(&w[1].target()));
    }
    assert_eq!(chain[10].lo, q(-1, 1024));
}

fn random_open_target(rng: &mut ChaCha8Rng) -> (IntervalTarget, BigRational, BigRational) {
    let a = q(rng.gen_range(-20..20), rng.gen_range(1..8));
    let b = &a + q(rng.gen_range(1..20), rng.gen_range(1..8));
    let lo = if rng.gen_bool(0.5) {
        Bound::Open(Real::Rat(a.clone()))
    } else {
        Bound::Closed(Real::Rat(a.clone()))
    };
    let t = IntervalTarget::from_parts(vec![Component::new(lo, Bound::Open(Real::Rat(b.clone())))]);
    (t, a, b)
}

#[test]
fn improvers_stay_strict_on_random_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let (target, a, b) = random_open_target(&mut rng);
        let mid = (&a + &b) / q(2, 1);
        let start = RatInterval::new(mid.clone(), mid.clone()).unwrap();
        let chain = improvement_chain(&start, 6, |c| improve_subset(c, &target)).unwrap();
        for w in chain.windows(2) {
            assert!(w[0].is_strict_subset(&w[1]));
            assert!(w[1].target().is_subset(&target));
        }
        assert!(frsubs_q(&target).is_empty());

        // the superset side: a target open at both rational ends has its
        // closed hull as the only minimal superset
        let open = IntervalTarget::from_parts(vec![Component::new(
            Bound::Open(Real::Rat(a.clone())),
            Bound::Open(Real::Rat(b.clone())),
        )]);
        let wide = RatInterval::new(&a - q(1, 1), &b + q(1, 1)).unwrap();
        let chain = improvement_chain(&wide, 4, |c| improve_superset(c, &open)).unwrap();
        for w in chain.windows(2) {
            assert!(w[1].is_strict_subset(&w[0]));
            assert!(open.is_subset(&w[1].target()));
        }
        let hull = RatInterval::new(a.clone(), b.clone()).unwrap();
        assert_eq!(frsups_q(&open), vec![QRepr::Interval(hull.clone())]);
        assert!(improve_superset(&hull, &open).is_err());
    }
}

#[test]
fn surd_ends_have_no_minimal_superset() {
    let t = parse_target("(0,sqrt(2))").unwrap();
    assert!(frsups_q(&t).is_empty());
    let chain = improvement_chain(&iv("[-1,2]"), 10, |c| improve_superset(c, &t)).unwrap();
    for w in chain.windows(2) {
        assert!(w[1].is_strict_subset(&w[0]));
        assert!(t.is_subset(&w[1].target()));
    }
}
