//! Normalization and reduced-expression graph checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scox::{CoxeterSystem, Expression, GenSubset, Step};

/// A random walk of `width` steps from a random finitary start.
fn random_expression(sys: &CoxeterSystem, rng: &mut ChaCha8Rng, width: usize) -> Expression {
    let n = sys.rank();
    let start = loop {
        let j = GenSubset::from_bits(rng.gen_range(0..(1u64 << n)));
        if sys.is_finitary(j) && j != sys.all() {
            break j;
        }
    };
    let mut cur = start;
    let mut steps = Vec::new();
    for _ in 0..width {
        let mut options = Vec::new();
        for s in 0..n {
            if cur.contains(s) {
                options.push(Step::minus(s));
            } else if sys.is_finitary(cur.with(s)) {
                options.push(Step::plus(s));
            }
        }
        let st = options[rng.gen_range(0..options.len())];
        cur = st.apply(cur);
        steps.push(st);
    }
    Expression::new(sys, start, steps).unwrap()
}

#[test]
fn random_normalization_replays_on_a3_and_b3() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["A3", "B3"] {
        let sys = CoxeterSystem::named(name).unwrap();
        for _ in 0..300 {
            let width = rng.gen_range(0..14);
            let e = random_expression(&sys, &mut rng, width);
            let tr = sys.normalize(&e);
            assert!(sys.is_reduced(&tr.final_expr));
            assert_eq!(sys.evaluate(&tr.final_expr), sys.evaluate(&e));
            tr.replay(&sys).unwrap();
        }
    }
}

#[test]
fn matsumoto_holds_on_small_types() {
    for name in ["A1", "A2", "B2", "G2", "A3", "A1×A2"] {
        let sys = CoxeterSystem::named(name).unwrap();
        let rep = sys.matsumoto_verify().unwrap();
        assert!(rep.failures().is_empty(), "{name}");
    }
}

#[test]
fn matsumoto_holds_on_dihedral_types() {
    for name in ["I2(5)", "I2(7)", "I2(8)"] {
        let sys = CoxeterSystem::named(name).unwrap();
        let rep = sys.matsumoto_verify().unwrap();
        assert!(rep.failures().is_empty(), "{name}");
    }
}
