use pnt_core::bounds::{w_rho, w_rho_bound_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn first_zero_at_largest_step() {
    assert!(w_rho_bound_check(14.134725, 1e-7));
}

#[test]
fn vanishes_with_u() {
    let (lhs, rhs) = w_rho(14.134725, 1e-15);
    assert!(lhs < 1e-10 && rhs > 0.0);
}

#[test]
fn random_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let gamma = 10f64.powf(rng.gen_range(14f64.log10()..7.0));
        let u = 10f64.powf(rng.gen_range(-14.0..-7.0));
        let (lhs, rhs) = w_rho(gamma, u);
        assert!(lhs <= rhs, "gamma {gamma}, u {u}: {lhs} > {rhs}");
        worst = worst.max(lhs / rhs);
    }
    assert!(worst < 1.0);
}
