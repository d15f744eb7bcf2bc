use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ptalg::algebra::{build_q, natural_decomposition};
use ptalg::exact::RadicalSum;
use ptalg::oracle::{permutation_operator, vprime, Budgets, SparseOperator};
use ptalg::pbt::{fidelity_closed, fidelity_from_irrep_traces, rho_spectrum_theory};
use ptalg::symmetric::{
    dim_irrep, factorial, inductions, multiplicity, multiplicity_character_sum, partitions_of, restrictions, Partition,
    Permutation,
};
use ptalg::verify::{eigenvalue_agreement, z_residuals};
use ptalg::young::{standard_tableaux, yor};

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|m| {
        let parts = partitions_of(m, None);
        (0..parts.len()).prop_map(move |i| parts[i].clone())
    })
}

fn permutation(m: usize) -> impl Strategy<Value = Permutation> {
    any::<u64>().prop_map(move |seed| Permutation::random(m, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hook_length_counts_tableaux(mu in partition(7)) {
        prop_assert_eq!(dim_irrep(&mu) as usize, standard_tableaux(&mu).len());
    }

    #[test]
    fn branching_preserves_dimension(mu in partition(8)) {
        prop_assume!(mu.size() > 0);
        let below: u128 = restrictions(&mu).iter().map(dim_irrep).sum();
        prop_assert_eq!(below, dim_irrep(&mu));
        let above: u128 = inductions(&mu).iter().map(dim_irrep).sum();
        prop_assert_eq!(above, (mu.size() as u128 + 1) * dim_irrep(&mu));
    }

    #[test]
    fn schur_weyl_dimension_count(m in 0usize..9, d in 1u32..6) {
        let total: u128 = partitions_of(m, None).iter().map(|mu| multiplicity(mu, d) * dim_irrep(mu)).sum();
        prop_assert_eq!(total, (d as u128).pow(m as u32));
        let squares: BigUint = partitions_of(m, None).iter().map(|mu| BigUint::from(dim_irrep(mu).pow(2))).sum();
        prop_assert_eq!(squares, factorial(m));
    }

    #[test]
    fn multiplicity_formulas_agree(mu in partition(6), d in 1u32..5) {
        prop_assert_eq!(multiplicity(&mu, d), multiplicity_character_sum(&mu, d).unwrap());
    }

    #[test]
    fn permutation_group_laws((s, t, u) in (1usize..8).prop_flat_map(|m| (permutation(m), permutation(m), permutation(m)))) {
        prop_assert_eq!(s.compose(&t).compose(&u), s.compose(&t.compose(&u)));
        prop_assert!(s.compose(&s.inverse()).is_identity());
        prop_assert_eq!(s.compose(&t).sign(), s.sign() * t.sign());
        let m = s.degree();
        prop_assert_eq!(s.embed(m + 2).restrict(m), Some(s.clone()));
    }

    #[test]
    fn young_orthogonal_form_is_an_orthogonal_representation(
        (mu, s, t) in (1usize..6).prop_flat_map(|m| {
            let parts = partitions_of(m, None);
            ((0..parts.len()).prop_map(move |i| parts[i].clone()), permutation(m), permutation(m))
        })
    ) {
        let a = yor(&mu, &s).unwrap().values;
        let b = yor(&mu, &t).unwrap().values;
        let ab = yor(&mu, &s.compose(&t)).unwrap().values;
        prop_assert!((&a * &b - ab).amax() < 1e-12);
        let id = nalgebra::DMatrix::<f64>::identity(a.nrows(), a.nrows());
        prop_assert!((&a * a.transpose() - id).amax() < 1e-12);
    }

    #[test]
    fn eigenvalue_routes_agree(alpha in partition(5), d in 2u32..6) {
        prop_assert_eq!(eigenvalue_agreement(&alpha, d).unwrap(), 0);
    }

    #[test]
    fn z_reduces_q(alpha in partition(4), d in 2u32..5) {
        let (orth, diag) = z_residuals(&alpha, alpha.size() + 2, d).unwrap();
        prop_assert!(orth < 1e-10 && diag < 1e-10, "{orth:e} {diag:e}");
    }

    #[test]
    fn q_traces(alpha in partition(5), d in 2u32..6) {
        let n = alpha.size() + 2;
        let q = build_q(&alpha, n, d).unwrap().values;
        let da = dim_irrep(&alpha) as f64;
        prop_assert!((q.trace() - (d as usize * (n - 1)) as f64 * da).abs() < 1e-9);
        let sq = (n - 1) as f64 * da * ((d * d) as usize + n - 2) as f64;
        prop_assert!(((&q * &q).trace() - sq).abs() < 1e-8);
    }

    #[test]
    fn decomposition_fills_the_space(n in 2usize..9, d in 2u32..5) {
        let r = natural_decomposition(n, d).unwrap();
        prop_assert_eq!(r.dimension_sum(), BigUint::from(d).pow(n as u32));
    }

    #[test]
    fn theory_spectrum_totals(n in 2usize..10, d in 2u32..5) {
        let t = rho_spectrum_theory(n, d).unwrap();
        prop_assert_eq!(t.trace(), (n as u128 - 1) * (d as u128).pow(n as u32 - 1));
        let count: u128 = t.eigenvalues.iter().map(|e| e.multiplicity).sum::<u128>() + t.zero_multiplicity;
        prop_assert_eq!(count, (d as u128).pow(n as u32));
        prop_assert_eq!(t.eigenvalues[0].lambda, d as i64 + n as i64 - 2);
    }

    #[test]
    fn fidelity_within_bounds(ports in 1usize..25, d in 2u32..6) {
        let r = fidelity_closed(ports, d).unwrap();
        prop_assert!(r.lower_bound <= r.fidelity + 1e-15);
        prop_assert!(r.fidelity <= r.upper_gap + 1e-15);
        prop_assert!(r.upper_gap < 1.0);
        let other = fidelity_from_irrep_traces(ports, d).unwrap();
        prop_assert!((other - r.fidelity).abs() < 1e-12);
    }

    #[test]
    fn radical_square_matches_floats(terms in prop::collection::vec((1u32..20, 1u32..200), 1..6)) {
        let mut s = RadicalSum::zero();
        let mut x = 0.0;
        for &(c, r) in &terms {
            s.add_sqrt(BigUint::from(c), BigUint::from(r));
            x += c as f64 * (r as f64).sqrt();
        }
        prop_assert!((s.to_f64() - x).abs() < 1e-9 * x);
        prop_assert!((s.square().to_f64() - x * x).abs() < 1e-9 * x * x);
    }

    #[test]
    fn sparse_dump_round_trip(entries in prop::collection::vec((0usize..8, 0usize..8, -5i32..5), 0..20)) {
        let op = SparseOperator::from_triplets(3, 2, entries.iter().map(|&(r, c, v)| (r, c, v as f64 / 4.0)));
        prop_assert_eq!(SparseOperator::parse_dump(&op.dump()), Some(op.clone()));
        prop_assert_eq!(op.partial_transpose_last().partial_transpose_last(), op.clone());
        let dense = op.to_dense();
        prop_assert_eq!(op.mul(&op).to_dense(), &dense * &dense);
    }

    #[test]
    fn tensor_representation(
        (s, t) in (2usize..5).prop_flat_map(|n| (permutation(n), permutation(n))),
        d in 2usize..4,
    ) {
        let n = s.degree();
        let b = Budgets::default();
        let vs = permutation_operator(&s, n, d, &b).unwrap();
        let vt = permutation_operator(&t, n, d, &b).unwrap();
        prop_assert_eq!(vs.mul(&vt), permutation_operator(&s.compose(&t), n, d, &b).unwrap());
        prop_assert_eq!(vs.trace(), (d as f64).powi(s.cycle_count() as i32));
    }

    #[test]
    fn vprime_squares_to_d_times_itself(n in 2usize..5, d in 2usize..4, a_seed in any::<usize>()) {
        let a = 1 + a_seed % (n - 1);
        let v = vprime(a, n, d, &Budgets::default()).unwrap();
        prop_assert!(v.mul(&v).max_abs_diff(&v.scale(d as f64)) < 1e-12);
        prop_assert_eq!(v.trace(), (d as f64).powi(n as i32 - 1));
    }
}

#[test]
fn one_port_fidelity_is_one_over_d_squared() {
    for d in 2..=6u32 {
        let r = fidelity_closed(1, d).unwrap();
        assert_eq!(r.fidelity, 1.0 / (d * d) as f64);
        assert_eq!(r.lower_bound_exact, ptalg::exact::Rational::new(1, (d * d) as i128));
    }
}
