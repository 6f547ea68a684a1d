use mk_rank::codes::GabidulinCode;
use mk_rank::decoder::{self, DecodeOutcome};
use mk_rank::simulate::{
    count_matrices_rank, random_matrix, sample_error, success_lower_bound, ErrorMode, SplitMix64,
};
use mk_rank::{ExtField, Matrix};
use num_bigint::BigUint;
use proptest::prelude::*;

fn field(m: u32) -> ExtField {
    ExtField::with_default_modulus(2, m).unwrap()
}

fn seeded_matrix(f: &ExtField, rows: usize, cols: usize, seed: u64) -> Matrix {
    random_matrix(&mut SplitMix64::new(seed), f, rows, cols)
}

/// Matrices with a biased share of zeros, so rank deficiency is common.
fn sparse_matrix(f: &ExtField, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = SplitMix64::new(seed);
    let order = f.order() as u64;
    Matrix::from_fn(f, rows, cols, |_, _| {
        if rng.below(3) == 0 {
            f.element(rng.below(order) as u32).unwrap()
        } else {
            mk_rank::FieldEl::ZERO
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_reproduced_by_transform(m in 1u32..6, rows in 1usize..6, cols in 1usize..7, seed: u64) {
        let f = field(m);
        let a = sparse_matrix(&f, rows, cols, seed);
        let (p, e) = a.rref_with_transform();
        prop_assert_eq!(p.rows(), rows);
        prop_assert_eq!(p.rank(), rows);
        prop_assert_eq!(&p.mul(&a).unwrap(), &e.reduced);
        prop_assert_eq!(e.reduced.rref().reduced, e.reduced.clone());
        prop_assert_eq!(e.rank(), a.rank());
        prop_assert!(e.pivots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kernel_has_complementary_dimension(m in 1u32..6, rows in 1usize..6, cols in 1usize..7, seed: u64) {
        let f = field(m);
        let a = sparse_matrix(&f, rows, cols, seed);
        let k = a.right_kernel();
        prop_assert_eq!(k.rows() + a.rank(), cols);
        prop_assert!(a.mul(&k.transpose()).unwrap().is_zero());
        prop_assert_eq!(k.rank(), k.rows());
    }

    #[test]
    fn expansion_commutes_with_base_products(m in 1u32..7, rows in 1usize..4, inner in 1usize..5, cols in 1usize..5, seed: u64) {
        let f = field(m);
        let x = seeded_matrix(&f, rows, inner, seed);
        let y = seeded_matrix(&f.base(), inner, cols, seed ^ 1);
        prop_assert_eq!(
            x.mul(&y).unwrap().ext_expand(),
            x.ext_expand().mul(&y).unwrap()
        );
        prop_assert_eq!(x.ext_expand().rank(), x.rank_q());
    }

    #[test]
    fn frobenius_preserves_base_rank(m in 2u32..7, rows in 1usize..4, cols in 1usize..6, i in 0u32..8, seed: u64) {
        let f = field(m);
        let x = sparse_matrix(&f, rows, cols, seed);
        let y = seeded_matrix(&f, rows, cols, seed ^ 2);
        let fx = x.frobenius(i);
        prop_assert_eq!(fx.rank_q(), x.rank_q());
        prop_assert_eq!(fx.rank(), x.rank());
        prop_assert_eq!(x.add(&y).unwrap().frobenius(i), fx.add(&y.frobenius(i)).unwrap());
        prop_assert_eq!(x.frobenius(m), x);
    }

    #[test]
    fn matrix_text_round_trips(q_idx in 0usize..3, m in 1u32..5, rows in 0usize..4, cols in 0usize..5, seed: u64) {
        let q = [2u32, 3, 5][q_idx];
        let f = ExtField::with_default_modulus(q, m).unwrap();
        let a = seeded_matrix(&f, rows, cols, seed);
        let text = a.to_text();
        let back = Matrix::parse_text(&text, None).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn syndrome_is_linear(ell in 1usize..4, seed: u64) {
        let f = field(5);
        let code = GabidulinCode::with_power_basis(&f, 5, 2).unwrap();
        let h = code.parity_check();
        let x = seeded_matrix(&f, ell, 5, seed);
        let y = seeded_matrix(&f, ell, 5, seed ^ 3);
        let lhs = decoder::syndrome(&h, &x.add(&y).unwrap()).unwrap();
        let rhs = decoder::syndrome(&h, &x).unwrap().add(&decoder::syndrome(&h, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn full_rank_errors_within_guarantee_decode(m in 4u32..8, k in 1usize..3, seed: u64) {
        let f = field(m);
        let n = m as usize;
        let code = GabidulinCode::with_power_basis(&f, n, k).unwrap();
        let d = code.min_distance();
        let mut rng = SplitMix64::new(seed);
        let t = rng.below((d - 1) as u64) as usize;
        let ell = t + rng.below(3) as usize;
        let ell = ell.max(1);
        let c = random_matrix(&mut rng, &f, ell, k).mul(&code.generator()).unwrap();
        let e = sample_error(&mut rng, &f, ell, n, t, ErrorMode::FullRank).unwrap();
        let r = c.add(&e.error).unwrap();
        match decoder::decode(&code.parity_check(), &r, Some(d)).unwrap() {
            DecodeOutcome::Success(dec) => {
                prop_assert_eq!(&dec.codeword, &c);
                prop_assert_eq!(dec.t_hat, t);
                prop_assert_eq!(dec.support, decoder::rank_support(&e.error));
                prop_assert!(!dec.beyond_guarantee);
            }
            DecodeOutcome::Failure { reason, .. } => prop_assert!(false, "failed: {}", reason),
        }
    }

    #[test]
    fn decoder_never_returns_a_non_codeword(ell in 1usize..4, t in 0usize..4, seed: u64) {
        let f = field(5);
        let code = GabidulinCode::with_power_basis(&f, 5, 2).unwrap();
        let mut rng = SplitMix64::new(seed);
        let c = random_matrix(&mut rng, &f, ell, 2).mul(&code.generator()).unwrap();
        let e = sample_error(&mut rng, &f, ell, 5, t.min(ell * 5).min(5), ErrorMode::Uniform).unwrap();
        let r = c.add(&e.error).unwrap();
        if let DecodeOutcome::Success(dec) = decoder::decode(&code.parity_check(), &r, Some(4)).unwrap() {
            prop_assert!(code.to_linear().is_codeword(&dec.codeword).unwrap());
            prop_assert_eq!(dec.error().rank_q(), dec.t_hat);
        }
    }

    #[test]
    fn rank_counts_partition_all_matrices(q_idx in 0usize..3, n in 1usize..7, m in 1usize..7) {
        let q = [2u32, 3, 4][q_idx];
        let total: BigUint = (0..=n.min(m)).map(|t| count_matrices_rank(n, m, t, q).unwrap()).sum();
        prop_assert_eq!(total, BigUint::from(q).pow((n * m) as u32));
    }

    #[test]
    fn product_bound_dominates_simple_bound(ell in 0usize..8, t in 0usize..8, m in 1u32..12, q_idx in 0usize..3) {
        let q = [2u32, 3, 5][q_idx];
        prop_assume!(t <= ell);
        let b = success_lower_bound(t, ell, m, q).unwrap();
        prop_assert!(b.product >= b.simple);
        prop_assert!(b.product_f64() <= 1.0);
        let wider = success_lower_bound(t, ell + 1, m, q).unwrap();
        prop_assert!(wider.product >= b.product);
    }
}
