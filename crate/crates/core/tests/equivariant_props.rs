mod common;

use equichain::equivariant::{quotient_comparison, verify_smith_exactness, Decomposer, FiltrationData};
use equichain::gf2::{Gf2Vector, Subspace};
use equichain::Error;
use proptest::prelude::*;
use rand::Rng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_ranks_match_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, act) = random_z2_complex(&mut r);
        let fd = random_filtration(&mut r, &act);
        for alpha in -(fd.len() as i32)..=0 {
            let rep = verify_smith_exactness(&fd, alpha).unwrap();
            for d in &rep.degrees {
                prop_assert_eq!(d.is_exact(), smith_exact_by_rank(&fd, d.k, alpha));
                prop_assume!(x.count(d.k) <= 14);
                let e = enumerate_smith(&fd, d.k, alpha);
                prop_assert_eq!(d.fixed_dim, e.fixed);
                prop_assert_eq!(d.transfer_dim, e.transfer);
                prop_assert_eq!(d.kernel_dim, e.kernel);
                prop_assert_eq!(d.image_dim, e.image);
                prop_assert_eq!(d.left_injective, e.injective);
                prop_assert_eq!(d.right_surjective, e.surjective);
                // Transfers vanish on fixed cells and the target is the image.
                prop_assert!(d.left_injective && d.right_surjective);
            }
        }
    }

    #[test]
    fn exactness_makes_every_invariant_chain_decomposable(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, act) = random_z2_complex(&mut r);
        let fd = random_filtration(&mut r, &act);
        let fixed = act.fixed_subcomplex();
        for alpha in -(fd.len() as i32)..=0 {
            let rep = verify_smith_exactness(&fd, alpha).unwrap();
            for d in &rep.degrees {
                let dec = Decomposer::new(&fd, d.k, alpha).unwrap();
                let inv = fd.invariant_subspace(d.k, alpha);
                prop_assume!(inv.dim() <= 10);
                for c in inv.elements() {
                    match dec.decompose(&c) {
                        Ok(h) => {
                            prop_assert!(fd.level(d.k, alpha + 1).contains(&h));
                            let mut back = act.act_vector(1, d.k, &h);
                            back.xor_assign(&h);
                            back.xor_assign(&c.and(&fixed.layer(d.k)));
                            prop_assert_eq!(back, c);
                        }
                        Err(Error::Exactness { witness, .. }) => {
                            prop_assert!(!d.exact_middle, "exact at k={} α={} but {:?} failed", d.k, alpha, c);
                            prop_assert!(!witness.is_empty());
                        }
                        Err(e) => prop_assert!(false, "{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn invariant_subspaces_match_ranks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, act) = random_z2_complex(&mut r);
        let fd = random_filtration(&mut r, &act);
        for k in 0..fd.len() {
            for alpha in -(k as i32) - 1..=0 {
                let level = fd.level(k, alpha);
                let rows: Vec<Vec<bool>> = level.basis().iter().map(|b| {
                    let v = b.to_bools();
                    xor(&v, &sigma_bits(&act, k, &v))
                }).collect();
                prop_assert_eq!(fd.invariant_subspace(k, alpha).dim(), level.dim() - rank(&rows));
            }
        }
    }

    #[test]
    fn corrupted_levels_are_rejected_exactly_when_invalid(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, act) = random_z2_complex(&mut r);
        let fd = random_filtration(&mut r, &act);
        let mut levels = fd.levels().to_vec();
        let k = r.gen_range(0..levels.len());
        prop_assume!(k > 0);
        let i = r.gen_range(1..=k);
        let cell = r.gen_range(0..x.count(k));
        let mut gens = levels[k][i].basis().to_vec();
        gens.push(Gf2Vector::unit(x.count(k), cell));
        levels[k][i] = Subspace::span(x.count(k), &gens);
        // Independent check of the axioms on the corrupted data.
        let mut valid = true;
        for (d, per) in levels.iter().enumerate() {
            for j in 1..per.len() {
                valid &= per[j - 1].is_subspace_of(&per[j]);
                valid &= per[j].basis().iter().all(|b| per[j].contains(&act.act_vector(1, d, b)));
                if d > 0 && j < per.len() - 1 {
                    let below = &levels[d - 1][j - 1];
                    valid &= per[j].basis().iter().all(|b| below.contains(&x.boundary_matrix(d).mul_vec(b)));
                }
            }
        }
        match FiltrationData::new(act.clone(), levels) {
            Ok(_) => prop_assert!(valid),
            Err(Error::Validation { .. }) => prop_assert!(!valid),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn transfers_and_quotient_levels_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, act) = random_free_z2_complex(&mut r);
        let fd = random_filtration(&mut r, &act);
        let cmp = quotient_comparison(&fd, None).unwrap();
        for row in &cmp.rows {
            prop_assert_eq!(row.transfer_dim, row.quotient_dim);
            prop_assert!(row.transfer_dim <= row.invariant_dim);
            prop_assert!(row.image_matches);
        }
    }
}
