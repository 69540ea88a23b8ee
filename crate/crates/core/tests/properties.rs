mod common;

use fqav_core::group::analytic_spectrum;
use fqav_core::{
    age, classification_report, close_group, decompose, decompose_action, descend_multiplication,
    intersect_lattices, normalize_translations, reid_tai, saturate, snf, solve_affine_mod_lattice,
    CycloField, IntMatrix, Lattice, Snf, TorsionPoint, DEFAULT_GROUP_CAP,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

fn rat_vec(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_identities(m in matrix_strategy(5, 9)) {
        let Snf { s, u, v } = snf(&m);
        prop_assert_eq!(&(&u * &m) * &v, s.clone());
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        let k = s.rows().min(s.cols());
        for i in 1..k {
            let (a, b) = (&s[(i - 1, i - 1)], &s[(i, i)]);
            let divides = if a.is_zero() { b.is_zero() } else { (b % a).is_zero() };
            prop_assert!(divides);
        }
        prop_assert_eq!(snf(&m).elementary_divisors(), snf(&m.transpose()).elementary_divisors());
    }

    #[test]
    fn hermite_form_is_a_lattice_invariant(m in matrix_strategy(4, 6), w in matrix_strategy(4, 6)) {
        let u = snf(&IntMatrix::from_fn(m.rows(), m.rows(), |i, j| {
            if i < w.rows() && j < w.cols() { w[(i, j)].clone() } else { BigInt::from(i64::from(i == j)) }
        })).u;
        prop_assert_eq!(Lattice::from_matrix(&m), Lattice::from_matrix(&(&u * &m)));
    }

    #[test]
    fn saturation(m in matrix_strategy(5, 9)) {
        let l = Lattice::from_matrix(&m);
        let s = saturate(&l);
        prop_assert!(s.is_saturated());
        prop_assert_eq!(saturate(&s), s.clone());
        prop_assert_eq!(s.rank(), l.rank());
        for r in l.basis().row_vectors() {
            prop_assert!(s.contains(r));
        }
    }

    #[test]
    fn intersection_lies_in_both(a in matrix_strategy(4, 5), b in matrix_strategy(4, 5)) {
        prop_assume!(a.cols() == b.cols());
        let (la, lb) = (Lattice::from_matrix(&a), Lattice::from_matrix(&b));
        let i = intersect_lattices(&la, &lb);
        prop_assert_eq!(&i, &intersect_lattices(&lb, &la));
        prop_assert!(i.is_saturated());
        for r in i.basis().row_vectors() {
            prop_assert!(la.spans(&rat_vec(r)) && lb.spans(&rat_vec(r)));
        }
        prop_assert!(i.rank() + la.sum(&lb).rank() >= la.rank() + lb.rank());
    }

    #[test]
    fn affine_solutions_solve(m in matrix_strategy(4, 4), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_translation(&mut rng, m.rows());
        let sol = solve_affine_mod_lattice(&m, &a);
        for r in &sol.representatives {
            prop_assert_eq!(r.apply(&m), a.clone());
            for v in sol.kernel.basis().row_vectors() {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
        if sol.nonempty {
            prop_assert_eq!(BigInt::from(sol.representatives.len()), sol.component_count);
        }
    }

    #[test]
    fn cyclotomic_field_axioms(x in proptest::collection::vec(-5i64..=5, 4),
                               y in proptest::collection::vec(-5i64..=5, 4)) {
        let f = CycloField::new(12).unwrap();
        let elt = |c: &[i64]| {
            c.iter().enumerate().fold(f.zero(), |acc, (i, &k)| {
                &acc + &f.zeta_pow(i as i64).scale(&BigRational::from_integer(k.into()))
            })
        };
        let (a, b) = (elt(&x), elt(&y));
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        if !b.is_zero() {
            let q = &(&a * &b) * &b.inverse().unwrap();
            prop_assert_eq!(q, a.clone());
        }
        prop_assert!(f.zeta_pow(12).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fixed_points_match_brute_force(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_variety(&mut rng, 2);
        let g = common::random_automorphism(&mut rng, &a);
        if let Some(r) = common::check_fixed_points_by_brute_force(g.map(), 1 << 16) {
            prop_assert!(r.is_ok(), "{}", r.unwrap_err());
        }
    }

    #[test]
    fn cyclic_closure_has_the_order_of_its_generator(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let a = common::random_variety(&mut rng, 3);
        let g = common::random_automorphism(&mut rng, &a);
        let grp = close_group(&a, std::slice::from_ref(&g), DEFAULT_GROUP_CAP).unwrap();
        prop_assert_eq!(Some(grp.order()), common::affine_order(g.map(), DEFAULT_GROUP_CAP));
    }

    #[test]
    fn composition_is_associative_and_closed(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 3, 48);
        let lg = g.lattice_group();
        let els = lg.elements();
        for _ in 0..8 {
            let pick = |r: &mut rand_chacha::ChaCha8Rng| {
                use rand::Rng;
                els[r.random_range(0..els.len())].clone()
            };
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
            prop_assert!(lg.contains(&x.compose(&y)));
            prop_assert!(lg.contains(&x.inverse().unwrap()));
        }
    }

    #[test]
    fn conjugate_fixed_loci(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 3, 24);
        let els = g.lattice_group().elements();
        let x = &els[rng.random_range(0..els.len())];
        let h = &els[rng.random_range(0..els.len())];
        let lhs = x.conjugate_by(h).fixed_locus();
        let fix = x.fixed_locus();
        let mut rhs: Vec<_> = fix.components.iter().map(|c| h.image(c)).collect();
        rhs.sort();
        prop_assert_eq!(lhs.empty, fix.empty);
        prop_assert_eq!(lhs.components, rhs);
    }

    #[test]
    fn ages_of_inverse_pairs(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 3, 24);
        let f = CycloField::new(g.natural_conductor()).unwrap();
        for (i, x) in g.elements().iter().enumerate() {
            let spec = analytic_spectrum(x, g.variety(), &f).unwrap();
            let ones: usize = spec.iter().filter(|t| t.1 == 1).map(|t| t.2).sum();
            let total = age(x, g.variety(), &f).unwrap() + age(g.inverse_of(i), g.variety(), &f).unwrap();
            prop_assert_eq!(total, BigRational::from_integer(BigInt::from(g.dim() - ones)));
            prop_assert_eq!(spec.iter().map(|t| t.2).sum::<usize>(), g.dim());
            let ord = x.holonomy_order();
            prop_assert!(spec.iter().all(|t| ord % t.1 == 0));
        }
    }

    #[test]
    fn normalization_and_descent(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 3, 24);
        let (p, h) = normalize_translations(&g);
        for (x, y) in g.elements().iter().zip(h.elements()) {
            prop_assert_eq!(y.translation(), &x.map().apply(&p).sub(&p));
        }
        prop_assert!(h.lattice_group().is_closed());
        let f = CycloField::new(g.natural_conductor()).unwrap();
        prop_assert_eq!(reid_tai(&g, &f).unwrap().0, reid_tai(&h, &f).unwrap().0);
        let m = descend_multiplication(&g).unwrap();
        prop_assert!(m > BigInt::one());
        for x in g.elements() {
            prop_assert!(x.translation().scale(&(&m - BigInt::one())).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_invariants(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 3, 32);
        let n = g.dim();
        let r = classification_report(&g, None).unwrap();
        prop_assert!(r.q_circle <= n);
        prop_assert_eq!(r.q_abelian, r.q_circle == n);
        prop_assert_eq!(r.q_fano, r.kappa_anticanonical == n);
        prop_assert_eq!(r.q_fano, r.q_circle == 0);
        prop_assert!(r.q_x <= r.q_circle);
        prop_assert!(r.kappa_anticanonical + r.q_circle >= n);

        let (_, h) = normalize_translations(&g);
        let rh = classification_report(&h, None).unwrap();
        prop_assert_eq!(rh.reid_tai_holds, r.reid_tai_holds);
        prop_assert_eq!(rh.q_circle, r.q_circle);
    }

    #[test]
    fn decomposition_invariants(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let g = common::random_group(&mut rng, 3, 32);
        let d = decompose(&g).unwrap();
        prop_assert!(d.stages.len() <= g.dim());
        prop_assert_eq!(d.total_abelian_dim, d.abelian_factors.iter().map(|l| l.complex_dim()).sum::<usize>());
        prop_assert!(d.stages.iter().map(|s| s.abelian_dim).sum::<usize>() <= d.total_abelian_dim);
        prop_assert!(d.fano_kappa_check);
        for s in &d.stages {
            prop_assert!(s.quasietale_outside_check);
            prop_assert_eq!(BigInt::from(s.n_tilde_order), BigInt::from(s.n_order) * &s.ker_mu_order);
        }
        let full = d.abelian_factors.iter().fold(d.fano_part.lattice.clone(), |acc, b| acc.sum(b));
        prop_assert!(full.is_full());
        let again = decompose_action(&d.fano_part).unwrap();
        prop_assert!(again.abelian_factors.is_empty());
        prop_assert_eq!(again.fano_part, d.fano_part);
    }
}

#[test]
fn identity_group_is_its_own_abelian_factor() {
    let a = fqav_core::AbelianVarietyModel::new(vec![fqav_core::EllipticFactor::Zeta6; 2]).unwrap();
    let g = close_group(&a, &[], 1).unwrap();
    let d = decompose(&g).unwrap();
    assert_eq!(d.abelian_factors, vec![Lattice::full(4)]);
    assert_eq!(normalize_translations(&g).0, TorsionPoint::zero(4));
}
