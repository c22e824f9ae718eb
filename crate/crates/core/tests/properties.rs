use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use grm_core::ar::euler_form;
use grm_core::kronecker::{decompose, ext_dim, hom_dim, is_indecomposable, is_isomorphic, tau_module};
use grm_core::linalg::{gaussian_binomial, Subspace, SubspaceIter};
use grm_core::verify::random_module;
use grm_core::{gr_measure, Caps, Error, Fq, FqMatrix, GrMeasure, KroneckerModule};

fn measure() -> impl Strategy<Value = GrMeasure> {
    proptest::collection::btree_set(1u32..=12, 0..7)
        .prop_map(|s| GrMeasure::from_elements(s.into_iter().collect()).unwrap())
}

fn field() -> impl Strategy<Value = Fq> {
    prop_oneof![Just(2u32), Just(3), Just(5)].prop_map(|q| Fq::new(q).unwrap())
}

fn matrix(max: usize) -> impl Strategy<Value = FqMatrix> {
    (field(), 1..=max, 1..=max).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(0..f.q() as u8, r * c).prop_map(move |d| FqMatrix::new(f, r, c, d).unwrap())
    })
}

fn subspace_triple() -> impl Strategy<Value = [Subspace; 3]> {
    (field(), 1..=5usize).prop_flat_map(|(f, cols)| {
        let one = move || {
            (1..=cols).prop_flat_map(move |rows| {
                proptest::collection::vec(0..f.q() as u8, rows * cols)
                    .prop_map(move |d| Subspace::from_rows(&FqMatrix::new(f, rows, cols, d).unwrap()))
            })
        };
        [one(), one(), one()]
    })
}

/// Random module over F_2 or F_3 with total length in `1..=max_len`.
fn module(max_len: usize) -> impl Strategy<Value = KroneckerModule> {
    (prop_oneof![Just(2u32), Just(3)], 2..=4usize, 0..=max_len, 0..=max_len, any::<u64>())
        .prop_filter("nonzero, bounded length", move |&(_, _, a, b, _)| a + b >= 1 && a + b <= max_len)
        .prop_map(|(q, n, d1, d2, seed)| {
            random_module(&mut ChaCha8Rng::seed_from_u64(seed), Fq::new(q).unwrap(), n, d1, d2)
        })
}

fn pair(max_len: usize) -> impl Strategy<Value = (KroneckerModule, KroneckerModule)> {
    (module(max_len), any::<u64>()).prop_map(move |(x, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d1, d2) = (seed as usize % (max_len + 1), (seed as usize / 7) % (max_len + 1));
        (x.clone(), random_module(&mut rng, x.field(), x.n(), d1, d2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_total_and_transitive(i in measure(), j in measure(), k in measure()) {
        let rels = [i < j, i == j, i > j];
        prop_assert_eq!(rels.iter().filter(|&&b| b).count(), 1);
        if i <= j && j <= k {
            prop_assert!(i <= k);
        }
    }

    #[test]
    fn proper_prefix_is_smaller(i in measure(), extra in 1u32..5) {
        let top = i.max_element().unwrap_or(0);
        let longer = i.extend(top + extra).unwrap();
        prop_assert!(i < longer);
        prop_assert!(longer.starts_with(&i));
        prop_assert_eq!(longer.truncated(), i.clone());
        prop_assert!(i.extend(top).is_err() || i.is_empty());
    }

    #[test]
    fn brace_text_round_trips(i in measure()) {
        let text = i.to_string();
        prop_assert_eq!(text.parse::<GrMeasure>().unwrap(), i);
    }

    #[test]
    fn rref_idempotent_and_rank_nullity(m in matrix(6)) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(r.rref().0, r.clone());
        prop_assert_eq!(pivots.len(), m.rank());
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.rows(), m.cols());
        for row in kernel.to_rows() {
            prop_assert!(m.mul_vec(&row).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn subspace_dimension_formula_and_modular_law([a, b, c] in subspace_triple()) {
        let (s, i) = (a.sum(&b).unwrap(), a.intersection(&b).unwrap());
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        // with b' = a ∩ b ⊆ a: a ∩ (b' + c) = b' + (a ∩ c)
        let lhs = a.intersection(&i.sum(&c).unwrap()).unwrap();
        let rhs = i.sum(&a.intersection(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity((x, y) in pair(4)) {
        let lhs = hom_dim(&x, &y).unwrap() as i64 - ext_dim(&x, &y).unwrap() as i64;
        prop_assert_eq!(lhs, euler_form(x.dim(), y.dim(), x.n() as i64));
    }

    #[test]
    fn ar_duality((x, y) in pair(3)) {
        let caps = Caps::default();
        prop_assume!(is_indecomposable(&x, &caps).unwrap());
        match tau_module(&x, &caps) {
            Ok(tx) => prop_assert_eq!(ext_dim(&x, &y).unwrap(), hom_dim(&y, &tx).unwrap()),
            Err(Error::Projective) => prop_assert_eq!(ext_dim(&x, &y).unwrap(), 0),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn module_json_round_trips(x in module(5)) {
        prop_assert_eq!(KroneckerModule::from_json(&x.to_json()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measure_is_monotone_on_submodules(x in module(5)) {
        let caps = Caps::default();
        let whole = gr_measure(&x, &caps).unwrap();
        for s in x.enumerate_submodules(caps.submodule_length).unwrap() {
            prop_assert!(s.is_closed_in(&x));
            let sub = gr_measure(&x.restrict(&s).unwrap(), &caps).unwrap();
            prop_assert!(sub <= whole, "{} ⊂ module but {} > {}", s.dim(), sub, whole);
        }
    }

    #[test]
    fn submodules_closed_under_sum_and_meet(x in module(4)) {
        let subs = x.enumerate_submodules(8).unwrap();
        for a in subs.iter().step_by(3) {
            for b in subs.iter().step_by(5) {
                prop_assert!(subs.contains(&a.sum(b).unwrap()));
                prop_assert!(subs.contains(&a.intersection(b).unwrap()));
            }
        }
    }

    #[test]
    fn measure_ignores_zero_arrows_and_basis(x in module(5), extra in 1usize..3, seed in any::<u64>()) {
        let caps = Caps::default();
        let mu = gr_measure(&x, &caps).unwrap();
        prop_assert_eq!(gr_measure(&x.pad_arrows(extra), &caps).unwrap(), mu.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = |d: usize, rng: &mut ChaCha8Rng| loop {
            let m = random_module(rng, x.field(), 1, d, d).maps()[0].clone();
            if m.is_invertible() { break m; }
        };
        let (g1, g2) = (g(x.d1(), &mut rng), g(x.d2(), &mut rng));
        prop_assert_eq!(gr_measure(&x.change_basis(&g1, &g2).unwrap(), &caps).unwrap(), mu);
    }

    #[test]
    fn decomposition_reassembles((x, y) in pair(3)) {
        prop_assume!(x.len() + y.len() <= 6 && !y.is_zero());
        let caps = Caps::default();
        let sum = x.direct_sum(&y).unwrap();
        let parts = decompose(&sum, &caps).unwrap();
        let mut total = parts[0].clone();
        for p in &parts[1..] {
            total = total.direct_sum(p).unwrap();
        }
        prop_assert!(is_isomorphic(&total, &sum, &caps).unwrap());
        for p in &parts {
            prop_assert!(is_indecomposable(p, &caps).unwrap());
        }
    }
}

#[test]
fn gaussian_binomials_count_subspaces() {
    for q in [2u32, 3] {
        let f = Fq::new(q).unwrap();
        for d in 0..=4 {
            for k in 0..=d {
                let n = SubspaceIter::with_dims(f, d, k, k, 1 << 20).unwrap().count() as u64;
                assert_eq!(n, gaussian_binomial(d, k, q as u64), "q={q} d={d} k={k}");
            }
        }
    }
    assert_eq!(gaussian_binomial(4, 2, 2), 35);
}
