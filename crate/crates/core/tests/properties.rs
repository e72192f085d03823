use std::sync::Arc;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nprime_core::construct::{self, GroupSpec};
use nprime_core::criteria::{psl2_character_slice, RhoProfile, SliceKind};
use nprime_core::cyclo::{rational_rank, subfield_codegree, CyclotomicNumber};
use nprime_core::graphs::{gk_graph, is_subgraph, nprime_graph, GkMode};
use nprime_core::grpring::GroupRingElement;
use nprime_core::numtheory::{gcd, is_prime};
use nprime_core::{PermGroup, Permutation};

fn cyclo_with_conductor(n: u64) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n as usize).prop_map(move |cs| {
        let coeffs = cs
            .into_iter()
            .map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        CyclotomicNumber::from_exponent_coefficients(n, coeffs)
    })
}

fn cyclo_strategy(max_conductor: u64) -> impl Strategy<Value = CyclotomicNumber> {
    (1..=max_conductor).prop_flat_map(cyclo_with_conductor)
}

/// Three numbers whose conductors all divide a common `n <= max_conductor`.
fn cyclo_triple(
    max_conductor: u64,
) -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    (1..=max_conductor).prop_flat_map(|n| {
        let divisor =
            move || prop::sample::select((1..=n).filter(|d| n % d == 0).collect::<Vec<_>>());
        (divisor(), divisor(), divisor()).prop_flat_map(|(a, b, c)| {
            (
                cyclo_with_conductor(a),
                cyclo_with_conductor(b),
                cyclo_with_conductor(c),
            )
        })
    })
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (2usize..=6)
        .prop_flat_map(|d| {
            prop::collection::vec(perm_strategy(d), 1..=3).prop_map(move |gens| (d, gens))
        })
        .prop_map(|(d, gens)| PermGroup::new(d, gens).unwrap())
}

const SMALL_CORPUS: [&str; 10] = [
    "Sym(4)",
    "Alt(5)",
    "PSL(2,7)",
    "Dihedral(12)",
    "Frob(7,3,1)",
    "Frob(13,2,2)",
    "TwoFrob(2,2,3,2)",
    "Presented(7,3,2)",
    "Cyclic(15)",
    "Sym(5)",
];

fn build(s: &str) -> PermGroup {
    construct::build(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in cyclo_triple(40)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &CyclotomicNumber::one(1), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_rank_matches_float_rank(
        rows in 1usize..=5,
        cols in 1usize..=5,
        rank_cap in 1usize..=5,
        seed in prop::collection::vec(-3i64..=3, 50),
    ) {
        // product of a rows x k and a k x cols integer matrix, so the rank is at most k
        let k = rank_cap.min(rows).min(cols);
        let left: Vec<i64> = seed[..rows * k].to_vec();
        let right: Vec<i64> = seed[25..25 + k * cols].to_vec();
        let m = DMatrix::from_fn(rows, cols, |i, j| {
            (0..k).map(|t| left[i * k + t] * right[t * cols + j]).sum::<i64>() as f64
        });
        let exact: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| (0..cols).map(|j| BigRational::from_integer(BigInt::from(m[(i, j)] as i64))).collect())
            .collect();
        prop_assert_eq!(rational_rank(exact), m.rank(1e-9));
    }

    #[test]
    fn codegree_times_orbit_is_p_minus_one(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23]), cs in prop::collection::vec(-2i64..=2, 23)) {
        let coeffs = cs[..p as usize].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let a = CyclotomicNumber::from_exponent_coefficients(p, coeffs);
        prop_assert_eq!(subfield_codegree(&a).unwrap() * a.galois_orbit_size() as u64, p - 1);
    }

    #[test]
    fn galois_action_is_a_ring_homomorphism((a, b, _) in cyclo_triple(40), r in 1i64..60) {
        let n = a.conductor() * b.conductor() / gcd(a.conductor(), b.conductor());
        prop_assume!(gcd(r.unsigned_abs(), n) == 1);
        let (ga, gb) = (a.galois(r).unwrap(), b.galois(r).unwrap());
        prop_assert_eq!((&a * &b).galois(r).unwrap(), &ga * &gb);
        prop_assert_eq!((&a + &b).galois(r).unwrap(), &ga + &gb);
    }

    #[test]
    fn text_form_round_trips(a in cyclo_strategy(20)) {
        let back: CyclotomicNumber = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn class_equation(g in small_group()) {
        let classes = g.conjugacy_classes().unwrap();
        let total: usize = classes.iter().map(|c| c.size).sum();
        prop_assert_eq!(total as u128, g.order());
        prop_assert!(classes.iter().all(|c| g.order() % c.size as u128 == 0));
        prop_assert!(classes[0].representative.is_identity() && classes[0].size == 1);
    }

    #[test]
    fn gk_modes_agree(g in small_group()) {
        let graphs: Vec<_> = GkMode::ALL.iter().map(|&m| gk_graph(&g, m).unwrap()).collect();
        prop_assert!(graphs.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn arcs_are_arithmetic_or_edges(g in small_group()) {
        let n = nprime_graph(&g).unwrap();
        let gk = gk_graph(&g, GkMode::ByOrders).unwrap();
        for &(q, p) in n.arcs() {
            prop_assert!((p - 1) % q == 0 || gk.has_edge(p, q), "arc {q}->{p}");
        }
    }

    #[test]
    fn subgroup_graphs_are_subgraphs(idx in 0usize..SMALL_CORPUS.len(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=2)) {
        let g = build(SMALL_CORPUS[idx]);
        let els = g.elements().unwrap();
        let gens: Vec<Permutation> = picks.iter().map(|i| els.get(i.index(els.len())).clone()).collect();
        let h = g.subgroup(&gens).unwrap().to_group(&g);
        prop_assert!(is_subgraph(&nprime_graph(&h).unwrap(), &nprime_graph(&g).unwrap()));
    }

    #[test]
    fn json_graphs_round_trip(g in small_group()) {
        let n = nprime_graph(&g).unwrap();
        prop_assert_eq!(nprime_core::graphs::DirectedPrimeGraph::from_json(&n.to_json()).unwrap(), n);
        let u = gk_graph(&g, GkMode::ByOrders).unwrap();
        prop_assert_eq!(nprime_core::graphs::UndirectedPrimeGraph::from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn partial_augmentations_sum_to_augmentation(idx in 0usize..4, seed in any::<u64>()) {
        use rand::SeedableRng;
        let g = Arc::new(build(["Sym(3)", "Sym(4)", "Frob(7,3,1)", "Alt(4)"][idx]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = GroupRingElement::random(g.clone(), &mut rng, 6, 5).unwrap();
        let v = GroupRingElement::random(g, &mut rng, 6, 5).unwrap();
        prop_assert_eq!(u.partial_augmentations().unwrap().iter().sum::<i64>(), u.augmentation());
        prop_assert_eq!(u.mul(&v).unwrap().augmentation(), u.augmentation() * v.augmentation());
        prop_assert!(u.commutator(&v).unwrap().partial_augmentations().unwrap().iter().all(|&e| e == 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// `sigma_r(chi(x)) = chi(x^r)` on every formula slice.
    #[test]
    fn slices_are_galois_equivariant(
        q in prop::sample::select(vec![5u64, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 49]),
        kind in prop::sample::select(vec![SliceKind::Theta1, SliceKind::Chi1, SliceKind::Eta1, SliceKind::PsiExt]),
        p_pick in any::<prop::sample::Index>(),
        r in 1i64..200,
    ) {
        let (rr, f) = nprime_core::numtheory::prime_power(q).unwrap();
        let candidates: Vec<u64> = (3..=q + 1).filter(|&p| is_prime(p)).collect();
        let p = *p_pick.get(&candidates);
        prop_assume!(r % p as i64 != 0);
        let Ok(slice) = psl2_character_slice(rr, f, kind, p) else {
            return Ok(());
        };
        let rho = RhoProfile::from_residues(&slice, r).unwrap();
        for (i, v) in slice.values.iter().enumerate() {
            prop_assert_eq!(&v.galois(r).unwrap(), &slice.values[rho.image[i]]);
        }
    }
}
