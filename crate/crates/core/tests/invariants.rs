use std::collections::HashSet;

use proptest::prelude::*;
use ringlab_core::drnc::{drnc_witness_brute, ring_is_drnc, Side};
use ringlab_core::element::{normalize_reflexive, regular_witness, strongly_pi_regular_witness};
use ringlab_core::endo::{image_basis, kernel_basis, vs_idempotent, ModMatrix, Subspace};
use ringlab_core::ring::{realize_str, Ring};

const SMALL: [&str; 8] = ["Z2", "Z6", "Z9", "M(2,Z2)", "prod(Z2,Z4)", "quot(Z12,4)", "corner(M(2,Z2),[1,0;0,0])", "center(M(2,Z4))"];
const LARGE: [&str; 5] = ["M(2,Z4)", "M(3,Z2)", "prod(Z3,M(2,Z3))", "M(2,Z5)", "prod(M(1,Z2),M(2,Z2),M(3,Z2))"];

fn axioms_hold(ring: &Ring, a: u32, b: u32, c: u32) -> bool {
    let (a, b, c) = (ring.element(a), ring.element(b), ring.element(c));
    let one = ring.one();
    ring.add(a, ring.neg(a)) == ring.zero()
        && ring.mul(one, a) == a
        && ring.mul(a, one) == a
        && ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        && ring.mul(ring.add(b, c), a) == ring.add(ring.mul(b, a), ring.mul(c, a))
        && ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        && ring.add(a, b) == ring.add(b, a)
}

#[test]
fn axioms_exhaustive_on_small_rings() {
    for spec in SMALL {
        let ring = realize_str(spec).unwrap();
        assert!(ring.size() <= 64, "{spec}");
        assert_ne!(ring.zero(), ring.one());
        let n = ring.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert!(axioms_hold(&ring, a, b, c), "{spec}: {a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn enumeration_is_distinct_and_complete() {
    for spec in SMALL.iter().chain(&LARGE) {
        let ring = realize_str(spec).unwrap();
        let shown: HashSet<String> = ring.elements().map(|x| ring.format(x)).collect();
        assert_eq!(shown.len(), ring.size() as usize, "{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn axioms_on_random_triples(which in 0..LARGE.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ring = realize_str(LARGE[which]).unwrap();
        let n = ring.size();
        prop_assert!(axioms_hold(&ring, a % n, b % n, c % n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflexive_normalization_is_idempotent(which in 0..SMALL.len(), a in any::<u32>()) {
        let ring = realize_str(SMALL[which]).unwrap();
        let a = ring.element(a % ring.size());
        if let Some(w) = regular_witness(&ring, a).unwrap() {
            prop_assert!(w.reflexive);
            let again = normalize_reflexive(&ring, a, w.b).unwrap();
            prop_assert_eq!(again.b, w.b);
        }
    }

    #[test]
    fn strong_pi_gives_two_sided_membership(which in 0..LARGE.len(), a in any::<u32>()) {
        let ring = realize_str(LARGE[which]).unwrap();
        let a = ring.element(a % ring.size());
        let w = strongly_pi_regular_witness(&ring, a).unwrap().unwrap();
        let an = ring.pow(a, w.n);
        let an1 = ring.mul(an, a);
        prop_assert_eq!(ring.mul(an1, w.left), an);
        prop_assert_eq!(ring.mul(w.right, an1), an);
    }

    #[test]
    fn drnc_witnesses_satisfy_the_shifted_bound(which in 0..SMALL.len(), a in any::<u32>()) {
        let ring = realize_str(SMALL[which]).unwrap();
        let a = ring.element(a % ring.size());
        let w = drnc_witness_brute(&ring, a, false).unwrap().unwrap();
        prop_assert!(w.verify(&ring));
        let one_minus_e = ring.sub(ring.one(), w.e);
        prop_assert_eq!(ring.pow(ring.mul(one_minus_e, a), w.k + 1), ring.zero());
        prop_assert!(w.to_rnc(&ring, Side::Left).verify(&ring));
        prop_assert!(w.to_rnc(&ring, Side::Right).verify(&ring));
    }

    #[test]
    fn vs_invariants_on_random_matrices(n in 1usize..6, p in prop::sample::select(vec![2u64, 3, 5, 7]), seed in prop::collection::vec(any::<u64>(), 36)) {
        let entries: Vec<u64> = seed[..n * n].iter().map(|v| v % p).collect();
        let a = ModMatrix::from_entries(n, p, &entries).unwrap();
        let d = vs_idempotent(&a, p).unwrap();
        prop_assert_eq!(d.v1.dim() + d.v2.dim() + d.v3.dim() + d.v4.dim(), n);
        prop_assert_eq!(d.e.mul(&d.e), d.e.clone());
        let zero = vec![0u64; n];
        for v in d.v2.basis() {
            prop_assert_eq!(&d.e.apply(v), v);
        }
        for s in [&d.v1, &d.v3, &d.v4] {
            for v in s.basis() {
                prop_assert_eq!(&d.e.apply(v), &zero);
            }
        }
        // image of a(1-e) lies inside its kernel
        let q = d.defect();
        let im = image_basis(&q, p).unwrap();
        let ker = kernel_basis(&q, p).unwrap();
        prop_assert!(im.is_subspace_of(&ker));
    }

    #[test]
    fn subspace_canonical_form_is_basis_independent(n in 1usize..5, seed in prop::collection::vec(0u64..3, 20), mix in prop::collection::vec(0u64..3, 16)) {
        let vs: Vec<Vec<u64>> = seed.chunks(n).take(4).filter(|c| c.len() == n).map(<[u64]>::to_vec).collect();
        let u = Subspace::span(vs.clone(), n, 3);
        // random combinations of the spanning set together with the originals
        let mut mixed: Vec<Vec<u64>> = (0..vs.len())
            .map(|i| (0..n).map(|j| vs.iter().enumerate().map(|(k, v)| mix[(i * 4 + k) % 16] * v[j]).sum::<u64>() % 3).collect())
            .collect();
        mixed.extend(vs.iter().rev().cloned());
        prop_assert_eq!(Subspace::span(mixed, n, 3), u);
    }
}

#[test]
fn whole_ring_search_is_deterministic() {
    let ring = realize_str("M(2,Z4)").unwrap();
    let a = ring_is_drnc(&ring).unwrap();
    let b = ring_is_drnc(&ring).unwrap();
    assert_eq!(a.witnesses, b.witnesses);
    let sequential: Vec<_> = ring
        .elements()
        .map(|x| drnc_witness_brute(&ring, x, true).unwrap().unwrap())
        .collect();
    assert_eq!(a.witnesses, sequential);
}
