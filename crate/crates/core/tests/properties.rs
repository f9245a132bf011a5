use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cosimplex_core::corpus::{random_subcomplex, sset_corpus};
use cosimplex_core::delta::{compose, epi_mono_factor, MonotoneMap};
use cosimplex_core::serial::{sset_from_json, sset_to_json, Document, Payload};
use cosimplex_core::sset::{product, standard_simplex, TruncSSet};

fn monotone(dom: usize, cod: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(0..=cod, dom + 1).prop_map(move |mut img| {
        img.sort_unstable();
        MonotoneMap::new(&img, cod).unwrap()
    })
}

/// Three composable maps `[a] -> [b] -> [c] -> [d]`.
fn chain() -> impl Strategy<Value = (MonotoneMap, MonotoneMap, MonotoneMap)> {
    (0..4usize, 0..4usize, 0..4usize, 0..4usize).prop_flat_map(|(a, b, c, d)| (monotone(a, b), monotone(b, c), monotone(c, d)))
}

fn subcomplex() -> impl Strategy<Value = TruncSSet> {
    (any::<u64>(), 0..3usize).prop_map(|(seed, base)| {
        let base = match base {
            0 => standard_simplex(2, 2),
            1 => standard_simplex(3, 2),
            _ => product(&[&standard_simplex(1, 2), &standard_simplex(1, 2)]).unwrap(),
        };
        random_subcomplex(&base, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

proptest! {
    #[test]
    fn composition_is_associative_and_unital((f, g, h) in chain()) {
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&compose(&MonotoneMap::identity(f.cod()), &f).unwrap(), &f);
        prop_assert_eq!(&compose(&f, &MonotoneMap::identity(f.dom())).unwrap(), &f);
    }

    #[test]
    fn epi_mono_factorization((f, _, _) in chain()) {
        let (e, m) = epi_mono_factor(&f);
        prop_assert!(e.is_epi() && m.is_mono());
        prop_assert_eq!(compose(&m, &e).unwrap(), f);
    }

    #[test]
    fn simplicial_action_is_functorial(x in subcomplex(), (f, g) in (0..3usize, 0..3usize).prop_flat_map(|(a, b)| (monotone(a, b), monotone(b, 2)))) {
        // (g f)^* = f^* g^*
        let gf = compose(&g, &f).unwrap();
        for s in 0..x.count(2) {
            prop_assert_eq!(x.act(x.act(s, &g), &f), x.act(s, &gf));
        }
    }

    #[test]
    fn random_subcomplexes_satisfy_the_identities(x in subcomplex()) {
        prop_assert!(x.validate().is_ok());
    }

    #[test]
    fn json_round_trip(x in subcomplex()) {
        let text = Document::new(Payload::SimplicialSet(sset_to_json(&x))).to_json();
        let Payload::SimplicialSet(j) = Document::parse(&text).unwrap().payload else { panic!("kind") };
        prop_assert_eq!(sset_from_json(&j).unwrap(), x);
    }

    #[test]
    fn seeded_corpus_is_reproducible(seed in any::<u64>()) {
        let a = sset_corpus(2, seed);
        let b = sset_corpus(2, seed);
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.value, &y.value);
        }
    }
}
