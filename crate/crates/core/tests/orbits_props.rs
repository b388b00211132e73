mod common;

use common::*;
use freedense::orbits::*;
use freedense::stallings::{StallingsGraph, SubgroupIndex};
use freedense::words::{cyclic_core, reduced_words_of_length, reduced_words_up_to, ReducedWord};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn cyclically_reduced_up_to(k: usize, n: usize) -> Vec<ReducedWord> {
    reduced_words_up_to(f(k), n).into_iter().filter(|w| !w.is_empty() && w.is_cyclically_reduced()).collect()
}

/// Exponent sum of each generator.
fn abelianize(w: &ReducedWord, k: usize) -> Vec<i64> {
    let mut v = vec![0i64; k];
    for l in w.letters() {
        v[l.generator()] += if l.is_inverse() { -1 } else { 1 };
    }
    v
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitivity in rank 2 by searching for a basis partner: `w` is primitive
/// exactly when some `v` makes `{w, v}` generate the group. A partner of
/// length below `|w|` always exists for cyclically reduced primitive words
/// longer than one letter, so the search is complete.
fn has_basis_partner(w: &ReducedWord) -> bool {
    let v = abelianize(w, 2);
    if gcd(v[0], v[1]) != 1 {
        return false;
    }
    let limit = w.len().saturating_sub(1).max(1);
    reduced_words_up_to(f(2), limit)
        .into_iter()
        .filter(|p| !p.is_empty())
        .any(|p| StallingsGraph::fold_from_generators(&[w.clone(), p], f(2)).unwrap().index() == SubgroupIndex::Finite(1))
}

#[test]
fn whitehead_counts_and_validity() {
    for (k, type_one, type_two) in [(2, 8, 12), (3, 48, 90)] {
        let autos = whitehead_autos(f(k)).unwrap();
        assert_eq!(autos.len(), type_one + type_two);
        assert_eq!(autos[0], WhiteheadAuto::identity(k));
        assert!(autos.iter().all(|a| a.is_automorphism(f(k))), "rank {k}");
        let distinct: std::collections::HashSet<Vec<ReducedWord>> = autos.iter().map(|a| a.images(k)).collect();
        assert_eq!(distinct.len(), autos.len());
    }
    assert!(matches!(whitehead_autos(f(4)), Err(freedense::Error::RankTooLarge(4))));
}

#[test]
fn primitivity_agrees_with_oracles() {
    for w in cyclically_reduced_up_to(2, 6) {
        let by_descent = is_primitive(&w, f(2)).unwrap();
        let by_orbit = orbit_bfs(&w, w.len(), f(2)).unwrap().min_length() == 1;
        assert_eq!(by_descent, by_orbit, "{w}");
        assert_eq!(by_descent, has_basis_partner(&w), "{w}");
    }
}

#[test]
fn primitive_orbit_members_are_primitive() {
    let orbit = orbit_bfs(&rw("a", 2), 6, f(2)).unwrap();
    assert!(orbit.contains(&rw("ab", 2)));
    assert!(!orbit.contains(&rw("aabb", 2)));
    for w in &orbit.elements {
        assert!(is_primitive(w, f(2)).unwrap(), "{w}");
        assert!(w.is_cyclically_reduced());
    }
    // every primitive cyclic word of length up to 6 is reached
    let primitive = cyclically_reduced_up_to(2, 6).into_iter().filter(has_basis_partner).count();
    assert_eq!(orbit.len(), primitive);
}

#[test]
fn orbits_are_closed_under_whitehead_moves() {
    for (k, g, bound) in [(2, "a", 9), (2, "aabb", 8), (2, "abAB", 8), (3, "a", 5), (3, "abc", 5)] {
        let orbit = orbit_bfs(&rw(g, k), bound, f(k)).unwrap();
        let autos = whitehead_autos(f(k)).unwrap();
        for w in &orbit.elements {
            for a in &autos {
                let image = cyclic_core(&a.apply(w));
                assert!(image.len() > bound || orbit.contains(&image), "{g}: {a} sends {w} to {image}");
            }
        }
        let counts = orbit.counts_by_length();
        assert_eq!(counts.as_slice().iter().map(|c| c.to_usize().unwrap()).sum::<usize>(), orbit.len());
    }
    // the commutator's orbit is its conjugacy class up to inversion and relabelling
    let orbit = orbit_bfs(&rw("abAB", 2), 6, f(2)).unwrap();
    assert_eq!(orbit.min_length(), 4);
    assert!(orbit.elements.iter().all(|w| w.len() == 4));
}

#[test]
fn bound_must_cover_the_core() {
    let err = orbit_bfs(&rw("aabb", 2), 3, f(2)).unwrap_err();
    assert!(matches!(err, freedense::Error::BoundTooSmall { bound: 3, length: 4 }));
    // the core is what counts: b·aabb·B has core aabb
    assert!(orbit_bfs(&rw("baabbB", 2), 4, f(2)).unwrap().contains(&rw("aabb", 2)));
}

fn auto_strategy(k: usize) -> impl Strategy<Value = Vec<usize>> {
    let count = whitehead_autos(f(k)).unwrap().len();
    prop::collection::vec(0..count, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Automorphisms are homomorphisms on reduced words.
    #[test]
    fn apply_is_multiplicative(u in reduced_strategy(3, 8), v in reduced_strategy(3, 8), i in 0..138usize) {
        let autos = whitehead_autos(f(3)).unwrap();
        let a = &autos[i];
        prop_assert_eq!(a.apply(&u.mul(&v)), a.apply(&u).mul(&a.apply(&v)));
        prop_assert_eq!(a.apply(&u.inverse()), a.apply(&u).inverse());
    }

    /// Random products of Whitehead moves keep orbit members inside the
    /// bounded orbit or push them beyond the bound.
    #[test]
    fn random_automorphisms_respect_the_orbit(chain in auto_strategy(2), start in 0..4usize) {
        let autos = whitehead_autos(f(2)).unwrap();
        let bound = 8;
        let orbit = orbit_bfs(&rw(["a", "aabb", "abAB", "aab"][start], 2), bound, f(2)).unwrap();
        for w in orbit.elements.iter().take(40) {
            let image = chain.iter().fold(w.clone(), |x, &i| autos[i].apply(&x));
            let core = cyclic_core(&image);
            prop_assert!(core.len() > bound || orbit.contains(&core), "{} -> {}", w, core);
            prop_assert_eq!(is_primitive(&core, f(2)).unwrap(), is_primitive(w, f(2)).unwrap());
        }
    }
}

#[test]
fn blocking_word_for_primitives() {
    for bound in 1..=12 {
        assert!(check_blocking(&rw("aabb", 2), &rw("a", 2), bound, f(2)).unwrap(), "bound {bound}");
    }
    // "ab" does occur in primitive words
    assert!(!check_blocking(&rw("ab", 2), &rw("a", 2), 4, f(2)).unwrap());
    // direct scan of every primitive cyclic word up to length 7
    for w in cyclically_reduced_up_to(2, 7) {
        if is_primitive(&w, f(2)).unwrap() {
            assert!(!w.contains_cyclic_factor(rw("aabb", 2).letters()), "{w}");
        }
    }
}

#[test]
fn profile_counts_conjugates_of_orbit_members() {
    let g = rw("a", 2);
    let profile = orbit_density_profile(&g, 8, f(2)).unwrap();
    let orbit = orbit_bfs(&g, 8, f(2)).unwrap();
    let mut inside = 0usize;
    let mut total = 0usize;
    for (n, ratio) in profile.iter().enumerate() {
        let sphere = reduced_words_of_length(f(2), n);
        total += sphere.len();
        inside += sphere.iter().filter(|w| orbit.contains(&cyclic_core(w))).count();
        assert_eq!(ratio, &num_rational::BigRational::new(inside.into(), total.into()), "n = {n}");
    }
}

#[test]
fn profiles_decrease() {
    for g in ["a", "aab"] {
        let profile = orbit_density_profile(&rw(g, 2), 12, f(2)).unwrap();
        for n in 3..12 {
            assert!(profile[n + 1] < profile[n], "{g} at {n}");
        }
    }
    // orbit members of these have even length, so the ratio only drops
    // across odd radii
    for g in ["aabb", "abAB"] {
        let profile = orbit_density_profile(&rw(g, 2), 12, f(2)).unwrap();
        for n in (4..=10).step_by(2) {
            assert!(profile[n + 2] < profile[n], "{g} at {n}");
            assert!(profile[n + 1] < profile[n], "{g} at {n}");
        }
    }
    let aabb = orbit_density_profile(&rw("aabb", 2), 12, f(2)).unwrap();
    assert!(freedense::density::to_f64(&aabb[12]) < 1e-2);
    let a = orbit_density_profile(&rw("a", 2), 10, f(2)).unwrap();
    assert!(a[10] < a[6]);
}
