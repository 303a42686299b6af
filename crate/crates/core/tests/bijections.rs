use std::collections::{BTreeSet, HashSet};

use multiset_animals::bijections::{
    factorize, grammar_enumerate, phi, phi_inv, psi_forward, psi_inv, Factorization, HeapClass,
};
use multiset_animals::heap_animal::{enumerate_bruteforce, Heap, Lattice};
use multiset_animals::lattice_path::{self, PathFamily, StepWord};
use multiset_animals::multiset::{self, MultisetFamily};

fn words(family: PathFamily, n: usize) -> BTreeSet<StepWord> {
    lattice_path::enumerate(family, n).collect()
}

fn phi_image(family: MultisetFamily, n: usize) -> BTreeSet<StepWord> {
    let image: Vec<StepWord> = multiset::enumerate(family, n, n as u32)
        .map(|m| phi(&m))
        .collect();
    let set: BTreeSet<StepWord> = image.iter().cloned().collect();
    assert_eq!(set.len(), image.len(), "phi is not injective on {family:?}");
    set
}

#[test]
fn phi_transports_families() {
    for n in 1..=9 {
        assert_eq!(
            phi_image(MultisetFamily::All, n),
            words(PathFamily::GrandDyck, n)
        );
        assert_eq!(
            phi_image(MultisetFamily::Superdiagonal, n),
            words(PathFamily::Dyck, n)
        );
        assert_eq!(
            phi_image(MultisetFamily::Star, n),
            words(PathFamily::GrandDyckStar, n)
        );
        assert_eq!(
            phi_image(MultisetFamily::SuperdiagonalStar, n),
            words(PathFamily::DyckStar, n)
        );
        assert_eq!(
            phi_image(MultisetFamily::NoSingleExceptK, n),
            words(PathFamily::GrandDyckUduFree, n)
        );
    }
}

#[test]
fn phi_round_trips_for_rectangular_bounds() {
    for n in 1..=5 {
        for k in 1..=6 {
            for m in multiset::enumerate(MultisetFamily::All, n, k) {
                let p = phi(&m);
                assert_eq!((p.up_count(), p.down_count()), (k as usize, n));
                assert_eq!(phi_inv(&p).unwrap(), m);
            }
        }
    }
}

#[test]
fn psi_inv_is_a_bijection_onto_grammar_heaps() {
    for n in 1..=8 {
        let gd = words(PathFamily::GrandDyck, n);
        let heaps: Vec<Heap> = gd.iter().map(|p| psi_inv(p).unwrap()).collect();
        let image: BTreeSet<Heap> = heaps.iter().cloned().collect();
        assert_eq!(image.len(), gd.len(), "psi_inv not injective at n={n}");
        let grammar: BTreeSet<Heap> = grammar_enumerate(n, HeapClass::T)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(image, grammar, "n={n}");

        let dyck: BTreeSet<Heap> = words(PathFamily::Dyck, n)
            .iter()
            .map(|p| psi_inv(p).unwrap())
            .collect();
        let ts: BTreeSet<Heap> = grammar_enumerate(n, HeapClass::Ts)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(dyck, ts, "n={n}");

        let star: BTreeSet<Heap> = words(PathFamily::GrandDyckStar, n)
            .iter()
            .map(|p| psi_inv(p).unwrap())
            .collect();
        let q: BTreeSet<Heap> = grammar_enumerate(n, HeapClass::Q)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(star, q, "n={n}");

        let dyck_star: BTreeSet<Heap> = words(PathFamily::DyckStar, n)
            .iter()
            .map(|p| psi_inv(p).unwrap())
            .collect();
        let qs: BTreeSet<Heap> = grammar_enumerate(n, HeapClass::Qs)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(dyck_star, qs, "n={n}");

        for (p, h) in gd.iter().zip(&heaps) {
            assert_eq!(&psi_forward(h).unwrap(), p);
        }
    }
}

#[test]
fn grammar_heaps_equal_animal_heaps() {
    for n in 1..=7 {
        for (lattice, class) in [
            (Lattice::Triangular, HeapClass::T),
            (Lattice::Square, HeapClass::Q),
        ] {
            let animals = enumerate_bruteforce(n, lattice, false).unwrap();
            let heaps: HashSet<Heap> = animals.iter().map(|a| a.to_heap()).collect();
            assert_eq!(heaps.len(), animals.len(), "animal_to_heap not injective");
            let grammar: HashSet<Heap> = grammar_enumerate(n, class).unwrap().into_iter().collect();
            assert_eq!(heaps, grammar, "n={n} {lattice:?}");
        }
        for (lattice, class) in [
            (Lattice::Triangular, HeapClass::Ts),
            (Lattice::Square, HeapClass::Qs),
        ] {
            let heaps: HashSet<Heap> = enumerate_bruteforce(n, lattice, true)
                .unwrap()
                .iter()
                .map(|a| a.to_heap())
                .collect();
            let grammar: HashSet<Heap> = grammar_enumerate(n, class).unwrap().into_iter().collect();
            assert_eq!(heaps, grammar, "n={n} {lattice:?} subdiagonal");
        }
    }
}

#[test]
fn factorization_recomposes_and_is_unique() {
    for n in 1..=7 {
        for h in grammar_enumerate(n, HeapClass::T).unwrap() {
            let f = factorize(&h).unwrap();
            assert_eq!(f.compose(), h);
            let matches = alternative_splits(&h);
            assert_eq!(matches, 1, "heap {h} has {matches} valid two-part splits");
        }
    }
}

/// Counts every way of splitting `h` into parts of the two-part cases, by
/// brute force over all subsets of its pieces.
fn alternative_splits(h: &Heap) -> usize {
    let dimers = h.dimers();
    if dimers.len() == 1 {
        return 1;
    }
    let n = dimers.len();
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let (upper, lower): (Vec<_>, Vec<_>) = (0..n).partition(|&i| mask & (1 << i) != 0);
        let pick = |idx: &[usize], shift: i32| -> Option<Heap> {
            if idx.is_empty() {
                return None;
            }
            let mut cols: Vec<_> = idx.iter().map(|&i| dimers[i]).collect();
            cols.sort();
            let mut acc: Option<Heap> = None;
            for d in cols {
                acc = Some(Heap::drop(acc.as_ref(), d.column + shift).ok()?);
            }
            acc
        };
        let candidates: Vec<Factorization> = if h.is_half() {
            let rest: Vec<usize> = lower.iter().copied().filter(|&i| i != 0).collect();
            if !lower.contains(&0) {
                continue;
            }
            let mut out = Vec::new();
            if upper.is_empty() {
                if rest.is_empty() {
                    out.push(Factorization::Single);
                } else {
                    if let Some(b) = pick(&rest, -1) {
                        out.push(Factorization::Raised(b));
                    }
                    if let Some(b) = pick(&rest, 0) {
                        out.push(Factorization::Stacked(b));
                    }
                }
            } else if let (Some(b), Some(c)) = (pick(&rest, -1), pick(&upper, 0)) {
                out.push(Factorization::Split { b, c });
            }
            out
        } else {
            match (pick(&lower, 0), pick(&upper, 1)) {
                (Some(b), Some(c)) => vec![Factorization::Offset { b, c }],
                _ => vec![],
            }
        };
        for f in candidates {
            let parts_ok = match &f {
                Factorization::Single => true,
                Factorization::Raised(b) | Factorization::Stacked(b) => b.is_half(),
                Factorization::Split { b, c } => b.is_half() && c.is_half(),
                Factorization::Offset { b, .. } => b.is_half(),
            };
            if parts_ok && f.compose() == *h {
                seen.insert(format!("{f:?}"));
            }
        }
    }
    seen.len()
}
