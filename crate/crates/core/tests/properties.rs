mod common;

use std::sync::OnceLock;

use biquandle::hom::equivalent;
use biquandle::{
    baut, bhomcount, biqfill, biqlist, bisolist, breducelist, enumerate, Biquandle, BlockMatrix,
    Equivalence, Fill, Pattern, Presentation, PresentationVector,
};
use common::*;
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn census3() -> &'static [Biquandle] {
    static C: OnceLock<Vec<Biquandle>> = OnceLock::new();
    C.get_or_init(|| enumerate(3))
}

fn any_census3() -> impl Strategy<Value = Biquandle> {
    select(census3().to_vec())
}

fn any_matrix(max_order: usize) -> impl Strategy<Value = BlockMatrix> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(1..=n as u8, 4 * n * n).prop_map(move |cells| {
            let rows: Vec<Vec<u8>> = cells.chunks(2 * n).map(|r| r.to_vec()).collect();
            BlockMatrix::from_rows(&rows).unwrap()
        })
    })
}

fn any_perm(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle()
}

fn fixture_knots() -> Vec<Presentation> {
    vec![knot("unknot.pv"), knot("vt.pv"), knot("kishino.pv")]
}

fn fixture_targets() -> Vec<Biquandle> {
    ["t.biq", "t2.biq", "t4.biq", "t5.biq"]
        .iter()
        .map(|f| Biquandle::try_from(matrix(f)).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn obverse_and_flip_are_commuting_involutions(m in any_matrix(3)) {
        prop_assert_eq!(m.obverse().obverse(), m.clone());
        prop_assert_eq!(m.flip().flip(), m.clone());
        prop_assert_eq!(m.obverse().flip(), m.flip().obverse());
    }

    #[test]
    fn axioms_invariant_under_obverse_and_flip(m in any_matrix(2)) {
        let ok = m.biqtest();
        prop_assert_eq!(m.obverse().biqtest(), ok);
        prop_assert_eq!(m.flip().biqtest(), ok);
    }

    #[test]
    fn relabelling_gives_isomorphic_copy(b in any_census3(), perm in any_perm(3)) {
        let r = b.relabel(&perm);
        prop_assert!(r.matrix().biqtest());
        let isos: Vec<Vec<u8>> = bisolist(&b, &r).iter().map(|m| m.images().to_vec()).collect();
        prop_assert!(isos.contains(&perm));
    }

    #[test]
    fn aut_groups_agree_across_flip_and_obverse(b in any_census3()) {
        let (maps, label) = baut(&b);
        for v in [b.obverse(), b.flip(), b.obverse().flip()] {
            let (vmaps, vlabel) = baut(&v);
            prop_assert_eq!(vmaps.len(), maps.len());
            prop_assert_eq!(&vlabel, &label);
        }
    }

    #[test]
    fn hom_count_ignores_generator_names(k in 0usize..3, t in 0usize..4, seed in any::<u64>()) {
        let p = &fixture_knots()[k];
        let target = &fixture_targets()[t];
        let g = p.generators();
        // a deterministic shuffle of 1..=g from the seed
        let mut perm: Vec<usize> = (1..=g).collect();
        let mut s = seed;
        for i in (1..g).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let renamed = p.relabel(&perm).unwrap();
        prop_assert_eq!(bhomcount(&renamed, target), bhomcount(p, target));
    }

    #[test]
    fn hom_count_natural_under_obverse_and_flip(k in 0usize..3, b in any_census3()) {
        let p = &fixture_knots()[k];
        prop_assert_eq!(bhomcount(&p.obverse(), &b.obverse()), bhomcount(p, &b));
        prop_assert_eq!(bhomcount(&p.flip(), &b.flip()), bhomcount(p, &b));
    }

    #[test]
    fn fill_is_monotone_and_idempotent(
        b in any_census3(),
        blanks in subsequence((0..36usize).collect::<Vec<_>>(), 0..=36),
    ) {
        let mut cells = b.cells().to_vec();
        for &i in &blanks {
            cells[i] = 0;
        }
        let rows: Vec<Vec<u8>> = cells.chunks(6).map(|r| r.to_vec()).collect();
        let p = Pattern::from_rows(&rows).unwrap();
        let Fill::Filled(once) = biqfill(&p) else {
            return Err(TestCaseError::fail("a blanked biquandle cannot be contradictory"));
        };
        prop_assert!(p.cells().iter().zip(once.cells()).all(|(&a, &b)| a == 0 || a == b));
        prop_assert!(once.agrees_with(b.matrix()));
        prop_assert_eq!(biqfill(&once), Fill::Filled(once.clone()));

        let completions = biqlist(&p);
        prop_assert!(completions.contains(&b));
        prop_assert!(completions.iter().all(|c| p.agrees_with(c.matrix()) && c.matrix().biqtest()));
    }

    #[test]
    fn presentation_vectors_round_trip(
        entries in (1usize..10).prop_flat_map(|n| {
            prop::collection::vec((select(vec!['U', 'u', 'L', 'l']), 1..=n), n)
        })
    ) {
        let n = entries.len();
        let text = format!(
            "pv {n}\n{}\n",
            entries.iter().map(|(c, j)| format!("{c}{j}")).collect::<Vec<_>>().join(" ")
        );
        let pv: PresentationVector = text.parse().unwrap();
        prop_assert_eq!(pv.to_string(), text);
        let pres = pv.to_presentation();
        let back: Presentation = pres.to_string().parse().unwrap();
        prop_assert_eq!(&back, &pres);
        if let Ok(pattern) = pres.to_pattern() {
            let mut a = Presentation::from_pattern(&pattern).relations().to_vec();
            let mut b = pres.relations().to_vec();
            a.sort();
            b.sort();
            b.dedup();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn fixture_vectors_are_knotlike_and_fit_patterns() {
    for p in fixture_knots() {
        assert!(p.is_knotlike());
        let pattern = p.to_pattern().unwrap();
        assert_eq!(pattern.check_invariants(), Ok(()));
    }
}

#[test]
fn reduction_is_sound_and_complete() {
    let all = census3();
    for mode in [Equivalence::Iso, Equivalence::IsoFlipObverse] {
        let kept = breducelist(all, mode);
        for (i, a) in kept.iter().enumerate() {
            for b in &kept[i + 1..] {
                assert!(!equivalent(a, b, mode), "kept two equivalent entries");
            }
        }
        for b in all {
            assert!(kept.iter().any(|k| equivalent(b, k, mode)));
        }
    }
}

#[test]
fn hom_count_bounded_by_idempotents() {
    for p in fixture_knots() {
        for t in census3() {
            assert!(bhomcount(&p, t) as usize >= t.idempotent_count());
        }
    }
}
