use proptest::prelude::*;
use sheafline::lengthcat::{
    ar_sequence, check_uniserial, contract_quiver, expand_quiver, tube_class, tube_ext, tube_hom, tube_tau, TubeLabel,
    ValuedArrow, ValuedQuiver,
};

fn label(rank: u32) -> impl Strategy<Value = TubeLabel> {
    (0..rank as i64, 1u32..5).prop_map(move |(j, l)| TubeLabel::new(rank, j, l).unwrap())
}

fn pair() -> impl Strategy<Value = (TubeLabel, TubeLabel)> {
    (1u32..5).prop_flat_map(|p| (label(p), label(p)))
}

// A nonzero map X -> Y factors through its image, which is a quotient of X
// (same top, length m) and a submodule of Y (same socle, length m). Each
// length m where these agree contributes one dimension.
fn hom_oracle(a: &TubeLabel, b: &TubeLabel) -> u64 {
    let p = i64::from(a.rank);
    (1..=a.length.min(b.length))
        .filter(|&m| (i64::from(a.top) - i64::from(b.top) - i64::from(b.length) + i64::from(m)).rem_euclid(p) == 0)
        .count() as u64
}

// Euler form of the cyclic quiver with arrows v -> v+1.
fn euler(a: &TubeLabel, b: &TubeLabel) -> i64 {
    let (x, y) = (tube_class(a), tube_class(b));
    let p = x.len();
    (0..p).map(|v| i64::from(x[v]) * (i64::from(y[v]) - i64::from(y[(v + 1) % p]))).sum()
}

fn quiver() -> impl Strategy<Value = ValuedQuiver> {
    (1usize..7).prop_flat_map(|n| {
        prop::collection::btree_map((0..n, 0..n), (1u32..3, 1u32..3), 0..(n * n).min(8)).prop_map(move |arrows| {
            let name = |i: usize| format!("v{i}");
            let arrows = arrows
                .into_iter()
                .map(|((i, j), val)| ValuedArrow { from: name(i), to: name(j), val })
                .collect();
            ValuedQuiver::new((0..n).map(name).collect(), arrows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn tube_hom_matches_segment_count((a, b) in pair()) {
        prop_assert_eq!(tube_hom(&a, &b).unwrap(), hom_oracle(&a, &b));
    }

    #[test]
    fn tube_ext_is_hom_minus_euler((a, b) in pair()) {
        let ext = tube_ext(&a, &b).unwrap() as i64;
        prop_assert_eq!(ext, tube_hom(&a, &b).unwrap() as i64 - euler(&a, &b));
    }

    #[test]
    fn tau_is_an_equivalence((a, b) in pair()) {
        prop_assert_eq!(tube_hom(&a, &b).unwrap(), tube_hom(&tube_tau(&a), &tube_tau(&b)).unwrap());
    }

    #[test]
    fn ar_sequences_are_nonsplit(a in (1u32..5).prop_flat_map(label)) {
        let s = ar_sequence(&a);
        prop_assert_eq!(s.middle.iter().map(|m| m.length).sum::<u32>(), 2 * a.length);
        prop_assert!(tube_ext(&s.right, &s.left).unwrap() >= 1);
        // classes add up along the sequence
        let mut mid = vec![0u32; a.rank as usize];
        for m in &s.middle {
            for (x, y) in mid.iter_mut().zip(tube_class(m)) {
                *x += y;
            }
        }
        let ends: Vec<u32> = tube_class(&s.left).iter().zip(tube_class(&s.right)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(mid, ends);
    }

    #[test]
    fn uniserial_is_monotone_under_deletion(q in quiver(), drop in any::<prop::sample::Index>()) {
        prop_assume!(!q.arrows().is_empty());
        let k = drop.index(q.arrows().len());
        let mut arrows = q.arrows().to_vec();
        arrows.remove(k);
        let smaller = ValuedQuiver::new(q.vertices().to_vec(), arrows).unwrap();
        prop_assert!(!check_uniserial(&q) || check_uniserial(&smaller));
    }

    #[test]
    fn contract_undoes_expand(q in quiver(), v in any::<prop::sample::Index>()) {
        let name = q.vertices()[v.index(q.vertices().len())].clone();
        let e = expand_quiver(&q, &name).unwrap();
        prop_assert_eq!(e.vertices().len(), q.vertices().len() + 1);
        let back = contract_quiver(&e, &format!("{name}_l"), &format!("{name}_r")).unwrap();
        prop_assert!(back.isomorphic(&q));
    }

    #[test]
    fn expansion_keeps_cycles_uniserial(n in 1usize..9, v in any::<prop::sample::Index>()) {
        let q = ValuedQuiver::cyclic(n);
        let name = q.vertices()[v.index(n)].clone();
        let e = expand_quiver(&q, &name).unwrap();
        prop_assert!(check_uniserial(&e));
        prop_assert!(e.isomorphic(&ValuedQuiver::cyclic(n + 1)));
    }
}
