use homing_core::firings::{
    apply_word, canonicalize, partition_to_word, word_to_partition, FiringLetter,
};
use homing_core::strategies::{run_strategy, smallest_first_steps, strategy_steps};
use homing_core::{
    Code, FiringWord, HeightTable, Permutation, SetPartition, Strategy as HomingStrategy, Symbol,
    TieBreak,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn code(max_len: usize) -> impl Strategy<Value = Code> {
    prop::collection::vec(
        prop_oneof![Just(Symbol::Plus), Just(Symbol::Minus), Just(Symbol::Zero)],
        0..=max_len,
    )
    .prop_map(Code::new)
}

/// A valid firing word built from raw choices: each `L` index is reduced
/// modulo one more than the number of earlier `R`s, and vice versa.
fn firing_word(max_len: usize) -> impl Strategy<Value = FiringWord> {
    prop::collection::vec((any::<bool>(), any::<u8>()), 0..=max_len).prop_map(|raw| {
        let (mut rights, mut lefts) = (0, 0);
        let letters = raw
            .into_iter()
            .map(|(left, x)| {
                if left {
                    lefts += 1;
                    FiringLetter::left(x as usize % (rights + 1))
                } else {
                    rights += 1;
                    FiringLetter::right(x as usize % (lefts + 1))
                }
            })
            .collect();
        FiringWord::new(letters)
    })
}

/// A set partition from a restricted growth string.
fn partition(max_m: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(any::<u8>(), 1..=max_m).prop_map(|raw| {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (e, x) in raw.into_iter().enumerate() {
            let b = x as usize % (blocks.len() + 1);
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(e + 1);
        }
        SetPartition::new(blocks).unwrap()
    })
}

proptest! {
    #[test]
    fn placement_then_displacement_is_identity(p in perm(30), pick in any::<prop::sample::Index>()) {
        let not_home = p.not_home();
        prop_assume!(!not_home.is_empty());
        let v = not_home[pick.index(not_home.len())];
        let q = p.place(v).unwrap();
        prop_assert!(q.is_home(v));
        prop_assert_eq!(q.displace(v, p.position_of(v)).unwrap(), p);
    }

    #[test]
    fn displacement_then_placement_is_identity(p in perm(30), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let home: Vec<usize> = (1..=p.len()).filter(|&v| p.is_home(v)).collect();
        prop_assume!(!home.is_empty() && p.len() >= 2);
        let v = home[a.index(home.len())];
        let mut target = b.index(p.len()) + 1;
        if target == v {
            target = if v == 1 { 2 } else { v - 1 };
        }
        let q = p.displace(v, target).unwrap();
        prop_assert_eq!(q.position_of(v), target);
        prop_assert_eq!(q.place(v).unwrap(), p);
    }

    #[test]
    fn placement_keeps_the_others_in_order(p in perm(30)) {
        for (m, q) in p.placement_successors() {
            let rest = |x: &Permutation| x.values().iter().copied().filter(|&y| y != m.value).collect::<Vec<_>>();
            prop_assert_eq!(rest(&p), rest(&q));
        }
    }

    #[test]
    fn rank_round_trip(p in perm(12)) {
        prop_assert_eq!(Permutation::unrank(p.len(), p.rank()).unwrap(), p);
    }

    #[test]
    fn text_and_json_round_trip(p in perm(20)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
    }

    #[test]
    fn smallest_first_closed_form(p in perm(40)) {
        prop_assert_eq!(smallest_first_steps(&p) as u64, strategy_steps(&p, HomingStrategy::SmallestFirst));
    }

    #[test]
    fn extremal_strategies_finish_quickly(p in perm(40)) {
        for s in [HomingStrategy::SmallestFirst, HomingStrategy::LargestFirst, HomingStrategy::AlternatingExtremal] {
            let t = run_strategy(&p, s);
            prop_assert!(t.len() < p.len().max(1));
            prop_assert!(t.last().is_identity());
        }
    }

    #[test]
    fn random_strategy_is_reproducible(p in perm(15), seed in any::<u64>()) {
        let s = HomingStrategy::Random { seed };
        prop_assert_eq!(run_strategy(&p, s), run_strategy(&p, s));
        prop_assert!(run_strategy(&p, s).last().is_identity());
    }

    #[test]
    fn wide_weights_agree(c in code(60)) {
        let small = c.weight_u64().unwrap();
        prop_assert_eq!(c.weight().0, BigUint::from(small));
        prop_assert_eq!(c.weight_with(TieBreak::Plus), c.weight_with(TieBreak::Minus));
        let steps: u64 = c.strip_trace().iter().map(|s| 1u64 << s.exponent).sum();
        prop_assert_eq!(steps, small);
    }

    #[test]
    fn long_codes_stay_in_range(c in code(200)) {
        let w = c.weight().0;
        let top = (BigUint::from(1u8) << c.len()) - 1u8;
        prop_assert!(w <= top);
        prop_assert_eq!(w == top, c.is_plus_minus());
        prop_assert_eq!(c.weight_with(TieBreak::Plus), c.weight_with(TieBreak::Minus));
    }

    #[test]
    fn canonical_form_is_stable(w in firing_word(10)) {
        let c = canonicalize(&w).unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
        prop_assert_eq!(c.rights(), w.rights());
        prop_assert_eq!(c.lefts(), w.lefts());
        let n = w.len() + 2;
        prop_assert_eq!(apply_word(&w, n).unwrap(), apply_word(&c, n).unwrap());
        prop_assert_eq!(w.to_string().parse::<FiringWord>().unwrap(), w);
    }

    #[test]
    fn partitions_round_trip(q in partition(14)) {
        let w = partition_to_word(&q).unwrap();
        prop_assert_eq!(w.len() + 1, q.size());
        prop_assert_eq!(word_to_partition(&w).unwrap(), q.clone());
        prop_assert_eq!(q.to_string().parse::<SetPartition>().unwrap(), q);
    }
}

#[test]
fn height_table_binary_round_trip() {
    for n in 1..=6 {
        let t = HeightTable::build(n, 6).unwrap();
        let mut bytes = Vec::new();
        t.write_binary(&mut bytes).unwrap();
        assert_eq!(&bytes[..4], b"HOMH");
        assert_eq!(bytes.len(), 8 + 4 * t.heights().len());
        assert_eq!(HeightTable::read_binary(bytes.as_slice()).unwrap(), t);
    }
    let mut bad = Vec::new();
    HeightTable::build(3, 6)
        .unwrap()
        .write_binary(&mut bad)
        .unwrap();
    bad[0] = b'X';
    assert!(HeightTable::read_binary(bad.as_slice()).is_err());
}
