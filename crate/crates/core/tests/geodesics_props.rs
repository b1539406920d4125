use origami_sv_core::cylinders::{build_two_cylinder, horizontal_decomposition, TwoCylCoords};
use origami_sv_core::geodesics::{
    count_cylinders_profile, direction_decomposition, enumerate_directions, Direction,
    DirectionBudget, LengthBound,
};
use origami_sv_core::origami::Origami;
use origami_sv_core::sl2z::{eval_word, Generator};
use proptest::prelude::*;

fn origami_strategy() -> impl Strategy<Value = Origami> {
    (4u64..=9)
        .prop_map(TwoCylCoords::all_with_area)
        .prop_flat_map(|v| {
            let len = v.len();
            (Just(v), 0..len)
        })
        .prop_map(|(v, i)| build_two_cylinder(&v[i]).unwrap())
}

fn word_strategy() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(prop_oneof![Just(Generator::T), Just(Generator::TInv), Just(Generator::S)], 0..8)
}

fn widths(o: &Origami, d: Direction) -> Vec<u64> {
    let mut w: Vec<u64> = direction_decomposition(o, d).unwrap().cylinders.iter().map(|c| c.width).collect();
    w.sort();
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_direction_gives_one_or_two_cylinders(o in origami_strategy()) {
        for d in enumerate_directions(LengthBound::integer(6)) {
            let dec = direction_decomposition(&o, d).unwrap();
            prop_assert!(matches!(dec.len(), 1 | 2));
            prop_assert_eq!(dec.area(), o.n() as u64);
        }
        prop_assert_eq!(
            direction_decomposition(&o, Direction::HORIZONTAL).unwrap(),
            horizontal_decomposition(&o).unwrap()
        );
    }

    #[test]
    fn counts_are_equivariant(o in origami_strategy(), w in word_strategy()) {
        let m = eval_word(&w);
        let moved = o.apply_matrix(&m).unwrap();
        for d in enumerate_directions(LengthBound::integer(4)) {
            let (p, q) = m.apply((d.p(), d.q()));
            let image = Direction::new(p, q).unwrap();
            prop_assert_eq!(widths(&moved, image), widths(&o, d));
        }
    }

    #[test]
    fn counts_grow_with_length(o in origami_strategy()) {
        let lengths: Vec<LengthBound> = [1u64, 2, 3, 5, 8, 13].map(LengthBound::integer).to_vec();
        let reports = count_cylinders_profile(&o, &lengths, DirectionBudget::default()).unwrap();
        for pair in reports.windows(2) {
            prop_assert!(pair[0].n_reg <= pair[1].n_reg);
            prop_assert!(pair[0].n_irr <= pair[1].n_irr);
        }
    }
}

#[test]
fn seven_square_diagonal_direction() {
    let o = Origami::from_images(vec![1, 2, 3, 4, 5, 6, 0], vec![2, 3, 4, 5, 0, 1, 6]).unwrap();
    let d = direction_decomposition(&o, Direction::new(1, 1).unwrap()).unwrap();
    assert_eq!(d.len(), 2);
}

#[test]
fn direction_count_calibration_small() {
    // Norm ≤ 10: hand count of coprime (p, q) with q ≥ 1 plus (1, 0).
    let dirs = enumerate_directions(LengthBound::integer(10));
    let brute = (1..=10i64)
        .flat_map(|q| (-10..=10i64).map(move |p| (p, q)))
        .filter(|&(p, q)| p * p + q * q <= 100 && gcd(p.unsigned_abs(), q as u64) == 1)
        .count()
        + 1;
    assert_eq!(dirs.len(), brute);
    let mut sorted = dirs.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), dirs.len());
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
