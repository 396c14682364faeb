mod common;

use common::{alphabet, element, word};
use proptest::prelude::*;
use ybe_fox::foxcalc::{fox_derivative, fox_derivative_ring};
use ybe_fox::freegroup::FreeWord;
use ybe_fox::groupring::GroupRingElement;

/// Fox derivative computed from the defining rules only: a recursion that
/// splits off the last letter, `∂(w·x) = ∂w + w·∂x`.
fn derivative_by_recursion(w: &FreeWord, i: usize) -> GroupRingElement {
    let a = w.alphabet();
    match w.letters().split_last() {
        None => GroupRingElement::zero(a),
        Some((last, init)) => {
            let prefix = FreeWord::from_letters(a, init.to_vec()).unwrap();
            let head = derivative_by_recursion(&prefix, i);
            let tail = if last.generator != i {
                GroupRingElement::zero(a)
            } else if last.inverse {
                // ∂(x⁻¹) = -x⁻¹, forced by x·x⁻¹ = 1
                let x_inv = FreeWord::generator(a, i).unwrap().invert();
                GroupRingElement::embed(&x_inv).scale(-1)
            } else {
                GroupRingElement::one(a)
            };
            &head + &(&GroupRingElement::embed(&prefix) * &tail)
        }
    }
}

fn chain_rule_case(f: &GroupRingElement, images: &[FreeWord]) -> Result<(), TestCaseError> {
    let x_rank = images[0].alphabet().size();
    let f_lambda = f.substitute_ring(images).unwrap();
    for j in 0..x_rank {
        let lhs = fox_derivative_ring(&f_lambda, j).unwrap();
        let mut rhs = GroupRingElement::zero(images[0].alphabet());
        for (k, image) in images.iter().enumerate() {
            let outer = fox_derivative_ring(f, k)
                .unwrap()
                .substitute_ring(images)
                .unwrap();
            let inner = fox_derivative(image, j).unwrap();
            rhs = &rhs + &(&outer * &inner);
        }
        prop_assert_eq!(lhs, rhs);
    }
    Ok(())
}

fn chain_rule_strategy(
    y_rank: usize,
    x_rank: usize,
) -> impl Strategy<Value = (GroupRingElement, Vec<FreeWord>)> {
    (
        element(y_rank, 4, 8),
        prop::collection::vec(word(x_rank, 8), y_rank),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(75))]

    #[test]
    fn chain_rule_2_to_2((f, im) in chain_rule_strategy(2, 2)) { chain_rule_case(&f, &im)?; }
    #[test]
    fn chain_rule_2_to_3((f, im) in chain_rule_strategy(2, 3)) { chain_rule_case(&f, &im)?; }
    #[test]
    fn chain_rule_3_to_2((f, im) in chain_rule_strategy(3, 2)) { chain_rule_case(&f, &im)?; }
    #[test]
    fn chain_rule_3_to_3((f, im) in chain_rule_strategy(3, 3)) { chain_rule_case(&f, &im)?; }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fundamental_identity(w in word(3, 20)) {
        let a = alphabet(3);
        let one = GroupRingElement::one(&a);
        let mut total = GroupRingElement::zero(&a);
        for i in 0..3 {
            let x_minus_one = &GroupRingElement::embed(&FreeWord::generator(&a, i).unwrap()) - &one;
            total = &total + &(&fox_derivative(&w, i).unwrap() * &x_minus_one);
        }
        prop_assert_eq!(total, &GroupRingElement::embed(&w) - &one);
    }

    #[test]
    fn fold_matches_recursive_definition(w in word(3, 20), i in 0usize..3) {
        prop_assert_eq!(fox_derivative(&w, i).unwrap(), derivative_by_recursion(&w, i));
    }

    #[test]
    fn augmentation_of_fox_derivative_is_exponent_sum(w in word(2, 20), i in 0usize..2) {
        let exponent_sum: i64 = w
            .letters()
            .iter()
            .filter(|l| l.generator == i)
            .map(|l| i64::from(l.exponent()))
            .sum();
        prop_assert_eq!(fox_derivative(&w, i).unwrap().augmentation(), exponent_sum.into());
    }
}
