use bruhat::class_enum::class_members;
use bruhat::constructions::{half_regular_product, remark_improved_product};
use bruhat::order::{bruhat_compare, verify_antichain};
use bruhat::{Margins, OrderRelation, VerifyMode};

#[test]
fn bruhat_order_is_transitive_and_antisymmetric() {
    for (n, k) in [(3, 2), (4, 2)] {
        let ms = class_members(&Margins::regular(n, k)).unwrap();
        let rel: Vec<Vec<OrderRelation>> = ms
            .iter()
            .map(|a| ms.iter().map(|c| bruhat_compare(a, c).unwrap()).collect())
            .collect();
        for i in 0..ms.len() {
            assert_eq!(rel[i][i], OrderRelation::Equal);
            for j in 0..ms.len() {
                assert_eq!(rel[i][j], rel[j][i].reverse());
                if rel[i][j] != OrderRelation::Less {
                    continue;
                }
                for l in 0..ms.len() {
                    if rel[j][l] == OrderRelation::Less {
                        assert_eq!(rel[i][l], OrderRelation::Less);
                    }
                }
            }
        }
    }
}

#[test]
fn small_products_verify_exhaustively() {
    for p in [
        half_regular_product(2).unwrap(),
        half_regular_product(3).unwrap(),
        remark_improved_product(4).unwrap(),
    ] {
        let members = p.materialize(5000).unwrap();
        assert_eq!(members.len() as u128, p.len_u128().unwrap());
        assert!(members.iter().all(|a| a.margins() == *p.margins()));
        assert!(verify_antichain(&members, VerifyMode::Exhaustive)
            .unwrap()
            .is_verified());
    }
}

#[test]
fn product_random_access_matches_iteration() {
    let p = half_regular_product(4).unwrap();
    let all: Vec<_> = p.iter().collect();
    assert_eq!(all.len(), 1296);
    for i in [0u128, 1, 35, 36, 647, 1295] {
        assert_eq!(p.member_u128(i).unwrap(), all[i as usize]);
    }
    let start = 100u32.into();
    let end = 140u32.into();
    let window: Vec<_> = p.range(&start, &end).unwrap().collect();
    assert_eq!(window, all[100..140]);
}
