use num_bigint::BigInt;
use num_rational::BigRational;

use lambda2::arith::is_squarefree;
use lambda2::classifier::{classify, f1_square_criterion, search_thm11, Status, TheoremTag};
use lambda2::field::{eps_image_mod8, eps_image_mod8_auto, splits_at_2};
use lambda2::hilbert::hilbert_q2;
use lambda2::redei::generalized_redei_f1;
use lambda2::symbols::kronecker;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// At a split dyadic place the completion is Q_2, so (eps_D, 2) is the
// rational symbol (u, 2)_2 of the image u.
#[test]
fn eps_norm_criterion_matches_mod8_class() {
    for u in (1..64).step_by(2) {
        assert_eq!(hilbert_q2(&q(u), &q(2)).unwrap() == -1, matches!(u % 8, 3 | 5), "u={u}");
    }
    for d in (17..5000i64).filter(|&d| splits_at_2(d) && is_squarefree(d as u64)) {
        let u = eps_image_mod8_auto(d).unwrap() as i64;
        assert_eq!(hilbert_q2(&q(u), &q(2)).unwrap() == -1, matches!(u, 3 | 5), "D={d}");
        // precision does not move the class
        assert_eq!(eps_image_mod8(d, 200).unwrap() as i64, u, "D={d}");
    }
}

#[test]
fn qualifying_pairs_are_internally_consistent() {
    let pairs = search_thm11(1200, 4);
    assert!(pairs.len() >= 25, "{}", pairs.len());
    for h in pairs {
        assert!(h.all());
        assert!(f1_square_criterion(h.p, h.q).unwrap().holds, "({}, {})", h.p, h.q);
        let d = (h.p * h.q) as i64;
        assert!(matches!(eps_image_mod8_auto(d).unwrap(), 3 | 5), "D={d}");
        let v = classify(d).unwrap();
        assert_eq!(v.status, Status::ProvenZero(TheoremTag::MainTheorem11));
        assert_eq!(v.evidence_value("q(K2) <= 2"), Some("true"));
    }
}

// tau swaps pi <-> conj(pi) and the places above p, and fixes delta up to squares.
#[test]
fn generalized_redei_is_galois_equivariant() {
    let mut checked = 0;
    for p in (17..400u64).filter(|&p| p % 8 == 1 && lambda2::arith::is_prime(p)) {
        for q in (25..400u64).filter(|&q| q % 16 == 9 && lambda2::arith::is_prime(q)) {
            if kronecker(p as i64, q as i64) != -1 {
                continue;
            }
            let g = generalized_redei_f1(p, q).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(g.r.get(i, j), g.r.get(i ^ 1, j ^ 1), "({p},{q}) entry {i},{j}");
                }
                assert_eq!(g.m.get(i + 1, 1), g.m.get((i ^ 1) + 1, 1));
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}
