use num_bigint::BigUint;
use proptest::prelude::*;

use super::*;
use crate::ff::{FiniteField, Gf};
use crate::linalg::Mat;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn order_examples() {
    for q in [2, 3, 4, 5, 9, 13] {
        assert_eq!(order_gl(1, q).unwrap(), big(q - 1));
        assert_eq!(order_sl(1, q).unwrap(), big(1));
    }
    assert_eq!(order_gl(3, 3).unwrap(), big(11232));
    assert_eq!(order_gl(2, 13).unwrap() / big(12), big(2184));
    assert_eq!(order_sl(2, 13).unwrap(), big(2184));
    assert_eq!(order_gammal1(3, 3).unwrap(), big(78));
    assert_eq!(order_gl(2, 6), Err(Error::NotPrimePower(6)));
    assert_eq!(order_sp4(12), Err(Error::NotPrimePower(12)));
}

#[test]
fn sp4_formula_matches_displayed_expression() {
    // |Sp_4(F_{p^{ad/4}})| = p^{ad}(p^{ad/2} - 1)(p^{ad} - 1)
    for (p, a, d) in [(3u64, 4usize, 3usize), (5, 4, 3), (3, 4, 5), (7, 8, 3), (3, 12, 7)] {
        let n = a * d;
        let q = p.pow((n / 4) as u32);
        let one = BigUint::from(1u32);
        let pb = big(p);
        let expected = pb.pow(n as u32) * (pb.pow((n / 2) as u32) - &one) * (pb.pow(n as u32) - &one);
        assert_eq!(order_sp4(q).unwrap(), expected);
        assert_eq!(order_sp(4, q).unwrap(), expected);
    }
    assert_eq!(order_sp(2, 13).unwrap(), order_sl(2, 13).unwrap());
}

#[test]
fn vp_sl_examples() {
    assert_eq!(vp_sl(3, 1, 3).unwrap(), 3);
    assert_eq!(valuation(&big(5616), 3), 3);
    assert_eq!(vp_sl(2, 1, 5).unwrap(), 1);
    assert!(matches!(vp_sl(1, 1, 3), Err(Error::BadParams(_))));
    assert!(matches!(vp_sl(3, 1, 4), Err(Error::BadParams(_))));
}

#[test]
fn vp_sl_matches_valuation_on_grid() {
    for p in [2u64, 3, 5, 7] {
        for e in 2..=6 {
            for c in 1..=3 {
                let q = p.pow(c as u32);
                assert_eq!(vp_sl(e, c, p).unwrap(), valuation(&order_sl(e, q).unwrap(), p), "{p} {e} {c}");
            }
        }
    }
}

#[test]
fn case1_valuations_force_e_equal_d() {
    for d in [3usize, 5, 7] {
        for p in [3u64, 5, 7] {
            for a in 1..=3 {
                let ambient = valuation(&order_gl(d, p.pow(a as u32)).unwrap(), p);
                assert_eq!(ambient, (a * d * (d - 1) / 2) as u64);
                for e in (3..=a * d).filter(|e| (a * d) % e == 0 && e % d == 0) {
                    let sub = vp_sl(e, a * d / e, p).unwrap();
                    assert_eq!(sub <= ambient, e == d);
                }
            }
        }
    }
}

fn brute_primitive(b: u64, n: usize) -> Option<u64> {
    let target = b.pow(n as u32) - 1;
    (2..=target).find(|&r| {
        num_prime::nt_funcs::is_prime64(r) && target.is_multiple_of(r) && (1..n).all(|t| !(b.pow(t as u32) - 1).is_multiple_of(r))
    })
}

#[test]
fn zsigmondy_examples() {
    assert_eq!(zsigmondy(2, 4).unwrap(), Zsigmondy::Prime { r: 5 });
    assert_eq!(zsigmondy(2, 6).unwrap(), Zsigmondy::Exception);
    assert_eq!(zsigmondy(3, 6).unwrap(), Zsigmondy::Prime { r: 7 });
    assert_eq!(zsigmondy(3, 2).unwrap(), Zsigmondy::Exception);
    assert_eq!(zsigmondy(7, 2).unwrap(), Zsigmondy::Exception);
    assert_eq!(zsigmondy(5, 2).unwrap(), Zsigmondy::Prime { r: 3 });
}

#[test]
fn zsigmondy_matches_brute_force() {
    for b in 2u64..=7 {
        for n in 1..=9 {
            if b.checked_pow(n as u32).is_none_or(|v| v > 50_000_000) {
                continue;
            }
            let expected = brute_primitive(b, n);
            match zsigmondy(b, n).unwrap() {
                Zsigmondy::Prime { r } => assert_eq!(Some(r), expected, "({b}, {n})"),
                Zsigmondy::Exception => assert_eq!(expected, None, "({b}, {n})"),
            }
        }
    }
}

#[test]
fn zsigmondy_large_exponents() {
    // Φ_n(b) beyond 128 bits goes through the congruence search
    let z = zsigmondy(3, 90).unwrap().prime().unwrap();
    assert_eq!(z % 90, 1);
    assert_eq!(multiplicative_order(3, z), 90);
    let small = (2..z).filter(|&r| r % 90 == 1 && num_prime::nt_funcs::is_prime64(r));
    assert!(small.into_iter().all(|r| multiplicative_order(3 % r, r) != 90));
}

#[test]
fn identity_group() {
    let g = MatrixGroup::new(3, 3, vec![Mat::identity(3)]).unwrap();
    assert_eq!(g.order(), big(1));
    assert!(!g.is_transitive());
    let empty = MatrixGroup::new(2, 5, vec![]).unwrap();
    assert_eq!(empty.order(), big(1));
}

#[test]
fn singular_generator_rejected() {
    let m = Mat::from_rows(vec![vec![1, 1], vec![1, 1]]);
    assert_eq!(MatrixGroup::new(2, 3, vec![m]).unwrap_err(), Error::Singular);
}

#[test]
fn sl3_f3_order_and_transitivity() {
    let g = MatrixGroup::new(3, 3, sl_generators(3, 3).unwrap()).unwrap();
    assert_eq!(g.order(), big(5616));
    assert!(g.is_transitive());
}

#[test]
fn gammal1_examples() {
    let g = singer_gammal1(3, 3).unwrap();
    assert_eq!(g.order(), big(78));
    assert!(g.is_transitive());
    for q in [3, 5, 9] {
        assert_eq!(singer_gammal1(1, q).unwrap().order(), big(q - 1));
    }
    let s = MatrixGroup::new(3, 3, vec![singer_cycle(3, 3).unwrap()]).unwrap();
    assert_eq!(s.order(), big(26));
    let mut e0 = vec![0; 3];
    e0[0] = 1;
    assert_eq!(s.orbit(&e0).len(), 26);
}

#[test]
fn chain_orders_match_formulas() {
    for (d, q) in [(1, 3), (2, 3), (2, 4), (2, 5), (2, 9), (3, 2), (3, 3), (2, 7), (4, 2), (3, 4)] {
        let gl = MatrixGroup::new(d, q, gl_generators(d, q).unwrap()).unwrap();
        assert_eq!(gl.order(), order_gl(d, q).unwrap(), "GL_{d}({q})");
        let sl = MatrixGroup::new(d, q, sl_generators(d, q).unwrap()).unwrap();
        assert_eq!(sl.order(), order_sl(d, q).unwrap(), "SL_{d}({q})");
        let gamma = singer_gammal1(d, q).unwrap();
        assert_eq!(gamma.order(), order_gammal1(d, q).unwrap(), "ΓL_1({q}^{d})");
    }
}

#[test]
fn chain_order_matches_enumeration() {
    let gf = Gf::with_order(3).unwrap();
    let a = Mat::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
    let b = Mat::from_rows(vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let c = Mat::from_rows(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    for gens in [vec![a.clone()], vec![a.clone(), b.clone()], vec![b.clone(), c.clone()], vec![a, c]] {
        let g = MatrixGroup::with_field(gf.clone(), 3, gens).unwrap();
        let n = g.elements(20_000).unwrap().len();
        assert_eq!(g.order(), BigUint::from(n));
    }
}

#[test]
fn cap_aborts_large_groups() {
    let g = MatrixGroup::new(3, 3, gl_generators(3, 3).unwrap()).unwrap();
    assert!(g.chain_capped(1000).is_err());
    assert_eq!(g.chain_capped(11232).unwrap().order(), big(11232));
}

#[test]
fn classify_examples() {
    let gl = MatrixGroup::new(3, 3, gl_generators(3, 3).unwrap()).unwrap();
    assert!(matches!(classify_transitive(&gl).unwrap(), Classification::ContainsSL { .. }));
    let gamma = singer_gammal1(3, 3).unwrap();
    assert!(matches!(classify_transitive(&gamma).unwrap(), Classification::SubGammaL1 { .. }));
    let singer = MatrixGroup::new(3, 3, vec![singer_cycle(3, 3).unwrap()]).unwrap();
    assert!(matches!(classify_transitive(&singer).unwrap(), Classification::SubGammaL1 { .. }));
}

#[test]
fn classify_rejects_hypotheses() {
    let g = MatrixGroup::new(2, 3, gl_generators(2, 3).unwrap()).unwrap();
    assert!(matches!(classify_transitive(&g), Err(Error::HypothesisViolation(_))));
    let g = MatrixGroup::new(3, 4, gl_generators(3, 4).unwrap()).unwrap();
    assert!(matches!(classify_transitive(&g), Err(Error::HypothesisViolation(_))));
    let g = MatrixGroup::new(3, 3, vec![Mat::identity(3)]).unwrap();
    assert!(matches!(classify_transitive(&g), Err(Error::HypothesisViolation(_))));
}

/// Conjugates of subgroups of ΓL_1 remain recognized, with a valid conjugator.
#[test]
fn classify_conjugated_gammal1() {
    let gf = Gf::with_order(5).unwrap();
    let gamma = singer_gammal1(3, 5).unwrap();
    let p = Mat::from_rows(vec![vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1]]);
    let pinv = p.inverse(&gf).unwrap();
    let conj: Vec<Mat> = gamma.generators().iter().map(|g| p.mul(&gf, g).mul(&gf, &pinv)).collect();
    let g = MatrixGroup::with_field(gf.clone(), 3, conj.clone()).unwrap();
    let Classification::SubGammaL1 { order, witness } = classify_transitive(&g).unwrap() else {
        panic!("expected ΓL_1");
    };
    assert_eq!(order, big(372));
    let w = &witness.conjugator;
    let winv = w.inverse(&gf).unwrap();
    for s in &conj {
        assert!(gamma.contains(&w.mul(&gf, s).mul(&gf, &winv)));
    }
}

#[test]
fn obstruction_examples() {
    let reports = proposition_obstructions(3, 2, 3).unwrap();
    let sl2 = reports.iter().find(|r| r.case == Case::SL2Singer).unwrap();
    let Witness::SingerIntersection { intersection, sigma_order, remainder, .. } = &sl2.witness else {
        panic!()
    };
    assert_eq!((intersection.clone(), sigma_order.clone(), remainder.clone()), (big(91), big(28), big(7)));
    assert_eq!(sl2.verdict, Verdict::Obstructed);
    assert!(reports.iter().any(|r| r.case == Case::Sporadic));

    let reports = proposition_obstructions(3, 1, 3).unwrap();
    let case1 = reports.iter().find(|r| r.case == Case::Case1 && r.e == 3).unwrap();
    assert_eq!(case1.witness, Witness::Valuation { prime: 3, subgroup: 3, ambient: 3 });
    assert_eq!(case1.verdict, Verdict::Admitted);

    let reports = proposition_obstructions(5, 1, 3).unwrap();
    assert!(reports.iter().all(|r| r.case != Case::Case2));
}

#[test]
fn obstruction_grid_revalidates() {
    for d in [3usize, 5, 7] {
        for p in [3u64, 5, 7, 11, 13] {
            for a in 1..=3 {
                for r in proposition_obstructions(p, a, d).unwrap() {
                    assert!(r.revalidate(), "{r:?}");
                    assert_eq!(r.verdict == Verdict::Admitted, r.case == Case::Case1 && r.e == d, "{r:?}");
                }
            }
        }
    }
}

#[test]
fn obstruction_tampering_is_detected() {
    let mut reports = proposition_obstructions(3, 2, 3).unwrap();
    for r in reports.iter_mut() {
        match &mut r.witness {
            Witness::Valuation { subgroup, .. } => *subgroup += 1,
            Witness::Zsigmondy { prime, .. } => *prime += 2,
            Witness::SingerIntersection { remainder, .. } => *remainder += 1u32,
            Witness::NonDivisibility { remainder, .. } => *remainder += 1u32,
            Witness::Sporadic { gl2_order, .. } => *gl2_order += 13,
        }
        assert!(!r.revalidate(), "{r:?}");
    }
}

#[test]
fn obstruction_hypotheses() {
    assert!(matches!(proposition_obstructions(2, 1, 3), Err(Error::HypothesisViolation(_))));
    assert!(matches!(proposition_obstructions(3, 1, 4), Err(Error::HypothesisViolation(_))));
    assert!(matches!(proposition_obstructions(3, 0, 3), Err(Error::HypothesisViolation(_))));
}

#[test]
fn order13_classes() {
    let (gf, reps) = order13_representatives().unwrap();
    assert_eq!(reps.len(), 4);
    let mut polys: Vec<Vec<u64>> = reps.iter().map(|m| m.char_poly(&gf)).collect();
    for m in &reps {
        assert_eq!(element_order(&gf, m), 13);
        assert!(crate::ff::poly::is_irreducible(&*gf, &m.char_poly(&gf)));
    }
    polys.sort();
    polys.dedup();
    assert_eq!(polys.len(), 4);
}

#[test]
fn involution_count() {
    let gf = Gf::with_order(9).unwrap();
    let cands = involution_candidates(&gf, 3).unwrap();
    assert_eq!(cands.len(), 14744);
    let minus = Mat::identity(3).scale(&gf, gf.neg(1));
    assert!(cands.iter().all(|b| b.mul(&gf, b) == minus));
    let mut uniq = cands.clone();
    uniq.sort_by(|a, b| a.data().cmp(b.data()));
    uniq.dedup();
    assert_eq!(uniq.len(), cands.len());

    // exhaustive count in GL_2(F_5)
    let gf = Gf::with_order(5).unwrap();
    let minus = Mat::identity(2).scale(&gf, 4);
    let brute = (0..625u64)
        .map(|c| Mat::from_rows(vec![Gf::digits(c, 5, 2), Gf::digits(c / 25, 5, 2)]))
        .filter(|m| m.mul(&gf, m) == minus)
        .count();
    assert_eq!(involution_candidates(&gf, 2).unwrap().len(), brute);
}

#[test]
fn positive_control_finds_sl2_13() {
    let cert = positive_control_gl2_13().unwrap();
    assert_eq!(cert.verdict, EmbeddingVerdict::EmbeddingFound);
    assert!(!cert.hits.is_empty());
    assert!(cert.hits.iter().all(|h| h.matches && h.involutions == 1 && h.sylow13 == 14 && h.perfect));
    let gf = Gf::with_order(13).unwrap();
    let s = Mat::from_rows(vec![vec![0, 12], vec![1, 0]]);
    let t = Mat::from_rows(vec![vec![1, 1], vec![0, 1]]);
    let g = MatrixGroup::with_field(gf, 2, vec![t, s]).unwrap();
    assert_eq!(g.order(), big(2184));
}

#[test]
fn search_deadline_reports_incomplete() {
    let r = no_embedding_sl2_13_in_gl3_9(Some(std::time::Duration::ZERO));
    assert!(matches!(r, Err(Error::SearchIncomplete(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transitive_groups_have_divisible_order(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 5])) {
        use rand::{Rng, SeedableRng};
        let gf = Gf::with_order(q).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut gens = Vec::new();
        while gens.len() < 2 {
            let m = Mat::from_rows((0..3).map(|_| (0..3).map(|_| rng.gen_range(0..q)).collect()).collect());
            if m.det(&gf) != 0 {
                gens.push(m);
            }
        }
        let g = MatrixGroup::with_field(gf, 3, gens).unwrap();
        if g.is_transitive() {
            prop_assert!(divides(&BigUint::from(q.pow(3) - 1), &g.order()));
            if q % 2 == 1 {
                let c = classify_transitive(&g).unwrap();
                let inconclusive = matches!(c, Classification::Inconclusive { .. });
                prop_assert!(!inconclusive);
            }
        }
    }
}
