use proptest::prelude::*;

use super::*;
use crate::error::Error;

#[test]
fn prime_field_of_order_three() {
    let f = FieldCtx::new(3, &[1]).unwrap();
    assert_eq!(f.cardinality(f.top()), 3);
    assert_eq!(f.modulus(1), &[0, 1]);
}

#[test]
fn nine_element_field_has_fixed_modulus() {
    let f = FieldCtx::new(3, &[2]).unwrap();
    assert_eq!(f.cardinality(1), 9);
    // x^2 + 1 is the least monic irreducible quadratic over F_3
    assert_eq!(f.modulus(1), &[1, 0, 1]);
    let theta = f.theta(1);
    let sq = f.mul(theta, theta).unwrap();
    assert_eq!(sq, f.element(1, 2).unwrap()); // θ² = -1
}

#[test]
fn three_layer_tower_and_exhaustive_root_test() {
    let f = FieldCtx::new(3, &[2, 3]).unwrap();
    assert_eq!(f.elements(2).count(), 729);
    assert_eq!(f.cardinality(2), 729);
    let m = f.modulus(2).to_vec();
    let f9 = f.layer(1);
    for a in 0..9 {
        assert_ne!(poly::eval(&f9, &m, a), 0, "cubic modulus has a root in F_9");
    }
}

#[test]
fn construction_errors() {
    assert_eq!(FieldCtx::new(9, &[1]).unwrap_err(), Error::NonPrime(9));
    assert_eq!(FieldCtx::new(3, &[2, 0]).unwrap_err(), Error::DegreeZero);
    assert_eq!(FieldCtx::new(3, &[]).unwrap_err(), Error::DegreeZero);
    assert!(matches!(FieldCtx::new(3, &[41]), Err(Error::FieldTooLarge(..))));
    assert!(FieldCtx::new(2, &[64]).is_ok());
}

#[test]
fn deterministic_reconstruction() {
    let a = FieldCtx::new(5, &[2, 2]).unwrap();
    let b = FieldCtx::new(5, &[2, 2]).unwrap();
    assert_eq!(*a, *b);
    assert_eq!(a.descriptor(), b.descriptor());
}

#[test]
fn embed_fixes_zero_one_and_preserves_order() {
    let f = FieldCtx::new(3, &[2, 3]).unwrap();
    for j in 1..=2 {
        assert_eq!(f.embed(f.zero(1), j).unwrap(), f.zero(j));
        assert_eq!(f.embed(f.one(1), j).unwrap(), f.one(j));
    }
    let g = f.gf(1).unwrap().generator();
    let up = f.embed(f.element(1, g).unwrap(), 2).unwrap();
    let order = (1..=728u128).find(|&k| f.pow(up, k).unwrap() == f.one(2)).unwrap();
    assert_eq!(order, 8);
    assert!(matches!(f.embed(f.one(2), 1), Err(Error::LayerMismatch(_))));
}

#[test]
fn frobenius_basics() {
    let f = FieldCtx::new(3, &[2]).unwrap();
    for a in f.elements(1) {
        assert_eq!(f.frobenius(a, 0).unwrap(), a);
        let twice = f.frobenius(f.frobenius(a, 1).unwrap(), 1).unwrap();
        assert_eq!(twice, a);
    }
    // elements of F_q are fixed
    let f = FieldCtx::new(3, &[2, 2]).unwrap().with_base_layer(1).unwrap();
    assert_eq!(f.q(), 9);
    for code in 0..9 {
        let a = f.element(2, code).unwrap();
        for k in 0..4 {
            assert_eq!(f.frobenius(a, k).unwrap(), a);
        }
    }
    let theta = f.theta(2);
    assert_ne!(f.frobenius(theta, 1).unwrap(), theta);
    assert_eq!(f.frobenius(theta, 2).unwrap(), theta);
}

fn brute_order(layer: &Layer<'_>, g: u64) -> u128 {
    let mut x = g;
    let mut k = 1u128;
    while x != 1 {
        x = layer.mul(x, g);
        k += 1;
    }
    k
}

#[test]
fn multiplicative_groups_are_cyclic() {
    for (p, degs) in [(2u64, vec![4, 2, 2]), (3, vec![2, 3]), (5, vec![2, 3]), (7, vec![2, 2]), (13, vec![2]), (3, vec![1, 5])] {
        let f = FieldCtx::new(p, &degs).unwrap();
        for i in 0..=f.top() {
            let n = f.cardinality(i);
            if n > 1 << 16 {
                continue;
            }
            // search with the generic recursive arithmetic, not the tables
            let generic = f.layer(i);
            let found = (1..n as u64).find(|&g| brute_order(&generic, g) == n - 1);
            assert!(found.is_some(), "no generator in layer {i} of {p}^{degs:?}");
            let gf = f.gf(i).unwrap();
            assert_eq!(brute_order(&generic, gf.generator()), n - 1);
        }
    }
}

#[test]
fn inverses_and_field_exponent() {
    let f = FieldCtx::new(3, &[2, 3]).unwrap();
    let top = f.top();
    let n = f.cardinality(top);
    for a in f.elements(top) {
        if a.code != 0 {
            let inv = f.inv(a).unwrap().unwrap();
            assert_eq!(f.mul(a, inv).unwrap(), f.one(top));
        }
        assert_eq!(f.pow(a, n).unwrap(), a);
    }
    assert_eq!(f.inv(f.zero(top)).unwrap(), None);
}

#[test]
fn tables_agree_with_recursive_arithmetic() {
    let f = FieldCtx::new(3, &[2, 2, 2]).unwrap();
    let generic = FieldCtx::new(3, &[2, 2, 2]).unwrap();
    let gf = f.gf(3).unwrap();
    let g = generic.layer(3);
    for a in (0..6561u64).step_by(37) {
        for b in (0..6561u64).step_by(53) {
            assert_eq!(gf.mul(a, b), g.mul(a, b));
            assert_eq!(gf.add(a, b), g.add(a, b));
            assert_eq!(gf.sub(a, b), g.sub(a, b));
        }
    }
}

#[test]
fn descriptor_round_trip_reproduces_tables() {
    for (p, degs) in [(2u64, vec![2, 2, 2]), (3, vec![2, 2]), (5, vec![3]), (3, vec![1, 5])] {
        let f = FieldCtx::new(p, &degs).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        let g = FieldCtx::from_descriptor(&back).unwrap();
        assert_eq!(*f, *g);
        let top = f.top();
        let (lf, lg) = (f.layer(top), g.layer(top));
        let n = f.cardinality(top) as u64;
        assert!(n <= 256);
        for a in 0..n {
            for b in 0..n {
                assert_eq!(lf.mul(a, b), lg.mul(a, b));
                assert_eq!(lf.add(a, b), lg.add(a, b));
            }
        }
    }
}

#[test]
fn descriptor_rejects_reducible_modulus() {
    let bad = FieldDescriptor {
        p: 3,
        degrees: vec![2],
        moduli: vec![vec![2.into(), 0.into(), 1.into()]], // x^2 - 1
        base_layer: 0,
    };
    assert!(matches!(FieldCtx::from_descriptor(&bad), Err(Error::InvalidDescriptor(_))));
}

#[test]
fn element_json_is_nested() {
    let f = FieldCtx::new(3, &[2, 3]).unwrap();
    let x = f.element(2, 5 + 9 * 7).unwrap();
    let v = f.element_to_json(x);
    assert_eq!(v, serde_json::json!([[2, 1], [1, 2], [0, 0]]));
    assert_eq!(f.element_from_json(2, &v).unwrap(), x);
    assert!(f.element_from_json(2, &serde_json::json!([[3, 0], [0, 0], [0, 0]])).is_err());
}

proptest! {
    #[test]
    fn embed_is_a_ring_homomorphism(a in 0u64..9, b in 0u64..9) {
        let f = FieldCtx::new(3, &[2, 3]).unwrap();
        let (x, y) = (f.element(1, a).unwrap(), f.element(1, b).unwrap());
        let up = |z| f.embed(z, 2).unwrap();
        prop_assert_eq!(up(f.add(x, y).unwrap()), f.add(up(x), up(y)).unwrap());
        prop_assert_eq!(up(f.mul(x, y).unwrap()), f.mul(up(x), up(y)).unwrap());
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(a in 0u64..729, b in 0u64..729, k in 0u64..8) {
        let f = FieldCtx::new(3, &[2, 3]).unwrap();
        let (x, y) = (f.element(2, a).unwrap(), f.element(2, b).unwrap());
        let fr = |z| f.frobenius(z, k).unwrap();
        prop_assert_eq!(fr(f.add(x, y).unwrap()), f.add(fr(x), fr(y)).unwrap());
        prop_assert_eq!(fr(f.mul(x, y).unwrap()), f.mul(fr(x), fr(y)).unwrap());
    }
}
