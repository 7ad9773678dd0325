use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use pgblock::field::{Code, FieldSpec};
use pgblock::geometry::Geometry;
use pgblock::reduction::SpreadContext;
use proptest::prelude::*;

const SAMPLED: [(u32, u32); 10] = [(2, 8), (2, 11), (3, 5), (3, 9), (5, 4), (5, 6), (7, 3), (7, 5), (11, 4), (13, 3)];

fn sampled_fields() -> &'static Vec<Arc<FieldSpec>> {
    static FIELDS: OnceLock<Vec<Arc<FieldSpec>>> = OnceLock::new();
    FIELDS.get_or_init(|| SAMPLED.iter().map(|&(p, t)| FieldSpec::auto(p, t).unwrap()).collect())
}

fn field_and_triple() -> impl Strategy<Value = (usize, Code, Code, Code)> {
    (0..SAMPLED.len()).prop_flat_map(|i| {
        let q = sampled_fields()[i].q();
        (Just(i), 0..q, 0..q, 0..q)
    })
}

fn check_axioms(f: &FieldSpec, a: Code, b: Code, c: Code) {
    assert_eq!(f.add(a, b), f.add(b, a));
    assert_eq!(f.mul(a, b), f.mul(b, a));
    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    assert_eq!(f.add(a, 0), a);
    assert_eq!(f.mul(a, 1), a);
    assert_eq!(f.add(a, f.neg(a)), 0);
    assert_eq!(f.sub(f.add(a, b), b), a);
    if a != 0 {
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.div(f.mul(b, a), a), b);
    }
}

#[test]
fn field_axioms_exhaustive_up_to_128() {
    let mut checked = 0;
    for q in 2u32..=128 {
        let Some((p, t)) = (2..=q).find(|p| q % p == 0).map(|p| (p, (q as f64).log(p as f64).round() as u32)) else {
            continue;
        };
        if p.pow(t) != q {
            continue;
        }
        let f = FieldSpec::auto(p, t).unwrap();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    check_axioms(&f, a, b, c);
                }
            }
        }
        checked += 1;
    }
    // 31 primes and 4, 8, 16, 32, 64, 128, 9, 27, 81, 25, 125, 49, 121
    assert_eq!(checked, 44);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn field_axioms_sampled((i, a, b, c) in field_and_triple()) {
        check_axioms(&sampled_fields()[i], a, b, c);
    }

    #[test]
    fn frobenius_is_an_automorphism((i, a, b, _c) in field_and_triple()) {
        let f = &sampled_fields()[i];
        let p = f.p() as u64;
        prop_assert_eq!(f.frobenius(a, 1), f.pow(a, p));
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.pow(f.mul(a, b), p), f.mul(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.frobenius(a, f.t()), a);
    }
}

/// All nonzero GF(q0)-combinations of the generators, taken to projective points.
fn naive_linear_set(g: &Geometry, ctx: &SpreadContext, gens: &[Vec<Code>]) -> BTreeSet<u64> {
    let f = g.field();
    let members = ctx.subfield().members();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let mut v = vec![0; g.n() + 1];
        for (k, gen) in gens.iter().enumerate() {
            let a = members[idx[k]];
            for (x, y) in v.iter_mut().zip(gen) {
                *x = f.add(*x, f.mul(a, *y));
            }
        }
        if v.iter().any(|&c| c != 0) {
            out.insert(g.index_of(&v).unwrap());
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < members.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return out;
        }
    }
}

fn linear_set_case() -> impl Strategy<Value = ((usize, u32, u32, u32), Vec<Vec<Code>>)> {
    prop_oneof![Just((2usize, 3u32, 2u32, 1u32)), Just((2, 2, 3, 1)), Just((1, 5, 2, 1)), Just((3, 2, 2, 1)), Just((2, 2, 4, 2))]
        .prop_flat_map(|(n, p, t, e)| {
            let q = p.pow(t);
            (Just((n, p, t, e)), prop::collection::vec(prop::collection::vec(0..q, n + 1), 1..=4))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn linear_set_via_reduction_matches_combinations(((n, p, t, e), gens) in linear_set_case()) {
        prop_assume!(gens.iter().any(|g| g.iter().any(|&c| c != 0)));
        let field = FieldSpec::auto(p, t).unwrap();
        let ctx = SpreadContext::new(n, field.clone(), e).unwrap();
        let g = Geometry::lazy(n, field).unwrap();
        let expected = naive_linear_set(&g, &ctx, &gens);
        let pi = ctx.span_of_vectors(&gens);
        let via_pi: BTreeSet<u64> = ctx.linear_set_from_subspace(&pi).unwrap().iter().collect();
        prop_assert_eq!(&via_pi, &expected);
        let direct: BTreeSet<u64> = ctx.linear_set_from_vectors(&gens).unwrap().points.iter().collect();
        prop_assert_eq!(&direct, &expected);
    }
}
