use std::sync::{Arc, LazyLock};

use gsu_core::arith::smallest_prime_one_mod;
use gsu_core::character::homs_to_units;
use gsu_core::field::field_from_spec;
use gsu_core::fourier::{abelian_characters, build_dual_set, fourier_transform, rank_support};
use gsu_core::function::dim_fgf;
use gsu_core::group::Group;
use gsu_core::gset::{transitive_actions, GSet};
use gsu_core::uncertainty::{analyze, classify_equality_classical, coset_indicator_function, greedy_translate_bound};
use gsu_core::{Field, FunctionOnX};
use proptest::prelude::*;

static SETS: LazyLock<Vec<Arc<GSet>>> = LazyLock::new(|| {
    let mut groups = Group::small_groups_up_to_8();
    groups.push(Group::alternating4());
    groups
        .into_iter()
        .flat_map(|g| transitive_actions(Arc::new(g)).unwrap())
        .map(Arc::new)
        .collect()
});

fn fields() -> Vec<Field> {
    ["GF(2)", "GF(3)", "GF(5)", "GF(2^2)", "Q"].iter().map(|s| field_from_spec(s).unwrap()).collect()
}

/// A transitive set, a field and a nonzero function with small integer values.
fn instance() -> impl Strategy<Value = FunctionOnX> {
    (0..SETS.len(), 0..fields().len(), proptest::collection::vec(-2i64..=2, 12), 0usize..12).prop_map(
        |(si, fi, raw, forced)| {
            let xs = SETS[si].clone();
            let field = fields()[fi].clone();
            let m = xs.size();
            let mut vals: Vec<_> = raw[..m].iter().map(|&v| field.from_i64(v)).collect();
            if vals.iter().all(|v| field.is_zero(v)) {
                vals[forced % m] = field.one();
            }
            FunctionOnX::new(xs, field, vals).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn bounds_are_sandwiched(f in instance()) {
        let r = analyze(&f, None).unwrap();
        prop_assert!(r.rhs_classical <= r.rhs_sharp && r.rhs_sharp <= r.lhs);
        prop_assert!(r.block_size <= r.supp_size && r.supp_size % r.block_size == 0);
        prop_assert!(r.dim >= 1 && r.dim <= f.gset().size());
    }

    #[test]
    fn report_is_invariant_under_translation_and_scaling(f in instance(), a in 0usize..24) {
        let g = f.gset().group();
        let a = a % g.order();
        let r = analyze(&f, None).unwrap();
        let t = analyze(&f.translate(a), None).unwrap();
        prop_assert_eq!((r.supp_size, r.dim, r.block_size), (t.supp_size, t.dim, t.block_size));
        let c = f.field().from_i64(2);
        if !f.field().is_zero(&c) {
            prop_assert_eq!(analyze(&f.scale(&c), None).unwrap().dim, r.dim);
        }
    }

    #[test]
    fn every_support_point_gives_the_same_bound(f in instance()) {
        let reports: Vec<_> = f.support().into_iter().map(|x| analyze(&f, Some(x)).unwrap()).collect();
        prop_assert!(reports.windows(2).all(|w| w[0].block_size == w[1].block_size && w[0].lhs == w[1].lhs));
    }

    #[test]
    fn classical_equality_matches_certificate(f in instance()) {
        let r = analyze(&f, None).unwrap();
        let c = classify_equality_classical(&f, None).unwrap();
        prop_assert_eq!(c.certificate.is_some(), r.lhs == r.rhs_classical);
        if let Some(cert) = c.certificate {
            prop_assert!(cert.validate(&f).is_ok());
        }
    }

    #[test]
    fn greedy_count_respects_both_bounds(f in instance()) {
        prop_assume!(f.support().len() < f.gset().size());
        let r = analyze(&f, None).unwrap();
        let gb = greedy_translate_bound(&f, r.x0).unwrap();
        prop_assert!(gb.t <= r.dim);
        prop_assert!(f.gset().size() <= gb.t * r.supp_size - r.supp_size + r.block_size);
    }

    #[test]
    fn rank_support_matches_dimension_on_cyclic_groups(n in 2usize..=12, raw in proptest::collection::vec(0i64..13, 12)) {
        let p = smallest_prime_one_mod(n as u64);
        let field = field_from_spec(&format!("GF({p})")).unwrap();
        let g = Arc::new(Group::cyclic(n));
        let xs = Arc::new(GSet::regular(g.clone()));
        let ds = build_dual_set(xs.clone(), Arc::new(abelian_characters(g, &field).unwrap())).unwrap();
        let mut vals = raw[..n].to_vec();
        if vals.iter().all(|&v| v % p as i64 == 0) {
            vals[0] = 1;
        }
        let f = FunctionOnX::from_i64(xs, field, &vals).unwrap();
        prop_assert_eq!(rank_support(&fourier_transform(&f, &ds).unwrap()), dim_fgf(&f).unwrap());
    }

    #[test]
    fn transform_is_linear(a in proptest::collection::vec(-3i64..=3, 6), b in proptest::collection::vec(-3i64..=3, 6)) {
        let field = field_from_spec("GF(7)").unwrap();
        let g = Arc::new(Group::cyclic(6));
        let xs = Arc::new(GSet::regular(g.clone()));
        let ds = build_dual_set(xs.clone(), Arc::new(abelian_characters(g, &field).unwrap())).unwrap();
        let fa = FunctionOnX::from_i64(xs.clone(), field.clone(), &a).unwrap();
        let fb = FunctionOnX::from_i64(xs, field.clone(), &b).unwrap();
        let sum = fourier_transform(&fa.add(&fb).unwrap(), &ds).unwrap();
        let ta = fourier_transform(&fa, &ds).unwrap();
        let tb = fourier_transform(&fb, &ds).unwrap();
        for ((s, x), y) in sum.blocks().iter().zip(ta.blocks()).zip(tb.blocks()) {
            for ((rs, rx), ry) in s.iter().zip(x).zip(y) {
                for ((vs, vx), vy) in rs.iter().zip(rx).zip(ry) {
                    prop_assert_eq!(vs, &field.add(vx, vy));
                }
            }
        }
    }

    #[test]
    fn coset_characters_attain_classical_equality(gi in 0usize..14, hi in 0usize..64, ci in 0usize..64, ei in 0usize..64) {
        let g = Arc::new(Group::small_groups_up_to_8().swap_remove(gi));
        let field = field_from_spec(&format!("GF({})", smallest_prime_one_mod(g.exponent()))).unwrap();
        let subs = g.all_subgroups().unwrap();
        let h = &subs[hi % subs.len()];
        let cosets = g.left_cosets(h);
        let etas = homs_to_units(&g, h, &field);
        let f = coset_indicator_function(g.clone(), h, cosets[ci % cosets.len()][0], &etas[ei % etas.len()], &field.one(), &field).unwrap();
        let r = analyze(&f, None).unwrap();
        prop_assert!(r.classical_equality);
        prop_assert_eq!(r.supp_size, h.len());
    }
}
