use clustercat::character::character_of_arc;
use clustercat::random::random_spec;
use clustercat::representations::{coindex, coindex_of_list, index, index_of_list};
use clustercat::series::FormalSeries;
use clustercat::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const R: usize = 3;

fn point() -> impl Strategy<Value = BoundaryPoint> {
    prop_oneof![
        1 => (0..R).prop_map(Acc),
        6 => (0..R, -12i64..=12).prop_map(|(i, j)| Regular(i, j)),
    ]
}

fn any_arc() -> impl Strategy<Value = Arc> {
    (point(), point()).prop_filter_map("not an arc", |(p, q)| Arc::try_new(p, q))
}

fn ordinary_arc() -> impl Strategy<Value = Arc> {
    any_arc().prop_filter("ordinary", |a| a.kind() == ArcKind::Ordinary)
}

fn small_arc(r: usize) -> impl Strategy<Value = Arc> {
    (0..r, -6i64..=6, 0..r, -6i64..=6)
        .prop_filter_map("not an arc", |(i, j, k, l)| Arc::try_new(Regular(i, j), Regular(k, l)))
}

fn spec_and_arc() -> impl Strategy<Value = (Tilting, Arc)> {
    (1usize..=R, any::<u64>()).prop_flat_map(|(r, seed)| {
        let t = Tilting::new(random_spec(&mut StdRng::seed_from_u64(seed), r)).expect("random specs are accepted");
        small_arc(r).prop_map(move |a| (t.clone(), a))
    })
}

proptest! {
    #[test]
    fn hom_to_itself_is_one(x in any_arc()) {
        prop_assert_eq!(hom_dim(x, x), 1);
    }

    #[test]
    fn ext_is_symmetric_for_ordinary_arcs(x in ordinary_arc(), y in ordinary_arc()) {
        prop_assert_eq!(ext1_dim(x, y), ext1_dim(y, x));
    }

    #[test]
    fn ext_is_shift_invariant(x in any_arc(), y in any_arc(), k in -5i64..=5) {
        prop_assert_eq!(ext1_dim(x, y), ext1_dim(shift(x, k), shift(y, k)));
    }

    #[test]
    fn nonzero_composites_are_nonzero_maps(x in any_arc(), y in any_arc(), z in any_arc()) {
        if composite_nonzero(x, y, z) {
            prop_assert_eq!(hom_dim(x, z), 1);
        }
    }

    #[test]
    fn triangle_middle_terms_sit_between(x in any_arc(), y in any_arc()) {
        if let Ok(tris) = exchange_triangles(x, y) {
            for tri in tris {
                for m in tri.middle {
                    prop_assert!(!crosses(m, x) && !crosses(m, y));
                    prop_assert_eq!(m.shared_endpoints(x).len(), 1);
                    prop_assert_eq!(m.shared_endpoints(y).len(), 1);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn accepted_specs_are_maximal((t, a) in spec_and_arc()) {
        if t.vertex_of_arc(a).is_none() {
            prop_assert!(!ct_vertices_crossing(&t, a).is_zero());
        }
    }

    #[test]
    fn index_is_additive((t, a) in spec_and_arc(), b in small_arc(1)) {
        let pair = [a, b];
        let sum = index(&t, a).unwrap().add(&index(&t, b).unwrap());
        prop_assert_eq!(index_of_list(&t, &pair).unwrap(), sum);
        let sum = coindex(&t, a).unwrap().add(&coindex(&t, b).unwrap());
        prop_assert_eq!(coindex_of_list(&t, &pair).unwrap(), sum);
    }

    #[test]
    fn shifted_tilting_arcs_have_variable_characters((t, _) in spec_and_arc(), pick in 0usize..64) {
        let verts = t.window_radius(4);
        let v = verts[pick % verts.len()];
        let x = character_of_arc(&t, shift(t.arc(v), 1)).unwrap();
        prop_assert_eq!(x.canonical_string(&t), format!("1*x({})", t.label(v)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_form_is_idempotent_and_parses_back((t, a) in spec_and_arc()) {
        let x = character_of_arc(&t, a).unwrap();
        prop_assert_eq!(x.canonicalize(&t), x.clone());
        let text = x.canonical_string(&t);
        let back = FormalSeries::parse(&t, &text).unwrap();
        prop_assert_eq!(back.canonical_string(&t), text);
    }

    #[test]
    fn instantiated_monomials_are_distinct((t, a) in spec_and_arc()) {
        let x = character_of_arc(&t, a).unwrap();
        let w = clustercat::character::window(&t, 8);
        prop_assert!(x.expand(&t, &w).values().all(|&c| c == 1));
    }
}
