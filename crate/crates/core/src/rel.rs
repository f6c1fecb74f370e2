//! Finite binary relations over identifiers, with set semantics.

use std::collections::BTreeSet;

use crate::ident::Identifier;

/// A relation is a finite set of ordered identifier pairs; duplicates collapse.
pub type Relation = BTreeSet<(Identifier, Identifier)>;

/// Relational composition: `{(x, z) | exists y. (x, y) in r1 and (y, z) in r2}`.
pub fn compose(r1: &Relation, r2: &Relation) -> Relation {
    let mut out = Relation::new();
    for (x, y) in r1 {
        for (y2, z) in r2 {
            if y == y2 {
                out.insert((x.clone(), z.clone()));
            }
        }
    }
    out
}

/// Relational inverse: `{(y, x) | (x, y) in r}`.
pub fn inverse(r: &Relation) -> Relation {
    r.iter().map(|(x, y)| (y.clone(), x.clone())).collect()
}

/// Image of a point: `{y | (x, y) in r}`.
pub fn image(r: &Relation, x: &Identifier) -> BTreeSet<Identifier> {
    r.iter()
        .filter(|(a, _)| a == x)
        .map(|(_, b)| b.clone())
        .collect()
}

/// Preimage of a point: `{x | (x, y) in r}`.
pub fn preimage(r: &Relation, y: &Identifier) -> BTreeSet<Identifier> {
    r.iter()
        .filter(|(_, b)| b == y)
        .map(|(a, _)| a.clone())
        .collect()
}

/// Domain of a relation.
pub fn dom(r: &Relation) -> BTreeSet<Identifier> {
    r.iter().map(|(a, _)| a.clone()).collect()
}

/// Range of a relation.
pub fn ran(r: &Relation) -> BTreeSet<Identifier> {
    r.iter().map(|(_, b)| b.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn id(s: &str) -> Identifier {
        Identifier::new(s).unwrap()
    }

    fn pairs(ps: &[(&str, &str)]) -> Relation {
        ps.iter().map(|(a, b)| (id(a), id(b))).collect()
    }

    #[test]
    fn compose_single_link_chain() {
        assert_eq!(
            compose(&pairs(&[("a", "b")]), &pairs(&[("b", "c")])),
            pairs(&[("a", "c")])
        );
    }

    #[test]
    fn compose_empty_absorbs() {
        assert_eq!(
            compose(&pairs(&[("a", "b")]), &Relation::new()),
            Relation::new()
        );
    }

    #[test]
    fn inverse_of_binding() {
        assert_eq!(
            inverse(&pairs(&[("la", "lvrl1")])),
            pairs(&[("lvrl1", "la")])
        );
        assert_eq!(inverse(&Relation::new()), Relation::new());
    }

    #[test]
    fn image_of_missing_point_is_empty() {
        assert!(image(&Relation::new(), &id("x")).is_empty());
    }

    // Strategy: relations over a 6-element carrier.
    fn small_relation() -> impl Strategy<Value = Relation> {
        let elem = prop::sample::select(vec!["a", "b", "c", "d", "e", "f"]);
        prop::collection::btree_set((elem.clone(), elem).prop_map(|(x, y)| (id(x), id(y))), 0..10)
    }

    proptest! {
        #[test]
        fn compose_is_associative(r1 in small_relation(), r2 in small_relation(), r3 in small_relation()) {
            prop_assert_eq!(compose(&compose(&r1, &r2), &r3), compose(&r1, &compose(&r2, &r3)));
        }

        #[test]
        fn compose_shrinks_dom_and_ran(r1 in small_relation(), r2 in small_relation()) {
            let c = compose(&r1, &r2);
            prop_assert!(dom(&c).is_subset(&dom(&r1)));
            prop_assert!(ran(&c).is_subset(&ran(&r2)));
        }

        #[test]
        fn inverse_is_an_involution(r in small_relation()) {
            prop_assert_eq!(inverse(&inverse(&r)), r.clone());
            prop_assert_eq!(dom(&inverse(&r)), ran(&r));
            prop_assert_eq!(ran(&inverse(&r)), dom(&r));
        }
    }
}
