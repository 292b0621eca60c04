use std::path::Path;

use gsu_core::group::Group;
use gsu_core::io::load_group;

/// Brute-force isomorphism search over all bijections fixing the identity.
fn isomorphic(a: &Group, b: &Group) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.identity()] = b.identity();
    used[b.identity()] = true;
    fn extend(a: &Group, b: &Group, map: &mut [usize], used: &mut [bool], x: usize) -> bool {
        let n = a.order();
        if x == n {
            return (0..n).all(|i| (0..n).all(|j| map[a.mul(i, j)] == b.mul(map[i], map[j])));
        }
        if map[x] != usize::MAX {
            return extend(a, b, map, used, x + 1);
        }
        for y in 0..n {
            if !used[y] && a.element_order(x) == b.element_order(y) {
                map[x] = y;
                used[y] = true;
                if extend(a, b, map, used, x + 1) {
                    return true;
                }
                map[x] = usize::MAX;
                used[y] = false;
            }
        }
        false
    }
    extend(a, b, &mut map, &mut used, 0)
}

#[test]
fn bundled_tables_match_catalog() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/groups");
    let catalog = Group::small_groups_up_to_8();
    assert_eq!(catalog.len(), 14);
    for g in &catalog {
        let file = load_group(&dir.join(format!("{}.json", g.name()))).unwrap();
        assert_eq!(file.name(), g.name());
        assert!(isomorphic(&file, g), "{} differs from its bundled table", g.name());
    }
}

#[test]
fn catalog_groups_are_pairwise_distinct() {
    let catalog = Group::small_groups_up_to_8();
    for (i, a) in catalog.iter().enumerate() {
        for b in &catalog[i + 1..] {
            assert!(!isomorphic(a, b), "{} and {} coincide", a.name(), b.name());
        }
    }
}

#[test]
fn s3_fixtures_agree() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let cayley = load_group(&dir.join("s3_cayley.json")).unwrap();
    let perm = load_group(&dir.join("s3_perm.json")).unwrap();
    assert_eq!(cayley.cayley(), perm.cayley());
    assert_eq!(perm.cayley(), Group::symmetric3().cayley());
}
