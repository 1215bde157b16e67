mod common;

use std::collections::BTreeSet;

use common::perm;
use compositum::closure::{CompositumSystem, Derivation, DEFAULT_MAX_COMPOSITA};
use compositum::fixtures::closed_fixture;
use compositum::galois::{amalgamate, dual, identity_compositum, make_compositum, GaloisContext};
use compositum::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn corpus_closures_are_fixed_points() {
    for (i, sys) in common::corpus().iter().enumerate().step_by(4) {
        let closed = sys.close(DEFAULT_MAX_COMPOSITA).unwrap();
        assert!(closed.is_fixed_point().unwrap(), "system {i}");
        closed.replay_derivations().unwrap();
        let set: BTreeSet<_> = closed.composita().iter().cloned().collect();
        for n in closed.nodes() {
            assert!(set.contains(&identity_compositum(n)));
        }
        for v in closed.composita() {
            assert!(set.contains(&dual(v)));
            for w in closed.composita().iter().filter(|w| w.source() == v.target()) {
                for x in amalgamate(v, w).unwrap() {
                    assert!(set.contains(&x));
                }
            }
        }
        // closing again adds nothing
        let again = closed.close(DEFAULT_MAX_COMPOSITA).unwrap();
        assert_eq!(again.composita(), closed.composita());
        assert!(closed.verify_groups());
    }
}

#[test]
fn closure_is_deterministic() {
    let a = common::corpus();
    let b = common::corpus();
    for (x, y) in a.iter().zip(&b).take(30) {
        let cx = x.close(DEFAULT_MAX_COMPOSITA).unwrap();
        let cy = y.close(DEFAULT_MAX_COMPOSITA).unwrap();
        assert_eq!(cx.composita(), cy.composita());
        assert_eq!(cx.derivations(), cy.derivations());
    }
}

#[test]
fn inputs_come_first_in_derivation_log() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sys = common::random_system(&mut rng);
    let closed = sys.close(DEFAULT_MAX_COMPOSITA).unwrap();
    let inputs = sys.composita().len();
    assert!(closed.derivations()[..inputs]
        .iter()
        .all(|d| *d == Derivation::Input));
}

#[test]
fn base_field_on_corpus() {
    for sys in common::corpus().iter().step_by(5) {
        let closed = sys.close(DEFAULT_MAX_COMPOSITA).unwrap();
        let base = closed.base_field().unwrap();
        assert!(base.groups_closed());
        for n in closed.nodes() {
            let h = &base.h[n.id()];
            assert_eq!(base.indices[n.id()] * n.group().order(), h.order());
        }
        assert!(closed.verify_triangles(&base).all_pass);
    }
}

#[test]
fn fixture_closures() {
    let c2 = closed_fixture("c2_complex").unwrap();
    assert_eq!(c2.composita().len(), 2);
    let base = c2.base_field().unwrap();
    assert_eq!(base.h["C"].order(), 2);
    assert_eq!(base.indices["C"], 2);

    let single = closed_fixture("single_node").unwrap();
    assert_eq!(single.composita().len(), 1);
    let base = single.base_field().unwrap();
    assert_eq!(base.indices["A"], 1);

    let s3 = closed_fixture("s3_cbrt2").unwrap();
    let base = s3.base_field().unwrap();
    assert_eq!(base.h["A"].order(), 6);
    assert_eq!(base.indices["A"], 3);
}

#[test]
fn caps_and_preconditions() {
    let ctx = GaloisContext::from_generators("S3", 3, &[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 10)
        .unwrap();
    let a = ctx.field_node("A", &[]).unwrap();
    let b = ctx.field_node("B", &[]).unwrap();
    let mut sys = CompositumSystem::new(ctx.clone());
    sys.add_node(a.clone()).unwrap();
    sys.add_node(b.clone()).unwrap();
    sys.add_compositum(make_compositum(&ctx, &a, &a, &perm(&[1, 2, 0])).unwrap(), None)
        .unwrap();
    assert!(matches!(sys.close(3), Err(Error::ClosureCap { cap: 3 })));
    let closed = sys.close(DEFAULT_MAX_COMPOSITA).unwrap();
    assert!(!closed.is_connected());
    assert!(matches!(closed.base_field(), Err(Error::NotConnected)));
    assert!(matches!(sys.base_field(), Err(Error::NotClosed)));
    assert!(matches!(
        GaloisContext::from_generators("big", 8, &[perm(&[1, 2, 3, 4, 5, 6, 7, 0]), perm(&[1, 0, 2, 3, 4, 5, 6, 7])], 100),
        Err(Error::GroupOrderCap { cap: 100 })
    ));
}
