mod common;

use compositum::bimodule::{
    end_field, fuse, fuse_cosets, fuse_with, inv_dim, split_count, tensor, weak_rigidity_check,
    FoldedCategory, FusionTable, Multiplicity, OneMorphism,
};
use compositum::closure::{CompositumSystem, DEFAULT_MAX_COMPOSITA};
use compositum::fixtures::closed_fixture;
use compositum::galois::{amalgamate, dual, identity_compositum};

fn closed_corpus(step: usize) -> Vec<CompositumSystem> {
    common::corpus()
        .iter()
        .step_by(step)
        .map(|s| s.close(DEFAULT_MAX_COMPOSITA).unwrap())
        .collect()
}

#[test]
fn support_is_the_amalgamation() {
    for sys in closed_corpus(3) {
        for v in sys.composita() {
            for w in sys.composita().iter().filter(|w| w.source() == v.target()) {
                let support = fuse(v, w).unwrap().support();
                assert_eq!(support, amalgamate(v, w).unwrap());
            }
        }
    }
}

#[test]
fn unit_and_dual_laws() {
    for sys in closed_corpus(2) {
        for v in sys.composita() {
            assert_eq!(dual(&dual(v)), *v);
            let l = identity_compositum(v.source());
            let r = identity_compositum(v.target());
            assert_eq!(fuse(&l, v).unwrap(), OneMorphism::simple(v));
            assert_eq!(fuse(v, &r).unwrap(), OneMorphism::simple(v));
            assert_eq!(dual(v).deg_left(), v.deg_right());
        }
    }
}

#[test]
fn dimensions_multiply() {
    for sys in closed_corpus(2) {
        for v in sys.composita() {
            for w in sys.composita().iter().filter(|w| w.source() == v.target()) {
                let m = fuse(v, w).unwrap();
                assert_eq!(m.left_dim(), v.deg_left() * w.deg_left());
                assert_eq!(m.right_dim(), v.deg_right() * w.deg_right());
                let total: usize = fuse_cosets(v, w)
                    .unwrap()
                    .iter()
                    .map(|s| v.source().group().order() / s.summand_group.order())
                    .sum();
                assert_eq!(total, v.deg_left() * w.deg_left());
            }
        }
    }
}

#[test]
fn bimodule_fusion_is_associative() {
    for sys in closed_corpus(4) {
        let cs = sys.composita();
        for u in cs {
            for v in cs.iter().filter(|v| v.source() == u.target()) {
                let uv = fuse(u, v).unwrap();
                for w in cs.iter().filter(|w| w.source() == v.target()) {
                    let left = tensor(&uv, &OneMorphism::simple(w), Multiplicity::Bimodule).unwrap();
                    let vw = fuse(v, w).unwrap();
                    let right = tensor(&OneMorphism::simple(u), &vw, Multiplicity::Bimodule).unwrap();
                    assert_eq!(left, right, "{u} {v} {w}");
                }
            }
        }
    }
}

#[test]
fn per_coset_counting_is_not_associative() {
    let mut witness = None;
    'search: for sys in closed_corpus(1) {
        let cs = sys.composita();
        for u in cs {
            for v in cs.iter().filter(|v| v.source() == u.target()) {
                for w in cs.iter().filter(|w| w.source() == v.target()) {
                    let rule = Multiplicity::PerCoset;
                    let left = tensor(&fuse_with(u, v, rule).unwrap(), &OneMorphism::simple(w), rule)
                        .unwrap();
                    let right = tensor(&OneMorphism::simple(u), &fuse_with(v, w, rule).unwrap(), rule)
                        .unwrap();
                    if left != right {
                        witness = Some((u.clone(), v.clone(), w.clone()));
                        break 'search;
                    }
                }
            }
        }
    }
    assert!(witness.is_some());
}

#[test]
fn weak_rigidity_and_end_fields() {
    for sys in closed_corpus(1) {
        for v in sys.composita() {
            let r = weak_rigidity_check(v).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.left >= 1);
            let e = end_field(v);
            assert_eq!(e.degree_over_source, r.left);
            assert_eq!(
                inv_dim(&fuse(v, &dual(v)).unwrap(), v.source()),
                v.deg_left()
            );
        }
        for n in sys.nodes() {
            let e = end_field(&identity_compositum(n));
            assert_eq!((e.degree_over_source, e.degree_over_target), (1, 1));
        }
    }
}

#[test]
fn fold_unfold_round_trip() {
    for sys in closed_corpus(3) {
        let folded = FoldedCategory::from_system(&sys, Multiplicity::Bimodule).unwrap();
        let unfolded = folded.unfold().unwrap();
        assert_eq!(unfolded.objects.len(), sys.nodes().count());
        assert_eq!(unfolded.fold(), folded);
        let total: usize = unfolded.homs.values().map(Vec::len).sum();
        assert_eq!(total, sys.composita().len());
    }
}

#[test]
fn fixture_fusion() {
    let c2 = closed_fixture("c2_complex").unwrap();
    let a = c2.find_by_label("A").unwrap();
    let aa = fuse(a, a).unwrap();
    assert_eq!(aa, OneMorphism::simple(&identity_compositum(a.source())));
    let table = FusionTable::from_system(&c2, Multiplicity::Bimodule).unwrap();
    assert!(table.to_text().contains("A (x) A = I_C"));

    let rc = closed_fixture("real_complex").unwrap();
    let unfolded = FoldedCategory::from_system(&rc, Multiplicity::Bimodule)
        .unwrap()
        .unfold()
        .unwrap();
    assert_eq!(unfolded.objects, vec!["C".to_string(), "R".to_string()]);
    // Hom(C, C) holds the identity and complex conjugation
    assert_eq!(unfolded.hom(0, 0).len(), 2);
    assert_eq!(unfolded.hom(1, 1).len(), 1);

    let s3 = closed_fixture("s3_cbrt2").unwrap();
    let base = s3.base_field().unwrap();
    let x = s3.find_by_label("X").unwrap();
    assert_eq!(split_count(&base, x).unwrap(), 6);
    let xx = fuse(x, &dual(x)).unwrap();
    assert_eq!(xx.multiplicity(&identity_compositum(x.source())), 2);
}
