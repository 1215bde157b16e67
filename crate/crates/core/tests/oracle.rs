use std::sync::Arc;

use compositum::fixtures::closed_fixture;
use compositum::galois::{dual, make_compositum, GaloisContext};
use compositum::numberfield::{oracle_check, sweep, sweep_system, OracleContext, Realization};
use compositum::perm::Permutation;
use compositum::Error;

fn p(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

#[test]
fn small_cyclotomic_sweeps() {
    for n in [3usize, 5, 7, 9] {
        let real = Arc::new(Realization::cyclotomic(n).unwrap());
        let sys = sweep_system(&real).unwrap();
        let report = sweep(&OracleContext::new(real, 1), &sys);
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.skipped, 0);
    }
}

#[test]
fn trivial_group_is_the_rationals() {
    let real = Arc::new(Realization::cyclotomic(2).unwrap());
    assert_eq!(real.group().order(), 1);
    let sys = sweep_system(&real).unwrap();
    let report = sweep(&OracleContext::new(real, 0), &sys);
    assert_eq!((report.pairs, report.passed), (1, 1));
}

#[test]
fn degree_cap_skips() {
    let real = Arc::new(Realization::s3_x3m2().unwrap());
    let ctx = GaloisContext::new("s3", real.group().clone())
        .unwrap()
        .with_realization(real.clone())
        .unwrap();
    let omega = ctx.field_node("O", &[]).unwrap();
    let v = make_compositum(&ctx, &omega, &omega, &p(&[0, 1, 2])).unwrap();
    let oc = OracleContext::new(real.clone(), 0).with_max_degree(4);
    assert!(matches!(oracle_check(&oc, &v, &v), Err(Error::DegreeCap { degree: 6, cap: 4 })));
    let cubic = ctx.field_node("A", &[p(&[0, 2, 1])]).unwrap();
    let x = make_compositum(&ctx, &cubic, &cubic, &p(&[1, 2, 0])).unwrap();
    let r = oracle_check(&OracleContext::new(real, 0), &x, &dual(&x)).unwrap();
    assert!(r.pass);
    let mut degrees: Vec<usize> = r.oracle.iter().map(|s| s.degree).collect();
    degrees.sort();

    assert_eq!(degrees, vec![6, 6]);
    assert_eq!(r.algebra_dim, 12);
    let mut fields: Vec<(usize, usize)> =
        r.oracle.iter().map(|s| (s.compositum_degree, s.multiplicity)).collect();
    fields.sort();
    assert_eq!(fields, vec![(3, 2), (6, 1)]);
}

#[test]
fn oracle_is_seed_independent() {
    let sys = closed_fixture("s3_cbrt2").unwrap();
    let real = sys.context().realization().unwrap().clone();
    let x = sys.find_by_label("X").unwrap();
    let a = oracle_check(&OracleContext::new(real.clone(), 1), x, &dual(x)).unwrap();
    let b = oracle_check(&OracleContext::new(real, 99), x, &dual(x)).unwrap();
    assert_eq!(a.oracle, b.oracle);
}

#[test]
fn fixtures_with_realizations_agree() {
    for name in ["c2_complex", "real_complex", "cyclotomic12"] {
        let sys = closed_fixture(name).unwrap();
        let real = sys.context().realization().unwrap().clone();
        let report = sweep(&OracleContext::new(real, 5), &sys);
        assert!(report.all_pass(), "{name}: {report:?}");
    }
}
