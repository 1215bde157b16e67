//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use compositum::bimodule::{
    end_field, fuse, tensor, weak_rigidity_check, FoldedCategory, Multiplicity, OneMorphism,
};
use compositum::closure::{CompositumSystem, DEFAULT_MAX_COMPOSITA};
use compositum::fixtures::closed_fixture;
use compositum::galois::{amalgamation_set, dual, identity_compositum, Compositum};
use compositum::numberfield::{
    decompose_etale, oracle_check, sweep_system, tensor_over, FieldEmbedding,
    NumberField, OracleContext, RatPoly, Realization,
};
use compositum::perm::{conjugate, decompose_into_double_cosets, double_coset, intersect, Permutation};

const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const ORACLE_LIMIT: Duration = Duration::from_secs(120);
const LAWS_LIMIT: Duration = Duration::from_secs(30);
const ORACLE_SEED: u64 = 17;
const CYCLOTOMIC: [usize; 4] = [4, 5, 8, 12];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        o.pass = false;
    }
    o.detail = format!("{} [{:.2?} / limit {:?}]", o.detail, elapsed, limit);
    o
}

fn composable(sys: &CompositumSystem) -> impl Iterator<Item = (&Compositum, &Compositum)> {
    sys.composita().iter().flat_map(move |v| {
        sys.composita()
            .iter()
            .filter(move |w| w.source() == v.target())
            .map(move |w| (v, w))
    })
}

fn c2_fixture() -> Outcome {
    let Ok(sys) = closed_fixture("c2_complex") else {
        return outcome(false, "fixture failed to close");
    };
    let simples = sys.composita().len();
    let a = sys.find_by_label("A").unwrap();
    let id = identity_compositum(a.source());
    let aa = fuse(a, a).unwrap();
    let e = end_field(a);
    let base = sys.base_field().unwrap();
    let index = base.indices["C"];
    let pass = simples == 2
        && aa == OneMorphism::simple(&id)
        && aa.multiplicity(&id) == 1
        && (e.degree_over_source, e.degree_over_target) == (1, 1)
        && index == 2;
    outcome(
        pass,
        format!(
            "simples={simples} A(x)A={{I:{}}} end=({},{}) index={index}",
            aa.multiplicity(&id),
            e.degree_over_source,
            e.degree_over_target
        ),
    )
}

fn real_complex_fixture() -> Outcome {
    let sys = closed_fixture("real_complex").unwrap();
    let folded = FoldedCategory::from_system(&sys, Multiplicity::Bimodule).unwrap();
    let unfolded = folded.unfold().unwrap();
    let ends: Vec<(usize, usize)> = sys
        .nodes()
        .map(|n| {
            let e = end_field(&identity_compositum(n));
            (e.degree_over_source, e.degree_over_target)
        })
        .collect();
    let identical = unfolded.fold() == folded;
    let pass = unfolded.objects.len() == 2 && ends.iter().all(|&e| e == (1, 1)) && identical;
    outcome(
        pass,
        format!(
            "objects={} end_degrees={ends:?} fold_identical={identical}",
            unfolded.objects.len()
        ),
    )
}

fn corpus_closure(closed: &mut Vec<CompositumSystem>) -> Outcome {
    let corpus = common::corpus();
    let mut bad = Vec::new();
    let mut max_index = 0;
    for (i, sys) in corpus.iter().enumerate() {
        if sys.context().ambient().order() > common::MAX_AMBIENT_ORDER {
            bad.push(format!("#{i}: ambient too large"));
            continue;
        }
        let c = match sys.close(DEFAULT_MAX_COMPOSITA) {
            Ok(c) => c,
            Err(e) => {
                bad.push(format!("#{i}: {e}"));
                continue;
            }
        };
        match c.base_field() {
            Ok(base) => {
                let groups_ok = base.h.values().all(|h| h.as_element_set().is_group());
                let indices_ok = c.nodes().all(|n| base.indices.contains_key(n.id()));
                max_index = max_index.max(base.indices.values().copied().max().unwrap_or(0));
                if !groups_ok || !indices_ok || !c.verify_triangles(&base).all_pass {
                    bad.push(format!("#{i}: base field checks"));
                }
            }
            Err(e) => bad.push(format!("#{i}: {e}")),
        }
        closed.push(c);
    }
    outcome(
        bad.is_empty() && corpus.len() >= common::CORPUS_SIZE,
        format!(
            "systems={} closed={} max_index={max_index} failures={bad:?}",
            corpus.len(),
            closed.len()
        ),
    )
}

fn double_coset_partition(closed: &[CompositumSystem]) -> Outcome {
    let mut checked = 0usize;
    let mut bad = 0usize;
    for sys in closed {
        for (v, w) in composable(sys) {
            checked += 1;
            let (ga, gb, gc) = (v.source().group(), v.target().group(), w.target().group());
            // the product set G_A φ_V G_B φ_W G_C, built directly
            let mut product = BTreeSet::new();
            for a in ga.elements() {
                let av = a.compose(v.rep()).unwrap();
                for b in gb.elements() {
                    let avbw = av.compose(b).unwrap().compose(w.rep()).unwrap();
                    for c in gc.elements() {
                        product.insert(avbw.compose(c).unwrap());
                    }
                }
            }
            let set = amalgamation_set(v, w).unwrap();
            let reps = decompose_into_double_cosets(&set, ga, gc).unwrap();
            let mut covered: BTreeSet<Permutation> = BTreeSet::new();
            let mut disjoint = true;
            let mut size_law = 0usize;
            for r in &reps {
                let dc = double_coset(ga, r, gc).unwrap();
                for p in dc.elements() {
                    disjoint &= covered.insert(p.clone());
                }
                let meet = intersect(ga, &conjugate(gc, r).unwrap()).unwrap();
                size_law += ga.order() * gc.order() / meet.order();
            }
            let set_eq: BTreeSet<Permutation> = set.elements().iter().cloned().collect();
            if !(disjoint && covered == product && set_eq == product && size_law == product.len()) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0 && checked > 0, format!("amalgamations={checked} violations={bad}"))
}

struct OracleTally {
    pairs: usize,
    passed: usize,
    max_radical: usize,
    errors: Vec<String>,
}

fn oracle_sweeps() -> (Outcome, OracleTally) {
    let mut tally = OracleTally {
        pairs: 0,
        passed: 0,
        max_radical: 0,
        errors: Vec::new(),
    };
    let mut reals: Vec<Realization> = CYCLOTOMIC
        .iter()
        .map(|&n| Realization::cyclotomic(n).unwrap())
        .collect();
    reals.push(Realization::s3_x3m2().unwrap());
    for real in reals {
        let real = Arc::new(real);
        let sys = sweep_system(&real).unwrap();
        let oc = OracleContext::new(real.clone(), ORACLE_SEED);
        for (v, w) in composable(&sys) {
            tally.pairs += 1;
            match oracle_check(&oc, v, w) {
                Ok(r) => {
                    tally.max_radical = tally.max_radical.max(r.radical_dim);
                    if r.pass {
                        tally.passed += 1;
                    } else {
                        tally.errors.push(format!("{}: {v} (x) {w} mismatch", real.name()));
                    }
                }
                Err(e) => tally.errors.push(format!("{}: {v} (x) {w}: {e}", real.name())),
            }
        }
    }

    let cube = NumberField::new(RatPoly::from_ints(&[-2, 0, 0, 1]), "c").unwrap();
    let e = FieldEmbedding::new(NumberField::rationals(), cube.clone(), RatPoly::zero()).unwrap();
    let t = tensor_over(&cube, &e, &cube, &e).unwrap();
    tally.max_radical = tally.max_radical.max(t.algebra.radical_dim());
    let mut dims: Vec<usize> = decompose_etale(&t.algebra, ORACLE_SEED, 32)
        .unwrap()
        .summands
        .iter()
        .map(|s| s.dim())
        .collect();
    dims.sort();
    let cube_ok = dims == [3, 6] && dims.iter().sum::<usize>() == 9;

    let pass = tally.errors.is_empty() && tally.passed == tally.pairs && cube_ok;
    let detail = format!(
        "pairs={} passed={} cbrt2(x)cbrt2={dims:?} errors={:?}",
        tally.pairs, tally.passed, tally.errors
    );
    (outcome(pass, detail), tally)
}

fn semisimplicity(tally: &OracleTally) -> Outcome {
    outcome(
        tally.max_radical == 0 && tally.pairs > 0 && tally.errors.is_empty(),
        format!("algebras={} max_radical_dim={}", tally.pairs + 1, tally.max_radical),
    )
}

fn fusion_laws(closed: &[CompositumSystem]) -> Outcome {
    let mut triples = 0usize;
    let mut bad = Vec::new();
    for (i, sys) in closed.iter().enumerate() {
        let set: BTreeSet<&Compositum> = sys.composita().iter().collect();
        match sys.close(DEFAULT_MAX_COMPOSITA) {
            Ok(again) if again.composita() == sys.composita() => {}
            _ => bad.push(format!("#{i}: closure not idempotent")),
        }
        for v in sys.composita() {
            let d = dual(v);
            if dual(&d) != *v || !set.contains(&d) {
                bad.push(format!("#{i}: dual of {v}"));
            }
            let l = fuse(&identity_compositum(v.source()), v).unwrap();
            let r = fuse(v, &identity_compositum(v.target())).unwrap();
            if l != OneMorphism::simple(v) || r != OneMorphism::simple(v) {
                bad.push(format!("#{i}: unit law at {v}"));
            }
        }
        for (u, v) in composable(sys) {
            let uv = fuse(u, v).unwrap();
            // (U V)* = V* U*
            let mut dualized = OneMorphism::zero();
            for (x, &m) in uv.terms() {
                dualized.add(&dual(x), m);
            }
            if dualized != fuse(&dual(v), &dual(u)).unwrap() {
                bad.push(format!("#{i}: dual of {u} (x) {v}"));
            }
            if uv.support().iter().any(|x| !set.contains(x)) {
                bad.push(format!("#{i}: fusion leaves the closure"));
            }
            for w in sys.composita().iter().filter(|w| w.source() == v.target()) {
                triples += 1;
                let left = tensor(&uv, &OneMorphism::simple(w), Multiplicity::Bimodule).unwrap();
                let right = tensor(&OneMorphism::simple(u), &fuse(v, w).unwrap(), Multiplicity::Bimodule)
                    .unwrap();
                if left != right {
                    bad.push(format!("#{i}: associativity at {u}, {v}, {w}"));
                }
            }
        }
    }
    bad.truncate(5);
    outcome(bad.is_empty(), format!("systems={} triples={triples} failures={bad:?}", closed.len()))
}

fn weak_rigidity(closed: &[CompositumSystem]) -> Outcome {
    let mut simples = 0usize;
    let mut bad = Vec::new();
    for sys in closed {
        for v in sys.composita() {
            simples += 1;
            match weak_rigidity_check(v) {
                Ok(r) if r.pass => {}
                Ok(r) => bad.push(format!("{r:?}")),
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    bad.truncate(5);
    outcome(bad.is_empty() && simples > 0, format!("simples={simples} failures={bad:?}"))
}

#[allow(clippy::vec_init_then_push)]
fn main() {
    let mut closed = Vec::new();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 c2 fixture", timed(FIXTURE_LIMIT, c2_fixture)));
    results.push(("2 real/complex fold", timed(FIXTURE_LIMIT, real_complex_fixture)));
    results.push(("3 corpus closure", timed(CORPUS_LIMIT, || corpus_closure(&mut closed))));
    results.push(("4 double coset partition", double_coset_partition(&closed)));
    let mut tally = None;
    results.push((
        "5 oracle equivalence",
        timed(ORACLE_LIMIT, || {
            let (o, t) = oracle_sweeps();
            tally = Some(t);
            o
        }),
    ));
    results.push(("6 semisimplicity", semisimplicity(tally.as_ref().unwrap())));
    results.push(("7 fusion laws", timed(LAWS_LIMIT, || fusion_laws(&closed))));
    results.push(("8 weak rigidity", weak_rigidity(&closed)));

    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
