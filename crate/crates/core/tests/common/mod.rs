#![allow(dead_code)]

use compositum::closure::CompositumSystem;
use compositum::galois::{make_compositum, GaloisContext};
use compositum::perm::{subgroup_closure, Permutation, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_c0de;
pub const CORPUS_SIZE: usize = 200;
pub const MAX_AMBIENT_ORDER: usize = 24;

pub fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

pub fn random_perm(rng: &mut ChaCha8Rng, degree: usize) -> Permutation {
    let mut v: Vec<usize> = (0..degree).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// A random transitive-or-not group of order at most `MAX_AMBIENT_ORDER`.
pub fn random_ambient(rng: &mut ChaCha8Rng) -> Subgroup {
    loop {
        let degree = rng.gen_range(2..=5);
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<Permutation> = (0..ngens).map(|_| random_perm(rng, degree)).collect();
        if let Ok(g) = subgroup_closure(degree, &gens, MAX_AMBIENT_ORDER) {
            return g;
        }
    }
}

pub fn random_element(rng: &mut ChaCha8Rng, g: &Subgroup) -> Permutation {
    g.elements().choose(rng).unwrap().clone()
}

/// A connected, unclosed system with one to three nodes.
pub fn random_system(rng: &mut ChaCha8Rng) -> CompositumSystem {
    let ambient = random_ambient(rng);
    let ctx = GaloisContext::new("random", ambient.clone()).unwrap();
    let mut sys = CompositumSystem::new(ctx.clone());
    let n = rng.gen_range(1..=3);
    let mut nodes = Vec::new();
    for i in 0..n {
        let k = rng.gen_range(0..=2);
        let gens: Vec<Permutation> = (0..k).map(|_| random_element(rng, &ambient)).collect();
        let node = ctx.field_node(format!("N{i}"), &gens).unwrap();
        sys.add_node(node.clone()).unwrap();
        nodes.push(node);
    }
    for i in 1..n {
        let phi = random_element(rng, &ambient);
        let v = make_compositum(&ctx, &nodes[i - 1], &nodes[i], &phi).unwrap();
        sys.add_compositum(v, None).unwrap();
    }
    for _ in 0..rng.gen_range(0..=2) {
        let a = nodes.choose(rng).unwrap();
        let b = nodes.choose(rng).unwrap();
        let phi = random_element(rng, &ambient);
        sys.add_compositum(make_compositum(&ctx, a, b, &phi).unwrap(), None)
            .unwrap();
    }
    sys
}

pub fn corpus() -> Vec<CompositumSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| random_system(&mut rng)).collect()
}

/// Symmetric groups S3 and S4, dihedral D4, alternating A4, cyclic C5.
pub fn named_groups() -> Vec<(&'static str, Subgroup)> {
    vec![
        ("S3", subgroup_closure(3, &[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap()),
        ("D4", subgroup_closure(4, &[perm(&[1, 2, 3, 0]), perm(&[3, 2, 1, 0])], 100).unwrap()),
        ("A4", subgroup_closure(4, &[perm(&[1, 2, 0, 3]), perm(&[1, 0, 3, 2])], 100).unwrap()),
        ("S4", subgroup_closure(4, &[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])], 100).unwrap()),
        ("C5", subgroup_closure(5, &[perm(&[1, 2, 3, 4, 0])], 100).unwrap()),
    ]
}
