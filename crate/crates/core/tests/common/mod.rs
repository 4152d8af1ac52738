//! Helpers shared by the integration suites: seeded random generators
//! and an independent orbit counter used as an oracle.
#![allow(dead_code)]

use kirbycalc::diagram::{FramedVertex, PlumbingForest};
use kirbycalc::{Diagram, Int, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_framing(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-9..=9i64);
    if rng.gen_bool(0.5) {
        Rational::of(num, 1)
    } else {
        Rational::of(num, rng.gen_range(1..=5i64))
    }
}

/// A random forest on up to `max_vertices` vertices with small random
/// framings; each vertex after the first attaches to an earlier one
/// with probability 0.75, so multi-component diagrams occur too.
pub fn random_forest(rng: &mut ChaCha8Rng, max_vertices: usize) -> Diagram {
    let count = rng.gen_range(1..=max_vertices);
    let ids: Vec<String> = (0..count).map(|i| format!("v{i}")).collect();
    let vertices: Vec<FramedVertex<Int>> = ids
        .iter()
        .map(|id| FramedVertex::new(id.clone(), random_framing(rng)))
        .collect();
    let mut edges = Vec::new();
    for i in 1..count {
        if rng.gen_bool(0.75) {
            let j = rng.gen_range(0..i);
            edges.push((ids[i].as_str(), ids[j].as_str()));
        }
    }
    PlumbingForest::new(vertices, &edges).expect("generated forest is valid")
}

/// Plain union-find over `0..n`, used to count orbits independently of
/// the library's own counting code.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            cur = std::mem::replace(&mut self.parent[cur], root);
        }
        root
    }

    pub fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
