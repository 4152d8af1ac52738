//! Polygon identification model of the closed fiber surface.
//!
//! The closed fiber of the `n`-th family member is assembled from an
//! annulus whose two boundary circles are subdivided into `2d` directed
//! edges each, `d = (8n-1)(8n-2)`. Edges are labeled by residue pairs,
//! outer boundary mod `(8n-1, 8n-2)` and inner boundary mod
//! `(2, (8n-1)(4n-1))`: edge `2k` carries `+(k mod p, k mod q)` and edge
//! `2k+1` carries `-(k mod p, (k+1) mod q)`. Each label appears exactly
//! once with each sign, and the two carriers are glued head to tail.
//! Counting vertex orbits of the gluing gives the Euler characteristic
//! and hence the genus, independently of the branched-cover count in
//! [`crate::cover`].

use crate::cover;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
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

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Vertices a polygon model may allocate before the construction
/// refuses to run in memory.
const VERTEX_LIMIT: u64 = 20_000_000;

/// Matches the `2pq` directed boundary edges of one carrier into `pq`
/// head-to-tail pairs `(even index, odd index)` by their residue labels.
///
/// Fails with a structural error unless every label appears exactly
/// once with sign `+` and exactly once with sign `-`.
fn boundary_pairing(p: u64, q: u64) -> Result<Vec<(usize, usize)>> {
    let m = p
        .checked_mul(q)
        .ok_or_else(|| Error::Invalid("polygon side count exceeds u64".to_owned()))?;
    let mut by_label: HashMap<(u64, u64), usize> = HashMap::with_capacity(m as usize);
    for j in 0..m {
        let label = (j % p, (j + 1) % q);
        if by_label.insert(label, (2 * j + 1) as usize).is_some() {
            return Err(Error::SurfaceNotClosed(format!(
                "label ({}, {}) appears on two negative edges",
                label.0, label.1
            )));
        }
    }
    let mut pairs = Vec::with_capacity(m as usize);
    for k in 0..m {
        let label = (k % p, k % q);
        let Some(&partner) = by_label.get(&label) else {
            return Err(Error::SurfaceNotClosed(format!(
                "positive edge label ({}, {}) has no negative partner",
                label.0, label.1
            )));
        };
        pairs.push(((2 * k) as usize, partner));
    }
    Ok(pairs)
}

/// Glues one carrier's pairs into the union-find, head to tail. The
/// carrier's vertices are `offset .. offset + cycle`, with edge `i`
/// running from vertex `i` to vertex `i + 1` around the circle.
fn glue(uf: &mut UnionFind, offset: usize, cycle: usize, pairs: &[(usize, usize)]) {
    for &(a, b) in pairs {
        uf.union(offset + a, offset + (b + 1) % cycle);
        uf.union(offset + (a + 1) % cycle, offset + b);
    }
}

/// Orbit counts of the closed surface built from the annulus model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSurface {
    /// Copies of the fundamental domain tiling the annulus, `(8n-1)(8n-2)`.
    pub fundamental_domains: u64,
    /// Vertex classes after the boundary identifications.
    pub vertex_orbits: u64,
    /// `V - E + F` of the identified complex.
    pub euler_characteristic: i64,
    /// Genus of the resulting closed surface.
    pub genus: u64,
}

fn genus_from_chi(chi: i64) -> Result<u64> {
    if chi % 2 != 0 || chi > 2 {
        return Err(Error::Internal(format!(
            "closed surface Euler characteristic {chi} is not of the form 2 - 2g"
        )));
    }
    Ok(((2 - chi) / 2) as u64)
}

/// Builds the identified annulus model for the `n`-th member and counts
/// its cells.
///
/// The cut annulus is one face with `2d + 1` edge classes after gluing
/// (`d` per boundary plus the cut), so the Euler characteristic is the
/// vertex orbit count minus `2d`.
pub fn polygon_surface(n: u32) -> Result<PolygonSurface> {
    let d = cover::covering_degree(n)?;
    if 4 * d > VERTEX_LIMIT {
        return Err(Error::Invalid(format!(
            "polygon model needs {} vertices, above the in-memory limit",
            4 * d
        )));
    }
    let n64 = u64::from(n);
    let outer = boundary_pairing(8 * n64 - 1, 8 * n64 - 2)?;
    let inner = boundary_pairing(2, d / 2)?;

    let cycle = (2 * d) as usize;
    let mut uf = UnionFind::new(2 * cycle);
    glue(&mut uf, 0, cycle, &outer);
    glue(&mut uf, cycle, cycle, &inner);

    let vertex_orbits = uf.count() as u64;
    let chi = vertex_orbits as i64 - 2 * d as i64;
    Ok(PolygonSurface {
        fundamental_domains: d,
        vertex_orbits,
        euler_characteristic: chi,
        genus: genus_from_chi(chi)?,
    })
}

/// Vertex orbits and closed genus of a single `2pq`-gon with the same
/// labeling scheme, the rotation model of a torus knot fiber capped
/// off: `(orbits, genus)` with `orbits = p + q` and genus
/// `(p-1)(q-1)/2`, both computed rather than assumed.
pub fn rotation_polygon_counts(p: u64, q: u64) -> Result<(u64, u64)> {
    if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(Error::Invalid(
            "rotation polygon needs coprime positive side parameters".to_owned(),
        ));
    }
    let m = p
        .checked_mul(q)
        .ok_or_else(|| Error::Invalid("polygon side count exceeds u64".to_owned()))?;
    if 2 * m > VERTEX_LIMIT {
        return Err(Error::Invalid(format!(
            "polygon model needs {} vertices, above the in-memory limit",
            2 * m
        )));
    }
    let pairs = boundary_pairing(p, q)?;
    let cycle = (2 * m) as usize;
    let mut uf = UnionFind::new(cycle);
    glue(&mut uf, 0, cycle, &pairs);
    let orbits = uf.count() as u64;
    let chi = orbits as i64 - m as i64 + 1;
    Ok((orbits, genus_from_chi(chi)?))
}

/// The full identification table of [`polygon_surface`] as CSV with
/// header `boundary,edge,sign,i,j,partner`: one row per directed edge,
/// its residue label, and the index of the edge it is glued to.
pub fn edge_pairing_csv(n: u32) -> Result<String> {
    let d = cover::covering_degree(n)?;
    if 4 * d > VERTEX_LIMIT {
        return Err(Error::Invalid(format!(
            "pairing table needs {} rows, above the in-memory limit",
            4 * d
        )));
    }
    let n64 = u64::from(n);
    let mut out = String::from("boundary,edge,sign,i,j,partner\n");
    for (name, p, q) in [("outer", 8 * n64 - 1, 8 * n64 - 2), ("inner", 2, d / 2)] {
        let pairs = boundary_pairing(p, q)?;
        let mut partner_of = vec![0usize; (2 * d) as usize];
        for &(a, b) in &pairs {
            partner_of[a] = b;
            partner_of[b] = a;
        }
        for idx in 0..(2 * d) as usize {
            let k = (idx / 2) as u64;
            let (sign, i, j) = if idx % 2 == 0 {
                ("+", k % p, k % q)
            } else {
                ("-", k % p, (k + 1) % q)
            };
            out.push_str(&format!("{name},{idx},{sign},{i},{j},{}\n", partner_of[idx]));
        }
    }
    Ok(out)
}
