//! Plumbing forests: surgery diagrams of framed unknots chained by Hopf
//! links, together with the local moves used to reduce them.
//!
//! The diagram class is deliberately small: vertices are unknots with
//! extended-rational framings, edges are single positive Hopf clasps, and
//! the underlying graph must stay a forest. Every move consumes the
//! diagram by reference and returns a fresh one; nothing is mutated in
//! place.

use crate::abelian::AbelianGroupStructure;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::rational::{rational_to_chain, slam_dunk_value, ExtendedRational};
use crate::seifert::SeifertInvariants;
use crate::Scalar;
use serde::de::Error as _;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Deserializer, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// One framed unknot. Labels are optional markers for distinguished
/// components and must be unique within a diagram when present.
#[derive(Clone, PartialEq, Eq)]
pub struct FramedVertex<T> {
    pub id: String,
    pub framing: ExtendedRational<T>,
    pub label: Option<String>,
}

impl<T: Scalar> FramedVertex<T> {
    pub fn new(id: impl Into<String>, framing: ExtendedRational<T>) -> Self {
        FramedVertex { id: id.into(), framing, label: None }
    }

    pub fn labeled(
        id: impl Into<String>,
        framing: ExtendedRational<T>,
        label: impl Into<String>,
    ) -> Self {
        FramedVertex { id: id.into(), framing, label: Some(label.into()) }
    }
}

impl<T: Scalar> fmt::Debug for FramedVertex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.id, self.framing.compact())?;
        if let Some(l) = &self.label {
            write!(f, "[{l}]")?;
        }
        Ok(())
    }
}

/// A forest of framed unknots. Vertex and edge order is insertion order
/// and is preserved by serialization, so output is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct PlumbingForest<T> {
    vertices: Vec<FramedVertex<T>>,
    edges: Vec<(usize, usize)>,
}

impl<T: Scalar> PlumbingForest<T> {
    pub fn new(vertices: Vec<FramedVertex<T>>, edges: &[(&str, &str)]) -> Result<Self> {
        let owned: Vec<(String, String)> =
            edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self::from_owned(vertices, owned)
    }

    fn from_owned(vertices: Vec<FramedVertex<T>>, edges: Vec<(String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut labels = HashSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.is_empty() {
                return Err(Error::InvalidDiagram("empty vertex id".to_owned()));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidDiagram(format!("duplicate vertex id `{}`", v.id)));
            }
            if let Some(l) = &v.label {
                if !labels.insert(l.clone()) {
                    return Err(Error::InvalidDiagram(format!("duplicate label `{l}`")));
                }
            }
        }

        let mut resolved = Vec::with_capacity(edges.len());
        let mut seen = HashSet::new();
        // union-find over vertex indices to reject cycles
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn root(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in &edges {
            let (&i, &j) = match (index.get(a), index.get(b)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(Error::UnknownVertex(a.clone().min(b.clone()))),
            };
            if i == j {
                return Err(Error::InvalidDiagram(format!("self-loop at `{a}`")));
            }
            let key = (i.min(j), i.max(j));
            if !seen.insert(key) {
                return Err(Error::InvalidDiagram(format!("duplicate edge `{a}`-`{b}`")));
            }
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri == rj {
                return Err(Error::InvalidDiagram(format!("cycle through `{a}`")));
            }
            parent[ri] = rj;
            resolved.push((i, j));
        }
        Ok(PlumbingForest { vertices, edges: resolved })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[FramedVertex<T>] {
        &self.vertices
    }

    pub fn vertex(&self, id: &str) -> Option<&FramedVertex<T>> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Vertex carrying the given label, if any.
    pub fn find_label(&self, label: &str) -> Option<&FramedVertex<T>> {
        self.vertices.iter().find(|v| v.label.as_deref() == Some(label))
    }

    /// Edges as id pairs, in insertion order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].id.as_str(), self.vertices[j].id.as_str()))
            .collect()
    }

    fn index_of(&self, id: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    fn neighbor_indices(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == i {
                out.push(b);
            } else if b == i {
                out.push(a);
            }
        }
        out
    }

    pub fn degree(&self, id: &str) -> Result<usize> {
        Ok(self.neighbor_indices(self.index_of(id)?).len())
    }

    /// Relation matrix of the surgered manifold's first homology: one
    /// generator per vertex; row i reads `p_i x_i + q_i * sum of
    /// neighbors`, where the framing of vertex i is `p_i/q_i`.
    pub fn presentation_matrix(&self) -> IntegerMatrix<T> {
        let k = self.vertices.len();
        let mut m = IntegerMatrix::zeros(k, k);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, v.framing.numerator().clone());
            let q = v.framing.denominator();
            for j in self.neighbor_indices(i) {
                m.set(i, j, q.clone());
            }
        }
        m
    }

    pub fn first_homology(&self) -> AbelianGroupStructure<T> {
        self.presentation_matrix().cokernel()
    }

    /// Rebuilds a diagram from a subset of vertices (by index), keeping
    /// the induced edges. Used by the moves, which all delete or replace
    /// vertices and never touch the survivors.
    fn restrict<F>(&self, keep: F) -> Self
    where
        F: Fn(usize) -> bool,
    {
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep(i) {
                remap[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| keep(a) && keep(b))
            .map(|&(a, b)| (remap[a], remap[b]))
            .collect();
        PlumbingForest { vertices, edges }
    }

    /// Slam-dunk: absorbs a rational-framed leaf into its integer-framed
    /// neighbor, whose framing becomes `n - 1/r`.
    pub fn move_slam_dunk(&self, leaf_id: &str) -> Result<Self> {
        let leaf = self.index_of(leaf_id)?;
        let neighbors = self.neighbor_indices(leaf);
        let [n] = neighbors.as_slice() else {
            return Err(Error::MovePrecondition(format!(
                "slam-dunk vertex `{leaf_id}` must have degree 1, found {}",
                neighbors.len()
            )));
        };
        let r = &self.vertices[leaf].framing;
        if r.is_infinite() {
            return Err(Error::MovePrecondition(format!(
                "slam-dunk leaf `{leaf_id}` must carry a finite framing"
            )));
        }
        let target = &self.vertices[*n].framing;
        if !target.is_integer() {
            return Err(Error::MovePrecondition(format!(
                "slam-dunk neighbor `{}` must have an integer framing, found {}",
                self.vertices[*n].id,
                target.compact()
            )));
        }
        let new_framing = slam_dunk_value(target, r)?;
        let mut out = self.restrict(|i| i != leaf);
        let idx = out.index_of(&self.vertices[*n].id).expect("neighbor kept");
        out.vertices[idx].framing = new_framing;
        Ok(out)
    }

    /// Cancellation: a 0-framed degree-1 meridian and its integer-framed
    /// neighbor annihilate. Realized as a slam-dunk with r = 0 followed
    /// by deletion of the resulting infinity-framed component, so every
    /// other edge at the neighbor is severed and its former neighbors
    /// end up mutually unlinked.
    pub fn move_cancel(&self, meridian_id: &str) -> Result<Self> {
        let m = self.index_of(meridian_id)?;
        let neighbors = self.neighbor_indices(m);
        let [w] = neighbors.as_slice() else {
            return Err(Error::MovePrecondition(format!(
                "cancelling meridian `{meridian_id}` must have degree 1, found {}",
                neighbors.len()
            )));
        };
        if !self.vertices[m].framing.is_zero() {
            return Err(Error::MovePrecondition(format!(
                "cancelling meridian `{meridian_id}` must be 0-framed, found {}",
                self.vertices[m].framing.compact()
            )));
        }
        if !self.vertices[*w].framing.is_integer() {
            return Err(Error::MovePrecondition(format!(
                "cancelled vertex `{}` must have an integer framing, found {}",
                self.vertices[*w].id,
                self.vertices[*w].framing.compact()
            )));
        }
        let w = *w;
        Ok(self.restrict(|i| i != m && i != w))
    }

    /// Banding: a 0-framed vertex with exactly two integer-framed
    /// neighbors `a`, `b` merges them into one vertex framed `n + m`.
    /// The merged vertex keeps the id and label of `a` (the neighbor
    /// listed first) and inherits all other edges of both.
    pub fn move_band(&self, unknot_id: &str) -> Result<Self> {
        let u = self.index_of(unknot_id)?;
        if !self.vertices[u].framing.is_zero() {
            return Err(Error::MovePrecondition(format!(
                "banding vertex `{unknot_id}` must be 0-framed, found {}",
                self.vertices[u].framing.compact()
            )));
        }
        let neighbors = self.neighbor_indices(u);
        let [a, b] = neighbors.as_slice() else {
            return Err(Error::MovePrecondition(format!(
                "banding vertex `{unknot_id}` must have exactly two neighbors, found {}",
                neighbors.len()
            )));
        };
        let (a, b) = (*a.min(b), *a.max(b));
        let (fa, fb) = (&self.vertices[a].framing, &self.vertices[b].framing);
        let (na, nb) = match (fa.integer_value(), fb.integer_value()) {
            (Ok(na), Ok(nb)) => (na, nb),
            _ => {
                return Err(Error::MovePrecondition(format!(
                    "banding neighbors `{}`, `{}` must have integer framings",
                    self.vertices[a].id, self.vertices[b].id
                )))
            }
        };

        let merged = FramedVertex {
            id: self.vertices[a].id.clone(),
            framing: ExtendedRational::from_integer(na + nb),
            label: self.vertices[a].label.clone().or_else(|| self.vertices[b].label.clone()),
        };
        let mut vertices = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if i == u || i == b {
                continue;
            }
            vertices.push(if i == a { merged.clone() } else { v.clone() });
        }
        let name = |i: usize| {
            if i == b {
                merged.id.clone()
            } else {
                self.vertices[i].id.clone()
            }
        };
        for &(x, y) in &self.edges {
            if x == u || y == u {
                continue;
            }
            edges.push((name(x), name(y)));
        }
        // contraction of a path inside a forest cannot create cycles or
        // double edges, but the class invariant is cheap to re-check
        Self::from_owned(vertices, edges)
            .map_err(|_| Error::MovePrecondition("banding leaves the forest class".to_owned()))
    }

    /// Inverse slam-dunk chain: replaces a non-integer finite framing on
    /// a vertex of degree at most 1 by the integer chain that collapses
    /// back onto it. An integer framing is a no-op, reported via
    /// [`ExpandedLeaf::changed`].
    pub fn expand_leaf(&self, leaf_id: &str) -> Result<ExpandedLeaf<T>> {
        let leaf = self.index_of(leaf_id)?;
        let deg = self.neighbor_indices(leaf).len();
        if deg > 1 {
            return Err(Error::MovePrecondition(format!(
                "expanded vertex `{leaf_id}` must have degree at most 1, found {deg}"
            )));
        }
        let r = &self.vertices[leaf].framing;
        if r.is_infinite() {
            return Err(Error::MovePrecondition(format!(
                "expanded vertex `{leaf_id}` must carry a finite framing"
            )));
        }
        if r.is_integer() {
            return Ok(ExpandedLeaf { diagram: self.clone(), changed: false });
        }
        let chain = rational_to_chain(r)?;
        let mut out = self.clone();
        out.vertices[leaf].framing = ExtendedRational::from_integer(chain[0].clone());
        let mut prev = leaf;
        let mut suffix = 0usize;
        for c in &chain[1..] {
            suffix += 1;
            let mut id = format!("{leaf_id}.{suffix}");
            while out.vertex(&id).is_some() {
                suffix += 1;
                id = format!("{leaf_id}.{suffix}");
            }
            out.vertices.push(FramedVertex::new(id, ExtendedRational::from_integer(c.clone())));
            let new = out.vertices.len() - 1;
            out.edges.push((prev, new));
            prev = new;
        }
        Ok(ExpandedLeaf { diagram: out, changed: true })
    }

    /// Connected components as standalone diagrams, ordered by their
    /// first vertex in insertion order.
    pub fn split_summands(&self) -> Vec<Self> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(x) = stack.pop() {
                for y in self.neighbor_indices(x) {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (0..count).map(|c| self.restrict(|i| comp[i] == c)).collect()
    }

    /// Reads Seifert invariants off a star: one 0-framed central vertex
    /// with every other vertex a leaf framed `p_i/q_i`, giving fibers
    /// `(p_i, q_i)` in insertion order. A lone 0-framed vertex is the
    /// empty fiber list.
    pub fn to_seifert(&self) -> Result<SeifertInvariants<T>> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::NotStarShaped("diagram is empty".to_owned()));
        }
        if self.split_summands().len() > 1 {
            return Err(Error::NotStarShaped(
                "diagram has several components; split it first".to_owned(),
            ));
        }
        let center = self
            .vertices
            .iter()
            .enumerate()
            .find(|(i, v)| v.framing.is_zero() && self.neighbor_indices(*i).len() == n - 1)
            .map(|(i, _)| i)
            .ok_or_else(|| {
                Error::NotStarShaped(
                    "no 0-framed central vertex adjacent to every other vertex".to_owned(),
                )
            })?;
        let mut fibers = Vec::with_capacity(n - 1);
        for (i, v) in self.vertices.iter().enumerate() {
            if i == center {
                continue;
            }
            if v.framing.is_zero() {
                return Err(Error::NotStarShaped(format!(
                    "arm `{}` framed 0 does not define a fiber",
                    v.id
                )));
            }
            fibers.push((v.framing.numerator().clone(), v.framing.denominator().clone()));
        }
        SeifertInvariants::new(fibers)
    }

    /// Graphviz text; the first token is always `graph`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph plumbing {\n");
        for v in &self.vertices {
            let mut label = format!("{}: {}", v.id, v.framing.compact());
            if let Some(l) = &v.label {
                label.push_str(&format!(" ({l})"));
            }
            out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", v.id, label));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                self.vertices[a].id, self.vertices[b].id
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Result of [`PlumbingForest::expand_leaf`]: `changed` is false when the
/// framing was already an integer and the diagram is returned as-is.
pub struct ExpandedLeaf<T> {
    pub diagram: PlumbingForest<T>,
    pub changed: bool,
}

/// Whether two 0-framed-candidate components with framings `a`, `b` and
/// algebraic linking `l` present the free group of rank two: the
/// cokernel of `[[a, l], [l, b]]` is Z^2 exactly when all three vanish.
pub fn two_component_criterion<T: Scalar>(
    a: &ExtendedRational<T>,
    b: &ExtendedRational<T>,
    l: &T,
) -> Result<bool> {
    let (a, b) = (a.integer_value()?, b.integer_value()?);
    let m = IntegerMatrix::from_rows(vec![vec![a, l.clone()], vec![l.clone(), b.clone()]])?;
    Ok(m.cokernel() == AbelianGroupStructure::free(2))
}

impl<T: Scalar> fmt::Debug for PlumbingForest<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|v| format!("{v:?}")).collect();
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", self.vertices[a].id, self.vertices[b].id))
            .collect();
        write!(f, "forest[{}; {}]", vs.join(", "), es.join(", "))
    }
}

impl<T: Scalar> Serialize for PlumbingForest<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(bound = "")]
        struct RawVertex<'a, U: Scalar> {
            id: &'a str,
            framing: &'a ExtendedRational<U>,
            #[serde(skip_serializing_if = "Option::is_none")]
            label: Option<&'a str>,
        }
        let vertices: Vec<RawVertex<'_, T>> = self
            .vertices
            .iter()
            .map(|v| RawVertex { id: &v.id, framing: &v.framing, label: v.label.as_deref() })
            .collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].id.as_str(), self.vertices[b].id.as_str()))
            .collect();
        let mut s = serializer.serialize_struct("PlumbingForest", 2)?;
        s.serialize_field("vertices", &vertices)?;
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for PlumbingForest<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "")]
        struct RawVertex<U: Scalar> {
            id: String,
            framing: ExtendedRational<U>,
            #[serde(default)]
            label: Option<String>,
        }
        #[derive(Deserialize)]
        #[serde(bound = "")]
        struct Raw<U: Scalar> {
            vertices: Vec<RawVertex<U>>,
            edges: Vec<(String, String)>,
        }
        let raw = Raw::<T>::deserialize(deserializer)?;
        let vertices = raw
            .vertices
            .into_iter()
            .map(|v| FramedVertex { id: v.id, framing: v.framing, label: v.label })
            .collect();
        PlumbingForest::from_owned(vertices, raw.edges).map_err(D::Error::custom)
    }
}
