//! The two-skeleton of the singular Coxeter complex `Cox_J`: vertices are
//! `(J, I)`-cosets over finitary `I`, edges are reduced one-step pairs, and
//! two-cells are braid relations whose both sides are reduced paths.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cosets::DoubleCoset;
use crate::coxeter::{CoxeterSystem, Element, GenSubset};
use crate::error::{Result, ScoxError};
use crate::expressions::{Sign, Step};
use crate::relations::RelationKind;

/// A directed edge `from → to` labelled by a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexEdge {
    /// Source vertex index.
    pub from: usize,
    /// Target vertex index.
    pub to: usize,
    /// The step from the right subset of `from` to that of `to`.
    pub step: Step,
}

/// A two-cell: the two sides of a braid relation as parallel vertex paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCell {
    /// Relation family name (`up-up`, `down-down`, `switchback`).
    pub kind: &'static str,
    /// Vertex path of the left-hand side.
    pub lhs: Vec<usize>,
    /// Vertex path of the right-hand side.
    pub rhs: Vec<usize>,
}

/// The complex `Cox_J` of a finite system.
#[derive(Clone, Debug)]
pub struct ComplexGraph {
    /// The left subset `J`.
    pub base: GenSubset,
    /// Vertices in canonical order (right subset, length, minimum's word).
    pub vertices: Vec<DoubleCoset>,
    /// `ℓ` of each vertex.
    pub grading: Vec<usize>,
    /// Edges, sorted.
    pub edges: Vec<ComplexEdge>,
    /// Two-cells, sorted.
    pub two_cells: Vec<TwoCell>,
    index: HashMap<DoubleCoset, usize>,
    out: HashMap<(usize, Step), usize>,
}

impl ComplexGraph {
    /// Index of a vertex.
    pub fn vertex_index(&self, p: &DoubleCoset) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The target of the edge leaving `v` by `step`, if that edge exists.
    pub fn edge_target(&self, v: usize, step: Step) -> Option<usize> {
        self.out.get(&(v, step)).copied()
    }

    /// Number of oriented paths from `source` to every vertex (edges strictly
    /// increase the grading, so the graph is acyclic).
    pub fn path_counts(&self, source: usize) -> Vec<u128> {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by_key(|&v| self.grading[v]);
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
        }
        let mut count = vec![0u128; self.vertices.len()];
        count[source] = 1;
        for v in order {
            if count[v] == 0 {
                continue;
            }
            for &w in &adj[v] {
                count[w] += count[v];
            }
        }
        count
    }
}

/// JSON form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    /// Left subset as labels.
    pub base: Vec<String>,
    /// Vertices.
    pub vertices: Vec<VertexJson>,
    /// Edges.
    pub edges: Vec<EdgeJson>,
    /// Two-cells.
    pub two_cells: Vec<TwoCellJson>,
}

/// JSON form of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    /// Vertex index.
    pub id: usize,
    /// Right subset as labels.
    pub right: Vec<String>,
    /// Reduced word of the minimum, as labels.
    pub min: Vec<String>,
    /// Reduced word of the maximum, as labels.
    pub max: Vec<String>,
    /// Length of the coset.
    pub length: usize,
}

/// JSON form of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    /// Source index.
    pub from: usize,
    /// Target index.
    pub to: usize,
    /// `+` or `-`.
    pub sign: String,
    /// Generator label.
    pub generator: String,
}

/// JSON form of a two-cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCellJson {
    /// Relation family name.
    pub kind: String,
    /// Vertex path of one side.
    pub lhs: Vec<usize>,
    /// Vertex path of the other side.
    pub rhs: Vec<usize>,
}

/// Outcome of a structural check; empty `failures` means success.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    /// Number of individual checks performed.
    pub checks: usize,
    /// Descriptions of the failed checks.
    pub failures: Vec<String>,
}

impl CheckReport {
    /// Whether every check passed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

impl CoxeterSystem {
    /// Whether `[p, q]` is reduced for the one-step move from `p` whose forward
    /// target is `q`: down-steps always; up-steps iff the minimum and the
    /// left redundancy are unchanged.
    fn one_step(&self, p: &DoubleCoset, step: Step) -> Option<DoubleCoset> {
        let i = step.apply(p.right());
        if !self.is_finitary(i) {
            return None;
        }
        let q = self.coset_unchecked(p.left(), p.max(), i);
        let reduced = match step.sign {
            Sign::Minus => true,
            Sign::Plus => q.min() == p.min() && q.left_redundancy() == p.left_redundancy(),
        };
        reduced.then_some(q)
    }

    /// Builds `Cox_J` with at most `bound` vertices.
    pub fn build_complex(&self, j: GenSubset, bound: usize) -> Result<ComplexGraph> {
        if !self.is_finite() {
            return Err(ScoxError::Domain("the complex is built for finite systems only".into()));
        }
        if !j.is_subset(self.all()) {
            return Err(ScoxError::Validation("left subset outside the generating set".into()));
        }
        let mut vertices = Vec::new();
        for i in self.all().subsets() {
            let mut cs = self.all_cosets(j, i, bound)?;
            cs.sort_by_cached_key(|p| (self.coset_lengths(p).total, self.reduced_word(p.min())));
            vertices.extend(cs);
            if vertices.len() > bound {
                return Err(ScoxError::Resource(format!("more than {bound} vertices")));
            }
        }
        let index: HashMap<DoubleCoset, usize> = vertices.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let grading: Vec<usize> = vertices.iter().map(|p| self.coset_lengths(p).total).collect();
        let mut edges = Vec::new();
        let mut out = HashMap::new();
        for (a, p) in vertices.iter().enumerate() {
            for g in 0..self.rank() {
                let step = if p.right().contains(g) { Step::minus(g) } else { Step::plus(g) };
                if let Some(q) = self.one_step(p, step) {
                    let b = index[&q];
                    edges.push(ComplexEdge { from: a, to: b, step });
                    out.insert((a, step), b);
                }
            }
        }
        edges.sort();
        let mut graph = ComplexGraph { base: j, vertices, grading, edges, two_cells: Vec::new(), index, out };
        let mut cells = BTreeSet::new();
        for a in 0..graph.vertices.len() {
            let i = graph.vertices[a].right();
            let walk = |steps: &[Step]| -> Option<Vec<usize>> {
                let mut path = vec![a];
                for &st in steps {
                    path.push(graph.edge_target(*path.last().unwrap(), st)?);
                }
                Some(path)
            };
            for g in 0..self.rank() {
                for h in 0..self.rank() {
                    if g == h {
                        continue;
                    }
                    let (sg, sh) = if i.contains(g) { (Step::minus(g), Sign::Minus) } else { (Step::plus(g), Sign::Plus) };
                    let after = sg.apply(i);
                    let second = if after.contains(h) { Step::minus(h) } else { Step::plus(h) };
                    let Some(lhs) = walk(&[sg, second]) else { continue };
                    if sg.sign == second.sign {
                        // Up-up / down-down: record once per unordered pair.
                        if g > h {
                            continue;
                        }
                        let Some(rhs) = walk(&[second, sg]) else { continue };
                        let kind = if sh == Sign::Plus { RelationKind::UpUp } else { RelationKind::DownDown };
                        if lhs.last() == rhs.last() {
                            cells.insert(TwoCell { kind: kind.name(), lhs, rhs });
                        }
                    } else if sg.sign == Sign::Plus {
                        let Ok(rel) = self.switchback(i, g, h) else { continue };
                        let Some(rhs) = walk(rel.rhs.steps()) else { continue };
                        if lhs.last() == rhs.last() {
                            cells.insert(TwoCell { kind: rel.kind.name(), lhs, rhs });
                        }
                    }
                }
            }
        }
        graph.two_cells = cells.into_iter().collect();
        Ok(graph)
    }

    /// Checks that `q ↦ p` (the `(∅, I)`-coset with `p̄ = q̄`) embeds `Cox_J`
    /// into `Cox_∅`: injective on vertices, landing in `{p : J ⊆ λ(p̄)}`, and
    /// carrying edges to edges and two-cells to two-cells.
    pub fn embed_check(&self, j: GenSubset, bound: usize) -> Result<CheckReport> {
        let cj = self.build_complex(j, bound)?;
        let c0 = self.build_complex(GenSubset::EMPTY, bound)?;
        let mut rep = CheckReport::default();
        let mut image = Vec::with_capacity(cj.vertices.len());
        for q in &cj.vertices {
            let p = self.coset_unchecked(GenSubset::EMPTY, q.max(), q.right());
            rep.check(p.max() == q.max(), || format!("image of {} has a different maximum", self.fmt_element(q.min())));
            rep.check(j.is_subset(self.left_descents(p.max())), || {
                format!("image of {} is outside the fundamental domain", self.fmt_element(q.min()))
            });
            image.push(c0.vertex_index(&p).expect("every (∅, I)-coset is a vertex"));
        }
        let distinct: HashSet<usize> = image.iter().copied().collect();
        rep.check(distinct.len() == image.len(), || "the vertex map is not injective".into());
        let expected: usize = c0.vertices.iter().filter(|p| j.is_subset(self.left_descents(p.max()))).count();
        rep.check(distinct.len() == expected, || format!("image has {} vertices, expected {expected}", distinct.len()));
        let edges0: HashSet<(usize, usize, Step)> = c0.edges.iter().map(|e| (e.from, e.to, e.step)).collect();
        for e in &cj.edges {
            rep.check(edges0.contains(&(image[e.from], image[e.to], e.step)), || {
                format!("edge {} → {} has no image edge", e.from, e.to)
            });
        }
        let cells0: HashSet<(&str, Vec<usize>, Vec<usize>)> =
            c0.two_cells.iter().map(|c| (c.kind, c.lhs.clone(), c.rhs.clone())).collect();
        for c in &cj.two_cells {
            let lhs: Vec<usize> = c.lhs.iter().map(|&v| image[v]).collect();
            let rhs: Vec<usize> = c.rhs.iter().map(|&v| image[v]).collect();
            rep.check(cells0.contains(&(c.kind, lhs, rhs)), || format!("{} cell at {} has no image cell", c.kind, c.lhs[0]));
        }
        Ok(rep)
    }

    /// Checks the hyperplane criterion at `J = ∅`: for `p ⊂ q` with `q` an
    /// `(∅, Is)`-coset, `[p, q]` is reduced iff `p` is on no positive side of a
    /// root hyperplane containing `q`, and `[q, p]` is reduced iff `p` is on no
    /// negative side of such a hyperplane.
    pub fn halfspace_check(&self, bound: usize) -> Result<CheckReport> {
        if !self.is_finite() {
            return Err(ScoxError::Domain("the hyperplane check needs a finite system".into()));
        }
        let mut rep = CheckReport::default();
        let mut reflections_of: HashMap<GenSubset, Vec<Element>> = HashMap::new();
        for i in self.all().subsets() {
            for p in self.all_cosets(GenSubset::EMPTY, i, bound)? {
                for s in self.all().difference(i).iter() {
                    let ip = i.with(s);
                    let q = self.coset_unchecked(GenSubset::EMPTY, p.min(), ip);
                    let refl = reflections_of.entry(ip).or_insert_with(|| self.parabolic_reflections(ip));
                    let pmin = p.min();
                    let qmin_inv = self.inv(q.min());
                    let pinv = self.inv(pmin);
                    let (mut on_plus, mut on_minus) = (false, false);
                    for r in refl.iter() {
                        // t = q̲ r q̲⁻¹ fixes q.
                        let t = self.mul(&self.mul(q.min(), r), &qmin_inv);
                        let conj = self.mul(&self.mul(&pinv, &t), pmin);
                        if self.is_in_parabolic(&conj, i) {
                            continue; // p lies on the hyperplane of t
                        }
                        if self.length(&self.mul(&t, pmin)) < self.length(pmin) {
                            on_plus = true;
                        } else {
                            on_minus = true;
                        }
                    }
                    let up_reduced = self.one_step(&p, Step::plus(s)).is_some();
                    rep.check(up_reduced == !on_plus, || {
                        format!("up-step criterion differs at {} + {}", self.fmt_element(pmin), self.label(s))
                    });
                    let down_reduced = self.coset_unchecked(GenSubset::EMPTY, q.max(), i) == p;
                    rep.check(down_reduced == !on_minus, || {
                        format!("down-step criterion differs at {} − {}", self.fmt_element(q.min()), self.label(s))
                    });
                }
            }
        }
        Ok(rep)
    }

    /// All reflections of the finite parabolic subgroup `W_I`.
    fn parabolic_reflections(&self, i: GenSubset) -> Vec<Element> {
        let elems = self.parabolic_elements(i, usize::MAX).expect("finitary");
        let mut set = HashSet::new();
        for w in &elems {
            let wi = self.inv(w);
            for s in i.iter() {
                set.insert(self.mul(&self.mul_gen(w, s), &wi));
            }
        }
        let mut v: Vec<Element> = set.into_iter().collect();
        v.sort();
        v
    }

    fn is_in_parabolic(&self, x: &Element, i: GenSubset) -> bool {
        self.length(&self.descend_right(x.clone(), i)) == 0
    }

    fn labels_of(&self, j: GenSubset) -> Vec<String> {
        j.iter().map(|g| self.label(g).to_string()).collect()
    }

    fn word_labels(&self, x: &Element) -> Vec<String> {
        self.reduced_word(x).into_iter().map(|g| self.label(g).to_string()).collect()
    }

    /// The JSON form of a complex.
    pub fn complex_json(&self, g: &ComplexGraph) -> ComplexJson {
        ComplexJson {
            base: self.labels_of(g.base),
            vertices: g
                .vertices
                .iter()
                .enumerate()
                .map(|(k, p)| VertexJson {
                    id: k,
                    right: self.labels_of(p.right()),
                    min: self.word_labels(p.min()),
                    max: self.word_labels(p.max()),
                    length: g.grading[k],
                })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    sign: e.step.sign.symbol().to_string(),
                    generator: self.label(e.step.gen).to_string(),
                })
                .collect(),
            two_cells: g
                .two_cells
                .iter()
                .map(|c| TwoCellJson { kind: c.kind.to_string(), lhs: c.lhs.clone(), rhs: c.rhs.clone() })
                .collect(),
        }
    }

    /// Exports a complex as `dot` or `json`; the output is byte-stable.
    pub fn export_complex(&self, g: &ComplexGraph, format: &str) -> Result<String> {
        match format {
            "json" => Ok(serde_json::to_string_pretty(&self.complex_json(g)).expect("serializable") + "\n"),
            "dot" => Ok(self.complex_dot(g)),
            other => Err(ScoxError::Usage(format!("unknown complex format '{other}' (expected dot or json)"))),
        }
    }

    fn complex_dot(&self, g: &ComplexGraph) -> String {
        let mut out = String::from("digraph cox {\n  rankdir=BT;\n");
        let mut by_rank: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (k, p) in g.vertices.iter().enumerate() {
            by_rank.entry(g.grading[k]).or_default().push(k);
            let _ = writeln!(
                out,
                "  v{k} [label=\"{}:{}\"];",
                self.fmt_subset(p.right()),
                self.fmt_word(&self.reduced_word(p.min()))
            );
        }
        for (rank, vs) in &by_rank {
            let names: Vec<String> = vs.iter().map(|v| format!("v{v}")).collect();
            let _ = writeln!(out, "  {{ rank=same; /* length {rank} */ {}; }}", names.join("; "));
        }
        for e in &g.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}{}\", color={}];",
                e.from,
                e.to,
                e.step.sign.symbol(),
                self.label(e.step.gen),
                PALETTE[e.step.gen % PALETTE.len()]
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_complex_has_thirteen_vertices() {
        let sys = CoxeterSystem::named("A2").unwrap();
        let g = sys.build_complex(GenSubset::EMPTY, 1000).unwrap();
        assert_eq!(g.vertices.len(), 13);
        for e in &g.edges {
            assert!(g.grading[e.to] > g.grading[e.from]);
        }
    }
}
