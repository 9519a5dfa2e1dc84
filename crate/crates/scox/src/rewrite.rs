//! Normalization of expressions to reduced ones, reduced-expression
//! enumeration and the reduced-expression graph.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::cosets::DoubleCoset;
use crate::coxeter::{CoxeterSystem, GenSubset};
use crate::error::{Result, ScoxError};
use crate::expressions::{Expression, Sign, Step};
use crate::relations::{Direction, RelationInstance, RelationKind};

/// Default cap on the number of reduced expressions enumerated per call.
pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;

/// The vertex cap: `SCOX_MAX_VERTICES` if set and valid, otherwise the default.
pub fn max_vertices() -> usize {
    std::env::var("SCOX_MAX_VERTICES").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_VERTICES)
}

/// One applied relation and the expression it produced.
#[derive(Clone, Debug)]
pub struct TraceStep {
    /// The relation, positioned in the expression it was applied to.
    pub relation: RelationInstance,
    /// The expression after applying it.
    pub result: Expression,
}

/// A derivation from `start` to `final_expr` by relation applications.
#[derive(Clone, Debug)]
pub struct RewriteTrace {
    /// The input expression.
    pub start: Expression,
    /// The applied relations in order.
    pub steps: Vec<TraceStep>,
    /// The final (reduced) expression.
    pub final_expr: Expression,
}

impl RewriteTrace {
    /// Re-applies every step from `start`, checking that each relation matches
    /// and that the recorded results agree.
    pub fn replay(&self, sys: &CoxeterSystem) -> Result<()> {
        let mut cur = self.start.clone();
        for (k, st) in self.steps.iter().enumerate() {
            let next = sys.apply(&cur, &st.relation)?;
            if next != st.result {
                return Err(ScoxError::StaleRedex(format!("trace step {k} does not reproduce its recorded result")));
            }
            cur = next;
        }
        if cur != self.final_expr {
            return Err(ScoxError::StaleRedex("trace does not end at its final expression".into()));
        }
        Ok(())
    }

    /// Text form: one line `step k: <kind>@<pos>  <expression>` per step.
    pub fn to_text(&self, sys: &CoxeterSystem) -> String {
        let mut out = format!("start: {}\n", sys.fmt_expression(&self.start));
        for (k, st) in self.steps.iter().enumerate() {
            let dir = match st.relation.direction {
                Direction::Forward => "",
                Direction::Backward => "'",
            };
            let _ = writeln!(
                out,
                "step {}: {}{}@{}  {}",
                k + 1,
                st.relation.kind.name(),
                dir,
                st.relation.position,
                sys.fmt_expression(&st.result)
            );
        }
        let _ = writeln!(out, "final: {}", sys.fmt_expression(&self.final_expr));
        out
    }
}

/// A sequence of braid moves; each instance applies to the expression
/// produced by the previous ones.
type Path = Arc<Vec<RelationInstance>>;

fn invert(r: &RelationInstance) -> RelationInstance {
    let direction = match r.direction {
        Direction::Forward => Direction::Backward,
        Direction::Backward => Direction::Forward,
    };
    RelationInstance { direction, ..r.clone() }
}

fn reversed(path: &[RelationInstance]) -> Vec<RelationInstance> {
    path.iter().rev().map(invert).collect()
}

fn shifted(path: &[RelationInstance], by: usize) -> Vec<RelationInstance> {
    path.iter().map(|r| RelationInstance { position: r.position + by, ..r.clone() }).collect()
}

/// Braid-move connections between reduced expressions of one coset, following
/// the induction of the singular Matsumoto theorem: every reduced expression
/// is connected to a canonical one, built forward from a canonical first step.
pub struct Rewriter<'a> {
    sys: &'a CoxeterSystem,
    canon: HashMap<DoubleCoset, Expression>,
    paths: HashMap<Expression, Path>,
}

impl<'a> Rewriter<'a> {
    /// A rewriter with empty caches.
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        Rewriter { sys, canon: HashMap::new(), paths: HashMap::new() }
    }

    /// Valid first steps of a reduced expression of the `(J, I)`-coset `p`,
    /// with the coset expressed by the remainder: `−s` for `s ∈ J ∖ K`
    /// (remainder: the `(J∖s, I)`-coset of `p̲`), then `+s` for
    /// `s ∈ λ(p̄) ∖ J` (remainder: the `(Js, I)`-coset of `p̄`).
    fn first_steps(&self, p: &DoubleCoset) -> Vec<(Step, DoubleCoset)> {
        let sys = self.sys;
        let mut out = Vec::new();
        for s in p.left().difference(p.left_redundancy()).iter() {
            out.push((Step::minus(s), sys.coset_unchecked(p.left().without(s), p.min(), p.right())));
        }
        for s in sys.left_descents(p.max()).difference(p.left()).iter() {
            out.push((Step::plus(s), sys.coset_unchecked(p.left().with(s), p.max(), p.right())));
        }
        out
    }

    fn remainder(&self, p: &DoubleCoset, step: Step) -> DoubleCoset {
        match step.sign {
            Sign::Minus => self.sys.coset_unchecked(p.left().without(step.gen), p.min(), p.right()),
            Sign::Plus => self.sys.coset_unchecked(p.left().with(step.gen), p.max(), p.right()),
        }
    }

    /// The canonical reduced expression of `p`: first canonical step, then the
    /// canonical expression of the remainder.
    pub fn canonical(&mut self, p: &DoubleCoset) -> Expression {
        if let Some(e) = self.canon.get(p) {
            return e.clone();
        }
        let e = if self.sys.coset_lengths(p).total == 0 {
            Expression::trivial(p.left())
        } else {
            let (step, rem) = self.first_steps(p).into_iter().next().expect("a coset of positive length has a first step");
            let tail = self.canonical(&rem);
            let mut steps = vec![step];
            steps.extend_from_slice(tail.steps());
            Expression::from_parts_unchecked(p.left(), steps)
        };
        self.canon.insert(p.clone(), e.clone());
        e
    }

    fn prepend(step: Step, start: GenSubset, tail: &Expression) -> Expression {
        let mut steps = vec![step];
        steps.extend_from_slice(tail.steps());
        Expression::from_parts_unchecked(start, steps)
    }

    /// Braid moves turning the reduced expression `k` into the canonical
    /// reduced expression of its coset.
    pub fn path_to_canonical(&mut self, k: &Expression) -> Path {
        if let Some(p) = self.paths.get(k) {
            return p.clone();
        }
        let sys = self.sys;
        let path = if k.width() == 0 {
            Arc::new(Vec::new())
        } else {
            let p = sys.evaluate(k);
            let k1 = k.steps()[0];
            let rest = k.subword(1, k.width());
            let mut moves = shifted(&self.path_to_canonical(&rest), 1);
            let (c1, _) = self.first_steps(&p).into_iter().next().expect("first step");
            if k1 != c1 {
                moves.extend(self.bridge(&p, k1, c1));
            }
            Arc::new(moves)
        };
        self.paths.insert(k.clone(), path.clone());
        path
    }

    /// Moves from `[a] ∘ canonical(remainder(a))` to `[b] ∘ canonical(remainder(b))`
    /// for two distinct valid first steps of `p`.
    fn bridge(&mut self, p: &DoubleCoset, a: Step, b: Step) -> Vec<RelationInstance> {
        let j = p.left();
        match (a.sign, b.sign) {
            (Sign::Minus, Sign::Minus) | (Sign::Plus, Sign::Plus) => {
                // Both orders of the two first steps extend to reduced expressions.
                let rem = self.remainder(&self.remainder(p, a), b);
                let tail = self.canonical(&rem);
                let m = Self::prepend(a, j, &Self::prepend(b, a.apply(j), &tail));
                let n = Self::prepend(b, j, &Self::prepend(a, b.apply(j), &tail));
                let kind = if a.sign == Sign::Plus { RelationKind::UpUp } else { RelationKind::DownDown };
                let swap = RelationInstance {
                    kind,
                    position: 0,
                    direction: Direction::Forward,
                    lhs: m.subword(0, 2),
                    rhs: n.subword(0, 2),
                };
                let mut moves = reversed(&shifted(&self.path_to_canonical(&m.subword(1, m.width())), 1));
                moves.push(swap);
                moves.extend(shifted(&self.path_to_canonical(&n.subword(1, n.width())), 1));
                moves
            }
            (Sign::Plus, Sign::Minus) => self.switchback_bridge(p, a.gen, b.gen, false),
            (Sign::Minus, Sign::Plus) => self.switchback_bridge(p, b.gen, a.gen, true),
        }
    }

    /// Bridge between a first step `+s` and a first step `−u` through the
    /// switchback relation of `(J, s, t)` with `u₁ = u`. `from_minus` selects
    /// the direction (`−u` side to `+s` side when true).
    fn switchback_bridge(&mut self, p: &DoubleCoset, s: usize, u: usize, from_minus: bool) -> Vec<RelationInstance> {
        let sys = self.sys;
        let j = p.left();
        let js = j.with(s);
        let wj_u = sys.conjugate_simple(&sys.w(j), u).expect("w_J permutes J");
        let t = sys.conjugate_simple(&sys.w(js), wj_u).expect("w_Js permutes Js");
        let rel = sys.switchback(j, s, t).expect("a rotation sequence exists since u ∈ J and s ∉ J");
        let after_plus = self.remainder(p, Step::plus(s));
        let rem = self.remainder(&after_plus, Step::minus(t));
        let tail = self.canonical(&rem);
        let a_expr = rel.lhs.then(&tail);
        let b_expr = rel.rhs.then(&tail);
        debug_assert!(sys.is_reduced(&a_expr) && sys.is_reduced(&b_expr));
        let a_path = self.path_to_canonical(&a_expr.subword(1, a_expr.width()));
        let b_path = self.path_to_canonical(&b_expr.subword(1, b_expr.width()));
        if from_minus {
            let mut moves = reversed(&shifted(&b_path, 1));
            moves.push(RelationInstance { direction: Direction::Backward, ..rel });
            moves.extend(shifted(&a_path, 1));
            moves
        } else {
            let mut moves = reversed(&shifted(&a_path, 1));
            moves.push(RelationInstance { direction: Direction::Forward, ..rel });
            moves.extend(shifted(&b_path, 1));
            moves
        }
    }

    /// Braid moves turning the reduced expression `from` into the reduced
    /// expression `to` of the same coset.
    pub fn connect(&mut self, from: &Expression, to: &Expression) -> Result<Vec<RelationInstance>> {
        let sys = self.sys;
        if !sys.is_reduced(from) || !sys.is_reduced(to) {
            return Err(ScoxError::Domain("connect expects reduced expressions".into()));
        }
        if sys.evaluate(from) != sys.evaluate(to) {
            return Err(ScoxError::Usage("the expressions express different cosets".into()));
        }
        let mut moves: Vec<RelationInstance> = self.path_to_canonical(from).to_vec();
        moves.extend(reversed(&self.path_to_canonical(to)));
        Ok(moves)
    }

    /// Normalizes `e` to a reduced expression for the same coset.
    ///
    /// Strategy: if a proper prefix or suffix is not reduced, normalize it
    /// first. Otherwise the last step is some `+t`; with `q` the coset of the
    /// prefix, either move the prefix (by braid moves) to a reduced expression
    /// ending in `+s` for some `s` outside the right redundancy of `q` and
    /// swap `+s +t` by up-up, or move it to one ending in `−t` and cancel
    /// `−t +t` by the quadratic relation.
    pub fn normalize(&mut self, e: &Expression) -> RewriteTrace {
        let mut host = e.clone();
        let mut steps = Vec::new();
        let hi = host.width();
        self.normalize_range(&mut host, 0, hi, &mut steps);
        debug_assert!(self.sys.is_reduced(&host));
        RewriteTrace { start: e.clone(), steps, final_expr: host }
    }

    fn apply_logged(&self, host: &mut Expression, r: RelationInstance, log: &mut Vec<TraceStep>) {
        let next = self.sys.apply(host, &r).expect("rewrite step matches the expression by construction");
        *host = next.clone();
        log.push(TraceStep { relation: r, result: next });
    }

    /// Normalizes `host[lo..hi]` in place; returns the new end index.
    fn normalize_range(&mut self, host: &mut Expression, lo: usize, mut hi: usize, log: &mut Vec<TraceStep>) -> usize {
        let sys = self.sys;
        loop {
            let sub = host.subword(lo, hi);
            if sys.is_reduced(&sub) {
                return hi;
            }
            let d = hi - lo;
            debug_assert!(d >= 2, "expressions of width at most one are reduced");
            if !sys.is_reduced(&host.subword(lo, hi - 1)) {
                let new_end = self.normalize_range(host, lo, hi - 1, log);
                hi = new_end + 1;
                continue;
            }
            if !sys.is_reduced(&host.subword(lo + 1, hi)) {
                hi = self.normalize_range(host, lo + 1, hi, log);
                continue;
            }
            let last = sub.steps()[d - 1];
            assert_eq!(last.sign, Sign::Plus, "a non-reduced expression with reduced prefix ends in an addition");
            let t = last.gen;
            let prefix = sub.subword(0, d - 1);
            let q = sys.evaluate(&prefix);
            let (j, i) = (q.left(), q.right());
            let l = q.right_redundancy();
            let (target, finish) = if l != i {
                let s = i.difference(l).first().expect("nonempty");
                let pred = sys.coset_unchecked(j, q.min(), i.without(s));
                let mut target = sys.some_rex(&pred);
                target.push(Step::plus(s));
                let host_pair = Expression::from_parts_unchecked(i.without(s), vec![Step::plus(s), Step::plus(t)]);
                let swapped = Expression::from_parts_unchecked(i.without(s), vec![Step::plus(t), Step::plus(s)]);
                let finish = RelationInstance {
                    kind: RelationKind::UpUp,
                    position: lo + target.width() - 1,
                    direction: Direction::Forward,
                    lhs: host_pair,
                    rhs: swapped,
                };
                (target, finish)
            } else {
                assert!(sys.is_right_descent(q.max(), t), "non-reduced step without a cancelling removal");
                let pred = sys.coset_unchecked(j, q.max(), i.with(t));
                let mut target = sys.some_rex(&pred);
                target.push(Step::minus(t));
                let finish = RelationInstance {
                    kind: RelationKind::StarQuadratic,
                    position: lo + target.width() - 1,
                    direction: Direction::Forward,
                    lhs: Expression::from_parts_unchecked(i.with(t), vec![Step::minus(t), Step::plus(t)]),
                    rhs: Expression::trivial(i.with(t)),
                };
                (target, finish)
            };
            let moves = self.connect(&prefix, &target).expect("both are reduced expressions of q");
            for r in moves {
                let r = RelationInstance { position: r.position + lo, ..r };
                self.apply_logged(host, r, log);
            }
            // Switchbacks change widths, so the range now ends after the target.
            hi = lo + target.width() + 1;
            let shrinks = finish.kind == RelationKind::StarQuadratic;
            self.apply_logged(host, finish, log);
            if shrinks {
                hi -= 2;
            }
        }
    }
}

/// The reduced-expression graph of a coset.
#[derive(Clone, Debug)]
pub struct RexGraph {
    /// All reduced expressions, sorted.
    pub vertices: Vec<Expression>,
    /// Edges `(a, b, kind, multiplicity)` with `a < b`, one per unordered pair
    /// and relation kind.
    pub edges: Vec<(usize, usize, &'static str, usize)>,
}

impl RexGraph {
    /// Whether the graph is connected (an empty graph is not).
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b, _, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// DOT rendering with vertices labelled by bracket form.
    pub fn to_dot(&self, sys: &CoxeterSystem) -> String {
        let mut out = String::from("graph rex {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{k} [label=\"{}\"];", sys.fmt_expression(v));
        }
        for &(a, b, kind, mult) in &self.edges {
            let _ = writeln!(out, "  v{a} -- v{b} [label=\"{kind}\", multiplicity={mult}];");
        }
        out.push_str("}\n");
        out
    }
}

/// Per-coset summary line of a Matsumoto verification.
#[derive(Clone, Debug)]
pub struct MatsumotoEntry {
    /// `J`.
    pub left: GenSubset,
    /// `I`.
    pub right: GenSubset,
    /// Canonical word of the minimum.
    pub min_word: Vec<usize>,
    /// Number of reduced expressions.
    pub rex_count: usize,
    /// Whether the reduced-expression graph is connected.
    pub connected: bool,
}

/// Result of checking every coset of a system.
#[derive(Clone, Debug, Default)]
pub struct MatsumotoReport {
    /// One entry per coset.
    pub entries: Vec<MatsumotoEntry>,
}

impl MatsumotoReport {
    /// Cosets whose graphs are disconnected.
    pub fn failures(&self) -> Vec<&MatsumotoEntry> {
        self.entries.iter().filter(|e| !e.connected).collect()
    }
}

/// Enumerates reduced expressions by backward search, memoized per coset.
pub struct RexEnumerator<'a> {
    sys: &'a CoxeterSystem,
    memo: HashMap<DoubleCoset, Arc<Vec<Expression>>>,
    cap: usize,
}

impl<'a> RexEnumerator<'a> {
    /// An enumerator with the given cap on the size of any single rex set.
    pub fn new(sys: &'a CoxeterSystem, cap: usize) -> Self {
        RexEnumerator { sys, memo: HashMap::new(), cap }
    }

    /// All reduced expressions of `p`, sorted.
    pub fn rex_set(&mut self, p: &DoubleCoset) -> Result<Arc<Vec<Expression>>> {
        if let Some(v) = self.memo.get(p) {
            return Ok(v.clone());
        }
        let sys = self.sys;
        let mut out = Vec::new();
        if sys.coset_lengths(p).total == 0 {
            out.push(Expression::trivial(p.left()));
        } else {
            for (step, pred) in sys.last_step_candidates(p) {
                let prefixes = self.rex_set(&pred)?;
                if out.len() + prefixes.len() > self.cap {
                    return Err(ScoxError::Resource(format!("more than {} reduced expressions", self.cap)));
                }
                for pre in prefixes.iter() {
                    let mut e = pre.clone();
                    e.push(step);
                    out.push(e);
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.memo.insert(p.clone(), out.clone());
        Ok(out)
    }

    /// The reduced-expression graph: vertices from [`Self::rex_set`], edges
    /// from braid-relation applications.
    pub fn rex_graph(&mut self, p: &DoubleCoset) -> Result<RexGraph> {
        let vertices = self.rex_set(p)?.to_vec();
        let index: HashMap<&Expression, usize> = vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut edge_map: HashMap<(usize, usize, &'static str), usize> = HashMap::new();
        for (a, v) in vertices.iter().enumerate() {
            for r in self.sys.enumerate_braid_redexes(v) {
                // Membership in the vertex set certifies the evaluation.
                let w = self.sys.apply_matched(v, &r)?;
                let b = *index.get(&w).ok_or_else(|| {
                    ScoxError::Usage("a braid move left the set of reduced expressions".into())
                })?;
                if a < b {
                    *edge_map.entry((a, b, r.kind.name())).or_insert(0) += 1;
                }
            }
        }
        let mut edges: Vec<_> = edge_map.into_iter().map(|((a, b, k), m)| (a, b, k, m)).collect();
        edges.sort();
        Ok(RexGraph { vertices, edges })
    }
}

impl CoxeterSystem {
    /// Normalizes `e` (see [`Rewriter::normalize`]).
    pub fn normalize(&self, e: &Expression) -> RewriteTrace {
        Rewriter::new(self).normalize(e)
    }

    /// All reduced expressions of `p`, with the vertex cap from the environment.
    pub fn rex_set(&self, p: &DoubleCoset) -> Result<Vec<Expression>> {
        Ok(RexEnumerator::new(self, max_vertices()).rex_set(p)?.to_vec())
    }

    /// The reduced-expression graph of `p`.
    pub fn rex_graph(&self, p: &DoubleCoset) -> Result<RexGraph> {
        RexEnumerator::new(self, max_vertices()).rex_graph(p)
    }

    /// Checks connectivity of the reduced-expression graph of every coset of
    /// every pair of finitary subsets.
    pub fn matsumoto_verify(&self) -> Result<MatsumotoReport> {
        let mut en = RexEnumerator::new(self, max_vertices());
        let mut report = MatsumotoReport::default();
        let finitary: Vec<GenSubset> = self.all().subsets().filter(|&j| self.is_finitary(j)).collect();
        for &j in &finitary {
            for &i in &finitary {
                for p in self.all_cosets(j, i, max_vertices())? {
                    let g = en.rex_graph(&p)?;
                    report.entries.push(MatsumotoEntry {
                        left: j,
                        right: i,
                        min_word: self.reduced_word(p.min()),
                        rex_count: g.vertices.len(),
                        connected: g.is_connected(),
                    });
                }
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sts_has_six_reduced_expressions() {
        let sys = CoxeterSystem::named("A2").unwrap();
        let w = sys.element_from_word(&[0, 1, 0]).unwrap();
        let p = sys.coset_of(GenSubset::EMPTY, &w, GenSubset::EMPTY).unwrap();
        let g = sys.rex_graph(&p).unwrap();
        assert_eq!(g.vertices.len(), 6);
        assert!(g.is_connected());
    }

    #[test]
    fn quadratic_pair_normalizes_in_one_step() {
        let sys = CoxeterSystem::named("A2").unwrap();
        let e = Expression::new(&sys, GenSubset::singleton(0), vec![Step::minus(0), Step::plus(0)]).unwrap();
        let tr = sys.normalize(&e);
        assert_eq!(tr.steps.len(), 1);
        assert_eq!(tr.final_expr, Expression::trivial(GenSubset::singleton(0)));
        tr.replay(&sys).unwrap();
    }
}
