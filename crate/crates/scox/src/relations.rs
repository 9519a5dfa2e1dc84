//! The relations between singular expressions: the ∗-quadratic relation,
//! up-up and down-down commutations, and switchback relations driven by
//! rotation sequences.

use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Gen, GenSubset};
use crate::error::{Result, ScoxError};
use crate::expressions::{Expression, Sign, Step};

/// The rotation sequence of a triple `(J, s, t)` with `s ∉ J`, `Js`
/// finitary, `t ∈ Js` and `s ≠ w_{Js} t w_{Js}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSequence {
    /// `J`.
    pub j: GenSubset,
    /// `s = u₀`.
    pub s: Gen,
    /// `t = u_δ`.
    pub t: Gen,
    /// One period of the sequence, starting at `u_{−1}`: `period_seq[k] = u_{k−1}`.
    pub period_seq: Vec<Gen>,
    /// `δ`: the largest `k` such that the alternating expression
    /// `[I₀, L₁, I₁, …, L_k, I_k]` is reduced.
    pub delta: usize,
}

impl RotationSequence {
    /// `u_i` for any integer `i`.
    pub fn u(&self, i: isize) -> Gen {
        let p = self.period_seq.len() as isize;
        self.period_seq[(i + 1).rem_euclid(p) as usize]
    }

    /// The period of the sequence.
    pub fn period(&self) -> usize {
        self.period_seq.len()
    }

    /// `u₁, …, u_{δ−1}`: the `c_•` letters of the switchback right-hand side.
    pub fn c(&self) -> Vec<Gen> {
        (1..self.delta as isize).map(|i| self.u(i)).collect()
    }

    /// The steps `−u₁ +u₀ −u₂ +u₁ … −u_δ +u_{δ−1}` of the right-hand side.
    pub fn rhs_steps(&self) -> Vec<Step> {
        let mut steps = Vec::with_capacity(2 * self.delta);
        for k in 1..=self.delta as isize {
            steps.push(Step::minus(self.u(k)));
            steps.push(Step::plus(self.u(k - 1)));
        }
        steps
    }
}

/// The family a relation belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `[J − s + s] ≗ [J]`.
    StarQuadratic,
    /// `[J + s + t] ≗ [J + t + s]`.
    UpUp,
    /// `[J − s − t] ≗ [J − t − s]`.
    DownDown,
    /// `[J + s − t] ≗ [J − u₁ + s − … − t + u_{δ−1}]`.
    Switchback(Arc<RotationSequence>),
}

impl RelationKind {
    /// Short name used in traces.
    pub fn name(&self) -> &'static str {
        match self {
            RelationKind::StarQuadratic => "quadratic",
            RelationKind::UpUp => "up-up",
            RelationKind::DownDown => "down-down",
            RelationKind::Switchback(_) => "switchback",
        }
    }

    /// Whether this is a braid relation (everything but the quadratic one).
    pub fn is_braid(&self) -> bool {
        !matches!(self, RelationKind::StarQuadratic)
    }
}

/// Which side of the relation the host expression matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    /// The host contains `lhs`; applying replaces it with `rhs`.
    Forward,
    /// The host contains `rhs`; applying replaces it with `lhs`.
    Backward,
}

/// One applicable rewrite in a host expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    /// The relation family.
    pub kind: RelationKind,
    /// Index of the host subset where the matched subword starts.
    pub position: usize,
    /// Which side the host matches.
    pub direction: Direction,
    /// Left side of the relation.
    pub lhs: Expression,
    /// Right side of the relation.
    pub rhs: Expression,
}

impl RelationInstance {
    /// The side present in the host.
    pub fn matched(&self) -> &Expression {
        match self.direction {
            Direction::Forward => &self.lhs,
            Direction::Backward => &self.rhs,
        }
    }

    /// The side that replaces it.
    pub fn replacement(&self) -> &Expression {
        match self.direction {
            Direction::Forward => &self.rhs,
            Direction::Backward => &self.lhs,
        }
    }

    /// Whether applying changes the length (quadratic relations only).
    pub fn is_length_reducing(&self) -> bool {
        self.kind == RelationKind::StarQuadratic && self.direction == Direction::Forward
    }
}

/// One row of a switchback table: generators numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// `a`: the added generator `s = s_a`, with `J = S ∖ s_a`.
    pub a: usize,
    /// `b`: the removed generator `t = s_b`.
    pub b: usize,
    /// `c_• = u₁ … u_{δ−1}`.
    pub c: Vec<usize>,
}

impl CoxeterSystem {
    fn conj_longest(&self, j: GenSubset, u: Gen) -> Gen {
        self.conjugate_simple(&self.w(j), u).expect("conjugation by w_J permutes J")
    }

    /// The rotation sequence of `(J, s, t)` (cached per triple).
    pub fn rotation_sequence(&self, j: GenSubset, s: Gen, t: Gen) -> Result<Arc<RotationSequence>> {
        if s >= self.rank() || t >= self.rank() || !j.is_subset(self.all()) {
            return Err(ScoxError::Validation("generator or subset out of range".into()));
        }
        if j.contains(s) {
            return Err(ScoxError::Domain(format!("{} lies in J", self.label(s))));
        }
        let js = j.with(s);
        if !self.is_finite() || !self.is_finitary(js) {
            return Err(ScoxError::Domain(format!("{} is not finitary", self.fmt_subset(js))));
        }
        if !js.contains(t) {
            return Err(ScoxError::Domain(format!("{} does not lie in Js", self.label(t))));
        }
        let key = (j.bits(), s as u8, t as u8);
        if let Some(v) = self.rotation_cache().read().expect("rotation cache").get(&key) {
            return v.clone().ok_or(ScoxError::NoRotation);
        }
        let computed = self.compute_rotation(j, s, t).map(Arc::new);
        self.rotation_cache().write().expect("rotation cache").insert(key, computed.clone());
        computed.ok_or(ScoxError::NoRotation)
    }

    fn compute_rotation(&self, j: GenSubset, s: Gen, t: Gen) -> Option<RotationSequence> {
        let js = j.with(s);
        let u_m1 = self.conj_longest(js, t);
        if u_m1 == s {
            return None;
        }
        // u[k] = u_{k−1}; extend with u_{i+1} = w_{I_i} u_{i−1} w_{I_i}.
        let mut u = vec![u_m1, s];
        let extend = |u: &mut Vec<Gen>| {
            let n = u.len();
            let ui = u[n - 1];
            let prev = u[n - 2];
            u.push(self.conj_longest(js.without(ui), prev));
        };
        // δ: extend the alternating expression while it stays reduced,
        // checking each up-step by Williamson's criterion on the forward path.
        let mut cur = self.coset_unchecked(j, &self.e(), j);
        let mut delta = 0usize;
        let cap = 4 * (self.longest_length(js) + 2);
        loop {
            let k = delta + 1;
            while u.len() <= k + 1 {
                extend(&mut u);
            }
            let (uk, ukm1) = (u[k + 1], u[k]);
            let l_k = js.without(uk).without(ukm1);
            let down = self.coset_unchecked(j, cur.max(), l_k);
            let up = self.coset_unchecked(j, down.max(), js.without(uk));
            let reduced = down.min() == up.min() && down.left_redundancy() == up.left_redundancy();
            if !reduced {
                break;
            }
            cur = up;
            delta = k;
            assert!(delta < cap, "rotation sequence failed to terminate");
        }
        assert!(delta >= 1, "the first alternating step is always reduced");
        // Cross-checks: u_δ = t, the endpoint maximum is w_{Js}, and
        // u_{δ+1} = w_{Js} s w_{Js}.
        assert_eq!(u[delta + 1], t, "u_δ = t");
        assert_eq!(cur.max(), &self.w(js), "the alternating expression reaches w_Js");
        while u.len() < 2 * (delta + 1) + 2 {
            extend(&mut u);
        }
        assert_eq!(u[delta + 2], self.conj_longest(js, s), "u_(δ+1) = w_Js s w_Js");
        // Smallest period: the pair (u_{p−1}, u_p) returns to (u_{−1}, u_0).
        let full = 2 * (delta + 1);
        let period = (1..=full).find(|&p| full % p == 0 && u[p] == u[0] && u[p + 1] == u[1]).expect("2(δ+1)-periodic");
        Some(RotationSequence { j, s, t, period_seq: u[..period].to_vec(), delta })
    }

    /// The switchback relation of `(J, s, t)`: `lhs = [J + s − t]`,
    /// `rhs = [J − u₁ + s − … − t + u_{δ−1}]`.
    pub fn switchback(&self, j: GenSubset, s: Gen, t: Gen) -> Result<RelationInstance> {
        let rot = self.rotation_sequence(j, s, t)?;
        let lhs = Expression::from_parts_unchecked(j, vec![Step::plus(s), Step::minus(t)]);
        let rhs = Expression::from_parts_unchecked(j, rot.rhs_steps());
        debug_assert_eq!(self.evaluate(&lhs), self.evaluate(&rhs));
        Ok(RelationInstance { kind: RelationKind::Switchback(rot), position: 0, direction: Direction::Forward, lhs, rhs })
    }

    /// Every relation instance whose matched side is a contiguous subword of `e`.
    ///
    /// Quadratic relations appear in both directions (contraction of `−s+s` and
    /// expansion inserting `−s+s` at any subset containing `s`); up-up and
    /// down-down instances are emitted with the host's order as `lhs`;
    /// switchbacks are matched on either side by re-deriving `(J, s, t)` from
    /// the subword.
    pub fn enumerate_redexes(&self, e: &Expression) -> Vec<RelationInstance> {
        let mut out = self.enumerate_braid_redexes(e);
        let subsets = e.subsets();
        let steps = e.steps();
        for k in 0..steps.len().saturating_sub(1) {
            if steps[k].sign == Sign::Minus && steps[k + 1] == steps[k].inverse() {
                let j = subsets[k];
                out.push(RelationInstance {
                    kind: RelationKind::StarQuadratic,
                    position: k,
                    direction: Direction::Forward,
                    lhs: Expression::from_parts_unchecked(j, vec![steps[k], steps[k + 1]]),
                    rhs: Expression::trivial(j),
                });
            }
        }
        for (k, &j) in subsets.iter().enumerate() {
            for s in j.iter() {
                out.push(quadratic_expansion(j, s, k));
            }
        }
        out.sort_by_key(|r| r.position);
        out
    }

    /// The braid redexes (up-up, down-down, switchback) of `e`.
    pub fn enumerate_braid_redexes(&self, e: &Expression) -> Vec<RelationInstance> {
        let subsets = e.subsets();
        let steps = e.steps();
        let mut out = Vec::new();
        for k in 0..steps.len() {
            let j = subsets[k];
            if k + 1 < steps.len() {
                let (a, b) = (steps[k], steps[k + 1]);
                if a.sign == b.sign && a.gen != b.gen {
                    let kind = if a.sign == Sign::Plus { RelationKind::UpUp } else { RelationKind::DownDown };
                    out.push(RelationInstance {
                        kind,
                        position: k,
                        direction: Direction::Forward,
                        lhs: Expression::from_parts_unchecked(j, vec![a, b]),
                        rhs: Expression::from_parts_unchecked(j, vec![b, a]),
                    });
                }
                if a.sign == Sign::Plus && b.sign == Sign::Minus {
                    if let Ok(r) = self.switchback(j, a.gen, b.gen) {
                        out.push(RelationInstance { position: k, ..r });
                    }
                }
            }
            if let Some(r) = self.match_switchback_rhs(e, k) {
                out.push(r);
            }
        }
        out
    }

    /// Matches the right-hand side of a switchback starting at subset `k`.
    fn match_switchback_rhs(&self, e: &Expression, k: usize) -> Option<RelationInstance> {
        let steps = e.steps();
        if k + 1 >= steps.len() {
            return None;
        }
        let (a, b) = (steps[k], steps[k + 1]);
        if a.sign != Sign::Minus || b.sign != Sign::Plus || a.gen == b.gen {
            return None;
        }
        let j = e.subword(0, k).end();
        let (x, s) = (a.gen, b.gen);
        let js = j.with(s);
        if !self.is_finitary(js) {
            return None;
        }
        // u₁ = w_J u_{−1} w_J and u_{−1} = w_{Js} t w_{Js}.
        let u_m1 = self.conj_longest(j, x);
        let t = self.conj_longest(js, u_m1);
        let rot = self.rotation_sequence(j, s, t).ok()?;
        let rhs = rot.rhs_steps();
        if k + rhs.len() > steps.len() || steps[k..k + rhs.len()] != rhs[..] {
            return None;
        }
        Some(RelationInstance {
            kind: RelationKind::Switchback(rot),
            position: k,
            direction: Direction::Backward,
            lhs: Expression::from_parts_unchecked(j, vec![Step::plus(s), Step::minus(t)]),
            rhs: Expression::from_parts_unchecked(j, rhs),
        })
    }

    /// Applies a relation instance, checking that it matches and that the
    /// evaluation is unchanged.
    pub fn apply(&self, e: &Expression, r: &RelationInstance) -> Result<Expression> {
        let out = self.apply_matched(e, r)?;
        if self.evaluate(&out) != self.evaluate(e) {
            return Err(ScoxError::StaleRedex(format!("applying {} changed the evaluation", r.kind.name())));
        }
        Ok(out)
    }

    /// Applies a relation instance, checking only that its matched side is
    /// present at its position.
    pub(crate) fn apply_matched(&self, e: &Expression, r: &RelationInstance) -> Result<Expression> {
        let matched = r.matched();
        let k = r.position;
        let w = matched.width();
        if k + w > e.width() {
            return Err(ScoxError::StaleRedex(format!("position {k} + width {w} exceeds the host width {}", e.width())));
        }
        let sub = e.subword(k, k + w);
        if sub != *matched {
            return Err(ScoxError::StaleRedex(format!(
                "expected {} at position {k}, found {}",
                self.fmt_steps(matched),
                self.fmt_steps(&sub)
            )));
        }
        Ok(e.splice(k, k + w, r.replacement()))
    }

    /// The switchback table of an irreducible finite system: one row per
    /// ordered pair `(a, b)` with `s_a ≠ w₀ s_b w₀`, with `J = S ∖ s_a`.
    pub fn switchback_table(&self) -> Result<Vec<TableRow>> {
        if !self.is_finite() {
            return Err(ScoxError::Capability(format!("{} has no longest element", self.type_name())));
        }
        if self.components().len() != 1 {
            return Err(ScoxError::Domain(format!("{} is not irreducible", self.type_name())));
        }
        let all = self.all();
        let mut rows = Vec::new();
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                match self.rotation_sequence(all.without(a), a, b) {
                    Ok(rot) => rows.push(TableRow { a: a + 1, b: b + 1, c: rot.c().into_iter().map(|g| g + 1).collect() }),
                    Err(ScoxError::NoRotation) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(rows)
    }
}

fn quadratic_expansion(j: GenSubset, s: Gen, k: usize) -> RelationInstance {
    RelationInstance {
        kind: RelationKind::StarQuadratic,
        position: k,
        direction: Direction::Backward,
        lhs: Expression::from_parts_unchecked(j, vec![Step::minus(s), Step::plus(s)]),
        rhs: Expression::trivial(j),
    }
}

/// The quadratic expansion `[J] → [J − s + s]` at subset index `k`.
pub fn quadratic_expansion_at(e: &Expression, k: usize, s: Gen) -> Result<RelationInstance> {
    if k > e.width() {
        return Err(ScoxError::Domain(format!("position {k} out of range")));
    }
    let j = e.subword(0, k).end();
    if !j.contains(s) {
        return Err(ScoxError::Domain("the generator is not in the subset at that position".into()));
    }
    Ok(quadratic_expansion(j, s, k))
}
