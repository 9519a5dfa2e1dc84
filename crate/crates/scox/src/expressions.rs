//! Singular expressions: evaluation, forward paths, reducedness criteria,
//! lengths, structural operations and constructive reduced expressions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cosets::{CosetLengths, DoubleCoset};
use crate::coxeter::{CoxeterSystem, Element, Gen, GenSubset};
use crate::error::{Result, ScoxError};

/// Direction of a single step: add (`+`) or remove (`−`) a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    /// `+t`: `I_{i} = I_{i−1} ∪ {t}`.
    Plus,
    /// `−t`: `I_{i} = I_{i−1} ∖ {t}`.
    Minus,
}

impl Sign {
    /// The opposite sign.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `'+'` or `'-'`.
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One signed step `±t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    /// Add or remove.
    pub sign: Sign,
    /// The generator added or removed.
    pub gen: Gen,
}

impl Step {
    /// `+g`.
    pub fn plus(gen: Gen) -> Step {
        Step { sign: Sign::Plus, gen }
    }

    /// `−g`.
    pub fn minus(gen: Gen) -> Step {
        Step { sign: Sign::Minus, gen }
    }

    /// The step undoing this one.
    pub fn inverse(self) -> Step {
        Step { sign: self.sign.flip(), gen: self.gen }
    }

    /// Applies the step to a subset.
    pub fn apply(self, i: GenSubset) -> GenSubset {
        match self.sign {
            Sign::Plus => i.with(self.gen),
            Sign::Minus => i.without(self.gen),
        }
    }
}

/// A single-step singular expression `[I₀, I₁, …, I_d]`, stored as the start
/// subset and the signed steps between consecutive subsets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Expression {
    start: GenSubset,
    steps: Vec<Step>,
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}", self.start)?;
        for s in &self.steps {
            write!(f, " {}{}", s.sign.symbol(), s.gen)?;
        }
        write!(f, "]")
    }
}

impl Expression {
    /// Builds and validates an expression: every `+t` adds a new generator,
    /// every `−t` removes a present one, and every subset is finitary.
    pub fn new(sys: &CoxeterSystem, start: GenSubset, steps: Vec<Step>) -> Result<Self> {
        let e = Expression { start, steps };
        e.validate(sys)?;
        Ok(e)
    }

    /// Builds an expression from its subset sequence.
    pub fn from_subsets(sys: &CoxeterSystem, subsets: &[GenSubset]) -> Result<Self> {
        let (&start, rest) = subsets.split_first().ok_or_else(|| ScoxError::Validation("empty subset sequence".into()))?;
        let mut steps = Vec::with_capacity(rest.len());
        let mut prev = start;
        for &cur in rest {
            let added = cur.difference(prev);
            let removed = prev.difference(cur);
            let step = match (added.len(), removed.len()) {
                (1, 0) => Step::plus(added.first().expect("one element")),
                (0, 1) => Step::minus(removed.first().expect("one element")),
                _ => {
                    return Err(ScoxError::Validation(format!(
                        "consecutive subsets {} and {} do not differ by one generator",
                        sys.fmt_subset(prev),
                        sys.fmt_subset(cur)
                    )))
                }
            };
            steps.push(step);
            prev = cur;
        }
        Expression::new(sys, start, steps)
    }

    /// The width-0 expression `[J]`.
    pub fn trivial(j: GenSubset) -> Self {
        Expression { start: j, steps: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(start: GenSubset, steps: Vec<Step>) -> Self {
        Expression { start, steps }
    }

    fn validate(&self, sys: &CoxeterSystem) -> Result<()> {
        let all = sys.all();
        let mut cur = self.start;
        let check = |i: GenSubset| -> Result<()> {
            if !i.is_subset(all) {
                return Err(ScoxError::Validation(format!("subset {i:?} is not contained in S")));
            }
            if !sys.is_finitary(i) {
                return Err(ScoxError::Validation(format!("subset {} is not finitary", sys.fmt_subset(i))));
            }
            Ok(())
        };
        check(cur)?;
        for (k, st) in self.steps.iter().enumerate() {
            if st.gen >= sys.rank() {
                return Err(ScoxError::Validation(format!("step {k}: generator index {} out of range", st.gen)));
            }
            match st.sign {
                Sign::Plus if cur.contains(st.gen) => {
                    return Err(ScoxError::Validation(format!("step {k}: +{} but it is already present", sys.label(st.gen))))
                }
                Sign::Minus if !cur.contains(st.gen) => {
                    return Err(ScoxError::Validation(format!("step {k}: -{} but it is absent", sys.label(st.gen))))
                }
                _ => {}
            }
            cur = st.apply(cur);
            check(cur)?;
        }
        Ok(())
    }

    /// `I₀`.
    pub fn start(&self) -> GenSubset {
        self.start
    }

    /// `I_d`.
    pub fn end(&self) -> GenSubset {
        self.steps.iter().fold(self.start, |i, s| s.apply(i))
    }

    /// The signed steps.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Width `d`.
    pub fn width(&self) -> usize {
        self.steps.len()
    }

    /// `[I₀, …, I_d]`.
    pub fn subsets(&self) -> Vec<GenSubset> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for s in &self.steps {
            cur = s.apply(cur);
            out.push(cur);
        }
        out
    }

    /// The contiguous subexpression `[I_a, …, I_b]`.
    pub fn subword(&self, a: usize, b: usize) -> Expression {
        assert!(a <= b && b <= self.width(), "subword bounds out of range");
        let start = self.steps[..a].iter().fold(self.start, |i, s| s.apply(i));
        Expression { start, steps: self.steps[a..b].to_vec() }
    }

    /// Replaces the subword `[I_a, …, I_b]` with `replacement`, which must
    /// start at `I_a` and end at `I_b`.
    pub fn splice(&self, a: usize, b: usize, replacement: &Expression) -> Expression {
        let mut steps = self.steps[..a].to_vec();
        steps.extend_from_slice(&replacement.steps);
        steps.extend_from_slice(&self.steps[b..]);
        Expression { start: self.start, steps }
    }

    /// Concatenation without checks (`self` must end where `other` starts).
    pub(crate) fn then(&self, other: &Expression) -> Expression {
        debug_assert_eq!(self.end(), other.start);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Expression { start: self.start, steps }
    }

    /// Appends one step without checks.
    pub(crate) fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    /// The reversed expression `[I_d, …, I₀]`.
    pub fn reverse(&self) -> Expression {
        Expression { start: self.end(), steps: self.steps.iter().rev().map(|s| s.inverse()).collect() }
    }
}

/// A multistep expression `[[I₀ ⊆ K₁ ⊇ I₁ ⊆ … ⊆ K_m ⊇ I_m]]`, stored as the
/// alternating chain `I₀, K₁, I₁, …, K_m, I_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultistepExpression {
    chain: Vec<GenSubset>,
}

impl MultistepExpression {
    /// Validates containments and finitarity.
    pub fn new(sys: &CoxeterSystem, chain: Vec<GenSubset>) -> Result<Self> {
        if chain.is_empty() || chain.len() % 2 == 0 {
            return Err(ScoxError::Validation("a multistep chain has odd length I0,K1,I1,…,Km,Im".into()));
        }
        for (k, &x) in chain.iter().enumerate() {
            if !x.is_subset(sys.all()) || !sys.is_finitary(x) {
                return Err(ScoxError::Validation(format!("chain entry {k} is not a finitary subset")));
            }
            if k > 0 {
                let prev = chain[k - 1];
                let ok = if k % 2 == 1 { prev.is_subset(x) } else { x.is_subset(prev) };
                if !ok {
                    return Err(ScoxError::Validation(format!("chain entries {} and {k} violate the alternating containments", k - 1)));
                }
            }
        }
        Ok(MultistepExpression { chain })
    }

    /// Parses the short forms `[[K₁ ⊃ …]]` / `[[… ⊂ K_m]]` as well: a chain of
    /// any length whose consecutive entries are nested is padded so it
    /// alternates `⊆, ⊇`.
    pub fn from_nested(sys: &CoxeterSystem, entries: &[GenSubset]) -> Result<Self> {
        let (&first, rest) = entries.split_first().ok_or_else(|| ScoxError::Validation("empty chain".into()))?;
        let mut chain = vec![first];
        for &x in rest {
            let last = *chain.last().expect("nonempty");
            let expecting_up = chain.len() % 2 == 1;
            if expecting_up {
                if last.is_subset(x) {
                    chain.push(x);
                } else if x.is_subset(last) {
                    chain.push(last);
                    chain.push(x);
                } else {
                    return Err(ScoxError::Validation("chain entries are not nested".into()));
                }
            } else if x.is_subset(last) {
                chain.push(x);
            } else if last.is_subset(x) {
                chain.push(last);
                chain.push(x);
            } else {
                return Err(ScoxError::Validation("chain entries are not nested".into()));
            }
        }
        if chain.len() % 2 == 0 {
            let last = *chain.last().expect("nonempty");
            chain.push(last);
        }
        MultistepExpression::new(sys, chain)
    }

    /// The chain `I₀, K₁, I₁, …, K_m, I_m`.
    pub fn chain(&self) -> &[GenSubset] {
        &self.chain
    }
}

/// The forward path of an expression and its left redundancy sequence.
#[derive(Clone, Debug)]
pub struct ForwardPath {
    /// `p₀, …, p_d`, where `p_i` is an `(I₀, I_i)`-coset.
    pub cosets: Vec<DoubleCoset>,
    /// `K₀, …, K_d`.
    pub redundancies: Vec<GenSubset>,
}

/// The data of the lengths-add criterion for reducedness.
#[derive(Clone, Debug)]
pub struct ReducednessCertificate {
    /// `y_i = w_{I_i} w_{I_i ∩ I_{i+1}}⁻¹` for `0 ≤ i < d`.
    pub y: Vec<Element>,
    /// `z_i = w_{I_{i−1} ∩ I_i}⁻¹ w_{I_i}` for `1 ≤ i ≤ d` (index 0 unused, the identity).
    pub z: Vec<Element>,
    /// `a₀ = w_{I₀} ⋆ z₁ ⋆ … ⋆ z_d`, the maximum of the evaluated coset.
    pub a0: Element,
    /// Whether `a₀ = w_{I₀} · z₁ ⋯ z_d` with lengths adding.
    pub lengths_add: bool,
}

impl CoxeterSystem {
    /// The (unevaluated) star product of the `w_{I_i}`: the maximum of the coset.
    fn evaluate_max(&self, e: &Expression) -> Element {
        let mut x = self.w(e.start);
        let mut cur = e.start;
        for s in &e.steps {
            cur = s.apply(cur);
            if s.sign == Sign::Plus {
                x = self.ascend_right(x, cur);
            }
        }
        x
    }

    /// The double coset expressed by `e`: the `(I₀, I_d)`-coset with maximum
    /// `w_{I₀} ⋆ w_{I₁} ⋆ … ⋆ w_{I_d}`.
    pub fn evaluate(&self, e: &Expression) -> DoubleCoset {
        let max = self.evaluate_max(e);
        self.coset_unchecked(e.start, &max, e.end())
    }

    /// The forward path: `p_{i+1}` is the `(I₀, I_{i+1})`-coset containing
    /// `p̄_i` (the containing coset on up-steps, the maximal sub-coset on
    /// down-steps).
    pub fn forward_path(&self, e: &Expression) -> ForwardPath {
        let subsets = e.subsets();
        let mut cosets = Vec::with_capacity(subsets.len());
        let mut cur = self.coset_unchecked(e.start, &self.e(), e.start);
        for (k, &i) in subsets.iter().enumerate() {
            if k > 0 {
                cur = self.coset_unchecked(e.start, cur.max(), i);
            }
            cosets.push(cur.clone());
        }
        let redundancies = cosets.iter().map(|p| p.left_redundancy()).collect();
        ForwardPath { cosets, redundancies }
    }

    /// The lengths-add certificate (centred at 0).
    pub fn reducedness_certificate(&self, e: &Expression) -> ReducednessCertificate {
        let subsets = e.subsets();
        let d = e.width();
        let mut y = Vec::with_capacity(d);
        let mut z = vec![self.e()];
        for i in 0..d {
            let (a, b) = (subsets[i], subsets[i + 1]);
            y.push(self.mul(&self.w(a), &self.inv(&self.w(a & b))));
            z.push(self.mul(&self.inv(&self.w(a & b)), &self.w(b)));
        }
        let (a0, lengths_add) = self.center_product(&subsets, &y, &z, 0);
        ReducednessCertificate { y, z, a0, lengths_add }
    }

    fn center_product(&self, subsets: &[GenSubset], y: &[Element], z: &[Element], k: usize) -> (Element, bool) {
        let d = subsets.len() - 1;
        let center = self.w(subsets[k]);
        let mut star = self.e();
        let mut dot = self.e();
        let mut total = 0;
        let seq = y[..k].iter().chain(std::iter::once(&center)).chain(z[k + 1..=d].iter());
        for f in seq {
            star = self.star(&star, f);
            dot = self.mul(&dot, f);
            total += self.length(f);
        }
        let adds = self.length(&dot) == total;
        debug_assert!(!adds || dot == star);
        (star, adds)
    }

    /// Whether the lengths add in the product centred at `k` (any `0 ≤ k ≤ d`).
    pub fn lengths_add_at(&self, e: &Expression, k: usize) -> Result<bool> {
        if k > e.width() {
            return Err(ScoxError::Domain(format!("centre {k} exceeds the width {}", e.width())));
        }
        let cert = self.reducedness_certificate(e);
        Ok(self.center_product(&e.subsets(), &cert.y, &cert.z, k).1)
    }

    /// Reducedness via the lengths-add criterion.
    pub fn is_reduced(&self, e: &Expression) -> bool {
        self.reducedness_certificate(e).lengths_add
    }

    /// Williamson's criterion at step `i` (`0 ≤ i < d`): down-steps are always
    /// reduced; an up-step is reduced iff the forward path keeps the same
    /// minimum and the same redundancy.
    pub fn reduced_at(&self, e: &Expression, i: usize) -> Result<bool> {
        if i >= e.width() {
            return Err(ScoxError::Domain(format!("step index {i} out of range for width {}", e.width())));
        }
        let path = self.forward_path(e);
        Ok(step_reduced(&path, e, i))
    }

    /// Williamson's criterion over the whole forward path.
    pub fn is_reduced_williamson(&self, e: &Expression) -> bool {
        let path = self.forward_path(e);
        (0..e.width()).all(|i| step_reduced(&path, e, i))
    }

    /// The multistep criterion: `ℓ(w_{K₁} w_{I₁}⁻¹ w_{K₂} ⋯ w_{K_m})` equals the
    /// alternating sum of the `ℓ(w_{K_i})` and `ℓ(w_{I_i})`.
    pub fn is_reduced_multistep(&self, m: &MultistepExpression) -> bool {
        let ch = m.chain();
        let mut prod = self.e();
        let mut expected: isize = 0;
        let mm = (ch.len() - 1) / 2;
        for k in 1..=mm {
            let kk = ch[2 * k - 1];
            prod = self.mul(&prod, &self.w(kk));
            expected += self.longest_length(kk) as isize;
            if k < mm {
                let ii = ch[2 * k];
                prod = self.mul(&prod, &self.inv(&self.w(ii)));
                expected -= self.longest_length(ii) as isize;
            }
        }
        self.length(&prod) as isize == expected
    }

    /// `(ℓ⁺, ℓ⁻, ℓ)` of an expression: sums of the up- and down-step increments.
    pub fn expr_lengths(&self, e: &Expression) -> CosetLengths {
        let mut plus = 0;
        let mut minus = 0;
        let mut cur = e.start;
        for s in &e.steps {
            let next = s.apply(cur);
            match s.sign {
                Sign::Plus => plus += self.longest_length(next) - self.longest_length(cur),
                Sign::Minus => minus += self.longest_length(cur) - self.longest_length(next),
            }
            cur = next;
        }
        CosetLengths { plus, minus, total: plus + minus }
    }

    /// Concatenation `a ∘ b` and the verdict whether the lengths add in
    /// `p̄ · w_J⁻¹ · q̄` (`J` the junction); the verdict decides reducedness
    /// of the concatenation when `a` and `b` are reduced.
    pub fn concat(&self, a: &Expression, b: &Expression) -> Result<(Expression, bool)> {
        let j = a.end();
        if j != b.start {
            return Err(ScoxError::Usage(format!(
                "cannot concatenate: {} ends at {} but {} starts at {}",
                self.fmt_expression(a),
                self.fmt_subset(j),
                self.fmt_expression(b),
                self.fmt_subset(b.start)
            )));
        }
        let p = self.evaluate(a);
        let q = self.evaluate(b);
        let left = self.mul(p.max(), &self.inv(&self.w(j)));
        let prod = self.mul(&left, q.max());
        let verdict = self.length(&prod) == self.length(&left) + self.length(q.max());
        Ok((a.then(b), verdict))
    }

    /// Expands a multistep expression into a single-step one: each `I ⊆ K`
    /// leg adds `K ∖ I` in ascending generator order, each `K ⊇ I` leg
    /// removes `K ∖ I` in descending order.
    pub fn multistep_to_singlestep(&self, m: &MultistepExpression) -> Expression {
        let ch = m.chain();
        let mut e = Expression::trivial(ch[0]);
        for k in 1..ch.len() {
            let (a, b) = (ch[k - 1], ch[k]);
            if k % 2 == 1 {
                e = e.then(&up_leg(a, b));
            } else {
                e = e.then(&down_leg_descending(a, b));
            }
        }
        e
    }

    /// Groups maximal runs of additions followed by removals.
    pub fn singlestep_to_multistep(&self, e: &Expression) -> MultistepExpression {
        let subsets = e.subsets();
        let steps = e.steps();
        let mut chain = vec![subsets[0]];
        let mut i = 0;
        while i < steps.len() {
            while i < steps.len() && steps[i].sign == Sign::Plus {
                i += 1;
            }
            chain.push(subsets[i]);
            while i < steps.len() && steps[i].sign == Sign::Minus {
                i += 1;
            }
            chain.push(subsets[i]);
        }
        MultistepExpression { chain }
    }

    /// Valid final steps of a reduced expression of `p`, with the predecessor
    /// coset: `−t` for `t ∉ I` with `It` finitary and `t ∈ ρ(p̄)` (predecessor:
    /// the `(J, It)`-coset of `p̄`), then `+t` for `t ∈ I` with `p̲ t p̲⁻¹ ∉ J`
    /// (predecessor: the `(J, I∖t)`-coset of `p̲`), each in ascending order.
    pub(crate) fn last_step_candidates(&self, p: &DoubleCoset) -> Vec<(Step, DoubleCoset)> {
        let (j, i) = (p.left(), p.right());
        let mut out = Vec::new();
        for t in self.all().difference(i).iter() {
            let it = i.with(t);
            if self.is_right_descent(p.max(), t) && self.is_finitary(it) {
                out.push((Step::minus(t), self.coset_unchecked(j, p.max(), it)));
            }
        }
        for t in i.iter() {
            let conj_in_j = self.conjugate_simple(p.min(), t).is_some_and(|u| j.contains(u));
            if !conj_in_j {
                out.push((Step::plus(t), self.coset_unchecked(j, p.min(), i.without(t))));
            }
        }
        out
    }

    /// A reduced expression for `p`, built backward-greedily from the first
    /// valid final step.
    pub fn some_rex(&self, p: &DoubleCoset) -> Expression {
        let mut cur = p.clone();
        let mut rev = Vec::new();
        while self.coset_lengths(&cur).total > 0 {
            let (step, pred) = self
                .last_step_candidates(&cur)
                .into_iter()
                .next()
                .expect("every coset of positive length has a valid final step");
            rev.push(step);
            cur = pred;
        }
        debug_assert_eq!(cur.left(), cur.right());
        rev.reverse();
        Expression { start: cur.left(), steps: rev }
    }

    /// `[[J, M]] ∘ some_rex(q) ∘ [[N, I]]` with `M = λ(p̄)`, `N = ρ(p̄)` and `q`
    /// the `(M, N)`-coset of `p̄`. Both legs use ascending generator order.
    pub fn high_road(&self, p: &DoubleCoset) -> Expression {
        let m = self.left_descents(p.max());
        let n = self.right_descents(p.max());
        let q = self.coset_unchecked(m, p.max(), n);
        up_leg(p.left(), m).then(&self.some_rex(&q)).then(&down_leg_ascending(n, p.right()))
    }

    /// `[[J, K]] ∘ some_rex(core(p)) ∘ [[L, I]]`.
    pub fn low_road(&self, p: &DoubleCoset) -> Expression {
        let core = self.core(p);
        down_leg_descending(p.left(), p.left_redundancy()).then(&self.some_rex(&core)).then(&up_leg(p.right_redundancy(), p.right()))
    }

    /// Extends a reduced expression `e` for the `(I₀, J)`-coset `p` to a
    /// reduced expression ending at `K′` whose coset contains `w_S`:
    /// `e ∘ some_rex(q)` with `q` the `(J, K′)`-coset whose maximum is
    /// `w = w_J p̄⁻¹ w_S`. Requires `K′ ⊆ ρ(w)`.
    pub fn extend_to_longest(&self, e: &Expression, k_prime: GenSubset) -> Result<Expression> {
        if !self.is_reduced(e) {
            return Err(ScoxError::Domain("extend_to_longest expects a reduced expression".into()));
        }
        if !self.is_finitary(k_prime) {
            return Err(ScoxError::Domain(format!("{} is not finitary", self.fmt_subset(k_prime))));
        }
        let j = e.end();
        let p = self.evaluate(e);
        let w = self.mul(&self.mul(&self.w(j), &self.inv(p.max())), &self.w(self.all()));
        let k = self.right_descents(&w);
        if !k_prime.is_subset(k) {
            return Err(ScoxError::Domain(format!(
                "no reduced extension ends at {}: it must lie in ρ(w_J p̄⁻¹ w_S) = {}",
                self.fmt_subset(k_prime),
                self.fmt_subset(k)
            )));
        }
        let q = self.coset_unchecked(j, &w, k_prime);
        debug_assert_eq!(q.max(), &w);
        Ok(e.then(&self.some_rex(&q)))
    }

    /// `ι`: prepends `[∅, s₁, s₁s₂, …, J]` for the enumeration `order` of `J = I₀`.
    pub fn iota_embed(&self, e: &Expression, order: &[Gen]) -> Result<Expression> {
        check_order(e.start, order)?;
        let steps: Vec<Step> = order.iter().map(|&g| Step::plus(g)).chain(e.steps.iter().copied()).collect();
        Ok(Expression { start: GenSubset::EMPTY, steps })
    }

    /// `κ`: appends `[I_d, …, ∅]`, removing the generators of `I_d` in the
    /// given order.
    pub fn kappa_embed(&self, e: &Expression, order: &[Gen]) -> Result<Expression> {
        check_order(e.end(), order)?;
        let mut out = e.clone();
        for &g in order {
            out.push(Step::minus(g));
        }
        Ok(out)
    }

    /// Formats in bracket form `[∅,s,st,s,∅]`.
    pub fn fmt_expression(&self, e: &Expression) -> String {
        let parts: Vec<String> = e.subsets().into_iter().map(|i| self.fmt_subset(i)).collect();
        if parts.iter().any(|p| p.contains(',')) {
            format!("[{}]", parts.iter().map(|p| format!("{{{p}}}")).collect::<Vec<_>>().join(","))
        } else {
            format!("[{}]", parts.join(","))
        }
    }

    /// Formats in step form `[st] -s +u` (`[{s1,s2}] -s1` for multi-character labels).
    pub fn fmt_steps(&self, e: &Expression) -> String {
        let start = if e.start.is_empty() { String::new() } else { self.fmt_subset(e.start) };
        let mut out = if start.contains(',') { format!("[{{{start}}}]") } else { format!("[{start}]") };
        for s in &e.steps {
            out.push_str(&format!(" {}{}", s.sign.symbol(), self.label(s.gen)));
        }
        out
    }
}

fn step_reduced(path: &ForwardPath, e: &Expression, i: usize) -> bool {
    match e.steps[i].sign {
        Sign::Minus => true,
        Sign::Plus => {
            path.cosets[i].min() == path.cosets[i + 1].min() && path.redundancies[i] == path.redundancies[i + 1]
        }
    }
}

fn check_order(j: GenSubset, order: &[Gen]) -> Result<()> {
    let as_set: GenSubset = order.iter().copied().collect();
    if as_set != j || order.len() != j.len() {
        return Err(ScoxError::Usage(format!("order {order:?} is not an enumeration of {j:?}")));
    }
    Ok(())
}

/// `[[I ⊆ K]]` adding `K ∖ I` in ascending order.
pub(crate) fn up_leg(i: GenSubset, k: GenSubset) -> Expression {
    debug_assert!(i.is_subset(k));
    Expression { start: i, steps: k.difference(i).iter().map(Step::plus).collect() }
}

/// `[[K ⊇ I]]` removing `K ∖ I` in descending order.
pub(crate) fn down_leg_descending(k: GenSubset, i: GenSubset) -> Expression {
    debug_assert!(i.is_subset(k));
    let mut gens: Vec<Gen> = k.difference(i).iter().collect();
    gens.reverse();
    Expression { start: k, steps: gens.into_iter().map(Step::minus).collect() }
}

/// `[[K ⊇ I]]` removing `K ∖ I` in ascending order.
pub(crate) fn down_leg_ascending(k: GenSubset, i: GenSubset) -> Expression {
    debug_assert!(i.is_subset(k));
    Expression { start: k, steps: k.difference(i).iter().map(Step::minus).collect() }
}
