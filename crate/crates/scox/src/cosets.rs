//! Parabolic double cosets as morphisms of the singular Coxeter monoid.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::coxeter::{CoxeterSystem, Element, GenSubset};
use crate::error::{Result, ScoxError};

/// A `(J, I)`-coset `W_J p W_I`, carried together with the pair `(J, I)`.
///
/// Equality and hashing use `(J, I, p̲)` only; the maximum and the two
/// redundancies are derived data computed on construction.
#[derive(Clone, Debug)]
pub struct DoubleCoset {
    left: GenSubset,
    right: GenSubset,
    min: Element,
    max: Element,
    left_red: GenSubset,
    right_red: GenSubset,
}

impl PartialEq for DoubleCoset {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right && self.min == other.min
    }
}

impl Eq for DoubleCoset {}

impl Hash for DoubleCoset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.left.hash(state);
        self.right.hash(state);
        self.min.hash(state);
    }
}

impl DoubleCoset {
    /// The left subset `J`.
    pub fn left(&self) -> GenSubset {
        self.left
    }

    /// The right subset `I`.
    pub fn right(&self) -> GenSubset {
        self.right
    }

    /// The minimal element `p̲`.
    pub fn min(&self) -> &Element {
        &self.min
    }

    /// The maximal element `p̄`.
    pub fn max(&self) -> &Element {
        &self.max
    }

    /// Left redundancy `K = J ∩ p̲ I p̲⁻¹`.
    pub fn left_redundancy(&self) -> GenSubset {
        self.left_red
    }

    /// Right redundancy `L = I ∩ p̲⁻¹ J p̲`.
    pub fn right_redundancy(&self) -> GenSubset {
        self.right_red
    }
}

/// The three lengths of a double coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CosetLengths {
    /// `ℓ⁺(p) = ℓ(p̄) − ℓ(w_J)`.
    pub plus: usize,
    /// `ℓ⁻(p) = ℓ(p̲) + ℓ(w_J) − ℓ(w_K)`.
    pub minus: usize,
    /// `ℓ(p) = ℓ⁺ + ℓ⁻`.
    pub total: usize,
}

impl CoxeterSystem {
    fn require_finitary(&self, j: GenSubset) -> Result<()> {
        if !j.is_subset(self.all()) {
            return Err(ScoxError::Domain(format!("{} is not a subset of S", self.fmt_subset(j))));
        }
        if !self.is_finitary(j) {
            return Err(ScoxError::Domain(format!("{} is not finitary", self.fmt_subset(j))));
        }
        Ok(())
    }

    /// Left-multiplies by generators of `j` while this increases length:
    /// `w_J ⋆ x`.
    pub(crate) fn ascend_left(&self, mut x: Element, j: GenSubset) -> Element {
        let mut xi = self.inv(&x);
        loop {
            match j.iter().find(|&s| !self.is_right_descent(&xi, s)) {
                Some(s) => {
                    x = self.gen_mul(s, &x);
                    xi = self.mul_gen(&xi, s);
                }
                None => return x,
            }
        }
    }

    /// The `(J, I)`-coset containing `w`.
    pub fn coset_of(&self, j: GenSubset, w: &Element, i: GenSubset) -> Result<DoubleCoset> {
        self.require_finitary(j)?;
        self.require_finitary(i)?;
        if !self.owns(w) {
            return Err(ScoxError::Usage("element belongs to a different Coxeter system".into()));
        }
        Ok(self.coset_unchecked(j, w, i))
    }

    pub(crate) fn coset_unchecked(&self, j: GenSubset, w: &Element, i: GenSubset) -> DoubleCoset {
        // Greedy descent: strip left descents in J and right descents in I,
        // lowest generator first, until none remain.
        let mut x = w.clone();
        let mut xi = self.inv(w);
        loop {
            if let Some(s) = i.iter().find(|&s| self.is_right_descent(&x, s)) {
                x = self.mul_gen(&x, s);
                xi = self.gen_mul(s, &xi);
                continue;
            }
            if let Some(s) = j.iter().find(|&s| self.is_right_descent(&xi, s)) {
                x = self.gen_mul(s, &x);
                xi = self.mul_gen(&xi, s);
                continue;
            }
            break;
        }
        self.coset_from_min(j, x, xi, i)
    }

    fn coset_from_min(&self, j: GenSubset, min: Element, min_inv: Element, i: GenSubset) -> DoubleCoset {
        let max = self.ascend_left(self.ascend_right(min.clone(), i), j);
        let roots = self.roots();
        // Kilmoyer: p̲ s p̲⁻¹ for s ∈ I is simple iff p̲(α_s) is a simple root.
        let mut left_red = GenSubset::EMPTY;
        for s in i.iter() {
            if let Some(t) = roots.root_gen[min.image(roots.simple[s] as usize)] {
                if j.contains(t) {
                    left_red = left_red.with(t);
                }
            }
        }
        let mut right_red = GenSubset::EMPTY;
        for t in j.iter() {
            if let Some(s) = roots.root_gen[min_inv.image(roots.simple[t] as usize)] {
                if i.contains(s) {
                    right_red = right_red.with(s);
                }
            }
        }
        DoubleCoset { left: j, right: i, min, max, left_red, right_red }
    }

    /// The identity `(J, J)`-coset `W_J`.
    pub fn identity_coset(&self, j: GenSubset) -> Result<DoubleCoset> {
        self.coset_of(j, &self.identity()?, j)
    }

    /// Composition `q ∘ p` of a `(K, J)`-coset `q` with a `(J, I)`-coset `p`:
    /// the `(K, I)`-coset with maximum `q̄ ⋆ p̄`.
    pub fn compose(&self, q: &DoubleCoset, p: &DoubleCoset) -> Result<DoubleCoset> {
        if q.right != p.left {
            return Err(ScoxError::Usage(format!(
                "cannot compose: middle objects {} and {} differ",
                self.fmt_subset(q.right),
                self.fmt_subset(p.left)
            )));
        }
        let m = self.star(&q.max, &p.max);
        Ok(self.coset_unchecked(q.left, &m, p.right))
    }

    /// The inverse coset `p⁻¹`: the `(I, J)`-coset of `p̄⁻¹`.
    pub fn coset_inverse(&self, p: &DoubleCoset) -> DoubleCoset {
        self.coset_unchecked(p.right, &self.inv(&p.max), p.left)
    }

    /// `ℓ⁺`, `ℓ⁻` and `ℓ` of a coset.
    pub fn coset_lengths(&self, p: &DoubleCoset) -> CosetLengths {
        let lj = self.longest_length(p.left);
        let lk = self.longest_length(p.left_red);
        let plus = self.length(&p.max) - lj;
        let minus = self.length(&p.min) + lj - lk;
        CosetLengths { plus, minus, total: plus + minus }
    }

    /// The core of `p`: the `(K, L)`-coset with minimum `p̲`.
    pub fn core(&self, p: &DoubleCoset) -> DoubleCoset {
        self.coset_unchecked(p.left_red, &p.min, p.right_red)
    }

    /// Whether `p` has full redundancy (`K = J` and `L = I`).
    pub fn has_full_redundancy(&self, p: &DoubleCoset) -> bool {
        p.left_red == p.left && p.right_red == p.right
    }

    /// Whether `w` lies in `p`.
    pub fn coset_contains(&self, p: &DoubleCoset, w: &Element) -> bool {
        self.coset_unchecked(p.left, w, p.right) == *p
    }

    /// All elements of `p`, by closure of `p̲` under left multiplication by
    /// `J` and right multiplication by `I`; at most `bound` elements.
    pub fn coset_elements(&self, p: &DoubleCoset, bound: usize) -> Result<Vec<Element>> {
        let mut seen: HashSet<Element> = HashSet::from([p.min.clone()]);
        let mut order = vec![p.min.clone()];
        let mut k = 0;
        while k < order.len() {
            let x = order[k].clone();
            let nexts = p.left.iter().map(|s| self.gen_mul(s, &x)).chain(p.right.iter().map(|s| self.mul_gen(&x, s)));
            for y in nexts {
                if seen.insert(y.clone()) {
                    if order.len() >= bound {
                        return Err(ScoxError::Resource(format!("coset has more than {bound} elements")));
                    }
                    order.push(y);
                }
            }
            k += 1;
        }
        order.sort_by_key(|x| (self.length(x), self.reduced_word(x)));
        Ok(order)
    }

    /// All `(J, I)`-cosets, ordered by `(ℓ(p̲), canonical word of p̲)`.
    ///
    /// Minimal representatives are generated by breadth-first search over
    /// right multiplication, keeping elements with no left descent in `J`
    /// and no right descent in `I`; the search is bounded by `|W| ≤ bound`.
    pub fn all_cosets(&self, j: GenSubset, i: GenSubset, bound: usize) -> Result<Vec<DoubleCoset>> {
        self.require_finitary(j)?;
        self.require_finitary(i)?;
        let mut out: Vec<DoubleCoset> = Vec::new();
        // Minimal (J, ∅)-representatives form a lower set in right weak order
        // (prefixes of J-minimal elements are J-minimal), so BFS through them
        // reaches every one; filter on the right at the end.
        let e = self.identity()?;
        let mut seen: HashSet<Element> = HashSet::from([e.clone()]);
        let mut layer = vec![e];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for x in &layer {
                if i.iter().all(|s| !self.is_right_descent(x, s)) {
                    let xi = self.inv(x);
                    out.push(self.coset_from_min(j, x.clone(), xi, i));
                }
                for s in 0..self.rank() {
                    if self.is_right_descent(x, s) {
                        continue;
                    }
                    let y = self.mul_gen(x, s);
                    if j.iter().any(|t| self.is_left_descent(&y, t)) {
                        continue;
                    }
                    if seen.insert(y.clone()) {
                        if seen.len() > bound {
                            return Err(ScoxError::Resource(format!("more than {bound} minimal representatives")));
                        }
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        out.sort_by_key(|p| (self.length(&p.min), self.reduced_word(&p.min)));
        Ok(out)
    }

    /// Transports `p` from a factor system into the product `prod = base × other`
    /// and adds the finitary subset `j` of the second factor on both sides:
    /// the `(I₀ ⊔ J, I_d ⊔ J)`-coset with maximum `p̄ · w_J` and minimum `p̲`.
    ///
    /// `j` is given in the generator indices of `other`; in `prod` those
    /// generators are shifted by `base.rank()`.
    pub fn plus_j(prod: &CoxeterSystem, base: &CoxeterSystem, p: &DoubleCoset, j: GenSubset) -> Result<DoubleCoset> {
        let n = base.rank();
        if prod.rank() < n || !j.is_subset(GenSubset::full(prod.rank() - n)) {
            return Err(ScoxError::Usage("subset does not belong to the second factor".into()));
        }
        let shifted = GenSubset::from_bits(j.bits() << n);
        prod.require_finitary(shifted)?;
        let min = prod.element_from_word(&base.reduced_word(&p.min))?;
        Ok(prod.coset_unchecked(p.left | shifted, &min, p.right | shifted))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::named("A2").unwrap()
    }

    #[test]
    fn coset_min_max_and_redundancy() {
        let sys = a2();
        let s = GenSubset::singleton(0);
        let t = GenSubset::singleton(1);
        let w = sys.element_from_word(&[0, 1, 0]).unwrap();
        let p = sys.coset_of(s, &w, t).unwrap();
        assert_eq!(sys.reduced_word(p.min()), vec![1, 0]);
        assert_eq!(sys.reduced_word(p.max()), vec![0, 1, 0]);
        assert_eq!(p.left_redundancy(), s);
        assert_eq!(p.right_redundancy(), t);
        let q = sys.coset_of(s, &sys.generator(1).unwrap(), GenSubset::EMPTY).unwrap();
        assert_eq!(q.left_redundancy(), GenSubset::EMPTY);
    }

    #[test]
    fn non_finitary_subsets_are_rejected() {
        let m = crate::coxeter::CoxeterMatrix::new(vec![
            vec![Some(1), None, Some(2)],
            vec![None, Some(1), Some(2)],
            vec![Some(2), Some(2), Some(1)],
        ])
        .unwrap();
        let sys = CoxeterSystem::from_matrix(m, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert!(!sys.is_finite());
        assert!(sys.identity_coset(GenSubset::singleton(0)).is_err());
    }

    #[test]
    fn lengths_of_small_cosets() {
        let sys = a2();
        let s = GenSubset::singleton(0);
        let e = sys.identity().unwrap();
        let id = sys.coset_of(s, &e, s).unwrap();
        assert_eq!(sys.coset_lengths(&id).total, 0);
        let p = sys.coset_of(s, &e, GenSubset::EMPTY).unwrap();
        assert_eq!(sys.coset_lengths(&p), CosetLengths { plus: 0, minus: 1, total: 1 });
    }
}
