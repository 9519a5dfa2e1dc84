//! Coxeter systems and exact element arithmetic.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use super::classify::{classify_component, CoxeterMatrix, CoxeterType};
use super::roots::component_roots;
use super::subset::{Gen, GenSubset};
use crate::error::{Result, ScoxError};
use crate::relations::RotationSequence;

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// A connected component of the Coxeter diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Generators of the component, ascending.
    pub gens: Vec<Gen>,
    /// Classified type of the component.
    pub kind: CoxeterType,
}

/// The root set of a finite system and the action of the simple reflections.
///
/// Positive roots are the indices `0..n_pos`; the negative of root `r` is
/// `(r + n_pos) mod 2 n_pos`.
#[derive(Debug)]
pub(crate) struct RootTable {
    pub n_pos: usize,
    /// `gen_perm[s][r]` is the image of root `r` under the simple reflection `s`.
    pub gen_perm: Vec<Vec<u16>>,
    /// Root index of `α_s`.
    pub simple: Vec<u16>,
    /// For each root index, the generator whose simple root it is (if any).
    pub root_gen: Vec<Option<Gen>>,
}

type RotationKey = (u64, u8, u8);

pub(crate) struct SystemData {
    id: u64,
    labels: Vec<String>,
    matrix: CoxeterMatrix,
    components: Vec<Component>,
    roots: Option<RootTable>,
    longest: RwLock<HashMap<u64, Element>>,
    finitary: RwLock<HashMap<u64, bool>>,
    pub(crate) rotations: RwLock<HashMap<RotationKey, Option<Arc<RotationSequence>>>>,
}

/// A Coxeter system `(W, S)`.
///
/// Cheap to clone (shared, immutable data). Internal caches (longest elements,
/// finitarity, rotation sequences) are guarded by locks and idempotent, so a
/// system may be shared freely across threads.
#[derive(Clone)]
pub struct CoxeterSystem {
    data: Arc<SystemData>,
}

/// An element of a finite Coxeter group, represented by the permutation it
/// induces on the root set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    sys: u64,
    perm: Box<[u16]>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(sys {}, {} roots)", self.sys, self.perm.len())
    }
}

impl Element {
    /// Image of root `r`.
    #[inline]
    pub(crate) fn image(&self, r: usize) -> usize {
        self.perm[r] as usize
    }
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterSystem({})", self.type_name())
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.data.id == other.data.id
    }
}

impl Eq for CoxeterSystem {}

impl CoxeterSystem {
    /// Builds a system from a Coxeter matrix and generator labels.
    pub fn from_matrix(matrix: CoxeterMatrix, labels: Vec<String>) -> Result<Self> {
        let n = matrix.rank();
        if labels.len() != n {
            return Err(ScoxError::Validation(format!("{} labels given for rank {n}", labels.len())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.contains(|c: char| c.is_whitespace() || ",[]()+-".contains(c)) {
                return Err(ScoxError::Validation(format!("invalid generator label {l:?}")));
            }
            if !seen.insert(l.clone()) {
                return Err(ScoxError::Validation(format!("duplicate generator label {l:?}")));
            }
        }
        let components: Vec<Component> = matrix
            .components(GenSubset::full(n))
            .into_iter()
            .map(|gens| {
                let kind = classify_component(&matrix, &gens);
                Component { gens, kind }
            })
            .collect();
        let roots = if components.iter().all(|c| c.kind.is_finite()) {
            Some(build_root_table(&matrix, &components)?)
        } else {
            None
        };
        let sys = CoxeterSystem {
            data: Arc::new(SystemData {
                id: NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed),
                labels,
                matrix,
                components,
                roots,
                longest: RwLock::new(HashMap::new()),
                finitary: RwLock::new(HashMap::new()),
                rotations: RwLock::new(HashMap::new()),
            }),
        };
        if let Some(table) = &sys.data.roots {
            let w0 = sys.longest_element(sys.all())?;
            if sys.length(&w0) != table.n_pos {
                return Err(ScoxError::Validation("positive-root count differs from ℓ(w_S)".into()));
            }
        }
        Ok(sys)
    }

    /// Builds a named system: `A_n`, `B_n`, `C_n`, `D_n`, `E6`–`E8`, `F4`,
    /// `G2`, `H3`, `H4`, `I2(m)`, and products joined by `×` (or `x`, `*`).
    ///
    /// Generators are labelled `s1, s2, …` across the whole product, factors in
    /// order. Within a factor the numbering is: `A_n` a path; `B_n` a path with
    /// the label 4 between `s1` and `s2`; `D_n` with `s1`, `s2` both attached to
    /// `s3` and a path `s3 … sn`; `E_n` with the path `s1 s3 s4 … sn` and `s2`
    /// attached to `s4`; `F4` with the label 4 between `s2` and `s3`; `H_n` with
    /// the label 5 on the last edge.
    pub fn named(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let factors: Vec<&str> = spec.split(['×', '*']).flat_map(split_on_x).collect();
        let mut matrix: Option<CoxeterMatrix> = None;
        for f in factors {
            let m = named_factor(f.trim())?;
            matrix = Some(match matrix {
                None => m,
                Some(acc) => acc.direct_sum(&m),
            });
        }
        let matrix = matrix.ok_or_else(|| ScoxError::Validation("empty type name".into()))?;
        let labels = (1..=matrix.rank()).map(|i| format!("s{i}")).collect();
        Self::from_matrix(matrix, labels)
    }

    /// The product system: generators of `a` first, then of `b`.
    /// Labels are kept, with `'` appended to clashing labels of `b`.
    pub fn product(a: &CoxeterSystem, b: &CoxeterSystem) -> Result<Self> {
        let matrix = a.matrix().direct_sum(b.matrix());
        let mut labels: Vec<String> = a.labels().to_vec();
        for l in b.labels() {
            let mut l = l.clone();
            while labels.contains(&l) {
                l.push('\'');
            }
            labels.push(l);
        }
        Self::from_matrix(matrix, labels)
    }

    /// Rank `|S|`.
    pub fn rank(&self) -> usize {
        self.data.matrix.rank()
    }

    /// Generator labels, in generator order.
    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    /// Label of generator `g`.
    pub fn label(&self, g: Gen) -> &str {
        &self.data.labels[g]
    }

    /// Looks up a generator by label.
    pub fn gen_by_label(&self, label: &str) -> Option<Gen> {
        self.data.labels.iter().position(|l| l == label)
    }

    /// The Coxeter matrix.
    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.data.matrix
    }

    /// The set `S`.
    pub fn all(&self) -> GenSubset {
        GenSubset::full(self.rank())
    }

    /// Connected components of the diagram with their types.
    pub fn components(&self) -> &[Component] {
        &self.data.components
    }

    /// Whether `W` is finite.
    pub fn is_finite(&self) -> bool {
        self.data.roots.is_some()
    }

    /// Type name such as `A2×A1` or `infinite-type`.
    pub fn type_name(&self) -> String {
        if self.rank() == 0 {
            return "trivial".into();
        }
        self.data.components.iter().map(|c| c.kind.to_string()).collect::<Vec<_>>().join("×")
    }

    pub(crate) fn rotation_cache(&self) -> &RwLock<HashMap<RotationKey, Option<Arc<RotationSequence>>>> {
        &self.data.rotations
    }

    /// Whether `W_J` is finite: every component of the induced diagram is of finite type.
    pub fn is_finitary(&self, j: GenSubset) -> bool {
        if let Some(&v) = self.data.finitary.read().expect("finitary cache").get(&j.bits()) {
            return v;
        }
        let v = self
            .data
            .matrix
            .components(j)
            .iter()
            .all(|c| classify_component(&self.data.matrix, c).is_finite());
        self.data.finitary.write().expect("finitary cache").insert(j.bits(), v);
        v
    }

    /// Types of the components of the diagram induced on `j`.
    pub fn classify_subset(&self, j: GenSubset) -> Vec<(Vec<Gen>, CoxeterType)> {
        self.data
            .matrix
            .components(j)
            .into_iter()
            .map(|c| {
                let k = classify_component(&self.data.matrix, &c);
                (c, k)
            })
            .collect()
    }

    fn table(&self) -> &RootTable {
        self.data.roots.as_ref().expect("element operations require a finite system")
    }

    pub(crate) fn roots(&self) -> &RootTable {
        self.table()
    }

    fn require_finite(&self) -> Result<&RootTable> {
        self.data.roots.as_ref().ok_or_else(|| {
            ScoxError::Capability(format!("{} is not a finite Coxeter group; element arithmetic is unavailable", self.type_name()))
        })
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> Result<usize> {
        Ok(self.require_finite()?.n_pos)
    }

    fn check(&self, x: &Element) {
        assert_eq!(x.sys, self.data.id, "element belongs to a different Coxeter system");
    }

    fn check_owned(&self, x: &Element) -> Result<()> {
        if x.sys == self.data.id {
            Ok(())
        } else {
            Err(ScoxError::Usage("element belongs to a different Coxeter system".into()))
        }
    }

    /// Whether `x` was produced by this system.
    pub fn owns(&self, x: &Element) -> bool {
        x.sys == self.data.id
    }

    fn make(&self, perm: Box<[u16]>) -> Element {
        Element { sys: self.data.id, perm }
    }

    /// The identity element (capability error for infinite systems).
    pub fn identity(&self) -> Result<Element> {
        let t = self.require_finite()?;
        Ok(self.make((0..2 * t.n_pos as u16).collect()))
    }

    pub(crate) fn e(&self) -> Element {
        self.identity().expect("finite system")
    }

    /// The simple reflection `s`.
    pub fn generator(&self, s: Gen) -> Result<Element> {
        let t = self.require_finite()?;
        if s >= self.rank() {
            return Err(ScoxError::Validation(format!("generator index {s} out of range")));
        }
        Ok(self.make(t.gen_perm[s].clone().into_boxed_slice()))
    }

    /// The product of the generators in `word`, left to right.
    pub fn element_from_word(&self, word: &[Gen]) -> Result<Element> {
        let mut w = self.identity()?;
        for &s in word {
            if s >= self.rank() {
                return Err(ScoxError::Validation(format!("generator index {s} out of range")));
            }
            w = self.mul_gen(&w, s);
        }
        Ok(w)
    }

    /// `x · s`.
    pub fn mul_gen(&self, x: &Element, s: Gen) -> Element {
        self.check(x);
        let g = &self.table().gen_perm[s];
        self.make(g.iter().map(|&r| x.perm[r as usize]).collect())
    }

    /// `s · x`.
    pub fn gen_mul(&self, s: Gen, x: &Element) -> Element {
        self.check(x);
        let g = &self.table().gen_perm[s];
        self.make(x.perm.iter().map(|&r| g[r as usize]).collect())
    }

    /// `x · y`. Panics if either element comes from another system; see
    /// [`CoxeterSystem::checked_mul`] for the fallible variant.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.check(x);
        self.check(y);
        self.make(y.perm.iter().map(|&r| x.perm[r as usize]).collect())
    }

    /// `x · y`, reporting a usage error for elements of other systems.
    pub fn checked_mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_owned(x)?;
        self.check_owned(y)?;
        Ok(self.mul(x, y))
    }

    /// `x⁻¹`.
    pub fn inv(&self, x: &Element) -> Element {
        self.check(x);
        let mut out = vec![0u16; x.perm.len()];
        for (r, &img) in x.perm.iter().enumerate() {
            out[img as usize] = r as u16;
        }
        self.make(out.into_boxed_slice())
    }

    /// Coxeter length: the number of positive roots sent to negative roots.
    pub fn length(&self, x: &Element) -> usize {
        self.check(x);
        let n = self.table().n_pos;
        x.perm[..n].iter().filter(|&&r| r as usize >= n).count()
    }

    /// Whether `ℓ(xs) < ℓ(x)`, i.e. `x(α_s) < 0`.
    #[inline]
    pub fn is_right_descent(&self, x: &Element, s: Gen) -> bool {
        let t = self.table();
        x.perm[t.simple[s] as usize] as usize >= t.n_pos
    }

    /// Whether `ℓ(sx) < ℓ(x)`.
    pub fn is_left_descent(&self, x: &Element, s: Gen) -> bool {
        let t = self.table();
        let a = t.simple[s];
        let r = x.perm.iter().position(|&img| img == a).expect("permutation");
        r >= t.n_pos
    }

    /// Right descent set `ρ(x)`.
    pub fn right_descents(&self, x: &Element) -> GenSubset {
        self.check(x);
        (0..self.rank()).filter(|&s| self.is_right_descent(x, s)).collect()
    }

    /// Left descent set `λ(x) = ρ(x⁻¹)`.
    pub fn left_descents(&self, x: &Element) -> GenSubset {
        self.right_descents(&self.inv(x))
    }

    /// The longest element `w_J` of a finitary parabolic subgroup (cached).
    pub fn longest_element(&self, j: GenSubset) -> Result<Element> {
        self.require_finite()?;
        if !j.is_subset(self.all()) {
            return Err(ScoxError::Domain(format!("{j:?} is not a subset of S")));
        }
        if let Some(w) = self.data.longest.read().expect("longest cache").get(&j.bits()) {
            return Ok(w.clone());
        }
        // Greedy ascent inside W_J; the result does not depend on the choices.
        let w = self.ascend_right(self.e(), j);
        self.data.longest.write().expect("longest cache").insert(j.bits(), w.clone());
        Ok(w)
    }

    /// `w_J` for a subset known to be finitary (finite systems only).
    pub(crate) fn w(&self, j: GenSubset) -> Element {
        self.longest_element(j).expect("finite system")
    }

    /// `ℓ(w_J)`.
    pub fn longest_length(&self, j: GenSubset) -> usize {
        self.length(&self.w(j))
    }

    /// Multiplies on the right by generators of `j` while this increases length:
    /// the result is `x ⋆ w_J`, the maximum of `x W_J`.
    pub(crate) fn ascend_right(&self, mut x: Element, j: GenSubset) -> Element {
        loop {
            match j.iter().find(|&s| !self.is_right_descent(&x, s)) {
                Some(s) => x = self.mul_gen(&x, s),
                None => return x,
            }
        }
    }

    /// Strips right descents in `j`: the minimum of `x W_J`.
    pub(crate) fn descend_right(&self, mut x: Element, j: GenSubset) -> Element {
        loop {
            match j.iter().find(|&s| self.is_right_descent(&x, s)) {
                Some(s) => x = self.mul_gen(&x, s),
                None => return x,
            }
        }
    }

    /// A reduced word for `x`, obtained by stripping right descents.
    pub fn some_reduced_word(&self, x: &Element) -> Vec<Gen> {
        self.check(x);
        let mut w = x.clone();
        let mut word = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(&w, s)) {
            word.push(s);
            w = self.mul_gen(&w, s);
        }
        word.reverse();
        word
    }

    /// The ShortLex-least reduced word of `x` under the generator order.
    pub fn reduced_word(&self, x: &Element) -> Vec<Gen> {
        // The lexicographically least reduced word starts with the smallest
        // left descent; work with x⁻¹ so that every test is a right descent.
        let mut v = self.inv(x);
        let mut word = Vec::new();
        while let Some(s) = (0..self.rank()).find(|&s| self.is_right_descent(&v, s)) {
            word.push(s);
            v = self.mul_gen(&v, s);
        }
        word
    }

    /// Star (Demazure) product `x ⋆ y`.
    pub fn star(&self, x: &Element, y: &Element) -> Element {
        self.check(x);
        self.check(y);
        let mut out = x.clone();
        for s in self.some_reduced_word(y) {
            if !self.is_right_descent(&out, s) {
                out = self.mul_gen(&out, s);
            }
        }
        out
    }

    /// Star product reporting a usage error for foreign elements.
    pub fn checked_star(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_owned(x)?;
        self.check_owned(y)?;
        Ok(self.star(x, y))
    }

    /// Bruhat order `x ≤ y`, by the subword property along the canonical
    /// reduced word of `y` (processed from the right with the lifting property).
    pub fn bruhat_leq(&self, x: &Element, y: &Element) -> bool {
        self.check(x);
        self.check(y);
        let word = self.reduced_word(y);
        let mut x = x.clone();
        if self.length(&x) > word.len() {
            return false;
        }
        for &s in word.iter().rev() {
            if self.is_right_descent(&x, s) {
                x = self.mul_gen(&x, s);
            }
        }
        x == self.e()
    }

    /// If `x s x⁻¹` is a simple reflection `t`, returns `t`.
    pub fn conjugate_simple(&self, x: &Element, s: Gen) -> Option<Gen> {
        let t = self.table();
        let r = x.perm[t.simple[s] as usize] as usize;
        let pos = if r >= t.n_pos { r - t.n_pos } else { r };
        t.root_gen[pos]
    }

    /// All elements of `W` (BFS by right multiplication), capped at `bound`.
    pub fn elements(&self, bound: usize) -> Result<Vec<Element>> {
        let e = self.identity()?;
        let mut seen: HashSet<Element> = HashSet::new();
        let mut order = vec![e.clone()];
        seen.insert(e);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in 0..self.rank() {
                let y = self.mul_gen(&order[i], s);
                if !seen.contains(&y) {
                    if order.len() >= bound {
                        return Err(ScoxError::Resource(format!("more than {bound} group elements")));
                    }
                    seen.insert(y.clone());
                    queue.push_back(order.len());
                    order.push(y);
                }
            }
        }
        Ok(order)
    }

    /// Elements of the parabolic subgroup `W_J`.
    pub fn parabolic_elements(&self, j: GenSubset, bound: usize) -> Result<Vec<Element>> {
        if !self.is_finitary(j) {
            return Err(ScoxError::Domain(format!("{j:?} is not finitary")));
        }
        let e = self.identity()?;
        let mut seen: HashSet<Element> = HashSet::from([e.clone()]);
        let mut order = vec![e];
        let mut i = 0;
        while i < order.len() {
            for s in j.iter() {
                let y = self.mul_gen(&order[i], s);
                if seen.insert(y.clone()) {
                    if order.len() >= bound {
                        return Err(ScoxError::Resource(format!("more than {bound} parabolic elements")));
                    }
                    order.push(y);
                }
            }
            i += 1;
        }
        Ok(order)
    }

    /// Formats a subset as concatenated labels (`st`, or `∅` when empty) for
    /// single-character labels, or comma-separated labels otherwise.
    pub fn fmt_subset(&self, j: GenSubset) -> String {
        if j.is_empty() {
            return "∅".into();
        }
        let parts: Vec<&str> = j.iter().map(|g| self.label(g)).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Formats a word as concatenated labels (`e` for the empty word).
    pub fn fmt_word(&self, word: &[Gen]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        let parts: Vec<&str> = word.iter().map(|&g| self.label(g)).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Canonical word of `x` formatted with labels.
    pub fn fmt_element(&self, x: &Element) -> String {
        self.fmt_word(&self.reduced_word(x))
    }
}

fn split_on_x(s: &str) -> Vec<&str> {
    // `x` separates factors only between a digit/parenthesis and a type letter.
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len().saturating_sub(1) {
        if bytes[i] == b'x' && (bytes[i - 1].is_ascii_digit() || bytes[i - 1] == b')') && bytes[i + 1].is_ascii_uppercase() {
            out.push(&s[start..i]);
            start = i + 1;
        }
    }
    out.push(&s[start..]);
    out
}

fn path_matrix(labels: &[u32]) -> CoxeterMatrix {
    let mut m = CoxeterMatrix::commuting(labels.len() + 1);
    for (i, &l) in labels.iter().enumerate() {
        m.set(i, i + 1, Some(l));
    }
    m
}

fn named_factor(name: &str) -> Result<CoxeterMatrix> {
    let bad = || ScoxError::Validation(format!("unknown Coxeter type {name:?}"));
    if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = rest.trim().parse().map_err(|_| bad())?;
        if m < 2 {
            return Err(bad());
        }
        let mut mat = CoxeterMatrix::commuting(2);
        mat.set(0, 1, Some(m));
        return Ok(mat);
    }
    let (letter, num) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let n: usize = num.parse().map_err(|_| bad())?;
    if n == 0 || n > super::subset::MAX_RANK {
        return Err(bad());
    }
    Ok(match letter {
        "A" => path_matrix(&vec![3; n - 1]),
        "B" | "C" if n >= 2 => {
            let mut labels = vec![3; n - 1];
            labels[0] = 4;
            path_matrix(&labels)
        }
        "D" if n >= 3 => {
            let mut m = CoxeterMatrix::commuting(n);
            m.set(0, 2, Some(3));
            m.set(1, 2, Some(3));
            for i in 2..n - 1 {
                m.set(i, i + 1, Some(3));
            }
            m
        }
        "E" if (6..=8).contains(&n) => {
            let mut m = CoxeterMatrix::commuting(n);
            m.set(0, 2, Some(3));
            m.set(1, 3, Some(3));
            for i in 2..n - 1 {
                m.set(i, i + 1, Some(3));
            }
            m
        }
        "F" if n == 4 => path_matrix(&[3, 4, 3]),
        "G" if n == 2 => path_matrix(&[6]),
        "H" if n == 3 => path_matrix(&[3, 5]),
        "H" if n == 4 => path_matrix(&[3, 3, 5]),
        _ => return Err(bad()),
    })
}

fn build_root_table(matrix: &CoxeterMatrix, components: &[Component]) -> Result<RootTable> {
    let n = matrix.rank();
    let locals: Vec<_> = components.iter().map(|c| component_roots(matrix, &c.gens)).collect();
    let n_pos: usize = locals.iter().map(|l| l.n_pos).sum();
    if 2 * n_pos > u16::MAX as usize {
        return Err(ScoxError::Resource("root system too large for the permutation engine".into()));
    }
    let mut gen_perm = vec![(0..2 * n_pos as u16).collect::<Vec<u16>>(); n];
    let mut simple = vec![0u16; n];
    let mut root_gen = vec![None; 2 * n_pos];
    let mut offset = 0;
    for (comp, local) in components.iter().zip(&locals) {
        let p = local.n_pos;
        let global = |r: usize| -> u16 {
            if r < p {
                (offset + r) as u16
            } else {
                (n_pos + offset + r - p) as u16
            }
        };
        for (li, &g) in comp.gens.iter().enumerate() {
            for r in 0..2 * p {
                gen_perm[g][global(r) as usize] = global(local.action[li][r] as usize);
            }
            simple[g] = global(local.simple[li]);
            root_gen[simple[g] as usize] = Some(g);
        }
        offset += p;
    }
    Ok(RootTable { n_pos, gen_perm, simple, root_gen })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_products_order_factors() {
        let sys = CoxeterSystem::named("A2×A1").unwrap();
        assert_eq!(sys.rank(), 3);
        assert_eq!(sys.type_name(), "A2×A1");
        let sys = CoxeterSystem::named("B3xA1").unwrap();
        assert_eq!(sys.type_name(), "B3×A1");
        assert_eq!(CoxeterSystem::named("G2").unwrap().type_name(), "I2(6)");
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(CoxeterSystem::named("Q3").is_err());
        assert!(CoxeterSystem::named("E9").is_err());
        assert!(CoxeterSystem::named("I2(1)").is_err());
    }

    #[test]
    fn infinite_systems_refuse_elements() {
        let m = CoxeterMatrix::new(vec![vec![Some(1), None], vec![None, Some(1)]]).unwrap();
        let sys = CoxeterSystem::from_matrix(m, vec!["s".into(), "t".into()]).unwrap();
        assert!(!sys.is_finite());
        assert!(matches!(sys.identity(), Err(ScoxError::Capability(_))));
        assert!(sys.is_finitary(GenSubset::singleton(0)));
        assert!(!sys.is_finitary(GenSubset::full(2)));
    }

    #[test]
    fn mixing_systems_is_a_usage_error() {
        let a = CoxeterSystem::named("A2").unwrap();
        let b = CoxeterSystem::named("A2").unwrap();
        let x = a.generator(0).unwrap();
        let y = b.generator(0).unwrap();
        assert!(matches!(a.checked_mul(&x, &y), Err(ScoxError::Usage(_))));
        assert!(matches!(a.checked_star(&x, &x), Ok(_)));
    }
}

#[cfg(test)]
mod root_count_tests {
    use super::*;

    #[test]
    fn positive_roots_match_longest_length() {
        let cases = [
            ("A1", 1),
            ("A4", 10),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
            ("H3", 15),
            ("H4", 60),
            ("I2(5)", 5),
            ("I2(7)", 7),
            ("I2(12)", 12),
            ("A2×B2", 7),
        ];
        for (name, n) in cases {
            let sys = CoxeterSystem::named(name).unwrap();
            assert_eq!(sys.positive_root_count().unwrap(), n, "{name}");
            assert_eq!(sys.longest_length(sys.all()), n, "{name}");
        }
    }

    #[test]
    fn descents_and_bruhat_in_a2() {
        let sys = CoxeterSystem::named("A2").unwrap();
        let st = sys.element_from_word(&[0, 1]).unwrap();
        let ts = sys.element_from_word(&[1, 0]).unwrap();
        assert_eq!(sys.right_descents(&st), GenSubset::singleton(1));
        assert!(!sys.bruhat_leq(&st, &ts) && !sys.bruhat_leq(&ts, &st));
        let w0 = sys.longest_element(sys.all()).unwrap();
        assert_eq!(sys.reduced_word(&w0), vec![0, 1, 0]);
        let s = sys.generator(0).unwrap();
        assert_eq!(sys.star(&s, &s), s);
        assert_eq!(sys.star(&w0, &s), w0);
    }
}
