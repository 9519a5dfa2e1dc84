//! The type-A web calculus: objects are sequences of positive integers,
//! morphisms are layered diagrams of merges and splits, evaluated as
//! parabolic double cosets of symmetric groups.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::cosets::DoubleCoset;
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GenSubset};
use crate::error::{Result, ScoxError};
use crate::expressions::{Expression, Sign, Step};

/// A sequence `(n₁, …, n_k)` of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectSeq(pub Vec<usize>);

impl ObjectSeq {
    /// Builds a sequence, erasing zero entries.
    pub fn new(entries: Vec<usize>) -> Self {
        ObjectSeq(entries.into_iter().filter(|&n| n > 0).collect())
    }

    /// The total `N = Σ nᵢ`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the sequence is empty (the monoidal unit).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The parabolic subset of `S_N` with blocks `n₁, …, n_k`: every adjacent
    /// transposition except those crossing a block boundary.
    pub fn to_subset(&self) -> GenSubset {
        let n = self.total();
        let mut j = if n >= 2 { GenSubset::full(n - 1) } else { GenSubset::EMPTY };
        let mut acc = 0;
        for &b in &self.0[..self.0.len().saturating_sub(1)] {
            acc += b;
            j = j.without(acc - 1);
        }
        j
    }

    /// The composition of `N` whose blocks are the components of `j`.
    pub fn from_subset(n: usize, j: GenSubset) -> Self {
        let mut out = Vec::new();
        let mut run = 1;
        for g in 0..n.saturating_sub(1) {
            if j.contains(g) {
                run += 1;
            } else {
                out.push(run);
                run = 1;
            }
        }
        if n > 0 {
            out.push(run);
        }
        ObjectSeq(out)
    }
}

impl fmt::Display for ObjectSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One elementary vertex, acting on the entries at `at` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Layer {
    /// Entries `at, at+1` with values `a, b` merge into `a + b`.
    Merge {
        /// Position of the left input.
        at: usize,
        /// Left input.
        a: usize,
        /// Right input.
        b: usize,
    },
    /// Entry `at` with value `a + b` splits into `a, b`.
    Split {
        /// Position of the input.
        at: usize,
        /// Left output.
        a: usize,
        /// Right output.
        b: usize,
    },
}

impl Layer {
    /// Degree `ab`.
    pub fn degree(&self) -> usize {
        match *self {
            Layer::Merge { a, b, .. } | Layer::Split { a, b, .. } => a * b,
        }
    }

    fn at(&self) -> usize {
        match *self {
            Layer::Merge { at, .. } | Layer::Split { at, .. } => at,
        }
    }

    fn with_at(self, at: usize) -> Layer {
        match self {
            Layer::Merge { a, b, .. } => Layer::Merge { at, a, b },
            Layer::Split { a, b, .. } => Layer::Split { at, a, b },
        }
    }

    /// Number of entries consumed and produced.
    fn arity(&self) -> (usize, usize) {
        match self {
            Layer::Merge { .. } => (2, 1),
            Layer::Split { .. } => (1, 2),
        }
    }

    /// The slice above this layer, given the slice below it.
    pub fn act(&self, seq: &[usize]) -> Result<Vec<usize>> {
        let mut v = seq.to_vec();
        self.act_in_place(&mut v)?;
        Ok(v)
    }

    fn act_in_place(&self, v: &mut Vec<usize>) -> Result<()> {
        match *self {
            Layer::Merge { at, a, b } => {
                if at + 1 >= v.len() || v[at] != a || v[at + 1] != b {
                    return Err(ScoxError::Usage(format!(
                        "merge@{}({a},{b}) does not match {}",
                        at + 1,
                        ObjectSeq(v.clone())
                    )));
                }
                v[at] = a + b;
                v.remove(at + 1);
            }
            Layer::Split { at, a, b } => {
                if at >= v.len() || v[at] != a + b || a == 0 || b == 0 {
                    return Err(ScoxError::Usage(format!(
                        "split@{}({a},{b}) does not match {}",
                        at + 1,
                        ObjectSeq(v.clone())
                    )));
                }
                v[at] = a;
                v.insert(at + 1, b);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Layer::Merge { at, a, b } => write!(f, "merge@{}({a},{b})", at + 1),
            Layer::Split { at, a, b } => write!(f, "split@{}({a},{b})", at + 1),
        }
    }
}

/// A layered web from `bottom` to `top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Web {
    bottom: ObjectSeq,
    layers: Vec<Layer>,
    top: ObjectSeq,
}

impl Web {
    /// A web from its bottom boundary and layers, validating every slice.
    /// Vertices with a zero input or output are erased.
    pub fn new(bottom: ObjectSeq, layers: Vec<Layer>) -> Result<Self> {
        let mut cur = bottom.0.clone();
        if cur.contains(&0) {
            return Err(ScoxError::Validation("object entries must be positive".into()));
        }
        let mut kept = Vec::new();
        for l in layers {
            if let Layer::Merge { a: 0, .. } | Layer::Merge { b: 0, .. } | Layer::Split { a: 0, .. } | Layer::Split { b: 0, .. } = l
            {
                continue;
            }
            l.act_in_place(&mut cur)?;
            kept.push(l);
        }
        Ok(Web { bottom, layers: kept, top: ObjectSeq(cur) })
    }

    /// The identity web on `n`.
    pub fn identity(n: ObjectSeq) -> Self {
        Web { top: n.clone(), bottom: n, layers: Vec::new() }
    }

    /// A single merge of entries `at, at+1` (0-based) of `n`.
    pub fn merge(n: ObjectSeq, at: usize) -> Result<Self> {
        let (a, b) = match (n.0.get(at), n.0.get(at + 1)) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Err(ScoxError::Usage(format!("no entries {} and {} in {n}", at + 1, at + 2))),
        };
        Web::new(n, vec![Layer::Merge { at, a, b }])
    }

    /// A single split of entry `at` (0-based) of `n` into `a, b`.
    pub fn split(n: ObjectSeq, at: usize, a: usize) -> Result<Self> {
        let total = *n.0.get(at).ok_or_else(|| ScoxError::Usage(format!("no entry {} in {n}", at + 1)))?;
        if a == 0 || a >= total {
            return Err(ScoxError::Usage(format!("cannot split {total} into {a} and {}", total.saturating_sub(a))));
        }
        Web::new(n, vec![Layer::Split { at, a, b: total - a }])
    }

    /// Bottom boundary.
    pub fn bottom(&self) -> &ObjectSeq {
        &self.bottom
    }

    /// Top boundary.
    pub fn top(&self) -> &ObjectSeq {
        &self.top
    }

    /// The layers, bottom to top.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// The slices: `bottom`, then the sequence after each layer.
    pub fn slices(&self) -> Vec<ObjectSeq> {
        let mut out = vec![self.bottom.clone()];
        for l in &self.layers {
            let next = l.act(&out.last().unwrap().0).expect("validated");
            out.push(ObjectSeq(next));
        }
        out
    }

    /// Sum of `ab` over the vertices.
    pub fn degree(&self) -> usize {
        self.layers.iter().map(Layer::degree).sum()
    }

    /// `self` followed by `other` (stacking `other` on top).
    pub fn compose(&self, other: &Web) -> Result<Web> {
        if self.top != other.bottom {
            return Err(ScoxError::Usage(format!("boundary mismatch: {} vs {}", self.top, other.bottom)));
        }
        let mut layers = self.layers.clone();
        layers.extend_from_slice(&other.layers);
        Ok(Web { bottom: self.bottom.clone(), layers, top: other.top.clone() })
    }

    /// Side-by-side placement: the layers of `self`, then those of `other`
    /// shifted past the top of `self`.
    pub fn tensor(&self, other: &Web) -> Web {
        let shift = self.top.len();
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().map(|l| l.with_at(l.at() + shift)));
        let mut bottom = self.bottom.0.clone();
        bottom.extend_from_slice(&other.bottom.0);
        let mut top = self.top.0.clone();
        top.extend_from_slice(&other.top.0);
        Web { bottom: ObjectSeq(bottom), layers, top: ObjectSeq(top) }
    }

    /// Text form `(1,2,1) ; merge@1(1,2) ; split@1(2,1)` (positions 1-based).
    pub fn to_text(&self) -> String {
        let mut s = self.bottom.to_string();
        for l in &self.layers {
            s.push_str(" ; ");
            s.push_str(&l.to_string());
        }
        s
    }

    /// Parses the text form.
    pub fn parse(text: &str) -> Result<Web> {
        let mut parts = text.split(';').map(str::trim);
        let head = parts.next().unwrap_or("");
        let bottom = ObjectSeq(parse_tuple(head)?);
        let mut layers = Vec::new();
        for p in parts {
            let (op, rest) = p
                .split_once('@')
                .ok_or_else(|| ScoxError::Validation(format!("expected merge@k(a,b) or split@k(a,b), found '{p}'")))?;
            let open = rest.find('(').ok_or_else(|| ScoxError::Validation(format!("missing labels in '{p}'")))?;
            let at: usize = rest[..open]
                .trim()
                .parse()
                .map_err(|_| ScoxError::Validation(format!("bad position in '{p}'")))?;
            if at == 0 {
                return Err(ScoxError::Validation("positions are 1-based".into()));
            }
            let ab = parse_tuple(&rest[open..])?;
            if ab.len() != 2 {
                return Err(ScoxError::Validation(format!("expected two labels in '{p}'")));
            }
            let (a, b) = (ab[0], ab[1]);
            layers.push(match op.trim() {
                "merge" => Layer::Merge { at: at - 1, a, b },
                "split" => Layer::Split { at: at - 1, a, b },
                other => return Err(ScoxError::Validation(format!("unknown vertex '{other}'"))),
            });
        }
        Web::new(bottom, layers).map_err(|e| match e {
            ScoxError::Usage(m) => ScoxError::Validation(m),
            other => other,
        })
    }

    /// JSON layered form.
    pub fn to_json(&self) -> WebJson {
        WebJson {
            bottom: self.bottom.0.clone(),
            layers: self.layers.iter().map(|l| l.with_at(l.at() + 1)).collect(),
            top: self.top.0.clone(),
        }
    }

    /// From the JSON layered form (positions 1-based).
    pub fn from_json(j: &WebJson) -> Result<Web> {
        let mut layers = Vec::new();
        for l in &j.layers {
            if l.at() == 0 {
                return Err(ScoxError::Validation("positions are 1-based".into()));
            }
            layers.push(l.with_at(l.at() - 1));
        }
        let w = Web::new(ObjectSeq(j.bottom.clone()), layers)?;
        if w.top.0 != j.top {
            return Err(ScoxError::Validation(format!("declared top {:?} differs from computed {}", j.top, w.top)));
        }
        Ok(w)
    }
}

fn parse_tuple(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| ScoxError::Validation(format!("expected a parenthesized tuple, found '{s}'")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| ScoxError::Validation(format!("bad integer '{x}'"))))
        .collect()
}

/// JSON layered web: `{"bottom": [..], "layers": [{"op": "merge", "at": 1, "a": 1, "b": 2}], "top": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebJson {
    /// Bottom boundary.
    pub bottom: Vec<usize>,
    /// Layers with 1-based positions.
    pub layers: Vec<Layer>,
    /// Top boundary.
    pub top: Vec<usize>,
}

/// The symmetric group `S_N` as the Coxeter system `A_{N−1}` (trivial for
/// `N ≤ 1`), shared across calls so that cosets compare equal.
pub fn symmetric_group(n: usize) -> CoxeterSystem {
    static CACHE: OnceLock<Mutex<HashMap<usize, CoxeterSystem>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cache lock");
    guard
        .entry(n)
        .or_insert_with(|| {
            if n >= 2 {
                CoxeterSystem::named(&format!("A{}", n - 1)).expect("type A")
            } else {
                CoxeterSystem::from_matrix(CoxeterMatrix::commuting(0), Vec::new()).expect("trivial system")
            }
        })
        .clone()
}

/// The expression over `S_N` traced by the web: merges are additions of the
/// boundary transposition, splits are removals.
pub fn expression_from_web(w: &Web) -> Expression {
    let sys = symmetric_group(w.bottom.total());
    let mut steps = Vec::with_capacity(w.layers.len());
    let mut cur = w.bottom.0.clone();
    for l in &w.layers {
        let offset: usize = cur[..l.at()].iter().sum();
        steps.push(match *l {
            Layer::Merge { a, .. } => Step::plus(offset + a - 1),
            Layer::Split { a, .. } => Step::minus(offset + a - 1),
        });
        cur = l.act(&cur).expect("validated");
    }
    Expression::new(&sys, w.bottom.to_subset(), steps).expect("web steps are valid")
}

/// The web of an expression over `S_N`.
pub fn web_from_expression(n: usize, e: &Expression) -> Result<Web> {
    let sys = symmetric_group(n);
    if !e.start().is_subset(sys.all()) {
        return Err(ScoxError::Validation(format!("expression is not over S_{n}")));
    }
    let bottom = ObjectSeq::from_subset(n, e.start());
    let mut layers = Vec::new();
    let mut cur = bottom.0.clone();
    for st in e.steps() {
        // Locate the block containing strand `gen` (0-based strands).
        let g = st.gen;
        let mut acc = 0;
        let mut k = 0;
        while acc + cur[k] <= g {
            acc += cur[k];
            k += 1;
        }
        let layer = match st.sign {
            Sign::Plus => Layer::Merge { at: k, a: cur[k], b: cur[k + 1] },
            Sign::Minus => {
                let a = g + 1 - acc;
                Layer::Split { at: k, a, b: cur[k] - a }
            }
        };
        cur = layer.act(&cur)?;
        layers.push(layer);
    }
    Web::new(bottom, layers)
}

/// The double coset in `S_N` represented by the web.
pub fn evaluate_web(w: &Web) -> DoubleCoset {
    let sys = symmetric_group(w.bottom.total());
    sys.evaluate(&expression_from_web(w))
}

/// Number of morphisms `n → m`: the number of `(S_n, S_m)` double cosets of
/// `S_N` (zero when the totals differ), by orbit enumeration over `S_N`.
pub fn hom_count(n: &ObjectSeq, m: &ObjectSeq) -> Result<u64> {
    let total = n.total();
    if total != m.total() {
        return Ok(0);
    }
    if total > 9 {
        return Err(ScoxError::Resource(format!("orbit enumeration over S_{total} is too large")));
    }
    let block_of = |seq: &ObjectSeq| -> Vec<usize> {
        let mut v = Vec::with_capacity(total);
        for (k, &b) in seq.0.iter().enumerate() {
            v.extend(std::iter::repeat(k).take(b));
        }
        v
    };
    let (bn, bm) = (block_of(n), block_of(m));
    // A double coset S_m σ S_n is determined by the matrix counting, for each
    // pair of blocks, the points of the n-block mapped into the m-block; the
    // orbit enumeration collects these invariants over all permutations.
    let mut seen = HashSet::new();
    let mut perm: Vec<usize> = (0..total).collect();
    loop {
        let mut counts = vec![0u8; n.len() * m.len().max(1)];
        for (x, &y) in perm.iter().enumerate() {
            counts[bn[x] * m.len() + bm[y]] += 1;
        }
        seen.insert(counts);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(seen.len() as u64)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The web relations, each as a rewrite of consecutive layers acting on a
/// window of adjacent entries, applicable in either direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WebRelation {
    /// `split(a,b) ; merge(a,b)` → identity (degree drops by `2ab`).
    Bigon,
    /// `merge(a,b) ; merge(a+b,c)` ↔ `merge(b,c) ; merge(a,b+c)` on `(a,b,c)`.
    Assoc,
    /// `split(a+b,c) ; split(a,b)` ↔ `split(a,b+c) ; split(b,c)`.
    Coassoc,
    /// The square with `a + b < N` on `(a, N−a)`: split `N−a` into
    /// `(b, N−a−b)`, merge to `a+b`, split into `(b, a)`, merge `a` with
    /// `N−a−b` ↔ merge to `N` then split into `(b, N−b)`.
    Square1,
    /// The square with `a + b > N` on `(a, N−a)`: split `a` into
    /// `(a+b−N, N−b)`, merge to `2N−a−b`, split into `(N−a, N−b)`, merge
    /// `a+b−N` with `N−a` ↔ merge then split.
    Square2,
    /// The non-reduced square: the square shape with bottom rung `f > b` and
    /// top rung `g > a` ↔ merge then split.
    NonRedSquare,
    /// The rung swap for `0 < f < b`: the square shape with rungs `(f, g)`
    /// pulled in from the right ↔ the mirrored shape with rungs `(g, f)`
    /// pulled in from the left.
    RungSwap,
    /// Exchange of two consecutive vertices on disjoint entries.
    Interchange,
}

impl WebRelation {
    /// All relation kinds.
    pub const ALL: [WebRelation; 8] = [
        WebRelation::Bigon,
        WebRelation::Assoc,
        WebRelation::Coassoc,
        WebRelation::Square1,
        WebRelation::Square2,
        WebRelation::NonRedSquare,
        WebRelation::RungSwap,
        WebRelation::Interchange,
    ];

    /// Name used in text output and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            WebRelation::Bigon => "bigon",
            WebRelation::Assoc => "assoc",
            WebRelation::Coassoc => "coassoc",
            WebRelation::Square1 => "square1",
            WebRelation::Square2 => "square2",
            WebRelation::NonRedSquare => "nonredsquare",
            WebRelation::RungSwap => "rungswap",
            WebRelation::Interchange => "interchange",
        }
    }

    /// Parses a relation name.
    pub fn from_name(s: &str) -> Result<Self> {
        WebRelation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| ScoxError::Usage(format!("unknown web relation '{s}'")))
    }

    /// Whether the relation preserves degree (all but the bigon and the
    /// non-reduced square).
    pub fn preserves_degree(self) -> bool {
        !matches!(self, WebRelation::Bigon | WebRelation::NonRedSquare)
    }
}

/// Direction of a web relation: `Forward` rewrites the left-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WebDirection {
    /// Left-hand side to right-hand side.
    Forward,
    /// Right-hand side to left-hand side.
    Backward,
}

/// A located application of a web relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WebSite {
    /// The relation.
    pub relation: WebRelation,
    /// Index of the first rewritten layer (layers are replaced or inserted there).
    pub layer: usize,
    /// Direction.
    pub direction: WebDirection,
    /// The bottom rung `f` of a backward non-reduced square (unused
    /// otherwise). Bigon insertion goes through [`insert_bigon`].
    pub param: usize,
}

fn merge(at: usize, a: usize, b: usize) -> Layer {
    Layer::Merge { at, a, b }
}

fn split(at: usize, a: usize, b: usize) -> Layer {
    Layer::Split { at, a, b }
}

/// The square shape on `(a, x)` at entry `k` with rungs `f` (pulled in from
/// the right, bottom) and `g` (pushed out to the right, top).
fn square_from_right(k: usize, a: usize, x: usize, f: usize, g: usize) -> Option<Vec<Layer>> {
    let j = a + f;
    if f == 0 || f >= x || g == 0 || g >= j {
        return None;
    }
    Some(vec![split(k + 1, f, x - f), merge(k, a, f), split(k, j - g, g), merge(k + 1, g, x - f)])
}

/// The mirrored square on `(a, x)` at entry `k`: `g` strands pulled right out
/// of `a` first, then `f` strands pulled back left.
fn square_from_left(k: usize, a: usize, x: usize, g: usize, f: usize) -> Option<Vec<Layer>> {
    if g == 0 || g >= a || f == 0 || f >= g + x {
        return None;
    }
    Some(vec![split(k, a - g, g), merge(k + 1, g, x), split(k + 1, f, g + x - f), merge(k, a - g, f)])
}

fn merge_split(k: usize, a: usize, x: usize, b: usize) -> Option<Vec<Layer>> {
    let n = a + x;
    if b == 0 || b >= n {
        return None;
    }
    Some(vec![merge(k, a, x), split(k, b, n - b)])
}

/// If `ls` is a square shape pulled in from the right, its `(k, a, x, f, g)`.
fn match_square_from_right(ls: &[Layer]) -> Option<(usize, usize, usize, usize, usize)> {
    if let [Layer::Split { at: k1, a: f, b: xf }, Layer::Merge { at: k, a, b: f2 }, Layer::Split { at: k2, b: g, .. }, Layer::Merge { at: k3, .. }] =
        *ls
    {
        if k1 == k + 1 && f2 == f && k2 == k && k3 == k + 1 {
            let shape = square_from_right(k, a, f + xf, f, g)?;
            if shape == ls {
                return Some((k, a, f + xf, f, g));
            }
        }
    }
    None
}

/// If `ls` is a mirrored square shape, its `(k, a, x, g, f)`.
fn match_square_from_left(ls: &[Layer]) -> Option<(usize, usize, usize, usize, usize)> {
    if let [Layer::Split { at: k, a: ag, b: g }, Layer::Merge { at: k1, b: x, .. }, Layer::Split { at: k2, a: f, .. }, Layer::Merge { .. }] =
        *ls
    {
        if k1 == k + 1 && k2 == k + 1 {
            let shape = square_from_left(k, ag + g, x, g, f)?;
            if shape == ls {
                return Some((k, ag + g, x, g, f));
            }
        }
    }
    None
}

/// For the window of layers starting at `i`, the rewritten layers and the
/// number of layers consumed, or `None` if the relation does not apply.
fn rewrite_at(layers: &[Layer], i: usize, rel: WebRelation, dir: WebDirection, param: usize) -> Option<(usize, Vec<Layer>)> {
    use WebDirection::*;
    use WebRelation::*;
    let rest = &layers[i.min(layers.len())..];
    match (rel, dir) {
        (Bigon, Forward) => match rest {
            [Layer::Split { at, a, b }, Layer::Merge { at: at2, a: a2, b: b2 }, ..] if at == at2 && a == a2 && b == b2 => {
                Some((2, Vec::new()))
            }
            _ => None,
        },
        (Bigon, Backward) => None,
        (Assoc, Forward) => match rest {
            [Layer::Merge { at, a, b }, Layer::Merge { at: at2, a: ab, b: c }, ..] if at == at2 && *ab == a + b => {
                Some((2, vec![merge(at + 1, *b, *c), merge(*at, *a, b + c)]))
            }
            _ => None,
        },
        (Assoc, Backward) => match rest {
            [Layer::Merge { at, a: b, b: c }, Layer::Merge { at: at2, a, b: bc }, ..] if *at == at2 + 1 && *bc == b + c => {
                Some((2, vec![merge(*at2, *a, *b), merge(*at2, a + b, *c)]))
            }
            _ => None,
        },
        (Coassoc, Forward) => match rest {
            [Layer::Split { at, a: ab, b: c }, Layer::Split { at: at2, a, b }, ..] if at == at2 && *ab == a + b => {
                Some((2, vec![split(*at, *a, b + c), split(at + 1, *b, *c)]))
            }
            _ => None,
        },
        (Coassoc, Backward) => match rest {
            [Layer::Split { at, a, b: bc }, Layer::Split { at: at2, a: b, b: c }, ..] if *at2 == at + 1 && *bc == b + c => {
                Some((2, vec![split(*at, a + b, *c), split(*at, *a, *b)]))
            }
            _ => None,
        },
        (Square1, Forward) | (Square2, Forward) | (NonRedSquare, Forward) | (RungSwap, Forward) | (RungSwap, Backward) => {
            let window = rest.get(..4)?;
            match (rel, dir) {
                (Square1, _) => {
                    let (k, a, x, f, g) = match_square_from_right(window)?;
                    // f = b, g = a, a + b < N.
                    (g == a && a + f < a + x).then(|| (4, merge_split(k, a, x, f).unwrap()))
                }
                (Square2, _) => {
                    let (k, a, x, g, f) = match_square_from_left(window)?;
                    // g = N−b, f = N−a with a + b > N.
                    let n = a + x;
                    (f == x && g < n).then_some(())?;
                    let b = n - g;
                    (a + b > n).then(|| (4, merge_split(k, a, x, b).unwrap()))
                }
                (NonRedSquare, _) => {
                    let (k, a, x, f, g) = match_square_from_right(window)?;
                    let b = a + f - g;
                    (f > b && g > a).then(|| (4, merge_split(k, a, x, b).unwrap()))
                }
                (RungSwap, Forward) => {
                    let (k, a, x, f, g) = match_square_from_right(window)?;
                    let b = a + f - g;
                    if !(f < b) {
                        return None;
                    }
                    square_from_left(k, a, x, g, f).map(|l| (4, l))
                }
                (RungSwap, Backward) => {
                    let (k, a, x, g, f) = match_square_from_left(window)?;
                    let b = a - g + f;
                    if !(f < b) {
                        return None;
                    }
                    square_from_right(k, a, x, f, g).map(|l| (4, l))
                }
                _ => unreachable!(),
            }
        }
        (Square1, Backward) | (Square2, Backward) | (NonRedSquare, Backward) => {
            let [Layer::Merge { at: k, a, b: x }, Layer::Split { at: k2, a: b, b: y }, ..] = *rest else { return None };
            if k != k2 {
                return None;
            }
            let n = a + x;
            debug_assert_eq!(b + y, n);
            match rel {
                Square1 => (a + b < n).then(|| (2, square_from_right(k, a, x, b, a).unwrap())),
                Square2 => (a + b > n).then(|| (2, square_from_left(k, a, x, n - b, n - a).unwrap())),
                _ => {
                    let f = param;
                    let g = a + f;
                    let g = g.checked_sub(b)?;
                    if !(f > b && g > a) {
                        return None;
                    }
                    square_from_right(k, a, x, f, g).map(|l| (2, l))
                }
            }
        }
        (Interchange, _) => {
            let [l1, l2, ..] = *rest else { return None };
            let (kx, (rx, rxp)) = (l1.at(), l1.arity());
            let (ky, (ry, ryp)) = (l2.at(), l2.arity());
            if ky + ry <= kx {
                Some((2, vec![l2, l1.with_at(kx + ryp - ry)]))
            } else if ky >= kx + rxp {
                Some((2, vec![l2.with_at(ky + rx - rxp), l1]))
            } else {
                None
            }
        }
    }
}

/// Applies a web relation at a layer index.
pub fn apply_web_relation(w: &Web, site: WebSite) -> Result<Web> {
    let (consumed, repl) = rewrite_at(&w.layers, site.layer, site.relation, site.direction, site.param).ok_or_else(|| {
        ScoxError::Usage(format!("{} does not match at layer {}", site.relation.name(), site.layer))
    })?;
    let mut layers = w.layers[..site.layer].to_vec();
    layers.extend(repl);
    layers.extend_from_slice(&w.layers[site.layer + consumed..]);
    Web::new(w.bottom.clone(), layers)
}

/// [`apply_web_relation`] for a site produced by [`web_relation_sites`] on
/// `w`: every relation rewrites a window of entries to the same outer
/// boundary, so the slices need no re-validation.
fn apply_listed_site(w: &Web, site: WebSite) -> Web {
    let (consumed, repl) =
        rewrite_at(&w.layers, site.layer, site.relation, site.direction, site.param).expect("listed site matches");
    let mut layers = Vec::with_capacity(w.layers.len() + 2);
    layers.extend_from_slice(&w.layers[..site.layer]);
    layers.extend(repl);
    layers.extend_from_slice(&w.layers[site.layer + consumed..]);
    Web { bottom: w.bottom.clone(), layers, top: w.top.clone() }
}

/// Inserts a bigon `split(a, m−a) ; merge(a, m−a)` on entry `entry` of the
/// slice below layer `layer`.
pub fn insert_bigon(w: &Web, layer: usize, entry: usize, a: usize) -> Result<Web> {
    let slices = w.slices();
    let seq = slices.get(layer).ok_or_else(|| ScoxError::Usage(format!("no slice {layer}")))?;
    let m = *seq.0.get(entry).ok_or_else(|| ScoxError::Usage(format!("no entry {} in {seq}", entry + 1)))?;
    if a == 0 || a >= m {
        return Err(ScoxError::Usage(format!("cannot split {m} into {a} and {}", m.saturating_sub(a))));
    }
    let mut layers = w.layers[..layer].to_vec();
    layers.push(split(entry, a, m - a));
    layers.push(merge(entry, a, m - a));
    layers.extend_from_slice(&w.layers[layer..]);
    Web::new(w.bottom.clone(), layers)
}

/// Every site where some relation applies (backward non-reduced squares for
/// every admissible rung `f`; bigon insertions excluded).
pub fn web_relation_sites(w: &Web) -> Vec<WebSite> {
    let mut out = Vec::new();
    for i in 0..w.layers.len() {
        for rel in WebRelation::ALL {
            for dir in [WebDirection::Forward, WebDirection::Backward] {
                if rel == WebRelation::Interchange && dir == WebDirection::Backward {
                    continue;
                }
                if rel == WebRelation::NonRedSquare && dir == WebDirection::Backward {
                    if let Layer::Merge { b: x, .. } = w.layers[i] {
                        for f in 1..x {
                            if rewrite_at(&w.layers, i, rel, dir, f).is_some() {
                                out.push(WebSite { relation: rel, layer: i, direction: dir, param: f });
                            }
                        }
                    }
                    continue;
                }
                if rewrite_at(&w.layers, i, rel, dir, 0).is_some() {
                    out.push(WebSite { relation: rel, layer: i, direction: dir, param: 0 });
                }
            }
        }
    }
    out
}

/// All webs from `n` to `m` of degree at most `max_degree`.
pub fn enumerate_webs(n: &ObjectSeq, m: &ObjectSeq, max_degree: usize, cap: usize) -> Result<Vec<Web>> {
    if n.total() != m.total() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<Layer>, usize)> = vec![(n.0.clone(), Vec::new(), 0)];
    while let Some((cur, layers, deg)) = stack.pop() {
        if cur == m.0 {
            out.push(Web { bottom: n.clone(), layers: layers.clone(), top: m.clone() });
            if out.len() > cap {
                return Err(ScoxError::Resource(format!("more than {cap} webs")));
            }
        }
        for k in 0..cur.len() {
            if k + 1 < cur.len() {
                let (a, b) = (cur[k], cur[k + 1]);
                if deg + a * b <= max_degree {
                    let l = merge(k, a, b);
                    let mut ls = layers.clone();
                    ls.push(l);
                    stack.push((l.act(&cur).unwrap(), ls, deg + a * b));
                }
            }
            for a in 1..cur[k] {
                let b = cur[k] - a;
                if deg + a * b <= max_degree {
                    let l = split(k, a, b);
                    let mut ls = layers.clone();
                    ls.push(l);
                    stack.push((l.act(&cur).unwrap(), ls, deg + a * b));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Number of classes of webs `n → m` of degree at most `max_degree` under
/// the relations (closure by union-find over single applications that stay
/// within the degree bound).
pub fn web_class_count(n: &ObjectSeq, m: &ObjectSeq, max_degree: usize, cap: usize) -> Result<usize> {
    let webs = enumerate_webs(n, m, max_degree, cap)?;
    let index: HashMap<&Web, usize> = webs.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut parent: Vec<usize> = (0..webs.len()).collect();
    for (k, w) in webs.iter().enumerate() {
        for site in web_relation_sites(w) {
            let v = apply_listed_site(w, site);
            if let Some(&j) = index.get(&v) {
                union(&mut parent, k, j);
            }
        }
    }
    Ok((0..webs.len()).filter(|&k| find(&mut parent, k) == k).count())
}

/// A web-level derivation: relation applications from `start` to `final_web`.
#[derive(Clone, Debug)]
pub struct WebDerivation {
    /// The input web.
    pub start: Web,
    /// The applied relations, in order.
    pub sites: Vec<WebSite>,
    /// The final web.
    pub final_web: Web,
}

impl WebDerivation {
    /// Re-applies every site from `start`, checking that it ends at `final_web`.
    pub fn replay(&self) -> Result<Web> {
        let mut cur = self.start.clone();
        for &site in &self.sites {
            cur = apply_web_relation(&cur, site)?;
        }
        if cur != self.final_web {
            return Err(ScoxError::StaleRedex("web derivation does not end at its final web".into()));
        }
        Ok(cur)
    }
}

/// Translates a derivation of expressions into web relations: every expression
/// relation at position `k` is matched by a web relation at layer `k` with the
/// same result.
fn translate_steps(start: &Web, results: &[Expression], positions: &[usize]) -> Result<Vec<WebSite>> {
    let n = start.bottom.total();
    let mut cur = start.clone();
    let mut sites = Vec::with_capacity(results.len());
    for (res, &k) in results.iter().zip(positions) {
        let target = web_from_expression(n, res)?;
        let site = web_relation_sites(&cur)
            .into_iter()
            .filter(|s| s.layer == k)
            .find(|&s| apply_web_relation(&cur, s).map(|v| v == target).unwrap_or(false))
            .ok_or_else(|| ScoxError::Domain(format!("no web relation at layer {k} realizes the step to {}", target.to_text())))?;
        sites.push(site);
        cur = target;
    }
    Ok(sites)
}

/// Rewrites a web to a reduced one (degree equal to the length of its coset)
/// using only web relations, following the normalization of its expression.
pub fn web_normalize(w: &Web) -> Result<WebDerivation> {
    let sys = symmetric_group(w.bottom.total());
    let trace = sys.normalize(&expression_from_web(w));
    let results: Vec<Expression> = trace.steps.iter().map(|s| s.result.clone()).collect();
    let positions: Vec<usize> = trace.steps.iter().map(|s| s.relation.position).collect();
    let sites = translate_steps(w, &results, &positions)?;
    let final_web = web_from_expression(w.bottom.total(), &trace.final_expr)?;
    Ok(WebDerivation { start: w.clone(), sites, final_web })
}

/// Number of classes of reduced webs `n → m` under the degree-preserving web
/// relations (single applications between reduced webs).
pub fn reduced_web_class_count(n: &ObjectSeq, m: &ObjectSeq, cap: usize) -> Result<usize> {
    let total = n.total();
    if total != m.total() {
        return Ok(0);
    }
    let sys = symmetric_group(total);
    let mut en = crate::rewrite::RexEnumerator::new(&sys, cap);
    let mut webs = Vec::new();
    for p in sys.all_cosets(n.to_subset(), m.to_subset(), usize::MAX)? {
        for e in en.rex_set(&p)?.iter() {
            webs.push(web_from_expression(total, e)?);
        }
    }
    let index: HashMap<&Web, usize> = webs.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut parent: Vec<usize> = (0..webs.len()).collect();
    for (k, w) in webs.iter().enumerate() {
        for site in web_relation_sites(w) {
            if !site.relation.preserves_degree() {
                continue;
            }
            let v = apply_listed_site(w, site);
            if let Some(&j) = index.get(&v) {
                union(&mut parent, k, j);
            }
        }
    }
    Ok((0..webs.len()).filter(|&k| find(&mut parent, k) == k).count())
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra] = rb;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_degree_is_product() {
        let w = Web::merge(ObjectSeq(vec![2, 3]), 0).unwrap();
        assert_eq!(w.degree(), 6);
        assert_eq!(w.top(), &ObjectSeq(vec![5]));
    }

    #[test]
    fn text_round_trip() {
        let w = Web::parse("(1,2,1) ; merge@1(1,2) ; split@1(2,1)").unwrap();
        assert_eq!(w.top(), &ObjectSeq(vec![2, 1, 1]));
        assert_eq!(Web::parse(&w.to_text()).unwrap(), w);
    }
}
