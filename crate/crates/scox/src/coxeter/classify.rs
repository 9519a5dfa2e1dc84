//! Coxeter matrices and the classification of connected Coxeter diagrams.

use std::fmt;

use super::subset::{Gen, GenSubset};
use crate::error::{Result, ScoxError};

/// A symmetric Coxeter matrix; `None` encodes `m(s,t) = ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    n: usize,
    entries: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    /// Validates and wraps an `n × n` table.
    pub fn new(rows: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let n = rows.len();
        if n > super::subset::MAX_RANK {
            return Err(ScoxError::Validation(format!("rank {n} exceeds the supported maximum")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ScoxError::Validation(format!("row {i} has length {} (expected {n})", row.len())));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j {
                    if m != Some(1) {
                        return Err(ScoxError::Validation(format!("diagonal entry m({i},{i}) must be 1")));
                    }
                } else {
                    match m {
                        Some(v) if v < 2 => {
                            return Err(ScoxError::Validation(format!("off-diagonal entry m({i},{j}) = {v} < 2")))
                        }
                        _ => {}
                    }
                    if rows[j][i] != m {
                        return Err(ScoxError::Validation(format!("matrix is not symmetric at ({i},{j})")));
                    }
                }
                entries.push(m);
            }
        }
        Ok(CoxeterMatrix { n, entries })
    }

    /// Matrix of rank `n` with all off-diagonal entries 2 (the group `(Z/2)^n`).
    pub fn commuting(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| Some(if i == j { 1 } else { 2 })).collect()).collect();
        CoxeterMatrix::new(rows).expect("commuting matrix is valid")
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// `m(s,t)`; `None` is `∞`.
    pub fn m(&self, s: Gen, t: Gen) -> Option<u32> {
        self.entries[s * self.n + t]
    }

    /// Sets `m(s,t) = m(t,s)`.
    pub(crate) fn set(&mut self, s: Gen, t: Gen, m: Option<u32>) {
        self.entries[s * self.n + t] = m;
        self.entries[t * self.n + s] = m;
    }

    /// Whether `s` and `t` are joined in the Coxeter diagram (`m(s,t) ≥ 3`).
    pub fn adjacent(&self, s: Gen, t: Gen) -> bool {
        s != t && self.m(s, t) != Some(2)
    }

    /// Block-diagonal sum: generators of `self` first, then of `other`.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let n = self.n + other.n;
        let mut out = CoxeterMatrix::commuting(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[i * n + j] = self.m(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.entries[(i + self.n) * n + j + self.n] = other.m(i, j);
            }
        }
        out
    }

    /// Connected components of the diagram induced on `subset`, each sorted
    /// ascending, listed in order of their smallest generator.
    pub fn components(&self, subset: GenSubset) -> Vec<Vec<Gen>> {
        let mut seen = GenSubset::EMPTY;
        let mut out = Vec::new();
        for g in subset.iter() {
            if seen.contains(g) {
                continue;
            }
            let mut comp = vec![g];
            seen = seen.with(g);
            let mut i = 0;
            while i < comp.len() {
                let a = comp[i];
                for b in subset.iter() {
                    if !seen.contains(b) && self.adjacent(a, b) {
                        seen = seen.with(b);
                        comp.push(b);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Type of a connected Coxeter diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    /// `A_n`, `n ≥ 1`.
    A(usize),
    /// `B_n = C_n`, `n ≥ 2`.
    B(usize),
    /// `D_n`, `n ≥ 4`.
    D(usize),
    /// `E_6`.
    E6,
    /// `E_7`.
    E7,
    /// `E_8`.
    E8,
    /// `F_4`.
    F4,
    /// `H_3`.
    H3,
    /// `H_4`.
    H4,
    /// Dihedral `I_2(m)` for `m = 5` or `m ≥ 6` (with `m = 3, 4` reported as `A_2`, `B_2`).
    I2(u32),
    /// Any connected diagram outside the finite list.
    Infinite,
}

impl CoxeterType {
    /// Whether the type describes a finite group.
    pub fn is_finite(self) -> bool {
        self != CoxeterType::Infinite
    }

    /// Number of positive roots (= length of the longest element), for finite types.
    pub fn positive_root_count(self) -> Option<usize> {
        Some(match self {
            CoxeterType::A(n) => n * (n + 1) / 2,
            CoxeterType::B(n) => n * n,
            CoxeterType::D(n) => n * (n - 1),
            CoxeterType::E6 => 36,
            CoxeterType::E7 => 63,
            CoxeterType::E8 => 120,
            CoxeterType::F4 => 24,
            CoxeterType::H3 => 15,
            CoxeterType::H4 => 60,
            CoxeterType::I2(m) => m as usize,
            CoxeterType::Infinite => return None,
        })
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::E6 => write!(f, "E6"),
            CoxeterType::E7 => write!(f, "E7"),
            CoxeterType::E8 => write!(f, "E8"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::H3 => write!(f, "H3"),
            CoxeterType::H4 => write!(f, "H4"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
            CoxeterType::Infinite => write!(f, "infinite-type"),
        }
    }
}

/// Classifies the connected diagram on `comp` (which must be connected).
pub fn classify_component(matrix: &CoxeterMatrix, comp: &[Gen]) -> CoxeterType {
    let r = comp.len();
    if r == 1 {
        return CoxeterType::A(1);
    }
    // Collect edges (pairs with m ≥ 3) and their labels.
    let mut edges = Vec::new();
    for (i, &a) in comp.iter().enumerate() {
        for &b in &comp[i + 1..] {
            match matrix.m(a, b) {
                None => return CoxeterType::Infinite,
                Some(2) => {}
                Some(m) => edges.push((a, b, m)),
            }
        }
    }
    if r == 2 {
        return match edges[0].2 {
            3 => CoxeterType::A(2),
            4 => CoxeterType::B(2),
            m => CoxeterType::I2(m),
        };
    }
    // A finite diagram of rank ≥ 3 is a tree.
    if edges.len() != r - 1 {
        return CoxeterType::Infinite;
    }
    let degree = |g: Gen| edges.iter().filter(|&&(a, b, _)| a == g || b == g).count();
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 != 3).collect();
    let max_label = edges.iter().map(|e| e.2).max().unwrap_or(3);
    if max_label > 5 || heavy.len() > 1 {
        return CoxeterType::Infinite;
    }
    let branch: Vec<Gen> = comp.iter().copied().filter(|&g| degree(g) >= 3).collect();
    if comp.iter().any(|&g| degree(g) > 3) || branch.len() > 1 {
        return CoxeterType::Infinite;
    }
    if let Some(&&(a, b, m)) = heavy.first() {
        // Paths with a single label 4 or 5.
        if !branch.is_empty() {
            return CoxeterType::Infinite;
        }
        let at_end = degree(a) == 1 || degree(b) == 1;
        return match (m, r, at_end) {
            (4, _, true) => CoxeterType::B(r),
            (4, 4, false) => CoxeterType::F4,
            (5, 3, true) => CoxeterType::H3,
            (5, 4, true) => CoxeterType::H4,
            _ => CoxeterType::Infinite,
        };
    }
    let Some(&centre) = branch.first() else {
        return CoxeterType::A(r);
    };
    // Simply laced tree with one branch point: measure the three legs.
    let mut legs = Vec::new();
    for &(a, b, _) in edges.iter().filter(|&&(a, b, _)| a == centre || b == centre) {
        let mut prev = centre;
        let mut cur = if a == centre { b } else { a };
        let mut len = 1;
        loop {
            let next = edges
                .iter()
                .filter_map(|&(x, y, _)| {
                    if x == cur && y != prev {
                        Some(y)
                    } else if y == cur && x != prev {
                        Some(x)
                    } else {
                        None
                    }
                })
                .next();
            match next {
                Some(n) => {
                    prev = cur;
                    cur = n;
                    len += 1;
                }
                None => break,
            }
        }
        legs.push(len);
    }
    legs.sort_unstable();
    match legs[..] {
        [1, 1, k] => CoxeterType::D(k + 3),
        [1, 2, 2] => CoxeterType::E6,
        [1, 2, 3] => CoxeterType::E7,
        [1, 2, 4] => CoxeterType::E8,
        _ => CoxeterType::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(labels: &[u32]) -> CoxeterMatrix {
        let n = labels.len() + 1;
        let mut m = CoxeterMatrix::commuting(n);
        for (i, &l) in labels.iter().enumerate() {
            m.set(i, i + 1, Some(l));
        }
        m
    }

    fn classify(m: &CoxeterMatrix) -> CoxeterType {
        let comp: Vec<Gen> = (0..m.rank()).collect();
        classify_component(m, &comp)
    }

    #[test]
    fn paths_classify() {
        assert_eq!(classify(&path(&[3, 3, 3])), CoxeterType::A(4));
        assert_eq!(classify(&path(&[4, 3, 3])), CoxeterType::B(4));
        assert_eq!(classify(&path(&[3, 3, 4])), CoxeterType::B(4));
        assert_eq!(classify(&path(&[3, 4, 3])), CoxeterType::F4);
        assert_eq!(classify(&path(&[3, 5])), CoxeterType::H3);
        assert_eq!(classify(&path(&[5, 3, 3])), CoxeterType::H4);
        assert_eq!(classify(&path(&[3, 4, 3, 3])), CoxeterType::Infinite);
        assert_eq!(classify(&path(&[4, 3, 4])), CoxeterType::Infinite);
        assert_eq!(classify(&path(&[3, 6])), CoxeterType::Infinite);
        assert_eq!(classify(&path(&[7])), CoxeterType::I2(7));
    }

    #[test]
    fn branched_trees_classify() {
        // D5: 0 - 2, 1 - 2, 2 - 3 - 4
        let mut m = CoxeterMatrix::commuting(5);
        m.set(0, 2, Some(3));
        m.set(1, 2, Some(3));
        m.set(2, 3, Some(3));
        m.set(3, 4, Some(3));
        assert_eq!(classify(&m), CoxeterType::D(5));
        // Affine D4~: a centre with four neighbours.
        let mut m = CoxeterMatrix::commuting(5);
        for i in 1..5 {
            m.set(0, i, Some(3));
        }
        assert_eq!(classify(&m), CoxeterType::Infinite);
    }

    #[test]
    fn cycles_and_infinity_are_infinite() {
        let mut m = CoxeterMatrix::commuting(3);
        m.set(0, 1, Some(3));
        m.set(1, 2, Some(3));
        m.set(0, 2, Some(3));
        assert_eq!(classify(&m), CoxeterType::Infinite);
        let mut m = CoxeterMatrix::commuting(2);
        m.set(0, 1, None);
        assert_eq!(classify(&m), CoxeterType::Infinite);
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        assert!(CoxeterMatrix::new(vec![vec![Some(1), Some(3)], vec![Some(2), Some(1)]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![Some(2), Some(3)], vec![Some(3), Some(1)]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![Some(1), Some(1)], vec![Some(1), Some(1)]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![Some(1), None], vec![None, Some(1)]]).is_ok());
    }
}
