//! Root systems of finite Coxeter groups and the permutation action of the
//! simple reflections on them.
//!
//! Roots are computed exactly. Components whose edge labels lie in
//! `{3, 4, 5, 6}` use a Cartan-type matrix with entries in `Z[φ]`
//! (`φ² = φ + 1`), so crystallographic types only ever see integers and the
//! `H` types use the golden ratio. Dihedral components with `m ≥ 7` use the
//! rotation-index model: the `2m` roots are the unit vectors at angles
//! `kπ/m`, and a reflection acts on the index `k` by an affine map mod `2m`.

use std::collections::{HashMap, VecDeque};
use std::ops::{Add, Mul, Neg, Sub};

use super::classify::CoxeterMatrix;
use super::subset::Gen;

/// An element `a + bφ` of `Z[φ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPhi {
    /// Rational part.
    pub a: i64,
    /// Coefficient of `φ`.
    pub b: i64,
}

impl ZPhi {
    /// Zero.
    pub const ZERO: ZPhi = ZPhi { a: 0, b: 0 };
    /// One.
    pub const ONE: ZPhi = ZPhi { a: 1, b: 0 };

    /// An integer.
    pub const fn int(a: i64) -> Self {
        ZPhi { a, b: 0 }
    }

    /// `a + bφ`.
    pub const fn new(a: i64, b: i64) -> Self {
        ZPhi { a, b }
    }

    /// Whether the value is zero.
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The sign of the real number `a + bφ` (exact).
    pub fn signum(self) -> i64 {
        // a + bφ = (2a + b + b√5) / 2; compare (2a+b) with -b√5.
        let c = 2 * self.a + self.b;
        let d = self.b;
        let sc = c.signum();
        let sd = d.signum();
        if sc >= 0 && sd >= 0 {
            return if sc == 0 && sd == 0 { 0 } else { 1 };
        }
        if sc <= 0 && sd <= 0 {
            return -1;
        }
        // Opposite signs: compare c² with 5d².
        let lhs = (c as i128) * (c as i128);
        let rhs = 5 * (d as i128) * (d as i128);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sc,
            std::cmp::Ordering::Less => sd,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

impl Add for ZPhi {
    type Output = ZPhi;
    fn add(self, o: ZPhi) -> ZPhi {
        ZPhi::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for ZPhi {
    type Output = ZPhi;
    fn sub(self, o: ZPhi) -> ZPhi {
        ZPhi::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for ZPhi {
    type Output = ZPhi;
    fn neg(self) -> ZPhi {
        ZPhi::new(-self.a, -self.b)
    }
}

impl Mul for ZPhi {
    type Output = ZPhi;
    fn mul(self, o: ZPhi) -> ZPhi {
        // (a + bφ)(c + dφ) = ac + (ad + bc)φ + bd(φ + 1)
        ZPhi::new(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a + self.b * o.b)
    }
}

/// Roots of one connected finite component, in local indices.
///
/// Positive roots are `0..n_pos`; the negative of root `i < n_pos` is
/// `i + n_pos`.
#[derive(Clone, Debug)]
pub(crate) struct LocalRoots {
    pub n_pos: usize,
    /// `action[g][r]`: image of local root `r` under local generator `g`.
    pub action: Vec<Vec<u32>>,
    /// Local index of the simple root of each local generator.
    pub simple: Vec<usize>,
}

/// Cartan-type entries `(a_ij, a_ji)` realising `m(i,j)`: the product must be
/// `4 cos²(π/m)`.
fn cartan_pair(m: u32) -> Option<(ZPhi, ZPhi)> {
    Some(match m {
        2 => (ZPhi::ZERO, ZPhi::ZERO),
        3 => (ZPhi::int(-1), ZPhi::int(-1)),
        4 => (ZPhi::int(-1), ZPhi::int(-2)),
        5 => (ZPhi::new(0, -1), ZPhi::new(0, -1)),
        6 => (ZPhi::int(-1), ZPhi::int(-3)),
        _ => return None,
    })
}

/// Builds the roots of the finite connected component `comp`.
pub(crate) fn component_roots(matrix: &CoxeterMatrix, comp: &[Gen]) -> LocalRoots {
    let r = comp.len();
    if r == 2 {
        if let Some(m) = matrix.m(comp[0], comp[1]) {
            if cartan_pair(m).is_none() {
                return dihedral_rotation_roots(m as usize);
            }
        }
    }
    cartan_roots(matrix, comp)
}

fn cartan_roots(matrix: &CoxeterMatrix, comp: &[Gen]) -> LocalRoots {
    let r = comp.len();
    // cartan[i][j] = <α_j, α_i^∨>, so that s_i(β) = β − (Σ_j β_j cartan[i][j]) α_i.
    let mut cartan = vec![vec![ZPhi::ZERO; r]; r];
    for i in 0..r {
        cartan[i][i] = ZPhi::int(2);
        for j in i + 1..r {
            let m = matrix.m(comp[i], comp[j]).expect("finite component");
            let (x, y) = cartan_pair(m).expect("edge label supported by the Z[φ] model");
            cartan[i][j] = x;
            cartan[j][i] = y;
        }
    }
    let reflect = |i: usize, beta: &[ZPhi]| -> Vec<ZPhi> {
        let mut pairing = ZPhi::ZERO;
        for j in 0..r {
            pairing = pairing + beta[j] * cartan[i][j];
        }
        let mut out = beta.to_vec();
        out[i] = out[i] - pairing;
        out
    };
    let mut roots: Vec<Vec<ZPhi>> = Vec::new();
    let mut index: HashMap<Vec<ZPhi>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut v = vec![ZPhi::ZERO; r];
        v[i] = ZPhi::ONE;
        index.insert(v.clone(), roots.len());
        roots.push(v.clone());
        queue.push_back(i);
    }
    while let Some(k) = queue.pop_front() {
        for i in 0..r {
            if k == i {
                continue;
            }
            let img = reflect(i, &roots[k]);
            debug_assert!(img.iter().all(|c| c.signum() >= 0), "s_i permutes positive roots other than α_i");
            if !index.contains_key(&img) {
                index.insert(img.clone(), roots.len());
                queue.push_back(roots.len());
                roots.push(img);
            }
        }
    }
    let n_pos = roots.len();
    let mut action = vec![vec![0u32; 2 * n_pos]; r];
    for (i, act) in action.iter_mut().enumerate() {
        for k in 0..n_pos {
            let img = if k == i { n_pos + i } else { index[&reflect(i, &roots[k])] };
            act[k] = img as u32;
            act[k + n_pos] = ((img + n_pos) % (2 * n_pos)) as u32;
        }
    }
    LocalRoots { n_pos, action, simple: (0..r).collect() }
}

/// Roots of `I_2(m)` as unit vectors at angles `kπ/m`, `k ∈ Z/2m`.
///
/// The simple roots are at `k = 0` (generator 0) and `k = m−1` (generator 1),
/// so the positive roots are exactly `k ∈ [0, m)`; the reflection in the root
/// at index `a` sends `k ↦ 2a + m − k (mod 2m)`.
fn dihedral_rotation_roots(m: usize) -> LocalRoots {
    let reflect = |a: usize| -> Vec<u32> { (0..2 * m).map(|k| ((2 * a + m + 2 * m - k) % (2 * m)) as u32).collect() };
    LocalRoots { n_pos: m, action: vec![reflect(0), reflect(m - 1)], simple: vec![0, m - 1] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_arithmetic() {
        let phi = ZPhi::new(0, 1);
        assert_eq!(phi * phi, ZPhi::new(1, 1));
        assert_eq!(ZPhi::new(-1, 1).signum(), 1); // φ − 1 ≈ 0.618
        assert_eq!(ZPhi::new(2, -1).signum(), 1); // 2 − φ ≈ 0.382
        assert_eq!(ZPhi::new(1, -1).signum(), -1); // 1 − φ
        assert_eq!(ZPhi::new(-2, 1).signum(), -1);
        assert_eq!(ZPhi::ZERO.signum(), 0);
    }

    #[test]
    fn dihedral_rotation_model_is_an_action() {
        for m in 7..12 {
            let roots = dihedral_rotation_roots(m);
            for act in &roots.action {
                // Involution, negates its own simple root.
                for k in 0..2 * m {
                    assert_eq!(act[act[k] as usize] as usize, k);
                }
            }
            assert_eq!(roots.action[0][0] as usize, m);
            assert_eq!(roots.action[1][m - 1] as usize, 2 * m - 1);
        }
    }
}
