use alloc::vec::Vec;

use crate::algebra::{Polynomial, Var};

fn weight(i: u32) -> Polynomial {
    Polynomial::var(Var::Weight(i))
}

/// A torus-fixed point of `Gr(k, n)`: the span of the basis vectors in `subset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GrassFixedPoint {
    pub n: u32,
    /// Increasing indices in `1..=n`.
    pub subset: Vec<u32>,
}

impl GrassFixedPoint {
    /// `l_s - l_i` for `i` in the subset and `s` outside it.
    pub fn tangent_weights(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for &i in &self.subset {
            for s in (1..=self.n).filter(|s| !self.subset.contains(s)) {
                out.push(weight(s) - weight(i));
            }
        }
        out
    }

    /// `l_i` for `i` in the subset: the weights of the tautological bundle.
    pub fn tautological_weights(&self) -> Vec<Polynomial> {
        self.subset.iter().map(|&i| weight(i)).collect()
    }
}

/// A torus-fixed point of the flag manifold of `d` nested subspaces:
/// an ordered tuple of distinct indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagFixedPoint {
    pub n: u32,
    pub sequence: Vec<u32>,
}

impl FlagFixedPoint {
    /// `l_j - l_{sigma_m}` for each `m` and each `j` not among `sigma_1..sigma_m`.
    pub fn tangent_weights(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for (m, &sm) in self.sequence.iter().enumerate() {
            let used = &self.sequence[..=m];
            for j in (1..=self.n).filter(|j| !used.contains(j)) {
                out.push(weight(j) - weight(sm));
            }
        }
        out
    }
}

/// Fixed points of `Gr(k, n)` in lexicographic order of subsets.
pub fn grass_fixed_points(n: u32, k: u32) -> Vec<GrassFixedPoint> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<u32> = (1..=k).collect();
    loop {
        out.push(GrassFixedPoint { n, subset: cur.clone() });
        // advance to the next k-subset
        let mut i = k as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i as u32) {
                cur[i] += 1;
                for j in i + 1..k as usize {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Fixed points of the `d`-step flag manifold in `C^n`, in lexicographic
/// order of tuples.
pub fn flag_fixed_points(n: u32, d: u32) -> Vec<FlagFixedPoint> {
    fn rec(n: u32, d: u32, cur: &mut Vec<u32>, out: &mut Vec<FlagFixedPoint>) {
        if cur.len() == d as usize {
            out.push(FlagFixedPoint { n, sequence: cur.clone() });
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d <= n {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}
