//! Permutations of `1..=n`, the element `w_D`, the homogeneity criterion and
//! the reflection factorization of `w_D` along `C(D)`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::diagram::extension;
use crate::error::{Error, Result};
use crate::root::{classify, is_basic, BasicSubset, Root};

/// A permutation `w` of `1..=n`, stored one-line: `images[j-1] = w(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    /// The reflection `r_(i,j)`: the transposition of `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    /// `(self · other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.n(),
            other.n(),
            "composing permutations of different sizes"
        );
        Permutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (j, &v) in self.images.iter().enumerate() {
            inv[v - 1] = j + 1;
        }
        Permutation { images: inv }
    }

    /// `w(i,j) = (w(i), w(j))`; positive iff `w(i) > w(j)`.
    pub fn act_on_root(&self, r: &Root) -> Root {
        Root::new(self.apply(r.row), self.apply(r.col))
    }

    /// Two-line matrix notation.
    pub fn render_two_line(&self) -> String {
        let top = (1..=self.n()).map(|j| j.to_string()).join(" ");
        format!("{top}\n{self}")
    }

    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(|images| Permutation { images })
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.images.iter().join(" "))
    }
}

/// Rows `I` and columns `J` of the minor `P_ij`, both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::MinorShape {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        rows.sort_unstable();
        cols.sort_unstable();
        Ok(MinorSpec { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Every row index exceeds every column index, so the submatrix of
    /// `1 + X` agrees with that of `X`.
    pub fn is_strictly_below(&self) -> bool {
        match (self.rows.first(), self.cols.last()) {
            (Some(r), Some(c)) => r > c,
            _ => true,
        }
    }
}

/// `w_D(j)` is the greatest `i` with `(i,j) ∉ M(D)` not already used.
pub fn w_d(d: &BasicSubset) -> Permutation {
    let n = d.n();
    let m_set = classify(d).m_set;
    let mut used = vec![false; n + 1];
    let mut images = Vec::with_capacity(n);
    for j in 1..=n {
        let i = (1..=n)
            .rev()
            .find(|&i| !used[i] && !m_set.contains(&Root::new(i, j)))
            .expect("greedy choice always succeeds");
        used[i] = true;
        images.push(i);
    }
    Permutation { images }
}

/// The basic subset `D` with `w_D = w`, if one exists.
pub fn basic_subset_of(w: &Permutation) -> Option<BasicSubset> {
    let cand: Vec<Root> = (1..=w.n())
        .filter(|&j| w.apply(j) > j)
        .map(|j| Root::new(w.apply(j), j))
        .collect();
    if !is_basic(&cand, w.n()).ok()? {
        return None;
    }
    let d = BasicSubset::new(w.n(), cand).ok()?;
    (w_d(&d) == *w).then_some(d)
}

/// `I_{w,j}`: the `k ≥ w(j)` not hit by `w` on `1..j`.
pub fn i_wj(w: &Permutation, j: usize) -> BTreeSet<usize> {
    let earlier: BTreeSet<usize> = (1..j).map(|b| w.apply(b)).collect();
    (w.apply(j)..=w.n())
        .filter(|k| !earlier.contains(k))
        .collect()
}

/// Row indices `i ∈ I_{w,j}` other than `w(j)`: the vanishing conditions
/// `P_ij = 0` of the cell in column `j`.
pub fn vanishing_rows(w: &Permutation, j: usize) -> Vec<usize> {
    i_wj(w, j)
        .into_iter()
        .filter(|&k| k != w.apply(j))
        .collect()
}

/// No pair `i ≤ j` with `i` a vanishing row of column `j`.
pub fn is_homogeneous(w: &Permutation) -> bool {
    (1..=w.n()).all(|j| vanishing_rows(w, j).iter().all(|&i| i > j))
}

/// `J' = {b < j : w(b) > i}`, `J = J' ∪ {j}`, `I = w(J') ∪ {i}`.
pub fn minor_spec(w: &Permutation, i: usize, j: usize) -> MinorSpec {
    let j_prime: Vec<usize> = (1..j).filter(|&b| w.apply(b) > i).collect();
    let mut rows: Vec<usize> = j_prime.iter().map(|&b| w.apply(b)).collect();
    rows.push(i);
    let mut cols = j_prime;
    cols.push(j);
    MinorSpec::new(rows, cols).expect("|I| = |J| by construction")
}

/// `C(D) = [ξ_1, …, ξ_c]` with `w_D = r_{ξ_1} ⋯ r_{ξ_c}`.
pub fn factorize(d: &BasicSubset) -> Vec<Root> {
    extension(d)
}

/// `r_{ξ_1} ⋯ r_{ξ_k}` over the given roots.
pub fn reflection_product(n: usize, roots: &[Root]) -> Permutation {
    roots.iter().fold(Permutation::identity(n), |acc, r| {
        acc.compose(&Permutation::transposition(n, r.row, r.col))
    })
}

/// `[w_0, w_1, …, w_c]` with `w_i = r_1 ⋯ r_i` and `w_0 = e`.
pub fn partial_products(n: usize, roots: &[Root]) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(n)];
    for r in roots {
        let next = out
            .last()
            .unwrap()
            .compose(&Permutation::transposition(n, r.row, r.col));
        out.push(next);
    }
    out
}
