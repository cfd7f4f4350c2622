//! Positive roots of type A as index pairs, basic subsets and the
//! singular/regular partition attached to a basic subset.
//!
//! A root `(i, j)` marks the matrix position in row `i`, column `j`; it is
//! positive when `i > j` (strictly below the diagonal). Roots are 1-indexed.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub row: usize,
    pub col: usize,
}

impl Root {
    pub const fn new(row: usize, col: usize) -> Self {
        Root { row, col }
    }

    pub fn is_positive(&self) -> bool {
        self.row > self.col
    }

    pub fn is_simple(&self) -> bool {
        self.row == self.col + 1
    }

    pub fn fits(&self, n: usize) -> bool {
        self.row >= 1 && self.col >= 1 && self.row <= n && self.col <= n
    }

    fn order_key(&self) -> (usize, Reverse<usize>) {
        (self.col, Reverse(self.row))
    }

    /// Compares two roots in the linear order `≻`: `Greater` means `self ≻ other`.
    ///
    /// `(k,m) ≻ (i,j)` iff `m < j`, or `m = j` and `k > i`.
    pub fn cmp_succ(&self, other: &Root) -> Ordering {
        other.order_key().cmp(&self.order_key())
    }

    /// `self ≻ other`, rejecting non-positive input.
    pub fn succ_gt(&self, other: &Root) -> Result<bool> {
        for r in [self, other] {
            if !r.is_positive() {
                return Err(Error::NonPositiveRoot(*r));
            }
        }
        Ok(self.cmp_succ(other) == Ordering::Greater)
    }

    /// `(i,j) + (j,k) = (i,k)` in either argument order.
    pub fn sum(&self, other: &Root) -> Option<Root> {
        if self.row == self.col || other.row == other.col {
            return None;
        }
        let glue = |a: &Root, b: &Root| {
            (a.col == b.row && a.row != b.col).then(|| Root::new(a.row, b.col))
        };
        glue(self, other).or_else(|| glue(other, self))
    }

    /// `self - other` when `other` is a summand of `self` along a shared index.
    pub fn difference(&self, other: &Root) -> Option<Root> {
        if self.row == other.row && self.col != other.col {
            Some(Root::new(other.col, self.col))
        } else if self.col == other.col && self.row != other.row {
            Some(Root::new(self.row, other.row))
        } else {
            None
        }
    }
}

/// Sorts roots along the sequence `(n,1), (n-1,1), …, (2,1), (n,2), …`,
/// i.e. `a < b` iff `a ≻ b`. A `BTreeSet<Root>` therefore iterates in
/// `≻`-descending order.
impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected \"(i,j)\", got {s:?}")))?;
        let mut parts = body.split(',').map(str::trim);
        let mut next = || -> Result<usize> {
            parts
                .next()
                .ok_or_else(|| Error::Parse(format!("missing index in {s:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let (row, col) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(Error::Parse(format!("too many indices in {s:?}")));
        }
        Ok(Root::new(row, col))
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(d)?;
        Ok(Root::new(row, col))
    }
}

/// Parses `"(i,j),(k,l)"`, whitespace allowed. The empty string is the empty list.
pub fn parse_root_list(s: &str) -> Result<Vec<Root>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed root in {s:?}")))?;
        out.push(rest[..=close].parse()?);
        rest = rest[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(Error::Parse(format!("trailing comma in {s:?}")));
            }
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("expected ',' in {s:?}")));
        }
    }
    Ok(out)
}

/// All `n(n-1)/2` positive roots in `≻`-descending order.
pub fn positive_roots(n: usize) -> Vec<Root> {
    (1..n)
        .flat_map(|col| (col + 1..=n).rev().map(move |row| Root::new(row, col)))
        .collect()
}

fn check_positive_on_board(r: &Root, n: usize) -> Result<()> {
    if !r.is_positive() {
        return Err(Error::NonPositiveRoot(*r));
    }
    if !r.fits(n) {
        return Err(Error::OutOfBoard { root: *r, n });
    }
    Ok(())
}

/// True iff no two roots share a row or a column.
pub fn is_basic<'a>(roots: impl IntoIterator<Item = &'a Root>, n: usize) -> Result<bool> {
    Ok(first_conflict(roots, n)?.is_none())
}

fn first_conflict<'a>(
    roots: impl IntoIterator<Item = &'a Root>,
    n: usize,
) -> Result<Option<(Root, Root)>> {
    let mut by_row = vec![None; n + 1];
    let mut by_col = vec![None; n + 1];
    for r in roots {
        check_positive_on_board(r, n)?;
        if let Some(prev) = by_row[r.row].replace(*r) {
            return Ok(Some((prev, *r)));
        }
        if let Some(prev) = by_col[r.col].replace(*r) {
            return Ok(Some((prev, *r)));
        }
    }
    Ok(None)
}

/// A set of positive roots with at most one root per row and per column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BasicSubset {
    n: usize,
    roots: BTreeSet<Root>,
}

impl BasicSubset {
    pub fn new(n: usize, roots: impl IntoIterator<Item = Root>) -> Result<Self> {
        let roots: BTreeSet<Root> = roots.into_iter().collect();
        if let Some((a, b)) = first_conflict(&roots, n)? {
            return Err(Error::NotBasic(a, b));
        }
        Ok(BasicSubset { n, roots })
    }

    pub fn empty(n: usize) -> Self {
        BasicSubset {
            n,
            roots: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &BTreeSet<Root> {
        &self.roots
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Parses the CLI notation `"(i,j),(k,l)"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        BasicSubset::new(n, parse_root_list(s)?)
    }
}

impl<'de> Deserialize<'de> for BasicSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            roots: Vec<Root>,
        }
        let raw = Raw::deserialize(d)?;
        BasicSubset::new(raw.n, raw.roots).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BasicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.roots.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// `Δ⁺ = S(D) ⊔ R(D)` and `M(D) = R(D) \ D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPartition {
    pub singular: BTreeSet<Root>,
    pub regular: BTreeSet<Root>,
    pub m_set: BTreeSet<Root>,
}

/// A positive root is D-singular when adding some positive root to it lands in `D`.
pub fn classify(d: &BasicSubset) -> RootPartition {
    let is_singular = |a: &Root| {
        d.roots().iter().any(|x| {
            // (i,j) + (j,k) = x or (k,i) + (i,j) = x
            (x.row == a.row && x.col < a.col) || (x.col == a.col && x.row > a.row)
        })
    };
    let (singular, regular): (BTreeSet<Root>, BTreeSet<Root>) =
        positive_roots(d.n()).into_iter().partition(is_singular);
    let m_set = regular.difference(d.roots()).copied().collect();
    RootPartition {
        singular,
        regular,
        m_set,
    }
}

/// Every basic subset of the board of size `n` (non-attacking rook
/// placements strictly below the diagonal), ordered by a column-major scan.
pub fn enumerate_basic(n: usize) -> Vec<BasicSubset> {
    fn place(
        n: usize,
        col: usize,
        used_rows: &mut Vec<bool>,
        acc: &mut Vec<Root>,
        out: &mut Vec<BasicSubset>,
    ) {
        if col >= n {
            out.push(BasicSubset {
                n,
                roots: acc.iter().copied().collect(),
            });
            return;
        }
        place(n, col + 1, used_rows, acc, out);
        for row in col + 1..=n {
            if !used_rows[row] {
                used_rows[row] = true;
                acc.push(Root::new(row, col));
                place(n, col + 1, used_rows, acc, out);
                acc.pop();
                used_rows[row] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![BasicSubset::empty(0)];
    }
    place(n, 1, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}
