use std::collections::HashMap;

use itertools::Itertools;

use super::{q, Poly};
use crate::error::{Error, Result};
use crate::root::Root;
use crate::weyl::MinorSpec;

fn entry(r: usize, c: usize, shifted: bool) -> Poly {
    if r > c {
        Poly::var(Root::new(r, c))
    } else if r == c && shifted {
        Poly::one()
    } else {
        Poly::zero()
    }
}

fn check(spec: &MinorSpec, n: usize) -> Result<()> {
    if spec.rows.len() != spec.cols.len() {
        return Err(Error::MinorShape {
            rows: spec.rows.len(),
            cols: spec.cols.len(),
        });
    }
    if let Some(&k) = spec
        .rows
        .iter()
        .chain(&spec.cols)
        .find(|&&k| k == 0 || k > n)
    {
        return Err(Error::Parse(format!("minor index {k} outside 1..={n}")));
    }
    Ok(())
}

/// Determinant of rows `I`, columns `J` of the generic strictly lower
/// triangular matrix `X` (or of `1 + X` when `shifted`).
pub fn minor_poly(spec: &MinorSpec, shifted: bool, n: usize) -> Result<Poly> {
    check(spec, n)?;
    let mut memo = HashMap::new();
    Ok(laplace(
        &spec.rows,
        &spec.cols,
        (1u64 << spec.rows.len()) - 1,
        shifted,
        &mut memo,
    ))
}

/// Expansion along the first remaining column; `mask` marks unused rows.
fn laplace(
    rows: &[usize],
    cols: &[usize],
    mask: u64,
    shifted: bool,
    memo: &mut HashMap<u64, Poly>,
) -> Poly {
    if mask == 0 {
        return Poly::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let k = rows.len() - mask.count_ones() as usize;
    let c = cols[k];
    let mut out = Poly::zero();
    let mut sign = 1;
    for (idx, &r) in rows.iter().enumerate() {
        if mask & (1 << idx) == 0 {
            continue;
        }
        let e = entry(r, c, shifted);
        if !e.is_zero() {
            let sub = laplace(rows, cols, mask & !(1 << idx), shifted, memo);
            out = &out + &(&e * &sub).scale(&q(sign));
        }
        sign = -sign;
    }
    memo.insert(mask, out.clone());
    out
}

/// The same determinant by the Leibniz formula.
pub fn minor_poly_leibniz(spec: &MinorSpec, shifted: bool, n: usize) -> Result<Poly> {
    check(spec, n)?;
    let m = spec.rows.len();
    let mut out = Poly::zero();
    for perm in (0..m).permutations(m) {
        let inversions = (0..m)
            .tuple_combinations()
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut t = Poly::int(if inversions % 2 == 0 { 1 } else { -1 });
        for (ci, &ri) in perm.iter().enumerate() {
            t = &t * &entry(spec.rows[ri], spec.cols[ci], shifted);
            if t.is_zero() {
                break;
            }
        }
        out = &out + &t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::x;
    use proptest::prelude::*;

    fn spec(rows: &[usize], cols: &[usize]) -> MinorSpec {
        MinorSpec::new(rows.to_vec(), cols.to_vec()).unwrap()
    }

    #[test]
    fn n8_three_by_three() {
        let got = minor_poly(&spec(&[5, 7, 8], &[2, 3, 4]), false, 8).unwrap();
        let m = [
            [(5, 2), (5, 3), (5, 4)],
            [(7, 2), (7, 3), (7, 4)],
            [(8, 2), (8, 3), (8, 4)],
        ];
        let e = |a: usize, b: usize| x(m[a][b].0, m[a][b].1);
        let want = &(&(&(&e(0, 0) * &(&(&e(1, 1) * &e(2, 2)) - &(&e(1, 2) * &e(2, 1))))
            - &(&e(0, 1) * &(&(&e(1, 0) * &e(2, 2)) - &(&e(1, 2) * &e(2, 0)))))
            + &(&e(0, 2) * &(&(&e(1, 0) * &e(2, 1)) - &(&e(1, 1) * &e(2, 0)))))
            + &Poly::zero();
        assert_eq!(got, want);
    }

    #[test]
    fn small_minors() {
        assert_eq!(minor_poly(&spec(&[4], &[1]), false, 4).unwrap(), x(4, 1));
        assert_eq!(minor_poly(&spec(&[4], &[1]), true, 4).unwrap(), x(4, 1));
        assert_eq!(minor_poly(&spec(&[2], &[2]), true, 4).unwrap(), Poly::one());
        assert!(minor_poly(&spec(&[2], &[2]), false, 4).unwrap().is_zero());
        let bad = MinorSpec {
            rows: vec![1, 2],
            cols: vec![1],
        };
        assert!(matches!(
            minor_poly(&bad, false, 3),
            Err(Error::MinorShape { .. })
        ));
    }

    fn arb_spec() -> impl Strategy<Value = MinorSpec> {
        (
            1usize..=4,
            prop::collection::btree_set(1usize..=7, 4),
            prop::collection::btree_set(1usize..=7, 4),
        )
            .prop_map(|(k, rs, cs)| {
                spec(
                    &rs.into_iter().take(k).collect::<Vec<_>>(),
                    &cs.into_iter().take(k).collect::<Vec<_>>(),
                )
            })
    }

    proptest! {
        #[test]
        fn laplace_matches_leibniz(s in arb_spec(), shifted in any::<bool>()) {
            prop_assert_eq!(minor_poly(&s, shifted, 7).unwrap(), minor_poly_leibniz(&s, shifted, 7).unwrap());
        }

        #[test]
        fn shift_irrelevant_strictly_below(s in arb_spec()) {
            if s.is_strictly_below() {
                prop_assert_eq!(minor_poly(&s, true, 7).unwrap(), minor_poly(&s, false, 7).unwrap());
            }
        }
    }
}
