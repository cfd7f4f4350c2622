use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{q, Point, Q};

/// An upper unitriangular `n × n` rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitriMatrix {
    rows: Vec<Vec<Q>>,
}

impl UnitriMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        UnitriMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotUnitriangular);
            }
            for (j, v) in row.iter().enumerate() {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => v.is_one(),
                    std::cmp::Ordering::Greater => v.is_zero(),
                    std::cmp::Ordering::Less => true,
                };
                if !ok {
                    return Err(Error::NotUnitriangular);
                }
            }
        }
        Ok(UnitriMatrix { rows })
    }

    /// Entries above the diagonal drawn uniformly from `-3..=3`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut m = UnitriMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                m.rows[i][j] = q(rng.gen_range(-3..=3));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    /// Exact inverse by back substitution.
    pub fn inverse(&self) -> UnitriMatrix {
        let n = self.n();
        let mut inv = UnitriMatrix::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut s = Q::zero();
                for k in i + 1..=j {
                    s += &self.rows[i][k] * &inv.rows[k][j];
                }
                inv.rows[i][j] = -s;
            }
        }
        inv
    }
}

fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// `low(g · X · h)`: the left-right action of `N × N` on `n_−`.
pub fn left_right_move(g: &UnitriMatrix, h: &UnitriMatrix, x: &Point) -> Point {
    Point::from_lower(&matmul(&matmul(g.rows(), &x.to_matrix()), h.rows()))
}

/// `low(g · X · g^{-1})`: the coadjoint action of `N` on `n* ≅ n_−`.
pub fn coadjoint_move(g: &UnitriMatrix, x: &Point) -> Point {
    left_right_move(g, &g.inverse(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::Root;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(n: usize, entries: &[((usize, usize), i64)]) -> Point {
        let mut p = Point::zero(n);
        for ((i, j), v) in entries {
            p.set(Root::new(*i, *j), q(*v)).unwrap();
        }
        p
    }

    #[test]
    fn inverse_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let g = UnitriMatrix::random(n, &mut rng);
            let id = matmul(g.rows(), g.inverse().rows());
            assert_eq!(
                UnitriMatrix::from_rows(id).unwrap(),
                UnitriMatrix::identity(n)
            );
        }
    }

    #[test]
    fn rejects_non_unitriangular() {
        assert!(UnitriMatrix::from_rows(vec![vec![q(1), q(0)], vec![q(1), q(1)]]).is_err());
        assert!(UnitriMatrix::from_rows(vec![vec![q(2)]]).is_err());
    }

    #[test]
    fn identity_moves() {
        let x = pt(3, &[((2, 1), 1), ((3, 1), -2), ((3, 2), 5)]);
        let e = UnitriMatrix::identity(3);
        assert_eq!(left_right_move(&e, &e, &x), x);
        assert_eq!(coadjoint_move(&e, &x), x);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = UnitriMatrix::random(3, &mut rng);
        assert_eq!(coadjoint_move(&g, &Point::zero(3)), Point::zero(3));
    }

    #[test]
    fn two_by_two_left_right() {
        let g = UnitriMatrix::from_rows(vec![vec![q(1), q(4)], vec![q(0), q(1)]]).unwrap();
        let h = UnitriMatrix::from_rows(vec![vec![q(1), q(-7)], vec![q(0), q(1)]]).unwrap();
        let x = pt(2, &[((2, 1), 3)]);
        assert_eq!(left_right_move(&g, &h, &x), x);
    }

    #[test]
    fn three_by_three_coadjoint() {
        // g = 1 + a E_12, g^{-1} = 1 - a E_12
        let a = 2;
        let g = UnitriMatrix::from_rows(vec![
            vec![q(1), q(a), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)],
        ])
        .unwrap();
        let (u, v, w) = (3, 5, 7);
        let x = pt(3, &[((2, 1), u), ((3, 1), v), ((3, 2), w)]);
        let y = coadjoint_move(&g, &x);
        // right multiplication by g^{-1} subtracts a·(column 1) from column 2
        assert_eq!(y.get(&Root::new(2, 1)), q(u));
        assert_eq!(y.get(&Root::new(3, 1)), q(v));
        assert_eq!(y.get(&Root::new(3, 2)), q(w - a * v));
    }
}
