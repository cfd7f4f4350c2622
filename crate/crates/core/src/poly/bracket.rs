use std::collections::BTreeSet;

use super::{q, Poly, RatFn, Q};
use crate::error::{Error, Result};
use crate::root::Root;

/// Upper bound on the number of brackets taken by [`theta_generic`].
pub const SERIES_LIMIT: usize = 64;

/// The linear Poisson bracket on `K[n*]`, optionally truncated to the
/// coordinates of a subquotient: brackets landing outside `support` vanish.
#[derive(Debug, Clone, Default)]
pub struct PoissonBracket {
    support: Option<BTreeSet<Root>>,
}

impl PoissonBracket {
    pub fn full() -> Self {
        PoissonBracket { support: None }
    }

    pub fn restricted(support: BTreeSet<Root>) -> Self {
        PoissonBracket {
            support: Some(support),
        }
    }

    fn keeps(&self, r: &Root) -> bool {
        r.is_positive() && self.support.as_ref().is_none_or(|s| s.contains(r))
    }

    /// `{x_(i,j), x_(k,m)} = δ_jk x_(i,m) − δ_mi x_(k,j)`.
    pub fn generator(&self, u: &Root, v: &Root) -> Poly {
        let mut out = Poly::zero();
        if u.col == v.row {
            let r = Root::new(u.row, v.col);
            if self.keeps(&r) {
                out = &out + &Poly::var(r);
            }
        }
        if v.col == u.row {
            let r = Root::new(v.row, u.col);
            if self.keeps(&r) {
                out = &out - &Poly::var(r);
            }
        }
        out
    }

    pub fn poly(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        let gv = g.variables();
        for u in f.variables() {
            let du = f.derivative(&u);
            for v in &gv {
                let b = self.generator(&u, v);
                if b.is_zero() {
                    continue;
                }
                out = &out + &(&(&du * &g.derivative(v)) * &b);
            }
        }
        out
    }

    pub fn ratfn(&self, f: &RatFn, g: &RatFn) -> RatFn {
        let mut out = RatFn::zero();
        let gv = g.variables();
        for u in f.variables() {
            let mut du: Option<RatFn> = None;
            for v in &gv {
                let b = self.generator(&u, v);
                if b.is_zero() {
                    continue;
                }
                let du = du.get_or_insert_with(|| f.derivative(&u));
                out = &out + &(&(&*du * &g.derivative(v)) * &RatFn::from(b));
            }
        }
        out
    }
}

/// `ad_{h_a}`: `x_(i,j) ↦ (δ_aj − δ_ai) x_(i,j)`, extended as a derivation.
pub fn cartan_weight_action(a: usize, f: &Poly) -> Poly {
    Poly::from_terms(f.terms().map(|(m, c)| {
        let w: i64 = m
            .powers()
            .iter()
            .map(|(r, e)| (*e as i64) * ((r.col == a) as i64 - (r.row == a) as i64))
            .sum();
        (m.clone(), c * q(w))
    }))
}

/// `Θ_p(a) = Σ_s (−1)^s D_p^s(a) q^s / s!` with `D_p = {p, ·}`, for a pair
/// with `{p, q} = 1`.
pub fn theta_generic(br: &PoissonBracket, p: &RatFn, qq: &RatFn, a: &RatFn) -> Result<RatFn> {
    if br.ratfn(p, qq) != RatFn::one() {
        return Err(Error::NotCanonicalPair);
    }
    let mut out = RatFn::zero();
    let mut d = a.clone();
    let mut qs = RatFn::one();
    let mut fact = Q::from_integer(1.into());
    for s in 0..=SERIES_LIMIT {
        if d.is_zero() {
            return Ok(out);
        }
        if s > 0 {
            fact *= q(s as i64);
            qs = &qs * qq;
        }
        let sign = if s % 2 == 0 { q(1) } else { q(-1) };
        out = &out + &(&d * &qs).scale(&(sign / &fact));
        d = br.ratfn(p, &d);
    }
    if d.is_zero() {
        Ok(out)
    } else {
        Err(Error::SeriesDiverged(SERIES_LIMIT))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::{arb_poly, x};
    use proptest::prelude::*;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j)
    }

    #[test]
    fn generator_examples() {
        let br = PoissonBracket::full();
        assert_eq!(br.poly(&x(3, 2), &x(2, 1)), x(3, 1));
        assert_eq!(br.poly(&x(2, 1), &x(3, 2)), -x(3, 1));
        assert_eq!(
            br.poly(&x(3, 2), &(&x(2, 1) * &x(2, 1))),
            (&x(3, 1) * &x(2, 1)).scale(&q(2))
        );
        assert!(br.poly(&x(4, 1), &x(3, 2)).is_zero());
    }

    #[test]
    fn truncation() {
        let br = PoissonBracket::restricted([r(3, 2), r(2, 1)].into_iter().collect());
        assert!(br.poly(&x(3, 2), &x(2, 1)).is_zero());
    }

    #[test]
    fn cartan_examples() {
        let f = &(&x(8, 4) * &x(4, 1)) + &(&x(8, 3) * &x(3, 1));
        assert_eq!(cartan_weight_action(8, &f), -&f);
        // both monomials have total weight (8,1)
        assert_eq!(cartan_weight_action(1, &f), f.clone());
        assert!(cartan_weight_action(4, &f).is_zero());
        assert!(cartan_weight_action(2, &f).is_zero());
    }

    #[test]
    fn theta_trivial_cases() {
        let br = PoissonBracket::full();
        // p = x_{bt}/x_{st}, q = −x_{sb} with (s,b,t) = (4,3,1)
        let p = RatFn::new(x(3, 1), x(4, 1)).unwrap();
        let qq = RatFn::from(-x(4, 3));
        assert_eq!(theta_generic(&br, &p, &qq, &p).unwrap(), p);
        let inert = RatFn::from(x(4, 1));
        assert_eq!(theta_generic(&br, &p, &qq, &inert).unwrap(), inert);
    }

    #[test]
    fn theta_one_bracket() {
        let br = PoissonBracket::full();
        let (s, b, t, a) = (5, 3, 1, 4);
        let p = RatFn::new(x(b, t), x(s, t)).unwrap();
        let qq = RatFn::from(-x(s, b));
        let got = theta_generic(&br, &p, &qq, &RatFn::from(x(a, b))).unwrap();
        let want = &RatFn::from(x(a, b)) - &RatFn::new(&x(a, t) * &x(s, b), x(s, t)).unwrap();
        assert_eq!(got, want);
        // the determinant form
        let det = RatFn::new(&(&x(a, b) * &x(s, t)) - &(&x(a, t) * &x(s, b)), x(s, t)).unwrap();
        assert_eq!(got, det);
    }

    #[test]
    fn theta_rejects_non_canonical_pair() {
        let br = PoissonBracket::full();
        let err = theta_generic(
            &br,
            &RatFn::from(x(2, 1)),
            &RatFn::from(x(3, 1)),
            &RatFn::one(),
        );
        assert_eq!(err.unwrap_err(), Error::NotCanonicalPair);
    }

    fn vars() -> Vec<Root> {
        vec![r(2, 1), r(3, 1), r(3, 2), r(4, 2), r(4, 3), r(4, 1)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn antisymmetry_and_leibniz(f in arb_poly(vars(), 3, 3), g in arb_poly(vars(), 3, 3), h in arb_poly(vars(), 3, 3)) {
            let br = PoissonBracket::full();
            prop_assert_eq!(br.poly(&f, &g), -br.poly(&g, &f));
            prop_assert_eq!(
                br.poly(&f, &(&g * &h)),
                &(&br.poly(&f, &g) * &h) + &(&g * &br.poly(&f, &h))
            );
        }

        #[test]
        fn jacobi(f in arb_poly(vars(), 3, 3), g in arb_poly(vars(), 3, 3), h in arb_poly(vars(), 3, 3)) {
            let br = PoissonBracket::full();
            let s = &(&br.poly(&f, &br.poly(&g, &h)) + &br.poly(&g, &br.poly(&h, &f)))
                + &br.poly(&h, &br.poly(&f, &g));
            prop_assert!(s.is_zero());
        }

        #[test]
        fn cartan_derivation(a in 1usize..=4, f in arb_poly(vars(), 3, 3), g in arb_poly(vars(), 3, 3)) {
            let br = PoissonBracket::full();
            prop_assert_eq!(
                cartan_weight_action(a, &(&f * &g)),
                &(&cartan_weight_action(a, &f) * &g) + &(&f * &cartan_weight_action(a, &g))
            );
            prop_assert_eq!(
                cartan_weight_action(a, &br.poly(&f, &g)),
                &br.poly(&cartan_weight_action(a, &f), &g) + &br.poly(&f, &cartan_weight_action(a, &g))
            );
        }
    }
}
