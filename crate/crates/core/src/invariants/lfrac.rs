//! Fractions `num / ∏ A_k^{e_k}` whose denominators are products of a
//! growing list of primitive polynomials ("atoms").

use crate::error::{Error, Result};
use crate::poly::{Poly, RatFn};

#[derive(Debug, Clone, Default)]
pub(crate) struct Atoms {
    polys: Vec<Poly>,
}

impl Atoms {
    pub fn get(&self, k: usize) -> &Poly {
        &self.polys[k]
    }

    fn product(&self, exps: &[u32]) -> Poly {
        exps.iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(Poly::one(), |acc, (k, e)| &acc * &self.polys[k].pow(*e))
    }

    /// Splits `p = c · ∏ A_k^{f_k} · R` with `R` primitive and free of atoms.
    fn factor(&self, p: &Poly) -> (crate::poly::Q, Vec<u32>, Poly) {
        let c = p.content();
        let mut rest = p.scale(&c.recip());
        let mut f = vec![0; self.polys.len()];
        for (k, a) in self.polys.iter().enumerate() {
            if a.constant_value().is_some() {
                continue;
            }
            while let Some(qt) = rest.div_exact(a) {
                rest = qt;
                f[k] += 1;
            }
        }
        (c, f, rest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LFrac {
    pub num: Poly,
    pub den: Vec<u32>,
}

fn exp(v: &[u32], k: usize) -> u32 {
    v.get(k).copied().unwrap_or(0)
}

impl LFrac {
    pub fn poly(p: Poly) -> Self {
        LFrac {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &LFrac) -> LFrac {
        let len = self.den.len().max(other.den.len());
        LFrac {
            num: &self.num * &other.num,
            den: (0..len)
                .map(|k| exp(&self.den, k) + exp(&other.den, k))
                .collect(),
        }
    }

    pub fn add(&self, other: &LFrac, atoms: &Atoms) -> LFrac {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let len = self.den.len().max(other.den.len());
        let den: Vec<u32> = (0..len)
            .map(|k| exp(&self.den, k).max(exp(&other.den, k)))
            .collect();
        let lift = |f: &LFrac| {
            let extra: Vec<u32> = (0..len).map(|k| den[k] - exp(&f.den, k)).collect();
            &f.num * &atoms.product(&extra)
        };
        LFrac {
            num: &lift(self) + &lift(other),
            den,
        }
    }

    pub fn scale(&self, c: &crate::poly::Q) -> LFrac {
        LFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Removes atom factors shared by numerator and denominator.
    pub fn cancel(&mut self, atoms: &Atoms) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for k in 0..self.den.len() {
            while self.den[k] > 0 {
                match self.num.div_exact(atoms.get(k)) {
                    Some(qt) => {
                        self.num = qt;
                        self.den[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        while self.den.last() == Some(&0) {
            self.den.pop();
        }
    }

    /// `1 / self`, registering the atom-free part of the numerator as a new atom.
    pub fn inverse(&self, atoms: &mut Atoms) -> Result<LFrac> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, mut f, rest) = atoms.factor(&self.num);
        if rest.constant_value().is_none() {
            atoms.polys.push(rest);
            f.push(1);
        }
        let num = atoms.product(&self.den).scale(&c.recip());
        let mut out = LFrac { num, den: f };
        out.cancel(atoms);
        Ok(out)
    }

    pub fn to_ratfn(&self, atoms: &Atoms) -> RatFn {
        RatFn::new(self.num.clone(), atoms.product(&self.den)).expect("atoms are nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;
    use crate::poly::tests::x;

    #[test]
    fn inverse_and_cancel() {
        let mut atoms = Atoms::default();
        let f = LFrac::poly(x(4, 1).scale(&q(2)));
        let inv = f.inverse(&mut atoms).unwrap();
        assert_eq!(atoms.get(0), &x(4, 1));
        let mut prod = inv.mul(&LFrac::poly(&x(4, 1) * &x(3, 2)));
        prod.cancel(&atoms);
        assert!(prod.den.iter().all(|e| *e == 0));
        assert_eq!(
            prod.num,
            x(3, 2).scale(&crate::poly::Q::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn sums_share_denominators() {
        let mut atoms = Atoms::default();
        let inv = LFrac::poly(x(4, 1)).inverse(&mut atoms).unwrap();
        let a = inv.mul(&LFrac::poly(x(2, 1)));
        let b = LFrac::poly(x(3, 1));
        let s = a.add(&b, &atoms);
        assert_eq!(
            s.to_ratfn(&atoms),
            RatFn::new(&x(2, 1) + &(&x(3, 1) * &x(4, 1)), x(4, 1)).unwrap()
        );
        assert!(LFrac::poly(Poly::zero()).inverse(&mut atoms).is_err());
    }
}
