use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{owned_ops, Point, Poly, Q};
use crate::error::{Error, Result};
use crate::root::Root;

/// `num / den` with `den` primitive and of positive leading coefficient.
#[derive(Debug, Clone)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::normalized(num, den))
    }

    fn normalized(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return RatFn {
                num,
                den: Poly::one(),
            };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = num.div_monomial(&g).unwrap();
            den = den.div_monomial(&g).unwrap();
        }
        if den.constant_value().is_none() {
            if let Some(qt) = num.div_exact(&den) {
                return RatFn {
                    num: qt,
                    den: Poly::one(),
                };
            }
        }
        let c = den.content();
        if !c.is_one() {
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFn { num, den }
    }

    pub fn zero() -> Self {
        RatFn::from(Poly::zero())
    }

    pub fn one() -> Self {
        RatFn::from(Poly::one())
    }

    pub fn var(r: Root) -> Self {
        RatFn::from(Poly::var(r))
    }

    pub fn constant(c: Q) -> Self {
        RatFn::from(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_poly(&self) -> Option<Poly> {
        self.den
            .constant_value()
            .map(|c| self.num.scale(&c.recip()))
    }

    pub fn scale(&self, c: &Q) -> RatFn {
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn::normalized(self.num.pow(e), self.den.pow(e))
    }

    pub fn derivative(&self, r: &Root) -> RatFn {
        let dn = self.num.derivative(r);
        let dd = self.den.derivative(r);
        if dd.is_zero() {
            return RatFn::normalized(dn, self.den.clone());
        }
        RatFn::normalized(&(&dn * &self.den) - &(&self.num * &dd), self.den.pow(2))
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Root> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v
    }

    pub fn contains_var(&self, r: &Root) -> bool {
        self.num.contains_var(r) || self.den.contains_var(r)
    }

    pub fn evaluate(&self, x: &Point) -> Result<Q> {
        let d = self.den.evaluate(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.evaluate(x) / d)
    }

    /// Substitutes variables by rational functions.
    pub fn substitute_with(&self, mut f: impl FnMut(&Root) -> Option<RatFn>) -> Result<RatFn> {
        let mut cache = std::collections::BTreeMap::new();
        let mut sub = |p: &Poly| -> RatFn {
            let mut out = RatFn::zero();
            for (m, c) in p.terms() {
                let mut t = RatFn::constant(c.clone());
                for (r, e) in m.powers() {
                    let img = cache
                        .entry(*r)
                        .or_insert_with(|| f(r).unwrap_or_else(|| RatFn::var(*r)))
                        .clone();
                    t = &t * &img.pow(*e);
                }
                out = &out + &t;
            }
            out
        };
        let n = sub(&self.num);
        let d = sub(&self.den);
        n.div(&d)
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<Root> for RatFn {
    fn from(r: Root) -> Self {
        RatFn::var(r)
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFn {}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;

    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RatFn::normalized(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RatFn::normalized(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        RatFn::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;

    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;

    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        RatFn::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;

    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

owned_ops!(RatFn);
