//! Exact sparse polynomials over `Q` in the coordinates `x_η` of `n*`,
//! rational functions, points of `n*` and the Poisson structure.

mod bracket;
mod minor;
mod ratfn;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root::Root;

pub use bracket::{cartan_weight_action, theta_generic, PoissonBracket, SERIES_LIMIT};
pub use minor::{minor_poly, minor_poly_leibniz};
pub use ratfn::RatFn;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// A monomial `∏ x_η^{e_η}`, variables kept in `≻`-descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Root, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(r: Root) -> Self {
        Monomial(vec![(r, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Root, u32)>) -> Self {
        let mut m: BTreeMap<Root, u32> = BTreeMap::new();
        for (r, e) in powers {
            *m.entry(r).or_default() += e;
        }
        Monomial(m.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(Root, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, r: &Root) -> u32 {
        self.0
            .binary_search_by(|(v, _)| v.cmp(r))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => out.push(*a.next().unwrap()),
                    Ordering::Greater => out.push(*b.next().unwrap()),
                    Ordering::Equal => {
                        out.push((x.0, x.1 + y.1));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => out.push(*b.next().unwrap()),
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: Vec<(Root, u32)> = self.0.clone();
        for (r, e) in &other.0 {
            let i = out.binary_search_by(|(v, _)| v.cmp(r)).ok()?;
            if out[i].1 < *e {
                return None;
            }
            out[i].1 -= e;
        }
        out.retain(|(_, e)| *e > 0);
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(r, e)| {
                    let f = other.exponent(r);
                    (f > 0).then(|| (*r, (*e).min(f)))
                })
                .collect(),
        )
    }

    /// `∂/∂x_r` of the monomial: the exponent and the lowered monomial.
    pub fn derivative(&self, r: &Root) -> Option<(u32, Monomial)> {
        let e = self.exponent(r);
        (e > 0).then(|| (e, self.div(&Monomial::var(*r)).unwrap()))
    }
}

/// `≻`-lexicographic: compare exponents of variables from the `≻`-greatest down.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.0.iter().zip(&other.0) {
            match x.0.cmp(&y.0) {
                // x.0 is ≻-greater and absent from `other` at this position
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => continue,
                    o => return o,
                },
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Variables in `≻`-ascending order, e.g. `x[8,4]*x[4,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(r, e)| match e {
                1 => format!("x[{},{}]", r.row, r.col),
                _ => format!("x[{},{}]^{}", r.row, r.col, e),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(q(c))
    }

    pub fn var(r: Root) -> Self {
        Poly::term(Monomial::var(r), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Root> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(r, _)| *r))
            .collect()
    }

    pub fn contains_var(&self, r: &Root) -> bool {
        self.terms.keys().any(|m| m.exponent(r) > 0)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, r: &Root) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter_map(|(m, c)| m.derivative(r).map(|(e, m2)| (m2, c * q(e as i64)))),
        )
    }

    /// Substitutes every variable through `f`; variables mapped to `None` stay.
    pub fn substitute_with(&self, mut f: impl FnMut(&Root) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<Root, Option<Poly>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut kept = Monomial::one();
            for (r, e) in &m.0 {
                let img = cache.entry(*r).or_insert_with(|| f(r));
                match img {
                    Some(p) => t = &t * &p.pow(*e),
                    None => kept = kept.mul(&Monomial(vec![(*r, *e)])),
                }
            }
            out = &out + &t.mul_monomial(&kept);
        }
        out
    }

    pub fn substitute(&self, r: &Root, value: &Poly) -> Poly {
        self.substitute_with(|v| (v == r).then(|| value.clone()))
    }

    pub fn evaluate(&self, x: &Point) -> Q {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (r, e) in &m.0 {
                let v = x.get(r);
                if v.is_zero() {
                    t = Q::zero();
                    break;
                }
                t *= num_traits::pow(v, *e as usize);
            }
            total += t;
        }
        total
    }

    /// Positive rational `c` with `self / c` integral and primitive, signed
    /// so that `self / c` has a positive leading coefficient.
    pub fn content(&self) -> Q {
        let Some((_, lead)) = self.leading_term() else {
            return Q::one();
        };
        let (mut num, mut den) = (BigInt::zero(), BigInt::one());
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let c = Q::new(num, den);
        if lead.is_negative() {
            -c
        } else {
            c
        }
    }

    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let t = Poly::term(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Greatest common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.clone());
        }
        Some(Poly { terms })
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            vars: Vec<[usize; 3]>,
        }
        let terms: Vec<Term> = self
            .terms()
            .map(|(m, c)| Term {
                coeff: fmt_q(c),
                vars: m
                    .0
                    .iter()
                    .rev()
                    .map(|(r, e)| [r.row, r.col, *e as usize])
                    .collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("poly serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let bad = || Error::Parse(format!("malformed polynomial JSON: {v}"));
        let mut p = Poly::zero();
        for t in v.as_array().ok_or_else(bad)? {
            let c = parse_q(t.get("coeff").and_then(|c| c.as_str()).ok_or_else(bad)?)?;
            let mut powers = Vec::new();
            for var in t.get("vars").and_then(|x| x.as_array()).ok_or_else(bad)? {
                let idx: Vec<u64> = var
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(bad))
                    .collect::<Result<_>>()?;
                let [i, j, e] = idx[..] else {
                    return Err(bad());
                };
                powers.push((Root::new(i as usize, j as usize), e as u32));
            }
            p.add_term(Monomial::from_powers(powers), c);
        }
        Ok(p)
    }
}

impl From<Root> for Poly {
    fn from(r: Root) -> Self {
        Poly::var(r)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(Poly);

/// A point `X ∈ n*`, stored as a strictly lower triangular matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Point {
    n: usize,
    entries: BTreeMap<Root, Q>,
}

impl Point {
    pub fn zero(n: usize) -> Self {
        Point {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: &Root) -> Q {
        self.entries.get(r).cloned().unwrap_or_else(Q::zero)
    }

    /// Sets a below-diagonal entry; other positions are rejected.
    pub fn set(&mut self, r: Root, v: Q) -> Result<()> {
        if !r.is_positive() {
            return Err(Error::NonPositiveRoot(r));
        }
        if !r.fits(self.n) {
            return Err(Error::OutOfBoard { root: r, n: self.n });
        }
        if v.is_zero() {
            self.entries.remove(&r);
        } else {
            self.entries.insert(r, v);
        }
        Ok(())
    }

    pub fn entries(&self) -> &BTreeMap<Root, Q> {
        &self.entries
    }

    /// Strictly lower part of a square matrix (0-indexed rows and columns).
    pub fn from_lower(m: &[Vec<Q>]) -> Self {
        let n = m.len();
        let mut p = Point::zero(n);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate().take(i) {
                p.set(Root::new(i + 1, j + 1), v.clone()).unwrap();
            }
        }
        p
    }

    pub fn to_matrix(&self) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.n]; self.n];
        for (r, v) in &self.entries {
            m[r.row - 1][r.col - 1] = v.clone();
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "entries": self
                .entries
                .iter()
                .map(|(r, v)| serde_json::json!([r.row, r.col, fmt_q(v)]))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_matrix() {
            let cells: Vec<String> = row.iter().map(fmt_q).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
