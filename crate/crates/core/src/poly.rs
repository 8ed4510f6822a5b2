//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingInner {
    field: Field,
    vars: Vec<String>,
}

/// Ambient ring descriptor `k[x_0, ..., x_{n-1}]`: coefficient field plus
/// variable names. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new<S: Into<String>>(field: Field, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidParameter(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, vars })))
    }

    /// Variables `{prefix}{start}`, ..., `{prefix}{start + count - 1}`.
    pub fn indexed(field: Field, prefix: &str, start: usize, count: usize) -> Ring {
        Ring::new(field, (start..start + count).map(|i| format!("{prefix}{i}")))
            .expect("generated names are valid identifiers")
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn num_vars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The polynomial `x_i`.
    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.num_vars(), "variable index {i} out of range");
        Polynomial::monomial(self, Monomial::var(i), self.field().one())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        Polynomial::monomial(self, Monomial::one(), c)
    }

    pub fn from_i64(&self, n: i64) -> Polynomial {
        self.constant(self.field().from_i64(n))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::parse::parse_poly(text, self)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A commutative monomial: sorted `(variable, exponent)` pairs, exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Monomial {
        Monomial(vec![(i, 1)])
    }

    /// Build from arbitrary pairs; zero exponents are dropped and repeated
    /// variables are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Monomial {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lower the exponent of `var` by one. Returns the old exponent with the
    /// new monomial, or `None` if `var` does not occur.
    pub fn lower(&self, var: usize) -> Option<(u32, Monomial)> {
        let k = self.0.binary_search_by_key(&var, |&(v, _)| v).ok()?;
        let e = self.0[k].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(k);
        } else {
            out[k].1 -= 1;
        }
        Some((e, Monomial(out)))
    }
}

/// Graded lexicographic order: total degree first, then the exponent vector
/// compared from the lowest variable index up.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let mut i = 0;
            while i < a.len() && i < b.len() {
                if a[i] != b[i] {
                    // the smaller variable index carries the larger weight
                    return match a[i].0.cmp(&b[i].0) {
                        Ordering::Less => Ordering::Greater,
                        Ordering::Greater => Ordering::Less,
                        Ordering::Equal => a[i].1.cmp(&b[i].1),
                    };
                }
                i += 1;
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `k[x_0, ..., x_{n-1}]` in canonical form: no zero
/// coefficients are stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coeff) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field().zero())
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = self.ring.from_i64(1);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_var`. Exponents are read
    /// in the coefficient field, so `d(x^p)/dx = 0` in characteristic `p`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let field = self.ring.field();
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(var) {
                out.add_term(lowered, c.mul(&field.from_u64(e as u64)));
            }
        }
        out
    }

    /// Same polynomial divided by its leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on ring mismatch; use [`Polynomial::try_add`] for a checked sum.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().from_i64(-1))
    }
}

/// Prints in descending graded-lex order, in a form [`Ring::parse`] reads back.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            for (j, &(v, e)) in m.pairs().iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.var_name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> Ring {
        Ring::new(Field::Rational, ["x", "y"]).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = qxy();
        let (x, y) = (r.var(0), r.var(1));
        assert_eq!(&(&x + &y) + &(-&x), y);
        assert_eq!(&r.zero() + &y, y);
    }

    #[test]
    fn rational_coefficients_combine() {
        let r = qxy();
        let a = r.parse("1/2*x").unwrap();
        let b = r.parse("1/3*x").unwrap();
        assert_eq!(&a + &b, r.parse("5/6*x").unwrap());
    }

    #[test]
    fn square_of_binomial() {
        let r = qxy();
        let s = &r.var(0) + &r.var(1);
        let expected = Polynomial::from_terms(
            &r,
            [
                (Monomial::from_pairs([(0, 2)]), r.field().from_i64(1)),
                (Monomial::from_pairs([(0, 1), (1, 1)]), r.field().from_i64(2)),
                (Monomial::from_pairs([(1, 2)]), r.field().from_i64(1)),
            ],
        );
        assert_eq!(&s * &s, expected);
        assert!((&s * &r.zero()).is_zero());
    }

    #[test]
    fn partial_derivatives() {
        let r = qxy();
        let p = r.parse("x^2*y").unwrap();
        assert_eq!(p.partial_derivative(0), r.parse("2*x*y").unwrap());
        assert!(r.var(1).partial_derivative(0).is_zero());
        let f2 = Ring::new(Field::prime(2).unwrap(), ["x"]).unwrap();
        assert!(f2.parse("x^2").unwrap().partial_derivative(0).is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = qxy().var(0);
        let other = Ring::new(Field::Rational, ["x", "z"]).unwrap();
        assert_eq!(a.try_add(&other.var(0)), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&other.var(0)), Err(Error::RingMismatch));
        // structurally equal descriptors are the same ring
        assert!(a.try_add(&qxy().var(1)).is_ok());
    }

    #[test]
    fn graded_lex_display() {
        let r = qxy();
        let p = r.parse("y + x^2 - 3 + x*y").unwrap();
        assert_eq!(p.to_string(), "x^2 + x*y + y - 3");
        assert_eq!(r.parse("x^3 - 1/2*y").unwrap().to_string(), "x^3 - 1/2*y");
        assert_eq!(r.parse("-x").unwrap().to_string(), "-x");
    }

    #[test]
    fn monomial_order_is_graded() {
        let x2 = Monomial::from_pairs([(0, 2)]);
        let xy = Monomial::from_pairs([(0, 1), (1, 1)]);
        let y3 = Monomial::from_pairs([(1, 3)]);
        assert!(x2 > xy);
        assert!(y3 > x2);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert!(Monomial::one() < Monomial::var(5));
    }
}
