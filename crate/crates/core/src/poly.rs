//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept in a vector sorted in descending graded-lex order, with no
//! zero coefficients. Multiplication and exact division scale both operands
//! to integer coefficients first and work over ℤ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::symbol::{Symbol, SymbolTable};

/// Default cap on the number of terms of any intermediate product.
pub const DEFAULT_TERM_LIMIT: usize = 5_000_000;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rat)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(Monomial::var(s, 1), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: vec![(m, c)] }
    }

    /// Collects arbitrary terms, merging repeats and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut map: HashMap<Monomial, Rat> = HashMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly { terms }
    }

    /// Caller guarantees sorted, distinct, nonzero terms.
    fn from_sorted(terms: Vec<(Monomial, Rat)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MultiPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rat)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rat {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rat::zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rat)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Rat {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, x: Symbol) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(x) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, x: Symbol) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(x) > 0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.iter().map(|(s, _)| s))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat(k))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: &Rat| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), fix(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
        MultiPoly::from_sorted(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other, usize::MAX)
            .expect("unbounded multiplication cannot hit the term guard")
    }

    /// Product with a cap on the number of distinct terms.
    pub fn try_mul(&self, other: &Self, limit: usize) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let (da, a) = self.integer_form();
        let (db, b) = other.integer_form();
        let prod = mul_integer(&a, &b, limit)?;
        let den = da * db;
        Ok(Self::from_integer_terms(prod, &den))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Splits into (common denominator, integer terms).
    pub(crate) fn integer_form(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            if !c.denom().is_one() {
                den = den.lcm(c.denom());
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = if den.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&den / c.denom())
                };
                (m.clone(), v)
            })
            .collect();
        (den, terms)
    }

    /// Inverse of `integer_form`; input must be sorted descending.
    pub(crate) fn from_integer_terms(terms: Vec<(Monomial, BigInt)>, den: &BigInt) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let r = if den.is_one() {
                    Rat::from_integer(c)
                } else {
                    Rat::new(c, den.clone())
                };
                (m, r)
            })
            .collect();
        MultiPoly::from_sorted(terms)
    }

    /// Exact quotient `self / b`, failing with `NotDivisible` on a nonzero
    /// remainder.
    pub fn exact_divide(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(k) = b.constant_value() {
            return Ok(self.scale(&k.recip()));
        }
        // a = A/da, b = cb*B'/db with B' primitive; by Gauss's lemma a
        // rational quotient A/B' is integral whenever it exists.
        let (da, a) = self.integer_form();
        let (db, b_int) = b.integer_form();
        let cb = b_int
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
        let b_prim: Vec<(Monomial, BigInt)> =
            b_int.into_iter().map(|(m, c)| (m, c / &cb)).collect();
        let q = divide_integer(a, &b_prim)?;
        let scale = Rat::new(db, da * cb);
        let mut out = Self::from_integer_terms(q, &BigInt::one());
        if !scale.is_one() {
            out = out.scale(&scale);
        }
        Ok(out)
    }

    pub fn divides(&self, a: &Self) -> bool {
        a.exact_divide(self).is_ok()
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rat::zero();
        }
        Rat::new(num, den)
    }

    /// Primitive integer form with positive leading coefficient.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut k = self.content();
        if self.terms[0].1.is_negative() {
            k = -k;
        }
        if k.is_one() {
            return self.clone();
        }
        self.scale(&k.recip())
    }

    /// The unit·content factor `k` with `self = k · normalize(self)`.
    pub fn unit_content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let k = self.content();
        if self.terms[0].1.is_negative() {
            -k
        } else {
            k
        }
    }

    pub fn partial_derivative(&self, x: Symbol) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(x);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::var(x, e - 1));
            out.push((m2, c * rat(e as i64)));
        }
        // Differentiation in one variable can reorder terms.
        Self::from_terms(out)
    }

    /// Coefficients `c_0..c_d` with `self = Σ c_k x^k`.
    pub fn as_univariate(&self, x: Symbol) -> Vec<MultiPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.degree_in(x) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(x);
            buckets[e as usize].push((rest, c.clone()));
        }
        // Removing one variable preserves the relative order within a bucket
        // only for plain lex, so re-sort.
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly::from_sorted(t)
            })
            .collect()
    }

    pub fn from_univariate(coeffs: &[MultiPoly], x: Symbol) -> Self {
        let mut out = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let xm = Monomial::var(x, k as u16);
            for (m, v) in &c.terms {
                out.push((m.mul(&xm), v.clone()));
            }
        }
        Self::from_terms(out)
    }

    /// Coefficient of `x^k`.
    pub fn coefficient(&self, x: Symbol, k: u16) -> MultiPoly {
        let mut t: Vec<(Monomial, Rat)> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (e, rest) = m.split_off(x);
                (e == k).then(|| (rest, c.clone()))
            })
            .collect();
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly::from_sorted(t)
    }

    pub fn evaluate(&self, assignment: &HashMap<Symbol, Rat>) -> Result<Rat> {
        let mut cache: HashMap<(Symbol, u16), Rat> = HashMap::new();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (s, e) in m.iter() {
                let pw = match cache.get(&(s, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let base = assignment
                            .get(&s)
                            .ok_or_else(|| Error::MissingAssignment(format!("#{}", s.0)))?;
                        let p = num_traits::pow(base.clone(), e as usize);
                        cache.insert((s, e), p.clone());
                        p
                    }
                };
                v *= pw;
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Like `evaluate` but reports missing symbols by name.
    pub fn evaluate_named(
        &self,
        assignment: &HashMap<Symbol, Rat>,
        table: &SymbolTable,
    ) -> Result<Rat> {
        self.evaluate(assignment).map_err(|e| match e {
            Error::MissingAssignment(_) => {
                let missing = self
                    .symbols()
                    .into_iter()
                    .find(|s| !assignment.contains_key(s))
                    .map(|s| table.name(s).to_string())
                    .unwrap_or_default();
                Error::MissingAssignment(missing)
            }
            other => other,
        })
    }

    /// Substitutes constants for some symbols, leaving the rest symbolic.
    pub fn partial_evaluate(&self, assignment: &HashMap<Symbol, Rat>) -> Self {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = Vec::new();
            for (s, e) in m.iter() {
                match assignment.get(&s) {
                    Some(x) => v *= num_traits::pow(x.clone(), e as usize),
                    None => rest.push((s, e)),
                }
            }
            if !v.is_zero() {
                out.push((Monomial::from_pairs(rest), v));
            }
        }
        Self::from_terms(out)
    }

    /// Replaces `x` by `value` (Horner scheme in `x`).
    pub fn substitute(&self, x: Symbol, value: &MultiPoly) -> Self {
        if !self.contains(x) {
            return self.clone();
        }
        let cs = self.as_univariate(x);
        let mut acc = MultiPoly::zero();
        for c in cs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Simultaneous substitution of several symbols.
    pub fn substitute_many(&self, subs: &[(Symbol, MultiPoly)]) -> Self {
        let mut acc = MultiPoly::zero();
        let mut powers: HashMap<(Symbol, u16), MultiPoly> = HashMap::new();
        let mut out_terms: Vec<(Monomial, Rat)> = Vec::new();
        for (m, c) in &self.terms {
            let mut fac = MultiPoly::constant(c.clone());
            let mut rest = Vec::new();
            let mut touched = false;
            for (s, e) in m.iter() {
                if let Some((_, v)) = subs.iter().find(|(t, _)| *t == s) {
                    touched = true;
                    let p = powers
                        .entry((s, e))
                        .or_insert_with(|| v.pow(e as u32))
                        .clone();
                    fac = fac.mul(&p);
                } else {
                    rest.push((s, e));
                }
            }
            if touched {
                acc = acc.add(&fac.mul_monomial(&Monomial::from_pairs(rest)));
            } else {
                out_terms.push((m.clone(), c.clone()));
            }
        }
        acc.add(&Self::from_terms(out_terms))
    }

    /// Renames symbols; the map must be injective on the symbols present.
    pub fn rename(&self, map: &HashMap<Symbol, Symbol>) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let m2 = Monomial::from_pairs(m.iter().map(|(s, e)| (*map.get(&s).unwrap_or(&s), e)));
            (m2, c.clone())
        }))
    }

    pub fn display<'a>(&'a self, table: &'a SymbolTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, table }
    }

    pub fn to_text(&self, table: &SymbolTable) -> String {
        self.display(table).to_string()
    }
}

/// Integer product of two sorted term lists.
pub(crate) fn mul_integer(
    a: &[(Monomial, BigInt)],
    b: &[(Monomial, BigInt)],
    limit: usize,
) -> Result<Vec<(Monomial, BigInt)>> {
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    if b.len() == 1 {
        let (mb, cb) = &b[0];
        return Ok(a
            .iter()
            .map(|(m, c)| (m.mul(mb), c * cb))
            .collect());
    }
    let mut map: HashMap<Monomial, BigInt> = HashMap::with_capacity((a.len() * 2).min(1 << 20));
    for (ma, ca) in b {
        for (mb, cb) in a {
            let m = ma.mul(mb);
            match map.get_mut(&m) {
                Some(v) => *v += ca * cb,
                None => {
                    map.insert(m, ca * cb);
                    if map.len() > limit {
                        return Err(Error::TermLimit {
                            step: "mul".into(),
                            terms: map.len(),
                            limit,
                        });
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    Ok(out)
}

/// Exact division over ℤ; quotient coefficients must be integral.
pub(crate) fn divide_integer(
    a: Vec<(Monomial, BigInt)>,
    b: &[(Monomial, BigInt)],
) -> Result<Vec<(Monomial, BigInt)>> {
    let (lm, lc) = &b[0];
    if b.len() == 1 {
        return a
            .into_iter()
            .map(|(m, c)| {
                if !lm.divides(&m) {
                    return Err(Error::NotDivisible);
                }
                let (q, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return Err(Error::NotDivisible);
                }
                Ok((lm.quotient_of(&m), q))
            })
            .collect();
    }
    let mut rem: BTreeMap<Monomial, BigInt> = a.into_iter().collect();
    let mut quot = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        if !lm.divides(&m) {
            return Err(Error::NotDivisible);
        }
        let (qc, r) = c.div_rem(lc);
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        let qm = lm.quotient_of(&m);
        for (mb, cb) in &b[1..] {
            let t = qm.mul(mb);
            let delta = &qc * cb;
            match rem.get_mut(&t) {
                Some(v) => {
                    *v -= delta;
                    if v.is_zero() {
                        rem.remove(&t);
                    }
                }
                None => {
                    rem.insert(t, -delta);
                }
            }
        }
        quot.push((qm, qc));
    }
    Ok(quot)
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    table: &'a SymbolTable,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || m.is_one() {
                write!(f, "{}", a)?;
                first = false;
            }
            for (s, e) in m.iter() {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.table.name(s))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

// Operators are implemented on references only, so method calls such as
// `a.mul(&b)` always resolve to the borrowing inherent methods.
impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl From<Symbol> for MultiPoly {
    fn from(s: Symbol) -> Self {
        MultiPoly::var(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn setup() -> SymbolTable {
        SymbolTable::with_names(["x", "y", "z", "a", "b"]).unwrap()
    }

    fn p(t: &SymbolTable, s: &str) -> MultiPoly {
        parse_poly(s, t).unwrap()
    }

    #[test]
    fn add_cancels() {
        let t = setup();
        assert_eq!(&p(&t, "x + y") + &p(&t, "-x"), p(&t, "y"));
        assert_eq!(&p(&t, "x*y") + &MultiPoly::zero(), p(&t, "x*y"));
    }

    #[test]
    fn mul_basic() {
        let t = setup();
        assert_eq!(p(&t, "(x-1)*(x+1)"), p(&t, "x^2 - 1"));
        assert_eq!(&p(&t, "1/2*x") * &p(&t, "2/3*y"), p(&t, "1/3*x*y"));
        assert_eq!(&p(&t, "x^2*y") * &MultiPoly::one(), p(&t, "x^2*y"));
    }

    #[test]
    fn term_guard_trips() {
        let t = setup();
        let a = p(&t, "x + y + z + a + b");
        let a3 = a.pow(3);
        let err = a3.try_mul(&a3, 10).unwrap_err();
        assert!(matches!(err, Error::TermLimit { limit: 10, .. }));
    }

    #[test]
    fn exact_division() {
        let t = setup();
        assert_eq!(p(&t, "x^2 - 1").exact_divide(&p(&t, "x - 1")).unwrap(), p(&t, "x + 1"));
        assert_eq!(MultiPoly::zero().exact_divide(&p(&t, "y")).unwrap(), MultiPoly::zero());
        assert_eq!(
            p(&t, "x^2 + 1").exact_divide(&p(&t, "x - 1")),
            Err(Error::NotDivisible)
        );
        assert_eq!(
            p(&t, "x*y + 1/2*y").exact_divide(&p(&t, "2*x + 1")).unwrap(),
            p(&t, "1/2*y")
        );
        assert_eq!(p(&t, "x").exact_divide(&MultiPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn normalize_examples() {
        let t = setup();
        assert_eq!(p(&t, "2*x - 2*y").normalize(), p(&t, "x - y"));
        assert_eq!(p(&t, "-3*x + 3*y").normalize(), p(&t, "x - y"));
        assert_eq!(p(&t, "1/2*x + 1/3").normalize(), p(&t, "3*x + 2"));
    }

    #[test]
    fn derivative() {
        let t = setup();
        let x = t.lookup("x").unwrap();
        assert_eq!(p(&t, "x^2*y").partial_derivative(x), p(&t, "2*x*y"));
        assert!(p(&t, "7").partial_derivative(x).is_zero());
    }

    #[test]
    fn univariate_view() {
        let t = setup();
        let x = t.lookup("x").unwrap();
        let f = p(&t, "x^2*y + 3*x + y");
        let cs = f.as_univariate(x);
        assert_eq!(cs, vec![p(&t, "y"), p(&t, "3"), p(&t, "y")]);
        assert_eq!(MultiPoly::from_univariate(&cs, x), f);
    }

    #[test]
    fn evaluation() {
        let t = setup();
        let x = t.lookup("x").unwrap();
        let f = p(&t, "x^2 - 1");
        let mut asg = HashMap::new();
        asg.insert(x, rat(2));
        assert_eq!(f.evaluate(&asg).unwrap(), rat(3));
        let g = p(&t, "x + y");
        assert_eq!(
            g.evaluate_named(&asg, &t),
            Err(Error::MissingAssignment("y".into()))
        );
    }

    #[test]
    fn substitution() {
        let t = setup();
        let x = t.lookup("x").unwrap();
        let y = t.lookup("y").unwrap();
        let f = p(&t, "x^2 + x*y");
        assert_eq!(f.substitute(x, &p(&t, "y + 1")), p(&t, "2*y^2 + 3*y + 1"));
        let g = f.substitute_many(&[(x, p(&t, "y")), (y, p(&t, "x"))]);
        assert_eq!(g, p(&t, "y^2 + x*y"));
    }

    #[test]
    fn canonical_text() {
        let t = setup();
        assert_eq!(p(&t, "-3/2*x*y^2 + 1 - a").to_text(&t), "-3/2*x*y^2 - a + 1");
        assert_eq!(MultiPoly::zero().to_text(&t), "0");
        assert_eq!(p(&t, "a - b").to_text(&t), "a - b");
    }
}
