//! Quotients of polynomials with a factored denominator.
//!
//! The denominator is kept as a list of primitive, positively-led factors
//! with multiplicities; constants are folded into the numerator. Reduction
//! cancels each stored factor from the numerator by trial division, which
//! is a full reduction whenever the stored factors are irreducible (the
//! case for every denominator the replay introduces).

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat};
use crate::symbol::{Symbol, SymbolTable};

#[derive(Debug, Clone, Default)]
pub struct RationalExpr {
    num: MultiPoly,
    den: Vec<(MultiPoly, u32)>,
    /// Denominator factors removed by reduction. They do not affect the
    /// value but still count as nonvanishing assumptions.
    cancelled: Vec<MultiPoly>,
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RationalExpr {}

impl RationalExpr {
    pub fn from_poly(p: MultiPoly) -> Self {
        RationalExpr {
            num: p,
            den: Vec::new(),
            cancelled: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    /// `num / den` with `den` treated as a single factor.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        Self::with_factors(num, vec![(den, 1)])
    }

    /// `num / Π f_i^{k_i}`.
    pub fn with_factors(num: MultiPoly, factors: Vec<(MultiPoly, u32)>) -> Result<Self> {
        let mut out = RationalExpr {
            num,
            den: Vec::new(),
            cancelled: Vec::new(),
        };
        for (f, k) in factors {
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            out.push_factor(f, k);
        }
        out.reduce();
        Ok(out)
    }

    fn push_factor(&mut self, f: MultiPoly, k: u32) {
        if k == 0 {
            return;
        }
        let uc = f.unit_content();
        let g = f.normalize();
        self.num = self.num.scale(&num_traits::pow(uc, k as usize).recip());
        if g.is_constant() {
            return;
        }
        match self.den.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 += k,
            None => self.den.push((g, k)),
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            for (f, _) in self.den.drain(..) {
                if !self.cancelled.contains(&f) {
                    self.cancelled.push(f);
                }
            }
            return;
        }
        for (f, k) in self.den.iter_mut() {
            while *k > 0 {
                match self.num.exact_divide(f) {
                    Ok(q) => {
                        self.num = q;
                        *k -= 1;
                        if !self.cancelled.contains(f) {
                            self.cancelled.push(f.clone());
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
        // Deterministic factor order.
        self.den.sort_by(|a, b| {
            b.0.leading_term()
                .map(|t| &t.0)
                .cmp(&a.0.leading_term().map(|t| &t.0))
                .then_with(|| b.0.len().cmp(&a.0.len()))
        });
    }

    pub fn cancelled_factors(&self) -> &[MultiPoly] {
        &self.cancelled
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> MultiPoly {
        let mut d = MultiPoly::one();
        for (f, k) in &self.den {
            d = d.mul(&f.pow(*k));
        }
        d
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        let d = self.denominator();
        (self.num, d)
    }

    pub fn neg(&self) -> Self {
        RationalExpr {
            num: self.num.neg(),
            den: self.den.clone(),
            cancelled: self.cancelled.clone(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RationalExpr {
            num: self.num.scale(k),
            den: self.den.clone(),
            cancelled: self.cancelled.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        let mut out = RationalExpr {
            num: self.num.mul(p),
            den: self.den.clone(),
            cancelled: self.cancelled.clone(),
        };
        out.reduce();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // lcm over matched factors
        let mut lcm: Vec<(MultiPoly, u32)> = self.den.clone();
        for (f, k) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some(e) => e.1 = e.1.max(*k),
                None => lcm.push((f.clone(), *k)),
            }
        }
        let lift = |r: &RationalExpr| {
            let mut m = r.num.clone();
            for (f, k) in &lcm {
                let have = r.den.iter().find(|(g, _)| g == f).map(|e| e.1).unwrap_or(0);
                if *k > have {
                    m = m.mul(&f.pow(k - have));
                }
            }
            m
        };
        let num = lift(self).add(&lift(other));
        let mut out = RationalExpr {
            num,
            den: lcm,
            cancelled: merge_cancelled(&self.cancelled, &other.cancelled),
        };
        out.reduce();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = RationalExpr {
            num: self.num.mul(&other.num),
            den: self.den.clone(),
            cancelled: merge_cancelled(&self.cancelled, &other.cancelled),
        };
        for (f, k) in &other.den {
            match out.den.iter_mut().find(|(g, _)| g == f) {
                Some(e) => e.1 += k,
                None => out.den.push((f.clone(), *k)),
            }
        }
        out.reduce();
        out
    }

    /// Reciprocal; the numerator becomes a single denominator factor.
    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.denominator();
        Self::with_factors(num, vec![(self.num.clone(), 1)])
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalExpr {
            num: self.num.pow(k),
            den: self.den.iter().map(|(f, e)| (f.clone(), e * k)).collect(),
            cancelled: self.cancelled.clone(),
        }
    }

    pub fn evaluate(&self, assignment: &HashMap<Symbol, Rat>) -> Result<Rat> {
        let n = self.num.evaluate(assignment)?;
        let mut d = Rat::one();
        for (f, k) in &self.den {
            d *= num_traits::pow(f.evaluate(assignment)?, *k as usize);
        }
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(n / d)
    }

    pub fn partial_evaluate(&self, assignment: &HashMap<Symbol, Rat>) -> Result<Self> {
        let num = self.num.partial_evaluate(assignment);
        let den = self
            .den
            .iter()
            .map(|(f, k)| (f.partial_evaluate(assignment), *k))
            .collect();
        Self::with_factors(num, den)
    }

    pub fn to_text(&self, table: &SymbolTable) -> String {
        if self.den.is_empty() {
            return self.num.to_text(table);
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, k)| {
                if *k == 1 {
                    format!("({})", f.to_text(table))
                } else {
                    format!("({})^{}", f.to_text(table), k)
                }
            })
            .collect();
        format!("({}) / ({})", self.num.to_text(table), den.join("*"))
    }
}

fn merge_cancelled(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out = a.to_vec();
    for f in b {
        if !out.contains(f) {
            out.push(f.clone());
        }
    }
    out
}

impl From<MultiPoly> for RationalExpr {
    fn from(p: MultiPoly) -> Self {
        RationalExpr::from_poly(p)
    }
}

/// Substitutes `x = value` into `p`, returning a reduced quotient.
pub fn substitute_rational(p: &MultiPoly, x: Symbol, value: &RationalExpr) -> RationalExpr {
    if !p.contains(x) {
        return RationalExpr::from_poly(p.clone());
    }
    if let Some(v) = value.as_polynomial() {
        return RationalExpr::from_poly(p.substitute(x, v));
    }
    let cs = p.as_univariate(x);
    let d = cs.len() - 1;
    let n = value.numerator();
    let den = value.denominator();
    // Σ c_k N^k D^(d-k), homogenized Horner.
    let mut acc = cs[d].clone();
    let mut dpow = MultiPoly::one();
    for k in (0..d).rev() {
        dpow = dpow.mul(&den);
        acc = acc.mul(n).add(&cs[k].mul(&dpow));
    }
    let factors = value
        .denominator_factors()
        .iter()
        .map(|(f, e)| (f.clone(), e * d as u32))
        .collect();
    RationalExpr::with_factors(acc, factors).expect("denominator factors are nonzero")
}

/// Substitution into a quotient.
pub fn substitute_rational_expr(
    r: &RationalExpr,
    x: Symbol,
    value: &RationalExpr,
) -> Result<RationalExpr> {
    let mut out = substitute_rational(r.numerator(), x, value);
    for (f, k) in r.denominator_factors() {
        let fs = substitute_rational(f, x, value);
        if fs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        out = out.div(&fs.pow(*k))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn t() -> SymbolTable {
        SymbolTable::with_names(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        let t = t();
        let p = |s| parse_poly(s, &t).unwrap();
        let r = RationalExpr::new(p("x^2 - 1"), p("2*x - 2")).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &p("1/2*x + 1/2"));
        let s = RationalExpr::new(p("x"), p("-3*y")).unwrap();
        assert_eq!(s.numerator(), &p("-1/3*x"));
        assert_eq!(s.denominator(), p("y"));
    }

    #[test]
    fn arithmetic() {
        let t = t();
        let p = |s| parse_poly(s, &t).unwrap();
        let a = RationalExpr::new(p("1"), p("x")).unwrap();
        let b = RationalExpr::new(p("1"), p("y")).unwrap();
        let s = a.add(&b);
        assert_eq!(s.numerator(), &p("x + y"));
        assert_eq!(s.denominator(), p("x*y"));
        let back = s.sub(&b);
        assert_eq!(back, a);
        let prod = a.mul(&RationalExpr::from_poly(p("x*z")));
        assert_eq!(prod.as_polynomial(), Some(&p("z")));
        assert!(a.recip().unwrap().as_polynomial() == Some(&p("x")));
    }

    #[test]
    fn rational_substitution() {
        let t = t();
        let p = |s| parse_poly(s, &t).unwrap();
        let x = t.lookup("x").unwrap();
        let v = RationalExpr::new(p("y"), p("z")).unwrap();
        let r = substitute_rational(&p("x^2 + x + 1"), x, &v);
        assert_eq!(r.numerator(), &p("y^2 + y*z + z^2"));
        assert_eq!(r.denominator(), p("z^2"));
        let r2 = substitute_rational(&p("z*x - y"), x, &v);
        assert!(r2.is_zero());
    }
}
