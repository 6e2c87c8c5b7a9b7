//! Frame derivatives as derivations on the polynomial ring.
//!
//! A derivation is fixed by its value on each symbol. Opaque derivatives
//! (values the chain keeps unknown) are represented by dedicated alias
//! symbols.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational_expr::RationalExpr;
use crate::symbol::{Symbol, SymbolTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Poly(MultiPoly),
    Rational(RationalExpr),
    Zero,
    /// Opaque value carried by an alias symbol.
    Fresh(Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    name: String,
    rules: BTreeMap<Symbol, Rule>,
}

impl Derivation {
    pub fn new(name: impl Into<String>) -> Self {
        Derivation {
            name: name.into(),
            rules: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set(&mut self, s: Symbol, rule: Rule) -> &mut Self {
        self.rules.insert(s, rule);
        self
    }

    pub fn with(mut self, s: Symbol, rule: Rule) -> Self {
        self.set(s, rule);
        self
    }

    pub fn rule(&self, s: Symbol) -> Option<&Rule> {
        self.rules.get(&s)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Symbol, &Rule)> {
        self.rules.iter()
    }

    /// Same rules with a different name; used to derive step-local variants.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Derivation {
            name: name.into(),
            rules: self.rules.clone(),
        }
    }

    fn missing(&self, s: Symbol, table: Option<&SymbolTable>) -> Error {
        Error::MissingRule {
            derivation: self.name.clone(),
            symbol: table
                .map(|t| t.name(s).to_string())
                .unwrap_or_else(|| format!("#{}", s.0)),
        }
    }

    /// `D(p) = Σ ∂p/∂x · D(x)`.
    pub fn apply(&self, p: &MultiPoly) -> Result<RationalExpr> {
        self.apply_in(p, None)
    }

    pub fn apply_named(&self, p: &MultiPoly, table: &SymbolTable) -> Result<RationalExpr> {
        self.apply_in(p, Some(table))
    }

    fn apply_in(&self, p: &MultiPoly, table: Option<&SymbolTable>) -> Result<RationalExpr> {
        let mut poly_part = MultiPoly::zero();
        let mut rat_part = RationalExpr::zero();
        for x in p.symbols() {
            let rule = self.rules.get(&x).ok_or_else(|| self.missing(x, table))?;
            match rule {
                Rule::Zero => {}
                Rule::Poly(q) => {
                    poly_part = poly_part.add(&p.partial_derivative(x).mul(q));
                }
                Rule::Fresh(a) => {
                    poly_part = poly_part.add(&p.partial_derivative(x).mul(&MultiPoly::var(*a)));
                }
                Rule::Rational(r) => {
                    rat_part = rat_part.add(&r.mul_poly(&p.partial_derivative(x)));
                }
            }
        }
        Ok(rat_part.add(&RationalExpr::from_poly(poly_part)))
    }

    /// Polynomial result or an error if a rational rule left a denominator.
    pub fn apply_poly(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let r = self.apply(p)?;
        match r.as_polynomial() {
            Some(q) => Ok(q.clone()),
            None => Err(Error::NotLinear(format!(
                "derivation `{}` produced a proper quotient",
                self.name
            ))),
        }
    }

    /// Quotient rule over the factored denominator.
    pub fn apply_rational(&self, r: &RationalExpr) -> Result<RationalExpr> {
        let mut out = self.apply(r.numerator())?;
        let inv_den = RationalExpr::one().div(&RationalExpr::from_poly(r.denominator()))?;
        out = out.mul(&inv_den);
        // D(N/Π f^k) = D(N)/Π - N/Π · Σ k D(f)/f
        let base = r.clone();
        for (f, k) in r.denominator_factors() {
            let df = self.apply(f)?;
            let term = base
                .mul(&df)
                .div(&RationalExpr::from_poly(f.clone()))?
                .scale(&crate::poly::rat(*k as i64));
            out = out.sub(&term);
        }
        Ok(out)
    }

    /// Checks `D(ab) = D(a)·b + a·D(b)` exactly.
    pub fn check_leibniz(&self, a: &MultiPoly, b: &MultiPoly) -> bool {
        let lhs = match self.apply(&a.mul(b)) {
            Ok(v) => v,
            Err(_) => return false,
        };
        let (da, db) = match (self.apply(a), self.apply(b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return false,
        };
        let rhs = da
            .mul(&RationalExpr::from_poly(b.clone()))
            .add(&RationalExpr::from_poly(a.clone()).mul(&db));
        lhs.sub(&rhs).is_zero()
    }
}

/// A derivation whose product rule is deliberately broken; negative control
/// for `check_leibniz`-style validators.
pub struct CorruptedDerivation<'a> {
    pub inner: &'a Derivation,
    pub extra: MultiPoly,
}

impl CorruptedDerivation<'_> {
    /// Adds `extra` to every nonconstant input, violating Leibniz.
    pub fn apply(&self, p: &MultiPoly) -> Result<RationalExpr> {
        let d = self.inner.apply(p)?;
        if p.is_constant() {
            return Ok(d);
        }
        Ok(d.add(&RationalExpr::from_poly(self.extra.clone())))
    }

    pub fn check_leibniz(&self, a: &MultiPoly, b: &MultiPoly) -> bool {
        let (Ok(lhs), Ok(da), Ok(db)) = (self.apply(&a.mul(b)), self.apply(a), self.apply(b))
        else {
            return false;
        };
        let rhs = da
            .mul(&RationalExpr::from_poly(b.clone()))
            .add(&RationalExpr::from_poly(a.clone()).mul(&db));
        lhs.sub(&rhs).is_zero()
    }
}
