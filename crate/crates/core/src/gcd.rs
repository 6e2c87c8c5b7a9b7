//! Multivariate gcd by recursive primitive pseudo-remainder sequences.
//!
//! Slow on large inputs; the replay uses it only to certify common factors
//! (for instance that two resultant inputs share a factor in the eliminated
//! variable), never on the main arithmetic path.

use crate::poly::MultiPoly;
use crate::symbol::Symbol;

/// `lc(b)^(deg a - deg b + 1) · a  mod  b`, viewed in `x`.
pub fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, x: Symbol) -> MultiPoly {
    let db = b.degree_in(x);
    if b.is_zero() {
        return a.clone();
    }
    let da = a.degree_in(x);
    if a.is_zero() || da < db {
        return a.clone();
    }
    let lc = b.coefficient(x, db as u16);
    let mut r = a.clone();
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree_in(x) >= db && e > 0 {
        let d = r.degree_in(x);
        let t = r
            .coefficient(x, d as u16)
            .mul_monomial(&crate::monomial::Monomial::var(x, (d - db) as u16));
        r = lc.mul(&r).sub(&t.mul(b));
        e -= 1;
    }
    if e > 0 {
        r = lc.pow(e).mul(&r);
    }
    r
}

fn main_symbol(a: &MultiPoly, b: &MultiPoly) -> Option<Symbol> {
    a.symbols().into_iter().chain(b.symbols()).min()
}

/// Gcd of all coefficients in `x`.
pub fn content_in(p: &MultiPoly, x: Symbol) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.as_univariate(x).into_iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

pub fn primitive_part_in(p: &MultiPoly, x: Symbol) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let c = content_in(p, x);
    p.exact_divide(&c)
        .expect("content divides every coefficient")
        .normalize()
}

/// Normalized gcd over ℚ; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let x = match main_symbol(a, b) {
        Some(x) => x,
        None => return MultiPoly::one(),
    };
    if !a.contains(x) {
        return gcd(a, &content_in(b, x));
    }
    if !b.contains(x) {
        return gcd(&content_in(a, x), b);
    }
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let gc = gcd(&ca, &cb);
    let mut f = a.exact_divide(&ca).expect("content divides");
    let mut g = b.exact_divide(&cb).expect("content divides");
    if f.degree_in(x) < g.degree_in(x) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_remainder(&f, &g, x);
        f = g;
        g = primitive_part_in(&r, x);
    }
    let h = if f.degree_in(x) == 0 {
        MultiPoly::one()
    } else {
        primitive_part_in(&f, x)
    };
    gc.mul(&h).normalize()
}
