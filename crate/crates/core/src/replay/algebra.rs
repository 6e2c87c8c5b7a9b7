//! Small elimination moves shared by the pipelines.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::symbol::Symbol;

/// One pseudo-division step: `lc(g)·f − lc(f)·x^(df−dg)·g`, which removes
/// the top power of `x` from `f`.
pub fn eliminate_leading(f: &MultiPoly, g: &MultiPoly, x: Symbol) -> Result<MultiPoly> {
    let (df, dg) = (f.degree_in(x), g.degree_in(x));
    if dg == 0 || df < dg {
        return Err(Error::NotLinear(format!(
            "cannot reduce degree {df} by degree {dg}"
        )));
    }
    let lf = f.coefficient(x, df as u16);
    let lg = g.coefficient(x, dg as u16);
    let shift = MultiPoly::var(x).pow(df - dg);
    Ok(lg.mul(f).sub(&lf.mul(&shift).mul(g)))
}

/// Rewrites every occurrence of the product `x·y` in `e` by `value`.
/// `e` must be at most linear in `y`, and its `y`-coefficient divisible by `x`.
pub fn reduce_product(e: &MultiPoly, x: Symbol, y: Symbol, value: &MultiPoly) -> Result<MultiPoly> {
    if e.degree_in(y) > 1 {
        return Err(Error::NotLinear("product reduction needs degree <= 1".into()));
    }
    let c1 = e.coefficient(y, 1).exact_divide(&MultiPoly::var(x))?;
    Ok(e.coefficient(y, 0).add(&c1.mul(value)))
}
