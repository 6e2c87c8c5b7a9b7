//! Sylvester matrices, resultants and fraction-free determinants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat, DEFAULT_TERM_LIMIT};
use crate::rational_expr::{substitute_rational, RationalExpr};
use crate::symbol::{Symbol, SymbolTable};

pub type PolyMatrix = Vec<Vec<MultiPoly>>;

/// A nonvanishing assumption attached to a computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCondition {
    pub expr: MultiPoly,
    pub reason: String,
}

impl SideCondition {
    /// `None` when `expr` is a nonzero constant (nothing to assume).
    pub fn new(expr: MultiPoly, reason: impl Into<String>) -> Option<Self> {
        if expr.is_constant() && !expr.is_zero() {
            return None;
        }
        Some(SideCondition {
            expr: expr.normalize(),
            reason: reason.into(),
        })
    }

    pub fn to_text(&self, table: &SymbolTable) -> String {
        format!("{} != 0  [{}]", self.expr.to_text(table), self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterMatrix {
    pub entries: PolyMatrix,
    /// Degree of `f` in the eliminated symbol.
    pub m: usize,
    /// Degree of `g` in the eliminated symbol.
    pub n: usize,
    pub eliminated: Symbol,
    pub side_conditions: Vec<SideCondition>,
}

impl SylvesterMatrix {
    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn evaluate(&self, assignment: &HashMap<Symbol, Rat>) -> Result<Vec<Vec<Rat>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(assignment)).collect())
            .collect()
    }

    pub fn partial_evaluate(&self, assignment: &HashMap<Symbol, Rat>) -> PolyMatrix {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.partial_evaluate(assignment)).collect())
            .collect()
    }
}

/// Coefficients in `x`, highest power first; the zero polynomial gives `[0]`.
fn coeffs_desc(p: &MultiPoly, x: Symbol) -> Vec<MultiPoly> {
    let mut c = p.as_univariate(x);
    if c.is_empty() {
        c.push(MultiPoly::zero());
    }
    c.reverse();
    c
}

pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, x: Symbol) -> Result<SylvesterMatrix> {
    let a = coeffs_desc(f, x);
    let b = coeffs_desc(g, x);
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return Err(Error::BothConstant(format!("#{}", x.0)));
    }
    let dim = m + n;
    let mut entries = vec![vec![MultiPoly::zero(); dim]; dim];
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            entries[i][i + k] = c.clone();
        }
    }
    for j in 0..m {
        for (k, c) in b.iter().enumerate() {
            entries[n + j][j + k] = c.clone();
        }
    }
    let mut side_conditions = Vec::new();
    if m > 0 {
        side_conditions.extend(SideCondition::new(
            a[0].clone(),
            "leading coefficient of f (not both zero)",
        ));
    }
    if n > 0 {
        side_conditions.extend(SideCondition::new(
            b[0].clone(),
            "leading coefficient of g (not both zero)",
        ));
    }
    Ok(SylvesterMatrix {
        entries,
        m,
        n,
        eliminated: x,
        side_conditions,
    })
}

pub fn resultant(f: &MultiPoly, g: &MultiPoly, x: Symbol) -> Result<MultiPoly> {
    resultant_with_limit(f, g, x, DEFAULT_TERM_LIMIT)
}

pub fn resultant_with_limit(
    f: &MultiPoly,
    g: &MultiPoly,
    x: Symbol,
    limit: usize,
) -> Result<MultiPoly> {
    let s = sylvester_matrix(f, g, x)?;
    determinant_with_limit(&s.entries, limit)
}

pub fn determinant(mat: &PolyMatrix) -> Result<MultiPoly> {
    determinant_with_limit(mat, DEFAULT_TERM_LIMIT)
}

/// Cofactor expansion up to 4×4, Bareiss beyond.
pub fn determinant_with_limit(mat: &PolyMatrix, limit: usize) -> Result<MultiPoly> {
    if mat.len() <= 4 {
        determinant_cofactor(mat, limit)
    } else {
        determinant_bareiss(mat, limit)
    }
}

fn guard(p: MultiPoly, limit: usize, step: &str) -> Result<MultiPoly> {
    if p.len() > limit {
        return Err(Error::TermLimit {
            step: step.into(),
            terms: p.len(),
            limit,
        });
    }
    Ok(p)
}

fn relabel(e: Error, step: &str) -> Error {
    match e {
        Error::TermLimit { terms, limit, .. } => Error::TermLimit {
            step: step.into(),
            terms,
            limit,
        },
        other => other,
    }
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor(mat: &PolyMatrix, limit: usize) -> Result<MultiPoly> {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    match n {
        0 => return Ok(MultiPoly::one()),
        1 => return Ok(mat[0][0].clone()),
        2 => {
            let a = mat[0][0]
                .try_mul(&mat[1][1], limit)
                .map_err(|e| relabel(e, "determinant"))?;
            let b = mat[0][1]
                .try_mul(&mat[1][0], limit)
                .map_err(|e| relabel(e, "determinant"))?;
            return guard(a.sub(&b), limit, "determinant");
        }
        _ => {}
    }
    let mut acc = MultiPoly::zero();
    for j in 0..n {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: PolyMatrix = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let m = determinant_cofactor(&minor, limit)?;
        let t = mat[0][j]
            .try_mul(&m, limit)
            .map_err(|e| relabel(e, "determinant"))?;
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        acc = guard(acc, limit, "determinant")?;
    }
    Ok(acc)
}

fn workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(16)
}

/// Fraction-free elimination; the pivot in column k is the first row
/// (from k down) with a nonzero entry.
pub fn determinant_bareiss(mat: &PolyMatrix, limit: usize) -> Result<MultiPoly> {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let mut m = mat.clone();
    let mut prev = MultiPoly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(MultiPoly::zero());
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let update = |row: &mut Vec<MultiPoly>| -> Result<()> {
            for j in k + 1..n {
                let a = pivot_row[k]
                    .try_mul(&row[j], limit)
                    .map_err(|e| relabel(e, "determinant"))?;
                let b = row[k]
                    .try_mul(&pivot_row[j], limit)
                    .map_err(|e| relabel(e, "determinant"))?;
                let num = a.sub(&b);
                let v = if prev.is_one() {
                    num
                } else {
                    num.exact_divide(&prev)
                        .expect("Bareiss division is exact")
                };
                row[j] = guard(v, limit, "determinant")?;
            }
            row[k] = MultiPoly::zero();
            Ok(())
        };
        let work: usize = tail
            .iter()
            .map(|r| r[k + 1..].iter().map(|e| e.len()).sum::<usize>())
            .sum::<usize>()
            .saturating_mul(pivot_row[k].len().max(1));
        let nw = workers();
        if nw > 1 && tail.len() > 1 && work > 20_000 {
            let chunk = tail.len().div_ceil(nw);
            let results: Vec<Result<()>> = std::thread::scope(|s| {
                let handles: Vec<_> = tail
                    .chunks_mut(chunk)
                    .map(|rows| {
                        s.spawn(|| {
                            for r in rows {
                                update(r)?;
                            }
                            Ok(())
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("determinant worker panicked"))
                    .collect()
            });
            for r in results {
                r?;
            }
        } else {
            for r in tail.iter_mut() {
                update(r)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Integer Bareiss determinant.
pub fn determinant_integer(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = mat.to_vec();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rational determinant: clears row denominators and uses the integer path.
pub fn determinant_rational(mat: &[Vec<Rat>]) -> Rat {
    use num_integer::Integer;
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = mat
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= &l;
            row.iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        })
        .collect();
    Rat::new(determinant_integer(&rows), scale)
}

/// Determinant of the 2×2 coefficient matrix of two equations that are
/// homogeneous linear in `x`, `y`.
pub fn dependency_determinant(
    eq1: &MultiPoly,
    eq2: &MultiPoly,
    x: Symbol,
    y: Symbol,
) -> Result<MultiPoly> {
    let (a1, b1) = linear_coefficients(eq1, x, y)?;
    let (a2, b2) = linear_coefficients(eq2, x, y)?;
    Ok(a1.mul(&b2).sub(&b1.mul(&a2)))
}

fn linear_coefficients(e: &MultiPoly, x: Symbol, y: Symbol) -> Result<(MultiPoly, MultiPoly)> {
    let mut cx = Vec::new();
    let mut cy = Vec::new();
    for (m, c) in e.terms() {
        let (ex, rest) = m.split_off(x);
        let (ey, rest) = rest.split_off(y);
        match (ex, ey) {
            (1, 0) => cx.push((rest, c.clone())),
            (0, 1) => cy.push((rest, c.clone())),
            _ => {
                return Err(Error::NotLinear(format!(
                    "term with exponents ({ex}, {ey}) in the two unknowns"
                )))
            }
        }
    }
    Ok((MultiPoly::from_terms(cx), MultiPoly::from_terms(cy)))
}

/// Numerator of `e` together with the assumption that its denominator is
/// nonzero; constant denominators produce no condition.
/// Factors cancelled during reduction are still assumed nonzero.
pub fn clear_denominators(e: &RationalExpr) -> (MultiPoly, Option<SideCondition>) {
    let mut d = e.denominator();
    for f in e.cancelled_factors() {
        if !e.denominator_factors().iter().any(|(g, _)| g == f) {
            d = d.mul(f);
        }
    }
    (
        e.numerator().clone(),
        SideCondition::new(d, "denominator nonzero"),
    )
}

/// Solves the linear constraint `c1·x + c0 = 0` for `x`.
pub fn solve_linear(constraint: &MultiPoly, x: Symbol) -> Result<RationalExpr> {
    if constraint.degree_in(x) != 1 {
        return Err(Error::NotLinearInTarget(format!("#{}", x.0)));
    }
    let c0 = constraint.coefficient(x, 0);
    let c1 = constraint.coefficient(x, 1);
    RationalExpr::new(c0.neg(), c1)
}

/// Substitutes the solution of a linear constraint into `e` and returns the
/// reduced numerator.
pub fn eliminate_linear(e: &MultiPoly, x: Symbol, constraint: &MultiPoly) -> Result<MultiPoly> {
    let sol = solve_linear(constraint, x)?;
    Ok(substitute_rational(e, x, &sol).numerator().clone())
}

pub use crate::gcd::pseudo_remainder;
