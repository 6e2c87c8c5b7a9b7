//! Shared strategies, independent oracles and property bodies. The
//! property functions are run by the proptest suites and again by the
//! acceptance target.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use polyreplay::elimination::{determinant_bareiss, determinant_cofactor};
use polyreplay::{
    parse_poly, resultant, Derivation, Monomial, MultiPoly, Rat, RationalExpr, Rule, Symbol,
    SymbolTable, DEFAULT_TERM_LIMIT,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub struct Syms {
    pub table: SymbolTable,
    pub x: Symbol,
    pub y: Symbol,
    pub z: Symbol,
}

pub fn syms() -> Syms {
    let table = SymbolTable::with_names(["x", "y", "z"]).unwrap();
    let s = |n: &str| table.lookup(n).unwrap();
    Syms { x: s("x"), y: s("y"), z: s("z"), table }
}

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn coeff() -> impl Strategy<Value = Rat> {
    (-9i64..=9, prop_oneof![4 => Just(1i64), 1 => 2i64..=4]).prop_map(|(n, d)| q(n, d))
}

/// Sparse polynomials in x, y, z with small rational coefficients.
pub fn poly(max_terms: usize, max_deg: u16) -> impl Strategy<Value = MultiPoly> {
    let s = syms();
    let (x, y, z) = (s.x, s.y, s.z);
    prop::collection::vec((coeff(), 0..=max_deg, 0..=max_deg, 0..=max_deg), 0..=max_terms).prop_map(
        move |ts| {
            MultiPoly::from_terms(
                ts.into_iter()
                    .map(|(c, a, b, e)| (Monomial::from_pairs([(x, a), (y, b), (z, e)]), c)),
            )
        },
    )
}

pub fn nonzero_poly(max_terms: usize, max_deg: u16) -> impl Strategy<Value = MultiPoly> {
    poly(max_terms, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomials in x whose coefficients are small polynomials in y, z;
/// exact degree `deg` in x.
pub fn in_x(deg: u16) -> impl Strategy<Value = MultiPoly> {
    let x = syms().x;
    prop::collection::vec(poly(2, 1), (deg as usize) + 1)
        .prop_filter("leading coefficient", |cs| !cs.last().unwrap().is_zero())
        .prop_map(move |cs| MultiPoly::from_univariate(&cs, x))
}

pub fn in_x_upto(max: u16) -> impl Strategy<Value = MultiPoly> {
    (1..=max).prop_flat_map(in_x)
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=7)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| q(n, d))
}

/// Square matrix of small polynomials.
pub fn matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<MultiPoly>>> {
    (1..=max_dim).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(poly(2, 1), n), n))
}

/// Integer points for y and z.
pub fn point() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, -6i64..=6)
}

// ---- independent oracles -------------------------------------------------

/// Determinant by the permutation expansion.
pub fn det_permutations(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = MultiPoly::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, m: &[Vec<MultiPoly>], total: &mut MultiPoly) {
    if k == p.len() {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut t = MultiPoly::one();
        for (row, &col) in p.iter().enumerate() {
            t = t.mul(&m[row][col]);
        }
        *total = if inversions % 2 == 0 { total.add(&t) } else { total.sub(&t) };
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, m, total);
        p.swap(k, i);
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Remainder of dense univariate lists (lowest degree first).
fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = trim(a.to_vec());
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let k = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &k * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

/// Degree of the gcd over the rationals; `None` when both are zero.
pub fn gcd_degree(f: &[i64], g: &[i64]) -> Option<usize> {
    let conv = |v: &[i64]| trim(v.iter().map(|c| Rat::from_integer((*c).into())).collect());
    let (mut a, mut b) = (conv(f), conv(g));
    if a.is_empty() && b.is_empty() {
        return None;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    Some(a.len() - 1)
}

pub fn int_poly(cs: &[i64], x: Symbol) -> MultiPoly {
    let cs: Vec<MultiPoly> = cs.iter().map(|c| MultiPoly::int(*c)).collect();
    MultiPoly::from_univariate(&cs, x)
}

pub fn mul_dense(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|c| BigInt::from(*c)).collect()
}

/// A derivation on x, y, z with polynomial images.
pub fn derivation(images: [MultiPoly; 3]) -> Derivation {
    let s = syms();
    let [a, b, c] = images;
    Derivation::new("D")
        .with(s.x, Rule::Poly(a))
        .with(s.y, Rule::Poly(b))
        .with(s.z, Rule::Poly(c))
}

fn at(y: i64, z: i64) -> HashMap<Symbol, Rat> {
    let s = syms();
    [(s.y, Rat::from_integer(y.into())), (s.z, Rat::from_integer(z.into()))]
        .into_iter()
        .collect()
}

// ---- property bodies -----------------------------------------------------

type PropResult = Result<(), TestCaseError>;

pub fn ring_axioms(a: MultiPoly, b: MultiPoly, c: MultiPoly) -> PropResult {
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert_eq!(a.add(&MultiPoly::zero()), a.clone());
    prop_assert_eq!(a.mul(&MultiPoly::one()), a.clone());
    prop_assert!(a.sub(&a).is_zero());
    prop_assert!(a.add(&a.neg()).is_zero());
    prop_assert!(a.mul(&MultiPoly::zero()).is_zero());
    Ok(())
}

pub fn normalize_laws(a: MultiPoly, k: Rat) -> PropResult {
    let n = a.normalize();
    prop_assert_eq!(n.normalize(), n.clone());
    prop_assert_eq!(a.scale(&k).normalize(), n.clone());
    if !a.is_zero() {
        prop_assert!(n.is_integral());
        prop_assert!(n.leading_coefficient().is_positive());
        prop_assert!(n.content().is_one());
        prop_assert_eq!(n.scale(&a.unit_content()), a);
    }
    Ok(())
}

pub fn text_round_trip(a: MultiPoly) -> PropResult {
    let s = syms();
    let text = a.to_text(&s.table);
    prop_assert_eq!(parse_poly(&text, &s.table).unwrap(), a);
    Ok(())
}

pub fn exact_division(a: MultiPoly, b: MultiPoly) -> PropResult {
    prop_assume!(!b.is_zero());
    prop_assert_eq!(a.mul(&b).exact_divide(&b).unwrap(), a);
    Ok(())
}

pub fn leibniz(images: [MultiPoly; 3], a: MultiPoly, b: MultiPoly) -> PropResult {
    let d = derivation(images);
    let da = d.apply_poly(&a).unwrap();
    let db = d.apply_poly(&b).unwrap();
    prop_assert_eq!(d.apply_poly(&a.mul(&b)).unwrap(), da.mul(&b).add(&a.mul(&db)));
    prop_assert_eq!(d.apply_poly(&a.add(&b)).unwrap(), da.add(&db));
    prop_assert!(d.apply_poly(&MultiPoly::int(7)).unwrap().is_zero());
    prop_assert!(d.check_leibniz(&a, &b));
    Ok(())
}

pub fn quotient_rule(images: [MultiPoly; 3], a: MultiPoly, b: MultiPoly) -> PropResult {
    prop_assume!(!b.is_zero());
    let d = derivation(images);
    let r = RationalExpr::new(a.clone(), b.clone()).unwrap();
    let lhs = d.apply_rational(&r).unwrap();
    let da = d.apply_poly(&a).unwrap();
    let db = d.apply_poly(&b).unwrap();
    let rhs = RationalExpr::new(da.mul(&b).sub(&a.mul(&db)), b.mul(&b)).unwrap();
    prop_assert!(lhs.sub(&rhs).is_zero());
    Ok(())
}

pub fn resultant_antisymmetry(f: MultiPoly, g: MultiPoly) -> PropResult {
    let x = syms().x;
    let (m, n) = (f.degree_in(x), g.degree_in(x));
    let fg = resultant(&f, &g, x).unwrap();
    let gf = resultant(&g, &f, x).unwrap();
    let expect = if (m * n) % 2 == 1 { gf.neg() } else { gf };
    prop_assert_eq!(fg, expect);
    Ok(())
}

pub fn resultant_multiplicativity(f1: MultiPoly, f2: MultiPoly, g: MultiPoly) -> PropResult {
    let x = syms().x;
    let lhs = resultant(&f1.mul(&f2), &g, x).unwrap();
    let rhs = resultant(&f1, &g, x).unwrap().mul(&resultant(&f2, &g, x).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn resultant_specialization(f: MultiPoly, g: MultiPoly, pt: (i64, i64)) -> PropResult {
    let x = syms().x;
    let p = at(pt.0, pt.1);
    let (fs, gs) = (f.partial_evaluate(&p), g.partial_evaluate(&p));
    prop_assume!(fs.degree_in(x) == f.degree_in(x) && gs.degree_in(x) == g.degree_in(x));
    let r = resultant(&f, &g, x).unwrap().partial_evaluate(&p);
    prop_assert_eq!(r, resultant(&fs, &gs, x).unwrap());
    Ok(())
}

pub fn determinants_agree(m: Vec<Vec<MultiPoly>>) -> PropResult {
    let naive = det_permutations(&m);
    prop_assert_eq!(determinant_bareiss(&m, DEFAULT_TERM_LIMIT).unwrap(), naive.clone());
    prop_assert_eq!(determinant_cofactor(&m, DEFAULT_TERM_LIMIT).unwrap(), naive);
    Ok(())
}

/// Shared-factor construction or independent random pair.
pub fn univariate_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    let dense = |lo: usize, hi: usize| prop::collection::vec(-6i64..=6, lo..=hi);
    prop_oneof![
        (dense(1, 6), dense(1, 6)),
        (dense(2, 3), dense(1, 3), dense(1, 3)).prop_map(|(h, a, b)| (mul_dense(&h, &a), mul_dense(&h, &b))),
    ]
    .prop_filter("degree at most 5", |(f, g)| f.len() <= 6 && g.len() <= 6)
}

/// Resultant vanishes exactly when the gcd is nonconstant (both inputs
/// with a nonzero leading coefficient).
pub fn resultant_iff_gcd(f: Vec<i64>, g: Vec<i64>) -> PropResult {
    let x = syms().x;
    let fl = f.iter().rposition(|c| *c != 0);
    let gl = g.iter().rposition(|c| *c != 0);
    prop_assume!(fl.is_some_and(|d| d >= 1) || gl.is_some_and(|d| d >= 1));
    prop_assume!(fl.is_some() && gl.is_some());
    let (fp, gp) = (int_poly(&f, x), int_poly(&g, x));
    let zero = resultant(&fp, &gp, x).unwrap().is_zero();
    let shared = gcd_degree(&f, &g).unwrap() >= 1;
    prop_assert_eq!(zero, shared);
    prop_assert_eq!(polyreplay::gcd_oracle(&to_bigints(&f), &to_bigints(&g)), shared);
    Ok(())
}

#[derive(Debug, Default, Clone, Copy)]
pub struct IffStats {
    pub pairs: usize,
    pub constructed: usize,
    pub zero_resultants: usize,
    pub disagreements: usize,
}

/// Seeded campaign over univariate integer pairs of degree at most 5;
/// every fourth pair is built with a shared factor.
pub fn iff_campaign(seed: u64, pairs: usize) -> IffStats {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let x = syms().x;
    fn dense(rng: &mut rand_chacha::ChaCha8Rng, deg: usize) -> Vec<i64> {
        let mut v: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        while v[deg] == 0 {
            v[deg] = rng.gen_range(-5..=5);
        }
        v
    }
    let mut st = IffStats::default();
    while st.pairs < pairs {
        let (f, g) = if st.pairs % 4 == 0 {
            let d = rng.gen_range(1..=2);
            let h = dense(&mut rng, d);
            let d = rng.gen_range(0..=3);
            let a = dense(&mut rng, d);
            let d = rng.gen_range(0..=3);
            let b = dense(&mut rng, d);
            st.constructed += 1;
            (mul_dense(&h, &a), mul_dense(&h, &b))
        } else {
            let (df, dg) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
            (dense(&mut rng, df), dense(&mut rng, dg))
        };
        let zero = resultant(&int_poly(&f, x), &int_poly(&g, x), x).unwrap().is_zero();
        let shared = gcd_degree(&f, &g).unwrap() >= 1;
        st.pairs += 1;
        st.zero_resultants += zero as usize;
        st.disagreements += (zero != shared) as usize;
    }
    st
}
