//! Randomized exact checks: zero tests at sampled rational points, a
//! Euclidean gcd/resultant oracle for univariate inputs, and specialization
//! witnesses for resultant towers too large to expand.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elimination::{determinant_rational, resultant_with_limit, sylvester_matrix};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rat, DEFAULT_TERM_LIMIT};
use crate::symbol::{Symbol, SymbolTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplePlan {
    pub seed: u64,
    pub bound: u32,
    pub trials: u32,
}

impl SamplePlan {
    pub fn new(seed: u64, bound: u32, trials: u32) -> Result<Self> {
        if bound < 2 {
            return Err(Error::Config(format!("sample bound {bound} < 2")));
        }
        if trials == 0 {
            return Err(Error::Config("sample plan needs at least one trial".into()));
        }
        Ok(SamplePlan { seed, bound, trials })
    }

    /// Plan for residual checks.
    pub fn residual(seed: u64) -> Self {
        SamplePlan { seed, bound: 20, trials: 16 }
    }

    /// Plan for specialization witnesses.
    pub fn witness(seed: u64) -> Self {
        SamplePlan { seed, bound: 50, trials: 64 }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Draws rationals `a/b` with `a ∈ [−bound, bound]`, `b ∈ [1, bound]`.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(plan: &SamplePlan) -> Self {
        Sampler {
            rng: plan.rng(),
            bound: plan.bound as i64,
        }
    }

    pub fn rational(&mut self) -> Rat {
        let a = self.rng.gen_range(-self.bound..=self.bound);
        let b = self.rng.gen_range(1..=self.bound);
        Rat::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn integer(&mut self) -> Rat {
        Rat::from_integer(BigInt::from(self.rng.gen_range(-self.bound..=self.bound)))
    }

    pub fn point(&mut self, symbols: &BTreeSet<Symbol>, integral: bool) -> Point {
        symbols
            .iter()
            .map(|s| (*s, if integral { self.integer() } else { self.rational() }))
            .collect()
    }
}

pub type Point = BTreeMap<Symbol, Rat>;

fn as_map(p: &Point) -> HashMap<Symbol, Rat> {
    p.iter().map(|(s, v)| (*s, v.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: Point,
    pub value: Rat,
}

impl Witness {
    pub fn to_text(&self, table: &SymbolTable) -> String {
        let pts: Vec<String> = self
            .point
            .iter()
            .map(|(s, v)| format!("{}={}", table.name(*s), v))
            .collect();
        format!("[{}] -> {}", pts.join(", "), self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroTest {
    ProvedNonzero(Witness),
    PlausiblyZero,
}

impl ZeroTest {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, ZeroTest::ProvedNonzero(_))
    }
}

pub fn zero_test(e: &MultiPoly, plan: &SamplePlan) -> ZeroTest {
    zero_test_avoiding(e, plan, &[])
}

/// Zero test that skips points where any of `forbidden` vanishes.
pub fn zero_test_avoiding(e: &MultiPoly, plan: &SamplePlan, forbidden: &[MultiPoly]) -> ZeroTest {
    let mut symbols = e.symbols();
    for f in forbidden {
        symbols.extend(f.symbols());
    }
    let mut sampler = Sampler::new(plan);
    for _ in 0..plan.trials {
        let pt = sampler.point(&symbols, false);
        let map = as_map(&pt);
        let blocked = forbidden
            .iter()
            .any(|f| f.evaluate(&map).map(|v| v.is_zero()).unwrap_or(true));
        if blocked {
            continue;
        }
        let value = e.evaluate(&map).expect("all symbols assigned");
        if !value.is_zero() {
            return ZeroTest::ProvedNonzero(Witness { point: pt, value });
        }
    }
    ZeroTest::PlausiblyZero
}

// Dense univariate helpers, coefficients lowest degree first.

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let q = &r[r.len() - 1] / lb;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r = trim(r);
    }
    r
}

/// Monic gcd over the rationals by the Euclidean algorithm.
pub fn univariate_gcd(f: &[Rat], g: &[Rat]) -> Vec<Rat> {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

/// True iff `f` and `g` share a nonconstant factor. Inputs are integer
/// coefficient lists, lowest degree first.
pub fn gcd_oracle(f: &[BigInt], g: &[BigInt]) -> bool {
    let to_rat = |v: &[BigInt]| v.iter().map(|c| Rat::from_integer(c.clone())).collect::<Vec<_>>();
    let (f, g) = (trim(to_rat(f)), trim(to_rat(g)));
    if f.is_empty() || g.is_empty() {
        // gcd with zero is the other polynomial
        let other = if f.is_empty() { &g } else { &f };
        return other.len() != 1;
    }
    univariate_gcd(&f, &g).len() >= 2
}

/// Resultant by the Euclidean remainder recurrence, independent of the
/// Sylvester construction. Degrees are taken from the trimmed inputs.
pub fn resultant_euclid(f: &[Rat], g: &[Rat]) -> Rat {
    let (f, g) = (trim(f.to_vec()), trim(g.to_vec()));
    if f.is_empty() || g.is_empty() {
        return Rat::zero();
    }
    let (m, n) = (f.len() - 1, g.len() - 1);
    if n == 0 {
        return num_traits::pow(g[0].clone(), m);
    }
    if m == 0 {
        return num_traits::pow(f[0].clone(), n);
    }
    if m < n {
        let s = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
        return s * resultant_euclid(&g, &f);
    }
    // Res(f, g) = (−1)^{mn} lc(g)^{m−k} Res(g, r), r = f mod g, k = deg r
    let r = rem(&f, &g);
    if r.is_empty() {
        return Rat::zero();
    }
    let k = r.len() - 1;
    let s = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
    s * num_traits::pow(g[n].clone(), m - k) * resultant_euclid(&g, &r)
}

/// A recorded resultant chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tower {
    Leaf(MultiPoly),
    Resultant {
        f: Box<Tower>,
        g: Box<Tower>,
        var: Symbol,
    },
}

impl Tower {
    pub fn leaf(p: MultiPoly) -> Self {
        Tower::Leaf(p)
    }

    pub fn res(f: Tower, g: Tower, var: Symbol) -> Self {
        Tower::Resultant {
            f: Box::new(f),
            g: Box::new(g),
            var,
        }
    }

    /// Symbols eliminated anywhere in the chain.
    pub fn eliminated(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            if let Tower::Resultant { var, .. } = t {
                out.insert(*var);
            }
        });
        out
    }

    /// Free symbols of the leaves that are not eliminated.
    pub fn parameters(&self) -> BTreeSet<Symbol> {
        let mut all = BTreeSet::new();
        self.walk(&mut |t| {
            if let Tower::Leaf(p) = t {
                all.extend(p.symbols());
            }
        });
        let elim = self.eliminated();
        all.retain(|s| !elim.contains(s));
        all
    }

    fn walk(&self, f: &mut impl FnMut(&Tower)) {
        f(self);
        if let Tower::Resultant { f: a, g: b, .. } = self {
            a.walk(f);
            b.walk(f);
        }
    }

    /// Full symbolic expansion.
    pub fn expand(&self, limit: usize) -> Result<MultiPoly> {
        match self {
            Tower::Leaf(p) => Ok(p.clone()),
            Tower::Resultant { f, g, var } => {
                resultant_with_limit(&f.expand(limit)?, &g.expand(limit)?, *var, limit)
            }
        }
    }

    /// Pushes `point` through every stage. Leaf inputs must keep their
    /// degree in the stage variable; nested stages are compared against
    /// `degrees` (pre-order, one pair per stage) when given.
    pub fn specialize_checked(
        &self,
        point: &HashMap<Symbol, Rat>,
        degrees: Option<&[(u32, u32)]>,
    ) -> Result<MultiPoly> {
        let mut idx = 0;
        self.spec_inner(point, degrees, &mut idx, &mut None)
    }

    /// Specialization with exact checks on leaf inputs only.
    pub fn specialize(&self, point: &HashMap<Symbol, Rat>) -> Result<MultiPoly> {
        self.specialize_checked(point, None)
    }

    /// Stage input degrees at `point`, pre-order, without checks.
    pub fn stage_degrees(&self, point: &HashMap<Symbol, Rat>) -> Result<Vec<(u32, u32)>> {
        let mut idx = 0;
        let mut out = Some(Vec::new());
        self.spec_inner(point, None, &mut idx, &mut out)?;
        Ok(out.unwrap_or_default())
    }

    fn spec_inner(
        &self,
        point: &HashMap<Symbol, Rat>,
        degrees: Option<&[(u32, u32)]>,
        idx: &mut usize,
        record: &mut Option<Vec<(u32, u32)>>,
    ) -> Result<MultiPoly> {
        match self {
            Tower::Leaf(p) => Ok(p.partial_evaluate(point)),
            Tower::Resultant { f, g, var } => {
                let me = *idx;
                *idx += 1;
                if let Some(r) = record.as_mut() {
                    r.push((0, 0));
                }
                let fs = f.spec_inner(point, degrees, idx, record)?;
                let gs = g.spec_inner(point, degrees, idx, record)?;
                let got = (fs.degree_in(*var), gs.degree_in(*var));
                if let Some(r) = record.as_mut() {
                    r[me] = got;
                } else {
                    let want = |t: &Tower, k: usize| match t {
                        Tower::Leaf(p) => Some(p.degree_in(*var)),
                        _ => degrees.map(|d| if k == 0 { d[me].0 } else { d[me].1 }),
                    };
                    for (k, t, d) in [(0, f, got.0), (1, g, got.1)] {
                        if let Some(w) = want(t, k) {
                            if d != w {
                                return Err(Error::LeadingCoefficientVanished);
                            }
                        }
                    }
                }
                stage_resultant(&fs, &gs, *var)
            }
        }
    }

    /// Degree in `x` of the unspecialized node, without expanding towers:
    /// the Sylvester degree bound is used for resultant nodes.
    pub fn generic_degree(&self, x: Symbol) -> u32 {
        match self {
            Tower::Leaf(p) => p.degree_in(x),
            Tower::Resultant { f, g, var } => {
                let (m, n) = (f.generic_degree(*var), g.generic_degree(*var));
                n * f.generic_degree(x) + m * g.generic_degree(x)
            }
        }
    }
}

/// Resultant of a specialized stage; uses a rational determinant when the
/// Sylvester entries are constants.
fn stage_resultant(f: &MultiPoly, g: &MultiPoly, x: Symbol) -> Result<MultiPoly> {
    // Two constants: the empty Sylvester determinant, 0 if either vanishes.
    if !f.contains(x) && !g.contains(x) {
        return Ok(if f.is_zero() || g.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly::one()
        });
    }
    let syl = sylvester_matrix(f, g, x)?;
    if syl.entries.iter().flatten().all(|e| e.is_constant()) {
        let m = syl.evaluate(&HashMap::new())?;
        return Ok(MultiPoly::constant(determinant_rational(&m)));
    }
    resultant_with_limit(f, g, x, DEFAULT_TERM_LIMIT)
}

/// Number of sampled points used to estimate the true stage degrees.
const CALIBRATION_POINTS: usize = 3;

/// Searches for a point where the tower's final polynomial is nonzero.
///
/// Every non-eliminated symbol, including `survivor`, is sampled. Nested
/// stages can have lower degree than the Sylvester bound, so the true
/// degree of each stage input is first estimated as the maximum over a few
/// sampled points. A trial is used only when every stage input attains it,
/// which makes the specialized value equal to the final polynomial
/// evaluated at the point.
pub fn specialization_witness(
    tower: &Tower,
    survivor: Symbol,
    plan: &SamplePlan,
) -> Result<Witness> {
    let mut params = tower.parameters();
    params.insert(survivor);
    let mut sampler = Sampler::new(plan);
    let mut degrees: Vec<(u32, u32)> = Vec::new();
    for _ in 0..CALIBRATION_POINTS {
        let pt = sampler.point(&params, true);
        let d = tower.stage_degrees(&as_map(&pt))?;
        if degrees.is_empty() {
            degrees = d;
        } else {
            for (a, b) in degrees.iter_mut().zip(d) {
                a.0 = a.0.max(b.0);
                a.1 = a.1.max(b.1);
            }
        }
    }
    for _ in 0..plan.trials {
        let pt = sampler.point(&params, true);
        match tower.specialize_checked(&as_map(&pt), Some(&degrees)) {
            Ok(v) => {
                let value = v
                    .constant_value()
                    .ok_or_else(|| Error::Config("tower leaves unassigned symbols".into()))?;
                if !value.is_zero() {
                    return Ok(Witness { point: pt, value });
                }
            }
            Err(Error::LeadingCoefficientVanished) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ExhaustedTrials(plan.trials as usize))
}

/// Integer coefficient list of a univariate polynomial in `x`, lowest first.
pub fn integer_coefficients(p: &MultiPoly, x: Symbol) -> Option<Vec<BigInt>> {
    let den = p
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| num_integer::lcm(acc, c.denom().clone()));
    let mut out = Vec::new();
    for c in p.as_univariate(x) {
        let v = c.constant_value()? * Rat::from_integer(den.clone());
        out.push(v.to_integer());
    }
    Some(out)
}

/// Largest absolute coefficient, for report summaries.
pub fn height(p: &MultiPoly) -> Rat {
    p.terms()
        .iter()
        .map(|(_, c)| c.abs())
        .max()
        .unwrap_or_else(Rat::zero)
}
