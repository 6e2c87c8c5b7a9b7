//! Curvature scenarios: multiplicity profiles, the trace and norm
//! constraints, and the standard frame derivations for each case.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::elimination::solve_linear;
use crate::error::{Error, Result};
use crate::frame::{Derivation, Rule};
use crate::poly::{rat, MultiPoly, Rat};
use crate::rational_expr::{substitute_rational, RationalExpr};
use crate::symbol::{Symbol, SymbolTable};

/// Registration order of every symbol the replay uses. Fixture files must
/// list exactly these names in this order.
pub const STANDARD_SYMBOLS: &[&str] = &[
    "lam1", "lam_u", "lam_v", "lam_w", "lam", "w_uu1", "w_vv1", "w_ww1", "w_vv_u", "w_ww_u",
    "w_uv_w", "w_vu_w", "w_uw_v", "w_wu_v", "w_vw_u", "w_wv_u", "a1", "alpha", "phi", "mu", "L",
    "H", "beta", "c", "n", "p", "q", "r", "v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8",
    "e1_lam1", "e1e1_lam1", "e1_alpha", "e1_phi", "e1_mu", "eu_lam_u", "eu_lam_v", "eu_lam_w", "eu_w_uu1", "eu_w_vv1",
    "eu_w_ww1", "eu_a1", "rho",
];

/// Named handles into the standard table.
#[derive(Debug, Clone)]
pub struct Vocab {
    pub table: SymbolTable,
    pub lam1: Symbol,
    pub lam_u: Symbol,
    pub lam_v: Symbol,
    pub lam_w: Symbol,
    pub lam: Symbol,
    pub w_uu1: Symbol,
    pub w_vv1: Symbol,
    pub w_ww1: Symbol,
    pub w_vv_u: Symbol,
    pub w_ww_u: Symbol,
    pub w_uv_w: Symbol,
    pub w_vu_w: Symbol,
    pub w_uw_v: Symbol,
    pub w_wu_v: Symbol,
    pub w_vw_u: Symbol,
    pub w_wv_u: Symbol,
    pub a1: Symbol,
    pub alpha: Symbol,
    pub phi: Symbol,
    pub mu: Symbol,
    pub l_quot: Symbol,
    pub h: Symbol,
    pub beta: Symbol,
    pub c: Symbol,
    pub n: Symbol,
    pub p: Symbol,
    pub q: Symbol,
    pub r: Symbol,
    pub v: [Symbol; 9],
    pub e1_lam1: Symbol,
    pub e1e1_lam1: Symbol,
    pub e1_alpha: Symbol,
    pub e1_phi: Symbol,
    pub e1_mu: Symbol,
    pub eu_lam_u: Symbol,
    pub eu_lam_v: Symbol,
    pub eu_lam_w: Symbol,
    pub eu_w_uu1: Symbol,
    pub eu_w_vv1: Symbol,
    pub eu_w_ww1: Symbol,
    pub eu_a1: Symbol,
    pub rho: Symbol,
}

impl Vocab {
    pub fn standard() -> Self {
        let table = SymbolTable::with_names(STANDARD_SYMBOLS).expect("standard names are valid");
        Self::from_table(table).expect("standard table is complete")
    }

    /// Wraps a table that registers all standard names (in any order).
    pub fn from_table(table: SymbolTable) -> Result<Self> {
        let s = |n: &str| table.lookup(n);
        Ok(Vocab {
            lam1: s("lam1")?,
            lam_u: s("lam_u")?,
            lam_v: s("lam_v")?,
            lam_w: s("lam_w")?,
            lam: s("lam")?,
            w_uu1: s("w_uu1")?,
            w_vv1: s("w_vv1")?,
            w_ww1: s("w_ww1")?,
            w_vv_u: s("w_vv_u")?,
            w_ww_u: s("w_ww_u")?,
            w_uv_w: s("w_uv_w")?,
            w_vu_w: s("w_vu_w")?,
            w_uw_v: s("w_uw_v")?,
            w_wu_v: s("w_wu_v")?,
            w_vw_u: s("w_vw_u")?,
            w_wv_u: s("w_wv_u")?,
            a1: s("a1")?,
            alpha: s("alpha")?,
            phi: s("phi")?,
            mu: s("mu")?,
            l_quot: s("L")?,
            h: s("H")?,
            beta: s("beta")?,
            c: s("c")?,
            n: s("n")?,
            p: s("p")?,
            q: s("q")?,
            r: s("r")?,
            v: [
                s("v0")?,
                s("v1")?,
                s("v2")?,
                s("v3")?,
                s("v4")?,
                s("v5")?,
                s("v6")?,
                s("v7")?,
                s("v8")?,
            ],
            e1_lam1: s("e1_lam1")?,
            e1e1_lam1: s("e1e1_lam1")?,
            e1_alpha: s("e1_alpha")?,
            e1_phi: s("e1_phi")?,
            e1_mu: s("e1_mu")?,
            eu_lam_u: s("eu_lam_u")?,
            eu_lam_v: s("eu_lam_v")?,
            eu_lam_w: s("eu_lam_w")?,
            eu_w_uu1: s("eu_w_uu1")?,
            eu_w_vv1: s("eu_w_vv1")?,
            eu_w_ww1: s("eu_w_ww1")?,
            eu_a1: s("eu_a1")?,
            rho: s("rho")?,
            table,
        })
    }

    pub fn x(&self, s: Symbol) -> MultiPoly {
        MultiPoly::var(s)
    }

    /// Parses against the standard table; panics on malformed built-in text.
    pub fn poly(&self, text: &str) -> MultiPoly {
        crate::parse::parse_poly(text, &self.table)
            .unwrap_or_else(|e| panic!("built-in polynomial `{text}`: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Four distinct principal curvatures, generic connection data.
    FourA,
    /// Four distinct principal curvatures with `ω_ii¹ = αλ_i + φ`.
    FourB,
    /// Three distinct principal curvatures.
    Three,
    /// Two distinct principal curvatures.
    Two,
}

/// A parameter kept symbolic or fixed to a rational value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Param {
    #[default]
    Symbolic,
    Value(Rat),
}

impl Param {
    pub fn int(v: i64) -> Self {
        Param::Value(rat(v))
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            Param::Symbolic => None,
            Param::Value(v) => Some(v),
        }
    }

    fn label(&self, name: &str) -> String {
        match self {
            Param::Symbolic => name.to_string(),
            Param::Value(v) => v.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioProfile {
    pub case: CaseTag,
    /// `(p, q, r)` for four curvatures, `(p)` for three, empty for two.
    pub multiplicities: Vec<Param>,
    pub c: Param,
    pub beta: Param,
    /// Only meaningful for the three- and two-curvature cases; for four
    /// curvatures `n = p + q + r + 1`.
    pub n: Param,
}

impl ScenarioProfile {
    pub fn four(case: CaseTag) -> Self {
        ScenarioProfile {
            case,
            multiplicities: vec![Param::Symbolic; 3],
            c: Param::Symbolic,
            beta: Param::Symbolic,
            n: Param::Symbolic,
        }
    }

    pub fn four_concrete(case: CaseTag, pqr: (i64, i64, i64), c: i64, beta: i64) -> Self {
        ScenarioProfile {
            case,
            multiplicities: vec![Param::int(pqr.0), Param::int(pqr.1), Param::int(pqr.2)],
            c: Param::int(c),
            beta: Param::int(beta),
            n: Param::Symbolic,
        }
    }

    pub fn three(n: Param, p: Param, c: Param, beta: Param) -> Self {
        ScenarioProfile {
            case: CaseTag::Three,
            multiplicities: vec![p],
            c,
            beta,
            n,
        }
    }

    pub fn two(n: Param, c: Param, beta: Param) -> Self {
        ScenarioProfile {
            case: CaseTag::Two,
            multiplicities: Vec::new(),
            c,
            beta,
            n,
        }
    }

    /// Checks arity and positivity of concrete values.
    pub fn validate(&self) -> Result<()> {
        let arity = match self.case {
            CaseTag::FourA | CaseTag::FourB => 3,
            CaseTag::Three => 1,
            CaseTag::Two => 0,
        };
        if self.multiplicities.len() != arity {
            return Err(Error::InvalidProfile(format!(
                "{:?} needs {} multiplicities, got {}",
                self.case,
                arity,
                self.multiplicities.len()
            )));
        }
        for m in &self.multiplicities {
            if let Some(v) = m.value() {
                if !v.is_integer() || *v < Rat::one() {
                    return Err(Error::InvalidProfile(format!(
                        "multiplicity {v} is not a positive integer"
                    )));
                }
            }
        }
        if let Some(n) = self.n.value() {
            if !n.is_integer() || *n < rat(2) {
                return Err(Error::InvalidProfile(format!("dimension {n} must be an integer >= 2")));
            }
            if self.case == CaseTag::Three {
                if let Some(p) = self.multiplicities[0].value() {
                    if n - p - Rat::one() < Rat::one() {
                        return Err(Error::InvalidProfile(format!(
                            "n - p - 1 must be positive (n = {n}, p = {p})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Values of every concrete parameter, keyed by symbol.
    pub fn assignment(&self, v: &Vocab) -> HashMap<Symbol, Rat> {
        let mut out = HashMap::new();
        let names: &[Symbol] = match self.case {
            CaseTag::FourA | CaseTag::FourB => &[v.p, v.q, v.r],
            CaseTag::Three => &[v.p],
            CaseTag::Two => &[],
        };
        for (s, m) in names.iter().zip(&self.multiplicities) {
            if let Some(x) = m.value() {
                out.insert(*s, x.clone());
            }
        }
        if let Some(x) = self.c.value() {
            out.insert(v.c, x.clone());
        }
        if let Some(x) = self.beta.value() {
            out.insert(v.beta, x.clone());
        }
        match self.case {
            CaseTag::FourA | CaseTag::FourB => {
                if let Some(n) = self.dimension_value() {
                    out.insert(v.n, n);
                }
            }
            _ => {
                if let Some(x) = self.n.value() {
                    out.insert(v.n, x.clone());
                }
            }
        }
        out
    }

    fn dimension_value(&self) -> Option<Rat> {
        let mut s = Rat::one();
        for m in &self.multiplicities {
            s += m.value()?;
        }
        Some(s)
    }

    /// Instantiates the concrete parameters of this profile in `e`.
    pub fn specialize(&self, v: &Vocab, e: &MultiPoly) -> MultiPoly {
        e.partial_evaluate(&self.assignment(v))
    }

    pub fn is_concrete(&self) -> bool {
        self.multiplicities.iter().all(|m| m.value().is_some())
            && self.c.value().is_some()
            && self.beta.value().is_some()
    }

    pub fn label(&self) -> String {
        let m: Vec<String> = match self.case {
            CaseTag::FourA | CaseTag::FourB => ["p", "q", "r"]
                .iter()
                .zip(&self.multiplicities)
                .map(|(n, m)| m.label(n))
                .collect(),
            CaseTag::Three => vec![
                format!("n={}", self.n.label("n")),
                format!("p={}", self.multiplicities[0].label("p")),
            ],
            CaseTag::Two => vec![format!("n={}", self.n.label("n"))],
        };
        format!(
            "{:?}({}; c={}, beta={})",
            self.case,
            m.join(","),
            self.c.label("c"),
            self.beta.label("beta")
        )
    }
}

impl fmt::Display for ScenarioProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    pub trace: MultiPoly,
    pub norm: MultiPoly,
    pub extras: Vec<MultiPoly>,
}

/// Trace and norm constraints with `H` already replaced by `λ₁`.
pub fn build_constraints(profile: &ScenarioProfile, v: &Vocab) -> Result<ConstraintSet> {
    profile.validate()?;
    let (trace, norm) = match profile.case {
        CaseTag::FourA | CaseTag::FourB => (
            v.poly("p*lam_u + q*lam_v + r*lam_w + 3*lam1"),
            v.poly("lam1^2 + p*lam_u^2 + q*lam_v^2 + r*lam_w^2 - beta"),
        ),
        CaseTag::Three => (
            v.poly("p*lam_u + (n - p - 1)*lam_v + 3*lam1"),
            v.poly("p*lam_u^2 + (n - p - 1)*lam_v^2 + lam1^2 - beta"),
        ),
        CaseTag::Two => (
            v.poly("(n - 1)*lam + 3*lam1"),
            v.poly("(n - 1)*lam^2 - beta + lam1^2"),
        ),
    };
    Ok(ConstraintSet {
        trace: profile.specialize(v, &trace).normalize(),
        norm: profile.specialize(v, &norm).normalize(),
        extras: Vec::new(),
    })
}

/// Eliminates `target` from `e` through the linear trace constraint and
/// returns the normalized numerator.
pub fn eliminate_by_trace(e: &MultiPoly, target: Symbol, cs: &ConstraintSet) -> Result<MultiPoly> {
    let sol = solve_linear(&cs.trace, target)?;
    Ok(substitute_rational(e, target, &sol).numerator().normalize())
}

/// Same, but keeps the exact numerator (no normalization).
pub fn eliminate_by_trace_exact(
    e: &MultiPoly,
    target: Symbol,
    cs: &ConstraintSet,
) -> Result<RationalExpr> {
    let sol = solve_linear(&cs.trace, target)?;
    Ok(substitute_rational(e, target, &sol))
}

/// `ρ = n(n−1)c + n²H² + β`.
pub fn scalar_curvature(n: i64, c: &Rat, h: &Rat, beta: &Rat) -> Rat {
    let n = rat(n);
    &n * (&n - Rat::one()) * c + &n * &n * h * h + beta
}

pub fn scalar_curvature_poly(v: &Vocab) -> MultiPoly {
    v.poly("n*(n - 1)*c + n^2*H^2 + beta")
}

/// `e₁` and, for four curvatures, `e_u`.
#[derive(Debug, Clone)]
pub struct DerivationSet {
    pub e1: Derivation,
    pub eu: Option<Derivation>,
}

fn zero_constants(d: &mut Derivation, v: &Vocab) {
    for s in [v.c, v.beta, v.n, v.p, v.q, v.r] {
        d.set(s, Rule::Zero);
    }
}

/// Rule inventory per case. Parameters fixed by the profile are substituted
/// into the rules.
pub fn standard_derivations(profile: &ScenarioProfile, v: &Vocab) -> Result<DerivationSet> {
    profile.validate()?;
    let sp = |t: &str| profile.specialize(v, &v.poly(t));
    let mut e1 = Derivation::new("e1");
    zero_constants(&mut e1, v);
    e1.set(v.lam1, Rule::Fresh(v.e1_lam1));
    e1.set(v.e1_lam1, Rule::Fresh(v.e1e1_lam1));
    let mut eu = None;
    match profile.case {
        CaseTag::FourA | CaseTag::FourB => {
            for (l, w, t) in [
                (v.lam_u, v.w_uu1, "u"),
                (v.lam_v, v.w_vv1, "v"),
                (v.lam_w, v.w_ww1, "w"),
            ] {
                e1.set(l, Rule::Poly(sp(&format!("(lam_{t} - lam1)*w_{t}{t}1"))));
                e1.set(w, Rule::Poly(sp(&format!("w_{t}{t}1^2 + c + lam1*lam_{t}"))));
            }
            e1.set(v.w_vv_u, Rule::Poly(sp("w_vv_u*w_vv1")));
            e1.set(v.w_ww_u, Rule::Poly(sp("w_ww_u*w_ww1")));
            let mut d = Derivation::new("eu");
            zero_constants(&mut d, v);
            d.set(v.lam1, Rule::Zero);
            d.set(v.e1_lam1, Rule::Zero);
            d.set(v.lam_u, Rule::Fresh(v.eu_lam_u));
            d.set(v.lam_v, Rule::Poly(sp("(lam_v - lam_u)*w_vv_u")));
            d.set(v.lam_w, Rule::Poly(sp("(lam_w - lam_u)*w_ww_u")));
            d.set(v.w_uu1, Rule::Fresh(v.eu_w_uu1));
            d.set(v.w_vv1, Rule::Poly(sp("w_vv_u*(w_vv1 - w_uu1)")));
            d.set(v.w_ww1, Rule::Poly(sp("w_ww_u*(w_ww1 - w_uu1)")));
            d.set(v.a1, Rule::Fresh(v.eu_a1));
            eu = Some(d);
            if profile.case == CaseTag::FourB {
                e1.set(v.alpha, Rule::Poly(sp("alpha*phi + lam1*(1 + alpha^2)")));
                e1.set(v.phi, Rule::Poly(sp("phi^2 + alpha*lam1*phi + c")));
                // 3 e1(lam1) = (n+2) lam1 phi - alpha (beta + 2 lam1^2), n = p+q+r+1
                e1.set(
                    v.lam1,
                    Rule::Poly(sp(
                        "((p + q + r + 3)*lam1*phi - alpha*(beta + 2*lam1^2))/3",
                    )),
                );
            }
        }
        CaseTag::Three => {
            let e = MultiPoly::var(v.e1_lam1);
            e1.set(v.lam_u, Rule::Poly(sp("mu*e1_lam1")));
            let k_num = sp("-8 + p*(1 - 6*mu + mu^2) - n*(1 + p*mu^2)").mul(&e);
            let k_den = sp("p*(3*lam1 + (n - 1)*lam_u)");
            e1.set(v.mu, Rule::Rational(RationalExpr::new(k_num, k_den)?));
            let m = sp("n - p - 1");
            e1.set(
                v.lam_v,
                Rule::Rational(RationalExpr::new(sp("-(3 + p*mu)*e1_lam1"), m)?),
            );
        }
        CaseTag::Two => {
            e1.set(
                v.lam,
                Rule::Rational(RationalExpr::new(sp("-3*e1_lam1"), sp("n - 1"))?),
            );
        }
    }
    Ok(DerivationSet { e1, eu })
}

/// The root `λ₁ = −nH/2` as a substitution for reporting in terms of `H`.
pub fn lam1_in_terms_of_h(profile: &ScenarioProfile, v: &Vocab) -> MultiPoly {
    let n = match profile.case {
        CaseTag::FourA | CaseTag::FourB => v.poly("p + q + r + 1"),
        _ => v.poly("n"),
    };
    profile
        .specialize(v, &n)
        .mul(&v.poly("-1/2*H"))
}

/// True if `e` vanishes at every listed point (exact).
pub fn vanishes_at(e: &MultiPoly, points: &[HashMap<Symbol, Rat>]) -> Result<bool> {
    for pt in points {
        if !e.evaluate(pt)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn constraints_four_symbolic_and_concrete() {
        let v = Vocab::standard();
        let cs = build_constraints(&ScenarioProfile::four(CaseTag::FourA), &v).unwrap();
        assert_eq!(cs.trace, v.poly("p*lam_u + q*lam_v + r*lam_w + 3*lam1"));
        assert_eq!(cs.norm, v.poly("lam1^2 + p*lam_u^2 + q*lam_v^2 + r*lam_w^2 - beta"));
        let one = ScenarioProfile::four_concrete(CaseTag::FourA, (1, 1, 1), 1, 7);
        let cs1 = build_constraints(&one, &v).unwrap();
        assert_eq!(cs1.trace, v.poly("lam_u + lam_v + lam_w + 3*lam1"));
    }

    #[test]
    fn constraints_two() {
        let v = Vocab::standard();
        let prof = ScenarioProfile::two(Param::Symbolic, Param::Symbolic, Param::Symbolic);
        let cs = build_constraints(&prof, &v).unwrap();
        assert_eq!(cs.trace, v.poly("(n - 1)*lam + 3*lam1"));
        assert_eq!(cs.norm, v.poly("(n - 1)*lam^2 - beta + lam1^2"));
    }

    #[test]
    fn invalid_profiles() {
        let v = Vocab::standard();
        let bad = ScenarioProfile::four_concrete(CaseTag::FourA, (0, 1, 1), 1, 7);
        assert!(matches!(build_constraints(&bad, &v), Err(Error::InvalidProfile(_))));
        let bad3 = ScenarioProfile::three(Param::int(3), Param::int(2), Param::int(0), Param::int(7));
        assert!(bad3.validate().is_err());
    }

    #[test]
    fn trace_elimination() {
        let v = Vocab::standard();
        let cs = build_constraints(&ScenarioProfile::four(CaseTag::FourA), &v).unwrap();
        let d22 = eliminate_by_trace(&cs.norm, v.lam_w, &cs).unwrap();
        let expect = v.poly(
            "-r*beta + (9 + r)*lam1^2 + 6*p*lam1*lam_u + (p^2 + p*r)*lam_u^2 \
             + 2*q*(3*lam1 + p*lam_u)*lam_v + (q^2 + q*r)*lam_v^2",
        );
        assert_eq!(d22, expect.normalize());
        assert!(eliminate_by_trace(&cs.trace, v.lam_w, &cs).unwrap().is_zero());
        assert!(matches!(
            eliminate_by_trace(&cs.norm, v.lam_w, &ConstraintSet {
                trace: cs.norm.clone(),
                norm: cs.norm.clone(),
                extras: vec![]
            }),
            Err(Error::NotLinearInTarget(_))
        ));
    }

    #[test]
    fn scalar_curvature_values() {
        assert_eq!(scalar_curvature(4, &rat(0), &rat(0), &rat(5)), rat(5));
        assert_eq!(scalar_curvature(4, &rat(1), &rat(0), &rat(5)), rat(17));
        assert_eq!(
            scalar_curvature(3, &rat(-1), &ratio(1, 2), &rat(2)),
            rat(-6) + ratio(9, 4) + rat(2)
        );
    }

    #[test]
    fn derivations_per_case() {
        let v = Vocab::standard();
        let ds = standard_derivations(&ScenarioProfile::four(CaseTag::FourA), &v).unwrap();
        let eu = ds.eu.unwrap();
        assert_eq!(
            eu.apply_poly(&v.poly("lam_v")).unwrap(),
            v.poly("(lam_v - lam_u)*w_vv_u")
        );
        assert!(eu.apply_poly(&v.poly("lam1")).unwrap().is_zero());
        let db = standard_derivations(&ScenarioProfile::four(CaseTag::FourB), &v).unwrap();
        assert_eq!(
            db.e1.apply_poly(&v.poly("phi")).unwrap(),
            v.poly("phi^2 + alpha*lam1*phi + c")
        );
        assert!(eu.apply_poly(&v.poly("e1_lam1")).unwrap().is_zero());
    }
}
