//! Three distinct curvatures `λ₁, λ_u` (multiplicity `p`), `λ_v`
//! (multiplicity `n − p − 1`).

use std::collections::HashMap;

use super::context::{summarize, Replay};
use super::report::Verdict;
use super::run::{direct_witness, Outcome};
use super::{eliminate_leading, StepKind as K};
use crate::elimination::solve_linear;
use crate::error::{Error, Result};
use crate::frame::Rule;
use crate::poly::MultiPoly;
use crate::rational_expr::{substitute_rational, substitute_rational_expr, RationalExpr};
use crate::scenario::{build_constraints, eliminate_by_trace, standard_derivations};
use crate::symbol::Symbol;

/// Replaces `E²` in `e` using `s·E² + t = 0`; `e` must be even in `E`.
pub(crate) fn eliminate_square(e: &MultiPoly, x: Symbol, s: &MultiPoly, t: &MultiPoly) -> Result<MultiPoly> {
    let cs = e.as_univariate(x);
    let top = (cs.len() - 1) / 2;
    let mut out = MultiPoly::zero();
    let neg_t = t.neg();
    for (k, c) in cs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k % 2 == 1 {
            return Err(Error::NotLinear("odd power of the eliminated square".into()));
        }
        let j = (k / 2) as u32;
        out = out.add(&c.mul(&neg_t.pow(j)).mul(&s.pow(top as u32 - j)));
    }
    Ok(out)
}

pub(crate) fn run(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let cs = build_constraints(&rp.profile, v)?;
    let e1 = standard_derivations(&rp.profile, v)?.e1;
    let x = MultiPoly::var;
    let e = x(v.e1_lam1);

    rp.matches("c2.trace", &cs.trace)?;
    rp.matches("c2.norm", &cs.norm)?;
    let d65 = rp.step("norm without lam_v", K::EliminateTrace, &["c2.trace", "c2.norm"], || {
        eliminate_by_trace(&cs.norm, v.lam_v, &cs)
    })?;
    rp.matches("c2.lam_v_free", &d65)?;
    let d66 = rp.step("norm without lam_u", K::EliminateTrace, &["c2.trace", "c2.norm"], || {
        eliminate_by_trace(&cs.norm, v.lam_u, &cs)
    })?;
    rp.matches("c2.lam_u_free", &d66)?;
    let m = rp.p("n - p - 1");
    rp.assume(&m, "multiplicity of lam_v");

    let tr = e1.apply(&cs.trace)?;
    rp.assert_zero("e_1(trace) vanishes under the rules", tr.numerator());
    let lvs = solve_linear(&cs.trace, v.lam_v)?;
    let mu_raw = rp.clear("e_1(norm) on the trace", &["c2.norm"], || {
        substitute_rational_expr(&e1.apply(&cs.norm)?, v.lam_v, &lvs)
    })?;
    let mu_def = rp.cancel("cancel e_1(lam1)", &mu_raw, std::slice::from_ref(&e), "lam1 nonconstant (reductio)")?;
    rp.matches("c2.mu", &mu_def)?;
    let mut e1m = e1.renamed("e1");
    e1m.set(v.mu, Rule::Fresh(v.e1_mu));
    let dmu = rp.step("e_1 of the mu relation", K::Differentiate, &["c2.mu"], || e1m.apply_poly(&mu_def))?;
    rp.matches("c2.e1_mu", &dmu)?;
    let chk = e1.apply(&mu_def)?;
    rp.assert_zero("rule for e_1(mu) preserves the relation", chk.numerator());

    rp.premise("c2.gauss", "w_uu1*w_vv1 + c + lam_u*lam_v")?;
    let cc = RationalExpr::from_poly(rp.p("c"));
    let r = |p: MultiPoly| RationalExpr::from_poly(p);
    let wu = RationalExpr::new(x(v.mu).mul(&e), rp.p("lam_u - lam1"))?;
    let e1lv = e1.apply(&x(v.lam_v))?;
    let wv = e1lv.div(&lvs.sub(&r(x(v.lam1))))?;
    let d74 = rp.clear("Gauss equation on the frame", &["c2.gauss", "c2.mu"], || {
        Ok(wu
            .mul(&wv)
            .add(&cc)
            .add(&r(x(v.lam_u)).mul(&lvs)))
    })?;
    rp.matches("c2.product", &d74)?;
    let riccati = |w: &RationalExpr, lam: &RationalExpr| -> Result<RationalExpr> {
        Ok(e1
            .apply_rational(w)?
            .sub(&w.mul(w))
            .sub(&r(x(v.lam1)).mul(lam))
            .sub(&cc))
    };
    let d75 = rp.clear("Riccati equation along u", &["c2.mu", "c2.e1_mu"], || riccati(&wu, &r(x(v.lam_u))))?;
    rp.matches("c2.riccati_u", &d75)?;
    let d73 = rp.clear("Riccati equation along v", &["c2.mu", "c2.e1_mu"], || riccati(&wv, &lvs))?;
    let rename: HashMap<Symbol, Symbol> = [(v.lam_u, v.lam)].into_iter().collect();
    rp.compare_info("c2.riccati_v", &d73.rename(&rename))?;

    let d77 = rp.step("eliminate e_1 e_1(lam1)", K::Combine, &["c2.riccati_u", "c2.riccati_v"], || {
        eliminate_leading(&d75, &d73, v.e1e1_lam1)
    })?;
    rp.compare_info("c2.combined", &d77.rename(&rename))?;
    let s = d74.coefficient(v.e1_lam1, 2);
    let t = d74.coefficient(v.e1_lam1, 0);
    rp.assert_zero("Gauss relation is even in e_1(lam1)", &d74.coefficient(v.e1_lam1, 1));
    let d78 = rp.step("eliminate e_1(lam1)^2", K::Combine, &["c2.product"], || {
        eliminate_square(&d77, v.e1_lam1, &s, &t)
    })?;
    rp.compare_info("c2.final", &d78.rename(&rename))?;
    rp.assume(&s, "coefficient of e_1(lam1)^2 in the Gauss relation");
    let mu_sol = solve_linear(&mu_def, v.mu)?;
    let fin = rp.clear("substitute mu", &["c2.mu"], || Ok(substitute_rational(&d78, v.mu, &mu_sol)))?;
    let fin = fin.normalize();
    let phi = rp.resultant("Res_lam_u(lam_v-free norm, chain)", &["c2.lam_v_free"], &d65, &fin, v.lam_u)?;
    constancy(rp, &phi)
}

/// Closes a chain whose last polynomial involves only `λ₁` and profile
/// parameters.
pub(crate) fn constancy(rp: &mut Replay, phi: &MultiPoly) -> Result<Outcome> {
    let v = rp.v;
    let params = [v.n, v.p, v.c, v.beta];
    let stray: Vec<Symbol> = phi
        .symbols()
        .into_iter()
        .filter(|s| *s != v.lam1 && !params.contains(s))
        .collect();
    let univariate = stray.is_empty();
    rp.check(
        "final polynomial involves lam1 and parameters only",
        K::AssertZero,
        univariate,
        if univariate {
            format!("degree {} in lam1", phi.degree_in(v.lam1))
        } else {
            let names: Vec<&str> = stray.iter().map(|s| v.table.name(*s)).collect();
            format!("stray symbols {}", names.join(", "))
        },
    );
    if !univariate {
        return Ok(Outcome::inconclusive(summarize(phi, v)));
    }
    let w = match direct_witness(phi, v.lam1, v) {
        Ok(w) => w,
        Err(Error::IdenticallyZero) => {
            rp.check("final polynomial is not identically zero", K::SpecializeCheck, false, "zero polynomial");
            let mut out = Outcome::inconclusive("0".to_string());
            out.degeneracy = Some("identically zero".into());
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    rp.check(
        "final polynomial is not identically zero",
        K::SpecializeCheck,
        true,
        format!("leading coefficient in lam1: {}", w.value),
    );
    Ok(Outcome {
        verdict: Verdict::ForcesConstancy,
        final_poly: Some(summarize(phi, v)),
        witness: Some(w),
        degeneracy: None,
    })
}
