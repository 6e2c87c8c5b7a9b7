//! Connection coefficients across three distinct curvatures, split on `a₁`.

use super::context::{summarize, Replay};
use super::run::Outcome;
use super::report::Verdict;
use super::StepKind as K;
use crate::elimination::dependency_determinant;
use crate::error::Result;
use crate::frame::Rule;
use crate::scenario::standard_derivations;

const A1: &str = "(lam_w - lam_u)*w_vv1 + (lam_u - lam_v)*w_ww1 + (lam_v - lam_w)*w_uu1";

/// (a) `a₁ ≠ 0` kills the mixed coefficients.
pub(crate) fn run_a(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let curv = rp.premise("l42.ratio_curvature", "w_vu_w*(w_uu1 - w_ww1) - w_uv_w*(w_vv1 - w_ww1)")?;
    let coda = rp.premise("l42.ratio_codazzi", "(lam_u - lam_w)*w_vu_w - (lam_v - lam_w)*w_uv_w")?;
    let det = rp.step(
        "dependency of mixed coefficients",
        K::DependencyDet,
        &["l42.ratio_curvature", "l42.ratio_codazzi"],
        || dependency_determinant(&curv, &coda, v.w_vu_w, v.w_uv_w),
    )?;
    rp.matches("l41.a1", &det)?;
    rp.assume(&v.x(v.a1), "branch a1 != 0");
    rp.note("nonzero determinant a1 leaves only w_vu_w = w_uv_w = 0; the other pairs follow by symmetry");
    Ok(Outcome {
        verdict: Verdict::LemmaEstablished,
        final_poly: Some(summarize(&det, v)),
        witness: None,
        degeneracy: None,
    })
}

/// (b) `a₁ = 0` makes `ω_ii¹` affine in `λ_i`, with the induced `e₁` rules.
pub(crate) fn run_b(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let a1 = rp.p(A1);
    rp.matches("l42.a1_zero_ratio", &a1)?;
    let lin = rp.premise("l42.linear_omega", "w_uu1 - alpha*lam_u - phi")?;
    let affine = vec![
        (v.w_uu1, rp.p("alpha*lam_u + phi")),
        (v.w_vv1, rp.p("alpha*lam_v + phi")),
        (v.w_ww1, rp.p("alpha*lam_w + phi")),
    ];
    let r = rp.step("affine form solves a1 = 0", K::Substitute, &["l42.a1_zero_ratio"], || {
        Ok(a1.substitute_many(&affine))
    })?;
    rp.assert_zero("a1 vanishes on the affine family", &r);

    let ds = standard_derivations(&rp.profile, v)?;
    let mut opaque = ds.e1.renamed("e1");
    opaque.set(v.alpha, Rule::Fresh(v.e1_alpha));
    opaque.set(v.phi, Rule::Fresh(v.e1_phi));
    opaque.set(v.lam1, Rule::Fresh(v.e1_lam1));
    let d = rp.step("e_1 of affine relation", K::Differentiate, &["l42.linear_omega"], || {
        Ok(opaque.apply_poly(&lin)?.substitute_many(&affine))
    })?;
    rp.assert_zero("no lam_u^2 term", &d.coefficient(v.lam_u, 2));
    let ea = d.coefficient(v.lam_u, 1).neg();
    let ep = d.coefficient(v.lam_u, 0).neg();
    rp.matches("l42.e1_alpha", &ea)?;
    rp.matches("l42.e1_phi", &ep)?;
    // Both relations as zero residuals, for every curvature of the family.
    let ra = rp.p("alpha*phi + lam1*(1 + alpha^2)");
    let rf = rp.p("phi^2 + alpha*lam1*phi + c");
    for (w, l) in [("w_uu1", "lam_u"), ("w_vv1", "lam_v"), ("w_ww1", "lam_w")] {
        let rel = rp.p(&format!("{w} - alpha*{l} - phi"));
        let res = rp.step(&format!("residual along {l}"), K::Differentiate, &["l42.e1_alpha", "l42.e1_phi"], || {
            Ok(opaque
                .apply_poly(&rel)?
                .substitute_many(&affine)
                .substitute_many(&[(v.e1_alpha, ra.clone()), (v.e1_phi, rf.clone())]))
        })?;
        rp.assert_zero(&format!("zero residual along {l}"), &res);
    }
    // The rule set used downstream agrees.
    let mut rules = ds.e1.renamed("e1");
    rules.set(v.alpha, Rule::Poly(ra.clone()));
    rules.set(v.phi, Rule::Poly(rf.clone()));
    rules.set(v.lam1, Rule::Fresh(v.e1_lam1));
    let res = rp.step("rule-set residual", K::Differentiate, &["l42.linear_omega"], || {
        Ok(rules.apply_poly(&lin)?.substitute_many(&affine))
    })?;
    rp.assert_zero("rule set reproduces both relations", &res);
    Ok(Outcome {
        verdict: Verdict::LemmaEstablished,
        final_poly: Some(format!(
            "e1(alpha) = {}, e1(phi) = {}",
            ra.to_text(&v.table),
            rf.to_text(&v.table)
        )),
        witness: None,
        degeneracy: None,
    })
}
