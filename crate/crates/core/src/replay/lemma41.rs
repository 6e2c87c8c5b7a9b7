//! The four-curvature lemma: `e_u(λ_u) = 0` and `ω_vv^u = 0` by reductio.

use super::context::{summarize, Replay};
use super::run::Outcome;
use super::{eliminate_leading, StepKind as K};
use crate::elimination::{dependency_determinant, solve_linear};
use crate::error::Result;
use crate::frame::{Derivation, Rule};
use crate::poly::{ratio, MultiPoly};
use crate::rational_expr::substitute_rational;
use crate::scenario::{build_constraints, eliminate_by_trace, standard_derivations, Vocab};

use super::report::Verdict;

/// `e_u` with every first-order value kept opaque.
pub(crate) fn eu_opaque(eu: &Derivation, v: &Vocab) -> Derivation {
    let mut d = eu.renamed("eu");
    d.set(v.lam_v, Rule::Fresh(v.eu_lam_v))
        .set(v.lam_w, Rule::Fresh(v.eu_lam_w))
        .set(v.w_vv1, Rule::Fresh(v.eu_w_vv1))
        .set(v.w_ww1, Rule::Fresh(v.eu_w_ww1));
    d
}

pub(crate) fn run(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let cs = build_constraints(&rp.profile, v)?;
    let ds = standard_derivations(&rp.profile, v)?;
    let e1 = ds.e1;
    let eu = ds.eu.expect("four-curvature profile has e_u");
    let eu_raw = eu_opaque(&eu, v);
    let x = MultiPoly::var;
    let (wv_u, ww_u) = (v.w_vv_u, v.w_ww_u);

    rp.matches("l41.trace", &cs.trace)?;
    rp.matches("l41.norm", &cs.norm)?;

    let d1 = rp.step("e_u(trace)", K::Differentiate, &["l41.trace"], || {
        eu_raw.apply_poly(&cs.trace)
    })?;
    rp.matches("l41.trace_eu", &d1)?;
    let d2 = rp.step("e_u(norm)", K::Differentiate, &["l41.norm"], || {
        eu_raw.apply_poly(&cs.norm)
    })?;
    rp.matches("l41.norm_eu", &d2)?;
    let d3 = rp.step("eliminate e_u(lam_u)", K::Combine, &["l41.trace_eu", "l41.norm_eu"], || {
        Ok(d2.scale(&ratio(1, 2)).sub(&x(v.lam_u).mul(&d1)))
    })?;
    rp.matches("l41.eu_lam_u_free", &d3)?;

    let c16 = vec![
        (v.eu_lam_v, rp.p("(lam_v - lam_u)*w_vv_u")),
        (v.eu_lam_w, rp.p("(lam_w - lam_u)*w_ww_u")),
        (v.eu_w_vv1, rp.p("w_vv_u*(w_vv1 - w_uu1)")),
        (v.eu_w_ww1, rp.p("w_ww_u*(w_ww1 - w_uu1)")),
    ];
    let d4 = rp.step("connection form", K::Substitute, &["l41.eu_lam_u_free"], || {
        Ok(d3.substitute_many(&c16))
    })?;
    rp.matches("l41.omega_system", &d4)?;
    let d5 = rp.step("e_1 of system", K::Differentiate, &["l41.omega_system"], || {
        e1.apply_poly(&d4)
    })?;
    rp.matches("l41.omega_system_e1", &d5)?;

    let det = rp.step(
        "dependency of system",
        K::DependencyDet,
        &["l41.omega_system", "l41.omega_system_e1"],
        || dependency_determinant(&d4, &d5, wv_u, ww_u),
    )?;
    rp.assume(&x(wv_u), "reductio hypothesis");
    let d6 = rp.cancel(
        "cancel multiplicities and gaps",
        &det,
        &[rp.p("q"), rp.p("r"), rp.p("lam_v - lam_u"), rp.p("lam_w - lam_u")],
        "distinct curvatures",
    )?;
    rp.matches("l41.first_dependency", &d6)?;

    let a1_def = rp.p("(lam_w - lam_u)*w_vv1 + (lam_u - lam_v)*w_ww1 + (lam_v - lam_w)*w_uu1");
    rp.matches("l41.a1", &a1_def)?;
    let ra = x(v.a1).sub(&a1_def);
    let d7 = rp.clear("eliminate w_uu1 by a1", &["l41.first_dependency", "l41.a1"], || {
        Ok(substitute_rational(&d6, v.w_uu1, &solve_linear(&ra, v.w_uu1)?))
    })?;
    rp.matches("l41.a1_relation", &d7)?;

    // branch a1 = 0
    let z = d7.substitute(v.a1, &MultiPoly::zero());
    let d8 = rp.cancel(
        "branch a1 = 0",
        &z,
        &[rp.p("lam_u - lam_v"), rp.p("lam_u - lam_w")],
        "distinct curvatures",
    )?;
    rp.matches("l41.a1_zero_branch", &d8)?;
    let b = rp.step("e_1 along branch", K::Differentiate, &["l41.a1_zero_branch"], || {
        Ok(e1.apply_poly(&d8)?.substitute(v.w_ww1, &x(v.w_vv1)))
    })?;
    let expect = rp.p("lam1*(lam_v - lam_w)");
    rp.check(
        "branch a1 = 0 forces lam_v = lam_w",
        K::AssertZero,
        b.normalize() == expect.normalize(),
        format!("e_1 derivative reduces to {}", summarize(&b, v)),
    );
    rp.assume(&x(v.lam1), "nonzero mean curvature, lam1 = -nH/2");

    // branch a1 != 0
    rp.assume(&x(v.a1), "branch a1 != 0");
    let sol_u = solve_linear(&d1, v.eu_lam_u)?;
    let d9 = rp.clear("e_u of a1 relation", &["l41.a1_relation", "l41.trace_eu"], || {
        Ok(substitute_rational(&eu_raw.apply_poly(&d7)?, v.eu_lam_u, &sol_u))
    })?;
    rp.matches("l41.eu_a1_relation", &d9)?;
    let d10 = rp.step("connection form", K::Substitute, &["l41.eu_a1_relation"], || {
        Ok(d9.substitute_many(&c16))
    })?;
    rp.matches("l41.eu_a1_frame", &d10)?;
    rp.matches("l41.f1", &d10.coefficient(wv_u, 1))?;
    rp.matches("l41.f2", &d10.coefficient(ww_u, 1))?;

    let d11 = rp.clear("e_u of a1 definition", &["l41.a1", "l41.trace_eu"], || {
        let d = eu_raw.apply_poly(&ra.neg())?;
        Ok(substitute_rational(&d, v.eu_lam_u, &sol_u))
    })?;
    let d11 = d11.substitute_many(&c16);
    rp.matches("l41.eu_of_a1", &d11)?;
    rp.matches("l41.f3", &d11.coefficient(wv_u, 1))?;
    rp.matches("l41.f4", &d11.coefficient(ww_u, 1))?;

    let d12 = rp.step("e_1(trace)", K::Differentiate, &["l41.trace"], || e1.apply_poly(&cs.trace))?;
    rp.matches("l41.trace_e1", &d12)?;
    let d13 = rp.clear("e_u of e_1(trace)", &["l41.trace_e1", "l41.trace_eu"], || {
        Ok(substitute_rational(&eu_raw.apply_poly(&d12)?, v.eu_lam_u, &sol_u))
    })?;
    let d13 = d13.substitute_many(&c16);
    rp.matches("l41.eu_w_uu1", &d13)?;
    let f5 = rp.cancel("extract f5", &d13.coefficient(wv_u, 1), &[rp.p("q")], "multiplicity")?;
    rp.matches("l41.f5", &f5)?;
    let f6 = rp.cancel("extract f6", &d13.coefficient(ww_u, 1), &[rp.p("r")], "multiplicity")?;
    rp.matches("l41.f6", &f6)?;

    let d14 = rp.step("eliminate e_u(w_uu1)", K::Combine, &["l41.eu_of_a1", "l41.eu_w_uu1"], || {
        eliminate_leading(&d11, &d13, v.eu_w_uu1)
    })?;
    let d14 = rp.cancel("cancel p", &d14, &[rp.p("p")], "multiplicity")?;
    rp.matches("l41.eu_a1_pair", &d14)?;
    let d15 = rp.step("eliminate e_u(a1)", K::Combine, &["l41.eu_a1_frame", "l41.eu_a1_pair"], || {
        eliminate_leading(&d10, &d14, v.eu_a1)
    })?;
    let d15 = rp.cancel("cancel p(lam_u - lam1)", &d15, &[rp.p("p"), rp.p("lam_u - lam1")], "multiplicity and distinct curvatures")?;
    rp.matches("l41.eu_a1_free", &d15)?;
    let f7 = d15.coefficient(wv_u, 1);
    let f8 = d15.coefficient(ww_u, 1);
    rp.matches("l41.f7", &f7)?;
    rp.matches("l41.f8", &f8)?;

    let sol_w = solve_linear(&ra, v.w_uu1)?;
    let sol_a = solve_linear(&d7, v.a1)?;
    let f7r = rp.clear("f7 without w_uu1", &["l41.f7", "l41.a1"], || Ok(substitute_rational(&f7, v.w_uu1, &sol_w)))?;
    rp.matches("l41.f7_reduced", &f7r)?;
    let f7g = rp.clear("f7 without a1", &["l41.f7_reduced", "l41.a1_relation"], || Ok(substitute_rational(&f7r, v.a1, &sol_a)))?;
    rp.matches("l41.f7_g1", &f7g)?;
    let g1 = rp.cancel(
        "extract g1",
        &f7g,
        &[rp.p("(lam_u - lam_v)^2"), rp.p("w_vv1 - w_ww1")],
        "distinct curvatures; branch a1 != 0",
    )?;
    rp.matches("l41.g1", &g1)?;
    let f8r = rp.clear("f8 without w_uu1", &["l41.f8", "l41.a1"], || Ok(substitute_rational(&f8, v.w_uu1, &sol_w)))?;
    rp.matches("l41.f8_reduced", &f8r)?;
    let f8g = rp.clear("f8 without a1", &["l41.f8_reduced", "l41.a1_relation"], || Ok(substitute_rational(&f8r, v.a1, &sol_a)))?;
    rp.matches("l41.f8_g2", &f8g)?;
    let g2 = rp.cancel(
        "extract g2",
        &f8g,
        &[rp.p("(lam_u - lam_w)^2"), rp.p("w_vv1 - w_ww1")],
        "distinct curvatures; branch a1 != 0",
    )?;
    rp.matches("l41.g2", &g2)?;

    let d20 = rp.clear("system without w_uu1, a1", &["l41.eu_a1_free"], || {
        let a = substitute_rational(&d15, v.w_uu1, &sol_w);
        let (num, _) = crate::elimination::clear_denominators(&a);
        Ok(substitute_rational(&num, v.a1, &sol_a))
    })?;
    let d20 = rp.cancel("cancel w_vv1 - w_ww1", &d20, &[rp.p("w_vv1 - w_ww1")], "branch a1 != 0")?;
    rp.matches("l41.omega_system_g", &d20)?;
    let det2 = rp.step(
        "dependency with g-system",
        K::DependencyDet,
        &["l41.omega_system", "l41.omega_system_g"],
        || dependency_determinant(&d4, &d20, wv_u, ww_u),
    )?;
    let n1 = rp.cancel(
        "cancel squared gaps",
        &det2,
        &[rp.p("(lam_u - lam_v)^2"), rp.p("(lam_u - lam_w)^2")],
        "distinct curvatures",
    )?;
    rp.matches("l41.g_dependency", &n1)?;
    rp.matches("l41.g_dependency_expanded", &n1)?;

    let d22 = rp.step("norm without lam_w", K::EliminateTrace, &["l41.norm"], || {
        eliminate_by_trace(&cs.norm, v.lam_w, &cs)
    })?;
    rp.matches("l41.norm_lam_w_free", &d22)?;
    let n2 = rp.step("g-dependency without lam_w", K::EliminateTrace, &["l41.g_dependency"], || {
        eliminate_by_trace(&n1, v.lam_w, &cs)
    })?;
    rp.matches("l41.g_lam_w_free", &n2)?;
    for k in 0..3u16 {
        rp.matches(&format!("l41.b{k}"), &n2.coefficient(v.lam_v, k))?;
    }
    let zr = rp.step("eliminate lam_v", K::Combine, &["l41.g_lam_w_free", "l41.norm_lam_w_free"], || {
        eliminate_leading(&n2, &d22, v.lam_v)
    })?;
    let z1 = rp.cancel("cancel q(q+r)r", &zr, &[rp.p("q"), rp.p("q + r"), rp.p("r")], "multiplicity")?;
    rp.matches("l41.lam_v_free", &z1)?;
    let mut eu1 = Derivation::new("eu");
    for s in [v.c, v.beta, v.p, v.q, v.r, v.lam1] {
        eu1.set(s, Rule::Zero);
    }
    eu1.set(v.lam_u, Rule::Fresh(v.eu_lam_u));
    let n4 = rp.step("e_u of lam_v-free relation", K::Differentiate, &["l41.lam_v_free"], || {
        eu1.apply_poly(&z1)
    })?;
    rp.matches("l41.z1_eu", &n4)?;
    let eul = rp.cancel(
        "e_u(lam_u) vanishes",
        &n4,
        &[rp.p("p"), rp.p("p + q + r"), rp.p("lam1 - lam_u")],
        "multiplicity and distinct curvatures",
    )?;
    rp.check(
        "e_u(lam_u) = 0",
        K::AssertZero,
        eul.normalize() == x(v.eu_lam_u),
        format!("remaining factor {}", summarize(&eul, v)),
    );
    let d23 = rp.step("system with e_u(lam_u) = 0", K::Substitute, &["l41.trace_eu"], || {
        Ok(d1.substitute(v.eu_lam_u, &MultiPoly::zero()).substitute_many(&c16))
    })?;
    rp.matches("l41.omega_system_trace", &d23)?;
    let det3 = rp.step(
        "terminal dependency",
        K::DependencyDet,
        &["l41.omega_system", "l41.omega_system_trace"],
        || dependency_determinant(&d4, &d23, wv_u, ww_u),
    )?;
    let fin = rp.cancel("cancel qr", &det3, &[rp.p("q"), rp.p("r")], "multiplicity")?;
    rp.matches("l41.distinctness", &fin)?;
    rp.note("nontrivial (w_vv_u, w_ww_u) forces the distinctness product to vanish; hence w_vv_u = 0");
    Ok(Outcome {
        verdict: Verdict::LemmaEstablished,
        final_poly: Some(summarize(&fin, v)),
        witness: None,
        degeneracy: None,
    })
}
