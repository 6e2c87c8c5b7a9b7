//! Four distinct curvatures. Subcase A (`a₁ ≠ 0`) closes with the mixed
//! connection coefficients zero, subcase B (`a₁ = 0`) with the affine
//! family `ω_ii¹ = αλ_i + φ`.

use std::collections::{BTreeSet, HashMap};

use super::context::{summarize, Replay};
use super::report::{Verdict, WitnessRecord};
use super::run::{final_nonvanishing, Outcome};
use super::{eliminate_leading, reduce_product, StepKind as K};
use crate::elimination::{resultant, solve_linear};
use crate::error::{Error, Result};
use crate::frame::{Derivation, Rule};
use crate::gcd::gcd;
use crate::oracle::{Sampler, Tower};
use crate::poly::{rat, MultiPoly, Rat};
use crate::rational_expr::substitute_rational;
use crate::scenario::{build_constraints, eliminate_by_trace, standard_derivations, ConstraintSet, Vocab};
use crate::symbol::Symbol;

/// `e₁` with `e₁(λ₁)` kept opaque.
fn e1_opaque(e1: &Derivation, v: &Vocab) -> Derivation {
    let mut d = e1.renamed("e1");
    d.set(v.lam1, Rule::Fresh(v.e1_lam1));
    d
}

fn cross_premises(rp: &mut Replay) -> Result<[MultiPoly; 3]> {
    Ok([
        rp.premise("c1.cross_uv", "c + lam_u*lam_v + w_uu1*w_vv1 - 2*r*w_uv_w*w_vu_w")?,
        rp.premise("c1.cross_uw", "c + lam_u*lam_w + w_uu1*w_ww1 - 2*q*w_uw_v*w_wu_v")?,
        rp.premise("c1.cross_vw", "c + lam_v*lam_w + w_vv1*w_ww1 - 2*p*w_vw_u*w_wv_u")?,
    ])
}

/// Trace and norm under `e₁` (opaque `e₁(λ₁)`), then `e₁(λ₁)` removed.
fn weighted(rp: &mut Replay, e1: &Derivation, cs: &ConstraintSet) -> Result<MultiPoly> {
    let v = rp.v;
    let n11 = rp.step("e_1(trace)", K::Differentiate, &["l41.trace"], || e1.apply_poly(&cs.trace))?;
    rp.matches("c1.trace_e1", &n11)?;
    let n12 = rp.step("e_1(norm)", K::Differentiate, &["l41.norm"], || {
        Ok(e1.apply_poly(&cs.norm)?.scale(&Rat::new(1.into(), 2.into())))
    })?;
    rp.matches("c1.norm_e1", &n12)?;
    let n13 = rp.step("eliminate e_1(lam1)", K::Combine, &["c1.trace_e1", "c1.norm_e1"], || {
        eliminate_leading(&n12, &n11, v.e1_lam1)
    })?;
    rp.matches("c1.weighted", &n13)?;
    Ok(n13)
}

pub(crate) fn run_a(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let cs = build_constraints(&rp.profile, v)?;
    let ds = standard_derivations(&rp.profile, v)?;
    let e1 = e1_opaque(&ds.e1, v);
    let [cuv, cuw, cvw] = cross_premises(rp)?;
    rp.assume(&v.x(v.a1), "subcase a1 != 0");
    rp.note("lemma on mixed coefficients: a1 != 0 gives w_uv_w = w_vu_w = w_uw_v = w_wu_v = w_vw_u = w_wv_u = 0");
    let zero: Vec<(Symbol, MultiPoly)> = [v.w_uv_w, v.w_vu_w, v.w_uw_v, v.w_wu_v, v.w_vw_u, v.w_wv_u]
        .into_iter()
        .map(|s| (s, MultiPoly::zero()))
        .collect();
    let mut prods = Vec::new();
    for (id, src, e) in [
        ("c1.product_uv", "c1.cross_uv", &cuv),
        ("c1.product_uw", "c1.cross_uw", &cuw),
        ("c1.product_vw", "c1.cross_vw", &cvw),
    ] {
        let out = rp.step(&format!("{src} without mixed terms"), K::Substitute, &[src], || {
            Ok(e.substitute_many(&zero))
        })?;
        rp.matches(id, &out)?;
        prods.push(out);
    }
    let [puv, puw, pvw] = [prods[0].clone(), prods[1].clone(), prods[2].clone()];
    let r1 = rp.resultant("eliminate w_vv1", &["c1.product_uv", "c1.product_vw"], &puv, &pvw, v.w_vv1)?;
    let d54 = rp.resultant("eliminate w_ww1", &["c1.product_uw"], &r1, &puw, v.w_ww1)?;
    rp.matches("c1.omega_uu_square", &d54)?;

    let n13 = weighted(rp, &e1, &cs)?;
    let c_uv = rp.p("-(c + lam_u*lam_v)");
    let c_uw = rp.p("-(c + lam_u*lam_w)");
    let n14 = rp.step("multiply by w_uu1 and reduce products", K::Substitute, &["c1.weighted", "c1.product_uv", "c1.product_uw"], || {
        let e = n13.mul(&v.x(v.w_uu1));
        let e = reduce_product(&e, v.w_uu1, v.w_vv1, &c_uv)?;
        reduce_product(&e, v.w_uu1, v.w_ww1, &c_uw)
    })?;
    rp.matches("c1.weighted_square", &n14)?;
    let n15 = rp.step("eliminate w_uu1^2", K::Combine, &["c1.weighted_square", "c1.omega_uu_square"], || {
        eliminate_leading(&n14, &d54, v.w_uu1)
    })?;
    rp.matches("c1.quartic", &n15)?;
    let n16 = rp.step("quartic without lam_w", K::EliminateTrace, &["c1.quartic"], || {
        eliminate_by_trace(&n15, v.lam_w, &cs)
    })?;
    rp.matches("c1.quintic", &n16)?;
    for k in 0..6u16 {
        rp.matches(&format!("c1.v{k}"), &n16.coefficient(v.lam_v, k))?;
    }
    let n17 = rp.step("norm without lam_w", K::EliminateTrace, &["l41.norm"], || {
        eliminate_by_trace(&cs.norm, v.lam_w, &cs)
    })?;
    rp.matches("c1.quadratic", &n17)?;
    for k in 0..3u16 {
        rp.matches(&format!("c1.v{}", 6 + k), &n17.coefficient(v.lam_v, k))?;
    }
    let quint = MultiPoly::from_univariate(&v.v[..6].iter().map(|s| v.x(*s)).collect::<Vec<_>>(), v.lam_v);
    let quad = MultiPoly::from_univariate(&v.v[6..].iter().map(|s| v.x(*s)).collect::<Vec<_>>(), v.lam_v);
    let n18 = rp.step("generic resultant in lam_v", K::Resultant, &["c1.quintic", "c1.quadratic"], || {
        resultant(&quint, &quad, v.lam_v)
    })?;
    rp.matches("c1.generic_resultant", &n18)?;

    // Differentiating G(lam1, lam_u) = 0 along e_1 gives a relation linear
    // in the quotient L = (3 G_u - p G_1)(lam_u - lam1) / G_1.
    let lrel = rp.p("L*w_uu1 - q*(lam_v - lam1)*w_vv1 - r*(lam_w - lam1)*w_ww1");
    let n22 = rp.step("L-relation squared out", K::Combine, &["c1.omega_uu_square"], || {
        let e = lrel.mul(&v.x(v.w_uu1));
        let e = reduce_product(&e, v.w_uu1, v.w_vv1, &c_uv)?;
        let e = reduce_product(&e, v.w_uu1, v.w_ww1, &c_uw)?;
        eliminate_leading(&e, &d54, v.w_uu1)
    })?;
    let n23 = rp.step("L-relation without lam_w", K::EliminateTrace, &[], || {
        eliminate_by_trace(&n22, v.lam_w, &cs)
    })?;
    rp.matches("c1.quartic_l", &n23)?;
    for k in 0..5u16 {
        rp.matches(&format!("c1.v{}", 9 + k), &n23.coefficient(v.lam_v, k))?;
    }

    if !rp.profile.is_concrete() {
        rp.note("the resultant chain runs at concrete multiplicities, curvature and norm");
        return Ok(Outcome::inconclusive(summarize(&n23, v)));
    }

    let g = rp.resultant("G = Res_lam_v(quintic, quadratic)", &["c1.quintic", "c1.quadratic"], &n16, &n17, v.lam_v)?;
    specialize_check(rp, &n18, &n16, &n17, &g)?;
    let g1 = g.partial_derivative(v.lam1);
    let gu = g.partial_derivative(v.lam_u);
    let nq = gu
        .scale_int(3)
        .sub(&g1.mul(&rp.p("p")))
        .mul(&rp.p("lam_u - lam1"));
    let e1g = rp.step("e_1(G) through the trace relation", K::Differentiate, &["c1.trace_e1"], || {
        let d = e1.apply_poly(&g)?;
        let n11 = e1.apply_poly(&cs.trace)?;
        let sol = solve_linear(&n11, v.e1_lam1)?;
        Ok(substitute_rational(&d, v.e1_lam1, &sol).numerator().clone())
    })?;
    let lhs = nq.mul(&v.x(v.w_uu1)).sub(&g1.mul(&rp.p("q*(lam_v - lam1)*w_vv1 + r*(lam_w - lam1)*w_ww1")));
    rp.assert_zero("e_1(G) is the L-relation times G_1", &e1g.normalize().sub(&lhs.normalize()));
    rp.touch("c1.v9");
    let n23c = rp.step("L-relation with L = N / G_1", K::Substitute, &["c1.quartic_l"], || {
        Ok(n23.coefficient(v.l_quot, 0).mul(&g1).add(&n23.coefficient(v.l_quot, 1).mul(&nq)))
    })?;
    rp.assume(&g1, "G_1 = dG/dlam1");

    let inner = Tower::res(Tower::leaf(n23c), Tower::leaf(n17.clone()), v.lam_v);
    let tower = Tower::res(Tower::leaf(g.clone()), inner.clone(), v.lam_u);
    finish_tower(rp, &tower, v.lam1, |rp, plan_seed| degeneracy_gcd(rp, &g, &inner, plan_seed))
}

/// Exact check of the generic resultant against `G` at sampled points.
fn specialize_check(
    rp: &mut Replay,
    n18: &MultiPoly,
    n16: &MultiPoly,
    n17: &MultiPoly,
    g: &MultiPoly,
) -> Result<()> {
    let v = rp.v;
    let mut sampler = Sampler::new(&rp.cfg.residual);
    let syms: BTreeSet<Symbol> = [v.lam1, v.lam_u].into_iter().collect();
    let deg = n16.degree_in(v.lam_v);
    let mut ok = true;
    let mut detail = Vec::new();
    for _ in 0..3 {
        let pt: HashMap<Symbol, Rat> = sampler.point(&syms, false).into_iter().collect();
        let mut vals = HashMap::new();
        for k in 0..6u16 {
            vals.insert(v.v[k as usize], n16.coefficient(v.lam_v, k).evaluate(&pt)?);
        }
        for k in 0..3u16 {
            vals.insert(v.v[6 + k as usize], n17.coefficient(v.lam_v, k).evaluate(&pt)?);
        }
        let generic = n18.evaluate(&vals)?;
        let direct = g.evaluate(&pt)?;
        // A vanishing top coefficient scales the formal resultant by a power
        // of the quadratic's leading coefficient, up to sign.
        let scale = num_traits::pow(vals[&v.v[8]].clone(), 5 - deg as usize);
        let agrees = generic == &direct * &scale || generic == -(&direct * &scale);
        ok &= agrees;
        detail.push(if agrees { "agree".to_string() } else { format!("{generic} vs {direct}") });
    }
    rp.check(
        "generic resultant specializes to G",
        K::SpecializeCheck,
        ok,
        format!("3 sampled points: {}", detail.join(", ")),
    );
    Ok(())
}

/// Runs the witness search; on exhaustion `explain` supplies a degeneracy
/// certificate.
fn finish_tower(
    rp: &mut Replay,
    tower: &Tower,
    survivor: Symbol,
    explain: impl FnOnce(&mut Replay, u64) -> Result<Option<String>>,
) -> Result<Outcome> {
    let v = rp.v;
    let plan = rp.cfg.witness;
    let t = std::time::Instant::now();
    match final_nonvanishing(tower, survivor, &plan, &v.table) {
        Ok(w) => {
            let value = if w.value.len() > 40 {
                format!("<{} digits>", w.value.trim_start_matches('-').len())
            } else {
                w.value.clone()
            };
            rp.check(
                "final resultant is nonzero",
                K::SpecializeCheck,
                true,
                format!("witness {} -> {}", point_text(&w), value),
            );
            rp.set_elapsed(t.elapsed());
            Ok(Outcome {
                verdict: Verdict::ForcesConstancy,
                final_poly: Some(format!(
                    "h(lam1) = Res chain, degree bound {}",
                    tower.generic_degree(survivor)
                )),
                witness: Some(w),
                degeneracy: None,
            })
        }
        Err(Error::ExhaustedTrials(n)) => {
            rp.info(
                "final resultant is nonzero",
                format!("no nonzero specialization in {n} trials"),
            );
            let why = explain(rp, plan.seed)?;
            let mut out = Outcome::inconclusive(format!(
                "h(lam1) = Res chain, degree bound {}",
                tower.generic_degree(survivor)
            ));
            out.degeneracy = Some(why.unwrap_or_else(|| format!("no nonzero specialization in {n} trials")));
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

fn point_text(w: &WitnessRecord) -> String {
    let parts: Vec<String> = w.point.iter().map(|(k, x)| format!("{k}={x}")).collect();
    parts.join(", ")
}

/// `gcd_λu(G, 𝒢)` at sampled `λ₁`: a shared factor makes the outer
/// resultant vanish at every point.
fn degeneracy_gcd(rp: &mut Replay, g: &MultiPoly, inner: &Tower, seed: u64) -> Result<Option<String>> {
    let v = rp.v;
    let plan = crate::oracle::SamplePlan { seed: seed ^ 0x9e37_79b9, ..rp.cfg.witness };
    let mut sampler = Sampler::new(&plan);
    let syms: BTreeSet<Symbol> = [v.lam1].into_iter().collect();
    let mut degs = Vec::new();
    for _ in 0..3 {
        let pt: HashMap<Symbol, Rat> = sampler.point(&syms, true).into_iter().collect();
        let gs = g.partial_evaluate(&pt);
        let hs = match inner.specialize(&pt) {
            Ok(h) => h,
            Err(Error::LeadingCoefficientVanished) => continue,
            Err(e) => return Err(e),
        };
        let d = gcd(&gs, &hs).degree_in(v.lam_u);
        degs.push((pt[&v.lam1].clone(), d));
    }
    let shared = !degs.is_empty() && degs.iter().all(|(_, d)| *d > 0);
    let detail: Vec<String> = degs.iter().map(|(s, d)| format!("lam1={s}: degree {d}")).collect();
    rp.check(
        "G and the L-resultant share a factor in lam_u",
        K::SpecializeCheck,
        shared,
        detail.join(", "),
    );
    Ok(shared.then(|| {
        format!(
            "identically zero: G and the L-resultant share a factor in lam_u at every sampled lam1 ({})",
            detail.join(", ")
        )
    }))
}

pub(crate) fn run_b(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let cs = build_constraints(&rp.profile, v)?;
    let ds = standard_derivations(&rp.profile, v)?;
    let e1 = e1_opaque(&ds.e1, v);
    let [cuv, cuw, cvw] = cross_premises(rp)?;
    let cyc_a = rp.premise("c1.cyclic_a", "(lam_u - lam_v)*w_wu_v - (lam_w - lam_v)*w_uw_v")?;
    let cyc_b = rp.premise("c1.cyclic_b", "(lam_w - lam_v)*w_uw_v - (lam_u - lam_w)*w_vu_w")?;
    let s = rp.p("w_vw_u*w_wv_u + w_wu_v*w_uw_v + w_vu_w*w_uv_w");
    rp.matches("c1.cyclic_sum", &s)?;
    let param = rp.step("cyclic sum on the Codazzi family", K::Substitute, &["c1.cyclic_a", "c1.cyclic_b"], || {
        let anti = [
            (v.w_uv_w, v.x(v.w_uw_v).neg()),
            (v.w_vw_u, v.x(v.w_vu_w).neg()),
            (v.w_wv_u, v.x(v.w_wu_v).neg()),
        ];
        let e = s.substitute_many(&anti);
        let sol_b = solve_linear(&cyc_b, v.w_vu_w)?;
        let e = substitute_rational(&e, v.w_vu_w, &sol_b);
        let sol_a = solve_linear(&cyc_a, v.w_uw_v)?;
        let e = crate::rational_expr::substitute_rational_expr(&e, v.w_uw_v, &sol_a)?;
        Ok(e.numerator().clone())
    })?;
    rp.assert_zero("cyclic sum vanishes", &param);
    rp.assume(&rp.p("(lam_w - lam_v)*(lam_u - lam_w)"), "distinct curvatures");

    let weights = [rp.p("p*q"), rp.p("p*r"), rp.p("q*r"), rp.p("2*p*q*r")];
    let t = rp.step("weighted sum of products", K::Combine, &["c1.cross_uv", "c1.cross_uw", "c1.cross_vw", "c1.cyclic_sum"], || {
        Ok(weights[0]
            .mul(&cuv)
            .add(&weights[1].mul(&cuw))
            .add(&weights[2].mul(&cvw))
            .add(&weights[3].mul(&s)))
    })?;
    rp.matches("c1.sum_b", &t)?;
    let affine = vec![
        (v.w_uu1, rp.p("alpha*lam_u + phi")),
        (v.w_vv1, rp.p("alpha*lam_v + phi")),
        (v.w_ww1, rp.p("alpha*lam_w + phi")),
    ];
    rp.note("subcase a1 = 0: w_ii1 = alpha*lam_i + phi for i = u, v, w");
    let d58a = rp.step("affine sum", K::Substitute, &["c1.sum_b", "l42.linear_omega"], || Ok(t.substitute_many(&affine)))?;
    rp.matches("c1.sum_b_linear", &d58a)?;
    let n13 = weighted(rp, &e1, &cs)?;
    let d58 = rp.step("affine weighted relation", K::Substitute, &["c1.weighted", "l42.linear_omega"], || {
        Ok(n13.substitute_many(&affine))
    })?;
    rp.matches("c1.weighted_b", &d58)?;
    let d59 = rp.step("e_1(lam1) on the affine family", K::Combine, &["c1.trace_e1", "l41.norm", "l41.trace"], || {
        let d12 = e1.apply_poly(&cs.trace)?.substitute_many(&affine);
        let a = v.x(v.alpha);
        let shift = v.x(v.phi).sub(&a.mul(&v.x(v.lam1)));
        Ok(d12.sub(&a.mul(&cs.norm)).sub(&shift.mul(&cs.trace)))
    })?;
    rp.matches("c1.e1_lam1_b", &d59)?;
    let rule = ds.e1.apply_poly(&v.x(v.lam1))?;
    let sol = solve_linear(&d59, v.e1_lam1)?;
    let agree = sol.as_polynomial().map(|q| q.sub(&rule)).unwrap_or_else(MultiPoly::one);
    rp.assert_zero("rule for e_1(lam1) matches", &agree);

    let n26 = rp.step("norm without lam_w", K::EliminateTrace, &["l41.norm"], || eliminate_by_trace(&cs.norm, v.lam_w, &cs))?;
    rp.matches("c1.b_quadratic", &n26)?;
    let n27 = rp.step("affine sum without lam_w", K::EliminateTrace, &["c1.sum_b_linear"], || eliminate_by_trace(&d58a, v.lam_w, &cs))?;
    rp.matches("c1.b_sum", &n27)?;
    let n28 = rp.step("weighted relation without lam_w", K::EliminateTrace, &["c1.weighted_b"], || eliminate_by_trace(&d58, v.lam_w, &cs))?;
    rp.matches("c1.b_cubic", &n28)?;

    if !rp.profile.is_concrete() {
        rp.note("the resultant chain runs at concrete multiplicities, curvature and norm");
        return Ok(Outcome::inconclusive(summarize(&n28, v)));
    }
    let a = rp.resultant("Res_lam_v(quadratic, sum)", &["c1.b_quadratic", "c1.b_sum"], &n26, &n27, v.lam_v)?;
    let b = rp.resultant("Res_lam_v(quadratic, cubic)", &["c1.b_quadratic", "c1.b_cubic"], &n26, &n28, v.lam_v)?;
    // A stage free of lam_u makes F4 a power of it; F4 and e_1(F4) then
    // share that factor and Res_alpha(F4, F5) vanishes identically.
    let power = [(&a, &b, "Res_lam_v(quadratic, sum)"), (&b, &a, "Res_lam_v(quadratic, cubic)")]
        .into_iter()
        .find(|(x, y, _)| !x.contains(v.lam_u) && x.contains(v.alpha) && y.degree_in(v.lam_u) >= 2)
        .map(|(_, y, name)| (name, y.degree_in(v.lam_u)));
    rp.check(
        "both stages involve lam_u",
        K::SpecializeCheck,
        power.is_none(),
        match power {
            Some((name, k)) => format!("{name} is free of lam_u; F4 is its {k}-th power"),
            None => "degrees in lam_u: ".to_string() + &format!("{}, {}", a.degree_in(v.lam_u), b.degree_in(v.lam_u)),
        },
    );
    if let Some((name, k)) = power {
        let mut out = Outcome::inconclusive(format!("F4 = ({name})^{k}"));
        out.degeneracy = Some(format!(
            "identically zero: {name} is free of lam_u, so F4 is its {k}-th power, F4 and e_1(F4) \
             share that factor and Res_alpha(F4, F5) = 0"
        ));
        return Ok(out);
    }
    let f4 = rp.resultant("F4 = Res_lam_u", &[], &a, &b, v.lam_u)?;
    let d = ds.e1.renamed("e1");
    let f5 = rp.step("F5 = e_1(F4)", K::Differentiate, &[], || d.apply_poly(&f4))?;
    let f6 = rp.step("F6 = e_1(F5)", K::Differentiate, &[], || d.apply_poly(&f5))?;
    let origin: HashMap<Symbol, Rat> = [(v.alpha, rat(0)), (v.phi, rat(0))].into_iter().collect();
    let at0: Vec<bool> = [&f4, &f5, &f6].iter().map(|f| f.partial_evaluate(&origin).is_zero()).collect();
    let all0 = at0.iter().all(|z| *z);
    rp.check(
        "F4, F5, F6 at alpha = phi = 0",
        K::SpecializeCheck,
        !all0,
        format!("vanish identically in lam1: {at0:?}"),
    );
    let tower = Tower::res(
        Tower::res(Tower::leaf(f4.clone()), Tower::leaf(f5), v.alpha),
        Tower::res(Tower::leaf(f4), Tower::leaf(f6), v.alpha),
        v.phi,
    );
    if all0 {
        let mut out = Outcome::inconclusive(format!(
            "h3(lam1) = Res_phi(h1, h2), degree bound {}",
            tower.generic_degree(v.lam1)
        ));
        out.degeneracy = Some(
            "identically zero: F4, F5, F6 vanish at alpha = phi = 0, so phi divides both \
             Res_alpha(F4, F5) and Res_alpha(F4, F6) and their resultant in phi is 0"
                .to_string(),
        );
        return Ok(out);
    }
    finish_tower(rp, &tower, v.lam1, |_, _| Ok(None))
}
