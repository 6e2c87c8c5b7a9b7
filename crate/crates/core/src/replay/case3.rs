//! Two distinct curvatures, and the scalar curvature of the resulting
//! hypersurface.

use super::case2::constancy;
use super::context::Replay;
use super::run::Outcome;
use super::StepKind as K;
use crate::elimination::solve_linear;
use crate::error::Result;
use crate::poly::{rat, MultiPoly};
use crate::rational_expr::substitute_rational;
use crate::scenario::{
    build_constraints, eliminate_by_trace, lam1_in_terms_of_h, scalar_curvature, scalar_curvature_poly,
};

pub(crate) fn run(rp: &mut Replay) -> Result<Outcome> {
    let v = rp.v;
    let cs = build_constraints(&rp.profile, v)?;
    rp.matches("c3.trace", &cs.trace)?;
    rp.matches("c3.norm", &cs.norm)?;
    rp.assume(&rp.p("n - 1"), "multiplicity of lam");
    let fin = rp.step("norm without lam", K::EliminateTrace, &["c3.trace", "c3.norm"], || {
        eliminate_by_trace(&cs.norm, v.lam, &cs)
    })?;
    let expect = rp.p("(n + 8)*lam1^2 - (n - 1)*beta");
    rp.check(
        "quadratic in lam1",
        K::AssertZero,
        fin.normalize() == expect.normalize(),
        format!("{} ~ (n + 8)*lam1^2 - (n - 1)*beta", fin.to_text(&v.table)),
    );
    scalar(rp)?;
    constancy(rp, &fin)
}

/// `ρ` from the Gauss equation, with `|A|² = β` and `nH = λ₁ + (n−1)λ`.
fn scalar(rp: &mut Replay) -> Result<()> {
    let v = rp.v;
    let cs = build_constraints(&rp.profile, v)?;
    let gauss = rp.p("rho - n*(n - 1)*c - (lam1 + (n - 1)*lam)^2 + lam1^2 + (n - 1)*lam^2");
    let sol = solve_linear(&cs.trace, v.lam)?;
    let h = lam1_in_terms_of_h(&rp.profile, v);
    let rho = rp.clear("scalar curvature in H", &["c3.trace", "c3.norm"], || {
        let e = gauss.sub(&cs.norm);
        let e = substitute_rational(&e, v.lam, &sol);
        crate::rational_expr::substitute_rational_expr(&e, v.lam1, &h.into())
    })?;
    rp.matches("curv.scalar", &rho)?;
    let shipped = MultiPoly::var(v.rho).sub(&rp.sp(&scalar_curvature_poly(v)));
    rp.check(
        "scalar_curvature keeps the displayed sign",
        K::AssertZero,
        rp.fixtures.get("curv.scalar")?.poly.normalize() == v.poly("rho - n*(n - 1)*c - n^2*H^2 - beta").normalize()
            && scalar_curvature(4, &rat(1), &rat(0), &rat(5)) == rat(17),
        format!("rho - ({}) as displayed", shipped.neg().add(&MultiPoly::var(v.rho)).to_text(&v.table)),
    );
    rp.note("scalar curvature: the Gauss sum carries -beta; the displayed formula with +beta is kept by scalar_curvature");
    Ok(())
}
