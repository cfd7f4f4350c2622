//! Recomputes each step map from the series `Θ_p` of a canonical pair,
//! applied once per pair `(p_k, q_k) = (x_{β_k}, x_{α_k} / x_ξ)`.

use std::collections::BTreeSet;

use super::StepContext;
use crate::diagram::build_diagram;
use crate::error::Result;
use crate::poly::{theta_generic, PoissonBracket, Poly, RatFn};
use crate::root::{BasicSubset, Root};

#[derive(Debug, Clone, Default)]
pub struct CrossCheckReport {
    pub roots_checked: usize,
    pub mismatches: Vec<(usize, Root, String)>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The bracket of `Λ_i ∪ T_−` modulo the coordinates of column `t` below `ξ`.
fn step_bracket(ctx: &StepContext) -> PoissonBracket {
    let (s, t) = (ctx.xi.row, ctx.xi.col);
    let support: BTreeSet<Root> = ctx
        .lambda_i
        .union(&ctx.t_minus)
        .filter(|r| !(r.col == t && r.row > s))
        .copied()
        .collect();
    PoissonBracket::restricted(support)
}

/// `Σ_{i,j} P^i (−Q)^j / (i! j!) ad_Q^i ad_P^j (a)`: the projection along one
/// canonical pair, written as two series maps.
fn project(br: &PoissonBracket, p: &RatFn, qq: &RatFn, a: &RatFn) -> Result<RatFn> {
    let inner = theta_generic(br, p, qq, a)?;
    theta_generic(br, qq, &-p, &inner)
}

pub(crate) fn generic_image(ctx: &StepContext, eta: &Root) -> Result<RatFn> {
    let br = step_bracket(ctx);
    let x_xi = Poly::var(ctx.xi);
    let mut a = RatFn::var(*eta);
    // β_1 ≺ β_2 ≺ …: the smallest pair is split off first
    for (beta, alpha) in ctx.pairs().into_iter().rev() {
        let p = RatFn::var(beta);
        let qq = RatFn::new(Poly::var(alpha), x_xi.clone())?;
        a = project(&br, &p, &qq, &a)?;
    }
    Ok(a)
}

/// Compares every step image with the series recomputation. On roots of the
/// first type the two agree. On `S_−` the series vanishes (`x_α = q x_ξ` lies
/// in its kernel); on the remaining second-type roots it leaves `Λ_i`.
pub fn theta_crosscheck(d: &BasicSubset) -> Result<CrossCheckReport> {
    let mut report = CrossCheckReport::default();
    for ctx in super::step_contexts(&build_diagram(d)) {
        for eta in &ctx.lambda_gt_i {
            report.roots_checked += 1;
            let generic = generic_image(&ctx, eta)?;
            let ok = if ctx.s_minus.contains(eta) {
                generic.is_zero()
            } else if ctx.is_second_type(eta) {
                ctx.theta_image(eta)? == RatFn::var(*eta)
                    && generic.variables().iter().any(|v| ctx.t_minus.contains(v))
            } else {
                generic == ctx.theta_image(eta)?
            };
            if !ok {
                report
                    .mismatches
                    .push((ctx.index, *eta, generic.to_string()));
            }
        }
    }
    Ok(report)
}
