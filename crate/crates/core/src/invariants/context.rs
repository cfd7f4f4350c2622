use std::collections::BTreeSet;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::{q, Monomial, Poly, RatFn};
use crate::root::{positive_roots, Root};
use crate::weyl::{partial_products, Permutation};

/// The sets attached to the `i`-th step `ξ_i = (s,t)` of the extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepContext {
    pub index: usize,
    pub xi: Root,
    pub lambda_i: BTreeSet<Root>,
    pub lambda_gt_i: BTreeSet<Root>,
    pub t0: BTreeSet<Root>,
    pub t_plus: BTreeSet<Root>,
    pub t_minus: BTreeSet<Root>,
    pub s_plus: BTreeSet<Root>,
    pub s_minus: BTreeSet<Root>,
}

/// One term `c · ∏ x_v · x_ξ^{-k}` of a Θ image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ThetaTerm {
    pub coeff: i64,
    pub vars: Vec<Root>,
    pub xi_inv: u32,
}

impl StepContext {
    pub(crate) fn build(
        n: usize,
        xi: Root,
        index: usize,
        prev: &Permutation,
        cur: &Permutation,
    ) -> Self {
        let t = xi.col;
        let s = xi.row;
        let roots = positive_roots(n);
        let lam = |w: &Permutation| -> BTreeSet<Root> {
            roots
                .iter()
                .filter(|r| r.col >= t && w.act_on_root(r).is_positive())
                .copied()
                .collect()
        };
        let lambda_i = lam(prev);
        let lambda_gt_i = lam(cur);
        let (mut t0, mut t_plus, mut t_minus) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for b in t + 1..s {
            let beta = Root::new(s, b);
            let alpha = Root::new(b, t);
            if !lambda_i.contains(&beta) {
                t_minus.insert(beta);
            } else if lambda_i.contains(&alpha) {
                t_plus.insert(beta);
            } else {
                t0.insert(beta);
            }
        }
        let comp = |set: &BTreeSet<Root>| set.iter().map(|b| Root::new(b.col, t)).collect();
        let s_plus = comp(&t_plus);
        let s_minus = comp(&t_minus);
        StepContext {
            index,
            xi,
            lambda_i,
            lambda_gt_i,
            t0,
            t_plus,
            t_minus,
            s_plus,
            s_minus,
        }
    }

    /// `T = {(s,b) : t < b < s}`.
    pub fn t_set(&self) -> BTreeSet<Root> {
        (self.xi.col + 1..self.xi.row)
            .map(|b| Root::new(self.xi.row, b))
            .collect()
    }

    /// Pairs `(β_k, α_k = ξ − β_k)` over `T_+ ∪ T_−`, `≻`-descending in `β`.
    pub fn pairs(&self) -> Vec<(Root, Root)> {
        self.t_plus
            .union(&self.t_minus)
            .map(|b| (*b, Root::new(b.col, self.xi.col)))
            .collect()
    }

    /// `x_η` is left unchanged by the step: `η ∈ S_−`, or `η = (a,b)` in the
    /// first case with `(s,b) ∈ T_−`.
    pub fn is_second_type(&self, eta: &Root) -> bool {
        let (s, t) = (self.xi.row, self.xi.col);
        self.s_minus.contains(eta)
            || (eta.row < s && eta.col > t && self.t_minus.contains(&Root::new(s, eta.col)))
    }

    pub(crate) fn theta_terms(&self, eta: &Root) -> Result<Vec<ThetaTerm>> {
        if !self.lambda_gt_i.contains(eta) {
            return Err(Error::OutsideDomain {
                root: *eta,
                step: self.index,
            });
        }
        let (s, t) = (self.xi.row, self.xi.col);
        let (a, b) = (eta.row, eta.col);
        let mut out = vec![ThetaTerm {
            coeff: 1,
            vars: vec![*eta],
            xi_inv: 0,
        }];
        if self.s_minus.contains(eta) {
            return Ok(out);
        }
        if a < s && b > t {
            let sb = Root::new(s, b);
            let at = Root::new(a, t);
            // no live pair through η: either (s,b) ∈ T_− or the pair (s,a) is absent
            if !self.t_minus.contains(&sb) && self.lambda_i.contains(&at) {
                out.push(ThetaTerm {
                    coeff: -1,
                    vars: vec![at, sb],
                    xi_inv: 1,
                });
            }
        } else if b == s && a > s {
            for (beta, alpha) in self.pairs() {
                let top = Root::new(a, beta.col);
                if self.lambda_i.contains(&top) {
                    out.push(ThetaTerm {
                        coeff: 1,
                        vars: vec![top, alpha],
                        xi_inv: 1,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `Θ_i(x_η)` as a rational function in the coordinates of `Λ_i`.
    pub fn theta_image(&self, eta: &Root) -> Result<RatFn> {
        let x_xi = Poly::var(self.xi);
        let mut out = RatFn::zero();
        for t in self.theta_terms(eta)? {
            let num = Poly::term(
                Monomial::from_powers(t.vars.iter().map(|v| (*v, 1))),
                q(t.coeff),
            );
            out = &out + &RatFn::new(num, x_xi.pow(t.xi_inv))?;
        }
        Ok(out)
    }

    /// Agreement of `Λ_i`, `Λ_{>i}` with the diagram states around step `i`.
    pub fn agrees_with(&self, dg: &Diagram) -> bool {
        let t = self.xi.col;
        dg.cells().keys().filter(|r| r.col >= t).all(|r| {
            let before = dg.symbol_after(r, self.index - 1).unwrap().is_open();
            let after = dg.symbol_after(r, self.index).unwrap().is_open();
            before == self.lambda_i.contains(r) && after == self.lambda_gt_i.contains(r)
        })
    }
}

/// All step contexts for the extension `C(D)` read off a diagram.
pub fn step_contexts(dg: &Diagram) -> Vec<StepContext> {
    let c = dg.extension();
    let ws = partial_products(dg.n(), &c);
    let ctxs: Vec<StepContext> = c
        .iter()
        .enumerate()
        .map(|(k, xi)| StepContext::build(dg.n(), *xi, k + 1, &ws[k], &ws[k + 1]))
        .collect();
    debug_assert!(ctxs.iter().all(|c| c.agrees_with(dg)));
    ctxs
}
