//! Invariants `F_ξ`, `ξ ∈ C(D)`, of the coadjoint action on a basic cell,
//! built by composing the step maps `Θ_1 ∘ ⋯ ∘ Θ_{i−1}`.

mod action;
mod cells;
mod context;
mod crosscheck;
mod lfrac;
mod verify;

use std::collections::{BTreeMap, HashMap};

use serde_json::json;

use crate::diagram::build_diagram;
use crate::error::{Error, Result};
use crate::poly::{q, Poly, RatFn};
use crate::root::{classify, BasicSubset, Root};

pub use action::{coadjoint_move, left_right_move, UnitriMatrix};
pub use cells::{cell_relations, parse_phi, x_d_phi, CellRelations};
pub use context::{step_contexts, StepContext};
pub use crosscheck::{theta_crosscheck, CrossCheckReport};
pub use verify::{
    independence_ranks, jacobian_rank, jacobian_rank_on, sample_cell_point, sample_on_variety,
    verify_invariance, verify_on_variety, CellSample, InvarianceReport, RankReport, TrialFailure,
    RESAMPLE_BUDGET,
};

use lfrac::{Atoms, LFrac};

/// `StepContext` of step `i` (1-based).
pub fn step_context(d: &BasicSubset, i: usize) -> Result<StepContext> {
    let ctxs = step_contexts(&build_diagram(d));
    let len = ctxs.len();
    if i == 0 || i > len {
        return Err(Error::StepOutOfRange { step: i, len });
    }
    Ok(ctxs.into_iter().nth(i - 1).unwrap())
}

#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub d: BasicSubset,
    pub extension: Vec<Root>,
    /// Canonical polynomial representative of each `F_ξ`, `≻`-descending.
    pub generators: BTreeMap<Root, Poly>,
    /// The composed image `Θ_1 ∘ ⋯ ∘ Θ_{i−1}(x_η)` before normalization,
    /// for every `η ∈ C(D) ∪ M(D)`.
    pub raw: BTreeMap<Root, RatFn>,
    /// `x_η := NF(x_η)` for `η ∈ M(D)`, in the order they were imposed.
    pub substitutions: Vec<(Root, RatFn)>,
}

impl InvariantSet {
    pub fn generator(&self, xi: &Root) -> Option<&Poly> {
        self.generators.get(xi)
    }

    /// `F_ξ` for `ξ ∈ C(D) \ D`.
    pub fn variety_generators(&self) -> Vec<(Root, &Poly)> {
        self.generators
            .iter()
            .filter(|(r, _)| !self.d.contains(r))
            .map(|(r, p)| (*r, p))
            .collect()
    }

    /// Applies the recorded substitutions, eliminating every `x_η`, `η ∈ M(D)`.
    pub fn reduce(&self, f: &RatFn) -> Result<RatFn> {
        let subs: BTreeMap<Root, RatFn> = self.substitutions.iter().cloned().collect();
        f.substitute_with(|r| subs.get(r).cloned())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "D": self.d,
            "extension": self.extension,
            "generators": self
                .generators
                .iter()
                .map(|(r, p)| (r.to_string(), json!(p.to_string())))
                .collect::<serde_json::Map<_, _>>(),
        })
    }
}

struct Engine<'a> {
    ctxs: &'a [StepContext],
    atoms: Atoms,
    /// `F_{ξ_j}` as a fraction, index `j − 1`.
    f_xi: Vec<LFrac>,
    inv_f_xi: HashMap<usize, LFrac>,
    nf: BTreeMap<Root, LFrac>,
    memo: HashMap<(usize, Root), LFrac>,
}

impl Engine<'_> {
    /// `G_j(γ) = Θ_1 ∘ ⋯ ∘ Θ_j(x_γ)` modulo the substitutions recorded so far.
    fn g(&mut self, j: usize, gamma: Root) -> Result<LFrac> {
        if j == 0 {
            return Ok(self
                .nf
                .get(&gamma)
                .cloned()
                .unwrap_or_else(|| LFrac::poly(Poly::var(gamma))));
        }
        if let Some(v) = self.memo.get(&(j, gamma)) {
            return Ok(v.clone());
        }
        let terms = self.ctxs[j - 1].theta_terms(&gamma)?;
        let mut out = LFrac::poly(Poly::zero());
        for t in terms {
            let mut term = LFrac::poly(Poly::int(t.coeff));
            for v in &t.vars {
                term = term.mul(&self.g(j - 1, *v)?);
            }
            if t.xi_inv > 0 {
                let inv = self.inv_f(j)?;
                for _ in 0..t.xi_inv {
                    term = term.mul(&inv);
                }
            }
            out = out.add(&term, &self.atoms);
        }
        out.cancel(&self.atoms);
        self.memo.insert((j, gamma), out.clone());
        Ok(out)
    }

    fn inv_f(&mut self, j: usize) -> Result<LFrac> {
        if let Some(v) = self.inv_f_xi.get(&j) {
            return Ok(v.clone());
        }
        let inv = self.f_xi[j - 1].inverse(&mut self.atoms)?;
        self.inv_f_xi.insert(j, inv.clone());
        Ok(inv)
    }
}

/// Computes `F_η` for every `η ∈ C(D) ∪ M(D)` in `≻`-descending order,
/// imposing `F_η = 0` for `η ∈ M(D)` as a substitution for `x_η`.
pub fn compute_invariants(d: &BasicSubset) -> Result<InvariantSet> {
    let dg = build_diagram(d);
    let extension = dg.extension();
    let ctxs = step_contexts(&dg);
    let m_set = classify(d).m_set;
    let mut engine = Engine {
        ctxs: &ctxs,
        atoms: Atoms::default(),
        f_xi: Vec::new(),
        inv_f_xi: HashMap::new(),
        nf: BTreeMap::new(),
        memo: HashMap::new(),
    };
    let mut order: Vec<Root> = extension.iter().chain(&m_set).copied().collect();
    order.sort();

    let mut generators = BTreeMap::new();
    let mut raw = BTreeMap::new();
    let mut substitutions = Vec::new();
    for eta in order {
        let level = extension
            .iter()
            .filter(|xi| xi.cmp_succ(&eta).is_gt())
            .count();
        let f = engine.g(level, eta)?;
        raw.insert(eta, f.to_ratfn(&engine.atoms));
        if m_set.contains(&eta) {
            let rest = f.add(&LFrac::poly(-Poly::var(eta)), &engine.atoms);
            if rest.num.contains_var(&eta) {
                return Err(Error::NotTriangular(eta));
            }
            let nf = rest.scale(&q(-1));
            substitutions.push((eta, nf.to_ratfn(&engine.atoms)));
            engine.nf.insert(eta, nf);
            engine.memo.retain(|(_, r), _| *r != eta);
        } else {
            generators.insert(eta, f.num.primitive());
            engine.f_xi.push(f);
        }
    }
    Ok(InvariantSet {
        d: d.clone(),
        extension,
        generators,
        raw,
        substitutions,
    })
}
