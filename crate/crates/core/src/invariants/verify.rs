use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{cell_relations, coadjoint_move, compute_invariants, left_right_move, x_d_phi};
use super::{CellRelations, InvariantSet, UnitriMatrix};
use crate::error::{Error, Result};
use crate::poly::{q, Point, PoissonBracket, Poly, Q};
use crate::root::{positive_roots, BasicSubset, Root};

pub const RESAMPLE_BUDGET: usize = 100;

/// A point `X = low(g · X_{D,φ} · h)` of the basic cell.
#[derive(Debug, Clone)]
pub struct CellSample {
    pub phi: BTreeMap<Root, Q>,
    pub base: Point,
    pub x: Point,
    pub attempts: usize,
}

fn random_phi<R: Rng>(d: &BasicSubset, rng: &mut R) -> BTreeMap<Root, Q> {
    d.roots()
        .iter()
        .map(|r| {
            let v = loop {
                let v: i64 = rng.gen_range(-3..=3);
                if v != 0 {
                    break v;
                }
            };
            (*r, q(v))
        })
        .collect()
}

/// Samples a cell point at which every generator and every `P_ξ`, `ξ ∈ D`,
/// is nonzero.
pub fn sample_cell_point<R: Rng>(
    inv: &InvariantSet,
    rel: &CellRelations,
    rng: &mut R,
) -> Result<CellSample> {
    sample(inv, rel, None, rng)
}

/// As [`sample_cell_point`], on the variety `V_{D,φ}` of a fixed `φ`.
pub fn sample_on_variety<R: Rng>(
    inv: &InvariantSet,
    rel: &CellRelations,
    phi: &BTreeMap<Root, Q>,
    rng: &mut R,
) -> Result<CellSample> {
    sample(inv, rel, Some(phi), rng)
}

fn sample<R: Rng>(
    inv: &InvariantSet,
    rel: &CellRelations,
    fixed: Option<&BTreeMap<Root, Q>>,
    rng: &mut R,
) -> Result<CellSample> {
    let d = &inv.d;
    let n = d.n();
    for attempt in 1..=RESAMPLE_BUDGET {
        let phi = fixed.cloned().unwrap_or_else(|| random_phi(d, rng));
        let base = x_d_phi(d, &phi)?;
        let g = UnitriMatrix::random(n, rng);
        let h = UnitriMatrix::random(n, rng);
        let x = left_right_move(&g, &h, &base);
        let generic = inv.generators.values().all(|f| !f.evaluate(&x).is_zero())
            && rel
                .nonvanishing
                .iter()
                .all(|(_, p)| !p.evaluate(&x).is_zero());
        if generic {
            return Ok(CellSample {
                phi,
                base,
                x,
                attempts: attempt,
            });
        }
    }
    Err(Error::ResamplingExhausted(RESAMPLE_BUDGET))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub check: &'static str,
    pub root: Option<Root>,
    pub point: Point,
}

impl TrialFailure {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "trial": self.trial,
            "check": self.check,
            "root": self.root,
            "point": self.point.to_json(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub d: BasicSubset,
    pub trials: usize,
    pub resamples: usize,
    pub failures: Vec<TrialFailure>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "trials": self.trials,
            "resamples": self.resamples,
            "failures": self.failures.iter().map(TrialFailure::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Random stream of trial `trial` under `seed`.
pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Exact invariance checks of `F_ξ` on sampled points of the basic cell.
pub fn verify_invariance(d: &BasicSubset, trials: usize, seed: u64) -> Result<InvarianceReport> {
    verify_with(&compute_invariants(d)?, None, trials, seed)
}

/// The same checks with every sample drawn from `V_{D,φ}`.
pub fn verify_on_variety(
    d: &BasicSubset,
    phi: &BTreeMap<Root, Q>,
    trials: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    x_d_phi(d, phi)?;
    verify_with(&compute_invariants(d)?, Some(phi), trials, seed)
}

fn verify_with(
    inv: &InvariantSet,
    phi: Option<&BTreeMap<Root, Q>>,
    trials: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let d = &inv.d;
    let rel = cell_relations(d);
    let br = PoissonBracket::full();
    let brackets: Vec<(Root, Poly)> = inv
        .generators
        .iter()
        .flat_map(|(xi, f)| {
            positive_roots(d.n())
                .into_iter()
                .map(|g| (*xi, br.poly(f, &Poly::var(g))))
                .collect::<Vec<_>>()
        })
        .filter(|(_, b)| !b.is_zero())
        .collect();

    let mut failures = Vec::new();
    let mut resamples = 0;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let sample = sample(inv, &rel, phi, &mut rng)?;
        resamples += sample.attempts - 1;
        let x = &sample.x;
        let y = coadjoint_move(&UnitriMatrix::random(d.n(), &mut rng), x);
        let mut fail = |check: &'static str, root: Option<Root>, point: &Point| {
            failures.push(TrialFailure {
                trial,
                check,
                root,
                point: point.clone(),
            });
        };
        for (g, p) in &rel.vanishing {
            if !p.evaluate(x).is_zero() {
                fail("cell_relation", Some(*g), x);
            }
            if !p.evaluate(&y).is_zero() {
                fail("cell_relation_after_move", Some(*g), &y);
            }
        }
        for (xi, p) in &rel.nonvanishing {
            if p.evaluate(x) != p.evaluate(&sample.base) {
                fail("minor_on_variety", Some(*xi), x);
            }
            if p.evaluate(&y) != p.evaluate(x) {
                fail("minor_invariance", Some(*xi), &y);
            }
        }
        for (xi, f) in &inv.generators {
            let fx = f.evaluate(x);
            if d.contains(xi) && fx != f.evaluate(&sample.base) {
                fail("generator_on_variety", Some(*xi), x);
            }
            if f.evaluate(&y) != fx {
                fail("invariance", Some(*xi), &y);
            }
        }
        for (xi, b) in &brackets {
            if !b.evaluate(x).is_zero() {
                fail("casimir", Some(*xi), x);
            }
        }
    }
    Ok(InvarianceReport {
        d: d.clone(),
        trials,
        resamples,
        failures,
    })
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in rest.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] / &pivot[c];
            for (dst, src) in row[c..].iter_mut().zip(&pivot[c..]) {
                *dst -= src * &f;
            }
        }
        r += 1;
    }
    r
}

fn jacobian(polys: &[&Poly], x: &Point) -> Vec<Vec<Q>> {
    let vars = positive_roots(x.n());
    polys
        .iter()
        .map(|f| vars.iter().map(|v| f.derivative(v).evaluate(x)).collect())
        .collect()
}

/// Rank of `∂F_ξ / ∂x_γ` at `X` over all generators.
pub fn jacobian_rank(inv: &InvariantSet, x: &Point) -> usize {
    let polys: Vec<&Poly> = inv.generators.values().collect();
    rank(jacobian(&polys, x))
}

/// Rank of the differentials of `polys` on the subvariety cut out by
/// `constraints`: `rank[C; P] − rank[C]` at `X`.
pub fn jacobian_rank_on(polys: &[&Poly], constraints: &[&Poly], x: &Point) -> usize {
    let c = jacobian(constraints, x);
    let base = rank(c.clone());
    let mut all = c;
    all.extend(jacobian(polys, x));
    rank(all) - base
}

/// Jacobian ranks at one sampled point, with the values they should take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub expected: usize,
    pub restricted_rank: usize,
    pub restricted_expected: usize,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected && self.restricted_rank == self.restricted_expected
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "rank": self.rank,
            "expected": self.expected,
            "restricted_rank": self.restricted_rank,
            "restricted_expected": self.restricted_expected,
        })
    }
}

/// Rank of all generators on the cell and of `F_ξ`, `ξ ∈ C(D) \ D`, on the
/// variety through the sampled point.
pub fn independence_ranks(
    inv: &InvariantSet,
    phi: Option<&BTreeMap<Root, Q>>,
    seed: u64,
) -> Result<RankReport> {
    let rel = cell_relations(&inv.d);
    let s = sample(inv, &rel, phi, &mut trial_rng(seed, 0))?;
    let mut variety: Vec<&Poly> = rel.vanishing.iter().map(|(_, p)| p).collect();
    variety.extend(rel.nonvanishing.iter().map(|(_, p)| p));
    let rest: Vec<&Poly> = inv
        .variety_generators()
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let c = inv.generators.len();
    Ok(RankReport {
        rank: jacobian_rank(inv, &s.x),
        expected: c,
        restricted_rank: jacobian_rank_on(&rest, &variety, &s.x),
        restricted_expected: c - inv.d.len(),
    })
}
