//! Randomized lower-bound search for the n-th Von Neumann-Jordan and James
//! constants: multi-start hill climbing over tuples of unit-normalized
//! sparse sequences supported in a fixed box. Any evaluated objective value
//! is a valid lower bound for the corresponding constant.
//!
//! Reproducibility contract: every restart owns an independent ChaCha
//! stream derived from `(seed, restart index)` and a fixed evaluation
//! budget slice, and the final reduction takes the maximum with ties going
//! to the lower restart index — so the outcome is identical for any degree
//! of parallelism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constants::{james_min, nj_ratio};
use crate::error::{Error, Result};
use crate::norm::morrey_norm;
use crate::types::{LatticePoint, Mode, Scalar, Sequence, SpaceParams};
use crate::witness::build_witness;

/// Which constant the search lower-bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchKind {
    Nj,
    James,
}

impl std::fmt::Display for SearchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchKind::Nj => write!(f, "nj"),
            SearchKind::James => write!(f, "james"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub kind: SearchKind,
    pub n: u32,
    /// Side length of the sampling box and maximum support size per member.
    pub support_cap: usize,
    /// Total number of objective evaluations across all restarts.
    pub budget: u64,
    pub seed: u64,
    /// Start restart 0 from the witness family instead of a random tuple;
    /// requires `p < q`.
    pub include_witness: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best_value: f64,
    /// Unit-normalized members attaining `best_value`.
    pub best_tuple: Vec<Sequence>,
    pub evaluations: u64,
    pub restarts: u32,
}

const RESTART_EVALS: u64 = 250;
const STAGNATION_LIMIT: u32 = 50;
const PERTURBATION_STEPS: [f64; 4] = [1.0, 0.5, 0.25, 0.125];

/// Runs the multi-start search and returns the best tuple found with its
/// objective value. Deterministic for fixed configuration.
pub fn search_lower_bound(params: &SpaceParams, search: &SearchParams) -> Result<SearchOutcome> {
    if search.budget < 1 {
        return Err(Error::InvalidParams("budget must be at least 1".into()));
    }
    if search.support_cap < 1 {
        return Err(Error::InvalidParams(
            "support cap must be at least 1".into(),
        ));
    }
    if search.n < 2 || search.n > 12 {
        return Err(Error::InvalidParams(format!(
            "search needs n in [2, 12], got {}",
            search.n
        )));
    }
    let fparams = params.with_mode(Mode::Float)?;

    let witness_start: Option<Vec<Sequence>> = if search.include_witness {
        if !fparams.strictly_included() {
            return Err(Error::InvalidParams("witness start requires p < q".into()));
        }
        let family = build_witness(search.n, &fparams, None)?;
        let members = family
            .into_members()
            .into_iter()
            .map(|x| normalize(&x, &fparams))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidParams("witness normalization failed".into()))?;
        Some(members)
    } else {
        None
    };

    let full_restarts = search.budget / RESTART_EVALS;
    let remainder = search.budget % RESTART_EVALS;
    let mut plan: Vec<(u32, u64)> = (0..full_restarts)
        .map(|r| (r as u32, RESTART_EVALS))
        .collect();
    if remainder > 0 {
        plan.push((full_restarts as u32, remainder));
    }

    let results: Vec<RestartResult> = plan
        .par_iter()
        .map(|&(index, evals)| run_restart(&fparams, search, witness_start.as_ref(), index, evals))
        .collect();

    let mut best: Option<(f64, Vec<Sequence>, u32)> = None;
    let mut evaluations = 0u64;
    for r in &results {
        evaluations += r.evals_used;
        if let (Some(value), Some(tuple)) = (r.best_value, &r.best_tuple) {
            let take = match &best {
                None => true,
                Some((bv, _, bi)) => value > *bv || (value == *bv && r.index < *bi),
            };
            if take {
                best = Some((value, tuple.clone(), r.index));
            }
        }
    }
    let (best_value, best_tuple, _) =
        best.ok_or_else(|| Error::InvalidParams("search produced no valid evaluation".into()))?;
    Ok(SearchOutcome {
        best_value,
        best_tuple,
        evaluations,
        restarts: plan.len() as u32,
    })
}

struct RestartResult {
    index: u32,
    best_value: Option<f64>,
    best_tuple: Option<Vec<Sequence>>,
    evals_used: u64,
}

fn run_restart(
    fparams: &SpaceParams,
    search: &SearchParams,
    witness_start: Option<&Vec<Sequence>>,
    index: u32,
    eval_budget: u64,
) -> RestartResult {
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    rng.set_stream(u64::from(index) + 1);

    let mut best_value: Option<f64> = None;
    let mut best_tuple: Option<Vec<Sequence>> = None;
    let mut evals = 0u64;

    let mut current: Option<(Vec<Sequence>, f64)> = None;
    let mut stagnation = 0u32;

    while evals < eval_budget {
        match current.take() {
            None => {
                // fresh start: the witness tuple on restart 0, else random
                let tuple = match (index, witness_start) {
                    (0, Some(w)) if evals == 0 => Some(w.clone()),
                    _ => sample_tuple(&mut rng, fparams, search),
                };
                let Some(tuple) = tuple else { continue };
                evals += 1;
                if let Some(value) = evaluate(&tuple, fparams, search.kind) {
                    track_best(&mut best_value, &mut best_tuple, value, &tuple);
                    current = Some((tuple, value));
                    stagnation = 0;
                }
            }
            Some((tuple, value)) => {
                match propose(&mut rng, &tuple, fparams, search) {
                    None => {
                        current = Some((tuple, value));
                        stagnation += 1;
                    }
                    Some(candidate) => {
                        evals += 1;
                        match evaluate(&candidate, fparams, search.kind) {
                            Some(cand_value) if cand_value > value => {
                                track_best(
                                    &mut best_value,
                                    &mut best_tuple,
                                    cand_value,
                                    &candidate,
                                );
                                current = Some((candidate, cand_value));
                                stagnation = 0;
                            }
                            _ => {
                                current = Some((tuple, value));
                                stagnation += 1;
                            }
                        }
                    }
                }
                if stagnation >= STAGNATION_LIMIT {
                    current = None;
                    stagnation = 0;
                }
            }
        }
    }

    RestartResult {
        index,
        best_value,
        best_tuple,
        evals_used: evals,
    }
}

fn track_best(
    best_value: &mut Option<f64>,
    best_tuple: &mut Option<Vec<Sequence>>,
    value: f64,
    tuple: &[Sequence],
) {
    if best_value.is_none_or(|bv| value > bv) {
        *best_value = Some(value);
        *best_tuple = Some(tuple.to_vec());
    }
}

fn evaluate(tuple: &[Sequence], fparams: &SpaceParams, kind: SearchKind) -> Option<f64> {
    let scalar = match kind {
        SearchKind::Nj => nj_ratio(tuple, fparams).ok()?,
        SearchKind::James => james_min(tuple, fparams).ok()?,
    };
    let value = scalar.to_f64();
    value.is_finite().then_some(value)
}

fn normalize(x: &Sequence, fparams: &SpaceParams) -> Option<Sequence> {
    let norm = morrey_norm(x, fparams).ok()?.value();
    if !(norm.is_finite() && norm > 0.0) {
        return None;
    }
    Some(x.scaled(&Scalar::Float(1.0 / norm)))
}

fn sample_tuple(
    rng: &mut ChaCha8Rng,
    fparams: &SpaceParams,
    search: &SearchParams,
) -> Option<Vec<Sequence>> {
    let mut members = Vec::with_capacity(search.n as usize);
    for _ in 0..search.n {
        let member = sample_member(rng, fparams, search.support_cap)?;
        members.push(normalize(&member, fparams)?);
    }
    Some(members)
}

fn sample_member(rng: &mut ChaCha8Rng, fparams: &SpaceParams, cap: usize) -> Option<Sequence> {
    let d = fparams.d();
    let side = cap as i64;
    let volume = (cap as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let count = rng.gen_range(1..=cap.min(volume.min(cap as u128) as usize));
    let mut points = std::collections::BTreeSet::new();
    while points.len() < count {
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(0..side)).collect();
        points.insert(coords);
    }
    let entries = points
        .into_iter()
        .map(|coords| (LatticePoint::new(coords), Scalar::Float(sample_entry(rng))));
    // entries are nonzero by construction
    Sequence::from_entries(d, entries).ok()
}

fn sample_entry(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        // sign patterns are where the extremal tuples live
        if rng.gen_bool(0.5) {
            1.0
        } else {
            -1.0
        }
    } else {
        loop {
            let v: f64 = rng.gen_range(-1.0..1.0);
            if v.abs() >= 1.0 / 16.0 {
                return v;
            }
        }
    }
}

/// One hill-climbing move: bump a single coordinate of a single member by a
/// signed step and renormalize that member. Returns `None` when the move is
/// structurally invalid (member emptied or support cap exceeded).
fn propose(
    rng: &mut ChaCha8Rng,
    tuple: &[Sequence],
    fparams: &SpaceParams,
    search: &SearchParams,
) -> Option<Vec<Sequence>> {
    let d = fparams.d();
    let side = search.support_cap as i64;
    let member_idx = rng.gen_range(0..tuple.len());
    let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(0..side)).collect();
    let step = PERTURBATION_STEPS[rng.gen_range(0..PERTURBATION_STEPS.len())];
    let delta = if rng.gen_bool(0.5) { step } else { -step };

    let point = LatticePoint::new(coords);
    let member = &tuple[member_idx];
    let old = member.get(&point).map_or(0.0, Scalar::to_f64);
    let new = old + delta;

    let entries = member
        .iter()
        .filter(|(k, _)| **k != point)
        .map(|(k, v)| (k.clone(), v.clone()))
        .chain((new.abs() >= 1e-12).then(|| (point.clone(), Scalar::Float(new))));
    let perturbed = Sequence::from_entries(d, entries).ok()?;
    if perturbed.is_zero() || perturbed.support_len() > search.support_cap {
        return None;
    }
    let normalized = normalize(&perturbed, fparams)?;

    let mut next = tuple.to_vec();
    next[member_idx] = normalized;
    Some(next)
}
