//! The n-th Von Neumann-Jordan ratio and the n-th James minimum for tuples
//! of sequences, and end-to-end verification that the witness families
//! realize both constants at the value `n`.
//!
//! For a tuple `u_1, ..., u_n` the ratio is
//! `sum_combos ||u_1 s_2 u_2 ... s_n u_n||^2 / (2^(n-1) sum_i ||u_i||^2)`
//! over all sign combinations with the first sign fixed `+`, and the James
//! objective is the minimum signed-sum norm over the same combinations.
//! In exact mode both come out as rationals whenever every involved norm
//! has a rational square, which holds for the witness families.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::norm::{morrey_norm, norm_equals};
use crate::types::{Mode, NormValue, Scalar, Sequence, SpaceParams};
use crate::witness::{build_witness, WitnessFamily};

/// Unit-norm tolerance for float-mode preconditions and verdicts.
pub const FLOAT_UNIT_TOLERANCE: f64 = 1e-9;

/// A choice of signs for `u_1 +/- u_2 +/- ... +/- u_n`; the first sign is
/// always `+`, so `n` positions give `2^(n-1)` combinations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignCombo {
    signs: Vec<i8>,
}

impl SignCombo {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs[0] != 1 || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParams(
                "sign combination must start with +1 and contain only +1/-1".into(),
            ));
        }
        Ok(SignCombo { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Compact form like `++-`.
    pub fn label(&self) -> String {
        self.signs
            .iter()
            .map(|&s| if s == 1 { '+' } else { '-' })
            .collect()
    }
}

/// All `2^(n-1)` sign combinations in binary counting order on positions
/// `2..n`, the last position moving fastest.
pub fn enumerate_sign_combos(n: u32) -> Result<Vec<SignCombo>> {
    if !(2..=25).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "sign combinations need n in [2, 25], got {n}"
        )));
    }
    let count = 1u64 << (n - 1);
    let mut combos = Vec::with_capacity(count as usize);
    for c in 0..count {
        let signs = (0..n)
            .map(|i| {
                // position 1 is fixed +; bit 0 of the counter drives the last
                if i > 0 && (c >> (n - 1 - i)) & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        combos.push(SignCombo { signs });
    }
    Ok(combos)
}

/// Pointwise `sum_i signs[i] * u_i` in canonical sparse form.
pub fn signed_sum(members: &[Sequence], combo: &SignCombo) -> Result<Sequence> {
    if members.is_empty() {
        return Err(Error::InvalidParams("empty tuple".into()));
    }
    if combo.len() != members.len() {
        return Err(Error::ComboLength {
            expected: members.len(),
            got: combo.len(),
        });
    }
    let d = members[0].dim();
    let mut acc: std::collections::BTreeMap<crate::types::LatticePoint, Scalar> =
        std::collections::BTreeMap::new();
    for (member, &sign) in members.iter().zip(combo.signs()) {
        if member.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: member.dim(),
            });
        }
        for (k, v) in member.iter() {
            let term = if sign == 1 { v.clone() } else { v.neg() };
            acc.entry(k.clone())
                .and_modify(|cur| *cur = cur.add(&term))
                .or_insert(term);
        }
    }
    Sequence::from_entries(d, acc)
}

fn tuple_norms(members: &[Sequence], params: &SpaceParams) -> Result<Vec<NormValue>> {
    members.iter().map(|x| morrey_norm(x, params)).collect()
}

fn combo_norms(members: &[Sequence], params: &SpaceParams) -> Result<Vec<(SignCombo, NormValue)>> {
    let combos = enumerate_sign_combos(members.len() as u32)?;
    combos
        .into_iter()
        .map(|combo| {
            let sum = signed_sum(members, &combo)?;
            let norm = morrey_norm(&sum, params)?;
            Ok((combo, norm))
        })
        .collect()
}

/// Squared-denominator ratio from precomputed norms; falls back to doubles
/// when some squared norm is irrational.
fn nj_from_norms(member_norms: &[NormValue], combo_norms: &[(SignCombo, NormValue)]) -> Scalar {
    let half_count = BigInt::from(combo_norms.len() as u64);
    let exact_attempt = || -> Option<Scalar> {
        let mut numer = BigRational::zero();
        for (_, v) in combo_norms {
            numer += v.certificate()?.exact_squared()?;
        }
        let mut denom = BigRational::zero();
        for v in member_norms {
            denom += v.certificate()?.exact_squared()?;
        }
        denom *= BigRational::from_integer(half_count.clone());
        Some(Scalar::Rational(numer / denom))
    };
    exact_attempt().unwrap_or_else(|| {
        let numer: f64 = combo_norms.iter().map(|(_, v)| v.value().powi(2)).sum();
        let denom: f64 = member_norms.iter().map(|v| v.value().powi(2)).sum();
        Scalar::Float(numer / (combo_norms.len() as f64 * denom))
    })
}

/// Variant with unsquared member norms in the denominator, reported
/// alongside the standard form.
fn nj_unsquared_from_norms(
    member_norms: &[NormValue],
    combo_norms: &[(SignCombo, NormValue)],
) -> Scalar {
    let half_count = BigInt::from(combo_norms.len() as u64);
    let exact_attempt = || -> Option<Scalar> {
        let mut numer = BigRational::zero();
        for (_, v) in combo_norms {
            numer += v.certificate()?.exact_squared()?;
        }
        let mut denom = BigRational::zero();
        for v in member_norms {
            denom += v.certificate()?.exact_value()?;
        }
        denom *= BigRational::from_integer(half_count.clone());
        Some(Scalar::Rational(numer / denom))
    };
    exact_attempt().unwrap_or_else(|| {
        let numer: f64 = combo_norms.iter().map(|(_, v)| v.value().powi(2)).sum();
        let denom: f64 = member_norms.iter().map(|v| v.value()).sum();
        Scalar::Float(numer / (combo_norms.len() as f64 * denom))
    })
}

fn min_combo_norm(norms: &[(SignCombo, NormValue)], mode: Mode) -> Scalar {
    let best = match mode {
        Mode::Exact => norms
            .iter()
            .reduce(|best, cand| {
                let ord = cand
                    .1
                    .certificate()
                    .expect("exact mode norm")
                    .cmp_value(best.1.certificate().expect("exact mode norm"));
                if ord == std::cmp::Ordering::Less {
                    cand
                } else {
                    best
                }
            })
            .expect("nonempty combos"),
        Mode::Float => norms
            .iter()
            .reduce(|best, cand| {
                if cand.1.value() < best.1.value() {
                    cand
                } else {
                    best
                }
            })
            .expect("nonempty combos"),
    };
    match best.1.certificate().and_then(|c| c.exact_value()) {
        Some(r) => Scalar::Rational(r),
        None => Scalar::Float(best.1.value()),
    }
}

/// `sum_combos ||...||^2 / (2^(n-1) sum_i ||u_i||^2)` over all sign
/// combinations. Members must be nonzero.
pub fn nj_ratio(members: &[Sequence], params: &SpaceParams) -> Result<Scalar> {
    let member_norms = checked_member_norms(members, params, false)?;
    let combos = combo_norms(members, params)?;
    Ok(nj_from_norms(&member_norms, &combos))
}

/// `min_combos ||u_1 +/- ... +/- u_n||` over all sign combinations.
/// Members must be unit-norm: exactly in exact mode, within
/// `FLOAT_UNIT_TOLERANCE` in float mode.
pub fn james_min(members: &[Sequence], params: &SpaceParams) -> Result<Scalar> {
    checked_member_norms(members, params, true)?;
    let combos = combo_norms(members, params)?;
    Ok(min_combo_norm(&combos, params.mode()))
}

fn checked_member_norms(
    members: &[Sequence],
    params: &SpaceParams,
    require_unit: bool,
) -> Result<Vec<NormValue>> {
    if members.len() < 2 {
        return Err(Error::InvalidParams(
            "tuple must have at least two members".into(),
        ));
    }
    let norms = tuple_norms(members, params)?;
    for (index, v) in norms.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::ZeroMember { index });
        }
        if require_unit {
            let unit = match params.mode() {
                Mode::Exact => norm_equals(v, &BigRational::from_integer(BigInt::from(1)))?,
                Mode::Float => (v.value() - 1.0).abs() <= FLOAT_UNIT_TOLERANCE,
            };
            if !unit {
                return Err(Error::NonUnitMember { index });
            }
        }
    }
    Ok(norms)
}

/// Outcome flags of a verification run. Equality of either constant with
/// `n` rules out both uniform non-`l^1_n`-ness and uniform n-convexity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub nj_equals_n: bool,
    pub james_equals_n: bool,
    pub not_uniformly_non_l1n: bool,
    pub not_uniformly_n_convex: bool,
}

impl Verdicts {
    pub fn all_true(&self) -> bool {
        self.nj_equals_n
            && self.james_equals_n
            && self.not_uniformly_non_l1n
            && self.not_uniformly_n_convex
    }
}

/// Full record of one verification run over a witness family.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub n: u32,
    pub params: SpaceParams,
    pub j: u64,
    pub member_norms: Vec<NormValue>,
    pub combo_norms: Vec<(SignCombo, NormValue)>,
    pub nj_ratio: Scalar,
    pub nj_ratio_unsquared: Scalar,
    pub james_min: Scalar,
    pub verdicts: Verdicts,
}

/// Builds the witness family for `(n, p, q, d)`, computes every member and
/// combination norm, and certifies that all member norms equal 1 and all
/// combination norms equal `n` — whence both constants equal `n` on this
/// tuple. Exact mode decides by certificate identities; float mode uses
/// relative tolerance `FLOAT_UNIT_TOLERANCE`.
pub fn verify_theorem(n: u32, params: &SpaceParams, j: Option<u64>) -> Result<VerificationReport> {
    let family: WitnessFamily = build_witness(n, params, j)?;
    verify_family(&family)
}

/// Verification of an already-built family.
pub fn verify_family(family: &WitnessFamily) -> Result<VerificationReport> {
    let params = family.params();
    let n = family.family_size();
    let members = family.members();
    let member_norms = tuple_norms(members, params)?;
    let combos = combo_norms(members, params)?;

    let n_big = BigRational::from_integer(BigInt::from(n));
    let one = BigRational::from_integer(BigInt::from(1));
    let (members_unit, combos_equal_n) = match params.mode() {
        Mode::Exact => {
            let members_unit = member_norms
                .iter()
                .map(|v| norm_equals(v, &one))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok);
            let combos_equal_n = combos
                .iter()
                .map(|(_, v)| norm_equals(v, &n_big))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok);
            (members_unit, combos_equal_n)
        }
        Mode::Float => {
            let members_unit = member_norms
                .iter()
                .all(|v| (v.value() - 1.0).abs() <= FLOAT_UNIT_TOLERANCE);
            let nf = f64::from(n);
            let combos_equal_n = combos
                .iter()
                .all(|(_, v)| (v.value() - nf).abs() <= nf * FLOAT_UNIT_TOLERANCE);
            (members_unit, combos_equal_n)
        }
    };

    let attained = members_unit && combos_equal_n;
    let verdicts = Verdicts {
        nj_equals_n: attained,
        james_equals_n: attained,
        not_uniformly_non_l1n: attained,
        not_uniformly_n_convex: attained,
    };

    Ok(VerificationReport {
        n,
        params: params.clone(),
        j: family.spacing(),
        nj_ratio: nj_from_norms(&member_norms, &combos),
        nj_ratio_unsquared: nj_unsquared_from_norms(&member_norms, &combos),
        james_min: min_combo_norm(&combos, params.mode()),
        member_norms,
        combo_norms: combos,
        verdicts,
    })
}
