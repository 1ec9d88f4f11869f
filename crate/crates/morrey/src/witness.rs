//! Extremal families for the n-th Von Neumann-Jordan and James constants of
//! `l^p_q(Z^d)` with `p < q`: `n` unit-norm sequences supported on an
//! arithmetic progression of even gap `j` along the first axis, carrying
//! alternating-block sign patterns. Every signed combination of the family
//! concentrates one coefficient of absolute value `n`, and the gap is large
//! enough that no window beats that single spike, so all combination norms
//! equal `n` exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::types::{LatticePoint, Scalar, Sequence, SpaceParams};

/// Largest supported family size; `2^(n-1)` support points per member grows
/// past desk scale quickly.
pub const MAX_FAMILY_SIZE: u32 = 20;

/// The sign vector of family member `i`: `2^(i-1)` constant blocks of
/// length `2^(n-i)`, alternating `+1, -1` and starting with `+1`. Member 1
/// is all ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    n: u32,
    i: u32,
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn family_size(&self) -> u32 {
        self.n
    }

    pub fn member_index(&self) -> u32 {
        self.i
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Builds the alternating block pattern for member `i` of a family of `n`.
pub fn rademacher_pattern(i: u32, n: u32) -> Result<SignPattern> {
    if !(2..=MAX_FAMILY_SIZE).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "family size n must be in [2, {MAX_FAMILY_SIZE}], got {n}"
        )));
    }
    if i < 1 || i > n {
        return Err(Error::InvalidParams(format!(
            "member index i must be in [1, {n}], got {i}"
        )));
    }
    let len = 1usize << (n - 1);
    let block = 1usize << (n - i);
    let signs = (0..len)
        .map(|r| {
            if (r / block).is_multiple_of(2) {
                1i8
            } else {
                -1i8
            }
        })
        .collect();
    Ok(SignPattern { n, i, signs })
}

/// The strict spacing condition `(j+1)^(d(1/q - 1/p)) < 2^(-(n-1)/p)`,
/// decided exactly: with exponents cleared of denominators it reads
/// `2^((n-1)q) < (j+1)^(d(q-p))`, a big-integer comparison. Valid spacings
/// must also be even.
pub fn spacing_is_valid(
    j: u64,
    n: u32,
    p: &BigRational,
    q: &BigRational,
    d: usize,
) -> Result<bool> {
    let (a, b) = spacing_exponents(n, p, q, d)?;
    Ok(j.is_multiple_of(2) && spacing_predicate(j, a, &b))
}

/// The smallest even nonnegative `j` satisfying the spacing condition.
pub fn min_even_j(n: u32, p: &BigRational, q: &BigRational, d: usize) -> Result<u64> {
    let (a, b) = spacing_exponents(n, p, q, d)?;
    if spacing_predicate(0, a, &b) {
        return Ok(0);
    }
    let mut hi = 2u64;
    while !spacing_predicate(hi, a, &b) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::InvalidParams("spacing threshold exceeds u64 range".into()))?;
    }
    let mut lo = 0u64; // invalid
    while hi - lo > 2 {
        let mid = ((lo + hi) / 2) & !1; // even midpoint
        if spacing_predicate(mid, a, &b) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn spacing_predicate(j: u64, a: u32, two_pow_b: &BigUint) -> bool {
    BigUint::from(j + 1).pow(a) > *two_pow_b
}

/// Clears denominators: returns `(a, 2^b)` for `a = d(q-p) * c` and
/// `b = (n-1) q * c` with `c` the common denominator, so the condition
/// becomes `(j+1)^a > 2^b`.
fn spacing_exponents(n: u32, p: &BigRational, q: &BigRational, d: usize) -> Result<(u32, BigUint)> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "family size n must be at least 2, got {n}"
        )));
    }
    if p >= q {
        return Err(Error::InvalidParams(format!(
            "spacing threshold requires p < q, got p = {p}, q = {q}"
        )));
    }
    let r1 = BigRational::from_integer(BigInt::from(d)) * (q - p);
    let r2 = BigRational::from_integer(BigInt::from(n - 1)) * q;
    debug_assert!(r1.is_positive() && r2.is_positive());
    let c = r1.denom().lcm(r2.denom());
    let a_int = (&r1 * &c).to_integer();
    let b_int = (&r2 * &c).to_integer();
    let a = a_int
        .to_u32()
        .ok_or_else(|| Error::InvalidParams("spacing exponent out of range".into()))?;
    let b = b_int
        .to_u64()
        .ok_or_else(|| Error::InvalidParams("spacing exponent out of range".into()))?;
    Ok((a, BigUint::one() << b))
}

/// An ordered tuple of `n` unit-norm sequences realizing both constants.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    n: u32,
    params: SpaceParams,
    j: u64,
    members: Vec<Sequence>,
}

impl WitnessFamily {
    pub fn family_size(&self) -> u32 {
        self.n
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    pub fn spacing(&self) -> u64 {
        self.j
    }

    pub fn members(&self) -> &[Sequence] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Sequence> {
        self.members
    }
}

/// Constructs the family: member `i` takes value `rademacher_pattern(i, n)`
/// at the lattice points `(r*j, 0, ..., 0)` for `r = 0 .. 2^(n-1)-1`. With
/// `j` omitted the minimal valid even spacing is used; an explicit `j` must
/// be even and satisfy the strict spacing condition.
pub fn build_witness(n: u32, params: &SpaceParams, j: Option<u64>) -> Result<WitnessFamily> {
    if !(2..=MAX_FAMILY_SIZE).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "family size n must be in [2, {MAX_FAMILY_SIZE}], got {n}"
        )));
    }
    if !params.strictly_included() {
        return Err(Error::InvalidParams(format!(
            "witness construction requires p < q, got p = {}, q = {}",
            params.p(),
            params.q()
        )));
    }
    let j = match j {
        Some(j) => {
            if j % 2 != 0 {
                return Err(Error::InvalidSpacing {
                    j,
                    reason: "spacing must be even".into(),
                });
            }
            if !spacing_is_valid(j, n, params.p(), params.q(), params.d())? {
                return Err(Error::InvalidSpacing {
                    j,
                    reason: "spacing does not satisfy the threshold condition".into(),
                });
            }
            j
        }
        None => min_even_j(n, params.p(), params.q(), params.d())?,
    };

    let count = 1u64 << (n - 1);
    // support must stay within i64 coordinates
    if (count - 1)
        .checked_mul(j)
        .and_then(|c| i64::try_from(c).ok())
        .is_none()
    {
        return Err(Error::InvalidSpacing {
            j,
            reason: "support extent overflows coordinate range".into(),
        });
    }

    let d = params.d();
    let mut members = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let pattern = rademacher_pattern(i, n)?;
        let entries = pattern.signs().iter().enumerate().map(|(r, &sign)| {
            let mut coords = vec![0i64; d];
            coords[0] = (r as u64 * j) as i64;
            (LatticePoint::new(coords), Scalar::from_int(sign as i64))
        });
        members.push(Sequence::from_entries(d, entries)?);
    }

    Ok(WitnessFamily {
        n,
        params: params.clone(),
        j,
        members,
    })
}
