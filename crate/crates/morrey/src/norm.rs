//! The discrete Morrey norm
//! `||x|| = sup_{m,N} |S_{m,N}|^(1/q - 1/p) (sum_{k in S_{m,N}} |x_k|^p)^(1/p)`
//! for finitely supported sequences, computed exactly or in doubles.
//!
//! Since `p <= q` the prefactor `|S|^(1/q - 1/p)` never increases with the
//! window radius, so the supremum over all windows is attained on windows
//! with `m` inside the support bounding box and radius at most the smallest
//! one covering the whole support from such a center. Within that range it
//! suffices to look at *minimal cover windows*: for any window, shrinking it
//! to the smallest window containing the box hull of the support points it
//! covers keeps the covered mass and shrinks the cardinality, so the value
//! does not drop. Those hulls are boxes whose per-axis endpoints are support
//! coordinates, which is the candidate set enumerated here; a direct
//! per-window brute force over the full range is kept as an oracle.
//!
//! In exact mode a candidate's value `v` satisfies
//! `v^(pq) = T^q / |S|^(q-p)`, so two candidates compare via the integer
//! cross product `T_1^q |S_2|^(q-p)` vs `T_2^q |S_1|^(q-p)`; no floating
//! point enters the scan. Power sums are carried as big integers over one
//! common denominator.

use std::cmp::Ordering;
use std::ops::{AddAssign, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric;
use crate::types::{
    window_cardinality, ExactCertificate, LatticePoint, Mode, NormValue, Sequence, SpaceParams,
    Window,
};

/// Guard rails for the window scan; the norm is a desk-scale computation
/// over sparse supports, not a bulk-data kernel.
#[derive(Clone, Debug)]
pub struct NormLimits {
    /// Maximum number of support points.
    pub max_support: usize,
    /// Maximum number of cells in the prefix-sum table.
    pub max_table_cells: usize,
    /// Maximum number of enumerated candidate windows.
    pub max_candidates: usize,
    /// Maximum absolute coordinate, so window arithmetic stays in i64.
    pub max_abs_coord: i64,
}

impl Default for NormLimits {
    fn default() -> Self {
        NormLimits {
            max_support: 10_000,
            max_table_cells: 1 << 26,
            max_candidates: 1 << 26,
            max_abs_coord: 1 << 40,
        }
    }
}

/// Values a summed-area table can accumulate.
pub trait SatValue:
    Clone + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}
impl<T> SatValue for T where T: Clone + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T> {}

/// d-dimensional prefix sums of point masses over the grid of distinct
/// support coordinates, answering arbitrary integer box-sum queries by
/// 2^d-corner inclusion-exclusion. Coordinates outside the grid carry no
/// mass, so queries clip for free.
pub struct SummedAreaTable<T> {
    axes: Vec<Vec<i64>>,
    strides: Vec<usize>,
    cum: Vec<T>,
}

impl<T: SatValue> SummedAreaTable<T> {
    pub fn build<'a, I>(d: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a LatticePoint, T)>,
    {
        let points: Vec<(&LatticePoint, T)> = points.into_iter().collect();
        for (point, _) in &points {
            if point.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: point.dim(),
                });
            }
        }
        let axes = support_axes(d, points.iter().map(|(k, _)| *k));

        // The grid keeps one phantom zero layer per axis for border sums.
        let mut cells = 1usize;
        for axis in &axes {
            cells = cells
                .checked_mul(axis.len() + 1)
                .ok_or_else(|| Error::LimitExceeded("prefix table too large".into()))?;
        }
        let mut strides = vec![1usize; d];
        for a in (0..d.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * (axes[a + 1].len() + 1);
        }

        let mut cum = vec![T::zero(); cells];
        for (point, mass) in points {
            let mut flat = 0usize;
            for (a, &c) in point.coords().iter().enumerate() {
                let idx = axes[a].binary_search(&c).expect("support coordinate");
                flat += (idx + 1) * strides[a];
            }
            cum[flat] += &mass;
        }

        // One in-place prefix pass per axis turns masses into cumulative sums.
        for a in 0..d {
            let stride = strides[a];
            for flat in 0..cells {
                if (flat / stride) % (axes[a].len() + 1) >= 1 {
                    let (head, tail) = cum.split_at_mut(flat);
                    tail[0] += &head[flat - stride];
                }
            }
        }

        Ok(SummedAreaTable { axes, strides, cum })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Sorted distinct support coordinates per axis.
    pub fn axes(&self) -> &[Vec<i64>] {
        &self.axes
    }

    /// Total mass inside the integer box `[lo_a, hi_a]` per axis.
    pub fn query_box(&self, lo: &[i64], hi: &[i64]) -> T {
        debug_assert_eq!(lo.len(), self.dim());
        debug_assert_eq!(hi.len(), self.dim());
        let d = self.dim();
        let mut lo_idx = vec![0usize; d];
        let mut hi_idx = vec![0usize; d];
        for a in 0..d {
            lo_idx[a] = self.axes[a].partition_point(|&c| c < lo[a]);
            hi_idx[a] = self.axes[a].partition_point(|&c| c <= hi[a]);
            if hi_idx[a] <= lo_idx[a] {
                return T::zero();
            }
        }
        let mut acc = T::zero();
        for mask in 0..(1usize << d) {
            let mut flat = 0usize;
            let mut parity = 0u32;
            for a in 0..d {
                let idx = if mask & (1 << a) != 0 {
                    parity += 1;
                    lo_idx[a]
                } else {
                    hi_idx[a]
                };
                flat += idx * self.strides[a];
            }
            if parity.is_multiple_of(2) {
                acc += &self.cum[flat];
            } else {
                acc -= &self.cum[flat];
            }
        }
        acc
    }
}

fn support_axes<'a>(d: usize, points: impl Iterator<Item = &'a LatticePoint>) -> Vec<Vec<i64>> {
    let mut axes: Vec<Vec<i64>> = vec![Vec::new(); d];
    for point in points {
        for (a, &c) in point.coords().iter().enumerate() {
            axes[a].push(c);
        }
    }
    for axis in &mut axes {
        axis.sort_unstable();
        axis.dedup();
    }
    axes
}

/// Computes the Morrey norm, the attaining window, and (in exact mode) the
/// certificate `(|S|, T)`. The zero sequence yields 0 at `(origin, 0)`.
/// Among maximizing windows in the canonical range the lexicographically
/// smallest `(N, m)` is reported.
pub fn morrey_norm(x: &Sequence, params: &SpaceParams) -> Result<NormValue> {
    morrey_norm_with_limits(x, params, &NormLimits::default())
}

pub fn morrey_norm_with_limits(
    x: &Sequence,
    params: &SpaceParams,
    limits: &NormLimits,
) -> Result<NormValue> {
    check_input(x, params, limits)?;
    if x.is_zero() {
        return zero_norm_value(x.dim(), params);
    }
    match params.mode() {
        Mode::Exact => {
            let (p, q) = params.integer_exponents()?;
            exact_norm(x, p, q, limits)
        }
        Mode::Float => float_norm(x, params, limits),
    }
}

/// The canonical enumeration range: support bounding box for the centers,
/// and the smallest radius at which one centered window covers the whole
/// support. No window outside it exceeds the values inside.
pub fn canonical_range(x: &Sequence) -> (Vec<i64>, Vec<i64>, u64) {
    match x.bounding_box() {
        None => (vec![0; x.dim()], vec![0; x.dim()], 0),
        Some((lo, hi)) => {
            let n_cover = lo
                .iter()
                .zip(&hi)
                .map(|(&l, &h)| numeric::half_up((h - l) as u64))
                .max()
                .unwrap_or(0);
            (lo, hi, n_cover)
        }
    }
}

/// Direct per-window scan over `m` in `[m_lo, m_hi]` and `N` in `[0, n_max]`
/// with no prefix tables; the oracle the fast path is checked against.
/// Matches `morrey_norm` whenever the given range covers the canonical one.
pub fn morrey_norm_bruteforce(
    x: &Sequence,
    params: &SpaceParams,
    m_lo: &[i64],
    m_hi: &[i64],
    n_max: u64,
) -> Result<NormValue> {
    let limits = NormLimits::default();
    check_input(x, params, &limits)?;
    let d = x.dim();
    if m_lo.len() != d || m_hi.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: m_lo.len().min(m_hi.len()),
        });
    }
    if m_lo.iter().zip(m_hi).any(|(lo, hi)| lo > hi) {
        return Err(Error::InvalidParams("empty center box".into()));
    }
    if x.is_zero() {
        return zero_norm_value(d, params);
    }

    match params.mode() {
        Mode::Exact => {
            let (p, q) = params.integer_exponents()?;
            let masses = ExactMasses::collect(x, p)?;

            struct Best {
                t: BigInt,
                tq: BigInt,
                spow: BigInt,
                radius: u64,
                m: Vec<i64>,
            }
            let mut best: Option<Best> = None;
            for_each_window(m_lo, m_hi, n_max, |m, radius| {
                let t = masses.window_sum(m, radius);
                if t.is_zero() {
                    return;
                }
                let tq = t.pow(q);
                let spow = BigInt::from(window_cardinality(radius, d).pow(q - p));
                // strict improvement only: scan order is (N, m) ascending,
                // so ties keep the earlier window
                let better = match &best {
                    None => true,
                    Some(b) => (&tq * &b.spow).cmp(&(&b.tq * &spow)) == Ordering::Greater,
                };
                if better {
                    best = Some(Best {
                        t,
                        tq,
                        spow,
                        radius,
                        m: m.to_vec(),
                    });
                }
            });
            match best {
                Some(b) => {
                    let cert = masses.certificate(b.t, b.radius, d, p, q);
                    Ok(NormValue::from_certificate(
                        cert,
                        Window::new(LatticePoint::new(b.m), b.radius),
                    ))
                }
                // range missed the support entirely
                None => {
                    let cert = ExactCertificate::new(BigUint::one(), BigRational::zero(), p, q);
                    Ok(NormValue::from_certificate(
                        cert,
                        Window::new(LatticePoint::new(m_lo.to_vec()), 0),
                    ))
                }
            }
        }
        Mode::Float => {
            let pf = params.p_f64();
            let qf = params.q_f64();
            let masses: Vec<(&LatticePoint, f64)> = x
                .iter()
                .map(|(k, v)| (k, v.to_f64().abs().powf(pf)))
                .collect();
            let exponent = d as f64 * (1.0 / qf - 1.0 / pf);
            let mut best: Option<(f64, u64, Vec<i64>)> = None;
            for_each_window(m_lo, m_hi, n_max, |m, radius| {
                let mut t = 0.0f64;
                for (k, mass) in &masses {
                    if covers(m, radius, k) {
                        t += mass;
                    }
                }
                if t <= 0.0 {
                    return;
                }
                let value = ((2 * radius + 1) as f64).powf(exponent) * t.powf(1.0 / pf);
                if best.as_ref().is_none_or(|(bv, _, _)| value > *bv) {
                    best = Some((value, radius, m.to_vec()));
                }
            });
            let (value, radius, m) = best.unwrap_or((0.0, 0, m_lo.to_vec()));
            Ok(NormValue::from_float(
                value,
                Window::new(LatticePoint::new(m), radius),
            ))
        }
    }
}

/// Decides `||x|| == target` from the exact certificate via
/// `T^q = target^(pq) * |S|^(q-p)`.
pub fn norm_equals(v: &NormValue, target: &BigRational) -> Result<bool> {
    let cert = v.certificate().ok_or(Error::FloatOnlyCertificate)?;
    Ok(cert.equals_rational(target))
}

fn covers(m: &[i64], radius: u64, k: &LatticePoint) -> bool {
    k.coords()
        .iter()
        .zip(m)
        .all(|(&ki, &mi)| (ki - mi).unsigned_abs() <= radius)
}

fn check_input(x: &Sequence, params: &SpaceParams, limits: &NormLimits) -> Result<()> {
    if params.d() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.d(),
            got: x.dim(),
        });
    }
    if x.support_len() > limits.max_support {
        return Err(Error::LimitExceeded(format!(
            "support has {} points, limit is {}",
            x.support_len(),
            limits.max_support
        )));
    }
    for (k, _) in x.iter() {
        if k.coords().iter().any(|&c| c.abs() > limits.max_abs_coord) {
            return Err(Error::LimitExceeded(format!(
                "coordinate magnitude exceeds {}",
                limits.max_abs_coord
            )));
        }
    }
    Ok(())
}

fn zero_norm_value(d: usize, params: &SpaceParams) -> Result<NormValue> {
    let argmax = Window::new(LatticePoint::origin(d), 0);
    Ok(match params.mode() {
        Mode::Exact => {
            let (p, q) = params.integer_exponents()?;
            NormValue::from_certificate(
                ExactCertificate::new(BigUint::one(), BigRational::zero(), p, q),
                argmax,
            )
        }
        Mode::Float => NormValue::from_float(0.0, argmax),
    })
}

/// Support masses `|x_k|^p` over one common denominator, so the scan works
/// in plain big integers.
struct ExactMasses {
    scaled: Vec<(LatticePoint, BigInt)>,
    denom: BigUint,
}

impl ExactMasses {
    fn collect(x: &Sequence, p: u32) -> Result<Self> {
        let mut raw: Vec<(LatticePoint, BigUint, BigUint)> = Vec::with_capacity(x.support_len());
        let mut denom = BigUint::one();
        for (k, v) in x.iter() {
            let r = v
                .as_rational()
                .ok_or_else(|| Error::FloatEntryInExactMode {
                    point: k.to_string(),
                })?;
            let num = r.numer().magnitude().pow(p);
            let den = r.denom().magnitude().pow(p);
            denom = denom.lcm(&den);
            raw.push((k.clone(), num, den));
        }
        let scaled = raw
            .into_iter()
            .map(|(k, num, den)| {
                let factor = &denom / den;
                (k, BigInt::from(num * factor))
            })
            .collect();
        Ok(ExactMasses { scaled, denom })
    }

    fn window_sum(&self, m: &[i64], radius: u64) -> BigInt {
        let mut t = BigInt::zero();
        for (k, mass) in &self.scaled {
            if covers(m, radius, k) {
                t += mass;
            }
        }
        t
    }

    fn certificate(&self, t: BigInt, radius: u64, d: usize, p: u32, q: u32) -> ExactCertificate {
        let psum = BigRational::new(t, BigInt::from(self.denom.clone()));
        ExactCertificate::new(window_cardinality(radius, d), psum, p, q)
    }
}

/// Visits every `(m, N)` of the range, radius-major, centers in
/// lexicographic order.
fn for_each_window(m_lo: &[i64], m_hi: &[i64], n_max: u64, mut visit: impl FnMut(&[i64], u64)) {
    let d = m_lo.len();
    for radius in 0..=n_max {
        let mut m = m_lo.to_vec();
        'centers: loop {
            visit(&m, radius);
            let mut a = d;
            loop {
                if a == 0 {
                    break 'centers;
                }
                a -= 1;
                if m[a] < m_hi[a] {
                    m[a] += 1;
                    break;
                }
                m[a] = m_lo[a];
            }
        }
    }
}

/// One enumerated candidate: the minimal window covering a hull box. The
/// valid centers for it form a box; `m_min` is its lexicographic minimum
/// clamped to the support bounding box.
struct HullCandidate {
    radius: u64,
    m_min: Vec<i64>,
    box_lo: Vec<i64>,
    box_hi: Vec<i64>,
}

/// Streams every per-axis product of support-coordinate intervals together
/// with its minimal cover window.
fn for_each_hull_candidate(
    axes: &[Vec<i64>],
    limits: &NormLimits,
    mut visit: impl FnMut(&HullCandidate),
) -> Result<()> {
    let d = axes.len();
    let mut count = 1usize;
    for axis in axes {
        let pairs = axis.len() * (axis.len() + 1) / 2;
        count = count
            .checked_mul(pairs)
            .filter(|&c| c <= limits.max_candidates)
            .ok_or_else(|| Error::LimitExceeded("too many candidate windows".into()))?;
    }

    let lows: Vec<i64> = axes.iter().map(|axis| axis[0]).collect();
    let mut u_idx = vec![0usize; d];
    let mut v_idx = vec![0usize; d];
    let mut cand = HullCandidate {
        radius: 0,
        m_min: vec![0; d],
        box_lo: vec![0; d],
        box_hi: vec![0; d],
    };
    loop {
        let mut radius = 0u64;
        for a in 0..d {
            cand.box_lo[a] = axes[a][u_idx[a]];
            cand.box_hi[a] = axes[a][v_idx[a]];
            let width = (cand.box_hi[a] - cand.box_lo[a]) as u64;
            radius = radius.max(numeric::half_up(width));
        }
        cand.radius = radius;
        for (a, &low) in lows.iter().enumerate() {
            cand.m_min[a] = (cand.box_hi[a] - radius as i64).max(low);
        }
        visit(&cand);

        // odometer over (u, v) interval pairs, last axis fastest
        let mut advanced = false;
        let mut a = d;
        while a > 0 {
            a -= 1;
            if v_idx[a] + 1 < axes[a].len() {
                v_idx[a] += 1;
                advanced = true;
            } else if u_idx[a] + 1 < axes[a].len() {
                u_idx[a] += 1;
                v_idx[a] = u_idx[a];
                advanced = true;
            } else {
                u_idx[a] = 0;
                v_idx[a] = 0;
            }
            if advanced {
                break;
            }
        }
        if !advanced {
            return Ok(());
        }
    }
}

fn exact_norm(x: &Sequence, p: u32, q: u32, limits: &NormLimits) -> Result<NormValue> {
    let d = x.dim();
    let masses = ExactMasses::collect(x, p)?;
    let axes = support_axes(d, masses.scaled.iter().map(|(k, _)| k));
    check_table_size(&axes, limits)?;
    let sat = SummedAreaTable::build(d, masses.scaled.iter().map(|(k, t)| (k, t.clone())))?;

    struct Best {
        tq: BigInt,
        spow: BigInt,
        t: BigInt,
        radius: u64,
        m_min: Vec<i64>,
    }
    let mut best: Option<Best> = None;

    for_each_hull_candidate(&axes, limits, |cand| {
        let t = sat.query_box(&cand.box_lo, &cand.box_hi);
        if t.is_zero() {
            return;
        }
        let tq = t.pow(q);
        let spow = BigInt::from(window_cardinality(cand.radius, d).pow(q - p));
        let better = match &best {
            None => true,
            Some(b) => match (&tq * &b.spow).cmp(&(&b.tq * &spow)) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (cand.radius, &cand.m_min) < (b.radius, &b.m_min),
            },
        };
        if better {
            best = Some(Best {
                tq,
                spow,
                t,
                radius: cand.radius,
                m_min: cand.m_min.clone(),
            });
        }
    })?;

    let best = best.expect("nonzero sequence has a positive candidate");
    // Restate the power sum over the actual reported window; a maximizing
    // window cannot hold extra mass, so this only re-derives `best.t`.
    let radius = best.radius;
    let lo: Vec<i64> = best.m_min.iter().map(|&mi| mi - radius as i64).collect();
    let hi: Vec<i64> = best.m_min.iter().map(|&mi| mi + radius as i64).collect();
    let t_direct = sat.query_box(&lo, &hi);
    debug_assert_eq!(t_direct, best.t);
    let cert = masses.certificate(t_direct, radius, d, p, q);
    Ok(NormValue::from_certificate(
        cert,
        Window::new(LatticePoint::new(best.m_min), radius),
    ))
}

fn float_norm(x: &Sequence, params: &SpaceParams, limits: &NormLimits) -> Result<NormValue> {
    let d = x.dim();
    let pf = params.p_f64();
    let qf = params.q_f64();
    let axes = support_axes(d, x.iter().map(|(k, _)| k));
    check_table_size(&axes, limits)?;
    let sat =
        SummedAreaTable::<f64>::build(d, x.iter().map(|(k, v)| (k, v.to_f64().abs().powf(pf))))?;
    let exponent = d as f64 * (1.0 / qf - 1.0 / pf);

    struct Best {
        value: f64,
        radius: u64,
        m_min: Vec<i64>,
    }
    let mut best: Option<Best> = None;

    for_each_hull_candidate(&axes, limits, |cand| {
        // rounding can push an inclusion-exclusion result slightly negative
        let t = sat.query_box(&cand.box_lo, &cand.box_hi).max(0.0);
        if t <= 0.0 {
            return;
        }
        let value = ((2 * cand.radius + 1) as f64).powf(exponent) * t.powf(1.0 / pf);
        let better = match &best {
            None => true,
            Some(b) => {
                value > b.value
                    || (value == b.value && (cand.radius, &cand.m_min) < (b.radius, &b.m_min))
            }
        };
        if better {
            best = Some(Best {
                value,
                radius: cand.radius,
                m_min: cand.m_min.clone(),
            });
        }
    })?;

    Ok(match best {
        Some(b) => {
            NormValue::from_float(b.value, Window::new(LatticePoint::new(b.m_min), b.radius))
        }
        None => NormValue::from_float(0.0, Window::new(LatticePoint::origin(d), 0)),
    })
}

fn check_table_size(axes: &[Vec<i64>], limits: &NormLimits) -> Result<()> {
    let mut cells = 1usize;
    for axis in axes {
        cells = cells
            .checked_mul(axis.len() + 1)
            .filter(|&c| c <= limits.max_table_cells)
            .ok_or_else(|| Error::LimitExceeded("prefix table too large".into()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Scalar;
    use num_traits::Signed;

    fn pt(coords: &[i64]) -> LatticePoint {
        LatticePoint::new(coords.to_vec())
    }

    fn seq(d: usize, entries: &[(&[i64], i64)]) -> Sequence {
        Sequence::from_entries(
            d,
            entries.iter().map(|(k, v)| (pt(k), Scalar::from_int(*v))),
        )
        .unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn delta_has_unit_norm() {
        let params = SpaceParams::exact(1, 2, 1).unwrap();
        let x = seq(1, &[(&[0], 1)]);
        let v = morrey_norm(&x, &params).unwrap();
        assert!(norm_equals(&v, &BigRational::one()).unwrap());
        assert_eq!(v.argmax(), &Window::new(pt(&[0]), 0));
        assert_eq!(v.value(), 1.0);
    }

    #[test]
    fn indicator_of_two_points() {
        // indicator of {0,1} in Z at p=1, q=2: value 2/sqrt(3) at (m=0, N=1)
        let params = SpaceParams::exact(1, 2, 1).unwrap();
        let x = seq(1, &[(&[0], 1), (&[1], 1)]);
        let v = morrey_norm(&x, &params).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.cardinality(), &BigUint::from(3u32));
        assert_eq!(cert.psum(), &ratio(2, 1));
        assert_eq!(v.argmax(), &Window::new(pt(&[0]), 1));
        assert!((v.value() - 1.1547005383792515).abs() < 1e-12);
        assert!(!norm_equals(&v, &BigRational::one()).unwrap());
    }

    #[test]
    fn progression_of_ones_at_spacing_sixteen() {
        // 1 at k = 0, 16, 32, 48 with p=1, q=2: norm exactly 1
        let params = SpaceParams::exact(1, 2, 1).unwrap();
        let x = seq(1, &[(&[0], 1), (&[16], 1), (&[32], 1), (&[48], 1)]);
        let v = morrey_norm(&x, &params).unwrap();
        assert!(norm_equals(&v, &BigRational::one()).unwrap());
        assert_eq!(v.argmax(), &Window::new(pt(&[0]), 0));
    }

    #[test]
    fn p_equals_q_reduces_to_plain_lq() {
        // two unit spikes, p = q = 2: norm sqrt(2)
        let params = SpaceParams::exact(2, 2, 1).unwrap();
        let x = seq(1, &[(&[0], 1), (&[5], 1)]);
        let v = morrey_norm(&x, &params).unwrap();
        assert!((v.value() - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(v.certificate().unwrap().exact_squared(), Some(ratio(2, 1)));
        assert_eq!(v.argmax(), &Window::new(pt(&[2]), 3));
    }

    #[test]
    fn zero_sequence_norm_is_zero() {
        let params = SpaceParams::exact(1, 2, 2).unwrap();
        let x = Sequence::zero(2);
        let v = morrey_norm(&x, &params).unwrap();
        assert!(v.is_zero());
        assert_eq!(v.argmax(), &Window::new(pt(&[0, 0]), 0));
        assert!(norm_equals(&v, &BigRational::zero()).unwrap());
        let bf = morrey_norm_bruteforce(&x, &params, &[0, 0], &[0, 0], 0).unwrap();
        assert_eq!(bf, v);
    }

    #[test]
    fn bruteforce_matches_on_examples() {
        let params = SpaceParams::exact(1, 2, 1).unwrap();
        for x in [
            seq(1, &[(&[0], 1)]),
            seq(1, &[(&[0], 1), (&[1], 1)]),
            seq(1, &[(&[0], 1), (&[16], 1), (&[32], 1), (&[48], 1)]),
        ] {
            let (lo, hi, n_cover) = canonical_range(&x);
            let fast = morrey_norm(&x, &params).unwrap();
            let brute = morrey_norm_bruteforce(&x, &params, &lo, &hi, n_cover).unwrap();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn dilated_bruteforce_finds_no_larger_value() {
        let params = SpaceParams::exact(1, 3, 2).unwrap();
        let x = Sequence::from_entries(
            2,
            [
                (pt(&[0, 2]), Scalar::from_ratio(3, 2).unwrap()),
                (pt(&[4, -1]), Scalar::from_int(-2)),
                (pt(&[1, 1]), Scalar::from_ratio(-1, 3).unwrap()),
            ],
        )
        .unwrap();
        let (lo, hi, n_cover) = canonical_range(&x);
        let dilated_lo: Vec<i64> = lo.iter().map(|c| c - 4).collect();
        let dilated_hi: Vec<i64> = hi.iter().map(|c| c + 4).collect();
        let fast = morrey_norm(&x, &params).unwrap();
        let dilated =
            morrey_norm_bruteforce(&x, &params, &dilated_lo, &dilated_hi, n_cover + 4).unwrap();
        assert_eq!(
            fast.certificate()
                .unwrap()
                .cmp_value(dilated.certificate().unwrap()),
            Ordering::Equal
        );
    }

    #[test]
    fn float_mode_tracks_exact_value() {
        let exact = SpaceParams::exact(1, 2, 1).unwrap();
        let float = exact.with_mode(Mode::Float).unwrap();
        let x = seq(1, &[(&[0], 1), (&[1], 1), (&[7], -3)]);
        let ve = morrey_norm(&x, &exact).unwrap();
        let vf = morrey_norm(&x, &float).unwrap();
        assert!((ve.value() - vf.value()).abs() <= 1e-12 * ve.value());
        assert!(vf.certificate().is_none());
    }

    #[test]
    fn exact_mode_rejects_float_entries() {
        let params = SpaceParams::exact(1, 2, 1).unwrap();
        let x = Sequence::from_entries(1, [(pt(&[0]), Scalar::from_f64(0.5).unwrap())]).unwrap();
        assert!(matches!(
            morrey_norm(&x, &params),
            Err(Error::FloatEntryInExactMode { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let params = SpaceParams::exact(1, 2, 2).unwrap();
        let x = seq(1, &[(&[0], 1)]);
        assert!(matches!(
            morrey_norm(&x, &params),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn support_limit_is_enforced() {
        let params = SpaceParams::exact(1, 2, 1).unwrap();
        let x = seq(1, &[(&[0], 1), (&[1], 1), (&[2], 1)]);
        let limits = NormLimits {
            max_support: 2,
            ..NormLimits::default()
        };
        assert!(matches!(
            morrey_norm_with_limits(&x, &params, &limits),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn sat_matches_direct_summation() {
        let x = Sequence::from_entries(
            2,
            [
                (pt(&[0, 0]), Scalar::from_ratio(1, 3).unwrap()),
                (pt(&[2, -1]), Scalar::from_ratio(5, 2).unwrap()),
                (pt(&[2, 3]), Scalar::from_int(4)),
                (pt(&[-1, 3]), Scalar::from_ratio(-7, 5).unwrap()),
            ],
        )
        .unwrap();
        let sat = SummedAreaTable::<BigRational>::build(
            2,
            x.iter().map(|(k, v)| (k, v.as_rational().unwrap().abs())),
        )
        .unwrap();
        for lo0 in -2..4 {
            for hi0 in lo0..4 {
                for lo1 in -2..4 {
                    for hi1 in lo1..4 {
                        let direct: BigRational = x
                            .iter()
                            .filter(|(k, _)| {
                                let c = k.coords();
                                c[0] >= lo0 && c[0] <= hi0 && c[1] >= lo1 && c[1] <= hi1
                            })
                            .map(|(_, v)| v.as_rational().unwrap().abs())
                            .fold(BigRational::zero(), |acc, r| acc + r);
                        assert_eq!(sat.query_box(&[lo0, lo1], &[hi0, hi1]), direct);
                    }
                }
            }
        }
    }
}
