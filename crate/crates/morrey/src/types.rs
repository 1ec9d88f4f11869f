//! Shared data model: lattice points, scalars, sparse sequences, space
//! parameters, windows, and norm values with exact certificates.
//!
//! A sequence is a finitely supported map `Z^d -> R` stored sparsely; a
//! window `S_{m,N}` is the sup-metric cube of radius `N` centered at `m`,
//! containing `(2N+1)^d` lattice points. All types are immutable after
//! construction and safe to share across threads.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric;

/// A point of the integer lattice `Z^d`. Ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(d: usize) -> Self {
        LatticePoint(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Arithmetic mode: exact rational certificates or plain doubles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Float => write!(f, "float"),
        }
    }
}

/// A sequence entry or report value: an exact rational in lowest terms with
/// positive denominator, or a double.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn from_int(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Parse(format!("non-finite value {v}")));
        }
        Ok(Scalar::Float(v))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => numeric::ratio_to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Sum of two scalars; rational + rational stays exact, any float
    /// operand collapses to a float.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => Scalar::Float(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => Scalar::Float(self.to_f64() * other.to_f64()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

/// The triple `(p, q, d)` defining the space `l^p_q(Z^d)`, plus the
/// arithmetic mode. Requires `1 <= p <= q`; exact mode additionally
/// requires integer `p` and `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceParams {
    p: BigRational,
    q: BigRational,
    d: usize,
    mode: Mode,
}

impl SpaceParams {
    pub fn new(p: BigRational, q: BigRational, d: usize, mode: Mode) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("dimension d must be >= 1".into()));
        }
        let one = BigRational::one();
        if p < one || q < p {
            return Err(Error::InvalidParams(format!(
                "need 1 <= p <= q, got p = {p}, q = {q}"
            )));
        }
        let params = SpaceParams { p, q, d, mode };
        if mode == Mode::Exact {
            params.integer_exponents()?;
        }
        Ok(params)
    }

    /// Exact-mode parameters with integer exponents.
    pub fn exact(p: u32, q: u32, d: usize) -> Result<Self> {
        Self::new(
            BigRational::from_integer(BigInt::from(p)),
            BigRational::from_integer(BigInt::from(q)),
            d,
            Mode::Exact,
        )
    }

    pub fn float(p: BigRational, q: BigRational, d: usize) -> Result<Self> {
        Self::new(p, q, d, Mode::Float)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(self.p.clone(), self.q.clone(), self.d, mode)
    }

    pub fn p_f64(&self) -> f64 {
        numeric::ratio_to_f64(&self.p)
    }

    pub fn q_f64(&self) -> f64 {
        numeric::ratio_to_f64(&self.q)
    }

    /// `(p, q)` as integers; errors unless both are integral.
    pub fn integer_exponents(&self) -> Result<(u32, u32)> {
        let as_u32 = |r: &BigRational| -> Option<u32> {
            r.denom().is_one().then(|| r.numer().to_u32()).flatten()
        };
        match (as_u32(&self.p), as_u32(&self.q)) {
            (Some(p), Some(q)) => Ok((p, q)),
            _ => Err(Error::NonIntegerExponents {
                p: self.p.to_string(),
                q: self.q.to_string(),
            }),
        }
    }

    pub fn strictly_included(&self) -> bool {
        self.p < self.q
    }
}

/// The cube `S_{m,N} = { k : ||k - m||_inf <= N }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub m: LatticePoint,
    pub radius: u64,
}

impl Window {
    pub fn new(m: LatticePoint, radius: u64) -> Self {
        Window { m, radius }
    }

    pub fn cardinality(&self) -> BigUint {
        window_cardinality(self.radius, self.m.dim())
    }

    pub fn contains(&self, k: &LatticePoint) -> bool {
        self.m
            .coords()
            .iter()
            .zip(k.coords())
            .all(|(&mi, &ki)| (ki - mi).unsigned_abs() <= self.radius)
    }
}

/// `|S_{m,N}| = (2N+1)^d`.
pub fn window_cardinality(radius: u64, d: usize) -> BigUint {
    let side = BigUint::from(2u64 * radius + 1);
    let mut out = BigUint::one();
    for _ in 0..d {
        out *= &side;
    }
    out
}

/// A finitely supported sequence on `Z^d`, stored as its support map.
/// Canonical form: no stored entry is exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    d: usize,
    entries: BTreeMap<LatticePoint, Scalar>,
}

impl Sequence {
    pub fn zero(d: usize) -> Self {
        Sequence {
            d,
            entries: BTreeMap::new(),
        }
    }

    /// Builds the canonical sparse form: zero values are dropped, duplicate
    /// points and dimension mismatches are rejected.
    pub fn from_entries(
        d: usize,
        pairs: impl IntoIterator<Item = (LatticePoint, Scalar)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (point, value) in pairs {
            if point.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: point.dim(),
                });
            }
            if value.is_zero() {
                continue;
            }
            let repr = point.to_string();
            if entries.insert(point, value).is_some() {
                return Err(Error::DuplicatePoint { point: repr });
            }
        }
        Ok(Sequence { d, entries })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: &LatticePoint) -> Option<&Scalar> {
        self.entries.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Scalar)> {
        self.entries.iter()
    }

    /// Per-axis `(min, max)` coordinates of the support; `None` when empty.
    pub fn bounding_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        if self.entries.is_empty() {
            return None;
        }
        let mut lo = vec![i64::MAX; self.d];
        let mut hi = vec![i64::MIN; self.d];
        for point in self.entries.keys() {
            for (a, &c) in point.coords().iter().enumerate() {
                lo[a] = lo[a].min(c);
                hi[a] = hi[a].max(c);
            }
        }
        Some((lo, hi))
    }

    /// Pointwise scaling; `c = 0` yields the zero sequence.
    pub fn scaled(&self, c: &Scalar) -> Sequence {
        if c.is_zero() {
            return Sequence::zero(self.d);
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (k.clone(), v.mul(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Sequence { d: self.d, entries }
    }

    /// True when every entry is rational.
    pub fn is_fully_rational(&self) -> bool {
        self.entries
            .values()
            .all(|v| matches!(v, Scalar::Rational(_)))
    }
}

/// Exact certificate for an attained norm value: the cardinality `|S|` of
/// the argmax window and the power sum `T = sum |x_k|^p` over it. The norm
/// value is `|S|^(1/q - 1/p) * T^(1/p) = (T^q / |S|^(q-p))^(1/(pq))`, so
/// order and equality against rational targets reduce to integer identities.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCertificate {
    cardinality: BigUint,
    psum: BigRational,
    p: u32,
    q: u32,
}

impl ExactCertificate {
    pub fn new(cardinality: BigUint, psum: BigRational, p: u32, q: u32) -> Self {
        debug_assert!(!cardinality.is_zero());
        debug_assert!(!psum.is_negative());
        debug_assert!(1 <= p && p <= q);
        ExactCertificate {
            cardinality,
            psum,
            p,
            q,
        }
    }

    pub fn cardinality(&self) -> &BigUint {
        &self.cardinality
    }

    pub fn psum(&self) -> &BigRational {
        &self.psum
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `T^q / |S|^(q-p)`, i.e. the norm value raised to the `pq`-th power.
    pub fn value_power(&self) -> BigRational {
        let tq = numeric::ratio_pow(&self.psum, self.q);
        let spow = BigInt::from(self.cardinality.pow(self.q - self.p));
        tq / numeric::big_int_to_ratio(spow)
    }

    /// Compares two certified values without leaving rational arithmetic.
    pub fn cmp_value(&self, other: &ExactCertificate) -> std::cmp::Ordering {
        debug_assert!(self.p == other.p && self.q == other.q);
        let lhs = numeric::ratio_pow(&self.psum, self.q)
            * numeric::big_int_to_ratio(BigInt::from(other.cardinality.pow(self.q - self.p)));
        let rhs = numeric::ratio_pow(&other.psum, self.q)
            * numeric::big_int_to_ratio(BigInt::from(self.cardinality.pow(self.q - self.p)));
        lhs.cmp(&rhs)
    }

    /// Decides `value == target` via `T^q = target^(pq) * |S|^(q-p)`.
    pub fn equals_rational(&self, target: &BigRational) -> bool {
        if target.is_negative() {
            return false;
        }
        let lhs = numeric::ratio_pow(&self.psum, self.q);
        let rhs = numeric::ratio_pow(target, self.p * self.q)
            * numeric::big_int_to_ratio(BigInt::from(self.cardinality.pow(self.q - self.p)));
        lhs == rhs
    }

    /// The value itself when it is rational (a perfect `pq`-th power).
    pub fn exact_value(&self) -> Option<BigRational> {
        numeric::perfect_nth_root_ratio(&self.value_power(), self.p * self.q)
    }

    /// The squared value when that is rational; holds in particular
    /// whenever the value is a nonnegative integer.
    pub fn exact_squared(&self) -> Option<BigRational> {
        let squared_power = {
            let r = self.value_power();
            &r * &r
        };
        numeric::perfect_nth_root_ratio(&squared_power, self.p * self.q)
    }

    pub fn to_f64(&self) -> f64 {
        numeric::ratio_root_f64(&self.value_power(), self.p * self.q)
    }
}

/// An attained norm: a double approximation, the argmax window, and (in
/// exact mode) the certificate deciding equality questions exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    float_value: f64,
    exact: Option<ExactCertificate>,
    argmax: Window,
}

impl NormValue {
    pub fn from_certificate(cert: ExactCertificate, argmax: Window) -> Self {
        let float_value = cert.to_f64();
        NormValue {
            float_value,
            exact: Some(cert),
            argmax,
        }
    }

    pub fn from_float(float_value: f64, argmax: Window) -> Self {
        NormValue {
            float_value,
            exact: None,
            argmax,
        }
    }

    pub fn value(&self) -> f64 {
        self.float_value
    }

    pub fn certificate(&self) -> Option<&ExactCertificate> {
        self.exact.as_ref()
    }

    pub fn argmax(&self) -> &Window {
        &self.argmax
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(cert) => cert.psum.is_zero(),
            None => self.float_value == 0.0,
        }
    }
}
