//! Exact arithmetic in `Z[v, v^-1]` and its fraction field `Q(v)`.
//!
//! [`LaurentPoly`] is a sparse map from exponents to arbitrary-precision
//! integers. [`FracLaurent`] is a quotient of two such polynomials kept in a
//! canonical reduced form, so `==` is structural equality of field elements.
//!
//! Half-integer powers of `q` never occur: `v` plays the role of `q^{1/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("odd exponent {0} cannot be evaluated at v^2 = {1}: no exact square root")]
    OddExponent(i32, BigRational),
    #[error("cannot specialize at zero")]
    ZeroPoint,
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the specialization point")]
    PoleAtPoint,
}

/// Which quantity the rational point `t` is assigned to in [`LaurentPoly::specialize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecializeMode {
    /// `v = t`
    V,
    /// `v^2 = t`
    VSquared,
}

/// An element of `Z[v, v^-1]`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`
    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Returns the integer if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The scalar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `v -> v^k`; with `k = 2` this embeds a polynomial in `q` via `q = v^2`.
    pub fn dilate(&self, k: i32) -> Self {
        assert!(k != 0, "dilation factor must be nonzero");
        Self { terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect() }
    }

    /// Inverse of [`dilate`](Self::dilate); `None` if some exponent is not divisible by `k`.
    pub fn contract(&self, k: i32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&e, c) in &self.terms {
            if e % k != 0 {
                return None;
            }
            terms.insert(e / k, c.clone());
        }
        Some(Self { terms })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `v = t` or `v^2 = t`.
    pub fn specialize(&self, t: &BigRational, mode: SpecializeMode) -> Result<BigRational, LaurentError> {
        if t.is_zero() {
            return Err(LaurentError::ZeroPoint);
        }
        match mode {
            SpecializeMode::V => Ok(self.eval_at(t)),
            SpecializeMode::VSquared => {
                if let Some(half) = self.contract(2) {
                    return Ok(half.eval_at(t));
                }
                match rational_sqrt(t) {
                    Some(root) => Ok(self.eval_at(&root)),
                    None => {
                        let odd = self.terms.keys().find(|e| *e % 2 != 0).copied().unwrap_or(1);
                        Err(LaurentError::OddExponent(odd, t.clone()))
                    }
                }
            }
        }
    }

    /// Evaluates at `v^2 = t` inside `Q(sqrt t)`: returns `(a, b)` with value `a + b*sqrt(t)`.
    ///
    /// Unlike [`specialize`](Self::specialize) this never fails on odd exponents, so
    /// identities among elements with odd `v`-degrees can be checked at any `t`.
    pub fn specialize_sqrt_ext(&self, t: &BigRational) -> Result<(BigRational, BigRational), LaurentError> {
        if t.is_zero() {
            return Err(LaurentError::ZeroPoint);
        }
        let mut even = BigRational::zero();
        let mut odd = BigRational::zero();
        for (&e, c) in &self.terms {
            let c = BigRational::from_integer(c.clone());
            if e.rem_euclid(2) == 0 {
                even += c * rational_pow(t, e / 2);
            } else {
                odd += c * rational_pow(t, (e - 1) / 2);
            }
        }
        Ok((even, odd))
    }

    fn eval_at(&self, t: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&e, c)| BigRational::from_integer(c.clone()) * rational_pow(t, e))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Formats with `var` as the indeterminate, e.g. `1+q` or `v^-1-v`.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Pretty { poly: self, var }
    }
}

fn rational_pow(t: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(t.clone(), e as usize)
    } else {
        num_traits::pow(t.recip(), (-e) as usize)
    }
}

fn rational_sqrt(t: &BigRational) -> Option<BigRational> {
    if t.is_negative() {
        return None;
    }
    let n = t.numer().sqrt();
    let d = t.denom().sqrt();
    if &(&n * &n) == t.numer() && &(&d * &d) == t.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

struct Pretty<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", self.var)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("v"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(LaurentPoly, Add, add);
forward_owned_binop!(LaurentPoly, Sub, sub);
forward_owned_binop!(LaurentPoly, Mul, mul);

// JSON: {"coeffs": [[exp, c], ...]} ascending in exp. Coefficients that do not
// fit in an i64 are written as decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(x) => JsonInt::Small(x),
            None => JsonInt::Big(c.to_string()),
        }
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = String;
    fn try_from(j: JsonInt) -> Result<Self, String> {
        match j {
            JsonInt::Small(x) => Ok(BigInt::from(x)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("invalid integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    coeffs: Vec<(i32, JsonInt)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentJson { coeffs: self.terms.iter().map(|(&e, c)| (e, c.into())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in raw.coeffs {
            p.add_term(e, BigInt::try_from(c).map_err(serde::de::Error::custom)?);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Dense integer polynomials (ascending, constant term first). Used only to
// reduce fractions.
// ---------------------------------------------------------------------------

type Dense = Vec<BigInt>;

/// Splits `p = v^shift * d(v)` with `d(0) != 0`.
fn to_dense(p: &LaurentPoly) -> (i32, Dense) {
    let lo = p.min_exp().expect("nonzero polynomial");
    let hi = p.max_exp().unwrap();
    let mut d = vec![BigInt::zero(); (hi - lo) as usize + 1];
    for (e, c) in p.terms() {
        d[(e - lo) as usize] = c.clone();
    }
    (lo, d)
}

fn from_dense(shift: i32, d: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_terms(d.iter().enumerate().map(|(i, c)| (shift + i as i32, c.clone())))
}

fn trim(d: &mut Dense) {
    while d.last().is_some_and(|c| c.is_zero()) {
        d.pop();
    }
}

fn content(d: &[BigInt]) -> BigInt {
    d.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut d: Dense) -> Dense {
    let c = content(&d);
    if !c.is_zero() && !c.is_one() {
        for x in &mut d {
            *x = &*x / &c;
        }
    }
    if d.last().is_some_and(|c| c.is_negative()) {
        for x in &mut d {
            *x = -std::mem::take(x);
        }
    }
    d
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut r: Dense = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over `Z[v]` with positive leading coefficient.
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut x = primitive(a.to_vec());
    let mut y = primitive(b.to_vec());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(r) };
    }
    x
}

/// Exact division `a / b` over `Z[v]`; `b` must divide `a`.
fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Dense {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return Vec::new();
    }
    let mut r: Dense = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let lead = &r[k + db];
        if lead.is_zero() {
            continue;
        }
        let (coef, rem) = lead.div_rem(&b[db]);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &coef * bc;
        }
        q[k] = coef;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    q
}

/// An element of `Q(v)` stored as `num / den` in canonical form:
/// `gcd(num, den) = 1` over `Q[v, v^-1]`, `den` is an ordinary polynomial with
/// nonzero constant term and positive leading coefficient, and the integer
/// content of `(num, den)` is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracLaurent {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FracLaurent {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(LaurentPoly::constant(r.numer().clone()), LaurentPoly::constant(r.denom().clone()))
            .expect("rational denominators are nonzero")
    }

    pub fn v_pow(exp: i32) -> Self {
        Self::from_poly(LaurentPoly::v_pow(exp))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (sn, dn) = to_dense(&num);
        let (sd, dd) = to_dense(&den);
        let (mut dn, mut dd) = if dd.len() > 1 {
            let g = dense_gcd(&dn, &dd);
            if g.len() > 1 {
                (dense_div_exact(&dn, &g), dense_div_exact(&dd, &g))
            } else {
                (dn, dd)
            }
        } else {
            (dn, dd)
        };
        let c = content(&dn).gcd(&content(&dd));
        let neg = dd.last().unwrap().is_negative();
        if !c.is_one() || neg {
            let c = if neg { -c } else { c };
            for x in dn.iter_mut().chain(dd.iter_mut()) {
                *x = &*x / &c;
            }
        }
        Self { num: from_dense(sn - sd, &dn), den: from_dense(0, &dd) }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some` iff this element lies in `Z[v, v^-1]`.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn into_laurent(self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Result<Self, LaurentError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, LaurentError> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self * &Self::from_int(c)
    }

    pub fn specialize(&self, t: &BigRational, mode: SpecializeMode) -> Result<BigRational, LaurentError> {
        let n = self.num.specialize(t, mode)?;
        let d = self.den.specialize(t, mode)?;
        if d.is_zero() {
            return Err(LaurentError::PoleAtPoint);
        }
        Ok(n / d)
    }
}

impl fmt::Display for FracLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for FracLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Default for FracLaurent {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for FracLaurent {
    fn zero() -> Self {
        FracLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for FracLaurent {
    fn one() -> Self {
        FracLaurent::one()
    }
}

impl From<LaurentPoly> for FracLaurent {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for FracLaurent {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add<&FracLaurent> for &FracLaurent {
    type Output = FracLaurent;
    fn add(self, rhs: &FracLaurent) -> FracLaurent {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return FracLaurent::from_poly(&self.num + &rhs.num);
            }
            return FracLaurent::reduce(&self.num + &rhs.num, self.den.clone());
        }
        FracLaurent::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl AddAssign<&FracLaurent> for FracLaurent {
    fn add_assign(&mut self, rhs: &FracLaurent) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Sub<&FracLaurent> for &FracLaurent {
    type Output = FracLaurent;
    fn sub(self, rhs: &FracLaurent) -> FracLaurent {
        self + &(-rhs)
    }
}

impl SubAssign<&FracLaurent> for FracLaurent {
    fn sub_assign(&mut self, rhs: &FracLaurent) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Mul<&FracLaurent> for &FracLaurent {
    type Output = FracLaurent;
    fn mul(self, rhs: &FracLaurent) -> FracLaurent {
        if self.is_zero() || rhs.is_zero() {
            return FracLaurent::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FracLaurent::from_poly(&self.num * &rhs.num);
        }
        FracLaurent::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl MulAssign<&FracLaurent> for FracLaurent {
    fn mul_assign(&mut self, rhs: &FracLaurent) {
        *self = &*self * rhs;
    }
}

impl Neg for &FracLaurent {
    type Output = FracLaurent;
    fn neg(self) -> FracLaurent {
        FracLaurent { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for FracLaurent {
    type Output = FracLaurent;
    fn neg(self) -> FracLaurent {
        FracLaurent { num: -self.num, den: self.den }
    }
}

forward_owned_binop!(FracLaurent, Add, add);
forward_owned_binop!(FracLaurent, Sub, sub);
forward_owned_binop!(FracLaurent, Mul, mul);

#[derive(Serialize, Deserialize)]
struct FracJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for FracLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FracJson { num: self.num.clone(), den: self.den.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FracLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = FracJson::deserialize(d)?;
        FracLaurent::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}
