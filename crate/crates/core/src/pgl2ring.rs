//! The stratified Grothendieck ring of `PGL_2` and its `Gr` basis.
//!
//! Rank-one local systems on the torus are modelled by `Z/N` (`N` even).
//! There are three strata: regular semisimple, regular unipotent, `{1}`.
//! Classes on `Y_rs` are `[L_e] = [L_{-e}]` for `2e != 0` and the two
//! summands `[L'_e]`, `[L''_e]` for `2e = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pgl2Error {
    #[error("character order must be even and positive, got {0}")]
    BadOrder(u32),
    #[error("{family} is not defined for e = {value} (mod {order})")]
    KindMismatch { family: &'static str, value: u32, order: u32 },
    #[error("cannot parse symbol {0:?}")]
    BadSymbol(String),
}

/// An element of `Z/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharIndex {
    value: u32,
    order: u32,
}

impl CharIndex {
    pub fn new(value: i64, order: u32) -> Result<Self, Pgl2Error> {
        if order == 0 || order % 2 != 0 {
            return Err(Pgl2Error::BadOrder(order));
        }
        Ok(Self { value: value.rem_euclid(order as i64) as u32, order })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn order(self) -> u32 {
        self.order
    }

    /// `e*`
    pub fn dual(self) -> Self {
        Self { value: (self.order - self.value) % self.order, order: self.order }
    }

    /// `e (x) e1`
    pub fn tensor(self, other: Self) -> Self {
        assert_eq!(self.order, other.order);
        Self { value: (self.value + other.value) % self.order, order: self.order }
    }

    /// True iff `e^{(x)2}` is trivial.
    pub fn square_trivial(self) -> bool {
        (2 * self.value) % self.order == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stratum {
    Rs,
    Ru,
    One,
}

impl Stratum {
    pub fn codim(self) -> u32 {
        match self {
            Stratum::Rs => 0,
            Stratum::Ru => 1,
            Stratum::One => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prime {
    Single,
    Double,
}

/// A basis element of the ring; also names the simple perverse sheaf `A_L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumClass {
    /// `[L_e] = [L_{e*}]`, `2e != 0`; stores the smaller representative.
    Pair(CharIndex),
    /// `[L'_e]` or `[L''_e]`, `2e = 0`.
    Split(CharIndex, Prime),
    Ru,
    One,
}

impl StratumClass {
    pub fn pair(e: CharIndex) -> Result<Self, Pgl2Error> {
        if e.square_trivial() {
            return Err(Pgl2Error::KindMismatch { family: "L", value: e.value, order: e.order });
        }
        Ok(StratumClass::Pair(if e.dual().value < e.value { e.dual() } else { e }))
    }

    pub fn split(e: CharIndex, p: Prime) -> Result<Self, Pgl2Error> {
        if !e.square_trivial() {
            let family = if p == Prime::Single { "L'" } else { "L''" };
            return Err(Pgl2Error::KindMismatch { family, value: e.value, order: e.order });
        }
        Ok(StratumClass::Split(e, p))
    }

    pub fn stratum(self) -> Stratum {
        match self {
            StratumClass::Pair(_) | StratumClass::Split(..) => Stratum::Rs,
            StratumClass::Ru => Stratum::Ru,
            StratumClass::One => Stratum::One,
        }
    }

    /// `[pi_! e~]`: the pair class, or `[L'_e] + [L''_e]` when `2e = 0`.
    pub fn pushforward(e: CharIndex) -> RingElt {
        if e.square_trivial() {
            RingElt::basis(StratumClass::Split(e, Prime::Single))
                + RingElt::basis(StratumClass::Split(e, Prime::Double))
        } else {
            RingElt::basis(StratumClass::pair(e).unwrap())
        }
    }

    /// Every basis element for `Z/order`.
    pub fn all(order: u32) -> Result<Vec<Self>, Pgl2Error> {
        let mut out = Vec::new();
        for v in 0..order {
            let e = CharIndex::new(v as i64, order)?;
            if e.square_trivial() {
                out.push(StratumClass::Split(e, Prime::Single));
                out.push(StratumClass::Split(e, Prime::Double));
            } else if v <= order / 2 {
                out.push(StratumClass::Pair(e));
            }
        }
        out.push(StratumClass::Ru);
        out.push(StratumClass::One);
        Ok(out)
    }

    /// Parses `eps:k`, `eps':k`, `eps'':k`, `ru`, `1`.
    pub fn parse(s: &str, order: u32) -> Result<Self, Pgl2Error> {
        let bad = || Pgl2Error::BadSymbol(s.to_string());
        match s.trim() {
            "ru" => return Ok(StratumClass::Ru),
            "1" => return Ok(StratumClass::One),
            _ => {}
        }
        let (head, value) = s.trim().split_once(':').ok_or_else(bad)?;
        let e = CharIndex::new(value.trim().parse::<i64>().map_err(|_| bad())?, order)?;
        match head {
            "eps" => Self::pair(e),
            "eps'" => Self::split(e, Prime::Single),
            "eps''" => Self::split(e, Prime::Double),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for StratumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumClass::Pair(e) => write!(f, "eps:{}", e.value),
            StratumClass::Split(e, Prime::Single) => write!(f, "eps':{}", e.value),
            StratumClass::Split(e, Prime::Double) => write!(f, "eps'':{}", e.value),
            StratumClass::Ru => f.write_str("ru"),
            StratumClass::One => f.write_str("1"),
        }
    }
}

/// An element of `K_A(G)`, or of the `Gr` coordinates when keys name sheaves.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RingElt {
    coeffs: BTreeMap<StratumClass, LaurentPoly>,
}

impl RingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: StratumClass) -> Self {
        Self::term(b, LaurentPoly::one())
    }

    pub fn term(b: StratumClass, c: LaurentPoly) -> Self {
        Self::from_terms([(b, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (StratumClass, LaurentPoly)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<StratumClass, LaurentPoly> = BTreeMap::new();
        for (b, c) in terms {
            *coeffs.entry(b).or_default() += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn coeff(&self, b: StratumClass) -> LaurentPoly {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<StratumClass, LaurentPoly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&b, x)| (b, x * c)))
    }

    /// `{"eps:1": {"coeffs": ...}, ...}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.coeffs.iter().map(|(b, c)| (b.to_string(), serde_json::to_value(c).expect("serializable"))).collect(),
        )
    }
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "[{b}]")?;
            } else {
                write!(f, "({c})[{b}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for RingElt {
    type Output = RingElt;
    fn add(self, rhs: RingElt) -> RingElt {
        &self + &rhs
    }
}

impl Add<&RingElt> for &RingElt {
    type Output = RingElt;
    fn add(self, rhs: &RingElt) -> RingElt {
        RingElt::from_terms(self.coeffs.iter().chain(&rhs.coeffs).map(|(&b, c)| (b, c.clone())))
    }
}

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt::from_terms(self.coeffs.iter().map(|(&b, c)| (b, -c)))
    }
}

impl Sub<&RingElt> for &RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &RingElt) -> RingElt {
        self + &-rhs
    }
}

impl Mul<&RingElt> for &RingElt {
    type Output = RingElt;
    fn mul(self, rhs: &RingElt) -> RingElt {
        let mut out = RingElt::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out = &out + &basis_product(a, b).scale(&(x * y));
            }
        }
        out
    }
}

/// Product of two basis elements.
pub fn basis_product(a: StratumClass, b: StratumClass) -> RingElt {
    use StratumClass::*;
    match (a, b) {
        (Pair(e), Pair(e1)) => StratumClass::pushforward(e.tensor(e1)) + StratumClass::pushforward(e.tensor(e1.dual())),
        (Split(e, _), Pair(e1)) | (Pair(e1), Split(e, _)) => StratumClass::pushforward(e.tensor(e1)),
        (Split(e, p), Split(e1, p1)) => {
            let kind = if p == p1 { Prime::Single } else { Prime::Double };
            RingElt::basis(Split(e.tensor(e1), kind))
        }
        (Ru, Ru) => RingElt::term(Ru, LaurentPoly::v_pow(1)),
        (One, One) => RingElt::term(One, LaurentPoly::v_pow(3)),
        _ => RingElt::zero(),
    }
}

/// The unit of `K_A(Y_rs)`: `[L'_0]`.
pub fn rs_unit(order: u32) -> Result<StratumClass, Pgl2Error> {
    StratumClass::split(CharIndex::new(0, order)?, Prime::Single)
}

/// `Gr(A_L)` for the simple perverse sheaf attached to a basis element.
pub fn gr_expansion(sheaf: StratumClass) -> RingElt {
    use StratumClass::*;
    let v = LaurentPoly::v_pow;
    match sheaf {
        Pair(_) => RingElt::from_terms([(sheaf, v(0)), (Ru, v(-1)), (One, &v(-1) + &v(-3))]),
        Split(_, Prime::Single) => RingElt::from_terms([(sheaf, v(0)), (Ru, v(-1)), (One, v(-3))]),
        Split(_, Prime::Double) => RingElt::from_terms([(sheaf, v(0)), (One, v(-1))]),
        Ru => RingElt::from_terms([(Ru, v(0)), (One, v(-2))]),
        One => RingElt::basis(One),
    }
}

/// Rewrites `x` in the `Gr` basis by back-substitution, highest stratum first.
/// Keys of the result name sheaves `A_L`.
pub fn to_gr_basis(x: &RingElt) -> RingElt {
    let mut rest = x.clone();
    let mut out = RingElt::zero();
    for stratum in [Stratum::Rs, Stratum::Ru, Stratum::One] {
        let leading: Vec<_> =
            rest.coeffs.iter().filter(|(b, _)| b.stratum() == stratum).map(|(&b, c)| (b, c.clone())).collect();
        for (b, c) in leading {
            rest = &rest - &gr_expansion(b).scale(&c);
            out = &out + &RingElt::term(b, c);
        }
    }
    debug_assert!(rest.is_zero());
    out
}

/// `f_{L, L', L''}`: `Gr(A_L) Gr(A_L') = sum f Gr(A_L'')`.
pub fn structure_constants(a: StratumClass, b: StratumClass) -> RingElt {
    to_gr_basis(&(&gr_expansion(a) * &gr_expansion(b)))
}

/// The `Gr` expansion with its leading term removed has coefficients in
/// `v^-1 Z[v^-1]` and lives on strictly smaller strata.
pub fn is_triangular(sheaf: StratumClass) -> bool {
    let gr = gr_expansion(sheaf);
    if !gr.coeff(sheaf).is_one() {
        return false;
    }
    gr.coeffs()
        .iter()
        .filter(|(b, _)| **b != sheaf)
        .all(|(b, c)| b.stratum().codim() > sheaf.stratum().codim() && c.max_exp().is_some_and(|m| m < 0))
}
