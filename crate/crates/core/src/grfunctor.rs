//! Grothendieck-group coordinates for the transfer functors.
//!
//! A [`GrElt`] lists coefficients on the basis `L^w[[M_w]]` (side `Z`) or
//! `L'^w[[M_w]]` (side `Z'`). The isomorphism `Psi: H -> K(Z)` sends
//! `(-1)^{l(w)} c_w` to the basis vector at `w`; geometry never enters, only
//! these labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterElement, CoxeterError, CoxeterGroup, CoxeterType};
use crate::hecke::{Coeffs, HeckeAlgebra, HeckeElt, HeckeError};
use crate::heckerep::{self, RepError};
use crate::klbasis::KlTable;
use crate::laurent::{FracLaurent, LaurentPoly, SpecializeMode};
use crate::matrix::FracMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrError {
    #[error("c-coordinate at {0:?} is not a Laurent polynomial")]
    NonLaurentCoefficient(Vec<usize>),
    #[error("expected an element on side {expected}, got side {found}")]
    SideMismatch { expected: Side, found: Side },
    #[error("multiplicity at x={x:?}, j={j} violates the parity constraint j = dA mod 2")]
    ParityViolation { x: Vec<usize>, j: i32 },
    #[error("multiplicity at x={x:?}, j={j} has no Lefschetz partner")]
    SymmetryViolation { x: Vec<usize>, j: i32 },
    #[error("table is for type {found}, expected {expected}")]
    TypeMismatch { expected: CoxeterType, found: CoxeterType },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Z,
    ZPrime,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Z => "Z",
            Side::ZPrime => "Z'",
        })
    }
}

#[derive(Clone)]
pub struct GrElt {
    alg: Arc<HeckeAlgebra>,
    side: Side,
    coeffs: BTreeMap<CoxeterElement, LaurentPoly>,
}

impl PartialEq for GrElt {
    fn eq(&self, other: &Self) -> bool {
        self.alg.coxeter_type() == other.alg.coxeter_type() && self.side == other.side && self.coeffs == other.coeffs
    }
}

impl Eq for GrElt {}

impl GrElt {
    pub fn zero(alg: &Arc<HeckeAlgebra>, side: Side) -> Self {
        Self { alg: alg.clone(), side, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs<I>(alg: &Arc<HeckeAlgebra>, side: Side, terms: I) -> Self
    where
        I: IntoIterator<Item = (CoxeterElement, LaurentPoly)>,
    {
        let mut coeffs: BTreeMap<CoxeterElement, LaurentPoly> = BTreeMap::new();
        for (w, c) in terms {
            *coeffs.entry(w).or_default() += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { alg: alg.clone(), side, coeffs }
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        self.alg.group()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coeff(&self, w: CoxeterElement) -> LaurentPoly {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<CoxeterElement, LaurentPoly> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The same coordinates read on the other side.
    pub fn relabel(&self, side: Side) -> Self {
        Self { side, ..self.clone() }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_coeffs(&self.alg, self.side, self.coeffs.iter().map(|(&w, x)| (w, x * c)))
    }

    /// Coefficientwise `v -> v^-1`.
    pub fn bar_coeffs(&self) -> Self {
        Self::from_coeffs(&self.alg, self.side, self.coeffs.iter().map(|(&w, x)| (w, x.bar())))
    }
}

impl fmt::Debug for GrElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.group();
        write!(f, "{}", self.side)?;
        let mut m = f.debug_map();
        for (w, c) in &self.coeffs {
            m.entry(&g.labels(*w), &c.to_string());
        }
        m.finish()
    }
}

fn signed(c: LaurentPoly, l: usize) -> LaurentPoly {
    if l % 2 == 0 {
        c
    } else {
        -c
    }
}

/// Multiplicities `(A : H^j(Kbar^{w0 x}))`, supplied as data.
#[derive(Debug, Clone)]
pub struct MultTable {
    group: Arc<CoxeterGroup>,
    pub delta: u32,
    pub d_a: u32,
    pub dprime_a: u32,
    mult: BTreeMap<(CoxeterElement, i32), u64>,
}

#[derive(Serialize, Deserialize)]
struct RawMultTable {
    #[serde(rename = "type")]
    ty: CoxeterType,
    delta: u32,
    #[serde(rename = "dA")]
    d_a: u32,
    #[serde(rename = "dprimeA")]
    dprime_a: u32,
    mult: Vec<RawMultEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawMultEntry {
    x: Vec<usize>,
    j: i32,
    m: u64,
}

impl PartialEq for MultTable {
    fn eq(&self, other: &Self) -> bool {
        self.group.coxeter_type() == other.group.coxeter_type()
            && (self.delta, self.d_a, self.dprime_a) == (other.delta, other.d_a, other.dprime_a)
            && self.mult == other.mult
    }
}

impl Eq for MultTable {}

impl MultTable {
    pub fn new(group: Arc<CoxeterGroup>, delta: u32, d_a: u32, dprime_a: u32) -> Self {
        Self { group, delta, d_a, dprime_a, mult: BTreeMap::new() }
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn get(&self, x: CoxeterElement, j: i32) -> u64 {
        self.mult.get(&(x, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, x: CoxeterElement, j: i32, m: u64) {
        if m == 0 {
            self.mult.remove(&(x, j));
        } else {
            self.mult.insert((x, j), m);
        }
    }

    pub fn add(&mut self, x: CoxeterElement, j: i32, m: u64) {
        let cur = self.get(x, j);
        self.set(x, j, cur + m);
    }

    /// Nonzero entries `((x, j), m)`.
    pub fn entries(&self) -> impl Iterator<Item = (CoxeterElement, i32, u64)> + '_ {
        self.mult.iter().map(|(&(x, j), &m)| (x, j, m))
    }

    /// `2 Delta + 2 l(w0 x) - j`
    pub fn partner(&self, x: CoxeterElement, j: i32) -> i32 {
        let g = &self.group;
        let l = g.length(g.product(g.longest_element(), x)) as i32;
        2 * self.delta as i32 + 2 * l - j
    }

    pub fn check_parity(&self) -> Result<(), GrError> {
        for (x, j, _) in self.entries() {
            if (j - self.d_a as i32).rem_euclid(2) != 0 {
                return Err(GrError::ParityViolation { x: self.group.labels(x), j });
            }
        }
        Ok(())
    }

    pub fn check_symmetry(&self) -> Result<(), GrError> {
        for (x, j, m) in self.entries() {
            if self.get(x, self.partner(x, j)) != m {
                return Err(GrError::SymmetryViolation { x: self.group.labels(x), j });
            }
        }
        Ok(())
    }

    /// The table of the dual object: `j -> 2 Delta + 2 l(w0 x) - j`.
    pub fn dual(&self) -> Self {
        let mut out = Self::new(self.group.clone(), self.delta, self.d_a, self.dprime_a);
        for (x, j, m) in self.entries() {
            out.set(x, self.partner(x, j), m);
        }
        out
    }

    pub fn from_json(s: &str) -> Result<Self, GrError> {
        let raw: RawMultTable = serde_json::from_str(s).map_err(|e| GrError::MalformedTable(e.to_string()))?;
        let group = CoxeterGroup::new(raw.ty)?;
        let mut out = Self::new(group.clone(), raw.delta, raw.d_a, raw.dprime_a);
        for e in raw.mult {
            let x = group.from_labels(&e.x)?;
            out.add(x, e.j, e.m);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let raw = RawMultTable {
            ty: self.group.coxeter_type(),
            delta: self.delta,
            d_a: self.d_a,
            dprime_a: self.dprime_a,
            mult: self.entries().map(|(x, j, m)| RawMultEntry { x: self.group.labels(x), j, m }).collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

/// Rational numbers attached to irreducible labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGammaTable", into = "RawGammaTable")]
pub struct GammaTable {
    pub delta: u32,
    pub gamma: BTreeMap<String, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct RawGammaTable {
    delta: u32,
    gamma: Vec<RawGammaEntry>,
}

#[derive(Serialize, Deserialize)]
struct RawGammaEntry {
    #[serde(rename = "E")]
    label: String,
    c: String,
}

impl TryFrom<RawGammaTable> for GammaTable {
    type Error = String;
    fn try_from(raw: RawGammaTable) -> Result<Self, String> {
        let mut gamma = BTreeMap::new();
        for e in raw.gamma {
            let c = BigRational::from_str(e.c.trim()).map_err(|err| format!("bad rational {:?}: {err}", e.c))?;
            let slot: &mut BigRational = gamma.entry(e.label).or_insert_with(BigRational::zero);
            *slot += c;
        }
        gamma.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(Self { delta: raw.delta, gamma })
    }
}

impl From<GammaTable> for RawGammaTable {
    fn from(t: GammaTable) -> Self {
        RawGammaTable {
            delta: t.delta,
            gamma: t.gamma.into_iter().map(|(label, c)| RawGammaEntry { label, c: c.to_string() }).collect(),
        }
    }
}

impl GammaTable {
    pub fn from_json(s: &str) -> Result<Self, GrError> {
        serde_json::from_str(s).map_err(|e| GrError::MalformedTable(e.to_string()))
    }
}

/// Coordinate maps between `H` and the Grothendieck groups of `Z` and `Z'`.
pub struct GrFunctor {
    kl: Arc<KlTable>,
}

impl GrFunctor {
    pub fn new(kl: Arc<KlTable>) -> Self {
        Self { kl }
    }

    pub fn kl(&self) -> &Arc<KlTable> {
        &self.kl
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        self.kl.algebra()
    }

    fn check(&self, alg: &HeckeAlgebra) -> Result<(), GrError> {
        let (a, b) = (self.algebra().coxeter_type(), alg.coxeter_type());
        if a != b {
            return Err(HeckeError::GroupMismatch(a, b).into());
        }
        Ok(())
    }

    fn to_side(&self, h: &HeckeElt, side: Side) -> Result<GrElt, GrError> {
        self.check(h.algebra())?;
        let g = h.group();
        let mut terms = Vec::new();
        for (w, c) in self.kl.expand_in_c(h) {
            let p = c.into_laurent().ok_or_else(|| GrError::NonLaurentCoefficient(g.labels(w)))?;
            terms.push((w, signed(p, g.length(w))));
        }
        Ok(GrElt::from_coeffs(self.algebra(), side, terms))
    }

    /// `Psi(h)`; `(-1)^{l(w)} c_w` goes to the basis vector at `w`.
    pub fn psi(&self, h: &HeckeElt) -> Result<GrElt, GrError> {
        self.to_side(h, Side::Z)
    }

    pub fn psi_prime(&self, h: &HeckeElt) -> Result<GrElt, GrError> {
        self.to_side(h, Side::ZPrime)
    }

    /// `Psi^-1` or `Psi'^-1`, according to the side of `g`.
    pub fn psi_inverse(&self, g: &GrElt) -> Result<HeckeElt, GrError> {
        self.check(g.algebra())?;
        let grp = g.group();
        let coords: Coeffs =
            g.coeffs().iter().map(|(&w, c)| (w, FracLaurent::from_poly(signed(c.clone(), grp.length(w))))).collect();
        Ok(self.kl.expand_in_t(&coords))
    }

    fn expect_side(g: &GrElt, side: Side) -> Result<(), GrError> {
        if g.side() != side {
            return Err(GrError::SideMismatch { expected: side, found: g.side() });
        }
        Ok(())
    }

    /// `gr(tau)`: `Psi(h) -> Psi'(T_{w0} h)`.
    pub fn gr_tau(&self, g: &GrElt) -> Result<GrElt, GrError> {
        Self::expect_side(g, Side::Z)?;
        let w0 = g.group().longest_element();
        self.psi_prime(&self.psi_inverse(g)?.left_mul_t(w0))
    }

    /// `gr(tau~)`: `Psi(h) -> Psi'(T_{w0}^-1 h)`.
    pub fn gr_tau_tilde(&self, g: &GrElt) -> Result<GrElt, GrError> {
        Self::expect_side(g, Side::Z)?;
        let w0 = g.group().longest_element();
        self.psi_prime(&self.psi_inverse(g)?.left_mul_t_inverse(w0))
    }

    /// `Psi o bar o Psi^-1`, on either side.
    pub fn duality(&self, g: &GrElt) -> Result<GrElt, GrError> {
        self.to_side(&self.psi_inverse(g)?.bar(), g.side())
    }

    /// `K`-coordinates to `Kbar`-coordinates: `out(w) = sum_y P_{y,w}(v^2) in(y)`.
    pub fn phi_base_change(&self, k: &BTreeMap<CoxeterElement, LaurentPoly>) -> BTreeMap<CoxeterElement, LaurentPoly> {
        let g = self.kl.group();
        let mut out = BTreeMap::new();
        for w in g.elements() {
            let col = self.kl.column(w);
            let mut acc = LaurentPoly::zero();
            for (y, c) in k {
                let p = &col[y.index()];
                if !p.is_zero() {
                    acc += &(&p.dilate(2) * c);
                }
            }
            if !acc.is_zero() {
                out.insert(w, acc);
            }
        }
        out
    }

    /// Inverse of [`Self::phi_base_change`]: `in(y) = sum_w Q_{w,y}(v^2) out(w)`.
    pub fn phi_base_change_inverse(
        &self,
        kbar: &BTreeMap<CoxeterElement, LaurentPoly>,
    ) -> BTreeMap<CoxeterElement, LaurentPoly> {
        let g = self.kl.group();
        let mut out = BTreeMap::new();
        for y in g.elements() {
            let mut acc = LaurentPoly::zero();
            for (&w, c) in kbar {
                let qp = self.kl.inverse_kl(w, y);
                if !qp.is_zero() {
                    acc += &(&qp.dilate(2) * c);
                }
            }
            if !acc.is_zero() {
                out.insert(y, acc);
            }
        }
        out
    }

    /// `sum_z P_{z,x} P_{z,y} q^{-l(w0 z)}`, a Laurent polynomial in `q`.
    pub fn pairing(&self, x: CoxeterElement, y: CoxeterElement) -> LaurentPoly {
        let g = self.kl.group();
        let w0 = g.longest_element();
        let (cx, cy) = (self.kl.column(x), self.kl.column(y));
        let mut out = LaurentPoly::zero();
        for z in g.elements() {
            let (a, b) = (&cx[z.index()], &cy[z.index()]);
            if !a.is_zero() && !b.is_zero() {
                out += &(a * b).shift(-(g.length(g.product(w0, z)) as i32));
            }
        }
        out
    }

    /// Coordinate `x` gets `sum_j mult(x, j) v^{j - l(w0 x)}`; side `Z'`.
    pub fn beta_expansion(&self, m: &MultTable) -> Result<GrElt, GrError> {
        let g = self.kl.group();
        if m.group().coxeter_type() != g.coxeter_type() {
            return Err(GrError::TypeMismatch { expected: g.coxeter_type(), found: m.group().coxeter_type() });
        }
        m.check_parity()?;
        let w0 = g.longest_element();
        let terms = m.entries().map(|(x, j, c)| {
            let l = g.length(g.product(w0, x)) as i32;
            (x, LaurentPoly::monomial(c, j - l))
        });
        Ok(GrElt::from_coeffs(self.algebra(), Side::ZPrime, terms))
    }

    /// Compares the expansion of the dual table, read through `v -> v^-1`,
    /// with `v^{-2 Delta}` times the expansion of `m`.
    pub fn beta_twist_check(&self, m: &MultTable) -> Result<bool, GrError> {
        m.check_symmetry()?;
        let lhs = self.beta_expansion(&m.dual())?.bar_coeffs();
        let rhs = self.beta_expansion(m)?.scale(&LaurentPoly::v_pow(-2 * m.delta as i32));
        Ok(lhs == rhs)
    }

    /// `v^Delta sum_E gamma(E) C_E`, where `gamma(E)` is the entry stored under `E`.
    pub fn beta_from_gamma(&self, t: &GammaTable) -> Result<HeckeElt, GrError> {
        self.gamma_sum(t, 1)
    }

    /// `(-1)^{d'} v^Delta sum_E gamma(E) C_E`, for tables listing the
    /// coefficients of the dual object.
    pub fn beta_from_gamma_bullet(&self, t: &GammaTable, dprime_parity: i64) -> Result<HeckeElt, GrError> {
        self.gamma_sum(t, if dprime_parity.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    fn gamma_sum(&self, t: &GammaTable, sign: i64) -> Result<HeckeElt, GrError> {
        let alg = self.algebra();
        let reps = heckerep::irreducibles(alg)?;
        let mut out = HeckeElt::zero(alg);
        for (label, c) in &t.gamma {
            let rep = reps
                .iter()
                .find(|r| r.label() == label)
                .ok_or_else(|| GrError::MalformedTable(format!("unknown representation {label:?}")))?;
            let c = FracLaurent::from_rational(c).shift(t.delta as i32).scale_int(sign);
            out = &out + &heckerep::c_e(&self.kl, rep).scale(&c);
        }
        Ok(out)
    }

    /// Converts `Kbar`-coordinates at `v = 1` to `K`-coordinates and returns
    /// the nonzero entries of minimal length, with whether they are conjugate.
    pub fn gr1_minimal_support(&self, kbar: &BTreeMap<CoxeterElement, BigInt>) -> (BTreeSet<CoxeterElement>, bool) {
        let g = self.kl.group();
        let one = BigRational::one();
        let k: Vec<(CoxeterElement, BigInt)> = g
            .elements()
            .map(|y| {
                let mut acc = BigInt::zero();
                for (&w, c) in kbar {
                    let qp = self.kl.inverse_kl(w, y);
                    if !qp.is_zero() {
                        let val = qp.specialize(&one, SpecializeMode::V).expect("polynomial");
                        acc += val.to_integer() * c;
                    }
                }
                (y, acc)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let Some(min_len) = k.iter().map(|(y, _)| g.length(*y)).min() else {
            return (BTreeSet::new(), true);
        };
        let support: BTreeSet<_> = k.iter().map(|(y, _)| *y).filter(|y| g.length(*y) == min_len).collect();
        let classes = g.conjugacy_classes();
        let first = *support.iter().next().unwrap();
        let class = classes.iter().find(|c| c.contains(&first)).unwrap();
        let single = support.iter().all(|y| class.contains(y));
        (support, single)
    }
}

/// `P(1)` as a rational matrix, rows `y`, columns `w`.
pub fn p_matrix_at_one(kl: &KlTable) -> FracMatrix {
    let one = BigRational::one();
    let rows = kl
        .p_matrix()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|p| FracLaurent::from_rational(&p.specialize(&one, SpecializeMode::V).expect("polynomial")))
                .collect()
        })
        .collect();
    FracMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn functor(ty: &str) -> GrFunctor {
        let alg = HeckeAlgebra::new(ty.parse().unwrap()).unwrap();
        GrFunctor::new(Arc::new(KlTable::new(alg)))
    }

    fn v(e: i32) -> LaurentPoly {
        LaurentPoly::v_pow(e)
    }

    fn sign_of(l: usize) -> FracLaurent {
        FracLaurent::from_int(if l % 2 == 0 { 1 } else { -1 })
    }

    #[test]
    fn psi_sends_signed_basis_to_unit_vectors() {
        let f = functor("A2");
        let alg = f.algebra().clone();
        let g = alg.group().clone();
        assert_eq!(
            f.psi(&HeckeElt::one(&alg)).unwrap(),
            GrElt::from_coeffs(&alg, Side::Z, [(g.identity(), LaurentPoly::one())])
        );
        for w in g.elements() {
            let h = f.kl().c_basis(w).scale(&sign_of(g.length(w)));
            let got = f.psi(&h).unwrap();
            assert_eq!(got, GrElt::from_coeffs(&alg, Side::Z, [(w, LaurentPoly::one())]));
            assert_eq!(f.psi_inverse(&got).unwrap(), h);
        }
    }

    #[test]
    fn psi_rejects_fractions() {
        let f = functor("A1");
        let alg = f.algebra().clone();
        let half = FracLaurent::new(LaurentPoly::one(), LaurentPoly::one() + v(1)).unwrap();
        let h = HeckeElt::scalar(&alg, half);
        assert!(matches!(f.psi(&h), Err(GrError::NonLaurentCoefficient(_))));
    }

    #[test]
    fn a1_gr_tau_example() {
        let f = functor("A1");
        let alg = f.algebra().clone();
        let g = alg.group().clone();
        let (e, s) = (g.identity(), g.generator(0));
        let x = f.psi(&f.kl().c_basis(e)).unwrap();
        let got = f.gr_tau(&x).unwrap();
        assert_eq!(got, GrElt::from_coeffs(&alg, Side::ZPrime, [(s, -v(1)), (e, -LaurentPoly::one())]));
        assert!(matches!(f.gr_tau(&got), Err(GrError::SideMismatch { .. })));
    }

    #[test]
    fn gr_tau_on_longest_element() {
        for ty in ["A1", "A2", "B2"] {
            let f = functor(ty);
            let g = f.algebra().group().clone();
            let w0 = g.longest_element();
            let x = f.psi(&f.kl().c_basis(w0)).unwrap();
            let want = f.psi_prime(&f.kl().c_basis(w0)).unwrap().scale(&v(2 * g.length(w0) as i32));
            assert_eq!(f.gr_tau(&x).unwrap(), want);
        }
    }

    #[test]
    fn duality_fixes_basis() {
        let f = functor("B2");
        let g = f.algebra().group().clone();
        for w in g.elements() {
            let x = f.psi(&f.kl().c_basis(w)).unwrap();
            assert_eq!(f.duality(&x).unwrap(), x);
        }
    }

    fn random_gr(alg: &Arc<HeckeAlgebra>, coeffs: &[(i64, i32)]) -> GrElt {
        let g = alg.group();
        GrElt::from_coeffs(
            alg,
            Side::Z,
            coeffs.iter().enumerate().map(|(i, &(c, e))| (g.element(i % g.order()), LaurentPoly::monomial(c, e))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn gr_identities(coeffs in proptest::collection::vec((-3i64..4, -4i32..5), 0..8), ty in prop::sample::select(vec!["A2", "B2"])) {
            let f = functor(ty);
            let alg = f.algebra().clone();
            let x = random_gr(&alg, &coeffs);
            prop_assert_eq!(f.psi(&f.psi_inverse(&x).unwrap()).unwrap(), x.clone());
            prop_assert_eq!(f.duality(&f.duality(&x).unwrap()).unwrap(), x.clone());
            let tau = f.gr_tau(&x).unwrap();
            prop_assert_eq!(f.gr_tau_tilde(&tau.relabel(Side::Z)).unwrap().relabel(Side::Z), f.psi(&{
                let w0 = alg.group().longest_element();
                f.psi_inverse(&x).unwrap().left_mul_t(w0).left_mul_t_inverse(w0)
            }).unwrap());
            let via_duality = f.duality(&f.gr_tau(&f.duality(&x).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(f.gr_tau_tilde(&x).unwrap(), via_duality);
        }

        #[test]
        fn phi_is_inverted_by_q(coeffs in proptest::collection::vec((-3i64..4, -4i32..5), 0..8)) {
            let f = functor("A3");
            let g = f.algebra().group().clone();
            let k: BTreeMap<_, _> = coeffs
                .iter()
                .enumerate()
                .map(|(i, &(c, e))| (g.element((i * 5) % g.order()), LaurentPoly::monomial(c, e)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            prop_assert_eq!(f.phi_base_change_inverse(&f.phi_base_change(&k)), k);
        }
    }

    #[test]
    fn gr_tau_then_tilde_is_identity() {
        for ty in ["A1", "A2", "B2", "G2"] {
            let f = functor(ty);
            let g = f.algebra().group().clone();
            for w in g.elements() {
                let x = GrElt::from_coeffs(f.algebra(), Side::Z, [(w, LaurentPoly::one())]);
                let back = f.gr_tau_tilde(&f.gr_tau(&x).unwrap().relabel(Side::Z)).unwrap();
                assert_eq!(back.relabel(Side::Z), x);
            }
        }
    }

    #[test]
    fn phi_examples() {
        let f = functor("A2");
        let g = f.algebra().group().clone();
        let e = g.identity();
        let out = f.phi_base_change(&BTreeMap::from([(e, LaurentPoly::one())]));
        for w in g.elements() {
            assert_eq!(out.get(&w).cloned().unwrap_or_default(), f.kl().kl_polynomial(e, w).dilate(2));
        }
        assert!(f.phi_base_change(&BTreeMap::new()).is_empty());
        let s1 = g.generator(0);
        let out = f.phi_base_change(&BTreeMap::from([(s1, LaurentPoly::one())]));
        assert_eq!(out[&g.longest_element()], LaurentPoly::one());
    }

    #[test]
    fn pairing_examples() {
        let f = functor("A1");
        let g = f.algebra().group().clone();
        let (e, s) = (g.identity(), g.generator(0));
        assert_eq!(f.pairing(e, e), v(-1));
        assert_eq!(f.pairing(s, s), LaurentPoly::one() + v(-1));
        let f = functor("B2");
        let g = f.algebra().group().clone();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(f.pairing(x, y), f.pairing(y, x));
            }
        }
    }

    #[test]
    fn beta_expansion_examples() {
        let f = functor("A1");
        let g = f.algebra().group().clone();
        let e = g.identity();
        let empty = MultTable::new(g.clone(), 3, 0, 0);
        assert!(f.beta_expansion(&empty).unwrap().is_zero());
        assert!(f.beta_twist_check(&empty).unwrap());

        let mut m = MultTable::new(g.clone(), 3, 0, 0);
        m.set(e, 2, 1);
        assert_eq!(f.beta_expansion(&m).unwrap().coeff(e), v(1));

        let mut bad = MultTable::new(g.clone(), 3, 1, 0);
        bad.set(e, 2, 1);
        assert!(matches!(f.beta_expansion(&bad), Err(GrError::ParityViolation { .. })));
        assert!(matches!(f.beta_twist_check(&m), Err(GrError::SymmetryViolation { .. })));

        // perverse normalization: j = l(w0 x) gives exponent 0
        let mut p = MultTable::new(g.clone(), 3, 1, 0);
        p.set(e, 1, 4);
        assert_eq!(f.beta_expansion(&p).unwrap().coeff(e), LaurentPoly::constant(4));
    }

    #[test]
    fn twist_check_on_symmetric_pairs() {
        let f = functor("A2");
        let g = f.algebra().group().clone();
        for x in g.elements() {
            let mut m = MultTable::new(g.clone(), 8, 0, 0);
            let j0 = 2 * (x.index() as i32 % 3);
            m.set(x, j0, 1);
            m.set(x, m.partner(x, j0), 1);
            assert!(f.beta_twist_check(&m).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn beta_expansion_matches_naive_sum(entries in proptest::collection::vec((0usize..6, -6i32..10, 1u64..4), 0..12), d_a in 0u32..2) {
            let f = functor("A2");
            let g = f.algebra().group().clone();
            let mut m = MultTable::new(g.clone(), 8, d_a, 0);
            for &(i, j, c) in &entries {
                let j = 2 * j + d_a as i32;
                m.add(g.element(i), j, c);
            }
            let got = f.beta_expansion(&m).unwrap();
            let w0 = g.longest_element();
            for x in g.elements() {
                let mut want = LaurentPoly::zero();
                for j in -40..40 {
                    let c = m.get(x, j);
                    if c != 0 {
                        let l = g.length(g.product(w0, x)) as i32;
                        want += &LaurentPoly::monomial(c as i64, j - l);
                    }
                }
                prop_assert_eq!(got.coeff(x), want);
            }
        }
    }

    #[test]
    fn json_round_trips() {
        let s = r#"{"type":"A2","delta":8,"dA":5,"dprimeA":3,"mult":[{"x":[1],"j":5,"m":2},{"x":[2,1],"j":7,"m":1}]}"#;
        let m = MultTable::from_json(s).unwrap();
        assert_eq!(m.get(m.group().generator(0), 5), 2);
        assert_eq!(MultTable::from_json(&m.to_json()).unwrap(), m);
        assert!(matches!(MultTable::from_json("{}"), Err(GrError::MalformedTable(_))));

        let t = GammaTable::from_json(r#"{"delta":8,"gamma":[{"E":"sgn","c":"1/2"},{"E":"triv","c":"-3"}]}"#).unwrap();
        assert_eq!(t.gamma["sgn"], BigRational::new(1.into(), 2.into()));
        let back: GammaTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        assert!(GammaTable::from_json(r#"{"delta":1,"gamma":[{"E":"sgn","c":"x"}]}"#).is_err());
    }

    #[test]
    fn beta_from_gamma_examples() {
        let f = functor("A1");
        let alg = f.algebra().clone();
        let s = alg.group().generator(0);
        let zero = GammaTable { delta: 3, gamma: BTreeMap::new() };
        assert!(f.beta_from_gamma(&zero).unwrap().is_zero());
        let sgn = GammaTable { delta: 3, gamma: BTreeMap::from([("sgn".to_string(), BigRational::one())]) };
        assert_eq!(f.beta_from_gamma(&sgn).unwrap(), -&f.kl().c_basis(s).scale(&FracLaurent::v_pow(3)));
        assert_eq!(f.beta_from_gamma_bullet(&sgn, 1).unwrap(), f.kl().c_basis(s).scale(&FracLaurent::v_pow(3)));
        let f5 = functor("I2:5");
        assert!(matches!(f5.beta_from_gamma(&sgn), Err(GrError::Rep(RepError::UnsupportedType(_)))));
    }

    /// The gamma route agrees with the multiplicity route when the
    /// multiplicities come from the trace formula.
    #[test]
    fn gamma_and_trace_routes_agree() {
        for ty in ["A1", "A2", "B2"] {
            let f = functor(ty);
            let alg = f.algebra().clone();
            let g = alg.group().clone();
            let w0 = g.longest_element();
            let reps = heckerep::irreducibles(&alg).unwrap();
            let delta = 5u32;
            let gamma: BTreeMap<String, BigRational> = reps
                .iter()
                .enumerate()
                .map(|(i, r)| (r.label().to_string(), BigRational::new((i as i64 * 3 - 2).into(), 1.into())))
                .collect();
            let table = GammaTable { delta, gamma: gamma.clone() };
            // coordinate x: v^Delta sum_E gamma(E) tr(c_{w0 x}, E)
            let mut coords = Vec::new();
            for x in g.elements() {
                let mut acc = FracLaurent::zero();
                for r in &reps {
                    let t = heckerep::trace_c(f.kl(), &r.traces_t(), g.product(w0, x));
                    acc += &(&t * &FracLaurent::from_rational(&gamma[r.label()]));
                }
                coords.push((x, acc.shift(delta as i32).into_laurent().unwrap()));
            }
            let gr = GrElt::from_coeffs(&alg, Side::ZPrime, coords);
            assert_eq!(f.psi_inverse(&gr).unwrap(), f.beta_from_gamma(&table).unwrap(), "{ty}");
        }
    }

    #[test]
    fn gr1_minimal_support_examples() {
        let f = functor("A2");
        let g = f.algebra().group().clone();
        let e = g.identity();
        let (supp, single) = f.gr1_minimal_support(&BTreeMap::from([(e, BigInt::one())]));
        assert_eq!(supp, BTreeSet::from([e]));
        assert!(single);

        // oracle: solve P(1)^T k = kbar by explicit inversion
        let pinv = p_matrix_at_one(f.kl()).inverse().unwrap();
        for w in g.elements() {
            let (supp, single) = f.gr1_minimal_support(&BTreeMap::from([(w, BigInt::one())]));
            let k: Vec<_> = g.elements().filter(|y| !pinv[(w.index(), y.index())].is_zero()).collect();
            let min = k.iter().map(|y| g.length(*y)).min().unwrap();
            let want: BTreeSet<_> = k.into_iter().filter(|y| g.length(*y) == min).collect();
            assert_eq!(supp, want);
            assert!(single);
        }

        // K-support {s1, s2}
        let (s1, s2) = (g.generator(0), g.generator(1));
        let kbar = f.phi_base_change(&BTreeMap::from([(s1, LaurentPoly::one()), (s2, LaurentPoly::one())]));
        let one = BigRational::one();
        let kbar1: BTreeMap<_, _> =
            kbar.iter().map(|(&w, p)| (w, p.specialize(&one, SpecializeMode::V).unwrap().to_integer())).collect();
        let (supp, single) = f.gr1_minimal_support(&kbar1);
        assert_eq!(supp, BTreeSet::from([s1, s2]));
        assert!(single);

        let (supp, single) = f.gr1_minimal_support(&BTreeMap::from([(e, BigInt::one()), (s1, BigInt::from(-1))]));
        assert_eq!(supp.len(), 1);
        assert!(single);
        let (_, single) = f.gr1_minimal_support(&BTreeMap::from([
            (e, BigInt::one()),
            (s1, BigInt::one()),
            (s2, BigInt::one()),
            (g.product(s1, s2), BigInt::one()),
        ]));
        assert!(single);
    }
}
