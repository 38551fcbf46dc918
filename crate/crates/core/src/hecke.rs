//! The Iwahori-Hecke algebra `H` of a finite Coxeter group in the `T`-basis.
//!
//! Relations: `T_w T_w' = T_{ww'}` when lengths add, and
//! `(T_s + 1)(T_s - v^2) = 0`. Coefficients live in `Q(v)` so that elements
//! built from traces with denominators share one type with everything else.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::coxeter::{CoxeterElement, CoxeterError, CoxeterGroup, CoxeterType};
use crate::laurent::{FracLaurent, LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("Hecke elements over different groups ({0} vs {1})")]
    GroupMismatch(CoxeterType, CoxeterType),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("malformed Hecke element JSON: {0}")]
    MalformedJson(String),
}

pub type Coeffs = BTreeMap<CoxeterElement, FracLaurent>;

/// Shared per-group context: the group tables plus lazily computed `T_w^{-1}`.
pub struct HeckeAlgebra {
    group: Arc<CoxeterGroup>,
    inverses: OnceLock<Vec<Coeffs>>,
    q: FracLaurent,
    q_minus_one: FracLaurent,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeAlgebra({})", self.group.coxeter_type())
    }
}

impl HeckeAlgebra {
    pub fn new(ty: CoxeterType) -> Result<Arc<Self>, HeckeError> {
        Ok(Self::from_group(CoxeterGroup::new(ty)?))
    }

    pub fn from_group(group: Arc<CoxeterGroup>) -> Arc<Self> {
        Arc::new(Self {
            group,
            inverses: OnceLock::new(),
            q: FracLaurent::v_pow(2),
            q_minus_one: FracLaurent::from_poly(LaurentPoly::v_pow(2) - LaurentPoly::one()),
        })
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.group.coxeter_type()
    }

    /// `T_w^{-1}` for every `w`, built along the ShortLex tree:
    /// `T_{ws}^{-1} = T_s^{-1} T_w^{-1}`.
    fn inverses(&self) -> &[Coeffs] {
        self.inverses.get_or_init(|| {
            let g = &self.group;
            let mut out: Vec<Coeffs> = Vec::with_capacity(g.order());
            out.push(BTreeMap::from([(g.identity(), FracLaurent::one())]));
            for w in g.elements().skip(1) {
                let word = g.word(w);
                let s = *word.last().unwrap();
                let parent = g.from_word(&word[..word.len() - 1]).unwrap();
                let next = self.left_mul_gen_inverse(s, &out[parent.index()]);
                out.push(next);
            }
            out
        })
    }

    /// `T_s * h`
    fn left_mul_gen(&self, s: usize, h: &Coeffs) -> Coeffs {
        let g = &self.group;
        let mut out = Coeffs::new();
        for (&w, c) in h {
            let sw = g.mul_gen_left(s, w);
            if g.length(sw) > g.length(w) {
                accumulate(&mut out, sw, c.clone());
            } else {
                accumulate(&mut out, w, c * &self.q_minus_one);
                accumulate(&mut out, sw, c * &self.q);
            }
        }
        out
    }

    /// `h * T_s`
    fn right_mul_gen(&self, h: &Coeffs, s: usize) -> Coeffs {
        let g = &self.group;
        let mut out = Coeffs::new();
        for (&w, c) in h {
            let ws = g.mul_gen_right(w, s);
            if g.length(ws) > g.length(w) {
                accumulate(&mut out, ws, c.clone());
            } else {
                accumulate(&mut out, w, c * &self.q_minus_one);
                accumulate(&mut out, ws, c * &self.q);
            }
        }
        out
    }

    /// `T_s^{-1} h = v^-2 T_s h + (v^-2 - 1) h`
    fn left_mul_gen_inverse(&self, s: usize, h: &Coeffs) -> Coeffs {
        let vm2 = FracLaurent::v_pow(-2);
        let coef = &vm2 - &FracLaurent::one();
        let mut out: Coeffs = self.left_mul_gen(s, h).into_iter().map(|(w, c)| (w, &c * &vm2)).collect();
        for (&w, c) in h {
            accumulate(&mut out, w, c * &coef);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn accumulate(map: &mut Coeffs, w: CoxeterElement, c: FracLaurent) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += &c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// An element of `H` in the `T`-basis.
#[derive(Clone)]
pub struct HeckeElt {
    alg: Arc<HeckeAlgebra>,
    coeffs: Coeffs,
}

impl PartialEq for HeckeElt {
    fn eq(&self, other: &Self) -> bool {
        self.alg.coxeter_type() == other.alg.coxeter_type() && self.coeffs == other.coeffs
    }
}

impl Eq for HeckeElt {}

impl HeckeElt {
    pub fn zero(alg: &Arc<HeckeAlgebra>) -> Self {
        Self { alg: alg.clone(), coeffs: Coeffs::new() }
    }

    pub fn one(alg: &Arc<HeckeAlgebra>) -> Self {
        Self::t(alg, alg.group.identity())
    }

    /// The basis element `T_w`.
    pub fn t(alg: &Arc<HeckeAlgebra>, w: CoxeterElement) -> Self {
        Self { alg: alg.clone(), coeffs: BTreeMap::from([(w, FracLaurent::one())]) }
    }

    /// `T_s` for a 0-based generator index.
    pub fn t_gen(alg: &Arc<HeckeAlgebra>, s: usize) -> Self {
        Self::t(alg, alg.group.generator(s))
    }

    pub fn scalar(alg: &Arc<HeckeAlgebra>, c: FracLaurent) -> Self {
        Self::from_coeffs(alg, [(alg.group.identity(), c)])
    }

    pub fn from_coeffs<I>(alg: &Arc<HeckeAlgebra>, terms: I) -> Self
    where
        I: IntoIterator<Item = (CoxeterElement, FracLaurent)>,
    {
        let mut coeffs = Coeffs::new();
        for (w, c) in terms {
            accumulate(&mut coeffs, w, c);
        }
        Self { alg: alg.clone(), coeffs }
    }

    /// `T_w^{-1}`.
    pub fn t_inverse(alg: &Arc<HeckeAlgebra>, w: CoxeterElement) -> Self {
        Self { alg: alg.clone(), coeffs: alg.inverses()[w.index()].clone() }
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.alg.group
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.alg.coxeter_type()
    }

    pub fn coeff(&self, w: CoxeterElement) -> FracLaurent {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Coeffs {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn with(&self, coeffs: Coeffs) -> Self {
        Self { alg: self.alg.clone(), coeffs }
    }

    fn check(&self, other: &Self) -> Result<(), HeckeError> {
        let (a, b) = (self.coxeter_type(), other.coxeter_type());
        if a == b {
            Ok(())
        } else {
            Err(HeckeError::GroupMismatch(a, b))
        }
    }

    pub fn scale(&self, c: &FracLaurent) -> Self {
        if c.is_zero() {
            return self.with(Coeffs::new());
        }
        self.with(self.coeffs.iter().map(|(&w, x)| (w, x * c)).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check(other)?;
        let mut out = self.coeffs.clone();
        for (&w, c) in &other.coeffs {
            accumulate(&mut out, w, c.clone());
        }
        Ok(self.with(out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.checked_add(&-other)
    }

    /// `T_s * self`
    pub fn left_mul_gen(&self, s: usize) -> Self {
        self.with(self.alg.left_mul_gen(s, &self.coeffs))
    }

    /// `T_s^{-1} * self`
    pub fn left_mul_gen_inverse(&self, s: usize) -> Self {
        self.with(self.alg.left_mul_gen_inverse(s, &self.coeffs))
    }

    /// `T_w * self`, one generator at a time.
    pub fn left_mul_t(&self, w: CoxeterElement) -> Self {
        let mut acc = self.coeffs.clone();
        for &s in self.alg.group.word(w).iter().rev() {
            acc = self.alg.left_mul_gen(s, &acc);
        }
        self.with(acc)
    }

    /// `T_w^{-1} * self`, one generator at a time.
    pub fn left_mul_t_inverse(&self, w: CoxeterElement) -> Self {
        let mut acc = self.coeffs.clone();
        for &s in self.alg.group.word(w) {
            acc = self.alg.left_mul_gen_inverse(s, &acc);
        }
        self.with(acc)
    }

    /// `self * T_s`
    pub fn right_mul_gen(&self, s: usize) -> Self {
        self.with(self.alg.right_mul_gen(&self.coeffs, s))
    }

    /// Product in `H`, by repeated application of generators on the right.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check(other)?;
        let g = &self.alg.group;
        let mut out = Coeffs::new();
        if other.coeffs.len() * 4 >= g.order() {
            // self * T_y for every y, each obtained from its ShortLex parent
            let mut cache: Vec<Option<Coeffs>> = vec![None; g.order()];
            cache[0] = Some(self.coeffs.clone());
            for y in g.elements().skip(1) {
                let word = g.word(y);
                let parent = g.from_word(&word[..word.len() - 1]).unwrap();
                let prev = cache[parent.index()].as_ref().unwrap();
                cache[y.index()] = Some(self.alg.right_mul_gen(prev, *word.last().unwrap()));
            }
            for (&y, c) in &other.coeffs {
                for (&w, x) in cache[y.index()].as_ref().unwrap() {
                    accumulate(&mut out, w, x * c);
                }
            }
        } else {
            for (&y, c) in &other.coeffs {
                let mut acc = self.coeffs.clone();
                for &s in g.word(y) {
                    acc = self.alg.right_mul_gen(&acc, s);
                }
                for (w, x) in acc {
                    accumulate(&mut out, w, &x * c);
                }
            }
        }
        Ok(self.with(out))
    }

    /// Ring involution: `v -> v^-1` on scalars, `T_w -> T_{w^-1}^{-1}`.
    pub fn bar(&self) -> Self {
        let g = &self.alg.group;
        let inv = self.alg.inverses();
        let mut out = Coeffs::new();
        for (&w, c) in &self.coeffs {
            let cb = c.bar();
            for (&x, y) in &inv[g.inverse(w).index()] {
                accumulate(&mut out, x, &cb * y);
            }
        }
        self.with(out)
    }

    /// Linear antiautomorphism `T_w -> T_{w^-1}`.
    pub fn transpose(&self) -> Self {
        let g = &self.alg.group;
        self.with(self.coeffs.iter().map(|(&w, c)| (g.inverse(w), c.clone())).collect())
    }

    /// Linear involution `T_w -> (-v^2)^{l(w)} T_{w^-1}^{-1}`.
    pub fn dagger(&self) -> Self {
        let g = &self.alg.group;
        let inv = self.alg.inverses();
        let mut out = Coeffs::new();
        for (&w, c) in &self.coeffs {
            let l = g.length(w) as i32;
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let c = c.shift(2 * l).scale_int(sign);
            for (&x, y) in &inv[g.inverse(w).index()] {
                accumulate(&mut out, x, &c * y);
            }
        }
        self.with(out)
    }

    /// True iff `T_s h = h T_s` for every generator `s`.
    pub fn is_central(&self) -> bool {
        self.alg.group.generators().all(|s| self.left_mul_gen(s) == self.right_mul_gen(s))
    }

    /// JSON form `{"type": "A2", "coeffs": [{"w": [1,2], "c": {...}}, ...]}`, ShortLex order.
    pub fn to_json(&self) -> Value {
        let g = &self.alg.group;
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&w, c)| {
                let c = match c.as_laurent() {
                    Some(p) => serde_json::to_value(p).unwrap(),
                    None => serde_json::to_value(c).unwrap(),
                };
                serde_json::json!({ "w": g.labels(w), "c": c })
            })
            .collect();
        serde_json::json!({ "type": self.coxeter_type(), "coeffs": coeffs })
    }

    pub fn from_json(value: &Value) -> Result<Self, HeckeError> {
        #[derive(Deserialize, Serialize)]
        #[serde(untagged)]
        enum Coef {
            Frac(FracLaurent),
            Poly(LaurentPoly),
        }
        #[derive(Deserialize)]
        struct Term {
            w: Vec<usize>,
            c: Coef,
        }
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "type")]
            ty: CoxeterType,
            coeffs: Vec<Term>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| HeckeError::MalformedJson(e.to_string()))?;
        let alg = HeckeAlgebra::new(raw.ty)?;
        let mut terms = Vec::new();
        for t in raw.coeffs {
            let w = alg.group.from_labels(&t.w)?;
            let c = match t.c {
                Coef::Frac(f) => f,
                Coef::Poly(p) => FracLaurent::from_poly(p),
            };
            terms.push((w, c));
        }
        Ok(Self::from_coeffs(&alg, terms))
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let g = &self.alg.group;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&w, c)| {
                let word: Vec<String> = g.labels(w).iter().map(ToString::to_string).collect();
                format!("({c})T[{}]", word.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        self.checked_add(rhs).expect("Hecke addition")
    }
}

impl Sub<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        self.checked_sub(rhs).expect("Hecke subtraction")
    }
}

impl Mul<&HeckeElt> for &HeckeElt {
    type Output = HeckeElt;
    fn mul(self, rhs: &HeckeElt) -> HeckeElt {
        self.checked_mul(rhs).expect("Hecke multiplication")
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.with(self.coeffs.iter().map(|(&w, c)| (w, -c)).collect())
    }
}
