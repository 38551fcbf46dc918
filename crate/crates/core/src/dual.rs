//! The dual module `H* = Hom(H, A)` in the basis `c~_w`, defined by
//! `c~_x(c_y) = (-1)^{l(x)} delta_{x,y}`.
//!
//! `H` acts on `H*` by `(h * phi)(h1) = phi(t(h^dagger) h1)`, and
//! `Lambda: c~_w -> c_{w w0}` intertwines this action with left multiplication.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::coxeter::{CoxeterElement, CoxeterGroup, CoxeterType};
use crate::hecke::{Coeffs, HeckeAlgebra, HeckeElt, HeckeError};
use crate::klbasis::KlTable;
use crate::laurent::{FracLaurent, LaurentPoly};
use crate::matrix::FracMatrix;

/// An element of `H*` in `c~`-coordinates.
#[derive(Clone)]
pub struct DualElt {
    alg: Arc<HeckeAlgebra>,
    coeffs: Coeffs,
}

impl PartialEq for DualElt {
    fn eq(&self, other: &Self) -> bool {
        self.coxeter_type() == other.coxeter_type() && self.coeffs == other.coeffs
    }
}

impl Eq for DualElt {}

impl DualElt {
    pub fn zero(alg: &Arc<HeckeAlgebra>) -> Self {
        Self { alg: alg.clone(), coeffs: Coeffs::new() }
    }

    /// The basis functional `c~_w`.
    pub fn basis(alg: &Arc<HeckeAlgebra>, w: CoxeterElement) -> Self {
        Self::from_coeffs(alg, [(w, FracLaurent::one())])
    }

    pub fn from_coeffs<I>(alg: &Arc<HeckeAlgebra>, terms: I) -> Self
    where
        I: IntoIterator<Item = (CoxeterElement, FracLaurent)>,
    {
        let mut coeffs = Coeffs::new();
        for (w, c) in terms {
            *coeffs.entry(w).or_default() += &c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { alg: alg.clone(), coeffs }
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        self.alg.group()
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &FracLaurent) -> Self {
        Self::from_coeffs(&self.alg, self.coeffs.iter().map(|(&w, x)| (w, x * c)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, HeckeError> {
        check(&self.alg, &other.alg)?;
        Ok(Self::from_coeffs(&self.alg, self.coeffs.iter().chain(&other.coeffs).map(|(&w, c)| (w, c.clone()))))
    }
}

fn check(a: &HeckeAlgebra, b: &HeckeAlgebra) -> Result<(), HeckeError> {
    if a.coxeter_type() != b.coxeter_type() {
        return Err(HeckeError::GroupMismatch(a.coxeter_type(), b.coxeter_type()));
    }
    Ok(())
}

impl Add<&DualElt> for &DualElt {
    type Output = DualElt;
    fn add(self, rhs: &DualElt) -> DualElt {
        self.checked_add(rhs).expect("group mismatch")
    }
}

impl Sub<&DualElt> for &DualElt {
    type Output = DualElt;
    fn sub(self, rhs: &DualElt) -> DualElt {
        self + &-rhs
    }
}

impl Neg for &DualElt {
    type Output = DualElt;
    fn neg(self) -> DualElt {
        DualElt { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|(&w, c)| (w, -c)).collect() }
    }
}

impl fmt::Debug for DualElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.group();
        let mut m = f.debug_map();
        for (w, c) in &self.coeffs {
            m.entry(&g.labels(*w), &c.to_string());
        }
        m.finish()
    }
}

fn sign(l: usize) -> i64 {
    if l % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Operations on `H*` that need the Kazhdan-Lusztig data.
pub struct DualModule {
    kl: Arc<KlTable>,
}

impl DualModule {
    pub fn new(kl: Arc<KlTable>) -> Self {
        Self { kl }
    }

    pub fn kl(&self) -> &Arc<KlTable> {
        &self.kl
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        self.kl.algebra()
    }

    fn check(&self, alg: &HeckeAlgebra) -> Result<(), HeckeError> {
        check(self.algebra(), alg)
    }

    /// `phi(h)`.
    pub fn pair(&self, phi: &DualElt, h: &HeckeElt) -> Result<FracLaurent, HeckeError> {
        self.check(phi.algebra())?;
        self.check(h.algebra())?;
        let g = phi.group();
        let d = self.kl.expand_in_c(h);
        let mut out = FracLaurent::zero();
        for (x, c) in phi.coeffs() {
            if let Some(dx) = d.get(x) {
                out += &(c * dx).scale_int(sign(g.length(*x)));
            }
        }
        Ok(out)
    }

    /// Matrix `M` with `t(h^dagger) c_y = sum_x M[x,y] c_x`.
    fn twisted_left_matrix(&self, h: &HeckeElt) -> FracMatrix {
        let g = h.group();
        let n = g.order();
        let k = h.dagger().transpose();
        let mut m = FracMatrix::zeros(n, n);
        for y in g.elements() {
            let prod = &k * &self.kl.c_basis(y);
            for (x, c) in self.kl.expand_in_c(&prod) {
                m[(x.index(), y.index())] = c;
            }
        }
        m
    }

    /// The action of `h` on `H*` as a matrix on `c~`-coordinates:
    /// `(h * phi)_y = sum_x A[y,x] phi_x`.
    pub fn star_matrix(&self, h: &HeckeElt) -> Result<FracMatrix, HeckeError> {
        self.check(h.algebra())?;
        let g = h.group();
        let n = g.order();
        let m = self.twisted_left_matrix(h);
        let mut a = FracMatrix::zeros(n, n);
        for x in g.elements() {
            for y in g.elements() {
                let c = &m[(x.index(), y.index())];
                if !c.is_zero() {
                    a[(y.index(), x.index())] = c.scale_int(sign(g.length(x) + g.length(y)));
                }
            }
        }
        Ok(a)
    }

    /// `h * phi`, from the definition.
    pub fn star_action(&self, h: &HeckeElt, phi: &DualElt) -> Result<DualElt, HeckeError> {
        self.check(phi.algebra())?;
        let a = self.star_matrix(h)?;
        Ok(apply_star_matrix(&a, phi))
    }

    /// `T_s * c~_w` by the closed rule:
    /// `v^2 c~_w` if `sw > w`, else `-c~_w + sum_{y: sy > y} mu(w,y) v c~_y`.
    pub fn star_ts(&self, s: usize, w: CoxeterElement) -> DualElt {
        let alg = self.algebra();
        let g = alg.group();
        if !g.is_left_descent(s, w) {
            return DualElt::from_coeffs(alg, [(w, FracLaurent::v_pow(2))]);
        }
        let mut terms = vec![(w, -FracLaurent::one())];
        for y in g.elements() {
            if g.is_left_descent(s, y) {
                continue;
            }
            let m = self.kl.mu(w, y);
            if m != 0 {
                terms.push((y, FracLaurent::from_poly(LaurentPoly::monomial(m as i64, 1))));
            }
        }
        DualElt::from_coeffs(alg, terms)
    }

    /// `Lambda(c~_w) = c_{w w0}`, extended linearly.
    pub fn lambda(&self, phi: &DualElt) -> HeckeElt {
        let g = phi.group();
        let w0 = g.longest_element();
        let coords: Coeffs = phi.coeffs().iter().map(|(&w, c)| (g.product(w, w0), c.clone())).collect();
        self.kl.expand_in_t(&coords)
    }

    /// The inverse of [`Self::lambda`].
    pub fn lambda_inverse(&self, h: &HeckeElt) -> DualElt {
        let g = h.group();
        let w0 = g.longest_element();
        let coords = self.kl.expand_in_c(h);
        DualElt::from_coeffs(self.algebra(), coords.into_iter().map(|(w, c)| (g.product(w, w0), c)))
    }

    /// `(a_{x,y})` with `T_{w0}^{-1} c_x = sum_y a_{x,y} c_y`; rows and columns in ShortLex order.
    pub fn a_coeffs(&self) -> FracMatrix {
        let alg = self.algebra();
        let w0 = alg.group().longest_element();
        self.coefficient_matrix(|x| self.kl.c_basis(x).left_mul_t_inverse(w0))
    }

    /// `(b_{x,y})` with `(-v^2)^{-l(w0)} T_{w0} c_x = sum_y b_{x,y} c_y`.
    pub fn b_coeffs(&self) -> FracMatrix {
        let alg = self.algebra();
        let g = alg.group();
        let w0 = g.longest_element();
        let l = g.length(w0);
        let factor = FracLaurent::v_pow(-2 * l as i32).scale_int(sign(l));
        self.coefficient_matrix(|x| self.kl.c_basis(x).left_mul_t(w0).scale(&factor))
    }

    fn coefficient_matrix(&self, f: impl Fn(CoxeterElement) -> HeckeElt) -> FracMatrix {
        let g = self.algebra().group();
        let n = g.order();
        let mut m = FracMatrix::zeros(n, n);
        for x in g.elements() {
            for (y, c) in self.kl.expand_in_c(&f(x)) {
                m[(x.index(), y.index())] = c;
            }
        }
        m
    }
}

/// Applies a matrix from [`DualModule::star_matrix`] to `phi`.
pub fn apply_star_matrix(a: &FracMatrix, phi: &DualElt) -> DualElt {
    let g = phi.group();
    let mut terms = Vec::new();
    for y in g.elements() {
        let mut acc = FracLaurent::zero();
        for (x, c) in phi.coeffs() {
            let e = &a[(y.index(), x.index())];
            if !e.is_zero() {
                acc += &(e * c);
            }
        }
        terms.push((y, acc));
    }
    DualElt::from_coeffs(phi.algebra(), terms)
}

/// Every `(x, z)` violating `a_{w0 x, w0 z} = a_{x w0, z w0} = (-1)^{l(x)-l(z)} b_{z,x}`.
pub fn ab_symmetry_violations(
    g: &CoxeterGroup,
    a: &FracMatrix,
    b: &FracMatrix,
) -> Vec<(CoxeterElement, CoxeterElement)> {
    let w0 = g.longest_element();
    let mut bad = Vec::new();
    for x in g.elements() {
        for z in g.elements() {
            let left = &a[(g.product(w0, x).index(), g.product(w0, z).index())];
            let right = &a[(g.product(x, w0).index(), g.product(z, w0).index())];
            let bzx = b[(z.index(), x.index())].scale_int(sign(g.length(x) + g.length(z)));
            if *left != *right || *left != bzx {
                bad.push((x, z));
            }
        }
    }
    bad
}
