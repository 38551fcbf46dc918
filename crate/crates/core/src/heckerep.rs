//! Irreducible representations of `Q(v) (x) H` for small types, their traces,
//! the sign twist, and the central elements `C_E` and `C'_E`.
//!
//! Type `A_n` uses seminormal matrices on standard Young tableaux. Dihedral
//! types `I2(m)`, `m` in {3, 4, 6}, use explicit two-dimensional models.
//! Every model is checked against the defining relations in the tests.

use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::coxeter::{CoxeterElement, CoxeterGroup, CoxeterType};
use crate::hecke::{Coeffs, HeckeAlgebra, HeckeElt};
use crate::klbasis::KlTable;
use crate::laurent::{FracLaurent, LaurentError, LaurentPoly, SpecializeMode};
use crate::matrix::FracMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("no representation models for type {0}")]
    UnsupportedType(CoxeterType),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Clone)]
pub struct HeckeRep {
    alg: Arc<HeckeAlgebra>,
    label: String,
    gens: Vec<FracMatrix>,
}

impl std::fmt::Debug for HeckeRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HeckeRep").field("type", &self.alg.coxeter_type()).field("label", &self.label).finish()
    }
}

impl HeckeRep {
    /// A representation given by the images of the generators `T_s`.
    pub fn new(alg: &Arc<HeckeAlgebra>, label: impl Into<String>, gens: Vec<FracMatrix>) -> Self {
        assert_eq!(gens.len(), alg.group().rank());
        Self { alg: alg.clone(), label: label.into(), gens }
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        self.alg.group()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.gens[0].rows()
    }

    pub fn generator_matrix(&self, s: usize) -> &FracMatrix {
        &self.gens[s]
    }

    /// `rho(T_w)` for every `w`, indexed by `w.index()`.
    pub fn t_matrices(&self) -> Vec<FracMatrix> {
        let g = self.group();
        let mut out: Vec<FracMatrix> = Vec::with_capacity(g.order());
        out.push(FracMatrix::identity(self.dim()));
        for w in g.elements().skip(1) {
            let word = g.word(w);
            let parent = g.from_word(&word[..word.len() - 1]).unwrap();
            out.push(&out[parent.index()] * &self.gens[*word.last().unwrap()]);
        }
        out
    }

    pub fn matrix_t(&self, w: CoxeterElement) -> FracMatrix {
        let mut m = FracMatrix::identity(self.dim());
        for &s in self.group().word(w) {
            m = &m * &self.gens[s];
        }
        m
    }

    pub fn trace_t(&self, w: CoxeterElement) -> FracLaurent {
        self.matrix_t(w).trace()
    }

    /// `tr(T_w)` for every `w`.
    pub fn traces_t(&self) -> Vec<FracLaurent> {
        self.t_matrices().iter().map(FracMatrix::trace).collect()
    }

    /// `rho(h)` for an arbitrary element.
    pub fn matrix_of(&self, h: &HeckeElt) -> FracMatrix {
        let mats = self.t_matrices();
        let mut out = FracMatrix::zeros(self.dim(), self.dim());
        for (w, c) in h.coeffs() {
            out = &out + &mats[w.index()].scale(c);
        }
        out
    }

    /// `h -> rho(h^dagger)`: each `rho(T_s)` becomes `-rho(T_s) + (v^2 - 1)`.
    pub fn sign_twist(&self) -> HeckeRep {
        let n = self.dim();
        let shift = FracMatrix::scalar(n, &(&FracLaurent::v_pow(2) - &FracLaurent::one()));
        let gens = self.gens.iter().map(|m| &shift - m).collect();
        HeckeRep { alg: self.alg.clone(), label: twisted_label(self.alg.coxeter_type(), &self.label), gens }
    }

    /// Quadratic relation for every generator and braid relation for every pair.
    pub fn satisfies_relations(&self) -> bool {
        let n = self.dim();
        let one = FracMatrix::identity(n);
        let q = FracMatrix::scalar(n, &FracLaurent::v_pow(2));
        for m in &self.gens {
            if !(&(m + &one) * &(m - &q)).is_zero() {
                return false;
            }
        }
        let cm = self.alg.coxeter_type().coxeter_matrix();
        for s in 0..self.gens.len() {
            for t in s + 1..self.gens.len() {
                let (mut a, mut b) = (one.clone(), one.clone());
                for k in 0..cm[s][t] {
                    let (x, y) = if k % 2 == 0 { (s, t) } else { (t, s) };
                    a = &a * &self.gens[x];
                    b = &b * &self.gens[y];
                }
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    /// The character of the specialization at `v = 1`, indexed by `w.index()`.
    pub fn character_at_one(&self) -> Result<Vec<BigRational>, RepError> {
        let one = BigRational::from_integer(1.into());
        self.traces_t().iter().map(|t| Ok(t.specialize(&one, SpecializeMode::V)?)).collect()
    }
}

/// `tr(c_w)` from `rho(c_w) = v^{-l(w)} sum_y P_{y,w}(v^2) rho(T_y)`.
pub fn trace_c(kl: &KlTable, traces_t: &[FracLaurent], w: CoxeterElement) -> FracLaurent {
    let g = kl.group();
    let col = kl.column(w);
    let mut out = FracLaurent::zero();
    for y in g.elements() {
        let p = &col[y.index()];
        if !p.is_zero() {
            out += &(&FracLaurent::from_poly(p.dilate(2)) * &traces_t[y.index()]);
        }
    }
    out.shift(-(g.length(w) as i32))
}

/// `C_E = sum_x (-1)^{l(x)} tr(c_{w0 x}, E) c_x`, in the `T`-basis.
pub fn c_e(kl: &KlTable, rep: &HeckeRep) -> HeckeElt {
    let g = kl.group();
    let w0 = g.longest_element();
    let traces = rep.traces_t();
    let coords: Coeffs = g
        .elements()
        .map(|x| {
            let t = trace_c(kl, &traces, g.product(w0, x));
            (x, if g.length(x) % 2 == 0 { t } else { -t })
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    kl.expand_in_t(&coords)
}

/// `C'_E = sum_u v^{-2 l(u)} tr(T_{u^-1}, E) T_u`.
pub fn c_prime_e(rep: &HeckeRep) -> HeckeElt {
    let g = rep.group();
    let traces = rep.traces_t();
    HeckeElt::from_coeffs(
        rep.algebra(),
        g.elements().map(|u| (u, traces[g.inverse(u).index()].shift(-2 * g.length(u) as i32))),
    )
}

/// One representative per isomorphism class of irreducible representations.
pub fn irreducibles(alg: &Arc<HeckeAlgebra>) -> Result<Vec<HeckeRep>, RepError> {
    match alg.coxeter_type() {
        CoxeterType::A(n) => Ok(type_a_irreducibles(alg, n + 1)),
        CoxeterType::B2 => Ok(dihedral_irreducibles(alg, 4)),
        CoxeterType::G2 => Ok(dihedral_irreducibles(alg, 6)),
        CoxeterType::I2(m) if matches!(m, 3 | 4 | 6) => Ok(dihedral_irreducibles(alg, m)),
        other => Err(RepError::UnsupportedType(other)),
    }
}

/// The irreducible with the given label.
pub fn irreducible(alg: &Arc<HeckeAlgebra>, label: &str) -> Result<Option<HeckeRep>, RepError> {
    Ok(irreducibles(alg)?.into_iter().find(|r| r.label == label))
}

fn twisted_label(ty: CoxeterType, label: &str) -> String {
    match label {
        "triv" => return "sgn".into(),
        "sgn" => return "triv".into(),
        "1:1" => return "1:2".into(),
        "1:2" => return "1:1".into(),
        _ => {}
    }
    if let CoxeterType::A(_) = ty {
        if let Some(p) = parse_partition(label) {
            return partition_label(&conjugate(&p));
        }
    }
    label.to_string()
}

fn parse_partition(label: &str) -> Option<Vec<usize>> {
    let inner = label.strip_prefix('[')?.strip_suffix(']')?;
    inner.split(',').map(|x| x.trim().parse().ok()).collect()
}

fn conjugate(p: &[usize]) -> Vec<usize> {
    (0..p.first().copied().unwrap_or(0)).map(|j| p.iter().filter(|&&r| r > j).count()).collect()
}

fn partition_label(p: &[usize]) -> String {
    let n: usize = p.iter().sum();
    if p.len() == 1 {
        "triv".into()
    } else if p.len() == n {
        "sgn".into()
    } else {
        format!("[{}]", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Standard tableaux of shape `p`, each as `pos[k] = (row, col)` of entry `k`.
fn standard_tableaux(p: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn go(p: &[usize], filled: &mut Vec<usize>, pos: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if filled.iter().zip(p).all(|(a, b)| a == b) {
            out.push(pos.clone());
            return;
        }
        for r in 0..p.len() {
            let c = filled[r];
            if c < p[r] && (r == 0 || filled[r - 1] > c) {
                filled[r] += 1;
                pos.push((r, c));
                go(p, filled, pos, out);
                pos.pop();
                filled[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(p, &mut vec![0; p.len()], &mut Vec::new(), &mut out);
    out
}

/// `(q-1) q^r / (q^r - 1)` with `q = v^2`.
fn seminormal_diagonal(r: i32) -> FracLaurent {
    let q_minus_one = LaurentPoly::v_pow(2) - LaurentPoly::one();
    let qr = LaurentPoly::v_pow(2 * r);
    FracLaurent::new(&q_minus_one * &qr, &qr - &LaurentPoly::one()).expect("r != 0")
}

fn type_a_irreducibles(alg: &Arc<HeckeAlgebra>, n: usize) -> Vec<HeckeRep> {
    let q = FracLaurent::v_pow(2);
    partitions(n, n)
        .into_iter()
        .map(|p| {
            let tabs = standard_tableaux(&p);
            let d = tabs.len();
            let content = |t: &[(usize, usize)], k: usize| t[k].1 as i32 - t[k].0 as i32;
            let gens = (0..n - 1)
                .map(|i| {
                    let mut m = FracMatrix::zeros(d, d);
                    for (a, t) in tabs.iter().enumerate() {
                        let r = content(t, i + 1) - content(t, i);
                        if r == 1 {
                            m[(a, a)] = q.clone();
                            continue;
                        }
                        if r == -1 {
                            m[(a, a)] = -FracLaurent::one();
                            continue;
                        }
                        let mut swapped = t.clone();
                        swapped.swap(i, i + 1);
                        let b = tabs.iter().position(|u| *u == swapped).expect("swap stays standard");
                        let diag = seminormal_diagonal(r);
                        m[(a, a)] = diag.clone();
                        // column a holds the image of basis vector a
                        m[(b, a)] = if r > 0 { FracLaurent::one() } else { &(&diag * &seminormal_diagonal(-r)) + &q };
                    }
                    m
                })
                .collect();
            HeckeRep::new(alg, partition_label(&p), gens)
        })
        .collect()
}

fn dihedral_irreducibles(alg: &Arc<HeckeAlgebra>, m: usize) -> Vec<HeckeRep> {
    let q = FracLaurent::v_pow(2);
    let minus = -FracLaurent::one();
    let one_dim = |a: &FracLaurent, b: &FracLaurent| {
        vec![FracMatrix::from_rows(vec![vec![a.clone()]]), FracMatrix::from_rows(vec![vec![b.clone()]])]
    };
    let mut out = vec![HeckeRep::new(alg, "triv", one_dim(&q, &q)), HeckeRep::new(alg, "sgn", one_dim(&minus, &minus))];
    if m % 2 == 0 {
        out.push(HeckeRep::new(alg, "1:1", one_dim(&q, &minus)));
        out.push(HeckeRep::new(alg, "1:2", one_dim(&minus, &q)));
    }
    // c = q (2 + 2 cos(2 pi k / m))
    let factors: &[i64] = match m {
        3 => &[1],
        4 => &[2],
        6 => &[3, 1],
        _ => unreachable!(),
    };
    for (k, &f) in factors.iter().enumerate() {
        let zero = FracLaurent::zero();
        let t1 = FracMatrix::from_rows(vec![vec![minus.clone(), FracLaurent::one()], vec![zero.clone(), q.clone()]]);
        let t2 = FracMatrix::from_rows(vec![vec![q.clone(), zero], vec![q.scale_int(f), minus.clone()]]);
        out.push(HeckeRep::new(alg, format!("2:{}", k + 1), vec![t1, t2]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn alg(ty: &str) -> Arc<HeckeAlgebra> {
        HeckeAlgebra::new(ty.parse().unwrap()).unwrap()
    }

    const TYPES: [&str; 8] = ["A1", "A2", "A3", "A4", "B2", "G2", "I2:4", "I2:6"];

    #[test]
    fn relations_hold() {
        for ty in TYPES {
            for rep in irreducibles(&alg(ty)).unwrap() {
                assert!(rep.satisfies_relations(), "{ty} {}", rep.label());
                assert!(rep.sign_twist().satisfies_relations(), "{ty} twist {}", rep.label());
            }
        }
    }

    #[test]
    fn dimensions_and_counts() {
        for ty in TYPES {
            let a = alg(ty);
            let reps = irreducibles(&a).unwrap();
            let g = a.group();
            assert_eq!(reps.len(), g.conjugacy_classes().len(), "{ty}");
            assert_eq!(reps.iter().map(|r| r.dim() * r.dim()).sum::<usize>(), g.order(), "{ty}");
        }
        let dims = |ty: &str| {
            let mut d: Vec<_> = irreducibles(&alg(ty)).unwrap().iter().map(HeckeRep::dim).collect();
            d.sort();
            d
        };
        assert_eq!(dims("A2"), [1, 1, 2]);
        assert_eq!(dims("I2:4"), [1, 1, 1, 1, 2]);
        assert!(matches!(irreducibles(&alg("I2:5")), Err(RepError::UnsupportedType(_))));
    }

    #[test]
    fn a1_values() {
        let a = alg("A1");
        let kl = KlTable::new(a.clone());
        let g = a.group();
        let (e, s) = (g.identity(), g.generator(0));
        let triv = irreducible(&a, "triv").unwrap().unwrap();
        let sgn = irreducible(&a, "sgn").unwrap().unwrap();
        assert_eq!(triv.trace_t(s), FracLaurent::v_pow(2));
        assert_eq!(sgn.trace_t(s), FracLaurent::from_int(-1));
        assert_eq!(sgn.trace_t(e), FracLaurent::one());
        assert!(trace_c(&kl, &sgn.traces_t(), s).is_zero());
        assert_eq!(trace_c(&kl, &triv.traces_t(), s), &FracLaurent::v_pow(1) + &FracLaurent::v_pow(-1));
        assert_eq!(sgn.sign_twist().label(), "triv");
        assert_eq!(triv.sign_twist().generator_matrix(0)[(0, 0)], FracLaurent::from_int(-1));

        assert_eq!(c_e(&kl, &sgn), -&kl.c_basis(s));
        let t = |w, c: FracLaurent| HeckeElt::t(&a, w).scale(&c);
        assert_eq!(c_e(&kl, &triv), &t(e, FracLaurent::v_pow(1)) - &t(s, FracLaurent::v_pow(-1)));
        assert_eq!(c_prime_e(&sgn), &t(e, FracLaurent::one()) - &t(s, FracLaurent::v_pow(-2)));
    }

    fn traces_equal(a: &HeckeRep, b: &HeckeRep) -> bool {
        a.traces_t() == b.traces_t()
    }

    #[test]
    fn sign_twist_matches_labels() {
        for ty in TYPES {
            let a = alg(ty);
            let reps = irreducibles(&a).unwrap();
            for rep in &reps {
                let tw = rep.sign_twist();
                let target = reps.iter().find(|r| r.label() == tw.label()).expect("twisted label exists");
                assert!(traces_equal(&tw, target), "{ty} {}", rep.label());
                assert!(traces_equal(&tw.sign_twist(), rep));
            }
        }
        let a = alg("A2");
        let two = irreducible(&a, "[2,1]").unwrap().unwrap();
        assert!(traces_equal(&two, &two.sign_twist()));
    }

    #[test]
    fn traces_are_laurent() {
        for ty in TYPES {
            for rep in irreducibles(&alg(ty)).unwrap() {
                assert!(rep.traces_t().iter().all(|t| t.as_laurent().is_some()), "{ty} {}", rep.label());
            }
        }
    }

    /// The characters at `v = 1` form the character table of `W`:
    /// class functions, row-orthonormal, and column-orthogonal against
    /// centralizer orders found by brute force.
    #[test]
    fn characters_at_one_form_the_character_table() {
        for ty in TYPES {
            let a = alg(ty);
            let g = a.group();
            let classes = g.conjugacy_classes();
            let order = BigRational::from_integer(g.order().into());
            let chars: Vec<Vec<BigRational>> =
                irreducibles(&a).unwrap().iter().map(|r| r.character_at_one().unwrap()).collect();
            for chi in &chars {
                for class in &classes {
                    assert!(class.iter().all(|w| chi[w.index()] == chi[class[0].index()]));
                }
            }
            for (i, x) in chars.iter().enumerate() {
                for (j, y) in chars.iter().enumerate() {
                    let ip: BigRational =
                        g.elements().map(|w| &x[w.index()] * &y[g.inverse(w).index()]).sum::<BigRational>() / &order;
                    assert_eq!(ip.is_one(), i == j, "{ty}");
                    assert!(i == j || ip.is_zero());
                }
            }
            for c1 in &classes {
                for c2 in &classes {
                    let s: BigRational = chars.iter().map(|x| &x[c1[0].index()] * &x[c2[0].index()]).sum();
                    let centralizer = g.elements().filter(|&z| g.product(z, c1[0]) == g.product(c1[0], z)).count();
                    let want =
                        if c1 == c2 { BigRational::from_integer(centralizer.into()) } else { BigRational::zero() };
                    assert_eq!(s, want, "{ty}");
                }
            }
        }
    }

    #[test]
    fn central_elements() {
        for ty in ["A1", "A2", "A3", "I2:4", "I2:6", "B2", "G2"] {
            let a = alg(ty);
            let kl = KlTable::new(a.clone());
            let g = a.group();
            let w0 = g.longest_element();
            let l = g.length(w0) as i32;
            let factor = FracLaurent::v_pow(-l).scale_int(if l % 2 == 0 { 1 } else { -1 });
            for rep in irreducibles(&a).unwrap() {
                let c = c_e(&kl, &rep);
                let cp = c_prime_e(&rep);
                assert!(cp.is_central(), "{ty} {}", rep.label());
                assert!(c.left_mul_t_inverse(w0).is_central(), "{ty} {}", rep.label());
                assert!(c.left_mul_t(w0).is_central(), "{ty} {}", rep.label());
                assert_eq!(c.left_mul_t_inverse(w0).dagger(), cp.scale(&factor), "{ty} {}", rep.label());
            }
        }
    }

    #[test]
    fn isomorphic_models_give_equal_central_elements() {
        let a = alg("A2");
        let kl = KlTable::new(a.clone());
        let rep = irreducible(&a, "[2,1]").unwrap().unwrap();
        let p = FracMatrix::from_rows(vec![
            vec![FracLaurent::one(), FracLaurent::v_pow(1)],
            vec![FracLaurent::zero(), FracLaurent::from_int(2)],
        ]);
        let pi = p.inverse().unwrap();
        let conj = HeckeRep::new(&a, "[2,1]", (0..2).map(|s| &(&pi * rep.generator_matrix(s)) * &p).collect());
        assert_eq!(c_e(&kl, &conj), c_e(&kl, &rep));
        assert_eq!(c_prime_e(&conj), c_prime_e(&rep));
    }

    #[test]
    fn partitions_and_tableaux() {
        assert_eq!(partitions(4, 4).len(), 5);
        assert_eq!(standard_tableaux(&[3, 2]).len(), 5);
        assert_eq!(standard_tableaux(&[2, 2, 1]).len(), 5);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }
}
