//! Finite Coxeter groups of small rank.
//!
//! A group is enumerated once, breadth-first, from a faithful permutation
//! action (`S_{n+1}` on `n+1` points for type `A_n`, the dihedral group on the
//! vertices of an `m`-gon for `I2(m)`). Elements are then plain indices into
//! the resulting tables. Because the search appends generators on the right
//! and visits words in ShortLex order, the first word reaching an element is
//! its ShortLex-minimal reduced word, and index order is ShortLex order.
//!
//! Generators are numbered from 0 internally; words are written with 1-based
//! generator labels at every external boundary (JSON, CLI).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("unsupported Coxeter type {0}")]
    UnsupportedType(String),
    #[error("generator label {0} out of range for rank {1}")]
    BadGenerator(usize, usize),
    #[error("elements belong to different groups ({0} vs {1})")]
    GroupMismatch(CoxeterType, CoxeterType),
}

/// Supported Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    /// `A_n`, `1 <= n <= 4`
    A(usize),
    B2,
    G2,
    /// Dihedral `I2(m)`, `m >= 3`
    I2(usize),
}

impl CoxeterType {
    pub fn validate(self) -> Result<Self, CoxeterError> {
        match self {
            CoxeterType::A(n) if (1..=4).contains(&n) => Ok(self),
            CoxeterType::I2(m) if m >= 3 => Ok(self),
            CoxeterType::B2 | CoxeterType::G2 => Ok(self),
            other => Err(CoxeterError::UnsupportedType(other.to_string())),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            CoxeterType::A(n) => n,
            _ => 2,
        }
    }

    /// Order `m` of the dihedral group for rank-2 types.
    pub fn dihedral_order(self) -> Option<usize> {
        match self {
            CoxeterType::A(2) => Some(3),
            CoxeterType::B2 => Some(4),
            CoxeterType::G2 => Some(6),
            CoxeterType::I2(m) => Some(m),
            _ => None,
        }
    }

    pub fn coxeter_matrix(self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut m = vec![vec![2; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        match self {
            CoxeterType::A(n) => {
                for i in 0..n.saturating_sub(1) {
                    m[i][i + 1] = 3;
                    m[i + 1][i] = 3;
                }
            }
            _ => {
                let k = self.dihedral_order().unwrap();
                m[0][1] = k;
                m[1][0] = k;
            }
        }
        m
    }

    /// `|W|` from the classical formula.
    pub fn expected_order(self) -> usize {
        match self {
            CoxeterType::A(n) => (1..=n + 1).product(),
            _ => 2 * self.dihedral_order().unwrap(),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B2 => write!(f, "B2"),
            CoxeterType::G2 => write!(f, "G2"),
            CoxeterType::I2(m) => write!(f, "I2:{m}"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = CoxeterError;

    /// Accepts `A1`..`A4`, `B2`, `G2`, `I2:m` (also `I2(m)`).
    fn from_str(s: &str) -> Result<Self, CoxeterError> {
        let bad = || CoxeterError::UnsupportedType(s.to_string());
        let t = s.trim();
        let ty = if let Some(rest) = t.strip_prefix("I2") {
            let m = rest.trim_start_matches([':', '(']).trim_end_matches(')');
            CoxeterType::I2(m.parse().map_err(|_| bad())?)
        } else if let Some(n) = t.strip_prefix('A') {
            CoxeterType::A(n.parse().map_err(|_| bad())?)
        } else if t == "B2" {
            CoxeterType::B2
        } else if t == "G2" {
            CoxeterType::G2
        } else {
            return Err(bad());
        };
        ty.validate()
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoxeterType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A group element, as its index in the ShortLex enumeration of its group.
///
/// Indices are only meaningful relative to the [`CoxeterGroup`] that issued them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterElement(u32);

impl CoxeterElement {
    pub const IDENTITY: CoxeterElement = CoxeterElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite Coxeter group with precomputed multiplication, length and Bruhat tables.
pub struct CoxeterGroup {
    ty: CoxeterType,
    rank: usize,
    words: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    /// `left[s][w] = s w`
    left: Vec<Vec<u32>>,
    /// `right[s][w] = w s`
    right: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    longest: CoxeterElement,
    /// Row `w` holds the lower Bruhat interval of `w` as a bitset.
    bruhat_below: Vec<Vec<u64>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup").field("type", &self.ty).field("order", &self.order()).finish()
    }
}

fn generator_permutations(ty: CoxeterType) -> Vec<Vec<u8>> {
    match ty {
        CoxeterType::A(n) => (0..n)
            .map(|i| {
                let mut p: Vec<u8> = (0..=n as u8).collect();
                p.swap(i, i + 1);
                p
            })
            .collect(),
        _ => {
            let m = ty.dihedral_order().unwrap();
            // reflections x -> -x and x -> 1 - x of Z/m; their product is a rotation of order m
            let s1 = (0..m).map(|x| ((m - x) % m) as u8).collect();
            let s2 = (0..m).map(|x| ((m + 1 - x) % m) as u8).collect();
            vec![s1, s2]
        }
    }
}

impl CoxeterGroup {
    pub fn new(ty: CoxeterType) -> Result<Arc<Self>, CoxeterError> {
        let ty = ty.validate()?;
        let gens = generator_permutations(ty);
        let rank = gens.len();
        let npoints = gens[0].len();
        let identity: Vec<u8> = (0..npoints as u8).collect();

        let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
        let mut perms: Vec<Vec<u8>> = Vec::new();
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert(identity.clone(), 0);
        perms.push(identity);
        words.push(Vec::new());
        queue.push_back(0u32);
        while let Some(w) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                // (w s)(x) = w(s(x))
                let p: Vec<u8> = g.iter().map(|&x| perms[w as usize][x as usize]).collect();
                if !index.contains_key(&p) {
                    let id = perms.len() as u32;
                    index.insert(p.clone(), id);
                    perms.push(p);
                    let mut word = words[w as usize].clone();
                    word.push(s);
                    words.push(word);
                    queue.push_back(id);
                }
            }
        }
        let order = perms.len();
        assert_eq!(order, ty.expected_order(), "enumeration of {ty} has the wrong order");

        let lookup = |p: &Vec<u8>| index[p];
        let mut left = vec![vec![0u32; order]; rank];
        let mut right = vec![vec![0u32; order]; rank];
        for (s, g) in gens.iter().enumerate() {
            for (w, p) in perms.iter().enumerate() {
                let ws: Vec<u8> = g.iter().map(|&x| p[x as usize]).collect();
                let sw: Vec<u8> = p.iter().map(|&x| g[x as usize]).collect();
                right[s][w] = lookup(&ws);
                left[s][w] = lookup(&sw);
            }
        }
        let inverse = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0u8; npoints];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                lookup(&inv)
            })
            .collect();
        let lengths: Vec<usize> = words.iter().map(Vec::len).collect();
        let longest = CoxeterElement(order as u32 - 1);
        let mut group =
            CoxeterGroup { ty, rank, words, lengths, left, right, inverse, longest, bruhat_below: Vec::new() };
        group.bruhat_below = group.compute_bruhat();
        Ok(Arc::new(group))
    }

    /// Lower Bruhat intervals via: for a left descent `s` of `w`,
    /// `y <= w` iff `min(y, sy) <= sw`.
    fn compute_bruhat(&self) -> Vec<Vec<u64>> {
        let n = self.order();
        let blocks = n.div_ceil(64);
        let mut below = vec![vec![0u64; blocks]; n];
        for w in 0..n {
            if w == 0 {
                below[0][0] |= 1;
                continue;
            }
            let s = self.first_left_descent(CoxeterElement(w as u32)).expect("non-identity has a descent");
            let sw = self.left[s][w] as usize;
            let mut row = vec![0u64; blocks];
            for y in 0..n {
                let sy = self.left[s][y] as usize;
                let m = if self.lengths[sy] < self.lengths[y] { sy } else { y };
                if below[sw][m / 64] >> (m % 64) & 1 == 1 {
                    row[y / 64] |= 1 << (y % 64);
                }
            }
            below[w] = row;
        }
        below
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> CoxeterElement {
        CoxeterElement::IDENTITY
    }

    pub fn generator(&self, s: usize) -> CoxeterElement {
        assert!(s < self.rank, "generator {s} out of range");
        CoxeterElement(self.right[s][0])
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> {
        0..self.rank
    }

    /// All elements in ShortLex order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = CoxeterElement> + ExactSizeIterator + '_ {
        (0..self.order() as u32).map(CoxeterElement)
    }

    pub fn element(&self, index: usize) -> CoxeterElement {
        assert!(index < self.order());
        CoxeterElement(index as u32)
    }

    /// Canonical (ShortLex-minimal reduced) word, 0-based generators.
    pub fn word(&self, w: CoxeterElement) -> &[usize] {
        &self.words[w.index()]
    }

    /// Canonical word with 1-based generator labels.
    pub fn labels(&self, w: CoxeterElement) -> Vec<usize> {
        self.word(w).iter().map(|s| s + 1).collect()
    }

    /// Element of an arbitrary (not necessarily reduced) word of 0-based generators.
    pub fn from_word(&self, word: &[usize]) -> Result<CoxeterElement, CoxeterError> {
        let mut w = self.identity();
        for &s in word {
            if s >= self.rank {
                return Err(CoxeterError::BadGenerator(s + 1, self.rank));
            }
            w = self.mul_gen_right(w, s);
        }
        Ok(w)
    }

    /// Element of a word of 1-based generator labels, e.g. `[1, 2, 1]`.
    pub fn from_labels(&self, labels: &[usize]) -> Result<CoxeterElement, CoxeterError> {
        let word = labels
            .iter()
            .map(|&l| if l == 0 || l > self.rank { Err(CoxeterError::BadGenerator(l, self.rank)) } else { Ok(l - 1) })
            .collect::<Result<Vec<_>, _>>()?;
        self.from_word(&word)
    }

    pub fn length(&self, w: CoxeterElement) -> usize {
        self.lengths[w.index()]
    }

    pub fn mul_gen_left(&self, s: usize, w: CoxeterElement) -> CoxeterElement {
        CoxeterElement(self.left[s][w.index()])
    }

    pub fn mul_gen_right(&self, w: CoxeterElement, s: usize) -> CoxeterElement {
        CoxeterElement(self.right[s][w.index()])
    }

    pub fn product(&self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement {
        self.word(b).iter().fold(a, |acc, &s| self.mul_gen_right(acc, s))
    }

    pub fn inverse(&self, w: CoxeterElement) -> CoxeterElement {
        CoxeterElement(self.inverse[w.index()])
    }

    /// `s w < w`
    pub fn is_left_descent(&self, s: usize, w: CoxeterElement) -> bool {
        self.lengths[self.left[s][w.index()] as usize] < self.lengths[w.index()]
    }

    /// `w s < w`
    pub fn is_right_descent(&self, w: CoxeterElement, s: usize) -> bool {
        self.lengths[self.right[s][w.index()] as usize] < self.lengths[w.index()]
    }

    pub fn descents_left(&self, w: CoxeterElement) -> Vec<usize> {
        self.generators().filter(|&s| self.is_left_descent(s, w)).collect()
    }

    pub fn descents_right(&self, w: CoxeterElement) -> Vec<usize> {
        self.generators().filter(|&s| self.is_right_descent(w, s)).collect()
    }

    pub fn first_left_descent(&self, w: CoxeterElement) -> Option<usize> {
        self.generators().find(|&s| self.is_left_descent(s, w))
    }

    pub fn bruhat_leq(&self, y: CoxeterElement, w: CoxeterElement) -> bool {
        let y = y.index();
        self.bruhat_below[w.index()][y / 64] >> (y % 64) & 1 == 1
    }

    /// `{ y : y <= w }` in ShortLex order.
    pub fn lower_interval(&self, w: CoxeterElement) -> Vec<CoxeterElement> {
        self.elements().filter(|&y| self.bruhat_leq(y, w)).collect()
    }

    pub fn longest_element(&self) -> CoxeterElement {
        self.longest
    }

    /// `w0 w w0`
    pub fn omega(&self, w: CoxeterElement) -> CoxeterElement {
        self.product(self.product(self.longest, w), self.longest)
    }

    /// Conjugacy classes by orbit closure under conjugation by generators.
    /// Each class is sorted; classes are ordered by their first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<CoxeterElement>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in self.elements() {
            if class_of[start.index()] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start.index()] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for s in self.generators() {
                    let y = self.mul_gen_right(self.mul_gen_left(s, x), s);
                    if class_of[y.index()] == usize::MAX {
                        class_of[y.index()] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort();
            classes.push(members);
        }
        classes
    }

    pub fn are_conjugate(&self, a: CoxeterElement, b: CoxeterElement) -> bool {
        self.conjugacy_classes().iter().any(|c| c.contains(&a) && c.contains(&b))
    }
}
