//! Root systems of the complex simple Lie algebras.
//!
//! Simple roots follow Bourbaki numbering for every family. The invariant
//! form is normalised so long roots have squared length 2, and roots are
//! stored as integer coordinate vectors in the simple-root basis.
//!
//! | family | long simple roots | short simple roots |
//! |--------|-------------------|--------------------|
//! | B_n    | α1..α(n-1)        | αn                 |
//! | C_n    | αn                | α1..α(n-1)         |
//! | F4     | α1, α2            | α3, α4             |
//! | G2     | α2                | α1                 |
//!
//! E-type diagrams: α1-α3-α4-α5-α6(-α7(-α8)), with α2 attached to α4.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{q, qq, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("cannot parse Cartan type `{0}`")]
    Parse(String),
    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

/// Family and rank of a complex simple Lie algebra, e.g. `A3` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::InvalidRank { family, rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.family, Family::E | Family::F | Family::G)
    }

    /// Dimension of the simple Lie algebra of this type.
    pub fn algebra_dim(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => [78, 133, 248][n - 6],
            Family::F => 52,
            Family::G => 14,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(|| RootSystemError::Parse(s.to_string()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(RootSystemError::Parse(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootSystemError::Parse(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LengthClass {
    Long,
    Short,
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    pub length_class: LengthClass,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }
}

/// Gram matrix of the simple roots, long roots of squared length 2.
fn simple_gram(t: CartanType) -> Vec<Vec<Rational>> {
    let n = t.rank;
    let mut g = vec![vec![Rational::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match t.family {
        Family::A => {
            for i in 0..n {
                g[i][i] = q(2);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, q(-1));
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                g[i][i] = q(2);
            }
            g[n - 1][n - 1] = q(1);
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, q(-1));
            }
        }
        Family::C => {
            for i in 0..n - 1 {
                g[i][i] = q(1);
            }
            g[n - 1][n - 1] = q(2);
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, qq(-1, 2));
            }
            link(&mut g, n - 2, n - 1, q(-1));
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = q(2);
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, q(-1));
            }
            link(&mut g, n - 3, n - 1, q(-1));
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = q(2);
            }
            // 1-3, 3-4, 4-5, 5-6, ..., and 2-4 (zero-based below).
            link(&mut g, 0, 2, q(-1));
            link(&mut g, 1, 3, q(-1));
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, q(-1));
            }
        }
        Family::F => {
            g[0][0] = q(2);
            g[1][1] = q(2);
            g[2][2] = q(1);
            g[3][3] = q(1);
            link(&mut g, 0, 1, q(-1));
            link(&mut g, 1, 2, q(-1));
            link(&mut g, 2, 3, qq(-1, 2));
        }
        Family::G => {
            g[0][0] = qq(2, 3);
            g[1][1] = q(2);
            link(&mut g, 0, 1, q(-1));
        }
    }
    g
}

/// A finite reduced root system with a fixed base.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    gram: Vec<Vec<Rational>>,
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    cartan: Vec<Vec<i64>>,
    /// Positive roots sorted by height, then by coordinates with α1 first.
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Self {
        build_root_system(t)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// All roots: positives in canonical order followed by their negatives in
    /// the same order. Index `i + num_positive` is `-positive[i]`.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|r| Root {
            coords: r.coords.iter().map(|c| -c).collect(),
            length_class: r.length_class,
        }));
        all
    }

    pub fn root(&self, idx: usize) -> Root {
        let np = self.positive.len();
        if idx < np {
            self.positive[idx].clone()
        } else {
            let r = &self.positive[idx - np];
            Root {
                coords: r.coords.iter().map(|c| -c).collect(),
                length_class: r.length_class,
            }
        }
    }

    pub fn root_coords(&self, idx: usize) -> Vec<i64> {
        self.root(idx).coords
    }

    /// Index into [`RootSystem::all_roots`] of the given coordinates.
    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        if let Some(&i) = self.index.get(coords) {
            return Some(i);
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&i| i + self.positive.len())
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.index_of(coords).is_some()
    }

    pub fn negate_index(&self, idx: usize) -> usize {
        let np = self.positive.len();
        if idx < np {
            idx + np
        } else {
            idx - np
        }
    }

    /// Index of the simple root α_i (zero-based `i`).
    pub fn simple_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }

    /// Invariant inner product of two vectors in simple-root coordinates.
    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = &self.gram[i][j];
                if g.is_zero() || b[j].is_zero() {
                    continue;
                }
                acc += &a[i] * g * &b[j];
            }
        }
        acc
    }

    /// Gram matrix of the simple roots.
    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn norm2(&self, coords: &[i64]) -> Rational {
        self.inner(&to_q(coords), &to_q(coords))
    }

    /// `⟨λ, α∨⟩ = 2(λ, α)/(α, α)`.
    pub fn pairing(&self, lambda: &[i64], alpha: &[i64]) -> i64 {
        let v = q(2) * self.inner(&to_q(lambda), &to_q(alpha)) / self.norm2(alpha);
        assert!(v.is_integer(), "non-integral coroot pairing");
        v.to_integer().try_into().expect("small pairing")
    }

    /// The coroot `2r/(r, r)` in simple-root coordinates.
    pub fn coroot_vector(&self, r: &Root) -> Result<Vec<Rational>, RootSystemError> {
        if !self.is_root(&r.coords) {
            return Err(RootSystemError::NotARoot(r.coords.clone()));
        }
        let scale = q(2) / self.norm2(&r.coords);
        Ok(r.coords.iter().map(|&c| q(c) * &scale).collect())
    }

    /// The coroot expressed in the basis of simple coroots; always integral.
    pub fn coroot_in_simple_coroots(&self, coords: &[i64]) -> Vec<i64> {
        let n2 = self.norm2(coords);
        (0..self.rank())
            .map(|i| {
                let v = q(coords[i]) * &self.gram[i][i] / &n2;
                assert!(v.is_integer(), "non-integral coroot coefficient");
                v.to_integer().try_into().expect("small coefficient")
            })
            .collect()
    }

    pub fn highest_root(&self) -> Root {
        highest_root(self)
    }

    /// Simple reflection `s_i` applied to a vector in root coordinates.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        let k = self.pairing(v, &e);
        let mut out = v.to_vec();
        out[i] -= k;
        out
    }

    pub fn dual_coxeter_number(&self) -> usize {
        dual_coxeter_number(self)
    }
}

pub(crate) fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Enumerates the positive roots by height using root strings.
pub fn build_root_system(t: CartanType) -> RootSystem {
    let n = t.rank;
    let gram = simple_gram(t);
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = q(2) * &gram[i][j] / &gram[j][j];
            cartan[i][j] = v.to_integer().try_into().expect("small Cartan entry");
        }
    }
    let pair = |lambda: &[i64], j: usize| -> i64 { (0..n).map(|i| lambda[i] * cartan[i][j]).sum() };

    let mut positive: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    for r in &layer {
        seen.insert(r.clone(), ());
    }
    while !layer.is_empty() {
        positive.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for r in &layer {
            for j in 0..n {
                let mut e = vec![0; n];
                e[j] = 1;
                if *r == e {
                    continue;
                }
                // Largest q with r - q α_j a root.
                let mut qd = 0;
                let mut down = r.clone();
                loop {
                    down[j] -= 1;
                    if seen.contains_key(&down) {
                        qd += 1;
                    } else {
                        break;
                    }
                }
                let p = qd - pair(r, j);
                if p > 0 {
                    let mut up = r.clone();
                    up[j] += 1;
                    if !seen.contains_key(&up) {
                        seen.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let max_norm = q(2);
    let norm = |c: &[i64]| -> Rational {
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += q(c[i] * c[j]) * &gram[i][j];
            }
        }
        acc
    };
    let positive: Vec<Root> = positive
        .into_iter()
        .map(|coords| {
            let length_class = if norm(&coords) == max_norm {
                LengthClass::Long
            } else {
                LengthClass::Short
            };
            Root {
                coords,
                length_class,
            }
        })
        .collect();
    let index = positive
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coords.clone(), i))
        .collect();
    RootSystem {
        cartan_type: t,
        gram,
        cartan,
        positive,
        index,
    }
}

/// The unique dominance-maximal positive root.
pub fn highest_root(rs: &RootSystem) -> Root {
    let candidates: Vec<&Root> = rs
        .positive
        .iter()
        .filter(|r| {
            rs.positive
                .iter()
                .all(|s| r.coords.iter().zip(&s.coords).all(|(a, b)| a >= b))
        })
        .collect();
    assert_eq!(candidates.len(), 1, "highest root must be unique");
    candidates[0].clone()
}

/// `h∨ = 1 + ⟨ρ, β∨⟩`, cross-checked against the count of positive roots not
/// orthogonal to β.
pub fn dual_coxeter_number(rs: &RootSystem) -> usize {
    let beta = highest_root(rs);
    let mut twice_rho_pairing = 0i64;
    let mut non_orthogonal = 0i64;
    for a in &rs.positive {
        let k = rs.pairing(&a.coords, &beta.coords);
        twice_rho_pairing += k;
        if k != 0 {
            non_orthogonal += 1;
        }
    }
    assert_eq!(twice_rho_pairing % 2, 0);
    let via_rho = 1 + twice_rho_pairing / 2;
    assert_eq!((non_orthogonal + 1) % 2, 0);
    let via_count = 1 + (non_orthogonal + 1) / 2;
    assert_eq!(via_rho, via_count, "dual Coxeter channels disagree");
    via_rho as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ct(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    /// Weyl-orbit closure of the simple roots: independent of the string
    /// enumeration used by `build_root_system`.
    fn reflection_closure(rs: &RootSystem) -> HashSet<Vec<i64>> {
        let n = rs.rank();
        let mut found: HashSet<Vec<i64>> = HashSet::new();
        let mut stack: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(v) = stack.pop() {
            if !found.insert(v.clone()) {
                continue;
            }
            for i in 0..n {
                let w = rs.reflect(i, &v);
                if !found.contains(&w) {
                    stack.push(w);
                }
            }
        }
        found
    }

    #[test]
    fn parses_types() {
        assert_eq!(ct("a3"), CartanType::new(Family::A, 3).unwrap());
        assert_eq!(ct("E8").to_string(), "E8");
        assert!("B1".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("X3".parse::<CartanType>().is_err());
    }

    #[test]
    fn root_counts_match_reflection_closure() {
        for (t, count) in [("A1", 2), ("A4", 20), ("B3", 18), ("C4", 32), ("D5", 40), ("G2", 12), ("F4", 48), ("E6", 72), ("E7", 126), ("E8", 240)] {
            let rs = RootSystem::new(ct(t));
            let all: HashSet<Vec<i64>> = rs.all_roots().into_iter().map(|r| r.coords).collect();
            assert_eq!(all.len(), count, "{t}");
            assert_eq!(all, reflection_closure(&rs), "{t}");
            assert_eq!(rs.cartan_type().algebra_dim(), rs.rank() + count);
        }
    }

    #[test]
    fn a_n_count() {
        for n in 1..=8 {
            let rs = RootSystem::new(CartanType::new(Family::A, n).unwrap());
            assert_eq!(rs.all_roots().len(), n * (n + 1));
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(RootSystem::new(ct("A2")).highest_root().coords, vec![1, 1]);
        assert_eq!(RootSystem::new(ct("B2")).highest_root().coords, vec![1, 2]);
        assert_eq!(RootSystem::new(ct("G2")).highest_root().coords, vec![3, 2]);
        assert_eq!(RootSystem::new(ct("E8")).highest_root().coords, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        for t in ["B4", "C3", "F4", "G2", "E7"] {
            let rs = RootSystem::new(ct(t));
            let beta = rs.highest_root();
            assert_eq!(beta.length_class, LengthClass::Long, "{t}");
            // dominant
            for i in 0..rs.rank() {
                let mut e = vec![0; rs.rank()];
                e[i] = 1;
                assert!(rs.pairing(&beta.coords, &e) >= 0);
            }
        }
    }

    #[test]
    fn cartan_matrix_conventions() {
        let b2 = RootSystem::new(ct("B2"));
        assert_eq!(b2.cartan_matrix(), &[vec![2, -2], vec![-1, 2]]);
        let g2 = RootSystem::new(ct("G2"));
        assert_eq!(g2.cartan_matrix(), &[vec![2, -1], vec![-3, 2]]);
    }

    #[test]
    fn coroots() {
        let b2 = RootSystem::new(ct("B2"));
        let short = Root {
            coords: vec![0, 1],
            length_class: LengthClass::Short,
        };
        assert_eq!(b2.coroot_vector(&short).unwrap(), vec![q(0), q(2)]);
        let a3 = RootSystem::new(ct("A3"));
        let beta = a3.highest_root();
        assert_eq!(a3.coroot_vector(&beta).unwrap(), to_q(&beta.coords));
        for t in ["A1", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let rs = RootSystem::new(ct(t));
            let beta = rs.highest_root();
            assert_eq!(rs.pairing(&beta.coords, &beta.coords), 2);
        }
        let bogus = Root {
            coords: vec![2, 0],
            length_class: LengthClass::Long,
        };
        assert!(b2.coroot_vector(&bogus).is_err());
    }

    #[test]
    fn pairing_with_highest_coroot() {
        for t in ["A5", "B4", "C4", "D5", "G2", "F4", "E6", "E7", "E8"] {
            let rs = RootSystem::new(ct(t));
            let beta = rs.highest_root();
            for a in rs.positive_roots() {
                let k = rs.pairing(&a.coords, &beta.coords);
                assert!((0..=2).contains(&k), "{t}");
                assert_eq!(k == 2, a.coords == beta.coords, "{t}");
            }
        }
    }

    #[test]
    fn root_strings_are_short_and_unbroken() {
        for t in ["B3", "C3", "G2", "F4"] {
            let rs = RootSystem::new(ct(t));
            let all = rs.all_roots();
            for a in &all {
                for b in &all {
                    if a.coords == b.coords || a.coords.iter().zip(&b.coords).all(|(x, y)| *x == -y) {
                        continue;
                    }
                    let members: Vec<i64> = (-4..=4)
                        .filter(|&k| {
                            let v: Vec<i64> = b.coords.iter().zip(&a.coords).map(|(y, x)| y + k * x).collect();
                            rs.is_root(&v)
                        })
                        .collect();
                    let lo = *members.first().unwrap();
                    let hi = *members.last().unwrap();
                    assert_eq!(members.len() as i64, hi - lo + 1, "{t}: broken string");
                    assert!(members.len() <= 4);
                }
            }
        }
    }

    #[test]
    fn dual_coxeter_numbers() {
        for n in 1..=8 {
            let rs = RootSystem::new(CartanType::new(Family::A, n).unwrap());
            assert_eq!(rs.dual_coxeter_number(), n + 1);
        }
        assert_eq!(RootSystem::new(ct("E8")).dual_coxeter_number(), 30);
        assert_eq!(RootSystem::new(ct("G2")).dual_coxeter_number(), 4);
    }
}
