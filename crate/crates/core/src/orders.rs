//! Permutations, pattern avoidance, the map from 132-avoiding permutations
//! to Dyck paths, and the Bruhat and left weak orders.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::paths::{is_k_dyck, LatticePath};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Precondition(format!("{word:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Self { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        Self { word }
    }

    pub fn identity(n: usize) -> Self {
        Self { word: (1..=n).collect() }
    }

    /// The longest element `n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Self { word: (1..=n).rev().collect() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Position pairs `(i, j)`, 1-based, with `i < j` and `π(i) > π(j)`.
    pub fn inversion_set(&self) -> BTreeSet<(usize, usize)> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    out.insert((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn inv(&self) -> usize {
        let n = self.len();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.word[i] > self.word[j]).count()).sum()
    }

    /// Value pairs `(a, b)` with `a < b` and `b` appearing before `a`.
    pub fn value_inversions(&self) -> BTreeSet<(usize, usize)> {
        self.inversion_set().into_iter().map(|(i, j)| (self.word[j - 1], self.word[i - 1])).collect()
    }

    /// Left multiplication by the adjacent transposition `s_i`: swaps the
    /// values `i` and `i + 1`.
    pub fn left_swap(&self, i: usize) -> Self {
        let word = self
            .word
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Self { word }
    }

    /// Swaps the entries in positions `i` and `j` (0-based).
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(i, j);
        Self { word }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        if self.len() <= 9 {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_word(s)?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Parses a word of digits (`31422`) or comma-separated numbers.
pub(crate) fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.contains(',') {
        crate::paths::parse_usize_list(s)
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("not a digit word: {s:?}"))))
            .collect()
    }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut word: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation { word: word.clone() }];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
            return out;
        };
        let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).unwrap();
        word.swap(i - 1, j);
        word[i..].reverse();
        out.push(Permutation { word: word.clone() });
    }
}

/// Tests whether `perm` avoids the pattern `132` or `312`.
pub fn avoids(perm: &Permutation, pattern: u32) -> Result<bool> {
    let w = &perm.word;
    let n = w.len();
    let contains = |i: usize, j: usize, k: usize| match pattern {
        132 => w[i] < w[k] && w[k] < w[j],
        _ => w[j] < w[k] && w[k] < w[i],
    };
    if pattern != 132 && pattern != 312 {
        return Err(Error::UnsupportedPattern(pattern.to_string()));
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if contains(i, j, k) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For each value `r`, how many larger values appear before it (index `r - 1`).
pub(crate) fn left_larger_counts(perm: &Permutation) -> Vec<usize> {
    let n = perm.len();
    let mut counts = vec![0; n];
    for (pos, &v) in perm.word.iter().enumerate() {
        counts[v - 1] = perm.word[..pos].iter().filter(|&&u| u > v).count();
    }
    counts
}

/// The Dyck path bounding the inversion cells of a 132-avoiding permutation.
///
/// The up step in row `y` sits at column `c_{n-y}`, where `c_r` counts the
/// values larger than `r` to its left.
pub fn alpha(perm: &Permutation) -> Result<LatticePath> {
    if !avoids(perm, 132)? {
        return Err(Error::NotAvoiding(perm.to_string()));
    }
    let n = perm.len();
    let c = left_larger_counts(perm);
    let a: Vec<usize> = (0..n).map(|y| c[n - y - 1]).collect();
    Ok(LatticePath::from_up_columns(&a, 1))
}

pub fn alpha_inv(path: &LatticePath) -> Result<Permutation> {
    if path.k() != 1 || !is_k_dyck(path) {
        return Err(Error::Precondition(format!("{path} is not a Dyck path")));
    }
    let a = path.up_columns();
    let n = a.len();
    // insert n, n-1, ..., 1; value r goes after exactly c_r larger values
    let mut word: Vec<usize> = Vec::with_capacity(n);
    for r in (1..=n).rev() {
        word.insert(a[n - r], r);
    }
    Ok(Permutation { word })
}

fn check_sizes(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Bruhat comparison by the rank-matrix criterion: `a <= b` iff for all
/// `i, j`, `#{p <= i : a(p) >= j} <= #{p <= i : b(p) >= j}`.
pub fn bruhat_leq(a: &Permutation, b: &Permutation) -> Result<bool> {
    check_sizes(a, b)?;
    let n = a.len();
    let mut ra = vec![0usize; n + 2];
    let mut rb = vec![0usize; n + 2];
    for i in 0..n {
        for r in &mut ra[1..=a.word[i]] {
            *r += 1;
        }
        for r in &mut rb[1..=b.word[i]] {
            *r += 1;
        }
        if (1..=n).any(|j| ra[j] > rb[j]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Left weak order: `a <= b` iff the (position) inversion set of `a` is
/// contained in that of `b`.
pub fn weak_leq(a: &Permutation, b: &Permutation) -> Result<bool> {
    check_sizes(a, b)?;
    Ok(a.inversion_set().is_subset(&b.inversion_set()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    Bruhat,
    Weak,
}

impl FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruhat" => Ok(Order::Bruhat),
            "weak" => Ok(Order::Weak),
            _ => Err(Error::Parse(format!("unknown order {s:?}"))),
        }
    }
}

/// `Σ q^{inv(π) - inv(base)}` over all `π >= base`.
pub fn interval_gf(base: &Permutation, order: Order) -> MultiPoly {
    let base_inv = base.inv() as u64;
    let mut out = MultiPoly::zero();
    for pi in all_permutations(base.len()) {
        let above = match order {
            Order::Bruhat => bruhat_leq(base, &pi),
            Order::Weak => weak_leq(base, &pi),
        }
        .expect("same size");
        if above {
            out += &MultiPoly::q_pow(pi.inv() as u64 - base_inv);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qfact;
    use crate::paths::enumerate_k_dyck;
    use std::collections::{BTreeMap, VecDeque};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Up-set of `base` under covers `π -> π·(i j)` raising inv by one.
    fn bruhat_upset_oracle(base: &Permutation) -> BTreeSet<Permutation> {
        let n = base.len();
        let mut seen = BTreeSet::from([base.clone()]);
        let mut queue = VecDeque::from([base.clone()]);
        while let Some(p) = queue.pop_front() {
            for i in 0..n {
                for j in i + 1..n {
                    let q = p.swap_positions(i, j);
                    if q.inv() == p.inv() + 1 && seen.insert(q.clone()) {
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    fn weak_upset_oracle(base: &Permutation) -> BTreeSet<Permutation> {
        let n = base.len();
        let mut seen = BTreeSet::from([base.clone()]);
        let mut queue = VecDeque::from([base.clone()]);
        while let Some(p) = queue.pop_front() {
            for i in 1..n {
                let q = p.left_swap(i);
                if q.inv() == p.inv() + 1 && seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    #[test]
    fn avoidance_examples() {
        assert!(avoids(&perm("34215"), 132).unwrap());
        assert!(!avoids(&perm("132"), 132).unwrap());
        assert!(avoids(&perm("1234"), 132).unwrap());
        assert!(avoids(&perm("1234"), 312).unwrap());
        assert!(!avoids(&perm("312"), 312).unwrap());
        assert!(matches!(avoids(&perm("12"), 123), Err(Error::UnsupportedPattern(_))));
    }

    #[test]
    fn alpha_examples() {
        let path = alpha(&perm("34215")).unwrap();
        let cells_above: usize = path.up_columns().iter().sum();
        assert_eq!(cells_above, 5);
        assert_eq!(perm("34215").inv(), 5);
        assert_eq!(alpha(&perm("123")).unwrap().to_string(), "UUUDDD");
        assert_eq!(alpha(&perm("4321")).unwrap().to_string(), "UDUDUDUD");
        assert!(matches!(alpha(&perm("132")), Err(Error::NotAvoiding(_))));
    }

    #[test]
    fn alpha_is_a_bijection_onto_dyck_paths() {
        for n in 0..=6 {
            let avoiders: Vec<_> = all_permutations(n).into_iter().filter(|p| avoids(p, 132).unwrap()).collect();
            let paths = enumerate_k_dyck(n, 1);
            assert_eq!(avoiders.len(), paths.len());
            for p in &avoiders {
                let path = alpha(p).unwrap();
                assert_eq!(&alpha_inv(&path).unwrap(), p);
                assert_eq!(path.up_columns().iter().sum::<usize>(), p.inv());
            }
            for path in &paths {
                assert_eq!(&alpha(&alpha_inv(path).unwrap()).unwrap(), path);
            }
        }
    }

    #[test]
    fn order_examples() {
        assert!(bruhat_leq(&perm("1324"), &perm("3124")).unwrap());
        assert!(!bruhat_leq(&perm("321"), &perm("312")).unwrap());
        assert!(weak_leq(&perm("312"), &perm("321")).unwrap());
        assert!(bruhat_leq(&perm("12"), &perm("123")).is_err());
        for p in all_permutations(4) {
            assert!(bruhat_leq(&Permutation::identity(4), &p).unwrap());
            assert!(weak_leq(&Permutation::identity(4), &p).unwrap());
        }
    }

    #[test]
    fn comparisons_match_closure_oracles() {
        for n in 0..=5 {
            let all = all_permutations(n);
            for a in &all {
                let bruhat_up = bruhat_upset_oracle(a);
                let weak_up = weak_upset_oracle(a);
                for b in &all {
                    assert_eq!(bruhat_leq(a, b).unwrap(), bruhat_up.contains(b), "{a} {b}");
                    assert_eq!(weak_leq(a, b).unwrap(), weak_up.contains(b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn weak_below_implies_bruhat_below() {
        let all = all_permutations(4);
        for a in &all {
            for b in &all {
                if weak_leq(a, b).unwrap() {
                    assert!(bruhat_leq(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn interval_examples() {
        for n in 0..=5 {
            assert_eq!(interval_gf(&Permutation::identity(n), Order::Bruhat), qfact(n as u64));
            assert_eq!(interval_gf(&Permutation::identity(n), Order::Weak), qfact(n as u64));
            assert_eq!(interval_gf(&Permutation::longest(n), Order::Bruhat), MultiPoly::one());
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(perm("45321").to_string(), "45321");
        let long = Permutation::new((1..=10).rev().collect()).unwrap();
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
        let counts: BTreeMap<usize, usize> = all_permutations(4).iter().fold(BTreeMap::new(), |mut m, p| {
            *m.entry(p.inv()).or_default() += 1;
            m
        });
        assert_eq!(counts.values().sum::<usize>(), 24);
    }
}
