//! k-Stirling permutations, k-inversions, the k-Bruhat order, and k-regular
//! noncrossing partitions with their nesting forests.
//!
//! A k-Stirling permutation of size `n` is a word containing each of
//! `1..=n` exactly `k` times such that every letter between two copies of
//! `i` is smaller than `i`. Its code is the vector `c_i` = number of letters
//! larger than `i` before the first `i`; codes range over
//! `0 <= c_i <= k (n - i)` and determine the word.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{qfact, qint, MultiPoly};
use crate::error::{Error, Result};
use crate::hermite::HermiteHistory;
use crate::orders::parse_word;
use crate::paths::{LatticePath, PlaneForest, Tree};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StirlingPermutation {
    word: Vec<usize>,
    k: usize,
}

impl StirlingPermutation {
    pub fn new(word: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 || !word.len().is_multiple_of(k) {
            return Err(Error::Precondition(format!("length {} is not a multiple of k = {k}", word.len())));
        }
        let n = word.len() / k;
        let mut counts = vec![0; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::Precondition(format!("letter {v} out of range 1..={n}")));
            }
            counts[v] += 1;
        }
        if counts[1..].iter().any(|&c| c != k) {
            return Err(Error::Precondition(format!("{word:?} does not use each letter {k} times")));
        }
        for i in 1..=n {
            let first = word.iter().position(|&v| v == i).expect("present");
            let last = word.iter().rposition(|&v| v == i).expect("present");
            if word[first..last].iter().any(|&v| v > i) {
                return Err(Error::Precondition(format!("a letter larger than {i} sits between two copies of {i}")));
            }
        }
        Ok(Self { word, k })
    }

    pub fn parse(text: &str, k: usize) -> Result<Self> {
        Self::new(parse_word(text)?, k)
    }

    /// Decodes a code vector by inserting the block `i^k` after `c_i`
    /// letters, for `i = n` down to `1`.
    pub fn from_code(code: &[usize], k: usize) -> Result<Self> {
        let n = code.len();
        let mut word: Vec<usize> = Vec::with_capacity(n * k);
        for i in (1..=n).rev() {
            let c = code[i - 1];
            if c > k * (n - i) {
                return Err(Error::Precondition(format!("code entry c_{i} = {c} exceeds {}", k * (n - i))));
            }
            word.splice(c..c, std::iter::repeat_n(i, k));
        }
        Ok(Self { word, k })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.word.len() / self.k
    }

    /// `c_i` for `i = 1..=n`.
    pub fn code(&self) -> Vec<usize> {
        (1..=self.n())
            .map(|i| {
                let first = self.word.iter().position(|&v| v == i).expect("present");
                self.word[..first].iter().filter(|&&v| v > i).count()
            })
            .collect()
    }

    pub fn inv_k(&self) -> usize {
        self.code().iter().sum()
    }

    /// Positions (0-based) of the letter `v`.
    fn positions(&self, v: usize) -> Vec<usize> {
        (0..self.word.len()).filter(|&p| self.word[p] == v).collect()
    }
}

impl fmt::Display for StirlingPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        if self.n() <= 9 {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl Serialize for StirlingPermutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All k-Stirling permutations of size `n`, in lexicographic word order.
pub fn enumerate_stirling(n: usize, k: usize) -> Vec<StirlingPermutation> {
    let mut out = Vec::new();
    let mut code = vec![0; n];
    loop {
        out.push(StirlingPermutation::from_code(&code, k).expect("code in range"));
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            code[i] += 1;
            if code[i] <= k * (n - 1 - i) {
                break;
            }
            code[i] = 0;
        }
    }
}

/// Cells `(row, column)`, 1-based, with `π_column > row` and the first
/// `row` appearing after position `column`.
pub fn k_inversions(p: &StirlingPermutation) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for i in 1..=p.n() {
        let first = p.word.iter().position(|&v| v == i).expect("present");
        for j in 0..first {
            if p.word[j] > i {
                out.insert((i, j + 1));
            }
        }
    }
    out
}

/// `Σ q^{inv_k}` over all k-Stirling permutations of size `n`.
pub fn inv_gf(n: usize, k: usize) -> MultiPoly {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for p in enumerate_stirling(n, k) {
        *counts.entry(p.inv_k() as u64).or_default() += 1;
    }
    counts.into_iter().map(|(e, c)| MultiPoly::monomial(c, [e, 0, 0])).sum()
}

/// `∏_{i=1}^{n-1} [ik + 1]_q`.
pub fn inv_gf_product(n: usize, k: usize) -> MultiPoly {
    (1..n).map(|i| qint((i * k + 1) as u64)).product()
}

/// Elements covering `p`: swap the first copy of a letter `v` with a larger
/// letter `w` to the right of the last copy of `v`, provided every letter
/// strictly between them is smaller than `v` or larger than `w`.
pub fn k_bruhat_covers(p: &StirlingPermutation) -> Vec<StirlingPermutation> {
    let mut out = Vec::new();
    for v in 1..=p.n() {
        let pos = p.positions(v);
        let (a1, ak) = (pos[0], pos[pos.len() - 1]);
        for b in ak + 1..p.word.len() {
            let w = p.word[b];
            if w <= v {
                continue;
            }
            if p.word[ak + 1..b].iter().all(|&x| x < v || x > w) {
                let mut word = p.word.clone();
                word.swap(a1, b);
                if let Ok(q) = StirlingPermutation::new(word, p.k) {
                    out.push(q);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The k-Bruhat poset on all k-Stirling permutations of one size, with the
/// up-set of every element stored as a bitset.
pub struct StirlingPoset {
    elements: Vec<StirlingPermutation>,
    index: HashMap<StirlingPermutation, usize>,
    covers: Vec<Vec<usize>>,
    up: Vec<Vec<u64>>,
}

impl StirlingPoset {
    fn build(n: usize, k: usize) -> Self {
        let elements = enumerate_stirling(n, k);
        let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let covers: Vec<Vec<usize>> =
            elements.iter().map(|p| k_bruhat_covers(p).iter().map(|q| index[q]).collect()).collect();
        let words = elements.len().div_ceil(64).max(1);
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(elements[i].inv_k()));
        let mut up = vec![vec![0u64; words]; elements.len()];
        for &i in &order {
            let mut bits = vec![0u64; words];
            bits[i / 64] |= 1 << (i % 64);
            for &c in &covers[i] {
                for (b, cb) in bits.iter_mut().zip(&up[c]) {
                    *b |= cb;
                }
            }
            up[i] = bits;
        }
        Self { elements, index, covers, up }
    }

    /// The shared poset for `(n, k)`, built on first use.
    pub fn get(n: usize, k: usize) -> Arc<StirlingPoset> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<StirlingPoset>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("poset cache poisoned");
        guard.entry((n, k)).or_insert_with(|| Arc::new(Self::build(n, k))).clone()
    }

    pub fn elements(&self) -> &[StirlingPermutation] {
        &self.elements
    }

    /// Cover pairs `(lower, upper)`.
    pub fn hasse_edges(&self) -> Vec<(&StirlingPermutation, &StirlingPermutation)> {
        let mut out = Vec::new();
        for (i, cs) in self.covers.iter().enumerate() {
            for &c in cs {
                out.push((&self.elements[i], &self.elements[c]));
            }
        }
        out
    }

    pub fn leq(&self, a: &StirlingPermutation, b: &StirlingPermutation) -> bool {
        let (i, j) = (self.index[a], self.index[b]);
        self.up[i][j / 64] >> (j % 64) & 1 == 1
    }

    /// Elements `π >= base`.
    pub fn up_set(&self, base: &StirlingPermutation) -> Vec<&StirlingPermutation> {
        let i = self.index[base];
        (0..self.elements.len())
            .filter(|&j| self.up[i][j / 64] >> (j % 64) & 1 == 1)
            .map(|j| &self.elements[j])
            .collect()
    }
}

fn check_same_shape(a: &StirlingPermutation, b: &StirlingPermutation) -> Result<()> {
    if a.k != b.k || a.word.len() != b.word.len() {
        return Err(Error::SizeMismatch(a.word.len(), b.word.len()));
    }
    Ok(())
}

/// Comparison in the k-Bruhat order (transitive closure of the covers).
pub fn k_bruhat_leq(a: &StirlingPermutation, b: &StirlingPermutation) -> Result<bool> {
    check_same_shape(a, b)?;
    Ok(StirlingPoset::get(a.n(), a.k).leq(a, b))
}

/// No positions `i < j < l` with `σ_i < σ_l < σ_j`.
pub fn is_132_avoiding_stirling(p: &StirlingPermutation) -> bool {
    let w = &p.word;
    let len = w.len();
    for j in 0..len {
        let smaller_before = w[..j].iter().filter(|&&x| x < w[j]).min();
        if let Some(&low) = smaller_before {
            if w[j + 1..].iter().any(|&x| low < x && x < w[j]) {
                return false;
            }
        }
    }
    true
}

/// The k-Dyck path bounding the inversion cells: the up step in row `y`
/// sits at column `c_{n-y}`.
pub fn alpha_k(p: &StirlingPermutation) -> Result<LatticePath> {
    if !is_132_avoiding_stirling(p) {
        return Err(Error::NotAvoiding(p.to_string()));
    }
    let n = p.n();
    let code = p.code();
    let a: Vec<usize> = (0..n).map(|y| code[n - 1 - y]).collect();
    Ok(LatticePath::from_up_columns(&a, p.k))
}

pub fn alpha_k_inv(path: &LatticePath) -> Result<StirlingPermutation> {
    if !crate::paths::is_k_dyck(path) {
        return Err(Error::Precondition(format!("{path} is not a {}-Dyck path", path.k())));
    }
    let a = path.up_columns();
    let n = a.len();
    let code: Vec<usize> = (1..=n).map(|i| a[n - i]).collect();
    StirlingPermutation::from_code(&code, path.k())
}

/// The history on `alpha_k(base)` whose label in the row of letter `i` is
/// the number of k-inversions of `member` in that row lying below the path.
pub fn interval_to_hermite(base: &StirlingPermutation, member: &StirlingPermutation) -> Result<HermiteHistory> {
    let path = alpha_k(base)?;
    if !k_bruhat_leq(base, member)? {
        return Err(Error::Precondition(format!("{member} is not above {base}")));
    }
    let (cb, cm) = (base.code(), member.code());
    let n = base.n();
    let labels = (0..n).map(|y| cm[n - 1 - y] - cb[n - 1 - y]).collect();
    HermiteHistory::new(path, labels)
}

/// `Σ q^{inv_k(π) - inv_k(base)}` over `π >= base`.
pub fn stirling_interval_gf(base: &StirlingPermutation) -> MultiPoly {
    let poset = StirlingPoset::get(base.n(), base.k);
    let r = base.inv_k() as u64;
    poset.up_set(base).iter().map(|p| MultiPoly::q_pow(p.inv_k() as u64 - r)).sum()
}

/// A partition of `1..=kn` into `k`-element blocks, sorted by minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NoncrossingPartition {
    blocks: Vec<Vec<usize>>,
    k: usize,
}

impl NoncrossingPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
            if b.len() != k {
                return Err(Error::Precondition(format!("block {b:?} does not have {k} elements")));
            }
        }
        blocks.sort();
        let all: BTreeSet<usize> = blocks.iter().flatten().copied().collect();
        let m = blocks.len() * k;
        if all.len() != m || all.iter().any(|&x| x == 0 || x > m) {
            return Err(Error::Precondition(format!("blocks do not partition 1..={m}")));
        }
        let block_of: BTreeMap<usize, usize> =
            blocks.iter().enumerate().flat_map(|(i, b)| b.iter().map(move |&x| (x, i))).collect();
        for a in 1..=m {
            for b in a + 1..=m {
                for c in b + 1..=m {
                    for d in c + 1..=m {
                        if block_of[&a] == block_of[&c] && block_of[&b] == block_of[&d] && block_of[&a] != block_of[&b]
                        {
                            return Err(Error::Precondition(format!("{a},{c} and {b},{d} cross")));
                        }
                    }
                }
            }
        }
        Ok(Self { blocks, k })
    }

    /// Parses `{1,5,9}{2,3,4}...`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let body = text.trim();
        let mut blocks = Vec::new();
        for part in body.split('}') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let inner = part.strip_prefix('{').ok_or_else(|| Error::Parse(format!("expected '{{' in {text:?}")))?;
            blocks.push(crate::paths::parse_usize_list(inner)?);
        }
        Self::new(blocks, k)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Display for NoncrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for NoncrossingPartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All noncrossing partitions of `1..=kn` into blocks of size `k`.
pub fn enumerate_ncp(n: usize, k: usize) -> Vec<NoncrossingPartition> {
    // partitions of the interval [lo, lo + len) as block lists
    fn go(lo: usize, len: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        // gaps after each of the first k-1 elements of the block of `lo`
        fn gaps(remaining: usize, slots: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if slots == 0 {
                out.push(cur.clone());
                return;
            }
            let mut g = 0;
            while g <= remaining {
                cur.push(g);
                gaps(remaining - g, slots - 1, k, cur, out);
                cur.pop();
                g += k;
            }
        }
        let mut choices = Vec::new();
        gaps(len - k, k - 1, k, &mut Vec::new(), &mut choices);
        for gs in choices {
            let mut block = vec![lo];
            let mut segments = Vec::new();
            let mut pos = lo + 1;
            for &g in &gs {
                segments.push((pos, g));
                pos += g;
                block.push(pos);
                pos += 1;
            }
            segments.push((pos, lo + len - pos));
            let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![block]];
            for (start, l) in segments {
                let subs = go(start, l, k);
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        subs.iter().map(move |s| {
                            let mut q = p.clone();
                            q.extend(s.iter().cloned());
                            q
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out
    }
    let mut out: Vec<NoncrossingPartition> = go(1, n * k, k)
        .into_iter()
        .map(|mut blocks| {
            blocks.sort();
            NoncrossingPartition { blocks, k }
        })
        .collect();
    out.sort();
    out
}

/// Blocks as position classes of equal letters, each labelled by its letter.
/// The labels (indexed like `blocks()`) decrease from outer to inner blocks.
pub fn stirling_to_ncp(p: &StirlingPermutation) -> (NoncrossingPartition, Vec<usize>) {
    let mut blocks: Vec<(Vec<usize>, usize)> =
        (1..=p.n()).map(|v| (p.positions(v).iter().map(|x| x + 1).collect(), v)).collect();
    blocks.sort();
    let labels = blocks.iter().map(|(_, v)| *v).collect();
    (NoncrossingPartition { blocks: blocks.into_iter().map(|(b, _)| b).collect(), k: p.k }, labels)
}

/// Position `i` gets the label of its block.
pub fn ncp_to_stirling(ncp: &NoncrossingPartition, labels: &[usize]) -> Result<StirlingPermutation> {
    if labels.len() != ncp.blocks.len() {
        return Err(Error::SizeMismatch(labels.len(), ncp.blocks.len()));
    }
    let mut word = vec![0; ncp.blocks.len() * ncp.k];
    for (b, &l) in ncp.blocks.iter().zip(labels) {
        for &x in b {
            word[x - 1] = l;
        }
    }
    StirlingPermutation::new(word, ncp.k)
}

/// The forest in which a block's children are the maximal blocks lying
/// between two of its elements, left to right. Vertex `i` is block `i`.
pub fn nesting_poset(ncp: &NoncrossingPartition) -> PlaneForest {
    fn subtree(i: usize, children: &[Vec<usize>]) -> Tree {
        Tree(children[i].iter().map(|&c| subtree(c, children)).collect())
    }
    let blocks = &ncp.blocks;
    let mut children = vec![Vec::new(); blocks.len()];
    let mut roots = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if blocks[top][blocks[top].len() - 1] < b[0] {
                stack.pop();
            } else {
                break;
            }
        }
        match stack.last() {
            Some(&parent) => children[parent].push(i),
            None => roots.push(i),
        }
        stack.push(i);
    }
    let trees: Vec<Tree> = roots.iter().map(|&r| subtree(r, &children)).collect();
    PlaneForest::from_trees(&trees)
}

/// Both sides of the hook-length formulas for `NC_n^{(k)}`.
#[derive(Clone, Debug, Serialize)]
pub struct HookReport {
    pub n: usize,
    pub k: usize,
    /// `∏_{i=1}^{n-1} (ik + 1)`.
    pub multifactorial: BigInt,
    /// `Σ n! / ∏ h` over the nesting forests.
    pub hook_sum: BigInt,
    /// `[1]_q [3]_q ... [2n-1]_q`, only for `k = 2`.
    pub q_double_factorial: Option<MultiPoly>,
    /// `Σ_F [n]_{q^2}! ∏ q^{h-1} / [h]_{q^2}` over plane forests, only for `k = 2`.
    pub q_hook_sum: Option<MultiPoly>,
}

impl HookReport {
    pub fn holds(&self) -> bool {
        self.multifactorial == self.hook_sum && self.q_double_factorial == self.q_hook_sum
    }
}

/// `[n]_{q^2}! ∏ q^{h-1} / [h]_{q^2}` for one forest.
pub fn q_hook_term(forest: &PlaneForest) -> Result<MultiPoly> {
    let h = forest.hook_lengths();
    let denominator: MultiPoly = h.iter().map(|&x| qint(x as u64)).product();
    let ratio = qfact(forest.size() as u64).div_exact(&denominator)?.subst_q_power(2);
    let shift: u64 = h.iter().map(|&x| x as u64 - 1).sum();
    Ok(&ratio * &MultiPoly::q_pow(shift))
}

pub fn verify_hook_formulas(n: usize, k: usize) -> Result<HookReport> {
    let multifactorial: BigInt = (1..n).map(|i| BigInt::from(i * k + 1)).product();
    let n_fact: BigInt = (1..=n).map(BigInt::from).product();
    let mut hook_sum = BigInt::from(0);
    for ncp in enumerate_ncp(n, k) {
        let h: BigInt = nesting_poset(&ncp).hook_lengths().iter().map(|&x| BigInt::from(x)).product();
        if &n_fact % &h != BigInt::from(0) {
            return Err(Error::Invariant(format!("{h} does not divide {n}!")));
        }
        hook_sum += &n_fact / h;
    }
    let (q_double_factorial, q_hook_sum) = if k == 2 {
        let lhs: MultiPoly = (1..=n).map(|i| qint((2 * i - 1) as u64)).product();
        let mut rhs = MultiPoly::zero();
        for forest in crate::paths::enumerate_forests(n) {
            rhs += &q_hook_term(&forest)?;
        }
        (Some(lhs), Some(rhs))
    } else {
        (None, None)
    };
    Ok(HookReport { n, k, multifactorial, hook_sum, q_double_factorial, q_hook_sum })
}
