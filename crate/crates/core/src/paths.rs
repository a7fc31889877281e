//! Lattice paths, plane forests and increasing labelings.
//!
//! Coordinates: a path starts at `(0, 0)`, an up step is `(0, 1)` and a down
//! step is `(1, 0)`. A k-Dyck path of semilength `n` ends at `(kn, n)` and
//! never goes below the line `y = x / k`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orders::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn flip(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
        }
    }

    fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

/// A lattice path of up and down steps with slope parameter `k`.
///
/// Construction does not enforce the Dyck condition; use [`is_k_dyck`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
    k: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>, k: usize) -> Self {
        Self { steps, k }
    }

    /// Parses a word over `U`/`D` (case-insensitive, whitespace ignored).
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut steps = Vec::new();
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                'U' | 'u' => steps.push(Step::Up),
                'D' | 'd' => steps.push(Step::Down),
                other => return Err(Error::Parse(format!("unexpected step {other:?} in {text:?}"))),
            }
        }
        Ok(Self { steps, k })
    }

    /// Parses and checks the k-Dyck condition.
    pub fn parse_dyck(text: &str, k: usize) -> Result<Self> {
        let path = Self::parse(text, k)?;
        if !is_k_dyck(&path) {
            return Err(Error::Precondition(format!("{text} is not a {k}-Dyck path")));
        }
        Ok(path)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of up steps.
    pub fn semilength(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Up).count()
    }

    /// `a[y]` is the x-coordinate of the up step in row `y`.
    pub fn up_columns(&self) -> Vec<usize> {
        let mut x = 0;
        let mut out = Vec::new();
        for s in &self.steps {
            match s {
                Step::Up => out.push(x),
                Step::Down => x += 1,
            }
        }
        out
    }

    /// Rebuilds a path of semilength `a.len()` ending at `(k * n, n)` from
    /// its up-step columns.
    pub fn from_up_columns(a: &[usize], k: usize) -> Self {
        let width = k * a.len();
        let mut steps = Vec::with_capacity(width + a.len());
        let mut x = 0;
        for &col in a {
            while x < col {
                steps.push(Step::Down);
                x += 1;
            }
            steps.push(Step::Up);
        }
        while x < width {
            steps.push(Step::Down);
            x += 1;
        }
        Self { steps, k }
    }

    /// Step indices (0-based) of the up steps.
    pub fn up_indices(&self) -> Vec<usize> {
        (0..self.steps.len()).filter(|&i| self.steps[i] == Step::Up).collect()
    }

    /// Start points `(x, y)` of all steps, plus the end point.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for s in &self.steps {
            match s {
                Step::Up => y += 1,
                Step::Down => x += 1,
            }
            out.push((x, y));
        }
        out
    }

    /// Heights `k * b - a + 1` of the up steps, bottom to top.
    pub fn heights(&self) -> Vec<usize> {
        self.up_columns().iter().enumerate().map(|(b, &a)| self.k * b + 1 - a).collect()
    }

    /// True if both paths have the same shape parameters and `self` is
    /// weakly above `lower`.
    pub fn is_weakly_above(&self, lower: &LatticePath) -> bool {
        let (a, b) = (self.up_columns(), lower.up_columns());
        self.k == lower.k && self.len() == lower.len() && a.len() == b.len() && a.iter().zip(&b).all(|(u, l)| u <= l)
    }

    /// Inserts the given steps before step index `at`.
    pub fn insert_steps(&self, at: usize, new: &[Step]) -> Self {
        let mut steps = self.steps.clone();
        steps.splice(at..at, new.iter().copied());
        Self { steps, k: self.k }
    }

    pub fn with_steps(&self, steps: Vec<Step>) -> Self {
        Self { steps, k: self.k }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

pub fn is_k_dyck(path: &LatticePath) -> bool {
    if path.k == 0 {
        return false;
    }
    let (mut ups, mut downs) = (0usize, 0usize);
    for s in &path.steps {
        match s {
            Step::Up => ups += 1,
            Step::Down => downs += 1,
        }
        if downs > path.k * ups {
            return false;
        }
    }
    downs == path.k * ups
}

/// All k-Dyck paths of semilength `n`, in lexicographic order with `U < D`.
pub fn enumerate_k_dyck(n: usize, k: usize) -> Vec<LatticePath> {
    fn go(n: usize, k: usize, ups: usize, downs: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if ups == n && downs == k * n {
            out.push(LatticePath::new(cur.clone(), k));
            return;
        }
        if ups < n {
            cur.push(Step::Up);
            go(n, k, ups + 1, downs, cur, out);
            cur.pop();
        }
        if downs < k * ups {
            cur.push(Step::Down);
            go(n, k, ups, downs + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(n, k, 0, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Height of the `up_index`-th up step (1-based).
pub fn up_step_height(path: &LatticePath, up_index: usize) -> Result<usize> {
    let heights = path.heights();
    if up_index == 0 || up_index > heights.len() {
        return Err(Error::IndexOutOfRange { index: up_index, len: heights.len() });
    }
    Ok(heights[up_index - 1])
}

/// `U^{n_1} D^{k n_1} U^{n_2} D^{k n_2} ...`
pub fn zigzag_path(composition: &[usize], k: usize) -> LatticePath {
    let mut steps = Vec::new();
    for &part in composition {
        steps.extend(std::iter::repeat_n(Step::Up, part));
        steps.extend(std::iter::repeat_n(Step::Down, k * part));
    }
    LatticePath::new(steps, k)
}

/// All compositions of `n` (ordered lists of positive parts).
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// An ordered forest. Vertices are numbered `0..n` in pre-order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneForest {
    roots: Vec<usize>,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl PlaneForest {
    /// The forest with no vertices.
    pub fn empty() -> Self {
        Self { roots: Vec::new(), children: Vec::new(), parent: Vec::new() }
    }

    /// Parses a balanced-parenthesis string; each `(...)` is a vertex.
    pub fn parse(text: &str) -> Result<Self> {
        let path = LatticePath::parse(&text.replace('(', "U").replace(')', "D"), 1)
            .map_err(|_| Error::Parse(format!("not a parenthesis string: {text:?}")))?;
        if !is_k_dyck(&path) {
            return Err(Error::Parse(format!("unbalanced parentheses: {text:?}")));
        }
        Ok(path_to_forest(&path))
    }

    /// Builds a forest from nested child lists given as `(children)` trees.
    pub fn from_trees(trees: &[Tree]) -> Self {
        let mut steps = Vec::new();
        fn walk(t: &Tree, steps: &mut Vec<Step>) {
            steps.push(Step::Up);
            for c in &t.0 {
                walk(c, steps);
            }
            steps.push(Step::Down);
        }
        for t in trees {
            walk(t, &mut steps);
        }
        path_to_forest(&LatticePath::new(steps, 1))
    }

    pub fn size(&self) -> usize {
        self.children.len()
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// True if `d` lies in the subtree of `a` (a vertex is its own descendant).
    pub fn is_descendant(&self, d: usize, a: usize) -> bool {
        let mut cur = Some(d);
        while let Some(v) = cur {
            if v == a {
                return true;
            }
            cur = self.parent[v];
        }
        false
    }

    pub fn pre_order(&self) -> Vec<usize> {
        (0..self.size()).collect()
    }

    pub fn post_order(&self) -> Vec<usize> {
        fn walk(f: &PlaneForest, v: usize, out: &mut Vec<usize>) {
            for &c in &f.children[v] {
                walk(f, c, out);
            }
            out.push(v);
        }
        let mut out = Vec::with_capacity(self.size());
        for &r in &self.roots {
            walk(self, r, &mut out);
        }
        out
    }

    /// Subtree sizes, indexed by vertex.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let mut h = vec![1; self.size()];
        for v in self.post_order() {
            if let Some(p) = self.parent[v] {
                h[p] += h[v];
            }
        }
        h
    }
}

impl fmt::Display for PlaneForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = forest_to_path(self).to_string().chars().map(|c| if c == 'U' { '(' } else { ')' }).collect();
        f.write_str(&text)
    }
}

impl FromStr for PlaneForest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A rooted tree given by its ordered list of subtrees.
#[derive(Clone, Debug, Default)]
pub struct Tree(pub Vec<Tree>);

/// Each matching pair of up step and down step becomes a vertex; the vertex
/// of a pair nested directly inside another is its child.
pub fn path_to_forest(path: &LatticePath) -> PlaneForest {
    let mut roots = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut parent = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for s in path.steps() {
        match s {
            Step::Up => {
                let v = children.len();
                children.push(Vec::new());
                let p = stack.last().copied();
                parent.push(p);
                match p {
                    Some(p) => children[p].push(v),
                    None => roots.push(v),
                }
                stack.push(v);
            }
            Step::Down => {
                stack.pop();
            }
        }
    }
    PlaneForest { roots, children, parent }
}

pub fn forest_to_path(forest: &PlaneForest) -> LatticePath {
    fn walk(f: &PlaneForest, v: usize, steps: &mut Vec<Step>) {
        steps.push(Step::Up);
        for &c in f.children(v) {
            walk(f, c, steps);
        }
        steps.push(Step::Down);
    }
    let mut steps = Vec::with_capacity(2 * forest.size());
    for &r in forest.roots() {
        walk(forest, r, &mut steps);
    }
    LatticePath::new(steps, 1)
}

/// Hook lengths as a sorted multiset.
pub fn hooks(forest: &PlaneForest) -> Vec<usize> {
    let mut h = forest.hook_lengths();
    h.sort_unstable_by(|a, b| b.cmp(a));
    h
}

/// All plane forests with `n` vertices.
pub fn enumerate_forests(n: usize) -> Vec<PlaneForest> {
    enumerate_k_dyck(n, 1).iter().map(path_to_forest).collect()
}

/// A forest together with labels `1..=n`, increasing away from the roots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncreasingLabeling {
    forest: PlaneForest,
    labels: Vec<usize>,
}

impl IncreasingLabeling {
    /// `labels[v]` is the label of vertex `v` (pre-order numbering).
    pub fn new(forest: PlaneForest, labels: Vec<usize>) -> Result<Self> {
        let n = forest.size();
        if labels.len() != n {
            return Err(Error::SizeMismatch(labels.len(), n));
        }
        let distinct: BTreeSet<usize> = labels.iter().copied().collect();
        if distinct.len() != n || labels.iter().any(|&l| l == 0 || l > n) {
            return Err(Error::Precondition(format!("labels {labels:?} are not a permutation of 1..={n}")));
        }
        for v in 0..n {
            if let Some(p) = forest.parent(v) {
                if labels[p] > labels[v] {
                    return Err(Error::Precondition(format!(
                        "label {} of a vertex is smaller than its parent's label {}",
                        labels[v], labels[p]
                    )));
                }
            }
        }
        Ok(Self { forest, labels })
    }

    /// Parses `<parens>:<labels in pre-order>`, e.g. `(()()):1,3,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let (shape, labels) =
            text.split_once(':').ok_or_else(|| Error::Parse(format!("expected <forest>:<labels>, got {text:?}")))?;
        let forest = PlaneForest::parse(shape.trim())?;
        let labels = parse_usize_list(labels)?;
        Self::new(forest, labels)
    }

    pub fn forest(&self) -> &PlaneForest {
        &self.forest
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }
}

impl fmt::Display for IncreasingLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "{}:{}", self.forest, labels.join(","))
    }
}

pub(crate) fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("not a nonnegative integer: {p:?}"))))
        .collect()
}

/// All increasing labelings, found by assigning labels `1, 2, ...` in turn
/// to vertices whose parent is already labeled.
pub fn enumerate_increasing_labelings(forest: &PlaneForest) -> Vec<IncreasingLabeling> {
    fn go(f: &PlaneForest, next: usize, labels: &mut Vec<usize>, out: &mut Vec<IncreasingLabeling>) {
        let n = f.size();
        if next > n {
            out.push(IncreasingLabeling { forest: f.clone(), labels: labels.clone() });
            return;
        }
        for v in 0..n {
            let ready = labels[v] == 0 && f.parent(v).is_none_or(|p| labels[p] != 0);
            if ready {
                labels[v] = next;
                go(f, next + 1, labels, out);
                labels[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    go(forest, 1, &mut vec![0; forest.size()], &mut out);
    out
}

/// Labels read in post-order.
pub fn post_order_word(l: &IncreasingLabeling) -> Permutation {
    Permutation::from_word_unchecked(l.forest.post_order().iter().map(|&v| l.labels[v]).collect())
}

/// Labels read in pre-order.
pub fn pre_order_word(l: &IncreasingLabeling) -> Permutation {
    Permutation::from_word_unchecked(l.labels.clone())
}

/// Pairs `(j, i)` with `i < j` such that `j` is not a descendant of `i` and
/// `j` comes before `i` from left to right.
pub fn labeling_inversions(l: &IncreasingLabeling) -> BTreeSet<(usize, usize)> {
    let n = l.forest.size();
    let mut out = BTreeSet::new();
    // vertices are numbered in pre-order, so "to the left" is vj < vi
    for vj in 0..n {
        for vi in vj + 1..n {
            let (j, i) = (l.labels[vj], l.labels[vi]);
            if i < j && !l.forest.is_descendant(vj, vi) {
                out.insert((j, i));
            }
        }
    }
    out
}

/// The labeling whose pre-order word is the identity.
pub fn minimal_labeling(forest: &PlaneForest) -> IncreasingLabeling {
    IncreasingLabeling { forest: forest.clone(), labels: (1..=forest.size()).collect() }
}
