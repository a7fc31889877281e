//! Symmetric forests, symmetric Dyck tilings and symmetric Hermite
//! histories.
//!
//! A symmetric forest is stored by its left part: the vertices weakly left
//! of the center line. Center vertices form a chain starting at the last
//! root and following last children. The full forest is the left part,
//! with every non-center subtree mirrored onto the right.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{binomial, qbinom, qfact, qint, MultiPoly, RationalFn};
use crate::error::{Error, Result};
use crate::hermite::tiling_to_hermite;
use crate::paths::{enumerate_increasing_labelings, hooks, parse_usize_list, LatticePath, PlaneForest, Step};
use crate::tilings::{for_each_tiling_where, paths_above, paths_below, spread, Cell, DyckTile, Tiling};

/// Left part of a mirror-invariant plane forest plus the number of center
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetricForest {
    left: PlaneForest,
    centers: usize,
}

impl SymmetricForest {
    pub fn new(left: PlaneForest, centers: usize) -> Result<Self> {
        let f = SymmetricForest { left, centers };
        if f.center_chain().len() < centers {
            return Err(Error::Invariant(format!("left part has no chain of {centers} center vertices")));
        }
        Ok(f)
    }

    /// Parses `"(())()|1"`: the left part, then the center count (default 0).
    pub fn parse(text: &str) -> Result<Self> {
        let (forest, centers) = match text.split_once('|') {
            Some((f, c)) => (f, c.trim().parse().map_err(|_| Error::Parse(format!("bad center count in {text:?}")))?),
            None => (text, 0),
        };
        SymmetricForest::new(PlaneForest::parse(forest.trim())?, centers)
    }

    pub fn left(&self) -> &PlaneForest {
        &self.left
    }

    pub fn centers(&self) -> usize {
        self.centers
    }

    /// Number of vertices of the left part.
    pub fn size(&self) -> usize {
        self.left.size()
    }

    /// Semilength of the full Dyck path, `2n - c`.
    pub fn full_size(&self) -> usize {
        2 * self.size() - self.centers
    }

    // last root, its last child, and so on
    fn center_chain(&self) -> Vec<usize> {
        let mut chain = Vec::new();
        let mut level = self.left.roots();
        while let Some(&v) = level.last() {
            chain.push(v);
            level = self.left.children(v);
        }
        chain
    }

    pub fn center_vertices(&self) -> Vec<usize> {
        let mut c = self.center_chain();
        c.truncate(self.centers);
        c
    }

    pub fn is_center(&self, v: usize) -> bool {
        self.center_vertices().contains(&v)
    }

    fn full_forest(&self, keep: &dyn Fn(usize) -> bool) -> (LatticePath, BTreeMap<usize, usize>) {
        let centers = self.center_vertices();
        let mut steps = Vec::new();
        let mut up_at = BTreeMap::new();
        let roots: Vec<usize> = self.left.roots().iter().copied().filter(|&v| keep(v)).collect();
        self.emit_level(&roots, &centers, keep, &mut steps, &mut up_at);
        (LatticePath::new(steps, 1), up_at)
    }

    fn emit_level(
        &self,
        level: &[usize],
        centers: &[usize],
        keep: &dyn Fn(usize) -> bool,
        steps: &mut Vec<Step>,
        up_at: &mut BTreeMap<usize, usize>,
    ) {
        let (center, sides) = match level.last() {
            Some(&v) if centers.contains(&v) => (Some(v), &level[..level.len() - 1]),
            _ => (None, level),
        };
        for &v in sides {
            self.emit_tree(v, keep, false, steps, up_at);
        }
        if let Some(c) = center {
            up_at.insert(c, steps.len());
            steps.push(Step::Up);
            let kids: Vec<usize> = self.left.children(c).iter().copied().filter(|&v| keep(v)).collect();
            self.emit_level(&kids, centers, keep, steps, up_at);
            steps.push(Step::Down);
        }
        for &v in sides.iter().rev() {
            self.emit_tree(v, keep, true, steps, up_at);
        }
    }

    fn emit_tree(
        &self,
        v: usize,
        keep: &dyn Fn(usize) -> bool,
        mirrored: bool,
        steps: &mut Vec<Step>,
        up_at: &mut BTreeMap<usize, usize>,
    ) {
        if !mirrored {
            up_at.insert(v, steps.len());
        }
        steps.push(Step::Up);
        let kids: Vec<usize> = self.left.children(v).iter().copied().filter(|&w| keep(w)).collect();
        if mirrored {
            for &w in kids.iter().rev() {
                self.emit_tree(w, keep, true, steps, up_at);
            }
        } else {
            for &w in &kids {
                self.emit_tree(w, keep, false, steps, up_at);
            }
        }
        steps.push(Step::Down);
    }

    /// The Dyck path of the full forest.
    pub fn path(&self) -> LatticePath {
        self.full_forest(&|_| true).0
    }

    /// Hook lengths of the left part.
    pub fn hooks(&self) -> Vec<usize> {
        hooks(&self.left)
    }
}

impl fmt::Display for SymmetricForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left, self.centers)
    }
}

impl FromStr for SymmetricForest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SymmetricForest::parse(s)
    }
}

impl Serialize for SymmetricForest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every symmetric forest whose left part has `n` vertices.
pub fn enumerate_symmetric_forests(n: usize) -> Vec<SymmetricForest> {
    let mut out = Vec::new();
    for left in crate::paths::enumerate_forests(n) {
        let chain = SymmetricForest { left: left.clone(), centers: 0 }.center_chain().len();
        for c in 0..=chain {
            out.push(SymmetricForest { left: left.clone(), centers: c });
        }
    }
    out
}

/// Increasing labeling of the left part with some non-center vertices
/// starred.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedIncreasingLabeling {
    forest: SymmetricForest,
    labels: Vec<usize>,
    marked: Vec<bool>,
}

impl MarkedIncreasingLabeling {
    pub fn new(forest: SymmetricForest, labels: Vec<usize>, marked: Vec<bool>) -> Result<Self> {
        crate::paths::IncreasingLabeling::new(forest.left.clone(), labels.clone())?;
        if marked.len() != labels.len() {
            return Err(Error::SizeMismatch(marked.len(), labels.len()));
        }
        for v in forest.center_vertices() {
            if marked[v] {
                return Err(Error::Invariant(format!("center vertex {v} cannot be marked")));
            }
        }
        Ok(MarkedIncreasingLabeling { forest, labels, marked })
    }

    /// Parses `"(())()|1:1*,3*,2"`, labels in pre-order.
    pub fn parse(text: &str) -> Result<Self> {
        let (f, l) =
            text.rsplit_once(':').ok_or_else(|| Error::Parse(format!("expected forest:labels, got {text:?}")))?;
        let forest = SymmetricForest::parse(f)?;
        let marked: Vec<bool> =
            if l.trim().is_empty() { vec![] } else { l.split(',').map(|x| x.trim().ends_with('*')).collect() };
        let labels = parse_usize_list(&l.replace('*', ""))?;
        MarkedIncreasingLabeling::new(forest, labels, marked)
    }

    pub fn forest(&self) -> &SymmetricForest {
        &self.forest
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_marked(&self, v: usize) -> bool {
        self.marked[v]
    }

    /// Labels of the starred vertices.
    pub fn mark_set(&self) -> BTreeSet<usize> {
        (0..self.labels.len()).filter(|&v| self.marked[v]).map(|v| self.labels[v]).collect()
    }

    /// Pairs `(u, v)` of incomparable vertices, `u` left of `v`, with the
    /// larger label on `u`. Vertices are pre-order indices.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let f = &self.forest.left;
        let mut out = Vec::new();
        for u in 0..f.size() {
            for v in u + 1..f.size() {
                if !f.is_descendant(v, u) && self.labels[u] > self.labels[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `|INV| + Σ_{i∈MARK} (n+1-i)`.
    pub fn weight(&self) -> usize {
        let n = self.labels.len();
        self.inversions().len() + self.mark_set().iter().map(|i| n + 1 - i).sum::<usize>()
    }
}

impl fmt::Display for MarkedIncreasingLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.forest)?;
        for (v, l) in self.labels.iter().enumerate() {
            if v > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}{}", if self.marked[v] { "*" } else { "" })?;
        }
        Ok(())
    }
}

impl FromStr for MarkedIncreasingLabeling {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MarkedIncreasingLabeling::parse(s)
    }
}

impl Serialize for MarkedIncreasingLabeling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All increasing labelings of the left part times all subsets of
/// non-center vertices.
pub fn enumerate_marked_labelings(forest: &SymmetricForest) -> Vec<MarkedIncreasingLabeling> {
    let free: Vec<usize> = (0..forest.size()).filter(|&v| !forest.is_center(v)).collect();
    let mut out = Vec::new();
    for l in enumerate_increasing_labelings(&forest.left) {
        for mask in 0u64..(1 << free.len()) {
            let mut marked = vec![false; forest.size()];
            for (b, &v) in free.iter().enumerate() {
                marked[v] = mask >> b & 1 == 1;
            }
            out.push(MarkedIncreasingLabeling { forest: forest.clone(), labels: l.labels().to_vec(), marked });
        }
    }
    out
}

/// Whether the path is invariant under reflection in the anti-diagonal
/// through its midpoint.
pub fn is_symmetric_path(path: &LatticePath) -> bool {
    let s = path.steps();
    let m = s.len();
    (0..m).all(|i| s[i] == s[m - 1 - i].flip())
}

/// Symmetric Dyck paths of semilength `n`.
pub fn symmetric_paths(n: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    let mut half = Vec::with_capacity(n);
    fn rec(n: usize, half: &mut Vec<Step>, y: usize, x: usize, out: &mut Vec<LatticePath>) {
        if half.len() == n {
            let mut steps = half.clone();
            steps.extend(half.iter().rev().map(|s| s.flip()));
            out.push(LatticePath::new(steps, 1));
            return;
        }
        for s in [Step::Up, Step::Down] {
            let (y2, x2) = if s == Step::Up { (y + 1, x) } else { (y, x + 1) };
            if x2 <= y2 {
                half.push(s);
                rec(n, half, y2, x2, out);
                half.pop();
            }
        }
    }
    rec(n, &mut half, 0, 0, &mut out);
    out
}

/// Mirror image of a cell for paths of semilength `n`.
pub fn reflect_cell(c: Cell, n: usize) -> Cell {
    let m = n as i64 - 1;
    Cell::new(m - c.y, m - c.x)
}

fn reflect_sorted(cells: &[Cell], n: usize) -> Vec<Cell> {
    let mut v: Vec<Cell> = cells.iter().map(|&c| reflect_cell(c, n)).collect();
    v.sort();
    v
}

fn sorted(cells: &[Cell]) -> Vec<Cell> {
    let mut v = cells.to_vec();
    v.sort();
    v
}

/// A Dyck tiling whose paths and tile set are invariant under reflection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetricTiling {
    tiling: Tiling,
}

impl SymmetricTiling {
    pub fn new(tiling: Tiling) -> Result<Self> {
        if tiling.k() != 1 {
            return Err(Error::Unsupported("symmetric tilings need k = 1".into()));
        }
        if !is_symmetric_path(tiling.lower()) || !is_symmetric_path(tiling.upper()) {
            return Err(Error::Invariant("boundary paths are not symmetric".into()));
        }
        let n = tiling.lower().semilength();
        let tiles: BTreeSet<Vec<Cell>> = tiling.tiles().iter().map(|t| sorted(t.cells())).collect();
        if tiles.iter().any(|t| !tiles.contains(&reflect_sorted(t, n))) {
            return Err(Error::Invariant("tile set is not mirror invariant".into()));
        }
        Ok(SymmetricTiling { tiling })
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn into_tiling(self) -> Tiling {
        self.tiling
    }

    pub fn stats(&self) -> SymmetricStats {
        symmetric_stats(&self.tiling).expect("validated on construction")
    }
}

impl Serialize for SymmetricTiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.tiling.serialize(s)
    }
}

/// Signed statistics of a symmetric tiling. `plus` refers to tiles
/// strictly left of the center line, `zero` to tiles meeting it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymmetricStats {
    pub tiles_plus: usize,
    pub tiles_zero: usize,
    pub area_plus: usize,
    pub area_zero: usize,
    pub art_plus: usize,
    pub art_zero: usize,
}

pub fn symmetric_stats(t: &Tiling) -> Result<SymmetricStats> {
    let center = t.lower().semilength() as i64 - 1;
    let mut s = SymmetricStats::default();
    for tile in t.tiles() {
        let sums = tile.cells().iter().map(|c| c.x + c.y);
        let (lo, hi) = (sums.clone().min().unwrap_or(0), sums.max().unwrap_or(0));
        if lo <= center && center <= hi {
            s.tiles_zero += 1;
            s.area_zero += tile.size();
        } else if hi < center {
            s.tiles_plus += 1;
            s.area_plus += tile.size();
        }
    }
    if 2 * s.tiles_plus + s.tiles_zero != t.tiles().len() {
        return Err(Error::Invariant("tiles on the two sides do not pair up".into()));
    }
    for (a, n) in [(s.area_plus, s.tiles_plus), (s.area_zero, s.tiles_zero)] {
        if (a + n) % 2 != 0 {
            return Err(Error::Invariant(format!("half-integral art: area {a}, tiles {n}")));
        }
    }
    s.art_plus = (s.area_plus + s.tiles_plus) / 2;
    s.art_zero = (s.area_zero + s.tiles_zero) / 2;
    Ok(s)
}

/// Calls `visit` on every symmetric tiling of `lower / upper`.
pub fn for_each_symmetric_tiling<F: FnMut(&[Vec<Cell>])>(
    lower: &LatticePath,
    upper: &LatticePath,
    visit: F,
) -> Result<()> {
    if !is_symmetric_path(lower) || !is_symmetric_path(upper) {
        return Ok(());
    }
    let n = lower.semilength();
    // every placed tile must agree with whatever already covers its mirror
    let accept = move |placed: &[Vec<Cell>], cand: &[Cell]| {
        let mirror = reflect_sorted(cand, n);
        let own = sorted(cand);
        if mirror != own && mirror.iter().any(|c| own.binary_search(c).is_ok()) {
            return false;
        }
        for t in placed {
            if t.iter().any(|c| mirror.binary_search(c).is_ok()) && sorted(t) != mirror {
                return false;
            }
        }
        true
    };
    for_each_tiling_where(lower, upper, &accept, visit)
}

fn collect(lower: &LatticePath, upper: &LatticePath, out: &mut Vec<SymmetricTiling>) -> Result<()> {
    for_each_symmetric_tiling(lower, upper, |tiles| {
        let tiles = tiles.iter().map(|c| DyckTile::new(c.clone(), 1).expect("search yields tiles")).collect();
        out.push(SymmetricTiling {
            tiling: Tiling::new(lower.clone(), upper.clone(), tiles).expect("search yields tilings"),
        });
    })
}

/// Every symmetric tiling with the given lower path.
pub fn enumerate_symmetric_fixed_lower(lower: &LatticePath) -> Result<Vec<SymmetricTiling>> {
    let mut out = Vec::new();
    for upper in paths_above(lower).iter().filter(|p| is_symmetric_path(p)) {
        collect(lower, upper, &mut out)?;
    }
    Ok(out)
}

/// Every symmetric tiling with the given upper path.
pub fn enumerate_symmetric_fixed_upper(upper: &LatticePath) -> Result<Vec<SymmetricTiling>> {
    let mut out = Vec::new();
    for lower in paths_below(upper).iter().filter(|p| is_symmetric_path(p)) {
        collect(lower, upper, &mut out)?;
    }
    Ok(out)
}

// semilength of the current stage and the indices a new leaf occupies
fn staged_forest(f: &SymmetricForest, max_label: usize, labels: &[usize]) -> (LatticePath, BTreeMap<usize, usize>) {
    f.full_forest(&|w| labels[w] <= max_label)
}

/// Builds the symmetric tiling of a marked increasing labeling by inserting
/// vertices in label order. Each insertion spreads the tiling at the new
/// leaf (and at its mirror), then pushes a strip of unit tiles along the
/// upper path up to the center line. A marked vertex also claims the
/// center cell between the two strips.
pub fn phi(l: &MarkedIncreasingLabeling) -> Result<SymmetricTiling> {
    let f = &l.forest;
    let n = f.size();
    let mut by_label = vec![0; n + 1];
    for (v, &lab) in l.labels.iter().enumerate() {
        by_label[lab] = v;
    }
    let mut t = Tiling::empty(LatticePath::new(Vec::new(), 1));
    for (j, &v) in by_label.iter().enumerate().skip(1) {
        let (lambda, up_at) = staged_forest(f, j, &l.labels);
        let old = t.lower().semilength();
        let p = up_at[&v];
        if f.is_center(v) {
            if p != old {
                return Err(Error::Invariant(format!("center vertex {v} not on the center line")));
            }
            t = spread(&t, p);
        } else {
            t = spread(&spread(&t, p), 2 * old + 2 - p);
            let big = old + 2;
            let mut steps = t.upper().steps().to_vec();
            let d = steps.remove(p + 1);
            steps.insert(big - 1, d);
            let u = steps.remove(2 * big - 2 - p);
            steps.insert(big, u);
            if l.marked[v] {
                steps[big - 1] = Step::Up;
                steps[big] = Step::Down;
            }
            let upper = LatticePath::new(steps, 1);
            let before = crate::tilings::region_cells(t.lower(), t.upper())?;
            let after = crate::tilings::region_cells(t.lower(), &upper)?;
            let mut tiles = t.tiles().to_vec();
            tiles.extend(after.difference(&before).map(|&c| DyckTile::unit(c)));
            t = Tiling::new(t.lower().clone(), upper, tiles)?;
        }
        if *t.lower() != lambda {
            return Err(Error::Invariant(format!(
                "stage {j}: lower path {} differs from forest path {lambda}",
                t.lower()
            )));
        }
    }
    let t = Tiling::new(t.lower().clone(), t.upper().clone(), t.tiles().to_vec())?;
    SymmetricTiling::new(t)
}

/// `Σ q^{|INV|+Σ(n+1-i)} t^{|MARK|}` over marked labelings of `f`.
pub fn labeling_gf(f: &SymmetricForest) -> MultiPoly {
    enumerate_marked_labelings(f)
        .iter()
        .map(|l| MultiPoly::monomial(num_bigint::BigInt::from(1), [l.weight() as u64, l.mark_set().len() as u64, 0]))
        .sum()
}

/// `Σ q^{art_+ + art_0} t^{tiles_0}` over symmetric tilings above `lower`.
pub fn tiling_gf_fixed_lower(lower: &LatticePath) -> Result<MultiPoly> {
    let mut gf = MultiPoly::zero();
    for t in enumerate_symmetric_fixed_lower(lower)? {
        let s = t.stats();
        gf = gf
            + MultiPoly::monomial(
                num_bigint::BigInt::from(1),
                [(s.art_plus + s.art_zero) as u64, s.tiles_zero as u64, 0],
            );
    }
    Ok(gf)
}

/// `2^{n-c} n! / ∏ h` over the left part.
pub fn marked_labeling_count(f: &SymmetricForest) -> num_bigint::BigInt {
    let n = f.size();
    let mut num: num_bigint::BigInt = (1..=n as u64).product::<num_bigint::BigInt>() << (n - f.centers());
    for h in f.hooks() {
        num /= h;
    }
    num
}

/// `(1+tq)(1+tq^2)⋯(1+tq^n) [n]! / ∏ [h]` for a forest without center
/// vertices.
pub fn center_free_gf(f: &SymmetricForest) -> Result<MultiPoly> {
    let n = f.size() as u64;
    let mut rhs = qfact(n);
    for h in f.hooks() {
        rhs = rhs.div_exact(&qint(h as u64))?;
    }
    for i in 1..=n {
        rhs = &rhs * &(MultiPoly::one() + MultiPoly::monomial(num_bigint::BigInt::from(1), [i, 1, 0]));
    }
    Ok(rhs)
}

/// Whether each up step of the first half of `mu` closes in the first half.
pub fn matched_up_steps(mu: &LatticePath) -> Vec<bool> {
    let s = mu.steps();
    let half = s.len() / 2;
    let mut out = Vec::new();
    let mut open = Vec::new();
    for (i, &st) in s.iter().enumerate() {
        match st {
            Step::Up => {
                if i < half {
                    open.push(out.len());
                    out.push(false);
                } else {
                    open.push(usize::MAX);
                }
            }
            Step::Down => {
                if let Some(u) = open.pop() {
                    if i < half && u != usize::MAX {
                        out[u] = true;
                    }
                }
            }
        }
    }
    out
}

/// Labels on the up steps of the first half of a symmetric Dyck path:
/// matched steps carry a label below their height, unmatched steps carry
/// an involutive sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetricHermiteHistory {
    path: LatticePath,
    labels: Vec<usize>,
}

impl SymmetricHermiteHistory {
    pub fn new(path: LatticePath, labels: Vec<usize>) -> Result<Self> {
        if path.k() != 1 || !is_symmetric_path(&path) || !crate::paths::is_k_dyck(&path) {
            return Err(Error::Invariant(format!("{path} is not a symmetric Dyck path")));
        }
        let matched = matched_up_steps(&path);
        if labels.len() != matched.len() {
            return Err(Error::SizeMismatch(labels.len(), matched.len()));
        }
        for (i, &a) in labels.iter().enumerate() {
            let h = crate::paths::up_step_height(&path, i + 1)?;
            if matched[i] && a >= h {
                return Err(Error::Invariant(format!("label {a} on matched up step {} of height {h}", i + 1)));
            }
        }
        let h = SymmetricHermiteHistory { path, labels };
        if !is_involutive(&h.unmatched_labels()) {
            return Err(Error::Invariant(format!("unmatched labels {:?} are not involutive", h.unmatched_labels())));
        }
        Ok(h)
    }

    /// Parses `"UUDD:0,1"` with labels for the first half only.
    pub fn parse(text: &str) -> Result<Self> {
        let (p, l) = text.split_once(':').ok_or_else(|| Error::Parse(format!("expected path:labels, got {text:?}")))?;
        SymmetricHermiteHistory::new(LatticePath::parse_dyck(p.trim(), 1)?, parse_usize_list(l)?)
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Sum of labels.
    pub fn norm(&self) -> usize {
        self.labels.iter().sum()
    }

    /// Number of positive labels on unmatched up steps.
    pub fn pos(&self) -> usize {
        self.unmatched_labels().iter().filter(|&&a| a > 0).count()
    }

    pub fn unmatched_labels(&self) -> Vec<usize> {
        let m = matched_up_steps(&self.path);
        self.labels.iter().zip(&m).filter(|&(_, &mt)| !mt).map(|(&a, _)| a).collect()
    }
}

impl fmt::Display for SymmetricHermiteHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.labels.iter().map(|a| a.to_string()).collect();
        write!(f, "{}:{}", self.path, l.join(","))
    }
}

impl Serialize for SymmetricHermiteHistory {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All symmetric Hermite histories on `mu`, sorted.
pub fn enumerate_symmetric_hermite(mu: &LatticePath) -> Result<Vec<SymmetricHermiteHistory>> {
    if !is_symmetric_path(mu) || !crate::paths::is_k_dyck(mu) {
        return Err(Error::Precondition(format!("{mu} is not a symmetric Dyck path")));
    }
    let matched = matched_up_steps(mu);
    let ranges: Vec<usize> = (0..matched.len())
        .map(|i| if matched[i] { crate::paths::up_step_height(mu, i + 1) } else { Ok(1) })
        .collect::<Result<_>>()?;
    let inv = enumerate_involutive(matched.iter().filter(|&&m| !m).count());
    let mut out = Vec::new();
    let mut odo = vec![0; ranges.len()];
    loop {
        for seq in &inv {
            let mut it = seq.iter();
            let labels = (0..ranges.len())
                .map(|i| if matched[i] { odo[i] } else { *it.next().expect("one label per unmatched step") })
                .collect();
            out.push(SymmetricHermiteHistory { path: mu.clone(), labels });
        }
        let mut i = ranges.len();
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            odo[i] += 1;
            if odo[i] < ranges[i] {
                break;
            }
            odo[i] = 0;
        }
    }
}

fn history_key(h: &SymmetricHermiteHistory) -> (usize, usize) {
    (h.norm(), h.pos())
}

fn tiling_key(t: &SymmetricTiling) -> (usize, usize) {
    let s = t.stats();
    (s.tiles_plus + s.tiles_zero, s.tiles_zero)
}

// both sides sorted within each statistic class, paired by rank
fn psi_classes(mu: &LatticePath) -> Result<(Vec<SymmetricHermiteHistory>, Vec<SymmetricTiling>)> {
    let mut hs = enumerate_symmetric_hermite(mu)?;
    let mut ts = enumerate_symmetric_fixed_upper(mu)?;
    hs.sort_by(|a, b| history_key(a).cmp(&history_key(b)).then_with(|| a.cmp(b)));
    ts.sort_by(|a, b| tiling_key(a).cmp(&tiling_key(b)).then_with(|| a.cmp(b)));
    if hs.len() != ts.len() || hs.iter().zip(&ts).any(|(h, t)| history_key(h) != tiling_key(t)) {
        return Err(Error::Invariant(format!("histories and tilings on {mu} have different statistics")));
    }
    Ok((hs, ts))
}

/// Statistic-preserving bijection from histories on `mu` to symmetric
/// tilings below `mu`: `‖H‖ = tiles_+ + tiles_0` and `pos(H) = tiles_0`.
/// Within a statistic class both sides are matched in sorted order.
pub fn psi(h: &SymmetricHermiteHistory) -> Result<SymmetricTiling> {
    let (hs, ts) = psi_classes(&h.path)?;
    let i = hs.iter().position(|x| x == h).expect("history enumerated on its own path");
    Ok(ts[i].clone())
}

pub fn psi_inverse(t: &SymmetricTiling) -> Result<SymmetricHermiteHistory> {
    let (hs, ts) = psi_classes(t.tiling().upper())?;
    let i = ts
        .iter()
        .position(|x| x == t)
        .ok_or_else(|| Error::Invariant("tiling not enumerated below its upper path".into()))?;
    Ok(hs[i].clone())
}

/// Labels of the first half of the ordinary Hermite history of `t`.
pub fn first_half_labels(t: &SymmetricTiling) -> Vec<usize> {
    let h = tiling_to_hermite(t.tiling());
    h.labels()[..matched_up_steps(t.tiling().upper()).len()].to_vec()
}

/// Membership in the inductively defined family: `()` and `(0)`; append 0;
/// or append `r` and insert 0 before the last `r` entries.
pub fn is_involutive(seq: &[usize]) -> bool {
    enumerate_involutive(seq.len()).iter().any(|s| s == seq)
}

/// All involutive sequences of length `k`, sorted.
pub fn enumerate_involutive(k: usize) -> Vec<Vec<usize>> {
    let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::from([vec![]]), BTreeSet::from([vec![0]])];
    for len in 2..=k {
        let mut next: BTreeSet<Vec<usize>> = levels[len - 1].iter().map(|s| [s.as_slice(), &[0]].concat()).collect();
        for s in &levels[len - 2] {
            for r in 1..len {
                let mut v = s.clone();
                v.push(r);
                v.insert(v.len() - r, 0);
                next.insert(v);
            }
        }
        levels.push(next);
    }
    levels.into_iter().nth(k).map(|s| s.into_iter().collect()).unwrap_or_default()
}

/// `f_0 = f_1 = 1`, `f_k = f_{k-1} + tq[k-1] f_{k-2}`.
pub fn f_poly(k: usize) -> MultiPoly {
    let mut f = vec![MultiPoly::one(), MultiPoly::one()];
    for j in 2..=k {
        let next = &f[j - 1] + &(&(&MultiPoly::t() * &MultiPoly::q()) * &(&qint(j as u64 - 1) * &f[j - 2]));
        f.push(next);
    }
    f.swap_remove(k)
}

/// `Σ q^{tiles_+ + tiles_0} t^{tiles_0}` over symmetric tilings below `mu`.
pub fn tiling_gf_fixed_upper(mu: &LatticePath) -> Result<MultiPoly> {
    let mut gf = MultiPoly::zero();
    for t in enumerate_symmetric_fixed_upper(mu)? {
        let s = t.stats();
        gf = gf
            + MultiPoly::monomial(
                num_bigint::BigInt::from(1),
                [(s.tiles_plus + s.tiles_zero) as u64, s.tiles_zero as u64, 0],
            );
    }
    Ok(gf)
}

/// `f_k ∏ [HT(u)]` over the matched up steps `u` of the first half, `k`
/// the number of unmatched ones.
pub fn fixed_upper_product(mu: &LatticePath) -> Result<MultiPoly> {
    let m = matched_up_steps(mu);
    let mut out = f_poly(m.iter().filter(|&&x| !x).count());
    for (i, &matched) in m.iter().enumerate() {
        if matched {
            out = &out * &qint(crate::paths::up_step_height(mu, i + 1)? as u64);
        }
    }
    Ok(out)
}

/// `Σ q^{‖H‖} t^{pos(H)}` over symmetric histories on `mu`.
pub fn history_gf(mu: &LatticePath) -> Result<MultiPoly> {
    Ok(enumerate_symmetric_hermite(mu)?
        .iter()
        .map(|h| MultiPoly::monomial(num_bigint::BigInt::from(1), [h.norm() as u64, h.pos() as u64, 0]))
        .sum())
}

/// Matching on `{-n..-1, 1..n}` closed under negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetricMatching {
    arcs: Vec<(i64, i64)>,
}

impl SymmetricMatching {
    pub fn new(mut arcs: Vec<(i64, i64)>) -> Result<Self> {
        for a in arcs.iter_mut() {
            if a.0 > a.1 {
                *a = (a.1, a.0);
            }
        }
        arcs.sort();
        let n = arcs.len() as i64;
        let mut seen = BTreeSet::new();
        for &(a, b) in &arcs {
            for v in [a, b] {
                if v == 0 || v.abs() > n || !seen.insert(v) {
                    return Err(Error::Invariant(format!("vertex {v} is repeated or out of range")));
                }
            }
            let m = (-b, -a);
            if arcs.binary_search(&m).is_err() {
                return Err(Error::Invariant(format!("arc ({a},{b}) has no mirror")));
            }
        }
        Ok(SymmetricMatching { arcs })
    }

    pub fn arcs(&self) -> &[(i64, i64)] {
        &self.arcs
    }

    /// Crossing pairs of arcs `a<c<b<d`, one from each mirror orbit
    /// (the representative with `b + c >= 0`).
    pub fn crossings(&self) -> Vec<((i64, i64), (i64, i64))> {
        let mut out = Vec::new();
        for &(a, b) in &self.arcs {
            for &(c, d) in &self.arcs {
                if a < c && c < b && b < d && b + c >= 0 {
                    out.push(((a, b), (c, d)));
                }
            }
        }
        out
    }

    pub fn cro(&self) -> usize {
        self.crossings().len()
    }

    /// Crossings of an arc with its own mirror.
    pub fn sscr(&self) -> usize {
        self.crossings().iter().filter(|((a, b), (c, d))| (*c, *d) == (-*b, -*a)).count()
    }
}

impl fmt::Display for SymmetricMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|(a, b)| format!("{a}~{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for SymmetricMatching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric matchings whose `i`-th smallest vertex opens an arc exactly
/// when step `i` of `mu` is up.
pub fn enumerate_symmetric_matchings(mu: &LatticePath) -> Result<Vec<SymmetricMatching>> {
    let n = mu.semilength() as i64;
    let value = |v: usize| if (v as i64) <= n { v as i64 - n - 1 } else { v as i64 - n };
    let mut out = Vec::new();
    for m in crate::hermite::enumerate_matchings(mu)? {
        let arcs: Vec<(i64, i64)> = m.arcs().iter().map(|&(a, b)| (value(a), value(b))).collect();
        if let Ok(s) = SymmetricMatching::new(arcs) {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}

/// `Σ q^{cro} t^{sscr}` over symmetric matchings of shape `mu`.
pub fn matching_gf(mu: &LatticePath) -> Result<MultiPoly> {
    Ok(enumerate_symmetric_matchings(mu)?
        .iter()
        .map(|m| MultiPoly::monomial(num_bigint::BigInt::from(1), [m.cro() as u64, m.sscr() as u64, 0]))
        .sum())
}

/// `Σ q^{tiles_+ + tiles_0} t^{tiles_0} s^{HT}` over all symmetric tilings
/// of semilength `n`, where `HT` counts unmatched up steps in the first
/// half of the upper path.
pub fn grand_gf(n: usize) -> Result<MultiPoly> {
    let mut gf = MultiPoly::zero();
    for mu in symmetric_paths(n) {
        let ht = matched_up_steps(&mu).iter().filter(|&&m| !m).count() as u64;
        gf = gf + &tiling_gf_fixed_upper(&mu)? * &MultiPoly::monomial(num_bigint::BigInt::from(1), [0, 0, ht]);
    }
    Ok(gf)
}

/// The closed form for [`grand_gf`]. Terms whose halved indices are not
/// integers, or whose binomials have negative arguments, vanish.
pub fn grand_gf_closed(n: usize) -> Result<RationalFn> {
    let n = n as i64;
    let mut total = RationalFn::from_poly(MultiPoly::zero());
    for m in 0..=n {
        if (n - m) % 2 != 0 {
            continue;
        }
        let mut inner = MultiPoly::zero();
        for k in (m..=n).step_by(2) {
            let j = (n - k) / 2;
            let ballot = binomial(n, j) - binomial(n, j - 1);
            let e = (k - m) / 2;
            let sign: MultiPoly = if e % 2 == 0 { 1.into() } else { (-1).into() };
            let term = &(&sign * &MultiPoly::q_pow((e * (e + 1) / 2) as u64)) * &qbinom(((k + m) / 2) as u64, e);
            inner = inner + &MultiPoly::constant(ballot) * &term;
        }
        let num = &(&MultiPoly::monomial(num_bigint::BigInt::from(1), [0, 0, m as u64]) * &f_poly(m as usize)) * &inner;
        let den = crate::algebra::one_minus_q().pow(((n - m) / 2) as u32);
        total = &total + &RationalFn::new(num, den)?;
    }
    Ok(total)
}
