//! Hermite histories, the bijection with tilings of fixed upper path, and
//! matchings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orders::Permutation;
use crate::paths::{is_k_dyck, parse_usize_list, LatticePath, Step};
use crate::tilings::{spread, Cell, DyckTile, Tiling};

/// A k-Dyck path with a label on every up step, bounded by its height.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HermiteHistory {
    path: LatticePath,
    labels: Vec<usize>,
}

impl HermiteHistory {
    pub fn new(path: LatticePath, labels: Vec<usize>) -> Result<Self> {
        if !is_k_dyck(&path) {
            return Err(Error::Precondition(format!("{path} is not a {}-Dyck path", path.k())));
        }
        let heights = path.heights();
        if labels.len() != heights.len() {
            return Err(Error::SizeMismatch(labels.len(), heights.len()));
        }
        if let Some(i) = (0..labels.len()).find(|&i| labels[i] >= heights[i]) {
            return Err(Error::Precondition(format!(
                "label {} of up step {} is not below its height {}",
                labels[i],
                i + 1,
                heights[i]
            )));
        }
        Ok(Self { path, labels })
    }

    /// Parses `<path>:<labels>`, e.g. `UUDD:0,1`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let (path, labels) =
            text.split_once(':').ok_or_else(|| Error::Parse(format!("expected <path>:<labels>, got {text:?}")))?;
        Self::new(LatticePath::parse(path, k)?, parse_usize_list(labels)?)
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    /// Labels of the up steps, bottom to top.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn weight(&self) -> usize {
        self.labels.iter().sum()
    }
}

impl fmt::Display for HermiteHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "{}:{}", self.path, labels.join(","))
    }
}

impl Serialize for HermiteHistory {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All label vectors in `∏ {0..HT(u)-1}`, in lexicographic order.
pub fn enumerate_hermite(path: &LatticePath) -> Result<Vec<HermiteHistory>> {
    if !is_k_dyck(path) {
        return Err(Error::Precondition(format!("{path} is not a {}-Dyck path", path.k())));
    }
    let heights = path.heights();
    let mut out = Vec::new();
    let mut labels = vec![0; heights.len()];
    loop {
        out.push(HermiteHistory { path: path.clone(), labels: labels.clone() });
        // odometer increment, last position fastest
        let mut i = labels.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < heights[i] {
                break;
            }
            labels[i] = 0;
        }
    }
}

/// For each up step of the upper path, the number of tiles met by entering
/// at its left side and repeatedly leaving through the right side of the
/// rightmost cell into the next tile.
pub fn tiling_to_hermite(t: &Tiling) -> HermiteHistory {
    let upper = t.upper();
    let labels = upper
        .up_columns()
        .iter()
        .enumerate()
        .map(|(y, &a)| {
            let mut cur = Cell::new(a as i64, y as i64);
            let mut count = 0;
            while let Some(tile) = t.tile_starting_at(cur) {
                count += 1;
                let last = tile.last();
                cur = Cell::new(last.x + 1, last.y);
            }
            count
        })
        .collect();
    HermiteHistory { path: upper.clone(), labels }
}

/// The inverse of [`tiling_to_hermite`], by the recursive construction:
/// lower a positive label sitting on a peak by swapping the peak (then add a
/// unit tile), or else remove a `U D^k` factor (then stretch the tiling).
pub fn hermite_to_tiling(h: &HermiteHistory) -> Tiling {
    let k = h.path.k();
    let steps = h.path.steps();
    let ups = h.path.up_indices();
    // Case 1: leftmost peak with a positive label
    for (row, &i) in ups.iter().enumerate() {
        if h.labels[row] >= 1 && steps.get(i + 1) == Some(&Step::Down) {
            let mut swapped = steps.to_vec();
            swapped.swap(i, i + 1);
            let mut labels = h.labels.clone();
            labels[row] -= 1;
            let smaller = HermiteHistory { path: h.path.with_steps(swapped), labels };
            let inner = hermite_to_tiling(&smaller);
            let column = i - row;
            let mut tiles = inner.tiles().to_vec();
            tiles.push(DyckTile::unit(Cell::new(column as i64, row as i64)));
            return Tiling::from_parts_unchecked(inner.lower().clone(), h.path.clone(), tiles);
        }
    }
    // Case 2: leftmost up step followed by k down steps
    for (row, &i) in ups.iter().enumerate() {
        let followed = (1..=k).all(|d| steps.get(i + d) == Some(&Step::Down));
        if followed {
            debug_assert_eq!(h.labels[row], 0);
            let mut reduced = steps.to_vec();
            reduced.drain(i..=i + k);
            let mut labels = h.labels.clone();
            labels.remove(row);
            let smaller = HermiteHistory { path: h.path.with_steps(reduced), labels };
            return spread(&hermite_to_tiling(&smaller), i);
        }
    }
    Tiling::empty(h.path.clone())
}

/// A perfect matching of `{1, ..., 2n}`, stored as arcs `(opener, closer)`
/// sorted by opener.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        arcs.sort_unstable();
        let points: BTreeSet<usize> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let m = 2 * arcs.len();
        if points.len() != m || points.iter().any(|&p| p == 0 || p > m) {
            return Err(Error::Precondition(format!("{arcs:?} is not a perfect matching of 1..={m}")));
        }
        Ok(Self { arcs })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// The path whose up steps are the arc openers.
    pub fn shape(&self) -> LatticePath {
        let mut steps = vec![Step::Down; 2 * self.arcs.len()];
        for &(a, _) in &self.arcs {
            steps[a - 1] = Step::Up;
        }
        LatticePath::new(steps, 1)
    }

    /// Pairs of arcs `{i, j}, {k, l}` with `i < k < j < l`.
    pub fn crossings(&self) -> usize {
        let mut count = 0;
        for (x, &(i, j)) in self.arcs.iter().enumerate() {
            for &(k, l) in &self.arcs[x + 1..] {
                if i < k && k < j && j < l {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `1-5,2-3,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Matching::new([]);
        }
        let arcs = s
            .split(',')
            .map(|arc| {
                let (a, b) =
                    arc.split_once('-').ok_or_else(|| Error::Parse(format!("arc {arc:?} is not of the form a-b")))?;
                let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad arc {arc:?}")));
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Matching::new(arcs)
    }
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn require_k1(path: &LatticePath) -> Result<()> {
    if path.k() != 1 {
        return Err(Error::Unsupported(format!("matchings need k = 1, got k = {}", path.k())));
    }
    Ok(())
}

/// Reads steps right to left; an up step with label `j` is matched to the
/// `(j+1)`-th nearest closer still open to its right. Each label then counts
/// the crossings in which its arc has the later opener.
pub fn hermite_to_matching(h: &HermiteHistory) -> Result<Matching> {
    require_k1(&h.path)?;
    let steps = h.path.steps();
    let mut open: Vec<usize> = Vec::new(); // unmatched closers, nearest first
    let mut arcs = Vec::new();
    let mut row = h.labels.len();
    for i in (0..steps.len()).rev() {
        match steps[i] {
            Step::Down => open.insert(0, i + 1),
            Step::Up => {
                row -= 1;
                let closer = open.remove(h.labels[row]);
                arcs.push((i + 1, closer));
            }
        }
    }
    Matching::new(arcs)
}

/// Inverse of [`hermite_to_matching`]: the label of arc `(i, c)` is the
/// number of closers strictly between `i` and `c` whose opener is left of `i`.
pub fn matching_to_hermite(m: &Matching) -> Result<HermiteHistory> {
    let partner_of_closer: std::collections::BTreeMap<usize, usize> = m.arcs.iter().map(|&(a, b)| (b, a)).collect();
    let labels = m
        .arcs
        .iter()
        .map(|&(i, c)| (i + 1..c).filter(|p| partner_of_closer.get(p).is_some_and(|&o| o < i)).count())
        .collect();
    HermiteHistory::new(m.shape(), labels)
}

/// All perfect matchings whose openers are the up steps of `shape`.
pub fn enumerate_matchings(shape: &LatticePath) -> Result<Vec<Matching>> {
    require_k1(shape)?;
    if !is_k_dyck(shape) {
        return Err(Error::Precondition(format!("{shape} is not a Dyck path")));
    }
    fn go(steps: &[Step], i: usize, open: &mut Vec<usize>, arcs: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        if i == steps.len() {
            out.push(Matching::new(arcs.clone()).expect("complete matching"));
            return;
        }
        match steps[i] {
            Step::Up => {
                open.push(i + 1);
                go(steps, i + 1, open, arcs, out);
                open.pop();
            }
            Step::Down => {
                for idx in 0..open.len() {
                    let opener = open.remove(idx);
                    arcs.push((opener, i + 1));
                    go(steps, i + 1, open, arcs, out);
                    arcs.pop();
                    open.insert(idx, opener);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(shape.steps(), 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Places a dot in column `x`, row `y` for each arc joining the up step of
/// row `y` to the down step of column `x`, and reads the dots as a
/// permutation in matrix convention (row 1 at the top).
pub fn matching_to_permutation(m: &Matching) -> Permutation {
    let shape = m.shape();
    let n = m.arcs.len();
    let steps = shape.steps();
    let mut row_of = vec![0; steps.len() + 1];
    let mut col_of = vec![0; steps.len() + 1];
    let (mut rows, mut cols) = (0, 0);
    for (i, s) in steps.iter().enumerate() {
        match s {
            Step::Up => {
                row_of[i + 1] = rows;
                rows += 1;
            }
            Step::Down => {
                col_of[i + 1] = cols;
                cols += 1;
            }
        }
    }
    let mut word = vec![0; n];
    for &(a, b) in &m.arcs {
        word[col_of[b]] = n - row_of[a];
    }
    Permutation::new(word).expect("one dot per row and column")
}
