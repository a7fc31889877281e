//! Dyck tiles, cover-inclusive tilings of skew regions, and the exhaustive
//! enumerator that every identity in the crate is checked against.
//!
//! A cell is named by its lower-left corner. The region between a lower path
//! λ and an upper path μ consists of the cells `(x, y)` with
//! `a_μ(y) <= x < a_λ(y)`, where `a(y)` is the column of the up step in row
//! `y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::MultiPoly;
use crate::error::{Error, Result};
use crate::paths::{enumerate_k_dyck, is_k_dyck, LatticePath, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// The diagonal translate by `(1, -1)`.
    pub fn translate(self) -> Cell {
        Cell::new(self.x + 1, self.y - 1)
    }

    /// Sum of the center coordinates, `x + y + 1`.
    pub fn center_sum(self) -> i64 {
        self.x + self.y + 1
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A ribbon tile whose cell centers trace a k-Dyck path.
///
/// Cells are kept in path order, which is also increasing `x + y`; the first
/// cell is the lowest one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckTile {
    cells: Vec<Cell>,
}

impl DyckTile {
    /// Accepts the cells in any order and checks the shape.
    pub fn new(mut cells: Vec<Cell>, k: usize) -> Result<Self> {
        cells.sort_by_key(|c| (c.x + c.y, c.x));
        let tile = Self { cells };
        if tile.cells.is_empty() {
            return Err(Error::Invariant("empty tile".into()));
        }
        let steps =
            tile.center_steps().ok_or_else(|| Error::Invariant(format!("cells {} do not form a ribbon", tile)))?;
        if !is_k_dyck(&LatticePath::new(steps, k)) {
            return Err(Error::Invariant(format!("centers of {} are not a {k}-Dyck path", tile)));
        }
        Ok(tile)
    }

    pub(crate) fn from_path_order(cells: Vec<Cell>) -> Self {
        Self { cells }
    }

    pub fn unit(c: Cell) -> Self {
        Self { cells: vec![c] }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn start(&self) -> Cell {
        self.cells[0]
    }

    pub fn last(&self) -> Cell {
        *self.cells.last().expect("tiles are nonempty")
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Steps between consecutive centers, if consecutive cells are adjacent.
    pub fn center_steps(&self) -> Option<Vec<Step>> {
        self.cells
            .windows(2)
            .map(|w| match (w[1].x - w[0].x, w[1].y - w[0].y) {
                (0, 1) => Some(Step::Up),
                (1, 0) => Some(Step::Down),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for DyckTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A set of tiles partitioning the region between `lower` and `upper`.
///
/// [`Tiling::new`] checks the partition and the tile shapes; the
/// cover-inclusive condition is checked separately by [`is_cover_inclusive`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tiling {
    lower: LatticePath,
    upper: LatticePath,
    tiles: Vec<DyckTile>,
}

impl Tiling {
    pub fn new(lower: LatticePath, upper: LatticePath, mut tiles: Vec<DyckTile>) -> Result<Self> {
        let region = region_cells(&lower, &upper)?;
        let k = lower.k();
        let mut covered = BTreeSet::new();
        for tile in &tiles {
            DyckTile::new(tile.cells.clone(), k)?;
            for c in &tile.cells {
                if !covered.insert(*c) {
                    return Err(Error::Invariant(format!("cell {c} is covered twice")));
                }
            }
        }
        if covered != region {
            return Err(Error::Invariant("tiles do not cover exactly the region".into()));
        }
        tiles.sort();
        Ok(Self { lower, upper, tiles })
    }

    pub(crate) fn from_parts_unchecked(lower: LatticePath, upper: LatticePath, mut tiles: Vec<DyckTile>) -> Self {
        tiles.sort();
        Self { lower, upper, tiles }
    }

    /// The empty tiling of `path / path`.
    pub fn empty(path: LatticePath) -> Self {
        Self { lower: path.clone(), upper: path, tiles: Vec::new() }
    }

    pub fn lower(&self) -> &LatticePath {
        &self.lower
    }

    pub fn upper(&self) -> &LatticePath {
        &self.upper
    }

    pub fn k(&self) -> usize {
        self.lower.k()
    }

    pub fn tiles(&self) -> &[DyckTile] {
        &self.tiles
    }

    pub fn area(&self) -> usize {
        self.tiles.iter().map(DyckTile::size).sum()
    }

    /// Map from each cell to the index of the tile containing it.
    pub fn owners(&self) -> BTreeMap<Cell, usize> {
        let mut out = BTreeMap::new();
        for (i, t) in self.tiles.iter().enumerate() {
            for c in &t.cells {
                out.insert(*c, i);
            }
        }
        out
    }

    /// The tile whose first cell is `c`, if any.
    pub fn tile_starting_at(&self, c: Cell) -> Option<&DyckTile> {
        self.tiles.iter().find(|t| t.start() == c)
    }

    pub fn to_json(&self) -> TilingJson {
        TilingJson {
            k: self.k(),
            lower: self.lower.to_string(),
            upper: self.upper.to_string(),
            tiles: self.tiles.iter().map(|t| t.cells.iter().map(|c| [c.x, c.y]).collect()).collect(),
        }
    }

    pub fn from_json(json: &TilingJson) -> Result<Self> {
        let lower = LatticePath::parse_dyck(&json.lower, json.k)?;
        let upper = LatticePath::parse_dyck(&json.upper, json.k)?;
        let tiles = json
            .tiles
            .iter()
            .map(|cells| DyckTile::new(cells.iter().map(|&[x, y]| Cell::new(x, y)).collect(), json.k))
            .collect::<Result<Vec<_>>>()?;
        Tiling::new(lower, upper, tiles)
    }
}

/// Serialized form `{k, lower, upper, tiles: [[[x, y], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingJson {
    pub k: usize,
    pub lower: String,
    pub upper: String,
    pub tiles: Vec<Vec<[i64; 2]>>,
}

impl Serialize for Tiling {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = TilingJson::deserialize(deserializer)?;
        Tiling::from_json(&json).map_err(serde::de::Error::custom)
    }
}

fn check_nested(lower: &LatticePath, upper: &LatticePath) -> Result<()> {
    if !upper.is_weakly_above(lower) {
        return Err(Error::NotNested { lower: lower.to_string(), upper: upper.to_string() });
    }
    Ok(())
}

/// Cells strictly between the two paths.
pub fn region_cells(lower: &LatticePath, upper: &LatticePath) -> Result<BTreeSet<Cell>> {
    check_nested(lower, upper)?;
    let (al, au) = (lower.up_columns(), upper.up_columns());
    let mut out = BTreeSet::new();
    for y in 0..al.len() {
        for x in au[y]..al[y] {
            out.insert(Cell::new(x as i64, y as i64));
        }
    }
    Ok(out)
}

/// True if the cell lies strictly below the lower path (or under the x-axis).
pub fn is_below(lower_columns: &[usize], c: Cell) -> bool {
    c.y < 0 || (c.y < lower_columns.len() as i64 && c.x >= lower_columns[c.y as usize] as i64)
}

/// Checks that every tile's translate by `(1, -1)` is either entirely below
/// λ or entirely inside one other tile.
pub fn is_cover_inclusive(t: &Tiling) -> bool {
    let owners = t.owners();
    let al = t.lower.up_columns();
    t.tiles.iter().enumerate().all(|(i, tile)| {
        let moved: Vec<Cell> = tile.cells.iter().map(|c| c.translate()).collect();
        if moved.iter().all(|&c| is_below(&al, c)) {
            return true;
        }
        let first = owners.get(&moved[0]);
        first.is_some_and(|&j| j != i && moved.iter().all(|c| owners.get(c) == Some(&j)))
    })
}

/// Depth-first search state for the enumerator.
type Accept<'a> = &'a dyn Fn(&[Vec<Cell>], &[Cell]) -> bool;

struct Search<'a, F: FnMut(&[Vec<Cell>])> {
    k: usize,
    accept: Accept<'a>,
    lower_a: Vec<usize>,
    upper_a: Vec<usize>,
    width: usize,
    owner: Vec<Option<usize>>,
    tiles: Vec<Vec<Cell>>,
    visit: &'a mut F,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Below,
    Tile(usize),
}

impl<F: FnMut(&[Vec<Cell>])> Search<'_, F> {
    fn in_region(&self, c: Cell) -> bool {
        c.y >= 0
            && (c.y as usize) < self.lower_a.len()
            && c.x >= self.upper_a[c.y as usize] as i64
            && c.x < self.lower_a[c.y as usize] as i64
    }

    fn idx(&self, c: Cell) -> usize {
        c.y as usize * self.width + c.x as usize
    }

    fn classify(&self, c: Cell) -> Option<Target> {
        if is_below(&self.lower_a, c) {
            Some(Target::Below)
        } else if self.in_region(c) {
            self.owner[self.idx(c)].map(Target::Tile)
        } else {
            None
        }
    }

    fn fill(&mut self, from: usize) {
        let n = self.lower_a.len();
        let mut pos = from;
        let total = n * self.width;
        while pos < total {
            let c = Cell::new((pos % self.width) as i64, (pos / self.width) as i64);
            if self.in_region(c) && self.owner[pos].is_none() {
                break;
            }
            pos += 1;
        }
        if pos == total {
            (self.visit)(&self.tiles);
            return;
        }
        let start = Cell::new((pos % self.width) as i64, (pos / self.width) as i64);
        // the translate of the start lies in an earlier, fully tiled row
        let Some(target) = self.classify(start.translate()) else {
            return;
        };
        let mut cells = vec![start];
        self.grow(&mut cells, 0, 0, target, pos);
    }

    fn accepts(&self, c: Cell, target: Target) -> bool {
        self.in_region(c) && self.owner[self.idx(c)].is_none() && self.classify(c.translate()) == Some(target)
    }

    fn grow(&mut self, cells: &mut Vec<Cell>, ups: usize, downs: usize, target: Target, pos: usize) {
        if downs == self.k * ups && (self.accept)(&self.tiles, cells) {
            let id = self.tiles.len();
            for c in cells.iter() {
                let i = self.idx(*c);
                self.owner[i] = Some(id);
            }
            self.tiles.push(cells.clone());
            self.fill(pos + 1);
            self.tiles.pop();
            for c in cells.iter() {
                let i = self.idx(*c);
                self.owner[i] = None;
            }
        }
        let last = *cells.last().expect("nonempty");
        let up = Cell::new(last.x, last.y + 1);
        if self.accepts(up, target) {
            cells.push(up);
            self.grow(cells, ups + 1, downs, target, pos);
            cells.pop();
        }
        let down = Cell::new(last.x + 1, last.y);
        if downs < self.k * ups && self.accepts(down, target) {
            cells.push(down);
            self.grow(cells, ups, downs + 1, target, pos);
            cells.pop();
        }
    }
}

/// Calls `visit` with the tiles (cells in path order) of every
/// cover-inclusive tiling of `lower / upper`.
pub fn for_each_tiling<F: FnMut(&[Vec<Cell>])>(lower: &LatticePath, upper: &LatticePath, visit: F) -> Result<()> {
    for_each_tiling_where(lower, upper, &|_, _| true, visit)
}

/// Like [`for_each_tiling`], but a finished tile is only placed when
/// `accept(placed_tiles, candidate)` holds.
pub(crate) fn for_each_tiling_where<F: FnMut(&[Vec<Cell>])>(
    lower: &LatticePath,
    upper: &LatticePath,
    accept: Accept<'_>,
    mut visit: F,
) -> Result<()> {
    check_nested(lower, upper)?;
    let k = lower.k();
    let n = lower.semilength();
    let width = (k * n).max(1);
    let mut search = Search {
        k,
        accept,
        lower_a: lower.up_columns(),
        upper_a: upper.up_columns(),
        width,
        owner: vec![None; n * width],
        tiles: Vec::new(),
        visit: &mut visit,
    };
    search.fill(0);
    Ok(())
}

/// Every cover-inclusive k-Dyck tiling of the region, each exactly once.
pub fn enumerate_tilings(lower: &LatticePath, upper: &LatticePath) -> Result<Vec<Tiling>> {
    let mut out = Vec::new();
    for_each_tiling(lower, upper, |tiles| {
        let tiles = tiles.iter().map(|c| DyckTile::from_path_order(c.clone())).collect();
        out.push(Tiling::from_parts_unchecked(lower.clone(), upper.clone(), tiles));
    })?;
    Ok(out)
}

/// Upper paths weakly above `lower`.
pub fn paths_above(lower: &LatticePath) -> Vec<LatticePath> {
    enumerate_k_dyck(lower.semilength(), lower.k()).into_iter().filter(|p| p.is_weakly_above(lower)).collect()
}

/// Lower paths weakly below `upper`.
pub fn paths_below(upper: &LatticePath) -> Vec<LatticePath> {
    enumerate_k_dyck(upper.semilength(), upper.k()).into_iter().filter(|p| upper.is_weakly_above(p)).collect()
}

fn require_dyck(path: &LatticePath) -> Result<()> {
    if !is_k_dyck(path) {
        return Err(Error::Precondition(format!("{path} is not a {}-Dyck path", path.k())));
    }
    Ok(())
}

/// All tilings with the given lower path.
pub fn enumerate_fixed_lower(lower: &LatticePath) -> Result<Vec<Tiling>> {
    require_dyck(lower)?;
    let mut out = Vec::new();
    for upper in paths_above(lower) {
        out.extend(enumerate_tilings(lower, &upper)?);
    }
    Ok(out)
}

/// All tilings with the given upper path.
pub fn enumerate_fixed_upper(upper: &LatticePath) -> Result<Vec<Tiling>> {
    require_dyck(upper)?;
    let mut out = Vec::new();
    for lower in paths_below(upper) {
        out.extend(enumerate_tilings(&lower, upper)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingStats {
    pub area: usize,
    pub tiles: usize,
    pub art: usize,
    pub art_k: usize,
}

/// Area, tile count, `art = (area + tiles) / 2` and
/// `art_k = (k area + tiles) / (k + 1)`.
pub fn stats(t: &Tiling) -> Result<TilingStats> {
    stats_from_counts(t.area(), t.tiles().len(), t.k())
}

pub fn stats_from_counts(area: usize, tiles: usize, k: usize) -> Result<TilingStats> {
    let art_num = area + tiles;
    let artk_num = k * area + tiles;
    if !artk_num.is_multiple_of(k + 1) {
        return Err(Error::Invariant(format!("art_k is not integral: ({k}*{area} + {tiles}) / {}", k + 1)));
    }
    // art only has a meaning for k = 1, where it equals art_k
    if k == 1 && !art_num.is_multiple_of(2) {
        return Err(Error::Invariant(format!("art is not integral: ({area} + {tiles}) / 2")));
    }
    Ok(TilingStats { area, tiles, art: art_num / 2, art_k: artk_num / (k + 1) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Area,
    Tiles,
    Art,
    ArtK,
}

impl Statistic {
    pub fn of(self, s: &TilingStats) -> usize {
        match self {
            Statistic::Area => s.area,
            Statistic::Tiles => s.tiles,
            Statistic::Art => s.art,
            Statistic::ArtK => s.art_k,
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "area" => Ok(Statistic::Area),
            "tiles" => Ok(Statistic::Tiles),
            "art" => Ok(Statistic::Art),
            "art_k" | "artk" => Ok(Statistic::ArtK),
            _ => Err(Error::Parse(format!("unknown statistic {s:?}"))),
        }
    }
}

fn gf_over(pairs: impl Iterator<Item = (LatticePath, LatticePath)>, statistic: Statistic) -> Result<MultiPoly> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut failure = None;
    for (lower, upper) in pairs {
        let k = lower.k();
        for_each_tiling(&lower, &upper, |tiles| {
            let area = tiles.iter().map(Vec::len).sum();
            match stats_from_counts(area, tiles.len(), k) {
                Ok(s) => *counts.entry(statistic.of(&s)).or_default() += 1,
                Err(e) => failure = Some(e),
            }
        })?;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(counts.into_iter().map(|(e, c)| MultiPoly::monomial(c, [e as u64, 0, 0])).sum())
}

/// `Σ q^{stat}` over all tilings with upper path `upper`.
pub fn gf_fixed_upper(upper: &LatticePath, statistic: Statistic) -> Result<MultiPoly> {
    require_dyck(upper)?;
    gf_over(paths_below(upper).into_iter().map(|l| (l, upper.clone())), statistic)
}

/// `Σ q^{stat}` over all tilings with lower path `lower`.
pub fn gf_fixed_lower(lower: &LatticePath, statistic: Statistic) -> Result<MultiPoly> {
    require_dyck(lower)?;
    gf_over(paths_above(lower).into_iter().map(|u| (lower.clone(), u)), statistic)
}

/// Inserts `U D^k` at step index `p` of both paths and stretches the tiles
/// across the line `x + y = p`: cells before the line stay, cells after it
/// move by `(k, 1)`, and a cell centered on the line grows by an up step and
/// `k` down steps.
pub fn spread(t: &Tiling, p: usize) -> Tiling {
    let k = t.k();
    let insert: Vec<Step> = std::iter::once(Step::Up).chain(std::iter::repeat_n(Step::Down, k)).collect();
    let lower = t.lower.insert_steps(p, &insert);
    let upper = t.upper.insert_steps(p, &insert);
    let p = p as i64;
    let tiles = t
        .tiles
        .iter()
        .map(|tile| {
            let mut cells = Vec::with_capacity(tile.size() + k + 1);
            for &c in &tile.cells {
                let s = c.center_sum();
                if s < p {
                    cells.push(c);
                } else if s > p {
                    cells.push(Cell::new(c.x + k as i64, c.y + 1));
                } else {
                    cells.push(c);
                    for dx in 0..=k as i64 {
                        cells.push(Cell::new(c.x + dx, c.y + 1));
                    }
                }
            }
            DyckTile::from_path_order(cells)
        })
        .collect();
    Tiling::from_parts_unchecked(lower, upper, tiles)
}
