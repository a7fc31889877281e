//! Deterministic SVG, ASCII and DOT renderings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::stirling::StirlingPoset;
use crate::tilings::{Cell, Tiling};

const UNIT: i64 = 24;
const MARGIN: i64 = 12;

/// Options for [`tiling_svg`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SvgOptions {
    /// Draw the mirror line `x + y = n` used by symmetric tilings.
    pub center_line: bool,
}

fn polyline(points: &[(usize, usize)], height: i64) -> String {
    points
        .iter()
        .map(|&(x, y)| format!("{},{}", MARGIN + x as i64 * UNIT, MARGIN + (height - y as i64) * UNIT))
        .collect::<Vec<_>>()
        .join(" ")
}

// Boundary edges of a cell set, as unit segments between lattice points.
fn outline(cells: &[Cell]) -> Vec<((i64, i64), (i64, i64))> {
    let set: BTreeSet<Cell> = cells.iter().copied().collect();
    let mut edges = Vec::new();
    for c in &set {
        let (x, y) = (c.x, c.y);
        if !set.contains(&Cell::new(x, y - 1)) {
            edges.push(((x, y), (x + 1, y)));
        }
        if !set.contains(&Cell::new(x + 1, y)) {
            edges.push(((x + 1, y), (x + 1, y + 1)));
        }
        if !set.contains(&Cell::new(x, y + 1)) {
            edges.push(((x, y + 1), (x + 1, y + 1)));
        }
        if !set.contains(&Cell::new(x - 1, y)) {
            edges.push(((x, y), (x, y + 1)));
        }
    }
    edges
}

/// SVG picture of a tiling: the grid, one outline per tile, both paths and
/// the line `y = x/k`.
pub fn tiling_svg(t: &Tiling, opts: SvgOptions) -> String {
    let k = t.k() as i64;
    let h = t.upper().semilength() as i64;
    let w = k * h;
    let (pw, ph) = (2 * MARGIN + w * UNIT, 2 * MARGIN + h * UNIT);
    let px = |x: i64| MARGIN + x * UNIT;
    let py = |y: i64| MARGIN + (h - y) * UNIT;
    let mut s = String::new();
    writeln!(s, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{pw}" height="{ph}" viewBox="0 0 {pw} {ph}">"##)
        .unwrap();
    writeln!(s, r##"<g class="grid" stroke="#ddd" stroke-width="1">"##).unwrap();
    for x in 0..=w {
        writeln!(s, r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"##, px(x), py(0), py(h)).unwrap();
    }
    for y in 0..=h {
        writeln!(s, r##"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"##, py(y), px(0), px(w)).unwrap();
    }
    s.push_str("</g>\n");
    if w > 0 {
        writeln!(
            s,
            r##"<line class="diagonal" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999" stroke-dasharray="4 3"/>"##,
            px(0),
            py(0),
            px(w),
            py(h)
        )
        .unwrap();
    }
    if opts.center_line {
        writeln!(
            s,
            r##"<line class="center" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c33" stroke-dasharray="6 3"/>"##,
            px(0),
            py(h),
            px(h),
            py(0)
        )
        .unwrap();
    }
    for tile in t.tiles() {
        let mut d = String::new();
        for ((x0, y0), (x1, y1)) in outline(tile.cells()) {
            write!(d, "M{} {}L{} {}", px(x0), py(y0), px(x1), py(y1)).unwrap();
        }
        writeln!(s, r##"<path class="tile" d="{d}" fill="none" stroke="#000" stroke-width="2"/>"##).unwrap();
    }
    for (class, path) in [("lower", t.lower()), ("upper", t.upper())] {
        writeln!(
            s,
            r##"<polyline class="{class}" points="{}" fill="none" stroke="#248" stroke-width="3"/>"##,
            polyline(&path.points(), h)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn tile_symbol(i: usize) -> char {
    const SYMBOLS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    SYMBOLS.get(i).map_or('#', |&b| b as char)
}

/// Character grid, top row first. Tiles are lettered in their sorted order;
/// `.` marks cells below the lower path and blanks lie above the upper path.
pub fn tiling_ascii(t: &Tiling) -> String {
    let owners = t.owners();
    let h = t.upper().semilength() as i64;
    let w = t.k() as i64 * h;
    let lower = t.lower().up_columns();
    let upper = t.upper().up_columns();
    let mut s = String::new();
    for y in (0..h).rev() {
        let row: String = (0..w)
            .map(|x| match owners.get(&Cell::new(x, y)) {
                Some(&i) => tile_symbol(i),
                None if x >= lower[y as usize] as i64 => '.',
                None if x < upper[y as usize] as i64 => ' ',
                None => '.',
            })
            .collect();
        s.push_str(row.trim_end());
        s.push('\n');
    }
    s
}

/// The Hasse diagram of the k-Bruhat order in DOT, bottom element first.
pub fn hasse_dot(poset: &StirlingPoset) -> String {
    let mut s = String::from("digraph kbruhat {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    let mut ranks: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for p in poset.elements() {
        ranks.entry(p.inv_k()).or_default().push(p.to_string());
    }
    for (r, names) in &ranks {
        let nodes: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
        writeln!(s, "  {{ rank=same; /* {r} */ {}; }}", nodes.join("; ")).unwrap();
    }
    let mut edges: Vec<(String, String)> =
        poset.hasse_edges().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    edges.sort();
    for (a, b) in edges {
        writeln!(s, "  \"{a}\" -> \"{b}\";").unwrap();
    }
    s.push_str("}\n");
    s
}

/// The same diagram as an SVG with one row per rank.
pub fn hasse_svg(poset: &StirlingPoset) -> String {
    let mut ranks: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for p in poset.elements() {
        ranks.entry(p.inv_k()).or_default().push(p.to_string());
    }
    for names in ranks.values_mut() {
        names.sort();
    }
    let widest = ranks.values().map(Vec::len).max().unwrap_or(1) as i64;
    let label_w = poset.elements().first().map_or(1, |p| p.to_string().len()) as i64 * 9 + 16;
    let (pw, ph) = (widest * label_w + 2 * MARGIN, ranks.len() as i64 * 60 + 2 * MARGIN);
    let mut pos: BTreeMap<String, (i64, i64)> = BTreeMap::new();
    for (row, names) in ranks.values().enumerate() {
        let y = ph - MARGIN - 30 - row as i64 * 60;
        let offset = (pw - names.len() as i64 * label_w) / 2;
        for (i, n) in names.iter().enumerate() {
            pos.insert(n.clone(), (offset + i as i64 * label_w + label_w / 2, y));
        }
    }
    let mut s = String::new();
    writeln!(s, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{pw}" height="{ph}" viewBox="0 0 {pw} {ph}">"##)
        .unwrap();
    let mut edges: Vec<(String, String)> =
        poset.hasse_edges().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    edges.sort();
    for (a, b) in &edges {
        let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
        writeln!(s, r##"<line class="edge" x1="{x1}" y1="{}" x2="{x2}" y2="{}" stroke="#666"/>"##, y1 - 8, y2 + 8)
            .unwrap();
    }
    for (n, (x, y)) in &pos {
        writeln!(s, r##"<text class="node" x="{x}" y="{}" text-anchor="middle" font-family="monospace" font-size="14">{n}</text>"##, y + 5).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::LatticePath;

    #[test]
    fn empty_tiling_has_coincident_paths() {
        let p = LatticePath::parse("UDUD", 1).unwrap();
        let svg = tiling_svg(&Tiling::empty(p), SvgOptions::default());
        assert_eq!(svg.matches(r##"class="tile""##).count(), 0);
        let lines: Vec<&str> = svg.lines().filter(|l| l.contains("polyline")).collect();
        let pts = |l: &str| l.split("points=\"").nth(1).unwrap().split('"').next().unwrap().to_string();
        assert_eq!(pts(lines[0]), pts(lines[1]));
    }

    #[test]
    fn ascii_letters_tiles() {
        let lower = LatticePath::parse("UDUD", 1).unwrap();
        let upper = LatticePath::parse("UUDD", 1).unwrap();
        let t = crate::tilings::enumerate_tilings(&lower, &upper).unwrap().remove(0);
        assert_eq!(tiling_ascii(&t), "a.\n..\n");
    }

    #[test]
    fn unit_outline_has_four_edges() {
        assert_eq!(outline(&[Cell::new(0, 0)]).len(), 4);
        assert_eq!(outline(&[Cell::new(0, 0), Cell::new(1, 0)]).len(), 6);
    }
}
