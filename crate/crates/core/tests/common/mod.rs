#![allow(dead_code)]

pub mod worked;

use dyck_tilings::paths::{LatticePath, Step};
use dyck_tilings::tilings::{Cell, DyckTile, Tiling};

/// Path through unit-step lattice points.
pub fn path_from_points(points: &[(i64, i64)], k: usize) -> LatticePath {
    let steps = points
        .windows(2)
        .map(|w| match (w[1].0 - w[0].0, w[1].1 - w[0].1) {
            (0, 1) => Step::Up,
            (1, 0) => Step::Down,
            d => panic!("not a unit step: {d:?}"),
        })
        .collect();
    LatticePath::new(steps, k)
}

/// Cells whose centers lie inside the closed polygon (even-odd rule).
pub fn polygon_cells(poly: &[(i64, i64)]) -> Vec<Cell> {
    let xs = poly.iter().map(|p| p.0);
    let ys = poly.iter().map(|p| p.1);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut out = Vec::new();
    for y in y0..y1 {
        for x in x0..x1 {
            let (cx, cy) = (x as f64 + 0.5, y as f64 + 0.5);
            let mut inside = false;
            for i in 0..poly.len() {
                let (ax, ay) = (poly[i].0 as f64, poly[i].1 as f64);
                let (bx, by) = (poly[(i + 1) % poly.len()].0 as f64, poly[(i + 1) % poly.len()].1 as f64);
                if (ay > cy) != (by > cy) && cx < ax + (cy - ay) * (bx - ax) / (by - ay) {
                    inside = !inside;
                }
            }
            if inside {
                out.push(Cell::new(x, y));
            }
        }
    }
    out
}

/// A tiling given by boundary point lists and one polygon per tile.
pub fn tiling_from_polygons(upper: &[(i64, i64)], lower: &[(i64, i64)], polys: &[&[(i64, i64)]], k: usize) -> Tiling {
    let tiles = polys.iter().map(|p| DyckTile::new(polygon_cells(p), k).expect("valid tile")).collect();
    Tiling::new(path_from_points(lower, k), path_from_points(upper, k), tiles).expect("valid tiling")
}

/// Unit polygons for cells given by their lower-left corners.
pub fn frame(x: i64, y: i64) -> Vec<(i64, i64)> {
    vec![(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
}
