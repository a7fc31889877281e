// Boundary and tile polygons of the worked examples, as lattice points.

#[rustfmt::skip]
pub const DYCK_TILING_UPPER: &[(i64, i64)] = &[(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8), (0, 9), (1, 9), (1, 10), (2, 10), (3, 10), (3, 11), (4, 11), (5, 11), (6, 11), (7, 11), (8, 11), (9, 11), (10, 11), (11, 11)];
#[rustfmt::skip]
pub const DYCK_TILING_LOWER: &[(i64, i64)] = &[(0, 0), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 3), (3, 4), (3, 5), (4, 5), (5, 5), (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (7, 9), (8, 9), (9, 9), (9, 10), (9, 11), (10, 11), (11, 11)];
#[rustfmt::skip]
pub const DYCK_TILING_TILES: &[&[(i64, i64)]] = &[
    &[(3, 3), (2, 3), (2, 4), (2, 5), (2, 6), (3, 6), (4, 6), (4, 7), (4, 8), (5, 8), (5, 9), (6, 9), (6, 10), (7, 10), (8, 10), (9, 10), (9, 9), (8, 9), (7, 9), (7, 8), (6, 8), (6, 7), (5, 7), (5, 6), (5, 5), (4, 5), (3, 5), (3, 4), (3, 3)],
    &[(9, 10), (8, 10), (8, 11), (9, 11)],
    &[(8, 10), (7, 10), (7, 11), (8, 11)],
    &[(2, 3), (1, 3), (1, 4), (2, 4)],
    &[(2, 4), (1, 4), (1, 5), (1, 6), (1, 7), (2, 7), (3, 7), (4, 7), (4, 6), (3, 6), (2, 6), (2, 5), (2, 4)],
    &[(4, 7), (3, 7), (3, 8), (3, 9), (4, 9), (4, 10), (5, 10), (5, 11), (6, 11), (7, 11), (7, 10), (6, 10), (6, 9), (5, 9), (5, 8), (4, 8), (4, 7)],
    &[(3, 7), (2, 7), (2, 8), (3, 8)],
    &[(3, 8), (2, 8), (2, 9), (2, 10), (3, 10), (3, 11), (4, 11), (5, 11), (5, 10), (4, 10), (4, 9), (3, 9), (3, 8)],
    &[(1, 3), (0, 3), (0, 4), (1, 4)],
    &[(1, 4), (0, 4), (0, 5), (1, 5)],
    &[(1, 5), (0, 5), (0, 6), (1, 6)],
    &[(1, 6), (0, 6), (0, 7), (0, 8), (1, 8), (2, 8), (2, 7), (1, 7), (1, 6)],
    &[(2, 8), (1, 8), (1, 9), (2, 9)],
    &[(2, 9), (1, 9), (1, 10), (2, 10)],
    &[(1, 8), (0, 8), (0, 9), (1, 9)],
];

#[rustfmt::skip]
pub const TWO_DYCK_TILING_UPPER: &[(i64, i64)] = &[(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 5), (2, 5), (2, 6), (2, 7), (3, 7), (4, 7), (4, 8), (5, 8), (5, 9), (6, 9), (6, 10), (7, 10), (8, 10), (9, 10), (10, 10), (11, 10), (12, 10), (13, 10), (14, 10), (15, 10), (16, 10), (17, 10), (18, 10), (19, 10), (20, 10)];
#[rustfmt::skip]
pub const TWO_DYCK_TILING_LOWER: &[(i64, i64)] = &[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 3), (3, 3), (4, 3), (5, 3), (5, 4), (6, 4), (7, 4), (7, 5), (8, 5), (9, 5), (9, 6), (9, 7), (10, 7), (10, 8), (11, 8), (12, 8), (13, 8), (13, 9), (14, 9), (15, 9), (16, 9), (17, 9), (18, 9), (18, 10), (19, 10), (20, 10)];
#[rustfmt::skip]
pub const TWO_DYCK_TILING_TILES: &[&[(i64, i64)]] = &[
    &[(18, 9), (17, 9), (17, 10), (18, 10)],
    &[(17, 9), (16, 9), (16, 10), (17, 10)],
    &[(5, 3), (4, 3), (4, 4), (4, 5), (5, 5), (6, 5), (6, 6), (7, 6), (8, 6), (9, 6), (9, 5), (8, 5), (7, 5), (7, 4), (6, 4), (5, 4), (5, 3)],
    &[(16, 9), (15, 9), (15, 10), (16, 10)],
    &[(2, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (4, 4), (4, 3), (3, 3), (2, 3), (2, 2)],
    &[(9, 6), (8, 6), (8, 7), (8, 8), (9, 8), (9, 9), (10, 9), (11, 9), (12, 9), (12, 10), (13, 10), (14, 10), (15, 10), (15, 9), (14, 9), (13, 9), (13, 8), (12, 8), (11, 8), (10, 8), (10, 7), (9, 7), (9, 6)],
    &[(1, 2), (0, 2), (0, 3), (1, 3)],
    &[(4, 4), (3, 4), (3, 5), (3, 6), (4, 6), (5, 6), (5, 7), (6, 7), (7, 7), (8, 7), (8, 6), (7, 6), (6, 6), (6, 5), (5, 5), (4, 5), (4, 4)],
    &[(3, 4), (2, 4), (2, 5), (3, 5)],
    &[(8, 7), (7, 7), (7, 8), (7, 9), (8, 9), (8, 10), (9, 10), (10, 10), (11, 10), (12, 10), (12, 9), (11, 9), (10, 9), (9, 9), (9, 8), (8, 8), (8, 7)],
    &[(7, 7), (6, 7), (6, 8), (7, 8)],
    &[(1, 3), (0, 3), (0, 4), (1, 4)],
    &[(2, 4), (1, 4), (1, 5), (2, 5)],
    &[(3, 5), (2, 5), (2, 6), (2, 7), (3, 7), (4, 7), (5, 7), (5, 6), (4, 6), (3, 6), (3, 5)],
    &[(6, 7), (5, 7), (5, 8), (6, 8)],
    &[(7, 8), (6, 8), (6, 9), (7, 9)],
    &[(8, 9), (7, 9), (7, 10), (8, 10)],
    &[(5, 7), (4, 7), (4, 8), (5, 8)],
    &[(6, 8), (5, 8), (5, 9), (6, 9)],
    &[(7, 9), (6, 9), (6, 10), (7, 10)],
    &[(1, 4), (0, 4), (0, 5), (1, 5)],
];
