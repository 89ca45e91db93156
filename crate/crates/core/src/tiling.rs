//! The cylinder tiling model of rowmotion orbits.
//!
//! Each antichain of an orbit becomes one column of `n` cells (one per
//! leaf). A node with interval `I` blackens the rows of `I`; uncovered
//! cells are yellow. Consecutive columns holding successive nodes of the
//! branch `B_I` merge into a single `I × β_I` black tile, possibly wrapping
//! across the column-0 seam.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::rowmotion::{orbit_from_cycle, Orbit};
use crate::tree::{Interval, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Yellow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tile {
    pub color: Color,
    pub interval: Interval,
    /// First column, taken mod the number of columns.
    pub start: usize,
    pub width: usize,
}

impl Tile {
    pub fn covers_column(&self, col: usize, columns: usize) -> bool {
        (col + columns - self.start % columns) % columns < self.width
    }

    /// Whether the tile wraps past the last column.
    pub fn crosses_seam(&self, columns: usize) -> bool {
        self.start + self.width > columns
    }
}

/// A tiling of an `rows × columns` cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tiling {
    pub rows: usize,
    pub columns: usize,
    pub tiles: Vec<Tile>,
}

/// `m_I` (number of `I`-tiles) and `c_I` (columns meeting a `J`-tile with
/// `J ⊊ I`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TileCount {
    pub m: u64,
    pub c: u64,
}

/// The first rule a tiling breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingViolation {
    Dimensions { expected_rows: usize, rows: usize },
    EmptyCylinder,
    TileOutOfRange { tile: usize },
    BadShape { tile: usize, reason: String },
    Overlap { row: usize, column: usize },
    Uncovered { row: usize, column: usize },
    /// (t1): what follows a black tile.
    AfterBlack { tile: usize, column: usize },
    /// (t2): what follows a maximal yellow run.
    AfterYellow { rows: Interval, column: usize },
}

impl fmt::Display for TilingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dimensions {
                expected_rows,
                rows,
            } => write!(f, "tiling has {rows} rows but the tree has {expected_rows} leaves"),
            Self::EmptyCylinder => f.write_str("tiling has no columns"),
            Self::TileOutOfRange { tile } => write!(f, "tile {tile} lies outside the cylinder"),
            Self::BadShape { tile, reason } => write!(f, "tile {tile} has the wrong shape: {reason}"),
            Self::Overlap { row, column } => write!(f, "cell ({row}, {column}) is covered twice"),
            Self::Uncovered { row, column } => write!(f, "cell ({row}, {column}) is uncovered"),
            Self::AfterBlack { tile, column } => write!(
                f,
                "black tile {tile} is not followed in column {column} by a yellow tile or its maximal proper partition"
            ),
            Self::AfterYellow { rows, column } => write!(
                f,
                "yellow run {rows} is not followed in column {column} by its maximal partition"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<TilingViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => f.write_str("valid"),
            Some(v) => write!(f, "invalid: {v}"),
        }
    }
}

/// Builds `τ(𝒪)`. Column 0 is the orbit's canonical representative.
pub fn tiling_of_orbit(tree: &RootedTree, orbit: &Orbit) -> Result<Tiling> {
    // re-derive the cycle so a foreign orbit cannot slip through
    let checked = orbit_from_cycle(tree, orbit.antichains().to_vec())?;
    let n = tree.leaf_count();
    let mut tiles = Vec::new();
    for (col, a) in checked.antichains().iter().enumerate() {
        let mut covered = vec![false; n + 1];
        for x in a.iter() {
            let (branch, j) = tree.branch_position(x);
            for r in branch.interval.rows() {
                covered[r] = true;
            }
            if j == branch.beta {
                tiles.push(Tile {
                    color: Color::Black,
                    interval: branch.interval,
                    start: col,
                    width: branch.beta,
                });
            }
        }
        for (r, _) in covered.iter().enumerate().skip(1).filter(|(_, c)| !**c) {
            tiles.push(Tile {
                color: Color::Yellow,
                interval: Interval::single(r),
                start: col,
                width: 1,
            });
        }
    }
    tiles.sort_by_key(|t| (t.start, t.interval.lo));
    Ok(Tiling {
        rows: n,
        columns: checked.len(),
        tiles,
    })
}

fn cell_owners(tiling: &Tiling) -> std::result::Result<Vec<Vec<usize>>, TilingViolation> {
    let (rows, cols) = (tiling.rows, tiling.columns);
    let mut owner = vec![vec![usize::MAX; rows + 1]; cols];
    for (i, t) in tiling.tiles.iter().enumerate() {
        if t.interval.lo < 1
            || t.interval.lo > t.interval.hi
            || t.interval.hi > rows
            || t.start >= cols
            || t.width == 0
            || t.width > cols
        {
            return Err(TilingViolation::TileOutOfRange { tile: i });
        }
        for k in 0..t.width {
            let col = (t.start + k) % cols;
            for r in t.interval.rows() {
                if owner[col][r] != usize::MAX {
                    return Err(TilingViolation::Overlap { row: r, column: col });
                }
                owner[col][r] = i;
            }
        }
    }
    for (col, cells) in owner.iter().enumerate() {
        if let Some(r) = (1..=rows).find(|&r| cells[r] == usize::MAX) {
            return Err(TilingViolation::Uncovered { row: r, column: col });
        }
    }
    Ok(owner)
}

/// Black tiles that start in column `col` and exactly tile `rows`.
fn starting_blacks(
    tiling: &Tiling,
    owner: &[Vec<usize>],
    col: usize,
    rows: Interval,
) -> Option<Vec<Interval>> {
    let mut out = Vec::new();
    let mut r = rows.lo;
    while r <= rows.hi {
        let t = &tiling.tiles[owner[col][r]];
        if t.color != Color::Black || t.start != col || t.interval.lo != r || t.interval.hi > rows.hi {
            return None;
        }
        out.push(t.interval);
        r = t.interval.hi + 1;
    }
    Some(out)
}

/// Checks cell exactness, tile shapes and the two succession rules.
pub fn validate_tiling(tree: &RootedTree, tiling: &Tiling) -> ValidationReport {
    ValidationReport {
        violation: find_violation(tree, tiling).err(),
    }
}

fn find_violation(tree: &RootedTree, tiling: &Tiling) -> std::result::Result<(), TilingViolation> {
    if tiling.rows != tree.leaf_count() {
        return Err(TilingViolation::Dimensions {
            expected_rows: tree.leaf_count(),
            rows: tiling.rows,
        });
    }
    if tiling.columns == 0 {
        return Err(TilingViolation::EmptyCylinder);
    }
    let owner = cell_owners(tiling)?;
    let cols = tiling.columns;

    for (i, t) in tiling.tiles.iter().enumerate() {
        match t.color {
            Color::Yellow if !t.interval.is_singleton() || t.width != 1 => {
                return Err(TilingViolation::BadShape {
                    tile: i,
                    reason: format!("yellow tile must be 1 × 1, found {} × {}", t.interval.len(), t.width),
                })
            }
            Color::Yellow => {}
            Color::Black => match tree.beta(t.interval) {
                None => {
                    return Err(TilingViolation::BadShape {
                        tile: i,
                        reason: format!("{} is not a branch interval", t.interval),
                    })
                }
                Some(beta) if beta != t.width => {
                    return Err(TilingViolation::BadShape {
                        tile: i,
                        reason: format!("{}-tile must have width {beta}, found {}", t.interval, t.width),
                    })
                }
                Some(_) => {}
            },
        }
    }

    // (t1)
    for (i, t) in tiling.tiles.iter().enumerate() {
        if t.color != Color::Black {
            continue;
        }
        let next = (t.start + t.width) % cols;
        let ok = if t.interval.is_singleton() {
            tiling.tiles[owner[next][t.interval.lo]].color == Color::Yellow
        } else {
            let want = tree
                .interval_partition(t.interval, true)
                .expect("black tile interval is in the family");
            starting_blacks(tiling, &owner, next, t.interval).as_deref() == Some(&want[..])
        };
        if !ok {
            return Err(TilingViolation::AfterBlack { tile: i, column: next });
        }
    }

    // (t2)
    for col in 0..cols {
        let next = (col + 1) % cols;
        let mut r = 1;
        while r <= tiling.rows {
            if tiling.tiles[owner[col][r]].color != Color::Yellow {
                r += 1;
                continue;
            }
            let lo = r;
            while r <= tiling.rows && tiling.tiles[owner[col][r]].color == Color::Yellow {
                r += 1;
            }
            let run = Interval::new(lo, r - 1);
            let want = tree
                .interval_partition(run, false)
                .expect("yellow run lies inside the leaf range");
            if starting_blacks(tiling, &owner, next, run).as_deref() != Some(&want[..]) {
                return Err(TilingViolation::AfterYellow { rows: run, column: next });
            }
        }
    }
    Ok(())
}

/// Inverts [`tiling_of_orbit`]: the `i`-th column of an `I`-tile holds the
/// `i`-th smallest node of `B_I`.
pub fn orbit_of_tiling(tree: &RootedTree, tiling: &Tiling) -> Result<Orbit> {
    let report = validate_tiling(tree, tiling);
    if let Some(v) = report.violation {
        return Err(Error::InvalidTiling(v.to_string()));
    }
    let cols = tiling.columns;
    let mut columns = vec![NodeSet::new(); cols];
    for t in tiling.tiles.iter().filter(|t| t.color == Color::Black) {
        let branch = tree.branch(t.interval).expect("validated");
        for k in 0..t.width {
            columns[(t.start + k) % cols].insert(branch.nodes[branch.beta - 1 - k]);
        }
    }
    orbit_from_cycle(tree, columns)
        .map_err(|e| Error::InvalidTiling(format!("columns do not form an orbit: {e}")))
}

/// `(m_I, c_I)` for every `I ∈ ℐ(T)`.
pub fn tile_counts(tree: &RootedTree, tiling: &Tiling) -> BTreeMap<Interval, TileCount> {
    let cols = tiling.columns;
    let mut per_column: Vec<Vec<Interval>> = vec![Vec::new(); cols];
    let mut counts: BTreeMap<Interval, TileCount> = tree
        .intervals()
        .iter()
        .map(|b| (b.interval, TileCount::default()))
        .collect();
    for t in tiling.tiles.iter().filter(|t| t.color == Color::Black) {
        counts.entry(t.interval).or_default().m += 1;
        for k in 0..t.width {
            per_column[(t.start + k) % cols].push(t.interval);
        }
    }
    for (interval, count) in counts.iter_mut() {
        count.c = per_column
            .iter()
            .filter(|blacks| blacks.iter().any(|j| j.is_proper_subset(interval)))
            .count() as u64;
    }
    counts
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

pub fn render_tiling(tiling: &Tiling, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(tiling),
        RenderFormat::Svg => render_svg(tiling),
    }
}

/// One text line per row, row 1 on top. Cells are `B`/`Y`; `=` joins
/// cells of the same tile. Rows get a leading and trailing `=` when a tile
/// wraps across the seam.
pub fn render_ascii(tiling: &Tiling) -> String {
    let (rows, cols) = (tiling.rows, tiling.columns);
    let owner = cell_owners_lenient(tiling);
    let seam = tiling.tiles.iter().any(|t| t.crosses_seam(cols));
    let mut out = String::new();
    for r in 1..=rows {
        let wraps = cols > 0 && owner[cols - 1][r].is_some() && owner[cols - 1][r] == owner[0][r]
            && tiling.tiles[owner[0][r].unwrap()].crosses_seam(cols);
        if seam {
            out.push(if wraps { '=' } else { ' ' });
        }
        for c in 0..cols {
            if c > 0 {
                let joined = owner[c][r].is_some() && owner[c][r] == owner[c - 1][r];
                out.push(if joined { '=' } else { ' ' });
            }
            out.push(match owner[c][r].map(|i| tiling.tiles[i].color) {
                Some(Color::Black) => 'B',
                Some(Color::Yellow) => 'Y',
                None => '?',
            });
        }
        if seam && wraps {
            out.push('=');
        }
        out.push('\n');
    }
    out
}

fn cell_owners_lenient(tiling: &Tiling) -> Vec<Vec<Option<usize>>> {
    let (rows, cols) = (tiling.rows, tiling.columns);
    let mut owner = vec![vec![None; rows + 1]; cols];
    for (i, t) in tiling.tiles.iter().enumerate() {
        for k in 0..t.width.min(cols) {
            for r in t.interval.lo.max(1)..=t.interval.hi.min(rows) {
                owner[(t.start + k) % cols][r] = Some(i);
            }
        }
    }
    owner
}

const CELL: usize = 20;
const HALF: usize = CELL / 2;

/// SVG picture: black tiles dark, yellow tiles light, row 1 on top.
/// A tile wrapping across the seam is drawn as two pieces that each
/// overhang the cylinder edge by half a cell.
pub fn render_svg(tiling: &Tiling) -> String {
    let (rows, cols) = (tiling.rows, tiling.columns);
    let width = cols * CELL + 2 * HALF;
    let height = rows * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for t in &tiling.tiles {
        let fill = match t.color {
            Color::Black => "#1f1f1f",
            Color::Yellow => "#f4d03f",
        };
        let y = (t.interval.lo - 1) * CELL;
        let h = t.interval.len() * CELL;
        let mut rect = |x: usize, w: usize| {
            let _ = writeln!(
                out,
                r##"  <rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" stroke="#808080" stroke-width="1"/>"##
            );
        };
        if t.crosses_seam(cols) {
            let head = cols - t.start;
            rect(HALF + t.start * CELL, head * CELL + HALF);
            rect(0, (t.width - head) * CELL + HALF);
        } else {
            rect(HALF + t.start * CELL, t.width * CELL);
        }
    }
    let _ = writeln!(
        out,
        r##"  <rect x="{HALF}" y="0" width="{}" height="{height}" fill="none" stroke="#000000" stroke-width="2"/>"##,
        cols * CELL
    );
    out.push_str("</svg>\n");
    out
}
