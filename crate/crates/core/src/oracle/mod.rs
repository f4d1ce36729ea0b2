//! Pixel-grid cross-checks: rasterization, exact Euclidean distance transform, grid
//! erosion, and a min-cut estimator for the Cheeger constant.

mod maxflow;
mod pmc;

pub use pmc::{
    anisotropy_range, cheeger_estimate, grid_energy, pmc_minimize_grid, pmc_minimize_grid_with, CheegerEstimate,
    GridMinimizer, Stencil,
};

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point, Region};
use crate::morphology::RegionSet;

/// Empty pixels kept around the rasterized region.
pub const MARGIN: usize = 4;

/// Occupancy grid; pixel `(i, j)` covers `origin + [i, i+1) × [j, j+1)` pixel sizes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinaryGrid {
    pub width: usize,
    pub height: usize,
    pub pixel_size: f64,
    pub origin: Point,
    #[serde(skip)]
    pub bits: Vec<bool>,
}

impl BinaryGrid {
    pub fn empty(width: usize, height: usize, pixel_size: f64, origin: Point) -> Self {
        BinaryGrid { width, height, pixel_size, origin, bits: vec![false; width * height] }
    }

    /// Same geometry, all pixels empty.
    pub fn blank_like(&self) -> Self {
        BinaryGrid::empty(self.width, self.height, self.pixel_size, self.origin)
    }

    pub fn from_rows(rows: &[&str], pixel_size: f64) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut g = BinaryGrid::empty(width, height, pixel_size, Point::new(0.0, 0.0));
        for (j, row) in rows.iter().rev().enumerate() {
            for (i, c) in row.chars().enumerate() {
                g.set(i, j, c == '#');
            }
        }
        g
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.width + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[self.idx(i, j)]
    }

    /// Occupancy with everything outside the grid empty.
    #[inline]
    pub fn get_signed(&self, i: isize, j: isize) -> bool {
        i >= 0 && j >= 0 && (i as usize) < self.width && (j as usize) < self.height && self.get(i as usize, j as usize)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let k = self.idx(i, j);
        self.bits[k] = v;
    }

    pub fn center(&self, i: usize, j: usize) -> Point {
        self.origin + Point::new((i as f64 + 0.5) * self.pixel_size, (j as f64 + 0.5) * self.pixel_size)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn area(&self) -> f64 {
        self.count() as f64 * self.pixel_size * self.pixel_size
    }

    pub fn is_subset_of(&self, other: &BinaryGrid) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Area of the pixelwise symmetric difference.
    pub fn symmetric_difference_area(&self, other: &BinaryGrid) -> f64 {
        let n = self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count();
        n as f64 * self.pixel_size * self.pixel_size
    }

    /// Pixels whose centers lie in `set`, on this grid's geometry.
    pub fn rasterize_set(&self, set: &RegionSet) -> BinaryGrid {
        let mut g = self.blank_like();
        for j in 0..self.height {
            for i in 0..self.width {
                let p = self.center(i, j);
                let inside = set.winding(p) != 0;
                g.set(i, j, inside);
            }
        }
        g
    }

    /// Binary PGM (P5), top row first.
    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        write!(f, "P5\n{} {}\n255\n", self.width, self.height)?;
        for j in (0..self.height).rev() {
            let row: Vec<u8> = (0..self.width).map(|i| if self.get(i, j) { 255 } else { 0 }).collect();
            f.write_all(&row)?;
        }
        Ok(())
    }
}

/// Per-pixel Euclidean distance to the nearest empty pixel center.
#[derive(Clone, Debug, PartialEq)]
pub struct DistGrid {
    pub width: usize,
    pub height: usize,
    pub pixel_size: f64,
    pub origin: Point,
    pub dist: Vec<f64>,
}

impl DistGrid {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[j * self.width + i]
    }

    pub fn max(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }
}

/// Pixel occupied iff its center lies inside the region.
pub fn rasterize(region: &Region, resolution: usize) -> Result<BinaryGrid> {
    if resolution < 16 {
        return Err(Error::BadParameter(format!("resolution must be at least 16, got {resolution}")));
    }
    let bb = region.bbox();
    let span = bb.width().max(bb.height());
    let ps = span / (resolution - 2 * MARGIN) as f64;
    let width = ((bb.width() / ps).ceil() as usize + 2 * MARGIN).min(resolution);
    let height = ((bb.height() / ps).ceil() as usize + 2 * MARGIN).min(resolution);
    // center the region inside the grid
    let origin = bb.center() - Point::new(0.5 * width as f64 * ps, 0.5 * height as f64 * ps);
    let mut g = BinaryGrid::empty(width, height, ps, origin);
    let outer = region.outer();
    for j in 0..height {
        for i in 0..width {
            let p = g.center(i, j);
            if outer.winding(p) != 0 {
                g.set(i, j, true);
            }
        }
    }
    Ok(g)
}

/// Squared 1-d distance transform of `f` (lower envelope of parabolas).
fn edt_1d(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    // parabolas with infinite offset never reach the envelope
    let Some(q0) = (0..n).find(|&q| f[q].is_finite()) else {
        d.iter_mut().for_each(|x| *x = f64::INFINITY);
        return;
    };
    v[0] = q0;
    for q in (v[0] + 1)..n {
        if !f[q].is_finite() {
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] {
                k -= 1;
            } else {
                k += 1;
                v[k] = q;
                z[k] = s;
                z[k + 1] = f64::INFINITY;
                break;
            }
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        d[q] = dq * dq + f[p];
    }
}

/// Exact Euclidean distance transform (two separable passes).
pub fn distance_transform(grid: &BinaryGrid) -> DistGrid {
    let (w, h) = (grid.width, grid.height);
    let n = w.max(h);
    let mut sq: Vec<f64> = grid.bits.iter().map(|&b| if b { f64::INFINITY } else { 0.0 }).collect();
    let (mut f, mut d, mut v, mut z) = (vec![0.0; n], vec![0.0; n], vec![0usize; n], vec![0.0; n + 1]);
    for i in 0..w {
        for j in 0..h {
            f[j] = sq[j * w + i];
        }
        edt_1d(&f[..h], &mut d[..h], &mut v[..h], &mut z[..h + 1]);
        for j in 0..h {
            sq[j * w + i] = d[j];
        }
    }
    for j in 0..h {
        f[..w].copy_from_slice(&sq[j * w..(j + 1) * w]);
        edt_1d(&f[..w], &mut d[..w], &mut v[..w], &mut z[..w + 1]);
        sq[j * w..(j + 1) * w].copy_from_slice(&d[..w]);
    }
    DistGrid {
        width: w,
        height: h,
        pixel_size: grid.pixel_size,
        origin: grid.origin,
        dist: sq.into_iter().map(|x| x.sqrt() * grid.pixel_size).collect(),
    }
}

/// Pixels at distance at least `r`, with their 8-connected component count.
pub fn grid_erode(dist: &DistGrid, r: f64) -> (BinaryGrid, usize) {
    let mut g = BinaryGrid::empty(dist.width, dist.height, dist.pixel_size, dist.origin);
    for (b, &d) in g.bits.iter_mut().zip(&dist.dist) {
        *b = d > 0.0 && d >= r;
    }
    let c = components8(&g);
    (g, c)
}

/// Number of 8-connected components of the occupied pixels.
pub fn components8(g: &BinaryGrid) -> usize {
    let mut parent: Vec<usize> = (0..g.bits.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for j in 0..g.height {
        for i in 0..g.width {
            if !g.get(i, j) {
                continue;
            }
            let a = g.idx(i, j);
            for (di, dj) in [(-1isize, 0isize), (-1, -1), (0, -1), (1, -1)] {
                if g.get_signed(i as isize + di, j as isize + dj) {
                    let b = g.idx((i as isize + di) as usize, (j as isize + dj) as usize);
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    (0..g.bits.len()).filter(|&k| g.bits[k] && find(&mut parent, k) == k).count()
}
