use std::f64::consts::PI;

use serde::Serialize;

use super::maxflow::FlowGraph;
use super::{rasterize, BinaryGrid};
use crate::error::{Error, Result};
use crate::geom::Region;

/// Neighborhood used for the Cauchy–Crofton perimeter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stencil {
    /// Eight undirected directions: axes, diagonals and knight moves.
    Sixteen,
    /// Axes only.
    Four,
}

const DIRS16: [(isize, isize); 8] = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1)];
const DIRS4: [(isize, isize); 2] = [(1, 0), (0, 1)];

impl Stencil {
    fn dirs(self) -> &'static [(isize, isize)] {
        match self {
            Stencil::Sixteen => &DIRS16,
            Stencil::Four => &DIRS4,
        }
    }

    /// Direction angles in `[0, π)` with the angular width each one represents.
    fn sectors(self) -> Vec<(f64, f64)> {
        let phi: Vec<f64> = self.dirs().iter().map(|&(a, b)| (b as f64).atan2(a as f64)).collect();
        let n = phi.len();
        (0..n)
            .map(|k| {
                let prev = if k == 0 { phi[n - 1] - PI } else { phi[k - 1] };
                let next = if k == n - 1 { phi[0] + PI } else { phi[k + 1] };
                (phi[k], 0.5 * (next - prev))
            })
            .collect()
    }

    /// Cut weights per direction for pixels of size `h`.
    pub fn weights(self, h: f64) -> Vec<((isize, isize), f64)> {
        self.dirs()
            .iter()
            .zip(self.sectors())
            .map(|(&(a, b), (_, dphi))| ((a, b), h * dphi / (2.0 * ((a * a + b * b) as f64).sqrt())))
            .collect()
    }

    /// Ratio of discrete to true length for a straight boundary with tangent angle `tau`.
    pub fn length_factor(self, tau: f64) -> f64 {
        0.5 * self.sectors().iter().map(|&(p, dp)| dp * (p - tau).sin().abs()).sum::<f64>()
    }
}

/// Extreme values of [`Stencil::length_factor`] over all directions.
///
/// The factor is a sum of `|sin|` terms: its minima sit at the stencil directions and
/// its maxima at the stationary points of the sinusoid between two of them.
pub fn anisotropy_range(stencil: Stencil) -> (f64, f64) {
    let sec = stencil.sectors();
    let n = sec.len();
    let mut cands: Vec<f64> = sec.iter().map(|s| s.0).collect();
    for k in 0..n {
        let lo = sec[k].0;
        let hi = if k + 1 < n { sec[k + 1].0 } else { sec[0].0 + PI };
        let mid = 0.5 * (lo + hi);
        let (mut a, mut b) = (0.0, 0.0);
        for &(p, dp) in &sec {
            let s = (p - mid).sin().signum();
            a += 0.5 * dp * s * p.sin();
            b -= 0.5 * dp * s * p.cos();
        }
        // f = a·cos τ + b·sin τ on (lo, hi)
        let t0 = b.atan2(a);
        for t in [t0 - 2.0 * PI, t0 - PI, t0, t0 + PI, t0 + 2.0 * PI] {
            if t > lo && t < hi {
                cands.push(t);
            }
        }
    }
    cands
        .iter()
        .map(|&t| stencil.length_factor(t))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| (lo.min(f), hi.max(f)))
}

/// Cut counts per stencil direction between `set` and its complement.
fn cut_counts(set: &BinaryGrid, stencil: Stencil) -> Vec<u64> {
    let dirs = stencil.dirs();
    let mut counts = vec![0u64; dirs.len()];
    for j in 0..set.height {
        for i in 0..set.width {
            if !set.get(i, j) {
                continue;
            }
            let (x, y) = (i as isize, j as isize);
            for (k, &(a, b)) in dirs.iter().enumerate() {
                counts[k] += u64::from(!set.get_signed(x + a, y + b)) + u64::from(!set.get_signed(x - a, y - b));
            }
        }
    }
    counts
}

/// Discrete perimeter of `set`.
pub fn grid_perimeter(set: &BinaryGrid, stencil: Stencil) -> f64 {
    let w = stencil.weights(set.pixel_size);
    cut_counts(set, stencil).iter().zip(&w).map(|(&c, &(_, wk))| c as f64 * wk).sum()
}

/// Discrete prescribed-curvature energy `P(E) − κ|E|`.
pub fn grid_energy(set: &BinaryGrid, kappa: f64, stencil: Stencil) -> f64 {
    grid_perimeter(set, stencil) - kappa * set.area()
}

/// Global minimizer of the discrete energy among subsets of a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridMinimizer {
    pub kappa: f64,
    pub value: f64,
    pub set: BinaryGrid,
}

pub fn pmc_minimize_grid(grid: &BinaryGrid, kappa: f64) -> GridMinimizer {
    pmc_minimize_grid_with(grid, kappa, Stencil::Sixteen)
}

/// Largest minimizer of `P(E) − κ|E|` over pixel subsets `E` of `grid`, via one minimum cut.
pub fn pmc_minimize_grid_with(grid: &BinaryGrid, kappa: f64, stencil: Stencil) -> GridMinimizer {
    let (w, h) = (grid.width, grid.height);
    let mut node = vec![u32::MAX; w * h];
    let mut pix = Vec::new();
    for (k, &b) in grid.bits.iter().enumerate() {
        if b {
            node[k] = pix.len() as u32;
            pix.push(k);
        }
    }
    let weights = stencil.weights(grid.pixel_size);
    let gain = kappa * grid.pixel_size * grid.pixel_size;
    let mut bnd = vec![0.0; pix.len()];
    let mut edges: Vec<(u32, u32, f64)> = Vec::new();
    for (v, &k) in pix.iter().enumerate() {
        let (x, y) = ((k % w) as isize, (k / w) as isize);
        for &((a, b), wk) in &weights {
            for s in [1isize, -1] {
                let (xx, yy) = (x + s * a, y + s * b);
                if grid.get_signed(xx, yy) {
                    if s == 1 {
                        edges.push((v as u32, node[yy as usize * w + xx as usize], wk));
                    }
                } else {
                    bnd[v] += wk;
                }
            }
        }
    }
    let total: f64 = bnd.iter().sum::<f64>() + gain * pix.len() as f64 + 2.0 * edges.iter().map(|e| e.2).sum::<f64>();
    let scale = if total > 0.0 { (1u64 << 60) as f64 / total } else { 1.0 };
    let q = |x: f64| (x * scale).round() as i64;
    let mut g = FlowGraph::new(pix.len());
    for (v, &b) in bnd.iter().enumerate() {
        // v in E costs its boundary cuts and earns κ·pixel area
        g.add_terminal(v, q(gain), q(b));
    }
    for &(u, v, c) in &edges {
        g.add_edge(u as usize, v as usize, q(c));
    }
    let side = g.min_cut();
    let mut set = grid.blank_like();
    for (v, &k) in pix.iter().enumerate() {
        set.bits[k] = side[v];
    }
    let value = grid_energy(&set, kappa, stencil);
    GridMinimizer { kappa, value, set }
}

/// Certified bracket for the Cheeger constant from a pixel discretization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheegerEstimate {
    pub h_lo: f64,
    pub h_hi: f64,
    pub resolution: usize,
    /// Exact minimum of discrete perimeter over discrete area.
    pub h_grid: f64,
    pub pixel_size: f64,
    /// Range of the stencil's length factor used to widen `h_grid`.
    pub anisotropy: (f64, f64),
    pub iterations: usize,
    pub minimizer_area: f64,
    #[serde(skip)]
    pub minimizer_pixels: BinaryGrid,
}

impl CheegerEstimate {
    pub fn contains(&self, h: f64) -> bool {
        self.h_lo <= h && h <= self.h_hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.h_lo + self.h_hi)
    }

    pub fn relative_width(&self) -> f64 {
        (self.h_hi - self.h_lo) / self.mid()
    }
}

/// Relative slack around the discrete Cheeger ratio.
const SLACK: f64 = 5e-5;

pub fn cheeger_estimate(region: &Region, resolution: usize) -> Result<CheegerEstimate> {
    if resolution < 64 {
        return Err(Error::ResolutionTooLow { resolution, min: 64 });
    }
    let grid = rasterize(region, resolution)?;
    let st = Stencil::Sixteen;
    let p0 = grid_perimeter(&grid, st);
    let tau = 1e-10 * p0;
    // Dinkelbach iteration on the ratio perimeter/area. Maximal minimizers shrink as
    // kappa decreases, so each solve only needs the previous one as its domain.
    let mut best = grid.clone();
    let mut kappa = p0 / grid.area();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let m = pmc_minimize_grid_with(&best, kappa, st);
        if m.value >= -tau {
            break;
        }
        if iterations >= 100 {
            return Err(Error::NumericalDegeneracy(format!("ratio iteration did not settle near {kappa}")));
        }
        kappa = grid_perimeter(&m.set, st) / m.set.area();
        best = m.set;
    }
    // `best` attains the ratio `kappa`, and no pixel set does better than `kappa` up to tau
    let h_grid = kappa;
    let (f_min, f_max) = anisotropy_range(st);
    let cap = region.perimeter() / region.area() * (1.0 + 1e-9);
    Ok(CheegerEstimate {
        h_lo: h_grid * (1.0 - SLACK) / f_max,
        h_hi: (h_grid * (1.0 + SLACK) / f_min).min(cap),
        resolution,
        h_grid,
        pixel_size: grid.pixel_size,
        anisotropy: (f_min, f_max),
        iterations,
        minimizer_area: best.area(),
        minimizer_pixels: best,
    })
}
