//! Orthonormal 2-D DCT-II / DCT-III on column-major grids.

use std::sync::Arc;

use rustdct::{DctPlanner, TransformType2And3};

/// Real-valued `rows x cols` array stored column-major, so that entry
/// `col * rows + row` lines up with the linear pixel index.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Grid {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "grid data length");
        Self { rows, cols, data }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.rows + row]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.data[col * self.rows + row] = v;
    }
}

/// Planned transforms for one grid shape. Cheap to clone.
#[derive(Clone)]
pub struct Dct2d {
    rows: usize,
    cols: usize,
    along_rows: Arc<dyn TransformType2And3<f64>>,
    along_cols: Arc<dyn TransformType2And3<f64>>,
}

impl std::fmt::Debug for Dct2d {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dct2d").field("rows", &self.rows).field("cols", &self.cols).finish()
    }
}

impl Dct2d {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty grid");
        let mut planner = DctPlanner::new();
        Self {
            rows,
            cols,
            // a column has `rows` entries
            along_cols: planner.plan_dct2(rows),
            along_rows: planner.plan_dct2(cols),
        }
    }

    pub fn forward(&self, grid: &Grid) -> Grid {
        let mut out = grid.clone();
        self.forward_in_place(&mut out);
        out
    }

    pub fn inverse(&self, coeffs: &Grid) -> Grid {
        let mut out = coeffs.clone();
        self.inverse_in_place(&mut out);
        out
    }

    pub fn forward_in_place(&self, grid: &mut Grid) {
        self.check(grid);
        self.apply(grid, Direction::Forward);
    }

    pub fn inverse_in_place(&self, grid: &mut Grid) {
        self.check(grid);
        self.apply(grid, Direction::Inverse);
    }

    fn check(&self, grid: &Grid) {
        assert_eq!((grid.rows, grid.cols), (self.rows, self.cols), "grid shape");
    }

    fn apply(&self, grid: &mut Grid, dir: Direction) {
        let mut scratch = vec![0.0; self.along_cols.get_scratch_len().max(self.along_rows.get_scratch_len())];
        for col in grid.data.chunks_exact_mut(self.rows) {
            transform_1d(self.along_cols.as_ref(), col, dir, &mut scratch);
        }
        let mut transposed = transpose(&grid.data, self.rows, self.cols);
        for row in transposed.chunks_exact_mut(self.cols) {
            transform_1d(self.along_rows.as_ref(), row, dir, &mut scratch);
        }
        grid.data = transpose(&transposed, self.cols, self.rows);
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Inverse,
}

fn transform_1d(plan: &dyn TransformType2And3<f64>, buf: &mut [f64], dir: Direction, scratch: &mut [f64]) {
    let n = buf.len() as f64;
    let dc = (1.0 / n).sqrt();
    let ac = (2.0 / n).sqrt();
    match dir {
        Direction::Forward => {
            plan.process_dct2_with_scratch(buf, scratch);
            buf[0] *= dc;
            buf[1..].iter_mut().for_each(|v| *v *= ac);
        }
        Direction::Inverse => {
            // DCT-III here computes x[0]/2 + sum_k x[k] cos(..)
            buf[0] *= 2.0 * dc;
            buf[1..].iter_mut().for_each(|v| *v *= ac);
            plan.process_dct3_with_scratch(buf, scratch);
        }
    }
}

/// Transposes a column-major `rows x cols` buffer into a column-major
/// `cols x rows` buffer.
fn transpose(data: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    for c in 0..cols {
        for r in 0..rows {
            out[r * cols + c] = data[c * rows + r];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    // Direct O(N^2 M^2) evaluation of the orthonormal DCT-II definition.
    fn naive_forward(g: &Grid) -> Grid {
        let (m, n) = (g.rows, g.cols);
        let scale = |k: usize, len: usize| if k == 0 { (1.0 / len as f64).sqrt() } else { (2.0 / len as f64).sqrt() };
        let mut out = Grid::zeros(m, n);
        for u in 0..m {
            for v in 0..n {
                let mut s = 0.0;
                for r in 0..m {
                    for c in 0..n {
                        s += g.get(r, c)
                            * (PI * u as f64 * (2 * r + 1) as f64 / (2 * m) as f64).cos()
                            * (PI * v as f64 * (2 * c + 1) as f64 / (2 * n) as f64).cos();
                    }
                }
                out.set(u, v, s * scale(u, m) * scale(v, n));
            }
        }
        out
    }

    fn random_grid(rows: usize, cols: usize, seed: u64) -> Grid {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Grid::from_vec(rows, cols, (0..rows * cols).map(|_| rng.random_range(-100.0..100.0)).collect())
    }

    #[test]
    fn matches_definition() {
        let g = random_grid(8, 12, 1);
        let fast = Dct2d::new(8, 12).forward(&g);
        let slow = naive_forward(&g);
        for (a, b) in fast.data.iter().zip(&slow.data) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn constant_is_dc_only() {
        let g = Grid::from_vec(16, 32, vec![3.5; 16 * 32]);
        let x = Dct2d::new(16, 32).forward(&g);
        assert!((x.get(0, 0) - 3.5 * (16.0f64 * 32.0).sqrt()).abs() < 1e-9);
        assert!(x.data[1..].iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn inverse_and_parseval() {
        let g = random_grid(16, 16, 2);
        let dct = Dct2d::new(16, 16);
        let x = dct.forward(&g);
        let back = dct.inverse(&x);
        let norm: f64 = g.data.iter().map(|v| v * v).sum();
        for (a, b) in back.data.iter().zip(&g.data) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
        let energy: f64 = x.data.iter().map(|v| v * v).sum();
        assert!((energy - norm).abs() <= 1e-9 * norm);
    }
}
