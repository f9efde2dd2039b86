//! L1-regularised least squares over DCT coefficients:
//!
//! ```text
//! minimise  sum_{n sampled} (IDCT(X)_n - b_n)^2  +  C * sum |X|
//! ```
//!
//! solved by monotone accelerated proximal gradient. The smooth term's
//! gradient is `2 * DCT(mask * (IDCT(X) - b))`; its Lipschitz constant is 2
//! because the mask and the orthonormal transform both have unit norm.

use thiserror::Error;

use super::dct::{Dct2d, Grid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no samples to fit")]
    NoSamples,
    #[error("L1 weight must be positive, got {0}")]
    Weight(f64),
    #[error("max_iters must be at least 1")]
    Iterations,
    #[error("step size {0} outside (0, 0.5]")]
    Step(f64),
    #[error("sample index {index} outside a {rows}x{cols} grid")]
    Index { index: usize, rows: usize, cols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Weight of the L1 term.
    pub c: f64,
    pub max_iters: usize,
    /// Stop once an accepted step lowers the objective by less than this
    /// fraction.
    pub tolerance: f64,
    /// Gradient step. Descent is guaranteed up to `1 / 2`.
    pub step: f64,
    /// Nesterov momentum with restart on any objective increase.
    pub accelerate: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            c: 4.0,
            max_iters: 500,
            tolerance: 1e-6,
            step: 0.25,
            accelerate: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        if self.c.is_nan() || self.c <= 0.0 {
            return Err(SolveError::Weight(self.c));
        }
        if self.max_iters == 0 {
            return Err(SolveError::Iterations);
        }
        if !(self.step > 0.0 && self.step <= 0.5) {
            return Err(SolveError::Step(self.step));
        }
        Ok(())
    }
}

/// Observed pixel values of one channel. Unobserved pixels carry no data term.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSamples {
    rows: usize,
    cols: usize,
    mask: Vec<bool>,
    values: Vec<f64>,
    count: usize,
}

impl ChannelSamples {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            mask: vec![false; rows * cols],
            values: vec![0.0; rows * cols],
            count: 0,
        }
    }

    /// Builds from `(linear index, value)` pairs; later pairs overwrite earlier ones.
    pub fn from_pairs(
        rows: usize,
        cols: usize,
        pairs: impl IntoIterator<Item = (usize, f64)>,
    ) -> Result<Self, SolveError> {
        let mut s = Self::new(rows, cols);
        for (index, value) in pairs {
            s.insert(index, value)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, index: usize, value: f64) -> Result<(), SolveError> {
        if index >= self.mask.len() {
            return Err(SolveError::Index {
                index,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.mask[index] {
            self.count += 1;
        }
        self.mask[index] = true;
        self.values[index] = value;
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.mask[index].then(|| self.values[index])
    }

    fn residual(&self, image: &[f64]) -> Vec<f64> {
        image
            .iter()
            .zip(&self.mask)
            .zip(&self.values)
            .map(|((&v, &m), &b)| if m { v - b } else { 0.0 })
            .collect()
    }

    fn data_term(&self, image: &[f64]) -> f64 {
        self.residual(image).iter().map(|r| r * r).sum()
    }
}

fn l1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

/// `sign(v) * max(|v| - t, 0)`; entries with `|v| <= t` become exactly zero.
pub fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

/// Objective value for coefficients `coeffs`.
pub fn objective(dct: &Dct2d, coeffs: &Grid, samples: &ChannelSamples, c: f64) -> f64 {
    let image = dct.inverse(coeffs);
    samples.data_term(&image.data) + c * l1(&coeffs.data)
}

/// Gradient of the data term with respect to the coefficients.
pub fn smooth_gradient(dct: &Dct2d, coeffs: &Grid, samples: &ChannelSamples) -> Grid {
    let image = dct.inverse(coeffs);
    gradient_from_image(dct, &image, samples)
}

fn gradient_from_image(dct: &Dct2d, image: &Grid, samples: &ChannelSamples) -> Grid {
    let mut r = Grid::from_vec(image.rows, image.cols, samples.residual(&image.data));
    dct.forward_in_place(&mut r);
    r.data.iter_mut().for_each(|v| *v *= 2.0);
    r
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Reconstructed channel, clamped to [0, 255].
    pub channel: Grid,
    pub coefficients: Grid,
    pub iterations: usize,
    pub converged: bool,
    /// Objective at the start and after every accepted step.
    pub history: Vec<f64>,
}

impl SolveReport {
    pub fn objective(&self) -> f64 {
        *self.history.last().expect("history holds the initial value")
    }

    pub fn zero_coefficients(&self) -> usize {
        self.coefficients.data.iter().filter(|&&v| v == 0.0).count()
    }
}

/// Fits DCT coefficients to the samples starting from all zeros.
///
/// Running out of iterations is not an error: the report carries the best
/// iterate with `converged == false`.
pub fn solve_channel(samples: &ChannelSamples, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    solve_with(&Dct2d::new(samples.rows(), samples.cols()), samples, cfg)
}

/// As [`solve_channel`], reusing a planned transform.
pub fn solve_with(dct: &Dct2d, samples: &ChannelSamples, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    cfg.validate()?;
    if samples.is_empty() {
        return Err(SolveError::NoSamples);
    }
    let (rows, cols) = (samples.rows(), samples.cols());
    let threshold = cfg.step * cfg.c;

    // x: accepted iterate; y: extrapolated point. Pixel-domain images are
    // carried alongside so each step costs one forward and one inverse DCT.
    let mut x = Grid::zeros(rows, cols);
    let mut x_img = Grid::zeros(rows, cols);
    let mut fx = samples.data_term(&x_img.data);
    let mut y = x.clone();
    let mut y_img = x_img.clone();
    let mut momentum = 1.0f64;
    let mut at_x = true;
    let mut history = vec![fx];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        iterations += 1;
        let grad = gradient_from_image(dct, &y_img, samples);
        let z_data: Vec<f64> = y
            .data
            .iter()
            .zip(&grad.data)
            .map(|(&v, &g)| soft_threshold(v - cfg.step * g, threshold))
            .collect();
        let z = Grid::from_vec(rows, cols, z_data);
        let z_img = dct.inverse(&z);
        let fz = samples.data_term(&z_img.data) + cfg.c * l1(&z.data);

        if fz > fx {
            if at_x {
                // a plain step from the accepted point cannot increase the
                // objective beyond rounding; nothing left to gain
                converged = true;
                break;
            }
            momentum = 1.0;
            y.data.clone_from(&x.data);
            y_img.data.clone_from(&x_img.data);
            at_x = true;
            continue;
        }

        let decrease = (fx - fz) / fx.max(f64::MIN_POSITIVE);
        if cfg.accelerate {
            let next = (1.0 + (1.0 + 4.0 * momentum * momentum).sqrt()) / 2.0;
            let beta = (momentum - 1.0) / next;
            momentum = next;
            y.data = extrapolate(&z.data, &x.data, beta);
            y_img.data = extrapolate(&z_img.data, &x_img.data, beta);
            at_x = beta == 0.0;
        } else {
            y.data.clone_from(&z.data);
            y_img.data.clone_from(&z_img.data);
            at_x = true;
        }
        x = z;
        x_img = z_img;
        fx = fz;
        history.push(fx);
        if decrease < cfg.tolerance {
            converged = true;
            break;
        }
    }

    x_img.data.iter_mut().for_each(|v| *v = v.clamp(0.0, 255.0));
    Ok(SolveReport {
        channel: x_img,
        coefficients: x,
        iterations,
        converged,
        history,
    })
}

fn extrapolate(z: &[f64], x: &[f64], beta: f64) -> Vec<f64> {
    z.iter().zip(x).map(|(&zi, &xi)| zi + beta * (zi - xi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn objective_examples() {
        let dct = Dct2d::new(8, 8);
        let zero = Grid::zeros(8, 8);
        let empty = ChannelSamples::new(8, 8);
        assert_eq!(objective(&dct, &zero, &empty, 4.0), 0.0);
        let one = ChannelSamples::from_pairs(8, 8, [(5, 10.0)]).unwrap();
        assert!((objective(&dct, &zero, &one, 4.0) - 100.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let image: Vec<f64> = (0..64).map(|_| rng.random_range(0.0..255.0)).collect();
        let all = ChannelSamples::from_pairs(8, 8, image.iter().copied().enumerate()).unwrap();
        let coeffs = dct.forward(&Grid::from_vec(8, 8, image));
        assert!(objective(&dct, &coeffs, &all, 0.0).abs() < 1e-6);
    }

    #[test]
    fn soft_threshold_zeroes_small_values() {
        assert_eq!(soft_threshold(0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(-1.0, 1.0), 0.0);
        assert_eq!(soft_threshold(3.0, 1.0), 2.0);
        assert_eq!(soft_threshold(-3.0, 1.0), -2.0);
    }

    #[test]
    fn config_validation() {
        let ok = SolverConfig::default();
        assert!(ok.validate().is_ok());
        assert_eq!(SolverConfig { c: 0.0, ..ok }.validate(), Err(SolveError::Weight(0.0)));
        assert_eq!(SolverConfig { max_iters: 0, ..ok }.validate(), Err(SolveError::Iterations));
        assert_eq!(SolverConfig { step: 0.6, ..ok }.validate(), Err(SolveError::Step(0.6)));
        assert_eq!(
            solve_channel(&ChannelSamples::new(8, 8), &ok).unwrap_err(),
            SolveError::NoSamples
        );
        assert!(matches!(
            ChannelSamples::from_pairs(8, 8, [(64, 0.0)]),
            Err(SolveError::Index { index: 64, .. })
        ));
    }

    #[test]
    fn duplicate_samples_last_wins() {
        let s = ChannelSamples::from_pairs(4, 4, [(3, 1.0), (3, 9.0)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.get(3), Some(9.0));
    }

    #[test]
    fn constant_image_fully_sampled() {
        let s = ChannelSamples::from_pairs(16, 16, (0..256).map(|i| (i, 180.0))).unwrap();
        let cfg = SolverConfig { c: 0.01, ..SolverConfig::default() };
        let report = solve_channel(&s, &cfg).unwrap();
        let worst = report.channel.data.iter().map(|v| (v - 180.0).abs()).fold(0.0, f64::max);
        assert!(worst <= 1.0, "max error {worst}");
    }

    #[test]
    fn single_sample_fills_the_raster() {
        let s = ChannelSamples::from_pairs(16, 32, [(77, 200.0)]).unwrap();
        let report = solve_channel(&s, &SolverConfig::default()).unwrap();
        assert_eq!(report.channel.data.len(), 16 * 32);
        assert!(report.channel.data.iter().all(|v| (0.0..=255.0).contains(v)));
    }

    #[test]
    fn history_never_increases_and_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pairs: Vec<(usize, f64)> = (0..200).map(|_| (rng.random_range(0..1024), rng.random_range(0.0..255.0))).collect();
        let s = ChannelSamples::from_pairs(32, 32, pairs).unwrap();
        let cfg = SolverConfig { tolerance: 0.0, max_iters: 300, ..SolverConfig::default() };
        let a = solve_channel(&s, &cfg).unwrap();
        assert!(a.history.windows(2).all(|w| w[1] <= w[0]));
        let b = solve_channel(&s, &cfg).unwrap();
        assert_eq!(a.history, b.history);
        assert_eq!(a.coefficients, b.coefficients);
    }

    #[test]
    fn unaccelerated_variant_also_descends() {
        let s = ChannelSamples::from_pairs(16, 16, (0..256).step_by(3).map(|i| (i, (i % 17) as f64 * 10.0))).unwrap();
        let cfg = SolverConfig { accelerate: false, step: 0.5, ..SolverConfig::default() };
        let r = solve_channel(&s, &cfg).unwrap();
        assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
        assert!(r.objective() < r.history[0]);
    }
}
