//! Dephasing noise: the decoherence exponent g(t), the induced channel on
//! Bloch vectors, and Gaussian phase sampling for trajectory-level runs.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::states::BlochVector;

/// Spectral character of the dephasing environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    /// Flat spectrum; the decoherence exponent grows linearly in time.
    White,
    /// Spectrum concentrated at low frequency; the exponent grows
    /// quadratically in time.
    LowFrequency,
}

/// Dephasing model: a noise kind plus the coherence time T2 that sets the
/// time scale of the decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DephasingModel {
    kind: NoiseKind,
    t2: f64,
}

impl DephasingModel {
    pub fn new(kind: NoiseKind, t2: f64) -> Result<Self> {
        if !(t2 > 0.0 && t2.is_finite()) {
            return Err(Error::domain(format!(
                "coherence time must be positive and finite, got {t2}"
            )));
        }
        Ok(Self { kind, t2 })
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    /// Decoherence exponent g(t): t/T2 for white noise, (t/T2)^2 for
    /// low-frequency noise.
    pub fn decoherence_exponent(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::domain(format!(
                "interaction time must be nonnegative, got {t}"
            )));
        }
        let u = t / self.t2;
        Ok(match self.kind {
            NoiseKind::White => u,
            NoiseKind::LowFrequency => u * u,
        })
    }

    /// One accumulated random phase, distributed as N(0, 2 g(t)).
    ///
    /// Averaging exp(i phi) over this distribution reproduces the channel
    /// damping factor exp(-g), which is what ties trajectory-level sampling
    /// to [`apply_dephasing_channel`]. At t = 0 the phase is exactly zero.
    pub fn sample_dephasing_phase<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> Result<f64> {
        let g = self.decoherence_exponent(t)?;
        if g == 0.0 {
            return Ok(0.0);
        }
        let normal = Normal::new(0.0, (2.0 * g).sqrt()).expect("finite standard deviation");
        Ok(normal.sample(rng))
    }
}

/// Dephasing channel on a Bloch vector: contracts the transverse components
/// by exp(-g) and leaves the longitudinal one alone.
pub fn apply_dephasing_channel(state: &BlochVector, g: f64) -> Result<BlochVector> {
    if !(g >= 0.0) {
        return Err(Error::domain(format!(
            "decoherence exponent must be nonnegative, got {g}"
        )));
    }
    let damp = (-g).exp();
    Ok(BlochVector::new_unchecked(
        state.rx() * damp,
        state.ry() * damp,
        state.rz(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::RngStream;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn exponent_forms() {
        let white = DephasingModel::new(NoiseKind::White, 2.0).unwrap();
        assert_eq!(white.decoherence_exponent(1.0).unwrap(), 0.5);
        assert_eq!(white.decoherence_exponent(0.0).unwrap(), 0.0);

        let low = DephasingModel::new(NoiseKind::LowFrequency, 2.0).unwrap();
        assert_eq!(low.decoherence_exponent(1.0).unwrap(), 0.25);
        assert_eq!(low.decoherence_exponent(4.0).unwrap(), 4.0);
    }

    #[test]
    fn exponent_rejects_negative_time_and_bad_t2() {
        let white = DephasingModel::new(NoiseKind::White, 1.0).unwrap();
        assert!(white.decoherence_exponent(-0.1).is_err());
        assert!(DephasingModel::new(NoiseKind::White, 0.0).is_err());
        assert!(DephasingModel::new(NoiseKind::White, -1.0).is_err());
        assert!(DephasingModel::new(NoiseKind::White, f64::INFINITY).is_err());
    }

    #[test]
    fn channel_damps_transverse_components() {
        let s = BlochVector::new(0.6, 0.8, 0.0).unwrap();
        let g = std::f64::consts::LN_2;
        let out = apply_dephasing_channel(&s, g).unwrap();
        assert_relative_eq!(out.rx(), 0.3, max_relative = 1e-15);
        assert_relative_eq!(out.ry(), 0.4, max_relative = 1e-15);
        assert_eq!(out.rz(), 0.0);

        let s = BlochVector::new(0.2, -0.3, 0.9).unwrap();
        let out = apply_dephasing_channel(&s, 1e6).unwrap();
        assert_abs_diff_eq!(out.rx(), 0.0);
        assert_abs_diff_eq!(out.ry(), 0.0);
        assert_eq!(out.rz(), 0.9);

        assert!(apply_dephasing_channel(&s, -0.1).is_err());
    }

    // Independent route: build the density matrix, apply the channel as a
    // phase-flip mixture (1+e^-g)/2 rho + (1-e^-g)/2 Z rho Z, read the
    // Bloch components back off the matrix entries.
    fn channel_via_density_matrix(s: &BlochVector, g: f64) -> (f64, f64, f64) {
        let i = Complex64::new(0.0, 1.0);
        let rho = [
            [
                Complex64::new(0.5 * (1.0 + s.rz()), 0.0),
                0.5 * (Complex64::new(s.rx(), 0.0) - i * s.ry()),
            ],
            [
                0.5 * (Complex64::new(s.rx(), 0.0) + i * s.ry()),
                Complex64::new(0.5 * (1.0 - s.rz()), 0.0),
            ],
        ];
        let p_keep = 0.5 * (1.0 + (-g).exp());
        let p_flip = 1.0 - p_keep;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                // Z rho Z flips the sign of the off-diagonal entries
                let flipped = if r == c { rho[r][c] } else { -rho[r][c] };
                out[r][c] = p_keep * rho[r][c] + p_flip * flipped;
            }
        }
        let rx = 2.0 * out[1][0].re;
        let ry = 2.0 * out[1][0].im;
        let rz = (out[0][0] - out[1][1]).re;
        (rx, ry, rz)
    }

    #[test]
    fn channel_agrees_with_density_matrix_route() {
        let cases = [
            (BlochVector::new(0.6, 0.8, 0.0).unwrap(), 0.25),
            (BlochVector::new(0.1, -0.2, 0.7).unwrap(), 1.7),
            (BlochVector::new(-0.5, 0.5, -0.3).unwrap(), 0.0),
        ];
        for (s, g) in cases {
            let (rx, ry, rz) = channel_via_density_matrix(&s, g);
            let out = apply_dephasing_channel(&s, g).unwrap();
            assert_abs_diff_eq!(out.rx(), rx, epsilon = 1e-15);
            assert_abs_diff_eq!(out.ry(), ry, epsilon = 1e-15);
            assert_abs_diff_eq!(out.rz(), rz, epsilon = 1e-15);
        }
    }

    #[test]
    fn phase_sampling_statistics() {
        let model = DephasingModel::new(NoiseKind::White, 1.0).unwrap();
        let mut rng = RngStream::new(7, 0);
        assert_eq!(model.sample_dephasing_phase(0.0, &mut rng).unwrap(), 0.0);

        let t = 0.8;
        let g = model.decoherence_exponent(t).unwrap();
        let n = 1_000_000usize;
        let phases: Vec<f64> = (0..n)
            .map(|_| model.sample_dephasing_phase(t, &mut rng).unwrap())
            .collect();
        let mean = phases.iter().sum::<f64>() / n as f64;
        let var = phases.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / n as f64;
        assert_abs_diff_eq!(mean, 0.0, epsilon = 0.01);
        assert_relative_eq!(var, 2.0 * g, max_relative = 0.01);

        // sampled E[cos phi] reproduces the channel damping e^-g
        let cos_mean = phases.iter().map(|p| p.cos()).sum::<f64>() / n as f64;
        let cos_var = phases
            .iter()
            .map(|p| (p.cos() - cos_mean) * (p.cos() - cos_mean))
            .sum::<f64>()
            / n as f64;
        let se = (cos_var / n as f64).sqrt();
        assert!((cos_mean - (-g).exp()).abs() <= 3.0 * se);
    }

    #[test]
    fn phase_average_reproduces_channel_on_bloch_vectors() {
        // Rotating the transverse plane by each sampled phase and averaging
        // must land on the channel output, component by component.
        let cases = [
            (NoiseKind::White, 0.6, BlochVector::new(0.6, 0.8, 0.0).unwrap()),
            (NoiseKind::LowFrequency, 0.9, BlochVector::new(0.3, -0.4, 0.5).unwrap()),
        ];
        let n = 1_000_000usize;
        for (kind, t, s) in cases {
            let model = DephasingModel::new(kind, 1.0).unwrap();
            let g = model.decoherence_exponent(t).unwrap();
            let mut rng = RngStream::new(11, 0);
            let (mut sx, mut sy) = (0.0f64, 0.0f64);
            let (mut qx, mut qy) = (0.0f64, 0.0f64);
            for _ in 0..n {
                let phi = model.sample_dephasing_phase(t, &mut rng).unwrap();
                let (sin, cos) = phi.sin_cos();
                let x = s.rx() * cos - s.ry() * sin;
                let y = s.rx() * sin + s.ry() * cos;
                sx += x;
                sy += y;
                qx += x * x;
                qy += y * y;
            }
            let expect = apply_dephasing_channel(&s, g).unwrap();
            let nf = n as f64;
            let (mx, my) = (sx / nf, sy / nf);
            let se_x = ((qx / nf - mx * mx) / nf).sqrt();
            let se_y = ((qy / nf - my * my) / nf).sqrt();
            assert!(
                (mx - expect.rx()).abs() <= 3.0 * se_x,
                "x component off by more than 3 sigma for {kind:?}"
            );
            assert!(
                (my - expect.ry()).abs() <= 3.0 * se_y,
                "y component off by more than 3 sigma for {kind:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn channel_never_grows_the_state(
            rx in -0.7f64..0.7,
            ry in -0.7f64..0.7,
            rz in -0.1f64..0.1,
            g in 0.0f64..10.0,
        ) {
            let s = BlochVector::new(rx, ry, rz).unwrap();
            let out = apply_dephasing_channel(&s, g).unwrap();
            prop_assert!(out.norm_squared() <= s.norm_squared() + 1e-12);
            prop_assert_eq!(out.rz(), s.rz());
            // applying in two steps composes additively in g
            let half = apply_dephasing_channel(&s, g / 2.0).unwrap();
            let twice = apply_dephasing_channel(&half, g / 2.0).unwrap();
            prop_assert!((twice.rx() - out.rx()).abs() <= 1e-12);
            prop_assert!((twice.ry() - out.ry()).abs() <= 1e-12);
        }
    }
}
