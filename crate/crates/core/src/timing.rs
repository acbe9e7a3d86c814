//! Timing law: tempo, the quintic ease and the phase map from seconds to
//! curve parameter.
//!
//! A cycle of `N` beats lasts `T = 60 N / bpm` seconds and is split into `2N`
//! segments of `Δ = T / 2N`. Segment `j` (0-based) eases the curve parameter
//! from `j` to `j + 1`. Even segments run preparation → ictus and accelerate,
//! odd segments run ictus → preparation and decelerate.

use crate::error::{ensure_finite, ensure_unit_interval, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tempo {
    beats: u32,
    bpm: f64,
    cycle_duration: f64,
    segment_duration: f64,
}

impl Tempo {
    pub fn new(beats: u32, bpm: f64) -> Result<Self> {
        if beats == 0 {
            return Err(Error::domain("beats must be at least 1"));
        }
        if !(bpm.is_finite() && bpm > 0.0) {
            return Err(Error::domain(format!(
                "bpm must be a positive number, got {bpm}"
            )));
        }
        let cycle_duration = 60.0 * beats as f64 / bpm;
        Ok(Tempo {
            beats,
            bpm,
            cycle_duration,
            segment_duration: cycle_duration / (2 * beats) as f64,
        })
    }

    pub fn beats(&self) -> u32 {
        self.beats
    }

    pub fn bpm(&self) -> f64 {
        self.bpm
    }

    /// `T`, seconds per cycle.
    pub fn cycle_duration(&self) -> f64 {
        self.cycle_duration
    }

    /// `Δ`, seconds per half-beat segment.
    pub fn segment_duration(&self) -> f64 {
        self.segment_duration
    }

    pub fn segment_count(&self) -> usize {
        2 * self.beats as usize
    }
}

/// Tempo plus the speed balance `beta ∈ [0, 1]`.
///
/// `beta = 0` is uniform phase speed; `beta = 1` stops the baton at every
/// preparation and doubles the mean speed at every ictus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingLaw {
    tempo: Tempo,
    beta: f64,
}

impl TimingLaw {
    pub fn new(tempo: Tempo, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::domain(format!(
                "speed balance beta = {beta} is outside the valid range [0, 1]"
            )));
        }
        Ok(TimingLaw { tempo, beta })
    }

    pub fn tempo(&self) -> &Tempo {
        &self.tempo
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn a_min(&self) -> f64 {
        1.0 - self.beta
    }

    pub fn a_max(&self) -> f64 {
        1.0 + self.beta
    }

    /// Endpoint rates `(a, b)` of segment `j`.
    pub fn segment_rates(&self, segment_index: usize) -> Result<(f64, f64)> {
        let n = self.tempo.segment_count();
        if segment_index >= n {
            return Err(Error::domain(format!(
                "segment index {segment_index} out of range 0..{n}"
            )));
        }
        Ok(self.rates_unchecked(segment_index))
    }

    fn rates_unchecked(&self, segment_index: usize) -> (f64, f64) {
        if segment_index.is_multiple_of(2) {
            (self.a_min(), self.a_max())
        } else {
            (self.a_max(), self.a_min())
        }
    }

    /// Splits `t` into (completed cycles, segment index, local time `τ`).
    fn locate(&self, t: f64) -> Result<(f64, usize, f64)> {
        ensure_finite("time", t)?;
        if t < 0.0 {
            return Err(Error::domain(format!("time must be non-negative, got {t}")));
        }
        let period = self.tempo.cycle_duration;
        let cycle = (t / period).floor();
        let within = (t - cycle * period).max(0.0);
        let x = within / self.tempo.segment_duration;
        let j = (x.floor() as usize).min(self.tempo.segment_count() - 1);
        let tau = (x - j as f64).clamp(0.0, 1.0);
        Ok((cycle, j, tau))
    }

    /// The phase map `f(t)`: curve parameter reached at time `t`.
    ///
    /// Satisfies `f(t + T) = f(t) + 2N` and is non-decreasing.
    pub fn phase(&self, t: f64) -> Result<f64> {
        let (cycle, j, tau) = self.locate(t)?;
        let (a, b) = self.rates_unchecked(j);
        let local = EaseCoefficients::from_rates(a, b).value(tau);
        Ok(cycle * self.tempo.segment_count() as f64 + j as f64 + local)
    }

    /// `df/dt` in curve-parameter units per second.
    pub fn phase_rate(&self, t: f64) -> Result<f64> {
        let (_, j, tau) = self.locate(t)?;
        let (a, b) = self.rates_unchecked(j);
        Ok(EaseCoefficients::from_rates(a, b).rate(tau) / self.tempo.segment_duration)
    }
}

/// `ease(τ) = aτ + c3 τ³ + c4 τ⁴ + c5 τ⁵`, with `ease(0) = 0`, `ease(1) = 1`,
/// `ease'(0) = a`, `ease'(1) = b` and zero second derivative at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EaseCoefficients {
    pub a: f64,
    pub b: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
}

impl EaseCoefficients {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        ensure_finite("a", a)?;
        ensure_finite("b", b)?;
        Ok(Self::from_rates(a, b))
    }

    fn from_rates(a: f64, b: f64) -> Self {
        EaseCoefficients {
            a,
            b,
            c3: -6.0 * a - 4.0 * b + 10.0,
            c4: 8.0 * a + 7.0 * b - 15.0,
            c5: -3.0 * a - 3.0 * b + 6.0,
        }
    }

    pub fn value(&self, tau: f64) -> f64 {
        // Horner on a + τ²(c3 + τ(c4 + τ c5)), times τ.
        tau * (self.a + tau * tau * (self.c3 + tau * (self.c4 + tau * self.c5)))
    }

    pub fn rate(&self, tau: f64) -> f64 {
        self.a + tau * tau * (3.0 * self.c3 + tau * (4.0 * self.c4 + tau * 5.0 * self.c5))
    }

    pub fn acceleration(&self, tau: f64) -> f64 {
        tau * (6.0 * self.c3 + tau * (12.0 * self.c4 + tau * 20.0 * self.c5))
    }
}

pub fn ease_coefficients(a: f64, b: f64) -> Result<EaseCoefficients> {
    EaseCoefficients::new(a, b)
}

pub fn ease(a: f64, b: f64, tau: f64) -> Result<f64> {
    ensure_unit_interval("tau", tau)?;
    Ok(EaseCoefficients::new(a, b)?.value(tau))
}

pub fn ease_rate(a: f64, b: f64, tau: f64) -> Result<f64> {
    ensure_unit_interval("tau", tau)?;
    Ok(EaseCoefficients::new(a, b)?.rate(tau))
}
