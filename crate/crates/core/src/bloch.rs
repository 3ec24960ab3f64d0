//! Density-matrix evolution of a single atom in the double-Λ scheme.
//!
//! The state is the slowly varying 4×4 Hermitian matrix σ (rapid optical
//! phases already factored out). With g_j = ε_j d_j / 2 and channel
//! couplings 1: b↔a, 2: c↔a, 3: b↔d, 4: c↔d, the equations of motion at
//! exact resonance are
//!
//! ```text
//! σ̇_aa =  2 g₁ Im σ_ab + 2 g₂ Im σ_ac − (Γᵃ_b + Γᵃ_c) σ_aa
//! σ̇_bb = −2 g₁ Im σ_ab − 2 g₃ Im σ_db + Γᵃ_b σ_aa + Γᵈ_b σ_dd
//! σ̇_cc = −2 g₂ Im σ_ac − 2 g₄ Im σ_dc + Γᵃ_c σ_aa + Γᵈ_c σ_dd
//! σ̇_dd =  2 g₃ Im σ_db + 2 g₄ Im σ_dc − (Γᵈ_b + Γᵈ_c) σ_dd
//! σ̇_ab = i g₁ (σ_bb − σ_aa) + i g₂ σ_cb − i g₃ σ_ad − ½(Γᵃ_b+Γᵃ_c) σ_ab
//! σ̇_ac = i g₁ σ_bc + i g₂ (σ_cc − σ_aa) − i g₄ σ_ad − ½(Γᵃ_b+Γᵃ_c) σ_ac
//! σ̇_ad = i g₁ σ_bd + i g₂ σ_cd − i g₃ σ_ab − i g₄ σ_ac
//!         − ½(Γᵃ_b+Γᵃ_c+Γᵈ_b+Γᵈ_c) σ_ad
//! σ̇_bc = i g₁ σ_ac − i g₂ σ_ba + i g₃ σ_dc − i g₄ σ_bd
//! σ̇_bd = i g₁ σ_ad + i g₃ (σ_dd − σ_bb) − i g₄ σ_bc − ½(Γᵈ_b+Γᵈ_c) σ_bd
//! σ̇_cd = i g₂ σ_ad − i g₃ σ_cb + i g₄ (σ_dd − σ_cc) − ½(Γᵈ_b+Γᵈ_c) σ_cd
//! ```
//!
//! Relaxation is trace-preserving: every loss from |a>, |d> reappears in
//! |b>, |c>. The population derivatives are assembled from shared
//! pairwise flows and the |d> entry closes the balance, so the returned
//! derivative is traceless to the last bit, not merely to roundoff.
//! Note that σ_bc carries no relaxation term.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::MediumSpec;

/// Atomic levels, in the storage order of [`DensityMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

/// Slowly varying atomic density matrix at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: [[C64; 4]; 4],
}

impl DensityMatrix {
    /// The zero matrix (used for derivatives and accumulators).
    pub fn zero() -> Self {
        Self { m: [[C64::ZERO; 4]; 4] }
    }

    /// The ground state σ_bb = 1, all other entries zero.
    pub fn ground() -> Self {
        let mut s = Self::zero();
        s.m[Level::B as usize][Level::B as usize] = C64::new(1.0, 0.0);
        s
    }

    /// The pure state |l><l|.
    pub fn projector(l: Level) -> Self {
        let mut s = Self::zero();
        s.m[l as usize][l as usize] = C64::new(1.0, 0.0);
        s
    }

    /// Build from raw elements. No invariant is enforced; callers that
    /// need a physical state should pass a Hermitian, unit-trace matrix.
    pub fn from_elements(m: [[C64; 4]; 4]) -> Self {
        Self { m }
    }

    /// Raw element access.
    pub fn elements(&self) -> &[[C64; 4]; 4] {
        &self.m
    }

    /// Element σ_ij.
    pub fn get(&self, i: Level, j: Level) -> C64 {
        self.m[i as usize][j as usize]
    }

    /// Set element σ_ij (does not mirror the conjugate).
    pub fn set(&mut self, i: Level, j: Level, v: C64) {
        self.m[i as usize][j as usize] = v;
    }

    /// Trace, summed in storage order.
    pub fn trace(&self) -> C64 {
        ((self.m[0][0] + self.m[1][1]) + self.m[2][2]) + self.m[3][3]
    }

    /// The four real populations (σ_aa, σ_bb, σ_cc, σ_dd).
    pub fn populations(&self) -> [f64; 4] {
        [self.m[0][0].re, self.m[1][1].re, self.m[2][2].re, self.m[3][3].re]
    }

    /// Largest element-wise deviation from Hermiticity,
    /// max |σ_ij − conj(σ_ji)|.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..4 {
            for j in i..4 {
                r = r.max((self.m[i][j] - self.m[j][i].conj()).norm());
            }
        }
        r
    }

    /// Largest element magnitude.
    pub fn max_abs(&self) -> f64 {
        let mut r: f64 = 0.0;
        for row in &self.m {
            for v in row {
                r = r.max(v.norm());
            }
        }
        r
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for row in &self.m {
            for v in row {
                s += v.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Replace σ by (σ + σ†)/2.
    pub fn re_hermitize(&mut self) {
        for i in 0..4 {
            self.m[i][i] = C64::new(self.m[i][i].re, 0.0);
            for j in (i + 1)..4 {
                let avg = 0.5 * (self.m[i][j] + self.m[j][i].conj());
                self.m[i][j] = avg;
                self.m[j][i] = avg.conj();
            }
        }
    }

    /// self + a * k, element-wise.
    fn axpy(&self, a: f64, k: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[i][j] + a * k.m[i][j];
            }
        }
        out
    }
}

/// Field envelope amplitudes seen by one atom at one (z, t′) point, a.u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFields {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub eps4: f64,
}

impl LocalFields {
    pub fn zero() -> Self {
        Self { eps1: 0.0, eps2: 0.0, eps3: 0.0, eps4: 0.0 }
    }
}

const I: C64 = C64::new(0.0, 1.0);

/// Right-hand side dσ/dt of the resonant double-Λ master equation.
///
/// Pure function; the lower triangle of the output is the conjugate
/// mirror of the upper one, so a Hermitian input yields a Hermitian
/// derivative and the trace of the output is exactly zero.
#[inline]
pub fn liouville_rhs(
    state: &DensityMatrix,
    fields: &LocalFields,
    medium: &MediumSpec,
) -> DensityMatrix {
    let s = &state.m;
    let g1 = 0.5 * fields.eps1 * medium.d1;
    let g2 = 0.5 * fields.eps2 * medium.d2;
    let g3 = 0.5 * fields.eps3 * medium.d3;
    let g4 = 0.5 * fields.eps4 * medium.d4;
    let gab = medium.decays.gamma_ab;
    let gac = medium.decays.gamma_ac;
    let gdb = medium.decays.gamma_db;
    let gdc = medium.decays.gamma_dc;
    let ga = gab + gac;
    let gd = gdb + gdc;

    let (a, b, c, d) = (0usize, 1usize, 2usize, 3usize);

    // Pairwise population flows; each product appears with both signs so
    // the total population is conserved term by term.
    let x1 = 2.0 * g1 * s[a][b].im; // b -> a excitation rate, channel 1
    let x2 = 2.0 * g2 * s[a][c].im; // c -> a, channel 2
    let x3 = 2.0 * g3 * s[d][b].im; // b -> d, channel 3
    let x4 = 2.0 * g4 * s[d][c].im; // c -> d, channel 4
    let rab = gab * s[a][a].re;
    let rac = gac * s[a][a].re;
    let rdb = gdb * s[d][d].re;
    let rdc = gdc * s[d][d].re;

    let daa = (x1 + x2) - (rab + rac);
    let dbb = (rab + rdb) - (x1 + x3);
    let dcc = (rac + rdc) - (x2 + x4);
    // Close the balance so the diagonal sums to zero bit-exactly in the
    // storage-order trace.
    let ddd = -(((daa + dbb) + dcc));

    let mut out = DensityMatrix::zero();
    out.m[a][a] = C64::new(daa, 0.0);
    out.m[b][b] = C64::new(dbb, 0.0);
    out.m[c][c] = C64::new(dcc, 0.0);
    out.m[d][d] = C64::new(ddd, 0.0);

    out.m[a][b] =
        I * (g1 * (s[b][b] - s[a][a]) + g2 * s[c][b] - g3 * s[a][d]) - 0.5 * ga * s[a][b];
    out.m[a][c] =
        I * (g1 * s[b][c] + g2 * (s[c][c] - s[a][a]) - g4 * s[a][d]) - 0.5 * ga * s[a][c];
    out.m[a][d] = I * (g1 * s[b][d] + g2 * s[c][d] - g3 * s[a][b] - g4 * s[a][c])
        - 0.5 * (ga + gd) * s[a][d];
    out.m[b][c] = I * (g1 * s[a][c] - g2 * s[b][a] + g3 * s[d][c] - g4 * s[b][d]);
    out.m[b][d] =
        I * (g1 * s[a][d] + g3 * (s[d][d] - s[b][b]) - g4 * s[b][c]) - 0.5 * gd * s[b][d];
    out.m[c][d] =
        I * (g2 * s[a][d] - g3 * s[c][b] + g4 * (s[d][d] - s[c][c])) - 0.5 * gd * s[c][d];

    // Hermitian mirror.
    for i in 0..4 {
        for j in (i + 1)..4 {
            out.m[j][i] = out.m[i][j].conj();
        }
    }
    out
}

/// Advance one atom by a single classical RK4 step of length `dt`.
///
/// `fields_at` supplies the local fields at the times the substeps
/// require (t, t + dt/2, t + dt). The result is re-Hermitized before
/// return, and a single-step trace drift beyond 1e-6 is reported as a
/// step-size diagnostic error instead of being clamped.
pub fn step_atoms<F>(
    state: &DensityMatrix,
    fields_at: F,
    t: f64,
    dt: f64,
    medium: &MediumSpec,
) -> Result<DensityMatrix>
where
    F: Fn(f64) -> LocalFields,
{
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    let f0 = fields_at(t);
    let fh = fields_at(t + 0.5 * dt);
    let f1 = fields_at(t + dt);
    Ok(rk4_step(state, &f0, &fh, &f1, t, dt, medium)?)
}

/// RK4 kernel with the three field samples already in hand. This is the
/// co-simulation inner loop; `step_atoms` is the sampling front end.
#[inline]
pub(crate) fn rk4_step(
    state: &DensityMatrix,
    f0: &LocalFields,
    fh: &LocalFields,
    f1: &LocalFields,
    t: f64,
    dt: f64,
    medium: &MediumSpec,
) -> Result<DensityMatrix> {
    let k1 = liouville_rhs(state, f0, medium);
    let k2 = liouville_rhs(&state.axpy(0.5 * dt, &k1), fh, medium);
    let k3 = liouville_rhs(&state.axpy(0.5 * dt, &k2), fh, medium);
    let k4 = liouville_rhs(&state.axpy(dt, &k3), f1, medium);

    let mut out = DensityMatrix::zero();
    let w = dt / 6.0;
    for i in 0..4 {
        for j in 0..4 {
            out.m[i][j] = state.m[i][j]
                + w * (k1.m[i][j] + 2.0 * k2.m[i][j] + 2.0 * k3.m[i][j] + k4.m[i][j]);
        }
    }
    out.re_hermitize();

    let drift = (out.trace() - state.trace()).norm();
    // `!(x <= tol)` also catches NaN.
    if !(drift <= 1e-6) {
        return Err(Error::TraceDrift { drift, t });
    }
    Ok(out)
}
