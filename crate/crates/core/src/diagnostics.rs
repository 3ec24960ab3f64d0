//! Analytical layer: adiabatic coherence relation, dark-state polariton,
//! group velocity, nonadiabaticity measure, dressed-state spectrum, and
//! peak extraction from time series.
//!
//! Under a perturbative, adiabatic, relaxationless evolution the Raman
//! coherence follows the drive,
//! σ_bc = −ε₁d₁/(ε₂d₂) = −ε₃d₃/(ε₄d₄),
//! and the shape-preserving polariton
//!
//! ```text
//!       (d₂ε₂/d₁)ε₁ − (2Nħω₁/ε₀)σ_bc + (d₄ε₄ω₁/(d₃ω₃))ε₃
//! Ψ = ─────────────────────────────────────────────────────
//!     sqrt[(d₂²/d₁²)ε₂² + 2Nħω₁/ε₀ + (d₄²ω₁/(d₃²ω₃))ε₄²]
//! ```
//!
//! moves with the control-tunable velocity
//!
//! ```text
//! v = c [(d₂²/d₁²)ε₂² + (d₄²ω₁/(d₃²ω₃))ε₄²]
//!     / [(d₂²/d₁²)ε₂² + 2Nħω₁/ε₀ + (d₄²ω₁/(d₃²ω₃))ε₄²].
//! ```
//!
//! Ψ and v are evaluated verbatim as diagnostic scalars, never as
//! dynamical variables; the middle numerator term of Ψ mixes units as
//! printed and is kept that way deliberately.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{MediumSpec, HBAR, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};

/// σ_bc predicted by the adiabatic relation for one signal/control pair:
/// −(ε_s d_s)/(ε_c d_c).
pub fn adiabatic_sigma_bc(eps_s: f64, eps_c: f64, d_s: f64, d_c: f64) -> Result<f64> {
    let denom = eps_c * d_c;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::ZeroControl);
    }
    Ok(-(eps_s * d_s) / denom)
}

/// The 2Nħω₁/ε₀ constant appearing in Ψ and v.
fn atomic_weight(medium: &MediumSpec) -> f64 {
    2.0 * medium.density * HBAR * medium.omega1 / VACUUM_PERMITTIVITY
}

/// Dark-state polariton amplitude Ψ, evaluated exactly as printed.
pub fn polariton_psi(
    eps1: f64,
    eps3: f64,
    eps2: f64,
    eps4: f64,
    sigma_bc: f64,
    medium: &MediumSpec,
) -> f64 {
    let b = atomic_weight(medium);
    let r2 = medium.d2 / medium.d1;
    let r4 = medium.d4 * medium.omega1 / (medium.d3 * medium.omega3);
    let num = r2 * eps2 * eps1 - b * sigma_bc + r4 * eps4 * eps3;
    let den = (r2 * r2 * eps2 * eps2
        + b
        + (medium.d4 * medium.d4 * medium.omega1 / (medium.d3 * medium.d3 * medium.omega3))
            * eps4
            * eps4)
        .sqrt();
    num / den
}

/// Polariton group velocity v(ε₂, ε₄); zero control fields give stopped
/// light and the large-field limit approaches c from below.
pub fn polariton_velocity(eps2: f64, eps4: f64, medium: &MediumSpec) -> f64 {
    let b = atomic_weight(medium);
    let t2 = (medium.d2 * medium.d2 / (medium.d1 * medium.d1)) * eps2 * eps2;
    let t4 = (medium.d4 * medium.d4 * medium.omega1 / (medium.d3 * medium.d3 * medium.omega3))
        * eps4
        * eps4;
    SPEED_OF_LIGHT * (t2 + t4) / (t2 + b + t4)
}

/// Field and coherence values sampled at one (z, t′) point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceSample {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub eps4: f64,
    /// Simulated Raman coherence (real part; it is real at resonance).
    pub sigma_bc: f64,
}

/// Ratio of the adiabatic σ_bc prediction to the simulated coherence,
/// together with the √(ω₃/ω₁)-corrected ratio.
///
/// The channel-3/4 branch of the adiabatic relation is used whenever the
/// ε₄ coupling is alive (the release phase); otherwise the channel-1/2
/// branch is evaluated. During a clean release the corrected ratio should
/// sit nearer 1 than the raw one — the offset is the nonadiabaticity of
/// the polariton hand-over.
pub fn nonadiabatic_mismatch(
    sample: &CoherenceSample,
    medium: &MediumSpec,
) -> Result<(f64, f64)> {
    if sample.sigma_bc.abs() < 1e-15 {
        return Err(Error::NoStoredCoherence(sample.sigma_bc.abs()));
    }
    let predicted = if sample.eps4 * medium.d4 != 0.0 {
        adiabatic_sigma_bc(sample.eps3, sample.eps4, medium.d3, medium.d4)?
    } else {
        adiabatic_sigma_bc(sample.eps1, sample.eps2, medium.d1, medium.d2)?
    };
    let ratio = predicted / sample.sigma_bc;
    let corrected = ratio * (medium.omega3 / medium.omega1).sqrt();
    Ok((ratio, corrected))
}

/// Eigenvalues of the resonant RWA interaction matrix, sorted ascending.
///
/// The dressed Hamiltonian has zero diagonal and couplings −½d_jε_j on
/// the b–a, c–a, b–d, c–d positions. Its spectrum is ± the singular
/// values of the 2×2 block coupling {a,d} to {b,c}, so it is symmetric
/// about zero, and zero turns into a double eigenvalue exactly when
/// ε₁d₁ε₄d₄ = ε₂d₂ε₃d₃ (the second equality of the adiabatic relation).
pub fn dressed_eigenvalues(
    eps1: f64,
    eps2: f64,
    eps3: f64,
    eps4: f64,
    medium: &MediumSpec,
) -> [f64; 4] {
    let g1 = 0.5 * medium.d1 * eps1;
    let g2 = 0.5 * medium.d2 * eps2;
    let g3 = 0.5 * medium.d3 * eps3;
    let g4 = 0.5 * medium.d4 * eps4;
    // M couples (a,d) to (b,c): rows (a,d), columns (b,c).
    let p = g1 * g1 + g2 * g2;
    let q = g3 * g3 + g4 * g4;
    let r = g1 * g3 + g2 * g4;
    let f = p + q;
    let disc = ((p - q) * (p - q) + 4.0 * r * r).sqrt();
    let s1_sq = 0.5 * (f + disc);
    let s1 = s1_sq.sqrt();
    // Stable small singular value via det(M)/s1 instead of the
    // cancellation-prone (f - disc)/2.
    let det = g1 * g4 - g2 * g3;
    let s2 = if s1 == 0.0 { 0.0 } else { det.abs() / s1 };
    [-s1, -s2, s2, s1]
}

/// The dressed 4×4 interaction matrix itself (basis order a, b, c, d).
/// Exposed for spectrum cross-checks.
pub fn dressed_matrix(
    eps1: f64,
    eps2: f64,
    eps3: f64,
    eps4: f64,
    medium: &MediumSpec,
) -> [[f64; 4]; 4] {
    let g1 = 0.5 * medium.d1 * eps1;
    let g2 = 0.5 * medium.d2 * eps2;
    let g3 = 0.5 * medium.d3 * eps3;
    let g4 = 0.5 * medium.d4 * eps4;
    let mut h = [[0.0; 4]; 4];
    h[0][1] = -g1;
    h[1][0] = -g1;
    h[0][2] = -g2;
    h[2][0] = -g2;
    h[1][3] = -g3;
    h[3][1] = -g3;
    h[2][3] = -g4;
    h[3][2] = -g4;
    h
}

/// Eigenvalues of a 4×4 complex Hermitian matrix by cyclic Jacobi
/// rotations, sorted ascending. Deterministic fixed sweep schedule;
/// used for positivity monitoring and as a brute-force spectrum oracle.
pub fn hermitian_eigenvalues_4x4(m: &[[C64; 4]; 4]) -> [f64; 4] {
    let mut a = *m;
    for _sweep in 0..24 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[p][q].norm_sqr();
            }
        }
        if off < 1e-300 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq.norm_sqr() == 0.0 {
                    continue;
                }
                // Unitary 2x2 rotation annihilating a[p][q]: diagonalize
                // [[app, apq], [conj(apq), aqq]].
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Column rotation: col_p' = c col_p - conj(s phase) col_q,
                // col_q' = s phase col_p + c col_q, then same for rows.
                let sp = phase * s;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - sp.conj() * akq;
                    a[k][q] = sp * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - sp * aqk;
                    a[q][k] = sp.conj() * apk + c * aqk;
                }
            }
        }
    }
    let mut ev = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    ev.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    ev
}

/// Smallest eigenvalue of a Hermitian 4×4 matrix.
pub fn min_eigenvalue_4x4(m: &[[C64; 4]; 4]) -> f64 {
    hermitian_eigenvalues_4x4(m)[0]
}

/// One detected local maximum of a time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Quadratically interpolated center time, a.u.
    pub t_center: f64,
    /// Interpolated height at the center, a.u.
    pub height: f64,
    /// Full width at half maximum from linear interpolation of the
    /// half-height crossings, a.u.
    pub width_fwhm: f64,
}

/// Find local maxima above `min_height` in a strictly time-ordered
/// series. Peak centers are refined with a three-point parabola and the
/// FWHM comes from linearly interpolated half-height crossings; peaks are
/// returned in time order.
pub fn detect_peaks(series: &[(f64, f64)], min_height: f64) -> Result<Vec<Peak>> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let n = series.len();
    let mut peaks = Vec::new();
    let mut k = 1;
    while k + 1 < n {
        let (tm, ym) = series[k];
        let yl = series[k - 1].1;
        let yr = series[k + 1].1;
        // Flat-topped maxima: extend the plateau to the right.
        if ym >= yl && ym > min_height {
            let mut k2 = k;
            while k2 + 1 < n && series[k2 + 1].1 == ym {
                k2 += 1;
            }
            let yr2 = if k2 + 1 < n { series[k2 + 1].1 } else { f64::NEG_INFINITY };
            if (ym > yl && yr2 < ym) || (k2 > k && yr2 < ym) {
                let plateau_mid = 0.5 * (tm + series[k2].0);
                let (tc, hc) = if k2 == k {
                    parabolic_vertex(series[k - 1], series[k], series[k + 1])
                } else {
                    (plateau_mid, ym)
                };
                let width = fwhm(series, k, hc);
                peaks.push(Peak { t_center: tc, height: hc, width_fwhm: width });
                k = k2 + 1;
                continue;
            }
        }
        let _ = yr;
        k += 1;
    }
    Ok(peaks)
}

/// Vertex of the parabola through three samples.
fn parabolic_vertex(l: (f64, f64), m: (f64, f64), r: (f64, f64)) -> (f64, f64) {
    let denom = l.1 - 2.0 * m.1 + r.1;
    if denom == 0.0 {
        return (m.0, m.1);
    }
    // Uniform spacing is not assumed; fit y = a t^2 + b t + c.
    let (t1, y1) = l;
    let (t2, y2) = m;
    let (t3, y3) = r;
    let d12 = (y1 - y2) / (t1 - t2);
    let d23 = (y2 - y3) / (t2 - t3);
    let a = (d12 - d23) / (t1 - t3);
    if a == 0.0 {
        return (m.0, m.1);
    }
    let b = d12 - a * (t1 + t2);
    let tc = -b / (2.0 * a);
    let c = y2 - a * t2 * t2 - b * t2;
    (tc, a * tc * tc + b * tc + c)
}

/// Linearly interpolated full width at half of `height` around index `k`.
fn fwhm(series: &[(f64, f64)], k: usize, height: f64) -> f64 {
    let half = 0.5 * height;
    let mut left = series[k].0;
    for i in (1..=k).rev() {
        let (t0, y0) = series[i - 1];
        let (t1, y1) = series[i];
        if y0 <= half && y1 > half {
            left = t0 + (t1 - t0) * (half - y0) / (y1 - y0);
            break;
        }
        left = t0;
    }
    let mut right = series[k].0;
    for i in k..series.len() - 1 {
        let (t0, y0) = series[i];
        let (t1, y1) = series[i + 1];
        if y0 > half && y1 <= half {
            right = t0 + (t1 - t0) * (half - y0) / (y0 - y1);
            break;
        }
        right = t1;
    }
    right - left
}

/// Normalized cross-correlation of two equal-length profiles,
/// Σ a b / sqrt(Σ a² Σ b²); 1 means identical shape.
pub fn normalized_cross_correlation(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "profiles must have equal length");
    let mut ab = 0.0;
    let mut aa = 0.0;
    let mut bb = 0.0;
    for (x, y) in a.iter().zip(b) {
        ab += x * y;
        aa += x * x;
        bb += y * y;
    }
    if aa == 0.0 || bb == 0.0 {
        return 0.0;
    }
    ab / (aa * bb).sqrt()
}

/// Polariton diagnostics harvested at the mid-sample point of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolaritonSample {
    /// Window time of the sample, a.u.
    pub t_prime: f64,
    /// Polariton amplitude Ψ.
    pub psi: f64,
    /// Polariton velocity v(ε₂, ε₄), a.u.
    pub v: f64,
    /// Simulated Raman coherence (real part).
    pub sigma_bc_sim: f64,
    /// Adiabatic prediction from the channel-1/2 pair, if ε₂ is alive.
    pub sigma_bc_from_12: Option<f64>,
    /// Adiabatic prediction from the channel-3/4 pair, if ε₄ is alive.
    pub sigma_bc_from_34: Option<f64>,
    /// Prediction/simulation ratio from `nonadiabatic_mismatch`.
    pub mismatch: Option<f64>,
    /// The same ratio times √(ω₃/ω₁).
    pub mismatch_corrected: Option<f64>,
}
