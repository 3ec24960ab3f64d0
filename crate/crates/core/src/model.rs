//! Physical unit system, level scheme, and derived medium quantities.
//!
//! Everything is expressed in Hartree atomic units: ħ = 1, ε₀ = 1/(4π),
//! c = 1/α ≈ 137.036. Transition frequencies follow from the level
//! energies under exact resonance, ω₁ = E_a − E_b, ω₂ = E_a − E_c,
//! ω₃ = E_d − E_b, ω₄ = E_d − E_c, and the dipole moments are recovered
//! from the quoted spontaneous-emission rates by inverting the
//! single-channel Weisskopf-Wigner rate Γ = (4/3) α³ ω³ d².

use crate::error::{Error, Result};

/// Speed of light in atomic units (1/α).
pub const SPEED_OF_LIGHT: f64 = 137.035999;

/// Vacuum permittivity in atomic units, ε₀ = 1/(4π).
pub const VACUUM_PERMITTIVITY: f64 = 1.0 / (4.0 * std::f64::consts::PI);

/// Reduced Planck constant in atomic units.
pub const HBAR: f64 = 1.0;

/// Bohr radius in meters (length unit).
pub const BOHR_RADIUS_M: f64 = 5.29177210903e-11;

/// Atomic unit of time in seconds.
pub const ATOMIC_TIME_S: f64 = 2.4188843265857e-17;

/// Fundamental constants of the unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Speed of light, a.u.
    pub c: f64,
    /// Vacuum permittivity, a.u.
    pub eps0: f64,
    /// Reduced Planck constant, a.u.
    pub hbar: f64,
}

impl Constants {
    /// The Hartree atomic-unit convention used throughout.
    pub const fn atomic_units() -> Self {
        Self {
            c: SPEED_OF_LIGHT,
            eps0: VACUUM_PERMITTIVITY,
            hbar: HBAR,
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::atomic_units()
    }
}

/// Convert a length from atomic units to meters.
pub fn length_au_to_m(l: f64) -> f64 {
    l * BOHR_RADIUS_M
}

/// Convert a time from atomic units to seconds.
pub fn time_au_to_s(t: f64) -> f64 {
    t * ATOMIC_TIME_S
}

/// Convert a number density from atomic units (a₀⁻³) to cm⁻³.
pub fn density_au_to_per_cm3(n: f64) -> f64 {
    let a0_cm = BOHR_RADIUS_M * 100.0;
    n / (a0_cm * a0_cm * a0_cm)
}

/// The four level energies of the double-Λ scheme, a.u.
///
/// |b> and |c> are the lower metastable states, |a> and |d> the upper
/// states, ordered E_b < E_c < E_a < E_d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelScheme {
    pub e_a: f64,
    pub e_b: f64,
    pub e_c: f64,
    pub e_d: f64,
}

impl LevelScheme {
    /// Validate the ordering E_b < E_c < E_a < E_d.
    pub fn new(e_a: f64, e_b: f64, e_c: f64, e_d: f64) -> Result<Self> {
        if !(e_b < e_c && e_c < e_a && e_a < e_d) {
            return Err(Error::LevelOrdering { e_a, e_b, e_c, e_d });
        }
        Ok(Self { e_a, e_b, e_c, e_d })
    }
}

/// Spontaneous-emission rates of the four decay channels, a.u.
///
/// `gamma_ab` is the rate of |a> → |b>, and so on; both upper states
/// decay into both lower states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates {
    pub gamma_ab: f64,
    pub gamma_ac: f64,
    pub gamma_db: f64,
    pub gamma_dc: f64,
}

impl DecayRates {
    /// Validate that all rates are non-negative.
    pub fn new(gamma_ab: f64, gamma_ac: f64, gamma_db: f64, gamma_dc: f64) -> Result<Self> {
        for (name, g) in [
            ("gamma_ab", gamma_ab),
            ("gamma_ac", gamma_ac),
            ("gamma_db", gamma_db),
            ("gamma_dc", gamma_dc),
        ] {
            if !(g >= 0.0) || !g.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: g,
                    constraint: ">= 0 and finite",
                });
            }
        }
        Ok(Self { gamma_ab, gamma_ac, gamma_db, gamma_dc })
    }

    /// Total width of the upper state |a>.
    pub fn total_a(&self) -> f64 {
        self.gamma_ab + self.gamma_ac
    }

    /// Total width of the upper state |d>.
    pub fn total_d(&self) -> f64 {
        self.gamma_db + self.gamma_dc
    }
}

/// Derive the four transition frequencies from a level scheme (ħ = 1):
/// ω₁ = E_a − E_b, ω₂ = E_a − E_c, ω₃ = E_d − E_b, ω₄ = E_d − E_c.
pub fn derive_frequencies(levels: &LevelScheme) -> Result<(f64, f64, f64, f64)> {
    // Re-check ordering so the function stands on its own.
    let levels = LevelScheme::new(levels.e_a, levels.e_b, levels.e_c, levels.e_d)?;
    Ok((
        levels.e_a - levels.e_b,
        levels.e_a - levels.e_c,
        levels.e_d - levels.e_b,
        levels.e_d - levels.e_c,
    ))
}

/// Invert the single-channel spontaneous-emission rate for the dipole
/// moment: Γ = (4/3) α³ ω³ d²  ⇒  d = sqrt(3Γ / (4 α³ ω³)), α = 1/c.
pub fn derive_dipole(gamma: f64, omega: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            constraint: "> 0 and finite",
        });
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            constraint: "> 0 and finite",
        });
    }
    let alpha = 1.0 / SPEED_OF_LIGHT;
    Ok((3.0 * gamma / (4.0 * alpha.powi(3) * omega.powi(3))).sqrt())
}

/// A fully derived description of the atomic medium.
///
/// Channel indexing follows the couplings: 1 = b↔a (signal), 2 = c↔a
/// (control), 3 = b↔d (signal), 4 = c↔d (control).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSpec {
    pub levels: LevelScheme,
    pub decays: DecayRates,
    /// Atom number density, a.u. (atoms per a₀³).
    pub density: f64,
    /// Sample length, a.u.
    pub length: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub omega4: f64,
}

impl MediumSpec {
    /// Build a medium from levels and decay rates, deriving frequencies
    /// and dipole moments. The dipole of each channel is computed from
    /// that channel's decay rate and transition frequency, so every rate
    /// must be strictly positive here; use [`MediumSpec::lossless`] to
    /// switch relaxation off afterwards without losing the couplings.
    pub fn new(
        levels: LevelScheme,
        decays: DecayRates,
        density: f64,
        length: f64,
    ) -> Result<Self> {
        Self::with_dipole_rates(levels, decays, decays, density, length)
    }

    /// Same as [`MediumSpec::new`], but the dipole moments are derived
    /// from `dipole_rates` while `decays` governs relaxation. This is
    /// what a lossless (Γ → 0) variant of a physical medium uses.
    pub fn with_dipole_rates(
        levels: LevelScheme,
        decays: DecayRates,
        dipole_rates: DecayRates,
        density: f64,
        length: f64,
    ) -> Result<Self> {
        if !(density > 0.0) || !density.is_finite() {
            return Err(Error::InvalidParameter {
                name: "density",
                value: density,
                constraint: "> 0 and finite",
            });
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidParameter {
                name: "length",
                value: length,
                constraint: "> 0 and finite",
            });
        }
        let (omega1, omega2, omega3, omega4) = derive_frequencies(&levels)?;
        Ok(Self {
            levels,
            decays,
            density,
            length,
            d1: derive_dipole(dipole_rates.gamma_ab, omega1)?,
            d2: derive_dipole(dipole_rates.gamma_ac, omega2)?,
            d3: derive_dipole(dipole_rates.gamma_db, omega3)?,
            d4: derive_dipole(dipole_rates.gamma_dc, omega4)?,
            omega1,
            omega2,
            omega3,
            omega4,
        })
    }

    /// The same medium with all relaxation rates set to zero but the
    /// dipole couplings kept.
    pub fn lossless(&self) -> Self {
        let mut m = *self;
        m.decays = DecayRates {
            gamma_ab: 0.0,
            gamma_ac: 0.0,
            gamma_db: 0.0,
            gamma_dc: 0.0,
        };
        m
    }
}

/// The canonical medium: energies (−0.10, −0.20, −0.18, −0.05) a.u.,
/// all four decay rates 2.4×10⁻⁹ a.u., density 3×10⁻¹³ a.u. (≈2×10¹²
/// cm⁻³), length 3×10⁷ a.u. (≈1.6 mm).
pub fn paper_medium() -> MediumSpec {
    let levels = LevelScheme::new(-0.10, -0.20, -0.18, -0.05)
        .expect("canonical level scheme is ordered");
    let gamma = 2.4e-9;
    let decays = DecayRates::new(gamma, gamma, gamma, gamma)
        .expect("canonical decay rates are non-negative");
    MediumSpec::new(levels, decays, 3e-13, 3e7)
        .expect("canonical medium parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frequencies_of_canonical_levels() {
        let levels = LevelScheme::new(-0.10, -0.20, -0.18, -0.05).unwrap();
        let (w1, w2, w3, w4) = derive_frequencies(&levels).unwrap();
        assert_relative_eq!(w1, 0.10, max_relative = 1e-14);
        assert_relative_eq!(w2, 0.08, max_relative = 1e-14);
        assert_relative_eq!(w3, 0.15, max_relative = 1e-14);
        assert_relative_eq!(w4, 0.13, max_relative = 1e-14);
    }

    #[test]
    fn degenerate_lower_levels_rejected() {
        assert!(LevelScheme::new(-0.10, -0.20, -0.20, -0.05).is_err());
        let bad = LevelScheme { e_a: -0.10, e_b: -0.20, e_c: -0.20, e_d: -0.05 };
        assert!(derive_frequencies(&bad).is_err());
    }

    #[test]
    fn frequencies_shift_invariant() {
        // Exactly representable energies (multiples of 2^-6) shifted by an
        // exactly representable amount: differences are then bitwise equal.
        let a = LevelScheme::new(-0.125, -0.25, -0.1875, -0.0625).unwrap();
        let b = LevelScheme::new(-0.0625, -0.1875, -0.125, 0.0).unwrap();
        assert_eq!(derive_frequencies(&a).unwrap(), derive_frequencies(&b).unwrap());

        // Decimal energies shift-invariant to rounding.
        let c = LevelScheme::new(-0.10, -0.20, -0.18, -0.05).unwrap();
        let d = LevelScheme::new(-0.05, -0.15, -0.13, 0.00).unwrap();
        let (c1, c2, c3, c4) = derive_frequencies(&c).unwrap();
        let (d1, d2, d3, d4) = derive_frequencies(&d).unwrap();
        for (x, y) in [(c1, d1), (c2, d2), (c3, d3), (c4, d4)] {
            assert_relative_eq!(x, y, max_relative = 1e-14);
        }
    }

    #[test]
    fn two_photon_consistency() {
        // omega1 - omega2 and omega3 - omega4 both equal E_c - E_b; the two
        // float evaluations agree to a couple of ulps of the level spacings.
        let schemes = [
            (-0.10, -0.20, -0.18, -0.05),
            (-0.3, -0.9, -0.7, -0.1),
            (-1e-3, -5e-3, -4.5e-3, -0.5e-3),
        ];
        for (ea, eb, ec, ed) in schemes {
            let s = LevelScheme::new(ea, eb, ec, ed).unwrap();
            let (w1, w2, w3, w4) = derive_frequencies(&s).unwrap();
            let raman = ec - eb;
            assert!(
                ((w1 - w2) - (w3 - w4)).abs() <= 4.0 * f64::EPSILON * raman.abs().max(ed.abs()),
                "scheme ({ea},{eb},{ec},{ed})"
            );
            assert_relative_eq!(w1 - w2, raman, max_relative = 1e-13);
            assert_relative_eq!(w3 - w4, raman, max_relative = 1e-13);
        }
    }

    #[test]
    fn dipole_matches_closed_form_and_si_route() {
        // Frozen from a 40-digit evaluation of d = sqrt(3G/(4 a^3 w^3)).
        let d = derive_dipole(2.4e-9, 0.10).unwrap();
        assert_relative_eq!(d, 2.1522279040703168, max_relative = 1e-12);

        // Independent route: convert Gamma to SI, apply the SI
        // spontaneous-emission formula, convert the dipole back to a.u.
        let e_charge = 1.602176634e-19;
        let hbar_si = 1.054571817e-34;
        let eps0_si = 8.8541878128e-12;
        let c_si = 299792458.0f64;
        let gamma_si = 2.4e-9 / ATOMIC_TIME_S;
        let omega_si = 0.10 / ATOMIC_TIME_S;
        let d_si = (3.0 * std::f64::consts::PI * eps0_si * hbar_si * c_si.powi(3) * gamma_si
            / omega_si.powi(3))
        .sqrt();
        let d_au = d_si / (e_charge * BOHR_RADIUS_M);
        assert_relative_eq!(d, d_au, max_relative = 1e-6);
    }

    #[test]
    fn dipole_rejects_boundaries() {
        assert!(derive_dipole(0.0, 0.1).is_err());
        assert!(derive_dipole(-1e-9, 0.1).is_err());
        assert!(derive_dipole(2.4e-9, 0.0).is_err());
        assert!(derive_dipole(f64::NAN, 0.1).is_err());
    }

    #[test]
    fn dipole_square_root_law() {
        let d = derive_dipole(2.4e-9, 0.10).unwrap();
        let d4 = derive_dipole(4.0 * 2.4e-9, 0.10).unwrap();
        assert_relative_eq!(d4, 2.0 * d, max_relative = 1e-13);
    }

    #[test]
    fn dipole_monotonicity() {
        let mut prev = derive_dipole(1e-10, 0.1).unwrap();
        for k in 1..20 {
            let d = derive_dipole(1e-10 * (1.0 + k as f64), 0.1).unwrap();
            assert!(d > prev);
            prev = d;
        }
        let mut prev = derive_dipole(2.4e-9, 0.01).unwrap();
        for k in 1..20 {
            let d = derive_dipole(2.4e-9, 0.01 * (1.0 + k as f64)).unwrap();
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn canonical_medium_values() {
        let m = paper_medium();
        assert_eq!(m.density, 3e-13);
        assert_eq!(m.length, 3e7);
        assert_eq!(m.decays.total_a(), 4.8e-9);
        // Composition: the stored dipoles are exactly derive_dipole at the
        // derived frequencies.
        assert_eq!(m.d1, derive_dipole(2.4e-9, m.omega1).unwrap());
        assert_eq!(m.d2, derive_dipole(2.4e-9, m.omega2).unwrap());
        assert_eq!(m.d3, derive_dipole(2.4e-9, m.omega3).unwrap());
        assert_eq!(m.d4, derive_dipole(2.4e-9, m.omega4).unwrap());
        assert_relative_eq!(m.d1, derive_dipole(2.4e-9, 0.10).unwrap(), max_relative = 1e-13);
        // Frozen 40-digit values.
        assert_relative_eq!(m.d2, 3.0078299353582030, max_relative = 1e-12);
        assert_relative_eq!(m.d3, 1.1715244833671064, max_relative = 1e-12);
        assert_relative_eq!(m.d4, 1.4520221097240238, max_relative = 1e-12);
    }

    #[test]
    fn lossless_keeps_dipoles() {
        let m = paper_medium();
        let l = m.lossless();
        assert_eq!(l.decays.total_a(), 0.0);
        assert_eq!(l.decays.total_d(), 0.0);
        assert_eq!(l.d1, m.d1);
        assert_eq!(l.d4, m.d4);
    }

    #[test]
    fn unit_round_trips_against_quoted_si_values() {
        // 3e7 a.u. of length is quoted as 1.6 mm (more precisely 1.587 mm).
        let mm = length_au_to_m(3e7) * 1e3;
        assert!((mm - 1.587).abs() / 1.587 < 0.01, "mm = {mm}");
        // 3e-13 a.u. of density is quoted as 2e12 cm^-3.
        let cm3 = density_au_to_per_cm3(3e-13);
        assert!((cm3 - 2.0e12).abs() / 2.0e12 < 0.02, "cm^-3 = {cm3}");
        // 1e11 a.u. of time is quoted as 2.4 us (more precisely 2.42 us).
        let us = time_au_to_s(1e11) * 1e6;
        assert!((us - 2.42).abs() / 2.42 < 0.01, "us = {us}");
    }

    #[test]
    fn constants_convention() {
        let c = Constants::atomic_units();
        assert_eq!(c.hbar, 1.0);
        assert!(c.c > 0.0 && c.eps0 > 0.0);
        assert_relative_eq!(c.eps0 * 4.0 * std::f64::consts::PI, 1.0, max_relative = 1e-15);
    }
}
