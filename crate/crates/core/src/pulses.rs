//! Probe envelope and control-field switching schedules.
//!
//! The probe is the sine-square arch
//! ε₁(0,t) = ε₁₀ sin²[π(t−t₂)/(t₂−t₁)] Θ(t−t₁) Θ(t₂−t),
//! and each control channel is a plateau level gated by hyperbolic-tangent
//! switch events. A single event is the gate ½(1 ± tanh[(t−t_s)/τ]);
//! sequences compose multiplicatively, with an "off" event gating the
//! value and an "on" event gating the remaining deficit:
//!
//! ```text
//! off:  v ← v · ½(1 − tanh[(t−t_s)/τ])
//! on:   v ← 1 − (1 − v) · ½(1 − tanh[(t−t_s)/τ])
//! ```
//!
//! starting from v = 1 when the channel begins on (first event "off" or
//! no events) and v = 0 otherwise. Each gate maps [0, 1] into itself, so
//! the amplitude level·v stays inside [0, level] for any event sequence,
//! is C∞ in t, and agrees with a piecewise sum-of-steps description to
//! O(e^(−2Δ/τ)) once events are separated by Δ ≫ τ. A gated product of
//! bare ½(1 ± tanh) factors cannot re-rise after an off→on pair; this
//! composition is the multiplicative form that can.

use crate::error::{Error, Result};

/// Default ramp timescale of a switch event, a.u. (a twentieth of the
/// canonical pulse length). Overridable per event.
pub const DEFAULT_RAMP_TAU: f64 = 5e9;

/// Sine-square probe pulse on the window [t1, t2] with peak amplitude
/// `eps10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSpec {
    pub eps10: f64,
    pub t1: f64,
    pub t2: f64,
}

impl ProbeSpec {
    pub fn new(eps10: f64, t1: f64, t2: f64) -> Result<Self> {
        if !(eps10 >= 0.0) || !eps10.is_finite() {
            return Err(Error::InvalidParameter {
                name: "probe.eps10",
                value: eps10,
                constraint: ">= 0 and finite",
            });
        }
        if !(t2 > t1) {
            return Err(Error::InvalidParameter {
                name: "probe.t2",
                value: t2,
                constraint: "> probe.t1",
            });
        }
        Ok(Self { eps10, t1, t2 })
    }

    /// Pulse duration t2 − t1.
    pub fn length(&self) -> f64 {
        self.t2 - self.t1
    }
}

/// Direction of a tanh switch event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchDirection {
    On,
    Off,
}

/// A single tanh ramp centered at `t_switch` with timescale `ramp_tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchEvent {
    pub t_switch: f64,
    pub direction: SwitchDirection,
    pub ramp_tau: f64,
}

impl SwitchEvent {
    pub fn new(t_switch: f64, direction: SwitchDirection, ramp_tau: f64) -> Result<Self> {
        if !(ramp_tau > 0.0) || !ramp_tau.is_finite() {
            return Err(Error::InvalidParameter {
                name: "ramp_tau",
                value: ramp_tau,
                constraint: "> 0 and finite",
            });
        }
        Ok(Self { t_switch, direction, ramp_tau })
    }

    /// The falling gate ½(1 − tanh[(t−t_s)/τ]) of this event.
    fn falling_gate(&self, t: f64) -> f64 {
        0.5 * (1.0 - ((t - self.t_switch) / self.ramp_tau).tanh())
    }
}

/// One control channel: a plateau `level` and its ordered switch events.
///
/// A channel with no events sits at `level` for all times; a channel whose
/// first event is `On` starts near zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule {
    pub level: f64,
    pub events: Vec<SwitchEvent>,
}

impl ControlSchedule {
    /// Validate that events are strictly time-ordered and alternate in
    /// direction.
    pub fn new(level: f64, events: Vec<SwitchEvent>) -> Result<Self> {
        if !(level >= 0.0) || !level.is_finite() {
            return Err(Error::InvalidParameter {
                name: "control.level",
                value: level,
                constraint: ">= 0 and finite",
            });
        }
        for pair in events.windows(2) {
            if !(pair[1].t_switch > pair[0].t_switch)
                || pair[1].direction == pair[0].direction
            {
                return Err(Error::BadEventSequence(pair[1].t_switch));
            }
        }
        Ok(Self { level, events })
    }

    /// A channel that stays at `level` forever.
    pub fn constant(level: f64) -> Self {
        Self { level, events: Vec::new() }
    }

    /// Evaluate the channel amplitude at window time `t`.
    pub fn value(&self, t: f64) -> f64 {
        let mut v = match self.events.first().map(|e| e.direction) {
            None | Some(SwitchDirection::Off) => 1.0,
            Some(SwitchDirection::On) => 0.0,
        };
        for ev in &self.events {
            match ev.direction {
                SwitchDirection::Off => v *= ev.falling_gate(t),
                SwitchDirection::On => v = 1.0 - (1.0 - v) * ev.falling_gate(t),
            }
        }
        self.level * v
    }

    /// Centers of all events with the given direction.
    pub fn event_centers(&self, direction: SwitchDirection) -> Vec<f64> {
        self.events
            .iter()
            .filter(|e| e.direction == direction)
            .map(|e| e.t_switch)
            .collect()
    }

    /// The latest event center, if any.
    pub fn last_event(&self) -> Option<f64> {
        self.events.last().map(|e| e.t_switch)
    }
}

/// Sine-square probe boundary value at window time `t`.
pub fn probe_envelope(spec: &ProbeSpec, t: f64) -> f64 {
    if t < spec.t1 || t > spec.t2 {
        return 0.0;
    }
    let s = (std::f64::consts::PI * (t - spec.t2) / (spec.t2 - spec.t1)).sin();
    spec.eps10 * s * s
}

/// Control channel amplitude at window time `t` (product of tanh gates).
pub fn control_value(channel: &ControlSchedule, t: f64) -> f64 {
    channel.value(t)
}

/// Full drive description for one scenario: probe on channel 1 and the
/// two spatially uniform control channels.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSchedule {
    pub probe: ProbeSpec,
    pub control2: ControlSchedule,
    pub control4: ControlSchedule,
}

impl PulseSchedule {
    /// The latest scheduled instant (event center or probe end).
    pub fn last_scheduled(&self) -> f64 {
        let mut last = self.probe.t2;
        if let Some(t) = self.control2.last_event() {
            last = last.max(t);
        }
        if let Some(t) = self.control4.last_event() {
            last = last.max(t);
        }
        last
    }
}

/// Boundary and drive sampler used by the co-simulation step. The
/// simulator is generic over this so tests can substitute synthetic
/// drives (truncated probes, constant fields).
pub trait Drive {
    /// Probe boundary value ε₁(z=0, t).
    fn probe(&self, t: f64) -> f64;
    /// Control field ε₂(t).
    fn control2(&self, t: f64) -> f64;
    /// Control field ε₄(t).
    fn control4(&self, t: f64) -> f64;
}

impl Drive for PulseSchedule {
    fn probe(&self, t: f64) -> f64 {
        probe_envelope(&self.probe, t)
    }

    fn control2(&self, t: f64) -> f64 {
        self.control2.value(t)
    }

    fn control4(&self, t: f64) -> f64 {
        self.control4.value(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn probe() -> ProbeSpec {
        ProbeSpec::new(1e-10, 0.0, 1e11).unwrap()
    }

    #[test]
    fn probe_window_edges_vanish() {
        let p = probe();
        // sin(-pi) evaluates to ~1.2e-16, so the squared edge value is
        // ~1e-32 of the amplitude rather than a hard zero.
        assert!(probe_envelope(&p, p.t1) < 1e-40);
        assert_eq!(probe_envelope(&p, p.t2), 0.0);
        assert_eq!(probe_envelope(&p, -1.0), 0.0);
        assert_eq!(probe_envelope(&p, 2e11), 0.0);
    }

    #[test]
    fn probe_midpoint_is_peak() {
        let p = probe();
        assert_relative_eq!(
            probe_envelope(&p, 0.5 * (p.t1 + p.t2)),
            1e-10,
            max_relative = 1e-12
        );
    }

    #[test]
    fn probe_quarter_point() {
        let p = probe();
        let t = p.t1 + 0.25 * (p.t2 - p.t1);
        assert_relative_eq!(probe_envelope(&p, t), 5e-11, max_relative = 1e-12);
    }

    #[test]
    fn probe_integral_analytic() {
        // Integral of eps10 sin^2 over [t1, t2] is eps10 (t2-t1)/2;
        // check with composite Simpson quadrature.
        let p = probe();
        let n = 20_000;
        let h = (p.t2 - p.t1) / n as f64;
        let mut acc = probe_envelope(&p, p.t1) + probe_envelope(&p, p.t2);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * probe_envelope(&p, p.t1 + k as f64 * h);
        }
        let integral = acc * h / 3.0;
        assert_relative_eq!(integral, 1e-10 * 1e11 / 2.0, max_relative = 1e-10);
    }

    #[test]
    fn probe_rejects_bad_window() {
        assert!(ProbeSpec::new(1e-10, 1.0, 1.0).is_err());
        assert!(ProbeSpec::new(1e-10, 2.0, 1.0).is_err());
        assert!(ProbeSpec::new(-1e-10, 0.0, 1.0).is_err());
    }

    #[test]
    fn single_off_event_plateaus() {
        let c = ControlSchedule::new(
            1.2e-9,
            vec![SwitchEvent::new(1e11, SwitchDirection::Off, 5e9).unwrap()],
        )
        .unwrap();
        let far_before = c.value(1e11 - 10.0 * 5e9);
        assert_relative_eq!(
            far_before,
            1.2e-9 * 0.5 * (1.0 + (10.0f64).tanh()),
            max_relative = 1e-15
        );
        assert!((far_before - 1.2e-9).abs() < 1e-8 * 1.2e-9);
    }

    #[test]
    fn single_off_event_midpoint_is_half() {
        let c = ControlSchedule::new(
            1.0,
            vec![SwitchEvent::new(2e10, SwitchDirection::Off, 1e9).unwrap()],
        )
        .unwrap();
        assert_relative_eq!(c.value(2e10), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn off_then_on_gap_is_dark() {
        let tau = 5e9;
        let c = ControlSchedule::new(
            1.0,
            vec![
                SwitchEvent::new(1e11, SwitchDirection::Off, tau).unwrap(),
                SwitchEvent::new(2.4e11, SwitchDirection::On, tau).unwrap(),
            ],
        )
        .unwrap();
        // Mid-gap leakage is O(e^(-2*14)) of the level per gate.
        let mid = c.value(1.7e11);
        assert!(mid < 2e-12, "mid = {mid:e}");

        // Well-separated events agree with a piecewise (sum-of-steps)
        // description to < 1e-6 of the level.
        let piecewise = |t: f64| -> f64 {
            if t < 1.7e11 {
                0.5 * (1.0 - ((t - 1e11) / tau).tanh())
            } else {
                0.5 * (1.0 + ((t - 2.4e11) / tau).tanh())
            }
        };
        for k in 0..400 {
            let t = k as f64 * 1e9;
            assert!(
                (c.value(t) - piecewise(t)).abs() < 1e-6,
                "t={t:e}: {} vs {}",
                c.value(t),
                piecewise(t)
            );
        }
    }

    #[test]
    fn events_must_alternate_and_be_ordered() {
        let e1 = SwitchEvent::new(1e10, SwitchDirection::Off, 1e9).unwrap();
        let e2 = SwitchEvent::new(2e10, SwitchDirection::Off, 1e9).unwrap();
        assert!(ControlSchedule::new(1.0, vec![e1, e2]).is_err());
        let e3 = SwitchEvent::new(5e9, SwitchDirection::On, 1e9).unwrap();
        assert!(ControlSchedule::new(1.0, vec![e1, e3]).is_err());
        assert!(SwitchEvent::new(1e10, SwitchDirection::On, 0.0).is_err());
    }

    #[test]
    fn control_monotone_across_isolated_event() {
        let c = ControlSchedule::new(
            2.0,
            vec![SwitchEvent::new(5e10, SwitchDirection::On, 2e9).unwrap()],
        )
        .unwrap();
        let mut prev = c.value(0.0);
        for k in 1..1000 {
            let v = c.value(k as f64 * 1e8);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn schedule_time_shift_is_exact() {
        // All times on an exactly representable 1e9 grid so the shifted
        // arguments are bitwise identical.
        let tau = 4e9;
        let shift = 7e9;
        let mk = |delta: f64| -> PulseSchedule {
            PulseSchedule {
                probe: ProbeSpec::new(1e-10, delta, 1e11 + delta).unwrap(),
                control2: ControlSchedule::new(
                    1.2e-9,
                    vec![
                        SwitchEvent::new(1e11 + delta, SwitchDirection::Off, tau).unwrap(),
                        SwitchEvent::new(2.4e11 + delta, SwitchDirection::On, tau).unwrap(),
                    ],
                )
                .unwrap(),
                control4: ControlSchedule::constant(0.0),
            }
        };
        let base = mk(0.0);
        let shifted = mk(shift);
        for k in 0..350 {
            let t = k as f64 * 1e9;
            assert_eq!(base.probe(t), shifted.probe(t + shift));
            assert_eq!(base.control2(t), shifted.control2(t + shift));
        }
    }

    proptest! {
        #[test]
        fn control_value_stays_in_range(
            level in 0.0f64..10.0,
            t in -1e12f64..1e12,
            t0 in -1e11f64..1e11,
            gap in 1e9f64..1e11,
            tau1 in 1e8f64..1e10,
            tau2 in 1e8f64..1e10,
        ) {
            let c = ControlSchedule::new(level, vec![
                SwitchEvent::new(t0, SwitchDirection::Off, tau1).unwrap(),
                SwitchEvent::new(t0 + gap, SwitchDirection::On, tau2).unwrap(),
            ]).unwrap();
            let v = c.value(t);
            prop_assert!(v >= 0.0 && v <= level);
        }

        #[test]
        fn probe_nonnegative_and_bounded(
            t in -2e11f64..4e11,
            eps in 0.0f64..1e-9,
        ) {
            let p = ProbeSpec::new(eps, 0.0, 1e11).unwrap();
            let v = probe_envelope(&p, t);
            prop_assert!(v >= 0.0 && v <= eps);
        }
    }
}
