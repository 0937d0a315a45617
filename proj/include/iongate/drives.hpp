#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "iongate/constants.hpp"

namespace iongate::drives {

// Composite Simpson rule; panels is rounded up to the next even count.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 4096) {
  if (b <= a) return 0.0;
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int k = 1; k < panels; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

enum class EnvelopeKind { sin2_full, sin2_ramp_hold, constant };

inline std::string to_string(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::sin2_full: return "sin2_full";
    case EnvelopeKind::sin2_ramp_hold: return "sin2_ramp_hold";
    case EnvelopeKind::constant: return "constant";
  }
  return "?";
}

// Gradient envelope gamma(t): 0 -> 1 -> 0 with vanishing endpoint derivatives
// for the smooth kinds. sin2_full ramps over the whole gate (tau = t_g/2);
// sin2_ramp_hold ramps over tau at each end with a unit plateau between.
struct EnvelopeSpec {
  EnvelopeKind kind = EnvelopeKind::sin2_full;
  double tau = 0.0;  // ramp duration, s
  double t_g = 0.0;  // total gate duration, s

  void validate() const {
    if (t_g <= 0.0) throw std::invalid_argument("EnvelopeSpec: t_g must be > 0");
    if (kind == EnvelopeKind::constant) return;
    if (!(tau > 0.0 && tau <= t_g / 2 + 1e-15 * t_g))
      throw std::invalid_argument("EnvelopeSpec: need 0 < tau <= t_g/2");
    if (kind == EnvelopeKind::sin2_full && std::abs(tau - t_g / 2) > 1e-12 * t_g)
      throw std::invalid_argument("EnvelopeSpec: sin2_full requires tau = t_g/2");
  }

  static EnvelopeSpec full(double t_g) { return {EnvelopeKind::sin2_full, t_g / 2, t_g}; }
  static EnvelopeSpec ramp_hold(double tau, double t_g) { return {EnvelopeKind::sin2_ramp_hold, tau, t_g}; }
  static EnvelopeSpec square(double t_g) { return {EnvelopeKind::constant, t_g / 2, t_g}; }

  EnvelopeSpec with_gate_time(double new_t_g) const {
    EnvelopeSpec s = *this;
    s.t_g = new_t_g;
    if (kind == EnvelopeKind::sin2_full) s.tau = new_t_g / 2;
    return s;
  }
};

inline double gamma(const EnvelopeSpec& spec, double t) {
  const double tg = spec.t_g;
  if (t < -1e-12 * tg || t > tg * (1.0 + 1e-12))
    throw std::out_of_range("gamma: t outside [0, t_g]");
  switch (spec.kind) {
    case EnvelopeKind::constant:
      return 1.0;
    case EnvelopeKind::sin2_full: {
      const double s = std::sin(pi * t / tg);
      return s * s;
    }
    case EnvelopeKind::sin2_ramp_hold: {
      const double tau = spec.tau;
      if (t < tau) {
        const double s = std::sin(pi * t / (2 * tau));
        return s * s;
      }
      if (t > tg - tau) {
        const double s = std::sin(pi * (tg - t) / (2 * tau));
        return s * s;
      }
      return 1.0;
    }
  }
  return 0.0;
}

// (1/t_g) Int_0^{t_g} gamma^2 dt. Windows are integrated separately so the
// plateau is exact and Simpson only sees smooth integrands.
inline double gamma_mean_square(const EnvelopeSpec& spec) {
  spec.validate();
  if (spec.kind == EnvelopeKind::constant) return 1.0;
  auto g2 = [&spec](double t) {
    const double g = gamma(spec, t);
    return g * g;
  };
  if (spec.kind == EnvelopeKind::sin2_full) return simpson(g2, 0.0, spec.t_g, 8192) / spec.t_g;
  const double ramp_up = simpson(g2, 0.0, spec.tau, 4096);
  const double ramp_down = simpson(g2, spec.t_g - spec.tau, spec.t_g, 4096);
  const double plateau = spec.t_g - 2 * spec.tau;
  return (ramp_up + plateau + ramp_down) / spec.t_g;
}

enum class ShelvingKind { rabi, arp };

inline std::string to_string(ShelvingKind k) { return k == ShelvingKind::rabi ? "rabi" : "arp"; }

// Shelving schedule between the clock and Zeeman states: either a smooth
// pi-area Rabi pulse per window or an adiabatic-rapid-passage chirp with
// maximum dressed splitting delta0.
struct ShelvingSchedule {
  ShelvingKind kind = ShelvingKind::rabi;
  double tau = 0.0;     // shelving window, s
  double t_g = 0.0;     // total gate duration, s
  double delta0 = 0.0;  // rad/s, arp only

  void validate() const {
    if (tau <= 0.0) throw std::invalid_argument("ShelvingSchedule: tau must be > 0");
    if (t_g > 0.0 && t_g < 2 * tau) throw std::invalid_argument("ShelvingSchedule: t_g must be >= 2 tau");
    if (kind == ShelvingKind::arp && delta0 <= 0.0)
      throw std::invalid_argument("ShelvingSchedule: arp requires delta0 > 0");
  }

  ShelvingSchedule with_gate_time(double new_t_g) const {
    ShelvingSchedule s = *this;
    s.t_g = new_t_g;
    return s;
  }
};

// Window-local time for the two shelving windows: t' = t on the ramp-up,
// t' = tau on the plateau, t' = t + 2 tau - t_g on the ramp-down (so the
// second window maps onto [tau, 2 tau]).
inline double window_time(const ShelvingSchedule& s, double t) {
  if (t < s.tau) return t;
  if (t <= s.t_g - s.tau) return s.tau;
  return t + 2 * s.tau - s.t_g;
}

// Rabi frequency: +2*pi*sin^2(pi t/tau)/tau during ramp-up, the sign-reversed
// mirror during ramp-down, zero on the plateau. Each window has pulse area pi.
inline double rabi_schedule(const ShelvingSchedule& s, double t) {
  if (s.kind != ShelvingKind::rabi) throw std::invalid_argument("rabi_schedule: schedule kind is not rabi");
  if (t < s.tau) {
    const double x = std::sin(pi * t / s.tau);
    return two_pi * x * x / s.tau;
  }
  if (t > s.t_g - s.tau) {
    const double u = t - (s.t_g - s.tau);
    const double x = std::sin(pi * u / s.tau);
    return -two_pi * x * x / s.tau;
  }
  return 0.0;
}

// phi(t) = (1/2) Int_0^t Omega_R dt', in closed form for the sin^2 pulse.
inline double shelving_angle(const ShelvingSchedule& s, double t) {
  if (s.kind != ShelvingKind::rabi) throw std::invalid_argument("shelving_angle: schedule kind is not rabi");
  auto ramp_phi = [&s](double u) {  // window-local integral of the sin^2 pulse
    return pi * u / (2 * s.tau) - std::sin(two_pi * u / s.tau) / 4.0;
  };
  if (t <= 0.0) return 0.0;
  if (t < s.tau) return ramp_phi(t);
  if (t <= s.t_g - s.tau) return pi / 2;
  const double u = std::min(t - (s.t_g - s.tau), s.tau);
  return pi / 2 - ramp_phi(u);
}

struct ArpSample {
  double detuning;         // Delta(t), rad/s
  double omega_y;          // Omega_y(t), rad/s
  double dressed_split;    // Delta_d(t) = sqrt(Delta^2 + Omega_y^2)
  double mixing_angle;     // phi(t) = atan2(Omega_y, Delta)/2, continuous branch
};

// ARP chirp: Delta = delta0 cos(pi t'/tau), Omega_y = delta0 sin^2(pi t'/tau).
// Omega_y >= 0 throughout, so atan2 stays in the upper half plane and phi
// sweeps 0 -> pi/2 continuously across a window (through pi/4 at mid-window,
// where the naive arctan branch would jump).
inline ArpSample arp_schedules(const ShelvingSchedule& s, double t) {
  if (s.kind != ShelvingKind::arp) throw std::invalid_argument("arp_schedules: schedule kind is not arp");
  const double tp = window_time(s, t);
  const double x = pi * tp / s.tau;
  const double c = std::cos(x);
  const double sn = std::sin(x);
  const double delta = s.delta0 * c;
  const double omega_y = s.delta0 * sn * sn;
  const double dd = std::sqrt(delta * delta + omega_y * omega_y);
  // Omega_y >= 0 keeps (Delta, Omega_y) in the closed upper half plane, so
  // atan2 runs 0 -> pi across the ramp-up window (phi: 0 -> pi/2) and back
  // pi -> 0 across the ramp-down window, with no branch jump at Delta = 0.
  const double phi = 0.5 * std::atan2(omega_y, delta);
  return {delta, omega_y, dd, phi};
}

// Effective spin-motion coupling weight sin^2(phi(t)) for either shelving
// kind; its square integrates to the ramp contribution of the entangling
// phase.
inline double shelving_weight(const ShelvingSchedule& s, double t) {
  const double phi = (s.kind == ShelvingKind::rabi) ? shelving_angle(s, t) : arp_schedules(s, t).mixing_angle;
  const double w = std::sin(phi);
  return w * w;
}

// Int_0^tau sin^4(phi(t)) dt over one ramp window.
inline double shelving_ramp_phase_integral(const ShelvingSchedule& s) {
  auto f = [&s](double t) {
    const double w = shelving_weight(s, t);
    return w * w;
  };
  return simpson(f, 0.0, s.tau, 4096);
}

}  // namespace iongate::drives
