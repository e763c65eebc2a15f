#pragma once

#include <complex>
#include <functional>

#include "udwsim/dispersion.hpp"
#include "udwsim/oscquad.hpp"
#include "udwsim/udw.hpp"

namespace udwsim::spdc {

using Complex = std::complex<double>;
using udw::AmplitudeResult;

inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kDefaultMaxLength = 100e-6;              // m

struct PumpPulse {
    double omega3 = 0.0;   // center, rad/s
    double tau_p = 0.0;    // duration, s (pulse tau renamed; proper time is taken)
    double energy = 0.0;   // U0, joules
    bool quasi_mono = true;

    static PumpPulse make(double omega3, double tau_p, double energy,
                          bool quasi_mono = true);
};

// alpha(omega) = (tau_p / sqrt(pi)) e^{-tau_p^2 (omega - Omega3)^2}, seconds.
double pump_amplitude(const PumpPulse& pump, double omega);

struct WaveguideSpec {
    double z_i = 0.0, z_f = 0.0;  // m
    double area = 0.0;            // m^2
    dispersion::Chi2Profile chi2;
    dispersion::RefractiveProfile n1, n2, n3;

    double length() const { return z_f - z_i; }
};

// kappa = 4 pi sqrt( sqrt(2) U0 pi O1 O2 / (sqrt(pi) (4 pi)^3 eps0 A c^3 tau_p) ).
// SI units: the radicand is J * s^-2 / ((C^2 J^-1 m^-1) m^2 (m^3 s^-3) s)
// = J^2 C^-2 m^-4, so kappa is J/(C m^2) = V/m^2. kappa * chi2 [m/V] is 1/m,
// which makes |A'_S/(kappa eta L)| dimensionless; A_S itself carries the
// seconds of the two continuum-normalized single-photon kets.
double coupling_kappa(const PumpPulse& pump, const WaveguideSpec& wg,
                      double omega1, double omega2);

struct SpdcScenario {
    PumpPulse pump;
    double omega2 = 0.0;
    WaveguideSpec wg;
    // z-profiles in SI units; qtilde is anchored at z_i (qtilde(z_i) = 0)
    std::function<double(double)> dk0;      // 1/m
    std::function<double(double)> dvg_inv;  // s/m
    std::function<double(double)> qtilde;   // s
    bool constant_gap = false;              // true for epsilon-profile scenarios
    double gap_value = 0.0;                 // omega_tilde when constant

    double omega1() const { return pump.omega3 - omega2; }

    static SpdcScenario from_epsilon(PumpPulse pump, double omega2,
                                     WaveguideSpec wg,
                                     dispersion::EpsilonProfile eps);
    static SpdcScenario from_exponential(PumpPulse pump, double omega2,
                                         WaveguideSpec wg, double dk0_mean,
                                         double a, double v);
};

// Omega_tilde(z) = dk0(z) - dvg_inv(z) (Omega3 - Omega2).
double effective_gap_profile(const SpdcScenario& scn, double z);

// eta_tilde(z) = chi2(z) / sqrt(n1 n2 n3).
double eta_tilde(const SpdcScenario& scn, double z);

// A_S = i kappa alpha(Omega2 + omega) int dz eta(z) e^{i Omega_tilde(z) z}
//       e^{i omega qtilde(z)}.
AmplitudeResult spdc_amplitude(const SpdcScenario& scn, double omega,
                               const oscquad::QuadConfig& quad = {});

struct NormalizedAmplitude {
    Complex integral{0.0, 0.0};  // int dz e^{i phase}, phase with qtilde(z_i)=0
    double norm_mod = 0.0;       // |integral| / L
    double norm_prob = 0.0;      // (|integral| / L)^2
    double abs_error = 0.0;      // on norm_mod
    long panels = 0;
    double total_phase = 0.0;
    bool sinc_branch = false;    // a -> 0 analytic branch taken
};

// A'_S / (i kappa eta): the uniformly-accelerating-analogue integral with
// constant eta, phase Omega_tilde z + dOmega qtilde(z),
// qtilde(z) = (e^{-a z_i / v} - e^{-a z / v}) / a. Lengths beyond max_length
// are rejected; the quadrature phase budget produces a BudgetError naming
// the panel count when it binds.
NormalizedAmplitude uniform_accel_amplitude(double omega_tilde, double dOmega,
                                            double a, double v, double z_i,
                                            double z_f,
                                            const oscquad::QuadConfig& quad = {},
                                            double max_length = kDefaultMaxLength);

// Normalized amplitude modulus |int_0^L s(z) e^{i dk0 z} dz| / L of the
// +-1 square-wave poling with the given period and duty, integrated segment
// by segment in closed form. Tends to 2/pi at duty 1/2 when dk0 = 2 pi / period
// and L spans many periods (the probability normalization is its square).
double poled_reference(double dk0_mean, double period, double duty, double L);

}  // namespace udwsim::spdc
