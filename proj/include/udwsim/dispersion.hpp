#pragma once

#include <functional>
#include <optional>

#include "udwsim/oscquad.hpp"
#include "udwsim/sellmeier.hpp"

namespace udwsim::dispersion {

// n_j(omega; z) = base(omega) * modulation(omega, z); identity by default.
struct RefractiveProfile {
    SellmeierModel base;
    std::function<double(double, double)> modulation;  // (omega, z) -> factor

    double index(double omega, double z) const;
    double group_index(double omega, double z) const;
};

// Joint parametrization of the phase-mismatch and inverse-group-velocity
// deviations: dk0(z) = dk0_mean + eps(z) and
// dvg_inv(z) = v_inv - eps(z) / pump_filter_diff, so the two eps terms
// cancel in the effective gap.
struct EpsilonProfile {
    std::function<double(double)> eps;          // 1/m
    std::function<double(double)> eps_integral; // optional antiderivative, from 0
    double dk0_mean = 0.0;                      // 1/m
    double v_inv = 0.0;                         // s/m
    double pump_filter_diff = 0.0;              // rad/s, Omega3 - Omega2

    double dk0(double z) const { return dk0_mean + eps(z); }
    double dvg_inv(double z) const { return v_inv - eps(z) / pump_filter_diff; }
};

struct Chi2Profile {
    enum class Kind { uniform, poled, custom };
    Kind kind = Kind::uniform;
    double chi0 = 1.0;
    double period = 0.0;   // m, poled
    double duty = 0.5;     // poled; +chi0 over the duty fraction of a period
    std::function<double(double)> fn;  // custom

    double operator()(double z) const;

    static Chi2Profile uniform_profile(double chi0);
    static Chi2Profile poled_profile(double chi0, double period, double duty = 0.5);
    static Chi2Profile custom_profile(std::function<double(double)> fn);
};

double refractive_index(const RefractiveProfile& p, double omega, double z);
double wavevector(const RefractiveProfile& p, double omega, double z);   // 1/m
double group_velocity(const RefractiveProfile& p, double omega, double z);  // m/s

// dk0(z) = k3(O3; z) - k2(O2; z) - k1(O1; z); requires O1 + O2 = O3.
double phase_mismatch(const RefractiveProfile& p1, const RefractiveProfile& p2,
                      const RefractiveProfile& p3, double omega1, double omega2,
                      double omega3, double z);

// 1/dvg = 1/vg3 - 1/vg1.
double rel_inv_group_velocity(const RefractiveProfile& p1,
                              const RefractiveProfile& p3, double omega1,
                              double omega3, double z);

// int_{z_lo}^{z} dk(zeta) dzeta via the quadrature module.
double accumulated_phase(const std::function<double(double)>& dk, double z_lo,
                         double z, const oscquad::QuadConfig& cfg = {});

// dvg_inv(z) = e^{-a z / v} / v with its antiderivative q(z) anchored at 0:
// q(z) = (1 - e^{-a z / v}) / a (-> z / v as a -> 0).
struct ExponentialGradient {
    double a = 0.0;  // 1/s
    double v = 0.0;  // m/s
    bool decelerating = false;  // flagged when a <= 0

    double dvg_inv(double z) const;
    double qtilde(double z) const;
};

ExponentialGradient make_exponential_gradient(double a, double v);

// Everything the waveguide-side evaluation needs from the pinned KTP data at
// a chosen pump / filter pair (type-I z -> y + y: pump on n_z, downconverted
// modes on n_y).
struct OperatingPoint {
    double omega1, omega2, omega3;   // rad/s
    double n1, n2, n3;
    double dk0_mean;                 // 1/m
    double dvg_inv_mean;             // s/m
    double v;                        // m/s, 1/dvg_inv_mean
    double omega_tilde;              // 1/m, dk0_mean - dvg_inv_mean (O3 - O2)
    double omega_gap;                // rad/s, omega_tilde * v
};

OperatingPoint ktp_operating_point(double omega2, double omega3);

}  // namespace udwsim::dispersion
