#include "udwsim/dispersion.hpp"

#include <cmath>
#include <stdexcept>

namespace udwsim::dispersion {

double RefractiveProfile::index(double omega, double z) const {
    const double n = base.index(omega);
    return modulation ? n * modulation(omega, z) : n;
}

double RefractiveProfile::group_index(double omega, double z) const {
    const double ng = base.group_index(omega);
    if (!modulation) return ng;
    // d(n m)/domega = n' m + n dm/domega, the modulation factor differenced
    const double h = 1e-6 * omega;
    const double dm = (modulation(omega + h, z) - modulation(omega - h, z)) / (2.0 * h);
    return ng * modulation(omega, z) + base.index(omega) * omega * dm;
}

double Chi2Profile::operator()(double z) const {
    switch (kind) {
        case Kind::uniform:
            return chi0;
        case Kind::poled: {
            double frac = z / period - std::floor(z / period);
            return (frac < duty) ? chi0 : -chi0;
        }
        case Kind::custom:
            return fn(z);
    }
    return chi0;
}

Chi2Profile Chi2Profile::uniform_profile(double chi0) {
    Chi2Profile p;
    p.kind = Kind::uniform;
    p.chi0 = chi0;
    return p;
}

Chi2Profile Chi2Profile::poled_profile(double chi0, double period, double duty) {
    if (!(period > 0.0)) throw std::domain_error("poling period must be positive");
    if (!(duty > 0.0 && duty <= 1.0)) throw std::domain_error("duty must lie in (0, 1]");
    Chi2Profile p;
    p.kind = Kind::poled;
    p.chi0 = chi0;
    p.period = period;
    p.duty = duty;
    return p;
}

Chi2Profile Chi2Profile::custom_profile(std::function<double(double)> fn) {
    Chi2Profile p;
    p.kind = Kind::custom;
    p.fn = std::move(fn);
    return p;
}

double refractive_index(const RefractiveProfile& p, double omega, double z) {
    return p.index(omega, z);
}

double wavevector(const RefractiveProfile& p, double omega, double z) {
    return omega * p.index(omega, z) / kSpeedOfLight;
}

double group_velocity(const RefractiveProfile& p, double omega, double z) {
    const double ng = p.group_index(omega, z);
    if (!(ng > 0.0))
        throw std::domain_error(p.base.name + ": nonpositive group index (anomalous region)");
    return kSpeedOfLight / ng;
}

double phase_mismatch(const RefractiveProfile& p1, const RefractiveProfile& p2,
                      const RefractiveProfile& p3, double omega1, double omega2,
                      double omega3, double z) {
    if (std::abs(omega1 + omega2 - omega3) > 1e-12 * std::abs(omega3))
        throw std::domain_error("phase_mismatch requires omega1 + omega2 = omega3");
    return wavevector(p3, omega3, z) - wavevector(p2, omega2, z) -
           wavevector(p1, omega1, z);
}

double rel_inv_group_velocity(const RefractiveProfile& p1,
                              const RefractiveProfile& p3, double omega1,
                              double omega3, double z) {
    return 1.0 / group_velocity(p3, omega3, z) - 1.0 / group_velocity(p1, omega1, z);
}

double accumulated_phase(const std::function<double(double)>& dk, double z_lo,
                         double z, const oscquad::QuadConfig& cfg) {
    oscquad::OscillatoryIntegrand f;
    f.amplitude = [&dk](double zeta) { return oscquad::Complex(dk(zeta), 0.0); };
    f.phase = [](double) { return 0.0; };
    f.z_lo = std::min(z_lo, z);
    f.z_hi = std::max(z_lo, z);
    const double sign = (z >= z_lo) ? 1.0 : -1.0;
    return sign * oscquad::integrate(f, cfg).value.real();
}

double ExponentialGradient::dvg_inv(double z) const {
    return std::exp(-a * z / v) / v;
}

double ExponentialGradient::qtilde(double z) const {
    if (a == 0.0) return z / v;
    return -std::expm1(-a * z / v) / a;
}

ExponentialGradient make_exponential_gradient(double a, double v) {
    if (!(v > 0.0)) throw std::domain_error("scaling velocity must be positive");
    ExponentialGradient g;
    g.a = a;
    g.v = v;
    g.decelerating = (a <= 0.0);
    return g;
}

OperatingPoint ktp_operating_point(double omega2, double omega3) {
    if (!(omega2 > 0.0) || !(omega3 > omega2))
        throw std::domain_error("need 0 < omega2 < omega3");
    const auto& table = ktp_table();
    const SellmeierModel& ny = table.at("ktp_ny");
    const SellmeierModel& nz = table.at("ktp_nz");

    OperatingPoint op;
    op.omega2 = omega2;
    op.omega3 = omega3;
    op.omega1 = omega3 - omega2;
    op.n1 = ny.index(op.omega1);
    op.n2 = ny.index(op.omega2);
    op.n3 = nz.index(op.omega3);
    const double k1 = op.omega1 * op.n1 / kSpeedOfLight;
    const double k2 = op.omega2 * op.n2 / kSpeedOfLight;
    const double k3 = op.omega3 * op.n3 / kSpeedOfLight;
    op.dk0_mean = k3 - k2 - k1;
    op.dvg_inv_mean =
        1.0 / nz.group_velocity(op.omega3) - 1.0 / ny.group_velocity(op.omega1);
    if (!(op.dvg_inv_mean > 0.0))
        throw std::domain_error("nonpositive relative inverse group velocity at this operating point");
    op.v = 1.0 / op.dvg_inv_mean;
    op.omega_tilde = op.dk0_mean - op.dvg_inv_mean * (omega3 - omega2);
    op.omega_gap = op.omega_tilde * op.v;
    return op;
}

}  // namespace udwsim::dispersion
