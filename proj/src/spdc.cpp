#include "udwsim/spdc.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace udwsim::spdc {

namespace {

Complex cis(double phase) { return Complex(std::cos(phase), std::sin(phase)); }

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace

PumpPulse PumpPulse::make(double omega3, double tau_p, double energy,
                          bool quasi_mono) {
    if (!(omega3 > 0.0)) throw std::domain_error("pump center frequency must be positive");
    if (!(tau_p > 0.0)) throw std::domain_error("pump duration must be positive");
    if (!(energy > 0.0)) throw std::domain_error("pump energy must be positive");
    return PumpPulse{omega3, tau_p, energy, quasi_mono};
}

double pump_amplitude(const PumpPulse& pump, double omega) {
    const double d = pump.tau_p * (omega - pump.omega3);
    return pump.tau_p / std::sqrt(M_PI) * std::exp(-d * d);
}

double coupling_kappa(const PumpPulse& pump, const WaveguideSpec& wg,
                      double omega1, double omega2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0))
        throw std::domain_error("coupling_kappa requires positive mode frequencies");
    if (!(wg.area > 0.0)) throw std::domain_error("waveguide area must be positive");
    const double c = dispersion::kSpeedOfLight;
    const double fourpi = 4.0 * M_PI;
    const double radicand =
        std::sqrt(2.0) * pump.energy * M_PI * omega1 * omega2 /
        (std::sqrt(M_PI) * fourpi * fourpi * fourpi * kVacuumPermittivity *
         wg.area * c * c * c * pump.tau_p);
    return fourpi * std::sqrt(radicand);
}

SpdcScenario SpdcScenario::from_epsilon(PumpPulse pump, double omega2,
                                        WaveguideSpec wg,
                                        dispersion::EpsilonProfile eps) {
    if (!(omega2 > 0.0) || !(pump.omega3 > omega2))
        throw std::domain_error("need 0 < omega2 < omega3");
    if (!(wg.z_i < wg.z_f)) throw std::domain_error("waveguide needs z_i < z_f");
    if (eps.pump_filter_diff != pump.omega3 - omega2)
        throw std::invalid_argument("epsilon profile built for a different pump/filter pair");

    SpdcScenario scn;
    scn.pump = pump;
    scn.omega2 = omega2;
    scn.wg = wg;
    auto ep = eps;  // the profile outlives this call inside the lambdas
    scn.dk0 = [ep](double z) { return ep.dk0(z); };
    scn.dvg_inv = [ep](double z) { return ep.dvg_inv(z); };
    const double z_i = wg.z_i;
    if (ep.eps_integral) {
        scn.qtilde = [ep, z_i](double z) {
            return (z - z_i) * ep.v_inv -
                   (ep.eps_integral(z) - ep.eps_integral(z_i)) / ep.pump_filter_diff;
        };
    } else {
        // cumulative quadrature of dvg_inv, cached at construction
        auto dvg = scn.dvg_inv;
        oscquad::QuadConfig cfg;
        cfg.rel_tol = 1e-12;
        scn.qtilde = [dvg, z_i, cfg](double z) {
            return dispersion::accumulated_phase(dvg, z_i, z, cfg);
        };
    }
    scn.constant_gap = true;
    scn.gap_value = eps.dk0_mean - eps.v_inv * eps.pump_filter_diff;
    return scn;
}

SpdcScenario SpdcScenario::from_exponential(PumpPulse pump, double omega2,
                                            WaveguideSpec wg, double dk0_mean,
                                            double a, double v) {
    const double dO = pump.omega3 - omega2;
    dispersion::ExponentialGradient grad = dispersion::make_exponential_gradient(a, v);
    dispersion::EpsilonProfile eps;
    eps.dk0_mean = dk0_mean;
    eps.v_inv = 1.0 / v;
    eps.pump_filter_diff = dO;
    eps.eps = [grad, dO, v](double z) { return dO * (1.0 / v - grad.dvg_inv(z)); };
    eps.eps_integral = [grad, dO, v](double z) {
        return dO * (z / v - grad.qtilde(z));
    };
    return from_epsilon(pump, omega2, wg, eps);
}

double effective_gap_profile(const SpdcScenario& scn, double z) {
    return scn.dk0(z) - scn.dvg_inv(z) * (scn.pump.omega3 - scn.omega2);
}

double eta_tilde(const SpdcScenario& scn, double z) {
    const double n1 = scn.wg.n1.index(scn.omega1(), z);
    const double n2 = scn.wg.n2.index(scn.omega2, z);
    const double n3 = scn.wg.n3.index(scn.pump.omega3, z);
    return scn.wg.chi2(z) / std::sqrt(n1 * n2 * n3);
}

AmplitudeResult spdc_amplitude(const SpdcScenario& scn, double omega,
                               const oscquad::QuadConfig& quad) {
    if (!(omega > 0.0)) throw std::domain_error("spdc_amplitude requires omega > 0");

    oscquad::OscillatoryIntegrand f;
    f.amplitude = [&scn](double z) { return Complex(eta_tilde(scn, z), 0.0); };
    f.phase = [&scn, omega](double z) {
        return effective_gap_profile(scn, z) * z + omega * scn.qtilde(z);
    };
    if (scn.constant_gap) {
        const double gap = scn.gap_value;
        f.phase_derivative = [&scn, omega, gap](double z) {
            return gap + omega * scn.dvg_inv(z);
        };
    }
    f.z_lo = scn.wg.z_i;
    f.z_hi = scn.wg.z_f;

    const oscquad::QuadResult qr = oscquad::evaluate(f, quad);
    const double kappa = coupling_kappa(scn.pump, scn.wg, scn.omega1(), scn.omega2);
    const double alpha = scn.pump.quasi_mono
                             ? pump_amplitude(scn.pump, scn.pump.omega3)
                             : pump_amplitude(scn.pump, scn.omega2 + omega);
    const Complex b_s = Complex(0.0, 1.0) * kappa * alpha;

    AmplitudeResult r;
    r.integral = qr.value;
    r.prefactor = b_s;
    r.value = b_s * qr.value;
    r.abs_error = std::abs(b_s) * qr.abs_error;
    r.panels = qr.panels;
    r.total_phase = qr.total_phase;
    r.filon_fallback = qr.filon_fallback;
    return r;
}

NormalizedAmplitude uniform_accel_amplitude(double omega_tilde, double dOmega,
                                            double a, double v, double z_i,
                                            double z_f,
                                            const oscquad::QuadConfig& quad,
                                            double max_length) {
    if (!(v > 0.0)) throw std::domain_error("scaling velocity must be positive");
    const double L = z_f - z_i;
    if (!(L > 0.0)) throw std::domain_error("need z_i < z_f");
    if (L > max_length * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "length " << L << " m exceeds the configured modeling limit "
           << max_length << " m";
        throw std::invalid_argument(os.str());
    }
    if (-a * z_i / v > 690.0)
        throw std::domain_error("window anchor overflows the gradient profile");

    NormalizedAmplitude out;
    if (a == 0.0 || std::abs(a) * L / v < 1e-8) {
        // a -> 0: the phase collapses to dk0 z with dk0 = omega_tilde + dOmega/v;
        // evaluated analytically to dodge the cancellation in (dOmega/a) e^{-az/v}
        const double dk0 = omega_tilde + dOmega / v;
        const double half = 0.5 * dk0 * L;
        out.integral = static_cast<double>(L) * sinc(half) *
                       cis(dk0 * 0.5 * (z_i + z_f) - dOmega * z_i / v);
        out.norm_mod = std::abs(sinc(half));
        out.norm_prob = out.norm_mod * out.norm_mod;
        out.abs_error = 0.0;
        out.panels = 1;
        out.total_phase = std::abs(dk0) * L;
        out.sinc_branch = true;
        return out;
    }

    oscquad::OscillatoryIntegrand f;
    f.amplitude = [](double) { return Complex(1.0, 0.0); };
    f.phase = [=](double z) {
        const double qt = (std::expm1(-a * z_i / v) - std::expm1(-a * z / v)) / a;
        return omega_tilde * z + dOmega * qt;
    };
    f.phase_derivative = [=](double z) {
        return omega_tilde + dOmega * std::exp(-a * z / v) / v;
    };
    f.z_lo = z_i;
    f.z_hi = z_f;

    try {
        const oscquad::QuadResult qr = oscquad::evaluate(f, quad);
        out.integral = qr.value;
        out.norm_mod = std::abs(qr.value) / L;
        out.norm_prob = out.norm_mod * out.norm_mod;
        out.abs_error = qr.abs_error / L;
        out.panels = qr.panels;
        out.total_phase = qr.total_phase;
        return out;
    } catch (const oscquad::BudgetError& e) {
        std::ostringstream os;
        os << "oscillation budget exceeded at a=" << a << ", L=" << L
           << ": needed more than " << e.best.panels
           << " panels; this bounds the crystal length the engine can model";
        throw oscquad::BudgetError(os.str(), e.best);
    }
}

double poled_reference(double dk0_mean, double period, double duty, double L) {
    if (!(dk0_mean > 0.0)) throw std::domain_error("dk0 must be positive");
    if (!(period > 0.0) || !(L > 0.0)) throw std::domain_error("period and L must be positive");
    if (!(duty > 0.0 && duty <= 1.0)) throw std::domain_error("duty must lie in (0, 1]");
    const double ideal = 2.0 * M_PI / dk0_mean;
    if (std::abs(period - ideal) > 0.01 * ideal) {
        std::cerr << "poled_reference: period " << period
                  << " m deviates more than 1% from 2 pi / dk0 = " << ideal
                  << " m\n";
    }

    // exact segment-by-segment integral of s(z) e^{i dk0 z}
    const Complex ik(0.0, dk0_mean);
    if (duty == 1.0) {  // unpoled: a single mismatched segment
        const Complex whole = (std::exp(ik * L) - 1.0) / ik;
        return std::abs(whole) / L;
    }
    Complex total(0.0, 0.0);
    double z = 0.0;
    double sign = 1.0;
    while (z < L) {
        const double seg = sign > 0.0 ? duty * period : (1.0 - duty) * period;
        const double z2 = std::min(z + seg, L);
        if (z2 > z) total += sign * (std::exp(ik * z2) - std::exp(ik * z)) / ik;
        z = z + seg;
        sign = -sign;
    }
    return std::abs(total) / L;
}

}  // namespace udwsim::spdc
