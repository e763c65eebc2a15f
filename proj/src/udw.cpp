#include "udwsim/udw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace udwsim::udw {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

Complex cis(double phase) { return Complex(std::cos(phase), std::sin(phase)); }

}  // namespace

Trajectory Trajectory::inertial(double v, double x0) {
    if (!(std::abs(v) < 1.0))
        throw std::domain_error("inertial trajectory requires |v| < 1");
    Trajectory t;
    t.kind = Kind::inertial;
    t.v = v;
    t.x0 = x0;
    return t;
}

Trajectory Trajectory::uniform_accel(double a) {
    if (!(a > 0.0)) throw std::domain_error("uniform acceleration requires a > 0");
    Trajectory t;
    t.kind = Kind::uniform_accel;
    t.accel = a;
    return t;
}

Trajectory Trajectory::custom(std::function<double(double)> q,
                              std::function<double(double)> qprime) {
    if (!q) throw std::invalid_argument("custom trajectory requires q(tau)");
    Trajectory t;
    t.kind = Kind::custom;
    t.q_fn = std::move(q);
    t.qprime_fn = std::move(qprime);
    return t;
}

double Trajectory::q(double tau) const {
    switch (kind) {
        case Kind::inertial: {
            const double gamma = 1.0 / std::sqrt(1.0 - v * v);
            return gamma * (1.0 - v) * tau - x0;
        }
        case Kind::uniform_accel:
            return -std::exp(-accel * tau) / accel;
        case Kind::custom:
            return q_fn(tau);
    }
    return 0.0;
}

bool Trajectory::has_qprime() const {
    return kind != Kind::custom || static_cast<bool>(qprime_fn);
}

double Trajectory::qprime(double tau) const {
    switch (kind) {
        case Kind::inertial: {
            const double gamma = 1.0 / std::sqrt(1.0 - v * v);
            return gamma * (1.0 - v);
        }
        case Kind::uniform_accel:
            return std::exp(-accel * tau);
        case Kind::custom:
            return qprime_fn(tau);
    }
    return 0.0;
}

SwitchingFunction SwitchingFunction::rect(double tau_i, double tau_f) {
    if (!(tau_i < tau_f)) throw std::domain_error("rect switching requires tau_i < tau_f");
    SwitchingFunction s;
    s.kind = Kind::rect;
    s.tau_i = tau_i;
    s.tau_f = tau_f;
    return s;
}

SwitchingFunction SwitchingFunction::gaussian(double center, double width) {
    if (!(width > 0.0)) throw std::domain_error("gaussian switching requires width > 0");
    SwitchingFunction s;
    s.kind = Kind::gaussian;
    s.center = center;
    s.width = width;
    return s;
}

SwitchingFunction SwitchingFunction::custom(std::function<double(double)> fn) {
    if (!fn) throw std::invalid_argument("custom switching requires a function");
    SwitchingFunction s;
    s.kind = Kind::custom;
    s.fn = std::move(fn);
    return s;
}

double SwitchingFunction::operator()(double tau) const {
    switch (kind) {
        case Kind::rect:
            return (tau >= tau_i && tau <= tau_f) ? 1.0 : 0.0;
        case Kind::gaussian: {
            const double s = (tau - center) / width;
            return std::exp(-0.5 * s * s);
        }
        case Kind::custom:
            return fn(tau);
    }
    return 0.0;
}

DetectorSpec DetectorSpec::constant_gap(double Omega, double lambda, Complex M) {
    DetectorSpec d;
    d.gap = [Omega](double) { return Omega; };
    d.gap_phase = [Omega](double tau) { return Omega * tau; };
    d.coupling = lambda;
    d.monopole_elem = M;
    d.constant = true;
    d.omega0 = Omega;
    d.de_excitation = !(Omega > 0.0);
    return d;
}

DetectorSpec DetectorSpec::custom_gap(std::function<double(double)> gap,
                                      std::function<double(double)> gap_phase,
                                      double lambda, Complex M) {
    if (!gap || !gap_phase)
        throw std::invalid_argument("custom gap requires Omega(tau) and its integral");
    DetectorSpec d;
    d.gap = std::move(gap);
    d.gap_phase = std::move(gap_phase);
    d.coupling = lambda;
    d.monopole_elem = M;
    d.constant = false;
    return d;
}

Complex b_coefficient(const DetectorSpec& spec, const FieldMode& mode) {
    if (!(mode.omega > 0.0)) throw std::domain_error("field mode requires omega > 0");
    return Complex(0.0, -1.0) * spec.coupling * spec.monopole_elem /
           std::sqrt(4.0 * M_PI * mode.omega);
}

AmplitudeResult transition_amplitude(const DetectorSpec& spec,
                                     const Trajectory& traj,
                                     const SwitchingFunction& sw,
                                     const FieldMode& mode, const Window& win,
                                     const oscquad::QuadConfig& quad) {
    if (!(win.tau_i < win.tau_f))
        throw std::domain_error("window requires tau_i < tau_f");
    const Complex b = b_coefficient(spec, mode);

    double lo = win.tau_i, hi = win.tau_f;
    if (sw.kind == SwitchingFunction::Kind::rect) {
        lo = std::max(lo, sw.tau_i);
        hi = std::min(hi, sw.tau_f);
        if (!(lo < hi)) {
            AmplitudeResult r;
            r.prefactor = b;
            return r;  // switching support outside the window
        }
    }

    const double omega = mode.omega;
    oscquad::OscillatoryIntegrand f;
    f.amplitude = [&sw](double tau) { return Complex(sw(tau), 0.0); };
    f.phase = [&spec, &traj, omega](double tau) {
        return spec.gap_phase(tau) + omega * traj.q(tau);
    };
    if (traj.has_qprime()) {
        f.phase_derivative = [&spec, &traj, omega](double tau) {
            return spec.gap(tau) + omega * traj.qprime(tau);
        };
    }
    f.z_lo = lo;
    f.z_hi = hi;

    const oscquad::QuadResult qr = oscquad::evaluate(f, quad);
    AmplitudeResult r;
    r.integral = qr.value;
    r.prefactor = b;
    r.value = b * qr.value;
    r.abs_error = std::abs(b) * qr.abs_error;
    r.panels = qr.panels;
    r.total_phase = qr.total_phase;
    r.filon_fallback = qr.filon_fallback;
    return r;
}

Complex inertial_closed_form(double Omega, double omega, double k, double v,
                             double x0, double T) {
    if (!(std::abs(v) < 1.0)) throw std::domain_error("|v| < 1 required");
    if (!(T > 0.0)) throw std::domain_error("T > 0 required");
    if (!(omega > 0.0)) throw std::domain_error("omega > 0 required");
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double arg = Omega + gamma * (omega - k * v);
    return cis(k * x0) * sinc(arg * T) / (T * std::sqrt(M_PI * omega));
}

Complex inertial_amplitude(const DetectorSpec& spec, double v, double x0,
                           double omega, double T) {
    if (!(std::abs(v) < 1.0)) throw std::domain_error("|v| < 1 required");
    if (!spec.constant)
        throw std::invalid_argument("inertial closed form assumes a constant gap");
    const Complex b = b_coefficient(spec, FieldMode{omega});
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double arg = spec.omega0 + omega * gamma * (1.0 - v);
    return b * cis(-omega * x0) * 2.0 * T * sinc(arg * T);
}

double accel_closed_form_planck(double Omega, double omega, double a) {
    if (!(Omega > 0.0) || !(omega > 0.0) || !(a > 0.0))
        throw std::domain_error("accel closed form requires positive Omega, omega, a");
    const double x = 2.0 * M_PI * Omega / a;
    double inv;
    if (x <= 700.0) {
        inv = 1.0 / std::expm1(x);
    } else {
        const double e = std::exp(-x);
        inv = e / (1.0 - e);
    }
    return 2.0 * M_PI / (a * Omega) * inv;
}

double accel_closed_form_gamma(double Omega, double omega, double a) {
    if (!(Omega > 0.0) || !(omega > 0.0) || !(a > 0.0))
        throw std::domain_error("accel closed form requires positive Omega, omega, a");
    // |a^{-1} (omega/a)^{i Omega/a} Gamma(-i Omega/a) e^{-pi Omega/(2a)}|^2
    // with |Gamma(i b)|^2 = pi / (b sinh(pi b)); the (omega/a)^{ib} factor is
    // a pure phase.
    const double b = Omega / a;
    return (M_PI / (b * std::sinh(M_PI * b))) * std::exp(-M_PI * b) / (a * a);
}

double accel_closed_form(double Omega, double omega, double a) {
    return accel_closed_form_planck(Omega, omega, a);
}

double planck_response(double Omega, double a) {
    if (!(Omega > 0.0) || !(a > 0.0))
        throw std::domain_error("planck_response requires positive Omega and a");
    const double x = 2.0 * M_PI * Omega / a;
    if (x <= 700.0) return x / std::expm1(x);
    return x * std::exp(-x);
}

AmplitudeResult accel_response(const DetectorSpec& spec, const FieldMode& mode,
                               double a, double T,
                               const oscquad::QuadConfig& quad) {
    if (!(a > 0.0) || !(T > 0.0))
        throw std::domain_error("accel_response requires a > 0 and T > 0");
    if (!spec.constant || !(spec.omega0 > 0.0))
        throw std::domain_error("accel_response assumes a constant positive gap");
    const double omega = mode.omega;
    const Complex b_coeff = b_coefficient(spec, mode);
    const double b = spec.omega0 / a;
    const double log_w_over_a = std::log(omega / a);
    if (log_w_over_a + a * T > 690.0)
        throw std::domain_error("integration horizon overflows the substitution; reduce T or omega/a");

    const double u_f = (omega / a) * std::exp(-a * T);
    const double u_i = (omega / a) * std::exp(a * T);
    if (u_f > 0.5)
        throw std::domain_error("horizon too short: late-time series needs (omega/a) e^{-aT} <= 1/2");

    double err = 0.0;

    // late tail, tau > T: regularized power series of int_0^{u_f}
    Complex late{0.0, 0.0};
    {
        const Complex phase = cis(-b * std::log(u_f));
        double ufn = 1.0;  // u_f^n
        double fact = 1.0;
        Complex ipow{1.0, 0.0};
        double last = 0.0;
        for (int n = 0; n <= 30; ++n) {
            const Complex term = ipow * ufn * phase / (fact * Complex(n, -b));
            late += term;
            last = std::abs(term);
            if (n >= 2 && last < 1e-18 * std::abs(late)) break;
            ipow *= Complex(0.0, -1.0);
            ufn *= u_f;
            fact *= (n + 1.0);
        }
        err += last;
    }

    // middle: exact substitution u = (omega/a) e^{-a tau} of the window
    // integral; amplitude 1/u, phase -u - b ln u
    oscquad::OscillatoryIntegrand f;
    f.amplitude = [](double u) { return Complex(1.0 / u, 0.0); };
    f.phase = [b](double u) { return -u - b * std::log(u); };
    f.phase_derivative = [b](double u) { return -1.0 - b / u; };
    f.z_lo = u_f;
    f.z_hi = u_i;
    const oscquad::QuadResult mid = oscquad::evaluate(f, quad);
    err += mid.abs_error;

    // early tail, tau < -T: two asymptotic terms of int_{u_i}^inf
    Complex early{0.0, 0.0};
    if (u_i < 1e100) {
        const Complex s{-1.0, -b};                       // exponent of u^{-1-ib}
        const Complex f0 = std::pow(u_i, -1.0) * cis(-b * std::log(u_i));
        const Complex f1 = s * f0 / u_i;                 // f'(u_i)
        const Complex iunit{0.0, 1.0};
        early = cis(-u_i) * (f0 / iunit + f1 / (iunit * iunit));
        const double bound =
            std::sqrt((1.0 + b * b) * (4.0 + b * b)) / (2.0 * u_i * u_i);
        err += bound;
    }
    // for u_i beyond 1e100 the whole tail is below double resolution

    const Complex I = late + mid.value + early;
    const Complex prefactor = b_coeff * (1.0 / a) * cis(b * log_w_over_a);

    AmplitudeResult r;
    r.integral = I;
    r.prefactor = prefactor;
    r.value = prefactor * I;
    r.abs_error = std::abs(prefactor) * err;
    r.panels = mid.panels;
    r.total_phase = mid.total_phase;
    r.filon_fallback = mid.filon_fallback;
    return r;
}

}  // namespace udwsim::udw
