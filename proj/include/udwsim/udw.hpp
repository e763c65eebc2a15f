#pragma once

#include <complex>
#include <functional>

#include "udwsim/oscquad.hpp"

// Unruh-DeWitt detector coupled to a right-moving massless scalar field in
// 1+1 dimensions. Natural units (hbar = c = 1) throughout; the only
// trajectory data entering the field phase is the lightcone coordinate
// q(tau) = t(tau) - x(tau).
namespace udwsim::udw {

using Complex = std::complex<double>;

struct Trajectory {
    enum class Kind { inertial, uniform_accel, custom };
    Kind kind = Kind::inertial;
    double v = 0.0;      // inertial velocity, |v| < 1
    double x0 = 0.0;     // inertial offset
    double accel = 0.0;  // proper acceleration
    std::function<double(double)> q_fn, qprime_fn;  // custom

    static Trajectory inertial(double v, double x0);
    static Trajectory uniform_accel(double a);
    static Trajectory custom(std::function<double(double)> q,
                             std::function<double(double)> qprime = nullptr);

    double q(double tau) const;
    bool has_qprime() const;
    double qprime(double tau) const;
};

struct SwitchingFunction {
    enum class Kind { rect, gaussian, custom };
    Kind kind = Kind::rect;
    double tau_i = 0.0, tau_f = 0.0;     // rect
    double center = 0.0, width = 1.0;    // gaussian
    std::function<double(double)> fn;    // custom

    static SwitchingFunction rect(double tau_i, double tau_f);
    static SwitchingFunction gaussian(double center, double width);
    static SwitchingFunction custom(std::function<double(double)> fn);

    double operator()(double tau) const;
};

struct DetectorSpec {
    std::function<double(double)> gap;        // Omega(tau)
    std::function<double(double)> gap_phase;  // int_0^tau Omega(s) ds
    double coupling = 1.0;                    // lambda, inverse length
    Complex monopole_elem{1.0, 0.0};          // <e|m(0)|g>
    bool constant = true;
    double omega0 = 0.0;                      // constant gap value
    bool de_excitation = false;               // flagged when omega0 <= 0

    static DetectorSpec constant_gap(double Omega, double lambda = 1.0,
                                     Complex M = Complex(1.0, 0.0));
    static DetectorSpec custom_gap(std::function<double(double)> gap,
                                   std::function<double(double)> gap_phase,
                                   double lambda = 1.0,
                                   Complex M = Complex(1.0, 0.0));
};

struct FieldMode {
    double omega = 0.0;  // > 0
};

struct Window {
    double tau_i = 0.0, tau_f = 0.0;
};

struct AmplitudeResult {
    Complex value{0.0, 0.0};      // prefactor * integral
    Complex integral{0.0, 0.0};   // the bare oscillatory integral
    Complex prefactor{1.0, 0.0};
    double abs_error = 0.0;       // on value
    long panels = 0;
    double total_phase = 0.0;
    bool filon_fallback = false;
};

// b(omega) = -i lambda <e|m(0)|g> / sqrt(4 pi omega)
Complex b_coefficient(const DetectorSpec& spec, const FieldMode& mode);

// First-order amplitude over a finite window:
// b(omega) int dtau eta(tau) e^{i int Omega} e^{i omega q(tau)}.
AmplitudeResult transition_amplitude(const DetectorSpec& spec,
                                     const Trajectory& traj,
                                     const SwitchingFunction& sw,
                                     const FieldMode& mode, const Window& win,
                                     const oscquad::QuadConfig& quad = {});

// Textbook sinc form for the rect-window inertial detector,
// e^{i k x0} sinc((Omega + gamma (omega - k v)) T) / (T sqrt(pi omega)).
Complex inertial_closed_form(double Omega, double omega, double k, double v,
                             double x0, double T);

// Analytic value of the rect-window [-T, T] inertial amplitude with the
// bookkeeping of transition_amplitude (prefactor b, e^{-i omega x0} offset
// phase, 2T measure). Oracle for the quadrature path; differs from
// inertial_closed_form by the factor -i lambda M e^{-2 i omega x0} T^2 at
// k = omega.
Complex inertial_amplitude(const DetectorSpec& spec, double v, double x0,
                           double omega, double T);

// |A / b(omega)|^2 for the uniformly accelerated detector in the
// infinite-time limit. Two algebraic routes that must agree:
double accel_closed_form_planck(double Omega, double omega, double a);
double accel_closed_form_gamma(double Omega, double omega, double a);
double accel_closed_form(double Omega, double omega, double a);  // planck route

// Normalized excitation response 2 pi Omega / (a (e^{2 pi Omega / a} - 1)),
// stable for extreme arguments.
double planck_response(double Omega, double a);

// Infinite-time uniformly-accelerated amplitude evaluated with a finite
// integration horizon T: quadrature over [-T, T] plus analytic completion
// of both tails (asymptotic series at early times, regularized power series
// at late times). Converges to accel_closed_form as T grows.
AmplitudeResult accel_response(const DetectorSpec& spec, const FieldMode& mode,
                               double a, double T,
                               const oscquad::QuadConfig& quad = {});

}  // namespace udwsim::udw
