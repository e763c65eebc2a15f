#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace udwsim::oscquad {

using Complex = std::complex<double>;

// Integrand of the form g(z) e^{i phi(z)} on [z_lo, z_hi].
// phase_derivative is optional; when present it must be consistent with
// phase (see check_phase_derivative) and enables the Filon path.
struct OscillatoryIntegrand {
    std::function<Complex(double)> amplitude;        // g(z)
    std::function<double(double)> phase;             // phi(z), radians
    std::function<double(double)> phase_derivative;  // phi'(z), optional
    double z_lo = 0.0;
    double z_hi = 0.0;
};

enum class Method { adaptive_gk, filon, automatic };

struct QuadConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;                      // in integrand units * length
    double max_phase_per_panel = 1.5707963267948966;  // pi/2
    long max_panels = 200000;
    Method method = Method::automatic;
};

struct QuadResult {
    Complex value{0.0, 0.0};
    double abs_error = 0.0;
    long panels = 1;
    double total_phase = 0.0;      // estimated total variation of phi
    bool filon_fallback = false;   // a stationary-phase panel fell back to GK
};

// Thrown when max_panels is exhausted before the tolerance is met.
// Carries the best value and error estimate reached so far.
struct BudgetError : std::runtime_error {
    QuadResult best;
    BudgetError(const std::string& msg, QuadResult r)
        : std::runtime_error(msg), best(std::move(r)) {}
};

// Adaptive Gauss-Kronrod. With method automatic the interval is first split
// so no panel holds more than max_phase_per_panel radians, then each panel
// is refined adaptively; abs_error is the sum of per-panel |K15 - G7|.
QuadResult integrate(const OscillatoryIntegrand& f, const QuadConfig& cfg);

// Filon-type rule: per panel the phase is linearized through its endpoint
// chord, the residual is folded into the amplitude, the amplitude is fit
// with a Legendre expansion, and polynomial x e^{i linear phase} moments
// are evaluated in closed form. Panels where phi' changes sign fall back
// to adaptive GK (flagged in the result). Requires phase_derivative; if it
// is missing, delegates to integrate().
QuadResult integrate_filon(const OscillatoryIntegrand& f, const QuadConfig& cfg);

// Dispatch: estimates the phase extent and picks the GK path for moderate
// phases and the Filon path when the GK panel budget would be exceeded.
QuadResult evaluate(const OscillatoryIntegrand& f, const QuadConfig& cfg);

// Composite Simpson reference (test oracle; cost linear in panels).
Complex oracle_brute(const OscillatoryIntegrand& f, long panels);

// Total variation of phi estimated by dense sampling at `samples` points.
double phase_extent(const OscillatoryIntegrand& f, long samples);

// Consistency of phase_derivative against a central finite difference of
// phase at `samples` random points.
bool check_phase_derivative(const OscillatoryIntegrand& f, int samples,
                            unsigned seed, double rel_tol = 1e-6);

}  // namespace udwsim::oscquad
