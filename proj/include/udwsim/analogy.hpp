#pragma once

#include <complex>
#include <functional>

#include "udwsim/oscquad.hpp"
#include "udwsim/spdc.hpp"

// The parameter dictionary between the detector picture and the waveguide
// picture, mediated by the scaling velocity v = L / delta_tau:
//   q(tau)      <-> int dvg_inv              (trajectory / dispersion gradient)
//   eta(tau)    <-> chi2 v / sqrt(n1 n2 n3)  (switching / nonlinearity)
//   Omega(tau)  <-> (dk0 - dvg_inv dOmega) v (gap / compensated mismatch)
//   b(omega)    <-> i kappa alpha(O2 + omega)
//   delta_tau   <-> L / v
namespace udwsim::analogy {

using Complex = std::complex<double>;

struct ScalingVelocity {
    double v = 0.0;
    explicit ScalingVelocity(double v_) : v(v_) {
        if (!(v > 0.0)) throw std::domain_error("scaling velocity must be positive");
    }
};

struct UdwSide {
    std::function<double(double)> q, qprime, eta, gap;  // of tau
    std::function<Complex(double)> b;                   // of omega
    double tau_i = 0.0;
    double delta_tau = 0.0;
};

struct SpdcSide {
    std::function<double(double)> dvg_inv, qtilde, eta_tilde, dk0;  // of z
    std::function<Complex(double)> b;                               // of omega
    double z_i = 0.0;
    double length = 0.0;
    double omega2 = 0.0, omega3 = 0.0;
};

UdwSide spdc_to_udw(const SpdcSide& s, const ScalingVelocity& v);
SpdcSide udw_to_spdc(const UdwSide& u, const ScalingVelocity& v, double omega2,
                     double omega3);

SpdcSide side_from_scenario(const spdc::SpdcScenario& scn);

struct EquivalenceReport {
    Complex amplitude_spdc{0.0, 0.0};
    Complex amplitude_udw{0.0, 0.0};
    double rel_diff = 0.0;
    double combined_err = 0.0;  // summed quadrature error estimates, relative
};

// Evaluates the amplitude once through the waveguide-side machinery and once
// through the mapped detector-side integral (the same integral under
// z = v tau); the difference must sit within the combined quadrature errors.
EquivalenceReport amplitude_equivalence_check(const spdc::SpdcScenario& scn,
                                              double v, double omega,
                                              const oscquad::QuadConfig& quad = {});

}  // namespace udwsim::analogy
