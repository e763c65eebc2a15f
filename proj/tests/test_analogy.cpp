#include "doctest.h"

#include <cmath>
#include <random>

#include "udwsim/analogy.hpp"
#include "udwsim/dispersion.hpp"
#include "udwsim/spdc.hpp"

using namespace udwsim;
using namespace udwsim::analogy;

namespace {

constexpr double kOmega3 = 3.6e15;
constexpr double kOmega2 = 2.0e15;

spdc::WaveguideSpec ktp_waveguide(double L) {
    spdc::WaveguideSpec wg;
    wg.z_i = 0.0;
    wg.z_f = L;
    wg.area = 25e-12;
    wg.chi2 = dispersion::Chi2Profile::uniform_profile(1e-12);
    wg.n1.base = dispersion::ktp_table().at("ktp_ny");
    wg.n2.base = dispersion::ktp_table().at("ktp_ny");
    wg.n3.base = dispersion::ktp_table().at("ktp_nz");
    return wg;
}

spdc::SpdcScenario exp_scenario(double a, double L) {
    const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
    return spdc::SpdcScenario::from_exponential(
        spdc::PumpPulse::make(kOmega3, 1e-12, 1e-9), kOmega2, ktp_waveguide(L),
        op.dk0_mean, a, op.v);
}

}  // namespace

TEST_CASE("scaling velocity: L = v delta_tau round-trips exactly") {
    const double v = 1.0247e9, L = 73e-6;
    ScalingVelocity sv(v);
    const double dtau = L / sv.v;
    CHECK(sv.v * dtau == doctest::Approx(L).epsilon(1e-15));
    CHECK_THROWS_AS(ScalingVelocity(-1.0), std::domain_error);
}

TEST_CASE("spdc_to_udw: stationary material gives an inertial-like q") {
    // constant relative dispersion dvg_inv = 1/v: q(tau) = tau - tau_i
    const double v = 1.0e9, L = 50e-6;
    SpdcSide s;
    s.dvg_inv = [v](double) { return 1.0 / v; };
    s.qtilde = [v](double z) { return z / v; };  // anchored at z_i = 0
    s.eta_tilde = [](double) { return 1.0; };
    s.dk0 = [](double) { return 2.0e5; };
    s.b = [](double) { return Complex(0.0, 1.0); };
    s.z_i = 0.0;
    s.length = L;
    s.omega2 = kOmega2;
    s.omega3 = kOmega3;
    UdwSide u = spdc_to_udw(s, ScalingVelocity(v));
    CHECK(u.delta_tau == doctest::Approx(L / v).epsilon(1e-15));
    for (double tau : {0.0, 1e-14, 4.9e-14}) {
        CHECK(u.q(tau) == doctest::Approx(tau).epsilon(1e-12));
        CHECK(u.qprime(tau) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("spdc_to_udw: exponential gradient maps to uniform acceleration") {
    const double a = 6e14;
    const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
    auto scn = exp_scenario(a, 80e-6);
    SpdcSide s = side_from_scenario(scn);
    UdwSide u = spdc_to_udw(s, ScalingVelocity(op.v));
    // q(tau) = (1 - e^{-a tau}) / a: uniform acceleration shifted to q(0) = 0
    for (double tau : {0.0, 2e-14, 6e-14}) {
        const double expect = -std::expm1(-a * tau) / a;
        CHECK(u.q(tau) == doctest::Approx(expect).epsilon(1e-10));
    }
    // epsilon construction: the mapped gap is constant
    const double g0 = u.gap(0.0);
    CHECK(g0 == doctest::Approx(op.omega_gap).epsilon(1e-9));
    for (double tau : {1e-14, 5e-14, 7.7e-14})
        CHECK(u.gap(tau) == doctest::Approx(g0).epsilon(1e-12));
}

TEST_CASE("udw_to_spdc: uniform acceleration produces the exponential profile") {
    const double a = 4.2e14, v = 1.0247e9;
    UdwSide u;
    u.q = [a](double tau) { return -std::expm1(-a * tau) / a; };
    u.qprime = [a](double tau) { return std::exp(-a * tau); };
    u.eta = [](double) { return 1.0; };
    u.gap = [](double) { return 1.3e14; };
    u.b = [](double) { return Complex(0.0, 1.0); };
    u.tau_i = 0.0;
    u.delta_tau = 9e-14;
    SpdcSide s = udw_to_spdc(u, ScalingVelocity(v), kOmega2, kOmega3);
    for (double z : {0.0, 3e-5, 8e-5}) {
        CHECK(s.dvg_inv(z) == doctest::Approx(std::exp(-a * z / v) / v).epsilon(1e-12));
    }
    // constant gap emerges as the compensating construction:
    // dk0(z) - dvg_inv(z) dOmega = gap / v for every z
    const double dO = kOmega3 - kOmega2;
    for (double z : {1e-5, 4e-5, 7e-5}) {
        CHECK(s.dk0(z) - s.dvg_inv(z) * dO ==
              doctest::Approx(1.3e14 / v).epsilon(1e-12));
    }
    CHECK(s.length == doctest::Approx(v * 9e-14).epsilon(1e-15));

    UdwSide no_deriv = u;
    no_deriv.qprime = nullptr;
    CHECK_THROWS_AS(udw_to_spdc(no_deriv, ScalingVelocity(v), kOmega2, kOmega3),
                    std::invalid_argument);
}

TEST_CASE("round trip: all five dictionary rows at 100 sampled points") {
    const double a = 6e14;
    const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
    auto scn = exp_scenario(a, 90e-6);
    SpdcSide s0 = side_from_scenario(scn);
    UdwSide u = spdc_to_udw(s0, ScalingVelocity(op.v));
    SpdcSide s1 = udw_to_spdc(u, ScalingVelocity(op.v), kOmega2, kOmega3);

    CHECK(s1.length == doctest::Approx(s0.length).epsilon(1e-12));
    CHECK(s1.z_i == doctest::Approx(s0.z_i).epsilon(1e-12));
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> dz(0.0, 90e-6);
    for (int i = 0; i < 100; ++i) {
        const double z = dz(rng);
        CHECK(s1.dvg_inv(z) == doctest::Approx(s0.dvg_inv(z)).epsilon(1e-10));
        CHECK(s1.qtilde(z) == doctest::Approx(s0.qtilde(z)).epsilon(1e-10));
        CHECK(s1.eta_tilde(z) == doctest::Approx(s0.eta_tilde(z)).epsilon(1e-10));
        CHECK(s1.dk0(z) == doctest::Approx(s0.dk0(z)).epsilon(1e-10));
    }
    // row 4: the prefactor map is carried through unchanged
    CHECK(std::abs(s1.b(op.omega1) - s0.b(op.omega1)) == 0.0);
}

TEST_CASE("amplitude equivalence: constant profiles") {
    const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
    dispersion::EpsilonProfile flat;
    flat.dk0_mean = op.dk0_mean;
    flat.v_inv = op.dvg_inv_mean;
    flat.pump_filter_diff = kOmega3 - kOmega2;
    flat.eps = [](double) { return 0.0; };
    flat.eps_integral = [](double) { return 0.0; };
    auto scn = spdc::SpdcScenario::from_epsilon(
        spdc::PumpPulse::make(kOmega3, 1e-12, 1e-9), kOmega2, ktp_waveguide(60e-6),
        flat);
    auto rep = amplitude_equivalence_check(scn, op.v, op.omega1, {});
    CHECK(rep.rel_diff < 1e-8);
}

TEST_CASE("amplitude equivalence: exponential gradients, random scenarios") {
    std::mt19937 rng(2468);
    std::uniform_real_distribution<double> dloga(13.5, 15.5), dL(10e-6, 100e-6);
    for (int i = 0; i < 5; ++i) {
        const double a = std::pow(10.0, dloga(rng));
        const double L = dL(rng);
        auto scn = exp_scenario(a, L);
        const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
        auto rep = amplitude_equivalence_check(scn, op.v, op.omega1, {});
        CAPTURE(a); CAPTURE(L);
        CHECK(rep.rel_diff < 1e-8);
    }
}

TEST_CASE("amplitude equivalence: zero nonlinearity gives zero on both paths") {
    const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
    auto wg = ktp_waveguide(40e-6);
    wg.chi2 = dispersion::Chi2Profile::uniform_profile(0.0);
    auto scn = spdc::SpdcScenario::from_exponential(
        spdc::PumpPulse::make(kOmega3, 1e-12, 1e-9), kOmega2, wg, op.dk0_mean,
        5e14, op.v);
    auto rep = amplitude_equivalence_check(scn, op.v, op.omega1, {});
    CHECK(std::abs(rep.amplitude_spdc) == 0.0);
    CHECK(std::abs(rep.amplitude_udw) == 0.0);
    CHECK(rep.rel_diff == 0.0);
}

TEST_CASE("scaling covariance: v -> 2v with L -> 2L leaves the modulus") {
    // rescaled waveguide: dvg_inv halves, dk0 compensates, length doubles;
    // the mapped detector integral is identical, so the amplitude modulus of
    // the normalized integral is invariant
    const auto op = dispersion::ktp_operating_point(kOmega2, kOmega3);
    const double a = 5e14, L = 40e-6;
    const double dO = kOmega3 - kOmega2;
    auto n1 = spdc::uniform_accel_amplitude(op.omega_tilde, dO, a, op.v, 0.0, L);
    // under v' = 2v and L' = 2L the gap profile in z halves:
    // omega_tilde' = omega_gap / v' and the same a
    const double v2 = 2.0 * op.v;
    auto n2 = spdc::uniform_accel_amplitude(op.omega_gap / v2, dO, a, v2, 0.0,
                                            2.0 * L, {}, 250e-6);
    CHECK(n1.norm_mod == doctest::Approx(n2.norm_mod).epsilon(1e-9));
}
