#include "udwsim/oscquad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>
#include <random>

namespace udwsim::oscquad {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 abscissae,
// positive half; node 7 is the origin).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights for the odd Kronrod abscissae (indices 1,3,5,7).
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

[[noreturn]] void throw_nonfinite(double z) {
    std::ostringstream os;
    os << "non-finite integrand sample at z=" << z;
    throw std::runtime_error(os.str());
}

Complex sample(const OscillatoryIntegrand& f, double z) {
    const Complex g = f.amplitude(z);
    const double ph = f.phase(z);
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) || !std::isfinite(ph))
        throw_nonfinite(z);
    return g * Complex(std::cos(ph), std::sin(ph));
}

struct Panel {
    double a, b;
    Complex k15;
    double err;
};

Panel gk15_panel(const OscillatoryIntegrand& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex k{0.0, 0.0};
    Complex g{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        Complex fs;
        if (i == 7) {
            fs = sample(f, mid);
        } else {
            fs = sample(f, mid - half * kXgk[i]) + sample(f, mid + half * kXgk[i]);
        }
        k += kWgk[i] * fs;
        if (i % 2 == 1) g += kWg[i / 2] * fs;  // Gauss nodes sit at odd indices; i=7 is the origin
    }
    k *= half;
    g *= half;
    return Panel{a, b, k, std::abs(k - g)};
}

double panel_tolerance(const QuadConfig& cfg, double value_scale) {
    return std::max(cfg.abs_tol, cfg.rel_tol * value_scale);
}

void validate(const OscillatoryIntegrand& f, const QuadConfig& cfg) {
    if (!f.amplitude || !f.phase)
        throw std::invalid_argument("integrand requires amplitude and phase functions");
    if (f.z_lo > f.z_hi)
        throw std::invalid_argument("integrand interval reversed (z_lo > z_hi)");
    if (!(cfg.rel_tol > 0.0))
        throw std::invalid_argument("rel_tol must be positive");
    if (!(cfg.max_phase_per_panel > 0.0) || cfg.max_phase_per_panel > 3.14159265358979324)
        throw std::invalid_argument("max_phase_per_panel must lie in (0, pi]");
    if (cfg.max_panels < 1)
        throw std::invalid_argument("max_panels must be >= 1");
}

// Split [a, b] until the sampled phase variation per segment fits the
// budget. For monotone phase rates this lands the segments geometrically.
void split_by_phase(const OscillatoryIntegrand& f, double a, double b,
                    double budget, long cap, int depth,
                    std::vector<std::pair<double, double>>& out) {
    const double pa = f.phase(a);
    const double pb = f.phase(b);
    double var = 0.0;
    double prev = pa;
    for (int i = 1; i <= 4; ++i) {
        const double z = a + (b - a) * i / 4.0;
        const double p = (i == 4) ? pb : f.phase(z);
        if (!std::isfinite(p)) throw_nonfinite(z);
        var += std::abs(p - prev);
        prev = p;
    }
    if (var <= budget || depth >= 58 || static_cast<long>(out.size()) >= cap ||
        (b - a) <= std::abs(a) * 1e-15) {
        out.emplace_back(a, b);
        return;
    }
    const double m = 0.5 * (a + b);
    split_by_phase(f, a, m, budget, cap, depth + 1, out);
    split_by_phase(f, m, b, budget, cap, depth + 1, out);
}

QuadResult degenerate_result() {
    return QuadResult{Complex(0.0, 0.0), 0.0, 1, 0.0, false};
}

QuadResult gk_adaptive(const OscillatoryIntegrand& f, const QuadConfig& cfg,
                       bool phase_presplit) {
    std::vector<std::pair<double, double>> seed;
    if (phase_presplit) {
        split_by_phase(f, f.z_lo, f.z_hi, cfg.max_phase_per_panel,
                       cfg.max_panels, 0, seed);
    } else {
        seed.emplace_back(f.z_lo, f.z_hi);
    }

    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);
    Complex total{0.0, 0.0};
    double err = 0.0;
    for (const auto& [a, b] : seed) {
        Panel p = gk15_panel(f, a, b);
        total += p.k15;
        err += p.err;
        queue.push(p);
    }

    long panels = static_cast<long>(seed.size());
    while (err > panel_tolerance(cfg, std::abs(total)) && !queue.empty()) {
        if (panels >= cfg.max_panels) {
            QuadResult best{total, err, panels, 0.0, false};
            std::ostringstream os;
            os << "quadrature panel budget exhausted: " << panels
               << " panels, abs_error " << err;
            throw BudgetError(os.str(), best);
        }
        Panel worst = queue.top();
        queue.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (m <= worst.a || m >= worst.b) continue;  // width at rounding floor
        Panel left = gk15_panel(f, worst.a, m);
        Panel right = gk15_panel(f, m, worst.b);
        total += left.k15 + right.k15 - worst.k15;
        err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    return QuadResult{total, err, panels, 0.0, false};
}

// ---------------------------------------------------------------------------
// Filon path: Legendre fit of the slowly varying factor times closed-form
// moments  m_k(theta) = int_{-1}^{1} P_k(s) e^{i theta s} ds = 2 i^k j_k(theta).
// ---------------------------------------------------------------------------

constexpr int kFitDegree = 14;   // Legendre coefficients 0..kFitDegree
constexpr int kFitNodes = 20;    // Gauss-Legendre nodes for the projection

struct GlRule {
    std::array<double, kFitNodes> x{};
    std::array<double, kFitNodes> w{};
};

GlRule make_gl_rule() {
    GlRule r;
    const int n = kFitNodes;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

const GlRule& gl_rule() {
    static const GlRule rule = make_gl_rule();
    return rule;
}

// Spherical Bessel j_0..j_n at theta >= 0.
void spherical_bessel(double theta, int n, double* out) {
    if (theta < 1e-12) {
        // j_k ~ theta^k / (2k+1)!!
        double dfact = 1.0;
        double pw = 1.0;
        for (int k = 0; k <= n; ++k) {
            out[k] = pw / dfact * (1.0 - theta * theta / (2.0 * (2.0 * k + 3.0)));
            pw *= theta;
            dfact *= (2.0 * k + 3.0);
        }
        return;
    }
    if (theta > 2.0 * n + 4.0) {
        // forward recurrence is stable when theta dominates the order
        double jm = std::sin(theta) / theta;
        out[0] = jm;
        if (n == 0) return;
        double j = jm / theta - std::cos(theta) / theta;
        out[1] = j;
        for (int k = 1; k < n; ++k) {
            const double jn = (2.0 * k + 1.0) / theta * j - jm;
            jm = j;
            j = jn;
            out[k + 1] = j;
        }
        return;
    }
    // Miller downward recurrence with normalization against j_0 or j_1.
    const int start = n + 18 + static_cast<int>(theta);
    double jp = 0.0, j = 1e-30;
    std::vector<double> buf(start + 2, 0.0);
    for (int k = start; k >= 0; --k) {
        const double jm = (2.0 * k + 3.0) / theta * j - jp;
        jp = j;
        j = jm;
        if (k <= n + 1) buf[k] = j;
        if (std::abs(j) > 1e250) {
            const double s = 1e-250;
            j *= s;
            jp *= s;
            for (int q = k; q <= n + 1; ++q) buf[q] *= s;
        }
    }
    const double j0 = std::sin(theta) / theta;
    const double j1 = j0 / theta - std::cos(theta) / theta;
    // anchor on whichever of j0, j1 is larger; they cannot both vanish
    const double scale =
        (std::abs(j0) >= std::abs(j1)) ? j0 / buf[0] : j1 / buf[1];
    for (int k = 0; k <= n; ++k) out[k] = buf[k] * scale;
}

// m_k(theta) for signed theta.
void legendre_moments(double theta, int n, Complex* out) {
    const double t = std::abs(theta);
    std::vector<double> j(n + 1, 0.0);
    spherical_bessel(t, n, j.data());
    Complex ik{1.0, 0.0};
    const Complex iunit{0.0, 1.0};
    for (int k = 0; k <= n; ++k) {
        Complex m = 2.0 * ik * j[k];
        out[k] = (theta >= 0.0) ? m : std::conj(m);
        ik *= iunit;
    }
}

struct FilonPanelValue {
    Complex value;
    double tail;  // Legendre-tail error heuristic
};

FilonPanelValue filon_panel(const OscillatoryIntegrand& f, double a, double b) {
    const GlRule& gl = gl_rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double pa = f.phase(a);
    const double pb = f.phase(b);
    if (!std::isfinite(pa)) throw_nonfinite(a);
    if (!std::isfinite(pb)) throw_nonfinite(b);
    const double c0 = 0.5 * (pb + pa);
    const double c1 = 0.5 * (pb - pa);

    // Legendre coefficients of F(s) = g(z(s)) e^{i (phi - chord)}.
    std::array<Complex, kFitDegree + 1> coef{};
    std::array<double, kFitDegree + 1> pk{};
    for (int i = 0; i < kFitNodes; ++i) {
        const double s = gl.x[i];
        const double z = mid + half * s;
        const Complex g = f.amplitude(z);
        const double ph = f.phase(z);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()) || !std::isfinite(ph))
            throw_nonfinite(z);
        const double resid = ph - (c0 + c1 * s);
        const Complex F = g * Complex(std::cos(resid), std::sin(resid));
        pk[0] = 1.0;
        pk[1] = s;
        for (int k = 2; k <= kFitDegree; ++k)
            pk[k] = ((2.0 * k - 1.0) * s * pk[k - 1] - (k - 1.0) * pk[k - 2]) / k;
        const Complex wf = gl.w[i] * F;
        for (int k = 0; k <= kFitDegree; ++k) coef[k] += wf * pk[k];
    }
    for (int k = 0; k <= kFitDegree; ++k) coef[k] *= (2.0 * k + 1.0) / 2.0;

    std::array<Complex, kFitDegree + 1> mom{};
    legendre_moments(c1, kFitDegree, mom.data());
    Complex sum{0.0, 0.0};
    for (int k = 0; k <= kFitDegree; ++k) sum += coef[k] * mom[k];
    const Complex val = half * Complex(std::cos(c0), std::sin(c0)) * sum;

    double tail = 0.0;
    for (int k = kFitDegree - 2; k <= kFitDegree; ++k)
        tail += std::abs(coef[k]) * std::abs(mom[k]);
    return FilonPanelValue{val, 3.0 * half * tail};
}

bool sign_change(double x, double y) {
    return (x > 0.0 && y < 0.0) || (x < 0.0 && y > 0.0);
}

struct FilonState {
    const OscillatoryIntegrand* f;
    const QuadConfig* cfg;
    long panels = 0;
    double err = 0.0;
    Complex accum{0.0, 0.0};  // accepted contributions, for budget errors
    bool fallback = false;
};

Complex filon_adaptive(FilonState& st, double a, double b, double tol, int depth);

Complex filon_segment(FilonState& st, double a, double b, double tol, int depth) {
    const OscillatoryIntegrand& f = *st.f;
    const double m = 0.5 * (a + b);
    const double da = f.phase_derivative(a);
    const double dm = f.phase_derivative(m);
    const double db = f.phase_derivative(b);
    // phi' crossing zero degenerates the chord linearization; localize the
    // crossing, then hand the panel to adaptive GK
    const double span_phase =
        std::max({std::abs(da), std::abs(dm), std::abs(db)}) * (b - a);
    if (sign_change(da, dm) || sign_change(dm, db)) {
        if (depth < 10 && span_phase > 1e-3) {
            return filon_segment(st, a, m, 0.5 * tol, depth + 1) +
                   filon_segment(st, m, b, 0.5 * tol, depth + 1);
        }
        OscillatoryIntegrand sub = f;
        sub.z_lo = a;
        sub.z_hi = b;
        QuadConfig scfg = *st.cfg;
        scfg.abs_tol = std::max(tol, 1e-300);
        QuadResult r = gk_adaptive(sub, scfg, true);
        st.panels += r.panels;
        st.err += r.abs_error;
        st.accum += r.value;
        st.fallback = true;
        return r.value;
    }
    return filon_adaptive(st, a, b, tol, depth);
}

Complex filon_adaptive(FilonState& st, double a, double b, double tol, int depth) {
    if (st.panels >= st.cfg->max_panels) {
        QuadResult best{st.accum, st.err, st.panels, 0.0, st.fallback};
        throw BudgetError("filon panel budget exhausted", best);
    }
    FilonPanelValue whole = filon_panel(*st.f, a, b);
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) {
        st.panels += 1;
        st.err += whole.tail;
        st.accum += whole.value;
        return whole.value;
    }
    FilonPanelValue left = filon_panel(*st.f, a, m);
    FilonPanelValue right = filon_panel(*st.f, m, b);
    const Complex children = left.value + right.value;
    const double diff = std::abs(whole.value - children);
    const double tailsum = left.tail + right.tail;
    if ((diff <= tol && tailsum <= tol) || depth >= 48) {
        st.panels += 2;
        st.err += diff + tailsum;
        st.accum += children;
        return children;
    }
    return filon_segment(st, a, m, 0.5 * tol, depth + 1) +
           filon_segment(st, m, b, 0.5 * tol, depth + 1);
}

// Pre-split for the Filon path: bound the chord residual and the amplitude
// spread per panel so the Legendre fit starts near its convergent regime.
void filon_preseed(const OscillatoryIntegrand& f, double a, double b, int depth,
                   long cap, std::vector<std::pair<double, double>>& out) {
    const double m = 0.5 * (a + b);
    const double pa = f.phase(a), pm = f.phase(m), pb = f.phase(b);
    const double resid = std::abs(pm - 0.5 * (pa + pb));
    const double ga = std::abs(f.amplitude(a)), gm = std::abs(f.amplitude(m)),
                 gb = std::abs(f.amplitude(b));
    const double gmax = std::max({ga, gm, gb});
    const double gmin = std::min({ga, gm, gb});
    const bool amp_spread = gmax > 8.0 * gmin + 1e-300;
    if ((resid <= 1.2 && !amp_spread) || depth >= 52 ||
        static_cast<long>(out.size()) >= cap) {
        out.emplace_back(a, b);
        return;
    }
    filon_preseed(f, a, m, depth + 1, cap, out);
    filon_preseed(f, m, b, depth + 1, cap, out);
}

}  // namespace

QuadResult integrate(const OscillatoryIntegrand& f, const QuadConfig& cfg) {
    validate(f, cfg);
    if (f.z_lo == f.z_hi) return degenerate_result();
    if (cfg.method == Method::filon) return integrate_filon(f, cfg);
    QuadResult r = gk_adaptive(f, cfg, cfg.method != Method::adaptive_gk);
    r.total_phase = phase_extent(f, 1025);
    return r;
}

QuadResult integrate_filon(const OscillatoryIntegrand& f, const QuadConfig& cfg) {
    validate(f, cfg);
    if (f.z_lo == f.z_hi) return degenerate_result();
    if (!f.phase_derivative) {
        QuadConfig c = cfg;
        c.method = Method::automatic;
        return integrate(f, c);
    }

    std::vector<std::pair<double, double>> seed;
    filon_preseed(f, f.z_lo, f.z_hi, 0, cfg.max_panels, seed);

    FilonState st;
    st.f = &f;
    st.cfg = &cfg;

    // First pass estimate to scale the tolerance.
    Complex rough{0.0, 0.0};
    for (const auto& [a, b] : seed) rough += filon_panel(f, a, b).value;
    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(rough));
    const double share = target / static_cast<double>(seed.size());

    Complex total{0.0, 0.0};
    for (const auto& [a, b] : seed) total += filon_segment(st, a, b, share, 0);

    QuadResult r;
    r.value = total;
    r.abs_error = st.err;
    r.panels = std::max<long>(st.panels, 1);
    r.filon_fallback = st.fallback;
    r.total_phase = phase_extent(f, 1025);
    return r;
}

QuadResult evaluate(const OscillatoryIntegrand& f, const QuadConfig& cfg) {
    validate(f, cfg);
    if (f.z_lo == f.z_hi) return degenerate_result();
    if (cfg.method == Method::filon) return integrate_filon(f, cfg);
    if (cfg.method == Method::adaptive_gk) return integrate(f, cfg);
    const double extent = phase_extent(f, 2049);
    const double gk_budget =
        std::min(0.25 * static_cast<double>(cfg.max_panels), 3.0e4);
    if (extent / cfg.max_phase_per_panel > gk_budget && f.phase_derivative)
        return integrate_filon(f, cfg);
    return integrate(f, cfg);
}

Complex oracle_brute(const OscillatoryIntegrand& f, long panels) {
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("oracle_brute requires an even panel count >= 2");
    if (f.z_lo == f.z_hi) return Complex(0.0, 0.0);
    const double h = (f.z_hi - f.z_lo) / static_cast<double>(panels);
    Complex sum = sample(f, f.z_lo) + sample(f, f.z_hi);
    Complex s4{0.0, 0.0}, s2{0.0, 0.0};
    for (long i = 1; i < panels; ++i) {
        const Complex v = sample(f, f.z_lo + h * static_cast<double>(i));
        if (i % 2 == 1) s4 += v;
        else s2 += v;
    }
    return (sum + 4.0 * s4 + 2.0 * s2) * (h / 3.0);
}

double phase_extent(const OscillatoryIntegrand& f, long samples) {
    if (samples < 2) throw std::invalid_argument("phase_extent needs >= 2 samples");
    if (f.z_lo == f.z_hi) return 0.0;
    double var = 0.0;
    double prev = f.phase(f.z_lo);
    if (!std::isfinite(prev)) throw_nonfinite(f.z_lo);
    for (long i = 1; i < samples; ++i) {
        const double z =
            f.z_lo + (f.z_hi - f.z_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double p = f.phase(z);
        if (!std::isfinite(p)) throw_nonfinite(z);
        var += std::abs(p - prev);
        prev = p;
    }
    return var;
}

bool check_phase_derivative(const OscillatoryIntegrand& f, int samples,
                            unsigned seed, double rel_tol) {
    if (!f.phase_derivative) return false;
    std::mt19937 rng(seed);
    const double lo = f.z_lo, hi = f.z_hi;
    const double width = hi - lo;
    std::uniform_real_distribution<double> dist(lo + 0.01 * width, hi - 0.01 * width);
    double scale = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < samples; ++i) {
        const double z = dist(rng);
        const double d = f.phase_derivative(z);
        scale = std::max(scale, std::abs(d));
        pts.emplace_back(z, d);
    }
    for (const auto& [z, d] : pts) {
        const double h = std::max(std::abs(z), 0.01 * width) * 1e-6;
        const double fd = (f.phase(z + h) - f.phase(z - h)) / (2.0 * h);
        if (std::abs(d - fd) > rel_tol * std::max({std::abs(d), std::abs(fd), 1e-9 * scale}))
            return false;
    }
    return true;
}

}  // namespace udwsim::oscquad
