#include "trigsum/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace trigsum {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature: abs_tol must be > 0");
    if (!(rel_tol >= 0.0)) throw std::invalid_argument("quadrature: rel_tol must be >= 0");
    if (max_subdivisions < 1) throw std::invalid_argument("quadrature: max_subdivisions must be >= 1");
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value, error;
    // Simpson only: samples at a, (a+b)/2, b.
    double fa = 0.0, fm = 0.0, fb = 0.0;
    bool operator<(const Panel& o) const { return error < o.error; }
};

double checked(const Integrand& g, double t) {
    const double v = g(t);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "quadrature: non-finite integrand value at t=" << t;
        throw QuadratureError(os.str(), std::numeric_limits<double>::infinity(), 0);
    }
    return v;
}

Panel gauss_kronrod(const Integrand& g, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = checked(g, c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = checked(g, c - dx);
        const double f2 = checked(g, c + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return Panel{a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

Panel simpson(const Integrand& g, double a, double b, double fa, double fm, double fb) {
    const double m = 0.5 * (a + b);
    const double fl = checked(g, 0.5 * (a + m));
    const double fr = checked(g, 0.5 * (m + b));
    const double w = b - a;
    const double coarse = w / 6.0 * (fa + 4.0 * fm + fb);
    const double fine = w / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
    Panel p{a, b, fine + (fine - coarse) / 15.0, std::abs(fine - coarse) / 15.0};
    p.fa = fa;
    p.fm = fm;
    p.fb = fb;
    return p;
}

constexpr int kSeedPanels = 16;

bool splittable(const Panel& p) {
    const double m = 0.5 * (p.a + p.b);
    return m > p.a && m < p.b;
}

} // namespace

QuadratureResult integrate(const Integrand& g, double a, double b, const QuadratureConfig& cfg,
                           std::span<const double> breakpoints) {
    cfg.validate();
    if (a == b) return {};
    if (a > b) {
        QuadratureResult r = integrate(g, b, a, cfg, breakpoints);
        r.value = -r.value;
        return r;
    }

    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const bool gk = cfg.base_rule == QuadratureRule::composite_gauss;
    auto make = [&](double lo, double hi) {
        if (gk) return gauss_kronrod(g, lo, hi);
        // Endpoints are sampled one ulp inside so a jump at a breakpoint
        // contributes its one-sided value.
        return simpson(g, lo, hi, checked(g, std::nextafter(lo, hi)), checked(g, 0.5 * (lo + hi)),
                       checked(g, std::nextafter(hi, lo)));
    };

    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        // Uniform dyadic grids alias integer frequencies to zero error, so the
        // seed panels are jittered by a golden-ratio offset.
        const double lo = edges[i];
        const double w = edges[i + 1] - lo;
        double left = lo;
        for (int j = 1; j <= kSeedPanels; ++j) {
            double right = edges[i + 1];
            if (j < kSeedPanels) {
                const double jitter = 0.3 * (std::fmod(j * 0.6180339887498949, 1.0) - 0.5);
                right = lo + w * (j + jitter) / kSeedPanels;
            }
            if (right <= left) continue;
            Panel p = make(left, right);
            total += p.value;
            total_err += p.error;
            heap.push(p);
            left = right;
        }
    }

    // Panels too narrow to bisect in floating point keep their error here.
    double frozen_value = 0.0;
    double frozen_err = 0.0;
    long subdivisions = 0;
    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && !heap.empty()) {
        if (subdivisions >= cfg.max_subdivisions) {
            std::ostringstream os;
            os << "quadrature: no convergence on [" << a << ", " << b << "] after " << subdivisions
               << " subdivisions, error estimate " << total_err;
            throw QuadratureError(os.str(), total_err, subdivisions);
        }
        Panel worst = heap.top();
        heap.pop();
        if (!splittable(worst)) {
            frozen_value += worst.value;
            frozen_err += worst.error;
            continue;
        }
        const double m = 0.5 * (worst.a + worst.b);
        Panel left, right;
        if (gk) {
            left = gauss_kronrod(g, worst.a, m);
            right = gauss_kronrod(g, m, worst.b);
        } else {
            const double fl = checked(g, 0.5 * (worst.a + m));
            const double fr = checked(g, 0.5 * (m + worst.b));
            left = simpson(g, worst.a, m, worst.fa, fl, worst.fm);
            right = simpson(g, m, worst.b, worst.fm, fr, worst.fb);
        }
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to shed the drift of the running updates.
    double value = frozen_value;
    double err = frozen_err;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    if (err > 2.0 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
        std::ostringstream os;
        os << "quadrature: resolution limit reached on [" << a << ", " << b << "], error estimate " << err;
        throw QuadratureError(os.str(), err, subdivisions);
    }
    return {value, err, subdivisions};
}

double integral(const Integrand& g, double a, double b, const QuadratureConfig& cfg,
                std::span<const double> breakpoints) {
    return integrate(g, a, b, cfg, breakpoints).value;
}

} // namespace trigsum
