#include "trigsum/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trigsum {

double wrap_to_q(double x) {
    double y = std::fmod(x + kPi, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    y -= kPi;
    return y >= kPi ? -kPi : y;
}

namespace {

std::vector<double> normalized_breakpoints(std::vector<double> pts) {
    for (double& b : pts) b = wrap_to_q(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Smoothness weaker(const Smoothness& a, const Smoothness& b) {
    using K = Smoothness::Kind;
    auto rank = [](K k) {
        switch (k) {
        case K::analytic: return 0;
        case K::lipschitz: return 1;
        case K::piecewise_smooth: return 2;
        case K::bounded_variation: return 3;
        }
        return 3;
    };
    if (a.kind == K::lipschitz && b.kind == K::lipschitz) return Smoothness::lipschitz(std::min(a.alpha, b.alpha));
    return rank(a.kind) >= rank(b.kind) ? a : b;
}

} // namespace

PeriodicFunction::PeriodicFunction(std::string name, Eval eval, Smoothness smoothness,
                                   std::vector<double> breakpoints, CoeffFn analytic_coeffs,
                                   std::optional<double> coefficient_bound)
    : name_(std::move(name)), eval_(std::move(eval)), smoothness_(smoothness),
      breakpoints_(normalized_breakpoints(std::move(breakpoints))), coeffs_(std::move(analytic_coeffs)),
      coeff_bound_(coefficient_bound) {
    if (!eval_) throw std::invalid_argument("PeriodicFunction: empty evaluator");
}

Coefficients PeriodicFunction::analytic_coeffs(int nu) const {
    if (!coeffs_) throw std::logic_error("PeriodicFunction '" + name_ + "' has no analytic coefficients");
    if (nu < 0) throw std::invalid_argument("coefficient index must be >= 0");
    return coeffs_(nu);
}

PeriodicFunction PeriodicFunction::linear_combination(double alpha, const PeriodicFunction& f, double beta,
                                                      const PeriodicFunction& g) {
    auto fe = f.eval_;
    auto ge = g.eval_;
    CoeffFn coeffs;
    if (f.coeffs_ && g.coeffs_) {
        coeffs = [alpha, beta, fc = f.coeffs_, gc = g.coeffs_](int nu) {
            const Coefficients u = fc(nu);
            const Coefficients v = gc(nu);
            return Coefficients{alpha * u.a + beta * v.a, alpha * u.b + beta * v.b};
        };
    }
    std::optional<double> bound;
    if (f.coeff_bound_ && g.coeff_bound_)
        bound = std::abs(alpha) * *f.coeff_bound_ + std::abs(beta) * *g.coeff_bound_;
    std::vector<double> bps = f.breakpoints_;
    bps.insert(bps.end(), g.breakpoints_.begin(), g.breakpoints_.end());
    return PeriodicFunction("(" + f.name_ + ")+(" + g.name_ + ")",
                            [alpha, beta, fe, ge](double x) { return alpha * fe(x) + beta * ge(x); },
                            weaker(f.smoothness_, g.smoothness_), std::move(bps), std::move(coeffs), bound);
}

Coefficients fourier_coefficient(const PeriodicFunction& f, int nu, const QuadratureConfig& cfg) {
    if (nu < 0) throw std::invalid_argument("fourier_coefficient: nu must be >= 0");
    const auto& bps = f.breakpoints();
    const double a = integral([&](double t) { return f(t) * std::cos(nu * t); }, -kPi, kPi, cfg, bps) / kPi;
    const double b =
        nu == 0 ? 0.0 : integral([&](double t) { return f(t) * std::sin(nu * t); }, -kPi, kPi, cfg, bps) / kPi;
    return {a, b};
}

Coefficients coefficient(const PeriodicFunction& f, int nu, const QuadratureConfig& cfg) {
    return f.has_analytic_coeffs() ? f.analytic_coeffs(nu) : fourier_coefficient(f, nu, cfg);
}

double lp_norm(const std::function<double(double)>& g, double p, const QuadratureConfig& cfg,
               const std::vector<double>& breakpoints) {
    if (!(p >= 1.0 && p <= 8.0)) throw std::invalid_argument("lp_norm: p must lie in [1, 8]");
    const bool square = p == 2.0;
    const double v = integral(
        [&](double t) {
            const double y = std::abs(g(t));
            return square ? y * y : std::pow(y, p);
        },
        -kPi, kPi, cfg, breakpoints);
    return std::pow(std::max(v, 0.0), 1.0 / p);
}

double phi(const PeriodicFunction& f, double x, double t) {
    if (t == 0.0) return 0.0;
    return f(x + t) + f(x - t) - 2.0 * f(x);
}

double psi(const PeriodicFunction& f, double x, double t) {
    if (t == 0.0) return 0.0;
    return f(x + t) - f(x - t);
}

std::vector<double> difference_breakpoints(const PeriodicFunction& f, double x, double lo, double hi) {
    std::vector<double> out;
    for (double b : f.breakpoints()) {
        for (double base : {b - x, x - b}) {
            const double j0 = std::ceil((lo - base) / kTwoPi);
            for (double j = j0; base + kTwoPi * j <= hi; j += 1.0) out.push_back(base + kTwoPi * j);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> shifted_breakpoints(const PeriodicFunction& f, double t) {
    std::vector<double> out;
    for (double b : f.breakpoints())
        for (double s : {b, b - t, b + t}) out.push_back(wrap_to_q(s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Corpus ------------------------------------------------------------------

PeriodicFunction constant_function(double c) {
    return PeriodicFunction(
        c == 1.0 ? "const1" : "const:" + std::to_string(c), [c](double) { return c; }, Smoothness::analytic(), {},
        [c](int nu) { return nu == 0 ? Coefficients{2.0 * c, 0.0} : Coefficients{}; }, 0.0);
}

PeriodicFunction cos_harmonic(int k) {
    if (k < 0) throw std::invalid_argument("cos_harmonic: k must be >= 0");
    return PeriodicFunction(
        "coskx:" + std::to_string(k), [k](double x) { return std::cos(k * x); }, Smoothness::analytic(), {},
        [k](int nu) {
            if (nu != k) return Coefficients{};
            return Coefficients{k == 0 ? 2.0 : 1.0, 0.0};
        },
        1.0);
}

PeriodicFunction sin_harmonic(int k) {
    if (k < 1) throw std::invalid_argument("sin_harmonic: k must be >= 1");
    return PeriodicFunction(
        "sinkx:" + std::to_string(k), [k](double x) { return std::sin(k * x); }, Smoothness::analytic(), {},
        [k](int nu) { return nu == k ? Coefficients{0.0, 1.0} : Coefficients{}; }, 1.0);
}

PeriodicFunction sawtooth() {
    return PeriodicFunction(
        "sawtooth",
        [](double x) {
            double y = std::fmod(x, kTwoPi);
            if (y < 0.0) y += kTwoPi;
            if (y == 0.0 || y == kTwoPi) return 0.0;
            return 0.5 * (kPi - y);
        },
        Smoothness::bounded_variation(), {0.0},
        [](int nu) { return nu == 0 ? Coefficients{} : Coefficients{0.0, 1.0 / nu}; }, 1.0);
}

PeriodicFunction triangle_wave() {
    return PeriodicFunction(
        "triangle", [](double x) { return kPi * kPi / 8.0 - kPi * std::abs(wrap_to_q(x)) / 4.0; },
        Smoothness::lipschitz(1.0), {-kPi, 0.0},
        [](int nu) {
            if (nu % 2 == 0) return Coefficients{};
            return Coefficients{1.0 / (static_cast<double>(nu) * nu), 0.0};
        },
        1.0);
}

PeriodicFunction abs_sin() {
    return PeriodicFunction(
        "abssin", [](double x) { return std::abs(std::sin(x)); }, Smoothness::lipschitz(1.0), {-kPi, 0.0},
        [](int nu) {
            if (nu % 2 == 1) return Coefficients{};
            const double k = nu / 2;
            return Coefficients{-4.0 / (kPi * (4.0 * k * k - 1.0)), 0.0};
        },
        4.0 / (3.0 * kPi));
}

std::vector<PeriodicFunction> builtin_corpus() {
    return {constant_function(1.0), cos_harmonic(1), cos_harmonic(3), sin_harmonic(1), sin_harmonic(2),
            sawtooth(),             triangle_wave(), abs_sin()};
}

PeriodicFunction corpus_function(const std::string& name) {
    auto suffix = [&](const std::string& prefix) -> std::optional<std::string> {
        if (name.rfind(prefix, 0) == 0) return name.substr(prefix.size());
        return std::nullopt;
    };
    auto to_int = [&](const std::string& s) {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad integer in function name '" + name + "'");
        return v;
    };
    try {
        if (name == "const1") return constant_function(1.0);
        if (name == "sawtooth") return sawtooth();
        if (name == "triangle") return triangle_wave();
        if (name == "abssin") return abs_sin();
        if (auto s = suffix("const:")) {
            std::size_t pos = 0;
            const double c = std::stod(*s, &pos);
            if (pos != s->size()) throw std::invalid_argument("bad constant");
            return constant_function(c);
        }
        if (auto s = suffix("coskx:")) return cos_harmonic(to_int(*s));
        if (auto s = suffix("sinkx:")) return sin_harmonic(to_int(*s));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid function name '" + name + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("invalid function name '" + name + "'");
    }
    throw std::invalid_argument("unknown function '" + name + "'");
}

} // namespace trigsum
