#include "trigsum/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "trigsum/parallel.hpp"

namespace trigsum {

Modulus::Modulus(std::string name, std::map<std::string, double> params, Eval eval)
    : name_(std::move(name)), params_(std::move(params)), eval_(std::move(eval)) {
    if (!eval_) throw std::invalid_argument("Modulus: empty evaluator");
}

std::string Modulus::id() const {
    if (name_ == "power") {
        std::ostringstream os;
        os << "power:" << params_.at("alpha");
        return os.str();
    }
    return name_;
}

Modulus Modulus::power(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("power modulus: alpha must be > 0");
    return Modulus("power", {{"alpha", alpha}}, [alpha](double d) { return d <= 0.0 ? 0.0 : std::pow(d, alpha); });
}

Modulus Modulus::log_lipschitz() {
    return Modulus("log", {}, [](double d) { return d <= 0.0 ? 0.0 : d * (1.0 + std::log(kTwoPi / d)); });
}

Modulus parse_modulus(const std::string& id) {
    if (id == "log") return Modulus::log_lipschitz();
    if (id.rfind("power:", 0) == 0) {
        const std::string s = id.substr(6);
        std::size_t pos = 0;
        double alpha = 0.0;
        try {
            alpha = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != s.size()) throw std::invalid_argument("bad modulus exponent in '" + id + "'");
        return Modulus::power(alpha);
    }
    throw std::invalid_argument("unknown modulus '" + id + "'");
}

ModulusAxiomReport check_modulus_axioms(const Modulus& omega, long pairs, std::uint64_t seed) {
    ModulusAxiomReport rep;
    rep.zero_at_origin = std::abs(omega(0.0)) <= 1e-15;

    constexpr int kGrid = 4096;
    std::vector<double> grid(kGrid + 1), vals(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
        grid[i] = kTwoPi * i / kGrid;
        vals[i] = omega(grid[i]);
    }
    std::vector<std::pair<double, int>> jumps;
    for (int i = 0; i < kGrid; ++i) {
        if (vals[i + 1] < vals[i] - 1e-13 * std::abs(vals[i])) ++rep.monotonicity_violations;
        jumps.emplace_back(std::abs(vals[i + 1] - vals[i]), i);
    }
    // A jump survives bisection; a continuous function's increments shrink.
    std::partial_sort(jumps.begin(), jumps.begin() + 8, jumps.end(), std::greater<>());
    for (int c = 0; c < 8; ++c) {
        double lo = grid[jumps[c].second];
        double hi = grid[jumps[c].second + 1];
        const double initial = jumps[c].first;
        double diff = initial;
        for (int level = 0; level < 30; ++level) {
            const double mid = 0.5 * (lo + hi);
            const double dl = std::abs(omega(mid) - omega(lo));
            const double dr = std::abs(omega(hi) - omega(mid));
            if (dl >= dr) {
                hi = mid;
                diff = dl;
            } else {
                lo = mid;
                diff = dr;
            }
        }
        if (diff > 1e-12 && diff > 0.5 * initial) ++rep.continuity_violations;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long i = 0; i < pairs; ++i) {
        double d1 = kTwoPi * unit(rng);
        double d2 = kTwoPi * unit(rng);
        if (d1 > d2) std::swap(d1, d2);
        if (d1 <= 0.0) continue;
        ++rep.pairs_checked;
        const double w1 = omega(d1);
        const double w2 = omega(d2);
        if (d1 + d2 <= kTwoPi) {
            const double w12 = omega(d1 + d2);
            if (w12 > (w1 + w2) * (1.0 + 1e-12) + 1e-15) ++rep.subadditivity_violations;
        }
        if (w2 / d2 > 2.0 * w1 / d1 * (1.0 + 1e-12) + 1e-15) ++rep.quasi_monotonicity_violations;
    }
    return rep;
}

std::string to_string(DifferenceSide side) { return side == DifferenceSide::phi ? "phi" : "psi"; }

DifferenceSide parse_side(const std::string& s) {
    if (s == "phi") return DifferenceSide::phi;
    if (s == "psi") return DifferenceSide::psi;
    throw std::invalid_argument("unknown difference side '" + s + "' (expected phi or psi)");
}

double difference_norm(const PeriodicFunction& f, double t, double p, DifferenceSide side,
                       const QuadratureConfig& cfg) {
    const auto bps = shifted_breakpoints(f, t);
    if (side == DifferenceSide::phi) return lp_norm([&](double x) { return phi(f, x, t); }, p, cfg, bps);
    return lp_norm([&](double x) { return psi(f, x, t); }, p, cfg, bps);
}

ModulusEstimate weighted_modulus(const PeriodicFunction& f, double delta, double beta, int r, double p,
                                 DifferenceSide side, const QuadratureConfig& cfg, int grid_points) {
    if (!(delta > 0.0 && delta <= kTwoPi * (1.0 + 1e-15)))
        throw std::invalid_argument("weighted_modulus: delta must lie in (0, 2 pi]");
    if (!(beta >= 0.0)) throw std::invalid_argument("weighted_modulus: beta must be >= 0");
    if (r < 1) throw std::invalid_argument("weighted_modulus: r must be >= 1");
    if (grid_points < 512) throw std::invalid_argument("weighted_modulus: at least 512 grid points");

    auto g = [&](double t) {
        const double w = beta == 0.0 ? 1.0 : std::pow(std::abs(std::sin(0.5 * r * t)), beta);
        return w == 0.0 ? 0.0 : w * difference_norm(f, t, p, side, cfg);
    };
    const int N = grid_points;
    std::vector<double> vals(static_cast<std::size_t>(N));
    const double h = delta / (N - 1);
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) { vals[i] = g(h * static_cast<double>(i)); });
    const auto best = std::max_element(vals.begin(), vals.end());
    const long ib = best - vals.begin();

    ModulusEstimate est;
    est.lower_bound = *best;
    est.estimate = *best;
    est.argmax = h * ib;
    est.resolution = h;

    // Golden-section maximisation on the bracketing cells.
    double lo = h * std::max(ib - 1, 0L);
    double hi = h * std::min(ib + 1, static_cast<long>(N - 1));
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double g1 = g(x1), g2 = g(x2);
    for (int it = 0; it < 40 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        if (g1 < g2) {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + kInvPhi * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - kInvPhi * (hi - lo);
            g1 = g(x1);
        }
    }
    for (auto [t, v] : {std::pair{x1, g1}, std::pair{x2, g2}}) {
        if (v > est.estimate) {
            est.estimate = v;
            est.argmax = t;
        }
    }
    return est;
}

SweepJudgement judge_sweep(const std::vector<double>& scale, const std::vector<double>& ratio, double slope_threshold,
                           double noise_floor) {
    if (scale.size() != ratio.size()) throw std::invalid_argument("judge_sweep: size mismatch");
    SweepJudgement j;
    if (ratio.empty()) return j;
    j.max_ratio = -std::numeric_limits<double>::infinity();
    j.min_ratio = std::numeric_limits<double>::infinity();
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        const double v = ratio[i];
        if (!std::isfinite(v)) j.bounded = false;
        j.max_ratio = std::max(j.max_ratio, v);
        j.min_ratio = std::min(j.min_ratio, v);
        if (std::isfinite(v) && v > noise_floor && scale[i] > 0.0) {
            lx.push_back(std::log(scale[i]));
            ly.push_back(std::log(v));
        }
    }
    if (lx.size() >= 3) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        j.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    if (j.slope > slope_threshold) j.bounded = false;
    return j;
}

MembershipReport class_membership(const PeriodicFunction& f, const Modulus& omega, double beta, int r, double p,
                                  DifferenceSide side, const std::vector<double>& delta_grid,
                                  const QuadratureConfig& cfg) {
    MembershipReport rep;
    std::vector<double> inv;
    for (double d : delta_grid) {
        if (!(d > 0.0 && d <= kTwoPi * (1.0 + 1e-15)))
            throw std::invalid_argument("class_membership: grid deltas must lie in (0, 2 pi]");
        const double w = omega(d);
        if (!(w > 0.0)) {
            std::ostringstream os;
            os << "class_membership: modulus '" << omega.id() << "' vanishes at delta=" << d;
            throw std::domain_error(os.str());
        }
        const double m = weighted_modulus(f, d, beta, r, p, side, cfg).estimate;
        rep.deltas.push_back(d);
        rep.moduli.push_back(m);
        rep.ratios.push_back(m / w);
        inv.push_back(1.0 / d);
    }
    rep.judgement = judge_sweep(inv, rep.ratios);
    return rep;
}

} // namespace trigsum
