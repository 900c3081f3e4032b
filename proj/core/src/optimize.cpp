#include "carnot/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "carnot/errors.hpp"

namespace carnot {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double guarded(const ScalarObjective& f, const Vector& x, int& evals) {
    ++evals;
    try {
        const double v = f(x);
        return std::isfinite(v) ? v : kNegInf;
    } catch (const error&) {
        return kNegInf;
    }
}

}  // namespace

OptimumResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol, int max_iter) {
    if (!(hi > lo)) throw invalid_input("golden_section_maximize: empty interval");
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    int evals = 2;
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    OptimumResult out;
    out.argmax = Vector::Constant(1, 0.5 * (a + b));
    out.value = f(out.argmax(0));
    out.evaluations = evals + 1;
    return out;
}

OptimumResult nelder_mead_maximize(const ScalarObjective& f, const Vector& x0, double step,
                                   double tol, int max_iter) {
    const int k = static_cast<int>(x0.size());
    int evals = 0;
    std::vector<Vector> simplex;
    std::vector<double> val;
    simplex.push_back(x0);
    val.push_back(guarded(f, x0, evals));
    for (int j = 0; j < k; ++j) {
        Vector v = x0;
        v(j) += (v(j) != 0.0 ? std::abs(v(j)) : 1.0) * step;
        simplex.push_back(v);
        val.push_back(guarded(f, v, evals));
    }

    auto order = [&] {
        std::vector<int> idx(simplex.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[static_cast<size_t>(a)] > val[static_cast<size_t>(b)]; });
        std::vector<Vector> s2;
        std::vector<double> v2;
        for (int i : idx) {
            s2.push_back(simplex[static_cast<size_t>(i)]);
            v2.push_back(val[static_cast<size_t>(i)]);
        }
        simplex.swap(s2);
        val.swap(v2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        double spread = 0.0;
        for (int j = 1; j <= k; ++j)
            spread = std::max(spread, (simplex[static_cast<size_t>(j)] - simplex[0]).cwiseAbs().maxCoeff());
        const double fspread = std::abs(val[0] - val[static_cast<size_t>(k)]);
        if (spread < tol * (1.0 + simplex[0].cwiseAbs().maxCoeff()) &&
            fspread < tol * (1.0 + std::abs(val[0])))
            break;

        Vector centroid = Vector::Zero(k);
        for (int j = 0; j < k; ++j) centroid += simplex[static_cast<size_t>(j)];
        centroid /= k;
        const Vector& worst = simplex[static_cast<size_t>(k)];

        const Vector refl = centroid + (centroid - worst);
        const double frefl = guarded(f, refl, evals);
        if (frefl > val[0]) {
            const Vector expa = centroid + 2.0 * (centroid - worst);
            const double fexpa = guarded(f, expa, evals);
            if (fexpa > frefl) {
                simplex[static_cast<size_t>(k)] = expa;
                val[static_cast<size_t>(k)] = fexpa;
            } else {
                simplex[static_cast<size_t>(k)] = refl;
                val[static_cast<size_t>(k)] = frefl;
            }
        } else if (frefl > val[static_cast<size_t>(k - 1)]) {
            simplex[static_cast<size_t>(k)] = refl;
            val[static_cast<size_t>(k)] = frefl;
        } else {
            const Vector contr = centroid + 0.5 * (worst - centroid);
            const double fcontr = guarded(f, contr, evals);
            if (fcontr > val[static_cast<size_t>(k)]) {
                simplex[static_cast<size_t>(k)] = contr;
                val[static_cast<size_t>(k)] = fcontr;
            } else {
                for (int j = 1; j <= k; ++j) {
                    simplex[static_cast<size_t>(j)] = simplex[0] + 0.5 * (simplex[static_cast<size_t>(j)] - simplex[0]);
                    val[static_cast<size_t>(j)] = guarded(f, simplex[static_cast<size_t>(j)], evals);
                }
            }
        }
    }
    order();
    OptimumResult out;
    out.argmax = simplex[0];
    out.value = val[0];
    out.evaluations = evals;
    return out;
}

namespace {

bool lex_less(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

}  // namespace

OptimumResult multi_start_maximize(const ScalarObjective& f, int k, const OptimizerConfig& cfg) {
    if (k < 1) throw invalid_input("multi_start_maximize: k must be >= 1");
    if (k == 1) {
        auto f1 = [&](double x) {
            Vector v = Vector::Constant(1, x);
            int dummy = 0;
            return guarded(f, v, dummy);
        };
        OptimumResult res = golden_section_maximize(f1, cfg.lower, cfg.upper, cfg.tol, cfg.max_iter);
        if (!std::isfinite(res.value))
            throw unbounded_error("multi_start_maximize: objective invalid on the whole bracket");
        return res;
    }

    // Log-spaced lattice: per-coordinate levels combined into a product grid
    // covering roughly cfg.starts points (permutation symmetric).
    const int levels = std::max(2, static_cast<int>(std::round(std::pow(double(cfg.starts), 1.0 / k))));
    std::vector<double> marks(static_cast<size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        const double t = (levels == 1) ? 0.5 : static_cast<double>(l) / (levels - 1);
        marks[static_cast<size_t>(l)] = cfg.lower * std::pow(cfg.upper / cfg.lower, 0.15 + 0.7 * t);
    }
    std::vector<Vector> starts;
    std::vector<int> digit(static_cast<size_t>(k), 0);
    while (true) {
        Vector x(k);
        for (int j = 0; j < k; ++j) x(j) = marks[static_cast<size_t>(digit[static_cast<size_t>(j)])];
        starts.push_back(x);
        int j = 0;
        while (j < k && ++digit[static_cast<size_t>(j)] == levels) digit[static_cast<size_t>(j++)] = 0;
        if (j == k) break;
    }
    if (cfg.seed != 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> jitter(-0.05, 0.05);
        for (auto& x : starts)
            for (int j = 0; j < k; ++j) x(j) *= std::exp(jitter(rng));
    }

    OptimumResult best;
    best.value = kNegInf;
    int evals = 0;
    for (const auto& x0 : starts) {
        OptimumResult res = nelder_mead_maximize(f, x0, 0.25, cfg.tol, cfg.max_iter);
        evals += res.evaluations;
        if (res.value > best.value ||
            (res.value == best.value && best.argmax.size() > 0 && lex_less(res.argmax, best.argmax))) {
            best = res;
        }
    }
    best.evaluations = evals;
    if (!std::isfinite(best.value))
        throw unbounded_error("multi_start_maximize: all starts diverged or were infeasible");
    return best;
}

}  // namespace carnot
