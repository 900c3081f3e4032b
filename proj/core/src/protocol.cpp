#include "carnot/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>

#include "carnot/errors.hpp"
#include "carnot/util.hpp"
#include "json_detail.hpp"

namespace carnot {

MetricRecipe MetricRecipe::kmb(double tau_eq) {
    if (tau_eq < 0) throw invalid_input("MetricRecipe: tau_eq must be nonnegative");
    MetricRecipe r;
    r.kind = Kind::kmb;
    r.tau_eq = tau_eq;
    return r;
}

MetricRecipe MetricRecipe::multiscale(Vector taus) {
    MetricRecipe r;
    r.kind = Kind::multiscale;
    r.taus = std::move(taus);
    return r;
}

MetricRecipe MetricRecipe::lindblad_bosonic(double alpha, double gamma0) {
    if (gamma0 <= 0) throw invalid_input("MetricRecipe: gamma0 must be positive");
    MetricRecipe r;
    r.kind = Kind::lindblad_bosonic;
    r.alpha = alpha;
    r.gamma0 = gamma0;
    return r;
}

namespace {

// Classical rate-matrix metric for commuting diagonal controls:
// m_ij = sym_ij Σ_k (X_i)_kk [Γ^D ∂ω/∂λ_j]_k on the instantaneous spectrum.
ThermoMetric bosonic_metric(const ControlBasis& basis, const Vector& lambda, double alpha,
                            double gamma0) {
    const HermitianOperator G = basis.assemble(lambda);
    if (!G.is_diagonal())
        throw invalid_input("lindblad_bosonic metric: requires commuting diagonal controls");
    const int n = G.dim();
    const int k = basis.size();

    Vector e(n);
    for (int i = 0; i < n; ++i) e(i) = G.matrix()(i, i).real();
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return e(a) < e(b); });

    Vector es(n);
    for (int i = 0; i < n; ++i) es(i) = e(perm[static_cast<size_t>(i)]) - e(perm[0]);
    const RateMatrix rate = rate_matrix_bosonic(es, alpha, gamma0);
    const Vector& p = rate.stationary();

    RealMatrix x(k, n);  // control operators' diagonals in sorted order
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i)
            x(j, i) = basis[j].matrix()(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(i)]).real();

    RealMatrix lag(k, n);
    for (int j = 0; j < k; ++j) {
        const double mean = (x.row(j).transpose().array() * p.array()).sum();
        Vector dj(n);  // ∂ω_k/∂λ_j = -p_k ((x_j)_k - <x_j>)
        for (int i = 0; i < n; ++i) dj(i) = -p(i) * (x(j, i) - mean);
        lag.row(j) = rate.drazin_solve(dj).transpose();
    }

    RealMatrix m(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            m(a, b) = 0.5 * (x.row(a).dot(lag.row(b)) + x.row(b).dot(lag.row(a)));
            m(b, a) = m(a, b);
        }
    return ThermoMetric(std::move(m), MetricSource::lindbladian, lambda);
}

}  // namespace

ThermoMetric evaluate_metric(const MetricRecipe& recipe, const ControlBasis& basis,
                             const Vector& lambda) {
    switch (recipe.kind) {
        case MetricRecipe::Kind::kmb:
            return kmb_metric(basis, lambda, recipe.tau_eq);
        case MetricRecipe::Kind::multiscale:
            return multiscale_metric(basis, lambda, recipe.taus);
        case MetricRecipe::Kind::lindblad_bosonic:
            return bosonic_metric(basis, lambda, recipe.alpha, recipe.gamma0);
    }
    throw invalid_input("evaluate_metric: unknown recipe");
}

ControlProtocol::ControlProtocol(ControlBasis basis, RealMatrix samples, MetricRecipe metric)
    : basis_(std::move(basis)), samples_(std::move(samples)), metric_(std::move(metric)) {
    if (samples_.rows() < 3) throw invalid_input("ControlProtocol: need at least 3 samples");
    if (samples_.cols() != basis_.size())
        throw invalid_input("ControlProtocol: sample width does not match basis size");
    if (!samples_.allFinite()) throw invalid_input("ControlProtocol: samples must be finite");
    if (metric_.kind == MetricRecipe::Kind::multiscale && metric_.taus.size() != basis_.size())
        throw invalid_input("ControlProtocol: multiscale recipe needs one timescale per control");
}

ControlProtocol ControlProtocol::reversed() const {
    return ControlProtocol(basis_, samples_.colwise().reverse(), metric_);
}

namespace {

// Derivative d/ds of sampled data at arbitrary (increasing) s-values by
// three-point Lagrange stencils; second order at the endpoints.
RealMatrix lagrange_derivative(const std::vector<double>& s, const RealMatrix& vals) {
    const int m = static_cast<int>(vals.rows());
    RealMatrix out(m, vals.cols());
    auto stencil = [&](int i0, int i1, int i2, double at) {
        const double x0 = s[static_cast<size_t>(i0)], x1 = s[static_cast<size_t>(i1)],
                     x2 = s[static_cast<size_t>(i2)];
        const double w0 = (2 * at - x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double w1 = (2 * at - x0 - x2) / ((x1 - x0) * (x1 - x2));
        const double w2 = (2 * at - x0 - x1) / ((x2 - x0) * (x2 - x1));
        return (w0 * vals.row(i0) + w1 * vals.row(i1) + w2 * vals.row(i2)).eval();
    };
    for (int i = 0; i < m; ++i) {
        const int a = std::clamp(i - 1, 0, m - 3);
        out.row(i) = stencil(a, a + 1, a + 2, s[static_cast<size_t>(i)]);
    }
    return out;
}

double trapezoid_nonuniform(const std::vector<double>& s, const std::vector<double>& f,
                            std::vector<double>* segments = nullptr) {
    const size_t m = f.size();
    std::vector<double> terms(m - 1);
    for (size_t i = 0; i + 1 < m; ++i) terms[i] = 0.5 * (s[i + 1] - s[i]) * (f[i] + f[i + 1]);
    if (segments) *segments = terms;
    return pairwise_sum(terms);
}

struct StrokeIntegrals {
    double delta_S, Sigma;
    std::vector<double> seg_dS, seg_Sigma;
};

// (ΔS, Σ) on the subgrid picked by `idx`, recomputing λ̇ on that subgrid.
StrokeIntegrals integrate_on(const std::vector<int>& idx, const RealMatrix& samples,
                             const std::vector<RealMatrix>& metrics,
                             const std::vector<Vector>& grads, int grid_size) {
    const int m = static_cast<int>(idx.size());
    std::vector<double> s(static_cast<size_t>(m));
    RealMatrix lam(m, samples.cols());
    for (int i = 0; i < m; ++i) {
        s[static_cast<size_t>(i)] = static_cast<double>(idx[static_cast<size_t>(i)]) / (grid_size - 1);
        lam.row(i) = samples.row(idx[static_cast<size_t>(i)]);
    }
    const RealMatrix lamdot = lagrange_derivative(s, lam);

    std::vector<double> f_dS(static_cast<size_t>(m)), f_Sigma(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int g = idx[static_cast<size_t>(i)];
        const Vector v = lamdot.row(i).transpose();
        f_dS[static_cast<size_t>(i)] = grads[static_cast<size_t>(g)].dot(v);
        f_Sigma[static_cast<size_t>(i)] = v.dot(metrics[static_cast<size_t>(g)] * v);
    }
    StrokeIntegrals out;
    out.delta_S = trapezoid_nonuniform(s, f_dS, &out.seg_dS);
    out.Sigma = trapezoid_nonuniform(s, f_Sigma, &out.seg_Sigma);
    return out;
}

}  // namespace

DissipationSummary integrate_dissipation(const ControlProtocol& p, const IntegrationOptions& opts) {
    const int M = p.grid_size();
    const RealMatrix& samples = p.samples();

    std::vector<RealMatrix> metrics(static_cast<size_t>(M));
    std::vector<Vector> grads(static_cast<size_t>(M));
    double S_start = 0, S_end = 0;
    parallel_for(static_cast<size_t>(M), [&](size_t m) {
        const Vector lambda = samples.row(static_cast<Eigen::Index>(m)).transpose();
        metrics[m] = evaluate_metric(p.metric(), p.basis(), lambda).m;
        grads[m] = entropy_gradient(p.basis(), lambda);
        if (m == 0) S_start = entropy(gibbs_point(p.basis().assemble(lambda)));
        if (m + 1 == static_cast<size_t>(M)) S_end = entropy(gibbs_point(p.basis().assemble(lambda)));
    });

    std::vector<int> full(static_cast<size_t>(M));
    std::iota(full.begin(), full.end(), 0);
    const StrokeIntegrals fine = integrate_on(full, samples, metrics, grads, M);

    // Richardson: redo on the stride-2 subgrid (keeping the final point) and
    // attribute |I_h - I_2h|/3 to the fine-grid error. Grids with fewer than
    // three coarse points carry no estimate.
    std::vector<int> coarse;
    for (int i = 0; i < M; i += 2) coarse.push_back(i);
    if (coarse.back() != M - 1) coarse.push_back(M - 1);

    DissipationSummary out;
    out.delta_S = fine.delta_S;
    out.delta_S_exact = S_end - S_start;
    out.Sigma = fine.Sigma;
    if (coarse.size() >= 3) {
        const StrokeIntegrals rough = integrate_on(coarse, samples, metrics, grads, M);
        out.delta_S_error = std::abs(fine.delta_S - rough.delta_S) / 3.0;
        out.Sigma_error = std::abs(fine.Sigma - rough.Sigma) / 3.0;
    }
    out.per_segment_delta_S = fine.seg_dS;
    out.per_segment_Sigma = fine.seg_Sigma;

    const double dS_scale = std::max({std::abs(out.delta_S), std::abs(out.delta_S_exact), 1e-12});
    const double sig_scale = std::max(std::abs(out.Sigma), 1e-12);
    if (out.delta_S_error > opts.rel_tol * dS_scale || out.Sigma_error > opts.rel_tol * sig_scale) {
        const double excess = std::max(out.delta_S_error / (opts.rel_tol * dS_scale),
                                       out.Sigma_error / (opts.rel_tol * sig_scale));
        const int suggested = static_cast<int>(std::ceil((M - 1) * std::sqrt(excess))) + 1;
        throw resolution_error(
            "integrate_dissipation: grid too coarse for rel_tol=" + std::to_string(opts.rel_tol) +
                " (suggest M >= " + std::to_string(suggested) + ")",
            suggested);
    }
    // Gradient quadrature must agree with the exact endpoint entropies.
    if (std::abs(out.delta_S - out.delta_S_exact) >
        10.0 * out.delta_S_error + opts.rel_tol * dS_scale + 1e-10)
        throw numerical_error("integrate_dissipation: entropy cross-check failed");
    return out;
}

ControlProtocol proportional_cycle(const HermitianOperator& G0, double epsilon, int M,
                                   CycleShape shape, double tau_eq) {
    if (M < 3) throw invalid_input("proportional_cycle: M must be at least 3");
    if (!std::isfinite(epsilon)) throw invalid_input("proportional_cycle: epsilon must be finite");
    RealMatrix samples(M, 1);
    for (int m = 0; m < M; ++m) {
        const double s = static_cast<double>(m) / (M - 1);
        double g = 0;
        switch (shape) {
            case CycleShape::raised_cosine: g = 0.5 * (1.0 - std::cos(M_PI * s)); break;
            case CycleShape::linear: g = s; break;
            case CycleShape::smoothstep: g = s * s * (3.0 - 2.0 * s); break;
        }
        samples(m, 0) = 1.0 + epsilon * g;
    }
    return ControlProtocol(ControlBasis({G0}, {"G0"}), std::move(samples),
                           MetricRecipe::kmb(tau_eq));
}

std::string ControlProtocol::to_json() const {
    nlohmann::json j;
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : basis_.operators()) ops.push_back(detail::hermitian_to_json(op));
    j["basis"] = std::move(ops);
    j["labels"] = basis_.labels();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < samples_.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < samples_.cols(); ++c) row.push_back(samples_(r, c));
        rows.push_back(std::move(row));
    }
    j["samples"] = std::move(rows);
    nlohmann::json met;
    switch (metric_.kind) {
        case MetricRecipe::Kind::kmb:
            met["source"] = "kmb";
            met["tau_eq"] = metric_.tau_eq;
            break;
        case MetricRecipe::Kind::multiscale: {
            met["source"] = "multiscale";
            std::vector<double> taus(metric_.taus.data(), metric_.taus.data() + metric_.taus.size());
            met["taus"] = taus;
            break;
        }
        case MetricRecipe::Kind::lindblad_bosonic:
            met["source"] = "lindblad";
            met["model"] = {{"kind", "bosonic_rates"}, {"alpha", metric_.alpha}, {"gamma0", metric_.gamma0}};
            break;
    }
    j["metric"] = std::move(met);
    return j.dump(2);
}

ControlProtocol ControlProtocol::from_json(const std::string& text) {
    std::istringstream in(text);
    return from_json_stream(in);
}

ControlProtocol ControlProtocol::from_json_stream(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("protocol JSON: ") + e.what());
    }
    try {
        std::vector<HermitianOperator> ops;
        for (const auto& jop : j.at("basis")) ops.push_back(detail::hermitian_from_json(jop));
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        ControlBasis basis(std::move(ops), std::move(labels));

        const auto& rows = j.at("samples");
        RealMatrix samples(rows.size(), basis.size());
        for (size_t r = 0; r < rows.size(); ++r) {
            const auto& row = rows.at(r);
            if (static_cast<int>(row.size()) != basis.size())
                throw invalid_input("protocol JSON: sample row width mismatch");
            for (int c = 0; c < basis.size(); ++c)
                samples(static_cast<Eigen::Index>(r), c) = row.at(static_cast<size_t>(c)).get<double>();
        }

        const auto& met = j.at("metric");
        const std::string source = met.at("source").get<std::string>();
        MetricRecipe recipe;
        if (source == "kmb") {
            recipe = MetricRecipe::kmb(met.at("tau_eq").get<double>());
        } else if (source == "multiscale") {
            const auto taus = met.at("taus").get<std::vector<double>>();
            recipe = MetricRecipe::multiscale(Eigen::Map<const Vector>(taus.data(), static_cast<Eigen::Index>(taus.size())));
        } else if (source == "lindblad") {
            const auto& model = met.at("model");
            if (model.at("kind").get<std::string>() != "bosonic_rates")
                throw invalid_input("protocol JSON: unknown lindblad model kind");
            recipe = MetricRecipe::lindblad_bosonic(model.at("alpha").get<double>(),
                                                    model.at("gamma0").get<double>());
        } else {
            throw invalid_input("protocol JSON: unknown metric source \"" + source + "\"");
        }
        return ControlProtocol(std::move(basis), std::move(samples), std::move(recipe));
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("protocol JSON: ") + e.what());
    }
}

}  // namespace carnot
