#include "carnot/metrics.hpp"

#include <cmath>

#include "carnot/errors.hpp"

namespace carnot {

ControlBasis::ControlBasis(std::vector<HermitianOperator> operators, std::vector<std::string> labels)
    : operators_(std::move(operators)), labels_(std::move(labels)) {
    if (operators_.empty()) throw invalid_input("ControlBasis: need at least one operator");
    const int d = operators_.front().dim();
    for (const auto& op : operators_)
        if (op.dim() != d) throw invalid_input("ControlBasis: operators must share one dimension");
    if (labels_.empty()) {
        for (size_t j = 0; j < operators_.size(); ++j) labels_.push_back("X" + std::to_string(j));
    } else if (labels_.size() != operators_.size()) {
        throw invalid_input("ControlBasis: label count mismatch");
    }

    // Linear independence via the Hilbert-Schmidt Gram matrix.
    const int k = size();
    RealMatrix gram(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) gram(a, b) = operators_[a].hs_inner(operators_[b]);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 0 || hi / lo >= 1e12)
        throw invalid_input("ControlBasis: operators are (numerically) linearly dependent");
}

HermitianOperator ControlBasis::assemble(const Vector& lambda) const {
    if (lambda.size() != size()) throw invalid_input("ControlBasis::assemble: length mismatch");
    Matrix g = Matrix::Zero(dim(), dim());
    for (int j = 0; j < size(); ++j) g += lambda(j) * operators_[static_cast<size_t>(j)].matrix();
    return HermitianOperator(std::move(g));
}

ThermoMetric::ThermoMetric(RealMatrix m_in, MetricSource source, Vector point)
    : m(std::move(m_in)), source(source), point(std::move(point)) {
    const double scale = std::max(1.0, m.norm());
    if ((m - m.transpose()).norm() > 1e-10 * scale)
        throw numerical_error("ThermoMetric: matrix is not symmetric");
    m = 0.5 * (m + m.transpose().eval());
    if (min_eigenvalue() < -1e-9 * m.norm())
        throw numerical_error("ThermoMetric: matrix is not positive semidefinite");
}

double ThermoMetric::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
    return es.eigenvalues().minCoeff();
}

namespace {

RealMatrix covariance_matrix(const ControlBasis& basis, const GibbsPoint& point) {
    const int k = basis.size();
    RealMatrix cov(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            cov(a, b) = kmb_covariance(point, basis[a], basis[b]);
            cov(b, a) = cov(a, b);
        }
    return cov;
}

}  // namespace

ThermoMetric kmb_metric(const ControlBasis& basis, const Vector& lambda, double tau_eq) {
    if (lambda.size() != basis.size()) throw invalid_input("kmb_metric: basis/lambda length mismatch");
    if (tau_eq < 0) throw invalid_input("kmb_metric: tau_eq must be nonnegative");
    const GibbsPoint point(basis.assemble(lambda));
    return ThermoMetric(tau_eq * covariance_matrix(basis, point),
                        MetricSource::kmb_single_timescale, lambda);
}

ThermoMetric multiscale_metric(const ControlBasis& basis, const Vector& lambda,
                               const Vector& taus) {
    if (lambda.size() != basis.size() || taus.size() != basis.size())
        throw invalid_input("multiscale_metric: basis/lambda/taus length mismatch");
    if ((taus.array() <= 0).any()) throw invalid_input("multiscale_metric: timescales must be positive");
    const GibbsPoint point(basis.assemble(lambda));
    RealMatrix cov = covariance_matrix(basis, point);
    const int k = basis.size();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) cov(a, b) *= 0.5 * (taus(a) + taus(b));
    return ThermoMetric(std::move(cov), MetricSource::multi_timescale, lambda);
}

ThermoMetric lindblad_metric(const ControlBasis& basis, const Vector& lambda,
                             const Superoperator& L) {
    if (lambda.size() != basis.size())
        throw invalid_input("lindblad_metric: basis/lambda length mismatch");
    const GibbsPoint point(basis.assemble(lambda));
    if (!L.fixed_point())
        throw inconsistent_generator_error("lindblad_metric: generator has no declared fixed point");
    if ((L.fixed_point()->state() - point.state()).norm() > 1e-8)
        throw inconsistent_generator_error(
            "lindblad_metric: fixed point of L does not match the Gibbs state of the control point");

    const int k = basis.size();
    std::vector<HermitianOperator> lags;
    lags.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) lags.push_back(drazin_apply(L, j_omega(point, basis[j])));

    RealMatrix m(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            const double ab = basis[a].hs_inner(lags[static_cast<size_t>(b)]);
            const double ba = basis[b].hs_inner(lags[static_cast<size_t>(a)]);
            m(a, b) = 0.5 * (ab + ba);
            m(b, a) = m(a, b);
        }
    return ThermoMetric(std::move(m), MetricSource::lindbladian, lambda);
}

Vector entropy_gradient(const ControlBasis& basis, const Vector& lambda) {
    if (lambda.size() != basis.size())
        throw invalid_input("entropy_gradient: basis/lambda length mismatch");
    const GibbsPoint point(basis.assemble(lambda));
    Vector s(basis.size());
    for (int j = 0; j < basis.size(); ++j)
        s(j) = -kmb_covariance(point, point.generator(), basis[j]);
    return s;
}

Vector entropy_gradient_classical(const ControlBasis& basis, const Vector& lambda) {
    if (lambda.size() != basis.size())
        throw invalid_input("entropy_gradient_classical: basis/lambda length mismatch");
    const GibbsPoint point(basis.assemble(lambda));
    const Matrix omega = point.state();
    const Matrix& g = point.generator().matrix();
    const double mean_g = (omega * g).trace().real();
    const Matrix weight = mean_g * omega - g * omega;
    Vector s(basis.size());
    for (int j = 0; j < basis.size(); ++j)
        s(j) = (weight * basis[j].matrix()).trace().real();
    return s;
}

}  // namespace carnot
