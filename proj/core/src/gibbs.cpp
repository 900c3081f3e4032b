#include "carnot/gibbs.hpp"

#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/util.hpp"

namespace carnot {

GibbsPoint::GibbsPoint(const HermitianOperator& generator) : generator_(generator) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(generator.matrix());
    if (solver.info() != Eigen::Success)
        throw numerical_error("GibbsPoint: eigendecomposition failed");
    eigvals_ = solver.eigenvalues();
    eigvecs_ = solver.eigenvectors();

    const int n = dim();
    const double gmin = eigvals_.minCoeff();
    Vector weights(n);
    for (int i = 0; i < n; ++i) weights(i) = std::exp(-(eigvals_(i) - gmin));
    const double z_shifted = weights.sum();
    logZ_ = -gmin + std::log(z_shifted);
    populations_ = weights / z_shifted;

    double s = 0.0, mean = 0.0, mean2 = 0.0;
    for (int i = 0; i < n; ++i) {
        s -= populations_(i) * std::log(populations_(i));
        mean += populations_(i) * eigvals_(i);
        mean2 += populations_(i) * eigvals_(i) * eigvals_(i);
    }
    entropy_ = s;
    heat_capacity_ = std::max(0.0, mean2 - mean * mean);
}

Matrix GibbsPoint::state() const {
    return eigvecs_ * populations_.asDiagonal() * eigvecs_.adjoint();
}

double GibbsPoint::expectation(const HermitianOperator& A) const {
    if (A.dim() != dim()) throw invalid_input("GibbsPoint::expectation: dimension mismatch");
    return (to_eigenbasis(A).diagonal().real().array() * populations_.array()).sum();
}

Matrix GibbsPoint::to_eigenbasis(const HermitianOperator& A) const {
    return eigvecs_.adjoint() * A.matrix() * eigvecs_;
}

GibbsPoint gibbs_point(const HermitianOperator& G) { return GibbsPoint(G); }

namespace detail {

double kmb_weight(double p, double q) {
    const double lp = std::log(p), lq = std::log(q);
    if (std::abs(lp - lq) < 1e-9) return 0.5 * (p + q);
    return (p - q) / (lp - lq);
}

}  // namespace detail

double kmb_covariance(const GibbsPoint& point, const HermitianOperator& A,
                      const HermitianOperator& B) {
    if (A.dim() != point.dim() || B.dim() != point.dim())
        throw invalid_input("kmb_covariance: dimension mismatch");
    const Matrix At = point.to_eigenbasis(A);
    const Matrix Bt = point.to_eigenbasis(B);
    const Vector& p = point.populations();
    const int n = point.dim();
    const double meanA = (At.diagonal().real().array() * p.array()).sum();
    const double meanB = (Bt.diagonal().real().array() * p.array()).sum();
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            std::complex<double> a = At(m, k);
            std::complex<double> b = Bt(k, m);
            if (m == k) {
                a -= meanA;
                b -= meanB;
            }
            acc += (a * b).real() * detail::kmb_weight(p(m), p(k));
        }
    }
    return acc;
}

double heat_capacity(const GibbsPoint& point) { return point.heat_capacity(); }

double entropy(const GibbsPoint& point) { return point.entropy(); }

}  // namespace carnot
