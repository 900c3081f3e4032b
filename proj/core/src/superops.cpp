#include "carnot/superops.hpp"

#include <cmath>

#include "carnot/errors.hpp"

namespace carnot {

RateMatrix::RateMatrix(RealMatrix entries, Vector stationary)
    : entries_(std::move(entries)), stationary_(std::move(stationary)) {
    const int n = static_cast<int>(entries_.rows());
    if (entries_.cols() != n || stationary_.size() != n)
        throw invalid_input("RateMatrix: shape mismatch");
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) {
            if (i != j && entries_(i, j) < 0)
                throw invalid_input("RateMatrix: negative off-diagonal rate");
            col += entries_(i, j);
        }
        if (std::abs(col) > 1e-12 * std::max(1.0, entries_.col(j).cwiseAbs().maxCoeff()))
            throw invalid_input("RateMatrix: column sums must vanish");
    }
    const double res = (entries_ * stationary_).norm();
    if (res > 1e-10 * std::max(1.0, entries_.norm()))
        throw invalid_input("RateMatrix: stationary vector is not stationary");
}

Vector RateMatrix::drazin_solve(const Vector& y) const {
    const int n = size();
    if (y.size() != n) throw invalid_input("RateMatrix::drazin_solve: size mismatch");
    if (std::abs(y.sum()) > 1e-9 * std::max(1.0, y.cwiseAbs().maxCoeff()))
        throw invalid_input("RateMatrix::drazin_solve: right-hand side must sum to zero");
    RealMatrix bordered(n + 1, n + 1);
    bordered.setZero();
    bordered.topLeftCorner(n, n) = entries_;
    bordered.topRightCorner(n, 1) = stationary_;
    bordered.bottomLeftCorner(1, n).setOnes();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = y;
    rhs(n) = 0.0;
    Eigen::FullPivLU<RealMatrix> lu(bordered);
    if (!lu.isInvertible())
        throw degenerate_generator_error("RateMatrix::drazin_solve: zero eigenvalue is not simple");
    Eigen::VectorXd sol = lu.solve(rhs);
    return sol.head(n);
}

namespace {

double bose_occupation(double w) { return 1.0 / std::expm1(w); }

// N(w)·w^alpha and (N(w)+1)·w^alpha with the w → 0 limit folded in.
std::pair<double, double> bosonic_rate_pair(double w, double alpha, double gamma0) {
    constexpr double kZeroGap = 1e-12;
    if (w < kZeroGap) {
        if (alpha < 1.0)
            throw singular_rate_error("rate_matrix_bosonic: zero gap diverges for alpha < 1");
        const double limit = (alpha == 1.0) ? gamma0 : 0.0;
        return {limit, limit};
    }
    const double n = bose_occupation(w);
    const double pw = std::pow(w, alpha);
    return {gamma0 * n * pw, gamma0 * (n + 1.0) * pw};
}

}  // namespace

RateMatrix rate_matrix_bosonic(const Vector& energies, double alpha, double gamma0) {
    const int n = static_cast<int>(energies.size());
    if (n < 2) throw invalid_input("rate_matrix_bosonic: need at least two levels");
    if (gamma0 <= 0) throw invalid_input("rate_matrix_bosonic: Gamma0 must be positive");
    if (std::abs(energies(0)) > 1e-12) throw invalid_input("rate_matrix_bosonic: E_0 must be zero");
    for (int i = 0; i + 1 < n; ++i)
        if (energies(i + 1) < energies(i))
            throw invalid_input("rate_matrix_bosonic: levels must be sorted nondecreasing");

    RealMatrix gamma = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double w = energies(j) - energies(i);
            const auto [up, down] = bosonic_rate_pair(w, alpha, gamma0);
            gamma(i, j) += down;  // j -> i decay
            gamma(j, i) += up;    // i -> j excitation
        }
    }
    for (int j = 0; j < n; ++j) {
        double out = 0.0;
        for (int i = 0; i < n; ++i)
            if (i != j) out += gamma(i, j);
        gamma(j, j) = -out;
    }

    const GibbsPoint point(HermitianOperator::diagonal(energies));
    // gibbs_point sorts by energy; energies are already sorted, so the
    // populations line up with the level indices.
    return RateMatrix(std::move(gamma), point.populations());
}

Superoperator::Superoperator(Matrix matrix, std::optional<GibbsPoint> fixed_point)
    : matrix_(std::move(matrix)), fixed_point_(std::move(fixed_point)) {
    const auto rows = matrix_.rows();
    if (rows != matrix_.cols()) throw invalid_input("Superoperator: matrix must be square");
    dim_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows))));
    if (static_cast<Eigen::Index>(dim_) * dim_ != rows)
        throw invalid_input("Superoperator: matrix size must be a perfect square");
    if (fixed_point_) {
        if (fixed_point_->dim() != dim_)
            throw invalid_input("Superoperator: fixed point dimension mismatch");
        const double scale = std::max(1.0, matrix_.norm());
        if ((matrix_ * vec(fixed_point_->state())).norm() > 1e-10 * scale)
            throw inconsistent_generator_error("Superoperator: L[ω] != 0 for the declared fixed point");
        Matrix id = Matrix::Identity(dim_, dim_);
        if ((vec(id).transpose() * matrix_).norm() > 1e-10 * scale)
            throw inconsistent_generator_error("Superoperator: generator is not trace preserving");
    }
}

Matrix Superoperator::vec(const Matrix& X) {
    Matrix out(X.size(), 1);
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < X.cols(); ++c)
        for (Eigen::Index r = 0; r < X.rows(); ++r) out(k++, 0) = X(r, c);
    return out;
}

Matrix Superoperator::unvec(const Eigen::VectorXcd& x, int n) {
    Matrix out(n, n);
    Eigen::Index k = 0;
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) out(r, c) = x(k++);
    return out;
}

HermitianOperator Superoperator::apply(const HermitianOperator& X) const {
    if (X.dim() != dim_) throw invalid_input("Superoperator::apply: dimension mismatch");
    Eigen::VectorXcd y = matrix_ * vec(X.matrix());
    return HermitianOperator(unvec(y, dim_));
}

Superoperator Superoperator::exponential_relaxation(const GibbsPoint& point, double tau_eq) {
    if (tau_eq <= 0) throw invalid_input("exponential_relaxation: tau_eq must be positive");
    const int n = point.dim();
    const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
    Matrix id = Matrix::Identity(n, n);
    Matrix L = (vec(point.state()) * vec(id).transpose() - Matrix::Identity(nn, nn)) / tau_eq;
    return Superoperator(std::move(L), point);
}

Superoperator Superoperator::from_rate_matrix(const RateMatrix& rate, const Vector& energies) {
    const int n = rate.size();
    if (energies.size() != n) throw invalid_input("from_rate_matrix: energy vector size mismatch");
    const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
    Matrix L = Matrix::Zero(nn, nn);
    auto idx = [n](int r, int c) { return static_cast<Eigen::Index>(c) * n + r; };
    Vector out = -rate.entries().diagonal();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            L(idx(i, j), idx(i, j)) = -0.5 * (out(i) + out(j));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L(idx(i, i), idx(j, j)) = rate.entries()(i, j);
    return Superoperator(std::move(L), GibbsPoint(HermitianOperator::diagonal(energies)));
}

HermitianOperator j_omega(const GibbsPoint& point, const HermitianOperator& A) {
    if (A.dim() != point.dim()) throw invalid_input("j_omega: dimension mismatch");
    const Matrix At = point.to_eigenbasis(A);
    const Vector& p = point.populations();
    const int n = point.dim();
    const double meanA = (At.diagonal().real().array() * p.array()).sum();
    Matrix J(n, n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
            std::complex<double> a = At(m, k);
            if (m == k) a -= meanA;
            J(m, k) = -a * detail::kmb_weight(p(m), p(k));
        }
    return HermitianOperator(point.eigvecs() * J * point.eigvecs().adjoint());
}

HermitianOperator drazin_apply(const Superoperator& L, const HermitianOperator& Y) {
    const int n = L.dim();
    if (Y.dim() != n) throw invalid_input("drazin_apply: dimension mismatch");
    if (!L.fixed_point())
        throw invalid_input("drazin_apply: generator needs a declared fixed point");
    const double yscale = std::max(1.0, Y.matrix().norm());
    if (std::abs(Y.matrix().trace()) > 1e-9 * yscale)
        throw invalid_input("drazin_apply: Y must be traceless");

    const Eigen::Index nn = static_cast<Eigen::Index>(n) * n;
    Matrix bordered = Matrix::Zero(nn + 1, nn + 1);
    bordered.topLeftCorner(nn, nn) = L.matrix();
    bordered.block(0, nn, nn, 1) = Superoperator::vec(L.fixed_point()->state());
    bordered.block(nn, 0, 1, nn) = Superoperator::vec(Matrix::Identity(n, n)).transpose();

    Eigen::VectorXcd rhs(nn + 1);
    rhs.head(nn) = Superoperator::vec(Y.matrix());
    rhs(nn) = 0.0;

    Eigen::FullPivLU<Matrix> lu(bordered);
    if (!lu.isInvertible())
        throw degenerate_generator_error("drazin_apply: zero eigenvalue of L is not simple");
    Eigen::VectorXcd sol = lu.solve(rhs);
    if (std::abs(sol(nn)) > 1e-8 * yscale)
        throw degenerate_generator_error("drazin_apply: bordered multiplier not negligible");
    return HermitianOperator(Superoperator::unvec(sol.head(nn), n));
}

}  // namespace carnot
