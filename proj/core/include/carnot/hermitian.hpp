#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace carnot {

using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense complex Hermitian operator in adimensional energy units
/// (entries are already divided by k_B T). Houses the generator G = βH
/// and the conjugated control operators X_j.
class HermitianOperator {
public:
    /// Validates Hermiticity (relative Frobenius deviation <= 1e-12) and
    /// stores the exactly symmetrized matrix (A + A†)/2.
    explicit HermitianOperator(Matrix entries);

    /// Diagonal operator from real entries.
    static HermitianOperator diagonal(const Vector& diag);
    static HermitianOperator identity(int dim);
    static HermitianOperator zero(int dim);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator-(const HermitianOperator& other) const;
    HermitianOperator operator*(double scale) const;

    /// Real Hilbert-Schmidt inner product Re Tr(A† B) = Tr(A B) for Hermitian A, B.
    double hs_inner(const HermitianOperator& other) const;

    bool is_diagonal(double tol = 1e-14) const;

    /// JSON: {"dim": n, "entries": [[[re, im], ...], ...]} row-major;
    /// "dim" is mandatory and cross-checked against the entry shape.
    std::string to_json() const;
    static HermitianOperator from_json(const std::string& text);
    static HermitianOperator from_json_stream(std::istream& in);

private:
    Matrix entries_;
};

inline HermitianOperator operator*(double scale, const HermitianOperator& op) { return op * scale; }

}  // namespace carnot
