#include "carnot/hermitian.hpp"

#include <istream>
#include <sstream>

#include "carnot/errors.hpp"
#include "json_detail.hpp"

namespace carnot {

HermitianOperator::HermitianOperator(Matrix entries) {
    if (entries.rows() < 1 || entries.rows() != entries.cols())
        throw invalid_input("HermitianOperator: matrix must be square with dim >= 1");
    const double scale = entries.norm();
    const double dev = (entries - entries.adjoint()).norm();
    if (dev > 1e-12 * std::max(scale, 1.0))
        throw invalid_input("HermitianOperator: matrix is not Hermitian (relative deviation " +
                            std::to_string(scale > 0 ? dev / scale : dev) + ")");
    entries_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianOperator HermitianOperator::diagonal(const Vector& diag) {
    Matrix m = Matrix::Zero(diag.size(), diag.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i) m(i, i) = diag(i);
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
    return HermitianOperator(Matrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    if (other.dim() != dim()) throw invalid_input("HermitianOperator: dimension mismatch");
    return HermitianOperator(entries_ + other.entries_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
    if (other.dim() != dim()) throw invalid_input("HermitianOperator: dimension mismatch");
    return HermitianOperator(entries_ - other.entries_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(scale * entries_);
}

double HermitianOperator::hs_inner(const HermitianOperator& other) const {
    if (other.dim() != dim()) throw invalid_input("HermitianOperator: dimension mismatch");
    return (entries_.adjoint() * other.entries_).trace().real();
}

bool HermitianOperator::is_diagonal(double tol) const {
    Matrix off = entries_;
    off.diagonal().setZero();
    return off.norm() <= tol * std::max(1.0, entries_.norm());
}

namespace detail {

nlohmann::json hermitian_to_json(const HermitianOperator& op) {
    nlohmann::json j;
    j["dim"] = op.dim();
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < op.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < op.dim(); ++c) {
            const auto z = op.matrix()(r, c);
            row.push_back({z.real(), z.imag()});
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

HermitianOperator hermitian_from_json(const nlohmann::json& j) {
    if (!j.contains("dim")) throw invalid_input("operator JSON: mandatory field \"dim\" missing");
    const int dim = j.at("dim").get<int>();
    const auto& rows = j.at("entries");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw invalid_input("operator JSON: \"entries\" row count does not match \"dim\"");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& row = rows.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw invalid_input("operator JSON: row " + std::to_string(r) + " length does not match \"dim\"");
        for (int c = 0; c < dim; ++c) {
            const auto& z = row.at(c);
            if (!z.is_array() || z.size() != 2)
                throw invalid_input("operator JSON: entries must be [re, im] pairs");
            m(r, c) = std::complex<double>(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return HermitianOperator(std::move(m));
}

}  // namespace detail

std::string HermitianOperator::to_json() const {
    return detail::hermitian_to_json(*this).dump();
}

HermitianOperator HermitianOperator::from_json(const std::string& text) {
    std::istringstream in(text);
    return from_json_stream(in);
}

HermitianOperator HermitianOperator::from_json_stream(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input(std::string("operator JSON: ") + e.what());
    }
    return detail::hermitian_from_json(j);
}

}  // namespace carnot
