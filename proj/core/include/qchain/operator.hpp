#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <optional>

#include "qchain/qnum.hpp"

namespace qchain {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Identifies a fixed-total-number Fock sector. Two independently built
/// bases of the same (modes, total) enumerate states identically, so the
/// key is enough for compatibility checks.
struct SectorKey {
    int modes = 0;
    int total = 0;
    friend bool operator==(const SectorKey&, const SectorKey&) = default;
};

/// Sparse complex matrix between two spaces. The domain/codomain sector
/// keys are carried when known (they are absent on tensor-product
/// spaces) and checked on every binary operation. Entries that are
/// exactly zero are never stored.
class Operator {
public:
    Operator() = default;
    Operator(SparseMatrix m, std::optional<SectorKey> domain, std::optional<SectorKey> codomain);

    static Operator zero(Eigen::Index rows, Eigen::Index cols,
                         std::optional<SectorKey> domain = {},
                         std::optional<SectorKey> codomain = {});
    static Operator identity(Eigen::Index n, std::optional<SectorKey> sector = {});
    /// Square diagonal operator from a dense vector of entries.
    static Operator diagonal(const Vector& entries, std::optional<SectorKey> sector = {});

    Eigen::Index rows() const { return mat_.rows(); }
    Eigen::Index cols() const { return mat_.cols(); }
    const SparseMatrix& matrix() const { return mat_; }
    const std::optional<SectorKey>& domain() const { return domain_; }
    const std::optional<SectorKey>& codomain() const { return codomain_; }

    bool is_square() const { return rows() == cols(); }

    /// Conjugate transpose; swaps domain and codomain.
    Operator adjoint() const;
    /// Plain transpose (no conjugation); swaps domain and codomain.
    Operator transpose() const;

    Operator operator+(const Operator& other) const;
    Operator operator-(const Operator& other) const;
    Operator operator*(const Operator& other) const;
    Operator operator*(Complex scalar) const;
    Operator operator-() const { return *this * Complex(-1.0, 0.0); }
    friend Operator operator*(Complex scalar, const Operator& op) { return op * scalar; }

    Vector apply(const Vector& v) const;

    Complex coeff(Eigen::Index row, Eigen::Index col) const { return mat_.coeff(row, col); }

    /// Induced infinity norm (maximum absolute row sum).
    double inf_norm() const;
    /// Largest entry magnitude.
    double max_abs() const;
    bool is_zero(double tol = 0.0) const { return inf_norm() <= tol; }

    /// Copy with entries of magnitude <= tol removed.
    Operator pruned(double tol = 0.0) const;

    DenseMatrix dense() const { return DenseMatrix(mat_); }

private:
    void drop_zeros();
    SparseMatrix mat_;
    std::optional<SectorKey> domain_;
    std::optional<SectorKey> codomain_;
};

/// [A, B] = AB - BA on a common square space.
Operator commutator(const Operator& a, const Operator& b);
/// [A, B]_s = AB - s BA.
Operator q_commutator(const Operator& a, const Operator& b, Complex s);

/// Kronecker product; the result lives on the product space (no sector keys).
Operator kron(const Operator& a, const Operator& b);

/// Distance in the induced infinity norm.
double distance(const Operator& a, const Operator& b);

/// Entrywise q-bracket [scale * h]_q of a square diagonal operator with
/// real entries. Exact functional calculus; throws on non-diagonal input.
Operator diagonal_q_bracket(const Operator& h, const DeformationParameter& q, double scale = 1.0);

/// Entrywise power q^(scale * h) of a square diagonal operator with real
/// entries (half-integer scales included).
Operator diagonal_q_power(const Operator& h, const DeformationParameter& q, double scale);

}  // namespace qchain
