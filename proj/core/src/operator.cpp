#include "qchain/operator.hpp"

#include <stdexcept>
#include <vector>

namespace qchain {

namespace {

void check_space_match(const std::optional<SectorKey>& a, const std::optional<SectorKey>& b,
                       Eigen::Index dim_a, Eigen::Index dim_b, const char* what) {
    if (dim_a != dim_b) throw std::invalid_argument(std::string("operator ") + what + ": dimension mismatch");
    if (a && b && !(*a == *b)) throw std::invalid_argument(std::string("operator ") + what + ": basis mismatch");
}

std::optional<SectorKey> merge_keys(const std::optional<SectorKey>& a, const std::optional<SectorKey>& b) {
    return a ? a : b;
}

}  // namespace

Operator::Operator(SparseMatrix m, std::optional<SectorKey> domain, std::optional<SectorKey> codomain)
    : mat_(std::move(m)), domain_(domain), codomain_(codomain) {
    drop_zeros();
}

void Operator::drop_zeros() {
    mat_.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex(0.0, 0.0); });
    mat_.makeCompressed();
}

Operator Operator::zero(Eigen::Index rows, Eigen::Index cols,
                        std::optional<SectorKey> domain, std::optional<SectorKey> codomain) {
    return Operator(SparseMatrix(rows, cols), domain, codomain);
}

Operator Operator::identity(Eigen::Index n, std::optional<SectorKey> sector) {
    SparseMatrix m(n, n);
    m.setIdentity();
    return Operator(std::move(m), sector, sector);
}

Operator Operator::diagonal(const Vector& entries, std::optional<SectorKey> sector) {
    const Eigen::Index n = entries.size();
    SparseMatrix m(n, n);
    m.reserve(Eigen::VectorXi::Constant(n, 1));
    for (Eigen::Index i = 0; i < n; ++i)
        if (entries[i] != Complex(0.0, 0.0)) m.insert(i, i) = entries[i];
    return Operator(std::move(m), sector, sector);
}

Operator Operator::adjoint() const {
    return Operator(SparseMatrix(mat_.adjoint()), codomain_, domain_);
}

Operator Operator::transpose() const {
    return Operator(SparseMatrix(mat_.transpose()), codomain_, domain_);
}

Operator Operator::operator+(const Operator& other) const {
    check_space_match(domain_, other.domain_, cols(), other.cols(), "sum");
    check_space_match(codomain_, other.codomain_, rows(), other.rows(), "sum");
    return Operator(SparseMatrix(mat_ + other.mat_), merge_keys(domain_, other.domain_),
                    merge_keys(codomain_, other.codomain_));
}

Operator Operator::operator-(const Operator& other) const {
    check_space_match(domain_, other.domain_, cols(), other.cols(), "difference");
    check_space_match(codomain_, other.codomain_, rows(), other.rows(), "difference");
    return Operator(SparseMatrix(mat_ - other.mat_), merge_keys(domain_, other.domain_),
                    merge_keys(codomain_, other.codomain_));
}

Operator Operator::operator*(const Operator& other) const {
    check_space_match(domain_, other.codomain_, cols(), other.rows(), "product");
    return Operator(SparseMatrix(mat_ * other.mat_), other.domain_, codomain_);
}

Operator Operator::operator*(Complex scalar) const {
    return Operator(SparseMatrix(mat_ * scalar), domain_, codomain_);
}

Vector Operator::apply(const Vector& v) const {
    if (v.size() != cols()) throw std::invalid_argument("operator apply: vector dimension mismatch");
    return mat_ * v;
}

double Operator::inf_norm() const {
    std::vector<double> row_sums(static_cast<std::size_t>(rows()), 0.0);
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(mat_, k); it; ++it)
            row_sums[static_cast<std::size_t>(it.row())] += std::abs(it.value());
    double best = 0.0;
    for (double s : row_sums) best = std::max(best, s);
    return best;
}

double Operator::max_abs() const {
    double best = 0.0;
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(mat_, k); it; ++it)
            best = std::max(best, std::abs(it.value()));
    return best;
}

Operator Operator::pruned(double tol) const {
    SparseMatrix m = mat_;
    m.prune([tol](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > tol; });
    m.makeCompressed();
    return Operator(std::move(m), domain_, codomain_);
}

Operator commutator(const Operator& a, const Operator& b) {
    return a * b - b * a;
}

Operator q_commutator(const Operator& a, const Operator& b, Complex s) {
    return a * b - s * (b * a);
}

Operator kron(const Operator& a, const Operator& b) {
    SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(static_cast<std::size_t>(a.matrix().nonZeros()) *
                     static_cast<std::size_t>(b.matrix().nonZeros()));
    for (int ka = 0; ka < a.matrix().outerSize(); ++ka)
        for (SparseMatrix::InnerIterator ia(a.matrix(), ka); ia; ++ia)
            for (int kb = 0; kb < b.matrix().outerSize(); ++kb)
                for (SparseMatrix::InnerIterator ib(b.matrix(), kb); ib; ++ib)
                    triplets.emplace_back(ia.row() * b.rows() + ib.row(),
                                          ia.col() * b.cols() + ib.col(),
                                          ia.value() * ib.value());
    out.setFromTriplets(triplets.begin(), triplets.end());
    return Operator(std::move(out), std::nullopt, std::nullopt);
}

double distance(const Operator& a, const Operator& b) {
    return (a - b).inf_norm();
}

namespace {

Eigen::VectorXd diagonal_entries(const Operator& h, const char* what) {
    if (!h.is_square()) throw std::invalid_argument(std::string(what) + ": operator must be square");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(h.rows());
    for (int k = 0; k < h.matrix().outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(h.matrix(), k); it; ++it) {
            if (it.row() != it.col())
                throw std::invalid_argument(std::string(what) + ": operator must be diagonal");
            d[it.row()] = it.value().real();
        }
    return d;
}

}  // namespace

Operator diagonal_q_bracket(const Operator& h, const DeformationParameter& q, double scale) {
    const Eigen::VectorXd d = diagonal_entries(h, "diagonal_q_bracket");
    Vector entries(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        entries[i] = Complex(q_number(scale * d[i], q), 0.0);
    return Operator::diagonal(entries, h.domain());
}

Operator diagonal_q_power(const Operator& h, const DeformationParameter& q, double scale) {
    const Eigen::VectorXd d = diagonal_entries(h, "diagonal_q_power");
    Vector entries(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) entries[i] = q.power(scale * d[i]);
    return Operator::diagonal(entries, h.domain());
}

}  // namespace qchain
