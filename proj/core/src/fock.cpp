#include "qchain/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qchain {

namespace {

void check_mode(const FockBasis& basis, int mode) {
    if (mode < 1 || mode > basis.n_modes())
        throw std::out_of_range("mode index out of range: " + std::to_string(mode));
}

void generate_states(int modes_left, int remaining, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
    if (modes_left == 1) {
        prefix.push_back(remaining);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        prefix.push_back(n);
        generate_states(modes_left - 1, remaining - n, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::uint64_t FockBasis::dimension(int n_modes, int total, std::uint64_t dimension_cap) {
    if (n_modes < 1) throw std::domain_error("FockBasis: n_modes must be >= 1");
    if (total < 0) throw std::domain_error("FockBasis: total must be >= 0");
    // C(total + n_modes - 1, n_modes - 1) by the multiplicative formula,
    // bailing out as soon as the cap is passed.
    std::uint64_t dim = 1;
    for (int k = 1; k <= n_modes - 1; ++k) {
        dim = dim * static_cast<std::uint64_t>(total + k) / static_cast<std::uint64_t>(k);
        if (dim > dimension_cap)
            throw std::domain_error("FockBasis: sector dimension exceeds cap of " +
                                    std::to_string(dimension_cap));
    }
    return dim;
}

FockBasis::FockBasis(int n_modes, int total, std::uint64_t dimension_cap)
    : n_modes_(n_modes), total_(total) {
    const std::uint64_t dim = dimension(n_modes, total, dimension_cap);
    states_.reserve(static_cast<std::size_t>(dim));
    std::vector<int> prefix;
    generate_states(n_modes, total, prefix, states_);
    for (std::size_t i = 0; i < states_.size(); ++i)
        index_[states_[i]] = static_cast<int>(i);
}

std::span<const int> FockBasis::state(int index) const {
    if (index < 0 || index >= dim()) throw std::out_of_range("FockBasis: state index out of range");
    return states_[static_cast<std::size_t>(index)];
}

int FockBasis::index_of(std::span<const int> occupations) const {
    const std::vector<int> key(occupations.begin(), occupations.end());
    const auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

Operator diagonal_op(const FockBasis& basis,
                     const std::function<Complex(std::span<const int>)>& f) {
    Vector entries(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) entries[i] = f(basis.state(i));
    return Operator::diagonal(entries, basis.key());
}

Operator number_op(const FockBasis& basis, int mode) {
    check_mode(basis, mode);
    return diagonal_op(basis, [mode](std::span<const int> occ) {
        return Complex(static_cast<double>(occ[static_cast<std::size_t>(mode - 1)]), 0.0);
    });
}

Operator linear_number_op(const FockBasis& basis, std::span<const double> coeffs) {
    if (static_cast<int>(coeffs.size()) != basis.n_modes())
        throw std::invalid_argument("linear_number_op: one coefficient per mode required");
    return diagonal_op(basis, [coeffs](std::span<const int> occ) {
        double acc = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * occ[k];
        return Complex(acc, 0.0);
    });
}

Operator creation_op(const FockBasis& from, const FockBasis& to, int mode,
                     const DeformationParameter& q) {
    check_mode(from, mode);
    if (from.n_modes() != to.n_modes())
        throw std::invalid_argument("creation_op: sectors must share the mode count");
    if (to.total() != from.total() + 1)
        throw std::invalid_argument("creation_op: target sector must hold one more boson");
    require_valid_parameter(q, to.total());

    SparseMatrix m(to.dim(), from.dim());
    m.reserve(Eigen::VectorXi::Constant(from.dim(), 1));
    std::vector<int> occ;
    for (int col = 0; col < from.dim(); ++col) {
        const auto s = from.state(col);
        occ.assign(s.begin(), s.end());
        const int n = occ[static_cast<std::size_t>(mode - 1)];
        occ[static_cast<std::size_t>(mode - 1)] = n + 1;
        const int row = to.index_of(occ);
        m.insert(row, col) = Complex(std::sqrt(q_number(n + 1, q)), 0.0);
    }
    return Operator(std::move(m), from.key(), to.key());
}

Operator annihilation_op(const FockBasis& from, const FockBasis& to, int mode,
                         const DeformationParameter& q) {
    check_mode(from, mode);
    if (from.n_modes() != to.n_modes())
        throw std::invalid_argument("annihilation_op: sectors must share the mode count");
    if (to.total() != from.total() - 1)
        throw std::invalid_argument("annihilation_op: target sector must hold one fewer boson");
    return creation_op(to, from, mode, q).adjoint();
}

Operator bilinear(const FockBasis& basis, int i, int j, const DeformationParameter& q) {
    check_mode(basis, i);
    check_mode(basis, j);
    require_valid_parameter(q, std::max(1, basis.total()));
    if (i == j) {
        return diagonal_op(basis, [i, &q](std::span<const int> occ) {
            return Complex(q_number(occ[static_cast<std::size_t>(i - 1)], q), 0.0);
        });
    }
    SparseMatrix m(basis.dim(), basis.dim());
    m.reserve(Eigen::VectorXi::Constant(basis.dim(), 1));
    std::vector<int> occ;
    for (int col = 0; col < basis.dim(); ++col) {
        const auto s = basis.state(col);
        const int nj = s[static_cast<std::size_t>(j - 1)];
        if (nj == 0) continue;
        occ.assign(s.begin(), s.end());
        const int ni = occ[static_cast<std::size_t>(i - 1)];
        occ[static_cast<std::size_t>(j - 1)] = nj - 1;
        occ[static_cast<std::size_t>(i - 1)] = ni + 1;
        const int row = basis.index_of(occ);
        m.insert(row, col) = Complex(std::sqrt(q_number(nj, q) * q_number(ni + 1, q)), 0.0);
    }
    return Operator(std::move(m), basis.key(), basis.key());
}

Vector normalized_state(const FockBasis& basis, std::span<const int> occupations,
                        const DeformationParameter& q) {
    if (static_cast<int>(occupations.size()) != basis.n_modes())
        throw std::invalid_argument("normalized_state: one occupation per mode required");
    int sum = 0;
    for (int n : occupations) {
        if (n < 0) throw std::invalid_argument("normalized_state: occupations must be nonnegative");
        sum += n;
    }
    if (sum != basis.total())
        throw std::invalid_argument("normalized_state: occupations must sum to the sector total");
    require_valid_parameter(q, std::max(1, basis.total()));

    // The ladder normalizers cancel exactly: (b^+)^n |0> = sqrt([n]!) |n>.
    Vector v = Vector::Zero(basis.dim());
    v[basis.index_of(occupations)] = Complex(1.0, 0.0);
    return v;
}

Operator second_quantized_rotation(const FockBasis& basis, const Eigen::MatrixXd& u) {
    const int m = basis.n_modes();
    const int total = basis.total();
    if (u.rows() != m || u.cols() != m)
        throw std::invalid_argument("second_quantized_rotation: rotation must be n_modes x n_modes");
    if ((u * u.transpose() - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("second_quantized_rotation: matrix is not orthogonal");

    std::vector<FockBasis> sectors;
    sectors.reserve(static_cast<std::size_t>(total) + 1);
    for (int t = 0; t <= total; ++t) sectors.emplace_back(m, t);
    const auto one = DeformationParameter::one();
    std::vector<std::vector<Operator>> create(static_cast<std::size_t>(std::max(total, 0)));
    for (int t = 0; t < total; ++t)
        for (int i = 1; i <= m; ++i)
            create[static_cast<std::size_t>(t)].push_back(
                creation_op(sectors[static_cast<std::size_t>(t)],
                            sectors[static_cast<std::size_t>(t) + 1], i, one));

    DenseMatrix out(basis.dim(), basis.dim());
    for (int col = 0; col < basis.dim(); ++col) {
        const auto s = basis.state(col);
        Vector v = Vector::Ones(1);
        int filled = 0;
        double norm = 1.0;
        for (int k = 0; k < m; ++k)
            for (int rep = 0; rep < s[static_cast<std::size_t>(k)]; ++rep) {
                Vector w = Vector::Zero(sectors[static_cast<std::size_t>(filled) + 1].dim());
                for (int i = 0; i < m; ++i)
                    if (u(i, k) != 0.0)
                        w += Complex(u(i, k), 0.0) *
                             create[static_cast<std::size_t>(filled)][static_cast<std::size_t>(i)]
                                 .apply(v);
                v = w;
                ++filled;
                norm *= rep + 1.0;
            }
        out.col(col) = v / std::sqrt(norm);
    }
    return Operator(SparseMatrix(out.sparseView()), basis.key(), basis.key());
}

}  // namespace qchain
