#pragma once

// Internal machinery for assembling dressed chain generators. Each
// raising generator is a sum of terms
//     coeff * (diagonal dressings) * b_i^+ b_j * (diagonal dressings)
// and the lowering partner mirrors the term: factor order reversed and
// the bilinear flipped, with the same diagonal expressions. For real q
// the mirror coincides with the matrix adjoint, which is used directly
// so that E- = adjoint(E+) holds bit-exactly.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qchain/algebra.hpp"
#include "qchain/fock.hpp"

namespace qchain::detail {

struct GenTerm {
    Complex coeff{1.0, 0.0};
    std::vector<Operator> left;
    int i = 0;
    int j = 0;
    std::vector<Operator> right;
};

struct TripleSpec {
    std::string label;
    std::vector<GenTerm> terms;
    std::vector<double> h_coeffs;
};

inline Operator q_pow_diag(const FockBasis& basis, const DeformationParameter& q,
                           std::vector<double> coeffs) {
    return diagonal_op(basis, [coeffs = std::move(coeffs), &q](std::span<const int> occ) {
        double x = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) x += coeffs[k] * occ[k];
        return q.power(x);
    });
}

/// sqrt(q^{N_mode} + q^{-N_mode}); for phase q the radicand 2cos(n tau)
/// must stay positive on the sector.
inline Operator root_sum_diag(const FockBasis& basis, const DeformationParameter& q, int mode) {
    return diagonal_op(basis, [mode, &q](std::span<const int> occ) {
        const double n = occ[static_cast<std::size_t>(mode - 1)];
        const double radicand = (q.power(n) + q.power(-n)).real();
        if (radicand <= 0.0)
            throw std::domain_error("chain dressing: q^n + q^-n not positive at n=" +
                                    std::to_string(static_cast<long>(n)));
        return Complex(std::sqrt(radicand), 0.0);
    });
}

inline Operator materialize_plus(const FockBasis& basis, const DeformationParameter& q,
                                 const std::vector<GenTerm>& terms) {
    Operator acc = Operator::zero(basis.dim(), basis.dim(), basis.key(), basis.key());
    for (const auto& t : terms) {
        Operator m = bilinear(basis, t.i, t.j, q);
        for (auto it = t.left.rbegin(); it != t.left.rend(); ++it) m = (*it) * m;
        for (const auto& r : t.right) m = m * r;
        acc = acc + m * t.coeff;
    }
    return acc;
}

inline Operator materialize_minus(const FockBasis& basis, const DeformationParameter& q,
                                  const std::vector<GenTerm>& terms) {
    Operator acc = Operator::zero(basis.dim(), basis.dim(), basis.key(), basis.key());
    for (const auto& t : terms) {
        Operator m = bilinear(basis, t.j, t.i, q);
        for (const auto& r : t.right) m = r * m;
        for (auto it = t.left.rbegin(); it != t.left.rend(); ++it) m = m * (*it);
        acc = acc + m * t.coeff;
    }
    return acc;
}

inline long term_weight(const GenTerm& t, std::span<const double> cartan_coeffs) {
    const double w = cartan_coeffs[static_cast<std::size_t>(t.i - 1)] -
                     cartan_coeffs[static_cast<std::size_t>(t.j - 1)];
    const long rounded = std::lround(w);
    if (std::abs(w - rounded) > 1e-12)
        throw std::logic_error("chain generator term has a non-integer Cartan weight");
    return rounded;
}

/// Builds the realization, measuring the Cartan matrix from the term
/// weights. Every term of a generator must carry the same weight under
/// every Cartan element; a mismatch means a transcription error in the
/// generator formula and aborts construction.
inline AlgebraRealization assemble_realization(
    const FockBasis& basis, const DeformationParameter& q, const std::string& name,
    const std::vector<TripleSpec>& specs,
    const std::vector<std::pair<std::string, std::vector<double>>>& extras = {}) {
    AlgebraRealization out;
    out.name = name;
    const int r = static_cast<int>(specs.size());
    out.cartan_matrix = Eigen::MatrixXi::Zero(r, r);

    for (const auto& spec : specs) {
        ChevalleyTriple t;
        t.label = spec.label;
        t.e_plus = materialize_plus(basis, q, spec.terms);
        t.e_minus = q.is_real() ? t.e_plus.adjoint() : materialize_minus(basis, q, spec.terms);
        t.h = linear_number_op(basis, spec.h_coeffs);
        t.d = 1;
        out.triples.push_back(std::move(t));
    }
    for (const auto& [label, coeffs] : extras)
        out.extra_cartans.emplace_back(label, linear_number_op(basis, coeffs));

    for (int k = 0; k < r; ++k)
        for (int j = 0; j < r; ++j) {
            const auto& terms = specs[static_cast<std::size_t>(j)].terms;
            const long w = term_weight(terms.front(), specs[static_cast<std::size_t>(k)].h_coeffs);
            for (const auto& t : terms)
                if (term_weight(t, specs[static_cast<std::size_t>(k)].h_coeffs) != w)
                    throw std::logic_error(name + ": generator " +
                                           specs[static_cast<std::size_t>(j)].label +
                                           " mixes Cartan weights");
            out.cartan_matrix(k, j) = static_cast<int>(w);
        }
    return out;
}

/// The dressed so_q(5) pair on canonical slots (1..5) of an m-mode
/// sector, any further modes inert:
///   E1 = (q+q^-1)^-1 { sqrt(q^N1+q^-N1) b1^+b2 sqrt(q^N2+q^-N2) q^-(N4-N5)
///                      + sqrt(q^N4+q^-N4) b4^+b5 sqrt(q^N5+q^-N5) q^(N1-N2) }
///   E2 = q^(N4-N3/2) sqrt(q^N2+q^-N2) b2^+b3
///        + b3^+b4 q^(N2-N3/2) sqrt(q^N4+q^-N4)
///   H1 = N1 - N2 + N4 - N5,  H2 = 2 (N2 - N4)
inline std::vector<TripleSpec> soq5_pattern_specs(const FockBasis& basis,
                                                  const DeformationParameter& q) {
    const int m = basis.n_modes();
    if (m < 5) throw std::invalid_argument("soq5 pattern requires at least five modes");
    const auto pad = [m](std::vector<double> v) {
        v.resize(static_cast<std::size_t>(m), 0.0);
        return v;
    };
    const Complex inv_qq = Complex(1.0, 0.0) / (q.value() + q.inverse().value());

    TripleSpec e1;
    e1.label = "E1";
    e1.terms = {
        GenTerm{inv_qq,
                {root_sum_diag(basis, q, 1)},
                1,
                2,
                {root_sum_diag(basis, q, 2), q_pow_diag(basis, q, pad({0, 0, 0, -1, 1}))}},
        GenTerm{inv_qq,
                {root_sum_diag(basis, q, 4)},
                4,
                5,
                {root_sum_diag(basis, q, 5), q_pow_diag(basis, q, pad({1, -1, 0, 0, 0}))}},
    };
    e1.h_coeffs = pad({1, -1, 0, 1, -1});

    TripleSpec e2;
    e2.label = "E2";
    e2.terms = {
        GenTerm{Complex(1.0, 0.0),
                {q_pow_diag(basis, q, pad({0, 0, -0.5, 1, 0})), root_sum_diag(basis, q, 2)},
                2,
                3,
                {}},
        GenTerm{Complex(1.0, 0.0),
                {},
                3,
                4,
                {q_pow_diag(basis, q, pad({0, 1, -0.5, 0, 0})), root_sum_diag(basis, q, 4)}},
    };
    e2.h_coeffs = pad({0, 2, 0, -2, 0});
    return {std::move(e1), std::move(e2)};
}

}  // namespace qchain::detail
