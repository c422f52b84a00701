#include <doctest.h>

#include <cmath>
#include <vector>

#include "qchain/fock.hpp"

using namespace qchain;

namespace {

Operator total_number(const FockBasis& b) {
    const std::vector<double> ones(static_cast<std::size_t>(b.n_modes()), 1.0);
    return linear_number_op(b, ones);
}

}  // namespace

TEST_CASE("basis dimensions") {
    CHECK(FockBasis(1, 7).dim() == 1);
    CHECK(FockBasis(3, 1).dim() == 3);
    CHECK(FockBasis(6, 2).dim() == 21);
    CHECK(FockBasis(6, 3).dim() == 56);

    // Pascal recurrence oracle: dim(m, N) = sum_k dim(m-1, k)
    for (int m = 2; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
            std::uint64_t acc = 0;
            for (int k = 0; k <= n; ++k) acc += FockBasis::dimension(m - 1, k);
            CHECK(FockBasis::dimension(m, n) == acc);
        }

    CHECK_THROWS_AS(FockBasis(0, 1), std::domain_error);
    CHECK_THROWS_AS(FockBasis(3, -1), std::domain_error);
    CHECK_THROWS_AS(FockBasis(30, 30), std::domain_error);  // past the default cap
}

TEST_CASE("basis ordering is descending lexicographic") {
    FockBasis b(4, 3);
    const auto first = b.state(0);
    CHECK(first[0] == 3);
    const auto last = b.state(b.dim() - 1);
    CHECK(last[3] == 3);
    for (int i = 0; i + 1 < b.dim(); ++i) {
        const auto a = b.state(i);
        const auto c = b.state(i + 1);
        CHECK(std::lexicographical_compare(c.begin(), c.end(), a.begin(), a.end()));
    }
    for (int i = 0; i < b.dim(); ++i) CHECK(b.index_of(b.state(i)) == i);
    const std::vector<int> absent{4, 0, 0, 0};
    CHECK(b.index_of(absent) == -1);
}

TEST_CASE("number operators") {
    FockBasis b(6, 2);
    Operator sum = Operator::zero(b.dim(), b.dim(), b.key(), b.key());
    for (int i = 1; i <= 6; ++i) sum = sum + number_op(b, i);
    // every state has total 2, so the trace is 2 * 21
    Complex trace = 0.0;
    for (int i = 0; i < b.dim(); ++i) trace += sum.coeff(i, i);
    CHECK(trace.real() == doctest::Approx(42.0));
    CHECK(commutator(number_op(b, 1), number_op(b, 2)).inf_norm() == 0.0);
    CHECK_THROWS_AS(number_op(b, 7), std::out_of_range);
    CHECK_THROWS_AS(number_op(b, 0), std::out_of_range);

    FockBasis b31(3, 1);
    const std::vector<int> state{1, 0, 0};
    CHECK(number_op(b31, 1).coeff(b31.index_of(state), b31.index_of(state)).real() == 1.0);
}

TEST_CASE("creation and annihilation matrix elements") {
    const auto q2 = DeformationParameter::real_q(2.0);
    FockBasis b0(1, 0), b1(1, 1), b2(1, 2), b3(1, 3);

    CHECK(creation_op(b0, b1, 1, q2).coeff(0, 0).real() == doctest::Approx(1.0));
    CHECK(creation_op(b1, b2, 1, q2).coeff(0, 0).real() ==
          doctest::Approx(1.5811388300841898).epsilon(1e-15));  // sqrt([2]_2) = sqrt(2.5)

    // annihilation is the adjoint of creation, and the involution holds
    for (const auto& q : {DeformationParameter::real_q(0.7), DeformationParameter::phase(0.1)}) {
        const Operator bdag = creation_op(b2, b3, 1, q);
        const Operator bdown = annihilation_op(b3, b2, 1, q);
        CHECK((bdag.adjoint() - bdown).inf_norm() == 0.0);
        CHECK((bdag.adjoint().adjoint() - bdag).inf_norm() == 0.0);
    }

    CHECK_THROWS_AS(creation_op(b0, b2, 1, q2), std::invalid_argument);
    CHECK_THROWS_AS(creation_op(FockBasis(2, 0), FockBasis(3, 1), 1, q2), std::invalid_argument);
    // parameter invalid for the target sector size
    CHECK_THROWS_AS(creation_op(FockBasis(1, 3), FockBasis(1, 4), 1, DeformationParameter::phase(M_PI / 4.0)),
                    std::domain_error);
}

TEST_CASE("q-boson defining relation and the occupation identities") {
    const std::vector<DeformationParameter> params = {DeformationParameter::real_q(0.7),
                                                      DeformationParameter::real_q(1.3),
                                                      DeformationParameter::phase(0.1)};
    for (const auto& q : params)
        for (int modes = 1; modes <= 3; ++modes)
            for (int total = 0; total <= 3; ++total) {
                FockBasis mid(modes, total), up(modes, total + 1);
                for (int i = 1; i <= modes; ++i)
                    for (int j = 1; j <= modes; ++j) {
                        // b_i b_j^+ - q^dij b_j^+ b_i = dij q^-Ni
                        Operator lhs = annihilation_op(up, mid, i, q) * creation_op(mid, up, j, q);
                        if (total >= 1) {
                            FockBasis down(modes, total - 1);
                            lhs = lhs - q.power(i == j ? 1.0 : 0.0) *
                                            (creation_op(down, mid, j, q) *
                                             annihilation_op(mid, down, i, q));
                        }
                        Operator rhs = i == j
                                           ? diagonal_q_power(number_op(mid, i), q, -1.0)
                                           : Operator::zero(mid.dim(), mid.dim(), mid.key(), mid.key());
                        CHECK((lhs - rhs).inf_norm() < 1e-12);
                    }
                // b^+ b = [N], b b^+ = [N+1]
                for (int i = 1; i <= modes; ++i) {
                    const Operator up_then_down =
                        annihilation_op(up, mid, i, q) * creation_op(mid, up, i, q);
                    Vector shifted(mid.dim());
                    for (int s = 0; s < mid.dim(); ++s)
                        shifted[s] = Complex(
                            q_number(mid.state(s)[static_cast<std::size_t>(i - 1)] + 1.0, q), 0.0);
                    CHECK((up_then_down - Operator::diagonal(shifted, mid.key())).inf_norm() < 1e-12);
                    if (total >= 1) {
                        FockBasis down(modes, total - 1);
                        const Operator down_then_up =
                            creation_op(down, mid, i, q) * annihilation_op(mid, down, i, q);
                        CHECK((down_then_up - diagonal_q_bracket(number_op(mid, i), q)).inf_norm() <
                              1e-12);
                    }
                }
            }
}

TEST_CASE("q-commutator transfer identity for bilinears") {
    // b_i^+ b_k = [b_i^+ b_j, b_j^+ b_k]_q q^{N_j}, distinct i, j, k
    const std::vector<DeformationParameter> params = {DeformationParameter::real_q(0.7),
                                                      DeformationParameter::real_q(1.3),
                                                      DeformationParameter::phase(0.1)};
    const int perms[][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    for (const auto& q : params)
        for (int total = 1; total <= 3; ++total) {
            FockBasis b(3, total);
            for (const auto& p : perms) {
                const Operator lhs = bilinear(b, p[0], p[2], q);
                const Operator rhs =
                    q_commutator(bilinear(b, p[0], p[1], q), bilinear(b, p[1], p[2], q), q.value()) *
                    diagonal_q_power(number_op(b, p[1]), q, 1.0);
                CHECK((lhs - rhs).inf_norm() < 1e-12);
            }
        }
}

TEST_CASE("bilinear examples") {
    const auto q2 = DeformationParameter::real_q(2.0);
    FockBasis b21(2, 1);
    const std::vector<int> s01{0, 1}, s10{1, 0};
    CHECK(bilinear(b21, 1, 2, q2).coeff(b21.index_of(s10), b21.index_of(s01)).real() ==
          doctest::Approx(1.0));

    FockBasis b22(2, 2);
    const std::vector<int> s02{0, 2}, s11{1, 1};
    CHECK(bilinear(b22, 1, 2, q2).coeff(b22.index_of(s11), b22.index_of(s02)).real() ==
          doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));

    // weight bookkeeping: [N1, b1+ b2] = b1+ b2
    const Operator bl = bilinear(b22, 1, 2, q2);
    CHECK((commutator(number_op(b22, 1), bl) - bl).inf_norm() < 1e-15);

    // diagonal case: b_i^+ b_i = [N_i]
    CHECK((bilinear(b22, 1, 1, q2) - diagonal_q_bracket(number_op(b22, 1), q2)).inf_norm() == 0.0);

    // bilinears conserve the total number exactly (structural zero)
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            CHECK(commutator(total_number(b22), bilinear(b22, i, j, q2)).inf_norm() == 0.0);
}

TEST_CASE("normalized states") {
    const auto q2 = DeformationParameter::real_q(2.0);
    FockBasis b(3, 3);
    const std::vector<int> occ{2, 1, 0};
    const Vector v = normalized_state(b, occ, q2);
    CHECK(std::abs(v.norm() - 1.0) < 1e-15);
    CHECK(v[b.index_of(occ)] == Complex(1.0, 0.0));

    // oracle: apply the creation ladder from the vacuum and divide by
    // sqrt of the q-factorials
    FockBasis b0(3, 0), b1(3, 1), b2(3, 2);
    Vector w = Vector::Ones(1);
    w = creation_op(b0, b1, 1, q2).apply(w);
    w = creation_op(b1, b2, 1, q2).apply(w);
    w = creation_op(b2, b, 2, q2).apply(w);
    w /= std::sqrt(q_factorial(2, q2) * q_factorial(1, q2));
    CHECK((w - v).norm() < 1e-15);

    const std::vector<int> wrong{1, 1, 0};
    CHECK_THROWS_AS(normalized_state(b, wrong, q2), std::invalid_argument);
    // vacuum
    FockBasis vac(2, 0);
    const std::vector<int> zeros{0, 0};
    CHECK(normalized_state(vac, zeros, q2).norm() == doctest::Approx(1.0));
}

TEST_CASE("operator arithmetic sanity") {
    FockBasis b(2, 2);
    const auto q = DeformationParameter::real_q(1.3);
    const Operator a = bilinear(b, 1, 2, q);
    CHECK((a.adjoint().adjoint() - a).inf_norm() == 0.0);
    CHECK((a - a).is_zero());
    CHECK(((a * 2.0) - a - a).inf_norm() < 1e-15);
    CHECK_THROWS_AS(a * bilinear(FockBasis(2, 1), 1, 2, q), std::invalid_argument);
    CHECK_THROWS_AS(a + bilinear(FockBasis(3, 2), 1, 2, q), std::invalid_argument);
    // kron dimensions
    CHECK(kron(a, a).rows() == a.rows() * a.rows());
}

TEST_CASE("second-quantized rotations") {
    FockBasis b(3, 2);
    CHECK((second_quantized_rotation(b, Eigen::MatrixXd::Identity(3, 3)) -
           Operator::identity(b.dim(), b.key()))
              .inf_norm() < 1e-15);

    // a permutation of modes permutes occupation states
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
    p(1, 0) = 1;
    p(2, 1) = 1;
    p(0, 2) = 1;
    const Operator gamma = second_quantized_rotation(b, p);
    const std::vector<int> in{2, 0, 0}, out{0, 2, 0};
    CHECK(std::abs(gamma.coeff(b.index_of(out), b.index_of(in)) - Complex(1.0, 0.0)) < 1e-15);

    // orthogonality on the sector
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(3, 3);
    const double c = std::cos(0.4), s = std::sin(0.4);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    const Operator g = second_quantized_rotation(b, r);
    CHECK((g * g.transpose() - Operator::identity(b.dim(), b.key())).inf_norm() < 1e-13);

    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3) * 2.0;
    CHECK_THROWS_AS(second_quantized_rotation(b, bad), std::invalid_argument);
}
