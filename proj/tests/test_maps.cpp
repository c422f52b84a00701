#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "qchain/maps.hpp"

using namespace qchain;

namespace {

/// Independent construction of the undeformed bilinear t_i^+ t_j with
/// matrix element sqrt((n_i + 1) n_j).
Operator classical_bilinear_oracle(const FockBasis& b, int i, int j) {
    SparseMatrix m(b.dim(), b.dim());
    std::vector<int> occ;
    for (int col = 0; col < b.dim(); ++col) {
        const auto s = b.state(col);
        const int nj = s[static_cast<std::size_t>(j - 1)];
        if (nj == 0) continue;
        occ.assign(s.begin(), s.end());
        occ[static_cast<std::size_t>(j - 1)] -= 1;
        const int ni = occ[static_cast<std::size_t>(i - 1)];
        occ[static_cast<std::size_t>(i - 1)] += 1;
        m.insert(b.index_of(occ), col) = Complex(std::sqrt((ni + 1.0) * nj), 0.0);
    }
    return Operator(std::move(m), b.key(), b.key());
}

ClassicalTriple two_mode_classical(const FockBasis& b) {
    ClassicalTriple t;
    t.label = "j";
    t.e_plus = classical_bilinear(b, 1, 2, DeformationParameter::one());
    t.e_minus = t.e_plus.adjoint();
    t.h = number_op(b, 1) - number_op(b, 2);
    return t;
}

Sp4ClassicalData vibrational_so5_data(std::shared_ptr<const FockBasis> basis) {
    Sp4ClassicalData data;
    data.basis = std::move(basis);
    data.e1 = Eigen::MatrixXd::Zero(6, 6);
    data.e1(0, 1) = 1.0;
    data.e1(3, 4) = 1.0;
    data.e2 = Eigen::MatrixXd::Zero(6, 6);
    data.e2(1, 2) = std::sqrt(2.0);
    data.e2(2, 3) = std::sqrt(2.0);
    data.h1 = {1, -1, 0, 1, -1, 0};
    data.h2 = {0, 2, 0, -2, 0, 0};
    return data;
}

}  // namespace

TEST_CASE("song dressing factor") {
    FockBasis b(1, 3);
    CHECK((song_factor(b, 1, DeformationParameter::one()) - Operator::identity(b.dim(), b.key()))
              .inf_norm() == 0.0);

    const auto q2 = DeformationParameter::real_q(2.0);
    const Operator f = song_factor(b, 1, q2);
    const std::vector<int> n0{0}, n2{2};
    CHECK(f.coeff(b.index_of(n0), b.index_of(n0)).real() == 1.0);
    CHECK(f.coeff(b.index_of(n2), b.index_of(n2)).real() ==
          doctest::Approx(0.8944271909999159).epsilon(1e-15));  // sqrt(2/[2]_2)
}

TEST_CASE("classical bilinears are q-independent") {
    FockBasis b(3, 3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const Operator oracle =
                i == j ? number_op(b, i) : classical_bilinear_oracle(b, i, j);
            for (const auto& q : {DeformationParameter::one(), DeformationParameter::real_q(0.7),
                                  DeformationParameter::real_q(2.0), DeformationParameter::phase(0.1)})
                CHECK((classical_bilinear(b, i, j, q) - oracle).inf_norm() < 1e-13);
        }

    // undeformed gl(n) structure constants:
    // [t_a^+ t_b, t_c^+ t_d] = d_bc t_a^+ t_d - d_da t_c^+ t_b
    const auto q = DeformationParameter::real_q(1.3);
    const int tuples[][4] = {{1, 2, 2, 3}, {1, 2, 2, 1}, {2, 3, 3, 2}, {1, 3, 2, 1}, {1, 2, 3, 1}};
    for (const auto& t : tuples) {
        const Operator lhs =
            commutator(classical_bilinear(b, t[0], t[1], q), classical_bilinear(b, t[2], t[3], q));
        Operator rhs = Operator::zero(b.dim(), b.dim(), b.key(), b.key());
        if (t[1] == t[2]) rhs = rhs + classical_bilinear(b, t[0], t[3], q);
        if (t[3] == t[0]) rhs = rhs - classical_bilinear(b, t[2], t[1], q);
        CHECK((lhs - rhs).inf_norm() < 1e-12);
    }

    // composite route: the dressed q-commutator equals the plain
    // classical bilinear
    for (int total = 1; total <= 3; ++total) {
        FockBasis bb(3, total);
        const Operator composite =
            song_factor(bb, 1, q) *
            q_commutator(bilinear(bb, 1, 2, q), bilinear(bb, 2, 3, q), q.value()) *
            diagonal_q_power(number_op(bb, 2), q, 1.0) * song_factor(bb, 3, q);
        CHECK((composite - classical_bilinear(bb, 1, 3, q)).inf_norm() < 1e-12);
    }
}

TEST_CASE("CZ deformation") {
    const auto q2 = DeformationParameter::real_q(2.0);

    // spin 1/2 is untouched
    {
        FockBasis b(2, 1);
        const auto out = cz_deform(two_mode_classical(b), q2);
        CHECK((out.e_plus - classical_bilinear(b, 1, 2, q2)).inf_norm() < 1e-14);
    }
    // q = 1 is the exact identity map
    {
        FockBasis b(2, 3);
        const auto cl = two_mode_classical(b);
        const auto out = cz_deform(cl, DeformationParameter::one());
        CHECK((out.e_plus - cl.e_plus).inf_norm() == 0.0);
        CHECK((out.e_minus - cl.e_minus).inf_norm() == 0.0);
    }
    // spin 1: <1,1|J+|1,0> = sqrt([2]_2)
    {
        FockBasis b(2, 2);
        const auto out = cz_deform(two_mode_classical(b), q2);
        const std::vector<int> m0{1, 1}, m1{2, 0};
        CHECK(out.e_plus.coeff(b.index_of(m1), b.index_of(m0)).real() ==
              doctest::Approx(1.5811388300841898).epsilon(1e-14));
    }
    // the deformation of the classical two-mode triple reproduces the
    // direct q-boson realization on every sector
    for (const auto& q : {DeformationParameter::real_q(0.7), DeformationParameter::real_q(1.3)})
        for (int total = 1; total <= 4; ++total) {
            FockBasis b(2, total);
            const auto direct = build_slq2_bosonic(b, q);
            const auto mapped = cz_deform(two_mode_classical(b), q);
            CHECK((mapped.e_plus - direct.e_plus).inf_norm() < 1e-13);
            CHECK((mapped.e_minus - direct.e_minus).inf_norm() < 1e-13);
        }
    // deformed ladder relations
    for (const auto& q : {DeformationParameter::real_q(0.7), DeformationParameter::phase(0.1)}) {
        FockBasis b(2, 4);
        const auto out = cz_deform(two_mode_classical(b), q);
        CHECK((commutator(out.e_plus, out.e_minus) - diagonal_q_bracket(out.h, q)).inf_norm() <
              1e-10);
        CHECK((commutator(out.h, out.e_plus) - out.e_plus * 2.0).inf_norm() < 1e-12);
    }
    // non-sl(2) input is rejected through the Casimir spectrum
    {
        FockBasis b(2, 2);
        auto broken = two_mode_classical(b);
        broken.e_plus = broken.e_plus * 0.5;
        broken.e_minus = broken.e_plus.adjoint();
        CHECK_THROWS_AS(cz_deform(broken, q2), std::invalid_argument);
    }
}

TEST_CASE("CZ deformation commutes with direct sums") {
    const auto q = DeformationParameter::real_q(1.3);
    FockBasis b1(2, 1), b2(2, 3);
    const auto c1 = two_mode_classical(b1);
    const auto c2 = two_mode_classical(b2);

    const auto direct_sum = [](const Operator& a, const Operator& b) {
        DenseMatrix m = DenseMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
        m.topLeftCorner(a.rows(), a.cols()) = a.dense();
        m.bottomRightCorner(b.rows(), b.cols()) = b.dense();
        return Operator(SparseMatrix(m.sparseView()), std::nullopt, std::nullopt);
    };
    ClassicalTriple sum;
    sum.label = "sum";
    sum.e_plus = direct_sum(c1.e_plus, c2.e_plus);
    sum.e_minus = direct_sum(c1.e_minus, c2.e_minus);
    sum.h = direct_sum(c1.h, c2.h);

    const auto whole = cz_deform(sum, q);
    const auto part1 = cz_deform(c1, q);
    const auto part2 = cz_deform(c2, q);
    CHECK((whole.e_plus - direct_sum(part1.e_plus, part2.e_plus)).inf_norm() < 1e-13);
}

TEST_CASE("sp4 deforming map") {
    const auto q = DeformationParameter::real_q(1.3);

    // q = 1 is the exact identity map
    {
        auto basis = std::make_shared<FockBasis>(6, 2);
        const auto data = vibrational_so5_data(basis);
        const auto out = sp4_deform(data, DeformationParameter::one());
        CHECK((out.e1.e_plus - data.triple_e1().e_plus).inf_norm() == 0.0);
        CHECK((out.e2.e_plus - data.triple_e2().e_plus).inf_norm() == 0.0);
    }

    for (int total : {1, 2, 3}) {
        auto basis = std::make_shared<FockBasis>(6, total);
        const auto data = vibrational_so5_data(basis);
        const auto out = sp4_deform(data, q);

        // Cartans pass through unchanged
        CHECK((out.e1.h - data.triple_e1().h).inf_norm() == 0.0);
        CHECK((out.e2.h - data.triple_e2().h).inf_norm() == 0.0);
        // adjoint pairs for real q
        CHECK((out.e1.e_minus - out.e1.e_plus.adjoint()).inf_norm() == 0.0);
        // the long node carries d = 2
        CHECK(out.e1.d == 2);
        CHECK(out.e2.d == 1);
        CHECK_FALSE(out.notes.empty());

        const auto realization = out.realization("soq5map");
        CHECK(check_chevalley(realization, q, 1e-9).all_pass());
        CHECK(check_serre(realization, q, 1e-9).all_pass());
    }

    // the deformed generators carry the expected deformed ladder
    // elements: on the fundamental the pair is classical
    {
        auto basis = std::make_shared<FockBasis>(6, 1);
        const auto data = vibrational_so5_data(basis);
        const auto out = sp4_deform(data, q);
        CHECK((out.e1.e_plus - data.triple_e1().e_plus).inf_norm() < 1e-14);
    }

    // a pair that does not have the canonical classical structure is
    // rejected
    {
        auto basis = std::make_shared<FockBasis>(6, 2);
        auto data = vibrational_so5_data(basis);
        data.e1(0, 2) = 0.5;
        CHECK_THROWS_AS(sp4_deform(data, q), std::invalid_argument);
    }
    {
        auto basis = std::make_shared<FockBasis>(6, 2);
        auto data = vibrational_so5_data(basis);
        data.h1 = {1, -1, 0, 1, -1, -1};  // weight (-1,0) no longer one-dimensional
        CHECK_THROWS_AS(sp4_deform(data, q), std::invalid_argument);
    }
}
