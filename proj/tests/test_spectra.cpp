#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "qchain/spectra.hpp"

using namespace qchain;

namespace {
std::shared_ptr<const FockBasis> six(int total) { return std::make_shared<FockBasis>(6, total); }

LevelScheme synthetic_scheme(double K, double tau, const std::vector<double>& js) {
    const auto q = tau == 0.0 ? DeformationParameter::one() : DeformationParameter::phase(tau);
    LevelScheme scheme;
    for (double j : js)
        scheme.levels.push_back(Level{j, K * q_number(j, q) * q_number(j + 1.0, q), 1.0});
    return scheme;
}
}  // namespace

TEST_CASE("rotator spectrum") {
    const std::vector<double> js{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    // classical point: K j (j+1)
    for (const auto& [j, e] : rotator_spectrum(2.0, DeformationParameter::one(), js))
        CHECK(e == doctest::Approx(2.0 * j * (j + 1.0)).epsilon(1e-15));

    // the q-number form agrees with the sine closed form
    for (double tau : {0.05, 0.1, 0.3}) {
        const auto q = DeformationParameter::phase(tau);
        for (const auto& [j, e] : rotator_spectrum(1.0, q, js)) {
            const double sine_form =
                std::sin(tau * j) * std::sin(tau * (j + 1.0)) / (std::sin(tau) * std::sin(tau));
            CHECK(std::abs(e - sine_form) < 1e-12);
        }
    }

    // E_2 at tau = 0.1 equals sin(0.2) sin(0.3) / sin^2(0.1)
    const auto spectrum = rotator_spectrum(1.0, DeformationParameter::phase(0.1), js);
    CHECK(spectrum[2].second ==
          doctest::Approx(std::sin(0.2) * std::sin(0.3) / (std::sin(0.1) * std::sin(0.1)))
              .epsilon(1e-14));
    CHECK(spectrum[0].second == 0.0);

    // near-classical phase matches the classical spectrum closely
    for (const auto& [j, e] : rotator_spectrum(1.0, DeformationParameter::phase(1e-4), js))
        if (j > 0) CHECK(std::abs(e - j * (j + 1.0)) / (j * (j + 1.0)) < 1e-6);

    // energy ratios are K-independent
    const auto a = rotator_spectrum(1.0, DeformationParameter::phase(0.1), js);
    const auto b = rotator_spectrum(7.3, DeformationParameter::phase(0.1), js);
    CHECK(b[4].second / b[2].second == doctest::Approx(a[4].second / a[2].second).epsilon(1e-14));

    // large tau is supported (brackets may turn negative); the
    // singular point tau = pi is rejected
    CHECK_NOTHROW(rotator_spectrum(1.0, DeformationParameter::phase(0.9), js));
    CHECK_THROWS_AS(rotator_spectrum(1.0, DeformationParameter::phase(M_PI), js), std::domain_error);
}

TEST_CASE("hamiltonian assembly") {
    const auto q = DeformationParameter::real_q(1.3);
    const auto chain = build_vibrational(six(1), q);

    // single so_q(3) Casimir term: levels 0 (s boson) and [2][3] (d quintet)
    {
        const std::vector<HamiltonianTerm> terms{{"so3q_casimir", 1.0}};
        const Operator h = build_hamiltonian(chain, terms);
        const auto levels = eigenlevels(h);
        REQUIRE(levels.size() == 2);
        CHECK(levels[0].value == doctest::Approx(0.0).scale(1).epsilon(1e-12));
        CHECK(levels[0].multiplicity == 1);
        CHECK(levels[1].value ==
              doctest::Approx(q_number(2.0, q) * q_number(3.0, q)).epsilon(1e-12));
        CHECK(levels[1].multiplicity == 5);
    }
    // empty term list gives the zero operator
    {
        const Operator h = build_hamiltonian(chain, {});
        CHECK(h.inf_norm() == 0.0);
        const auto levels = eigenlevels(h);
        REQUIRE(levels.size() == 1);
        CHECK(levels[0].multiplicity == 6);
    }
    // linearity in the coefficients
    {
        const std::vector<HamiltonianTerm> single{{"so3q_casimir", 1.0}};
        const std::vector<HamiltonianTerm> twice{{"so3q_casimir", 2.0}};
        CHECK((build_hamiltonian(chain, twice) - build_hamiltonian(chain, single) * 2.0).inf_norm() <
              1e-14);
    }
    // classical Casimirs are central for their own subalgebra
    {
        const std::vector<HamiltonianTerm> terms{{"soq5_casimir_classical", 1.0}};
        const Operator c = build_hamiltonian(chain, terms);
        const auto classical = build_vibrational(six(1), DeformationParameter::one());
        for (const auto& t : classical.subalgebra("soq5").triples) {
            CHECK(commutator(c, t.e_plus).inf_norm() < 1e-10);
            CHECK(commutator(c, t.h).inf_norm() < 1e-10);
        }
    }
    // classical so(3) Casimir has l(l+1) levels
    {
        const std::vector<HamiltonianTerm> terms{{"so3_casimir_classical", 1.0}};
        const auto levels = eigenlevels(build_hamiltonian(chain, terms));
        REQUIRE(levels.size() == 2);
        CHECK(levels[1].value == doctest::Approx(6.0).epsilon(1e-12));
    }
    // generator polynomials resolve; non-invariant ones are rejected
    {
        const std::vector<HamiltonianTerm> poly{{"poly:L+*L-", 0.5}};
        CHECK(build_hamiltonian(chain, poly).inf_norm() > 0.0);
        const std::vector<HamiltonianTerm> bad{{"poly:soq5.E1+", 1.0}};
        CHECK_THROWS_AS(build_hamiltonian(chain, bad), std::invalid_argument);
        const std::vector<HamiltonianTerm> unknown{{"mystery_invariant", 1.0}};
        CHECK_THROWS_AS(build_hamiltonian(chain, unknown), std::invalid_argument);
    }
}

TEST_CASE("symmetrization") {
    auto basis = six(1);
    const std::vector<HamiltonianTerm> terms{{"so3q_casimir", 1.0}};
    const auto build = [&](const DeformationParameter& param) {
        return build_hamiltonian(build_vibrational(basis, param), terms);
    };

    // real q: the Casimir sum is invariant under q <-> 1/q
    {
        const auto q = DeformationParameter::real_q(1.3);
        CHECK((symmetrize(build, q) - build(q)).inf_norm() < 1e-12);
    }
    // phase q: the average is self-adjoint and even in tau
    {
        const auto q = DeformationParameter::phase(0.1);
        const Operator h = symmetrize(build, q);
        CHECK((h - h.adjoint()).inf_norm() < 1e-12);
        const Operator h_neg = symmetrize(build, DeformationParameter::phase(-0.1));
        CHECK((h - h_neg).inf_norm() < 1e-13);
        // the symmetrized spectrum is real and computable
        const auto levels = eigenlevels(h);
        CHECK(levels.size() >= 1);
    }
}

TEST_CASE("eigenlevels") {
    FockBasis b(6, 2);
    const auto levels = eigenlevels(Operator::zero(b.dim(), b.dim(), b.key(), b.key()));
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].value == 0.0);
    CHECK(levels[0].multiplicity == 21);

    // clustering at 1e-8 * scale
    Vector d(3);
    d << Complex(1.0, 0.0), Complex(1.0 + 1e-12, 0.0), Complex(2.0, 0.0);
    const auto clustered = eigenlevels(Operator::diagonal(d));
    REQUIRE(clustered.size() == 2);
    CHECK(clustered[0].multiplicity == 2);
    CHECK(clustered[1].multiplicity == 1);

    // non-self-adjoint input is rejected
    const auto q = DeformationParameter::real_q(1.3);
    CHECK_THROWS_AS(eigenlevels(bilinear(b, 1, 2, q)), std::invalid_argument);
}

TEST_CASE("rotator fit: classical data") {
    const auto scheme = synthetic_scheme(7.0, 0.0, {2, 4, 6});
    const auto fit = fit_rotator(scheme);
    CHECK(fit.tau < 1e-6);
    CHECK(std::abs(fit.K - 7.0) < 1e-9 * 7.0);
    CHECK(fit.rms < 1e-9);
}

TEST_CASE("rotator fit: deformed round trip") {
    std::vector<double> js;
    for (int j = 2; j <= 16; j += 2) js.push_back(j);
    const auto scheme = synthetic_scheme(30.0, 0.05, js);
    const auto fit = fit_rotator(scheme);
    CHECK(std::abs(fit.tau - 0.05) < 1e-6);
    CHECK(std::abs(fit.K - 30.0) / 30.0 < 1e-6);

    // the reported rms is reproducible from (K, tau)
    const auto q = DeformationParameter::phase(fit.tau);
    double weighted = 0.0, wsum = 0.0;
    for (const auto& level : scheme.levels) {
        const double f = q_number(level.j, q) * q_number(level.j + 1.0, q);
        const double r = level.energy - fit.K * f;
        weighted += level.weight * r * r;
        wsum += level.weight;
    }
    CHECK(std::abs(fit.rms - std::sqrt(weighted / wsum)) < 1e-12);

    // global rescaling moves K, not tau
    LevelScheme scaled = scheme;
    for (auto& level : scaled.levels) level.energy *= 5.0;
    const auto fit5 = fit_rotator(scaled);
    CHECK(std::abs(fit5.tau - fit.tau) < 1e-8);
    CHECK(std::abs(fit5.K - 5.0 * fit.K) / fit.K < 1e-6);
}

TEST_CASE("rotator fit: input validation") {
    LevelScheme single;
    single.levels.push_back(Level{2.0, 12.0, 1.0});
    CHECK_THROWS_AS(fit_rotator(single), std::invalid_argument);

    LevelScheme zeros;
    zeros.levels.push_back(Level{2.0, 0.0, 1.0});
    zeros.levels.push_back(Level{4.0, 0.0, 1.0});
    CHECK_THROWS_AS(fit_rotator(zeros), std::invalid_argument);

    LevelScheme duplicate;
    duplicate.levels.push_back(Level{2.0, 12.0, 1.0});
    duplicate.levels.push_back(Level{2.0, 13.0, 1.0});
    CHECK_THROWS_AS(fit_rotator(duplicate), std::invalid_argument);

    LevelScheme negative;
    negative.levels.push_back(Level{-1.0, 3.0, 1.0});
    CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("hamiltonian spectra track the chain parameter") {
    // eigenvalues at tau and -tau coincide for the symmetrized operator,
    // and the classical limit reproduces j(j+1) patterns
    auto basis = six(1);
    const std::vector<HamiltonianTerm> terms{{"so3q_casimir", 1.0}};
    const auto chain_classical = build_vibrational(basis, DeformationParameter::one());
    const auto levels = eigenlevels(build_hamiltonian(chain_classical, terms));
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].value == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(levels[1].value == doctest::Approx(6.0).epsilon(1e-12));  // l = 2
}
