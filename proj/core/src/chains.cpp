#include "qchain/chains.hpp"

#include <cmath>
#include <stdexcept>

#include "generator_terms.hpp"

namespace qchain {

namespace {

using detail::GenTerm;
using detail::TripleSpec;
using detail::assemble_realization;
using detail::materialize_minus;
using detail::materialize_plus;
using detail::q_pow_diag;
using detail::root_sum_diag;

ClassicalTriple make_so3_classical(const FockBasis& basis, const DeformationParameter& q,
                                   const std::string& label,
                                   const std::vector<std::pair<double, std::pair<int, int>>>& ladder,
                                   const std::vector<double>& l0_coeffs) {
    ClassicalTriple t;
    t.label = label;
    Operator acc = Operator::zero(basis.dim(), basis.dim(), basis.key(), basis.key());
    for (const auto& [c, ij] : ladder)
        acc = acc + classical_bilinear(basis, ij.first, ij.second, q) * Complex(c, 0.0);
    t.e_plus = acc;
    t.e_minus = acc.adjoint();
    std::vector<double> doubled(l0_coeffs);
    for (double& c : doubled) c *= 2.0;
    t.h = linear_number_op(basis, doubled);  // h = 2 L0
    return t;
}

void require_six_modes(const FockBasis& basis) {
    if (basis.n_modes() != 6)
        throw std::invalid_argument("chain realizations require a six-mode sector");
}

}  // namespace

std::string chain_kind_name(ChainKind kind) {
    switch (kind) {
        case ChainKind::vibrational: return "vibrational";
        case ChainKind::rotational: return "rotational";
        case ChainKind::gamma_unstable: return "gamma";
    }
    throw std::logic_error("unknown chain kind");
}

ChainKind parse_chain_kind(const std::string& name) {
    if (name == "vibrational") return ChainKind::vibrational;
    if (name == "rotational") return ChainKind::rotational;
    if (name == "gamma" || name == "gamma_unstable") return ChainKind::gamma_unstable;
    throw std::invalid_argument("unknown chain: " + name);
}

const AlgebraRealization& ChainRealization::subalgebra(const std::string& name) const {
    for (const auto& sub : subalgebras)
        if (sub.name == name) return sub;
    throw std::invalid_argument("chain has no subalgebra named " + name);
}

std::vector<std::pair<std::string, Operator>> ChainRealization::generators() const {
    std::vector<std::pair<std::string, Operator>> out;
    for (const auto& sub : subalgebras) {
        for (std::size_t k = 0; k < sub.triples.size(); ++k) {
            const auto& t = sub.triples[k];
            out.emplace_back(sub.name + "." + t.label + "+", t.e_plus);
            out.emplace_back(sub.name + "." + t.label + "-", t.e_minus);
            out.emplace_back(sub.name + ".H" + std::to_string(k + 1), t.h);
        }
        for (const auto& [label, op] : sub.extra_cartans)
            out.emplace_back(sub.name + "." + label, op);
    }
    out.emplace_back("L+", so3.l_plus);
    out.emplace_back("L-", so3.l_minus);
    out.emplace_back("L0", so3.l_zero);
    return out;
}

Operator ChainRealization::generator(const std::string& label) const {
    for (const auto& [name, op] : generators())
        if (name == label) return op;
    throw std::invalid_argument("chain has no generator named " + label);
}

ChainRealization build_vibrational(std::shared_ptr<const FockBasis> basis,
                                   const DeformationParameter& q) {
    require_six_modes(*basis);
    require_valid_parameter(q, std::max(1, basis->total()));
    const FockBasis& b = *basis;

    ChainRealization chain;
    chain.kind = ChainKind::vibrational;
    chain.q = q;
    chain.basis = basis;

    // gl_q(5): drop e5, h5 and N6 from gl_q(6).
    {
        std::vector<TripleSpec> specs;
        for (int i = 1; i <= 4; ++i) {
            TripleSpec s;
            s.label = "e" + std::to_string(i);
            s.terms = {GenTerm{Complex(1.0, 0.0), {}, i, i + 1, {}}};
            s.h_coeffs = std::vector<double>(6, 0.0);
            s.h_coeffs[static_cast<std::size_t>(i - 1)] = 1.0;
            s.h_coeffs[static_cast<std::size_t>(i)] = -1.0;
            specs.push_back(std::move(s));
        }
        auto glq5 = assemble_realization(b, q, "glq5", specs, {{"h0", {1, 1, 1, 1, 1, 0}}});
        glq5.validate();
        chain.subalgebras.push_back(std::move(glq5));
    }

    // so_q(5) inside gl_q(5); the d-boson modes carry the canonical
    // dressed pattern directly.
    {
        auto soq5 = assemble_realization(b, q, "soq5", detail::soq5_pattern_specs(b, q));
        select_rank2_d_exponents(soq5, q);
        soq5.validate();
        chain.subalgebras.push_back(std::move(soq5));
    }

    // so_q(3) by deforming the classical d-boson angular momentum
    // (modes 1..5 carry m = 2, 1, 0, -1, -2; mode 6 is inert).
    chain.so3_classical = make_so3_classical(
        b, q, "L",
        {{2.0, {1, 2}}, {2.0, {4, 5}}, {std::sqrt(6.0), {2, 3}}, {std::sqrt(6.0), {3, 4}}},
        {2, 1, 0, -1, -2, 0});
    const auto deformed = cz_deform(chain.so3_classical, q);
    chain.so3 = LadderSet{deformed.e_plus, deformed.e_minus,
                          linear_number_op(b, std::vector<double>{2, 1, 0, -1, -2, 0})};

    const auto& soq5 = chain.subalgebra("soq5");
    chain.cartan_identities.push_back(
        CartanIdentity{"L0 = 2 H1 + 3/2 H2", chain.so3.l_zero,
                       soq5.triples[0].h * Complex(2.0, 0.0) + soq5.triples[1].h * Complex(1.5, 0.0)});

    chain.provenance = {
        {"glq5.e(i)+", "b_i^+ b_{i+1}, i = 1..4; h_i = N_i - N_{i+1}; h0 = N1+..+N5"},
        {"soq5.E1+",
         "(q+q^-1)^-1 { sqrt(q^N1+q^-N1) b1^+b2 sqrt(q^N2+q^-N2) q^-(N4-N5)"
         " + sqrt(q^N4+q^-N4) b4^+b5 sqrt(q^N5+q^-N5) q^(N1-N2) }"},
        {"soq5.E2+",
         "q^(N4-N3/2) sqrt(q^N2+q^-N2) b2^+b3 + b3^+b4 q^(N2-N3/2) sqrt(q^N4+q^-N4)"},
        {"soq5.H1", "N1 - N2 + N4 - N5"},
        {"soq5.H2", "2 (N2 - N4)"},
        {"L+", "CZ deformation of 2(t1^+t2 + t4^+t5) + sqrt6(t2^+t3 + t3^+t4), t = undeformed boson"},
        {"L0", "2 N1 + N2 - N4 - 2 N5"},
    };
    return chain;
}

ChainRealization build_rotational(std::shared_ptr<const FockBasis> basis,
                                  const DeformationParameter& q) {
    require_six_modes(*basis);
    require_valid_parameter(q, std::max(1, basis->total()));
    const FockBasis& b = *basis;

    ChainRealization chain;
    chain.kind = ChainKind::rotational;
    chain.q = q;
    chain.basis = basis;

    // sl_q(3) inside gl_q(6). The coproduct tail on the first brace is
    // q^-(N3-N5)/2: the deformation couples the (1,2,4) triplet to the
    // (3,5) doublet, whose weight under H1 is N3 - N5. (Testing every
    // tail variant against the full relation set leaves this as the
    // unique one that closes the algebra.)
    {
        TripleSpec e1;
        e1.label = "E1";
        e1.terms = {
            GenTerm{Complex(1.0, 0.0),
                    {q_pow_diag(b, q, {0, -0.5, 0, 1, 0, 0}), root_sum_diag(b, q, 1)},
                    1,
                    2,
                    {q_pow_diag(b, q, {0, 0, -0.5, 0, 0.5, 0})}},
            GenTerm{Complex(1.0, 0.0),
                    {},
                    2,
                    4,
                    {q_pow_diag(b, q, {1, -0.5, 0, 0, 0, 0}), root_sum_diag(b, q, 4),
                     q_pow_diag(b, q, {0, 0, -0.5, 0, 0.5, 0})}},
            GenTerm{Complex(1.0, 0.0), {}, 3, 5, {q_pow_diag(b, q, {1, 0, 0, -1, 0, 0})}},
        };
        e1.h_coeffs = {2, 0, 1, -2, -1, 0};

        TripleSpec e2;
        e2.label = "E2";
        e2.terms = {
            GenTerm{Complex(1.0, 0.0),
                    {q_pow_diag(b, q, {0, 0, 0, 0, -0.5, 1}), root_sum_diag(b, q, 4)},
                    4,
                    5,
                    {q_pow_diag(b, q, {0, 0.5, -0.5, 0, 0, 0})}},
            GenTerm{Complex(1.0, 0.0),
                    {},
                    5,
                    6,
                    {q_pow_diag(b, q, {0, 0, 0, 1, -0.5, 0}), root_sum_diag(b, q, 6),
                     q_pow_diag(b, q, {0, 0.5, -0.5, 0, 0, 0})}},
            GenTerm{Complex(1.0, 0.0), {}, 2, 3, {q_pow_diag(b, q, {0, 0, 0, -1, 0, 1})}},
        };
        e2.h_coeffs = {0, 1, -1, 2, 0, -2};

        auto slq3 = assemble_realization(b, q, "slq3", {e1, e2});
        slq3.validate();
        chain.subalgebras.push_back(std::move(slq3));
    }

    chain.so3_classical = make_so3_classical(
        b, q, "L",
        {{2.0, {1, 2}},
         {2.0, {2, 4}},
         {std::sqrt(2.0), {3, 5}},
         {std::sqrt(2.0), {2, 3}},
         {2.0, {4, 5}},
         {2.0, {5, 6}}},
        {2, 1, 0, 0, -1, -2});
    const auto deformed = cz_deform(chain.so3_classical, q);
    chain.so3 = LadderSet{deformed.e_plus, deformed.e_minus,
                          linear_number_op(b, std::vector<double>{2, 1, 0, 0, -1, -2})};

    const auto& slq3 = chain.subalgebra("slq3");
    chain.cartan_identities.push_back(
        CartanIdentity{"L0 = H1 + H2", chain.so3.l_zero, slq3.triples[0].h + slq3.triples[1].h});

    chain.provenance = {
        {"slq3.E1+",
         "{ q^(N4-N2/2) sqrt(q^N1+q^-N1) b1^+b2 + b2^+b4 q^(N1-N2/2) sqrt(q^N4+q^-N4) }"
         " q^-(N3-N6)/2 + b3^+b5 q^(N1-N4)"},
        {"slq3.E2+",
         "{ q^(N6-N5/2) sqrt(q^N4+q^-N4) b4^+b5 + b5^+b6 q^(N4-N5/2) sqrt(q^N6+q^-N6) }"
         " q^(N2-N3)/2 + b2^+b3 q^-(N4-N6)"},
        {"slq3.H1", "2 N1 - 2 N4 + N3 - N5"},
        {"slq3.H2", "N2 - N3 + 2 N4 - 2 N6"},
        {"L+",
         "CZ deformation of 2 t1^+t2 + 2 t2^+t4 + sqrt2 t3^+t5 + sqrt2 t2^+t3 + 2 t4^+t5 +"
         " 2 t5^+t6, t = undeformed boson"},
        {"L0", "2 N1 + N2 - N5 - 2 N6"},
    };
    return chain;
}

ChainRealization build_gamma(std::shared_ptr<const FockBasis> basis,
                             const DeformationParameter& q) {
    require_six_modes(*basis);
    require_valid_parameter(q, std::max(1, basis->total()));
    const FockBasis& b = *basis;

    ChainRealization chain;
    chain.kind = ChainKind::gamma_unstable;
    chain.q = q;
    chain.basis = basis;

    // so_q(6) inside sl_q(6).
    {
        TripleSpec e1;
        e1.label = "E1";
        e1.terms = {
            GenTerm{Complex(1.0, 0.0), {}, 2, 4, {q_pow_diag(b, q, {0, 0, 0.5, 0, -0.5, 0})}},
            GenTerm{Complex(1.0, 0.0), {}, 3, 5, {q_pow_diag(b, q, {0, -0.5, 0, 0.5, 0, 0})}},
        };
        e1.h_coeffs = {0, 1, 1, -1, -1, 0};

        TripleSpec e2;
        e2.label = "E2";
        e2.terms = {
            GenTerm{Complex(1.0, 0.0), {}, 1, 2, {q_pow_diag(b, q, {0, 0, 0, 0, 0.5, -0.5})}},
            GenTerm{Complex(1.0, 0.0), {}, 5, 6, {q_pow_diag(b, q, {-0.5, 0.5, 0, 0, 0, 0})}},
        };
        e2.h_coeffs = {1, -1, 0, 0, 1, -1};

        TripleSpec e3;
        e3.label = "E3";
        e3.terms = {
            GenTerm{Complex(1.0, 0.0), {}, 2, 3, {q_pow_diag(b, q, {0, 0, 0, 0.5, -0.5, 0})}},
            GenTerm{Complex(1.0, 0.0), {}, 4, 5, {q_pow_diag(b, q, {0, -0.5, 0.5, 0, 0, 0})}},
        };
        e3.h_coeffs = {0, 1, -1, 1, -1, 0};

        auto soq6 = assemble_realization(b, q, "soq6", {e1, e2, e3});
        soq6.validate();
        chain.subalgebras.push_back(std::move(soq6));
    }

    // Embedded so_q(5): deforming map applied to the classical pair
    // t2^+t4 + t3^+t5 + t2^+t3 + t4^+t5 couples modes 3 and 4 through
    // their symmetric combination.
    {
        Sp4ClassicalData data;
        data.basis = basis;
        data.e1 = Eigen::MatrixXd::Zero(6, 6);
        data.e1(0, 1) = 1.0;
        data.e1(4, 5) = 1.0;
        data.e2 = Eigen::MatrixXd::Zero(6, 6);
        data.e2(1, 3) = 1.0;
        data.e2(2, 4) = 1.0;
        data.e2(1, 2) = 1.0;
        data.e2(3, 4) = 1.0;
        data.h1 = {1, -1, 0, 0, 1, -1};
        data.h2 = {0, 2, 0, 0, -2, 0};
        chain.subalgebras.push_back(sp4_deform(data, q).realization("soq5hat"));
    }

    // so_q(3); the classical combination is normalized so that
    // [l+, l-] = 2 l0 holds (coefficients 2 and sqrt3).
    chain.so3_classical = make_so3_classical(
        b, q, "L",
        {{2.0, {1, 2}},
         {2.0, {5, 6}},
         {std::sqrt(3.0), {2, 4}},
         {std::sqrt(3.0), {3, 5}},
         {std::sqrt(3.0), {2, 3}},
         {std::sqrt(3.0), {4, 5}}},
        {2, 1, 0, 0, -1, -2});
    const auto deformed = cz_deform(chain.so3_classical, q);
    chain.so3 = LadderSet{deformed.e_plus, deformed.e_minus,
                          linear_number_op(b, std::vector<double>{2, 1, 0, 0, -1, -2})};

    const auto& soq6 = chain.subalgebra("soq6");
    const auto& soq5hat = chain.subalgebra("soq5hat");
    chain.cartan_identities.push_back(CartanIdentity{
        "L0 = 3/2 (H1 + H3) + 2 H2", chain.so3.l_zero,
        (soq6.triples[0].h + soq6.triples[2].h) * Complex(1.5, 0.0) +
            soq6.triples[1].h * Complex(2.0, 0.0)});
    chain.cartan_identities.push_back(
        CartanIdentity{"Hhat1 = H2", soq5hat.triples[0].h, soq6.triples[1].h});
    chain.cartan_identities.push_back(CartanIdentity{
        "Hhat2 = H1 + H3", soq5hat.triples[1].h, soq6.triples[0].h + soq6.triples[2].h});

    chain.provenance = {
        {"soq6.E1+", "b2^+b4 q^(N3-N5)/2 + b3^+b5 q^-(N2-N4)/2"},
        {"soq6.E2+", "b1^+b2 q^(N5-N6)/2 + b5^+b6 q^-(N1-N2)/2"},
        {"soq6.E3+", "b2^+b3 q^(N4-N5)/2 + b4^+b5 q^-(N2-N3)/2"},
        {"soq5hat.E1+", "deforming map applied to t1^+t2 + t5^+t6, t = undeformed boson"},
        {"soq5hat.E2+",
         "deforming map applied to t2^+t4 + t3^+t5 + t2^+t3 + t4^+t5, t = undeformed boson"},
        {"L+",
         "CZ deformation of 2(t1^+t2 + t5^+t6) + sqrt3(t2^+t4 + t3^+t5 + t2^+t3 + t4^+t5);"
         " the combination is normalized to satisfy [l+,l-] = 2 l0"},
        {"L0", "2 N1 + N2 - N5 - 2 N6"},
    };
    return chain;
}

ChainRealization build_chain(ChainKind kind, std::shared_ptr<const FockBasis> basis,
                             const DeformationParameter& q) {
    switch (kind) {
        case ChainKind::vibrational: return build_vibrational(std::move(basis), q);
        case ChainKind::rotational: return build_rotational(std::move(basis), q);
        case ChainKind::gamma_unstable: return build_gamma(std::move(basis), q);
    }
    throw std::logic_error("unknown chain kind");
}

RelationReport check_chain(const ChainRealization& chain, const DeformationParameter& q,
                           double tol) {
    RelationReport report;
    report.subject = "chain:" + chain_kind_name(chain.kind);
    report.tolerance = tol;

    for (const auto& sub : chain.subalgebras) {
        report.merge(check_chevalley(sub, q, tol), sub.name + ":");
        report.merge(check_serre(sub, q, tol), sub.name + ":");
    }

    report.add("so3:[L+,L-]-[2L0]q",
               (commutator(chain.so3.l_plus, chain.so3.l_minus) -
                diagonal_q_bracket(chain.so3.l_zero, q, 2.0))
                   .inf_norm());
    report.add("so3:[L0,L+]-L+",
               (commutator(chain.so3.l_zero, chain.so3.l_plus) - chain.so3.l_plus).inf_norm());
    report.add("so3:[L0,L-]+L-",
               (commutator(chain.so3.l_zero, chain.so3.l_minus) + chain.so3.l_minus).inf_norm());

    for (const auto& identity : chain.cartan_identities)
        report.add("cartan:" + identity.label, (identity.lhs - identity.rhs).inf_norm());

    if (q.is_real()) {
        for (const auto& sub : chain.subalgebras)
            for (const auto& t : sub.triples)
                report.add("adjoint:" + sub.name + "." + t.label,
                           (t.e_minus - t.e_plus.adjoint()).inf_norm());
        report.add("adjoint:L", (chain.so3.l_minus - chain.so3.l_plus.adjoint()).inf_norm());
    }
    return report;
}

LimitTable classical_limit_check(ChainKind kind, std::shared_ptr<const FockBasis> basis,
                                 std::span<const double> eps_list) {
    if (eps_list.empty()) throw std::invalid_argument("classical_limit_check: empty eps list");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] >= 0.0))
            throw std::invalid_argument("classical_limit_check: eps values must be nonnegative");
        if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
            throw std::invalid_argument("classical_limit_check: eps values must decrease");
    }

    const auto reference = build_chain(kind, basis, DeformationParameter::one()).generators();

    std::vector<std::vector<double>> distances(reference.size(),
                                               std::vector<double>(eps_list.size(), 0.0));
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        const auto deformed =
            build_chain(kind, basis, DeformationParameter::real_q(1.0 + eps_list[e])).generators();
        for (std::size_t g = 0; g < reference.size(); ++g)
            distances[g][e] = distance(deformed[g].second, reference[g].second);
    }

    LimitTable table;
    std::vector<double> chain_max(eps_list.size(), 0.0);
    for (std::size_t g = 0; g < reference.size(); ++g) {
        double peak = 0.0;
        for (std::size_t e = 0; e < eps_list.size(); ++e) {
            table.rows.push_back(LimitRow{reference[g].first, eps_list[e], distances[g][e]});
            peak = std::max(peak, distances[g][e]);
            chain_max[e] = std::max(chain_max[e], distances[g][e]);
        }
        if (peak < 1e-13) continue;  // exactly q-independent generator
        for (std::size_t e = 0; e + 1 < eps_list.size(); ++e) {
            if (eps_list[e + 1] == 0.0) continue;  // ratio undefined towards the classical point
            const double d0 = distances[g][e];
            const double d1 = distances[g][e + 1];
            const double r = eps_list[e] / eps_list[e + 1];
            if (!(d0 > d1)) {
                table.scaling_violations.push_back(reference[g].first + ": not decreasing at eps=" +
                                                   std::to_string(eps_list[e + 1]));
                continue;
            }
            // The q-dependence of every generator is analytic in ln q;
            // generators invariant under q <-> 1/q converge at second
            // order, the rest at first order.
            const double ratio = d1 == 0.0 ? 1e300 : d0 / d1;
            const bool first_order = ratio >= 0.5 * r && ratio <= 2.0 * r;
            const bool second_order = ratio >= 0.5 * r * r && ratio <= 2.0 * r * r;
            if (!first_order && !second_order)
                table.scaling_violations.push_back(reference[g].first +
                                                   ": ratio outside the analytic-order windows at eps=" +
                                                   std::to_string(eps_list[e + 1]));
        }
    }
    // Chain-level distance (maximum over generators).
    for (std::size_t e = 0; e < eps_list.size(); ++e)
        table.rows.push_back(LimitRow{"max", eps_list[e], chain_max[e]});
    for (std::size_t e = 0; e + 1 < eps_list.size(); ++e) {
        if (eps_list[e + 1] == 0.0) continue;
        const double r = eps_list[e] / eps_list[e + 1];
        const double ratio = chain_max[e + 1] == 0.0 ? 1e300 : chain_max[e] / chain_max[e + 1];
        const bool first_order = ratio >= 0.5 * r && ratio <= 2.0 * r;
        const bool second_order = ratio >= 0.5 * r * r && ratio <= 2.0 * r * r;
        if (!(chain_max[e] > chain_max[e + 1]))
            table.scaling_violations.push_back("max: not decreasing at eps=" +
                                               std::to_string(eps_list[e + 1]));
        else if (!first_order && !second_order)
            table.scaling_violations.push_back("max: ratio outside the analytic-order windows at eps=" +
                                               std::to_string(eps_list[e + 1]));
    }
    return table;
}

}  // namespace qchain
