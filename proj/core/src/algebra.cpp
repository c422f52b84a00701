#include "qchain/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qchain {

namespace {

std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", r);
    return buf;
}

Operator matrix_power(const Operator& a, int n) {
    Operator acc = Operator::identity(a.rows(), a.codomain());
    for (int k = 0; k < n; ++k) acc = acc * a;
    return acc;
}

}  // namespace

void AlgebraRealization::validate() const {
    const int r = rank();
    if (cartan_matrix.rows() != r || cartan_matrix.cols() != r)
        throw std::invalid_argument(name + ": Cartan matrix must match the number of triples");
    for (int i = 0; i < r; ++i) {
        if (cartan_matrix(i, i) != 2)
            throw std::invalid_argument(name + ": Cartan matrix diagonal must be 2");
        for (int j = 0; j < r; ++j)
            if (triples[i].d * cartan_matrix(i, j) != triples[j].d * cartan_matrix(j, i))
                throw std::invalid_argument(name + ": d_i a_ij = d_j a_ji violated at (" +
                                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
}

void RelationReport::add(std::string id, double residual) {
    entries.push_back(RelationEntry{std::move(id), residual, residual < tolerance});
}

void RelationReport::merge(const RelationReport& other, const std::string& prefix) {
    for (const auto& e : other.entries)
        entries.push_back(RelationEntry{prefix + e.id, e.residual, e.pass});
    for (const auto& n : other.notes) notes.push_back(prefix + n);
}

double RelationReport::max_residual() const {
    double best = 0.0;
    for (const auto& e : entries) best = std::max(best, e.residual);
    return best;
}

bool RelationReport::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

std::string report_text(const RelationReport& report) {
    std::string out = "subject=" + report.subject + " tol=" + format_residual(report.tolerance) + "\n";
    for (const auto& note : report.notes) out += "note: " + note + "\n";
    for (const auto& e : report.entries)
        out += e.id + " residual=" + format_residual(e.residual) + (e.pass ? " pass" : " FAIL") + "\n";
    out += "max_residual=" + format_residual(report.max_residual()) +
           " relations=" + std::to_string(report.entries.size()) +
           (report.all_pass() ? " all_pass" : " failures_present") + "\n";
    return out;
}

AlgebraRealization build_glq(const FockBasis& basis, const DeformationParameter& q) {
    const int n = basis.n_modes();
    if (n < 2) throw std::invalid_argument("build_glq: at least two modes required");
    require_valid_parameter(q, std::max(1, basis.total()));

    AlgebraRealization out;
    out.name = "glq" + std::to_string(n);
    for (int i = 1; i <= n - 1; ++i) {
        ChevalleyTriple t;
        t.label = "e" + std::to_string(i);
        t.e_plus = bilinear(basis, i, i + 1, q);
        t.e_minus = bilinear(basis, i + 1, i, q);
        t.h = number_op(basis, i) - number_op(basis, i + 1);
        t.d = 1;
        out.triples.push_back(std::move(t));
    }
    std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    out.extra_cartans.emplace_back("h0", linear_number_op(basis, ones));

    out.cartan_matrix = Eigen::MatrixXi::Zero(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
        out.cartan_matrix(i, i) = 2;
        if (i > 0) out.cartan_matrix(i, i - 1) = -1;
        if (i < n - 2) out.cartan_matrix(i, i + 1) = -1;
    }
    out.validate();
    return out;
}

RelationReport check_chevalley(const AlgebraRealization& realization,
                               const DeformationParameter& q, double tol) {
    realization.validate();
    RelationReport report;
    report.subject = realization.name + ":chevalley";
    report.tolerance = tol;
    report.notes = realization.notes;
    const int r = realization.rank();

    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const auto& ti = realization.triples[i];
            const auto& tj = realization.triples[j];
            Operator lhs = commutator(ti.e_plus, tj.e_minus);
            if (i == j) lhs = lhs - diagonal_q_bracket(ti.h, q.integer_power(ti.d));
            report.add("[" + ti.label + "+," + tj.label + "-]", lhs.inf_norm());
        }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            report.add("[h" + std::to_string(i + 1) + ",h" + std::to_string(j + 1) + "]",
                       commutator(realization.triples[i].h, realization.triples[j].h).inf_norm());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const auto& ti = realization.triples[i];
            const auto& tj = realization.triples[j];
            const double a = realization.cartan_matrix(i, j);
            report.add("[h" + std::to_string(i + 1) + "," + tj.label + "+]",
                       (commutator(ti.h, tj.e_plus) - tj.e_plus * Complex(a, 0.0)).inf_norm());
            report.add("[h" + std::to_string(i + 1) + "," + tj.label + "-]",
                       (commutator(ti.h, tj.e_minus) + tj.e_minus * Complex(a, 0.0)).inf_norm());
        }
    for (const auto& [label, op] : realization.extra_cartans) {
        for (int j = 0; j < r; ++j) {
            const auto& tj = realization.triples[j];
            report.add("[" + label + "," + tj.label + "+]", commutator(op, tj.e_plus).inf_norm());
            report.add("[" + label + "," + tj.label + "-]", commutator(op, tj.e_minus).inf_norm());
            report.add("[" + label + ",h" + std::to_string(j + 1) + "]",
                       commutator(op, tj.h).inf_norm());
        }
    }
    return report;
}

RelationReport check_serre(const AlgebraRealization& realization,
                           const DeformationParameter& q, double tol) {
    realization.validate();
    RelationReport report;
    report.subject = realization.name + ":serre";
    report.tolerance = tol;
    const int r = realization.rank();

    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            const auto& ti = realization.triples[i];
            const auto& tj = realization.triples[j];
            const int order = 1 - realization.cartan_matrix(i, j);
            const auto qi = q.integer_power(ti.d);
            for (int sign = 0; sign < 2; ++sign) {
                const Operator& ei = sign == 0 ? ti.e_plus : ti.e_minus;
                const Operator& ej = sign == 0 ? tj.e_plus : tj.e_minus;
                Operator acc = Operator::zero(ei.rows(), ei.cols(), ei.domain(), ei.codomain());
                for (int n = 0; n <= order; ++n) {
                    const double c = (n % 2 == 0 ? 1.0 : -1.0) * q_binomial(order, n, qi);
                    acc = acc + matrix_power(ei, order - n) * ej * matrix_power(ei, n) * Complex(c, 0.0);
                }
                report.add("serre:" + ti.label + (sign == 0 ? "+" : "-") + ":" + tj.label +
                               (sign == 0 ? "+" : "-"),
                           acc.inf_norm());
            }
        }
    return report;
}

Operator casimir_slq2(const ChevalleyTriple& triple, const DeformationParameter& q,
                      double relation_tol) {
    const auto qi = q.integer_power(triple.d);
    const double r1 =
        (commutator(triple.e_plus, triple.e_minus) - diagonal_q_bracket(triple.h, qi)).inf_norm();
    const double r2 =
        (commutator(triple.h, triple.e_plus) - triple.e_plus * Complex(2.0, 0.0)).inf_norm();
    const double r3 =
        (commutator(triple.h, triple.e_minus) + triple.e_minus * Complex(2.0, 0.0)).inf_norm();
    if (r1 > relation_tol || r2 > relation_tol || r3 > relation_tol)
        throw std::invalid_argument("casimir_slq2: triple does not satisfy the sl_q(2) relations (" +
                                    format_residual(std::max({r1, r2, r3})) + ")");

    // C = E- E+ + [J0][J0+1] with J0 = H/2, evaluated entrywise.
    Vector entries = Vector::Zero(triple.h.rows());
    Eigen::VectorXd half_h = Eigen::VectorXd::Zero(triple.h.rows());
    for (int k = 0; k < triple.h.matrix().outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(triple.h.matrix(), k); it; ++it)
            half_h[it.row()] = 0.5 * it.value().real();
    for (Eigen::Index i = 0; i < entries.size(); ++i)
        entries[i] = Complex(q_number(half_h[i], qi) * q_number(half_h[i] + 1.0, qi), 0.0);
    return triple.e_minus * triple.e_plus + Operator::diagonal(entries, triple.h.domain());
}

ChevalleyTriple coproduct_rep(const ChevalleyTriple& v, const ChevalleyTriple& w,
                              const DeformationParameter& q) {
    if (v.d != w.d) throw std::invalid_argument("coproduct_rep: length exponents must agree");
    const auto qi = q.integer_power(v.d);
    const Operator qv_plus = diagonal_q_power(v.h, qi, 0.5);
    const Operator qv_minus = diagonal_q_power(v.h, qi, -0.5);
    const Operator qw_plus = diagonal_q_power(w.h, qi, 0.5);
    const Operator id_v = Operator::identity(v.h.rows());
    const Operator id_w = Operator::identity(w.h.rows());

    ChevalleyTriple out;
    out.label = "D(" + v.label + ")";
    out.d = v.d;
    out.e_plus = kron(v.e_plus, qw_plus) + kron(qv_minus, w.e_plus);
    out.e_minus = kron(v.e_minus, qw_plus) + kron(qv_minus, w.e_minus);
    out.h = kron(v.h, id_w) + kron(id_v, w.h);
    return out;
}

RelationReport check_q_tensor(const ChevalleyTriple& codomain_triple,
                              const ChevalleyTriple& domain_triple,
                              const TensorComponents& components, int twice_k,
                              const DeformationParameter& q, double tol) {
    if (twice_k < 0) throw std::invalid_argument("check_q_tensor: rank must be nonnegative");
    for (int tm = -twice_k; tm <= twice_k; tm += 2)
        if (!components.count(tm))
            throw std::invalid_argument("check_q_tensor: missing component 2m=" + std::to_string(tm));

    RelationReport report;
    report.subject = "q_tensor:k=" + std::to_string(twice_k) + "/2";
    report.tolerance = tol;

    const Operator q_mj0_in = diagonal_q_power(domain_triple.h, q, -0.5);  // q^{-J0}, J0 = H/2
    const double k = 0.5 * twice_k;

    for (int tm = -twice_k; tm <= twice_k; tm += 2) {
        const double m = 0.5 * tm;
        const Operator& t = components.at(tm);

        const Operator j0_comm = codomain_triple.h * t * Complex(0.5, 0.0) -
                                 t * domain_triple.h * Complex(0.5, 0.0) - t * Complex(m, 0.0);
        report.add("[J0,T(2m=" + std::to_string(tm) + ")]", j0_comm.inf_norm());

        for (int sign : {+1, -1}) {
            const Operator& j_out = sign > 0 ? codomain_triple.e_plus : codomain_triple.e_minus;
            const Operator& j_in = sign > 0 ? domain_triple.e_plus : domain_triple.e_minus;
            const Operator lhs = (j_out * t - q.power(-m) * (t * j_in)) * q_mj0_in;

            Operator rhs = Operator::zero(lhs.rows(), lhs.cols(), lhs.domain(), lhs.codomain());
            const int tm_next = tm + 2 * sign;
            if (std::abs(tm_next) <= twice_k) {
                const double c =
                    std::sqrt(q_number(k - sign * m, q) * q_number(k + sign * m + 1.0, q));
                rhs = components.at(tm_next) * Complex(c, 0.0);
            }
            report.add(std::string("[J") + (sign > 0 ? "+" : "-") + ",T(2m=" + std::to_string(tm) +
                           ")]",
                       (lhs - rhs).inf_norm());
        }
    }
    return report;
}

ChevalleyTriple build_slq2_bosonic(const FockBasis& basis, const DeformationParameter& q) {
    if (basis.n_modes() != 2) throw std::invalid_argument("build_slq2_bosonic: two modes required");
    ChevalleyTriple t;
    t.label = "J";
    t.e_plus = bilinear(basis, 1, 2, q);
    t.e_minus = bilinear(basis, 2, 1, q);
    t.h = number_op(basis, 1) - number_op(basis, 2);
    t.d = 1;
    return t;
}

LadderSet build_soq3_nonstandard(const FockBasis& basis, const DeformationParameter& q) {
    if (basis.n_modes() != 3) throw std::invalid_argument("build_soq3_nonstandard: three modes required");
    require_valid_parameter(q, std::max(1, basis.total()));
    if (q.is_phase()) {
        for (int n = 0; n <= basis.total(); ++n)
            if (2.0 * std::cos(n * q.tau()) <= 0.0)
                throw std::domain_error("build_soq3_nonstandard: q^n + q^-n not positive at n=" +
                                        std::to_string(n));
    }

    // Modes (1, 2, 3) carry m = (+1, 0, -1).
    const auto n1 = number_op(basis, 1);
    const auto n2 = number_op(basis, 2);
    const auto n3 = number_op(basis, 3);

    const auto root_sum = [&](int mode) {
        return diagonal_op(basis, [mode, &q](std::span<const int> occ) {
            const double n = occ[static_cast<std::size_t>(mode - 1)];
            return Complex(std::sqrt((q.power(n) + q.power(-n)).real()), 0.0);
        });
    };
    const auto q_pow = [&](int mode, double scale) {
        return diagonal_op(basis, [mode, scale, &q](std::span<const int> occ) {
            return q.power(scale * occ[static_cast<std::size_t>(mode - 1)]);
        });
    };

    const Operator d_a = q_pow(3, 1.0) * q_pow(2, -0.5) * root_sum(1);
    const Operator d_b = q_pow(1, 1.0) * q_pow(2, -0.5) * root_sum(3);

    LadderSet set;
    set.l_plus = d_a * bilinear(basis, 1, 2, q) + bilinear(basis, 2, 3, q) * d_b;
    set.l_minus = bilinear(basis, 2, 1, q) * d_a + d_b * bilinear(basis, 3, 2, q);
    set.l_zero = n1 - n3;
    return set;
}

Eigen::VectorXd ladder_commutator_spectrum(const LadderSet& set) {
    const DenseMatrix c = commutator(set.l_plus, set.l_minus).dense();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver((c + c.adjoint()) * 0.5);
    return solver.eigenvalues();
}

}  // namespace qchain
