#include "qchain/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qchain {

namespace {

constexpr double kGridStep = M_PI / 2000.0;

ChevalleyTriple so3_triple(const ChainRealization& chain) {
    ChevalleyTriple t;
    t.label = "L";
    t.e_plus = chain.so3.l_plus;
    t.e_minus = chain.so3.l_minus;
    t.h = chain.so3.l_zero * Complex(2.0, 0.0);
    t.d = 1;
    return t;
}

Operator classical_so3_casimir(const ChainRealization& chain) {
    const auto& c = chain.so3_classical;
    // l- l+ + l0 (l0 + 1) with l0 = h/2.
    Vector entries = Vector::Zero(c.h.rows());
    for (int k = 0; k < c.h.matrix().outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(c.h.matrix(), k); it; ++it) {
            const double l0 = 0.5 * it.value().real();
            entries[it.row()] = Complex(l0 * (l0 + 1.0), 0.0);
        }
    return c.e_minus * c.e_plus + Operator::diagonal(entries, c.h.domain());
}

/// Quadratic invariant of the Lie algebra spanned by a generator list,
/// with the bilinear form tr(XY) of the representation itself: closes
/// the span under commutators, then C = sum g^{ab} T_a T_b.
Operator trace_form_casimir(const std::vector<Operator>& generators, const std::string& name) {
    if (generators.empty()) throw std::invalid_argument(name + ": no generators");
    const Eigen::Index dim = generators.front().rows();
    const Eigen::Index vec_len = dim * dim;

    std::vector<DenseMatrix> basis;  // orthonormal under the Frobenius product
    const auto project_residual = [&](DenseMatrix m) {
        for (const auto& b : basis) m -= (b.conjugate().cwiseProduct(m)).sum() * b;
        return m;
    };
    const auto try_add = [&](const DenseMatrix& m) {
        DenseMatrix r = project_residual(m);
        const double norm = r.norm();
        if (norm < 1e-10 * std::max(1.0, m.norm())) return false;
        basis.push_back(r / norm);
        return true;
    };

    for (const auto& g : generators) {
        if (g.rows() != dim || g.cols() != dim)
            throw std::invalid_argument(name + ": generators must be square and of equal size");
        try_add(g.dense());
    }
    // Close under commutators.
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            if (basis.size() > static_cast<std::size_t>(vec_len))
                throw std::logic_error(name + ": commutator closure exceeded the space dimension");
            try_add(basis[a] * basis[b] - basis[b] * basis[a]);
        }

    const auto n = static_cast<Eigen::Index>(basis.size());
    DenseMatrix gram(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) gram(a, b) = (basis[a] * basis[b]).trace();
    const Eigen::FullPivLU<DenseMatrix> lu(gram);
    if (!lu.isInvertible())
        throw std::invalid_argument(name + ": trace form is degenerate on this sector");
    const DenseMatrix gram_inv = lu.inverse();

    DenseMatrix c = DenseMatrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) c += gram_inv(a, b) * (basis[a] * basis[b]);
    const auto key = generators.front().domain();
    return Operator(SparseMatrix(c.sparseView()), key, key);
}

Operator resolve_invariant(const ChainRealization& chain, const std::string& id) {
    if (id == "so3q_casimir") return casimir_slq2(so3_triple(chain), chain.q);
    if (id == "so3_casimir_classical") return classical_so3_casimir(chain);

    if (id.ends_with("_casimir_classical")) {
        const std::string sub_name = id.substr(0, id.size() - std::string("_casimir_classical").size());
        const auto classical = build_chain(chain.kind, chain.basis, DeformationParameter::one());
        const auto& sub = classical.subalgebra(sub_name);
        std::vector<Operator> gens;
        for (const auto& t : sub.triples) {
            gens.push_back(t.e_plus);
            gens.push_back(t.e_minus);
            gens.push_back(t.h);
        }
        for (const auto& [label, op] : sub.extra_cartans) gens.push_back(op);
        return trace_form_casimir(gens, id);
    }

    if (id.starts_with("poly:")) {
        const std::string expr = id.substr(5);
        if (expr.empty()) throw std::invalid_argument("empty poly invariant");
        Operator acc;
        bool first = true;
        std::size_t pos = 0;
        while (pos <= expr.size()) {
            const std::size_t next = expr.find('*', pos);
            const std::string label =
                expr.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            const Operator g = chain.generator(label);
            acc = first ? g : acc * g;
            first = false;
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return acc;
    }

    throw std::invalid_argument("unknown invariant id: " + id);
}

double sum_squared_residual(const LevelScheme& scheme, double tau, double* k_out) {
    const auto q = tau == 0.0 ? DeformationParameter::one() : DeformationParameter::phase(tau);
    double num = 0.0, den = 0.0;
    for (const auto& level : scheme.levels) {
        const double f = q_number(level.j, q) * q_number(level.j + 1.0, q);
        num += level.weight * level.energy * f;
        den += level.weight * f * f;
    }
    const double k = den > 0.0 ? num / den : 0.0;
    if (k_out) *k_out = k;
    double sse = 0.0;
    for (const auto& level : scheme.levels) {
        const double f = q_number(level.j, q) * q_number(level.j + 1.0, q);
        const double r = level.energy - k * f;
        sse += level.weight * r * r;
    }
    return sse;
}

}  // namespace

void LevelScheme::validate() const {
    std::set<double> seen;
    for (const auto& level : levels) {
        if (level.j < 0.0) throw std::invalid_argument("level scheme: j must be nonnegative");
        if (!(level.weight > 0.0)) throw std::invalid_argument("level scheme: weights must be positive");
        if (!seen.insert(level.j).second)
            throw std::invalid_argument("level scheme: duplicate j value");
    }
}

std::vector<std::pair<double, double>> rotator_spectrum(double K, const DeformationParameter& q,
                                                        std::span<const double> j_list) {
    // E_j = K [j][j+1] is total in q: no square roots are taken, so the
    // only excluded parameter is the singular point q = -1.
    if (q.is_phase() && std::abs(std::sin(q.tau())) < 1e-12 && !q.is_one())
        throw std::domain_error("rotator_spectrum: tau = pi is singular");
    std::vector<std::pair<double, double>> out;
    out.reserve(j_list.size());
    for (double j : j_list)
        out.emplace_back(j, K * q_number(j, q) * q_number(j + 1.0, q));
    return out;
}

Operator build_hamiltonian(const ChainRealization& chain, std::span<const HamiltonianTerm> terms) {
    const int dim = chain.basis->dim();
    Operator h = Operator::zero(dim, dim, chain.basis->key(), chain.basis->key());
    for (const auto& term : terms) {
        const Operator op = resolve_invariant(chain, term.invariant_id);
        const double scale = std::max(1.0, op.inf_norm());
        const double drift = commutator(op, chain.so3.l_zero).inf_norm();
        if (drift > 1e-8 * scale)
            throw std::invalid_argument("hamiltonian term does not commute with L0: " +
                                        term.invariant_id);
        h = h + op * Complex(term.coefficient, 0.0);
    }
    return h;
}

Operator symmetrize(const std::function<Operator(const DeformationParameter&)>& build,
                    const DeformationParameter& q) {
    const Operator at_q = build(q);
    const Operator at_inverse = build(q.inverse());
    return (at_q + at_inverse) * Complex(0.5, 0.0);
}

std::vector<EigenLevel> eigenlevels(const Operator& h) {
    if (!h.is_square()) throw std::invalid_argument("eigenlevels: operator must be square");
    const double defect = (h - h.adjoint()).inf_norm();
    if (defect > 1e-10 * std::max(1.0, h.inf_norm()))
        throw std::invalid_argument("eigenlevels: operator is not self-adjoint within tolerance");

    const DenseMatrix dense = h.dense();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver((dense + dense.adjoint()) * 0.5);
    const Eigen::VectorXd values = solver.eigenvalues();

    double scale = 1.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) scale = std::max(scale, std::abs(values[i]));
    const double tol = 1e-8 * scale;

    std::vector<EigenLevel> levels;
    Eigen::Index i = 0;
    while (i < values.size()) {
        Eigen::Index k = i;
        double sum = 0.0;
        while (k < values.size() && values[k] - values[i] <= tol) sum += values[k++];
        levels.push_back(EigenLevel{sum / static_cast<double>(k - i), static_cast<int>(k - i)});
        i = k;
    }
    return levels;
}

FitResult fit_rotator(const LevelScheme& scheme) {
    scheme.validate();
    std::set<double> positive_j;
    double j_max = 0.0;
    bool any_energy = false;
    for (const auto& level : scheme.levels) {
        if (level.j > 0.0) positive_j.insert(level.j);
        j_max = std::max(j_max, level.j);
        if (level.energy != 0.0) any_energy = true;
    }
    if (positive_j.size() < 2)
        throw std::invalid_argument("fit_rotator: underdetermined (need two levels with distinct j > 0)");
    if (!any_energy) throw std::invalid_argument("fit_rotator: degenerate all-zero energies");

    const double tau_limit = M_PI / (j_max + 1.0);
    const double tau_max = tau_limit * (1.0 - 1e-9);

    double best_tau = 0.0;
    double best_sse = sum_squared_residual(scheme, 0.0, nullptr);
    for (double tau = kGridStep; tau <= tau_max; tau += kGridStep) {
        const double sse = sum_squared_residual(scheme, tau, nullptr);
        if (sse < best_sse) {
            best_sse = sse;
            best_tau = tau;
        }
    }

    // Golden-section refinement around the best grid point.
    double lo = std::max(0.0, best_tau - kGridStep);
    double hi = std::min(tau_max, best_tau + kGridStep);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = sum_squared_residual(scheme, x1, nullptr);
    double f2 = sum_squared_residual(scheme, x2, nullptr);
    while (hi - lo > 1e-12) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = sum_squared_residual(scheme, x1, nullptr);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = sum_squared_residual(scheme, x2, nullptr);
        }
    }
    const double tau_hat = 0.5 * (lo + hi);

    FitResult result;
    sum_squared_residual(scheme, tau_hat, &result.K);
    result.tau = tau_hat;
    const auto q = tau_hat == 0.0 ? DeformationParameter::one() : DeformationParameter::phase(tau_hat);
    double weighted_sq = 0.0, weight_sum = 0.0;
    for (const auto& level : scheme.levels) {
        const double f = q_number(level.j, q) * q_number(level.j + 1.0, q);
        const double r = level.energy - result.K * f;
        result.residuals.push_back(r);
        weighted_sq += level.weight * r * r;
        weight_sum += level.weight;
    }
    result.rms = std::sqrt(weighted_sq / weight_sum);
    return result;
}

}  // namespace qchain
