#pragma once

#include <map>
#include <string>
#include <vector>

#include "qchain/fock.hpp"
#include "qchain/operator.hpp"

namespace qchain {

/// One Cartan-Chevalley generator set (E+, E-, H) attached to a node of
/// a Dynkin diagram, with its length exponent d (q_i = q^{d_i}).
struct ChevalleyTriple {
    std::string label;
    Operator e_plus;
    Operator e_minus;
    Operator h;  // diagonal with integer entries
    int d = 1;
};

/// A named set of Chevalley triples plus auxiliary Cartan elements and
/// the integer Cartan matrix. Construction enforces a_ii = 2 and the
/// symmetrizability condition d_i a_ij = d_j a_ji.
struct AlgebraRealization {
    std::string name;
    std::vector<ChevalleyTriple> triples;
    std::vector<std::pair<std::string, Operator>> extra_cartans;
    Eigen::MatrixXi cartan_matrix;
    std::vector<std::string> notes;  // convention decisions surfaced in reports

    int rank() const { return static_cast<int>(triples.size()); }
    void validate() const;
};

struct RelationEntry {
    std::string id;
    double residual = 0.0;
    bool pass = false;
};

/// Deterministic list of relation residuals with one pass/fail verdict
/// per relation at a fixed tolerance.
struct RelationReport {
    std::string subject;
    double tolerance = 0.0;
    std::vector<RelationEntry> entries;
    std::vector<std::string> notes;

    void add(std::string id, double residual);
    void merge(const RelationReport& other, const std::string& prefix = "");
    double max_residual() const;
    bool all_pass() const;
};

/// Plain-text rendering: one line per relation, residual in scientific
/// notation, fixed field order. Byte-stable for identical inputs.
std::string report_text(const RelationReport& report);

/// gl_q(n) realization on an n-mode sector: e_i^+ = b_i^+ b_{i+1},
/// h_i = N_i - N_{i+1} (all d_i = 1, A_{n-1} Cartan matrix), plus the
/// extra Cartan element h_0 = sum_j N_j.
AlgebraRealization build_glq(const FockBasis& basis, const DeformationParameter& q);

/// Chevalley relations: [e_i^+, e_j^-] = delta_ij [h_i]_{q_i},
/// [h_i, h_j] = 0, [h_i, e_j^±] = ±a_ij e_j^±, and centrality of the
/// extra Cartan elements. [h]_{q_i} is evaluated entrywise on the
/// diagonal.
RelationReport check_chevalley(const AlgebraRealization& realization,
                               const DeformationParameter& q, double tol);

/// q-Serre relations with q-binomial coefficients at q_i = q^{d_i},
/// for every pair i != j and both signs.
RelationReport check_serre(const AlgebraRealization& realization,
                           const DeformationParameter& q, double tol);

/// Casimir operator of an sl_q(2) triple: E- E+ + [J0]_q [J0+1]_q with
/// J0 = H/2. Verifies the triple's own relations first and throws if
/// they fail. Eigenvalue on a spin-j block is [j]_q [j+1]_q.
Operator casimir_slq2(const ChevalleyTriple& triple, const DeformationParameter& q,
                      double relation_tol = 1e-8);

/// Coproduct representation on the tensor product of two module spaces:
/// D(e±) = e± ⊗ q_i^{h/2} + q_i^{-h/2} ⊗ e±, D(h) = h⊗1 + 1⊗h.
ChevalleyTriple coproduct_rep(const ChevalleyTriple& v, const ChevalleyTriple& w,
                              const DeformationParameter& q);

/// Components of a candidate rank-k q-tensor, keyed by 2m to keep
/// half-integer projections exact. Components may be rectangular (for
/// sector-changing tensors); the two triples supply the action on the
/// codomain and domain spaces respectively (pass the same triple twice
/// for number-conserving tensors).
using TensorComponents = std::map<int, Operator>;

/// Defining relations of sl_q(2) q-tensor operators:
/// [J±, T^k_m]_{q^{-m}} q^{-J0} = sqrt([k∓m][k±m+1]) T^k_{m±1} and
/// [J0, T^k_m] = m T^k_m.
RelationReport check_q_tensor(const ChevalleyTriple& codomain_triple,
                              const ChevalleyTriple& domain_triple,
                              const TensorComponents& components, int twice_k,
                              const DeformationParameter& q, double tol);

/// Two-mode q-boson realization of sl_q(2): J+ = b_1^+ b_2,
/// J- = b_2^+ b_1, H = N_1 - N_2. Sector N carries spin j = N/2.
ChevalleyTriple build_slq2_bosonic(const FockBasis& basis, const DeformationParameter& q);

/// Angular-momentum-style labeled set (L+, L-, L0); no closure of
/// [L+, L-] is implied.
struct LadderSet {
    Operator l_plus;
    Operator l_minus;
    Operator l_zero;
};

/// Three-mode realization of so_q(3) with modes ordered (m=+1, 0, -1).
/// L- mirrors the printed dressing of L+ (it equals the adjoint exactly
/// when q is real). For phase q every radicand q^n + q^-n = 2cos(n tau)
/// must be positive on the sector.
LadderSet build_soq3_nonstandard(const FockBasis& basis, const DeformationParameter& q);

/// Eigenvalues of [L+, L-] for a ladder set, ascending. Reported for
/// inspection; no closure relation is asserted.
Eigen::VectorXd ladder_commutator_spectrum(const LadderSet& set);

}  // namespace qchain
