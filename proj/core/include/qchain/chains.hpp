#pragma once

#include <memory>

#include "qchain/algebra.hpp"
#include "qchain/maps.hpp"

namespace qchain {

enum class ChainKind { vibrational, rotational, gamma_unstable };

std::string chain_kind_name(ChainKind kind);
/// Parses "vibrational" | "rotational" | "gamma"; throws on anything else.
ChainKind parse_chain_kind(const std::string& name);

/// An exact identity between the chain's Cartan elements (integer
/// diagonal arithmetic; expected residual 0).
struct CartanIdentity {
    std::string label;
    Operator lhs;
    Operator rhs;
};

/// One embedding chain realized on a six-mode sector: the deformed
/// subalgebra realizations, the angular-momentum set (L+, L-, L0)
/// obtained by deforming its classical counterpart, the classical
/// counterpart itself, and the exact Cartan identities tying the
/// levels together.
struct ChainRealization {
    ChainKind kind = ChainKind::vibrational;
    DeformationParameter q = DeformationParameter::one();
    std::shared_ptr<const FockBasis> basis;
    std::vector<AlgebraRealization> subalgebras;
    LadderSet so3;
    ClassicalTriple so3_classical;
    std::vector<CartanIdentity> cartan_identities;
    /// Construction formula per generator label, for reports.
    std::vector<std::pair<std::string, std::string>> provenance;

    const AlgebraRealization& subalgebra(const std::string& name) const;
    /// Named generator lookup ("L+", "L0", "soq5.E1+", "slq3.H2", ...).
    Operator generator(const std::string& label) const;
    /// All named generators in deterministic order.
    std::vector<std::pair<std::string, Operator>> generators() const;
};

/// gl_q(6) > gl_q(5) > so_q(5) > so_q(3) on a six-mode sector. Modes
/// 1-5 carry the d boson (m = 2, 1, 0, -1, -2), mode 6 the s boson.
ChainRealization build_vibrational(std::shared_ptr<const FockBasis> basis,
                                   const DeformationParameter& q);

/// gl_q(6) > sl_q(3) > so_q(3).
ChainRealization build_rotational(std::shared_ptr<const FockBasis> basis,
                                  const DeformationParameter& q);

/// gl_q(6) > so_q(6) > so_q(5) > so_q(3).
ChainRealization build_gamma(std::shared_ptr<const FockBasis> basis,
                             const DeformationParameter& q);

ChainRealization build_chain(ChainKind kind, std::shared_ptr<const FockBasis> basis,
                             const DeformationParameter& q);

/// Full verification: Chevalley and Serre relations of every subalgebra,
/// the so_q(3) ladder relations [L+, L-] = [2 L0]_q and [L0, L±] = ±L±,
/// the exact Cartan identities, and adjointness E- = (E+)^dag for real q.
RelationReport check_chain(const ChainRealization& chain, const DeformationParameter& q, double tol);

/// One row of the classical-limit convergence table.
struct LimitRow {
    std::string generator;
    double eps;
    double distance;
};

struct LimitTable {
    std::vector<LimitRow> rows;
    /// Labels that failed monotone decrease or the scaling windows;
    /// empty when the table behaves like an analytic limit.
    std::vector<std::string> scaling_violations;
};

/// Distances between each generator at q = 1 + eps and its q = 1
/// counterpart, for every eps in the list (positive, decreasing), plus
/// one "max" row per eps with the chain-level maximum.
///
/// Assertions recorded in scaling_violations: every generator's
/// distances decrease monotonically and scale at first or second order
/// in eps (within a factor of 2); generators invariant under q <-> 1/q
/// are exactly second order. The chain-level "max" rows must scale at
/// first order. Exactly q-independent generators are reported with zero
/// rows and skipped.
LimitTable classical_limit_check(ChainKind kind, std::shared_ptr<const FockBasis> basis,
                                 std::span<const double> eps_list);

}  // namespace qchain
