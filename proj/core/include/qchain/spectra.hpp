#pragma once

#include <functional>

#include "qchain/chains.hpp"

namespace qchain {

struct Level {
    double j = 0.0;
    double energy = 0.0;
    double weight = 1.0;
};

/// Energy levels keyed by angular momentum; j values must be distinct.
struct LevelScheme {
    std::vector<Level> levels;
    void validate() const;
};

/// Deformed rigid-rotator spectrum E_j = K [j]_q [j+1]_q. For phase q
/// this equals K sin(tau j) sin(tau (j+1)) / sin^2(tau). Total in q
/// apart from the singular point tau = pi (q = -1); brackets may turn
/// negative for large tau * j, which the formula supports.
std::vector<std::pair<double, double>> rotator_spectrum(double K, const DeformationParameter& q,
                                                        std::span<const double> j_list);

struct HamiltonianTerm {
    std::string invariant_id;
    double coefficient = 1.0;
};

/// Hermitian (for real q) operator assembled as a sum of chain
/// invariants. Available invariant ids:
///   so3q_casimir            deformed so_q(3) Casimir of the chain's L set
///   so3_casimir_classical   l- l+ + l0(l0+1) of the classical L set
///   <sub>_casimir_classical quadratic Casimir of a subalgebra's q = 1
///                           counterpart, normalized by the trace form of
///                           the sector representation (e.g. soq5_casimir_classical)
///   poly:<g1>*<g2>*...      ordered product of named chain generators
/// Every term must commute with L0; a non-invariant term is rejected.
Operator build_hamiltonian(const ChainRealization& chain,
                           std::span<const HamiltonianTerm> terms);

/// Builds the operator at q and at q^-1 and averages, restoring
/// self-adjointness for phase-kind parameters. For real q the two
/// builds of a Casimir sum coincide and the average equals either one.
Operator symmetrize(const std::function<Operator(const DeformationParameter&)>& build,
                    const DeformationParameter& q);

struct EigenLevel {
    double value = 0.0;
    int multiplicity = 0;
};

/// Ascending eigenvalues of a self-adjoint operator with multiplicities
/// clustered at tolerance 1e-8 * scale. Throws if the input fails the
/// self-adjointness check at 1e-10 (relative).
std::vector<EigenLevel> eigenlevels(const Operator& h);

struct FitResult {
    double K = 0.0;
    double tau = 0.0;
    double rms = 0.0;
    std::vector<double> residuals;  // E_j - K f_j(tau), in input order
};

/// Weighted least-squares fit of (K, tau) to E_j = K [j]_q [j+1]_q with
/// q = exp(i tau). K is profiled analytically, leaving a 1-D search over
/// tau on [0, tau_max] (tau_max keeps [j_max + 1]_q positive) by
/// golden-section refinement of a pi/2000 grid. Requires at least two
/// levels with distinct j > 0 and not-all-zero energies.
FitResult fit_rotator(const LevelScheme& scheme);

}  // namespace qchain
