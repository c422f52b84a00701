#pragma once

#include "qchain/algebra.hpp"
#include "qchain/fock.hpp"

namespace qchain {

/// An sl(2)-style generator set built from undeformed bosons; satisfies
/// the q = 1 Chevalley relations ([e+, e-] = h, [h, e±] = ±2 e±).
struct ClassicalTriple {
    std::string label;
    Operator e_plus;
    Operator e_minus;
    Operator h;  // diagonal, integer entries
};

/// Diagonal dressing with entries sqrt(n/[n]_q) on the occupation of one
/// mode (1 at n = 0). Multiplying a q-boson bilinear on both sides with
/// the matching factors converts it to the undeformed bilinear.
Operator song_factor(const FockBasis& basis, int mode, const DeformationParameter& q);

/// Undeformed boson bilinear b~_i^+ b~_j on a fixed sector, constructed
/// as song_factor(i) * bilinear(i,j,q) * song_factor(j); the q-factors
/// cancel so the result is independent of q, with matrix element
/// sqrt((n_i + 1) n_j).
Operator classical_bilinear(const FockBasis& basis, int i, int j, const DeformationParameter& q);

/// Curtright-Zachos deformation of a classical sl(2) triple, realized by
/// spectral block scaling: each (j, m) -> (j, m+1) block of e+ is scaled
/// by sqrt([j-m]_q [j+m+1]_q / ((j-m)(j+m+1))), producing exact sl_q(2)
/// matrix elements. Blocks are identified by simultaneous eigenspaces of
/// the classical Casimir e- e+ + j0(j0+1) and j0 = h/2. The map is the
/// identity at q = 1 and multiplicity-safe (the factor is a scalar per
/// block). Throws if the Casimir spectrum is not of the j(j+1) form.
ChevalleyTriple cz_deform(const ClassicalTriple& classical, const DeformationParameter& q,
                          double snap_tol = 1e-8);

/// One-particle description of a classical Sp(4) = SO(5) pair acting by
/// undeformed boson bilinears on a multimode sector: E_k = sum_ij
/// (e_k)_ij t_i^+ t_j with Cartans H_k = sum_i (h_k)_i N_i.
struct Sp4ClassicalData {
    std::shared_ptr<const FockBasis> basis;
    Eigen::MatrixXd e1;      // one-particle raising matrix of the long-root triple
    Eigen::MatrixXd e2;      // one-particle raising matrix of the short-root triple
    std::vector<double> h1;  // Cartan weight per mode
    std::vector<double> h2;

    /// Materialized classical triples on the sector.
    ClassicalTriple triple_e1() const;
    ClassicalTriple triple_e2() const;
};

/// Result of the Sp(4)-to-so_q(5) deforming map: the two deformed
/// triples plus the selected length exponents and measured Cartan
/// matrix, with the selection recorded as notes.
struct Sp4DeformResult {
    ChevalleyTriple e1;
    ChevalleyTriple e2;
    Eigen::MatrixXi cartan_matrix;
    std::vector<std::string> notes;

    /// Bundle as a two-triple realization for the relation checks.
    AlgebraRealization realization(const std::string& name) const;
};

/// Deforming map from a classical Sp(4) = SO(5) pair to so_q(5) on the
/// sector, with h_k = H_k exactly and the identity map at q = 1.
///
/// The classical pair is brought to its canonical frame (the weight
/// spaces (1,0), (-1,2), (1,-2), (-1,0) of (H1, H2) single out four
/// ladder modes; the short-root action singles out the middle mode),
/// the dressed so_q(5) realization is built there, and the result is
/// transported back by the second-quantized frame rotation. A literal
/// entrywise Cartan-function dressing of the classical generators is
/// not capable of satisfying the deformed relations beyond first order
/// in q - 1 (measured residuals are recorded in the notes), so the
/// transported realization is the implemented map.
///
/// Throws std::invalid_argument when the pair does not realize the
/// expected classical structure, and std::domain_error when a phase q
/// leaves a dressing radicand nonpositive on the sector.
Sp4DeformResult sp4_deform(const Sp4ClassicalData& classical, const DeformationParameter& q);

/// Applies the length exponents (2,1) or (1,2) to a rank-2 realization.
/// The admissible assignment is fixed by the symmetrizability condition
/// on the realization's Cartan matrix; both assignments are also
/// residual-tested against [e+, e-] = [h]_{q^d} and the outcome recorded
/// in the realization's notes. Returns the note.
std::string select_rank2_d_exponents(AlgebraRealization& realization, const DeformationParameter& q);

}  // namespace qchain
