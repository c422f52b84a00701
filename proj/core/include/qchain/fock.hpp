#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "qchain/operator.hpp"
#include "qchain/qnum.hpp"

namespace qchain {

/// Ordered enumeration of the occupation tuples (n_1,...,n_m) with
/// sum n_i = total. States are listed in descending lexicographic
/// order, which is deterministic and stable across runs; the first
/// state is (total, 0, ..., 0).
class FockBasis {
public:
    /// Builds the sector. Throws std::domain_error on invalid arguments
    /// or when the dimension exceeds the cap.
    FockBasis(int n_modes, int total, std::uint64_t dimension_cap = 1'000'000);

    int n_modes() const { return n_modes_; }
    int total() const { return total_; }
    int dim() const { return static_cast<int>(states_.size()); }
    SectorKey key() const { return SectorKey{n_modes_, total_}; }

    std::span<const int> state(int index) const;
    /// Position of an occupation tuple; -1 if not a member.
    int index_of(std::span<const int> occupations) const;

    /// The binomial dimension C(total + modes - 1, modes - 1), without
    /// building anything. Throws on overflow past the cap.
    static std::uint64_t dimension(int n_modes, int total,
                                   std::uint64_t dimension_cap = 1'000'000);

private:
    int n_modes_;
    int total_;
    std::vector<std::vector<int>> states_;
    std::map<std::vector<int>, int> index_;
};

/// Diagonal operator with entry f(occupations) on each basis state.
Operator diagonal_op(const FockBasis& basis,
                     const std::function<Complex(std::span<const int>)>& f);

/// Occupation number of one mode (diagonal). Modes are 1-based.
Operator number_op(const FockBasis& basis, int mode);

/// Diagonal sum(coeffs[k] * N_{k+1}); convenient for Cartan elements.
Operator linear_number_op(const FockBasis& basis, std::span<const double> coeffs);

/// q-boson creation operator for one mode, mapping sector N to N+1 with
/// matrix element sqrt([n+1]_q). Requires validate_parameter(q, N+1).
Operator creation_op(const FockBasis& from, const FockBasis& to, int mode,
                     const DeformationParameter& q);

/// q-boson annihilation operator, sector N to N-1, element sqrt([n]_q);
/// the adjoint of creation_op between the same sectors.
Operator annihilation_op(const FockBasis& from, const FockBasis& to, int mode,
                         const DeformationParameter& q);

/// Number-conserving q-boson bilinear b_i^+ b_j on a fixed sector.
/// For i == j this is the diagonal [N_i]_q.
Operator bilinear(const FockBasis& basis, int i, int j, const DeformationParameter& q);

/// Unit vector of the normalized q-boson state with the given
/// occupations: applying (b_i^+)^{n_i}/sqrt([n_i]_q!) to the vacuum
/// lands exactly on the corresponding basis vector.
Vector normalized_state(const FockBasis& basis, std::span<const int> occupations,
                        const DeformationParameter& q);

/// Orthogonal operator induced on the sector by a real one-particle
/// rotation u (m x m, orthogonal): column s is the state obtained by
/// filling the rotated modes sum_i u(i,k) a_i^+ with the occupations of
/// s, using undeformed bosons.
Operator second_quantized_rotation(const FockBasis& basis, const Eigen::MatrixXd& u);

}  // namespace qchain
