#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qchain {

using Complex = std::complex<double>;

/// Deformation parameter q, either a positive real number or a pure
/// phase q = exp(i*tau). Both kinds reduce to the classical (undeformed)
/// case at q = 1 / tau = 0, which every routine handles by its analytic
/// limit rather than by division.
class DeformationParameter {
public:
    enum class Kind { real, phase };

    /// Positive real q.
    static DeformationParameter real_q(double q);
    /// Pure phase q = exp(i*tau); tau is normalized into (-pi, pi].
    static DeformationParameter phase(double tau);
    /// The classical point q = 1.
    static DeformationParameter one() { return real_q(1.0); }

    Kind kind() const { return kind_; }
    bool is_real() const { return kind_ == Kind::real; }
    bool is_phase() const { return kind_ == Kind::phase; }
    bool is_one() const;

    /// Value of q for real kind; throws for phase kind.
    double real_value() const;
    /// Angle tau for phase kind; throws for real kind.
    double tau() const;

    /// q as a complex scalar.
    Complex value() const { return power(1.0); }
    /// q^x as a complex scalar (exact diagonal functional calculus
    /// uses this entrywise).
    Complex power(double x) const;

    /// The parameter q^-1 (real: 1/q, phase: -tau).
    DeformationParameter inverse() const;
    /// The parameter q^d for integer d (used for q_i = q^{d_i}).
    DeformationParameter integer_power(int d) const;

    std::string describe() const;

private:
    DeformationParameter(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;  // q itself (real kind) or tau (phase kind)
};

/// The symmetric q-bracket [x] = (q^x - q^-x)/(q - q^-1).
///
/// Real for real x under both parameter kinds, so the computation is
/// carried in real arithmetic: sinh(x t)/sinh(t) with t = ln q, or
/// sin(x tau)/sin(tau). Returns x exactly at the classical point.
double q_number(double x, const DeformationParameter& q);

/// [n]! = [1][2]...[n]; the empty product is 1.
double q_factorial(int n, const DeformationParameter& q);

/// q-binomial [m over n] = [m]!/([m-n]! [n]!). Requires 0 <= n <= m.
double q_binomial(int m, int n, const DeformationParameter& q);

/// Result of checking a parameter against a finite truncation: all
/// q-integers [1]..[n_max] must be nonzero, and positive for phase
/// kind (ladder matrix elements take their square roots).
struct ValidityReport {
    DeformationParameter parameter;
    int n_max = 0;
    std::vector<int> violations;  // offending n, ascending

    bool valid() const { return violations.empty(); }
    std::string describe() const;
};

ValidityReport validate_parameter(const DeformationParameter& q, int n_max);

/// Throws std::domain_error with the report text if invalid.
void require_valid_parameter(const DeformationParameter& q, int n_max);

}  // namespace qchain
