#include "qchain/qnum.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qchain {

namespace {

double normalize_angle(double tau) {
    // into (-pi, pi]
    const double two_pi = 2.0 * M_PI;
    double t = std::fmod(tau, two_pi);
    if (t <= -M_PI) t += two_pi;
    if (t > M_PI) t -= two_pi;
    return t;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

DeformationParameter DeformationParameter::real_q(double q) {
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("DeformationParameter: real q must be positive and finite");
    return DeformationParameter(Kind::real, q);
}

DeformationParameter DeformationParameter::phase(double tau) {
    if (!std::isfinite(tau))
        throw std::invalid_argument("DeformationParameter: tau must be finite");
    return DeformationParameter(Kind::phase, normalize_angle(tau));
}

bool DeformationParameter::is_one() const {
    return kind_ == Kind::real ? value_ == 1.0 : value_ == 0.0;
}

double DeformationParameter::real_value() const {
    if (kind_ != Kind::real) throw std::logic_error("parameter is not of real kind");
    return value_;
}

double DeformationParameter::tau() const {
    if (kind_ != Kind::phase) throw std::logic_error("parameter is not of phase kind");
    return value_;
}

Complex DeformationParameter::power(double x) const {
    if (kind_ == Kind::real) return Complex(std::pow(value_, x), 0.0);
    return std::polar(1.0, value_ * x);
}

DeformationParameter DeformationParameter::inverse() const {
    if (kind_ == Kind::real) return real_q(1.0 / value_);
    return phase(-value_);
}

DeformationParameter DeformationParameter::integer_power(int d) const {
    if (kind_ == Kind::real) return real_q(std::pow(value_, d));
    return phase(value_ * d);
}

std::string DeformationParameter::describe() const {
    if (kind_ == Kind::real) return "q=" + format_double(value_);
    return "q=exp(i*" + format_double(value_) + ")";
}

double q_number(double x, const DeformationParameter& q) {
    if (q.is_one()) return x;
    if (q.is_real()) {
        const double t = std::log(q.real_value());
        return std::sinh(x * t) / std::sinh(t);
    }
    const double tau = q.tau();
    return std::sin(x * tau) / std::sin(tau);
}

double q_factorial(int n, const DeformationParameter& q) {
    if (n < 0) throw std::domain_error("q_factorial: n must be nonnegative");
    double acc = 1.0;
    for (int k = 2; k <= n; ++k) acc *= q_number(k, q);
    return acc;
}

double q_binomial(int m, int n, const DeformationParameter& q) {
    if (n < 0 || n > m) throw std::domain_error("q_binomial: requires 0 <= n <= m");
    // [m]!/([m-n]![n]!) with the shorter cancellation [m][m-1].../[n]!
    double acc = 1.0;
    const int k = std::min(n, m - n);
    for (int i = 1; i <= k; ++i) acc *= q_number(m - k + i, q) / q_number(i, q);
    return acc;
}

ValidityReport validate_parameter(const DeformationParameter& q, int n_max) {
    if (n_max < 1) throw std::domain_error("validate_parameter: n_max must be >= 1");
    ValidityReport report{q, n_max, {}};
    for (int n = 1; n <= n_max; ++n) {
        const double v = q_number(n, q);
        const bool zero = std::abs(v) < 1e-12;
        const bool negative = q.is_phase() && v <= 0.0;
        if (zero || negative) report.violations.push_back(n);
    }
    return report;
}

std::string ValidityReport::describe() const {
    std::string s = parameter.describe() + " n_max=" + std::to_string(n_max);
    if (valid()) return s + " valid";
    s += " invalid at n=";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(violations[i]);
    }
    return s;
}

void require_valid_parameter(const DeformationParameter& q, int n_max) {
    const auto report = validate_parameter(q, n_max);
    if (!report.valid())
        throw std::domain_error("deformation parameter invalid for sector: " + report.describe());
}

}  // namespace qchain
