#include "bootperc/binomial.hpp"

#include <cmath>
#include <stdexcept>

namespace bootperc {

double log_choose(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw std::invalid_argument("log_choose: k > n");
    return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
           std::lgamma(double(n - k) + 1);
}

namespace {

void check_prob(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("binomial: q outside [0,1]");
}

// Sum of exp(log terms) over j in [j_lo, j_hi]. Terms are probabilities, so a
// plain accumulation is fine: everything is in [0,1] and the result only
// feeds comparisons far above the 1e-300 underflow floor.
double sum_terms(std::uint32_t n, std::int64_t j_lo, std::int64_t j_hi, double q) {
    double log_q = std::log(q);
    double log_1mq = std::log1p(-q);
    double total = 0.0;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        double lt = log_choose(n, static_cast<std::uint32_t>(j)) + double(j) * log_q +
                    double(n - j) * log_1mq;
        total += std::exp(lt);
    }
    return total < 1.0 ? total : 1.0;
}

}  // namespace

double binom_cdf_le(std::uint32_t n, std::int64_t m, double q) {
    check_prob(q);
    if (m < 0) return 0.0;
    if (m >= std::int64_t(n)) return 1.0;
    if (q == 0.0) return 1.0;
    if (q == 1.0) return 0.0;  // m < n here
    return sum_terms(n, 0, m, q);
}

double binom_tail_ge(std::uint32_t n, std::int64_t m, double q) {
    check_prob(q);
    if (m <= 0) return 1.0;
    if (m > std::int64_t(n)) return 0.0;
    if (q == 0.0) return 0.0;  // m >= 1 here
    if (q == 1.0) return 1.0;
    return sum_terms(n, m, n, q);
}

double binom_pmf(std::uint32_t n, std::int64_t m, double q) {
    check_prob(q);
    if (m < 0 || m > std::int64_t(n)) return 0.0;
    if (q == 0.0) return m == 0 ? 1.0 : 0.0;
    if (q == 1.0) return m == std::int64_t(n) ? 1.0 : 0.0;
    return sum_terms(n, m, m, q);
}

}  // namespace bootperc
