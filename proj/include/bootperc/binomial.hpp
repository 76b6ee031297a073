// Stable binomial tail evaluation. Everything here is log-space via lgamma so
// the solvers can go up to a few hundred trials without overflow or
// cancellation; both tail directions are summed over their own index range,
// never as 1 - other_tail.
#pragma once

#include <cstdint>

namespace bootperc {

// log C(n, k); k outside [0, n] is a domain error.
double log_choose(std::uint32_t n, std::uint32_t k);

// P(Binom(n, q) <= m). m >= n gives 1 exactly; q in {0, 1} handled exactly.
double binom_cdf_le(std::uint32_t n, std::int64_t m, double q);

// P(Binom(n, q) >= m). m <= 0 gives 1 exactly.
double binom_tail_ge(std::uint32_t n, std::int64_t m, double q);

// P(Binom(n, q) = m).
double binom_pmf(std::uint32_t n, std::int64_t m, double q);

}  // namespace bootperc
