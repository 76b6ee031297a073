// Critical probabilities and bounds computed from the binomial recursions.
//
// Two fixed-point conventions coexist deliberately. The regular-tree quantity
// y (extinction of the vacant witness subtree) is the SMALLEST fixed point and
// is iterated upward from 0; the branching-tree quantity q (membership in an
// infinite vacant fort) is the LARGEST fixed point and is iterated downward
// from 1. Bisection predicates do not reuse the literal iterations: near
// criticality those stall at tangency, so existence of a nontrivial root is
// decided by locating the extrema of the fixed-point gap through its
// derivative (a unimodal Bernstein kernel, or a short mixture of them) and
// testing the sign there, which keeps the bracket honest to ~1e-14.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bootperc/graph.hpp"

namespace bootperc {

struct FixedPointResult {
    double value = 0;
    std::uint64_t iterations = 0;
    double residual = 0;  // |map(value) - value| at exit
    bool capped = false;  // iteration cap hit before the tolerance
};

enum class CriticalMethod { bisection, closed_form };

struct CriticalResult {
    double p_crit = 0;
    double bracket_width = 0;
    CriticalMethod method = CriticalMethod::bisection;
};

struct GammaRow {
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    double p_crit = 0;
    double remark_bound = 0;  // (k-1)/d, the universal upper bound
    bool bound_ok = false;
};

struct AnchoredBoundReport {
    std::uint32_t d = 0;  // graph degree
    std::uint32_t k = 0;
    double h = 0;  // anchored expansion constant
    double c = 0;  // guaranteed occupied proportion (h - d + 2k) / (2k)
    double K = 0;  // c (1-c)^((1-c)/c)
    double p_explicit = 0;   // K / ((d-1) e)^(1/c)
    double p_sharp = 0;      // root of I_p(c) = log(d-1) + 1
    double rate_at_sharp = 0;
};

struct AnimalRow {
    std::uint32_t m = 0;
    std::uint64_t count = 0;
    double bound = 0;  // ((d-1) e)^m
};

// Offspring distributions with mass below k make every large vacant set
// contain a finite fort, so the critical probability degenerates to 1.
class DegenerateGwDistribution : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// P(Binom(d, (1-x)(1-p)) <= d-k): one step of the vacant-subtree extinction
// recursion. Requires 2 <= k <= d and p, x in [0,1].
double eval_B(std::uint32_t d, std::uint32_t k, double p, double x);

// Least fixed point of eval_B in x, iterated from 0.
FixedPointResult smallest_fixed_point(std::uint32_t d, std::uint32_t k, double p,
                                      double tol = 1e-12, std::uint64_t cap = 1000000);

// Supremum of p admitting a fixed point x < 1, by bisection.
CriticalResult critical_p_regular(std::uint32_t d, std::uint32_t k, double tol = 1e-10);

// Closed forms for the extreme rules: k = d and k = 2.
double closed_form_kd(std::uint32_t d);
double closed_form_k2(std::uint32_t d);

// Table of p(T_d, ceil(gamma d)) for the listed d, with the (k-1)/d bound
// checked on every row.
std::vector<GammaRow> asymptotic_gamma_check(double gamma,
                                             const std::vector<std::uint32_t>& d_list);

// One step of the branching-tree fort recursion at occupation density p:
// sum_j P(xi = j) (1-p) P(Binom(j, q) >= j-k+1).
double gw_map(const OffspringDistribution& dist, std::uint32_t k, double p, double q);

// Largest fixed point of gw_map in q, iterated downward from 1.
FixedPointResult gw_fort_fixed_point(const OffspringDistribution& dist, std::uint32_t k,
                                     double p, double tol = 1e-12,
                                     std::uint64_t cap = 1000000);

// Supremum of p with a positive fixed point of gw_map.
CriticalResult gw_critical(const OffspringDistribution& dist, std::uint32_t k,
                           double tol = 1e-10);

// z(p) for the descending-path second-moment argument: u solves
// u = (1-p) P(Binom(d, u) >= d+1-k), z = (1-p) P(Binom(d-1, u) >= d+1-k).
double z_fixed_point(std::uint32_t d, std::uint32_t k, double p, double tol = 1e-13);

// Largest p certified to satisfy sqrt(1 - z(p)^2) < 1/d, a lower bound on the
// critical density for an infinite final occupied cluster.
double q_lower_bound(std::uint32_t d, std::uint32_t k, double tol = 1e-10);

// Large-deviation rate c log(c/p) + (1-c) log((1-c)/(1-p)), with the c = 1
// limit handled exactly.
double anchored_rate(double c, double p);

// Lower bound on the critical probability of a d-regular graph with anchored
// expansion at least h. Requires h + 2k > d ("theorem inapplicable" otherwise)
// and h <= d.
AnchoredBoundReport anchored_bound(std::uint32_t d, std::uint32_t k, double h);

// Counts connected sets through o of each size m <= m_max and checks the
// ((d-1) e)^m growth bound; throws if a count ever exceeds the bound.
std::vector<AnimalRow> animal_bound_check(std::uint32_t d, std::uint32_t m_max,
                                          const Graph& g, VertexId o,
                                          std::uint64_t budget = 20000000);

}  // namespace bootperc
