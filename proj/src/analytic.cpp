#include "bootperc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bootperc/binomial.hpp"
#include "bootperc/forts.hpp"

namespace bootperc {

namespace {

void check_dk(std::uint32_t d, std::uint32_t k) {
    if (k < 2 || k > d) throw std::invalid_argument("rule must satisfy 2 <= k <= d");
}

void check_prob_arg(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

// True when B(x) = x has a root x < 1. Substituting h = 1 - x turns the
// question into whether g(h) = h - T(h) dips to zero on (0, 1], where
// T(h) = P(Binom(d, h(1-p)) >= d-k+1) is the vacancy-survival tail. Working
// with T directly avoids the catastrophic cancellation B(x) - x suffers near
// x = 1, where roots accumulate at criticality. Because T'(h) is a single
// Bernstein kernel, d(1-p) pmf(d-1, d-k, h(1-p)), it is unimodal with its
// peak at h_peak = (d-k)/((d-1)(1-p)); g therefore has exactly one interior
// local minimum, at the rightmost solution of T'(h) = 1, and it suffices to
// test the sign of g there. No grid scan: two monotone bisections give the
// minimum to machine precision even when the dip is arbitrarily narrow.
bool has_root_below_one(std::uint32_t d, std::uint32_t k, double p) {
    if (p >= 1.0) return false;
    double s = 1.0 - p;
    auto g = [&](double h) {
        return h - binom_tail_ge(d, std::int64_t(d) - std::int64_t(k) + 1, h * s);
    };
    auto deriv = [&](double h) {
        return double(d) * s * binom_pmf(d - 1, std::int64_t(d) - std::int64_t(k), h * s);
    };
    double h_peak = double(d - k) / (double(d - 1) * s);
    if (h_peak >= 1.0) {
        // T' rises across the whole interval, so g is smallest at h = 1
        return g(1.0) <= 0.0;
    }
    if (deriv(h_peak) <= 1.0) return false;  // g strictly increasing, no dip
    double h2 = 1.0;
    if (deriv(1.0) < 1.0) {
        double lo = h_peak, hi = 1.0;  // T' decreasing on [h_peak, 1]
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (deriv(mid) > 1.0)
                lo = mid;
            else
                hi = mid;
        }
        h2 = 0.5 * (lo + hi);
    }
    return g(h2) <= 0.0;
}

}  // namespace

double eval_B(std::uint32_t d, std::uint32_t k, double p, double x) {
    check_dk(d, k);
    check_prob_arg(p, "p");
    check_prob_arg(x, "x");
    return binom_cdf_le(d, std::int64_t(d) - std::int64_t(k), (1.0 - x) * (1.0 - p));
}

FixedPointResult smallest_fixed_point(std::uint32_t d, std::uint32_t k, double p,
                                      double tol, std::uint64_t cap) {
    check_dk(d, k);
    check_prob_arg(p, "p");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    FixedPointResult res;
    double y = 0.0;
    for (std::uint64_t it = 1; it <= cap; ++it) {
        double next = eval_B(d, k, p, y);
        res.iterations = it;
        res.residual = std::abs(next - y);
        y = next;
        if (res.residual <= tol) {
            res.value = y;
            return res;
        }
    }
    res.value = y;
    res.capped = true;
    return res;
}

CriticalResult critical_p_regular(std::uint32_t d, std::uint32_t k, double tol) {
    check_dk(d, k);
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    double lo = 0.0, hi = 1.0;  // root exists at p=0 (x=0), never at p=1
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (has_root_below_one(d, k, mid))
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), hi - lo, CriticalMethod::bisection};
}

double closed_form_kd(std::uint32_t d) {
    if (d < 2) throw std::invalid_argument("closed_form_kd needs d >= 2");
    return 1.0 - 1.0 / double(d);
}

double closed_form_k2(std::uint32_t d) {
    if (d < 3) throw std::invalid_argument("closed_form_k2 needs d >= 3");
    double log_ratio = (2.0 * d - 3.0) * std::log(double(d - 1)) -
                       (d - 1.0) * std::log(double(d)) - (d - 2.0) * std::log(double(d - 2));
    return 1.0 - std::exp(log_ratio);
}

std::vector<GammaRow> asymptotic_gamma_check(double gamma,
                                             const std::vector<std::uint32_t>& d_list) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma outside (0,1]");
    std::vector<GammaRow> rows;
    for (std::uint32_t d : d_list) {
        auto k = static_cast<std::uint32_t>(std::ceil(gamma * double(d) - 1e-12));
        if (k < 2) throw std::invalid_argument("gamma d must be at least 2");
        GammaRow row;
        row.d = d;
        row.k = k;
        row.p_crit = critical_p_regular(d, k).p_crit;
        row.remark_bound = double(k - 1) / double(d);
        row.bound_ok = row.p_crit <= row.remark_bound + 1e-9;
        rows.push_back(row);
    }
    return rows;
}

namespace {

void check_gw(const OffspringDistribution& dist, std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("gw recursion needs k >= 2");
    if (dist.min_j() < k)
        throw DegenerateGwDistribution("degenerate: P(xi<k)>0 => p_crit = 1");
}

}  // namespace

double gw_map(const OffspringDistribution& dist, std::uint32_t k, double p, double q) {
    check_gw(dist, k);
    check_prob_arg(p, "p");
    check_prob_arg(q, "q");
    double total = 0.0;
    for (const auto& atom : dist.atoms)
        total += atom.prob * binom_tail_ge(atom.j, std::int64_t(atom.j) - std::int64_t(k) + 1, q);
    return (1.0 - p) * total;
}

FixedPointResult gw_fort_fixed_point(const OffspringDistribution& dist, std::uint32_t k,
                                     double p, double tol, std::uint64_t cap) {
    check_gw(dist, k);
    check_prob_arg(p, "p");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    FixedPointResult res;
    double q = 1.0;
    for (std::uint64_t it = 1; it <= cap; ++it) {
        double next = gw_map(dist, k, p, q);
        res.iterations = it;
        res.residual = std::abs(next - q);
        q = next;
        if (res.residual <= tol) {
            res.value = q;
            return res;
        }
    }
    res.value = q;
    res.capped = true;
    return res;
}

namespace {

// d/dq of gw_map: (1-p) sum_j P(xi=j) j pmf(j-1, j-k, q).
double gw_map_deriv(const OffspringDistribution& dist, std::uint32_t k, double p, double q) {
    double total = 0.0;
    for (const auto& atom : dist.atoms)
        total += atom.prob * double(atom.j) *
                 binom_pmf(atom.j - 1, std::int64_t(atom.j) - std::int64_t(k), q);
    return (1.0 - p) * total;
}

// Whether gw_map has a fixed point q > 0. Three disjoint detectors: the slope
// at 0 (only the j = k atom contributes linearly, so this is exact), the
// endpoint q = 1 (a fixed point only at p = 0), and interior maxima of
// gap(q) = gw_map(q) - q. Every surfaced interior maximum is a transversal
// root of gap', so sign sampling of gap' plus bisection localizes all of them;
// near-birth maxima that sampling could miss are still underwater and decide
// nothing. The extremum is evaluated exactly instead of grid-scanning gap,
// whose positive region is arbitrarily narrow close to criticality.
bool gw_positive_fp(const OffspringDistribution& dist, std::uint32_t k, double p) {
    if (p >= 1.0) return false;
    double slope0 = (1.0 - p) * double(k) * dist.prob_of(k);
    if (slope0 > 1.0) return true;
    if (gw_map(dist, k, p, 1.0) >= 1.0) return true;  // p = 0
    auto gap = [&](double q) { return gw_map(dist, k, p, q) - q; };
    auto gap_deriv = [&](double q) { return gw_map_deriv(dist, k, p, q) - 1.0; };
    const int samples = 1024;
    double prev_q = 0.0;
    double prev_v = slope0 - 1.0;  // gap'(0)
    for (int i = 1; i <= samples; ++i) {
        double q = double(i) / samples;
        double v = gap_deriv(q);
        if (prev_v > 0.0 && v <= 0.0) {  // descending crossing: a local max
            double lo = prev_q, hi = q;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                if (gap_deriv(mid) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            if (gap(0.5 * (lo + hi)) > 0.0) return true;
        }
        prev_q = q;
        prev_v = v;
    }
    return false;
}

}  // namespace

CriticalResult gw_critical(const OffspringDistribution& dist, std::uint32_t k, double tol) {
    check_gw(dist, k);
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    if (!gw_positive_fp(dist, k, 0.0)) return {0.0, 0.0, CriticalMethod::bisection};
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (gw_positive_fp(dist, k, mid))
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), hi - lo, CriticalMethod::bisection};
}

double z_fixed_point(std::uint32_t d, std::uint32_t k, double p, double tol) {
    check_dk(d, k);
    check_prob_arg(p, "p");
    std::int64_t need = std::int64_t(d) + 1 - std::int64_t(k);
    double u = 1.0;
    for (std::uint64_t it = 0; it < 1000000; ++it) {
        double next = (1.0 - p) * binom_tail_ge(d, need, u);
        double delta = std::abs(next - u);
        u = next;
        if (delta <= tol) break;
    }
    return (1.0 - p) * binom_tail_ge(d - 1, need, u);
}

double q_lower_bound(std::uint32_t d, std::uint32_t k, double tol) {
    check_dk(d, k);
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    double threshold = 1.0 / (double(d) * double(d));
    auto certified = [&](double p) {
        double z = z_fixed_point(d, k, p);
        return 1.0 - z * z < threshold;
    };
    if (!certified(0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (certified(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;  // the certified side of the bracket
}

double anchored_rate(double c, double p) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("c outside (0,1]");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p outside (0,1)");
    double rate = c * std::log(c / p);
    if (c < 1.0) rate += (1.0 - c) * std::log((1.0 - c) / (1.0 - p));
    return rate;
}

AnchoredBoundReport anchored_bound(std::uint32_t d, std::uint32_t k, double h) {
    if (d < 2 || k < 1) throw std::invalid_argument("anchored bound needs d >= 2, k >= 1");
    if (!(h + 2.0 * k > double(d))) throw std::invalid_argument("theorem inapplicable: h + 2k <= d");
    if (h < 0 || h > double(d)) throw std::invalid_argument("expansion constant outside [0, d]");
    AnchoredBoundReport rep;
    rep.d = d;
    rep.k = k;
    rep.h = h;
    rep.c = (h - double(d) + 2.0 * k) / (2.0 * k);
    double c = rep.c;
    rep.K = c < 1.0 ? c * std::pow(1.0 - c, (1.0 - c) / c) : 1.0;
    double growth = std::log(double(d - 1)) + 1.0;  // log((d-1) e)
    rep.p_explicit = rep.K * std::exp(-growth / c);
    // I_p(c) falls monotonically from +inf to 0 as p rises to c; bisect the
    // log of p so tiny roots keep full relative precision.
    double t_lo = std::log(std::numeric_limits<double>::min());
    double t_hi = std::log(c);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (t_lo + t_hi);
        if (anchored_rate(c, std::exp(mid)) > growth)
            t_lo = mid;
        else
            t_hi = mid;
    }
    rep.p_sharp = std::exp(0.5 * (t_lo + t_hi));
    rep.rate_at_sharp = anchored_rate(c, rep.p_sharp);
    return rep;
}

std::vector<AnimalRow> animal_bound_check(std::uint32_t d, std::uint32_t m_max,
                                          const Graph& g, VertexId o,
                                          std::uint64_t budget) {
    if (m_max < 1 || m_max > 10)
        throw std::invalid_argument("animal check supports 1 <= m_max <= 10");
    if (d < 2) throw std::invalid_argument("animal check needs d >= 2");
    std::vector<std::uint64_t> counts = connected_set_counts(g, o, m_max, budget);
    std::vector<AnimalRow> rows;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        AnimalRow row;
        row.m = m;
        row.count = counts[m];
        row.bound = std::pow(double(d - 1) * std::exp(1.0), double(m));
        if (double(row.count) > row.bound)
            throw std::runtime_error("animal count exceeds the ((d-1)e)^m bound");
        rows.push_back(row);
    }
    return rows;
}

}  // namespace bootperc
