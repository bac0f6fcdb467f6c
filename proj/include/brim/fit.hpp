#pragma once

#include <functional>
#include <vector>

#include "brim/numeric.hpp"
#include "brim/poly.hpp"

namespace brim {

/// Window controls shared by all fitters.
struct FitOptions {
    long long start = 1;  // first sample node of the initial window
    int validation = 3;   // held-out points checked after each solve
    int max_advances = 6; // geometric (doubling) window moves before giving up
    long long cap = 0;    // largest admitted window start; 0 = unbounded
};

/// Result of a fit attempt. A stabilized report reproduces every sampled and
/// validation point exactly; a non-stabilized one carries the last candidate
/// for diagnostics and must not be trusted.
struct FitReport {
    RatPoly poly = RatPoly(1);
    bool stabilized = false;
    long long window_start = 0;
    long long window_end = 0;
    int points_checked = 0;
    int advances = 0;
};

using UniFn = std::function<Int(long long)>;
using BiFn = std::function<Int(long long, long long)>;
using MultiFn = std::function<Int(const std::vector<long long>&)>;

/// Interpolates f on degree_bound+1 consecutive nodes, then validates on the
/// next opts.validation nodes. On mismatch the window start doubles, up to
/// opts.max_advances times.
FitReport fit_univariate(const UniFn& f, int degree_bound, FitOptions opts = {});

/// Total-degree fit on the principal lattice {start + e : |e| <= bound},
/// solved exactly; validated on diagonal and axis points past the lattice.
FitReport fit_multivariate(const MultiFn& f, int arity, int total_degree_bound,
                           FitOptions opts = {});

/// Two-stage fit of F(p,q): for each sampled p, interpolate in q starting at
/// q_min(p); then interpolate each q-coefficient in p. Validation draws
/// held-out admissible (p,q) pairs. Result variables are ordered (p, q).
FitReport fit_bivariate_nested(const BiFn& F, int deg_q_bound, int deg_p_bound,
                               const std::function<long long(long long)>& q_min,
                               FitOptions opts = {});

/// Single dense solve over all monomials p^a q^b with a+b <= bound, sampled on
/// an admissible principal lattice. Agrees with the nested fit on stabilized
/// inputs.
FitReport fit_bivariate_dense(const BiFn& F, int total_degree_bound,
                              const std::function<long long(long long)>& q_min,
                              FitOptions opts = {});

/// Newton forward-difference interpolation through (start+i, values[i]).
/// Exact; degree < values.size(). The workhorse behind the fitters.
RatPoly newton_interpolate(const std::vector<Rat>& values, long long start);

}  // namespace brim
