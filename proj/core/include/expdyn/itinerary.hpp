#pragma once

#include <optional>
#include <span>
#include <vector>

#include "expdyn/partition.hpp"

namespace expdyn {

struct Itinerary {
    std::vector<long> symbols;
    bool complete = false;  // false if truncated by escape horizon or boundary hit
    bool used_static_fallback = false;
};

/// Symbols of the first n iterates of z with respect to the static partition.
Itinerary itinerary(const Parameter& p, const StaticPartition& sp, Complex z, int n,
                    double t_esc = kDefaultEscapeRe);

/// Same with respect to the dynamic partition. Outside the charted curve data
/// the static index is used and flagged.
Itinerary itinerary(const Parameter& p, const DynamicPartition& dp, Complex z, int n,
                    double t_esc = kDefaultEscapeRe);

/// Checks 2 pi |r_j| < E^j_{|lambda|}(x_hat) for every j in the prefix,
/// switching to log-domain comparison once the iterated exponential leaves the
/// representable range.
bool is_exponentially_bounded_prefix(std::span<const long> prefix, const Parameter& p,
                                     double x_hat);

/// Convenience existential wrapper: tries x_hat in {1, 2, 4, ..., 1024} and
/// returns the first witness.
std::optional<double> exponentially_bounded_witness(std::span<const long> prefix,
                                                    const Parameter& p);

/// Constants of the sandwich c*Re(z) - d + 2k*pi <= Im(z) <= c*Re(z) + d + 2k*pi
/// on curve points with Re(z) < m.
struct SlopeBound {
    double c;  // > 0 for clockwise-spiraling gamma
    double d;  // > 1
    double m;  // < 0
    long k;
};

/// Least-squares slope of preimage curve k over its deep-left quarter, with d
/// set to 1.05x the maximum fit residual (floored above 1). Fit uses the
/// even-index vertices; odd-index vertices are the held-out half.
SlopeBound fit_slope_bound(const DynamicPartition& dp, long k);

/// Smallest mu (from a geometric ladder) such that 200 sampled points with
/// Re(z) < mu repeat the itinerary of 0 shifted by one for n symbols.
double half_plane_itinerary_check(const Parameter& p, const DynamicPartition& dp, int n);

}  // namespace expdyn
