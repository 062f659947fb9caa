#pragma once

#include <optional>
#include <vector>

#include "expdyn/ray.hpp"

namespace expdyn {

/// Points closer than this to a partition boundary are refused rather than
/// classified; their itinerary is ill-defined at working precision.
inline constexpr double kBoundaryTol = 1e-9;

/// Strips S_k = { z : (2k-1)pi - arg lambda < Im(z) <= (2k+1)pi - arg lambda },
/// bounded by the straight-line preimages of the negative real axis.
struct StaticPartition {
    Parameter parameter;
    explicit StaticPartition(Parameter p) : parameter(p) {}
};

/// Strip index, or nullopt within delta_b of a boundary line.
std::optional<long> try_static_strip_index(const StaticPartition& sp, Complex z,
                                           double delta_b = kBoundaryTol);

/// Throwing variant (BoundaryHit).
long static_strip_index(const StaticPartition& sp, Complex z,
                        double delta_b = kBoundaryTol);

/// Strip index without the boundary refusal (boundary points resolve downward
/// per the half-open convention).
long nearest_static_strip(const StaticPartition& sp, Complex z);

/// Lower boundary of strip k: Im = (2k-1)pi - arg lambda.
double static_strip_lower(const Parameter& p, long k);

struct DynamicPartitionOptions {
    long k_range = 16;        // curves are built for |k| <= k_range + 1
    double x_left = -60.0;    // requested reliable left end
    double eps_land = 1e-10;  // gamma must land this close to 0
};

/// Strips R_k bounded by the preimage curves of the hair gamma landing at 0,
/// labeled so that R_k contains 2 pi i k. Curve k is the lower boundary of
/// R_k; vertices run from the far-right end of gamma inward.
struct DynamicPartition {
    Parameter parameter;
    Ray gamma;
    long k_min = 0;  // labels k_min .. k_min + curves.size() - 1
    std::vector<std::vector<Complex>> curves;
    double x_left = 0.0;          // requested reliable left end
    double x_charted_left = 0.0;  // actual reliable left end of curve data
    double x_right = 0.0;         // right end of reliable curve data

    bool has_curve(long k) const {
        return k >= k_min && k < k_min + static_cast<long>(curves.size());
    }
    const std::vector<Complex>& curve(long k) const {
        if (!has_curve(k))
            throw Error(Errc::OutOfChartedRange, "dynamic partition: curve index not built");
        return curves[static_cast<size_t>(k - k_min)];
    }
};

/// Pulls gamma back vertex-wise through every branch (argument unwrapped along
/// the polyline) and labels the strips so that R_k contains 2 pi i k.
DynamicPartition build_dynamic_partition(const Parameter& p, const Ray& gamma,
                                         const DynamicPartitionOptions& opts = {});

struct DynamicIndex {
    long k;
    bool static_fallback;  // classified by the static partition outside charted data
};

/// Candidate static index corrected against the adjacent preimage polylines by
/// a vertical-crossing test. Right of the charted data the static partition is
/// used (the documented fallback); left of it, OutOfChartedRange unless
/// allow_left_fallback.
DynamicIndex dynamic_strip_index_ex(const DynamicPartition& dp, Complex z,
                                    bool allow_left_fallback = false,
                                    double delta_b = kBoundaryTol);

long dynamic_strip_index(const DynamicPartition& dp, Complex z,
                         double delta_b = kBoundaryTol);

/// True if z is within delta of the polyline (minimum point-segment distance,
/// restricted to segments near Re(z) for speed).
double distance_to_polyline(Complex z, const std::vector<Complex>& poly,
                            double x_window = 2.0);

}  // namespace expdyn
