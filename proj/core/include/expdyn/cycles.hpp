#pragma once

#include <span>
#include <vector>

#include "expdyn/dynamics.hpp"

namespace expdyn {

struct CycleData {
    std::vector<Complex> points;       // length = period; points[0] in strip word[0]
    Complex multiplier;                // product of derivative values along the cycle
    std::vector<long> itinerary_word;  // static symbols, one per point
    double residual;                   // closure error of the forward loop
    double observed_contraction;       // mean inverse-iteration ratio near the limit
    int iterations;
};

/// Repelling cycle with the prescribed static itinerary word, located by
/// iterating the composite inverse branch L_{w0} o ... o L_{w_{n-1}} to its
/// fixed point.
CycleData find_periodic_point(const Parameter& p, std::span<const long> word,
                              double tol = 1e-12);

/// Same iteration from an explicit seed (the limit is seed-independent; used
/// by the uniqueness tests).
CycleData find_periodic_point_seeded(const Parameter& p, std::span<const long> word,
                                     Complex seed, double tol = 1e-12);

/// Preperiodic point with itinerary preword . word^inf: the periodic point of
/// `word` pulled back along `preword` in reverse.
Complex find_preperiodic_point(const Parameter& p, std::span<const long> preword,
                               std::span<const long> word, double tol = 1e-12);

/// Koenigs linearizing chart at a repelling periodic point: Phi conjugates the
/// return map to z -> multiplier * z, with Phi(base) = 0 and Phi'(base) = 1.
struct KoenigsChart {
    Complex base;
    Complex multiplier;  // |multiplier| > 1
    double radius;       // chart validity radius
    int truncation;      // iteration depth limit
    std::vector<long> word;
};

KoenigsChart make_koenigs_chart(const CycleData& cycle, int truncation = 200);

/// Phi(z), evaluated through the attracting inverse composite (the Koenigs
/// limit for the forward repelling map diverges numerically term by term; the
/// inverse form converges geometrically to the same germ).
Complex koenigs_coordinate(const KoenigsChart& chart, const Parameter& p, Complex z);

struct MisiurewiczData {
    Parameter parameter;
    int preperiod;           // m >= 1
    int period;              // cycle length (the paper's p + 1)
    CycleData landing_cycle;
    double orbit_residual;   // |E^m(0) - landing_cycle.points[0]|
};

/// Accepts iff the orbit of 0 lands on a repelling cycle after exactly m steps
/// with no earlier coincidence. Throws NotMisiurewicz with a reason otherwise.
MisiurewiczData verify_misiurewicz(const Parameter& p, int m, int period,
                                   double tol = 1e-9);

}  // namespace expdyn
