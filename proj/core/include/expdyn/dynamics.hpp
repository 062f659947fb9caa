#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "expdyn/types.hpp"

namespace expdyn {

/// Real part beyond which exp() leaves the binary64 range; iterates past this
/// are classified as escaping without evaluation.
inline constexpr double kOverflowGuard = 700.0;

/// Orbits that never leave this disk within the horizon count as bounded.
inline constexpr double kBoundDiskRadius = 1.0e4;

inline constexpr double kDefaultEscapeRe = 50.0;
inline constexpr int kDefaultHorizon = 200;

enum class OrbitClass {
    EscapingByHorizon,
    BoundedByHorizon,
    Undecided,
    BoundaryHit,
};

struct OrbitRecord {
    Complex start;
    std::vector<Complex> points;  // points[0] == start, length <= horizon+1
    OrbitClass classification = OrbitClass::Undecided;
    std::optional<int> escape_step;  // set iff EscapingByHorizon
};

/// E(z) = lambda * exp(z). Also the derivative: E'(z) = E(z).
/// Throws OverflowGuard for Re(z) > 700.
Complex eval_map(const Parameter& p, Complex z);

/// Branch of E^{-1} with image in the static strip
/// Im(z) in ((2k-1)pi - arg lambda, (2k+1)pi - arg lambda].
/// Throws ZeroPreimage for w == 0.
Complex inverse_branch(const Parameter& p, long k, Complex w);

/// Continues a branch of E^{-1} along a path: given the previous source point
/// and the previous image height, maps w so the argument unwraps continuously.
Complex inverse_branch_continue(const Parameter& p, Complex w, Complex w_prev,
                                double theta_prev);

/// Optional proximity probe supplied by partition-aware callers; returning
/// true stops the orbit with classification BoundaryHit.
using BoundaryProbe = std::function<bool(Complex)>;

/// Iterates E until Re exceeds t_esc, a boundary probe fires, or the horizon
/// is exhausted. Orbits past the overflow guard are absorbed into
/// EscapingByHorizon. This is a horizon classification, not an escape proof.
OrbitRecord iterate_orbit(const Parameter& p, Complex z, int horizon,
                          double t_esc = kDefaultEscapeRe,
                          const BoundaryProbe& probe = nullptr);

/// Samples the vertical line Re = rho and returns the maximum relative error
/// of | |E(z)| - |lambda| e^rho |. Self-test of the modulus identity.
double circle_image_check(const Parameter& p, double rho, int samples);

}  // namespace expdyn
