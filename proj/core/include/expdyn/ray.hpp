#pragma once

#include <optional>
#include <vector>

#include "expdyn/address.hpp"
#include "expdyn/dynamics.hpp"

namespace expdyn {

struct TraceOptions {
    double tail_x = 50.0;      // abscissa where straight tails start
    double tail_len = 5.0;     // potential length of the outermost tail piece
    double step_max = 0.1;     // polyline resolution bound
    double coarse_dt = 0.25;   // initial potential grid spacing
    double rel_step = 0.25;    // relative resolution near the origin
    double eps_ray = 1e-9;     // depth-agreement tolerance
    double eps_land = 1e-10;   // landing tolerance
    double zero_guard = 1e-12; // pull-back collision radius around 0
    long max_symbol = 100;     // bounded-entry guard on addresses
    size_t max_vertices = 200000;
};

struct RayVertex {
    double t;  // potential parameter, > 0
    Complex z;
};

/// A traced hair: polyline sorted by decreasing potential, plus the track of
/// deepest pulled-back points per depth (used for landing extrapolation).
struct Ray {
    Address address;
    Parameter parameter;
    std::vector<RayVertex> vertices;
    std::optional<Complex> landing;
    int depth = 0;
    std::vector<Complex> inner_track;  // inner_track[j] = deepest point at depth j+1
};

/// Asymptote height of strip k tails: 2 pi k - arg lambda.
double tail_height(const Parameter& p, long k);

/// Model potential flow t -> e^t - 1 and its inverse.
double potential_push(double t);
double potential_pull(double u);

/// Potential of the deepest vertex reachable with the given pull-back depth.
double potential_floor(int depth, const TraceOptions& opts = {});

/// Point of the ray with the given address at potential t, computed by
/// pulling back a straight-tail start through at most `depth` inverse
/// branches. Throws PullbackCollision if an intermediate point falls within
/// the zero guard.
Complex ray_point(const Parameter& p, const Address& s, double t, int depth,
                  const TraceOptions& opts = {});

/// Assembles the full polyline from the deepest pulled-back point out to the
/// end of the straight tail. t_min = 0 means "as deep as the depth allows".
Ray trace_ray(const Parameter& p, const Address& s, int depth, double t_min = 0.0,
              const TraceOptions& opts = {});

/// Extrapolated limit of the inner track (geometric/Aitken); stores and
/// returns the landing point. Throws NoConvergence when the track does not
/// contract by factor <= 0.9 over the last five depths.
Complex landing_point(Ray& r, const Parameter& p, const TraceOptions& opts = {});

/// Searches eventually periodic addresses consistent with the itinerary of
/// target's forward orbit and returns the first whose ray lands at target.
Address find_ray_landing_at(const Parameter& p, Complex target, long search_bound,
                            const TraceOptions& opts = {});

}  // namespace expdyn
