#include "expdyn/ray.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "expdyn/cycles.hpp"
#include "expdyn/partition.hpp"

namespace expdyn {

double tail_height(const Parameter& p, long k) {
    return kTwoPi * static_cast<double>(k) - p.argument;
}

double potential_push(double t) { return std::expm1(t); }
double potential_pull(double u) { return std::log1p(u); }

double potential_floor(int depth, const TraceOptions& opts) {
    double t = opts.tail_x;
    for (int j = 0; j < depth; ++j) t = potential_pull(t);
    return t;
}

namespace {

void check_address(const Address& s, const TraceOptions& opts) {
    if (s.max_entry() > opts.max_symbol)
        throw Error(Errc::InvalidArgument,
                    "trace: address entry beyond the bounded-entry guard");
}

// Pull back the straight-tail start for potential t through at most `depth`
// branches. The tail abscissa is shifted by -log|lambda| so that consecutive
// pull-back levels join seamlessly.
Complex pull_from_tail(const Parameter& p, const Address& s, double t, int depth,
                       const TraceOptions& opts) {
    int level = 0;
    double u = t;
    while (level < depth && u < opts.tail_x) {
        u = potential_push(u);
        ++level;
    }
    Complex z(u - std::log(p.modulus), tail_height(p, s.symbol(static_cast<size_t>(level))));
    for (int j = level - 1; j >= 0; --j) {
        if (std::abs(z) < opts.zero_guard)
            throw Error(Errc::PullbackCollision,
                        "trace: pull-back passed within the zero guard of the origin");
        z = inverse_branch(p, s.symbol(static_cast<size_t>(j)), z);
    }
    return z;
}

std::vector<Complex> compute_inner_track(const Parameter& p, const Address& s,
                                         int depth, const TraceOptions& opts) {
    std::vector<Complex> track;
    track.reserve(static_cast<size_t>(depth));
    for (int n = 1; n <= depth; ++n) {
        Complex z(opts.tail_x - std::log(p.modulus),
                  tail_height(p, s.symbol(static_cast<size_t>(n))));
        for (int j = n - 1; j >= 0; --j) {
            if (std::abs(z) < opts.zero_guard)
                throw Error(Errc::PullbackCollision,
                            "trace: pull-back passed within the zero guard of the origin");
            z = inverse_branch(p, s.symbol(static_cast<size_t>(j)), z);
        }
        track.push_back(z);
    }
    return track;
}

// Geometric extrapolation of the last three track points.
Complex extrapolate_track(const std::vector<Complex>& track) {
    const size_t n = track.size();
    if (n < 3) return track.back();
    const Complex d1 = track[n - 1] - track[n - 2];
    const Complex d0 = track[n - 2] - track[n - 3];
    const Complex den = d0 - d1;
    if (std::abs(den) < 1e-300 || std::abs(d1) < 1e-15) return track.back();
    return track[n - 1] - d1 * d1 / den;
}

}  // namespace

Complex ray_point(const Parameter& p, const Address& s, double t, int depth,
                  const TraceOptions& opts) {
    if (depth < 1) throw Error(Errc::InvalidArgument, "ray_point: depth must be >= 1");
    if (!(t > 0.0)) throw Error(Errc::InvalidArgument, "ray_point: potential must be > 0");
    check_address(s, opts);
    return pull_from_tail(p, s, t, depth, opts);
}

Ray trace_ray(const Parameter& p, const Address& s, int depth, double t_min,
              const TraceOptions& opts) {
    if (depth < 1) throw Error(Errc::InvalidArgument, "trace_ray: depth must be >= 1");
    if (t_min < 0.0) throw Error(Errc::InvalidArgument, "trace_ray: t_min must be >= 0");
    check_address(s, opts);

    const double t_lo = std::max(t_min, potential_floor(depth, opts));
    const double t_hi = opts.tail_x + opts.tail_len;
    if (t_lo >= t_hi)
        throw Error(Errc::InvalidArgument, "trace_ray: empty potential range");

    // Coarse grid, then adaptive bisection until the polyline resolution bound
    // holds (absolute, and relative near the origin).
    std::deque<RayVertex> verts;
    const int n0 = std::max(2, static_cast<int>(std::ceil((t_hi - t_lo) / opts.coarse_dt)));
    for (int i = 0; i <= n0; ++i) {
        const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / n0;
        verts.push_back({t, pull_from_tail(p, s, t, depth, opts)});
    }

    auto resolved = [&](const RayVertex& a, const RayVertex& b) {
        const double gap = std::abs(b.z - a.z);
        if (gap > opts.step_max) return false;
        const double mag = std::min(std::abs(a.z), std::abs(b.z));
        if (mag < 1.0 && gap > opts.rel_step * std::max(mag, 1e-30)) return false;
        return true;
    };

    std::vector<RayVertex> out;
    out.reserve(4096);
    out.push_back(verts.front());
    verts.pop_front();
    while (!verts.empty()) {
        const RayVertex& prev = out.back();
        const RayVertex& next = verts.front();
        const double dt = next.t - prev.t;
        if (resolved(prev, next) || dt <= 1e-12 * std::max(1.0, std::abs(prev.t)) ||
            out.size() + verts.size() >= opts.max_vertices) {
            out.push_back(next);
            verts.pop_front();
        } else {
            const double tm = prev.t + dt / 2.0;
            verts.push_front({tm, pull_from_tail(p, s, tm, depth, opts)});
        }
    }

    // Vertices at potentials covered by both depth-1 and depth agree exactly
    // by construction; sample the overlap to surface depth corruption.
    if (depth >= 2) {
        const double ov_lo = potential_floor(depth - 1, opts);
        for (int i = 0; i < 4; ++i) {
            const double t = ov_lo + (t_hi - ov_lo) * (0.1 + 0.25 * i);
            const Complex a = pull_from_tail(p, s, t, depth, opts);
            const Complex b = pull_from_tail(p, s, t, depth - 1, opts);
            if (std::abs(a - b) > opts.eps_ray)
                throw Error(Errc::DepthInsufficient,
                            "trace_ray: depth convergence check failed on overlap");
        }
    }

    std::reverse(out.begin(), out.end());  // sorted by decreasing potential
    return Ray{s, p, std::move(out), std::nullopt, depth,
               compute_inner_track(p, s, depth, opts)};
}

Complex landing_point(Ray& r, const Parameter& p, const TraceOptions& opts) {
    (void)p;
    const auto& track = r.inner_track;
    if (track.size() < 3)
        throw Error(Errc::InvalidArgument, "landing_point: depth too small");

    // Contraction check over the last five depth steps.
    const size_t n = track.size();
    const size_t first = n >= 7 ? n - 6 : 0;
    for (size_t i = first + 2; i < n; ++i) {
        const double d1 = std::abs(track[i] - track[i - 1]);
        const double d0 = std::abs(track[i - 1] - track[i - 2]);
        if (d1 < 1e-14) continue;  // at the arithmetic floor
        if (d0 > 0.0 && d1 / d0 > 0.9)
            throw Error(Errc::NoConvergence,
                        "landing_point: inner track does not contract by factor 0.9");
    }

    const Complex lim = extrapolate_track(track);
    r.landing = lim;
    return lim;
}

namespace {

// Forward orbit of `start` until a cycle is detected; returns (m, q).
struct PreperiodInfo {
    int preperiod;
    int period;
    std::vector<Complex> orbit;
};

std::optional<PreperiodInfo> detect_orbit_cycle(const Parameter& p, Complex start,
                                                int max_steps, double tol) {
    std::vector<Complex> orbit{start};
    for (int i = 0; i < max_steps; ++i) {
        const Complex cur = orbit.back();
        if (cur.real() > kDefaultEscapeRe) return std::nullopt;
        orbit.push_back(p.lambda * std::exp(cur));
        for (int m = 0; m + 1 < static_cast<int>(orbit.size()); ++m) {
            const int q = static_cast<int>(orbit.size()) - 1 - m;
            if (std::abs(orbit.back() - orbit[static_cast<size_t>(m)]) < tol)
                return PreperiodInfo{m, q, orbit};
        }
    }
    return std::nullopt;
}

}  // namespace

Address find_ray_landing_at(const Parameter& p, Complex target, long search_bound,
                            const TraceOptions& opts) {
    if (search_bound < 1)
        throw Error(Errc::InvalidArgument, "find_ray_landing_at: search_bound must be >= 1");

    if (std::abs(target) < 1e-15) {
        // The singular value: only meaningful for Misiurewicz parameters.
        auto mp = detect_orbit_cycle(p, Complex(0.0, 0.0), 64, 1e-9);
        if (!mp)
            throw Error(Errc::NotMisiurewicz,
                        "find_ray_landing_at: orbit of 0 shows no preperiodicity");
        verify_misiurewicz(p, std::max(1, mp->preperiod), mp->period, 1e-6);
    }

    auto info = detect_orbit_cycle(p, target, 64, 1e-8);
    if (!info)
        throw Error(Errc::NotFound,
                    "find_ray_landing_at: target orbit is not numerically preperiodic");

    const int m = info->preperiod;
    const int q = info->period;
    constexpr size_t kMaxWordLen = 32;
    if (static_cast<size_t>(m + q) > kMaxWordLen)
        throw Error(Errc::NotFound, "find_ray_landing_at: orbit word exceeds search length");

    // Static symbols along the orbit; a point near a strip boundary yields two
    // candidate symbols.
    const StaticPartition sp(p);
    std::vector<std::vector<long>> choices;
    for (int j = 0; j < m + q; ++j) {
        const Complex z = info->orbit[static_cast<size_t>(j)];
        auto idx = try_static_strip_index(sp, z);
        if (idx) {
            choices.push_back({*idx});
        } else {
            const long k = nearest_static_strip(sp, z);
            choices.push_back({k, k + 1});
        }
    }

    std::vector<std::vector<long>> words{{}};
    for (const auto& c : choices) {
        std::vector<std::vector<long>> next;
        for (const auto& w : words) {
            for (long sym : c) {
                if (next.size() >= 16) break;
                auto w2 = w;
                w2.push_back(sym);
                next.push_back(std::move(w2));
            }
        }
        words = std::move(next);
    }

    std::vector<Address> tried;
    for (const auto& w : words) {
        bool in_bound = true;
        for (long sym : w)
            if (std::labs(sym) > search_bound) in_bound = false;
        if (!in_bound) continue;

        Address cand(std::vector<long>(w.begin(), w.begin() + m),
                     std::vector<long>(w.begin() + m, w.end()));
        bool seen = false;
        for (const auto& t : tried)
            if (t == cand) seen = true;
        if (seen) continue;
        tried.push_back(cand);

        try {
            const auto track = compute_inner_track(p, cand, 48, opts);
            const Complex landing = extrapolate_track(track);
            if (std::abs(landing - target) < std::max(opts.eps_land, 1e-10)) return cand;
        } catch (const Error&) {
            // candidate failed to trace; keep searching
        }
    }
    throw Error(Errc::NotFound, "find_ray_landing_at: no candidate address lands at target");
}

}  // namespace expdyn
