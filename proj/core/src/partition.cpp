#include "expdyn/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace expdyn {

namespace {

double strip_coordinate(const Parameter& p, Complex z) {
    return (z.imag() + p.argument) / kTwoPi;  // strip k <=> u in (k - 1/2, k + 1/2]
}

}  // namespace

std::optional<long> try_static_strip_index(const StaticPartition& sp, Complex z,
                                           double delta_b) {
    const double u = strip_coordinate(sp.parameter, z);
    const double frac = u - std::floor(u);
    if (kTwoPi * std::abs(frac - 0.5) < delta_b) return std::nullopt;
    return static_cast<long>(std::ceil(u - 0.5));
}

long static_strip_index(const StaticPartition& sp, Complex z, double delta_b) {
    auto k = try_static_strip_index(sp, z, delta_b);
    if (!k)
        throw Error(Errc::BoundaryHit,
                    "static_strip_index: point within boundary tolerance of a strip line");
    return *k;
}

long nearest_static_strip(const StaticPartition& sp, Complex z) {
    return static_cast<long>(std::ceil(strip_coordinate(sp.parameter, z) - 0.5));
}

double static_strip_lower(const Parameter& p, long k) {
    return (2.0 * static_cast<double>(k) - 1.0) * kPi - p.argument;
}

double distance_to_polyline(Complex z, const std::vector<Complex>& poly,
                            double x_window) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        const Complex a = poly[i];
        const Complex b = poly[i + 1];
        const double xlo = std::min(a.real(), b.real());
        const double xhi = std::max(a.real(), b.real());
        if (z.real() < xlo - x_window || z.real() > xhi + x_window) continue;
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        double s = 0.0;
        if (len2 > 0.0) {
            s = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
            s = std::clamp(s, 0.0, 1.0);
        }
        best = std::min(best, std::abs(z - (a + s * ab)));
    }
    return best;
}

namespace {

// Parity of crossings of the downward vertical ray from z with the polyline.
bool above_polyline(Complex z, const std::vector<Complex>& poly) {
    int crossings = 0;
    const double x = z.real();
    for (size_t i = 0; i + 1 < poly.size(); ++i) {
        const Complex a = poly[i];
        const Complex b = poly[i + 1];
        if ((a.real() > x) == (b.real() > x)) continue;
        const double s = (x - a.real()) / (b.real() - a.real());
        const double y = a.imag() + s * (b.imag() - a.imag());
        if (y < z.imag()) ++crossings;
    }
    return (crossings % 2) != 0;
}

}  // namespace

DynamicPartition build_dynamic_partition(const Parameter& p, const Ray& gamma,
                                         const DynamicPartitionOptions& opts) {
    if (opts.x_left >= 0.0)
        throw Error(Errc::InvalidArgument, "build_dynamic_partition: x_left must be < 0");
    if (!gamma.landing || std::abs(*gamma.landing) > opts.eps_land)
        throw Error(Errc::GammaNotLanding,
                    "build_dynamic_partition: gamma does not land at 0 within tolerance");
    if (gamma.vertices.size() < 2)
        throw Error(Errc::InvalidArgument, "build_dynamic_partition: gamma has no polyline");

    // Shared geometry of all branches: abscissas and unwrapped argument
    // increments along gamma (vertices run from far right inward).
    const size_t n = gamma.vertices.size();
    std::vector<double> xs(n);
    std::vector<double> dargs(n - 1);
    for (size_t i = 0; i < n; ++i) {
        const Complex w = gamma.vertices[i].z;
        if (w == Complex(0.0, 0.0))
            throw Error(Errc::ZeroPreimage, "build_dynamic_partition: gamma vertex at 0");
        xs[i] = std::log(std::abs(w) / p.modulus);
        if (i + 1 < n)
            dargs[i] = std::arg(gamma.vertices[i + 1].z / w);
    }

    const long k_lo = -(opts.k_range + 1);
    const long k_hi = opts.k_range + 1;
    DynamicPartition dp{p, gamma, k_lo, {}, opts.x_left, 0.0, 0.0};
    dp.curves.reserve(static_cast<size_t>(k_hi - k_lo + 1));
    for (long k = k_lo; k <= k_hi; ++k) {
        std::vector<Complex> curve(n);
        double theta = inverse_branch(p, k, gamma.vertices.front().z).imag();
        curve[0] = {xs[0], theta};
        for (size_t i = 1; i < n; ++i) {
            theta += dargs[i - 1];
            curve[i] = {xs[i], theta};
        }
        dp.curves.push_back(std::move(curve));
    }

    const double data_left = *std::min_element(xs.begin(), xs.end());
    dp.x_charted_left = std::max(opts.x_left, data_left);
    dp.x_right = xs[0];

    // Anchor the labels: relabel so that the strip containing the origin is
    // R_0 ("R_k contains 2 pi i k"; translates by 2 pi i shift the rest).
    long below = k_lo;
    for (long k = k_lo; k <= k_hi; ++k) {
        if (above_polyline(Complex(0.0, 0.0), dp.curve(k)))
            below = k;
        else
            break;
    }
    dp.k_min = k_lo - below;  // curve previously labeled `below` becomes curve 0
    return dp;
}

DynamicIndex dynamic_strip_index_ex(const DynamicPartition& dp, Complex z,
                                    bool allow_left_fallback, double delta_b) {
    const StaticPartition sp(dp.parameter);
    if (z.real() > dp.x_right) return {static_strip_index(sp, z, delta_b), true};
    if (z.real() < dp.x_charted_left) {
        if (allow_left_fallback) return {static_strip_index(sp, z, delta_b), true};
        throw Error(Errc::OutOfChartedRange,
                    "dynamic_strip_index: Re(z) left of charted curve data");
    }

    long k = nearest_static_strip(sp, z);
    const long k_hi = dp.k_min + static_cast<long>(dp.curves.size()) - 1;
    k = std::clamp(k, dp.k_min, k_hi - 1);

    // Correct the candidate against adjacent curves until sandwiched.
    for (int guard = 0; guard < 4096; ++guard) {
        const bool above_lower = above_polyline(z, dp.curve(k));
        if (!above_lower) {
            if (k - 1 < dp.k_min) return {nearest_static_strip(sp, z), true};
            --k;
            continue;
        }
        if (above_polyline(z, dp.curve(k + 1))) {
            if (k + 2 > k_hi) return {nearest_static_strip(sp, z), true};
            ++k;
            continue;
        }
        break;
    }

    if (distance_to_polyline(z, dp.curve(k)) < delta_b ||
        distance_to_polyline(z, dp.curve(k + 1)) < delta_b)
        throw Error(Errc::BoundaryHit,
                    "dynamic_strip_index: point within boundary tolerance of a preimage curve");
    return {k, false};
}

long dynamic_strip_index(const DynamicPartition& dp, Complex z, double delta_b) {
    return dynamic_strip_index_ex(dp, z, false, delta_b).k;
}

}  // namespace expdyn
