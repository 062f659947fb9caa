#include "expdyn/itinerary.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace expdyn {

namespace {

template <typename Classify>
Itinerary run_itinerary(const Parameter& p, Complex z, int n, double t_esc,
                        Classify&& classify) {
    if (n < 1) throw Error(Errc::InvalidArgument, "itinerary: n must be >= 1");
    Itinerary it;
    it.symbols.reserve(static_cast<size_t>(n));
    const double esc = std::min(t_esc, kOverflowGuard);
    Complex w = z;
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || w.real() > esc)
            return it;  // escape horizon: truncated, complete stays false
        try {
            it.symbols.push_back(classify(w, it));
        } catch (const Error& e) {
            if (e.code() == Errc::BoundaryHit) return it;
            throw;
        }
        if (j + 1 < n) w = p.lambda * std::exp(w);
    }
    it.complete = true;
    return it;
}

}  // namespace

Itinerary itinerary(const Parameter& p, const StaticPartition& sp, Complex z, int n,
                    double t_esc) {
    return run_itinerary(p, z, n, t_esc, [&](Complex w, Itinerary&) {
        return static_strip_index(sp, w);
    });
}

Itinerary itinerary(const Parameter& p, const DynamicPartition& dp, Complex z, int n,
                    double t_esc) {
    return run_itinerary(p, z, n, t_esc, [&](Complex w, Itinerary& it) {
        const DynamicIndex di = dynamic_strip_index_ex(dp, w, /*allow_left_fallback=*/true);
        it.used_static_fallback = it.used_static_fallback || di.static_fallback;
        return di.k;
    });
}

bool is_exponentially_bounded_prefix(std::span<const long> prefix, const Parameter& p,
                                     double x_hat) {
    if (prefix.empty())
        throw Error(Errc::InvalidArgument, "exponentially bounded: prefix must be nonempty");
    if (!(x_hat > 0.0))
        throw Error(Errc::InvalidArgument, "exponentially bounded: x_hat must be > 0");

    const double log_lambda = std::log(p.modulus);
    double value = x_hat;  // E^j_{|lambda|}(x_hat) while representable
    double log_value = 0.0;
    bool log_domain = false;

    for (size_t j = 0; j < prefix.size(); ++j) {
        const double lhs = kTwoPi * static_cast<double>(std::labs(prefix[j]));
        if (log_domain) {
            // Beyond log(2 pi * LONG_MAX) every integer entry passes.
            if (log_value > 50.0) return true;
            if (!(lhs == 0.0 || std::log(lhs) < log_value)) return false;
        } else {
            if (!(lhs < value)) return false;
        }
        // advance the comparison iterate
        if (!log_domain) {
            if (value > 690.0) {
                log_value = log_lambda + value;
                log_domain = true;
            } else {
                value = p.modulus * std::exp(value);
            }
        } else {
            log_value = log_lambda + std::exp(log_value);
        }
    }
    return true;
}

std::optional<double> exponentially_bounded_witness(std::span<const long> prefix,
                                                    const Parameter& p) {
    for (int e = 0; e <= 10; ++e) {
        const double x_hat = std::ldexp(1.0, e);  // 1, 2, 4, ..., 1024
        if (is_exponentially_bounded_prefix(prefix, p, x_hat)) return x_hat;
    }
    return std::nullopt;
}

SlopeBound fit_slope_bound(const DynamicPartition& dp, long k) {
    const auto& curve = dp.curve(k);
    size_t deep = 0;
    double x_min = 0.0, x_max = 0.0;
    bool first = true;
    for (const Complex& v : curve) {
        if (v.real() < -5.0) ++deep;
        if (first || v.real() < x_min) x_min = v.real();
        if (first || v.real() > x_max) x_max = v.real();
        first = false;
    }
    if (deep < 50)
        throw Error(Errc::InsufficientData,
                    "fit_slope_bound: fewer than 50 curve points with Re < -5");

    const double m = std::min(-5.0, x_min + 0.25 * (x_max - x_min));
    const double offset = kTwoPi * static_cast<double>(k);

    // Fit Im - 2k*pi ~ c*Re + b on even-index samples; odd-index samples are
    // held out for verification by the caller.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    size_t nfit = 0;
    size_t idx = 0;
    for (const Complex& v : curve) {
        const bool fit_half = (idx++ % 2) == 0;
        if (v.real() >= m || !fit_half) continue;
        const double x = v.real();
        const double y = v.imag() - offset;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++nfit;
    }
    if (nfit < 8)
        throw Error(Errc::InsufficientData, "fit_slope_bound: too few points left of m");
    const double denom = static_cast<double>(nfit) * sxx - sx * sx;
    if (denom == 0.0)
        throw Error(Errc::InsufficientData, "fit_slope_bound: degenerate abscissas");
    const double c = (static_cast<double>(nfit) * sxy - sx * sy) / denom;

    double max_res = 0.0;
    idx = 0;
    for (const Complex& v : curve) {
        const bool fit_half = (idx++ % 2) == 0;
        if (v.real() >= m || !fit_half) continue;
        max_res = std::max(max_res, std::abs(v.imag() - offset - c * v.real()));
    }
    const double d = std::max(1.05 * max_res, 1.0 + 1e-6);
    return SlopeBound{c, d, m, k};
}

double half_plane_itinerary_check(const Parameter& p, const DynamicPartition& dp, int n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "half_plane check: n must be >= 1");

    const Itinerary s0 = itinerary(p, dp, Complex(0.0, 0.0), n + 1);
    if (!s0.complete)
        throw Error(Errc::NotFound, "half_plane check: itinerary of 0 is not complete");

    for (double mu = -10.0; mu >= -200.0; mu *= 2.0) {
        std::mt19937_64 rng(0x9e3779b9ull ^ static_cast<uint64_t>(-mu));
        std::uniform_real_distribution<double> dre(mu - 10.0, mu);
        std::uniform_real_distribution<double> dim(-40.0, 40.0);
        bool all_match = true;
        for (int i = 0; i < 200 && all_match; ++i) {
            Complex w(dre(rng), dim(rng));
            for (int j = 1; j <= n; ++j) {
                w = p.lambda * std::exp(w);
                if (!std::isfinite(w.real()) || w.real() > kOverflowGuard) {
                    all_match = false;
                    break;
                }
                long kj;
                try {
                    kj = dynamic_strip_index_ex(dp, w, /*allow_left_fallback=*/true).k;
                } catch (const Error&) {
                    all_match = false;
                    break;
                }
                if (kj != s0.symbols[static_cast<size_t>(j - 1)]) {
                    all_match = false;
                    break;
                }
            }
        }
        if (all_match) return mu;
    }
    throw Error(Errc::NotFound,
                "half_plane check: no half plane above Re = -200 matches (partition bug?)");
}

}  // namespace expdyn
