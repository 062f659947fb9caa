#include "expdyn/cycles.hpp"

#include <cfloat>
#include <cmath>
#include <deque>

#include "expdyn/partition.hpp"

namespace expdyn {

namespace {

constexpr double kZeroGuard = 1e-12;
constexpr int kMaxInverseIterations = 10000;

Complex apply_inverse_word(const Parameter& p, std::span<const long> word, Complex z) {
    for (size_t j = word.size(); j-- > 0;) {
        if (std::abs(z) < kZeroGuard)
            throw Error(Errc::ZeroCollision,
                        "inverse iteration: intermediate value hit the origin");
        z = inverse_branch(p, word[j], z);
    }
    return z;
}

}  // namespace

CycleData find_periodic_point_seeded(const Parameter& p, std::span<const long> word,
                                     Complex seed, double tol) {
    if (word.empty())
        throw Error(Errc::InvalidArgument, "find_periodic_point: word must be nonempty");
    if (tol < 1e-13)
        throw Error(Errc::InvalidArgument, "find_periodic_point: tol must be >= 1e-13");

    Complex z = seed;
    double prev_delta = -1.0;
    std::deque<double> ratios;
    int iter = 0;
    bool converged = false;
    for (; iter < kMaxInverseIterations; ++iter) {
        const Complex z_new = apply_inverse_word(p, word, z);
        const double delta = std::abs(z_new - z);
        z = z_new;
        if (prev_delta > 1e-13 && delta > 0.0) {
            ratios.push_back(delta / prev_delta);
            if (ratios.size() > 10) ratios.pop_front();
        }
        if (delta == 0.0) {
            converged = true;
            break;
        }
        if (delta < tol) {
            // polish down to the arithmetic floor before accepting
            if (delta <= 4.0 * DBL_EPSILON * std::max(1.0, std::abs(z)) ||
                (prev_delta >= 0.0 && delta >= 0.9 * prev_delta)) {
                converged = true;
                break;
            }
        }
        prev_delta = delta;
    }
    if (!converged && !(prev_delta >= 0.0 && prev_delta < tol))
        throw Error(Errc::NonConvergence,
                    "find_periodic_point: inverse iteration did not converge");

    const size_t n = word.size();
    CycleData cycle;
    cycle.points.resize(n);
    cycle.points[0] = z;
    for (size_t i = 1; i < n; ++i) cycle.points[i] = eval_map(p, cycle.points[i - 1]);
    const Complex closing = eval_map(p, cycle.points[n - 1]);
    cycle.residual = std::abs(closing - cycle.points[0]);

    Complex mult(1.0, 0.0);
    for (size_t i = 0; i < n; ++i) mult *= eval_map(p, cycle.points[i]);
    cycle.multiplier = mult;
    cycle.itinerary_word.assign(word.begin(), word.end());
    cycle.iterations = iter + 1;

    double mean_ratio = 0.0;
    for (double r : ratios) mean_ratio += r;
    cycle.observed_contraction = ratios.empty() ? 0.0 : mean_ratio / ratios.size();

    const StaticPartition sp(p);
    for (size_t i = 0; i < n; ++i) {
        const auto k = try_static_strip_index(sp, cycle.points[i]);
        if (!k || *k != word[i])
            throw Error(Errc::ItineraryMismatch,
                        "find_periodic_point: located point has a different itinerary "
                        "(branch/labeling bug)");
    }
    return cycle;
}

CycleData find_periodic_point(const Parameter& p, std::span<const long> word, double tol) {
    if (word.empty())
        throw Error(Errc::InvalidArgument, "find_periodic_point: word must be nonempty");
    // Anchor of the target strip, nudged off the omitted value 0 (and off the
    // fixed point itself, so the contraction rate is observable).
    const Complex seed =
        Complex(1.0, kTwoPi * static_cast<double>(word[0]) + 0.5);
    return find_periodic_point_seeded(p, word, seed, tol);
}

Complex find_preperiodic_point(const Parameter& p, std::span<const long> preword,
                               std::span<const long> word, double tol) {
    const CycleData cycle = find_periodic_point(p, word, tol);
    return apply_inverse_word(p, preword, cycle.points[0]);
}

KoenigsChart make_koenigs_chart(const CycleData& cycle, int truncation) {
    if (std::abs(cycle.multiplier) <= 1.0)
        throw Error(Errc::InvalidArgument, "koenigs chart: cycle is not repelling");
    double radius = 0.5;
    for (size_t i = 1; i < cycle.points.size(); ++i)
        radius = std::min(radius, 0.1 * std::abs(cycle.points[i] - cycle.points[0]));
    return KoenigsChart{cycle.points[0], cycle.multiplier, radius, truncation,
                        cycle.itinerary_word};
}

Complex koenigs_coordinate(const KoenigsChart& chart, const Parameter& p, Complex z) {
    if (std::abs(z - chart.base) >= chart.radius)
        throw Error(Errc::InvalidArgument, "koenigs_coordinate: z outside chart radius");

    Complex cur = z;
    Complex mu_pow(1.0, 0.0);
    Complex phi = cur - chart.base;
    for (int k = 1; k <= chart.truncation; ++k) {
        cur = apply_inverse_word(p, chart.word, cur);
        if (std::abs(cur - chart.base) > 10.0 * chart.radius)
            throw Error(Errc::ChartEscape,
                        "koenigs_coordinate: inverse orbit left the chart disk");
        mu_pow *= chart.multiplier;
        const Complex next = mu_pow * (cur - chart.base);
        if (std::abs(next - phi) < 1e-12) return next;
        phi = next;
    }
    return phi;
}

MisiurewiczData verify_misiurewicz(const Parameter& p, int m, int period, double tol) {
    if (m < 1 || period < 1)
        throw Error(Errc::InvalidArgument, "verify_misiurewicz: need m >= 1, period >= 1");

    const int steps = m + 10 * period;
    std::vector<Complex> orbit{Complex(0.0, 0.0)};
    orbit.reserve(static_cast<size_t>(steps) + 1);
    for (int i = 0; i < steps; ++i) {
        const Complex cur = orbit.back();
        if (cur.real() > kDefaultEscapeRe)
            throw Error(Errc::NotMisiurewicz,
                        "verify_misiurewicz: orbit of 0 escapes the horizon");
        orbit.push_back(p.lambda * std::exp(cur));
    }

    const StaticPartition sp(p);
    std::vector<long> word(static_cast<size_t>(period));
    for (int i = 0; i < period; ++i) {
        const auto k = try_static_strip_index(sp, orbit[static_cast<size_t>(m + i)]);
        if (!k)
            throw Error(Errc::NotMisiurewicz,
                        "verify_misiurewicz: orbit meets a partition boundary");
        word[static_cast<size_t>(i)] = *k;
    }

    CycleData cycle = [&] {
        try {
            return find_periodic_point(p, word, 1e-13);
        } catch (const Error& e) {
            throw Error(Errc::NotMisiurewicz,
                        std::string("verify_misiurewicz: cycle location failed: ") + e.what());
        }
    }();

    const double residual = std::abs(orbit[static_cast<size_t>(m)] - cycle.points[0]);
    if (residual >= tol) {
        // Distinguish an attracting limit from plain failure.
        const Complex a = orbit[static_cast<size_t>(m + 9 * period)];
        const Complex b = orbit[static_cast<size_t>(m + 8 * period)];
        if (std::abs(a - b) < 1e-3) {
            Complex mult(1.0, 0.0);
            for (int i = 0; i < period; ++i)
                mult *= orbit[static_cast<size_t>(m + 9 * period - i)];
            if (std::abs(mult) < 1.0)
                throw Error(Errc::NotMisiurewicz,
                            "verify_misiurewicz: orbit of 0 converges to an attracting cycle");
        }
        throw Error(Errc::NotMisiurewicz,
                    "verify_misiurewicz: orbit of 0 does not land on the located cycle");
    }
    if (std::abs(cycle.multiplier) <= 1.0)
        throw Error(Errc::NotMisiurewicz, "verify_misiurewicz: located cycle is not repelling");

    // Strict preperiodicity: all points before the cycle closes are distinct.
    for (int j = 0; j < m + period; ++j)
        for (int k = j + 1; k < m + period; ++k)
            if (std::abs(orbit[static_cast<size_t>(j)] - orbit[static_cast<size_t>(k)]) < tol)
                throw Error(Errc::NotMisiurewicz,
                            "verify_misiurewicz: earlier coincidence in the orbit of 0 "
                            "(m or period not minimal)");

    return MisiurewiczData{p, m, period, std::move(cycle), residual};
}

}  // namespace expdyn
