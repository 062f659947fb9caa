#include "expdyn/dynamics.hpp"

#include <cmath>

namespace expdyn {

Complex eval_map(const Parameter& p, Complex z) {
    if (z.real() > kOverflowGuard)
        throw Error(Errc::OverflowGuard, "eval_map: Re(z) beyond overflow guard");
    return p.lambda * std::exp(z);
}

Complex inverse_branch(const Parameter& p, long k, Complex w) {
    if (w == Complex(0.0, 0.0))
        throw Error(Errc::ZeroPreimage, "inverse_branch: 0 is an omitted value");
    const double x = std::log(std::abs(w) / p.modulus);
    const double t0 = std::arg(w) - p.argument;  // arg(w/lambda) up to one wrap
    const double center = kTwoPi * static_cast<double>(k) - p.argument;
    double theta = t0 + kTwoPi * std::round((center - t0) / kTwoPi);
    // strip interval is half-open at the top: theta in (center - pi, center + pi]
    if (theta - center > kPi) theta -= kTwoPi;
    if (theta - center <= -kPi) theta += kTwoPi;
    return {x, theta};
}

Complex inverse_branch_continue(const Parameter& p, Complex w, Complex w_prev,
                                double theta_prev) {
    if (w == Complex(0.0, 0.0))
        throw Error(Errc::ZeroPreimage, "inverse_branch_continue: 0 is an omitted value");
    const double x = std::log(std::abs(w) / p.modulus);
    const double theta = theta_prev + std::arg(w / w_prev);
    return {x, theta};
}

OrbitRecord iterate_orbit(const Parameter& p, Complex z, int horizon,
                          double t_esc, const BoundaryProbe& probe) {
    if (horizon < 1)
        throw Error(Errc::InvalidArgument, "iterate_orbit: horizon must be >= 1");
    if (t_esc < 50.0)
        throw Error(Errc::InvalidArgument, "iterate_orbit: t_esc must be >= 50");

    OrbitRecord rec;
    rec.start = z;
    rec.points.reserve(static_cast<size_t>(horizon) + 1);
    rec.points.push_back(z);

    bool stayed_in_disk = std::abs(z) <= kBoundDiskRadius;
    const double esc = std::min(t_esc, kOverflowGuard);

    for (int step = 0; step <= horizon; ++step) {
        const Complex cur = rec.points.back();
        if (cur.real() > esc || !std::isfinite(cur.real()) || !std::isfinite(cur.imag())) {
            rec.classification = OrbitClass::EscapingByHorizon;
            rec.escape_step = step;
            return rec;
        }
        if (probe && probe(cur)) {
            rec.classification = OrbitClass::BoundaryHit;
            return rec;
        }
        if (step == horizon) break;
        const Complex next = p.lambda * std::exp(cur);
        stayed_in_disk = stayed_in_disk && std::abs(next) <= kBoundDiskRadius;
        rec.points.push_back(next);
    }

    rec.classification =
        stayed_in_disk ? OrbitClass::BoundedByHorizon : OrbitClass::Undecided;
    return rec;
}

double circle_image_check(const Parameter& p, double rho, int samples) {
    if (samples < 8)
        throw Error(Errc::InvalidArgument, "circle_image_check: samples must be >= 8");
    if (rho > kOverflowGuard)
        throw Error(Errc::InvalidArgument, "circle_image_check: rho beyond overflow guard");
    const double radius = p.modulus * std::exp(rho);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double y = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        const Complex img = eval_map(p, Complex(rho, y));
        worst = std::max(worst, std::abs(std::abs(img) - radius) / radius);
    }
    return worst;
}

}  // namespace expdyn
