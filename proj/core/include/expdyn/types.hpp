#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace expdyn {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Domain error codes shared across the library.
enum class Errc {
    OverflowGuard,
    ZeroPreimage,
    BoundaryHit,
    PullbackCollision,
    DepthInsufficient,
    NoConvergence,
    NotFound,
    GammaNotLanding,
    OutOfChartedRange,
    InsufficientData,
    ZeroCollision,
    NonConvergence,
    ItineraryMismatch,
    ChartEscape,
    NotMisiurewicz,
    PrefixNotExponentiallyBounded,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// The map parameter lambda of E(z) = lambda * exp(z), with cached polar data.
struct Parameter {
    Complex lambda;
    double modulus;   // |lambda|
    double argument;  // arg(lambda), principal value in (-pi, pi]

    explicit Parameter(Complex lam)
        : lambda(lam), modulus(std::abs(lam)), argument(std::arg(lam)) {
        if (modulus == 0.0)
            throw Error(Errc::InvalidArgument, "parameter lambda must be nonzero");
    }
};

}  // namespace expdyn
