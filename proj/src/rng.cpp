#include "fracdiff/rng.hpp"

#include <cmath>

#include "fracdiff/types.hpp"

namespace fracdiff {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

constexpr double kTwoM53 = 1.0 / 9007199254740992.0;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id), engine_(seeded(seed, stream_id)) {}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * kTwoM53; }

double RngStream::uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * kTwoM53; }

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

double RngStream::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("gamma variate: shape must be positive");
    if (shape < 1.0) {
        // boost: G(a) = G(a+1) U^{1/a}
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace fracdiff
