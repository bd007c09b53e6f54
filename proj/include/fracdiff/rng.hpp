#pragma once

#include <cstdint>
#include <random>

namespace fracdiff {

// Reproducible stream: the same (seed, stream_id) gives the same sequence on
// every platform.  mt19937_64 and seed_seq are fully specified by the
// standard; the variate transforms below are written out by hand because the
// standard distributions are not.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    std::uint64_t bits() { return engine_(); }
    double uniform();       // [0, 1)
    double uniform_open();  // (0, 1)
    double normal();        // standard normal, Marsaglia polar method
    double gamma(double shape);  // unit scale, Marsaglia-Tsang

private:
    std::uint64_t seed_, stream_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace fracdiff
