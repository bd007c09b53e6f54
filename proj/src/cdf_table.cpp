#include "fracdiff/cdf_table.hpp"

#include <algorithm>
#include <cmath>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "fracdiff/types.hpp"

namespace fracdiff {

struct TabulatedCdf::Interp {
    boost::math::interpolators::pchip<std::vector<double>> spline;
};

TabulatedCdf::TabulatedCdf(const RealFn& density, double xmax, int segments, Kind kind,
                           const QuadratureConfig& q)
    : xmax_(xmax), kind_(kind) {
    if (!(xmax > 0.0) || segments < 4) throw DomainError("TabulatedCdf: need xmax > 0 and >= 4 segments");
    nodes_.resize(segments + 1);
    cum_.resize(segments + 1);
    const double h = xmax / segments;
    double acc = 0.0;
    nodes_[0] = 0.0;
    cum_[0] = 0.0;
    for (int i = 1; i <= segments; ++i) {
        nodes_[i] = (i == segments) ? xmax : i * h;
        acc += integrate(density, nodes_[i - 1], nodes_[i], q).value;
        cum_[i] = acc;
    }
    // pchip wants strictly increasing abscissae only; flat stretches are fine
    std::vector<double> xs = nodes_, ys = cum_;
    interp_ = std::make_unique<Interp>(Interp{{std::move(xs), std::move(ys)}});
}

TabulatedCdf::~TabulatedCdf() = default;
TabulatedCdf::TabulatedCdf(TabulatedCdf&&) noexcept = default;
TabulatedCdf& TabulatedCdf::operator=(TabulatedCdf&&) noexcept = default;

double TabulatedCdf::cumulative(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= xmax_) return cum_.back();
    // pchip preserves monotonicity of the data, but clamp against round-off
    return std::clamp(interp_->spline(y), 0.0, cum_.back());
}

double TabulatedCdf::operator()(double x) const {
    if (kind_ == Kind::HalfLine) return x <= 0.0 ? 0.0 : cumulative(x);
    const double c = cumulative(std::abs(x));
    return x < 0.0 ? 0.5 - c : 0.5 + c;
}

double TabulatedCdf::captured_mass() const { return kind_ == Kind::HalfLine ? cum_.back() : 2.0 * cum_.back(); }

double TabulatedCdf::quantile(double u) const {
    double target;
    double sign = 1.0;
    if (kind_ == Kind::HalfLine) {
        target = u;
    } else {
        target = std::abs(u - 0.5);
        sign = u < 0.5 ? -1.0 : 1.0;
    }
    if (target >= cum_.back()) return sign * xmax_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    const std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    double lo = nodes_[i - 1], hi = nodes_[i];
    for (int k = 0; k < 60 && hi - lo > 1e-15 * std::max(1.0, hi); ++k) {
        const double mid = 0.5 * (lo + hi);
        if (cumulative(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return sign * 0.5 * (lo + hi);
}

}  // namespace fracdiff
