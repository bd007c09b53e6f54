#pragma once

#include <memory>
#include <vector>

#include "fracdiff/quadrature.hpp"

namespace fracdiff {

// Distribution function tabulated from a density by piecewise adaptive
// quadrature, with monotone cubic interpolation between the nodes.
//   Symmetric: density f on [0, xmax] of an even law, F(x) = 1/2 + sgn(x) C(|x|).
//   HalfLine:  density f supported on [0, inf), F(x) = C(x) for x >= 0.
class TabulatedCdf {
public:
    enum class Kind { Symmetric, HalfLine };

    TabulatedCdf(const RealFn& density, double xmax, int segments, Kind kind,
                 const QuadratureConfig& q = {});
    ~TabulatedCdf();
    TabulatedCdf(TabulatedCdf&&) noexcept;
    TabulatedCdf& operator=(TabulatedCdf&&) noexcept;

    double operator()(double x) const;
    // Inverse on the tabulated range; u in [0, 1).
    double quantile(double u) const;
    // Probability mass captured on the table (1 minus the cut tail).
    double captured_mass() const;
    double xmax() const { return xmax_; }

private:
    double cumulative(double y) const;  // C(y), 0 <= y <= xmax

    struct Interp;
    std::unique_ptr<Interp> interp_;
    std::vector<double> nodes_, cum_;
    double xmax_;
    Kind kind_;
};

}  // namespace fracdiff
