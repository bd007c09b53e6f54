#pragma once

#include <functional>

namespace fracdiff {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    // A semi-infinite walk stops once two consecutive panels carry less
    // than tail_factor * abs_tol of absolute mass.
    double tail_factor = 0.1;

    void validate() const;
    QuadratureConfig tightened(double factor) const;
};

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    double l1 = 0.0;  // integral of |f|, used for round-off estimates
    long evaluations = 0;
};

using RealFn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (10/21) on [a, b].  The interval is first
// cut into `initial_panels` equal pieces.  Throws QuadratureFailure when the
// subdivision budget runs out before the tolerance is met.
QuadResult integrate(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                     int initial_panels = 1);

// Integral over [a, inf) by walking panels of geometrically growing width
// starting at `scale`.  Meant for integrands with at least exponential decay.
QuadResult integrate_to_infinity(const RealFn& f, double a, double scale,
                                 const QuadratureConfig& cfg);

}  // namespace fracdiff
