#pragma once

#include "fracdiff/types.hpp"

namespace fracdiff {

// Stable law with characteristic function exp(-eta |b|^alpha e^{-i pi gamma sgn(b)/2}).
struct StableParams {
    double alpha = 1.5;
    double gamma = 0.0;
    double eta = 1.0;

    // alpha in (0,1) U (1,2], |gamma| <= min(alpha, 2 - alpha), eta > 0.
    static StableParams make(double alpha, double gamma, double eta = 1.0);
};

// Density at x.  Convergent power series for 1 < alpha <= 2 and x <= 5,
// inverse-power series for x > 5 (asymptotic when alpha > 1, convergent
// when alpha < 1).  Where a series cannot be summed to ~1e-11 relative the Zolotarev
// integral takes over.
EvalResult stable_density(const StableParams& sp, double x, const SeriesControl& ctl = {});

// The individual branches, unit scale, x > 0.  Exposed for cross-checks.
EvalResult stable_series_small(double alpha, double gamma, double x, const SeriesControl& ctl = {});
EvalResult stable_series_large(double alpha, double gamma, double x, const SeriesControl& ctl = {});
EvalResult stable_integral(double alpha, double gamma, double x);

// p_{1/2}(y; 1/2, c) in closed form.
double levy_half(double y, double c);

}  // namespace fracdiff
