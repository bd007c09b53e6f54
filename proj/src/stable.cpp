#include "fracdiff/stable.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
// Series results with a larger relative error estimate go to the integral.
constexpr double kSeriesAcceptRel = 1e-11;
constexpr double kCrossover = 5.0;

double roundoff(long double abs_sum, long double sum) {
    return static_cast<double>(4.0L * LDBL_EPSILON * abs_sum) +
           std::numeric_limits<double>::epsilon() * std::abs(static_cast<double>(sum));
}

bool light_right_tail(double alpha, double gamma) {
    // every coefficient sin(k pi (gamma+alpha)/2) vanishes
    return std::abs(std::remainder(0.5 * (gamma + alpha), 1.0)) < 1e-12;
}

}  // namespace

StableParams StableParams::make(double alpha, double gamma, double eta) {
    if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0)
        throw DomainError("stable: alpha must lie in (0,1) U (1,2]");
    if (!(std::abs(gamma) <= std::min(alpha, 2.0 - alpha) + 1e-15))
        throw DomainError("stable: |gamma| must not exceed min(alpha, 2 - alpha)");
    if (!(eta > 0.0)) throw DomainError("stable: eta must be positive");
    return {alpha, gamma, eta};
}

// (1/pi) sum_{k>=1} (-x)^{k-1} sin(k pi (gamma+alpha)/(2 alpha)) Gamma(1+k/alpha)/k!
EvalResult stable_series_small(double alpha, double gamma, double x, const SeriesControl& ctl) {
    ctl.validate();
    if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("stable_series_small: needs 1 < alpha <= 2");
    if (x < 0.0) throw DomainError("stable_series_small: x must be non-negative");
    const long double a = alpha, X = x;
    const long double ang = (static_cast<long double>(gamma) + a) / (2.0L * a);
    long double sum = 0.0L, abs_sum = 0.0L, power = 1.0L;  // x^{k-1}/k!
    for (int k = 1; k <= ctl.max_terms; ++k) {
        power /= k;
        const long double mag = power * std::tgamma(1.0L + k / a) / kPiL;
        const long double term = ((k - 1) % 2 == 0 ? 1.0L : -1.0L) * mag * sin_pi(k * ang);
        sum += term;
        abs_sum += std::abs(term);
        power *= X;
        const long double next = power / (k + 1) * std::tgamma(1.0L + (k + 1) / a) / kPiL;
        if (k >= ctl.min_terms && (next <= ctl.rel_tol * std::abs(sum) || next < 1e-300L) && next <= mag) {
            return {static_cast<double>(sum), static_cast<double>(2.0L * next) + roundoff(abs_sum, sum),
                    Method::Series};
        }
    }
    throw NonConvergent("stable_series_small: series did not converge within max_terms");
}

// (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(alpha k + 1)/k! sin(k pi (gamma+alpha)/2) x^{-alpha k - 1}
// Convergent for alpha < 1; for alpha > 1 summed up to its smallest term.
EvalResult stable_series_large(double alpha, double gamma, double x, const SeriesControl& ctl) {
    ctl.validate();
    if (!(x > 0.0)) throw DomainError("stable_series_large: x must be positive");
    const long double a = alpha, X = x;
    const long double ang = 0.5L * (static_cast<long double>(gamma) + a);
    const long double lx = std::log(X);
    long double sum = 0.0L, abs_sum = 0.0L;
    auto envelope = [&](int k) {
        return std::exp(std::lgamma(a * k + 1.0L) - std::lgamma(k + 1.0L) - (a * k + 1.0L) * lx) / kPiL;
    };
    long double mag = envelope(1);
    for (int k = 1; k <= ctl.max_terms; ++k) {
        const long double term = (k % 2 == 1 ? 1.0L : -1.0L) * mag * sin_pi(k * ang);
        sum += term;
        abs_sum += std::abs(term);
        const long double next = envelope(k + 1);
        const bool small = next <= ctl.rel_tol * std::abs(sum) || next < 1e-300L;
        if (k >= ctl.min_terms && small && next <= mag)
            return {static_cast<double>(sum), static_cast<double>(2.0L * next) + roundoff(abs_sum, sum),
                    Method::Series};
        if (alpha > 1.0 && next > mag) {
            // asymptotic series turned around; stop at the smallest term
            return {static_cast<double>(sum), static_cast<double>(next) + roundoff(abs_sum, sum),
                    Method::Series};
        }
        mag = next;
    }
    throw NonConvergent("stable_series_large: series did not converge within max_terms");
}

// Zolotarev's integral, written for the S1-type standardisation
// X = sigma * Z with sigma^alpha = cos(pi gamma / 2) and skewness
// tan(pi gamma/2)/tan(pi alpha/2).
EvalResult stable_integral(double alpha, double gamma, double x) {
    if (!(x > 0.0)) throw DomainError("stable_integral: x must be positive");
    const double sigma = std::pow(std::cos(kPi * gamma / 2.0), 1.0 / alpha);
    const double y = x / sigma;
    const double theta0 = kPi * gamma / (2.0 * alpha);
    const double a1 = alpha - 1.0;
    const double cos_a_t0 = std::cos(alpha * theta0);
    const double c = std::pow(y, alpha / a1);

    // log V(theta); V is monotone on (-theta0, pi/2)
    auto log_v = [&](double th) {
        return std::log(cos_a_t0) / a1 +
               alpha / a1 * (std::log(std::cos(th)) - std::log(std::sin(alpha * (theta0 + th)))) +
               std::log(std::cos(alpha * theta0 + a1 * th)) - std::log(std::cos(th));
    };
    auto g = [&](double th) {
        const double lv = log_v(th);
        const double cv = c * std::exp(lv);
        if (!std::isfinite(lv) || cv > 700.0) return 0.0;
        return std::exp(lv) * std::exp(-cv);
    };

    const double lo = -theta0, hi = kPi / 2.0;
    const double span = hi - lo;
    const double lc = std::log(c);
    // locate c V(theta) = 1, where the integrand peaks
    double a = lo + 1e-12 * span, b = hi - 1e-12 * span;
    double fa = lc + log_v(a), fb = lc + log_v(b);
    double split = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(fa) && std::isfinite(fb) && fa * fb < 0.0) {
        for (int it = 0; it < 200 && b - a > 1e-15 * span; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = lc + log_v(m);
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        split = 0.5 * (a + b);
    }
    double peak = 0.0;
    for (int i = 0; i <= 64; ++i) peak = std::max(peak, g(lo + span * i / 64.0));
    if (std::isfinite(split)) peak = std::max(peak, g(split));

    const double pref = alpha * std::pow(y, 1.0 / a1) / (kPi * std::abs(a1)) / sigma;
    if (peak == 0.0) return {0.0, 0.0, Method::Integral};

    QuadratureConfig q;
    q.rel_tol = 1e-12;
    q.abs_tol = std::max(1e-300, 1e-15 * peak * span);
    q.max_subdivisions = 4000;
    QuadResult r1, r2;
    if (std::isfinite(split)) {
        r1 = integrate(g, lo, split, q, 8);
        r2 = integrate(g, split, hi, q, 8);
    } else {
        r1 = integrate(g, lo, hi, q, 16);
    }
    const double value = pref * (r1.value + r2.value);
    const double err = pref * (r1.abs_err + r2.abs_err) + 1e-14 * std::abs(value);
    return {value, err, Method::Integral};
}

EvalResult stable_density(const StableParams& sp_in, double x, const SeriesControl& ctl) {
    const StableParams sp = StableParams::make(sp_in.alpha, sp_in.gamma, sp_in.eta);
    if (!std::isfinite(x)) throw DomainError("stable_density: non-finite argument");
    double gamma = sp.gamma;
    if (x < 0.0) {  // mirror: p(x; gamma) = p(-x; -gamma)
        x = -x;
        gamma = -gamma;
    }
    const double alpha = sp.alpha;
    const double scale = std::pow(sp.eta, -1.0 / alpha);
    const double z = x * scale;

    auto finish = [&](EvalResult r) {
        r.value *= scale;
        r.abs_err *= scale;
        r.method = Method::Stable;
        return r;
    };
    auto try_series = [&](auto&& fn) -> std::optional<EvalResult> {
        try {
            EvalResult r = fn();
            if (r.abs_err <= kSeriesAcceptRel * std::abs(r.value)) return r;
        } catch (const NonConvergent&) {
        }
        return std::nullopt;
    };

    if (alpha < 1.0) {
        if (z == 0.0) {
            if (gamma == alpha) return finish({0.0, 0.0, Method::Series});
            throw DomainError("stable_density: x = 0 needs the one-sided case when alpha < 1");
        }
        if (auto r = try_series([&] { return stable_series_large(alpha, gamma, z, ctl); })) return finish(*r);
        return finish(stable_integral(alpha, gamma, z));
    }
    if (z <= kCrossover) {
        if (auto r = try_series([&] { return stable_series_small(alpha, gamma, z, ctl); })) return finish(*r);
        if (z == 0.0) return finish(stable_series_small(alpha, gamma, z, ctl));
        return finish(stable_integral(alpha, gamma, z));
    }
    if (!light_right_tail(alpha, gamma)) {
        if (auto r = try_series([&] { return stable_series_large(alpha, gamma, z, ctl); })) return finish(*r);
    }
    return finish(stable_integral(alpha, gamma, z));
}

double levy_half(double y, double c) {
    if (!(y > 0.0)) throw DomainError("levy_half: y must be positive");
    if (!(c > 0.0)) throw DomainError("levy_half: c must be positive");
    return c / std::numbers::sqrt2 * std::exp(-c * c / (4.0 * y)) / std::sqrt(2.0 * kPi * y * y * y);
}

}  // namespace fracdiff
