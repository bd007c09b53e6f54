#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracdiff/quadrature.hpp"
#include "fracdiff/types.hpp"

namespace fracdiff {

// Exact fraction, kept so that named orders (1, 2/3, 4/3, 1/2^n, 2/3^n)
// dispatch to closed forms without comparing doubles.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);  // normalised, den > 0
    // "2/3", "1", "-1/4".  Empty optional for anything else (e.g. "0.3").
    static std::optional<Rational> parse(std::string_view text);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    Rational times(long long p, long long q) const;
    std::string str() const;
    bool operator==(const Rational&) const = default;
};

// An order that may or may not carry an exact tag.
struct Order {
    double value = 1.0;
    std::optional<Rational> exact;

    Order() = default;
    Order(double v) : value(v) {}  // NOLINT: implicit on purpose
    Order(Rational r) : value(r.value()), exact(r) {}  // NOLINT
    Order scaled(long long p, long long q) const;
    bool is(long long p, long long q) const;
    static Order parse(std::string_view text);  // rational if possible, else decimal
};

struct FractionalParams {
    double nu = 1.0;
    double lambda = 1.0;
    double t = 1.0;
    std::optional<Rational> nu_exact;

    // Validates 0 < nu < 2, lambda > 0, t > 0 (DomainError otherwise).
    static FractionalParams make(Order nu, double lambda, double t);

    bool order_is(long long p, long long q) const;
    Order order() const;
    // lambda * t^{nu/2}: the length scale of the reduced variable.
    double scale() const;
    double reduced(double x) const;  // |x| / scale()
};

// Reduced argument beyond which the series is not attempted.
inline constexpr double kSeriesWindow = 10.0;

EvalResult u_series(const FractionalParams& p, double x, const SeriesControl& ctl = {});
EvalResult u_integral(const FractionalParams& p, double x, const QuadratureConfig& q = {});
EvalResult u_integral_byparts(const FractionalParams& p, double x, const QuadratureConfig& q = {});
EvalResult u_closed(const FractionalParams& p, double x, const QuadratureConfig& q = {});
// First stable representation (unit scale, argument transported).
EvalResult u_stable(const FractionalParams& p, double x);
// Second form for nu <= 1: stable density with scale 1/(lambda t^{nu/2}).
// At nu = 1 the first form falls back to the one-sided 1/2-stable law in closed form.
EvalResult u_stable_scaled(const FractionalParams& p, double x);
double u_origin(const FractionalParams& p);
double u_mode(const FractionalParams& p);
double u_limit_bilateral(double x);

bool has_closed_form(const FractionalParams& p);

// ClosedForm -> Series (reduced arg <= window) -> IntegralByParts (x != 0)
// -> Integral.
EvalResult u_eval(const FractionalParams& p, double x);

struct MethodOutcome {
    Method method;
    bool applicable = false;
    EvalResult result;
    std::string reason;  // why not applicable
};

// Every representation at one point; those that refuse (window, domain,
// precision loss) are reported with applicable = false.
std::vector<MethodOutcome> u_all_methods(const FractionalParams& p, double x);

// 2 * int_0^inf u dx with the dispatcher.
QuadResult u_total_mass(const FractionalParams& p, const QuadratureConfig& q = {});

// 41 points on [-5, 5].
std::vector<double> standard_grid();

}  // namespace fracdiff
