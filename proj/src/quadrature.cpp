#include "fracdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fracdiff/types.hpp"

namespace fracdiff {

namespace {

// Kronrod 21-point rule with embedded 10-point Gauss rule (QUADPACK qk21).
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478926, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1,3,5,7,9.
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, err, l1;
    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk21(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(fc) * kWgk[10];
    double fv1[10], fv2[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    // QUADPACK's error scaling
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * h, err, resabs};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0))
        throw DomainError("quadrature tolerances must lie in (0,1)");
    if (max_subdivisions < 10) throw DomainError("max_subdivisions must be >= 10");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const {
    QuadratureConfig q = *this;
    q.rel_tol *= factor;
    q.abs_tol *= factor;
    return q;
}

QuadResult integrate(const RealFn& f, double a, double b, const QuadratureConfig& cfg,
                     int initial_panels) {
    QuadResult out;
    if (a == b) return out;
    initial_panels = std::max(1, initial_panels);

    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0, total_l1 = 0.0;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
        Segment s = gk21(f, lo, hi);
        total += s.value;
        total_err += s.err;
        total_l1 += s.l1;
        heap.push(s);
    }
    long evals = 21L * initial_panels;
    const double eps = std::numeric_limits<double>::epsilon();

    auto target = [&] {
        return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(total), 100.0 * eps * total_l1});
    };

    int splits = 0;
    while (total_err > target()) {
        if (splits >= cfg.max_subdivisions) {
            std::ostringstream msg;
            msg << "adaptive quadrature on [" << a << ", " << b << "] stopped at "
                << splits << " subdivisions with error estimate " << total_err;
            throw QuadratureFailure(msg.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
            // interval can no longer be split in floating point
            throw QuadratureFailure("quadrature interval collapsed below machine resolution");
        }
        Segment left = gk21(f, worst.a, mid);
        Segment right = gk21(f, mid, worst.b);
        evals += 42;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        ++splits;
        if (!std::isfinite(total)) throw QuadratureFailure("non-finite integrand value");
    }
    // re-sum to limit drift from incremental updates
    double v = 0.0, e = 0.0, l = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().err;
        l += heap.top().l1;
        heap.pop();
    }
    out.value = v;
    out.abs_err = e;
    out.l1 = l;
    out.evaluations = evals;
    if (!std::isfinite(v)) throw QuadratureFailure("non-finite integral");
    return out;
}

QuadResult integrate_to_infinity(const RealFn& f, double a, double scale,
                                 const QuadratureConfig& cfg) {
    if (!(scale > 0.0)) throw DomainError("integrate_to_infinity: scale must be positive");
    QuadResult out;
    double lo = a;
    double h = scale;
    int quiet = 0;
    constexpr int kMinPanels = 6;
    constexpr int kMaxPanels = 200;
    for (int panel = 0; panel < kMaxPanels; ++panel) {
        const double hi = lo + h;
        QuadResult piece = integrate(f, lo, hi, cfg, 2);
        out.value += piece.value;
        out.abs_err += piece.abs_err;
        out.l1 += piece.l1;
        out.evaluations += piece.evaluations;
        const double negligible =
            cfg.tail_factor * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
        quiet = (piece.l1 <= negligible) ? quiet + 1 : 0;
        if (panel + 1 >= kMinPanels && quiet >= 2) return out;
        lo = hi;
        h *= 2.0;
        if (!std::isfinite(lo)) break;
    }
    throw QuadratureFailure("semi-infinite quadrature: integrand does not decay");
}

}  // namespace fracdiff
