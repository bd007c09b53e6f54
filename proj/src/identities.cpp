#include "fracdiff/identities.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <nlohmann/json.hpp>

#include "fracdiff/processes.hpp"
#include "fracdiff/specfun.hpp"
#include "fracdiff/stable.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = std::numbers::pi;

double phi(double y, double var) { return std::exp(-y * y / (2.0 * var)) / std::sqrt(2.0 * kPi * var); }

// Inner densities are evaluated by a different route than the left-hand
// side (dispatcher), so an agreement is not a tautology.
double inner_density(Order nu, double lambda, double x, double t) {
    const FractionalParams p = FractionalParams::make(nu, lambda, t);
    if (has_closed_form(p)) return u_closed(p, x).value;
    return u_integral(p, x).value;
}

double lhs_density(const FractionalParams& p, double x) { return u_eval(p, x).value; }

QuadratureConfig outer_config() {
    QuadratureConfig q;
    q.rel_tol = 1e-9;
    q.abs_tol = 1e-12;
    return q;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string order_str(Order nu) { return nu.exact ? nu.exact->str() : fmt(nu.value); }

std::string probe_label(const Probe& p) { return "x=" + fmt(p.x) + " t=" + fmt(p.t); }

// Wynn's epsilon algorithm on a sequence of partial sums; returns the last
// diagonal estimate.
double wynn_epsilon(const std::vector<double>& s) {
    const std::size_t n = s.size();
    if (n < 3) return s.empty() ? 0.0 : s.back();
    std::vector<double> prev(n + 1, 0.0), cur(s.begin(), s.end());
    double best = s.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(n - k);
        bool ok = true;
        for (std::size_t i = 0; i + k < n; ++i) {
            const double d = cur[i + 1] - cur[i];
            if (d == 0.0) {
                ok = false;
                break;
            }
            next[i] = prev[i + 1] + 1.0 / d;
        }
        if (!ok) break;
        prev.assign(cur.begin() + 0, cur.end());
        cur = std::move(next);
        if (k % 2 == 0 && !cur.empty()) best = cur.back();
    }
    return best;
}

}  // namespace

// ---------------------------------------------------------------- report

void IdentityReport::add(std::string label, double lhs, double rhs) {
    points.push_back({std::move(label), lhs, rhs});
}

IdentityReport& IdentityReport::finish(double tol) {
    tolerance = tol;
    max_abs_discrepancy = 0.0;
    for (const auto& p : points) {
        const double d = std::abs(p.lhs - p.rhs);
        max_abs_discrepancy = std::isnan(d) ? d : std::max(max_abs_discrepancy, d);
        if (std::isnan(d)) break;
    }
    pass = !points.empty() && max_abs_discrepancy <= tolerance;
    return *this;
}

std::string IdentityReport::text() const {
    std::ostringstream os;
    os << std::left << std::setw(16) << name << ' ' << (pass ? "pass" : "FAIL") << "  max_abs="
       << std::scientific << std::setprecision(3) << max_abs_discrepancy << "  tol=" << tolerance
       << "  points=" << points.size() << "  [" << params << "]";
    if (!note.empty()) os << "  note: " << note;
    return os.str();
}

std::string IdentityReport::json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["params"] = params;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : points) pts.push_back({{"at", p.label}, {"lhs", p.lhs}, {"rhs", p.rhs}});
    j["points"] = pts;
    j["max_abs_discrepancy"] = max_abs_discrepancy;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    if (!note.empty()) j["note"] = note;
    return j.dump();
}

std::vector<Probe> default_points() {
    std::vector<Probe> out;
    for (double t : {0.5, 1.0, 2.0})
        for (double x : {0.0, 0.5, 1.0, 2.0}) out.push_back({x, t});
    return out;
}

// ---------------------------------------------------------------- Gaussian time

double gaussian_time_rhs(const FractionalParams& p, double x) {
    const double nu = p.nu, t = p.t;
    const Order inner = p.order().scaled(2, 1);
    // z = q^k cancels the z^{-nu} growth of the inner density at the origin
    const double k = 1.0 / (1.0 - nu);
    auto f = [&](double q) {
        if (q == 0.0) return 0.0;
        const double z = std::pow(q, k);
        if (!(z > 0.0)) return 0.0;
        return std::exp(-z * z / (4.0 * t)) * inner_density(inner, p.lambda, x, z) * k * std::pow(q, k - 1.0);
    };
    const double scale = 0.5 * std::pow(std::sqrt(t), 1.0 / k);
    return integrate_to_infinity(f, 0.0, scale, outer_config()).value / std::sqrt(kPi * t);
}

IdentityReport check_gaussian_time(Order nu, double lambda, const std::vector<Probe>& pts, double tol) {
    if (!(nu.value > 0.0 && nu.value < 1.0)) throw DomainError("gaussian-time: needs 0 < nu < 1");
    IdentityReport r;
    r.name = "gaussian-time";
    r.params = "nu=" + order_str(nu) + " lambda=" + fmt(lambda);
    for (const Probe& pr : pts) {
        const FractionalParams p = FractionalParams::make(nu, lambda, pr.t);
        r.add(probe_label(pr), lhs_density(p, pr.x), gaussian_time_rhs(p, pr.x));
    }
    return r.finish(tol);
}

// ---------------------------------------------------------------- Brownian space

double brownian_space_rhs(const FractionalParams& p, double x, double kernel_scale) {
    const Order inner = p.order().scaled(2, 1);
    // w = q^2 removes the w^{-1/2} of the kernel
    auto f = [&](double q) {
        if (q == 0.0) return 0.0;
        const double w = q * q;
        return phi(x, 2.0 * w * kernel_scale) * 2.0 * inner_density(inner, p.lambda, w, p.t) * 2.0 * q;
    };
    const double scale = 0.5 * std::sqrt(p.lambda * std::pow(p.t, p.nu));
    return integrate_to_infinity(f, 0.0, scale, outer_config()).value;
}

IdentityReport check_brownian_space(Order nu, double lambda, const std::vector<Probe>& pts, double tol) {
    if (nu.value >= 1.0) throw UnsupportedOrder("brownian-space: the inner order 2 nu = 2 is not a density");
    if (!(nu.value > 0.0)) throw DomainError("brownian-space: needs 0 < nu < 1");
    IdentityReport r;
    r.name = "brownian-space";
    r.params = "nu=" + order_str(nu) + " lambda=" + fmt(lambda);
    auto run = [&](double kscale) {
        r.points.clear();
        for (const Probe& pr : pts) {
            const FractionalParams p = FractionalParams::make(nu, lambda, pr.t);
            r.add(probe_label(pr), lhs_density(p, pr.x), brownian_space_rhs(p, pr.x, kscale));
        }
        return r.finish(tol);
    };
    run(lambda);
    r.note = "kernel variance 2 w lambda";
    if (r.max_abs_discrepancy > 1e-3) {
        const double first = r.max_abs_discrepancy;
        run(lambda * lambda);
        r.note = "kernel variance 2 w lambda missed by " + fmt(first) + "; retried with lambda^2";
    }
    return r;
}

// ---------------------------------------------------------------- nested Gaussian

double nested_gaussian_quadrature(int n, double x, double t) {
    if (n < 0 || n > 3) throw UnsupportedOrder("nested quadrature is limited to n <= 3");
    QuadratureConfig q;
    q.rel_tol = 1e-9;
    q.abs_tol = 1e-13;
    // g_n(x, t) = 2 int_0^inf phi(z; t) g_{n-1}(x, z) dz,  z = q^2
    std::function<double(int, double)> g = [&](int level, double time) -> double {
        if (level == 0) return phi(x, time);
        auto f = [&](double s) {
            if (s == 0.0) return 0.0;
            const double z = s * s;
            return 2.0 * phi(z, time) * g(level - 1, z) * 2.0 * s;
        };
        return integrate_to_infinity(f, 0.0, 0.5 * std::pow(time, 0.25), q).value;
    };
    return g(n, t);
}

namespace {

// G_k(y) = g_k(y, 1), tabulated on [0, 40].
class NestedTables {
public:
    double eval(int n, double y) {
        std::lock_guard<std::mutex> lock(mu_);
        build_to(n);
        if (n == 0) return phi(y, 1.0);
        y = std::abs(y);
        if (y >= kYmax) return 0.0;
        return std::max(0.0, tables_[n - 1](y));
    }

private:
    static constexpr double kYmax = 40.0;
    static constexpr int kNodes = 4001;

    double eval_unlocked(int k, double y) const {
        if (k == 0) return phi(y, 1.0);
        y = std::abs(y);
        if (y >= kYmax) return 0.0;
        return tables_[k - 1](y);
    }

    void build_to(int n) {
        QuadratureConfig q;
        q.rel_tol = 1e-10;
        q.abs_tol = 1e-14;
        const double h = kYmax / (kNodes - 1);
        while (static_cast<int>(tables_.size()) < n) {
            const int k = static_cast<int>(tables_.size()) + 1;
            const double a = std::ldexp(1.0, -k);
            std::vector<double> vals(kNodes);
            for (int i = 0; i < kNodes; ++i) {
                const double y = i * h;
                // z = s^2:  2 int phi(z;1) z^{-a} G_{k-1}(y z^{-a}) dz
                auto f = [&](double s) {
                    if (s == 0.0) return 0.0;
                    const double z = s * s;
                    const double za = std::pow(z, -a);
                    return 2.0 * phi(z, 1.0) * za * eval_unlocked(k - 1, y * za) * 2.0 * s;
                };
                vals[i] = integrate_to_infinity(f, 0.0, 0.5, q).value;
            }
            tables_.emplace_back(vals.begin(), vals.end(), 0.0, h);
        }
    }

    std::mutex mu_;
    std::vector<boost::math::interpolators::cardinal_cubic_b_spline<double>> tables_;
};

NestedTables& nested_tables() {
    static NestedTables t;
    return t;
}

}  // namespace

double nested_gaussian_recursive(int n, double x, double t) {
    if (n < 0 || n > 6) throw UnsupportedOrder("nested recursion is limited to n <= 6");
    if (!(t > 0.0)) throw DomainError("t must be positive");
    // g_n(x, t) = t^{-b} G_n(x t^{-b}),  b = 2^{-(n+1)}
    const double b = std::ldexp(1.0, -(n + 1));
    const double tb = std::pow(t, -b);
    return tb * nested_tables().eval(n, x * tb);
}

double nested_gaussian(int n, double x, double t) {
    if (n <= 3) return nested_gaussian_quadrature(n, x, t);
    return nested_gaussian_recursive(n, x, t);
}

IdentityReport check_nested_gaussian(int n, const std::vector<double>& xs, double t, double tol) {
    if (n < 1 || n > 6) throw UnsupportedOrder("nested-gaussian: 1 <= n <= 6");
    const FractionalParams p = iterated_params(n, t);
    IdentityReport r;
    r.name = "nested-gaussian";
    r.params = "n=" + std::to_string(n) + " nu=" + p.nu_exact->str() + " lambda=" + fmt(p.lambda) +
               " t=" + fmt(t) + (n <= 3 ? " nested quadrature" : " tabulated recursion");
    for (double x : xs) r.add("x=" + fmt(x), u_series(p, x).value, nested_gaussian(n, x, t));
    return r.finish(tol);
}

double bilateral_sup_distance(int n) {
    const FractionalParams p = iterated_params(n, 1.0);
    double d = 0.0;
    for (double x : standard_grid()) d = std::max(d, std::abs(u_eval(p, x).value - u_limit_bilateral(x)));
    return d;
}

// ---------------------------------------------------------------- triplication

double triplication_kernel_mass(double t) {
    const double c = 3.0 * std::sqrt(3.0 * t);
    QuadratureConfig q = outer_config();
    const double scale = 0.5 * std::cbrt(c);
    const double is = integrate_to_infinity([&](double s) { return s * std::exp(-s * s * s / c); }, 0.0, scale, q).value;
    const double iv = integrate_to_infinity([&](double v) { return std::exp(-v * v * v / c); }, 0.0, scale, q).value;
    return 3.0 / (2.0 * kPi * std::sqrt(t)) * is * iv;
}

double triplication_rhs(const FractionalParams& p, double x) {
    const double nu = p.nu, t = p.t;
    if (!(nu < 2.0 / 3.0)) throw UnsupportedOrder("triplication: needs nu < 2/3");
    const Order inner = p.order().scaled(3, 1);
    const double c = 3.0 * std::sqrt(3.0 * t);
    const double k = 1.0 / (1.0 - 1.5 * nu);  // v = q^k
    const double scale_s = 0.5 * std::cbrt(c);
    const double scale_q = 0.5 * std::pow(std::cbrt(c), 1.0 / k);
    QuadratureConfig qi;
    qi.rel_tol = 1e-9;
    qi.abs_tol = 1e-13;
    auto outer = [&](double q) {
        if (q == 0.0) return 0.0;
        const double v = std::pow(q, k);
        const double jac = k * std::pow(q, k - 1.0) * std::exp(-v * v * v / c);
        if (jac == 0.0) return 0.0;
        auto in = [&](double s) {
            if (s == 0.0) return 0.0;
            return s * std::exp(-s * s * s / c) * inner_density(inner, p.lambda, x, s * v);
        };
        return jac * integrate_to_infinity(in, 0.0, scale_s, qi).value;
    };
    return 3.0 / (2.0 * kPi * std::sqrt(t)) * integrate_to_infinity(outer, 0.0, scale_q, outer_config()).value;
}

IdentityReport check_triplication(Order nu, double lambda, const std::vector<Probe>& pts, double tol) {
    if (!(nu.value > 0.0)) throw DomainError("triplication: needs nu > 0");
    if (!(nu.value < 2.0 / 3.0)) throw UnsupportedOrder("triplication: needs nu < 2/3");
    IdentityReport r;
    r.name = "triplication";
    r.params = "nu=" + order_str(nu) + " lambda=" + fmt(lambda);
    for (const Probe& pr : pts) {
        const FractionalParams p = FractionalParams::make(nu, lambda, pr.t);
        r.add(probe_label(pr), lhs_density(p, pr.x), triplication_rhs(p, pr.x));
    }
    return r.finish(tol);
}

// ---------------------------------------------------------------- multiplication

// Kernel written through q_j with density m q^{j-1} e^{-q^m} / Gamma(j/m);
// the random time is m t^{1/m} q_1 ... q_{m-1}.
double multiplication_rhs(int m, const FractionalParams& p, double x) {
    if (m < 2) throw DomainError("multiplication: m >= 2");
    if (!(p.nu < 2.0 / m)) throw UnsupportedOrder("multiplication: needs nu < 2/m");
    const Order inner = p.order().scaled(m, 1);
    const double k = 1.0 / (1.0 - m * p.nu / 2.0);  // q_1 = r^k
    const double base = m * std::pow(p.t, 1.0 / m);
    QuadratureConfig q;
    q.rel_tol = 1e-9;
    q.abs_tol = 1e-13;
    std::function<double(int, double)> level = [&](int j, double prod) -> double {
        if (j == m) return inner_density(inner, p.lambda, x, base * prod);
        const double norm = m / std::tgamma(static_cast<double>(j) / m);
        auto f = [&](double r) {
            if (r == 0.0) return 0.0;
            double qj = r, jac = 1.0;
            if (j == 1) {
                qj = std::pow(r, k);
                jac = k * std::pow(r, k - 1.0);
            }
            const double w = norm * std::pow(qj, j - 1) * std::exp(-std::pow(qj, m));
            if (w == 0.0) return 0.0;
            return w * jac * level(j + 1, prod * qj);
        };
        return integrate_to_infinity(f, 0.0, 0.5, j == 1 ? outer_config() : q).value;
    };
    return level(1, 1.0);
}

IdentityReport check_multiplication(int m, Order nu, double lambda, const std::vector<Probe>& pts, double tol,
                                    long draws, std::uint64_t seed) {
    if (m < 2 || m > 4) throw UnsupportedOrder("multiplication: m in {2, 3, 4}");
    if (!(nu.value > 0.0 && nu.value < 2.0 / m)) throw UnsupportedOrder("multiplication: needs 0 < nu < 2/m");
    IdentityReport r;
    r.name = "multiplication";
    r.params = "m=" + std::to_string(m) + " nu=" + order_str(nu) + " lambda=" + fmt(lambda);
    if (m < 4) {
        for (const Probe& pr : pts) {
            const FractionalParams p = FractionalParams::make(nu, lambda, pr.t);
            r.add(probe_label(pr), lhs_density(p, pr.x), multiplication_rhs(m, p, pr.x));
        }
        return r.finish(tol);
    }
    // three-dimensional kernel: Monte Carlo over independent Gamma coordinates
    const Order inner = nu.scaled(m, 1);
    double worst_se = 0.0;
    std::uint64_t stream = 0;
    for (const Probe& pr : pts) {
        const FractionalParams p = FractionalParams::make(nu, lambda, pr.t);
        const double x = pr.x, t = pr.t;
        auto draw = [&](RngStream& rng) {
            double prod = 1.0;
            for (int j = 1; j < m; ++j) prod *= rng.gamma(static_cast<double>(j) / m);
            return inner_density(inner, lambda, x, m * std::pow(t * prod, 1.0 / m));
        };
        const std::vector<double> v = draw_samples(draws, seed, draw, stream);
        stream += static_cast<std::uint64_t>((draws + 4095) / 4096);
        double s1 = 0.0, s2 = 0.0;
        for (double d : v) {
            s1 += d;
            s2 += d * d;
        }
        const double n = static_cast<double>(v.size());
        const double mean = s1 / n;
        const double se = std::sqrt(std::max(0.0, s2 / n - mean * mean) / (n - 1.0));
        worst_se = std::max(worst_se, se);
        r.add(probe_label(pr), lhs_density(p, x), mean);
    }
    r.note = "Monte Carlo, " + std::to_string(draws) + " draws per point, seed " + std::to_string(seed) +
             "; tolerance is 3 standard errors";
    return r.finish(3.0 * worst_se);
}

// ---------------------------------------------------------------- stable time

double stable_time_rhs(const FractionalParams& p, double x) {
    const double nu = p.nu;
    if (nu == 1.0) throw UnsupportedOrder("stable-time: the order-1 stable law is excluded");
    if (!(nu > 0.5 && nu < 1.0)) throw DomainError("stable-time: needs 1/2 < nu < 1");
    const double alpha = 1.0 / nu;
    const StableParams sp = StableParams::make(alpha, 2.0 - alpha, std::pow(p.lambda, 1.0 / nu) * p.t);
    auto f = [&](double q) {
        if (q == 0.0) return 0.0;
        const double w = q * q;
        return phi(x, 2.0 * w * p.lambda) * stable_density(sp, w).value * 2.0 * q;
    };
    const double scale = 0.5 * std::sqrt(p.lambda * std::pow(p.t, nu));
    return integrate_to_infinity(f, 0.0, scale, outer_config()).value / nu;
}

IdentityReport check_stable_time(Order nu, double lambda, const std::vector<Probe>& pts, double tol) {
    IdentityReport r;
    r.name = "stable-time";
    r.params = "nu=" + order_str(nu) + " lambda=" + fmt(lambda);
    for (const Probe& pr : pts) {
        const FractionalParams p = FractionalParams::make(nu, lambda, pr.t);
        r.add(probe_label(pr), lhs_density(p, pr.x), stable_time_rhs(p, pr.x));
    }
    return r.finish(tol);
}

// ---------------------------------------------------------------- Airy / McKean

double mckean_density(double s) {
    if (!(s > 0.0)) throw DomainError("mckean_density: s must be positive");
    return 3.0 / (2.0 * kPi) * std::pow(s, 1.5) / (1.0 + s * s * s);
}

double mckean_mass() {
    // [0,1] with s = v^2, [1,inf) with s = 1/v^2
    QuadratureConfig q;
    q.rel_tol = 1e-14;
    q.abs_tol = 1e-15;
    auto head = [](double v) { return 3.0 / kPi * std::pow(v, 4) / (1.0 + std::pow(v, 6)); };
    auto tail = [](double v) { return 3.0 / kPi / (1.0 + std::pow(v, 6)); };
    return integrate(head, 0.0, 1.0, q).value + integrate(tail, 0.0, 1.0, q).value;
}

double airy_mckean_rhs(double y) {
    y = std::abs(y);
    if (y > 6.0) throw DomainError("airy-mckean: |y| <= 6");
    if (y == 0.0) return airy_ai(0.0).value * mckean_mass();
    QuadratureConfig q;
    q.rel_tol = 1e-12;
    q.abs_tol = 1e-15;
    auto f = [&](double s) { return s == 0.0 ? 0.0 : mckean_density(s) * airy_ai(-y * s).value; };
    // split at the approximate zeros of Ai(-y s); each piece has one sign
    auto zero = [&](int k) { return std::pow(3.0 * kPi * (4.0 * k - 1.0) / 8.0, 2.0 / 3.0) / y; };
    double sum = integrate(f, 0.0, zero(1), q, 4).value;
    std::vector<double> partial;
    for (int k = 1; k <= 80; ++k) {
        sum += integrate(f, zero(k), zero(k + 1), q, 2).value;
        partial.push_back(sum);
    }
    return wynn_epsilon(partial);
}

IdentityReport check_airy_mckean(const std::vector<double>& ys, double tol) {
    IdentityReport r;
    r.name = "airy-mckean";
    r.params = "McKean mass=" + fmt(mckean_mass());
    for (double y : ys) r.add("y=" + fmt(y), airy_ai(std::abs(y)).value, airy_mckean_rhs(y));
    return r.finish(tol);
}

// ---------------------------------------------------------------- transforms

double fourier_numeric(const FractionalParams& p, double beta) {
    QuadratureConfig q;
    q.rel_tol = 1e-10;
    q.abs_tol = 1e-12;
    auto f = [&](double x) { return std::cos(beta * x) * u_eval(p, x).value; };
    return 2.0 * integrate_to_infinity(f, 0.0, p.scale(), q).value;
}

IdentityReport check_fourier(Order nu, double lambda, const std::vector<double>& betas, double t, double tol) {
    const FractionalParams p = FractionalParams::make(nu, lambda, t);
    IdentityReport r;
    r.name = "fourier";
    r.params = "nu=" + order_str(nu) + " lambda=" + fmt(lambda) + " t=" + fmt(t);
    for (double b : betas) {
        const double ml = mittag_leffler(p.nu, -b * b * lambda * lambda * std::pow(t, p.nu)).value;
        r.add("beta=" + fmt(b), fourier_numeric(p, b), ml);
    }
    return r.finish(tol);
}

double laplace_fourier(double nu, double lambda, double s, double beta) {
    if (!(s > 0.0)) throw DomainError("laplace_fourier: s must be positive");
    if (!(nu > 0.0)) throw DomainError("laplace_fourier: nu must be positive");
    return std::pow(s, nu - 1.0) / (std::pow(s, nu) + lambda * lambda * beta * beta);
}

double laplace_fourier_numeric(double nu, double lambda, double s, double beta) {
    if (!(s > 0.0)) throw DomainError("laplace_fourier: s must be positive");
    QuadratureConfig q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-13;
    const double c = beta * beta * lambda * lambda;
    // t = u^2 smooths the t^nu start of the Mittag-Leffler factor
    auto f = [&](double u) {
        const double t = u * u;
        return std::exp(-s * t) * mittag_leffler(nu, -c * std::pow(t, nu)).value * 2.0 * u;
    };
    return integrate_to_infinity(f, 0.0, 0.5 / std::sqrt(s), q).value;
}

IdentityReport check_laplace_fourier(double nu, double lambda, const std::vector<std::pair<double, double>>& s_beta,
                                     double tol) {
    IdentityReport r;
    r.name = "laplace-fourier";
    r.params = "nu=" + fmt(nu) + " lambda=" + fmt(lambda);
    for (const auto& [s, b] : s_beta)
        r.add("s=" + fmt(s) + " beta=" + fmt(b), laplace_fourier(nu, lambda, s, b),
              laplace_fourier_numeric(nu, lambda, s, b));
    return r.finish(tol);
}

// ---------------------------------------------------------------- suites

std::vector<std::string> identity_names() {
    return {"gaussian-time", "brownian-space", "nested-gaussian", "triplication", "multiplication",
            "stable-time",   "airy-mckean",    "fourier",         "laplace-fourier"};
}

std::vector<IdentityReport> run_identity(const std::string& name, bool fast) {
    const std::vector<Probe> pts =
        fast ? std::vector<Probe>{{0.0, 1.0}, {1.0, 1.0}, {2.0, 0.5}} : default_points();
    const Rational third = Rational::make(1, 3), half = Rational::make(1, 2);
    std::vector<IdentityReport> out;
    if (name == "gaussian-time") {
        for (Order nu : {Order(third), Order(half), Order(0.9)}) out.push_back(check_gaussian_time(nu, 1.0, pts));
    } else if (name == "brownian-space") {
        for (Order nu : {Order(0.4), Order(half)}) out.push_back(check_brownian_space(nu, 1.0, pts));
    } else if (name == "nested-gaussian") {
        out.push_back(check_nested_gaussian(1, {0.0, 0.5, 1.0}, 1.0));
        out.push_back(check_nested_gaussian(2, {0.0, 0.5, 1.0}, 1.0));
        if (!fast) out.push_back(check_nested_gaussian(4, {0.0, 0.5, 1.0}, 1.0));
    } else if (name == "triplication") {
        for (Order nu : {Order(third), Order(Rational::make(2, 9))}) out.push_back(check_triplication(nu, 1.0, pts));
    } else if (name == "multiplication") {
        out.push_back(check_multiplication(2, Order(half), 1.0, pts));
        out.push_back(check_multiplication(3, Order(third), 1.0, pts));
        if (!fast) out.push_back(check_multiplication(4, Order(Rational::make(1, 4)), 1.0, {{0.0, 1.0}}));
    } else if (name == "stable-time") {
        for (Order nu : {Order(0.6), Order(0.75)}) out.push_back(check_stable_time(nu, 1.0, pts));
    } else if (name == "airy-mckean") {
        out.push_back(check_airy_mckean({0.5, 1.0, 2.0, 3.0}));
    } else if (name == "fourier") {
        for (Order nu : {Order(half), Order(Rational::make(1, 1)), Order(Rational::make(3, 2))})
            out.push_back(check_fourier(nu, 1.0, {0.5, 1.0, 2.0}, 1.0));
    } else if (name == "laplace-fourier") {
        std::vector<std::pair<double, double>> sb;
        for (double s : {0.5, 1.0, 2.0})
            for (double b : {0.5, 1.5, 3.0}) sb.emplace_back(s, b);
        out.push_back(check_laplace_fourier(0.6, 1.0, sb));
    } else if (name == "all") {
        for (const auto& n : identity_names()) {
            auto part = run_identity(n, fast);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else {
        throw DomainError("unknown identity '" + name + "'");
    }
    return out;
}

}  // namespace fracdiff
