#include "fracdiff/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "fracdiff/density.hpp"
#include "fracdiff/identities.hpp"
#include "fracdiff/processes.hpp"

#ifndef FRACDIFF_VERSION
#define FRACDIFF_VERSION "0.0.0"
#endif

namespace fracdiff::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Runs f(i) for i in [0, n) on the worker pool; results are stored by index
// so output order never depends on scheduling.  The first exception wins.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const int threads = static_cast<int>(std::min<std::size_t>(worker_threads(), std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

// Failure at a specific point of a table.
struct PointFailure : Error {
    PointFailure(const std::string& where, const std::string& what) : Error(where + ": " + what) {}
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
    std::ostream& stream() { return buf_; }
    void commit() {
        if (path_.empty()) {
            fallback_ << buf_.str();
            fallback_.flush();
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw UsageError("cannot open output file '" + path_ + "'");
        f << buf_.str();
    }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ostringstream buf_;
};

struct Common {
    std::string command_line;
    std::string out_path;
    std::string format = "csv";
};

void csv_header(std::ostream& os, const Common& c, const std::vector<std::pair<std::string, std::string>>& meta) {
    os << "# fracdiff " << FRACDIFF_VERSION << "\n";
    os << "# command: " << c.command_line << "\n";
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
}

json json_meta(const Common& c) {
    return json{{"version", FRACDIFF_VERSION}, {"command", c.command_line}};
}

FractionalParams make_params(const std::string& nu_text, double lambda, double t) {
    Order nu;
    try {
        nu = Order::parse(nu_text);
    } catch (const std::exception&) {
        throw UsageError("cannot parse --nu '" + nu_text + "'");
    }
    try {
        return FractionalParams::make(nu, lambda, t);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

// Integral of a half-line density between consecutive grid nodes; q^2
// substitution tames an inverse square root at the origin.
std::vector<double> running_mass(const std::function<double(double)>& f, const std::vector<double>& xs) {
    QuadratureConfig q;
    q.rel_tol = 1e-10;
    q.abs_tol = 1e-13;
    auto g = [&](double s) { return s == 0.0 ? 0.0 : f(s * s) * 2.0 * s; };
    std::vector<double> pieces(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const double a = i == 0 ? 0.0 : std::sqrt(std::max(0.0, xs[i - 1]));
        pieces[i] = integrate(g, a, std::sqrt(std::max(0.0, xs[i])), q).value;
    });
    std::vector<double> out(xs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = acc += pieces[i];
    return out;
}

double half_line_mass(const std::function<double(double)>& f, double scale) {
    QuadratureConfig q;
    q.rel_tol = 1e-10;
    q.abs_tol = 1e-13;
    auto g = [&](double s) { return s == 0.0 ? 0.0 : f(s * s) * 2.0 * s; };
    return integrate_to_infinity(g, 0.0, scale, q).value;
}

// ---------------------------------------------------------------- density

int cmd_density(const Common& c, const std::string& nu_text, double lambda, double t, const std::string& grid_text,
                std::ostream& out) {
    const FractionalParams p = make_params(nu_text, lambda, t);
    GridSpec grid;
    try {
        grid = GridSpec::parse(grid_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::vector<double> xs = grid.points();
    std::vector<EvalResult> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        try {
            rows[i] = u_eval(p, xs[i]);
        } catch (const Error& e) {
            throw PointFailure("x=" + num(xs[i]), e.what());
        }
    });
    const double mode = u_mode(p);
    Output o(c.out_path, out);
    if (c.format == "json") {
        json j;
        j["meta"] = json_meta(c);
        j["nu"] = p.nu_exact ? json(p.nu_exact->str()) : json(p.nu);
        j["lambda"] = lambda;
        j["t"] = t;
        j["mode"] = mode;
        json arr = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i)
            arr.push_back({{"x", xs[i]}, {"value", rows[i].value}, {"abs_err", rows[i].abs_err},
                           {"method", method_name(rows[i].method)}});
        j["rows"] = arr;
        o.stream() << j.dump(2) << "\n";
    } else {
        csv_header(o.stream(), c,
                   {{"nu", p.nu_exact ? p.nu_exact->str() : num(p.nu)}, {"lambda", num(lambda)}, {"t", num(t)},
                    {"mode", num(mode)}});
        o.stream() << "x,value,abs_err,method\n";
        for (std::size_t i = 0; i < xs.size(); ++i)
            o.stream() << num(xs[i]) << ',' << num(rows[i].value) << ',' << num(rows[i].abs_err) << ','
                       << method_name(rows[i].method) << "\n";
    }
    o.commit();
    return kOk;
}

// ---------------------------------------------------------------- verify

std::vector<IdentityReport> reports_for(const std::string& name, bool fast, const std::optional<std::string>& nu_text,
                                        double lambda, int m, std::optional<double> tol) {
    const std::vector<Probe> pts = fast ? std::vector<Probe>{{0.0, 1.0}, {1.0, 1.0}, {2.0, 0.5}} : default_points();
    std::vector<IdentityReport> reps;
    if (nu_text) {
        Order nu;
        try {
            nu = Order::parse(*nu_text);
        } catch (const std::exception&) {
            throw UsageError("cannot parse --nu '" + *nu_text + "'");
        }
        const double tl = tol.value_or(kIdentityTol);
        if (name == "gaussian-time") reps.push_back(check_gaussian_time(nu, lambda, pts, tl));
        else if (name == "brownian-space") reps.push_back(check_brownian_space(nu, lambda, pts, tl));
        else if (name == "triplication") reps.push_back(check_triplication(nu, lambda, pts, tl));
        else if (name == "stable-time") reps.push_back(check_stable_time(nu, lambda, pts, tl));
        else if (name == "multiplication")
            reps.push_back(m == 4 ? check_multiplication(m, nu, lambda, {{0.0, 1.0}}, tl)
                                  : check_multiplication(m, nu, lambda, pts, tl));
        else if (name == "fourier") reps.push_back(check_fourier(nu, lambda, {0.5, 1.0, 2.0}, 1.0, tl));
        else if (name == "laplace-fourier") {
            std::vector<std::pair<double, double>> sb;
            for (double s : {0.5, 1.0, 2.0})
                for (double b : {0.5, 1.5, 3.0}) sb.emplace_back(s, b);
            reps.push_back(check_laplace_fourier(nu.value, lambda, sb, tol.value_or(1e-6)));
        } else
            throw UsageError("identity '" + name + "' does not take --nu");
        return reps;
    }
    reps = run_identity(name, fast);
    if (tol)
        for (auto& r : reps)
            if (r.note.find("Monte Carlo") == std::string::npos) r.finish(*tol);
    return reps;
}

int cmd_verify(const Common& c, const std::string& identity, bool fast, const std::optional<std::string>& nu_text,
               double lambda, int m, std::optional<double> tol, std::ostream& out) {
    const std::vector<std::string> names = identity_names();
    if (identity != "all" && std::find(names.begin(), names.end(), identity) == names.end())
        throw UsageError("unknown identity '" + identity + "'");
    if (identity == "all" && nu_text) throw UsageError("--nu needs a single named identity");

    std::vector<std::string> todo = identity == "all" ? names : std::vector<std::string>{identity};
    std::vector<std::vector<IdentityReport>> parts(todo.size());
    parallel_for(todo.size(), [&](std::size_t i) {
        try {
            parts[i] = reports_for(todo[i], fast, nu_text, lambda, m, tol);
        } catch (const UnsupportedOrder& e) {
            throw UsageError(e.what());
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    });

    std::vector<IdentityReport> reps;
    for (auto& p : parts) reps.insert(reps.end(), p.begin(), p.end());
    bool ok = std::all_of(reps.begin(), reps.end(), [](const IdentityReport& r) { return r.pass; });

    // Distance of the iterated-BM marginal to the bilateral exponential limit.
    json trend;
    const bool want_trend = !nu_text && (identity == "nested-gaussian" || (identity == "all" && !fast));
    if (want_trend) {
        std::vector<double> d(5);
        parallel_for(5, [&](std::size_t i) { d[i] = bilateral_sup_distance(static_cast<int>(i) + 1); });
        bool dec = true;
        for (int i = 1; i < 5; ++i) dec = dec && d[i] < d[i - 1];
        const bool small = d[4] < 0.05;
        trend = {{"n", {1, 2, 3, 4, 5}}, {"sup_distance", d}, {"strictly_decreasing", dec},
                 {"threshold_at_5", 0.05}, {"pass", dec && small}};
        ok = ok && dec && small;
    }

    Output o(c.out_path, out);
    if (c.format == "text") {
        o.stream() << "# fracdiff " << FRACDIFF_VERSION << "\n# command: " << c.command_line << "\n";
        for (const auto& r : reps) o.stream() << r.text() << "\n";
        if (want_trend) {
            o.stream() << "bilateral-limit  " << (trend["pass"].get<bool>() ? "pass" : "FAIL") << "  sup distance n=1..5:";
            for (double v : trend["sup_distance"]) o.stream() << ' ' << num(v);
            o.stream() << "\n";
        }
        o.stream() << (ok ? "all pass" : "FAILURES") << "\n";
    } else {
        json j;
        j["meta"] = json_meta(c);
        json arr = json::array();
        for (const auto& r : reps) arr.push_back(json::parse(r.json()));
        j["reports"] = arr;
        if (want_trend) j["bilateral_trend"] = trend;
        j["all_pass"] = ok;
        o.stream() << j.dump(2) << "\n";
    }
    o.commit();
    return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- simulate

struct SimCheck {
    std::string label;
    McSummary summary;
    double second_moment_expected = 0.0;
    bool ks = true;  // whether a KS comparison is part of the verdict
};

json check_json(const SimCheck& s, double ks_level, bool& ok) {
    const double z = s.summary.second_moment_se > 0.0
                         ? (s.summary.second_moment - s.second_moment_expected) / s.summary.second_moment_se
                         : 0.0;
    const bool mom = std::abs(z) <= 4.0;
    const bool ks = !s.ks || s.summary.ks_pass(ks_level);
    ok = ok && mom && ks;
    json j = json::parse(s.summary.json());
    j["target"] = s.label;
    j["second_moment_expected"] = s.second_moment_expected;
    j["second_moment_z"] = z;
    j["moment_pass"] = mom;
    if (s.ks) {
        j["ks_level"] = ks_level;
        j["ks_pass"] = ks;
    }
    return j;
}

double fractional_second_moment(double nu, double lambda, double t) {
    return 2.0 * lambda * lambda * std::pow(t, nu) / std::tgamma(nu + 1.0);
}

TabulatedCdf fractional_cdf(const FractionalParams& p) {
    const double xmax = 40.0 * p.scale();
    return TabulatedCdf([p](double x) { return u_eval(p, x).value; }, xmax, 4000, TabulatedCdf::Kind::Symmetric);
}

int cmd_simulate(const Common& c, const std::string& process, const std::string& kind, int n, double t,
                 double lambda, long samples, std::uint64_t seed, const std::string& dump, std::ostream& out) {
    static const std::vector<std::string> kinds = {"iterated", "g-vector", "composed", "airy", "multivariate"};
    if (std::find(kinds.begin(), kinds.end(), process) == kinds.end())
        throw UsageError("unknown process '" + process + "'");
    if (samples < 100) throw UsageError("--samples must be at least 100");
    if (!(t > 0.0) || !(lambda > 0.0)) throw UsageError("--t and --lambda must be positive");

    std::vector<SimCheck> checks;
    std::vector<std::vector<double>> columns;
    std::vector<std::string> column_names;
    json extra;

    if (process == "iterated") {
        if (n < 0 || n > 6) throw UsageError("--n must be in 0..6 for the iterated process");
        auto v = draw_samples(samples, seed, [&](RngStream& r) { return sample_iterated_terminal(n, t, r); });
        const TabulatedCdf cdf = iterated_terminal_cdf(n, t);
        checks.push_back({"u_{1/2^" + std::to_string(n) + "}", mc_compare(v, std::cref(cdf), seed), even_moment(n, 1, t)});
        columns.push_back(std::move(v));
        column_names.push_back("x");
    } else if (process == "g-vector") {
        if (n < 2 || n > 8) throw UsageError("--n must be in 2..8 for the g-vector");
        const double cc = std::pow(std::pow(static_cast<double>(n), n) * t, 1.0 / (n - 1));
        for (int j = 1; j < n; ++j) {
            // same seed and streams: coordinate j of the same vectors
            auto v = draw_samples(samples, seed, [&](RngStream& r) { return sample_g_vector(n, t, r).w[j - 1]; });
            const double a = static_cast<double>(j) / n;
            auto cdf = [&](double w) { return w <= 0.0 ? 0.0 : boost::math::gamma_p(a, std::pow(w, n) / cc); };
            const double m2 = std::pow(cc, 2.0 / n) * std::tgamma(a + 2.0 / n) / std::tgamma(a);
            checks.push_back({"w_" + std::to_string(j) + ": w^n/c ~ Gamma(" + std::to_string(j) + "/" +
                                  std::to_string(n) + ")",
                              mc_compare(v, std::cref(cdf), seed), m2});
            columns.push_back(std::move(v));
            column_names.push_back("w" + std::to_string(j));
        }
    } else if (process == "composed") {
        ComposedKind ck;
        Order target;
        if (kind == "brownian-outer") {
            ck = ComposedKind::BrownianOuter;
            target = Order(Rational::make(1, 3));
        } else if (kind == "airy-outer") {
            ck = ComposedKind::AiryOuter;
            target = Order(Rational::make(2, 9));
        } else {
            throw UsageError("--kind must be brownian-outer or airy-outer");
        }
        auto v = draw_samples(samples, seed, [&](RngStream& r) { return sample_composed(ck, 3, t, r, lambda); });
        const FractionalParams p = FractionalParams::make(target, lambda, t);
        const TabulatedCdf cdf = fractional_cdf(p);
        checks.push_back({"u_{" + target.exact->str() + "}", mc_compare(v, std::cref(cdf), seed),
                          fractional_second_moment(p.nu, lambda, t)});
        columns.push_back(std::move(v));
        column_names.push_back("x");
    } else if (process == "airy") {
        auto v = draw_samples(samples, seed, [&](RngStream& r) { return sample_airy_marginal(lambda, t, r); });
        const FractionalParams p = FractionalParams::make(Order(Rational::make(2, 3)), lambda, t);
        const TabulatedCdf cdf = fractional_cdf(p);
        checks.push_back({"u_{2/3}", mc_compare(v, std::cref(cdf), seed), fractional_second_moment(p.nu, lambda, t)});
        columns.push_back(std::move(v));
        column_names.push_back("x");
    } else {
        const int k = n < 1 ? 2 : n;
        if (k > 16) throw UsageError("--n (dimension) must be in 1..16 for the multivariate process");
        const FractionalParams p = FractionalParams::make(Order(Rational::make(1, 2)), lambda, t);
        const TabulatedCdf cdf = fractional_cdf(p);
        for (int j = 0; j < k; ++j) {
            auto v = draw_samples(samples, seed,
                                  [&](RngStream& r) { return sample_multivariate_common_time(k, lambda, t, r)[j]; });
            checks.push_back({"coordinate " + std::to_string(j + 1) + ": u_{1/2}", mc_compare(v, std::cref(cdf), seed),
                              fractional_second_moment(0.5, lambda, t)});
            columns.push_back(std::move(v));
            column_names.push_back("x" + std::to_string(j + 1));
        }
        if (k >= 2) {
            // shared clock: E[X_1^2 X_2^2] = E[clock^2] = 8 lambda^4 t
            double s = 0.0, s2 = 0.0;
            const auto& a = columns[0];
            const auto& b = columns[1];
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double q = a[i] * a[i] * b[i] * b[i];
                s += q;
                s2 += q * q;
            }
            const double nn = static_cast<double>(a.size());
            const double mean = s / nn;
            const double se = std::sqrt(std::max(0.0, s2 / nn - mean * mean) / (nn - 1.0));
            const double expect = 8.0 * std::pow(lambda, 4) * t;
            extra = {{"cross_moment", mean}, {"cross_moment_expected", expect}, {"cross_moment_se", se},
                     {"cross_moment_pass", std::abs(mean - expect) <= 4.0 * se}};
        }
    }

    bool ok = true;
    json j;
    j["meta"] = json_meta(c);
    j["process"] = process;
    if (process == "composed") j["kind"] = kind;
    j["n"] = n;
    j["t"] = t;
    j["lambda"] = lambda;
    j["samples"] = samples;
    j["seed"] = seed;
    json arr = json::array();
    for (const auto& s : checks) arr.push_back(check_json(s, 0.01, ok));
    j["checks"] = arr;
    if (!extra.is_null()) {
        j["shared_clock"] = extra;
        ok = ok && extra["cross_moment_pass"].get<bool>();
    }
    j["pass"] = ok;

    if (!dump.empty()) {
        std::ofstream f(dump, std::ios::binary);
        if (!f) throw UsageError("cannot open dump file '" + dump + "'");
        f << "# fracdiff " << FRACDIFF_VERSION << "\n# command: " << c.command_line << "\n# seed: " << seed
          << "\n";
        for (std::size_t k = 0; k < column_names.size(); ++k) f << (k ? "," : "") << column_names[k];
        f << "\n";
        for (std::size_t i = 0; i < columns[0].size(); ++i) {
            for (std::size_t k = 0; k < columns.size(); ++k) f << (k ? "," : "") << num(columns[k][i]);
            f << "\n";
        }
    }
    Output o(c.out_path, out);
    o.stream() << j.dump(2) << "\n";
    o.commit();
    return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- functionals

int cmd_functionals(const Common& c, const std::string& which, int n, const std::string& k_text, double t,
                    const std::string& grid_text, std::ostream& out) {
    if (!(t > 0.0)) throw UsageError("--t must be positive");
    Output o(c.out_path, out);
    if (which == "moments") {
        std::pair<int, int> kr;
        try {
            kr = parse_int_range(k_text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (kr.first < 1 || kr.second < kr.first) throw UsageError("--k must be a range a..b with 1 <= a <= b");
        if (n < 0 || n > 10) throw UsageError("--n must be in 0..10");
        const FractionalParams p = iterated_params(n, t);
        const int count = kr.second - kr.first + 1;
        std::vector<double> closed(count), quad(count);
        parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
            const int k = kr.first + static_cast<int>(i);
            closed[i] = even_moment(n, k, t);
            QuadratureConfig q;
            q.rel_tol = 1e-10;
            q.abs_tol = 1e-13 * std::max(1.0, closed[i]);
            // the tail carries the weight; the stable route keeps relative accuracy there
            auto dens = [&](double x) {
                if (p.nu < 1.0 && p.reduced(x) > kSeriesWindow) return u_stable(p, x);
                return u_eval(p, x);
            };
            auto f = [&](double x) { return std::pow(x, 2 * k) * dens(x).value; };
            // far-tail values of the density are quadrature noise, amplified
            // by x^{2k}; stop where the integrand is negligible
            double cut = p.scale();
            for (; cut < 200.0 * p.scale(); cut += p.scale()) {
                const EvalResult u = dens(cut);
                if (std::abs(u.value) <= 10.0 * u.abs_err) break;
                if (std::abs(u.value) * std::pow(cut, 2 * k + 1) < 1e-17 * closed[i]) break;
            }
            quad[i] = 2.0 * integrate(f, 0.0, cut, q, 16).value;
        });
        csv_header(o.stream(), c, {{"n", std::to_string(n)}, {"t", num(t)}});
        o.stream() << "k,moment,quadrature\n";
        for (int i = 0; i < count; ++i)
            o.stream() << (kr.first + i) << ',' << num(closed[i]) << ',' << num(quad[i]) << "\n";
        o.commit();
        return kOk;
    }
    std::function<double(double)> f;
    if (which == "max") f = [t](double b) { return max_density_i1(b, t); };
    else if (which == "sojourn") f = [t](double s) { return sojourn_density_i1(s, t); };
    else throw UsageError("--which must be max, sojourn or moments");

    GridSpec grid;
    try {
        grid = GridSpec::parse(grid_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (grid.min < 0.0) throw UsageError("the grid must lie in [0, inf) for a half-line law");
    const std::vector<double> xs = grid.points();
    std::vector<double> dens(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        try {
            dens[i] = xs[i] > 0.0 ? f(xs[i]) : 0.0;
        } catch (const Error& e) {
            throw PointFailure("x=" + num(xs[i]), e.what());
        }
    });
    const std::vector<double> cum = running_mass(f, xs);
    const double total = half_line_mass(f, 0.5 * std::sqrt(t));
    csv_header(o.stream(), c, {{"law", which}, {"t", num(t)}, {"normalization", num(total)}});
    o.stream() << "x,density,cdf,normalization\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        o.stream() << num(xs[i]) << ',' << num(dens[i]) << ',' << num(cum[i]) << ',' << num(total) << "\n";
    o.commit();
    return kOk;
}

std::string join_command(const std::vector<std::string>& args) {
    std::string s = "fracdiff";
    for (const auto& a : args) s += " " + a;
    return s;
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("grid must look like min:max:count, got '" + text + "'");
    try {
        std::size_t used = 0;
        const std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1), s2 = text.substr(b + 1);
        g.min = std::stod(s0, &used);
        if (used != s0.size()) throw std::invalid_argument("");
        g.max = std::stod(s1, &used);
        if (used != s1.size()) throw std::invalid_argument("");
        g.count = std::stoi(s2, &used);
        if (used != s2.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must look like min:max:count, got '" + text + "'");
    }
    if (g.count < 2) throw std::invalid_argument("grid count must be at least 2");
    if (!(g.max > g.min)) throw std::invalid_argument("grid needs max > min");
    return g;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs[i] = i == count - 1 ? max : min + (max - min) * i / (count - 1);
    return xs;
}

std::pair<int, int> parse_int_range(const std::string& text) {
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw std::invalid_argument("bad integer range '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = to_int(text);
        return {v, v};
    }
    return {to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fundamental solutions of time-fractional diffusion: tables, identity checks, simulation"};
    app.set_version_flag("--version", FRACDIFF_VERSION);
    app.require_subcommand(1);

    Common common;
    common.command_line = join_command(args);

    std::string nu = "1", grid = "-5:5:41", identity = "all", process, kind = "brownian-outer", which, k_text = "1..4";
    std::string half_grid = "0.01:5:200";
    std::string dump, format;
    std::optional<std::string> verify_nu;
    std::optional<double> tol;
    double lambda = 1.0, t = 1.0;
    int n = 1, m = 2;
    long samples = 10000;
    std::uint64_t seed = 1;
    bool fast = false;

    auto* dens = app.add_subcommand("density", "tabulate u_nu(x, t) on a grid");
    dens->add_option("--nu", nu, "order in (0, 2); fractions like 2/3 keep closed forms exact")->required();
    dens->add_option("--lambda", lambda, "diffusion coefficient")->capture_default_str();
    dens->add_option("--t", t, "time")->capture_default_str();
    dens->add_option("--grid", grid, "min:max:count")->capture_default_str();
    dens->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    dens->add_option("--out", common.out_path, "output file (stdout if omitted)");

    auto* ver = app.add_subcommand("verify", "run identity checks");
    std::string names = "all";
    for (const auto& name : identity_names()) names += ", " + name;
    ver->add_option("--identity", identity, "one of: " + names)->capture_default_str();
    ver->add_flag("--fast", fast, "smaller point sets");
    ver->add_option("--nu", verify_nu, "run the named identity at this order only");
    ver->add_option("--lambda", lambda, "diffusion coefficient used with --nu")->capture_default_str();
    ver->add_option("--m", m, "multiplicity for the multiplication identity with --nu")->capture_default_str();
    ver->add_option("--tol", tol, "override the tolerance");
    ver->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    ver->add_option("--out", common.out_path, "output file (stdout if omitted)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo against the analytic laws");
    sim->add_option("--process", process, "iterated, g-vector, composed, airy or multivariate")->required();
    sim->add_option("--kind", kind, "brownian-outer or airy-outer (composed)")->capture_default_str();
    sim->add_option("--n", n, "iteration depth, vector length, or dimension (multivariate)")->capture_default_str();
    sim->add_option("--t", t, "time")->capture_default_str();
    sim->add_option("--lambda", lambda, "diffusion coefficient")->capture_default_str();
    sim->add_option("--samples", samples, "number of draws (>= 100)")->capture_default_str();
    sim->add_option("--seed", seed, "random seed")->capture_default_str();
    sim->add_option("--out", common.out_path, "summary file (stdout if omitted)");
    sim->add_option("--dump", dump, "write the raw samples as CSV");

    auto* fun = app.add_subcommand("functionals", "maximum and sojourn laws, even moments");
    fun->add_option("--which", which, "max, sojourn or moments")->required();
    fun->add_option("--n", n, "iteration depth (moments)")->capture_default_str();
    fun->add_option("--k", k_text, "moment orders, e.g. 1..4")->capture_default_str();
    fun->add_option("--t", t, "time")->capture_default_str();
    fun->add_option("--grid", half_grid, "min:max:count on [0, inf)")->capture_default_str();
    fun->add_option("--out", common.out_path, "output file (stdout if omitted)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (dens->parsed()) {
            common.format = format.empty() ? "csv" : format;
            return cmd_density(common, nu, lambda, t, grid, out);
        }
        if (ver->parsed()) {
            common.format = format.empty() ? "json" : format;
            return cmd_verify(common, identity, fast, verify_nu, lambda, m, tol, out);
        }
        if (sim->parsed()) return cmd_simulate(common, process, kind, n, t, lambda, samples, seed, dump, out);
        if (fun->parsed()) {
            if (which == "moments" && !fun->count("--k")) k_text = "1..4";
            return cmd_functionals(common, which, n, k_text, t, half_grid, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace fracdiff::cli
