// End-to-end acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fracdiff/density.hpp"
#include "fracdiff/identities.hpp"
#include "fracdiff/processes.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0: no runtime limit
    std::function<Outcome()> run;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double half_line_mass(const std::function<double(double)>& f) {
    QuadratureConfig q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-13;
    return integrate_to_infinity([&](double s) { return s == 0.0 ? 0.0 : f(s * s) * 2.0 * s; }, 0.0, 0.5, q).value;
}

Outcome reports_outcome(const std::vector<IdentityReport>& rs) {
    Outcome o{true, ""};
    double worst = 0.0;
    for (const auto& r : rs) {
        if (!r.pass) {
            o.pass = false;
            o.detail += "failed " + r.name + " [" + r.params + "]; ";
        }
        worst = std::max(worst, r.max_abs_discrepancy);
    }
    o.detail += std::to_string(rs.size()) + " reports, max discrepancy " + sci(worst);
    return o;
}

Outcome gaussian_reduction() {
    double worst = 0.0;
    int evaluated = 0;
    for (double t : {0.5, 1.0, 2.0}) {
        const FractionalParams p = FractionalParams::make(Rational::make(1, 1), 1.0, t);
        for (double x : standard_grid()) {
            const double exact = std::exp(-x * x / (4 * t)) / (2 * std::sqrt(kPi * t));
            for (const auto& m : u_all_methods(p, x)) {
                if (!m.applicable) continue;
                worst = std::max(worst, std::abs(m.result.value - exact));
                ++evaluated;
            }
            worst = std::max(worst, std::abs(u_eval(p, x).value - exact));
        }
    }
    return {worst <= 1e-8, std::to_string(evaluated) + " method evaluations, max error " + sci(worst)};
}

Outcome airy_reduction() {
    double worst_series = 0.0, worst_bp = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const FractionalParams p = FractionalParams::make(Rational::make(2, 3), 1.0, t);
        const double c = std::cbrt(3 * t);
        for (double x : standard_grid()) {
            const double exact = 1.5 / c * airy_ai(std::abs(x) / c).value;
            worst_series = std::max(worst_series, std::abs(u_series(p, x).value - exact));
            if (x != 0.0) worst_bp = std::max(worst_bp, std::abs(u_integral_byparts(p, x).value - exact));
        }
    }
    const double w = std::max(worst_series, worst_bp);
    return {w <= 1e-7, "series " + sci(worst_series) + ", by-parts " + sci(worst_bp) + " (x != 0)"};
}

Outcome cross_method() {
    Outcome o{true, ""};
    const std::vector<Order> orders = {Order(0.3), Order(0.5), Order(0.8), Order(Rational::make(4, 3)), Order(1.5),
                                       Order(1.8)};
    double worst_pair = 0.0, worst_mass = 0.0;
    for (const Order& nu : orders) {
        const FractionalParams p = FractionalParams::make(nu, 1.0, 1.0);
        for (double x : standard_grid()) {
            std::vector<double> vals;
            for (const auto& m : u_all_methods(p, x))
                if (m.applicable) vals.push_back(m.result.value);
            if (vals.size() < 2) {
                o.pass = false;
                o.detail += "fewer than two methods at nu=" + std::to_string(nu.value) + "; ";
            }
            for (std::size_t i = 0; i < vals.size(); ++i)
                for (std::size_t j = i + 1; j < vals.size(); ++j)
                    worst_pair = std::max(worst_pair, std::abs(vals[i] - vals[j]));
        }
        worst_mass = std::max(worst_mass, std::abs(u_total_mass(p).value - 1.0));
    }
    o.pass = o.pass && worst_pair <= 1e-6 && worst_mass <= 1e-6;
    o.detail += "pairwise " + sci(worst_pair) + ", mass " + sci(worst_mass);
    return o;
}

Outcome subordination() {
    const auto pts = default_points();
    const Rational third = Rational::make(1, 3);
    std::vector<IdentityReport> rs;
    for (Order nu : {Order(third), Order(Rational::make(1, 2)), Order(0.9)})
        rs.push_back(check_gaussian_time(nu, 1.0, pts));
    for (double nu : {0.4, 0.5}) rs.push_back(check_brownian_space(Order(nu), 1.0, pts));
    for (Order nu : {Order(third), Order(Rational::make(2, 9))}) rs.push_back(check_triplication(nu, 1.0, pts));
    rs.push_back(check_multiplication(2, Rational::make(1, 2), 1.0, pts));
    rs.push_back(check_multiplication(3, third, 1.0, pts));
    for (double nu : {0.6, 0.75}) rs.push_back(check_stable_time(Order(nu), 1.0, pts));
    return reports_outcome(rs);
}

Outcome nested() {
    std::vector<IdentityReport> rs;
    for (int n : {1, 2}) rs.push_back(check_nested_gaussian(n, {0.0, 0.5, 1.0}, 1.0));
    Outcome o = reports_outcome(rs);
    std::string trend;
    double prev = INFINITY;
    bool decreasing = true;
    for (int n = 1; n <= 5; ++n) {
        const double d = bilateral_sup_distance(n);
        decreasing = decreasing && d < prev;
        prev = d;
        trend += (n > 1 ? " " : "") + sci(d);
    }
    o.pass = o.pass && decreasing && prev < 0.05;
    o.detail += "; distance to e^{-2|x|}: " + trend;
    return o;
}

Outcome transforms() {
    std::vector<IdentityReport> rs;
    for (Order nu : {Order(Rational::make(1, 2)), Order(Rational::make(1, 1)), Order(Rational::make(3, 2))})
        rs.push_back(check_fourier(nu, 1.0, {0.5, 1.0, 2.0}, 1.0));
    std::vector<std::pair<double, double>> sb;
    for (double s : {0.5, 1.0, 2.0})
        for (double b : {0.5, 1.5, 3.0}) sb.emplace_back(s, b);
    rs.push_back(check_laplace_fourier(0.6, 1.0, sb, 1e-6));
    return reports_outcome(rs);
}

Outcome airy_mckean() {
    Outcome o = reports_outcome({check_airy_mckean({0.5, 1.0, 2.0, 3.0})});
    const double dm = std::abs(mckean_mass() - 1.0);
    o.pass = o.pass && dm <= 1e-10;
    o.detail += "; weight mass error " + sci(dm);
    return o;
}

Outcome monte_carlo() {
    Outcome o{true, ""};
    for (int n = 0; n <= 3; ++n) {
        const auto v = draw_samples(100000, 20261016, [n](RngStream& r) { return sample_iterated_terminal(n, 1.0, r); },
                                    static_cast<std::uint64_t>(n) << 20);
        const TabulatedCdf cdf = iterated_terminal_cdf(n, 1.0);
        const McSummary s = mc_compare(v, std::cref(cdf), 20261016);
        const double z = (s.second_moment - even_moment(n, 1, 1.0)) / s.second_moment_se;
        const bool moment_ok = std::abs(z) <= 4.0;
        const bool ks_ok = n > 2 || s.ks_pass(0.01);
        o.pass = o.pass && moment_ok && ks_ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "n=%d z=%.2f D=%.4f (crit %.4f)%s; ", n, z, s.ks_statistic, s.ks_critical(0.01),
                      n > 2 ? " not gated" : "");
        o.detail += buf;
    }
    return o;
}

Outcome functionals() {
    Outcome o{true, ""};
    const double mmax = half_line_mass([](double b) { return max_density_i1(b, 1.0); });
    const double msoj = half_line_mass([](double s) { return sojourn_density_i1(s, 1.0); });
    double worst_soj = 0.0;
    for (double s : {0.3, 1.0, 2.5})
        worst_soj = std::max(worst_soj, std::abs(sojourn_density_i1(s, 1.0) - sojourn_density_i1_integral(s, 1.0)));

    const auto paths = draw_samples(10000, 777, [](RngStream& r) { return sample_path_max_i1(1.0, r); });
    const TabulatedCdf cdf([](double b) { return max_density_i1(b, 1.0); }, 12.0, 2400, TabulatedCdf::Kind::HalfLine);
    const McSummary s = mc_compare(paths, std::cref(cdf), 777);

    o.pass = std::abs(mmax - 1) <= 1e-5 && std::abs(msoj - 1) <= 1e-5 && worst_soj <= 1e-6 && s.ks_pass(0.05);
    char buf[200];
    std::snprintf(buf, sizeof buf, "mass max %s, sojourn %s; sojourn forms %s; path KS D=%.4f (crit %.4f)",
                  sci(mmax - 1).c_str(), sci(msoj - 1).c_str(), sci(worst_soj).c_str(), s.ks_statistic,
                  s.ks_critical(0.05));
    o.detail = buf;
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const char* bin = std::getenv("FRACDIFF_BIN");
    if (!bin) return {false, "FRACDIFF_BIN not set"};
    const char* wd = std::getenv("FRACDIFF_WORKDIR");
    const std::filesystem::path dir =
        (wd ? std::filesystem::path(wd) : std::filesystem::temp_directory_path()) / "acceptance_runs";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> commands = {
        "density --nu 0.37 --grid -6:6:61",
        "density --nu 2/3 --format json",
        "verify --identity gaussian-time --fast",
        "simulate --process iterated --n 2 --samples 20000 --seed 11 --dump " + (dir / "dump.csv").string(),
        "simulate --process composed --kind airy-outer --n 3 --samples 5000 --seed 3",
        "functionals --which moments --n 3 --k 1..4",
    };
    Outcome o{true, ""};
    int idx = 0;
    for (const auto& c : commands) {
        std::string first, first_dump;
        for (int rep = 0; rep < 2; ++rep) {
            const auto out = dir / ("out" + std::to_string(idx) + ".txt");
            // the second run uses a different worker count
            const std::string env = rep == 0 ? "FRACDIFF_THREADS=1 " : "FRACDIFF_THREADS=4 ";
            const std::string cmd = env + bin + " " + c + " --out " + out.string() + " > /dev/null 2>&1";
            const int status = std::system(cmd.c_str());
            if (status == -1 || WEXITSTATUS(status) > 1) {
                o.pass = false;
                o.detail += "'" + c + "' exited " + std::to_string(WEXITSTATUS(status)) + "; ";
            }
            const std::string text = slurp(out), dump = slurp(dir / "dump.csv");
            if (rep == 0) {
                first = text;
                first_dump = dump;
            } else if (text != first || dump != first_dump || text.empty()) {
                o.pass = false;
                o.detail += "'" + c + "' differs; ";
            }
        }
        ++idx;
    }
    o.detail += std::to_string(commands.size()) + " commands run twice";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "gaussian reduction", 1, gaussian_reduction},
        {2, "airy reduction", 5, airy_reduction},
        {3, "cross-method agreement and mass", 60, cross_method},
        {4, "subordination suite", 120, subordination},
        {5, "nested gaussian and bilateral limit", 60, nested},
        {6, "transform suite", 30, transforms},
        {7, "airy average against McKean", 10, airy_mckean},
        {8, "monte carlo terminal laws", 60, monte_carlo},
        {9, "maximum and sojourn laws", 180, functionals},
        {10, "cli determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0 || secs < c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::printf("criterion %2d: %s  %s  %.2fs%s  %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                    in_time ? "" : " (over budget)", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
