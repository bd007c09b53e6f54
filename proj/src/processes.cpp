#include "fracdiff/processes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "fracdiff/specfun.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kChunk = 4096;

double phi(double y, double var) { return std::exp(-y * y / (2.0 * var)) / std::sqrt(2.0 * kPi * var); }

}  // namespace

// ---------------------------------------------------------------- sampling

double sample_iterated_terminal(int n, double t, RngStream& rng) {
    if (n < 0) throw DomainError("iterated Brownian motion: n must be >= 0");
    if (!(t > 0.0)) throw DomainError("iterated Brownian motion: t must be positive");
    double z = t;
    for (int i = 0; i < n; ++i) z = std::abs(std::sqrt(z) * rng.normal());
    return std::sqrt(z) * rng.normal();
}

GVector sample_g_vector(int n, double t, RngStream& rng) {
    if (n < 2) throw DomainError("g-vector: n must be >= 2");
    if (!(t > 0.0)) throw DomainError("g-vector: t must be positive");
    const double c = std::pow(std::pow(static_cast<double>(n), n) * t, 1.0 / (n - 1));
    GVector g;
    g.w.resize(n - 1);
    for (int j = 1; j < n; ++j) g.w[j - 1] = std::pow(c * rng.gamma(static_cast<double>(j) / n), 1.0 / n);
    return g;
}

double sample_composed(ComposedKind kind, int n, double t, RngStream& rng, double lambda) {
    if (n != 3) throw UnsupportedOrder("composed processes are built on the n = 3 time vector");
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    const GVector g = sample_g_vector(3, t, rng);
    const double time = g.w[0] * g.w[1];
    if (kind == ComposedKind::BrownianOuter) return std::sqrt(2.0 * lambda * lambda * time) * rng.normal();
    return sample_airy_marginal(lambda, time, rng);
}

const TabulatedCdf& airy_reduced_cdf() {
    static const TabulatedCdf table(
        [](double y) { return 3.0 * airy_ai(y).value; }, 12.0, 4096, TabulatedCdf::Kind::HalfLine);
    return table;
}

double sample_airy_marginal(double lambda, double t, RngStream& rng) {
    if (!(lambda > 0.0) || !(t > 0.0)) throw DomainError("Airy marginal: lambda and t must be positive");
    const TabulatedCdf& cdf = airy_reduced_cdf();
    const double y = cdf.quantile(rng.uniform() * cdf.captured_mass());
    const double c = lambda * std::cbrt(3.0 * t);
    return (rng.uniform() < 0.5 ? -c : c) * y;
}

std::vector<double> sample_multivariate_common_time(int k, double lambda, double t, RngStream& rng) {
    if (k < 1) throw DomainError("multivariate sampler: k must be >= 1");
    if (!(lambda > 0.0) || !(t > 0.0)) throw DomainError("lambda and t must be positive");
    const double clock = std::abs(std::sqrt(8.0 * std::pow(lambda, 4) * t) * rng.normal());
    const double sd = std::sqrt(clock);
    std::vector<double> out(k);
    for (double& v : out) v = sd * rng.normal();
    return out;
}

double sample_path_max_i1(double t, RngStream& rng, int steps) {
    if (!(t > 0.0) || steps < 1) throw DomainError("path maximum: need t > 0 and steps >= 1");
    double sd = std::sqrt(t / steps);
    double b = 0.0, m = 0.0;
    for (int i = 0; i < steps; ++i) {
        b += sd * rng.normal();
        m = std::max(m, std::abs(b));
    }
    sd = std::sqrt(m / steps);
    b = 0.0;
    double top = 0.0;
    for (int i = 0; i < steps; ++i) {
        b += sd * rng.normal();
        top = std::max(top, b);
    }
    return top;
}

int worker_threads() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("FRACDIFF_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::vector<double> draw_samples(long count, std::uint64_t seed, const Sampler& sampler,
                                 std::uint64_t first_stream) {
    if (count < 0) throw DomainError("sample count must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(count));
    const long chunks = (count + kChunk - 1) / kChunk;
    auto run_chunk = [&](long c) {
        RngStream rng(seed, first_stream + static_cast<std::uint64_t>(c));
        const long hi = std::min(count, (c + 1) * kChunk);
        for (long i = c * kChunk; i < hi; ++i) out[static_cast<std::size_t>(i)] = sampler(rng);
    };
    const int threads = static_cast<int>(std::min<long>(worker_threads(), std::max<long>(chunks, 1)));
    if (threads <= 1) {
        for (long c = 0; c < chunks; ++c) run_chunk(c);
        return out;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (long c = w; c < chunks; c += threads) run_chunk(c);
        });
    for (auto& th : pool) th.join();
    return out;
}

// ---------------------------------------------------------------- analysis

double kolmogorov_quantile(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("Kolmogorov quantile: level must be in (0,1)");
    auto tail = [](double x) {  // P(K > x)
        double s = 0.0;
        for (int k = 1; k <= 100; ++k) s += ((k % 2) ? 2.0 : -2.0) * std::exp(-2.0 * k * k * x * x);
        return s;
    };
    double lo = 0.2, hi = 5.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (tail(mid) > level)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double McSummary::ks_critical(double level) const {
    return kolmogorov_quantile(level) / std::sqrt(static_cast<double>(n_samples));
}

std::string McSummary::json() const {
    nlohmann::ordered_json j;
    j["n_samples"] = n_samples;
    j["seed"] = seed;
    j["mean"] = mean;
    j["second_moment"] = second_moment;
    j["std_error"] = std_error;
    j["second_moment_se"] = second_moment_se;
    j["ks_statistic"] = ks_statistic;
    j["ks_critical_01"] = ks_critical(0.01);
    j["ks_critical_05"] = ks_critical(0.05);
    return j.dump(2);
}

McSummary mc_compare(std::vector<double> samples, const std::function<double(double)>& cdf,
                     std::uint64_t seed) {
    const long n = static_cast<long>(samples.size());
    if (n < 100) throw DegenerateInput("mc_compare: at least 100 samples required");
    std::sort(samples.begin(), samples.end());
    if (samples.front() == samples.back()) throw DegenerateInput("mc_compare: all samples identical");
    McSummary s;
    s.n_samples = n;
    s.seed = seed;
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    for (double v : samples) {
        m1 += v;
        m2 += v * v;
        m4 += v * v * v * v;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    s.mean = m1;
    s.second_moment = m2;
    s.std_error = std::sqrt(std::max(0.0, m2 - m1 * m1) * n / (n - 1.0) / n);
    s.second_moment_se = std::sqrt(std::max(0.0, m4 - m2 * m2) * n / (n - 1.0) / n);
    double d = 0.0;
    for (long i = 0; i < n; ++i) {
        const double f = cdf(samples[static_cast<std::size_t>(i)]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    s.ks_statistic = std::clamp(d, 0.0, 1.0);
    return s;
}

FractionalParams iterated_params(int n, double t) {
    if (n < 0 || n > 30) throw DomainError("iteration depth out of range");
    const Rational nu = Rational::make(1, 1LL << n);
    const double lambda = std::pow(2.0, 1.0 / std::ldexp(1.0, n + 1) - 1.0);
    return FractionalParams::make(Order(nu), lambda, t);
}

TabulatedCdf iterated_terminal_cdf(int n, double t) {
    const FractionalParams p = iterated_params(n, t);
    // tails fall off at least like exp(-2|x|) in the reduced scale
    const double xmax = std::max(25.0 * p.scale(), 12.0 * std::sqrt(t));
    return TabulatedCdf([p](double x) { return u_eval(p, x).value; }, xmax, 4000,
                        TabulatedCdf::Kind::Symmetric);
}

double even_moment(int n, int k, double t) {
    if (n < 0 || k < 1 || !(t > 0.0)) throw DomainError("even_moment: need n >= 0, k >= 1, t > 0");
    const double e = static_cast<double>(k) / std::ldexp(1.0, n);
    return std::pow(2.0, e) / std::pow(2.0, 2 * k) * std::tgamma(2.0 * k + 1.0) / std::tgamma(e + 1.0) *
           std::pow(t, e);
}

// ---------------------------------------------------------------- functionals

double abs_max_density(double w, double t) {
    if (!(t > 0.0)) throw DomainError("abs_max_density: t must be positive");
    if (!(w > 0.0)) return 0.0;
    double sum = 0.0;
    if (w * w >= t) {
        // images: 4 sum (-1)^k (2k+1) phi((2k+1) w; t)
        for (int k = 0; k < 200; ++k) {
            const double a = 2.0 * k + 1.0;
            const double term = a * std::exp(-a * a * w * w / (2.0 * t));
            sum += (k % 2 ? -term : term);
            if (term < 1e-18 * std::abs(sum)) break;
        }
        return 4.0 * sum / std::sqrt(2.0 * kPi * t);
    }
    // theta dual, fast for small w
    const double c = kPi * kPi * t / (8.0 * w * w);
    for (int k = 0; k < 200; ++k) {
        const double a = 2.0 * k + 1.0;
        const double term = a * std::exp(-a * a * c);
        sum += (k % 2 ? -term : term);
        if (term < 1e-18 * std::abs(sum) || term == 0.0) break;
    }
    return kPi * t / (w * w * w) * sum;
}

double max_density_i1_integral(double beta, double t) {
    if (!(beta >= 0.0) || !(t > 0.0)) throw DomainError("max law: need beta >= 0, t > 0");
    // w = q^2 tames the w^{-1/2} of the Gaussian kernel
    auto f = [&](double q) {
        if (q == 0.0) return 0.0;
        const double w = q * q;
        return 2.0 * phi(beta, w) * abs_max_density(w, t) * 2.0 * q;
    };
    QuadratureConfig q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-14;
    return integrate_to_infinity(f, 0.0, 0.5 * std::pow(t, 0.25), q).value;
}

double max_density_i1_alternating(double beta, double t) {
    if (!(beta > 0.0) || !(t > 0.0)) throw DomainError("max law: need beta > 0, t > 0");
    double sum = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double a = 2.0 * k + 1.0;
        const FractionalParams p = iterated_params(1, t / (a * a));
        const double term = u_eval(p, beta).value;
        sum += (k % 2 ? -term : term);
        if (p.reduced(beta) > 8.0 && term < 1e-15 * std::abs(sum)) return 4.0 * sum;
    }
    throw NonConvergent("max law: alternating sum did not settle");
}

double max_density_i1(double beta, double t) {
    if (!(beta >= 0.0) || !(t > 0.0)) throw DomainError("max law: need beta >= 0, t > 0");
    if (beta == 0.0) return max_density_i1_integral(beta, t);
    // terms die once the reduced argument beta sqrt(2k+1)/(lambda t^{1/4}) passes ~25
    const FractionalParams p = iterated_params(1, t);
    const double ratio = 25.0 / p.reduced(beta);
    if (ratio * ratio < 200.0) return max_density_i1_alternating(beta, t);
    return max_density_i1_integral(beta, t);
}

double max_density_i1_two_branch(double beta, double t, int kmax) {
    if (!(beta > 0.0) || !(t > 0.0) || kmax < 0) throw DomainError("max law: need beta > 0, t > 0");
    double sum = 0.0;
    for (int k = -kmax; k <= kmax; ++k) {
        const double a = 1.0 + 2.0 * k, b = 1.0 - 2.0 * k;
        const double term = u_eval(iterated_params(1, t / (a * a)), beta).value +
                            u_eval(iterated_params(1, t / (b * b)), beta).value;
        sum += (std::abs(k) % 2 ? -term : term);
    }
    return 2.0 * sum;
}

double sojourn_density_i1(double s, double t) {
    if (!(s > 0.0) || !(t > 0.0)) throw DomainError("sojourn law: need s > 0, t > 0");
    // the two branches over k in Z coincide after k -> -k, and k, -1-k pair up,
    // leaving 4 sum_{k>=0}
    const double y0 = s * s / (4.0 * t);
    const long needed = static_cast<long>(std::sqrt(40.0 / y0)) + 10;
    if (needed > 200000) return sojourn_density_i1_integral(s, t);
    double sum = 0.0;
    for (long k = 0; k <= needed + 10; ++k) {
        const double a = 2.0 * k + 1.0;
        const double y = y0 * a * a;
        const double term = a * std::exp(-y) * bessel_k_quarter(y).value;
        sum += (k % 2 ? -term : term);
        if (y > 1.0 && term < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 / (kPi * std::sqrt(kPi * t)) * sum;
}

double sojourn_density_i1_integral(double s, double t) {
    if (!(s > 0.0) || !(t > 0.0)) throw DomainError("sojourn law: need s > 0, t > 0");
    // z = s + q^2 removes the inverse square root at z = s
    auto f = [&](double q) { return abs_max_density(s + q * q, t); };
    QuadratureConfig q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-14;
    const double v = integrate_to_infinity(f, 0.0, 0.5 * std::sqrt(t), q).value;
    return 2.0 * v / (kPi * std::sqrt(s));
}

}  // namespace fracdiff
