#include <cmath>
#include <cstdlib>
#include <numbers>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fracdiff/processes.hpp"
#include "gen.hpp"

using namespace fracdiff;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double half_line_mass(const std::function<double(double)>& f) {
    QuadratureConfig q;
    q.rel_tol = 1e-11;
    q.abs_tol = 1e-13;
    return integrate_to_infinity([&](double s) { return s == 0.0 ? 0.0 : f(s * s) * 2.0 * s; }, 0.0, 0.5, q).value;
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
    RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool differ_c = false, differ_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.bits();
        CHECK(x == b.bits());
        differ_c |= x != c.bits();
        differ_d |= x != d.bits();
    }
    CHECK(differ_c);
    CHECK(differ_d);
}

TEST_CASE("rng variates") {
    RngStream r(7, 3);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0, sg = 0, sg2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        CHECK((u >= 0.0 && u < 1.0));
        su += u;
        const double z = r.normal();
        sn += z;
        sn2 += z * z;
        const double g = r.gamma(0.3);
        CHECK(g >= 0.0);
        sg += g;
        sg2 += g * g;
    }
    CHECK(su / n == Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == Approx(1.0).epsilon(0.01));
    CHECK(sg / n == Approx(0.3).epsilon(0.02));
    CHECK(sg2 / n == Approx(0.3 * 1.3).epsilon(0.04));
    RngStream s(1, 1);
    double big = 0;
    for (int i = 0; i < 50000; ++i) big += s.gamma(4.5);
    CHECK(big / 50000 == Approx(4.5).epsilon(0.01));
}

TEST_CASE("draws do not depend on the thread count") {
    auto sampler = [](RngStream& r) { return r.normal() + r.uniform(); };
    setenv("FRACDIFF_THREADS", "1", 1);
    const auto a = draw_samples(20000, 99, sampler);
    setenv("FRACDIFF_THREADS", "3", 1);
    const auto b = draw_samples(20000, 99, sampler);
    unsetenv("FRACDIFF_THREADS");
    CHECK(a == b);
    const auto c = draw_samples(20000, 99, sampler, 5);
    CHECK(a != c);
}

TEST_CASE("kolmogorov quantiles") {
    CHECK(kolmogorov_quantile(0.05) == Approx(1.35810).epsilon(1e-5));
    CHECK(kolmogorov_quantile(0.01) == Approx(1.62762).epsilon(1e-5));
    CHECK_THROWS_AS(kolmogorov_quantile(0.0), DomainError);
}

TEST_CASE("mc_compare") {
    std::vector<double> few(50, 1.0);
    CHECK_THROWS_AS(mc_compare(few, [](double) { return 0.5; }), DegenerateInput);
    std::vector<double> same(500, 1.0);
    CHECK_THROWS_AS(mc_compare(same, [](double) { return 0.5; }), DegenerateInput);
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000);
    const McSummary s = mc_compare(grid, [](double x) { return std::clamp(x, 0.0, 1.0); }, 3);
    CHECK(s.ks_statistic == Approx(0.0005).epsilon(1e-6));
    CHECK(s.mean == Approx(0.5).epsilon(1e-12));
    CHECK(s.ks_pass(0.01));
    const auto j = nlohmann::json::parse(s.json());
    CHECK(j["seed"] == 3);
}

TEST_CASE("tabulated distribution functions") {
    const TabulatedCdf e([](double x) { return std::exp(-x); }, 40.0, 400, TabulatedCdf::Kind::HalfLine);
    for (double x : {0.0, 0.3, 1.0, 5.0}) CHECK(e(x) == Approx(1 - std::exp(-x)).epsilon(1e-9));
    CHECK(e(-1.0) == 0.0);
    for (double u : {0.1, 0.5, 0.9}) CHECK(e.quantile(u) == Approx(-std::log(1 - u)).epsilon(1e-4));  // interpolated inverse
    const TabulatedCdf lap([](double x) { return 0.5 * std::exp(-x); }, 40.0, 400, TabulatedCdf::Kind::Symmetric);
    CHECK(lap(0.0) == Approx(0.5));
    CHECK(lap(-1.0) == Approx(0.5 * std::exp(-1.0)).epsilon(1e-9));
    CHECK(airy_reduced_cdf().captured_mass() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("iterated parameters and moments") {
    const FractionalParams p = iterated_params(1, 1.0);
    CHECK(p.nu_exact == Rational::make(1, 2));
    CHECK(p.lambda == Approx(std::pow(2.0, -0.75)).epsilon(1e-15));
    CHECK(iterated_params(0, 2.0).nu_exact == Rational::make(1, 1));
    CHECK(even_moment(1, 1, 1.0) == Approx(std::sqrt(2 / kPi)).epsilon(1e-14));
    for (int k = 1; k <= 5; ++k) {
        double dfact = 1;
        for (int j = 2 * k - 1; j > 1; j -= 2) dfact *= j;
        CHECK(even_moment(0, k, 2.0) == Approx(dfact * std::pow(2.0, k)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(even_moment(1, 0, 1.0), DomainError);
}

TEST_CASE("iterated terminal law: table and sampler") {
    const TabulatedCdf cdf = iterated_terminal_cdf(1, 1.0);
    CHECK(cdf(0.0) == Approx(0.5).epsilon(1e-12));
    CHECK(cdf.captured_mass() == Approx(1.0).epsilon(1e-9));
    double prev = 0.0;
    for (double x = -8; x <= 8; x += 0.25) {
        CHECK(cdf(x) >= prev);
        prev = cdf(x);
    }
    const auto v = draw_samples(20000, 11, [](RngStream& r) { return sample_iterated_terminal(1, 1.0, r); });
    const McSummary s = mc_compare(v, std::cref(cdf), 11);
    CHECK(s.ks_pass(0.01));
    CHECK(std::abs(s.second_moment - even_moment(1, 1, 1.0)) < 4 * s.second_moment_se);
}

TEST_CASE("samplers: shapes and errors") {
    RngStream r(5, 0);
    const GVector g = sample_g_vector(4, 1.0, r);
    CHECK(g.w.size() == 3);
    for (double w : g.w) CHECK(w >= 0.0);
    CHECK_THROWS_AS(sample_g_vector(1, 1.0, r), DomainError);
    CHECK_THROWS_AS(sample_composed(ComposedKind::AiryOuter, 4, 1.0, r, 1.0), UnsupportedOrder);
    CHECK(sample_multivariate_common_time(3, 1.0, 1.0, r).size() == 3);
    CHECK(sample_path_max_i1(1.0, r, 256) >= 0.0);
    CHECK_THROWS_AS(sample_iterated_terminal(-1, 1.0, r), DomainError);
}

TEST_CASE("maximum of |B|") {
    CHECK(half_line_mass([](double w) { return abs_max_density(w, 1.0); }) == Approx(1.0).epsilon(1e-10));
    // the image series and its theta dual meet at w^2 = t
    CHECK(abs_max_density(1.0 - 1e-12, 1.0) == Approx(abs_max_density(1.0 + 1e-12, 1.0)).epsilon(1e-9));
    CHECK(abs_max_density(-1.0, 1.0) == 0.0);
}

// References: mpmath quadrature of the Gaussian kernel against the
// differentiated theta series for max |B|, 30 digits.
TEST_CASE("law of the maximum of the iterated process") {
    CHECK(max_density_i1(0.3, 1.0) == Approx(0.722141941799024645).epsilon(1e-10));
    CHECK(max_density_i1(1.0, 1.0) == Approx(0.465816985075490953).epsilon(1e-10));
    CHECK(max_density_i1(2.5, 1.0) == Approx(0.0567957859285750072).epsilon(1e-10));
    for (double b : {0.05, 0.4, 1.2, 3.0})
        CHECK(max_density_i1_alternating(b, 1.0) == Approx(max_density_i1_integral(b, 1.0)).epsilon(1e-9));
    CHECK(half_line_mass([](double b) { return max_density_i1(b, 1.0); }) == Approx(1.0).epsilon(1e-8));
    // the symmetric sum over all integers telescopes: only the outermost
    // small-time terms survive truncation
    for (int kmax : {5, 20, 50}) {
        const double edge = u_eval(iterated_params(1, 1.0 / ((2.0 * kmax - 1) * (2.0 * kmax - 1))), 0.7).value;
        CHECK(std::abs(max_density_i1_two_branch(0.7, 1.0, kmax)) <= 4.0 * edge + 1e-14);
    }
}

TEST_CASE("sojourn law") {
    CHECK(sojourn_density_i1(0.2, 1.0) == Approx(0.756316149010600652).epsilon(1e-10));
    CHECK(sojourn_density_i1(1.0, 1.0) == Approx(0.448258736187802473).epsilon(1e-10));
    CHECK(sojourn_density_i1(3.0, 1.0) == Approx(0.00321905339034309971).epsilon(1e-9));
    for (double s : {0.01, 0.5, 2.0})
        CHECK(sojourn_density_i1(s, 1.0) == Approx(sojourn_density_i1_integral(s, 1.0)).epsilon(1e-8));
    CHECK(half_line_mass([](double s) { return sojourn_density_i1(s, 1.0); }) == Approx(1.0).epsilon(1e-8));
}
