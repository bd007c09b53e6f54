#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracdiff/cdf_table.hpp"
#include "fracdiff/density.hpp"
#include "fracdiff/rng.hpp"

namespace fracdiff {

// ---------------------------------------------------------------- sampling

struct GVector {
    std::vector<double> w;  // w_1 .. w_{n-1}, all >= 0
};

// Terminal value of the n-times iterated Brownian motion at time t
// (standard Brownian motions, variance = time).
double sample_iterated_terminal(int n, double t, RngStream& rng);

// Random time vector with joint density proportional to
// exp(-sum w_j^n / c) w_2 w_3^2 ... w_{n-1}^{n-2},  c = (n^n t)^{1/(n-1)}.
// Coordinates are independent: w_j^n / c ~ Gamma(j/n).
GVector sample_g_vector(int n, double t, RngStream& rng);

enum class ComposedKind { BrownianOuter, AiryOuter };

// Outer process run at the random time w_1 w_2 of the n = 3 vector.
// BrownianOuter: Normal with variance 2 lambda^2 w_1 w_2 (law u_{1/3});
// AiryOuter: Airy-law marginal at time w_1 w_2 (law u_{2/9}).
double sample_composed(ComposedKind kind, int n, double t, RngStream& rng, double lambda);

// Symmetric sample from u_{2/3}(., t) by inverting the tabulated reduced CDF.
double sample_airy_marginal(double lambda, double t, RngStream& rng);
// The reduced table: CDF of |X| / (lambda (3t)^{1/3}), density 3 Ai(y) on [0, 12].
const TabulatedCdf& airy_reduced_cdf();

// k iterated Brownian motions sharing one random clock |B(t)|, whose
// variance is 8 lambda^4 t.  Each coordinate has law u_{1/2}.
std::vector<double> sample_multivariate_common_time(int k, double lambda, double t, RngStream& rng);

// max_{0<=s<=t} B_1(|B_2(s)|) on a grid: B_2 with `steps` steps on [0,t],
// M = max |B_2|, then B_1 with `steps` steps on [0, M].
double sample_path_max_i1(double t, RngStream& rng, int steps = 1 << 14);

// Worker count: hardware concurrency capped by FRACDIFF_THREADS.
int worker_threads();

// count draws; chunk c of the output uses stream (seed, first_stream + c),
// so the result does not depend on the thread count.
using Sampler = std::function<double(RngStream&)>;
std::vector<double> draw_samples(long count, std::uint64_t seed, const Sampler& sampler,
                                 std::uint64_t first_stream = 0);

// ---------------------------------------------------------------- analysis

struct McSummary {
    long n_samples = 0;
    double mean = 0.0;
    double second_moment = 0.0;
    double std_error = 0.0;           // of the mean
    double second_moment_se = 0.0;    // of the second moment
    double ks_statistic = 0.0;
    std::uint64_t seed = 0;

    double ks_critical(double level) const;
    bool ks_pass(double level) const { return ks_statistic <= ks_critical(level); }
    std::string json() const;
};

// Upper quantile of the asymptotic Kolmogorov distribution, P(K > k) = level.
double kolmogorov_quantile(double level);

// Moments and one-sample KS distance against `cdf`.  Needs >= 100 samples
// that are not all equal (DegenerateInput).
McSummary mc_compare(std::vector<double> samples, const std::function<double(double)>& cdf,
                     std::uint64_t seed = 0);

// CDF of the iterated Brownian terminal law u_{1/2^n}(., t), tabulated.
TabulatedCdf iterated_terminal_cdf(int n, double t);

// E I_n(t)^{2k} in closed form.
double even_moment(int n, int k, double t);

// ---------------------------------------------------------------- functionals

// Density of max_{0<=s<=t} |B(s)| (image series or its theta dual).
double abs_max_density(double w, double t);

// Density of max_{0<=s<=t} I_1(s) at beta > 0.  Alternating sum
// 4 sum_{k>=0} (-1)^k u_{1/2}(beta, t/(2k+1)^2) where it converges quickly,
// otherwise 2 int_0^inf phi(beta; w) f_M(w) dw.
double max_density_i1(double beta, double t);
double max_density_i1_integral(double beta, double t);
double max_density_i1_alternating(double beta, double t);
// Two-branch sum over all integers k, summed symmetrically |k| <= K as written.
double max_density_i1_two_branch(double beta, double t, int kmax);

// Sojourn time on the positive half-line of I_1 up to time t.
double sojourn_density_i1(double s, double t);           // K_{1/4} series
double sojourn_density_i1_integral(double s, double t);  // arcsine kernel against f_M

// u_{1/2} in the normalisation of the iterated Brownian motion (lambda^2 = 2^{-3/2}).
FractionalParams iterated_params(int n, double t);

}  // namespace fracdiff
