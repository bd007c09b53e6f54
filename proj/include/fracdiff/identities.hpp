#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracdiff/density.hpp"

namespace fracdiff {

struct IdentityPoint {
    std::string label;  // e.g. "x=0.5 t=1"
    double lhs = 0.0;
    double rhs = 0.0;
};

struct IdentityReport {
    std::string name;
    std::string params;  // fixed parameters, free text
    std::vector<IdentityPoint> points;
    double max_abs_discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;

    void add(std::string label, double lhs, double rhs);
    // Sets max_abs_discrepancy and pass (pass iff max <= tolerance).
    IdentityReport& finish(double tol);
    std::string text() const;
    std::string json() const;
};

struct Probe {
    double x;
    double t;
};

// x in {0, 0.5, 1, 2} crossed with t in {0.5, 1, 2}.
std::vector<Probe> default_points();

inline constexpr double kIdentityTol = 1e-5;

// Gaussian-time subordination: u_nu(x,t) = (1/sqrt(pi t)) int e^{-z^2/(4t)} u_{2nu}(x,z) dz,  0 < nu < 1.
IdentityReport check_gaussian_time(Order nu, double lambda, const std::vector<Probe>& pts,
                                   double tol = kIdentityTol);
double gaussian_time_rhs(const FractionalParams& p, double x);

// Brownian-space subordination: u_nu(x,t) = int_0^inf N(x; 0, 2 w lambda) 2 u_{2nu}(w,t) dw,
// 0 < nu < 1.  Retries with lambda^2 in the kernel if the 2 w lambda form
// misses by more than 1e-3 and says so in the note.
IdentityReport check_brownian_space(Order nu, double lambda, const std::vector<Probe>& pts,
                                    double tol = kIdentityTol);
double brownian_space_rhs(const FractionalParams& p, double x, double kernel_scale);

// Nested Gaussian integral at nu = 1/2^n, lambda = 2^{1/2^{n+1}-1}.
// n <= 3 by nested quadrature, n <= 6 through a tabulated self-similar recursion.
double nested_gaussian(int n, double x, double t);
double nested_gaussian_recursive(int n, double x, double t);
double nested_gaussian_quadrature(int n, double x, double t);
IdentityReport check_nested_gaussian(int n, const std::vector<double>& xs, double t,
                                     double tol = kIdentityTol);
// max over the standard grid of |u_{1/2^n}(x,1) - e^{-2|x|}|.
double bilateral_sup_distance(int n);

// Triplication subordination, 0 < nu < 2/3:
// u_nu(x,t) = (3/(2 pi sqrt t)) int int s e^{-(s^3+v^3)/(3 sqrt(3t))} u_{3nu}(x, s v) ds dv.
IdentityReport check_triplication(Order nu, double lambda, const std::vector<Probe>& pts,
                                  double tol = kIdentityTol);
double triplication_rhs(const FractionalParams& p, double x);
// Mass of the triplication kernel (should be 1).
double triplication_kernel_mass(double t);

// m-fold subordination, m in {2,3,4}, 0 < nu < 2/m.  m = 2, 3 by quadrature
// over the Gamma-factorised kernel; m = 4 by Monte Carlo with
// `draws` samples, accepted within 3 standard errors.
IdentityReport check_multiplication(int m, Order nu, double lambda, const std::vector<Probe>& pts,
                                    double tol = kIdentityTol, long draws = 1000000,
                                    std::uint64_t seed = 20240601);
double multiplication_rhs(int m, const FractionalParams& p, double x);

// Stable law at a Brownian time, 1/2 < nu < 1:
// u_nu = (1/nu) int_0^inf N(x; 0, 2 w lambda) p_{1/nu}(w; (2nu-1)/nu, lambda^{1/nu} t) dw.
IdentityReport check_stable_time(Order nu, double lambda, const std::vector<Probe>& pts,
                                 double tol = kIdentityTol);
double stable_time_rhs(const FractionalParams& p, double x);

// (3/(2 pi)) s^{3/2} / (1 + s^3).
double mckean_density(double s);
double mckean_mass();
// Ai(|y|) = int_0^inf mckean(s) Ai(-|y| s) ds, |y| <= 6.
double airy_mckean_rhs(double y);
IdentityReport check_airy_mckean(const std::vector<double>& ys, double tol = kIdentityTol);

// 2 int_0^inf cos(beta x) u dx  against  E_nu(-beta^2 lambda^2 t^nu).
IdentityReport check_fourier(Order nu, double lambda, const std::vector<double>& betas, double t,
                             double tol = kIdentityTol);
double fourier_numeric(const FractionalParams& p, double beta);

// s^{nu-1} / (s^nu + lambda^2 beta^2).
double laplace_fourier(double nu, double lambda, double s, double beta);
// int_0^inf e^{-s t} E_nu(-beta^2 lambda^2 t^nu) dt.
double laplace_fourier_numeric(double nu, double lambda, double s, double beta);
IdentityReport check_laplace_fourier(double nu, double lambda,
                                     const std::vector<std::pair<double, double>>& s_beta,
                                     double tol = 1e-6);

// Named suites used by the CLI and the acceptance run.
std::vector<std::string> identity_names();
// `fast` trims point sets where a check is expensive.
std::vector<IdentityReport> run_identity(const std::string& name, bool fast = false);

}  // namespace fracdiff
