#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

// ============================================================================
// Errors
// ============================================================================

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Series hit max_terms, or summation lost too much precision to be trusted.
class NonConvergent : public Error {
public:
    using Error::Error;
};

// Reduced argument outside the validity window of a series.
class OutOfWindow : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

// Closed form or identity not available for the requested order.
class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

// ============================================================================
// Evaluation results
// ============================================================================

enum class Method { Series, Integral, IntegralByParts, ClosedForm, Stable };

const char* method_name(Method m);

struct EvalResult {
    double value = 0.0;
    double abs_err = 0.0;
    Method method = Method::Series;
};

struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 400;
    int min_terms = 8;

    void validate() const;
};

}  // namespace fracdiff
