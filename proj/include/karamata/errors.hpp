#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace karamata {

using cplx = std::complex<double>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameters for an order, measure, kernel or test function.
struct domain_error : error {
    using error::error;
};

// Evaluation requested exactly at a point where the quantity is undefined.
struct singular_point_error : error {
    using error::error;
};

// Query reaches outside the part of a measure that the representation covers.
struct window_error : error {
    using error::error;
};

// An improper integral or series failed the Cauchy stop within its budget.
struct divergence_error : error {
    divergence_error(const std::string& what, cplx partial_value)
        : error(what), partial(partial_value) {}
    cplx partial;
};

// A mathematical precondition of a check does not hold for the given input.
struct precondition_error : error {
    using error::error;
};

// Malformed configuration or CLI input.
struct input_error : error {
    using error::error;
};

}  // namespace karamata
