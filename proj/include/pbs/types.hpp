#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pbs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using DensityOp = Eigen::MatrixXcd;

// Fock-space truncation per mode, fixed tensor order cavity-1 x cavity-2 x mechanics.
struct ModeDims {
    int d1 = 2;
    int d2 = 2;
    int dm = 2;

    int total() const { return d1 * d2 * dm; }
    void validate() const;
};

enum class Mode { Cavity1, Cavity2, Mech };

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct TruncationError : Error {
    double tail_mass;
    TruncationError(const std::string& msg, double tail) : Error(msg), tail_mass(tail) {}
};
struct ContractViolation : Error {
    using Error::Error;
};
struct UnsupportedConfiguration : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace pbs
