#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>

namespace hwq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A requested computation cannot be represented faithfully in the truncated space.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical scheme left its stable regime (norm blow-up, insufficient order).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hwq
