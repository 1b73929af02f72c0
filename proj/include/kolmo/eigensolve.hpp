#pragma once

// Minimal eigenpair of a dense real symmetric matrix.
//
// Householder reduction to tridiagonal form, Sturm-sequence bisection for
// the eigenvalue, inverse iteration on the tridiagonal for the vector, and
// back-transformation. The result is checked against the original matrix.

#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/matrix.hpp"

namespace kolmo {

struct EigenPair {
  double value = 0.0;
  /// Unit 2-norm; first entry above 1e-8 * max|v_i| is positive.
  std::vector<double> vector;
  /// ||S v - value v||_2
  double residual = 0.0;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultEigenTol = 1e-10;

/// Algebraically smallest eigenpair of S.
///
/// Throws std::invalid_argument for an empty or non-symmetric matrix (entries
/// differing by more than 1e-12 * max|S|), and ConvergenceError when the
/// residual exceeds tol * max|S| * dim.
EigenPair sym_eig_min(const DenseMatrix& S, double tol = kDefaultEigenTol);

/// All eigenvalues of S in ascending order (bisection on the tridiagonal form).
std::vector<double> sym_eigenvalues(const DenseMatrix& S);

/// Flips v so its first significant entry is positive.
void normalize_sign(std::vector<double>& v);

}  // namespace kolmo
