#pragma once

#include <span>
#include <vector>

namespace icec {

struct TridiagonalEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm
};

// Eigenpairs of a real symmetric tridiagonal matrix with eigenvalues in
// (lower, upper]. Throws NumericalError if LAPACK reports failure.
TridiagonalEigen tridiagonal_eigenpairs(std::span<const double> diagonal,
                                        std::span<const double> off_diagonal, double lower,
                                        double upper);

} // namespace icec
