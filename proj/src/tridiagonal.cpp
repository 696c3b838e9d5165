#include "icec/tridiagonal.hpp"

#include "icec/error.hpp"

#include <fmt/format.h>
#include <lapacke.h>

#include <algorithm>

namespace icec {

namespace {

// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
std::size_t count_below(std::span<const double> d, std::span<const double> e, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0)
      q = -1e-300;
    if (q < 0.0)
      ++count;
  }
  return count;
}

} // namespace

TridiagonalEigen tridiagonal_eigenpairs(std::span<const double> diagonal,
                                        std::span<const double> off_diagonal, double lower,
                                        double upper) {
  const auto n = static_cast<lapack_int>(diagonal.size());
  if (n == 0 || off_diagonal.size() + 1 != diagonal.size())
    throw InputError("tridiagonal matrix: inconsistent diagonal sizes");

  // dstevr overwrites its inputs; off-diagonal needs n entries of workspace.
  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(off_diagonal.begin(), off_diagonal.end());
  e.push_back(0.0);

  // Z must hold every eigenvector in the bracket; bound the count first.
  const std::size_t columns =
      std::max<std::size_t>(1, count_below(diagonal, off_diagonal, upper) -
                                   std::min(count_below(diagonal, off_diagonal, upper),
                                            count_below(diagonal, off_diagonal, lower)) + 2);

  lapack_int found = 0;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(static_cast<std::size_t>(n) * columns);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'V', n, d.data(), e.data(), lower,
                                         upper, 0, 0, 0.0, &found, w.data(), z.data(), n,
                                         support.data());
  if (info != 0)
    throw NumericalError(fmt::format(
        "tridiagonal eigensolver failed (info = {}) for eigenvalue bracket ({:.6g}, {:.6g}] Hartree",
        info, lower, upper));

  TridiagonalEigen out;
  out.values.assign(w.begin(), w.begin() + found);
  out.vectors.resize(static_cast<std::size_t>(found));
  for (lapack_int k = 0; k < found; ++k) {
    const auto* col = z.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
    out.vectors[static_cast<std::size_t>(k)].assign(col, col + n);
  }
  return out;
}

} // namespace icec
