#pragma once
// Uniform periodic grid on [-L, L)^dim, n points per axis (power of two).
// Physical nodes  x_j = -L + j h, h = 2L/n.
// Fourier modes   xi_k = pi k / L, k = -n/2 .. n/2 - 1.
// Storage is row-major: axis 0 is the slowest index.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace bnls {

struct Grid {
  int dim = 1;
  int n = 0;
  double L = 0.0;

  double h() const { return 2.0 * L / n; }
  std::size_t size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
    return s;
  }
  double cell_volume() const { return std::pow(h(), dim); }
  double box_volume() const { return std::pow(2.0 * L, dim); }
  double x(int j) const { return -L + h() * j; }
  // signed integer frequency for loop index i in [0, n)
  int freq_index(int i) const { return i < n / 2 ? i : i - n; }
  double xi(int i) const { return M_PI * freq_index(i) / L; }
  double xi_max() const { return M_PI * (n / 2) / L; }

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && L == o.L;
  }
};

inline Grid make_grid(int dim, int n, double L) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("grid: dim must be 1, 2, or 3");
  if (n < 32 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid: n must be a power of two >= 32");
  if (!(L > 0.0) || !std::isfinite(L))
    throw std::invalid_argument("grid: L must be positive and finite");
  return Grid{dim, n, L};
}

// Decomposes a flat row-major index into per-axis indices (up to dim = 3).
inline void unflatten(const Grid& g, std::size_t flat, int idx[3]) {
  idx[1] = idx[2] = 0;
  if (g.dim == 1) {
    idx[0] = static_cast<int>(flat);
  } else if (g.dim == 2) {
    idx[0] = static_cast<int>(flat / g.n);
    idx[1] = static_cast<int>(flat % g.n);
  } else {
    idx[2] = static_cast<int>(flat % g.n);
    std::size_t r = flat / g.n;
    idx[1] = static_cast<int>(r % g.n);
    idx[0] = static_cast<int>(r / g.n);
  }
}

}  // namespace bnls
