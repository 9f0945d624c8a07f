#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "polariton/error.hpp"

namespace polariton {

using complex = std::complex<double>;

enum class Boundary : std::uint8_t {
  dirichlet_zero,  // ghost values beyond the edge are 0, edge nodes pinned to 0
  periodic,        // neighbours wrap modulo the node count
};

/// Uniform, origin-centred mesh. Lengths in um.
///
/// 2D fields are stored row-major with x fastest: value (i, j) lives at
/// j * nx + i. A 1D grid has ny == 1 and no y boundary.
struct Grid {
  int ndim = 1;
  std::size_t nx = 0;
  std::size_t ny = 1;
  double dx = 0.0;
  double dy = 0.0;
  Boundary bc_x = Boundary::dirichlet_zero;
  Boundary bc_y = Boundary::periodic;

  [[nodiscard]] std::size_t size() const noexcept { return nx * ny; }
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return j * nx + i;
  }
  [[nodiscard]] double cavsize_x() const noexcept {
    return dx * static_cast<double>(nx - 1);
  }
  [[nodiscard]] double cavsize_y() const noexcept {
    return ndim == 2 ? dy * static_cast<double>(ny - 1) : 0.0;
  }
  // (i - (n-1)/2) * dx is exact under reflection i -> n-1-i, so mirrored
  // nodes get coordinates of exactly opposite sign.
  [[nodiscard]] double x(std::size_t i) const noexcept {
    return (static_cast<double>(i) - 0.5 * static_cast<double>(nx - 1)) * dx;
  }
  [[nodiscard]] double y(std::size_t j) const noexcept {
    return ndim == 2
               ? (static_cast<double>(j) - 0.5 * static_cast<double>(ny - 1)) * dy
               : 0.0;
  }
  /// Quadrature weight of a single node (full-weight Riemann sum).
  [[nodiscard]] double cell_measure() const noexcept {
    return ndim == 2 ? dx * dy : dx;
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

inline Grid make_grid(int ndim, std::size_t nx, std::size_t ny, double cavsize_x,
                      double cavsize_y) {
  if (ndim != 1 && ndim != 2) {
    throw GridError("grid: ndim must be 1 or 2, got " + std::to_string(ndim));
  }
  if (nx < 3) {
    throw GridError("grid: nx must be >= 3 for a three-point stencil, got " +
                    std::to_string(nx));
  }
  if (!(cavsize_x > 0.0) || !std::isfinite(cavsize_x)) {
    throw GridError("grid: cavsize_x must be positive");
  }
  Grid g;
  g.ndim = ndim;
  g.nx = nx;
  g.dx = cavsize_x / static_cast<double>(nx - 1);
  if (ndim == 2) {
    if (ny < 3) {
      throw GridError("grid: ny must be >= 3 for a 2D mesh, got " + std::to_string(ny));
    }
    if (!(cavsize_y > 0.0) || !std::isfinite(cavsize_y)) {
      throw GridError("grid: cavsize_y must be positive");
    }
    g.ny = ny;
    g.dy = cavsize_y / static_cast<double>(ny - 1);
  } else {
    g.ny = 1;
    g.dy = 0.0;
  }
  return g;
}

inline Grid make_grid_1d(std::size_t nx, double cavsize_x) {
  return make_grid(1, nx, 1, cavsize_x, 0.0);
}

inline Grid make_grid_2d(std::size_t nx, std::size_t ny, double cavsize_x,
                         double cavsize_y) {
  return make_grid(2, nx, ny, cavsize_x, cavsize_y);
}

/// Values sampled on every node of a grid.
template <class T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  explicit Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), T{}) {}
  Field(Grid grid, std::vector<T> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw GridError("field: " + std::to_string(values_.size()) +
                      " values for a grid of " + std::to_string(grid_.size()) +
                      " nodes");
    }
  }

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

  [[nodiscard]] std::span<T> values() noexcept { return values_; }
  [[nodiscard]] std::span<const T> values() const noexcept { return values_; }

  T& operator[](std::size_t k) noexcept { return values_[k]; }
  const T& operator[](std::size_t k) const noexcept { return values_[k]; }

  T& at(std::size_t i, std::size_t j = 0) { return values_[grid_.index(i, j)]; }
  const T& at(std::size_t i, std::size_t j = 0) const {
    return values_[grid_.index(i, j)];
  }

  [[nodiscard]] bool all_finite() const noexcept {
    for (const T& v : values_) {
      if constexpr (std::is_same_v<T, complex>) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      } else {
        if (!std::isfinite(v)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Grid grid_;
  std::vector<T> values_;
};

using ComplexField = Field<complex>;
using RealField = Field<double>;

/// Sample `f(x)` or `f(x, y)` on every node. A one-argument callable is
/// only accepted on 1D grids; a two-argument callable sees y = 0 there.
template <class T = complex, class Fn>
Field<T> sample(const Grid& grid, Fn&& f) {
  constexpr bool takes_xy = std::is_invocable_v<Fn&, double, double>;
  if constexpr (!takes_xy) {
    if (grid.ndim == 2) throw GridError("sample: 2D grid needs a callable f(x, y)");
  }
  Field<T> out(grid);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      if constexpr (takes_xy) {
        out.at(i, j) = static_cast<T>(f(grid.x(i), grid.ndim == 2 ? grid.y(j) : 0.0));
      } else {
        out.at(i, j) = static_cast<T>(f(grid.x(i)));
      }
    }
  }
  return out;
}

namespace detail {

// Second difference along one axis of a strided line. Neighbours are summed
// first, (left + right) - 2 c, so the result is bit-identical under
// reflection of the line.
template <class T>
void second_difference(std::span<const T> in, std::span<T> out, std::size_t n,
                       std::size_t stride, Boundary bc, double inv_h2, bool accumulate) {
  for (std::size_t k = 0; k < n; ++k) {
    T left{};
    T right{};
    if (k > 0) {
      left = in[(k - 1) * stride];
    } else if (bc == Boundary::periodic) {
      left = in[(n - 1) * stride];
    }
    if (k + 1 < n) {
      right = in[(k + 1) * stride];
    } else if (bc == Boundary::periodic) {
      right = in[0];
    }
    const T centre = in[k * stride];
    const T d2 = ((left + right) - 2.0 * centre) * inv_h2;
    if (accumulate) {
      out[k * stride] += d2;
    } else {
      out[k * stride] = d2;
    }
  }
}

}  // namespace detail

template <class T>
Field<T> laplacian_1d(const Field<T>& f) {
  const Grid& g = f.grid();
  if (g.ndim != 1) {
    throw GridError("laplacian_1d: field lives on a " + std::to_string(g.ndim) +
                    "D grid");
  }
  Field<T> out(g);
  detail::second_difference<T>(f.values(), out.values(), g.nx, 1, g.bc_x,
                               1.0 / (g.dx * g.dx), false);
  return out;
}

/// d2/dx2 + d2/dy2. The x pass runs first over every row, then the y pass is
/// accumulated column by column; that order is fixed.
template <class T>
Field<T> laplacian_2d(const Field<T>& f) {
  const Grid& g = f.grid();
  if (g.ndim != 2) {
    throw GridError("laplacian_2d: field lives on a " + std::to_string(g.ndim) +
                    "D grid");
  }
  Field<T> out(g);
  const double inv_dx2 = 1.0 / (g.dx * g.dx);
  const double inv_dy2 = 1.0 / (g.dy * g.dy);
  auto in = f.values();
  auto res = out.values();
  for (std::size_t j = 0; j < g.ny; ++j) {
    detail::second_difference<T>(in.subspan(j * g.nx, g.nx), res.subspan(j * g.nx, g.nx),
                                 g.nx, 1, g.bc_x, inv_dx2, false);
  }
  for (std::size_t i = 0; i < g.nx; ++i) {
    detail::second_difference<T>(in.subspan(i), res.subspan(i), g.ny, g.nx, g.bc_y,
                                 inv_dy2, true);
  }
  return out;
}

template <class T>
Field<T> laplacian(const Field<T>& f) {
  return f.grid().ndim == 2 ? laplacian_2d(f) : laplacian_1d(f);
}

/// Zero every node on a Dirichlet edge.
template <class T>
void zero_dirichlet_edges(Field<T>& f) {
  const Grid& g = f.grid();
  if (g.bc_x == Boundary::dirichlet_zero) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      f.at(0, j) = T{};
      f.at(g.nx - 1, j) = T{};
    }
  }
  if (g.ndim == 2 && g.bc_y == Boundary::dirichlet_zero) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      f.at(i, 0) = T{};
      f.at(i, g.ny - 1) = T{};
    }
  }
}

}  // namespace polariton
