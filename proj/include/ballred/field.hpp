#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballred {

/// Axisymmetric scalar field sampled on an (s, r) lattice, s = x1 and
/// r = |x'|. values is row-major with one row per s node; mask marks nodes
/// where the value is defined (inside the half-disk, away from singular
/// centers).
struct Field2D {
  std::vector<double> s_grid;
  std::vector<double> r_grid;
  std::vector<double> values;  // [i_s * nr() + i_r]
  std::vector<std::uint8_t> mask;

  int ns() const { return static_cast<int>(s_grid.size()); }
  int nr() const { return static_cast<int>(r_grid.size()); }

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * r_grid.size() + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * r_grid.size() + j]; }
  bool valid(int i, int j) const {
    return mask[static_cast<std::size_t>(i) * r_grid.size() + j] != 0;
  }
  void set_valid(int i, int j, bool v) {
    mask[static_cast<std::size_t>(i) * r_grid.size() + j] = v ? 1 : 0;
  }

  static Field2D zeros(std::vector<double> s, std::vector<double> r) {
    Field2D f;
    f.s_grid = std::move(s);
    f.r_grid = std::move(r);
    f.values.assign(f.s_grid.size() * f.r_grid.size(), 0.0);
    f.mask.assign(f.s_grid.size() * f.r_grid.size(), 0);
    return f;
  }
};

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

/// Uniform grid on [-1, 1] with s[n-1-k] the exact negation of s[k], so that
/// fields even in s mirror bitwise.
inline std::vector<double> symmetric_span(int n) {
  std::vector<double> v(n);
  for (int k = n / 2; k < n; ++k) {
    const double s = 1.0 - 2.0 * (n - 1 - k) / (n - 1);
    v[k] = s;
    v[n - 1 - k] = -s;
  }
  return v;
}

/// 17-significant-digit decimal rendering, the fixed format of every
/// machine-readable export.
inline std::string format_sig17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

/// CSV export: header s,r,value, one row per node where the mask is set.
inline void write_field_csv(const Field2D& f, std::ostream& os) {
  os << "s,r,value\n";
  for (int i = 0; i < f.ns(); ++i)
    for (int j = 0; j < f.nr(); ++j)
      if (f.valid(i, j))
        os << format_sig17(f.s_grid[i]) << ',' << format_sig17(f.r_grid[j]) << ','
           << format_sig17(f.at(i, j)) << '\n';
}

}  // namespace ballred
