#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ballred/field.hpp"

namespace ballred {

using Polyline = std::vector<std::array<double, 2>>;

namespace detail {

// Quantized endpoint key for chaining segments into polylines.
inline std::int64_t contour_key(double s, double r, double scale) {
  const std::int64_t a = static_cast<std::int64_t>(std::llround(s * scale));
  const std::int64_t b = static_cast<std::int64_t>(std::llround(r * scale));
  return a * 2000003 + b;
}

}  // namespace detail

/// Marching squares on the masked lattice: zero-level segments of the field,
/// linear interpolation on cell edges, chained into polylines. Cells with any
/// masked corner (outside the disk or holding a singular center) are skipped.
inline std::vector<Polyline> extract_zero_contours(const Field2D& f) {
  struct Seg {
    std::array<double, 2> a, b;
  };
  std::vector<Seg> segs;

  auto interp = [](double xa, double xb, double va, double vb) {
    const double t = va / (va - vb);
    return xa + t * (xb - xa);
  };

  for (int i = 0; i + 1 < f.ns(); ++i) {
    for (int j = 0; j + 1 < f.nr(); ++j) {
      if (!(f.valid(i, j) && f.valid(i + 1, j) && f.valid(i, j + 1) && f.valid(i + 1, j + 1)))
        continue;
      const double s0 = f.s_grid[i], s1 = f.s_grid[i + 1];
      const double r0 = f.r_grid[j], r1 = f.r_grid[j + 1];
      const double v00 = f.at(i, j), v10 = f.at(i + 1, j);
      const double v01 = f.at(i, j + 1), v11 = f.at(i + 1, j + 1);
      int c = 0;
      if (v00 > 0.0) c |= 1;
      if (v10 > 0.0) c |= 2;
      if (v11 > 0.0) c |= 4;
      if (v01 > 0.0) c |= 8;
      if (c == 0 || c == 15) continue;

      // Edge crossing points (bottom, right, top, left), present when the
      // corner signs differ across that edge.
      std::array<std::array<double, 2>, 4> pt{};
      std::array<bool, 4> has{};
      if ((c & 1) != (c & 2 ? 1 : 0)) {
        has[0] = true;
        pt[0] = {interp(s0, s1, v00, v10), r0};
      }
      if (((c >> 1) & 1) != ((c >> 2) & 1)) {
        has[1] = true;
        pt[1] = {s1, interp(r0, r1, v10, v11)};
      }
      if (((c >> 3) & 1) != ((c >> 2) & 1)) {
        has[2] = true;
        pt[2] = {interp(s0, s1, v01, v11), r1};
      }
      if ((c & 1) != ((c >> 3) & 1)) {
        has[3] = true;
        pt[3] = {s0, interp(r0, r1, v00, v01)};
      }

      std::vector<int> idx;
      for (int e = 0; e < 4; ++e)
        if (has[e]) idx.push_back(e);
      if (idx.size() == 2) {
        segs.push_back({pt[idx[0]], pt[idx[1]]});
      } else if (idx.size() == 4) {
        // Saddle cell: disambiguate with the center average.
        const double center = 0.25 * (v00 + v10 + v01 + v11);
        const bool corner00_positive = v00 > 0.0;
        if ((center > 0.0) == corner00_positive) {
          segs.push_back({pt[0], pt[1]});
          segs.push_back({pt[2], pt[3]});
        } else {
          segs.push_back({pt[0], pt[3]});
          segs.push_back({pt[1], pt[2]});
        }
      }
    }
  }

  // Chain segments whose endpoints coincide.
  const double cell = std::min(std::abs(f.s_grid[1] - f.s_grid[0]), std::abs(f.r_grid[1] - f.r_grid[0]));
  const double scale = 16.0 / cell;
  std::multimap<std::int64_t, std::size_t> by_end;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    by_end.emplace(detail::contour_key(segs[k].a[0], segs[k].a[1], scale), k);
    by_end.emplace(detail::contour_key(segs[k].b[0], segs[k].b[1], scale), k);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<Polyline> lines;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    Polyline line{segs[k].a, segs[k].b};
    for (int dir = 0; dir < 2; ++dir) {
      bool extended = true;
      while (extended) {
        extended = false;
        const std::array<double, 2>& tip = (dir == 0) ? line.back() : line.front();
        auto range = by_end.equal_range(detail::contour_key(tip[0], tip[1], scale));
        for (auto it = range.first; it != range.second; ++it) {
          const std::size_t m = it->second;
          if (used[m]) continue;
          const auto key_a = detail::contour_key(segs[m].a[0], segs[m].a[1], scale);
          const auto key_tip = detail::contour_key(tip[0], tip[1], scale);
          const std::array<double, 2> next = (key_a == key_tip) ? segs[m].b : segs[m].a;
          used[m] = true;
          if (dir == 0)
            line.push_back(next);
          else
            line.insert(line.begin(), next);
          extended = true;
          break;
        }
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

/// JSON array of polylines, each a list of [s, r] pairs, 17 significant digits.
inline std::string contours_to_json(const std::vector<Polyline>& lines) {
  std::string out = "[";
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (k) out += ',';
    out += '[';
    for (std::size_t p = 0; p < lines[k].size(); ++p) {
      if (p) out += ',';
      out += '[';
      out += format_sig17(lines[k][p][0]);
      out += ',';
      out += format_sig17(lines[k][p][1]);
      out += ']';
    }
    out += ']';
  }
  out += "]";
  return out;
}

}  // namespace ballred
