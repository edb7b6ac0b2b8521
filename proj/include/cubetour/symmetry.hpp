// symmetry.hpp - the 48 rotation/reflection symmetries of the cube, the
// Frenicle-style canonical form, and the primary key that identifies an
// underlying tour independent of numbering origin and direction.
#pragma once

#include <array>
#include <cstdint>

#include "arrangement.hpp"
#include "geometry.hpp"

namespace cubetour {

inline constexpr int kTransformCount = 48;

// The 6 axis permutations; together with 8 per-axis flips they generate the
// full symmetry group. Transform id = 8 * perm + flips.
inline constexpr std::array<std::array<int, 3>, 6> kAxisPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

// kTransformMap[t][cell] = image cell under transform t.
inline constexpr std::array<std::array<std::uint8_t, kCells>, kTransformCount>
    kTransformMap = [] {
      std::array<std::array<std::uint8_t, kCells>, kTransformCount> maps{};
      for (int p = 0; p < 6; p++)
        for (int f = 0; f < 8; f++)
          for (Cell i = 0; i < kCells; i++) {
            int q[3] = {layer_of(i), row_of(i), col_of(i)};
            int o[3];
            for (int ax = 0; ax < 3; ax++) {
              int t = q[kAxisPerms[p][ax]];
              if ((f >> ax) & 1) t = 3 - t;
              o[ax] = t;
            }
            maps[8 * p + f][i] = (std::uint8_t)cell_at(o[0], o[1], o[2]);
          }
      return maps;
    }();

inline Arrangement apply_transform(int t, const Arrangement& a) {
  Arrangement img{};
  for (Cell c = 0; c < kCells; c++) img[kTransformMap[t][c]] = a[c];
  return img;
}

// Index of the transform that equals "first s, then t", i.e. map_t . map_s.
inline int compose_transforms(int t, int s) {
  for (int u = 0; u < kTransformCount; u++) {
    bool same = true;
    for (Cell c = 0; c < kCells && same; c++)
      same = kTransformMap[u][c] == kTransformMap[t][kTransformMap[s][c]];
    if (same) return u;
  }
  return -1;
}

inline int inverse_transform(int t) {
  for (int u = 0; u < kTransformCount; u++) {
    bool inv = true;
    for (Cell c = 0; c < kCells && inv; c++)
      inv = kTransformMap[u][kTransformMap[t][c]] == c;
    if (inv) return u;
  }
  return -1;
}

// Lexicographically smallest image over the 48 transforms. Two arrangements
// describe the same numbered object up to cube symmetry iff their canonical
// forms agree.
inline Arrangement frenicle_canonical(const Arrangement& a) {
  Arrangement best = a;
  for (int t = 1; t < kTransformCount; t++) {
    Arrangement img = apply_transform(t, a);
    if (img < best) best = img;
  }
  return best;
}

// Renumber a tour: value v -> position shifted by k along the cycle.
inline Arrangement shift_values(const Arrangement& a, int k) {
  Arrangement r{};
  for (Cell c = 0; c < kCells; c++)
    r[c] = (std::uint8_t)((a[c] - 1 + k) % kCells + 1);
  return r;
}

// Smallest image over transforms x admissible renumberings. A closed tour's
// cycle can be entered at any of 64 cells in either direction; an open tour
// only reversed. The key therefore identifies the un-numbered tour.
inline Arrangement primary_canonical(const Arrangement& a) {
  auto pos = positions(a);
  bool closed = knight_move(pos[kCells], pos[1]);
  Arrangement best{};
  best.fill(255);
  std::array<Cell, kCells> path{};
  auto consider = [&](const std::array<Cell, kCells>& p) {
    for (int t = 0; t < kTransformCount; t++) {
      Arrangement img{};
      for (int j = 0; j < kCells; j++)
        img[kTransformMap[t][p[j]]] = (std::uint8_t)(j + 1);
      if (img < best) best = img;
    }
  };
  if (closed) {
    for (int s = 0; s < kCells; s++) {
      for (int j = 0; j < kCells; j++) path[j] = pos[(s + j) % kCells + 1];
      consider(path);
      for (int j = 0; j < kCells; j++) path[j] = pos[(s - j + kCells) % kCells + 1];
      consider(path);
    }
  } else {
    for (int j = 0; j < kCells; j++) path[j] = pos[j + 1];
    consider(path);
    for (int j = 0; j < kCells; j++) path[j] = pos[kCells - j];
    consider(path);
  }
  return best;
}

}  // namespace cubetour
