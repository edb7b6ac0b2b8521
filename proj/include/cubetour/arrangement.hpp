// arrangement.hpp - a labeling of the 64 cells with values 1..64, plus the
// tour predicates and the value-complement map.
#pragma once

#include <array>
#include <cstdint>

#include "geometry.hpp"

namespace cubetour {

// Values by cell: arr[cell] = value.
using Arrangement = std::array<std::uint8_t, kCells>;
// Cells by step: path[i] = cell visited at step i (value i+1).
using Path = std::array<Cell, kCells>;

inline bool is_permutation(const Arrangement& a) {
  std::array<bool, kCells + 1> seen{};
  for (auto v : a) {
    if (v < 1 || v > kCells || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Cell holding each value; only meaningful for permutations.
inline std::array<Cell, kCells + 1> positions(const Arrangement& a) {
  std::array<Cell, kCells + 1> pos{};
  for (Cell c = 0; c < kCells; c++) pos[a[c]] = c;
  return pos;
}

// A tour visits every cell once with consecutive values a knight move apart.
inline bool is_tour(const Arrangement& a) {
  if (!is_permutation(a)) return false;
  auto pos = positions(a);
  for (Value v = 1; v < kCells; v++)
    if (!knight_move(pos[v], pos[v + 1])) return false;
  return true;
}

// Closed (reentrant): the last cell is a knight move from the first.
inline bool is_closed_tour(const Arrangement& a) {
  if (!is_tour(a)) return false;
  auto pos = positions(a);
  return knight_move(pos[kCells], pos[1]);
}

// v -> 65-v. For a tour this reverses the direction of travel; it maps magic
// arrangements to magic arrangements because paired values sum to 65.
inline Arrangement complement(const Arrangement& a) {
  Arrangement r{};
  for (Cell c = 0; c < kCells; c++) r[c] = (std::uint8_t)(kCells + 1 - a[c]);
  return r;
}

inline Arrangement from_path(const Path& p) {
  Arrangement a{};
  for (int i = 0; i < kCells; i++) a[p[i]] = (std::uint8_t)(i + 1);
  return a;
}

inline Path to_path(const Arrangement& a) {
  auto pos = positions(a);
  Path p{};
  for (Value v = 1; v <= kCells; v++) p[v - 1] = pos[v];
  return p;
}

}  // namespace cubetour
