// verify.hpp - recompute every quantity of interest for an arrangement from
// scratch: line sums, diagonals, subcubes, tour structure, pattern type.
#pragma once

#include <array>

#include "arrangement.hpp"
#include "geometry.hpp"
#include "patterns.hpp"

namespace cubetour {

struct VerifyReport {
  bool is_permutation = false;
  bool is_tour = false;
  bool is_closed = false;
  bool ortho_magic = false;   // all 48 orthogonal line sums equal 130
  bool magic_tour = false;    // is_tour && ortho_magic
  bool diag_magic = false;    // ortho_magic plus all four space diagonals 130
  bool subcube_uniform = false;  // all eight 2x2x2 corner sums equal 260
  std::array<int, kLineCount> line_sums{};
  std::array<int, kDiagonalCount> diag_sums{};
  std::array<int, kSubcubeCount> subcube_sums{};
  PatternType pattern = PatternType::kIrregular;
};

inline VerifyReport verify(const Arrangement& a) {
  VerifyReport r;
  r.is_permutation = is_permutation(a);
  r.is_tour = is_tour(a);
  r.is_closed = is_closed_tour(a);
  r.ortho_magic = true;
  for (int L = 0; L < kLineCount; L++) {
    int s = 0;
    for (Cell c : kLines[L]) s += a[c];
    r.line_sums[L] = s;
    if (s != kMagicSum) r.ortho_magic = false;
  }
  r.magic_tour = r.is_tour && r.ortho_magic;
  r.diag_magic = r.ortho_magic;
  for (int d = 0; d < kDiagonalCount; d++) {
    int s = 0;
    for (Cell c : kDiagonals[d]) s += a[c];
    r.diag_sums[d] = s;
    if (s != kMagicSum) r.diag_magic = false;
  }
  r.subcube_uniform = true;
  for (int b = 0; b < kSubcubeCount; b++) {
    int s = 0;
    for (Cell c : kSubcubes[b]) s += a[c];
    r.subcube_sums[b] = s;
    if (s != kSubcubeSum) r.subcube_uniform = false;
  }
  r.pattern = pattern_type(a);
  return r;
}

}  // namespace cubetour
