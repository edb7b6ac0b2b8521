// geometry.hpp - 4x4x4 board model: cell indexing, knight moves, magic lines,
// space diagonals, corner subcubes. All tables are built at compile time.
#pragma once

#include <array>
#include <cstdint>

namespace cubetour {

using Cell = int;    // 0..63, index = 16*layer + 4*row + col
using Value = int;   // 1..64
using Mask = std::uint64_t;

inline constexpr int kSide = 4;
inline constexpr int kCells = 64;
inline constexpr int kLineCount = 48;
inline constexpr int kLineLen = 4;
inline constexpr int kDiagonalCount = 4;
inline constexpr int kSubcubeCount = 8;
inline constexpr int kMagicSum = 130;    // required sum of every orthogonal line
inline constexpr int kSubcubeSum = 260;  // 2x2x2 corner block sum, reported by the verifier
inline constexpr int kTotalSum = 2080;   // 1 + 2 + ... + 64

constexpr int layer_of(Cell c) { return c >> 4; }
constexpr int row_of(Cell c) { return (c >> 2) & 3; }
constexpr int col_of(Cell c) { return c & 3; }
constexpr Cell cell_at(int layer, int row, int col) {
  return 16 * layer + 4 * row + col;
}
constexpr bool in_range(Cell c) { return c >= 0 && c < kCells; }

// Cell color under the (layer+row+col) parity checkerboard. A knight move
// always flips it, so value parity is tied to color along any tour.
constexpr int color_of(Cell c) {
  return (layer_of(c) + row_of(c) + col_of(c)) & 1;
}

// A 3D knight move displaces one coordinate by 2, another by 1: the absolute
// coordinate deltas are {0, 1, 2} as a multiset.
constexpr bool knight_move(Cell a, Cell b) {
  int d0 = layer_of(a) - layer_of(b);
  int d1 = row_of(a) - row_of(b);
  int d2 = col_of(a) - col_of(b);
  if (d0 < 0) d0 = -d0;
  if (d1 < 0) d1 = -d1;
  if (d2 < 0) d2 = -d2;
  // sort the three deltas
  if (d0 > d1) { int t = d0; d0 = d1; d1 = t; }
  if (d1 > d2) { int t = d1; d1 = d2; d2 = t; }
  if (d0 > d1) { int t = d0; d0 = d1; d1 = t; }
  return d0 == 0 && d1 == 1 && d2 == 2;
}

inline constexpr std::array<Mask, kCells> kNeighborMask = [] {
  std::array<Mask, kCells> m{};
  for (Cell a = 0; a < kCells; a++)
    for (Cell b = 0; b < kCells; b++)
      if (knight_move(a, b)) m[a] |= Mask{1} << b;
  return m;
}();

constexpr int degree_of(Cell c) {
  int n = 0;
  for (Cell b = 0; b < kCells; b++)
    if (knight_move(c, b)) n++;
  return n;
}

// The 48 orthogonal lines, in a fixed id order:
//   0..15  pillars: fixed (row, col), row-major, varying layer
//   16..31 verticals: fixed (layer, col), layer-major, varying row
//   32..47 rows: fixed (layer, row), layer-major, varying col
inline constexpr std::array<std::array<Cell, kLineLen>, kLineCount> kLines = [] {
  std::array<std::array<Cell, kLineLen>, kLineCount> lines{};
  int n = 0;
  for (int r = 0; r < kSide; r++)
    for (int c = 0; c < kSide; c++, n++)
      for (int z = 0; z < kSide; z++) lines[n][z] = cell_at(z, r, c);
  for (int z = 0; z < kSide; z++)
    for (int c = 0; c < kSide; c++, n++)
      for (int r = 0; r < kSide; r++) lines[n][r] = cell_at(z, r, c);
  for (int z = 0; z < kSide; z++)
    for (int r = 0; r < kSide; r++, n++)
      for (int c = 0; c < kSide; c++) lines[n][c] = cell_at(z, r, c);
  return lines;
}();

inline constexpr std::array<Mask, kLineCount> kLineMask = [] {
  std::array<Mask, kLineCount> m{};
  for (int L = 0; L < kLineCount; L++)
    for (Cell c : kLines[L]) m[L] |= Mask{1} << c;
  return m;
}();

// Each cell lies on exactly three lines (one per direction).
inline constexpr std::array<std::array<int, 3>, kCells> kCellLines = [] {
  std::array<std::array<int, 3>, kCells> t{};
  std::array<int, kCells> cnt{};
  for (int L = 0; L < kLineCount; L++)
    for (Cell c : kLines[L]) t[c][cnt[c]++] = L;
  return t;
}();

// Space diagonals D1..D4: corner-to-corner runs (i,i,i), (i,i,3-i),
// (i,3-i,i), (i,3-i,3-i) in (layer,row,col) coordinates.
inline constexpr std::array<std::array<Cell, kLineLen>, kDiagonalCount> kDiagonals = [] {
  std::array<std::array<Cell, kLineLen>, kDiagonalCount> d{};
  for (int i = 0; i < kSide; i++) {
    d[0][i] = cell_at(i, i, i);
    d[1][i] = cell_at(i, i, 3 - i);
    d[2][i] = cell_at(i, 3 - i, i);
    d[3][i] = cell_at(i, 3 - i, 3 - i);
  }
  return d;
}();

// The eight 2x2x2 corner subcubes; id = 4*(layer half) + 2*(row half) + col half.
inline constexpr std::array<std::array<Cell, 8>, kSubcubeCount> kSubcubes = [] {
  std::array<std::array<Cell, 8>, kSubcubeCount> s{};
  for (int bz = 0; bz < 2; bz++)
    for (int br = 0; br < 2; br++)
      for (int bc = 0; bc < 2; bc++) {
        int id = 4 * bz + 2 * br + bc, j = 0;
        for (int z = 0; z < 2; z++)
          for (int r = 0; r < 2; r++)
            for (int c = 0; c < 2; c++)
              s[id][j++] = cell_at(2 * bz + z, 2 * br + r, 2 * bc + c);
      }
  return s;
}();

// Cells of odd color, as a mask.
inline constexpr Mask kOddColorMask = [] {
  Mask m = 0;
  for (Cell c = 0; c < kCells; c++)
    if (color_of(c)) m |= Mask{1} << c;
  return m;
}();

}  // namespace cubetour
