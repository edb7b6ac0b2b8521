// patterns.hpp - structural classification of tours: quad shapes (squares and
// diamonds) and the cyclic order under value shifts.
#pragma once

#include <array>

#include "arrangement.hpp"
#include "geometry.hpp"
#include "symmetry.hpp"

namespace cubetour {

enum class PatternType { kSquaresAndDiamonds, kIrregular };

inline const char* to_string(PatternType p) {
  return p == PatternType::kSquaresAndDiamonds ? "squares_and_diamonds"
                                               : "irregular";
}

// Quad k holds values 4k+1..4k+4. Along a tour its three interior edges are
// knight moves already, so whether it closes into a knight 4-cycle is decided
// by the edge from value 4k+4 back to 4k+1. Planarity (all four cells in one
// axis-aligned plane) is recorded for inspection; it is what separates the
// classical "square" and "diamond" shapes but is not part of the type test.
struct Quad {
  std::array<Cell, 4> cells{};  // cells of values 4k+1..4k+4, in value order
  bool is_cycle = false;
  bool is_planar = false;
};

struct QuadReport {
  bool valid_tour = false;  // input was a knight tour; fields below meaningful
  std::array<Quad, 16> quads{};
  PatternType type = PatternType::kIrregular;
};

inline bool quad_is_cycle(const Arrangement& a, int k) {
  auto pos = positions(a);
  Cell c1 = pos[4 * k + 1], c2 = pos[4 * k + 2];
  Cell c3 = pos[4 * k + 3], c4 = pos[4 * k + 4];
  return knight_move(c1, c2) && knight_move(c2, c3) && knight_move(c3, c4) &&
         knight_move(c4, c1);
}

// Full quad analysis. For a non-tour the report comes back with
// valid_tour = false and the default (irregular) type.
inline QuadReport classify_pattern(const Arrangement& a) {
  QuadReport rep;
  rep.valid_tour = is_tour(a);
  if (!rep.valid_tour) return rep;
  auto pos = positions(a);
  bool all_cycles = true;
  for (int k = 0; k < 16; k++) {
    Quad& q = rep.quads[k];
    for (int j = 0; j < 4; j++) q.cells[j] = pos[4 * k + 1 + j];
    q.is_cycle = knight_move(q.cells[3], q.cells[0]);  // interior edges given
    all_cycles = all_cycles && q.is_cycle;
    for (int ax = 0; ax < 3 && !q.is_planar; ax++) {
      auto coord = [&](Cell c) {
        return ax == 0 ? layer_of(c) : ax == 1 ? row_of(c) : col_of(c);
      };
      q.is_planar = coord(q.cells[0]) == coord(q.cells[1]) &&
                    coord(q.cells[1]) == coord(q.cells[2]) &&
                    coord(q.cells[2]) == coord(q.cells[3]);
    }
  }
  rep.type =
      all_cycles ? PatternType::kSquaresAndDiamonds : PatternType::kIrregular;
  return rep;
}

inline PatternType pattern_type(const Arrangement& a) {
  return classify_pattern(a).type;
}

// Largest d dividing 64 such that shifting every value by 64/d reproduces a
// cube-symmetry image of the arrangement. Defined for closed tours (a shift
// renumbers the cycle); open tours are rejected with 0.
inline int cyclic_order(const Arrangement& a) {
  if (!is_closed_tour(a)) return 0;
  for (int d : {64, 32, 16, 8, 4, 2}) {
    Arrangement shifted = shift_values(a, kCells / d);
    for (int t = 0; t < kTransformCount; t++)
      if (apply_transform(t, a) == shifted) return d;
  }
  return 1;
}

}  // namespace cubetour
