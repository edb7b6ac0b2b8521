// cube-core: coordinates, the 3D knight move, and the precomputed incidence
// tables, each checked against an oracle recomputed here from first
// principles (coordinate arithmetic only, no reuse of the library tables).
#include <algorithm>
#include <array>
#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <vector>

#include "cubetour/arrangement.hpp"
#include "cubetour/geometry.hpp"

using namespace cubetour;

namespace {

// Oracle knight adjacency: brute force over the 24 signed permutations of
// (0,1,2) applied to coordinates.
bool oracle_adjacent(Cell a, Cell b) {
  int dz = layer_of(a) - layer_of(b);
  int dr = row_of(a) - row_of(b);
  int dc = col_of(a) - col_of(b);
  std::array<int, 3> d = {dz < 0 ? -dz : dz, dr < 0 ? -dr : dr,
                          dc < 0 ? -dc : dc};
  std::sort(d.begin(), d.end());
  return d == std::array<int, 3>{0, 1, 2};
}

}  // namespace

TEST_CASE("cell index is 16z + 4r + c and bijective") {
  CHECK(cell_at(0, 0, 0) == 0);
  CHECK(cell_at(3, 3, 3) == 63);
  CHECK(cell_at(1, 0, 0) == 16);
  for (Cell i = 0; i < kCells; i++) {
    CHECK(cell_at(layer_of(i), row_of(i), col_of(i)) == i);
    CHECK(layer_of(i) >= 0);
    CHECK(layer_of(i) <= 3);
    CHECK(row_of(i) >= 0);
    CHECK(row_of(i) <= 3);
    CHECK(col_of(i) >= 0);
    CHECK(col_of(i) <= 3);
  }
}

TEST_CASE("knight move rule: one axis fixed, others change by 1 and 2") {
  CHECK(knight_move(cell_at(0, 0, 0), cell_at(0, 1, 2)));
  CHECK_FALSE(knight_move(cell_at(0, 0, 0), cell_at(1, 1, 1)));
  for (Cell a = 0; a < kCells; a++)
    for (Cell b = 0; b < kCells; b++)
      CHECK(knight_move(a, b) == oracle_adjacent(a, b));
}

TEST_CASE("move table equals the coordinate oracle") {
  int total = 0;
  for (Cell a = 0; a < kCells; a++) {
    for (Cell b = 0; b < kCells; b++) {
      bool in_table = (kNeighborMask[a] >> b) & 1;
      CHECK(in_table == oracle_adjacent(a, b));
      total += in_table;
    }
    CHECK_FALSE((kNeighborMask[a] >> a) & 1);  // no self-loops
  }
  CHECK(total == 576);  // brute-force count over the 24 signed permutations
}

TEST_CASE("adjacency is symmetric") {
  for (Cell a = 0; a < kCells; a++)
    for (Cell b = 0; b < kCells; b++)
      CHECK(((kNeighborMask[a] >> b) & 1) == ((kNeighborMask[b] >> a) & 1));
}

TEST_CASE("degree table: corners 6, histogram 8/24/24/8") {
  CHECK(degree_of(cell_at(0, 0, 0)) == 6);
  std::array<int, 13> hist{};
  for (Cell c = 0; c < kCells; c++) {
    int d = degree_of(c);
    CHECK(d == __builtin_popcountll(kNeighborMask[c]));
    REQUIRE(d >= 6);
    REQUIRE(d <= 12);
    hist[d]++;
  }
  CHECK(hist[6] == 8);
  CHECK(hist[8] == 24);
  CHECK(hist[10] == 24);
  CHECK(hist[12] == 8);
}

TEST_CASE("48 orthogonal lines: 16 per axis, partitioning per axis") {
  REQUIRE(kLineCount == 48);
  // Oracle reconstruction: pillars (fixed r,c), verticals (fixed z,c),
  // rows (fixed z,r).
  std::set<std::set<Cell>> oracle;
  for (int r = 0; r < 4; r++)
    for (int c = 0; c < 4; c++)
      oracle.insert({cell_at(0, r, c), cell_at(1, r, c), cell_at(2, r, c),
                     cell_at(3, r, c)});
  for (int z = 0; z < 4; z++)
    for (int c = 0; c < 4; c++)
      oracle.insert({cell_at(z, 0, c), cell_at(z, 1, c), cell_at(z, 2, c),
                     cell_at(z, 3, c)});
  for (int z = 0; z < 4; z++)
    for (int r = 0; r < 4; r++)
      oracle.insert({cell_at(z, r, 0), cell_at(z, r, 1), cell_at(z, r, 2),
                     cell_at(z, r, 3)});
  REQUIRE(oracle.size() == 48);
  std::set<std::set<Cell>> table;
  for (int L = 0; L < kLineCount; L++)
    table.insert({kLines[L][0], kLines[L][1], kLines[L][2], kLines[L][3]});
  CHECK(table == oracle);
  // Each axis family of 16 lines partitions the 64 cells.
  for (int axis = 0; axis < 3; axis++) {
    std::set<Cell> covered;
    for (int L = 16 * axis; L < 16 * (axis + 1); L++)
      for (Cell c : kLines[L]) covered.insert(c);
    CHECK(covered.size() == (size_t)kCells);
  }
}

TEST_CASE("every cell lies in 3 lines, 1 subcube, 0 or 1 diagonals") {
  for (Cell c = 0; c < kCells; c++) {
    std::set<int> lines;
    for (int L = 0; L < kLineCount; L++)
      for (Cell x : kLines[L])
        if (x == c) lines.insert(L);
    CHECK(lines.size() == 3);
    CHECK(lines == std::set<int>{kCellLines[c][0], kCellLines[c][1],
                                 kCellLines[c][2]});
    int subcubes = 0;
    for (int b = 0; b < kSubcubeCount; b++)
      for (Cell x : kSubcubes[b]) subcubes += x == c;
    CHECK(subcubes == 1);
    int diags = 0;
    for (int d = 0; d < kDiagonalCount; d++)
      for (Cell x : kDiagonals[d]) diags += x == c;
    CHECK(diags <= 1);
  }
}

TEST_CASE("space diagonals follow the fixed D1..D4 parameterization") {
  for (int i = 0; i < 4; i++) {
    CHECK(kDiagonals[0][i] == cell_at(i, i, i));
    CHECK(kDiagonals[1][i] == cell_at(i, i, 3 - i));
    CHECK(kDiagonals[2][i] == cell_at(i, 3 - i, i));
    CHECK(kDiagonals[3][i] == cell_at(i, 3 - i, 3 - i));
  }
}

TEST_CASE("subcubes are the 8 corner-aligned 2x2x2 blocks") {
  std::set<std::set<Cell>> oracle;
  for (int z = 0; z < 4; z += 2)
    for (int r = 0; r < 4; r += 2)
      for (int c = 0; c < 4; c += 2) {
        std::set<Cell> block;
        for (int dz = 0; dz < 2; dz++)
          for (int dr = 0; dr < 2; dr++)
            for (int dc = 0; dc < 2; dc++)
              block.insert(cell_at(z + dz, r + dr, c + dc));
        oracle.insert(block);
      }
  std::set<std::set<Cell>> table;
  for (int b = 0; b < kSubcubeCount; b++)
    table.insert(std::set<Cell>(kSubcubes[b].begin(), kSubcubes[b].end()));
  CHECK(table == oracle);
  // The origin subcube contains exactly the cells with all coordinates < 2.
  std::set<Cell> origin(kSubcubes[0].begin(), kSubcubes[0].end());
  CHECK(origin == std::set<Cell>{0, 1, 4, 5, 16, 17, 20, 21});
}

TEST_CASE("color parity: knight moves alternate colors") {
  for (Cell a = 0; a < kCells; a++) {
    CHECK(color_of(a) == ((layer_of(a) + row_of(a) + col_of(a)) & 1));
    Mask m = kNeighborMask[a];
    while (m) {
      Cell b = __builtin_ctzll(m);
      m &= m - 1;
      CHECK(color_of(a) != color_of(b));
    }
  }
}

TEST_CASE("magic constants") {
  CHECK(kMagicSum == 130);
  CHECK(kTotalSum == 2080);
  CHECK(kSubcubeSum == 260);
  CHECK(kTotalSum == 64 * 65 / 2);
  CHECK(kMagicSum * 16 == kTotalSum);  // 16 lines per axis partition the sum
  CHECK(kSubcubeSum * 8 == kTotalSum);
}

TEST_CASE("arrangement helpers: permutation, positions, path round-trip") {
  Arrangement ident{};
  for (Cell c = 0; c < kCells; c++) ident[c] = (std::uint8_t)(c + 1);
  CHECK(is_permutation(ident));
  CHECK_FALSE(is_tour(ident));  // rook-adjacent consecutive cells
  auto pos = positions(ident);
  for (Cell c = 0; c < kCells; c++) CHECK(pos[ident[c]] == c);
  long sum = 0;
  for (auto v : ident) sum += v;
  CHECK(sum == kTotalSum);
  Arrangement bad = ident;
  bad[5] = bad[7];  // duplicate
  CHECK_FALSE(is_permutation(bad));
  CHECK(from_path(to_path(ident)) == ident);
}
