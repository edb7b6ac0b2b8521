#pragma once

// Exhaustive search for magic knight's tours on the 4x4x4 board.
//
// The search numbers cells from both ends of the value sequence at once:
// after placing 1 and 64 it extends with 2 or 63, then 3 or 62, and so on,
// always choosing the side with fewer candidate cells. The unplaced values
// therefore always form one contiguous interval, which keeps every line-sum
// bound tight: a line with e empty cells must reach 130 using e values from
// that interval.
//
// The pruning engine keeps a bitmask value domain per cell: dom[c] bit (v-1)
// set iff cell c can still hold value v. Because cells of a common line are
// never a knight move apart, two values in one line always differ by at least
// 2 ("separation"). That rule carves interior holes in the domains; bitmasks
// represent the holes exactly where interval bounds could only trim the edges.
//
// Pruning layers, applied per node:
//  - candidate masks for both next values (either side stuck kills the node)
//  - structural check: minimum degree 2 inside the empty region, both chain
//    ends reach every empty cell, ends close enough to join
//  - domain propagation to a fixpoint per line: exact pair propagation when
//    two cells remain (v works iff R-v survives in the partner's domain),
//    separation-aware min/max window sums and leave-one-out bounds for three
//    or four remaining cells, knight-distance clamps from both chain ends,
//    shadows of placed and pinned values, a Hall-style feasibility sweep of
//    the cell/value bijection, and value-support starvation checks
//  - placement checks: line completions, forced last values of lines,
//    separation from line-mates, parity of remaining line sums
//
// All bounds reason about *any* completion of the current state, so every
// prune is sound: the engine enumerates exactly the magic tours reachable
// from its start specification.

#include <array>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "cubetour/arrangement.hpp"
#include "cubetour/geometry.hpp"
#include "cubetour/symmetry.hpp"

namespace cubetour {

enum class SearchMode { kAll, kClosed, kOpen };

// Which (cell of 1, cell of 64) pairs to root the search at. kAllCells
// enumerates every magic arrangement exactly once (each arrangement is found
// at its own start/end pair). kOrbitRepresentatives keeps one pair per orbit
// under the 48 cube transforms: a faster run that still finds at least one
// member of every symmetry class, so any census built from it is identical.
enum class StartPolicy { kAllCells, kOrbitRepresentatives };

struct SearchConfig {
  SearchMode mode = SearchMode::kAll;
  StartPolicy starts = StartPolicy::kAllCells;
  // Restrict to completions of this path prefix (cells of values 1, 2, ...).
  // Empty means unrestricted; starts is ignored when a prefix is given.
  std::vector<Cell> prefix;
  int threads = 1;
  int split_depth = 0;  // forced low-chain moves per task (parallel grain)
  // Prune subtrees equivalent under the stabilizer of the placed cells.
  // Class-complete (every symmetry class still appears) but no longer
  // arrangement-complete; meant for census runs, not for plain search.
  bool orbit_branch = false;
};

// A unit of search work: the fixed cells of values 1 and 64, plus an optional
// forced stem for values 2, 3, ... (used to split one pair into many tasks).
struct SearchTask {
  Cell s1 = 0;
  Cell s64 = 0;
  std::vector<Cell> low_stem;
};

// Tasks covering all completions of a path prefix (cells of values 1..k).
// The cell of value 64 is not part of a proper prefix, so one task is made
// per admissible end cell; value 64 always lands on the color opposite the
// start (values alternate colors along knight moves). A full 64-cell prefix
// yields the single fully pinned task.
inline std::vector<SearchTask> prefix_tasks(const std::vector<Cell>& prefix) {
  std::vector<SearchTask> out;
  if (prefix.empty()) return out;
  if ((int)prefix.size() == kCells) {
    SearchTask t;
    t.s1 = prefix.front();
    t.s64 = prefix.back();
    t.low_stem.assign(prefix.begin() + 1, prefix.end() - 1);
    out.push_back(t);
    return out;
  }
  SearchTask t;
  t.s1 = prefix.front();
  t.low_stem.assign(prefix.begin() + 1, prefix.end());
  int want = color_of(prefix.front()) ^ 1;
  for (Cell e = 0; e < kCells; e++) {
    if (color_of(e) != want) continue;
    bool used = false;
    for (Cell c : prefix) used = used || c == e;
    if (used) continue;
    t.s64 = e;
    out.push_back(t);
  }
  return out;
}

namespace detail {

using u8 = std::uint8_t;

// value-mask helpers: value v <-> bit v-1
constexpr Mask vbit(int v) { return Mask{1} << (v - 1); }
// values in [a,b] clamped to 1..64; empty when a > b
constexpr Mask vrange(int a, int b) {
  if (a < 1) a = 1;
  if (b > 64) b = 64;
  if (a > b) return 0;
  Mask m = ~Mask{0} << (a - 1);
  if (b < 64) m &= (Mask{1} << b) - 1;
  return m;
}
inline constexpr Mask kOddValues = 0x5555555555555555ull;  // 1, 3, ..., 63

// kExcl3[v]: mask clearing values v-1, v, v+1 (separation from a line-mate)
inline constexpr std::array<Mask, 65> kExcl3 = [] {
  std::array<Mask, 65> t{};
  for (int v = 1; v <= 64; v++) {
    Mask m = vbit(v);
    if (v > 1) m |= vbit(v - 1);
    if (v < 64) m |= vbit(v + 1);
    t[v] = ~m;
  }
  return t;
}();

// kSelfPair[R]: values v with |v - (R - v)| < 2; such a v cannot complete a
// two-cell remainder R because its partner would violate separation.
inline constexpr std::array<Mask, 132> kSelfPair = [] {
  std::array<Mask, 132> t{};
  for (int R = 0; R < 132; R++) {
    Mask m = 0;
    if ((R & 1) == 0) {
      if (R / 2 >= 1 && R / 2 <= 64) m |= vbit(R / 2);
    } else {
      if ((R - 1) / 2 >= 1 && (R - 1) / 2 <= 64) m |= vbit((R - 1) / 2);
      if ((R + 1) / 2 >= 1 && (R + 1) / 2 <= 64) m |= vbit((R + 1) / 2);
    }
    t[R] = m;
  }
  return t;
}();

constexpr Mask bitrev64(Mask x) {
  x = (x >> 32) | (x << 32);
  x = ((x & 0xFFFF0000FFFF0000ull) >> 16) | ((x & 0x0000FFFF0000FFFFull) << 16);
  x = ((x & 0xFF00FF00FF00FF00ull) >> 8) | ((x & 0x00FF00FF00FF00FFull) << 8);
  x = ((x & 0xF0F0F0F0F0F0F0F0ull) >> 4) | ((x & 0x0F0F0F0F0F0F0F0Full) << 4);
  x = ((x & 0xCCCCCCCCCCCCCCCCull) >> 2) | ((x & 0x3333333333333333ull) << 2);
  x = ((x & 0xAAAAAAAAAAAAAAAAull) >> 1) | ((x & 0x5555555555555555ull) << 1);
  return x;
}

// values v such that R - v lies in m (v and R-v both within 1..64)
constexpr Mask pair_complement(Mask m, int R) {
  Mask b = bitrev64(m);
  return R <= 65 ? b >> (65 - R) : b << (R - 65);
}

// minimal added sum when e values must be pairwise >= 2 apart: 0+2+...+2(e-1)
inline constexpr int kSepTri[5] = {0, 1, 3, 6, 10};

constexpr Mask rotl64(Mask x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// One search instance; not shareable between threads, but cheap to reuse for
// many tasks. Emits every completed arrangement matching the mode to the sink.
class Searcher {
 public:
  using Sink = std::function<void(const Arrangement&)>;

  Searcher(SearchMode mode, Sink sink) : mode_(mode), sink_(std::move(sink)) {
    dtrail_.resize(std::size_t{1} << 16);
    trail_.resize(std::size_t{1} << 12);
  }

  void set_orbit_branch(bool on) { orbit_branch_ = on; }
  void set_node_budget(long long budget) { node_budget_ = budget; }
  // Optional external stop signal (checked once per node).
  void set_cancel(const std::atomic<bool>* flag) { cancel_ = flag; }
  long long nodes() const { return nodes_; }
  // True when the last run stopped before exhausting its tree (node budget
  // reached or cancel flag raised); results so far are sound but incomplete.
  bool stopped_early() const { return budget_hit_; }

  // Exhausts the tree under the given start/end cells.
  void run_pair(Cell s1, Cell s64) { run_task({s1, s64, {}}); }

  // Exhausts the tree under a pair plus a forced low stem (cells of values
  // 2, 3, ... in order). A stem the pruning rejects simply yields no results.
  void run_task(const SearchTask& task) {
    if (!init_root(task.s1, task.s64)) return;
    int lo = 1;
    for (Cell c : task.low_stem) {
      if (!place_step(c, lo + 1, lo + 1, 64)) return;
      lo++;
    }
    dfs(lo, 64);
  }

  // Exhausts all completions of a path prefix (cells of values 1..k); the
  // cell of value 64 is not fixed, so every admissible end cell is tried.
  void run_prefix(const std::vector<Cell>& prefix) {
    for (const SearchTask& task : prefix_tasks(prefix)) run_task(task);
  }

 private:
  using u8 = detail::u8;

  // ---- configuration ----
  SearchMode mode_;
  Sink sink_;
  bool orbit_branch_ = false;
  long long node_budget_ = 0x7fffffffffffffffll;
  const std::atomic<bool>* cancel_ = nullptr;
  bool budget_hit_ = false;
  long long nodes_ = 0;

  // ---- placement state ----
  Mask occupied_ = 0;
  std::array<int, 66> pos_{};     // pos_[v] = cell of value v, -1 unplaced
  std::array<u8, kCells> val_{};  // val_[c] = value at cell c, 0 if empty
  std::array<int, kLineCount> filled_{}, lsum_{};
  int start_col_ = 0;  // color of the cell of value 1

  // ---- forced cells (pins) ----
  std::array<u8, kCells> forced_val_{};
  std::array<int, 66> forced_cell_{};
  Mask forced_mask_ = 0;
  struct TrailEntry {
    u8 cell;
    u8 val;
  };
  std::vector<TrailEntry> trail_;
  int trail_top_ = 0;
  int shadow_mark_ = 0;  // trail index below which pin shadows are cast

  // ---- bitmask domains ----
  std::array<Mask, kCells> dom_{};
  struct DomTrail {
    u8 c;
    Mask old;
  };
  std::vector<DomTrail> dtrail_;
  int dtrail_top_ = 0;
  std::array<u8, kLineCount> ldirty_{};
  std::array<Mask, kLineCount> lsig_{};  // line state when last processed
  std::array<int, kCells> dist_lo_{}, dist_hi_{};

  // ---- orbit branching (census) ----
  std::array<int, kTransformCount> act_list_{};
  int act_cnt_ = 0;

  // ---- Hall sweep scratch ----
  int by_lo_[70][kLineCount];
  int n_by_lo_[70];
  int heap_[72];

  static constexpr int kRounds = 8;

  void mark_lines(Cell c) {
    ldirty_[kCellLines[c][0]] = 1;
    ldirty_[kCellLines[c][1]] = 1;
    ldirty_[kCellLines[c][2]] = 1;
  }

  // Captures everything the line pass reads: the four domains, the fill count
  // and sum, and which of the line's cells are occupied. Equal signature =>
  // the pass would recompute exactly what it computed last time.
  Mask line_sig(int L) const {
    Mask s = (Mask)(filled_[L] + (lsum_[L] << 3)) * 0x9E3779B97F4A7C15ull;
    s ^= detail::rotl64(kLineMask[L] & occupied_, 7);
    s ^= dom_[kLines[L][0]];
    s ^= detail::rotl64(dom_[kLines[L][1]], 13);
    s ^= detail::rotl64(dom_[kLines[L][2]], 27);
    s ^= detail::rotl64(dom_[kLines[L][3]], 41);
    return s | 1;
  }

  // dom_[c] &= m, trailed and line-dirtying; false when the domain dies
  bool and_dom(Cell c, Mask m) {
    Mask nd = dom_[c] & m;
    if (nd == dom_[c]) return true;
    if (dtrail_top_ == (int)dtrail_.size()) dtrail_.resize(dtrail_.size() * 2);
    dtrail_[dtrail_top_] = {(u8)c, dom_[c]};
    dtrail_top_++;
    dom_[c] = nd;
    mark_lines(c);
    return nd != 0;
  }
  void undo_domains(int mark) {
    while (dtrail_top_ > mark) {
      dtrail_top_--;
      dom_[dtrail_[dtrail_top_].c] = dtrail_[dtrail_top_].old;
    }
  }
  int dom_lo(Cell c) const { return __builtin_ctzll(dom_[c]) + 1; }
  int dom_hi(Cell c) const { return 64 - __builtin_clzll(dom_[c]); }

  // Consecutive values must sit on knight-adjacent cells; check v against the
  // settled (placed or pinned) cells of v-1 and v+1.
  bool chain_ok(Value f, Cell c) const {
    if (f > 1) {
      int lo = pos_[f - 1] >= 0 ? pos_[f - 1] : forced_cell_[f - 1];
      if (lo >= 0 && !((kNeighborMask[lo] >> c) & 1)) return false;
    }
    if (f < 64) {
      int hi = pos_[f + 1] >= 0 ? pos_[f + 1] : forced_cell_[f + 1];
      if (hi >= 0 && !((kNeighborMask[hi] >> c) & 1)) return false;
    }
    return true;
  }

  void apply_lines(Cell c, Value v) {
    mark_lines(c);
    for (int j = 0; j < 3; j++) {
      int L = kCellLines[c][j];
      filled_[L]++;
      lsum_[L] += v;
    }
  }
  void unapply_lines(Cell c, Value v) {
    for (int j = 0; j < 3; j++) {
      int L = kCellLines[c][j];
      filled_[L]--;
      lsum_[L] -= v;
    }
  }

  void push_trail(Cell c, Value v) {
    if (trail_top_ == (int)trail_.size()) trail_.resize(trail_.size() * 2);
    trail_[trail_top_] = {(u8)c, (u8)v};
    trail_top_++;
  }

  void undo_to(int mark) {
    while (trail_top_ > mark) {
      trail_top_--;
      forced_val_[trail_[trail_top_].cell] = 0;
      forced_cell_[trail_[trail_top_].val] = -1;
      forced_mask_ &= ~(Mask{1} << trail_[trail_top_].cell);
    }
    if (shadow_mark_ > trail_top_) shadow_mark_ = trail_top_;
  }

  // lo = largest small value placed, hi = smallest large value placed.
  // All checks after placing value v at cell c. Writes the separation
  // exclusions of v into the empty line-mates' domains.
  bool checks_after(Cell c, Value v, int lo, int hi) {
    using detail::kExcl3;
    using detail::kSepTri;
    for (int j = 0; j < 3; j++) {
      int L = kCellLines[c][j];
      Mask em = kLineMask[L] & ~occupied_;
      while (em) {
        Cell mc = __builtin_ctzll(em);
        em &= em - 1;
        if (!and_dom(mc, kExcl3[v])) return false;
        if (forced_val_[mc] && !(dom_[mc] >> (forced_val_[mc] - 1) & 1))
          return false;
      }
    }
    for (int j = 0; j < 3; j++) {
      int L = kCellLines[c][j];
      int e = 4 - filled_[L], R = kMagicSum - lsum_[L];
      if (e == 0) {
        if (R != 0) return false;
      } else if (e == 1) {
        if (R <= lo || R >= hi) return false;
        Mask em = kLineMask[L] & ~occupied_;
        Cell ec = __builtin_ctzll(em);
        if (!(dom_[ec] >> (R - 1) & 1)) return false;  // holes, parity, separation
        if (forced_val_[ec]) {
          if (forced_val_[ec] != R) return false;
        } else if (forced_cell_[R] >= 0) {
          return false;
        } else {
          if (!chain_ok(R, ec)) return false;
          forced_val_[ec] = (u8)R;
          forced_cell_[R] = ec;
          forced_mask_ |= Mask{1} << ec;
          push_trail(ec, R);
        }
      } else {
        if (R < e * lo + kSepTri[e] || R > e * hi - kSepTri[e]) return false;
        // parity: the number of odd values still owed equals the number of
        // empty cells of the start color (odd values live on the start color)
        Mask em = kLineMask[L] & ~occupied_;
        int nodd = start_col_ ? __builtin_popcountll(em & kOddColorMask)
                              : __builtin_popcountll(em & ~kOddColorMask);
        if ((R & 1) != (nodd & 1)) return false;
      }
    }
    // global interval scan over all lines
    int thlo[5], thhi[5];
    for (int f = 0; f <= 4; f++) {
      int e = 4 - f;
      thlo[f] = kMagicSum - (e * hi - kSepTri[e]);  // lsum must be >= this
      thhi[f] = kMagicSum - (e * lo + kSepTri[e]);  // lsum must be <= this
    }
    for (int L = 0; L < kLineCount; L++) {
      int f = filled_[L];
      if (lsum_[L] < thlo[f] || lsum_[L] > thhi[f]) return false;
    }
    return true;
  }

  // BFS through the empty region from chain endpoint `from`; writes hop counts
  // into d[] for every empty cell and for the opposite endpoint `other` (which
  // is discovered but not expanded through). False if anything is unreachable.
  bool bfs_region(Cell from, Cell other, int* d) const {
    Mask empty = ~occupied_;
    Mask targets = empty | (Mask{1} << other);
    Mask seen = Mask{1} << from, frontier = seen, covered = 0;
    int dist = 0;
    while (frontier) {
      dist++;
      Mask nxt = 0, f = frontier;
      while (f) {
        Cell c = __builtin_ctzll(f);
        f &= f - 1;
        nxt |= kNeighborMask[c];
      }
      nxt &= targets & ~seen;
      f = nxt;
      while (f) {
        Cell c = __builtin_ctzll(f);
        f &= f - 1;
        d[c] = dist;
      }
      seen |= nxt;
      covered |= nxt;
      frontier = nxt & ~(Mask{1} << other);
    }
    return (covered & targets) == targets;
  }

  // Structural feasibility of the remaining region: every empty cell keeps
  // >= 2 links into empties/endpoints, both ends reach every empty cell, and
  // the ends are close enough to join with the moves that remain.
  bool struct_ok(Cell le, Cell he, int lo, int hi) {
    Mask empty = ~occupied_;
    Mask avail = empty | (Mask{1} << le) | (Mask{1} << he);
    Mask rem = empty;
    while (rem) {
      Cell c = __builtin_ctzll(rem);
      rem &= rem - 1;
      if (__builtin_popcountll(kNeighborMask[c] & avail) < 2) return false;
    }
    if (!bfs_region(le, he, dist_lo_.data())) return false;
    if (!bfs_region(he, le, dist_hi_.data())) return false;
    return dist_lo_[he] <= hi - lo;
  }

  // A pinned value v at cell pc: v leaves every other domain, and cells not
  // knight-adjacent to pc lose v-1 and v+1 as well (consecutive values sit on
  // knight-adjacent cells).
  bool pin_shadow(Cell pc, Value v) {
    Mask m = ~occupied_ & ~(Mask{1} << pc);
    Mask keep = kNeighborMask[pc];
    while (m) {
      Cell c2 = __builtin_ctzll(m);
      m &= m - 1;
      if (forced_val_[c2]) continue;
      if (!and_dom(c2, (keep >> c2) & 1 ? ~detail::vbit(v) : detail::kExcl3[v]))
        return false;
    }
    return true;
  }

  bool make_pin(Cell c, Value v) {
    if (forced_cell_[v] >= 0) return false;  // same value pinned elsewhere
    if (!chain_ok(v, c)) return false;
    forced_val_[c] = (u8)v;
    forced_cell_[v] = c;
    forced_mask_ |= Mask{1} << c;
    push_trail(c, v);
    shadow_mark_ = trail_top_;  // cast this shadow now, not again on re-entry
    if (!and_dom(c, detail::vbit(v))) return false;  // collapse the pinned domain
    return pin_shadow(c, v);
  }

  // Interval Hall check on the domain envelopes: the remaining sum must be
  // attainable and the cell/value bijection realizable (greedy min-heap sweep).
  bool hall_ok(int lo, int hi) {
    int srem = kTotalSum;
    for (int v = 1; v <= lo; v++) srem -= v;
    for (int v = hi; v <= 64; v++) srem -= v;
    long slo = 0, shi = 0;
    for (int v = lo + 1; v < hi; v++) n_by_lo_[v] = 0;
    Mask rem = ~occupied_;
    while (rem) {
      Cell c = __builtin_ctzll(rem);
      rem &= rem - 1;
      int a = dom_lo(c), b = dom_hi(c);
      slo += a;
      shi += b;
      by_lo_[a][n_by_lo_[a]++] = b;
    }
    if (srem < slo || srem > shi) return false;
    int hn = 0;
    for (int v = lo + 1; v < hi; v++) {
      for (int j = 0; j < n_by_lo_[v]; j++) {
        int x = by_lo_[v][j], i = hn++;
        while (i && heap_[(i - 1) / 2] > x) {
          heap_[i] = heap_[(i - 1) / 2];
          i = (i - 1) / 2;
        }
        heap_[i] = x;
      }
      if (!hn) return false;
      if (heap_[0] < v) return false;
      int x = heap_[--hn], i = 0;
      while (true) {
        int l = 2 * i + 1, r = l + 1, s = -1;
        if (l < hn && heap_[l] < x) s = l;
        if (r < hn && heap_[r] < x && (s < 0 || heap_[r] < heap_[l])) s = r;
        if (s < 0) break;
        heap_[i] = heap_[s];
        i = s;
      }
      if (hn) heap_[i] = x;
    }
    return hn == 0;
  }

  static void swap_int(int& a, int& b) {
    int t = a;
    a = b;
    b = t;
  }

  bool domains_ok(int lo, int hi) {
    using detail::pair_complement;
    using detail::vrange;
    Mask empty = ~occupied_;
    // pins created since the previous domains run (the e==1 forcing path in
    // checks_after): collapse their domains and cast their shadows
    while (shadow_mark_ < trail_top_) {
      Cell c = trail_[shadow_mark_].cell;
      Value v = trail_[shadow_mark_].val;
      shadow_mark_++;
      if (!(dom_[c] >> (v - 1) & 1)) return false;
      if (!and_dom(c, detail::vbit(v))) return false;
      if (!pin_shadow(c, v)) return false;
    }
    // distance clamps from the two current chain ends: a cell k hops away
    // from an end cannot hold a value nearer than k to that end's value
    Mask rem = empty;
    while (rem) {
      Cell c = __builtin_ctzll(rem);
      rem &= rem - 1;
      if (forced_val_[c]) {
        int v = forced_val_[c];
        if (v < lo + dist_lo_[c] || v > hi - dist_hi_[c]) return false;
        continue;
      }
      if (!and_dom(c, vrange(lo + dist_lo_[c], hi - dist_hi_[c]))) return false;
    }
    for (int round = 0; round < kRounds; round++) {
      int mark0 = dtrail_top_ + trail_top_;
      for (int L = 0; L < kLineCount; L++) {
        if (!ldirty_[L]) continue;
        ldirty_[L] = 0;
        int e = 4 - filled_[L];
        if (e == 0) continue;
        Mask sg = line_sig(L);
        if (sg == lsig_[L]) continue;  // nothing this pass reads has changed
        int R = kMagicSum - lsum_[L];
        Cell cells[4];
        int n = 0;
        Mask em = kLineMask[L] & empty;
        while (em) {
          Cell c = __builtin_ctzll(em);
          em &= em - 1;
          cells[n++] = c;
        }
        if (n == 1) continue;  // settled by the e==1 forcing in checks_after
        if (n == 2) {
          // exact pair propagation: v works iff R-v is in the partner's
          // domain and the two values are not within 1 of each other
          Cell a = cells[0], b = cells[1];
          if (!and_dom(a, pair_complement(dom_[b], R) & ~detail::kSelfPair[R]))
            return false;
          if (!and_dom(b, pair_complement(dom_[a], R) & ~detail::kSelfPair[R]))
            return false;
          lsig_[L] = line_sig(L);  // pair filter is at fixpoint after one pass
        } else if (n == 3) {
          // min/max achievable line sums keep remaining values pairwise >= 2
          // apart; with three cells the leave-one-out bounds have closed forms
          int l0 = dom_lo(cells[0]), l1 = dom_lo(cells[1]), l2 = dom_lo(cells[2]);
          int h0 = dom_hi(cells[0]), h1 = dom_hi(cells[1]), h2 = dom_hi(cells[2]);
          int a0 = l0, a1 = l1, a2 = l2;  // ascending
          if (a0 > a1) swap_int(a0, a1);
          if (a1 > a2) swap_int(a1, a2);
          if (a0 > a1) swap_int(a0, a1);
          int d0 = h0, d1 = h1, d2 = h2;  // descending
          if (d0 < d1) swap_int(d0, d1);
          if (d1 < d2) swap_int(d1, d2);
          if (d0 < d1) swap_int(d0, d1);
          int t1 = a1 > a0 + 2 ? a1 : a0 + 2;
          int t2 = a2 > t1 + 2 ? a2 : t1 + 2;
          int u1 = d1 < d0 - 2 ? d1 : d0 - 2;
          int u2 = d2 < u1 - 2 ? d2 : u1 - 2;
          if (R < a0 + t1 + t2 || R > d0 + u1 + u2) return false;
          // leave-one-out pair bounds, one per excluded rank
          int oLo[3] = {a1 + (a2 > a1 + 2 ? a2 : a1 + 2),
                        a0 + (a2 > a0 + 2 ? a2 : a0 + 2),
                        a0 + (a1 > a0 + 2 ? a1 : a0 + 2)};
          int oHi[3] = {d1 + (d2 < d1 - 2 ? d2 : d1 - 2),
                        d0 + (d2 < d0 - 2 ? d2 : d0 - 2),
                        d0 + (d1 < d0 - 2 ? d1 : d0 - 2)};
          bool broke = false;
          for (int j = 0; j < 3; j++) {
            Cell c = cells[j];
            int ml = j == 0 ? l0 : j == 1 ? l1 : l2;
            int mh = j == 0 ? h0 : j == 1 ? h1 : h2;
            int iL = ml == a0 ? 0 : ml == a1 ? 1 : 2;
            int iH = mh == d0 ? 0 : mh == d1 ? 1 : 2;
            if (!and_dom(c, vrange(R - oHi[iH], R - oLo[iL]))) return false;
            // A domain shrunk to a point pins at once. The pin's shadow can
            // move other domains in this line, invalidating the bounds above,
            // so leave the rest of the line to the next round (dirty again).
            if (!forced_val_[c] && !(dom_[c] & (dom_[c] - 1))) {
              if (!make_pin(c, dom_lo(c))) return false;
              broke = true;
              break;
            }
          }
          lsig_[L] = broke ? 0 : line_sig(L);
        } else {
          // four empty cells: window check only (5-compare sorting networks)
          int q0 = dom_lo(cells[0]), q1 = dom_lo(cells[1]), q2 = dom_lo(cells[2]),
              q3 = dom_lo(cells[3]);
          if (q0 > q1) swap_int(q0, q1);
          if (q2 > q3) swap_int(q2, q3);
          if (q0 > q2) swap_int(q0, q2);
          if (q1 > q3) swap_int(q1, q3);
          if (q1 > q2) swap_int(q1, q2);
          int w0 = dom_hi(cells[0]), w1 = dom_hi(cells[1]), w2 = dom_hi(cells[2]),
              w3 = dom_hi(cells[3]);
          if (w0 < w1) swap_int(w0, w1);
          if (w2 < w3) swap_int(w2, w3);
          if (w0 < w2) swap_int(w0, w2);
          if (w1 < w3) swap_int(w1, w3);
          if (w1 < w2) swap_int(w1, w2);
          int t1 = q1 > q0 + 2 ? q1 : q0 + 2;
          int t2 = q2 > t1 + 2 ? q2 : t1 + 2;
          int t3 = q3 > t2 + 2 ? q3 : t2 + 2;
          int u1 = w1 < w0 - 2 ? w1 : w0 - 2;
          int u2 = w2 < u1 - 2 ? w2 : u1 - 2;
          int u3 = w3 < u2 - 2 ? w3 : u2 - 2;
          if (R < q0 + t1 + t2 + t3 || R > w0 + u1 + u2 + u3) return false;
          lsig_[L] = sg;
        }
      }
      if (dtrail_top_ + trail_top_ == mark0) break;
    }
    if (!hall_ok(lo, hi)) return false;
    // value support: every unplaced value needs a live cell; a value with
    // exactly one supporting cell pins there
    {
      Mask seen1 = 0, seen2 = 0;
      rem = empty;
      while (rem) {
        Cell c = __builtin_ctzll(rem);
        rem &= rem - 1;
        seen2 |= seen1 & dom_[c];
        seen1 |= dom_[c];
      }
      Mask need = vrange(lo + 1, hi - 1);
      if (need & ~seen1) return false;  // starved value
      Mask single = need & seen1 & ~seen2;
      while (single) {
        Value v = __builtin_ctzll(single) + 1;
        single &= single - 1;
        if (forced_cell_[v] >= 0) continue;
        Mask r2 = empty;
        Cell pc = -1;
        while (r2) {
          Cell c = __builtin_ctzll(r2);
          r2 &= r2 - 1;
          if (dom_[c] >> (v - 1) & 1) {
            pc = c;
            break;
          }
        }
        if (pc < 0) return false;
        if (forced_val_[pc]) continue;
        if (!make_pin(pc, v)) return false;
      }
    }
    rem = empty & ~forced_mask_;
    while (rem) {
      Cell c = __builtin_ctzll(rem);
      rem &= rem - 1;
      if (!(dom_[c] & (dom_[c] - 1)) && !make_pin(c, dom_lo(c))) return false;
    }
    return true;
  }

  // candidate cells for value v next to `anchor`
  Mask cmask(Value v, Cell anchor) const {
    Mask m = forced_cell_[v] >= 0
                 ? kNeighborMask[anchor] & (Mask{1} << forced_cell_[v])
                 : kNeighborMask[anchor] & ~occupied_ & ~forced_mask_;
    Mask out = 0;
    while (m) {
      Cell c = __builtin_ctzll(m);
      m &= m - 1;
      if (dom_[c] >> (v - 1) & 1) out |= Mask{1} << c;
    }
    return out;
  }

  // Fail-first side policy: branch on the side with fewer candidates; break
  // ties toward keeping the two chains balanced.
  static bool pick_low(int lo, int hi, Mask cl, Mask ch) {
    int ncl = __builtin_popcountll(cl), nch = __builtin_popcountll(ch);
    return ncl != nch ? ncl < nch : (lo - 1) <= (64 - hi);
  }

  void dfs(int lo, int hi) {
    if (nodes_ >= node_budget_ ||
        (cancel_ && cancel_->load(std::memory_order_relaxed))) {
      budget_hit_ = true;
      return;
    }
    nodes_++;
    if (hi - lo == 1) {  // all placed; join edge between lo and hi=lo+1
      if (!((kNeighborMask[pos_[lo]] >> pos_[hi]) & 1)) return;
      bool closed = (kNeighborMask[pos_[64]] >> pos_[1]) & 1;
      if ((mode_ == SearchMode::kClosed && !closed) ||
          (mode_ == SearchMode::kOpen && closed))
        return;
      Arrangement arr{};
      for (int x = 1; x <= 64; x++) arr[pos_[x]] = (u8)x;
      sink_(arr);
      return;
    }
    int vl = lo + 1, vh = hi - 1;
    Mask cl = cmask(vl, pos_[lo]), ch = cmask(vh, pos_[hi]);
    if (!cl || !ch) return;
    if (!struct_ok(pos_[lo], pos_[hi], lo, hi)) return;
    if (!domains_ok(lo, hi)) return;
    cl = cmask(vl, pos_[lo]), ch = cmask(vh, pos_[hi]);  // pins may restrict
    if (!cl || !ch) return;
    bool low_turn = pick_low(lo, hi, cl, ch);
    int nv = low_turn ? vl : vh;
    Mask cand = low_turn ? cl : ch;
    int nlo = low_turn ? nv : lo, nhi = low_turn ? hi : nv;
    if (act_cnt_ > 1) {
      // keep only candidates minimal in their orbit under the active
      // stabilizer; a skipped cell's subtree is the image of its minimum's
      Mask keep = 0, m = cand;
      while (m) {
        Cell c = __builtin_ctzll(m);
        m &= m - 1;
        int r = c;
        for (int i = 1; i < act_cnt_; i++) {
          int ic = kTransformMap[act_list_[i]][c];
          if (ic < r) r = ic;
        }
        if (r == c) keep |= Mask{1} << c;
      }
      cand = keep;
    }
    while (cand) {
      Cell c = __builtin_ctzll(cand);
      cand &= cand - 1;
      if (!chain_ok(nv, c)) continue;
      int save = trail_top_, dsave = dtrail_top_;
      int saved_act[kTransformCount], saved_cnt = act_cnt_;
      if (act_cnt_ > 1) {
        std::memcpy(saved_act, act_list_.data(), act_cnt_ * sizeof(int));
        int k = 0;
        for (int i = 0; i < act_cnt_; i++)
          if (kTransformMap[act_list_[i]][c] == c) act_list_[k++] = act_list_[i];
        act_cnt_ = k;
      }
      occupied_ |= Mask{1} << c;
      pos_[nv] = c;
      val_[c] = (u8)nv;
      apply_lines(c, nv);
      if (checks_after(c, nv, nlo, nhi)) dfs(nlo, nhi);
      undo_to(save);
      undo_domains(dsave);
      unapply_lines(c, nv);
      occupied_ &= ~(Mask{1} << c);
      pos_[nv] = -1;
      val_[c] = 0;
      if (saved_cnt > 1) {
        std::memcpy(act_list_.data(), saved_act, saved_cnt * sizeof(int));
        act_cnt_ = saved_cnt;
      }
    }
  }

  // shared root initialization for a pair (cell of 1, cell of 64)
  bool init_root(Cell s, Cell s64) {
    if (s == s64 || color_of(s) == color_of(s64)) return false;
    start_col_ = color_of(s);
    occupied_ = (Mask{1} << s) | (Mask{1} << s64);
    filled_.fill(0);
    lsum_.fill(0);
    forced_val_.fill(0);
    val_.fill(0);
    forced_mask_ = 0;
    forced_cell_.fill(-1);
    pos_.fill(-1);
    trail_top_ = 0;
    dtrail_top_ = 0;
    shadow_mark_ = 0;
    ldirty_.fill(1);
    lsig_.fill(0);
    budget_hit_ = false;
    for (Cell i = 0; i < kCells; i++)
      dom_[i] =
          color_of(i) == start_col_ ? detail::kOddValues : ~detail::kOddValues;
    act_cnt_ = 1;
    act_list_[0] = 0;
    if (orbit_branch_) {
      act_cnt_ = 0;
      for (int t = 0; t < kTransformCount; t++)
        if (kTransformMap[t][s] == s && kTransformMap[t][s64] == s64)
          act_list_[act_cnt_++] = t;
    }
    pos_[1] = s;
    pos_[64] = s64;
    val_[s] = 1;
    val_[s64] = 64;
    apply_lines(s, 1);
    if (!checks_after(s, 1, 1, 65)) return false;
    apply_lines(s64, 64);
    return checks_after(s64, 64, 1, 64);
  }

  // one forced placement of value v at cell c along a stem or prefix
  bool place_step(Cell c, Value v, int lo, int hi) {
    if (c < 0 || c >= kCells) return false;
    if ((occupied_ >> c) & 1) return false;
    if (!(dom_[c] >> (v - 1) & 1)) return false;
    if (forced_val_[c] && forced_val_[c] != v) return false;
    if (forced_cell_[v] >= 0 && forced_cell_[v] != c) return false;
    if (!chain_ok(v, c)) return false;
    if (act_cnt_ > 1) {
      // keep the stabilizer pointwise: transforms moving a placed cell no
      // longer certify subtree equivalence
      int k = 0;
      for (int i = 0; i < act_cnt_; i++)
        if (kTransformMap[act_list_[i]][c] == c) act_list_[k++] = act_list_[i];
      act_cnt_ = k;
    }
    occupied_ |= Mask{1} << c;
    pos_[v] = c;
    val_[c] = (u8)v;
    apply_lines(c, v);
    return checks_after(c, v, lo, hi);
  }

};

// The (cell of 1, cell of 64) pairs the search roots at, in deterministic
// order. Opposite colors only: an alternating 64-step path must end on the
// other color. kOrbitRepresentatives keeps one pair per orbit of the cube's
// 48 transforms (first cell minimal, then second minimal under its stabilizer).
inline std::vector<std::pair<Cell, Cell>> start_pairs(StartPolicy policy) {
  std::vector<std::pair<Cell, Cell>> out;
  if (policy == StartPolicy::kAllCells) {
    for (Cell s = 0; s < kCells; s++)
      for (Cell e = 0; e < kCells; e++)
        if (color_of(s) != color_of(e)) out.push_back({s, e});
    return out;
  }
  bool seen[kCells] = {};
  for (Cell s = 0; s < kCells; s++) {
    if (seen[s]) continue;
    for (int t = 0; t < kTransformCount; t++) seen[kTransformMap[t][s]] = true;
    std::vector<int> stab;
    for (int t = 0; t < kTransformCount; t++)
      if (kTransformMap[t][s] == s) stab.push_back(t);
    bool seen64[kCells] = {};
    for (Cell e = 0; e < kCells; e++) {
      if (seen64[e]) continue;
      if (color_of(e) == color_of(s)) continue;
      for (int t : stab) seen64[kTransformMap[t][e]] = true;
      out.push_back({s, e});
    }
  }
  return out;
}

// Splits one task into finer tasks by extending its low stem with every
// knight continuation of the given depth. The stems partition the task's
// tree, so the union of the split tasks' result sets equals the original's.
// Unpruned enumeration in ascending-cell order; tasks whose stem the engine
// rejects die immediately when run. Depth is capped by the free cells left.
inline std::vector<SearchTask> split_tasks(const SearchTask& base, int depth) {
  int free_cells = kCells - 2 - (int)base.low_stem.size();
  if (depth > free_cells) depth = free_cells;
  if (depth <= 0) return {base};
  std::vector<SearchTask> out;
  SearchTask cur = base;
  Mask used = (Mask{1} << base.s1) | (Mask{1} << base.s64);
  for (Cell c : base.low_stem) used |= Mask{1} << c;
  std::function<void(Cell, int)> rec = [&](Cell at, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    Mask m = kNeighborMask[at] & ~used;
    while (m) {
      Cell c = __builtin_ctzll(m);
      m &= m - 1;
      used |= Mask{1} << c;
      cur.low_stem.push_back(c);
      rec(c, left - 1);
      cur.low_stem.pop_back();
      used &= ~(Mask{1} << c);
    }
  };
  rec(base.low_stem.empty() ? base.s1 : base.low_stem.back(), depth);
  return out;
}

inline std::vector<SearchTask> split_tasks(Cell s1, Cell s64, int depth) {
  return split_tasks(SearchTask{s1, s64, {}}, depth);
}

// Complete search over all root pairs of the policy. Deterministic for any
// thread count: tasks have a fixed order and results are concatenated in task
// order, so the output is identical whether run with 1 thread or many.
inline std::vector<Arrangement> run_search(const SearchConfig& cfg) {
  std::vector<SearchTask> base;
  if (!cfg.prefix.empty()) {
    base = prefix_tasks(cfg.prefix);
  } else {
    for (auto& [s1, s64] : start_pairs(cfg.starts)) base.push_back({s1, s64, {}});
  }
  std::vector<SearchTask> tasks;
  for (const auto& b : base) {
    if (cfg.split_depth <= 0) {
      tasks.push_back(b);
    } else {
      auto split = split_tasks(b, cfg.split_depth);
      tasks.insert(tasks.end(), split.begin(), split.end());
    }
  }
  std::vector<std::vector<Arrangement>> buckets(tasks.size());
  std::atomic<size_t> next{0};
  int nthreads = cfg.threads < 1 ? 1 : cfg.threads;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      std::vector<Arrangement>* bucket = &buckets[i];
      Searcher s(cfg.mode,
                 [bucket](const Arrangement& a) { bucket->push_back(a); });
      s.set_orbit_branch(cfg.orbit_branch);
      s.run_task(tasks[i]);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; t++) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<Arrangement> out;
  for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
  return out;
}

// All magic completions of a path prefix (cells of values 1..k, k >= 1).
inline std::vector<Arrangement> search_from_prefix(const std::vector<Cell>& prefix,
                                                   SearchMode mode) {
  std::vector<Arrangement> out;
  Searcher s(mode, [&out](const Arrangement& a) { out.push_back(a); });
  s.run_prefix(prefix);
  return out;
}

}  // namespace cubetour
