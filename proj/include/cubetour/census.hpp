// census.hpp - grouping the magic tours into Frenicle classes (orbits under
// the 48 cube transforms) and primary classes (orbits under transforms plus
// renumbering), and the aggregate counts over the complete enumeration.
#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "arrangement.hpp"
#include "patterns.hpp"
#include "search.hpp"
#include "symmetry.hpp"
#include "verify.hpp"

namespace cubetour {

// One Frenicle class. Every flag below is constant across the orbit (the
// transforms permute lines, diagonals and subcubes among themselves), so the
// canonical representative decides them for the whole class.
struct TourClass {
  Arrangement canonical{};  // class key and representative
  Arrangement primary{};    // key of the underlying tour (shift/reverse closure)
  bool closed = false;
  bool diag_magic = false;
  bool subcube_uniform = false;
  PatternType pattern = PatternType::kIrregular;
};

struct Census {
  int frenicle_total = 0, frenicle_closed = 0, frenicle_open = 0;
  int primary_total = 0, primary_closed = 0, primary_open = 0;
  // Diagonally magic counts at both grouping levels. Renumbering moves the
  // diagonal sums, so a primary class counts as diagonally magic when at
  // least one of its Frenicle members is.
  int diag_magic_frenicle = 0, diag_magic_primary = 0;
  // Pattern counts at the Frenicle level (they sum to frenicle_total).
  int pattern_squares_and_diamonds = 0, pattern_irregular = 0;
  int subcube_uniform_violations = 0;  // Frenicle classes with a subcube != 260
  bool operator==(const Census&) const = default;
};

// Accumulates arrangements into Frenicle classes, deduplicating by canonical
// key. Insertion order never matters and merge is commutative and
// associative, so parallel producers may fill separate builders and merge.
class CensusBuilder {
 public:
  void add(const Arrangement& a) {
    Arrangement key = frenicle_canonical(a);
    auto [it, fresh] = classes_.try_emplace(key);
    if (!fresh) return;
    TourClass& cls = it->second;
    cls.canonical = key;
    cls.primary = primary_canonical(key);
    VerifyReport rep = verify(key);
    cls.closed = rep.is_closed;
    cls.diag_magic = rep.diag_magic;
    cls.subcube_uniform = rep.subcube_uniform;
    cls.pattern = rep.pattern;
  }

  void merge(const CensusBuilder& other) {
    classes_.insert(other.classes_.begin(), other.classes_.end());
  }

  // Classes keyed (and therefore ordered) by canonical arrangement.
  const std::map<Arrangement, TourClass>& classes() const { return classes_; }

  Census census() const {
    Census c;
    // primary key -> (closed, any Frenicle member diagonally magic)
    std::map<Arrangement, std::pair<bool, bool>> prim;
    for (const auto& [key, cls] : classes_) {
      c.frenicle_total++;
      (cls.closed ? c.frenicle_closed : c.frenicle_open)++;
      if (cls.diag_magic) c.diag_magic_frenicle++;
      if (cls.pattern == PatternType::kSquaresAndDiamonds)
        c.pattern_squares_and_diamonds++;
      else
        c.pattern_irregular++;
      if (!cls.subcube_uniform) c.subcube_uniform_violations++;
      auto& p = prim[cls.primary];
      p.first = cls.closed;  // closure is a property of the underlying tour
      p.second = p.second || cls.diag_magic;
    }
    for (const auto& [key, p] : prim) {
      c.primary_total++;
      (p.first ? c.primary_closed : c.primary_open)++;
      if (p.second) c.diag_magic_primary++;
    }
    return c;
  }

 private:
  std::map<Arrangement, TourClass> classes_;
};

// The census of an arrangement stream (duplicates and symmetric variants
// permitted; they land in the same class).
inline Census build_census(const std::vector<Arrangement>& arrangements) {
  CensusBuilder b;
  for (const auto& a : arrangements) b.add(a);
  return b.census();
}

// ---------------------------------------------------------------------------
// Reduced full-cube enumeration.
//
// A full census only needs one arrangement per Frenicle class, which licenses
// two symmetry reductions on top of the plain all-starts search:
//
//  1. Root pairs up to symmetry, unordered. The search is rooted at the pair
//     of cells holding values 1 and 64. Applying a transform to a whole
//     arrangement moves its root pair within its orbit, and the complement
//     renumbering v -> 65-v (which maps magic tours to magic tours) swaps the
//     pair. So it suffices to search one representative per orbit of
//     *unordered* pairs — 37 instead of the 2048 ordered opposite-color pairs
//     — provided every found arrangement is recorded together with its
//     complement ("reversal closure").
//
//  2. Stabilizer orbit branching inside the tree. When the cells placed so
//     far are fixed pointwise by a nontrivial subgroup of the 48 transforms,
//     branches that are images of each other under that subgroup lead to
//     image subtrees; exploring one candidate per orbit still reaches a
//     member of every class.
//
// Both reductions are class-complete, not arrangement-complete: the stream
// they produce yields the same set of Frenicle classes — hence an identical
// Census — as the all-starts enumeration, while arrangement multiplicities
// differ. The equivalence argument is spelled out above each step; the
// resulting Census is additionally pinned by tests to the independently
// derived class counts.

// One representative per orbit of unordered opposite-color cell pairs under
// the 48 transforms. Deterministic: ordered orbit representatives are taken
// from start_pairs and an unordered pair keeps whichever ordering has the
// lexicographically smaller orbit key.
inline std::vector<std::pair<Cell, Cell>> unordered_root_pairs() {
  auto key = [](Cell a, Cell b) {
    std::pair<Cell, Cell> best{kCells, kCells};
    for (int t = 0; t < kTransformCount; t++) {
      std::pair<Cell, Cell> k{kTransformMap[t][a], kTransformMap[t][b]};
      if (k < best) best = k;
    }
    return best;
  };
  std::vector<std::pair<Cell, Cell>> out;
  for (auto& [s, e] : start_pairs(StartPolicy::kOrbitRepresentatives))
    if (key(s, e) <= key(e, s)) out.push_back({s, e});
  return out;
}

struct CensusProgress {
  int tasks_done = 0, tasks_total = 0;
  long long nodes = 0;
};

struct CensusRun {
  Census census;
  std::vector<TourClass> classes;  // ordered by canonical key
  long long nodes = 0;
  bool complete = true;  // false when cancelled before exhausting the space
};

// Runs the reduced enumeration and classifies the stream. Deterministic for
// any thread count. The optional cancel flag stops the search cooperatively;
// a cancelled run reports complete = false and must not be trusted as a
// census. The progress callback, when given, is invoked from worker threads
// after each finished task.
inline CensusRun run_census(
    int threads = 1, const std::atomic<bool>* cancel = nullptr,
    const std::function<void(const CensusProgress&)>& progress = nullptr) {
  std::vector<SearchTask> tasks;
  for (auto& [s, e] : unordered_root_pairs())
    for (auto& t : split_tasks(s, e, 2)) tasks.push_back(t);
  std::vector<std::vector<Arrangement>> buckets(tasks.size());
  std::atomic<size_t> next{0};
  std::atomic<long long> nodes{0};
  std::atomic<int> done{0};
  std::atomic<bool> stopped{false};
  int nthreads = threads < 1 ? 1 : threads;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      std::vector<Arrangement>* bucket = &buckets[i];
      Searcher s(SearchMode::kAll,
                 [bucket](const Arrangement& a) { bucket->push_back(a); });
      s.set_orbit_branch(true);
      s.set_cancel(cancel);
      s.run_task(tasks[i]);
      nodes.fetch_add(s.nodes());
      if (s.stopped_early()) stopped.store(true);
      if (progress) {
        CensusProgress p;
        p.tasks_done = done.fetch_add(1) + 1;
        p.tasks_total = (int)tasks.size();
        p.nodes = nodes.load();
        progress(p);
      } else {
        done.fetch_add(1);
      }
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; t++) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  CensusRun run;
  run.nodes = nodes.load();
  run.complete = !stopped.load();
  CensusBuilder b;
  for (const auto& bucket : buckets)
    for (const auto& a : bucket) {
      b.add(a);
      b.add(complement(a));  // reversal closure for the unordered-pair fold
    }
  run.census = b.census();
  run.classes.reserve(b.classes().size());
  for (const auto& [key, cls] : b.classes()) run.classes.push_back(cls);
  return run;
}

}  // namespace cubetour
