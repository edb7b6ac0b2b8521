// cubetour - command-line driver: verification, search, census, canonical
// keys, format conversion, and the embedded fixture set.
//
// Exit codes: 0 success (verify: the input is a magic tour), 1 verification
// negative, 2 input error, 3 internal invariant violation.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubetour/census.hpp"
#include "cubetour/fixtures.hpp"
#include "cubetour/io.hpp"
#include "cubetour/search.hpp"
#include "cubetour/symmetry.hpp"
#include "cubetour/verify.hpp"

namespace {

using namespace cubetour;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitInput, "cannot open file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Layer text or JSON, decided by the first non-whitespace byte.
TourRecord load_record(const std::string& path) {
  std::string text = read_file(path);
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string::npos)
    throw CliError{kExitInput, path + ": file is empty"};
  if (text[i] == '{' || text[i] == '[') {
    JsonParse p = parse_json(text);
    if (!p.ok) throw CliError{kExitInput, path + ": " + p.error};
    return p.record;
  }
  ParseOutcome p = parse_layers(text);
  if (!p.ok) throw CliError{kExitInput, path + ": " + p.error};
  TourRecord rec;
  rec.values = p.values;
  return rec;
}

// A search prefix: cells of values 1..k in visit order, as a JSON array or
// whitespace-separated plain text, cell index = 16*layer + 4*row + col.
std::vector<Cell> load_prefix(const std::string& path) {
  std::string text = read_file(path);
  std::vector<Cell> cells;
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '[') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
      throw CliError{kExitInput, path + ": malformed JSON prefix"};
    for (auto& v : j) {
      if (!v.is_number_integer())
        throw CliError{kExitInput, path + ": prefix entries must be integers"};
      cells.push_back(v.get<int>());
    }
  } else {
    std::istringstream ss(text);
    long v;
    while (ss >> v) cells.push_back((Cell)v);
    if (!ss.eof())
      throw CliError{kExitInput, path + ": prefix must be whitespace-separated integers"};
  }
  if (cells.empty()) throw CliError{kExitInput, path + ": empty prefix"};
  if ((int)cells.size() > kCells)
    throw CliError{kExitInput, path + ": prefix longer than 64 cells"};
  std::array<bool, kCells> seen{};
  for (size_t k = 0; k < cells.size(); k++) {
    Cell c = cells[k];
    if (c < 0 || c >= kCells)
      throw CliError{kExitInput, path + ": cell index " + std::to_string(c) +
                                     " out of range 0..63"};
    if (seen[c])
      throw CliError{kExitInput,
                     path + ": cell " + std::to_string(c) + " repeated"};
    seen[c] = true;
    if (k > 0 && !knight_move(cells[k - 1], c))
      throw CliError{kExitInput, path + ": cells " +
                                     std::to_string(cells[k - 1]) + " and " +
                                     std::to_string(c) +
                                     " are not a knight move apart"};
  }
  return cells;
}

ordered_json report_json(const VerifyReport& rep) {
  ordered_json r;
  r["is_tour"] = rep.is_tour;
  r["is_closed"] = rep.is_closed;
  r["ortho_magic"] = rep.ortho_magic;
  r["diag_sums"] = rep.diag_sums;
  r["diag_magic"] = rep.diag_magic;
  r["subcube_sums"] = rep.subcube_sums;
  r["subcube_uniform"] = rep.subcube_uniform;
  r["pattern_type"] = to_string(rep.pattern);
  return r;
}

// One-line record for streamed search results (same schema as emit_json).
std::string stream_record(const std::string& id, const Arrangement& a) {
  ordered_json j;
  j["id"] = id;
  j["source"] = "search";
  j["values"] = std::vector<int>(a.begin(), a.end());
  j["report"] = report_json(verify(a));
  return j.dump() + "\n";
}

int cmd_verify(const std::string& file) {
  TourRecord rec = load_record(file);
  VerifyReport rep = verify(rec.values);
  std::cout << emit_json(rec, rep);
  if (!rep.is_tour) {
    std::cerr << "not a knight tour (adjacency broken): likely transcription "
                 "error rather than a non-magic tour\n";
    return kExitNegative;
  }
  if (!rep.ortho_magic) {
    int off = 0;
    for (int s : rep.line_sums) off += s != kMagicSum;
    std::cerr << "valid tour but not magic: " << off
              << " of 48 line sums differ from 130\n";
    return kExitNegative;
  }
  return kExitOk;
}

int cmd_search(const std::string& mode_name, const std::string& prefix_file,
               int threads, int split_depth, const std::string& out_dir) {
  SearchMode mode = mode_name == "closed" ? SearchMode::kClosed
                    : mode_name == "open" ? SearchMode::kOpen
                                          : SearchMode::kAll;
  std::vector<Arrangement> results;
  if (!prefix_file.empty()) {
    results = search_from_prefix(load_prefix(prefix_file), mode);
  } else {
    SearchConfig cfg;
    cfg.mode = mode;
    cfg.threads = threads;
    cfg.split_depth = split_depth;
    results = run_search(cfg);
  }
  for (const auto& a : results)
    if (!verify(a).magic_tour)
      throw CliError{kExitInternal, "search emitted a non-magic arrangement"};
  if (out_dir.empty()) {
    int n = 0;
    for (const auto& a : results) std::cout << stream_record(std::to_string(++n), a);
  } else {
    std::filesystem::create_directories(out_dir);
    int n = 0;
    for (const auto& a : results) {
      std::string id = std::to_string(++n);
      std::string name = "search-" + std::string(6 - std::min<size_t>(6, id.size()), '0') + id + ".json";
      std::ofstream out(std::filesystem::path(out_dir) / name);
      out << stream_record(id, a);
    }
    ordered_json j;
    j["count"] = (int)results.size();
    j["out"] = out_dir;
    std::cout << j.dump() << "\n";
  }
  return kExitOk;
}

ordered_json census_json(const CensusRun& run) {
  const Census& c = run.census;
  ordered_json j;
  j["frenicle_total"] = c.frenicle_total;
  j["frenicle_closed"] = c.frenicle_closed;
  j["frenicle_open"] = c.frenicle_open;
  j["primary_total"] = c.primary_total;
  j["primary_closed"] = c.primary_closed;
  j["primary_open"] = c.primary_open;
  j["diag_magic_frenicle"] = c.diag_magic_frenicle;
  j["diag_magic_primary"] = c.diag_magic_primary;
  // which grouping level carries the count 48 (null if neither or both)
  if ((c.diag_magic_frenicle == 48) != (c.diag_magic_primary == 48))
    j["diag_magic_48_level"] =
        c.diag_magic_frenicle == 48 ? "frenicle" : "primary";
  else
    j["diag_magic_48_level"] = nullptr;
  j["pattern_counts"] = {{"squares_and_diamonds", c.pattern_squares_and_diamonds},
                         {"irregular", c.pattern_irregular}};
  j["subcube_uniform_violations"] = c.subcube_uniform_violations;
  j["nodes"] = run.nodes;
  j["complete"] = run.complete;
  return j;
}

int cmd_census(int threads) {
  auto progress = [](const CensusProgress& p) {
    if (p.tasks_done % 50 == 0 || p.tasks_done == p.tasks_total)
      std::cerr << "census: " << p.tasks_done << "/" << p.tasks_total
                << " tasks, " << p.nodes << " nodes\n";
  };
  CensusRun run = run_census(threads, nullptr, progress);
  if (!run.complete)
    throw CliError{kExitInternal, "census enumeration stopped early"};
  std::cout << census_json(run).dump(2) << "\n";
  return kExitOk;
}

int cmd_canon(const std::string& file) {
  TourRecord rec = load_record(file);
  if (!is_tour(rec.values))
    throw CliError{kExitInput,
                   file + ": not a knight tour; PrimaryKey is undefined"};
  Arrangement canon = frenicle_canonical(rec.values);
  Arrangement prim = primary_canonical(rec.values);
  ordered_json j;
  j["canonical"] = std::vector<int>(canon.begin(), canon.end());
  j["primary"] = std::vector<int>(prim.begin(), prim.end());
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_emit(const std::string& file, const std::string& format) {
  TourRecord rec = load_record(file);
  if (format == "layers") {
    std::cout << emit_layers(rec.values);
  } else {
    std::cout << emit_json(rec, verify(rec.values));
  }
  return kExitOk;
}

int cmd_fixtures(bool list, const std::string& dump_dir) {
  const auto& fx = fixtures();
  if (!dump_dir.empty()) {
    std::filesystem::create_directories(dump_dir);
    for (const auto& f : fx) {
      std::ofstream(std::filesystem::path(dump_dir) / ("fixture-" + f.id + ".json"))
          << emit_json(f, verify(f.values));
      std::ofstream(std::filesystem::path(dump_dir) / ("fixture-" + f.id + ".txt"))
          << emit_layers(f.values);
    }
    std::cout << "wrote " << 2 * fx.size() << " files to " << dump_dir << "\n";
    return kExitOk;
  }
  (void)list;  // listing is also the default action
  for (const auto& f : fx) std::cout << f.id << "\t" << f.source << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magic knight's tours in the 4x4x4 cube: verify, search, "
               "classify, and the embedded reference tours"};
  app.require_subcommand(1);

  std::string file, mode = "all", prefix_file, out_dir, format;
  std::string dump_dir;
  int threads = 1, split_depth = 0;
  bool list = false;

  auto* verify_cmd =
      app.add_subcommand("verify", "verify a tour file (layer text or JSON); "
                                   "exit 0 iff it is a magic tour");
  verify_cmd->add_option("file", file, "tour file")->required();

  auto* search_cmd = app.add_subcommand(
      "search", "enumerate magic tours, streaming one JSON record per tour");
  search_cmd->add_option("--mode", mode, "all|closed|open (default all)")
      ->check(CLI::IsMember({"all", "closed", "open"}));
  search_cmd->add_option("--prefix", prefix_file,
                         "restrict to completions of a path prefix (file of "
                         "cell indices, JSON array or plain text)");
  search_cmd->add_option("--threads", threads, "worker threads (default 1)");
  search_cmd->add_option("--split-depth", split_depth,
                         "plies per parallel work unit (default 0)");
  search_cmd->add_option("--out", out_dir,
                         "write records to this directory instead of stdout");

  auto* census_cmd = app.add_subcommand(
      "census", "full enumeration and classification; prints the census as JSON");
  census_cmd->add_option("--threads", threads, "worker threads (default 1)");

  auto* canon_cmd = app.add_subcommand(
      "canon", "print the CanonicalKey and PrimaryKey arrays of a tour");
  canon_cmd->add_option("file", file, "tour file")->required();

  auto* emit_cmd =
      app.add_subcommand("emit", "re-emit a tour file in a chosen format");
  emit_cmd->add_option("file", file, "tour file")->required();
  emit_cmd->add_option("--format", format, "layers|json")
      ->required()
      ->check(CLI::IsMember({"layers", "json"}));

  auto* fixtures_cmd = app.add_subcommand(
      "fixtures", "the embedded reference tours (default: list id and source)");
  fixtures_cmd->add_flag("--list", list, "list fixture ids and sources");
  fixtures_cmd->add_option("--dump", dump_dir,
                           "write each fixture as JSON and layer text files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) return cmd_verify(file);
    if (search_cmd->parsed())
      return cmd_search(mode, prefix_file, threads, split_depth, out_dir);
    if (census_cmd->parsed()) return cmd_census(threads);
    if (canon_cmd->parsed()) return cmd_canon(file);
    if (emit_cmd->parsed()) return cmd_emit(file, format);
    if (fixtures_cmd->parsed()) return cmd_fixtures(list, dump_dir);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;  // unreachable: a subcommand is required
}
