// io.hpp - the two wire formats: printed-style layer text and JSON records.
#pragma once

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrangement.hpp"
#include "fixtures.hpp"
#include "verify.hpp"

namespace cubetour {

struct ParseOutcome {
  bool ok = false;
  Arrangement values{};
  std::string error;
};

// Layer text: exactly four blocks separated by blank lines, each four lines of
// four whitespace-separated integers. Blocks are layers (z = 0..3), lines are
// rows, tokens are columns. Errors carry the 1-based line and column.
inline ParseOutcome parse_layers(const std::string& text) {
  ParseOutcome out;
  struct Tok { long v; int line, col; };
  std::vector<std::vector<Tok>> blocks;
  bool in_block = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    lineno++;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      in_block = false;
      continue;
    }
    if (!in_block) {
      blocks.emplace_back();
      in_block = true;
    }
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace((unsigned char)line[i])) i++;
      if (i >= line.size()) break;
      size_t j = i;
      while (j < line.size() && !std::isspace((unsigned char)line[j])) j++;
      std::string tok = line.substr(i, j - i);
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') {
        out.error = "line " + std::to_string(lineno) + ", column " +
                    std::to_string(i + 1) + ": '" + tok + "' is not an integer";
        return out;
      }
      blocks.back().push_back({v, lineno, (int)i + 1});
      i = j;
    }
  }
  if (blocks.size() != 4) {
    out.error = "expected 4 layer blocks separated by blank lines, found " +
                std::to_string(blocks.size());
    return out;
  }
  std::array<bool, kCells + 1> seen{};
  for (int z = 0; z < 4; z++) {
    if (blocks[z].size() != 16) {
      out.error = "layer block " + std::to_string(z + 1) + " has " +
                  std::to_string(blocks[z].size()) + " values, expected 16";
      return out;
    }
    for (int k = 0; k < 16; k++) {
      const Tok& t = blocks[z][k];
      if (t.v < 1 || t.v > kCells) {
        out.error = "line " + std::to_string(t.line) + ", column " +
                    std::to_string(t.col) + ": value " + std::to_string(t.v) +
                    " out of range 1..64";
        return out;
      }
      if (seen[t.v]) {
        out.error = "line " + std::to_string(t.line) + ", column " +
                    std::to_string(t.col) + ": duplicate value " +
                    std::to_string(t.v);
        return out;
      }
      seen[t.v] = true;
      out.values[cell_at(z, k / 4, k % 4)] = (std::uint8_t)t.v;
    }
  }
  out.ok = true;
  return out;
}

inline std::string emit_layers(const Arrangement& a) {
  std::ostringstream os;
  for (int z = 0; z < 4; z++) {
    for (int r = 0; r < 4; r++) {
      for (int c = 0; c < 4; c++) {
        int v = a[cell_at(z, r, c)];
        if (c) os << ' ';
        if (v < 10) os << ' ';
        os << v;
      }
      os << '\n';
    }
    if (z < 3) os << '\n';
  }
  return os.str();
}

// One JSON object per record; key order is part of the format.
inline std::string emit_json(const TourRecord& rec, const VerifyReport& rep) {
  nlohmann::ordered_json j;
  j["id"] = rec.id;
  j["source"] = rec.source;
  j["values"] = std::vector<int>(rec.values.begin(), rec.values.end());
  nlohmann::ordered_json r;
  r["is_tour"] = rep.is_tour;
  r["is_closed"] = rep.is_closed;
  r["ortho_magic"] = rep.ortho_magic;
  r["diag_sums"] = rep.diag_sums;
  r["diag_magic"] = rep.diag_magic;
  r["subcube_sums"] = rep.subcube_sums;
  r["subcube_uniform"] = rep.subcube_uniform;
  r["pattern_type"] = to_string(rep.pattern);
  j["report"] = r;
  return j.dump(2) + "\n";
}

struct JsonParse {
  bool ok = false;
  TourRecord record;
  std::string error;
};

// Accepts either an object with a "values" array (id/source carried through
// when present) or a bare array of 64 integers.
inline JsonParse parse_json(const std::string& text) {
  JsonParse out;
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    out.error = "malformed JSON";
    return out;
  }
  nlohmann::json vals;
  if (j.is_array()) {
    vals = j;
  } else if (j.is_object() && j.contains("values")) {
    vals = j["values"];
    if (j.contains("id") && j["id"].is_string()) out.record.id = j["id"];
    if (j.contains("source") && j["source"].is_string())
      out.record.source = j["source"];
  } else {
    out.error = "JSON must be an array of 64 values or an object with a 'values' field";
    return out;
  }
  if (!vals.is_array() || vals.size() != kCells) {
    out.error = "'values' must be an array of exactly 64 integers";
    return out;
  }
  std::array<bool, kCells + 1> seen{};
  for (int i = 0; i < kCells; i++) {
    if (!vals[i].is_number_integer()) {
      out.error = "values[" + std::to_string(i) + "] is not an integer";
      return out;
    }
    long v = vals[i].get<long>();
    if (v < 1 || v > kCells) {
      out.error = "values[" + std::to_string(i) + "] = " + std::to_string(v) +
                  " out of range 1..64";
      return out;
    }
    if (seen[v]) {
      out.error = "duplicate value " + std::to_string(v) + " at values[" +
                  std::to_string(i) + "]";
      return out;
    }
    seen[v] = true;
    out.record.values[i] = (std::uint8_t)v;
  }
  out.ok = true;
  return out;
}

}  // namespace cubetour
