#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "svsec/classify.hpp"
#include "svsec/cumulants.hpp"

namespace svsec::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDisagreement = 2, kBudget = 3 };

struct Result {
  nlohmann::json body;  // std::map-backed, so keys serialize sorted
  int exit_code = kOk;
};

struct Limits {
  std::uint64_t max_points = 200'000;  // lattice points of P
  std::uint64_t max_nodes = 1'000'000'000;
};

struct ScanOptions {
  int max_k = 4;
  int max_a = 4;
  int max_b = 4;
  Limits limits;
  unsigned jobs = 1;
  std::string only_tags;  // comma-separated globs over case tags, e.g. "G*,Q3"
};

Result classify(const SVParams& p, const Limits& limits = {});
Result facets(const SVParams& p, const Limits& limits = {});
Result singular(const SVParams& p, const Limits& limits = {});
Result normality(const SVParams& p, int s_max, const Limits& limits = {});
Result scan(const ScanOptions& options);
Result cumulants(const LabeledComplex& c, std::optional<unsigned> degree_bound, const SymbolicBudget& budget = {});
Result binomials(const LabeledComplex& c, unsigned degree_bound);

/// Any glob in the comma-separated list matches to_string(tag).
bool tag_matches(CaseTag tag, const std::string& patterns);

/// Human-readable rendering of a command's JSON body.
std::string render_text(const std::string& command, const nlohmann::json& body);

/// Parses argv, runs one command and writes its output. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace svsec::cli
