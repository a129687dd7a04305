#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bkm/graph.hpp"

namespace bkm::cli {

enum class Command { chromatic, mult, basis, words, orientations, hilbert, lcs_ranks, reciprocity, verify };
enum class OutputFormat { text, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_error = 3;

struct VerifyChecks {
  bool chromatic = true;
  bool mult = true;
  bool bond = true;
  bool recursion = true;
  bool tensor = true;
  bool reciprocity = true;
  bool lucas = true;
};

struct RunConfig {
  Command command = Command::chromatic;
  std::string graph_path;
  Graph graph;
  WeightVector k;
  OutputFormat output = OutputFormat::text;
  int height_limit = 12;
  int vertex_limit = 10;

  std::optional<std::string> eval;
  std::string closed_form = "auto";
  std::string method = "moebius";
  std::optional<VertexId> sink;
  bool verify = false;
  std::optional<VertexId> ia;
  std::optional<VertexId> aperiodic_classes;
  bool list = false;
  int q = 1;
  int max_ht = 0;
  int max_k = 0;
  bool triangle_free = false;
  VerifyChecks checks;
  int threads = 0;  // 0: BKM_THREADS or hardware concurrency

  /// Non-empty when --help was requested; run() prints it and exits 0.
  std::string help;
};

/// "1:2,2:1" -> {1:2, 2:1}. Throws a usage error on malformed input.
WeightVector parse_weight_spec(const std::string& text);
std::string format_weight_spec(const WeightVector& k);

/// Throws bkm::Error with ErrorCode::usage for bad command lines, unknown
/// vertices in --k and unreadable graph files.
RunConfig parse_args(int argc, const char* const* argv);
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with error reporting and exit codes.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bkm::cli
