#pragma once

// Command dispatch for the finlin tool. `run` does no I/O besides reading
// input files and writing an optional DOT file, so tests call it directly.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace finlin::cli {

enum class Format { Text, Kv };

// Exit codes.
inline constexpr int kDecided = 0;
inline constexpr int kNegative = 1;
inline constexpr int kError = 2;
inline constexpr int kBudget = 3;

inline constexpr std::size_t kDefaultBudget = 200'000;

struct Job {
  std::string command;
  // Positional arguments. For formula commands the first one is a file
  // path or the formula itself, unless `expr` is given.
  std::vector<std::string> inputs;
  std::optional<std::string> expr;
  std::optional<std::vector<std::string>> sig;
  std::size_t budget = kDefaultBudget;
  std::size_t max_len = 6;
  std::optional<std::string> emit_dot;
  bool stats = false;
  Format format = Format::Text;

  // split
  std::vector<std::string> left, right;
  // tis-check
  bool star = false;
  // tis-pad
  std::size_t pad = 1;
  std::optional<std::size_t> pad_target;
  // interp-verify
  std::optional<std::string> translation;  // file path or text
  std::optional<std::string> diagram;      // structure text
  std::optional<std::string> target;       // structure text
  std::vector<std::size_t> params;
};

struct Report {
  int exit_code = kDecided;
  std::string verdict;
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::string>> kv;

  std::string render(Format format) const;
};

const std::vector<std::string>& commands();

// Validates the job, dispatches it and converts library errors into exit
// codes. Never throws for bad input.
Report run(const Job& job);

// One row per regular file in `dir` (sorted by name): decide_fmp against
// bounded search up to job.max_len.
Report corpus_run(const std::string& dir, const Job& job);

// Reads FINLIN_BUDGET, falling back to kDefaultBudget.
std::size_t default_budget();

}  // namespace finlin::cli
