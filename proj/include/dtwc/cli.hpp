#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dtwc/json_io.hpp"

namespace dtwc::cli {

inline constexpr const char* kToolName = "dtwc";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct Options {
  std::optional<Rational> window;
  std::optional<std::uint64_t> seed;
  bool table = false;
  std::string base_dir = ".";  // lattice file references resolve against this
};

// 0 success, 1 verification failure, 2 input or library error.
struct Outcome {
  int exit_code = 0;
  io::Json report;
  std::string table;  // filled when Options::table is set
};

Outcome run(const io::Json& doc, const Options& options);
// Parses the text first; malformed JSON is an input error at "/".
Outcome run_text(const std::string& text, const Options& options);

std::string render(const Outcome& outcome, bool table);

}  // namespace dtwc::cli
