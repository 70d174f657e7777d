#pragma once

// Command-line frontend. `run_cli` is the whole program minus process setup so
// that tests can drive it in-process.

#include <ostream>
#include <string>

#include "qmoyal/operator_algebra.h"
#include "qmoyal/star_calculus.h"

namespace qmoyal {

enum class OutputFormat { text, json };

struct CliConfig {
  int root_denominator = 2;
  int grid = 3;
  int truncation = 4;
  StarProductId product = StarProductId::QStandard;
  Ordering ordering = Ordering::standard;
  OutputFormat format = OutputFormat::text;
  Association assoc = Association::left;
  bool allow_large_grid = false;

  static constexpr int max_grid = 6;
};

/// Exit codes: 0 success, 1 usage or parse error, 2 hard-assertion failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmoyal
