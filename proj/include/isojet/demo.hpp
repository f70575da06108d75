#pragma once

// Scripted end-to-end runs on three worked examples, emitting the full JSON
// trail of every intermediate object.

#include <string>
#include <string_view>
#include <vector>

#include "isojet/report.hpp"

namespace isojet {

struct DemoResult {
  Json report;
  /// Every expected outcome of the script held.
  bool ok;
};

std::vector<std::string> demo_names();

/// Throws UnknownDemo.
DemoResult run_demo(std::string_view name);

}  // namespace isojet
