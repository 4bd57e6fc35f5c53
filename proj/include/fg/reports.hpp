#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fg/gamma.hpp"

namespace fg {

// Reproduction reports: every displayed formula is rebuilt from its closed
// form and compared with what the implementation computes.

struct ReportItem {
  std::string name;  // no spaces
  bool ok = true;
  std::string detail;
};

struct Report {
  std::string suite;
  std::string params;
  std::vector<ReportItem> items;

  bool ok() const;
  const ReportItem* find(const std::string& name) const;
};

struct ReportOptions {
  std::optional<int> m;
  std::optional<int> n;
  Tuple p;  // empty picks the suite default
  std::uint64_t seed = 1;
  int instances = 24;  // claims-8
};

const std::vector<std::string>& report_suites();
// Throws InvalidForm for an unknown suite or parameters outside the suite's range.
Report report_suite(const std::string& name, const ReportOptions& opt = {});

// Text: "PASS name [detail]" lines; structured: key=value lines.
std::string to_string(const Report& r, bool structured = false);

}  // namespace fg
