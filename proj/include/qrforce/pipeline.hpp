#pragma once

#include "qrforce/json_io.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace qrf {

struct ReportItem
{
  std::string section;
  std::string name;
  bool pass = false;
  Json computed;
  Json expected;
};

struct RunReport
{
  std::string command;
  Json inputs = Json::object();
  std::vector<ReportItem> items;
  double wall_seconds = 0;
  std::vector<std::uint64_t> seeds;

  bool ok() const;
  Json to_json() const;
};

inline const std::vector<std::string> report_sections = {"enumeration", "trichotomy", "certificates",
                                                         "exceptional", "appendix"};

struct ReproduceOptions
{
  // Empty: every section.
  std::set<std::string> only;
  unsigned workers = 0;
  // Monte Carlo trials per exceptional case; 0 skips sampling.
  std::uint64_t mc_trials = 0;
  std::uint64_t seed = 20240601;
};

RunReport cmd_reproduce(const ReproduceOptions &opts);

std::string library_version();

} // namespace qrf
