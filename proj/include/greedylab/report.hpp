#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "greedylab/chebyshev.hpp"
#include "greedylab/constants.hpp"
#include "greedylab/examples.hpp"
#include "greedylab/system.hpp"

namespace greedylab {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "greedylab 0.1.0";

/// One operation's results. status is one of OK | PASS | FAIL | NOT-CHECKABLE
/// | INFO; FAIL entries carry a reproducer (system + witness) in `witness`.
struct ReportEntry {
  std::string op;
  std::string status;
  json inputs;
  json outputs;
  json witness;
};

/// Machine-readable run record. Serialization is lossless and byte-stable
/// for identical invocations; wall-clock data lives only under `timings`.
struct Report {
  std::string tool = kToolVersion;
  std::string system_hash;
  std::uint64_t seed = 0;
  std::string generator;
  std::vector<ReportEntry> entries;
  json timings = json::object();

  bool any_failure() const;
};

json to_json(const Report& report);
Report report_from_json(const json& j);

/// Flat tab-separated export: one row per entry (op, status, key=value pairs).
std::string to_tabular(const Report& report);

// serializers used across reports; index sets are printed 1-based
json witness_to_json(const Witness& w);
json estimate_to_json(const ConstantEstimate& est);
json check_to_json(const InequalityCheck& check);
json claim_to_json(const ClaimResult& claim);
json cheb_to_json(const ChebSolution& sol);
json validation_to_json(const SystemValidation& v);
std::vector<int> to_one_based(const std::vector<int>& idx);

}  // namespace greedylab
