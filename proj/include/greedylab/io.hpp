#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "greedylab/constants.hpp"
#include "greedylab/examples.hpp"
#include "greedylab/system.hpp"

namespace greedylab {

/// Unreadable or malformed input (CLI exit code 2).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// System files carry either an explicit description
///   { "ambient_dim", "norm": {"type","p","weights"?}, "basis", "duals"?, "labels"? }
/// or a family shortcut
///   { "family": "l1_alpha"|"sup_norm"|"lp_variant", "alpha"?, "p"?, "n" }.
/// Omitted duals are computed as the coefficient functionals of a square
/// system; non-square systems without duals are rejected.
MinimalSystem system_from_json(const nlohmann::json& j);
MinimalSystem load_system_file(const std::string& path);

/// Canonical serialization (explicit form); basis of the descriptor hash.
nlohmann::json system_to_json(const MinimalSystem& sys);

ExampleSpec example_spec_from_json(const nlohmann::json& j);

/// Knowns file: { "knowns": [ {"name", "value", "direction", "tau"?, "note"?} ] }.
std::vector<Known> knowns_from_json(const nlohmann::json& j);
std::vector<Known> load_knowns_file(const std::string& path);

std::string fnv1a_hex(const std::string& bytes);
std::string system_hash(const MinimalSystem& sys);

std::vector<double> parse_number_list(const std::string& text);    // "4,3,1"
std::vector<int> parse_index_list_one_based(const std::string& text);  // "1,3" -> {0,2}

}  // namespace greedylab
