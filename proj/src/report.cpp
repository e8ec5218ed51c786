#include "greedylab/report.hpp"

#include <algorithm>
#include <sstream>

namespace greedylab {

bool Report::any_failure() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.status == "FAIL"; });
}

std::vector<int> to_one_based(const std::vector<int>& idx) {
  std::vector<int> out(idx);
  for (int& i : out) ++i;
  return out;
}

json to_json(const Report& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json je;
    je["op"] = e.op;
    je["status"] = e.status;
    je["inputs"] = e.inputs;
    je["outputs"] = e.outputs;
    if (!e.witness.is_null()) je["witness"] = e.witness;
    entries.push_back(je);
  }
  json j;
  j["tool"] = report.tool;
  j["system_hash"] = report.system_hash;
  j["seed"] = report.seed;
  j["generator"] = report.generator;
  j["entries"] = entries;
  j["timings"] = report.timings;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.tool = j.at("tool").get<std::string>();
  r.system_hash = j.at("system_hash").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.generator = j.value("generator", "");
  for (const auto& je : j.at("entries")) {
    ReportEntry e;
    e.op = je.at("op").get<std::string>();
    e.status = je.at("status").get<std::string>();
    e.inputs = je.value("inputs", json());
    e.outputs = je.value("outputs", json());
    e.witness = je.value("witness", json());
    r.entries.push_back(std::move(e));
  }
  r.timings = j.value("timings", json::object());
  return r;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& row) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), row);
  } else if (!j.is_null()) {
    row << '\t' << prefix << '=' << j.dump();
  }
}

}  // namespace

std::string to_tabular(const Report& report) {
  std::ostringstream out;
  out << "op\tstatus\tfields\n";
  for (const auto& e : report.entries) {
    std::ostringstream row;
    flatten(e.inputs, "in", row);
    flatten(e.outputs, "out", row);
    out << e.op << '\t' << e.status << row.str() << '\n';
  }
  return out.str();
}

json witness_to_json(const Witness& w) {
  json j;
  if (!w.x.empty()) j["x"] = w.x;
  if (w.m >= 0) j["m"] = w.m;
  if (w.tau >= 0.0) j["tau"] = w.tau;
  if (!w.set_a.empty()) j["set_a"] = to_one_based(w.set_a);
  if (!w.set_b.empty()) j["set_b"] = to_one_based(w.set_b);
  if (!w.scalars_a.empty()) j["scalars_a"] = w.scalars_a;
  if (!w.scalars_b.empty()) j["scalars_b"] = w.scalars_b;
  if (!w.selector_id.empty()) j["selector"] = w.selector_id;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

json estimate_to_json(const ConstantEstimate& est) {
  json j;
  j["name"] = est.name;
  j["value"] = est.value;
  j["direction"] = to_string(est.direction);
  if (est.tau >= 0.0) j["tau"] = est.tau;
  j["witness"] = witness_to_json(est.witness);
  j["corpus"] = est.corpus_descriptor;
  j["skipped_ratios"] = est.skipped_ratios;
  return j;
}

json check_to_json(const InequalityCheck& check) {
  json j;
  j["id"] = check.id;
  j["statement"] = check.statement;
  j["status"] = to_string(check.status);
  if (check.status != CheckStatus::NotCheckable) {
    j["lhs"] = check.lhs;
    j["rhs"] = check.rhs;
  }
  j["detail"] = check.detail;
  return j;
}

json claim_to_json(const ClaimResult& claim) {
  json j;
  j["claim"] = claim.claim;
  j["status"] = claim.status;
  j["observed"] = claim.observed;
  j["expected"] = claim.expected;
  j["detail"] = claim.detail;
  return j;
}

json cheb_to_json(const ChebSolution& sol) {
  json j;
  j["support"] = to_one_based(sol.support);
  j["coeffs"] = sol.coeffs;
  j["error"] = sol.error;
  j["backend"] = sol.backend;
  j["certificate_gap"] = sol.certificate_gap;
  if (sol.iterations > 0) j["iterations"] = sol.iterations;
  return j;
}

json validation_to_json(const SystemValidation& v) {
  json j;
  j["biorth_residual"] = v.biorth_residual;
  j["biorth_ok"] = v.biorth_ok;
  j["numeric_rank"] = v.numeric_rank;
  j["rank_ok"] = v.rank_ok;
  j["min_basis_norm"] = v.min_basis_norm;
  j["max_basis_norm"] = v.max_basis_norm;
  j["dual_upper_bounds"] = v.dual_upper_bounds;
  j["ok"] = v.ok();
  return j;
}

}  // namespace greedylab
