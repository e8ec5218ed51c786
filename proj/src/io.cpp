#include "greedylab/io.hpp"

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace greedylab {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

namespace {

NormSpec norm_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "linf") return NormSpec::linf();
  if (type == "lp") return NormSpec::lp(j.at("p").get<double>());
  if (type == "weighted_lp")
    return NormSpec::weighted_lp(j.at("p").get<double>(),
                                 j.at("weights").get<std::vector<double>>());
  throw ParseError("unknown norm type '" + type + "'");
}

json norm_to_json(const NormSpec& spec) {
  json j;
  switch (spec.kind) {
    case NormKind::Linf:
      j["type"] = "linf";
      break;
    case NormKind::Lp:
      j["type"] = "lp";
      j["p"] = spec.p;
      break;
    case NormKind::WeightedLp:
      j["type"] = "weighted_lp";
      j["p"] = spec.p;
      j["weights"] = spec.weights;
      break;
  }
  return j;
}

std::vector<AmbientVec> rows_from_json(const json& j, const char* field) {
  std::vector<AmbientVec> rows;
  for (const auto& row : j) rows.push_back(row.get<AmbientVec>());
  if (rows.empty()) throw ParseError(std::string(field) + ": at least one row required");
  return rows;
}

}  // namespace

ExampleSpec example_spec_from_json(const json& j) {
  ExampleSpec spec;
  std::string family = j.at("family").get<std::string>();
  if (family == "l1_alpha") {
    spec.family = ExampleFamily::L1Alpha;
    spec.alpha = j.at("alpha").get<double>();
  } else if (family == "sup_norm") {
    spec.family = ExampleFamily::SupNorm;
  } else if (family == "lp_variant") {
    spec.family = ExampleFamily::LpVariant;
    spec.p = j.at("p").get<double>();
  } else {
    throw ParseError("unknown family '" + family + "'");
  }
  spec.n = j.at("n").get<int>();
  return spec;
}

MinimalSystem system_from_json(const json& j) {
  try {
    if (j.contains("family")) return build_example(example_spec_from_json(j));

    int ambient_dim = j.at("ambient_dim").get<int>();
    NormSpec norm_spec = norm_from_json(j.at("norm"));
    auto basis = rows_from_json(j.at("basis"), "basis");
    std::vector<AmbientVec> duals;
    if (j.contains("duals")) {
      duals = rows_from_json(j.at("duals"), "duals");
    } else {
      // coefficient functionals exist in closed form only for square systems
      const int n = static_cast<int>(basis.size());
      if (n != ambient_dim)
        throw ParseError("duals omitted: only allowed for square systems (N = ambient_dim)");
      Eigen::MatrixXd b(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) b(i, k) = basis[i][k];
      Eigen::FullPivLU<Eigen::MatrixXd> lu(b.transpose());
      if (!lu.isInvertible())
        throw ParseError("duals omitted: basis is singular, coefficient functionals undefined");
      Eigen::MatrixXd d = lu.inverse();  // rows are the coefficient functionals
      duals.assign(n, AmbientVec(n, 0.0));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) duals[i][k] = d(i, k);
    }
    std::vector<int> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<int>>();
    return make_system(ambient_dim, std::move(norm_spec), std::move(basis), std::move(duals),
                       std::move(labels));
  } catch (const json::exception& e) {
    throw ParseError(std::string("system description: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("system description: ") + e.what());
  }
}

MinimalSystem load_system_file(const std::string& path) {
  return system_from_json(load_json_file(path));
}

json system_to_json(const MinimalSystem& sys) {
  json j;
  j["ambient_dim"] = sys.ambient_dim;
  j["norm"] = norm_to_json(sys.norm_spec);
  j["basis"] = sys.basis;
  j["duals"] = sys.duals;
  if (!sys.labels.empty()) j["labels"] = sys.labels;
  return j;
}

std::vector<Known> knowns_from_json(const json& j) {
  std::vector<Known> out;
  try {
    for (const auto& je : j.at("knowns")) {
      Known k;
      k.name = je.at("name").get<std::string>();
      k.value = je.at("value").get<double>();
      std::string dir = je.value("direction", "upper");
      if (dir == "upper" || dir == "constructive-upper-bound")
        k.direction = BoundDirection::ConstructiveUpperBound;
      else if (dir == "lower" || dir == "lower-bound")
        k.direction = BoundDirection::LowerBound;
      else
        throw ParseError("knowns: unknown direction '" + dir + "'");
      k.tau = je.value("tau", -1.0);
      k.note = je.value("note", "");
      out.push_back(std::move(k));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("knowns file: ") + e.what());
  }
  return out;
}

std::vector<Known> load_knowns_file(const std::string& path) {
  return knowns_from_json(load_json_file(path));
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string system_hash(const MinimalSystem& sys) {
  return fnv1a_hex(system_to_json(sys).dump());
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw ParseError("bad number '" + tok + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("bad number '" + tok + "'");
    }
  }
  if (out.empty()) throw ParseError("empty number list");
  return out;
}

std::vector<int> parse_index_list_one_based(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int v = 0;
    try {
      v = std::stoi(tok);
    } catch (const std::logic_error&) {
      throw ParseError("bad index '" + tok + "'");
    }
    if (v < 1) throw ParseError("indices are 1-based");
    out.push_back(v - 1);
  }
  return out;
}

}  // namespace greedylab
