#include "greedylab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "greedylab/rng.hpp"
#include "greedylab/subsets.hpp"

namespace greedylab {

std::string to_string(ItemTag tag) {
  switch (tag) {
    case ItemTag::RandomGaussian: return "random-gaussian";
    case ItemTag::Rademacher: return "rademacher";
    case ItemTag::BlockIndicator: return "block-indicator";
    case ItemTag::ProofPattern: return "proof-pattern";
    case ItemTag::User: return "user";
  }
  return "?";
}

std::string CorpusSpec::to_string() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "gaussian=%d,rademacher=%d,blocks=%d,sign_blocks=%d,two_block=%d,spike_tail=%d,"
                "tau=%g,delta=%g,decay=%g",
                gaussian, rademacher, block_max_card, sign_blocks, two_block, spike_tail, tau,
                delta, decay);
  return buf;
}

CorpusSpec CorpusSpec::parse(const std::string& text) {
  CorpusSpec spec;
  std::stringstream ss(text);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("CorpusSpec: expected key=value");
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    if (key == "gaussian") spec.gaussian = std::stoi(val);
    else if (key == "rademacher") spec.rademacher = std::stoi(val);
    else if (key == "blocks") spec.block_max_card = std::stoi(val);
    else if (key == "sign_blocks") spec.sign_blocks = std::stoi(val);
    else if (key == "two_block") spec.two_block = std::stoi(val);
    else if (key == "spike_tail") spec.spike_tail = std::stoi(val);
    else if (key == "tau") spec.tau = std::stod(val);
    else if (key == "delta") spec.delta = std::stod(val);
    else if (key == "decay") spec.decay = std::stod(val);
    else throw std::invalid_argument("CorpusSpec: unknown key '" + key + "'");
  }
  return spec;
}

CoeffVec two_block_item(int n, const std::vector<int>& a_set, const std::vector<int>& c_set,
                        const std::vector<double>& signs, double s) {
  if (signs.size() != a_set.size())
    throw std::invalid_argument("two_block_item: one sign per index of the first block");
  CoeffVec c(n, 0.0);
  for (size_t i = 0; i < a_set.size(); ++i) c.at(a_set[i]) = signs[i];
  for (int k : c_set) {
    if (c.at(k) != 0.0) throw std::invalid_argument("two_block_item: blocks must be disjoint");
    c[k] = s;
  }
  return c;
}

namespace {

bool is_zero(const CoeffVec& c) {
  return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
}

std::string set_note(const char* name, const std::vector<int>& s) {
  std::string out = name;
  out += "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  out += "}";
  return out;
}

}  // namespace

Corpus generate_corpus(const MinimalSystem& sys, const CorpusSpec& spec, std::uint64_t seed) {
  const int n = sys.size();
  if (n < 1) throw std::invalid_argument("generate_corpus: empty system");
  if (spec.block_max_card > n)
    throw std::invalid_argument("generate_corpus: block_max_card exceeds system size");
  if (spec.gaussian < 0 || spec.rademacher < 0 || spec.sign_blocks < 0 || spec.two_block < 0 ||
      spec.spike_tail < 0 || spec.block_max_card < 0)
    throw std::invalid_argument("generate_corpus: negative family size");
  if (spec.two_block > 0 && n < 2)
    throw std::invalid_argument("generate_corpus: two_block needs at least two indices");

  Corpus out;
  out.seed = seed;
  out.spec = spec;
  out.generator_id = Rng::generator_id();
  Rng rng(seed);

  for (int t = 0; t < spec.gaussian; ++t) {
    CoeffVec c(n);
    do {
      for (auto& v : c) v = rng.normal();
    } while (is_zero(c));
    out.items.push_back({std::move(c), ItemTag::RandomGaussian, ""});
  }
  for (int t = 0; t < spec.rademacher; ++t) {
    CoeffVec c(n);
    for (auto& v : c) v = rng.sign();
    out.items.push_back({std::move(c), ItemTag::Rademacher, ""});
  }
  for (int card = 1; card <= spec.block_max_card; ++card) {
    for_each_subset(n, card, [&](const std::vector<int>& a) {
      CoeffVec c(n, 0.0);
      for (int i : a) c[i] = 1.0;
      out.items.push_back({std::move(c), ItemTag::BlockIndicator, set_note("1_", a)});
    });
  }
  for (int t = 0; t < spec.sign_blocks; ++t) {
    int card = rng.uniform_int(1, n);
    auto a = rng.subset(n, card);
    CoeffVec c(n, 0.0);
    for (int i : a) c[i] = rng.sign();
    out.items.push_back({std::move(c), ItemTag::ProofPattern, set_note("sign-block ", a)});
  }
  for (int t = 0; t < spec.two_block; ++t) {
    int ca = rng.uniform_int(1, std::max(1, n / 2));
    int cc = rng.uniform_int(1, n - ca);
    auto a = rng.subset(n, ca);
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
      if (!std::binary_search(a.begin(), a.end(), i)) rest.push_back(i);
    // pick cc elements of the complement, deterministically via rng
    std::vector<int> csel;
    {
      Rng pick(rng.next_u64());
      auto idx = pick.subset(static_cast<int>(rest.size()), cc);
      for (int i : idx) csel.push_back(rest[i]);
    }
    std::vector<double> signs(a.size());
    for (auto& sgn : signs) sgn = rng.sign();
    double top = 1.0;  // max modulus of the first block
    double s = (t % 2 == 0) ? (1.0 - spec.delta) * spec.tau * top
                            : (1.0 + spec.delta) / spec.tau * top;
    CoeffVec c = two_block_item(n, a, csel, signs, s);
    out.items.push_back(
        {std::move(c), ItemTag::ProofPattern, set_note("two-block ", a) + "+" + set_note("", csel)});
  }
  for (int t = 0; t < spec.spike_tail; ++t) {
    CoeffVec c(n);
    int spike = rng.uniform_int(0, n - 1);
    for (int i = 0; i < n; ++i) c[i] = rng.sign() * std::pow(spec.decay, i + 1);
    c[spike] = rng.sign();
    out.items.push_back({std::move(c), ItemTag::ProofPattern, "spike-tail"});
  }
  return out;
}

std::vector<CoeffVec> coeff_items(const Corpus& corpus) {
  std::vector<CoeffVec> out;
  out.reserve(corpus.items.size());
  for (const auto& item : corpus.items) out.push_back(item.coeffs);
  return out;
}

CorpusSpec default_corpus_spec(int n) {
  CorpusSpec spec;
  spec.gaussian = 200;
  spec.rademacher = 100;
  spec.block_max_card = std::min(n, 3);
  spec.sign_blocks = 80;
  spec.two_block = 80;
  spec.spike_tail = 60;
  return spec;
}

}  // namespace greedylab
