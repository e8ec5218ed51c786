#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greedylab/system.hpp"

namespace greedylab {

enum class ItemTag { RandomGaussian, Rademacher, BlockIndicator, ProofPattern, User };

std::string to_string(ItemTag tag);

struct CorpusItem {
  CoeffVec coeffs;
  ItemTag tag = ItemTag::User;
  std::string note;
};

/// Generator sizes. Families beyond plain random draws:
///  - block indicators 1_A for every nonempty A with |A| <= block_max_card,
///  - sampled sign vectors eps*1_A,
///  - two-block vectors sum_A eps_i x_i + s * sum_C x_k with C disjoint from A
///    and s in {(1-delta)*tau, (1+delta)/tau} times the top modulus,
///  - spike-plus-tail vectors with geometric decay.
struct CorpusSpec {
  int gaussian = 0;
  int rademacher = 0;
  int block_max_card = 0;
  int sign_blocks = 0;
  int two_block = 0;
  int spike_tail = 0;
  double tau = 0.5;
  double delta = 0.01;
  double decay = 0.5;

  std::string to_string() const;
  static CorpusSpec parse(const std::string& text);  // "gaussian=200,blocks=3,..."
};

struct Corpus {
  std::uint64_t seed = 0;
  CorpusSpec spec;
  std::string generator_id;
  std::vector<CorpusItem> items;
};

/// Deterministic for a given (spec, seed); contains no zero vectors.
/// Throws std::invalid_argument when a requested family exceeds the
/// system size (e.g. block_max_card > N).
Corpus generate_corpus(const MinimalSystem& sys, const CorpusSpec& spec, std::uint64_t seed);

/// The two-block shape in coefficient space: eps_i on a_set, s on c_set.
CoeffVec two_block_item(int n, const std::vector<int>& a_set, const std::vector<int>& c_set,
                        const std::vector<double>& signs, double s);

std::vector<CoeffVec> coeff_items(const Corpus& corpus);

/// A balanced default mix (~500+ items) for estimator runs.
CorpusSpec default_corpus_spec(int n);

}  // namespace greedylab
