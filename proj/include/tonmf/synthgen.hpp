#pragma once

#include <cstdint>

#include "tonmf/term_doc_matrix.hpp"

namespace tonmf {

// Planted-outlier corpus: regular documents are multinomial mixtures over
// disjoint sparse topic supports; outlier documents draw from a separate
// topic whose support overlaps the regular vocabulary by `outlier_vocab_overlap`
// (0 = fresh vocabulary, easy to spot; 1 = fully shared, hard). Document
// positions are randomly permuted and labels follow the permutation.
struct SynthConfig {
  Index n_terms = 2000;
  Index n_regular_docs = 475;
  Index n_outliers = 25;
  Index n_topics = 5;
  Index doc_length_mean = 150;
  double outlier_vocab_overlap = 0.3;
  std::uint64_t seed = 42;

  void validate() const;  // throws ConfigError, including infeasible supports
};

struct SynthCorpus {
  TermDocMatrix matrix;
  LabelVector labels;
};

SynthCorpus generate(const SynthConfig& cfg);

}  // namespace tonmf
