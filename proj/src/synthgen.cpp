#include "tonmf/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "tonmf/errors.hpp"
#include "tonmf/rng.hpp"

namespace tonmf {

namespace {

// A topic is a discrete distribution over a subset of the vocabulary,
// sampled via its cumulative weights.
struct Topic {
  std::vector<Index> support;
  std::vector<double> cumulative;  // normalized, last element == 1

  Index sample(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto pos = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()), support.size() - 1);
    return support[pos];
  }
};

Topic make_topic(std::vector<Index> support, Rng& rng) {
  Topic t;
  t.support = std::move(support);
  t.cumulative.resize(t.support.size());
  double total = 0.0;
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    // Bounded away from zero so every support term stays reachable.
    t.cumulative[i] = 0.05 + rng.uniform();
    total += t.cumulative[i];
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < t.cumulative.size(); ++i) {
    acc += t.cumulative[i] / total;
    t.cumulative[i] = acc;
  }
  t.cumulative.back() = 1.0;
  return t;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_terms < 1 || n_regular_docs < 1 || n_topics < 1 || doc_length_mean < 1) {
    throw ConfigError("counts must be positive");
  }
  if (n_outliers < 0) throw ConfigError("outlier count must be nonnegative");
  if (!(outlier_vocab_overlap >= 0.0 && outlier_vocab_overlap <= 1.0)) {
    throw ConfigError("overlap must lie in [0, 1]");
  }
  if (n_topics > n_terms) throw ConfigError("more topics than terms");
  const Index support_size = n_terms / (n_topics + 1);
  if (support_size < 1) {
    throw ConfigError("infeasible vocabulary split: need n_terms >= n_topics + 1");
  }
}

SynthCorpus generate(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);

  // Disjoint random supports: one block per regular topic plus one reserved
  // block for the outlier topic.
  std::vector<Index> vocab(static_cast<std::size_t>(cfg.n_terms));
  std::iota(vocab.begin(), vocab.end(), Index{0});
  rng.shuffle(vocab);
  const Index support_size = cfg.n_terms / (cfg.n_topics + 1);

  std::vector<Topic> topics;
  std::vector<Index> regular_vocab;
  for (Index t = 0; t < cfg.n_topics; ++t) {
    std::vector<Index> support(
        vocab.begin() + static_cast<std::ptrdiff_t>(t * support_size),
        vocab.begin() + static_cast<std::ptrdiff_t>((t + 1) * support_size));
    regular_vocab.insert(regular_vocab.end(), support.begin(), support.end());
    topics.push_back(make_topic(std::move(support), rng));
  }
  std::vector<Index> reserved(
      vocab.begin() + static_cast<std::ptrdiff_t>(cfg.n_topics * support_size),
      vocab.begin() + static_cast<std::ptrdiff_t>((cfg.n_topics + 1) * support_size));

  // Outlier support: an `overlap` fraction borrowed from one related regular
  // topic (vocabulary shared the way two adjacent subjects share terms), the
  // rest from the reserved block. n_shared never exceeds the related topic's
  // support because every block has the same size.
  const Index n_shared = static_cast<Index>(
      std::llround(cfg.outlier_vocab_overlap * static_cast<double>(support_size)));
  std::vector<Index> outlier_support;
  outlier_support.reserve(static_cast<std::size_t>(support_size));
  {
    const auto related = static_cast<std::size_t>(rng.uniform_int(cfg.n_topics));
    std::vector<Index> pool = topics[related].support;
    rng.shuffle(pool);
    outlier_support.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_shared));
    for (Index i = 0; i < support_size - n_shared; ++i) {
      outlier_support.push_back(reserved[static_cast<std::size_t>(i)]);
    }
  }
  if (outlier_support.empty()) outlier_support.push_back(reserved.front());
  const Topic outlier_topic = make_topic(std::move(outlier_support), rng);

  const Index n_docs = cfg.n_regular_docs + cfg.n_outliers;
  std::vector<std::map<Index, double>> columns(static_cast<std::size_t>(n_docs));
  LabelVector draft_labels(static_cast<std::size_t>(n_docs), 0);

  auto sample_doc = [&](std::map<Index, double>& column, bool outlier) {
    const Index length = std::max<Index>(1, rng.poisson(static_cast<double>(cfg.doc_length_mean)));
    // Regular documents are sparse topic mixtures: one dominant topic with
    // 80-100% of the mass, the remainder spread evenly. Documents from a
    // near-uniform mixture would blur the low-rank structure into noise.
    std::vector<double> mix_cdf;
    if (!outlier) {
      mix_cdf.assign(static_cast<std::size_t>(cfg.n_topics), 0.0);
      const auto primary = static_cast<std::size_t>(rng.uniform_int(cfg.n_topics));
      const double dominant = cfg.n_topics == 1 ? 1.0 : rng.uniform(0.8, 1.0);
      const double rest = cfg.n_topics == 1
                              ? 0.0
                              : (1.0 - dominant) / static_cast<double>(cfg.n_topics - 1);
      double acc = 0.0;
      for (std::size_t t = 0; t < mix_cdf.size(); ++t) {
        acc += (t == primary) ? dominant : rest;
        mix_cdf[t] = acc;
      }
      mix_cdf.back() = 1.0;
    }
    for (Index tok = 0; tok < length; ++tok) {
      const Topic* topic = &outlier_topic;
      if (!outlier) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(mix_cdf.begin(), mix_cdf.end(), u);
        const auto pos = std::min<std::size_t>(
            static_cast<std::size_t>(it - mix_cdf.begin()), mix_cdf.size() - 1);
        topic = &topics[pos];
      }
      column[topic->sample(rng)] += 1.0;
    }
  };

  for (Index d = 0; d < cfg.n_regular_docs; ++d) {
    sample_doc(columns[static_cast<std::size_t>(d)], false);
  }
  for (Index d = cfg.n_regular_docs; d < n_docs; ++d) {
    sample_doc(columns[static_cast<std::size_t>(d)], true);
    draft_labels[static_cast<std::size_t>(d)] = 1;
  }

  // Shuffle document positions; labels follow.
  std::vector<Index> position(static_cast<std::size_t>(n_docs));
  std::iota(position.begin(), position.end(), Index{0});
  rng.shuffle(position);

  std::vector<Triplet> entries;
  SynthCorpus corpus;
  corpus.labels.assign(static_cast<std::size_t>(n_docs), 0);
  for (Index slot = 0; slot < n_docs; ++slot) {
    const Index src = position[static_cast<std::size_t>(slot)];
    corpus.labels[static_cast<std::size_t>(slot)] = draft_labels[static_cast<std::size_t>(src)];
    for (const auto& [term, count] : columns[static_cast<std::size_t>(src)]) {
      entries.push_back({term, slot, count});
    }
  }
  corpus.matrix = TermDocMatrix::from_triplets(cfg.n_terms, n_docs, entries);
  return corpus;
}

}  // namespace tonmf
