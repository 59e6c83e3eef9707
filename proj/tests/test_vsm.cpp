#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "oabqa/vsm.hpp"
#include "support/test_support.hpp"

using namespace oabqa;
using namespace oabqa::vsm;
using Docs = std::vector<std::vector<std::string>>;

namespace {

std::size_t idx(const Vocabulary& v, const char* term) { return *v.index_of(term); }

TfIdfVector vec(std::vector<TermWeight> w) { return TfIdfVector::from_weights(std::move(w), 1); }

}  // namespace

TEST_CASE("build_vocabulary counts documents, not occurrences") {
  const Docs docs{{"a", "b", "a"}, {"a", "c"}};
  const Vocabulary v = build_vocabulary(docs);
  CHECK(v.corpus_size() == 2);
  CHECK(v.size() == 3);
  CHECK(v.doc_freq(idx(v, "a")) == 2);
  CHECK(v.doc_freq(idx(v, "b")) == 1);
  CHECK(v.doc_freq(idx(v, "c")) == 1);
  CHECK_FALSE(v.index_of("d").has_value());
}

TEST_CASE("build_vocabulary: single document, empty corpus") {
  const Docs one{{"a"}};
  const Vocabulary v = build_vocabulary(one);
  CHECK(v.corpus_size() == 1);
  CHECK(v.doc_freq(idx(v, "a")) == 1);
  CHECK(v.idf(idx(v, "a")) == 0.0);
  CHECK_THROWS_AS(build_vocabulary(Docs{}), std::invalid_argument);
}

TEST_CASE("tfidf_vector: hand-evaluated weights with natural log") {
  const Docs docs{{"a", "b", "a"}, {"a", "c"}};
  const Vocabulary v = build_vocabulary(docs);
  const TfIdfVector d1 = tfidf_vector(docs[0], v);
  CHECK(d1.weight(idx(v, "a")) == 0.0);
  CHECK(d1.weight(idx(v, "b")) == doctest::Approx(0.23105).epsilon(1e-5));
  CHECK(d1.weight(idx(v, "b")) == doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-15));
  CHECK(d1.entries().size() == 1);  // zero weight for "a" omitted
  CHECK(d1.source_len() == 3);
}

TEST_CASE("tfidf_vector: base ten scales every idf by 1/ln 10") {
  const Docs docs{{"a", "b", "a"}, {"a", "c"}};
  const Vocabulary v = build_vocabulary(docs, LogBase::ten);
  CHECK(tfidf_vector(docs[0], v).weight(idx(v, "b")) == doctest::Approx(std::log10(2.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("tfidf_vector: out-of-vocabulary tokens have no weight but count in the length") {
  const Docs docs{{"a", "b", "a"}, {"a", "c"}};
  const Vocabulary v = build_vocabulary(docs);
  const std::vector<std::string> q{"xyz", "b"};
  const TfIdfVector t = tfidf_vector(q, v);
  CHECK(t.entries().size() == 1);
  CHECK(t.source_len() == 2);
  CHECK(t.weight(idx(v, "b")) == doctest::Approx(0.5 * std::log(2.0)));
  const std::vector<std::string> only_oov{"xyz"};
  CHECK(tfidf_vector(only_oov, v).is_zero());
}

TEST_CASE("tfidf_vector: all-common terms and empty input give zero vectors") {
  const Docs docs{{"a", "b", "a"}, {"a", "c"}};
  const Vocabulary v = build_vocabulary(docs);
  const std::vector<std::string> common{"a", "a"};
  CHECK(tfidf_vector(common, v).is_zero());
  const TfIdfVector empty = tfidf_vector(std::vector<std::string>{}, v);
  CHECK(empty.is_zero());
  CHECK(empty.empty_source());
}

TEST_CASE("cosine and edge weight examples") {
  const TfIdfVector u = vec({{0, 1.0}, {1, 1.0}});
  const TfIdfVector v = vec({{0, 1.0}});
  CHECK(cosine_similarity(u, v) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(cosine_similarity(u, v) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(edge_weight(u, v) == doctest::Approx(0.29289).epsilon(1e-4));
  CHECK(cosine_similarity(u, u) == 1.0);
  CHECK(edge_weight(u, u) == 0.0);
  const TfIdfVector w = vec({{2, 3.0}});
  CHECK(cosine_similarity(u, w) == 0.0);
  CHECK(edge_weight(u, w) == 1.0);
  CHECK(cosine_similarity(u, TfIdfVector{}) == 0.0);
  CHECK(edge_weight(TfIdfVector{}, TfIdfVector{}) == 1.0);
}

TEST_CASE("from_weights validates input") {
  CHECK_THROWS_AS(vec({{0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(vec({{0, 1.0}, {0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(vec({{0, std::nan("")}}), std::invalid_argument);
  CHECK(vec({{3, 0.0}, {1, 2.0}}).entries().size() == 1);
}

TEST_CASE("dump_tsv lists term, doc_freq and idf") {
  const Docs docs{{"b", "a"}, {"a"}};
  std::ostringstream out;
  build_vocabulary(docs).dump_tsv(out);
  CHECK(out.str().rfind("term\tdoc_freq\tidf\na\t2\t0\nb\t1\t", 0) == 0);
}

TEST_CASE("stored weights match a brute-force recomputation on random corpora") {
  std::mt19937_64 rng(1994);
  for (int round = 0; round < 50; ++round) {
    const auto docs = testing::random_documents(rng, 1 + rng() % 60, 1, 30, 20);
    const Vocabulary v = build_vocabulary(docs);
    const auto oracle = testing::brute_force_tfidf(docs);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const TfIdfVector t = tfidf_vector(docs[d], v);
      CHECK(t.entries().size() == oracle[d].size());
      for (const auto& [term, weight] : oracle[d]) CHECK(std::abs(t.weight(idx(v, term.c_str())) - weight) <= 1e-12);
      for (std::size_t term = 0; term < v.size(); ++term) {
        if (v.doc_freq(term) == v.corpus_size()) CHECK(t.weight(term) == 0.0);
      }
    }
  }
}

TEST_CASE("property: cosine symmetry, bounds and scale invariance") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> weight(0.0, 5.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<std::size_t> term(0, 15);
  auto random_vec = [&] {
    std::map<std::size_t, double> m;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) m[term(rng)] = weight(rng);
    std::vector<TermWeight> w;
    for (auto [t, x] : m) w.push_back({t, x});
    return TfIdfVector::from_weights(std::move(w), static_cast<std::size_t>(n));
  };
  for (int i = 0; i < 2000; ++i) {
    const TfIdfVector u = random_vec();
    const TfIdfVector v = random_vec();
    const double c = cosine_similarity(u, v);
    CHECK(c == cosine_similarity(v, u));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    const double alpha = scale(rng);
    CHECK(std::abs(cosine_similarity(u.scaled(alpha), v) - c) <= 1e-12);
    const double w = edge_weight(u, v);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    if (!u.is_zero()) CHECK(cosine_similarity(u, u) == 1.0);
  }
}
