#include "oabqa/vsm.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace oabqa::vsm {

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::dump_tsv(std::ostream& out) const {
  out << "term\tdoc_freq\tidf\n";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    out << terms_[i] << '\t' << doc_freq_[i] << '\t' << idf_[i] << '\n';
  }
}

Vocabulary build_vocabulary(std::span<const std::vector<text::Token>> documents, LogBase base) {
  if (documents.empty()) throw std::invalid_argument("build_vocabulary: empty corpus");
  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : documents) {
    const std::set<std::string_view> distinct(doc.begin(), doc.end());
    for (auto term : distinct) {
      auto it = df.find(term);
      if (it == df.end()) {
        df.emplace(std::string(term), 1);
      } else {
        ++it->second;
      }
    }
  }

  Vocabulary v;
  v.corpus_size_ = documents.size();
  v.log_base_ = base;
  const double n = static_cast<double>(documents.size());
  for (auto& [term, count] : df) {
    const std::size_t index = v.terms_.size();
    v.index_.emplace(term, index);
    v.terms_.push_back(term);
    v.doc_freq_.push_back(count);
    const double ratio = n / static_cast<double>(count);
    v.idf_.push_back(base == LogBase::natural ? std::log(ratio) : std::log10(ratio));
  }
  return v;
}

namespace {

double sum_of_squares(std::span<const TermWeight> entries) {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight * e.weight;
  return s;
}

}  // namespace

TfIdfVector TfIdfVector::from_weights(std::vector<TermWeight> weights, std::size_t source_len) {
  std::sort(weights.begin(), weights.end(),
            [](const TermWeight& a, const TermWeight& b) { return a.term < b.term; });
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i].weight >= 0.0)) throw std::invalid_argument("TfIdfVector: negative or NaN weight");
    if (i > 0 && weights[i].term == weights[i - 1].term)
      throw std::invalid_argument("TfIdfVector: repeated term");
  }
  std::erase_if(weights, [](const TermWeight& w) { return w.weight == 0.0; });
  TfIdfVector v;
  v.entries_ = std::move(weights);
  v.source_len_ = source_len;
  v.squared_norm_ = sum_of_squares(v.entries_);
  return v;
}

double TfIdfVector::weight(std::size_t term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const TermWeight& w, std::size_t t) { return w.term < t; });
  return it != entries_.end() && it->term == term ? it->weight : 0.0;
}

TfIdfVector TfIdfVector::scaled(double factor) const {
  std::vector<TermWeight> w = entries_;
  for (auto& e : w) e.weight *= factor;
  return from_weights(std::move(w), source_len_);
}

TfIdfVector tfidf_vector(std::span<const text::Token> tokens, const Vocabulary& vocab) {
  std::unordered_map<std::size_t, std::size_t> counts;
  for (const auto& t : tokens) {
    if (auto idx = vocab.index_of(t)) ++counts[*idx];
  }
  const double len = static_cast<double>(tokens.size());
  std::vector<TermWeight> weights;
  weights.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    weights.push_back({term, static_cast<double>(count) / len * vocab.idf(term)});
  }
  return TfIdfVector::from_weights(std::move(weights), tokens.size());
}

double dot(const TfIdfVector& u, const TfIdfVector& v) {
  const auto a = u.entries();
  const auto b = v.entries();
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].term < b[j].term) {
      ++i;
    } else if (b[j].term < a[i].term) {
      ++j;
    } else {
      s += a[i].weight * b[j].weight;
      ++i;
      ++j;
    }
  }
  return s;
}

double cosine_similarity(const TfIdfVector& u, const TfIdfVector& v) {
  if (u.is_zero() || v.is_zero()) return 0.0;
  // sqrt(x*x) == x in IEEE arithmetic, so cosine(v, v) is exactly 1
  const double c = dot(u, v) / std::sqrt(u.squared_norm() * v.squared_norm());
  return std::clamp(c, 0.0, 1.0);
}

double edge_weight(const TfIdfVector& u, const TfIdfVector& v) { return 1.0 - cosine_similarity(u, v); }

}  // namespace oabqa::vsm
