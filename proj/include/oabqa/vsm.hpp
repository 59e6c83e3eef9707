// TF-IDF vector space model over article documents.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oabqa/textproc.hpp"

namespace oabqa::vsm {

enum class LogBase { natural, ten };

/// Terms of the document corpus with their document frequencies. Term indices
/// follow lexicographic (byte) order of the terms.
class Vocabulary {
 public:
  std::size_t corpus_size() const { return corpus_size_; }
  std::size_t size() const { return terms_.size(); }
  LogBase log_base() const { return log_base_; }

  std::optional<std::size_t> index_of(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_[index]; }
  std::size_t doc_freq(std::size_t index) const { return doc_freq_[index]; }
  /// log(|D| / df); exactly 0 for terms present in every document.
  double idf(std::size_t index) const { return idf_[index]; }

  /// term, doc_freq and idf as tab-separated lines, in index order.
  void dump_tsv(std::ostream& out) const;

 private:
  friend Vocabulary build_vocabulary(std::span<const std::vector<text::Token>>, LogBase);

  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::vector<double> idf_;
  std::size_t corpus_size_ = 0;
  LogBase log_base_ = LogBase::natural;
};

/// Throws std::invalid_argument on an empty corpus.
Vocabulary build_vocabulary(std::span<const std::vector<text::Token>> documents,
                            LogBase base = LogBase::natural);

struct TermWeight {
  std::size_t term;
  double weight;

  friend bool operator==(const TermWeight&, const TermWeight&) = default;
};

/// Sparse TF-IDF vector. Only strictly positive weights are stored, ordered by
/// term index.
class TfIdfVector {
 public:
  TfIdfVector() = default;

  /// Builds a vector from explicit weights. Zero weights are dropped; negative
  /// weights or repeated terms throw std::invalid_argument.
  static TfIdfVector from_weights(std::vector<TermWeight> weights, std::size_t source_len);

  std::span<const TermWeight> entries() const { return entries_; }
  double weight(std::size_t term) const;
  /// Total token count of the source document, out-of-vocabulary tokens included.
  std::size_t source_len() const { return source_len_; }
  double squared_norm() const { return squared_norm_; }
  bool is_zero() const { return entries_.empty(); }
  /// True when the source document had no tokens at all.
  bool empty_source() const { return source_len_ == 0; }

  TfIdfVector scaled(double factor) const;

  friend bool operator==(const TfIdfVector&, const TfIdfVector&) = default;

 private:
  std::vector<TermWeight> entries_;
  std::size_t source_len_ = 0;
  double squared_norm_ = 0.0;
};

/// weight(t) = f(t,d) / |d| * idf(t). Out-of-vocabulary tokens count towards
/// |d| but get no weight.
TfIdfVector tfidf_vector(std::span<const text::Token> tokens, const Vocabulary& vocab);

double dot(const TfIdfVector& u, const TfIdfVector& v);

/// In [0, 1]; 0 when either vector is zero.
double cosine_similarity(const TfIdfVector& u, const TfIdfVector& v);

/// 1 - cosine_similarity.
double edge_weight(const TfIdfVector& u, const TfIdfVector& v);

}  // namespace oabqa::vsm
