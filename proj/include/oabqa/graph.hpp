// Justification graph: article nodes shared across questions, plus a
// per-question overlay with one statement node and up to four alternative
// nodes. Every statement-to-alternative path goes through exactly one article.
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oabqa/corpus.hpp"
#include "oabqa/parallel.hpp"
#include "oabqa/textproc.hpp"
#include "oabqa/vsm.hpp"

namespace oabqa::graph {

struct ArticleRef {
  std::string norm_urn;
  std::string article_id;

  friend bool operator==(const ArticleRef&, const ArticleRef&) = default;
};

struct ArticleNode {
  ArticleRef ref;
  vsm::TfIdfVector vector;
};

/// Article nodes and the vocabulary their vectors were built against.
/// Immutable once built.
class BaseGraph {
 public:
  /// One document per article; throws std::invalid_argument when empty or
  /// when the two lists differ in length.
  static BaseGraph from_documents(std::vector<ArticleRef> refs,
                                  std::span<const std::vector<text::Token>> documents,
                                  vsm::LogBase base = vsm::LogBase::natural,
                                  Execution exec = Execution::parallel);

  std::size_t size() const { return articles_.size(); }
  const std::vector<ArticleNode>& articles() const { return articles_; }
  const ArticleNode& article(std::size_t index) const { return articles_[index]; }
  const std::vector<std::string>& source_norms() const { return source_norms_; }
  const vsm::Vocabulary& vocabulary() const { return vocab_; }

 private:
  std::vector<ArticleNode> articles_;
  std::vector<std::string> source_norms_;
  vsm::Vocabulary vocab_;
};

/// Preprocesses every article of every norm with `cfg` and builds the vocabulary
/// over all of them. Throws std::invalid_argument for an empty norm list.
BaseGraph build_base_graph(std::span<const corpus::Norm> norms, const text::PreprocessConfig& cfg,
                           vsm::LogBase base = vsm::LogBase::natural,
                           Execution exec = Execution::parallel);

enum class NodeKind { statement, article, alternative };

struct Edge {
  std::size_t to;
  double weight;
};

/// Node 0 is the statement, nodes 1..A the articles in base order, then one
/// node per alternative in letter order.
class QueryGraph {
 public:
  static constexpr std::size_t kStatementNode = 0;

  const BaseGraph& base() const { return *base_; }
  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  NodeKind kind(std::size_t node) const;
  std::span<const Edge> out_edges(std::size_t node) const { return adjacency_[node]; }

  std::size_t article_count() const { return base_->size(); }
  std::size_t article_node(std::size_t article_index) const { return 1 + article_index; }
  std::size_t article_index(std::size_t node) const { return node - 1; }
  std::optional<std::size_t> alternative_node(Letter letter) const;
  const std::vector<Letter>& letters() const { return letters_; }

  const vsm::TfIdfVector& statement_vector() const { return statement_vec_; }
  const vsm::TfIdfVector& alternative_vector(Letter letter) const;

  double statement_weight(std::size_t article_index) const;
  double alternative_weight(std::size_t article_index, Letter letter) const;

 private:
  friend QueryGraph attach_query(const BaseGraph&, std::span<const text::Token>,
                                 const std::map<Letter, std::vector<text::Token>>&, Execution);
  std::size_t letter_slot(Letter letter) const;

  const BaseGraph* base_ = nullptr;
  vsm::TfIdfVector statement_vec_;
  std::vector<Letter> letters_;
  std::vector<vsm::TfIdfVector> alternative_vecs_;
  std::vector<std::vector<Edge>> adjacency_;
};

/// Builds the per-question overlay. `base` must outlive the result. Throws
/// std::invalid_argument when `alternatives` is empty.
QueryGraph attach_query(const BaseGraph& base, std::span<const text::Token> statement,
                        const std::map<Letter, std::vector<text::Token>>& alternatives,
                        Execution exec = Execution::parallel);

struct Justification {
  ArticleRef article;
  std::size_t article_index = 0;
  Letter alternative = Letter::A;
  double distance = 0.0;  // statement edge + alternative edge
};

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct ShortestPaths {
  std::vector<double> distance;
  std::vector<std::size_t> predecessor;  // kNoNode for the source and unreachable nodes
};

/// Binary-heap Dijkstra over the explicit graph. Among equal-distance paths
/// the predecessor with the lowest node id wins.
ShortestPaths dijkstra(const QueryGraph& g, std::size_t source);

/// Article on the shortest statement-to-alternative path; ties go to the
/// lowest article index. Throws std::invalid_argument for an unknown letter.
Justification shortest_justification(const QueryGraph& g, Letter alternative);

/// Explicit argmin over the two-edge sums; same tie rule as the Dijkstra path.
Justification brute_force_justification(const QueryGraph& g, Letter alternative);

/// Number of articles whose path distance lies within `epsilon` of the best one.
std::size_t near_optimal_articles(const QueryGraph& g, Letter alternative, double epsilon);

struct RankedAlternative {
  Letter letter;
  Justification justification;
};

struct Ranking {
  std::vector<RankedAlternative> order;  // ascending distance
  bool tie = false;                      // top two within epsilon
};

/// Alternatives within `epsilon` of the best distance are ordered
/// alphabetically; the rest follow by ascending distance.
Ranking rank_alternatives(const QueryGraph& g, double epsilon);

/// Adjacency list as JSON: nodes with id, kind, label and weighted edges.
void dump_json(const QueryGraph& g, std::ostream& out);

}  // namespace oabqa::graph
