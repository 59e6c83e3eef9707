#include "oabqa/graph.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace oabqa::graph {

BaseGraph BaseGraph::from_documents(std::vector<ArticleRef> refs,
                                    std::span<const std::vector<text::Token>> documents,
                                    vsm::LogBase base, Execution exec) {
  if (documents.empty()) throw std::invalid_argument("base graph needs at least one article");
  if (refs.size() != documents.size())
    throw std::invalid_argument("base graph: article references and documents differ in length");

  BaseGraph g;
  g.vocab_ = vsm::build_vocabulary(documents, base);
  g.articles_.resize(documents.size());
  parallel_for(documents.size(), exec, [&](std::size_t i) {
    g.articles_[i].ref = std::move(refs[i]);
    g.articles_[i].vector = vsm::tfidf_vector(documents[i], g.vocab_);
  });
  for (const auto& a : g.articles_) {
    if (std::find(g.source_norms_.begin(), g.source_norms_.end(), a.ref.norm_urn) == g.source_norms_.end())
      g.source_norms_.push_back(a.ref.norm_urn);
  }
  return g;
}

BaseGraph build_base_graph(std::span<const corpus::Norm> norms, const text::PreprocessConfig& cfg,
                           vsm::LogBase base, Execution exec) {
  if (norms.empty()) throw std::invalid_argument("build_base_graph: no norms given");
  std::vector<ArticleRef> refs;
  std::vector<const corpus::Article*> sources;
  for (const auto& norm : norms) {
    for (const auto& article : norm.articles) {
      refs.push_back({norm.urn, article.id});
      sources.push_back(&article);
    }
  }
  std::vector<std::vector<text::Token>> documents(sources.size());
  parallel_for(sources.size(), exec,
               [&](std::size_t i) { documents[i] = text::preprocess(sources[i]->text, cfg); });
  return BaseGraph::from_documents(std::move(refs), documents, base, exec);
}

std::size_t QueryGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& edges : adjacency_) n += edges.size();
  return n;
}

NodeKind QueryGraph::kind(std::size_t node) const {
  if (node == kStatementNode) return NodeKind::statement;
  if (node <= base_->size()) return NodeKind::article;
  return NodeKind::alternative;
}

std::size_t QueryGraph::letter_slot(Letter letter) const {
  auto it = std::find(letters_.begin(), letters_.end(), letter);
  if (it == letters_.end())
    throw std::invalid_argument(std::string("alternative ") + to_char(letter) + " is not in the graph");
  return static_cast<std::size_t>(it - letters_.begin());
}

std::optional<std::size_t> QueryGraph::alternative_node(Letter letter) const {
  auto it = std::find(letters_.begin(), letters_.end(), letter);
  if (it == letters_.end()) return std::nullopt;
  return 1 + base_->size() + static_cast<std::size_t>(it - letters_.begin());
}

const vsm::TfIdfVector& QueryGraph::alternative_vector(Letter letter) const {
  return alternative_vecs_[letter_slot(letter)];
}

double QueryGraph::statement_weight(std::size_t article_index) const {
  return adjacency_[kStatementNode][article_index].weight;
}

double QueryGraph::alternative_weight(std::size_t article_index, Letter letter) const {
  return adjacency_[article_node(article_index)][letter_slot(letter)].weight;
}

QueryGraph attach_query(const BaseGraph& base, std::span<const text::Token> statement,
                        const std::map<Letter, std::vector<text::Token>>& alternatives,
                        Execution exec) {
  if (alternatives.empty()) throw std::invalid_argument("attach_query: no alternatives");
  QueryGraph g;
  g.base_ = &base;
  g.statement_vec_ = vsm::tfidf_vector(statement, base.vocabulary());
  for (const auto& [letter, tokens] : alternatives) {
    g.letters_.push_back(letter);
    g.alternative_vecs_.push_back(vsm::tfidf_vector(tokens, base.vocabulary()));
  }

  const std::size_t articles = base.size();
  const std::size_t first_alternative = 1 + articles;
  g.adjacency_.resize(first_alternative + g.letters_.size());
  g.adjacency_[QueryGraph::kStatementNode].resize(articles);
  parallel_for(articles, exec, [&](std::size_t a) {
    const auto& vec = base.article(a).vector;
    g.adjacency_[QueryGraph::kStatementNode][a] = {1 + a, vsm::edge_weight(g.statement_vec_, vec)};
    auto& out = g.adjacency_[1 + a];
    out.reserve(g.letters_.size());
    for (std::size_t k = 0; k < g.letters_.size(); ++k) {
      out.push_back({first_alternative + k, vsm::edge_weight(vec, g.alternative_vecs_[k])});
    }
  });
  return g;
}

ShortestPaths dijkstra(const QueryGraph& g, std::size_t source) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ShortestPaths sp;
  sp.distance.assign(g.node_count(), kInf);
  sp.predecessor.assign(g.node_count(), kNoNode);
  std::vector<bool> settled(g.node_count(), false);

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  sp.distance[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const Edge& e : g.out_edges(u)) {
      const double nd = d + e.weight;
      if (nd < sp.distance[e.to]) {
        sp.distance[e.to] = nd;
        sp.predecessor[e.to] = u;
        queue.emplace(nd, e.to);
      } else if (nd == sp.distance[e.to] && u < sp.predecessor[e.to]) {
        sp.predecessor[e.to] = u;
      }
    }
  }
  return sp;
}

namespace {

Justification make_justification(const QueryGraph& g, std::size_t article, Letter letter, double distance) {
  return {g.base().article(article).ref, article, letter, distance};
}

}  // namespace

Justification shortest_justification(const QueryGraph& g, Letter alternative) {
  const auto target = g.alternative_node(alternative);
  if (!target) throw std::invalid_argument(std::string("alternative ") + to_char(alternative) + " is not in the graph");
  const auto sp = dijkstra(g, QueryGraph::kStatementNode);
  const std::size_t via = sp.predecessor[*target];
  if (via == kNoNode || g.kind(via) != NodeKind::article)
    throw std::logic_error("justification path does not pass through an article");
  return make_justification(g, g.article_index(via), alternative, sp.distance[*target]);
}

Justification brute_force_justification(const QueryGraph& g, Letter alternative) {
  if (!g.alternative_node(alternative))
    throw std::invalid_argument(std::string("alternative ") + to_char(alternative) + " is not in the graph");
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < g.article_count(); ++a) {
    const double d = g.statement_weight(a) + g.alternative_weight(a, alternative);
    if (d < best_distance) {
      best_distance = d;
      best = a;
    }
  }
  return make_justification(g, best, alternative, best_distance);
}

std::size_t near_optimal_articles(const QueryGraph& g, Letter alternative, double epsilon) {
  std::vector<double> d(g.article_count());
  for (std::size_t a = 0; a < d.size(); ++a) d[a] = g.statement_weight(a) + g.alternative_weight(a, alternative);
  const double best = *std::min_element(d.begin(), d.end());
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [&](double x) { return x - best <= epsilon; }));
}

Ranking rank_alternatives(const QueryGraph& g, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("rank_alternatives: epsilon must be >= 0");
  const auto sp = dijkstra(g, QueryGraph::kStatementNode);
  Ranking r;
  for (Letter letter : g.letters()) {
    const std::size_t node = *g.alternative_node(letter);
    const std::size_t via = sp.predecessor[node];
    if (via == kNoNode || g.kind(via) != NodeKind::article)
      throw std::logic_error("justification path does not pass through an article");
    r.order.push_back({letter, make_justification(g, g.article_index(via), letter, sp.distance[node])});
  }
  std::sort(r.order.begin(), r.order.end(), [](const RankedAlternative& a, const RankedAlternative& b) {
    if (a.justification.distance != b.justification.distance)
      return a.justification.distance < b.justification.distance;
    return a.letter < b.letter;
  });
  const double best = r.order.front().justification.distance;
  const auto group_end = std::find_if(r.order.begin(), r.order.end(), [&](const RankedAlternative& x) {
    return x.justification.distance - best > epsilon;
  });
  std::sort(r.order.begin(), group_end,
            [](const RankedAlternative& a, const RankedAlternative& b) { return a.letter < b.letter; });
  r.tie = group_end - r.order.begin() >= 2;
  return r;
}

void dump_json(const QueryGraph& g, std::ostream& out) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    nlohmann::ordered_json node;
    node["id"] = n;
    switch (g.kind(n)) {
      case NodeKind::statement:
        node["kind"] = "statement";
        break;
      case NodeKind::article: {
        const auto& ref = g.base().article(g.article_index(n)).ref;
        node["kind"] = "article";
        node["norm_urn"] = ref.norm_urn;
        node["article_id"] = ref.article_id;
        break;
      }
      case NodeKind::alternative:
        node["kind"] = "alternative";
        node["letter"] = std::string(1, to_char(g.letters()[n - 1 - g.article_count()]));
        break;
    }
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const Edge& e : g.out_edges(n)) edges.push_back({{"to", e.to}, {"weight", e.weight}});
    node["edges"] = std::move(edges);
    nodes.push_back(std::move(node));
  }
  out << nlohmann::ordered_json{{"nodes", std::move(nodes)}}.dump(2) << '\n';
}

}  // namespace oabqa::graph
