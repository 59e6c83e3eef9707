#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "oabqa/graph.hpp"
#include "support/test_support.hpp"

using namespace oabqa;
using namespace oabqa::graph;
using Tokens = std::vector<std::string>;

namespace {

BaseGraph base_of(const std::vector<Tokens>& docs) {
  std::vector<ArticleRef> refs;
  for (std::size_t i = 0; i < docs.size(); ++i) refs.push_back({"urn:t", "art" + std::to_string(i + 1)});
  return BaseGraph::from_documents(refs, docs);
}

void check_same(const Justification& a, const Justification& b) {
  CHECK(a.article_index == b.article_index);
  CHECK(a.article == b.article);
  CHECK(a.alternative == b.alternative);
  CHECK(std::abs(a.distance - b.distance) <= 1e-12);
}

}  // namespace

TEST_CASE("build_base_graph: one node per article across norms") {
  corpus::Norm n1{"urn:a", {{"art1", "advocacia privada"}}};
  corpus::Norm n2{"urn:b", {{"art1", "honorários"}, {"art2", "publicidade"}}};
  const std::vector<corpus::Norm> one{n1};
  CHECK(build_base_graph(one, {}).size() == 1);
  const std::vector<corpus::Norm> both{n1, n2};
  const BaseGraph g = build_base_graph(both, {});
  CHECK(g.size() == 3);
  CHECK(g.source_norms() == std::vector<std::string>{"urn:a", "urn:b"});
  CHECK(g.vocabulary().corpus_size() == 3);
  CHECK(g.article(2).ref == ArticleRef{"urn:b", "art2"});
  CHECK_THROWS_AS(build_base_graph(std::vector<corpus::Norm>{}, {}), std::invalid_argument);
}

TEST_CASE("attach_query: edge counts and topology") {
  std::mt19937_64 rng(3);
  for (std::size_t articles : {1u, 3u, 17u}) {
    const BaseGraph base = testing::random_base(rng, articles);
    for (std::size_t k = 1; k <= 4; ++k) {
      const QueryGraph g = attach_query(base, Tokens{"t1", "t2"}, testing::random_alternatives(rng, k));
      CHECK(g.edge_count() == (1 + k) * articles);
      CHECK(g.node_count() == 1 + articles + k);
      for (const Edge& e : g.out_edges(QueryGraph::kStatementNode)) CHECK(g.kind(e.to) == NodeKind::article);
      for (std::size_t a = 0; a < articles; ++a) {
        for (const Edge& e : g.out_edges(g.article_node(a))) CHECK(g.kind(e.to) == NodeKind::alternative);
      }
      for (Letter l : g.letters()) CHECK(g.out_edges(*g.alternative_node(l)).empty());
    }
  }
  const BaseGraph base = base_of({{"a"}});
  CHECK(attach_query(base, Tokens{"a"}, {{Letter::A, Tokens{"a"}}}).edge_count() == 2);
  CHECK_THROWS_AS(attach_query(base, Tokens{"a"}, {}), std::invalid_argument);
}

TEST_CASE("statement and alternative identical to one article give distance 0") {
  const std::vector<Tokens> docs{{"x", "y", "z"}, {"p", "q"}, {"x", "q", "r"}};
  const BaseGraph base = base_of(docs);
  const QueryGraph g = attach_query(base, docs[0], {{Letter::A, docs[0]}, {Letter::B, Tokens{"r"}}});
  CHECK(g.statement_weight(0) == 0.0);
  CHECK(g.alternative_weight(0, Letter::A) == 0.0);
  const Justification j = shortest_justification(g, Letter::A);
  CHECK(j.article_index == 0);
  CHECK(j.distance == 0.0);
}

TEST_CASE("single-article graph: the article is the justification") {
  const BaseGraph base = base_of({{"a", "b"}});
  const QueryGraph g = attach_query(base, Tokens{"a"}, {{Letter::C, Tokens{"b"}}});
  const Justification j = shortest_justification(g, Letter::C);
  CHECK(j.article.article_id == "art1");
  CHECK(j.distance == g.statement_weight(0) + g.alternative_weight(0, Letter::C));
  check_same(j, brute_force_justification(g, Letter::C));
  CHECK_THROWS_AS(shortest_justification(g, Letter::A), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_justification(g, Letter::A), std::invalid_argument);
}

TEST_CASE("Dijkstra equals brute force on random instances") {
  std::mt19937_64 rng(200);
  for (int round = 0; round < 200; ++round) {
    const BaseGraph base = testing::random_base(rng, 1 + rng() % 50);
    const auto statement = testing::random_documents(rng, 1, 0, 15, 20).front();
    const QueryGraph g = attach_query(base, statement, testing::random_alternatives(rng, 4));
    for (Letter l : g.letters()) {
      const Justification a = shortest_justification(g, l);
      check_same(a, brute_force_justification(g, l));
      CHECK(a.distance == g.statement_weight(a.article_index) + g.alternative_weight(a.article_index, l));
      CHECK(a.distance >= 0.0);
      CHECK(a.distance <= 2.0);
    }
  }
}

TEST_CASE("ties between articles go to the lowest base index") {
  // three identical articles: every path has the same length
  const BaseGraph base = base_of({{"u", "v"}, {"w"}, {"u", "v"}, {"u", "v"}});
  const QueryGraph g = attach_query(base, Tokens{"u"}, {{Letter::A, Tokens{"v"}}});
  CHECK(shortest_justification(g, Letter::A).article_index == 0);
  CHECK(brute_force_justification(g, Letter::A).article_index == 0);
  CHECK(near_optimal_articles(g, Letter::A, 1e-9) == 3);
}

TEST_CASE("permuting article order only changes tie resolution") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + rng() % 20;
    const auto docs = testing::random_documents(rng, n, 1, 10, 8);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Tokens> permuted;
    std::vector<ArticleRef> refs, prefs;
    for (std::size_t i = 0; i < n; ++i) {
      refs.push_back({"urn:t", "art" + std::to_string(i + 1)});
      permuted.push_back(docs[perm[i]]);
      prefs.push_back({"urn:t", "art" + std::to_string(perm[i] + 1)});
    }
    const BaseGraph a = BaseGraph::from_documents(refs, docs);
    const BaseGraph b = BaseGraph::from_documents(prefs, permuted);
    const auto statement = testing::random_documents(rng, 1, 1, 8, 8).front();
    const auto alts = testing::random_alternatives(rng, 1, 8);
    const QueryGraph ga = attach_query(a, statement, alts);
    const QueryGraph gb = attach_query(b, statement, alts);
    const Justification ja = brute_force_justification(ga, Letter::A);
    const Justification jb = brute_force_justification(gb, Letter::A);
    CHECK(std::abs(ja.distance - jb.distance) <= 1e-12);
    if (near_optimal_articles(ga, Letter::A, 0.0) == 1) CHECK(ja.article == jb.article);
  }
}

TEST_CASE("rank_alternatives: clear winner") {
  const BaseGraph base = base_of({{"x", "y"}, {"p", "q"}});
  const QueryGraph g =
      attach_query(base, Tokens{"x"}, {{Letter::A, Tokens{"zz"}}, {Letter::B, Tokens{"x", "y"}}, {Letter::C, Tokens{"q"}}});
  const Ranking r = rank_alternatives(g, 1e-9);
  CHECK(r.order.front().letter == Letter::B);
  CHECK(r.order.front().justification.article_index == 0);
  CHECK_FALSE(r.tie);
  for (std::size_t i = 1; i < r.order.size(); ++i)
    CHECK(r.order[i - 1].justification.distance <= r.order[i].justification.distance);
}

TEST_CASE("rank_alternatives: duplicated alternatives tie for any epsilon >= 0") {
  const BaseGraph base = base_of({{"x", "y"}, {"p", "q"}});
  const Tokens same{"x", "q"};
  const QueryGraph g = attach_query(base, Tokens{"x"}, {{Letter::D, same}, {Letter::B, same}, {Letter::A, Tokens{"zz"}}});
  for (double eps : {0.0, 1e-9}) {
    const Ranking r = rank_alternatives(g, eps);
    CHECK(r.tie);
    CHECK(r.order[0].letter == Letter::B);
    CHECK(r.order[1].letter == Letter::D);
  }
  CHECK_THROWS_AS(rank_alternatives(g, -1.0), std::invalid_argument);
}

TEST_CASE("rank_alternatives: near-equal distances are grouped alphabetically within epsilon") {
  // alternatives differing only in out-of-vocabulary words
  const BaseGraph base = base_of({{"elegibilidade", "cargos"}, {"honorarios"}});
  const QueryGraph g = attach_query(
      base, Tokens{"cargos"},
      {{Letter::A, Tokens{"apenas", "bibiana", "elegibilidade"}}, {Letter::B, Tokens{"apenas", "rodrigo", "elegibilidade"}}});
  const Ranking r = rank_alternatives(g, 1e-9);
  CHECK(r.tie);
  CHECK(r.order[0].letter == Letter::A);
}

TEST_CASE("zero statement vector: statement edges weigh 1, ranking decided by alternatives") {
  const BaseGraph base = base_of({{"a", "b"}, {"c"}});
  const QueryGraph g = attach_query(base, Tokens{"unknown"}, {{Letter::A, Tokens{"c"}}, {Letter::B, Tokens{"zz"}}});
  for (std::size_t a = 0; a < base.size(); ++a) CHECK(g.statement_weight(a) == 1.0);
  const Ranking r = rank_alternatives(g, 1e-9);
  CHECK(r.order[0].letter == Letter::A);
  CHECK(r.order[0].justification.article_index == 1);
}

TEST_CASE("serial and parallel kernels produce identical graphs") {
  std::mt19937_64 rng(11);
  const auto docs = testing::random_documents(rng, 120, 1, 30, 40);
  std::vector<ArticleRef> refs;
  for (std::size_t i = 0; i < docs.size(); ++i) refs.push_back({"urn:t", "art" + std::to_string(i + 1)});
  const BaseGraph s = BaseGraph::from_documents(refs, docs, vsm::LogBase::natural, Execution::serial);
  const BaseGraph p = BaseGraph::from_documents(refs, docs, vsm::LogBase::natural, Execution::parallel);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.article(i).vector == p.article(i).vector);
  const auto alts = testing::random_alternatives(rng, 4, 40);
  const QueryGraph gs = attach_query(s, docs[3], alts, Execution::serial);
  const QueryGraph gp = attach_query(p, docs[3], alts, Execution::parallel);
  REQUIRE(gs.node_count() == gp.node_count());
  for (std::size_t n = 0; n < gs.node_count(); ++n) {
    const auto a = gs.out_edges(n);
    const auto b = gp.out_edges(n);
    REQUIRE(a.size() == b.size());
    for (std::size_t e = 0; e < a.size(); ++e) {
      CHECK(a[e].to == b[e].to);
      CHECK(a[e].weight == b[e].weight);
    }
  }
}

TEST_CASE("dump_json writes every node with its edges") {
  const BaseGraph base = base_of({{"a"}, {"b"}});
  const QueryGraph g = attach_query(base, Tokens{"a"}, {{Letter::A, Tokens{"b"}}, {Letter::C, Tokens{"a"}}});
  std::ostringstream out;
  dump_json(g, out);
  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j["nodes"].size() == 5);
  CHECK(j["nodes"][0]["kind"] == "statement");
  CHECK(j["nodes"][0]["edges"].size() == 2);
  CHECK(j["nodes"][1]["article_id"] == "art1");
  CHECK(j["nodes"][4]["letter"] == "C");
  std::size_t edges = 0;
  for (const auto& n : j["nodes"]) edges += n["edges"].size();
  CHECK(edges == g.edge_count());
}
