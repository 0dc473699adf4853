#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "growthbound/error.hpp"
#include "growthbound/factor_graph.hpp"

using namespace growthbound;

namespace {

Word w(std::initializer_list<int> letters) {
  Word out;
  for (int c : letters) out.push_back(static_cast<Letter>(c));
  return out;
}

TaskSpec spec(int k, const char* e, std::size_t m, bool sym = false) {
  TaskSpec s;
  s.alphabet_size = k;
  s.exponent = parse_exponent(e);
  s.period_cap = m;
  s.symmetry = sym;
  return s;
}

}  // namespace

TEST_CASE("canonical_form relabels by first occurrence") {
  CHECK(canonical_form(w({2, 1, 0, 2}), 3) == w({0, 1, 2, 0}));
  CHECK(canonical_form(w({0, 0, 0}), 3) == w({0, 0, 0}));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) CHECK(canonical_form(w({a, b}), 4) == w({0, 1}));
  CHECK_THROWS(canonical_form(w({3}), 3));
}

TEST_CASE("canonical_form is idempotent and renaming invariant") {
  std::mt19937 rng(7);
  std::vector<int> perm = {0, 1, 2, 3};
  for (int trial = 0; trial < 500; ++trial) {
    Word x(1 + rng() % 12);
    for (auto& c : x) c = static_cast<Letter>(rng() % 4);
    const Word cx = canonical_form(x, 4);
    CHECK(canonical_form(cx, 4) == cx);
    std::shuffle(perm.begin(), perm.end(), rng);
    Word y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [&](Letter c) { return static_cast<Letter>(perm[c]); });
    CHECK(canonical_form(y, 4) == cx);
  }
}

TEST_CASE("orbit sizes") {
  CHECK(orbit_size(3, 0) == 1);
  CHECK(orbit_size(3, 1) == 3);
  CHECK(orbit_size(3, 2) == 6);
  CHECK(orbit_size(3, 3) == 6);
  CHECK(orbit_size(15, 2) == 210);
}

TEST_CASE("LabelStore packs across word boundaries") {
  // 15 letters take 4 bits: 16 per 64-bit word, so length 37 needs 3 words.
  LabelStore store(15, 37);
  std::vector<Word> words;
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Word x(37);
    for (auto& c : x) c = static_cast<Letter>(rng() % 15);
    words.push_back(x);
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (const auto& x : words) store.push_back(x);
  for (std::size_t i = 0; i < words.size(); ++i) {
    CHECK(store.at(i) == words[i]);
    CHECK(store.find(words[i]) == i);
  }
  Word missing(37, 14);
  CHECK_FALSE(store.find(missing));
  CHECK_THROWS(store.push_back(words.front()));
}

TEST_CASE("binary cube-free, m = 1") {
  const FactorGraph g = build_graph(spec(2, "3", 1));
  CHECK(g.order() == 2);
  REQUIRE(g.state_count() == 4);
  CHECK(g.state(0) == w({0, 0}));
  CHECK(g.state(1) == w({0, 1}));
  CHECK(g.state(2) == w({1, 0}));
  CHECK(g.state(3) == w({1, 1}));
  const std::vector<Edge> expected = {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}, {2, 0, 1}, {2, 1, 1}, {3, 2, 1}};
  CHECK(std::vector<Edge>(g.edges().begin(), g.edges().end()) == expected);
  CHECK(serialize(g) == "2 3 1 0 1 0 2 4 6\n00\n01\n10\n11\n0 1 1\n1 2 1\n1 3 1\n2 0 1\n2 1 1\n3 2 1\n");
}

TEST_CASE("ternary square-free, m = 1") {
  const FactorGraph g = build_graph(spec(3, "2", 1));
  CHECK(g.order() == 1);
  REQUIRE(g.state_count() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.out_edges(i).size() == 2);
    for (const Edge& e : g.out_edges(i)) CHECK(e.dst != i);
  }
}

TEST_CASE("symmetric binary cube-free, m = 1") {
  const FactorGraph g = build_graph(spec(2, "3", 1, true));
  REQUIRE(g.state_count() == 2);
  CHECK(g.state(0) == w({0, 0}));
  CHECK(g.state(1) == w({0, 1}));
  const std::vector<Edge> expected = {{0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
  CHECK(std::vector<Edge>(g.edges().begin(), g.edges().end()) == expected);
  CHECK(g.multiplicity(0) == 2);
  CHECK(g.multiplicity(1) == 2);
}

TEST_CASE("graph invariants on a small grid") {
  for (int k : {2, 3, 4}) {
    for (const char* e : {"2", "2+", "7/3", "3", "3/2+", "7/4+"}) {
      for (std::size_t m = 1; m <= 3; ++m) {
        for (bool sym : {false, true}) {
          const TaskSpec s = spec(k, e, m, sym);
          const FactorGraph g = build_graph(s);
          CHECK(g.order() == forbidden_length(s.exponent, m) - 1);
          for (std::size_t i = 0; i < g.state_count(); ++i) {
            const Word label = g.state(i);
            REQUIRE(label.size() == g.order());
            REQUIRE(is_allowed(label, s.exponent, m));
            if (sym) REQUIRE(canonical_form(label, k) == label);
            std::uint32_t out = 0;
            for (const Edge& edge : g.out_edges(i)) {
              out += edge.weight;
              if (!sym) REQUIRE(edge.weight == 1);
            }
            REQUIRE(out <= static_cast<std::uint32_t>(k));
          }
          // Deterministic and round-trips through text.
          const std::string text = serialize(g);
          CHECK(serialize(build_graph(s)) == text);
          const FactorGraph back = deserialize(text, s);
          CHECK(back == g);
          CHECK(serialize(back) == text);
        }
      }
    }
  }
}

TEST_CASE("state cap and degenerate builds") {
  TaskSpec s = spec(3, "3", 3);
  s.state_cap = 10;
  try {
    build_graph(s);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.partial() == 10);
  }
  // Binary words of length 5 all contain a square of period <= 3.
  const FactorGraph empty = build_graph(spec(2, "2", 3));
  CHECK(empty.order() == 5);
  CHECK(empty.empty());
  CHECK(scc_decompose(empty).components.empty());
  // Exponent 1 forbids every letter: one empty state, no edges.
  const FactorGraph trivial = build_graph(spec(2, "1", 1));
  CHECK(trivial.order() == 0);
  CHECK(trivial.state_count() == 1);
  CHECK(trivial.edge_count() == 0);
}

TEST_CASE("deserialize rejects malformed text") {
  const std::string good = serialize(build_graph(spec(2, "3", 1)));
  CHECK_NOTHROW(deserialize(good));
  CHECK_THROWS_AS(deserialize(good.substr(0, good.size() - 1)), Error);
  CHECK_THROWS_AS(deserialize(good + "0 0 1\n"), Error);
  std::string bad_letter = good;
  bad_letter[good.find("\n00\n") + 1] = '2';
  CHECK_THROWS_AS(deserialize(bad_letter), Error);
  CHECK_THROWS_AS(deserialize("2 3 1 0 1 0 2 1 1\n00\n0 5 1\n"), Error);
}

TEST_CASE("scc_decompose examples") {
  const SccPartition p = scc_decompose(build_graph(spec(2, "3", 1)));
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].size() == 4);

  // 0 <-> 1, 1 -> 2 (sink).
  const std::vector<std::size_t> off = {0, 1, 3, 3};
  const std::vector<std::uint32_t> tgt = {1, 0, 2};
  const SccPartition q = scc_decompose(off, tgt);
  REQUIRE(q.components.size() == 2);
  CHECK(q.components[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(q.components[1] == std::vector<std::uint32_t>{2});
  CHECK(q.topological_order == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("scc_decompose matches mutual reachability on random graphs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 14;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    std::vector<std::size_t> off(n + 1, 0);
    std::vector<std::uint32_t> tgt;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rng() % 5 == 0) {
          adj[i][j] = true;
          tgt.push_back(static_cast<std::uint32_t>(j));
        }
      }
      off[i + 1] = tgt.size();
    }
    auto reach = adj;
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (reach[i][m] && reach[m][j]) reach[i][j] = true;
    const SccPartition p = scc_decompose(off, tgt);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        REQUIRE((p.component_of[i] == p.component_of[j]) == (reach[i][j] && reach[j][i]));
    // Ids ordered by smallest member; topological order respects edges.
    for (std::size_t c = 1; c < p.components.size(); ++c) REQUIRE(p.components[c - 1][0] < p.components[c][0]);
    std::vector<std::size_t> pos(p.components.size());
    for (std::size_t i = 0; i < p.topological_order.size(); ++i) pos[p.topological_order[i]] = i;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (adj[i][j] && p.component_of[i] != p.component_of[j])
          REQUIRE(pos[p.component_of[i]] < pos[p.component_of[j]]);
  }
}
