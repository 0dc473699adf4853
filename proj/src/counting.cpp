#include "growthbound/counting.hpp"

#include <stdexcept>

#include "growthbound/checker.hpp"
#include "growthbound/error.hpp"

namespace growthbound {

std::string CountSeries::to_csv() const {
  std::string out = "n,count\n";
  for (std::size_t n = 0; n < counts.size(); ++n) out += std::to_string(n) + "," + counts[n].str() + "\n";
  return out;
}

CountSeries brute_count(int alphabet_size, const RationalExponent& e, std::optional<std::size_t> period_cap,
                        std::size_t n_max, std::size_t node_budget) {
  if (alphabet_size < 2) throw std::invalid_argument("alphabet size must be at least 2");
  // Without a cap, periods beyond n_max cannot occur in words of length <= n_max.
  const PowerRule rule(e, period_cap.value_or(std::max<std::size_t>(n_max, 1)));
  std::vector<std::uint64_t> raw(n_max + 1, 0);
  raw[0] = 1;
  std::size_t visited = 0;
  Word w;
  w.reserve(n_max);
  // Explicit DFS: w holds the current word, next[d] the next letter to try at depth d.
  std::vector<int> next(n_max + 1, 0);
  std::size_t depth = 0;
  while (true) {
    if (depth == n_max || next[depth] == alphabet_size) {
      if (depth == 0) break;
      w.pop_back();
      --depth;
      continue;
    }
    w.push_back(static_cast<Letter>(next[depth]++));
    if (rule.forbidden_suffix(w)) {
      w.pop_back();
      continue;
    }
    if (++visited > node_budget)
      throw ResourceError("brute-force budget of " + std::to_string(node_budget) + " words exceeded", visited);
    ++depth;
    ++raw[depth];
    next[depth] = 0;
  }
  CountSeries s{alphabet_size, e, period_cap, {}};
  s.counts.reserve(raw.size());
  for (auto c : raw) s.counts.emplace_back(c);
  return s;
}

std::vector<BigInt> graph_counts(const FactorGraph& g, std::size_t n_max) {
  if (n_max < g.order()) throw std::invalid_argument("length below graph order");
  std::vector<BigInt> x(g.state_count());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.multiplicity(i);
  std::vector<BigInt> out;
  std::vector<BigInt> y(g.state_count());
  for (std::size_t n = g.order();; ++n) {
    BigInt total = 0;
    for (const auto& v : x) total += v;
    out.push_back(std::move(total));
    if (n == n_max) break;
    for (auto& v : y) v = 0;
    for (const Edge& e : g.edges()) {
      if (x[e.src].is_zero()) continue;
      y[e.dst] += x[e.src] * e.weight;
    }
    std::swap(x, y);
  }
  return out;
}

BigInt graph_count(const FactorGraph& g, std::size_t n) {
  if (n < g.order()) throw std::invalid_argument("length below graph order");
  return std::move(graph_counts(g, n).back());
}

bool fekete_check(const CountSeries& s) {
  const auto& c = s.counts;
  for (std::size_t i = 1; i < c.size(); ++i)
    for (std::size_t j = i; i + j < c.size(); ++j)
      if (c[i + j] > c[i] * c[j]) return false;
  return true;
}

}  // namespace growthbound
