#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "growthbound/exponent.hpp"
#include "growthbound/factor_graph.hpp"

namespace growthbound {

using BigInt = boost::multiprecision::cpp_int;

// Word counts C(n) for n = 0..n_max of the k-ary language avoiding the
// exponent, with periods capped at m (or uncapped: the power-free language).
struct CountSeries {
  int alphabet_size = 2;
  RationalExponent exponent{2, 1, false};
  std::optional<std::size_t> period_cap;
  std::vector<BigInt> counts;

  // CSV with header `n,count`.
  std::string to_csv() const;
};

inline constexpr std::size_t kBruteForceBudget = 100'000'000;

// Exhaustive DFS over the k-ary tree, pruning at the first forbidden suffix.
// Throws ResourceError when more than `node_budget` words would be visited.
CountSeries brute_count(int alphabet_size, const RationalExponent& e, std::optional<std::size_t> period_cap,
                        std::size_t n_max, std::size_t node_budget = kBruteForceBudget);

// Number of words of length n >= g.order() in the approximation language,
// by exact iterated vector-matrix products. Symmetric graphs start each class
// with its orbit size, so the result is the same as for the full graph.
BigInt graph_count(const FactorGraph& g, std::size_t n);

// Counts for n = order..n_max in one pass; entry i is the count at order + i.
std::vector<BigInt> graph_counts(const FactorGraph& g, std::size_t n_max);

// Submultiplicativity: counts[i + j] <= counts[i] * counts[j] throughout.
bool fekete_check(const CountSeries& s);

}  // namespace growthbound
