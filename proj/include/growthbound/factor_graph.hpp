#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "growthbound/checker.hpp"
#include "growthbound/exponent.hpp"

namespace growthbound {

// Relabels letters by order of first occurrence: 2102 -> 0120.
Word canonical_form(std::span<const Letter> w, int alphabet_size);

// Number of words in the renaming orbit of a word with `distinct` distinct
// letters over a k-letter alphabet: k (k-1) ... (k-distinct+1).
std::uint64_t orbit_size(int alphabet_size, std::size_t distinct);

// Fixed-width packed storage for equal-length words, kept in lexicographic
// order so lookups are binary searches.
class LabelStore {
 public:
  LabelStore() = default;
  LabelStore(int alphabet_size, std::size_t length);

  std::size_t size() const noexcept { return count_; }
  std::size_t length() const noexcept { return length_; }

  // Appends a label; labels must arrive in strictly increasing order.
  void push_back(std::span<const Letter> w);
  void unpack(std::size_t index, std::span<Letter> out) const;
  Word at(std::size_t index) const;
  std::optional<std::size_t> find(std::span<const Letter> w) const;

  friend bool operator==(const LabelStore&, const LabelStore&) = default;

 private:
  void pack(std::span<const Letter> w, std::span<std::uint64_t> out) const;
  std::span<const std::uint64_t> row(std::size_t index) const {
    return {packed_.data() + index * stride_, stride_};
  }

  std::size_t length_ = 0;
  unsigned bits_ = 1;
  std::size_t per_word_ = 64;
  std::size_t stride_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> packed_;
};

struct Edge {
  std::uint32_t src;
  std::uint32_t dst;
  std::uint32_t weight;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted Rauzy graph of the period-capped approximation language: states
// are the allowed words of length `order` (or their canonical renaming
// classes), edges are one-letter shifts that do not create a forbidden power.
class FactorGraph {
 public:
  FactorGraph(TaskSpec spec, std::size_t order, LabelStore labels, std::vector<Edge> edges);

  const TaskSpec& spec() const noexcept { return spec_; }
  std::size_t order() const noexcept { return order_; }
  bool symmetric() const noexcept { return spec_.symmetry; }
  std::size_t state_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.size() == 0; }

  const LabelStore& labels() const noexcept { return labels_; }
  Word state(std::size_t index) const { return labels_.at(index); }
  std::optional<std::size_t> find(std::span<const Letter> w) const { return labels_.find(w); }

  // Edges sorted by (src, dst); out_edges(i) is the contiguous run for i.
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Edge> out_edges(std::size_t state) const {
    return std::span<const Edge>(edges_).subspan(offsets_[state], offsets_[state + 1] - offsets_[state]);
  }

  // Number of concrete words the state stands for (1 without symmetry).
  std::uint64_t multiplicity(std::size_t state) const;

  friend bool operator==(const FactorGraph& a, const FactorGraph& b) {
    return a.spec_.key() == b.spec_.key() && a.order_ == b.order_ && a.labels_ == b.labels_ &&
           a.edges_ == b.edges_;
  }

 private:
  TaskSpec spec_;
  std::size_t order_;
  LabelStore labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
};

// Builds the graph for `spec`. Throws ResourceError once more than
// spec.state_cap states are discovered.
FactorGraph build_graph(const TaskSpec& spec);

// Text form: header `k a b strict m sym order n_states n_edges`, one base-k
// digit string per state, one `src dst weight` line per edge.
std::string serialize(const FactorGraph& g);
// Inverse of serialize. Precision and state cap are taken from `defaults`.
FactorGraph deserialize(std::string_view text, const TaskSpec& defaults = {});

struct SccPartition {
  std::vector<std::uint32_t> component_of;              // per state
  std::vector<std::vector<std::uint32_t>> components;   // ordered by smallest member
  std::vector<std::uint32_t> topological_order;         // component ids, sources first
};

SccPartition scc_decompose(const FactorGraph& g);

// Same decomposition on an arbitrary CSR adjacency structure.
SccPartition scc_decompose(std::span<const std::size_t> offsets, std::span<const std::uint32_t> targets);

}  // namespace growthbound
