#include "growthbound/factor_graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "growthbound/error.hpp"

namespace growthbound {

namespace {

constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

}  // namespace

Word canonical_form(std::span<const Letter> w, int alphabet_size) {
  std::array<int, 256> relabel;
  relabel.fill(-1);
  int next = 0;
  Word out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet_size) throw std::out_of_range("letter outside alphabet");
    if (relabel[w[i]] < 0) relabel[w[i]] = next++;
    out[i] = static_cast<Letter>(relabel[w[i]]);
  }
  return out;
}

std::uint64_t orbit_size(int alphabet_size, std::size_t distinct) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < distinct; ++i) n *= static_cast<std::uint64_t>(alphabet_size) - i;
  return n;
}

// --- LabelStore -------------------------------------------------------------

LabelStore::LabelStore(int alphabet_size, std::size_t length)
    : length_(length),
      bits_(std::max(1u, static_cast<unsigned>(std::bit_width(static_cast<unsigned>(alphabet_size - 1))))),
      per_word_(64 / bits_),
      stride_((length + per_word_ - 1) / per_word_) {}

// Letters fill each 64-bit word from the most significant end, so comparing
// packed rows word by word is lexicographic comparison of the words.
void LabelStore::pack(std::span<const Letter> w, std::span<std::uint64_t> out) const {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < length_; ++i) {
    const std::size_t word = i / per_word_;
    const std::size_t shift = 64 - bits_ * (i % per_word_ + 1);
    out[word] |= static_cast<std::uint64_t>(w[i]) << shift;
  }
}

void LabelStore::push_back(std::span<const Letter> w) {
  if (w.size() != length_) throw std::invalid_argument("label length mismatch");
  const std::size_t at = packed_.size();
  packed_.resize(at + stride_);
  pack(w, std::span<std::uint64_t>(packed_).subspan(at, stride_));
  if (count_ > 0) {
    const auto prev = row(count_ - 1);
    const auto cur = std::span<const std::uint64_t>(packed_).subspan(at, stride_);
    if (!std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end())) {
      packed_.resize(at);
      throw std::invalid_argument("labels must be pushed in increasing order");
    }
  }
  ++count_;
}

void LabelStore::unpack(std::size_t index, std::span<Letter> out) const {
  const auto r = row(index);
  const std::uint64_t mask = (std::uint64_t{1} << bits_) - 1;
  for (std::size_t i = 0; i < length_; ++i) {
    const std::size_t shift = 64 - bits_ * (i % per_word_ + 1);
    out[i] = static_cast<Letter>((r[i / per_word_] >> shift) & mask);
  }
}

Word LabelStore::at(std::size_t index) const {
  if (index >= count_) throw std::out_of_range("label index");
  Word w(length_);
  unpack(index, w);
  return w;
}

std::optional<std::size_t> LabelStore::find(std::span<const Letter> w) const {
  if (w.size() != length_) return std::nullopt;
  if (length_ == 0) return count_ == 1 ? std::optional<std::size_t>(0) : std::nullopt;
  std::array<std::uint64_t, 8> small{};
  std::vector<std::uint64_t> big;
  std::span<std::uint64_t> key;
  if (stride_ <= small.size()) {
    key = std::span<std::uint64_t>(small).first(stride_);
  } else {
    big.resize(stride_);
    key = big;
  }
  pack(w, key);
  std::size_t lo = 0;
  std::size_t hi = count_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto r = row(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count_ && std::ranges::equal(row(lo), key)) return lo;
  return std::nullopt;
}

// --- FactorGraph ------------------------------------------------------------

FactorGraph::FactorGraph(TaskSpec spec, std::size_t order, LabelStore labels, std::vector<Edge> edges)
    : spec_(std::move(spec)), order_(order), labels_(std::move(labels)), edges_(std::move(edges)) {
  if (labels_.length() != order_) throw std::invalid_argument("label length differs from graph order");
  offsets_.assign(labels_.size() + 1, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.src >= labels_.size() || e.dst >= labels_.size() || e.weight == 0)
      throw std::invalid_argument("edge out of range");
    if (i > 0 && std::tie(edges_[i - 1].src, edges_[i - 1].dst) >= std::tie(e.src, e.dst))
      throw std::invalid_argument("edges must be sorted by (src, dst) without duplicates");
    ++offsets_[e.src + 1];
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) offsets_[i + 1] += offsets_[i];
}

std::uint64_t FactorGraph::multiplicity(std::size_t state) const {
  if (!spec_.symmetry) return 1;
  const Word w = labels_.at(state);
  const auto distinct = w.empty() ? 0 : static_cast<std::size_t>(*std::max_element(w.begin(), w.end())) + 1;
  return orbit_size(spec_.alphabet_size, distinct);
}

namespace {

class StateEnumerator {
 public:
  StateEnumerator(const TaskSpec& spec, const PowerRule& rule, std::size_t order, LabelStore& out)
      : spec_(spec), rule_(rule), order_(order), out_(out) {
    word_.reserve(order);
  }

  void run() { extend(0); }

 private:
  // `used` is the number of distinct letters so far when enumerating
  // canonical forms.
  void extend(int used) {
    if (word_.size() == order_) {
      if (out_.size() >= spec_.state_cap)
        throw ResourceError("state cap of " + std::to_string(spec_.state_cap) + " exceeded", out_.size());
      if (out_.size() >= std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("state index overflow", out_.size());
      out_.push_back(word_);
      return;
    }
    const int limit = spec_.symmetry ? std::min(spec_.alphabet_size, used + 1) : spec_.alphabet_size;
    for (int c = 0; c < limit; ++c) {
      word_.push_back(static_cast<Letter>(c));
      if (!rule_.forbidden_suffix(word_)) extend(std::max(used, c + 1));
      word_.pop_back();
    }
  }

  const TaskSpec& spec_;
  const PowerRule& rule_;
  std::size_t order_;
  LabelStore& out_;
  Word word_;
};

}  // namespace

FactorGraph build_graph(const TaskSpec& spec) {
  spec.validate();
  const PowerRule rule(spec.exponent, spec.period_cap);
  const std::size_t order = rule.window() - 1;

  LabelStore labels(spec.alphabet_size, order);
  StateEnumerator(spec, rule, order, labels).run();

  std::vector<Edge> edges;
  Word buf(order + 1);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;  // (dst, weight)
  for (std::size_t u = 0; u < labels.size(); ++u) {
    labels.unpack(u, std::span<Letter>(buf).first(order));
    out.clear();
    for (int c = 0; c < spec.alphabet_size; ++c) {
      buf[order] = static_cast<Letter>(c);
      if (rule.forbidden_suffix(buf)) continue;
      const auto shifted = std::span<const Letter>(buf).subspan(1);
      const auto v = spec.symmetry ? labels.find(canonical_form(shifted, spec.alphabet_size)) : labels.find(shifted);
      // Every factor of an allowed word is allowed, so the shift is a state.
      if (!v) throw std::logic_error("shifted word missing from state set");
      out.emplace_back(static_cast<std::uint32_t>(*v), 1);
    }
    std::sort(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!edges.empty() && edges.back().src == u && edges.back().dst == out[i].first)
        ++edges.back().weight;
      else
        edges.push_back({static_cast<std::uint32_t>(u), out[i].first, 1});
    }
  }
  return FactorGraph(spec, order, std::move(labels), std::move(edges));
}

// --- serialization ----------------------------------------------------------

std::string serialize(const FactorGraph& g) {
  const TaskSpec& s = g.spec();
  std::string out;
  out.reserve(64 + g.state_count() * (g.order() + 1) + g.edge_count() * 16);
  out += std::to_string(s.alphabet_size) + ' ' + std::to_string(s.exponent.numerator()) + ' ' +
         std::to_string(s.exponent.denominator()) + ' ' + (s.exponent.strict() ? '1' : '0') + ' ' +
         std::to_string(s.period_cap) + ' ' + (s.symmetry ? '1' : '0') + ' ' + std::to_string(g.order()) + ' ' +
         std::to_string(g.state_count()) + ' ' + std::to_string(g.edge_count()) + '\n';
  Word w(g.order());
  for (std::size_t i = 0; i < g.state_count(); ++i) {
    g.labels().unpack(i, w);
    for (Letter c : w) out += kDigits[c];
    out += '\n';
  }
  for (const Edge& e : g.edges())
    out += std::to_string(e.src) + ' ' + std::to_string(e.dst) + ' ' + std::to_string(e.weight) + '\n';
  return out;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) throw Error("graph text truncated");
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) throw Error("graph text missing final newline");
    const auto line = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return line;
  }
  bool done() const { return pos_ == text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

template <std::size_t N>
std::array<std::uint64_t, N> parse_fields(std::string_view line) {
  std::array<std::uint64_t, N> out{};
  const char* p = line.data();
  const char* end = line.data() + line.size();
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) {
      if (p == end || *p != ' ') throw Error("malformed graph line: " + std::string(line));
      ++p;
    }
    auto [next, ec] = std::from_chars(p, end, out[i]);
    if (ec != std::errc{}) throw Error("malformed graph line: " + std::string(line));
    p = next;
  }
  if (p != end) throw Error("trailing data on graph line: " + std::string(line));
  return out;
}

}  // namespace

FactorGraph deserialize(std::string_view text, const TaskSpec& defaults) {
  LineReader reader(text);
  const auto h = parse_fields<9>(reader.next());
  if (h[3] > 1 || h[5] > 1) throw Error("malformed graph header");
  TaskSpec spec = defaults;
  spec.alphabet_size = static_cast<int>(h[0]);
  spec.exponent = RationalExponent(h[1], h[2], h[3] == 1);
  spec.period_cap = h[4];
  spec.symmetry = h[5] == 1;
  spec.validate();
  const std::size_t order = h[6];
  const std::size_t n_states = h[7];
  const std::size_t n_edges = h[8];

  LabelStore labels(spec.alphabet_size, order);
  Word w(order);
  for (std::size_t i = 0; i < n_states; ++i) {
    const auto line = reader.next();
    if (line.size() != order) throw Error("state label has wrong length");
    for (std::size_t j = 0; j < order; ++j) {
      const auto d = kDigits.find(line[j]);
      if (d == std::string_view::npos || d >= static_cast<std::size_t>(spec.alphabet_size))
        throw Error("invalid letter in state label");
      w[j] = static_cast<Letter>(d);
    }
    labels.push_back(w);
  }
  std::vector<Edge> edges;
  edges.reserve(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    const auto f = parse_fields<3>(reader.next());
    if (f[0] > std::numeric_limits<std::uint32_t>::max() || f[1] > std::numeric_limits<std::uint32_t>::max() ||
        f[2] > std::numeric_limits<std::uint32_t>::max())
      throw Error("edge field out of range");
    edges.push_back({static_cast<std::uint32_t>(f[0]), static_cast<std::uint32_t>(f[1]),
                     static_cast<std::uint32_t>(f[2])});
  }
  if (!reader.done()) throw Error("trailing data after edges");
  try {
    return FactorGraph(spec, order, std::move(labels), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("inconsistent graph text: ") + e.what());
  }
}

// --- strongly connected components ------------------------------------------

SccPartition scc_decompose(std::span<const std::size_t> offsets, std::span<const std::uint32_t> targets) {
  const std::size_t n = offsets.empty() ? 0 : offsets.size() - 1;
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::vector<std::uint32_t>> found;  // completion order = reverse topological
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({static_cast<std::uint32_t>(root), offsets[root]});
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const std::uint32_t v = f.v;
      if (f.next < offsets[v + 1]) {
        const std::uint32_t w = targets[f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, offsets[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        found.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }

  // Renumber components by smallest member.
  std::vector<std::size_t> by_min(found.size());
  for (std::size_t i = 0; i < by_min.size(); ++i) by_min[i] = i;
  std::sort(by_min.begin(), by_min.end(), [&](std::size_t a, std::size_t b) { return found[a][0] < found[b][0]; });
  std::vector<std::uint32_t> new_id(found.size());
  for (std::size_t i = 0; i < by_min.size(); ++i) new_id[by_min[i]] = static_cast<std::uint32_t>(i);

  SccPartition part;
  part.component_of.assign(n, 0);
  part.components.resize(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::uint32_t v : found[i]) part.component_of[v] = new_id[i];
    part.components[new_id[i]] = std::move(found[i]);
  }
  part.topological_order.reserve(found.size());
  for (std::size_t i = found.size(); i-- > 0;) part.topological_order.push_back(new_id[i]);
  return part;
}

SccPartition scc_decompose(const FactorGraph& g) {
  std::vector<std::size_t> offsets(g.state_count() + 1, 0);
  std::vector<std::uint32_t> targets;
  targets.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    ++offsets[e.src + 1];
    targets.push_back(e.dst);
  }
  for (std::size_t i = 0; i < g.state_count(); ++i) offsets[i + 1] += offsets[i];
  return scc_decompose(offsets, targets);
}

}  // namespace growthbound
