#pragma once

/// @file network.hpp
/// @brief Layered multicast networks: the combination network and its
/// starred / plus / tilde variants, min-cut normalisation, parallel-edge
/// removal and unit-capacity max-flow.
///
/// Node 0 is always the source. Receivers are indexed by the lexicographic rank
/// of the middle-node subset they watch; a network may hold only a selection of
/// those receivers (sampled mode) while keeping every middle node.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace netgap {

enum class Layer { source, middle, relay, receiver };

inline const char* to_string(Layer l) {
  switch (l) {
    case Layer::source: return "source";
    case Layer::middle: return "middle";
    case Layer::relay: return "relay";
    case Layer::receiver: return "receiver";
  }
  return "?";
}

inline Layer layer_from_string(const std::string& s) {
  if (s == "source") return Layer::source;
  if (s == "middle") return Layer::middle;
  if (s == "relay") return Layer::relay;
  if (s == "receiver") return Layer::receiver;
  throw std::invalid_argument("unknown layer '" + s + "'");
}

struct Node {
  std::size_t id;
  Layer layer;
};

/// Parallel edges between the same pair of nodes carry distinct mult indices.
struct Edge {
  std::size_t id;
  std::size_t tail;
  std::size_t head;
  unsigned mult;
};

struct Receiver {
  std::size_t node;
  std::uint64_t index;                // lexicographic rank of the watched subset
  std::vector<std::size_t> in_edges;  // canonical order: ascending edge id
  std::vector<std::size_t> middles;   // watched middle nodes (node ids)
};

/// Family name and parameters, kept through transformations.
struct Family {
  std::string name;  // combination | star | plus | tilde
  unsigned h = 0;
  unsigned r = 0;
  unsigned s = 0;
  unsigned ell = 0;
  unsigned extra_links = 0;  // direct source -> receiver links beyond the family's own
  bool sampled = false;
  std::vector<std::string> transforms;

  friend bool operator==(const Family&, const Family&) = default;
};

class Network {
 public:
  Network() = default;
  Network(Family family, unsigned h, std::vector<Node> nodes, std::vector<Edge> edges, std::vector<Receiver> receivers)
      : family_(std::move(family)), h_(h), nodes_(std::move(nodes)), edges_(std::move(edges)),
        receivers_(std::move(receivers)) {
    index();
  }

  const Family& family() const& { return family_; }
  Family family() && { return std::move(family_); }
  unsigned h() const { return h_; }
  std::size_t source() const { return 0; }
  const std::vector<Node>& nodes() const& { return nodes_; }
  std::vector<Node> nodes() && { return std::move(nodes_); }
  const std::vector<Edge>& edges() const& { return edges_; }
  std::vector<Edge> edges() && { return std::move(edges_); }
  const std::vector<Receiver>& receivers() const& { return receivers_; }
  std::vector<Receiver> receivers() && { return std::move(receivers_); }
  const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_.at(node); }
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_.at(node); }
  std::vector<std::size_t> middle_nodes() const {
    std::vector<std::size_t> out;
    for (const auto& n : nodes_)
      if (n.layer == Layer::middle) out.push_back(n.id);
    return out;
  }

  /// Position of the receiver living at @p node in receivers().
  std::size_t receiver_position(std::size_t node) const {
    for (std::size_t i = 0; i < receivers_.size(); ++i)
      if (receivers_[i].node == node) return i;
    throw std::out_of_range("node " + std::to_string(node) + " is not a receiver");
  }

  /// Kahn order; throws if the graph has a cycle.
  std::vector<std::size_t> topological_order() const {
    std::vector<std::size_t> indeg(nodes_.size(), 0), order;
    for (const auto& e : edges_) ++indeg[e.head];
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      const auto v = ready.front();
      ready.pop_front();
      order.push_back(v);
      for (auto e : out_[v])
        if (--indeg[edges_[e].head] == 0) ready.push_back(edges_[e].head);
    }
    if (order.size() != nodes_.size()) throw std::logic_error("network has a cycle");
    return order;
  }

  bool is_simple() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : edges_)
      if (!seen.emplace(e.tail, e.head).second) return false;
    return true;
  }

 private:
  void index() {
    in_.assign(nodes_.size(), {});
    out_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].id != i) throw std::invalid_argument("node ids must be 0..n-1 in order");
    if (nodes_.empty() || nodes_[0].layer != Layer::source) throw std::invalid_argument("node 0 must be the source");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.id != i) throw std::invalid_argument("edge ids must be 0..m-1 in order");
      if (e.tail >= nodes_.size() || e.head >= nodes_.size()) throw std::invalid_argument("edge endpoint out of range");
      out_[e.tail].push_back(i);
      in_[e.head].push_back(i);
    }
    for (const auto& n : nodes_)
      if (n.layer == Layer::source && n.id != 0) throw std::invalid_argument("more than one source");
  }

  Family family_;
  unsigned h_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Receiver> receivers_;
  std::vector<std::vector<std::size_t>> in_, out_;
};

// ---------------------------------------------------------------------------
// Combinations

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  if (out > UINT64_MAX) throw std::overflow_error("binomial overflow");
  return static_cast<std::uint64_t>(out);
}

/// The k-subset of {0..n-1} at lexicographic rank @p rank.
inline std::vector<unsigned> unrank_combination(unsigned n, unsigned k, std::uint64_t rank) {
  std::vector<unsigned> out;
  unsigned next = 0;
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned v = next;; ++v) {
      const auto with_v = binomial(n - v - 1, k - i - 1);
      if (rank < with_v) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      rank -= with_v;
    }
  }
  return out;
}

inline std::uint64_t rank_combination(unsigned n, const std::vector<unsigned>& subset) {
  std::uint64_t rank = 0;
  unsigned next = 0;
  const auto k = static_cast<unsigned>(subset.size());
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned v = next; v < subset[i]; ++v) rank += binomial(n - v - 1, k - i - 1);
    next = subset[i] + 1;
  }
  return rank;
}

/// Which receivers of a family to materialise.
struct ReceiverSelection {
  std::optional<std::vector<std::uint64_t>> ranks;  // nullopt: all

  static ReceiverSelection all() { return {}; }
  static ReceiverSelection only(std::vector<std::uint64_t> r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return {std::move(r)};
  }
  /// Up to @p cap distinct ranks below @p total drawn with a seeded generator
  /// (all ranks when total <= cap).
  static ReceiverSelection sample(std::uint64_t total, std::uint64_t cap, std::uint64_t seed) {
    if (total <= cap) return all();
    std::mt19937_64 rng(seed);
    std::set<std::uint64_t> picked;
    while (picked.size() < cap) picked.insert(rng() % total);
    return {std::vector<std::uint64_t>(picked.begin(), picked.end())};
  }
};

namespace detail {

struct Builder {
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::size_t node(Layer l) {
    nodes.push_back({nodes.size(), l});
    return nodes.back().id;
  }
  std::size_t edge(std::size_t tail, std::size_t head, unsigned mult) {
    edges.push_back({edges.size(), tail, head, mult});
    return edges.back().id;
  }
};

/// Source, r middle nodes with @p in_mult parallel source edges each, and one
/// receiver per selected s-subset with @p out_mult parallel edges from each
/// watched middle node plus @p direct source links.
inline Network layered(Family fam, unsigned h, unsigned r, unsigned s, unsigned in_mult, unsigned out_mult,
                       unsigned direct, const ReceiverSelection& sel) {
  if (s > r) throw std::invalid_argument("s = " + std::to_string(s) + " exceeds r = " + std::to_string(r));
  Builder b;
  const auto src = b.node(Layer::source);
  std::vector<std::size_t> middles;
  for (unsigned i = 0; i < r; ++i) middles.push_back(b.node(Layer::middle));
  for (auto m : middles)
    for (unsigned k = 0; k < in_mult; ++k) b.edge(src, m, k);
  const std::uint64_t total = binomial(r, s);
  std::vector<std::uint64_t> ranks;
  if (sel.ranks) {
    ranks = *sel.ranks;
    for (auto x : ranks)
      if (x >= total) throw std::out_of_range("receiver rank " + std::to_string(x) + " out of range");
    fam.sampled = ranks.size() < total;
  } else {
    if (total > 50'000'000) throw std::invalid_argument("too many receivers to materialise; use a sampled selection");
    ranks.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) ranks[i] = i;
  }
  std::vector<Receiver> receivers;
  receivers.reserve(ranks.size());
  for (auto rank : ranks) {
    Receiver rec;
    rec.node = b.node(Layer::receiver);
    rec.index = rank;
    for (auto i : unrank_combination(r, s, rank)) {
      rec.middles.push_back(middles[i]);
      for (unsigned k = 0; k < out_mult; ++k) rec.in_edges.push_back(b.edge(middles[i], rec.node, k));
    }
    for (unsigned k = 0; k < direct; ++k) rec.in_edges.push_back(b.edge(src, rec.node, k));
    receivers.push_back(std::move(rec));
  }
  return Network(std::move(fam), h, std::move(b.nodes), std::move(b.edges), std::move(receivers));
}

}  // namespace detail

/// N_{h,r,s}: one source edge per middle node, one receiver per s-subset.
inline Network combination_network(unsigned h, unsigned r, unsigned s,
                                   const ReceiverSelection& sel = ReceiverSelection::all()) {
  return detail::layered({"combination", h, r, s, 0, 0}, h, r, s, 1, 1, 0, sel);
}

/// N*_{2l,r,2l}: l parallel edges source->middle and middle->receiver, one
/// receiver per pair of middle nodes, one direct source link per receiver.
inline Network star_network(unsigned ell, unsigned r, const ReceiverSelection& sel = ReceiverSelection::all()) {
  if (ell < 2) throw std::invalid_argument("star network needs l >= 2");
  return detail::layered({"star", 2 * ell, r, 2, ell, 0}, 2 * ell, r, 2, ell, ell, 1, sel);
}

/// N+_{2l,r,2l}: as the star network with l-1 direct links per receiver.
inline Network plus_network(unsigned ell, unsigned r, const ReceiverSelection& sel = ReceiverSelection::all()) {
  if (ell < 2) throw std::invalid_argument("plus network needs l >= 2");
  return detail::layered({"plus", 2 * ell, r, 2, ell, 0}, 2 * ell, r, 2, ell, ell, ell - 1, sel);
}

/// Adds @p count direct source->receiver edges to every receiver and raises the
/// message count by @p extra_messages.
inline Network add_direct_links(const Network& net, unsigned count, unsigned extra_messages = 0) {
  if (count == 0 && extra_messages == 0) return net;
  auto nodes = net.nodes();
  auto edges = net.edges();
  auto receivers = net.receivers();
  for (auto& rec : receivers) {
    unsigned base = 0;
    for (auto e : rec.in_edges)
      if (edges[e].tail == net.source()) base = std::max(base, edges[e].mult + 1);
    for (unsigned k = 0; k < count; ++k) {
      edges.push_back({edges.size(), net.source(), rec.node, base + k});
      rec.in_edges.push_back(edges.back().id);
    }
  }
  Family fam = net.family();
  fam.extra_links += count;
  fam.h += extra_messages;
  return Network(std::move(fam), net.h() + extra_messages, std::move(nodes), std::move(edges), std::move(receivers));
}

/// Ñ_{3,r,3}: N_{3,r,3} plus one direct source link per receiver.
inline Network tilde_network(unsigned r, const ReceiverSelection& sel = ReceiverSelection::all()) {
  if (r < 3) throw std::invalid_argument("tilde network needs r >= 3");
  Network base = add_direct_links(combination_network(3, r, 3, sel), 1);
  Family fam = base.family();
  fam.name = "tilde";
  fam.extra_links = 0;
  return Network(std::move(fam), base.h(), base.nodes(), base.edges(), base.receivers());
}

// ---------------------------------------------------------------------------
// Transformations

/// Where an edge of a transformed network came from: a copy of an original
/// edge, or a relay edge carrying message block @c message_block.
struct EdgeOrigin {
  std::optional<std::size_t> edge;
  std::optional<unsigned> message_block;
};

struct Transformed {
  Network network;
  std::vector<EdgeOrigin> origin;  // indexed by new edge id
};

/// Replaces every receiver R by a relay T feeding h relays P_j, each of which
/// feeds a fresh receiver R'. The min-cut to every R' is at most h.
inline Transformed normalize_min_cut(const Network& net) {
  auto nodes = net.nodes();
  std::vector<Edge> edges = net.edges();
  std::vector<EdgeOrigin> origin;
  for (const auto& e : edges) origin.push_back({e.id, std::nullopt});
  std::vector<Receiver> receivers;
  for (const auto& rec : net.receivers()) {
    nodes[rec.node].layer = Layer::relay;
    std::vector<std::size_t> relays;
    for (unsigned j = 0; j < net.h(); ++j) {
      relays.push_back(nodes.size());
      nodes.push_back({nodes.size(), Layer::relay});
    }
    const std::size_t fresh = nodes.size();
    nodes.push_back({fresh, Layer::receiver});
    Receiver out;
    out.node = fresh;
    out.index = rec.index;
    out.middles = rec.middles;
    for (unsigned j = 0; j < net.h(); ++j) {
      edges.push_back({edges.size(), rec.node, relays[j], 0});
      origin.push_back({std::nullopt, j});
    }
    for (unsigned j = 0; j < net.h(); ++j) {
      edges.push_back({edges.size(), relays[j], fresh, 0});
      out.in_edges.push_back(edges.back().id);
      origin.push_back({std::nullopt, j});
    }
    receivers.push_back(std::move(out));
  }
  Family fam = net.family();
  fam.transforms.push_back("normalize_min_cut");
  return {Network(std::move(fam), net.h(), std::move(nodes), std::move(edges), std::move(receivers)),
          std::move(origin)};
}

/// Replaces every bundle of parallel edges U->V by disjoint paths U->W_k->V.
inline Transformed remove_parallel_edges(const Network& net) {
  std::map<std::pair<std::size_t, std::size_t>, unsigned> multiplicity;
  for (const auto& e : net.edges()) ++multiplicity[{e.tail, e.head}];
  auto nodes = net.nodes();
  std::vector<Edge> edges;
  std::vector<EdgeOrigin> origin;
  std::vector<std::size_t> into_head(net.edges().size());  // old edge -> new edge entering its head
  for (const auto& e : net.edges()) {
    if (multiplicity[{e.tail, e.head}] < 2) {
      edges.push_back({edges.size(), e.tail, e.head, 0});
      origin.push_back({e.id, std::nullopt});
    } else {
      const std::size_t w = nodes.size();
      nodes.push_back({w, Layer::relay});
      edges.push_back({edges.size(), e.tail, w, 0});
      origin.push_back({e.id, std::nullopt});
      edges.push_back({edges.size(), w, e.head, 0});
      origin.push_back({e.id, std::nullopt});
    }
    into_head[e.id] = edges.back().id;
  }
  auto receivers = net.receivers();
  for (auto& rec : receivers)
    for (auto& e : rec.in_edges) e = into_head[e];
  Family fam = net.family();
  fam.transforms.push_back("remove_parallel_edges");
  return {Network(std::move(fam), net.h(), std::move(nodes), std::move(edges), std::move(receivers)),
          std::move(origin)};
}

// ---------------------------------------------------------------------------
// Max-flow

/// Maximum number of edge-disjoint source -> @p sink paths (unit capacities,
/// parallel edges counted separately). Breadth-first augmenting paths.
inline std::size_t min_cut(const Network& net, std::size_t sink) {
  if (sink >= net.nodes().size()) throw std::out_of_range("unknown node " + std::to_string(sink));
  const auto& edges = net.edges();
  std::vector<char> used(edges.size(), 0);  // flow on edge (0/1)
  std::size_t flow = 0;
  const std::size_t n = net.nodes().size();
  while (true) {
    // parent edge and direction (forward = true) per node
    std::vector<std::ptrdiff_t> parent(n, -1);
    std::vector<char> forward(n, 1), seen(n, 0);
    std::deque<std::size_t> queue{net.source()};
    seen[net.source()] = 1;
    while (!queue.empty() && !seen[sink]) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto e : net.out_edges(v)) {
        const auto w = edges[e].head;
        if (!used[e] && !seen[w]) {
          seen[w] = 1;
          parent[w] = static_cast<std::ptrdiff_t>(e);
          forward[w] = 1;
          queue.push_back(w);
        }
      }
      for (auto e : net.in_edges(v)) {
        const auto w = edges[e].tail;
        if (used[e] && !seen[w]) {
          seen[w] = 1;
          parent[w] = static_cast<std::ptrdiff_t>(e);
          forward[w] = 0;
          queue.push_back(w);
        }
      }
    }
    if (!seen[sink]) return flow;
    for (std::size_t v = sink; v != net.source();) {
      const auto e = static_cast<std::size_t>(parent[v]);
      if (forward[v]) {
        used[e] = 1;
        v = edges[e].tail;
      } else {
        used[e] = 0;
        v = edges[e].head;
      }
    }
    ++flow;
  }
}

}  // namespace netgap
