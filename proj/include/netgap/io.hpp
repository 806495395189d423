#pragma once

/// @file io.hpp
/// @brief JSON (de)serialisation for matrices, codes, networks, network codes
/// and reports. Field elements are written as their integer encodings.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "netgap/coding.hpp"
#include "netgap/gap.hpp"
#include "netgap/rank_metric.hpp"
#include "netgap/subspace.hpp"

namespace netgap::io {

using nlohmann::json;

/// Integer if it fits in 64 bits, decimal string otherwise.
inline json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return static_cast<std::uint64_t>(v);
  return v.str();
}

/// Wraps library parse errors so callers only see std::invalid_argument.
template <class F>
auto parsing(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parsing("JSON file", [&] { return json::parse(in); });
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Fields and matrices

inline json field_to_json(const Field& f) {
  return {{"q", f.order()}, {"p", f.characteristic()}, {"m", f.degree()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const json& j) {
  return parsing("field", [&] {
    return Field::make(j.at("p").get<std::uint32_t>(), j.at("m").get<unsigned>(),
                       j.at("modulus").get<std::vector<std::uint32_t>>());
  });
}

inline json matrix_to_json(const Matrix& m) {
  json j = field_to_json(m.field());
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = m.entries();
  return j;
}

inline Matrix matrix_from_json(const json& j) {
  const Field f = field_from_json(j);
  return parsing("matrix", [&] {
    return Matrix(f, j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                  j.at("entries").get<std::vector<FieldElement>>());
  });
}

// ---------------------------------------------------------------------------
// Rank-metric and subspace codes

inline json code_to_json(const CompanionCode& c) {
  return {{"kind", "companion"}, {"q", c.base_field().order()}, {"t", c.t()}, {"delta", c.min_distance()},
          {"modulus", c.extension_field().modulus()}};
}

inline json code_to_json(const GabidulinCode& c) {
  return {{"kind", "gabidulin"}, {"q", c.base_field().order()}, {"side", c.side()}, {"delta", c.min_distance()},
          {"modulus", c.extension_field().modulus()}};
}

inline json mrd_verification_to_json(const MrdVerification& v) {
  json j = {{"min_distance", v.min_distance}, {"pairs_checked", v.pairs_checked}, {"ok", v.ok}};
  j["violation"] = v.violation ? json::array({v.violation->first, v.violation->second}) : json(nullptr);
  return j;
}

inline const char* to_string(SubspaceProperty::Kind k) {
  switch (k) {
    case SubspaceProperty::Kind::min_distance: return "min_distance";
    case SubspaceProperty::Kind::triple_span: return "triple_span";
    case SubspaceProperty::Kind::pairwise_intersection: return "pairwise_intersection";
  }
  return "?";
}

inline json subspace_code_to_json(const SubspaceCode& c) {
  json bases = json::array();
  for (const auto& w : c.words()) bases.push_back(w.basis().entries());
  return {{"n", c.ambient()},
          {"k", c.dim()},
          {"q", c.field().order()},
          {"property", {{"kind", to_string(c.property().kind)}, {"value", c.property().value}}},
          {"bases", std::move(bases)}};
}

/// Re-verifies the declared property while loading.
inline SubspaceCode subspace_code_from_json(const json& j) {
  return parsing("subspace code", [&] {
    const auto n = j.at("n").get<std::size_t>();
    const auto k = j.at("k").get<std::size_t>();
    const Field f = Field::of_order(j.at("q").get<std::uint64_t>());
    const auto kind = j.at("property").at("kind").get<std::string>();
    const auto value = j.at("property").at("value").get<std::size_t>();
    SubspaceProperty prop = kind == "triple_span"             ? SubspaceProperty::triple_span(value)
                            : kind == "pairwise_intersection" ? SubspaceProperty::pairwise_intersection(value)
                            : kind == "min_distance"          ? SubspaceProperty::min_distance(value)
                                                              : throw std::invalid_argument("unknown property " + kind);
    std::vector<Subspace> words;
    for (const auto& b : j.at("bases")) {
      auto s = Subspace::from_matrix(Matrix(f, k, n, b.get<std::vector<FieldElement>>()));
      if (s.dim() != k) throw std::invalid_argument("basis of the wrong rank");
      words.push_back(std::move(s));
    }
    return SubspaceCode::verified(f, n, k, std::move(words), prop);
  });
}

// ---------------------------------------------------------------------------
// Networks

inline json family_to_json(const Family& f) {
  return {{"name", f.name}, {"h", f.h},        {"r", f.r},
          {"s", f.s},       {"ell", f.ell},    {"extra_links", f.extra_links},
          {"sampled", f.sampled}, {"transforms", f.transforms}};
}

inline Family family_from_json(const json& j) {
  Family f;
  f.name = j.at("name").get<std::string>();
  f.h = j.value("h", 0u);
  f.r = j.value("r", 0u);
  f.s = j.value("s", 0u);
  f.ell = j.value("ell", 0u);
  f.extra_links = j.value("extra_links", 0u);
  f.sampled = j.value("sampled", false);
  f.transforms = j.value("transforms", std::vector<std::string>{});
  return f;
}

inline json network_to_json(const Network& net) {
  json nodes = json::array(), edges = json::array(), recs = json::array();
  for (const auto& n : net.nodes()) nodes.push_back({{"id", n.id}, {"layer", to_string(n.layer)}});
  for (const auto& e : net.edges()) edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"mult", e.mult}});
  for (const auto& r : net.receivers())
    recs.push_back({{"node", r.node}, {"index", r.index}, {"in_edges", r.in_edges}, {"middles", r.middles}});
  return {{"family", family_to_json(net.family())}, {"h", net.h()}, {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}, {"receivers", std::move(recs)}};
}

inline Network network_from_json(const json& j) {
  return parsing("network", [&] {
    std::vector<Node> nodes;
    for (const auto& n : j.at("nodes"))
      nodes.push_back({n.at("id").get<std::size_t>(), layer_from_string(n.at("layer").get<std::string>())});
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("id").get<std::size_t>(), e.at("tail").get<std::size_t>(), e.at("head").get<std::size_t>(),
                       e.at("mult").get<unsigned>()});
    std::vector<Receiver> recs;
    for (const auto& r : j.at("receivers")) {
      Receiver rec;
      rec.node = r.at("node").get<std::size_t>();
      rec.index = r.at("index").get<std::uint64_t>();
      rec.in_edges = r.at("in_edges").get<std::vector<std::size_t>>();
      rec.middles = r.at("middles").get<std::vector<std::size_t>>();
      recs.push_back(std::move(rec));
    }
    return Network(family_from_json(j.at("family")), j.at("h").get<unsigned>(), std::move(nodes), std::move(edges),
                   std::move(recs));
  });
}

// ---------------------------------------------------------------------------
// Network codes and reports

inline json scheme_to_json(const Scheme& s) {
  if (s.is_scalar()) return {{"scalar", s.q}};
  return {{"vector", {{"q", s.q}, {"t", s.t}}}};
}

inline Scheme scheme_from_json(const json& j) {
  if (j.contains("scalar")) return Scheme::scalar(j.at("scalar").get<std::uint64_t>());
  const auto& v = j.at("vector");
  return Scheme::vector(v.at("q").get<std::uint64_t>(), v.at("t").get<unsigned>());
}

inline json network_code_to_json(const Network& net, const NetworkCode& code) {
  json edges = json::array();
  for (std::size_t e = 0; e < code.coefficients.size(); ++e) {
    const auto& ed = net.edges().at(e);
    edges.push_back({{"edge", e},
                     {"tail", ed.tail},
                     {"head", ed.head},
                     {"mult", ed.mult},
                     {"matrix", code.coefficients[e].entries()},
                     {"provenance", code.provenance[e]}});
  }
  return {{"scheme", scheme_to_json(code.scheme)}, {"field", field_to_json(code.field)}, {"h", code.h},
          {"t", code.t}, {"rows", code.t}, {"cols", code.width()}, {"edges", std::move(edges)}};
}

inline NetworkCode network_code_from_json(const json& j) {
  return parsing("network code", [&] {
    const Field f = field_from_json(j.at("field"));
    const auto h = j.at("h").get<unsigned>();
    const auto t = j.at("t").get<unsigned>();
    const auto& edges = j.at("edges");
    NetworkCode code(scheme_from_json(j.at("scheme")), f, h, t, edges.size());
    for (const auto& e : edges) {
      const auto id = e.at("edge").get<std::size_t>();
      if (id >= edges.size()) throw std::invalid_argument("edge id out of range");
      code.coefficients[id] = Matrix(f, t, static_cast<std::size_t>(h) * t, e.at("matrix").get<std::vector<FieldElement>>());
      code.provenance[id] = e.value("provenance", std::string());
    }
    return code;
  });
}

inline json verification_to_json(const VerificationReport& rep, bool with_timing = false) {
  json recs = json::array();
  for (const auto& r : rep.records)
    recs.push_back({{"index", r.index}, {"node", r.node}, {"rank", r.rank}, {"required", r.required}, {"pass", r.pass}});
  json j = {{"receivers", std::move(recs)},
            {"totals",
             {{"receivers", rep.records.size()},
              {"passed", rep.passed},
              {"failed", rep.failed},
              {"required_rank", rep.required_rank},
              {"unrealizable_nodes", rep.unrealizable_nodes},
              {"solved", rep.solved()}}}};
  if (with_timing) j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

inline json gap_to_json(const GapReport& g) {
  json j = {{"family", family_to_json(g.family)},
            {"q", g.q},
            {"t", g.t},
            {"r", g.r},
            {"scalar",
             {{"min_field_size", g.scalar_q},
              {"bound_at_min", big_to_json(g.scalar_bound)},
              {"previous_field_size", g.previous_q ? json(*g.previous_q) : json(nullptr)},
              {"bound_at_previous", g.previous_bound ? big_to_json(*g.previous_bound) : json(nullptr)}}},
            {"vector",
             {{"alphabet", g.q},
              {"field_size_q_to_t", big_to_json(detail::big_pow(g.q, g.t))},
              {"bound", big_to_json(g.vector_bound)},
              {"verified", g.vector_verified},
              {"receivers_checked", g.receivers_checked},
              {"receivers_passed", g.receivers_passed},
              {"receivers_total", g.receivers_total},
              {"sampled", g.sampled}}},
            {"ratio", g.ratio},
            {"exponent", g.exponent},
            {"exponent_vs_q_to_t", g.exponent_vs_qt},
            {"formula", g.formula}};
  j["leading_term"] = g.leading_term ? json(*g.leading_term) : json(nullptr);
  j["residual"] = g.residual ? json(*g.residual) : json(nullptr);
  return j;
}

}  // namespace netgap::io
