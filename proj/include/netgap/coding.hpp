#pragma once

/// @file coding.hpp
/// @brief Scalar and vector linear network codes for the combination-network
/// families: solvers, transfer matrices, verification, simulation and decoding.
///
/// A NetworkCode stores a global coding matrix per edge: a t x (h t) matrix
/// mapping the stacked message (x_1, ..., x_h) to the t symbols on the edge
/// (t = 1 for scalar codes). Middle nodes forward their inputs verbatim.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "netgap/field.hpp"
#include "netgap/matrix.hpp"
#include "netgap/network.hpp"
#include "netgap/rank_metric.hpp"
#include "netgap/subspace.hpp"

namespace netgap {

/// Requested more middle nodes than the construction can supply.
class SupplyExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Parameters outside the regimes a solver supports.
class UnsupportedParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Scheme {
  enum class Kind { scalar, vector };
  Kind kind = Kind::scalar;
  std::uint64_t q = 2;  // scalar: field size q_s; vector: base alphabet q (prime)
  unsigned t = 1;

  static Scheme scalar(std::uint64_t qs) { return {Kind::scalar, qs, 1}; }
  static Scheme vector(std::uint64_t q, unsigned t) { return {Kind::vector, q, t}; }

  Field field() const { return kind == Kind::scalar ? Field::of_order(q) : Field::make(static_cast<std::uint32_t>(q), 1); }
  bool is_scalar() const { return kind == Kind::scalar; }
  std::string describe() const {
    return is_scalar() ? "scalar q_s=" + std::to_string(q) : "vector q=" + std::to_string(q) + " t=" + std::to_string(t);
  }
  friend bool operator==(const Scheme&, const Scheme&) = default;
};

struct NetworkCode {
  Scheme scheme;
  Field field;
  unsigned h;
  unsigned t;
  std::vector<Matrix> coefficients;  // indexed by edge id
  std::vector<std::string> provenance;

  NetworkCode(Scheme s, Field f, unsigned h_, unsigned t_, std::size_t edge_count)
      : scheme(s), field(std::move(f)), h(h_), t(t_), coefficients(edge_count, Matrix(field, t_, h_ * t_)),
        provenance(edge_count, "unassigned") {}

  std::size_t width() const { return static_cast<std::size_t>(h) * t; }
};

/// Every edge has a t x ht matrix over the code's field.
inline void check_code_shape(const Network& net, const NetworkCode& code) {
  if (code.coefficients.size() != net.edges().size()) throw std::invalid_argument("code does not cover every edge");
  if (code.h != net.h()) throw std::invalid_argument("code and network disagree on h");
  for (const auto& m : code.coefficients)
    if (m.rows() != code.t || m.cols() != code.width() || !(m.field() == code.field))
      throw std::invalid_argument("edge coefficient has the wrong shape or field");
}

/// t x ht matrix with I_t in message block @p j.
inline Matrix unit_block(const Field& f, unsigned h, unsigned t, unsigned j) {
  Matrix m(f, t, static_cast<std::size_t>(h) * t);
  for (unsigned i = 0; i < t; ++i) m(i, static_cast<std::size_t>(j) * t + i) = 1;
  return m;
}

namespace detail {

/// Gives the source edges of a middle node (mult k) and each of its receiver
/// edges (mult k) rows [k t, (k+1) t) of @p block.
inline void assign_middle(const Network& net, NetworkCode& code, std::size_t node, const Matrix& block,
                          const std::string& note) {
  const auto t = code.t;
  for (auto e : net.in_edges(node)) {
    const auto k = net.edges()[e].mult;
    code.coefficients[e] = block.rows_range(static_cast<std::size_t>(k) * t, t);
    code.provenance[e] = note + ";rows=" + std::to_string(k);
  }
  for (auto e : net.out_edges(node)) {
    const auto k = net.edges()[e].mult;
    code.coefficients[e] = block.rows_range(static_cast<std::size_t>(k) * t, t);
    code.provenance[e] = note + ";rows=" + std::to_string(k);
  }
}

/// Fills each receiver's direct source links: the first @p completing links
/// carry completion rows of the middle-edge stack restricted to the first
/// @p base_h message blocks, the next (h - base_h) carry the extra messages
/// verbatim, and any remaining links carry zero.
inline void assign_direct_links(const Network& net, NetworkCode& code, unsigned completing, unsigned base_h) {
  const auto t = code.t;
  const std::size_t base_width = static_cast<std::size_t>(base_h) * t;
  const unsigned extra_messages = code.h - base_h;
  for (const auto& rec : net.receivers()) {
    std::vector<Matrix> middle_rows;
    std::vector<std::size_t> direct;
    for (auto e : rec.in_edges) {
      if (net.edges()[e].tail == net.source())
        direct.push_back(e);
      else
        middle_rows.push_back(code.coefficients[e].block(0, 0, t, base_width));
    }
    if (direct.size() < completing + extra_messages)
      throw UnsupportedParameters("receiver " + std::to_string(rec.index) + " has too few direct links");
    Matrix stacked = middle_rows.empty() ? Matrix(code.field, 0, base_width) : vstack(std::span<const Matrix>(middle_rows));
    Matrix completion = complete_to_full_rank(stacked, static_cast<std::size_t>(completing) * t);
    for (unsigned d = 0; d < direct.size(); ++d) {
      Matrix m(code.field, t, code.width());
      std::string note;
      if (d < completing) {
        m.set_block(0, 0, completion.rows_range(static_cast<std::size_t>(d) * t, t));
        note = "completion;receiver=" + std::to_string(rec.index) + ";part=" + std::to_string(d);
      } else if (d < completing + extra_messages) {
        m = unit_block(code.field, code.h, t, base_h + (d - completing));
        note = "direct-message;block=" + std::to_string(base_h + (d - completing));
      } else {
        note = "unused";
      }
      code.coefficients[direct[d]] = std::move(m);
      code.provenance[direct[d]] = std::move(note);
    }
  }
}

inline void require_family(const Network& net, const std::string& name) {
  if (net.family().name != name)
    throw UnsupportedParameters("solver for '" + name + "' networks given a '" + net.family().name + "' network");
}

/// i-th evaluation point in enumeration order: 0, 1, alpha, alpha^2, ...
inline FieldElement enumerated_element(const Field& f, std::uint64_t i) {
  return i == 0 ? 0 : f.pow(f.primitive_element(), static_cast<std::int64_t>(i - 1));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Combination network

/// Largest r accepted by the MDS gate for N_{h,r,h} over F_{q_s}.
inline std::uint64_t mds_supported_length(std::uint64_t qs, unsigned h) {
  if (qs % 2 == 0 && (h == 3 || h + 1 == qs)) return qs + 2;
  return qs + 1;
}

/// Scalar solution of N_{h,r,h} from the generator of an extended Reed-Solomon
/// code: middle node i < r-1 gets column (1, a_i, ..., a_i^{h-1}) with a_i the
/// i-th element in enumeration order, the last node gets (0, ..., 0, 1). For
/// r = q_s + 2 (q_s even, h = 3) nodes q_s and q_s+1 get (0,1,0) and (0,0,1);
/// for h = q_s - 1 the dual of that [q_s+2, 3] code is used.
inline NetworkCode scalar_solve_combination(const Network& net, const Field& field) {
  detail::require_family(net, "combination");
  const unsigned h = net.h();
  const auto r = net.family().r;
  const std::uint64_t qs = field.order();
  if (net.family().s != h) throw UnsupportedParameters("scalar MDS solution needs s = h");
  if (r > mds_supported_length(qs, h))
    throw UnsupportedParameters("no supported MDS code of length " + std::to_string(r) + " and dimension " +
                                std::to_string(h) + " over F_" + std::to_string(qs) +
                                " (accepted: r <= q_s+1, or r = q_s+2 for even q_s with h in {3, q_s-1})");
  std::vector<Matrix> columns;  // each 1 x h (a row: coefficients of x_1..x_h)
  auto vandermonde_row = [&](FieldElement a, unsigned len) {
    Matrix row(field, 1, len);
    FieldElement pw = 1;
    for (unsigned j = 0; j < len; ++j) {
      row(0, j) = pw;
      pw = field.mul(pw, a);
    }
    return row;
  };
  std::vector<std::string> notes;
  if (r == qs + 2 && h != 3) {
    // dual of the doubly-extended [q+2, 3] code (h = q - 1)
    Matrix g3(field, 3, r);
    for (std::uint64_t i = 0; i < qs; ++i) g3.set_block(0, i, vandermonde_row(detail::enumerated_element(field, i), 3).transpose());
    g3(1, qs) = 1;
    g3(2, qs + 1) = 1;
    Matrix dual = nullspace(g3);
    for (unsigned i = 0; i < r; ++i) {
      columns.push_back(dual.block(0, i, h, 1).transpose());
      notes.push_back("dual-mds;column=" + std::to_string(i));
    }
  } else {
    const unsigned specials = (r == qs + 2) ? 2 : 1;
    for (unsigned i = 0; i + specials < r; ++i) {
      columns.push_back(vandermonde_row(detail::enumerated_element(field, i), h));
      notes.push_back("rs;point=" + std::to_string(i));
    }
    if (specials == 2) {
      columns.push_back(Matrix::unit_row(field, h, 1));
      notes.push_back("rs;extra=(0,1,0)");
    }
    if (r > 0) {
      columns.push_back(Matrix::unit_row(field, h, h - 1));
      notes.push_back("rs;infinity");
    }
  }
  NetworkCode code(Scheme::scalar(qs), field, h, 1, net.edges().size());
  const auto middles = net.middle_nodes();
  for (std::size_t i = 0; i < middles.size(); ++i) detail::assign_middle(net, code, middles[i], columns[i], notes[i]);
  detail::assign_direct_links(net, code, 0, h);
  return code;
}

/// Vector solution of N_{h,r,h} over F_q with dimension t: middle node i < r-1
/// gets (I, C_i, ..., C_i^{h-1}) with C_i codeword i of D_t, the last node
/// gets (0, ..., 0, I). For h = 3 and r = q^t + 2 (q = 2) nodes q^t and q^t+1
/// get (0, I, 0) and (0, 0, I).
inline NetworkCode vector_solve_combination(const Network& net, const Field& base, unsigned t) {
  detail::require_family(net, "combination");
  const unsigned h = net.h();
  const auto r = net.family().r;
  if (net.family().s != h) throw UnsupportedParameters("vector solution needs s = h");
  CompanionCode dt(base, t);
  const std::uint64_t qt = dt.size();
  const bool extended = (r == qt + 2);
  if (r > qt + 1 && !(extended && h == 3 && qt % 2 == 0))
    throw UnsupportedParameters("Construction supports r <= q^t+1 = " + std::to_string(qt + 1) +
                                " (or r = q^t+2 when h = 3 and q^t is even); got r = " + std::to_string(r));
  NetworkCode code(Scheme::vector(base.order(), t), base, h, t, net.edges().size());
  const auto middles = net.middle_nodes();
  const unsigned specials = extended ? 2 : 1;
  for (std::size_t i = 0; i < middles.size(); ++i) {
    if (i + specials < middles.size()) {
      std::vector<RankCodeword> one{dt.codeword(i)};
      Matrix block(base, t, static_cast<std::size_t>(h) * t);
      Matrix power = Matrix::identity(base, t);
      for (unsigned j = 0; j < h; ++j) {
        block.set_block(0, static_cast<std::size_t>(j) * t, power);
        power = power * one[0].matrix;
      }
      detail::assign_middle(net, code, middles[i], block, "vandermonde;codeword=" + std::to_string(i));
    } else if (i + 1 < middles.size()) {
      detail::assign_middle(net, code, middles[i], unit_block(base, h, t, 1), "extra=(0,I,0)");
    } else {
      detail::assign_middle(net, code, middles[i], unit_block(base, h, t, h - 1), "infinity=(0,...,0,I)");
    }
  }
  detail::assign_direct_links(net, code, 0, h);
  return code;
}

/// Maps a scalar code over F_{q^t} to a vector code over F_q by replacing each
/// coefficient with its D_t matrix.
inline NetworkCode lift_code(const NetworkCode& scalar, const CompanionCode& dt) {
  if (!scalar.scheme.is_scalar()) throw std::invalid_argument("lift_code needs a scalar code");
  const unsigned t = dt.t();
  NetworkCode out(Scheme::vector(dt.base_field().order(), t), dt.base_field(), scalar.h, t, scalar.coefficients.size());
  for (std::size_t e = 0; e < scalar.coefficients.size(); ++e) {
    const auto& row = scalar.coefficients[e].entries();
    auto blocks = lift_scalar_solution(scalar.field, row, dt);
    out.coefficients[e] = hstack(std::span<const Matrix>(blocks));
    out.provenance[e] = "lifted;" + scalar.provenance[e];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Star and plus networks

namespace detail {

inline unsigned star_completing_links(const Network& net) { return net.family().name == "plus" ? net.family().ell - 1 : 1; }

inline void check_star_family(const Network& net) {
  const auto& name = net.family().name;
  if (name != "star" && name != "plus") throw UnsupportedParameters("expected a star or plus network, got '" + name + "'");
  if (net.h() > 2 * net.family().ell + net.family().extra_links)
    throw UnsupportedParameters("more extra messages than extra direct links");
}

inline NetworkCode scalar_blocks_solve(const Network& net, const Field& field, const SubspaceCode& blocks,
                                       const std::string& label) {
  const unsigned ell = net.family().ell;
  const auto middles = net.middle_nodes();
  if (middles.size() > blocks.size())
    throw SupplyExceeded(std::to_string(middles.size()) + " middle nodes requested but only " +
                         std::to_string(blocks.size()) + " " + label + " blocks exist over F_" +
                         std::to_string(field.order()));
  NetworkCode code(Scheme::scalar(field.order()), field, net.h(), 1, net.edges().size());
  for (std::size_t i = 0; i < middles.size(); ++i) {
    Matrix block(field, ell, code.width());
    block.set_block(0, 0, blocks[i].basis());
    assign_middle(net, code, middles[i], block, label + ";subspace=" + std::to_string(i));
  }
  assign_direct_links(net, code, star_completing_links(net), 2 * ell);
  return code;
}

inline NetworkCode vector_mrd_solve(const Network& net, const Field& base, unsigned t, unsigned delta,
                                    const std::string& label) {
  const unsigned ell = net.family().ell;
  const unsigned side = ell * t;
  GabidulinCode mrd(base, side, delta);
  const auto middles = net.middle_nodes();
  const double log_size = mrd.dimension() * std::log2(static_cast<double>(base.order()));
  if (log_size < 62 && middles.size() > mrd.size())
    throw SupplyExceeded(std::to_string(middles.size()) + " middle nodes requested but the MRD code has only " +
                         std::to_string(mrd.size()) + " codewords");
  NetworkCode code(Scheme::vector(base.order(), t), base, net.h(), t, net.edges().size());
  for (std::size_t i = 0; i < middles.size(); ++i) {
    Matrix block(base, side, code.width());
    block.set_block(0, 0, Matrix::identity(base, side));
    block.set_block(0, side, mrd.codeword(i).matrix);
    assign_middle(net, code, middles[i], block, label + ";codeword=" + std::to_string(i));
  }
  assign_direct_links(net, code, star_completing_links(net), 2 * ell);
  return code;
}

}  // namespace detail

/// Scalar solution of N*_{2l,r,2l}: middle node i sends a basis of the i-th
/// l-subspace of F_{q_s}^{2l}; for l = 2 all of G(4,2), otherwise a greedy
/// family with pairwise intersections of dimension at most one.
inline NetworkCode scalar_solve_star(const Network& net, const Field& field) {
  detail::require_family(net, "star");
  detail::check_star_family(net);
  const unsigned ell = net.family().ell;
  auto blocks = ell == 2 ? pairwise_distance_code(field, 2, 2) : pairwise_distance_code(field, ell, 2 * ell - 2);
  return detail::scalar_blocks_solve(net, field, blocks, "grassmannian");
}

/// Vector solution of N*_{2l,r,2l}: middle node i sends (I_{lt}, C_i) with
/// C_i codeword i of MRD[lt x lt, (l-1)t]; each direct link completes the
/// receiver's stack to rank 2lt.
inline NetworkCode vector_solve_star(const Network& net, const Field& base, unsigned t) {
  detail::require_family(net, "star");
  detail::check_star_family(net);
  const unsigned ell = net.family().ell;
  return detail::vector_mrd_solve(net, base, t, (ell - 1) * t, "mrd");
}

/// N+ solutions: scalar blocks are all of G_{q_s}(2l, l); vector blocks come
/// from MRD[lt x lt, t]. The l-1 direct links complete each receiver.
inline NetworkCode solve_plus(const Network& net, const Scheme& scheme) {
  detail::require_family(net, "plus");
  detail::check_star_family(net);
  const unsigned ell = net.family().ell;
  const Field field = scheme.field();
  if (scheme.is_scalar()) {
    auto blocks = pairwise_distance_code(field, ell, 2);
    return detail::scalar_blocks_solve(net, field, blocks, "grassmannian");
  }
  return detail::vector_mrd_solve(net, field, scheme.t, scheme.t, "mrd");
}

// ---------------------------------------------------------------------------
// Tilde network

/// Scalar solution of Ñ_{3,r,3}: middle node i carries the representative of
/// point floor(i/2) of PG(2, q_s); the direct link completes rank 3.
inline NetworkCode scalar_solve_tilde(const Network& net, const Field& field) {
  detail::require_family(net, "tilde");
  const auto points = grassmannian(field, 3, 1);
  const auto middles = net.middle_nodes();
  if (middles.size() > 2 * points.size())
    throw SupplyExceeded(std::to_string(middles.size()) + " middle nodes requested but at most " +
                         std::to_string(2 * points.size()) + " = 2(q_s^2+q_s+1) are possible over F_" +
                         std::to_string(field.order()));
  NetworkCode code(Scheme::scalar(field.order()), field, 3, 1, net.edges().size());
  for (std::size_t i = 0; i < middles.size(); ++i)
    detail::assign_middle(net, code, middles[i], points[i / 2].basis(), "point=" + std::to_string(i / 2));
  detail::assign_direct_links(net, code, 1, 3);
  return code;
}

/// Vector solution of Ñ_{3,r,3}: middle node i carries the basis of codeword i
/// of a t-subspace code in F_q^{3t} in which any three codewords span >= 2t;
/// the direct link carries t completion rows.
inline NetworkCode vector_solve_tilde(const Network& net, const Field& base, unsigned t,
                                      std::optional<SubspaceCode> subspaces = std::nullopt) {
  detail::require_family(net, "tilde");
  const auto middles = net.middle_nodes();
  if (!subspaces) {
    auto found = triple_span_search(base, 3 * t, t, 2 * t, middles.size());
    subspaces = std::move(found.code);
  }
  const auto& words = *subspaces;
  if (words.ambient() != 3 * t || words.dim() != t || !(words.field() == base))
    throw std::invalid_argument("subspace code does not live in G_q(3t, t)");
  if (words.property().kind != SubspaceProperty::Kind::triple_span || words.property().value < 2 * t)
    throw std::invalid_argument("subspace code lacks the triple-span property");
  if (middles.size() > words.size())
    throw SupplyExceeded(std::to_string(middles.size()) + " middle nodes requested but the subspace code has " +
                         std::to_string(words.size()) + " codewords");
  NetworkCode code(Scheme::vector(base.order(), t), base, 3, t, net.edges().size());
  for (std::size_t i = 0; i < middles.size(); ++i)
    detail::assign_middle(net, code, middles[i], words[i].basis(), "subspace=" + std::to_string(i));
  detail::assign_direct_links(net, code, 1, 3);
  return code;
}

inline NetworkCode solve_tilde(const Network& net, const Scheme& scheme) {
  return scheme.is_scalar() ? scalar_solve_tilde(net, scheme.field()) : vector_solve_tilde(net, scheme.field(), scheme.t);
}

/// Dispatches on the network family.
inline NetworkCode solve(const Network& net, const Scheme& scheme) {
  const auto& name = net.family().name;
  if (!net.family().transforms.empty()) throw UnsupportedParameters("solve the original network and map the code instead");
  const Field field = scheme.field();
  if (name == "combination")
    return scheme.is_scalar() ? scalar_solve_combination(net, field) : vector_solve_combination(net, field, scheme.t);
  if (name == "star") return scheme.is_scalar() ? scalar_solve_star(net, field) : vector_solve_star(net, field, scheme.t);
  if (name == "plus") return solve_plus(net, scheme);
  if (name == "tilde") return solve_tilde(net, scheme);
  throw UnsupportedParameters("unknown family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Transfer matrices, verification, simulation, decoding

/// Stacks the coding matrices of receiver @p pos's in-edges.
inline Matrix transfer_matrix(const Network& net, const NetworkCode& code, std::size_t pos) {
  const auto& rec = net.receivers().at(pos);
  if (rec.in_edges.empty()) return Matrix(code.field, 0, code.width());
  std::vector<Matrix> parts;
  parts.reserve(rec.in_edges.size());
  for (auto e : rec.in_edges) {
    if (e >= code.coefficients.size()) throw std::invalid_argument("missing coefficient for edge " + std::to_string(e));
    parts.push_back(code.coefficients[e]);
  }
  return vstack(std::span<const Matrix>(parts));
}

/// Local coding at each non-source node: for every out-edge e of v, L_e with
/// L_e * (stacked in-edge matrices of v) = G_e. Nodes where some G_e is not in
/// the row space of the inputs are reported in @c unrealizable.
struct LocalCoding {
  std::vector<std::optional<Matrix>> per_edge;
  std::vector<std::size_t> unrealizable;
};

inline LocalCoding local_coding(const Network& net, const NetworkCode& code) {
  LocalCoding lc;
  lc.per_edge.assign(net.edges().size(), std::nullopt);
  for (const auto& node : net.nodes()) {
    if (node.id == net.source() || net.out_edges(node.id).empty()) continue;
    const auto& ins = net.in_edges(node.id);
    const auto& outs = net.out_edges(node.id);
    std::vector<Matrix> in_parts, out_parts;
    for (auto e : ins) in_parts.push_back(code.coefficients[e]);
    for (auto e : outs) out_parts.push_back(code.coefficients[e].transpose());
    Matrix targets = hstack(std::span<const Matrix>(out_parts));
    std::optional<Matrix> sol;
    if (in_parts.empty()) {
      if (targets.is_zero()) sol = Matrix(code.field, 0, targets.cols());
    } else {
      sol = solve_particular(vstack(std::span<const Matrix>(in_parts)).transpose(), targets);
    }
    if (!sol) {
      lc.unrealizable.push_back(node.id);
      continue;
    }
    for (std::size_t k = 0; k < outs.size(); ++k)
      lc.per_edge[outs[k]] = sol->block(0, k * code.t, sol->rows(), code.t).transpose();
  }
  return lc;
}

struct ReceiverRecord {
  std::size_t node;
  std::uint64_t index;
  std::size_t rank;
  std::size_t required;
  bool pass;
};

struct VerificationReport {
  std::vector<ReceiverRecord> records;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t required_rank = 0;
  std::vector<std::size_t> unrealizable_nodes;
  double elapsed_ms = 0;

  bool solved() const { return failed == 0 && unrealizable_nodes.empty(); }
};

inline std::size_t resolve_workers(std::size_t requested) { return requested == 0 ? 1 : requested; }

/// Checks rank(transfer) = ht at every receiver and that every edge's matrix is
/// realisable from its tail's inputs. Records keep receiver order whatever the
/// worker count.
inline VerificationReport verify_solution(const Network& net, const NetworkCode& code, std::size_t workers = 1) {
  const auto start = std::chrono::steady_clock::now();
  check_code_shape(net, code);
  VerificationReport rep;
  rep.required_rank = code.width();
  const auto& recs = net.receivers();
  rep.records.resize(recs.size());
  auto run = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < recs.size(); i += stride) {
      const auto rk = rank(transfer_matrix(net, code, i));
      rep.records[i] = {recs[i].node, recs[i].index, rk, code.width(), rk == code.width()};
    }
  };
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(recs.size(), 1));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : rep.records) (r.pass ? rep.passed : rep.failed)++;
  rep.unrealizable_nodes = local_coding(net, code).unrealizable;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// A message: the column (x_1; ...; x_h) of length ht.
using Message = Matrix;

inline Message random_message(const Field& f, std::size_t length, std::mt19937_64& rng) {
  Message m(f, length, 1);
  for (std::size_t i = 0; i < length; ++i) m(i, 0) = static_cast<FieldElement>(rng() % f.order());
  return m;
}

/// Forward evaluation: source edges apply their global matrices, every other
/// node applies its local coding to the symbols it received. Returns the
/// observation (stacked in-edge symbols) of each receiver.
inline std::vector<Matrix> simulate(const Network& net, const NetworkCode& code, const LocalCoding& lc,
                                    const Message& msg) {
  check_code_shape(net, code);
  if (msg.rows() != code.width() || msg.cols() != 1) throw std::invalid_argument("message must be an ht x 1 column");
  if (!lc.unrealizable.empty())
    throw std::domain_error("code is not realisable at node " + std::to_string(lc.unrealizable.front()));
  std::vector<std::optional<Matrix>> symbol(net.edges().size());
  for (auto v : net.topological_order()) {
    const auto& outs = net.out_edges(v);
    if (outs.empty()) continue;
    if (v == net.source()) {
      for (auto e : outs) symbol[e] = code.coefficients[e] * msg;
      continue;
    }
    std::vector<Matrix> inputs;
    for (auto e : net.in_edges(v)) inputs.push_back(*symbol[e]);
    Matrix in = inputs.empty() ? Matrix(code.field, 0, 1) : vstack(std::span<const Matrix>(inputs));
    for (auto e : outs) symbol[e] = in.rows() ? (*lc.per_edge[e]) * in : Matrix(code.field, code.t, 1);
  }
  std::vector<Matrix> out;
  out.reserve(net.receivers().size());
  for (const auto& rec : net.receivers()) {
    std::vector<Matrix> parts;
    for (auto e : rec.in_edges) parts.push_back(*symbol[e]);
    out.push_back(parts.empty() ? Matrix(code.field, 0, 1) : vstack(std::span<const Matrix>(parts)));
  }
  return out;
}

inline std::vector<Matrix> simulate(const Network& net, const NetworkCode& code, const Message& msg) {
  return simulate(net, code, local_coding(net, code), msg);
}

/// Recovers the message at receiver @p pos from its observation.
inline Message decode_receiver(const Network& net, const NetworkCode& code, std::size_t pos, const Matrix& observation) {
  const Matrix t = transfer_matrix(net, code, pos);
  if (observation.rows() != t.rows() || observation.cols() != 1)
    throw std::invalid_argument("observation length does not match the receiver's in-edges");
  if (rank(t) != t.cols())
    throw std::domain_error("receiver " + std::to_string(net.receivers()[pos].index) + " has a rank-deficient transfer matrix");
  return solve_linear(t, observation);
}

/// Carries a code through a network transformation: copied edges keep their
/// matrix, relay edges carry their message block.
inline NetworkCode map_code(const NetworkCode& code, const Transformed& tr) {
  NetworkCode out(code.scheme, code.field, code.h, code.t, tr.network.edges().size());
  for (std::size_t e = 0; e < tr.origin.size(); ++e) {
    const auto& o = tr.origin[e];
    if (o.edge) {
      out.coefficients[e] = code.coefficients.at(*o.edge);
      out.provenance[e] = "copy;edge=" + std::to_string(*o.edge);
    } else {
      out.coefficients[e] = unit_block(code.field, code.h, code.t, *o.message_block);
      out.provenance[e] = "relay;block=" + std::to_string(*o.message_block);
    }
  }
  return out;
}

}  // namespace netgap
