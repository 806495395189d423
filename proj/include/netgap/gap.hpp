#pragma once

/// @file gap.hpp
/// @brief Middle-node bounds per family and scheme, the smallest scalar field
/// admitting a given r, and scalar-vs-vector field-size gap reports.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "netgap/coding.hpp"
#include "netgap/subspace.hpp"

namespace netgap {

namespace detail {

inline BigInt big_pow(std::uint64_t base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline bool is_odd_variant(const Family& fam) { return fam.extra_links > 0; }

inline void check_family_name(const Family& fam) {
  const auto& n = fam.name;
  if (n != "combination" && n != "star" && n != "plus" && n != "tilde")
    throw std::invalid_argument("unknown family '" + n + "'");
  if ((n == "star" || n == "plus") && fam.ell < 2) throw std::invalid_argument(n + " family needs l >= 2");
}

}  // namespace detail

/// Size of the greedy triple-span code in G_q(3t, t) used by the vector tilde
/// solver (any three codewords span >= 2t). Searched, so desk-scale only.
inline std::uint64_t tilde_vector_supply(std::uint64_t q, unsigned t) {
  const Field f = Field::make(static_cast<std::uint32_t>(q), 1);
  const auto total = q_binomial(3 * t, t, BigInt(q));
  if (total > kGrassmannianCap) throw UnsupportedParameters("tilde vector supply needs a desk-scale Grassmannian");
  const auto res = triple_span_search(f, 3 * t, t, 2 * t, static_cast<std::size_t>(total));
  return res.code.size();
}

/// Largest r for which the family's construction under @p scheme exists.
///   combination: scalar q_s+1 (q_s+2 in the even-q_s MDS cases), vector q^t+1
///     (the solver also accepts q^t+2 for h = 3 and even q^t, not counted here);
///   star: scalar (q_s^2+1)(q_s^2+q_s+1) for l = 2, vector q^{l t^2 + l t};
///   plus: scalar [2l choose l]_{q_s}, vector q^{l(l-1)t^2 + l t};
///   tilde: scalar 2(q_s^2+q_s+1), vector the searched triple-span code size.
/// Odd variants (extra direct links) share the bound of their base family.
inline BigInt max_middle_nodes(const Family& fam, const Scheme& scheme) {
  detail::check_family_name(fam);
  const std::uint64_t q = scheme.q;
  const unsigned t = scheme.t;
  const unsigned ell = fam.ell;
  if (fam.name == "combination") {
    if (scheme.is_scalar()) return BigInt(mds_supported_length(q, fam.h));
    return detail::big_pow(q, t) + 1;
  }
  if (fam.name == "star") {
    if (!scheme.is_scalar()) return detail::big_pow(q, ell * t * t + ell * t);
    if (ell != 2)
      throw UnsupportedParameters("no closed-form scalar bound for the star family with l >= 3; the largest "
                                  "distance-(2l-2) set is only known up to order");
    const BigInt b(q);
    return (b * b + 1) * (b * b + b + 1);
  }
  if (fam.name == "plus") {
    if (!scheme.is_scalar()) return detail::big_pow(q, ell * (ell - 1) * t * t + ell * t);
    return q_binomial(2 * ell, ell, BigInt(q));
  }
  if (scheme.is_scalar()) {
    const BigInt b(q);
    return 2 * (b * b + b + 1);
  }
  return BigInt(tilde_vector_supply(q, t));
}

/// Smallest prime power q_s whose scalar bound admits @p r middle nodes.
inline std::uint64_t min_scalar_field_size(const Family& fam, std::uint64_t r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  for (std::uint64_t qs = 2;; qs = next_prime_power(qs))
    if (max_middle_nodes(fam, Scheme::scalar(qs)) >= r) return qs;
}

/// Largest prime power below @p q, if any.
inline std::optional<std::uint64_t> previous_prime_power(std::uint64_t q) {
  for (std::uint64_t c = q; c-- > 2;)
    if (is_prime_power(c)) return c;
  return std::nullopt;
}

/// Leading coefficient c of the gap exponent c t^2 claimed for the family
/// (star: 1/2, plus: (l-1)/l), or nullopt when no asymptotic claim applies.
inline std::optional<double> gap_leading_coefficient(const Family& fam) {
  if (fam.name == "star") return 0.5;
  if (fam.name == "plus") return static_cast<double>(fam.ell - 1) / fam.ell;
  return std::nullopt;
}

struct GapOptions {
  std::uint64_t sample_cap = 20'000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::size_t workers = 1;
};

struct GapReport {
  Family family;
  std::uint64_t q = 2;
  unsigned t = 1;
  std::uint64_t r = 0;
  // scalar side
  std::uint64_t scalar_q = 0;
  BigInt scalar_bound;  // bound at scalar_q
  std::optional<std::uint64_t> previous_q;
  std::optional<BigInt> previous_bound;
  // vector side
  BigInt vector_bound;
  std::size_t receivers_checked = 0;
  std::uint64_t receivers_total = 0;
  std::size_t receivers_passed = 0;
  bool sampled = false;
  bool vector_verified = false;
  // comparison
  double ratio = 0;     // q_s / q
  double exponent = 0;  // log_q(q_s / q)
  std::optional<double> leading_term;
  std::optional<double> residual;
  double exponent_vs_qt = 0;  // log_q(q_s) - t, the comparison against the q^t vector field size
  std::string formula;
};

/// Builds the family network for @p r (sampling receivers unless exhaustive).
inline Network build_family_network(const Family& fam, unsigned r, const ReceiverSelection& sel) {
  Network base;
  if (fam.name == "combination")
    base = combination_network(fam.h, r, fam.s ? fam.s : fam.h, sel);
  else if (fam.name == "star")
    base = star_network(fam.ell, r, sel);
  else if (fam.name == "plus")
    base = plus_network(fam.ell, r, sel);
  else if (fam.name == "tilde")
    base = tilde_network(r, sel);
  else
    throw std::invalid_argument("unknown family '" + fam.name + "'");
  if (fam.extra_links == 0) return base;
  const unsigned extra_messages = fam.h > base.h() ? fam.h - base.h() : 0;
  return add_direct_links(base, fam.extra_links, extra_messages);
}

inline std::uint64_t receiver_count(const Family& fam, std::uint64_t r) {
  const unsigned s = fam.name == "combination" ? (fam.s ? fam.s : fam.h) : fam.name == "tilde" ? 3 : 2;
  return binomial(r, s);
}

/// Pairs the smallest scalar field for r middle nodes with a verified vector
/// solution over F_q with dimension t. r defaults to the vector bound.
inline GapReport gap_report(const Family& fam, std::uint64_t q, unsigned t, std::optional<std::uint64_t> r = std::nullopt,
                            const GapOptions& opt = {}) {
  detail::check_family_name(fam);
  if (!is_prime_power(q) || Field::of_order(q).degree() != 1)
    throw std::invalid_argument("vector alphabet q must be prime");
  GapReport g;
  g.family = fam;
  g.q = q;
  g.t = t;
  const Scheme vec = Scheme::vector(q, t);
  g.vector_bound = max_middle_nodes(fam, vec);
  if (!r) {
    if (g.vector_bound > 1'000'000) throw UnsupportedParameters("vector bound too large to instantiate; pass r");
    r = static_cast<std::uint64_t>(g.vector_bound);
  }
  if (*r > 1'000'000) throw UnsupportedParameters("r too large to instantiate");
  if (BigInt(*r) > g.vector_bound) throw SupplyExceeded("r exceeds the vector construction's bound");
  g.r = *r;
  g.family.r = static_cast<unsigned>(g.r);

  g.scalar_q = min_scalar_field_size(fam, g.r);
  g.scalar_bound = max_middle_nodes(fam, Scheme::scalar(g.scalar_q));
  g.previous_q = previous_prime_power(g.scalar_q);
  if (g.previous_q) g.previous_bound = max_middle_nodes(fam, Scheme::scalar(*g.previous_q));

  g.receivers_total = receiver_count(fam, g.r);
  const auto sel = opt.exhaustive ? ReceiverSelection::all() : ReceiverSelection::sample(g.receivers_total, opt.sample_cap, opt.seed);
  Family shaped = fam;
  const Network net = build_family_network(shaped, static_cast<unsigned>(g.r), sel);
  const NetworkCode code = solve(net, vec);
  const auto rep = verify_solution(net, code, opt.workers);
  g.receivers_checked = rep.records.size();
  g.receivers_passed = rep.passed;
  g.sampled = net.family().sampled;
  g.family.sampled = g.sampled;
  g.vector_verified = rep.solved();
  if (!g.vector_verified) throw std::domain_error("vector solution failed verification; gap not reported");

  const double lq = std::log(static_cast<double>(q));
  g.ratio = static_cast<double>(g.scalar_q) / static_cast<double>(q);
  g.exponent = std::log(g.ratio) / lq;
  g.exponent_vs_qt = std::log(static_cast<double>(g.scalar_q)) / lq - t;
  if (auto c = gap_leading_coefficient(fam)) {
    g.leading_term = *c * t * t;
    g.residual = g.exponent - *g.leading_term;
  }
  if (fam.name == "star")
    g.formula = "q^(t^2/2 + o(t))";
  else if (fam.name == "plus")
    g.formula = "q^((l-1)t^2/l + o(t))";
  else
    g.formula = "none (finite instance)";
  return g;
}

}  // namespace netgap
