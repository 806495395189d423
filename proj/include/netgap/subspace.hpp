#pragma once

/// @file subspace.hpp
/// @brief Grassmannians over finite fields: q-binomials, canonical subspaces,
/// subspace distance, enumeration, spreads and searched subspace codes.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "netgap/field.hpp"
#include "netgap/matrix.hpp"

namespace netgap {

using BigInt = boost::multiprecision::cpp_int;

/// Number of r-dimensional subspaces of F_q^n. Exact for any integer q >= 2.
inline BigInt q_binomial(unsigned n, unsigned r, const BigInt& q) {
  if (r > n) throw std::invalid_argument("q_binomial: r > n");
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < r; ++i) {
    num *= boost::multiprecision::pow(q, n) - boost::multiprecision::pow(q, i);
    den *= boost::multiprecision::pow(q, r) - boost::multiprecision::pow(q, i);
  }
  return num / den;
}

/// A subspace of F_q^n held as its reduced row echelon basis.
class Subspace {
 public:
  static Subspace from_matrix(const Matrix& m) {
    auto [r, pivots] = rref(m);
    return Subspace(r.rows_range(0, pivots.size()));
  }

  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const Field& field() const { return basis_.field(); }

  bool contains(const Subspace& other) const {
    check_ambient(other);
    return rank(vstack({basis_, other.basis_})) == dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  /// RREF-lexicographic order: dimension, then row-major basis entries.
  friend bool operator<(const Subspace& a, const Subspace& b) { return a.basis_ < b.basis_; }

  void check_ambient(const Subspace& o) const {
    if (ambient() != o.ambient() || !(field() == o.field()))
      throw std::invalid_argument("subspaces live in different ambient spaces");
  }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// dim of the sum of the given subspaces.
inline std::size_t span_dim(std::span<const Subspace> parts) {
  if (parts.empty()) return 0;
  std::vector<Matrix> bases;
  bases.reserve(parts.size());
  for (const auto& s : parts) {
    parts[0].check_ambient(s);
    if (s.dim()) bases.push_back(s.basis());
  }
  if (bases.empty()) return 0;
  return rank(vstack(std::span<const Matrix>(bases)));
}

inline std::size_t span_dim(std::initializer_list<Subspace> parts) {
  return span_dim(std::span<const Subspace>(parts.begin(), parts.size()));
}

/// 2 dim(U+V) - dim U - dim V.
inline std::size_t subspace_distance(const Subspace& u, const Subspace& v) {
  return 2 * span_dim({u, v}) - u.dim() - v.dim();
}

inline constexpr std::uint64_t kGrassmannianCap = 1'000'000;

/// Every k-dimensional subspace of F^n exactly once, in RREF-lexicographic order.
inline std::vector<Subspace> grassmannian(const Field& field, unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("grassmannian: k > n");
  const BigInt count = q_binomial(n, k, field.order());
  if (count > kGrassmannianCap)
    throw std::invalid_argument("grassmannian G(" + std::to_string(n) + "," + std::to_string(k) + ") over " +
                                field.describe() + " exceeds the enumeration cap");
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(count));
  const std::uint32_t q = field.order();
  std::vector<std::size_t> pivots(k);
  for (unsigned i = 0; i < k; ++i) pivots[i] = i;
  while (true) {
    // free positions: (row i, col c) with c > pivots[i] and c not a pivot column
    std::vector<std::pair<std::size_t, std::size_t>> free;
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (unsigned i = 0; i < k; ++i)
      for (std::size_t c = pivots[i] + 1; c < n; ++c)
        if (!is_pivot[c]) free.emplace_back(i, c);
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (true) {
      Matrix m(field, k, n);
      for (unsigned i = 0; i < k; ++i) m(i, pivots[i]) = 1;
      for (std::size_t f = 0; f < free.size(); ++f) m(free[f].first, free[f].second) = digits[f];
      out.push_back(Subspace::from_matrix(m));
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
    // next k-combination of {0..n-1}
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && pivots[i] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (unsigned j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Declared property of a subspace code.
struct SubspaceProperty {
  enum class Kind { min_distance, triple_span, pairwise_intersection };
  Kind kind;
  std::size_t value;

  static SubspaceProperty min_distance(std::size_t d) { return {Kind::min_distance, d}; }
  static SubspaceProperty triple_span(std::size_t s) { return {Kind::triple_span, s}; }
  static SubspaceProperty pairwise_intersection(std::size_t d) { return {Kind::pairwise_intersection, d}; }

  std::string name() const {
    switch (kind) {
      case Kind::min_distance: return "min_distance";
      case Kind::triple_span: return "triple_span";
      case Kind::pairwise_intersection: return "pairwise_intersection";
    }
    return "?";
  }
};

/// Re-verifies @p prop over @p words from scratch. Returns a description of
/// the first violation, or an empty string.
inline std::string find_violation(std::span<const Subspace> words, SubspaceProperty prop) {
  const std::size_t n = words.size();
  using Kind = SubspaceProperty::Kind;
  if (prop.kind == Kind::min_distance && prop.value <= 2 && n > 0 &&
      std::all_of(words.begin(), words.end(), [&](const Subspace& s) { return s.dim() == words[0].dim(); })) {
    // equal-dimension subspaces are at distance >= 2 iff distinct
    std::set<std::vector<FieldElement>> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (prop.value > 0 && !seen.insert(words[i].basis().entries()).second)
        return "duplicate codeword " + std::to_string(i);
    }
    return {};
  }
  if (prop.kind == Kind::triple_span) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c)
          if (span_dim({words[a], words[b], words[c]}) < prop.value)
            return "triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ") spans < " +
                   std::to_string(prop.value);
    return {};
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto sum = span_dim({words[a], words[b]});
      if (prop.kind == Kind::min_distance) {
        if (2 * sum - words[a].dim() - words[b].dim() < prop.value)
          return "pair (" + std::to_string(a) + "," + std::to_string(b) + ") below distance " + std::to_string(prop.value);
      } else {
        if (words[a].dim() + words[b].dim() - sum > prop.value)
          return "pair (" + std::to_string(a) + "," + std::to_string(b) + ") intersects in more than " +
                 std::to_string(prop.value);
      }
    }
  return {};
}

/// A constant-dimension code whose declared property has been verified.
class SubspaceCode {
 public:
  /// Verifies @p prop exhaustively (pairs or triples); throws std::logic_error
  /// on a violation.
  static SubspaceCode verified(Field field, std::size_t n, std::size_t k, std::vector<Subspace> words,
                               SubspaceProperty prop) {
    for (const auto& w : words)
      if (w.ambient() != n || w.dim() != k || !(w.field() == field))
        throw std::invalid_argument("codeword does not belong to G(n,k)");
    if (auto bad = find_violation(words, prop); !bad.empty())
      throw std::logic_error("subspace code fails its " + prop.name() + " property: " + bad);
    return SubspaceCode(std::move(field), n, k, std::move(words), prop);
  }

  const Field& field() const { return field_; }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return k_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Subspace>& words() const& { return words_; }
  std::vector<Subspace> words() && { return std::move(words_); }
  const Subspace& operator[](std::size_t i) const { return words_[i]; }
  SubspaceProperty property() const { return prop_; }

 private:
  SubspaceCode(Field f, std::size_t n, std::size_t k, std::vector<Subspace> w, SubspaceProperty p)
      : field_(std::move(f)), n_(n), k_(k), words_(std::move(w)), prop_(p) {}

  Field field_;
  std::size_t n_, k_;
  std::vector<Subspace> words_;
  SubspaceProperty prop_;
};

/// Desarguesian spread of F_q^n by k-subspaces (q prime, k | n): each point of
/// PG(n/k - 1, q^k) becomes the F_q-span of {beta * v} over a basis beta of
/// F_{q^k}. Sorted in RREF-lexicographic order.
inline SubspaceCode spread(const Field& field, unsigned n, unsigned k) {
  if (k == 0 || n % k != 0) throw std::invalid_argument("spread needs k | n");
  if (field.degree() != 1) throw std::invalid_argument("spread construction needs a prime field");
  const Field ext = Field::make(field.characteristic(), k);
  const unsigned blocks = n / k;
  const std::uint64_t big = ext.order();
  std::vector<Subspace> words;
  // normalized vectors of F_{q^k}^{blocks}: first nonzero coordinate is 1
  for (unsigned lead = 0; lead < blocks; ++lead) {
    const unsigned tail = blocks - lead - 1;
    std::uint64_t combos = 1;
    for (unsigned i = 0; i < tail; ++i) combos *= big;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::vector<FieldElement> v(blocks, 0);
      v[lead] = 1;
      std::uint64_t rest = c;
      for (unsigned i = lead + 1; i < blocks; ++i) {
        v[i] = static_cast<FieldElement>(rest % big);
        rest /= big;
      }
      Matrix basis(field, k, n);
      for (unsigned b = 0; b < k; ++b) {
        const FieldElement beta = ext.pow(ext.primitive_element(), b);
        for (unsigned i = 0; i < blocks; ++i) {
          const FieldElement coord = ext.mul(beta, v[i]);
          for (unsigned d = 0; d < k; ++d) basis(b, i * k + d) = ext.digit(coord, d);
        }
      }
      words.push_back(Subspace::from_matrix(basis));
    }
  }
  std::sort(words.begin(), words.end());
  return SubspaceCode::verified(field, n, k, std::move(words), SubspaceProperty::pairwise_intersection(0));
}

struct SubspaceSearchResult {
  SubspaceCode code;
  std::size_t target;
  bool target_reached;
};

/// Greedy search for k-subspaces of F_q^n any three of which span at least
/// @p min_span dimensions. Seeded with a spread when k | n (truncated to the
/// target), then extended by scanning G_q(n,k) in RREF-lexicographic order.
/// The result is triple-verified from scratch.
inline SubspaceSearchResult triple_span_search(const Field& field, unsigned n, unsigned k, std::size_t min_span,
                                               std::size_t target) {
  std::vector<Subspace> code;
  auto admissible = [&](const Subspace& cand) {
    for (std::size_t a = 0; a < code.size(); ++a) {
      if (code[a] == cand) return false;
      for (std::size_t b = a + 1; b < code.size(); ++b)
        if (span_dim({code[a], code[b], cand}) < min_span) return false;
    }
    return true;
  };
  if (field.degree() == 1 && k > 0 && n % k == 0) {
    const auto seed = spread(field, n, k);
    for (const auto& s : seed.words()) {
      if (code.size() >= target) break;
      if (admissible(s)) code.push_back(s);
    }
  }
  if (code.size() < target) {
    for (const auto& cand : grassmannian(field, n, k)) {
      if (code.size() >= target) break;
      if (admissible(cand)) code.push_back(cand);
    }
  }
  const bool reached = code.size() >= target;
  auto verified = SubspaceCode::verified(field, n, k, std::move(code), SubspaceProperty::triple_span(min_span));
  return {std::move(verified), target, reached};
}

/// l-subspaces of F_q^{2l} with pairwise subspace distance >= min_dist, for
/// min_dist in {2, 2l-2}. Distance 2 gives the whole Grassmannian; 2l-2 is a
/// greedy selection in RREF-lexicographic order.
inline SubspaceCode pairwise_distance_code(const Field& field, unsigned ell, std::size_t min_dist) {
  if (ell < 1) throw std::invalid_argument("pairwise_distance_code needs l >= 1");
  if (min_dist != 2 && min_dist != 2 * ell - 2)
    throw std::invalid_argument("unsupported minimum distance " + std::to_string(min_dist));
  auto all = grassmannian(field, 2 * ell, ell);
  if (min_dist <= 2)
    return SubspaceCode::verified(field, 2 * ell, ell, std::move(all), SubspaceProperty::min_distance(min_dist));
  std::vector<Subspace> chosen;
  for (auto& cand : all) {
    bool ok = true;
    for (const auto& c : chosen)
      if (subspace_distance(c, cand) < min_dist) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(std::move(cand));
  }
  return SubspaceCode::verified(field, 2 * ell, ell, std::move(chosen), SubspaceProperty::min_distance(min_dist));
}

}  // namespace netgap
