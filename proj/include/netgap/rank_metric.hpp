#pragma once

/// @file rank_metric.hpp
/// @brief Rank-metric codes: companion-matrix codes D_t, Gabidulin MRD codes,
/// rank distance, MRD verification, scalar-to-matrix lifting and block
/// Vandermonde matrices.
///
/// Codes are enumerated lazily by index; a codeword is a pure function of
/// (code, index), so code objects are immutable and safe to share.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netgap/field.hpp"
#include "netgap/matrix.hpp"

namespace netgap {

struct RankCodeword {
  Matrix matrix;
  std::uint64_t index;
};

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t e) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (out > (std::uint64_t{1} << 62) / base) throw std::overflow_error("code size exceeds 2^62");
    out *= base;
  }
  return out;
}

/// Companion matrix of the monic polynomial c_0 + c_1 x + ... + x^t: ones on the
/// sub-diagonal, -c_0..-c_{t-1} in the last column.
inline Matrix companion_matrix(const Field& field, std::span<const FieldElement> poly) {
  if (poly.size() < 2) throw std::invalid_argument("companion matrix needs degree >= 1");
  if (poly.back() != 1) throw std::invalid_argument("companion matrix needs a monic polynomial");
  const std::size_t t = poly.size() - 1;
  Matrix c(field, t, t);
  for (std::size_t i = 1; i < t; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < t; ++i) c(i, t - 1) = field.neg(poly[i]);
  return c;
}

/// D_t = {0, I, C, C^2, ..., C^{q^t-2}} over a prime field F_q, where C is the
/// companion matrix of the lowest-encoding primitive polynomial of degree t.
/// Index 0 is the zero matrix and index k >= 1 is C^{k-1}.
class CompanionCode {
 public:
  CompanionCode(Field base, unsigned t)
      : base_(std::move(base)), t_(t), extension_(Field::make(base_.characteristic(), t)) {
    if (base_.degree() != 1) throw std::invalid_argument("companion code needs a prime base field");
    if (t == 0) throw std::invalid_argument("companion code needs t >= 1");
    std::vector<FieldElement> poly(extension_.modulus().begin(), extension_.modulus().end());
    generator_ = companion_matrix(base_, poly);
    powers_.push_back(Matrix::identity(base_, t));
    for (unsigned i = 1; i < t; ++i) powers_.push_back(powers_.back() * generator_);
  }

  const Field& base_field() const { return base_; }
  /// F_{q^t} whose modulus is the companion polynomial.
  const Field& extension_field() const { return extension_; }
  unsigned t() const { return t_; }
  const Matrix& generator() const { return generator_; }
  std::uint64_t size() const { return extension_.order(); }
  unsigned min_distance() const { return t_; }
  unsigned rows() const { return t_; }
  unsigned cols() const { return t_; }

  /// Field element paired with codeword @p index (0 -> 0, k -> alpha^{k-1}).
  FieldElement element(std::uint64_t index) const {
    check_index(index);
    if (index == 0) return 0;
    return extension_.pow(extension_.primitive_element(), static_cast<std::int64_t>(index - 1));
  }

  /// Inverse of element(): the codeword index of a field element.
  std::uint64_t index_of(FieldElement a) const {
    if (a == 0) return 0;
    const FieldElement g = extension_.primitive_element();
    FieldElement cur = 1;
    for (std::uint64_t k = 1; k <= size(); ++k) {
      if (cur == a) return k;
      cur = extension_.mul(cur, g);
    }
    throw std::invalid_argument("element not in field");
  }

  RankCodeword codeword(std::uint64_t index) const { return {lift(element(index)), index}; }

  std::vector<RankCodeword> codewords() const {
    std::vector<RankCodeword> out;
    for (std::uint64_t i = 0; i < size(); ++i) out.push_back(codeword(i));
    return out;
  }

  /// The isomorphism F_{q^t} -> D_t: sum a_i alpha^i -> sum a_i C^i.
  Matrix lift(FieldElement a) const {
    Matrix out(base_, t_, t_);
    for (unsigned i = 0; i < t_; ++i) {
      const auto d = extension_.digit(a, i);
      if (d) out += powers_[i].scaled(d);
    }
    return out;
  }

 private:
  void check_index(std::uint64_t index) const {
    if (index >= size()) throw std::out_of_range("codeword index " + std::to_string(index) + " out of range");
  }

  Field base_;
  unsigned t_;
  Field extension_;
  Matrix generator_{base_, 0, 0};
  std::vector<Matrix> powers_;  // C^0 .. C^{t-1}
};

/// Square Gabidulin code over a prime field F_q: side x side matrices,
/// minimum rank distance delta, F_q-dimension side*(side-delta+1).
///
/// Codeword for message (f_0, ..., f_{k'-1}) in F_{q^side}^{k'} is the matrix
/// whose column i holds the coordinates of f(alpha^i), f(x) = sum_j f_j x^{q^j}.
/// The index is read as base-q digits, lowest digit first; digits
/// [j*side, (j+1)*side) are the coordinates of f_j.
class GabidulinCode {
 public:
  GabidulinCode(Field base, unsigned side, unsigned delta)
      : base_(std::move(base)), side_(side), delta_(delta), extension_(Field::make(base_.characteristic(), side)) {
    if (base_.degree() != 1) throw std::invalid_argument("Gabidulin code needs a prime base field");
    if (delta < 1 || delta > side) throw std::invalid_argument("infeasible minimum distance " + std::to_string(delta));
    k_ext_ = side - delta + 1;
    const auto q = base_.order();
    // frob_[i][j] = (alpha^i)^{q^j}
    frob_.assign(side, std::vector<FieldElement>(k_ext_, 0));
    for (unsigned i = 0; i < side; ++i) {
      FieldElement g = extension_.pow(extension_.primitive_element(), i);
      for (unsigned j = 0; j < k_ext_; ++j) {
        frob_[i][j] = g;
        g = extension_.pow(g, q);
      }
    }
  }

  const Field& base_field() const { return base_; }
  const Field& extension_field() const { return extension_; }
  unsigned side() const { return side_; }
  unsigned rows() const { return side_; }
  unsigned cols() const { return side_; }
  unsigned min_distance() const { return delta_; }
  /// Dimension over F_q; meets the Singleton-like bound with equality.
  unsigned dimension() const { return side_ * k_ext_; }
  std::uint64_t size() const { return checked_power(base_.order(), dimension()); }

  RankCodeword codeword(std::uint64_t index) const {
    if (index >= size()) throw std::out_of_range("codeword index " + std::to_string(index) + " out of range");
    const std::uint64_t ext_order = extension_.order();
    std::vector<FieldElement> coeffs(k_ext_);
    std::uint64_t rest = index;
    for (unsigned j = 0; j < k_ext_; ++j) {
      coeffs[j] = static_cast<FieldElement>(rest % ext_order);
      rest /= ext_order;
    }
    Matrix m(base_, side_, side_);
    for (unsigned i = 0; i < side_; ++i) {
      FieldElement value = 0;
      for (unsigned j = 0; j < k_ext_; ++j) value = extension_.add(value, extension_.mul(coeffs[j], frob_[i][j]));
      for (unsigned d = 0; d < side_; ++d) m(d, i) = extension_.digit(value, d);
    }
    return {std::move(m), index};
  }

  /// Index of the codeword whose message is the digit-wise sum of the messages
  /// of @p a and @p b.
  std::uint64_t index_sum(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t q = base_.order();
    std::uint64_t out = 0, scale = 1;
    for (unsigned i = 0; i < dimension(); ++i) {
      out += ((a % q + b % q) % q) * scale;
      a /= q;
      b /= q;
      scale *= q;
    }
    return out;
  }

 private:
  Field base_;
  unsigned side_;
  unsigned delta_;
  unsigned k_ext_ = 0;
  Field extension_;
  std::vector<std::vector<FieldElement>> frob_;
};

/// rk(A - B).
inline std::size_t rank_distance(const Matrix& a, const Matrix& b) {
  a.check_same_shape(b);
  return rank(a - b);
}

struct MrdVerification {
  std::size_t min_distance = 0;
  std::uint64_t pairs_checked = 0;
  bool ok = true;
  /// First pair found below the designed distance.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> violation;
};

struct MrdMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static MrdMode all() { return {}; }
  static MrdMode sampled(std::uint64_t n, std::uint64_t seed = 1) { return {false, n, seed}; }
};

/// Checks that codeword differences have rank >= the designed distance.
/// Exhaustive mode is limited to codes of size at most 2^12.
template <class Code>
MrdVerification verify_mrd(const Code& code, MrdMode mode) {
  MrdVerification rep;
  rep.min_distance = code.rows();
  const std::size_t designed = code.min_distance();
  auto check = [&](const Matrix& a, std::uint64_t i, const Matrix& b, std::uint64_t j) {
    const auto d = rank_distance(a, b);
    ++rep.pairs_checked;
    rep.min_distance = std::min(rep.min_distance, d);
    if (d < designed && !rep.violation) {
      rep.violation = std::make_pair(i, j);
      rep.ok = false;
    }
  };
  if (mode.exhaustive) {
    if (code.size() > (1u << 12)) throw std::invalid_argument("exhaustive MRD check limited to 2^12 codewords");
    std::vector<Matrix> words;
    for (std::uint64_t i = 0; i < code.size(); ++i) words.push_back(code.codeword(i).matrix);
    for (std::uint64_t i = 0; i < words.size(); ++i)
      for (std::uint64_t j = i + 1; j < words.size(); ++j) check(words[i], i, words[j], j);
  } else {
    std::mt19937_64 rng(mode.seed);
    const std::uint64_t n = code.size();
    if (n < 2) return rep;
    for (std::uint64_t s = 0; s < mode.samples; ++s) {
      const std::uint64_t i = rng() % n;
      std::uint64_t j = rng() % (n - 1);
      if (j >= i) ++j;
      check(code.codeword(i).matrix, i, code.codeword(j).matrix, j);
    }
  }
  return rep;
}

/// Replaces each scalar coefficient over F_{q^t} by its D_t matrix. The scalar
/// field must be the extension field of @p code (same modulus).
inline std::vector<Matrix> lift_scalar_solution(const Field& scalar_field, std::span<const FieldElement> coefficients,
                                                const CompanionCode& code) {
  if (!(scalar_field == code.extension_field()))
    throw std::invalid_argument("scalar field " + scalar_field.describe() + " does not match companion polynomial of " +
                                code.extension_field().describe());
  std::vector<Matrix> out;
  out.reserve(coefficients.size());
  for (auto a : coefficients) out.push_back(code.lift(a));
  return out;
}

/// Block row i is (I, C_i, C_i^2, ..., C_i^{h-1}); result is ht x ht.
inline Matrix block_vandermonde(std::span<const RankCodeword> codewords, std::size_t h) {
  if (codewords.size() != h || h == 0) throw std::invalid_argument("block_vandermonde needs exactly h codewords");
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i + 1; j < h; ++j)
      if (codewords[i].matrix == codewords[j].matrix) throw std::invalid_argument("block_vandermonde: duplicate codewords");
  const std::size_t t = codewords[0].matrix.rows();
  const Field& f = codewords[0].matrix.field();
  Matrix out(f, h * t, h * t);
  for (std::size_t i = 0; i < h; ++i) {
    Matrix power = Matrix::identity(f, t);
    for (std::size_t j = 0; j < h; ++j) {
      out.set_block(i * t, j * t, power);
      power = power * codewords[i].matrix;
    }
  }
  return out;
}

/// True iff for every l in 1..h every window of l consecutive block rows and l
/// consecutive block columns has rank l*t.
inline bool check_consecutive_blocks(const Matrix& m, std::size_t t, std::size_t h) {
  if (m.rows() != h * t || m.cols() != h * t) throw std::invalid_argument("matrix is not ht x ht");
  for (std::size_t l = 1; l <= h; ++l)
    for (std::size_t r0 = 0; r0 + l <= h; ++r0)
      for (std::size_t c0 = 0; c0 + l <= h; ++c0)
        if (rank(m.block(r0 * t, c0 * t, l * t, l * t)) != l * t) return false;
  return true;
}

}  // namespace netgap
