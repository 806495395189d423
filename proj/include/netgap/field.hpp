#pragma once

/// @file field.hpp
/// @brief Finite fields F_{p^m} with elements encoded as integers in polynomial basis.
///
/// An element is the integer whose base-p digits are its coordinates over the
/// basis 1, x, x^2, ... of F_p[x]/(f). Encoding 0 is the additive identity and
/// encoding 1 the multiplicative identity. Log/antilog tables are built for
/// fields of order up to 2^16; larger fields fall back to polynomial arithmetic.

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace netgap {

using FieldElement = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and a != 0.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo a monic polynomial f.
inline Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  const std::size_t df = f.size() - 1;
  trim(a);
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      const std::uint64_t sub = lead * f[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>(
          (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  trim(out);
  return out;
}

/// Remainder of a modulo an arbitrary nonzero g (not necessarily monic).
inline Poly poly_rem(Poly a, Poly g, std::uint32_t p) {
  trim(a);
  trim(g);
  const std::uint32_t lead_inv = inv_mod_prime(g.back(), p);
  for (auto& c : g) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * lead_inv % p);
  return poly_mod(std::move(a), g, p);
}

inline Poly digits_of(std::uint64_t enc, std::uint32_t p, unsigned m) {
  Poly out(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    out[i] = static_cast<std::uint32_t>(enc % p);
    enc /= p;
  }
  trim(out);
  return out;
}

inline std::uint64_t encode_digits(const Poly& a, std::uint32_t p) {
  std::uint64_t enc = 0;
  for (std::size_t i = a.size(); i-- > 0;) enc = enc * p + a[i];
  return enc;
}

/// Irreducibility by trial division with every monic polynomial of degree 1..m/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m <= 1) return m == 1;
  std::uint64_t count = 1;
  for (unsigned d = 1; d <= m / 2; ++d) {
    count *= p;  // monic degree-d polynomials: p^d
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = digits_of(low, p, d);
      g.resize(d + 1, 0);
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// A finite field F_{p^m}. Copies share the same immutable tables.
class Field {
 public:
  /// Builds F_{p^m}. Without a modulus, the lowest-encoding primitive monic
  /// polynomial of degree m is used. A supplied modulus (coefficients c_0..c_m)
  /// must be monic and irreducible; with @p require_primitive it must also be
  /// primitive.
  static Field make(std::uint32_t p, unsigned m,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                    bool require_primitive = false) {
    if (!detail::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
      q *= p;
      if (q > (1ULL << 31)) throw std::invalid_argument("field order exceeds 2^31");
    }
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->m = m;
    impl->q = static_cast<std::uint32_t>(q);
    if (modulus) {
      auto f = *modulus;
      if (f.size() != m + 1) throw std::invalid_argument("modulus must have degree m");
      for (auto c : f)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
      if (f.back() != 1) throw std::invalid_argument("modulus must be monic");
      if (!detail::is_irreducible(f, p)) throw std::invalid_argument("modulus is reducible");
      impl->modulus = f;
      impl->modulus_primitive = x_is_primitive(f, p, q);
      if (require_primitive && !impl->modulus_primitive) throw std::invalid_argument("modulus is not primitive");
    } else {
      impl->modulus = find_primitive_polynomial(p, m);
      impl->modulus_primitive = true;
    }
    impl->finish();
    return Field(std::move(impl));
  }

  /// The field of order q (a prime power) with the default modulus.
  static Field of_order(std::uint64_t q) {
    for (std::uint32_t p = 2; p <= q; ++p) {
      if (q % p != 0) continue;
      unsigned m = 0;
      std::uint64_t rest = q;
      while (rest % p == 0) {
        rest /= p;
        ++m;
      }
      if (rest != 1 || !detail::is_prime(p)) break;
      return make(p, m);
    }
    throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  }

  /// Lowest-encoding primitive monic polynomial of degree m over F_p.
  static std::vector<std::uint32_t> find_primitive_polynomial(std::uint32_t p, unsigned m) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    for (std::uint64_t low = 0; low < q; ++low) {
      auto f = detail::digits_of(low, p, m);
      f.resize(m + 1, 0);
      f[m] = 1;
      if (detail::is_irreducible(f, p) && x_is_primitive(f, p, q)) return f;
    }
    throw std::logic_error("no primitive polynomial found");  // unreachable
  }

  std::uint32_t characteristic() const { return impl_->p; }
  unsigned degree() const { return impl_->m; }
  std::uint32_t order() const { return impl_->q; }
  const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }
  bool modulus_is_primitive() const { return impl_->modulus_primitive; }
  FieldElement primitive_element() const { return impl_->primitive; }
  bool contains(std::uint64_t a) const { return a < impl_->q; }

  FieldElement add(FieldElement a, FieldElement b) const {
    const auto& d = *impl_;
    if (d.p == 2) return a ^ b;
    if (d.m == 1) return (a + b) % d.p;
    FieldElement out = 0, scale = 1;
    for (unsigned i = 0; i < d.m; ++i) {
      out += ((a % d.p + b % d.p) % d.p) * scale;
      a /= d.p;
      b /= d.p;
      scale *= d.p;
    }
    return out;
  }

  FieldElement neg(FieldElement a) const {
    const auto& d = *impl_;
    if (d.p == 2) return a;
    if (d.m == 1) return (d.p - a) % d.p;
    FieldElement out = 0, scale = 1;
    for (unsigned i = 0; i < d.m; ++i) {
      out += ((d.p - a % d.p) % d.p) * scale;
      a /= d.p;
      scale *= d.p;
    }
    return out;
  }

  FieldElement sub(FieldElement a, FieldElement b) const { return impl_->p == 2 ? a ^ b : add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a == 0 || b == 0) return 0;
    const auto& d = *impl_;
    if (!d.exp.empty()) return d.exp[d.log[a] + d.log[b]];
    if (d.m == 1) return static_cast<FieldElement>(static_cast<std::uint64_t>(a) * b % d.p);
    return slow_mul(a, b);
  }

  FieldElement inv(FieldElement a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    const auto& d = *impl_;
    if (!d.exp.empty()) return d.exp[(d.q - 1 - d.log[a]) % (d.q - 1)];
    return pow(a, static_cast<std::int64_t>(d.q) - 2);
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  /// a^e; for nonzero a the exponent is reduced modulo q-1 (negative e allowed).
  FieldElement pow(FieldElement a, std::int64_t e) const {
    if (a == 0) {
      if (e < 0) throw std::domain_error("negative power of zero");
      return e == 0 ? 1 : 0;
    }
    const std::int64_t order = impl_->q - 1;
    std::int64_t r = e % order;
    if (r < 0) r += order;
    FieldElement result = 1, base = a;
    while (r) {
      if (r & 1) result = mul(result, base);
      base = mul(base, base);
      r >>= 1;
    }
    return result;
  }

  /// Coordinate i (coefficient of x^i) of a.
  std::uint32_t digit(FieldElement a, unsigned i) const {
    for (unsigned k = 0; k < i; ++k) a /= impl_->p;
    return a % impl_->p;
  }

  /// Integer embedding of F_p: the element c * 1.
  FieldElement from_int(std::int64_t c) const {
    const std::int64_t p = impl_->p;
    return static_cast<FieldElement>(((c % p) + p) % p);
  }

  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(FieldElement a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative order");
    std::uint64_t order = impl_->q - 1;
    for (auto f : detail::prime_factors(impl_->q - 1)) {
      while (order % f == 0 && pow(a, static_cast<std::int64_t>(order / f)) == 1) order /= f;
    }
    return order;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "GF(" << impl_->q << ")";
    if (impl_->m > 1) {
      os << " mod [";
      for (std::size_t i = 0; i < impl_->modulus.size(); ++i) os << (i ? "," : "") << impl_->modulus[i];
      os << "]";
    }
    return os.str();
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.impl_ == b.impl_ || (a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus);
  }

 private:
  struct Impl {
    std::uint32_t p = 2;
    unsigned m = 1;
    std::uint32_t q = 2;
    std::vector<std::uint32_t> modulus;
    bool modulus_primitive = false;
    FieldElement primitive = 1;
    std::vector<std::uint32_t> log;  // indexed by element
    std::vector<FieldElement> exp;   // length 2(q-1), exp[i] = g^i

    FieldElement x_mod_f() const {
      auto r = detail::poly_mod({0, 1}, modulus, p);
      return static_cast<FieldElement>(detail::encode_digits(r, p));
    }

    FieldElement mulmod(FieldElement a, FieldElement b) const {
      auto prod = detail::poly_mul(detail::digits_of(a, p, m), detail::digits_of(b, p, m), p);
      return static_cast<FieldElement>(detail::encode_digits(detail::poly_mod(std::move(prod), modulus, p), p));
    }

    std::uint64_t order_of(FieldElement a) const {
      auto power = [&](FieldElement base, std::uint64_t e) {
        FieldElement r = 1;
        while (e) {
          if (e & 1) r = mulmod(r, base);
          base = mulmod(base, base);
          e >>= 1;
        }
        return r;
      };
      std::uint64_t order = q - 1;
      for (auto f : detail::prime_factors(q - 1))
        while (order % f == 0 && power(a, order / f) == 1) order /= f;
      return order;
    }

    void finish() {
      if (modulus_primitive) {
        primitive = x_mod_f();
      } else {
        primitive = 0;
        for (FieldElement g = 1; g < q; ++g) {
          if (order_of(g) == q - 1) {
            primitive = g;
            break;
          }
        }
      }
      if (q <= (1u << 16)) {
        log.assign(q, 0);
        exp.assign(2 * (q - 1), 0);
        FieldElement cur = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
          exp[i] = cur;
          exp[i + q - 1] = cur;
          log[cur] = i;
          cur = mulmod(cur, primitive);
        }
      }
    }
  };

  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  FieldElement slow_mul(FieldElement a, FieldElement b) const { return impl_->mulmod(a, b); }

  static bool x_is_primitive(const std::vector<std::uint32_t>& f, std::uint32_t p, std::uint64_t q) {
    Impl probe;
    probe.p = p;
    probe.m = static_cast<unsigned>(f.size() - 1);
    probe.q = static_cast<std::uint32_t>(q);
    probe.modulus = f;
    const FieldElement x = probe.x_mod_f();
    if (x == 0) return false;
    return probe.order_of(x) == q - 1;
  }

  std::shared_ptr<const Impl> impl_;
};

/// True iff n = p^k for a prime p and k >= 1.
inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;
}

/// Smallest prime power strictly greater than n.
inline std::uint64_t next_prime_power(std::uint64_t n) {
  do {
    ++n;
  } while (!is_prime_power(n));
  return n;
}

}  // namespace netgap
