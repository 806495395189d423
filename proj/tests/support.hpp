#pragma once

// Conversions between library types and the oracle's plain containers, plus
// seeded random generators shared by the suites.

#include <random>

#include "netgap/netgap.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Gf gf(const netgap::Field& f) { return {f.characteristic(), f.degree(), f.modulus()}; }

inline oracle::Mat plain(const netgap::Matrix& m) {
  oracle::Mat out(m.rows(), oracle::Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline netgap::Matrix from_plain(const netgap::Field& f, const oracle::Mat& m) {
  netgap::Matrix out(f, m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

inline netgap::Matrix random_matrix(const netgap::Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  netgap::Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<netgap::FieldElement>(rng() % f.order());
  return m;
}

inline netgap::Matrix random_invertible(const netgap::Field& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto m = random_matrix(f, n, n, rng);
    if (netgap::rank(m) == n) return m;
  }
}

/// Network as a plain edge list for the brute-force cut oracle.
inline oracle::Graph graph(const netgap::Network& net) {
  oracle::Graph g;
  g.nodes = net.nodes().size();
  for (const auto& e : net.edges()) g.edges.emplace_back(e.tail, e.head);
  return g;
}

/// F_2 row of length <= 6 packed as an integer (entry j is bit j).
inline std::uint32_t pack_row(const netgap::Matrix& m, std::size_t r) {
  std::uint32_t v = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) v |= m(r, j) << j;
  return v;
}

inline std::uint64_t subspace_mask(const netgap::Subspace& s) {
  std::vector<std::uint32_t> rows;
  for (std::size_t i = 0; i < s.dim(); ++i) rows.push_back(pack_row(s.basis(), i));
  return oracle::span_mask(rows);
}

}  // namespace support
