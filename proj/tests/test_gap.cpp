#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "support.hpp"

using namespace netgap;
using netgap::io::json;

namespace {

const Field F2 = Field::make(2, 1);

GapOptions quick(std::uint64_t cap = 2000, std::size_t workers = 1) {
  GapOptions o;
  o.sample_cap = cap;
  o.workers = workers;
  return o;
}

const std::vector<std::uint64_t> kPrimePowers{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};

}  // namespace

// ---------------------------------------------------------------------------
// Bounds

TEST(MaxMiddleNodes, Examples) {
  EXPECT_EQ(max_middle_nodes(combination_family(3, 0, 3), Scheme::vector(2, 2)), 5);
  EXPECT_EQ(max_middle_nodes(star_family(2, 0), Scheme::scalar(2)), 35);
  EXPECT_EQ(max_middle_nodes(star_family(2, 0), Scheme::vector(2, 2)), 4096);
  EXPECT_EQ(max_middle_nodes(star_family(2, 0), Scheme::vector(2, 1)), 16);
  EXPECT_EQ(max_middle_nodes(plus_family(3, 0), Scheme::scalar(2)), 1395);
  EXPECT_EQ(max_middle_nodes(plus_family(3, 0), Scheme::vector(2, 1)), 512);
  EXPECT_EQ(max_middle_nodes(tilde_family(0), Scheme::scalar(4)), 42);
  EXPECT_GE(max_middle_nodes(tilde_family(0), Scheme::vector(2, 2)), 43);
  EXPECT_EQ(max_middle_nodes(combination_family(3, 0, 3), Scheme::scalar(4)), 6);
  EXPECT_EQ(max_middle_nodes(combination_family(4, 0, 4), Scheme::scalar(4)), 5);
}

TEST(MaxMiddleNodes, Refusals) {
  EXPECT_THROW(max_middle_nodes(star_family(3, 0), Scheme::scalar(2)), UnsupportedParameters);
  Family bogus{"ring", 2, 3, 2, 0, 0};
  EXPECT_THROW(max_middle_nodes(bogus, Scheme::scalar(2)), std::invalid_argument);
  EXPECT_THROW(max_middle_nodes(star_family(1, 0), Scheme::scalar(2)), std::invalid_argument);
}

TEST(MaxMiddleNodes, ClosedFormsMatchCounts) {
  for (std::uint64_t qs : {2u, 3u, 4u, 5u}) {
    const auto f = Field::of_order(qs);
    // l = 2 star: all of G(4, 2); tilde: two nodes per point of the plane
    EXPECT_EQ(max_middle_nodes(star_family(2, 0), Scheme::scalar(qs)), BigInt(grassmannian(f, 4, 2).size()));
    EXPECT_EQ(max_middle_nodes(tilde_family(0), Scheme::scalar(qs)), BigInt(2 * grassmannian(f, 3, 1).size()));
  }
  for (std::uint64_t q : {2u, 3u})
    for (unsigned t : {1u, 2u}) {
      const GabidulinCode star_code(Field::make(static_cast<std::uint32_t>(q), 1), 2 * t, t);
      EXPECT_EQ(max_middle_nodes(star_family(2, 0), Scheme::vector(q, t)), BigInt(star_code.size()));
      EXPECT_EQ(max_middle_nodes(combination_family(3, 0, 3), Scheme::vector(q, t)),
                BigInt(CompanionCode(Field::make(static_cast<std::uint32_t>(q), 1), t).size() + 1));
    }
  const GabidulinCode plus_code(F2, 3, 1);
  EXPECT_EQ(max_middle_nodes(plus_family(3, 0), Scheme::vector(2, 1)), BigInt(plus_code.size()));
}

TEST(MinScalarFieldSize, Examples) {
  EXPECT_EQ(min_scalar_field_size(star_family(2, 0), 35), 2u);
  EXPECT_EQ(min_scalar_field_size(star_family(2, 0), 36), 3u);
  EXPECT_EQ(min_scalar_field_size(star_family(2, 0), 4096), 8u);
  EXPECT_EQ(min_scalar_field_size(tilde_family(0), 42), 4u);
  EXPECT_EQ(min_scalar_field_size(tilde_family(0), 43), 5u);
  EXPECT_EQ(min_scalar_field_size(combination_family(3, 0, 3), 6), 4u);
  EXPECT_EQ(min_scalar_field_size(combination_family(4, 0, 4), 6), 5u);
  EXPECT_THROW(min_scalar_field_size(star_family(2, 0), 0), std::invalid_argument);
}

TEST(MinScalarFieldSize, StarBracketAt4096) {
  const auto fam = star_family(2, 0);
  // direct evaluation of (q^2+1)(q^2+q+1)
  auto bound = [](std::uint64_t q) { return (q * q + 1) * (q * q + q + 1); };
  EXPECT_EQ(bound(7), 2850u);
  EXPECT_EQ(bound(8), 4745u);
  EXPECT_EQ(max_middle_nodes(fam, Scheme::scalar(7)), 2850);
  EXPECT_EQ(max_middle_nodes(fam, Scheme::scalar(8)), 4745);
}

TEST(MinScalarFieldSize, MonotoneAndBracketed) {
  for (const auto& fam : {star_family(2, 0), tilde_family(0), plus_family(3, 0), combination_family(3, 0, 3),
                          combination_family(5, 0, 5)}) {
    std::uint64_t last = 0;
    for (std::uint64_t r = 1; r <= 3000; r += (r < 100 ? 1 : 37)) {
      const auto qs = min_scalar_field_size(fam, r);
      ASSERT_GE(qs, last) << fam.name << " r=" << r;
      last = qs;
      ASSERT_GE(max_middle_nodes(fam, Scheme::scalar(qs)), r);
      if (auto prev = previous_prime_power(qs)) ASSERT_LT(max_middle_nodes(fam, Scheme::scalar(*prev)), r);
    }
  }
}

TEST(PrimePowers, PreviousAndNext) {
  for (std::size_t i = 1; i < kPrimePowers.size(); ++i) {
    EXPECT_EQ(previous_prime_power(kPrimePowers[i]), kPrimePowers[i - 1]);
    EXPECT_EQ(next_prime_power(kPrimePowers[i - 1]), kPrimePowers[i]);
  }
  EXPECT_FALSE(previous_prime_power(2));
}

// ---------------------------------------------------------------------------
// Gap reports

TEST(GapReport, StarAtTwoSquared) {
  const auto g = gap_report(star_family(2, 0), 2, 2, std::nullopt, quick());
  EXPECT_EQ(g.r, 4096u);
  EXPECT_EQ(g.scalar_q, 8u);
  EXPECT_EQ(g.scalar_bound, 4745);
  EXPECT_EQ(g.previous_q, 7u);
  EXPECT_EQ(*g.previous_bound, 2850);
  EXPECT_EQ(g.vector_bound, 4096);
  EXPECT_TRUE(g.vector_verified);
  EXPECT_TRUE(g.sampled);
  EXPECT_EQ(g.receivers_total, 8386560u);
  EXPECT_EQ(g.receivers_checked, 2000u);
  EXPECT_EQ(g.receivers_passed, 2000u);
  EXPECT_DOUBLE_EQ(g.ratio, 4.0);
  // 2^{t^2/2 + t/2 - 1} at t = 2
  EXPECT_DOUBLE_EQ(g.ratio, std::pow(2.0, 2.0 + 1.0 - 1.0));
  EXPECT_NEAR(g.exponent, 2.0, 1e-12);
  EXPECT_NEAR(*g.leading_term, 2.0, 1e-12);
  EXPECT_NEAR(*g.residual, 0.0, 1e-12);
  EXPECT_NEAR(g.exponent_vs_qt, 1.0, 1e-12);
}

TEST(GapReport, StarAtTEqualsOneHasNoGap) {
  const auto g = gap_report(star_family(2, 0), 2, 1, 16, quick());
  EXPECT_EQ(g.scalar_q, 2u);
  EXPECT_FALSE(g.previous_q);
  EXPECT_DOUBLE_EQ(g.ratio, 1.0);
  EXPECT_DOUBLE_EQ(g.exponent, 0.0);
  EXPECT_FALSE(g.sampled);
  EXPECT_EQ(g.receivers_checked, 120u);
}

TEST(GapReport, Tilde) {
  const auto g = gap_report(tilde_family(0), 2, 2, 43, quick(20'000));
  EXPECT_EQ(g.scalar_q, 5u);
  EXPECT_EQ(g.previous_q, 4u);
  EXPECT_EQ(*g.previous_bound, 42);
  EXPECT_EQ(g.receivers_checked, 12341u);
  EXPECT_TRUE(g.vector_verified);
  EXPECT_FALSE(g.leading_term);
}

TEST(GapReport, Refusals) {
  EXPECT_THROW(gap_report(star_family(2, 0), 2, 1, 17, quick()), SupplyExceeded);
  EXPECT_THROW(gap_report(star_family(2, 0), 4, 1, 16, quick()), std::invalid_argument);
  EXPECT_THROW(gap_report(star_family(2, 0), 2, 3, std::nullopt, quick()), UnsupportedParameters);
}

TEST(GapReport, SampleIsSeeded) {
  auto a = quick(300), b = quick(300);
  b.seed = 99;
  const auto ga = gap_report(star_family(2, 0), 2, 2, 200, a), ga2 = gap_report(star_family(2, 0), 2, 2, 200, a);
  const auto gb = gap_report(star_family(2, 0), 2, 2, 200, b);
  EXPECT_EQ(io::gap_to_json(ga).dump(), io::gap_to_json(ga2).dump());
  EXPECT_TRUE(gb.vector_verified);
}

// ---------------------------------------------------------------------------
// Experiments and presets

TEST(Experiment, EmptySchemeListIsRejected) {
  ExperimentConfig cfg;
  cfg.name = "empty";
  cfg.family = combination_family(3, 5, 3);
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg.schemes = {Scheme::vector(4, 1)};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg.schemes = {Scheme::scalar(6)};
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
}

TEST(Experiment, UnexpectedSuccessIsNotOk) {
  ExperimentConfig cfg;
  cfg.name = "solvable";
  cfg.family = star_family(2, 10);
  cfg.schemes = {Scheme::scalar(2)};
  EXPECT_TRUE(run_experiment(cfg).ok());
  cfg.expect_refusal = true;
  EXPECT_FALSE(run_experiment(cfg).ok());
}

TEST(Presets, Vandermonde) {
  const auto res = run_preset(find_preset("vandermonde"), quick(), false);
  ASSERT_TRUE(res.ok());
  const auto& n353 = res.experiments.at(0);
  EXPECT_EQ(n353.receivers, 10u);
  for (const auto& run : n353.runs) {
    EXPECT_EQ(run.status, "solved");
    EXPECT_EQ(run.report->passed, 10u);
  }
  EXPECT_EQ(n353.runs[0].report->required_rank, 6u);
}

TEST(Presets, GrassmannianStarPassThenRefusal) {
  const auto res = run_preset(find_preset("grassmannian-star"), quick(), false);
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.experiments[0].runs[0].status, "solved");
  EXPECT_EQ(res.experiments[0].runs[0].report->passed, 595u);
  EXPECT_EQ(res.experiments[1].runs[0].status, "refused");
  EXPECT_FALSE(res.experiments[1].runs[0].report);
}

TEST(Presets, TransformsAndGeneralized) {
  for (const auto* name : {"transforms", "generalized"}) {
    const auto res = run_preset(find_preset(name), quick(), false);
    EXPECT_TRUE(res.ok()) << name;
  }
  const auto tr = run_preset(find_preset("transforms"), quick(), false);
  const auto& runs = tr.experiments[0].runs[0].transforms;
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].min_cut_before_min, 5u);
  EXPECT_EQ(runs[0].min_cut_after_max, 4u);
  EXPECT_TRUE(runs[1].simple);
}

TEST(Presets, UnknownNameThrows) {
  EXPECT_THROW(find_preset("nope"), std::invalid_argument);
  std::set<std::string> names;
  for (const auto& p : presets()) EXPECT_TRUE(names.insert(p.name).second);
}

TEST(Presets, ByteIdenticalAcrossRunsAndWorkers) {
  for (const auto* name : {"vandermonde", "grassmannian-star", "transforms"}) {
    const auto& p = find_preset(name);
    const auto a = io::preset_to_json(p, run_preset(p, quick(), false)).dump(2);
    const auto b = io::preset_to_json(p, run_preset(p, quick(), false)).dump(2);
    const auto c = io::preset_to_json(p, run_preset(p, quick(2000, 4), false)).dump(2);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a, c) << name;
    EXPECT_EQ(a.find("elapsed_ms"), std::string::npos);
  }
}

TEST(Tables, OneLinePerScheme) {
  const auto res = run_preset(find_preset("vandermonde"), quick(), false);
  const auto table = experiment_table(res.experiments);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 1 + 4);
  EXPECT_NE(table.find("vector(2,2)"), std::string::npos);
  const auto g = gap_report(star_family(2, 0), 2, 1, 16, quick());
  const auto gt = gap_table({g});
  EXPECT_EQ(std::count(gt.begin(), gt.end(), '\n'), 2);
}

// ---------------------------------------------------------------------------
// Serialisation

TEST(Io, MatrixAndFieldRoundTrip) {
  std::mt19937_64 rng(4);
  for (auto q : {2u, 4u, 9u, 7u}) {
    const auto f = Field::of_order(q);
    const auto m = support::random_matrix(f, 3, 5, rng);
    const auto j = io::matrix_to_json(m);
    EXPECT_EQ(j.at("q"), q);
    EXPECT_EQ(io::matrix_from_json(json::parse(j.dump())), m);
    EXPECT_EQ(io::field_from_json(io::field_to_json(f)), f);
  }
  json bad = io::matrix_to_json(Matrix::identity(F2, 2));
  bad["entries"] = {1, 0, 0};
  EXPECT_THROW(io::matrix_from_json(bad), std::invalid_argument);
  bad = io::matrix_to_json(Matrix::identity(F2, 2));
  bad.erase("rows");
  EXPECT_THROW(io::matrix_from_json(bad), std::invalid_argument);
}

TEST(Io, NetworkAndCodeRoundTrip) {
  for (const auto& [net, scheme] : std::vector<std::pair<Network, Scheme>>{
           {combination_network(3, 5, 3), Scheme::vector(2, 2)},
           {star_network(2, 6), Scheme::scalar(2)},
           {add_direct_links(plus_network(3, 5), 1, 1), Scheme::vector(2, 1)}}) {
    const auto code = solve(net, scheme);
    const auto net2 = io::network_from_json(json::parse(io::network_to_json(net).dump()));
    EXPECT_EQ(net2.family(), net.family());
    EXPECT_EQ(io::network_to_json(net2), io::network_to_json(net));
    const auto code2 = io::network_code_from_json(json::parse(io::network_code_to_json(net, code).dump()));
    EXPECT_EQ(code2.coefficients, code.coefficients);
    EXPECT_EQ(code2.scheme, code.scheme);
    EXPECT_TRUE(verify_solution(net2, code2).solved());
  }
  EXPECT_THROW(io::network_from_json(json::parse(R"({"nodes": []})")), std::invalid_argument);
}

TEST(Io, SubspaceCodeReverifiesOnLoad) {
  const auto code = triple_span_search(F2, 6, 2, 4, 30).code;
  auto j = io::subspace_code_to_json(code);
  EXPECT_EQ(io::subspace_code_from_json(j).words(), code.words());
  // replace the last three codewords by three lines of one plane
  auto& bases = j.at("bases");
  bases[bases.size() - 3] = {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0};
  bases[bases.size() - 2] = {1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0};
  bases[bases.size() - 1] = {0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0};
  EXPECT_THROW(io::subspace_code_from_json(j), std::logic_error);
  j["property"]["kind"] = "bogus";
  EXPECT_THROW(io::subspace_code_from_json(j), std::invalid_argument);
}

TEST(Io, BigIntegersBecomeStrings) {
  EXPECT_EQ(io::big_to_json(BigInt(42)), 42);
  const auto big = detail::big_pow(2, 70);
  EXPECT_EQ(io::big_to_json(big), "1180591620717411303424");
}

TEST(Io, FileRoundTripAndErrors) {
  const auto path = (std::filesystem::temp_directory_path() / "netgap_io_test.json").string();
  const auto net = tilde_network(4);
  io::write_file(path, io::network_to_json(net));
  EXPECT_EQ(io::network_to_json(io::network_from_json(io::read_file(path))), io::network_to_json(net));
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(io::read_file(path), std::invalid_argument);
  std::remove(path.c_str());
  EXPECT_THROW(io::read_file(path), std::invalid_argument);
}
