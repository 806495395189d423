#pragma once

/// @file experiment.hpp
/// @brief Experiment configs, runs and named presets. A run generates the
/// family network, solves it under each scheme, verifies, round-trips random
/// messages and optionally re-verifies through the network transformations.

#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netgap/coding.hpp"
#include "netgap/gap.hpp"
#include "netgap/io.hpp"

namespace netgap {

struct ExperimentConfig {
  std::string name;
  Family family;  // name, h, r, s, ell, extra_links
  std::vector<Scheme> schemes;
  std::vector<std::string> transforms;  // "normalize", "simple"
  bool expect_refusal = false;
  std::uint64_t sample_cap = 20'000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::size_t workers = 1;
  unsigned round_trips = 10;

  void validate() const {
    if (schemes.empty()) throw std::invalid_argument("experiment '" + name + "' has no schemes");
    detail::check_family_name(family);
    if (family.r < 1) throw std::invalid_argument("experiment '" + name + "' needs r >= 1");
    for (const auto& s : schemes) {
      if (!is_prime_power(s.q)) throw std::invalid_argument("field size " + std::to_string(s.q) + " is not a prime power");
      if (!s.is_scalar() && Field::of_order(s.q).degree() != 1)
        throw std::invalid_argument("vector alphabet must be prime");
      if (s.t < 1) throw std::invalid_argument("t must be positive");
    }
    for (const auto& t : transforms)
      if (t != "normalize" && t != "simple") throw std::invalid_argument("unknown transform '" + t + "'");
  }
};

struct TransformRun {
  std::string name;
  std::size_t min_cut_before_min = 0, min_cut_before_max = 0;
  std::size_t min_cut_after_min = 0, min_cut_after_max = 0;
  bool simple = false;
  VerificationReport report;
};

struct SchemeRun {
  Scheme scheme;
  std::string status;  // solved | failed | refused
  std::string message;
  std::optional<BigInt> bound;
  std::optional<VerificationReport> report;
  unsigned round_trips = 0;
  unsigned round_trips_ok = 0;
  std::vector<TransformRun> transforms;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::size_t nodes = 0, edges = 0, receivers = 0;
  std::uint64_t receivers_total = 0;
  bool sampled = false;
  std::vector<SchemeRun> runs;

  /// Every scheme solved (or was refused, when a refusal is expected).
  bool ok() const {
    for (const auto& r : runs) {
      if (config.expect_refusal ? r.status != "refused" : r.status != "solved") return false;
    }
    return !runs.empty();
  }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> cut_range(const Network& net) {
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& r : net.receivers()) {
    const auto c = min_cut(net, r.node);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return {net.receivers().empty() ? 0 : lo, hi};
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg;
  res.receivers_total = receiver_count(cfg.family, cfg.family.r);
  const auto sel =
      cfg.exhaustive ? ReceiverSelection::all() : ReceiverSelection::sample(res.receivers_total, cfg.sample_cap, cfg.seed);
  const Network net = build_family_network(cfg.family, cfg.family.r, sel);
  res.nodes = net.nodes().size();
  res.edges = net.edges().size();
  res.receivers = net.receivers().size();
  res.sampled = net.family().sampled;

  std::mt19937_64 rng(cfg.seed);
  for (const auto& scheme : cfg.schemes) {
    SchemeRun run;
    run.scheme = scheme;
    try {
      run.bound = max_middle_nodes(net.family(), scheme);
    } catch (const UnsupportedParameters&) {
    }
    std::optional<NetworkCode> code;
    try {
      code = solve(net, scheme);
    } catch (const SupplyExceeded& e) {
      run.status = "refused";
      run.message = e.what();
    } catch (const UnsupportedParameters& e) {
      run.status = "refused";
      run.message = e.what();
    }
    if (code) {
      run.report = verify_solution(net, *code, cfg.workers);
      bool ok = run.report->solved();
      if (ok && cfg.round_trips) {
        const auto lc = local_coding(net, *code);
        for (unsigned i = 0; i < cfg.round_trips; ++i) {
          const auto msg = random_message(code->field, code->width(), rng);
          const auto obs = simulate(net, *code, lc, msg);
          bool all = true;
          for (std::size_t p = 0; p < obs.size() && all; ++p) all = decode_receiver(net, *code, p, obs[p]) == msg;
          ++run.round_trips;
          run.round_trips_ok += all;
        }
        ok = run.round_trips_ok == run.round_trips;
      }
      for (const auto& name : cfg.transforms) {
        const Transformed tr = name == "normalize" ? normalize_min_cut(net) : remove_parallel_edges(net);
        TransformRun trun;
        trun.name = name;
        std::tie(trun.min_cut_before_min, trun.min_cut_before_max) = detail::cut_range(net);
        std::tie(trun.min_cut_after_min, trun.min_cut_after_max) = detail::cut_range(tr.network);
        trun.simple = tr.network.is_simple();
        trun.report = verify_solution(tr.network, map_code(*code, tr), cfg.workers);
        ok = ok && trun.report.solved();
        run.transforms.push_back(std::move(trun));
      }
      run.status = ok ? "solved" : "failed";
    }
    res.runs.push_back(std::move(run));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Reports

inline std::string scheme_label(const Scheme& s) {
  return s.is_scalar() ? "scalar(" + std::to_string(s.q) + ")" : "vector(" + std::to_string(s.q) + "," + std::to_string(s.t) + ")";
}

inline std::string family_label(const Family& f) {
  std::ostringstream os;
  os << f.name << "(h=" << f.h << ",r=" << f.r;
  if (f.name == "combination") os << ",s=" << f.s;
  if (f.ell) os << ",l=" << f.ell;
  if (f.extra_links) os << ",+" << f.extra_links;
  os << ")";
  return os.str();
}

namespace io {

inline json experiment_to_json(const ExperimentResult& r, bool with_timing = false) {
  json schemes = json::array();
  for (const auto& s : r.config.schemes) schemes.push_back(scheme_to_json(s));
  json runs = json::array();
  for (const auto& run : r.runs) {
    json j = {{"scheme", scheme_to_json(run.scheme)}, {"status", run.status}, {"message", run.message}};
    j["bound"] = run.bound ? big_to_json(*run.bound) : json(nullptr);
    if (run.report) {
      json v = verification_to_json(*run.report, with_timing);
      j["totals"] = v["totals"];
      if (with_timing) j["elapsed_ms"] = v["elapsed_ms"];
    }
    j["round_trips"] = {{"run", run.round_trips}, {"exact", run.round_trips_ok}};
    json trs = json::array();
    for (const auto& t : run.transforms) {
      trs.push_back({{"name", t.name},
                     {"min_cut_before", {t.min_cut_before_min, t.min_cut_before_max}},
                     {"min_cut_after", {t.min_cut_after_min, t.min_cut_after_max}},
                     {"simple", t.simple},
                     {"totals", verification_to_json(t.report)["totals"]}});
    }
    j["transforms"] = std::move(trs);
    runs.push_back(std::move(j));
  }
  return {{"name", r.config.name},
          {"family", family_to_json(r.config.family)},
          {"schemes", std::move(schemes)},
          {"expect_refusal", r.config.expect_refusal},
          {"seed", r.config.seed},
          {"sample_cap", r.config.sample_cap},
          {"exhaustive", r.config.exhaustive},
          {"network", {{"nodes", r.nodes}, {"edges", r.edges}, {"receivers", r.receivers},
                       {"receivers_total", r.receivers_total}, {"sampled", r.sampled}}},
          {"runs", std::move(runs)},
          {"ok", r.ok()}};
}

}  // namespace io

/// Aligned text table, one line per scheme.
inline std::string experiment_table(const std::vector<ExperimentResult>& results) {
  std::vector<std::vector<std::string>> rows{{"experiment", "family", "scheme", "status", "passed", "receivers",
                                              "round trips", "transforms"}};
  for (const auto& r : results) {
    for (const auto& run : r.runs) {
      std::string passed = run.report ? std::to_string(run.report->passed) : "-";
      std::string recs = std::to_string(r.receivers) + (r.sampled ? "/" + std::to_string(r.receivers_total) : "");
      std::string trips = std::to_string(run.round_trips_ok) + "/" + std::to_string(run.round_trips);
      std::string trs;
      for (const auto& t : run.transforms)
        trs += (trs.empty() ? "" : " ") + t.name + (t.report.solved() ? ":ok" : ":fail");
      rows.push_back({r.config.name, family_label(r.config.family), scheme_label(run.scheme), run.status, passed, recs,
                      trips, trs.empty() ? "-" : trs});
    }
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << std::left << std::setw(static_cast<int>(width[c])) << row[c] << (c + 1 < row.size() ? "  " : "\n");
  }
  return os.str();
}

inline std::string gap_table(const std::vector<GapReport>& gaps) {
  std::vector<std::vector<std::string>> rows{
      {"family", "q", "t", "r", "scalar q_s", "bound(q_s)", "prev", "bound(prev)", "ratio", "exponent", "leading", "residual"}};
  auto fmt = [](double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
  };
  for (const auto& g : gaps) {
    rows.push_back({family_label(g.family), std::to_string(g.q), std::to_string(g.t), std::to_string(g.r),
                    std::to_string(g.scalar_q), g.scalar_bound.str(), g.previous_q ? std::to_string(*g.previous_q) : "-",
                    g.previous_bound ? g.previous_bound->str() : "-", fmt(g.ratio), fmt(g.exponent),
                    g.leading_term ? fmt(*g.leading_term) : "-", g.residual ? fmt(*g.residual) : "-"});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      os << std::left << std::setw(static_cast<int>(width[c])) << row[c] << (c + 1 < row.size() ? "  " : "\n");
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets

struct GapRequest {
  Family family;
  std::uint64_t q;
  unsigned t;
  std::optional<std::uint64_t> r;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<ExperimentConfig> experiments;
  std::vector<GapRequest> gaps;
};

inline Family combination_family(unsigned h, unsigned r, unsigned s) { return {"combination", h, r, s, 0, 0}; }
inline Family star_family(unsigned ell, unsigned r) { return {"star", 2 * ell, r, 2, ell, 0}; }
inline Family plus_family(unsigned ell, unsigned r) { return {"plus", 2 * ell, r, 2, ell, 0}; }
inline Family tilde_family(unsigned r) { return {"tilde", 3, r, 3, 0, 0}; }

inline std::vector<Preset> presets() {
  auto exp = [](std::string name, Family f, std::vector<Scheme> s, bool refusal = false) {
    ExperimentConfig c;
    c.name = std::move(name);
    c.family = std::move(f);
    c.schemes = std::move(s);
    c.expect_refusal = refusal;
    return c;
  };
  std::vector<Preset> out;
  out.push_back({"vandermonde",
                 "Vandermonde blocks over D_t on N_{3,5,3} (q=2, t=2) against extended RS over F_4; the h=3, r=q^t+2 case",
                 {exp("n353", combination_family(3, 5, 3), {Scheme::vector(2, 2), Scheme::scalar(4)}),
                  exp("n343-extended", combination_family(3, 4, 3), {Scheme::vector(2, 1), Scheme::scalar(2)})},
                 {}});
  out.push_back({"grassmannian-star",
                 "Star network with l=2 over F_2: r=35 solves with all of G_2(4,2), r=36 is refused",
                 {exp("star-35", star_family(2, 35), {Scheme::scalar(2)}),
                  exp("star-36", star_family(2, 36), {Scheme::scalar(2)}, true)},
                 {}});
  out.push_back({"mrd-star",
                 "MRD blocks on the star network: q=2,t=1,r=16 and q=2,t=2 with the first 100 codewords",
                 {exp("star-16", star_family(2, 16), {Scheme::vector(2, 1)}),
                  exp("star-100", star_family(2, 100), {Scheme::vector(2, 2)})},
                 {}});
  out.push_back({"tilde",
                 "Tilde network: scalar F_4 reaches r=42 and stops; a triple-span code in G_2(6,2) solves r=43",
                 {exp("tilde-42-scalar", tilde_family(42), {Scheme::scalar(4)}),
                  exp("tilde-43-scalar4", tilde_family(43), {Scheme::scalar(4)}, true),
                  exp("tilde-43", tilde_family(43), {Scheme::vector(2, 2), Scheme::scalar(5)})},
                 {}});
  {
    auto c = exp("star-5-transforms", star_family(2, 5), {Scheme::vector(2, 1), Scheme::scalar(2)});
    c.transforms = {"normalize", "simple"};
    out.push_back({"transforms", "Min-cut normalisation and parallel-edge removal on the star network, codes mapped", {c}, {}});
  }
  {
    Family odd = star_family(2, 10);
    odd.h = 5;
    odd.extra_links = 1;
    Family odd_plus = plus_family(3, 12);
    odd_plus.h = 7;
    odd_plus.extra_links = 1;
    out.push_back({"generalized",
                   "Plus networks and the odd-h variants with an extra direct link",
                   {exp("plus-3-20", plus_family(3, 20), {Scheme::vector(2, 1), Scheme::scalar(2)}),
                    exp("star3-12", star_family(3, 12), {Scheme::vector(2, 1), Scheme::scalar(2)}),
                    exp("odd-star-10", odd, {Scheme::vector(2, 1), Scheme::scalar(2)}),
                    exp("odd-plus-12", odd_plus, {Scheme::vector(2, 1), Scheme::scalar(2)})},
                   {}});
  }
  out.push_back({"gap",
                 "Scalar vs vector field size: star l=2 at (q=2,t=2,r=4096) and (q=2,t=1,r=16), tilde at r=43",
                 {},
                 {{star_family(2, 0), 2, 2, std::nullopt}, {star_family(2, 0), 2, 1, 16}, {tilde_family(0), 2, 2, 43}}});
  return out;
}

inline const Preset& find_preset(const std::string& name) {
  static const auto all = presets();
  for (const auto& p : all)
    if (p.name == name) return p;
  throw std::invalid_argument("unknown preset '" + name + "'");
}

struct PresetResult {
  std::string name;
  std::vector<ExperimentResult> experiments;
  std::vector<GapReport> gaps;
  bool ok() const {
    for (const auto& e : experiments)
      if (!e.ok()) return false;
    for (const auto& g : gaps)
      if (!g.vector_verified) return false;
    return true;
  }
};

/// Runs a preset with the given sampling/seed/worker overrides.
inline PresetResult run_preset(const Preset& p, const GapOptions& opt, bool exhaustive) {
  PresetResult out;
  out.name = p.name;
  for (auto cfg : p.experiments) {
    cfg.seed = opt.seed;
    cfg.sample_cap = opt.sample_cap;
    cfg.workers = opt.workers;
    cfg.exhaustive = exhaustive;
    out.experiments.push_back(run_experiment(cfg));
  }
  GapOptions g = opt;
  g.exhaustive = exhaustive;
  for (const auto& req : p.gaps) out.gaps.push_back(gap_report(req.family, req.q, req.t, req.r, g));
  return out;
}

namespace io {

inline json preset_to_json(const Preset& p, const PresetResult& r, bool with_timing = false) {
  json ex = json::array(), gaps = json::array();
  for (const auto& e : r.experiments) ex.push_back(experiment_to_json(e, with_timing));
  for (const auto& g : r.gaps) gaps.push_back(gap_to_json(g));
  return {{"preset", p.name}, {"description", p.description}, {"experiments", std::move(ex)},
          {"gaps", std::move(gaps)}, {"ok", r.ok()}};
}

}  // namespace io

}  // namespace netgap
