// netgap: generate networks, solve and verify codes, simulate, and report
// scalar-vs-vector field-size gaps.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.

#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "netgap/netgap.hpp"

namespace {

using netgap::io::json;

struct Common {
  std::string output;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::uint64_t sample_cap = 20'000;
  bool exhaustive = false;
  bool timing = false;
};

void emit(const Common& c, const json& j, const std::string& table = {}) {
  if (c.output.empty()) {
    std::cout << j.dump(2) << '\n';
    if (!table.empty()) std::cerr << table;
  } else {
    netgap::io::write_file(c.output, j);
    if (!table.empty()) std::cout << table;
  }
}

void add_common(CLI::App* cmd, Common& c, bool sampling) {
  cmd->add_option("-o,--output", c.output, "Output JSON path (stdout when omitted)");
  cmd->add_option("--seed", c.seed, "Seed for all sampling and random messages");
  cmd->add_option("--workers", c.workers, "Verification threads")->envname("NETGAP_WORKERS")->check(CLI::PositiveNumber);
  if (sampling) {
    cmd->add_option("--sample-cap", c.sample_cap, "Receivers verified when the family has more")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--exhaustive", c.exhaustive, "Materialise and verify every receiver");
  }
  cmd->add_flag("--timing", c.timing, "Include wall-clock times in JSON output");
}

struct FamilyArgs {
  std::string family;
  unsigned h = 0, r = 0, s = 0, ell = 2, extra_links = 0, extra_messages = 0;
};

void add_family(CLI::App* cmd, FamilyArgs& f, bool need_r) {
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--family", f.family, "combination | star | plus | tilde")
      ->required()
      ->check(CLI::IsMember({"combination", "star", "plus", "tilde"}));
  cmd->add_option("--h", f.h, "Messages (combination)");
  auto* r = cmd->add_option("--r", f.r, "Middle nodes");
  if (need_r) r->required();
  cmd->add_option("--s", f.s, "Receiver fan-in (combination; defaults to h)");
  cmd->add_option("--ell", f.ell, "Block size l (star, plus)");
  cmd->add_option("--extra-links", f.extra_links, "Additional direct source links per receiver");
  cmd->add_option("--extra-messages", f.extra_messages, "Messages carried by the additional links");
}

netgap::Family to_family(const FamilyArgs& a) {
  netgap::Family f;
  f.name = a.family;
  f.r = a.r;
  if (a.family == "combination") {
    if (a.h == 0) throw std::invalid_argument("--h is required for the combination family");
    f.h = a.h;
    f.s = a.s ? a.s : a.h;
  } else if (a.family == "tilde") {
    f.h = 3;
    f.s = 3;
  } else {
    if (a.ell < 2) throw std::invalid_argument("--ell must be at least 2");
    f.ell = a.ell;
    f.h = 2 * a.ell;
    f.s = 2;
  }
  if (a.extra_messages > a.extra_links) throw std::invalid_argument("--extra-messages exceeds --extra-links");
  f.extra_links = a.extra_links;
  f.h += a.extra_messages;
  return f;
}

struct SchemeArgs {
  std::string scheme;
  std::uint64_t q = 2;
  unsigned t = 1;
};

void add_scheme(CLI::App* cmd, SchemeArgs& s) {
  cmd->add_option("--scheme", s.scheme, "scalar | vector")->required()->check(CLI::IsMember({"scalar", "vector"}));
  cmd->add_option("--q", s.q, "Field size (scalar) or prime alphabet (vector)");
  cmd->add_option("--t", s.t, "Vector dimension")->check(CLI::PositiveNumber);
}

netgap::Scheme to_scheme(const SchemeArgs& s) {
  if (!netgap::is_prime_power(s.q)) throw std::invalid_argument("--q must be a prime power");
  if (s.scheme == "scalar") return netgap::Scheme::scalar(s.q);
  if (netgap::Field::of_order(s.q).degree() != 1) throw std::invalid_argument("vector alphabet --q must be prime");
  return netgap::Scheme::vector(s.q, s.t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scalar and vector network coding on combination-network families"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");  // -h is taken by --h

  Common common;
  FamilyArgs fam;
  SchemeArgs sch;

  auto* gen = app.add_subcommand("gen", "Generate a network");
  add_family(gen, fam, true);
  add_common(gen, common, true);

  std::string net_path, code_path;
  auto* solve = app.add_subcommand("solve", "Solve a network under a scheme");
  add_scheme(solve, sch);
  solve->add_option("network", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
  add_common(solve, common, false);

  auto* verify = app.add_subcommand("verify", "Verify a code on a network");
  verify->add_option("network", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("code", code_path, "Code JSON")->required()->check(CLI::ExistingFile);
  add_common(verify, common, false);

  unsigned messages = 100;
  auto* simulate = app.add_subcommand("simulate", "Send random messages and decode at every receiver");
  simulate->add_option("network", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("code", code_path, "Code JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--messages", messages, "Number of random messages");
  add_common(simulate, common, false);

  std::uint64_t gap_q = 2;
  unsigned gap_t = 1;
  auto* gap = app.add_subcommand("gap", "Smallest scalar field against a verified vector solution");
  add_family(gap, fam, false);
  gap->add_option("--q", gap_q, "Prime vector alphabet");
  gap->add_option("--t", gap_t, "Vector dimension")->check(CLI::PositiveNumber);
  add_common(gap, common, true);

  unsigned n = 6, k = 2, min_span = 4;
  std::uint64_t search_q = 2, target = 43;
  auto* search = app.add_subcommand("search", "Greedy triple-span subspace code search");
  search->add_option("--n", n, "Ambient dimension");
  search->add_option("--k", k, "Codeword dimension");
  search->add_option("--q", search_q, "Prime field size");
  search->add_option("--min-span", min_span, "Required span of any three codewords");
  search->add_option("--target", target, "Stop after this many codewords");
  add_common(search, common, false);

  std::string preset_name;
  bool list = false;
  auto* preset = app.add_subcommand("preset", "Run a named experiment preset");
  preset->add_option("name", preset_name, "Preset name");
  preset->add_flag("--list", list, "List presets");
  add_common(preset, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const auto f = to_family(fam);
      const auto total = netgap::receiver_count(f, f.r);
      const auto sel = common.exhaustive ? netgap::ReceiverSelection::all()
                                         : netgap::ReceiverSelection::sample(total, common.sample_cap, common.seed);
      emit(common, netgap::io::network_to_json(netgap::build_family_network(f, f.r, sel)));
      return 0;
    }
    if (solve->parsed()) {
      const auto net = netgap::io::network_from_json(netgap::io::read_file(net_path));
      const auto code = netgap::solve(net, to_scheme(sch));
      emit(common, netgap::io::network_code_to_json(net, code));
      return 0;
    }
    if (verify->parsed()) {
      const auto net = netgap::io::network_from_json(netgap::io::read_file(net_path));
      const auto code = netgap::io::network_code_from_json(netgap::io::read_file(code_path));
      const auto rep = netgap::verify_solution(net, code, common.workers);
      std::string summary = "receivers " + std::to_string(rep.passed) + "/" + std::to_string(rep.records.size()) +
                            " at rank " + std::to_string(rep.required_rank) +
                            (rep.unrealizable_nodes.empty() ? "" : ", unrealisable nodes present") + "\n";
      emit(common, netgap::io::verification_to_json(rep, common.timing), summary);
      return rep.solved() ? 0 : 1;
    }
    if (simulate->parsed()) {
      const auto net = netgap::io::network_from_json(netgap::io::read_file(net_path));
      const auto code = netgap::io::network_code_from_json(netgap::io::read_file(code_path));
      netgap::check_code_shape(net, code);
      const auto lc = netgap::local_coding(net, code);
      std::mt19937_64 rng(common.seed);
      std::size_t exact = 0, decodes = 0;
      for (unsigned m = 0; m < messages; ++m) {
        const auto msg = netgap::random_message(code.field, code.width(), rng);
        const auto obs = netgap::simulate(net, code, lc, msg);
        for (std::size_t p = 0; p < obs.size(); ++p) {
          ++decodes;
          try {
            exact += netgap::decode_receiver(net, code, p, obs[p]) == msg;
          } catch (const std::domain_error&) {
          }
        }
      }
      const json j = {{"messages", messages}, {"seed", common.seed}, {"decodes", decodes}, {"exact", exact},
                      {"ok", exact == decodes}};
      emit(common, j, "exact decodes " + std::to_string(exact) + "/" + std::to_string(decodes) + "\n");
      return exact == decodes ? 0 : 1;
    }
    if (gap->parsed()) {
      const auto f = to_family(fam);
      netgap::GapOptions opt{common.sample_cap, common.seed, common.exhaustive, common.workers};
      const auto g = netgap::gap_report(f, gap_q, gap_t, fam.r ? std::optional<std::uint64_t>(fam.r) : std::nullopt, opt);
      emit(common, netgap::io::gap_to_json(g), netgap::gap_table({g}));
      return g.vector_verified ? 0 : 1;
    }
    if (search->parsed()) {
      const auto f = netgap::Field::of_order(search_q);
      if (f.degree() != 1) throw std::invalid_argument("--q must be prime");
      const auto res = netgap::triple_span_search(f, n, k, min_span, target);
      json j = netgap::io::subspace_code_to_json(res.code);
      j["target"] = res.target;
      j["target_reached"] = res.target_reached;
      emit(common, j,
           "codewords " + std::to_string(res.code.size()) + (res.target_reached ? " (target reached)\n" : " (target missed)\n"));
      return res.target_reached ? 0 : 1;
    }
    if (preset->parsed()) {
      if (list || preset_name.empty()) {
        for (const auto& p : netgap::presets()) std::cout << p.name << "  " << p.description << '\n';
        return preset_name.empty() && !list ? 2 : 0;
      }
      const auto& p = netgap::find_preset(preset_name);
      netgap::GapOptions opt{common.sample_cap, common.seed, false, common.workers};
      const auto res = netgap::run_preset(p, opt, common.exhaustive);
      std::string table;
      if (!res.experiments.empty()) table += netgap::experiment_table(res.experiments);
      if (!res.gaps.empty()) table += netgap::gap_table(res.gaps);
      emit(common, netgap::io::preset_to_json(p, res, common.timing), table);
      return res.ok() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
