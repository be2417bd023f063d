// Command-line front end: depth, Stanley depth decision, rho counts, theorem
// checks, Koszul witnesses, random scans and the worked-example suite.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "sqdepth/harness.hpp"
#include "sqdepth/homology.hpp"
#include "sqdepth/parse.hpp"
#include "sqdepth/stanley.hpp"
#include "sqdepth/theorems.hpp"

using namespace sqdepth;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kGuard = 3, kViolations = 4 };

struct Globals {
  std::string field = "fp:32003";
  int n = 0;
  bool json = false;
  bool force = false;
  std::uint64_t seed = 1;
};

struct Inputs {
  std::string i_text;
  std::string j_text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, where + ": " + e.what());
  }
}

// Resolves --I / --J, each inline text or @file.json holding either a
// monomial array or an object with "n", "I" and optionally "J".
struct Resolved {
  std::vector<Monomial> i;
  std::optional<std::vector<Monomial>> j;
  int n = 0;
};

Resolved resolve(const Inputs& in, int n_flag) {
  Resolved r;
  int n_file = 0;
  json i_json, j_json;
  bool i_is_json = false, j_is_json = false;
  const auto load = [&](const std::string& value, const char* key, json& out) {
    const auto doc = parse_json_text(read_file(value.substr(1)), value.substr(1));
    if (doc.is_object()) {
      n_file = std::max(n_file, doc.value("n", 0));
      if (!doc.contains(key))
        throw Error(ErrorCode::Parse, value.substr(1) + " has no \"" + key + "\" entry");
      out = doc.at(key);
      if (std::string(key) == "I" && doc.contains("J") && in.j_text.empty()) {
        j_json = doc.at("J");
        j_is_json = true;
      }
    } else {
      out = doc;
    }
  };
  if (in.i_text.empty()) throw Error(ErrorCode::InvalidArgument, "--I is required");
  if (in.i_text.front() == '@') {
    load(in.i_text, "I", i_json);
    i_is_json = true;
  }
  if (!in.j_text.empty() && in.j_text.front() == '@') {
    load(in.j_text, "J", j_json);
    j_is_json = true;
  }
  const int cap = kMaxVariables;
  if (i_is_json) r.i = monomials_from_json(i_json, cap);
  else r.i = parse_monomials(in.i_text);
  if (j_is_json) r.j = monomials_from_json(j_json, cap);
  else if (!in.j_text.empty()) r.j = parse_monomials(in.j_text);

  r.n = n_flag > 0 ? n_flag : n_file;
  if (r.n == 0) {
    r.n = max_variable(r.i);
    if (r.j) r.n = std::max(r.n, max_variable(*r.j));
  }
  return r;
}

MonomialIdeal ideal_of(const Inputs& in, int n_flag) {
  const auto r = resolve(in, n_flag);
  return minimalize(r.i, r.n);
}

FactorPair pair_of(const Inputs& in, int n_flag) {
  const auto r = resolve(in, n_flag);
  auto i = minimalize(r.i, r.n);
  auto j = r.j ? minimalize(*r.j, r.n) : MonomialIdeal(r.n);
  return FactorPair(std::move(i), std::move(j));
}

std::string mask_text(Mask a) { return Monomial(a).to_string(); }

int cmd_depth(const Globals& g, const Inputs& in, const std::string& of) {
  const auto field = FieldSpec::parse(g.field);
  EngineOptions opts;
  opts.force = g.force;
  std::string kind = of;
  if (kind.empty()) kind = in.j_text.empty() ? "ideal" : "factor";
  DepthReport rep;
  if (kind == "factor") {
    rep = depth_factor(pair_of(in, g.n), field, opts);
  } else {
    const auto ideal = ideal_of(in, g.n);
    rep = kind == "ideal" ? depth_ideal(ideal, field, opts) : depth_quotient(ideal, field, opts);
  }
  if (g.json) {
    std::cout << json{{"module", kind},
                      {"pd", rep.pd},
                      {"depth", rep.depth},
                      {"witness",
                       {{"i", rep.witness_i},
                        {"a", to_json(Monomial(rep.witness_a))},
                        {"dim", rep.witness_dim}}},
                      {"field", rep.field.to_string()}}
                     .dump()
              << '\n';
  } else {
    std::cout << "depth " << rep.depth << '\n'
              << "pd " << rep.pd << '\n'
              << "witness H_" << rep.witness_i << " at " << mask_text(rep.witness_a)
              << " (dim " << rep.witness_dim << ")\n"
              << "field " << rep.field.to_string() << '\n';
  }
  return kOk;
}

int cmd_sdepth_min(const Globals& g, const Inputs& in, bool brute, std::size_t limit) {
  const auto pair = pair_of(in, g.n);
  const auto field = FieldSpec::parse(g.field);
  const auto decision = sdepth_equals_indeg(pair);
  const auto pipeline = stanley_min_pipeline(pair, field);
  json out = {{"d", decision.d},
              {"sdepth_is_d", decision.answer},
              {"certificate", to_json(decision.certificate)},
              {"depth", pipeline.depth.depth},
              {"conjecture_verified", pipeline.conjecture_verified}};
  if (decision.witness_ideal) out["witness_ideal"] = ideal_to_json(*decision.witness_ideal)["I"];
  if (brute) out["brute_force_sdepth"] = brute_force_sdepth(pair, limit);
  if (g.json) {
    std::cout << out.dump() << '\n';
    return kOk;
  }
  std::cout << "d " << decision.d << '\n'
            << "sdepth = d: " << (decision.answer ? "yes" : "no") << '\n';
  if (decision.answer) {
    std::cout << "Hall violator A: ";
    for (Monomial m : decision.certificate.A) std::cout << m.to_string() << ' ';
    std::cout << "\nneighbors: ";
    for (Monomial m : decision.certificate.gamma) std::cout << m.to_string() << ' ';
    std::cout << "\nwitness ideal: " << decision.witness_ideal->to_string() << '\n';
  } else {
    std::cout << "complete matching:";
    for (const auto& [f, b] : decision.certificate.matching)
      std::cout << ' ' << f.to_string() << "->" << b.to_string();
    std::cout << '\n';
  }
  std::cout << "depth " << pipeline.depth.depth << '\n';
  if (brute) std::cout << "brute-force sdepth " << out["brute_force_sdepth"] << '\n';
  return kOk;
}

int cmd_rho(const Globals& g, const Inputs& in, int d) {
  std::size_t value;
  if (in.j_text.empty()) {
    value = rho(ideal_of(in, g.n), d);
  } else {
    value = factor_monomials(pair_of(in, g.n), d).size();
  }
  if (g.json) std::cout << json{{"d", d}, {"rho", value}}.dump() << '\n';
  else std::cout << value << '\n';
  return kOk;
}

int cmd_check(const Globals& g, const Inputs& in) {
  const auto pair = pair_of(in, g.n);
  auto reports = check_rules(pair);
  if (in.j_text.empty()) {
    const auto& ideal = pair.I();
    try {
      const auto c = check_theorem_main1(ideal);
      reports.push_back({"theorem_main1",
                         c.applies,
                         {{"d", c.d},
                          {"r", c.r},
                          {"rho_d_U", c.rho_d_U},
                          {"rho_d_UcapV", c.rho_d_UcapV}}});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoXnMultiples && e.code() != ErrorCode::InvalidArgument) throw;
      reports.push_back({"theorem_main1", false, {{"reason", e.what()}}});
    }
    try {
      const auto c = check_corollary_str(ideal);
      reports.push_back(
          {"corollary_str", c.applies, {{"d", c.d}, {"mu", c.mu}, {"rho_next", c.rho_next}}});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotEquigenerated && e.code() != ErrorCode::Principal) throw;
      reports.push_back({"corollary_str", false, {{"reason", e.what()}}});
    }
  }
  if (g.json) {
    json out = json::array();
    for (const auto& r : reports) out.push_back(to_json(r));
    std::cout << out.dump() << '\n';
  } else {
    for (const auto& r : reports) {
      std::cout << r.rule << " applies=" << (r.applies ? "true" : "false");
      for (const auto& [key, value] : r.data.items())
        std::cout << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
      std::cout << '\n';
    }
  }
  return kOk;
}

int cmd_witness(const Globals& g, const Inputs& in) {
  const auto w = koszul_witness(pair_of(in, g.n), FieldSpec::parse(g.field));
  if (g.json) {
    std::cout << to_json(w).dump() << '\n';
    return kOk;
  }
  std::cout << "z =";
  const Mask all = low_bits(w.n);
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    if (w.y[i] == "0") continue;
    std::cout << " + (" << w.y[i] << ") " << w.generators[i].to_string() << " e_{"
              << Monomial(all & ~w.generators[i].bits()).to_string() << '}';
  }
  std::cout << "\ncycle condition " << (w.cycle_condition ? "holds" : "FAILS") << '\n'
            << "boundary " << (w.boundary_vanishes ? "vanishes" : "DOES NOT VANISH") << '\n'
            << "no boundaries in degree n-d: " << (w.image_empty ? "yes" : "no") << '\n';
  return w.valid() ? kOk : kViolations;
}

int cmd_scan(const Globals& g, InstanceParams params, const std::string& rule,
             const std::string& out_path, bool timing) {
  params.seed = g.seed;
  params.force = g.force;
  if (g.n > 0) params.n = g.n;
  std::vector<ScanRule> rules;
  if (rule == "all") rules = all_rules();
  else rules.push_back(parse_rule(rule));

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  bool pass = true;
  for (ScanRule r : rules) {
    const auto report = scan(r, params);
    report.write_jsonl(out, timing);
    if (!out_path.empty()) std::cerr << report.summary().dump() << '\n';
    pass = pass && report.pass();
  }
  return pass ? kOk : kViolations;
}

int cmd_examples(const Globals& g) {
  const auto report = verify_paper_examples();
  if (g.json) {
    report.write_jsonl(std::cout, false);
  } else {
    for (const auto& rec : report.records)
      std::cout << (rec.violation ? "FAIL " : "ok   ") << rec.instance["name"].get<std::string>()
                << "  expected " << rec.results["expected"].dump() << ", got "
                << rec.results["actual"].dump() << '\n';
    std::cout << (report.pass() ? "all examples pass" : "some examples FAIL") << '\n';
  }
  return report.pass() ? kOk : kViolations;
}

int cmd_replay(const Globals& g, const std::string& path) {
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  }
  std::istream& in = path == "-" ? std::cin : file;
  std::string line;
  bool reproduced = false;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = parse_json_text(line, "record");
    if (j.contains("summary")) continue;
    const auto rec = replay(j);
    ++count;
    reproduced = reproduced || rec.violation.has_value();
    if (g.json) {
      std::cout << rec.to_json(false).dump() << '\n';
    } else {
      std::cout << rec.rule << " #" << rec.index << ": "
                << (rec.violation ? "violation: " + *rec.violation
                                  : std::string(rec.applicable ? "holds" : "not applicable"))
                << '\n';
    }
  }
  if (!g.json) std::cerr << count << " record(s) replayed\n";
  return reproduced ? kViolations : kOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse:
      return kParse;
    case ErrorCode::GuardExceeded:
    case ErrorCode::TooLarge:
      return kGuard;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth and Stanley depth of square-free monomial factor modules"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--field", g.field, "q or fp:<prime>")->capture_default_str();
  app.add_option("--n", g.n, "number of variables (default: largest index used)");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--force", g.force, "lift the variable-count guards");
  app.add_option("--seed", g.seed, "scan seed")->capture_default_str();

  Inputs in;
  const auto add_inputs = [&](CLI::App* sub, bool need_j) {
    sub->add_option("--I", in.i_text, "generators of I, e.g. \"x1*x3, x2*x4\", or @file.json")
        ->required();
    auto* j = sub->add_option("--J", in.j_text, "generators of J, or @file.json");
    if (need_j) j->description("generators of J (default 0), or @file.json");
  };

  auto* depth_cmd = app.add_subcommand("depth", "depth of I/J, I or S/I");
  add_inputs(depth_cmd, true);
  std::string of;
  depth_cmd->add_option("--of", of, "factor | ideal | quotient (default: factor with --J, else ideal)")
      ->check(CLI::IsMember({"factor", "ideal", "quotient"}));

  auto* sdepth_cmd = app.add_subcommand("sdepth-min", "decide sdepth I/J = indeg(I)");
  add_inputs(sdepth_cmd, true);
  bool brute = false;
  std::size_t poset_limit = kDefaultPosetLimit;
  sdepth_cmd->add_flag("--brute", brute, "also run the interval-partition search");
  sdepth_cmd->add_option("--poset-limit", poset_limit, "poset size cap for --brute")
      ->capture_default_str();

  auto* rho_cmd = app.add_subcommand("rho", "count degree-d square-free monomials of I (or I \\ J)");
  add_inputs(rho_cmd, true);
  int rho_d = 0;
  rho_cmd->add_option("--d", rho_d, "degree")->required();

  auto* check_cmd = app.add_subcommand("check", "evaluate every depth criterion");
  add_inputs(check_cmd, true);

  auto* witness_cmd = app.add_subcommand("witness", "Koszul cycle certifying depth I/J = d");
  add_inputs(witness_cmd, true);

  auto* scan_cmd = app.add_subcommand("scan", "random property scan, JSONL output");
  InstanceParams params;
  std::string rule = "theorem_main", out_path;
  bool timing = false;
  scan_cmd->add_option("--rule", rule, "rule name or all")->capture_default_str();
  scan_cmd->add_option("--trials", params.count, "instances")->capture_default_str();
  scan_cmd->add_option("--d", params.d, "generator degree")->capture_default_str();
  scan_cmd->add_option("--min-gens", params.min_gens)->capture_default_str();
  scan_cmd->add_option("--max-gens", params.max_gens)->capture_default_str();
  scan_cmd->add_option("--density", params.density, "J density in [0,1]")->capture_default_str();
  scan_cmd->add_flag("--stratified", params.stratified, "force the rule's hypothesis");
  scan_cmd->add_option("--poset-limit", params.poset_limit)->capture_default_str();
  scan_cmd->add_option("--out", out_path, "write the report here instead of stdout");
  scan_cmd->add_flag("--timing", timing, "include elapsed_ms in records");

  app.add_subcommand("examples", "run the worked-example regression table");

  auto* replay_cmd = app.add_subcommand("replay", "re-evaluate records of a scan report");
  std::string replay_path = "-";
  replay_cmd->add_option("file", replay_path, "JSONL report, - for stdin")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (depth_cmd->parsed()) return cmd_depth(g, in, of);
    if (sdepth_cmd->parsed()) return cmd_sdepth_min(g, in, brute, poset_limit);
    if (rho_cmd->parsed()) return cmd_rho(g, in, rho_d);
    if (check_cmd->parsed()) return cmd_check(g, in);
    if (witness_cmd->parsed()) return cmd_witness(g, in);
    if (scan_cmd->parsed()) return cmd_scan(g, params, rule, out_path, timing);
    if (replay_cmd->parsed()) return cmd_replay(g, replay_path);
    return cmd_examples(g);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
