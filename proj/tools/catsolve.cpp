// catsolve: solve | series | analyze a DDE system given in the DSL.

#include "catsolve/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace catsolve;
using nlohmann::json;

namespace {

enum Exit { ok = 0, input_error = 1, budget = 2, non_generic = 3 };

struct RunConfig {
  std::string input;
  std::size_t order = 0;
  std::string target = "z0";
  std::string deform = "auto";
  std::string epsilon = "1";
  std::string json_out;
  bool timings = false;
  bool skip_genericity = false;
  ModularOptions modular;
};

DDESystem load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dde(ss.str());
}

BigRat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRat(BigInt(s));
    return BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::runtime_error("not a rational number: " + s);
  }
}

void emit_json(const RunConfig& cfg, const json& j) {
  if (cfg.json_out.empty()) return;
  std::string text = j.dump(2) + "\n";
  if (cfg.json_out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.json_out);
  if (!out) throw std::runtime_error("cannot write " + cfg.json_out);
  out << text;
}

int cmd_solve(const RunConfig& cfg) {
  DDESystem sys = load(cfg.input);
  SolveOptions opts;
  opts.order = cfg.order;
  opts.target = cfg.target;
  opts.deform = cfg.deform == "off" ? DeformMode::off : cfg.deform == "on" ? DeformMode::on : DeformMode::automatic;
  opts.epsilon = parse_rational(cfg.epsilon);
  opts.modular = cfg.modular;
  SolveReport rep = solve(sys, opts);
  if (cfg.json_out != "-") std::cout << to_text(rep);
  emit_json(cfg, to_json(sys, rep, cfg.timings));
  switch (rep.status) {
    case SolveStatus::certified: return ok;
    case SolveStatus::budget_exceeded: return budget;
    case SolveStatus::non_generic: return non_generic;
  }
  return ok;
}

int cmd_series(const RunConfig& cfg) {
  DDESystem sys = bind_params(load(cfg.input), true);
  std::size_t N = cfg.order ? cfg.order : 10;
  auto F = solve_series(sys, N);
  json j;
  j["schema"] = 1;
  j["order"] = N;
  bool quiet = cfg.json_out == "-";
  for (std::size_t i = 0; i < F.size(); ++i) {
    std::string s = F[i].to_string(sys.catalytic);
    if (!quiet) std::cout << sys.unknowns[i] << " = " << s << "\n";
    j["series"][sys.unknowns[i]] = s;
    for (unsigned l = 0; l < sys.k; ++l) {
      std::string name = "z" + std::to_string(sys.k * i + l);
      std::string v = specialize(F[i], sys.a, l).to_string();
      if (!quiet) std::cout << name << " = " << v << "\n";
      j["specializations"][name] = v;
    }
  }
  emit_json(cfg, j);
  return ok;
}

int cmd_analyze(const RunConfig& cfg) {
  DDESystem sys = bind_params(load(cfg.input), true);
  bool deformed = cfg.deform == "on";
  std::optional<DeformationParams> params;
  if (deformed) {
    auto [d, p] = deform(sys, parse_rational(cfg.epsilon));
    sys = d;
    params = p;
  }
  NumeratorSystem ns = normalize(sys, deformed ? NormalizeMode::deformation_ready : NormalizeMode::minimal);
  KernelSystem ks = build_kernel_system(ns);
  std::size_t N = cfg.order ? cfg.order : 12;
  PuiseuxReport pr = analyze_det_roots(sys, ns, ks.det, N);

  json j;
  j["schema"] = 1;
  j["system"] = print_dde(sys);
  json E = json::array();
  for (const auto& e : ns.E) E.push_back(e.to_string());
  j["E"] = E;
  j["m"] = ns.m;
  j["M"] = ns.M;
  j["Det"] = ks.det.to_string();
  j["P"] = ks.p.to_string();
  j["puiseux"] = to_json(pr);
  j["deformation"] = params ? to_json(*params) : json(nullptr);
  std::optional<GenericityResult> gen;
  if (!cfg.skip_genericity) {
    gen = genericity_check(duplicate(ks), cfg.modular);
    j["genericity"] = to_json(*gen);
  }

  if (cfg.json_out != "-") {
    std::cout << "system:\n" << print_dde(sys);
    for (std::size_t i = 0; i < ns.E.size(); ++i)
      std::cout << "E" << i + 1 << " (m = " << ns.m[i] << "): " << ns.E[i].to_string() << "\n";
    std::cout << "M: " << ns.M << "\nDet: " << ks.det.to_string() << "\nP: " << ks.p.to_string() << "\n";
    std::cout << to_text(pr);
    if (params) {
      std::cout << "deformation: alpha " << params->alpha << ", beta " << params->beta << ", gamma";
      for (const auto& row : params->gamma) {
        std::cout << " [";
        for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? ", " : "") << row[c];
        std::cout << "]";
      }
      std::cout << "\n";
    }
    if (gen) std::cout << "genericity: " << to_string(gen->dimension) << "\n";
  }
  emit_json(cfg, j);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catsolve: algebraic solutions of discrete differential equations"};
  app.require_subcommand(1);
  RunConfig cfg;
  GbBudget& gb = cfg.modular.gb;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", cfg.input, "DSL input file")->required();
    sub->add_option("--order,-N", cfg.order, "series truncation order")->check(CLI::Range(4, 100000));
    sub->add_option("--json", cfg.json_out, "write a JSON report to this path ('-' for stdout)");
  };
  auto kernel_opts = [&](CLI::App* sub) {
    sub->add_option("--deform", cfg.deform, "deformation mode")->check(CLI::IsMember({"off", "on", "auto"}));
    sub->add_option("--epsilon", cfg.epsilon, "deformation parameter (rational)");
    sub->add_option("--budget-pairs", gb.max_pairs, "critical pairs per Groebner basis")->check(CLI::PositiveNumber);
    sub->add_option("--budget-degree", gb.max_degree, "largest S-polynomial degree")->check(CLI::PositiveNumber);
    sub->add_option("--budget-seconds", gb.max_seconds, "seconds per Groebner basis")->check(CLI::PositiveNumber);
    sub->add_option("--budget-total", cfg.modular.max_seconds, "seconds for the eliminant")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.modular.seed, "seed for the random specializations");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "compute an eliminant and a certified annihilating polynomial");
  common(solve_cmd);
  kernel_opts(solve_cmd);
  solve_cmd->add_option("--target", cfg.target, "z-variable to eliminate to");
  solve_cmd->add_flag("--timings", cfg.timings, "include wall-clock timings in the JSON report");

  CLI::App* series_cmd = app.add_subcommand("series", "print the series solution and its specializations");
  common(series_cmd);

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "print Det, P, the Puiseux report and the genericity test");
  common(analyze_cmd);
  kernel_opts(analyze_cmd);
  analyze_cmd->add_flag("--skip-genericity", cfg.skip_genericity, "do not run the genericity test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : input_error;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(cfg);
    if (series_cmd->parsed()) return cmd_series(cfg);
    return cmd_analyze(cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded (" << e.resource() << "): " << e.what() << "\n";
    return budget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input_error;
  }
}
