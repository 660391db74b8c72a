#include "neq/cli.hpp"

#include "neq/decide.hpp"
#include "neq/encoders.hpp"
#include "neq/magnus.hpp"
#include "neq/parser.hpp"
#include "neq/search.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace neq {

namespace {

using nlohmann::json;

/// Unreadable or malformed input; maps to exit code 65.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MalcevPresentation load_group(const std::string &spec) {
  if (spec == "heisenberg") return heisenberg();
  return parse_presentation(read_file(spec));
}

struct CommonOptions {
  std::string format = "text";
  bool timing = false;
};

struct ConfigOptions {
  std::optional<std::int64_t> search_bound, modulus_limit, time_budget;
  std::optional<std::uint64_t> branch_budget, residue_budget;

  void add(CLI::App *app) {
    app->add_option("--search-bound", search_bound, "box search radius")->check(CLI::PositiveNumber);
    app->add_option("--modulus-limit", modulus_limit, "largest modulus tried for obstructions")
        ->check(CLI::PositiveNumber);
    app->add_option("--branch-budget", branch_budget, "maximum torsion cases")->check(CLI::PositiveNumber);
    app->add_option("--residue-budget", residue_budget, "maximum residue vectors / search points")
        ->check(CLI::PositiveNumber);
    app->add_option("--time-budget", time_budget, "wall-clock budget in milliseconds")->check(CLI::PositiveNumber);
  }

  SolverConfig resolve() const {
    SolverConfig cfg = SolverConfig::from_environment(SolverConfig{});
    if (search_bound) cfg.search_bound = *search_bound;
    if (modulus_limit) cfg.modulus_limit = *modulus_limit;
    if (branch_budget) cfg.branch_budget = *branch_budget;
    if (residue_budget) cfg.residue_budget = *residue_budget;
    if (time_budget) cfg.time_budget_ms = *time_budget;
    cfg.validate();
    return cfg;
  }
};

Equation load_equation(const std::optional<std::string> &text, const std::optional<std::string> &file,
                       const Alphabet &alphabet) {
  if (text) return parse_equation(*text, alphabet);
  EquationSystem sys = parse_system(read_file(*file), alphabet);
  if (sys.equations.size() != 1) throw InputError("equation file must contain exactly one equation");
  return sys.equations[0];
}

json certificate_json(const Certificate &c) {
  json j;
  j["kind"] = certificate_kind_name(c.kind);
  switch (c.kind) {
  case CertificateKind::GcdFailure: {
    json m = json::array();
    for (const auto &v : c.multipliers) m.push_back(v.str());
    j["multipliers"] = m;
    j["divisor"] = c.divisor.str();
    break;
  }
  case CertificateKind::EmptyCongruence:
  case CertificateKind::ModularObstruction: j["modulus"] = c.modulus; break;
  case CertificateKind::DefiniteExhaustion:
    j["bound"] = c.bound.str();
    j["sign"] = c.sign;
    j["eigenvalue_lower_bound"] = c.mu_num.str() + "/" + c.mu_den.str();
    break;
  case CertificateKind::Discriminant: j["discriminant"] = c.discriminant.str(); break;
  case CertificateKind::NonzeroConstant: break;
  case CertificateKind::AllBranchesUnsat: {
    json kids = json::array();
    for (const auto &k : c.children) kids.push_back(certificate_json(k));
    j["children"] = kids;
    break;
  }
  }
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

void certificate_text(const Certificate &c, std::ostream &out, int depth) {
  out << std::string(2 * depth, ' ') << describe_certificate(c) << "\n";
  for (const auto &k : c.children) certificate_text(k, out, depth + 1);
}

std::string assignment_line(const std::string &name, const MalcevCoord &g, const MalcevPresentation &p) {
  return fmt::format("{} = {}", name, format_word(normal_form_word(g, p)));
}

int verdict_exit(Verdict v) {
  return v == Verdict::Sat ? exit_code::sat : v == Verdict::Unsat ? exit_code::unsat : exit_code::unknown;
}

int cmd_decide(const MalcevPresentation &p, const Equation &eq, const SolverConfig &cfg, const CommonOptions &o,
               std::ostream &out) {
  auto start = std::chrono::steady_clock::now();
  DecisionResult r = decide_equation(eq, p, cfg);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (o.format == "json") {
    json j;
    j["equation"] = format_equation(eq);
    j["verdict"] = verdict_name(r.verdict);
    if (r.verdict == Verdict::Sat) {
      json w = json::object();
      for (const auto &[name, g] : r.witness) w[name] = format_word(normal_form_word(g, p));
      j["witness"] = w;
    }
    if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
    if (r.verdict == Verdict::Unknown) {
      j["search_bound"] = r.search_bound;
      j["reason"] = r.reason;
    }
    j["stats"] = {{"branches", r.stats.branches}, {"classes", r.stats.classes}, {"points", r.stats.points}};
    if (o.timing) j["time_ms"] = ms;
    out << j.dump(2) << "\n";
  } else {
    out << "equation: " << format_equation(eq) << "\n";
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    if (r.verdict == Verdict::Sat) {
      out << "witness:\n";
      for (const auto &[name, g] : r.witness) out << "  " << assignment_line(name, g, p) << "\n";
    }
    if (r.certificate) {
      out << "certificate:\n";
      certificate_text(*r.certificate, out, 1);
    }
    if (r.verdict == Verdict::Unknown) out << fmt::format("search bound: {}\nreason: {}\n", r.search_bound, r.reason);
    out << fmt::format("branches: {}\nclasses: {}\npoints: {}\n", r.stats.branches, r.stats.classes, r.stats.points);
    if (o.timing) out << fmt::format("time: {} ms\n", ms);
  }
  return verdict_exit(r.verdict);
}

int cmd_reduce(const MalcevPresentation &p, const Equation &eq, const SolverConfig &cfg, const CommonOptions &o,
               std::ostream &out) {
  std::vector<ConstraintBranch> branches = reduce_equation(eq, p, cfg.branch_budget);
  auto torsion_text = [&](const ConstraintBranch &b) {
    std::string s;
    for (std::size_t j = 0; j < b.variables.size(); ++j) {
      if (b.torsion[j].B.empty() && b.torsion[j].D.empty()) continue;
      std::string parts;
      for (std::size_t i = 0; i < b.torsion[j].B.size(); ++i)
        parts += fmt::format("{}B{}={}", parts.empty() ? "" : " ", i + 1, b.torsion[j].B[i]);
      for (std::size_t t = 0; t < b.torsion[j].D.size(); ++t)
        parts += fmt::format("{}D{}={}", parts.empty() ? "" : " ", t + 1, b.torsion[j].D[t]);
      s += fmt::format("{}{}: {}", s.empty() ? "" : "; ", b.variables[j], parts);
    }
    return s;
  };
  if (o.format == "json") {
    json arr = json::array();
    for (const auto &b : branches) {
      json j;
      j["unknowns"] = b.unknowns;
      json tor = json::object();
      for (std::size_t v = 0; v < b.variables.size(); ++v)
        tor[b.variables[v]] = {{"B", std::vector<std::int64_t>(b.torsion[v].B.begin(), b.torsion[v].B.end())},
                               {"D", std::vector<std::int64_t>(b.torsion[v].D.begin(), b.torsion[v].D.end())}};
      j["torsion"] = tor;
      json lin = json::array();
      for (const auto &row : b.linear) lin.push_back(row.to_string(b.unknowns));
      j["linear"] = lin;
      json con = json::array();
      for (const auto &c : b.congruences) con.push_back({{"poly", c.poly.to_string(b.unknowns)}, {"modulus", c.modulus}});
      j["congruences"] = con;
      j["quadratic"] = b.quadratic.to_string(b.unknowns);
      arr.push_back(j);
    }
    out << json{{"equation", format_equation(eq)}, {"branches", arr}}.dump(2) << "\n";
  } else {
    out << "equation: " << format_equation(eq) << "\n";
    out << "branches: " << branches.size() << "\n";
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto &b = branches[i];
      out << fmt::format("branch {}:\n", i + 1);
      std::string tor = torsion_text(b);
      if (!tor.empty()) out << "  torsion: " << tor << "\n";
      for (const auto &row : b.linear) out << "  linear: " << row.to_string(b.unknowns) << " = 0\n";
      for (const auto &c : b.congruences)
        out << fmt::format("  congruence: {} = 0 (mod {})\n", c.poly.to_string(b.unknowns), c.modulus);
      out << "  quadratic: " << b.quadratic.to_string(b.unknowns) << " = 0\n";
    }
  }
  return 0;
}

std::string system_text(const EquationSystem &s) {
  std::string out = "vars: ";
  for (std::size_t i = 0; i < s.variables.size(); ++i) out += (i ? ", " : "") + s.variables[i];
  out += "\n";
  for (const auto &eq : s.equations) out += format_equation(eq) + "\n";
  return out;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Equations in two-step nilpotent groups with rank-one commutator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "neq 1.0");

  CommonOptions common;
  ConfigOptions config;
  std::string group;
  std::optional<std::string> eq_text, eq_file;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_equation = [&](CLI::App *cmd) {
    cmd->add_option("--group", group, "presentation file, or 'heisenberg'")->required();
    auto *e = cmd->add_option("--eq", eq_text, "equation in the word DSL");
    auto *f = cmd->add_option("--eq-file", eq_file, "file holding one equation");
    e->excludes(f);
    f->excludes(e);
    cmd->callback([cmd, e, f]() {
      if (e->count() + f->count() == 0) throw CLI::RequiredError("--eq or --eq-file");
      (void)cmd;
    });
  };

  auto *decide = app.add_subcommand("decide", "decide solvability of one equation");
  add_equation(decide);
  add_common(decide);
  config.add(decide);
  decide->add_flag("--timing", common.timing, "report elapsed time");

  auto *reduce = app.add_subcommand("reduce", "show the integer constraint branches of one equation");
  add_equation(reduce);
  add_common(reduce);
  config.add(reduce);

  std::string target = "two-step", system_file;
  int step = 0, rank = 2;
  auto *encode = app.add_subcommand("encode", "encode a quadratic Diophantine system as group equations");
  encode->add_option("--target", target, "two-step or higher-step")
      ->check(CLI::IsMember({"two-step", "higher-step"}));
  encode->add_option("--step", step, "nilpotency step (higher-step target)");
  encode->add_option("--rank", rank, "rank of the free nilpotent group")->check(CLI::Range(2, 64));
  encode->add_option("--system", system_file, "Diophantine system file")->required();

  std::string assignment_file, verify_group;
  auto *verify = app.add_subcommand("verify", "check an assignment against a system of equations");
  verify->add_option("--system", system_file, "equation system file")->required();
  verify->add_option("--assignment", assignment_file, "assignment file (name = word per line)")->required();
  auto *vg = verify->add_option("--group", verify_group, "Mal'cev presentation file, or 'heisenberg'");
  auto *vs = verify->add_option("--step", step, "free nilpotent step");
  verify->add_option("--rank", rank, "free nilpotent rank")->check(CLI::Range(2, 64));
  vg->excludes(vs);
  vs->excludes(vg);
  add_common(verify);

  std::int64_t bound = 3;
  std::uint64_t search_budget = 50'000'000;
  std::optional<std::string> search_system;
  auto *search = app.add_subcommand("oracle-search", "exhaustive search for a solution in a coordinate box");
  search->add_option("--group", group, "presentation file, or 'heisenberg'")->required();
  auto *se = search->add_option("--eq", eq_text, "equation in the word DSL");
  auto *ss = search->add_option("--system", search_system, "equation system file");
  se->excludes(ss);
  ss->excludes(se);
  search->add_option("--bound", bound, "coordinate bound")->check(CLI::NonNegativeNumber);
  search->add_option("--budget", search_budget, "maximum assignments tried")->check(CLI::PositiveNumber);
  add_common(search);

  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return exit_code::usage;
  }

  try {
    if (decide->parsed() || reduce->parsed()) {
      SolverConfig cfg;
      try {
        cfg = config.resolve();
      } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
      }
      MalcevPresentation p = load_group(group);
      Equation eq = load_equation(eq_text, eq_file, p.alphabet());
      if (decide->parsed()) return cmd_decide(p, eq, cfg, common, out);
      return cmd_reduce(p, eq, cfg, common, out);
    }
    if (encode->parsed()) {
      DiophSystem s = parse_dioph_system(read_file(system_file));
      EquationSystem enc;
      if (target == "two-step") {
        if (step != 0 && step != 2) {
          err << "error: the two-step target needs --step 2 (or no --step)\n";
          return exit_code::usage;
        }
        enc = encode_two_step(s, rank);
      } else {
        if (step < 3) {
          err << "error: the higher-step target needs --step >= 3\n";
          return exit_code::usage;
        }
        enc = encode_higher_step(s, FreeNilpotentSpec{step, rank});
      }
      out << system_text(enc);
      return 0;
    }
    if (verify->parsed()) {
      const bool magnus = verify_group.empty();
      if (magnus && step < 1) {
        err << "error: verify needs --group or --step/--rank\n";
        return exit_code::usage;
      }
      std::optional<MalcevPresentation> p;
      Alphabet alphabet{rank, 0, 0, rank >= 2};
      if (!magnus) {
        p = load_group(verify_group);
        alphabet = p->alphabet();
      }
      EquationSystem sys = parse_system(read_file(system_file), alphabet);
      std::map<std::string, Word> values = parse_assignment(read_file(assignment_file), alphabet);
      std::vector<bool> truth;
      if (magnus) {
        FreeNilpotentSpec spec{step, rank};
        spec.validate();
        MagnusAssignment a = magnus_assignment(values, spec);
        for (const auto &eq : sys.equations) truth.push_back(magnus_holds(eq, a, spec));
      } else {
        Assignment a;
        for (const auto &[name, w] : values) a[name] = evaluate_word(w, *p);
        for (const auto &eq : sys.equations) truth.push_back(is_identity(evaluate_word(normalized(eq), a, *p)));
      }
      const bool all = std::all_of(truth.begin(), truth.end(), [](bool b) { return b; });
      if (common.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < truth.size(); ++i)
          arr.push_back({{"equation", format_equation(sys.equations[i])}, {"holds", static_cast<bool>(truth[i])}});
        out << json{{"equations", arr}, {"all_hold", all}}.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < truth.size(); ++i)
          out << (truth[i] ? "holds: " : "fails: ") << format_equation(sys.equations[i]) << "\n";
        out << (all ? "all equations hold" : "some equations fail") << "\n";
      }
      return all ? 0 : 1;
    }
    if (search->parsed()) {
      MalcevPresentation p = load_group(group);
      EquationSystem sys;
      if (eq_text)
        sys.equations.push_back(parse_equation(*eq_text, p.alphabet()));
      else if (search_system)
        sys = parse_system(read_file(*search_system), p.alphabet());
      else {
        err << "error: oracle-search needs --eq or --system\n";
        return exit_code::usage;
      }
      std::optional<Assignment> found;
      try {
        found = bounded_search(sys, p, bound, search_budget);
      } catch (const SearchBudgetExceeded &e) {
        err << "error: " << e.what() << "\n";
        return exit_code::unknown;
      }
      if (common.format == "json") {
        json j{{"bound", bound}, {"found", found.has_value()}};
        if (found) {
          json w = json::object();
          for (const auto &[name, g] : *found) w[name] = format_word(normal_form_word(g, p));
          j["assignment"] = w;
        }
        out << j.dump(2) << "\n";
      } else if (found) {
        out << "found:\n";
        for (const auto &[name, g] : *found) out << "  " << assignment_line(name, g, p) << "\n";
      } else {
        out << fmt::format("no solution with coordinates in [-{0}, {0}]\n", bound);
      }
      return found ? 0 : 1;
    }
  } catch (const ParseError &e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const SchemaError &e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const DiophFormatError &e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const InputError &e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const std::invalid_argument &e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
  return exit_code::usage;
}

} // namespace neq
