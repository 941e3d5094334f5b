#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "fairdiv/asymptotics.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/opt.hpp"
#include "fairdiv/worstcase.hpp"

using json = nlohmann::json;
using namespace fairdiv;

namespace {

enum class Format { Table, Csv, Json };

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitFairShare = 4;
constexpr int kExitSolver = 5;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::RuleKindMismatch: return kExitMismatch;
    case ErrorCode::Infeasible:
    case ErrorCode::Unbounded:
    case ErrorCode::IterationLimit: return kExitSolver;
    case ErrorCode::QuadratureNonConvergence:
    case ErrorCode::NoFiniteT:
    case ErrorCode::HarmonicMomentInfinite:
    case ErrorCode::ZeroDeviation:
    case ErrorCode::DegenerateDenominator: return 1;
    default: return kExitParse;
  }
}

// locale-independent, 12 significant digits
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw Error(ErrorCode::ParseError, "unknown format: " + s);
}

ObjectKind parse_kind(const std::string& s) {
  if (s == "good") return ObjectKind::Good;
  if (s == "bad") return ObjectKind::Bad;
  throw Error(ErrorCode::ParseError, "kind must be good or bad");
}

RuleId parse_rule(const std::string& name, std::optional<double> theta) {
  if (name == "es") return RuleId::es();
  if (name == "ut") return RuleId::ut();
  if (name == "pro") return RuleId::pro();
  if (name == "th") {
    if (!theta) throw Error(ErrorCode::ParseError, "rule th needs --theta");
    if (!(*theta > 0.0) || *theta > 1.0)
      throw Error(ErrorCode::ParseError, "theta must be in (0,1]");
    return RuleId::th(*theta);
  }
  if (name == "bh") return RuleId::bh();
  if (name == "bht") {
    if (!theta) throw Error(ErrorCode::ParseError, "rule bht needs --theta");
    if (!(*theta >= 0.0) || *theta > 1.0)
      throw Error(ErrorCode::ParseError, "theta must be in [0,1]");
    return RuleId::bh_theta(*theta);
  }
  throw Error(ErrorCode::ParseError, "unknown rule: " + name + " (use es|ut|pro|th|bh|bht)");
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v) || v < 0.0)
        throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "values must be nonnegative numbers: '" + item + "'");
    }
  }
  if (out.size() < 2) throw Error(ErrorCode::ParseError, "need at least two values");
  return out;
}

struct ProblemFile {
  DiscreteProblem problem;
  std::vector<std::string> labels;
};

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  ProblemFile pf;
  try {
    pf.problem.kind = parse_kind(j.at("kind").get<std::string>());
    for (const auto& s : j.at("states")) {
      DiscreteState st;
      st.prob = s.at("prob").get<double>();
      st.values = s.at("values").get<std::vector<double>>();
      pf.problem.states.push_back(std::move(st));
    }
    if (j.contains("agents")) pf.labels = j.at("agents").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad problem file: ") + e.what());
  }
  validate_problem(pf.problem);
  if (!pf.labels.empty() &&
      pf.labels.size() != static_cast<size_t>(pf.problem.agents()))
    throw Error(ErrorCode::ParseError, "agent labels do not match the value vectors");
  return pf;
}

std::string label_of(const ProblemFile& pf, int i) {
  if (i < static_cast<int>(pf.labels.size())) return pf.labels[static_cast<size_t>(i)];
  return "agent" + std::to_string(i);
}

json problem_to_json(const ProblemFile& pf) {
  json j;
  j["kind"] = kind_name(pf.problem.kind);
  if (!pf.labels.empty()) j["agents"] = pf.labels;
  j["states"] = json::array();
  for (const auto& s : pf.problem.states)
    j["states"].push_back({{"prob", s.prob}, {"values", s.values}});
  return j;
}

Distribution1D parse_dist(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto nums = [&args]() {
    std::vector<double> out;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
  };
  try {
    if (name == "uniform") {
      const auto v = nums();
      if (v.size() != 2) throw Error(ErrorCode::ParseError, "uniform:a,b");
      return Distribution1D::uniform(v[0], v[1]);
    }
    if (name == "exp") return Distribution1D::exponential();
    if (name == "poly32") return Distribution1D::poly32();
    if (name == "atom") {
      const auto v = nums();
      if (v.size() < 2 || v.size() % 2 != 0)
        throw Error(ErrorCode::ParseError, "atom:p1,loc1,p2,loc2,...");
      std::vector<Atom> atoms;
      for (size_t i = 0; i < v.size(); i += 2) atoms.push_back({v[i + 1], v[i]});
      return Distribution1D::atom_mixture(atoms);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad distribution spec: ") + e.what());
  }
  throw Error(ErrorCode::ParseError,
              "unknown distribution: " + name + " (use uniform:a,b | exp | poly32 | atom:p,loc,...)");
}

void print_allocation(const Allocation& a, Format format, const RuleId& rule, ObjectKind kind,
                      const std::vector<double>& values) {
  switch (format) {
    case Format::Table: {
      std::string line;
      for (int i = 0; i < a.size(); ++i) {
        if (i) line += ' ';
        line += fmt(a[i]);
      }
      std::cout << line << "\n";
      break;
    }
    case Format::Csv: {
      std::cout << "agent,value,share\n";
      for (int i = 0; i < a.size(); ++i)
        std::cout << i << ',' << fmt(values[static_cast<size_t>(i)]) << ',' << fmt(a[i]) << "\n";
      break;
    }
    case Format::Json: {
      json j{{"rule", rule_name(rule)},
             {"kind", kind_name(kind)},
             {"values", values},
             {"shares", a.shares}};
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
}

int cmd_evaluate(const ProblemFile& pf, const RuleId& rule, double tol, Format format) {
  const WelfareReport rep = verify_fair_share(pf.problem, rule, tol);
  const auto means = agent_means(pf.problem);
  bool common_mean = true;
  for (double m : means) common_mean &= std::fabs(m - means[0]) <= 1e-12 * means[0];
  const double scale = common_mean ? means[0] : 1.0;
  const int n = static_cast<int>(rep.per_agent.size());

  switch (format) {
    case Format::Table: {
      std::cout << "rule: " << rule_name(rule) << "   object: " << kind_name(pf.problem.kind)
                << "\n";
      std::cout << "agent  normalized  " << (common_mean ? "absolute  " : "")
                << "fair-share  margin\n";
      for (int i = 0; i < n; ++i) {
        std::cout << label_of(pf, i) << "  " << fmt(rep.per_agent[static_cast<size_t>(i)]) << "  ";
        if (common_mean) std::cout << fmt(rep.per_agent[static_cast<size_t>(i)] * scale) << "  ";
        std::cout << (rep.fs_ok[static_cast<size_t>(i)] ? "ok" : "VIOLATED") << "  "
                  << fmt(rep.fs_margin[static_cast<size_t>(i)]) << "\n";
      }
      std::cout << "social value: " << fmt(rep.social_value);
      if (common_mean) std::cout << " (absolute " << fmt(rep.social_value * scale) << ")";
      std::cout << "\nfair share: " << (rep.fs_holds() ? "OK" : "VIOLATED") << "\n";
      break;
    }
    case Format::Csv: {
      std::cout << "agent,normalized,absolute,fs_ok,margin\n";
      for (int i = 0; i < n; ++i) {
        std::cout << label_of(pf, i) << ',' << fmt(rep.per_agent[static_cast<size_t>(i)]) << ',';
        if (common_mean) std::cout << fmt(rep.per_agent[static_cast<size_t>(i)] * scale);
        std::cout << ',' << (rep.fs_ok[static_cast<size_t>(i)] ? 1 : 0) << ','
                  << fmt(rep.fs_margin[static_cast<size_t>(i)]) << "\n";
      }
      break;
    }
    case Format::Json: {
      json j;
      j["problem"] = problem_to_json(pf);
      j["rule"] = rule_name(rule);
      j["tol"] = tol;
      j["per_agent_normalized"] = rep.per_agent;
      if (common_mean) {
        std::vector<double> abs;
        for (double v : rep.per_agent) abs.push_back(v * scale);
        j["per_agent_absolute"] = abs;
        j["social_value_absolute"] = rep.social_value * scale;
      } else {
        j["per_agent_absolute"] = nullptr;
        j["social_value_absolute"] = nullptr;
      }
      j["social_value"] = rep.social_value;
      j["fs_ok"] = json::array();
      for (bool ok : rep.fs_ok) j["fs_ok"].push_back(ok);
      j["fs_margin"] = rep.fs_margin;
      j["fair_share"] = rep.fs_holds();
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
  return rep.fs_holds() ? kExitOk : kExitFairShare;
}

int cmd_optimal(const ProblemFile& pf, Format format) {
  const OptimalFairResult r = optimal_fair_rule(pf.problem);
  const double unconstrained = unconstrained_optimum(pf.problem);
  const auto means = agent_means(pf.problem);
  bool common_mean = true;
  for (double m : means) common_mean &= std::fabs(m - means[0]) <= 1e-12 * means[0];
  const double scale = common_mean ? means[0] : 1.0;

  const DiscreteProblem q = normalize_problem(pf.problem);
  const int n = q.agents();
  std::vector<double> per_agent(static_cast<size_t>(n), 0.0);
  for (size_t s = 0; s < q.states.size(); ++s)
    for (int i = 0; i < n; ++i)
      per_agent[static_cast<size_t>(i)] +=
          q.states[s].prob * r.rule.allocations[s][i] * q.states[s].values[static_cast<size_t>(i)];
  std::vector<double> margins;
  for (double v : per_agent) margins.push_back(v - 1.0 / n);

  switch (format) {
    case Format::Table: {
      std::cout << "optimal fair rule (" << kind_name(pf.problem.kind) << ", "
                << q.states.size() << " states)\n";
      for (size_t s = 0; s < r.rule.allocations.size(); ++s) {
        std::cout << "state" << s << ":";
        for (int i = 0; i < n; ++i) std::cout << ' ' << fmt(r.rule.allocations[s][i]);
        std::cout << "\n";
      }
      std::cout << "objective: " << fmt(r.social_value);
      if (common_mean) std::cout << " (absolute " << fmt(r.social_value * scale) << ")";
      std::cout << "\nunconstrained optimum: " << fmt(unconstrained);
      if (common_mean) std::cout << " (absolute " << fmt(unconstrained * scale) << ")";
      std::cout << "\nfair-share margins:";
      for (double m : margins) std::cout << ' ' << fmt(m);
      std::cout << "\n";
      break;
    }
    case Format::Csv: {
      std::cout << "state";
      for (int i = 0; i < n; ++i) std::cout << ',' << label_of(pf, i);
      std::cout << "\n";
      for (size_t s = 0; s < r.rule.allocations.size(); ++s) {
        std::cout << s;
        for (int i = 0; i < n; ++i) std::cout << ',' << fmt(r.rule.allocations[s][i]);
        std::cout << "\n";
      }
      std::cout << "objective," << fmt(r.social_value) << "\n";
      break;
    }
    case Format::Json: {
      json j;
      j["problem"] = problem_to_json(pf);
      j["allocations"] = json::array();
      for (const auto& a : r.rule.allocations) j["allocations"].push_back(a.shares);
      j["objective"] = r.social_value;
      j["objective_absolute"] = common_mean ? json(r.social_value * scale) : json(nullptr);
      j["unconstrained_optimum"] = unconstrained;
      j["fs_margin"] = margins;
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
  return kExitOk;
}

int cmd_worstcase(const RuleId& rule, int n, ObjectKind kind, const std::string& mode,
                  int restarts, std::uint64_t seed, Format format) {
  std::optional<RatioReport> search;
  std::optional<double> closed;
  std::optional<std::pair<double, double>> bounds;

  if (mode == "search" || mode == "both")
    search = cr_search(rule, n, kind, restarts, seed);

  if (mode == "closed-form" || mode == "both") {
    if (rule.kind == RuleKind::TopHeavy && kind == ObjectKind::Good)
      closed = cr_closed_form_top_heavy(n, Theta(rule.theta));
    else if (rule.kind == RuleKind::Proportional)
      closed = cr_closed_form_proportional(n, kind);
    else if (rule.kind == RuleKind::BottomHeavy && kind == ObjectKind::Bad)
      bounds = cr_bounds_bottom_heavy(n);
    else if (rule.kind == RuleKind::EqualSplit && kind == ObjectKind::Good)
      closed = static_cast<double>(n);
    else if (mode == "closed-form")
      throw Error(ErrorCode::ParseError,
                  "no closed form for " + rule_name(rule) + " dividing a " + kind_name(kind));
  }

  const Format f = format;
  if (f == Format::Json) {
    json j{{"rule", rule_name(rule)}, {"n", n}, {"kind", kind_name(kind)}, {"mode", mode}};
    if (search) {
      j["search"] = {{"value", search->value}, {"witness", search->witness_profile->values}};
    }
    if (closed) j["closed_form"] = *closed;
    if (bounds) j["bounds"] = {bounds->first, bounds->second};
    if (search && closed) j["delta"] = std::fabs(search->value - *closed);
    std::cout << j.dump(2) << "\n";
  } else {
    if (search) {
      std::cout << "search: " << fmt(search->value) << "  witness:";
      for (double v : search->witness_profile->values) std::cout << ' ' << fmt(v);
      std::cout << "\n";
    }
    if (closed) std::cout << "closed-form: " << fmt(*closed) << "\n";
    if (bounds)
      std::cout << "bounds: [" << fmt(bounds->first) << ", " << fmt(bounds->second) << "]\n";
    if (search && closed)
      std::cout << "delta: " << fmt(std::fabs(search->value - *closed)) << "\n";
    if (search && bounds) {
      const bool inside = search->value >= bounds->first - 1e-6 &&
                          search->value <= bounds->second + 1e-6;
      std::cout << "search inside bounds: " << (inside ? "yes" : "no") << "\n";
    }
  }
  return kExitOk;
}

int cmd_simulate(const std::string& dist_spec, const RuleId& rule, ObjectKind kind, int n,
                 long long samples, std::uint64_t seed, Format format) {
  const Distribution1D d = parse_dist(dist_spec);
  const MCEstimate est = monte_carlo_pi(d, rule, kind, n, samples, seed);

  std::optional<double> limit;
  try {
    if (rule.kind == RuleKind::TopHeavy && kind == ObjectKind::Good)
      limit = pi_th_limit_good(d, Theta(rule.theta), n);
    else if (rule.kind == RuleKind::Proportional && kind == ObjectKind::Good)
      limit = pi_pro_limit_good(d, n);
    else if (rule.kind == RuleKind::BottomHeavy && kind == ObjectKind::Bad)
      limit = pi_bh_limit_bad(d, n);
    else if (rule.kind == RuleKind::Proportional && kind == ObjectKind::Bad)
      limit = pi_pro_limit_bad(d, n);
  } catch (const Error&) {
    limit.reset();  // no finite limit formula for this distribution
  }

  if (format == Format::Json) {
    json j{{"dist", d.name()},       {"rule", rule_name(rule)}, {"kind", kind_name(kind)},
           {"n", n},                 {"samples", est.samples},  {"seed", est.seed},
           {"estimate", est.mean},   {"std_error", est.std_error}};
    if (limit) {
      j["limit"] = *limit;
      j["z"] = est.std_error > 0.0 ? (est.mean - *limit) / est.std_error : 0.0;
    } else {
      j["limit"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "estimate: " << fmt(est.mean) << " +- " << fmt(est.std_error) << "  (samples "
              << est.samples << ", seed " << est.seed << ")\n";
    if (limit) {
      std::cout << "limit formula: " << fmt(*limit) << "\n";
      if (est.std_error > 0.0)
        std::cout << "z-score: " << fmt((est.mean - *limit) / est.std_error) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair division of a random object: rules, verification, benchmarks"};
  app.require_subcommand(1);

  std::string rule_name_arg, kind_arg = "good", values_arg, problem_arg, format_arg = "table";
  std::string mode_arg = "both", dist_arg;
  std::optional<double> theta_arg;
  double tol_arg = 1e-9;
  int n_arg = 2;
  long long samples_arg = 1000000;
  std::uint64_t seed_arg = 1;
  int restarts_arg = 1000;

  auto add_rule_opts = [&](CLI::App* cmd) {
    cmd->add_option("--rule", rule_name_arg, "rule id: es|ut|pro|th|bh|bht")->required();
    cmd->add_option("--theta", theta_arg, "theta for th ((0,1]) or bht ([0,1])");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_arg, "table|csv|json");
  };

  CLI::App* alloc = app.add_subcommand("allocate", "allocate one realized profile");
  add_rule_opts(alloc);
  alloc->add_option("--kind", kind_arg, "good|bad")->required();
  alloc->add_option("--values", values_arg, "comma-separated nonnegative values")->required();
  add_format(alloc);

  CLI::App* eval = app.add_subcommand("evaluate", "expected values and fair-share check");
  add_rule_opts(eval);
  eval->add_option("--problem", problem_arg, "problem JSON file")->required();
  eval->add_option("--tol", tol_arg, "fair-share tolerance");
  add_format(eval);

  CLI::App* optimal = app.add_subcommand("optimal", "LP-optimal fair prior-dependent rule");
  optimal->add_option("--problem", problem_arg, "problem JSON file")->required();
  add_format(optimal);

  CLI::App* worst = app.add_subcommand("worstcase", "competitive ratio / price of fairness");
  add_rule_opts(worst);
  worst->add_option("--n", n_arg, "agent count")->required();
  worst->add_option("--kind", kind_arg, "good|bad")->required();
  worst->add_option("--mode", mode_arg, "search|closed-form|both");
  worst->add_option("--restarts", restarts_arg, "random search restarts");
  worst->add_option("--seed", seed_arg, "search seed");
  add_format(worst);

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo efficiency ratio for i.i.d. priors");
  add_rule_opts(sim);
  sim->add_option("--dist", dist_arg, "uniform:a,b | exp | poly32 | atom:p,loc,...")->required();
  sim->add_option("--kind", kind_arg, "good|bad")->required();
  sim->add_option("--n", n_arg, "agent count");
  sim->add_option("--samples", samples_arg, "Monte Carlo samples");
  sim->add_option("--seed", seed_arg, "sampling seed");
  add_format(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  try {
    const Format format = parse_format(format_arg);
    if (alloc->parsed()) {
      const RuleId rule = parse_rule(rule_name_arg, theta_arg);
      const ObjectKind kind = parse_kind(kind_arg);
      const std::vector<double> values = parse_values(values_arg);
      const Allocation a = allocate(rule, ValueProfile{values}, kind);
      print_allocation(a, format, rule, kind, values);
      return kExitOk;
    }
    if (eval->parsed()) {
      const RuleId rule = parse_rule(rule_name_arg, theta_arg);
      return cmd_evaluate(load_problem(problem_arg), rule, tol_arg, format);
    }
    if (optimal->parsed()) return cmd_optimal(load_problem(problem_arg), format);
    if (worst->parsed()) {
      if (mode_arg != "search" && mode_arg != "closed-form" && mode_arg != "both")
        throw Error(ErrorCode::ParseError, "mode must be search|closed-form|both");
      const RuleId rule = parse_rule(rule_name_arg, theta_arg);
      return cmd_worstcase(rule, n_arg, parse_kind(kind_arg), mode_arg, restarts_arg, seed_arg,
                           format);
    }
    if (sim->parsed()) {
      const RuleId rule = parse_rule(rule_name_arg, theta_arg);
      return cmd_simulate(dist_arg, rule, parse_kind(kind_arg), n_arg, samples_arg, seed_arg,
                          format);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
