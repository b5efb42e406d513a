#include "clb/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "clb/oracle.hpp"
#include "clb/upto.hpp"

namespace clb {

namespace {

constexpr int kSchemaVersion = 1;

constexpr int kExitHolds = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct CommonOpts {
  std::string strategy = "cbn";
  int fuel = 1000;
  int ctx_bound = 6;
  int closure_bound = 6;
  int verify_factor = 10;
  std::uint64_t seed = 0;
  std::string output;

  Strategy strat() const { return *strategy_from_string(strategy); }
  CheckConfig check_config() const {
    return CheckConfig{strat(), fuel, closure_bound, verify_factor};
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--strategy", o.strategy, "cbn or cbv")
      ->check(CLI::IsMember({"cbn", "cbv"}))
      ->capture_default_str();
  cmd->add_option("--fuel", o.fuel)->capture_default_str();
  cmd->add_option("--ctx-bound", o.ctx_bound)->capture_default_str();
  cmd->add_option("--closure-bound", o.closure_bound)->capture_default_str();
  cmd->add_option("--verify-factor", o.verify_factor)->capture_default_str();
  cmd->add_option("--seed", o.seed)->capture_default_str();
  cmd->add_option("-o,--output", o.output, "report JSON path");
}

nlohmann::ordered_json run_spec(const std::string& verb, const CommonOpts& o,
                                const std::vector<std::string>& inputs,
                                const nlohmann::ordered_json& extra = {}) {
  nlohmann::ordered_json j;
  j["verb"] = verb;
  j["strategy"] = o.strategy;
  j["fuel"] = o.fuel;
  j["ctx_bound"] = o.ctx_bound;
  j["closure_bound"] = o.closure_bound;
  j["verify_factor"] = o.verify_factor;
  j["seed"] = o.seed;
  j["inputs"] = inputs;
  if (!extra.is_null() && !extra.empty())
    for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

void emit(const nlohmann::ordered_json& report, const CommonOpts& o,
          std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (!o.output.empty()) {
    std::ofstream f(o.output, std::ios::binary);
    f << text;
  } else {
    out << text;
  }
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::HoldsUpToBound: return kExitHolds;
    case Verdict::Refuted: return kExitRefuted;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"program-equivalence workbench for the pure lambda calculus"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string term_a, term_b, rel_path, technique = "pev", variant;
  bool ev_only = false;
  int count = 100;
  int max_size = 8;

  auto* c_eval = app.add_subcommand("eval", "evaluate a closed term");
  c_eval->add_option("term", term_a)->required();
  add_common(c_eval, o);

  auto* c_trace = app.add_subcommand("trace", "print the reduction chain");
  c_trace->add_option("term", term_a)->required();
  add_common(c_trace, o);

  auto* c_equiv =
      app.add_subcommand("equiv", "bounded contextual equivalence");
  c_equiv->add_option("left", term_a)->required();
  c_equiv->add_option("right", term_b)->required();
  c_equiv->add_flag("--ev-only", ev_only, "evaluation contexts only");
  add_common(c_equiv, o);

  auto* c_clb = app.add_subcommand("check-clb", "coupled logical bisimulation");
  c_clb->add_option("relation", rel_path)->required();
  add_common(c_clb, o);

  auto* c_ab = app.add_subcommand("check-ab", "applicative bisimulation");
  c_ab->add_option("relation", rel_path)->required();
  add_common(c_ab, o);

  auto* c_lb = app.add_subcommand("check-lb", "logical bisimulation");
  c_lb->add_option("relation", rel_path)->required();
  add_common(c_lb, o);

  auto* c_upto = app.add_subcommand("check-upto", "CLB up to a technique");
  c_upto->add_option("relation", rel_path)->required();
  c_upto->add_option("--technique", technique, "pev | ctx | red[:f] | a.b | nu(k):t")
      ->capture_default_str();
  c_upto->add_option("--variant", variant, "up-to-environment");
  add_common(c_upto, o);

  auto* c_ax = app.add_subcommand("validate-axioms", "up-to axiom battery");
  c_ax->add_option("--count", count, "number of sampled relations")
      ->capture_default_str();
  add_common(c_ax, o);

  auto* c_gen = app.add_subcommand("gen-corpus", "seeded closed-term corpus");
  c_gen->add_option("--count", count)->capture_default_str();
  c_gen->add_option("--max-size", max_size)->capture_default_str();
  add_common(c_gen, o);

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargv;
    cargv.push_back("clb");
    for (const auto& a : argv) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitHolds;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    CheckConfig cfg = o.check_config();

    if (*c_eval) {
      Term t = parse_term(term_a);
      EvalOutcome r = evaluate(t, cfg.strategy, cfg.fuel);
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["run"] = run_spec("eval", o, {term_a});
      j["result"] = {{"outcome", r.converged ? "converged" : "fuel-exhausted"},
                     {"term", to_string(r.term)},
                     {"steps", r.steps}};
      out << (r.converged ? "converged: " : "fuel exhausted at: ")
          << to_string(r.term) << " (" << r.steps << " steps)\n";
      emit(j, o, out);
      return r.converged ? kExitHolds : kExitInconclusive;
    }

    if (*c_trace) {
      Term t = parse_term(term_a);
      auto chain = reduction_chain(t, cfg.strategy, cfg.fuel);
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["run"] = run_spec("trace", o, {term_a});
      auto arr = nlohmann::ordered_json::array();
      for (const auto& u : chain) {
        out << to_string(u) << "\n";
        arr.push_back(to_string(u));
      }
      j["result"] = {{"chain", arr}};
      emit(j, o, out);
      return kExitHolds;
    }

    if (*c_equiv) {
      Term a = parse_term(term_a);
      Term b = parse_term(term_b);
      EquivVerdict v = ev_only
                           ? evctx_equiv(a, b, cfg.strategy, o.ctx_bound, cfg)
                           : ctx_equiv(a, b, cfg.strategy, o.ctx_bound, cfg);
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["run"] = run_spec("equiv", o, {term_a, term_b},
                          {{"ev_only", ev_only}});
      nlohmann::ordered_json res;
      res["verdict"] = to_string(v.kind);
      res["contexts_tried"] = v.contexts_tried;
      if (v.witness) {
        res["witness"] = to_string(*v.witness);
        res["converging_side"] = v.converging_side == 0 ? "left" : "right";
        res["steps"] = v.steps;
      }
      j["result"] = res;
      out << to_string(v.kind)
          << (v.witness ? " by " + to_string(*v.witness) : std::string())
          << " (" << v.contexts_tried << " contexts)\n";
      emit(j, o, out);
      switch (v.kind) {
        case EquivVerdict::Kind::EquivalentUpToBound: return kExitHolds;
        case EquivVerdict::Kind::Distinguished: return kExitRefuted;
        case EquivVerdict::Kind::Inconclusive: return kExitInconclusive;
      }
    }

    auto report_out = [&](const std::string& verb, const Report& rep,
                          const nlohmann::ordered_json& extra =
                              nlohmann::ordered_json()) {
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["run"] = run_spec(verb, o, {rel_path}, extra);
      j["result"] = rep.to_json();
      out << verb << ": " << to_string(rep.verdict) << "\n";
      for (const auto& c : rep.clauses)
        if (c.verdict != Verdict::HoldsUpToBound)
          out << "  [" << c.clause << "] (" << c.left << ", " << c.right
              << "): " << to_string(c.verdict) << " — " << c.detail << "\n";
      emit(j, o, out);
      return verdict_exit(rep.verdict);
    };

    if (*c_clb) {
      CoupledRelation r = load_relation_file(rel_path);
      return report_out("check-clb", check_clb(r, cfg));
    }

    if (*c_ab) {
      CoupledRelation r = load_relation_file(rel_path);
      return report_out("check-ab",
                        check_applicative_bisim(
                            FiniteRelation::union_of(r.r1, r.r2), cfg));
    }

    if (*c_lb) {
      CoupledRelation r = load_relation_file(rel_path);
      LbReport lb =
          check_logical_bisim(FiniteRelation::union_of(r.r1, r.r2), cfg);
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["run"] = run_spec("check-lb", o, {rel_path});
      j["result"] = lb.to_json();
      out << "check-lb: " << to_string(lb.verdict)
          << (lb.agree ? " (direct and CLB routes agree)"
                       : " (routes DISAGREE)")
          << "\n";
      emit(j, o, out);
      return verdict_exit(lb.verdict);
    }

    if (*c_upto) {
      CoupledRelation r = load_relation_file(rel_path);
      UpToTechnique t = parse_technique(technique);
      bool env = variant == "up-to-environment";
      if (!variant.empty() && !env) {
        err << "error: unknown variant \"" << variant << "\"\n";
        return kExitUsage;
      }
      Report rep = check_clb_upto(r, t, cfg, env);
      ClauseReport c{"", "", "coupledness"};
      if (!rep.coupled) {
        c.verdict = Verdict::Refuted;
        c.detail = "R1 is not a subset of R2";
      }
      rep.record(std::move(c));
      return report_out("check-upto", rep,
                        {{"technique", t.describe()}, {"variant", variant}});
    }

    if (*c_ax) {
      std::mt19937_64 rng(o.seed);
      std::vector<CoupledRelation> samples;
      for (int i = 0; i < count; ++i)
        samples.push_back(generate_relation(rng, 4, 4));
      CheckConfig axcfg = cfg;
      axcfg.fuel = std::min(cfg.fuel, 50);
      axcfg.closure_bound = std::min(cfg.closure_bound, 4);
      auto witnesses =
          generate_progression_witnesses(20, o.seed, axcfg);
      std::vector<AxiomOutcome> results;
      for (const auto& t :
           {UpToTechnique::pev(), UpToTechnique::ctx()}) {
        results.push_back(check_extensive(t, samples, axcfg));
        results.push_back(check_monotone(t, samples, axcfg));
        results.push_back(check_compatible(t, witnesses, axcfg, true));
      }
      results.push_back(check_extensive(UpToTechnique::reduction(), samples,
                                        axcfg));
      results.push_back(check_finitely_convergent(UpToTechnique::reduction(),
                                                  samples, 1, axcfg));
      // Nu(pev) against the direct evaluation-context closure on probes.
      AxiomOutcome nupev;
      nupev.axiom = "nu(pev)=eccn";
      for (const auto& r : samples) {
        ViewPair direct = apply_technique(
            UpToTechnique::nu(UpToTechnique::pev(), 3), as_views(r), axcfg);
        ViewPair iter = iterate_technique(UpToTechnique::pev(), as_views(r),
                                          3, axcfg);
        for (const auto& p : build_probe_set(r, 3)) {
          bool a = direct.second->member(p.first, p.second);
          bool b = iter.second->member(p.first, p.second);
          // The fixpoint dominates any finite iterate; probes are shallow
          // enough that 3 iterations reach every spine the probes contain.
          if (a != b) {
            nupev.holds = false;
            nupev.detail = "disagreement at (" + to_string(p.first) + ", " +
                           to_string(p.second) + ")";
          }
        }
      }
      results.push_back(nupev);

      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["run"] = run_spec("validate-axioms", o, {}, {{"count", count}});
      auto arr = nlohmann::ordered_json::array();
      bool all = true;
      for (const auto& res : results) {
        out << (res.holds ? "PASS " : "FAIL ") << res.axiom
            << (res.detail.empty() ? "" : ": " + res.detail) << "\n";
        arr.push_back({{"axiom", res.axiom},
                       {"holds", res.holds},
                       {"detail", res.detail}});
        all = all && res.holds;
      }
      j["result"] = {{"all_hold", all}, {"axioms", arr}};
      emit(j, o, out);
      return all ? kExitHolds : kExitRefuted;
    }

    if (*c_gen) {
      std::mt19937_64 rng(o.seed);
      GenConfig g;
      g.seed = o.seed;
      g.max_size = max_size;
      std::ostringstream body;
      for (int i = 0; i < count; ++i)
        body << to_string(generate_term(rng, g)) << "\n";
      if (!o.output.empty()) {
        std::ofstream f(o.output, std::ios::binary);
        f << body.str();
      } else {
        out << body.str();
      }
      return kExitHolds;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace clb
