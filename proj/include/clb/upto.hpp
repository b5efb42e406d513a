#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "clb/bisim.hpp"

namespace clb {

// A transformer on paired relations. Compose applies `inner` first, then
// `outer` (the CLI expression `a.b` is Compose(inner=a, outer=b): the right
// operand acts last). Nu approximates the iteration fixpoint; Nu over Pev is
// realized directly as the cbn evaluation-context closure, to which the
// fixpoint provably collapses.
struct UpToTechnique {
  enum class Kind { Pev, Ctx, Reduction, Compose, Nu };
  Kind kind = Kind::Pev;
  int fuel = 0;   // Reduction: 0 means "use the config fuel"
  int bound = 2;  // Nu iteration bound
  std::shared_ptr<const UpToTechnique> inner, outer;

  static UpToTechnique pev();
  static UpToTechnique ctx();
  static UpToTechnique reduction(int fuel = 0);
  static UpToTechnique compose(UpToTechnique inner, UpToTechnique outer);
  static UpToTechnique nu(UpToTechnique base, int bound);

  std::string describe() const;
};

// Technique expressions: `pev`, `ctx`, `red[:fuel]`, `a.b` (composition,
// right acts last), `nu(k):t`.
UpToTechnique parse_technique(const std::string& text);

ViewPair apply_technique(const UpToTechnique& t, const ViewPair& r,
                         const CheckConfig& cfg);
ViewPair iterate_technique(const UpToTechnique& t, const ViewPair& r, int k,
                           const CheckConfig& cfg);

// R ~> t(R), i.e. "R is a CLB up to t".
Report check_clb_upto(const CoupledRelation& r, const UpToTechnique& t,
                      const CheckConfig& cfg, bool upto_environment = false);

// Deterministic probe pairs for membership-level comparison of views: all
// pairs of closed terms up to probe_size, the relation's own pairs, and
// their one- and two-step application extensions by small closed arguments.
std::vector<TermPair> build_probe_set(const CoupledRelation& r,
                                      int probe_size);

struct AxiomOutcome {
  std::string axiom;
  bool holds = true;
  std::string detail;  // counterexample description when !holds
};

// A progression witness: r ~> s with r coupled and r ⊆ s.
struct ProgressionWitness {
  CoupledRelation r;
  CoupledRelation s;
};

// Witnesses built from known coupled logical bisimulations over diverging
// terms (loop-shaped reduction chains), perturbed by adding matched reducts.
std::vector<ProgressionWitness> generate_progression_witnesses(
    int count, std::uint64_t seed, const CheckConfig& cfg);

AxiomOutcome check_extensive(const UpToTechnique& t,
                             const std::vector<CoupledRelation>& samples,
                             const CheckConfig& cfg);
AxiomOutcome check_monotone(const UpToTechnique& t,
                            const std::vector<CoupledRelation>& samples,
                            const CheckConfig& cfg);
// Compatible: r ~> s implies t(r) ~> t(s); respectful adds the r ⊆ s
// hypothesis and checks t(r) ⊆ t(s) on probes as well.
AxiomOutcome check_compatible(const UpToTechnique& t,
                              const std::vector<ProgressionWitness>& witnesses,
                              const CheckConfig& cfg, bool respectful);
AxiomOutcome check_finitely_convergent(
    const UpToTechnique& t, const std::vector<CoupledRelation>& samples,
    int constant, const CheckConfig& cfg);
AxiomOutcome check_commute(const UpToTechnique& t, const UpToTechnique& q,
                           const std::vector<CoupledRelation>& samples,
                           const CheckConfig& cfg);
// (Q∘P)^k(R) ⊆ (P^k∘Q^k)(R) on probes for k <= kmax, for samples satisfying
// the (Q∘P)(R) ⊆ (P∘Q)(R) premise on probes.
AxiomOutcome check_monotone_commute_inclusion(
    const UpToTechnique& p, const UpToTechnique& q,
    const std::vector<CoupledRelation>& samples, int kmax,
    const CheckConfig& cfg);

// Soundness consequence at bound: iterates of t on r pass self-progression,
// with view membership sampled on the probe set.
Report soundness_harness(const UpToTechnique& t, const CoupledRelation& r,
                         const CheckConfig& cfg, int nu_bound = 2);

}  // namespace clb
