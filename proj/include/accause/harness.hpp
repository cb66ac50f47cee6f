#ifndef ACCAUSE_HARNESS_HPP
#define ACCAUSE_HARNESS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "accause/abstract_cause.hpp"
#include "accause/causal_model.hpp"

namespace accause {

struct FuzzCaps {
    int max_endogenous = 4;
    int max_exogenous = 2;
    int max_domain = 3;
    int formula_depth = 3;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    /// Counterpart structures larger than this are skipped.
    std::size_t state_cap = 10000;
    /// Largest epistemic state for explanation trials.
    int max_k = 4;
    /// Formulas per model for the L(S) agreement check.
    int formulas_per_model = 50;
    /// Theorem 1 only: allow negated conjuncts in witnesses.
    bool negated = false;
    /// Minimality scope for the abstract side.
    MinimalityScope minimality = MinimalityScope::EventConjunctions;

    /// Throws SemanticError when a cap is not positive.
    void validate() const;
};

/// Deterministic generator for one trial; bounded draws use plain modulo so
/// streams do not depend on the standard library's distributions.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);
    std::uint64_t next() { return gen_(); }
    /// Uniform-ish in [0, n).
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    /// True with probability num/den.
    bool chance(unsigned num, unsigned den) { return below(den) < num; }

  private:
    std::mt19937_64 gen_;
};

struct GeneratedInstance {
    CausalModel model;
    Context context;
};

GeneratedInstance gen_random_model(const FuzzCaps& caps, std::size_t index);

/// Random model with exactly `endogenous` binary variables and one binary
/// exogenous parent each way; used for the timing budget.
GeneratedInstance gen_binary_model(std::uint64_t seed, int endogenous);

/// Boolean combination of endogenous primitive events.
Formula gen_effect(TrialRng& rng, const Signature& sig, int depth);
/// 1 or 2 distinct endogenous events, mostly at the actual values.
std::vector<Event> gen_cause(TrialRng& rng, const Signature& sig, const Assignment& actual);
/// Boolean combination of primitive events and interventions [Y<-y]phi with phi propositional.
Formula gen_ls_formula(TrialRng& rng, const Signature& sig, int depth);

/// [Y<-y]phi becomes (Y=y) ~> phi; everything else is kept.
Formula intervention_as_counterfactual(const Formula& f);

enum class Suite { Theorem1 = 1, Theorem2 = 2, Proposition3 = 3, Theorem4 = 4, Theorem5 = 5 };

struct Disagreement {
    std::size_t trial = 0;
    std::string model_text;
    std::string context;
    std::string query;
    std::string left;
    std::string right;
    /// CLI argument vectors that replay the two sides (one command when a
    /// single command reports both).
    std::vector<std::vector<std::string>> replay;
};

struct DifferentialReport {
    Suite suite = Suite::Theorem1;
    FuzzCaps caps;
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::size_t agreements = 0;
    std::size_t disagreements_count = 0;
    std::size_t skipped = 0;
    double seconds = 0.0;
    std::vector<Disagreement> disagreements;
};

DifferentialReport run_differential(Suite suite, const FuzzCaps& caps);

/// Report as JSON text (deterministic apart from the timing field when `with_time`).
std::string report_to_json(const DifferentialReport& r, bool with_time = true);
std::string report_to_text(const DifferentialReport& r);
/// Writes trial-<n>.cm and trial-<n>.json for each disagreement into dir.
void write_repro_bundles(const DifferentialReport& r, const std::string& dir);

struct ScenarioResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<ScenarioResult> run_corpus();

/// Model and structure files used by the corpus, by file name.
std::vector<std::pair<std::string, std::string>> corpus_files();

}  // namespace accause

#endif
