#ifndef GENESYS_PROVER_HPP
#define GENESYS_PROVER_HPP

#include <chrono>
#include <functional>
#include <optional>

#include "genesys/logic.hpp"
#include "genesys/machine.hpp"
#include "genesys/oblige.hpp"

namespace genesys {

enum class Verdict { Valid, Invalid, Unknown };
enum class SatStatus { Sat, Unsat, Unknown };
enum class ProofMethod { Simplifier, Enumeration, External };

const char* verdict_text(Verdict v);
const char* proof_method_text(ProofMethod m);

struct ProofResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<Valuation> counterexample; // present iff Invalid
    ProofMethod method = ProofMethod::Simplifier;
};

struct SatResult {
    SatStatus status = SatStatus::Unknown;
    std::optional<Valuation> witness; // present iff Sat
    ProofMethod method = ProofMethod::Simplifier;
};

struct ProverConfig {
    // Candidate instantiations for constants (explicit lists).
    std::map<std::string, std::vector<long>> constant_bounds;
    // Explicit intervals for variables; intervals derivable from the
    // hypothesis (x : lo..hi) are picked up automatically.
    std::map<std::string, std::pair<long, long>> variable_bounds;
    std::chrono::milliseconds time_budget{5000};
    // When true, an identifier that cannot be given a finite domain raises
    // MissingBound instead of degrading to Unknown.
    bool require_bounds = false;

    bool has_bounds() const { return !constant_bounds.empty() || !variable_bounds.empty(); }
};

// Three-valued discharge. The machine supplies sorts and enum domains; all
// calls are pure given (po, cfg) and may run concurrently.
class Prover {
public:
    Prover(const MachineModel& m, ProverConfig cfg) : m_(m), cfg_(std::move(cfg)) {}

    ProofResult decide(const ProofObligation& po) const;
    SatResult check_sat(const PredPtr& p) const;
    SatResult check_sat(const ProofObligation& po) const; // hypothesis & goal

    const ProverConfig& config() const { return cfg_; }

private:
    struct EnumState;

    std::optional<std::vector<Value>> domain_of(const std::string& ident, const PredPtr& hyp,
                                                const Valuation& partial,
                                                bool use_cfg = true) const;
    bool enumerate(const PredPtr& hyp, std::vector<std::string> pending, Valuation& partial,
                   EnumState& st, const std::function<bool(const Valuation&)>& found) const;
    bool case_split_valid(const ProofObligation& po) const;

    const MachineModel& m_;
    ProverConfig cfg_;
};

// SMT-LIB 2 export (QF_LIA, enums as bounded integers); returns file path.
std::string export_obligation(const ProofObligation& po, const MachineModel& m,
                              const std::string& dir);

} // namespace genesys

#endif
