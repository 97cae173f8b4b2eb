#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlmp/model.hpp"

namespace nlmp {

enum class BisimKind { Traditional, State, Event };

std::string to_string(BisimKind kind);

/// Concrete evidence that a candidate relation or sigma-algebra is not a bisimulation.
struct BisimWitness {
    std::optional<State> s;
    std::optional<State> t;
    std::optional<LabelId> label;
    std::optional<std::size_t> measure;  // pool index of an unmatched measure
    std::optional<PoolSet> xi;           // separating set of pool measures
    std::optional<StateSet> preimage;    // non-measurable hit-preimage
    std::string message;
};

struct CheckResult {
    bool holds = true;
    std::optional<BisimWitness> witness;

    explicit operator bool() const { return holds; }
};

struct BisimReport {
    BisimKind kind = BisimKind::Traditional;
    Partition partition;                 // the computed bisimilarity
    std::optional<SigmaAlgebra> sigma;   // event bisimulation only
    std::vector<Partition> trace;        // one partition per iteration, starting at the initial one

    Relation relation() const { return Relation::from_partition(partition); }
};

/// Direct: quantify over every union of profile classes. Optimized: compare
/// the sets of classes that are hit.
enum class CheckMethod { Direct, Optimized };

/// Related states match measure-by-measure modulo agreement on sigma(r).
/// Requires r symmetric.
CheckResult is_traditional_bisim(const Nlmp& m, const Relation& r);

/// Related states hit exactly the same measurable sets of measures over sigma(r).
/// Requires r symmetric.
CheckResult is_state_bisim(const Nlmp& m, const Relation& r, CheckMethod method = CheckMethod::Optimized);

/// T_a stays measurable when states only carry lambda. Requires lambda to be a
/// sub-sigma-algebra of the model's.
CheckResult is_event_bisim(const Nlmp& m, const SigmaAlgebra& lambda, CheckMethod method = CheckMethod::Optimized);

/// Greatest fixpoint from the total relation. Requires a valid model.
BisimReport largest_traditional(const Nlmp& m);
BisimReport largest_state(const Nlmp& m);

/// Least fixpoint from the trivial sigma-algebra: the smallest stable
/// sigma-algebra, and event bisimilarity as its inseparability relation.
BisimReport smallest_stable_sigma(const Nlmp& m);

struct ComparisonReport {
    BisimReport traditional;
    BisimReport state;
    BisimReport event;
    bool traditional_in_state = false;
    bool state_in_event = false;
    bool all_equal = false;
    /// Powerset sigma-algebra: the three relations must coincide.
    bool equality_expected = false;

    bool chain_holds() const { return traditional_in_state && state_in_event; }
    bool consistent() const { return chain_holds() && (!equality_expected || all_equal); }
};

ComparisonReport compare_bisims(const Nlmp& m);

/// Dirac-specialised traditional check: every delta_u in T_a(s) is matched by
/// some delta_v in T_a(t) with u, v inseparable by sigma(r).
bool np_traditional_check(const Nlmp& m, const Relation& r);

/// Dirac-specialised state check: related states agree on <a>Q for every
/// sigma(r)-measurable Q.
bool np_state_check(const Nlmp& m, const Relation& r);

/// Dirac-specialised event check: lambda is closed under Q -> <a>Q.
bool np_event_check(const Nlmp& m, const SigmaAlgebra& lambda);

/// Bisimilarity of an LMP computed on kernels: related states have equal
/// enabledness and kernels agreeing on every R-closed measurable set.
Partition lmp_bisimilarity(const Lmp& l);

}  // namespace nlmp
