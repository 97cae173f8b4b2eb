#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nlmp/formula.hpp"
#include "nlmp/model.hpp"

namespace nlmp {

/// [[phi]]. Throws DomainError for labels the model does not declare, and
/// PreconditionError if a modality yields a non-measurable set (which only
/// happens on models that fail validation).
StateSet eval_state(const Nlmp& m, const StateFormula& phi);

/// [[psi]] as a set of pool measures: the trace of the formula's set of
/// measures on the pool.
PoolSet eval_measure(const Nlmp& m, const MeasureFormula& psi);

bool satisfies(const Nlmp& m, State s, const StateFormula& phi);
/// Throws DomainError for unknown states.
bool satisfies(const Nlmp& m, std::string_view s, const StateFormula& phi);

/// Rewrites bound sugar and multi-constraint modalities into the core
/// connectives (Or, Not, >=). [phi]>r becomes the disjunction of [phi]>=v over
/// the pool values v > r of [[phi]], which is exact on this model.
StateFormulaPtr expand_sugar(const Nlmp& m, const StateFormula& phi);
MeasureFormulaPtr expand_sugar(const Nlmp& m, const MeasureFormula& psi);

/// One split of the multi-constraint refinement: in round `round`, the blocks
/// `left` and `right` of the previous partition's block were separated by
/// `formula`, which holds on `left` and fails on `right`.
struct SplitRecord {
    std::size_t round = 0;
    StateSet left;
    StateSet right;
    StateFormulaPtr formula;
};

struct LfRefinement {
    Partition partition;
    std::vector<Partition> trace;  // starting at the single block
    std::vector<SplitRecord> splits;
};

/// Partition refinement for the multi-constraint sublogic. Each round splits
/// blocks by the per-label sets of hit profile classes and records a formula
/// for every pair of new sibling blocks. Requires a valid model.
LfRefinement refine_lf(const Nlmp& m);

enum class Fragment { L, Lf };

std::string_view to_string(Fragment f);

struct DistinguishedPair {
    State s = 0;
    State t = 0;
    StateFormulaPtr formula;  // true on exactly one of s, t
};

struct EquivalenceReport {
    Fragment fragment = Fragment::L;
    Partition partition;
    std::vector<DistinguishedPair> formulas;  // one per unrelated pair s < t

    Relation relation() const { return Relation::from_partition(partition); }
};

/// L: inseparability by the smallest stable sigma-algebra. Lf: refine_lf.
/// Formulas for unrelated pairs come from the refinement and are checked with
/// the evaluator. Requires a valid model.
EquivalenceReport logical_equivalence(const Nlmp& m, Fragment fragment);

/// A multi-constraint formula true on exactly one of s, t, or nothing when they
/// are bisimilar. Requires a valid model over the powerset sigma-algebra;
/// coarse sigma-algebras throw UnsupportedError.
std::optional<StateFormulaPtr> distinguish(const Nlmp& m, State s, State t);

}  // namespace nlmp
