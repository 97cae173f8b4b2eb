#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlmp/measures.hpp"

namespace nlmp {

using LabelId = std::size_t;

/// Nondeterministic labeled Markov process over a finite measurable space:
/// for each label a and state s, a finite set T_a(s) of measures.
///
/// All measures appearing in transitions are collected into one deduplicated
/// pool, sorted lexicographically by atom weights; T_a(s) is stored as a set of
/// pool indices.
class Nlmp {
public:
    class Builder {
    public:
        Builder(SigmaPtr sigma, std::vector<std::string> labels);

        Builder& add(State s, LabelId a, const Measure& mu);
        Builder& add(std::string_view s, std::string_view a, const Measure& mu);

        const SigmaPtr& sigma_ptr() const { return sigma_; }
        LabelId label_index(std::string_view a) const;

        Nlmp build() &&;

    private:
        SigmaPtr sigma_;
        std::vector<std::string> labels_;
        MeasurePool pool_;
        std::vector<std::vector<std::vector<std::size_t>>> rows_;  // [label][state]
    };

    const SigmaAlgebra& sigma() const { return pool_.sigma(); }
    const SigmaPtr& sigma_ptr() const { return pool_.sigma_ptr(); }
    const Universe& universe() const { return sigma().universe(); }
    std::size_t state_count() const { return universe().size(); }

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t label_count() const { return labels_.size(); }
    /// Throws DomainError for unknown labels.
    LabelId label_index(std::string_view a) const;

    const MeasurePool& pool() const { return pool_; }
    /// T_a(s) as a set of pool indices.
    const PoolSet& transitions(State s, LabelId a) const;

    /// Largest |T_a(s)|.
    std::size_t max_branching() const;

    /// Same universe, sigma-algebra, labels and transition sets.
    friend bool operator==(const Nlmp& a, const Nlmp& b);

private:
    Nlmp(std::vector<std::string> labels, MeasurePool pool, std::vector<std::vector<PoolSet>> rows);

    std::vector<std::string> labels_;
    MeasurePool pool_;
    std::vector<std::vector<PoolSet>> rows_;  // [label][state]
};

/// Labeled Markov process: at most one kernel measure per (state, label).
/// A missing kernel means the label is disabled in that state.
class Lmp {
public:
    class Builder {
    public:
        Builder(SigmaPtr sigma, std::vector<std::string> labels);

        /// Throws DomainError if the kernel for (s, a) is already set.
        Builder& set(State s, LabelId a, const Measure& mu);
        Builder& set(std::string_view s, std::string_view a, const Measure& mu);
        LabelId label_index(std::string_view a) const;

        Lmp build() &&;

    private:
        SigmaPtr sigma_;
        std::vector<std::string> labels_;
        std::vector<std::vector<std::optional<Measure>>> kernels_;  // [label][state]
    };

    const SigmaAlgebra& sigma() const { return *sigma_; }
    const SigmaPtr& sigma_ptr() const { return sigma_; }
    const Universe& universe() const { return sigma_->universe(); }
    std::size_t state_count() const { return universe().size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t label_count() const { return labels_.size(); }

    /// nullptr when a is disabled in s.
    const Measure* kernel(State s, LabelId a) const;

private:
    Lmp(SigmaPtr sigma, std::vector<std::string> labels, std::vector<std::vector<std::optional<Measure>>> kernels);

    SigmaPtr sigma_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::optional<Measure>>> kernels_;
};

struct Finding {
    enum class Severity { Error, Warning };

    Severity severity = Severity::Error;
    std::optional<State> state;
    std::optional<LabelId> label;
    std::optional<PoolSet> xi;          // set of pool measures whose hit-preimage failed
    std::optional<StateSet> preimage;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool valid() const;
    const Finding* first_error() const;
};

/// Well-formedness and measurability of T_a. A transition function is
/// measurable iff, for every label, the hit-preimage of each pool-trace of a
/// measurable set of measures is measurable. Those traces are the unions of
/// profile classes of the pool, and preimages commute with unions, so checking
/// each class on its own is exact.
ValidationReport nlmp_validate(const Nlmp& m);

/// Same verdict as nlmp_validate, quantifying over every union of profile
/// classes explicitly. Limited to 20 classes.
ValidationReport nlmp_validate_exhaustive(const Nlmp& m);

/// Kernel measurability: for every label the enabled set is measurable and,
/// for every measurable Q, s -> tau_a(s)(Q) is constant on atoms.
ValidationReport lmp_validate(const Lmp& l);

/// T_a(s) = { tau_a(s) }, or empty where the kernel is missing.
Nlmp lmp_embed(const Lmp& l);

/// Every transition measure is a Dirac measure.
bool is_non_probabilistic(const Nlmp& m);

/// { s | T_a(s) meets xi }
StateSet hit_preimage(const Nlmp& m, LabelId a, const PoolSet& xi);

/// States with some Dirac a-transition into q. Requires a non-probabilistic model.
StateSet diamond(const Nlmp& m, LabelId a, const StateSet& q);

}  // namespace nlmp
