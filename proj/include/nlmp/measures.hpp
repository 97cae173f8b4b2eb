#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlmp/measurable.hpp"
#include "nlmp/rational.hpp"

namespace nlmp {

/// Probability measure on a finite sigma-algebra, stored as one exact weight
/// per atom. Weights lie in [0,1] and sum to exactly 1.
class Measure {
public:
    Measure(SigmaPtr sigma, std::vector<Rational> atom_weights);

    /// Builds a measure from weights on individual states; weights of states
    /// sharing an atom are summed into that atom.
    static Measure from_state_weights(SigmaPtr sigma, const std::vector<std::pair<State, Rational>>& weights);

    const SigmaAlgebra& sigma() const { return *sigma_; }
    const SigmaPtr& sigma_ptr() const { return sigma_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& atom_weight(std::size_t atom) const { return weights_.at(atom); }

    /// Throws DomainError when q is not measurable.
    Rational value(const StateSet& q) const;

    /// Index of the atom carrying all the mass, if there is one.
    std::optional<std::size_t> dirac_atom() const;

    friend bool operator==(const Measure& a, const Measure& b);
    /// Lexicographic on weights; only meaningful for measures over the same sigma-algebra.
    friend bool operator<(const Measure& a, const Measure& b) { return a.weights_ < b.weights_; }

private:
    SigmaPtr sigma_;
    std::vector<Rational> weights_;
};

/// Checks weights: one per atom, each in [0,1], summing to 1. Returns an error
/// message or nothing.
std::optional<std::string> check_weights(const SigmaAlgebra& sigma, const std::vector<Rational>& weights);

Rational measure_eval(const Measure& mu, const StateSet& q);

/// The measure giving 1 to exactly the measurable sets containing s.
Measure dirac(SigmaPtr sigma, State s);

/// The bound shapes used by the logic: >= q, > q, < q, <= q and open intervals.
struct BoundSpec {
    enum class Kind { AtLeast, Greater, Less, AtMost, Open };

    Kind kind = Kind::AtLeast;
    Rational lo;
    Rational hi;

    static BoundSpec at_least(Rational q) { return {Kind::AtLeast, std::move(q), Rational(1)}; }
    static BoundSpec greater(Rational q) { return {Kind::Greater, std::move(q), Rational(1)}; }
    static BoundSpec less(Rational q) { return {Kind::Less, Rational(0), std::move(q)}; }
    static BoundSpec at_most(Rational q) { return {Kind::AtMost, Rational(0), std::move(q)}; }
    /// Throws DomainError unless lo <= hi.
    static BoundSpec open(Rational lo, Rational hi);

    bool admits(const Rational& v) const;
};

/// mu(q) satisfies b, i.e. mu lies in the Giry generator for (q, b).
bool in_delta_set(const Measure& mu, const StateSet& q, const BoundSpec& b);

/// Values of a measure on the atoms of a reference sigma-algebra, in atom order.
struct Profile {
    std::vector<Rational> values;

    friend bool operator==(const Profile&, const Profile&) = default;
    friend bool operator<(const Profile& a, const Profile& b) { return a.values < b.values; }
};

/// Requires lambda to be a sub-sigma-algebra of mu's sigma-algebra.
Profile profile(const Measure& mu, const SigmaAlgebra& lambda);

/// mu and nu agree on every lambda-measurable set.
bool measures_related(const Measure& mu, const Measure& nu, const SigmaAlgebra& lambda);

/// Finite ordered set of distinct measures over one sigma-algebra.
class MeasurePool {
public:
    explicit MeasurePool(SigmaPtr sigma) : sigma_(std::move(sigma)) {}

    /// Adds mu unless an equal measure is present; returns its index either way.
    std::size_t add(const Measure& mu);
    std::optional<std::size_t> find(const Measure& mu) const;

    std::size_t size() const { return measures_.size(); }
    bool empty() const { return measures_.empty(); }
    const Measure& at(std::size_t i) const { return measures_.at(i); }
    const std::vector<Measure>& measures() const { return measures_; }
    const SigmaAlgebra& sigma() const { return *sigma_; }
    const SigmaPtr& sigma_ptr() const { return sigma_; }

    PoolSet empty_set() const { return PoolSet(size()); }
    PoolSet full_set() const { return PoolSet::full(size()); }

    /// Reorders measures lexicographically by weight; returns old index -> new index.
    std::vector<std::size_t> sort();

private:
    SigmaPtr sigma_;
    std::vector<Measure> measures_;
};

/// Pool measures grouped by equal profile over lambda. Classes are ordered by
/// their smallest member.
struct TraceClasses {
    std::vector<PoolSet> classes;
    std::vector<std::size_t> class_of;
    std::vector<Profile> profiles;  // one per class

    std::size_t size() const { return classes.size(); }
    /// Union of the classes selected by the bits of mask.
    PoolSet union_of(std::uint64_t mask) const;
    /// True iff xi is a union of classes.
    bool is_union_of_classes(const PoolSet& xi) const;
};

TraceClasses trace_classes(const MeasurePool& pool, const SigmaAlgebra& lambda);

}  // namespace nlmp
