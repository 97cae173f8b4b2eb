#include "nlmp/measures.hpp"

#include <algorithm>
#include <numeric>

#include "nlmp/errors.hpp"

namespace nlmp {

std::optional<std::string> check_weights(const SigmaAlgebra& sigma, const std::vector<Rational>& weights) {
    if (weights.size() != sigma.atom_count())
        return "expected " + std::to_string(sigma.atom_count()) + " atom weights, got " +
               std::to_string(weights.size());
    Rational total;
    for (const auto& w : weights) {
        if (w < Rational(0) || w > Rational(1))
            return "weight " + w.str() + " outside [0,1]";
        total += w;
    }
    if (total != Rational(1))
        return "weights sum to " + total.str();
    return std::nullopt;
}

Measure::Measure(SigmaPtr sigma, std::vector<Rational> atom_weights)
    : sigma_(std::move(sigma)), weights_(std::move(atom_weights)) {
    if (!sigma_)
        throw DomainError("measure without sigma-algebra");
    if (auto err = check_weights(*sigma_, weights_))
        throw DomainError("ill-formed measure: " + *err);
}

Measure Measure::from_state_weights(SigmaPtr sigma, const std::vector<std::pair<State, Rational>>& weights) {
    std::vector<Rational> atom_weights(sigma->atom_count());
    for (const auto& [s, w] : weights) {
        if (s >= sigma->universe().size())
            throw DomainError("weight on a state outside the universe");
        atom_weights[sigma->atoms().block_of(s)] += w;
    }
    return Measure(std::move(sigma), std::move(atom_weights));
}

Rational Measure::value(const StateSet& q) const {
    if (!sigma_->is_measurable(q))
        throw DomainError("set is not measurable");
    Rational v;
    const Partition& atoms = sigma_->atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms.block(i).intersects(q))
            v += weights_[i];
    return v;
}

std::optional<std::size_t> Measure::dirac_atom() const {
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] == Rational(1))
            return i;
    return std::nullopt;
}

bool operator==(const Measure& a, const Measure& b) {
    return a.weights_ == b.weights_ && (a.sigma_ == b.sigma_ || *a.sigma_ == *b.sigma_);
}

Rational measure_eval(const Measure& mu, const StateSet& q) { return mu.value(q); }

Measure dirac(SigmaPtr sigma, State s) {
    if (s >= sigma->universe().size())
        throw DomainError("unknown state for Dirac measure");
    std::vector<Rational> w(sigma->atom_count());
    w[sigma->atoms().block_of(s)] = Rational(1);
    return Measure(std::move(sigma), std::move(w));
}

BoundSpec BoundSpec::open(Rational lo, Rational hi) {
    if (hi < lo)
        throw DomainError("interval bounds out of order");
    return {Kind::Open, std::move(lo), std::move(hi)};
}

bool BoundSpec::admits(const Rational& v) const {
    switch (kind) {
    case Kind::AtLeast: return v >= lo;
    case Kind::Greater: return v > lo;
    case Kind::Less: return v < hi;
    case Kind::AtMost: return v <= hi;
    case Kind::Open: return lo < v && v < hi;
    }
    return false;
}

bool in_delta_set(const Measure& mu, const StateSet& q, const BoundSpec& b) { return b.admits(mu.value(q)); }

Profile profile(const Measure& mu, const SigmaAlgebra& lambda) {
    if (!sigma_is_sub(lambda, mu.sigma()))
        throw PreconditionError("profile: not a sub-sigma-algebra of the measure's sigma-algebra");
    Profile p;
    p.values.resize(lambda.atom_count());
    const Partition& atoms = mu.sigma().atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i)
        p.values[lambda.atoms().block_of(atoms.block(i).first())] += mu.atom_weight(i);
    return p;
}

bool measures_related(const Measure& mu, const Measure& nu, const SigmaAlgebra& lambda) {
    return profile(mu, lambda) == profile(nu, lambda);
}

std::size_t MeasurePool::add(const Measure& mu) {
    if (!(mu.sigma_ptr() == sigma_ || mu.sigma() == *sigma_))
        throw DomainError("pool measures must share the pool's sigma-algebra");
    if (auto i = find(mu))
        return *i;
    measures_.push_back(mu);
    return measures_.size() - 1;
}

std::optional<std::size_t> MeasurePool::find(const Measure& mu) const {
    for (std::size_t i = 0; i < measures_.size(); ++i)
        if (measures_[i].weights() == mu.weights())
            return i;
    return std::nullopt;
}

std::vector<std::size_t> MeasurePool::sort() {
    std::vector<std::size_t> order(measures_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return measures_[a] < measures_[b]; });
    std::vector<Measure> sorted;
    std::vector<std::size_t> new_index(measures_.size());
    sorted.reserve(measures_.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        new_index[order[k]] = k;
        sorted.push_back(measures_[order[k]]);
    }
    measures_ = std::move(sorted);
    return new_index;
}

PoolSet TraceClasses::union_of(std::uint64_t mask) const {
    PoolSet xi(class_of.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (mask >> i & 1u)
            xi |= classes[i];
    return xi;
}

bool TraceClasses::is_union_of_classes(const PoolSet& xi) const {
    for (const auto& c : classes)
        if (c.intersects(xi) && !c.is_subset_of(xi))
            return false;
    return true;
}

TraceClasses trace_classes(const MeasurePool& pool, const SigmaAlgebra& lambda) {
    TraceClasses tc;
    tc.class_of.resize(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        Profile p = profile(pool.at(i), lambda);
        auto it = std::find(tc.profiles.begin(), tc.profiles.end(), p);
        std::size_t c = static_cast<std::size_t>(it - tc.profiles.begin());
        if (it == tc.profiles.end()) {
            tc.profiles.push_back(std::move(p));
            tc.classes.emplace_back(pool.size());
        }
        tc.classes[c].insert(i);
        tc.class_of[i] = c;
    }
    return tc;
}

}  // namespace nlmp
