#include "nlmp/bisim.hpp"

#include <algorithm>

#include "nlmp/errors.hpp"

namespace nlmp {

std::string to_string(BisimKind kind) {
    switch (kind) {
    case BisimKind::Traditional: return "traditional";
    case BisimKind::State: return "state";
    case BisimKind::Event: return "event";
    }
    return "?";
}

namespace {

void require_symmetric(const Nlmp& m, const Relation& r) {
    if (r.universe_size() != m.state_count())
        throw DomainError("relation over a different universe");
    if (!r.is_symmetric())
        throw PreconditionError("relation must be symmetric");
}

void require_valid(const Nlmp& m) {
    const ValidationReport report = nlmp_validate(m);
    if (const Finding* f = report.first_error())
        throw PreconditionError("invalid model: " + f->message);
}

void require_non_probabilistic(const Nlmp& m) {
    if (!is_non_probabilistic(m))
        throw PreconditionError("model is not non-probabilistic");
}

std::vector<Profile> pool_profiles(const Nlmp& m, const SigmaAlgebra& lambda) {
    std::vector<Profile> out;
    out.reserve(m.pool().size());
    for (const Measure& mu : m.pool().measures())
        out.push_back(profile(mu, lambda));
    return out;
}

// First measure of `from` without a partner of equal profile in `to`.
std::optional<std::size_t> unmatched(const PoolSet& from, const PoolSet& to, const std::vector<Profile>& profiles) {
    std::optional<std::size_t> missing;
    from.for_each([&](std::size_t i) {
        if (missing)
            return;
        bool found = false;
        to.for_each([&](std::size_t j) { found = found || profiles[i] == profiles[j]; });
        if (!found)
            missing = i;
    });
    return missing;
}

// Class ids hit by a transition set.
PoolSet classes_hit(const PoolSet& row, const TraceClasses& tc) {
    PoolSet hit(tc.size());
    row.for_each([&](std::size_t i) { hit.insert(tc.class_of[i]); });
    return hit;
}

}  // namespace

CheckResult is_traditional_bisim(const Nlmp& m, const Relation& r) {
    require_symmetric(m, r);
    const SigmaAlgebra sigma_r = sigma_of_relation(m.sigma(), r);
    const std::vector<Profile> profiles = pool_profiles(m, sigma_r);
    for (auto [s, t] : r.pairs()) {
        for (LabelId a = 0; a < m.label_count(); ++a) {
            if (auto mu = unmatched(m.transitions(s, a), m.transitions(t, a), profiles)) {
                return {false, BisimWitness{s, t, a, *mu, {}, {},
                                            "a measure of T_" + m.labels()[a] + "(" + m.universe().name(s) +
                                                ") has no counterpart in T_" + m.labels()[a] + "(" +
                                                m.universe().name(t) + ") agreeing on every R-closed measurable set"}};
            }
        }
    }
    return {};
}

CheckResult is_state_bisim(const Nlmp& m, const Relation& r, CheckMethod method) {
    require_symmetric(m, r);
    const SigmaAlgebra sigma_r = sigma_of_relation(m.sigma(), r);
    const TraceClasses tc = trace_classes(m.pool(), sigma_r);

    auto failure = [&](State s, State t, LabelId a, PoolSet xi) {
        return CheckResult{false, BisimWitness{s, t, a, {}, std::move(xi), {},
                                               "T_" + m.labels()[a] + "(" + m.universe().name(s) + ") and T_" +
                                                   m.labels()[a] + "(" + m.universe().name(t) +
                                                   ") disagree on hitting the witness set of measures"}};
    };

    if (method == CheckMethod::Optimized) {
        for (auto [s, t] : r.pairs()) {
            for (LabelId a = 0; a < m.label_count(); ++a) {
                const PoolSet hs = classes_hit(m.transitions(s, a), tc);
                const PoolSet ht = classes_hit(m.transitions(t, a), tc);
                if (hs == ht)
                    continue;
                const std::size_t c = ((hs - ht) | (ht - hs)).first();
                return failure(s, t, a, tc.classes[c]);
            }
        }
        return {};
    }

    if (tc.size() > 20)
        throw UnsupportedError("too many profile classes for the direct state-bisimulation check");
    const std::uint64_t limit = std::uint64_t{1} << tc.size();
    for (auto [s, t] : r.pairs()) {
        for (LabelId a = 0; a < m.label_count(); ++a) {
            const PoolSet& ts = m.transitions(s, a);
            const PoolSet& tt = m.transitions(t, a);
            for (std::uint64_t mask = 1; mask < limit; ++mask) {
                PoolSet xi = tc.union_of(mask);
                if (ts.intersects(xi) != tt.intersects(xi))
                    return failure(s, t, a, std::move(xi));
            }
        }
    }
    return {};
}

CheckResult is_event_bisim(const Nlmp& m, const SigmaAlgebra& lambda, CheckMethod method) {
    if (!sigma_is_sub(lambda, m.sigma()))
        throw PreconditionError("not a sub-sigma-algebra of the model's sigma-algebra");
    const TraceClasses tc = trace_classes(m.pool(), lambda);

    auto test = [&](LabelId a, const PoolSet& xi) -> std::optional<CheckResult> {
        StateSet pre = hit_preimage(m, a, xi);
        if (lambda.is_measurable(pre))
            return std::nullopt;
        return CheckResult{false, BisimWitness{{}, {}, a, {}, xi, pre,
                                               "the hit-preimage under T_" + m.labels()[a] +
                                                   " of the witness set of measures is not measurable"}};
    };

    for (LabelId a = 0; a < m.label_count(); ++a) {
        if (method == CheckMethod::Optimized) {
            for (const PoolSet& xi : tc.classes)
                if (auto fail = test(a, xi))
                    return *fail;
        } else {
            if (tc.size() > 20)
                throw UnsupportedError("too many profile classes for the direct event-bisimulation check");
            const std::uint64_t limit = std::uint64_t{1} << tc.size();
            for (std::uint64_t mask = 1; mask < limit; ++mask)
                if (auto fail = test(a, tc.union_of(mask)))
                    return *fail;
        }
    }
    return {};
}

BisimReport largest_traditional(const Nlmp& m) {
    require_valid(m);
    BisimReport report{BisimKind::Traditional, Partition::single_block(m.state_count()), {}, {}};
    report.trace.push_back(report.partition);
    while (true) {
        const SigmaAlgebra sigma_r = sigma_of_partition(m.sigma(), report.partition);
        const std::vector<Profile> profiles = pool_profiles(m, sigma_r);
        Relation next(m.state_count());
        for (State s = 0; s < m.state_count(); ++s) {
            report.partition.block(report.partition.block_of(s)).for_each([&](State t) {
                for (LabelId a = 0; a < m.label_count(); ++a) {
                    const PoolSet& ts = m.transitions(s, a);
                    const PoolSet& tt = m.transitions(t, a);
                    if (unmatched(ts, tt, profiles) || unmatched(tt, ts, profiles))
                        return;
                }
                next.insert(s, t);
            });
        }
        Partition refined = next.to_partition();
        if (refined == report.partition)
            break;
        report.partition = std::move(refined);
        report.trace.push_back(report.partition);
    }
    return report;
}

BisimReport largest_state(const Nlmp& m) {
    require_valid(m);
    BisimReport report{BisimKind::State, Partition::single_block(m.state_count()), {}, {}};
    report.trace.push_back(report.partition);
    while (true) {
        const SigmaAlgebra sigma_r = sigma_of_partition(m.sigma(), report.partition);
        const TraceClasses tc = trace_classes(m.pool(), sigma_r);
        // signature: current block, then the classes hit per label
        std::vector<std::vector<PoolSet>> keys(m.state_count());
        for (State s = 0; s < m.state_count(); ++s) {
            keys[s].emplace_back(m.state_count(), std::initializer_list<std::size_t>{report.partition.block_of(s)});
            for (LabelId a = 0; a < m.label_count(); ++a)
                keys[s].push_back(classes_hit(m.transitions(s, a), tc));
        }
        Partition refined = Partition::from_keys(keys);
        if (refined == report.partition)
            break;
        report.partition = std::move(refined);
        report.trace.push_back(report.partition);
    }
    return report;
}

BisimReport smallest_stable_sigma(const Nlmp& m) {
    require_valid(m);
    SigmaAlgebra lambda = SigmaAlgebra::trivial(m.sigma().universe_ptr());
    BisimReport report{BisimKind::Event, lambda.atoms(), {}, {}};
    report.trace.push_back(lambda.atoms());
    while (true) {
        const TraceClasses tc = trace_classes(m.pool(), lambda);
        std::vector<StateSet> generators = lambda.atoms().blocks();
        for (LabelId a = 0; a < m.label_count(); ++a)
            for (const PoolSet& xi : tc.classes)
                generators.push_back(hit_preimage(m, a, xi));
        SigmaAlgebra next = sigma_generate(m.sigma().universe_ptr(), generators);
        if (next.atoms() == lambda.atoms())
            break;
        lambda = std::move(next);
        report.trace.push_back(lambda.atoms());
    }
    report.partition = lambda.atoms();
    report.sigma = std::move(lambda);
    return report;
}

ComparisonReport compare_bisims(const Nlmp& m) {
    ComparisonReport c;
    c.traditional = largest_traditional(m);
    c.state = largest_state(m);
    c.event = smallest_stable_sigma(m);
    c.traditional_in_state = c.state.partition.coarsens(c.traditional.partition);
    c.state_in_event = c.event.partition.coarsens(c.state.partition);
    c.all_equal = c.traditional.partition == c.state.partition && c.state.partition == c.event.partition;
    c.equality_expected = m.sigma().is_powerset();
    return c;
}

bool np_traditional_check(const Nlmp& m, const Relation& r) {
    require_non_probabilistic(m);
    require_symmetric(m, r);
    const SigmaAlgebra sigma_r = sigma_of_relation(m.sigma(), r);
    const Partition& sigma_atoms = m.sigma().atoms();
    // target state of each Dirac pool measure
    std::vector<State> target(m.pool().size());
    for (std::size_t i = 0; i < m.pool().size(); ++i)
        target[i] = sigma_atoms.block(*m.pool().at(i).dirac_atom()).first();

    for (auto [s, t] : r.pairs()) {
        for (LabelId a = 0; a < m.label_count(); ++a) {
            bool ok = true;
            m.transitions(s, a).for_each([&](std::size_t u) {
                bool found = false;
                m.transitions(t, a).for_each([&](std::size_t v) {
                    found = found || sigma_r.atoms().same_block(target[u], target[v]);
                });
                ok = ok && found;
            });
            if (!ok)
                return false;
        }
    }
    return true;
}

bool np_state_check(const Nlmp& m, const Relation& r) {
    require_non_probabilistic(m);
    require_symmetric(m, r);
    const SigmaAlgebra sigma_r = sigma_of_relation(m.sigma(), r);
    const std::vector<StateSet> sets = sigma_r.measurable_sets();
    for (LabelId a = 0; a < m.label_count(); ++a) {
        for (const StateSet& q : sets) {
            const StateSet reach = diamond(m, a, q);
            for (auto [s, t] : r.pairs())
                if (reach.contains(s) != reach.contains(t))
                    return false;
        }
    }
    return true;
}

bool np_event_check(const Nlmp& m, const SigmaAlgebra& lambda) {
    require_non_probabilistic(m);
    if (!sigma_is_sub(lambda, m.sigma()))
        throw PreconditionError("not a sub-sigma-algebra of the model's sigma-algebra");
    for (LabelId a = 0; a < m.label_count(); ++a)
        for (const StateSet& q : lambda.measurable_sets())
            if (!lambda.is_measurable(diamond(m, a, q)))
                return false;
    return true;
}

Partition lmp_bisimilarity(const Lmp& l) {
    Partition current = Partition::single_block(l.state_count());
    while (true) {
        const SigmaAlgebra closed = sigma_of_partition(l.sigma(), current);
        const std::vector<StateSet> sets = closed.measurable_sets();
        // key: current block, then per label either nothing or the values on every closed set
        std::vector<std::vector<std::optional<std::vector<Rational>>>> keys(l.state_count());
        for (State s = 0; s < l.state_count(); ++s) {
            keys[s].emplace_back(std::vector<Rational>{Rational(static_cast<std::int64_t>(current.block_of(s)))});
            for (LabelId a = 0; a < l.label_count(); ++a) {
                const Measure* k = l.kernel(s, a);
                if (!k) {
                    keys[s].emplace_back(std::nullopt);
                    continue;
                }
                std::vector<Rational> values;
                values.reserve(sets.size());
                for (const StateSet& q : sets)
                    values.push_back(k->value(q));
                keys[s].emplace_back(std::move(values));
            }
        }
        Partition refined = Partition::from_keys(keys);
        if (refined == current)
            return current;
        current = std::move(refined);
    }
}

}  // namespace nlmp
