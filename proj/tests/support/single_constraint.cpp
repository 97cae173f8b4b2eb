#include "single_constraint.hpp"

#include <algorithm>

namespace single {

using nlmp::Comparison;
using nlmp::Rational;
using oracle::Mask;

namespace {

bool compare(const Rational& v, Comparison cmp, const Rational& q) {
    return cmp == Comparison::Greater ? v > q : v < q;
}

/// States with some a-measure satisfying every (cmp, q, set) constraint.
Mask hit(const nlmp::Nlmp& m, nlmp::LabelId a,
         const std::vector<std::tuple<Comparison, Rational, Mask>>& constraints) {
    Mask out = 0;
    for (nlmp::State u = 0; u < m.state_count(); ++u) {
        bool found = false;
        m.transitions(u, a).for_each([&](std::size_t i) {
            bool ok = true;
            for (const auto& [cmp, q, set] : constraints)
                ok = ok && compare(oracle::value(m.pool().at(i), set), cmp, q);
            found = found || ok;
        });
        if (found)
            out |= Mask{1} << u;
    }
    return out;
}

bool splits(Mask set, nlmp::State s, nlmp::State t) {
    return ((set >> s) & 1u) != ((set >> t) & 1u);
}

}  // namespace

std::vector<Rational> thresholds(const nlmp::Nlmp& m, Mask q) {
    std::vector<Rational> values{Rational(0), Rational(1)};
    for (std::size_t i = 0; i < m.pool().size(); ++i)
        values.push_back(oracle::value(m.pool().at(i), q));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    const std::size_t n = values.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        values.push_back((values[i] + values[i + 1]) / Rational(2));
    std::sort(values.begin(), values.end());
    return values;
}

SearchResult search(const nlmp::Nlmp& m, nlmp::State s, nlmp::State t, std::size_t depth) {
    const Mask full = (Mask{1} << m.state_count()) - 1;
    SearchResult r;
    r.definable.emplace(full, nlmp::top());
    const Comparison cmps[] = {Comparison::Greater, Comparison::Less};

    for (std::size_t round = 0; round < depth; ++round) {
        std::map<Mask, nlmp::StateFormulaPtr> next = r.definable;
        for (const auto& [q, phi] : r.definable)
            for (nlmp::LabelId a = 0; a < m.label_count(); ++a)
                for (const Rational& v : thresholds(m, q))
                    for (Comparison cmp : cmps) {
                        const Mask set = hit(m, a, {{cmp, v, q}});
                        if (!next.count(set))
                            next.emplace(set, nlmp::diamond_multi(m.labels()[a], {{cmp, v, phi}}));
                    }
        // conjunctions
        bool grew = true;
        while (grew) {
            grew = false;
            const std::map<Mask, nlmp::StateFormulaPtr> snapshot = next;
            for (const auto& [x, fx] : snapshot)
                for (const auto& [y, fy] : snapshot)
                    if (!next.count(x & y)) {
                        next.emplace(x & y, nlmp::conj(fx, fy));
                        grew = true;
                    }
        }
        r.definable = std::move(next);
    }
    r.sets = r.definable.size();

    for (const auto& [q, phi] : r.definable)
        for (nlmp::LabelId a = 0; a < m.label_count(); ++a)
            for (const Rational& v : thresholds(m, q))
                for (Comparison cmp : cmps) {
                    ++r.formulas;
                    r.separated = r.separated || splits(hit(m, a, {{cmp, v, q}}), s, t);
                }
    for (const auto& [q1, phi1] : r.definable)
        for (const auto& [q2, phi2] : r.definable)
            for (nlmp::LabelId a = 0; a < m.label_count() && !r.two_constraint_separated; ++a)
                for (const Rational& v1 : thresholds(m, q1))
                    for (const Rational& v2 : thresholds(m, q2))
                        r.two_constraint_separated =
                            r.two_constraint_separated ||
                            splits(hit(m, a, {{Comparison::Greater, v1, q1}, {Comparison::Less, v2, q2}}), s, t);
    return r;
}

}  // namespace single
