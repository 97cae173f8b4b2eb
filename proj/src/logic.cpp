#include "nlmp/logic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "nlmp/bisim.hpp"
#include "nlmp/errors.hpp"

namespace nlmp {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

namespace {

bool compare(const Rational& v, Comparison cmp, const Rational& q) {
    switch (cmp) {
    case Comparison::AtLeast: return v >= q;
    case Comparison::Greater: return v > q;
    case Comparison::Less: return v < q;
    case Comparison::AtMost: return v <= q;
    }
    return false;
}

// Pool measures whose value on [[phi]] satisfies cmp q.
PoolSet bounded(const Nlmp& m, const StateSet& set, Comparison cmp, const Rational& q) {
    PoolSet out = m.pool().empty_set();
    for (std::size_t i = 0; i < m.pool().size(); ++i)
        if (compare(m.pool().at(i).value(set), cmp, q))
            out.insert(i);
    return out;
}

StateSet modal(const Nlmp& m, const std::string& label, const PoolSet& xi) {
    StateSet pre = hit_preimage(m, m.label_index(label), xi);
    if (!m.sigma().is_measurable(pre))
        throw PreconditionError("<" + label + "> leaves the sigma-algebra: the model is not a valid NLMP");
    return pre;
}

void require_valid(const Nlmp& m) {
    const ValidationReport report = nlmp_validate(m);
    if (const Finding* f = report.first_error())
        throw PreconditionError("invalid model: " + f->message);
}

}  // namespace

StateSet eval_state(const Nlmp& m, const StateFormula& phi) {
    return std::visit(overloaded{
                          [&](const ast::Top&) { return m.universe().full_set(); },
                          [&](const ast::And& a) { return eval_state(m, *a.left) & eval_state(m, *a.right); },
                          [&](const ast::Diamond& d) { return modal(m, d.label, eval_measure(m, *d.body)); },
                          [&](const ast::DiamondMulti& d) {
                              m.label_index(d.label);
                              PoolSet xi = m.pool().full_set();
                              for (const auto& c : d.constraints)
                                  xi = xi & bounded(m, eval_state(m, *c.formula), c.cmp, c.threshold);
                              return modal(m, d.label, xi);
                          },
                      },
                      phi.node);
}

PoolSet eval_measure(const Nlmp& m, const MeasureFormula& psi) {
    return std::visit(overloaded{
                          [&](const ast::Or& o) {
                              PoolSet out = m.pool().empty_set();
                              for (const auto& d : o.disjuncts)
                                  out = out | eval_measure(m, *d);
                              return out;
                          },
                          [&](const ast::Not& n) { return eval_measure(m, *n.body).complement(); },
                          [&](const ast::AtLeast& a) {
                              return bounded(m, eval_state(m, *a.formula), Comparison::AtLeast, a.threshold);
                          },
                          [&](const ast::Bound& b) { return bounded(m, eval_state(m, *b.formula), b.cmp, b.threshold); },
                      },
                      psi.node);
}

bool satisfies(const Nlmp& m, State s, const StateFormula& phi) {
    if (s >= m.state_count())
        throw DomainError("state index out of range");
    return eval_state(m, phi).contains(s);
}

bool satisfies(const Nlmp& m, std::string_view s, const StateFormula& phi) {
    return satisfies(m, m.universe().index(s), phi);
}

// ---------------------------------------------------------------------------

namespace {

MeasureFormulaPtr expand_bound(const Nlmp& m, const StateFormula& phi, Comparison cmp, const Rational& q) {
    StateFormulaPtr core = expand_sugar(m, phi);
    auto greater = [&](const Rational& r) {
        const StateSet set = eval_state(m, *core);
        std::set<Rational> values;
        for (const Measure& mu : m.pool().measures()) {
            Rational v = mu.value(set);
            if (v > r)
                values.insert(std::move(v));
        }
        std::vector<MeasureFormulaPtr> ds;
        for (const Rational& v : values)
            ds.push_back(at_least(core, v));
        return disj(std::move(ds));
    };
    switch (cmp) {
    case Comparison::AtLeast: return at_least(core, q);
    case Comparison::Greater: return greater(q);
    case Comparison::Less: return negate(at_least(core, q));
    case Comparison::AtMost: return negate(greater(q));
    }
    throw std::logic_error("unknown comparison");
}

}  // namespace

StateFormulaPtr expand_sugar(const Nlmp& m, const StateFormula& phi) {
    return std::visit(overloaded{
                          [](const ast::Top&) { return top(); },
                          [&](const ast::And& a) { return conj(expand_sugar(m, *a.left), expand_sugar(m, *a.right)); },
                          [&](const ast::Diamond& d) { return diamond(d.label, expand_sugar(m, *d.body)); },
                          [&](const ast::DiamondMulti& d) {
                              std::vector<MeasureFormulaPtr> bounds;
                              for (const auto& c : d.constraints)
                                  bounds.push_back(expand_bound(m, *c.formula, c.cmp, c.threshold));
                              return diamond(d.label, measure_conj(std::move(bounds)));
                          },
                      },
                      phi.node);
}

MeasureFormulaPtr expand_sugar(const Nlmp& m, const MeasureFormula& psi) {
    return std::visit(overloaded{
                          [&](const ast::Or& o) {
                              std::vector<MeasureFormulaPtr> ds;
                              for (const auto& d : o.disjuncts)
                                  ds.push_back(expand_sugar(m, *d));
                              return disj(std::move(ds));
                          },
                          [&](const ast::Not& n) { return negate(expand_sugar(m, *n.body)); },
                          [&](const ast::AtLeast& a) { return at_least(expand_sugar(m, *a.formula), a.threshold); },
                          [&](const ast::Bound& b) { return expand_bound(m, *b.formula, b.cmp, b.threshold); },
                      },
                      psi.node);
}

// ---------------------------------------------------------------------------
// multi-constraint refinement

namespace {

struct Known {
    StateFormulaPtr formula;
    StateSet set;
};

// For each block, the smallest set cut out by known formulas containing it,
// with a formula for it.
std::vector<Known> block_envelopes(const Partition& p, const std::vector<Known>& known) {
    std::vector<Known> out;
    for (const StateSet& block : p.blocks()) {
        Known env = known.front();  // T
        for (const Known& k : known) {
            if (!block.is_subset_of(k.set))
                continue;
            const StateSet narrowed = env.set & k.set;
            if (narrowed == env.set)
                continue;
            env.formula = std::holds_alternative<ast::Top>(env.formula->node) ? k.formula : conj(env.formula, k.formula);
            env.set = narrowed;
        }
        out.push_back(std::move(env));
    }
    // smallest first, block order among equals
    std::stable_sort(out.begin(), out.end(), [](const Known& a, const Known& b) { return a.set.size() < b.set.size(); });
    return out;
}

PoolSet classes_hit(const PoolSet& row, const TraceClasses& tc) {
    PoolSet hit(tc.size());
    row.for_each([&](std::size_t i) { hit.insert(tc.class_of[i]); });
    return hit;
}

// A formula true at s and false at t, given that they hit different classes for some label.
StateFormulaPtr separate(const Nlmp& m, State s, State t, const TraceClasses& tc, const std::vector<Known>& envelopes,
                         bool& flipped) {
    for (LabelId a = 0; a < m.label_count(); ++a) {
        const PoolSet hs = classes_hit(m.transitions(s, a), tc);
        const PoolSet ht = classes_hit(m.transitions(t, a), tc);
        if (hs == ht)
            continue;
        flipped = (hs - ht).empty();
        const State here = flipped ? t : s;
        const State there = flipped ? s : t;
        const PoolSet missing = flipped ? ht - hs : hs - ht;
        std::size_t mu = 0;
        bool found = false;
        m.transitions(here, a).for_each([&](std::size_t i) {
            if (!found && missing.contains(tc.class_of[i])) {
                mu = i;
                found = true;
            }
        });
        const PoolSet& others = m.transitions(there, a);
        if (others.empty())
            return diamond_multi(m.labels()[a], {ast::Constraint{Comparison::Greater, Rational(0), top()}});

        std::vector<ast::Constraint> constraints;
        std::vector<std::pair<Comparison, std::pair<Rational, std::size_t>>> seen;
        others.for_each([&](std::size_t nu) {
            for (std::size_t e = 0; e < envelopes.size(); ++e) {
                const Rational x = m.pool().at(mu).value(envelopes[e].set);
                const Rational y = m.pool().at(nu).value(envelopes[e].set);
                if (x == y)
                    continue;
                const Comparison cmp = x > y ? Comparison::Greater : Comparison::Less;
                Rational q = midpoint(x, y);
                auto key = std::make_pair(cmp, std::make_pair(q, e));
                if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                    seen.push_back(key);
                    constraints.push_back({cmp, std::move(q), envelopes[e].formula});
                }
                return;
            }
            throw std::logic_error("measures with different profiles agree on every known set");
        });
        return diamond_multi(m.labels()[a], std::move(constraints));
    }
    throw std::logic_error("states split without a differing label");
}

}  // namespace

LfRefinement refine_lf(const Nlmp& m) {
    require_valid(m);
    const std::size_t n = m.state_count();
    LfRefinement out{Partition::single_block(n), {}, {}};
    out.trace.push_back(out.partition);
    std::vector<Known> known{{top(), m.universe().full_set()}};

    for (std::size_t round = 1;; ++round) {
        const SigmaAlgebra lambda = sigma_of_partition(m.sigma(), out.partition);
        const TraceClasses tc = trace_classes(m.pool(), lambda);
        std::vector<std::vector<PoolSet>> keys(n);
        for (State s = 0; s < n; ++s) {
            keys[s].emplace_back(n, std::initializer_list<std::size_t>{out.partition.block_of(s)});
            for (LabelId a = 0; a < m.label_count(); ++a)
                keys[s].push_back(classes_hit(m.transitions(s, a), tc));
        }
        Partition refined = Partition::from_keys(keys);
        if (refined == out.partition)
            break;

        const std::vector<Known> envelopes = block_envelopes(out.partition, known);
        for (const StateSet& parent : out.partition.blocks()) {
            std::vector<const StateSet*> children;
            for (const StateSet& b : refined.blocks())
                if (b.is_subset_of(parent))
                    children.push_back(&b);
            for (std::size_t i = 0; i < children.size(); ++i) {
                for (std::size_t j = i + 1; j < children.size(); ++j) {
                    const State s = children[i]->first();
                    const State t = children[j]->first();
                    bool flipped = false;
                    StateFormulaPtr phi = separate(m, s, t, tc, envelopes, flipped);
                    const StateSet set = eval_state(m, *phi);
                    if (set.contains(s) == set.contains(t))
                        throw std::logic_error("synthesized formula " + to_string(*phi) + " does not separate");
                    SplitRecord rec{round, flipped ? *children[j] : *children[i], flipped ? *children[i] : *children[j],
                                    phi};
                    out.splits.push_back(std::move(rec));
                    if (std::none_of(known.begin(), known.end(), [&](const Known& k) { return k.set == set; }))
                        known.push_back({phi, set});
                }
            }
        }
        out.partition = std::move(refined);
        out.trace.push_back(out.partition);
    }
    return out;
}

std::string_view to_string(Fragment f) { return f == Fragment::L ? "L" : "Lf"; }

namespace {

const SplitRecord* split_of(const LfRefinement& r, State s, State t) {
    for (const SplitRecord& rec : r.splits)
        if ((rec.left.contains(s) && rec.right.contains(t)) || (rec.left.contains(t) && rec.right.contains(s)))
            return &rec;
    return nullptr;
}

void check_separates(const Nlmp& m, State s, State t, const StateFormula& phi) {
    const StateSet set = eval_state(m, phi);
    if (set.contains(s) == set.contains(t))
        throw std::logic_error("formula " + to_string(phi) + " does not separate " + m.universe().name(s) + " and " +
                               m.universe().name(t));
}

}  // namespace

EquivalenceReport logical_equivalence(const Nlmp& m, Fragment fragment) {
    const LfRefinement lf = refine_lf(m);
    EquivalenceReport report{fragment, fragment == Fragment::L ? smallest_stable_sigma(m).partition : lf.partition, {}};
    for (State s = 0; s < m.state_count(); ++s) {
        for (State t = s + 1; t < m.state_count(); ++t) {
            if (report.partition.same_block(s, t))
                continue;
            const SplitRecord* rec = split_of(lf, s, t);
            if (!rec)
                throw std::logic_error("no formula separates " + m.universe().name(s) + " and " +
                                       m.universe().name(t));
            check_separates(m, s, t, *rec->formula);
            report.formulas.push_back({s, t, rec->formula});
        }
    }
    return report;
}

std::optional<StateFormulaPtr> distinguish(const Nlmp& m, State s, State t) {
    if (s >= m.state_count() || t >= m.state_count())
        throw DomainError("state index out of range");
    if (!m.sigma().is_powerset())
        throw UnsupportedError("distinguishing formulas are only synthesized over the powerset sigma-algebra");
    const LfRefinement lf = refine_lf(m);
    if (lf.partition.same_block(s, t))
        return std::nullopt;
    const SplitRecord* rec = split_of(lf, s, t);
    if (!rec)
        throw std::logic_error("no split separates the two states");
    check_separates(m, s, t, *rec->formula);
    return rec->formula;
}

}  // namespace nlmp
