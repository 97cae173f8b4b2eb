#include "nlmp/model.hpp"

#include <algorithm>

#include "nlmp/errors.hpp"

namespace nlmp {

namespace {

LabelId find_label(const std::vector<std::string>& labels, std::string_view a) {
    auto it = std::find(labels.begin(), labels.end(), a);
    if (it == labels.end())
        throw DomainError("unknown label '" + std::string(a) + "'");
    return static_cast<LabelId>(it - labels.begin());
}

void check_labels(const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty())
            throw DomainError("empty label");
        for (std::size_t j = 0; j < i; ++j)
            if (labels[i] == labels[j])
                throw DomainError("duplicate label '" + labels[i] + "'");
    }
}

}  // namespace

Nlmp::Builder::Builder(SigmaPtr sigma, std::vector<std::string> labels)
    : sigma_(std::move(sigma)), labels_(std::move(labels)), pool_(sigma_) {
    check_labels(labels_);
    rows_.assign(labels_.size(), std::vector<std::vector<std::size_t>>(sigma_->universe().size()));
}

LabelId Nlmp::Builder::label_index(std::string_view a) const { return find_label(labels_, a); }

Nlmp::Builder& Nlmp::Builder::add(State s, LabelId a, const Measure& mu) {
    if (a >= labels_.size())
        throw DomainError("label index out of range");
    if (s >= sigma_->universe().size())
        throw DomainError("state index out of range");
    rows_[a][s].push_back(pool_.add(mu));
    return *this;
}

Nlmp::Builder& Nlmp::Builder::add(std::string_view s, std::string_view a, const Measure& mu) {
    return add(sigma_->universe().index(s), label_index(a), mu);
}

Nlmp Nlmp::Builder::build() && {
    const std::vector<std::size_t> remap = pool_.sort();
    std::vector<std::vector<PoolSet>> rows(labels_.size());
    for (LabelId a = 0; a < labels_.size(); ++a) {
        rows[a].assign(sigma_->universe().size(), PoolSet(pool_.size()));
        for (State s = 0; s < rows_[a].size(); ++s)
            for (std::size_t old : rows_[a][s])
                rows[a][s].insert(remap[old]);
    }
    return Nlmp(std::move(labels_), std::move(pool_), std::move(rows));
}

Nlmp::Nlmp(std::vector<std::string> labels, MeasurePool pool, std::vector<std::vector<PoolSet>> rows)
    : labels_(std::move(labels)), pool_(std::move(pool)), rows_(std::move(rows)) {}

LabelId Nlmp::label_index(std::string_view a) const { return find_label(labels_, a); }

const PoolSet& Nlmp::transitions(State s, LabelId a) const {
    if (a >= rows_.size())
        throw DomainError("label index out of range");
    if (s >= state_count())
        throw DomainError("state index out of range");
    return rows_[a][s];
}

std::size_t Nlmp::max_branching() const {
    std::size_t k = 0;
    for (const auto& row : rows_)
        for (const auto& t : row)
            k = std::max(k, t.size());
    return k;
}

bool operator==(const Nlmp& a, const Nlmp& b) {
    if (!(a.sigma() == b.sigma()) || a.labels_ != b.labels_ || a.pool_.size() != b.pool_.size())
        return false;
    for (std::size_t i = 0; i < a.pool_.size(); ++i)
        if (a.pool_.at(i).weights() != b.pool_.at(i).weights())
            return false;
    return a.rows_ == b.rows_;
}

// ---------------------------------------------------------------------------

Lmp::Builder::Builder(SigmaPtr sigma, std::vector<std::string> labels)
    : sigma_(std::move(sigma)), labels_(std::move(labels)) {
    check_labels(labels_);
    kernels_.assign(labels_.size(), std::vector<std::optional<Measure>>(sigma_->universe().size()));
}

LabelId Lmp::Builder::label_index(std::string_view a) const { return find_label(labels_, a); }

Lmp::Builder& Lmp::Builder::set(State s, LabelId a, const Measure& mu) {
    if (a >= labels_.size())
        throw DomainError("label index out of range");
    if (s >= sigma_->universe().size())
        throw DomainError("state index out of range");
    if (!(mu.sigma() == *sigma_))
        throw DomainError("kernel measure over a different sigma-algebra");
    auto& slot = kernels_[a][s];
    if (slot)
        throw DomainError("LMP kernel for state '" + sigma_->universe().name(s) + "' and label '" + labels_[a] +
                          "' defined twice");
    slot = mu;
    return *this;
}

Lmp::Builder& Lmp::Builder::set(std::string_view s, std::string_view a, const Measure& mu) {
    return set(sigma_->universe().index(s), label_index(a), mu);
}

Lmp Lmp::Builder::build() && { return Lmp(std::move(sigma_), std::move(labels_), std::move(kernels_)); }

Lmp::Lmp(SigmaPtr sigma, std::vector<std::string> labels, std::vector<std::vector<std::optional<Measure>>> kernels)
    : sigma_(std::move(sigma)), labels_(std::move(labels)), kernels_(std::move(kernels)) {}

const Measure* Lmp::kernel(State s, LabelId a) const {
    const auto& k = kernels_.at(a).at(s);
    return k ? &*k : nullptr;
}

// ---------------------------------------------------------------------------

bool ValidationReport::valid() const { return first_error() == nullptr; }

const Finding* ValidationReport::first_error() const {
    for (const auto& f : findings)
        if (f.severity == Finding::Severity::Error)
            return &f;
    return nullptr;
}

namespace {

void check_pool_measures(const Nlmp& m, ValidationReport& report) {
    for (std::size_t i = 0; i < m.pool().size(); ++i)
        if (auto err = check_weights(m.sigma(), m.pool().at(i).weights()))
            report.findings.push_back({Finding::Severity::Error, {}, {}, {}, {},
                                       "measure #" + std::to_string(i) + ": " + *err});
}

void warn_unused_labels(const Nlmp& m, ValidationReport& report) {
    for (LabelId a = 0; a < m.label_count(); ++a)
        if (hit_preimage(m, a, m.pool().full_set()).empty())
            report.findings.push_back({Finding::Severity::Warning, {}, a, {}, {},
                                       "label '" + m.labels()[a] + "' is never enabled"});
}

Finding preimage_failure(const Nlmp& m, LabelId a, const PoolSet& xi, const StateSet& pre) {
    return {Finding::Severity::Error, pre.first(), a, xi, pre,
            "T_" + m.labels()[a] + " is not measurable: the states whose transitions meet the witness "
            "set of measures do not form a measurable set"};
}

}  // namespace

ValidationReport nlmp_validate(const Nlmp& m) {
    ValidationReport report;
    check_pool_measures(m, report);
    const TraceClasses classes = trace_classes(m.pool(), m.sigma());
    for (LabelId a = 0; a < m.label_count(); ++a) {
        for (const PoolSet& xi : classes.classes) {
            const StateSet pre = hit_preimage(m, a, xi);
            if (!m.sigma().is_measurable(pre)) {
                report.findings.push_back(preimage_failure(m, a, xi, pre));
                break;
            }
        }
    }
    warn_unused_labels(m, report);
    return report;
}

ValidationReport nlmp_validate_exhaustive(const Nlmp& m) {
    ValidationReport report;
    check_pool_measures(m, report);
    const TraceClasses classes = trace_classes(m.pool(), m.sigma());
    if (classes.size() > 20)
        throw UnsupportedError("too many profile classes for exhaustive validation");
    const std::uint64_t limit = std::uint64_t{1} << classes.size();
    for (LabelId a = 0; a < m.label_count(); ++a) {
        for (std::uint64_t mask = 1; mask < limit; ++mask) {
            const PoolSet xi = classes.union_of(mask);
            const StateSet pre = hit_preimage(m, a, xi);
            if (!m.sigma().is_measurable(pre)) {
                report.findings.push_back(preimage_failure(m, a, xi, pre));
                break;
            }
        }
    }
    warn_unused_labels(m, report);
    return report;
}

ValidationReport lmp_validate(const Lmp& l) {
    ValidationReport report;
    const SigmaAlgebra& sigma = l.sigma();
    const std::vector<StateSet> measurable = sigma.measurable_sets();
    for (LabelId a = 0; a < l.label_count(); ++a) {
        StateSet enabled = sigma.universe().empty_set();
        for (State s = 0; s < l.state_count(); ++s)
            if (l.kernel(s, a))
                enabled.insert(s);
        if (!sigma.is_measurable(enabled)) {
            report.findings.push_back({Finding::Severity::Error, enabled.first(), a, {}, enabled,
                                       "kernel for label '" + l.labels()[a] + "' is defined on a non-measurable set"});
            continue;
        }
        bool failed = false;
        for (const StateSet& q : measurable) {
            // level sets of s -> tau_a(s)(q) on the enabled states
            std::vector<std::pair<Rational, StateSet>> levels;
            enabled.for_each([&](State s) {
                const Rational v = l.kernel(s, a)->value(q);
                auto it = std::find_if(levels.begin(), levels.end(), [&](const auto& lv) { return lv.first == v; });
                if (it == levels.end())
                    levels.emplace_back(v, StateSet(l.state_count(), {s}));
                else
                    it->second.insert(s);
            });
            for (const auto& [v, level] : levels) {
                if (!sigma.is_measurable(level)) {
                    report.findings.push_back({Finding::Severity::Error, level.first(), a, {}, level,
                                               "kernel for label '" + l.labels()[a] + "' is not measurable: value " +
                                                   v.str() + " is taken on a non-measurable set"});
                    failed = true;
                    break;
                }
            }
            if (failed)
                break;
        }
    }
    return report;
}

Nlmp lmp_embed(const Lmp& l) {
    Nlmp::Builder b(l.sigma_ptr(), l.labels());
    for (LabelId a = 0; a < l.label_count(); ++a)
        for (State s = 0; s < l.state_count(); ++s)
            if (const Measure* k = l.kernel(s, a)) {
                if (auto err = check_weights(l.sigma(), k->weights()))
                    throw PreconditionError("ill-formed LMP kernel: " + *err);
                b.add(s, a, *k);
            }
    return std::move(b).build();
}

bool is_non_probabilistic(const Nlmp& m) {
    return std::all_of(m.pool().measures().begin(), m.pool().measures().end(),
                       [](const Measure& mu) { return mu.dirac_atom().has_value(); });
}

StateSet hit_preimage(const Nlmp& m, LabelId a, const PoolSet& xi) {
    if (a >= m.label_count())
        throw DomainError("unknown label index");
    if (xi.capacity() != m.pool().size())
        throw DomainError("measure set is not a subset of the model pool");
    StateSet pre = m.universe().empty_set();
    for (State s = 0; s < m.state_count(); ++s)
        if (m.transitions(s, a).intersects(xi))
            pre.insert(s);
    return pre;
}

StateSet diamond(const Nlmp& m, LabelId a, const StateSet& q) {
    if (!is_non_probabilistic(m))
        throw PreconditionError("diamond requires a non-probabilistic model");
    if (q.capacity() != m.state_count())
        throw DomainError("set is not a subset of the universe");
    // delta_u lies in delta(q) iff its atom meets q
    PoolSet into_q = m.pool().empty_set();
    for (std::size_t i = 0; i < m.pool().size(); ++i)
        if (m.sigma().atoms().block(*m.pool().at(i).dirac_atom()).intersects(q))
            into_q.insert(i);
    return hit_preimage(m, a, into_q);
}

}  // namespace nlmp
