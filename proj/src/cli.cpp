#include "nlmp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "nlmp/errors.hpp"

namespace nlmp::cli {

using nlohmann::json;

namespace {

json state_list(const Universe& u, const StateSet& q) {
    std::vector<std::string> names;
    q.for_each([&](State s) { names.push_back(u.name(s)); });
    std::sort(names.begin(), names.end());
    return names;
}

json pool_set_json(const PoolSet& xi) { return xi.members(); }

json measure_json(const Measure& mu) {
    json weights = json::object();
    const Universe& u = mu.sigma().universe();
    for (std::size_t i = 0; i < mu.sigma().atom_count(); ++i)
        if (!mu.atom_weight(i).is_zero())
            weights[u.name(mu.sigma().atoms().block(i).first())] = mu.atom_weight(i).str();
    return weights;
}

json model_json(const ModelDocument& doc) {
    const Nlmp& m = doc.model;
    json pool = json::array();
    for (const Measure& mu : m.pool().measures())
        pool.push_back(measure_json(mu));
    return {
        {"digest", model_digest(doc)},
        {"states", m.universe().names()},
        {"labels", m.labels()},
        {"sigma_atoms", partition_json(m.universe(), m.sigma().atoms())},
        {"powerset", m.sigma().is_powerset()},
        {"lmp", doc.lmp.has_value()},
        {"pool", pool},
    };
}

json finding_json(const ModelDocument& doc, const Finding& f, const std::vector<std::string>& labels) {
    const Universe& u = doc.model.universe();
    json j = {{"severity", f.severity == Finding::Severity::Error ? "error" : "warning"}, {"message", f.message}};
    if (f.state)
        j["state"] = u.name(*f.state);
    if (f.label)
        j["label"] = labels.at(*f.label);
    if (f.xi)
        j["witness_measures"] = pool_set_json(*f.xi);
    if (f.preimage)
        j["preimage"] = state_list(u, *f.preimage);
    if (f.state && f.label)
        if (auto loc = doc.location_of(*f.state, *f.label))
            j["line"] = loc->line;
    return j;
}

json findings_json(const ModelDocument& doc, const ValidationReport& r, const std::vector<std::string>& labels) {
    json out = json::array();
    for (const Finding& f : r.findings)
        out.push_back(finding_json(doc, f, labels));
    return out;
}

json witness_json(const Nlmp& m, const BisimWitness& w) {
    json j = {{"message", w.message}};
    if (w.s)
        j["s"] = m.universe().name(*w.s);
    if (w.t)
        j["t"] = m.universe().name(*w.t);
    if (w.label)
        j["label"] = m.labels().at(*w.label);
    if (w.measure)
        j["measure"] = *w.measure;
    if (w.xi)
        j["measures"] = pool_set_json(*w.xi);
    if (w.preimage)
        j["preimage"] = state_list(m.universe(), *w.preimage);
    return j;
}

json bisim_json(const Nlmp& m, const BisimReport& r) {
    json trace = json::array();
    for (const Partition& p : r.trace)
        trace.push_back(partition_json(m.universe(), p));
    json j = {{"kind", to_string(r.kind)}, {"partition", partition_json(m.universe(), r.partition)}, {"trace", trace}};
    if (r.sigma)
        j["sigma_atoms"] = partition_json(m.universe(), r.sigma->atoms());
    return j;
}

Partition partition_of(const Nlmp& m, const json& blocks) {
    std::vector<StateSet> out;
    for (const auto& b : blocks)
        out.push_back(m.universe().set_of(b.get<std::vector<std::string>>()));
    return Partition(std::move(out));
}

// Runs body with a fresh report; maps library exceptions to exit codes.
CommandResult run(json command, const std::function<int(json&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    CommandResult result;
    result.report = {{"command", std::move(command)}};
    json& report = result.report;
    try {
        result.exit_code = body(report);
    } catch (const ParseError& e) {
        report["error"] = {{"kind", "parse"}, {"message", e.message()}, {"line", e.line()}, {"column", e.column()}};
        result.exit_code = exit_usage;
    } catch (const UnsupportedError& e) {
        report["error"] = {{"kind", "unsupported"}, {"message", e.what()}};
        result.exit_code = exit_unsupported;
    } catch (const PreconditionError& e) {
        report["error"] = {{"kind", "invalid_model"}, {"message", e.what()}};
        result.exit_code = exit_invalid_model;
    } catch (const DomainError& e) {
        report["error"] = {{"kind", "usage"}, {"message", e.what()}};
        result.exit_code = exit_usage;
    } catch (const std::logic_error& e) {
        report["error"] = {{"kind", "invariant"}, {"message", e.what()}};
        result.exit_code = exit_invariant;
    } catch (const std::exception& e) {
        report["error"] = {{"kind", "usage"}, {"message", e.what()}};
        result.exit_code = exit_usage;
    }
    report["exit_code"] = result.exit_code;
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report[timing_key] = std::chrono::duration<double, std::milli>(elapsed).count();
    return result;
}

// Loads and validates; on an invalid model fills the report and returns nothing.
std::optional<ModelDocument> load_valid(const std::string& path, json& report) {
    ModelDocument doc = load_model(path);
    report["model"] = model_json(doc);
    const ValidationReport v = nlmp_validate(doc.model);
    if (!v.valid()) {
        report["valid"] = false;
        report["findings"] = findings_json(doc, v, doc.model.labels());
        return std::nullopt;
    }
    return doc;
}

}  // namespace

json partition_json(const Universe& u, const Partition& p) {
    std::vector<std::vector<std::string>> blocks;
    for (const StateSet& b : p.blocks())
        blocks.push_back(state_list(u, b).get<std::vector<std::string>>());
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

std::string stable_dump(const json& report) {
    json copy = report;
    copy.erase(timing_key);
    return copy.dump(2);
}

CommandResult cmd_validate(const std::string& path) {
    return run({{"name", "validate"}, {"path", path}}, [&](json& report) {
        ModelDocument doc = load_model(path);
        report["model"] = model_json(doc);
        const ValidationReport v = nlmp_validate(doc.model);
        json findings = findings_json(doc, v, doc.model.labels());
        bool valid = v.valid();
        if (doc.lmp) {
            const ValidationReport lv = lmp_validate(*doc.lmp);
            report["lmp_findings"] = findings_json(doc, lv, doc.lmp->labels());
            if (lv.valid() != valid)
                throw std::logic_error("kernel and transition-set measurability verdicts differ");
        }
        report["valid"] = valid;
        report["findings"] = findings;
        return valid ? exit_ok : exit_invalid_model;
    });
}

CommandResult cmd_bisim(const std::string& path, const std::string& kind) {
    return run({{"name", "bisim"}, {"path", path}, {"kind", kind}}, [&](json& report) {
        if (kind != "traditional" && kind != "state" && kind != "event" && kind != "all")
            throw DomainError("unknown bisimulation kind '" + kind + "'");
        auto doc = load_valid(path, report);
        if (!doc)
            return int(exit_invalid_model);
        const Nlmp& m = doc->model;
        int code = exit_ok;
        if (kind == "traditional") {
            report["traditional"] = bisim_json(m, largest_traditional(m));
        } else if (kind == "state") {
            report["state"] = bisim_json(m, largest_state(m));
        } else if (kind == "event") {
            report["event"] = bisim_json(m, smallest_stable_sigma(m));
        } else {
            const ComparisonReport c = compare_bisims(m);
            report["traditional"] = bisim_json(m, c.traditional);
            report["state"] = bisim_json(m, c.state);
            report["event"] = bisim_json(m, c.event);
            report["chain"] = {{"traditional_in_state", c.traditional_in_state},
                               {"state_in_event", c.state_in_event},
                               {"all_equal", c.all_equal},
                               {"equality_expected", c.equality_expected},
                               {"holds", c.consistent()}};
            if (!c.consistent())
                code = exit_invariant;
        }
        // the computed relations must pass their own checkers
        const std::pair<const char*, std::function<CheckResult(const Relation&)>> checkers[] = {
            {"traditional", [&](const Relation& r) { return is_traditional_bisim(m, r); }},
            {"state", [&](const Relation& r) { return is_state_bisim(m, r); }},
            {"event", [&](const Relation& r) { return is_event_bisim(m, sigma_of_relation(m.sigma(), r)); }},
        };
        for (const auto& [name, checker] : checkers) {
            if (!report.contains(name))
                continue;
            const CheckResult r = checker(Relation::from_partition(partition_of(m, report[name]["partition"])));
            if (!r.holds) {
                report[name]["witness"] = witness_json(m, *r.witness);
                code = exit_invariant;
            }
        }
        if (doc->lmp)
            report["lmp_bisimilarity"] = partition_json(m.universe(), lmp_bisimilarity(*doc->lmp));
        return code;
    });
}

CommandResult cmd_check(const std::string& path, const std::string& formula, const std::optional<std::string>& state) {
    json command = {{"name", "check"}, {"path", path}, {"formula", formula}};
    if (state)
        command["state"] = *state;
    return run(command, [&](json& report) {
        auto doc = load_valid(path, report);
        if (!doc)
            return int(exit_invalid_model);
        const Nlmp& m = doc->model;
        const StateFormulaPtr phi = parse_state_formula(formula);
        const StateSet sat = eval_state(m, *phi);
        report["formula"] = to_string(*phi);
        report["expanded"] = to_string(*expand_sugar(m, *phi));
        report["depth"] = depth(*phi);
        report["satisfying_states"] = state_list(m.universe(), sat);
        if (!state)
            return int(exit_ok);
        const bool holds = sat.contains(m.universe().index(*state));
        report["satisfied"] = holds;
        return holds ? int(exit_ok) : int(exit_unsatisfied);
    });
}

CommandResult cmd_distinguish(const std::string& path, const std::string& s, const std::string& t) {
    return run({{"name", "distinguish"}, {"path", path}, {"s", s}, {"t", t}}, [&](json& report) {
        auto doc = load_valid(path, report);
        if (!doc)
            return int(exit_invalid_model);
        const Nlmp& m = doc->model;
        const State si = m.universe().index(s);
        const State ti = m.universe().index(t);
        const auto phi = distinguish(m, si, ti);
        if (!phi) {
            report["result"] = "equivalent";
            return int(exit_equivalent);
        }
        // the printed text must parse back to a formula with the same verdicts
        const std::string text = to_string(**phi);
        const StateSet sat = eval_state(m, *parse_state_formula(text));
        if (sat.contains(si) == sat.contains(ti))
            throw std::logic_error("printed formula does not separate the states");
        report["result"] = "distinguished";
        report["formula"] = text;
        report["depth"] = depth(**phi);
        report["holds_at"] = sat.contains(si) ? s : t;
        report["satisfying_states"] = state_list(m.universe(), sat);
        return int(exit_ok);
    });
}

CommandResult cmd_equiv(const std::string& path, const std::string& fragment) {
    return run({{"name", "equiv"}, {"path", path}, {"fragment", fragment}}, [&](json& report) {
        if (fragment != "L" && fragment != "Lf")
            throw DomainError("unknown fragment '" + fragment + "'");
        auto doc = load_valid(path, report);
        if (!doc)
            return int(exit_invalid_model);
        const Nlmp& m = doc->model;
        const EquivalenceReport eq = logical_equivalence(m, fragment == "L" ? Fragment::L : Fragment::Lf);
        report["fragment"] = fragment;
        report["partition"] = partition_json(m.universe(), eq.partition);
        json pairs = json::array();
        for (const auto& p : eq.formulas)
            pairs.push_back({{"s", m.universe().name(p.s)}, {"t", m.universe().name(p.t)}, {"formula", to_string(*p.formula)}});
        report["formulas"] = pairs;
        return int(exit_ok);
    });
}

}  // namespace nlmp::cli
