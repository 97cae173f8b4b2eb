#include "nlmp/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlmp/errors.hpp"

namespace nlmp {

std::optional<SourceLocation> ModelDocument::location_of(State s, LabelId a) const {
    auto it = transition_lines.find({s, a});
    if (it == transition_lines.end() || it->second.empty())
        return std::nullopt;
    return it->second.front();
}

namespace {

struct Word {
    std::string text;
    std::size_t column;
};

std::vector<Word> split_line(std::string_view line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '{' || c == '}') {
            out.push_back({std::string(1, c), i + 1});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '{' &&
               line[j] != '}' && line[j] != '#')
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

bool is_identifier(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class ModelParser {
public:
    ModelDocument parse(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            ++line_no;
            line_ = line_no;
            directive(split_line(text.substr(start, end - start)));
            start = end + 1;
        }
        line_ = line_no;
        if (!universe_)
            throw ParseError("missing 'states' declaration", 1, 1);
        ensure_sigma();
        return finish();
    }

private:
    [[noreturn]] void fail(const std::string& message, std::size_t column) const {
        throw ParseError(message, line_, column);
    }

    void directive(const std::vector<Word>& words) {
        if (words.empty())
            return;
        const std::string& head = words.front().text;
        if (head == "states")
            states(words);
        else if (head == "labels")
            labels(words);
        else if (head == "sigma")
            sigma(words);
        else if (head == "lmp")
            lmp(words);
        else if (head == "trans")
            trans(words);
        else
            fail("unknown directive '" + head + "'", words.front().column);
    }

    void require_before_trans(const Word& w) const {
        if (seen_trans_)
            fail("'" + w.text + "' must come before the first 'trans'", w.column);
    }

    void states(const std::vector<Word>& words) {
        require_before_trans(words.front());
        if (universe_)
            fail("duplicate 'states' declaration", words.front().column);
        std::vector<std::string> names;
        for (std::size_t i = 1; i < words.size(); ++i) {
            if (!is_identifier(words[i].text))
                fail("invalid state name '" + words[i].text + "'", words[i].column);
            if (std::find(names.begin(), names.end(), words[i].text) != names.end())
                fail("duplicate state '" + words[i].text + "'", words[i].column);
            names.push_back(words[i].text);
        }
        if (names.empty())
            fail("at least one state is required", words.front().column);
        universe_ = make_universe(std::move(names));
    }

    void labels(const std::vector<Word>& words) {
        require_before_trans(words.front());
        if (labels_declared_)
            fail("duplicate 'labels' declaration", words.front().column);
        labels_declared_ = true;
        for (std::size_t i = 1; i < words.size(); ++i) {
            if (!is_identifier(words[i].text))
                fail("invalid label name '" + words[i].text + "'", words[i].column);
            if (std::find(labels_.begin(), labels_.end(), words[i].text) != labels_.end())
                fail("duplicate label '" + words[i].text + "'", words[i].column);
            labels_.push_back(words[i].text);
        }
    }

    State state(const Word& w) const {
        if (!universe_)
            fail("'states' must be declared first", w.column);
        auto s = universe_->find(w.text);
        if (!s)
            fail("unknown state '" + w.text + "'", w.column);
        return *s;
    }

    void sigma(const std::vector<Word>& words) {
        require_before_trans(words.front());
        if (!universe_)
            fail("'states' must be declared before 'sigma'", words.front().column);
        if (sigma_)
            fail("duplicate 'sigma' declaration", words.front().column);
        if (words.size() < 2)
            fail("expected 'powerset' or 'gen'", words.front().column + 5);
        if (words[1].text == "powerset") {
            if (words.size() > 2)
                fail("unexpected '" + words[2].text + "'", words[2].column);
            sigma_ = std::make_shared<const SigmaAlgebra>(SigmaAlgebra::powerset(universe_));
            return;
        }
        if (words[1].text != "gen")
            fail("expected 'powerset' or 'gen'", words[1].column);
        std::vector<StateSet> generators;
        std::size_t i = 2;
        while (i < words.size()) {
            if (words[i].text != "{")
                fail("expected '{'", words[i].column);
            ++i;
            StateSet g = universe_->empty_set();
            while (i < words.size() && words[i].text != "}") {
                g.insert(state(words[i]));
                ++i;
            }
            if (i == words.size())
                fail("unterminated generator set", words.back().column);
            ++i;
            generators.push_back(std::move(g));
        }
        sigma_ = std::make_shared<const SigmaAlgebra>(sigma_generate(universe_, generators));
    }

    void lmp(const std::vector<Word>& words) {
        require_before_trans(words.front());
        if (words.size() > 1)
            fail("unexpected '" + words[1].text + "'", words[1].column);
        lmp_ = true;
    }

    void ensure_sigma() {
        if (!sigma_)
            sigma_ = std::make_shared<const SigmaAlgebra>(SigmaAlgebra::powerset(universe_));
    }

    void trans(const std::vector<Word>& words) {
        if (!universe_)
            fail("'states' must be declared before 'trans'", words.front().column);
        ensure_sigma();
        seen_trans_ = true;
        if (words.size() < 3)
            fail("expected 'trans <state> <label> ...'", words.front().column);
        const State s = state(words[1]);
        auto label_it = std::find(labels_.begin(), labels_.end(), words[2].text);
        if (label_it == labels_.end())
            fail("unknown label '" + words[2].text + "'", words[2].column);
        const LabelId a = static_cast<LabelId>(label_it - labels_.begin());

        std::vector<std::pair<State, Rational>> weights;
        if (words.size() >= 4 && words[3].text == "->") {
            if (words.size() != 5)
                fail("expected exactly one target after '->'", words[3].column);
            weights.emplace_back(state(words[4]), Rational(1));
        } else {
            if (words.size() < 4)
                fail("expected weights '<state>:<rational>' or '-> <state>'", words[2].column + words[2].text.size());
            StateSet seen = universe_->empty_set();
            Rational total(0);
            for (std::size_t i = 3; i < words.size(); ++i) {
                const std::string& w = words[i].text;
                const auto colon = w.rfind(':');
                if (colon == std::string::npos)
                    fail("expected '<state>:<rational>'", words[i].column);
                const State target = state({w.substr(0, colon), words[i].column});
                if (seen.contains(target))
                    fail("state '" + w.substr(0, colon) + "' weighted twice", words[i].column);
                seen.insert(target);
                Rational q;
                try {
                    q = Rational::parse(w.substr(colon + 1));
                } catch (const std::invalid_argument&) {
                    fail("invalid rational '" + w.substr(colon + 1) + "'", words[i].column + colon + 1);
                }
                if (q < Rational(0) || q > Rational(1))
                    fail("weight " + q.str() + " outside [0,1]", words[i].column + colon + 1);
                total += q;
                weights.emplace_back(target, std::move(q));
            }
            if (total != Rational(1))
                fail("weights sum to " + total.str(), words[3].column);
        }

        Measure mu = Measure::from_state_weights(sigma_, weights);
        auto& locs = locations_[{s, a}];
        if (lmp_ && !locs.empty())
            fail("lmp: second measure for state '" + words[1].text + "' and label '" + words[2].text + "'",
                 words.front().column);
        locs.push_back({line_, words.front().column});
        entries_.push_back({s, a, std::move(mu)});
    }

    ModelDocument finish() {
        if (lmp_) {
            Lmp::Builder b(sigma_, labels_);
            for (const auto& e : entries_)
                b.set(e.s, e.a, e.mu);
            Lmp l = std::move(b).build();
            Nlmp m = lmp_embed(l);
            return ModelDocument{std::move(m), std::move(l), std::move(locations_)};
        }
        Nlmp::Builder b(sigma_, labels_);
        for (const auto& e : entries_)
            b.add(e.s, e.a, e.mu);
        return ModelDocument{std::move(b).build(), std::nullopt, std::move(locations_)};
    }

    struct Entry {
        State s;
        LabelId a;
        Measure mu;
    };

    std::size_t line_ = 0;
    UniversePtr universe_;
    SigmaPtr sigma_;
    std::vector<std::string> labels_;
    bool labels_declared_ = false;
    bool lmp_ = false;
    bool seen_trans_ = false;
    std::vector<Entry> entries_;
    std::map<std::pair<State, LabelId>, std::vector<SourceLocation>> locations_;
};

void write_measure(std::ostream& out, const Measure& mu) {
    const Partition& atoms = mu.sigma().atoms();
    const Universe& u = mu.sigma().universe();
    if (auto d = mu.dirac_atom()) {
        out << " -> " << u.name(atoms.block(*d).first());
        return;
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (!mu.atom_weight(i).is_zero())
            out << ' ' << u.name(atoms.block(i).first()) << ':' << mu.atom_weight(i).str();
}

}  // namespace

ModelDocument parse_model(std::string_view text) { return ModelParser().parse(text); }

ModelDocument load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_model(const Nlmp& m, bool lmp_header) {
    std::ostringstream out;
    const Universe& u = m.universe();
    out << "states";
    for (const auto& name : u.names())
        out << ' ' << name;
    out << "\nlabels";
    for (const auto& a : m.labels())
        out << ' ' << a;
    out << "\nsigma ";
    if (m.sigma().is_powerset()) {
        out << "powerset";
    } else {
        out << "gen";
        for (const StateSet& atom : m.sigma().atoms().blocks()) {
            out << " {";
            atom.for_each([&](State s) { out << ' ' << u.name(s); });
            out << " }";
        }
    }
    out << '\n';
    if (lmp_header)
        out << "lmp\n";
    for (LabelId a = 0; a < m.label_count(); ++a)
        for (State s = 0; s < m.state_count(); ++s)
            m.transitions(s, a).for_each([&](std::size_t i) {
                out << "trans " << u.name(s) << ' ' << m.labels()[a];
                write_measure(out, m.pool().at(i));
                out << '\n';
            });
    return out.str();
}

std::string serialize_model(const ModelDocument& doc) { return serialize_model(doc.model, doc.lmp.has_value()); }

std::string model_digest(const ModelDocument& doc) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize_model(doc)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace nlmp
