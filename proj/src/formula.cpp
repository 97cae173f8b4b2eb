#include "nlmp/formula.hpp"

#include <algorithm>
#include <cctype>

#include "nlmp/errors.hpp"

namespace nlmp {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string_view symbol(Comparison c) {
    switch (c) {
    case Comparison::AtLeast: return ">=";
    case Comparison::Greater: return ">";
    case Comparison::Less: return "<";
    case Comparison::AtMost: return "<=";
    }
    return "?";
}

namespace {

void check_threshold(const Rational& q) {
    if (q < Rational(0) || q > Rational(1))
        throw DomainError("threshold " + q.str() + " outside [0,1]");
}

template <typename T>
StateFormulaPtr make_state(T node) {
    return std::make_shared<const StateFormula>(StateFormula{std::move(node)});
}

template <typename T>
MeasureFormulaPtr make_measure(T node) {
    return std::make_shared<const MeasureFormula>(MeasureFormula{std::move(node)});
}

}  // namespace

StateFormulaPtr top() { return make_state(ast::Top{}); }

StateFormulaPtr conj(StateFormulaPtr left, StateFormulaPtr right) {
    return make_state(ast::And{std::move(left), std::move(right)});
}

StateFormulaPtr diamond(std::string label, MeasureFormulaPtr body) {
    return make_state(ast::Diamond{std::move(label), std::move(body)});
}

StateFormulaPtr diamond_multi(std::string label, std::vector<ast::Constraint> constraints) {
    if (constraints.empty())
        throw DomainError("multi-constraint modality needs at least one constraint");
    for (const auto& c : constraints) {
        if (c.cmp != Comparison::Greater && c.cmp != Comparison::Less)
            throw DomainError("multi-constraint bounds must be > or <");
        check_threshold(c.threshold);
    }
    return make_state(ast::DiamondMulti{std::move(label), std::move(constraints)});
}

MeasureFormulaPtr disj(std::vector<MeasureFormulaPtr> disjuncts) { return make_measure(ast::Or{std::move(disjuncts)}); }

MeasureFormulaPtr negate(MeasureFormulaPtr body) { return make_measure(ast::Not{std::move(body)}); }

MeasureFormulaPtr at_least(StateFormulaPtr phi, Rational q) {
    check_threshold(q);
    return make_measure(ast::AtLeast{std::move(phi), std::move(q)});
}

MeasureFormulaPtr bound(StateFormulaPtr phi, Comparison cmp, Rational q) {
    if (cmp == Comparison::AtLeast)
        return at_least(std::move(phi), std::move(q));
    check_threshold(q);
    return make_measure(ast::Bound{std::move(phi), cmp, std::move(q)});
}

MeasureFormulaPtr measure_conj(std::vector<MeasureFormulaPtr> conjuncts) {
    if (conjuncts.size() == 1)
        return conjuncts.front();
    for (auto& c : conjuncts)
        c = negate(std::move(c));
    return negate(disj(std::move(conjuncts)));
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string print_measure_unary(const MeasureFormula& psi);

std::string print_state(const StateFormula& phi) {
    return std::visit(
        overloaded{
            [](const ast::Top&) -> std::string { return "T"; },
            [](const ast::And& a) -> std::string {
                std::string right = print_state(*a.right);
                if (std::holds_alternative<ast::And>(a.right->node))
                    right = "(" + right + ")";
                return print_state(*a.left) + " & " + right;
            },
            [](const ast::Diamond& d) -> std::string { return "<" + d.label + "> " + print_measure_unary(*d.body); },
            [](const ast::DiamondMulti& d) -> std::string {
                std::string out = "<" + d.label + ">[";
                for (std::size_t i = 0; i < d.constraints.size(); ++i) {
                    const auto& c = d.constraints[i];
                    if (i > 0)
                        out += ", ";
                    out += std::string(symbol(c.cmp)) + c.threshold.str() + " " + print_state(*c.formula);
                }
                return out + "]";
            },
        },
        phi.node);
}

std::string print_measure(const MeasureFormula& psi) {
    if (const auto* o = std::get_if<ast::Or>(&psi.node)) {
        if (o->disjuncts.empty())
            return "(![T]>=0)";  // the empty disjunction
        std::string out;
        for (std::size_t i = 0; i < o->disjuncts.size(); ++i) {
            if (i > 0)
                out += " \\/ ";
            out += print_measure_unary(*o->disjuncts[i]);
        }
        return out;
    }
    return print_measure_unary(psi);
}

std::string print_measure_unary(const MeasureFormula& psi) {
    return std::visit(
        overloaded{
            [&](const ast::Or& o) -> std::string {
                if (o.disjuncts.empty())
                    return print_measure(psi);
                return "(" + print_measure(psi) + ")";
            },
            [](const ast::Not& n) -> std::string { return "!" + print_measure_unary(*n.body); },
            [](const ast::AtLeast& a) -> std::string {
                return "[" + print_state(*a.formula) + "]>=" + a.threshold.str();
            },
            [](const ast::Bound& b) -> std::string {
                return "[" + print_state(*b.formula) + "]" + std::string(symbol(b.cmp)) + b.threshold.str();
            },
        },
        psi.node);
}

}  // namespace

std::string to_string(const StateFormula& phi) { return print_state(phi); }
std::string to_string(const MeasureFormula& psi) { return print_measure(psi); }

std::size_t depth(const StateFormula& phi) {
    return std::visit(overloaded{
                          [](const ast::Top&) -> std::size_t { return 0; },
                          [](const ast::And& a) { return std::max(depth(*a.left), depth(*a.right)); },
                          [](const ast::Diamond& d) { return 1 + depth(*d.body); },
                          [](const ast::DiamondMulti& d) {
                              std::size_t k = 0;
                              for (const auto& c : d.constraints)
                                  k = std::max(k, depth(*c.formula));
                              return 1 + k;
                          },
                      },
                      phi.node);
}

std::size_t depth(const MeasureFormula& psi) {
    return std::visit(overloaded{
                          [](const ast::Or& o) {
                              std::size_t k = 0;
                              for (const auto& d : o.disjuncts)
                                  k = std::max(k, depth(*d));
                              return k;
                          },
                          [](const ast::Not& n) { return depth(*n.body); },
                          [](const ast::AtLeast& a) { return depth(*a.formula); },
                          [](const ast::Bound& b) { return depth(*b.formula); },
                      },
                      psi.node);
}

bool operator==(const StateFormula& a, const StateFormula& b) {
    if (a.node.index() != b.node.index())
        return false;
    return std::visit(
        overloaded{
            [](const ast::Top&, const ast::Top&) { return true; },
            [](const ast::And& x, const ast::And& y) { return *x.left == *y.left && *x.right == *y.right; },
            [](const ast::Diamond& x, const ast::Diamond& y) { return x.label == y.label && *x.body == *y.body; },
            [](const ast::DiamondMulti& x, const ast::DiamondMulti& y) {
                return x.label == y.label &&
                       std::equal(x.constraints.begin(), x.constraints.end(), y.constraints.begin(),
                                  y.constraints.end(), [](const ast::Constraint& p, const ast::Constraint& q) {
                                      return p.cmp == q.cmp && p.threshold == q.threshold && *p.formula == *q.formula;
                                  });
            },
            [](const auto&, const auto&) { return false; },
        },
        a.node, b.node);
}

bool operator==(const MeasureFormula& a, const MeasureFormula& b) {
    if (a.node.index() != b.node.index())
        return false;
    return std::visit(
        overloaded{
            [](const ast::Or& x, const ast::Or& y) {
                return std::equal(x.disjuncts.begin(), x.disjuncts.end(), y.disjuncts.begin(), y.disjuncts.end(),
                                  [](const auto& p, const auto& q) { return *p == *q; });
            },
            [](const ast::Not& x, const ast::Not& y) { return *x.body == *y.body; },
            [](const ast::AtLeast& x, const ast::AtLeast& y) {
                return x.threshold == y.threshold && *x.formula == *y.formula;
            },
            [](const ast::Bound& x, const ast::Bound& y) {
                return x.cmp == y.cmp && x.threshold == y.threshold && *x.formula == *y.formula;
            },
            [](const auto&, const auto&) { return false; },
        },
        a.node, b.node);
}

namespace {

MeasureFormulaPtr expand_multi_measure(const MeasureFormula& psi) {
    return std::visit(overloaded{
                          [](const ast::Or& o) {
                              std::vector<MeasureFormulaPtr> ds;
                              for (const auto& d : o.disjuncts)
                                  ds.push_back(expand_multi_measure(*d));
                              return disj(std::move(ds));
                          },
                          [](const ast::Not& n) { return negate(expand_multi_measure(*n.body)); },
                          [](const ast::AtLeast& a) { return at_least(expand_multi(*a.formula), a.threshold); },
                          [](const ast::Bound& b) { return bound(expand_multi(*b.formula), b.cmp, b.threshold); },
                      },
                      psi.node);
}

}  // namespace

StateFormulaPtr expand_multi(const StateFormula& phi) {
    return std::visit(overloaded{
                          [](const ast::Top&) { return top(); },
                          [](const ast::And& a) { return conj(expand_multi(*a.left), expand_multi(*a.right)); },
                          [](const ast::Diamond& d) { return diamond(d.label, expand_multi_measure(*d.body)); },
                          [](const ast::DiamondMulti& d) {
                              std::vector<MeasureFormulaPtr> bounds;
                              for (const auto& c : d.constraints)
                                  bounds.push_back(bound(expand_multi(*c.formula), c.cmp, c.threshold));
                              return diamond(d.label, measure_conj(std::move(bounds)));
                          },
                      },
                      phi.node);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

enum class Tok { LBrack, RBrack, LParen, RParen, Lt, Gt, Ge, Le, Comma, Amp, OrOp, AndOp, Bang, Word, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;
};

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_number(const std::string& w) {
    if (w.empty() || !std::isdigit(static_cast<unsigned char>(w.front())))
        return false;
    return std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '/'; });
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t len) {
        out.push_back({k, std::string(text.substr(i, len)), i + 1});
        i += len;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const char next = i + 1 < text.size() ? text[i + 1] : '\0';
        switch (c) {
        case '[': push(Tok::LBrack, 1); continue;
        case ']': push(Tok::RBrack, 1); continue;
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case ',': push(Tok::Comma, 1); continue;
        case '&': push(Tok::Amp, 1); continue;
        case '!': push(Tok::Bang, 1); continue;
        case '<': next == '=' ? push(Tok::Le, 2) : push(Tok::Lt, 1); continue;
        case '>': next == '=' ? push(Tok::Ge, 2) : push(Tok::Gt, 1); continue;
        case '\\':
            if (next == '/') {
                push(Tok::OrOp, 2);
                continue;
            }
            break;
        case '/':
            if (next == '\\') {
                push(Tok::AndOp, 2);
                continue;
            }
            break;
        default:
            if (is_word_char(c)) {
                std::size_t j = i;
                while (j < text.size() && is_word_char(text[j]))
                    ++j;
                // p/q
                const bool digits = std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i),
                                                text.begin() + static_cast<std::ptrdiff_t>(j),
                                                [](char d) { return std::isdigit(static_cast<unsigned char>(d)); });
                if (digits && j + 1 < text.size() && text[j] == '/' &&
                    std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                    ++j;
                    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                        ++j;
                }
                push(Tok::Word, j - i);
                continue;
            }
        }
        throw ParseError(std::string("unexpected character '") + c + "'", 1, i + 1);
    }
    out.push_back({Tok::End, "", text.size() + 1});
    return out;
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : tokens_(lex(text)) {}

    StateFormulaPtr state_formula() {
        StateFormulaPtr left = state_primary();
        while (accept(Tok::Amp))
            left = conj(std::move(left), state_primary());
        return left;
    }

    MeasureFormulaPtr measure_formula() {
        std::vector<MeasureFormulaPtr> ds{measure_and()};
        while (accept(Tok::OrOp))
            ds.push_back(measure_and());
        return ds.size() == 1 ? ds.front() : disj(std::move(ds));
    }

    void finish() {
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

    bool accept(Tok k) {
        if (peek().kind != k)
            return false;
        ++pos_;
        return true;
    }

    const Token& expect(Tok k, const char* what) {
        if (peek().kind != k)
            fail(std::string("expected ") + what);
        return tokens_[pos_++];
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(peek().kind == Tok::End ? message + " at end of input" : message, 1, peek().column);
    }

    Rational number() {
        const Token& t = peek();
        if (t.kind != Tok::Word || !is_number(t.text))
            fail("expected a rational threshold");
        Rational q = Rational::parse(t.text);
        if (q < Rational(0) || q > Rational(1))
            fail("threshold " + q.str() + " outside [0,1]");
        ++pos_;
        return q;
    }

    StateFormulaPtr state_primary() {
        if (peek().kind == Tok::Word && peek().text == "T") {
            ++pos_;
            return top();
        }
        if (accept(Tok::LParen)) {
            StateFormulaPtr inner = state_formula();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (accept(Tok::Lt)) {
            const std::string label = expect(Tok::Word, "a label").text;
            expect(Tok::Gt, "'>' after label");
            if (peek().kind == Tok::LBrack &&
                (peek(1).kind == Tok::Gt ||
                 (peek(1).kind == Tok::Lt && peek(2).kind == Tok::Word && is_number(peek(2).text))))
                return multi(label);
            return diamond(label, measure_unary());
        }
        fail("expected a state formula");
    }

    StateFormulaPtr multi(const std::string& label) {
        expect(Tok::LBrack, "'['");
        std::vector<ast::Constraint> cs;
        do {
            ast::Constraint c;
            if (accept(Tok::Gt))
                c.cmp = Comparison::Greater;
            else if (accept(Tok::Lt))
                c.cmp = Comparison::Less;
            else
                fail("expected '>' or '<' in a constraint");
            c.threshold = number();
            c.formula = state_formula();
            cs.push_back(std::move(c));
        } while (accept(Tok::Comma));
        expect(Tok::RBrack, "']'");
        return diamond_multi(label, std::move(cs));
    }

    MeasureFormulaPtr measure_and() {
        std::vector<MeasureFormulaPtr> cs{measure_unary()};
        while (accept(Tok::AndOp))
            cs.push_back(measure_unary());
        return measure_conj(std::move(cs));
    }

    MeasureFormulaPtr measure_unary() {
        if (accept(Tok::Bang))
            return negate(measure_unary());
        if (accept(Tok::LParen)) {
            MeasureFormulaPtr inner = measure_formula();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (accept(Tok::LBrack)) {
            StateFormulaPtr phi = state_formula();
            expect(Tok::RBrack, "']'");
            Comparison cmp;
            if (accept(Tok::Ge))
                cmp = Comparison::AtLeast;
            else if (accept(Tok::Gt))
                cmp = Comparison::Greater;
            else if (accept(Tok::Lt))
                cmp = Comparison::Less;
            else if (accept(Tok::Le))
                cmp = Comparison::AtMost;
            else
                fail("expected '>=', '>', '<' or '<=' after ']'");
            return bound(std::move(phi), cmp, number());
        }
        fail("expected a measure formula");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

StateFormulaPtr parse_state_formula(std::string_view text) {
    FormulaParser p(text);
    StateFormulaPtr phi = p.state_formula();
    p.finish();
    return phi;
}

MeasureFormulaPtr parse_measure_formula(std::string_view text) {
    FormulaParser p(text);
    MeasureFormulaPtr psi = p.measure_formula();
    p.finish();
    return psi;
}

}  // namespace nlmp
