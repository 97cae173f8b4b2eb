#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlmp/rational.hpp"

namespace nlmp {

struct StateFormula;
struct MeasureFormula;
using StateFormulaPtr = std::shared_ptr<const StateFormula>;
using MeasureFormulaPtr = std::shared_ptr<const MeasureFormula>;

enum class Comparison { AtLeast, Greater, Less, AtMost };

std::string_view symbol(Comparison c);

namespace ast {

struct Top {};

struct And {
    StateFormulaPtr left;
    StateFormulaPtr right;
};

/// <a> psi
struct Diamond {
    std::string label;
    MeasureFormulaPtr body;
};

/// One bound of the multi-constraint modality: mu([[formula]]) cmp threshold,
/// with cmp restricted to > and <.
struct Constraint {
    Comparison cmp = Comparison::Greater;
    Rational threshold;
    StateFormulaPtr formula;
};

/// <a>[ cmp_1 q_1 phi_1, ..., cmp_n q_n phi_n ]: some a-transition satisfies
/// all n bounds at once.
struct DiamondMulti {
    std::string label;
    std::vector<Constraint> constraints;
};

struct Or {
    std::vector<MeasureFormulaPtr> disjuncts;
};

struct Not {
    MeasureFormulaPtr body;
};

/// [phi]>=q
struct AtLeast {
    StateFormulaPtr formula;
    Rational threshold;
};

/// Sugar: [phi]>q, [phi]<q, [phi]<=q.
struct Bound {
    StateFormulaPtr formula;
    Comparison cmp = Comparison::Greater;
    Rational threshold;
};

}  // namespace ast

struct StateFormula {
    std::variant<ast::Top, ast::And, ast::Diamond, ast::DiamondMulti> node;
};

struct MeasureFormula {
    std::variant<ast::Or, ast::Not, ast::AtLeast, ast::Bound> node;
};

// Constructors. Thresholds outside [0,1] throw DomainError.
StateFormulaPtr top();
StateFormulaPtr conj(StateFormulaPtr left, StateFormulaPtr right);
StateFormulaPtr diamond(std::string label, MeasureFormulaPtr body);
StateFormulaPtr diamond_multi(std::string label, std::vector<ast::Constraint> constraints);
MeasureFormulaPtr disj(std::vector<MeasureFormulaPtr> disjuncts);
MeasureFormulaPtr negate(MeasureFormulaPtr body);
MeasureFormulaPtr at_least(StateFormulaPtr phi, Rational q);
MeasureFormulaPtr bound(StateFormulaPtr phi, Comparison cmp, Rational q);
/// !( !a \/ !b \/ ... )
MeasureFormulaPtr measure_conj(std::vector<MeasureFormulaPtr> conjuncts);

/// Concrete syntax, accepted back by parse_state_formula.
std::string to_string(const StateFormula& phi);
std::string to_string(const MeasureFormula& psi);

/// Modal depth.
std::size_t depth(const StateFormula& phi);
std::size_t depth(const MeasureFormula& psi);

bool operator==(const StateFormula& a, const StateFormula& b);
bool operator==(const MeasureFormula& a, const MeasureFormula& b);

/// Rewrites every multi-constraint modality into <a> of a conjunction of
/// bounds. Bound sugar is kept.
StateFormulaPtr expand_multi(const StateFormula& phi);

StateFormulaPtr parse_state_formula(std::string_view text);
MeasureFormulaPtr parse_measure_formula(std::string_view text);

}  // namespace nlmp
