#pragma once

#include "pagame/ordinal.hpp"
#include "pagame/sexpr.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pagame {

// ---------------------------------------------------------------------------
// Terms

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    enum class Kind { Var, Num, Succ, App };
    Kind kind;
    std::string name;  // Var, App
    Nat value;         // Num
    std::vector<Term> args;
    std::size_t hash = 0;
};

Term var(std::string name);
Term num(const Nat& n);
// S(numeral) folds to the next numeral, so closed numerals have one form.
Term succ(Term t);
Term app(std::string symbol, std::vector<Term> args);

bool term_equal(const Term& a, const Term& b);
bool is_numeral(const Term& t);
void free_vars(const Term& t, std::set<std::string>& out);
bool is_closed(const Term& t);
Term subst(const Term& t, const std::string& x, const Term& by);
std::string render(const Term& t);

// Built-ins are add, mul and monus (truncated subtraction). Further symbols are
// explicit compositions over earlier symbols.
class Signature {
public:
    struct Def {
        std::vector<std::string> params;
        Term body;
    };

    void define(const std::string& name, std::vector<std::string> params, Term body);
    std::optional<std::size_t> arity(const std::string& name) const;
    const std::map<std::string, Def>& defs() const { return defs_; }
    // Throws UserError on unknown symbols or arity mismatch.
    void check_term(const Term& t) const;

    Nat eval(const Term& t) const;
    Nat eval(const Term& t, const std::map<std::string, Nat>& env) const;

private:
    std::map<std::string, Def> defs_;
    std::vector<std::string> order_;
};

// ---------------------------------------------------------------------------
// Formulas in negation normal form

enum class FKind { Eq, Neq, Olt, Nolt, Or, And, Exists, Forall };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FKind kind;
    Term lhs, rhs;            // literals
    Formula left, right;      // Or, And
    std::string var;          // Exists, Forall
    Formula body;             // Exists, Forall
    std::size_t hash = 0;     // invariant under renaming of bound variables
};

Formula eq(Term a, Term b);
Formula neq(Term a, Term b);
Formula olt(Term a, Term b);
Formula nolt(Term a, Term b);
Formula lor(Formula a, Formula b);
Formula land(Formula a, Formula b);
Formula exists(std::string x, Formula body);
Formula forall(std::string x, Formula body);

Formula negate(const Formula& f);
// Alpha-equivalence.
bool formula_equal(const Formula& a, const Formula& b);
void free_vars(const Formula& f, std::set<std::string>& out);
bool is_closed(const Formula& f);
// Capture-avoiding substitution.
Formula subst(const Formula& f, const std::string& x, const Term& by);
std::string render(const Formula& f);
void check_formula(const Signature& sig, const Formula& f);

enum class Polarity { Disjunctive, Conjunctive, Literal };
Polarity polarity(const Formula& f);
bool is_literal(const Formula& f);
// 0 for literals, one more than the largest child otherwise.
unsigned rank(const Formula& f);

// Truth of a closed literal. Order literals compare ordinal codes; a code that
// is not a notation makes the positive literal false.
bool literal_true(const Signature& sig, const Formula& f);

// ---------------------------------------------------------------------------
// Node addresses in the game tree of a formula

struct Selector {
    enum class Kind { Left, Right, Index };
    Kind kind = Kind::Left;
    Nat index;

    static Selector left() { return {Kind::Left, 0}; }
    static Selector right() { return {Kind::Right, 0}; }
    static Selector at(const Nat& n) { return {Kind::Index, n}; }
    friend bool operator==(const Selector&, const Selector&) = default;
};

bool operator<(const Selector& a, const Selector& b);

using NodeAddress = std::vector<Selector>;

std::string render(const Selector& s);
std::string render(const NodeAddress& a);
NodeAddress parse_address(std::string_view text);

// The immediate subformula selected by s. Quantifier children are numeral instances.
Formula child(const Formula& f, const Selector& s);
// The instance of a quantifier body at an arbitrary closed term.
Formula instance(const Formula& f, const Term& t);
Formula subformula_at(const Formula& f, const NodeAddress& a);
bool is_prefix(const NodeAddress& a, const NodeAddress& b);

// dt: the root has depth 0, depth grows by one at each change of polarity, and a
// literal sits one below its parent.
unsigned node_depth(const Formula& f, const NodeAddress& a);
unsigned formula_depth(const Formula& f);
bool is_minimal(const Formula& f, const NodeAddress& a);
// a strictly below b, both minimal, and dt(b) = dt(a) + 1.
bool minimal_successor(const Formula& f, const NodeAddress& a, const NodeAddress& b);
// The node is odd/even according to the parity of its depth.
bool is_odd_set(const Formula& f, const std::set<NodeAddress>& s);
bool is_even_set(const Formula& f, const std::set<NodeAddress>& s);

// ---------------------------------------------------------------------------
// Text syntax

// Named formulas with optional parameters, e.g. (psi x) := (exists y (= y (add x x))).
struct FormulaMacro {
    std::vector<std::string> params;
    Formula body;
};
using FormulaMacros = std::map<std::string, FormulaMacro>;

Term parse_term(const Sexpr& e);
Formula parse_formula(const Sexpr& e, const FormulaMacros* macros = nullptr);
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

}  // namespace pagame
