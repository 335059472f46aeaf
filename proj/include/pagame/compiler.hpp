#pragma once

#include "pagame/debate.hpp"
#include "pagame/descent.hpp"
#include "pagame/proof.hpp"

#include <map>
#include <string>
#include <vector>

namespace pagame {

using Env = std::map<std::string, Nat>;

// Closed instance; variables missing from env read as 0.
Formula instantiate(const Formula& f, const Env& env);
Term instantiate(const Term& t, const Env& env);

struct Bound {
    Ordinal gamma;
    Ordinal alpha;
};

// The (gamma, alpha) a node compiles to, independent of its parameters.
Bound declared_bound(const Proof& node);

struct CompileOptions {
    DebateOptions debate;
};

DRStrategy compile(const Signature& sig, const Proof& root, const Env& params = {}, const CompileOptions& opt = {});
DRStrategy compile(const ProofFile& pf, const Env& params = {}, const CompileOptions& opt = {});

// The pieces cut_dr works on for a cut node: premise strategies for
// gamma, not phi and gamma, phi with phi the disjunctive side of the cut formula.
struct CutParts {
    DRStrategy g0, g1;
    std::vector<Formula> gamma;
    Formula phi;
};
CutParts cut_parts(const Signature& sig, const Proof& cut_node, const Env& params = {}, const CompileOptions& opt = {});

// Copycat between a formula and its negation, both already in the play. The
// endgame starts at move index start; returns Eloisa's next move, or nullopt
// when it is not her turn or the pair has reached literals.
std::optional<Move> copycat_move(const Signature& sig, const Play& p, std::size_t start, const Formula& a);
// Moves the endgame takes for a pair of rank c: three per connective level.
inline std::size_t copycat_length(unsigned c) { return 3 * static_cast<std::size_t>(c); }

// (1, w+1)-strategy for a context holding not phi(0), exists x (phi(x) and
// not phi(Sx)) and forall x phi(x). phi is closed except for x.
DRStrategy induction_strategy(const Signature& sig, const Formula& phi, const std::string& x,
                              const std::vector<Formula>& context, std::vector<Term> witnesses = {});

// (1, 3c+5a+2)-strategy for a context holding the two formulas of ti_formulas.
DRStrategy ti_strategy(const Signature& sig, const Formula& phi, const std::string& x, const Ordinal& alpha,
                       const std::vector<Formula>& context, std::vector<Term> witnesses = {});

// 3c + 5*beta + k, with finite coefficients on the left.
Ordinal ti_label(unsigned c, const Ordinal& beta, unsigned k);

}  // namespace pagame
