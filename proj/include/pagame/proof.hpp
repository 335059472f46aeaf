#pragma once

#include "pagame/formula.hpp"
#include "pagame/ordinal.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pagame {

enum class RuleKind { BasicAxiom, Induction, TI, Or, And, Exists, Forall, Cut };

std::string render(RuleKind k);

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

// One inference of the finitary Tait calculus. Sequents are sets; the order of
// the conclusion is kept only for display and for the game context.
struct ProofNode {
    RuleKind kind = RuleKind::BasicAxiom;
    std::vector<Formula> conclusion;
    // Principal formula of or/and/exists/forall; cut formula of cut; the
    // induction formula of induction and ti.
    Formula formula;
    std::string var;               // eigenvariable, or the induction variable
    Term witness;                  // exists
    Selector pick;                 // or
    Ordinal bound;                 // ti
    std::vector<Formula> context;  // side formulas of induction and ti
    std::vector<Proof> premises;
    int line = 0;
    std::size_t id = 0;  // preorder position, 0 at the root
};

struct ProofFile {
    Signature sig;
    FormulaMacros macros;
    std::optional<std::vector<Formula>> goal;
    Proof root;
};

ProofFile parse_proof(std::string_view text);
ProofFile load_proof(const std::string& path);

// The axiom formulas an induction or ti node adds to its context.
std::vector<Formula> induction_formulas(const Formula& phi, const std::string& x);
std::vector<Formula> ti_formulas(const Formula& phi, const std::string& x, const Ordinal& alpha);

// phi with x replaced by a term.
Formula at(const Formula& phi, const std::string& x, const Term& t);

struct ProofIssue {
    std::size_t node = 0;
    int line = 0;
    std::string message;
};

struct CheckOptions {
    std::uint64_t lint_bound = 16;
};

struct CheckReport {
    std::vector<ProofIssue> errors;
    std::vector<ProofIssue> notes;  // compound cuts and other non-fatal remarks
    std::size_t nodes = 0;
    std::size_t compound_cuts = 0;
    bool ok() const { return errors.empty(); }
};

CheckReport check_proof(const ProofFile& pf, const CheckOptions& opt = {});

// Preorder listing of the nodes.
std::vector<Proof> proof_nodes(const Proof& root);

// Every term occurring in the proof: subterms of its formulas and witnesses.
std::vector<Term> proof_terms(const Proof& root);

bool sequent_contains(const std::vector<Formula>& s, const Formula& f);

}  // namespace pagame
