#pragma once

#include "pagame/descent.hpp"
#include "pagame/formula.hpp"
#include "pagame/game.hpp"
#include "pagame/interaction.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pagame {

// A closed round (p_m, sigma_m, i_m) of a debate.
struct DebateRound {
    Play play;
    NodeAddress sigma;
    std::size_t pointer = 0;
};

// Debate for a cut on the disjunctive formula phi. Even rounds are plays of
// G(gamma, not phi), odd rounds plays of G(gamma, phi); the cut formula is the
// last context entry of every round.
struct DebateState {
    std::vector<Formula> gamma;
    Formula phi;
    std::vector<DebateRound> rounds;
    Play leading;     // p_n
    Play gamma_play;  // the part of the input consumed so far
    std::size_t stage = 0;

    std::size_t n() const { return rounds.size(); }
    PointerSeq pointers() const;
};

DebateState debate_initial(const std::vector<Formula>& gamma, const Formula& phi);
// Context of round m: gamma followed by not phi (m even) or phi (m odd).
std::vector<Formula> round_context(const std::vector<Formula>& gamma, const Formula& phi, std::size_t m);

struct SideInfo {
    bool cut_side = false;
    NodeAddress address;  // node of the cut formula's tree, when cut_side
};

// Side of the formula a move acts on, and its node when it is on the cut side.
SideInfo origin_side(const Play& p, std::size_t gamma_size, const Origin& o);
SideInfo move_side(const Play& p, std::size_t gamma_size, std::size_t k);
SideInfo candidate_side(const Play& p, std::size_t gamma_size, const Move& m);

enum class StepKind { Continue, Stop, Exit };

struct DebateStep {
    std::string label;  // won, cross, open, cut-move, cut-reply, context-*, input-exhausted, *-exit
    StepKind kind = StepKind::Continue;
    DebateState next;
    // For a stop on a context answer: Eloisa's answer, expressed against the input play.
    std::optional<Move> answer;
    std::string detail;
};

// f_i(p_n), requested only when it is Eloisa's turn in p_n.
using LeadingMove = std::function<std::optional<Move>(const DebateState&)>;

DebateStep debate_step(const Signature& sig, const DebateState& st, const Play& input, const LeadingMove& eloisa);

// Checks (a)-(h) on a debate state; prev, when given, is the preceding state
// for the monotonicity check. Returns the violated conditions.
std::vector<std::string> debate_invariants(const Signature& sig, const DebateState& st, const Play& input,
                                           const Strategy& f0, const Strategy& f1, const DebateState* prev);

struct DebateRecord {
    std::size_t stage = 0;
    std::string label;
    std::size_t n = 0;
    std::string last_move;
    std::string u;      // ordinal interaction sequence, DR runs only
    std::string delta;  // outer stage ordinal, DR runs only
};

struct DebateOptions {
    std::size_t fuel = 1'000'000;
    bool verify = false;
};

struct DebateRun {
    DebateState final;
    std::string stop_label;
    std::optional<Move> answer;
    std::vector<DebateRecord> records;
};

// Runs the canonical debate on the given G(gamma) play until STOP. EXIT and
// invariant violations raise InternalError.
DebateRun run_debate(const Signature& sig, const std::vector<Formula>& gamma, const Formula& phi, const Strategy& f0,
                     const Strategy& f1, const Play& input, const DebateOptions& opt = {});

// The strategy for G(gamma) obtained by cutting f0 (for G(gamma, not phi)) with
// f1 (for G(gamma, phi)). phi must be a disjunctive formula.
Strategy cut(const Signature& sig, const std::vector<Formula>& gamma, const Formula& phi, const Strategy& f0,
             const Strategy& f1, const DebateOptions& opt = {});

// Re-expresses a strategy for a sub-context as one for a larger context.
DRStrategy adapt_context(const Signature& sig, const DRStrategy& g, const std::vector<Formula>& context);

struct CutDrRun {
    DebateRun debate;
    std::vector<Ordinal> deltas;
    StrategyEval result;
};

// Descent-recursive cut. g0 and g1 are lifted to a common bound (gamma, alpha);
// with eta = gamma*(alpha+2) and nu the depth of phi the result is
// (c_nu(eta), c_nu(eta))-DR.
CutDrRun cut_dr_run(const Signature& sig, const DRStrategy& g0, const DRStrategy& g1, const std::vector<Formula>& gamma,
                    const Formula& phi, const Play& input, const DebateOptions& opt = {});
DRStrategy cut_dr(const Signature& sig, const DRStrategy& g0, const DRStrategy& g1, const std::vector<Formula>& gamma,
                  const Formula& phi, const DebateOptions& opt = {});

}  // namespace pagame
