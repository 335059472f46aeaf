#pragma once

#include "pagame/formula.hpp"
#include "pagame/ordinal.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pagame {

enum class MoveTag { Guess, Query, Reply };
enum class Player { Eloisa, Abelard };

// Where the formula a move acts on lives: a context formula or an earlier move.
struct Origin {
    enum class Kind { Context, Move };
    Kind kind = Kind::Context;
    std::size_t index = 0;

    static Origin context(std::size_t i) { return {Kind::Context, i}; }
    static Origin move(std::size_t i) { return {Kind::Move, i}; }
    friend bool operator==(const Origin&, const Origin&) = default;
};

// A move of the Tait game. As a game move it is the pair (tag, formula); origin,
// selector and witness record how the formula was reached.
struct Move {
    MoveTag tag = MoveTag::Guess;
    Formula formula;
    Origin origin;
    std::optional<Selector> selector;  // guesses and replies; quantifiers carry the value
    Term witness;                      // existential guesses; may be any closed term
};

// A play of G(context). The context is a finite list of closed formulas.
struct Play {
    std::vector<Formula> context;
    std::vector<Move> moves;
};

bool same_move(const Move& a, const Move& b);
std::string render(MoveTag t);
std::string render(const Move& m);
std::string render(const Play& p);

const Formula& origin_formula(const Play& p, const Origin& o);
Player to_move(const Play& p);
// Some formula of Gamma_n is a true closed literal.
bool is_winning(const Signature& sig, const Play& p);
std::optional<Formula> winning_literal(const Signature& sig, const Play& p);

// Empty when m may be appended to p.
std::optional<std::string> legality_error(const Signature& sig, const Play& p, const Move& m);
void push_move(const Signature& sig, Play& p, Move m);
Play extended(const Signature& sig, const Play& p, Move m);

Move make_guess(const Signature& sig, const Play& p, Origin o, const Selector& s);
Move make_guess_with(const Signature& sig, const Play& p, Origin o, const Term& witness);
Move make_query(const Play& p, Origin o);
Move make_reply(const Play& p, const Selector& s);

// First origin in Gamma_n (context first, then moves) whose formula equals f.
std::optional<Origin> find_origin(const Play& p, const Formula& f);
// The same game move re-expressed against another play; nullopt when the
// formula it acts on is not available there.
std::optional<Move> rebase(const Move& m, const Play& source, const Play& target);
// The moves of q from position skip on, re-expressed as a play of G(context).
std::optional<Play> translate(const Play& q, std::size_t skip, const std::vector<Formula>& context);

using Strategy = std::function<std::optional<Move>(const Play&)>;
using HeightFn = std::function<Ordinal(const Play&)>;
using Opponent = std::function<std::optional<Move>(const Play&)>;

// Every Eloisa-turn prefix is non-winning and followed by f's move.
bool in_strategy_tree(const Signature& sig, const Strategy& f, const Play& p);

enum class Outcome { Won, OpponentStuck, OpponentIllegal, FuelExhausted };

struct SimResult {
    Outcome outcome;
    Play play;
    std::string detail;
};

// Runs f against opp from start. Throws BrokenStrategy if f fails to move on a
// non-winning play or moves illegally.
SimResult simulate(const Signature& sig, const Strategy& f, const Opponent& opp, Play start, std::size_t fuel);

// Replies uniformly at random: left/right for conjunctions, numerals up to bound for universals.
Opponent random_opponent(std::mt19937_64& rng, std::uint64_t bound);

struct HeightReport {
    std::size_t steps_checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Along each play, h strictly decreases at every step taken from a non-winning position.
HeightReport check_height(const Signature& sig, const HeightFn& h, const std::vector<Play>& plays);

}  // namespace pagame
