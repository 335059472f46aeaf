#pragma once

#include "pagame/compiler.hpp"
#include "pagame/debate.hpp"
#include "pagame/game.hpp"
#include "pagame/proof.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>

namespace pagame::testing {

inline std::string source_path(const std::string& rel) { return std::string(PAGAME_SOURCE_DIR) + "/" + rel; }

inline ProofFile load_example(const std::string& name) { return load_proof(source_path("proofs/" + name)); }

inline Opponent seeded(std::uint64_t seed, std::uint64_t bound) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng, bound](const Play& p) { return random_opponent(*rng, bound)(p); };
}

// Gamma = {exists x (x = S0)}, phi = exists y (y = S0).
struct SmallCut {
    Signature sig;
    std::vector<Formula> gamma{parse_formula("(exists x (= x (S 0)))")};
    Formula phi = parse_formula("(exists y (= y (S 0)))");

    // Plays G(gamma, not phi): query the universal, then guess Abelard's value on the context side.
    Strategy f0() const {
        Signature s = sig;
        return [s](const Play& p) -> std::optional<Move> {
            if (is_winning(s, p) || to_move(p) != Player::Eloisa) return std::nullopt;
            if (p.moves.empty()) return make_query(p, Origin::context(1));
            const Move& r = p.moves.back();
            return make_guess_with(s, p, Origin::context(0), num(r.selector->index));
        };
    }
    // Plays G(gamma, phi): guess y := S0 at once.
    Strategy f1() const {
        Signature s = sig;
        return [s](const Play& p) -> std::optional<Move> {
            if (is_winning(s, p) || to_move(p) != Player::Eloisa) return std::nullopt;
            return make_guess_with(s, p, Origin::context(1), succ(num(0)));
        };
    }
};

}  // namespace pagame::testing
