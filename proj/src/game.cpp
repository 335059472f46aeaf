#include "pagame/game.hpp"

#include "pagame/errors.hpp"

namespace pagame {

bool same_move(const Move& a, const Move& b) { return a.tag == b.tag && formula_equal(a.formula, b.formula); }

std::string render(MoveTag t) {
    switch (t) {
        case MoveTag::Guess: return "guess";
        case MoveTag::Query: return "query";
        case MoveTag::Reply: return "reply";
    }
    return "";
}

std::string render(const Move& m) { return "(" + render(m.tag) + " " + render(m.formula) + ")"; }

std::string render(const Play& p) {
    std::string out;
    for (std::size_t k = 0; k < p.moves.size(); ++k) {
        if (k) out += " ";
        out += render(p.moves[k]);
    }
    return "[" + out + "]";
}

const Formula& origin_formula(const Play& p, const Origin& o) {
    if (o.kind == Origin::Kind::Context) {
        if (o.index >= p.context.size()) throw std::out_of_range("origin beyond the context");
        return p.context[o.index];
    }
    if (o.index >= p.moves.size()) throw std::out_of_range("origin beyond the play");
    return p.moves[o.index].formula;
}

Player to_move(const Play& p) {
    if (p.moves.empty() || p.moves.back().tag != MoveTag::Query) return Player::Eloisa;
    return Player::Abelard;
}

std::optional<Formula> winning_literal(const Signature& sig, const Play& p) {
    for (const auto& f : p.context)
        if (is_literal(f) && literal_true(sig, f)) return f;
    for (const auto& m : p.moves)
        if (is_literal(m.formula) && literal_true(sig, m.formula)) return m.formula;
    return std::nullopt;
}

bool is_winning(const Signature& sig, const Play& p) { return winning_literal(sig, p).has_value(); }

namespace {

bool origin_valid(const Play& p, const Origin& o) {
    return o.kind == Origin::Kind::Context ? o.index < p.context.size() : o.index < p.moves.size();
}

}  // namespace

std::optional<std::string> legality_error(const Signature& sig, const Play& p, const Move& m) {
    if (!m.formula) return "move without a formula";
    Player turn = to_move(p);
    switch (m.tag) {
        case MoveTag::Guess: {
            if (turn != Player::Eloisa) return "guess on Abelard's turn";
            if (!origin_valid(p, m.origin)) return "guess from an unknown formula";
            const Formula& src = origin_formula(p, m.origin);
            if (polarity(src) != Polarity::Disjunctive) return "guess from a formula that is not a disjunction";
            if (!m.selector) return "guess without a selector";
            Formula expect;
            if (src->kind == FKind::Or) {
                if (m.selector->kind == Selector::Kind::Index) return "index selector on a binary disjunction";
                expect = child(src, *m.selector);
            } else if (m.witness) {
                if (!is_closed(m.witness)) return "witness is not closed";
                if (!(*m.selector == Selector::at(sig.eval(m.witness)))) return "selector does not match witness value";
                expect = instance(src, m.witness);
            } else {
                if (m.selector->kind != Selector::Kind::Index) return "left/right selector on an existential";
                expect = child(src, *m.selector);
            }
            if (!formula_equal(expect, m.formula)) return "guessed formula is not the selected disjunct";
            return std::nullopt;
        }
        case MoveTag::Query: {
            if (turn != Player::Eloisa) return "query on Abelard's turn";
            if (!origin_valid(p, m.origin)) return "query of an unknown formula";
            const Formula& src = origin_formula(p, m.origin);
            if (polarity(src) != Polarity::Conjunctive) return "query of a formula that is not a conjunction";
            if (!formula_equal(src, m.formula)) return "queried formula differs from its origin";
            return std::nullopt;
        }
        case MoveTag::Reply: {
            if (turn != Player::Abelard) return "reply without a pending query";
            if (!(m.origin == Origin::move(p.moves.size() - 1))) return "reply must answer the last query";
            const Formula& q = p.moves.back().formula;
            if (!m.selector) return "reply without a selector";
            bool binary = q->kind == FKind::And;
            if (binary == (m.selector->kind == Selector::Kind::Index)) return "selector does not fit the queried formula";
            if (!formula_equal(child(q, *m.selector), m.formula)) return "reply is not the selected conjunct";
            return std::nullopt;
        }
    }
    return "unknown move tag";
}

void push_move(const Signature& sig, Play& p, Move m) {
    if (auto err = legality_error(sig, p, m)) throw IllegalMove(*err + ": " + render(m));
    p.moves.push_back(std::move(m));
}

Play extended(const Signature& sig, const Play& p, Move m) {
    Play q = p;
    push_move(sig, q, std::move(m));
    return q;
}

Move make_guess(const Signature& sig, const Play& p, Origin o, const Selector& s) {
    (void)sig;
    Move m;
    m.tag = MoveTag::Guess;
    m.origin = o;
    m.selector = s;
    m.formula = child(origin_formula(p, o), s);
    return m;
}

Move make_guess_with(const Signature& sig, const Play& p, Origin o, const Term& witness) {
    Move m;
    m.tag = MoveTag::Guess;
    m.origin = o;
    m.witness = witness;
    m.selector = Selector::at(sig.eval(witness));
    m.formula = instance(origin_formula(p, o), witness);
    return m;
}

Move make_query(const Play& p, Origin o) {
    Move m;
    m.tag = MoveTag::Query;
    m.origin = o;
    m.formula = origin_formula(p, o);
    return m;
}

Move make_reply(const Play& p, const Selector& s) {
    if (p.moves.empty()) throw std::invalid_argument("reply on an empty play");
    Move m;
    m.tag = MoveTag::Reply;
    m.origin = Origin::move(p.moves.size() - 1);
    m.selector = s;
    m.formula = child(p.moves.back().formula, s);
    return m;
}

std::optional<Origin> find_origin(const Play& p, const Formula& f) {
    for (std::size_t i = 0; i < p.context.size(); ++i)
        if (formula_equal(p.context[i], f)) return Origin::context(i);
    for (std::size_t i = 0; i < p.moves.size(); ++i)
        if (formula_equal(p.moves[i].formula, f)) return Origin::move(i);
    return std::nullopt;
}

std::optional<Move> rebase(const Move& m, const Play& source, const Play& target) {
    Move out = m;
    if (m.tag == MoveTag::Reply) {
        if (target.moves.empty() || target.moves.back().tag != MoveTag::Query) return std::nullopt;
        if (!formula_equal(target.moves.back().formula, origin_formula(source, m.origin))) return std::nullopt;
        out.origin = Origin::move(target.moves.size() - 1);
        return out;
    }
    auto o = find_origin(target, origin_formula(source, m.origin));
    if (!o) return std::nullopt;
    out.origin = *o;
    return out;
}

std::optional<Play> translate(const Play& q, std::size_t skip, const std::vector<Formula>& context) {
    Play p{context, {}};
    for (std::size_t k = skip; k < q.moves.size(); ++k) {
        auto m = rebase(q.moves[k], q, p);
        if (!m) return std::nullopt;
        p.moves.push_back(std::move(*m));
    }
    return p;
}

bool in_strategy_tree(const Signature& sig, const Strategy& f, const Play& p) {
    Play prefix{p.context, {}};
    for (std::size_t k = 0; k < p.moves.size(); ++k) {
        if (to_move(prefix) == Player::Eloisa) {
            if (is_winning(sig, prefix)) return false;
            auto a = f(prefix);
            if (!a || !same_move(*a, p.moves[k])) return false;
        }
        prefix.moves.push_back(p.moves[k]);
    }
    return true;
}

SimResult simulate(const Signature& sig, const Strategy& f, const Opponent& opp, Play start, std::size_t fuel) {
    Play p = std::move(start);
    for (std::size_t step = 0; step < fuel; ++step) {
        if (is_winning(sig, p)) return {Outcome::Won, std::move(p), {}};
        if (to_move(p) == Player::Eloisa) {
            auto a = f(p);
            if (!a) throw BrokenStrategy("strategy gave no move on a non-winning play " + render(p));
            if (auto err = legality_error(sig, p, *a))
                throw BrokenStrategy("strategy moved illegally (" + *err + "): " + render(*a));
            p.moves.push_back(std::move(*a));
        } else {
            auto b = opp(p);
            if (!b) return {Outcome::OpponentStuck, std::move(p), {}};
            if (auto err = legality_error(sig, p, *b)) return {Outcome::OpponentIllegal, std::move(p), *err};
            p.moves.push_back(std::move(*b));
        }
    }
    if (is_winning(sig, p)) return {Outcome::Won, std::move(p), {}};
    return {Outcome::FuelExhausted, std::move(p), {}};
}

Opponent random_opponent(std::mt19937_64& rng, std::uint64_t bound) {
    return [&rng, bound](const Play& p) -> std::optional<Move> {
        if (p.moves.empty() || p.moves.back().tag != MoveTag::Query) return std::nullopt;
        const Formula& q = p.moves.back().formula;
        if (q->kind == FKind::And) return make_reply(p, rng() % 2 ? Selector::right() : Selector::left());
        return make_reply(p, Selector::at(Nat(std::uniform_int_distribution<std::uint64_t>(0, bound)(rng))));
    };
}

HeightReport check_height(const Signature& sig, const HeightFn& h, const std::vector<Play>& plays) {
    HeightReport r;
    for (const auto& p : plays) {
        Play prefix{p.context, {}};
        Ordinal prev = h(prefix);
        for (std::size_t k = 0; k < p.moves.size(); ++k) {
            bool winning = is_winning(sig, prefix);
            prefix.moves.push_back(p.moves[k]);
            Ordinal cur = h(prefix);
            ++r.steps_checked;
            if (!winning && !(cur < prev))
                r.violations.push_back("height " + render(prev) + " -> " + render(cur) + " after " + render(prefix));
            prev = cur;
        }
    }
    return r;
}

}  // namespace pagame
