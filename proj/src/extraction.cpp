#include "pagame/extraction.hpp"

#include "pagame/errors.hpp"

namespace pagame {

void check_pi2_shape(const Formula& goal) {
    auto bad = [&] { throw UserError("not of the form forall x exists y phi0: " + render(goal)); };
    if (goal->kind != FKind::Forall || goal->body->kind != FKind::Exists) bad();
    const Formula& phi0 = goal->body->body;
    if (is_literal(phi0)) return;
    if (phi0->kind != FKind::Exists || !is_literal(phi0->body)) bad();
}

std::size_t check_nci_shape(const Formula& goal) {
    std::size_t k = 0;
    Formula f = goal;
    while (f->kind == FKind::Exists && f->body->kind == FKind::Forall) {
        ++k;
        f = f->body->body;
    }
    if (k == 0 || !is_literal(f)) throw UserError("not a prenex exists-forall formula over a literal: " + render(goal));
    return k;
}

namespace {

const Formula& single_goal(const DRStrategy& g) {
    if (g.context.size() != 1) throw UserError("extraction needs a strategy for a single formula");
    return g.context[0];
}

struct DriveState {
    Play play;
    StrategyEval ev;
    std::size_t idx = 0;
    Ordinal rho;
    bool won = false;
};

// Plays g against opp as a descent recursion: at the k-th position where
// Eloisa moves the stage ordinals are gamma*h(previous position) + g's own
// stages, starting from gamma*(alpha+1) + gamma_0.
Extraction drive(const Signature& sig, const DRStrategy& g, const Opponent& opp, const ExtractOptions& opt) {
    const Ordinal gamma = g.gamma;
    auto ordinal = [&](const Ordinal& rho, const Ordinal& s) {
        if (!(s < gamma)) throw InternalError("stage ordinal " + render(s) + " not below gamma " + render(gamma));
        return add(mul(gamma, rho), s);
    };
    auto evaluate = [&](DriveState& st) {
        st.ev = g.eval(st.play);
        if (st.ev.stages.empty()) throw BrokenStrategy("strategy reports no stages at " + render(st.play));
    };
    DRFunction<int, DriveState, Play> fn;
    fn.bound = mul(gamma, add(g.alpha, Ordinal(2)));
    fn.init = [&](const int&) {
        DriveState st;
        st.play = Play{g.context, {}};
        st.rho = succ(g.alpha);
        if (is_winning(sig, st.play)) {
            st.won = true;
            return std::pair<DriveState, Ordinal>{st, ordinal(st.rho, Ordinal(0))};
        }
        evaluate(st);
        Ordinal o = ordinal(st.rho, st.ev.stages[0]);
        return std::pair<DriveState, Ordinal>{std::move(st), o};
    };
    fn.step = [&](const int&, const DriveState& y, const Ordinal& o) -> std::pair<DriveState, Ordinal> {
        if (y.won) return {y, o};
        if (y.idx + 1 < y.ev.stages.size()) {
            DriveState z = y;
            ++z.idx;
            return {z, ordinal(z.rho, z.ev.stages[z.idx])};
        }
        DriveState z;
        z.play = y.play;
        z.rho = y.ev.height;
        if (!y.ev.move) throw BrokenStrategy("strategy gave no move at " + render(y.play));
        if (auto err = legality_error(sig, z.play, *y.ev.move))
            throw BrokenStrategy("strategy moved illegally (" + *err + "): " + render(*y.ev.move));
        z.play.moves.push_back(*y.ev.move);
        while (!is_winning(sig, z.play) && to_move(z.play) == Player::Abelard) {
            auto b = opp(z.play);
            if (!b) throw InternalError("the extraction oracle has no reply at " + render(z.play));
            push_move(sig, z.play, *b);
        }
        if (is_winning(sig, z.play)) {
            z.won = true;
            return {z, ordinal(z.rho, Ordinal(0))};
        }
        evaluate(z);
        Ordinal o2 = ordinal(z.rho, z.ev.stages[0]);
        return {std::move(z), o2};
    };
    fn.output = [](const DriveState& y) { return y.play; };

    auto trace = dr_trace(fn, 0, opt.watchdog);
    if (!trace.back().value.won)
        throw BrokenStrategy("height did not decrease before a winning play: " + render(trace.back().value.play));
    Extraction out;
    out.bound = fn.bound;
    out.play = trace.back().value.play;
    for (const auto& st : trace) {
        std::string v = st.value.play.moves.empty() ? "<>" : render(st.value.play.moves.back());
        out.stages.push_back({std::move(v), st.ordinal});
    }
    return out;
}

// Values chosen by guesses along the origin chain of move k, outermost first.
std::vector<Nat> chain_guesses(const Play& p, std::size_t k) {
    std::vector<Nat> out;
    while (true) {
        const Move& m = p.moves[k];
        if (m.tag == MoveTag::Guess && m.selector && m.selector->kind == Selector::Kind::Index)
            out.push_back(m.selector->index);
        if (m.origin.kind == Origin::Kind::Context) break;
        k = m.origin.index;
    }
    return {out.rbegin(), out.rend()};
}

}  // namespace

Extraction extract_pi2(const Signature& sig, const DRStrategy& g, const Nat& n, const ExtractOptions& opt) {
    const Formula goal = single_goal(g);
    check_pi2_shape(goal);
    Opponent opp = [goal, n](const Play& p) -> std::optional<Move> {
        if (!formula_equal(p.moves.back().formula, goal))
            throw InternalError("query of a formula other than the goal: " + render(p.moves.back()));
        return make_reply(p, Selector::at(n));
    };
    Extraction out = drive(sig, g, opp, opt);
    out.inputs = {n};
    // The guess taken from a reply to the goal query chose y.
    const Play& p = out.play;
    std::size_t k = p.moves.size() - 1;
    while (true) {
        const Move& m = p.moves[k];
        if (m.origin.kind == Origin::Kind::Context) throw InternalError("winning literal does not come from a reply");
        std::size_t o = m.origin.index;
        if (p.moves[o].tag == MoveTag::Reply) {
            out.outputs = {m.selector->index};
            break;
        }
        k = o;
    }
    if (!pi2_holds(sig, goal, n, out.outputs[0], p))
        throw InternalError("extracted value fails its defining formula at input " + n.str());
    return out;
}

bool pi2_holds(const Signature& sig, const Formula& goal, const Nat& n, const Nat& y, const Play& play) {
    Formula phi0 = instance(instance(goal, num(n)), num(y));
    if (is_literal(phi0)) return literal_true(sig, phi0);
    // exists z theta: the winning literal must be an instance of it.
    auto lit = winning_literal(sig, play);
    if (!lit) return false;
    const Move& last = play.moves.back();
    if (!formula_equal(last.formula, *lit) || !last.selector) return false;
    return formula_equal(*lit, child(phi0, *last.selector)) && literal_true(sig, *lit);
}

Extraction extract_nci(const Signature& sig, const DRStrategy& g, const std::vector<CounterFn>& f,
                       const ExtractOptions& opt) {
    const Formula goal = single_goal(g);
    std::size_t k = check_nci_shape(goal);
    if (f.size() != k) throw UserError("goal needs " + std::to_string(k) + " counterexample functions");
    Opponent opp = [f](const Play& p) -> std::optional<Move> {
        auto xs = chain_guesses(p, p.moves.size() - 1);
        if (xs.empty() || xs.size() > f.size()) throw InternalError("query outside the prenex prefix: " + render(p));
        return make_reply(p, Selector::at(f[xs.size() - 1](xs)));
    };
    Extraction out = drive(sig, g, opp, opt);
    out.outputs = chain_guesses(out.play, out.play.moves.size() - 1);
    if (out.outputs.size() != k) throw InternalError("winning literal is not an instance of the matrix");
    if (!nci_holds(sig, goal, f, out.outputs)) throw InternalError("extracted values fail the matrix");
    return out;
}

bool nci_holds(const Signature& sig, const Formula& goal, const std::vector<CounterFn>& f, const std::vector<Nat>& xs) {
    Formula cur = goal;
    std::vector<Nat> prefix;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        prefix.push_back(xs[j]);
        cur = instance(cur, num(xs[j]));
        cur = instance(cur, num(f[j](prefix)));
    }
    return is_literal(cur) && literal_true(sig, cur);
}

}  // namespace pagame
