#include "pagame/debate.hpp"

#include "pagame/errors.hpp"

#include <algorithm>

namespace pagame {

PointerSeq DebateState::pointers() const {
    PointerSeq out;
    out.reserve(rounds.size());
    for (const auto& r : rounds) out.push_back(r.pointer);
    return out;
}

std::vector<Formula> round_context(const std::vector<Formula>& gamma, const Formula& phi, std::size_t m) {
    std::vector<Formula> ctx = gamma;
    ctx.push_back(m % 2 == 0 ? negate(phi) : phi);
    return ctx;
}

DebateState debate_initial(const std::vector<Formula>& gamma, const Formula& phi) {
    if (polarity(phi) != Polarity::Disjunctive) throw std::invalid_argument("debate needs a disjunctive cut formula");
    DebateState st;
    st.gamma = gamma;
    st.phi = phi;
    st.leading = Play{round_context(gamma, phi, 0), {}};
    st.gamma_play = Play{gamma, {}};
    return st;
}

SideInfo origin_side(const Play& p, std::size_t gamma_size, const Origin& o) {
    if (o.kind == Origin::Kind::Context) return {o.index == gamma_size, {}};
    return move_side(p, gamma_size, o.index);
}

SideInfo move_side(const Play& p, std::size_t gamma_size, std::size_t k) {
    return candidate_side(p, gamma_size, p.moves.at(k));
}

SideInfo candidate_side(const Play& p, std::size_t gamma_size, const Move& m) {
    SideInfo base = origin_side(p, gamma_size, m.origin);
    if (base.cut_side && m.tag != MoveTag::Query) base.address.push_back(*m.selector);
    return base;
}

namespace {

const Play& round_play(const DebateState& st, std::size_t m) {
    return m < st.rounds.size() ? st.rounds[m].play : st.leading;
}

bool moves_prefix(const Play& a, const Play& b, bool strict) {
    if (a.moves.size() > b.moves.size() || (strict && a.moves.size() == b.moves.size())) return false;
    for (std::size_t k = 0; k < a.moves.size(); ++k)
        if (!same_move(a.moves[k], b.moves[k])) return false;
    return true;
}

std::set<NodeAddress> partial_strategy(const DebateState& st, std::size_t m) {
    std::set<NodeAddress> s;
    for (std::size_t k : view_W(st.pointers(), m)) s.insert(st.rounds[k].sigma);
    return s;
}

// Closes the leading play as round n and opens round n+1 from round m.
bool open_round(const Signature& sig, const DebateState& st, DebateStep& out, const NodeAddress& sigma, std::size_t m) {
    std::size_t n = st.n();
    out.next.rounds.push_back({st.leading, sigma, m});
    if (n == 0) {
        out.next.leading = Play{round_context(st.gamma, st.phi, 1), {}};
        return true;
    }
    const Play& pm = st.rounds[m].play;
    const NodeAddress& sm = st.rounds[m].sigma;
    if (pm.moves.empty() || pm.moves.back().tag != MoveTag::Query || sigma.size() <= sm.size()) {
        out.detail = "round " + std::to_string(m) + " does not end with a query below " + render(sigma);
        return false;
    }
    Move reply = make_reply(pm, sigma[sm.size()]);
    if (auto err = legality_error(sig, pm, reply)) {
        out.detail = *err;
        return false;
    }
    out.next.leading = pm;
    out.next.leading.moves.push_back(std::move(reply));
    return true;
}

}  // namespace

DebateStep debate_step(const Signature& sig, const DebateState& st, const Play& input, const LeadingMove& eloisa) {
    DebateStep out;
    out.next = st;
    out.next.stage = st.stage + 1;
    const Play& pn = st.leading;
    const std::size_t n = st.n();
    const std::size_t gs = st.gamma.size();
    const std::size_t l = st.gamma_play.moves.size();
    auto finish = [&](const char* label, StepKind kind, std::string detail = {}) {
        out.label = label;
        out.kind = kind;
        if (!detail.empty()) out.detail = std::move(detail);
        return out;
    };

    if (is_winning(sig, st.gamma_play)) return finish("won", StepKind::Stop);

    if (is_winning(sig, pn)) {
        if (n == 0 || pn.moves.empty()) return finish("cross-exit", StepKind::Exit, "leading play of round 0 is winning");
        const Move& last = pn.moves.back();
        SideInfo info = move_side(pn, gs, pn.moves.size() - 1);
        if (last.tag != MoveTag::Guess || !info.cut_side || !is_literal(last.formula) ||
            !literal_true(sig, last.formula))
            return finish("cross-exit", StepKind::Exit, "winning play does not end with a winning guess on the cut side");
        std::vector<std::size_t> hits;
        for (std::size_t m : view_V(st.pointers(), n))
            if (minimal_successor(st.phi, st.rounds[m].sigma, info.address)) hits.push_back(m);
        if (hits.size() != 1) return finish("cross-exit", StepKind::Exit, "no unique round below " + render(info.address));
        if (!open_round(sig, st, out, info.address, hits[0])) return finish("cross-exit", StepKind::Exit);
        return finish("cross", StepKind::Continue);
    }

    if (to_move(pn) == Player::Eloisa) {
        auto a = eloisa(st);
        if (!a) return finish("lead-exit", StepKind::Exit, "strategy gave no move in the leading play");
        if (auto err = legality_error(sig, pn, *a)) return finish("lead-exit", StepKind::Exit, "illegal strategy move: " + *err);
        SideInfo side = candidate_side(pn, gs, *a);
        if (!side.cut_side) {
            if (l >= input.moves.size() || !same_move(*a, input.moves[l])) {
                Play consumed{input.context, {input.moves.begin(), input.moves.begin() + static_cast<long>(l)}};
                out.answer = rebase(*a, pn, consumed);
                if (!out.answer) return finish("context-answer", StepKind::Exit, "answer is not a move of the input game");
                return finish("context-answer", StepKind::Stop);
            }
            auto g = rebase(*a, pn, st.gamma_play);
            if (!g || legality_error(sig, st.gamma_play, *g))
                return finish("context-append", StepKind::Exit, "move is not legal on the context side");
            out.next.leading.moves.push_back(*a);
            out.next.gamma_play.moves.push_back(std::move(*g));
            return finish("context-append", StepKind::Continue);
        }
        out.next.leading.moves.push_back(*a);
        return finish("cut-move", StepKind::Continue);
    }

    SideInfo info = move_side(pn, gs, pn.moves.size() - 1);
    if (!info.cut_side) {
        if (l >= input.moves.size()) return finish("input-exhausted", StepKind::Stop);
        auto g = rebase(input.moves[l], input, st.gamma_play);
        if (!g || legality_error(sig, st.gamma_play, *g)) return finish("input-exhausted", StepKind::Stop);
        auto b = rebase(input.moves[l], input, pn);
        if (!b) return finish("context-reply", StepKind::Exit, "context reply does not fit the leading play");
        out.next.gamma_play.moves.push_back(std::move(*g));
        out.next.leading.moves.push_back(std::move(*b));
        return finish("context-reply", StepKind::Continue);
    }

    const NodeAddress& sigma = info.address;
    if (n == 0) {
        if (!sigma.empty()) return finish("open-exit", StepKind::Exit, "round 0 queries below the cut formula");
        open_round(sig, st, out, sigma, 0);
        return finish("open", StepKind::Continue);
    }
    PointerSeq ptr = st.pointers();
    IndexSet view = view_V(ptr, n);
    std::vector<std::size_t> inner;
    for (std::size_t m : view) {
        if (m == 0) continue;
        const NodeAddress& sm = st.rounds[m].sigma;
        if (is_prefix(st.rounds[ptr[m]].sigma, sigma) && sigma.size() < sm.size() && is_prefix(sigma, sm))
            inner.push_back(m);
    }
    if (inner.size() == 1) {
        const NodeAddress& sm = st.rounds[inner[0]].sigma;
        Move reply = make_reply(pn, sm[sigma.size()]);
        if (auto err = legality_error(sig, pn, reply)) return finish("cut-reply", StepKind::Exit, *err);
        out.next.leading.moves.push_back(std::move(reply));
        return finish("cut-reply", StepKind::Continue);
    }
    std::vector<std::size_t> hits;
    for (std::size_t m : view)
        if (minimal_successor(st.phi, st.rounds[m].sigma, sigma)) hits.push_back(m);
    if (hits.size() == 1) {
        if (!open_round(sig, st, out, sigma, hits[0])) return finish("open-exit", StepKind::Exit);
        return finish("open", StepKind::Continue);
    }
    return finish("open-exit", StepKind::Exit, "no unique round for the query at " + render(sigma));
}

std::vector<std::string> debate_invariants(const Signature& sig, const DebateState& st, const Play& input,
                                           const Strategy& f0, const Strategy& f1, const DebateState* prev) {
    std::vector<std::string> v;
    const std::size_t n = st.n();
    const std::size_t gs = st.gamma.size();
    const PointerSeq ptr = st.pointers();
    const Formula& phi = st.phi;

    // (a), for the leading play; closed rounds were checked while leading.
    if (!in_strategy_tree(sig, n % 2 == 0 ? f0 : f1, st.leading)) v.push_back("(a) leading play leaves the strategy tree");

    // (b)
    if (n > 0 && !st.rounds[0].sigma.empty()) v.push_back("(b) sigma_0 is not the root");
    for (std::size_t m = 0; m < n; ++m) {
        const auto& r = st.rounds[m];
        if (node_depth(phi, r.sigma) % 2 != m % 2) v.push_back("(b) sigma_" + std::to_string(m) + " has the wrong parity");
        if (r.play.moves.empty()) {
            v.push_back("(b) round " + std::to_string(m) + " is empty");
            continue;
        }
        const Move& last = r.play.moves.back();
        SideInfo info = move_side(r.play, gs, r.play.moves.size() - 1);
        bool winning_guess = last.tag == MoveTag::Guess && is_literal(last.formula) && literal_true(sig, last.formula);
        bool query = last.tag == MoveTag::Query;
        if (!info.cut_side || !(info.address == r.sigma) || !(winning_guess || query))
            v.push_back("(b) round " + std::to_string(m) + " does not end at its node " + render(r.sigma));
    }

    // (c)
    if (!ptr.empty() && !is_interaction(ptr)) v.push_back("(c) pointers are not an interaction sequence");
    for (std::size_t m = 1; m < n; ++m) {
        if (!moves_prefix(round_play(st, ptr[m]), round_play(st, m + 1), true))
            v.push_back("(c) round " + std::to_string(ptr[m]) + " is not a proper prefix of round " + std::to_string(m + 1));
        if (!minimal_successor(phi, st.rounds[ptr[m]].sigma, st.rounds[m].sigma))
            v.push_back("(c) sigma_" + std::to_string(ptr[m]) + " is not a minimal predecessor of sigma_" + std::to_string(m));
    }

    // (d)
    if (!moves_prefix(st.gamma_play, input, false)) v.push_back("(d) consumed play is not a prefix of the input");
    {
        Play replay{st.gamma, {}};
        for (const auto& mv : st.gamma_play.moves) {
            if (legality_error(sig, replay, mv)) {
                v.push_back("(d) consumed play is not legal");
                break;
            }
            replay.moves.push_back(mv);
        }
    }

    // (e)
    if (prev) {
        bool ok = prev->rounds.size() <= n;
        for (std::size_t m = 0; ok && m < prev->rounds.size(); ++m) {
            const auto& a = prev->rounds[m];
            const auto& b = st.rounds[m];
            ok = a.pointer == b.pointer && a.sigma == b.sigma && moves_prefix(a.play, b.play, false) &&
                 a.play.moves.size() == b.play.moves.size();
        }
        if (ok && prev->rounds.size() == n) ok = moves_prefix(prev->leading, st.leading, false);
        if (ok) ok = moves_prefix(prev->gamma_play, st.gamma_play, false);
        if (!ok) v.push_back("(e) debate is not monotone");
    }

    // (f)
    if (!st.leading.moves.empty() && !move_side(st.leading, gs, st.leading.moves.size() - 1).cut_side) {
        if (st.gamma_play.moves.empty() || !same_move(st.gamma_play.moves.back(), st.leading.moves.back()))
            v.push_back("(f) context move of the leading play is not the last consumed move");
    }
    if (!st.gamma_play.moves.empty() && st.gamma_play.moves.back().tag == MoveTag::Query) {
        if (st.leading.moves.empty() || !same_move(st.gamma_play.moves.back(), st.leading.moves.back()))
            v.push_back("(f) pending context query is not the last move of the leading play");
    }

    // (g) and (h)
    for (std::size_t m = 0; m <= n; ++m) {
        std::set<NodeAddress> s = partial_strategy(st, m);
        bool shaped = m % 2 == 1 ? is_odd_set(phi, s) : is_even_set(phi, s);
        if (!shaped) v.push_back("(g) S_" + std::to_string(m) + " is not " + (m % 2 ? "odd" : "even"));
        const Play& pm = round_play(st, m);
        for (std::size_t k = 0; k < pm.moves.size(); ++k) {
            if (pm.moves[k].tag != MoveTag::Reply) continue;
            SideInfo info = move_side(pm, gs, k);
            if (!info.cut_side) continue;
            bool covered = std::any_of(s.begin(), s.end(), [&](const NodeAddress& t) { return is_prefix(info.address, t); });
            if (!covered) v.push_back("(h) reply at " + render(info.address) + " in round " + std::to_string(m) + " leaves S_m");
        }
        if (m < n && !pm.moves.empty() && pm.moves.back().tag == MoveTag::Query) {
            SideInfo info = move_side(pm, gs, pm.moves.size() - 1);
            for (const auto& t : s)
                if (t.size() > info.address.size() && is_prefix(info.address, t))
                    v.push_back("(h) Abelard could still move in round " + std::to_string(m));
        }
    }
    return v;
}

DebateRun run_debate(const Signature& sig, const std::vector<Formula>& gamma, const Formula& phi, const Strategy& f0,
                     const Strategy& f1, const Play& input, const DebateOptions& opt) {
    DebateRun run;
    DebateState st = debate_initial(gamma, phi);
    LeadingMove eloisa = [&](const DebateState& s) { return (s.n() % 2 == 0 ? f0 : f1)(s.leading); };
    for (std::size_t step = 0;; ++step) {
        if (step >= opt.fuel) throw FuelExhausted("debate exceeded its stage budget");
        DebateStep r = debate_step(sig, st, input, eloisa);
        DebateRecord rec;
        rec.stage = st.stage;
        rec.label = r.label;
        rec.n = st.n();
        if (!r.next.leading.moves.empty()) rec.last_move = render(r.next.leading.moves.back());
        run.records.push_back(std::move(rec));
        if (r.kind == StepKind::Exit) throw InternalError("debate EXIT in case " + r.label + ": " + r.detail);
        if (r.kind == StepKind::Stop) {
            run.stop_label = r.label;
            run.answer = r.answer;
            run.final = std::move(st);
            return run;
        }
        if (opt.verify) {
            auto bad = debate_invariants(sig, r.next, input, f0, f1, &st);
            if (!bad.empty()) throw InternalError("debate invariant violated after " + r.label + ": " + bad.front());
        }
        st = std::move(r.next);
    }
}

Strategy cut(const Signature& sig, const std::vector<Formula>& gamma, const Formula& phi, const Strategy& f0,
             const Strategy& f1, const DebateOptions& opt) {
    return [sig, gamma, phi, f0, f1, opt](const Play& p) -> std::optional<Move> {
        return run_debate(sig, gamma, phi, f0, f1, p, opt).answer;
    };
}

DRStrategy adapt_context(const Signature& sig, const DRStrategy& g, const std::vector<Formula>& context) {
    (void)sig;
    bool same = g.context.size() == context.size() &&
                std::equal(g.context.begin(), g.context.end(), context.begin(), formula_equal);
    if (same) return g;
    DRStrategy out = g;
    out.context = context;
    auto inner = g.eval;
    auto inner_ctx = g.context;
    out.eval = [inner, inner_ctx](const Play& q) {
        auto p = translate(q, 0, inner_ctx);
        if (!p) throw BrokenStrategy("play does not restrict to the strategy's context: " + render(q));
        StrategyEval r = inner(*p);
        if (r.move) {
            auto m = rebase(*r.move, *p, q);
            if (!m) throw BrokenStrategy("strategy move does not fit the larger context");
            r.move = std::move(m);
        }
        return r;
    };
    return out;
}

CutDrRun cut_dr_run(const Signature& sig, const DRStrategy& g0_in, const DRStrategy& g1_in,
                    const std::vector<Formula>& gamma, const Formula& phi, const Play& input, const DebateOptions& opt) {
    const Ordinal gam = std::max(g0_in.gamma, g1_in.gamma);
    const Ordinal alp = std::max(g0_in.alpha, g1_in.alpha);
    const DRStrategy g[2] = {adapt_context(sig, lift(g0_in, gam, alp), round_context(gamma, phi, 0)),
                             adapt_context(sig, lift(g1_in, gam, alp), round_context(gamma, phi, 1))};
    const Strategy f[2] = {g[0].strategy(), g[1].strategy()};
    const unsigned nu = formula_depth(phi);
    const Ordinal eta = mul(gam, add(alp, Ordinal(2)));

    CutDrRun out;
    DebateState st = debate_initial(gamma, phi);
    std::vector<Ordinal> frozen;        // beta'_m of closed rounds
    std::vector<Ordinal> round_height;  // h(p_m) of closed rounds
    Ordinal rho = add(alp, Ordinal(1));
    StrategyEval cur = g[0].eval(st.leading);

    auto emit = [&](const Ordinal& beta) {
        OrdIntSeq u;
        u.ptr = st.pointers();
        u.ords = frozen;
        u.ords.push_back(beta);
        Ordinal delta;
        try {
            delta = c_height(nu, eta, u);
        } catch (const std::invalid_argument& e) {
            throw InternalError(std::string("cut stage sequence left the height tree: ") + e.what());
        }
        if (!out.deltas.empty() && !(delta < out.deltas.back()))
            throw InternalError("cut stage ordinals do not decrease at u = " + render(u));
        out.deltas.push_back(delta);
        DebateRecord rec;
        rec.stage = st.stage;
        rec.n = st.n();
        rec.label = "emit";
        if (!st.leading.moves.empty()) rec.last_move = render(st.leading.moves.back());
        rec.u = render(u);
        rec.delta = render(delta);
        out.debate.records.push_back(std::move(rec));
    };
    auto emit_leading = [&] {
        bool active = to_move(st.leading) == Player::Eloisa && !is_winning(sig, st.leading);
        if (!active) {
            emit(mul(gam, rho));
            return;
        }
        if (cur.stages.empty()) throw BrokenStrategy("inner strategy reported no stages");
        for (const auto& gk : cur.stages) emit(add(mul(gam, rho), gk));
    };

    emit_leading();
    LeadingMove eloisa = [&](const DebateState&) { return cur.move; };
    for (std::size_t step = 0;; ++step) {
        if (step >= opt.fuel) throw FuelExhausted("cut exceeded its stage budget");
        DebateStep r = debate_step(sig, st, input, eloisa);
        DebateRecord rec;
        rec.stage = st.stage;
        rec.label = r.label;
        rec.n = st.n();
        if (!r.next.leading.moves.empty()) rec.last_move = render(r.next.leading.moves.back());
        out.debate.records.push_back(std::move(rec));
        if (r.kind == StepKind::Exit) throw InternalError("debate EXIT in case " + r.label + ": " + r.detail);
        if (r.kind == StepKind::Stop) {
            out.debate.stop_label = r.label;
            out.debate.answer = r.answer;
            out.debate.final = std::move(st);
            break;
        }
        if (opt.verify) {
            auto bad = debate_invariants(sig, r.next, input, f[0], f[1], &st);
            if (!bad.empty()) throw InternalError("debate invariant violated after " + r.label + ": " + bad.front());
        }
        const std::size_t n = st.n();
        if (r.next.n() == n) {
            rho = cur.height;
            st = std::move(r.next);
            cur = g[n % 2].eval(st.leading);
        } else {
            std::size_t m = r.next.rounds.back().pointer;
            frozen.push_back(mul(gam, add(cur.height, Ordinal(1))));
            round_height.push_back(cur.height);
            rho = n == 0 ? add(alp, Ordinal(1)) : round_height[m];
            st = std::move(r.next);
            cur = g[(n + 1) % 2].eval(st.leading);
        }
        emit_leading();
    }

    out.result.height = out.deltas.back();
    out.result.stages = out.deltas;
    out.result.move = out.debate.answer;
    return out;
}

DRStrategy cut_dr(const Signature& sig, const DRStrategy& g0, const DRStrategy& g1, const std::vector<Formula>& gamma,
                  const Formula& phi, const DebateOptions& opt) {
    const Ordinal gam = std::max(g0.gamma, g1.gamma);
    const Ordinal alp = std::max(g0.alpha, g1.alpha);
    const unsigned nu = formula_depth(phi);
    const Ordinal eta = mul(gam, add(alp, Ordinal(2)));
    const Ordinal top = c_height(nu, eta, std::nullopt);

    DRStrategy out;
    out.context = gamma;
    out.gamma = top;
    out.alpha = top;
    out.witnesses = g0.witnesses;
    for (const auto& t : g1.witnesses) out.witnesses.push_back(t);
    out.eval = [sig, g0, g1, gamma, phi, opt, top](const Play& p) {
        CutDrRun run = cut_dr_run(sig, g0, g1, gamma, phi, p, opt);
        StrategyEval r = run.result;
        if (p.moves.empty()) r.height = top;
        return r;
    };
    return out;
}

}  // namespace pagame
