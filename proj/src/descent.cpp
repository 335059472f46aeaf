#include "pagame/descent.hpp"

#include <map>

namespace pagame {

Strategy DRStrategy::strategy() const {
    auto e = eval;
    return [e](const Play& p) { return e(p).move; };
}

HeightFn DRStrategy::height() const {
    auto e = eval;
    return [e](const Play& p) { return e(p).height; };
}

DRStrategy lift(const DRStrategy& g, const Ordinal& gamma, const Ordinal& alpha) {
    if (gamma < g.gamma || alpha < g.alpha) throw std::invalid_argument("lift must not lower the bound");
    DRStrategy out = g;
    out.gamma = gamma;
    out.alpha = alpha;
    auto inner = g.eval;
    out.eval = [inner, alpha](const Play& p) {
        StrategyEval r = inner(p);
        if (p.moves.empty()) r.height = alpha;
        return r;
    };
    return out;
}

namespace {

bool match(const Term& pat, const Term& e, std::map<std::string, Nat>& bind) {
    switch (pat->kind) {
        case TermNode::Kind::Var: {
            if (!is_numeral(e)) return false;
            auto [it, fresh] = bind.emplace(pat->name, e->value);
            return fresh || it->second == e->value;
        }
        case TermNode::Kind::Num:
            return is_numeral(e) && e->value == pat->value;
        case TermNode::Kind::Succ:
            if (is_numeral(e)) return e->value > 0 && match(pat->args[0], num(e->value - 1), bind);
            return e->kind == TermNode::Kind::Succ && match(pat->args[0], e->args[0], bind);
        case TermNode::Kind::App:
            if (e->kind != TermNode::Kind::App || e->name != pat->name || e->args.size() != pat->args.size())
                return false;
            for (std::size_t i = 0; i < pat->args.size(); ++i)
                if (!match(pat->args[i], e->args[i], bind)) return false;
            return true;
    }
    return false;
}

}  // namespace

bool instantiates(const std::vector<Term>& F, const Term& e) {
    for (const auto& t : F) {
        std::map<std::string, Nat> bind;
        if (match(t, e, bind)) return true;
    }
    return false;
}

DRCheckReport dr_strategy_check(const Signature& sig, const DRStrategy& g, const std::vector<Play>& plays) {
    DRCheckReport r;
    Play empty{g.context, {}};
    Ordinal h0 = g.eval(empty).height;
    if (h0 != g.alpha) r.violations.push_back("h(<>) = " + render(h0) + " but declared alpha is " + render(g.alpha));
    for (const auto& p : plays) {
        Play prefix{p.context, {}};
        Ordinal prev_h;
        bool prev_winning = false;
        for (std::size_t k = 0; k <= p.moves.size(); ++k) {
            bool winning = is_winning(sig, prefix);
            StrategyEval ev = g.eval(prefix);
            ++r.positions;
            if (k > 0 && !prev_winning && !(ev.height < prev_h))
                r.violations.push_back("height does not decrease at " + render(prefix));
            prev_h = ev.height;
            prev_winning = winning;
            if (!winning && to_move(prefix) == Player::Eloisa) {
                if (ev.stages.empty()) r.violations.push_back("no stages at " + render(prefix));
                for (std::size_t s = 0; s < ev.stages.size(); ++s) {
                    if (!(ev.stages[s] < g.gamma))
                        r.violations.push_back("stage ordinal " + render(ev.stages[s]) + " not below gamma at " +
                                               render(prefix));
                    if (s > 0 && !(ev.stages[s] < ev.stages[s - 1]))
                        r.violations.push_back("stage ordinals do not decrease at " + render(prefix));
                }
                if (ev.move && ev.move->tag == MoveTag::Guess && ev.move->selector &&
                    ev.move->selector->kind == Selector::Kind::Index) {
                    Term w = ev.move->witness ? ev.move->witness : num(ev.move->selector->index);
                    if (!instantiates(g.witnesses, w)) r.violations.push_back("witness " + render(w) + " is not in F");
                }
            }
            if (k < p.moves.size()) prefix.moves.push_back(p.moves[k]);
        }
    }
    return r;
}

std::vector<Play> sample_plays(const Signature& sig, const DRStrategy& g, const Opponent& opp, std::size_t count,
                               std::size_t fuel) {
    std::vector<Play> out;
    Strategy f = g.strategy();
    for (std::size_t i = 0; i < count; ++i) out.push_back(simulate(sig, f, opp, Play{g.context, {}}, fuel).play);
    return out;
}

std::string render_stage(std::size_t s, const std::string& value, const Ordinal& a) {
    return std::to_string(s) + ": y=" + value + " a=" + render(a);
}

}  // namespace pagame
