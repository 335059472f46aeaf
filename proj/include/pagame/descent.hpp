#pragma once

#include "pagame/errors.hpp"
#include "pagame/game.hpp"
#include "pagame/ordinal.hpp"

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pagame {

class DescentError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A function given by descent recursion: stage 0 comes from init, each later
// stage from step, and the first stage whose successor does not lower the
// ordinal is final; output reads the result off it.
template <class X, class Y, class Z>
struct DRFunction {
    Ordinal bound;
    std::function<std::pair<Y, Ordinal>(const X&)> init;
    std::function<std::pair<Y, Ordinal>(const X&, const Y&, const Ordinal&)> step;
    std::function<Z(const Y&)> output;
};

template <class Y>
struct Stage {
    Y value;
    Ordinal ordinal;
};

template <class X, class Y, class Z>
std::vector<Stage<Y>> dr_trace(const DRFunction<X, Y, Z>& g, const X& x, std::size_t watchdog = 10'000'000) {
    std::vector<Stage<Y>> out;
    auto [y, a] = g.init(x);
    if (!(a < g.bound)) throw DescentError("stage ordinal " + render(a) + " not below " + render(g.bound));
    out.push_back({std::move(y), std::move(a)});
    while (true) {
        if (out.size() > watchdog) throw FuelExhausted("descent recursion exceeded its stage budget");
        auto [y2, a2] = g.step(x, out.back().value, out.back().ordinal);
        if (!(a2 < out.back().ordinal)) return out;
        out.push_back({std::move(y2), std::move(a2)});
    }
}

template <class X, class Y, class Z>
Z dr_eval(const DRFunction<X, Y, Z>& g, const X& x) {
    auto t = dr_trace(g, x);
    return g.output(t.back().value);
}

// g after h. If h is alpha-DR and g is beta-DR the result is (beta + alpha)-DR:
// h's stages are shifted above beta, then g runs on h's output.
template <class A, class B, class X, class Y>
struct ComposedState {
    struct First {
        A value;
        Ordinal own;
    };
    struct Second {
        Y input;
        B value;
    };
    std::variant<First, Second> phase;
};

template <class X, class A, class Y, class B, class Z>
DRFunction<X, ComposedState<A, B, X, Y>, Z> dr_compose(const DRFunction<Y, B, Z>& g, const DRFunction<X, A, Y>& h) {
    using S = ComposedState<A, B, X, Y>;
    DRFunction<X, S, Z> out;
    out.bound = add(g.bound, h.bound);
    Ordinal beta = g.bound;
    out.init = [h, beta](const X& x) {
        auto [a, o] = h.init(x);
        return std::pair<S, Ordinal>{S{typename S::First{a, o}}, add(beta, o)};
    };
    out.step = [g, h, beta](const X& x, const S& s, const Ordinal& o) -> std::pair<S, Ordinal> {
        if (auto* first = std::get_if<typename S::First>(&s.phase)) {
            auto [a2, o2] = h.step(x, first->value, first->own);
            if (o2 < first->own) return {S{typename S::First{a2, o2}}, add(beta, o2)};
            Y y = h.output(first->value);
            auto [b, ob] = g.init(y);
            return {S{typename S::Second{y, b}}, ob};
        }
        const auto& second = std::get<typename S::Second>(s.phase);
        auto [b2, ob2] = g.step(second.input, second.value, o);
        return {S{typename S::Second{second.input, b2}}, ob2};
    };
    out.output = [g](const S& s) {
        const auto* second = std::get_if<typename S::Second>(&s.phase);
        if (!second) throw DescentError("composition ended before its second phase");
        return g.output(second->value);
    };
    return out;
}

// ---------------------------------------------------------------------------
// Strategies given by descent recursion

struct StrategyEval {
    std::optional<Move> move;
    Ordinal height;
    // Stage ordinals of the computation, strictly decreasing; the last is final.
    std::vector<Ordinal> stages;
};

struct DRStrategy {
    std::vector<Formula> context;
    Ordinal gamma;  // stage ordinals lie below gamma
    Ordinal alpha;  // height of the empty play
    std::vector<Term> witnesses;
    std::function<StrategyEval(const Play&)> eval;

    Strategy strategy() const;
    HeightFn height() const;
};

// Same strategy with a larger declared bound; the empty play reports the new alpha.
DRStrategy lift(const DRStrategy& g, const Ordinal& gamma, const Ordinal& alpha);

// Some term of F instantiates to e by replacing its variables with numerals.
bool instantiates(const std::vector<Term>& F, const Term& e);

struct DRCheckReport {
    std::size_t positions = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// h(<>) = alpha, stage ordinals strictly decreasing below gamma, heights
// decreasing along the plays, and every witness an instance of F.
DRCheckReport dr_strategy_check(const Signature& sig, const DRStrategy& g, const std::vector<Play>& plays);

std::vector<Play> sample_plays(const Signature& sig, const DRStrategy& g, const Opponent& opp, std::size_t count,
                               std::size_t fuel);

std::string render_stage(std::size_t s, const std::string& value, const Ordinal& a);

}  // namespace pagame
