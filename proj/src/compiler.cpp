#include "pagame/compiler.hpp"

#include "pagame/errors.hpp"
#include "pagame/interaction.hpp"

#include <mutex>

namespace pagame {

Term instantiate(const Term& t, const Env& env) {
    std::set<std::string> fv;
    free_vars(t, fv);
    Term out = t;
    for (const auto& v : fv) {
        auto it = env.find(v);
        out = subst(out, v, num(it == env.end() ? Nat(0) : it->second));
    }
    return out;
}

namespace {

Formula instantiate_except(const Formula& f, const Env& env, const std::string& keep) {
    std::set<std::string> fv;
    free_vars(f, fv);
    Formula out = f;
    for (const auto& v : fv) {
        if (v == keep) continue;
        auto it = env.find(v);
        out = subst(out, v, num(it == env.end() ? Nat(0) : it->second));
    }
    return out;
}

std::vector<Formula> instantiate_all(const std::vector<Formula>& s, const Env& env) {
    std::vector<Formula> out;
    for (const auto& f : s) out.push_back(instantiate(f, env));
    return out;
}

Formula disjunctive_side(const Formula& f) { return polarity(f) == Polarity::Conjunctive ? negate(f) : f; }

}  // namespace

Formula instantiate(const Formula& f, const Env& env) { return instantiate_except(f, env, ""); }

Ordinal ti_label(unsigned c, const Ordinal& beta, unsigned k) {
    return add(Ordinal(3 * static_cast<std::uint64_t>(c)), add(mul(Ordinal(5), beta), Ordinal(k)));
}

Bound declared_bound(const Proof& n) {
    switch (n->kind) {
        case RuleKind::BasicAxiom: return {Ordinal(1), Ordinal(0)};
        case RuleKind::Induction: return {Ordinal(1), succ(Ordinal::omega())};
        case RuleKind::TI: return {Ordinal(1), ti_label(rank(n->formula), n->bound, 2)};
        case RuleKind::Or:
        case RuleKind::Exists: {
            Bound b = declared_bound(n->premises[0]);
            return {b.gamma, succ(b.alpha)};
        }
        case RuleKind::Forall: {
            Bound b = declared_bound(n->premises[0]);
            return {b.gamma, add(b.alpha, Ordinal(2))};
        }
        case RuleKind::And:
        case RuleKind::Cut: {
            Bound b0 = declared_bound(n->premises[0]);
            Bound b1 = declared_bound(n->premises[1]);
            Bound b{std::max(b0.gamma, b1.gamma), std::max(b0.alpha, b1.alpha)};
            if (n->kind == RuleKind::And) return {b.gamma, add(b.alpha, Ordinal(2))};
            if (is_literal(n->formula)) return b;
            Ordinal top = c_scalar(formula_depth(disjunctive_side(n->formula)), mul(b.gamma, add(b.alpha, Ordinal(2))));
            return {top, top};
        }
    }
    throw InternalError("unknown proof node");
}

// ---------------------------------------------------------------------------
// Copycat

std::optional<Move> copycat_move(const Signature& sig, const Play& p, std::size_t start, const Formula& a0) {
    Formula a = a0;
    Formula b = negate(a0);
    std::size_t k = start;
    const std::size_t n = p.moves.size();
    while (true) {
        if (is_literal(a)) return std::nullopt;
        Formula c = polarity(a) == Polarity::Conjunctive ? a : b;
        Formula d = polarity(a) == Polarity::Conjunctive ? b : a;
        if (k == n) {
            auto o = find_origin(p, c);
            if (!o) throw BrokenStrategy("copycat pair is not in the play: " + render(c));
            return make_query(p, *o);
        }
        if (p.moves[k].tag != MoveTag::Query || !formula_equal(p.moves[k].formula, c))
            throw BrokenStrategy("play left the copycat endgame at move " + std::to_string(k));
        if (k + 1 == n) return std::nullopt;
        const Move& r = p.moves[k + 1];
        Formula dj = child(d, *r.selector);
        if (k + 2 == n) {
            auto o = find_origin(p, d);
            if (!o) throw BrokenStrategy("copycat pair is not in the play: " + render(d));
            return make_guess(sig, p, *o, *r.selector);
        }
        if (!formula_equal(p.moves[k + 2].formula, dj))
            throw BrokenStrategy("play left the copycat endgame at move " + std::to_string(k + 2));
        a = r.formula;
        b = dj;
        k += 3;
    }
}

namespace {

// Height 'base' when the endgame is about to start at index s, then one less per move.
Ordinal countdown(std::uint64_t base, std::size_t s, std::size_t n) {
    std::uint64_t used = n - s;
    return Ordinal(used >= base ? 0 : base - used);
}

StrategyEval endgame(const Signature& sig, const Play& p, std::size_t s, const Formula& a, std::uint64_t base) {
    StrategyEval r;
    r.height = countdown(base, s, p.moves.size());
    if (to_move(p) == Player::Eloisa) {
        r.move = copycat_move(sig, p, s, a);
        r.stages = {Ordinal(0)};
    }
    return r;
}

void expect(const Play& p, std::size_t k, MoveTag tag, const Formula& f) {
    if (p.moves[k].tag != tag || !formula_equal(p.moves[k].formula, f))
        throw BrokenStrategy("play is not in the strategy tree at move " + std::to_string(k) + ": " + render(p));
}

const Nat& selector_value(const Move& m) {
    if (!m.selector || m.selector->kind != Selector::Kind::Index) throw BrokenStrategy("expected a numeral reply");
    return m.selector->index;
}

}  // namespace

// ---------------------------------------------------------------------------
// Induction

DRStrategy induction_strategy(const Signature& sig, const Formula& phi, const std::string& x,
                              const std::vector<Formula>& context, std::vector<Term> witnesses) {
    auto ax = induction_formulas(phi, x);
    for (const auto& f : ax)
        if (!sequent_contains(context, f)) throw std::invalid_argument("context lacks the induction formula " + render(f));
    DRStrategy out;
    out.context = context;
    out.gamma = Ordinal(1);
    out.alpha = succ(Ordinal::omega());
    if (witnesses.empty()) witnesses.push_back(var(x));
    out.witnesses = std::move(witnesses);
    const std::uint64_t c3 = 3 * static_cast<std::uint64_t>(rank(phi));
    const Formula E = ax[1], U = ax[2];
    out.eval = [sig, phi, x, E, U, c3](const Play& p) -> StrategyEval {
        const std::size_t n = p.moves.size();
        const std::vector<Ordinal> stage0 = {Ordinal(0)};
        if (n == 0) return {make_query(p, *find_origin(p, U)), succ(Ordinal::omega()), stage0};
        expect(p, 0, MoveTag::Query, U);
        if (n == 1) return {std::nullopt, Ordinal::omega(), {}};
        Nat k = selector_value(p.moves[1]);
        std::size_t i = 2;  // Abelard has just replied phi(k)
        while (true) {
            if (k == 0) return endgame(sig, p, i, at(phi, x, num(0)), c3 + 2);
            Nat lvl = Nat(c3) + 3 * k;
            auto label = [&](unsigned d) { return Ordinal(lvl + d); };
            Formula G = instance(E, num(k - 1));
            if (n == i) return {make_guess_with(sig, p, *find_origin(p, E), num(k - 1)), label(2), stage0};
            expect(p, i, MoveTag::Guess, G);
            if (n == i + 1) return {make_query(p, Origin::move(i)), label(1), stage0};
            expect(p, i + 1, MoveTag::Query, G);
            if (n == i + 2) return {std::nullopt, label(0), {}};
            if (p.moves[i + 2].selector->kind == Selector::Kind::Left) {
                k -= 1;
                i += 3;
                continue;
            }
            return endgame(sig, p, i + 3, at(phi, x, num(k)), c3 + 1);
        }
    };
    return out;
}

// ---------------------------------------------------------------------------
// Transfinite induction

DRStrategy ti_strategy(const Signature& sig, const Formula& phi, const std::string& x, const Ordinal& alpha,
                       const std::vector<Formula>& context, std::vector<Term> witnesses) {
    auto ax = ti_formulas(phi, x, alpha);
    for (const auto& f : ax)
        if (!sequent_contains(context, f)) throw std::invalid_argument("context lacks the ti formula " + render(f));
    const unsigned c = rank(phi);
    DRStrategy out;
    out.context = context;
    out.gamma = Ordinal(1);
    out.alpha = ti_label(c, alpha, 2);
    if (witnesses.empty()) witnesses.push_back(var(x));
    out.witnesses = std::move(witnesses);
    const Formula E = ax[0], U = ax[1];
    out.eval = [sig, phi, x, alpha, E, U, c](const Play& p) -> StrategyEval {
        const std::size_t n = p.moves.size();
        const std::uint64_t c3 = 3 * static_cast<std::uint64_t>(c);
        const std::vector<Ordinal> stage0 = {Ordinal(0)};
        if (n == 0) return {make_query(p, *find_origin(p, U)), ti_label(c, alpha, 2), stage0};
        expect(p, 0, MoveTag::Query, U);
        if (n == 1) return {std::nullopt, ti_label(c, alpha, 1), {}};
        Ordinal cur = alpha;
        Nat cur_code = encode_ordinal(alpha);
        std::size_t i = 1;  // p[i] is Abelard's reply (beta < cur -> phi(beta))
        while (true) {
            const Nat beta_code = selector_value(p.moves[i]);
            const bool guard_false = literal_true(sig, nolt(num(beta_code), num(cur_code)));
            if (n == i + 1) {
                StrategyEval r{std::nullopt, ti_label(c, cur, 0), stage0};
                if (guard_false) r.move = make_guess(sig, p, Origin::move(i), Selector::left());
                else r.move = make_guess_with(sig, p, *find_origin(p, E), num(beta_code));
                return r;
            }
            if (guard_false) {
                expect(p, i + 1, MoveTag::Guess, child(p.moves[i].formula, Selector::left()));
                return {std::nullopt, Ordinal(0), stage0};
            }
            auto beta = decode_ordinal(beta_code);
            if (!beta) throw InternalError("guard held for a code that is not a notation");
            Formula G = instance(E, num(beta_code));
            expect(p, i + 1, MoveTag::Guess, G);
            if (n == i + 2) return {make_query(p, Origin::move(i + 1)), ti_label(c, *beta, 4), stage0};
            expect(p, i + 2, MoveTag::Query, G);
            if (n == i + 3) return {std::nullopt, ti_label(c, *beta, 3), {}};
            if (p.moves[i + 3].selector->kind == Selector::Kind::Left) {
                if (n == i + 4) return {make_query(p, Origin::move(i + 3)), ti_label(c, *beta, 2), stage0};
                expect(p, i + 4, MoveTag::Query, p.moves[i + 3].formula);
                if (n == i + 5) return {std::nullopt, ti_label(c, *beta, 1), {}};
                cur = *beta;
                cur_code = beta_code;
                i += 5;
                continue;
            }
            // Abelard chose not phi(beta): claim phi(beta) from the reply and copy.
            if (n == i + 4) return {make_guess(sig, p, Origin::move(i), Selector::right()), Ordinal(c3 + 1), stage0};
            return endgame(sig, p, i + 5, child(p.moves[i].formula, Selector::right()), c3);
        }
    };
    return out;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

StrategyEval delegate(const DRStrategy& g, const Play& p, std::size_t skip) {
    auto q = translate(p, skip, g.context);
    if (!q) throw BrokenStrategy("play does not restrict to the premise: " + render(p));
    StrategyEval r = g.eval(*q);
    if (r.move) {
        auto m = rebase(*r.move, *q, p);
        if (!m) throw BrokenStrategy("premise move does not fit the conclusion: " + render(*r.move));
        r.move = std::move(m);
    }
    return r;
}

class Compiler {
public:
    Compiler(const Signature& sig, const Proof& root, const CompileOptions& opt)
        : sig_(sig), opt_(opt), witnesses_(proof_terms(root)) {}

    DRStrategy node(const Proof& n, const Env& env) const {
        DRStrategy out;
        Bound b = declared_bound(n);
        out.context = instantiate_all(n->conclusion, env);
        out.gamma = b.gamma;
        out.alpha = b.alpha;
        out.witnesses = witnesses_;
        switch (n->kind) {
            case RuleKind::BasicAxiom: basic(out, n); break;
            case RuleKind::Induction: {
                DRStrategy s = induction_strategy(sig_, instantiate_except(n->formula, env, n->var), n->var, out.context,
                                                  witnesses_);
                out.eval = s.eval;
                break;
            }
            case RuleKind::TI: {
                DRStrategy s = ti_strategy(sig_, instantiate_except(n->formula, env, n->var), n->var, n->bound,
                                           out.context, witnesses_);
                out.eval = s.eval;
                break;
            }
            case RuleKind::Or:
            case RuleKind::Exists: guess(out, n, env); break;
            case RuleKind::Forall:
            case RuleKind::And: query(out, n, env); break;
            case RuleKind::Cut: return cut(out, n, env);
        }
        return out;
    }

private:
    void basic(DRStrategy& out, const Proof& n) const {
        bool ok = false;
        for (const auto& f : out.context)
            if (is_literal(f) && literal_true(sig_, f)) ok = true;
        if (!ok) {
            std::string s;
            for (const auto& f : out.context) s += " " + render(f);
            throw UserError("basic axiom at line " + std::to_string(n->line) + " has no true literal in instance:" + s);
        }
        out.eval = [](const Play&) { return StrategyEval{std::nullopt, Ordinal(0), {Ordinal(0)}}; };
    }

    void guess(DRStrategy& out, const Proof& n, const Env& env) const {
        DRStrategy g0 = node(n->premises[0], env);
        Formula F = instantiate(n->formula, env);
        Ordinal h0 = out.alpha;
        auto sig = sig_;
        bool is_or = n->kind == RuleKind::Or;
        Selector pick = n->pick;
        Term w = is_or ? nullptr : instantiate(n->witness, env);
        out.eval = [sig, g0, F, h0, is_or, pick, w](const Play& p) -> StrategyEval {
            if (p.moves.empty()) {
                Origin o = *find_origin(p, F);
                Move m = is_or ? make_guess(sig, p, o, pick) : make_guess_with(sig, p, o, w);
                return {m, h0, {Ordinal(0)}};
            }
            Move expected = is_or ? make_guess(sig, Play{p.context, {}}, *find_origin(p, F), pick)
                                  : make_guess_with(sig, Play{p.context, {}}, *find_origin(p, F), w);
            if (!same_move(p.moves[0], expected)) throw BrokenStrategy("play does not start with the rule's guess");
            return delegate(g0, p, 1);
        };
    }

    struct ForallCache {
        std::mutex mu;
        std::map<Nat, DRStrategy> premises;
    };

    void query(DRStrategy& out, const Proof& n, const Env& env) const {
        Formula F = instantiate(n->formula, env);
        Ordinal h0 = out.alpha;
        Ordinal h1 = pred_or_self(out.alpha);
        std::function<DRStrategy(const Selector&)> premise;
        if (n->kind == RuleKind::And) {
            DRStrategy g[2] = {node(n->premises[0], env), node(n->premises[1], env)};
            DRStrategy left = g[0], right = g[1];
            premise = [left, right](const Selector& s) { return s.kind == Selector::Kind::Left ? left : right; };
        } else {
            auto cache = std::make_shared<ForallCache>();
            Compiler self = *this;
            Proof sub = n->premises[0];
            std::string y = n->var;
            premise = [cache, self, sub, env, y](const Selector& s) {
                std::lock_guard<std::mutex> lock(cache->mu);
                auto it = cache->premises.find(s.index);
                if (it != cache->premises.end()) return it->second;
                Env e = env;
                e[y] = s.index;
                DRStrategy g = self.node(sub, e);
                cache->premises.emplace(s.index, g);
                return g;
            };
        }
        out.eval = [F, h0, h1, premise](const Play& p) -> StrategyEval {
            if (p.moves.empty()) return {make_query(p, *find_origin(p, F)), h0, {Ordinal(0)}};
            expect(p, 0, MoveTag::Query, F);
            if (p.moves.size() == 1) return {std::nullopt, h1, {}};
            return delegate(premise(*p.moves[1].selector), p, 2);
        };
    }

    CutParts parts(const Proof& n, const Env& env) const {
        CutParts c{node(n->premises[0], env), node(n->premises[1], env), instantiate_all(n->conclusion, env),
                   instantiate(n->formula, env)};
        if (polarity(c.phi) == Polarity::Conjunctive) {
            std::swap(c.g0, c.g1);
            c.phi = negate(c.phi);
        }
        return c;
    }

    DRStrategy cut(DRStrategy& out, const Proof& n, const Env& env) const {
        Formula f = instantiate(n->formula, env);
        if (is_literal(f)) {
            DRStrategy chosen = node(n->premises[literal_true(sig_, f) ? 0 : 1], env);
            DRStrategy r = lift(adapt_context(sig_, chosen, out.context), out.gamma, out.alpha);
            r.witnesses = witnesses_;
            return r;
        }
        CutParts c = parts(n, env);
        DRStrategy r = cut_dr(sig_, c.g0, c.g1, c.gamma, c.phi, opt_.debate);
        if (r.gamma != out.gamma || r.alpha != out.alpha)
            throw InternalError("cut bound " + render(r.alpha) + " differs from the declared " + render(out.alpha));
        r.witnesses = witnesses_;
        return r;
    }

public:
    CutParts cut_parts(const Proof& n, const Env& env) const {
        if (n->kind != RuleKind::Cut || is_literal(n->formula)) throw UserError("node is not a compound cut");
        return parts(n, env);
    }

private:
    Signature sig_;
    CompileOptions opt_;
    std::vector<Term> witnesses_;
};

}  // namespace

DRStrategy compile(const Signature& sig, const Proof& root, const Env& params, const CompileOptions& opt) {
    return Compiler(sig, root, opt).node(root, params);
}

CutParts cut_parts(const Signature& sig, const Proof& cut_node, const Env& params, const CompileOptions& opt) {
    return Compiler(sig, cut_node, opt).cut_parts(cut_node, params);
}

DRStrategy compile(const ProofFile& pf, const Env& params, const CompileOptions& opt) {
    return compile(pf.sig, pf.root, params, opt);
}

}  // namespace pagame
