// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.

#include "common.hpp"

#include "pagame/compiler.hpp"
#include "pagame/debate.hpp"
#include "pagame/descent.hpp"
#include "pagame/extraction.hpp"
#include "pagame/interaction.hpp"
#include "pagame/ordinal.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pagame;
using pagame::testing::load_example;
using pagame::testing::seeded;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

// ---------------------------------------------------------------------------
// 1

Verdict interaction_suite() {
    Verdict r;
    std::size_t count = 0;
    for (std::size_t len = 1; len <= 8; ++len) {
        for (const auto& i : enumerate_interaction(len)) {
            ++count;
            for (const auto& msg : {check_views(i), check_intervals(i), check_removal_closure(i)})
                if (!msg.empty()) r.fail(msg);
        }
    }
    r.detail = r.ok ? std::to_string(count) + " sequences" : r.detail;
    return r;
}

// ---------------------------------------------------------------------------
// 2: ordinals below w^w as coefficient vectors, lowest degree first.

using Poly = std::vector<Nat>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_cmp(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
    return 0;
}

// Adding b erases every term of a below b's leading degree.
Poly poly_add(const Poly& a, const Poly& b) {
    if (b.empty()) return a;
    std::size_t d = b.size() - 1;
    Poly out = b;
    if (a.size() > d) {
        out.resize(a.size());
        for (std::size_t k = d + 1; k < a.size(); ++k) out[k] = a[k];
        out[d] += a[d];
    }
    return out;
}

Poly monomial(std::size_t d) {
    Poly p(d + 1, 0);
    p[d] = 1;
    return p;
}

// a*b by left distributivity over b's terms: a*w^d = w^(deg a + d) for d > 0,
// and a*c is a added to itself c times.
Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out;
    for (std::size_t d = b.size(); d-- > 0;) {
        for (Nat c = 0; c < b[d]; ++c) out = poly_add(out, d == 0 ? a : monomial(a.size() - 1 + d));
    }
    return out;
}

Ordinal poly_ord(const Poly& p) {
    Ordinal out;
    for (std::size_t d = p.size(); d-- > 0;)
        if (p[d] != 0) out = add(out, mul(omega_pow(Ordinal(d)), Ordinal(p[d])));
    return out;
}

Verdict ordinal_oracle() {
    Verdict r;
    std::vector<Poly> polys;
    for (int p = 0; p <= 5; ++p)
        for (int q = 0; q <= 5; ++q)
            for (int s = 0; s <= 5; ++s) {
                Poly v{s, q, p};
                trim(v);
                polys.push_back(v);
            }
    std::vector<Ordinal> ords;
    for (const auto& p : polys) ords.push_back(poly_ord(p));
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < polys.size(); ++a) {
        for (std::size_t b = 0; b < polys.size(); ++b) {
            ++pairs;
            int want = poly_cmp(polys[a], polys[b]);
            auto got = ords[a] <=> ords[b];
            if ((want < 0) != (got < 0) || (want == 0) != (got == 0))
                r.fail("cmp " + render(ords[a]) + " vs " + render(ords[b]));
            if (add(ords[a], ords[b]) != poly_ord(poly_add(polys[a], polys[b])))
                r.fail("add " + render(ords[a]) + " + " + render(ords[b]));
            if (mul(ords[a], ords[b]) != poly_ord(poly_mul(polys[a], polys[b])))
                r.fail("mul " + render(ords[a]) + " * " + render(ords[b]));
        }
    }
    if (r.ok) r.detail = std::to_string(pairs) + " pairs, cmp/add/mul";
    return r;
}

// ---------------------------------------------------------------------------
// 3

Verdict height_descent() {
    Verdict r;
    const Ordinal alpha(4);
    std::vector<OrdIntSeq> all;
    for (std::size_t len = 0; len <= 5; ++len) {
        std::vector<PointerSeq> ptrs = len == 0 ? std::vector<PointerSeq>{{}} : enumerate_interaction(len);
        for (const auto& p : ptrs) {
            if (seq_depth(p) > 2) continue;
            std::size_t cells = len + 1, total = 1;
            for (std::size_t k = 0; k < cells; ++k) total *= 4;
            for (std::size_t code = 0; code < total; ++code) {
                OrdIntSeq u;
                u.ptr = p;
                for (std::size_t k = 0, c = code; k < cells; ++k, c /= 4) u.ords.push_back(Ordinal(c % 4));
                if (ois_valid(u)) all.push_back(std::move(u));
            }
        }
    }
    const Ordinal top = c_height(2, alpha, std::nullopt);
    std::size_t steps = 0;
    for (const auto& v : all) {
        Ordinal hv = c_height(2, alpha, v);
        if (!(hv < top)) r.fail("root does not dominate " + render(v));
        for (std::size_t k = 0; k <= v.length(); ++k) {
            for (std::uint64_t a = 0; a < 4; ++a) {
                if (Ordinal(a) < v.ords[k]) continue;
                OrdIntSeq u = ois_prefix(v, k);
                u.ords.back() = Ordinal(a);
                if (u == v || !ois_valid(u)) continue;
                if (!ois_less(u, v)) r.fail("order mismatch " + render(u) + " / " + render(v));
                ++steps;
                if (!(hv < c_height(2, alpha, u))) r.fail("no descent from " + render(u) + " to " + render(v));
            }
        }
    }
    const std::vector<Ordinal> alphas{Ordinal(0), Ordinal(1), Ordinal::omega(), succ(Ordinal::omega()),
                                      omega_pow(Ordinal(2))};
    for (unsigned nu = 0; nu <= 3; ++nu)
        for (const auto& a : alphas)
            if (c_height(nu, a, std::nullopt) != c_scalar(nu, a))
                r.fail("root identity at nu=" + std::to_string(nu) + " alpha=" + render(a));
    if (r.ok) r.detail = std::to_string(all.size()) + " sequences, " + std::to_string(steps) + " steps";
    return r;
}

// ---------------------------------------------------------------------------
// 4

Verdict debate_verification() {
    Verdict r;
    std::size_t debates = 0, stages = 0;
    auto strictly_down = [](const std::vector<Ordinal>& d) {
        for (std::size_t k = 1; k < d.size(); ++k)
            if (!(d[k] < d[k - 1])) return false;
        return true;
    };
    try {
        testing::SmallCut small;
        DebateOptions opt;
        opt.verify = true;
        DebateRun run = run_debate(small.sig, small.gamma, small.phi, small.f0(), small.f1(), Play{small.gamma, {}}, opt);
        ++debates;
        stages += run.records.size();

        ProofFile pf = load_example("double.paproof");
        Proof node;
        for (const auto& n : proof_nodes(pf.root))
            if (n->kind == RuleKind::Cut && !is_literal(n->formula)) node = n;
        CutParts c = cut_parts(pf.sig, node);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            Opponent opp = seeded(seed, 6);
            Play p{c.gamma, {}};
            for (std::size_t guard = 0; guard < 200 && !is_winning(pf.sig, p); ++guard) {
                if (to_move(p) == Player::Abelard) {
                    push_move(pf.sig, p, *opp(p));
                    continue;
                }
                CutDrRun run = cut_dr_run(pf.sig, c.g0, c.g1, c.gamma, c.phi, p, opt);
                ++debates;
                stages += run.debate.records.size();
                if (!strictly_down(run.deltas)) r.fail("delta trace does not decrease (seed " + std::to_string(seed) + ")");
                if (!run.result.move) {
                    r.fail("cut gave no move");
                    break;
                }
                push_move(pf.sig, p, *run.result.move);
            }
            if (!is_winning(pf.sig, p)) r.fail("cut strategy did not win (seed " + std::to_string(seed) + ")");
        }
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
    if (r.ok) r.detail = std::to_string(debates) + " debates, " + std::to_string(stages) + " stages";
    return r;
}

// ---------------------------------------------------------------------------
// 5

Verdict end_to_end() {
    Verdict r;
    ProofFile pf = load_example("double.paproof");
    CheckReport rep = check_proof(pf);
    if (!rep.ok() || rep.compound_cuts != 1) r.fail("proof does not check with exactly one compound cut");
    bool has_induction = false;
    Proof cut_node;
    for (const auto& n : proof_nodes(pf.root)) {
        has_induction = has_induction || n->kind == RuleKind::Induction;
        if (n->kind == RuleKind::Cut && !is_literal(n->formula)) cut_node = n;
    }
    if (!has_induction || !cut_node) {
        r.fail("proof lacks an induction or a compound cut");
        return r;
    }
    CutParts parts = cut_parts(pf.sig, cut_node);
    Ordinal gamma = std::max(parts.g0.gamma, parts.g1.gamma);
    Ordinal alpha = std::max(parts.g0.alpha, parts.g1.alpha);
    Ordinal eta = mul(gamma, add(alpha, Ordinal(2)));
    Ordinal want = c_scalar(formula_depth(parts.phi), eta);
    DRStrategy cut_g = compile(pf.sig, cut_node);
    if (cut_g.gamma != want || cut_g.alpha != want)
        r.fail("cut bound " + render(cut_g.gamma) + ", " + render(cut_g.alpha) + " differs from " + render(want));
    DRStrategy g = compile(pf);
    Bound b = declared_bound(pf.root);
    if (g.gamma != b.gamma || g.alpha != b.alpha) r.fail("root bound differs from the declared bound");
    const Formula goal = pf.root->conclusion.front();
    for (std::uint64_t n = 0; n <= 20; ++n) {
        Extraction e = extract_pi2(pf.sig, g, Nat(n), {});
        if (e.outputs.at(0) != Nat(2 * n)) r.fail("g(" + std::to_string(n) + ") = " + e.outputs[0].str());
        if (!pi2_holds(pf.sig, goal, Nat(n), e.outputs[0], e.play)) r.fail("witness check failed at " + std::to_string(n));
        if (!(e.max_ordinal() < e.bound)) r.fail("extraction left its bound");
    }
    if (r.ok) r.detail = "g(n) = 2n for n <= 20, cut bound " + render(want);
    return r;
}

// ---------------------------------------------------------------------------
// 6

Verdict strategy_heights() {
    Verdict r;
    Signature sig;
    const Formula phi = parse_formula("(exists y (= y (add x x)))");
    DRStrategy ind = induction_strategy(sig, phi, "x", induction_formulas(phi, "x"));
    const Ordinal w1 = parse_ordinal("w + 1");
    if (ind.alpha != w1 || ind.eval(Play{ind.context, {}}).height != w1) r.fail("induction strategy: h(<>) is not w + 1");
    DRCheckReport ri = dr_strategy_check(sig, ind, sample_plays(sig, ind, seeded(1, 6), 200, 10'000));
    if (!ri.ok()) r.fail("induction: " + ri.violations.front());

    const Formula psi = parse_formula("(exists z (= z (add b b)))");
    const Ordinal a = omega_pow(Ordinal(2));
    DRStrategy ti = ti_strategy(sig, psi, "b", a, ti_formulas(psi, "b", a));
    // 3c + 5*w^2 + 2 with c = 1 collapses to w^2 + 2.
    const Ordinal want = parse_ordinal("w^2 + 2");
    if (ti.alpha != want || ti.eval(Play{ti.context, {}}).height != want) r.fail("ti strategy: h(<>) is not w^2 + 2");
    DRCheckReport rt = dr_strategy_check(sig, ti, sample_plays(sig, ti, seeded(2, 80), 200, 10'000));
    if (!rt.ok()) r.fail("ti: " + rt.violations.front());
    if (r.ok)
        r.detail = "induction w + 1 (" + std::to_string(ri.positions) + " positions), ti w^2 + 2 (" +
                   std::to_string(rt.positions) + " positions)";
    return r;
}

// ---------------------------------------------------------------------------
// 7

Verdict descent_examples() {
    Verdict r;
    struct Fact {
        std::uint64_t k;
        Nat acc;
    };
    DRFunction<std::uint64_t, Fact, Nat> fact;
    fact.bound = Ordinal::omega();
    fact.init = [](const std::uint64_t& n) { return std::pair<Fact, Ordinal>{{n, 1}, Ordinal(n)}; };
    fact.step = [](const std::uint64_t&, const Fact& s, const Ordinal& o) {
        if (s.k == 0) return std::pair<Fact, Ordinal>{s, o};
        return std::pair<Fact, Ordinal>{{s.k - 1, s.acc * s.k}, Ordinal(s.k - 1)};
    };
    fact.output = [](const Fact& s) { return s.acc; };
    std::function<Nat(std::uint64_t)> direct = [&](std::uint64_t n) { return n == 0 ? Nat(1) : Nat(n) * direct(n - 1); };
    for (std::uint64_t n = 0; n <= 8; ++n)
        if (dr_eval(fact, n) != direct(n)) r.fail("factorial differs at " + std::to_string(n));

    // t(n) = sum over i <= n of sum over j <= i of (j + 1), looping j inside i.
    struct Nest {
        std::uint64_t i, j;
        Nat acc;
    };
    auto nest_ord = [](std::uint64_t i, std::uint64_t j) { return add(mul(Ordinal::omega(), Ordinal(i)), Ordinal(j)); };
    DRFunction<std::uint64_t, Nest, Nat> nested;
    nested.bound = omega_pow(Ordinal(2));
    nested.init = [&](const std::uint64_t& n) { return std::pair<Nest, Ordinal>{{n + 1, 0, 0}, nest_ord(n + 1, 0)}; };
    nested.step = [&](const std::uint64_t&, const Nest& s, const Ordinal& o) -> std::pair<Nest, Ordinal> {
        if (s.j > 0) return {{s.i, s.j - 1, s.acc + s.j}, nest_ord(s.i, s.j - 1)};
        if (s.i == 0) return {s, o};
        // Open the inner loop for i - 1; it counts j + 1 for j = i-1 .. 0.
        return {{s.i - 1, s.i, s.acc}, nest_ord(s.i - 1, s.i)};
    };
    nested.output = [](const Nest& s) { return s.acc; };
    auto nested_direct = [](std::uint64_t n) {
        Nat t = 0;
        for (std::uint64_t i = 0; i <= n; ++i)
            for (std::uint64_t j = 0; j <= i; ++j) t += j + 1;
        return t;
    };
    for (std::uint64_t n = 0; n <= 8; ++n) {
        auto trace = dr_trace(nested, n);
        if (dr_eval(nested, n) != nested_direct(n)) r.fail("nested recursion differs at " + std::to_string(n));
        if (n >= 1 && trace.front().ordinal < Ordinal::omega()) r.fail("nested recursion stays below w");
    }

    // fact after (n -> nested(n) as a small machine word).
    DRFunction<std::uint64_t, Nest, std::uint64_t> inner{nested.bound, nested.init, nested.step,
                                                         [](const Nest& s) { return static_cast<std::uint64_t>(s.acc); }};
    auto composed = dr_compose(fact, inner);
    if (composed.bound != add(fact.bound, inner.bound)) r.fail("composition bound is not beta + alpha");
    for (std::uint64_t n = 0; n <= 2; ++n) {
        auto trace = dr_trace(composed, n);
        for (const auto& s : trace)
            if (!(s.ordinal < composed.bound)) r.fail("composed stage leaves its bound");
        auto m = static_cast<std::uint64_t>(nested_direct(n));
        if (composed.output(trace.back().value) != direct(m)) r.fail("composition differs at " + std::to_string(n));
    }
    if (r.ok) r.detail = "factorial, nested w^2 recursion, composition bound " + render(composed.bound);
    return r;
}

// ---------------------------------------------------------------------------
// 8

Verdict zigzag() {
    Verdict r;
    PointerSeq want;
    for (std::size_t n = 0; n < 20; ++n) want.push_back(n < 2 ? 0 : n % 2 == 0 ? n - 1 : 2);
    PointerSeq got = zigzag_sequence(20);
    if (got != want) r.fail("sequence is " + render(got));
    if (!is_interaction(got)) r.fail("not an interaction sequence");
    if (seq_depth(got) > 4) r.fail("depth " + std::to_string(seq_depth(got)));
    if (r.ok) r.detail = render(got) + " depth " + std::to_string(seq_depth(got));
    return r;
}

// ---------------------------------------------------------------------------
// 9: the least-element strategy for exists x forall y (g x <= g y), with
// g x = |x - 5|. Eloisa guesses 0, and whenever Abelard names a y with a
// smaller value she backtracks and guesses y.

DRStrategy least_element(const Signature& sig, const Formula& goal) {
    auto g = [sig](const Nat& x) { return sig.eval(app("g", {num(x)})); };
    DRStrategy out;
    out.context = {goal};
    out.gamma = Ordinal(1);
    out.alpha = Ordinal(Nat(3 * g(0) + 3));
    out.witnesses = {var("y")};
    out.eval = [sig, g](const Play& p) -> StrategyEval {
        const std::vector<Ordinal> stage0{Ordinal(0)};
        const std::size_t n = p.moves.size();
        Nat x = 0;
        Nat prev_height = 3 * g(0) + 3;
        for (std::size_t i = 0;; i += 3) {
            if (n == i) return {make_guess_with(sig, p, Origin::context(0), num(x)), Ordinal(prev_height), stage0};
            if (n == i + 1) return {make_query(p, Origin::move(i)), Ordinal(Nat(3 * g(x) + 2)), stage0};
            if (n == i + 2) return {std::nullopt, Ordinal(Nat(3 * g(x) + 1)), {}};
            if (is_winning(sig, p)) return {std::nullopt, Ordinal(0), stage0};
            prev_height = 3 * g(x);
            x = p.moves[i + 2].selector->index;
        }
    };
    return out;
}

Verdict nci_extraction() {
    Verdict r;
    Signature sig;
    sig.define("g", {"x"}, parse_term("(add (monus 5 x) (monus x 5))"));
    const Formula goal = parse_formula("(exists x (forall y (= (monus (g x) (g y)) 0)))");
    DRStrategy hand = least_element(sig, goal);
    ProofFile pf = load_example("monus_zero.paproof");
    DRStrategy compiled = compile(pf);
    std::mt19937_64 rng(9);
    std::size_t checked = 0;
    for (int s = 0; s < 50; ++s) {
        std::vector<Nat> table(64);
        for (auto& v : table) v = Nat(rng() % 12);
        std::vector<CounterFn> f{[table](const std::vector<Nat>& xs) {
            return table[static_cast<std::size_t>(xs.back() % 64)];
        }};
        for (const auto* g : {&hand, &compiled}) {
            const Signature& gs = g == &hand ? sig : pf.sig;
            Extraction e = extract_nci(gs, *g, f, {});
            ++checked;
            if (!nci_holds(gs, g->context.front(), f, e.outputs)) r.fail("extracted x fails theta");
            for (std::size_t k = 1; k < e.stages.size(); ++k)
                if (!(e.stages[k].ordinal < e.stages[k - 1].ordinal)) r.fail("stages do not decrease");
            if (e.bound != mul(g->gamma, add(g->alpha, Ordinal(2)))) r.fail("bound is not gamma*(alpha+2)");
            if (!(e.max_ordinal() < e.bound)) r.fail("stage above gamma*(alpha+2)");
        }
    }
    if (r.ok) r.detail = std::to_string(checked) + " extractions over 50 counterexample functions";
    return r;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria{
        {"interaction sequences up to length 8", interaction_suite},
        {"ordinal arithmetic against the oracle below w^3", ordinal_oracle},
        {"c_height descent and root identity", height_descent},
        {"debate invariants and stage descent", debate_verification},
        {"cut elimination and extraction of 2n", end_to_end},
        {"induction and ti strategy heights", strategy_heights},
        {"descent recursion examples", descent_examples},
        {"zigzag sequence", zigzag},
        {"no-counterexample extraction", nci_extraction},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << (o.ok ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].name << ": " << o.detail
             << " (" << secs << "s)";
        std::cout << line.str() << std::endl;
        if (!o.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
