#include "common.hpp"
#include "pagame/compiler.hpp"

#include <gtest/gtest.h>

using namespace pagame;
using pagame::testing::load_example;
using pagame::testing::seeded;

namespace {

// Bounds recomputed from the rule table, independent of the compiler.
Bound oracle_bound(const Proof& n) {
    auto below = [](std::size_t k, const Proof& p) { return oracle_bound(p->premises[k]); };
    switch (n->kind) {
        case RuleKind::BasicAxiom: return {Ordinal(1), Ordinal(0)};
        case RuleKind::Induction: return {Ordinal(1), parse_ordinal("w + 1")};
        case RuleKind::TI: return {Ordinal(1), ti_label(rank(n->formula), n->bound, 2)};
        case RuleKind::Or:
        case RuleKind::Exists: {
            Bound b = below(0, n);
            return {b.gamma, add(b.alpha, Ordinal(1))};
        }
        case RuleKind::Forall: {
            Bound b = below(0, n);
            return {b.gamma, add(b.alpha, Ordinal(2))};
        }
        default: {
            Bound l = below(0, n), r = below(1, n);
            Bound b{std::max(l.gamma, r.gamma), std::max(l.alpha, r.alpha)};
            if (n->kind == RuleKind::And) return {b.gamma, add(b.alpha, Ordinal(2))};
            if (is_literal(n->formula)) return b;
            Formula side = polarity(n->formula) == Polarity::Conjunctive ? negate(n->formula) : n->formula;
            Ordinal eta = mul(b.gamma, add(b.alpha, Ordinal(2)));
            Ordinal top = c_height(formula_depth(side), eta, std::nullopt);
            return {top, top};
        }
    }
}

const char* kAndProof = R"((proof
  (goal (and (= 0 0) (exists y (= y 1))))
  (rule and (principal (and (= 0 0) (exists y (= y 1))))
    (basic-axiom (= 0 0))
    (rule exists (principal (exists y (= y 1))) (witness 1)
      (basic-axiom (= 1 1))))))";

const char* kLiteralCut = R"((proof
  (goal (exists y (= y 2)))
  (rule cut (formula (= 1 1))
    (rule exists (principal (exists y (= y 2))) (witness 2)
      (basic-axiom (= 2 2) (neq 1 1)))
    (basic-axiom (exists y (= y 2)) (= 1 1)))))";

void expect_sound(const ProofFile& pf, const Env& params, std::uint64_t seed) {
    DRStrategy g = compile(pf, params);
    Bound b = declared_bound(pf.root);
    EXPECT_EQ(g.gamma, b.gamma);
    EXPECT_EQ(g.alpha, b.alpha);
    auto plays = sample_plays(pf.sig, g, seeded(seed, 5), 30, 100'000);
    for (const auto& p : plays) EXPECT_TRUE(is_winning(pf.sig, p)) << render(p);
    auto r = dr_strategy_check(pf.sig, g, plays);
    EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations.front());
}

}  // namespace

TEST(Compiler, Instantiate) {
    Env env{{"x", 3}};
    Formula f = instantiate(parse_formula("(exists y (= y (add x z)))"), env);
    EXPECT_TRUE(formula_equal(f, parse_formula("(exists y (= y (add 3 0)))")));
    EXPECT_TRUE(term_equal(instantiate(parse_term("(S x)"), env), parse_term("(S 3)")));
}

TEST(Compiler, DeclaredBoundsMatchRuleTable) {
    for (const char* name : {"identity.paproof", "monus_zero.paproof", "ti_w2.paproof", "double.paproof"}) {
        ProofFile pf = load_example(name);
        for (const auto& n : proof_nodes(pf.root)) {
            Bound a = declared_bound(n), b = oracle_bound(n);
            ASSERT_EQ(a.gamma, b.gamma) << name << " node " << n->id;
            ASSERT_EQ(a.alpha, b.alpha) << name << " node " << n->id;
        }
    }
    EXPECT_EQ(declared_bound(load_example("identity.paproof").root).alpha, Ordinal(3));
    EXPECT_EQ(declared_bound(load_example("ti_w2.paproof").root).alpha, parse_ordinal("w^2 + 2"));
    EXPECT_EQ(declared_bound(parse_proof(kAndProof).root).alpha, Ordinal(3));
}

TEST(Compiler, ExamplesCompileToWinningStrategies) {
    expect_sound(load_example("identity.paproof"), {}, 1);
    expect_sound(load_example("monus_zero.paproof"), {}, 2);
    expect_sound(load_example("double.paproof"), {}, 3);
    expect_sound(load_example("ti_w2.paproof"), {{"b", 0}}, 4);
    expect_sound(parse_proof(kAndProof), {}, 5);
    expect_sound(parse_proof(kLiteralCut), {}, 6);
}

TEST(Compiler, LiteralCutKeepsPremiseBound) {
    ProofFile pf = parse_proof(kLiteralCut);
    ASSERT_TRUE(check_proof(pf).ok());
    Bound b = declared_bound(pf.root);
    EXPECT_EQ(b.gamma, Ordinal(1));
    EXPECT_EQ(b.alpha, Ordinal(1));
    EXPECT_THROW(cut_parts(pf.sig, pf.root), UserError);
}

TEST(Compiler, CutPartsSplitTheCutFormula) {
    ProofFile pf = load_example("double.paproof");
    Proof cut_node;
    for (const auto& n : proof_nodes(pf.root))
        if (n->kind == RuleKind::Cut) cut_node = n;
    ASSERT_TRUE(cut_node);
    CutParts c = cut_parts(pf.sig, cut_node);
    EXPECT_EQ(polarity(c.phi), Polarity::Disjunctive);
    EXPECT_TRUE(sequent_contains(c.g0.context, negate(c.phi)));
    EXPECT_TRUE(sequent_contains(c.g1.context, c.phi));
    EXPECT_FALSE(sequent_contains(c.gamma, c.phi));
}

TEST(Compiler, CopycatWinsWithinItsLength) {
    Signature sig;
    for (const char* s : {"(forall x (exists y (= y x)))", "(and (or (= 0 1) (= 1 1)) (forall z (neq z (S z))))"}) {
        Formula a = parse_formula(s);
        std::vector<Formula> ctx{a, negate(a)};
        Strategy f = [&sig, a](const Play& p) { return copycat_move(sig, p, 0, a); };
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            SimResult r = simulate(sig, f, seeded(seed, 6), Play{ctx, {}}, 100);
            ASSERT_EQ(r.outcome, Outcome::Won) << s;
            EXPECT_LE(r.play.moves.size(), copycat_length(rank(a))) << s;
        }
    }
}

TEST(Compiler, BadProofIsRejected) {
    ProofFile pf = load_example("bad_eigen.paproof");
    CheckReport r = check_proof(pf);
    ASSERT_FALSE(r.ok());
    EXPECT_NE(r.errors.front().message.find("eigen"), std::string::npos) << r.errors.front().message;
}
