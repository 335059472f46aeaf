#include "pagame/errors.hpp"
#include "pagame/hnat.hpp"
#include "pagame/ordinal.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace pagame;

namespace {

Ordinal P(const char* s) { return parse_ordinal(s); }

// Random canonical notation below w^w^w with small coefficients.
Ordinal random_ordinal(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> terms(0, 3), coeff(1, 4);
    int n = terms(rng);
    std::vector<Ordinal> exps;
    for (int k = 0; k < n; ++k) exps.push_back(depth == 0 ? Ordinal(rng() % 4) : random_ordinal(rng, depth - 1));
    std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<Ordinal::Term> ts;
    for (const auto& e : exps) ts.push_back({e, HNat(static_cast<std::uint64_t>(coeff(rng)))});
    return Ordinal::from_terms(std::move(ts));
}

Nat random_nat(std::mt19937_64& rng, unsigned bits) {
    Nat n = 0;
    for (unsigned k = 0; k < bits; k += 32) n = (n << 32) + (rng() & 0xffffffffu);
    return n;
}

}  // namespace

TEST(Ordinal, Comparison) {
    EXPECT_EQ(Ordinal(0), Ordinal(0));
    EXPECT_LT(P("w"), P("w + 1"));
    EXPECT_LT(P("w*5 + 100"), P("w^2"));
    EXPECT_LT(P("w^w"), P("w^(w + 1)"));
}

TEST(Ordinal, Arithmetic) {
    EXPECT_EQ(add(Ordinal(1), Ordinal::omega()), Ordinal::omega());
    EXPECT_EQ(mul(Ordinal::omega(), Ordinal(2)), P("w*2"));
    EXPECT_EQ(mul(Ordinal(2), Ordinal::omega()), Ordinal::omega());
    EXPECT_EQ(add(P("w^2 + w*3 + 1"), P("w*2 + 5")), P("w^2 + w*5 + 5"));
    EXPECT_EQ(mul(P("w + 1"), P("w + 1")), P("w^2 + w + 1"));
    EXPECT_EQ(pred_or_self(Ordinal(5)), Ordinal(4));
    EXPECT_EQ(pred_or_self(Ordinal::omega()), Ordinal::omega());
}

TEST(Ordinal, BasePow) {
    EXPECT_EQ(base_pow(3, Ordinal(0)), Ordinal(1));
    EXPECT_EQ(base_pow(3, Ordinal::omega()), Ordinal::omega());
    EXPECT_EQ(base_pow(3, P("w + 2")), P("w*9"));
    EXPECT_EQ(base_pow(2, P("w^2")), P("w^w"));
    EXPECT_EQ(base_pow(3, P("w^3*2 + w")), P("w^(w^2*2 + 1)"));
}

TEST(Ordinal, CScalar) {
    EXPECT_EQ(c_scalar(0, Ordinal::omega()), P("w*2"));
    EXPECT_EQ(c_scalar(1, Ordinal(1)), Ordinal(9));
    EXPECT_EQ(c_scalar(2, Ordinal(0)), Ordinal(3));
    EXPECT_EQ(c_scalar(1, P("w + 1")), P("w^2*3"));
}

TEST(Ordinal, ParseAndRender) {
    EXPECT_EQ(P("0"), Ordinal());
    EXPECT_EQ(P("w^w + w*3 + 5").str(), "w^w + w*3 + 5");
    EXPECT_THROW(P("w + w^2"), ParseError);
    EXPECT_THROW(P("w*1"), ParseError);
    EXPECT_THROW(P("w^1"), ParseError);
    EXPECT_THROW(P("3 + 0"), ParseError);
    EXPECT_THROW(P("w +"), ParseError);
    EXPECT_EQ(eval_ordinal_expr("w*2 + 3 + w"), P("w*3"));
    EXPECT_EQ(eval_ordinal_expr("2^(w+1)"), P("w*2"));

    std::mt19937_64 rng(7);
    for (int k = 0; k < 100; ++k) {
        Ordinal a = random_ordinal(rng, 2);
        EXPECT_EQ(P(a.str().c_str()), a) << a.str();
        EXPECT_EQ(P(a.str().c_str()).str(), a.str());
    }
}

TEST(Ordinal, OrderProperties) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 10000; ++k) {
        Ordinal a = random_ordinal(rng, 2), b = random_ordinal(rng, 2), c = random_ordinal(rng, 2);
        int rel = (a < b) + (a == b) + (b < a);
        ASSERT_EQ(rel, 1);
        if (a < b && b < c) ASSERT_LT(a, c);
    }
}

TEST(Ordinal, AlgebraicProperties) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 1000; ++k) {
        Ordinal a = random_ordinal(rng, 1), b = random_ordinal(rng, 1), c = random_ordinal(rng, 1);
        ASSERT_EQ(add(add(a, b), c), add(a, add(b, c)));
        ASSERT_EQ(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
        if (a < b) ASSERT_LT(base_pow(3, a), base_pow(3, b)) << a.str() << " " << b.str();
    }
}

TEST(Ordinal, DescendingChainStaysCanonical) {
    // w^w^w, then repeatedly lower the last term.
    Ordinal a = P("w^(w^w)");
    for (int k = 0; k < 10000; ++k) {
        Ordinal b;
        if (a.is_successor()) {
            b = add(a.limit_part(), Ordinal(a.finite_part().pred()));
        } else {
            // Replace the trailing w^e by w^(e') * 3 for a smaller exponent.
            auto ts = a.terms();
            Ordinal e = ts.back().exponent;
            Ordinal lower = e.is_finite() ? pred_or_self(e) : Ordinal(2);
            HNat c = ts.back().coeff;
            ts.pop_back();
            if (c != HNat(1)) ts.push_back({e, c.pred()});
            ts.push_back({lower, HNat(3)});
            b = Ordinal::from_terms(ts);
        }
        ASSERT_LT(b, a);
        ASSERT_EQ(P(b.str().c_str()), b);
        a = b;
        if (a.is_zero()) break;
    }
}

TEST(Ordinal, Coding) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
        Ordinal a = random_ordinal(rng, 1);
        Nat c = encode_ordinal(a);
        auto back = decode_ordinal(c);
        ASSERT_TRUE(back);
        EXPECT_EQ(*back, a);
    }
    for (std::uint64_t c = 0; c < 200; ++c) {
        auto a = decode_ordinal(Nat(c));
        if (a) EXPECT_EQ(encode_ordinal(*a), Nat(c));
    }
    EXPECT_EQ(encode_ordinal(Ordinal()), 0);
}

TEST(HNat, AgreesWithIntegers) {
    std::mt19937_64 rng(19);
    for (int k = 0; k < 2000; ++k) {
        Nat a = random_nat(rng, 32 * (1 + rng() % 8)), b = random_nat(rng, 32 * (1 + rng() % 8));
        HNat x(a), y(b);
        ASSERT_EQ(x.value(), a);
        ASSERT_EQ((x + y).value(), a + b);
        ASSERT_EQ((x * y).value(), a * b);
        ASSERT_EQ(x < y, a < b);
        ASSERT_EQ(x == y, a == b);
        if (a > 0) ASSERT_EQ(x.pred().value(), a - 1);
    }
}

TEST(HNat, PowersOfThree) {
    HNat big = HNat::pow3(HNat(100));
    EXPECT_FALSE(big.is_small());
    EXPECT_EQ(big.value(), boost::multiprecision::pow(Nat(3), 100));
    EXPECT_EQ(big.str(), "3^100");
    EXPECT_EQ((big * HNat(3)).str(), "3^101");
    EXPECT_EQ((big + big + big).str(), "3^101");
    EXPECT_EQ((big + HNat(5)).str(), "3^100 + 5");
    EXPECT_EQ(big.pred().value(), boost::multiprecision::pow(Nat(3), 100) - 1);
}

TEST(HNat, Towers) {
    HNat t = HNat::pow3(HNat::pow3(HNat::pow3(HNat(70))));
    HNat u = HNat::pow3(HNat::pow3(HNat::pow3(HNat(70)) + HNat(1)));
    EXPECT_LT(t, u);
    EXPECT_LT(t + t, t * HNat(3));
    EXPECT_EQ(t + t + t, t * HNat(3));
    EXPECT_EQ(t * HNat(3), HNat::pow3(HNat::pow3(HNat::pow3(HNat(70))) + HNat(1)));
    EXPECT_FALSE(t.to_nat());
    EXPECT_THROW(t.value(), CapacityError);
    EXPECT_EQ(t.str(), "3^(3^(3^70))");
    EXPECT_GT(t + HNat(1), t);
    EXPECT_EQ((t + HNat(1)).pred(), t);
}

TEST(Ordinal, HugeFiniteParts) {
    // 3^(3^(3^70)) stays exact where the integer would not fit in memory.
    Ordinal e = base_pow(3, base_pow(3, Ordinal(70)));
    Ordinal big = base_pow(3, e);
    EXPECT_TRUE(big.is_finite());
    EXPECT_LT(big, Ordinal::omega());
    EXPECT_LT(base_pow(3, add(e, Ordinal(1))), base_pow(3, add(e, Ordinal(2))));
    Ordinal w = base_pow(3, add(Ordinal::omega(), e));
    EXPECT_EQ(w, mul(Ordinal::omega(), big));
    EXPECT_EQ(eval_ordinal_expr(w.str()), w);
    EXPECT_THROW(big.finite_value(), CapacityError);
    EXPECT_THROW(encode_ordinal(w), CapacityError);
}

TEST(Ordinal, HugeCoefficientsRoundTrip) {
    const HNat big = HNat::pow3(HNat(486)) + HNat::pow3(HNat(100)) + HNat(7);
    const HNat tower = HNat::pow3(HNat::pow3(HNat(200)));
    const std::vector<Ordinal> cases{
        Ordinal(big),
        add(Ordinal::omega(), Ordinal(tower)),
        mul(Ordinal::omega(), Ordinal(big)),
        omega_pow(Ordinal(big)),
        parse_ordinal("w^(w^9565937 + w^4782968*(3^486*2))*2"),
    };
    for (const auto& a : cases) {
        std::string s = render(a);
        EXPECT_EQ(parse_ordinal(s), a) << s;
    }
    EXPECT_EQ(render(mul(Ordinal::omega(), Ordinal(big))), "w*(3^486 + 3^100 + 7)");
    EXPECT_THROW(parse_ordinal("w*(3^100 + 3^200)"), ParseError);
    EXPECT_THROW(parse_ordinal("2 + 3"), ParseError);
    EXPECT_THROW(parse_ordinal("3^100*3"), ParseError);
}
