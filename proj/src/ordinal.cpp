#include "pagame/ordinal.hpp"

#include "pagame/errors.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace pagame {

namespace {

const std::vector<Ordinal::Term> kNoTerms;

// Largest finite exponent accepted by base_pow.
constexpr unsigned kMaxFiniteExponent = 1'000'000;

Ordinal make(std::vector<Ordinal::Term> terms) {
    return Ordinal::from_terms(std::move(terms));
}

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
    if (n != 0) terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{{Ordinal(), HNat(n)}});
}

Ordinal::Ordinal(const Nat& n) : Ordinal(HNat(n)) {}

Ordinal::Ordinal(const HNat& n) {
    if (!n.is_zero()) terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{{Ordinal(), n}});
}

Ordinal Ordinal::omega() { return make({{Ordinal(1), HNat(1)}}); }

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff.is_zero()) throw std::invalid_argument("ordinal coefficient must be positive");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
            throw std::invalid_argument("ordinal exponents must strictly decrease");
    }
    Ordinal out;
    if (!terms.empty()) out.terms_ = std::make_shared<const std::vector<Term>>(std::move(terms));
    return out;
}

const std::vector<Ordinal::Term>& Ordinal::terms() const { return terms_ ? *terms_ : kNoTerms; }

bool Ordinal::is_finite() const { return is_zero() || (terms_->size() == 1 && terms_->front().exponent.is_zero()); }

bool Ordinal::is_limit() const { return !is_zero() && !terms_->back().exponent.is_zero(); }

bool Ordinal::is_successor() const { return !is_zero() && terms_->back().exponent.is_zero(); }

Nat Ordinal::finite_value() const {
    if (!is_finite()) throw std::domain_error("ordinal is not finite: " + str());
    return finite_part().value();
}

HNat Ordinal::finite_part() const { return is_successor() ? terms_->back().coeff : HNat(); }

Ordinal Ordinal::limit_part() const {
    if (!is_successor()) return *this;
    std::vector<Term> t(terms_->begin(), terms_->end() - 1);
    return make(std::move(t));
}

Ordinal Ordinal::leading_exponent() const { return is_zero() ? Ordinal() : terms_->front().exponent; }

std::string Ordinal::str() const { return render(*this); }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    if (a.terms_ == b.terms_) return std::strong_ordering::equal;
    const auto& x = a.terms();
    const auto& y = b.terms();
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = x[i].exponent <=> y[i].exponent;
        if (c != 0) return c;
        auto k = x[i].coeff <=> y[i].coeff;
        if (k != 0) return k;
    }
    return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const auto& x = a.terms();
    const auto& y = b.terms();
    const Ordinal& lead = y.front().exponent;
    std::vector<Ordinal::Term> out;
    for (const auto& t : x) {
        if (t.exponent > lead) {
            out.push_back(t);
        } else if (t.exponent == lead) {
            out.push_back({lead, t.coeff + y.front().coeff});
            out.insert(out.end(), y.begin() + 1, y.end());
            return make(std::move(out));
        } else {
            break;
        }
    }
    out.insert(out.end(), y.begin(), y.end());
    return make(std::move(out));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
    if (a.is_zero() || b.is_zero()) return Ordinal();
    const auto& x = a.terms();
    const Ordinal& lead = x.front().exponent;
    Ordinal out;
    for (const auto& t : b.terms()) {
        if (t.exponent.is_zero()) {
            // a * k = w^lead*(c*k) + rest(a)
            std::vector<Ordinal::Term> part{{lead, x.front().coeff * t.coeff}};
            part.insert(part.end(), x.begin() + 1, x.end());
            out = add(out, make(std::move(part)));
        } else {
            out = add(out, make({{add(lead, t.exponent), t.coeff}}));
        }
    }
    return out;
}

Ordinal succ(const Ordinal& a) { return add(a, Ordinal(1)); }

Ordinal omega_pow(const Ordinal& a) { return make({{a, HNat(1)}}); }

Ordinal pred_or_self(const Ordinal& b) {
    if (b.is_finite() && !b.is_zero()) return Ordinal(b.finite_part().pred());
    return b;
}

Ordinal base_pow(const Nat& b, const Ordinal& a) {
    if (b < 2) throw std::invalid_argument("base_pow needs a base of at least 2");
    HNat n = a.finite_part();
    HNat finite;
    if (b == 3) {
        finite = HNat::pow3(n);
    } else {
        if (n > HNat(kMaxFiniteExponent)) throw CapacityError("finite exponent too large: " + n.str());
        finite = HNat(Nat(boost::multiprecision::pow(b, static_cast<unsigned>(n.low()))));
    }
    Ordinal lambda = a.limit_part();
    if (lambda.is_zero()) return Ordinal(finite);
    // b^(w^e*c) = w^(w^(e-1)*c), exponents combine additively.
    Ordinal x;
    for (const auto& t : lambda.terms()) x = add(x, make({{pred_or_self(t.exponent), t.coeff}}));
    return make({{x, finite}});
}

Ordinal c_scalar(unsigned nu, const Ordinal& a) {
    Ordinal v = mul(a, Ordinal(2));
    for (unsigned i = 0; i < nu; ++i) v = base_pow(3, v);
    return v;
}

// ---------------------------------------------------------------------------
// Notation

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    Nat nat() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a natural number");
        return Nat(std::string(s_.substr(start, pos_ - start)));
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("ordinal: " + what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) +
                         "\"");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

Ordinal strict_ord(Cursor& c);
HNat strict_hnat(Cursor& c);

// A natural number as rendered by HNat: "n" or "3^e" or "3^e*2", e a number or a parenthesised sum.
HNat strict_hpart(Cursor& c) {
    Nat n = c.nat();
    if (n != 3 || !c.eat('^')) return HNat(n);
    HNat e;
    if (c.eat('(')) {
        e = strict_hnat(c);
        if (!c.eat(')')) c.fail("expected ')'");
    } else {
        e = HNat(c.nat());
    }
    HNat v = HNat::pow3(e);
    if (c.eat('*')) {
        if (c.nat() != 2) c.fail("digit after a power of three must be 2");
        v = v + v;
    }
    return v;
}

// Pieces in decreasing order, with a plain number only at the end.
HNat strict_hnat(Cursor& c) {
    HNat last = strict_hpart(c), v = last;
    while (c.eat('+')) {
        HNat next = strict_hpart(c);
        if (last.is_small() || next.is_zero() || !(next < last)) c.fail("number pieces not in decreasing order");
        v = v + next;
        last = next;
    }
    return v;
}

Ordinal strict_exponent(Cursor& c) {
    if (c.eat('(')) {
        Ordinal e = strict_ord(c);
        if (!c.eat(')')) c.fail("expected ')'");
        return e;
    }
    if (c.eat('w')) return Ordinal::omega();
    return Ordinal(c.nat());
}

Ordinal::Term strict_w_term(Cursor& c) {
    Ordinal e(1);
    if (c.eat('^')) {
        e = strict_exponent(c);
        if (e < Ordinal(2)) c.fail("exponent 0 or 1 is not canonical");
    }
    HNat k(1);
    if (c.eat('*')) {
        if (c.eat('(')) {
            k = strict_hnat(c);
            if (!c.eat(')')) c.fail("expected ')'");
        } else {
            k = HNat(c.nat());
        }
        if (k < HNat(2)) c.fail("coefficient below 2 is not canonical");
    }
    return {e, k};
}

Ordinal strict_ord(Cursor& c) {
    std::vector<Ordinal::Term> terms;
    bool more = true;
    while (more) {
        if (c.eat('w')) {
            Ordinal::Term t = strict_w_term(c);
            if (!terms.empty() && !(t.exponent < terms.back().exponent)) c.fail("terms not in strictly decreasing order");
            terms.push_back(std::move(t));
            more = c.eat('+');
            continue;
        }
        // The finite part closes the sum; it may itself be a sum of powers of three.
        HNat k = strict_hnat(c);
        if (k.is_zero()) {
            if (!terms.empty()) c.fail("zero term inside a sum");
            return Ordinal();
        }
        terms.push_back({Ordinal(), k});
        more = false;
    }
    return Ordinal::from_terms(std::move(terms));
}

Ordinal lenient_expr(Cursor& c);

Ordinal lenient_atom(Cursor& c) {
    if (c.eat('(')) {
        Ordinal v = lenient_expr(c);
        if (!c.eat(')')) c.fail("expected ')'");
        return v;
    }
    if (c.eat('w')) return Ordinal::omega();
    return Ordinal(c.nat());
}

Ordinal lenient_pow(Cursor& c) {
    Ordinal base = lenient_atom(c);
    if (!c.eat('^')) return base;
    Ordinal e = lenient_pow(c);
    if (base == Ordinal::omega()) return omega_pow(e);
    if (!base.is_finite()) c.fail("only w or a natural number may be raised to a power");
    Nat b = base.finite_value();
    if (e.is_zero()) return Ordinal(1);
    if (b < 2) return base;
    return base_pow(b, e);
}

Ordinal lenient_prod(Cursor& c) {
    Ordinal v = lenient_pow(c);
    while (c.eat('*')) v = mul(v, lenient_pow(c));
    return v;
}

Ordinal lenient_expr(Cursor& c) {
    Ordinal v = lenient_prod(c);
    while (c.eat('+')) v = add(v, lenient_prod(c));
    return v;
}

std::string render_coeff(const HNat& c) { return c.is_small() ? c.str() : "(" + c.str() + ")"; }

std::string render_exponent(const Ordinal& e) {
    if ((e.is_finite() && e.finite_part().is_small()) || e == Ordinal::omega()) return render(e);
    return "(" + render(e) + ")";
}

Nat pair(const Nat& x, const Nat& y) { return (x + y) * (x + y + 1) / 2 + y; }

std::pair<Nat, Nat> unpair(const Nat& z) {
    Nat w = (boost::multiprecision::sqrt(Nat(8 * z + 1)) - 1) / 2;
    Nat t = w * (w + 1) / 2;
    Nat y = z - t;
    return {w - y, y};
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
    Cursor c(text);
    if (c.done()) c.fail("empty input");
    Ordinal v = strict_ord(c);
    if (!c.done()) c.fail("trailing input");
    return v;
}

Ordinal eval_ordinal_expr(std::string_view text) {
    Cursor c(text);
    if (c.done()) c.fail("empty input");
    Ordinal v = lenient_expr(c);
    if (!c.done()) c.fail("trailing input");
    return v;
}

std::string render(const Ordinal& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += " + ";
        if (t.exponent.is_zero()) {
            out += t.coeff.str();
            continue;
        }
        out += "w";
        if (t.exponent != Ordinal(1)) out += "^" + render_exponent(t.exponent);
        if (t.coeff != HNat(1)) out += "*" + render_coeff(t.coeff);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << render(a); }

Nat encode_ordinal(const Ordinal& a) {
    Nat code = 0;
    const auto& ts = a.terms();
    for (std::size_t i = ts.size(); i-- > 0;) {
        code = 1 + pair(pair(encode_ordinal(ts[i].exponent), ts[i].coeff.value() - 1), code);
    }
    return code;
}

std::optional<Ordinal> decode_ordinal(const Nat& code) {
    if (code < 0) return std::nullopt;
    if (code == 0) return Ordinal();
    auto [head, rest_code] = unpair(code - 1);
    auto [exp_code, coeff] = unpair(head);
    auto exponent = decode_ordinal(exp_code);
    if (!exponent) return std::nullopt;
    auto rest = decode_ordinal(rest_code);
    if (!rest) return std::nullopt;
    if (!rest->is_zero() && !(rest->leading_exponent() < *exponent)) return std::nullopt;
    std::vector<Ordinal::Term> terms{{*exponent, HNat(Nat(coeff + 1))}};
    terms.insert(terms.end(), rest->terms().begin(), rest->terms().end());
    return Ordinal::from_terms(std::move(terms));
}

}  // namespace pagame
