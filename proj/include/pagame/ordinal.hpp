#pragma once

#include "pagame/hnat.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pagame {

// Ordinals below epsilon_0 in Cantor normal form:
//   w^e1*c1 + ... + w^ek*ck  with e1 > ... > ek and ci > 0.
// Values are immutable and share structure, so copies are cheap.
class Ordinal {
public:
    struct Term;

    Ordinal() = default;
    Ordinal(std::uint64_t n);  // NOLINT: finite ordinals convert implicitly
    explicit Ordinal(const Nat& n);
    explicit Ordinal(const HNat& n);

    static Ordinal omega();
    // Takes terms in canonical order; throws std::invalid_argument otherwise.
    static Ordinal from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const;

    bool is_zero() const { return !terms_; }
    bool is_finite() const;
    bool is_limit() const;      // nonzero with zero finite part
    bool is_successor() const;  // nonzero finite part
    // Throws std::domain_error when infinite, CapacityError when too large.
    Nat finite_value() const;
    HNat finite_part() const;
    Ordinal limit_part() const;
    // The exponent of the leading term; zero for zero.
    Ordinal leading_exponent() const;

    std::string str() const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

private:
    std::shared_ptr<const std::vector<Term>> terms_;
};

struct Ordinal::Term {
    Ordinal exponent;
    HNat coeff;
};

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal succ(const Ordinal& a);
Ordinal omega_pow(const Ordinal& a);
// b^a for a finite base b >= 2. Base 3 is exact for every exponent; other
// bases throw CapacityError when the finite part of the exponent is huge.
Ordinal base_pow(const Nat& b, const Ordinal& a);
// c_0(a) = a*2, c_{v+1}(a) = 3^{c_v(a)}.
Ordinal c_scalar(unsigned nu, const Ordinal& a);
// b - 1 for finite nonzero b, b itself otherwise.
Ordinal pred_or_self(const Ordinal& b);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

// Strict parse of canonical notation: "w^w + w*3 + 5", "w^(w+1)*2", "0".
Ordinal parse_ordinal(std::string_view text);
// Lenient evaluation of sums and products of ordinal atoms, e.g. "w*2 + 3 + w".
Ordinal eval_ordinal_expr(std::string_view text);
std::string render(const Ordinal& a);
std::ostream& operator<<(std::ostream& os, const Ordinal& a);

// Injective coding of ordinal notations by naturals, used for the ordinal
// order literal of the arithmetic language.
Nat encode_ordinal(const Ordinal& a);
std::optional<Ordinal> decode_ordinal(const Nat& code);

}  // namespace pagame
