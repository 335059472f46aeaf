#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pagame {

using Nat = boost::multiprecision::cpp_int;

// Exact naturals in hereditary base 3. A value is
//   3^e1*d1 + ... + 3^ek*dk + low
// with e1 > ... > ek >= kLowDigits, digits di in {1, 2} and low < 3^kLowDigits.
// Exponents are HNats again, so towers like 3^(3^(3^70)*2) cost a few nodes.
// Ordering is lexicographic on (digits, low), as for Cantor normal form.
class HNat {
public:
    struct Digit;
    static constexpr unsigned kLowDigits = 64;

    HNat() = default;
    HNat(std::uint64_t n);  // NOLINT: small naturals convert implicitly
    explicit HNat(const Nat& n);

    static HNat pow3(const HNat& e);

    bool is_zero() const { return !high_ && low_ == 0; }
    // No digit above the low part: the value is low().
    bool is_small() const { return !high_; }
    const Nat& low() const { return low_; }
    const std::vector<Digit>& digits() const;

    // The value as a plain integer when it has at most max_bits bits.
    std::optional<Nat> to_nat(std::size_t max_bits = 1u << 22) const;
    // As to_nat, throwing CapacityError when the value is too large.
    Nat value() const;
    // this - 1; throws std::domain_error on zero and CapacityError when the
    // borrow would need too many digits.
    HNat pred() const;

    std::string str() const;

    friend std::strong_ordering operator<=>(const HNat& a, const HNat& b);
    friend bool operator==(const HNat& a, const HNat& b) { return (a <=> b) == 0; }

private:
    std::shared_ptr<const std::vector<Digit>> high_;
    Nat low_;

    friend class HNatBuilder;
};

struct HNat::Digit {
    HNat exponent;
    int digit;
};

HNat operator+(const HNat& a, const HNat& b);
HNat operator*(const HNat& a, const HNat& b);
std::ostream& operator<<(std::ostream& os, const HNat& a);

}  // namespace pagame
