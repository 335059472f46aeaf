#include "pagame/hnat.hpp"

#include "pagame/errors.hpp"

#include <map>
#include <ostream>
#include <stdexcept>

namespace pagame {

namespace {

const std::vector<HNat::Digit> kNoDigits;

// Longest borrow chain pred() will expand.
constexpr unsigned kMaxBorrowDigits = 100'000;

const Nat& low_bound() {
    static const Nat b = boost::multiprecision::pow(Nat(3), HNat::kLowDigits);
    return b;
}

Nat small_pow3(unsigned e) { return boost::multiprecision::pow(Nat(3), e); }

bool is_low_exponent(const HNat& e) { return e.is_small() && e.low() < HNat::kLowDigits; }

}  // namespace

// Collects c*3^e contributions with arbitrary coefficients, then carries.
class HNatBuilder {
public:
    void add_low(const Nat& n) { low_ += n; }

    void add_term(const HNat& e, const Nat& c) {
        if (c == 0) return;
        if (is_low_exponent(e)) {
            low_ += c * small_pow3(static_cast<unsigned>(e.low()));
            return;
        }
        terms_[e] += c;
    }

    void add(const HNat& x) {
        add_low(x.low_);
        for (const auto& d : x.digits()) add_term(d.exponent, Nat(d.digit));
    }

    HNat build() {
        if (low_ >= low_bound()) {
            terms_[HNat(HNat::kLowDigits)] += low_ / low_bound();
            low_ %= low_bound();
        }
        // Ascending order, so carries land on entries not yet visited.
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second >= 3) {
                Nat carry = it->second / 3;
                it->second %= 3;
                terms_[it->first + HNat(1)] += carry;
            }
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
        HNat out;
        out.low_ = low_;
        if (!terms_.empty()) {
            std::vector<HNat::Digit> ds;
            ds.reserve(terms_.size());
            for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
                ds.push_back({it->first, static_cast<int>(it->second)});
            out.high_ = std::make_shared<const std::vector<HNat::Digit>>(std::move(ds));
        }
        return out;
    }

private:
    std::map<HNat, Nat> terms_;
    Nat low_;
};

HNat::HNat(std::uint64_t n) : low_(n) {}

HNat::HNat(const Nat& n) {
    if (n < 0) throw std::invalid_argument("negative natural");
    if (n < low_bound()) {
        low_ = n;
        return;
    }
    HNatBuilder b;
    b.add_low(n);
    *this = b.build();
}

HNat HNat::pow3(const HNat& e) {
    if (is_low_exponent(e)) return HNat(small_pow3(static_cast<unsigned>(e.low())));
    HNat out;
    out.high_ = std::make_shared<const std::vector<Digit>>(std::vector<Digit>{{e, 1}});
    return out;
}

const std::vector<HNat::Digit>& HNat::digits() const { return high_ ? *high_ : kNoDigits; }

std::optional<Nat> HNat::to_nat(std::size_t max_bits) const {
    if (!high_) return low_;
    Nat out = low_;
    for (const auto& d : *high_) {
        if (!d.exponent.is_small()) return std::nullopt;
        // log2(3) < 1.59
        if (d.exponent.low() * 159 / 100 > max_bits) return std::nullopt;
        out += small_pow3(static_cast<unsigned>(d.exponent.low())) * d.digit;
    }
    return out;
}

Nat HNat::value() const {
    auto v = to_nat();
    if (!v) throw CapacityError("natural number too large to materialise: " + str());
    return *v;
}

HNat HNat::pred() const {
    if (low_ > 0) {
        HNat out = *this;
        out.low_ -= 1;
        return out;
    }
    if (!high_) throw std::domain_error("predecessor of zero");
    const Digit& last = high_->back();
    if (!last.exponent.is_small() || last.exponent.low() > kLowDigits + kMaxBorrowDigits)
        throw CapacityError("borrow too long in " + str());
    // 3^E*d - 1 = 3^E*(d-1) + 2*(3^(E-1) + ... + 3^kLowDigits) + (3^kLowDigits - 1)
    std::vector<Digit> ds(high_->begin(), high_->end() - 1);
    if (last.digit == 2) ds.push_back({last.exponent, 1});
    auto e = static_cast<unsigned>(last.exponent.low());
    for (unsigned j = e; j-- > kLowDigits;) ds.push_back({HNat(j), 2});
    HNat out;
    out.low_ = low_bound() - 1;
    if (!ds.empty()) out.high_ = std::make_shared<const std::vector<Digit>>(std::move(ds));
    return out;
}

std::string HNat::str() const {
    if (!high_) return low_.str();
    std::string out;
    for (const auto& d : *high_) {
        if (!out.empty()) out += " + ";
        std::string e = d.exponent.str();
        out += d.exponent.is_small() ? "3^" + e : "3^(" + e + ")";
        if (d.digit == 2) out += "*2";
    }
    if (low_ != 0) out += " + " + low_.str();
    return out;
}

std::strong_ordering operator<=>(const HNat& a, const HNat& b) {
    if (a.high_ != b.high_) {
        const auto& x = a.digits();
        const auto& y = b.digits();
        std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i) {
            auto c = x[i].exponent <=> y[i].exponent;
            if (c != 0) return c;
            if (x[i].digit != y[i].digit) return x[i].digit <=> y[i].digit;
        }
        // Every digit outweighs the low part.
        if (x.size() != y.size()) return x.size() <=> y.size();
    }
    if (a.low_ == b.low_) return std::strong_ordering::equal;
    return a.low_ < b.low_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

HNat operator+(const HNat& a, const HNat& b) {
    if (a.is_small() && b.is_small()) {
        Nat s = a.low() + b.low();
        if (s < low_bound()) return HNat(s);
    }
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    HNatBuilder out;
    out.add(a);
    out.add(b);
    return out.build();
}

HNat operator*(const HNat& a, const HNat& b) {
    if (a.is_small() && b.is_small()) return HNat(Nat(a.low() * b.low()));
    if (a.is_zero() || b.is_zero()) return HNat();
    HNatBuilder out;
    out.add_low(a.low() * b.low());
    for (const auto& x : a.digits()) {
        out.add_term(x.exponent, b.low() * x.digit);
        for (const auto& y : b.digits()) out.add_term(x.exponent + y.exponent, Nat(x.digit * y.digit));
    }
    for (const auto& y : b.digits()) out.add_term(y.exponent, a.low() * y.digit);
    return out.build();
}

std::ostream& operator<<(std::ostream& os, const HNat& a) { return os << a.str(); }

}  // namespace pagame
