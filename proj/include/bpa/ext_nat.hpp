#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

namespace bpa {

/// Arbitrary-precision natural number. Norms grow exponentially in the size
/// of the grammar, so no fixed-width counter is used for them.
using BigNat = boost::multiprecision::cpp_int;

/// A natural number or omega, with omega + n = omega - n = omega.
class ExtNat {
public:
    ExtNat() = default;
    ExtNat(BigNat v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
    ExtNat(long long v) : value_(BigNat(v)) {}  // NOLINT(google-explicit-constructor)

    static ExtNat omega() {
        ExtNat r;
        r.value_.reset();
        return r;
    }

    bool is_omega() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }

    /// Precondition: is_finite().
    const BigNat& value() const;

    /// Finite value as std::size_t, or nullopt when omega or too large.
    std::optional<std::size_t> to_size() const;

    friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
        if (a.is_omega() || b.is_omega()) return omega();
        return ExtNat(*a.value_ + *b.value_);
    }
    /// omega - n = omega; n - m is only defined for n >= m.
    friend ExtNat operator-(const ExtNat& a, const ExtNat& b);
    ExtNat& operator+=(const ExtNat& o) { return *this = *this + o; }

    friend bool operator==(const ExtNat& a, const ExtNat& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
        if (a.is_omega() || b.is_omega()) {
            return a.is_omega() <=> b.is_omega();
        }
        if (*a.value_ < *b.value_) return std::strong_ordering::less;
        if (*a.value_ > *b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const;

private:
    std::optional<BigNat> value_ = BigNat(0);
};

inline const ExtNat& min(const ExtNat& a, const ExtNat& b) { return b < a ? b : a; }
inline const ExtNat& max(const ExtNat& a, const ExtNat& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExtNat& n);

std::optional<std::size_t> to_size(const BigNat& n);

}  // namespace bpa
