#include "bpa/ext_nat.hpp"

#include "bpa/errors.hpp"

#include <limits>

namespace bpa {

const BigNat& ExtNat::value() const {
    if (!value_) throw ContractViolation("ExtNat::value() called on omega");
    return *value_;
}

std::optional<std::size_t> to_size(const BigNat& n) {
    if (n < 0 || n > BigNat(std::numeric_limits<std::size_t>::max())) return std::nullopt;
    return n.convert_to<std::size_t>();
}

std::optional<std::size_t> ExtNat::to_size() const {
    if (!value_) return std::nullopt;
    return bpa::to_size(*value_);
}

ExtNat operator-(const ExtNat& a, const ExtNat& b) {
    if (a.is_omega()) return ExtNat::omega();
    if (b.is_omega() || *a.value_ < *b.value_) {
        throw ContractViolation("ExtNat subtraction below zero: " + a.to_string() + " - " + b.to_string());
    }
    return ExtNat(*a.value_ - *b.value_);
}

std::string ExtNat::to_string() const { return value_ ? value_->str() : std::string("omega"); }

std::ostream& operator<<(std::ostream& os, const ExtNat& n) { return os << n.to_string(); }

}  // namespace bpa
