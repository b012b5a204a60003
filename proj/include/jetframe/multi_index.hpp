#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace jetframe {

/// Exponent vector (alpha_1, ..., alpha_{n+1}) indexing coefficients a_alpha and monomials z^alpha.
/// Slots are 1-based in the mathematical notation and 0-based here.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t length) : e_(length, 0) {}
    MultiIndex(std::initializer_list<unsigned> values) : e_(values) {}
    explicit MultiIndex(std::vector<unsigned> values) : e_(std::move(values)) {}

    static MultiIndex unit(std::size_t length, std::size_t slot, unsigned multiple = 1);

    std::size_t size() const { return e_.size(); }
    unsigned operator[](std::size_t i) const { return e_[i]; }
    unsigned& operator[](std::size_t i) { return e_[i]; }
    std::span<const unsigned> values() const { return e_; }

    unsigned length() const;  // |alpha|
    bool is_zero() const { return length() == 0; }

    /// Componentwise partial order.
    bool dominated_by(const MultiIndex& other) const;

    MultiIndex operator+(const MultiIndex& other) const;
    /// Requires other <= *this componentwise.
    MultiIndex operator-(const MultiIndex& other) const;

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;

    std::string to_string() const;  // "[a,b,c]"

    /// Order-preserving packing used by Variable keys (7 bits per slot, at most 8 slots).
    std::uint64_t pack() const;
    static MultiIndex unpack(std::uint64_t packed, std::size_t length);

private:
    std::vector<unsigned> e_;
};

/// All multi-indices of the given length (number of slots) with |alpha| <= max_total,
/// in graded lexicographic order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t slots, unsigned max_total);

/// All multi-indices with |alpha| == total exactly.
std::vector<MultiIndex> multi_indices_of_length(std::size_t slots, unsigned total);

/// All beta <= alpha componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& alpha);

/// prod_j binomial(ell_j, sub_j): the multinomial weight ell! / (ell'! ell''!).
long multinomial_split(const MultiIndex& ell, const MultiIndex& sub);

/// prod_j (x_j)^{underline{g_j}}: the constant in d^g (z^x) = c z^{x-g}.
long falling_factorial(const MultiIndex& x, const MultiIndex& g);

}  // namespace jetframe
