#pragma once

#include "jetframe/multi_index.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace jetframe {

enum class VarTag : std::uint8_t { Coord = 0, Jet = 1, Coeff = 2, Mat = 3, Phi = 4 };

/// Tagged identifier of a polynomial indeterminate.
///
/// The whole identity is packed into one 64-bit key whose integer order is the
/// global variable order: Coord < Jet < Coeff < Mat < Phi, then by index.
/// Coord(i) is z_i, Jet(i, lambda) is z_i^(lambda), Coeff(alpha) is a_alpha,
/// Mat(k, l) is Lambda_k^l, Phi(k) is phi^(k). All indices are 1-based.
class Variable {
public:
    static Variable coord(unsigned i);
    static Variable jet(unsigned i, unsigned order);
    static Variable coeff(const MultiIndex& alpha);
    static Variable mat(unsigned k, unsigned l);
    static Variable phi(unsigned k);

    /// Jet(i, 0) is folded into Coord(i).
    static Variable jet_or_coord(unsigned i, unsigned order) { return order == 0 ? coord(i) : jet(i, order); }

    VarTag tag() const { return static_cast<VarTag>(key_ >> 60); }
    std::uint64_t key() const { return key_; }

    /// Coordinate index for Coord/Jet, row for Mat, order for Phi.
    unsigned index() const;
    /// Jet order (0 for Coord), column for Mat.
    unsigned order() const;
    /// Only meaningful for Coeff.
    MultiIndex alpha() const;

    bool is_jet_like() const { return tag() == VarTag::Coord || tag() == VarTag::Jet; }

    /// Canonical text name: z1, z1_2 (second jet), a[1,0,2], L[1,2], phi2.
    std::string name() const;
    /// Inverse of name(). Throws std::invalid_argument.
    static Variable parse(const std::string& text);

    auto operator<=>(const Variable&) const = default;
    bool operator==(const Variable&) const = default;

private:
    explicit Variable(std::uint64_t key) : key_(key) {}
    std::uint64_t key_ = 0;
};

}  // namespace jetframe

template <> struct std::hash<jetframe::Variable> {
    std::size_t operator()(const jetframe::Variable& v) const noexcept { return std::hash<std::uint64_t>{}(v.key()); }
};
