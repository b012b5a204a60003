#include "jetframe/variable.hpp"

#include <stdexcept>

namespace jetframe {

namespace {

constexpr std::uint64_t tag_bits(VarTag t) { return static_cast<std::uint64_t>(t) << 60; }
constexpr std::uint64_t payload_mask = (std::uint64_t{1} << 60) - 1;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Variable Variable::coord(unsigned i) {
    require(i >= 1 && i < 256, "coordinate index out of range");
    return Variable(tag_bits(VarTag::Coord) | i);
}

Variable Variable::jet(unsigned i, unsigned order) {
    require(i >= 1 && i < 256, "jet coordinate index out of range");
    require(order >= 1 && order < 256, "jet order must be positive");
    return Variable(tag_bits(VarTag::Jet) | (static_cast<std::uint64_t>(order) << 8) | i);
}

Variable Variable::coeff(const MultiIndex& alpha) {
    require(alpha.size() >= 1 && alpha.size() <= 8, "coefficient multi-index must have 1..8 slots");
    return Variable(tag_bits(VarTag::Coeff) | (static_cast<std::uint64_t>(alpha.size()) << 56) | alpha.pack());
}

Variable Variable::mat(unsigned k, unsigned l) {
    require(k >= 1 && k < 256 && l >= 1 && l < 256, "matrix index out of range");
    return Variable(tag_bits(VarTag::Mat) | (static_cast<std::uint64_t>(k) << 8) | l);
}

Variable Variable::phi(unsigned k) {
    require(k >= 2 && k < 256, "reparametrization order must be >= 2");
    return Variable(tag_bits(VarTag::Phi) | k);
}

unsigned Variable::index() const {
    switch (tag()) {
        case VarTag::Coord:
        case VarTag::Jet: return static_cast<unsigned>(key_ & 0xff);
        case VarTag::Mat: return static_cast<unsigned>((key_ >> 8) & 0xff);
        case VarTag::Phi: return static_cast<unsigned>(key_ & 0xff);
        case VarTag::Coeff: break;
    }
    throw std::logic_error("coefficient variables carry a multi-index, not an index");
}

unsigned Variable::order() const {
    switch (tag()) {
        case VarTag::Coord: return 0;
        case VarTag::Jet: return static_cast<unsigned>((key_ >> 8) & 0xff);
        case VarTag::Mat: return static_cast<unsigned>(key_ & 0xff);
        default: break;
    }
    throw std::logic_error("variable has no order");
}

MultiIndex Variable::alpha() const {
    if (tag() != VarTag::Coeff) throw std::logic_error("not a coefficient variable");
    const auto slots = static_cast<std::size_t>((key_ >> 56) & 0xf);
    return MultiIndex::unpack(key_ & ((std::uint64_t{1} << 56) - 1), slots);
}

std::string Variable::name() const {
    switch (tag()) {
        case VarTag::Coord: return "z" + std::to_string(index());
        case VarTag::Jet: return "z" + std::to_string(index()) + "_" + std::to_string(order());
        case VarTag::Coeff: return "a" + alpha().to_string();
        case VarTag::Mat: return "L[" + std::to_string(index()) + "," + std::to_string(order()) + "]";
        case VarTag::Phi: return "phi" + std::to_string(index());
    }
    return "?";
}

Variable Variable::parse(const std::string& text) {
    auto number = [&](std::size_t from, std::size_t to) -> unsigned {
        if (from >= to) throw std::invalid_argument("bad variable name: " + text);
        std::size_t used = 0;
        const unsigned long v = std::stoul(text.substr(from, to - from), &used);
        if (used != to - from) throw std::invalid_argument("bad variable name: " + text);
        return static_cast<unsigned>(v);
    };
    auto bracket_list = [&](std::size_t open) {
        if (open >= text.size() || text[open] != '[' || text.back() != ']')
            throw std::invalid_argument("bad variable name: " + text);
        std::vector<unsigned> out;
        std::size_t start = open + 1;
        for (std::size_t i = start; i < text.size(); ++i) {
            if (text[i] == ',' || text[i] == ']') {
                out.push_back(number(start, i));
                start = i + 1;
            }
        }
        return out;
    };
    try {
        if (text.rfind("phi", 0) == 0) return phi(number(3, text.size()));
        if (text.rfind("z", 0) == 0) {
            const auto us = text.find('_');
            if (us == std::string::npos) return coord(number(1, text.size()));
            return jet(number(1, us), number(us + 1, text.size()));
        }
        if (text.rfind("a", 0) == 0) return coeff(MultiIndex(bracket_list(1)));
        if (text.rfind("L", 0) == 0) {
            auto kl = bracket_list(1);
            if (kl.size() != 2) throw std::invalid_argument("bad matrix variable: " + text);
            return mat(kl[0], kl[1]);
        }
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("bad variable name: " + text);
    }
    throw std::invalid_argument("unknown variable: " + text);
}

}  // namespace jetframe
