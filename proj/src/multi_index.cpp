#include "jetframe/multi_index.hpp"
#include "jetframe/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace jetframe {

MultiIndex MultiIndex::unit(std::size_t length, std::size_t slot, unsigned multiple) {
    MultiIndex m(length);
    m.e_.at(slot) = multiple;
    return m;
}

unsigned MultiIndex::length() const { return std::accumulate(e_.begin(), e_.end(), 0u); }

bool MultiIndex::dominated_by(const MultiIndex& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (e_[i] > other.e_[i]) return false;
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
    if (size() != other.size()) throw std::invalid_argument("multi-index length mismatch");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < size(); ++i) r.e_[i] += other.e_[i];
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
    if (!other.dominated_by(*this)) throw std::invalid_argument("multi-index difference would be negative");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < size(); ++i) r.e_[i] -= other.e_[i];
    return r;
}

std::string MultiIndex::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e_[i]);
    }
    return s + "]";
}

std::uint64_t MultiIndex::pack() const {
    if (size() > 8) throw std::length_error("multi-index longer than 8 slots");
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (e_[i] >= 128) throw std::length_error("multi-index entry too large to pack");
        p |= static_cast<std::uint64_t>(e_[i]) << (7 * (7 - i));
    }
    return p;
}

MultiIndex MultiIndex::unpack(std::uint64_t packed, std::size_t length) {
    MultiIndex m(length);
    for (std::size_t i = 0; i < length; ++i) m.e_[i] = static_cast<unsigned>((packed >> (7 * (7 - i))) & 0x7f);
    return m;
}

namespace {

void fill(std::size_t slot, unsigned remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
    if (slot + 1 == cur.size()) {
        cur[slot] = remaining;
        out.push_back(cur);
        return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
        cur[slot] = v;
        fill(slot + 1, remaining - v, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_length(std::size_t slots, unsigned total) {
    std::vector<MultiIndex> out;
    if (slots == 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    MultiIndex cur(slots);
    fill(0, total, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(std::size_t slots, unsigned max_total) {
    std::vector<MultiIndex> out;
    for (unsigned t = 0; t <= max_total; ++t) {
        auto layer = multi_indices_of_length(slots, t);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<MultiIndex> sub_indices(const MultiIndex& alpha) {
    std::vector<MultiIndex> out{MultiIndex(alpha.size())};
    for (std::size_t slot = 0; slot < alpha.size(); ++slot) {
        std::vector<MultiIndex> next;
        for (const auto& base : out)
            for (unsigned v = 0; v <= alpha[slot]; ++v) {
                MultiIndex m = base;
                m[slot] = v;
                next.push_back(std::move(m));
            }
        out = std::move(next);
    }
    return out;
}

long multinomial_split(const MultiIndex& ell, const MultiIndex& sub) {
    long r = 1;
    for (std::size_t i = 0; i < ell.size(); ++i) r *= binomial(ell[i], sub[i]).get_num().get_si();
    return r;
}

long falling_factorial(const MultiIndex& x, const MultiIndex& g) {
    long r = 1;
    for (std::size_t i = 0; i < x.size(); ++i) r *= falling_factorial(static_cast<long>(x[i]), g[i]);
    return r;
}

}  // namespace jetframe
