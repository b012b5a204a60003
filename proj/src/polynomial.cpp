#include "jetframe/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace jetframe {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Variable v, unsigned exp) {
    if (exp > 0) p_.push_back({v, exp});
}

Monomial Monomial::from_powers(std::vector<VarPower> powers) {
    std::sort(powers.begin(), powers.end(), [](const VarPower& a, const VarPower& b) { return a.var < b.var; });
    Monomial m;
    for (const auto& vp : powers) {
        if (vp.exp == 0) continue;
        if (!m.p_.empty() && m.p_.back().var == vp.var)
            m.p_.back().exp += vp.exp;
        else
            m.p_.push_back(vp);
    }
    return m;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& vp : p_) d += vp.exp;
    return d;
}

unsigned Monomial::exponent(Variable v) const {
    auto it = std::lower_bound(p_.begin(), p_.end(), v, [](const VarPower& a, Variable b) { return a.var < b; });
    return (it != p_.end() && it->var == v) ? it->exp : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.p_.reserve(p_.size() + o.p_.size());
    auto a = p_.begin();
    auto b = o.p_.begin();
    while (a != p_.end() || b != o.p_.end()) {
        if (b == o.p_.end() || (a != p_.end() && a->var < b->var)) {
            r.p_.push_back(*a++);
        } else if (a == p_.end() || b->var < a->var) {
            r.p_.push_back(*b++);
        } else {
            r.p_.push_back({a->var, a->exp + b->exp});
            ++a;
            ++b;
        }
    }
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
    Monomial r;
    auto a = p_.begin();
    for (const auto& vp : o.p_) {
        while (a != p_.end() && a->var < vp.var) r.p_.push_back(*a++);
        if (a == p_.end() || a->var != vp.var || a->exp < vp.exp) return std::nullopt;
        if (a->exp > vp.exp) r.p_.push_back({a->var, a->exp - vp.exp});
        ++a;
    }
    while (a != p_.end()) r.p_.push_back(*a++);
    return r;
}

Monomial Monomial::without(Variable v) const { return with_exponent(v, 0); }

Monomial Monomial::with_exponent(Variable v, unsigned exp) const {
    Monomial r;
    bool placed = false;
    for (const auto& vp : p_) {
        if (!placed && !(vp.var < v)) {
            if (exp > 0) r.p_.push_back({v, exp});
            placed = true;
            if (vp.var == v) continue;
        }
        r.p_.push_back(vp);
    }
    if (!placed && exp > 0) r.p_.push_back({v, exp});
    return r;
}

std::string Monomial::to_string() const {
    std::string s;
    for (const auto& vp : p_) {
        if (!s.empty()) s += " * ";
        s += vp.var.name();
        if (vp.exp > 1) s += "^" + std::to_string(vp.exp);
    }
    return s;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree();
    const unsigned db = b.degree();
    if (da != db) return da < db;
    const auto& pa = a.powers();
    const auto& pb = b.powers();
    std::size_t i = 0;
    for (; i < pa.size() && i < pb.size(); ++i) {
        if (pa[i].var != pb[i].var) return pb[i].var < pa[i].var;  // b carries the earlier variable
        if (pa[i].exp != pb[i].exp) return pa[i].exp < pb[i].exp;
    }
    return pa.size() < pb.size();
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& vp : m.powers()) {
        h ^= std::hash<std::uint64_t>{}(vp.var.key()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= vp.exp + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) t_.emplace(Monomial(), c);
}

Polynomial::Polynomial(Variable v) { t_.emplace(Monomial(v), Rational(1)); }

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
    if (c != 0) t_.emplace(m, c);
}

Polynomial Polynomial::from_terms(std::vector<std::pair<Monomial, Rational>> terms) {
    Polynomial p;
    for (auto& [m, c] : terms) p.add_term(m, c);
    return p;
}

bool Polynomial::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Rational Polynomial::constant_term() const { return coefficient(Monomial()); }

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const { return t_.empty() ? 0 : t_.rbegin()->first.degree(); }

const std::pair<const Monomial, Rational>& Polynomial::leading_term() const {
    if (t_.empty()) throw std::logic_error("zero polynomial has no leading term");
    return *t_.rbegin();
}

std::vector<Variable> Polynomial::support() const {
    std::vector<Variable> vars;
    for (const auto& [m, c] : t_)
        for (const auto& vp : m.powers()) vars.push_back(vp.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool Polynomial::involves(Variable v) const {
    for (const auto& [m, c] : t_)
        if (m.exponent(v) > 0) return true;
    return false;
}

unsigned Polynomial::degree_in(Variable v) const {
    unsigned d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.exponent(v));
    return d;
}

unsigned Polynomial::degree_in(const std::function<bool(Variable)>& in_group) const {
    unsigned d = 0;
    for (const auto& [m, c] : t_) {
        unsigned md = 0;
        for (const auto& vp : m.powers())
            if (in_group(vp.var)) md += vp.exp;
        d = std::max(d, md);
    }
    return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

void Polynomial::add_scaled(const Polynomial& o, const Rational& c, const Monomial& m) {
    if (c == 0) return;
    for (const auto& [om, oc] : o.t_) add_term(m.is_one() ? om : om * m, oc * c);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    if (a.size() * b.size() <= 64) {
        Polynomial r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) {
            auto [it, inserted] = acc.try_emplace(ma * mb, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    Polynomial r;
    for (auto& [m, c] : acc)
        if (c != 0) r.t_.emplace(m, std::move(c));
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Polynomial Polynomial::pow(long exponent) const {
    if (exponent < 0) throw std::domain_error("negative polynomial exponent");
    Polynomial result(1);
    Polynomial base(*this);
    auto e = static_cast<unsigned long>(exponent);
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string Polynomial::to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c;
        if (first) {
            s += to_string_signed(c, m);
            first = false;
            continue;
        }
        if (c < 0) {
            s += " - ";
            mag = -c;
        } else {
            s += " + ";
        }
        s += jetframe::to_string(mag);
        if (!m.is_one()) s += " * " + m.to_string();
    }
    return s;
}

std::string Polynomial::to_string_signed(const Rational& c, const Monomial& m) {
    std::string s = jetframe::to_string(c);
    if (!m.is_one()) s += " * " + m.to_string();
    return s;
}

Polynomial Polynomial::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty()) throw std::invalid_argument("empty polynomial text");
    if (tokens.size() == 1 && tokens[0] == "0") return Polynomial();

    Polynomial p;
    std::size_t i = 0;
    Rational sign(1);
    while (i < tokens.size()) {
        Rational c = sign * parse_rational(tokens[i++]);
        std::vector<VarPower> powers;
        while (i < tokens.size() && tokens[i] == "*") {
            if (++i >= tokens.size()) throw std::invalid_argument("dangling '*' in polynomial text");
            const std::string& f = tokens[i++];
            const auto caret = f.find('^');
            unsigned exp = 1;
            if (caret != std::string::npos) exp = static_cast<unsigned>(std::stoul(f.substr(caret + 1)));
            powers.push_back({Variable::parse(f.substr(0, caret)), exp});
        }
        p.add_term(Monomial::from_powers(std::move(powers)), c);
        if (i == tokens.size()) break;
        if (tokens[i] == "+")
            sign = 1;
        else if (tokens[i] == "-")
            sign = -1;
        else
            throw std::invalid_argument("expected '+' or '-' in polynomial text, got '" + tokens[i] + "'");
        if (++i == tokens.size()) throw std::invalid_argument("dangling sign in polynomial text");
    }
    return p;
}

// ------------------------------------------------------------- operations

Polynomial partial_derivative(const Polynomial& p, Variable v) {
    Polynomial r;
    for (const auto& [m, c] : p.terms()) {
        const unsigned e = m.exponent(v);
        if (e == 0) continue;
        r.add_term(m.with_exponent(v, e - 1), c * e);
    }
    return r;
}

Polynomial substitute(const Polynomial& p, const std::unordered_map<Variable, Polynomial>& bindings) {
    std::map<std::pair<Variable, unsigned>, Polynomial> power_cache;
    auto power = [&](Variable v, const Polynomial& base, unsigned e) -> const Polynomial& {
        auto key = std::make_pair(v, e);
        auto it = power_cache.find(key);
        if (it != power_cache.end()) return it->second;
        return power_cache.emplace(key, base.pow(e)).first->second;
    };
    Polynomial r;
    for (const auto& [m, c] : p.terms()) {
        Polynomial term(c);
        std::vector<VarPower> kept;
        for (const auto& vp : m.powers()) {
            auto b = bindings.find(vp.var);
            if (b == bindings.end())
                kept.push_back(vp);
            else
                term = term * power(vp.var, b->second, vp.exp);
            if (term.is_zero()) break;
        }
        r.add_scaled(term, Rational(1), Monomial::from_powers(std::move(kept)));
    }
    return r;
}

namespace {

Rational rational_pow(const Rational& base, unsigned e) {
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return Rational(num, den);
}

}  // namespace

Rational evaluate(const Polynomial& p, const std::unordered_map<Variable, Rational>& values) {
    Rational total(0);
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (const auto& vp : m.powers()) {
            auto it = values.find(vp.var);
            if (it == values.end()) throw std::out_of_range("unbound variable " + vp.var.name());
            term *= vp.exp == 1 ? it->second : rational_pow(it->second, vp.exp);
        }
        total += term;
    }
    return total;
}

Polynomial evaluate_partial(const Polynomial& p, const std::unordered_map<Variable, Rational>& values) {
    Polynomial r;
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        std::vector<VarPower> kept;
        for (const auto& vp : m.powers()) {
            auto it = values.find(vp.var);
            if (it == values.end())
                kept.push_back(vp);
            else
                term *= rational_pow(it->second, vp.exp);
        }
        r.add_term(Monomial::from_powers(std::move(kept)), term);
    }
    return r;
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
    Polynomial quotient;
    Polynomial rest = p;
    const auto& [gm, gc] = g.leading_term();
    while (!rest.is_zero()) {
        const auto& [rm, rc] = rest.leading_term();
        auto qm = rm.divide(gm);
        if (!qm) return std::nullopt;
        const Rational qc = rc / gc;
        const Monomial step = *qm;
        quotient.add_term(step, qc);
        rest.add_scaled(g, -qc, step);
    }
    return quotient;
}

std::map<Monomial, Polynomial, GradedLex> collect_by(const Polynomial& p, const std::function<bool(Variable)>& key_vars) {
    std::map<Monomial, Polynomial, GradedLex> out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<VarPower> key;
        std::vector<VarPower> rest;
        for (const auto& vp : m.powers()) (key_vars(vp.var) ? key : rest).push_back(vp);
        out[Monomial::from_powers(std::move(key))].add_term(Monomial::from_powers(std::move(rest)), c);
    }
    return out;
}

}  // namespace jetframe
