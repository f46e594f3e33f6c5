#include "hxc/scalar.hpp"

#include "hxc/error.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace hxc {

GaussRat& GaussRat::operator/=(const GaussRat& o) {
    mpq_class n = o.re * o.re + o.im * o.im;
    if (sgn(n) == 0) fail("DivisionByZero", "Gaussian rational division by zero");
    mpq_class r = (re * o.re + im * o.im) / n;
    mpq_class i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string GaussRat::str() const {
    if (sgn(im) == 0) return re.get_str();
    std::string ipart;
    mpq_class a = abs(im);
    ipart = (a == 1) ? "i" : a.get_str() + "*i";
    if (sgn(re) == 0) return (sgn(im) < 0 ? "-" : "") + ipart;
    return re.get_str() + (sgn(im) < 0 ? " - " : " + ") + ipart;
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class q(s, 10);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail("SyntaxError", "not a rational literal: '" + s + "'");
    }
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    unsigned da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    // Same degree: lexicographic with x0 most significant.
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

VarList make_vars(std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarList& a, const VarList& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Scalar::Scalar(const GaussRat& c) {
    if (!c.is_zero()) terms_.emplace(Mono{}, c);
}

Scalar Scalar::constant(const VarList& vars, const GaussRat& c) {
    Scalar s;
    s.vars_ = vars;
    if (!c.is_zero()) s.terms_.emplace(Mono(vars ? vars->size() : 0, 0), c);
    return s;
}

Scalar Scalar::variable(const VarList& vars, std::size_t idx) {
    if (!vars || idx >= vars->size()) fail("UnknownCoordinate", "variable index out of range");
    Mono m(vars->size(), 0);
    m[idx] = 1;
    return monomial(vars, m, GaussRat(1));
}

Scalar Scalar::variable(const VarList& vars, const std::string& name) {
    if (vars)
        for (std::size_t k = 0; k < vars->size(); ++k)
            if ((*vars)[k] == name) return variable(vars, k);
    fail("UnknownCoordinate", "no coordinate named '" + name + "'");
}

Scalar Scalar::monomial(const VarList& vars, const Mono& m, const GaussRat& c) {
    Scalar s;
    s.vars_ = vars;
    if (!c.is_zero()) s.terms_.emplace(m, c);
    return s;
}

Scalar Scalar::bind(const VarList& vars) const {
    if (vars_) {
        if (!same_vars(vars_, vars)) fail("VariableMismatch", "scalar is bound to a different coordinate list");
        return *this;
    }
    return constant(vars, constant_term());
}

void Scalar::adopt(const Scalar& o) {
    if (!o.vars_) return;
    if (!vars_) {
        GaussRat c = constant_term();
        vars_ = o.vars_;
        terms_.clear();
        if (!c.is_zero()) terms_.emplace(Mono(vars_->size(), 0), c);
        return;
    }
    if (!same_vars(vars_, o.vars_)) fail("VariableMismatch", "scalars use different coordinate lists");
}

bool Scalar::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (auto e : terms_.begin()->first)
        if (e) return false;
    return true;
}

std::optional<GaussRat> Scalar::as_constant() const {
    if (!is_constant()) return std::nullopt;
    return constant_term();
}

GaussRat Scalar::constant_term() const {
    if (terms_.empty()) return GaussRat();
    const auto& [m, c] = *terms_.begin();
    for (auto e : m)
        if (e) return GaussRat();
    return c;
}

bool Scalar::is_real() const {
    for (const auto& [m, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

unsigned Scalar::degree() const {
    if (terms_.empty()) return 0;
    unsigned d = 0;
    for (auto e : terms_.rbegin()->first) d += e;
    return d;
}

void Scalar::add_term(const Mono& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (&o == this) return *this *= GaussRat(2);
    adopt(o);
    if (vars_ && !o.vars_) {
        Scalar ob = o.bind(vars_);
        for (const auto& [m, c] : ob.terms_) add_term(m, c);
        return *this;
    }
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_))
        fail("VariableMismatch", "scalars use different coordinate lists");
    Scalar r;
    r.vars_ = a.vars_ ? a.vars_ : b.vars_;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    Scalar tmp;
    const Scalar* pa = &a;
    const Scalar* pb = &b;
    if (r.vars_ && !a.vars_) pa = &(tmp = a.bind(r.vars_));
    else if (r.vars_ && !b.vars_) pb = &(tmp = b.bind(r.vars_));
    Mono m;
    for (const auto& [ma, ca] : pa->terms_) {
        for (const auto& [mb, cb] : pb->terms_) {
            m = ma;
            for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator*=(const GaussRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.vars_ && b.vars_ && !same_vars(a.vars_, b.vars_)) return false;
    if (a.vars_ && !b.vars_) return a.terms_ == b.bind(a.vars_).terms_;
    if (!a.vars_ && b.vars_) return a.bind(b.vars_).terms_ == b.terms_;
    return a.terms_ == b.terms_;
}

Scalar Scalar::pow(unsigned e) const {
    Scalar result = vars_ ? constant(vars_, GaussRat(1)) : Scalar(1);
    Scalar base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Scalar Scalar::partial(std::size_t idx) const {
    if (!vars_) {
        Scalar z;
        return z;
    }
    if (idx >= vars_->size()) fail("UnknownCoordinate", "partial: index out of range");
    Scalar r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
        if (m[idx] == 0) continue;
        Mono mm = m;
        mm[idx] -= 1;
        r.add_term(mm, c * GaussRat(static_cast<long>(m[idx])));
    }
    return r;
}

Scalar Scalar::partial(const std::string& coord) const {
    if (vars_)
        for (std::size_t k = 0; k < vars_->size(); ++k)
            if ((*vars_)[k] == coord) return partial(k);
    fail("UnknownCoordinate", "no coordinate named '" + coord + "'");
}

Scalar Scalar::conj() const {
    Scalar r = *this;
    for (auto& [m, c] : r.terms_) c = c.conj();
    return r;
}

Scalar Scalar::real_part() const {
    Scalar r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) r.add_term(m, GaussRat(c.re));
    return r;
}

Scalar Scalar::imag_part() const {
    Scalar r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) r.add_term(m, GaussRat(c.im));
    return r;
}

GaussRat Scalar::eval(const std::vector<GaussRat>& point) const {
    GaussRat total;
    for (const auto& [m, c] : terms_) {
        GaussRat t = c;
        for (std::size_t k = 0; k < m.size(); ++k)
            for (std::uint32_t e = 0; e < m[k]; ++e) t *= point.at(k);
        total += t;
    }
    return total;
}

namespace {

std::string mono_str(const Mono& m, const VarList& vars) {
    std::string out;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (!m[k]) continue;
        if (!out.empty()) out += "*";
        out += (*vars)[k];
        if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
    return out;
}

// Returns the term text without its leading sign, and whether it is negated.
std::pair<bool, std::string> term_str(const GaussRat& c, const std::string& mono) {
    auto attach = [&](const std::string& coef) {
        if (mono.empty()) return coef;
        if (coef.empty()) return mono;
        return coef + "*" + mono;
    };
    if (c.is_real()) {
        mpq_class a = abs(c.re);
        std::string coef = (a == 1 && !mono.empty()) ? "" : a.get_str();
        return {sgn(c.re) < 0, attach(coef)};
    }
    if (sgn(c.re) == 0) {
        mpq_class a = abs(c.im);
        std::string coef = (a == 1) ? "i" : a.get_str() + "*i";
        return {sgn(c.im) < 0, attach(coef)};
    }
    return {false, attach("(" + c.str() + ")")};
}

}  // namespace

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        auto [neg, body] = term_str(it->second, vars_ ? mono_str(it->first, vars_) : std::string());
        if (first) out += (neg ? "-" : "") + body;
        else out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    Parser(const std::string& text, const VarList& vars) : s_(text), vars_(vars) {}

    Scalar run() {
        Scalar r = expr();
        skip();
        if (p_ != s_.size()) error("unexpected '" + std::string(1, s_[p_]) + "'");
        return r.bind(vars_);
    }

private:
    [[noreturn]] void error(const std::string& msg) { fail("SyntaxError", msg + " at position " + std::to_string(p_), static_cast<long>(p_)); }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool eat(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    Scalar expr() {
        Scalar acc = term();
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    Scalar term() {
        Scalar acc = unary();
        while (eat('*')) acc *= unary();
        return acc;
    }

    Scalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Scalar power() {
        Scalar base = atom();
        if (eat('^')) {
            skip();
            std::size_t start = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (start == p_) error("exponent must be a non-negative integer");
            if (p_ - start > 6) error("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, p_ - start))));
        }
        return base;
    }

    Scalar atom() {
        skip();
        if (p_ >= s_.size()) error("unexpected end of input");
        char c = s_[p_];
        if (c == '(') {
            ++p_;
            Scalar r = expr();
            if (!eat(')')) error("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return literal();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            std::string name = s_.substr(start, p_ - start);
            if (name == "i") return Scalar(GaussRat::I());
            if (vars_)
                for (std::size_t k = 0; k < vars_->size(); ++k)
                    if ((*vars_)[k] == name) return Scalar::variable(vars_, k);
            fail("UnknownIdentifier", "unknown identifier '" + name + "' at position " + std::to_string(start),
                 static_cast<long>(start));
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    Scalar literal() {
        std::size_t start = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        std::string num = s_.substr(start, p_ - start);
        if (p_ < s_.size() && s_[p_] == '/') {
            ++p_;
            std::size_t ds = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (ds == p_) error("expected denominator");
            std::string den = s_.substr(ds, p_ - ds);
            if (mpz_class(den) == 0) error("zero denominator");
            num += "/" + den;
        }
        if (p_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_'))
            error("implicit multiplication is not allowed");
        return Scalar(GaussRat(parse_rational(num)));
    }

    const std::string& s_;
    VarList vars_;
    std::size_t p_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const VarList& vars) {
    if (vars)
        for (const auto& v : *vars)
            if (v == "i") fail("SyntaxError", "'i' is reserved for the imaginary unit");
    return Parser(text, vars).run();
}

}  // namespace hxc
