#pragma once

#include "hxc/gaussrat.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hxc {

using Mono = std::vector<std::uint32_t>;

struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

using VarList = std::shared_ptr<const std::vector<std::string>>;
VarList make_vars(std::vector<std::string> names);
bool same_vars(const VarList& a, const VarList& b);

/// Polynomial over Gaussian rationals in an ordered coordinate list.
///
/// A scalar built without a variable list is an unbound constant; it adopts
/// the list of whatever it is combined with. Two bound scalars with
/// different lists raise VariableMismatch.
class Scalar {
public:
    using Terms = std::map<Mono, GaussRat, GrlexLess>;

    Scalar() = default;
    Scalar(const GaussRat& c);
    Scalar(long c) : Scalar(GaussRat(c)) {}

    static Scalar constant(const VarList& vars, const GaussRat& c);
    static Scalar variable(const VarList& vars, std::size_t idx);
    static Scalar variable(const VarList& vars, const std::string& name);
    static Scalar monomial(const VarList& vars, const Mono& m, const GaussRat& c);

    const VarList& vars() const { return vars_; }
    bool bound() const { return static_cast<bool>(vars_); }
    std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::optional<GaussRat> as_constant() const;
    GaussRat constant_term() const;
    bool is_real() const;
    unsigned degree() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator*=(const GaussRat& c);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator*(Scalar a, const GaussRat& c) { return a *= c; }
    friend Scalar operator*(const GaussRat& c, Scalar a) { return a *= c; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(unsigned e) const;
    Scalar partial(std::size_t idx) const;
    Scalar partial(const std::string& coord) const;
    Scalar conj() const;
    Scalar real_part() const;
    Scalar imag_part() const;
    GaussRat eval(const std::vector<GaussRat>& point) const;
    Scalar bind(const VarList& vars) const;

    std::string str() const;

private:
    void adopt(const Scalar& o);
    void add_term(const Mono& m, const GaussRat& c);

    VarList vars_;
    Terms terms_;
};

Scalar parse_scalar(const std::string& text, const VarList& vars);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace hxc
