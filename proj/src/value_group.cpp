#include "hahn/value_group.hpp"

#include "hahn/error.hpp"

#include <algorithm>
#include <cctype>

namespace hahn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0)
        return abs(b);
    if (b == 0)
        return abs(a);
    Integer num = gcd(a.get_num() * b.get_den(), b.get_num() * a.get_den());
    Rational g(num, a.get_den() * b.get_den());
    g.canonicalize();
    return abs(g);
}

void validate(const ValueGroup& group, const std::vector<Rational>& coords) {
    if (coords.size() != group.rank())
        fail(ErrorKind::DomainMismatch, "element of rank " + std::to_string(coords.size()) +
                                            " does not lie in " + group.to_string());
    for (const auto& c : coords) {
        bool ok = true;
        switch (group.kind()) {
        case GroupKind::Integers:
        case GroupKind::LexTuples: ok = is_integer(c); break;
        case GroupKind::FracIntegers: ok = is_integer(c * group.denominator()); break;
        case GroupKind::Rationals: break;
        }
        if (!ok)
            fail(ErrorKind::DomainMismatch, to_string(c) + " does not lie in " + group.to_string());
    }
}

}  // namespace

ValueGroup ValueGroup::frac(long denominator) {
    if (denominator < 1)
        fail(ErrorKind::InvalidArgument, "denominator of (1/d)Z must be >= 1");
    if (denominator == 1)
        return integers();
    return ValueGroup(GroupKind::FracIntegers, 1, denominator);
}

ValueGroup ValueGroup::lex(std::size_t rank) {
    if (rank < 1)
        fail(ErrorKind::InvalidArgument, "rank of Z^n must be >= 1");
    return ValueGroup(GroupKind::LexTuples, rank, 1);
}

ValueGroup ValueGroup::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s == "Z")
        return integers();
    if (s == "Q")
        return rationals();
    auto number = [&](std::string_view digits) -> long {
        if (digits.empty() || digits.size() > 9 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            fail(ErrorKind::Config, "bad value group '" + std::string(text) + "'");
        return std::stol(std::string(digits));
    };
    if (s.starts_with("Z/"))
        return frac(number(s.substr(2)));
    if (s.starts_with("Z^")) {
        std::string_view rest = s.substr(2);
        if (rest.ends_with("lex"))
            rest.remove_suffix(3);
        return lex(static_cast<std::size_t>(number(rest)));
    }
    fail(ErrorKind::Config, "unknown value group '" + std::string(text) + "' (expected Z, Q, Z/d, Z^nlex)");
}

std::string ValueGroup::to_string() const {
    switch (kind_) {
    case GroupKind::Integers: return "Z";
    case GroupKind::Rationals: return "Q";
    case GroupKind::FracIntegers: return "Z/" + std::to_string(denominator_);
    case GroupKind::LexTuples: return "Z^" + std::to_string(rank_) + "lex";
    }
    return "?";
}

void require_same_group(const ValueGroup& a, const ValueGroup& b) {
    if (!(a == b))
        fail(ErrorKind::DomainMismatch, "mixed value groups " + a.to_string() + " and " + b.to_string());
}

GroupElement::GroupElement(ValueGroup group) : group_(group), coords_(group.rank()) {}

GroupElement::GroupElement(ValueGroup group, std::vector<Rational> coords)
    : group_(group), coords_(std::move(coords)) {
    for (auto& c : coords_)
        c.canonicalize();
    validate(group_, coords_);
}

GroupElement::GroupElement(ValueGroup group, const Rational& value)
    : GroupElement(group, std::vector<Rational>{value}) {}

GroupElement GroupElement::parse(const ValueGroup& group, std::string_view text) {
    std::string_view s = trim(text);
    bool parens = s.size() >= 2 && s.front() == '(' && s.back() == ')';
    if (parens)
        s = trim(s.substr(1, s.size() - 2));
    std::vector<Rational> coords;
    while (true) {
        auto comma = s.find(',');
        coords.push_back(parse_rational(trim(s.substr(0, comma))));
        if (comma == std::string_view::npos)
            break;
        s = s.substr(comma + 1);
    }
    if (coords.size() > 1 && !parens)
        fail(ErrorKind::InvalidArgument, "tuple literals need parentheses: '" + std::string(text) + "'");
    return GroupElement(group, std::move(coords));
}

GroupElement GroupElement::unit(const ValueGroup& group, std::size_t i) {
    std::vector<Rational> coords(group.rank());
    if (i >= group.rank())
        fail(ErrorKind::InvalidArgument, "unit vector index out of range");
    coords[i] = 1;
    return GroupElement(group, std::move(coords));
}

const Rational& GroupElement::value() const {
    if (group_.rank() != 1)
        fail(ErrorKind::DomainMismatch, "scalar value requested from a tuple element");
    return coords_[0];
}

bool GroupElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

int GroupElement::sign() const {
    for (const auto& c : coords_)
        if (c != 0)
            return c > 0 ? 1 : -1;
    return 0;
}

GroupElement GroupElement::operator-() const {
    GroupElement r(*this);
    for (auto& c : r.coords_)
        c = -c;
    return r;
}

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    require_same_group(a.group_, b.group_);
    GroupElement r(a);
    for (std::size_t i = 0; i < r.coords_.size(); ++i)
        r.coords_[i] += b.coords_[i];
    return r;
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    require_same_group(a.group_, b.group_);
    GroupElement r(a);
    for (std::size_t i = 0; i < r.coords_.size(); ++i)
        r.coords_[i] -= b.coords_[i];
    return r;
}

GroupElement operator*(const Integer& n, const GroupElement& a) {
    GroupElement r(a);
    for (auto& c : r.coords_)
        c *= n;
    return r;
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    require_same_group(a.group_, b.group_);
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
        int c = cmp(a.coords_[i], b.coords_[i]);
        if (c < 0)
            return std::strong_ordering::less;
        if (c > 0)
            return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool operator==(const GroupElement& a, const GroupElement& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

std::string GroupElement::to_string() const {
    if (coords_.size() == 1)
        return hahn::to_string(coords_[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i)
            s += ",";
        s += hahn::to_string(coords_[i]);
    }
    return s + ")";
}

std::optional<Integer> multiples_to_reach(const GroupElement& step, const GroupElement& target) {
    require_same_group(step.group(), target.group());
    if (step.sign() <= 0)
        fail(ErrorKind::InvalidArgument, "step must be positive");
    if (target.sign() <= 0)
        return Integer(0);
    const auto& s = step.coords();
    const auto& t = target.coords();
    std::size_t i = 0, j = 0;
    while (s[i] == 0)
        ++i;
    while (t[j] == 0)
        ++j;
    if (i < j)
        return Integer(1);
    if (i > j)
        return std::nullopt;
    Rational ratio = t[j] / s[i];
    Integer n;
    mpz_cdiv_q(n.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (n * step >= target)
        return n;
    return Integer(n + 1);
}

// ---------------------------------------------------------------------------

FgSubgroup::FgSubgroup(ValueGroup ambient, std::vector<GroupElement> generators)
    : ambient_(ambient), generators_(std::move(generators)), scale_(1) {
    for (const auto& g : generators_)
        require_same_group(ambient_, g.group());
    if (ambient_.rank() == 1) {
        Rational g = 0;
        for (const auto& e : generators_)
            g = rational_gcd(g, e.value());
        if (g != 0)
            basis_.push_back(GroupElement(ambient_, g));
        return;
    }
    IntMatrix m(generators_.size(), ambient_.rank());
    for (std::size_t i = 0; i < generators_.size(); ++i)
        for (std::size_t j = 0; j < ambient_.rank(); ++j)
            m(i, j) = generators_[i].coords()[j].get_num();
    hermite_ = hermite_form(m);
    for (std::size_t r = 0; r < hermite_.rank; ++r)
        basis_.push_back(unscaled(hermite_.form.row(r)));
}

FgSubgroup FgSubgroup::whole(const ValueGroup& ambient) {
    switch (ambient.kind()) {
    case GroupKind::Integers: return FgSubgroup(ambient, {GroupElement::unit(ambient)});
    case GroupKind::FracIntegers:
        return FgSubgroup(ambient, {GroupElement(ambient, Rational(1, ambient.denominator()))});
    case GroupKind::LexTuples: {
        std::vector<GroupElement> units;
        for (std::size_t i = 0; i < ambient.rank(); ++i)
            units.push_back(GroupElement::unit(ambient, i));
        return FgSubgroup(ambient, std::move(units));
    }
    case GroupKind::Rationals: break;
    }
    fail(ErrorKind::Unsupported, "Q is not finitely generated");
}

IntVector FgSubgroup::scaled(const GroupElement& g) const {
    IntVector v;
    for (const auto& c : g.coords())
        v.push_back(Rational(c * scale_).get_num());
    return v;
}

GroupElement FgSubgroup::unscaled(const IntVector& v) const {
    std::vector<Rational> coords;
    for (const auto& c : v) {
        Rational q(c, scale_);
        q.canonicalize();
        coords.push_back(q);
    }
    return GroupElement(ambient_, std::move(coords));
}

bool FgSubgroup::contains(const GroupElement& gamma) const {
    require_same_group(ambient_, gamma.group());
    if (ambient_.rank() == 1) {
        if (basis_.empty())
            return gamma.is_zero();
        return is_integer(gamma.value() / basis_[0].value());
    }
    return solve_row_combination(hermite_, scaled(gamma)).has_value();
}

std::optional<Integer> FgSubgroup::torsion_index(const GroupElement& gamma) const {
    require_same_group(ambient_, gamma.group());
    if (gamma.is_zero())
        return Integer(1);
    if (basis_.empty())
        return std::nullopt;
    if (ambient_.rank() == 1) {
        Rational ratio = gamma.value() / basis_[0].value();
        return Integer(ratio.get_den());
    }
    RatMatrix bt(ambient_.rank(), basis_.size());
    for (std::size_t r = 0; r < basis_.size(); ++r)
        for (std::size_t j = 0; j < ambient_.rank(); ++j)
            bt(j, r) = basis_[r].coords()[j];
    auto sol = solve_rational(bt, gamma.coords());
    if (!sol.particular)
        return std::nullopt;
    Integer n = 1;
    for (const auto& q : *sol.particular)
        n = lcm(n, q.get_den());
    return n;
}

bool FgSubgroup::subset_of(const FgSubgroup& other) const {
    require_same_group(ambient_, other.ambient_);
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](const GroupElement& b) { return other.contains(b); });
}

bool FgSubgroup::is_whole() const {
    if (ambient_.kind() == GroupKind::Rationals)
        return false;
    return whole(ambient_).subset_of(*this);
}

FgSubgroup::Purity FgSubgroup::is_pure() const {
    Purity out;
    if (ambient_.rank() == 1) {
        if (basis_.empty())
            return out;
        const Rational& g = basis_[0].value();
        switch (ambient_.kind()) {
        case GroupKind::Integers:
        case GroupKind::LexTuples:
        case GroupKind::FracIntegers: {
            Rational unit(1, ambient_.denominator());
            Rational index = g / unit;
            if (index != 1) {
                out.pure = false;
                out.witness = std::make_pair(GroupElement(ambient_, unit), index.get_num());
            }
            break;
        }
        case GroupKind::Rationals:
            out.pure = false;
            out.witness = std::make_pair(GroupElement(ambient_, Rational(g / 2)), Integer(2));
            break;
        }
        return out;
    }
    IntMatrix m(basis_.size(), ambient_.rank());
    for (std::size_t r = 0; r < basis_.size(); ++r)
        for (std::size_t j = 0; j < ambient_.rank(); ++j)
            m(r, j) = basis_[r].coords()[j].get_num();
    SmithForm snf = smith_form(m);
    auto bad = std::find_if(snf.divisors.begin(), snf.divisors.end(), [](const Integer& d) { return d != 1; });
    if (bad == snf.divisors.end())
        return out;
    out.pure = false;
    for (std::size_t i = 0; i < ambient_.rank(); ++i) {
        GroupElement e = GroupElement::unit(ambient_, i);
        auto n = torsion_index(e);
        if (n && *n > 1) {
            out.witness = std::make_pair(e, *n);
            return out;
        }
    }
    std::size_t j = static_cast<std::size_t>(bad - snf.divisors.begin());
    IntVector v = snf.right_inverse.row(j);
    for (std::size_t r = 0; r < hermite_.rank; ++r) {
        std::size_t c = hermite_.pivots[r];
        Integer q = floor_div(v[c], hermite_.form(r, c));
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] -= q * hermite_.form(r, k);
    }
    GroupElement gamma = unscaled(v);
    out.witness = std::make_pair(gamma, *torsion_index(gamma));
    return out;
}

std::string FgSubgroup::to_string() const {
    if (basis_.empty())
        return "{0}";
    std::string s = "<";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (i)
            s += ",";
        s += basis_[i].to_string();
    }
    return s + ">";
}

}  // namespace hahn
