#pragma once

#include "hahn/matrix.hpp"
#include "hahn/numeric.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hahn {

enum class GroupKind { Integers, Rationals, FracIntegers, LexTuples };

// Z, Q, (1/d)Z or Z^n with the lexicographic order. Cheap to copy.
class ValueGroup {
public:
    static ValueGroup integers() { return ValueGroup(GroupKind::Integers, 1, 1); }
    static ValueGroup rationals() { return ValueGroup(GroupKind::Rationals, 1, 1); }
    static ValueGroup frac(long denominator);
    static ValueGroup lex(std::size_t rank);

    // "Z", "Q", "Z/2", "Z^3lex"
    static ValueGroup parse(std::string_view text);

    GroupKind kind() const { return kind_; }
    std::size_t rank() const { return rank_; }
    long denominator() const { return denominator_; }
    bool archimedean() const { return kind_ != GroupKind::LexTuples || rank_ == 1; }
    // Z, (1/d)Z: exponents are integer multiples of 1/d.
    bool discrete_rank_one() const {
        return kind_ == GroupKind::Integers || kind_ == GroupKind::FracIntegers;
    }

    std::string to_string() const;

    friend bool operator==(const ValueGroup&, const ValueGroup&) = default;

private:
    ValueGroup(GroupKind kind, std::size_t rank, long denominator)
        : kind_(kind), rank_(rank), denominator_(denominator) {}

    GroupKind kind_;
    std::size_t rank_;
    long denominator_;
};

class GroupElement {
public:
    GroupElement() : GroupElement(ValueGroup::integers()) {}
    explicit GroupElement(ValueGroup group);  // zero
    GroupElement(ValueGroup group, std::vector<Rational> coords);
    GroupElement(ValueGroup group, const Rational& value);  // rank one

    // Literals: "5", "3/2", "(1,-2,0)"; "(3/2)" is accepted for rank one.
    static GroupElement parse(const ValueGroup& group, std::string_view text);
    // i-th unit vector (lex groups) or 1 (rank one).
    static GroupElement unit(const ValueGroup& group, std::size_t i = 0);

    const ValueGroup& group() const { return group_; }
    const std::vector<Rational>& coords() const { return coords_; }
    // Rank-one value.
    const Rational& value() const;

    bool is_zero() const;
    int sign() const;

    GroupElement operator-() const;
    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator*(const Integer& n, const GroupElement& a);
    GroupElement& operator+=(const GroupElement& b) { return *this = *this + b; }

    friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);
    friend bool operator==(const GroupElement& a, const GroupElement& b);

    std::string to_string() const;

private:
    ValueGroup group_;
    std::vector<Rational> coords_;
};

void require_same_group(const ValueGroup& a, const ValueGroup& b);

// Least n >= 0 with n*step >= target, for step > 0; nullopt when no multiple
// of step reaches target (non-archimedean).
std::optional<Integer> multiples_to_reach(const GroupElement& step, const GroupElement& target);

// Finitely generated subgroup with a maintained canonical basis: a single
// nonnegative generator for rank-one groups, Hermite rows for Z^n.
class FgSubgroup {
public:
    FgSubgroup(ValueGroup ambient, std::vector<GroupElement> generators);

    static FgSubgroup trivial(const ValueGroup& ambient) { return FgSubgroup(ambient, {}); }
    // The full group (not available for Q).
    static FgSubgroup whole(const ValueGroup& ambient);

    const ValueGroup& ambient() const { return ambient_; }
    const std::vector<GroupElement>& generators() const { return generators_; }
    const std::vector<GroupElement>& basis() const { return basis_; }

    bool is_trivial() const { return basis_.empty(); }
    bool contains(const GroupElement& gamma) const;
    // Least n >= 1 with n*gamma in the subgroup.
    std::optional<Integer> torsion_index(const GroupElement& gamma) const;
    bool subset_of(const FgSubgroup& other) const;
    bool same_as(const FgSubgroup& other) const { return subset_of(other) && other.subset_of(*this); }
    bool is_whole() const;

    struct Purity {
        bool pure = true;
        std::optional<std::pair<GroupElement, Integer>> witness;  // gamma not in, n*gamma in
    };
    Purity is_pure() const;

    std::string to_string() const;

private:
    // Integer coordinates of an element after scaling by scale_.
    IntVector scaled(const GroupElement& g) const;
    GroupElement unscaled(const IntVector& v) const;

    ValueGroup ambient_;
    std::vector<GroupElement> generators_;
    std::vector<GroupElement> basis_;
    Integer scale_;  // common denominator used for the integer lattice
    HermiteForm hermite_;
};

}  // namespace hahn
