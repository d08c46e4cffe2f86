#pragma once

#include "hahn/coeff_field.hpp"
#include "hahn/value_group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hahn {

// Additive map c: Gamma -> k, given by the images of the canonical
// generators: 1 for Z and Q (Q-linear on Q), 1/d for (1/d)Z, e_i for Z^n.
class AdditiveMap {
public:
    AdditiveMap(ValueGroup domain, CoeffField field, std::vector<RatFunc> images);
    static AdditiveMap zero(const ValueGroup& domain, CoeffField field);

    const ValueGroup& domain() const { return domain_; }
    CoeffField field() const { return field_; }
    const std::vector<RatFunc>& images() const { return images_; }
    std::size_t generator_count() const { return images_.size(); }
    GroupElement generator(std::size_t i) const;

    // Coordinates of gamma along the generators (integers except over Q).
    std::vector<Rational> coordinates(const GroupElement& gamma) const;
    RatFunc operator()(const GroupElement& gamma) const;
    GroupElement combine(const IntVector& z) const;

    bool is_zero() const;

    // "1 -> x", "1/2 -> x", "e1 -> 1, e2 -> 1/x", "0"
    std::string to_string() const;

    friend bool operator==(const AdditiveMap&, const AdditiveMap&) = default;

private:
    ValueGroup domain_;
    CoeffField field_;
    std::vector<RatFunc> images_;
};

// ker(c) as a subgroup; the domain must be finitely generated.
FgSubgroup c_kernel(const AdditiveMap& c);

struct DaggerMeet {
    bool meets = false;
    std::optional<GroupElement> gamma;  // c(gamma) != 0 and c(gamma) = f'/f
    std::optional<RatFunc> f;
};

DaggerMeet image_meets_dagger(const AdditiveMap& c);

enum class ConstantsVerdict { FewConstants, ManyConstants, Intermediate };
const char* verdict_name(ConstantsVerdict v);

struct ConstantMonomial {
    GroupElement gamma;
    RatFunc coeff;  // coeff * t^gamma is constant
};

struct ConstantsClassification {
    ConstantsVerdict verdict;
    FgSubgroup delta;   // {gamma : -c(gamma) in k^dagger}
    FgSubgroup kernel;  // ker(c)
    bool injective = false;
    DaggerMeet meet;
    std::vector<ConstantMonomial> witnesses;  // one per basis element of delta
};

ConstantsClassification classify_constants(const AdditiveMap& c);

}  // namespace hahn
