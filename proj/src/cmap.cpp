#include "hahn/cmap.hpp"

#include "hahn/error.hpp"

#include <stdexcept>

namespace hahn {

namespace {

std::size_t generator_count_for(const ValueGroup& g) { return g.rank(); }

void require_finitely_generated(const ValueGroup& g, const char* what) {
    if (g.kind() == GroupKind::Rationals)
        fail(ErrorKind::Unsupported, std::string(what) + " needs a finitely generated value group, got Q");
}

}  // namespace

AdditiveMap::AdditiveMap(ValueGroup domain, CoeffField field, std::vector<RatFunc> images)
    : domain_(domain), field_(field), images_(std::move(images)) {
    if (images_.size() != generator_count_for(domain_))
        fail(ErrorKind::DomainMismatch, "c-map on " + domain_.to_string() + " needs " +
                                            std::to_string(generator_count_for(domain_)) + " generator images");
    for (const auto& im : images_)
        require_in_field(field_, im);
}

AdditiveMap AdditiveMap::zero(const ValueGroup& domain, CoeffField field) {
    return AdditiveMap(domain, field, std::vector<RatFunc>(generator_count_for(domain)));
}

GroupElement AdditiveMap::generator(std::size_t i) const {
    if (domain_.kind() == GroupKind::FracIntegers)
        return GroupElement(domain_, Rational(1, domain_.denominator()));
    return GroupElement::unit(domain_, i);
}

std::vector<Rational> AdditiveMap::coordinates(const GroupElement& gamma) const {
    require_same_group(domain_, gamma.group());
    if (domain_.kind() == GroupKind::FracIntegers)
        return {Rational(gamma.value() * domain_.denominator())};
    return gamma.coords();
}

RatFunc AdditiveMap::operator()(const GroupElement& gamma) const {
    auto z = coordinates(gamma);
    RatFunc sum;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] != 0 && !images_[i].is_zero())
            sum += RatFunc(z[i]) * images_[i];
    return sum;
}

GroupElement AdditiveMap::combine(const IntVector& z) const {
    GroupElement g(domain_);
    for (std::size_t i = 0; i < z.size(); ++i)
        g = g + z[i] * generator(i);
    return g;
}

bool AdditiveMap::is_zero() const {
    for (const auto& im : images_)
        if (!im.is_zero())
            return false;
    return true;
}

std::string AdditiveMap::to_string() const {
    if (is_zero())
        return "0";
    std::string s;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (i)
            s += ", ";
        std::string key = domain_.kind() == GroupKind::LexTuples && domain_.rank() > 1
                              ? "e" + std::to_string(i + 1)
                              : generator(i).to_string();
        s += key + " -> " + images_[i].to_string();
    }
    return s;
}

FgSubgroup c_kernel(const AdditiveMap& c) {
    require_finitely_generated(c.domain(), "c_kernel");
    const auto& images = c.images();
    // coefficient vectors over a common denominator
    Poly den(1);
    for (const auto& im : images)
        den = (den * im.den() / gcd(den, im.den())).monic();
    std::vector<Poly> nums;
    int width = 0;
    for (const auto& im : images) {
        nums.push_back(im.num() * (den / im.den()));
        width = std::max(width, nums.back().degree() + 1);
    }
    Integer scale = 1;
    for (const auto& n : nums)
        for (const auto& q : n.coeffs())
            scale = lcm(scale, q.get_den());
    IntMatrix m(images.size(), static_cast<std::size_t>(std::max(width, 1)));
    for (std::size_t i = 0; i < nums.size(); ++i)
        for (int j = 0; j <= nums[i].degree(); ++j)
            m(i, j) = Rational(nums[i].coeff(j) * scale).get_num();
    IntMatrix k = left_integer_kernel(m);
    std::vector<GroupElement> gens;
    for (std::size_t r = 0; r < k.rows(); ++r)
        gens.push_back(c.combine(k.row(r)));
    return FgSubgroup(c.domain(), std::move(gens));
}

namespace {

// Hermite basis (in generator coordinates) of {z : sign * c(z) in k^dagger}.
IntMatrix dagger_preimage(const AdditiveMap& c, int sign) {
    std::vector<RatFunc> gs;
    for (const auto& im : c.images())
        gs.push_back(sign < 0 ? -im : im);
    DaggerLattice lat = dagger_lattice(c.field(), RatFunc(), gs);
    if (!lat.solvable)
        throw std::logic_error("homogeneous dagger lattice must contain 0");
    return lat.lattice;
}

}  // namespace

DaggerMeet image_meets_dagger(const AdditiveMap& c) {
    require_finitely_generated(c.domain(), "image_meets_dagger");
    DaggerMeet out;
    if (c.field() == CoeffField::Rationals || c.is_zero())
        return out;
    IntMatrix basis = dagger_preimage(c, 1);
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        GroupElement g = c.combine(basis.row(r));
        RatFunc v = c(g);
        if (v.is_zero())
            continue;
        auto cert = log_derivative_membership(c.field(), v);
        if (!cert.member)
            throw std::logic_error("dagger lattice element failed membership");
        out.meets = true;
        out.gamma = g;
        out.f = cert.witness;
        return out;
    }
    return out;
}

const char* verdict_name(ConstantsVerdict v) {
    switch (v) {
    case ConstantsVerdict::FewConstants: return "FewConstants";
    case ConstantsVerdict::ManyConstants: return "ManyConstants";
    case ConstantsVerdict::Intermediate: return "Intermediate";
    }
    return "?";
}

ConstantsClassification classify_constants(const AdditiveMap& c) {
    require_finitely_generated(c.domain(), "classify_constants");
    IntMatrix basis = dagger_preimage(c, -1);
    std::vector<GroupElement> gens;
    for (std::size_t r = 0; r < basis.rows(); ++r)
        gens.push_back(c.combine(basis.row(r)));
    FgSubgroup delta(c.domain(), gens);

    // rank one: independent route through the saturation index
    if (c.domain().discrete_rank_one()) {
        auto n = dagger_saturation(c.field(), -c.images()[0]);
        FgSubgroup dual = n ? FgSubgroup(c.domain(), {*n * c.generator(0)}) : FgSubgroup::trivial(c.domain());
        if (!dual.same_as(delta))
            throw std::logic_error("constant-valuation group: lattice and saturation routes disagree");
    }

    FgSubgroup kernel = c_kernel(c);
    ConstantsClassification out{ConstantsVerdict::Intermediate, delta, kernel, kernel.is_trivial(),
                                image_meets_dagger(c), {}};
    if (delta.is_trivial())
        out.verdict = ConstantsVerdict::FewConstants;
    else if (delta.is_whole())
        out.verdict = ConstantsVerdict::ManyConstants;

    for (const auto& g : delta.basis()) {
        auto cert = log_derivative_membership(c.field(), -c(g));
        if (!cert.member)
            throw std::logic_error("constant-valuation generator failed membership");
        out.witnesses.push_back({g, cert.witness});
    }

    // structural facts that must hold for every instance
    if (!kernel.subset_of(delta))
        throw std::logic_error("ker(c) is not contained in the constant-valuation group");
    if ((!out.meet.meets) != kernel.same_as(delta))
        throw std::logic_error("image-meets-dagger does not match ker(c) = delta");
    bool few = out.verdict == ConstantsVerdict::FewConstants;
    if ((out.injective && !out.meet.meets) != few)
        throw std::logic_error("few-constants biconditional violated");
    return out;
}

}  // namespace hahn
