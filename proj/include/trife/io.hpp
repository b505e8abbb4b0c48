#ifndef TRIFE_IO_HPP
#define TRIFE_IO_HPP

#include <string>

#include <json.hpp>

#include "trife/chain.hpp"
#include "trife/families.hpp"
#include "trife/lax.hpp"
#include "trife/limits.hpp"
#include "trife/three_body.hpp"
#include "trife/verification.hpp"

namespace trife
{

using Json = nlohmann::ordered_json;

/// Thrown for malformed or incomplete JSON documents.
class ConfigError : public Error
{
public:
    using Error::Error;
};

/// Shortest-round-trip-safe text for a double ("%.17g"); "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double v);

Json to_json(Complex z);
/// Accepts {"re": .., "im": ..}, a bare number, or a two-element array.
Complex complex_from_json(const Json &j);

Json to_json(const WeierstrassParams &w);
WeierstrassParams weier_from_json(const Json &j);

Json to_json(const SampleSpec &s);
/// Missing keys keep the values of `base`.
SampleSpec sample_spec_from_json(const Json &j, SampleSpec base = {});

Json to_json(const ResidualReport &r);
Json to_json(const MixingScan &m);
Json to_json(const LimitLadder &l);
Json to_json(const SpectrumReport &s);

/// A family description: {"type": "elliptic" | "entire" | ..., parameters...}.
struct FamilySpec {
    Family family = Family::elliptic;
    bool literal = false;
    EllipticTriadParams elliptic;
    EntireFamilyParams entire;
    PolynomialFamilyParams polynomial;
    DegenerateParams degenerate;
    Complex id_alpha{1.0};
    Complex id_beta{};
    WeierstrassParams id_weier{};

    SolutionTriple build() const;
    /// Lattice invariants when the family has one (elliptic, identical).
    std::optional<WeierstrassParams> weier() const;
};

FamilySpec family_from_json(const Json &j);
Json to_json(const FamilySpec &f);

/// Chain description: c0..c3, b3, and for triads alpha1, s1, t1.
struct ChainSpec {
    ChainConstants constants;
    Complex alpha1{0.3, 0.2};
    Complex s1{1.0};
    Complex t1{};
};

ChainSpec chain_from_json(const Json &j);
Json to_json(const ChainSpec &c);

/// Lax experiment description.
struct LaxSpec {
    std::string preset = "rational";
    Complex gamma{0.0, 1.0};
    Complex nu{0.3, 0.2};
    WeierstrassParams weier{Complex{1.0}, Complex{0.5}};
    std::array<Complex, 3> lambda{};
    std::uint64_t seed = 0;
    ThreeBodyState state{{-2.0, 0.0, 2.5}, {0.3, -0.1, -0.2}, 0.0};
    double dt = 1e-3;
    double T = 10.0;
    double exclusion = 0.05;

    PairEntrySet build() const;
};

LaxSpec lax_from_json(const Json &j);
Json to_json(const LaxSpec &l);

} // namespace trife

#endif
