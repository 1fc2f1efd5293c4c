#include "doctest.h"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qstab/catalog.hpp"
#include "qstab/stability.hpp"

using namespace qstab;

namespace {

std::string fixture(const char* name) {
    return std::string(QSTAB_SOURCE_DIR) + "/fixtures/" + name;
}

std::string slurp(const std::string& file) {
    std::ifstream in(file);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("phase values order lexicographically with the tag second") {
    PhaseValue inf = PhaseValue::infinity();
    PhaseValue two = PhaseValue::finite(Rat(2));
    PhaseValue one = PhaseValue::finite(Rat(1));
    PhaseValue one_low = PhaseValue::finite(Rat(1), -1);
    PhaseValue half = PhaseValue::finite(Rat(1, 2));
    CHECK(half < one_low);
    CHECK(one_low < one);
    CHECK(one < two);
    CHECK(two < inf);
    CHECK(inf < PhaseValue::infinity(1));
    CHECK(one == PhaseValue::finite(Rat(2, 2)));
    CHECK(one != one_low);

    CHECK(phase_to_string(one_low) == "1*-1");
    CHECK(phase_to_string(inf) == "inf");
    CHECK(phase_to_string(PhaseValue::finite(Rat(3, 4))) == "3/4");
    for (const char* s : {"1*-1", "inf", "3/4", "inf*1", "-2/5*3"}) {
        PhaseValue p = parse_phase(s);
        CHECK(phase_to_string(p) == s);
    }
    CHECK_THROWS_AS(parse_phase("1*"), ParseError);
    CHECK_THROWS_AS(parse_phase("1*x"), ParseError);
    CHECK_THROWS_AS(parse_phase("zz"), ParseError);
}

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(StabilityFunction::linear_charge({Rat(1)}, {Rat(1), Rat(1)}),
                    ValidationError);
    CHECK_THROWS_AS(StabilityFunction::linear_charge({Rat(1)}, {Rat(0)}), ValidationError);
    CHECK_THROWS_AS(StabilityFunction::slope({Rat(0), Rat(1)}, {Rat(0), Rat(1)}),
                    ValidationError);
    CHECK_THROWS_AS(StabilityFunction::slope({Rat(1)}, {Rat(-1)}), ValidationError);
    CHECK_NOTHROW(StabilityFunction::slope({Rat(1), Rat(0)}, {Rat(0), Rat(1)}));
}

TEST_CASE("slope phases of the Kronecker families") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {2, 2});
    StabilityFunction sf = kronecker_slope();
    auto at = [&](const char* name) {
        return sf.phase_of_class(*U, U->class_by_name(name));
    };
    CHECK(at("S1") == PhaseValue::infinity());
    CHECK(at("S2") == PhaseValue::finite(Rat(0)));
    CHECK(at("P1") == PhaseValue::finite(Rat(1, 2)));
    CHECK(at("I1") == PhaseValue::finite(Rat(2)));
    CHECK(at("R[0]1") == PhaseValue::finite(Rat(1)));
    CHECK(at("R[x2+x+1]1") == PhaseValue::finite(Rat(1)));
    CHECK(at("R[0]2") == PhaseValue::finite(Rat(1)));

    // The zero module has no phase.
    CHECK_THROWS_AS(sf.phase(Representation::zero(U->algebra_ptr())), ZeroObject);
}

TEST_CASE("linear charge orders like the central charge angle") {
    std::vector<Rat> a{Rat(3), Rat(-1), Rat(2)};
    std::vector<Rat> b{Rat(1), Rat(2), Rat(1)};
    StabilityFunction sf = StabilityFunction::linear_charge(a, b);

    std::mt19937 rng(0);
    std::uniform_int_distribution<int> entry(0, 5);
    auto angle = [&](const DimVec& m) {
        double A = 0, B = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            A += boost::rational_cast<double>(a[i]) * m[i];
            B += boost::rational_cast<double>(b[i]) * m[i];
        }
        return std::atan2(B, -A); // in (0, pi) since B > 0
    };
    std::vector<DimVec> samples;
    while (samples.size() < 100) {
        DimVec m{entry(rng), entry(rng), entry(rng)};
        if (total_of(m) == 0) continue;
        samples.push_back(m);
    }
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            int exact = phase_cmp(sf.phase_of_dims(samples[i]), sf.phase_of_dims(samples[j]));
            double da = angle(samples[i]) - angle(samples[j]);
            int approx = da < -1e-12 ? -1 : (da > 1e-12 ? 1 : 0);
            CHECK(exact == approx);
        }
}

TEST_CASE("king verdicts on A_2") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    auto rep = [&](const char* name) { return U->cls(U->class_by_name(name)).rep; };

    std::vector<Rat> theta{Rat(1), Rat(-1)};
    CHECK(king_semistable(theta, rep("P1")) == KingVerdict::Stable);
    CHECK(king_semistable(theta, rep("S1")) == KingVerdict::NotSemistable);
    CHECK(king_semistable(theta, rep("S2")) == KingVerdict::NotSemistable);
    CHECK(king_semistable(theta, rep("S1+S2")) == KingVerdict::NotSemistable);

    // theta = 0 pairs to zero with everything: simples are stable for
    // lack of proper subobjects, anything else is merely semistable.
    std::vector<Rat> zero{Rat(0), Rat(0)};
    CHECK(king_semistable(zero, rep("S1")) == KingVerdict::Stable);
    CHECK(king_semistable(zero, rep("P1")) == KingVerdict::Semistable);
    CHECK(king_semistable(zero, rep("S1+S2")) == KingVerdict::Semistable);

    CHECK_THROWS_AS(king_semistable({Rat(1)}, rep("P1")), ValidationError);
    CHECK_THROWS_AS(king_semistable(zero, Representation::zero(U->algebra_ptr())),
                    ZeroObject);
}

TEST_CASE("extremal destabilizers with the factoring property") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    StabilityFunction sf =
        StabilityFunction::slope({Rat(1), Rat(0)}, {Rat(1), Rat(1)});
    Representation m = U->cls(U->class_by_name("S1+S2")).rep;

    Destabilizer mds = extremal_destabilizer(sf, m, Direction::Subobject);
    CHECK(mds.object.dims() == DimVec{1, 0});
    CHECK(mds.phase == PhaseValue::finite(Rat(1)));
    CHECK_NOTHROW(validate_morphism(mds.witness));

    Destabilizer mdq = extremal_destabilizer(sf, m, Direction::Quotient);
    CHECK(mdq.object.dims() == DimVec{0, 1});
    CHECK(mdq.phase == PhaseValue::finite(Rat(0)));
    CHECK_NOTHROW(validate_morphism(mdq.witness));

    // On a semistable module both extremes return the module itself.
    Representation p1 = U->cls(U->class_by_name("P1")).rep;
    CHECK(extremal_destabilizer(sf, p1, Direction::Subobject).object.dims() == p1.dims());
    CHECK(extremal_destabilizer(sf, p1, Direction::Quotient).phase ==
          PhaseValue::finite(Rat(1, 2)));
}

TEST_CASE("Harder-Narasimhan filtrations on the Kronecker window") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {2, 2});
    StabilityFunction sf = kronecker_slope();

    Representation m = U->cls(U->class_by_name("S1+P1")).rep;
    HNFiltration hn = hn_filtration(sf, m);
    REQUIRE(hn.factors.size() == 2);
    CHECK(hn.phases[0] == PhaseValue::infinity());
    CHECK(hn.phases[1] == PhaseValue::finite(Rat(1, 2)));
    CHECK(hn.factors[0].dims() == DimVec{1, 0});
    CHECK(hn.factors[1].dims() == DimVec{1, 2});
    CHECK(hn.steps[0].sub_dims() == DimVec{1, 0});
    CHECK(hn.steps[1].sub_dims() == DimVec{2, 2});

    // Factors are semistable and the dual peel gives the same multiset.
    for (std::size_t i = 0; i < hn.factors.size(); ++i)
        CHECK(is_semistable(sf, hn.factors[i]));
    auto dual = hn_factors_by_quotients(sf, m);
    REQUIRE(dual.size() == 2);
    std::multiset<int> a, b;
    for (const auto& f : hn.factors) a.insert(U->classify(f));
    for (const auto& [f, p] : dual) b.insert(U->classify(f));
    CHECK(a == b);

    // A semistable module is its own filtration.
    HNFiltration flat = hn_filtration(sf, U->cls(U->class_by_name("R[0]1+R[1]1")).rep);
    CHECK(flat.factors.size() == 1);
    CHECK(flat.phases[0] == PhaseValue::finite(Rat(1)));
}

TEST_CASE("stable factors of a semistable module") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {2, 2});
    StabilityFunction sf = kronecker_slope();
    Representation m = U->cls(U->class_by_name("R[0]1+R[0]1")).rep;
    auto factors = stable_factors(sf, m);
    REQUIRE(factors.size() == 2);
    int r0 = U->classify(U->cls(U->class_by_name("R[0]1")).rep);
    CHECK(U->classify(factors[0]) == r0);
    CHECK(U->classify(factors[1]) == r0);

    // R[0]2 is semistable but not stable; its stable factors are two
    // copies of R[0]1.
    auto f2 = stable_factors(sf, U->cls(U->class_by_name("R[0]2")).rep);
    REQUIRE(f2.size() == 2);
    CHECK(U->classify(f2[0]) == r0);
    CHECK(U->classify(f2[1]) == r0);

    CHECK_THROWS_AS(stable_factors(sf, U->cls(U->class_by_name("S1+S2")).rep),
                    NotSemistable);
}

TEST_CASE("slices and attained phases") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {2, 2});
    StabilityFunction sf = kronecker_slope();

    auto slice = wide_slice(sf, *U, PhaseValue::finite(Rat(1)));
    // All thirteen classes with pure regular summands and nothing else.
    CHECK(slice.size() == 13);
    for (int id : slice) {
        CHECK(U->cls(id).dims[0] == U->cls(id).dims[1]);
        CHECK(class_semistable(sf, *U, id));
    }
    auto stables = stable_slice(sf, *U, PhaseValue::finite(Rat(1)));
    std::vector<std::string> names;
    for (int id : stables) names.push_back(U->cls(id).name);
    CHECK(names == std::vector<std::string>{"R[0]1", "R[1]1", "R[inf]1", "R[x2+x+1]1"});

    auto phases = attained_phases(sf, *U);
    REQUIRE(phases.size() == 5);
    CHECK(phases[0] == PhaseValue::infinity());
    CHECK(phases[1] == PhaseValue::finite(Rat(2)));
    CHECK(phases[2] == PhaseValue::finite(Rat(1)));
    CHECK(phases[3] == PhaseValue::finite(Rat(1, 2)));
    CHECK(phases[4] == PhaseValue::finite(Rat(0)));
}

TEST_CASE("table functions enforce the see-saw property") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    int s1 = U->class_by_name("S1"), s2 = U->class_by_name("S2"),
        p1 = U->class_by_name("P1"), both = U->class_by_name("S1+S2");

    std::map<int, PhaseValue> bad{{s1, PhaseValue::finite(Rat(0))},
                                  {s2, PhaseValue::finite(Rat(1, 2))},
                                  {p1, PhaseValue::finite(Rat(1))},
                                  {both, PhaseValue::finite(Rat(1, 4))}};
    CHECK_THROWS_AS(StabilityFunction::table(U, bad), SeesawViolation);

    std::map<int, PhaseValue> good{{s1, PhaseValue::finite(Rat(1))},
                                   {s2, PhaseValue::finite(Rat(0))},
                                   {p1, PhaseValue::finite(Rat(1, 2))},
                                   {both, PhaseValue::finite(Rat(1, 2))}};
    StabilityFunction sf = StabilityFunction::table(U, good);
    CHECK(sf.skipped_seesaw() == 0);
    CHECK(sf.phase_of_class(*U, p1) == PhaseValue::finite(Rat(1, 2)));
    CHECK_FALSE(class_semistable(sf, *U, both));
    CHECK(class_stable(sf, *U, p1));

    // Partial tables skip unlisted sequences and refuse unlisted phases.
    std::map<int, PhaseValue> partial{{s1, PhaseValue::finite(Rat(1))}};
    StabilityFunction part = StabilityFunction::table(U, partial);
    CHECK(part.skipped_seesaw() > 0);
    CHECK_THROWS_AS(part.phase_of_class(*U, s2), OutOfUniverse);
}

TEST_CASE("path induced phases match the crossing times") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    RedPath east = parse_red_path(slurp(fixture("a2-mgs3.path")));
    StabilityFunction sf = StabilityFunction::path_induced(U, east);
    CHECK(sf.phase_of_class(*U, U->class_by_name("S2")) == PhaseValue::finite(Rat(1, 4)));
    CHECK(sf.phase_of_class(*U, U->class_by_name("P1")) == PhaseValue::finite(Rat(1, 2)));
    CHECK(sf.phase_of_class(*U, U->class_by_name("S1")) == PhaseValue::finite(Rat(3, 4)));

    RedPath broken = parse_red_path(slurp(fixture("invalid-interval.path")));
    CHECK_THROWS_AS(StabilityFunction::path_induced(U, broken), InvalidPath);
}

TEST_CASE("see-saw trichotomy holds for slope functions on every sequence") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {2, 2});
    StabilityFunction sf = kronecker_slope();
    int checked = 0;
    for (const auto& s : U->ses_table()) {
        PhaseValue l = sf.phase_of_class(*U, s.sub);
        PhaseValue m = sf.phase_of_class(*U, s.mid);
        PhaseValue q = sf.phase_of_class(*U, s.quot);
        bool up = l < m && m < q;
        bool down = q < m && m < l;
        bool flat = l == m && m == q;
        CHECK((up || down || flat));
        ++checked;
    }
    CHECK(checked > 100);
}
