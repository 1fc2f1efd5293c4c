#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qstab/catalog.hpp"
#include "qstab/wallchamber.hpp"

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

std::vector<Rat> theta2(long long x, long long y) { return {Rat(x), Rat(y)}; }

} // namespace

TEST_CASE("stability spaces and cone membership on A_2") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    Cone d = stability_space(*U, U->class_by_name("P1"));
    CHECK(d.ambient == 2);
    CHECK(d.equality == DimVec{1, 1});
    REQUIRE(d.inequalities.size() == 1);
    CHECK(d.inequalities[0] == DimVec{0, 1});

    CHECK(cone_contains(d, theta2(1, -1)));
    CHECK(cone_contains(d, theta2(3, -3)));
    CHECK(cone_contains(d, theta2(0, 0)));
    CHECK_FALSE(cone_contains(d, theta2(-1, 1))); // wrong side of the subobject
    CHECK_FALSE(cone_contains(d, theta2(1, 1)));

    // Simples have no inequalities, their spaces are full lines.
    Cone s1 = stability_space(*U, U->class_by_name("S1"));
    CHECK(s1.inequalities.empty());
    CHECK(cone_contains(s1, theta2(0, 5)));
    CHECK(cone_contains(s1, theta2(0, -5)));
}

TEST_CASE("wall recognition") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});

    std::vector<Rat> witness;
    CHECK(is_wall(stability_space(*U, U->class_by_name("P1")), &witness));
    REQUIRE(witness.size() == 2);
    CHECK(witness[0] + witness[1] == Rat(0));
    CHECK(witness[1] < Rat(0));

    // The direct sum of the simples pins theta to a point, not a wall.
    CHECK_FALSE(is_wall(stability_space(*U, U->class_by_name("S1+S2"))));

    auto rays = wall_rays_rank2(stability_space(*U, U->class_by_name("S1")));
    REQUIRE(rays.size() == 2);
    std::set<std::pair<long long, long long>> rs(rays.begin(), rays.end());
    CHECK(rs == std::set<std::pair<long long, long long>>{{0, 1}, {0, -1}});
    auto pray = wall_rays_rank2(stability_space(*U, U->class_by_name("P1")));
    REQUIRE(pray.size() == 1);
    CHECK(pray[0] == std::pair<long long, long long>{1, -1});
}

TEST_CASE("wall enumeration groups classes with the same geometry") {
    auto A2 = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    auto walls = enumerate_walls(*A2);
    REQUIRE(walls.size() == 3);
    for (const auto& w : walls) CHECK(w.class_ids.size() == 1);

    auto K = ModuleUniverse::build(builtin_algebra("kronecker", 2), {1, 1});
    auto kw = enumerate_walls(*K);
    REQUIRE(kw.size() == 3);
    // Two simple lines plus one ray carrying all three regular points.
    std::vector<std::size_t> mults;
    for (const auto& w : kw) mults.push_back(w.class_ids.size());
    std::sort(mults.begin(), mults.end());
    CHECK(mults == std::vector<std::size_t>{1, 1, 3});
    for (const auto& w : kw)
        if (w.class_ids.size() == 3)
            for (int id : w.class_ids) CHECK(K->cls(id).dims == DimVec{1, 1});
}

TEST_CASE("chambers of the rank two fans") {
    auto A2 = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    auto ch = chambers_rank2(*A2);
    CHECK(ch.size() == 5);
    auto walls = enumerate_walls(*A2);
    for (const auto& c : ch) {
        REQUIRE(c.sample.size() == 2);
        for (const auto& w : walls) CHECK_FALSE(cone_contains(w.cone, c.sample));
    }

    CHECK(chambers_rank2(*ModuleUniverse::build(builtin_algebra("kronecker", 2), {1, 1}))
              .size() == 5);
}

TEST_CASE("the Kronecker fan at bound three") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {3, 3});
    auto walls = enumerate_walls(*U);
    CHECK(walls.size() == 7);
    std::set<std::pair<long long, long long>> rays;
    for (const auto& w : walls)
        for (const auto& r : wall_rays_rank2(w.cone)) rays.insert(r);
    std::set<std::pair<long long, long long>> expect{
        {0, 1}, {0, -1}, {1, 0}, {-1, 0}, {1, -1}, {2, -1}, {1, -2}, {3, -2}, {2, -3}};
    CHECK(rays == expect);
    CHECK(chambers_rank2(*U).size() == 9);
}

TEST_CASE("cone membership matches King semistability") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {2, 2});
    std::vector<Cone> cones;
    for (int id : U->indec_ids()) cones.push_back(stability_space(*U, id));

    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> coord(-3, 3);
    int tried = 0;
    while (tried < 40) {
        long long x = coord(rng), y = coord(rng);
        if (x == 0 && y == 0) continue;
        ++tried;
        std::vector<Rat> theta = theta2(x, y);
        for (std::size_t i = 0; i < cones.size(); ++i) {
            const Representation& M = U->cls(U->indec_ids()[i]).rep;
            bool in_cone = cone_contains(cones[i], theta);
            bool ss = king_semistable(theta, M) != KingVerdict::NotSemistable;
            CHECK(in_cone == ss);
        }
    }
}

TEST_CASE("wall witnesses land on King semistable points") {
    auto U = ModuleUniverse::build(builtin_algebra("kronecker", 2), {1, 1});
    for (const auto& w : enumerate_walls(*U)) {
        std::vector<Rat> witness;
        REQUIRE(is_wall(w.cone, &witness));
        for (int id : w.class_ids)
            CHECK(king_semistable(witness, U->cls(id).rep) != KingVerdict::NotSemistable);
    }
}

TEST_CASE("rank three walls work and rank four is refused") {
    auto A3 = ModuleUniverse::build(builtin_algebra("a3", 2), {1, 1, 1});
    std::vector<Rat> witness;
    CHECK(is_wall(stability_space(*A3, A3->class_by_name("P1")), &witness));
    REQUIRE(witness.size() == 3);
    CHECK(witness[0] + witness[1] + witness[2] == Rat(0));
    CHECK(is_wall(stability_space(*A3, A3->class_by_name("S2"))));
    CHECK_FALSE(is_wall(stability_space(*A3, A3->class_by_name("S1+S3"))));

    auto A4 = ModuleUniverse::build(builtin_algebra("a4:lrl", 2), {1, 1, 1, 1});
    CHECK_THROWS_AS(is_wall(stability_space(*A4, A4->class_by_name("S1"))),
                    RankUnsupported);
}

TEST_CASE("validating the staircase path") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    RedPath east = parse_red_path(slurp(fixture("a2-mgs3.path")));
    PathReport r = validate_red_path(*U, east);
    CHECK(r.valid);
    CHECK(r.violations.empty());
    REQUIRE(r.crossings.size() == 3);
    CHECK(r.crossings[0].t == Rat(1, 4));
    CHECK(r.crossings[0].class_ids == std::vector<int>{U->class_by_name("S2")});
    CHECK(r.crossings[1].t == Rat(1, 2));
    // P1 and the split class share the dimension vector, hence the time.
    CHECK(r.crossings[1].class_ids ==
          std::vector<int>{U->class_by_name("S1+S2"), U->class_by_name("P1")});
    CHECK(r.crossings[2].t == Rat(3, 4));
    CHECK(r.dgeneric);
    REQUIRE(r.dgeneric_notes.size() == 1);
    CHECK(r.dgeneric_notes[0] == "every crossing segment moves strictly across its wall");
}

TEST_CASE("an interval zero invalidates a path") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    RedPath p = parse_red_path(slurp(fixture("invalid-interval.path")));
    PathReport r = validate_red_path(*U, p);
    CHECK_FALSE(r.valid);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0] == "pairing with S1 vanishes on [1/4, 3/4]");
    CHECK_FALSE(r.dgeneric);
}

TEST_CASE("multiple sign changes invalidate a path") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    RedPath wiggle = parse_red_path("0 1 1\n1/3 -1 1\n2/3 1 -1\n1 -1 -1\n");
    PathReport r = validate_red_path(*U, wiggle);
    CHECK_FALSE(r.valid);
    bool mentioned = false;
    for (const auto& v : r.violations)
        if (v.find("S1") != std::string::npos && v.find("zeros") != std::string::npos)
            mentioned = true;
    CHECK(mentioned);
}

TEST_CASE("the diagonal is valid but fails genericity at the origin") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    RedPath diag = parse_red_path(slurp(fixture("n2-diagonal.path")));
    PathReport r = validate_red_path(*U, diag);
    CHECK(r.valid);
    REQUIRE(r.crossings.size() == 1);
    CHECK(r.crossings[0].t == Rat(1, 2));
    CHECK(r.crossings[0].class_ids.size() == 4);
    CHECK_FALSE(r.dgeneric);
    int shared = 0;
    for (const auto& n : r.dgeneric_notes)
        if (n.find("share a wall point but are not proportional") != std::string::npos)
            ++shared;
    // Five of the six class pairs at the origin are not proportional.
    CHECK(shared == 5);
}

TEST_CASE("Bridgeland torsion classes from a stability vector") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    ModuleSet t = bridgeland_torsion(*U, theta2(1, -1));
    std::vector<std::string> names;
    for (int id : t.ids) names.push_back(U->cls(id).name);
    CHECK(names == std::vector<std::string>{"S1", "P1"});

    CHECK(bridgeland_torsion(*U, theta2(1, 1)).ids.size() == 3);
    CHECK(bridgeland_torsion(*U, theta2(-1, -1)).ids.empty());
    CHECK_THROWS_AS(bridgeland_torsion(*U, {Rat(1)}), ValidationError);
}

TEST_CASE("path torsion classes agree with Bridgeland classes pointwise") {
    auto U = ModuleUniverse::build(builtin_algebra("a2", 2), {1, 1});
    RedPath east = parse_red_path(slurp(fixture("a2-mgs3.path")));
    StabilityFunction sf = StabilityFunction::path_induced(U, east);

    for (const Rat& t : {Rat(1, 8), Rat(1, 4), Rat(3, 8), Rat(1, 2), Rat(5, 8),
                         Rat(3, 4), Rat(7, 8)}) {
        std::string why;
        bool ok = verify_redtorsion(sf, *U, t, &why);
        CAPTURE(rat_to_string(t));
        CAPTURE(why);
        CHECK(ok);
    }

    // Spot value between the first two crossings.
    ModuleSet expected = bridgeland_torsion(*U, {Rat(1), Rat(-1, 2)});
    std::vector<std::string> names;
    for (int id : expected.ids) names.push_back(U->cls(id).name);
    CHECK(names == std::vector<std::string>{"S1", "P1"});
}
