#include "doctest.h"

#include <map>
#include <set>
#include <stdexcept>

#include "lamina/traintrack.hpp"

using namespace lamina;

TEST_CASE("buildT weights and switch conditions") {
    WeightedTrack wt = buildT(8);
    CHECK(wt.weights.of(wt.track.branchId("e2")) == Rational(2, 3));
    CHECK(wt.weights.of(wt.track.branchId("d3")) == Rational(1, 16));
    CHECK(wt.weights.of(wt.track.branchId("b-1")) == Rational(1));
    CHECK(wt.weights.of(wt.track.branchId("c5")) == Rational(1, 32));
    CHECK(checkSwitchConditions(wt.track, wt.weights).empty());
}

TEST_CASE("buildT rejects shallow depth") {
    CHECK_THROWS_AS(buildT(1), std::domain_error);
}

TEST_CASE("perturbing one weight breaks exactly the incident switches") {
    WeightedTrack wt = buildT(16);
    wt.weights.w[wt.track.branchId("c2")] = Rational(1, 3);
    auto viol = checkSwitchConditions(wt.track, wt.weights);
    REQUIRE(viol.size() == 2);
    std::set<std::string> names{viol[0].switchName, viol[1].switchName};
    CHECK(names == std::set<std::string>{"s2", "t2"});
}

TEST_CASE("buildT truncations agree") {
    WeightedTrack a = buildT(6), b = buildT(13);
    for (const Branch& br : a.track.branches) {
        BranchId other = b.track.branchId(br.name);
        CHECK(a.weights.of(a.track.branchId(br.name)) == b.weights.of(other));
        // endpoints carry the same switch names
        CHECK(a.track.switches[br.from].name == b.track.switches[b.track.branches[other].from].name);
        CHECK(a.track.switches[br.to].name == b.track.switches[b.track.branches[other].to].name);
    }
}

TEST_CASE("per-switch lists are duplicate-free per end") {
    for (auto wt : {buildT(12), buildTStar(12), buildT1(6)}) {
        wt.track.validate();
        for (const Switch& s : wt.track.switches) {
            std::set<std::pair<BranchId, int>> seen;
            for (const auto* lst : {&s.in, &s.out})
                for (const EndRef& er : *lst)
                    CHECK(seen.insert({er.branch, (int)er.end}).second);
        }
    }
}

TEST_CASE("buildTStar weights") {
    WeightedTrack wt = buildTStar(8);
    CHECK(wt.weights.of(wt.track.branchId("f1*")) == Rational(3, 4));
    CHECK(wt.weights.of(wt.track.branchId("f4*")) == Rational(1, 16));
    CHECK(wt.weights.of(wt.track.branchId("h2*")) == Rational(1, 8));
    CHECK(wt.weights.of(wt.track.branchId("f0*")) == Rational(1));
    CHECK(wt.weights.of(wt.track.branchId("f-3*")) == Rational(1, 8));
    CHECK(wt.weights.of(wt.track.branchId("f5*")) == Rational(3, 64));
    // the listed values close the system
    CHECK(checkSwitchConditions(wt.track, wt.weights).empty());
}

TEST_CASE("buildT1 solves the remaining weights from switch conditions") {
    WeightedTrack wt = buildT1(6);
    CHECK(wt.weights.of(wt.track.branchId("d0")) == Rational(1, 8));   // first trivalent loop
    CHECK(wt.weights.of(wt.track.branchId("q1")) == Rational(1, 4));   // first quadrivalent loop
    CHECK(wt.weights.of(wt.track.branchId("b0")) == Rational(1));
    CHECK(wt.weights.of(wt.track.branchId("b2")) == Rational(1, 4));
    CHECK(wt.weights.of(wt.track.branchId("c0")) == Rational(1, 4));
    CHECK(wt.weights.of(wt.track.branchId("d-1")) == Rational(1, 2));
    CHECK(checkSwitchConditions(wt.track, wt.weights).empty());
}

TEST_CASE("cyclic covers") {
    WeightedTrack base = buildT1(4);

    SUBCASE("degree one is the identity") {
        WeightedTrack c1 = cyclicCover(base, 1);
        CHECK(c1.track.branches.size() == base.track.branches.size());
        CHECK(c1.track.branchByName == base.track.branchByName);
    }

    SUBCASE("degree two doubles every branch off the cycle") {
        WeightedTrack c2 = cyclicCover(base, 2);
        CHECK(checkSwitchConditions(c2.track, c2.weights).empty());
        std::map<std::string, int> preimages;
        for (const Branch& b : c2.track.branches) ++preimages[coverProjection(b.name)];
        for (const Branch& b : base.track.branches) CHECK(preimages[b.name] == 2);
        // weights pull back
        for (const Branch& b : c2.track.branches) {
            Rational wBase = base.weights.of(base.track.branchId(coverProjection(b.name)));
            CHECK(c2.weights.of(c2.track.branchId(b.name)) == wBase);
        }
    }

    SUBCASE("degree three pullback satisfies all switch conditions") {
        WeightedTrack c3 = cyclicCover(base, 3);
        CHECK(checkSwitchConditions(c3.track, c3.weights).empty());
        // the designated cycle has a single lift: its branches form one 2n-cycle
        int cycleBranches = 0;
        for (const Branch& b : c3.track.branches) {
            std::string base_name = coverProjection(b.name);
            if (base_name == "e1" || base_name == "e2") ++cycleBranches;
        }
        CHECK(cycleBranches == 6);
    }

    SUBCASE("missing designated cycle is an error") {
        WeightedTrack t = buildT(4);
        CHECK_THROWS_AS(cyclicCover(t, 2), std::domain_error);
    }
}

TEST_CASE("train path recognition") {
    WeightedTrack wt = buildT(8);
    CHECK(isTrainPath(wt.track, std::vector<std::string>{"b0", "b1"}));
    CHECK_FALSE(isTrainPath(wt.track, std::vector<std::string>{"e1", "e1"}));
    CHECK(isTrainPath(wt.track, std::vector<std::string>{"b2"}));
    CHECK_FALSE(isTrainPath(wt.track, std::vector<std::string>{"b1", "c1"}));  // cusp between them
    CHECK(isTrainPath(wt.track, std::vector<std::string>{"c1", "b0"}));
    CHECK(isTrainPath(wt.track, std::vector<std::string>{"c1", "d1", "c1"}));  // around the monogon
    CHECK_FALSE(isTrainPath(wt.track, std::vector<std::string>{"b1", "b1"}));
    CHECK(isTrainPath(wt.track, std::vector<std::string>{"b0", "e2", "b-1", "d0", "b-1", "e2", "b0"}));
    CHECK_THROWS_AS(isTrainPath(wt.track, std::vector<std::string>{"zz"}), std::domain_error);
}

TEST_CASE("zeta images are train paths on the collapsed track") {
    WeightedTrack ts = buildTStar(10);
    CHECK(isTrainPath(ts.track, std::vector<std::string>{"f1*", "h1*", "f1*", "f0*", "f-1*"}));
    CHECK(isTrainPath(ts.track, std::vector<std::string>{"h2*", "f-1*", "f0*", "f1*", "f2*"}));
    CHECK(isTrainPath(ts.track, std::vector<std::string>{"f-2*", "c3*"}));
    std::vector<std::string> t0;
    for (int i = -6; i <= 6; ++i) t0.push_back("f" + std::to_string(i) + "*");
    CHECK(isTrainPath(ts.track, t0));
}

TEST_CASE("track json round trip fields") {
    WeightedTrack wt = buildT(4);
    std::string js = trackToJson(wt);
    CHECK(js.find("\"weights\"") != std::string::npos);
    CHECK(js.find("\"frontier\"") != std::string::npos);
    CHECK(js.find("3/16") == std::string::npos);  // d2 = 1/8, not 3/16
    CHECK(js.find("\"e1\"") != std::string::npos);
}

TEST_CASE("pants piece enumeration") {
    WeightedTrack T = buildT(8);
    auto u = enumeratePathsThroughPiece(T, PantsPiece::U);
    CHECK(u.size() == 3);
    int uCross = 0;
    for (auto& p : u) {
        // no path is homotopic into the piece boundary: each traverses an
        // interior branch
        bool interior = false;
        for (auto& b : p.branches) interior = interior || b == "c2";
        bool shortPass = p.branches.size() == 2;
        CHECK((interior || shortPass));
        uCross += !p.selfReturning();
    }
    CHECK(uCross == 3);

    auto v = enumeratePathsThroughPiece(T, PantsPiece::V);
    // every path crosses the interior (traverses b0 or the monogon)
    for (auto& p : v) {
        bool interior = false;
        for (auto& b : p.branches) interior = interior || b == "b0" || b == "d0" || b == "c1";
        CHECK(interior);
    }
    int self = 0;
    for (auto& p : v) self += p.selfReturning();
    CHECK(v.size() == 21);
    CHECK(self == 13);
}
