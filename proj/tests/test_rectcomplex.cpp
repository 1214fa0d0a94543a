#include "doctest.h"

#include <algorithm>
#include <random>

#include "lamina/rectcomplex.hpp"

using namespace lamina;

namespace {
std::vector<std::string> branchNames(const RectComplex& g, const LeafItinerary& it) {
    std::vector<std::string> out;
    for (const LeafStep& s : it.steps) out.push_back(g.track().branches[s.branch].name);
    return out;
}
}  // namespace

TEST_CASE("complex construction and singularities") {
    RectComplex g = buildComplex(buildT(10));
    CHECK(g.height(g.track().branchId("d2")) == Rational(1, 8));
    auto p0 = g.singularityByName("P0");
    REQUIRE(p0);
    CHECK(p0->prongs == 3);
    auto q1 = g.singularityByName("Q1");
    REQUIRE(q1);
    CHECK(q1->prongs == 3);
    CHECK(g.singularityByName("VA"));
    CHECK(g.singularityByName("VB"));

    SUBCASE("a lone branch between frontier switches has no singularities") {
        WeightedTrack wt;
        SwitchId a = wt.track.addSwitch("L", true);
        SwitchId b = wt.track.addSwitch("R", true);
        BranchId x = wt.track.addBranch("x");
        wt.track.attach(a, false, x, BranchEnd::Start);
        wt.track.attach(b, true, x, BranchEnd::End);
        wt.weights.w = {Rational(1)};
        RectComplex lone = buildComplex(wt);
        CHECK(lone.singularities().empty());
    }

    SUBCASE("switch violation rejected") {
        WeightedTrack bad = buildT(5);
        bad.weights.w[bad.track.branchId("c2")] = Rational(1, 3);
        CHECK_THROWS_AS(buildComplex(bad), std::domain_error);
    }
}

TEST_CASE("separatrix tracing finds the named connections") {
    RectComplex g = buildComplex(buildT(12));

    SUBCASE("P0 connects to Q0") {
        auto p0 = *g.singularityByName("P0");
        bool found = false;
        for (const TraceState& pr : g.prongs(p0)) {
            auto it = g.trace(pr, 4096, LeafSide::Left, true);
            if (it.terminal == TerminalEvent::SingularityHit && it.singularity == "Q0") {
                found = true;
                CHECK(branchNames(g, it) == std::vector<std::string>{"b-1", "e2", "b0"});
            }
        }
        CHECK(found);
    }

    SUBCASE("Q1 connects to Q0") {
        auto q1 = *g.singularityByName("Q1");
        bool found = false;
        for (const TraceState& pr : g.prongs(q1)) {
            auto it = g.trace(pr, 4096, LeafSide::Left, true);
            if (it.terminal == TerminalEvent::SingularityHit && it.singularity == "Q0") found = true;
        }
        CHECK(found);
    }

    SUBCASE("tracing is reversible") {
        std::mt19937 rng(9);
        for (int t = 0; t < 40; ++t) {
            BranchId b = (BranchId)(rng() % g.track().branches.size());
            Rational h = g.height(b) * Rational(1 + (long)(rng() % 61), 64);
            if (h == Rational(0) || h == g.height(b)) continue;
            TraceState st{b, {h, 0}, Dir::ToEnd};
            auto fwd = g.trace(st, 6, LeafSide::Left, true);
            if (fwd.terminal != TerminalEvent::StepBudgetExhausted) continue;
            // run forward 6 steps, then reverse and return
            TraceState cur = st;
            for (int i = 0; i < 6; ++i) {
                auto r = g.step(cur, LeafSide::Left, true);
                REQUIRE(r.next);
                cur = *r.next;
            }
            TraceState back{cur.branch, cur.h, cur.dir == Dir::ToEnd ? Dir::ToStart : Dir::ToEnd};
            for (int i = 0; i < 6; ++i) {
                auto r = g.step(back, LeafSide::Right, true);
                REQUIRE(r.next);
                back = *r.next;
            }
            CHECK(back.branch == st.branch);
            CHECK(back.h == st.h);
        }
    }
}

TEST_CASE("saddle connection census on the main track") {
    RectComplex g = buildComplex(buildT(14));
    auto census = g.saddleConnectionCensus();
    auto has = [&](const std::string& a, const std::string& b) {
        for (const SaddleConnection& sc : census)
            if ((sc.from == a && sc.to == b) || (sc.from == b && sc.to == a)) return true;
        return false;
    };
    for (int n = 0; n <= 10; ++n) {
        INFO("level ", n);
        CHECK(has("P" + std::to_string(n), "Q" + std::to_string(n)));
        CHECK(has("P" + std::to_string(n), "P" + std::to_string(n)));
    }
    CHECK(has("Q1", "Q0"));
    for (int n = 2; n <= 10; ++n) {
        INFO("level ", n);
        CHECK(has("Q" + std::to_string(n), "Q" + std::to_string(n - 2)));
    }
}

TEST_CASE("first return to a cross-section is a bijection off singular heights") {
    RectComplex g = buildComplex(buildT(10));
    BranchId b0 = g.track().branchId("b0");
    std::mt19937 rng(13);
    int done = 0;
    while (done < 100) {
        long num = 1 + (long)(rng() % 1022);
        Rational h(num, 1024);
        TraceState st{b0, {h, 0}, Dir::ToEnd};
        // flow until we re-enter b0
        TraceState cur = st;
        bool bad = false;
        for (int i = 0; i < 4096; ++i) {
            auto r = g.step(cur, LeafSide::Left, true);
            if (!r.next) { bad = true; break; }
            cur = *r.next;
            if (cur.branch == b0 && cur.dir == Dir::ToEnd) break;
        }
        if (bad) continue;
        REQUIRE(cur.branch == b0);
        // reverse from the return point comes back to the start
        TraceState back{cur.branch, cur.h, Dir::ToStart};
        for (int i = 0; i < 4096; ++i) {
            auto r = g.step(back, LeafSide::Right, true);
            REQUIRE(r.next);
            back = *r.next;
            if (back.branch == b0 && back.dir == Dir::ToStart) break;
        }
        CHECK(back.h == st.h);
        ++done;
    }
}

TEST_CASE("itineraries are train paths") {
    RectComplex g = buildComplex(buildT(10));
    std::mt19937 rng(29);
    for (int t = 0; t < 25; ++t) {
        BranchId b = (BranchId)(rng() % g.track().branches.size());
        long num = 1 + (long)(rng() % 126);
        Rational h = g.height(b) * Rational(num, 128);
        auto it = g.trace({b, {h, 0}, Dir::ToEnd}, 40, LeafSide::Left, false);
        auto names = branchNames(g, it);
        if (names.size() > 1) CHECK(isTrainPath(g.track(), names));
    }
}

TEST_CASE("boundary path census of the main complex") {
    RectComplex g = buildComplex(buildT(16));
    auto paths32 = g.boundaryPaths(32);
    auto paths64 = g.boundaryPaths(64);
    CHECK(paths32.size() == 3);
    CHECK(paths64.size() == 3);

    // the singular chain of l0 through the levels visible at this depth
    bool foundChain = false;
    std::vector<std::string> expected = {"Q1", "P1", "P1", "Q1", "Q0", "P0", "P0", "Q0", "Q2"};
    for (const BoundaryPath& bp : paths64) {
        for (int orient = 0; orient < 2; ++orient) {
            std::vector<std::string> chain = bp.singularityChain;
            if (orient) std::reverse(chain.begin(), chain.end());
            for (size_t i = 0; i + expected.size() <= chain.size(); ++i) {
                bool ok = true;
                for (size_t k = 0; k < expected.size(); ++k) ok = ok && chain[i + k] == expected[k];
                if (ok) foundChain = true;
            }
        }
    }
    CHECK(foundChain);
}

TEST_CASE("boundary census of the collapsed track") {
    RectComplex g = buildComplex(buildTStar(16));
    CHECK(g.boundaryPaths(32).size() == 3);
    CHECK(g.boundaryPaths(64).size() == 3);
}

TEST_CASE("accumulation surrogate") {
    std::vector<std::string> big = {"a", "b", "c", "a", "b", "a", "c", "b", "a", "b", "c"};
    CHECK(RectComplex::accumulates(big, big, 4));
    CHECK(RectComplex::accumulates(big, {"a", "b", "c"}, 3));
    CHECK_FALSE(RectComplex::accumulates({"a", "a", "a"}, {"a", "b"}, 2));
}

TEST_CASE("unzip with no connections is the identity surgery") {
    RectComplex g = buildComplex(buildT(8));
    RectComplex u = unzip(g, {});
    CHECK(u.track().branches.size() == g.track().branches.size());
    CHECK(complexesIsomorphic(g, u, 6));
}
