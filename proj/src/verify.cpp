#include "lamina/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "json.hpp"
#include "lamina/carrying.hpp"
#include "lamina/flatdyn.hpp"
#include "lamina/parallel.hpp"
#include "lamina/raycalc.hpp"
#include "lamina/traintrack.hpp"

namespace lamina {
namespace verify {

bool VerificationReport::allVerified() const {
    for (const CheckResult& c : checks)
        if (c.status != Status::Verified) return false;
    return true;
}

int VerificationReport::refutedCount() const {
    int n = 0;
    for (const CheckResult& c : checks) n += c.status == Status::Refuted;
    return n;
}

namespace {

const char* statusName(Status s) {
    switch (s) {
        case Status::Verified: return "Verified";
        case Status::Refuted: return "Refuted";
        case Status::UnknownAtDepth: return "UnknownAtDepth";
        case Status::Skipped: return "Skipped";
    }
    return "?";
}

struct Ctx {
    int depth;
    std::ostringstream log;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "FAILED: " << what << "; ";
        }
    }
    void note(const std::string& what) { log << what << "; "; }
};

using CheckFn = void (*)(Ctx&);

int singIndexOf(const std::string& name) {
    size_t i = 0;
    while (i < name.size() && !isdigit(name[i])) ++i;
    if (i == name.size()) return 0;
    size_t j = i;
    while (j < name.size() && isdigit(name[j])) ++j;
    return std::stoi(name.substr(i, j - i));
}

// --- 1: switch conditions --------------------------------------------------

void checkSwitchConditionsAll(Ctx& c) {
    auto run = [&](const std::string& name, const WeightedTrack& wt) {
        auto v = lamina::checkSwitchConditions(wt.track, wt.weights);
        c.expect(v.empty(), name + " has " + std::to_string(v.size()) + " violations");
    };
    run("T(32)", buildT(32));
    run("T*(32)", buildTStar(32));
    WeightedTrack t1 = buildT1(16);
    run("T1(16)", t1);
    run("T2", cyclicCover(t1, 2));
    run("T3", cyclicCover(t1, 3));
}

// --- 2: induced weights ----------------------------------------------------

void checkInducedWeights(Ctx& c) {
    WeightedTrack ts = buildTStar(12);
    WeightSystem w = carry::inducedWeights(ts);
    auto of = [&](const std::string& n) { return w.of(ts.track.branchId(n)); };
    struct Expect {
        const char* name;
        Rational val;
    };
    std::vector<Expect> table = {
        {"f0*", Rational(1)},      {"f1*", Rational(3, 4)},  {"f2*", Rational(1, 4)},
        {"f3*", Rational(3, 16)},  {"f4*", Rational(1, 16)}, {"f5*", Rational(3, 64)},
        {"e1*", Rational(1, 3)},   {"e2*", Rational(2, 3)},  {"b-1*", Rational(1)},
        {"b0*", Rational(1)},      {"b1*", Rational(1, 2)},  {"d0*", Rational(1, 2)},
    };
    for (auto& e : table) c.expect(of(e.name) == e.val, std::string(e.name) + " != " + e.val.str());
    for (int n = 1; n <= 8; ++n) {
        Rational p = Rational(1);
        for (int i = 0; i < n; ++i) p = p * Rational(1, 2);
        c.expect(of("f-" + std::to_string(n) + "*") == p, "f-n family at n=" + std::to_string(n));
        c.expect(of("h" + std::to_string(n) + "*") == p * Rational(1, 2), "h family at n=" + std::to_string(n));
    }
    c.expect(lamina::checkSwitchConditions(ts.track, w).empty(), "induced system violates a switch condition");
}

// --- 3: boundary census ----------------------------------------------------

void checkBoundaryCensus(Ctx& c) {
    RectComplex gT = buildComplex(buildT(16));
    RectComplex gS = buildComplex(buildTStar(16));
    WeightedTrack t1 = buildT1(12);
    RectComplex g2 = buildComplex(cyclicCover(t1, 2));
    RectComplex g3 = buildComplex(cyclicCover(t1, 3));
    for (int depth : {32, 64}) {
        c.expect(gT.boundaryPaths(depth).size() == 3, "T census at depth " + std::to_string(depth));
        c.expect(gS.boundaryPaths(depth).size() == 3, "T* census at depth " + std::to_string(depth));
        c.expect(g2.boundaryPaths(depth).size() == 6, "T2 census at depth " + std::to_string(depth));
        c.expect(g3.boundaryPaths(depth).size() == 9, "T3 census at depth " + std::to_string(depth));
    }
    // the chain of the one-ended singular leaf through level six
    std::vector<std::string> expected = {"Q5", "Q3", "P3", "P3", "Q3", "Q1", "P1", "P1", "Q1", "Q0",
                                         "P0", "P0", "Q0", "Q2", "P2", "P2", "Q2", "Q4", "P4", "P4",
                                         "Q4", "Q6"};
    bool found = false;
    for (const BoundaryPath& bp : gT.boundaryPaths(64)) {
        for (int orient = 0; orient < 2 && !found; ++orient) {
            std::vector<std::string> chain = bp.singularityChain;
            if (orient) std::reverse(chain.begin(), chain.end());
            for (size_t i = 0; !found && i + expected.size() <= chain.size(); ++i) {
                bool ok = true;
                for (size_t k = 0; k < expected.size(); ++k) ok = ok && chain[i + k] == expected[k];
                found = ok;
            }
        }
    }
    c.expect(found, "l0 window does not match the singularity chain through level 6");
}

// --- 4: saddle census ------------------------------------------------------

void checkSaddleCensus(Ctx& c) {
    RectComplex g = buildComplex(buildT(14));
    auto census = g.saddleConnectionCensus(1 << 17);
    auto has = [&](const std::string& a, const std::string& b) {
        for (const SaddleConnection& sc : census)
            if ((sc.from == a && sc.to == b) || (sc.from == b && sc.to == a)) return true;
        return false;
    };
    for (int n = 0; n <= 10; ++n) {
        c.expect(has("P" + std::to_string(n), "Q" + std::to_string(n)), "P-Q at level " + std::to_string(n));
        c.expect(has("P" + std::to_string(n), "P" + std::to_string(n)), "P loop at level " + std::to_string(n));
    }
    c.expect(has("Q1", "Q0"), "Q1-Q0");
    for (int n = 2; n <= 10; ++n)
        c.expect(has("Q" + std::to_string(n), "Q" + std::to_string(n - 2)), "Q-Q at level " + std::to_string(n));
}

// --- 5: automorphism orbits ------------------------------------------------

void checkOrbits(Ctx& c) {
    flat::SquareSystem S = flat::SquareSystem::buildSigma(14);
    auto chain = [&](const std::string& start, std::vector<std::string> expect) {
        auto got = flat::singularOrbit(S, start, (int)expect.size());
        c.expect(!got.leftTruncation && got.names == expect, "orbit of " + start);
    };
    chain("a5", {"a3", "a1", "p0", "p2", "p4", "p6"});
    chain("a4", {"a2", "a0", "p1", "p3", "p5", "p7"});
    chain("b2", {"b0", "q-2", "q0", "q2", "q4", "q6"});
    chain("b1", {"b-1", "q-1", "q1", "q3", "q5", "q7"});
}

// --- 6: dyadic leaves ------------------------------------------------------

void checkDyadicLeaves(Ctx& c) {
    flat::SquareSystem F = flat::SquareSystem::buildF(16);
    for (int i = 0; i <= 10; ++i) {
        flat::SeparatrixTrace tr = flat::traceSeparatrix(F, i);
        c.expect(tr.terminatedAtR, "separatrix " + std::to_string(i) + " did not reach the accumulation point");
        c.expect(tr.heights == flat::dyadicLeafHeights(i), "heights mismatch at i=" + std::to_string(i));
    }
}

// --- 7: interval exchange vs flow ------------------------------------------

void checkIet(Ctx& c) {
    flat::SquareSystem F = flat::SquareSystem::buildF(40);
    flat::IntervalExchange f = flat::buildIET(36);
    c.expect(f.totalSourceLength() == f.totalImageLength(), "total source and image lengths differ");
    std::mt19937 rng(2026);
    std::vector<Rational> samples;
    while ((int)samples.size() < 100) {
        long num = 1 + (long)(rng() % (3 * 1024 - 1));
        if (num % 3 == 0) continue;  // keep the reduced denominator off the dyadic web
        Rational x(num, 3 * 1024);
        try {
            f.apply(x);
        } catch (const std::domain_error&) {
            continue;  // breakpoint; resample
        }
        samples.push_back(x);
    }
    std::vector<int> good(samples.size(), 0);
    parallelFor(samples.size(), [&](size_t i) {
        Rational viaIET = f.apply(samples[i]);
        auto rets = flat::transversalReturns(F, samples[i], 2);
        good[i] = rets[1] == viaIET;
    });
    int total = 0;
    for (int g : good) total += g;
    c.expect(total == (int)samples.size(),
             "second return disagreed on " + std::to_string((int)samples.size() - total) + " samples");
}

// --- 8: equidistribution ---------------------------------------------------

void checkEquidistribution(Ctx& c) {
    flat::SquareSystem F = flat::SquareSystem::buildF(64);
    std::mt19937 rng(7);
    int done = 0, redraws = 0;
    while (done < 3 && redraws < 40) {
        long num = 2 + 3 * (long)(rng() % 1000);  // class that avoids the singular web
        flat::Histogram h = flat::hittingHistogram(F, Rational(num, 3 * 1024), 100000, 8);
        if (h.singularLeaf) {
            ++redraws;
            continue;
        }
        bool uniform = true;
        for (long b : h.bins) {
            double dev = std::abs((double)b - 12500.0) / 12500.0;
            uniform = uniform && dev < 0.05;
        }
        c.expect(uniform, "seed " + std::to_string(num) + " deviates by 5% or more");
        ++done;
    }
    c.expect(done == 3, "could not find three nonsingular seeds");
    if (redraws) c.note(std::to_string(redraws) + " singular-leaf seeds redrawn");
}

// --- 9: substitution correspondence ----------------------------------------

void checkSubstitution(Ctx& c) {
    using namespace lamina::ray;
    for (int k = 1; k <= 12; ++k)
        c.expect(substitutionF(alphaSeq(k)) == alphaSeq(k + 2), "f(alpha_k) != alpha_{k+2} at k=" + std::to_string(k));
    Word fw = fixedWordPrefix(1 << 12);
    Word a13 = alphaSeq(13);
    bool eq = true;
    for (int i = 0; i < 4095; ++i) eq = eq && fw[i] == a13[i];
    c.expect(eq, "fixed-word prefix of length 4095 mismatch");
}

// --- 10: order lemmas ------------------------------------------------------

void checkOrderLemmas(Ctx& c) {
    using namespace lamina::ray;
    PlanarOrder ord(60);
    // the loop order pattern up to index 6
    std::vector<Word> pattern;
    for (int i = 6; i >= 1; --i) {
        pattern.push_back({lLetter(i)});
        pattern.push_back({inverse(lLetter(i))});
    }
    for (int i = 1; i <= 6; ++i) {
        pattern.push_back({inverse(rLetter(i))});
        pattern.push_back({rLetter(i)});
    }
    for (size_t i = 0; i + 1 < pattern.size(); ++i)
        c.expect(ord.compare(pattern[i], pattern[i + 1]) == Order::Less, "loop order pattern broken");

    for (int n = 1; n <= 3; ++n) {
        auto rep = monotonicityCheck(ord, n, 4, 1 << 10);
        int refuted = 0, unknown = 0;
        for (const OrderCheck& oc : rep) {
            refuted += oc.status == CheckStatus::Refuted;
            unknown += oc.status == CheckStatus::UnknownAtDepth;
        }
        c.expect(refuted == 0 && unknown == 0,
                 "n=" + std::to_string(n) + ": " + std::to_string(refuted) + " refuted, " +
                     std::to_string(unknown) + " unknown of " + std::to_string((int)rep.size()));
        c.note("n=" + std::to_string(n) + ": " + std::to_string((int)rep.size()) + " inequalities");
    }
}

// --- 11: missing path ------------------------------------------------------

void checkMissingPath(Ctx& c) {
    WeightedTrack ts = buildTStar(12);
    for (int i = -8; i <= 8; ++i) {
        carry::PreimageStack st = carry::preimageStack(i);
        Rational w = ts.weights.of(ts.track.branchId("f" + std::to_string(i) + "*"));
        c.expect(st.lowerSum + st.upperSum == w, "covering identity fails at index " + std::to_string(i));
    }
    auto window = carry::missingPathWindow(8);
    bool allF = true;
    for (const std::string& b : window) allF = allF && b[0] == 'f';
    c.expect(allF && window.size() == 17, "missing-path window is not seventeen f-branches");
    WeightedTrack t = buildT(12);
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::string> chain;
        for (int i = n; i < n + 3; ++i) chain.push_back("b" + std::to_string(i));
        auto img = carry::xiTranslate(t, ts, chain);
        bool nonF = false;
        for (const std::string& b : img) nonF = nonF || b[0] != 'f';
        c.expect(img.size() >= 17 ? nonF : true, "translated window traverses only f-branches at n=" + std::to_string(n));
    }
}

// --- 12: pants-piece enumeration -------------------------------------------

void checkPieceEnumeration(Ctx& c) {
    WeightedTrack t = buildT(8);
    auto u = enumeratePathsThroughPiece(t, PantsPiece::U);
    c.expect(u.size() == 3, "U piece has " + std::to_string(u.size()) + " paths");
    auto v = enumeratePathsThroughPiece(t, PantsPiece::V);
    int self = 0;
    for (auto& p : v) self += p.selfReturning();
    int cross = (int)v.size() - self;
    c.note("V piece: " + std::to_string((int)v.size()) + " paths (" + std::to_string(self) +
           " self, " + std::to_string(cross) + " crossing)");
    c.expect(v.size() == 17, "V piece has " + std::to_string(v.size()) + " paths, not 17");
    c.expect(self == 8, "V piece has " + std::to_string(self) + " self-returning paths, not 8");
    c.expect(cross == 9, "V piece has " + std::to_string(cross) + " crossing paths, not 9");
}

// --- 13: unzipping ---------------------------------------------------------

void checkUnzip(Ctx& c) {
    for (int deg : {2, 3}) {
        WeightedTrack t1 = buildT1(9);
        WeightedTrack cover = cyclicCover(t1, deg);
        RectComplex g = buildComplex(cover);
        auto red = redConnections(g);
        c.expect((int)red.size() == 2 * deg, "red set size for degree " + std::to_string(deg));
        RectComplex u = unzip(g, red);

        // the red web crosses every head rectangle in the quartering pattern
        std::map<std::string, std::set<Rational>> cuts;
        for (const SaddleConnection& sc : red)
            for (auto& [name, hs] : g.connectionHeights(sc))
                for (const Rational& h : hs) cuts[name].insert(h);
        const std::set<Rational> quarters{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
        for (int i = 1; i <= deg; ++i) {
            std::string ci = "." + std::to_string(i);
            c.expect(cuts["b0" + ci] == quarters, "b0" + ci + " not cut at the three quarter heights");
            c.expect(cuts["b-1" + ci] == quarters, "b-1" + ci + " not cut at the three quarter heights");
            c.expect(cuts["e1" + ci] == std::set<Rational>{Rational(1, 4)},
                     "e1" + ci + " not cut at its quarter mark");
            // the cuts meet e2 at the heights leaving a quarter-height piece
            // against the seam (its rectangle spans the upper two thirds)
            c.expect(cuts["e2" + ci] == std::set<Rational>{Rational(1, 6), Rational(5, 12)},
                     "e2" + ci + " not cut at its quarter marks");
        }
        for (int i = 1; i <= deg; ++i) {
            // the bigon reappears at one quarter the height
            bool e1q = false, e2q = false;
            for (const Branch& b : u.track().branches) {
                const Rational w = u.weighted().weights.of(u.track().branchId(b.name));
                std::string stemName = b.name.substr(0, b.name.find('#'));
                if (stemName == "e1." + std::to_string(i) && w == Rational(1, 12)) e1q = true;
                if (stemName == "e2." + std::to_string(i) && w == Rational(1, 6)) e2q = true;
            }
            c.expect(e1q && e2q, "quartered bigon pieces missing in copy " + std::to_string(i));
            // the deep part is carried over unchanged
            for (const std::string& nm : {std::string("b4."), std::string("q3."), std::string("c2."),
                                          std::string("d2.")}) {
                std::string full = nm + std::to_string(i);
                bool there = u.track().branchByName.count(full) &&
                             u.weighted().weights.of(u.track().branchId(full)) ==
                                 g.weighted().weights.of(g.track().branchId(full));
            c.expect(there, "deep branch " + full + " changed under the cut");
            }
        }

        // the dense cusp rays: alpha_i first enters the stem of the next copy,
        // inside the nested quarter windows around the germ height
        std::vector<int> target(deg + 1, 0);
        for (int i = 1; i <= deg; ++i) {
            auto va = g.singularityByName("VA." + std::to_string(i));
            c.expect(va.has_value(), "missing bigon vertex in copy " + std::to_string(i));
            if (!va) continue;
            TraceState seed{g.track().branchId("b0." + std::to_string(i)), {Rational(1, 3), +1},
                            Dir::ToEnd};
            TraceState cur = seed;
            int enteredCopy = 0;
            bool quarterWindow = false, secondWindow = false;
            for (long step = 0; step < (1L << 22); ++step) {
                auto r = g.step(cur, LeafSide::Left, false);
                if (!r.next) break;
                cur = *r.next;
                const std::string& bn = g.track().branches[cur.branch].name;
                if (bn.rfind("b0.", 0) == 0) {
                    int j = std::stoi(bn.substr(3));
                    if (j == i) continue;
                    if (!enteredCopy) enteredCopy = j;
                    if (j == enteredCopy) {
                        // successive entries approach the germ of the next ray
                        // through the nested quarter windows
                        if (cur.h.q > Rational(1, 4) && cur.h.q < Rational(1, 2)) quarterWindow = true;
                        if (cur.h.q > Rational(5, 16) && cur.h.q < Rational(3, 8)) secondWindow = true;
                        if (quarterWindow && secondWindow) break;
                    }
                }
            }
            c.expect(enteredCopy != 0, "ray " + std::to_string(i) + " never reached another stem");
            target[i] = enteredCopy;
            c.expect(quarterWindow,
                     "no entry in the quarter window (copy " + std::to_string(i) + ")");
            c.expect(secondWindow,
                     "no entry in the second-level window (copy " + std::to_string(i) + ")");
        }
        // the copies are visited in a single cycle with a constant shift
        if (deg >= 2) {
            int shift = (target[1] - 1 + deg) % deg;
            bool cyclic = shift != 0;
            for (int i = 1; i <= deg; ++i)
                cyclic = cyclic && target[i] == (i - 1 + shift) % deg + 1;
            c.expect(cyclic, "stem entries do not form the cyclic pattern for degree " + std::to_string(deg));
        }
    }
}

// --- 14: filling surrogate --------------------------------------------------

void checkFilling(Ctx& c) {
    using namespace lamina::ray;
    PlanarOrder ord(60);
    RayLimit gamma{fixedWordPrefix(1 << 12), "gamma"};
    std::vector<Word> loops;
    std::vector<Letter> letters;
    for (int k = 0; k <= 6; ++k) {
        letters.push_back({k, false});
        letters.push_back({k, true});
    }
    for (const Letter& a : letters) loops.push_back({a});
    for (const Letter& a : letters)
        for (const Letter& b : letters)
            if (!(b == inverse(a))) loops.push_back({a, b});
    std::vector<int> crossed(loops.size(), 0);
    parallelFor(loops.size(), [&](size_t i) {
        crossed[i] = crossesLoop(ord, gamma, loops[i], 64).crosses ? 1 : 0;
    });
    int missing = 0;
    for (size_t i = 0; i < loops.size(); ++i)
        if (!crossed[i]) {
            ++missing;
            if (missing < 4) c.note("no crossing witness for " + toStringG(loops[i]));
        }
    c.expect(missing == 0, std::to_string(missing) + " of " + std::to_string((int)loops.size()) +
                               " loops have no crossing witness");
    c.note(std::to_string((int)loops.size()) + " loops checked");
}

}  // namespace

std::vector<SaddleConnection> redConnections(const RectComplex& g) {
    auto fam = g.track().metadata.find("family");
    if (fam == g.track().metadata.end() || fam->second.rfind("T1", 0) != 0)
        throw std::domain_error("redConnections: defined for the quartering family");
    auto census = g.saddleConnectionCensus(1 << 16);
    std::vector<SaddleConnection> red;
    // cover singularities read "S1.2b": base name, copy suffix, corner letter
    auto stemOf = [](const std::string& name) {
        auto dot = name.rfind('.');
        if (dot == std::string::npos) return name;
        size_t i = dot + 1;
        while (i < name.size() && isdigit(name[i])) ++i;
        if (i == dot + 1) return name;
        return name.substr(0, dot) + name.substr(i);
    };
    for (const SaddleConnection& sc : census) {
        std::string a = stemOf(sc.from), b = stemOf(sc.to);
        // the two lowest-level interior connections, per copy
        bool headSeam = (a == "P-1" && b == "S1b") || (a == "S1b" && b == "P-1");
        bool quarterSeam = (a == "S1a" && b == "Q0") || (a == "Q0" && b == "S1a");
        if (!headSeam && !quarterSeam) continue;
        red.push_back(sc);
    }
    return red;
}

VerificationReport runAcceptance(int depth, bool serial) {
    struct Spec {
        const char* id;
        const char* anchor;
        CheckFn fn;
    };
    const std::vector<Spec> specs = {
        {"switch-conditions", "weight systems close at every switch", checkSwitchConditionsAll},
        {"induced-weights", "carrying map induces the listed weights", checkInducedWeights},
        {"boundary-census", "three boundary paths per cover copy", checkBoundaryCensus},
        {"saddle-census", "P-Q, Q-Q and P-loop connections by tracing", checkSaddleCensus},
        {"automorphism-orbits", "singularity orbit chains of the square automorphism", checkOrbits},
        {"dyadic-leaves", "separatrix heights are the odd dyadics", checkDyadicLeaves},
        {"iet-consistency", "interval exchange equals the second-return map", checkIet},
        {"equidistribution", "transversal hits equidistribute", checkEquidistribution},
        {"substitution", "loop substitution fixes the limit word", checkSubstitution},
        {"order-lemmas", "loop order pattern and interleaving inequalities", checkOrderLemmas},
        {"missing-path", "preimage stacks cover all but one leaf", checkMissingPath},
        {"piece-enumeration", "train paths through the pants pieces", checkPieceEnumeration},
        {"unzip-renormalization", "cutting the red web quarters the complex", checkUnzip},
        {"filling-surrogate", "the limit ray crosses every short loop", checkFilling},
    };

    VerificationReport rep;
    rep.suite = "acceptance";
    rep.depth = depth;
    rep.checks.resize(specs.size());
    parallelFor(
        specs.size(),
        [&](size_t i) {
            Ctx ctx{depth};
            auto t0 = std::chrono::steady_clock::now();
            Status st;
            try {
                specs[i].fn(ctx);
                st = ctx.ok ? Status::Verified : Status::Refuted;
            } catch (const std::exception& ex) {
                st = Status::Refuted;
                ctx.log << "exception: " << ex.what();
            }
            auto t1 = std::chrono::steady_clock::now();
            CheckResult r;
            r.id = specs[i].id;
            r.anchor = specs[i].anchor;
            r.status = st;
            r.details = ctx.log.str();
            r.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
            rep.checks[i] = std::move(r);
        },
        serial);
    return rep;
}

std::string VerificationReport::toJson() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["depth"] = depth;
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& c : checks) {
        j["checks"].push_back({{"checkId", c.id},
                               {"anchor", c.anchor},
                               {"status", statusName(c.status)},
                               {"details", c.details},
                               {"millis", (long)c.millis}});
    }
    return j.dump(2);
}

std::string VerificationReport::toText() const {
    std::ostringstream os;
    for (const CheckResult& c : checks) {
        os << (c.status == Status::Verified ? "[PASS] " : c.status == Status::Refuted ? "[FAIL] " : "[----] ")
           << c.id << " (" << (long)c.millis << " ms)";
        if (!c.details.empty()) os << " -- " << c.details;
        os << "\n";
    }
    os << (allVerified() ? "all checks verified\n" : std::to_string(refutedCount()) + " check(s) refuted\n");
    return os.str();
}

}  // namespace verify
}  // namespace lamina
