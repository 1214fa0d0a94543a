// Command-line front end: builders, tracers, censuses, verification suites
// and JSON/DOT/SVG emitters.
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "lamina/carrying.hpp"
#include "lamina/flatdyn.hpp"
#include "lamina/raycalc.hpp"
#include "lamina/rectcomplex.hpp"
#include "lamina/traintrack.hpp"
#include "lamina/verify.hpp"

using namespace lamina;

namespace {

WeightedTrack buildFamily(const std::string& family, int depth, int cover) {
    WeightedTrack wt;
    if (family == "T") wt = buildT(depth);
    else if (family == "Tstar" || family == "T*") wt = buildTStar(depth);
    else if (family == "T1") wt = buildT1(depth);
    else throw CLI::ValidationError("--family", "expected T, Tstar or T1");
    if (cover > 1) {
        if (family != "T1") throw CLI::ValidationError("--cover", "covers are built over T1");
        wt = cyclicCover(wt, cover);
    }
    return wt;
}

void emit(const std::string& text, const std::string& outFile) {
    if (outFile.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream os(outFile);
        os << text;
    }
}

std::string normalizeBranch(const TrainTrack& t, std::string name) {
    if (t.branchByName.count(name)) return name;
    if (t.branchByName.count(name + "*")) return name + "*";
    throw std::domain_error("unknown branch " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact train-track, foliation and loop-order calculator"};
    app.require_subcommand(1);

    std::string family = "T", outFile, format = "text";
    int depth = 12, cover = 1;

    // ---- track ----
    auto* track = app.add_subcommand("track", "weighted train tracks");
    track->require_subcommand(1);
    auto addCommonTrack = [&](CLI::App* c) {
        c->add_option("--family", family, "T, Tstar or T1");
        c->add_option("--depth", depth, "truncation depth");
        c->add_option("--cover", cover, "cyclic cover degree (over T1)");
        c->add_option("--out", outFile, "output file");
    };
    auto* trackBuild = track->add_subcommand("build", "build a track and print it as JSON");
    addCommonTrack(trackBuild);
    trackBuild->callback([&] { emit(trackToJson(buildFamily(family, depth, cover)), outFile); });

    auto* trackCheck = track->add_subcommand("check", "check the switch conditions");
    addCommonTrack(trackCheck);
    trackCheck->callback([&] {
        WeightedTrack wt = buildFamily(family, depth, cover);
        auto v = checkSwitchConditions(wt.track, wt.weights);
        if (v.empty()) {
            std::cout << "all switch conditions hold\n";
        } else {
            for (auto& x : v)
                std::cout << x.switchName << ": in " << x.inSum.str() << " != out " << x.outSum.str() << "\n";
            throw CLI::RuntimeError(1);
        }
    });

    std::string pieceName = "V";
    auto* trackPaths = track->add_subcommand("paths", "enumerate train paths through a pants piece");
    trackPaths->add_option("--piece", pieceName, "V or U")->required();
    trackPaths->add_option("--depth", depth);
    trackPaths->add_option("--format", format, "text or json");
    trackPaths->callback([&] {
        WeightedTrack wt = buildT(std::max(depth, 6));
        auto paths = enumeratePathsThroughPiece(wt, pieceName == "U" ? PantsPiece::U : PantsPiece::V);
        if (format == "json") {
            nlohmann::json j;
            j["piece"] = pieceName;
            j["count"] = paths.size();
            j["paths"] = nlohmann::json::array();
            for (auto& p : paths) {
                j["paths"].push_back({{"entry", p.entryBoundary},
                                      {"exit", p.exitBoundary},
                                      {"branches", p.branches}});
            }
            emit(j.dump(2), outFile);
        } else {
            std::cout << paths.size() << "\n";
            for (auto& p : paths) {
                std::cout << "  " << p.entryBoundary << " -> " << p.exitBoundary << ": ";
                for (auto& b : p.branches) std::cout << b << " ";
                std::cout << "\n";
            }
        }
    });

    std::string renderKind = "dot";
    auto* trackRender = track->add_subcommand("render", "emit DOT or SVG");
    addCommonTrack(trackRender);
    trackRender->add_option("--as", renderKind, "dot or svg");
    trackRender->callback([&] {
        WeightedTrack wt = buildFamily(family, depth, cover);
        emit(renderKind == "svg" ? trackToSvg(wt) : trackToDot(wt), outFile);
    });

    // ---- complex ----
    auto* complexCmd = app.add_subcommand("complex", "foliated rectangle complexes");
    complexCmd->require_subcommand(1);
    std::string branch = "b0", heightStr = "1/5", direction = "fwd";
    int steps = 64;
    bool rightChoice = false;

    auto* cTrace = complexCmd->add_subcommand("trace", "trace a leaf");
    cTrace->add_option("--family", family);
    cTrace->add_option("--depth", depth);
    cTrace->add_option("--cover", cover);
    cTrace->add_option("--branch", branch)->required();
    cTrace->add_option("--height", heightStr)->required();
    cTrace->add_option("--dir", direction, "fwd or bwd");
    cTrace->add_option("--steps", steps);
    cTrace->add_flag("--right", rightChoice, "break singular ties to the right");
    cTrace->add_option("--out", outFile);
    cTrace->callback([&] {
        RectComplex g = buildComplex(buildFamily(family, depth, cover));
        TraceState st{g.track().branchId(normalizeBranch(g.track(), branch)),
                      {Rational::parse(heightStr), 0},
                      direction == "bwd" ? Dir::ToStart : Dir::ToEnd};
        auto it = g.trace(st, steps, rightChoice ? LeafSide::Right : LeafSide::Left, true);
        emit(g.itineraryToJson(it), outFile);
    });

    auto* cBoundary = complexCmd->add_subcommand("boundary", "boundary path census");
    cBoundary->add_option("--family", family);
    cBoundary->add_option("--depth", depth);
    cBoundary->add_option("--cover", cover);
    cBoundary->add_option("--window", steps, "census window depth");
    cBoundary->add_option("--format", format);
    cBoundary->add_option("--out", outFile);
    cBoundary->callback([&] {
        RectComplex g = buildComplex(buildFamily(family, depth, cover));
        auto paths = g.boundaryPaths(steps);
        nlohmann::json j;
        j["count"] = paths.size();
        j["paths"] = nlohmann::json::array();
        for (auto& bp : paths)
            j["paths"].push_back({{"key", bp.key},
                                  {"singularities", bp.singularityChain},
                                  {"window", bp.branchWindow}});
        if (format == "json") emit(j.dump(2), outFile);
        else {
            std::cout << paths.size() << " boundary paths\n";
            for (auto& bp : paths) {
                std::cout << "  [" << bp.key << "] ";
                for (size_t i = 0; i < bp.singularityChain.size() && i < 16; ++i)
                    std::cout << bp.singularityChain[i] << " ";
                std::cout << "\n";
            }
        }
    });

    auto* cSaddles = complexCmd->add_subcommand("saddles", "saddle connection census");
    cSaddles->add_option("--family", family);
    cSaddles->add_option("--depth", depth);
    cSaddles->add_option("--cover", cover);
    cSaddles->add_option("--format", format);
    cSaddles->add_option("--out", outFile);
    cSaddles->callback([&] {
        RectComplex g = buildComplex(buildFamily(family, depth, cover));
        auto census = g.saddleConnectionCensus();
        if (format == "json") {
            nlohmann::json j = nlohmann::json::array();
            for (auto& sc : census)
                j.push_back({{"from", sc.from}, {"to", sc.to}, {"branches", sc.branches}});
            emit(j.dump(2), outFile);
        } else {
            for (auto& sc : census)
                std::cout << sc.from << " -> " << sc.to << " (" << sc.branches.size() << " rectangles)\n";
        }
    });

    auto* cUnzip = complexCmd->add_subcommand("unzip", "cut along the renormalization web");
    cUnzip->add_option("--depth", depth);
    cUnzip->add_option("--cover", cover);
    cUnzip->add_option("--out", outFile);
    cUnzip->callback([&] {
        RectComplex g = buildComplex(buildFamily("T1", depth, cover));
        auto red = verify::redConnections(g);
        RectComplex u = unzip(g, red);
        std::cout << "cut along " << red.size() << " connections: " << g.track().branches.size()
                  << " -> " << u.track().branches.size() << " branches\n";
        if (!outFile.empty()) emit(trackToJson(u.weighted()), outFile);
    });

    // ---- flat ----
    auto* flatCmd = app.add_subcommand("flat", "the square foliation and its automorphism");
    flatCmd->require_subcommand(1);
    std::string point = "p0", xStr = "173/3072";
    long returns = 1000;
    int bins = 8, level = 16, sepIndex = 2;
    bool sigma = false;

    auto* fOrbit = flatCmd->add_subcommand("orbit", "singularity orbit under the automorphism");
    fOrbit->add_option("--point", point)->required();
    fOrbit->add_option("--steps", steps);
    fOrbit->add_option("--level", level);
    fOrbit->callback([&] {
        auto S = flat::SquareSystem::buildSigma(level);
        auto orb = flat::singularOrbit(S, point, steps);
        for (auto& n : orb.names) std::cout << n << " ";
        std::cout << (orb.leftTruncation ? "(left truncation)" : "") << "\n";
    });

    auto* fLeaf = flatCmd->add_subcommand("leaf", "trace a singular leaf of the foliation");
    fLeaf->add_option("--index", sepIndex, "which one-pronged singularity");
    fLeaf->add_option("--level", level);
    fLeaf->callback([&] {
        auto F = flat::SquareSystem::buildF(level);
        auto tr = flat::traceSeparatrix(F, sepIndex);
        for (auto& h : tr.heights) std::cout << h.str() << " ";
        std::cout << (tr.terminatedAtR ? "-> accumulation point" : "") << "\n";
    });

    auto* fIet = flatCmd->add_subcommand("iet", "apply the interval exchange");
    fIet->add_option("--x", xStr)->required();
    fIet->add_option("--level", level);
    fIet->callback([&] {
        auto f = flat::buildIET(level);
        std::cout << f.apply(Rational::parse(xStr)).str() << "\n";
    });

    auto* fHist = flatCmd->add_subcommand("histogram", "transversal hitting histogram");
    fHist->add_option("--x", xStr)->required();
    fHist->add_option("--returns", returns);
    fHist->add_option("--bins", bins);
    fHist->add_option("--level", level);
    fHist->add_option("--format", format);
    fHist->add_option("--out", outFile);
    fHist->callback([&] {
        auto F = flat::SquareSystem::buildF(level);
        auto h = flat::hittingHistogram(F, Rational::parse(xStr), returns, bins);
        nlohmann::json j;
        j["bins"] = h.bins;
        j["total"] = h.total;
        j["singularLeaf"] = h.singularLeaf;
        emit(format == "json" ? j.dump(2) : j.dump(), outFile);
    });

    auto* fRender = flatCmd->add_subcommand("render", "SVG of the square with identifications");
    fRender->add_flag("--sigma", sigma, "render the closed surface instead of the disk foliation");
    fRender->add_option("--level", level);
    fRender->add_option("--out", outFile);
    fRender->callback([&] {
        auto S = sigma ? flat::SquareSystem::buildSigma(level) : flat::SquareSystem::buildF(level);
        emit(S.svg(), outFile);
    });

    // ---- carry ----
    auto* carryCmd = app.add_subcommand("carry", "the carrying map onto the collapsed track");
    carryCmd->require_subcommand(1);
    std::string carryBranch = "b2";
    std::vector<std::string> pathArg;

    auto* caZeta = carryCmd->add_subcommand("zeta", "image path of a branch");
    caZeta->add_option("branch", carryBranch)->required();
    caZeta->callback([&] {
        for (auto& b : carry::zetaOf(carryBranch)) std::cout << b << " ";
        std::cout << "\n";
    });

    auto* caWeights = carryCmd->add_subcommand("weights", "induced weights");
    caWeights->add_option("--branch", carryBranch, "print one branch only");
    caWeights->add_option("--depth", depth);
    caWeights->add_option("--format", format);
    caWeights->add_option("--out", outFile);
    caWeights->callback([&] {
        WeightedTrack ts = buildTStar(std::max(depth, 4));
        WeightSystem w = carry::inducedWeights(ts);
        if (caWeights->count("--branch")) {
            std::cout << w.of(ts.track.branchId(normalizeBranch(ts.track, carryBranch))).str() << "\n";
            return;
        }
        nlohmann::json j;
        for (const Branch& b : ts.track.branches) j[b.name] = w.of(ts.track.branchId(b.name)).str();
        emit(format == "json" ? j.dump(2) : j.dump(), outFile);
    });

    auto* caTranslate = carryCmd->add_subcommand("translate", "translate a train path");
    caTranslate->add_option("path", pathArg, "branch names")->required();
    caTranslate->add_option("--depth", depth);
    caTranslate->callback([&] {
        WeightedTrack t = buildT(std::max(depth, 12));
        WeightedTrack ts = buildTStar(std::max(depth, 14));
        for (auto& b : carry::xiTranslate(t, ts, pathArg)) std::cout << b << " ";
        std::cout << "\n";
    });

    auto* caMissing = carryCmd->add_subcommand("missing", "window of the uncovered train path");
    caMissing->add_option("--depth", depth);
    caMissing->callback([&] {
        for (auto& b : carry::missingPathWindow(depth)) std::cout << b << " ";
        std::cout << "\n";
    });

    // ---- ray ----
    auto* rayCmd = app.add_subcommand("ray", "loop words and the order at infinity");
    rayCmd->require_subcommand(1);
    int kArg = 3, nArg = 1, jArg = 3, iterArg = 3, orderDepth = 4096;
    std::string wordA, wordB, loopStr;

    auto* rAlpha = rayCmd->add_subcommand("alpha", "the folding sequence");
    rAlpha->add_option("-k,--k", kArg)->required();
    rAlpha->callback([&] { std::cout << ray::toStringRL(ray::alphaSeq(kArg)) << "\n"; });

    auto* rGamma = rayCmd->add_subcommand("gamma", "the interleaved loop family");
    rGamma->add_option("-n,--n", nArg)->required();
    rGamma->add_option("-j,--j", jArg)->required();
    rGamma->callback([&] {
        std::vector<int> idx;
        for (int i = 0; i < jArg / 2 + 3; ++i) idx.push_back(1 + i * nArg);
        ray::GammaFamily fam(nArg, idx, idx, jArg);
        for (int i = 1; i <= nArg; ++i)
            std::cout << "gamma(" << i << "," << jArg << ") = " << ray::toStringRL(fam.gamma(i, jArg)) << "\n";
    });

    auto* rOrder = rayCmd->add_subcommand("order", "compare two loop words");
    rOrder->add_option("a", wordA)->required();
    rOrder->add_option("b", wordB)->required();
    rOrder->callback([&] {
        ray::PlanarOrder ord(60);
        auto o = ord.compare(ray::parseWord(wordA), ray::parseWord(wordB));
        switch (o) {
            case ray::Order::Less: std::cout << "Less\n"; break;
            case ray::Order::Greater: std::cout << "Greater\n"; break;
            case ray::Order::Equal: std::cout << "Equal\n"; break;
            default: std::cout << "UnknownAtDepth\n";
        }
    });

    auto* rSubst = rayCmd->add_subcommand("subst", "iterate the substitution on r1");
    rSubst->add_option("--iter", iterArg);
    rSubst->callback([&] {
        ray::Word w{ray::rLetter(1)};
        for (int i = 0; i < iterArg; ++i) w = ray::substitutionF(w);
        std::cout << ray::toStringRL(w) << "\n";
    });

    auto* rCrosses = rayCmd->add_subcommand("crosses", "crossing witness against the limit ray");
    rCrosses->add_option("loop", loopStr)->required();
    rCrosses->add_option("--depth", orderDepth, "search depth for witness prefixes");
    rCrosses->callback([&] {
        ray::PlanarOrder ord(60);
        ray::RayLimit gamma{ray::fixedWordPrefix(1 << 12), "gamma"};
        auto res = ray::crossesLoop(ord, gamma, ray::parseWord(loopStr), orderDepth);
        if (res.crosses)
            std::cout << "Crosses (witness prefix: " << ray::toStringRL(res.witnessPrefix) << ")\n";
        else
            std::cout << "NoCrossingFound\n";
    });

    auto* rVerify = rayCmd->add_subcommand("verify", "order-lemma report");
    rVerify->add_option("-n,--n", nArg);
    rVerify->add_option("-k,--k", kArg);
    rVerify->callback([&] {
        ray::PlanarOrder ord(60);
        auto rep = ray::monotonicityCheck(ord, nArg, kArg, 1 << 10);
        int v = 0, r = 0, u = 0;
        for (auto& c : rep) {
            if (c.status == ray::CheckStatus::Verified) ++v;
            else if (c.status == ray::CheckStatus::Refuted) ++r, std::cout << "refuted: " << c.id << "\n";
            else ++u;
        }
        std::cout << v << " verified, " << r << " refuted, " << u << " unknown\n";
        if (r) throw CLI::RuntimeError(1);
    });

    // ---- verify ----
    bool serial = false;
    auto* verifyCmd = app.add_subcommand("verify", "verification suites");
    verifyCmd->require_subcommand(1);
    auto* vAll = verifyCmd->add_subcommand("all", "run the acceptance suite");
    vAll->add_option("--depth", depth);
    vAll->add_option("--format", format, "text or json");
    vAll->add_option("--out", outFile);
    vAll->add_flag("--serial", serial, "run checks one at a time");
    vAll->callback([&] {
        auto rep = verify::runAcceptance(depth, serial);
        emit(format == "json" ? rep.toJson() : rep.toText(), outFile);
        if (rep.refutedCount() > 0) throw CLI::RuntimeError(1);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
