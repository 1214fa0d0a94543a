// Compares the OpenMP kernels against the serial reference on the heavier
// exact-arithmetic workloads. Both paths must produce identical results; the
// timing table is informational.
#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <vector>

#include "lamina/flatdyn.hpp"
#include "lamina/parallel.hpp"
#include "lamina/raycalc.hpp"
#include "lamina/rectcomplex.hpp"
#include "lamina/verify.hpp"

using namespace lamina;
using Clock = std::chrono::steady_clock;

namespace {

double ms(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

struct Row {
    std::string name;
    double serialMs, parallelMs;
    bool identical;
};

Row benchIetBatch() {
    flat::SquareSystem F = flat::SquareSystem::buildF(40);
    flat::IntervalExchange f = flat::buildIET(36);
    std::mt19937 rng(1);
    std::vector<Rational> xs;
    while (xs.size() < 2000) {
        long num = 1 + (long)(rng() % (3 * 4096 - 1));
        if (num % 3 == 0) continue;  // keep the reduced denominator off the dyadic web
        Rational x(num, 3 * 4096);
        try {
            f.apply(x);
            xs.push_back(x);
        } catch (const std::domain_error&) {
        }
    }
    auto run = [&](bool serial) {
        std::vector<int> agree(xs.size(), 0);
        parallelFor(xs.size(), [&](size_t i) {
            agree[i] = flat::transversalReturns(F, xs[i], 2)[1] == f.apply(xs[i]);
        }, serial);
        return agree;
    };
    auto t0 = Clock::now();
    auto a = run(true);
    auto t1 = Clock::now();
    auto b = run(false);
    auto t2 = Clock::now();
    return {"iet second-return batch (2000)", ms(t0, t1), ms(t1, t2), a == b};
}

Row benchCrossings() {
    ray::PlanarOrder ord(60);
    ray::RayLimit gamma{ray::fixedWordPrefix(1 << 12), "gamma"};
    std::vector<ray::Word> loops;
    for (int k = 0; k <= 6; ++k)
        for (bool bar : {false, true}) loops.push_back({ray::Letter{k, bar}});
    for (auto a : loops) {
        for (auto b : std::vector<ray::Word>(loops)) {
            if (b[0] == ray::inverse(a[0])) continue;
            loops.push_back({a[0], b[0]});
            if (loops.size() > 600) break;
        }
        if (loops.size() > 600) break;
    }
    auto run = [&](bool serial) {
        std::vector<int> res(loops.size(), 0);
        parallelFor(loops.size(), [&](size_t i) {
            res[i] = ray::crossesLoop(ord, gamma, loops[i], 64).crosses;
        }, serial);
        return res;
    };
    auto t0 = Clock::now();
    auto a = run(true);
    auto t1 = Clock::now();
    auto b = run(false);
    auto t2 = Clock::now();
    return {"crossing search (" + std::to_string(loops.size()) + " loops)", ms(t0, t1), ms(t1, t2), a == b};
}

Row benchSeparatrices() {
    RectComplex g = buildComplex(buildT(14));
    std::vector<std::pair<TraceState, int>> jobs;
    for (const Singularity& s : g.singularities())
        for (const TraceState& p : g.prongs(s)) jobs.push_back({p, 0});
    auto run = [&](bool serial) {
        std::vector<std::string> hits(jobs.size());
        parallelFor(jobs.size(), [&](size_t i) {
            auto it = g.trace(jobs[i].first, 1 << 15, LeafSide::Left, true);
            hits[i] = it.terminal == TerminalEvent::SingularityHit ? it.singularity : "-";
        }, serial);
        return hits;
    };
    auto t0 = Clock::now();
    auto a = run(true);
    auto t1 = Clock::now();
    auto b = run(false);
    auto t2 = Clock::now();
    return {"separatrix traces (" + std::to_string(jobs.size()) + ")", ms(t0, t1), ms(t1, t2), a == b};
}

Row benchHistograms() {
    flat::SquareSystem F = flat::SquareSystem::buildF(48);
    std::vector<long> seeds;
    for (long m = 0; m < 8; ++m) seeds.push_back(2 + 3 * (m * 97 + 11));
    auto run = [&](bool serial) {
        std::vector<long> firstBin(seeds.size());
        parallelFor(seeds.size(), [&](size_t i) {
            auto h = flat::hittingHistogram(F, Rational(seeds[i], 3 * 1024), 20000, 8);
            firstBin[i] = h.singularLeaf ? -1 : h.bins[0];
        }, serial);
        return firstBin;
    };
    auto t0 = Clock::now();
    auto a = run(true);
    auto t1 = Clock::now();
    auto b = run(false);
    auto t2 = Clock::now();
    return {"hitting histograms (8 x 20000)", ms(t0, t1), ms(t1, t2), a == b};
}

}  // namespace

int main() {
    std::cout << "threads: " << parallelThreads() << "\n\n";
    std::vector<Row> rows = {benchIetBatch(), benchCrossings(), benchSeparatrices(), benchHistograms()};
    std::cout << std::left << std::setw(38) << "kernel" << std::right << std::setw(12) << "serial ms"
              << std::setw(12) << "omp ms" << std::setw(10) << "speedup" << std::setw(12) << "identical"
              << "\n";
    bool allIdentical = true;
    for (const Row& r : rows) {
        std::cout << std::left << std::setw(38) << r.name << std::right << std::fixed
                  << std::setprecision(1) << std::setw(12) << r.serialMs << std::setw(12)
                  << r.parallelMs << std::setw(10) << std::setprecision(2)
                  << (r.parallelMs > 0 ? r.serialMs / r.parallelMs : 0.0) << std::setw(12)
                  << (r.identical ? "yes" : "NO") << "\n";
        allIdentical = allIdentical && r.identical;
    }
    return allIdentical ? 0 : 1;
}
