#ifndef LAMINA_RECTCOMPLEX_HPP
#define LAMINA_RECTCOMPLEX_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lamina/traintrack.hpp"

namespace lamina {

/// Exact height with a formal infinitesimal offset: q + k*eps, k in {-1,0,1}.
/// Offset traces follow the regular leaf infinitesimally to one side of a
/// singular leaf; they never terminate at singular points, they brush them.
struct EpsHeight {
    Rational q;
    int k = 0;
    bool operator==(const EpsHeight& o) const { return k == o.k && q == o.q; }
};

inline bool epsLess(const EpsHeight& a, const EpsHeight& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.k < b.k;
}

struct Slot {
    BranchId branch;
    BranchEnd end;
    bool flipped;  // gluing reverses the vertical coordinate
    Rational lo, hi;
};

struct SwInterval {
    SwitchId sw;
    Rational len;
    std::vector<Slot> inFace, outFace;  // bottom-to-top
    bool frontier;
};

struct Singularity {
    SwitchId sw;
    Rational height;
    std::string name;
    int prongs;
};

enum class Dir : uint8_t { ToEnd, ToStart };
enum class LeafSide : uint8_t { Left, Right };

struct TraceState {
    BranchId branch;
    EpsHeight h;
    Dir dir;
    bool operator==(const TraceState& o) const {
        return branch == o.branch && dir == o.dir && h == o.h;
    }
};

enum class TerminalEvent : uint8_t { SingularityHit, FrontierHit, StepBudgetExhausted, ClosedUp };

struct LeafStep {
    BranchId branch;
    EpsHeight height;  // constant across the rectangle
    Dir dir;
};

struct BrushEvent {
    std::string singularity;
    int side;       // sign of the eps offset at the brushed crossing
    int stepIndex;  // index into steps after which the brush occurred
    SwitchId sw;
    Rational height;
};

struct LeafItinerary {
    std::vector<LeafStep> steps;
    TerminalEvent terminal;
    std::string singularity;  // set on SingularityHit
    std::vector<BrushEvent> brushes;
};

struct SaddleConnection {
    std::string from, to;
    std::vector<std::string> branches;  // rectangles traversed, in order
};

struct BoundaryPath {
    // Canonical identity of the singular leaf: its least brushed crossing.
    std::string key;
    std::vector<std::string> singularityChain;  // brushed singularities, in order
    std::vector<std::string> branchWindow;      // branches traversed, in order
};

class RectComplex {
public:
    explicit RectComplex(WeightedTrack wt);

    const WeightedTrack& weighted() const { return wt_; }
    const TrainTrack& track() const { return wt_.track; }
    const std::vector<Singularity>& singularities() const { return sings_; }
    const SwInterval& interval(SwitchId s) const { return intervals_.at(s); }

    const Rational& height(BranchId b) const { return wt_.weights.of(b); }
    std::optional<Singularity> singularityByName(const std::string& name) const;

    /// One step of the leaf flow. Returns the next state or a terminal event.
    /// In leaf mode an exact hit on a singular point continues to the side
    /// given by `choice`; in separatrix mode it terminates.
    struct StepResult {
        std::optional<TraceState> next;
        std::optional<TerminalEvent> terminal;
        std::string singularity;
        std::optional<BrushEvent> brush;
    };
    StepResult step(const TraceState& s, LeafSide choice, bool stopAtSingularity) const;

    LeafItinerary trace(TraceState start, int maxSteps, LeafSide choice = LeafSide::Left,
                        bool stopAtSingularity = false) const;

    /// All prongs (separatrix germs) of a singularity, heading away from it.
    std::vector<TraceState> prongs(const Singularity& s) const;

    std::vector<SaddleConnection> saddleConnectionCensus(int maxSteps = (1 << 16)) const;

    /// Interior heights at which a saddle connection crosses each rectangle.
    std::map<std::string, std::vector<Rational>> connectionHeights(const SaddleConnection& sc) const;

    std::vector<BoundaryPath> boundaryPaths(int depth) const;

    /// Finite-depth accumulation surrogate: every subpath of `b` of length
    /// <= subpathLength occurs in `a`.
    static bool accumulates(const std::vector<std::string>& a, const std::vector<std::string>& b,
                            int subpathLength);

    std::string itineraryToJson(const LeafItinerary& it) const;
    std::string svg() const;

private:
    friend RectComplex unzip(const RectComplex&, const std::vector<SaddleConnection>&);

    struct SlotRef {
        SwitchId sw;
        bool inFace;
        int idx;
    };
    const Slot& slotAt(const SlotRef& r) const {
        const SwInterval& iv = intervals_[r.sw];
        return r.inFace ? iv.inFace[r.idx] : iv.outFace[r.idx];
    }

    struct RationalLess {
        bool operator()(const Rational& a, const Rational& b) const { return a < b; }
    };
    WeightedTrack wt_;
    std::vector<SwInterval> intervals_;
    std::vector<Singularity> sings_;
    mutable std::map<SwitchId, std::map<Rational, int, RationalLess>> singAt_;
    std::vector<std::array<SlotRef, 2>> slotOf_;  // per branch: [Start, End]
};

RectComplex buildComplex(const WeightedTrack& wt);

/// Cuts the complex open along the given saddle connections and returns the
/// resulting complex (pass-through switches merged away). Connections must
/// exist in the complex.
RectComplex unzip(const RectComplex& g, const std::vector<SaddleConnection>& connections);

/// Structural comparison around the bigon anchor, out to a combinatorial
/// radius; weights must match exactly.
bool complexesIsomorphic(const RectComplex& a, const RectComplex& b, int radius);

/// Same weighted track with all weights scaled by `factor`.
WeightedTrack scaleWeights(const WeightedTrack& wt, const Rational& factor);

}  // namespace lamina

#endif
