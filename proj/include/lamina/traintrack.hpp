#ifndef LAMINA_TRAINTRACK_HPP
#define LAMINA_TRAINTRACK_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lamina/rational.hpp"

namespace lamina {

using BranchId = int32_t;
using SwitchId = int32_t;

enum class BranchEnd : uint8_t { Start, End };

struct EndRef {
    BranchId branch = -1;
    BranchEnd end = BranchEnd::Start;
    bool operator==(const EndRef&) const = default;
};

struct Branch {
    std::string name;
    SwitchId from = -1;  // switch holding the Start end
    SwitchId to = -1;    // switch holding the End end
};

// A switch carries two ordered lists of branch ends. The order is the
// transverse (bottom-to-top) order used to glue rectangle sides; a loop may
// place both of its ends in the same list. Frontier switches mark where an
// infinite track has been truncated: no switch condition is asserted there
// and leaf traces terminate on reaching them.
struct Switch {
    std::string name;
    std::vector<EndRef> in;
    std::vector<EndRef> out;
    bool frontier = false;
};

struct TrainTrack {
    std::vector<Branch> branches;
    std::vector<Switch> switches;
    std::map<std::string, BranchId> branchByName;
    std::map<std::string, SwitchId> switchByName;

    // Optional annotations used by complexes and covers.
    std::map<std::string, std::string> singularityHint;  // switch name -> label
    std::vector<std::string> designatedCycle;            // bigon cycle, for covers
    std::map<std::string, std::string> metadata;

    BranchId addBranch(const std::string& name);
    SwitchId addSwitch(const std::string& name, bool frontier = false);
    void attach(SwitchId sw, bool incoming, BranchId b, BranchEnd e);

    BranchId branchId(const std::string& name) const;
    SwitchId switchId(const std::string& name) const;
    const Branch& branch(BranchId b) const { return branches.at(b); }

    /// Checks every branch end is referenced by exactly one per-switch list
    /// entry and endpoints agree with from/to. Throws on malformed tracks.
    void validate() const;
};

struct WeightSystem {
    std::vector<Rational> w;  // indexed by BranchId
    const Rational& of(BranchId b) const { return w.at(b); }
};

struct WeightedTrack {
    TrainTrack track;
    WeightSystem weights;
};

/// One step of a train path: a branch together with the direction it is
/// traversed in (forward = Start to End).
struct PathStep {
    BranchId branch;
    bool forward;
    bool operator==(const PathStep&) const = default;
};

using TrainPath = std::vector<PathStep>;

struct SwitchViolation {
    std::string switchName;
    Rational inSum, outSum;
};

/// Empty result iff the weights satisfy the switch condition at every
/// non-frontier switch, exactly.
std::vector<SwitchViolation> checkSwitchConditions(const TrainTrack& t, const WeightSystem& w);

/// True iff consecutive branches meet one-incoming-one-outgoing at a common
/// switch, for some assignment of traversal directions. Unknown branch names
/// throw.
bool isTrainPath(const TrainTrack& t, const std::vector<std::string>& branchNames);
bool isTrainPath(const TrainTrack& t, const TrainPath& path);

/// Resolves an undirected branch-name sequence into a directed path, if the
/// sequence is a train path.
std::optional<TrainPath> resolvePath(const TrainTrack& t, const std::vector<std::string>& branchNames);

// ---------------------------------------------------------------------------
// Builders for the specific tracks.
//
// The infinite tracks are represented by finite truncations: branches with
// index <= depth are present and the cut happens at frontier switches.
// Branch names are part of the public contract ("e1", "b-1", "f2*", ...).
// ---------------------------------------------------------------------------

/// Bigon-plus-chain track: branches e1, e2, b-1, b0..b<depth>, c1..c<depth>,
/// d0..d<depth>, with w(e1)=1/3, w(e2)=2/3, w(b-1)=w(b0)=1,
/// w(bn)=w(cn)=1/2^n and w(dn)=1/2^(n+1). Requires depth >= 2.
WeightedTrack buildT(int depth);

/// The collapsed locally finite track: branches e1*, e2*, b-1*, b0*, b1*,
/// cn*, dn*, f<i>* for |i| <= depth and hn*, with the listed weights
/// (w(f0*)=1, w(f1*)=3/4, w(f-n*)=1/2^n, w(hn*)=1/2^(n+1), ...).
/// Requires depth >= 2.
WeightedTrack buildTStar(int depth);

/// Infinite-genus track: a bigon of weights 1/3 and 2/3 between switches A1
/// and B1, a weight-1/2 monogon on the B1 side, and a chain on the A1 side
/// alternating handle loops q<k> (weight 1/4^k, both ends at one quadrivalent
/// switch) and monogon stems c<j> -> d<j> (loop weight 1/(8*4^j)). All
/// remaining weights are solved from the switch conditions and the solution
/// is verified to be unique at the requested depth. Requires depth >= 1.
WeightedTrack buildT1(int depth);

/// Degree-n cyclic cover along the designated bigon cycle of the base track.
/// Branch b of the cover projects to base branch by stripping the ".i" copy
/// suffix, and weights are pulled back through that projection.
WeightedTrack cyclicCover(const WeightedTrack& base, int n);

/// Strips the copy suffix: name of the base branch covered by `coverName`.
std::string coverProjection(const std::string& coverName);

// ---------------------------------------------------------------------------
// Pants-piece path enumeration.
// ---------------------------------------------------------------------------

enum class PantsPiece { V, U };

struct PiecePath {
    std::vector<std::string> branches;  // branch names in traversal order
    std::string entryBoundary;
    std::string exitBoundary;
    bool selfReturning() const { return entryBoundary == exitBoundary; }
};

/// All maximal train paths through the chosen three-holed-sphere subtrack,
/// with endpoints on its boundary, up to orientation reversal. V is the piece
/// containing the bigon; U is the repeating piece deeper along the chain.
std::vector<PiecePath> enumeratePathsThroughPiece(const WeightedTrack& wt, PantsPiece piece);

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

std::string trackToJson(const WeightedTrack& wt);
std::string trackToDot(const WeightedTrack& wt);
std::string trackToSvg(const WeightedTrack& wt);

}  // namespace lamina

#endif
