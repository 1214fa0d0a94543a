#ifndef LAMINA_CARRYING_HPP
#define LAMINA_CARRYING_HPP

#include <string>
#include <vector>

#include "lamina/rational.hpp"
#include "lamina/traintrack.hpp"

namespace lamina {
namespace carry {

/// The image path of a branch of the finer track in the collapsed track,
/// written in the direction leading away from the bigon.
std::vector<std::string> zetaOf(const std::string& branch);

/// Number of times `starBranch` occurs in zeta(branch).
int occurrences(const std::string& starBranch, const std::string& branch);

/// Induced weights on the collapsed track: for every branch b* the
/// occurrence-weighted sum of the finer weights. Infinite families are
/// summed in closed form after verifying a geometric tail ratio on three
/// consecutive terms. Fails if a tail does not stabilize within the depth.
WeightSystem inducedWeights(const WeightedTrack& tstar, int tailProbeDepth = 48);

/// Translates a train path of the finer track branch-by-branch through zeta.
/// The input must be a valid train path; the output is one on the collapsed
/// track.
std::vector<std::string> xiTranslate(const WeightedTrack& t, const WeightedTrack& tstar,
                                     const std::vector<std::string>& path);

/// The window f(-depth) ... f(depth) of the single train path missed by the
/// translation.
std::vector<std::string> missingPathWindow(int depth);

/// One slab of a preimage stack inside R(f(i)): a pass of a finer branch.
struct StackSlab {
    std::string branch;  // finer branch whose pass this is
    bool ascending;      // direction of the pass along the chain
    Rational height;
};

struct PreimageStack {
    int fIndex;
    std::vector<StackSlab> lower, upper;  // lower: bottom-up; upper: top-down
    Rational lowerSum, upperSum;          // exact closed forms
};

/// The two-stack decomposition of R(f(i)) by carried rectangles; the stacks
/// limit to the single uncovered leaf and their heights sum to the induced
/// weight exactly.
PreimageStack preimageStack(int fIndex, int listDepth = 12);

}  // namespace carry
}  // namespace lamina

#endif
