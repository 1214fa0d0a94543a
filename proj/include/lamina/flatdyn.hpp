#ifndef LAMINA_FLATDYN_HPP
#define LAMINA_FLATDYN_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lamina/rational.hpp"

namespace lamina {
namespace flat {

struct Point {
    Rational x, y;
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator<(const Point& o) const { return y != o.y ? y < o.y : x < o.x; }
    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

enum class Side : uint8_t { Left, Right, Top, Bottom };

/// A side identification: rotation by pi about `center`, exchanging the two
/// segments of the side on either side of it, covering [lo,hi].
struct Involution {
    Side side;
    Rational center;  // coordinate along the side (y for left/right, x for top/bottom)
    Rational lo, hi;
    std::string name;  // the marked rotation point (p0, p3, a0, ...)
};

/// The unit square with side identifications: the foliation F (left/right
/// identifications only) or the flat sphere (all four sides).
class SquareSystem {
public:
    static SquareSystem buildF(int level);
    static SquareSystem buildSigma(int level);

    bool isSigma() const { return sigma_; }
    int level() const { return level_; }

    const std::vector<Involution>& involutions() const { return invs_; }
    const std::map<std::string, Point>& markedPoints() const { return marked_; }

    /// yn / xn / zn / wn sequences (exact). y(-2)=1, y(-1)=0.
    const Rational& y(int n) const;
    const Rational& x(int n) const;
    Rational z(int n) const { return Rational(1) - x(n); }
    Rational w(int n) const { return Rational(1) - y(n); }

    /// Applies a side identification to a boundary point. Identity off the
    /// identified segments.
    Point identify(const Point& p) const;

    std::optional<std::string> markedName(const Point& p) const;

    std::string svg() const;

private:
    SquareSystem() = default;
    bool sigma_ = false;
    int level_ = 0;
    std::vector<Involution> invs_;
    std::map<std::string, Point> marked_;
    std::vector<Rational> ys_, xs_;  // ys_[n+2] = y(n), xs_[n] = x(n)
};

// ---------------------------------------------------------------------------
// The pseudo-Anosov automorphism: cut into vertical quarters A,B,C,D, scale by
// diag(4, 1/4), rotate B and D by pi, stack C over B over A over D.
// ---------------------------------------------------------------------------

/// Exact image of a point of the closed square. Points on a strip seam have
/// several representatives; the candidate whose image lies in the identified
/// class is chosen deterministically (named marked point preferred, then
/// larger height), which reproduces the singularity-orbit tables.
Point applyPhi(const SquareSystem& sys, const Point& p);

struct OrbitResult {
    std::vector<std::string> names;  // matched marked-point names, step by step
    bool leftTruncation = false;     // orbit left the marked-point table
};

OrbitResult singularOrbit(const SquareSystem& sys, const std::string& markedPoint, int steps);

/// Heights of the horizontal segments forming the saddle connection from the
/// i-th one-pronged singularity to the infinite-pronged one:
/// { j/2^(i+1) : j odd, 0 < j < 2^(i+1) }.
std::set<Rational> dyadicLeafHeights(int i);

struct SeparatrixTrace {
    std::set<Rational> heights;
    bool terminatedAtR = false;  // reached the infinite-pronged point
};

/// Follows the separatrix of the i-th one-pronged singularity through the
/// square until it reaches an identified endpoint. Independent of
/// dyadicLeafHeights by construction.
SeparatrixTrace traceSeparatrix(const SquareSystem& F, int i, int maxSegments = 1 << 16);

// ---------------------------------------------------------------------------
// Leaf flow on F and the induced interval exchange.
// ---------------------------------------------------------------------------

/// Follows the horizontal leaf of F through the side identifications and
/// returns the heights of its successive crossings of the transversal
/// {1/2} x [0,1]. The first crossing reported is the first return after the
/// start. Throws if the leaf runs into a singular point.
std::vector<Rational> transversalReturns(const SquareSystem& F, const Rational& start, int count);

struct IntervalExchange {
    struct Piece {
        Rational lo, hi;     // source interval (between y(n) and y(n+2))
        Rational shift;      // translation
        int index;           // n
    };
    std::vector<Piece> pieces;
    int level;

    /// Exact image. Throws a domain error at breakpoints and at 1/3.
    Rational apply(const Rational& t) const;

    Rational totalSourceLength() const;
    Rational totalImageLength() const;
};

IntervalExchange buildIET(int level);

struct Histogram {
    std::vector<long> bins;
    long total = 0;
    bool singularLeaf = false;  // partial data: the leaf hit a singular point
};

/// Counts the first `returns` crossings of the transversal, binned uniformly.
Histogram hittingHistogram(const SquareSystem& F, const Rational& start, long returns, int bins);

}  // namespace flat
}  // namespace lamina

#endif
