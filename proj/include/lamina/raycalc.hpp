#ifndef LAMINA_RAYCALC_HPP
#define LAMINA_RAYCALC_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lamina {
namespace ray {

/// A signed letter: the loop around the given Cantor block. `bar` reverses
/// the orientation. In the display alphabet r<i> is the clockwise loop around
/// block 2i-2 and l<i> the counterclockwise loop around block 2i-1.
struct Letter {
    int block;
    bool bar;
    bool operator==(const Letter&) const = default;
};

inline Letter inverse(Letter a) { return {a.block, !a.bar}; }
inline Letter rLetter(int i) { return {2 * i - 2, true}; }
inline Letter lLetter(int i) { return {2 * i - 1, false}; }

using Word = std::vector<Letter>;

Word reverseWord(const Word& w);

struct ConcatResult {
    Word word;
    bool cancelled;  // some letters cancelled during reduction
};

/// Free reduction of the literal concatenation (the product of the two loops
/// concatenated at the basepoint).
ConcatResult concatAtInfinity(const Word& u, const Word& v);
Word reduce(const Word& w);

std::string toStringG(const Word& w);   // "g0 g1' ..."
std::string toStringRL(const Word& w);  // "r1 L1 ..." (capitals are bars)
Word parseWord(const std::string& s);

// ---------------------------------------------------------------------------
// The circular order at infinity.
// ---------------------------------------------------------------------------

enum class Order { Less, Greater, Equal, UnknownAtDepth };

/// Lazily produced infinite reduced word, realized as the increasing prefix
/// union of a word sequence.
struct RayLimit {
    Word prefix;  // as much of the ray as has been produced
    std::string name;
};

/// Dedekind-style cut: decreasing left witnesses, increasing right witnesses.
struct CutRay {
    std::vector<Word> leftWitnesses;
    std::vector<Word> rightWitnesses;
};

/// The transverse order of letter-directions at a vertex, transcribed from
/// the planar embedding: odd blocks descending, block 0, even blocks
/// ascending, each letter immediately followed by its reversal. The same
/// cycle is used at every vertex (the wedge is homogeneous); comparisons are
/// anchored at the direction pointing back toward the basepoint.
class PlanarOrder {
public:
    explicit PlanarOrder(int maxBlock);

    int maxBlock() const { return maxBlock_; }
    int rank(const Letter& a) const;
    int directions() const { return 2 * (maxBlock_ + 1); }

    Order compare(const Word& a, const Word& b) const;
    Order compare(const RayLimit& a, const Word& b, int depth) const;
    Order compare(const Word& a, const RayLimit& b, int depth) const;
    Order compare(const RayLimit& a, const RayLimit& b, int depth) const;
    Order compare(const CutRay& a, const Word& b) const;
    Order compare(const Word& a, const CutRay& b) const;

private:
    // Core comparison of two letter streams; hasMoreA/B tell whether the
    // stream is a finite word (false) or a truncated ray (true).
    Order compareStreams(const Word& a, bool truncA, const Word& b, bool truncB) const;

    int maxBlock_;
};

// ---------------------------------------------------------------------------
// The loop family and the substitution.
// ---------------------------------------------------------------------------

/// r(i): clockwise single-letter loop around block 2i-2; l(i): counter-
/// clockwise around block 2i-1.
std::pair<Word, Word> buildApproachingLoops(int i);

/// The substitution r1 -> r1 l1 R1 r2 r1 L1 R1, r(i) -> r(i+1) for i >= 2,
/// l(i) -> l(i+1), extended to reversals as an anti-homomorphism.
Word substitutionF(const Word& w);

/// alpha(1) = r1, alpha(2k) = alpha(2k-1) l(k) rev(alpha(2k-1)),
/// alpha(2k+1) = alpha(2k) r(k+1) rev(alpha(2k)). Concatenations are checked
/// to reduce trivially.
Word alphaSeq(int k);

/// Prefix of the substitution fixed word of length >= minLen.
Word fixedWordPrefix(int minLen);

/// The two-step family: n interleaved loop sequences built over the given
/// index sequences (gaps must be >= n).
class GammaFamily {
public:
    GammaFamily(int n, std::vector<int> pSeq, std::vector<int> qSeq, int maxJ);
    const Word& gamma(int i, int j) const;  // 1 <= i <= n, 1 <= j <= maxJ
    const Word& alpha(int i, int j) const;
    int n() const { return n_; }
    int maxJ() const { return maxJ_; }
    int p(int k) const { return p_.at(k - 1); }
    int q(int k) const { return q_.at(k - 1); }

private:
    int n_, maxJ_;
    std::vector<int> p_, q_;
    std::vector<std::vector<Word>> gammas_, alphas_;  // [j][i-1]
};

enum class CheckStatus { Verified, Refuted, UnknownAtDepth, Skipped };

struct OrderCheck {
    std::string id;
    std::string lhs, rhs;
    std::string relation;  // "<" or "<="
    CheckStatus status;
};

/// Evaluates the chain inequalities of the monotonicity lemma (bullets on
/// interleaving and ordering) and of the reversed-convergence corollary for
/// the family with the given parameters.
std::vector<OrderCheck> monotonicityCheck(const PlanarOrder& ord, int n, int k, int depth);

struct CrossingResult {
    bool crosses;
    Word witnessPrefix;
};

/// Semi-decision for "the ray crosses the loop": searches prefixes u of the
/// ray with |u| <= searchDepth and tests whether the ray lies strictly
/// between u*loop and u*rev(loop) in the order at infinity. A negative answer
/// is not a disjointness proof.
CrossingResult crossesLoop(const PlanarOrder& ord, const RayLimit& rayWord, const Word& loop,
                           int searchDepth);

}  // namespace ray
}  // namespace lamina

#endif
