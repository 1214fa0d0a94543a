#include "lamina/raycalc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lamina {
namespace ray {

Word reverseWord(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

Word reduce(const Word& w) {
    Word out;
    for (const Letter& a : w) {
        if (!out.empty() && out.back() == inverse(a)) out.pop_back();
        else out.push_back(a);
    }
    return out;
}

ConcatResult concatAtInfinity(const Word& u, const Word& v) {
    Word cat = u;
    cat.insert(cat.end(), v.begin(), v.end());
    Word red = reduce(cat);
    return {red, red.size() != cat.size()};
}

std::string toStringG(const Word& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << 'g' << w[i].block;
        if (w[i].bar) os << '\'';
    }
    return os.str();
}

std::string toStringRL(const Word& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        const Letter& a = w[i];
        if (a.block % 2 == 0) {
            // r(i) has bar=true by convention
            os << (a.bar ? 'r' : 'R') << (a.block / 2 + 1);
        } else {
            os << (a.bar ? 'L' : 'l') << ((a.block + 1) / 2);
        }
    }
    return os.str();
}

Word parseWord(const std::string& s) {
    Word out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) {
        bool prime = tok.back() == '\'';
        if (prime) tok.pop_back();
        if (tok.size() < 2) throw std::domain_error("parseWord: bad token " + tok);
        char c = tok[0];
        int idx = std::stoi(tok.substr(1));
        Letter a{};
        if (c == 'g') a = {idx, prime};
        else if (c == 'r') a = rLetter(idx);
        else if (c == 'R') a = inverse(rLetter(idx));
        else if (c == 'l') a = lLetter(idx);
        else if (c == 'L') a = inverse(lLetter(idx));
        else throw std::domain_error("parseWord: bad token " + tok);
        if (c != 'g' && prime) a = inverse(a);
        out.push_back(a);
    }
    Word red = reduce(out);
    if (red.size() != out.size()) throw std::domain_error("parseWord: word is not reduced");
    return out;
}

// ---------------------------------------------------------------------------
// Order.
// ---------------------------------------------------------------------------

PlanarOrder::PlanarOrder(int maxBlock) : maxBlock_(maxBlock) {
    if (maxBlock < 0) throw std::domain_error("PlanarOrder: need at least block 0");
}

int PlanarOrder::rank(const Letter& a) const {
    if (a.block < 0 || a.block > maxBlock_)
        throw std::domain_error("PlanarOrder: block beyond depth: " + std::to_string(a.block));
    // odd blocks descending, then block 0, then even blocks ascending;
    // each base letter immediately followed by its reversal.
    int odds = maxBlock_ / 2;       // number of odd blocks <= maxBlock_ ... recomputed below
    odds = (maxBlock_ + 1) / 2;
    int pairIndex;
    if (a.block % 2 == 1) pairIndex = (odds - 1) - (a.block - 1) / 2;
    else pairIndex = odds + a.block / 2;
    return 2 * pairIndex + (a.bar ? 1 : 0);
}

Order PlanarOrder::compareStreams(const Word& a, bool truncA, const Word& b, bool truncB) const {
    size_t c = 0;
    while (c < a.size() && c < b.size() && a[c] == b[c]) ++c;
    if (c == a.size() && c == b.size()) {
        if (truncA || truncB) return Order::UnknownAtDepth;
        return Order::Equal;
    }
    const long n2 = 2L * directions();  // doubled positions keep everything integral
    bool rootCut = (c == 0);
    long anchor2 = rootCut ? 0 : 2L * rank(inverse(a[c - 1]));

    // Position after cutting the cyclic order at the anchor. The terminal
    // cusp of a finite word sits at the cut toward the limit ray (absolute
    // doubled position -1), which is where every loop returns to the
    // basepoint.
    auto dirPos = [&](const Word& w, bool trunc) -> std::optional<long> {
        if (c < w.size()) {
            long p = ((2L * rank(w[c]) - anchor2) % n2 + n2) % n2;
            return p;
        }
        if (trunc) return std::nullopt;
        long p = ((-1 - anchor2) % n2 + n2) % n2;
        return p;
    };
    auto pa = dirPos(a, truncA);
    auto pb = dirPos(b, truncB);
    if (!pa || !pb) return Order::UnknownAtDepth;
    if (*pa < *pb) return Order::Less;
    if (*pa > *pb) return Order::Greater;
    return Order::Equal;
}

Order PlanarOrder::compare(const Word& a, const Word& b) const {
    return compareStreams(a, false, b, false);
}

Order PlanarOrder::compare(const RayLimit& a, const Word& b, int depth) const {
    Word pa(a.prefix.begin(), a.prefix.begin() + std::min<size_t>(a.prefix.size(), depth));
    return compareStreams(pa, true, b, false);
}

Order PlanarOrder::compare(const Word& a, const RayLimit& b, int depth) const {
    Order o = compare(b, a, depth);
    if (o == Order::Less) return Order::Greater;
    if (o == Order::Greater) return Order::Less;
    return o;
}

Order PlanarOrder::compare(const RayLimit& a, const RayLimit& b, int depth) const {
    Word pa(a.prefix.begin(), a.prefix.begin() + std::min<size_t>(a.prefix.size(), depth));
    Word pb(b.prefix.begin(), b.prefix.begin() + std::min<size_t>(b.prefix.size(), depth));
    return compareStreams(pa, true, pb, true);
}

Order PlanarOrder::compare(const CutRay& a, const Word& b) const {
    for (const Word& lw : a.leftWitnesses)
        if (compare(b, lw) == Order::Greater) return Order::Less;  // b above a left witness: cut < b
    for (const Word& rw : a.rightWitnesses)
        if (compare(b, rw) == Order::Less) return Order::Greater;
    return Order::UnknownAtDepth;
}

Order PlanarOrder::compare(const Word& a, const CutRay& b) const {
    Order o = compare(b, a);
    if (o == Order::Less) return Order::Greater;
    if (o == Order::Greater) return Order::Less;
    return o;
}

// ---------------------------------------------------------------------------
// Loops, substitution, families.
// ---------------------------------------------------------------------------

std::pair<Word, Word> buildApproachingLoops(int i) {
    if (i < 1) throw std::domain_error("buildApproachingLoops: i must be >= 1");
    return {Word{rLetter(i)}, Word{lLetter(i)}};
}

Word substitutionF(const Word& w) {
    static const Word r1img = [] {
        Word v;
        v.push_back(rLetter(1));
        v.push_back(lLetter(1));
        v.push_back(inverse(rLetter(1)));
        v.push_back(rLetter(2));
        v.push_back(rLetter(1));
        v.push_back(inverse(lLetter(1)));
        v.push_back(inverse(rLetter(1)));
        return v;
    }();
    Word out;
    for (const Letter& a : w) {
        if (a.block < 0) throw std::domain_error("substitutionF: letter outside the loop alphabet");
        if (a.block == 0) {
            // r1 (bar=true by the display convention) or its reversal
            const Word& img = r1img;
            if (a == rLetter(1)) out.insert(out.end(), img.begin(), img.end());
            else {
                Word rev = reverseWord(img);
                out.insert(out.end(), rev.begin(), rev.end());
            }
        } else {
            out.push_back({a.block + 2, a.bar});
        }
    }
    Word red = reduce(out);
    if (red.size() != out.size())
        throw std::logic_error("substitutionF: image failed to be literally reduced");
    return out;
}

namespace {
Word concatNoCancel(const Word& u, const Word& v, const char* what) {
    ConcatResult r = concatAtInfinity(u, v);
    if (r.cancelled) throw std::logic_error(std::string("unexpected cancellation in ") + what);
    return r.word;
}
}  // namespace

Word alphaSeq(int k) {
    if (k < 1) throw std::domain_error("alphaSeq: k must be >= 1");
    Word cur{rLetter(1)};
    for (int j = 2; j <= k; ++j) {
        Letter mid = (j % 2 == 0) ? lLetter(j / 2) : rLetter((j + 1) / 2);
        Word next = concatNoCancel(cur, Word{mid}, "alphaSeq");
        next = concatNoCancel(next, reverseWord(cur), "alphaSeq");
        cur = std::move(next);
    }
    return cur;
}

Word fixedWordPrefix(int minLen) {
    Word w{rLetter(1)};
    while ((int)w.size() < minLen) {
        Word next = substitutionF(w);
        // fixed word: each iterate extends the previous one
        for (size_t i = 0; i < w.size(); ++i)
            if (!(next[i] == w[i])) throw std::logic_error("fixedWordPrefix: iterate is not an extension");
        w = std::move(next);
    }
    return w;
}

GammaFamily::GammaFamily(int n, std::vector<int> pSeq, std::vector<int> qSeq, int maxJ)
    : n_(n), maxJ_(maxJ), p_(std::move(pSeq)), q_(std::move(qSeq)) {
    if (n < 1) throw std::domain_error("GammaFamily: n must be >= 1");
    int needK = maxJ / 2 + 2;
    if ((int)p_.size() < needK || (int)q_.size() < needK)
        throw std::domain_error("GammaFamily: index sequences too short");
    for (size_t k = 1; k < p_.size(); ++k) {
        if (p_[k] - p_[k - 1] < n || q_[k] - q_[k - 1] < n)
            throw std::domain_error("GammaFamily: index gaps must be >= n");
    }
    gammas_.assign(maxJ + 1, {});
    alphas_.assign(maxJ + 1, {});
    for (int j = 1; j <= maxJ; ++j) {
        std::vector<Word> alpha(n), gamma(n);
        if (j == 1) {
            for (int i = 1; i <= n; ++i) alpha[i - 1] = Word{rLetter(q_[0] + i - 1)};
        } else if (j % 2 == 0) {
            int k = j / 2;
            for (int i = 0; i <= n - 1; ++i) {
                const Word& g = gammas_[j - 1][n - i - 1];
                Word a = concatNoCancel(g, Word{lLetter(p_[k - 1] + i)}, "gammaFamily");
                alpha[n - i - 1] = concatNoCancel(a, reverseWord(g), "gammaFamily");
            }
        } else {
            int k = (j + 1) / 2;
            for (int i = 1; i <= n; ++i) {
                const Word& g = gammas_[j - 1][i - 1];
                Word a = concatNoCancel(g, Word{rLetter(q_[k - 1] + i - 1)}, "gammaFamily");
                alpha[i - 1] = concatNoCancel(a, reverseWord(g), "gammaFamily");
            }
        }
        if (j % 2 == 0) {
            gamma[n - 1] = alpha[n - 1];
            for (int i = n - 1; i >= 1; --i) gamma[i - 1] = concatNoCancel(alpha[i - 1], gamma[i], "gammaFamily");
        } else {
            gamma[0] = alpha[0];
            for (int i = 2; i <= n; ++i) gamma[i - 1] = concatNoCancel(alpha[i - 1], gamma[i - 2], "gammaFamily");
        }
        // prefix-chain property: gamma(i,j) extends gamma(i,j-2)-ish through
        // the alternating construction; asserted where literal.
        alphas_[j] = std::move(alpha);
        gammas_[j] = std::move(gamma);
    }
}

const Word& GammaFamily::gamma(int i, int j) const { return gammas_.at(j).at(i - 1); }
const Word& GammaFamily::alpha(int i, int j) const { return alphas_.at(j).at(i - 1); }

// ---------------------------------------------------------------------------
// Monotonicity checks.
// ---------------------------------------------------------------------------

namespace {

struct Ineq {
    std::string id;
    Word lhs, rhs;
    std::string lhsName, rhsName;
    bool allowEqual;
};

void chain(std::vector<Ineq>& out, const std::string& id,
           const std::vector<std::pair<Word, std::string>>& terms,
           const std::vector<bool>& allowEq) {
    for (size_t i = 0; i + 1 < terms.size(); ++i) {
        out.push_back({id + "#" + std::to_string(i), terms[i].first, terms[i + 1].first,
                       terms[i].second, terms[i + 1].second, allowEq.at(i)});
    }
}

}  // namespace

std::vector<OrderCheck> monotonicityCheck(const PlanarOrder& ord, int n, int k, int depth) {
    (void)depth;
    std::vector<int> p, q;
    for (int i = 0; i < k + 3; ++i) {
        p.push_back(1 + i * n);
        q.push_back(1 + i * n);
    }
    GammaFamily fam(n, p, q, 2 * k + 1);

    auto lbar = [&](int m) { return reverseWord(Word{lLetter(m)}); };
    auto rbar = [&](int m) { return reverseWord(Word{rLetter(m)}); };

    std::vector<Ineq> ineqs;
    for (int kk = 1; kk <= k; ++kk) {
        for (int i = 1; i <= n; ++i) {
            std::string tag = "monotone(2)[i=" + std::to_string(i) + ",k=" + std::to_string(kk) + "]";
            std::vector<std::pair<Word, std::string>> t;
            std::vector<bool> eq;
            t.push_back({fam.gamma(i, 2 * kk - 1), "g(" + std::to_string(i) + "," + std::to_string(2 * kk - 1) + ")"});
            t.push_back({fam.gamma(i, 2 * kk), "g(i,2k)"});
            eq.push_back(false);
            t.push_back({fam.alpha(i, 2 * kk), "a(i,2k)"});
            eq.push_back(true);
            t.push_back({reverseWord(fam.alpha(i, 2 * kk)), "rev a(i,2k)"});
            eq.push_back(false);
            if (kk > 1) {
                t.push_back({fam.gamma(i, 2 * kk - 2), "g(i,2k-2)"});
                eq.push_back(false);
            }
            chain(ineqs, tag, t, eq);

            if (2 * kk + 1 <= fam.maxJ()) {
                std::string tag2 = "monotone(2odd)[i=" + std::to_string(i) + ",k=" + std::to_string(kk) + "]";
                std::vector<std::pair<Word, std::string>> t2;
                std::vector<bool> eq2;
                t2.push_back({fam.gamma(i, 2 * kk - 1), "g(i,2k-1)"});
                t2.push_back({reverseWord(fam.alpha(i, 2 * kk + 1)), "rev a(i,2k+1)"});
                eq2.push_back(false);
                t2.push_back({fam.alpha(i, 2 * kk + 1), "a(i,2k+1)"});
                eq2.push_back(false);
                t2.push_back({fam.gamma(i, 2 * kk + 1), "g(i,2k+1)"});
                eq2.push_back(true);
                t2.push_back({fam.gamma(i, 2 * kk), "g(i,2k)"});
                eq2.push_back(false);
                chain(ineqs, tag2, t2, eq2);
            }
        }
        // bullet (4), even subscript
        {
            std::string tag = "monotone(4even)[k=" + std::to_string(kk) + "]";
            std::vector<std::pair<Word, std::string>> t;
            std::vector<bool> eq;
            t.push_back({lbar(fam.p(kk) + n), "lbar(p_k+n)"});
            for (int i = 1; i <= n; ++i) {
                t.push_back({fam.alpha(i, 2 * kk), "a(i,2k)"});
                eq.push_back(false);
                t.push_back({reverseWord(fam.alpha(i, 2 * kk)), "rev a(i,2k)"});
                eq.push_back(false);
            }
            t.push_back({rbar(fam.q(kk + 1)), "rbar(q_{k+1})"});
            eq.push_back(false);
            chain(ineqs, tag, t, eq);

            std::string tagG = "monotone(4even-g)[k=" + std::to_string(kk) + "]";
            std::vector<std::pair<Word, std::string>> tg;
            std::vector<bool> eqg;
            tg.push_back({lbar(fam.p(kk) + n), "lbar(p_k+n)"});
            for (int i = 1; i <= n; ++i) {
                tg.push_back({fam.gamma(i, 2 * kk), "g(i,2k)"});
                eqg.push_back(false);
            }
            for (int i = n; i >= 1; --i) {
                tg.push_back({reverseWord(fam.gamma(i, 2 * kk)), "rev g(i,2k)"});
                eqg.push_back(false);
            }
            tg.push_back({rbar(fam.q(kk + 1)), "rbar(q_{k+1})"});
            eqg.push_back(false);
            chain(ineqs, tagG, tg, eqg);
        }
        // bullet (4), odd subscript
        {
            std::string tag = "monotone(4odd)[k=" + std::to_string(kk) + "]";
            std::vector<std::pair<Word, std::string>> t;
            std::vector<bool> eq;
            t.push_back({lbar(fam.p(kk)), "lbar(p_k)"});
            for (int i = 1; i <= n; ++i) {
                t.push_back({reverseWord(fam.alpha(i, 2 * kk - 1)), "rev a(i,2k-1)"});
                eq.push_back(false);
                t.push_back({fam.alpha(i, 2 * kk - 1), "a(i,2k-1)"});
                eq.push_back(false);
            }
            t.push_back({rbar(fam.q(kk) + n), "rbar(q_k+n)"});
            eq.push_back(false);
            chain(ineqs, tag, t, eq);

            std::string tagG = "monotone(4odd-g)[k=" + std::to_string(kk) + "]";
            std::vector<std::pair<Word, std::string>> tg;
            std::vector<bool> eqg;
            tg.push_back({lbar(fam.p(kk)), "lbar(p_k)"});
            for (int i = n; i >= 1; --i) {
                tg.push_back({reverseWord(fam.gamma(i, 2 * kk - 1)), "rev g(i,2k-1)"});
                eqg.push_back(false);
            }
            for (int i = 1; i <= n; ++i) {
                tg.push_back({fam.gamma(i, 2 * kk - 1), "g(i,2k-1)"});
                eqg.push_back(false);
            }
            tg.push_back({rbar(fam.q(kk) + n), "rbar(q_k+n)"});
            eqg.push_back(false);
            chain(ineqs, tagG, tg, eqg);
        }
        // reversed-convergence corollary
        for (int i = 1; i <= n; ++i) {
            if (2 * kk + 1 <= fam.maxJ()) {
                std::string tag = "revconv(odd)[i=" + std::to_string(i) + ",k=" + std::to_string(kk) + "]";
                std::vector<std::pair<Word, std::string>> t;
                std::vector<bool> eq;
                t.push_back({fam.gamma(1, 2 * kk - 1), "g(1,2k-1)"});
                t.push_back({reverseWord(fam.gamma(i, 2 * kk + 1)), "rev g(i,2k+1)"});
                eq.push_back(false);
                t.push_back({reverseWord(fam.gamma(1, 2 * kk + 1)), "rev g(1,2k+1)"});
                eq.push_back(true);
                t.push_back({fam.gamma(1, 2 * kk + 1), "g(1,2k+1)"});
                eq.push_back(false);
                chain(ineqs, tag, t, eq);
            }
            if (kk > 1) {
                std::string tag = "revconv(even)[i=" + std::to_string(i) + ",k=" + std::to_string(kk) + "]";
                std::vector<std::pair<Word, std::string>> t;
                std::vector<bool> eq;
                t.push_back({fam.gamma(n, 2 * kk), "g(n,2k)"});
                t.push_back({reverseWord(fam.gamma(n, 2 * kk)), "rev g(n,2k)"});
                eq.push_back(false);
                t.push_back({reverseWord(fam.gamma(i, 2 * kk)), "rev g(i,2k)"});
                eq.push_back(true);
                t.push_back({fam.gamma(n, 2 * kk - 2), "g(n,2k-2)"});
                eq.push_back(false);
                chain(ineqs, tag, t, eq);
            }
        }
    }

    std::vector<OrderCheck> out;
    for (const Ineq& q2 : ineqs) {
        Order o = ord.compare(q2.lhs, q2.rhs);
        CheckStatus st;
        if (o == Order::Less || (q2.allowEqual && o == Order::Equal)) st = CheckStatus::Verified;
        else if (o == Order::UnknownAtDepth) st = CheckStatus::UnknownAtDepth;
        else st = CheckStatus::Refuted;
        out.push_back({q2.id, q2.lhsName, q2.rhsName, q2.allowEqual ? "<=" : "<", st});
    }
    return out;
}

CrossingResult crossesLoop(const PlanarOrder& ord, const RayLimit& rayWord, const Word& loop,
                           int searchDepth) {
    if (loop.empty()) throw std::domain_error("crossesLoop: empty loop");
    if (reduce(loop).size() != loop.size()) throw std::domain_error("crossesLoop: loop not reduced");
    if (loop.size() > 1 && loop.front() == inverse(loop.back()))
        throw std::domain_error("crossesLoop: loop not cyclically reduced");
    // a power traces the same curve as its primitive root
    for (size_t period = 1; period < loop.size(); ++period) {
        if (loop.size() % period) continue;
        bool periodic = true;
        for (size_t i = period; i < loop.size() && periodic; ++i)
            periodic = loop[i] == loop[i - period];
        if (periodic) return crossesLoop(ord, rayWord, Word(loop.begin(), loop.begin() + period), searchDepth);
    }
    auto sharedPrefix = [](const Word& u, const Word& v) {
        size_t c = 0;
        while (c < u.size() && c < v.size() && u[c] == v[c]) ++c;
        return c;
    };
    int maxPrefix = std::min<int>(searchDepth, (int)rayWord.prefix.size());
    for (int len = 0; len <= maxPrefix; ++len) {
        Word u(rayWord.prefix.begin(), rayWord.prefix.begin() + len);
        Word w1 = reduce(concatAtInfinity(u, loop).word);
        Word w2 = reduce(concatAtInfinity(u, reverseWord(loop)).word);
        // Lifts running along the ray deeper than the concatenation itself
        // are tangential, not transverse; their endpoint comparisons carry no
        // linking information.
        size_t bound = u.size() + loop.size();
        if (sharedPrefix(w1, rayWord.prefix) >= bound || sharedPrefix(w2, rayWord.prefix) >= bound)
            continue;
        Order a = ord.compare(rayWord, w1, (int)rayWord.prefix.size());
        Order b = ord.compare(rayWord, w2, (int)rayWord.prefix.size());
        bool between = (a == Order::Greater && b == Order::Less) ||
                       (a == Order::Less && b == Order::Greater);
        if (between) return {true, u};
    }
    return {false, {}};
}

}  // namespace ray
}  // namespace lamina
