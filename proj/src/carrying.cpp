#include "lamina/carrying.hpp"

#include <algorithm>
#include <stdexcept>

namespace lamina {
namespace carry {

namespace {

std::string fstar(int i) { return "f" + std::to_string(i) + "*"; }

int parseIndex(const std::string& name, char prefix, bool star) {
    if (name.empty() || name[0] != prefix) return INT32_MIN;
    std::string body = name.substr(1);
    if (star) {
        if (body.empty() || body.back() != '*') return INT32_MIN;
        body.pop_back();
    } else if (!body.empty() && body.back() == '*') {
        return INT32_MIN;
    }
    try {
        size_t used = 0;
        int v = std::stoi(body, &used);
        if (used != body.size()) return INT32_MIN;
        return v;
    } catch (...) {
        return INT32_MIN;
    }
}

Rational pow2inv(int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r = r * Rational(1, 2);
    return r;
}

}  // namespace

std::vector<std::string> zetaOf(const std::string& branch) {
    if (branch == "e1") return {"e1*"};
    if (branch == "e2") return {"e2*"};
    if (branch == "b-1") return {"b-1*"};
    if (branch == "b0") return {"b0*"};
    if (branch == "b1") return {"b1*", fstar(0)};
    int dn = parseIndex(branch, 'd', false);
    if (dn != INT32_MIN && dn >= 0) return {"d" + std::to_string(dn) + "*"};
    int cn = parseIndex(branch, 'c', false);
    if (cn != INT32_MIN && cn >= 1) {
        if (cn == 1 || cn % 2 == 0) return {"c" + std::to_string(cn) + "*"};
        return {fstar(-cn + 1), "c" + std::to_string(cn) + "*"};
    }
    int bn = parseIndex(branch, 'b', false);
    if (bn != INT32_MIN && bn >= 2) {
        std::vector<std::string> out;
        if (bn % 2 == 0) {
            out.push_back(fstar(bn - 1));
            out.push_back("h" + std::to_string(bn - 1) + "*");
            for (int i = bn - 1; i >= -bn + 1; --i) out.push_back(fstar(i));
        } else {
            out.push_back("h" + std::to_string(bn - 1) + "*");
            for (int i = -bn + 2; i <= bn - 1; ++i) out.push_back(fstar(i));
        }
        return out;
    }
    throw std::domain_error("zetaOf: unknown branch " + branch);
}

int occurrences(const std::string& starBranch, const std::string& branch) {
    int count = 0;
    for (const std::string& s : zetaOf(branch))
        if (s == starBranch) ++count;
    return count;
}

WeightSystem inducedWeights(const WeightedTrack& tstar, int tailProbeDepth) {
    const TrainTrack& ts = tstar.track;
    // Finer-track weights.
    auto wOf = [](const std::string& name) -> Rational {
        if (name == "e1") return Rational(1, 3);
        if (name == "e2") return Rational(2, 3);
        if (name == "b-1" || name == "b0") return Rational(1);
        int n;
        if ((n = parseIndex(name, 'b', false)) != INT32_MIN) return pow2inv(n);
        if ((n = parseIndex(name, 'c', false)) != INT32_MIN) return pow2inv(n);
        if ((n = parseIndex(name, 'd', false)) != INT32_MIN) return pow2inv(n + 1);
        throw std::domain_error("inducedWeights: unknown finer branch " + name);
    };

    WeightSystem out;
    out.w.assign(ts.branches.size(), Rational(0));
    for (BranchId b = 0; b < (BranchId)ts.branches.size(); ++b) {
        const std::string& target = ts.branches[b].name;
        Rational sum(0);
        // Finite contributors: the named low branches and the c/d families
        // (each c_n/d_n occurs in exactly one zeta image besides the b-chain).
        for (const std::string& fb : {"e1", "e2", "b-1", "b0", "b1"})
            sum += Rational(occurrences(target, fb)) * wOf(fb);
        // c_n and d_n contribute to their own stars and (odd n) to f(-n+1).
        // Their indices are bounded by the target name, so probe the range.
        for (int nn = 0; nn <= tailProbeDepth; ++nn) {
            if (nn >= 1) {
                int o = occurrences(target, "c" + std::to_string(nn));
                if (o) sum += Rational(o) * pow2inv(nn);
            }
            int od = occurrences(target, "d" + std::to_string(nn));
            if (od) sum += Rational(od) * pow2inv(nn + 1);
        }
        // The b-chain: terms t(n) = occ * 2^-n. The profile stabilizes; verify
        // a geometric ratio of 1/2 on three consecutive terms and close the
        // tail in exact form.
        std::vector<Rational> terms;
        for (int nn = 2; nn <= tailProbeDepth + 8; ++nn)
            terms.push_back(Rational(occurrences(target, "b" + std::to_string(nn))) * pow2inv(nn));
        int stab = tailProbeDepth - 2;  // index into terms where the tail starts (n = tailProbeDepth)
        Rational halfR(1, 2);
        bool tailOk = true;
        for (int j = stab; j < stab + 3; ++j) {
            if (terms[j] == Rational(0) || terms[j + 1] != terms[j] * halfR) tailOk = false;
        }
        for (int j = 0; j < stab; ++j) sum += terms[j];
        if (tailOk) {
            sum += sumGeometricTail({terms[stab], halfR});
        } else {
            bool allZero = true;
            for (int j = stab; j < stab + 4; ++j) allZero = allZero && terms[j] == Rational(0);
            if (!allZero)
                throw std::domain_error("inducedWeights: no geometric tail for " + target);
        }
        out.w[b] = sum;
    }
    return out;
}

namespace {

// Switch of the finer track whose image the stored zeta word starts at:
// the words are written in the direction leading away from the bigon.
std::string zetaWrittenFrom(const std::string& branch) {
    if (branch == "e1" || branch == "e2") return "B";
    if (branch == "b-1") return "A";
    if (branch == "b0") return "s1";
    int n;
    if ((n = parseIndex(branch, 'b', false)) != INT32_MIN) return "s" + std::to_string(n);
    if ((n = parseIndex(branch, 'c', false)) != INT32_MIN) return "s" + std::to_string(n);
    if ((n = parseIndex(branch, 'd', false)) != INT32_MIN) return "t" + std::to_string(n);
    throw std::domain_error("zetaWrittenFrom: unknown branch " + branch);
}

}  // namespace

std::vector<std::string> xiTranslate(const WeightedTrack& t, const WeightedTrack& tstar,
                                     const std::vector<std::string>& path) {
    if (path.empty()) return {};
    auto resolved = resolvePath(t.track, path);
    if (!resolved) throw std::domain_error("xiTranslate: input is not a train path");
    std::vector<std::string> out;
    for (const PathStep& st : *resolved) {
        const Branch& br = t.track.branches[st.branch];
        std::vector<std::string> block = zetaOf(br.name);
        SwitchId startSw = st.forward ? br.from : br.to;
        bool asWritten = t.track.switches[startSw].name == zetaWrittenFrom(br.name);
        if (br.from == br.to) asWritten = true;  // loops: single-branch blocks
        if (asWritten) out.insert(out.end(), block.begin(), block.end());
        else out.insert(out.end(), block.rbegin(), block.rend());
    }
    if (!isTrainPath(tstar.track, out))
        throw std::logic_error("xiTranslate: image is not a train path on the collapsed track");
    return out;
}

std::vector<std::string> missingPathWindow(int depth) {
    if (depth < 1) throw std::domain_error("missingPathWindow: depth must be >= 1");
    std::vector<std::string> out;
    for (int i = -depth; i <= depth; ++i) out.push_back(fstar(i));
    return out;
}

PreimageStack preimageStack(int fIndex, int listDepth) {
    PreimageStack st;
    st.fIndex = fIndex;
    // Ascending and descending passes of the b-chain (and, for negative
    // indices, the odd c-stems) through the corridor f(fIndex).
    auto passes = [&](const std::string& finer, const std::vector<std::string>& zeta) {
        // Ascending passes head up the chain (toward a hairpin or the next
        // corridor); descending passes head back down.
        std::vector<bool> asc;
        for (size_t k = 0; k < zeta.size(); ++k) {
            if (zeta[k] != fstar(fIndex)) continue;
            bool ascending = false;
            if (k + 1 < zeta.size() &&
                (zeta[k + 1] == fstar(fIndex + 1) || zeta[k + 1][0] == 'h'))
                ascending = true;
            if (k > 0 && (zeta[k - 1] == fstar(fIndex - 1) || zeta[k - 1][0] == 'b'))
                ascending = true;
            asc.push_back(ascending);
        }
        (void)finer;
        return asc;
    };
    std::vector<std::pair<std::string, bool>> slabs;  // (branch, ascending)
    for (int nn = 2; nn <= listDepth; ++nn) {
        std::string bn = "b" + std::to_string(nn);
        for (bool a : passes(bn, zetaOf(bn))) slabs.push_back({bn, a});
    }
    for (int nn = 3; nn <= listDepth; nn += 2) {
        std::string cn = "c" + std::to_string(nn);
        for (bool a : passes(cn, zetaOf(cn))) slabs.push_back({cn, a});
    }
    if (fIndex == 0) {
        // b1 passes f0 ascending
        for (bool a : passes("b1", zetaOf("b1"))) slabs.push_back({"b1", a});
    }
    auto weightOf = [&](const std::string& name) {
        int n = parseIndex(name, 'b', false);
        if (n == INT32_MIN) n = parseIndex(name, 'c', false);
        return pow2inv(n);
    };
    for (auto& [name, a] : slabs) {
        StackSlab s{name, a, weightOf(name)};
        if (a) st.lower.push_back(s);
        else st.upper.push_back(s);
    }
    // lower stack bottom-up: heights decrease upward (larger slabs first)
    std::stable_sort(st.lower.begin(), st.lower.end(),
                     [](const StackSlab& a, const StackSlab& b) { return a.height > b.height; });
    std::stable_sort(st.upper.begin(), st.upper.end(),
                     [](const StackSlab& a, const StackSlab& b) { return a.height > b.height; });

    // Exact closed forms for the two stack heights.
    auto tailSum = [&](int firstN, int step) {  // sum of 2^-n over n = firstN, firstN+step, ...
        Rational first = pow2inv(firstN);
        Rational ratio = pow2inv(step);
        return sumGeometricTail({first, ratio});
    };
    int i = fIndex;
    if (i == 0) {
        st.lowerSum = Rational(1, 2) + tailSum(3, 2);  // b1 + odd ascents
        st.upperSum = tailSum(2, 2);                   // even descents
    } else if (i > 0) {
        if (i % 2 == 1) {
            st.lowerSum = pow2inv(i + 1) + tailSum(i + 2, 2);  // b(i+1) first pass + odd ascents
            st.upperSum = pow2inv(i + 1) + tailSum(i + 3, 2);  // b(i+1) second pass + even descents
        } else {
            st.lowerSum = tailSum(i + 1, 2);  // odd ascents
            st.upperSum = tailSum(i + 2, 2);  // even descents
        }
    } else {
        int m = -i;
        if (m % 2 == 0) {
            st.lowerSum = tailSum(m + 3, 2);                       // odd ascents
            st.upperSum = pow2inv(m + 1) + tailSum(m + 2, 2);      // c(m+1) + even descents
        } else {
            st.lowerSum = tailSum(m + 2, 2);                       // odd ascents
            st.upperSum = tailSum(m + 1, 2);                       // even descents
        }
    }
    return st;
}

}  // namespace carry
}  // namespace lamina
