#include "lamina/traintrack.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lamina {

BranchId TrainTrack::addBranch(const std::string& name) {
    if (branchByName.count(name)) throw std::domain_error("duplicate branch " + name);
    BranchId id = static_cast<BranchId>(branches.size());
    branches.push_back({name, -1, -1});
    branchByName[name] = id;
    return id;
}

SwitchId TrainTrack::addSwitch(const std::string& name, bool frontier) {
    if (switchByName.count(name)) throw std::domain_error("duplicate switch " + name);
    SwitchId id = static_cast<SwitchId>(switches.size());
    switches.push_back({name, {}, {}, frontier});
    switchByName[name] = id;
    return id;
}

void TrainTrack::attach(SwitchId sw, bool incoming, BranchId b, BranchEnd e) {
    auto& lst = incoming ? switches.at(sw).in : switches.at(sw).out;
    lst.push_back({b, e});
    if (e == BranchEnd::Start) branches.at(b).from = sw;
    else branches.at(b).to = sw;
}

BranchId TrainTrack::branchId(const std::string& name) const {
    auto it = branchByName.find(name);
    if (it == branchByName.end()) throw std::domain_error("unknown branch " + name);
    return it->second;
}

SwitchId TrainTrack::switchId(const std::string& name) const {
    auto it = switchByName.find(name);
    if (it == switchByName.end()) throw std::domain_error("unknown switch " + name);
    return it->second;
}

void TrainTrack::validate() const {
    // Every branch end must sit in exactly one per-switch list entry.
    std::vector<int> startSeen(branches.size(), 0), endSeen(branches.size(), 0);
    for (SwitchId s = 0; s < (SwitchId)switches.size(); ++s) {
        for (const auto* lst : {&switches[s].in, &switches[s].out}) {
            for (const EndRef& er : *lst) {
                const Branch& b = branches.at(er.branch);
                if (er.end == BranchEnd::Start) {
                    ++startSeen[er.branch];
                    if (b.from != s) throw std::logic_error("branch " + b.name + " start not at recorded switch");
                } else {
                    ++endSeen[er.branch];
                    if (b.to != s) throw std::logic_error("branch " + b.name + " end not at recorded switch");
                }
            }
        }
    }
    for (size_t i = 0; i < branches.size(); ++i) {
        if (startSeen[i] != 1 || endSeen[i] != 1)
            throw std::logic_error("branch " + branches[i].name + " ends not uniquely attached");
    }
    for (const Switch& s : switches) {
        if (!s.frontier && (s.in.empty() || s.out.empty()))
            throw std::logic_error("non-frontier switch " + s.name + " has an empty side");
    }
}

std::vector<SwitchViolation> checkSwitchConditions(const TrainTrack& t, const WeightSystem& w) {
    std::vector<SwitchViolation> out;
    for (const Switch& s : t.switches) {
        if (s.frontier) continue;
        Rational inSum(0), outSum(0);
        for (const EndRef& er : s.in) inSum += w.of(er.branch);
        for (const EndRef& er : s.out) outSum += w.of(er.branch);
        if (inSum != outSum) out.push_back({s.name, inSum, outSum});
    }
    return out;
}

namespace {

// Face of a given branch end at its switch: true = `in` list.
struct EndLoc {
    SwitchId sw;
    bool inFace;
};

EndLoc locate(const TrainTrack& t, BranchId b, BranchEnd e) {
    SwitchId sw = (e == BranchEnd::Start) ? t.branches[b].from : t.branches[b].to;
    for (const EndRef& er : t.switches[sw].in)
        if (er.branch == b && er.end == e) return {sw, true};
    for (const EndRef& er : t.switches[sw].out)
        if (er.branch == b && er.end == e) return {sw, false};
    throw std::logic_error("end not attached: " + t.branches[b].name);
}

}  // namespace

std::optional<TrainPath> resolvePath(const TrainTrack& t, const std::vector<std::string>& names) {
    if (names.empty()) return TrainPath{};
    std::vector<BranchId> ids;
    ids.reserve(names.size());
    for (const auto& n : names) ids.push_back(t.branchId(n));

    // States: possible traversal directions of the current branch, with a
    // back-pointer per step for reconstruction.
    struct Node { bool forward; int prev; };
    std::vector<std::vector<Node>> layers(ids.size());
    layers[0] = {{true, -1}, {false, -1}};
    for (size_t i = 1; i < ids.size(); ++i) {
        for (int pi = 0; pi < (int)layers[i - 1].size(); ++pi) {
            bool fa = layers[i - 1][pi].forward;
            BranchId a = ids[i - 1], b = ids[i];
            BranchEnd arriveEnd = fa ? BranchEnd::End : BranchEnd::Start;
            EndLoc la = locate(t, a, arriveEnd);
            for (BranchEnd be : {BranchEnd::Start, BranchEnd::End}) {
                SwitchId sb = (be == BranchEnd::Start) ? t.branches[b].from : t.branches[b].to;
                if (sb != la.sw) continue;
                EndLoc lb = locate(t, b, be);
                if (lb.inFace == la.inFace) continue;  // must alternate in/out
                bool fb = (be == BranchEnd::Start);
                bool dup = false;
                for (const Node& n : layers[i])
                    if (n.forward == fb) { dup = true; break; }
                if (!dup) layers[i].push_back({fb, pi});
            }
        }
        if (layers[i].empty()) return std::nullopt;
    }
    TrainPath path(ids.size());
    int cur = 0;
    for (int i = (int)ids.size() - 1; i >= 0; --i) {
        path[i] = {ids[i], layers[i][cur].forward};
        cur = layers[i][cur].prev;
        if (cur < 0 && i > 0) cur = 0;  // unreachable; guards reconstruction
    }
    return path;
}

bool isTrainPath(const TrainTrack& t, const std::vector<std::string>& names) {
    return resolvePath(t, names).has_value();
}

bool isTrainPath(const TrainTrack& t, const TrainPath& path) {
    for (size_t i = 1; i < path.size(); ++i) {
        BranchId a = path[i - 1].branch, b = path[i].branch;
        BranchEnd ea = path[i - 1].forward ? BranchEnd::End : BranchEnd::Start;
        BranchEnd eb = path[i].forward ? BranchEnd::Start : BranchEnd::End;
        EndLoc la = locate(t, a, ea);
        SwitchId sb = (eb == BranchEnd::Start) ? t.branches[b].from : t.branches[b].to;
        if (la.sw != sb) return false;
        EndLoc lb = locate(t, b, eb);
        if (la.inFace == lb.inFace) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Builders.
// ---------------------------------------------------------------------------

namespace {
Rational pow2inv(int n) {  // 1/2^n for n >= 0
    Rational r(1);
    for (int i = 0; i < n; ++i) r = r * Rational(1, 2);
    return r;
}
}  // namespace

WeightedTrack buildT(int depth) {
    if (depth < 2) throw std::domain_error("buildT: depth must be >= 2");
    WeightedTrack wt;
    TrainTrack& t = wt.track;

    BranchId e1 = t.addBranch("e1"), e2 = t.addBranch("e2");
    BranchId bm1 = t.addBranch("b-1"), d0 = t.addBranch("d0");
    std::vector<BranchId> b(depth + 1), c(depth + 1), d(depth + 1);
    b[0] = t.addBranch("b0");
    for (int n = 1; n <= depth; ++n) {
        b[n] = t.addBranch("b" + std::to_string(n));
        c[n] = t.addBranch("c" + std::to_string(n));
        d[n] = t.addBranch("d" + std::to_string(n));
    }

    SwitchId A = t.addSwitch("A"), B = t.addSwitch("B"), t0 = t.addSwitch("t0");
    std::vector<SwitchId> s(depth + 2), tn(depth + 1);
    for (int n = 1; n <= depth; ++n) {
        s[n] = t.addSwitch("s" + std::to_string(n));
        tn[n] = t.addSwitch("t" + std::to_string(n));
    }
    s[depth + 1] = t.addSwitch("s" + std::to_string(depth + 1), /*frontier=*/true);

    // Bigon: e1 below e2, both oriented B -> A.
    t.attach(B, false, e1, BranchEnd::Start);
    t.attach(B, false, e2, BranchEnd::Start);
    t.attach(A, true, e1, BranchEnd::End);
    t.attach(A, true, e2, BranchEnd::End);
    // Left side: b-1 from A to the monogon t0 carrying the loop d0.
    t.attach(A, false, bm1, BranchEnd::Start);
    t.attach(t0, true, bm1, BranchEnd::End);
    t.attach(t0, false, d0, BranchEnd::Start);
    t.attach(t0, false, d0, BranchEnd::End);
    // Chain: b0 from s1 into the bigon; bn from s(n+1) to s(n).
    t.attach(B, true, b[0], BranchEnd::End);
    t.attach(s[1], false, b[0], BranchEnd::Start);
    for (int n = 1; n <= depth; ++n) {
        // Incoming order at s(n): b below c for odd n, c below b for even n.
        if (n % 2 == 1) {
            t.attach(s[n], true, b[n], BranchEnd::End);
            t.attach(s[n], true, c[n], BranchEnd::End);
        } else {
            t.attach(s[n], true, c[n], BranchEnd::End);
            t.attach(s[n], true, b[n], BranchEnd::End);
        }
        t.attach(s[n + 1], false, b[n], BranchEnd::Start);
        // Monogon t(n): both ends of d(n) incoming, c(n) outgoing toward s(n).
        t.attach(tn[n], true, d[n], BranchEnd::Start);
        t.attach(tn[n], true, d[n], BranchEnd::End);
        t.attach(tn[n], false, c[n], BranchEnd::Start);
    }

    WeightSystem& w = wt.weights;
    w.w.assign(t.branches.size(), Rational(0));
    w.w[e1] = Rational(1, 3);
    w.w[e2] = Rational(2, 3);
    w.w[bm1] = Rational(1);
    w.w[b[0]] = Rational(1);
    w.w[d0] = Rational(1, 2);
    for (int n = 1; n <= depth; ++n) {
        w.w[b[n]] = pow2inv(n);
        w.w[c[n]] = pow2inv(n);
        w.w[d[n]] = pow2inv(n + 1);
    }

    t.singularityHint["A"] = "VA";
    t.singularityHint["B"] = "VB";
    t.singularityHint["t0"] = "P0";
    for (int n = 1; n <= depth; ++n) {
        t.singularityHint["t" + std::to_string(n)] = "P" + std::to_string(n);
        t.singularityHint["s" + std::to_string(n)] = "Q" + std::to_string(n - 1);
    }
    t.metadata["family"] = "T";
    t.metadata["depth"] = std::to_string(depth);
    t.validate();
    return wt;
}

WeightedTrack buildTStar(int depth) {
    if (depth < 2) throw std::domain_error("buildTStar: depth must be >= 2");
    WeightedTrack wt;
    TrainTrack& t = wt.track;
    auto fname = [](int i) { return "f" + std::to_string(i) + "*"; };
    auto sname = [](int i) { return "sig" + std::to_string(i); };

    BranchId e1 = t.addBranch("e1*"), e2 = t.addBranch("e2*");
    BranchId bm1 = t.addBranch("b-1*"), d0 = t.addBranch("d0*");
    BranchId b0 = t.addBranch("b0*"), b1 = t.addBranch("b1*");

    std::map<int, BranchId> f, h, c, d;
    for (int i = -depth + 1; i <= depth; ++i) f[i] = t.addBranch(fname(i));
    for (int n = 1; n < depth; ++n) h[n] = t.addBranch("h" + std::to_string(n) + "*");
    // c/d monogons: c1 plus even n attached at sig(n-2), odd n >= 3 at sig(-n).
    std::vector<int> cIndices = {1};
    for (int n = 2; n <= depth; n += 2) cIndices.push_back(n);      // even, at sig(n-2), n-2 <= depth-2
    for (int n = 3; n <= depth - 1; n += 2) cIndices.push_back(n);  // odd, at sig(-n)
    for (int n : cIndices) {
        c[n] = t.addBranch("c" + std::to_string(n) + "*");
        d[n] = t.addBranch("d" + std::to_string(n) + "*");
    }

    SwitchId A = t.addSwitch("A*"), B = t.addSwitch("B*");
    SwitchId t0 = t.addSwitch("t0*"), u1 = t.addSwitch("u1");
    std::map<int, SwitchId> sig;
    for (int i = -depth; i <= depth; ++i)
        sig[i] = t.addSwitch(sname(i), /*frontier=*/(i == depth || i == -depth));
    std::map<int, SwitchId> tn;
    for (int n : cIndices) tn[n] = t.addSwitch("t" + std::to_string(n) + "*");

    // Bigon and left monogon mirror the uncollapsed track.
    t.attach(B, false, e1, BranchEnd::Start);
    t.attach(B, false, e2, BranchEnd::Start);
    t.attach(A, true, e1, BranchEnd::End);
    t.attach(A, true, e2, BranchEnd::End);
    t.attach(A, false, bm1, BranchEnd::Start);
    t.attach(t0, true, bm1, BranchEnd::End);
    t.attach(t0, false, d0, BranchEnd::Start);
    t.attach(t0, false, d0, BranchEnd::End);

    // u1: b1* and c1* leave toward sig(-1) and the K1 monogon; b0* toward the bigon.
    t.attach(u1, true, b1, BranchEnd::Start);
    t.attach(u1, true, c[1], BranchEnd::Start);
    t.attach(u1, false, b0, BranchEnd::Start);
    t.attach(B, true, b0, BranchEnd::End);

    // The f-chain: f(i) runs sig(i-1) -> sig(i).
    for (int i = -depth + 1; i <= depth; ++i) {
        t.attach(sig[i - 1], false, f[i], BranchEnd::Start);
        t.attach(sig[i], true, f[i], BranchEnd::End);
    }
    // Fix the slot orders at interior chain switches by rebuilding the lists.
    for (int i = -depth + 1; i <= depth - 1; ++i) {
        Switch& sw = t.switches[sig[i]];
        sw.in.clear();
        sw.out.clear();
        if (i == -1) {
            sw.in = {{b1, BranchEnd::End}, {f[-1], BranchEnd::End}};
            sw.out = {{f[0], BranchEnd::Start}};
            t.branches[b1].to = sig[i];
        } else if (i >= 1 && i % 2 == 1) {  // hairpin loop h(i), sandwiching f(i+1)
            sw.in = {{f[i], BranchEnd::End}};
            sw.out = {{h[i], BranchEnd::Start}, {f[i + 1], BranchEnd::Start}, {h[i], BranchEnd::End}};
            t.branches[h[i]].from = sig[i];
            t.branches[h[i]].to = sig[i];
        } else if (i >= 0) {  // even: monogon stem c(i+2) below the chain
            if (c.count(i + 2)) {
                sw.in = {{f[i], BranchEnd::End}};
                sw.out = {{c[i + 2], BranchEnd::Start}, {f[i + 1], BranchEnd::Start}};
                t.branches[c[i + 2]].from = sig[i];
            } else {
                sw.in = {{f[i], BranchEnd::End}};
                sw.out = {{f[i + 1], BranchEnd::Start}};
                sw.frontier = true;  // stem truncated away
            }
        } else if ((-i) % 2 == 0) {  // negative even: hairpin h(-i) sandwiching f(i)
            int n = -i;
            sw.in = {{h[n], BranchEnd::Start}, {f[i], BranchEnd::End}, {h[n], BranchEnd::End}};
            sw.out = {{f[i + 1], BranchEnd::Start}};
            t.branches[h[n]].from = sig[i];
            t.branches[h[n]].to = sig[i];
        } else {  // negative odd <= -3: monogon stem c(n) above the chain
            int n = -i;
            if (c.count(n)) {
                sw.in = {{f[i], BranchEnd::End}, {c[n], BranchEnd::Start}};
                sw.out = {{f[i + 1], BranchEnd::Start}};
                t.branches[c[n]].from = sig[i];
            } else {
                sw.in = {{f[i], BranchEnd::End}};
                sw.out = {{f[i + 1], BranchEnd::Start}};
                sw.frontier = true;
            }
        }
    }
    // Monogons t(n)*: stem end incoming, both d ends outgoing.
    for (int n : cIndices) {
        t.attach(tn[n], true, c[n], BranchEnd::End);
        t.attach(tn[n], false, d[n], BranchEnd::Start);
        t.attach(tn[n], false, d[n], BranchEnd::End);
    }
    // c1 runs u1 -> t1*; even c(n) runs sig(n-2) -> t(n)*; odd sig(-n) -> t(n)*.
    t.branches[c[1]].from = u1;

    WeightSystem& w = wt.weights;
    w.w.assign(t.branches.size(), Rational(0));
    w.w[e1] = Rational(1, 3);
    w.w[e2] = Rational(2, 3);
    w.w[bm1] = Rational(1);
    w.w[b0] = Rational(1);
    w.w[b1] = Rational(1, 2);
    w.w[d0] = Rational(1, 2);
    for (auto& [i, id] : f) {
        if (i == 0) w.w[id] = Rational(1);
        else if (i > 0 && i % 2 == 1) w.w[id] = Rational(3) * pow2inv(i + 1);
        else if (i > 0) w.w[id] = pow2inv(i);
        else w.w[id] = pow2inv(-i);
    }
    for (auto& [n, id] : h) w.w[id] = pow2inv(n + 1);
    for (int n : cIndices) {
        w.w[c[n]] = pow2inv(n);
        w.w[d[n]] = pow2inv(n + 1);
    }

    t.singularityHint["A*"] = "VA*";
    t.singularityHint["B*"] = "VB*";
    t.singularityHint["t0*"] = "P0*";
    t.singularityHint["u1"] = "Q0*";
    for (int n : cIndices) t.singularityHint["t" + std::to_string(n) + "*"] = "P" + std::to_string(n) + "*";
    for (int i = -depth + 1; i <= depth - 1; ++i) t.singularityHint[sname(i)] = "S" + std::to_string(i);
    t.metadata["family"] = "Tstar";
    t.metadata["depth"] = std::to_string(depth);
    t.validate();
    return wt;
}

WeightedTrack buildT1(int depth) {
    if (depth < 1) throw std::domain_error("buildT1: depth must be >= 1");
    WeightedTrack wt;
    TrainTrack& t = wt.track;

    BranchId e1 = t.addBranch("e1"), e2 = t.addBranch("e2");
    BranchId bm1 = t.addBranch("b-1"), dm1 = t.addBranch("d-1");
    int chainLen = 2 * depth;  // nodes n1..n(2*depth); node 2j+1 carries q(j+1), node 2j+2 a stem
    std::vector<BranchId> b(chainLen + 1), q(depth + 1), c(depth), d(depth);
    b[0] = t.addBranch("b0");
    for (int k = 1; k <= chainLen; ++k) b[k] = t.addBranch("b" + std::to_string(k));
    for (int j = 1; j <= depth; ++j) q[j] = t.addBranch("q" + std::to_string(j));
    for (int j = 0; j < depth; ++j) {
        c[j] = t.addBranch("c" + std::to_string(j));
        d[j] = t.addBranch("d" + std::to_string(j));
    }

    SwitchId A = t.addSwitch("A1"), B = t.addSwitch("B1"), tminus = t.addSwitch("t-");
    std::vector<SwitchId> n(chainLen + 2), m(depth);
    for (int k = 1; k <= chainLen; ++k) n[k] = t.addSwitch("n" + std::to_string(k));
    n[chainLen + 1] = t.addSwitch("n" + std::to_string(chainLen + 1), /*frontier=*/true);
    for (int j = 0; j < depth; ++j) m[j] = t.addSwitch("m" + std::to_string(j));

    t.attach(B, false, e1, BranchEnd::Start);
    t.attach(B, false, e2, BranchEnd::Start);
    t.attach(A, true, e1, BranchEnd::End);
    t.attach(A, true, e2, BranchEnd::End);
    t.attach(tminus, true, dm1, BranchEnd::Start);
    t.attach(tminus, true, dm1, BranchEnd::End);
    t.attach(tminus, false, bm1, BranchEnd::Start);
    t.attach(B, true, bm1, BranchEnd::End);
    t.attach(A, false, b[0], BranchEnd::Start);
    for (int k = 1; k <= chainLen; ++k) {
        t.attach(n[k], true, b[k - 1], BranchEnd::End);
        if (k % 2 == 1) {
            int j = (k - 1) / 2;  // handle loop q(j+1) below the chain: the
            // composite gluing is a rotation and the second-return map of the
            // resulting foliation is the dyadic odometer
            t.attach(n[k], false, q[j + 1], BranchEnd::Start);
            t.attach(n[k], false, q[j + 1], BranchEnd::End);
            t.attach(n[k], false, b[k], BranchEnd::Start);
        } else {
            int j = (k - 2) / 2;  // stem c(j) below the chain, to monogon m(j)
            t.attach(n[k], false, c[j], BranchEnd::Start);
            t.attach(n[k], false, b[k], BranchEnd::Start);
            t.attach(m[j], true, c[j], BranchEnd::End);
            t.attach(m[j], false, d[j], BranchEnd::Start);
            t.attach(m[j], false, d[j], BranchEnd::End);
        }
    }
    t.attach(n[chainLen + 1], true, b[chainLen], BranchEnd::End);

    // Given weights: the bigon and the two loop families. Everything else is
    // solved from the switch conditions; the solve fails loudly if the system
    // is not uniquely determined.
    std::vector<std::optional<Rational>> wv(t.branches.size());
    wv[e1] = Rational(1, 3);
    wv[e2] = Rational(2, 3);
    for (int j = 1; j <= depth; ++j) {
        Rational qw(1);
        for (int i = 0; i < j; ++i) qw = qw * Rational(1, 4);
        wv[q[j]] = qw;  // 1/4^j
    }
    for (int j = 0; j < depth; ++j) {
        Rational dw(1, 8);
        for (int i = 0; i < j; ++i) dw = dw * Rational(1, 4);
        wv[d[j]] = dw;  // 1/(8*4^j)
    }

    bool progress = true;
    while (progress) {
        progress = false;
        for (const Switch& s : t.switches) {
            if (s.frontier) continue;
            Rational known(0);
            int unknownCount = 0;
            const EndRef* unknown = nullptr;
            int unknownSide = 0;
            for (const EndRef& er : s.in) {
                if (wv[er.branch]) known += *wv[er.branch];
                else { ++unknownCount; unknown = &er; unknownSide = 1; }
            }
            for (const EndRef& er : s.out) {
                if (wv[er.branch]) known -= *wv[er.branch];
                else { ++unknownCount; unknown = &er; unknownSide = -1; }
            }
            // Loops contribute both ends; a loop unknown appears twice.
            if (unknownCount == 1 && unknown) {
                wv[unknown->branch] = (unknownSide == 1) ? -known : known;
                progress = true;
            } else if (unknownCount == 2 && unknown) {
                // Both occurrences of one loop branch.
                const Branch& br = t.branches[unknown->branch];
                if (br.from == br.to) {
                    Rational v = ((unknownSide == 1) ? -known : known) / Rational(2);
                    wv[unknown->branch] = v;
                    progress = true;
                }
            }
        }
    }
    WeightSystem& w = wt.weights;
    w.w.assign(t.branches.size(), Rational(0));
    for (size_t i = 0; i < wv.size(); ++i) {
        if (!wv[i]) throw std::domain_error("buildT1: switch conditions do not determine branch " + t.branches[i].name);
        if (*wv[i] < Rational(0)) throw std::domain_error("buildT1: negative solved weight at " + t.branches[i].name);
        w.w[i] = *wv[i];
    }

    t.designatedCycle = {"e1", "e2"};
    t.singularityHint["A1"] = "VA";
    t.singularityHint["B1"] = "VB";
    t.singularityHint["t-"] = "P-1";
    for (int j = 0; j < depth; ++j) {
        t.singularityHint["m" + std::to_string(j)] = "P" + std::to_string(j);
        t.singularityHint["n" + std::to_string(2 * j + 2)] = "Q" + std::to_string(j);
        t.singularityHint["n" + std::to_string(2 * j + 1)] = "S" + std::to_string(j + 1);
    }
    t.metadata["family"] = "T1";
    t.metadata["depth"] = std::to_string(depth);
    t.metadata["reconstruction"] =
        "chain pattern inferred: handle loops at quadrivalent switches and stem monogons at "
        "trivalent switches alternate with quartering weights; a weight-1/2 monogon closes the "
        "bigon side, solved from the switch conditions";
    t.validate();
    return wt;
}

std::string coverProjection(const std::string& coverName) {
    auto pos = coverName.rfind('.');
    if (pos == std::string::npos) return coverName;
    for (size_t i = pos + 1; i < coverName.size(); ++i)
        if (!isdigit(coverName[i])) return coverName;
    return coverName.substr(0, pos);
}

WeightedTrack cyclicCover(const WeightedTrack& base, int nCopies) {
    if (nCopies < 1) throw std::domain_error("cyclicCover: degree must be >= 1");
    if (base.track.designatedCycle.size() != 2)
        throw std::domain_error("cyclicCover: base track has no designated bigon cycle");
    if (nCopies == 1) return base;

    const TrainTrack& bt = base.track;
    BranchId ce1 = bt.branchId(bt.designatedCycle[0]);
    BranchId ce2 = bt.branchId(bt.designatedCycle[1]);
    if (bt.branches[ce1].from != bt.branches[ce2].from || bt.branches[ce1].to != bt.branches[ce2].to)
        throw std::domain_error("cyclicCover: designated cycle branches are not parallel");

    WeightedTrack wt;
    TrainTrack& t = wt.track;
    auto cname = [](const std::string& n, int i) { return n + "." + std::to_string(i); };

    std::vector<std::map<SwitchId, SwitchId>> swMap(nCopies + 1);
    std::vector<std::map<BranchId, BranchId>> brMap(nCopies + 1);
    for (int i = 1; i <= nCopies; ++i) {
        for (SwitchId s = 0; s < (SwitchId)bt.switches.size(); ++s)
            swMap[i][s] = t.addSwitch(cname(bt.switches[s].name, i), bt.switches[s].frontier);
        for (BranchId b = 0; b < (BranchId)bt.branches.size(); ++b)
            brMap[i][b] = t.addBranch(cname(bt.branches[b].name, i));
    }
    for (int i = 1; i <= nCopies; ++i) {
        for (SwitchId s = 0; s < (SwitchId)bt.switches.size(); ++s) {
            for (int face = 0; face < 2; ++face) {
                const auto& src = face ? bt.switches[s].in : bt.switches[s].out;
                for (const EndRef& er : src) {
                    // e2's End at the cycle head switch comes from the previous copy.
                    int copy = i;
                    if (er.branch == ce2 && er.end == BranchEnd::End && s == bt.branches[ce2].to)
                        copy = (i + nCopies - 2) % nCopies + 1;
                    t.attach(swMap[i][s], face == 1, brMap[copy][er.branch], er.end);
                }
            }
        }
    }

    wt.weights.w.assign(t.branches.size(), Rational(0));
    for (int i = 1; i <= nCopies; ++i)
        for (BranchId b = 0; b < (BranchId)bt.branches.size(); ++b)
            wt.weights.w[brMap[i][b]] = base.weights.of(b);

    for (int i = 1; i <= nCopies; ++i)
        for (const auto& [swName, hint] : bt.singularityHint)
            t.singularityHint[cname(swName, i)] = cname(hint, i);
    t.metadata = bt.metadata;
    t.metadata["family"] = bt.metadata.count("family") ? bt.metadata.at("family") + "-cover" : "cover";
    t.metadata["degree"] = std::to_string(nCopies);
    t.validate();
    return wt;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

std::string trackToJson(const WeightedTrack& wt) {
    nlohmann::json j;
    const TrainTrack& t = wt.track;
    j["switches"] = nlohmann::json::array();
    for (const Switch& s : t.switches) j["switches"].push_back(s.name);
    j["branches"] = nlohmann::json::array();
    for (const Branch& b : t.branches)
        j["branches"].push_back({{"name", b.name},
                                 {"from", t.switches[b.from].name},
                                 {"to", t.switches[b.to].name}});
    nlohmann::json inc, outg;
    for (const Switch& s : t.switches) {
        nlohmann::json li = nlohmann::json::array(), lo = nlohmann::json::array();
        for (const EndRef& er : s.in) li.push_back(t.branches[er.branch].name);
        for (const EndRef& er : s.out) lo.push_back(t.branches[er.branch].name);
        inc[s.name] = li;
        outg[s.name] = lo;
    }
    j["incoming"] = inc;
    j["outgoing"] = outg;
    nlohmann::json wj;
    for (size_t i = 0; i < t.branches.size(); ++i) wj[t.branches[i].name] = wt.weights.w[i].str();
    j["weights"] = wj;
    j["frontier"] = nlohmann::json::array();
    for (const Switch& s : t.switches)
        if (s.frontier) j["frontier"].push_back(s.name);
    return j.dump(2);
}

std::string trackToDot(const WeightedTrack& wt) {
    std::ostringstream os;
    os << "digraph track {\n  rankdir=LR;\n  node [shape=point];\n";
    const TrainTrack& t = wt.track;
    for (const Switch& s : t.switches)
        os << "  \"" << s.name << "\"" << (s.frontier ? " [color=gray]" : "") << ";\n";
    for (size_t i = 0; i < t.branches.size(); ++i) {
        const Branch& b = t.branches[i];
        os << "  \"" << t.switches[b.from].name << "\" -> \"" << t.switches[b.to].name
           << "\" [label=\"" << b.name << " (" << wt.weights.w[i].str() << ")\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string trackToSvg(const WeightedTrack& wt) {
    // Simple schematic: one column per branch, height proportional to weight.
    const TrainTrack& t = wt.track;
    double x = 10;
    std::ostringstream os;
    std::ostringstream body;
    double maxH = 0;
    for (size_t i = 0; i < t.branches.size(); ++i) {
        double h = 160.0 * wt.weights.w[i].raw().get_d();
        maxH = std::max(maxH, h);
        body << "<rect x=\"" << x << "\" y=\"" << 200 - h << "\" width=\"24\" height=\"" << h
             << "\" fill=\"#9ecae1\" stroke=\"#3182bd\"/>\n";
        body << "<text x=\"" << x << "\" y=\"215\" font-size=\"8\">" << t.branches[i].name
             << "</text>\n";
        x += 34;
    }
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << x + 10
       << "\" height=\"230\">\n" << body.str() << "</svg>\n";
    return os.str();
}


// ---------------------------------------------------------------------------
// Pants-piece path enumeration.
// ---------------------------------------------------------------------------

namespace piece_detail {

struct Stub {
    std::string branch;
    BranchEnd attachedEnd;  // the end that stays inside the piece
    std::string boundary;
};

struct PieceSpec {
    std::vector<std::string> fullBranches;
    std::vector<Stub> stubs;
    // filter 0: purely combinatorial; 1: adjacent passes of a monogon
    // turnaround must be height-consistent (tracked via interval arithmetic)
    int filter = 0;
};

struct HalfState {
    BranchId branch;
    bool forward;
};

std::vector<PiecePath> enumeratePiece(const WeightedTrack& wt, const PieceSpec& spec) {
    const TrainTrack& t = wt.track;
    std::set<BranchId> kept;
    for (const auto& n : spec.fullBranches) kept.insert(t.branchId(n));
    std::map<std::pair<BranchId, BranchEnd>, std::string> stubBoundary;
    std::map<std::pair<BranchId, BranchEnd>, int> stubId;
    int stubCount = 0;
    for (const Stub& s : spec.stubs) {
        BranchId b = t.branchId(s.branch);
        stubBoundary[{b, s.attachedEnd}] = s.boundary;
        stubId[{b, s.attachedEnd}] = stubCount++;
    }

    struct EndLoc {
        SwitchId sw;
        bool inFace;
    };
    auto locate = [&](BranchId b, BranchEnd e) -> EndLoc {
        SwitchId sw = (e == BranchEnd::Start) ? t.branches[b].from : t.branches[b].to;
        for (const EndRef& er : t.switches[sw].in)
            if (er.branch == b && er.end == e) return {sw, true};
        for (const EndRef& er : t.switches[sw].out)
            if (er.branch == b && er.end == e) return {sw, false};
        throw std::logic_error("piece: end not attached");
    };

    std::vector<PiecePath> out;
    std::set<std::string> seen;
    // walk from every stub, into the piece
    for (const Stub& st : spec.stubs) {
        BranchId b0 = t.branchId(st.branch);
        // traversal direction: toward the attached end
        bool fwd0 = st.attachedEnd == BranchEnd::End;
        struct Frame {
            std::vector<std::pair<BranchId, bool>> path;
        };
        std::vector<Frame> stack{{{{b0, fwd0}}}};
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            auto [cur, fwd] = f.path.back();
            BranchEnd arriveEnd = fwd ? BranchEnd::End : BranchEnd::Start;
            // exit at a stub? (not at the first step)
            if (f.path.size() > 1) {
                auto sb = stubBoundary.find({cur, arriveEnd == BranchEnd::End ? BranchEnd::Start
                                                                              : BranchEnd::End});
                // a stub branch is traversed toward its cut end, i.e. its
                // attached end is the one we entered through
                BranchEnd enteredThrough = fwd ? BranchEnd::Start : BranchEnd::End;
                sb = stubBoundary.find({cur, enteredThrough});
                if (sb != stubBoundary.end()) {
                    PiecePath pp;
                    pp.entryBoundary = st.boundary;
                    pp.exitBoundary = sb->second;
                    for (auto& [bb, ff] : f.path) pp.branches.push_back(t.branches[bb].name);
                    int entryId = stubId.at({t.branchId(st.branch), st.attachedEnd});
                    int exitId = stubId.at({cur, enteredThrough});
                    std::string k1 = std::to_string(entryId) + ">" + std::to_string(exitId) + "|";
                    for (auto& n : pp.branches) k1 += n + ",";
                    std::string k2 = std::to_string(exitId) + ">" + std::to_string(entryId) + "|";
                    for (auto it = pp.branches.rbegin(); it != pp.branches.rend(); ++it) k2 += *it + ",";
                    if (seen.insert(std::min(k1, k2)).second) out.push_back(std::move(pp));
                    continue;
                }
            }
            if (f.path.size() > 40) continue;  // pump guard: drop runaway families
            EndLoc loc = locate(cur, arriveEnd);
            for (BranchEnd be : {BranchEnd::Start, BranchEnd::End}) {
                for (BranchId nb : kept) {
                    SwitchId sw = (be == BranchEnd::Start) ? t.branches[nb].from : t.branches[nb].to;
                    if (sw != loc.sw) continue;
                    if (nb == cur && be == arriveEnd) continue;  // no immediate backtrack on same end
                    EndLoc nl = locate(nb, be);
                    if (nl.inFace == loc.inFace) continue;
                    Frame g = f;
                    g.path.push_back({nb, be == BranchEnd::Start});
                    stack.push_back(std::move(g));
                }
                // stub branches are also enterable
                for (auto& [key, bd] : stubBoundary) {
                    auto [nb, attached] = key;
                    if (kept.count(nb)) continue;
                    if (attached != be) continue;
                    SwitchId sw = (be == BranchEnd::Start) ? t.branches[nb].from : t.branches[nb].to;
                    if (sw != loc.sw) continue;
                    EndLoc nl = locate(nb, be);
                    if (nl.inFace == loc.inFace) continue;
                    Frame g = f;
                    g.path.push_back({nb, be == BranchEnd::Start});
                    stack.push_back(std::move(g));
                }
            }
        }
    }
    return out;
}

}  // namespace piece_detail

std::vector<PiecePath> enumeratePathsThroughPiece(const WeightedTrack& wt, PantsPiece piece) {
    using piece_detail::PieceSpec;
    using piece_detail::Stub;
    const std::string fam = wt.track.metadata.count("family") ? wt.track.metadata.at("family") : "";
    if (fam != "T") throw std::domain_error("enumeratePathsThroughPiece: pieces are defined on the bigon track");
    PieceSpec spec;
    if (piece == PantsPiece::U) {
        // the repeating piece: one chain segment, one stem, the monogon head
        // poking into the block disk
        spec.fullBranches = {"c2"};
        spec.stubs = {{"b1", BranchEnd::Start, "chainL"},
                      {"b2", BranchEnd::End, "chainR"},
                      {"d2", BranchEnd::Start, "block"},
                      {"d2", BranchEnd::End, "block"}};
    } else {
        // the head piece: the bigon with the puncture, the first monogon and
        // the chain cut after its first branch; the second block disk is the
        // third boundary
        spec.fullBranches = {"e1", "e2", "b-1", "b0", "d0", "c1"};
        spec.stubs = {{"b1", BranchEnd::End, "chain"},
                      {"d1", BranchEnd::Start, "block"},
                      {"d1", BranchEnd::End, "block"}};
    }
    return piece_detail::enumeratePiece(wt, spec);
}


}  // namespace lamina
