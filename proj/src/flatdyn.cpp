#include "lamina/flatdyn.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lamina {
namespace flat {

namespace {
Rational half(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }
}

SquareSystem SquareSystem::buildF(int level) {
    if (level < 3) throw std::domain_error("buildF: level must be >= 3");
    SquareSystem s;
    s.level_ = level;
    s.sigma_ = false;
    s.ys_.resize(level + 3);
    s.ys_[0] = Rational(1);   // y(-2)
    s.ys_[1] = Rational(0);   // y(-1)
    for (int n = 0; n <= level; ++n) s.ys_[n + 2] = half(s.ys_[n + 1], s.ys_[n]);
    s.xs_.resize(level + 1);
    s.xs_[0] = Rational(1, 2);
    for (int n = 1; n <= level; ++n) s.xs_[n] = half(s.ys_[n + 1], s.ys_[n - 1]);

    s.marked_["p0"] = {Rational(1), Rational(1, 2)};
    for (int n = 1; n <= level; ++n) s.marked_["p" + std::to_string(n)] = {Rational(0), s.xs_[n]};
    for (int n = -2; n <= level; ++n) s.marked_["q" + std::to_string(n)] = {Rational(0), s.ys_[n + 2]};
    s.marked_["r"] = {Rational(0), Rational(1, 3)};

    s.invs_.push_back({Side::Right, Rational(1, 2), Rational(0), Rational(1), "p0"});
    for (int n = 1; n <= level; ++n) {
        Rational a = s.ys_[n + 1], b = s.ys_[n - 1];  // y(n-1), y(n-3)
        s.invs_.push_back({Side::Left, s.xs_[n], std::min(a, b), std::max(a, b), "p" + std::to_string(n)});
    }
    return s;
}

SquareSystem SquareSystem::buildSigma(int level) {
    SquareSystem s = buildF(level);
    s.sigma_ = true;
    s.marked_["a0"] = {Rational(1, 2), Rational(0)};
    for (int n = 1; n <= level; ++n) s.marked_["a" + std::to_string(n)] = {s.z(n), Rational(1)};
    for (int n = -2; n <= level; ++n) s.marked_["b" + std::to_string(n)] = {s.w(n), Rational(1)};
    s.invs_.push_back({Side::Bottom, Rational(1, 2), Rational(0), Rational(1), "a0"});
    for (int n = 1; n <= level; ++n) {
        Rational a = s.w(n - 1), b = s.w(n - 3);
        s.invs_.push_back({Side::Top, s.z(n), std::min(a, b), std::max(a, b), "a" + std::to_string(n)});
    }
    return s;
}

const Rational& SquareSystem::y(int n) const {
    if (n < -2 || n + 2 >= (int)ys_.size()) throw std::domain_error("y(n) beyond truncation");
    return ys_[n + 2];
}

const Rational& SquareSystem::x(int n) const {
    if (n < 0 || n >= (int)xs_.size()) throw std::domain_error("x(n) beyond truncation");
    return xs_[n];
}

Point SquareSystem::identify(const Point& p) const {
    Side side;
    Rational coord;
    if (p.x == Rational(0)) { side = Side::Left; coord = p.y; }
    else if (p.x == Rational(1)) { side = Side::Right; coord = p.y; }
    else if (p.y == Rational(0)) { side = Side::Bottom; coord = p.x; }
    else if (p.y == Rational(1)) { side = Side::Top; coord = p.x; }
    else return p;
    for (const Involution& iv : invs_) {
        if (iv.side != side) continue;
        if (coord < iv.lo || coord > iv.hi) continue;
        Rational img = iv.center * Rational(2) - coord;
        if (side == Side::Left || side == Side::Right) return {p.x, img};
        return {img, p.y};
    }
    return p;
}

std::optional<std::string> SquareSystem::markedName(const Point& p) const {
    // A few coordinates carry two labels (the corner b(-2) = q(-2)); report
    // the q-name, matching the orbit tables.
    std::optional<std::string> best;
    auto prio = [](const std::string& n) {
        switch (n[0]) {
            case 'q': return 0;
            case 'p': return 1;
            case 'r': return 2;
            case 'a': return 3;
            default: return 4;
        }
    };
    for (const auto& [name, q] : marked_)
        if (q == p && (!best || prio(name) < prio(*best))) best = name;
    return best;
}

std::string SquareSystem::svg() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"420\">\n";
    os << "<rect x=\"10\" y=\"10\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"black\"/>\n";
    auto px = [](const Rational& r) { return 10.0 + 400.0 * r.raw().get_d(); };
    auto py = [](const Rational& r) { return 410.0 - 400.0 * r.raw().get_d(); };
    for (const auto& [name, p] : marked_) {
        os << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"2\" fill=\"red\"/>";
        os << "<text x=\"" << px(p.x) + 3 << "\" y=\"" << py(p.y) << "\" font-size=\"7\">" << name
           << "</text>\n";
    }
    for (const Involution& iv : invs_) {
        double c = iv.center.raw().get_d();
        double lo = iv.lo.raw().get_d(), hi = iv.hi.raw().get_d();
        (void)c;
        double x1, y1, x2, y2;
        switch (iv.side) {
            case Side::Left: x1 = x2 = 10; y1 = py(Rational(0)) - 400 * lo; y2 = py(Rational(0)) - 400 * hi; break;
            case Side::Right: x1 = x2 = 410; y1 = py(Rational(0)) - 400 * lo; y2 = py(Rational(0)) - 400 * hi; break;
            case Side::Bottom: y1 = y2 = 410; x1 = 10 + 400 * lo; x2 = 10 + 400 * hi; break;
            case Side::Top: y1 = y2 = 10; x1 = 10 + 400 * lo; x2 = 10 + 400 * hi; break;
        }
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
           << "\" stroke=\"#2b8cbe\" stroke-width=\"2\" stroke-dasharray=\"3 2\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// The automorphism.
// ---------------------------------------------------------------------------

namespace {

std::vector<Point> phiCandidates(const Point& p) {
    std::vector<Point> out;
    const Rational q14(1, 4), q12(1, 2), q34(3, 4), one(1);
    const Rational &x = p.x, &y = p.y;
    if (x >= Rational(0) && x <= q14)
        out.push_back({x * Rational(4), y / Rational(4) + q14});                 // A -> [1/4,1/2]
    if (x >= q14 && x <= q12)
        out.push_back({Rational(2) - x * Rational(4), q34 - y / Rational(4)});   // B, rotated -> [1/2,3/4]
    if (x >= q12 && x <= q34)
        out.push_back({x * Rational(4) - Rational(2), y / Rational(4) + q34});   // C -> [3/4,1]
    if (x >= q34 && x <= one)
        out.push_back({Rational(4) - x * Rational(4), q14 - y / Rational(4)});   // D, rotated -> [0,1/4]
    return out;
}

}  // namespace

Point applyPhi(const SquareSystem& sys, const Point& p) {
    std::vector<Point> cands = phiCandidates(p);
    if (cands.empty()) throw std::domain_error("applyPhi: point outside the square");
    // Deduplicate identical candidates (seam points often agree).
    std::vector<Point> uniq;
    for (const Point& c : cands) {
        bool dup = false;
        for (const Point& u : uniq) dup = dup || u == c;
        if (!dup) uniq.push_back(c);
    }
    if (uniq.size() == 1) return uniq[0];
    // A seam point has two representatives identified on the quotient
    // surface. Prefer a named marked point; ties break toward the higher
    // representative. This choice reproduces the singularity-orbit tables.
    std::sort(uniq.begin(), uniq.end(), [&](const Point& a, const Point& b) {
        bool na = sys.markedName(a).has_value(), nb = sys.markedName(b).has_value();
        if (na != nb) return na;
        return b < a;
    });
    return uniq[0];
}

OrbitResult singularOrbit(const SquareSystem& sys, const std::string& markedPoint, int steps) {
    if (steps < 1) throw std::domain_error("singularOrbit: steps must be >= 1");
    auto it = sys.markedPoints().find(markedPoint);
    if (it == sys.markedPoints().end())
        throw std::domain_error("singularOrbit: unknown marked point " + markedPoint);
    OrbitResult res;
    Point p = it->second;
    for (int i = 0; i < steps; ++i) {
        p = applyPhi(sys, p);
        auto name = sys.markedName(p);
        if (!name) {
            Point q = sys.identify(p);
            name = sys.markedName(q);
            if (name) p = q;
        }
        if (!name) {
            res.leftTruncation = true;
            return res;
        }
        res.names.push_back(*name);
    }
    return res;
}

std::set<Rational> dyadicLeafHeights(int i) {
    if (i < 0) throw std::domain_error("dyadicLeafHeights: i must be >= 0");
    std::set<Rational> out;
    long den = 1L << (i + 1);
    for (long j = 1; j < den; j += 2) out.insert(Rational(j, den));
    return out;
}

SeparatrixTrace traceSeparatrix(const SquareSystem& F, int i, int maxSegments) {
    if (i < 0) throw std::domain_error("traceSeparatrix: i must be >= 0");
    SeparatrixTrace tr;
    Rational h;
    bool movingRight;
    if (i == 0) {
        h = Rational(1, 2);
        movingRight = false;  // the right-side singularity points into the square
    } else {
        h = F.x(i);
        movingRight = true;
    }
    tr.heights.insert(h);
    for (int guard = 0; guard < maxSegments; ++guard) {
        if (movingRight) {
            if (h == Rational(1, 2)) return tr;  // hit the right-hand one-prong
            h = Rational(1) - h;
        } else {
            bool isQ = h == Rational(1, 3);
            for (int n = -2; n <= F.level() && !isQ; ++n) isQ = (h == F.y(n));
            if (isQ) {
                tr.terminatedAtR = true;
                return tr;
            }
            bool bounced = false;
            for (const Involution& iv : F.involutions()) {
                if (iv.side != Side::Left || h < iv.lo || h > iv.hi) continue;
                if (h == iv.center) return tr;  // hit another one-prong
                h = iv.center * Rational(2) - h;
                bounced = true;
                break;
            }
            if (!bounced) throw std::domain_error("traceSeparatrix: beyond truncation");
        }
        tr.heights.insert(h);
        movingRight = !movingRight;
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Leaf flow and the interval exchange.
// ---------------------------------------------------------------------------

namespace {

struct SingularLeaf : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bounce at the left side: find the rotation segment containing h.
Rational leftBounce(const SquareSystem& F, const Rational& h) {
    if (h == Rational(1, 3)) throw SingularLeaf("hit the infinite-pronged point");
    for (const Involution& iv : F.involutions()) {
        if (iv.side != Side::Left) continue;
        if (h < iv.lo || h > iv.hi) continue;
        if (h == iv.lo || h == iv.hi) throw SingularLeaf("hit an identified endpoint (q-point)");
        if (h == iv.center) throw SingularLeaf("hit the one-pronged point " + iv.name);
        return iv.center * Rational(2) - h;
    }
    throw std::domain_error("leftBounce: height beyond truncation: " + h.str());
}

Rational rightBounce(const Rational& h) {
    if (h == Rational(0) || h == Rational(1)) throw SingularLeaf("hit a corner");
    if (h == Rational(1, 2)) throw SingularLeaf("hit the one-pronged point p0");
    return Rational(1) - h;
}

}  // namespace

std::vector<Rational> transversalReturns(const SquareSystem& F, const Rational& start, int count) {
    std::vector<Rational> out;
    out.reserve(count);
    Rational h = start;
    bool towardLeft = true;  // forward flow: toward the side carrying the p(n) fan
    while ((int)out.size() < count) {
        h = towardLeft ? leftBounce(F, h) : rightBounce(h);
        out.push_back(h);
        towardLeft = !towardLeft;
    }
    return out;
}

IntervalExchange buildIET(int level) {
    if (level < 4) throw std::domain_error("buildIET: level must be >= 4");
    SquareSystem F = SquareSystem::buildF(level + 3);
    IntervalExchange iet;
    iet.level = level;
    for (int n = -2; n <= level - 2; ++n) {
        IntervalExchange::Piece pc;
        Rational a = F.y(n), b = F.y(n + 2);
        pc.lo = std::min(a, b);
        pc.hi = std::max(a, b);
        pc.shift = Rational(1) - F.y(n) - F.y(n + 2);
        pc.index = n;
        iet.pieces.push_back(pc);
    }
    return iet;
}

Rational IntervalExchange::apply(const Rational& t) const {
    if (t == Rational(1, 3)) throw std::domain_error("applyIET: singular point 1/3");
    for (const Piece& pc : pieces) {
        if (t == pc.lo || t == pc.hi) throw std::domain_error("applyIET: breakpoint " + t.str());
        if (pc.lo < t && t < pc.hi) return t + pc.shift;
    }
    throw std::domain_error("applyIET: point beyond truncation: " + t.str());
}

Rational IntervalExchange::totalSourceLength() const {
    Rational s(0);
    for (const Piece& pc : pieces) s += pc.hi - pc.lo;
    return s;
}

Rational IntervalExchange::totalImageLength() const {
    Rational s(0);
    for (const Piece& pc : pieces) s += (pc.hi + pc.shift) - (pc.lo + pc.shift);
    return s;
}

Histogram hittingHistogram(const SquareSystem& F, const Rational& start, long returns, int bins) {
    if (returns < 1 || bins < 1) throw std::domain_error("hittingHistogram: bad parameters");
    Histogram h;
    h.bins.assign(bins, 0);
    Rational cur = start;
    bool towardLeft = true;
    try {
        for (long i = 0; i < returns; ++i) {
            cur = towardLeft ? leftBounce(F, cur) : rightBounce(cur);
            towardLeft = !towardLeft;
            // bin index = floor(cur * bins)
            mpq_class scaled = cur.raw() * bins;
            mpz_class idx = scaled.get_num() / scaled.get_den();
            long b = idx.get_si();
            if (b >= bins) b = bins - 1;
            ++h.bins[b];
            ++h.total;
        }
    } catch (const SingularLeaf&) {
        h.singularLeaf = true;
    }
    return h;
}

}  // namespace flat
}  // namespace lamina
