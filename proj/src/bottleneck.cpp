#include "chordal/bottleneck.hpp"

#include <algorithm>
#include <cmath>

namespace chordal {

namespace {

struct Pt {
    double b, d;
    double pers_half() const { return 0.5 * (d - b); }
};

double linf(const Pt& p, const Pt& q) {
    return std::max(std::abs(p.b - q.b), std::abs(p.d - q.d));
}

// Kuhn's augmenting-path matching on an adjacency list.
struct Matcher {
    std::vector<std::vector<int>> adj;
    std::vector<int> match_l, match_r;
    std::vector<char> seen;

    bool try_augment(int u) {
        for (int v : adj[size_t(u)]) {
            if (seen[size_t(v)]) continue;
            seen[size_t(v)] = 1;
            if (match_r[size_t(v)] < 0 || try_augment(match_r[size_t(v)])) {
                match_l[size_t(u)] = v;
                match_r[size_t(v)] = u;
                return true;
            }
        }
        return false;
    }

    int run(size_t nl, size_t nr) {
        match_l.assign(nl, -1);
        match_r.assign(nr, -1);
        int matched = 0;
        for (size_t u = 0; u < nl; ++u) {
            seen.assign(nr, 0);
            if (try_augment(int(u))) ++matched;
        }
        return matched;
    }
};

// Feasibility of radius r for the finite parts. Points with persistence
// <= 2r that are not within r of a forced point pair with the diagonal and
// drop out of the instance.
bool feasible(const std::vector<Pt>& P1, const std::vector<Pt>& P2, double r) {
    std::vector<int> big1, big2;
    for (size_t i = 0; i < P1.size(); ++i)
        if (P1[i].pers_half() > r) big1.push_back(int(i));
    for (size_t j = 0; j < P2.size(); ++j)
        if (P2[j].pers_half() > r) big2.push_back(int(j));

    std::vector<int> keep1 = big1, keep2 = big2;
    for (size_t i = 0; i < P1.size(); ++i) {
        if (P1[i].pers_half() > r) continue;
        for (int j : big2)
            if (linf(P1[i], P2[size_t(j)]) <= r) {
                keep1.push_back(int(i));
                break;
            }
    }
    for (size_t j = 0; j < P2.size(); ++j) {
        if (P2[j].pers_half() > r) continue;
        for (int i : big1)
            if (linf(P1[size_t(i)], P2[j]) <= r) {
                keep2.push_back(int(j));
                break;
            }
    }

    // Left side: kept points of P1, then diagonal copies of kept P2 points.
    // Right side: kept points of P2, then diagonal copies of kept P1 points.
    const size_t n1 = keep1.size(), n2 = keep2.size();
    Matcher m;
    m.adj.assign(n1 + n2, {});
    for (size_t a = 0; a < n1; ++a) {
        const Pt& p = P1[size_t(keep1[a])];
        for (size_t b = 0; b < n2; ++b)
            if (linf(p, P2[size_t(keep2[b])]) <= r)
                m.adj[a].push_back(int(b));
        if (p.pers_half() <= r) m.adj[a].push_back(int(n2 + a));
    }
    for (size_t a = 0; a < n2; ++a) {
        const Pt& q = P2[size_t(keep2[a])];
        if (q.pers_half() <= r) m.adj[n1 + a].push_back(int(a));
        for (size_t b = 0; b < n1; ++b)
            m.adj[n1 + a].push_back(int(n2 + b));  // diagonal to diagonal
    }
    return m.run(n1 + n2, n1 + n2) == int(n1 + n2);
}

}  // namespace

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                  int dim) {
    std::vector<Pt> P1, P2, inf1, inf2;
    for (const DiagramPoint& pt : d1.points)
        if (pt.dim == dim)
            (std::isfinite(pt.death) ? P1 : inf1).push_back({pt.birth, pt.death});
    for (const DiagramPoint& pt : d2.points)
        if (pt.dim == dim)
            (std::isfinite(pt.death) ? P2 : inf2).push_back({pt.birth, pt.death});

    if (inf1.size() != inf2.size()) return kInf;
    double r_inf = 0;
    {
        auto by_birth = [](const Pt& a, const Pt& b) { return a.b < b.b; };
        std::sort(inf1.begin(), inf1.end(), by_birth);
        std::sort(inf2.begin(), inf2.end(), by_birth);
        for (size_t k = 0; k < inf1.size(); ++k)
            r_inf = std::max(r_inf, std::abs(inf1[k].b - inf2[k].b));
    }

    if (P1.empty() && P2.empty()) return r_inf;

    // Candidate radii: pairwise L-infinity gaps and half persistences.
    std::vector<double> cand;
    cand.push_back(0.0);
    for (const Pt& p : P1) cand.push_back(p.pers_half());
    for (const Pt& q : P2) cand.push_back(q.pers_half());
    if (P1.size() * P2.size() <= size_t(8) * 1024 * 1024) {
        for (const Pt& p : P1)
            for (const Pt& q : P2) cand.push_back(linf(p, q));
    } else {
        // Large instances: only gaps against significant points matter in
        // practice; include pairs where either side has persistence above
        // the median to keep the candidate set manageable.
        std::vector<double> pers;
        for (const Pt& p : P1) pers.push_back(p.pers_half());
        for (const Pt& q : P2) pers.push_back(q.pers_half());
        std::nth_element(pers.begin(), pers.begin() + pers.size() / 2,
                         pers.end());
        const double med = pers[pers.size() / 2];
        for (const Pt& p : P1)
            for (const Pt& q : P2)
                if (p.pers_half() > med || q.pers_half() > med)
                    cand.push_back(linf(p, q));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    cand.erase(std::remove_if(cand.begin(), cand.end(),
                              [&](double r) { return r < r_inf; }),
               cand.end());
    cand.insert(cand.begin(), r_inf);

    // The largest candidate (every point to the diagonal) is feasible.
    size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (feasible(P1, P2, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max(cand[lo], r_inf);
}

}  // namespace chordal
