#include "okh/steenrod.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace okh {

F2Vec HomologyBasis::coords(const F2Vec& z) const {
    // solve [reps | coboundary basis] x = z and keep the rep coordinates
    std::size_t nb = reps.size(), nc = coboundaries.basis.size();
    F2Matrix a(dim_chain, nb + nc);
    for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t r = 0; r < dim_chain; ++r)
            if (reps[k].get(r)) a.set(r, k, true);
    for (std::size_t k = 0; k < nc; ++k)
        for (std::size_t r = 0; r < dim_chain; ++r)
            if (coboundaries.basis[k].get(r)) a.set(r, nb + k, true);
    auto x = solve_f2(a, z);
    if (!x) throw std::runtime_error("cocycle not in the span of basis and coboundaries");
    F2Vec out(nb);
    for (std::size_t k = 0; k < nb; ++k)
        if (x->get(k)) out.set(k, true);
    return out;
}

HomologyBasis homology_basis(const QSlice& sl, int i) {
    HomologyBasis hb;
    hb.dim_chain = sl.gens_at(i).size();
    hb.cocycles = kernel_basis(sl.f2_matrix(i));
    F2Matrix below = sl.f2_matrix(i - 1);
    std::vector<F2Vec> imgs;
    F2Matrix t = below.transposed();
    for (std::size_t c = 0; c < below.cols(); ++c) imgs.push_back(t.row(c));
    hb.coboundaries = make_subspace(hb.dim_chain, std::move(imgs));
    hb.reps = quotient_reps(hb.cocycles, hb.coboundaries);
    return hb;
}

BoundaryMatching boundary_matching(const FramedOneFlowCategory& cat, int k, const F2Vec& phi,
                                   std::optional<uint64_t> seed) {
    // object -> index within its grading, complex order
    std::map<int, int> pos_k;
    {
        int c = 0;
        for (int o = 0; o < cat.num_objects(); ++o)
            if (cat.grading[o] == k) pos_k[o] = c++;
    }
    BoundaryMatching bm;
    std::optional<std::mt19937_64> rng;
    if (seed) rng.emplace(*seed);
    for (int b = 0; b < cat.num_objects(); ++b) {
        if (cat.grading[b] != k + 1) continue;
        std::vector<int> pts;
        for (int p : cat.points_from[b]) {
            auto it = pos_k.find(cat.points[p].to);
            if (it != pos_k.end() && phi.get(it->second)) pts.push_back(p);
        }
        if (pts.empty()) continue;
        if (pts.size() % 2)
            throw std::runtime_error("phi is not a cocycle: odd boundary count");
        std::sort(pts.begin(), pts.end(), [&](int x, int y) {
            if (cat.points[x].to != cat.points[y].to) return cat.points[x].to < cat.points[y].to;
            return x < y;
        });
        if (rng) std::shuffle(pts.begin(), pts.end(), *rng);
        auto& out = bm.pairs[b];
        for (std::size_t t = 0; t + 1 < pts.size(); t += 2) out.push_back({pts[t], pts[t + 1]});
    }
    return bm;
}

SpecialGraphStructure graph_structure(const FramedOneFlowCategory& cat, int a_obj,
                                      const F2Vec& phi, const BoundaryMatching& m) {
    int k = cat.grading[a_obj] - 2;
    std::map<int, int> pos_k;
    {
        int c = 0;
        for (int o = 0; o < cat.num_objects(); ++o)
            if (cat.grading[o] == k) pos_k[o] = c++;
    }
    auto in_phi = [&](int obj) {
        auto it = pos_k.find(obj);
        return it != pos_k.end() && phi.get(it->second);
    };

    SpecialGraphStructure g;
    std::map<std::pair<int, int>, int> vid;
    auto vertex = [&](int bpt, int apt) {
        auto key = std::make_pair(bpt, apt);
        auto it = vid.find(key);
        if (it != vid.end()) return it->second;
        int id = int(g.verts.size());
        vid[key] = id;
        g.verts.push_back(key);
        g.vsign.push_back(uint8_t(cat.points[bpt].s ^ cat.points[apt].s));
        return id;
    };

    // E' edges from the intervals of M(a, c_i)
    for (int ivid : cat.intervals_from[a_obj]) {
        const ModuliInterval& iv = cat.intervals[ivid];
        if (!in_phi(iv.to)) continue;
        int v1 = vertex(iv.b1, iv.a1);
        int v2 = vertex(iv.b2, iv.a2);
        g.edges.push_back({v1, v2, true, iv.framing, false});
    }
    // matching edges
    for (auto& [b, prs] : m.pairs) {
        for (auto [p1, p2] : prs)
            for (int apt : cat.points_to[b]) {
                if (cat.points[apt].from != a_obj) continue;
                int v1 = vertex(p1, apt);
                int v2 = vertex(p2, apt);
                bool directed = cat.points[p1].s == cat.points[p2].s;
                g.edges.push_back({v1, v2, false, 0, directed});
            }
    }

    // structure checks (definition of a special graph structure)
    std::vector<int> deg_e(g.verts.size(), 0), deg_o(g.verts.size(), 0);
    for (auto& e : g.edges) {
        (e.framed_edge ? deg_e : deg_o)[e.v1]++;
        (e.framed_edge ? deg_e : deg_o)[e.v2]++;
        uint8_t s1 = g.vsign[e.v1], s2 = g.vsign[e.v2];
        if (e.framed_edge && s1 == s2)
            throw std::runtime_error("graph structure: framed edge joins equal signs");
        if (!e.framed_edge && ((s1 == s2) != e.directed))
            throw std::runtime_error("graph structure: direction/sign mismatch");
    }
    for (std::size_t v = 0; v < g.verts.size(); ++v)
        if (deg_e[v] != 1 || deg_o[v] != 1)
            throw std::runtime_error("graph structure: vertex degrees broken");
    return g;
}

uint8_t sq_value(const SpecialGraphStructure& g) {
    // components are circles alternating framed and matching edges
    std::vector<std::vector<std::pair<int, int>>> adj(g.verts.size());  // (edge, other end)
    for (int e = 0; e < int(g.edges.size()); ++e) {
        adj[g.edges[e].v1].push_back({e, g.edges[e].v2});
        adj[g.edges[e].v2].push_back({e, g.edges[e].v1});
    }
    std::vector<char> used(g.edges.size(), 0);
    uint8_t total = uint8_t(g.loops & 1);
    std::vector<char> seen(g.verts.size(), 0);
    for (std::size_t v0 = 0; v0 < g.verts.size(); ++v0) {
        if (seen[v0]) continue;
        uint8_t f_sum = 0, d_sum = 0;
        // walk the circle: traversal direction from v0 via its first edge
        int v = int(v0);
        int e = adj[v0][0].first;
        while (!used[e]) {
            used[e] = 1;
            seen[v] = 1;
            const auto& ed = g.edges[e];
            int w = (ed.v1 == v) ? ed.v2 : ed.v1;
            if (ed.framed_edge) f_sum ^= ed.f;
            if (ed.directed && ed.v1 == v) d_sum ^= 1;  // points along the traversal
            seen[w] = 1;
            // continue out of w along the other edge
            int nxt = (adj[w][0].first == e) ? adj[w][1].first : adj[w][0].first;
            v = w;
            e = nxt;
        }
        total ^= uint8_t(1 ^ f_sum ^ d_sum);
    }
    return total;
}

F2Vec sq_cochain(const FramedOneFlowCategory& cat, int k, const F2Vec& phi,
                 const BoundaryMatching& m) {
    std::vector<int> tops;
    for (int o = 0; o < cat.num_objects(); ++o)
        if (cat.grading[o] == k + 2) tops.push_back(o);
    F2Vec out(tops.size());
    for (std::size_t t = 0; t < tops.size(); ++t) {
        SpecialGraphStructure g = graph_structure(cat, tops[t], phi, m);
        if (sq_value(g)) out.set(t, true);
    }
    return out;
}

F2Matrix sq2_matrix(const QSlice& sl, const FramedOneFlowCategory& cat, int i,
                    std::optional<uint64_t> matching_seed) {
    HomologyBasis src = homology_basis(sl, i);
    HomologyBasis dst = homology_basis(sl, i + 2);
    F2Matrix out(dst.dim(), src.dim());
    for (std::size_t c = 0; c < src.dim(); ++c) {
        BoundaryMatching m = boundary_matching(cat, i, src.reps[c], matching_seed);
        F2Vec sq = sq_cochain(cat, i, src.reps[c], m);
        // the class is well defined; reduce into the destination basis
        F2Vec coords = dst.coords(sq);
        for (std::size_t r = 0; r < dst.dim(); ++r)
            if (coords.get(r)) out.set(r, c, true);
    }
    return out;
}

F2Matrix sq1_matrix(const QSlice& sl, int i) {
    HomologyBasis src = homology_basis(sl, i);
    HomologyBasis dst = homology_basis(sl, i + 1);
    IntMatrix d_i = sl.int_matrix(i);
    F2Matrix out(dst.dim(), src.dim());
    for (std::size_t c = 0; c < src.dim(); ++c) {
        // lift to {0,1}, integral coboundary is 2y, return [y mod 2]
        F2Vec y(d_i.rows());
        for (std::size_t r = 0; r < d_i.rows(); ++r) {
            int64_t acc = 0;
            for (std::size_t k = 0; k < d_i.cols(); ++k)
                if (src.reps[c].get(k)) acc += d_i.get(r, k);
            if (acc & 1) throw std::runtime_error("sq1: representative is not a cocycle");
            if ((acc / 2) & 1) y.set(r, true);
        }
        F2Vec coords = dst.coords(y);
        for (std::size_t r = 0; r < dst.dim(); ++r)
            if (coords.get(r)) out.set(r, c, true);
    }
    return out;
}

std::string chang_word(const std::map<int, int>& h_dims, const std::map<int, F2Matrix>& sq2,
                       const std::map<int, F2Matrix>& sq1) {
    std::vector<int> support;
    for (auto& [i, d] : h_dims)
        if (d > 0) support.push_back(i);
    if (support.empty()) return "none";
    int lo = support.front(), hi = support.back();
    if (hi - lo < 2) return "none";
    if (hi - lo > 2) return "wide";
    for (auto& [i, d] : h_dims)
        if (d > 1) return "wide";
    auto rank_of = [](const std::map<int, F2Matrix>& m, int i) {
        auto it = m.find(i);
        return it == m.end() ? std::size_t(0) : rank(it->second);
    };
    if (rank_of(sq2, lo) == 0) return "none";
    bool sub2 = rank_of(sq1, lo) != 0;      // Sq^1(x) != 0
    bool suf2 = rank_of(sq1, lo + 1) != 0;  // Sq^2(x) lands in Im Sq^1 (both 1-dim)
    std::string w;
    if (sub2) w += "_2";
    w += "eta";
    if (suf2) w += "2";
    return w;
}

}  // namespace okh
