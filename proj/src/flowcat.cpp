#include "okh/flowcat.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace okh {

void FramedOneFlowCategory::rebuild_incidence() {
    points_from.assign(objects.size(), {});
    points_to.assign(objects.size(), {});
    intervals_from.assign(objects.size(), {});
    intervals_to.assign(objects.size(), {});
    for (int p = 0; p < int(points.size()); ++p) {
        points_from[points[p].from].push_back(p);
        points_to[points[p].to].push_back(p);
    }
    for (int iv = 0; iv < int(intervals.size()); ++iv) {
        intervals_from[intervals[iv].from].push_back(iv);
        intervals_to[intervals[iv].to].push_back(iv);
    }
}

void FramedOneFlowCategory::reframe() {
    for (ModuliInterval& iv : intervals) {
        FaceSignQuad cube = face_quad(cube_s, iv.face_w, iv.face_ci, iv.face_cj);
        FaceSignQuad induced{points[iv.b1].s, points[iv.b2].s, points[iv.a2].s, points[iv.a1].s};
        iv.framing = frame_change(cube_f.at(iv.face_w, iv.face_ci, iv.face_cj), cube, induced,
                                  delta, eps);
    }
}

FramedOneFlowCategory build_cover(const OddFunctor& f, const SignAssignment& s,
                                  const FrameAssignment& fr, uint8_t delta, uint8_t eps,
                                  Variant variant, int qslice,
                                  const std::function<bool(Vertex, uint32_t)>& keep) {
    const LinkDiagram& d = f.diagram();
    int n = d.n();
    FramedOneFlowCategory cat;
    cat.qslice = qslice;
    cat.variant = variant;
    cat.delta = delta;
    cat.eps = eps;
    cat.cube_s = s;
    cat.cube_f = fr;

    auto kept = [&](Vertex u, uint32_t sub) {
        return f.qdeg(u, sub) == qslice && (!keep || keep(u, sub));
    };

    for (Vertex u = 0; u < (Vertex(1) << n); ++u)
        for (uint32_t sub : f.basis(u).subsets)
            if (kept(u, sub)) {
                cat.object_index[Monomial{u, sub}] = int(cat.objects.size());
                cat.objects.push_back(Monomial{u, sub});
                cat.grading.push_back(f.grading(u));
            }

    // 0-dimensional moduli from the edge correspondences
    std::map<std::tuple<Vertex, int, int, int>, int> point_at;  // (v, c, src, tgt) -> id
    for (Vertex v = 0; v < (Vertex(1) << n); ++v)
        for (int c = 0; c < n; ++c) {
            if (v & (Vertex(1) << c)) continue;
            Vertex u = v | (Vertex(1) << c);
            const auto& cols = f.edge_cols(v, c);
            for (int src = 0; src < f.basis(v).size(); ++src) {
                uint32_t ysub = f.basis(v).subsets[src];
                if (!kept(v, ysub)) continue;
                auto to_it = cat.object_index.find(Monomial{v, ysub});
                for (auto [tgt, sgn] : cols[src]) {
                    uint32_t xsub = f.basis(u).subsets[tgt];
                    if (!kept(u, xsub)) continue;
                    ModuliPoint p;
                    p.from = cat.object_index.at(Monomial{u, xsub});
                    p.to = to_it->second;
                    p.sigma = sgn < 0 ? 1 : 0;
                    p.s = uint8_t(s.at(v, c) ^ (variant == Variant::Odd ? p.sigma : 0));
                    p.edge_v = v;
                    p.edge_c = c;
                    point_at[{v, c, src, tgt}] = int(cat.points.size());
                    cat.points.push_back(p);
                }
            }
        }

    // interval moduli: pair the two-step routes of each face by their signs
    struct Route { int bpt, apt; uint8_t sigma; };
    for (Vertex w = 0; w < (Vertex(1) << n); ++w)
        for (int cj = 1; cj < n; ++cj) {
            if (w & (Vertex(1) << cj)) continue;
            for (int ci = 0; ci < cj; ++ci) {
                if (w & (Vertex(1) << ci)) continue;
                Vertex m1 = w | (Vertex(1) << ci), m2 = w | (Vertex(1) << cj);
                Vertex u = m1 | (Vertex(1) << cj);
                // routes from each kept source y at w to each kept target x at u
                std::map<std::pair<int, int>, std::array<std::vector<Route>, 2>> buckets;
                auto collect = [&](Vertex mid, int c_first, int c_second, int side) {
                    const auto& cols1 = f.edge_cols(w, c_first);
                    const auto& cols2 = f.edge_cols(mid, c_second);
                    for (int src = 0; src < f.basis(w).size(); ++src) {
                        if (!kept(w, f.basis(w).subsets[src])) continue;
                        for (auto [m, sgn1] : cols1[src]) {
                            if (!kept(mid, f.basis(mid).subsets[m])) continue;
                            for (auto [tgt, sgn2] : cols2[m]) {
                                if (!kept(u, f.basis(u).subsets[tgt])) continue;
                                Route r;
                                r.bpt = point_at.at({w, c_first, src, m});
                                r.apt = point_at.at({mid, c_second, m, tgt});
                                r.sigma = uint8_t(((sgn1 < 0) ^ (sgn2 < 0)) ? 1 : 0);
                                buckets[{src, tgt}][side].push_back(r);
                            }
                        }
                    }
                };
                collect(m1, ci, cj, 0);
                collect(m2, cj, ci, 1);
                for (auto& [key, sides] : buckets) {
                    auto& r1 = sides[0];
                    auto& r2 = sides[1];
                    if (r1.size() != r2.size())
                        throw std::runtime_error("composition bijection mismatch");
                    auto by_sigma = [](const Route& a, const Route& b) { return a.sigma < b.sigma; };
                    std::sort(r1.begin(), r1.end(), by_sigma);
                    std::sort(r2.begin(), r2.end(), by_sigma);
                    if (r1.size() > 2)
                        throw std::runtime_error("composition bijection mismatch: >2 routes");
                    if (r1.size() == 2 && (r1[0].sigma == r1[1].sigma || r2[0].sigma == r2[1].sigma))
                        throw std::runtime_error("composition bijection ambiguous");
                    for (std::size_t k = 0; k < r1.size(); ++k) {
                        if (r1[k].sigma != r2[k].sigma)
                            throw std::runtime_error("composition bijection mismatch: signs");
                        ModuliInterval iv;
                        iv.to = cat.points[r1[k].bpt].to;
                        iv.from = cat.points[r1[k].apt].from;
                        iv.b1 = r1[k].bpt;
                        iv.a1 = r1[k].apt;
                        iv.b2 = r2[k].bpt;
                        iv.a2 = r2[k].apt;
                        iv.face_w = w;
                        iv.face_ci = ci;
                        iv.face_cj = cj;
                        cat.intervals.push_back(iv);
                    }
                }
            }
        }

    cat.reframe();
    cat.rebuild_incidence();
    return cat;
}

ValidationReport validate(const FramedOneFlowCategory& cat) {
    ValidationReport rep;
    auto complain = [&](const std::string& msg) { rep.violations.push_back(msg); };

    // (1) interval boundaries are genuine points with matching objects
    for (int k = 0; k < int(cat.intervals.size()); ++k) {
        const ModuliInterval& iv = cat.intervals[k];
        for (int pid : {iv.b1, iv.a1, iv.b2, iv.a2})
            if (pid < 0 || pid >= int(cat.points.size())) {
                complain("interval " + std::to_string(k) + ": dangling boundary point");
                continue;
            }
        const ModuliPoint &b1 = cat.points[iv.b1], &a1 = cat.points[iv.a1];
        const ModuliPoint &b2 = cat.points[iv.b2], &a2 = cat.points[iv.a2];
        if (b1.to != iv.to || b2.to != iv.to || a1.from != iv.from || a2.from != iv.from ||
            b1.from != a1.to || b2.from != a2.to)
            complain("interval " + std::to_string(k) + ": boundary objects mismatch");
        // (2) the sign axiom on this interval
        if (((b1.s + a1.s + b2.s + a2.s) & 1) != 1)
            complain("interval " + std::to_string(k) + ": sign axiom fails");
    }

    // (3) hexagon decomposition and framing compatibility per (a, d)
    // pieces are glued along composite triples (P, B, A)
    struct Piece {
        std::array<std::array<int, 3>, 2> ends;  // two endpoint triples
        uint8_t contribution;                    // f(I) or 1 + s(P) + f(J)
    };
    std::map<std::pair<int, int>, std::vector<Piece>> pieces;
    for (const ModuliInterval& iv : cat.intervals) {
        // I x {Q}: intervals M(b,d) paired with points Q in M(a,b)
        for (int q : cat.points_to[iv.from]) {
            const ModuliPoint& qp = cat.points[q];
            Piece pc;
            pc.ends[0] = {iv.b1, iv.a1, q};
            pc.ends[1] = {iv.b2, iv.a2, q};
            pc.contribution = iv.framing;
            pieces[{qp.from, iv.to}].push_back(pc);
        }
        // {P} x J: points P in M(c,d) with intervals J in M(a,c)
        for (int p : cat.points_from[iv.to]) {
            const ModuliPoint& pp = cat.points[p];
            Piece pc;
            pc.ends[0] = {p, iv.b1, iv.a1};
            pc.ends[1] = {p, iv.b2, iv.a2};
            pc.contribution = uint8_t(1 ^ pp.s ^ iv.framing);
            pieces[{iv.from, pp.to}].push_back(pc);
        }
    }
    for (auto& [ad, ps] : pieces) {
        // glue into cycles
        std::map<std::array<int, 3>, std::vector<int>> at;
        for (int k = 0; k < int(ps.size()); ++k) {
            at[ps[k].ends[0]].push_back(k);
            at[ps[k].ends[1]].push_back(k);
        }
        for (auto& [tri, inc] : at)
            if (inc.size() != 2) {
                complain("boundary (a,d) not closed: triple degree " + std::to_string(inc.size()));
                return rep;
            }
        std::vector<char> used(ps.size(), 0);
        for (int start = 0; start < int(ps.size()); ++start) {
            if (used[start]) continue;
            int count = 0;
            uint8_t total = 0;
            int cur = start;
            std::array<int, 3> enter = ps[start].ends[0];
            while (!used[cur]) {
                used[cur] = 1;
                ++count;
                total ^= ps[cur].contribution;
                std::array<int, 3> out =
                    (ps[cur].ends[0] == enter) ? ps[cur].ends[1] : ps[cur].ends[0];
                auto& inc = at[out];
                int nxt = (inc[0] == cur) ? inc[1] : inc[0];
                enter = out;
                cur = nxt;
            }
            if (count != 6)
                complain("hexagon at objects (" + std::to_string(ad.first) + "," +
                         std::to_string(ad.second) + ") has " + std::to_string(count) + " pieces");
            if (total != 1)
                complain("compatibility fails at objects (" + std::to_string(ad.first) + "," +
                         std::to_string(ad.second) + ")");
        }
    }

    // cube covers never produce circle moduli; nothing else to check here
    return rep;
}

FramedOneFlowCategory sign_change_at(const FramedOneFlowCategory& cat, int object) {
    FramedOneFlowCategory out = cat;
    for (ModuliPoint& p : out.points)
        if (p.from == object || p.to == object) p.s ^= 1;
    out.reframe();
    return out;
}

FlowComplex cochain_complex(const FramedOneFlowCategory& cat) {
    FlowComplex fc;
    for (int k = 0; k < cat.num_objects(); ++k) fc.objects_by_grading[cat.grading[k]].push_back(k);
    return fc;
}

IntMatrix FlowComplex::matrix(const FramedOneFlowCategory& cat, int i) const {
    auto lo = objects_by_grading.find(i);
    auto hi = objects_by_grading.find(i + 1);
    std::size_t cols = lo == objects_by_grading.end() ? 0 : lo->second.size();
    std::size_t rows = hi == objects_by_grading.end() ? 0 : hi->second.size();
    IntMatrix m(rows, cols);
    if (!rows || !cols) return m;
    std::map<int, int> row_of, col_of;
    for (std::size_t k = 0; k < rows; ++k) row_of[hi->second[k]] = int(k);
    for (std::size_t k = 0; k < cols; ++k) col_of[lo->second[k]] = int(k);
    for (const ModuliPoint& p : cat.points) {
        auto r = row_of.find(p.from);
        auto c = col_of.find(p.to);
        if (r == row_of.end() || c == col_of.end()) continue;
        m.add(r->second, c->second, p.s ? -1 : 1);
    }
    return m;
}

F2Matrix FlowComplex::f2(const FramedOneFlowCategory& cat, int i) const {
    IntMatrix m = matrix(cat, i);
    F2Matrix f(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c) & 1) f.set(r, c, true);
    return f;
}

}  // namespace okh
