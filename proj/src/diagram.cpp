#include "okh/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace okh {

namespace {

// chord layout per smoothing bit: chord 0 contains slot 0
int chord_partner(int bit, int slot) {
    if (bit == 0) {
        static const int p[4] = {3, 2, 1, 0};
        return p[slot];
    }
    static const int p[4] = {1, 0, 3, 2};
    return p[slot];
}
int chord_of_slot(int bit, int slot) {
    if (bit == 0) return (slot == 0 || slot == 3) ? 0 : 1;
    return (slot == 0 || slot == 1) ? 0 : 1;
}

}  // namespace

LinkDiagram parse_pd(const std::string& text) {
    LinkDiagram d;
    std::vector<int> basepoints;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError("pd parse error at offset " + std::to_string(pos) + ": " + msg);
    };
    auto skip_ws = [&]() {
        while (pos < text.size() && (std::isspace((unsigned char)text[pos]) || text[pos] == ','))
            ++pos;
    };
    auto read_int = [&]() {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && text[pos] == '-') { neg = true; ++pos; }
        if (pos >= text.size() || !std::isdigit((unsigned char)text[pos])) fail("expected integer");
        long v = 0;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return int(neg ? -v : v);
    };
    int n_free = 0;
    while (true) {
        skip_ws();
        if (pos >= text.size()) break;
        char c = text[pos];
        if (c == 'X' || c == 'x') {
            ++pos;
            skip_ws();
            if (pos >= text.size() || text[pos] != '[') fail("expected '[' after X");
            ++pos;
            PdCrossing cr;
            for (int k = 0; k < 4; ++k) cr.arc[k] = read_int();
            skip_ws();
            if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
            ++pos;
            d.crossings.push_back(cr);
        } else if (c == 'U' || c == 'u') {
            ++pos;
            ++n_free;
        } else if (c == '*') {
            ++pos;
            basepoints.push_back(read_int());
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    if (basepoints.size() > 1) throw ParseError("multiple basepoint markers");

    // occurrence check: every arc label exactly twice
    std::map<int, std::vector<std::pair<int, int>>> occ;  // arc -> (crossing, slot)
    for (int c = 0; c < d.n(); ++c)
        for (int s = 0; s < 4; ++s) occ[d.crossings[c].arc[s]].push_back({c, s});
    for (auto& [arc, v] : occ)
        if (v.size() != 2)
            throw ParseError("arc " + std::to_string(arc) + " occurs " +
                             std::to_string(v.size()) + " times (want 2)");

    int max_arc = 0;
    for (auto& [arc, v] : occ) max_arc = std::max(max_arc, arc);
    for (int k = 0; k < n_free; ++k) d.free_loops.push_back(max_arc + 1 + k);

    // orient components: walk the strands (slot pairs (0,2) and (1,3));
    // an under-passage forces the direction, over-only components fall back
    // to sending the smallest arc toward its smaller-labelled continuation
    d.inflow.assign(d.n(), {0, 0, 0, 0});
    std::set<std::pair<int, int>> seen;  // (crossing, slot) already oriented
    int components = 0;
    for (auto& [arc0, v0] : occ) {
        if (seen.count(v0[0])) continue;
        ++components;
        // collect the cycle of (crossing, slot-in, slot-out) passages starting here
        struct Passage { int c, s_in, s_out, arc_in; };
        std::vector<Passage> cyc;
        int c = v0[0].first, s = v0[0].second;
        int arc = arc0;
        do {
            int s_out = (s + 2) & 3;
            cyc.push_back({c, s, s_out, arc});
            int next_arc = d.crossings[c].arc[s_out];
            auto& o = occ[next_arc];
            auto other = (o[0] == std::make_pair(c, s_out)) ? o[1] : o[0];
            c = other.first;
            s = other.second;
            arc = next_arc;
        } while (!(c == v0[0].first && s == v0[0].second));
        // direction: does some passage enter at slot 0 or slot 2?
        int dir = 0;  // +1 as traversed, -1 reversed, 0 undecided
        for (auto& p : cyc) {
            if (p.s_in == 0 || p.s_out == 0) {
                int forced = (p.s_in == 0) ? +1 : -1;
                if (dir != 0 && dir != forced) throw ParseError("inconsistent under-strand orientation");
                dir = forced;
            }
        }
        if (dir == 0) {
            // over-only component: smallest arc flows toward the smaller label
            int best = INT32_MAX, best_idx = -1;
            for (std::size_t k = 0; k < cyc.size(); ++k)
                if (cyc[k].arc_in < best) { best = cyc[k].arc_in; best_idx = int(k); }
            int nxt = d.crossings[cyc[best_idx].c].arc[cyc[best_idx].s_out];
            std::size_t prev_idx = (best_idx + cyc.size() - 1) % cyc.size();
            int prv = cyc[prev_idx].arc_in;
            dir = (nxt <= prv) ? +1 : -1;
        }
        for (auto& p : cyc) {
            int sin = dir > 0 ? p.s_in : p.s_out;
            int sout = dir > 0 ? p.s_out : p.s_in;
            d.inflow[p.c][sin] = 1;
            d.inflow[p.c][sout] = 0;
            seen.insert({p.c, sin});
            seen.insert({p.c, sout});
        }
    }
    d.num_components = components + n_free;

    d.sign.assign(d.n(), 0);
    d.arrow_rev.assign(d.n(), 0);
    for (int c = 0; c < d.n(); ++c) {
        if (!d.inflow[c][0] || d.inflow[c][2]) throw ParseError("under-strand orientation broken");
        if (d.inflow[c][1] == d.inflow[c][3]) throw ParseError("over-strand orientation broken");
        d.sign[c] = d.inflow[c][1] ? +1 : -1;
        if (d.sign[c] > 0) ++d.n_plus; else ++d.n_minus;
    }
    if (basepoints.size() == 1) {
        bool is_loop = std::find(d.free_loops.begin(), d.free_loops.end(), basepoints[0]) !=
                       d.free_loops.end();
        if (!occ.count(basepoints[0]) && !is_loop)
            throw ParseError("basepoint arc " + std::to_string(basepoints[0]) + " not present");
        d.basepoint = basepoints[0];
    }
    return d;
}

std::string to_pd(const LinkDiagram& d) {
    std::ostringstream os;
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        if (c) os << ' ';
        os << "X[" << d.crossings[c].arc[0] << ',' << d.crossings[c].arc[1] << ','
           << d.crossings[c].arc[2] << ',' << d.crossings[c].arc[3] << ']';
    }
    for (std::size_t k = 0; k < d.free_loops.size(); ++k) os << (d.crossings.empty() && k == 0 ? "U" : " U");
    if (d.basepoint) os << " * " << *d.basepoint;
    return os.str();
}

LinkDiagram mirror(const LinkDiagram& d) {
    std::ostringstream os;
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        auto& a = d.crossings[c].arc;
        os << "X[" << a[0] << ',' << a[3] << ',' << a[2] << ',' << a[1] << "] ";
    }
    for (std::size_t k = 0; k < d.free_loops.size(); ++k) os << "U ";
    if (d.basepoint) os << "* " << *d.basepoint;
    return parse_pd(os.str());
}

Smoothing resolve(const LinkDiagram& d, Vertex u) {
    Smoothing sm;
    int n = d.n();
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) occ[d.crossings[c].arc[s]].push_back({c, s});

    std::vector<std::array<uint8_t, 4>> visited(n, {0, 0, 0, 0});
    std::vector<std::vector<int>> circle_arcs;
    sm.chord_circle.assign(n, {-1, -1});
    for (int c0 = 0; c0 < n; ++c0)
        for (int s0 = 0; s0 < 4; ++s0) {
            if (visited[c0][s0]) continue;
            int idx = int(circle_arcs.size());
            circle_arcs.emplace_back();
            int c = c0, s = s0;
            do {
                int bit = (u >> c) & 1;
                visited[c][s] = 1;
                int p = chord_partner(bit, s);
                visited[c][p] = 1;
                sm.chord_circle[c][chord_of_slot(bit, s)] = idx;
                int arc = d.crossings[c].arc[p];
                circle_arcs[idx].push_back(arc);
                auto& o = occ[arc];
                auto other = (o[0] == std::make_pair(c, p)) ? o[1] : o[0];
                c = other.first;
                s = other.second;
            } while (!(c == c0 && s == s0));
        }
    for (int loop_arc : d.free_loops) circle_arcs.push_back({loop_arc});

    // canonical ids: minimal arc label; order circles ascending by id
    std::vector<std::pair<int, int>> id_idx;
    for (std::size_t k = 0; k < circle_arcs.size(); ++k)
        id_idx.push_back({*std::min_element(circle_arcs[k].begin(), circle_arcs[k].end()), int(k)});
    std::sort(id_idx.begin(), id_idx.end());
    std::vector<int> remap(circle_arcs.size());
    for (std::size_t k = 0; k < id_idx.size(); ++k) {
        remap[id_idx[k].second] = int(k);
        sm.circle_ids.push_back(id_idx[k].first);
    }
    for (int c = 0; c < n; ++c) {
        sm.chord_circle[c][0] = remap[sm.chord_circle[c][0]];
        sm.chord_circle[c][1] = remap[sm.chord_circle[c][1]];
    }
    for (std::size_t k = 0; k < circle_arcs.size(); ++k)
        for (int arc : circle_arcs[k]) sm.arc_circle[arc] = remap[k];
    return sm;
}

std::vector<Smoothing> resolve_all(const LinkDiagram& d) {
    std::vector<Smoothing> out;
    out.reserve(std::size_t(1) << d.n());
    for (Vertex u = 0; u < (Vertex(1) << d.n()); ++u) out.push_back(resolve(d, u));
    return out;
}

SurgeryEvent surgery_event(const LinkDiagram& d, const Smoothing& sv, const Smoothing& su,
                           Vertex v, int c) {
    assert(((v >> c) & 1) == 0);
    (void)v;
    SurgeryEvent ev;
    int k1 = sv.chord_circle[c][0], k2 = sv.chord_circle[c][1];
    if (k1 != k2) {
        ev.is_split = false;
        int id1 = sv.circle_ids[k1], id2 = sv.circle_ids[k2];
        ev.in1 = std::min(id1, id2);
        ev.in2 = std::max(id1, id2);
        int out = su.circle_ids[su.arc_circle.at(d.crossings[c].arc[0])];
        ev.out1 = ev.out2 = out;
        assert(out == ev.in1);  // merged id is the smaller input id
    } else {
        ev.is_split = true;
        ev.in1 = ev.in2 = sv.circle_ids[k1];
        int s1 = su.circle_ids[su.chord_circle[c][0]];
        int s2 = su.circle_ids[su.chord_circle[c][1]];
        if (d.arrow_rev[c]) std::swap(s1, s2);
        assert(s1 != s2);
        ev.out1 = s1;
        ev.out2 = s2;
    }
    return ev;
}

namespace {

// exterior-algebra words as descending id sequences; terms are (word, sign)
using Word = std::vector<int>;
struct Term { Word w; int sgn; };

// substitute one id and re-sort, tracking the transposition sign; zero if
// the substituted id collides
std::optional<Term> substitute(const Word& w, int from, int to) {
    Term t{w, 1};
    auto it = std::find(t.w.begin(), t.w.end(), from);
    if (it == t.w.end()) return t;
    *it = to;
    // bubble into place
    std::size_t i = it - t.w.begin();
    while (i + 1 < t.w.size() && t.w[i] < t.w[i + 1]) {
        if (t.w[i] == t.w[i + 1]) return std::nullopt;
        std::swap(t.w[i], t.w[i + 1]);
        t.sgn = -t.sgn;
        ++i;
    }
    while (i > 0 && t.w[i] > t.w[i - 1]) {
        std::swap(t.w[i], t.w[i - 1]);
        t.sgn = -t.sgn;
        --i;
    }
    for (std::size_t k = 0; k + 1 < t.w.size(); ++k)
        if (t.w[k] == t.w[k + 1]) return std::nullopt;
    return t;
}

std::optional<Term> left_mult(const Word& w, int id) {
    Term t{{}, 1};
    t.w.reserve(w.size() + 1);
    int greater = 0;
    bool placed = false;
    for (int x : w) {
        if (x == id) return std::nullopt;
        if (x > id) ++greater;
        else if (!placed) {
            t.w.push_back(id);
            placed = true;
        }
        t.w.push_back(x);
    }
    if (!placed) t.w.push_back(id);
    t.sgn = (greater & 1) ? -1 : 1;  // id moved past the larger letters
    return t;
}

std::vector<Term> apply_event(const SurgeryEvent& ev, const Word& w) {
    std::vector<Term> out;
    if (!ev.is_split) {
        bool h1 = std::find(w.begin(), w.end(), ev.in1) != w.end();
        bool h2 = std::find(w.begin(), w.end(), ev.in2) != w.end();
        if (h1 && h2) return out;  // s ^ s = 0
        auto t = substitute(w, ev.in2, ev.out1);
        if (t) out.push_back(*t);
        return out;
    }
    auto chi = substitute(w, ev.in1, ev.out1);
    if (!chi) return out;
    if (auto t1 = left_mult(chi->w, ev.out1)) out.push_back({t1->w, t1->sgn * chi->sgn});
    if (auto t2 = left_mult(chi->w, ev.out2)) out.push_back({t2->w, -t2->sgn * chi->sgn});
    return out;
}

std::vector<Term> apply_two(const SurgeryEvent& e1, const SurgeryEvent& e2, const Word& w) {
    std::vector<Term> acc;
    for (const Term& t1 : apply_event(e1, w))
        for (const Term& t2 : apply_event(e2, t1.w)) acc.push_back({t2.w, t1.sgn * t2.sgn});
    // combine equal words
    std::sort(acc.begin(), acc.end(), [](const Term& a, const Term& b) { return a.w < b.w; });
    std::vector<Term> out;
    for (auto& t : acc) {
        if (!out.empty() && out.back().w == t.w)
            out.back().sgn += t.sgn;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.sgn == 0; }),
              out.end());
    return out;
}

}  // namespace

FaceType classify_face(const LinkDiagram& d, const std::vector<Smoothing>& sm, Vertex w, int ci,
                       int cj) {
    Vertex bi = Vertex(1) << ci, bj = Vertex(1) << cj;
    assert(!(w & bi) && !(w & bj));
    const Smoothing& sw = sm[w];
    const Smoothing& s1 = sm[w | bi];
    const Smoothing& s2 = sm[w | bj];
    const Smoothing& su = sm[w | bi | bj];
    SurgeryEvent ei = surgery_event(d, sw, s1, w, ci);
    SurgeryEvent ej = surgery_event(d, sw, s2, w, cj);
    SurgeryEvent ej_after = surgery_event(d, s1, su, w | bi, cj);
    SurgeryEvent ei_after = surgery_event(d, s2, su, w | bj, ci);

    if (ei.is_split && ej.is_split && ei.in1 == ej.in1 && !ej_after.is_split) {
        // one circle, two interleaved splitting arcs: X or Y by the planar rule
        assert(!ei_after.is_split);
        // canonical traversal: the circle walked with crossing ci's chords
        // crossed counterclockwise (slot s -> s+1 mod 4)
        struct Endpoint { int crossing; int chord; };
        std::vector<Endpoint> order;
        std::map<int, std::vector<std::pair<int, int>>> occ;
        for (int c = 0; c < d.n(); ++c)
            for (int s = 0; s < 4; ++s) occ[d.crossings[c].arc[s]].push_back({c, s});
        // start across ci's slot-{0,3} chord as 3 -> 0, i.e. counterclockwise:
        // this is the direction keeping ci's surgery arc on the left
        int c = ci, s_in = 3;
        std::vector<std::array<int, 2>> passage_dir(d.n(), {0, 0});
        do {
            int bit = int((Vertex(w) >> c) & 1);
            int s_out = chord_partner(bit, s_in);
            if (c == ci || c == cj) {
                int chord = chord_of_slot(bit, s_in);
                order.push_back({c, chord});
                passage_dir[c][chord] = (s_out == ((s_in + 1) & 3)) ? +1 : -1;
            }
            int arc = d.crossings[c].arc[s_out];
            auto& o = occ[arc];
            auto other = (o[0] == std::make_pair(c, s_out)) ? o[1] : o[0];
            c = other.first;
            s_in = other.second;
        } while (!(c == ci && s_in == 3));
        if (order.size() != 4) throw std::runtime_error("face traversal did not see 4 endpoints");
        // ci's two chords cross with equal handedness (its arc lies on one
        // side of the circle); cj's likewise, on the other side
        if (passage_dir[ci][0] != passage_dir[ci][1] || passage_dir[cj][0] != passage_dir[cj][1] ||
            passage_dir[ci][0] == passage_dir[cj][0])
            throw std::runtime_error("face traversal chirality inconsistent");
        int tail_i = d.arrow_rev[ci] ? 1 : 0;
        int tail_j = d.arrow_rev[cj] ? 1 : 0;
        int start = -1;
        for (int k = 0; k < 4; ++k)
            if (order[k].crossing == ci && order[k].chord == tail_i) start = k;
        assert(start >= 0);
        if (order[(start + 2) & 3].crossing != ci)
            throw std::runtime_error("face endpoints not interleaved");
        const Endpoint& next = order[(start + 1) & 3];
        return (next.crossing == cj && next.chord == tail_j) ? FaceType::X : FaceType::Y;
    }

    // algebraic classification on the circles the two surgeries touch
    std::vector<int> inv{ei.in1, ei.in2, ej.in1, ej.in2};
    std::sort(inv.begin(), inv.end());
    inv.erase(std::unique(inv.begin(), inv.end()), inv.end());
    bool all_equal = true, all_opposite = true, any_nonzero = false;
    for (Vertex mask = 0; mask < (Vertex(1) << inv.size()); ++mask) {
        Word word;
        for (int k = int(inv.size()) - 1; k >= 0; --k)
            if (mask & (Vertex(1) << k)) word.push_back(inv[k]);
        std::vector<Term> r1 = apply_two(ei, ej_after, word);
        std::vector<Term> r2 = apply_two(ej, ei_after, word);
        if (r1.size() != r2.size()) throw std::runtime_error("face composites differ in support");
        for (std::size_t k = 0; k < r1.size(); ++k) {
            if (r1[k].w != r2[k].w) throw std::runtime_error("face composites differ in support");
            any_nonzero = true;
            if (r1[k].sgn != r2[k].sgn) all_equal = false;
            if (r1[k].sgn != -r2[k].sgn) all_opposite = false;
        }
    }
    if (!any_nonzero) throw std::runtime_error("face composites vanish but face is not X/Y");
    if (all_equal && !all_opposite) return FaceType::C;
    if (all_opposite && !all_equal) return FaceType::A;
    throw std::runtime_error("face composites neither equal nor opposite");
}

FaceData classify_all_faces(const LinkDiagram& d, const std::vector<Smoothing>& sm,
                            EdgeAssignmentType type) {
    int n = d.n();
    FaceData fd{Cochain2(n), {}};
    fd.face_type.assign((std::size_t(1) << n) * std::size_t(num_pairs(n) ? num_pairs(n) : 1),
                        FaceType::C);
    for (Vertex w = 0; w < (Vertex(1) << n); ++w)
        for (int j = 1; j < n; ++j) {
            if (w & (Vertex(1) << j)) continue;
            for (int i = 0; i < j; ++i) {
                if (w & (Vertex(1) << i)) continue;
                FaceType t = classify_face(d, sm, w, i, j);
                fd.face_type[std::size_t(w) * num_pairs(n) + pair_index(n, i, j)] = t;
                bool special = (type == EdgeAssignmentType::X) ? (t == FaceType::X)
                                                               : (t == FaceType::Y);
                fd.types.at(w, i, j) = uint8_t((t == FaceType::A || special) ? 1 : 0);
            }
        }
    return fd;
}

Cochain1 solve_delta1(const Cochain2& rhs) {
    int n = rhs.n;
    Cochain1 eps(n);
    for (Vertex v = 0; v < (Vertex(1) << n); ++v)
        for (int i = 0; i < n; ++i) {
            if (v & (Vertex(1) << i)) continue;
            uint8_t acc = 0;
            Vertex x = v;
            for (int c = n - 1; c > i; --c) {
                if (x & (Vertex(1) << c)) {
                    x ^= Vertex(1) << c;
                    acc ^= rhs.at(x, i, c);
                }
            }
            eps.at(v, i) = acc;
        }
    return eps;
}

Cochain1 edge_assignment(const LinkDiagram& d, const std::vector<Smoothing>& sm,
                         EdgeAssignmentType type) {
    int n = d.n();
    FaceData fd = classify_all_faces(d, sm, type);
    // the prescription must be closed over every 3-cube
    for (Vertex x = 0; x < (Vertex(1) << n); ++x)
        for (int k = 2; k < n; ++k)
            for (int j = 1; j < k; ++j)
                for (int i = 0; i < j; ++i) {
                    Vertex m = (Vertex(1) << i) | (Vertex(1) << j) | (Vertex(1) << k);
                    if (x & m) continue;
                    if (coboundary3(fd.types, x, i, j, k) != 0)
                        throw std::runtime_error("face classification invalid");
                }
    Cochain1 eps = solve_delta1(fd.types);
    Cochain2 check = coboundary(eps);
    for (std::size_t k = 0; k < check.val.size(); ++k)
        if (check.val[k] != fd.types.val[k])
            throw std::runtime_error("edge assignment solver failed");
    return eps;
}

}  // namespace okh
