#include "okh/oddcomplex.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace okh {

namespace {

// word of a subset: circle ids listed in decreasing rank order
std::vector<int> word_of(uint32_t subset, const std::vector<int>& ids,
                         const std::vector<int>& rank) {
    std::vector<int> w;  // circle indices
    for (int k = 0; k < int(ids.size()); ++k)
        if (subset & (uint32_t(1) << k)) w.push_back(k);
    std::sort(w.begin(), w.end(), [&](int a, int b) { return rank[a] > rank[b]; });
    return w;
}

// sort a sequence of target circle indices into decreasing target rank,
// tracking the sign; zero (nullopt) on repeats
std::optional<std::pair<uint32_t, int>> normalize(std::vector<int> seq,
                                                  const std::vector<int>& rank) {
    int sgn = 1;
    for (std::size_t i = 1; i < seq.size(); ++i)
        for (std::size_t k = i; k > 0 && rank[seq[k]] > rank[seq[k - 1]]; --k) {
            std::swap(seq[k], seq[k - 1]);
            sgn = -sgn;
        }
    uint32_t mask = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == seq[i + 1]) return std::nullopt;
        mask |= uint32_t(1) << seq[i];
    }
    return std::make_pair(mask, sgn);
}

}  // namespace

int OddFunctor::basepoint_circle(Vertex u) const {
    if (!d_.basepoint) throw std::runtime_error("diagram has no basepoint");
    return sm_[u].arc_circle.at(*d_.basepoint);
}

OddFunctor OddFunctor::build(const LinkDiagram& d, FunctorOptions opts) {
    OddFunctor f;
    f.d_ = d;
    f.sm_ = resolve_all(d);
    int n = d.n();
    f.eps_ = opts.eps ? *opts.eps : edge_assignment(d, f.sm_, opts.type);

    std::size_t nv = std::size_t(1) << n;
    f.ranks_.resize(nv);
    for (Vertex u = 0; u < nv; ++u) {
        int c = f.sm_[u].circles();
        if (!opts.ranks.empty()) {
            f.ranks_[u] = opts.ranks[u];
            if (int(f.ranks_[u].size()) != c) throw std::invalid_argument("bad rank table");
        } else {
            f.ranks_[u].resize(c);
            for (int k = 0; k < c; ++k) f.ranks_[u][k] = k;
        }
    }

    // canonical bases: subsets ordered by size, then by their descending-id
    // word lexicographically; independent of the rank permutations
    f.basis_.resize(nv);
    for (Vertex u = 0; u < nv; ++u) {
        int c = f.sm_[u].circles();
        std::vector<uint32_t> subs;
        for (uint32_t m = 0; m < (uint32_t(1) << c); ++m) subs.push_back(m);
        std::sort(subs.begin(), subs.end(), [&](uint32_t a, uint32_t b) {
            int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
            if (pa != pb) return pa < pb;
            // compare words (descending circle index = descending id)
            for (int k = c - 1; k >= 0; --k) {
                bool ba = a & (uint32_t(1) << k), bb = b & (uint32_t(1) << k);
                if (ba != bb) return bb;  // the one with the larger id first is smaller
            }
            return false;
        });
        f.basis_[u].subsets = subs;
        for (int k = 0; k < int(subs.size()); ++k) f.basis_[u].index[subs[k]] = k;
    }

    // edge maps
    f.edges_.assign(nv * std::size_t(n ? n : 1), {});
    for (Vertex v = 0; v < nv; ++v)
        for (int c = 0; c < n; ++c) {
            if (v & (Vertex(1) << c)) continue;
            Vertex u = v | (Vertex(1) << c);
            const Smoothing& sv = f.sm_[v];
            const Smoothing& su = f.sm_[u];
            SurgeryEvent ev = surgery_event(d, sv, su, v, c);
            const std::vector<int>& rank_v = f.ranks_[v];
            const std::vector<int>& rank_u = f.ranks_[u];
            auto tgt_index = [&](int id) {
                auto it = std::lower_bound(su.circle_ids.begin(), su.circle_ids.end(), id);
                assert(it != su.circle_ids.end() && *it == id);
                return int(it - su.circle_ids.begin());
            };
            int8_t esign = f.eps_.at(v, c) ? -1 : 1;
            auto& cols = f.edges_[std::size_t(v) * n + c];
            cols.resize(f.basis_[v].size());
            for (int src = 0; src < f.basis_[v].size(); ++src) {
                uint32_t sub = f.basis_[v].subsets[src];
                std::vector<int> w = word_of(sub, sv.circle_ids, rank_v);
                if (!ev.is_split) {
                    int k1 = tgt_index(ev.in1);  // also the index of in1 in sv up to rename
                    (void)k1;
                    int i1 = int(std::lower_bound(sv.circle_ids.begin(), sv.circle_ids.end(),
                                                  ev.in1) - sv.circle_ids.begin());
                    int i2 = int(std::lower_bound(sv.circle_ids.begin(), sv.circle_ids.end(),
                                                  ev.in2) - sv.circle_ids.begin());
                    bool h1 = sub & (uint32_t(1) << i1), h2 = sub & (uint32_t(1) << i2);
                    if (h1 && h2) continue;  // s ^ s = 0
                    // map circle indices of v to circle indices of u
                    std::vector<int> seq;
                    for (int kv : w) {
                        int id = sv.circle_ids[kv];
                        if (id == ev.in2) id = ev.out1;
                        seq.push_back(tgt_index(id));
                    }
                    auto norm = normalize(seq, rank_u);
                    if (!norm) continue;
                    cols[src].push_back({f.basis_[u].index.at(norm->first),
                                         int8_t(esign * norm->second)});
                } else {
                    // chi then left multiplication by (s1 - s2)
                    std::vector<int> chi;
                    for (int kv : w) {
                        int id = sv.circle_ids[kv];
                        if (id == ev.in1) id = ev.out1;
                        chi.push_back(tgt_index(id));
                    }
                    for (int which = 0; which < 2; ++which) {
                        int lead = which == 0 ? ev.out1 : ev.out2;
                        int8_t sgn0 = which == 0 ? 1 : -1;
                        std::vector<int> seq;
                        seq.push_back(tgt_index(lead));
                        seq.insert(seq.end(), chi.begin(), chi.end());
                        auto norm = normalize(seq, rank_u);
                        if (!norm) continue;
                        cols[src].push_back({f.basis_[u].index.at(norm->first),
                                             int8_t(esign * sgn0 * norm->second)});
                    }
                }
            }
        }
    return f;
}

const std::vector<Monomial>& QSlice::gens_at(int i) const {
    static const std::vector<Monomial> kEmpty;
    auto it = gens.find(i);
    return it == gens.end() ? kEmpty : it->second;
}

F2Matrix QSlice::f2_matrix(int i) const {
    std::size_t rows = gens_at(i + 1).size(), cols = gens_at(i).size();
    F2Matrix m(rows, cols);
    auto it = diff.find(i);
    if (it != diff.end())
        for (const Triplet& t : it->second)
            if (t.coeff & 1) m.flip(t.row, t.col);
    return m;
}

IntMatrix QSlice::int_matrix(int i) const {
    std::size_t rows = gens_at(i + 1).size(), cols = gens_at(i).size();
    IntMatrix m(rows, cols);
    auto it = diff.find(i);
    if (it != diff.end())
        for (const Triplet& t : it->second) m.add(t.row, t.col, t.coeff);
    return m;
}

namespace {

struct SliceBuilder {
    std::map<int, std::map<int, std::vector<Monomial>>> gens;   // j -> i -> gens
    std::map<int, std::map<int, std::map<Monomial, int>>> idx;  // j -> i -> gen -> pos

    void add(int j, int i, Monomial g) {
        auto& v = gens[j][i];
        idx[j][i][g] = int(v.size());
        v.push_back(g);
    }
};

GradedComplex assemble(const OddFunctor& f, const SignAssignment& s, Variant variant,
                       const std::function<bool(Vertex, uint32_t)>& keep, int q_shift) {
    const LinkDiagram& d = f.diagram();
    int n = d.n();
    GradedComplex out;
    out.variant = variant;
    out.n_plus = d.n_plus;
    out.n_minus = d.n_minus;

    SliceBuilder sb;
    for (Vertex u = 0; u < (Vertex(1) << n); ++u) {
        const VertexBasis& vb = f.basis(u);
        for (uint32_t sub : vb.subsets)
            if (keep(u, sub)) sb.add(f.qdeg(u, sub) + q_shift, f.grading(u), Monomial{u, sub});
    }
    for (auto& [j, by_i] : sb.gens) {
        QSlice& sl = out.slices[j];
        sl.gens = by_i;
    }
    // differentials
    for (Vertex v = 0; v < (Vertex(1) << n); ++v)
        for (int c = 0; c < n; ++c) {
            if (v & (Vertex(1) << c)) continue;
            Vertex u = v | (Vertex(1) << c);
            int8_t cube_sign = s.at(v, c) ? -1 : 1;
            const auto& cols = f.edge_cols(v, c);
            const VertexBasis& bv = f.basis(v);
            for (int src = 0; src < bv.size(); ++src) {
                uint32_t sub = bv.subsets[src];
                if (!keep(v, sub)) continue;
                int j = f.qdeg(v, sub) + q_shift;
                int i = f.grading(v);
                int col = sb.idx[j][i].at(Monomial{v, sub});
                for (auto [tgt, sgn] : cols[src]) {
                    uint32_t tsub = f.basis(u).subsets[tgt];
                    if (!keep(u, tsub)) continue;
                    assert(f.qdeg(u, tsub) + q_shift == j);
                    int row = sb.idx[j][i + 1].at(Monomial{u, tsub});
                    int8_t coeff = variant == Variant::Odd
                                       ? int8_t(cube_sign * sgn)
                                       : int8_t(cube_sign * (sgn ? 1 : 0));
                    out.slices[j].diff[i].push_back(Triplet{row, col, coeff});
                }
            }
        }
    // d^2 = 0 over Z, per slice
    for (auto& [j, sl] : out.slices) {
        for (auto& [i, gens_i] : sl.gens) {
            (void)gens_i;
            if (!sl.gens.count(i + 1) || !sl.gens.count(i + 2)) continue;
            IntMatrix a = sl.int_matrix(i);
            IntMatrix b = sl.int_matrix(i + 1);
            if (!b.mul(a).is_zero())
                throw std::runtime_error("d^2 != 0: edge assignment or face types invalid");
        }
    }
    return out;
}

}  // namespace

GradedComplex build_complex(const OddFunctor& f, const SignAssignment& s, Variant variant) {
    return assemble(f, s, variant, [](Vertex, uint32_t) { return true; }, 0);
}

AbelianGroup homology_at(const QSlice& sl, int i) {
    // H^i = ker d_i / im d_{i-1}
    std::size_t dim = sl.gens_at(i).size();
    AbelianGroup g;
    if (dim == 0) return g;
    IntMatrix d_i = sl.int_matrix(i);
    IntMatrix d_prev = sl.int_matrix(i - 1);
    std::size_t rank_i = int_rank(d_i);
    std::vector<int64_t> below = smith_diag(d_prev);
    std::size_t rank_prev = 0;
    for (int64_t x : below)
        if (x != 0) ++rank_prev;
    g.rank = int(dim - rank_i - rank_prev);
    for (int64_t x : below)
        if (x > 1) g.torsion.push_back(x);
    std::sort(g.torsion.begin(), g.torsion.end());
    return g;
}

std::map<std::pair<int, int>, AbelianGroup> homology(const GradedComplex& c) {
    std::map<std::pair<int, int>, AbelianGroup> out;
    for (auto& [j, sl] : c.slices) {
        int lo = sl.gens.begin()->first, hi = sl.gens.rbegin()->first;
        for (int i = lo; i <= hi; ++i) {
            AbelianGroup g = homology_at(sl, i);
            if (!g.trivial()) out[{i, j}] = g;
        }
    }
    return out;
}

ReducedSplit reduced_split(const OddFunctor& f, const SignAssignment& s, Variant variant) {
    if (!f.diagram().basepoint) throw std::invalid_argument("reduced_split: no basepoint");
    auto contains_pointed = [&](Vertex u, uint32_t sub) {
        return (sub >> f.basepoint_circle(u)) & 1;
    };
    ReducedSplit rs;
    rs.reduced = assemble(f, s, variant,
                          [&](Vertex u, uint32_t sub) { return bool(contains_pointed(u, sub)); },
                          +1);
    rs.complement = assemble(f, s, variant,
                             [&](Vertex u, uint32_t sub) { return !contains_pointed(u, sub); },
                             -1);
    return rs;
}

}  // namespace okh
