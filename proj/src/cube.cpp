#include "okh/cube.hpp"

#include <stdexcept>

namespace okh {

std::vector<SubCube> enumerate_subcubes(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("enumerate_subcubes: k out of range");
    std::vector<SubCube> out;
    // choose the k flipped coordinates, then the bottom on the rest
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    auto emit = [&](Vertex span) {
        Vertex rest = (Vertex(((std::size_t(1) << n) - 1)) & ~span);
        // iterate sub-masks of rest, including 0
        Vertex sub = 0;
        while (true) {
            out.push_back(SubCube{sub, Vertex(sub | span)});
            if (sub == rest) break;
            sub = (sub - rest) & rest;  // next sub-mask
        }
    };
    if (k == 0) {
        emit(0);
        return out;
    }
    while (true) {
        Vertex span = 0;
        for (int i : idx) span |= Vertex(1) << i;
        emit(span);
        int p = k - 1;
        while (p >= 0 && idx[p] == n - k + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    return out;
}

Cochain1 coboundary(const Cochain0& g) {
    Cochain1 out(g.n);
    for (Vertex v = 0; v < (Vertex(1) << g.n); ++v)
        for (int i = 0; i < g.n; ++i) {
            if (v & (Vertex(1) << i)) continue;
            out.at(v, i) = uint8_t((g.at(v) ^ g.at(v | (Vertex(1) << i))) & 1);
        }
    return out;
}

Cochain2 coboundary(const Cochain1& s) {
    Cochain2 out(s.n);
    for (Vertex w = 0; w < (Vertex(1) << s.n); ++w)
        for (int j = 1; j < s.n; ++j) {
            if (w & (Vertex(1) << j)) continue;
            for (int i = 0; i < j; ++i) {
                if (w & (Vertex(1) << i)) continue;
                Vertex v1 = w | (Vertex(1) << i), v2 = w | (Vertex(1) << j);
                out.at(w, i, j) =
                    uint8_t((s.at(w, i) ^ s.at(w, j) ^ s.at(v1, j) ^ s.at(v2, i)) & 1);
            }
        }
    return out;
}

uint8_t coboundary3(const Cochain2& f, Vertex x, int i, int j, int k) {
    Vertex bi = Vertex(1) << i, bj = Vertex(1) << j, bk = Vertex(1) << k;
    return uint8_t((f.at(x, i, j) ^ f.at(x, i, k) ^ f.at(x, j, k) ^ f.at(x | bk, i, j) ^
                    f.at(x | bj, i, k) ^ f.at(x | bi, j, k)) &
                   1);
}

SignAssignment standard_sign(int n) {
    SignAssignment s(n);
    for (Vertex v = 0; v < (Vertex(1) << n); ++v)
        for (int i = 0; i < n; ++i) {
            if (v & (Vertex(1) << i)) continue;
            // sum of the first i coordinates of the bottom vertex
            Vertex low = v & ((Vertex(1) << i) - 1);
            s.at(v, i) = uint8_t(vdeg(low) & 1);
        }
    return s;
}

FrameAssignment standard_frame(int n) {
    FrameAssignment f(n);
    for (Vertex w = 0; w < (Vertex(1) << n); ++w)
        for (int j = 1; j < n; ++j) {
            if (w & (Vertex(1) << j)) continue;
            for (int i = 0; i < j; ++i) {
                if (w & (Vertex(1) << i)) continue;
                int left = vdeg(w & ((Vertex(1) << i) - 1));
                Vertex mid_mask = ((Vertex(1) << j) - 1) & ~((Vertex(1) << (i + 1)) - 1);
                int mid = vdeg(w & mid_mask);
                f.at(w, i, j) = uint8_t((left & 1) & (mid & 1));
            }
        }
    return f;
}

bool is_sign_assignment(const SignAssignment& s) {
    Cochain2 d = coboundary(s);
    for (Vertex w = 0; w < (Vertex(1) << s.n); ++w)
        for (int j = 1; j < s.n; ++j)
            for (int i = 0; i < j; ++i) {
                if (w & ((Vertex(1) << i) | (Vertex(1) << j))) continue;
                if (d.at(w, i, j) != 1) return false;
            }
    return true;
}

bool is_frame_assignment(const FrameAssignment& f, const SignAssignment& s) {
    int n = f.n;
    for (Vertex x = 0; x < (Vertex(1) << n); ++x)
        for (int k = 2; k < n; ++k)
            for (int j = 1; j < k; ++j)
                for (int i = 0; i < j; ++i) {
                    Vertex m = (Vertex(1) << i) | (Vertex(1) << j) | (Vertex(1) << k);
                    if (x & m) continue;
                    uint8_t lhs = coboundary3(f, x, i, j, k);
                    uint8_t rhs = uint8_t((s.at(x, i) ^ s.at(x, j) ^ s.at(x, k)) & 1);
                    if (lhs != rhs) return false;
                }
    return true;
}

FaceSignQuad face_quad(const SignAssignment& s, Vertex w, int i, int j) {
    Vertex v1 = w | (Vertex(1) << i), v2 = w | (Vertex(1) << j);
    return FaceSignQuad{s.at(w, i), s.at(w, j), s.at(v2, i), s.at(v1, j)};
}

namespace {

void check_quads(const FaceSignQuad& p, const FaceSignQuad& q) {
    if (((p.a + p.b + p.c + p.d) & 1) != 1 || ((q.a + q.b + q.c + q.d) & 1) != 1)
        throw std::invalid_argument("frame_change: quad does not sum to 1");
}

}  // namespace

uint8_t frame_change(uint8_t f_old, const FaceSignQuad& p, const FaceSignQuad& q,
                     uint8_t delta, uint8_t eps) {
    check_quads(p, q);
    bool da = p.a != q.a, db = p.b != q.b, dc = p.c != q.c, dd = p.d != q.d;
    uint8_t a = p.a, b = p.b, c = p.c, d = p.d;
    uint8_t add;
    if (!da && !db && !dc && !dd) add = 0;
    else if (da && db && !dc && !dd) add = 1;
    else if (!da && !db && dc && dd) add = uint8_t(c ^ d);
    else if (da && !db && !dc && dd) add = uint8_t(delta ^ a);
    else if (!da && db && dc && !dd) add = uint8_t(delta ^ b);
    else if (da && !db && dc && !dd) add = uint8_t(delta ^ eps ^ b);
    else if (!da && db && !dc && dd) add = uint8_t(delta ^ eps ^ a);
    else if (da && db && dc && dd) add = uint8_t(a ^ b);
    else throw std::invalid_argument("frame_change: odd number of changed edges");
    return uint8_t((f_old ^ add) & 1);
}

uint8_t alt_frame_change(uint8_t f_old, const FaceSignQuad& p, const FaceSignQuad& q,
                         uint8_t eps) {
    check_quads(p, q);
    bool da = p.a != q.a, db = p.b != q.b, dc = p.c != q.c, dd = p.d != q.d;
    uint8_t c = p.c, d = p.d;
    uint8_t add;
    if (!da && !db && !dc && !dd) add = 0;
    else if (da && db && !dc && !dd) add = uint8_t(c ^ d);
    else if (!da && !db && dc && dd) add = 0;
    else if (da && !db && !dc && dd) add = d;
    else if (!da && db && dc && !dd) add = c;
    else if (da && !db && dc && !dd) add = uint8_t(eps ^ d);
    else if (!da && db && !dc && dd) add = uint8_t(eps ^ c);
    else if (da && db && dc && dd) add = uint8_t(c ^ d);
    else throw std::invalid_argument("alt_frame_change: odd number of changed edges");
    return uint8_t((f_old ^ add) & 1);
}

FrameAssignment frame_for(const FrameAssignment& f, const SignAssignment& s_old,
                          const SignAssignment& s_new, uint8_t delta, uint8_t eps) {
    int n = f.n;
    FrameAssignment out(n);
    for (Vertex w = 0; w < (Vertex(1) << n); ++w)
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                if (w & ((Vertex(1) << i) | (Vertex(1) << j))) continue;
                out.at(w, i, j) = frame_change(f.at(w, i, j), face_quad(s_old, w, i, j),
                                               face_quad(s_new, w, i, j), delta, eps);
            }
    return out;
}

SignAssignment random_sign(int n, std::mt19937_64& rng) {
    Cochain0 g(n);
    for (auto& v : g.val) v = uint8_t(rng() & 1);
    Cochain1 dg = coboundary(g);
    SignAssignment s = standard_sign(n);
    for (std::size_t k = 0; k < s.val.size(); ++k) s.val[k] ^= dg.val[k];
    return s;
}

FrameAssignment random_frame(int n, const SignAssignment& s, std::mt19937_64& rng) {
    FrameAssignment base = frame_for(standard_frame(n), standard_sign(n), s, 0, 0);
    Cochain1 h(n);
    for (auto& v : h.val) v = uint8_t(rng() & 1);
    Cochain2 dh = coboundary(h);
    for (std::size_t k = 0; k < base.val.size(); ++k) base.val[k] ^= dh.val[k];
    return base;
}

}  // namespace okh
