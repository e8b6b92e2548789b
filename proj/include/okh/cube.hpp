#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <vector>

// Combinatorics of the n-dimensional cube {0,1}^n: sub-cubes, low-degree
// cochains, sign assignments on edges, frame assignments on square faces,
// and the two framing-change tables.
//
// Vertices are bitmasks. An edge is (bottom vertex v, flipped bit i) with
// top v|1<<i; a face is (bottom w, flipped bits i<j).

namespace okh {

using Vertex = uint32_t;

inline int vdeg(Vertex u) { return __builtin_popcount(u); }

struct SubCube {
    Vertex bottom = 0, top = 0;
    int dim() const { return vdeg(top ^ bottom); }
    bool operator==(const SubCube& o) const { return bottom == o.bottom && top == o.top; }
    bool operator<(const SubCube& o) const {
        return bottom != o.bottom ? bottom < o.bottom : top < o.top;
    }
};

// all k-dimensional sub-cubes of the n-cube; count C(n,k) * 2^(n-k)
std::vector<SubCube> enumerate_subcubes(int n, int k);

inline int pair_index(int n, int i, int j) {  // i < j
    (void)n;
    return j * (j - 1) / 2 + i;
}
inline int num_pairs(int n) { return n * (n - 1) / 2; }

struct Cochain0 {
    int n = 0;
    std::vector<uint8_t> val;  // 2^n
    explicit Cochain0(int n_) : n(n_), val(std::size_t(1) << n_, 0) {}
    uint8_t& at(Vertex v) { return val[v]; }
    uint8_t at(Vertex v) const { return val[v]; }
};

struct Cochain1 {
    int n = 0;
    std::vector<uint8_t> val;  // 2^n * n, indexed v*n+i (only v with bit i clear used)
    Cochain1() = default;
    explicit Cochain1(int n_) : n(n_), val((std::size_t(1) << n_) * std::size_t(n_ ? n_ : 1), 0) {}
    uint8_t& at(Vertex v, int i) { return val[std::size_t(v) * n + i]; }
    uint8_t at(Vertex v, int i) const { return val[std::size_t(v) * n + i]; }
};

struct Cochain2 {
    int n = 0;
    std::vector<uint8_t> val;  // 2^n * C(n,2)
    Cochain2() = default;
    explicit Cochain2(int n_)
        : n(n_), val((std::size_t(1) << n_) * std::size_t(num_pairs(n_) ? num_pairs(n_) : 1), 0) {}
    uint8_t& at(Vertex w, int i, int j) { return val[std::size_t(w) * num_pairs(n) + pair_index(n, i, j)]; }
    uint8_t at(Vertex w, int i, int j) const { return val[std::size_t(w) * num_pairs(n) + pair_index(n, i, j)]; }
};

using SignAssignment = Cochain1;   // valid iff delta = 1 on every face
using FrameAssignment = Cochain2;  // valid iff the 3-cube compatibility holds

Cochain1 coboundary(const Cochain0& g);
Cochain2 coboundary(const Cochain1& s);
// delta of a 2-cochain evaluated on the 3-cube (x; i<j<k)
uint8_t coboundary3(const Cochain2& f, Vertex x, int i, int j, int k);

SignAssignment standard_sign(int n);
FrameAssignment standard_frame(int n);

bool is_sign_assignment(const SignAssignment& s);
// compatibility over every 3-cube: delta(f)(C_{u,x}) = s(x,i)+s(x,j)+s(x,k)
bool is_frame_assignment(const FrameAssignment& f, const SignAssignment& s);

// The four edge signs of a square face in the layout of the framing-change
// table: with u = w|i|j (i<j), v1 = w|i, v2 = w|j:
//   a = s(w -> v1), b = s(w -> v2), c = s(v2 -> u), d = s(v1 -> u).
struct FaceSignQuad {
    uint8_t a = 0, b = 0, c = 0, d = 0;
    bool operator==(const FaceSignQuad& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

FaceSignQuad face_quad(const SignAssignment& s, Vertex w, int i, int j);

// Framing change when the edge signs of a face move from `from` to `to`.
// Both quads must sum to 1; the number of differing slots must be even.
uint8_t frame_change(uint8_t f_old, const FaceSignQuad& from, const FaceSignQuad& to,
                     uint8_t delta, uint8_t eps);
// The alternative table; standard at eps matches alternative at 1+eps.
uint8_t alt_frame_change(uint8_t f_old, const FaceSignQuad& from, const FaceSignQuad& to,
                         uint8_t eps);

// Frame for s_new built facewise from a frame for s_old via the table.
FrameAssignment frame_for(const FrameAssignment& f, const SignAssignment& s_old,
                          const SignAssignment& s_new, uint8_t delta, uint8_t eps);

// seeded re-rolls: s* + delta(random 0-cochain), frame + delta(random 1-cochain)
SignAssignment random_sign(int n, std::mt19937_64& rng);
FrameAssignment random_frame(int n, const SignAssignment& s, std::mt19937_64& rng);

}  // namespace okh
