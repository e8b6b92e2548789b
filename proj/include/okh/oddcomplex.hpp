#pragma once

#include "okh/cube.hpp"
#include "okh/diagram.hpp"
#include "okh/f2.hpp"
#include "okh/intmat.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

// The odd Khovanov functor on the resolution cube: monomial bases of the
// exterior algebras, signed edge maps, and the graded cochain complexes over
// Z and F2 split by quantum degree. Gradings: i = |u| - n_-, and
// q = (|S_u| - 2r) + |u| + n_+ - 2n_-.

namespace okh {

struct Monomial {
    Vertex u = 0;
    uint32_t subset = 0;  // bitmask over the circle indices of S_u
    bool operator==(const Monomial& o) const { return u == o.u && subset == o.subset; }
    bool operator<(const Monomial& o) const {
        return u != o.u ? u < o.u : subset < o.subset;
    }
};

struct VertexBasis {
    std::vector<uint32_t> subsets;              // canonical: by size, then word order
    std::unordered_map<uint32_t, int> index;    // subset -> position
    int size() const { return int(subsets.size()); }
};

enum class Variant : uint8_t { Odd, Even };

struct FunctorOptions {
    EdgeAssignmentType type = EdgeAssignmentType::X;
    // optional overrides; empty = canonical (solved edge assignment, identity orders)
    std::optional<Cochain1> eps;
    // per-vertex circle ranks (permutation of 0..circles-1); words descend by rank
    std::vector<std::vector<int>> ranks;
};

class OddFunctor {
public:
    static OddFunctor build(const LinkDiagram& d, FunctorOptions opts = {});

    const LinkDiagram& diagram() const { return d_; }
    const std::vector<Smoothing>& smoothings() const { return sm_; }
    const Cochain1& eps() const { return eps_; }
    int n() const { return d_.n(); }

    const VertexBasis& basis(Vertex u) const { return basis_[u]; }
    // edge (v, c): for each source monomial index, the signed targets in F_u
    using Column = std::vector<std::pair<int, int8_t>>;
    const std::vector<Column>& edge_cols(Vertex v, int c) const {
        return edges_[std::size_t(v) * d_.n() + c];
    }

    int grading(Vertex u) const { return vdeg(u) - d_.n_minus; }
    int qdeg(Vertex u, uint32_t subset) const {
        return sm_[u].circles() - 2 * __builtin_popcount(subset) + vdeg(u) + d_.n_plus -
               2 * d_.n_minus;
    }
    // circle index of the basepoint circle at u (requires a basepoint)
    int basepoint_circle(Vertex u) const;

private:
    LinkDiagram d_;
    std::vector<Smoothing> sm_;
    Cochain1 eps_;
    std::vector<std::vector<int>> ranks_;
    std::vector<VertexBasis> basis_;
    std::vector<std::vector<Column>> edges_;
};

struct Triplet {
    int row, col;
    int8_t coeff;
};

// one quantum degree of the complex
struct QSlice {
    std::map<int, std::vector<Monomial>> gens;      // per homological degree i
    std::map<int, std::vector<Triplet>> diff;       // d_i : C^i -> C^{i+1}
    const std::vector<Monomial>& gens_at(int i) const;
    F2Matrix f2_matrix(int i) const;                // rows = dim C^{i+1}
    IntMatrix int_matrix(int i) const;
};

struct GradedComplex {
    Variant variant = Variant::Odd;
    int n_plus = 0, n_minus = 0;
    std::map<int, QSlice> slices;  // by quantum degree j

    const QSlice* slice(int j) const {
        auto it = slices.find(j);
        return it == slices.end() ? nullptr : &it->second;
    }
};

// sign assignment folded in: d = (-1)^{s(edge)} eps_{x,y}; checks d^2 = 0 over Z
GradedComplex build_complex(const OddFunctor& f, const SignAssignment& s,
                            Variant variant = Variant::Odd);

// integral homology of one bidegree (i, j)
struct AbelianGroup {
    int rank = 0;
    std::vector<int64_t> torsion;  // invariant factors > 1
    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
};

AbelianGroup homology_at(const QSlice& s, int i);
std::map<std::pair<int, int>, AbelianGroup> homology(const GradedComplex& c);

// reduced subcomplex (monomials containing the pointed circle, reduced q = q+1)
// and the complementary quotient (reduced q = q-1)
struct ReducedSplit {
    GradedComplex reduced;     // \tilde C
    GradedComplex complement;  // \bar C
};
ReducedSplit reduced_split(const OddFunctor& f, const SignAssignment& s,
                           Variant variant = Variant::Odd);

}  // namespace okh
