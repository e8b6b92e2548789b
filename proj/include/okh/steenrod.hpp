#pragma once

#include "okh/f2.hpp"
#include "okh/flowcat.hpp"
#include "okh/oddcomplex.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

// The second Steenrod square of a framed 1-flow category via combinatorial
// boundary matchings and special graph structures, the Bockstein Sq^1 from
// the integral complex, and Chang-word summaries per quantum degree.

namespace okh {

// canonical F2 homology data of one bidegree
struct HomologyBasis {
    std::size_t dim_chain = 0;
    Subspace cocycles, coboundaries;
    std::vector<F2Vec> reps;  // project to a basis of H

    std::size_t dim() const { return reps.size(); }
    // coordinates of a cocycle's class in the chosen basis
    F2Vec coords(const F2Vec& z) const;
};

HomologyBasis homology_basis(const QSlice& sl, int i);

// pairs of point ids per middle object; first/second is the pair order
struct BoundaryMatching {
    std::map<int, std::vector<std::pair<int, int>>> pairs;
};

// phi: cocycle over the grading-k objects of the category (complex order)
BoundaryMatching boundary_matching(const FramedOneFlowCategory& cat, int k, const F2Vec& phi,
                                   std::optional<uint64_t> seed = std::nullopt);

struct SpecialGraphStructure {
    // vertex = (B, A) pair of point ids
    std::vector<std::pair<int, int>> verts;
    std::vector<uint8_t> vsign;
    struct Edge {
        int v1, v2;
        bool framed_edge;          // in E' (from an interval), carries f
        uint8_t f;                 // framing value when framed_edge
        bool directed;             // in E'' (equal endpoint signs)
    };
    std::vector<Edge> edges;
    int loops = 0;  // |L|; cube covers produce none
};

SpecialGraphStructure graph_structure(const FramedOneFlowCategory& cat, int a_obj,
                                      const F2Vec& phi, const BoundaryMatching& m);

// the value sq^phi(a) = |L| + sum_C (1 + F(C) + D(C))
uint8_t sq_value(const SpecialGraphStructure& g);

// sq^phi as a vector over the grading-(k+2) objects
F2Vec sq_cochain(const FramedOneFlowCategory& cat, int k, const F2Vec& phi,
                 const BoundaryMatching& m);

// Sq^2 : H^i -> H^{i+2} in the canonical bases of the q-slice
F2Matrix sq2_matrix(const QSlice& sl, const FramedOneFlowCategory& cat, int i,
                    std::optional<uint64_t> matching_seed = std::nullopt);

// Bockstein Sq^1 : H^i -> H^{i+1} from the integral complex of the slice
F2Matrix sq1_matrix(const QSlice& sl, int i);

// Chang word of a q-slice given its operation matrices.
// dims/sq2/sq1 indexed by homological degree.
std::string chang_word(const std::map<int, int>& h_dims,
                       const std::map<int, F2Matrix>& sq2,
                       const std::map<int, F2Matrix>& sq1);

struct SteenrodEntry {
    int i = 0, j = 0;
    F2Matrix matrix;
    std::size_t rank_ = 0;
};

struct SteenrodReport {
    std::string variant;  // sq2e0 | sq2e1 | sq2even | sq1odd | sq1even
    std::vector<SteenrodEntry> entries;
    std::map<int, std::string> chang;  // per q (degree-2 operations only)
};

}  // namespace okh
