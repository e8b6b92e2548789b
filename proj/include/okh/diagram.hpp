#pragma once

#include "okh/cube.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Link diagrams from PD codes, their resolution cubes, and the face data the
// odd complex needs: circle tracing per cube vertex, merge/split surgery
// events with the per-crossing arrow convention, commutation-chart face
// types, and edge assignments.
//
// PD slots are listed counterclockwise from the incoming under-strand:
// slot 0 = under in, 2 = under out, 1/3 = the over strand. The 0-smoothing
// joins slots (0,3) and (1,2), the 1-smoothing joins (0,1) and (2,3). The
// surgery arrow points from the (0,3) chord to the (1,2) chord; rotated a
// quarter turn counterclockwise it points at the (2,3) chord, which is the
// circle called s2 in a split.

namespace okh {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

struct PdCrossing {
    std::array<int, 4> arc{};  // arc labels, slots 0..3
};

struct LinkDiagram {
    std::vector<PdCrossing> crossings;
    std::vector<int8_t> sign;        // +1 / -1 per crossing
    std::vector<uint8_t> arrow_rev;  // surgery arrow reversed at this crossing
    std::vector<int> free_loops;     // synthetic arc ids of crossing-free unknots
    std::optional<int> basepoint;    // arc label
    int num_components = 0;
    int n_plus = 0, n_minus = 0;

    int n() const { return int(crossings.size()); }
    // inflow[c][s]: the strand enters crossing c at slot s
    std::vector<std::array<uint8_t, 4>> inflow;
};

LinkDiagram parse_pd(const std::string& text);
std::string to_pd(const LinkDiagram& d);

// mirror image: reflect the plane, X[a,b,c,d] -> X[a,d,c,b]
LinkDiagram mirror(const LinkDiagram& d);

struct Smoothing {
    std::vector<int> circle_ids;                    // ascending; id = minimal arc label
    std::vector<std::array<int, 2>> chord_circle;   // per crossing: circle index of the
                                                    // chord containing slot 0, and the other
    std::map<int, int> arc_circle;                  // arc label -> circle index
    int circles() const { return int(circle_ids.size()); }
};

Smoothing resolve(const LinkDiagram& d, Vertex u);

struct SurgeryEvent {
    bool is_split = false;
    // merge: {lo, hi} -> lo ; split: old -> (s1, s2), s2 pointed to by the arrow
    int in1 = 0, in2 = 0;   // merge inputs (ids, in1 < in2) or split input (in1 = in2)
    int out1 = 0, out2 = 0; // merge output (out1 = out2) or split outputs (s1, s2)
};

// event for the cube edge v -> v|1<<c (bit c of v clear)
SurgeryEvent surgery_event(const LinkDiagram& d, const Smoothing& sv, const Smoothing& su,
                           Vertex v, int c);

enum class FaceType : uint8_t { A, C, X, Y };

// all smoothings of the cube, indexed by vertex
std::vector<Smoothing> resolve_all(const LinkDiagram& d);

FaceType classify_face(const LinkDiagram& d, const std::vector<Smoothing>& smoothings,
                       Vertex w, int ci, int cj);

enum class EdgeAssignmentType : uint8_t { X, Y };

struct FaceData {
    Cochain2 types;          // 1 where the type is A or the selected special type
    std::vector<FaceType> face_type;  // per face index w*C(n,2)+pair
};

// classify every face and build the prescription delta(eps) must satisfy
FaceData classify_all_faces(const LinkDiagram& d, const std::vector<Smoothing>& smoothings,
                            EdgeAssignmentType type);

// 1-cochain eps with delta(eps) = prescription; throws std::runtime_error
// ("face classification invalid") when the prescription is not closed.
Cochain1 edge_assignment(const LinkDiagram& d, const std::vector<Smoothing>& smoothings,
                         EdgeAssignmentType type);
Cochain1 solve_delta1(const Cochain2& rhs);  // generic constructive solver

}  // namespace okh
