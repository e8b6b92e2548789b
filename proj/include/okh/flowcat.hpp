#pragma once

#include "okh/cube.hpp"
#include "okh/oddcomplex.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Framed 1-flow categories over the cube: objects graded by i = |u| - n_-,
// 0-dimensional moduli points over cube edges, interval moduli over square
// faces with framings induced by the framing-change table, all restricted to
// a single quantum degree. Covers are built from the odd functor; the even
// (forgetful) variant keeps the interval pairings but drops the signs.

namespace okh {

struct ModuliPoint {
    int from = -1, to = -1;  // object indices, grading(from) = grading(to) + 1
    uint8_t sigma = 0;       // correspondence sign (odd functor)
    uint8_t s = 0;           // sign assignment value s_F
    Vertex edge_v = 0;       // covered edge: bottom vertex and coordinate
    int edge_c = 0;
};

struct ModuliInterval {
    int from = -1, to = -1;  // grading(from) = grading(to) + 2
    int b1 = -1, a1 = -1;    // boundary (B1,A1) through the middle with the
    int b2 = -1, a2 = -1;    // lower flipped coordinate; (B2,A2) the other
    uint8_t framing = 0;
    Vertex face_w = 0;       // covered face: bottom vertex and coordinates
    int face_ci = 0, face_cj = 0;
};

struct FramedOneFlowCategory {
    int qslice = 0;
    Variant variant = Variant::Odd;
    uint8_t delta = 0, eps = 0;
    SignAssignment cube_s;
    FrameAssignment cube_f;

    std::vector<Monomial> objects;           // canonical order
    std::vector<int> grading;                 // per object
    std::map<Monomial, int> object_index;
    std::vector<ModuliPoint> points;
    std::vector<ModuliInterval> intervals;

    // incidence caches
    std::vector<std::vector<int>> points_from, points_to;        // by object
    std::vector<std::vector<int>> intervals_from, intervals_to;  // by object

    int num_objects() const { return int(objects.size()); }
    void rebuild_incidence();
    // recompute every interval framing from the stored cube data
    void reframe();
};

// one framed 1-flow category per quantum degree; keep = optional object filter
FramedOneFlowCategory build_cover(const OddFunctor& f, const SignAssignment& s,
                                  const FrameAssignment& fr, uint8_t delta, uint8_t eps,
                                  Variant variant, int qslice,
                                  const std::function<bool(Vertex, uint32_t)>& keep = {});

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const FramedOneFlowCategory& cat);

// flip the sign of every moduli point incident to object x, then reframe
FramedOneFlowCategory sign_change_at(const FramedOneFlowCategory& cat, int object);

// integral cochain complex from [a:b] counts, per homological grading
struct FlowComplex {
    std::map<int, std::vector<int>> objects_by_grading;  // object ids per i
    IntMatrix matrix(const FramedOneFlowCategory& cat, int i) const;
    F2Matrix f2(const FramedOneFlowCategory& cat, int i) const;
};
FlowComplex cochain_complex(const FramedOneFlowCategory& cat);

}  // namespace okh
