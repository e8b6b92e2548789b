#include "doctest.h"
#include "okh/diagram.hpp"

#include <set>

using namespace okh;

static const char* kRightTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
static const char* kFigureEight = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

TEST_CASE("parse_pd basics and errors") {
    LinkDiagram unknot = parse_pd("U");
    CHECK(unknot.n() == 0);
    CHECK(unknot.num_components == 1);
    CHECK(unknot.free_loops.size() == 1);

    LinkDiagram t = parse_pd(kRightTrefoil);
    CHECK(t.n() == 3);
    CHECK(t.n_plus == 3);
    CHECK(t.n_minus == 0);
    CHECK(t.num_components == 1);

    CHECK_THROWS_AS(parse_pd("X[1,4,2,5]"), ParseError);      // arcs occur once
    CHECK_THROWS_AS(parse_pd("X[1,4,2,7] X[3,6,4,1] X[5,2,6,3]"), ParseError);
    CHECK_THROWS_AS(parse_pd("Y[1,2,3,4]"), ParseError);
    CHECK_THROWS_AS(parse_pd("X[1,2"), ParseError);

    // basepoint
    LinkDiagram b = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] * 4");
    REQUIRE(b.basepoint.has_value());
    CHECK(*b.basepoint == 4);
    CHECK_THROWS_AS(parse_pd("U * 7"), ParseError);
}

TEST_CASE("kinks have the expected signs") {
    LinkDiagram neg = parse_pd("X[1,1,2,2]");
    CHECK(neg.n_minus == 1);
    CHECK(neg.n_plus == 0);
    LinkDiagram pos = parse_pd("X[1,2,2,1]");
    CHECK(pos.n_plus == 1);
    CHECK(pos.n_minus == 0);
}

TEST_CASE("figure eight orientation") {
    LinkDiagram f = parse_pd(kFigureEight);
    CHECK(f.n() == 4);
    CHECK(f.n_plus == 2);
    CHECK(f.n_minus == 2);
    CHECK(f.num_components == 1);
}

TEST_CASE("mirror swaps crossing signs") {
    LinkDiagram t = parse_pd(kRightTrefoil);
    LinkDiagram m = mirror(t);
    CHECK(m.n_plus == 0);
    CHECK(m.n_minus == 3);
    LinkDiagram mm = mirror(m);
    CHECK(mm.n_plus == 3);
}

TEST_CASE("resolve circle counts") {
    LinkDiagram u = parse_pd("U");
    CHECK(resolve(u, 0).circles() == 1);

    LinkDiagram t = parse_pd(kRightTrefoil);
    CHECK(resolve(t, 0b000).circles() == 2);
    CHECK(resolve(t, 0b111).circles() == 3);
    CHECK(resolve(t, 0b001).circles() == 1);
    CHECK(resolve(t, 0b011).circles() == 2);

    // adjacent resolutions differ by one circle
    for (Vertex v = 0; v < 8; ++v)
        for (int c = 0; c < 3; ++c) {
            if (v & (Vertex(1) << c)) continue;
            int a = resolve(t, v).circles(), b = resolve(t, v | (Vertex(1) << c)).circles();
            CHECK(std::abs(a - b) == 1);
        }
}

TEST_CASE("surgery events on the trefoil") {
    LinkDiagram t = parse_pd(kRightTrefoil);
    auto sm = resolve_all(t);
    SurgeryEvent e1 = surgery_event(t, sm[0b000], sm[0b001], 0b000, 0);
    CHECK_FALSE(e1.is_split);  // 2 circles -> 1
    SurgeryEvent e2 = surgery_event(t, sm[0b011], sm[0b111], 0b011, 2);
    CHECK(e2.is_split);  // 2 -> 3
    CHECK(e2.out1 != e2.out2);

    // kink: the unique edge
    LinkDiagram k = parse_pd("X[1,1,2,2]");
    auto ksm = resolve_all(k);
    SurgeryEvent ke = surgery_event(k, ksm[0], ksm[1], 0, 0);
    CHECK(ke.is_split);  // 1 circle -> 2 circles
}

TEST_CASE("face classification on the trefoil: no X/Y faces, types consistent") {
    LinkDiagram t = parse_pd(kRightTrefoil);
    auto sm = resolve_all(t);
    std::set<FaceType> seen;
    for (Vertex w = 0; w < 8; ++w)
        for (int j = 1; j < 3; ++j)
            for (int i = 0; i < j; ++i) {
                if (w & ((Vertex(1) << i) | (Vertex(1) << j))) continue;
                seen.insert(classify_face(t, sm, w, i, j));
            }
    CHECK(seen.count(FaceType::A));
    CHECK_FALSE(seen.count(FaceType::X));
    CHECK_FALSE(seen.count(FaceType::Y));
}

TEST_CASE("edge assignment exists and checks out") {
    for (const char* pd : {kRightTrefoil, kFigureEight}) {
        LinkDiagram d = parse_pd(pd);
        auto sm = resolve_all(d);
        Cochain1 eps = edge_assignment(d, sm, EdgeAssignmentType::X);
        FaceData fd = classify_all_faces(d, sm, EdgeAssignmentType::X);
        Cochain2 deps = coboundary(eps);
        for (std::size_t k = 0; k < deps.val.size(); ++k) CHECK(deps.val[k] == fd.types.val[k]);
        // type-Y assignment also exists
        CHECK_NOTHROW(edge_assignment(d, sm, EdgeAssignmentType::Y));
    }
    // trivial diagrams
    LinkDiagram u = parse_pd("U");
    auto usm = resolve_all(u);
    Cochain1 eps0 = edge_assignment(u, usm, EdgeAssignmentType::X);
    CHECK(eps0.n == 0);
}

TEST_CASE("solve_delta1 solves random closed prescriptions") {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            Cochain1 g(n);
            for (auto& v : g.val) v = uint8_t(rng() & 1);
            Cochain2 rhs = coboundary(g);
            Cochain1 e = solve_delta1(rhs);
            Cochain2 back = coboundary(e);
            CHECK(back.val == rhs.val);
        }
    }
}
