#include <catch2/catch_amalgamated.hpp>

#include "chy/simplicial.hpp"

using namespace chy;

TEST_CASE("basic predicates") {
    // dual of the triangle boundary: every pair compatible, but {1,2,3} absent
    SimplicialComplex triangle(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK_FALSE(triangle.is_flag());
    CHECK(triangle.is_pure());

    SimplicialComplex mixed(3, {{0, 1}, {2}});
    CHECK_FALSE(mixed.is_pure());

    SimplicialComplex edge_pair(4, {{0, 1}, {2, 3}});
    CHECK(edge_pair.is_pure());
    CHECK(edge_pair.is_flag());
}

TEST_CASE("associahedron complexes are flag, pure pseudomanifolds") {
    for (int n = 5; n <= 7; ++n) {
        auto c = associahedron_complex(n);
        CHECK(c.is_flag());
        CHECK(c.is_pure());
        CHECK(c.is_pseudomanifold());
        CHECK(c.dim() == n - 4);
    }
}

TEST_CASE("codimension-1 faces of the associahedron lie in two facets") {
    for (int n = 5; n <= 8; ++n) {
        auto subs = enumerate_subdivisions(n);
        auto tris = enumerate_triangulations(n);
        for (auto& s : subs) {
            if ((int)s.diags.size() != n - 4) continue;
            int extensions = 0;
            for (auto& t : tris) {
                bool contains = true;
                for (auto& d : s.diags)
                    if (!t.contains(d)) contains = false;
                if (contains) ++extensions;
            }
            CHECK(extensions == 2);
        }
    }
}

TEST_CASE("links") {
    auto c5 = associahedron_complex(5);
    // link of the vertex (1,3): two isolated vertices (1,4) and (3,5)
    int v13 = diagonal_index(Diagonal(1, 3, 5), 5);
    auto lk = link(c5, {v13});
    CHECK(lk.complex.num_vertices == 2);
    CHECK(lk.complex.dim() == 0);
    std::vector<std::string> labels = lk.complex.labels;
    std::sort(labels.begin(), labels.end());
    CHECK(labels == std::vector<std::string>{"(1,4)", "(3,5)"});

    // link of the empty face is the whole complex
    auto lk0 = link(c5, {});
    CHECK(lk0.complex.facets == c5.facets);

    // link of a facet is the {empty} complex
    auto lkf = link(c5, c5.facets[0]);
    CHECK(lkf.complex.num_vertices == 0);
    CHECK(lkf.complex.is_face({}));

    CHECK_THROWS(link(c5, {v13, diagonal_index(Diagonal(2, 4, 5), 5)}));  // crossing pair, not a face

    // dim lk + dim f = dim c - 1 on a pure complex
    auto c6 = associahedron_complex(6);
    for (auto& f : c6.faces()) {
        if (f.empty() || (int)f.size() == c6.dim() + 1) continue;
        auto l = link(c6, f);
        CHECK(l.complex.dim() + (int)f.size() - 1 == c6.dim() - 1);
    }
}

TEST_CASE("faces are generated downward-closed") {
    SimplicialComplex c(4, {{0, 1, 2}, {2, 3}});
    auto fs = c.faces();
    CHECK(std::find(fs.begin(), fs.end(), std::vector<int>{}) != fs.end());
    CHECK(std::find(fs.begin(), fs.end(), std::vector<int>{0, 1}) != fs.end());
    CHECK(std::find(fs.begin(), fs.end(), std::vector<int>{3}) != fs.end());
    CHECK(std::find(fs.begin(), fs.end(), std::vector<int>{0, 3}) == fs.end());
    CHECK(c.is_face({0, 2}));
    CHECK_FALSE(c.is_face({1, 3}));
}
