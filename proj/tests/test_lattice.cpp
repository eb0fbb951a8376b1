// Copyright 2026 The Kagome VQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "kagome/lattice.hpp"

using namespace kagome;
using Catch::Matchers::WithinAbs;

namespace {

double distance(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

std::set<std::pair<int, int>> edge_set(const LatticeFragment& f) {
  std::set<std::pair<int, int>> s;
  for (const auto& e : f.edges()) s.insert({e.i, e.j});
  return s;
}

}  // namespace

TEST_CASE("triangle fragment", "[lattice]") {
  const auto t = build_triangle();
  REQUIRE(t.num_sites() == 3);
  REQUIRE(t.edges().size() == 3);
  CHECK(edge_set(t) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK_THAT(distance(t.sites()[i].position, t.sites()[j].position), WithinAbs(1.0, 1e-12));
  CHECK(t.triangles().size() == 1);
}

TEST_CASE("star fragment", "[lattice]") {
  const auto s = build_star();
  REQUIRE(s.num_sites() == 12);
  REQUIRE(s.edges().size() == 18);
  for (const auto& e : s.edges()) {
    CHECK(e.i < e.j);
    CHECK(e.coupling == 1.0);
    CHECK_THAT(distance(s.sites()[e.i].position, s.sites()[e.j].position), WithinAbs(1.0, 1e-9));
  }
  // tips are shared by one triangle, hexagon corners by two
  const auto deg = s.degrees();
  for (int k = 0; k < 12; ++k) CHECK(deg[k] == (k % 2 == 0 ? 4 : 2));

  const auto tris = s.triangles();
  REQUIRE(tris.size() == 6);
  std::vector<int> per_site(12, 0);
  for (const auto& t : tris)
    for (int v : t) ++per_site[v];
  for (int k = 0; k < 12; ++k) CHECK(per_site[k] == (k % 2 == 0 ? 2 : 1));
  // every edge lies in exactly one triangle
  for (const auto& e : s.edges()) {
    int count = 0;
    for (const auto& t : tris) count += std::count(t.begin(), t.end(), e.i) && std::count(t.begin(), t.end(), e.j);
    CHECK(count == 1);
  }
  // the chain pairs (k, k+1) are edges, so the covering (1,2),(3,4),...,(11,0) exists
  for (int k = 0; k < 12; ++k) CHECK(s.has_edge(k, (k + 1) % 12));
}

TEST_CASE("star edges are invariant under the six-fold rotation", "[lattice]") {
  const auto s = build_star();
  const auto perm = star_rotation_permutation();
  REQUIRE(perm.size() == 12);
  std::set<std::pair<int, int>> rotated;
  for (const auto& e : s.edges()) {
    const int a = perm[e.i], b = perm[e.j];
    rotated.insert({std::min(a, b), std::max(a, b)});
  }
  CHECK(rotated == edge_set(s));
  // and the permutation is the geometric rotation by 60 degrees
  const double c = std::cos(M_PI / 3), sn = std::sin(M_PI / 3);
  for (int k = 0; k < 12; ++k) {
    const auto& p = s.sites()[k].position;
    const Vec2 r{c * p[0] - sn * p[1], sn * p[0] + c * p[1]};
    CHECK(distance(r, s.sites()[perm[k]].position) < 1e-12);
  }
}

TEST_CASE("fragment validation", "[lattice]") {
  std::vector<Site> two{{0, {0, 0}}, {1, {1, 0}}};
  CHECK_NOTHROW(LatticeFragment("pair", two, {{0, 1, 1.0}}));
  CHECK_THROWS_AS(LatticeFragment("loop", two, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeFragment("dup", two, {{0, 1, 1.0}, {1, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeFragment("ferro", two, {{0, 1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeFragment("split", two, {}), std::invalid_argument);
  CHECK_THROWS_AS(LatticeFragment("gap", {{0, {0, 0}}, {2, {1, 0}}}, {{0, 2, 1.0}}), std::invalid_argument);
  const LatticeFragment swapped("swapped", two, {{1, 0, 0.5}});
  CHECK(swapped.edges()[0].i == 0);
  CHECK(swapped.edges()[0].j == 1);
}

TEST_CASE("fragment text round trip", "[lattice]") {
  for (const auto& f : {build_triangle(), build_star()}) {
    std::stringstream ss;
    write_fragment(ss, f);
    const auto g = read_fragment(ss);
    CHECK(g.name() == f.name());
    REQUIRE(g.num_sites() == f.num_sites());
    CHECK(edge_set(g) == edge_set(f));
    for (int k = 0; k < f.num_sites(); ++k) CHECK(distance(g.sites()[k].position, f.sites()[k].position) < 1e-15);
  }
  std::istringstream bad("name x\nsites\n0,0,0\nedges\n0,5,1\n");
  CHECK_THROWS_AS(read_fragment(bad), std::invalid_argument);
  CHECK_THROWS(load_fragment("/nonexistent/fragment.txt"));
}

TEST_CASE("Brillouin zone membership", "[lattice]") {
  const double b = reciprocal_length();
  CHECK_THAT(b, WithinAbs(2 * M_PI / std::sqrt(3.0), 1e-14));
  CHECK(inside_brillouin_zone({0.0, 0.0}));
  // zone corners lie at |K| = b / sqrt(3); closed boundary
  const double k = b / std::sqrt(3.0);
  for (int m = 0; m < 6; ++m) {
    const double a = m * M_PI / 3;
    CHECK(inside_brillouin_zone({k * std::cos(a), k * std::sin(a)}));
    CHECK_FALSE(inside_brillouin_zone({1.001 * k * std::cos(a), 1.001 * k * std::sin(a)}));
  }
  // edge midpoints (M points) at b/2
  CHECK(inside_brillouin_zone({0.0, k * std::sqrt(3.0) / 2}));
  CHECK_FALSE(inside_brillouin_zone({0.0, k * std::sqrt(3.0) / 2 * 1.001}));
}

TEST_CASE("momentum grid", "[lattice]") {
  CHECK_THROWS_AS(momentum_grid(1), std::invalid_argument);
  CHECK_THROWS_AS(momentum_grid(5, 0.0), std::invalid_argument);
  const auto g = momentum_grid(11);
  REQUIRE(g.size() == 121);
  const auto centre = g[5 * 11 + 5];
  CHECK(std::abs(centre.q[0]) < 1e-15);
  CHECK(std::abs(centre.q[1]) < 1e-15);
  CHECK(centre.inside_bz);
  // the grid spans at least the zone
  double qmax = 0;
  for (const auto& p : g) {
    qmax = std::max(qmax, std::abs(p.q[0]));
    CHECK(p.inside_bz == inside_brillouin_zone(p.q));
  }
  CHECK(qmax >= reciprocal_length() / std::sqrt(3.0));
  // inversion symmetric
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(g[k].q[0] + g[g.size() - 1 - k].q[0]) < 1e-12);
    CHECK(std::abs(g[k].q[1] + g[g.size() - 1 - k].q[1]) < 1e-12);
  }
}
