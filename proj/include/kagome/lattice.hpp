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

#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace kagome {

using Vec2 = std::array<double, 2>;

struct Site {
  int index = 0;
  Vec2 position{0.0, 0.0};  // units of the nearest-neighbour spacing
};

struct Edge {
  int i = 0;
  int j = 0;
  double coupling = 1.0;
};

// A finite piece of the kagome lattice: positioned spins plus the coupled
// pairs of the Heisenberg graph. Edges are normalized so that i < j.
class LatticeFragment {
 public:
  LatticeFragment() = default;

  // Validates and normalizes; throws std::invalid_argument on non-contiguous
  // indices, self loops, duplicate edges, non-positive couplings or a
  // disconnected graph.
  LatticeFragment(std::string name, std::vector<Site> sites, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int num_sites() const { return static_cast<int>(sites_.size()); }

  std::vector<int> degrees() const;
  // All 3-cliques (i < j < k) of the coupling graph.
  std::vector<std::array<int, 3>> triangles() const;
  bool has_edge(int i, int j) const;

 private:
  std::string name_;
  std::vector<Site> sites_;
  std::vector<Edge> edges_;
};

LatticeFragment build_triangle();

// Twelve-site kagome star: six corner-sharing triangles around a hexagon.
// Sites are labelled along the outer 12-cycle, even labels on the hexagon
// (label 2m at angle 60m degrees, circumradius 1) and odd labels on the tips.
// Consecutive labels (and 11-0) are bonded, matching the entangling chain of
// the star ansatz.
LatticeFragment build_star();

// Site permutation induced by a 60 degree rotation of the star (l -> l + 2).
std::vector<int> star_rotation_permutation();

// Text form:
//   name <label>
//   sites
//   <index>,<x>,<y>
//   edges
//   <i>,<j>,<J>
// Blank lines and lines starting with '#' are ignored.
void write_fragment(std::ostream& os, const LatticeFragment& fragment);
LatticeFragment read_fragment(std::istream& is);
LatticeFragment load_fragment(const std::string& path);

struct MomentumPoint {
  Vec2 q{0.0, 0.0};
  bool inside_bz = false;
};

// Length of the primitive reciprocal vectors of the underlying triangular
// Bravais lattice (lattice constant 2).
double reciprocal_length();

// Closed point-in-hexagon test for the first Brillouin zone. The hexagon has
// vertices at angles 0, 60, ... degrees and circumradius 2*pi/3.
bool inside_brillouin_zone(const Vec2& q, double tol = 1e-12);

// resolution x resolution grid spanning [-extent*|b|, extent*|b|] along both
// axes, row-major in qy then qx. Throws std::invalid_argument if
// resolution < 2 or extent <= 0.
std::vector<MomentumPoint> momentum_grid(int resolution, double extent = 1.0);

}  // namespace kagome
