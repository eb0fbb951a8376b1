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

#include "kagome/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kagome {

namespace {

bool connected(int n, const std::vector<Edge>& edges) {
  if (n == 0) return true;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& e : edges) {
    const int a = find(e.i), b = find(e.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("fragment: bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("fragment: bad integer '" + s + "'");
  return v;
}

}  // namespace

LatticeFragment::LatticeFragment(std::string name, std::vector<Site> sites,
                                 std::vector<Edge> edges)
    : name_(std::move(name)), sites_(std::move(sites)), edges_(std::move(edges)) {
  std::sort(sites_.begin(), sites_.end(),
            [](const Site& a, const Site& b) { return a.index < b.index; });
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    if (sites_[k].index != static_cast<int>(k))
      throw std::invalid_argument("fragment: site indices must be contiguous from 0");
  }
  const int n = num_sites();
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= n) throw std::invalid_argument("fragment: edge index out of range");
    if (e.i == e.j) throw std::invalid_argument("fragment: self-coupled edge");
    if (!(e.coupling > 0.0) || !std::isfinite(e.coupling))
      throw std::invalid_argument("fragment: couplings must be finite and positive");
    if (!seen.emplace(e.i, e.j).second) throw std::invalid_argument("fragment: duplicate edge");
  }
  if (!connected(n, edges_)) throw std::invalid_argument("fragment: coupling graph is disconnected");
}

std::vector<int> LatticeFragment::degrees() const {
  std::vector<int> deg(sites_.size(), 0);
  for (const auto& e : edges_) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

bool LatticeFragment::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.i == i && e.j == j; });
}

std::vector<std::array<int, 3>> LatticeFragment::triangles() const {
  std::vector<std::array<int, 3>> out;
  const int n = num_sites();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        if (has_edge(a, b) && has_edge(b, c) && has_edge(a, c)) out.push_back({a, b, c});
  return out;
}

LatticeFragment build_triangle() {
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<Site> sites{{0, {0.0, 0.0}}, {1, {1.0, 0.0}}, {2, {0.5, h}}};
  std::vector<Edge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}};
  return LatticeFragment("triangle", std::move(sites), std::move(edges));
}

LatticeFragment build_star() {
  const double deg = std::numbers::pi / 180.0;
  const double tip_radius = std::sqrt(3.0);
  std::vector<Site> sites;
  for (int m = 0; m < 6; ++m) {
    const double a = 60.0 * m * deg;
    const double t = (60.0 * m + 30.0) * deg;
    sites.push_back({2 * m, {std::cos(a), std::sin(a)}});
    sites.push_back({2 * m + 1, {tip_radius * std::cos(t), tip_radius * std::sin(t)}});
  }
  std::vector<Edge> edges;
  for (int l = 0; l < 12; ++l) edges.push_back({l, (l + 1) % 12, 1.0});
  for (int m = 0; m < 6; ++m) edges.push_back({2 * m, (2 * m + 2) % 12, 1.0});
  return LatticeFragment("star", std::move(sites), std::move(edges));
}

std::vector<int> star_rotation_permutation() {
  std::vector<int> perm(12);
  for (int l = 0; l < 12; ++l) perm[l] = (l + 2) % 12;
  return perm;
}

void write_fragment(std::ostream& os, const LatticeFragment& fragment) {
  os << "name " << fragment.name() << '\n' << "sites\n";
  os << std::setprecision(17);
  for (const auto& s : fragment.sites())
    os << s.index << ',' << s.position[0] << ',' << s.position[1] << '\n';
  os << "edges\n";
  for (const auto& e : fragment.edges()) os << e.i << ',' << e.j << ',' << e.coupling << '\n';
}

LatticeFragment read_fragment(std::istream& is) {
  enum class Section { None, Sites, Edges } section = Section::None;
  std::string name = "custom";
  std::vector<Site> sites;
  std::vector<Edge> edges;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "sites") {
      section = Section::Sites;
      continue;
    }
    if (line == "edges") {
      section = Section::Edges;
      continue;
    }
    if (line.rfind("name", 0) == 0 && section == Section::None) {
      name = trim(line.substr(4));
      continue;
    }
    const auto f = split_csv(line);
    try {
      if (section == Section::Sites && f.size() == 3) {
        sites.push_back({parse_int(f[0]), {parse_double(f[1]), parse_double(f[2])}});
      } else if (section == Section::Edges && (f.size() == 2 || f.size() == 3)) {
        edges.push_back({parse_int(f[0]), parse_int(f[1]), f.size() == 3 ? parse_double(f[2]) : 1.0});
      } else {
        throw std::invalid_argument("unexpected content");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("fragment line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (sites.empty()) throw std::invalid_argument("fragment: no sites");
  return LatticeFragment(name, std::move(sites), std::move(edges));
}

LatticeFragment load_fragment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open fragment file '" + path + "'");
  return read_fragment(in);
}

double reciprocal_length() { return 2.0 * std::numbers::pi / std::sqrt(3.0); }

bool inside_brillouin_zone(const Vec2& q, double tol) {
  const double apothem = reciprocal_length() / 2.0;
  const double deg = std::numbers::pi / 180.0;
  for (int k = 0; k < 6; ++k) {
    const double a = (30.0 + 60.0 * k) * deg;
    if (q[0] * std::cos(a) + q[1] * std::sin(a) > apothem + tol) return false;
  }
  return true;
}

std::vector<MomentumPoint> momentum_grid(int resolution, double extent) {
  if (resolution < 2) throw std::invalid_argument("momentum_grid: resolution must be >= 2");
  if (!(extent > 0.0)) throw std::invalid_argument("momentum_grid: extent must be positive");
  const double half = extent * reciprocal_length();
  const double step = 2.0 * half / (resolution - 1);
  std::vector<MomentumPoint> grid;
  grid.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const Vec2 q{-half + ix * step, -half + iy * step};
      grid.push_back({q, inside_brillouin_zone(q)});
    }
  }
  return grid;
}

}  // namespace kagome
