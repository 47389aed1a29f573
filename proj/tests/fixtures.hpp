#pragma once

#include <json.hpp>

#include <map>
#include <utility>
#include <vector>

#include "planext/drawing.hpp"
#include "planext/io.hpp"

// small drawings used across the test binaries, built through place_edge

namespace planext::fix {

inline Drawing path(int n) {
  Drawing g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  for (int i = 0; i + 1 < n; ++i) {
    EdgeId e = g.add_edge(i, i + 1, true);
    EdgePlacement p;
    p.e = e;
    p.cu = i == 0 ? Corner{g.node_of(i), -1} : Corner{g.node_of(i), g.edarts[e - 1][1]};
    p.cv = Corner{g.node_of(i + 1), -1};
    g.place_edge(p);
  }
  return g;
}

// cycle 0..n-1; the orbit of dart (0->1) is one face, its twin the other
inline Drawing cycle(int n) {
  Drawing g;
  for (int i = 0; i < n; ++i) g.add_node(i);
  std::vector<EdgeId> es;
  for (int i = 0; i < n; ++i) es.push_back(g.add_edge(i, (i + 1) % n, true));
  for (int i = 0; i < n; ++i) {
    EdgePlacement p;
    p.e = es[i];
    if (i == 0) {
      p.cu = {g.node_of(0), -1};
      p.cv = {g.node_of(1), -1};
    } else if (i + 1 < n) {
      p.cu = {g.node_of(i), g.edarts[es[i - 1]][1]};
      p.cv = {g.node_of(i + 1), -1};
    } else {
      p.cu = {g.node_of(i), g.edarts[es[i - 1]][1]};
      p.cv = {g.node_of(0), g.edarts[es[0]][0]};
    }
    g.place_edge(p);
  }
  g.outer = g.darts[g.edarts[es[0]][0]].twin;  // orbit of (1->0): the other side
  return g;
}

inline Drawing triangle() { return cycle(3); }

// square, chord (0,2) inside, diagonal (1,3) crossing it
inline Drawing crossed_quad() {
  Drawing g = cycle(4);
  EdgeId ch = g.add_edge(0, 2, true);
  EdgePlacement p;
  p.e = ch;
  p.cu = {g.node_of(0), g.edarts[0][0]};
  p.cv = {g.node_of(2), g.edarts[2][0]};
  g.place_edge(p);
  EdgeId di = g.add_edge(1, 3, true);
  EdgePlacement q;
  q.e = di;
  q.cu = {g.node_of(1), g.edarts[1][0]};
  q.cv = {g.node_of(3), g.edarts[3][0]};
  q.crossings = {CrossSpec{g.edarts[ch][1]}};
  g.place_edge(q);
  return g;
}

// concentric triangulated tube: apex 0 inside m rings of three, apex 1
// outside, every face a triangle.  Distances between the apexes grow along
// the tube instead of shortcutting through one big face, which is what the
// pruning and far-apart fixtures need.  Needs m >= 2.
inline Instance tower(int m, const std::vector<std::pair<int, int>>& adds) {
  using nlohmann::json;
  auto R = [](int i, int j) { return 2 + 3 * (i - 1) + ((j % 3) + 3) % 3; };
  json j;
  {
    std::vector<int> vs(2 + 3 * m);
    for (size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<int>(i);
    j["vertices"] = vs;
  }
  std::map<std::pair<int, int>, int> ids;
  json he = json::array();
  auto edge = [&](int u, int v) {
    ids[{std::min(u, v), std::max(u, v)}] = static_cast<int>(he.size());
    he.push_back({u, v});
  };
  auto id = [&](int u, int v) { return ids.at({std::min(u, v), std::max(u, v)}); };
  for (int x = 0; x < 3; ++x) edge(0, R(1, x));
  for (int i = 1; i <= m; ++i)
    for (int x = 0; x < 3; ++x) edge(R(i, x), R(i, x + 1));
  for (int i = 1; i < m; ++i)
    for (int x = 0; x < 3; ++x) {
      edge(R(i, x), R(i + 1, x));
      edge(R(i, x), R(i + 1, x + 1));
    }
  for (int x = 0; x < 3; ++x) edge(1, R(m, x));
  j["h_edges"] = he;
  {
    json ae = json::array();
    for (const auto& [u, v] : adds) ae.push_back({u, v});
    j["add_edges"] = ae;
  }
  j["add_vertices"] = json::array();
  j["crossings"] = json::array();
  {
    json rot = json::object();
    auto dart = [](int e) { return json::array({e, 0}); };
    rot["0"] = {dart(id(0, R(1, 0))), dart(id(0, R(1, 2))), dart(id(0, R(1, 1)))};
    rot["1"] = {dart(id(1, R(m, 0))), dart(id(1, R(m, 1))), dart(id(1, R(m, 2)))};
    for (int i = 1; i <= m; ++i)
      for (int x = 0; x < 3; ++x) {
        json r = json::array();
        r.push_back(dart(id(R(i, x), R(i, x - 1))));
        if (i == 1) {
          r.push_back(dart(id(0, R(1, x))));
        } else {
          r.push_back(dart(id(R(i, x), R(i - 1, x - 1))));
          r.push_back(dart(id(R(i, x), R(i - 1, x))));
        }
        r.push_back(dart(id(R(i, x), R(i, x + 1))));
        if (i == m) {
          r.push_back(dart(id(1, R(m, x))));
        } else {
          r.push_back(dart(id(R(i, x), R(i + 1, x + 1))));
          r.push_back(dart(id(R(i, x), R(i + 1, x))));
        }
        rot[std::to_string(R(i, x))] = r;
      }
    j["rotation"] = rot;
  }
  j["outer"] = {id(1, R(m, 0)), 0, 1};
  j["mode"] = "1planar";
  return parse_instance(j.dump());
}

}  // namespace planext::fix
