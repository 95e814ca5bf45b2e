#pragma once

#include <set>
#include <vector>

#include "yamada/diagram.hpp"
#include "yamada/replace.hpp"

namespace fix {

using namespace yamada;

inline std::set<int> crossing_ids(const DiagramCode& d) {
  std::set<int> ids;
  for (const auto& c : d.crossings) ids.insert(c.id);
  return ids;
}

inline std::vector<int> new_crossings(const DiagramCode& before, const DiagramCode& after) {
  const auto old = crossing_ids(before);
  std::vector<int> out;
  for (int id : crossing_ids(after)) {
    if (!old.count(id)) out.push_back(id);
  }
  return out;
}

struct Step {
  std::size_t pos;
  Twist twist;
};

// Theta_3 whose three strands run through a braid word between the vertices.
inline DiagramCode braided_theta(const std::vector<Step>& word) {
  SweepBuilder b;
  b.vertex(0, 0, 3);
  for (const auto& s : word) b.cross(s.pos, s.twist);
  b.vertex(0, 3, 0);
  return b.finish();
}

inline std::vector<Step> cat(std::vector<Step> a, const std::vector<Step>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// A strand passing a degree-3 vertex: before it (one crossing) or after it
// (two crossings).
inline DiagramCode strand_past_vertex(bool after, Twist t, const std::vector<Step>& prefix) {
  SweepBuilder b;
  b.vertex(0, 0, 3);
  for (const auto& s : prefix) b.cross(s.pos, s.twist);
  // ports: [w, x, y]; x passes the vertex that splits y
  if (after) {
    b.vertex(2, 1, 2);
    b.cross(1, t);
    b.cross(2, t);
  } else {
    b.cross(1, t);
    b.vertex(1, 1, 2);
  }
  b.vertex(0, 4, 0);
  return b.finish();
}

// Theta_3 with two adjacent edges crossed right above the lower vertex.
inline DiagramCode twisted_at_vertex(std::size_t pos, int twists, Twist t) {
  SweepBuilder b;
  b.vertex(0, 0, 3);
  for (int i = 0; i < twists; ++i) b.cross(pos, t);
  b.cross(1, Twist::kMinus);
  b.cross(0, Twist::kPlus);
  b.vertex(0, 3, 0);
  return b.finish();
}

inline std::vector<DiagramCode> fixtures() {
  std::vector<DiagramCode> out;
  for (int k = 0; k <= 3; ++k) out.push_back(build_infinity(k, Twist::kPlus));
  out.push_back(close_piece(build_infinity(2, Twist::kPlus)));
  out.push_back(braided_theta({{0, Twist::kPlus}, {1, Twist::kPlus}, {0, Twist::kPlus}}));
  out.push_back(strand_past_vertex(true, Twist::kPlus, {{0, Twist::kMinus}}));
  out.push_back(twisted_at_vertex(0, 1, Twist::kPlus));
  out.push_back(build_theta_diagram(2, 2, Twist::kPlus));
  out.push_back(build_family_diagram(2, 2, 1));
  return out;
}

}  // namespace fix
