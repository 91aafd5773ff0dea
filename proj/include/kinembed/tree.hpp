#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kinembed/common.hpp"
#include "kinembed/geometry.hpp"
#include "kinembed/kinematics.hpp"

namespace kinembed {

struct NodeRecord {
  std::optional<int> parent;
  std::vector<int> children;
  std::vector<double> features;
};

// Rooted tree with per-node feature vectors; carries both structure graphs
// and pose graphs. Immutable after construction by convention.
struct RobotTree {
  std::vector<NodeRecord> nodes;
  int root_index = 0;
  std::optional<std::vector<double>> graph_feature;

  int size() const { return static_cast<int>(nodes.size()); }
  int feature_width() const { return nodes.empty() ? 0 : static_cast<int>(nodes[0].features.size()); }
  bool is_leaf(int i) const { return nodes[i].children.empty(); }
};

inline void validate_tree(const RobotTree& t) {
  if (t.nodes.empty()) throw DataError("tree has no nodes");
  if (t.root_index < 0 || t.root_index >= t.size()) throw DataError("root index out of range");
  if (t.nodes[t.root_index].parent.has_value()) throw DataError("root must have no parent");
  const std::size_t width = t.nodes[0].features.size();
  int roots = 0;
  for (int i = 0; i < t.size(); ++i) {
    const NodeRecord& n = t.nodes[i];
    if (!n.parent.has_value()) {
      ++roots;
    } else {
      const int p = *n.parent;
      if (p < 0 || p >= t.size()) throw DataError("parent index out of range");
      const auto& pc = t.nodes[p].children;
      if (std::find(pc.begin(), pc.end(), i) == pc.end()) {
        throw DataError("parent/children references inconsistent");
      }
    }
    for (int c : n.children) {
      if (c < 0 || c >= t.size() || !t.nodes[c].parent || *t.nodes[c].parent != i) {
        throw DataError("parent/children references inconsistent");
      }
    }
    if (n.features.size() != width) throw DataError("feature width differs across nodes");
  }
  if (roots != 1) throw DataError("tree must have exactly one root");
}

// Structure graph: one node per joint plus a trailing null-joint leaf. Link
// features fold into the child node, so node i > 0 carries
// [link_length_{i-1}, end_effector_flag] and the root carries zeros.
inline RobotTree structure_to_tree(const ChainStructure& structure) {
  const int n = structure.n_joints();
  RobotTree t;
  t.nodes.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    NodeRecord& node = t.nodes[i];
    if (i > 0) node.parent = i - 1;
    if (i < n) node.children = {i + 1};
    if (i == 0) {
      node.features = {0.0, 0.0};
    } else {
      node.features = {structure.link_lengths[i - 1], i == n ? 1.0 : 0.0};
    }
  }
  return t;
}

// Inverse of structure_to_tree for linear chains.
inline ChainStructure tree_to_structure(const RobotTree& tree) {
  ChainStructure c;
  int i = tree.root_index;
  while (!tree.nodes[i].children.empty()) {
    const int child = tree.nodes[i].children.front();
    c.link_lengths.push_back(tree.nodes[child].features.at(0));
    i = child;
  }
  return c;
}

// Pose graph: same topology, node i carries [angle_i] and the null-joint
// leaf a zero; the end-effector position becomes the graph feature.
inline RobotTree pose_to_tree(const ChainStructure& structure, const JointPose& pose,
                              const Point2& ee) {
  check_pose_matches(structure, pose);
  const int n = structure.n_joints();
  RobotTree t;
  t.nodes.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    NodeRecord& node = t.nodes[i];
    if (i > 0) node.parent = i - 1;
    if (i < n) node.children = {i + 1};
    node.features = {i < n ? pose.angles[i] : 0.0};
  }
  t.graph_feature = std::vector<double>{ee.x, ee.y};
  return t;
}

// Root first, children in stored order, each node before its descendants.
inline std::vector<int> preorder(const RobotTree& tree) {
  std::vector<int> order;
  order.reserve(tree.nodes.size());
  std::vector<int> stack{tree.root_index};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    order.push_back(i);
    const auto& ch = tree.nodes[i].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

inline nlohmann::json tree_to_json(const RobotTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const NodeRecord& n : tree.nodes) {
    nlohmann::json jn;
    jn["parent"] = n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr);
    jn["children"] = n.children;
    jn["features"] = n.features;
    nodes.push_back(std::move(jn));
  }
  nlohmann::json j;
  j["root"] = tree.root_index;
  j["nodes"] = std::move(nodes);
  j["graph_feature"] = tree.graph_feature ? nlohmann::json(*tree.graph_feature) : nlohmann::json(nullptr);
  return j;
}

inline RobotTree tree_from_json(const nlohmann::json& j) {
  RobotTree t;
  t.root_index = j.at("root").get<int>();
  for (const auto& jn : j.at("nodes")) {
    NodeRecord n;
    if (!jn.at("parent").is_null()) n.parent = jn.at("parent").get<int>();
    n.children = jn.at("children").get<std::vector<int>>();
    n.features = jn.at("features").get<std::vector<double>>();
    t.nodes.push_back(std::move(n));
  }
  if (j.contains("graph_feature") && !j.at("graph_feature").is_null()) {
    t.graph_feature = j.at("graph_feature").get<std::vector<double>>();
  }
  validate_tree(t);
  return t;
}

}  // namespace kinembed
