#pragma once

#include "planext/drawing.hpp"

namespace planext {

// Strict: a finished drawing, no pseudo parts anywhere.
// Augmented: scratch drawings carrying walls; wall involvement is exempt from
// the crossing count, wall-wall crossings stay forbidden.
enum class Mode { Strict, Augmented };

struct Violation {
  std::string what;
  EdgeId e = -1;
  NodeId n = -1;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string what, EdgeId e = -1, NodeId n = -1) {
    violations.push_back({std::move(what), e, n});
  }
  std::string brief() const;
};

// structure, per-component genus, at most one crossing per edge, no crossing
// between adjacent edges
ValidationReport validate_one_planar(const Drawing& g, Mode mode = Mode::Strict);

// additionally no vertex meets more than one crossed edge
ValidationReport validate_ic(const Drawing& g, Mode mode = Mode::Strict);

// the candidate, restricted to the h-flagged edges, is exactly the fixed map
bool is_extension(const Drawing& candidate, const Drawing& fixed, std::string* why = nullptr);

}  // namespace planext
