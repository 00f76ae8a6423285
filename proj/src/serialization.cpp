#include "confmodel/serialization.hpp"

#include <cmath>

namespace confmodel {

nlohmann::json number_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

nlohmann::json to_json(const LawMoments& m) {
  return {{"mu", number_json(m.mu)},
          {"nu", number_json(m.nu)},
          {"f1", m.f1},
          {"f2", m.f2},
          {"min_degree", m.min_degree}};
}

nlohmann::json to_json(const DelayedBranching& bp) {
  const LawMoments m = moments(bp.first_gen);
  return {{"law", bp.first_gen.describe()},
          {"q", bp.q},
          {"eta_g", bp.eta_g},
          {"mu", number_json(m.mu)},
          {"nu", number_json(m.nu)}};
}

nlohmann::json to_json(const GiantStats& s) {
  return {{"largest", s.largest},
          {"second", s.second},
          {"complement", s.complement},
          {"q_hat", s.q_hat},
          {"gamma", s.gamma}};
}

nlohmann::json to_json(const ExplorationReport& r) {
  nlohmann::json out = {{"root", r.root},
                        {"m", r.m},
                        {"depth_explored", r.depth_explored},
                        {"collisions", r.collisions},
                        {"frontier_stubs", r.frontier_stubs},
                        {"nodes_per_depth", r.nodes_per_depth}};
  out["core_hit_depth"] = r.core_hit_depth ? nlohmann::json(*r.core_hit_depth) : nlohmann::json("none");
  return out;
}

}  // namespace confmodel
