#pragma once

#include "json.hpp"

#include "confmodel/branching.hpp"
#include "confmodel/components.hpp"
#include "confmodel/degree_law.hpp"
#include "confmodel/distances.hpp"

namespace confmodel {

/// Finite doubles as numbers, infinities as the strings "inf" / "-inf".
nlohmann::json number_json(double x);

nlohmann::json to_json(const LawMoments& m);
/// q, eta_g, mu and nu of the delayed process built from f.
nlohmann::json to_json(const DelayedBranching& bp);
nlohmann::json to_json(const GiantStats& s);
nlohmann::json to_json(const ExplorationReport& r);

}  // namespace confmodel
