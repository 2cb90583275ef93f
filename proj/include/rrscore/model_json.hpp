#pragma once

#include <string>

#include "json.hpp"
#include "rrscore/model.hpp"

namespace rrscore {

using Json = nlohmann::ordered_json;

// Document shape: {"n": 4, "score_unit": "1/2", "default_pmf": ["1/4","1/2","1/4"],
// "pairs": [{"i": 1, "j": 2, "pmf": [...]}], "preset": {"name": "chess", "p": "1/2"}}.
// Players are 1-based; a preset excludes explicit PMFs. Probabilities are
// decimal or "num/den" strings (exact) or plain numbers (double).
TournamentModel model_from_json(const Json& doc);
TournamentModel load_model_file(const std::string& path);

PresetSpec preset_from_json(const Json& spec);

Json model_to_json(const TournamentModel& model);

}  // namespace rrscore
