#include "rrscore/model_json.hpp"

#include <fstream>
#include <optional>
#include <set>

#include "rrscore/errors.hpp"

namespace rrscore {

namespace {

void require_keys(const Json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ValidationError("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

Rat parse_rational_or_throw(const std::string& text, const std::string& where) {
  std::optional<Rat> r = parse_rational(text);
  if (!r) throw ValidationError(where + ": malformed rational \"" + text + "\"");
  return *r;
}

Rat rational_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational_or_throw(v.get<std::string>(), where);
  if (v.is_number_integer()) return Rat(v.get<long long>());
  throw ValidationError(where + " must be a \"num/den\" or decimal string");
}

OutcomePmf pmf_from_json(const Json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() < 2) {
    throw ValidationError(where + " must be an array of at least 2 probabilities");
  }
  bool exact = true;
  for (const Json& v : arr) {
    if (!v.is_string()) exact = false;
  }
  if (exact) {
    std::vector<Rat> probs;
    probs.reserve(arr.size());
    for (const Json& v : arr) {
      probs.push_back(parse_rational_or_throw(v.get<std::string>(), where));
    }
    return OutcomePmf::from_rationals(std::move(probs));
  }
  std::vector<double> probs;
  probs.reserve(arr.size());
  for (const Json& v : arr) {
    if (v.is_string()) {
      probs.push_back(to_double(parse_rational_or_throw(v.get<std::string>(), where)));
    } else if (v.is_number()) {
      probs.push_back(v.get<double>());
    } else {
      throw ValidationError(where + " entries must be strings or numbers");
    }
  }
  return OutcomePmf::from_doubles(std::move(probs));
}

int int_from_json(const Json& doc, const std::string& key) {
  const Json& v = doc.at(key);
  if (!v.is_number_integer()) throw ValidationError("\"" + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

PresetSpec preset_from_json(const Json& spec) {
  if (!spec.is_object()) throw ValidationError("preset must be an object");
  require_keys(spec, {"name", "m", "p", "q", "m_w", "m_b", "dist_probs"}, "preset");
  if (!spec.contains("name")) throw ValidationError("preset needs a \"name\"");
  std::string name = spec.at("name").get<std::string>();
  auto id = example_from_name(name);
  if (!id) throw ValidationError("unknown preset \"" + name + "\"");

  PresetSpec ps;
  ps.id = *id;
  ps.binary_alias = name == "binary";
  switch (ps.id) {
    case ExampleId::kUniform:
    case ExampleId::kSymmetricBinomial:
    case ExampleId::kCircular:
      ps.m = 1;
      break;
    case ExampleId::kTriangular:
      ps.m = 2;
      break;
    default:
      break;
  }
  if (ps.id == ExampleId::kThreeClass) {
    ps.p = Rat(2, 3);  // any 0 < q < p < 1 with p + q = 1 works as a default
    ps.q = Rat(1, 3);
  }

  if (spec.contains("m")) {
    if (ps.id == ExampleId::kChess || ps.id == ExampleId::kGeometricWeights ||
        ps.id == ExampleId::kThreeClass ||
        (ps.id == ExampleId::kSymmetricBinomial && ps.binary_alias)) {
      throw ValidationError("preset \"" + name + "\" does not take \"m\"");
    }
    ps.m = int_from_json(spec, "m");
  }
  if (spec.contains("p")) {
    if (ps.id != ExampleId::kChess && ps.id != ExampleId::kThreeClass && !ps.binary_alias) {
      throw ValidationError("preset \"" + name + "\" does not take \"p\"");
    }
    ps.p = rational_from_json(spec.at("p"), "\"p\"");
    if (ps.id == ExampleId::kThreeClass && !spec.contains("q")) ps.q = Rat(1) - ps.p;
  }
  if (spec.contains("q")) {
    if (ps.id != ExampleId::kThreeClass) {
      throw ValidationError("preset \"" + name + "\" does not take \"q\"");
    }
    ps.q = rational_from_json(spec.at("q"), "\"q\"");
  }
  if (spec.contains("m_w") || spec.contains("m_b")) {
    if (ps.id != ExampleId::kThreeClass) {
      throw ValidationError("preset \"" + name + "\" does not take \"m_w\"/\"m_b\"");
    }
    if (spec.contains("m_w")) ps.m_within = int_from_json(spec, "m_w");
    if (spec.contains("m_b")) ps.m_between = int_from_json(spec, "m_b");
  }
  if (spec.contains("dist_probs")) {
    if (ps.id != ExampleId::kCircular) {
      throw ValidationError("preset \"" + name + "\" does not take \"dist_probs\"");
    }
    for (const Json& v : spec.at("dist_probs")) {
      ps.dist_probs.push_back(rational_from_json(v, "\"dist_probs\" entry"));
    }
  }
  return ps;
}

TournamentModel model_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("model document must be a JSON object");
  require_keys(doc, {"n", "score_unit", "default_pmf", "pairs", "preset"}, "model");
  if (!doc.contains("n")) throw ValidationError("model needs \"n\"");
  int n = int_from_json(doc, "n");

  if (doc.contains("preset")) {
    if (doc.contains("default_pmf") || doc.contains("pairs") || doc.contains("score_unit")) {
      throw ValidationError("a preset excludes \"default_pmf\", \"pairs\", and \"score_unit\"");
    }
    return preset_from_json(doc.at("preset")).instantiate(n);
  }

  Rat unit(1);
  if (doc.contains("score_unit")) {
    unit = rational_from_json(doc.at("score_unit"), "\"score_unit\"");
  }
  std::optional<OutcomePmf> fallback;
  if (doc.contains("default_pmf")) {
    fallback = pmf_from_json(doc.at("default_pmf"), "\"default_pmf\"");
  }
  if (!doc.contains("pairs") || doc.at("pairs").empty()) {
    if (!fallback) throw ValidationError("model needs \"default_pmf\" or \"pairs\"");
    return TournamentModel::shared_pmf(n, *fallback, unit);
  }

  if (n < 2) throw ValidationError("tournament needs n >= 2 players");
  std::vector<std::optional<OutcomePmf>> pmfs(static_cast<size_t>(n) * (n - 1) / 2);
  for (const Json& entry : doc.at("pairs")) {
    require_keys(entry, {"i", "j", "pmf"}, "pair");
    int i = int_from_json(entry, "i");
    int j = int_from_json(entry, "j");
    if (i < 1 || j < 1 || i > n || j > n || i == j) {
      throw ValidationError("pair players must be distinct and in 1.." + std::to_string(n));
    }
    OutcomePmf pmf = pmf_from_json(entry.at("pmf"), "pair pmf");
    if (i > j) {
      pmf = pmf.reversed();  // stored orientation is low index first
      std::swap(i, j);
    }
    auto& slot = pmfs[pair_index(i - 1, j - 1, n)];
    if (slot) {
      throw ValidationError("duplicate pair (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
    }
    slot = std::move(pmf);
  }
  std::vector<OutcomePmf> all;
  all.reserve(pmfs.size());
  for (size_t t = 0; t < pmfs.size(); ++t) {
    if (pmfs[t]) {
      all.push_back(std::move(*pmfs[t]));
    } else if (fallback) {
      all.push_back(*fallback);
    } else {
      throw ValidationError("missing PMF for some pair and no \"default_pmf\"");
    }
  }
  return TournamentModel::from_pairs(n, std::move(all), unit);
}

TournamentModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read model file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model file " + path + ": " + e.what());
  }
  return model_from_json(doc);
}

Json model_to_json(const TournamentModel& model) {
  Json doc;
  doc["n"] = model.player_count();
  doc["score_unit"] = format_rational(model.score_unit());
  Json pairs = Json::array();
  int n = model.player_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const OutcomePmf& pmf = model.pair_pmf(i, j);
      Json probs = Json::array();
      if (pmf.exact()) {
        for (const Rat& r : pmf.exact_probs()) probs.push_back(format_rational(r));
      } else {
        for (double p : pmf.probs()) probs.push_back(p);
      }
      pairs.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"pmf", std::move(probs)}});
    }
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

}  // namespace rrscore
