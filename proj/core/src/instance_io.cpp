#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ors/instgen.hpp"

namespace ors {

using nlohmann::json;

namespace {

json rational_to_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return to_string(r);
}

const json& require(const json& node, const std::string& key, const std::string& path) {
  if (!node.is_object() || !node.contains(key)) throw ParseError("missing field '" + path + "'");
  return node.at(key);
}

int require_int(const json& node, const std::string& key, const std::string& path) {
  const json& v = require(node, key, path);
  if (!v.is_number_integer()) throw ParseError("field '" + path + "' must be an integer");
  return v.get<int>();
}

std::vector<int> require_int_list(const json& node, const std::string& key, const std::string& path) {
  const json& v = require(node, key, path);
  if (!v.is_array()) throw ParseError("field '" + path + "' must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) throw ParseError("field '" + path + "' must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

Rational require_rational(const json& node, const std::string& key, const std::string& path) {
  const json& v = require(node, key, path);
  try {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return parse_rational(v.dump());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError("field '" + path + "': " + e.what());
  }
  throw ParseError("field '" + path + "' must be a number or \"p/q\" string");
}

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  const InstanceSpec& s = inst.spec();
  json j;
  json params = json::object();
  if (!s.params_json.empty()) {
    try {
      params = json::parse(s.params_json);
    } catch (const json::exception&) {
      params = s.params_json;
    }
  }
  j["meta"] = {{"name", s.name}, {"seed", s.seed}, {"params", params}};
  j["horizon"] = {{"days", s.days}, {"rooms", s.rooms}, {"slots_per_day", s.slots_per_day}};
  if (s.capacity >= 0) j["horizon"]["capacity"] = s.capacity;
  j["blocks"] = {{"lengths", s.lengths}, {"starts", s.starts}};
  j["limits"] = {{"v_day", s.v_day}, {"v_horizon", s.v_horizon}};
  j["weights"] = {{"alpha", rational_to_json(s.alpha)}, {"beta", rational_to_json(s.beta)}};
  json unav = json::array();
  for (const auto& [sg, b] : s.unavailability) unav.push_back({sg, b});
  j["unavailability"] = unav;
  json surgeons = json::array();
  for (const SurgeonSpec& sg : s.surgeons) {
    json patients = json::array();
    for (const PatientSpec& p : sg.patients) {
      patients.push_back({{"id", p.id}, {"duration", p.duration}, {"prio_leader", p.prio_leader},
                          {"prio_follower", p.prio_follower}});
    }
    surgeons.push_back({{"id", sg.id}, {"patients", patients}});
  }
  j["surgeons"] = surgeons;
  return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_context(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("instance document must be a JSON object");

  InstanceSpec s;
  if (j.contains("meta")) {
    const json& meta = j.at("meta");
    if (meta.contains("name") && meta.at("name").is_string()) s.name = meta.at("name").get<std::string>();
    if (meta.contains("seed") && meta.at("seed").is_number_integer()) s.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("params")) s.params_json = meta.at("params").dump();
  }
  const json& horizon = require(j, "horizon", "horizon");
  s.days = require_int(horizon, "days", "horizon.days");
  s.rooms = require_int(horizon, "rooms", "horizon.rooms");
  s.slots_per_day = require_int(horizon, "slots_per_day", "horizon.slots_per_day");
  if (horizon.contains("capacity")) s.capacity = require_int(horizon, "capacity", "horizon.capacity");
  const json& blocks = require(j, "blocks", "blocks");
  s.lengths = require_int_list(blocks, "lengths", "blocks.lengths");
  s.starts = require_int_list(blocks, "starts", "blocks.starts");
  const json& limits = require(j, "limits", "limits");
  s.v_day = require_int(limits, "v_day", "limits.v_day");
  s.v_horizon = require_int(limits, "v_horizon", "limits.v_horizon");
  const json& weights = require(j, "weights", "weights");
  s.alpha = require_rational(weights, "alpha", "weights.alpha");
  s.beta = require_rational(weights, "beta", "weights.beta");

  if (j.contains("unavailability")) {
    const json& unav = j.at("unavailability");
    if (!unav.is_array()) throw ParseError("field 'unavailability' must be an array");
    for (std::size_t i = 0; i < unav.size(); ++i) {
      const json& e = unav[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw ParseError("field 'unavailability[" + std::to_string(i) + "]' must be [surgeon, block]");
      }
      s.unavailability.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }

  const json& surgeons = require(j, "surgeons", "surgeons");
  if (!surgeons.is_array()) throw ParseError("field 'surgeons' must be an array");
  for (std::size_t si = 0; si < surgeons.size(); ++si) {
    const std::string sp = "surgeons[" + std::to_string(si) + "]";
    SurgeonSpec sg;
    sg.id = require_int(surgeons[si], "id", sp + ".id");
    const json& patients = require(surgeons[si], "patients", sp + ".patients");
    if (!patients.is_array()) throw ParseError("field '" + sp + ".patients' must be an array");
    for (std::size_t pi = 0; pi < patients.size(); ++pi) {
      const std::string pp = sp + ".patients[" + std::to_string(pi) + "]";
      PatientSpec p;
      p.id = require_int(patients[pi], "id", pp + ".id");
      p.duration = require_int(patients[pi], "duration", pp + ".duration");
      p.prio_leader = require_int(patients[pi], "prio_leader", pp + ".prio_leader");
      p.prio_follower = require_int(patients[pi], "prio_follower", pp + ".prio_follower");
      sg.patients.push_back(p);
    }
    s.surgeons.push_back(std::move(sg));
  }
  try {
    return Instance(std::move(s));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << instance_to_json(inst) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return instance_from_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace ors
