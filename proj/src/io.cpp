#include "ifent/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ifent/errors.hpp"

namespace ifent {

using nlohmann::json;

namespace {

json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed JSON: ") + e.what());
  }
}

std::size_t index_of(const std::vector<std::string>& names,
                     const std::string& name, const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  throw LoadError(std::string("unknown ") + what + " '" + name + "'");
}

}  // namespace

StateId SystemModel::state_id(const std::string& name) const {
  return StateId(index_of(state_names, name, "state"));
}

InputId SystemModel::input_id(const std::string& name) const {
  return InputId(index_of(input_names, name, "input"));
}

const std::string& SystemModel::state_name(StateId x) const {
  if (x >= state_names.size()) throw Error("state id out of range");
  return state_names[x];
}

const std::string& SystemModel::input_name(InputId u) const {
  if (u >= input_names.size()) throw Error("input id out of range");
  return input_names[u];
}

SystemModel load_system(std::istream& in) {
  const json j = parse(in);
  SystemModel m;
  try {
    for (const auto& s : j.at("states")) m.state_names.push_back(s);
    for (const auto& s : j.at("inputs")) m.input_names.push_back(s);
    m.sys.num_states = m.state_names.size();
    m.sys.num_inputs = m.input_names.size();
    if (m.sys.num_states == 0 || m.sys.num_inputs == 0)
      throw LoadError("a system needs at least one state and one input");
    m.sys.trans.assign(m.sys.num_states * m.sys.num_inputs, {});
    std::vector<bool> defined(m.sys.trans.size(), false);
    for (const auto& rec : j.at("transitions")) {
      const StateId x = m.state_id(rec.at("from"));
      const InputId u = m.input_id(rec.at("input"));
      StateSet to;
      for (const auto& s : rec.at("to")) to.insert(m.state_id(s));
      if (to.empty()) throw LoadError("empty successor list (strictness)");
      const std::size_t idx = std::size_t(x) * m.sys.num_inputs + u;
      if (defined[idx])
        throw LoadError("duplicate transition record for (" +
                        std::string(rec.at("from")) + "," +
                        std::string(rec.at("input")) + ")");
      defined[idx] = true;
      m.sys.trans[idx] = std::move(to);
    }
    for (std::size_t idx = 0; idx < defined.size(); ++idx)
      if (!defined[idx])
        throw LoadError(
            "missing transition record for (" +
            m.state_names[idx / m.sys.num_inputs] + "," +
            m.input_names[idx % m.sys.num_inputs] + "): F must be strict");
    for (const auto& s : j.at("Q")) m.Q.members.insert(m.state_id(s));
    if (m.Q.members.empty()) throw LoadError("Q must be nonempty");
  } catch (const json::exception& e) {
    throw LoadError(std::string("bad system file: ") + e.what());
  }
  return m;
}

SystemModel load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return load_system(in);
}

void save_system(const SystemModel& m, std::ostream& out) {
  json j;
  j["states"] = m.state_names;
  j["inputs"] = m.input_names;
  j["transitions"] = json::array();
  for (StateId x = 0; x < m.sys.num_states; ++x) {
    for (InputId u = 0; u < m.sys.num_inputs; ++u) {
      json rec;
      rec["from"] = m.state_name(x);
      rec["input"] = m.input_name(u);
      json to = json::array();
      for (StateId y : m.sys.post(x, u)) to.push_back(m.state_name(y));
      rec["to"] = std::move(to);
      j["transitions"].push_back(std::move(rec));
    }
  }
  json q = json::array();
  for (StateId x : m.Q.members) q.push_back(m.state_name(x));
  j["Q"] = std::move(q);
  out << j.dump(2) << "\n";
}

InvariantCover load_cover(const SystemModel& m, std::istream& in) {
  const json j = parse(in);
  InvariantCover cover;
  try {
    for (const auto& rec : j) {
      InvariantCover::Element el;
      for (const auto& s : rec.at("element")) el.set.insert(m.state_id(s));
      el.input = m.input_id(rec.at("input"));
      cover.elements.push_back(std::move(el));
    }
  } catch (const json::exception& e) {
    throw LoadError(std::string("bad cover file: ") + e.what());
  }
  cover.canonicalize();
  return cover;
}

InvariantCover load_cover_file(const SystemModel& m, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return load_cover(m, in);
}

void save_cover(const SystemModel& m, const InvariantCover& cover,
                std::ostream& out) {
  json j = json::array();
  for (const auto& el : cover.elements) {
    json rec;
    json names = json::array();
    for (StateId x : el.set) names.push_back(m.state_name(x));
    rec["element"] = std::move(names);
    rec["input"] = m.input_name(el.input);
    j.push_back(std::move(rec));
  }
  out << j.dump(2) << "\n";
}

PeriodicCoderController load_controller(const SystemModel& m,
                                        std::istream& in) {
  const json j = parse(in);
  PeriodicCoderController H;
  try {
    H.period = j.at("period");
    if (H.period < 1) throw LoadError("period must be positive");
    H.num_symbols = j.at("symbols");
    H.table_period = j.value("table_period", H.period);
    H.coder.resize(H.table_period);
    H.controller.resize(H.table_period);
    for (const auto& rec : j.at("coder")) {
      const unsigned phase = rec.at("phase");
      if (phase >= H.table_period) throw LoadError("coder phase out of range");
      std::vector<StateId> window;
      for (const auto& s : rec.at("window")) window.push_back(m.state_id(s));
      if (window.size() != phase + 1)
        throw LoadError("coder window length must equal phase+1");
      const Symbol sym = rec.at("symbol");
      if (sym < 1 || sym > H.num_symbols)
        throw LoadError("coder symbol out of range");
      H.coder[phase][window] = sym;
    }
    for (const auto& rec : j.at("controller")) {
      const unsigned phase = rec.at("phase");
      if (phase >= H.table_period)
        throw LoadError("controller phase out of range");
      std::vector<Symbol> window;
      for (const auto& s : rec.at("window")) {
        const Symbol sym = s;
        if (sym < 1 || sym > H.num_symbols)
          throw LoadError("controller window symbol out of range");
        window.push_back(sym);
      }
      if (window.size() != phase + 1)
        throw LoadError("controller window length must equal phase+1");
      H.controller[phase][window] = m.input_id(rec.at("input"));
    }
  } catch (const json::exception& e) {
    throw LoadError(std::string("bad controller file: ") + e.what());
  }
  return H;
}

PeriodicCoderController load_controller_file(const SystemModel& m,
                                             const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return load_controller(m, in);
}

void save_controller(const SystemModel& m, const PeriodicCoderController& H,
                     std::ostream& out) {
  json j;
  j["period"] = H.period;
  j["symbols"] = H.num_symbols;
  if (H.table_period != H.period) j["table_period"] = H.table_period;
  json coder = json::array();
  for (unsigned phase = 0; phase < H.coder.size(); ++phase) {
    for (const auto& [window, sym] : H.coder[phase]) {
      json rec;
      rec["phase"] = phase;
      json names = json::array();
      for (StateId x : window) names.push_back(m.state_name(x));
      rec["window"] = std::move(names);
      rec["symbol"] = sym;
      coder.push_back(std::move(rec));
    }
  }
  j["coder"] = std::move(coder);
  json controller = json::array();
  for (unsigned phase = 0; phase < H.controller.size(); ++phase) {
    for (const auto& [window, input] : H.controller[phase]) {
      json rec;
      rec["phase"] = phase;
      rec["window"] = window;
      rec["input"] = m.input_name(input);
      controller.push_back(std::move(rec));
    }
  }
  j["controller"] = std::move(controller);
  out << j.dump(2) << "\n";
}

RefinementRelation load_relation(const SystemModel& m1, const SystemModel& m2,
                                 std::istream& in) {
  const json j = parse(in);
  RefinementRelation rel;
  try {
    for (const auto& rec : j.at("pairs")) {
      if (!rec.is_array() || rec.size() != 2)
        throw LoadError("relation pairs must be [state1, state2]");
      rel.pairs.emplace_back(m1.state_id(rec[0]), m2.state_id(rec[1]));
    }
    rel.input_map.assign(m2.sys.num_inputs, 0);
    std::vector<bool> defined(m2.sys.num_inputs, false);
    for (const auto& rec : j.at("input_map")) {
      if (!rec.is_array() || rec.size() != 2)
        throw LoadError("input map entries must be [u2, u1]");
      const InputId u2 = m2.input_id(rec[0]);
      rel.input_map[u2] = m1.input_id(rec[1]);
      defined[u2] = true;
    }
    for (std::size_t u = 0; u < defined.size(); ++u)
      if (!defined[u])
        throw LoadError("input map misses input '" + m2.input_names[u] + "'");
  } catch (const json::exception& e) {
    throw LoadError(std::string("bad relation file: ") + e.what());
  }
  return rel;
}

RefinementRelation load_relation_file(const SystemModel& m1,
                                      const SystemModel& m2,
                                      const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return load_relation(m1, m2, in);
}

void save_relation(const SystemModel& m1, const SystemModel& m2,
                   const RefinementRelation& rel, std::ostream& out) {
  json j;
  json pairs = json::array();
  for (const auto& [x1, x2] : rel.pairs)
    pairs.push_back({m1.state_name(x1), m2.state_name(x2)});
  j["pairs"] = std::move(pairs);
  json imap = json::array();
  for (InputId u2 = 0; u2 < rel.input_map.size(); ++u2)
    imap.push_back({m2.input_name(u2), m1.input_name(rel.input_map[u2])});
  j["input_map"] = std::move(imap);
  out << j.dump(2) << "\n";
}

}  // namespace ifent
