#include "agree/scenario_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "agree/error.hpp"
#include "json.hpp"

#ifndef AGREE_FIXTURE_DIR
#define AGREE_FIXTURE_DIR "scenarios"
#endif

namespace agree {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

[[noreturn]] void bad(const std::string& what, ErrorCode cause = ErrorCode::Malformed) {
  throw Error(ErrorCode::Validation, what, cause);
}

void reject_floats(const json& j, const std::string& where) {
  if (j.is_number_float()) bad("floating-point value at " + where + "; write rationals as \"n/d\"");
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) reject_floats(j[i], where + "/" + std::to_string(i));
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) reject_floats(v, where + "/" + k);
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be a list");
  return j;
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::uint64_t natural(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

Rational rational(const json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    if (auto r = parse_rational(j.get<std::string>())) return *r;
  }
  bad(std::string(what) + " must be an integer or an \"n/d\" string");
}

std::vector<Rational> rationals(const json& j, const char* what) {
  std::vector<Rational> out;
  for (const auto& v : array(j, what)) out.push_back(rational(v, what));
  return out;
}

json rational_json(const Rational& r) { return format_rational(r); }

Message message_from(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("rational")) return rational(j["rational"], "message");
  bad("a message must be an integer, a string or {\"rational\": \"n/d\"}");
}

json message_json(const Message& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return json{{"rational", format_rational(v)}};
        } else {
          return v;
        }
      },
      m);
}

// States are written by label when the scenario declares labels, by index
// otherwise.
struct StateNames {
  std::vector<std::string> labels;
  std::size_t n = 0;

  StateId ref(const json& j) const {
    if (!labels.empty()) {
      if (!j.is_string()) bad("states are referenced by their labels");
      auto it = std::find(labels.begin(), labels.end(), j.get<std::string>());
      if (it == labels.end()) bad("unknown state '" + j.get<std::string>() + "'", ErrorCode::Index);
      return static_cast<StateId>(it - labels.begin());
    }
    std::uint64_t x = natural(j, "state");
    if (x >= n) bad("state " + std::to_string(x) + " outside the state set", ErrorCode::Index);
    return x;
  }

  std::vector<StateId> refs(const json& j) const {
    std::vector<StateId> out;
    for (const auto& v : array(j, "state list")) out.push_back(ref(v));
    return out;
  }

  json name(StateId x) const { return labels.empty() ? json(x) : json(labels[x]); }

  json names(const std::vector<StateId>& xs) const {
    json out = json::array();
    for (StateId x : xs) out.push_back(name(x));
    return out;
  }
};

template <typename F>
auto wrapped(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Validation) throw;
    throw Error(ErrorCode::Validation, e.what(), e.code());
  }
}

std::vector<std::string> agent_list(const json& doc) {
  std::vector<std::string> agents;
  for (const auto& a : array(field(doc, "agents"), "agents")) agents.push_back(text(a, "agent label"));
  return agents;
}

AgentId agent_ref(const std::vector<std::string>& agents, const json& j) {
  std::string label = text(j, "graph endpoint");
  auto it = std::find(agents.begin(), agents.end(), label);
  if (it == agents.end()) bad("graph mentions undeclared agent '" + label + "'", ErrorCode::LabelMismatch);
  return static_cast<AgentId>(it - agents.begin());
}

CommGraph graph_from(const json& doc, const std::vector<std::string>& agents) {
  std::vector<Edge> edges;
  if (const json* g = optional_field(doc, "graph")) {
    for (const auto& e : array(*g, "graph")) {
      if (!e.is_array() || e.size() != 2) bad("graph edges are [from, to] pairs");
      edges.emplace_back(agent_ref(agents, e[0]), agent_ref(agents, e[1]));
    }
  }
  return wrapped([&] { return CommGraph(agents.size(), edges); });
}

json graph_json(const CommGraph& g, const std::vector<std::string>& agents) {
  json out = json::array();
  for (const auto& [from, to] : g.edges()) out.push_back(json::array({agents[from], agents[to]}));
  return out;
}

const json& partition_entry(const json& doc, const std::vector<std::string>& agents, std::size_t i) {
  const json& parts = field(doc, "partitions");
  if (!parts.is_object()) bad("partitions must map agent labels to partitions");
  for (const auto& [k, v] : parts.items())
    if (std::find(agents.begin(), agents.end(), k) == agents.end())
      bad("partition given for undeclared agent '" + k + "'", ErrorCode::LabelMismatch);
  auto it = parts.find(agents[i]);
  if (it == parts.end()) bad("no partition for agent '" + agents[i] + "'", ErrorCode::LabelMismatch);
  return *it;
}

MessageFunction message_function_from(const json& j, const StateNames& names) {
  const std::string name = text(field(j, "name"), "message_function name");
  auto family = family_from_name(name);
  if (!family) bad("unknown message function '" + name + "'", ErrorCode::UnknownFamily);
  return wrapped([&]() -> MessageFunction {
    switch (*family) {
      case Family::KnownState:
        return MessageFunction::known_state(names.labels);
      case Family::Maximin: {
        if (const json* game = optional_field(j, "game")) {
          if (text(*game, "game") != "guessing") bad("unknown maximin game");
          return MessageFunction::maximin_guessing(names.n);
        }
        std::vector<std::vector<Rational>> u;
        for (const auto& row : array(field(j, "utility"), "utility")) u.push_back(rationals(row, "utility"));
        return MessageFunction::maximin(std::move(u));
      }
      case Family::Posterior: {
        auto prior = rationals(field(j, "prior"), "prior");
        auto event = names.refs(field(j, "event"));
        return MessageFunction::posterior(std::move(prior), Event::of(names.n, event));
      }
      case Family::ExpectedValue: {
        auto payoffs = rationals(field(j, "payoffs"), "payoffs");
        std::vector<Rational> weights;
        if (const json* w = optional_field(j, "weights")) weights = rationals(*w, "weights");
        return MessageFunction::expected_value(std::move(payoffs), std::move(weights));
      }
      case Family::Injective:
        return MessageFunction::injective();
      case Family::Lookup: {
        std::map<std::uint32_t, Message> table;
        for (const auto& row : array(field(j, "table"), "table")) {
          std::uint32_t mask = 0;
          for (StateId x : names.refs(field(row, "set"))) mask |= 1u << x;
          if (mask == 0) bad("lookup table entries need a non-empty set", ErrorCode::EmptyBlock);
          if (!table.emplace(mask, message_from(field(row, "message"))).second)
            bad("lookup table lists a set twice");
        }
        std::optional<Message> fallback;
        if (const json* d = optional_field(j, "default")) fallback = message_from(*d);
        return MessageFunction::lookup(names.n, std::move(table), std::move(fallback));
      }
    }
    bad("unknown message function");
  });
}

json message_function_json(const MessageFunction& mf, const StateNames& names) {
  json out;
  out["name"] = std::string(family_name(mf.family()));
  switch (mf.family()) {
    case Family::KnownState:
    case Family::Injective:
      break;
    case Family::Maximin: {
      json u = json::array();
      for (const auto& row : mf.utility()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rational_json(v));
        u.push_back(r);
      }
      out["utility"] = u;
      break;
    }
    case Family::Posterior: {
      json prior = json::array();
      for (const auto& v : mf.weights()) prior.push_back(rational_json(v));
      out["prior"] = prior;
      out["event"] = names.names(mf.target().members());
      break;
    }
    case Family::ExpectedValue: {
      json pay = json::array();
      for (const auto& v : mf.payoffs()) pay.push_back(rational_json(v));
      out["payoffs"] = pay;
      if (!mf.weights().empty()) {
        json w = json::array();
        for (const auto& v : mf.weights()) w.push_back(rational_json(v));
        out["weights"] = w;
      }
      break;
    }
    case Family::Lookup: {
      json table = json::array();
      for (const auto& [mask, msg] : mf.table()) {
        std::vector<StateId> set;
        for (StateId x = 0; x < mf.table_size(); ++x)
          if (mask & (1u << x)) set.push_back(x);
        table.push_back(json{{"set", names.names(set)}, {"message", message_json(msg)}});
      }
      out["table"] = table;
      if (mf.fallback()) out["default"] = message_json(*mf.fallback());
      break;
    }
  }
  return out;
}

Scenario finite_from(const json& doc) {
  Scenario sc;
  sc.agents = agent_list(doc);
  sc.num_states = natural(field(doc, "num_states"), "num_states");
  if (const json* labels = optional_field(doc, "state_labels"))
    for (const auto& l : array(*labels, "state_labels")) sc.state_labels.push_back(text(l, "state label"));
  if (!sc.state_labels.empty() && sc.state_labels.size() != sc.num_states)
    bad("state label count differs from num_states", ErrorCode::LabelMismatch);
  StateNames names{sc.state_labels, sc.num_states};

  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    std::vector<std::vector<StateId>> blocks;
    for (const auto& b : array(partition_entry(doc, sc.agents, i), "partition"))
      blocks.push_back(names.refs(b));
    sc.initial.push_back(wrapped([&] { return Partition::from_blocks(blocks, sc.num_states); }));
  }
  sc.mf = message_function_from(field(doc, "message_function"), names);
  sc.graph = graph_from(doc, sc.agents);
  if (const json* t = optional_field(doc, "true_state")) sc.true_state = names.ref(*t);
  sc.validate();
  return sc;
}

PeriodicSpec periodic_from(const json& j) {
  if (!j.is_object()) bad("symbolic partitions are objects with a modulus");
  PeriodicSpec spec;
  spec.modulus = natural(field(j, "modulus"), "modulus");
  auto naturals = [](const json& v, const char* what) {
    std::vector<Nat> out;
    for (const auto& x : array(v, what)) out.push_back(natural(x, what));
    return out;
  };
  if (const json* e = optional_field(j, "exceptional_blocks"))
    for (const auto& b : array(*e, "exceptional_blocks")) spec.exceptional.push_back(naturals(b, "block"));
  if (const json* t = optional_field(j, "template_families"))
    for (const auto& b : array(*t, "template_families")) spec.templates.push_back(naturals(b, "offsets"));
  if (const json* inf = optional_field(j, "infinite_blocks")) {
    for (const auto& b : array(*inf, "infinite_blocks")) {
      InfiniteBlockSpec block;
      if (const json* f = optional_field(b, "finite_part")) block.finite_part = naturals(*f, "finite_part");
      for (const auto& p : array(field(b, "progressions"), "progressions")) {
        if (!p.is_array() || p.size() != 2) bad("progressions are [start, step] pairs");
        if (natural(p[1], "step") != spec.modulus) bad("progression step must equal the modulus");
        block.starts.push_back(natural(p[0], "start"));
      }
      spec.infinite.push_back(std::move(block));
    }
  }
  return spec;
}

json periodic_json(const PeriodicPartition& pp) {
  const PeriodicSpec& s = pp.spec();
  json out;
  out["modulus"] = s.modulus;
  out["exceptional_blocks"] = s.exceptional;
  out["template_families"] = s.templates;
  json inf = json::array();
  for (const auto& b : s.infinite) {
    json prog = json::array();
    for (Nat st : b.starts) prog.push_back(json::array({st, s.modulus}));
    inf.push_back(json{{"finite_part", b.finite_part}, {"progressions", prog}});
  }
  out["infinite_blocks"] = inf;
  return out;
}

SymbolicScenario symbolic_from(const json& doc) {
  SymbolicScenario sc;
  sc.agents = agent_list(doc);
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    PeriodicSpec spec = periodic_from(partition_entry(doc, sc.agents, i));
    sc.initial.push_back(wrapped([&] { return PeriodicPartition(std::move(spec)); }));
  }
  if (const json* mf = optional_field(doc, "message_function")) {
    std::string name = text(field(*mf, "name"), "message_function name");
    if (name != "known_state")
      bad("symbolic scenarios support the known_state message only", ErrorCode::UnknownFamily);
  }
  sc.graph = graph_from(doc, sc.agents);
  if (const json* t = optional_field(doc, "true_state")) sc.true_state = natural(*t, "true_state");
  sc.validate();
  return sc;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json finite_json(const Scenario& sc) {
  StateNames names{sc.state_labels, sc.num_states};
  json doc;
  doc["kind"] = "finite";
  doc["agents"] = sc.agents;
  doc["num_states"] = sc.num_states;
  if (!sc.state_labels.empty()) doc["state_labels"] = sc.state_labels;
  json parts = json::object();
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    json blocks = json::array();
    for (const auto& b : sc.initial[i].blocks()) blocks.push_back(names.names(b));
    parts[sc.agents[i]] = blocks;
  }
  doc["partitions"] = parts;
  doc["message_function"] = message_function_json(sc.mf, names);
  doc["graph"] = graph_json(sc.graph, sc.agents);
  if (sc.true_state) doc["true_state"] = names.name(*sc.true_state);
  return doc;
}

json flags_json(const StageFlags& f) {
  json out;
  out["consensus"] = f.consensus;
  out["partial_consensus"] = f.partial_consensus ? json(*f.partial_consensus) : json(nullptr);
  out["ck_message_profile"] = f.ck_message_profile ? json(*f.ck_message_profile) : json(nullptr);
  out["fixed_point"] = f.fixed_point;
  return out;
}

}  // namespace

AnyScenario parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": " + e.what());
  }
  reject_floats(doc, "");
  const std::string kind =
      doc.is_object() && doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  if (kind == "finite") return finite_from(doc);
  if (kind == "symbolic") return symbolic_from(doc);
  bad("kind must be \"finite\" or \"symbolic\"", ErrorCode::Kind);
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(AGREE_FIXTURE_DIR, ec))
    if (entry.path().extension() == ".scenario") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string fixture_path(std::string_view name) {
  fs::path p = fs::path(AGREE_FIXTURE_DIR) / (std::string(name) + ".scenario");
  return fs::exists(p) ? p.string() : std::string();
}

AnyScenario parse_scenario(const std::string& path) {
  std::string resolved = path;
  if (!fs::exists(resolved)) resolved = fixture_path(path);
  if (resolved.empty()) throw Error(ErrorCode::Io, "cannot read scenario '" + path + "'");
  std::ifstream in(resolved, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read scenario '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario& sc) { return finite_json(sc).dump(2) + "\n"; }

std::string serialize_scenario_compact(const Scenario& sc) { return finite_json(sc).dump(); }

std::string serialize_scenario(const SymbolicScenario& sc) {
  json doc;
  doc["kind"] = "symbolic";
  doc["agents"] = sc.agents;
  json parts = json::object();
  for (std::size_t i = 0; i < sc.agents.size(); ++i) parts[sc.agents[i]] = periodic_json(sc.initial[i]);
  doc["partitions"] = parts;
  doc["message_function"] = json{{"name", "known_state"}};
  doc["graph"] = graph_json(sc.graph, sc.agents);
  if (sc.true_state) doc["true_state"] = *sc.true_state;
  return doc.dump(2) + "\n";
}

std::string serialize_scenario(const AnyScenario& sc) {
  return std::visit([](const auto& s) { return serialize_scenario(s); }, sc);
}

std::string trace_line(const Scenario& sc, const FiniteStage& stage) {
  StateNames names{sc.state_labels, sc.num_states};
  json rec;
  rec["ordinal"] = to_string(stage.ordinal);
  rec["kind"] = std::string(to_string(stage.kind));
  json parts = json::object();
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    json blocks = json::array();
    for (const auto& b : stage.profile[i].blocks()) blocks.push_back(names.names(b));
    parts[sc.agents[i]] = blocks;
  }
  rec["partitions"] = parts;
  if (sc.true_state) {
    json msgs = json::object();
    for (std::size_t i = 0; i < sc.agents.size(); ++i)
      msgs[sc.agents[i]] = message_json(stage.messages[i][*sc.true_state]);
    rec["messages"] = msgs;
  }
  rec["flags"] = flags_json(stage.flags);
  return rec.dump();
}

std::string trace_line(const SymbolicScenario& sc, const SymbolicStage& stage) {
  json rec;
  rec["ordinal"] = to_string(stage.ordinal);
  rec["kind"] = std::string(to_string(stage.kind));
  json parts = json::object();
  for (std::size_t i = 0; i < sc.agents.size(); ++i) parts[sc.agents[i]] = periodic_json(stage.profile[i]);
  rec["partitions"] = parts;
  if (sc.true_state) {
    json msgs = json::object();
    for (std::size_t i = 0; i < sc.agents.size(); ++i) msgs[sc.agents[i]] = stage.messages[i];
    rec["messages"] = msgs;
  }
  rec["flags"] = flags_json(stage.flags);
  if (stage.certificate) {
    const auto& c = *stage.certificate;
    rec["certificate"] = json{{"base", c.t0}, {"stage_period", c.p}, {"shift", c.s}, {"settled", c.d}};
  }
  return rec.dump();
}

}  // namespace agree
